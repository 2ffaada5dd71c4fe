//! Generating tuples in prescribed classes and the rigidity and rationality
//! checks on them.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::geometric::nor_gcen_out;
use crate::permgroup::perm::gcd;
use crate::permgroup::{
    automorphisms, complements, conjugation_automorphism, symmetric_normalizer, Automorphism,
    CayleyTable, ConjClass, PermGroup, Perm,
};

/// Which permutation action of `G` the rigidity data refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Embedding {
    /// Left-regular action; its normalizer acts on `G` through `Aut(G)`.
    Regular,
    /// The action on the points `G` is given on.
    Natural,
}

impl Embedding {
    pub fn degree(&self, g: &PermGroup) -> usize {
        match self {
            Embedding::Regular => g.order(),
            Embedding::Natural => g.degree(),
        }
    }
}

/// `(C_1, …, C_r)` in a group `G`.
#[derive(Clone, Debug)]
pub struct ClassTuple {
    pub group: PermGroup,
    /// Index of each `C_i` in `group.conjugacy_classes()`.
    pub class_ids: Vec<usize>,
    all_classes: Vec<ConjClass>,
}

impl ClassTuple {
    pub fn new(group: PermGroup, class_ids: Vec<usize>) -> Result<ClassTuple> {
        let all_classes = group.conjugacy_classes();
        if let Some(&bad) = class_ids.iter().find(|&&c| c >= all_classes.len()) {
            return Err(Error::InvalidModel(format!("no class with index {bad}")));
        }
        Ok(ClassTuple {
            group,
            class_ids,
            all_classes,
        })
    }

    /// Classes by label, e.g. `["2A", "3A", "5A"]`.
    pub fn from_labels(group: PermGroup, labels: &[&str]) -> Result<ClassTuple> {
        let all = group.conjugacy_classes();
        let names = PermGroup::class_labels(&all);
        let ids = labels
            .iter()
            .map(|l| {
                names
                    .iter()
                    .position(|n| n == l.trim())
                    .ok_or_else(|| Error::InvalidModel(format!("unknown class label {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, ids)
    }

    pub fn classes(&self) -> Vec<&ConjClass> {
        self.class_ids.iter().map(|&i| &self.all_classes[i]).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        let names = PermGroup::class_labels(&self.all_classes);
        self.class_ids.iter().map(|&i| names[i].clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.class_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_ids.is_empty()
    }

    /// lcm of the element orders in the tuple; exponents are taken modulo this.
    pub fn exponent(&self) -> u64 {
        self.classes()
            .iter()
            .fold(1, |acc, c| crate::permgroup::perm::lcm(acc, c.element_order))
    }

    fn class_map(&self) -> Vec<usize> {
        self.group.class_index_map(&self.all_classes)
    }
}

/// Class bookkeeping shared by the checks: element → class, powers, and
/// the permutations of classes induced by the symmetry group.
struct ClassCalculus<'a> {
    t: &'a CayleyTable,
    class_of: Vec<usize>,
    reps: Vec<usize>,
}

impl<'a> ClassCalculus<'a> {
    fn new(ct: &'a ClassTuple) -> Self {
        let class_of = ct.class_map();
        let reps = ct
            .all_classes
            .iter()
            .map(|c| ct.group.index_of(&c.representative).expect("class member"))
            .collect();
        ClassCalculus {
            t: ct.group.table(),
            class_of,
            reps,
        }
    }

    fn power(&self, class: usize, m: u64) -> usize {
        let r = self.reps[class];
        let o = self.t.order(r) as u64;
        self.class_of[self.t.power(r, (m % o) as usize)]
    }

    fn image(&self, al: &Automorphism, class: usize) -> usize {
        self.class_of[al.apply(self.reps[class])]
    }

    /// Distinct permutations of classes induced by `auts`, identity first.
    fn class_perms(&self, auts: &[Automorphism]) -> Vec<Vec<usize>> {
        let k = self.reps.len();
        let set: BTreeSet<Vec<usize>> = auts
            .iter()
            .map(|a| (0..k).map(|c| self.image(a, c)).collect())
            .collect();
        let id: Vec<usize> = (0..k).collect();
        let mut v: Vec<Vec<usize>> = vec![id.clone()];
        v.extend(set.into_iter().filter(|p| *p != id));
        v
    }
}

/// Automorphisms of `G` induced by the normalizer of the chosen embedding.
pub fn embedding_symmetries(g: &PermGroup, emb: Embedding, bounds: &Bounds) -> Result<Vec<Automorphism>> {
    match emb {
        Embedding::Regular => automorphisms(g, bounds),
        Embedding::Natural => {
            let nor = symmetric_normalizer(g, bounds)?;
            let set: BTreeSet<Automorphism> = nor
                .elements()
                .iter()
                .map(|w| conjugation_automorphism(g, w).expect("normalizer element"))
                .collect();
            Ok(set.into_iter().collect())
        }
    }
}

fn inner(g: &PermGroup) -> Vec<Automorphism> {
    let t = g.table();
    let set: BTreeSet<Automorphism> = (0..t.len()).map(|x| Automorphism::inner(t, x)).collect();
    set.into_iter().collect()
}

fn solution_indices(ct: &ClassTuple, bounds: &Bounds) -> Result<Vec<Vec<usize>>> {
    let g = &ct.group;
    let space: u128 = ct.classes().iter().map(|c| c.size() as u128).product();
    if space > bounds.max_tuple_space as u128 {
        return Err(Error::BoundExceeded {
            what: "tuple search space",
            needed: space.min(u64::MAX as u128) as u64,
            limit: bounds.max_tuple_space,
        });
    }
    let r = ct.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let t = g.table();
    let members: Vec<Vec<usize>> = ct
        .classes()
        .iter()
        .map(|c| c.members.iter().map(|p| g.index_of(p).expect("member")).collect())
        .collect();
    let class_of = ct.class_map();
    let last = ct.class_ids[r - 1];
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(
        t: &CayleyTable,
        members: &[Vec<usize>],
        class_of: &[usize],
        last: usize,
        prod: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let r = members.len();
        if cur.len() == r - 1 {
            let x = t.inv(prod);
            if class_of[x] == last {
                cur.push(x);
                if t.generate(cur).1.len() == t.len() {
                    out.push(cur.clone());
                }
                cur.pop();
            }
            return;
        }
        for &x in &members[cur.len()] {
            cur.push(x);
            rec(t, members, class_of, last, t.mul(prod, x), cur, out);
            cur.pop();
        }
    }
    rec(t, &members, &class_of, last, CayleyTable::IDENTITY, &mut cur, &mut out);
    Ok(out)
}

/// Generating tuples `(g_1, …, g_r)`, `g_i ∈ C_i`, with `g_1 ⋯ g_r = 1`.
pub fn tuple_solutions(ct: &ClassTuple, bounds: &Bounds) -> Result<Vec<Vec<Perm>>> {
    Ok(solution_indices(ct, bounds)?
        .into_iter()
        .map(|v| v.into_iter().map(|i| ct.group.element(i).clone()).collect())
        .collect())
}

fn orbit_count(solutions: &[Vec<usize>], auts: &[Automorphism]) -> usize {
    let index: HashMap<&Vec<usize>, usize> =
        solutions.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut seen = vec![false; solutions.len()];
    let mut orbits = 0;
    for i in 0..solutions.len() {
        if seen[i] {
            continue;
        }
        orbits += 1;
        for a in auts {
            let img: Vec<usize> = solutions[i].iter().map(|&x| a.apply(x)).collect();
            if let Some(&j) = index.get(&img) {
                seen[j] = true;
            }
        }
    }
    orbits
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub tuple_count: usize,
    pub normalizer_orbits: usize,
    pub inner_orbits: usize,
    pub weakly_rigid: bool,
    pub rigid: bool,
}

/// Orbits of the normalizer of the embedding (and of `Inn(G)`) on the
/// solution set; a single orbit means (weakly) rigid.
pub fn is_weakly_rigid(ct: &ClassTuple, emb: Embedding, bounds: &Bounds) -> Result<RigidityReport> {
    let sols = solution_indices(ct, bounds)?;
    if sols.is_empty() {
        return Err(Error::EmptyTupleSet);
    }
    let sym = embedding_symmetries(&ct.group, emb, bounds)?;
    let nor_orbits = orbit_count(&sols, &sym);
    let inn_orbits = orbit_count(&sols, &inner(&ct.group));
    Ok(RigidityReport {
        tuple_count: sols.len(),
        normalizer_orbits: nor_orbits,
        inner_orbits: inn_orbits,
        weakly_rigid: nor_orbits == 1,
        rigid: inn_orbits == 1,
    })
}

fn normalize_exponent(m: i64, modulus: u64) -> Result<u64> {
    let r = m.rem_euclid(modulus as i64) as u64;
    if gcd(r, modulus) != 1 {
        return Err(Error::BadExponent {
            exponent: m,
            modulus,
        });
    }
    Ok(r)
}

/// Units modulo the tuple exponent, in increasing order.
pub fn admissible_exponents(ct: &ClassTuple) -> Vec<i64> {
    let e = ct.exponent();
    if e == 1 {
        return vec![1];
    }
    (1..e).filter(|&m| gcd(m, e) == 1).map(|m| m as i64).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentCheck {
    pub exponent: u64,
    /// `{C_i^m}` is `{C_i^ω}` for some symmetry `ω`.
    pub weakly: bool,
    /// `{C_i^m} = {C_i}`.
    pub rational: bool,
    /// Class permutation `ω` used, as class indices, when `weakly`.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalityReport {
    pub modulus: u64,
    pub checks: Vec<ExponentCheck>,
    pub weakly_rational: bool,
    pub rational: bool,
}

fn multiset(v: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = v.collect();
    v.sort_unstable();
    v
}

/// Exponents must be coprime to the tuple exponent (see [`ClassTuple::exponent`]).
pub fn is_weakly_rational(
    ct: &ClassTuple,
    emb: Embedding,
    exponents: &[i64],
    bounds: &Bounds,
) -> Result<RationalityReport> {
    let e = ct.exponent();
    let ms = exponents
        .iter()
        .map(|&m| normalize_exponent(m, e))
        .collect::<Result<Vec<_>>>()?;
    let calc = ClassCalculus::new(ct);
    let perms = calc.class_perms(&embedding_symmetries(&ct.group, emb, bounds)?);
    let base = multiset(ct.class_ids.iter().copied());
    let checks: Vec<ExponentCheck> = ms
        .iter()
        .map(|&m| {
            let powered = multiset(ct.class_ids.iter().map(|&c| calc.power(c, m)));
            let witness = perms
                .iter()
                .find(|w| multiset(ct.class_ids.iter().map(|&c| w[c])) == powered)
                .cloned();
            ExponentCheck {
                exponent: m,
                weakly: witness.is_some(),
                rational: powered == base,
                witness,
            }
        })
        .collect();
    Ok(RationalityReport {
        modulus: e,
        weakly_rational: checks.iter().all(|c| c.weakly),
        rational: checks.iter().all(|c| c.rational),
        checks,
    })
}

/// One element of the Galois action on the branch points: the permutation
/// `τ` of the slots and the cyclotomic exponent `χ(τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionRecord {
    pub branch_perm: Vec<usize>,
    pub chi: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisActionData {
    pub modulus: u64,
    pub records: Vec<ActionRecord>,
}

impl GaloisActionData {
    /// Records are permutations of `0..r` with unit exponents, closed under
    /// `(π₁, χ₁)(π₂, χ₂) = (π₁∘π₂, χ₁χ₂)`.
    pub fn validate(&self, r: usize) -> Result<()> {
        let set: HashSet<&ActionRecord> = self.records.iter().collect();
        for rec in &self.records {
            let mut seen = vec![false; r];
            let ok = rec.branch_perm.len() == r
                && rec
                    .branch_perm
                    .iter()
                    .all(|&x| x < r && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(Error::InvalidModel("branch permutation is not a permutation of the slots".into()));
            }
            if gcd(rec.chi % self.modulus, self.modulus) != 1 {
                return Err(Error::BadExponent {
                    exponent: rec.chi as i64,
                    modulus: self.modulus,
                });
            }
        }
        for a in &self.records {
            for b in &self.records {
                let c = ActionRecord {
                    branch_perm: b.branch_perm.iter().map(|&x| a.branch_perm[x]).collect(),
                    chi: a.chi * b.chi % self.modulus,
                };
                if !set.contains(&c) {
                    return Err(Error::InvalidModel("action records are not closed under composition".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRationality {
    pub holds: bool,
    /// Every record works with `ω = 1`.
    pub k_rational: bool,
    /// Class permutation found for each record.
    pub witnesses: Vec<Option<Vec<usize>>>,
}

/// For every record `(τ, χ)` some symmetry `ω` has `C_{τ(i)}^χ = C_i^ω` for all `i`.
pub fn is_weakly_k_rational_triple(
    ct: &ClassTuple,
    emb: Embedding,
    action: &GaloisActionData,
    bounds: &Bounds,
) -> Result<KRationality> {
    action.validate(ct.len())?;
    let calc = ClassCalculus::new(ct);
    let perms = calc.class_perms(&embedding_symmetries(&ct.group, emb, bounds)?);
    let ids = &ct.class_ids;
    let mut k_rational = true;
    let witnesses: Vec<Option<Vec<usize>>> = action
        .records
        .iter()
        .map(|rec| {
            let works = |w: &Vec<usize>| {
                (0..ids.len()).all(|i| calc.power(ids[rec.branch_perm[i]], rec.chi) == w[ids[i]])
            };
            k_rational &= works(&perms[0]);
            perms.iter().find(|w| works(w)).cloned()
        })
        .collect();
    Ok(KRationality {
        holds: witnesses.iter().all(Option::is_some),
        k_rational,
        witnesses,
    })
}

fn mod_inverse(m: u64, e: u64) -> u64 {
    (1..e.max(2)).find(|&x| m * x % e == 1 % e).unwrap_or(1)
}

fn unit_closure(gens: &[u64], e: u64) -> Vec<u64> {
    let mut set: BTreeSet<u64> = BTreeSet::new();
    set.insert(1 % e.max(1));
    let mut frontier: Vec<u64> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x * g % e.max(1);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// Builds action data for the subgroup of units generated by `exponents`.
///
/// Slots are grouped by the symmetry orbit of their class, and `τ_m` sends
/// the `k`-th slot of an orbit to the `k`-th slot of its image orbit under
/// `m⁻¹`; this family composes correctly by construction. A per-exponent
/// matching is used only if that fails to admit a witness `ω`.
pub fn construct_branch_assignment(
    ct: &ClassTuple,
    emb: Embedding,
    exponents: &[i64],
    bounds: &Bounds,
) -> Result<GaloisActionData> {
    let e = ct.exponent();
    let gens = exponents
        .iter()
        .map(|&m| normalize_exponent(m, e))
        .collect::<Result<Vec<_>>>()?;
    let units = unit_closure(&gens, e);
    let rep = is_weakly_rational(ct, emb, &units.iter().map(|&m| m as i64).collect::<Vec<_>>(), bounds)?;
    if let Some(bad) = rep.checks.iter().find(|c| !c.weakly) {
        return Err(Error::NotWeaklyRational(bad.exponent));
    }
    let calc = ClassCalculus::new(ct);
    let perms = calc.class_perms(&embedding_symmetries(&ct.group, emb, bounds)?);
    let ids = &ct.class_ids;
    let r = ids.len();
    let k = calc.reps.len();

    let mut orbit_of = vec![usize::MAX; k];
    for c in 0..k {
        if orbit_of[c] == usize::MAX {
            for w in &perms {
                orbit_of[w[c]] = c;
            }
        }
    }
    let mut slots: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..r {
        slots.entry(orbit_of[ids[i]]).or_default().push(i);
    }
    for v in slots.values_mut() {
        v.sort_by_key(|&i| (ids[i], i));
    }

    let has_witness = |tau: &[usize], m: u64| {
        perms
            .iter()
            .any(|w| (0..r).all(|i| calc.power(ids[tau[i]], m) == w[ids[i]]))
    };

    let coherent: Option<Vec<ActionRecord>> = units
        .iter()
        .map(|&m| {
            let minv = mod_inverse(m, e);
            let mut tau = vec![0; r];
            for (o, members) in &slots {
                let target = orbit_of[calc.power(*o, minv)];
                let dest = slots.get(&target)?;
                if dest.len() != members.len() {
                    return None;
                }
                for (pos, &i) in members.iter().enumerate() {
                    tau[i] = dest[pos];
                }
            }
            has_witness(&tau, m).then_some(ActionRecord {
                branch_perm: tau,
                chi: m,
            })
        })
        .collect();

    let records = match coherent {
        Some(recs) => recs,
        None => units
            .iter()
            .map(|&m| {
                perms
                    .iter()
                    .find_map(|w| {
                        let mut used = vec![false; r];
                        let mut tau = vec![0; r];
                        for i in 0..r {
                            let j = (0..r).find(|&j| {
                                !used[j] && calc.power(ids[j], m) == w[ids[i]]
                            })?;
                            used[j] = true;
                            tau[i] = j;
                        }
                        Some(tau)
                    })
                    .map(|tau| ActionRecord {
                        branch_perm: tau,
                        chi: m,
                    })
                    .ok_or(Error::NotWeaklyRational(m))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let data = GaloisActionData {
        modulus: e,
        records,
    };
    data.validate(r)?;
    Ok(data)
}

/// Hypotheses the user vouches for, which cannot be checked here.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PipelineFlags {
    /// The base field has cohomological dimension at most one.
    pub cd_le_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisInput {
    Exponents(Vec<i64>),
    Action(GaloisActionData),
}

#[derive(Clone, Debug)]
pub struct RigidityCertificate {
    pub degree: usize,
    pub labels: Vec<String>,
    pub rigidity: RigidityReport,
    pub action: GaloisActionData,
    pub weakly_k_rational: bool,
    pub k_rational: bool,
    pub aut_order: usize,
    pub out_order: usize,
    /// `|Nor/(G·Cen)|` for the chosen embedding.
    pub nor_gcen_order: usize,
    /// `Z(G)` has a complement, so `Z(G) → G → Inn(G)` splits.
    pub center_split: bool,
    pub cd_le_one: bool,
    /// Bound on the constant extension needed, when a splitting hypothesis holds.
    pub out_bound: Option<usize>,
    pub premises_verified: bool,
    pub conclusions: Vec<String>,
}

pub fn rigidity_pipeline(
    ct: &ClassTuple,
    emb: Embedding,
    input: &GaloisInput,
    flags: PipelineFlags,
    bounds: &Bounds,
) -> Result<RigidityCertificate> {
    let g = &ct.group;
    let rigidity = is_weakly_rigid(ct, emb, bounds)?;
    let action = match input {
        GaloisInput::Exponents(ms) => construct_branch_assignment(ct, emb, ms, bounds)?,
        GaloisInput::Action(a) => a.clone(),
    };
    let kr = is_weakly_k_rational_triple(ct, emb, &action, bounds)?;
    let aut_order = automorphisms(g, bounds)?.len();
    let out_order = aut_order / (g.order() / g.center().order());
    let nor_gcen_order = match emb {
        Embedding::Regular => out_order,
        Embedding::Natural => nor_gcen_out(g, bounds)?.quotient_order,
    };
    let center_split = !complements(g, &g.center(), bounds)?.is_empty();
    let out_bound = (center_split || flags.cd_le_one).then_some(nor_gcen_order);
    let premises_verified = rigidity.weakly_rigid && kr.holds;
    let mut conclusions = Vec::new();
    if premises_verified {
        let d = emb.degree(g);
        conclusions.push(format!(
            "premises verified: weakly rigid, weakly rational class tuple for the degree-{d} action"
        ));
        conclusions.push("concluded from the premises: G is a geometric Galois group over k".into());
        conclusions.push(format!(
            "concluded from the premises: G is a regular Galois group over an extension of k of degree dividing {aut_order}"
        ));
        if let Some(b) = out_bound {
            conclusions.push(format!(
                "concluded under the splitting hypothesis: the extension degree divides {b}"
            ));
        }
        if out_bound == Some(1) {
            conclusions.push("concluded: G is a regular Galois group over k itself".into());
        }
    }
    Ok(RigidityCertificate {
        degree: emb.degree(g),
        labels: ct.labels(),
        rigidity,
        action,
        weakly_k_rational: kr.holds,
        k_rational: kr.k_rational,
        aut_order,
        out_order,
        nor_gcen_order,
        center_split,
        cd_le_one: flags.cd_le_one,
        out_bound,
        premises_verified,
        conclusions,
    })
}
