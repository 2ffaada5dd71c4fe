//! Finite separable extensions modelled by a group and a core-free subgroup,
//! and the complement machinery built on top of that model.

use std::collections::{BTreeSet, HashMap};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::permgroup::catalog;
use crate::permgroup::{
    complements, direct_product, is_isomorphic, normal_complements, outer_order,
    regular_representation, semidirect_product, Action, Automorphism, DirectProduct, Hom,
    PermGroup, Perm, SemidirectProduct, Subgroup,
};

/// `Γ` with a core-free subgroup `Γ_E`; the extension has degree `[Γ : Γ_E]`.
#[derive(Clone, Debug)]
pub struct ExtensionModel {
    pub gamma: PermGroup,
    pub gamma_e: Subgroup,
}

impl ExtensionModel {
    pub fn new(gamma: PermGroup, gamma_e: Subgroup) -> Result<ExtensionModel> {
        gamma.require_subgroup(&gamma_e, "Γ_E")?;
        let core = gamma.core(&gamma_e);
        if core.order() != 1 {
            return Err(Error::NotCoreFree {
                core_order: core.order(),
            });
        }
        Ok(ExtensionModel { gamma, gamma_e })
    }

    /// `Γ` acting on its points with `Γ_E` the stabilizer of `point`.
    pub fn from_point_stabilizer(gamma: PermGroup, point: usize) -> Result<ExtensionModel> {
        if point >= gamma.degree() {
            return Err(Error::InvalidModel(format!(
                "point {point} outside 0..{}",
                gamma.degree()
            )));
        }
        let st = gamma.point_stabilizer(point);
        Self::new(gamma, st)
    }

    /// Replaces `(Γ, H)` by `(Γ/core, H/core)`, realized through the action
    /// on the cosets of `H`.
    pub fn quotient_by_core(gamma: &PermGroup, h: &Subgroup) -> Result<(ExtensionModel, CosetAction)> {
        let act = coset_action(gamma, h)?;
        let st = act.image.point_stabilizer(0);
        let m = ExtensionModel::new(act.image.clone(), st)?;
        Ok((m, act))
    }

    pub fn degree(&self) -> usize {
        self.gamma.order() / self.gamma_e.order()
    }
}

/// Left-translation action of a group on the left cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub image: PermGroup,
    pub hom: Hom,
    /// Smallest element of each coset; coset `i` is point `i`.
    pub representatives: Vec<Perm>,
    coset_of: HashMap<Perm, usize>,
}

impl CosetAction {
    pub fn coset_of(&self, g: &Perm) -> usize {
        self.coset_of[g]
    }
}

pub fn coset_action(gamma: &PermGroup, h: &PermGroup) -> Result<CosetAction> {
    gamma.require_subgroup(h, "subgroup")?;
    let mut coset_of: HashMap<Perm, usize> = HashMap::new();
    let mut reps = Vec::new();
    for g in gamma.elements() {
        if coset_of.contains_key(g) {
            continue;
        }
        let c = reps.len();
        reps.push(g.clone());
        for x in h.elements() {
            coset_of.insert(g * x, c);
        }
    }
    let d = reps.len();
    let act = |g: &Perm| -> Perm {
        Perm::from_images(reps.iter().map(|r| coset_of[&(g * r)]).collect())
            .expect("translation permutes cosets")
    };
    let gens: Vec<Perm> = gamma.generators().iter().map(act).collect();
    let image = PermGroup::closure_bounded(d, &gens, usize::MAX)?;
    let hom = Hom::from_images(gamma, &image, &gens)?;
    Ok(CosetAction {
        image,
        hom,
        representatives: reps,
        coset_of,
    })
}

/// Isomorphism class among a list of subgroups: the canonically smallest
/// member and how many members fall in the class.
#[derive(Clone, Debug)]
pub struct IsoClass {
    pub representative: Subgroup,
    pub name: String,
    pub count: usize,
}

fn iso_classes(subs: &[Subgroup], bounds: &Bounds) -> Result<Vec<IsoClass>> {
    let mut out: Vec<IsoClass> = Vec::new();
    'outer: for s in subs {
        for c in out.iter_mut() {
            if is_isomorphic(&c.representative, s, bounds)? {
                c.count += 1;
                continue 'outer;
            }
        }
        out.push(IsoClass {
            representative: s.clone(),
            name: catalog::describe(s),
            count: 1,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PreGaloisReport {
    pub complements: Vec<Subgroup>,
    pub normal_complements: Vec<Subgroup>,
    pub potential_groups: Vec<IsoClass>,
    pub pre_galois_groups: Vec<IsoClass>,
    pub is_potentially_galois: bool,
    pub is_pre_galois: bool,
}

pub fn analyze(model: &ExtensionModel, bounds: &Bounds) -> Result<PreGaloisReport> {
    let cs = complements(&model.gamma, &model.gamma_e, bounds)?;
    let ns: Vec<Subgroup> = cs
        .iter()
        .filter(|v| model.gamma.is_normal(v))
        .cloned()
        .collect();
    let potential_groups = iso_classes(&cs, bounds)?;
    let pre_galois_groups = iso_classes(&ns, bounds)?;
    Ok(PreGaloisReport {
        is_potentially_galois: !cs.is_empty(),
        is_pre_galois: !ns.is_empty(),
        complements: cs,
        normal_complements: ns,
        potential_groups,
        pre_galois_groups,
    })
}

/// A minimal field `k_G` of a potentially Galois extension: the fixed field of
/// a complement `G` in the Galois closure, of degree `|Γ|/|G|` over the base.
#[derive(Clone, Debug)]
pub struct MinimalField {
    pub complement: Subgroup,
    pub field_degree: usize,
    pub normal: bool,
}

pub fn minimal_fields(model: &ExtensionModel, bounds: &Bounds) -> Result<Vec<MinimalField>> {
    Ok(complements(&model.gamma, &model.gamma_e, bounds)?
        .into_iter()
        .map(|g| MinimalField {
            field_degree: model.gamma.order() / g.order(),
            normal: model.gamma.is_normal(&g),
            complement: g,
        })
        .collect())
}

/// Subgroup generated by `a ∪ b` inside `delta`, where `b` is normal; it
/// equals the product set `a·b`.
pub fn composite_minimalization(delta: &PermGroup, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    delta.require_subgroup(a, "A")?;
    delta.require_subgroup(b, "B")?;
    if !delta.is_normal(b) {
        return Err(Error::NotNormal("B is not normal in Δ".into()));
    }
    let gens: Vec<Perm> = a.generators().iter().chain(b.generators()).cloned().collect();
    delta.subgroup(&gens)
}

/// Evidence that `G ⋊ A ≅ G × A` for a complete-type group `G`.
#[derive(Clone, Debug)]
pub struct SplitCertificate {
    pub semidirect: SemidirectProduct,
    /// `{(σ(a)⁻¹, a)}`, a normal subgroup commuting with the copy of `G`.
    pub a_star: Subgroup,
    /// Complement of `Z(G)` whose elements realize `Inn(G)`.
    pub inner_section: Subgroup,
    /// `(a, σ(a))` for every `a ∈ A`.
    pub sigma: Vec<(Perm, Perm)>,
    pub direct: DirectProduct,
    /// Verified isomorphism `G ⋊ A → G × A`.
    pub isomorphism: Hom,
}

/// Requires `Out(G) = 1` and a splitting of `Z(G) → G → Inn(G)`.
pub fn split_to_direct(action: &Action, bounds: &Bounds) -> Result<SplitCertificate> {
    let g = &action.n;
    let a = &action.a;
    if outer_order(g, bounds)? != 1 {
        return Err(Error::HypothesisFailed("Out(G) is not trivial".into()));
    }
    let z = g.center();
    let sections = complements(g, &z, bounds)?;
    let s = sections.into_iter().next().ok_or_else(|| {
        Error::HypothesisFailed("the centre has no complement, so G → Inn(G) does not split".into())
    })?;
    let t = g.table();
    let mut by_aut: HashMap<Automorphism, Perm> = HashMap::new();
    for x in s.elements() {
        by_aut.insert(Automorphism::inner(t, g.index_of(x).expect("s ≤ G")), x.clone());
    }
    let sigma: Vec<(Perm, Perm)> = a
        .elements()
        .iter()
        .map(|x| {
            let s_x = by_aut
                .get(action.of(x))
                .expect("trivial Out makes every automorphism inner");
            (x.clone(), s_x.clone())
        })
        .collect();
    let sd = semidirect_product(action);
    let sig: HashMap<&Perm, &Perm> = sigma.iter().map(|(x, s)| (x, s)).collect();
    let a_star_gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(|x| sd.element(&sig[x].inverse(), x))
        .collect();
    let a_star = sd.group.subgroup(&a_star_gens)?;
    if a_star.order() != a.order() {
        return Err(Error::HypothesisFailed("σ is not a homomorphism".into()));
    }
    let commute = a_star.generators().iter().all(|x| {
        sd.normal.generators().iter().all(|y| x * y == y * x)
    });
    if !commute || sd.normal.intersection(&a_star).order() != 1 {
        return Err(Error::HypothesisFailed("A* does not split off the copy of G".into()));
    }
    let direct = direct_product(&[g, a]);
    let iso = Hom::from_fn(&sd.group, &direct.group, |x| {
        let (m, ax) = sd.split(x);
        direct.tuple(&[&m * sig[&ax], ax])
    })?;
    if !iso.is_injective() {
        return Err(Error::HypothesisFailed("map to G × A is not injective".into()));
    }
    Ok(SplitCertificate {
        semidirect: sd,
        a_star,
        inner_section: s,
        sigma,
        direct,
        isomorphism: iso,
    })
}

/// Trivial centre and trivial outer automorphism group.
pub fn is_complete_group(g: &PermGroup, bounds: &Bounds) -> Result<bool> {
    Ok(g.center().order() == 1 && outer_order(g, bounds)? == 1)
}

/// Checks performed on the map `φ : G → G'` between two normal complements.
#[derive(Clone, Debug)]
pub struct AntiIsoTranscript {
    /// `(x, φ(x))` for every `x ∈ G`, where `φ(x) = xγ` with the unique `γ ∈ U`.
    pub phi: Vec<(Perm, Perm)>,
    pub unique_gamma: bool,
    pub bijective: bool,
    /// `φ(g₁g₂) = g₁φ(g₂)g₁⁻¹ · φ(g₁)` for all pairs.
    pub cocycle: bool,
    pub intersection_order: usize,
    pub identity_on_intersection: bool,
    pub quotient_order: usize,
    /// `φ` induces an anti-isomorphism `G/(G∩G') → G'/(G∩G')`.
    pub induced_anti_isomorphism: bool,
    /// When `G ∩ G' = 1`: `x ↦ φ(x)⁻¹` is an isomorphism.
    pub inverse_is_isomorphism: Option<bool>,
}

pub fn anti_isomorphism(
    gamma: &PermGroup,
    u: &Subgroup,
    g: &Subgroup,
    g2: &Subgroup,
) -> Result<AntiIsoTranscript> {
    for (v, name) in [(g, "G"), (g2, "G'")] {
        gamma.require_subgroup(v, name)?;
        let ok = v.order() * u.order() == gamma.order()
            && v.intersection(u).order() == 1
            && gamma.is_normal(v);
        if !ok {
            return Err(Error::NotNormalComplement(format!("{name} is not a normal complement of U")));
        }
    }
    let mut unique = true;
    let mut phi_map: HashMap<Perm, Perm> = HashMap::new();
    let mut phi = Vec::with_capacity(g.order());
    for x in g.elements() {
        let hits: Vec<Perm> = u
            .elements()
            .iter()
            .map(|c| x * c)
            .filter(|y| g2.contains(y))
            .collect();
        unique &= hits.len() == 1;
        let y = hits.into_iter().next().ok_or_else(|| {
            Error::NotNormalComplement("no γ ∈ U moves x into G'".into())
        })?;
        phi_map.insert(x.clone(), y.clone());
        phi.push((x.clone(), y));
    }
    let bijective = phi_map.values().collect::<BTreeSet<_>>().len() == g2.order();
    let f = |x: &Perm| &phi_map[x];
    let mut cocycle = true;
    for a in g.elements() {
        for b in g.elements() {
            let lhs = f(&(a * b));
            let rhs = &f(b).conjugate_by(a) * f(a);
            if *lhs != rhs {
                cocycle = false;
            }
        }
    }
    let inter = g.intersection(g2);
    let identity_on_intersection = inter.elements().iter().all(|x| f(x) == x);
    let mut induced = true;
    for a in g.elements() {
        for b in g.elements() {
            let prod = &(f(b) * f(a)).inverse() * f(&(a * b));
            if !inter.contains(&prod) {
                induced = false;
            }
            if inter.contains(&(&a.inverse() * b)) && !inter.contains(&(&f(a).inverse() * f(b))) {
                induced = false;
            }
        }
    }
    let inverse_is_isomorphism = (inter.order() == 1).then(|| {
        g.elements().iter().all(|a| {
            g.elements().iter().all(|b| {
                f(&(a * b)).inverse() == &f(a).inverse() * &f(b).inverse()
            })
        })
    });
    Ok(AntiIsoTranscript {
        phi,
        unique_gamma: unique,
        bijective,
        cocycle,
        intersection_order: inter.order(),
        identity_on_intersection,
        quotient_order: g.order() / inter.order(),
        induced_anti_isomorphism: induced,
        inverse_is_isomorphism,
    })
}

#[derive(Clone, Debug)]
pub struct RegularSubgroup {
    pub group: PermGroup,
    pub type_name: &'static str,
    pub inside_lambda: bool,
}

/// Regular subgroups of `Perm(Γ/Γ_E)` normalized by the translation image `λ(Γ)`.
#[derive(Clone, Debug)]
pub struct HopfReport {
    pub degree: usize,
    pub lambda: PermGroup,
    pub regular_subgroups: Vec<RegularSubgroup>,
}

impl HopfReport {
    pub fn has_witness_in_lambda(&self) -> bool {
        self.regular_subgroups.iter().any(|r| r.inside_lambda)
    }
}

/// Every abstract group of order `d` is instantiated in every conjugate of
/// its regular representation inside `S_d`, then filtered by normalization.
pub fn hopf_regular_subgroups(model: &ExtensionModel, bounds: &Bounds) -> Result<HopfReport> {
    let d = model.degree();
    if d > bounds.max_symmetric_degree {
        return Err(Error::BoundExceeded {
            what: "regular subgroup search degree",
            needed: d as u64,
            limit: bounds.max_symmetric_degree as u64,
        });
    }
    let lambda = coset_action(&model.gamma, &model.gamma_e)?.image;
    let sym = catalog::symmetric(d);
    let mut found: Vec<RegularSubgroup> = Vec::new();
    for (name, abstract_group) in catalog::groups_of_order(d) {
        let reg = regular_representation(&abstract_group).image;
        let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
        for s in sym.elements() {
            let mut elems: Vec<Perm> = reg.elements().iter().map(|x| x.conjugate_by(s)).collect();
            elems.sort();
            if seen.contains(&elems) {
                continue;
            }
            let gens: Vec<Perm> = reg.generators().iter().map(|x| x.conjugate_by(s)).collect();
            let normalized = lambda.generators().iter().all(|l| {
                gens.iter()
                    .all(|x| elems.binary_search(&x.conjugate_by(l)).is_ok())
            });
            seen.insert(elems.clone());
            if normalized {
                let inside = elems.iter().all(|x| lambda.contains(x));
                let group = PermGroup::closure_bounded(d, &gens, usize::MAX)?;
                found.push(RegularSubgroup {
                    group,
                    type_name: name,
                    inside_lambda: inside,
                });
            }
        }
    }
    found.sort_by(|a, b| a.group.elements().cmp(b.group.elements()));
    Ok(HopfReport {
        degree: d,
        lambda,
        regular_subgroups: found,
    })
}

#[derive(Clone, Debug)]
pub struct FaithfulActionReport {
    pub centralizer_order: usize,
    pub intersection_order: usize,
    pub faithful: bool,
}

/// Whether `Γ_E` meets `Cen_Γ(G)` trivially, i.e. whether `Γ_E` acts
/// faithfully on `G` by conjugation. Reported, never enforced.
pub fn faithful_action_check(model: &ExtensionModel, g: &Subgroup) -> Result<FaithfulActionReport> {
    model.gamma.require_subgroup(g, "G")?;
    let cen = model.gamma.centralizer(g.generators());
    let inter = model.gamma_e.intersection(&cen);
    Ok(FaithfulActionReport {
        centralizer_order: cen.order(),
        intersection_order: inter.order(),
        faithful: inter.order() == 1,
    })
}

/// Normal complements of `Γ_E`, shorthand for the pre-Galois test alone.
pub fn pre_galois_complements(model: &ExtensionModel, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    normal_complements(&model.gamma, &model.gamma_e, bounds)
}
