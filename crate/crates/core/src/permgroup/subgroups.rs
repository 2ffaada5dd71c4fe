//! Subgroup lattice enumeration and complement search.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::group::{CayleyTable, PermGroup, Subgroup};
use crate::bounds::Bounds;
use crate::error::{Error, Result};

struct Rec {
    set: FixedBitSet,
    elems: Vec<usize>,
    gens: Vec<usize>,
}

fn cyclic_records(t: &CayleyTable) -> Vec<Rec> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    for g in 0..t.len() {
        let (set, elems) = t.generate(&[g]);
        if seen.insert(set.clone()) {
            out.push(Rec {
                set,
                elems,
                gens: vec![g],
            });
        }
    }
    out
}

/// All subgroups, by repeatedly joining cyclic subgroups.
///
/// With `order_filter = Some(n)` only subgroups of order `n` are returned,
/// and joins whose order does not divide `n` are pruned early.
pub fn all_subgroups(
    g: &PermGroup,
    order_filter: Option<usize>,
    bounds: &Bounds,
) -> Result<Vec<Subgroup>> {
    let t = g.checked_table(bounds.max_subgroup_order, "subgroup enumeration")?;
    let n = t.len();
    if let Some(f) = order_filter {
        if f == 0 || n % f != 0 {
            return Ok(Vec::new());
        }
    }
    let cap = order_filter.unwrap_or(n);
    let divides = |k: usize| cap.is_multiple_of(k);

    let cyclic: Vec<Rec> = cyclic_records(t)
        .into_iter()
        .filter(|r| divides(r.elems.len()))
        .collect();
    let mut seen: HashSet<FixedBitSet> = cyclic.iter().map(|r| r.set.clone()).collect();
    let mut found: Vec<(FixedBitSet, Vec<usize>)> =
        cyclic.iter().map(|r| (r.set.clone(), r.elems.clone())).collect();
    let mut frontier: Vec<Rec> = cyclic
        .iter()
        .map(|r| Rec {
            set: r.set.clone(),
            elems: r.elems.clone(),
            gens: r.gens.clone(),
        })
        .collect();

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                let cg = c.gens[0];
                if h.set.contains(cg) {
                    continue;
                }
                let mut gens = h.gens.clone();
                gens.push(cg);
                let Some((set, elems)) = t.close(&h.set, &h.elems, &gens, cap) else {
                    continue;
                };
                if !divides(elems.len()) || seen.contains(&set) {
                    continue;
                }
                seen.insert(set.clone());
                found.push((set.clone(), elems.clone()));
                next.push(Rec { set, elems, gens });
            }
        }
        frontier = next;
    }

    let mut out: Vec<Subgroup> = found
        .into_iter()
        .filter(|(_, e)| order_filter.is_none_or(|f| e.len() == f))
        .map(|(set, _)| g.subgroup_from_indices(&set.ones().collect::<Vec<_>>()))
        .collect();
    out.sort();
    Ok(out)
}

/// Subgroups of `g` containing `a`.
pub fn overgroups(g: &PermGroup, a: &PermGroup, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    g.require_subgroup(a, "base subgroup")?;
    let t = g.checked_table(bounds.max_subgroup_order, "overgroup enumeration")?;
    let n = t.len();
    let a_idx = g.indices_of(a);
    let mut start = FixedBitSet::with_capacity(n);
    for &i in &a_idx {
        start.insert(i);
    }
    let a_gens: Vec<usize> = a
        .generators()
        .iter()
        .map(|p| g.index_of(p).expect("checked subgroup"))
        .collect();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(start.clone());
    let mut found = vec![start.clone()];
    let mut frontier = vec![Rec {
        set: start,
        elems: a_idx,
        gens: a_gens,
    }];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for x in 0..n {
                if h.set.contains(x) {
                    continue;
                }
                let mut gens = h.gens.clone();
                gens.push(x);
                let (set, elems) = t.close(&h.set, &h.elems, &gens, n).expect("uncapped");
                if seen.insert(set.clone()) {
                    found.push(set.clone());
                    next.push(Rec { set, elems, gens });
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|s| g.subgroup_from_indices(&s.ones().collect::<Vec<_>>()))
        .collect();
    out.sort();
    Ok(out)
}

/// `|U||V| = |Γ|` and `U ∩ V = 1`.
pub fn is_complement(gamma: &PermGroup, u: &PermGroup, v: &PermGroup) -> Result<bool> {
    gamma.require_subgroup(u, "U")?;
    gamma.require_subgroup(v, "V")?;
    Ok(u.order() * v.order() == gamma.order() && u.intersection(v).order() == 1)
}

/// All complements of `u` in `gamma`.
///
/// Independent of [`all_subgroups`]: a complement holds exactly one element
/// of each left coset of `u`, so the search adjoins one element from the
/// first uncovered coset at a time and backtracks as soon as the generated
/// subgroup meets `u` nontrivially. Each complement is reached by exactly
/// one branch.
pub fn complements(gamma: &PermGroup, u: &PermGroup, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    gamma.require_subgroup(u, "U")?;
    let t = gamma.checked_table(bounds.max_subgroup_order, "complement search")?;
    let n = t.len();
    let d = n / u.order();
    let u_idx = gamma.indices_of(u);

    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let c = cosets.len();
        let mut members: Vec<usize> = u_idx.iter().map(|&x| t.mul(g, x)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = c;
        }
        cosets.push(members);
    }

    let mut out = Vec::new();
    let mut start = FixedBitSet::with_capacity(n);
    start.insert(CayleyTable::IDENTITY);
    search(
        t,
        &coset_of,
        &cosets,
        d,
        Rec {
            set: start,
            elems: vec![CayleyTable::IDENTITY],
            gens: Vec::new(),
        },
        &mut out,
    );
    let mut subs: Vec<Subgroup> = out
        .into_iter()
        .map(|s: FixedBitSet| gamma.subgroup_from_indices(&s.ones().collect::<Vec<_>>()))
        .collect();
    subs.sort();
    Ok(subs)
}

fn search(
    t: &CayleyTable,
    coset_of: &[usize],
    cosets: &[Vec<usize>],
    d: usize,
    v: Rec,
    out: &mut Vec<FixedBitSet>,
) {
    if v.elems.len() == d {
        out.push(v.set);
        return;
    }
    let mut covered = vec![false; cosets.len()];
    for &x in &v.elems {
        covered[coset_of[x]] = true;
    }
    let next = covered.iter().position(|c| !c).expect("fewer than d elements");
    for &x in &cosets[next] {
        let mut gens = v.gens.clone();
        gens.push(x);
        let Some((set, elems)) = t.close(&v.set, &v.elems, &gens, d) else {
            continue;
        };
        if !d.is_multiple_of(elems.len()) {
            continue;
        }
        let mut hit = vec![false; cosets.len()];
        let injective = elems.iter().all(|&e| !std::mem::replace(&mut hit[coset_of[e]], true));
        if injective {
            search(t, coset_of, cosets, d, Rec { set, elems, gens }, out);
        }
    }
}

pub fn normal_complements(
    gamma: &PermGroup,
    u: &PermGroup,
    bounds: &Bounds,
) -> Result<Vec<Subgroup>> {
    Ok(complements(gamma, u, bounds)?
        .into_iter()
        .filter(|v| gamma.is_normal(v))
        .collect())
}

/// Fails with `BoundExceeded` if `g` is too large for lattice work.
pub fn require_lattice_size(g: &PermGroup, bounds: &Bounds) -> Result<()> {
    if g.order() > bounds.max_subgroup_order {
        return Err(Error::BoundExceeded {
            what: "subgroup enumeration",
            needed: g.order() as u64,
            limit: bounds.max_subgroup_order as u64,
        });
    }
    Ok(())
}
