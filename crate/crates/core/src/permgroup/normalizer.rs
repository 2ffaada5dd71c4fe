//! Normalizer and centralizer of a permutation group in the full symmetric
//! group on its points.

use std::collections::BTreeSet;

use super::catalog::symmetric;
use super::group::PermGroup;
use super::morphism::{automorphisms, Automorphism};
use super::perm::Perm;
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// `Nor_{S_d}(G)`.
///
/// For transitive `G` every normalizing `ω` is pinned down by the
/// automorphism `x ↦ ωxω⁻¹` and the image of point 0, via
/// `ω(x(0)) = (ωxω⁻¹)(ω(0))`; each (automorphism, point) pair is tried.
/// Intransitive groups fall back to scanning `S_d`.
pub fn symmetric_normalizer(g: &PermGroup, bounds: &Bounds) -> Result<PermGroup> {
    let d = g.degree();
    if !g.is_transitive() {
        return brute_force_normalizer(g, bounds);
    }
    let auts = automorphisms(g, bounds)?;
    let mut found: BTreeSet<Perm> = BTreeSet::new();
    let mut first_hit: Vec<usize> = vec![usize::MAX; d];
    for (k, x) in g.elements().iter().enumerate() {
        let pt = x.apply(0);
        if first_hit[pt] == usize::MAX {
            first_hit[pt] = k;
        }
    }
    for al in &auts {
        for p in 0..d {
            let img: Vec<usize> = (0..d)
                .map(|pt| g.element(al.apply(first_hit[pt])).apply(p))
                .collect();
            let Ok(w) = Perm::from_images(img) else { continue };
            let ok = g.generators().iter().all(|x| {
                g.index_of(&x.conjugate_by(&w))
                    .is_some_and(|i| i == al.apply(g.index_of(x).expect("generator")))
            });
            if ok {
                found.insert(w);
            }
        }
    }
    Ok(from_elements(d, found.into_iter().collect()))
}

/// `Nor_{S_d}(G)` by testing every permutation of the points.
pub fn brute_force_normalizer(g: &PermGroup, bounds: &Bounds) -> Result<PermGroup> {
    let d = g.degree();
    if d > bounds.max_symmetric_degree {
        return Err(Error::BoundExceeded {
            what: "symmetric-group scan degree",
            needed: d as u64,
            limit: bounds.max_symmetric_degree as u64,
        });
    }
    let elems: Vec<Perm> = symmetric(d)
        .elements()
        .iter()
        .filter(|w| g.generators().iter().all(|x| g.contains(&x.conjugate_by(w))))
        .cloned()
        .collect();
    Ok(from_elements(d, elems))
}

fn from_elements(d: usize, elems: Vec<Perm>) -> PermGroup {
    let g = PermGroup::from_parts(d, Vec::new(), elems);
    let gens = g.canonical_generators();
    PermGroup::from_parts(d, gens, g.elements().to_vec())
}

/// Conjugation `x ↦ ωxω⁻¹` as an automorphism of `g`, for `ω` normalizing `g`.
pub fn conjugation_automorphism(g: &PermGroup, w: &Perm) -> Option<Automorphism> {
    let map = g
        .elements()
        .iter()
        .map(|x| g.index_of(&x.conjugate_by(w)))
        .collect::<Option<Vec<usize>>>()?;
    Some(Automorphism { map })
}

/// `Cen_{S_d}(G)`, taken inside a precomputed normalizer.
pub fn centralizer_in(nor: &PermGroup, g: &PermGroup) -> PermGroup {
    let elems: Vec<Perm> = nor
        .elements()
        .iter()
        .filter(|w| g.generators().iter().all(|x| *w * x == x * *w))
        .cloned()
        .collect();
    from_elements(g.degree(), elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::catalog::*;
    use crate::permgroup::regular_representation;

    #[test]
    fn lifted_normalizer_matches_scan() {
        let b = Bounds::DEFAULT;
        let cases = vec![
            symmetric(4),
            alternating(4),
            klein_four(),
            cyclic(5),
            dihedral(5),
            regular_representation(&symmetric(3)).image,
            regular_representation(&cyclic(6)).image,
            alternating(6),
        ];
        for g in cases {
            let a = symmetric_normalizer(&g, &b).unwrap();
            let s = brute_force_normalizer(&g, &b).unwrap();
            assert_eq!(a, s, "{g:?}");
        }
    }

    #[test]
    fn holomorph_orders() {
        let b = Bounds::DEFAULT;
        let c4 = regular_representation(&cyclic(4)).image;
        assert_eq!(symmetric_normalizer(&c4, &b).unwrap().order(), 8);
        let s3 = regular_representation(&symmetric(3)).image;
        assert_eq!(symmetric_normalizer(&s3, &b).unwrap().order(), 36);
        let a5 = regular_representation(&alternating(5)).image;
        assert_eq!(symmetric_normalizer(&a5, &b).unwrap().order(), 60 * 120);
    }
}
