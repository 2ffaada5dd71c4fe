use std::collections::{BTreeSet, HashSet};

use pregal_core::permgroup::catalog::{self, alternating, cyclic, dihedral, klein_four, symmetric};
use pregal_core::permgroup::*;
use pregal_core::Bounds;

const B: Bounds = Bounds::DEFAULT;

fn p(d: usize, cs: &[&[usize]]) -> Perm {
    Perm::from_cycles(d, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Every subgroup generated by at most `k` elements, as sorted element sets.
fn oracle_subgroups(g: &PermGroup, k: usize) -> BTreeSet<Vec<Perm>> {
    let mut out = BTreeSet::new();
    let els = g.elements();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(ix) = stack.pop() {
        let gens: Vec<Perm> = ix.iter().map(|&i| els[i].clone()).collect();
        let h = PermGroup::closure(g.degree(), &gens).unwrap();
        out.insert(h.elements().to_vec());
        if ix.len() < k {
            let start = ix.last().map_or(0, |&l| l + 1);
            for j in start..els.len() {
                let mut n = ix.clone();
                n.push(j);
                stack.push(n);
            }
        }
    }
    out
}

/// Conjugacy partition by direct conjugation with every element.
fn oracle_class_sizes(g: &PermGroup) -> Vec<usize> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut sizes = Vec::new();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        let cls: HashSet<Perm> = g.elements().iter().map(|y| x.conjugate_by(y)).collect();
        sizes.push(cls.len());
        seen.extend(cls);
    }
    sizes.sort_unstable();
    sizes
}

/// Automorphism count by trying every bijection of a small group.
fn oracle_aut_count(g: &PermGroup) -> usize {
    let n = g.order();
    let t = g.table();
    let mut count = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, t: &CayleyTable, count: &mut usize) {
        if k == 1 {
            let n = a.len();
            if (0..n).all(|x| (0..n).all(|y| a[t.mul(x, y)] == t.mul(a[x], a[y]))) {
                *count += 1;
            }
            return;
        }
        for i in 0..k {
            heap(k - 1, a, t, count);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut perm, t, &mut count);
    count
}

#[test]
fn closure_orders() {
    for n in 1..=6 {
        let f: usize = (1..=n).product();
        assert_eq!(symmetric(n).order(), f);
        if n >= 3 {
            assert_eq!(alternating(n).order(), f / 2);
        }
    }
    assert_eq!(dihedral(4).order(), 8);
    assert_eq!(catalog::quaternion().order(), 8);
}

#[test]
fn closure_respects_element_bound() {
    let s7 = symmetric(7);
    let err = PermGroup::closure_bounded(7, s7.generators(), 1000).unwrap_err();
    assert!(matches!(err, pregal_core::Error::BoundExceeded { .. }));
}

#[test]
fn elements_are_sorted_with_identity_first() {
    let g = symmetric(4);
    assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    assert!(g.element(0).is_identity());
}

#[test]
fn class_sizes_match_direct_conjugation() {
    let s3 = symmetric(3);
    let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(ConjClass::size).collect();
    assert_eq!(sizes, vec![1, 3, 2]);
    let a5 = alternating(5);
    let sizes: Vec<usize> = a5.conjugacy_classes().iter().map(ConjClass::size).collect();
    assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
    for g in [symmetric(4), a5, dihedral(5), catalog::quaternion()] {
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(ConjClass::size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, oracle_class_sizes(&g));
    }
}

#[test]
fn class_labels_follow_sorted_order() {
    let a5 = alternating(5);
    let cl = a5.conjugacy_classes();
    assert_eq!(PermGroup::class_labels(&cl), vec!["1A", "2A", "3A", "5A", "5B"]);
}

#[test]
fn subgroup_counts() {
    let s4 = symmetric(4);
    let subs = all_subgroups(&s4, None, &B).unwrap();
    assert_eq!(subs.len(), 30);
    assert_eq!(all_subgroups(&s4, Some(4), &B).unwrap().len(), 7);
    assert_eq!(all_subgroups(&cyclic(6), None, &B).unwrap().len(), 4);
    assert_eq!(all_subgroups(&alternating(5), None, &B).unwrap().len(), 59);
    assert_eq!(all_subgroups(&symmetric(5), None, &B).unwrap().len(), 156);
    assert_eq!(all_subgroups(&catalog::quaternion(), None, &B).unwrap().len(), 6);
}

#[test]
fn subgroups_agree_with_generated_sets() {
    for g in [symmetric(4), dihedral(4), alternating(4), catalog::quaternion(), cyclic(6)] {
        let ours: BTreeSet<Vec<Perm>> = all_subgroups(&g, None, &B)
            .unwrap()
            .iter()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(ours, oracle_subgroups(&g, 3), "{g:?}");
    }
}

#[test]
fn order_filter_matches_unfiltered() {
    let s4 = symmetric(4);
    let all = all_subgroups(&s4, None, &B).unwrap();
    for k in [1, 2, 3, 4, 6, 8, 12, 24, 5] {
        let f = all_subgroups(&s4, Some(k), &B).unwrap();
        let expect: Vec<_> = all.iter().filter(|h| h.order() == k).cloned().collect();
        assert_eq!(f, expect, "order {k}");
    }
}

#[test]
fn normalizer_and_centralizer() {
    let s4 = symmetric(4);
    let v4 = klein_four();
    assert_eq!(s4.normalizer(&v4).unwrap().order(), 24);
    assert!(s4.is_normal(&v4));
    let t = s4.subgroup(&[p(4, &[&[0, 1]])]).unwrap();
    assert_eq!(s4.normalizer(&t).unwrap().order(), 4);
    assert_eq!(s4.centralizer(&[p(4, &[&[0, 1, 2, 3]])]).order(), 4);
    assert_eq!(s4.center().order(), 1);
    assert_eq!(dihedral(4).center().order(), 2);
    let stab = s4.point_stabilizer(3);
    assert_eq!(s4.core(&stab).order(), 1);
}

#[test]
fn automorphism_counts() {
    assert_eq!(automorphisms(&symmetric(3), &B).unwrap().len(), 6);
    assert_eq!(automorphisms(&cyclic(4), &B).unwrap().len(), 2);
    assert_eq!(automorphisms(&klein_four(), &B).unwrap().len(), 6);
    assert_eq!(automorphisms(&dihedral(4), &B).unwrap().len(), 8);
    assert_eq!(automorphisms(&catalog::quaternion(), &B).unwrap().len(), 24);
    assert_eq!(automorphisms(&alternating(5), &B).unwrap().len(), 120);
    for g in [symmetric(3), cyclic(6), klein_four(), dihedral(4), catalog::quaternion()] {
        assert_eq!(automorphisms(&g, &B).unwrap().len(), oracle_aut_count(&g), "{g:?}");
    }
}

#[test]
fn outer_orders() {
    assert_eq!(outer_order(&symmetric(4), &B).unwrap(), 1);
    assert_eq!(outer_order(&symmetric(5), &B).unwrap(), 1);
    assert_eq!(outer_order(&alternating(5), &B).unwrap(), 2);
    assert_eq!(outer_order(&symmetric(6), &B).unwrap(), 2);
    assert_eq!(outer_order(&cyclic(2), &B).unwrap(), 1);
}

#[test]
fn automorphism_bound_is_enforced() {
    let err = automorphisms(&symmetric(7), &B).unwrap_err();
    assert!(matches!(err, pregal_core::Error::BoundExceeded { .. }));
}

#[test]
fn isomorphism_screening_and_search() {
    let reg = regular_representation(&symmetric(3)).image;
    assert!(is_isomorphic(&reg, &symmetric(3), &B).unwrap());
    assert!(!is_isomorphic(&cyclic(6), &symmetric(3), &B).unwrap());
    assert!(!is_isomorphic(&cyclic(4), &klein_four(), &B).unwrap());
    let h = find_isomorphism(&reg, &symmetric(3), &B).unwrap().unwrap();
    assert!(h.is_injective() && h.is_surjective());
    // D8 and Q8 share order statistics only partly; the search must separate them
    assert!(!is_isomorphic(&dihedral(4), &catalog::quaternion(), &B).unwrap());
}

#[test]
fn regular_representation_is_regular() {
    for g in [symmetric(3), klein_four(), alternating(4)] {
        let r = regular_representation(&g);
        assert!(r.image.is_regular());
        assert_eq!(r.image.order(), g.order());
        let right = right_regular_representation(&g);
        for a in r.image.generators() {
            for b in right.generators() {
                assert_eq!(a * b, b * a);
            }
        }
    }
}

#[test]
fn semidirect_products() {
    let c3 = cyclic(3);
    let c2 = cyclic(2);
    let inv = Automorphism {
        map: c3.elements().iter().map(|x| c3.index_of(&x.inverse()).unwrap()).collect(),
    };
    let act = Action::from_generator_images(&c3, &c2, &[inv]).unwrap();
    let sd = semidirect_product(&act);
    assert_eq!(sd.group.order(), 6);
    assert!(is_isomorphic(&sd.group, &symmetric(3), &B).unwrap());
    assert!(sd.group.is_normal(&sd.normal));

    let s4 = symmetric(4);
    let v4 = klein_four();
    let s3 = s4.point_stabilizer(3);
    let act = Action::by_conjugation(&v4, &s3).unwrap();
    let sd = semidirect_product(&act);
    assert!(is_isomorphic(&sd.group, &s4, &B).unwrap());
    let (n, a) = sd.split(&sd.element(v4.element(1), s3.element(2)));
    assert_eq!((&n, &a), (v4.element(1), s3.element(2)));

    let triv = semidirect_product(&Action::trivial(&c3, &c2));
    assert!(is_isomorphic(&triv.group, &cyclic(6), &B).unwrap());
}

#[test]
fn action_must_be_multiplicative() {
    let c4 = cyclic(4);
    let c2 = cyclic(2);
    // an automorphism of order 2 for a generator of order 2 is fine; order-4 map on C2 is not
    let c5 = cyclic(5);
    let t = c5.table();
    let sq = Automorphism { map: (0..5).map(|x| t.power(x, 2)).collect() };
    assert!(Action::from_generator_images(&c5, &c2, std::slice::from_ref(&sq)).is_err());
    assert!(Action::from_generator_images(&c5, &c4, &[sq]).is_ok());
}

#[test]
fn complements_match_filtered_lattice() {
    let cases: Vec<(PermGroup, Vec<Perm>)> = vec![
        (symmetric(4), vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2]])]),
        (dihedral(4), vec![p(4, &[&[1, 3]])]),
        (symmetric(5), vec![p(5, &[&[0, 1]]), p(5, &[&[0, 1, 2, 3]])]),
        (alternating(4), vec![p(4, &[&[0, 1], &[2, 3]])]),
    ];
    for (g, ugens) in cases {
        let u = g.subgroup(&ugens).unwrap();
        let fast = complements(&g, &u, &B).unwrap();
        let slow: Vec<Subgroup> = all_subgroups(&g, Some(g.order() / u.order()), &B)
            .unwrap()
            .into_iter()
            .filter(|v| is_complement(&g, &u, v).unwrap())
            .collect();
        assert_eq!(fast, slow);
    }
}

#[test]
fn complement_examples() {
    let s5 = symmetric(5);
    let s4 = s5.point_stabilizer(4);
    let cs = complements(&s5, &s4, &B).unwrap();
    assert_eq!(cs.len(), 6);
    assert!(cs.iter().all(|c| c.order() == 5));
    assert!(normal_complements(&s5, &s4, &B).unwrap().is_empty());

    let s6 = symmetric(6);
    let c6 = s6.subgroup(&[p(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
    let cs = complements(&s6, &c6, &B).unwrap();
    assert!(cs.iter().any(|c| is_isomorphic(c, &symmetric(5), &B).unwrap()));

    let a6 = alternating(6);
    let c3 = a6.subgroup(&[p(6, &[&[0, 1, 2]])]).unwrap();
    assert!(complements(&a6, &c3, &B).unwrap().is_empty());
}

#[test]
fn overgroups_of_stabilizer() {
    let s4 = symmetric(4);
    let st = s4.point_stabilizer(3);
    let ov = overgroups(&s4, &st, &B).unwrap();
    assert_eq!(ov.len(), 2);
    let t = s4.subgroup(&[p(4, &[&[0, 1]])]).unwrap();
    let ov = overgroups(&s4, &t, &B).unwrap();
    let expect = all_subgroups(&s4, None, &B)
        .unwrap()
        .into_iter()
        .filter(|h| h.contains_all(&t))
        .count();
    assert_eq!(ov.len(), expect);
}

#[test]
fn simplicity() {
    assert!(alternating(5).is_simple());
    assert!(cyclic(5).is_simple());
    assert!(!symmetric(5).is_simple());
    assert!(!alternating(4).is_simple());
}

#[test]
fn homomorphism_from_generator_images() {
    let s4 = symmetric(4);
    let c2 = cyclic(2);
    let sign = |q: &Perm| {
        if q.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
            c2.identity()
        } else {
            c2.generators()[0].clone()
        }
    };
    let imgs: Vec<Perm> = s4.generators().iter().map(sign).collect();
    let h = Hom::from_images(&s4, &c2, &imgs).unwrap();
    assert_eq!(h.kernel().order(), 12);
    assert!(h.is_surjective());
    let bad = vec![c2.generators()[0].clone(), c2.identity()];
    // sending the transposition to 1 and the 4-cycle to -1 is not a homomorphism
    let gens = vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])];
    assert!(Hom::from_generator_images(&s4, &c2, &gens, &bad).is_err());
}

#[test]
fn catalog_lookup() {
    for name in catalog::NAMES {
        assert!(catalog::by_name(name).is_some(), "{name}");
    }
    assert_eq!(catalog::by_name("D12").unwrap().order(), 12);
    assert_eq!(catalog::by_name("reg:S3").unwrap().degree(), 6);
    for bad in ["", "Γ4", "D7", "S", "X3", "A2", "reg:"] {
        assert!(catalog::by_name(bad).is_none(), "{bad}");
    }
}
