use std::collections::BTreeSet;

use proptest::prelude::*;

use pregal_core::correspondence::{backward, correspondence_table, family, forward, membership};
use pregal_core::extension::ExtensionModel;
use pregal_core::permgroup::catalog::{alternating, symmetric};
use pregal_core::permgroup::*;
use pregal_core::rigidity::{tuple_solutions, ClassTuple};
use pregal_core::Bounds;

const B: Bounds = Bounds::DEFAULT;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn perms(n: usize, k: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Perm>> {
    prop::collection::vec(perm(n), k)
}

/// A random subgroup of `S_n` and a random subgroup of it.
fn pair(n: usize) -> impl Strategy<Value = (PermGroup, PermGroup)> {
    (perms(n, 1..=2), perms(n, 0..=1)).prop_map(move |(g, u)| {
        let gamma = PermGroup::closure(n, &g).unwrap();
        let u: Vec<Perm> = u.into_iter().filter(|x| gamma.contains(x)).collect();
        let u = gamma.subgroup(&u).unwrap().into_group();
        (gamma, u)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_inverse_and_order(a in perm(7), b in perm(7)) {
        prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.conjugate_by(&b).cycle_type(), a.cycle_type());
        prop_assert_eq!(a.pow(-3), a.inverse().pow(3));
    }

    #[test]
    fn lagrange_and_class_equation(gens in perms(5, 1..=3)) {
        let g = PermGroup::closure(5, &gens).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        let classes = g.conjugacy_classes();
        prop_assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), g.order());
        prop_assert!(classes.iter().all(|c| g.order().is_multiple_of(c.size())));
        for h in all_subgroups(&g, None, &B).unwrap() {
            prop_assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn complements_equal_filtered_lattice((gamma, u) in pair(5)) {
        let fast = complements(&gamma, &u, &B).unwrap();
        let n = gamma.order() / u.order();
        let slow: Vec<Subgroup> = all_subgroups(&gamma, Some(n), &B)
            .unwrap()
            .into_iter()
            .filter(|v| v.intersection(&u).order() == 1)
            .collect();
        prop_assert_eq!(&fast, &slow);
        for v in &fast {
            prop_assert!(is_complement(&gamma, &u, v).unwrap());
        }
    }

    #[test]
    fn correspondence_round_trips((gamma, u) in pair(5)) {
        let core = gamma.core(&u);
        prop_assume!(core.order() == 1);
        let m = ExtensionModel::new(gamma.clone(), gamma.subgroup(u.generators()).unwrap()).unwrap();
        for g in complements(&gamma, &u, &B).unwrap() {
            let fam = family(&m, &g, &B).unwrap();
            for h in &fam {
                let m = membership(h, &m.gamma_e);
                prop_assert!(m.agree() && m.member());
            }
            let rows = correspondence_table(&m, &g, &B).unwrap();
            prop_assert_eq!(rows.len(), fam.len());
            for r in &rows {
                prop_assert_eq!(&backward(&g, &r.h_gamma_e), &r.h);
                prop_assert_eq!(gamma.order() / r.h_gamma_e.order(), g.order() / r.h.order());
            }
            for h2 in overgroups(&gamma, &u, &B).unwrap() {
                let back = backward(&g, &h2);
                prop_assert_eq!(forward(&gamma, &back, &m.gamma_e).unwrap(), h2.clone());
                prop_assert_eq!(g.order() / back.order(), gamma.order() / h2.order());
            }
        }
    }

    #[test]
    fn kernel_times_image(gens in perms(4, 1..=2), images in perms(3, 2..=2)) {
        let g = PermGroup::closure(4, &gens).unwrap();
        let s3 = symmetric(3);
        let imgs: Vec<Perm> = g.generators().iter().enumerate().map(|(i, _)| images[i % 2].clone()).collect();
        if let Ok(f) = Hom::from_images(&g, &s3, &imgs) {
            prop_assert_eq!(f.kernel().order() * f.image().order(), g.order());
            prop_assert!(g.is_normal(&f.kernel()));
        }
    }

    #[test]
    fn automorphisms_preserve_products(gens in perms(5, 1..=2)) {
        let g = PermGroup::closure(5, &gens).unwrap();
        prop_assume!(g.order() <= 60);
        let t = g.table();
        let auts = automorphisms(&g, &B).unwrap();
        prop_assert_eq!(auts.len() % (g.order() / g.center().order()), 0);
        for a in auts.iter().take(8) {
            prop_assert!(a.is_automorphism_of(t));
        }
    }

    #[test]
    fn tuples_are_conjugation_equivariant(w in perm(5)) {
        let a5 = alternating(5);
        let ct = ClassTuple::from_labels(a5.clone(), &["2A", "3A", "5A"]).unwrap();
        let sols: BTreeSet<Vec<Perm>> = tuple_solutions(&ct, &B).unwrap().into_iter().collect();
        let moved: BTreeSet<Vec<Perm>> = sols
            .iter()
            .map(|t| t.iter().map(|x| x.conjugate_by(&w)).collect())
            .collect();
        if a5.contains(&w) {
            prop_assert_eq!(moved, sols);
        } else {
            let ct5b = ClassTuple::from_labels(a5, &["2A", "3A", "5B"]).unwrap();
            let other: BTreeSet<Vec<Perm>> = tuple_solutions(&ct5b, &B).unwrap().into_iter().collect();
            prop_assert_eq!(moved, other);
        }
    }

    #[test]
    fn class_powers_depend_on_exponent_mod_group_exponent(gens in perms(5, 1..=2), m in 1i64..40) {
        let g = PermGroup::closure(5, &gens).unwrap();
        let e = g.exponent() as i64;
        let classes = g.conjugacy_classes();
        let class_of = g.class_index_map(&classes);
        for c in &classes {
            let a = class_of[g.index_of(&c.representative.pow(m)).unwrap()];
            let b = class_of[g.index_of(&c.representative.pow(m + e)).unwrap()];
            prop_assert_eq!(a, b);
        }
    }
}
