use std::collections::{BTreeSet, HashSet};

use pregal_core::extension::{pre_galois_complements, ExtensionModel};
use pregal_core::fixtures::{self, split_arithmetic_model};
use pregal_core::geometric::*;
use pregal_core::permgroup::catalog::{alternating, cyclic, klein_four, symmetric};
use pregal_core::permgroup::*;
use pregal_core::{Bounds, Error};

const B: Bounds = Bounds::DEFAULT;

fn p(d: usize, cs: &[&[usize]]) -> Perm {
    Perm::from_cycles(d, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn closing_tuple(gens: &[Perm]) -> Vec<Perm> {
    let d = gens[0].degree();
    let prod = gens.iter().fold(Perm::identity(d), |acc, g| &acc * g);
    let mut t = gens.to_vec();
    t.push(prod.inverse());
    t
}

#[test]
fn branch_cycles_are_validated() {
    let g = p(4, &[&[0, 1, 2, 3]]);
    assert!(BranchCycleDescription::new(4, vec![g.clone(), g.clone()], vec![]).is_err());
    assert!(BranchCycleDescription::new(4, vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1]])], vec![]).is_err());
    assert!(BranchCycleDescription::new(4, vec![g.clone()], vec!["a".into(), "b".into()]).is_err());
    assert!(BranchCycleDescription::new(4, closing_tuple(&[g]), vec![]).is_ok());
}

#[test]
fn monodromy_of_regular_cyclic_cover() {
    let g = p(4, &[&[0, 1, 2, 3]]);
    let bcd = BranchCycleDescription::new(4, vec![g.clone(), g.inverse()], vec!["0".into(), "∞".into()]).unwrap();
    let r = monodromy_analysis(&bcd, &B).unwrap();
    assert!(r.geometrically_galois);
    assert_eq!(r.constant_extension_bound, 2);
    assert_eq!(r.aut_order, Some(2));
    assert_eq!(r.bound_isomorphic_to_aut, Some(true));
}

#[test]
fn monodromy_of_regular_s3_and_natural_a5() {
    let reg = regular_representation(&symmetric(3));
    let bcd = BranchCycleDescription::new(6, closing_tuple(reg.image.generators()), vec![]).unwrap();
    let r = monodromy_analysis(&bcd, &B).unwrap();
    assert!(r.geometrically_galois);
    assert_eq!(r.constant_extension_bound, 6);
    assert_eq!(r.bound_isomorphic_to_aut, Some(true));

    let bcd = BranchCycleDescription::new(
        5,
        closing_tuple(&[p(5, &[&[0, 1], &[2, 3]]), p(5, &[&[1, 2, 4]])]),
        vec![],
    )
    .unwrap();
    let r = monodromy_analysis(&bcd, &B).unwrap();
    assert_eq!(r.group_order, 60);
    assert!(!r.geometrically_galois);
    assert_eq!(r.normalizer_order, 120);
    assert_eq!(r.aut_order, None);
}

#[test]
fn twisted_s3_model_splits_into_cosets() {
    let m = fixtures::scenario("s3-transposition").unwrap();
    assert!(m.rational_point);
    let tw = twist(&m).unwrap();
    assert!(tw.kernel_identity);
    assert_eq!(tw.kernel.order(), 1);
    let alg = specialize(&m, true).unwrap();
    assert_eq!(alg.degrees(), vec![2, 2, 2]);
    let untwisted = specialize(&m, false).unwrap();
    assert_eq!(untwisted.degrees(), vec![1, 1, 1]);

    // Orbits of right translation by ⟨(0 1)⟩, enumerated directly.
    let g = symmetric(3);
    let h = [Perm::identity(3), p(3, &[&[0, 1]])];
    let cosets: BTreeSet<BTreeSet<usize>> = g
        .elements()
        .iter()
        .map(|x| h.iter().map(|y| g.index_of(&(x * y)).unwrap()).collect())
        .collect();
    let orbits: BTreeSet<BTreeSet<usize>> = alg.components.iter().map(|c| c.orbit.iter().copied().collect()).collect();
    assert_eq!(orbits, cosets);
}

#[test]
fn twisting_is_a_homomorphism_with_kernel_identity() {
    for name in fixtures::SCENARIOS {
        let m = fixtures::scenario(name).unwrap();
        let tw = twist(&m).unwrap();
        assert!(tw.kernel_identity, "{name}");
        let els = m.pi.elements();
        for x in els {
            for y in els {
                assert_eq!(tw.twisted.apply(&(x * y)), &(tw.twisted.apply(x) * tw.twisted.apply(y)));
            }
        }
        let g = m.g();
        let psi_image = m.psi.image().order();
        let alg = specialize(&m, true).unwrap();
        assert_eq!(alg.degrees().iter().sum::<usize>(), g.order(), "{name}");
        assert_eq!(alg.components.len(), g.order() / psi_image, "{name}");
        assert_eq!(specialize(&m, false).unwrap().degrees().iter().sum::<usize>(), g.degree());
    }
}

#[test]
fn surjective_psi_gives_one_component() {
    let g = cyclic(4);
    let m = split_arithmetic_model(&g, &g.generators()[0]).unwrap();
    let alg = specialize(&m, true);
    // C4 has a centre, so the twist is refused.
    assert!(matches!(alg, Err(Error::CenterNotTrivial(4))));
    let s3 = symmetric(3);
    let pi = direct_product(&[&s3, &s3]);
    let q = pi.factors[1].clone();
    let quotient = pi.projection(1);
    let section = Hom::from_fn(&q, &pi.group, |x| pi.tuple(&[Perm::identity(3), x.clone()])).unwrap();
    let phi = pi.projection(0);
    let psi = Hom::from_fn(&q, &s3, |x| x.clone()).unwrap();
    let m = ArithmeticModel::new(pi.group.clone(), pi.factor_subgroup(0), quotient, section, phi, psi).unwrap();
    let alg = specialize(&m, true).unwrap();
    assert_eq!(alg.degrees(), vec![6]);
}

#[test]
fn twist_needs_rational_point() {
    let s3 = symmetric(3);
    let pi = direct_product(&[&s3, &cyclic(2)]);
    let q = pi.factors[1].clone();
    let t = q.generators()[0].clone();
    let tr = p(3, &[&[0, 1]]);
    let section = Hom::from_images(&q, &pi.group, &[pi.tuple(&[tr.clone(), t])]).unwrap();
    let psi = Hom::from_images(&q, &s3, &[tr]).unwrap();
    let m = ArithmeticModel::new(pi.group.clone(), pi.factor_subgroup(0), pi.projection(1), section, pi.projection(0), psi)
        .unwrap();
    assert!(!m.rational_point);
    assert!(matches!(twist(&m), Err(Error::NoRationalPoint)));
}

#[test]
fn specialization_transfer_flags_pre_galois() {
    let m = ExtensionModel::from_point_stabilizer(symmetric(4), 0).unwrap();
    let v4 = pre_galois_complements(&m, &B).unwrap().remove(0);
    let t = specialization_transfer(&m, &v4).unwrap();
    assert!(t.pre_galois && t.potentially_galois && t.factorization_holds);
    assert_eq!(t.degree, 4);
    let c4 = m.gamma.subgroup(&[p(4, &[&[0, 1, 2, 3]])]).unwrap();
    assert!(!specialization_transfer(&m, &c4).unwrap().pre_galois);
    let bad = m.gamma.subgroup(&[p(4, &[&[0, 1]])]).unwrap();
    assert!(matches!(specialization_transfer(&m, &bad), Err(Error::NotAComplement(_))));
}

#[test]
fn powers_of_a5() {
    let a5 = alternating(5);
    let prod = direct_product(&[&a5, &a5]);
    let (f0, f1) = (prod.projection(0), prod.projection(1));
    let r = power_of_simple(&prod.group, &[f0.clone(), f1.clone()], &B).unwrap();
    assert_eq!((r.n, r.image_order), (2, 3600));
    assert!(r.full_product);

    let id = Hom::from_fn(&a5, &a5, |x| x.clone()).unwrap();
    let r = power_of_simple(&a5, &[id.clone(), id.clone()], &B).unwrap();
    assert_eq!((r.n, r.image_order), (1, 60));
    // Direct image of x ↦ (x, x).
    let img = compositum_image(&a5, &[id.clone(), id], &B).unwrap();
    let direct: HashSet<Perm> = a5.elements().iter().map(|x| prod.tuple(&[x.clone(), x.clone()])).collect();
    assert_eq!(img.image.order(), direct.len());

    let f0_twisted = f0.then(&Hom::from_fn(&a5, &a5, |x| x.conjugate_by(&p(5, &[&[0, 1, 2]]))).unwrap()).unwrap();
    let r = power_of_simple(&prod.group, &[f0.clone(), f1, f0_twisted], &B).unwrap();
    assert_eq!(r.n, 2);
    assert_eq!(r.kept, vec![0, 1]);
    assert_eq!(r.image_order, 3600);
}

#[test]
fn power_of_simple_rejects_non_simple_target() {
    let s3 = symmetric(3);
    let id = Hom::from_fn(&s3, &s3, |x| x.clone()).unwrap();
    assert!(matches!(power_of_simple(&s3, &[id], &B), Err(Error::NotSimple(_))));
}

#[test]
fn normalizer_quotient_against_outer_automorphisms() {
    let r = nor_gcen_out(&alternating(6), &B).unwrap();
    assert_eq!(r.quotient_order, 2);
    assert_eq!(r.out_order, 4);
    assert!(r.injective);
    for g in [cyclic(4), symmetric(3), klein_four()] {
        let reg = regular_representation(&g).image;
        let r = nor_gcen_out(&reg, &B).unwrap();
        assert_eq!(r.quotient_order, outer_order(&g, &B).unwrap(), "{g:?}");
        assert!(r.injective);
    }
    for d in [3, 4, 5] {
        let r = nor_gcen_out(&symmetric(d), &B).unwrap();
        assert_eq!(r.quotient_order, 1);
    }
}

#[test]
fn field_of_moduli_chain() {
    let a6 = alternating(6);
    let q = cyclic(2);
    let r = field_of_moduli_group(&q, &[p(6, &[&[0, 1]])], &a6, &B).unwrap();
    assert_eq!(r.quotient_order, 2);
    assert_eq!(r.target_order, 2);
    assert!(r.injective && r.divides);
    assert_eq!(4 % r.target_order, 0);

    let r = field_of_moduli_group(&q, &[Perm::identity(6)], &a6, &B).unwrap();
    assert_eq!(r.quotient_order, 1);
    assert_eq!(r.h.order(), 2);

    let c4 = regular_representation(&cyclic(4)).image;
    let nor = symmetric_normalizer(&c4, &B).unwrap();
    let outside = nor.elements().iter().find(|w| !c4.contains(w) && !w.is_identity()).unwrap().clone();
    let r = field_of_moduli_group(&q, &[outside], &c4, &B).unwrap();
    assert_eq!(r.target_order, 2);
    assert_eq!(r.quotient_order, 2);

    assert!(field_of_moduli_group(&q, &[p(6, &[&[0, 1, 2, 3, 4, 5]])], &alternating(5).clone(), &B).is_err());
}
