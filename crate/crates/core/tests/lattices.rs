use std::time::Instant;
use pregal_core::permgroup::catalog::{alternating, symmetric};
use pregal_core::permgroup::*;
use pregal_core::Bounds;
const B: Bounds = Bounds::DEFAULT;

#[test]
fn large_lattices() {
    let t = Instant::now();
    assert_eq!(all_subgroups(&alternating(6), None, &B).unwrap().len(), 501);
    eprintln!("A6 lattice {:?}", t.elapsed());
    let t = Instant::now();
    assert!(all_subgroups(&alternating(6), Some(120), &B).unwrap().is_empty());
    eprintln!("A6 order 120 {:?}", t.elapsed());
    let t = Instant::now();
    assert_eq!(all_subgroups(&symmetric(6), None, &B).unwrap().len(), 1455);
    eprintln!("S6 lattice {:?}", t.elapsed());
    let t = Instant::now();
    assert_eq!(outer_order(&alternating(6), &B).unwrap(), 4);
    eprintln!("Out(A6) {:?}", t.elapsed());
}
