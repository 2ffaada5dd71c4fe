//! Permutation-group engine: elements, closure, classes, lattices,
//! automorphisms and products.

pub mod catalog;
pub mod group;
pub mod morphism;
pub mod normalizer;
pub mod perm;
pub mod product;
pub mod subgroups;

pub use group::{CayleyTable, ConjClass, PermGroup, Subgroup};
pub use morphism::{
    automorphism_group, automorphisms, find_isomorphism, inner_automorphisms, is_isomorphic,
    outer_order, regular_representation, right_regular_representation, Automorphism, Hom,
    RegularEmbedding,
};
pub use normalizer::{centralizer_in, conjugation_automorphism, symmetric_normalizer};
pub use perm::Perm;
pub use product::{direct_product, semidirect_product, Action, DirectProduct, SemidirectProduct};
pub use subgroups::{all_subgroups, complements, is_complement, normal_complements, overgroups};
