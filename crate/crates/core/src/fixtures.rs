//! Ready-made models used by the test suites and the command line tool.

use std::collections::BTreeSet;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::extension::ExtensionModel;
use crate::geometric::ArithmeticModel;
use crate::permgroup::catalog::{self, alternating, cyclic, dihedral, symmetric};
use crate::permgroup::{all_subgroups, direct_product, Hom, PermGroup, Perm, Subgroup};

#[derive(Clone, Debug)]
pub struct NamedModel {
    pub name: String,
    pub model: ExtensionModel,
}

fn cyc(d: usize, cs: &[&[usize]]) -> Perm {
    Perm::from_cycles(d, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
        .expect("fixture permutation")
}

/// Transitive subgroups of `S_d`, one per conjugacy class, for `1 ≤ d ≤ max_degree`,
/// each with the stabilizer of point 0. Ordered by degree, then group order.
pub fn transitive_models(max_degree: usize, bounds: &Bounds) -> Result<Vec<NamedModel>> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let sym = symmetric(d);
        let subs = all_subgroups(&sym, None, bounds)?;
        let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
        let mut reps: Vec<Subgroup> = Vec::new();
        for h in subs.into_iter().filter(|h| h.is_transitive()) {
            if seen.contains(h.elements()) {
                continue;
            }
            for s in sym.elements() {
                let mut conj: Vec<Perm> = h.elements().iter().map(|x| x.conjugate_by(s)).collect();
                conj.sort();
                seen.insert(conj);
            }
            reps.push(h);
        }
        reps.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        for (k, h) in reps.into_iter().enumerate() {
            let name = format!("T{d}.{} {}", k + 1, catalog::describe(&h));
            let model = ExtensionModel::from_point_stabilizer(h.into_group(), 0)?;
            out.push(NamedModel { name, model });
        }
    }
    Ok(out)
}

/// Models whose `Γ_E` is not a point stabilizer of the given action, plus a
/// few Galois models `(G, 1)`.
pub fn extra_models() -> Result<Vec<NamedModel>> {
    let mut out = Vec::new();
    let mut push = |name: &str, gamma: PermGroup, gens: Vec<Perm>| -> Result<()> {
        let sub = gamma.subgroup(&gens)?;
        out.push(NamedModel {
            name: name.to_string(),
            model: ExtensionModel::new(gamma, sub)?,
        });
        Ok(())
    };
    push("S4 / transposition", symmetric(4), vec![cyc(4, &[&[0, 1]])])?;
    push("S4 / double transposition", symmetric(4), vec![cyc(4, &[&[0, 1], &[2, 3]])])?;
    push("A4 / double transposition", alternating(4), vec![cyc(4, &[&[0, 1], &[2, 3]])])?;
    push("A4 / 3-cycle", alternating(4), vec![cyc(4, &[&[0, 1, 2]])])?;
    push("D8 / fixed-point-free reflection", dihedral(4), vec![cyc(4, &[&[0, 1], &[2, 3]])])?;
    push("D12 / reflection", dihedral(6), vec![cyc(6, &[&[1, 5], &[2, 4]])])?;
    push("A5 / 5-cycle", alternating(5), vec![cyc(5, &[&[0, 1, 2, 3, 4]])])?;
    push("A5 / 3-cycle", alternating(5), vec![cyc(5, &[&[0, 1, 2]])])?;
    push("S5 / 5-cycle", symmetric(5), vec![cyc(5, &[&[0, 1, 2, 3, 4]])])?;
    push("S5 / 4-cycle", symmetric(5), vec![cyc(5, &[&[0, 1, 2, 3]])])?;
    push("S3 x S3 / diagonal transposition", direct_product(&[&symmetric(3), &symmetric(3)]).group,
        vec![cyc(6, &[&[0, 1], &[3, 4]])])?;
    for name in ["C6", "S3", "Q8", "D8", "A4"] {
        let g = catalog::by_name(name).expect("catalog name");
        push(&format!("{name} / 1"), g, Vec::new())?;
    }
    Ok(out)
}

/// Transitive models up to degree 6 followed by [`extra_models`].
pub fn model_library(bounds: &Bounds) -> Result<Vec<NamedModel>> {
    let mut v = transitive_models(6, bounds)?;
    v.extend(extra_models()?);
    Ok(v)
}

/// Split arithmetic model with `π = G × q`, `q = ⟨t⟩` cyclic of the order of
/// `psi_generator`, `π̄ = G`, `φ` the first projection and `ψ(t) = psi_generator`.
/// The section `t ↦ (1, t)` is a rational point.
pub fn split_arithmetic_model(g: &PermGroup, psi_generator: &Perm) -> Result<ArithmeticModel> {
    if !g.contains(psi_generator) {
        return Err(Error::NotSubgroup("ψ(t) must lie in G".into()));
    }
    let k = psi_generator.order() as usize;
    let q = cyclic(k);
    let prod = direct_product(&[g, &q]);
    let pi = prod.group.clone();
    let pibar = prod.factor_subgroup(0);
    let quotient = prod.projection(1);
    let phi = prod.projection(0);
    let t = q.generators()[0].clone();
    let section = Hom::from_images(&q, &pi, &[prod.tuple(&[g.identity(), t.clone()])])?;
    let psi = Hom::from_images(&q, g, std::slice::from_ref(psi_generator))?;
    ArithmeticModel::new(pi, pibar, quotient, section, phi, psi)
}

/// Named arithmetic scenarios accepted by [`scenario`].
pub const SCENARIOS: &[&str] = &["s3-transposition", "s3-three-cycle", "s4-four-cycle", "a5-five-cycle"];

pub fn scenario(name: &str) -> Option<ArithmeticModel> {
    let (g, psi) = match name {
        "s3-transposition" => (symmetric(3), cyc(3, &[&[0, 1]])),
        "s3-three-cycle" => (symmetric(3), cyc(3, &[&[0, 1, 2]])),
        "s4-four-cycle" => (symmetric(4), cyc(4, &[&[0, 1, 2, 3]])),
        "a5-five-cycle" => (alternating(5), cyc(5, &[&[0, 1, 2, 3, 4]])),
        _ => return None,
    };
    split_arithmetic_model(&g, &psi).ok()
}
