//! The family `ℱ_G(A)` of subgroups `H ≤ G` with `HA` a subgroup, and its
//! bijection with the intermediate subgroups `A ≤ H' ≤ Γ`.

use std::collections::HashSet;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::extension::ExtensionModel;
use crate::permgroup::{all_subgroups, automorphisms, overgroups, PermGroup, Perm, Subgroup};

/// The three membership tests for `H ∈ ℱ_G(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    /// `HA = AH` as sets.
    pub permutable: bool,
    /// `|HA| = |H||A|/|H∩A|` and `HA` is closed under products.
    pub product_is_subgroup: bool,
}

impl Membership {
    pub fn agree(&self) -> bool {
        self.permutable == self.product_is_subgroup
    }

    pub fn member(&self) -> bool {
        self.permutable && self.product_is_subgroup
    }
}

fn product_set(h: &PermGroup, a: &PermGroup) -> HashSet<Perm> {
    h.elements()
        .iter()
        .flat_map(|x| a.elements().iter().map(move |y| x * y))
        .collect()
}

pub fn membership(h: &PermGroup, a: &PermGroup) -> Membership {
    let ha = product_set(h, a);
    let ah = product_set(a, h);
    let expected = h.order() * a.order() / h.intersection(a).order();
    let closed = ha.len() == expected
        && h.generators()
            .iter()
            .chain(a.generators())
            .all(|s| ha.iter().all(|x| ha.contains(&(s * x))));
    Membership {
        permutable: ha == ah,
        product_is_subgroup: closed,
    }
}

/// `H ↦ HA`.
pub fn forward(gamma: &PermGroup, h: &PermGroup, a: &PermGroup) -> Result<Subgroup> {
    if !membership(h, a).member() {
        return Err(Error::NotSubgroup("HA is not a subgroup".into()));
    }
    let gens: Vec<Perm> = h.generators().iter().chain(a.generators()).cloned().collect();
    gamma.subgroup(&gens)
}

/// `H' ↦ G ∩ H'`.
pub fn backward(g: &PermGroup, h2: &PermGroup) -> Subgroup {
    g.intersection(h2)
}

fn require_complement(model: &ExtensionModel, g: &Subgroup) -> Result<()> {
    model.gamma.require_subgroup(g, "G")?;
    if g.order() * model.gamma_e.order() != model.gamma.order()
        || g.intersection(&model.gamma_e).order() != 1
    {
        return Err(Error::NotAComplement("G is not a complement of Γ_E".into()));
    }
    Ok(())
}

/// Members of `ℱ_G(Γ_E)`; fails if the membership tests ever disagree.
pub fn family(model: &ExtensionModel, g: &Subgroup, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    require_complement(model, g)?;
    let mut out = Vec::new();
    for h in all_subgroups(g, None, bounds)? {
        let m = membership(&h, &model.gamma_e);
        if !m.agree() {
            return Err(Error::InvalidModel(format!(
                "membership tests disagree for a subgroup of order {}",
                h.order()
            )));
        }
        if m.member() {
            out.push(h);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CorrespondenceRow {
    pub h: Subgroup,
    pub h_gamma_e: Subgroup,
    /// `|H|`, the degree of the field extension cut out by `HΓ_E`.
    pub subdegree: usize,
}

/// One row per member of `ℱ_G(Γ_E)`, after checking that `H ↦ HΓ_E` is a
/// bijection onto the intermediate subgroups with inverse `H' ↦ G ∩ H'`
/// and that it preserves indices.
pub fn correspondence_table(
    model: &ExtensionModel,
    g: &Subgroup,
    bounds: &Bounds,
) -> Result<Vec<CorrespondenceRow>> {
    let fam = family(model, g, bounds)?;
    let a = &model.gamma_e;
    let mut rows = Vec::with_capacity(fam.len());
    for h in fam {
        let ha = forward(&model.gamma, &h, a)?;
        if backward(g, &ha) != h {
            return Err(Error::InvalidModel("G ∩ HA differs from H".into()));
        }
        if g.order() / h.order() != model.gamma.order() / ha.order() {
            return Err(Error::InvalidModel("index not preserved".into()));
        }
        rows.push(CorrespondenceRow {
            subdegree: h.order(),
            h,
            h_gamma_e: ha,
        });
    }
    let mut images: Vec<&Subgroup> = rows.iter().map(|r| &r.h_gamma_e).collect();
    images.sort();
    images.dedup();
    let inter = overgroups(&model.gamma, a, bounds)?;
    if images.len() != rows.len() || images.len() != inter.len() {
        return Err(Error::InvalidModel("H ↦ HΓ_E is not a bijection".into()));
    }
    for h2 in &inter {
        let back = backward(g, h2);
        if forward(&model.gamma, &back, a)? != *h2 {
            return Err(Error::InvalidModel("(G ∩ H')Γ_E differs from H'".into()));
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct Descent {
    /// `HΓ_E`, the subgroup fixing `E^H`.
    pub h_gamma_e: Subgroup,
    /// `E^H/k`: `Γ` acting on the cosets of `HΓ_E`, reduced by the core.
    pub sub_model: ExtensionModel,
    /// Image of `G`, isomorphic to `G/H` and a normal complement in `sub_model`.
    pub quotient_complement: Subgroup,
}

/// For a normal complement `G` and `H` characteristic in `G`, the
/// sub-extension `E^H/k` is pre-Galois with group `G/H`.
pub fn characteristic_descent(
    model: &ExtensionModel,
    g: &Subgroup,
    h: &Subgroup,
    bounds: &Bounds,
) -> Result<Descent> {
    require_complement(model, g)?;
    if !model.gamma.is_normal(g) {
        return Err(Error::NotNormalComplement("G is not normal in Γ".into()));
    }
    g.require_subgroup(h, "H")?;
    let idx = g.indices_of(h);
    for al in automorphisms(g, bounds)? {
        let mut img: Vec<usize> = idx.iter().map(|&i| al.apply(i)).collect();
        img.sort_unstable();
        if img != idx {
            return Err(Error::NotCharacteristic);
        }
    }
    let h_gamma_e = forward(&model.gamma, h, &model.gamma_e)?;
    let (sub_model, act) = ExtensionModel::quotient_by_core(&model.gamma, &h_gamma_e)?;
    let gens: Vec<Perm> = g.generators().iter().map(|x| act.hom.apply(x).clone()).collect();
    let g_bar = sub_model.gamma.subgroup(&gens)?;
    let ok = g_bar.order() * h.order() == g.order()
        && sub_model.gamma.is_normal(&g_bar)
        && g_bar.order() * sub_model.gamma_e.order() == sub_model.gamma.order()
        && g_bar.intersection(&sub_model.gamma_e).order() == 1;
    if !ok {
        return Err(Error::InvalidModel("G/H is not a normal complement of the sub-extension".into()));
    }
    Ok(Descent {
        h_gamma_e,
        sub_model,
        quotient_complement: g_bar,
    })
}

/// `H ↦ HΓ_E ∩ G'` from `ℱ_G(Γ_E)` to `ℱ_{G'}(Γ_E)`.
pub fn cross_correspondence(
    model: &ExtensionModel,
    g: &Subgroup,
    g2: &Subgroup,
    h: &Subgroup,
) -> Result<Subgroup> {
    require_complement(model, g)?;
    require_complement(model, g2)?;
    g.require_subgroup(h, "H")?;
    let ha = forward(&model.gamma, h, &model.gamma_e)?;
    Ok(backward(g2, &ha))
}
