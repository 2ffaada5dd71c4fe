//! Covers and their arithmetic models: monodromy, twisting, specialization,
//! composita, and the group of the field of moduli.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::extension::{coset_action, ExtensionModel};
use crate::permgroup::{
    automorphism_group, automorphisms, centralizer_in, conjugation_automorphism, is_isomorphic,
    symmetric_normalizer, Automorphism, Hom, PermGroup, Perm, Subgroup,
};

/// Branch cycles `(g_1, …, g_r)` of a degree-`d` cover: product one,
/// generating a transitive group.
#[derive(Clone, Debug)]
pub struct BranchCycleDescription {
    pub degree: usize,
    pub tuple: Vec<Perm>,
    pub labels: Vec<String>,
    pub group: PermGroup,
}

impl BranchCycleDescription {
    pub fn new(degree: usize, tuple: Vec<Perm>, labels: Vec<String>) -> Result<Self> {
        if !labels.is_empty() && labels.len() != tuple.len() {
            return Err(Error::InvalidModel("one label per branch cycle".into()));
        }
        let mut prod = Perm::identity(degree);
        for g in &tuple {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            prod = &prod * g;
        }
        if !prod.is_identity() {
            return Err(Error::InvalidModel("branch cycles do not multiply to 1".into()));
        }
        let group = PermGroup::closure(degree, &tuple)?;
        if !group.is_transitive() {
            return Err(Error::InvalidModel("monodromy group is not transitive".into()));
        }
        Ok(BranchCycleDescription {
            degree,
            tuple,
            labels,
            group,
        })
    }
}

#[derive(Clone, Debug)]
pub struct MonodromyReport {
    pub degree: usize,
    pub group_order: usize,
    pub geometrically_galois: bool,
    pub normalizer_order: usize,
    /// `|Nor_{S_d}(G)/G|`, bounding the constant extension in the Galois closure.
    pub constant_extension_bound: usize,
    pub aut_order: Option<usize>,
    /// In the regular case, whether `Nor/G ≅ Aut(G)` was confirmed.
    pub bound_isomorphic_to_aut: Option<bool>,
}

pub fn monodromy_analysis(bcd: &BranchCycleDescription, bounds: &Bounds) -> Result<MonodromyReport> {
    let g = &bcd.group;
    let nor = symmetric_normalizer(g, bounds)?;
    let regular = g.is_regular();
    let (aut_order, iso) = if regular {
        let aut = automorphism_group(g, bounds)?;
        let quotient = coset_action(&nor, g)?.image;
        (Some(aut.order()), Some(is_isomorphic(&quotient, &aut, bounds)?))
    } else {
        (None, None)
    };
    Ok(MonodromyReport {
        degree: bcd.degree,
        group_order: g.order(),
        geometrically_galois: regular,
        normalizer_order: nor.order(),
        constant_extension_bound: nor.order() / g.order(),
        aut_order,
        bound_isomorphic_to_aut: iso,
    })
}

/// Finite model of the arithmetic fundamental group of a cover:
/// `1 → π̄ → π → q → 1` with a section `s`, the monodromy `φ : π → G` onto
/// `G ≤ S_d` (surjective already on `π̄`), and a map `ψ : q → G`.
#[derive(Clone, Debug)]
pub struct ArithmeticModel {
    pub pi: PermGroup,
    pub pibar: Subgroup,
    pub q: PermGroup,
    pub quotient: Hom,
    pub section: Hom,
    pub phi: Hom,
    pub psi: Hom,
    /// `φ ∘ s` is trivial: the section comes from a rational point.
    pub rational_point: bool,
}

impl ArithmeticModel {
    pub fn new(
        pi: PermGroup,
        pibar: Subgroup,
        quotient: Hom,
        section: Hom,
        phi: Hom,
        psi: Hom,
    ) -> Result<ArithmeticModel> {
        pi.require_subgroup(&pibar, "π̄")?;
        if quotient.domain != pi || section.codomain != pi || phi.domain != pi {
            return Err(Error::InvalidModel("maps do not start or end at π".into()));
        }
        let q = quotient.codomain.clone();
        if section.domain != q || psi.domain != q {
            return Err(Error::InvalidModel("section and ψ must start at q".into()));
        }
        if psi.codomain != phi.codomain {
            return Err(Error::InvalidModel("φ and ψ must land in the same G".into()));
        }
        if quotient.kernel().elements() != pibar.elements() || !quotient.is_surjective() {
            return Err(Error::InvalidModel("π → q is not onto with kernel π̄".into()));
        }
        let round_trip = q
            .elements()
            .iter()
            .all(|t| quotient.apply(section.apply(t)) == t);
        if !round_trip {
            return Err(Error::InvalidModel("section is not a right inverse".into()));
        }
        let g = &phi.codomain;
        let on_pibar: HashSet<&Perm> = pibar.elements().iter().map(|x| phi.apply(x)).collect();
        if on_pibar.len() != g.order() {
            return Err(Error::NotSurjective("φ restricted to π̄".into()));
        }
        let rational_point = q.elements().iter().all(|t| phi.apply(section.apply(t)).is_identity());
        Ok(ArithmeticModel {
            pi,
            pibar,
            q,
            quotient,
            section,
            phi,
            psi,
            rational_point,
        })
    }

    pub fn g(&self) -> &PermGroup {
        &self.phi.codomain
    }
}

#[derive(Clone, Debug)]
pub struct TwistReport {
    /// `τ̃ : π → Sym(G)`, `τ̃(x)(g) = φ(x) · g · ψ(x̄)⁻¹`, on element indices of `G`.
    pub twisted: Hom,
    pub kernel: Subgroup,
    /// `ker τ̃ = ker φ ∩ ker(ψ ∘ (π → q))`.
    pub kernel_identity: bool,
}

fn twisted_perm(model: &ArithmeticModel, x: &Perm) -> Perm {
    let g = model.g();
    let left = model.phi.apply(x);
    let right = model.psi.apply(model.quotient.apply(x)).inverse();
    Perm::from_images(
        g.elements()
            .iter()
            .map(|y| g.index_of(&(&(left * y) * &right)).expect("closed"))
            .collect(),
    )
    .expect("translation is a bijection")
}

/// Twist of the cover by `ψ`; needs `Z(G) = 1` and a rational point.
pub fn twist(model: &ArithmeticModel) -> Result<TwistReport> {
    let g = model.g();
    let z = g.center().order();
    if z != 1 {
        return Err(Error::CenterNotTrivial(z));
    }
    if !model.rational_point {
        return Err(Error::NoRationalPoint);
    }
    let gens: Vec<Perm> = model
        .pi
        .generators()
        .iter()
        .map(|x| twisted_perm(model, x))
        .collect();
    let image = PermGroup::closure_bounded(g.order(), &gens, usize::MAX)?;
    let twisted = Hom::from_images(&model.pi, &image, &gens)?;
    let kernel = twisted.kernel();
    let kphi = model.phi.kernel();
    let kpsi = model.quotient.then(&model.psi)?.kernel();
    let expected = kphi.intersection(&kpsi);
    Ok(TwistReport {
        kernel_identity: kernel.elements() == expected.elements(),
        twisted,
        kernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleComponent {
    /// Stabilizer in `q` of the orbit's smallest point.
    pub stabilizer: Subgroup,
    /// `[q : stabilizer]`, the orbit length.
    pub degree: usize,
    pub orbit: Vec<usize>,
}

/// Product of fields, one per `q`-orbit on the fibre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleAlgebra {
    pub components: Vec<EtaleComponent>,
}

impl EtaleAlgebra {
    pub fn degrees(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.degree).collect()
    }
}

/// Fibre over the rational point: orbits of `q` acting through `φ ∘ s` on
/// the `d` points, or through `τ̃ ∘ s` on the elements of `G` when twisted.
pub fn specialize(model: &ArithmeticModel, twisted: bool) -> Result<EtaleAlgebra> {
    let q = &model.q;
    let acting: Vec<Perm> = if twisted {
        let tw = twist(model)?;
        q.elements()
            .iter()
            .map(|t| tw.twisted.apply(model.section.apply(t)).clone())
            .collect()
    } else {
        q.elements()
            .iter()
            .map(|t| model.phi.apply(model.section.apply(t)).clone())
            .collect()
    };
    let n = acting[0].degree();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let orbit: BTreeSet<usize> = acting.iter().map(|w| w.apply(start)).collect();
        for &x in &orbit {
            seen[x] = true;
        }
        let stab: Vec<Perm> = q
            .elements()
            .iter()
            .zip(&acting)
            .filter(|(_, w)| w.apply(start) == start)
            .map(|(t, _)| t.clone())
            .collect();
        let stabilizer = q.subgroup(&stab)?;
        components.push(EtaleComponent {
            degree: q.order() / stabilizer.order(),
            stabilizer,
            orbit: orbit.into_iter().collect(),
        });
    }
    Ok(EtaleAlgebra { components })
}

#[derive(Clone, Debug)]
pub struct SpecializationTransfer {
    pub degree: usize,
    pub complement_order: usize,
    /// The specialized extension of the same degree is potentially Galois with group `G`.
    pub potentially_galois: bool,
    /// `G` normal: the specialization stays pre-Galois.
    pub pre_galois: bool,
    /// `Γ = G · Γ_E` holds, so the closure is the compositum with the fixed field of `G`.
    pub factorization_holds: bool,
}

/// What a complement `G` of the generic model says about specializations
/// whose decomposition group is all of `Γ`.
pub fn specialization_transfer(model: &ExtensionModel, g: &Subgroup) -> Result<SpecializationTransfer> {
    model.gamma.require_subgroup(g, "G")?;
    let is_comp = g.order() * model.gamma_e.order() == model.gamma.order()
        && g.intersection(&model.gamma_e).order() == 1;
    if !is_comp {
        return Err(Error::NotAComplement("G is not a complement of Γ_E".into()));
    }
    let product: HashSet<Perm> = g
        .elements()
        .iter()
        .flat_map(|x| model.gamma_e.elements().iter().map(move |y| x * y))
        .collect();
    Ok(SpecializationTransfer {
        degree: model.degree(),
        complement_order: g.order(),
        potentially_galois: true,
        pre_galois: model.gamma.is_normal(g),
        factorization_holds: product.len() == model.gamma.order(),
    })
}

/// Image of `x ↦ (φ_1(x), …, φ_n(x))` on the disjoint union of the codomains' points.
#[derive(Clone, Debug)]
pub struct CompositumImage {
    pub image: PermGroup,
    pub offsets: Vec<usize>,
}

fn tuple_perm(parts: &[&Perm], offsets: &[usize], total: usize) -> Perm {
    let mut img: Vec<usize> = (0..total).collect();
    for (k, p) in parts.iter().enumerate() {
        for i in 0..p.degree() {
            img[offsets[k] + i] = offsets[k] + p.apply(i);
        }
    }
    Perm::from_images(img).expect("componentwise bijection")
}

pub fn compositum_image(pi: &PermGroup, phis: &[Hom], bounds: &Bounds) -> Result<CompositumImage> {
    let mut offsets = Vec::new();
    let mut total = 0;
    for (i, f) in phis.iter().enumerate() {
        if f.domain != *pi {
            return Err(Error::InvalidModel(format!("map {i} does not start at π")));
        }
        if !f.is_surjective() {
            return Err(Error::NotSurjective(format!("map {i}")));
        }
        offsets.push(total);
        total += f.codomain.degree();
    }
    let gens: Vec<Perm> = pi
        .generators()
        .iter()
        .map(|x| {
            let parts: Vec<&Perm> = phis.iter().map(|f| f.apply(x)).collect();
            tuple_perm(&parts, &offsets, total)
        })
        .collect();
    let image = PermGroup::closure_bounded(total, &gens, bounds.max_elements)?;
    Ok(CompositumImage { image, offsets })
}

#[derive(Clone, Debug)]
pub struct PowerOfSimple {
    /// Number of distinct kernels among the maps.
    pub n: usize,
    pub simple_order: usize,
    /// Indices of the maps kept, one per kernel.
    pub kept: Vec<usize>,
    pub image_order: usize,
    /// `image_order == simple_order^n`, i.e. the image is all of `G^n`.
    pub full_product: bool,
}

/// Surjections onto one nonabelian simple group: the compositum image is
/// `G^n` with `n` the number of distinct kernels.
pub fn power_of_simple(pi: &PermGroup, phis: &[Hom], bounds: &Bounds) -> Result<PowerOfSimple> {
    let g = phis
        .first()
        .map(|f| f.codomain.clone())
        .ok_or_else(|| Error::InvalidModel("no maps given".into()))?;
    if phis.iter().any(|f| f.codomain != g) {
        return Err(Error::InvalidModel("maps have different targets".into()));
    }
    if g.is_abelian() || !g.is_simple() {
        return Err(Error::NotSimple("target must be nonabelian simple".into()));
    }
    let mut kernels: Vec<Vec<Perm>> = Vec::new();
    let mut kept = Vec::new();
    for (i, f) in phis.iter().enumerate() {
        if !f.is_surjective() {
            return Err(Error::NotSurjective(format!("map {i}")));
        }
        let k = f.kernel().elements().to_vec();
        if !kernels.contains(&k) {
            kernels.push(k);
            kept.push(i);
        }
    }
    let chosen: Vec<Hom> = kept.iter().map(|&i| phis[i].clone()).collect();
    let img = compositum_image(pi, &chosen, bounds)?;
    let n = kept.len();
    let full = (g.order() as u128).pow(n as u32);
    Ok(PowerOfSimple {
        n,
        simple_order: g.order(),
        kept,
        image_order: img.image.order(),
        full_product: img.image.order() as u128 == full,
    })
}

/// `Nor_{S_d}(G)`, `Cen_{S_d}(G)` and the induced map `Nor/(G·Cen) → Out(G)`.
#[derive(Clone, Debug)]
pub struct NorOutReport {
    pub normalizer_order: usize,
    pub centralizer_order: usize,
    pub g_cen_order: usize,
    /// `|Nor/(G·Cen)|`.
    pub quotient_order: usize,
    pub aut_order: usize,
    pub out_order: usize,
    /// Kernel of `Nor → Out(G)` equals `G·Cen`.
    pub injective: bool,
}

pub fn nor_gcen_out(g: &PermGroup, bounds: &Bounds) -> Result<NorOutReport> {
    let nor = symmetric_normalizer(g, bounds)?;
    let cen = centralizer_in(&nor, g);
    let gens: Vec<Perm> = g.generators().iter().chain(cen.generators()).cloned().collect();
    let gcen = nor.subgroup(&gens)?;
    let auts = automorphisms(g, bounds)?;
    let t = g.table();
    let inner: HashSet<Automorphism> = (0..g.order()).map(|x| Automorphism::inner(t, x)).collect();
    let kernel: BTreeSet<&Perm> = nor
        .elements()
        .iter()
        .filter(|w| {
            inner.contains(&conjugation_automorphism(g, w).expect("w normalizes G"))
        })
        .collect();
    let gcen_set: BTreeSet<&Perm> = gcen.elements().iter().collect();
    Ok(NorOutReport {
        normalizer_order: nor.order(),
        centralizer_order: cen.order(),
        g_cen_order: gcen.order(),
        quotient_order: nor.order() / gcen.order(),
        aut_order: auts.len(),
        out_order: auts.len() / inner.len(),
        injective: kernel == gcen_set,
    })
}

#[derive(Clone, Debug)]
pub struct FieldOfModuli {
    /// Preimage in `q` of `G·Cen/Cen`.
    pub h: Subgroup,
    pub quotient_order: usize,
    /// `|Nor/(G·Cen)|`.
    pub target_order: usize,
    /// `q/h → Nor/(G·Cen)` is injective.
    pub injective: bool,
    pub divides: bool,
}

/// `rep_images` are representatives in `Nor_{S_d}(G)` for the images of
/// `q`'s generators in `Nor/Cen`.
pub fn field_of_moduli_group(
    q: &PermGroup,
    rep_images: &[Perm],
    g: &PermGroup,
    bounds: &Bounds,
) -> Result<FieldOfModuli> {
    let nor = symmetric_normalizer(g, bounds)?;
    let conj = |w: &Perm| conjugation_automorphism(g, w).map(|a| a.to_perm());
    let mut action_elems: Vec<Perm> = nor
        .elements()
        .iter()
        .map(|w| conj(w).expect("normalizer element"))
        .collect();
    action_elems.sort();
    action_elems.dedup();
    let nor_mod_cen = PermGroup::from_elements(g.order(), action_elems)?;
    let imgs = rep_images
        .iter()
        .map(|w| {
            if !nor.contains(w) {
                return Err(Error::NotAHomomorphism(format!("{w} does not normalize G")));
            }
            Ok(conj(w).expect("normalizer element"))
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = Hom::from_images(q, &nor_mod_cen, &imgs)?;
    let inner: HashSet<Perm> = g.elements().iter().map(|x| conj(x).expect("inner")).collect();
    let h_elems: Vec<Perm> = q
        .elements()
        .iter()
        .filter(|t| inner.contains(rep.apply(t)))
        .cloned()
        .collect();
    let h = q.subgroup(&h_elems)?;
    let mut coset_images: HashMap<BTreeSet<Perm>, BTreeSet<Perm>> = HashMap::new();
    for t in q.elements() {
        let coset: BTreeSet<Perm> = h.elements().iter().map(|x| t * x).collect();
        let target: BTreeSet<Perm> = inner
            .iter()
            .map(|i| rep.apply(t) * i)
            .collect();
        coset_images.insert(coset, target);
    }
    let distinct: HashSet<&BTreeSet<Perm>> = coset_images.values().collect();
    let quotient_order = q.order() / h.order();
    let target_order = nor_mod_cen.order() / inner.len();
    Ok(FieldOfModuli {
        injective: distinct.len() == coset_images.len(),
        divides: target_order.is_multiple_of(quotient_order),
        h,
        quotient_order,
        target_order,
    })
}
