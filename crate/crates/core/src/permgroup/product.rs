//! Direct and semidirect products.

use super::group::{PermGroup, Subgroup};
use super::morphism::{Automorphism, Hom};
use super::perm::Perm;
use crate::error::{Error, Result};

/// Direct product acting on the disjoint union of the factors' points.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: PermGroup,
    /// Point offset of each factor.
    pub offsets: Vec<usize>,
    pub factors: Vec<PermGroup>,
}

pub fn direct_product(factors: &[&PermGroup]) -> DirectProduct {
    let total: usize = factors.iter().map(|f| f.degree()).sum();
    let mut offsets = Vec::new();
    let mut gens = Vec::new();
    let mut off = 0;
    for f in factors {
        offsets.push(off);
        for g in f.generators() {
            gens.push(g.shifted(off, total));
        }
        off += f.degree();
    }
    let group = PermGroup::closure_bounded(total, &gens, usize::MAX).expect("product closure");
    DirectProduct {
        group,
        offsets,
        factors: factors.iter().map(|f| (*f).clone()).collect(),
    }
}

impl DirectProduct {
    /// Element with the given component in each factor.
    pub fn tuple(&self, parts: &[Perm]) -> Perm {
        let total = self.group.degree();
        let mut img: Vec<usize> = (0..total).collect();
        for (k, p) in parts.iter().enumerate() {
            for i in 0..p.degree() {
                img[self.offsets[k] + i] = self.offsets[k] + p.apply(i);
            }
        }
        Perm::from_images(img).expect("componentwise bijection")
    }

    pub fn component(&self, x: &Perm, k: usize) -> Perm {
        let off = self.offsets[k];
        let d = self.factors[k].degree();
        Perm::from_images((0..d).map(|i| x.apply(off + i) - off).collect())
            .expect("component of a product element")
    }

    pub fn projection(&self, k: usize) -> Hom {
        Hom::from_fn(&self.group, &self.factors[k], |x| self.component(x, k))
            .expect("projection is a homomorphism")
    }

    pub fn factor_subgroup(&self, k: usize) -> Subgroup {
        let total = self.group.degree();
        let gens: Vec<Perm> = self.factors[k]
            .generators()
            .iter()
            .map(|g| g.shifted(self.offsets[k], total))
            .collect();
        self.group.subgroup(&gens).expect("factor embeds")
    }

    /// `{(x, x, …)}` for equal factors.
    pub fn diagonal(&self) -> Result<Subgroup> {
        let f0 = &self.factors[0];
        if self.factors.iter().any(|f| f != f0) {
            return Err(Error::InvalidModel("diagonal needs equal factors".into()));
        }
        let gens: Vec<Perm> = f0
            .generators()
            .iter()
            .map(|g| self.tuple(&vec![g.clone(); self.factors.len()]))
            .collect();
        self.group.subgroup(&gens)
    }
}

/// Homomorphism `A → Aut(N)`, by element index of `A`.
#[derive(Clone, Debug)]
pub struct Action {
    pub n: PermGroup,
    pub a: PermGroup,
    images: Vec<Automorphism>,
}

impl Action {
    /// Extends automorphisms given for `a`'s generators to all of `a`,
    /// rejecting maps that are not automorphisms or not multiplicative.
    pub fn from_generator_images(
        n: &PermGroup,
        a: &PermGroup,
        gen_images: &[Automorphism],
    ) -> Result<Action> {
        let tn = n.table();
        if gen_images.len() != a.generators().len() {
            return Err(Error::NotAHomomorphism(
                "one automorphism per generator required".into(),
            ));
        }
        for al in gen_images {
            if !al.is_automorphism_of(tn) {
                return Err(Error::NotAHomomorphism(
                    "generator image is not an automorphism".into(),
                ));
            }
        }
        let mut images: Vec<Option<Automorphism>> = vec![None; a.order()];
        let id = a.index_of(&a.identity()).expect("identity");
        images[id] = Some(Automorphism::identity(n.order()));
        let mut queue = vec![id];
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            let cur = images[e].clone().expect("visited");
            for (s, al) in a.generators().iter().zip(gen_images) {
                let p = a.index_of(&(a.element(e) * s)).expect("closed");
                let v = cur.compose(al);
                match &images[p] {
                    None => {
                        images[p] = Some(v);
                        queue.push(p);
                    }
                    Some(w) if *w != v => {
                        return Err(Error::NotAHomomorphism(
                            "action is not multiplicative".into(),
                        ))
                    }
                    _ => {}
                }
            }
            i += 1;
        }
        Ok(Action {
            n: n.clone(),
            a: a.clone(),
            images: images.into_iter().map(|x| x.expect("generated")).collect(),
        })
    }

    pub fn trivial(n: &PermGroup, a: &PermGroup) -> Action {
        Action {
            n: n.clone(),
            a: a.clone(),
            images: vec![Automorphism::identity(n.order()); a.order()],
        }
    }

    /// Conjugation action of `a` on `n`, both inside a common group; `a` must normalize `n`.
    pub fn by_conjugation(n: &PermGroup, a: &PermGroup) -> Result<Action> {
        let imgs = a
            .generators()
            .iter()
            .map(|g| {
                let map = n
                    .elements()
                    .iter()
                    .map(|x| {
                        n.index_of(&x.conjugate_by(g))
                            .ok_or_else(|| Error::NotNormal("a does not normalize n".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Automorphism { map })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator_images(n, a, &imgs)
    }

    pub fn of(&self, a_elem: &Perm) -> &Automorphism {
        &self.images[self.a.index_of(a_elem).expect("element of the acting group")]
    }

    /// `α_a(x)`.
    pub fn act(&self, a_elem: &Perm, x: &Perm) -> Perm {
        let i = self.n.index_of(x).expect("element of n");
        self.n.element(self.of(a_elem).apply(i)).clone()
    }
}

/// `N ⋊ A` in its regular action on the pairs `(n, a)`, with the two factors singled out.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: PermGroup,
    pub normal: Subgroup,
    pub complement: Subgroup,
    action: Action,
}

impl SemidirectProduct {
    fn point(&self, ni: usize, ai: usize) -> usize {
        ni * self.action.a.order() + ai
    }

    /// Left multiplication by `(n, a)` as a permutation of pair-points.
    pub fn element(&self, n: &Perm, a: &Perm) -> Perm {
        pair_perm(&self.action, n, a)
    }

    /// Inverse of [`SemidirectProduct::element`].
    pub fn split(&self, x: &Perm) -> (Perm, Perm) {
        let p = x.apply(self.point(0, 0));
        let na = self.action.a.order();
        (
            self.action.n.element(p / na).clone(),
            self.action.a.element(p % na).clone(),
        )
    }

    pub fn action(&self) -> &Action {
        &self.action
    }
}

fn pair_perm(action: &Action, n: &Perm, a: &Perm) -> Perm {
    let nn = action.n.order();
    let na = action.a.order();
    let al = action.of(a);
    let imgs = (0..nn * na)
        .map(|pt| {
            let (x, b) = (pt / na, pt % na);
            let y = action.n.element(al.apply(x));
            let ny = action.n.index_of(&(n * y)).expect("closed");
            let ab = action.a.index_of(&(a * action.a.element(b))).expect("closed");
            ny * na + ab
        })
        .collect();
    Perm::from_images(imgs).expect("left multiplication is a bijection")
}

pub fn semidirect_product(action: &Action) -> SemidirectProduct {
    let (n, a) = (&action.n, &action.a);
    let n_gens: Vec<Perm> = n
        .generators()
        .iter()
        .map(|g| pair_perm(action, g, &a.identity()))
        .collect();
    let a_gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(|g| pair_perm(action, &n.identity(), g))
        .collect();
    let degree = n.order() * a.order();
    let all: Vec<Perm> = n_gens.iter().chain(&a_gens).cloned().collect();
    let group = PermGroup::closure_bounded(degree, &all, usize::MAX).expect("product closure");
    let normal = group.subgroup(&n_gens).expect("factor embeds");
    let complement = group.subgroup(&a_gens).expect("factor embeds");
    SemidirectProduct {
        group,
        normal,
        complement,
        action: action.clone(),
    }
}
