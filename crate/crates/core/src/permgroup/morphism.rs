//! Homomorphisms, automorphism enumeration and isomorphism testing.

use std::collections::{BTreeMap, HashSet};

use super::group::{CayleyTable, PermGroup, Subgroup};
use super::perm::Perm;
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// Automorphism of a group, as a permutation of its element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub map: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Automorphism {
        Automorphism {
            map: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Automorphism { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Conjugation `x ↦ g x g⁻¹` by element index `g`.
    pub fn inner(t: &CayleyTable, g: usize) -> Automorphism {
        Automorphism {
            map: (0..t.len()).map(|x| t.conj(g, x)).collect(),
        }
    }

    /// Same map viewed as a permutation of element indices.
    pub fn to_perm(&self) -> Perm {
        Perm::from_images(self.map.clone()).expect("automorphism is a bijection")
    }

    pub fn is_automorphism_of(&self, t: &CayleyTable) -> bool {
        let n = t.len();
        if self.map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &x in &self.map {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| self.map[t.mul(a, b)] == t.mul(self.map[a], self.map[b])))
    }
}

/// Homomorphism between permutation groups, stored as the image index of
/// every domain element.
#[derive(Clone, Debug)]
pub struct Hom {
    pub domain: PermGroup,
    pub codomain: PermGroup,
    images: Vec<usize>,
}

impl Hom {
    /// Extends generator images along the Cayley graph and rejects the map if
    /// two words for the same element disagree.
    pub fn from_generator_images(
        domain: &PermGroup,
        codomain: &PermGroup,
        gens: &[Perm],
        images: &[Perm],
    ) -> Result<Hom> {
        if gens.len() != images.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generators but {} images",
                gens.len(),
                images.len()
            )));
        }
        let img_idx: Vec<usize> = images
            .iter()
            .map(|p| {
                codomain
                    .index_of(p)
                    .ok_or_else(|| Error::NotAHomomorphism(format!("image {p} not in codomain")))
            })
            .collect::<Result<_>>()?;
        for g in gens {
            if !domain.contains(g) {
                return Err(Error::NotAHomomorphism(format!("{g} not in domain")));
            }
        }
        let n = domain.order();
        let mut map = vec![usize::MAX; n];
        let id = domain.index_of(&domain.identity()).expect("identity");
        map[id] = codomain.index_of(&codomain.identity()).expect("identity");
        let mut queue = vec![id];
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            let ep = domain.element(e);
            let ei = codomain.element(map[e]);
            for (s, &si) in gens.iter().zip(&img_idx) {
                let p = domain.index_of(&(ep * s)).expect("closed");
                let v = codomain.index_of(&(ei * codomain.element(si))).expect("closed");
                if map[p] == usize::MAX {
                    map[p] = v;
                    queue.push(p);
                } else if map[p] != v {
                    return Err(Error::NotAHomomorphism(format!(
                        "inconsistent image for {}",
                        domain.element(p)
                    )));
                }
            }
            i += 1;
        }
        if queue.len() != n {
            return Err(Error::NotAHomomorphism(
                "given elements do not generate the domain".into(),
            ));
        }
        Ok(Hom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images: map,
        })
    }

    /// Images for the domain's stored generators.
    pub fn from_images(domain: &PermGroup, codomain: &PermGroup, images: &[Perm]) -> Result<Hom> {
        Self::from_generator_images(domain, codomain, domain.generators(), images)
    }

    /// Wraps a map given on every element; checked exhaustively.
    pub fn from_fn(
        domain: &PermGroup,
        codomain: &PermGroup,
        f: impl Fn(&Perm) -> Perm,
    ) -> Result<Hom> {
        let images: Vec<usize> = domain
            .elements()
            .iter()
            .map(|p| {
                let q = f(p);
                codomain
                    .index_of(&q)
                    .ok_or_else(|| Error::NotAHomomorphism(format!("image {q} not in codomain")))
            })
            .collect::<Result<_>>()?;
        let h = Hom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        };
        for a in domain.generators() {
            for b in domain.elements() {
                if h.apply(&(a * b)) != &(h.apply(a) * h.apply(b)) {
                    return Err(Error::NotAHomomorphism(format!(
                        "multiplicativity fails at {a}, {b}"
                    )));
                }
            }
        }
        Ok(h)
    }

    pub fn apply(&self, p: &Perm) -> &Perm {
        let i = self.domain.index_of(p).expect("element of the domain");
        self.codomain.element(self.images[i])
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn kernel(&self) -> Subgroup {
        let id = self.codomain.index_of(&self.codomain.identity()).expect("identity");
        let idx: Vec<usize> = (0..self.domain.order())
            .filter(|&i| self.images[i] == id)
            .collect();
        self.domain.subgroup_from_indices(&idx)
    }

    pub fn image(&self) -> Subgroup {
        let mut idx: Vec<usize> = self.images.clone();
        idx.sort_unstable();
        idx.dedup();
        self.codomain.subgroup_from_indices(&idx)
    }

    pub fn is_surjective(&self) -> bool {
        self.images.iter().collect::<HashSet<_>>().len() == self.codomain.order()
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().collect::<HashSet<_>>().len() == self.domain.order()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Result<Hom> {
        if other.domain != self.codomain {
            return Err(Error::NotAHomomorphism("codomain/domain mismatch".into()));
        }
        Ok(Hom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel().order() == self.domain.order()
    }
}

/// Per-element invariants preserved by every isomorphism.
fn element_invariants(g: &PermGroup) -> Vec<(usize, usize)> {
    let classes = g.conjugacy_classes();
    let cmap = g.class_index_map(&classes);
    (0..g.order())
        .map(|i| {
            let c = &classes[cmap[i]];
            (c.element_order as usize, c.size())
        })
        .collect()
}

fn invariant_histogram(inv: &[(usize, usize)]) -> BTreeMap<(usize, usize), usize> {
    let mut h = BTreeMap::new();
    for &k in inv {
        *h.entry(k).or_insert(0) += 1;
    }
    h
}

/// Small generating set for the search, preferring elements with few candidate images.
fn search_generators(t: &CayleyTable, inv: &[(usize, usize)], hist: &BTreeMap<(usize, usize), usize>) -> Vec<usize> {
    let n = t.len();
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&i| (hist[&inv[i]], std::cmp::Reverse(inv[i].0), i));
    let mut gens = Vec::new();
    let (mut set, mut elems) = t.generate(&[]);
    while elems.len() < n {
        let mut best: Option<(usize, usize)> = None;
        for &x in order.iter().filter(|&&x| !set.contains(x)) {
            let mut g2 = gens.clone();
            g2.push(x);
            let size = t.close(&set, &elems, &g2, n).expect("uncapped").1.len();
            let better = match best {
                None => true,
                Some((_, s)) => size > s,
            };
            if better {
                best = Some((x, size));
            }
            if size == n {
                break;
            }
        }
        let (x, _) = best.expect("group not yet generated");
        gens.push(x);
        let r = t.close(&set, &elems, &gens, n).expect("uncapped");
        set = r.0;
        elems = r.1;
    }
    gens
}

fn extend(tg: &CayleyTable, th: &CayleyTable, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let n = tg.len();
    let mut map = vec![usize::MAX; n];
    map[CayleyTable::IDENTITY] = CayleyTable::IDENTITY;
    let mut queue = vec![CayleyTable::IDENTITY];
    let mut i = 0;
    while i < queue.len() {
        let e = queue[i];
        for (&s, &si) in gens.iter().zip(imgs) {
            let p = tg.mul(e, s);
            let v = th.mul(map[e], si);
            if map[p] == usize::MAX {
                map[p] = v;
                queue.push(p);
            } else if map[p] != v {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// Enumerates isomorphisms `g → h` by backtracking over generator images
/// with matching (element order, class size). Stops after the first one
/// when `first_only`.
fn isomorphisms(g: &PermGroup, h: &PermGroup, first_only: bool, limit: usize) -> Result<Vec<Vec<usize>>> {
    if g.order() != h.order() {
        return Ok(Vec::new());
    }
    let tg = g.checked_table(limit, "isomorphism search")?;
    let th = h.checked_table(limit, "isomorphism search")?;
    let ig = element_invariants(g);
    let ih = element_invariants(h);
    let hist = invariant_histogram(&ig);
    if hist != invariant_histogram(&ih) {
        return Ok(Vec::new());
    }
    let n = tg.len();
    if n == 1 {
        return Ok(vec![vec![0]]);
    }
    let gens = search_generators(tg, &ig, &hist);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..n).filter(|&y| ih[y] == ig[x]).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    backtrack(tg, th, &gens, &cands, &mut chosen, first_only, &mut out);
    Ok(out)
}

fn backtrack(
    tg: &CayleyTable,
    th: &CayleyTable,
    gens: &[usize],
    cands: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    first_only: bool,
    out: &mut Vec<Vec<usize>>,
) {
    if first_only && !out.is_empty() {
        return;
    }
    let k = chosen.len();
    if k == gens.len() {
        if let Some(map) = extend(tg, th, gens, chosen) {
            let mut seen = vec![false; map.len()];
            if map.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                out.push(map);
            }
        }
        return;
    }
    for &y in &cands[k] {
        let ok = (0..k).all(|j| {
            tg.order(tg.mul(gens[j], gens[k])) == th.order(th.mul(chosen[j], y))
                && tg.order(tg.mul(gens[k], tg.inv(gens[j])))
                    == th.order(th.mul(y, th.inv(chosen[j])))
        });
        if !ok {
            continue;
        }
        chosen.push(y);
        backtrack(tg, th, gens, cands, chosen, first_only, out);
        chosen.pop();
        if first_only && !out.is_empty() {
            return;
        }
    }
}

/// All automorphisms, sorted, identity first.
pub fn automorphisms(g: &PermGroup, bounds: &Bounds) -> Result<Vec<Automorphism>> {
    let mut auts: Vec<Automorphism> = isomorphisms(g, g, false, bounds.max_automorphism_order)?
        .into_iter()
        .map(|map| Automorphism { map })
        .collect();
    auts.sort();
    Ok(auts)
}

pub fn inner_automorphisms(g: &PermGroup) -> Vec<Automorphism> {
    let t = g.table();
    let set: HashSet<Automorphism> = (0..t.len()).map(|x| Automorphism::inner(t, x)).collect();
    let mut v: Vec<Automorphism> = set.into_iter().collect();
    v.sort();
    v
}

/// `|Aut(G)| / |Inn(G)|`.
pub fn outer_order(g: &PermGroup, bounds: &Bounds) -> Result<usize> {
    let aut = automorphisms(g, bounds)?.len();
    let inn = g.order() / g.center().order();
    Ok(aut / inn)
}

/// Automorphism group realized as permutations of the element indices.
pub fn automorphism_group(g: &PermGroup, bounds: &Bounds) -> Result<PermGroup> {
    let auts = automorphisms(g, bounds)?;
    let elems: Vec<Perm> = auts.iter().map(Automorphism::to_perm).collect();
    let mut a = PermGroup::from_parts(g.order(), Vec::new(), elems);
    let gens = a.canonical_generators();
    a = PermGroup::from_parts(g.order(), gens, a.elements().to_vec());
    Ok(a)
}

pub fn is_isomorphic(g: &PermGroup, h: &PermGroup, bounds: &Bounds) -> Result<bool> {
    let limit = bounds.max_subgroup_order;
    Ok(!isomorphisms(g, h, true, limit)?.is_empty())
}

/// One explicit isomorphism `g → h`, if any.
pub fn find_isomorphism(g: &PermGroup, h: &PermGroup, bounds: &Bounds) -> Result<Option<Hom>> {
    let limit = bounds.max_subgroup_order;
    Ok(isomorphisms(g, h, true, limit)?.pop().map(|images| Hom {
        domain: g.clone(),
        codomain: h.clone(),
        images,
    }))
}

/// Left-translation embedding of `g` into the symmetric group on its elements.
#[derive(Clone, Debug)]
pub struct RegularEmbedding {
    pub image: PermGroup,
    /// Image of each element of the source group, by element index.
    pub map: Vec<Perm>,
}

pub fn regular_representation(g: &PermGroup) -> RegularEmbedding {
    let map: Vec<Perm> = g
        .elements()
        .iter()
        .map(|x| {
            let imgs = g
                .elements()
                .iter()
                .map(|y| g.index_of(&(x * y)).expect("closed"))
                .collect();
            Perm::from_images(imgs).expect("translation is a bijection")
        })
        .collect();
    let gens: Vec<Perm> = g
        .generators()
        .iter()
        .map(|p| map[g.index_of(p).expect("generator")].clone())
        .collect();
    let image = PermGroup::from_parts(g.order(), gens, map.clone());
    RegularEmbedding { image, map }
}

/// Right-translation image `x ↦ x g⁻¹`; centralizes the left-regular image.
pub fn right_regular_representation(g: &PermGroup) -> PermGroup {
    let map: Vec<Perm> = g
        .elements()
        .iter()
        .map(|x| {
            let xi = x.inverse();
            let imgs = g
                .elements()
                .iter()
                .map(|y| g.index_of(&(y * &xi)).expect("closed"))
                .collect();
            Perm::from_images(imgs).expect("translation is a bijection")
        })
        .collect();
    let mut r = PermGroup::from_parts(g.order(), Vec::new(), map);
    let gens = r.canonical_generators();
    r = PermGroup::from_parts(g.order(), gens, r.elements().to_vec());
    r
}
