use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::perm::{lcm, Perm};
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// A finite permutation group with all elements materialized in canonical
/// (lexicographic) order.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: OnceLock<Arc<CayleyTable>>,
}

/// Multiplication table on element indices.
#[derive(Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    order: Vec<u32>,
}

impl CayleyTable {
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn order(&self, a: usize) -> usize {
        self.order[a] as usize
    }

    /// Index 0 holds the identity since it is lexicographically smallest.
    pub const IDENTITY: usize = 0;

    pub fn conj(&self, by: usize, x: usize) -> usize {
        self.mul(self.mul(by, x), self.inv(by))
    }

    pub fn power(&self, a: usize, e: usize) -> usize {
        let mut acc = Self::IDENTITY;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Closure of `seed` (already a subgroup, given as a list) together with `gens`.
    /// Returns `None` once more than `cap` elements appear.
    pub fn close(
        &self,
        seed: &FixedBitSet,
        seed_elems: &[usize],
        gens: &[usize],
        cap: usize,
    ) -> Option<(FixedBitSet, Vec<usize>)> {
        let mut set = seed.clone();
        let mut elems = seed_elems.to_vec();
        if elems.is_empty() {
            set.insert(Self::IDENTITY);
            elems.push(Self::IDENTITY);
        }
        let mut i = 0;
        while i < elems.len() {
            let e = elems[i];
            for &g in gens {
                let p = self.mul(e, g);
                if !set.contains(p) {
                    set.insert(p);
                    elems.push(p);
                    if elems.len() > cap {
                        return None;
                    }
                }
            }
            i += 1;
        }
        Some((set, elems))
    }

    pub fn generate(&self, gens: &[usize]) -> (FixedBitSet, Vec<usize>) {
        let empty = FixedBitSet::with_capacity(self.n);
        self.close(&empty, &[], gens, usize::MAX).expect("uncapped closure")
    }
}

impl PermGroup {
    /// Closure of `generators` under multiplication, bounded by [`Bounds::DEFAULT`].
    pub fn closure(degree: usize, generators: &[Perm]) -> Result<PermGroup> {
        Self::closure_bounded(degree, generators, Bounds::DEFAULT.max_elements)
    }

    pub fn closure_bounded(degree: usize, generators: &[Perm], max: usize) -> Result<PermGroup> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for s in &gens {
                let p = s * &elems[i];
                if !seen.contains(&p) {
                    if elems.len() >= max {
                        return Err(Error::BoundExceeded {
                            what: "group closure",
                            needed: elems.len() as u64 + 1,
                            limit: max as u64,
                        });
                    }
                    seen.insert(p.clone());
                    elems.push(p);
                }
            }
            i += 1;
        }
        Ok(Self::from_parts(degree, generators.to_vec(), elems))
    }

    /// Wraps an element list already known to be closed.
    pub(crate) fn from_parts(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
            table: OnceLock::new(),
        }
    }

    /// Checks closure under products before wrapping.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<PermGroup> {
        let set: HashSet<&Perm> = elements.iter().collect();
        if !set.contains(&Perm::identity(degree)) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in &elements {
            if a.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: a.degree(),
                });
            }
            for b in &elements {
                if !set.contains(&(a * b)) {
                    return Err(Error::NotSubgroup("element set is not closed".into()));
                }
            }
        }
        let mut g = Self::from_parts(degree, Vec::new(), elements);
        g.generators = g.canonical_generators();
        Ok(g)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        Self::from_parts(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn contains_all(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.elements.iter().all(|p| self.contains(p))
    }

    /// Greedy generating set: scan elements in canonical order, keep those
    /// not already generated.
    pub fn canonical_generators(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut have: HashSet<Perm> = HashSet::new();
        have.insert(self.identity());
        for p in &self.elements {
            if have.contains(p) {
                continue;
            }
            gens.push(p.clone());
            let mut elems: Vec<Perm> = have.iter().cloned().collect();
            let mut i = 0;
            while i < elems.len() {
                for s in &gens {
                    let q = &elems[i] * s;
                    if have.insert(q.clone()) {
                        elems.push(q);
                    }
                }
                i += 1;
            }
            if have.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// Cayley table, built on first use.
    pub fn table(&self) -> &CayleyTable {
        self.table.get_or_init(|| {
            let n = self.order();
            let mut mul = vec![0u32; n * n];
            for (i, a) in self.elements.iter().enumerate() {
                for (j, b) in self.elements.iter().enumerate() {
                    mul[i * n + j] = self.index[&(a * b)] as u32;
                }
            }
            let inv = self
                .elements
                .iter()
                .map(|a| self.index[&a.inverse()] as u32)
                .collect();
            let order = self.elements.iter().map(|a| a.order() as u32).collect();
            Arc::new(CayleyTable { n, mul, inv, order })
        })
    }

    /// Table access guarded by a size limit so callers cannot allocate
    /// quadratic memory for huge groups.
    pub fn checked_table(&self, limit: usize, what: &'static str) -> Result<&CayleyTable> {
        if self.order() > limit {
            return Err(Error::BoundExceeded {
                what,
                needed: self.order() as u64,
                limit: limit as u64,
            });
        }
        Ok(self.table())
    }

    pub fn exponent(&self) -> u64 {
        self.elements.iter().fold(1, |acc, p| lcm(acc, p.order()))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a * b == b * a))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orb = vec![point];
        let mut i = 0;
        while i < orb.len() {
            for g in &self.generators {
                let y = g.apply(orb[i]);
                if !seen[y] {
                    seen[y] = true;
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        orb
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree
    }

    pub fn point_stabilizer(&self, point: usize) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .filter(|p| p.apply(point) == point)
            .cloned()
            .collect();
        Subgroup::from_closed(self.degree, elems)
    }

    /// Subgroup generated by `gens`, which must all lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<Subgroup> {
        for g in gens {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: g.degree(),
                });
            }
            if !self.contains(g) {
                return Err(Error::NotSubgroup(format!("{g} is not in the group")));
            }
        }
        Ok(Subgroup(PermGroup::closure_bounded(
            self.degree,
            gens,
            usize::MAX,
        )?))
    }

    /// Subgroup from a set of element indices known to be closed.
    pub(crate) fn subgroup_from_indices(&self, idx: &[usize]) -> Subgroup {
        let elems = idx.iter().map(|&i| self.elements[i].clone()).collect();
        Subgroup::from_closed(self.degree, elems)
    }

    pub(crate) fn indices_of(&self, h: &PermGroup) -> Vec<usize> {
        let mut v: Vec<usize> = h.elements.iter().map(|p| self.index[p]).collect();
        v.sort_unstable();
        v
    }

    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup(self.clone())
    }

    pub fn is_subgroup(&self, h: &PermGroup) -> bool {
        self.contains_all(h)
    }

    pub(crate) fn require_subgroup(&self, h: &PermGroup, what: &str) -> Result<()> {
        if h.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: h.degree,
            });
        }
        if !self.contains_all(h) {
            return Err(Error::NotSubgroup(format!("{what} is not contained in the group")));
        }
        Ok(())
    }

    pub fn is_normal(&self, h: &PermGroup) -> bool {
        self.contains_all(h)
            && self
                .generators
                .iter()
                .all(|g| h.generators.iter().all(|x| h.contains(&x.conjugate_by(g))))
    }

    pub fn centralizer(&self, s: &[Perm]) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .filter(|g| s.iter().all(|x| *g * x == x * *g))
            .cloned()
            .collect();
        Subgroup::from_closed(self.degree, elems)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.generators.clone())
    }

    /// Normalizer of `h` inside `self`; `h` need not be a subgroup of `self`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<Subgroup> {
        if h.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: h.degree,
            });
        }
        let elems = self
            .elements
            .iter()
            .filter(|g| h.generators.iter().all(|x| h.contains(&x.conjugate_by(g))))
            .cloned()
            .collect();
        Ok(Subgroup::from_closed(self.degree, elems))
    }

    /// Largest normal subgroup of `self` inside `h`.
    pub fn core(&self, h: &PermGroup) -> Subgroup {
        let elems = h
            .elements
            .iter()
            .filter(|x| {
                self.elements
                    .iter()
                    .all(|g| h.contains(&x.conjugate_by(g)))
            })
            .cloned()
            .collect();
        Subgroup::from_closed(self.degree, elems)
    }

    /// Smallest normal subgroup of `self` containing `s`.
    pub fn normal_closure(&self, s: &[Perm]) -> Subgroup {
        let mut gens: Vec<Perm> = Vec::new();
        let mut seen = HashSet::new();
        for x in s {
            for g in &self.elements {
                let c = x.conjugate_by(g);
                if seen.insert(c.clone()) {
                    gens.push(c);
                }
            }
        }
        Subgroup(
            PermGroup::closure_bounded(self.degree, &gens, usize::MAX)
                .expect("conjugates lie in the group"),
        )
    }

    pub fn intersection(&self, other: &PermGroup) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .filter(|p| other.contains(p))
            .cloned()
            .collect();
        Subgroup::from_closed(self.degree, elems)
    }

    /// Conjugacy classes sorted by (element order, class size, representative).
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = raw.len();
            class_of[start] = cid;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = &self.elements[members[i]];
                for g in &self.generators {
                    let y = self.index[&x.conjugate_by(g)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = cid;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut classes: Vec<ConjClass> = raw
            .into_iter()
            .map(|m| ConjClass {
                element_order: self.elements[m[0]].order(),
                representative: self.elements[m[0]].clone(),
                members: m.iter().map(|&i| self.elements[i].clone()).collect(),
            })
            .collect();
        classes.sort_by(|a, b| {
            (a.element_order, a.members.len(), &a.representative).cmp(&(
                b.element_order,
                b.members.len(),
                &b.representative,
            ))
        });
        classes
    }

    /// Labels such as `1A`, `2A`, `5B`, in the sorted class order.
    pub fn class_labels(classes: &[ConjClass]) -> Vec<String> {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        classes
            .iter()
            .map(|c| {
                let k = counts.entry(c.element_order).or_insert(0);
                let label = format!("{}{}", c.element_order, letter_suffix(*k));
                *k += 1;
                label
            })
            .collect()
    }

    /// Class index of every element (indexed by element index).
    pub fn class_index_map(&self, classes: &[ConjClass]) -> Vec<usize> {
        let mut m = vec![0; self.order()];
        for (ci, c) in classes.iter().enumerate() {
            for p in &c.members {
                m[self.index[p]] = ci;
            }
        }
        m
    }

    pub fn is_simple(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        self.elements
            .iter()
            .filter(|p| !p.is_identity())
            .all(|p| self.normal_closure(std::slice::from_ref(p)).order() == self.order())
    }
}

fn letter_suffix(k: usize) -> String {
    let mut k = k;
    let mut s = Vec::new();
    loop {
        s.push((b'A' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.iter().rev().collect()
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens {:?})",
            self.degree,
            self.order(),
            self.generators
        )
    }
}

/// A subgroup, carried as a group in its own right on the same points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup(PermGroup);

impl Subgroup {
    pub(crate) fn from_closed(degree: usize, elements: Vec<Perm>) -> Subgroup {
        let mut g = PermGroup::from_parts(degree, Vec::new(), elements);
        g.generators = g.canonical_generators();
        Subgroup(g)
    }

    pub fn group(&self) -> &PermGroup {
        &self.0
    }

    pub fn into_group(self) -> PermGroup {
        self.0
    }
}

impl From<PermGroup> for Subgroup {
    fn from(g: PermGroup) -> Self {
        Subgroup(g)
    }
}

impl Deref for Subgroup {
    type Target = PermGroup;
    fn deref(&self) -> &PermGroup {
        &self.0
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical subgroup order: by order, then element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), self.elements()).cmp(&(other.order(), other.elements()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Perm,
    pub members: Vec<Perm>,
    pub element_order: u64,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.members.binary_search(p).is_ok()
    }
}
