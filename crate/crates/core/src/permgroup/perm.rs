use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored as its image array.
///
/// Products compose right to left: `(a * b).apply(i) == a.apply(b.apply(i))`.
/// The derived ordering is lexicographic on the image array, which is the
/// canonical element order used everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image array {images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint or overlapping cycles; cycles are
    /// applied right to left like any other product.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut p = Perm::identity(degree);
        for c in cycles.iter().rev() {
            let mut seen = std::collections::HashSet::new();
            for &x in c {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} outside 0..{degree}"
                    )));
                }
                if !seen.insert(x) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} repeated in cycle {c:?}"
                    )));
                }
            }
            let mut img: Vec<u32> = (0..degree as u32).collect();
            for (k, &x) in c.iter().enumerate() {
                img[x] = c[(k + 1) % c.len()] as u32;
            }
            p = &Perm { images: img } * &p;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// `by * self * by^-1`.
    pub fn conjugate_by(&self, by: &Perm) -> Perm {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[by.images[i] as usize] = by.images[x as usize];
        }
        Perm { images: out }
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// All cycle lengths including fixed points, largest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 == x)
            .count()
    }

    /// Cycle notation with points shifted by `offset` (0 or 1); `()` for the identity.
    pub fn to_cycle_string(&self, offset: usize) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cs {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + offset).to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }

    /// Same permutation acting on `degree >= self.degree()` points, fixing the new ones.
    pub fn extend_to(&self, degree: usize) -> Perm {
        let mut img = self.images.clone();
        img.extend(self.degree() as u32..degree as u32);
        Perm { images: img }
    }

    /// Acts on `offset..offset+self.degree()` inside a set of `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut img: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            img[offset + i] = offset as u32 + x;
        }
        Perm { images: img }
    }
}

impl Mul<&Perm> for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm {
            images: rhs
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }
}

impl Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        &self * &rhs
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(0))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(0))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
