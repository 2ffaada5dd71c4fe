//! Named fixture groups.

use super::group::PermGroup;
use super::morphism::{is_isomorphic, regular_representation};
use super::perm::Perm;
use super::product::direct_product;
use crate::bounds::Bounds;

fn cyc(d: usize, cs: &[&[usize]]) -> Perm {
    Perm::from_cycles(d, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).expect("valid cycle")
}

fn closure(d: usize, gens: Vec<Perm>) -> PermGroup {
    PermGroup::closure_bounded(d, &gens, usize::MAX).expect("catalog group")
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    let n = n.max(1);
    let c: Vec<usize> = (0..n).collect();
    closure(n, vec![cyc(n, &[&c])])
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cyc(n, &[&[0, 1]]));
    }
    if n >= 3 {
        let c: Vec<usize> = (0..n).collect();
        gens.push(cyc(n, &[&c]));
    }
    closure(n.max(1), gens)
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n).map(|k| cyc(n, &[&[0, 1, k]])).collect();
    closure(n.max(1), gens)
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> PermGroup {
    let c: Vec<usize> = (0..n).collect();
    let refl: Vec<Vec<usize>> = (1..n.div_ceil(2)).map(|i| vec![i, n - i]).collect();
    let r = Perm::from_cycles(n, &refl).expect("valid reflection");
    closure(n, vec![cyc(n, &[&c]), r])
}

/// Klein four group `{1, (0 1)(2 3), (0 2)(1 3), (0 3)(1 2)}`.
pub fn klein_four() -> PermGroup {
    closure(4, vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])])
}

/// Quaternion group in its regular action on 8 points.
pub fn quaternion() -> PermGroup {
    // points 0..8 = 1, i, j, k, -1, -i, -j, -k; left multiplication by i and j
    let i = cyc(8, &[&[0, 1, 4, 5], &[2, 3, 6, 7]]);
    let j = cyc(8, &[&[0, 2, 4, 6], &[1, 7, 5, 3]]);
    closure(8, vec![i, j])
}

/// Elementary abelian group of order `2^k` acting regularly.
pub fn elementary_abelian_2(k: u32) -> PermGroup {
    let c2 = cyclic(2);
    let parts: Vec<&PermGroup> = std::iter::repeat_n(&c2, k as usize).collect();
    direct_product(&parts).group
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "V4", "D8", "D10", "Q8", "C4xC2", "C2^3", "S3",
    "S4", "S5", "S6", "A4", "A5", "A6",
];

/// Looks up a catalog group. `reg:<name>` gives the left-regular image of `<name>`.
pub fn by_name(name: &str) -> Option<PermGroup> {
    if let Some(rest) = name.strip_prefix("reg:") {
        return by_name(rest).map(|g| regular_representation(&g).image);
    }
    let parse_tail = |s: &str| s.parse::<usize>().ok();
    let g = match name {
        "V4" => klein_four(),
        "Q8" => quaternion(),
        "C4xC2" => direct_product(&[&cyclic(4), &cyclic(2)]).group,
        "C2^3" => elementary_abelian_2(3),
        _ => {
            let head = name.chars().next()?;
            let k = parse_tail(&name[head.len_utf8()..])?;
            match head {
                'C' if (1..=64).contains(&k) => cyclic(k),
                'S' if (1..=7).contains(&k) => symmetric(k),
                'A' if (3..=7).contains(&k) => alternating(k),
                'D' if k >= 6 && k % 2 == 0 && k <= 64 => dihedral(k / 2),
                _ => return None,
            }
        }
    };
    Some(g)
}

/// Abstract groups of order `n`, one per isomorphism type, for `n ≤ 8`.
pub fn groups_of_order(n: usize) -> Vec<(&'static str, PermGroup)> {
    match n {
        1 => vec![("C1", cyclic(1))],
        2 => vec![("C2", cyclic(2))],
        3 => vec![("C3", cyclic(3))],
        4 => vec![("C4", cyclic(4)), ("V4", klein_four())],
        5 => vec![("C5", cyclic(5))],
        6 => vec![("C6", cyclic(6)), ("S3", symmetric(3))],
        7 => vec![("C7", cyclic(7))],
        8 => vec![
            ("C8", cyclic(8)),
            ("C4xC2", direct_product(&[&cyclic(4), &cyclic(2)]).group),
            ("C2^3", elementary_abelian_2(3)),
            ("D8", dihedral(4)),
            ("Q8", quaternion()),
        ],
        _ => Vec::new(),
    }
}

/// Name of the first catalog group isomorphic to `g`, if any.
pub fn identify(g: &PermGroup) -> Option<String> {
    let bounds = Bounds::DEFAULT;
    let n = g.order();
    if n <= 8 {
        for (name, h) in groups_of_order(n) {
            if is_isomorphic(g, &h, &bounds).unwrap_or(false) {
                return Some(name.to_string());
            }
        }
        return None;
    }
    let mut cands: Vec<String> = Vec::new();
    if g.is_abelian() && g.elements().iter().any(|p| p.order() as usize == n) {
        return Some(format!("C{n}"));
    }
    if n.is_multiple_of(2) {
        cands.push(format!("D{n}"));
    }
    for k in 3..=6usize {
        let f: usize = (1..=k).product();
        if f == n {
            cands.push(format!("S{k}"));
        }
        if f / 2 == n {
            cands.push(format!("A{k}"));
        }
    }
    for c in cands {
        if let Some(h) = by_name(&c) {
            if h.order() == n && is_isomorphic(g, &h, &bounds).unwrap_or(false) {
                return Some(c);
            }
        }
    }
    None
}

/// Catalog name or a fallback describing the order.
pub fn describe(g: &PermGroup) -> String {
    identify(g).unwrap_or_else(|| format!("group of order {}", g.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let expect = [
            ("C1", 1), ("C6", 6), ("V4", 4), ("D8", 8), ("D10", 10), ("Q8", 8), ("C4xC2", 8),
            ("C2^3", 8), ("S3", 6), ("S4", 24), ("S5", 120), ("S6", 720), ("A4", 12), ("A5", 60),
            ("A6", 360),
        ];
        for (name, n) in expect {
            assert_eq!(by_name(name).unwrap().order(), n, "{name}");
        }
        assert_eq!(by_name("reg:S3").unwrap().degree(), 6);
        assert!(by_name("X9").is_none());
    }

    #[test]
    fn order_eight_types_are_distinct() {
        let gs = groups_of_order(8);
        for i in 0..gs.len() {
            for j in 0..gs.len() {
                let iso = is_isomorphic(&gs[i].1, &gs[j].1, &Bounds::DEFAULT).unwrap();
                assert_eq!(iso, i == j, "{} vs {}", gs[i].0, gs[j].0);
            }
        }
    }

    #[test]
    fn identify_names() {
        assert_eq!(identify(&symmetric(4)).as_deref(), Some("S4"));
        assert_eq!(identify(&regular_representation(&klein_four()).image).as_deref(), Some("V4"));
        assert_eq!(identify(&alternating(5)).as_deref(), Some("A5"));
        assert_eq!(identify(&dihedral(5)).as_deref(), Some("D10"));
    }
}
