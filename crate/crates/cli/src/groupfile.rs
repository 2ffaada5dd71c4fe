//! Line-oriented group files with 1-based cycle notation.
//!
//! ```text
//! # dihedral group of order 8
//! degree 4
//! gen (1 2 3 4)
//! gen (1 3)
//! subgroup reflection
//! gen (2 4)
//! end
//! ```

use pregal_core::permgroup::{PermGroup, Perm};
use pregal_core::Bounds;

use crate::error::CliError;

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
    /// Named subgroup blocks, in file order.
    pub subgroups: Vec<(String, Vec<Perm>)>,
}

impl GroupSpec {
    pub fn group(&self, bounds: &Bounds) -> Result<PermGroup, CliError> {
        Ok(PermGroup::closure_bounded(self.degree, &self.generators, bounds.max_elements)?)
    }

    pub fn subgroup_generators(&self, name: &str) -> Option<&[Perm]> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
    }
}

/// Where a cycle string went wrong, as a character offset into it.
#[derive(Debug, PartialEq, Eq)]
pub enum CycleError {
    Syntax { offset: usize, message: String },
    OutOfRange { offset: usize, point: usize },
    Repeated { offset: usize, point: usize },
}

/// Parses `(1 2 3)(4 5)` (or `()`) into a permutation of `0..degree`.
/// Points may be separated by spaces or commas.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, CycleError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; degree];
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && (chars[*i].1.is_whitespace() || chars[*i].1 == ',') {
            *i += 1;
        }
    };
    let offset_at = |i: usize| chars.get(i).map_or(text.len(), |c| c.0);
    skip_ws(&mut i);
    if i == chars.len() {
        return Err(CycleError::Syntax {
            offset: 0,
            message: "expected a cycle such as (1 2 3) or ()".into(),
        });
    }
    while i < chars.len() {
        if chars[i].1 != '(' {
            return Err(CycleError::Syntax {
                offset: offset_at(i),
                message: format!("expected '(' but found '{}'", chars[i].1),
            });
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            match chars.get(i) {
                None => {
                    return Err(CycleError::Syntax {
                        offset: text.len(),
                        message: "unclosed cycle".into(),
                    })
                }
                Some((_, ')')) => {
                    i += 1;
                    break;
                }
                Some((off, c)) if c.is_ascii_digit() => {
                    let start = *off;
                    let mut v: usize = 0;
                    while let Some((_, d)) = chars.get(i).filter(|(_, d)| d.is_ascii_digit()) {
                        v = v.saturating_mul(10).saturating_add(d.to_digit(10).unwrap_or(0) as usize);
                        i += 1;
                    }
                    if v == 0 || v > degree {
                        return Err(CycleError::OutOfRange { offset: start, point: v });
                    }
                    if used[v - 1] {
                        return Err(CycleError::Repeated { offset: start, point: v });
                    }
                    used[v - 1] = true;
                    cycle.push(v - 1);
                }
                Some((off, c)) => {
                    return Err(CycleError::Syntax {
                        offset: *off,
                        message: format!("unexpected '{c}' in cycle"),
                    })
                }
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        skip_ws(&mut i);
    }
    Ok(Perm::from_cycles(degree, &cycles).expect("cycles validated"))
}

fn located(err: CycleError, line: usize, col: impl Fn(usize) -> usize, degree: usize) -> CliError {
    match err {
        CycleError::Syntax { offset, message } => CliError::Parse {
            line,
            column: col(offset),
            message,
        },
        CycleError::OutOfRange { offset, point } => CliError::DegreeMismatch {
            line,
            column: col(offset),
            point,
            degree,
        },
        CycleError::Repeated { offset, point } => CliError::Parse {
            line,
            column: col(offset),
            message: format!("point {point} appears twice; cycles must be disjoint"),
        },
    }
}

/// Parses a group file. Columns are 1-based character positions.
pub fn parse_group_file(text: &str) -> Result<GroupSpec, CliError> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    let mut subgroups: Vec<(String, Vec<Perm>)> = Vec::new();
    let mut open: Option<(String, Vec<Perm>, usize)> = None;
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let col_of = |byte: usize| content[..byte].chars().count() + 1;
        let (keyword, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed.trim_end(), ""));
        let rest_byte = indent + trimmed.len() - rest.len();
        let err = |byte: usize, message: String| CliError::Parse {
            line,
            column: col_of(byte),
            message,
        };
        match keyword {
            "degree" => {
                if degree.is_some() {
                    return Err(err(indent, "degree given twice".into()));
                }
                let v = rest.trim();
                let n = v
                    .parse::<usize>()
                    .map_err(|_| err(rest_byte, format!("expected a positive integer, found '{v}'")))?;
                if n == 0 {
                    return Err(err(rest_byte, "degree must be positive".into()));
                }
                degree = Some(n);
            }
            "gen" => {
                let d = degree.ok_or_else(|| err(indent, "gen before degree".into()))?;
                let p = parse_cycles(rest, d).map_err(|e| located(e, line, |off| col_of(rest_byte + off), d))?;
                match open.as_mut() {
                    Some((_, gens, _)) => gens.push(p),
                    None => generators.push(p),
                }
            }
            "subgroup" => {
                if degree.is_none() {
                    return Err(err(indent, "subgroup before degree".into()));
                }
                if open.is_some() {
                    return Err(err(indent, "nested subgroup block; close the previous one with 'end'".into()));
                }
                let name = rest.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(rest_byte, "subgroup name must be a single word".into()));
                }
                if subgroups.iter().any(|(n, _)| n == name) {
                    return Err(err(rest_byte, format!("subgroup '{name}' defined twice")));
                }
                open = Some((name.to_string(), Vec::new(), line));
            }
            "end" => {
                if !rest.trim().is_empty() {
                    return Err(err(rest_byte, "unexpected text after 'end'".into()));
                }
                let (name, gens, _) = open
                    .take()
                    .ok_or_else(|| err(indent, "'end' without an open subgroup block".into()))?;
                subgroups.push((name, gens));
            }
            other => {
                return Err(err(indent, format!("unknown keyword '{other}'")));
            }
        }
    }
    if let Some((name, _, line)) = open {
        return Err(CliError::Parse {
            line,
            column: 1,
            message: format!("subgroup '{name}' is never closed with 'end'"),
        });
    }
    let degree = degree.ok_or(CliError::Parse {
        line: last_line.max(1),
        column: 1,
        message: "missing 'degree' line".into(),
    })?;
    Ok(GroupSpec {
        degree,
        generators,
        subgroups,
    })
}

/// Group file text for `g` (and optional named subgroups); parsing it back
/// gives the same group.
pub fn serialize(g: &PermGroup, subgroups: &[(String, Vec<Perm>)]) -> String {
    let mut s = format!("degree {}\n", g.degree());
    for x in g.generators() {
        s.push_str(&format!("gen {}\n", x.to_cycle_string(1)));
    }
    for (name, gens) in subgroups {
        s.push_str(&format!("subgroup {name}\n"));
        for x in gens {
            s.push_str(&format!("gen {}\n", x.to_cycle_string(1)));
        }
        s.push_str("end\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_dihedral() {
        let b = Bounds::DEFAULT;
        let g = parse_group_file("degree 3\ngen (1 2 3)").unwrap().group(&b).unwrap();
        assert_eq!(g.order(), 3);
        let g = parse_group_file("degree 4\ngen (1 2 3 4)\ngen (1 3)").unwrap().group(&b).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn out_of_range_point() {
        let e = parse_group_file("degree 4\ngen (1 5)").unwrap_err();
        assert!(matches!(e, CliError::DegreeMismatch { line: 2, column: 8, point: 5, degree: 4 }), "{e:?}");
    }

    #[test]
    fn whitespace_comments_and_identity() {
        let spec = parse_group_file("  # header\n degree   5 \n gen (  1 ,2  3 )( 4 5)  # a comment\ngen ()\n").unwrap();
        assert_eq!(spec.generators.len(), 2);
        assert_eq!(spec.generators[0].to_cycle_string(1), "(1 2 3)(4 5)");
        assert!(spec.generators[1].is_identity());
    }

    #[test]
    fn subgroup_blocks() {
        let spec = parse_group_file("degree 4\ngen (1 2 3 4)\nsubgroup r\ngen (2 4)\nend\n").unwrap();
        assert_eq!(spec.subgroup_generators("r").unwrap().len(), 1);
        assert!(spec.subgroup_generators("x").is_none());
    }

    #[test]
    fn error_positions() {
        let cases = [
            ("gen (1 2)", 1, 1),
            ("degree 3\ngen (1 2", 2, 9),
            ("degree 3\ngen 1 2)", 2, 5),
            ("degree 3\n  gen (1 x)", 2, 10),
            ("degree 3\ngen (1 2 1)", 2, 10),
            ("degree 3\nfoo", 2, 1),
            ("degree 3\nsubgroup a\ngen (1 2)", 2, 1),
            ("degree 3\nend", 2, 1),
            ("degree zero", 1, 8),
        ];
        for (text, line, column) in cases {
            match parse_group_file(text).unwrap_err() {
                CliError::Parse { line: l, column: c, .. } => assert_eq!((l, c), (line, column), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn serialize_round_trip() {
        let b = Bounds::DEFAULT;
        for name in pregal_core::permgroup::catalog::NAMES {
            let g = pregal_core::permgroup::catalog::by_name(name).unwrap();
            let back = parse_group_file(&serialize(&g, &[])).unwrap().group(&b).unwrap();
            assert_eq!(back, g, "{name}");
        }
    }
}
