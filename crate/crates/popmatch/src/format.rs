//! Line-oriented text formats for instances and matchings.
//!
//! ```text
//! # comments run to the end of the line
//! problem: hat
//! left: a1 a2
//! right: h1 h2 h3
//! pref a1: (h1 h2) > h3
//! pref a2: h1 > h2
//! ```
//!
//! A matching is a list of `left right` pairs separated by `;` or newlines.

use std::fmt::Write as _;

use popmatch_core::instance::InstanceError;
use popmatch_core::matching::MatchingError;
use popmatch_core::{Instance, InstanceBuilder, Matching, Side, Variant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid instance: {0}")]
    Invalid(#[from] InstanceError),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("`{0}` and `{1}` are not adjacent")]
    NotAnEdge(String, String),
    #[error("`{0}` appears in two pairs")]
    VertexReused(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses an instance; last resorts are not added.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut builder: Option<InstanceBuilder> = None;
    let mut seen_left = false;
    let mut seen_right = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, "expected `key: value`"))?;
        let key = key.trim();
        let rest = rest.trim();
        let Some(b) = builder.as_mut() else {
            if key != "problem" {
                return Err(syntax(line_no, "the first line must be `problem: ha|hat|smi`"));
            }
            let variant: Variant = rest
                .parse()
                .map_err(|_| syntax(line_no, format!("unknown problem `{rest}`")))?;
            builder = Some(InstanceBuilder::new(variant));
            continue;
        };
        match key {
            "problem" => return Err(syntax(line_no, "duplicate `problem` line")),
            "left" | "right" => {
                let seen = if key == "left" {
                    &mut seen_left
                } else {
                    &mut seen_right
                };
                if std::mem::replace(seen, true) {
                    return Err(syntax(line_no, format!("duplicate `{key}` line")));
                }
                for name in rest.split_whitespace() {
                    if key == "left" {
                        b.left(name);
                    } else {
                        b.right(name);
                    }
                }
            }
            _ => {
                let owner = key
                    .strip_prefix("pref")
                    .filter(|o| o.starts_with(char::is_whitespace))
                    .map(str::trim)
                    .ok_or_else(|| syntax(line_no, format!("unknown key `{key}`")))?;
                let groups = parse_groups(rest).map_err(|m| syntax(line_no, m))?;
                b.pref(owner, groups);
            }
        }
    }
    let b = builder.ok_or_else(|| syntax(1, "missing `problem` line"))?;
    if !seen_left || !seen_right {
        return Err(syntax(text.lines().count().max(1), "missing `left` or `right` line"));
    }
    Ok(b.build()?)
}

fn parse_groups(text: &str) -> Result<Vec<Vec<String>>, String> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('>')
        .map(|part| {
            let part = part.trim();
            let inner = match part.strip_prefix('(') {
                Some(r) => r
                    .strip_suffix(')')
                    .ok_or_else(|| format!("unbalanced parenthesis in `{part}`"))?,
                None if part.contains(char::is_whitespace) => {
                    return Err(format!("`{part}` needs parentheses to form a tie"));
                }
                None => part,
            };
            let names: Vec<String> = inner.split_whitespace().map(String::from).collect();
            if names.is_empty() {
                return Err(String::from("empty preference group"));
            }
            Ok(names)
        })
        .collect()
}

/// Canonical text: vertices in declaration order, one `pref` line per list.
/// Last resorts are left out.
pub fn serialize_instance(inst: &Instance) -> String {
    let inst = inst.without_last_resorts();
    let mut out = format!("problem: {}\n", inst.variant());
    for (label, side) in [("left", Side::Left), ("right", Side::Right)] {
        let names: Vec<&str> = inst
            .vertices()
            .filter(|&v| inst.side(v) == side)
            .map(|v| inst.name(v))
            .collect();
        let _ = writeln!(out, "{label}: {}", names.join(" "));
    }
    for v in inst.vertices() {
        if let Some(p) = inst.prefs(v) {
            let groups: Vec<String> = p
                .groups()
                .iter()
                .map(|g| {
                    let names: Vec<&str> = g.iter().map(|&x| inst.name(x)).collect();
                    if names.len() == 1 {
                        names[0].to_string()
                    } else {
                        format!("({})", names.join(" "))
                    }
                })
                .collect();
            let _ = writeln!(out, "pref {}: {}", inst.name(v), groups.join(" > "));
        }
    }
    out
}

/// Parses a matching of `inst` (which should already be normalized). In
/// HA/HAT, applicants not mentioned are matched to their last resorts.
pub fn parse_matching(inst: &Instance, text: &str) -> Result<Matching, FormatError> {
    let lookup = |name: &str| {
        inst.vertex_by_name(name)
            .ok_or_else(|| FormatError::UnknownVertex(name.to_string()))
    };
    let mut m = Matching::empty(inst.vertex_count());
    for (i, raw) in text.split([';', '\n']).enumerate() {
        let pair = raw.split('#').next().unwrap_or("").trim();
        if pair.is_empty() {
            continue;
        }
        let names: Vec<&str> = pair.split_whitespace().collect();
        let [x, y] = names.as_slice() else {
            return Err(syntax(i + 1, format!("expected `left right`, got `{pair}`")));
        };
        let (a, b) = (lookup(x)?, lookup(y)?);
        let (l, r) = if inst.side(a) == Side::Left { (a, b) } else { (b, a) };
        if inst.edge_id(l, r).is_none() {
            return Err(FormatError::NotAnEdge(x.to_string(), y.to_string()));
        }
        m.insert(l, r).map_err(|e| match e {
            MatchingError::VertexReused(v) => FormatError::VertexReused(inst.name(v).to_string()),
            other => unreachable!("insert only reports reuse, got {other:?}"),
        })?;
    }
    if inst.variant().is_house_allocation() {
        for &a in inst.left() {
            if let (None, Some(l)) = (m.mate(a), inst.last_resort(a)) {
                m.insert(a, l).expect("a last resort only neighbors its applicant");
            }
        }
    }
    Ok(m)
}

/// `left right` pairs joined by `"; "`, ordered by left vertex.
pub fn format_matching(inst: &Instance, m: &Matching) -> String {
    m.pairs()
        .map(|(l, r)| format!("{} {}", inst.name(l), inst.name(r)))
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const I1: &str = "problem: ha\nleft: a1 a2\nright: h1 h2\npref a1: h1 > h2\npref a2: h1 > h2\n";

    #[test]
    fn reads_fixture_text() {
        let inst = parse_instance(I1).unwrap();
        assert_eq!(inst, popmatch_core::instance::fixtures::i1());
        assert_eq!(inst.edge_count(), 4);
        assert_eq!(serialize_instance(&inst), I1);
    }

    #[test]
    fn ties_round_trip() {
        let text = "problem: hat\nleft: a1 a2\nright: h1 h2 h3\npref a1: (h1 h2) > h3\npref a2: h1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(serialize_instance(&inst), text);
        assert_eq!(serialize_instance(&inst.normalized()), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# fixture\n\nproblem: ha  # house allocation\nleft: a1\nright: h1\n\npref a1: h1\n";
        assert!(parse_instance(text).is_ok());
    }

    #[test]
    fn duplicate_entry_is_invalid() {
        let text = "problem: ha\nleft: a1\nright: h1\npref a1: h1 > h1\n";
        assert!(matches!(
            parse_instance(text),
            Err(FormatError::Invalid(InstanceError::DuplicatePrefEntry { .. }))
        ));
    }

    #[test]
    fn asymmetric_smi_is_invalid() {
        let text = "problem: smi\nleft: u1\nright: v1 v2\npref u1: v2\npref v1: u1\npref v2: u1\n";
        assert!(matches!(
            parse_instance(text),
            Err(FormatError::Invalid(InstanceError::AsymmetricNeighborhood { .. }))
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_instance("problem: ha\nleft: a1\nright: h1\npref a1 h1\n").unwrap_err();
        assert_eq!(err, syntax(4, "expected `key: value`"));
        let err = parse_instance("left: a1\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
        let err = parse_instance("problem: ha\nleft: a1\nright: h1 h2\npref a1: h1 h2\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 4, .. }));
        let err = parse_instance("problem: xx\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
    }

    #[test]
    fn matchings_complete_with_last_resorts() {
        let inst = parse_instance(I1).unwrap().normalized();
        let m = parse_matching(&inst, "a1 h1; a2 h2").unwrap();
        assert_eq!(m.len(), 2);
        let m = parse_matching(&inst, "a1 h1").unwrap();
        assert_eq!(format_matching(&inst, &m), "a1 h1; a2 l(a2)");
        assert_eq!(
            parse_matching(&inst, "a1 h1; a1 h2"),
            Err(FormatError::VertexReused("a1".into()))
        );
        assert_eq!(
            parse_matching(&inst, "a1 l(a2)"),
            Err(FormatError::NotAnEdge("a1".into(), "l(a2)".into()))
        );
        assert_eq!(
            parse_matching(&inst, "a1 h9"),
            Err(FormatError::UnknownVertex("h9".into()))
        );
        let m = parse_matching(&inst, "h2 a1\n").unwrap();
        assert!(m.is_matched(inst.vertex_by_name("h2").unwrap()));
    }
}
