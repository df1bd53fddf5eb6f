//! Line-oriented text formats.
//!
//! Instance:
//!
//! ```text
//! c any comment
//! p ce <n> <m>
//! a <v> <alpha>      optional per-vertex addition budget
//! d <v> <delta>      optional per-vertex deletion budget
//! e <u> <v>          one line per edge, m in total
//! ```
//!
//! Solution:
//!
//! ```text
//! s yes <edits> | s no <reason>
//! del <u> <v> | add <u> <v>    in script order
//! k <v1> <v2> ...              one line per cluster
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{BuildError, Edit, EditKind, Graph, NoReason, Overrides, Solution};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `p ce <n> <m>` header")]
    MissingHeader,
    #[error("second header")]
    DuplicateHeader,
    #[error("bad token `{0}`")]
    BadToken(String),
    #[error("expected {expected} fields, found {found}")]
    FieldCount { expected: usize, found: usize },
    #[error("unknown line type `{0}`")]
    UnknownLine(String),
    #[error("vertex {v} out of range for n = {n}")]
    OutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("second budget line for vertex {0}")]
    DuplicateOverride(usize),
    #[error("header promises {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing `s yes <edits>` or `s no <reason>` status line")]
    MissingStatus,
    #[error("status promises {expected} edits, found {found}")]
    EditCount { expected: usize, found: usize },
    #[error("unknown reason `{0}`")]
    BadReason(String),
    #[error("line after a no verdict")]
    TrailingAfterNo,
    #[error("vertex {0} listed in two clusters")]
    RepeatedMember(usize),
    #[error("empty cluster line")]
    EmptyCluster,
}

fn at(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: Graph,
    pub overrides: Overrides,
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>, ParseError> {
    fields
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| at(line, ParseErrorKind::BadToken(t.to_string())))
        })
        .collect()
}

fn expect_fields(line: usize, fields: &[&str], expected: usize) -> Result<(), ParseError> {
    if fields.len() != expected {
        return Err(at(
            line,
            ParseErrorKind::FieldCount {
                expected,
                found: fields.len(),
            },
        ));
    }
    Ok(())
}

/// Lines are numbered from 1. Blank lines are ignored.
pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut overrides = Overrides::default();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = fields.first() else { continue };
        if tag == "c" {
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(at(line, ParseErrorKind::DuplicateHeader));
            }
            expect_fields(line, &fields, 4)?;
            if fields[1] != "ce" {
                return Err(at(line, ParseErrorKind::BadToken(fields[1].to_string())));
            }
            let nm = numbers(line, &fields[2..])?;
            header = Some((nm[0], nm[1], line));
            continue;
        }
        let Some((n, _, _)) = header else {
            return Err(at(line, ParseErrorKind::MissingHeader));
        };
        let check = |v: usize| {
            if v >= n {
                Err(at(line, ParseErrorKind::OutOfRange { v, n }))
            } else {
                Ok(v)
            }
        };
        match tag {
            "e" => {
                expect_fields(line, &fields, 3)?;
                let uv = numbers(line, &fields[1..])?;
                let (u, v) = (check(uv[0])?, check(uv[1])?);
                if u == v {
                    return Err(at(line, ParseErrorKind::SelfLoop(u)));
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(at(line, ParseErrorKind::DuplicateEdge(key.0, key.1)));
                }
                edges.push(key);
            }
            "a" | "d" => {
                expect_fields(line, &fields, 3)?;
                let vals = numbers(line, &fields[1..])?;
                let v = check(vals[0])?;
                let value = u32::try_from(vals[1])
                    .map_err(|_| at(line, ParseErrorKind::BadToken(fields[2].to_string())))?;
                let map = if tag == "a" {
                    &mut overrides.alpha
                } else {
                    &mut overrides.delta
                };
                if map.insert(v, value).is_some() {
                    return Err(at(line, ParseErrorKind::DuplicateOverride(v)));
                }
            }
            other => return Err(at(line, ParseErrorKind::UnknownLine(other.to_string()))),
        }
    }
    let Some((n, m, header_line)) = header else {
        return Err(at(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if edges.len() != m {
        return Err(at(
            header_line,
            ParseErrorKind::EdgeCount {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    let graph = Graph::new(n, edges).map_err(|e| match e {
        BuildError::SelfLoop(v) => at(header_line, ParseErrorKind::SelfLoop(v)),
        other => unreachable!("checked while parsing: {other}"),
    })?;
    Ok(InstanceFile { graph, overrides })
}

/// Canonical form: header, `a` lines, `d` lines, then edges, each sorted.
pub fn serialize_instance(graph: &Graph, overrides: &Overrides) -> String {
    let mut out = format!("p ce {} {}\n", graph.n(), graph.m());
    for (v, x) in &overrides.alpha {
        writeln!(out, "a {v} {x}").unwrap();
    }
    for (v, x) in &overrides.delta {
        writeln!(out, "d {v} {x}").unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn serialize_solution(sol: &Solution) -> String {
    match sol {
        Solution::No { reason } => format!("s no {reason}\n"),
        Solution::Yes { script, clusters } => {
            let mut out = format!("s yes {}\n", script.len());
            for e in script {
                writeln!(out, "{e}").unwrap();
            }
            let mut sorted: Vec<Vec<usize>> = clusters
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.sort_unstable();
                    c
                })
                .collect();
            sorted.sort();
            for c in sorted {
                out.push('k');
                for v in c {
                    write!(out, " {v}").unwrap();
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn parse_solution(text: &str) -> Result<Solution, ParseError> {
    let mut status: Option<Option<usize>> = None;
    let mut reason = None;
    let mut script = Vec::new();
    let mut clusters = Vec::new();
    let mut members = BTreeSet::new();
    let mut status_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = fields.first() else { continue };
        if tag == "c" {
            continue;
        }
        let Some(expected) = status else {
            if tag != "s" {
                return Err(at(line, ParseErrorKind::MissingStatus));
            }
            expect_fields(line, &fields, 3)?;
            status_line = line;
            match fields[1] {
                "yes" => status = Some(Some(numbers(line, &fields[2..])?[0])),
                "no" => {
                    let r: NoReason = fields[2]
                        .parse()
                        .map_err(|_| at(line, ParseErrorKind::BadReason(fields[2].to_string())))?;
                    reason = Some(r);
                    status = Some(None);
                }
                other => return Err(at(line, ParseErrorKind::BadToken(other.to_string()))),
            }
            continue;
        };
        if expected.is_none() {
            return Err(at(line, ParseErrorKind::TrailingAfterNo));
        }
        match tag {
            "del" | "add" => {
                expect_fields(line, &fields, 3)?;
                let uv = numbers(line, &fields[1..])?;
                if uv[0] == uv[1] {
                    return Err(at(line, ParseErrorKind::SelfLoop(uv[0])));
                }
                let kind = if tag == "add" {
                    EditKind::Add
                } else {
                    EditKind::Delete
                };
                script.push(Edit::new(kind, uv[0], uv[1]));
            }
            "k" => {
                let vs = numbers(line, &fields[1..])?;
                if vs.is_empty() {
                    return Err(at(line, ParseErrorKind::EmptyCluster));
                }
                for &v in &vs {
                    if !members.insert(v) {
                        return Err(at(line, ParseErrorKind::RepeatedMember(v)));
                    }
                }
                clusters.push(vs);
            }
            other => return Err(at(line, ParseErrorKind::UnknownLine(other.to_string()))),
        }
    }
    match status {
        None => Err(at(1, ParseErrorKind::MissingStatus)),
        Some(None) => Ok(Solution::No {
            reason: reason.expect("set with status"),
        }),
        Some(Some(expected)) => {
            if expected != script.len() {
                return Err(at(
                    status_line,
                    ParseErrorKind::EditCount {
                        expected,
                        found: script.len(),
                    },
                ));
            }
            Ok(Solution::Yes { script, clusters })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_p3() {
        let f = parse_instance("p ce 3 2\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(f.graph, Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        assert!(f.overrides.alpha.is_empty());
    }

    #[test]
    fn self_loop_names_line() {
        let err = parse_instance("p ce 2 1\ne 0 0\n").unwrap_err();
        assert_eq!(err, at(2, ParseErrorKind::SelfLoop(0)));
        assert_eq!(err.to_string(), "line 2: self-loop at vertex 0");
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("e 0 1\n", 1, ParseErrorKind::MissingHeader),
            ("c hi\n", 1, ParseErrorKind::MissingHeader),
            ("p ce 2 1\ne 0 x\n", 2, ParseErrorKind::BadToken("x".into())),
            (
                "p ce 2 1\ne 0 2\n",
                2,
                ParseErrorKind::OutOfRange { v: 2, n: 2 },
            ),
            (
                "p ce 2 2\ne 0 1\ne 1 0\n",
                3,
                ParseErrorKind::DuplicateEdge(0, 1),
            ),
            (
                "p ce 2 2\ne 0 1\n",
                1,
                ParseErrorKind::EdgeCount {
                    expected: 2,
                    found: 1,
                },
            ),
            (
                "p ce 2 0\na 0 1\na 0 2\n",
                3,
                ParseErrorKind::DuplicateOverride(0),
            ),
            ("p ce 2 0\nq\n", 2, ParseErrorKind::UnknownLine("q".into())),
        ];
        for (text, line, kind) in cases {
            assert_eq!(parse_instance(text), Err(at(line, kind)), "{text:?}");
        }
    }

    #[test]
    fn canonical_instance() {
        let text = "c x\np ce 4 2\nd 3 0\ne 2 3\na 1 2\ne 1 0\n";
        let f = parse_instance(text).unwrap();
        let canon = serialize_instance(&f.graph, &f.overrides);
        assert_eq!(canon, "p ce 4 2\na 1 2\nd 3 0\ne 0 1\ne 2 3\n");
        assert_eq!(parse_instance(&canon).unwrap(), f);
    }

    #[test]
    fn solution_text() {
        let sol = Solution::Yes {
            script: vec![Edit::delete(1, 2)],
            clusters: vec![vec![2], vec![1, 0]],
        };
        let text = serialize_solution(&sol);
        assert_eq!(text, "s yes 1\ndel 1 2\nk 0 1\nk 2\n");
        let back = parse_solution(&text).unwrap();
        assert_eq!(serialize_solution(&back), text);
        let no = Solution::No {
            reason: NoReason::Rule(9),
        };
        assert_eq!(serialize_solution(&no), "s no rule9\n");
        assert_eq!(parse_solution("s no rule9\n").unwrap(), no);
        let empty = Solution::Yes {
            script: vec![],
            clusters: vec![],
        };
        assert_eq!(serialize_solution(&empty), "s yes 0\n");
    }

    #[test]
    fn solution_errors() {
        assert_eq!(
            parse_solution("del 0 1\n"),
            Err(at(1, ParseErrorKind::MissingStatus))
        );
        assert_eq!(
            parse_solution("s yes 2\ndel 0 1\n"),
            Err(at(
                1,
                ParseErrorKind::EditCount {
                    expected: 2,
                    found: 1
                }
            ))
        );
        assert_eq!(
            parse_solution("s yes 0\nk 0 1\nk 1\n"),
            Err(at(3, ParseErrorKind::RepeatedMember(1)))
        );
        assert_eq!(
            parse_solution("s no rule99\n"),
            Err(at(1, ParseErrorKind::BadReason("rule99".into())))
        );
        assert_eq!(
            parse_solution("s no exhausted\nk 0\n"),
            Err(at(2, ParseErrorKind::TrailingAfterNo))
        );
    }
}
