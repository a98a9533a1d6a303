//! PACE-style `p ocr` instance files and one-id-per-line ordering files.
//!
//! External ids are 1-based with the fixed layer first: fixed vertex at
//! position `k` is `k + 1`, free vertex `v` is `n_fixed + v + 1`.

use std::collections::HashMap;

use thiserror::Error;

use crate::instance::{FixedId, FreeId, Instance, Ordering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected header `p ocr <n_fixed> <n_free> <m>`")]
    MissingHeader { line: usize },
    #[error("line {line}: second header (first at line {first})")]
    DuplicateHeader { line: usize, first: usize },
    #[error("line {line}: malformed header")]
    BadHeader { line: usize },
    #[error("line {line}: expected two vertex ids")]
    BadEdge { line: usize },
    #[error("line {line}: vertex id {id} out of range")]
    IdOutOfRange { line: usize, id: usize },
    #[error("line {line}: header declares {expected} edges, found {found}")]
    EdgeCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate edge (first at line {first})")]
    DuplicateEdge { line: usize, first: usize },
    #[error("line {line}: expected a free vertex id")]
    BadOrderingLine { line: usize },
    #[error("line {line}: {id} is not a free vertex")]
    UnknownId { line: usize, id: usize },
    #[error("line {line}: free vertex {id} repeated")]
    RepeatedId { line: usize, id: usize },
    #[error("line {line}: ordering lists {found} of {expected} free vertices")]
    IncompleteOrdering {
        line: usize,
        expected: usize,
        found: usize,
    },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::MissingHeader { line }
            | ParseError::DuplicateHeader { line, .. }
            | ParseError::BadHeader { line }
            | ParseError::BadEdge { line }
            | ParseError::IdOutOfRange { line, .. }
            | ParseError::EdgeCountMismatch { line, .. }
            | ParseError::DuplicateEdge { line, .. }
            | ParseError::BadOrderingLine { line }
            | ParseError::UnknownId { line, .. }
            | ParseError::RepeatedId { line, .. }
            | ParseError::IncompleteOrdering { line, .. } => line,
        }
    }
}

/// A parsed instance file, comments included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub comments: Vec<String>,
    pub n_fixed: usize,
    pub n_free: usize,
    /// Internal (fixed position, free id) pairs, in file order.
    pub edges: Vec<(FixedId, FreeId)>,
}

impl InstanceDocument {
    pub fn into_instance(self) -> Instance {
        Instance::new(self.n_fixed, self.n_free, self.edges).expect("document was validated on parse")
    }
}

fn comment(line: &str) -> Option<&str> {
    let rest = line.strip_prefix('c')?;
    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

fn numbers(line: &str) -> Option<Vec<usize>> {
    line.split_whitespace().map(|t| t.parse().ok()).collect()
}

pub fn parse_document(text: &str) -> Result<InstanceDocument, ParseError> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen: HashMap<(FixedId, FreeId), usize> = HashMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = comment(trimmed) {
            comments.push(c.to_string());
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            if let Some((_, _, _, first)) = header {
                return Err(ParseError::DuplicateHeader { line, first });
            }
            let mut tokens = rest.split_whitespace();
            if tokens.next() != Some("ocr") {
                return Err(ParseError::BadHeader { line });
            }
            match numbers(&tokens.collect::<Vec<_>>().join(" ")).as_deref() {
                Some(&[a, b, m]) => header = Some((a, b, m, line)),
                _ => return Err(ParseError::BadHeader { line }),
            }
            continue;
        }
        let Some((n_fixed, n_free, m, _)) = header else {
            return Err(ParseError::MissingHeader { line });
        };
        let Some(&[a, b]) = numbers(trimmed).as_deref() else {
            return Err(ParseError::BadEdge { line });
        };
        if a == 0 || a > n_fixed {
            return Err(ParseError::IdOutOfRange { line, id: a });
        }
        if b <= n_fixed || b > n_fixed + n_free {
            return Err(ParseError::IdOutOfRange { line, id: b });
        }
        let edge = (a - 1, b - n_fixed - 1);
        if let Some(&first) = seen.get(&edge) {
            return Err(ParseError::DuplicateEdge { line, first });
        }
        if edges.len() == m {
            return Err(ParseError::EdgeCountMismatch {
                line,
                expected: m,
                found: m + 1,
            });
        }
        seen.insert(edge, line);
        edges.push(edge);
    }

    let Some((n_fixed, n_free, m, _)) = header else {
        return Err(ParseError::MissingHeader {
            line: last_line + 1,
        });
    };
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            line: last_line + 1,
            expected: m,
            found: edges.len(),
        });
    }
    Ok(InstanceDocument {
        comments,
        n_fixed,
        n_free,
        edges,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    parse_document(text).map(InstanceDocument::into_instance)
}

pub fn serialize_instance(inst: &Instance) -> String {
    serialize_instance_with_comments::<&str>(inst, &[])
}

/// Header, then edges sorted by (fixed, free). Comments go first.
pub fn serialize_instance_with_comments<S: AsRef<str>>(inst: &Instance, comments: &[S]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("c ");
        out.push_str(c.as_ref());
        out.push('\n');
    }
    out.push_str(&format!(
        "p ocr {} {} {}\n",
        inst.n_fixed(),
        inst.n_free(),
        inst.edge_count()
    ));
    for &(a, v) in inst.edges() {
        out.push_str(&format!("{} {}\n", a + 1, inst.n_fixed() + v + 1));
    }
    out
}

/// One external free id per line; blank lines and `c` comments are skipped.
pub fn parse_ordering(text: &str, inst: &Instance) -> Result<Ordering, ParseError> {
    let n_fixed = inst.n_fixed();
    let mut order = Vec::with_capacity(inst.n_free());
    let mut seen = vec![false; inst.n_free()];
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || comment(trimmed).is_some() {
            continue;
        }
        let id: usize = trimmed
            .parse()
            .map_err(|_| ParseError::BadOrderingLine { line })?;
        if id <= n_fixed || id > n_fixed + inst.n_free() {
            return Err(ParseError::UnknownId { line, id });
        }
        let v = id - n_fixed - 1;
        if std::mem::replace(&mut seen[v], true) {
            return Err(ParseError::RepeatedId { line, id });
        }
        order.push(v);
    }
    if order.len() != inst.n_free() {
        return Err(ParseError::IncompleteOrdering {
            line: last_line + 1,
            expected: inst.n_free(),
            found: order.len(),
        });
    }
    Ok(Ordering::new(order).expect("checked above"))
}

pub fn serialize_ordering(inst: &Instance, ord: &Ordering) -> String {
    ord.as_slice()
        .iter()
        .map(|&v| format!("{}\n", inst.n_fixed() + v + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_file() {
        let inst = parse_instance("p ocr 2 2 2\n1 3\n2 4\n").unwrap();
        assert_eq!(inst, Instance::new(2, 2, [(0, 0), (1, 1)]).unwrap());
    }

    #[test]
    fn comments_kept_in_document() {
        let doc = parse_document("c note\np ocr 1 1 1\n1 2\n").unwrap();
        assert_eq!(doc.comments, vec!["note".to_string()]);
        assert_eq!(doc.into_instance().edges(), &[(0, 0)]);
    }

    #[test]
    fn whitespace_and_edge_order_tolerated() {
        let a = parse_instance("  p   ocr 2 2 2 \n\n 2\t4\n1 3\n").unwrap();
        let b = parse_instance("p ocr 2 2 2\n1 3\n2 4\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duplicate_edge_line() {
        assert_eq!(
            parse_instance("p ocr 1 1 2\n1 2\n1 2\n").unwrap_err(),
            ParseError::DuplicateEdge { line: 3, first: 2 }
        );
    }

    #[test]
    fn header_errors() {
        assert_eq!(
            parse_instance("1 2\n").unwrap_err(),
            ParseError::MissingHeader { line: 1 }
        );
        assert_eq!(
            parse_instance("c only\n").unwrap_err(),
            ParseError::MissingHeader { line: 2 }
        );
        assert_eq!(
            parse_instance("p ocr 1 1 0\np ocr 1 1 0\n").unwrap_err(),
            ParseError::DuplicateHeader { line: 2, first: 1 }
        );
        assert_eq!(
            parse_instance("p td 1 1\n").unwrap_err(),
            ParseError::BadHeader { line: 1 }
        );
    }

    #[test]
    fn range_and_count_errors() {
        assert_eq!(
            parse_instance("p ocr 2 1 1\n3 3\n").unwrap_err(),
            ParseError::IdOutOfRange { line: 2, id: 3 }
        );
        assert_eq!(
            parse_instance("p ocr 2 1 1\n1 4\n").unwrap_err(),
            ParseError::IdOutOfRange { line: 2, id: 4 }
        );
        assert_eq!(
            parse_instance("p ocr 2 1 2\n1 3\n").unwrap_err(),
            ParseError::EdgeCountMismatch {
                line: 3,
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            parse_instance("p ocr 2 1 1\n1 3\n2 3\n").unwrap_err(),
            ParseError::EdgeCountMismatch {
                line: 3,
                expected: 1,
                found: 2
            }
        );
        assert_eq!(parse_instance("p ocr 2 1 1\n1\n").unwrap_err().line(), 2);
    }

    #[test]
    fn serialize_canonical() {
        assert_eq!(serialize_instance(&Instance::new(0, 0, []).unwrap()), "p ocr 0 0 0\n");
        let inst = Instance::new(2, 2, [(1, 1), (0, 0)]).unwrap();
        assert_eq!(serialize_instance(&inst), "p ocr 2 2 2\n1 3\n2 4\n");
        assert_eq!(
            serialize_instance_with_comments(&inst, &["hi"]),
            "c hi\np ocr 2 2 2\n1 3\n2 4\n"
        );
    }

    #[test]
    fn orderings() {
        let inst = Instance::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(parse_ordering("3\n4\n", &inst).unwrap().as_slice(), &[0, 1]);
        assert_eq!(parse_ordering("4\n3\n", &inst).unwrap().as_slice(), &[1, 0]);
        assert_eq!(
            parse_ordering("3\n3\n", &inst).unwrap_err(),
            ParseError::RepeatedId { line: 2, id: 3 }
        );
        assert_eq!(
            parse_ordering("1\n", &inst).unwrap_err(),
            ParseError::UnknownId { line: 1, id: 1 }
        );
        assert_eq!(
            parse_ordering("3\n", &inst).unwrap_err(),
            ParseError::IncompleteOrdering {
                line: 2,
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            parse_ordering("4\nc crossings: 1\n3\n", &inst).unwrap().as_slice(),
            &[1, 0]
        );
        let ord = Ordering::new(vec![1, 0]).unwrap();
        assert_eq!(serialize_ordering(&inst, &ord), "4\n3\n");
    }
}
