//! Line-oriented text formats.
//!
//! Graphs: one item per line, `node a`, `a -- b`, `a -> b`, `a <-> b` or
//! `a .. b`; `#` starts a comment. Nodes are numbered in order of first
//! mention. The serializer declares every node with `node` lines in id
//! order, then lists edges sorted, so output round-trips exactly.
//!
//! Models: an optional `nodes a,b,c` header fixing the ground set and its
//! order, then one `A | B | C` statement per line with comma-joined labels
//! and `-` for the empty set. Without the header the ground set is the
//! labels in order of first mention. Trivial statements are accepted and
//! dropped.
//!
//! Labels are whitespace-free and may not contain `,`, `|` or `#`, nor be
//! exactly `-`.

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph, NodeSet};
use crate::imodel::{IndependenceModel, Triple};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn check_label(line: usize, l: &str) -> Result<()> {
    if l == "-" || l.contains([',', '|']) {
        return Err(parse_err(line, format!("invalid label {l:?}")));
    }
    Ok(())
}

fn edge_kind(tok: &str) -> Option<EdgeKind> {
    EdgeKind::ALL.into_iter().find(|k| k.token() == tok)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let words: Vec<&str> = content(raw).split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["node", a] => {
                check_label(line, a)?;
                g.add_node(a).map_err(|e| parse_err(line, e.to_string()))?;
            }
            [a, tok, b] => {
                let kind = edge_kind(tok).ok_or_else(|| parse_err(line, format!("unknown edge token {tok:?}")))?;
                check_label(line, a)?;
                check_label(line, b)?;
                g.add_edge_by_label(a, b, kind).map_err(|e| parse_err(line, e.to_string()))?;
            }
            _ => return Err(parse_err(line, format!("expected `node a` or `a TOKEN b`, got {:?}", content(raw)))),
        }
    }
    Ok(g)
}

/// Canonical text: `node` lines in id order, then sorted edge lines.
/// Unoriented edges list the smaller label first.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.nodes() {
        out.push_str(&format!("node {}\n", g.label(v)));
    }
    let mut edges: Vec<String> = g
        .edges()
        .map(|e| {
            let (mut a, mut b) = (g.label(e.u()), g.label(e.v()));
            if e.kind() != EdgeKind::Arrow && b < a {
                std::mem::swap(&mut a, &mut b);
            }
            format!("{a} {} {b}", e.kind().token())
        })
        .collect();
    edges.sort();
    for e in edges {
        out.push_str(&e);
        out.push('\n');
    }
    out
}

fn split_labels(part: &str) -> Vec<&str> {
    let part = part.trim();
    if part == "-" {
        return Vec::new();
    }
    part.split(',').map(str::trim).collect()
}

pub fn parse_model(text: &str) -> Result<IndependenceModel> {
    let mut header: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, [Vec<&str>; 3])> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("nodes") {
            if header.is_some() || !rows.is_empty() {
                return Err(parse_err(line, "`nodes` header must come first and only once"));
            }
            let labels: Vec<String> = split_labels(rest).into_iter().map(String::from).collect();
            for l in &labels {
                if l.is_empty() || l.contains(char::is_whitespace) {
                    return Err(parse_err(line, format!("invalid label {l:?}")));
                }
                check_label(line, l)?;
            }
            header = Some(labels);
            continue;
        }
        let parts: Vec<&str> = body.split('|').collect();
        if parts.len() != 3 {
            return Err(parse_err(line, "expected `A | B | C`"));
        }
        let sets = [split_labels(parts[0]), split_labels(parts[1]), split_labels(parts[2])];
        for l in sets.iter().flatten() {
            if l.is_empty() || l.contains(char::is_whitespace) {
                return Err(parse_err(line, format!("invalid label {l:?}")));
            }
        }
        rows.push((line, sets));
    }
    let labels = match header {
        Some(h) => h,
        None => {
            let mut seen: Vec<String> = Vec::new();
            for l in rows.iter().flat_map(|(_, s)| s.iter().flatten()) {
                if !seen.iter().any(|x| x == l) {
                    seen.push(l.to_string());
                }
            }
            seen
        }
    };
    let mut m = IndependenceModel::empty(&labels).map_err(|e| parse_err(1, e.to_string()))?;
    for (line, [a, b, c]) in rows {
        let set = |s: &[&str]| m.set_of(s).map_err(|e| parse_err(line, e.to_string()));
        let (a, b, c) = (set(&a)?, set(&b)?, set(&c)?);
        let t = Triple::new(a, b, c).map_err(|e| parse_err(line, e.to_string()))?;
        m.insert(t);
    }
    Ok(m)
}

/// `nodes` header in ground order, then statement lines sorted as text.
pub fn serialize_model(m: &IndependenceModel) -> String {
    let mut out = format!("nodes {}\n", if m.labels().is_empty() { "-".to_string() } else { m.labels().join(",") });
    let mut rows: Vec<String> = m.iter().map(|t| m.fmt_triple(&t)).collect();
    rows.sort();
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

/// Statement lines only, sorted; used where the ground set is implied.
pub fn model_lines(m: &IndependenceModel) -> Vec<String> {
    let mut rows: Vec<String> = m.iter().map(|t| m.fmt_triple(&t)).collect();
    rows.sort();
    rows
}

/// Resolves a comma-separated label list (empty string or `-` for `∅`).
pub fn parse_label_set(g: &Graph, list: &str) -> Result<NodeSet> {
    let list = list.trim();
    if list.is_empty() || list == "-" {
        return Ok(NodeSet::empty());
    }
    g.set_of(list.split(',').map(str::trim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let g = parse_graph("a -- b\nb -> c").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        let g = parse_graph("a -- b\na -- b").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(parse_graph("a => b"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn parse_comments_and_nodes() {
        let g = parse_graph("# header\nnode z\n\na <-> b  # arc\nb .. c\n").unwrap();
        assert_eq!(g.labels(), &["z", "a", "b", "c"]);
        assert!(g.has_kind(EdgeKind::Arc) && g.has_kind(EdgeKind::Dotted));
        assert!(matches!(parse_graph("a -- b\na -- a"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("a -- b c"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("a,b -- c"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn graph_round_trip() {
        let text = "b -> a\nc <-> a\nd .. c\nb -- d\nnode e\n";
        let g = parse_graph(text).unwrap();
        let s = serialize_graph(&g);
        assert_eq!(parse_graph(&s).unwrap(), g);
        assert_eq!(serialize_graph(&parse_graph(&s).unwrap()), s);
        assert!(s.contains("a <-> c\n") && s.contains("b -> a\n") && s.contains("c .. d\n"));
    }

    #[test]
    fn model_round_trip() {
        let text = "nodes 1,2,3,4\n1 | 2 | -\n2 | 1 | -\n1 | 3,4 | 2\n- | 1 | 2\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.len(), 3);
        let s = serialize_model(&m);
        assert_eq!(s, "nodes 1,2,3,4\n1 | 2 | -\n1 | 3,4 | 2\n2 | 1 | -\n");
        assert_eq!(parse_model(&s).unwrap(), m);
    }

    #[test]
    fn model_without_header() {
        let m = parse_model("b | a | -\n").unwrap();
        assert_eq!(m.labels(), &["b", "a"]);
        assert!(matches!(parse_model("nodes a\na | b | -"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_model("a | a | -"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_model("a | b"), Err(Error::Parse { line: 1, .. })));
        let empty = parse_model("nodes -\n").unwrap();
        assert_eq!(empty.node_count(), 0);
    }
}
