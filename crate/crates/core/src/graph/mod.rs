//! Graphs with four edge kinds: lines `—`, arrows `→`, arcs `↔` and dotted
//! lines `┈`.
//!
//! A [`Graph`] is a labeled node set plus a canonical edge set. At most one
//! edge of each kind is stored per node pair (per ordered pair for arrows),
//! so two graphs are equal exactly when their labels and edge sets agree.

mod cycles;
mod nodeset;
mod walk;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use nodeset::{NodeId, NodeSet, NodeSetIter, Subsets};
pub use walk::{sections_of, Flank, Section, SectionDecomposition, Walk};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Line,
    Arrow,
    Arc,
    Dotted,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 4] = [EdgeKind::Line, EdgeKind::Arrow, EdgeKind::Arc, EdgeKind::Dotted];

    pub fn is_oriented(self) -> bool {
        self == EdgeKind::Arrow
    }

    /// Token used by the text format.
    pub fn token(self) -> &'static str {
        match self {
            EdgeKind::Line => "--",
            EdgeKind::Arrow => "->",
            EdgeKind::Arc => "<->",
            EdgeKind::Dotted => "..",
        }
    }
}

/// The mark an edge presents at one of its endpoints.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Tail,
    Head,
    LineEnd,
    DottedEnd,
}

/// A canonical edge. Arrows point `u → v`; every other kind has `u < v`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
    kind: EdgeKind,
}

impl Edge {
    /// Builds the canonical edge. Panics on loops; use [`Graph::add_edge`]
    /// for checked construction.
    pub fn new(u: NodeId, v: NodeId, kind: EdgeKind) -> Edge {
        assert_ne!(u, v, "loop edge");
        if kind.is_oriented() || u < v {
            Edge { u, v, kind }
        } else {
            Edge { u: v, v: u, kind }
        }
    }

    pub fn line(u: NodeId, v: NodeId) -> Edge {
        Edge::new(u, v, EdgeKind::Line)
    }

    pub fn arrow(from: NodeId, to: NodeId) -> Edge {
        Edge::new(from, to, EdgeKind::Arrow)
    }

    pub fn arc(u: NodeId, v: NodeId) -> Edge {
        Edge::new(u, v, EdgeKind::Arc)
    }

    pub fn dotted(u: NodeId, v: NodeId) -> Edge {
        Edge::new(u, v, EdgeKind::Dotted)
    }

    pub fn u(&self) -> NodeId {
        self.u
    }

    pub fn v(&self) -> NodeId {
        self.v
    }

    pub fn kind(&self) -> EdgeKind {
        self.kind
    }

    pub fn has_endpoint(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`. `x` must be an endpoint.
    pub fn other(&self, x: NodeId) -> NodeId {
        debug_assert!(self.has_endpoint(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Mark presented at endpoint `x`.
    pub fn mark_at(&self, x: NodeId) -> Mark {
        debug_assert!(self.has_endpoint(x));
        match self.kind {
            EdgeKind::Line => Mark::LineEnd,
            EdgeKind::Dotted => Mark::DottedEnd,
            EdgeKind::Arc => Mark::Head,
            EdgeKind::Arrow if x == self.v => Mark::Head,
            EdgeKind::Arrow => Mark::Tail,
        }
    }

    pub fn has_arrowhead_at(&self, x: NodeId) -> bool {
        self.mark_at(x) == Mark::Head
    }
}

/// Neighbourhood of a node split by edge kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relations {
    /// line neighbours
    pub ne: NodeSet,
    /// parents (arrow sources)
    pub pa: NodeSet,
    /// children (arrow targets)
    pub ch: NodeSet,
    /// spouses (arc partners)
    pub sp: NodeSet,
    /// partners (dotted-line partners)
    pub pt: NodeSet,
}

#[derive(Clone, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: BTreeSet<Edge>,
    adj: Vec<Vec<Edge>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph[")?;
        let mut first = true;
        for v in self.nodes() {
            if self.adj[v.index()].is_empty() {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.label(v))?;
                first = false;
            }
        }
        for e in &self.edges {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.fmt_edge(e))?;
            first = false;
        }
        write!(f, "]")
    }
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    /// Graph on the given labels with no edges. Duplicate labels collapse.
    pub fn with_nodes<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Result<Graph> {
        let mut g = Graph::new();
        for l in labels {
            g.add_node(l.as_ref())?;
        }
        Ok(g)
    }

    /// Graph on nodes labeled `"0".."n-1"` with no edges.
    pub fn with_node_count(n: usize) -> Result<Graph> {
        Graph::with_nodes((0..n).map(|i| i.to_string()))
    }

    /// Adds a node, or returns the existing id for this label.
    pub fn add_node(&mut self, label: &str) -> Result<NodeId> {
        if let Some(&id) = self.index.get(label) {
            return Ok(id);
        }
        if self.labels.len() == NodeSet::MAX_NODES {
            return Err(Error::TooManyNodes(self.labels.len() + 1));
        }
        let id = NodeId::from(self.labels.len());
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.adj.push(Vec::new());
        Ok(id)
    }

    /// Inserts an edge. Returns `false` when an identical edge already
    /// exists (same pair, same kind, same orientation).
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, kind: EdgeKind) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::LoopEdge(self.label(u).to_string()));
        }
        Ok(self.insert_edge(Edge::new(u, v, kind)))
    }

    pub fn add_edge_by_label(&mut self, a: &str, b: &str, kind: EdgeKind) -> Result<bool> {
        if a == b {
            return Err(Error::LoopEdge(a.to_string()));
        }
        let u = self.add_node(a)?;
        let v = self.add_node(b)?;
        self.add_edge(u, v, kind)
    }

    fn insert_edge(&mut self, e: Edge) -> bool {
        if !self.edges.insert(e) {
            return false;
        }
        self.adj[e.u.index()].push(e);
        self.adj[e.v.index()].push(e);
        true
    }

    /// Removes an edge, returning whether it was present.
    pub fn remove_edge(&mut self, e: &Edge) -> bool {
        if !self.edges.remove(e) {
            return false;
        }
        self.adj[e.u.index()].retain(|x| x != e);
        self.adj[e.v.index()].retain(|x| x != e);
        true
    }

    /// Convenience constructor from labeled edges.
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = (&'a str, EdgeKind, &'a str)>) -> Result<Graph> {
        let mut g = Graph::new();
        for (a, k, b) in edges {
            g.add_edge_by_label(a, b, k)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.labels.len()).map(NodeId::from)
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.labels.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    /// Looks a label up, failing with `NodeNotFound`.
    pub fn require(&self, label: &str) -> Result<NodeId> {
        self.node(label).ok_or_else(|| Error::NodeNotFound(label.to_string()))
    }

    /// Resolves a list of labels into a node set.
    pub fn set_of<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<NodeSet> {
        labels.into_iter().map(|l| self.require(l.as_ref())).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Edges incident to `v`, in insertion order.
    pub fn incident(&self, v: NodeId) -> &[Edge] {
        &self.adj[v.index()]
    }

    pub fn edges_between(&self, a: NodeId, b: NodeId) -> impl Iterator<Item = &Edge> + '_ {
        self.adj[a.index()].iter().filter(move |e| e.other(a) == b)
    }

    pub fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.edges_between(a, b).next().is_some()
    }

    pub fn has_kind(&self, kind: EdgeKind) -> bool {
        self.edges.iter().any(|e| e.kind == kind)
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v.index() < self.labels.len() {
            Ok(())
        } else {
            Err(Error::NodeNotFound(format!("#{}", v.0)))
        }
    }

    pub(crate) fn check_set(&self, s: NodeSet) -> Result<()> {
        match (s - self.all_nodes()).first() {
            None => Ok(()),
            Some(v) => Err(Error::NodeNotFound(format!("#{}", v.0))),
        }
    }

    pub fn relations(&self, j: NodeId) -> Result<Relations> {
        self.check_node(j)?;
        let mut r = Relations::default();
        for e in self.incident(j) {
            let o = e.other(j);
            match e.kind {
                EdgeKind::Line => r.ne.insert(o),
                EdgeKind::Arc => r.sp.insert(o),
                EdgeKind::Dotted => r.pt.insert(o),
                EdgeKind::Arrow if e.v == j => r.pa.insert(o),
                EdgeKind::Arrow => r.ch.insert(o),
            };
        }
        Ok(r)
    }

    /// Nodes outside `a` having an anterior walk (lines, dotted lines and
    /// forward arrows) into `a`.
    pub fn anteriors(&self, a: NodeSet) -> Result<NodeSet> {
        self.check_set(a)?;
        Ok(self.reverse_reach(a, |e, to| match e.kind {
            EdgeKind::Line | EdgeKind::Dotted => true,
            EdgeKind::Arrow => e.v == to,
            EdgeKind::Arc => false,
        }) - a)
    }

    /// Nodes outside `a` having a directed walk into `a`.
    pub fn ancestors(&self, a: NodeSet) -> Result<NodeSet> {
        self.check_set(a)?;
        Ok(self.reverse_reach(a, |e, to| e.kind == EdgeKind::Arrow && e.v == to) - a)
    }

    /// `a ∪ ant(a)`.
    pub fn anterior_closure(&self, a: NodeSet) -> Result<NodeSet> {
        Ok(self.anteriors(a)? | a)
    }

    /// `a ∪ an(a)`.
    pub fn ancestral_closure(&self, a: NodeSet) -> Result<NodeSet> {
        Ok(self.ancestors(a)? | a)
    }

    /// True when `ant(a)` is empty.
    pub fn is_anterior_set(&self, a: NodeSet) -> Result<bool> {
        Ok(self.anteriors(a)?.is_empty())
    }

    /// Backward BFS from `targets`; `usable(e, to)` decides whether edge
    /// `e` may be traversed towards `to`.
    fn reverse_reach(&self, targets: NodeSet, usable: impl Fn(&Edge, NodeId) -> bool) -> NodeSet {
        let mut seen = targets;
        let mut queue: VecDeque<NodeId> = targets.iter().collect();
        while let Some(x) = queue.pop_front() {
            for e in self.incident(x) {
                let y = e.other(x);
                if usable(e, x) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Subgraph induced by `d`. Node order (and so ids) follows `self`.
    pub fn induced_subgraph(&self, d: NodeSet) -> Result<Graph> {
        self.check_set(d)?;
        let mut g = Graph::new();
        let mut map = vec![None; self.node_count()];
        for v in d {
            map[v.index()] = Some(g.add_node(self.label(v))?);
        }
        for e in &self.edges {
            if let (Some(u), Some(v)) = (map[e.u.index()], map[e.v.index()]) {
                g.insert_edge(Edge::new(u, v, e.kind));
            }
        }
        Ok(g)
    }

    /// Same graph with nodes reordered to follow `labels`, which must be a
    /// permutation of this graph's labels.
    pub fn relabeled_order<S: AsRef<str>>(&self, labels: &[S]) -> Result<Graph> {
        if labels.len() != self.node_count() {
            return Err(Error::InvalidQuery("node sets differ".into()));
        }
        let mut g = Graph::with_nodes(labels.iter().map(|s| s.as_ref()))?;
        if g.node_count() != self.node_count() {
            return Err(Error::InvalidQuery("duplicate labels".into()));
        }
        let map: Vec<NodeId> = self
            .labels
            .iter()
            .map(|l| g.node(l).ok_or_else(|| Error::InvalidQuery(format!("node sets differ at {l}"))))
            .collect::<Result<_>>()?;
        for e in &self.edges {
            g.insert_edge(Edge::new(map[e.u.index()], map[e.v.index()], e.kind));
        }
        Ok(g)
    }

    /// Copy with every edge of kind `from` replaced by kind `to`.
    pub(crate) fn map_kind(&self, from: EdgeKind, to: EdgeKind) -> Graph {
        let mut g = Graph::with_nodes(self.labels.iter()).expect("labels already valid");
        for e in &self.edges {
            let kind = if e.kind == from { to } else { e.kind };
            g.insert_edge(Edge::new(e.u, e.v, kind));
        }
        g
    }

    pub fn fmt_edge(&self, e: &Edge) -> String {
        format!("{} {} {}", self.label(e.u), e.kind.token(), self.label(e.v))
    }

    /// Labels of `s`, sorted, comma-joined; `-` for the empty set.
    pub fn fmt_set(&self, s: NodeSet) -> String {
        fmt_label_set(s.iter().map(|v| self.label(v)))
    }
}

pub(crate) fn fmt_label_set<'a>(labels: impl Iterator<Item = &'a str>) -> String {
    let mut v: Vec<&str> = labels.collect();
    if v.is_empty() {
        return "-".to_string();
    }
    v.sort_unstable();
    v.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeKind::*;

    fn nonmax() -> Graph {
        Graph::from_edges([
            ("j", Arc, "k"),
            ("k", Line, "p"),
            ("l", Arrow, "p"),
            ("p", Arrow, "q"),
            ("q", Arrow, "j"),
        ])
        .unwrap()
    }

    #[test]
    fn relations_single_arrow() {
        let g = Graph::from_edges([("i", Arrow, "j")]).unwrap();
        let r = g.relations(g.require("j").unwrap()).unwrap();
        assert_eq!(r.pa, g.set_of(["i"]).unwrap());
        assert!(r.ne.is_empty() && r.ch.is_empty() && r.sp.is_empty() && r.pt.is_empty());
    }

    #[test]
    fn relations_nonmax_p() {
        let g = nonmax();
        let r = g.relations(g.require("p").unwrap()).unwrap();
        assert_eq!(r.ne, g.set_of(["k"]).unwrap());
        assert_eq!(r.pa, g.set_of(["l"]).unwrap());
        assert_eq!(r.ch, g.set_of(["q"]).unwrap());
        assert!(r.sp.is_empty() && r.pt.is_empty());
    }

    #[test]
    fn relations_edgeless_and_unknown() {
        let g = Graph::with_nodes(["a", "b"]).unwrap();
        assert_eq!(g.relations(NodeId(1)).unwrap(), Relations::default());
        assert!(matches!(g.relations(NodeId(7)), Err(Error::NodeNotFound(_))));
    }

    #[test]
    fn anterior_walk_example_path() {
        // i — j — k → l → m — n → o ↔ p
        let g = Graph::from_edges([
            ("i", Line, "j"),
            ("j", Line, "k"),
            ("k", Arrow, "l"),
            ("l", Arrow, "m"),
            ("m", Line, "n"),
            ("n", Arrow, "o"),
            ("o", Arc, "p"),
        ])
        .unwrap();
        let n = |s| g.set_of([s]).unwrap();
        let i = g.require("i").unwrap();
        assert!(g.anteriors(n("k")).unwrap().contains(i));
        assert!(g.anteriors(n("o")).unwrap().contains(i));
        assert!(!g.anteriors(n("p")).unwrap().contains(i));
        assert!(g.ancestors(n("m")).unwrap().contains(g.require("k").unwrap()));
        assert!(!g.ancestors(n("k")).unwrap().contains(i));
    }

    #[test]
    fn anteriors_trivial_sets() {
        let g = nonmax();
        assert!(g.anteriors(NodeSet::empty()).unwrap().is_empty());
        assert!(g.anteriors(g.all_nodes()).unwrap().is_empty());
        assert!(g.anteriors(NodeSet::from_bits(1 << 9)).is_err());
    }

    #[test]
    fn anteriors_nonmax() {
        let g = nonmax();
        let a = g.anteriors(g.set_of(["j", "l"]).unwrap()).unwrap();
        assert_eq!(a, g.set_of(["k", "p", "q"]).unwrap());
    }

    #[test]
    fn ancestors_chain_and_arrowless() {
        let g = Graph::from_edges([("i", Arrow, "j"), ("j", Arrow, "k")]).unwrap();
        assert_eq!(g.ancestors(g.set_of(["k"]).unwrap()).unwrap(), g.set_of(["i", "j"]).unwrap());
        let u = Graph::from_edges([("a", Line, "b"), ("b", Arc, "c"), ("c", Dotted, "d")]).unwrap();
        for s in u.all_nodes().subsets() {
            assert!(u.ancestors(s).unwrap().is_empty());
        }
    }

    #[test]
    fn induced_subgraph_cases() {
        let g = nonmax();
        assert_eq!(g.induced_subgraph(g.all_nodes()).unwrap(), g);
        let empty = g.induced_subgraph(NodeSet::empty()).unwrap();
        assert_eq!(empty.node_count(), 0);
        assert_eq!(empty.edge_count(), 0);
        let sub = g.induced_subgraph(g.set_of(["j", "k", "p"]).unwrap()).unwrap();
        let expect = Graph::from_edges([("j", Arc, "k"), ("k", Line, "p")]).unwrap();
        assert_eq!(sub, expect);
    }

    #[test]
    fn canonical_dedup() {
        let mut g = Graph::from_edges([("a", Line, "b")]).unwrap();
        let before = g.clone();
        assert!(!g.add_edge_by_label("b", "a", Line).unwrap());
        assert_eq!(g, before);
        assert!(g.add_edge_by_label("b", "a", Arrow).unwrap());
        assert!(g.add_edge_by_label("a", "b", Arrow).unwrap());
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(g.add_edge_by_label("a", "a", Arc), Err(Error::LoopEdge(_))));
    }

    #[test]
    fn marks() {
        let (a, b) = (NodeId(0), NodeId(1));
        assert_eq!(Edge::arrow(a, b).mark_at(a), Mark::Tail);
        assert_eq!(Edge::arrow(a, b).mark_at(b), Mark::Head);
        assert_eq!(Edge::arc(b, a).mark_at(a), Mark::Head);
        assert_eq!(Edge::line(b, a).mark_at(b), Mark::LineEnd);
        assert_eq!(Edge::dotted(a, b).mark_at(b), Mark::DottedEnd);
        assert_eq!(Edge::line(b, a), Edge::line(a, b));
        assert_ne!(Edge::arrow(b, a), Edge::arrow(a, b));
    }
}
