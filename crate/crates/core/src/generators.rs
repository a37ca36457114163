//! Seeded random graphs per class, and exhaustive enumeration of small
//! graphs.
//!
//! Random graphs are built to be in their class by construction: nodes are
//! shuffled and cut into consecutive blocks, arrows only run forward
//! between blocks, and the remaining kinds are placed where the class
//! allows them. Samples are not uniform over a class.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::ClassName;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, Graph, NodeId, NodeSet};

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    /// Target class; `None` places every kind freely.
    pub class: Option<ClassName>,
    /// Probability that each admissible (pair, kind) slot holds an edge.
    pub density: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, class: Option<ClassName>, density: f64, seed: u64) -> GenSpec {
        GenSpec { n, class, density, seed }
    }
}

struct Builder {
    g: Graph,
    rng: ChaCha8Rng,
    p: f64,
}

impl Builder {
    fn coin(&mut self) -> bool {
        self.rng.gen_bool(self.p)
    }

    fn maybe(&mut self, u: NodeId, v: NodeId, kind: EdgeKind) {
        if self.coin() {
            self.g.add_edge(u, v, kind).expect("distinct nodes");
        }
    }

    fn order(&mut self) -> Vec<NodeId> {
        let mut order: Vec<NodeId> = self.g.nodes().collect();
        order.shuffle(&mut self.rng);
        order
    }

    /// Shuffled nodes cut into consecutive non-empty blocks.
    fn blocks(&mut self) -> Vec<Vec<NodeId>> {
        let order = self.order();
        let mut blocks: Vec<Vec<NodeId>> = Vec::new();
        for v in order {
            match blocks.last_mut() {
                Some(b) if self.rng.gen_bool(0.5) => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        blocks
    }

    /// `kind` inside each block (per-block choice), forward arrows between
    /// blocks.
    fn chain(&mut self, kinds: &[EdgeKind]) -> Vec<Vec<NodeId>> {
        let blocks = self.blocks();
        for (bi, b) in blocks.iter().enumerate() {
            let kind = *kinds.choose(&mut self.rng).expect("non-empty kinds");
            for (x, &u) in b.iter().enumerate() {
                for &v in &b[x + 1..] {
                    self.maybe(u, v, kind);
                }
            }
            for later in &blocks[bi + 1..] {
                for &u in b {
                    for &v in later {
                        self.maybe(u, v, EdgeKind::Arrow);
                    }
                }
            }
        }
        blocks
    }

    /// Line blocks with forward arrows, arcs anywhere.
    fn cmg(&mut self, lines: bool) {
        if lines {
            self.chain(&[EdgeKind::Line]);
        } else {
            self.dag();
        }
        self.everywhere(EdgeKind::Arc);
    }

    fn dag(&mut self) {
        let order = self.order();
        for (x, &u) in order.iter().enumerate() {
            for &v in &order[x + 1..] {
                self.maybe(u, v, EdgeKind::Arrow);
            }
        }
    }

    fn everywhere(&mut self, kind: EdgeKind) {
        let n = self.g.node_count();
        for u in 0..n {
            for v in u + 1..n {
                self.maybe(u.into(), v.into(), kind);
            }
        }
    }

    fn drop_edges(&mut self, bad: impl Fn(&Graph, &Edge) -> bool) {
        let doomed: Vec<Edge> = self.g.edges().filter(|e| bad(&self.g, e)).copied().collect();
        for e in doomed {
            self.g.remove_edge(&e);
        }
    }

    /// Removes arrows and arcs whose head lands on a node with a line.
    fn drop_heads_at_lines(&mut self) {
        self.drop_edges(|g, e| {
            let on_line = |v: NodeId| g.incident(v).iter().any(|f| f.kind() == EdgeKind::Line);
            e.kind() != EdgeKind::Line && [e.u(), e.v()].into_iter().any(|v| e.has_arrowhead_at(v) && on_line(v))
        });
    }

    /// Removes arcs joining a node to a member of `rel` of the other end.
    fn drop_arcs_by(&mut self, rel: fn(&Graph, NodeSet) -> Result<NodeSet>) {
        self.drop_edges(|g, e| {
            e.kind() == EdgeKind::Arc
                && (rel(g, NodeSet::singleton(e.u())).unwrap().contains(e.v())
                    || rel(g, NodeSet::singleton(e.v())).unwrap().contains(e.u()))
        });
    }

    /// Blocks split into groups; dotted lines within groups, arcs between
    /// groups of one block, forward arrows between blocks; then dotted
    /// lines are added until every node with a spouse has pairwise joined
    /// partners.
    fn mamp(&mut self) {
        let blocks = self.blocks();
        for (bi, b) in blocks.iter().enumerate() {
            let group: Vec<usize> = b.iter().map(|_| self.rng.gen_range(0..b.len())).collect();
            for x in 0..b.len() {
                for y in x + 1..b.len() {
                    let kind = if group[x] == group[y] { EdgeKind::Dotted } else { EdgeKind::Arc };
                    self.maybe(b[x], b[y], kind);
                }
            }
            for later in &blocks[bi + 1..] {
                for &u in b {
                    for &v in later {
                        self.maybe(u, v, EdgeKind::Arrow);
                    }
                }
            }
        }
        loop {
            let mut add = Vec::new();
            for j in self.g.nodes() {
                let r = self.g.relations(j).expect("own node");
                if r.sp.is_empty() {
                    continue;
                }
                for i in r.pt {
                    for k in r.pt.iter().filter(|&k| k > i) {
                        if !self.g.contains_edge(&Edge::dotted(i, k)) {
                            add.push((i, k));
                        }
                    }
                }
            }
            if add.is_empty() {
                break;
            }
            for (i, k) in add {
                self.g.add_edge(i, k, EdgeKind::Dotted).expect("distinct nodes");
            }
        }
    }
}

/// A random graph of the requested class; identical specs give identical
/// graphs. Nodes are labelled `0..n-1`.
pub fn random_graph(spec: &GenSpec) -> Result<Graph> {
    if spec.n == 0 {
        return Err(Error::UnsatisfiableSpec("a graph needs at least one node".into()));
    }
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(Error::UnsatisfiableSpec(format!("density {} outside [0, 1]", spec.density)));
    }
    let mut b = Builder {
        g: Graph::with_node_count(spec.n)?,
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        p: spec.density,
    };
    use ClassName::*;
    use EdgeKind::*;
    match spec.class {
        None => {
            let n = spec.n;
            for u in 0..n {
                for v in u + 1..n {
                    for kind in [Line, Dotted, Arc] {
                        b.maybe(u.into(), v.into(), kind);
                    }
                    b.maybe(u.into(), v.into(), Arrow);
                    b.maybe(v.into(), u.into(), Arrow);
                }
            }
        }
        Some(UG) => b.everywhere(Line),
        Some(BG) => b.everywhere(Arc),
        Some(DG) => b.everywhere(Dotted),
        Some(DAG) => b.dag(),
        Some(UCG) => {
            b.chain(&[Line]);
        }
        Some(BCG) => {
            b.chain(&[Arc]);
        }
        Some(DCG) => {
            b.chain(&[Dotted]);
        }
        Some(ChainGraph) => {
            b.chain(&[Line, Arc, Dotted]);
        }
        Some(RegressionGraph) => {
            b.chain(&[Line, Arc]);
            b.drop_heads_at_lines();
        }
        Some(MAMP) => b.mamp(),
        Some(AADMG) => {
            b.dag();
            b.everywhere(Dotted);
        }
        Some(ADMG) => b.cmg(false),
        Some(SG) => {
            b.cmg(true);
            b.drop_heads_at_lines();
        }
        Some(AG) => {
            b.cmg(true);
            b.drop_heads_at_lines();
            b.drop_arcs_by(Graph::ancestors);
        }
        Some(AnG) => {
            b.cmg(true);
            b.drop_arcs_by(Graph::anteriors);
        }
        Some(CMG) => b.cmg(true),
    }
    Ok(b.g)
}

/// Largest node count accepted by [`enumerate_graphs`].
pub const ENUMERATION_NODE_BOUND: usize = 4;

/// Every graph on nodes `0..n-1` using only `kinds`, each (pair, slot)
/// present or absent independently; an arrow has one slot per
/// orientation. Graph number `k` sets slot `s` iff bit `s` of `k` is set,
/// with slots ordered by pair and then by kind.
pub fn enumerate_graphs(n: usize, kinds: &[EdgeKind]) -> Result<GraphEnumeration> {
    if n > ENUMERATION_NODE_BOUND {
        return Err(Error::SizeLimit {
            what: "graph enumeration",
            actual: n,
            bound: ENUMERATION_NODE_BOUND,
        });
    }
    let mut slots = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (u, v) = (NodeId::from(u), NodeId::from(v));
            for kind in EdgeKind::ALL {
                if !kinds.contains(&kind) {
                    continue;
                }
                slots.push(Edge::new(u, v, kind));
                if kind == EdgeKind::Arrow {
                    slots.push(Edge::arrow(v, u));
                }
            }
        }
    }
    Ok(GraphEnumeration {
        base: Graph::with_node_count(n)?,
        next: 0,
        total: 1 << slots.len(),
        slots,
    })
}

/// Iterator returned by [`enumerate_graphs`]; skipping ahead is O(1).
#[derive(Clone, Debug)]
pub struct GraphEnumeration {
    base: Graph,
    slots: Vec<Edge>,
    next: u64,
    total: u64,
}

impl GraphEnumeration {
    /// The graph with number `code`.
    pub fn graph(&self, code: u64) -> Graph {
        let mut g = self.base.clone();
        for (s, e) in self.slots.iter().enumerate() {
            if code >> s & 1 == 1 {
                g.add_edge(e.u(), e.v(), e.kind()).expect("distinct nodes");
            }
        }
        g
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for GraphEnumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        (self.next < self.total).then(|| {
            self.next += 1;
            self.graph(self.next - 1)
        })
    }

    fn nth(&mut self, k: usize) -> Option<Graph> {
        self.next = self.next.saturating_add(k as u64).min(self.total);
        self.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GraphEnumeration {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn single_node_any_class() {
        for class in ClassName::ALL.into_iter().map(Some).chain([None]) {
            let g = random_graph(&GenSpec::new(1, class, 0.7, 3)).unwrap();
            assert_eq!((g.node_count(), g.edge_count()), (1, 0));
        }
    }

    #[test]
    fn dense_bg_is_triangle() {
        let g = random_graph(&GenSpec::new(3, Some(ClassName::BG), 1.0, 0)).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges().all(|e| e.kind() == EdgeKind::Arc));
    }

    #[test]
    fn deterministic() {
        for seed in 0..20 {
            let s = GenSpec::new(6, Some(ClassName::MAMP), 0.5, seed);
            assert_eq!(random_graph(&s).unwrap(), random_graph(&s).unwrap());
        }
    }

    #[test]
    fn classes_hold() {
        for class in ClassName::ALL {
            for seed in 0..50 {
                let g = random_graph(&GenSpec::new(5, Some(class), 0.6, seed)).unwrap();
                assert!(classify(&g).get(class), "{class:?} seed {seed}: {g:?}");
            }
        }
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(random_graph(&GenSpec::new(0, None, 0.5, 0)), Err(Error::UnsatisfiableSpec(_))));
        assert!(matches!(random_graph(&GenSpec::new(3, None, 1.5, 0)), Err(Error::UnsatisfiableSpec(_))));
        assert!(matches!(enumerate_graphs(5, &[EdgeKind::Line]), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(2, &[EdgeKind::Line]).unwrap().count(), 2);
        assert_eq!(enumerate_graphs(2, &EdgeKind::ALL).unwrap().count(), 32);
        assert_eq!(enumerate_graphs(3, &[EdgeKind::Arrow]).unwrap().count(), 64);
        let all: Vec<Graph> = enumerate_graphs(3, &[EdgeKind::Line, EdgeKind::Arc]).unwrap().collect();
        assert_eq!(all.len(), 64);
        for (x, g) in all.iter().enumerate() {
            assert!(all[x + 1..].iter().all(|h| h != g));
        }
    }
}
