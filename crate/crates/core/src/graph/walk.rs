//! Walks and their decomposition into sections.

use super::{Edge, EdgeKind, Graph, Mark, NodeId, NodeSet};
use crate::error::{Error, Result};

/// `⟨i₀, e₁, i₁, …, eₙ, iₙ⟩`. Edges are stored explicitly so walks stay
/// unambiguous in graphs with multiple edges between a pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
}

impl Walk {
    pub fn single(v: NodeId) -> Walk {
        Walk {
            nodes: vec![v],
            edges: Vec::new(),
        }
    }

    /// Walk starting at `start` and following `edges`.
    pub fn from_edges(start: NodeId, edges: Vec<Edge>) -> Result<Walk> {
        let mut nodes = Vec::with_capacity(edges.len() + 1);
        nodes.push(start);
        for e in &edges {
            let at = *nodes.last().unwrap();
            if !e.has_endpoint(at) {
                return Err(Error::MalformedWalk(format!("edge {e:?} does not touch node {}", at.0)));
            }
            nodes.push(e.other(at));
        }
        Ok(Walk { nodes, edges })
    }

    /// Checks that every edge belongs to `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.nodes {
            g.check_node(v).map_err(|_| Error::MalformedWalk(format!("unknown node #{}", v.0)))?;
        }
        match self.edges.iter().find(|e| !g.contains_edge(e)) {
            Some(e) => Err(Error::MalformedWalk(format!("edge {e:?} not in graph"))),
            None => Ok(()),
        }
    }

    /// Resolves a node-label sequence in a graph with at most one edge per
    /// pair.
    pub fn from_labels(g: &Graph, labels: &[&str]) -> Result<Walk> {
        let first = labels.first().ok_or_else(|| Error::MalformedWalk("empty walk".into()))?;
        let start = g.require(first)?;
        let mut edges = Vec::new();
        for pair in labels.windows(2) {
            let (a, b) = (g.require(pair[0])?, g.require(pair[1])?);
            let mut it = g.edges_between(a, b);
            let e = *it.next().ok_or_else(|| Error::MalformedWalk(format!("{} and {} not adjacent", pair[0], pair[1])))?;
            if it.next().is_some() {
                return Err(Error::MalformedWalk(format!("{} and {} joined by several edges", pair[0], pair[1])));
            }
            edges.push(e);
        }
        Walk::from_edges(start, edges)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn end(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn is_path(&self) -> bool {
        let mut seen = NodeSet::empty();
        self.nodes.iter().all(|&v| seen.insert(v))
    }

    pub fn reversed(&self) -> Walk {
        let mut nodes = self.nodes.clone();
        let mut edges = self.edges.clone();
        nodes.reverse();
        edges.reverse();
        Walk { nodes, edges }
    }

    pub fn push(&mut self, e: Edge) -> Result<()> {
        let at = self.end();
        if !e.has_endpoint(at) {
            return Err(Error::MalformedWalk(format!("edge {e:?} does not touch node {}", at.0)));
        }
        self.nodes.push(e.other(at));
        self.edges.push(e);
        Ok(())
    }

    pub fn pop(&mut self) -> Option<Edge> {
        let e = self.edges.pop()?;
        self.nodes.pop();
        Some(e)
    }

    /// Renders `a -[->]- b -[--]- c`.
    pub fn render(&self, g: &Graph) -> String {
        let mut s = g.label(self.nodes[0]).to_string();
        for (k, e) in self.edges.iter().enumerate() {
            let from = self.nodes[k];
            let tok = match e.kind() {
                EdgeKind::Arrow if e.u() == from => "->",
                EdgeKind::Arrow => "<-",
                k => k.token(),
            };
            s.push_str(&format!(" -[{tok}]- {}", g.label(self.nodes[k + 1])));
        }
        s
    }

    /// Literal check: every collider section meets `c` and every
    /// non-collider section avoids it.
    pub fn is_connecting(&self, c: NodeSet) -> bool {
        sections_of(self).sections.iter().all(|s| {
            let hit = s.node_set().intersects(c);
            if s.collider {
                hit
            } else {
                !hit
            }
        })
    }
}

/// What flanks a section on one side: the walk endpoint, or the non-line
/// edge leaving the section together with the mark it shows there.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flank {
    EndpointOfWalk,
    Edge { kind: EdgeKind, mark: Mark },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    /// Position of the first node of the section within the walk.
    pub first: usize,
    /// Position of the last node (inclusive).
    pub last: usize,
    pub nodes: Vec<NodeId>,
    pub left: Flank,
    pub right: Flank,
    pub collider: bool,
}

impl Section {
    pub fn node_set(&self) -> NodeSet {
        self.nodes.iter().copied().collect()
    }

    pub fn is_endpoint(&self) -> bool {
        self.left == Flank::EndpointOfWalk || self.right == Flank::EndpointOfWalk
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDecomposition {
    pub sections: Vec<Section>,
}

impl SectionDecomposition {
    pub fn colliders(&self) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(|s| s.collider)
    }

    pub fn inner(&self) -> &[Section] {
        let n = self.sections.len();
        if n <= 2 {
            &[]
        } else {
            &self.sections[1..n - 1]
        }
    }
}

/// Colliders: `→ρ←`, `↔ρ←`, `↔ρ↔`, `→ρ┈`, `↔ρ┈` (either orientation).
/// Everything else, including walk endpoints, is a non-collider.
fn is_collider(left: Flank, right: Flank) -> bool {
    use EdgeKind::*;
    let (Flank::Edge { kind: lk, mark: lm }, Flank::Edge { kind: rk, mark: rm }) = (left, right) else {
        return false;
    };
    let head = |k: EdgeKind, m: Mark| matches!((k, m), (Arrow, Mark::Head) | (Arc, _));
    matches!(
        ((lk, head(lk, lm)), (rk, head(rk, rm))),
        ((Arrow, true), (Arrow, true))
            | ((Arc, true), (Arrow, true))
            | ((Arrow, true), (Arc, true))
            | ((Arc, true), (Arc, true))
            | ((Arrow, true), (Dotted, _))
            | ((Dotted, _), (Arrow, true))
            | ((Arc, true), (Dotted, _))
            | ((Dotted, _), (Arc, true))
    )
}

/// Splits a walk into maximal runs of lines and classifies each run.
pub fn sections_of(w: &Walk) -> SectionDecomposition {
    let n = w.edges.len();
    let mut sections = Vec::new();
    let mut first = 0;
    let mut left = Flank::EndpointOfWalk;
    for pos in 0..=n {
        let closes = pos == n || w.edges[pos].kind() != EdgeKind::Line;
        if !closes {
            continue;
        }
        let right = if pos == n {
            Flank::EndpointOfWalk
        } else {
            let e = w.edges[pos];
            Flank::Edge {
                kind: e.kind(),
                mark: e.mark_at(w.nodes[pos]),
            }
        };
        sections.push(Section {
            first,
            last: pos,
            nodes: w.nodes[first..=pos].to_vec(),
            left,
            right,
            collider: is_collider(left, right),
        });
        if pos < n {
            let e = w.edges[pos];
            left = Flank::Edge {
                kind: e.kind(),
                mark: e.mark_at(w.nodes[pos + 1]),
            };
            first = pos + 1;
        }
    }
    SectionDecomposition { sections }
}
