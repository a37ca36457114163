//! Walk-based separation.
//!
//! `A ⊥ B | C` holds when no walk between `A` and `B` is connecting given
//! `C`: every collider section of the walk meets `C` and every non-collider
//! section avoids it. Walks are unbounded, so the search runs over a finite
//! quotient of walk prefixes instead: the current node, the mark through
//! which the current section was entered, and whether the section has met
//! `C` so far. Whether a prefix extends to a connecting walk depends only on
//! that triple, which makes plain breadth-first reachability exact.

mod oracles;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, Graph, Mark, NodeId, NodeSet, Walk};

pub use oracles::{
    brute_force_connected, brute_force_connected_with_bound, dag_d_separated, m_separated, ug_separated,
    z_separated, BRUTE_FORCE_NODE_BOUND,
};

/// How the current section was entered.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    /// The section holds the first node of the walk.
    WalkStart,
    /// Mark shown at the section by the edge that entered it.
    Mark(Mark),
}

impl Entry {
    fn index(self) -> usize {
        match self {
            Entry::WalkStart => 0,
            Entry::Mark(Mark::Tail) => 1,
            Entry::Mark(Mark::Head) => 2,
            Entry::Mark(Mark::LineEnd) => 3,
            Entry::Mark(Mark::DottedEnd) => 4,
        }
    }

    fn from_index(i: usize) -> Entry {
        match i {
            0 => Entry::WalkStart,
            1 => Entry::Mark(Mark::Tail),
            2 => Entry::Mark(Mark::Head),
            3 => Entry::Mark(Mark::LineEnd),
            _ => Entry::Mark(Mark::DottedEnd),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct EngineState {
    pub at: NodeId,
    pub entry: Entry,
    /// Some node of the current section visited so far lies in `C`.
    pub touched: bool,
}

const ENTRIES: usize = 5;

impl EngineState {
    fn index(self) -> usize {
        (self.at.index() * ENTRIES + self.entry.index()) * 2 + self.touched as usize
    }

    fn from_index(i: usize) -> EngineState {
        EngineState {
            at: NodeId::from(i / (2 * ENTRIES)),
            entry: Entry::from_index(i / 2 % ENTRIES),
            touched: i % 2 == 1,
        }
    }

    /// Successor along `e`, or `None` when closing the current section
    /// there would violate the connecting condition.
    fn step(self, e: &Edge, c: NodeSet) -> Option<EngineState> {
        let next = e.other(self.at);
        if e.kind() == EdgeKind::Line {
            return Some(EngineState {
                at: next,
                entry: self.entry,
                touched: self.touched || c.contains(next),
            });
        }
        if closes_as_collider(self.entry, e.mark_at(self.at)) != self.touched {
            return None;
        }
        Some(EngineState {
            at: next,
            entry: Entry::Mark(e.mark_at(next)),
            touched: c.contains(next),
        })
    }
}

/// A section entered with `entry` and left by an edge showing `exit` is a
/// collider iff neither side is a tail (or the walk start) and the two
/// sides are not both dotted.
pub(crate) fn closes_as_collider(entry: Entry, exit: Mark) -> bool {
    let Entry::Mark(entry) = entry else {
        return false;
    };
    let blocking = |m: Mark| matches!(m, Mark::Head | Mark::DottedEnd);
    blocking(entry) && blocking(exit) && !(entry == Mark::DottedEnd && exit == Mark::DottedEnd)
}

/// A validated `⟨A, B | C⟩` query.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SeparationQuery {
    pub a: NodeSet,
    pub b: NodeSet,
    pub c: NodeSet,
}

impl SeparationQuery {
    pub fn new(a: NodeSet, b: NodeSet, c: NodeSet) -> Result<SeparationQuery> {
        if a.intersects(b) || a.intersects(c) || b.intersects(c) {
            return Err(Error::InvalidQuery("A, B and C must be pairwise disjoint".into()));
        }
        Ok(SeparationQuery { a, b, c })
    }
}

struct Search {
    visited: Vec<bool>,
    pred: Vec<Option<(usize, Edge)>>,
}

/// Breadth-first search over engine states from `i`. Returns the set of
/// nodes reached in an accepting state, stopping early once `stop_at` is
/// reached.
fn search(g: &Graph, i: NodeId, c: NodeSet, stop_at: Option<NodeId>) -> (NodeSet, Search) {
    let n = g.node_count();
    let mut s = Search {
        visited: vec![false; n * ENTRIES * 2],
        pred: vec![None; n * ENTRIES * 2],
    };
    let start = EngineState {
        at: i,
        entry: Entry::WalkStart,
        touched: false,
    };
    let mut reached = NodeSet::empty();
    let mut queue = VecDeque::new();
    s.visited[start.index()] = true;
    queue.push_back(start);
    while let Some(st) = queue.pop_front() {
        if !st.touched && st.at != i {
            reached.insert(st.at);
            if Some(st.at) == stop_at {
                break;
            }
        }
        for e in g.incident(st.at) {
            if let Some(nx) = st.step(e, c) {
                let k = nx.index();
                if !s.visited[k] {
                    s.visited[k] = true;
                    s.pred[k] = Some((st.index(), *e));
                    queue.push_back(nx);
                }
            }
        }
    }
    (reached, s)
}

fn check_pair(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<()> {
    g.check_node(i)?;
    g.check_node(j)?;
    g.check_set(c)?;
    if i == j {
        return Err(Error::InvalidQuery("endpoints must differ".into()));
    }
    if c.contains(i) || c.contains(j) {
        return Err(Error::InvalidQuery("endpoints must lie outside the conditioning set".into()));
    }
    Ok(())
}

/// Whether some walk between `i` and `j` is connecting given `c`.
pub fn connecting_walk_exists(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<bool> {
    check_pair(g, i, j, c)?;
    Ok(search(g, i, c, Some(j)).0.contains(j))
}

/// A shortest connecting walk between `i` and `j` given `c`, if any.
pub fn connecting_walk(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<Option<Walk>> {
    check_pair(g, i, j, c)?;
    let (reached, s) = search(g, i, c, Some(j));
    if !reached.contains(j) {
        return Ok(None);
    }
    let end = (0..ENTRIES)
        .map(|k| {
            EngineState {
                at: j,
                entry: Entry::from_index(k),
                touched: false,
            }
            .index()
        })
        .find(|&k| s.visited[k])
        .expect("accepting state was visited");
    let mut edges = Vec::new();
    let mut cur = end;
    while let Some((prev, e)) = s.pred[cur] {
        edges.push(e);
        cur = prev;
    }
    debug_assert_eq!(EngineState::from_index(cur).at, i);
    edges.reverse();
    Ok(Some(Walk::from_edges(i, edges)?))
}

/// All nodes `j ∉ C ∪ {i}` joined to `i` by a connecting walk given `c`.
pub fn connected_set(g: &Graph, i: NodeId, c: NodeSet) -> Result<NodeSet> {
    g.check_node(i)?;
    g.check_set(c)?;
    if c.contains(i) {
        return Err(Error::InvalidQuery("start node lies in the conditioning set".into()));
    }
    Ok(search(g, i, c, None).0 - c)
}

/// `A ⊥ B | C`. Empty `A` or `B` is trivially separated.
pub fn separated(g: &Graph, q: &SeparationQuery) -> Result<bool> {
    g.check_set(q.a | q.b | q.c)?;
    for i in q.a {
        if connected_set(g, i, q.c)?.intersects(q.b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience wrapper over [`separated`] for raw sets.
pub fn is_separated(g: &Graph, a: NodeSet, b: NodeSet, c: NodeSet) -> Result<bool> {
    separated(g, &SeparationQuery::new(a, b, c)?)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::EdgeKind::*;

    pub(crate) fn mixed6() -> Graph {
        Graph::from_edges([
            ("j", Arrow, "k"),
            ("k", Arc, "l"),
            ("l", Line, "r"),
            ("r", Line, "q"),
            ("l", Arrow, "p"),
            ("h", Arrow, "q"),
        ])
        .unwrap()
    }

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

    fn conn(g: &Graph, i: &str, j: &str, c: &[&str]) -> bool {
        connecting_walk_exists(g, g.require(i).unwrap(), g.require(j).unwrap(), g.set_of(c).unwrap()).unwrap()
    }

    #[test]
    fn mixed6_queries() {
        let g = mixed6();
        assert!(conn(&g, "j", "h", &["k", "l"]));
        assert!(conn(&g, "j", "h", &["k", "p"]));
        assert!(!conn(&g, "j", "h", &["l"]));
        assert!(!conn(&g, "j", "h", &["k"]));
    }

    #[test]
    fn mixed6_witness_walks_are_connecting() {
        let g = mixed6();
        for c in [&["k", "l"][..], &["k", "p"][..]] {
            let cs = g.set_of(c).unwrap();
            let w = connecting_walk(&g, g.require("j").unwrap(), g.require("h").unwrap(), cs)
                .unwrap()
                .unwrap();
            w.validate(&g).unwrap();
            assert!(w.is_connecting(cs), "{}", w.render(&g));
        }
        let w = connecting_walk(&g, g.require("j").unwrap(), g.require("h").unwrap(), g.set_of(["k", "p"]).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(w.render(&g), "j -[->]- k -[<->]- l -[->]- p -[<-]- l -[--]- r -[--]- q -[<-]- h");
    }

    #[test]
    fn isolated_nodes_never_connect() {
        let g = Graph::with_nodes(["a", "b", "c"]).unwrap();
        assert!(!conn(&g, "a", "b", &[]));
        assert!(!conn(&g, "a", "b", &["c"]));
    }

    #[test]
    fn nonmax_j_l_connected_for_every_c() {
        let g = nonmax();
        let rest = g.set_of(["k", "p", "q"]).unwrap();
        for c in rest.subsets() {
            assert!(connecting_walk_exists(&g, g.require("j").unwrap(), g.require("l").unwrap(), c).unwrap());
        }
    }

    #[test]
    fn invalid_queries() {
        let g = mixed6();
        let j = g.require("j").unwrap();
        let k = g.require("k").unwrap();
        assert!(matches!(connecting_walk_exists(&g, j, j, NodeSet::empty()), Err(Error::InvalidQuery(_))));
        assert!(matches!(connecting_walk_exists(&g, j, k, NodeSet::singleton(k)), Err(Error::InvalidQuery(_))));
        let s = NodeSet::singleton(j);
        assert!(SeparationQuery::new(s, s, NodeSet::empty()).is_err());
    }

    #[test]
    fn set_queries() {
        let g = mixed6();
        let s = |x: &[&str]| g.set_of(x).unwrap();
        assert!(is_separated(&g, NodeSet::empty(), s(&["h"]), s(&[])).unwrap());
        assert!(is_separated(&g, s(&["j"]), s(&["h"]), s(&["l"])).unwrap());
        let pair_h = is_separated(&g, s(&["j"]), s(&["h"]), s(&["l"])).unwrap();
        let pair_p = is_separated(&g, s(&["j"]), s(&["p"]), s(&["l"])).unwrap();
        assert_eq!(is_separated(&g, s(&["j"]), s(&["h", "p"]), s(&["l"])).unwrap(), pair_h && pair_p);
    }

    #[test]
    fn collider_rule_table() {
        use Mark::*;
        let e = |m| Entry::Mark(m);
        assert!(closes_as_collider(e(Head), Head));
        assert!(closes_as_collider(e(Head), DottedEnd));
        assert!(closes_as_collider(e(DottedEnd), Head));
        assert!(!closes_as_collider(e(DottedEnd), DottedEnd));
        assert!(!closes_as_collider(e(Tail), Head));
        assert!(!closes_as_collider(e(Head), Tail));
        assert!(!closes_as_collider(Entry::WalkStart, Head));
    }

    #[test]
    fn state_index_roundtrip() {
        for k in 0..4 * ENTRIES * 2 {
            assert_eq!(EngineState::from_index(k).index(), k);
        }
    }
}
