//! Maximality of chain mixed graphs.
//!
//! A CMG is maximal when every missing edge corresponds to some
//! separation. Non-maximality is witnessed by a primitive inducing walk
//! between non-adjacent nodes: either a single edge, or a walk whose
//! endpoint sections are single nodes, whose inner sections are all
//! colliders, and whose inner nodes lie in `Ant({i,j})`.

use std::collections::VecDeque;

use crate::classify::is_cmg;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, Graph, NodeId, NodeSet, Walk};
use crate::separation::connecting_walk_exists;

/// A primitive inducing walk from `i` to `j` and whether an arrowhead
/// points at each endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducingWitness {
    pub i: NodeId,
    pub j: NodeId,
    pub walk: Walk,
    pub head_at_i: bool,
    pub head_at_j: bool,
}

impl InducingWitness {
    /// The single edge between `i` and `j` with the same endpoint marks.
    /// `None` only for a line.
    pub fn endpoint_identical_edge(&self) -> Option<Edge> {
        match (self.head_at_i, self.head_at_j) {
            (true, true) => Some(Edge::arc(self.i, self.j)),
            (true, false) => Some(Edge::arrow(self.j, self.i)),
            (false, true) => Some(Edge::arrow(self.i, self.j)),
            (false, false) => None,
        }
    }
}

fn require_cmg(g: &Graph) -> Result<()> {
    if is_cmg(g) {
        Ok(())
    } else {
        Err(Error::ClassViolation("expected a chain mixed graph".into()))
    }
}

/// One witness per achievable pair of endpoint flags, shortest first within
/// each kind. Direct `ij` edges come first.
pub fn primitive_inducing_walks(g: &Graph, i: NodeId, j: NodeId) -> Result<Vec<InducingWitness>> {
    require_cmg(g)?;
    g.check_node(i)?;
    g.check_node(j)?;
    if i == j {
        return Err(Error::InvalidQuery("endpoints must differ".into()));
    }
    let mut found: Vec<InducingWitness> = Vec::new();
    let record = |w: InducingWitness, found: &mut Vec<InducingWitness>| {
        if !found.iter().any(|x| (x.head_at_i, x.head_at_j) == (w.head_at_i, w.head_at_j)) {
            found.push(w);
        }
    };
    for &e in g.edges_between(i, j) {
        let w = InducingWitness {
            i,
            j,
            walk: Walk::from_edges(i, vec![e])?,
            head_at_i: e.has_arrowhead_at(i),
            head_at_j: e.has_arrowhead_at(j),
        };
        record(w, &mut found);
    }

    // Inner states (v, head at i): v lies in an inner section, which was
    // entered through an arrowhead. Inner nodes may revisit i or j.
    let allowed = g.anterior_closure(NodeSet::singleton(i).with(j))?;
    let n = g.node_count();
    let idx = |v: NodeId, hi: bool| v.index() * 2 + hi as usize;
    let mut pred: Vec<Option<(Option<usize>, Edge)>> = vec![None; 2 * n];
    let mut queue = VecDeque::new();
    for &e in g.incident(i) {
        let q = e.other(i);
        if e.kind() == EdgeKind::Line || !e.has_arrowhead_at(q) || !allowed.contains(q) {
            continue;
        }
        let s = idx(q, e.has_arrowhead_at(i));
        if pred[s].is_none() {
            pred[s] = Some((None, e));
            queue.push_back(s);
        }
    }
    let rebuild = |pred: &[Option<(Option<usize>, Edge)>], mut s: usize, last: Edge| -> Vec<Edge> {
        let mut edges = vec![last];
        loop {
            let (p, e) = pred[s].expect("visited state");
            edges.push(e);
            match p {
                Some(p) => s = p,
                None => break,
            }
        }
        edges.reverse();
        edges
    };
    while let Some(s) = queue.pop_front() {
        let (v, hi) = (NodeId((s / 2) as u32), s % 2 == 1);
        for &e in g.incident(v) {
            let w = e.other(v);
            if e.kind() == EdgeKind::Line {
                if allowed.contains(w) {
                    let t = idx(w, hi);
                    if pred[t].is_none() {
                        pred[t] = Some((Some(s), e));
                        queue.push_back(t);
                    }
                }
                continue;
            }
            // leaving a collider section needs an arrowhead at v
            if !e.has_arrowhead_at(v) {
                continue;
            }
            if w == j {
                let walk = Walk::from_edges(i, rebuild(&pred, s, e))?;
                record(
                    InducingWitness {
                        i,
                        j,
                        walk,
                        head_at_i: hi,
                        head_at_j: e.has_arrowhead_at(j),
                    },
                    &mut found,
                );
            }
            if e.has_arrowhead_at(w) && allowed.contains(w) {
                let t = idx(w, hi);
                if pred[t].is_none() {
                    pred[t] = Some((Some(s), e));
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(found)
}

/// Some primitive inducing walk between `i` and `j`, if one exists.
pub fn find_primitive_inducing_walk(g: &Graph, i: NodeId, j: NodeId) -> Result<Option<InducingWitness>> {
    Ok(primitive_inducing_walks(g, i, j)?.into_iter().next())
}

/// First non-adjacent pair (in node order) joined by a primitive inducing
/// walk.
pub fn non_maximal_witness(g: &Graph) -> Result<Option<InducingWitness>> {
    require_cmg(g)?;
    for i in g.nodes() {
        for j in g.nodes().filter(|&j| j > i && !g.adjacent(i, j)) {
            if let Some(w) = find_primitive_inducing_walk(g, i, j)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Whether no non-adjacent pair is joined by a primitive inducing walk.
pub fn is_maximal(g: &Graph) -> Result<bool> {
    let by_walks = non_maximal_witness(g)?.is_none();
    debug_assert_eq!(by_walks, is_maximal_by_separators(g)?);
    Ok(by_walks)
}

/// Whether every non-adjacent pair is separated by `ant({i,j})`.
pub fn is_maximal_by_separators(g: &Graph) -> Result<bool> {
    require_cmg(g)?;
    for i in g.nodes() {
        for j in g.nodes().filter(|&j| j > i && !g.adjacent(i, j)) {
            if separator_for(g, i, j)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ant({i,j})` when it separates the non-adjacent pair `i`, `j`.
pub fn separator_for(g: &Graph, i: NodeId, j: NodeId) -> Result<Option<NodeSet>> {
    require_cmg(g)?;
    g.check_node(i)?;
    g.check_node(j)?;
    if i == j || g.adjacent(i, j) {
        return Err(Error::InvalidQuery("separator requested for adjacent nodes".into()));
    }
    let c = g.anteriors(NodeSet::singleton(i).with(j))?;
    Ok((!connecting_walk_exists(g, i, j, c)?).then_some(c))
}

/// Adds, for every primitive inducing walk between non-adjacent nodes, the
/// single edge with the same endpoint marks, and repeats until none is
/// left. The independence model is unchanged.
pub fn maximalize(g: &Graph) -> Result<Graph> {
    require_cmg(g)?;
    let mut g = g.clone();
    loop {
        let mut add = Vec::new();
        for i in g.nodes() {
            for j in g.nodes().filter(|&j| j > i && !g.adjacent(i, j)) {
                for w in primitive_inducing_walks(&g, i, j)? {
                    let e = w
                        .endpoint_identical_edge()
                        .expect("a walk without endpoint arrowheads is a line");
                    add.push(e);
                }
            }
        }
        if add.is_empty() {
            return Ok(g);
        }
        for e in add {
            g.add_edge(e.u(), e.v(), e.kind())?;
        }
    }
}
