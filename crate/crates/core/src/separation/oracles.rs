//! Independent deciders used to cross-check the walk engine: a literal
//! walk enumerator and the classical path/moralization criteria for the
//! subclasses where they apply.

use std::collections::{HashSet, VecDeque};

use crate::classify;
use crate::error::{Error, Result};
use crate::graph::{sections_of, Edge, EdgeKind, Flank, Graph, Mark, NodeId, NodeSet, Walk};

use super::check_pair;

pub const BRUTE_FORCE_NODE_BOUND: usize = 6;

/// Enumerates walks from `i` depth-first and tests each walk that ends at
/// `j` against the connecting definition via its section decomposition.
///
/// A prefix is abandoned when one of its closed sections already violates
/// the definition, or when an earlier prefix ended at the same node with an
/// open section of the same left flank and the same contact with `C`: such
/// prefixes admit exactly the same valid continuations.
pub fn brute_force_connected(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<bool> {
    brute_force_connected_with_bound(g, i, j, c, BRUTE_FORCE_NODE_BOUND)
}

pub fn brute_force_connected_with_bound(g: &Graph, i: NodeId, j: NodeId, c: NodeSet, bound: usize) -> Result<bool> {
    if g.node_count() > bound {
        return Err(Error::SizeLimit {
            what: "brute-force walk enumeration",
            actual: g.node_count(),
            bound,
        });
    }
    check_pair(g, i, j, c)?;
    let mut seen = HashSet::new();
    let mut walk = Walk::single(i);
    Ok(dfs(g, &mut walk, j, c, &mut seen))
}

type PrefixKey = (NodeId, Flank, bool);

fn dfs(g: &Graph, walk: &mut Walk, j: NodeId, c: NodeSet, seen: &mut HashSet<PrefixKey>) -> bool {
    let d = sections_of(walk);
    let (open, closed) = d.sections.split_last().expect("a walk has at least one section");
    // closed sections: their right flank is an actual edge, so the
    // collider flag is final
    let closed_ok = closed.iter().all(|s| s.collider == s.node_set().intersects(c));
    if !closed_ok {
        return false;
    }
    let touched = open.node_set().intersects(c);
    if walk.end() == j && walk.is_connecting(c) {
        return true;
    }
    if !seen.insert((walk.end(), open.left, touched)) {
        return false;
    }
    let here = walk.end();
    for &e in g.incident(here) {
        walk.push(e).expect("incident edge");
        let found = dfs(g, walk, j, c, seen);
        walk.pop();
        if found {
            return true;
        }
    }
    false
}

/// Edge sequences of all simple paths from `i` to `j`.
fn simple_paths(g: &Graph, i: NodeId, j: NodeId, mut visit: impl FnMut(&[NodeId], &[Edge]) -> bool) -> bool {
    fn rec(
        g: &Graph,
        j: NodeId,
        nodes: &mut Vec<NodeId>,
        edges: &mut Vec<Edge>,
        on_path: &mut NodeSet,
        visit: &mut dyn FnMut(&[NodeId], &[Edge]) -> bool,
    ) -> bool {
        let here = *nodes.last().unwrap();
        if here == j {
            return visit(nodes, edges);
        }
        for &e in g.incident(here) {
            let next = e.other(here);
            if on_path.contains(next) {
                continue;
            }
            on_path.insert(next);
            nodes.push(next);
            edges.push(e);
            let stop = rec(g, j, nodes, edges, on_path, visit);
            edges.pop();
            nodes.pop();
            on_path.remove(next);
            if stop {
                return true;
            }
        }
        false
    }
    let mut nodes = vec![i];
    let mut edges = Vec::new();
    let mut on_path = NodeSet::singleton(i);
    rec(g, j, &mut nodes, &mut edges, &mut on_path, &mut visit)
}

/// m-separation on summary graphs: no path whose colliders lie in `An(C)`
/// and whose non-colliders avoid `C`.
pub fn m_separated(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<bool> {
    if !classify::is_summary_graph(g) {
        return Err(Error::ClassViolation("m-separation requires a summary graph".into()));
    }
    check_pair(g, i, j, c)?;
    let an_c = g.ancestral_closure(c)?;
    let connecting = simple_paths(g, i, j, |nodes, edges| {
        (1..nodes.len() - 1).all(|p| {
            let k = nodes[p];
            let collider = edges[p - 1].has_arrowhead_at(k) && edges[p].has_arrowhead_at(k);
            if collider {
                an_c.contains(k)
            } else {
                !c.contains(k)
            }
        })
    });
    Ok(!connecting)
}

/// z-separation on marginal AMP graphs. A collider node (two arrowheads,
/// or an arrowhead against a dotted line) must lie in `An(C)`; a
/// non-collider `k` must avoid `C` unless it sits inside `┈k┈` on the path
/// and has a spouse or a parent outside `C`.
pub fn z_separated(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<bool> {
    if !classify::is_mamp(g) {
        return Err(Error::ClassViolation("z-separation requires a marginal AMP graph".into()));
    }
    check_pair(g, i, j, c)?;
    let an_c = g.ancestral_closure(c)?;
    let connecting = simple_paths(g, i, j, |nodes, edges| {
        (1..nodes.len() - 1).all(|p| {
            let k = nodes[p];
            let (m1, m2) = (edges[p - 1].mark_at(k), edges[p].mark_at(k));
            let collider = matches!(
                (m1, m2),
                (Mark::Head, Mark::Head) | (Mark::Head, Mark::DottedEnd) | (Mark::DottedEnd, Mark::Head)
            );
            if collider {
                return an_c.contains(k);
            }
            if !c.contains(k) {
                return true;
            }
            let both_dotted = edges[p - 1].kind() == EdgeKind::Dotted && edges[p].kind() == EdgeKind::Dotted;
            let r = g.relations(k).expect("node on path");
            both_dotted && (!r.sp.is_empty() || !(r.pa - c).is_empty())
        })
    });
    Ok(!connecting)
}

/// d-separation on DAGs by the moralization criterion: `i` and `j` are
/// separated by `C` in the moral graph of the subgraph induced by
/// `An({i, j} ∪ C)`.
pub fn dag_d_separated(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<bool> {
    if !classify::is_dag(g) {
        return Err(Error::ClassViolation("d-separation requires a DAG".into()));
    }
    check_pair(g, i, j, c)?;
    let keep = g.ancestral_closure(c.with(i).with(j))?;
    let n = g.node_count();
    let mut moral = vec![NodeSet::empty(); n];
    for v in keep {
        let parents = g.relations(v)?.pa & keep;
        for p in parents {
            moral[p.index()].insert(v);
            moral[v.index()].insert(p);
            for q in parents {
                if q != p {
                    moral[p.index()].insert(q);
                }
            }
        }
    }
    Ok(!undirected_reach(&moral, i, c).contains(j))
}

/// Vertex-cut separation in an undirected graph: every walk from `i` to
/// `j` meets `C`.
pub fn ug_separated(g: &Graph, i: NodeId, j: NodeId, c: NodeSet) -> Result<bool> {
    if !classify::is_ug(g) {
        return Err(Error::ClassViolation("vertex-cut separation requires an undirected graph".into()));
    }
    check_pair(g, i, j, c)?;
    let nbrs: Vec<NodeSet> = g.nodes().map(|v| g.relations(v).map(|r| r.ne)).collect::<Result<_>>()?;
    Ok(!undirected_reach(&nbrs, i, c).contains(j))
}

fn undirected_reach(nbrs: &[NodeSet], from: NodeId, blocked: NodeSet) -> NodeSet {
    let mut seen = NodeSet::singleton(from);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for y in nbrs[x.index()] - blocked {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKind::*;

    fn q(g: &Graph, i: &str, j: &str, c: &[&str]) -> (NodeId, NodeId, NodeSet) {
        (g.require(i).unwrap(), g.require(j).unwrap(), g.set_of(c).unwrap())
    }

    #[test]
    fn m_separation_v_structure() {
        let g = Graph::from_edges([("i", Arrow, "k"), ("j", Arrow, "k")]).unwrap();
        let (i, j, _) = q(&g, "i", "j", &[]);
        assert!(m_separated(&g, i, j, NodeSet::empty()).unwrap());
        assert!(!m_separated(&g, i, j, g.set_of(["k"]).unwrap()).unwrap());
        let g = Graph::from_edges([("i", Arrow, "k"), ("j", Arrow, "k"), ("k", Arrow, "c")]).unwrap();
        let (i, j, c) = q(&g, "i", "j", &["c"]);
        assert!(!m_separated(&g, i, j, c).unwrap());
    }

    #[test]
    fn z_separation_exception_clause() {
        let g = Graph::from_edges([("i", Dotted, "k"), ("k", Dotted, "j")]).unwrap();
        let (i, j, c) = q(&g, "i", "j", &["k"]);
        assert!(z_separated(&g, i, j, c).unwrap());
        let g = Graph::from_edges([("i", Dotted, "k"), ("k", Dotted, "j"), ("l", Arrow, "k")]).unwrap();
        let (i, j, c) = q(&g, "i", "j", &["k"]);
        assert!(!z_separated(&g, i, j, c).unwrap());
    }

    #[test]
    fn d_separation_textbook() {
        let chain = Graph::from_edges([("i", Arrow, "k"), ("k", Arrow, "j")]).unwrap();
        let (i, j, k) = q(&chain, "i", "j", &["k"]);
        assert!(!dag_d_separated(&chain, i, j, NodeSet::empty()).unwrap());
        assert!(dag_d_separated(&chain, i, j, k).unwrap());
        let coll = Graph::from_edges([("i", Arrow, "k"), ("j", Arrow, "k")]).unwrap();
        let (i, j, k) = q(&coll, "i", "j", &["k"]);
        assert!(dag_d_separated(&coll, i, j, NodeSet::empty()).unwrap());
        assert!(!dag_d_separated(&coll, i, j, k).unwrap());
    }

    #[test]
    fn ug_path() {
        let g = Graph::from_edges([("1", Line, "2"), ("2", Line, "3")]).unwrap();
        let (a, b, c) = q(&g, "1", "3", &["2"]);
        assert!(ug_separated(&g, a, b, c).unwrap());
        assert!(!ug_separated(&g, a, b, NodeSet::empty()).unwrap());
    }

    #[test]
    fn class_violations() {
        let g = Graph::from_edges([("a", Dotted, "b"), ("b", Line, "c")]).unwrap();
        let (a, c, _) = q(&g, "a", "c", &[]);
        assert!(matches!(m_separated(&g, a, c, NodeSet::empty()), Err(Error::ClassViolation(_))));
        assert!(matches!(z_separated(&g, a, c, NodeSet::empty()), Err(Error::ClassViolation(_))));
        assert!(matches!(dag_d_separated(&g, a, c, NodeSet::empty()), Err(Error::ClassViolation(_))));
        assert!(matches!(ug_separated(&g, a, c, NodeSet::empty()), Err(Error::ClassViolation(_))));
    }

    #[test]
    fn brute_force_size_limit() {
        let g = Graph::with_node_count(7).unwrap();
        assert!(matches!(
            brute_force_connected(&g, NodeId(0), NodeId(1), NodeSet::empty()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn brute_force_mixed6() {
        let g = super::super::tests::mixed6();
        for (c, expect) in [(&["k", "l"][..], true), (&["k", "p"][..], true), (&["l"][..], false), (&["k"][..], false)] {
            let (j, h, c) = q(&g, "j", "h", c);
            assert_eq!(brute_force_connected_with_bound(&g, j, h, c, 7).unwrap(), expect);
        }
    }
}
