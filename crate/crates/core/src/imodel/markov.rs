use super::{IndependenceModel, Limits, Triple};
use crate::classify;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::separation::connected_set;

/// The separation model of `g` under the default node bound.
pub fn global_model(g: &Graph) -> Result<IndependenceModel> {
    global_model_with(g, Limits::default().global_model)
}

/// Every `⟨A,B|C⟩` with `A ⊥ B | C`. For each `C` the connected sets of
/// single nodes are computed once; `A ⊥ B | C` holds exactly when no
/// member of `A` reaches `B`.
pub fn global_model_with(g: &Graph, bound: usize) -> Result<IndependenceModel> {
    let n = g.node_count();
    if n > bound {
        return Err(Error::SizeLimit {
            what: "global model",
            actual: n,
            bound,
        });
    }
    let mut m = IndependenceModel::empty(g.labels())?;
    let ground = g.all_nodes();
    let mut conn = vec![NodeSet::empty(); n];
    for c in ground.subsets() {
        let free = ground - c;
        for i in free {
            conn[i.index()] = connected_set(g, i, c)?.without(i);
        }
        for a in free.subsets() {
            if a.is_empty() {
                continue;
            }
            let reach = a.iter().fold(NodeSet::empty(), |r, i| r | conn[i.index()]);
            for b in (free - a - reach).subsets() {
                m.insert(Triple::raw(a, b, c));
            }
        }
    }
    Ok(m)
}

/// `⟨i, j | ant({i,j})⟩` for every non-adjacent pair `i < j`.
pub fn pairwise_statements(g: &Graph) -> Result<IndependenceModel> {
    if !classify::is_cmg(g) {
        return Err(Error::ClassViolation("pairwise statements require a chain mixed graph".into()));
    }
    let mut m = IndependenceModel::empty(g.labels())?;
    for i in g.nodes() {
        for j in g.nodes().filter(|&j| j > i) {
            if g.adjacent(i, j) {
                continue;
            }
            let pair = NodeSet::singleton(i).with(j);
            m.insert(Triple::raw(NodeSet::singleton(i), NodeSet::singleton(j), g.anteriors(pair)?));
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalCheck {
    pub holds: bool,
    /// First separated statement (in code order) missing from the model.
    pub missing: Option<Triple>,
}

/// Whether every separation in `g` is a member of `m`. The ground set of
/// `m` must carry the node labels of `g`; order may differ, and a reported
/// witness is expressed over the ground order of `m`.
pub fn satisfies_global(m: &IndependenceModel, g: &Graph) -> Result<GlobalCheck> {
    let g = g.relabeled_order(m.labels())?;
    let sep = global_model(&g)?;
    let missing = sep.iter().find(|t| !m.contains(t));
    Ok(GlobalCheck {
        holds: missing.is_none(),
        missing,
    })
}

/// Whether the two graphs induce the same separation model.
pub fn markov_equivalent(g1: &Graph, g2: &Graph) -> Result<bool> {
    Ok(model_difference(g1, g2)?.is_none())
}

/// First statement on which the separation models of `g1` and `g2`
/// disagree, with a flag telling whether it belongs to the model of `g1`.
/// Statements use the node order of `g1`.
pub fn model_difference(g1: &Graph, g2: &Graph) -> Result<Option<(Triple, bool)>> {
    let g2 = g2.relabeled_order(g1.labels())?;
    let (m1, m2) = (global_model(g1)?, global_model(&g2)?);
    Ok(m1.first_difference(&m2))
}
