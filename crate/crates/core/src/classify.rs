//! Membership tests for the subclasses of four-edge-kind graphs, chain
//! component extraction, and the dotted-to-line translation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, Graph, NodeSet};

/// Names of the graph classes, in the order used for listings.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassName {
    UG,
    BG,
    DG,
    DAG,
    UCG,
    BCG,
    DCG,
    ChainGraph,
    RegressionGraph,
    MAMP,
    AADMG,
    ADMG,
    SG,
    AG,
    AnG,
    CMG,
}

impl ClassName {
    pub const ALL: [ClassName; 16] = [
        ClassName::UG,
        ClassName::BG,
        ClassName::DG,
        ClassName::DAG,
        ClassName::UCG,
        ClassName::BCG,
        ClassName::DCG,
        ClassName::ChainGraph,
        ClassName::RegressionGraph,
        ClassName::MAMP,
        ClassName::AADMG,
        ClassName::ADMG,
        ClassName::SG,
        ClassName::AG,
        ClassName::AnG,
        ClassName::CMG,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassName::UG => "UG",
            ClassName::BG => "BG",
            ClassName::DG => "DG",
            ClassName::DAG => "DAG",
            ClassName::UCG => "UCG",
            ClassName::BCG => "BCG",
            ClassName::DCG => "DCG",
            ClassName::ChainGraph => "CG",
            ClassName::RegressionGraph => "RG",
            ClassName::MAMP => "MAMP",
            ClassName::AADMG => "AADMG",
            ClassName::ADMG => "ADMG",
            ClassName::SG => "SG",
            ClassName::AG => "AG",
            ClassName::AnG => "AnG",
            ClassName::CMG => "CMG",
        }
    }

    pub fn parse(s: &str) -> Option<ClassName> {
        ClassName::ALL.into_iter().find(|c| c.as_str().eq_ignore_ascii_case(s))
    }

    /// Direct superclasses: every graph in `self` also lies in each of
    /// these. Read transitively.
    pub fn implied(self) -> &'static [ClassName] {
        use ClassName::*;
        match self {
            UG => &[UCG, AG, RegressionGraph],
            BG => &[BCG, MAMP],
            DG => &[DCG],
            DAG => &[UCG, BCG, DCG, ADMG, AADMG, MAMP, AG],
            UCG => &[ChainGraph, AnG],
            BCG => &[ChainGraph, RegressionGraph, AG, ADMG],
            DCG => &[ChainGraph, AADMG, MAMP],
            ChainGraph => &[],
            RegressionGraph => &[ChainGraph, AG],
            MAMP => &[],
            AADMG => &[],
            ADMG => &[SG],
            SG => &[CMG],
            AG => &[SG, AnG],
            AnG => &[CMG],
            CMG => &[],
        }
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Membership flags for every class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[allow(non_snake_case)]
pub struct GraphClass {
    pub UG: bool,
    pub BG: bool,
    pub DG: bool,
    pub DAG: bool,
    pub UCG: bool,
    pub BCG: bool,
    pub DCG: bool,
    pub CG: bool,
    pub RG: bool,
    pub MAMP: bool,
    pub AADMG: bool,
    pub ADMG: bool,
    pub SG: bool,
    pub AG: bool,
    pub AnG: bool,
    pub CMG: bool,
}

impl GraphClass {
    pub fn get(&self, c: ClassName) -> bool {
        match c {
            ClassName::UG => self.UG,
            ClassName::BG => self.BG,
            ClassName::DG => self.DG,
            ClassName::DAG => self.DAG,
            ClassName::UCG => self.UCG,
            ClassName::BCG => self.BCG,
            ClassName::DCG => self.DCG,
            ClassName::ChainGraph => self.CG,
            ClassName::RegressionGraph => self.RG,
            ClassName::MAMP => self.MAMP,
            ClassName::AADMG => self.AADMG,
            ClassName::ADMG => self.ADMG,
            ClassName::SG => self.SG,
            ClassName::AG => self.AG,
            ClassName::AnG => self.AnG,
            ClassName::CMG => self.CMG,
        }
    }

    pub fn flags(&self) -> impl Iterator<Item = (ClassName, bool)> + '_ {
        ClassName::ALL.into_iter().map(|c| (c, self.get(c)))
    }

    /// First recorded implication `sub ⇒ sup` that this record breaks.
    pub fn hierarchy_violation(&self) -> Option<(ClassName, ClassName)> {
        ClassName::ALL
            .into_iter()
            .filter(|&c| self.get(c))
            .flat_map(|c| c.implied().iter().map(move |&s| (c, s)))
            .find(|&(_, s)| !self.get(s))
    }
}

pub fn classify(g: &Graph) -> GraphClass {
    let chain = chain_components(g).ok();
    let kinds_only = |ks: &[EdgeKind]| g.edges().all(|e| ks.contains(&e.kind()));
    let comps_of = |k: EdgeKind| chain.as_ref().is_some_and(|d| d.components.iter().all(|c| c.kind.is_none_or(|x| x == k)));
    GraphClass {
        UG: is_ug(g),
        BG: kinds_only(&[EdgeKind::Arc]),
        DG: kinds_only(&[EdgeKind::Dotted]),
        DAG: is_dag(g),
        UCG: comps_of(EdgeKind::Line),
        BCG: comps_of(EdgeKind::Arc),
        DCG: comps_of(EdgeKind::Dotted),
        CG: chain.is_some(),
        RG: is_regression_graph(g),
        MAMP: is_mamp(g),
        AADMG: kinds_only(&[EdgeKind::Arrow, EdgeKind::Dotted]) && !g.has_directed_cycle(),
        ADMG: is_summary_graph(g) && !g.has_kind(EdgeKind::Line),
        SG: is_summary_graph(g),
        AG: is_ancestral_graph(g),
        AnG: is_anterial_graph(g),
        CMG: is_cmg(g),
    }
}

pub fn is_ug(g: &Graph) -> bool {
    g.edges().all(|e| e.kind() == EdgeKind::Line)
}

pub fn is_dg(g: &Graph) -> bool {
    g.edges().all(|e| e.kind() == EdgeKind::Dotted)
}

pub fn is_dag(g: &Graph) -> bool {
    g.edges().all(|e| e.kind() == EdgeKind::Arrow) && !g.has_directed_cycle()
}

/// No dotted lines and no semi-directed cycles.
pub fn is_cmg(g: &Graph) -> bool {
    !g.has_kind(EdgeKind::Dotted) && !g.has_semi_directed_cycle()
}

fn arrowhead_at_line_endpoint(g: &Graph) -> bool {
    g.nodes().any(|v| {
        let inc = g.incident(v);
        inc.iter().any(|e| e.kind() == EdgeKind::Line) && inc.iter().any(|e| e.has_arrowhead_at(v))
    })
}

/// CMG with no arrowhead pointing at an endpoint of a line.
pub fn is_summary_graph(g: &Graph) -> bool {
    is_cmg(g) && !arrowhead_at_line_endpoint(g)
}

fn arcs(g: &Graph) -> impl Iterator<Item = &Edge> + '_ {
    g.edges().filter(|e| e.kind() == EdgeKind::Arc)
}

/// Summary graph in which no arc joins a node to one of its ancestors.
pub fn is_ancestral_graph(g: &Graph) -> bool {
    is_summary_graph(g)
        && arcs(g).all(|e| {
            let an_v = g.ancestors(NodeSet::singleton(e.v())).expect("own node");
            let an_u = g.ancestors(NodeSet::singleton(e.u())).expect("own node");
            !an_v.contains(e.u()) && !an_u.contains(e.v())
        })
}

/// CMG in which no arc joins a node to one of its anteriors.
pub fn is_anterial_graph(g: &Graph) -> bool {
    is_cmg(g)
        && arcs(g).all(|e| {
            let ant_v = g.anteriors(NodeSet::singleton(e.v())).expect("own node");
            let ant_u = g.anteriors(NodeSet::singleton(e.u())).expect("own node");
            !ant_v.contains(e.u()) && !ant_u.contains(e.v())
        })
}

/// Marginal AMP graph: no lines and
/// 1. no quasi-directed cycle,
/// 2. no cycle made of dotted lines and a single arc,
/// 3. `i┈j┈k` with `j↔l` for some `l` forces `i┈k`.
pub fn is_mamp(g: &Graph) -> bool {
    if g.has_kind(EdgeKind::Line) || g.has_quasi_directed_cycle() {
        return false;
    }
    let (dotted_comp, _) = g.components_by(|k| k == EdgeKind::Dotted);
    if arcs(g).any(|e| dotted_comp[e.u().index()] == dotted_comp[e.v().index()]) {
        return false;
    }
    g.nodes().all(|j| {
        let r = g.relations(j).expect("own node");
        r.sp.is_empty()
            || r.pt.iter().all(|i| {
                r.pt.iter()
                    .filter(|&k| k > i)
                    .all(|k| g.contains_edge(&Edge::dotted(i, k)))
            })
    })
}

/// Chain graph of lines and arcs with no arrowhead at an endpoint of a line.
pub fn is_regression_graph(g: &Graph) -> bool {
    !g.has_kind(EdgeKind::Dotted) && chain_components(g).is_ok() && !arrowhead_at_line_endpoint(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComponent {
    pub nodes: NodeSet,
    /// Edge kind inside the component; `None` for singletons.
    pub kind: Option<EdgeKind>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// Components in a topological order of the quotient graph.
    pub components: Vec<ChainComponent>,
    /// Arrows of the quotient graph as pairs of component positions.
    pub quotient: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NotAChainGraph {
    #[error("chain component {0:?} mixes edge kinds")]
    MixedComponent(NodeSet),
    #[error("arrow inside a chain component")]
    ArrowWithinComponent(Edge),
    #[error("chain components form a directed cycle")]
    QuotientCycle,
}

pub fn chain_components(g: &Graph) -> std::result::Result<ChainDecomposition, NotAChainGraph> {
    let (comp, count) = g.components_by(|k| k != EdgeKind::Arrow);
    let mut nodes = vec![NodeSet::empty(); count];
    let mut kind: Vec<Option<EdgeKind>> = vec![None; count];
    for v in g.nodes() {
        nodes[comp[v.index()]].insert(v);
    }
    let mut arrows = Vec::new();
    for e in g.edges() {
        let (a, b) = (comp[e.u().index()], comp[e.v().index()]);
        if e.kind() == EdgeKind::Arrow {
            if a == b {
                return Err(NotAChainGraph::ArrowWithinComponent(*e));
            }
            arrows.push((a, b));
            continue;
        }
        match kind[a] {
            None => kind[a] = Some(e.kind()),
            Some(k) if k != e.kind() => return Err(NotAChainGraph::MixedComponent(nodes[a])),
            Some(_) => {}
        }
    }
    arrows.sort_unstable();
    arrows.dedup();
    // topological order; ties broken by smallest component index
    let mut indeg = vec![0usize; count];
    for &(_, b) in &arrows {
        indeg[b] += 1;
    }
    let mut order = Vec::with_capacity(count);
    let mut ready: std::collections::BTreeSet<usize> = (0..count).filter(|&c| indeg[c] == 0).collect();
    while let Some(c) = ready.pop_first() {
        order.push(c);
        for &(a, b) in &arrows {
            if a == c {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    if order.len() < count {
        return Err(NotAChainGraph::QuotientCycle);
    }
    let mut pos = vec![0; count];
    for (p, &c) in order.iter().enumerate() {
        pos[c] = p;
    }
    Ok(ChainDecomposition {
        components: order
            .iter()
            .map(|&c| ChainComponent {
                nodes: nodes[c],
                kind: kind[c],
            })
            .collect(),
        quotient: arrows.iter().map(|&(a, b)| (pos[a], pos[b])).collect(),
    })
}

/// Replaces every dotted line of a dotted-line graph by a line.
pub fn dg_to_ug(g: &Graph) -> Result<Graph> {
    if !is_dg(g) {
        return Err(Error::ClassViolation("expected a graph with dotted lines only".into()));
    }
    Ok(g.map_kind(EdgeKind::Dotted, EdgeKind::Line))
}
