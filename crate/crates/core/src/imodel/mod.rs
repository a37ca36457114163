//! Independence models: finite sets of statements `⟨A, B | C⟩` over a
//! fixed ground set.
//!
//! Statements with `A = ∅` or `B = ∅` are always members and never stored.
//! Every other statement is keyed by assigning each ground node one of
//! four roles (outside, in `A`, in `B`, in `C`), so a model over `n` nodes
//! is a bitset over `4ⁿ` codes. `⟨A, B | C⟩` and `⟨B, A | C⟩` are distinct
//! codes; symmetry is an axiom, not a storage convention.

mod axioms;
mod markov;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{fmt_label_set, NodeSet};

pub use axioms::{check_axiom, closure, closure_with, Axiom, Violation};
pub use markov::{
    global_model, global_model_with, markov_equivalent, model_difference, pairwise_statements, satisfies_global,
    GlobalCheck,
};

/// Default node-count bounds for the exponential constructions.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph for which the full separation model is built.
    pub global_model: usize,
    /// Largest ground set for axiom closure. The work per pass grows
    /// roughly like `16ⁿ`.
    pub closure: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            global_model: 7,
            closure: 6,
        }
    }
}

/// An independence statement `⟨A, B | C⟩` with pairwise disjoint sets.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub a: NodeSet,
    pub b: NodeSet,
    pub c: NodeSet,
}

impl Triple {
    pub fn new(a: NodeSet, b: NodeSet, c: NodeSet) -> Result<Triple> {
        if a.intersects(b) || a.intersects(c) || b.intersects(c) {
            return Err(Error::InvalidQuery("statement sets must be pairwise disjoint".into()));
        }
        Ok(Triple { a, b, c })
    }

    pub(crate) fn raw(a: NodeSet, b: NodeSet, c: NodeSet) -> Triple {
        debug_assert!(a.is_disjoint(b) && a.is_disjoint(c) && b.is_disjoint(c));
        Triple { a, b, c }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_empty() || self.b.is_empty()
    }

    pub fn swapped(&self) -> Triple {
        Triple {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }

    pub fn support(&self) -> NodeSet {
        self.a | self.b | self.c
    }

    /// Base-4 code: node `v` contributes digit 1 (A), 2 (B) or 3 (C).
    fn code(&self) -> usize {
        let lo = (self.a | self.c).bits();
        let hi = (self.b | self.c).bits();
        let mut code = 0usize;
        let mut rest = lo | hi;
        while rest != 0 {
            let v = rest.trailing_zeros();
            code |= ((lo >> v & 1) as usize) << (2 * v);
            code |= ((hi >> v & 1) as usize) << (2 * v + 1);
            rest &= rest - 1;
        }
        code
    }

    fn from_code(mut code: usize) -> Triple {
        let (mut a, mut b, mut c) = (0u64, 0u64, 0u64);
        let mut v = 0;
        while code != 0 {
            match code & 3 {
                1 => a |= 1 << v,
                2 => b |= 1 << v,
                3 => c |= 1 << v,
                _ => {}
            }
            code >>= 2;
            v += 1;
        }
        Triple {
            a: NodeSet::from_bits(a),
            b: NodeSet::from_bits(b),
            c: NodeSet::from_bits(c),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct IndependenceModel {
    labels: Vec<String>,
    bits: Vec<u64>,
    len: usize,
}

impl fmt::Debug for IndependenceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndependenceModel")
            .field("labels", &self.labels)
            .field("statements", &self.len)
            .finish()
    }
}

/// Largest ground set a model can be allocated for.
pub const MAX_MODEL_NODES: usize = 16;

impl IndependenceModel {
    /// Model holding only the trivial statements.
    pub fn empty<S: AsRef<str>>(labels: &[S]) -> Result<IndependenceModel> {
        let n = labels.len();
        if n > MAX_MODEL_NODES {
            return Err(Error::SizeLimit {
                what: "independence model",
                actual: n,
                bound: MAX_MODEL_NODES,
            });
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidQuery(format!("duplicate ground label {dup}")));
        }
        let codes = 1usize << (2 * n);
        Ok(IndependenceModel {
            labels,
            bits: vec![0; codes.div_ceil(64)],
            len: 0,
        })
    }

    /// Model containing every disjoint statement over the ground set.
    pub fn full<S: AsRef<str>>(labels: &[S]) -> Result<IndependenceModel> {
        let mut m = IndependenceModel::empty(labels)?;
        for code in 0..1usize << (2 * m.node_count()) {
            m.insert(Triple::from_code(code));
        }
        Ok(m)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground(&self) -> NodeSet {
        NodeSet::full(self.labels.len())
    }

    /// Number of stored (non-trivial) statements.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, t: &Triple) -> bool {
        if t.is_trivial() {
            return true;
        }
        debug_assert!(t.support().is_subset(self.ground()));
        let code = t.code();
        self.bits[code / 64] >> (code % 64) & 1 == 1
    }

    /// Adds a statement. Trivial statements are implicit and never stored.
    /// Returns whether the model grew.
    pub fn insert(&mut self, t: Triple) -> bool {
        if t.is_trivial() {
            return false;
        }
        assert!(t.support().is_subset(self.ground()), "statement outside the ground set");
        let code = t.code();
        let word = &mut self.bits[code / 64];
        let mask = 1u64 << (code % 64);
        if *word & mask != 0 {
            return false;
        }
        *word |= mask;
        self.len += 1;
        true
    }

    /// Stored statements in code order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(Triple::from_code(w * 64 + b))
            })
        })
    }

    pub fn is_subset(&self, other: &IndependenceModel) -> bool {
        self.labels == other.labels && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// First statement (in code order) present in exactly one of the two
    /// models, with a flag telling whether it is in `self`.
    pub fn first_difference(&self, other: &IndependenceModel) -> Option<(Triple, bool)> {
        debug_assert_eq!(self.labels, other.labels);
        self.bits.iter().zip(&other.bits).enumerate().find_map(|(w, (a, b))| {
            let x = a ^ b;
            (x != 0).then(|| {
                let bit = x.trailing_zeros() as usize;
                (Triple::from_code(w * 64 + bit), a >> bit & 1 == 1)
            })
        })
    }

    /// Looks up labels and builds a statement.
    pub fn triple<S: AsRef<str>>(&self, a: &[S], b: &[S], c: &[S]) -> Result<Triple> {
        Triple::new(self.set_of(a)?, self.set_of(b)?, self.set_of(c)?)
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<NodeSet> {
        labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                self.labels
                    .iter()
                    .position(|x| x == l)
                    .map(crate::graph::NodeId::from)
                    .ok_or_else(|| Error::NodeNotFound(l.to_string()))
            })
            .collect()
    }

    pub fn fmt_set(&self, s: NodeSet) -> String {
        fmt_label_set(s.iter().map(|v| self.labels[v.index()].as_str()))
    }

    /// `A | B | C` with sorted comma-joined labels and `-` for `∅`.
    pub fn fmt_triple(&self, t: &Triple) -> String {
        format!("{} | {} | {}", self.fmt_set(t.a), self.fmt_set(t.b), self.fmt_set(t.c))
    }

    /// Keeps the statements not mentioning `m`, over the ground set `V ∖ M`.
    /// Relative node order is preserved.
    pub fn marginalize(&self, m: NodeSet) -> Result<IndependenceModel> {
        if let Some(v) = (m - self.ground()).first() {
            return Err(Error::NodeNotFound(format!("#{}", v.0)));
        }
        let keep: Vec<usize> = (0..self.node_count()).filter(|&v| !m.contains(v.into())).collect();
        let labels: Vec<&str> = keep.iter().map(|&v| self.labels[v].as_str()).collect();
        let mut out = IndependenceModel::empty(&labels)?;
        let remap = |s: NodeSet| -> NodeSet {
            keep.iter()
                .enumerate()
                .filter(|&(_, &v)| s.contains(v.into()))
                .map(|(k, _)| crate::graph::NodeId::from(k))
                .collect()
        };
        for t in self.iter().filter(|t| t.support().is_disjoint(m)) {
            out.insert(Triple::raw(remap(t.a), remap(t.b), remap(t.c)));
        }
        Ok(out)
    }

    /// Same model over the ground labels in `order`, a permutation of the
    /// current labels.
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<IndependenceModel> {
        let mut out = IndependenceModel::empty(order)?;
        if out.node_count() != self.node_count() {
            return Err(Error::InvalidQuery("ground sets differ".into()));
        }
        let map: Vec<crate::graph::NodeId> = self
            .labels
            .iter()
            .map(|l| {
                out.labels
                    .iter()
                    .position(|x| x == l)
                    .map(crate::graph::NodeId::from)
                    .ok_or_else(|| Error::InvalidQuery(format!("ground sets differ at {l}")))
            })
            .collect::<Result<_>>()?;
        let remap = |s: NodeSet| -> NodeSet { s.iter().map(|v| map[v.index()]).collect() };
        for t in self.iter() {
            out.insert(Triple::raw(remap(t.a), remap(t.b), remap(t.c)));
        }
        Ok(out)
    }
}
