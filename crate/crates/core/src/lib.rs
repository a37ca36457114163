//! Exact engine for graphical independence models over graphs with lines,
//! arrows, arcs and dotted lines.
//!
//! * [`graph`]: graphs, walks, sections, anteriors, cycle predicates.
//! * [`classify`]: subclass membership and chain components.
//! * [`separation`]: walk-based separation and independent oracles.
//! * [`imodel`]: independence models, axioms, closure, Markov properties.
//! * [`maximality`]: primitive inducing walks and maximalization.
//! * [`generators`]: seeded random and exhaustive graph generation.
//! * [`format`]: text formats for graphs and models.

pub mod classify;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod imodel;
pub mod maximality;
pub mod separation;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeKind, Graph, Mark, NodeId, NodeSet, Walk};
