//! Cyclic matching sequenceability of graphs: edge orderings, exact
//! oracles and lower-bound constructions.

pub mod coloring;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod ordering;
pub mod partition;
pub mod sequencer;
pub mod two_regular;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph};
pub use ordering::EdgeOrdering;
