//! Ground truth at desk scale: exact cms by search, the fractional
//! chromatic index by an exact LP, and upper bounds.

mod bounds;
mod lp;
mod search;

pub use bounds::{cms_upper_bound_fractional, cms_upper_bound_subgraph, SubgraphBounds};
pub use lp::{fractional_chromatic_index, maximal_matchings, FractionalColoring, MATCHING_EDGE_CAP};
pub use search::{exact_cms, feasible_at, CmsSearch, ExactCms};
