//! Linear-forest partitions, bounded out-degree orientations, the explicit
//! avoidance colorings built from them, and the pattern classifier.

pub mod classify;
pub mod coloring;
pub mod orient;
pub mod partition;

pub use classify::{classify, ClassificationReport, KVerdict, Verdict};
pub use coloring::{
    avoidance_coloring, check_rules, coloring_avoid_t1, coloring_avoid_t2, coloring_c3,
    coloring_c4, AvoidanceColoring, EdgeRule, Provenance, Scheme,
};
pub use orient::bounded_outdegree_orientation;
pub use partition::{outerplanar_linear_forest_partition, poh_linear_forest_partition};
