//! Planar Ramsey toolkit: host-graph generators, monochromatic-subgraph
//! detectors, explicit avoidance colorings, and a certified decision engine
//! for the arrow relation `G ->_k H`.

pub mod arrows;
pub mod avoid;
pub mod constructions;
pub mod detect;
pub mod error;
pub mod format;
pub mod graph;
pub mod sat;

pub use error::{Error, Result};
