//! Monochromatic-subgraph detection: subgraph search, path utilities, and
//! the constructive path extractors for grids and universal outerplanar graphs.

pub mod crossing;
pub mod paths;
pub mod search;
pub mod uop;

pub use crossing::{boundary_arcs, crossing_path, verify_crossing, CrossingPath, BLUE, RED};
pub use paths::{is_mono_path, longest_mono_path, LongestPath};
pub use search::{
    enumerate_c4s, enumerate_copies, find_copies, find_in_view, find_mono_copy, HostView, Pattern,
    SearchOutcome, SearchStats,
};
pub use uop::{uop_extract_path, UopEdgeState, UopMethod, UopPath};
