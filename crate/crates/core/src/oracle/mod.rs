//! Brute-force checks that never feed the production solver: a bang-bang
//! path search per class and the loop and radial length bounds.

mod bangbang;
mod bounds;
mod search;

pub use bangbang::{BangBangPath, Piece};
pub use bounds::{
    check_loop_bound, check_loop_bound_polyline, check_radial_bound, loop_length, swept_angle,
};
pub use search::{
    curvature_patterns, escape_search, oracle_min_in_class, EscapeBudget, EscapeOutcome,
    OracleBudget, OracleResult,
};
