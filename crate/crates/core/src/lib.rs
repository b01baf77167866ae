//! Shortest bounded curvature paths in every homotopy class.
//!
//! Paths are built from unit-radius arcs and straight segments after scaling
//! the plane by the curvature bound. [`minimiser::minimise_in_class`] returns
//! the shortest path whose turning number has a prescribed class index,
//! [`normalise::normalise`] rewrites a sampled curve as an arc/line path of
//! no greater length, and [`oracle`] holds independent brute-force checks.

pub mod dubins;
pub mod error;
pub mod geom;
pub mod homotopy;
pub mod intersect;
pub mod io;
pub mod minimiser;
pub mod normalise;
pub mod oracle;

pub use dubins::{all_base_candidates, dubins_minimum, solve_base, BaseCandidate, BaseType, CccVariant};
pub use error::{Error, Result};
pub use geom::{
    adjacent_circles, AdjacentCircles, CsPath, PathSample, Point, Pose, ProblemInstance, Segment,
    SegmentKind, Turn, EPS,
};
pub use homotopy::{
    class_of, classify_proximity, has_embedded_class, turning_data, ProximityLabel,
    ProximityReport, RawCondition, TurningData,
};
pub use minimiser::{
    class_length_profile, enumerate_candidates, minimise_in_class, LoopedCandidate,
    MinimiserResult, Placement,
};
pub use normalise::{fragment, normalise, replace_fragment, Fragmentation, SampledPath};
