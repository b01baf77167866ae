//! Turning numbers, class indices, and proximity conditions of endpoint
//! configurations.
//!
//! The class index of a path is `n = (total turning - delta) / 2pi`, where
//! `delta` is the principal value in (-pi, pi] of the heading change. Two
//! paths with the same endpoints and different indices lie in different
//! connected components of the space of bounded curvature paths.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dubins::all_base_candidates;
use crate::error::{Error, Result};
use crate::geom::{normalize_angle, AdjacentCircles, CsPath, ProblemInstance, SegmentKind, EPS};
use crate::intersect::is_embedded;
use crate::oracle::{escape_search, EscapeBudget};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningData {
    /// Signed sum of arc sweeps (left positive).
    pub total_turning: f64,
    /// End heading minus start heading, in (-pi, pi].
    pub principal_delta: f64,
    pub class_index: i64,
}

/// Principal value of a heading change. Values within [`EPS`] of -pi are
/// read as pi so that rounding cannot split one tie across two classes.
pub fn principal_delta(angle: f64) -> f64 {
    let d = normalize_angle(angle);
    if d < -PI + EPS {
        PI
    } else {
        d
    }
}

/// Class index of a path with total turning `total` and principal heading
/// change `delta`.
pub fn class_index_for(total: f64, delta: f64) -> Result<i64> {
    let ratio = (total - delta) / TAU;
    let n = ratio.round();
    if (ratio - n).abs() * TAU > 1e-6 {
        return Err(Error::NonIntegralTurning(total));
    }
    Ok(n as i64)
}

pub fn turning_data(path: &CsPath) -> Result<TurningData> {
    let end = path.end_pose()?;
    let total_turning = path.total_turning();
    let principal_delta = principal_delta(end.theta - path.start.theta);
    let class_index = class_index_for(total_turning, principal_delta)?;
    Ok(TurningData {
        total_turning,
        principal_delta,
        class_index,
    })
}

pub fn class_of(path: &CsPath) -> Result<i64> {
    Ok(turning_data(path)?.class_index)
}

/// Which of the four distance conditions on same-side adjacent circles holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RawCondition {
    I,
    II,
    III,
    IV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProximityLabel {
    A,
    B,
    C,
    D,
}

impl fmt::Display for RawCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for ProximityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProximityReport {
    /// Distance between the left adjacent circle centres.
    pub d_ll: f64,
    /// Distance between the right adjacent circle centres.
    pub d_rr: f64,
    pub raw_condition: RawCondition,
    pub label: ProximityLabel,
    /// Set when the C/D split came from [`has_embedded_class`].
    pub d_heuristic: bool,
}

/// Threshold on same-side centre distances.
pub const PROXIMITY_THRESHOLD: f64 = 4.0;

pub fn raw_condition(inst: &ProblemInstance) -> (f64, f64, RawCondition) {
    let c = AdjacentCircles::of(inst);
    let d_ll = c.cl_x.dist(c.cl_y);
    let d_rr = c.cr_x.dist(c.cr_y);
    let far_l = d_ll >= PROXIMITY_THRESHOLD;
    let far_r = d_rr >= PROXIMITY_THRESHOLD;
    let cond = match (far_l, far_r) {
        (true, true) => RawCondition::I,
        (false, true) => RawCondition::II,
        (true, false) => RawCondition::III,
        (false, false) => RawCondition::IV,
    };
    (d_ll, d_rr, cond)
}

pub fn classify_proximity(inst: &ProblemInstance) -> ProximityReport {
    let (d_ll, d_rr, raw_condition) = raw_condition(inst);
    let (label, d_heuristic) = match raw_condition {
        RawCondition::I => (ProximityLabel::A, false),
        RawCondition::II | RawCondition::III => (ProximityLabel::B, false),
        RawCondition::IV => {
            let embedded = has_embedded_class(inst).expect("condition IV holds");
            let label = if embedded {
                ProximityLabel::D
            } else {
                ProximityLabel::C
            };
            (label, true)
        }
    };
    ProximityReport {
        d_ll,
        d_rr,
        raw_condition,
        label,
        d_heuristic,
    }
}

/// Heuristic test for a homotopy class of embedded paths under condition IV.
///
/// Reports `true` when some non-empty, loop-free base path is embedded and a
/// bounded continuous-deformation search inside its class fails to stretch
/// it by more than 2pi. This is a falsifiable stand-in, not a proof: a
/// `false` answer is certain only when an escape was actually found.
pub fn has_embedded_class(inst: &ProblemInstance) -> Result<bool> {
    has_embedded_class_with(inst, &EscapeBudget::default())
}

pub fn has_embedded_class_with(inst: &ProblemInstance, budget: &EscapeBudget) -> Result<bool> {
    let (_, _, cond) = raw_condition(inst);
    if cond != RawCondition::IV {
        return Err(Error::PreconditionViolation(format!(
            "embedded-class test needs condition IV, instance satisfies {cond}"
        )));
    }
    let canonical = inst.canonical();
    let (start, end) = canonical.working_poses();
    for cand in all_base_candidates(&canonical) {
        if cand.path.length() <= EPS || !is_embedded(&cand.path) {
            continue;
        }
        let mut kinds = [SegmentKind::S; 3];
        let mut lengths = [0.0; 3];
        for (i, seg) in cand.path.segments.iter().enumerate() {
            kinds[i] = seg.kind();
            lengths[i] = seg.length();
        }
        let outcome = escape_search(start, end, &kinds, &lengths, budget);
        if !outcome.escaped {
            return Ok(true);
        }
    }
    Ok(false)
}
