//! Length lower bounds used as independent checks: the radial bound for
//! paths outside a unit disk and the 2pi bound for loops.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geom::{normalize_angle, CsPath, Point, EPS};
use crate::intersect::{first_self_intersection, polyline_first_self_intersection};

const SAMPLE_STEP: f64 = 0.01;
const LOOP_TOL: f64 = 1e-6;

/// Compares the path length with the polar angle it sweeps about `origin`.
/// The path must stay at distance at least 1 from `origin`.
pub fn check_radial_bound(path: &CsPath, origin: Point) -> Result<bool> {
    let samples = path.sample(SAMPLE_STEP);
    let mut swept = 0.0;
    let mut prev: Option<f64> = None;
    for (k, s) in samples.iter().enumerate() {
        let rel = s.point - origin;
        if rel.norm() < 1.0 - EPS {
            return Err(Error::PreconditionViolation(format!(
                "sample {k} at radius {} < 1",
                rel.norm()
            )));
        }
        let angle = rel.angle();
        if let Some(p) = prev {
            swept += normalize_angle(angle - p);
        }
        prev = Some(angle);
    }
    Ok(path.length() >= swept.abs() - 1e-9)
}

/// Polar angle swept about `origin`, for reporting.
pub fn swept_angle(path: &CsPath, origin: Point) -> f64 {
    let samples = path.sample(SAMPLE_STEP);
    samples
        .windows(2)
        .map(|w| normalize_angle((w[1].point - origin).angle() - (w[0].point - origin).angle()))
        .sum::<f64>()
        .abs()
}

/// Length of the loop cut off by the first self intersection.
pub fn loop_length(path: &CsPath) -> Result<f64> {
    first_self_intersection(path)
        .map(|x| x.loop_length())
        .ok_or(Error::NoSelfIntersection)
}

/// True when the first loop of the path is at least 2pi long.
pub fn check_loop_bound(path: &CsPath) -> Result<bool> {
    Ok(loop_length(path)? >= TAU - LOOP_TOL)
}

/// Same check for a sampled curve given as a polyline.
pub fn check_loop_bound_polyline(points: &[Point]) -> Result<bool> {
    let (s1, s2) = polyline_first_self_intersection(points).ok_or(Error::NoSelfIntersection)?;
    Ok(s2 - s1 >= TAU - LOOP_TOL)
}
