//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use homotopy_dubins::normalise::SampledPath;
use homotopy_dubins::{PathSample, Point, Pose, ProblemInstance};
use rand::Rng;

pub fn random_pose<R: Rng>(rng: &mut R, half_width: f64) -> Pose {
    Pose::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-PI..PI),
    )
}

pub fn random_instance<R: Rng>(rng: &mut R, half_width: f64) -> ProblemInstance {
    ProblemInstance::unit(random_pose(rng, half_width), random_pose(rng, half_width))
}

/// Samples of the curve with heading `theta(s)` from `start`, positions
/// integrated by composite Simpson on each sample interval.
pub fn integrate_heading(start: Point, length: f64, spacing: f64, theta: impl Fn(f64) -> f64) -> SampledPath {
    let count = (length / spacing).ceil() as usize;
    let panels = 8;
    let mut samples = Vec::with_capacity(count + 1);
    let mut pos = start;
    let mut prev_s = 0.0;
    samples.push(PathSample {
        s: 0.0,
        point: pos,
        heading: theta(0.0),
    });
    for k in 1..=count {
        let s = length * k as f64 / count as f64;
        let h = (s - prev_s) / panels as f64;
        let mut acc = Point::ORIGIN;
        for p in 0..panels {
            let a = prev_s + h * p as f64;
            let f = |t: f64| Point::from_angle(theta(t));
            acc = acc + (f(a) + f(a + 0.5 * h) * 4.0 + f(a + h)) * (h / 6.0);
        }
        pos = pos + acc;
        prev_s = s;
        samples.push(PathSample {
            s,
            point: pos,
            heading: theta(s),
        });
    }
    SampledPath::new(samples, 1.0)
}

/// Open curve whose curvature is a sum of three sines with total amplitude
/// at most 0.95, so it is smooth and strictly inside the curvature bound.
pub fn random_smooth_path<R: Rng>(rng: &mut R) -> SampledPath {
    let length = rng.gen_range(2.0..15.0);
    let mut amp: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..1.0)).collect();
    let total: f64 = amp.iter().sum();
    let scale = rng.gen_range(0.3..0.95) / total;
    amp.iter_mut().for_each(|a| *a *= scale);
    let freq: Vec<f64> = (0..3).map(|_| rng.gen_range(0.2..3.0)).collect();
    let phase: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..TAU)).collect();
    let theta0 = rng.gen_range(-PI..PI);
    let start = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let theta = move |s: f64| {
        theta0
            + (0..3)
                .map(|j| amp[j] / freq[j] * (phase[j].cos() - (freq[j] * s + phase[j]).cos()))
                .sum::<f64>()
    };
    integrate_heading(start, length, 0.02, theta)
}

/// Closed curve turning once, heading `2pi s / L + b sin(2pi m s / L)`;
/// the length keeps the curvature at most 1.
pub fn random_closed_path<R: Rng>(rng: &mut R) -> SampledPath {
    let m = rng.gen_range(2..=4) as f64;
    let b = rng.gen_range(0.0..0.3);
    let length = TAU * (1.0 + b * m) * rng.gen_range(1.0..1.5);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let theta0 = rng.gen_range(-PI..PI);
    let start = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let theta = move |s: f64| theta0 + sign * (TAU * s / length + b * (TAU * m * s / length).sin());
    integrate_heading(start, length, 0.02, theta)
}
