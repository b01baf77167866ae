//! Rewriting a sampled bounded curvature path as an arc/line path.
//!
//! The input is cut into fragments shorter than 1 and each fragment is
//! replaced by the shortest CSC path between its end poses whose arcs sweep
//! less than pi. Such a replacement is never longer than the fragment and
//! turns by the same amount, so the result keeps the endpoints and class of
//! the input and is no longer than it.

use std::f64::consts::PI;

use crate::dubins::{solve_base, BaseType};
use crate::error::{Error, Result};
use crate::geom::{normalize_angle, CsPath, PathSample, Point, Pose, ProblemInstance};
use crate::homotopy::{class_index_for, principal_delta};

/// Largest allowed spacing between samples, in curvature-normalised units.
pub const MAX_SPACING: f64 = 0.05;
/// Greedy fragment length; fragments must stay shorter than 1.
pub const FRAGMENT_TARGET: f64 = 0.9;

const SPACING_SLACK: f64 = 1e-9;

/// Arc-length samples of a path with curvature at most `kappa`.
///
/// Samples are stored as given; [`SampledPath::validate`] checks them in the
/// frame scaled by `kappa`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledPath {
    pub samples: Vec<PathSample>,
    pub kappa: f64,
}

/// Sample indices `t_0 = 0 < t_1 < ... < t_m = last` cutting a path into
/// fragments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragmentation {
    pub break_indices: Vec<usize>,
}

impl Fragmentation {
    pub fn fragment_count(&self) -> usize {
        self.break_indices.len().saturating_sub(1)
    }
}

impl SampledPath {
    pub fn new(samples: Vec<PathSample>, kappa: f64) -> Self {
        Self { samples, kappa }
    }

    /// Samples of a path given in the curvature-normalised frame.
    pub fn from_cs_path(path: &CsPath, step: f64) -> Self {
        Self::new(path.sample(step), 1.0)
    }

    /// Samples scaled into the unit-curvature frame.
    pub fn working_samples(&self) -> Vec<PathSample> {
        self.samples
            .iter()
            .map(|p| PathSample {
                s: p.s * self.kappa,
                point: p.point * self.kappa,
                heading: p.heading,
            })
            .collect()
    }

    pub fn length(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => b.s - a.s,
            _ => 0.0,
        }
    }

    pub fn start_pose(&self) -> Option<Pose> {
        self.samples.first().map(|p| Pose::at(p.point, p.heading))
    }

    pub fn end_pose(&self) -> Option<Pose> {
        self.samples.last().map(|p| Pose::at(p.point, p.heading))
    }

    /// Signed heading change summed over consecutive samples.
    pub fn total_turning(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| normalize_angle(w[1].heading - w[0].heading))
            .sum()
    }

    /// Class index of the sampled curve from its heading changes.
    pub fn class_index(&self) -> Result<i64> {
        let (Some(a), Some(b)) = (self.samples.first(), self.samples.last()) else {
            return Err(Error::InvalidSamples("no samples".into()));
        };
        class_index_for(self.total_turning(), principal_delta(b.heading - a.heading))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(Error::InvalidCurvatureBound(self.kappa));
        }
        let w = self.working_samples();
        if w.len() < 2 {
            return Err(Error::InvalidSamples(format!("need at least 2 samples, got {}", w.len())));
        }
        if w[0].s.abs() > SPACING_SLACK {
            return Err(Error::InvalidSamples(format!("arc length starts at {}", self.samples[0].s)));
        }
        for (i, p) in w.iter().enumerate() {
            if !(p.s.is_finite() && p.point.is_finite() && p.heading.is_finite()) {
                return Err(Error::InvalidSamples(format!("sample {i} is not finite")));
            }
        }
        let mut max_step: f64 = 0.0;
        for (i, pair) in w.windows(2).enumerate() {
            let ds = pair[1].s - pair[0].s;
            if ds <= 0.0 {
                return Err(Error::InvalidSamples(format!(
                    "arc length not increasing at sample {}",
                    i + 1
                )));
            }
            if ds > MAX_SPACING + SPACING_SLACK {
                return Err(Error::InvalidSamples(format!(
                    "spacing {ds} after sample {i} exceeds {MAX_SPACING}"
                )));
            }
            max_step = max_step.max(ds);
        }
        let limit = 1.0 + 10.0 * max_step;
        for i in 1..w.len() - 1 {
            let dtheta = normalize_angle(w[i].heading - w[i - 1].heading)
                + normalize_angle(w[i + 1].heading - w[i].heading);
            let estimate = (dtheta / (w[i + 1].s - w[i - 1].s)).abs();
            if estimate > limit {
                return Err(Error::CurvatureViolation {
                    index: i,
                    estimate,
                    limit,
                });
            }
        }
        Ok(())
    }
}

/// Greedy cut into the longest fragments of length at most
/// [`FRAGMENT_TARGET`].
pub fn fragment(path: &SampledPath) -> Result<Fragmentation> {
    path.validate()?;
    let w = path.working_samples();
    let last = w.len() - 1;
    let mut breaks = vec![0];
    let mut i = 0;
    while i < last {
        let mut j = i + 1;
        while j < last && w[j + 1].s - w[i].s <= FRAGMENT_TARGET + SPACING_SLACK {
            j += 1;
        }
        breaks.push(j);
        i = j;
    }
    Ok(Fragmentation {
        break_indices: breaks,
    })
}

/// Shortest CSC path from `start` to `end` with every arc sweeping less than
/// pi, in the curvature-normalised frame. Ties go to the earlier base type.
pub fn replace_fragment(start: Pose, end: Pose) -> Result<CsPath> {
    let inst = ProblemInstance::unit(start, end);
    let mut best: Option<CsPath> = None;
    for t in [BaseType::Lsl, BaseType::Rsr, BaseType::Lsr, BaseType::Rsl] {
        for cand in solve_base(&inst, t) {
            let sweeps = cand.sweeps();
            if sweeps[0] >= PI || sweeps[2] >= PI {
                continue;
            }
            if best.as_ref().is_none_or(|b| cand.path.length() < b.length()) {
                best = Some(cand.path);
            }
        }
    }
    best.ok_or(Error::NoReplacement)
}

/// Replaces every fragment and concatenates the replacements. The result is
/// in the curvature-normalised frame.
pub fn normalise(path: &SampledPath) -> Result<CsPath> {
    let frag = fragment(path)?;
    let w = path.working_samples();
    let pose = |i: usize| Pose::at(w[i].point, w[i].heading);
    let mut out = CsPath::new(pose(0));
    for pair in frag.break_indices.windows(2) {
        let piece = replace_fragment(pose(pair[0]), pose(pair[1]))?;
        out.segments.extend(piece.segments);
    }
    Ok(out)
}

/// Positions of the samples, scaled to the curvature-normalised frame.
pub fn working_polyline(path: &SampledPath) -> Vec<Point> {
    path.samples.iter().map(|p| p.point * path.kappa).collect()
}
