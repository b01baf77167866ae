//! JSON formats for sampled paths and arc/line paths.
//!
//! A sampled path is an array of `{s, x, y, theta}` records in original
//! units. An arc/line path is `{kappa, start: {x, y, theta}, segments}` where
//! each segment is `{kind: "L" | "R", sweep}` or `{kind: "S", length}`;
//! positions and line lengths are in original units, sweeps in radians.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{CsPath, PathSample, Point, Pose, SegmentKind};
use crate::normalise::SampledPath;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoseRecord {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SegmentRecord {
    L { sweep: f64 },
    R { sweep: f64 },
    S { length: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsPathRecord {
    pub kappa: f64,
    pub start: PoseRecord,
    pub segments: Vec<SegmentRecord>,
}

pub fn parse_sampled_path(json: &str, kappa: f64) -> Result<SampledPath> {
    let records: Vec<SampleRecord> =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let samples = records
        .into_iter()
        .map(|r| PathSample {
            s: r.s,
            point: Point::new(r.x, r.y),
            heading: r.theta,
        })
        .collect();
    Ok(SampledPath::new(samples, kappa))
}

pub fn sampled_path_to_json(path: &SampledPath) -> String {
    let records: Vec<SampleRecord> = path
        .samples
        .iter()
        .map(|p| SampleRecord {
            s: p.s,
            x: p.point.x,
            y: p.point.y,
            theta: p.heading,
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("plain records serialise")
}

impl CsPathRecord {
    /// Record of a path given in the curvature-normalised frame.
    pub fn from_path(path: &CsPath, kappa: f64) -> Self {
        let start = path.start.scaled(1.0 / kappa);
        let segments = path
            .segments
            .iter()
            .map(|seg| match seg.kind() {
                SegmentKind::L => SegmentRecord::L { sweep: seg.length() },
                SegmentKind::R => SegmentRecord::R { sweep: seg.length() },
                SegmentKind::S => SegmentRecord::S {
                    length: seg.length() / kappa,
                },
            })
            .collect();
        Self {
            kappa,
            start: PoseRecord {
                x: start.x,
                y: start.y,
                theta: start.theta,
            },
            segments,
        }
    }

    /// Path in the curvature-normalised frame.
    pub fn to_path(&self) -> Result<CsPath> {
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(Error::InvalidCurvatureBound(self.kappa));
        }
        let pieces: Vec<(SegmentKind, f64)> = self
            .segments
            .iter()
            .map(|s| match *s {
                SegmentRecord::L { sweep } => (SegmentKind::L, sweep),
                SegmentRecord::R { sweep } => (SegmentKind::R, sweep),
                SegmentRecord::S { length } => (SegmentKind::S, length * self.kappa),
            })
            .collect();
        if pieces.iter().any(|(_, l)| !(l.is_finite() && *l >= 0.0)) {
            return Err(Error::Parse("segment sizes must be finite and non-negative".into()));
        }
        let start = Pose::new(self.start.x, self.start.y, self.start.theta).scaled(self.kappa);
        Ok(CsPath::from_pieces(start, &pieces))
    }
}

pub fn cs_path_to_json(path: &CsPath, kappa: f64) -> String {
    serde_json::to_string_pretty(&CsPathRecord::from_path(path, kappa)).expect("plain records serialise")
}

pub fn parse_cs_path(json: &str) -> Result<(CsPath, f64)> {
    let rec: CsPathRecord = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((rec.to_path()?, rec.kappa))
}
