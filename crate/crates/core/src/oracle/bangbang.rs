//! Piecewise constant curvature paths parameterised by piece lengths, and
//! the endpoint map with its Jacobian.

use crate::geom::{CsPath, Point, Pose, SegmentKind};

pub const MAX_PIECES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub kind: SegmentKind,
    pub length: f64,
}

/// A path whose curvature takes values in {-1, 0, +1} on consecutive pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct BangBangPath {
    pub start: Pose,
    pub pieces: Vec<Piece>,
}

impl BangBangPath {
    pub fn new(start: Pose, kinds: &[SegmentKind], lengths: &[f64]) -> Self {
        Self {
            start,
            pieces: kinds
                .iter()
                .zip(lengths)
                .map(|(&kind, &length)| Piece { kind, length })
                .collect(),
        }
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length).sum()
    }

    pub fn to_cs_path(&self) -> CsPath {
        let pieces: Vec<(SegmentKind, f64)> =
            self.pieces.iter().map(|p| (p.kind, p.length)).collect();
        CsPath::from_pieces(self.start, &pieces)
    }

    /// Word of the pieces with positive length.
    pub fn pattern(&self) -> String {
        self.pieces
            .iter()
            .filter(|p| p.length > 0.0)
            .map(|p| p.kind.letter())
            .collect()
    }
}

/// Endpoint constraint of a fixed pattern: reach `target` having turned by
/// exactly `turning`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EndpointMap<'a> {
    pub start: Pose,
    pub target: Point,
    pub turning: f64,
    pub kinds: &'a [SegmentKind],
}

/// Residual `(dx, dy, dturn)` and Jacobian columns, one per piece.
pub(crate) struct Linearization {
    pub residual: [f64; 3],
    pub columns: [[f64; 3]; MAX_PIECES],
}

impl Linearization {
    pub fn residual_norm(&self) -> f64 {
        self.residual[0].hypot(self.residual[1]) + self.residual[2].abs()
    }
}

impl EndpointMap<'_> {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    /// Extending piece i moves the remainder of the path along the tangent
    /// at the end of piece i and rotates it about that point by its
    /// curvature.
    pub fn linearize(&self, lengths: &[f64]) -> Linearization {
        let m = self.kinds.len();
        let mut ends = [Point::ORIGIN; MAX_PIECES];
        let mut tangents = [Point::ORIGIN; MAX_PIECES];
        let mut pos = self.start.position();
        let mut heading = self.start.theta;
        let mut turned = 0.0;
        for i in 0..m {
            let l = lengths[i];
            let k = self.kinds[i].curvature();
            if k == 0.0 {
                let (s, c) = heading.sin_cos();
                pos = pos + Point::new(c, s) * l;
            } else {
                let (s0, c0) = heading.sin_cos();
                let (s1, c1) = (heading + k * l).sin_cos();
                pos = pos + Point::new(s1 - s0, c0 - c1) * (1.0 / k);
                heading += k * l;
                turned += k * l;
            }
            ends[i] = pos;
            tangents[i] = Point::from_angle(heading);
        }
        let mut columns = [[0.0; 3]; MAX_PIECES];
        for i in 0..m {
            let k = self.kinds[i].curvature();
            let lever = (pos - ends[i]).perp() * k;
            let col = tangents[i] + lever;
            columns[i] = [col.x, col.y, k];
        }
        Linearization {
            residual: [pos.x - self.target.x, pos.y - self.target.y, turned - self.turning],
            columns,
        }
    }
}

/// Solves the symmetric 3x3 system `a x = b` by Cholesky with a small
/// diagonal shift; returns `None` when the shifted matrix is not positive.
pub(crate) fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let scale = a[0][0].max(a[1][1]).max(a[2][2]).max(1.0);
    let mut m = a;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += 1e-13 * scale;
    }
    let mut l = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let sum = m[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    let mut y = [0.0; 3];
    for i in 0..3 {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i][k] * y[k];
        }
        y[i] = sum / l[i][i];
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let mut sum = y[i];
        for k in i + 1..3 {
            sum -= l[k][i] * x[k];
        }
        x[i] = sum / l[i][i];
    }
    Some(x)
}
