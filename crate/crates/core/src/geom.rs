//! Plane geometry kernel: poses, adjacent circles, unit arcs and line
//! segments, and the cs paths built from them.
//!
//! Every path in this crate lives in the curvature-normalised frame, where
//! the curvature bound is 1 and arcs have unit radius. [`ProblemInstance`]
//! carries the original bound and converts between the two frames.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometric tolerance for tangency, continuity and degeneracy tests.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at `angle` radians from the x axis.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, s)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by +pi/2.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn mirror(self) -> Self {
        Self::new(self.x, -self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Maps an angle into (-pi, pi].
pub fn normalize_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Maps an angle into [0, 2pi).
pub fn mod_two_pi(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Arc sweep reduced into [0, 2pi); values within [`EPS`] of a full turn
/// collapse to zero so rounding never manufactures a spurious loop.
pub fn canonical_sweep(angle: f64) -> f64 {
    let r = mod_two_pi(angle);
    if !(EPS..=TAU - EPS).contains(&r) {
        0.0
    } else {
        r
    }
}

/// A point of the plane with a unit tangent direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    /// Heading in radians, always in (-pi, pi].
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn at(position: Point, theta: f64) -> Self {
        Self::new(position.x, position.y, theta)
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }

    pub fn direction(&self) -> Point {
        Point::from_angle(self.theta)
    }

    /// Position gap plus heading gap to `other`.
    pub fn distance_to(&self, other: &Pose) -> f64 {
        self.position().dist(other.position()) + normalize_angle(self.theta - other.theta).abs()
    }

    pub fn approx_eq(&self, other: &Pose, tol: f64) -> bool {
        self.distance_to(other) <= tol
    }

    pub fn transformed(&self, rotation: f64, translation: Point) -> Pose {
        Pose::at(self.position().rotate(rotation) + translation, self.theta + rotation)
    }

    /// Reflection across the x axis.
    pub fn mirrored(&self) -> Pose {
        Pose::new(self.x, -self.y, -self.theta)
    }

    pub fn scaled(&self, factor: f64) -> Pose {
        Pose::new(self.x * factor, self.y * factor, self.theta)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.theta.is_finite()
    }
}

impl fmt::Display for Pose {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.theta)
    }
}

/// Two endpoint poses and the curvature bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemInstance {
    pub start: Pose,
    pub end: Pose,
    pub kappa: f64,
}

impl ProblemInstance {
    pub fn new(start: Pose, end: Pose, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidCurvatureBound(kappa));
        }
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::PreconditionViolation("non-finite pose".into()));
        }
        Ok(Self { start, end, kappa })
    }

    /// Instance with curvature bound 1.
    pub fn unit(start: Pose, end: Pose) -> Self {
        Self {
            start,
            end,
            kappa: 1.0,
        }
    }

    /// Endpoint poses in the curvature-normalised frame.
    pub fn working_poses(&self) -> (Pose, Pose) {
        (self.start.scaled(self.kappa), self.end.scaled(self.kappa))
    }

    /// Converts a length measured in the working frame to original units.
    pub fn to_world_length(&self, length: f64) -> f64 {
        length / self.kappa
    }

    pub fn transformed(&self, rotation: f64, translation: Point) -> Self {
        Self {
            start: self.start.transformed(rotation, translation),
            end: self.end.transformed(rotation, translation),
            kappa: self.kappa,
        }
    }

    pub fn mirrored(&self) -> Self {
        Self {
            start: self.start.mirrored(),
            end: self.end.mirrored(),
            kappa: self.kappa,
        }
    }

    /// The same instance moved so that the start pose is (0, 0, 0).
    pub fn canonical(&self) -> Self {
        let rotation = -self.start.theta;
        let shifted = self.transformed(0.0, -self.start.position());
        shifted.transformed(rotation, Point::ORIGIN)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    /// +1 for counterclockwise, -1 for clockwise.
    pub fn sign(self) -> f64 {
        match self {
            Turn::Left => 1.0,
            Turn::Right => -1.0,
        }
    }

    pub fn flipped(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Turn::Left => 'L',
            Turn::Right => 'R',
        }
    }
}

/// Centre of the unit circle tangent to `pose` on the given side.
pub fn turning_center(pose: &Pose, turn: Turn) -> Point {
    pose.position() + pose.direction().perp() * turn.sign()
}

/// Centres of the left and right adjacent circles of a pose.
pub fn adjacent_circles(pose: &Pose) -> (Point, Point) {
    (
        turning_center(pose, Turn::Left),
        turning_center(pose, Turn::Right),
    )
}

/// The four adjacent circle centres of an instance, in the working frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdjacentCircles {
    pub cl_x: Point,
    pub cr_x: Point,
    pub cl_y: Point,
    pub cr_y: Point,
}

impl AdjacentCircles {
    pub fn of(inst: &ProblemInstance) -> Self {
        let (start, end) = inst.working_poses();
        let (cl_x, cr_x) = adjacent_circles(&start);
        let (cl_y, cr_y) = adjacent_circles(&end);
        Self {
            cl_x,
            cr_x,
            cl_y,
            cr_y,
        }
    }

    pub fn as_array(&self) -> [Point; 4] {
        [self.cl_x, self.cr_x, self.cl_y, self.cr_y]
    }
}

/// Segment letter as used in path words and the cs path file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    L,
    R,
    S,
}

impl SegmentKind {
    pub fn letter(self) -> char {
        match self {
            SegmentKind::L => 'L',
            SegmentKind::R => 'R',
            SegmentKind::S => 'S',
        }
    }

    pub fn curvature(self) -> f64 {
        match self {
            SegmentKind::L => 1.0,
            SegmentKind::R => -1.0,
            SegmentKind::S => 0.0,
        }
    }

    pub fn from_turn(turn: Turn) -> Self {
        match turn {
            Turn::Left => SegmentKind::L,
            Turn::Right => SegmentKind::R,
        }
    }
}

/// A unit-radius arc or a line segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment {
    Arc {
        center: Point,
        turn: Turn,
        /// Polar angle of the arc's first point about `center`.
        start_angle: f64,
        /// Non-negative; may exceed 2pi when the arc carries full loops.
        sweep: f64,
    },
    Line {
        from: Point,
        to: Point,
    },
}

impl Segment {
    /// Arc leaving `pose` on the `turn` side.
    pub fn arc_from(pose: &Pose, turn: Turn, sweep: f64) -> Segment {
        let center = turning_center(pose, turn);
        Segment::Arc {
            center,
            turn,
            start_angle: (pose.position() - center).angle(),
            sweep: sweep.max(0.0),
        }
    }

    pub fn line_from(pose: &Pose, length: f64) -> Segment {
        let from = pose.position();
        Segment::Line {
            from,
            to: from + pose.direction() * length.max(0.0),
        }
    }

    pub fn kind(&self) -> SegmentKind {
        match self {
            Segment::Arc { turn, .. } => SegmentKind::from_turn(*turn),
            Segment::Line { .. } => SegmentKind::S,
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Segment::Arc { sweep, .. } => *sweep,
            Segment::Line { from, to } => from.dist(*to),
        }
    }

    pub fn curvature(&self) -> f64 {
        self.kind().curvature()
    }

    /// Signed heading change along the segment.
    pub fn turning(&self) -> f64 {
        match self {
            Segment::Arc { turn, sweep, .. } => turn.sign() * sweep,
            Segment::Line { .. } => 0.0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.length() <= EPS
    }

    /// Position and unnormalised heading at arclength `u` from the start,
    /// given the heading the segment starts with.
    pub fn point_at(&self, u: f64, start_heading: f64) -> (Point, f64) {
        match *self {
            Segment::Arc {
                center,
                turn,
                start_angle,
                ..
            } => {
                let a = start_angle + turn.sign() * u;
                (center + Point::from_angle(a), start_heading + turn.sign() * u)
            }
            Segment::Line { from, to } => {
                let len = from.dist(to);
                let dir = if len > 0.0 {
                    (to - from) * (1.0 / len)
                } else {
                    Point::from_angle(start_heading)
                };
                (from + dir * u, start_heading)
            }
        }
    }

    pub fn start_point(&self) -> Point {
        match *self {
            Segment::Arc {
                center,
                start_angle,
                ..
            } => center + Point::from_angle(start_angle),
            Segment::Line { from, .. } => from,
        }
    }

    pub fn end_point(&self) -> Point {
        match *self {
            Segment::Arc {
                center,
                turn,
                start_angle,
                sweep,
            } => center + Point::from_angle(start_angle + turn.sign() * sweep),
            Segment::Line { to, .. } => to,
        }
    }

    /// Heading at the first point, or `None` for a zero-length line.
    pub fn start_heading(&self) -> Option<f64> {
        match *self {
            Segment::Arc {
                turn, start_angle, ..
            } => Some(normalize_angle(start_angle + turn.sign() * FRAC_PI_2)),
            Segment::Line { from, to } => {
                if from.dist(to) > EPS {
                    Some((to - from).angle())
                } else {
                    None
                }
            }
        }
    }

    pub fn transformed(&self, rotation: f64, translation: Point) -> Segment {
        match *self {
            Segment::Arc {
                center,
                turn,
                start_angle,
                sweep,
            } => Segment::Arc {
                center: center.rotate(rotation) + translation,
                turn,
                start_angle: start_angle + rotation,
                sweep,
            },
            Segment::Line { from, to } => Segment::Line {
                from: from.rotate(rotation) + translation,
                to: to.rotate(rotation) + translation,
            },
        }
    }

    pub fn mirrored(&self) -> Segment {
        match *self {
            Segment::Arc {
                center,
                turn,
                start_angle,
                sweep,
            } => Segment::Arc {
                center: center.mirror(),
                turn: turn.flipped(),
                start_angle: -start_angle,
                sweep,
            },
            Segment::Line { from, to } => Segment::Line {
                from: from.mirror(),
                to: to.mirror(),
            },
        }
    }
}

/// One sample of a path: arclength, position, and continuous heading.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSample {
    pub s: f64,
    pub point: Point,
    pub heading: f64,
}

/// A C1 concatenation of unit arcs and line segments.
#[derive(Clone, Debug, PartialEq)]
pub struct CsPath {
    pub start: Pose,
    pub segments: Vec<Segment>,
}

impl CsPath {
    pub fn new(start: Pose) -> Self {
        Self {
            start,
            segments: Vec::new(),
        }
    }

    /// Builds a path from `(kind, length)` pieces; arcs use the length as sweep.
    pub fn from_pieces(start: Pose, pieces: &[(SegmentKind, f64)]) -> Self {
        let mut path = Self::new(start);
        for &(kind, length) in pieces {
            match kind {
                SegmentKind::L => path.push_arc(Turn::Left, length),
                SegmentKind::R => path.push_arc(Turn::Right, length),
                SegmentKind::S => path.push_line(length),
            }
        }
        path
    }

    /// End pose without continuity validation.
    pub fn tip(&self) -> Pose {
        let mut heading = self.start.theta;
        let mut pos = self.start.position();
        for seg in &self.segments {
            heading += seg.turning();
            pos = seg.end_point();
        }
        Pose::at(pos, heading)
    }

    pub fn push_arc(&mut self, turn: Turn, sweep: f64) {
        let tip = self.tip();
        self.segments.push(Segment::arc_from(&tip, turn, sweep));
    }

    pub fn push_line(&mut self, length: f64) {
        let tip = self.tip();
        self.segments.push(Segment::line_from(&tip, length));
    }

    /// Checks every junction (including the start pose) for C1 continuity.
    pub fn validate(&self) -> Result<()> {
        let mut heading = self.start.theta;
        let mut pos = self.start.position();
        for (index, seg) in self.segments.iter().enumerate() {
            let mut gap = seg.start_point().dist(pos);
            if let Some(h) = seg.start_heading() {
                gap += normalize_angle(h - heading).abs();
            }
            if gap.is_nan() || gap > EPS * (1.0 + pos.norm()) {
                return Err(Error::ContinuityViolation { index, gap });
            }
            heading += seg.turning();
            pos = seg.end_point();
        }
        Ok(())
    }

    /// Pose reached after traversing every segment.
    pub fn end_pose(&self) -> Result<Pose> {
        self.validate()?;
        Ok(self.tip())
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(Segment::length).sum()
    }

    /// Number of segments longer than [`EPS`].
    pub fn complexity(&self) -> usize {
        self.segments.iter().filter(|s| !s.is_degenerate()).count()
    }

    /// Signed sum of arc sweeps.
    pub fn total_turning(&self) -> f64 {
        self.segments.iter().map(Segment::turning).sum()
    }

    /// Letter word of the non-degenerate segments, e.g. `"LSR"`.
    pub fn word(&self) -> String {
        self.segments
            .iter()
            .filter(|s| !s.is_degenerate())
            .map(|s| s.kind().letter())
            .collect()
    }

    /// Samples equally spaced in arclength with spacing at most `step`,
    /// including both endpoints.
    pub fn sample(&self, step: f64) -> Vec<PathSample> {
        assert!(step > 0.0, "sample step must be positive");
        let total = self.length();
        let count = ((total / step).ceil() as usize).max(1);
        let mut out = Vec::with_capacity(count + 1);
        let mut seg_idx = 0;
        let mut seg_start_s = 0.0;
        let mut seg_heading = self.start.theta;
        for k in 0..=count {
            let s = if k == count {
                total
            } else {
                total * k as f64 / count as f64
            };
            while seg_idx + 1 < self.segments.len()
                && s > seg_start_s + self.segments[seg_idx].length()
            {
                seg_start_s += self.segments[seg_idx].length();
                seg_heading += self.segments[seg_idx].turning();
                seg_idx += 1;
            }
            let (point, heading) = match self.segments.get(seg_idx) {
                Some(seg) => {
                    let u = (s - seg_start_s).clamp(0.0, seg.length());
                    seg.point_at(u, seg_heading)
                }
                None => (self.start.position(), self.start.theta),
            };
            out.push(PathSample { s, point, heading });
        }
        out
    }

    /// Rotation about the origin followed by a translation.
    pub fn transformed(&self, rotation: f64, translation: Point) -> CsPath {
        CsPath {
            start: self.start.transformed(rotation, translation),
            segments: self
                .segments
                .iter()
                .map(|s| s.transformed(rotation, translation))
                .collect(),
        }
    }

    /// Reflection across the x axis; swaps every L and R.
    pub fn mirrored(&self) -> CsPath {
        CsPath {
            start: self.start.mirrored(),
            segments: self.segments.iter().map(Segment::mirrored).collect(),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &CsPath) -> Result<CsPath> {
        let tip = self.end_pose()?;
        if !tip.approx_eq(&other.start, EPS * (1.0 + tip.position().norm())) {
            return Err(Error::ContinuityViolation {
                index: self.segments.len(),
                gap: tip.distance_to(&other.start),
            });
        }
        let mut joined = self.clone();
        joined.segments.extend(other.segments.iter().copied());
        joined.validate()?;
        Ok(joined)
    }

    /// Inserts a full `turns`-fold loop on the `turn` side at junction
    /// `index` (0 = before the first segment).
    pub fn with_loop_at(&self, index: usize, turn: Turn, turns: u32) -> CsPath {
        let mut prefix = CsPath::new(self.start);
        prefix.segments.extend_from_slice(&self.segments[..index]);
        let pose = prefix.tip();
        let mut out = prefix;
        out.segments
            .push(Segment::arc_from(&pose, turn, TAU * turns as f64));
        out.segments.extend_from_slice(&self.segments[index..]);
        out
    }
}
