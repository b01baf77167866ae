//! The six classic base words (LSL, RSR, LSR, RSL, LRL, RLR) and the global
//! length minimiser among them.
//!
//! All arc sweeps produced here lie in [0, 2pi). Extra full turns are the
//! business of [`crate::minimiser`].

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::geom::{
    canonical_sweep, turning_center, CsPath, Pose, ProblemInstance, Segment, SegmentKind, Turn,
    EPS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseType {
    Lsl,
    Rsr,
    Lsr,
    Rsl,
    Lrl,
    Rlr,
}

impl BaseType {
    /// Also the tie-breaking order.
    pub const ALL: [BaseType; 6] = [
        BaseType::Lsl,
        BaseType::Rsr,
        BaseType::Lsr,
        BaseType::Rsl,
        BaseType::Lrl,
        BaseType::Rlr,
    ];

    pub fn kinds(self) -> [SegmentKind; 3] {
        use SegmentKind::*;
        match self {
            BaseType::Lsl => [L, S, L],
            BaseType::Rsr => [R, S, R],
            BaseType::Lsr => [L, S, R],
            BaseType::Rsl => [R, S, L],
            BaseType::Lrl => [L, R, L],
            BaseType::Rlr => [R, L, R],
        }
    }

    pub fn first_turn(self) -> Turn {
        match self {
            BaseType::Lsl | BaseType::Lsr | BaseType::Lrl => Turn::Left,
            _ => Turn::Right,
        }
    }

    pub fn last_turn(self) -> Turn {
        match self {
            BaseType::Lsl | BaseType::Rsl | BaseType::Lrl => Turn::Left,
            _ => Turn::Right,
        }
    }

    pub fn is_ccc(self) -> bool {
        matches!(self, BaseType::Lrl | BaseType::Rlr)
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, BaseType::Lsl | BaseType::Rsr)
    }

    pub fn is_skew(self) -> bool {
        matches!(self, BaseType::Lsr | BaseType::Rsl)
    }

    pub fn symmetric() -> [BaseType; 2] {
        [BaseType::Lsl, BaseType::Rsr]
    }

    pub fn skew() -> [BaseType; 2] {
        [BaseType::Lsr, BaseType::Rsl]
    }

    /// The type obtained by swapping L and R.
    pub fn mirrored(self) -> BaseType {
        match self {
            BaseType::Lsl => BaseType::Rsr,
            BaseType::Rsr => BaseType::Lsl,
            BaseType::Lsr => BaseType::Rsl,
            BaseType::Rsl => BaseType::Lsr,
            BaseType::Lrl => BaseType::Rlr,
            BaseType::Rlr => BaseType::Lrl,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseType::Lsl => "LSL",
            BaseType::Rsr => "RSR",
            BaseType::Lsr => "LSR",
            BaseType::Rsl => "RSL",
            BaseType::Lrl => "LRL",
            BaseType::Rlr => "RLR",
        }
    }

    pub fn order(self) -> usize {
        self as usize
    }
}

impl fmt::Display for BaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which side of the line through the outer centres the CCC middle circle
/// lies on (left of the start-to-end centre direction is `Plus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CccVariant {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseCandidate {
    pub base_type: BaseType,
    /// Geometry in the curvature-normalised frame.
    pub path: CsPath,
    /// Length in original units.
    pub length: f64,
    pub variant: Option<CccVariant>,
}

impl BaseCandidate {
    pub fn sweeps(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (o, s) in out.iter_mut().zip(&self.path.segments) {
            *o = s.length();
        }
        out
    }

    pub fn middle_sweep(&self) -> f64 {
        self.path.segments[1].length()
    }
}

/// All realizable candidates of one base type.
pub fn solve_base(inst: &ProblemInstance, base_type: BaseType) -> Vec<BaseCandidate> {
    let (start, end) = inst.working_poses();
    let paths: Vec<(CsPath, Option<CccVariant>)> = match base_type {
        BaseType::Lsl => csc(&start, &end, Turn::Left, Turn::Left).into_iter().map(|p| (p, None)).collect(),
        BaseType::Rsr => csc(&start, &end, Turn::Right, Turn::Right).into_iter().map(|p| (p, None)).collect(),
        BaseType::Lsr => csc(&start, &end, Turn::Left, Turn::Right).into_iter().map(|p| (p, None)).collect(),
        BaseType::Rsl => csc(&start, &end, Turn::Right, Turn::Left).into_iter().map(|p| (p, None)).collect(),
        BaseType::Lrl => ccc(&start, &end, Turn::Left),
        BaseType::Rlr => ccc(&start, &end, Turn::Right),
    };
    paths
        .into_iter()
        .map(|(path, variant)| BaseCandidate {
            base_type,
            length: inst.to_world_length(path.length()),
            path,
            variant,
        })
        .collect()
}

/// Every realizable candidate of every base type, in tie-break order.
pub fn all_base_candidates(inst: &ProblemInstance) -> Vec<BaseCandidate> {
    BaseType::ALL
        .iter()
        .flat_map(|&t| solve_base(inst, t))
        .collect()
}

/// Shortest base path; CCC words only count when their middle arc
/// exceeds pi.
pub fn dubins_minimum(inst: &ProblemInstance) -> BaseCandidate {
    let mut best: Option<BaseCandidate> = None;
    for cand in all_base_candidates(inst) {
        if cand.base_type.is_ccc() && cand.middle_sweep() <= PI {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => cand.length < b.length - tie_tolerance(b.length),
        };
        if better {
            best = Some(cand);
        }
    }
    best.expect("LSL and RSR are always realizable")
}

pub(crate) fn tie_tolerance(length: f64) -> f64 {
    1e-10 * (1.0 + length.abs())
}

fn csc(start: &Pose, end: &Pose, first: Turn, last: Turn) -> Option<CsPath> {
    let c1 = turning_center(start, first);
    let c2 = turning_center(end, last);
    let v = c2 - c1;
    let d = v.norm();
    let (heading, line) = if first == last {
        if d < EPS {
            (start.theta, 0.0)
        } else {
            (v.angle(), d)
        }
    } else {
        if d < 2.0 - EPS {
            return None;
        }
        let line = (d * d - 4.0).max(0.0).sqrt();
        (v.angle() + first.sign() * 2f64.atan2(line), line)
    };
    let a1 = canonical_sweep(first.sign() * (heading - start.theta));
    let a3 = canonical_sweep(last.sign() * (end.theta - heading));
    let mut path = CsPath::new(*start);
    path.push_arc(first, a1);
    path.push_line(line);
    path.push_arc(last, a3);
    Some(path)
}

fn ccc(start: &Pose, end: &Pose, outer: Turn) -> Vec<(CsPath, Option<CccVariant>)> {
    let c1 = turning_center(start, outer);
    let c2 = turning_center(end, outer);
    let v = c2 - c1;
    let d = v.norm();
    if !(EPS..=4.0 + EPS).contains(&d) {
        return Vec::new();
    }
    let half = (4.0 - d * d / 4.0).max(0.0).sqrt();
    let mid = (c1 + c2) * 0.5;
    let normal = v.perp() * (1.0 / d);
    let mut variants = vec![(CccVariant::Plus, mid + normal * half)];
    if half > EPS {
        variants.push((CccVariant::Minus, mid - normal * half));
    }
    let sigma = outer.sign();
    variants
        .into_iter()
        .map(|(variant, cm)| {
            let q1 = (c1 + cm) * 0.5;
            let q2 = (cm + c2) * 0.5;
            let h1 = (q1 - c1).angle() + sigma * FRAC_PI_2;
            let h2 = (q2 - c2).angle() + sigma * FRAC_PI_2;
            let a1 = canonical_sweep(sigma * (h1 - start.theta));
            let a2 = canonical_sweep(-sigma * (h2 - h1));
            let a3 = canonical_sweep(sigma * (end.theta - h2));
            let mut path = CsPath::new(*start);
            path.push_arc(outer, a1);
            path.push_arc(outer.flipped(), a2);
            path.push_arc(outer, a3);
            (path, Some(variant))
        })
        .collect()
}

/// Centre of the middle arc of a CCC path.
pub fn middle_center(path: &CsPath) -> Option<crate::geom::Point> {
    match path.segments.get(1) {
        Some(Segment::Arc { center, .. }) => Some(*center),
        _ => None,
    }
}
