//! Self intersections of cs paths by exact segment-pair tests, plus a
//! polyline variant for sampled curves.

use std::f64::consts::TAU;

use crate::geom::{mod_two_pi, CsPath, Point, Segment, Turn, EPS};

/// Minimum |sin| of the angle between tangents for a crossing to count as
/// transversal.
const TRANSVERSAL_TOL: f64 = 1e-7;
/// Two contacts closer than this in both arclength parameters are the same.
const PARAM_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelfIntersection {
    /// Earlier arclength parameter.
    pub s1: f64,
    /// Later arclength parameter.
    pub s2: f64,
    pub point: Point,
    pub transversal: bool,
}

impl SelfIntersection {
    pub fn loop_length(&self) -> f64 {
        self.s2 - self.s1
    }
}

struct Placed {
    seg: Segment,
    s0: f64,
}

fn placed_segments(path: &CsPath) -> Vec<Placed> {
    let mut s0 = 0.0;
    let mut out = Vec::new();
    for seg in &path.segments {
        let len = seg.length();
        if len > EPS {
            out.push(Placed { seg: *seg, s0 });
        }
        s0 += len;
    }
    out
}

fn tangent(seg: &Segment, u: f64) -> Point {
    match *seg {
        Segment::Arc {
            turn, start_angle, ..
        } => Point::from_angle(start_angle + turn.sign() * u).perp() * turn.sign(),
        Segment::Line { from, to } => (to - from) * (1.0 / from.dist(to)),
    }
}

/// Arclength offsets on an arc at which it passes through polar angle `angle`.
fn arc_params(turn: Turn, start_angle: f64, sweep: f64, angle: f64) -> Vec<f64> {
    let first = mod_two_pi(turn.sign() * (angle - start_angle));
    let mut out = Vec::new();
    // accept a point that sits just before the start of the arc
    let first = if TAU - first < 1e-9 { 0.0 } else { first };
    let mut u = first;
    while u <= sweep + 1e-9 {
        out.push(u.min(sweep));
        u += TAU;
    }
    out
}

/// Arclength offsets of `p` on segment `seg`, assuming `p` lies on its support.
fn params_on(seg: &Segment, p: Point) -> Vec<f64> {
    match *seg {
        Segment::Arc {
            center,
            turn,
            start_angle,
            sweep,
        } => arc_params(turn, start_angle, sweep, (p - center).angle()),
        Segment::Line { from, to } => {
            let len = from.dist(to);
            let u = (p - from).dot(to - from) / len;
            if u >= -1e-9 && u <= len + 1e-9 {
                vec![u.clamp(0.0, len)]
            } else {
                Vec::new()
            }
        }
    }
}

/// Intersection points of the supports of two segments, each flagged as a
/// tangential contact when the supports touch. `None` means the supports
/// coincide.
fn support_points(a: &Segment, b: &Segment) -> Option<Vec<(Point, bool)>> {
    match (*a, *b) {
        (Segment::Line { from: p, to: p2 }, Segment::Line { from: q, to: q2 }) => {
            let r = p2 - p;
            let s = q2 - q;
            let denom = r.cross(s);
            if denom.abs() <= 1e-12 * r.norm() * s.norm() {
                let off = (q - p).cross(r) / r.norm();
                if off.abs() <= EPS {
                    return None;
                }
                return Some(Vec::new());
            }
            let t = (q - p).cross(s) / denom;
            Some(vec![(p + r * t, false)])
        }
        (Segment::Line { .. }, Segment::Arc { .. }) => support_points(b, a),
        (Segment::Arc { center, .. }, Segment::Line { from, to }) => {
            let len = from.dist(to);
            let dir = (to - from) * (1.0 / len);
            let w = from - center;
            let along = -w.dot(dir);
            let foot = from + dir * along;
            let h2 = 1.0 - (foot - center).dot(foot - center);
            if h2 < -1e-10 {
                Some(Vec::new())
            } else if h2 <= 1e-10 {
                Some(vec![(foot, true)])
            } else {
                let h = h2.sqrt();
                Some(vec![(foot - dir * h, false), (foot + dir * h, false)])
            }
        }
        (Segment::Arc { center: c1, .. }, Segment::Arc { center: c2, .. }) => {
            let v = c2 - c1;
            let d = v.norm();
            if d <= EPS {
                return None;
            }
            if d > 2.0 + 1e-10 {
                return Some(Vec::new());
            }
            let mid = (c1 + c2) * 0.5;
            let h2 = 1.0 - d * d / 4.0;
            if h2 <= 1e-10 {
                return Some(vec![(mid, true)]);
            }
            let n = v.perp() * (h2.sqrt() / d);
            Some(vec![(mid + n, false), (mid - n, false)])
        }
    }
}

/// Self intersections between distinct segment supports, excluding the
/// trivial contact at shared junctions. Coincident supports (two arcs on
/// the same circle, collinear lines) and an arc's wrap onto itself are not
/// included; see [`first_self_intersection`].
pub fn self_intersections(path: &CsPath) -> Vec<SelfIntersection> {
    let placed = placed_segments(path);
    let mut out: Vec<SelfIntersection> = Vec::new();
    for i in 0..placed.len() {
        for j in i + 1..placed.len() {
            let (a, b) = (&placed[i], &placed[j]);
            let Some(points) = support_points(&a.seg, &b.seg) else {
                continue;
            };
            for (p, touching) in points {
                for ua in params_on(&a.seg, p) {
                    for ub in params_on(&b.seg, p) {
                        let s1 = a.s0 + ua;
                        let s2 = b.s0 + ub;
                        if s2 - s1 <= PARAM_TOL {
                            continue;
                        }
                        let cross = tangent(&a.seg, ua).cross(tangent(&b.seg, ub)).abs();
                        let transversal = !touching && cross > TRANSVERSAL_TOL;
                        let dup = out
                            .iter()
                            .any(|x| (x.s1 - s1).abs() < PARAM_TOL && (x.s2 - s2).abs() < PARAM_TOL);
                        if !dup {
                            out.push(SelfIntersection {
                                s1,
                                s2,
                                point: p,
                                transversal,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| x.s2.total_cmp(&y.s2).then(x.s1.total_cmp(&y.s1)));
    out
}

/// Number of transversal self crossings.
pub fn crossing_count(path: &CsPath) -> usize {
    self_intersections(path)
        .iter()
        .filter(|x| x.transversal)
        .count()
}

/// Overlap contacts between two arcs on the same circle, `a` before `b`.
fn coincident_arc_contacts(a: &Placed, b: &Placed) -> Vec<SelfIntersection> {
    let (
        Segment::Arc {
            center,
            turn: ta,
            start_angle: aa,
            sweep: sa,
        },
        Segment::Arc {
            turn: tb,
            start_angle: ab,
            sweep: sb,
            ..
        },
    ) = (a.seg, b.seg)
    else {
        return Vec::new();
    };
    let a_end = aa + ta.sign() * sa;
    let mut out = Vec::new();
    let mut push = |ua: f64, ub: f64| {
        let s1 = a.s0 + ua;
        let s2 = b.s0 + ub;
        if s2 - s1 > PARAM_TOL {
            out.push(SelfIntersection {
                s1,
                s2,
                point: center + Point::from_angle(ab + tb.sign() * ub),
                transversal: false,
            });
        }
    };
    // b's first point, if it lies on a
    for ua in arc_params(ta, aa, sa, ab) {
        push(ua, 0.0);
    }
    // b entering a through either end of a
    for (angle, ua) in [(aa, 0.0), (a_end, sa)] {
        if let Some(&ub) = arc_params(tb, ab, sb, angle).first() {
            push(ua, ub);
        }
    }
    out
}

/// The first self intersection: the contact with the smallest later
/// parameter, counting tangential touches, revisits of the same circle and
/// an arc wrapping onto itself.
pub fn first_self_intersection(path: &CsPath) -> Option<SelfIntersection> {
    let placed = placed_segments(path);
    let mut best: Option<SelfIntersection> = self_intersections(path).into_iter().next();
    let mut consider = |x: SelfIntersection| {
        let better = match &best {
            None => true,
            Some(b) => x.s2 < b.s2 - PARAM_TOL || ((x.s2 - b.s2).abs() <= PARAM_TOL && x.s1 < b.s1),
        };
        if better {
            best = Some(x);
        }
    };
    for (i, a) in placed.iter().enumerate() {
        if let Segment::Arc {
            center,
            start_angle,
            sweep,
            ..
        } = a.seg
        {
            if sweep >= TAU - 1e-9 {
                consider(SelfIntersection {
                    s1: a.s0,
                    s2: a.s0 + TAU,
                    point: center + Point::from_angle(start_angle),
                    transversal: false,
                });
            }
        }
        for b in &placed[i + 1..] {
            if support_points(&a.seg, &b.seg).is_some() {
                continue;
            }
            match (a.seg, b.seg) {
                (Segment::Arc { .. }, Segment::Arc { .. }) => {
                    for x in coincident_arc_contacts(a, b) {
                        consider(x);
                    }
                }
                (Segment::Line { from, to }, Segment::Line { from: q, to: q2 }) => {
                    // collinear: first point of b inside a, or b reaching an end of a
                    let len = from.dist(to);
                    let dir = (to - from) * (1.0 / len);
                    let blen = q.dist(q2);
                    let bdir = (q2 - q) * (1.0 / blen);
                    let mut cands = Vec::new();
                    let uq = (q - from).dot(dir);
                    if uq >= -1e-9 && uq <= len + 1e-9 {
                        cands.push((uq.clamp(0.0, len), 0.0));
                    }
                    for (pt, ua) in [(from, 0.0), (to, len)] {
                        let ub = (pt - q).dot(bdir);
                        if ub >= -1e-9 && ub <= blen + 1e-9 {
                            cands.push((ua, ub.clamp(0.0, blen)));
                        }
                    }
                    for (ua, ub) in cands {
                        let s1 = a.s0 + ua;
                        let s2 = b.s0 + ub;
                        if s2 - s1 > PARAM_TOL {
                            consider(SelfIntersection {
                                s1,
                                s2,
                                point: from + dir * ua,
                                transversal: false,
                            });
                        }
                    }
                }
                _ => {}
            }
        }
    }
    best
}

/// True when the path never meets itself (apart from consecutive junctions).
pub fn is_embedded(path: &CsPath) -> bool {
    first_self_intersection(path).is_none()
}

/// First self intersection of a polyline by brute-force segment-pair tests,
/// returned as arclength parameters `(s1, s2)`.
pub fn polyline_first_self_intersection(points: &[Point]) -> Option<(f64, f64)> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let mut cum = vec![0.0; n];
    for k in 1..n {
        cum[k] = cum[k - 1] + points[k].dist(points[k - 1]);
    }
    let mut best: Option<(f64, f64)> = None;
    for j in 1..n - 1 {
        let (q, q2) = (points[j], points[j + 1]);
        for i in 0..j - 1 {
            let (p, p2) = (points[i], points[i + 1]);
            let r = p2 - p;
            let s = q2 - q;
            let denom = r.cross(s);
            if denom.abs() < 1e-15 {
                continue;
            }
            let t = (q - p).cross(s) / denom;
            let u = (q - p).cross(r) / denom;
            let tol = 1e-12;
            if (-tol..=1.0 + tol).contains(&t) && (-tol..=1.0 + tol).contains(&u) {
                let s1 = cum[i] + t.clamp(0.0, 1.0) * r.norm();
                let s2 = cum[j] + u.clamp(0.0, 1.0) * s.norm();
                if best.is_none_or(|(_, b2)| s2 < b2) {
                    best = Some((s1, s2));
                }
            }
        }
        if best.is_some() {
            // later segments can only produce larger s2
            break;
        }
    }
    best
}
