//! SVG 1.1 drawings of paths and class length profiles.
//!
//! Paths are drawn in the curvature-normalised frame at 100 px per unit, so
//! every turning circle has a 100 px radius.

use std::f64::consts::PI;
use std::fmt::Write;

use homotopy_dubins::{AdjacentCircles, CsPath, Point, Pose, ProblemInstance, Segment};

const SCALE: f64 = 100.0;
const MARGIN: f64 = 40.0;

struct Frame {
    min: Point,
    max: Point,
}

impl Frame {
    fn new() -> Self {
        Frame {
            min: Point::new(f64::INFINITY, f64::INFINITY),
            max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn include(&mut self, p: Point, pad: f64) {
        self.min = Point::new(self.min.x.min(p.x - pad), self.min.y.min(p.y - pad));
        self.max = Point::new(self.max.x.max(p.x + pad), self.max.y.max(p.y + pad));
    }

    fn px(&self, p: Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min.x) * SCALE,
            MARGIN + (self.max.y - p.y) * SCALE,
        )
    }

    fn size(&self) -> (f64, f64) {
        (
            2.0 * MARGIN + (self.max.x - self.min.x) * SCALE,
            2.0 * MARGIN + (self.max.y - self.min.y) * SCALE,
        )
    }
}

fn arc_path(frame: &Frame, seg: &Segment) -> String {
    let Segment::Arc {
        center,
        turn,
        start_angle,
        sweep,
    } = *seg
    else {
        unreachable!("arc_path takes arcs");
    };
    let (x0, y0) = frame.px(center + Point::from_angle(start_angle));
    let mut d = format!("M {x0:.3} {y0:.3}");
    // split into pieces of at most pi so each SVG arc is unambiguous
    let pieces = ((sweep / PI).ceil() as usize).max(1);
    // y is flipped on screen, so left turns run clockwise
    let flag = if turn.sign() > 0.0 { 0 } else { 1 };
    for k in 1..=pieces {
        let a = start_angle + turn.sign() * sweep * k as f64 / pieces as f64;
        let (x, y) = frame.px(center + Point::from_angle(a));
        let _ = write!(d, " A {SCALE} {SCALE} 0 0 {flag} {x:.3} {y:.3}");
    }
    d
}

fn pose_arrow(out: &mut String, frame: &Frame, pose: &Pose, class: &str) {
    let tip = pose.position() + pose.direction() * 0.5;
    let (x0, y0) = frame.px(pose.position());
    let (x1, y1) = frame.px(tip);
    let back = pose.direction() * -0.15;
    let side = pose.direction().perp() * 0.08;
    let (ax, ay) = frame.px(tip + back + side);
    let (bx, by) = frame.px(tip + back - side);
    let _ = writeln!(
        out,
        r#"  <g class="{class}"><line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="black" stroke-width="2"/><polygon points="{x1:.3},{y1:.3} {ax:.3},{ay:.3} {bx:.3},{by:.3}" fill="black"/></g>"#
    );
}

/// Drawing of `path` (curvature-normalised frame) with the four adjacent
/// circles of `inst` and arrows for both poses.
pub fn path_svg(inst: &ProblemInstance, path: &CsPath) -> String {
    let (start, end) = inst.working_poses();
    let circles = AdjacentCircles::of(inst).as_array();
    let mut frame = Frame::new();
    for c in circles {
        frame.include(c, 1.0);
    }
    for s in path.sample(0.05) {
        frame.include(s.point, 0.1);
    }
    let (w, h) = frame.size();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    for c in circles {
        let (x, y) = frame.px(c);
        let _ = writeln!(
            out,
            r#"  <circle class="adjacent" cx="{x:.3}" cy="{y:.3}" r="{SCALE}" fill="none" stroke="gray" stroke-dasharray="6 4"/>"#
        );
    }
    for seg in &path.segments {
        let (d, kind) = match seg {
            Segment::Line { from, to } => {
                let (x0, y0) = frame.px(*from);
                let (x1, y1) = frame.px(*to);
                (format!("M {x0:.3} {y0:.3} L {x1:.3} {y1:.3}"), 'S')
            }
            Segment::Arc { .. } => (arc_path(&frame, seg), seg.kind().letter()),
        };
        let colour = match kind {
            'L' => "#1f77b4",
            'R' => "#d62728",
            _ => "#2ca02c",
        };
        let _ = writeln!(
            out,
            r#"  <g class="segment" data-kind="{kind}"><path d="{d}" fill="none" stroke="{colour}" stroke-width="3"/></g>"#
        );
    }
    pose_arrow(&mut out, &frame, &start, "pose start");
    pose_arrow(&mut out, &frame, &end, "pose end");
    out.push_str("</svg>\n");
    out
}

/// Line chart of minimiser length against class index.
pub fn profile_svg(rows: &[(i64, f64)]) -> String {
    let (w, h) = (640.0, 400.0);
    let (left, right, top, bottom) = (70.0, 20.0, 20.0, 50.0);
    let n_min = rows.iter().map(|r| r.0).min().unwrap_or(0) as f64;
    let n_max = rows.iter().map(|r| r.0).max().unwrap_or(0) as f64;
    let l_max = rows.iter().map(|r| r.1).fold(0.0, f64::max).max(1e-9);
    let x = |n: f64| {
        let span = (n_max - n_min).max(1.0);
        left + (n - n_min) / span * (w - left - right)
    };
    let y = |l: f64| top + (1.0 - l / l_max) * (h - top - bottom);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        r#"  <g class="axes" stroke="black"><line x1="{left}" y1="{}" x2="{}" y2="{}"/><line x1="{left}" y1="{top}" x2="{left}" y2="{}"/></g>"#,
        h - bottom,
        w - right,
        h - bottom,
        h - bottom
    );
    let points: Vec<String> = rows.iter().map(|&(n, l)| format!("{:.2},{:.2}", x(n as f64), y(l))).collect();
    let _ = writeln!(
        out,
        r##"  <polyline class="profile" points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        points.join(" ")
    );
    for &(n, l) in rows {
        let _ = writeln!(
            out,
            r##"  <circle class="class" cx="{:.2}" cy="{:.2}" r="4" fill="#1f77b4"><title>n = {n}, length = {l:.6}</title></circle>"##,
            x(n as f64),
            y(l)
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{}" font-size="12" text-anchor="middle">{n}</text>"#,
            x(n as f64),
            h - bottom + 18.0
        );
    }
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" font-size="13" text-anchor="middle">class index n</text>"#,
        (left + w - right) / 2.0,
        h - 8.0
    );
    let _ = writeln!(
        out,
        r#"  <text x="16" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">length</text>"#,
        (top + h - bottom) / 2.0,
        (top + h - bottom) / 2.0
    );
    let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="11" text-anchor="end">{l_max:.3}</text>"#, left - 6.0, top + 4.0);
    out.push_str("</svg>\n");
    out
}
