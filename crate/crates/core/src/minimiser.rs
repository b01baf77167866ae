//! Length minimisers inside a prescribed homotopy class.
//!
//! Every minimiser in class `n` is a base path (CSC or CCC, sweeps below
//! 2pi) with `|k|` full loops of one orientation added on an adjacent circle
//! or on the middle circle of a CCC path. The candidates are enumerated
//! directly and the shortest one wins.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::dubins::{all_base_candidates, tie_tolerance, BaseCandidate};
use crate::geom::{CsPath, ProblemInstance, Segment, SegmentKind, Turn, EPS};
use crate::homotopy::class_of;
use crate::intersect::{crossing_count, is_embedded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Placement {
    Start,
    End,
    Middle,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopedCandidate {
    pub base: BaseCandidate,
    /// Signed loop count: positive for left loops, negative for right loops.
    pub loops: i64,
    /// Where the loops sit. Loop-free candidates report `Start`.
    pub placement: Placement,
    /// Shape of the candidate, e.g. `C^χ S C` or `C C^χ C`.
    pub family: String,
    /// Concrete word with loop exponents, e.g. `L^1 R S R`.
    pub word: String,
    /// Geometry in the curvature-normalised frame.
    pub path: CsPath,
    /// Length in original units.
    pub length: f64,
}

impl LoopedCandidate {
    pub fn chi(&self) -> u32 {
        self.loops.unsigned_abs() as u32
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimiserResult {
    pub class_index: i64,
    pub winner: LoopedCandidate,
    pub length: f64,
    pub chi_reported: u32,
    /// Transversal self-crossings of the winner.
    pub crossings: usize,
    /// The remaining candidates, shortest first.
    pub runner_ups: Vec<LoopedCandidate>,
}

/// How the loops attach to the base path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Attach {
    /// Loops extend the arc with this segment index.
    Merged(usize),
    /// A separate loop arc is inserted before the first segment.
    Separate,
}

fn loop_turn(k: i64) -> Turn {
    if k > 0 {
        Turn::Left
    } else {
        Turn::Right
    }
}

fn arc_turn(seg: &Segment) -> Option<Turn> {
    match seg {
        Segment::Arc { turn, .. } => Some(*turn),
        Segment::Line { .. } => None,
    }
}

fn build(inst: &ProblemInstance, base: &BaseCandidate, k: i64, placement: Placement, attach: Attach) -> LoopedCandidate {
    let chi = k.unsigned_abs() as u32;
    let letters: Vec<char> = base.base_type.kinds().iter().map(|s| s.letter()).collect();
    let loop_len = TAU * chi as f64;
    let (path, word, family) = if k == 0 {
        let family = if base.base_type.is_ccc() { "CCC" } else { "CSC" };
        (base.path.clone(), base.base_type.name().to_string(), family.to_string())
    } else {
        match attach {
            Attach::Merged(idx) => {
                let mut path = base.path.clone();
                if let Segment::Arc { sweep, .. } = &mut path.segments[idx] {
                    *sweep += loop_len;
                }
                let word = letters
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        if i == idx {
                            format!("{c}^{chi}")
                        } else {
                            c.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                let family = match (base.base_type.is_ccc(), idx) {
                    (false, 0) => "C^χ S C",
                    (false, _) => "C S C^χ",
                    (true, 0) => "C^χ C C",
                    (true, 1) => "C C^χ C",
                    (true, _) => "C C C^χ",
                };
                (path, word, family.to_string())
            }
            Attach::Separate => {
                let path = base.path.with_loop_at(0, loop_turn(k), chi);
                let mut word = format!("{}^{chi}", loop_turn(k).letter());
                for c in &letters {
                    word.push(' ');
                    word.push(*c);
                }
                let family = if base.base_type.is_ccc() {
                    "C^χ C C C"
                } else {
                    "C^χ C S C"
                };
                (path, word, family.to_string())
            }
        }
    };
    let (path, word, family) = if k != 0 && base.path.length() <= EPS {
        // nothing but loops: one circle traversed chi times
        let path = CsPath::from_pieces(base.path.start, &[(SegmentKind::from_turn(loop_turn(k)), loop_len)]);
        let word = format!("{}^{chi}", loop_turn(k).letter());
        (path, word, "C^χ".to_string())
    } else {
        (path, word, family)
    };
    LoopedCandidate {
        base: base.clone(),
        loops: k,
        placement,
        family,
        word,
        path,
        length: base.length + inst.to_world_length(loop_len),
    }
}

/// Every looped candidate for class `n`, in emission order: base types in
/// their fixed order, and for each base the canonical placement first.
///
/// Loops go on the first arc when it turns the same way, otherwise on the
/// last arc, otherwise as a separate circle before the path. CCC bases whose
/// middle arc turns the same way also get a middle placement.
pub fn enumerate_candidates(inst: &ProblemInstance, n: i64) -> Vec<LoopedCandidate> {
    let mut out = Vec::new();
    for base in all_base_candidates(inst) {
        let base_class = class_of(&base.path).expect("base candidates are continuous");
        let k = n - base_class;
        if k == 0 {
            out.push(build(inst, &base, 0, Placement::Start, Attach::Separate));
            continue;
        }
        let turn = loop_turn(k);
        let segs = &base.path.segments;
        let last = segs.len() - 1;
        if arc_turn(&segs[0]) == Some(turn) {
            out.push(build(inst, &base, k, Placement::Start, Attach::Merged(0)));
        } else if arc_turn(&segs[last]) == Some(turn) {
            out.push(build(inst, &base, k, Placement::End, Attach::Merged(last)));
        } else {
            out.push(build(inst, &base, k, Placement::Start, Attach::Separate));
        }
        if base.base_type.is_ccc() && arc_turn(&segs[1]) == Some(turn) {
            out.push(build(inst, &base, k, Placement::Middle, Attach::Merged(1)));
        }
    }
    out
}

/// Shortest candidate of class `n`. Ties within rounding go to fewer loops,
/// then to the earlier base type, then to emission order.
pub fn minimise_in_class(inst: &ProblemInstance, n: i64) -> MinimiserResult {
    let mut cands = enumerate_candidates(inst, n);
    let best_len = cands.iter().map(|c| c.length).fold(f64::INFINITY, f64::min);
    let tol = tie_tolerance(best_len);
    let winner_idx = cands
        .iter()
        .enumerate()
        .filter(|(_, c)| c.length <= best_len + tol)
        .min_by_key(|(i, c)| (c.loops.unsigned_abs(), c.base.base_type.order(), *i))
        .map(|(i, _)| i)
        .expect("LSL and RSR always give a candidate");
    let winner = cands.remove(winner_idx);
    cands.sort_by(|a, b| a.length.total_cmp(&b.length));
    MinimiserResult {
        class_index: n,
        length: winner.length,
        chi_reported: winner.chi(),
        crossings: crossing_count(&winner.path),
        winner,
        runner_ups: cands,
    }
}

/// Minimiser length for each class in `range`.
pub fn class_length_profile(inst: &ProblemInstance, range: RangeInclusive<i64>) -> Vec<(i64, f64)> {
    range.map(|n| (n, minimise_in_class(inst, n).length)).collect()
}

/// Sub-path patterns that never occur in a length minimiser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExcludedComponent {
    /// Five alternating pieces `CSCSC`.
    Cscsc,
    /// `CSCCSC`.
    Csccsc,
    /// A `CSCSC` stretch that crosses itself.
    LoopedCscsc,
}

/// Collapses a path to its word of non-degenerate pieces, merging
/// consecutive arcs on the same circle.
pub fn reduced_word(path: &CsPath) -> String {
    let mut word = String::new();
    let mut last: Option<&Segment> = None;
    for seg in path.segments.iter().filter(|s| !s.is_degenerate()) {
        if let (
            Some(Segment::Arc { center: c0, turn: t0, .. }),
            Segment::Arc { center: c1, turn: t1, .. },
        ) = (last, seg)
        {
            if t0 == t1 && c0.dist(*c1) <= 1e-7 {
                continue;
            }
        }
        word.push(match seg.kind() {
            SegmentKind::S => 'S',
            _ => 'C',
        });
        last = Some(seg);
    }
    word
}

/// Syntactic check for the excluded components on the segment list.
pub fn excluded_components(path: &CsPath) -> Vec<ExcludedComponent> {
    let word = reduced_word(path);
    let mut found = Vec::new();
    if word.contains("CSCSC") {
        found.push(ExcludedComponent::Cscsc);
        if !is_embedded(path) {
            found.push(ExcludedComponent::LoopedCscsc);
        }
    }
    if word.contains("CSCCSC") {
        found.push(ExcludedComponent::Csccsc);
    }
    found
}
