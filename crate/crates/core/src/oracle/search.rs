//! Randomised multi-start search over bang-bang paths of every curvature
//! pattern, and a continuous-deformation probe used to look for escapes
//! from an embedded class.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bangbang::{solve3, BangBangPath, EndpointMap, Linearization, MAX_PIECES};
use crate::error::{Error, Result};
use crate::geom::{Pose, ProblemInstance, SegmentKind};
use crate::homotopy::{class_of, principal_delta};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleBudget {
    /// Longest curvature pattern enumerated.
    pub max_pieces: usize,
    /// Random starts per pattern.
    pub restarts: usize,
    /// Endpoint residual a witness must meet.
    pub endpoint_tol: f64,
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_pieces: 7,
            restarts: 64,
            endpoint_tol: 1e-6,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    /// Witness length in original units.
    pub length: f64,
    /// Witness in the curvature-normalised frame.
    pub witness: BangBangPath,
    pub residual: f64,
    pub class_index: i64,
}

/// Every pattern over {L, S, R} of length `1..=max_pieces` with no two equal
/// neighbours.
pub fn curvature_patterns(max_pieces: usize) -> Vec<Vec<SegmentKind>> {
    use SegmentKind::*;
    let mut out: Vec<Vec<SegmentKind>> = Vec::new();
    let mut frontier: Vec<Vec<SegmentKind>> = vec![vec![L], vec![S], vec![R]];
    for _ in 0..max_pieces.min(MAX_PIECES) {
        let mut next = Vec::new();
        for p in &frontier {
            for k in [L, S, R] {
                if *p.last().unwrap() != k {
                    let mut q = p.clone();
                    q.push(k);
                    next.push(q);
                }
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    out
}

const RESTORE_TOL: f64 = 1e-12;
const WALK_ITERS: usize = 100;

/// Feasibility restoration by minimum-norm Newton steps on the free pieces.
/// Pieces driven below zero are clamped and frozen.
fn restore(map: &EndpointMap<'_>, lengths: &mut [f64], active: &mut [bool]) -> Option<Linearization> {
    let m = map.len();
    let tol = RESTORE_TOL * (1.0 + map.target.norm());
    for _ in 0..12 {
        let lin = map.linearize(lengths);
        if lin.residual_norm() <= tol {
            return Some(lin);
        }
        let mut a = [[0.0; 3]; 3];
        for i in (0..m).filter(|&i| !active[i]) {
            let c = lin.columns[i];
            for r in 0..3 {
                for s in 0..3 {
                    a[r][s] += c[r] * c[s];
                }
            }
        }
        let y = solve3(a, lin.residual)?;
        for i in 0..m {
            if active[i] {
                continue;
            }
            let c = lin.columns[i];
            lengths[i] -= c[0] * y[0] + c[1] * y[1] + c[2] * y[2];
            if lengths[i] <= 0.0 {
                lengths[i] = 0.0;
                active[i] = true;
            }
        }
        if lengths.iter().any(|l| !l.is_finite() || *l > 1e6) {
            return None;
        }
    }
    let lin = map.linearize(lengths);
    (lin.residual_norm() <= tol).then_some(lin)
}

/// Reduced-gradient walk on the feasible set of a pattern minimising
/// `sign * total length`, with an active set for the `length >= 0` bounds.
/// Stops early once the length passes `stop_above`. `step_cap` bounds the
/// parameter change per accepted step.
fn walk(
    map: &EndpointMap<'_>,
    lengths: &mut [f64],
    active: &mut [bool],
    sign: f64,
    max_iter: usize,
    step_cap: f64,
    stop_above: f64,
) -> bool {
    let m = map.len();
    let objective = |l: &[f64]| sign * l.iter().sum::<f64>();
    let Some(mut lin) = restore(map, lengths, active) else {
        return false;
    };
    let mut step: f64 = 1.0;
    for _ in 0..max_iter {
        if lengths.iter().sum::<f64>() > stop_above {
            return true;
        }
        let mut a = [[0.0; 3]; 3];
        let mut b = [0.0; 3];
        for i in (0..m).filter(|&i| !active[i]) {
            let c = lin.columns[i];
            for r in 0..3 {
                b[r] += c[r] * sign;
                for s in 0..3 {
                    a[r][s] += c[r] * c[s];
                }
            }
        }
        let Some(lambda) = solve3(a, b) else {
            return true;
        };
        let reduced = |i: usize| {
            let c = lin.columns[i];
            sign - (c[0] * lambda[0] + c[1] * lambda[1] + c[2] * lambda[2])
        };
        let mut dir = [0.0; MAX_PIECES];
        let mut dnorm = 0.0;
        for i in (0..m).filter(|&i| !active[i]) {
            dir[i] = -reduced(i);
            dnorm += dir[i] * dir[i];
        }
        let dnorm = dnorm.sqrt();
        if dnorm < 1e-10 {
            // stationary on the current face: release the most promising bound
            let release = (0..m)
                .filter(|&i| active[i])
                .map(|i| (i, reduced(i)))
                .filter(|&(_, r)| r < -1e-9)
                .min_by(|x, y| x.1.total_cmp(&y.1));
            match release {
                Some((i, _)) => {
                    active[i] = false;
                    continue;
                }
                None => return true,
            }
        }
        let mut s_max = f64::INFINITY;
        let mut blocking = None;
        for i in (0..m).filter(|&i| !active[i]) {
            if dir[i] < 0.0 {
                let s = lengths[i] / -dir[i];
                if s < s_max {
                    s_max = s;
                    blocking = Some(i);
                }
            }
        }
        let mut s = step.min(step_cap / dnorm);
        let current = objective(lengths);
        let mut accepted = false;
        for _ in 0..24 {
            let hit = s >= s_max;
            let s_eff = s.min(s_max);
            let mut trial = [0.0; MAX_PIECES];
            let mut trial_active = [false; MAX_PIECES];
            trial[..m].copy_from_slice(lengths);
            trial_active[..m].copy_from_slice(active);
            for i in 0..m {
                trial[i] = (trial[i] + s_eff * dir[i]).max(0.0);
            }
            if hit {
                if let Some(b) = blocking {
                    trial[b] = 0.0;
                    trial_active[b] = true;
                }
            }
            if let Some(new_lin) = restore(map, &mut trial[..m], &mut trial_active[..m]) {
                if objective(&trial[..m]) < current - 1e-15 * (1.0 + current.abs()) {
                    lengths.copy_from_slice(&trial[..m]);
                    active.copy_from_slice(&trial_active[..m]);
                    lin = new_lin;
                    accepted = true;
                    step = (2.0 * s_eff).max(1e-6);
                    break;
                }
            }
            s *= 0.5;
            if s < 1e-14 {
                break;
            }
        }
        if !accepted {
            return true;
        }
    }
    true
}

/// Bang-bang search for a short path of class `n`: every curvature pattern
/// up to `budget.max_pieces` pieces, `budget.restarts` random starts each,
/// each start pulled onto the endpoint constraint and then walked downhill
/// in length. Returns an upper bound on the class minimum.
pub fn oracle_min_in_class(
    inst: &ProblemInstance,
    n: i64,
    budget: &OracleBudget,
) -> Result<OracleResult> {
    let (start, end) = inst.working_poses();
    let turning = principal_delta(end.theta - start.theta) + TAU * n as f64;
    let gap = start.position().dist(end.position());
    let mut best: Option<(f64, BangBangPath, f64)> = None;
    let mut closest: Option<(f64, BangBangPath)> = None;
    for (pattern_idx, kinds) in curvature_patterns(budget.max_pieces).iter().enumerate() {
        if !pattern_can_turn(kinds, turning) {
            continue;
        }
        let map = EndpointMap {
            start,
            target: end.position(),
            turning,
            kinds,
        };
        let m = kinds.len();
        let mut rng = ChaCha8Rng::seed_from_u64(
            budget.seed ^ (pattern_idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        for _ in 0..budget.restarts {
            let mut lengths = [0.0; MAX_PIECES];
            for i in 0..m {
                lengths[i] = match kinds[i] {
                    SegmentKind::S => rng.gen_range(0.0..gap + 2.0),
                    _ => rng.gen_range(0.0..TAU),
                };
            }
            let mut active = [false; MAX_PIECES];
            walk(&map, &mut lengths[..m], &mut active[..m], 1.0, WALK_ITERS, f64::INFINITY, f64::INFINITY);
            let residual = map.linearize(&lengths[..m]).residual_norm();
            let length: f64 = lengths[..m].iter().sum();
            let witness = || BangBangPath::new(start, kinds, &lengths[..m]);
            if residual <= budget.endpoint_tol {
                if best.as_ref().is_none_or(|(b, _, _)| length < *b) {
                    best = Some((length, witness(), residual));
                }
            } else if closest.as_ref().is_none_or(|(r, _)| residual < *r) {
                closest = Some((residual, witness()));
            }
        }
    }
    match best {
        Some((length, witness, residual)) => {
            let class_index = class_of(&witness.to_cs_path())?;
            Ok(OracleResult {
                length: inst.to_world_length(length),
                witness,
                residual,
                class_index,
            })
        }
        None => Err(Error::BudgetExhausted {
            residual: closest.as_ref().map_or(f64::INFINITY, |c| c.0),
            best: closest.map(|c| Box::new(c.1)),
        }),
    }
}

fn pattern_can_turn(kinds: &[SegmentKind], turning: f64) -> bool {
    let has = |k| kinds.contains(&k);
    if turning > 1e-12 && !has(SegmentKind::L) {
        return false;
    }
    if turning < -1e-12 && !has(SegmentKind::R) {
        return false;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeBudget {
    /// Random kicks per insertion pattern.
    pub kicks: usize,
    pub seed: u64,
}

impl Default for EscapeBudget {
    fn default() -> Self {
        Self { kicks: 24, seed: 7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeOutcome {
    pub start_length: f64,
    pub max_length: f64,
    pub escaped: bool,
}

/// Tries to deform a three-piece path continuously, inside the space of
/// bang-bang paths with the same endpoints and the same total turning, into
/// one longer than `2pi` plus its own length. Zero-length pieces are
/// inserted around and between the given pieces to give the deformation
/// room; every accepted move changes the piece lengths by at most a small
/// step, so the visited paths form a bounded curvature homotopy.
pub fn escape_search(
    start: Pose,
    end: Pose,
    kinds: &[SegmentKind; 3],
    lengths: &[f64; 3],
    budget: &EscapeBudget,
) -> EscapeOutcome {
    use SegmentKind::*;
    let start_length: f64 = lengths.iter().sum();
    let turning: f64 = kinds
        .iter()
        .zip(lengths)
        .map(|(k, l)| k.curvature() * l)
        .sum();
    let limit = start_length + TAU;
    let others = |a: Option<SegmentKind>, b: Option<SegmentKind>| -> Vec<SegmentKind> {
        [L, S, R]
            .into_iter()
            .filter(|k| Some(*k) != a && Some(*k) != b)
            .collect()
    };
    let mut max_length = start_length;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for pre in others(None, Some(kinds[0])) {
        for q0 in others(Some(kinds[0]), Some(kinds[1])) {
            for q1 in others(Some(kinds[1]), Some(kinds[2])) {
                for post in others(Some(kinds[2]), None) {
                    let pattern = [pre, kinds[0], q0, kinds[1], q1, kinds[2], post];
                    let map = EndpointMap {
                        start,
                        target: end.position(),
                        turning,
                        kinds: &pattern,
                    };
                    let mut l = [0.0, lengths[0], 0.0, lengths[1], 0.0, lengths[2], 0.0];
                    let mut active = [true, false, true, false, true, false, true];
                    for (i, a) in active.iter_mut().enumerate() {
                        if l[i] <= 0.0 {
                            *a = true;
                        }
                    }
                    for kick in 0..=budget.kicks {
                        if kick > 0 {
                            random_kick(&map, &mut l, &mut active, &mut rng);
                        }
                        walk(&map, &mut l, &mut active, -1.0, 300, 0.1, limit);
                        let len: f64 = l.iter().sum();
                        max_length = max_length.max(len);
                        if max_length > limit {
                            return EscapeOutcome {
                                start_length,
                                max_length,
                                escaped: true,
                            };
                        }
                    }
                }
            }
        }
    }
    EscapeOutcome {
        start_length,
        max_length,
        escaped: false,
    }
}

/// A small random feasible move; pieces at zero may grow.
fn random_kick(map: &EndpointMap<'_>, lengths: &mut [f64], active: &mut [bool], rng: &mut ChaCha8Rng) {
    let m = map.len();
    for _ in 0..8 {
        let mut trial = [0.0; MAX_PIECES];
        let mut trial_active = [false; MAX_PIECES];
        for i in 0..m {
            trial[i] = (lengths[i] + rng.gen_range(-0.05..0.05)).max(0.0);
            trial_active[i] = false;
        }
        if restore(map, &mut trial[..m], &mut trial_active[..m]).is_some() {
            lengths.copy_from_slice(&trial[..m]);
            active.copy_from_slice(&trial_active[..m]);
            return;
        }
    }
}
