//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use homotopy_dubins::minimiser::{excluded_components, LoopedCandidate};
use homotopy_dubins::normalise::normalise;
use homotopy_dubins::oracle::{oracle_min_in_class, OracleBudget};
use homotopy_dubins::{
    class_of, classify_proximity, dubins_minimum, minimise_in_class, Point, Pose, ProblemInstance,
    ProximityLabel, Turn,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Winners collected along the way for the structural check.
#[derive(Default)]
struct Winners(Vec<LoopedCandidate>);

fn closed_loops(w: &mut Winners) -> Outcome {
    let o = Pose::new(0.0, 0.0, 0.0);
    let inst = ProblemInstance::unit(o, o);
    let mut worst: f64 = 0.0;
    for m in 1..=6i64 {
        for n in [m, -m] {
            let r = minimise_in_class(&inst, n);
            worst = worst.max((r.length - TAU * m as f64).abs());
            w.0.push(r.winner);
        }
    }
    outcome(worst <= 1e-9, format!("max |L(n) - 2pi|n|| = {worst:.2e} for |n| <= 6"))
}

fn dubins_consistency(w: &mut Winners) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let inst = common::random_instance(&mut rng, 10.0);
        let mut best: Option<homotopy_dubins::MinimiserResult> = None;
        for n in -3..=3 {
            let r = minimise_in_class(&inst, n);
            if best.as_ref().is_none_or(|b| r.length < b.length) {
                best = Some(r);
            }
        }
        let best = best.unwrap();
        worst = worst.max((best.length - dubins_minimum(&inst).length).abs());
        w.0.push(best.winner);
    }
    outcome(worst <= 1e-9, format!("500 instances, max |min_n L(n) - dubins| = {worst:.2e}"))
}

fn oracle_agreement(w: &mut Winners) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut runs = 0;
    let mut agree = 0;
    let mut violations = 0;
    let mut exhausted = 0;
    let mut worst_excess: f64 = f64::NEG_INFINITY;
    for i in 0..100 {
        // half the instances with far endpoints, half with close ones
        let half_width = if i % 2 == 0 { 10.0 } else { 2.0 };
        let inst = common::random_instance(&mut rng, half_width);
        for n in -2..=2 {
            runs += 1;
            let r = minimise_in_class(&inst, n);
            let budget = OracleBudget {
                seed: 1000 * i as u64 + (n + 2) as u64,
                ..OracleBudget::default()
            };
            match oracle_min_in_class(&inst, n, &budget) {
                Ok(o) => {
                    let excess = r.length - o.length;
                    worst_excess = worst_excess.max(excess);
                    if excess > 1e-3 || o.class_index != n {
                        violations += 1;
                        eprintln!("  oracle beat enumeration: instance {i}, n = {n}, enumerated {}, oracle {} ({})",
                            r.length, o.length, o.witness.pattern());
                    }
                    if (o.length - r.length).abs() <= 1e-3 {
                        agree += 1;
                    }
                }
                Err(_) => exhausted += 1,
            }
            w.0.push(r.winner);
        }
    }
    let rate = agree as f64 / runs as f64;
    outcome(
        violations == 0 && rate >= 0.95,
        format!(
            "{runs} runs, enumerated > oracle + 1e-3 in {violations}, agreement {:.1}%, budget exhausted {exhausted}, max(enumerated - oracle) = {worst_excess:.2e}",
            100.0 * rate
        ),
    )
}

fn normalisation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut max_growth = f64::NEG_INFINITY;
    let mut min_closed = f64::INFINITY;
    for i in 0..50 {
        let closed = i % 5 == 4;
        let input = if closed {
            common::random_closed_path(&mut rng)
        } else {
            common::random_smooth_path(&mut rng)
        };
        let out = match normalise(&input) {
            Ok(out) => out,
            Err(e) => {
                failures.push(format!("path {i}: {e}"));
                continue;
            }
        };
        let growth = out.length() - input.length();
        max_growth = max_growth.max(growth);
        let end = out.end_pose().expect("replacements join up");
        let want = input.end_pose().unwrap();
        let gap = end.position().dist(want.position());
        let heading_gap = homotopy_dubins::geom::normalize_angle(end.theta - want.theta).abs();
        let class_in = input.class_index().unwrap();
        let class_out = class_of(&out).unwrap();
        if growth > 1e-6 || gap > 1e-6 || heading_gap > 1e-6 || class_in != class_out {
            failures.push(format!(
                "path {i}: growth {growth:.2e}, end gap {gap:.2e}, class {class_in} -> {class_out}"
            ));
        }
        if closed {
            min_closed = min_closed.min(out.length());
            if out.length() < TAU - 1e-6 {
                failures.push(format!("closed path {i}: output length {}", out.length()));
            }
        }
    }
    for f in &failures {
        eprintln!("  {f}");
    }
    outcome(
        failures.is_empty(),
        format!(
            "50 paths, max length change {max_growth:.2e}, shortest closed output {min_closed:.6}, {} failures",
            failures.len()
        ),
    )
}

fn loop_additivity(w: &mut Winners) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad_class = 0;
    let mut bad_triangle = 0;
    let mut checks = 0;
    for _ in 0..100 {
        let inst = common::random_instance(&mut rng, 5.0);
        let results: Vec<_> = (-3..=3).map(|n| minimise_in_class(&inst, n)).collect();
        for r in &results {
            let path = &r.winner.path;
            let n = class_of(path).unwrap();
            let idx = rng.gen_range(0..=path.segments.len());
            if class_of(&path.with_loop_at(idx, Turn::Left, 1)).unwrap() != n + 1 {
                bad_class += 1;
            }
            if class_of(&path.with_loop_at(idx, Turn::Right, 1)).unwrap() != n - 1 {
                bad_class += 1;
            }
            checks += 2;
        }
        for a in &results {
            for b in &results {
                let bound = b.length + TAU * (a.class_index - b.class_index).abs() as f64;
                if a.length > bound + 1e-9 {
                    bad_triangle += 1;
                }
            }
        }
        w.0.extend(results.into_iter().map(|r| r.winner));
    }
    outcome(
        bad_class == 0 && bad_triangle == 0,
        format!("{checks} loop insertions, {bad_class} class errors, {bad_triangle} triangle violations"),
    )
}

fn symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_rigid: f64 = 0.0;
    let mut worst_mirror: f64 = 0.0;
    for _ in 0..100 {
        let inst = common::random_instance(&mut rng, 5.0);
        let moved = inst.transformed(
            rng.gen_range(-PI..PI),
            Point::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0)),
        );
        let mirrored = inst.mirrored();
        for n in -3..=3 {
            let l = minimise_in_class(&inst, n).length;
            worst_rigid = worst_rigid.max((minimise_in_class(&moved, n).length - l).abs());
            worst_mirror = worst_mirror.max((minimise_in_class(&mirrored, -n).length - l).abs());
        }
    }
    outcome(
        worst_rigid <= 1e-9 && worst_mirror <= 1e-9,
        format!("100 instances, max rigid-motion change {worst_rigid:.2e}, max mirror change {worst_mirror:.2e}"),
    )
}

fn proximity() -> Outcome {
    let o = Pose::new(0.0, 0.0, 0.0);
    let cases = [
        (Pose::new(4.1, 0.0, 0.0), "A"),
        (Pose::new(3.0, 0.0, PI / 2.0), "B"),
        (Pose::new(3.0, 0.0, -PI / 2.0), "B"),
        (Pose::new(1.0, 3.8, 0.0), "CD"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut notes = Vec::new();
    let mut pass = true;
    for (end, want) in cases {
        let inst = ProblemInstance::unit(o, end);
        let report = classify_proximity(&inst);
        let label = report.label;
        let ok = match want {
            "A" => label == ProximityLabel::A,
            "B" => label == ProximityLabel::B,
            _ => matches!(label, ProximityLabel::C | ProximityLabel::D),
        };
        let mut invariant = true;
        for _ in 0..3 {
            let moved = inst.transformed(
                rng.gen_range(-PI..PI),
                Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)),
            );
            let r = classify_proximity(&moved);
            invariant &= r.label == label && r.raw_condition == report.raw_condition;
        }
        pass &= ok && invariant;
        notes.push(format!(
            "{}/{} (dLL {:.3}, dRR {:.3})",
            report.raw_condition, label, report.d_ll, report.d_rr
        ));
    }
    outcome(pass, notes.join(", "))
}

fn structural(w: &Winners) -> Outcome {
    let bad: Vec<_> = w
        .0
        .iter()
        .filter(|c| !excluded_components(&c.path).is_empty())
        .collect();
    for c in &bad {
        eprintln!("  excluded component in winner {}", c.word);
    }
    outcome(bad.is_empty(), format!("{} winners checked, {} with excluded components", w.0.len(), bad.len()))
}

fn report(idx: usize, name: &str, limit: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = run();
    let elapsed = t.elapsed();
    let in_time = elapsed <= limit;
    let pass = out.pass && in_time;
    println!(
        "{} criterion {idx} ({name}): {} [{:.2}s, limit {}s{}]",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", too slow" }
    );
    pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut winners = Winners::default();
    let mut all = true;
    all &= report(1, "closed-path loop bound", secs(1), || closed_loops(&mut winners));
    all &= report(2, "global minimum consistency", secs(10), || dubins_consistency(&mut winners));
    all &= report(3, "oracle agreement", secs(600), || oracle_agreement(&mut winners));
    all &= report(4, "normalisation", secs(30), normalisation);
    all &= report(5, "class disjointness and loop additivity", secs(5), || loop_additivity(&mut winners));
    all &= report(6, "symmetry", secs(5), symmetry);
    all &= report(7, "proximity classification", secs(1), proximity);
    all &= report(8, "structural exclusions", secs(5), || structural(&winners));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
