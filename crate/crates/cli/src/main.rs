//! `bcpath`: shortest bounded curvature paths per homotopy class.

mod svg;

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homotopy_dubins::io::{cs_path_to_json, parse_sampled_path, CsPathRecord};
use homotopy_dubins::minimiser::MinimiserResult;
use homotopy_dubins::normalise::fragment;
use homotopy_dubins::oracle::{oracle_min_in_class, OracleBudget};
use homotopy_dubins::{
    class_of, classify_proximity, minimise_in_class, normalise, Error, Pose, ProblemInstance,
    ProximityReport, Segment,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bcpath", version, about = "Shortest bounded curvature paths in every homotopy class")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest path of a class, or a table over a range of classes.
    Solve {
        #[command(flatten)]
        poses: PoseArgs,
        /// Class index `n` or inclusive range `a..b`.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        /// Write an SVG drawing of the path (or the profile for a range).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Proximity condition of the endpoint configuration.
    Classify {
        #[command(flatten)]
        poses: PoseArgs,
    },
    /// Minimiser length per class over a range.
    Profile {
        #[command(flatten)]
        poses: PoseArgs,
        /// Inclusive range `a..b`.
        #[arg(long, allow_hyphen_values = true, default_value = "-3..3")]
        n: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Rewrite a sampled path as an arc/line path of no greater length.
    Normalise {
        /// JSON array of `{s, x, y, theta}` samples.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Where to write the arc/line path JSON; printed inline otherwise.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the minimiser with the brute-force oracle on random instances.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random (instance, class) pairs.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        max_pieces: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
}

#[derive(Args)]
struct PoseArgs {
    /// Start pose `x,y,theta`.
    #[arg(long, allow_hyphen_values = true)]
    start: String,
    /// End pose `x,y,theta`.
    #[arg(long, allow_hyphen_values = true)]
    end: String,
    /// Curvature bound.
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Read headings in degrees.
    #[arg(long)]
    deg: bool,
}

enum Failure {
    Usage(String),
    Input(String),
    Curvature(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Input(_) => 2,
            Failure::Internal(_) => 1,
            Failure::Curvature(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Curvature(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CurvatureViolation { .. } => Failure::Curvature(e.to_string()),
            Error::Parse(_) | Error::InvalidSamples(_) | Error::InvalidCurvatureBound(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// Rounds to 12 significant digits for printing.
fn sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn parse_pose(text: &str, deg: bool) -> CliResult<Pose> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(format!("pose `{text}` must be x,y,theta")));
    }
    let mut v = [0.0f64; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| Failure::Usage(format!("`{p}` in pose `{text}` is not a number")))?;
        if !slot.is_finite() {
            return Err(Failure::Usage(format!("pose `{text}` is not finite")));
        }
    }
    let theta = if deg { v[2] * PI / 180.0 } else { v[2] };
    Ok(Pose::new(v[0], v[1], theta))
}

fn parse_classes(text: &str) -> CliResult<(i64, i64)> {
    let bad = || Failure::Usage(format!("class `{text}` must be an integer or a range a..b"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<i64>().map_err(|_| bad())?,
            b.trim().trim_start_matches('=').parse::<i64>().map_err(|_| bad())?,
        ),
        None => {
            let n = text.trim().parse::<i64>().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a > b || b - a >= 64 {
        return Err(Failure::Usage(format!("range `{text}` must be increasing with at most 64 classes")));
    }
    Ok((a, b))
}

fn instance(p: &PoseArgs) -> CliResult<ProblemInstance> {
    let start = parse_pose(&p.start, p.deg)?;
    let end = parse_pose(&p.end, p.deg)?;
    ProblemInstance::new(start, end, p.kappa).map_err(|e| Failure::Usage(e.to_string()))
}

fn point_json(p: homotopy_dubins::Point, kappa: f64) -> Value {
    json!([sig(p.x / kappa), sig(p.y / kappa)])
}

fn segments_json(segments: &[Segment], kappa: f64) -> Vec<Value> {
    segments
        .iter()
        .map(|seg| match seg {
            Segment::Arc { center, .. } => json!({
                "type": seg.kind().letter().to_string(),
                "sweep": sig(seg.length()),
                "center": point_json(*center, kappa),
                "radius": sig(1.0 / kappa),
            }),
            Segment::Line { from, to } => json!({
                "type": "S",
                "length": sig(seg.length() / kappa),
                "from": point_json(*from, kappa),
                "to": point_json(*to, kappa),
            }),
        })
        .collect()
}

fn proximity_json(r: &ProximityReport) -> Value {
    json!({
        "condition": r.raw_condition.to_string(),
        "label": r.label.to_string(),
        "heuristic": r.d_heuristic,
        "d_ll": sig(r.d_ll),
        "d_rr": sig(r.d_rr),
    })
}

fn result_json(inst: &ProblemInstance, r: &MinimiserResult) -> Value {
    json!({
        "n": r.class_index,
        "length": sig(r.length),
        "family": r.winner.family,
        "word": r.winner.word,
        "chi": r.chi_reported,
        "crossings": r.crossings,
        "segments": segments_json(&r.winner.path.segments, inst.kappa),
    })
}

fn profile_rows(inst: &ProblemInstance, a: i64, b: i64) -> Vec<MinimiserResult> {
    (a..=b).map(|n| minimise_in_class(inst, n)).collect()
}

fn profile_json(inst: &ProblemInstance, rows: &[MinimiserResult]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.class_index,
                "length": sig(r.length),
                "family": r.winner.family,
                "word": r.winner.word,
                "chi": r.chi_reported,
                "crossings": r.crossings,
            })
        })
        .collect();
    json!({ "profile": rows, "proximity": proximity_json(&classify_proximity(inst)) })
}

fn write_file(path: &PathBuf, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialise"));
}

fn cmd_solve(poses: &PoseArgs, n: &str, svg_out: Option<&PathBuf>) -> CliResult<()> {
    let inst = instance(poses)?;
    let (a, b) = parse_classes(n)?;
    if a == b {
        let r = minimise_in_class(&inst, a);
        let mut out = result_json(&inst, &r);
        out["proximity"] = proximity_json(&classify_proximity(&inst));
        print_json(&out);
        if let Some(p) = svg_out {
            write_file(p, &svg::path_svg(&inst, &r.winner.path))?;
        }
    } else {
        let rows = profile_rows(&inst, a, b);
        print_json(&profile_json(&inst, &rows));
        if let Some(p) = svg_out {
            let pairs: Vec<(i64, f64)> = rows.iter().map(|r| (r.class_index, r.length)).collect();
            write_file(p, &svg::profile_svg(&pairs))?;
        }
    }
    Ok(())
}

fn cmd_profile(poses: &PoseArgs, n: &str, svg_out: Option<&PathBuf>) -> CliResult<()> {
    let inst = instance(poses)?;
    let (a, b) = parse_classes(n)?;
    let rows = profile_rows(&inst, a, b);
    print_json(&profile_json(&inst, &rows));
    if let Some(p) = svg_out {
        let pairs: Vec<(i64, f64)> = rows.iter().map(|r| (r.class_index, r.length)).collect();
        write_file(p, &svg::profile_svg(&pairs))?;
    }
    Ok(())
}

fn cmd_classify(poses: &PoseArgs) -> CliResult<()> {
    let inst = instance(poses)?;
    print_json(&proximity_json(&classify_proximity(&inst)));
    Ok(())
}

fn cmd_normalise(input: &PathBuf, kappa: f64, output: Option<&PathBuf>) -> CliResult<()> {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", input.display())))?;
    let sampled = parse_sampled_path(&text, kappa)?;
    let fragments = fragment(&sampled)?.fragment_count();
    let path = normalise(&sampled)?;
    let class_in = sampled.class_index()?;
    let class_out = class_of(&path)?;
    let mut report = json!({
        "length_in": sig(sampled.length()),
        "length_out": sig(path.length() / kappa),
        "class_in": class_in,
        "class_out": class_out,
        "fragments": fragments,
        "segments": path.segments.len(),
    });
    match output {
        Some(p) => {
            write_file(p, &cs_path_to_json(&path, kappa))?;
            report["output"] = json!(p.display().to_string());
        }
        None => {
            report["path"] = serde_json::to_value(CsPathRecord::from_path(&path, kappa))
                .expect("records serialise");
        }
    }
    print_json(&report);
    Ok(())
}

fn cmd_verify(seed: u64, trials: usize, max_pieces: usize, restarts: usize) -> CliResult<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hard = 0;
    let mut agree = 0;
    let mut exhausted = 0;
    println!(
        "{:>5} {:>4} {:>16} {:>16} {:>12}  {:<10} status",
        "trial", "n", "enumerated", "oracle", "diff", "winner"
    );
    for t in 0..trials {
        let half = if rng.gen_bool(0.5) { 10.0 } else { 2.0 };
        let mut pose = || {
            Pose::new(
                rng.gen_range(-half..half),
                rng.gen_range(-half..half),
                rng.gen_range(-PI..PI),
            )
        };
        let inst = ProblemInstance::unit(pose(), pose());
        let n = rng.gen_range(-2..=2);
        let r = minimise_in_class(&inst, n);
        let budget = OracleBudget {
            max_pieces,
            restarts,
            seed: seed.wrapping_add(t as u64),
            ..OracleBudget::default()
        };
        match oracle_min_in_class(&inst, n, &budget) {
            Ok(o) => {
                let diff = o.length - r.length;
                let status = if diff < -1e-3 || o.class_index != n {
                    hard += 1;
                    "FAIL"
                } else if diff <= 1e-3 {
                    agree += 1;
                    "ok"
                } else {
                    "oracle above"
                };
                println!(
                    "{t:>5} {n:>4} {:>16.10} {:>16.10} {:>12.3e}  {:<10} {status}",
                    r.length, o.length, diff, r.winner.word
                );
            }
            Err(e) => {
                exhausted += 1;
                println!("{t:>5} {n:>4} {:>16.10} {:>16} {:>12}  {:<10} {e}", r.length, "-", "-", r.winner.word);
            }
        }
    }
    println!(
        "trials {trials}, agreement {agree}, oracle budget exhausted {exhausted}, hard failures {hard}"
    );
    Ok(hard == 0)
}

fn run(cli: Cli) -> CliResult<bool> {
    match &cli.command {
        Command::Solve { poses, n, svg } => cmd_solve(poses, n, svg.as_ref()).map(|_| true),
        Command::Classify { poses } => cmd_classify(poses).map(|_| true),
        Command::Profile { poses, n, svg } => cmd_profile(poses, n, svg.as_ref()).map(|_| true),
        Command::Normalise {
            input,
            kappa,
            output,
        } => cmd_normalise(input, *kappa, output.as_ref()).map(|_| true),
        Command::Verify {
            seed,
            trials,
            max_pieces,
            restarts,
        } => cmd_verify(*seed, *trials, *max_pieces, *restarts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("bcpath: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
