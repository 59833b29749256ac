//! Command-line front end: generate fixtures, run detection and piercing,
//! verify construction lemmas, and render SVG figures.
//!
//! Exit codes are a stable contract: `detect` exits 0 when a C(k) is found
//! and 1 when the family is free; `pierce` exits 2 when no piercing exists
//! within budget; any error exits 64+.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ckpierce::ck::find_ck;
use ckpierce::family::{load_family, save_family, Family};
use ckpierce::fixtures::{general_position_points, pentagon_ck};
use ckpierce::geom::Line;
use ckpierce::kkm::{
    find_piercing_lines_with, solution_to_json, SearchConfig, SearchOutcome, SimplexPoint,
};
use ckpierce::lowerbound::build_construction;
use ckpierce::piercing::{candidate_lines, count_bound_check, max_line_hits, min_piercing_lines};
use ckpierce::svg::{render_chord_system, render_family};
use ckpierce::Error;

#[derive(Parser)]
#[command(name = "ckpierce", version, about = "Line piercings and C(k) detection for planar convex families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateKind {
    /// Circle construction of 3(k-1) segments.
    Construction,
    /// Seeded one-vertex members, no three collinear.
    GeneralPositionPoints,
    /// Convex-position point pentagon (a C(5)).
    PentagonCk,
}

#[derive(Clone, Copy, ValueEnum)]
enum PierceMode {
    /// Branch-and-bound over the exact candidate-line system.
    ExactMin,
    /// Simplex chord-system search with exact snap and witness phases.
    Kkm,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family JSON fixture.
    Generate {
        kind: GenerateKind,
        #[arg(long, default_value_t = 5)]
        k: u32,
        /// Point count for general-position-points.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search a family for a C(k); exit 0 when found, 1 when free.
    Detect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Pierce a family with lines; writes solution JSON.
    Pierce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PierceMode::ExactMin)]
        mode: PierceMode,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Line budget for exact-min mode (defaults to k-2).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Finest Sperner grid resolution for kkm mode.
        #[arg(long, default_value_t = 16)]
        grid: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a family (plus optional solution) or a chord-system figure.
    Render {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Solution JSON produced by `pierce`.
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Render the chord system at the barycenter for this k instead.
        #[arg(long)]
        chords_k: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the construction lemmas: freeness, max hits, count bound.
    VerifyLemmas {
        #[arg(long, default_value_t = 5)]
        k: u32,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(64)
        }
    }
}

fn read_family(path: &PathBuf) -> Result<Family, Error> {
    load_family(&fs::read_to_string(path)?)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Generate { kind, k, n, seed, out } => {
            let family = match kind {
                GenerateKind::Construction => build_construction(k)?,
                GenerateKind::GeneralPositionPoints => general_position_points(n, seed)?,
                GenerateKind::PentagonCk => pentagon_ck(),
            };
            fs::write(&out, save_family(&family))?;
            println!("wrote {} members to {}", family.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Detect { input, k } => {
            let family = read_family(&input)?;
            match find_ck(&family, k)? {
                Some(cert) => {
                    let order: Vec<String> =
                        cert.order.iter().map(|i| i.to_string()).collect();
                    println!("C({k}) found: {}", order.join(" "));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("C({k})-free");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Pierce { input, mode, k, budget, tolerance, grid, seed, out } => {
            let family = read_family(&input)?;
            let (report, value) = match mode {
                PierceMode::ExactMin => {
                    let budget = budget.unwrap_or(k.saturating_sub(2).max(1));
                    match min_piercing_lines(&family, budget)? {
                        Some(sol) => {
                            let lines: Vec<serde_json::Value> = sol
                                .lines
                                .iter()
                                .map(|l| {
                                    serde_json::json!({
                                        "a": l.a.to_string(),
                                        "b": l.b.to_string(),
                                        "c": l.c.to_string(),
                                    })
                                })
                                .collect();
                            let value = serde_json::json!({
                                "status": "pierced",
                                "lines": lines,
                                "assignment": sol.assignment,
                                "diagnostics": { "best_g": 0.0, "resolution": 0 },
                            });
                            (format!("pierced with {} lines", sol.lines.len()), value)
                        }
                        None => {
                            println!("none within budget");
                            return Ok(ExitCode::from(2));
                        }
                    }
                }
                PierceMode::Kkm => {
                    let mut config = SearchConfig {
                        seed,
                        ..SearchConfig::default()
                    };
                    config.resolutions.retain(|&m| m <= grid);
                    if let Ok(t) = std::env::var("CKPIERCE_THREADS") {
                        if let Ok(t) = t.parse::<usize>() {
                            config.threads = t.max(1);
                        }
                    }
                    let result = find_piercing_lines_with(&family, k, tolerance, &config)?;
                    let report = match &result.outcome {
                        SearchOutcome::Pierced(sol) => {
                            format!("pierced with {} lines", sol.lines.len())
                        }
                        SearchOutcome::Witness(d) => {
                            let order: Vec<String> =
                                d.certificate.order.iter().map(|i| i.to_string()).collect();
                            format!("C({k}) witness: {}", order.join(" "))
                        }
                        SearchOutcome::Unresolved => "unresolved".into(),
                    };
                    (report, solution_to_json(&result))
                }
            };
            println!("{report}");
            if let Some(out) = out {
                let text = serde_json::to_string_pretty(&value)
                    .map_err(|e| Error::Parse(e.to_string()))?;
                fs::write(&out, text + "\n")?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { input, solution, chords_k, out } => {
            let svg = match (input, chords_k) {
                (Some(path), None) => {
                    let family = read_family(&path)?;
                    let lines = match solution {
                        None => Vec::new(),
                        Some(sol_path) => parse_solution_lines(&fs::read_to_string(sol_path)?)?,
                    };
                    render_family(&family, &lines)?
                }
                (None, Some(k)) => {
                    render_chord_system(&SimplexPoint::barycenter(2 * (k - 2)), k)?
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "pass exactly one of --in or --chords-k".into(),
                    ))
                }
            };
            fs::write(&out, svg)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyLemmas { k } => {
            let family = build_construction(k)?;
            let mut ok = true;

            for kk in [k as usize, k as usize + 1] {
                let free = find_ck(&family, kk)?.is_none();
                ok &= free;
                println!(
                    "freeness: construction k={k} is {}",
                    if free { format!("C({kk})-free") } else { format!("NOT C({kk})-free") }
                );
            }

            let (hits, _) = max_line_hits(&family)?;
            ok &= hits <= 6;
            println!("max hits: {hits} (bound 6)");
            let candidates = candidate_lines(&family)?;
            let special = &family.members[0];
            let mut special_max = 0usize;
            for line in &candidates.lines {
                if ckpierce::geom::line_meets_body(line, special) {
                    let c = family
                        .members
                        .iter()
                        .filter(|m| ckpierce::geom::line_meets_body(line, m))
                        .count();
                    special_max = special_max.max(c);
                }
            }
            ok &= special_max <= 5;
            println!("max hits through first member: {special_max} (bound 5)");

            let need = (k as usize).div_ceil(2);
            let infeasible_below = !count_bound_check(&family, need as u32 - 1)?;
            ok &= infeasible_below;
            println!(
                "count bound: {} lines are arithmetically insufficient: {}",
                need - 1,
                infeasible_below
            );

            if ok {
                println!("all lemmas hold");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("lemma check FAILED");
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn parse_solution_lines(text: &str) -> Result<Vec<Line>, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Some(items) = value.get("lines").and_then(|l| l.as_array()) else {
        return Ok(Vec::new());
    };
    let mut lines = Vec::with_capacity(items.len());
    for item in items {
        let coeff = |key: &str| -> Result<ckpierce::rat::Rat, Error> {
            let s = item
                .get(key)
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Parse(format!("line missing field {key}")))?;
            ckpierce::rat::parse_rat(s)
        };
        lines.push(Line::from_coeffs(coeff("a")?, coeff("b")?, coeff("c")?)?);
    }
    Ok(lines)
}
