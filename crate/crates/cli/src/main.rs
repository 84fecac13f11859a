//! `geodesic`: command-line access to the index-iteration calculus.
//!
//! Data goes to stdout as CSV (default) or one JSON document
//! (`--format structured`); diagnostics go to stderr. Exit status is 0 on
//! success, 2 on bad input, and 1 when `verify` finds a survivor.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use closed_geodesic::scalar::approx;
use closed_geodesic::verifier::{check_prop33, verify_theorem};
use closed_geodesic::{
    aggregate_w, format_ratio, morse_q_recursion, parse_profile, poincare_coefficients, BigInt,
    BigProfile, Step,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "geodesic", version, about = "Exact index iteration for closed geodesics")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Structured,
}

#[derive(Args)]
struct ProfileArg {
    /// Profile document (JSON).
    #[arg(long)]
    profile: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers b_0..b_K of the loop space of Sⁿ.
    Betti {
        #[arg(long)]
        n: u64,
        #[arg(long = "max-k")]
        max_k: u64,
    },
    /// ind(cᵐ) for m = 1..M.
    Iterate {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long = "max-m")]
        max_m: u64,
    },
    /// Average index.
    Alpha {
        #[command(flatten)]
        profile: ProfileArg,
    },
    /// The γ invariant.
    Gamma {
        #[command(flatten)]
        profile: ProfileArg,
    },
    /// Decomposition of ind(c^{m+1}) - ind(cᵐ).
    Gaps {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long)]
        m: u64,
    },
    /// k ≤ H with ind(c^{2k+1}) - ind(c^{2k-1}) = 2 ind(c).
    Jumps {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long)]
        horizon: u64,
    },
    /// Morse inequalities up to degree K.
    Morse {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long = "max-k")]
        max_k: u64,
    },
    /// Structure conclusions for ind(c) = n-1, ind(c²) ≥ n, α < 2|γ|.
    Prop33 {
        #[command(flatten)]
        profile: ProfileArg,
        /// Iterates compared for monotonicity; defaults to the largest
        /// collision-free range, capped at 10000.
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Contradiction search over every single-geodesic candidate.
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 200)]
        horizon: u64,
        #[arg(long, default_value_t = 499)]
        q: u64,
    },
}

struct Output {
    csv: String,
    structured: Value,
    status: u8,
}

impl Output {
    fn ok(csv: String, structured: Value) -> Self {
        Output { csv, structured, status: 0 }
    }
}

fn load(arg: &ProfileArg) -> Result<BigProfile, String> {
    let text = std::fs::read_to_string(&arg.profile)
        .map_err(|e| format!("cannot read {}: {e}", arg.profile.display()))?;
    parse_profile::<BigInt>(&text).map_err(|e| format!("{}: {e}", arg.profile.display()))
}

fn run(command: &Command) -> Result<Output, String> {
    let err = |e: closed_geodesic::Error| e.to_string();
    match command {
        Command::Betti { n, max_k } => {
            if *n < 3 {
                return Err(format!("--n must be at least 3, got {n}"));
            }
            let table = poincare_coefficients(*n, *max_k);
            Ok(Output::ok(table.to_csv(), json!({ "n": n, "b": table.ranks() })))
        }
        Command::Iterate { profile, max_m } => {
            let p = load(profile)?;
            let seq = p.index_sequence(*max_m).map_err(err)?;
            let mut csv = String::from("m,ind\n");
            for (i, v) in seq.iter().enumerate() {
                writeln!(csv, "{},{v}", i + 1).unwrap();
            }
            Ok(Output::ok(csv, json!({ "m": (1..=*max_m).collect::<Vec<_>>(), "ind": seq })))
        }
        Command::Alpha { profile } => {
            let p = load(profile)?;
            let alpha = p.average_index();
            eprintln!("alpha ≈ {:.6}", approx(&alpha));
            let s = format_ratio(&alpha);
            Ok(Output::ok(format!("alpha\n{s}\n"), json!({ "alpha": s })))
        }
        Command::Gamma { profile } => {
            let p = load(profile)?;
            let g = p.gamma().map_err(err)?.to_string();
            Ok(Output::ok(format!("gamma\n{g}\n"), json!({ "gamma": g })))
        }
        Command::Gaps { profile, m } => {
            let p = load(profile)?;
            let d = p.gap_decomposition(*m).map_err(err)?;
            let crossing: Vec<String> = d.crossing.iter().map(u64::to_string).collect();
            let csv = format!(
                "m,A_m,B_m,J_m,gap\n{},{},{},{},{}\n",
                d.m,
                d.a,
                d.b,
                crossing.join(" "),
                d.gap()
            );
            Ok(Output::ok(csv, json!({
                "m": d.m, "A": d.a, "B": d.b, "J": d.crossing, "gap": d.gap()
            })))
        }
        Command::Jumps { profile, horizon } => {
            let p = load(profile)?;
            let ks = p.jump_search(*horizon).map_err(err)?;
            let mut csv = String::from("k\n");
            for k in &ks {
                writeln!(csv, "{k}").unwrap();
            }
            Ok(Output::ok(csv, json!({ "horizon": horizon, "k": ks })))
        }
        Command::Morse { profile, max_k } => {
            let p = load(profile)?;
            let w = aggregate_w(&p, *max_k).map_err(err)?;
            let b = poincare_coefficients(p.n(), *max_k).ranks().to_vec();
            let report = morse_q_recursion(&w, &b).map_err(err)?;
            if let Some(k) = report.first_violation {
                eprintln!("infeasible at degree {k}");
            }
            let structured = serde_json::to_value(&report).unwrap();
            Ok(Output::ok(report.to_csv(), structured))
        }
        Command::Prop33 { profile, horizon } => {
            let p = load(profile)?;
            let horizon = match horizon {
                Some(h) => *h,
                None => p
                    .min_phase_denominator()
                    .and_then(|d| u64::try_from(d - BigInt::from(1)).ok())
                    .unwrap_or(10_000)
                    .clamp(2, 10_000),
            };
            let r = check_prop33(&p, horizon).map_err(err)?;
            let rows = [
                ("a", r.part_a()),
                ("b", r.part_b()),
                ("c", r.part_c()),
            ];
            let mut csv = String::from("conclusion,pass\n");
            for (name, pass) in rows {
                writeln!(csv, "{name},{pass}").unwrap();
            }
            if let Some(f) = r.first_failure() {
                eprintln!("{f}");
            }
            Ok(Output::ok(csv, serde_json::to_value(&r).unwrap()))
        }
        Command::Verify { n, horizon, q } => {
            let summary = verify_theorem(*n, *horizon, *q).map_err(err)?;
            let mut csv = String::from("step,count\n");
            for step in Step::ALL {
                let c = summary.by_step.get(&step).copied().unwrap_or(0);
                writeln!(csv, "{step},{c}").unwrap();
            }
            eprintln!(
                "n = {}: {} candidates, {} contradicted, {} survivors",
                summary.n,
                summary.candidates,
                summary.contradicted,
                summary.survivors.len()
            );
            for e in &summary.errors {
                eprintln!("error: {e}");
            }
            for s in &summary.survivors {
                eprintln!("SURVIVOR: {}", s.to_json());
            }
            let status = u8::from(!summary.passed());
            Ok(Output {
                csv,
                structured: serde_json::to_value(&summary).unwrap(),
                status,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Csv => print!("{}", out.csv),
                Format::Structured => {
                    println!("{}", serde_json::to_string_pretty(&out.structured).unwrap())
                }
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
