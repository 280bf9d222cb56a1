use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ffrank::analytic;
use ffrank::coreops::{core_rank_bound, kernel_zero_on, peel};
use ffrank::ensemble::{sample_instance, InstanceDump, InstanceSeed};
use ffrank::harness::{self, exit, ExperimentConfig, HarnessError, VerifyOptions};
use ffrank::linalg::Kernel;
use serde_json::json;

#[derive(Parser)]
#[command(name = "ffrank", version, about = "Rank of sparse random matrices over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Phi, phi and phi' at one point.
    Phi {
        #[arg(long)]
        ens: String,
        #[arg(long)]
        alpha: f64,
    },
    /// Largest stationary point of Phi and related diagnostics.
    Rho {
        #[arg(long)]
        ens: String,
    },
    /// Full analytic report: maximizer, rank limit, rate, core fractions, tightness.
    Rate {
        #[arg(long)]
        ens: String,
    },
    /// Sample one instance and report its 2-core and the nullity bound.
    Core {
        #[arg(long)]
        ens: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample one instance and write it as JSON.
    Sample {
        #[arg(long)]
        ens: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dump: PathBuf,
    },
    /// Rank, nullity and frozen coordinates of a dumped instance.
    Rank {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Write alpha, Phi(alpha), phi(alpha) on a uniform grid as CSV.
    Curve {
        #[arg(long)]
        ens: String,
        #[arg(long, default_value_t = 1001)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in assertion battery.
    Verify {
        #[arg(long, default_value_t = VerifyOptions::default().mixed_n)]
        mixed_n: usize,
        #[arg(long, default_value_t = VerifyOptions::default().spike_n)]
        spike_n: usize,
        #[arg(long, default_value_t = VerifyOptions::default().trials)]
        trials: usize,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
    /// Run an experiment described by a TOML or JSON file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
}

fn print(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize"));
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Phi { ens, alpha } => {
            let e = harness::ensemble_from_str(&ens, 0)?;
            print(json!({
                "alpha": alpha,
                "phi": analytic::phi(&e, alpha)?,
                "phi_small": analytic::phi_small(&e, alpha)?,
                "phi_small_deriv": analytic::phi_small_deriv(&e, alpha)?,
            }));
        }
        Command::Rho { ens } => {
            let e = harness::ensemble_from_str(&ens, 0)?;
            let rho = analytic::rho(&e);
            print(json!({
                "rho": rho,
                "stationary_points": analytic::stationary_points(&e),
                "phi_small_deriv_at_rho": analytic::phi_small_deriv(&e, rho)?,
                "density_evolution": analytic::density_evolution(&e, 1_000_000, 1e-12).ok(),
            }));
        }
        Command::Rate { ens } => {
            let e = harness::ensemble_from_str(&ens, 0)?;
            print(serde_json::to_value(analytic::analyze(&e))?);
        }
        Command::Core { ens, n, seed } => {
            let e = harness::ensemble_from_str(&ens, n)?;
            let inst = sample_instance(&e, InstanceSeed(seed))?;
            let b = core_rank_bound(&inst.graph, &inst.matrix);
            let kernel = Kernel::of(&inst.matrix);
            print(json!({
                "n": n,
                "m": inst.graph.n_checks(),
                "n_star": b.n_star,
                "m_star": b.m_star,
                "bound": b.bound,
                "nullity": b.nullity,
                "tight": b.tight,
                "kernel_zero_on_core": kernel_zero_on(&kernel, &b.core.core_vars),
                "peel_rounds": b.core.peel_rounds,
            }));
        }
        Command::Sample { ens, n, seed, dump } => {
            let e = harness::ensemble_from_str(&ens, n)?;
            let inst = sample_instance(&e, InstanceSeed(seed))?;
            InstanceDump::new(&inst.graph, &inst.matrix, Some(seed)).write(&dump)?;
            print(json!({
                "path": dump,
                "n": n,
                "m": inst.graph.n_checks(),
                "edges": inst.graph.edges().len(),
                "nnz": inst.matrix.nnz(),
            }));
        }
        Command::Rank { instance } => {
            let (graph, matrix) = InstanceDump::read(&instance)?.into_parts()?;
            let kernel = Kernel::of(&matrix);
            let core = peel(&graph);
            print(json!({
                "n": matrix.n_cols(),
                "m": matrix.n_rows(),
                "rank": matrix.n_cols() - kernel.dim(),
                "nullity": kernel.dim(),
                "frozen": kernel.frozen().len(),
                "n_star": core.n_star,
                "m_star": core.m_star,
            }));
        }
        Command::Curve { ens, points, out } => {
            let e = harness::ensemble_from_str(&ens, 0)?;
            let pts = harness::emit_curve(&e, points, &out)?;
            let max = pts.iter().map(|p| p.phi).fold(f64::NEG_INFINITY, f64::max);
            print(json!({ "path": out, "points": pts.len(), "max_phi_on_grid": max }));
        }
        Command::Verify {
            mixed_n,
            spike_n,
            trials,
            seed,
        } => {
            let report = harness::verify_examples(VerifyOptions {
                mixed_n,
                spike_n,
                trials,
                seed,
            })?;
            for c in &report.checks {
                println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            return Ok(if report.all_pass() { exit::PASS } else { exit::TOLERANCE });
        }
        Command::Experiment { config } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let res = harness::run_experiment(&cfg)?;
            print(serde_json::to_value(&res.summary)?);
            return Ok(res.summary.exit_code());
        }
    }
    Ok(exit::PASS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
