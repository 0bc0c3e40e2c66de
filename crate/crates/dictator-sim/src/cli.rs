//! Command-line interface: `run`, `sweep` and `validate`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sim_core::{validate_params, SimParams};

use crate::error::HarnessError;
use crate::export::{
    export_aggregates, export_clustering_scatter, export_snapshot, export_timeseries,
};
use crate::plan::{preset, sweep_presets, ExperimentPlan, GridPoint};
use crate::runner::{run_ensemble, run_single};

/// Environment variable providing the default output directory.
pub const OUT_ENV_VAR: &str = "DICTATOR_SIM_OUT";

#[derive(Parser)]
#[command(
    name = "dictator-sim",
    version,
    about = "Simulator of the repeated dictator game on a co-evolving social network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and export its time series and final snapshot
    Run(RunArgs),
    /// Run an ensemble parameter sweep and export aggregate statistics
    Sweep(SweepArgs),
    /// Check parameter values and print degenerate-regime warnings
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Number of agents
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Living cost per cycle, in units of the stake
    #[arg(long, default_value_t = 0.0)]
    cost: f64,
    /// Maximum pace of forgetting per cycle
    #[arg(long, default_value_t = 0.0)]
    memory: f64,
    /// Number of game cycles
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Mean degree of the initial random graph
    #[arg(long, default_value_t = 4.0)]
    init_degree: f64,
    /// Also export a snapshot every this many cycles
    #[arg(long, value_name = "CYCLES")]
    snapshot_every: Option<usize>,
    /// Output directory [default: $DICTATOR_SIM_OUT or "."]
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Named preset: fig3, fig6, fig7, fig8 or fig9
    #[arg(long, conflicts_with_all = ["plan", "grid_c", "grid_gamma", "grid_n"])]
    preset: Option<String>,
    /// Plan file (TOML) mirroring the sweep configuration
    #[arg(long, value_name = "FILE", conflicts_with_all = ["grid_c", "grid_gamma", "grid_n"])]
    plan: Option<PathBuf>,
    /// Comma-separated living costs
    #[arg(long, value_delimiter = ',', value_name = "C,..")]
    grid_c: Vec<f64>,
    /// Comma-separated forgetting paces
    #[arg(long, value_delimiter = ',', value_name = "G,..")]
    grid_gamma: Vec<f64>,
    /// Comma-separated population sizes
    #[arg(long, value_delimiter = ',', value_name = "N,..")]
    grid_n: Vec<usize>,
    /// Seeded realizations per grid point
    #[arg(long)]
    realizations: Option<usize>,
    /// Master seed for per-run seed derivation
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory [default: $DICTATOR_SIM_OUT or "."]
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Number of agents
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Living cost per cycle, in units of the stake
    #[arg(long, default_value_t = 0.0)]
    cost: f64,
    /// Maximum pace of forgetting per cycle
    #[arg(long, default_value_t = 0.0)]
    memory: f64,
}

/// Entry point used by `main` and the CLI tests. Returns the process
/// exit code: 0 on success, 1 on configuration or usage errors, 2 on
/// I/O errors.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Sweep(args) => sweep_command(args),
        Command::Validate(args) => validate_command(args),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn resolve_out(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn run_command(args: RunArgs) -> Result<(), HarnessError> {
    let params = SimParams {
        n_agents: args.n,
        cost: args.cost,
        memory: args.memory,
        cycles: args.steps,
        init_mean_degree: args.init_degree,
        seed: args.seed,
        ..SimParams::default()
    };
    for warning in validate_params(&params)? {
        eprintln!("warning: {warning}");
    }

    let snapshot_cycles: Vec<usize> = match args.snapshot_every {
        Some(0) => {
            return Err(HarnessError::Config(
                "--snapshot-every must be at least 1".into(),
            ))
        }
        Some(every) => (1..=params.cycles / every).map(|k| k * every).collect(),
        None => Vec::new(),
    };

    let out = resolve_out(args.out);
    let output = run_single(&params, params.seed, &snapshot_cycles)?;

    export_timeseries(&output.series, out.join("timeseries.csv"))?;
    for snapshot in &output.snapshots {
        export_snapshot(snapshot, out.join(format!("snapshot_c{:06}.json", snapshot.cycle)))?;
    }
    export_snapshot(&output.final_state, out.join("snapshot_final.json"))?;
    export_clustering_scatter(&output.final_state, out.join("clustering_scatter.csv"))?;

    println!(
        "[run] n={} cost={} memory={} steps={} seed={}: wrote {} cycle records to {}",
        args.n,
        args.cost,
        args.memory,
        params.cycles,
        params.seed,
        output.series.len(),
        out.display()
    );
    Ok(())
}

fn base_plan(args: &SweepArgs) -> Result<ExperimentPlan, HarnessError> {
    if let Some(name) = &args.preset {
        return preset(name).ok_or_else(|| {
            let known: Vec<&str> = sweep_presets().iter().map(|(n, _)| *n).collect();
            HarnessError::Config(format!(
                "unknown preset {name:?}; known presets: {}",
                known.join(", ")
            ))
        });
    }
    if let Some(path) = &args.plan {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        return toml::from_str(&text).map_err(|e| HarnessError::parse(path, e.to_string()));
    }
    let costs = if args.grid_c.is_empty() { vec![0.0] } else { args.grid_c.clone() };
    let gammas = if args.grid_gamma.is_empty() { vec![0.0] } else { args.grid_gamma.clone() };
    let populations = if args.grid_n.is_empty() { vec![100] } else { args.grid_n.clone() };
    let mut grid = Vec::new();
    for &n_agents in &populations {
        for &memory in &gammas {
            for &cost in &costs {
                grid.push(GridPoint { cost, memory, n_agents });
            }
        }
    }
    Ok(ExperimentPlan {
        grid,
        ..ExperimentPlan::default()
    })
}

fn sweep_command(args: SweepArgs) -> Result<(), HarnessError> {
    let mut plan = base_plan(&args)?;
    if let Some(realizations) = args.realizations {
        plan.realizations = realizations;
    }
    if let Some(seed) = args.seed {
        plan.master_seed = seed;
    }
    let out = resolve_out(args.out);
    plan.output_dir = Some(out.clone());
    plan.validate()?;

    let mut warned = Vec::new();
    for index in 0..plan.grid.len() {
        for warning in validate_params(&plan.params_at(index, 0))? {
            let text = warning.to_string();
            if !warned.contains(&text) {
                eprintln!("warning: {text}");
                warned.push(text);
            }
        }
    }

    println!(
        "[sweep] {} grid points x {} realizations ({} cycles each)",
        plan.grid.len(),
        plan.realizations,
        plan.base.cycles
    );
    let records = run_ensemble(&plan)?;
    export_aggregates(&records, out.join("aggregates.csv"))?;

    let plan_text =
        toml::to_string_pretty(&plan).map_err(|e| HarnessError::Config(e.to_string()))?;
    let plan_path = out.join("plan.toml");
    std::fs::write(&plan_path, plan_text).map_err(|e| HarnessError::io(&plan_path, e))?;

    println!(
        "[sweep] wrote {} aggregate rows and raw series to {}",
        records.len(),
        out.display()
    );
    Ok(())
}

fn validate_command(args: ValidateArgs) -> Result<(), HarnessError> {
    let params = SimParams {
        n_agents: args.n,
        cost: args.cost,
        memory: args.memory,
        ..SimParams::default()
    };
    let warnings = validate_params(&params)?;
    if warnings.is_empty() {
        println!("parameters are within the documented bounds");
    }
    for warning in warnings {
        println!("warning: {warning}");
    }
    Ok(())
}
