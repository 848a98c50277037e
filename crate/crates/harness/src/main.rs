use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use groupmark::output::{write_scenario_files, write_sweep_file};
use groupmark::{
    export_replicate, ingest_and_mark, parse_schemes, run_scenario, simulate_replicate,
    sweep_group_size, sweep_population, ExperimentConfig, HarnessError, Result, ScenarioRun,
    Sweep,
};
use groupmark_core::{Noise, Params, RmsConvention, Scheme};

#[derive(Parser)]
#[command(name = "groupmark", version, about = "Individualised marks from group-project marks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replicated simulation of one scenario; writes errors.csv and scatter.csv.
    Scenario {
        #[command(flatten)]
        sim: SimArgs,
        /// Also export replicate 0 as a cohort directory.
        #[arg(long, value_name = "DIR")]
        export_cohort: Option<PathBuf>,
    },
    /// Sweep group size with rounds equal to group size; writes sweep_m.csv.
    SweepM {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_delimiter = ',', default_value = "2,4,13,26,52")]
        m_values: Vec<usize>,
    },
    /// Sweep population size; writes sweep_n.csv.
    SweepN {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_delimiter = ',', default_value = "28,52,104")]
        n_values: Vec<usize>,
    },
    /// Apply one scheme to a cohort directory; writes marks.csv.
    Mark {
        #[arg(long, value_name = "DIR")]
        cohort: PathBuf,
        #[arg(long)]
        scheme: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.7)]
    ra_alpha: f64,
    #[arg(long, default_value_t = 0.25)]
    pr_a: f64,
    #[arg(long, default_value_t = 1.0)]
    pr_b: f64,
    #[arg(long, default_value_t = 0.65)]
    pr_alpha: f64,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, default_value_t = 52)]
    students: usize,
    #[arg(long, default_value_t = 4)]
    group_size: usize,
    /// Projects per student; defaults to the group size.
    #[arg(long)]
    rounds: Option<usize>,
    /// Comma-separated scheme names, or `all`.
    #[arg(long, default_value = "all")]
    schemes: String,
    #[arg(long, default_value_t = 200)]
    replicates: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 16.0)]
    noise_half_range: f64,
    #[command(flatten)]
    params: ParamArgs,
    /// Population mean of ideal marks.
    #[arg(long, default_value_t = 60.0)]
    mean: f64,
    /// Population standard deviation of ideal marks.
    #[arg(long, default_value_t = 12.0)]
    sd: f64,
    #[arg(long, default_value = "paper", value_parser = ["paper", "standard"])]
    rms_convention: String,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

impl ParamArgs {
    fn to_params(&self, noise_half_range: f64) -> Result<Params> {
        let params = Params {
            ra_alpha: self.ra_alpha,
            pr_a: self.pr_a,
            pr_b: self.pr_b,
            pr_alpha: self.pr_alpha,
            noise: Noise::uniform(noise_half_range)?,
            ..Params::default()
        };
        params.validate()?;
        Ok(params)
    }
}

impl SimArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let cfg = ExperimentConfig {
            students: self.students,
            group_size: self.group_size,
            rounds: self.rounds.unwrap_or(self.group_size),
            schemes: parse_schemes(&self.schemes)?,
            params: self.params.to_params(self.noise_half_range)?,
            replicates: self.replicates,
            seed: self.seed,
            mean: self.mean,
            sd: self.sd,
            rms_convention: self.rms_convention.parse::<RmsConvention>()?,
        };
        if cfg.replicates == 0 {
            return Err(HarnessError::Config("replicates must be at least 1".into()));
        }
        Ok(cfg)
    }
}

fn out_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| HarnessError::io(path, e))
}

fn report_notes(notes: impl IntoIterator<Item = String>) {
    for n in notes {
        if n.starts_with("note:") || n.starts_with("warning:") {
            eprintln!("{n}");
        } else {
            eprintln!("note: {n}");
        }
    }
}

fn print_summary(run: &ScenarioRun) {
    let conv = run.config.rms_convention;
    println!("scheme  E_mean    E_max     E_rms({conv})  replicates");
    for s in run.config.scheme_list() {
        if let Some(e) = run.mean_errors(s) {
            let rms = match conv {
                RmsConvention::Paper => e.e_rms,
                RmsConvention::Standard => e.e_rms_standard,
            };
            println!(
                "{:<6}  {:<8.4}  {:<8.4}  {:<12.4}  {}",
                s.label(),
                e.e_mean,
                e.e_max,
                rms,
                e.replicates
            );
        }
    }
}

fn finish_sweep(sweep: Sweep, path: &Path, key: &str, conv: RmsConvention) -> Result<()> {
    report_notes(sweep.skipped.iter().cloned());
    write_sweep_file(path, key, &sweep, conv)?;
    for p in &sweep.points {
        report_notes(p.run.diagnostics());
    }
    match sweep.points.into_iter().find_map(|p| p.run.failure) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Scenario { sim, export_cohort } => {
            let cfg = sim.config()?;
            out_dir(&sim.out)?;
            if let Some(dir) = export_cohort {
                cfg.validate()?;
                export_replicate(&simulate_replicate(&cfg, 0)?, &dir)?;
            }
            let run = run_scenario(&cfg)?;
            write_scenario_files(&sim.out, &run.outcomes, cfg.rms_convention)?;
            report_notes(run.diagnostics());
            print_summary(&run);
            run.into_result().map(drop)
        }
        Command::SweepM { sim, m_values } => {
            let cfg = sim.config()?;
            out_dir(&sim.out)?;
            let sweep = sweep_group_size(&cfg, &m_values)?;
            finish_sweep(sweep, &sim.out.join("sweep_m.csv"), "m", cfg.rms_convention)
        }
        Command::SweepN { sim, n_values } => {
            let cfg = sim.config()?;
            out_dir(&sim.out)?;
            let sweep = sweep_population(&cfg, &n_values)?;
            finish_sweep(sweep, &sim.out.join("sweep_n.csv"), "n", cfg.rms_convention)
        }
        Command::Mark {
            cohort,
            scheme,
            params,
            out,
        } => {
            let scheme: Scheme = scheme.parse()?;
            let params = params.to_params(0.0)?;
            let (data, marks) = ingest_and_mark(&cohort, scheme, &params)?;
            out_dir(&out)?;
            data.write_marks(&out.join("marks.csv"), &marks)?;
            report_notes(marks.diagnostics);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = serde_json::json!({ "error": "usage", "message": e.to_string().trim() });
            eprintln!("{msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
