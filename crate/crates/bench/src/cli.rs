use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use oscm_gaps::exact::{brute_force_oracle, OracleMode};
use oscm_gaps::{count_crossings, count_gaps, generate, BipartiteInstance, GenParams, Permutation};

use crate::algo::{run_algo, AlgoSpec, RunStatus};
use crate::bench::{run_bench, BenchConfig, BenchOptions};
use crate::draw::draw;
use crate::error::CliError;
use crate::plot::bench_plots;
use crate::record::{record_run, write_csv, InstanceMeta};

#[derive(Debug, Parser)]
#[command(name = "oscm-gaps", version, about = "One-sided crossing minimization with gap constraints")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random two-layer instance.
    Generate(GenerateArgs),
    /// Solve an instance with one algorithm and print its run record as CSV.
    Solve(SolveArgs),
    /// Run an experiment sweep and write one CSV row per (instance, algorithm).
    Bench(BenchArgs),
    /// Render an instance and a top-layer order as SVG.
    Draw(DrawArgs),
    /// Optimum by enumeration, for instances with at most 9 top nodes.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "f-dm", default_value_t = 0.2)]
    pub f_dm: f64,
    #[arg(long = "deg-avg", default_value_t = 3.0)]
    pub deg_avg: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instance file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub algo: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long = "time-budget-s", default_value_t = 300.0)]
    pub time_budget_s: f64,
    /// Permutation file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Sweep configuration; the built-in default when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Use 40 nodes per layer in the built-in default.
    #[arg(long = "full-scale")]
    pub full_scale: bool,
    #[arg(long = "time-budget-s", default_value_t = 300.0)]
    pub time_budget_s: f64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// CSV file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for the SVG charts.
    #[arg(long)]
    pub plots: Option<PathBuf>,
    /// Leave timing columns empty.
    #[arg(long = "omit-timing")]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
pub struct DrawArgs {
    pub instance: PathBuf,
    pub permutation: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub instance: PathBuf,
    /// `unrestricted`, `sidegap` or `kgap:<k>`.
    #[arg(long, default_value = "unrestricted")]
    pub mode: String,
    /// Shorthand for `--mode kgap:<k>`.
    #[arg(long, conflicts_with = "mode")]
    pub k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<BipartiteInstance, CliError> {
    let inst = BipartiteInstance::from_json(&read(path)?)?;
    inst.ensure_valid()?;
    Ok(inst)
}

fn budget(seconds: f64) -> Result<Duration, CliError> {
    Duration::try_from_secs_f64(seconds).map_err(|_| CliError::Input(format!("bad time budget {seconds}")))
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Generate(a) => generate_cmd(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Draw(a) => draw_cmd(a),
        Command::Oracle(a) => oracle_cmd(a),
    }
}

fn generate_cmd(a: GenerateArgs) -> Result<i32, CliError> {
    let params = GenParams { n: a.n, f_dm: a.f_dm, deg_avg: a.deg_avg, seed: a.seed };
    let inst = generate(&params)?;
    let mut text = inst.to_json();
    text.push('\n');
    emit(a.out.as_deref(), &text)?;
    if let Some(path) = &a.out {
        println!(
            "wrote {}: {} bottom, {} top ({} dummy), {} edges",
            path.display(),
            inst.bottom().len(),
            inst.top().len(),
            inst.dummy_top_ids().count(),
            inst.edges().len()
        );
    }
    Ok(0)
}

fn solve_cmd(a: SolveArgs) -> Result<i32, CliError> {
    let inst = load_instance(&a.instance)?;
    let spec = AlgoSpec::parse(&a.algo, a.k)?;
    let outcome = run_algo(&inst, spec, budget(a.time_budget_s)?)?;
    let meta = InstanceMeta {
        instance_id: a.instance.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned()),
        seed: None,
        n: inst.top().len(),
        f_dm: None,
        deg_avg: None,
    };
    let record = record_run(&inst, &meta, &spec, &outcome)?;
    if let Some(path) = &a.out {
        write(path, &format!("{}\n", outcome.permutation.to_json()))?;
    }
    write_csv(std::io::stdout().lock(), &[record])?;
    Ok(if outcome.status == RunStatus::TimeoutIncumbent { 3 } else { 0 })
}

fn bench_cmd(a: BenchArgs) -> Result<i32, CliError> {
    let config = match &a.config {
        Some(path) => BenchConfig::from_json(&read(path)?)?,
        None => BenchConfig::default_config(a.full_scale),
    };
    if a.jobs == 0 {
        return Err(CliError::Input("--jobs must be at least 1".into()));
    }
    let opts = BenchOptions { time_budget: budget(a.time_budget_s)?, jobs: a.jobs, omit_timing: a.omit_timing };
    let rows = run_bench(&config, &opts)?;
    let records: Vec<_> = rows.iter().map(|r| r.record.clone()).collect();
    let mut buf = Vec::new();
    write_csv(&mut buf, &records)?;
    emit(a.out.as_deref(), &String::from_utf8(buf).map_err(|e| CliError::Internal(e.to_string()))?)?;
    if let Some(dir) = &a.plots {
        fs::create_dir_all(dir)?;
        for (name, svg) in bench_plots(&rows, config.sweep_param) {
            write(&dir.join(name), &svg)?;
        }
    }
    let failed = records.iter().filter(|r| r.status.starts_with("error")).count();
    let timeouts = records.iter().filter(|r| r.status == RunStatus::TimeoutIncumbent.as_str()).count();
    eprintln!("{} runs, {failed} failed, {timeouts} timed out", records.len());
    Ok(if timeouts > 0 { 3 } else { 0 })
}

fn draw_cmd(a: DrawArgs) -> Result<i32, CliError> {
    let inst = load_instance(&a.instance)?;
    let pi2 = Permutation::from_json(&read(&a.permutation)?)?;
    emit(a.out.as_deref(), &draw(&inst, &pi2)?)?;
    Ok(0)
}

fn oracle_cmd(a: OracleArgs) -> Result<i32, CliError> {
    let inst = load_instance(&a.instance)?;
    let mode = match a.k {
        Some(k) => OracleMode::KGap(k),
        None => a.mode.parse().map_err(CliError::Input)?,
    };
    let (pi2, crossings) = brute_force_oracle(&inst, mode)?;
    debug_assert_eq!(count_crossings(&inst, &pi2).ok(), Some(crossings));
    if let Some(path) = &a.out {
        write(path, &format!("{}\n", pi2.to_json()))?;
    }
    println!("{mode}: crossings {crossings}, gaps {}", count_gaps(&inst, &pi2).count);
    Ok(0)
}
