//! `wic` front end: optimal transmit powers for a two-user interference
//! network with an eavesdropper.
//!
//! Subcommands: `solve` a single scenario file, `verify` the closed-form
//! solvers against the grid oracle on random instances, `montecarlo` a full
//! averaged campaign to CSV, and `sweep` (a campaign with one trial and a
//! fixed channel injected from a scenario file).
//!
//! Exit codes: 0 success, 1 usage/parse/I-O error, 2 QoS infeasible,
//! 3 verification failure.

mod scenario;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use wic::allocation::PowerAllocation;
use wic::altruistic::{secrecy_feasibility, solve_altruistic};
use wic::benchmark::{secrecy_energy_efficiency, solve_single_user};
use wic::case_tables::{cross_check_altruistic, cross_check_egoistic, TableCheck};
use wic::egoistic::{egoistic_bounds, solve_egoistic};
use wic::oracle::{compare, eps_grid, grid_search, OracleConfig};
use wic::sim::{run_montecarlo_with, trial_channel, write_records_to_path, MonteCarloConfig};
use wic::{ChannelInstance, PowerBudget, Scenario};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: scenario/config files, flag combinations.
    Parse(String),
    /// The QoS floor is unreachable within user 2's budget.
    QosInfeasible(String),
    Io(String),
    /// `verify` found a feasibility violation or an oracle gap.
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::QosInfeasible(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::QosInfeasible(m)
            | CliError::Io(m)
            | CliError::Verification(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "wic", version, about = "Secrecy-rate power control in a two-user interference network with an eavesdropper")]
struct Cli {
    /// Relative tolerance for inequality (QoS, budget) checks.
    #[arg(long, global = true, default_value_t = wic::DEFAULT_TOL)]
    tol: f64,
    /// RNG seed (verify; overrides the config seed for montecarlo).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; 0 picks the core count.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Also evaluate the closed-form case tables and report how they compare
    /// against the generic solver.
    #[arg(long, global = true)]
    paper_faithful: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one scenario file and print the optimal allocation.
    Solve {
        /// Path to a scenario JSON file.
        scenario: PathBuf,
        /// Echo the parsed scenario as canonical JSON and exit.
        #[arg(long)]
        dump_scenario: bool,
    },
    /// Check the closed-form solver against the grid oracle on random
    /// channels.
    Verify {
        #[arg(long, default_value_t = 2000)]
        count: u64,
        #[arg(long, default_value_t = 200)]
        grid_n: usize,
        /// altruistic or egoistic.
        #[arg(long, default_value = "altruistic")]
        scenario: String,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 2.0)]
        pmax1: f64,
        #[arg(long, default_value_t = 2.0)]
        pmax2: f64,
    },
    /// Run an averaged Monte-Carlo campaign from a config file to CSV.
    Montecarlo {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Single-channel sweep: a campaign with one trial and the scenario
    /// file's channel injected into every cell.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Comma-separated pmax1 grid (default: the scenario's pmax1).
        #[arg(long, value_delimiter = ',')]
        pmax1_grid: Option<Vec<f64>>,
        /// Comma-separated pmax2 grid (default: the scenario's pmax2).
        #[arg(long, value_delimiter = ',')]
        pmax2_grid: Option<Vec<f64>>,
        /// Comma-separated gamma list (default: the scenario's QoS floor).
        #[arg(long, value_delimiter = ',')]
        gamma_list: Option<Vec<f64>>,
        /// Comma-separated scenario list (default: the scenario file's).
        #[arg(long, value_delimiter = ',')]
        scenarios: Option<Vec<String>>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool built once at startup");
    }
    if let Err(e) = run(&cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Solve { scenario, dump_scenario } => cmd_solve(cli, scenario, *dump_scenario),
        Cmd::Verify { count, grid_n, scenario, gamma, pmax1, pmax2 } => {
            cmd_verify(cli, *count, *grid_n, scenario, *gamma, *pmax1, *pmax2)
        }
        Cmd::Montecarlo { config, output } => cmd_montecarlo(cli, config, output),
        Cmd::Sweep { scenario, output, pmax1_grid, pmax2_grid, gamma_list, scenarios } => {
            cmd_sweep(cli, scenario, output, pmax1_grid, pmax2_grid, gamma_list, scenarios)
        }
    }
}

fn solve_scenario(
    loaded: &scenario::LoadedScenario,
) -> Result<PowerAllocation, CliError> {
    let qos_err = |e: wic::QosInfeasible| CliError::QosInfeasible(e.to_string());
    match loaded.scenario {
        Scenario::Altruistic => {
            solve_altruistic(&loaded.channel, loaded.qos.gamma, &loaded.budget).map_err(qos_err)
        }
        Scenario::Egoistic => {
            solve_egoistic(&loaded.channel, loaded.qos.gamma, &loaded.budget).map_err(qos_err)
        }
        Scenario::SingleUser => Ok(solve_single_user(&loaded.single_user())),
    }
}

fn cmd_solve(cli: &Cli, path: &Path, dump: bool) -> Result<(), CliError> {
    let loaded = scenario::load(path)?;
    if dump {
        println!("{}", scenario::dump(&loaded.file));
        return Ok(());
    }
    let ch = &loaded.channel;
    let regime = ch.sic_regime();
    let alloc = solve_scenario(&loaded)?;

    println!("scenario: {}", loaded.scenario);
    print!("sic regime: {}", regime.case);
    match regime.omega {
        Some(w) => println!(", omega = {w}"),
        None => println!(),
    }
    let feas_label = match loaded.scenario {
        Scenario::Altruistic => {
            let f = secrecy_feasibility(ch);
            match f.bound {
                Some(b) => format!("{} (bound = {b})", f.case),
                None => f.case.to_string(),
            }
        }
        Scenario::Egoistic => {
            let b = egoistic_bounds(ch, loaded.qos.gamma, &loaded.budget);
            match b.bound {
                Some(v) => format!("{} (bound = {v})", b.case),
                None => b.case.to_string(),
            }
        }
        Scenario::SingleUser => {
            if ch.g11 > ch.g1e { "data link dominates" } else { "wiretap link dominates" }.into()
        }
    };
    println!("feasibility: {feas_label}");
    println!("p1 = {}", alloc.p1);
    println!("p2 = {}", alloc.p2);
    println!("secrecy = {} bits/s/Hz", alloc.secrecy);
    println!("qos sinr = {} (gamma = {})", alloc.qos_sinr, loaded.qos.gamma);
    println!("sic blocked: {}", alloc.sic_blocked);
    println!("branch: {}", alloc.branch);
    println!(
        "secrecy energy efficiency = {} bits/s/Hz/W",
        secrecy_energy_efficiency(alloc.secrecy, alloc.p1)
    );
    if cli.paper_faithful && loaded.scenario != Scenario::SingleUser {
        let checks = match loaded.scenario {
            Scenario::Altruistic => cross_check_altruistic(ch, loaded.qos.gamma, &loaded.budget),
            _ => cross_check_egoistic(ch, loaded.qos.gamma, &loaded.budget),
        };
        for c in checks {
            println!(
                "case-table {}: table {} vs generic {} -> {}{}",
                c.table.label(),
                c.table_power,
                c.generic_power,
                if c.matches { "match" } else { "DISCREPANCY" },
                if c.advisory { " (advisory)" } else { "" }
            );
        }
    }
    // Machine-readable record.
    println!(
        "{}",
        serde_json::json!({
            "scenario": loaded.scenario.name(),
            "regime": regime.case.label(),
            "feasibility": feas_label,
            "p1": alloc.p1,
            "p2": alloc.p2,
            "secrecy": alloc.secrecy,
            "qos_sinr": alloc.qos_sinr,
            "sic_blocked": alloc.sic_blocked,
            "branch": alloc.branch.to_string(),
        })
    );
    Ok(())
}

fn cmd_verify(
    cli: &Cli,
    count: u64,
    grid_n: usize,
    scenario: &str,
    gamma: f64,
    pmax1: f64,
    pmax2: f64,
) -> Result<(), CliError> {
    let scenario = Scenario::parse(scenario)
        .filter(|s| *s != Scenario::SingleUser)
        .ok_or_else(|| CliError::Parse(format!("scenario must be altruistic or egoistic, got {scenario:?}")))?;
    let seed = cli.seed.unwrap_or(1);
    let budget =
        PowerBudget::new(pmax1, pmax2).map_err(|e| CliError::Parse(e.to_string()))?;
    if gamma < 0.0 || !gamma.is_finite() {
        return Err(CliError::Parse(format!("gamma must be finite and >= 0, got {gamma}")));
    }
    if grid_n < 2 {
        return Err(CliError::Parse("grid-n must be at least 2".into()));
    }
    let cfg = OracleConfig::new(grid_n, scenario);
    let tol = cli.tol;
    let t0 = Instant::now();

    struct Outcome {
        pass: bool,
        gap: f64,
        infeasible_alloc: bool,
        checks: Vec<TableCheck>,
    }

    let outcomes: Vec<Outcome> = (0..count)
        .into_par_iter()
        .map(|t| {
            let ch = trial_channel(seed, t);
            let closed = match scenario {
                Scenario::Altruistic => solve_altruistic(&ch, gamma, &budget),
                Scenario::Egoistic => solve_egoistic(&ch, gamma, &budget),
                Scenario::SingleUser => unreachable!(),
            };
            let oracle = grid_search(&ch, gamma, &budget, &cfg);
            let checks = if cli.paper_faithful {
                match scenario {
                    Scenario::Altruistic => cross_check_altruistic(&ch, gamma, &budget),
                    _ => cross_check_egoistic(&ch, gamma, &budget),
                }
            } else {
                Vec::new()
            };
            match (closed, oracle) {
                (Ok(c), Ok(o)) => {
                    let eps = eps_grid(&ch, gamma, &budget, &cfg);
                    let rep = compare(&ch, gamma, &budget, &c, &o, eps, tol);
                    Outcome {
                        pass: rep.pass,
                        gap: rep.secrecy_gap,
                        infeasible_alloc: !rep.feasible,
                        checks,
                    }
                }
                (Err(_), Err(_)) => Outcome { pass: true, gap: 0.0, infeasible_alloc: false, checks },
                _ => Outcome { pass: false, gap: f64::NAN, infeasible_alloc: true, checks },
            }
        })
        .collect();

    let passes = outcomes.iter().filter(|o| o.pass).count() as u64;
    let violations = outcomes.iter().filter(|o| o.infeasible_alloc).count();
    let worst_gap = outcomes.iter().map(|o| o.gap).fold(f64::INFINITY, f64::min);
    println!(
        "verify {scenario}: {passes}/{count} pass (grid_n = {grid_n}, seed = {seed}, gamma = {gamma}, \
         pmax = ({pmax1}, {pmax2}))"
    );
    println!(
        "worst secrecy gap vs oracle: {}",
        if worst_gap.is_finite() { format!("{worst_gap:.6e}") } else { "n/a".into() }
    );
    if violations > 0 {
        println!("feasibility violations: {violations}");
    }
    if cli.paper_faithful {
        let mut by_table: BTreeMap<&'static str, (u64, u64, bool)> = BTreeMap::new();
        for o in &outcomes {
            for c in &o.checks {
                let e = by_table.entry(c.table.label()).or_insert((0, 0, c.advisory));
                e.0 += 1;
                e.1 += c.matches as u64;
            }
        }
        for (label, (checked, matched, advisory)) in &by_table {
            println!(
                "case-table {label}: {matched}/{checked} match{}",
                if *advisory { " (advisory)" } else { "" }
            );
        }
    }
    println!("elapsed: {:.2?}", t0.elapsed());
    if passes != count {
        return Err(CliError::Verification(format!(
            "{} of {count} instances failed the oracle comparison",
            count - passes
        )));
    }
    Ok(())
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct CampaignFile {
    seed: u64,
    trials: usize,
    pmax1_grid: Vec<f64>,
    pmax2_grid: Vec<f64>,
    gamma_list: Vec<f64>,
    scenarios: Vec<String>,
}

fn campaign_config(file: CampaignFile, seed_override: Option<u64>) -> Result<MonteCarloConfig, CliError> {
    if file.trials == 0 {
        return Err(CliError::Parse("trials must be >= 1".into()));
    }
    if file.pmax1_grid.is_empty() || file.pmax2_grid.is_empty() || file.gamma_list.is_empty() {
        return Err(CliError::Parse("grids and gamma_list must be non-empty".into()));
    }
    let scenarios = file
        .scenarios
        .iter()
        .map(|s| {
            Scenario::parse(s).ok_or_else(|| CliError::Parse(format!("unknown scenario {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if scenarios.is_empty() {
        return Err(CliError::Parse("scenarios must be non-empty".into()));
    }
    Ok(MonteCarloConfig {
        seed: seed_override.unwrap_or(file.seed),
        trials: file.trials,
        pmax1_grid: file.pmax1_grid,
        pmax2_grid: file.pmax2_grid,
        gamma_list: file.gamma_list,
        scenarios,
    })
}

fn run_campaign(
    cfg: &MonteCarloConfig,
    channel: Option<&ChannelInstance>,
    output: &Path,
) -> Result<(), CliError> {
    let t0 = Instant::now();
    let records = run_montecarlo_with(cfg, channel);
    write_records_to_path(&records, output).map_err(|e| CliError::Io(e.to_string()))?;
    println!(
        "{} cells x {} trials -> {} ({:.2?})",
        records.len(),
        cfg.trials,
        output.display(),
        t0.elapsed()
    );
    Ok(())
}

fn cmd_montecarlo(cli: &Cli, config: &Path, output: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::Parse(format!("{}: {e}", config.display())))?;
    let file: CampaignFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", config.display())))?;
    let cfg = campaign_config(file, cli.seed)?;
    run_campaign(&cfg, None, output)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    cli: &Cli,
    scenario_path: &Path,
    output: &Path,
    pmax1_grid: &Option<Vec<f64>>,
    pmax2_grid: &Option<Vec<f64>>,
    gamma_list: &Option<Vec<f64>>,
    scenarios: &Option<Vec<String>>,
) -> Result<(), CliError> {
    let loaded = scenario::load(scenario_path)?;
    let scenario_names = scenarios
        .clone()
        .unwrap_or_else(|| vec![loaded.scenario.name().to_string()]);
    let file = CampaignFile {
        seed: cli.seed.unwrap_or(0),
        trials: 1,
        pmax1_grid: pmax1_grid.clone().unwrap_or_else(|| vec![loaded.budget.pmax1]),
        pmax2_grid: pmax2_grid.clone().unwrap_or_else(|| vec![loaded.budget.pmax2]),
        gamma_list: gamma_list.clone().unwrap_or_else(|| vec![loaded.qos.gamma]),
        scenarios: scenario_names,
    };
    let cfg = campaign_config(file, None)?;
    run_campaign(&cfg, Some(&loaded.channel), output)
}
