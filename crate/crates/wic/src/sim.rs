//! Seeded Monte-Carlo harness: random channel generation, averaged metrics
//! over budget/QoS grids, and the CSV table format.
//!
//! Channels are drawn from per-trial substreams keyed by `(seed, trial)`, so
//! the same channel sequence underlies every `(scenario, gamma, budget)`
//! cell: comparisons between cells and scenarios are paired, which turns the
//! qualitative figure-level claims into deterministic per-draw assertions.
//! Trials within a cell may run concurrently; aggregation is a fixed-order
//! compensated sum over the trial index, so records are bit-identical
//! regardless of thread count.

use std::io::{self, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::allocation::Scenario;
use crate::altruistic::solve_altruistic;
use crate::benchmark::{secrecy_energy_efficiency, solve_single_user, SingleUserInstance};
use crate::egoistic::solve_egoistic;
use crate::model::{ChannelInstance, PowerBudget};

/// Monte-Carlo campaign description. Every `(scenario, gamma, pmax1, pmax2)`
/// combination becomes one record.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloConfig {
    pub seed: u64,
    pub trials: usize,
    pub pmax1_grid: Vec<f64>,
    pub pmax2_grid: Vec<f64>,
    pub gamma_list: Vec<f64>,
    pub scenarios: Vec<Scenario>,
}

/// Averaged metrics for one campaign cell. Averages cover feasible trials
/// only; the excluded fraction is reported separately. A cell with no
/// feasible trial reports zero averages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationRecord {
    pub scenario: Scenario,
    pub gamma: f64,
    pub pmax1: f64,
    pub pmax2: f64,
    pub avg_secrecy: f64,
    pub avg_p1: f64,
    pub avg_p2: f64,
    /// Achieved SINR minus `gamma` at user 2's destination, altruistic only.
    pub avg_excess_sinr: Option<f64>,
    pub avg_energy_efficiency: f64,
    pub qos_infeasible_fraction: f64,
    pub trials_used: u64,
}

/// Draw one channel: each power gain is the squared magnitude of a
/// unit-variance circularly-symmetric complex normal (an exponential with
/// mean 1); the noise power is fixed at 1.
pub fn sample_channel<R: Rng>(rng: &mut R) -> ChannelInstance {
    let exp1 = move |r: &mut R| -> f64 {
        let u: f64 = r.random();
        -(1.0 - u).ln()
    };
    ChannelInstance {
        g11: exp1(rng),
        g21: exp1(rng),
        g12: exp1(rng),
        g22: exp1(rng),
        g1e: exp1(rng),
        g2e: exp1(rng),
        noise: 1.0,
    }
}

/// Independent generator for one trial: stream `trial` of the ChaCha
/// substream family seeded by `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// The channel for trial `trial` of a campaign with this seed.
pub fn trial_channel(seed: u64, trial: u64) -> ChannelInstance {
    sample_channel(&mut trial_rng(seed, trial))
}

#[derive(Clone, Copy)]
enum TrialOutcome {
    Feasible { secrecy: f64, p1: f64, p2: f64, excess: f64, see: f64 },
    Infeasible,
}

fn solve_trial(ch: &ChannelInstance, scenario: Scenario, gamma: f64, budget: &PowerBudget) -> TrialOutcome {
    let alloc = match scenario {
        Scenario::Altruistic => solve_altruistic(ch, gamma, budget),
        Scenario::Egoistic => solve_egoistic(ch, gamma, budget),
        Scenario::SingleUser => {
            let su = SingleUserInstance {
                g_ud: ch.g11,
                g_ue: ch.g1e,
                noise: ch.noise,
                pmax: budget.pmax1,
            };
            Ok(solve_single_user(&su))
        }
    };
    match alloc {
        Ok(a) => TrialOutcome::Feasible {
            secrecy: a.secrecy,
            p1: a.p1,
            p2: a.p2,
            excess: a.qos_sinr - gamma,
            see: secrecy_energy_efficiency(a.secrecy, a.p1),
        },
        Err(_) => TrialOutcome::Infeasible,
    }
}

/// Neumaier-compensated accumulator; the final value is independent of how
/// the inputs were produced as long as they are added in a fixed order.
#[derive(Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Run the campaign: for each cell, solve every trial on the shared channel
/// sequence and average the feasible ones.
pub fn run_montecarlo(cfg: &MonteCarloConfig) -> Vec<SimulationRecord> {
    run_montecarlo_with(cfg, None)
}

/// [`run_montecarlo`] with an optional fixed channel injected in place of
/// the random sequence (used by the `sweep` command).
pub fn run_montecarlo_with(
    cfg: &MonteCarloConfig,
    channel_override: Option<&ChannelInstance>,
) -> Vec<SimulationRecord> {
    assert!(cfg.trials >= 1, "trials must be >= 1");
    assert!(
        !cfg.pmax1_grid.is_empty() && !cfg.pmax2_grid.is_empty() && !cfg.gamma_list.is_empty(),
        "grids must be non-empty"
    );
    let channels: Vec<ChannelInstance> = match channel_override {
        Some(ch) => vec![*ch; cfg.trials],
        None => (0..cfg.trials as u64).map(|t| trial_channel(cfg.seed, t)).collect(),
    };

    let mut scenarios = cfg.scenarios.clone();
    scenarios.sort();
    scenarios.dedup();

    let mut records = Vec::new();
    for &scenario in &scenarios {
        for &gamma in &cfg.gamma_list {
            for &pmax1 in &cfg.pmax1_grid {
                for &pmax2 in &cfg.pmax2_grid {
                    let budget = PowerBudget { pmax1, pmax2 };
                    let outcomes: Vec<TrialOutcome> = channels
                        .par_iter()
                        .map(|ch| solve_trial(ch, scenario, gamma, &budget))
                        .collect();

                    let mut used = 0u64;
                    let mut s = CompensatedSum::default();
                    let mut a1 = CompensatedSum::default();
                    let mut a2 = CompensatedSum::default();
                    let mut ex = CompensatedSum::default();
                    let mut ee = CompensatedSum::default();
                    for outcome in &outcomes {
                        if let TrialOutcome::Feasible { secrecy, p1, p2, excess, see } = *outcome {
                            used += 1;
                            s.add(secrecy);
                            a1.add(p1);
                            a2.add(p2);
                            ex.add(excess);
                            ee.add(see);
                        }
                    }
                    let denom = if used == 0 { 1.0 } else { used as f64 };
                    records.push(SimulationRecord {
                        scenario,
                        gamma,
                        pmax1,
                        pmax2,
                        avg_secrecy: s.value() / denom,
                        avg_p1: a1.value() / denom,
                        avg_p2: a2.value() / denom,
                        avg_excess_sinr: (scenario == Scenario::Altruistic)
                            .then(|| ex.value() / denom),
                        avg_energy_efficiency: ee.value() / denom,
                        qos_infeasible_fraction: (cfg.trials as u64 - used) as f64
                            / cfg.trials as f64,
                        trials_used: used,
                    });
                }
            }
        }
    }
    records
}

/// Exact CSV header, in column order.
pub const CSV_HEADER: &str = "scenario,gamma,pmax1,pmax2,avg_secrecy,avg_p1,avg_p2,avg_excess_sinr,avg_energy_efficiency,qos_infeasible_fraction,trials_used";

fn fmt_f64(x: f64) -> String {
    // 17 significant digits: enough to round-trip any f64.
    format!("{x:.16e}")
}

/// Write records as CSV in deterministic row order: lexicographic by
/// `(scenario, gamma, pmax1, pmax2)`. The excess-SINR column is empty for
/// non-altruistic rows.
pub fn write_records<W: Write>(records: &[SimulationRecord], mut w: W) -> io::Result<()> {
    let mut sorted: Vec<&SimulationRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (a.scenario, a.gamma, a.pmax1, a.pmax2)
            .partial_cmp(&(b.scenario, b.gamma, b.pmax1, b.pmax2))
            .expect("record keys are finite")
    });
    writeln!(w, "{CSV_HEADER}")?;
    for r in sorted {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.scenario,
            fmt_f64(r.gamma),
            fmt_f64(r.pmax1),
            fmt_f64(r.pmax2),
            fmt_f64(r.avg_secrecy),
            fmt_f64(r.avg_p1),
            fmt_f64(r.avg_p2),
            r.avg_excess_sinr.map(fmt_f64).unwrap_or_default(),
            fmt_f64(r.avg_energy_efficiency),
            fmt_f64(r.qos_infeasible_fraction),
            r.trials_used,
        )?;
    }
    Ok(())
}

/// [`write_records`] to a file, with the path in any error message.
pub fn write_records_to_path<P: AsRef<Path>>(records: &[SimulationRecord], path: P) -> io::Result<()> {
    let path = path.as_ref();
    let attach = |e: io::Error| io::Error::new(e.kind(), format!("{}: {e}", path.display()));
    let file = std::fs::File::create(path).map_err(attach)?;
    let mut buf = io::BufWriter::new(file);
    write_records(records, &mut buf).map_err(attach)?;
    buf.flush().map_err(attach)
}

/// A line of the CSV failed to parse.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for CsvParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CSV line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for CsvParseError {}

/// Parse records back from the CSV text produced by [`write_records`].
pub fn read_records(text: &str) -> Result<Vec<SimulationRecord>, CsvParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        other => {
            return Err(CsvParseError {
                line: 1,
                message: format!("bad header: {:?}", other.map(|(_, h)| h)),
            })
        }
    }
    let mut out = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CsvParseError { line: idx + 1, message };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(err(format!("expected 11 fields, got {}", fields.len())));
        }
        let scenario = Scenario::parse(fields[0])
            .ok_or_else(|| err(format!("unknown scenario {:?}", fields[0])))?;
        let f = |i: usize| -> Result<f64, CsvParseError> {
            fields[i].parse().map_err(|e| err(format!("field {i}: {e}")))
        };
        let excess = if fields[7].is_empty() {
            None
        } else {
            Some(f(7)?)
        };
        out.push(SimulationRecord {
            scenario,
            gamma: f(1)?,
            pmax1: f(2)?,
            pmax2: f(3)?,
            avg_secrecy: f(4)?,
            avg_p1: f(5)?,
            avg_p2: f(6)?,
            avg_excess_sinr: excess,
            avg_energy_efficiency: f(8)?,
            qos_infeasible_fraction: f(9)?,
            trials_used: fields[10].parse().map_err(|e| err(format!("field 10: {e}")))?,
        });
    }
    Ok(out)
}
