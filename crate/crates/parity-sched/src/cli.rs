//! Batch command line front end.
//!
//! Output is plain text (no color, stable line layout) or, with
//! `--format structured`, a JSON object whose field names mirror the
//! library types. Every number in structured output carries its exact
//! rational form next to a decimal rendering.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{dominant_indices, full_report, BoundReport, BoundsError};
use crate::exact::{optimal_dp, ExactError, OptimalResult};
use crate::jobs::{InstanceError, JobSet};
use crate::lpt::{lpt_schedule, schedule_to_partition, ScheduleError};
use crate::ratio::Ratio;
use crate::schedule::{Machine, Partition, TwoMachineSchedule};
use crate::sim::{self, ExperimentConfig, ExperimentSummary, SimError};

/// Inline values above this are rejected to keep cross-multiplied bound
/// checks far from 128-bit overflow.
pub const MAX_INPUT_TIME: u64 = 1 << 40;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read jobs input: {0}")]
    Io(#[from] io::Error),
    #[error("`{0}` is not a valid processing time")]
    InvalidToken(String),
    #[error("processing time `{0}` is out of range (expected 1..=2^40)")]
    ValueOutOfRange(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("exact oracle unavailable: {0}; use fewer or smaller processing times")]
    Oracle(#[from] ExactError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("cannot encode output: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "parity-sched",
    version,
    about = "Two-machine LPT scheduling, exact number partitioning, and ratio bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the longest-processing-time schedule for two machines
    Schedule {
        #[command(flatten)]
        input: JobsInput,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// Show the partition view; optionally solve the instance exactly
    Partition {
        #[command(flatten)]
        input: JobsInput,
        /// Also compute an optimal partition and the minimal difference
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// List dominant jobs and the possible last job index
    Plj {
        #[command(flatten)]
        input: JobsInput,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// Evaluate the worst-case ratio bounds for an instance
    Bounds {
        #[command(flatten)]
        input: JobsInput,
        /// Also run the exact oracle and report the actual ratio
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// Run seeded Monte Carlo experiments, one summary row per job count
    Simulate {
        /// Comma-separated job counts, e.g. 15,20,25
        #[arg(long, required = true, value_delimiter = ',')]
        jobs: Vec<usize>,
        #[arg(long, default_value_t = sim::DEFAULT_TRIALS)]
        trials: u32,
        /// Smallest processing time drawn
        #[arg(long, default_value_t = sim::DEFAULT_TIME_MIN)]
        min: u64,
        /// Largest processing time drawn
        #[arg(long, default_value_t = sim::DEFAULT_TIME_MAX)]
        max: u64,
        #[arg(long, default_value_t = sim::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: SimFormat,
        /// Run trials on the current thread instead of a thread pool
        #[arg(long)]
        serial: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum TextFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SimFormat {
    #[default]
    Table,
    Csv,
    Structured,
}

/// Processing times given inline, from a file, or on standard input.
#[derive(Debug, Args)]
pub struct JobsInput {
    /// Processing times (whitespace or commas between values)
    #[arg(value_name = "TIME", conflicts_with = "file")]
    pub values: Vec<String>,
    /// Read processing times from this file; `#` starts a comment
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl JobsInput {
    pub fn load(&self) -> Result<JobSet, CliError> {
        let text = if let Some(path) = &self.file {
            fs::read_to_string(path)?
        } else if !self.values.is_empty() {
            self.values.join(" ")
        } else {
            io::read_to_string(io::stdin())?
        };
        Ok(JobSet::from_values(parse_jobs_text(&text)?)?)
    }
}

/// Parses whitespace/comma separated integers; `#` comments out the rest
/// of a line. Errors name the offending token.
pub fn parse_jobs_text(text: &str) -> Result<Vec<u64>, CliError> {
    let mut values = Vec::new();
    for raw_line in text.lines() {
        let line = raw_line.split('#').next().unwrap_or("");
        for token in line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let value: u64 = token
                .parse()
                .map_err(|_| CliError::InvalidToken(token.to_string()))?;
            if value == 0 || value > MAX_INPUT_TIME {
                return Err(CliError::ValueOutOfRange(token.to_string()));
            }
            values.push(value);
        }
    }
    Ok(values)
}

/// Entry point for the binary: parse, dispatch, print, map errors to a
/// nonzero exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Schedule { input, format } => cmd_schedule(&input.load()?, *format),
        Command::Partition {
            input,
            exact,
            format,
        } => cmd_partition(&input.load()?, *exact, *format),
        Command::Plj { input, format } => cmd_plj(&input.load()?, *format),
        Command::Bounds {
            input,
            oracle,
            format,
        } => cmd_bounds(&input.load()?, *oracle, *format),
        Command::Simulate {
            jobs,
            trials,
            min,
            max,
            seed,
            format,
            serial,
        } => cmd_simulate(jobs, *trials, *min, *max, *seed, *format, *serial),
    }
}

// ---------------------------------------------------------------------
// structured views

#[derive(Debug, Serialize, Deserialize)]
pub struct RatioView {
    pub exact: String,
    pub decimal: f64,
}

impl From<Ratio> for RatioView {
    fn from(r: Ratio) -> Self {
        RatioView {
            exact: r.to_string(),
            decimal: r.to_f64(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScheduleView {
    pub n: usize,
    pub times: Vec<u64>,
    /// Machine id (1 or 2) per job index.
    pub assignment: Vec<u8>,
    pub load1: u64,
    pub load2: u64,
    pub makespan: u64,
    pub last_job_index: usize,
    pub critical_job_count: usize,
    pub m_value: usize,
}

impl ScheduleView {
    fn new(jobs: &JobSet, schedule: &TwoMachineSchedule) -> Self {
        ScheduleView {
            n: jobs.len(),
            times: jobs.times_u64(),
            assignment: schedule.assignment().iter().map(|m| m.id()).collect(),
            load1: schedule.load1(),
            load2: schedule.load2(),
            makespan: schedule.makespan(),
            last_job_index: schedule.last_job_index(),
            critical_job_count: schedule.critical_job_count(),
            m_value: schedule.m_value(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PartitionView {
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
    pub sum1: u64,
    pub sum2: u64,
    pub difference: u64,
}

impl From<&Partition> for PartitionView {
    fn from(p: &Partition) -> Self {
        PartitionView {
            side1: p.side1().to_vec(),
            side2: p.side2().to_vec(),
            sum1: p.sum1(),
            sum2: p.sum2(),
            difference: p.difference(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScheduleOutput {
    pub schedule: ScheduleView,
    pub partition: PartitionView,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OptimalView {
    pub optimal_makespan: u64,
    pub min_difference: u64,
    pub witness: PartitionView,
}

impl From<&OptimalResult> for OptimalView {
    fn from(r: &OptimalResult) -> Self {
        OptimalView {
            optimal_makespan: r.optimal_makespan(),
            min_difference: r.min_difference(),
            witness: r.witness().into(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PartitionOutput {
    pub total_sum: u64,
    pub lpt: PartitionView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal: Option<OptimalView>,
    /// Whether 2 * optimal makespan = total + minimal difference.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_holds: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PljOutput {
    pub dominant_indices: Vec<usize>,
    pub plj: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundInputsView {
    pub last_job_index: usize,
    pub m_value: usize,
    pub critical_job_count: usize,
    pub plj: usize,
    pub p_value: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundsOutput {
    pub inputs: BoundInputsView,
    pub graham: RatioView,
    pub coffman_sethi: RatioView,
    pub last_job_raw: RatioView,
    pub last_job_capped: RatioView,
    pub possible_last_job_raw: RatioView,
    pub possible_last_job_capped: RatioView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_actual: Option<RatioView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_last_job_exceeded: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_possible_last_job_exceeded: Option<bool>,
}

impl From<&BoundReport> for BoundsOutput {
    fn from(r: &BoundReport) -> Self {
        BoundsOutput {
            inputs: BoundInputsView {
                last_job_index: r.inputs.last_job_index,
                m_value: r.inputs.m_value,
                critical_job_count: r.inputs.critical_job_count,
                plj: r.inputs.plj,
                p_value: r.inputs.p_value,
            },
            graham: r.graham.into(),
            coffman_sethi: r.coffman_sethi.into(),
            last_job_raw: r.last_job.raw.into(),
            last_job_capped: r.last_job.capped.into(),
            possible_last_job_raw: r.possible_last_job.raw.into(),
            possible_last_job_capped: r.possible_last_job.capped.into(),
            ratio_actual: r.ratio_actual.map(RatioView::from),
            raw_last_job_exceeded: r.raw_last_job_exceeded,
            raw_possible_last_job_exceeded: r.raw_possible_last_job_exceeded,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SummaryView {
    pub jobs: usize,
    pub trials: u32,
    pub seed: u64,
    pub ac: f64,
    pub mc: f64,
    pub bm: f64,
    pub bp: f64,
    pub bl: f64,
    pub raw_violations: u32,
}

impl From<&ExperimentSummary> for SummaryView {
    fn from(s: &ExperimentSummary) -> Self {
        SummaryView {
            jobs: s.job_count,
            trials: s.trials,
            seed: s.seed,
            ac: s.ac,
            mc: s.mc,
            bm: s.bm,
            bp: s.bp,
            bl: s.bl,
            raw_violations: s.raw_violation_count,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SimulateOutput {
    pub rng: String,
    pub rows: Vec<SummaryView>,
}

// ---------------------------------------------------------------------
// commands

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn job_labels(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| format!("J{}", i + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn times_of(jobs: &JobSet, indices: &[usize]) -> String {
    indices
        .iter()
        .map(|&i| jobs.time_u64(i).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_schedule(jobs: &JobSet, format: TextFormat) -> Result<String, CliError> {
    let schedule = lpt_schedule(jobs);
    let partition = schedule_to_partition(&schedule, jobs)?;
    match format {
        TextFormat::Structured => to_json(&ScheduleOutput {
            schedule: ScheduleView::new(jobs, &schedule),
            partition: PartitionView::from(&partition),
        }),
        TextFormat::Text => {
            let mut out = String::new();
            let last = schedule.last_job_index();
            writeln!(
                out,
                "jobs ({}): {}",
                jobs.len(),
                times_of(jobs, &(0..jobs.len()).collect::<Vec<_>>())
            )
            .unwrap();
            writeln!(out, "total time: {}", jobs.total_sum()).unwrap();
            for machine in [Machine::M1, Machine::M2] {
                let on: Vec<usize> = schedule.jobs_on(machine).collect();
                writeln!(
                    out,
                    "machine {}: {} | times {} | load {}",
                    machine,
                    job_labels(&on),
                    times_of(jobs, &on),
                    schedule.load(machine)
                )
                .unwrap();
            }
            writeln!(out, "makespan: {}", schedule.makespan()).unwrap();
            writeln!(
                out,
                "last finishing job: J{} (time {}) on machine {}",
                last,
                jobs.time_u64(last - 1),
                schedule.critical_machine()
            )
            .unwrap();
            writeln!(out, "last job index L: {}", last).unwrap();
            writeln!(out, "M = ceil(L/2): {}", schedule.m_value()).unwrap();
            writeln!(
                out,
                "critical job count k: {}",
                schedule.critical_job_count()
            )
            .unwrap();
            writeln!(out, "load difference: {}", schedule.difference()).unwrap();
            Ok(out)
        }
    }
}

fn cmd_partition(jobs: &JobSet, exact: bool, format: TextFormat) -> Result<String, CliError> {
    let schedule = lpt_schedule(jobs);
    let lpt_partition = schedule_to_partition(&schedule, jobs)?;
    let optimal = if exact { Some(optimal_dp(jobs)?) } else { None };
    match format {
        TextFormat::Structured => {
            let identity_holds = optimal.as_ref().map(|o| {
                2 * o.optimal_makespan() as u128
                    == jobs.total_sum() as u128 + o.min_difference() as u128
            });
            to_json(&PartitionOutput {
                total_sum: jobs.total_sum(),
                lpt: PartitionView::from(&lpt_partition),
                optimal: optimal.as_ref().map(OptimalView::from),
                identity_holds,
            })
        }
        TextFormat::Text => {
            let mut out = String::new();
            let describe = |out: &mut String, label: &str, p: &Partition| {
                writeln!(
                    out,
                    "{label} side 1: {} | sum {}",
                    job_labels(p.side1()),
                    p.sum1()
                )
                .unwrap();
                writeln!(
                    out,
                    "{label} side 2: {} | sum {}",
                    job_labels(p.side2()),
                    p.sum2()
                )
                .unwrap();
                writeln!(out, "{label} difference: {}", p.difference()).unwrap();
            };
            writeln!(out, "total time: {}", jobs.total_sum()).unwrap();
            describe(&mut out, "lpt", &lpt_partition);
            if let Some(o) = &optimal {
                describe(&mut out, "optimal", o.witness());
                writeln!(out, "optimal makespan: {}", o.optimal_makespan()).unwrap();
                writeln!(
                    out,
                    "identity 2*optimal = total + difference: {} = {} + {}",
                    2 * o.optimal_makespan(),
                    jobs.total_sum(),
                    o.min_difference()
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

fn cmd_plj(jobs: &JobSet, format: TextFormat) -> Result<String, CliError> {
    let info = dominant_indices(jobs);
    match format {
        TextFormat::Structured => to_json(&PljOutput {
            dominant_indices: info.dominant_indices().to_vec(),
            plj: info.plj(),
        }),
        TextFormat::Text => {
            let labels: Vec<String> = info
                .dominant_indices()
                .iter()
                .map(|i| format!("J{i}"))
                .collect();
            Ok(format!(
                "dominant jobs: {}\npossible last job index: {}\n",
                labels.join(" "),
                info.plj()
            ))
        }
    }
}

fn ratio_line(r: Ratio) -> String {
    format!("{} ({:.6})", r, r.to_f64())
}

fn cmd_bounds(jobs: &JobSet, oracle: bool, format: TextFormat) -> Result<String, CliError> {
    let report = full_report(jobs, oracle)?;
    match format {
        TextFormat::Structured => to_json(&BoundsOutput::from(&report)),
        TextFormat::Text => {
            let mut out = String::new();
            let i = &report.inputs;
            writeln!(out, "n: {}  total: {}", jobs.len(), jobs.total_sum()).unwrap();
            writeln!(
                out,
                "L: {}  M: {}  k: {}  PLJ: {}  P: {}",
                i.last_job_index, i.m_value, i.critical_job_count, i.plj, i.p_value
            )
            .unwrap();
            writeln!(out, "two-machine bound: {}", ratio_line(report.graham)).unwrap();
            writeln!(
                out,
                "critical-count bound: {}",
                ratio_line(report.coffman_sethi)
            )
            .unwrap();
            writeln!(
                out,
                "last-job bound: raw {}, capped {}",
                ratio_line(report.last_job.raw),
                ratio_line(report.last_job.capped)
            )
            .unwrap();
            writeln!(
                out,
                "possible-last-job bound: raw {}, capped {}",
                ratio_line(report.possible_last_job.raw),
                ratio_line(report.possible_last_job.capped)
            )
            .unwrap();
            if let Some(ratio) = report.ratio_actual {
                writeln!(out, "actual ratio: {}", ratio_line(ratio)).unwrap();
                let yes_no = |b: Option<bool>| if b == Some(true) { "yes" } else { "no" };
                writeln!(
                    out,
                    "raw last-job bound exceeded: {}",
                    yes_no(report.raw_last_job_exceeded)
                )
                .unwrap();
                writeln!(
                    out,
                    "raw possible-last-job bound exceeded: {}",
                    yes_no(report.raw_possible_last_job_exceeded)
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

fn cmd_simulate(
    jobs: &[usize],
    trials: u32,
    min: u64,
    max: u64,
    seed: u64,
    format: SimFormat,
    serial: bool,
) -> Result<String, CliError> {
    let mut summaries = Vec::with_capacity(jobs.len());
    for &job_count in jobs {
        let config = ExperimentConfig {
            job_count,
            trials,
            time_min: min,
            time_max: max,
            seed,
        };
        let summary = if serial {
            sim::run_experiment_serial(&config)?
        } else {
            sim::run_experiment(&config)?
        };
        summaries.push(summary);
    }
    match format {
        SimFormat::Csv => {
            let mut out = String::from(ExperimentSummary::csv_header());
            out.push('\n');
            for s in &summaries {
                out.push_str(&s.to_csv_row());
                out.push('\n');
            }
            Ok(out)
        }
        SimFormat::Structured => to_json(&SimulateOutput {
            rng: sim::RNG_DESCRIPTION.to_string(),
            rows: summaries.iter().map(SummaryView::from).collect(),
        }),
        SimFormat::Table => {
            let mut out = String::new();
            writeln!(out, "# rng: {}", sim::RNG_DESCRIPTION).unwrap();
            writeln!(
                out,
                "# trials={} min={} max={} seed={}",
                trials, min, max, seed
            )
            .unwrap();
            writeln!(
                out,
                "{:>5} {:>9} {:>9} {:>9} {:>9} {:>9} {:>15}",
                "jobs", "ac", "mc", "bm", "bp", "bl", "raw_violations"
            )
            .unwrap();
            for s in &summaries {
                writeln!(
                    out,
                    "{:>5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>15}",
                    s.job_count, s.ac, s.mc, s.bm, s.bp, s.bl, s.raw_violation_count
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}
