//! Command-line front end. [`run`] does all the work and returns the exit
//! code plus captured output so it can be driven from tests.

mod input;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use input::{Complex, Fixture, InputSpec, Subject};
pub use report::*;

use crate::correlations::{
    discord, left_zero_condition_closed_form_tol, zero_discord_certify_tol, DiscordConfig, Side, MAX_OPTIMIZED_DIM,
};
use crate::discrimination::{
    linspace, optimal_probability, run_monte_carlo, success_probability_d, sweep_alpha1, sweep_gamma,
    OptimizationInput,
};
use crate::ensembles::Construction;
use crate::error::Error;
use crate::separability::{d_state_condition_tol, ppt_test_tol, two_state_condition_tol, verdict_tol};
use crate::{DensityMatrix, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "assisted-usd", version, about = "Ancilla-assisted unambiguous discrimination: correlations, separability, optima")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (default: csv for sweep, json otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Override the PSD/PPT and closed-form condition tolerances.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct Source {
    /// Path to a JSON input spec.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline JSON input spec.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: checksum, success probability, PPT, conditions, discord.
    Analyze {
        #[command(flatten)]
        source: Source,
    },
    /// P_opt over a |γ| grid, or P over an |α₁| grid for fixed overlaps.
    Sweep {
        #[arg(long, value_enum, default_value = "gamma")]
        mode: SweepMode,
        /// Number of states (gamma mode).
        #[arg(long)]
        d: Option<usize>,
        /// start:stop:count, inclusive, within [0, 1].
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        source: Source,
    },
    /// Seeded simulation of the protocol.
    Montecarlo {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Optimized left and/or right discord.
    Discord {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "both")]
        side: SideSelection,
    },
    /// PPT test against the closed-form separability condition.
    Ppt {
        #[command(flatten)]
        source: Source,
    },
    /// Optimum over |α₁| for given overlaps, or the equal-overlap case via --d and --gamma.
    Optimal {
        #[command(flatten)]
        source: Source,
        #[arg(long, requires = "gamma")]
        d: Option<usize>,
        #[arg(long, requires = "d")]
        gamma: Option<f64>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn object(&self) -> ErrorObject {
        let (kind, message) = match self {
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::Lib(e) => (e.kind(), e.to_string()),
            Failure::Io(m) => ("io", m.clone()),
        };
        ErrorObject { kind: kind.to_string(), message, exit_code: EXIT_VALIDATION }
    }
}

fn error_outcome(f: Failure) -> Outcome {
    let doc = ErrorDocument { schema_version: SCHEMA_VERSION.to_string(), error: f.object() };
    Outcome { code: EXIT_VALIDATION, stdout: String::new(), stderr: to_json(&doc) }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => error_outcome(Failure::Usage(e.to_string())),
            };
        }
    };
    let out = cli.out.clone();
    match execute(cli) {
        Ok((code, text)) => match out {
            Some(path) => match std::fs::write(&path, &text) {
                Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                Err(e) => error_outcome(Failure::Io(format!("{}: {e}", path.display()))),
            },
            None => Outcome { code, stdout: text, stderr: String::new() },
        },
        Err(f) => error_outcome(f),
    }
}

fn document<T: Serialize>(config: &ResolvedConfig, result: &T) -> String {
    to_json(&Document { schema_version: SCHEMA_VERSION.to_string(), config: config.clone(), result })
}

fn read_source(source: &Source) -> Result<Option<(String, InputSpec)>, Failure> {
    let (label, text) = match (&source.input, &source.inline) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        (None, Some(text)) => ("inline".to_string(), text.clone()),
        (None, None) => return Ok(None),
    };
    Ok(Some((label, InputSpec::parse(&text)?)))
}

fn require_source(source: &Source) -> Result<(String, InputSpec), Failure> {
    read_source(source)?.ok_or_else(|| Failure::Usage("one of --input or --inline is required".into()))
}

fn parse_grid(spec: &str) -> Result<GridSpec, Failure> {
    let bad = || Failure::Usage(format!("grid must be start:stop:count, got '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    let in_unit = |x: f64| (0.0..=1.0).contains(&x);
    if !in_unit(start) || !in_unit(stop) || start > stop || count == 0 || (count == 1 && start != stop) {
        return Err(Failure::Usage(format!(
            "grid needs 0 <= start <= stop <= 1 and count >= 1 (count 1 only when start = stop), got '{spec}'"
        )));
    }
    Ok(GridSpec { start, stop, count })
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn discord_entry(rho: &DensityMatrix, side: Side, cfg: &DiscordConfig) -> Result<DiscordEntry, Failure> {
    let measured = rho.dim_of(side.measured());
    if measured > MAX_OPTIMIZED_DIM {
        return Ok(DiscordEntry {
            report: None,
            omitted_reason: Some(format!(
                "measured subsystem has dimension {measured}; optimization supports at most {MAX_OPTIMIZED_DIM}"
            )),
        });
    }
    Ok(DiscordEntry { report: Some(discord(rho, side, cfg)?), omitted_reason: None })
}

fn discord_pair(rho: &DensityMatrix, sel: SideSelection, cfg: &DiscordConfig) -> Result<DiscordPair, Failure> {
    let want = |s: Side| {
        matches!(
            (sel, s),
            (SideSelection::Both, _) | (SideSelection::Left, Side::Left) | (SideSelection::Right, Side::Right)
        )
    };
    Ok(DiscordPair {
        left: if want(Side::Left) { Some(discord_entry(rho, Side::Left, cfg)?) } else { None },
        right: if want(Side::Right) { Some(discord_entry(rho, Side::Right, cfg)?) } else { None },
    })
}

fn state_summary(subject: &Subject) -> Option<StateSummary> {
    match subject {
        Subject::Protocol(p) => Some(StateSummary::new(&p.rho, Some(p.construction), Some(p.gram_residual()))),
        Subject::State(s) => Some(StateSummary::new(s, None, None)),
        Subject::Overlaps(_) => None,
    }
}

fn need_state<'a>(subject: &'a Subject, command: &str) -> Result<&'a DensityMatrix, Failure> {
    subject
        .state()
        .ok_or_else(|| Failure::Lib(Error::InvalidInput(format!("{command} needs a state input, not overlaps"))))
}

fn execute(cli: Cli) -> Result<(i32, String), Failure> {
    let mut tolerances = Tolerances::default();
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::Usage(format!("--tol must be positive and finite, got {t}")));
        }
        tolerances.psd = t;
        tolerances.condition = t;
    }
    let mut config = ResolvedConfig {
        command: CommandName::Analyze,
        format: Format::Json,
        input_source: None,
        input: None,
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        tolerances,
        seed: None,
        trials: None,
        d: None,
        gamma: None,
        grid: None,
        mode: None,
        side: None,
        discord: None,
    };
    let json_only = |format: Option<Format>, name: &str| match format {
        Some(Format::Csv) => Err(Failure::Usage(format!("{name} output is JSON only"))),
        _ => Ok(Format::Json),
    };

    match cli.command {
        Command::Analyze { source } => {
            config.command = CommandName::Analyze;
            config.format = json_only(cli.format, "analyze")?;
            let (label, spec) = require_source(&source)?;
            let subject = spec.resolve()?;
            config.input_source = Some(label);
            config.input = Some(spec);
            let cfg = DiscordConfig { tolerances, ..DiscordConfig::default() };
            config.discord = Some(cfg);
            let rho = need_state(&subject, "analyze")?;
            let ppt = ppt_test_tol(rho, &tolerances);
            let (conditions, decomposition, consistent) = match &subject {
                Subject::Protocol(p) => {
                    let v = verdict_tol(p, &tolerances);
                    let two_state = match p.construction {
                        Construction::TwoState => Some(two_state_condition_tol(&p.ensemble, &tolerances)?),
                        Construction::DState => None,
                    };
                    let conditions = ConditionSummary {
                        separability: d_state_condition_tol(&p.ensemble, &tolerances),
                        two_state,
                        zero_left_discord: left_zero_condition_closed_form_tol(&p.ensemble, &tolerances),
                    };
                    (Some(conditions), v.decomposition.as_ref().map(DecompositionSummary::from), v.consistent)
                }
                _ => (None, None, true),
            };
            let report = AnalyzeReport {
                state: state_summary(&subject).expect("state input"),
                success_probability: subject.ensemble().map(success_probability_d),
                ppt,
                conditions,
                decomposition,
                consistent,
                discord: discord_pair(rho, SideSelection::Both, &cfg)?,
                certificates: Certificates {
                    left: zero_discord_certify_tol(rho, Side::Left, &tolerances),
                    right: zero_discord_certify_tol(rho, Side::Right, &tolerances),
                },
            };
            let code = if consistent { EXIT_OK } else { EXIT_INCONSISTENT };
            Ok((code, document(&config, &report)))
        }
        Command::Ppt { source } => {
            config.command = CommandName::Ppt;
            config.format = cli.format.unwrap_or(Format::Json);
            let (label, spec) = require_source(&source)?;
            let subject = spec.resolve()?;
            config.input_source = Some(label);
            config.input = Some(spec);
            let rho = need_state(&subject, "ppt")?;
            let ppt = ppt_test_tol(rho, &tolerances);
            let (condition, decomposition, consistent) = match &subject {
                Subject::Protocol(p) => {
                    let v = verdict_tol(p, &tolerances);
                    let cond = d_state_condition_tol(&p.ensemble, &tolerances);
                    (Some(cond), v.decomposition.as_ref().map(DecompositionSummary::from), v.consistent)
                }
                _ => (None, None, true),
            };
            let report = PptReport { state: state_summary(&subject).expect("state input"), ppt, condition, decomposition, consistent };
            let code = if consistent { EXIT_OK } else { EXIT_INCONSISTENT };
            let text = match config.format {
                Format::Json => document(&config, &report),
                Format::Csv => csv(
                    &config,
                    &["ppt", "min_pt_eigenvalue", "condition_holds", "condition_residual", "consistent"],
                    &[vec![
                        report.ppt.ppt.to_string(),
                        num(report.ppt.min_eigenvalue),
                        report.condition.map(|c| c.holds.to_string()).unwrap_or_default(),
                        opt_num(report.condition.map(|c| c.residual)),
                        report.consistent.to_string(),
                    ]],
                ),
            };
            Ok((code, text))
        }
        Command::Discord { source, side } => {
            config.command = CommandName::Discord;
            config.format = cli.format.unwrap_or(Format::Json);
            config.side = Some(side);
            let (label, spec) = require_source(&source)?;
            let subject = spec.resolve()?;
            config.input_source = Some(label);
            config.input = Some(spec);
            let cfg = DiscordConfig { tolerances, ..DiscordConfig::default() };
            config.discord = Some(cfg);
            let rho = need_state(&subject, "discord")?;
            let report = DiscordCommandReport {
                state: state_summary(&subject).expect("state input"),
                discord: discord_pair(rho, side, &cfg)?,
            };
            let text = match config.format {
                Format::Json => document(&config, &report),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = [("left", &report.discord.left), ("right", &report.discord.right)]
                        .into_iter()
                        .filter_map(|(name, e)| e.as_ref().map(|e| (name, e)))
                        .map(|(name, e)| {
                            let r = e.report.as_ref();
                            vec![
                                name.to_string(),
                                opt_num(r.map(|r| r.discord)),
                                opt_num(r.map(|r| r.mutual_info)),
                                opt_num(r.map(|r| r.classical_correlation)),
                                r.map(|r| r.zero_certified.to_string()).unwrap_or_default(),
                                opt_num(r.map(|r| r.commutator_residual)),
                            ]
                        })
                        .collect();
                    csv(
                        &config,
                        &["side", "discord", "mutual_info", "classical_correlation", "zero_certified", "commutator_residual"],
                        &rows,
                    )
                }
            };
            Ok((EXIT_OK, text))
        }
        Command::Optimal { source, d, gamma } => {
            config.command = CommandName::Optimal;
            config.format = cli.format.unwrap_or(Format::Json);
            let input = match (read_source(&source)?, d, gamma) {
                (Some(_), Some(_), _) => {
                    return Err(Failure::Usage("give either an input spec or --d/--gamma, not both".into()))
                }
                (Some((label, spec)), None, None) => {
                    let subject = spec.resolve()?;
                    config.input_source = Some(label);
                    config.input = Some(spec);
                    subject
                        .optimization_input()
                        .ok_or_else(|| Failure::Lib(Error::InvalidInput("optimal needs an ensemble or overlaps input".into())))?
                }
                (None, Some(d), Some(g)) => {
                    config.d = Some(d);
                    config.gamma = Some(g);
                    OptimizationInput::equal(d, g)?
                }
                _ => return Err(Failure::Usage("optimal needs --input/--inline or both --d and --gamma".into())),
            };
            let report = optimal_probability(&input);
            let text = match config.format {
                Format::Json => document(&config, &report),
                Format::Csv => csv(
                    &config,
                    &["region", "alpha1_opt", "P_opt", "alpha_bar"],
                    &[vec![report.region.as_str().into(), num(report.argmax), num(report.p_opt), num(report.alpha_bar)]],
                ),
            };
            Ok((EXIT_OK, text))
        }
        Command::Sweep { mode, d, grid, source } => {
            config.command = CommandName::Sweep;
            config.format = cli.format.unwrap_or(Format::Csv);
            config.mode = Some(mode);
            let g = parse_grid(&grid)?;
            config.grid = Some(g);
            let points = linspace(g.start, g.stop, g.count);
            let rows = match mode {
                SweepMode::Gamma => {
                    if read_source(&source)?.is_some() {
                        return Err(Failure::Usage("gamma sweep takes --d, not an input spec".into()));
                    }
                    let d = d.ok_or_else(|| Failure::Usage("gamma sweep needs --d".into()))?;
                    config.d = Some(d);
                    SweepRows::Gamma(sweep_gamma(d, &points)?)
                }
                SweepMode::Alpha1 => {
                    if d.is_some() {
                        return Err(Failure::Usage("alpha1 sweep takes an input spec, not --d".into()));
                    }
                    let (label, spec) = require_source(&source)?;
                    let subject = spec.resolve()?;
                    config.input_source = Some(label);
                    config.input = Some(spec);
                    let input = subject
                        .optimization_input()
                        .ok_or_else(|| Failure::Lib(Error::InvalidInput("alpha1 sweep needs an ensemble or overlaps input".into())))?;
                    SweepRows::Alpha1(sweep_alpha1(&input, &points))
                }
            };
            let text = match (config.format, &rows) {
                (Format::Json, _) => document(&config, &rows),
                (Format::Csv, SweepRows::Gamma(r)) => csv(
                    &config,
                    &["d", "gamma", "region", "alpha1_opt", "P_opt"],
                    &r.iter()
                        .map(|r| vec![r.d.to_string(), num(r.gamma), r.region.as_str().into(), num(r.alpha1_opt), num(r.p_opt)])
                        .collect::<Vec<_>>(),
                ),
                (Format::Csv, SweepRows::Alpha1(r)) => csv(
                    &config,
                    &["alpha1", "P"],
                    &r.iter().map(|r| vec![num(r.alpha1), opt_num(r.probability)]).collect::<Vec<_>>(),
                ),
            };
            Ok((EXIT_OK, text))
        }
        Command::Montecarlo { source, trials, seed } => {
            config.command = CommandName::Montecarlo;
            config.format = cli.format.unwrap_or(Format::Json);
            config.trials = Some(trials);
            config.seed = Some(seed);
            let (label, spec) = require_source(&source)?;
            let subject = spec.resolve()?;
            config.input_source = Some(label);
            config.input = Some(spec);
            let state = subject.protocol("montecarlo")?;
            let stats = run_monte_carlo(&state, trials, seed)?;
            let text = match config.format {
                Format::Json => document(&config, &stats),
                Format::Csv => csv(
                    &config,
                    &["trials", "successes", "misidentifications_given_success", "frequency", "stderr", "seed", "rng_algorithm"],
                    &[vec![
                        stats.trials.to_string(),
                        stats.successes.to_string(),
                        stats.misidentifications_given_success.to_string(),
                        num(stats.frequency),
                        num(stats.stderr),
                        stats.seed.to_string(),
                        stats.rng_algorithm.clone(),
                    ]],
                ),
            };
            Ok((EXIT_OK, text))
        }
    }
}
