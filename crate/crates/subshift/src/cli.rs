//! `subshift` command line.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use subshift_core::enumeration::{bicolored_bound, brute, entropy_bound, CountTable};
use subshift_core::language::is_admissible;
use subshift_core::measures::{empirical_block_entropy, sample_path, BernoulliMeasure};
use subshift_core::mixing::{minimal_mixing_gap, mixing_bound, BoundKind};
use subshift_core::pressure::{
    base_pressure, entropy_threshold, entropy_threshold_tau, equilibrium_states_report, infinite_family_report,
    partition_series, required_tau, GibbsState, STATEMENT_CONSTANT,
};
use subshift_core::{decompose, Segment, ShiftParams, Tau};

use crate::formats::{check_word_alphabet, parse_word, read_params, read_potential, real, word_text, ParamsFile};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "subshift", version, about = "Gap-constrained multi-colour subshifts")]
pub struct Cli {
    /// Worker threads for parallel checks (defaults to all cores).
    #[arg(long, global = true, env = "SUBSHIFT_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Symbols per colour.
    #[arg(long, default_value_t = 2)]
    pub nu: u32,
    /// Gap factor as p/q, an integer or a decimal.
    #[arg(long, default_value = "1")]
    pub tau: Tau,
    /// Number of colours.
    #[arg(long, default_value_t = 2)]
    pub colors: u32,
    /// JSON file {"nu", "tau", "colors"}; overrides the flags above.
    #[arg(long)]
    pub params: Option<PathBuf>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<ShiftParams> {
        match &self.params {
            Some(path) => read_params(path),
            None => Ok(ShiftParams::new(self.nu, self.tau, self.colors)?),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership for words read from stdin, one per line.
    Check {
        #[command(flatten)]
        params: ParamArgs,
        /// Emit one JSON object per word with its block decomposition.
        #[arg(long)]
        decompose: bool,
    },
    /// Exact word counts |W_n|.
    Count {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_n: usize,
        /// Counts by number of blocks k and coloured symbols ℓ.
        #[arg(long)]
        stratify: bool,
        /// Also count, by brute force, words whose first coloured symbol has
        /// colour at most this value (colours unbounded otherwise).
        #[arg(long)]
        first_coordinate: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Growth-rate series log|W_n|/n.
    Entropy {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Minimal gap connecting two cylinders, with certificates.
    MixingGap {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Largest gap searched (defaults to the bound plus 30).
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Sample from the maximal-entropy measure of one colour.
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        color: u32,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add empirical k-block entropy as JSON.
        #[arg(long)]
        stats: Option<usize>,
    },
    /// Partition-function pressure of a potential.
    Pressure {
        #[command(flatten)]
        params: ParamArgs,
        /// JSON file {"range": r, "values": {"<word>": value}}.
        #[arg(long)]
        potential: PathBuf,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Print the per-colour Gibbs states as JSON instead.
        #[arg(long)]
        equilibria: bool,
        /// Print the countable family with this many members as JSON instead.
        #[arg(long)]
        family: Option<u32>,
    },
    /// Entropy and pressure thresholds for τ.
    Thresholds {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        potential: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the full property and acceptance suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = execute(cli.command, &mut stdin.lock(), &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Outcome::Passed), Ok(())) => ExitCode::SUCCESS,
        (Ok(Outcome::Failed), Ok(())) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    execute(cli.command, input, out)
}

pub fn execute(command: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Check { params, decompose } => check(&params.resolve()?, decompose, input, out),
        Command::Count { params, max_n, stratify, first_coordinate, format } => {
            count(&params.resolve()?, max_n, stratify, first_coordinate, format, out)
        }
        Command::Entropy { params, max_n, step, format } => entropy(&params.resolve()?, max_n, step, format, out),
        Command::MixingGap { params, eta, omega, horizon } => mixing(&params.resolve()?, &eta, &omega, horizon, out),
        Command::Sample { params, color, length, seed, stats } => {
            sample(&params.resolve()?, color, length, seed, stats, out)
        }
        Command::Pressure { params, potential, max_n, step, format, equilibria, family } => {
            let p = params.resolve()?;
            let f = read_potential(&potential, p.nu())?;
            if let Some(shown) = family {
                family_report(&f, &p, shown, out)
            } else if equilibria {
                equilibria_report(&f, &p, out)
            } else {
                pressure(&f, &p, max_n, step, format, out)
            }
        }
        Command::Thresholds { nu, potential, format } => thresholds(nu, potential, format, out),
        Command::Verify { seed, format } => verify_suite(seed, format, out),
    }
}

#[derive(Serialize)]
struct SegmentJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    color: Option<u32>,
    len: usize,
}

fn check(params: &ShiftParams, with_decomposition: bool, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<Outcome> {
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let word = parse_word(&line).with_context(|| format!("line {}", lineno + 1))?;
        check_word_alphabet(&word, params).with_context(|| format!("line {}", lineno + 1))?;
        let ok = is_admissible(&word, params)?;
        if with_decomposition {
            let segments: Vec<SegmentJson> = decompose(&word, params)?
                .segments
                .iter()
                .map(|s| match *s {
                    Segment::ZeroRun { len } => SegmentJson { kind: "zeros", color: None, len },
                    Segment::ColorBlock { color, len } => SegmentJson { kind: "block", color: Some(color), len },
                })
                .collect();
            let obj = json!({ "word": word_text(&word), "admissible": ok, "segments": segments });
            writeln!(out, "{obj}")?;
        } else {
            writeln!(out, "{ok}")?;
        }
    }
    Ok(Outcome::Passed)
}

const STRATIFY_MAX_N: usize = 64;

fn count(
    params: &ShiftParams,
    max_n: usize,
    stratify: bool,
    first_coordinate: Option<u32>,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome> {
    if stratify && max_n > STRATIFY_MAX_N {
        bail!("--stratify supports --max-n up to {STRATIFY_MAX_N}");
    }
    let table = CountTable::build(max_n, params, stratify);
    let first: Option<Vec<u64>> = first_coordinate
        .map(|l| {
            (0..=max_n)
                .map(|n| brute::count_first_coordinate(n, l, params, brute::DEFAULT_BUDGET))
                .collect::<subshift_core::Result<Vec<_>>>()
        })
        .transpose()?;
    let bound = entropy_bound(params);
    match format {
        Format::Csv => {
            if stratify {
                writeln!(out, "n,k,ell,count")?;
                for (n, strata) in table.strata.iter().flatten().enumerate() {
                    for (&(k, ell), c) in &strata.0 {
                        writeln!(out, "{n},{k},{ell},{c}")?;
                    }
                }
            } else {
                write!(out, "n,count,rate,bound")?;
                if first.is_some() {
                    write!(out, ",first_coordinate_count")?;
                }
                writeln!(out)?;
                for n in 0..=max_n {
                    let e = table.estimate(n);
                    write!(out, "{n},{},{},{}", e.count, real(e.rate), real(bound))?;
                    if let Some(f) = &first {
                        write!(out, ",{}", f[n])?;
                    }
                    writeln!(out)?;
                }
            }
        }
        Format::Json => {
            let rows: Vec<_> = (0..=max_n)
                .map(|n| {
                    let e = table.estimate(n);
                    let mut row = json!({
                        "n": n,
                        "count": e.count.to_string(),
                        "rate": e.rate,
                        "bound": bound,
                    });
                    if let Some(strata) = &table.strata {
                        row["strata"] = strata[n]
                            .0
                            .iter()
                            .map(|(&(k, ell), c)| json!({ "k": k, "ell": ell, "count": c.to_string() }))
                            .collect();
                    }
                    if let Some(f) = &first {
                        row["first_coordinate_count"] = json!(f[n]);
                    }
                    row
                })
                .collect();
            let doc = json!({ "params": ParamsFile::from(params), "rows": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(Outcome::Passed)
}

fn entropy(params: &ShiftParams, max_n: usize, step: usize, format: Format, out: &mut dyn Write) -> Result<Outcome> {
    if max_n == 0 || step == 0 {
        bail!("--max-n and --step must be positive");
    }
    let table = CountTable::build(max_n, params, false);
    let bic = bicolored_bound(params);
    let ns: Vec<usize> = (step..=max_n).step_by(step).collect();
    match format {
        Format::Csv => {
            writeln!(out, "n,rate,lower_bound,bicolored_bound,entropy_bound")?;
            for &n in &ns {
                let e = table.estimate(n);
                let b = bic.map(real).unwrap_or_default();
                writeln!(out, "{n},{},{},{b},{}", real(e.rate), real(e.lower_bound), real(e.entropy_bound))?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = ns
                .iter()
                .map(|&n| {
                    let e = table.estimate(n);
                    json!({
                        "n": n,
                        "log_count": e.log_count,
                        "rate": e.rate,
                        "lower_bound": e.lower_bound,
                        "bicolored_bound": e.bicolored_bound,
                        "entropy_bound": e.entropy_bound,
                    })
                })
                .collect();
            let doc = json!({ "params": ParamsFile::from(params), "series": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(Outcome::Passed)
}

fn mixing(params: &ShiftParams, eta: &str, omega: &str, horizon: Option<usize>, out: &mut dyn Write) -> Result<Outcome> {
    let eta = parse_word(eta).context("--eta")?;
    let omega = parse_word(omega).context("--omega")?;
    let (_, bound, _) = mixing_bound(&eta, &omega, params);
    let general = {
        let t = params.tau();
        ((u128::from(t.numer()) + u128::from(t.denom())) * (eta.len() + 2 + omega.len()) as u128)
            .div_ceil(u128::from(t.denom())) as usize
    };
    let horizon = horizon.unwrap_or(bound.max(general).saturating_add(30));
    let r = minimal_mixing_gap(&eta, &omega, params, horizon)?;
    let kind = match r.bound_kind {
        BoundKind::Direct => "direct",
        BoundKind::Bridged => "bridged",
        BoundKind::Staircase => "staircase",
    };
    let certificates: Vec<_> =
        r.certificates.iter().map(|c| json!({ "gap": c.gap, "word": word_text(&c.word) })).collect();
    let doc = json!({
        "params": ParamsFile::from(params),
        "eta": word_text(&eta),
        "omega": word_text(&omega),
        "horizon": r.horizon,
        "n_min": r.n_min,
        "paper_bound": r.bound,
        "bound_kind": kind,
        "general_bound": r.general_bound,
        "constructed_gap": r.constructed_gap,
        "within_bound": r.within_bound,
        "certificates": certificates,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(if r.within_bound { Outcome::Passed } else { Outcome::Failed })
}

fn sample(
    params: &ShiftParams,
    color: u32,
    length: usize,
    seed: u64,
    stats: Option<usize>,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let m = BernoulliMeasure::max_entropy(color, params)?;
    let path = sample_path(&m, length, seed);
    let entropy = stats.map(|k| empirical_block_entropy(&path, k).map(|h| (k, h))).transpose()?;
    writeln!(out, "{}", word_text(&path))?;
    if let Some((k, h)) = entropy {
        let doc = json!({
            "color": color,
            "length": length,
            "seed": seed,
            "block_length": k,
            "block_entropy": h,
            "log_nu": f64::from(params.nu()).ln(),
            "metric_entropy": m.metric_entropy(),
            "admissible": is_admissible(&path, params)?,
        });
        writeln!(out, "{doc}")?;
    }
    Ok(Outcome::Passed)
}

fn pressure(
    f: &subshift_core::pressure::Potential,
    params: &ShiftParams,
    max_n: usize,
    step: usize,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome> {
    if max_n == 0 || step == 0 {
        bail!("--max-n and --step must be positive");
    }
    let series = partition_series(max_n, f, params)?;
    let rows: Vec<_> = series.iter().filter(|r| r.n % step == 0).collect();
    match format {
        Format::Csv => {
            writeln!(
                out,
                "n,rate,mono_rate,one_color_rate,multi_rate,base_pressure,stratum_residual,gap_condition,tau_condition,multi_bound_holds"
            )?;
            for r in rows {
                let nf = r.n as f64;
                let tau_ok = r.threshold.as_ref().map(|t| t.satisfied.to_string()).unwrap_or_default();
                let multi_ok = r.multi_rate_bound.map(|b| (r.log_z_multi / nf <= b).to_string()).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{:e},{},{tau_ok},{multi_ok}",
                    r.n,
                    real(r.rate),
                    real(r.log_z_mono / nf),
                    real(r.log_z_one_color / nf),
                    real(r.log_z_multi / nf),
                    real(r.base_pressure),
                    r.stratum_residual,
                    r.gap_condition,
                )?;
            }
        }
        Format::Json => {
            let series: Vec<_> = rows
                .iter()
                .map(|r| {
                    let nf = r.n as f64;
                    json!({
                        "n": r.n,
                        "log_z": r.log_z,
                        "rate": r.rate,
                        "mono_rate": r.log_z_mono / nf,
                        "one_color_rate": r.log_z_one_color / nf,
                        "multi_rate": finite_or_null(r.log_z_multi / nf),
                        "stratum_residual": r.stratum_residual,
                        "multi_rate_bound": r.multi_rate_bound,
                    })
                })
                .collect();
            let threshold = series_threshold(f, params);
            let doc = json!({
                "params": ParamsFile::from(params),
                "base_pressure": base_pressure(f).value,
                "sup_f": f.sup(),
                "gap_condition": base_pressure(f).value - f.sup() > std::f64::consts::LN_2,
                "threshold": threshold,
                "series": series,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(Outcome::Passed)
}

fn finite_or_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        json!(x)
    } else {
        serde_json::Value::Null
    }
}

fn series_threshold(f: &subshift_core::pressure::Potential, params: &ShiftParams) -> serde_json::Value {
    match subshift_core::pressure::tau_condition(f, params) {
        Ok(Some(t)) => json!({
            "c": t.c,
            "required_tau": t.required.to_string(),
            "required_tau_decimal": t.required.to_f64(),
            "satisfied": t.satisfied,
        }),
        _ => serde_json::Value::Null,
    }
}

fn gibbs_json(s: &GibbsState) -> serde_json::Value {
    json!({
        "color": s.color,
        "symbols": s.measure.symbols,
        "stationary": s.measure.stationary,
        "transition": s.measure.transition,
        "pressure": s.pressure,
        "entropy": s.entropy,
        "energy": s.energy,
    })
}

fn witnesses_json(ws: &[subshift_core::measures::SingularityWitness]) -> Vec<serde_json::Value> {
    ws.iter()
        .map(|w| {
            json!({
                "colors": [w.first_color, w.second_color],
                "supports": [w.first_support, w.second_support],
                "disjoint": w.disjoint,
            })
        })
        .collect()
}

fn equilibria_report(f: &subshift_core::pressure::Potential, params: &ShiftParams, out: &mut dyn Write) -> Result<Outcome> {
    let r = equilibrium_states_report(f, params)?;
    let check = |t: &subshift_core::pressure::ThresholdCheck| {
        json!({ "c": t.c, "required_tau": t.required.to_string(), "required_tau_decimal": t.required.to_f64(), "satisfied": t.satisfied })
    };
    let doc = json!({
        "params": ParamsFile::from(params),
        "base_pressure": r.base_pressure,
        "sup_f": r.sup_f,
        "margin": r.margin,
        "threshold": check(&r.threshold),
        "statement_threshold": check(&r.statement_threshold),
        "states": r.states.iter().map(gibbs_json).collect::<Vec<_>>(),
        "witnesses": witnesses_json(&r.witnesses),
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(Outcome::Passed)
}

const FAMILY_N: usize = 12;

fn family_report(f: &subshift_core::pressure::Potential, params: &ShiftParams, shown: u32, out: &mut dyn Write) -> Result<Outcome> {
    let l_max = shown.max(params.colors());
    let r = infinite_family_report(f, params, shown, FAMILY_N, l_max)?;
    let doc = json!({
        "schema": r.schema,
        "threshold": {
            "c": r.threshold.c,
            "required_tau": r.threshold.required.to_string(),
            "required_tau_decimal": r.threshold.required.to_f64(),
            "satisfied": r.threshold.satisfied,
        },
        "states": r.states.iter().map(gibbs_json).collect::<Vec<_>>(),
        "witnesses": witnesses_json(&r.witnesses),
        "n": r.n,
        "truncated_counts": r.truncated_counts.iter().map(|(l, c)| json!({ "colors": l, "count": c.to_string() })).collect::<Vec<_>>(),
        "monotone": r.monotone,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(if r.monotone { Outcome::Passed } else { Outcome::Failed })
}

fn thresholds(nu: u32, potential: Option<PathBuf>, format: Format, out: &mut dyn Write) -> Result<Outcome> {
    if nu < 2 {
        bail!("--nu must be at least 2");
    }
    let mut rows: Vec<(String, Tau, f64)> = Vec::new();
    for c in [3u32, 5] {
        rows.push((format!("log{c}/log(nu)"), entropy_threshold_tau(nu, c)?, entropy_threshold(nu, c)));
    }
    if let Some(path) = potential {
        let f = read_potential(&path, nu)?;
        for c in [3u32, STATEMENT_CONSTANT, 5] {
            let t = required_tau(&f, c)?;
            let margin = base_pressure(&f).value - f.sup();
            let exact = (f64::from(c) * f64::from(nu)).ln() / margin - 1.0;
            rows.push((format!("required_tau(c={c})"), t, exact));
        }
    }
    match format {
        Format::Csv => {
            writeln!(out, "quantity,rational_upper_bound,decimal")?;
            for (name, t, x) in &rows {
                writeln!(out, "{name},{t},{}", real(*x))?;
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(name, t, x)| json!({ "quantity": name, "rational_upper_bound": t.to_string(), "decimal": x }))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "nu": nu, "thresholds": items }))?)?;
        }
    }
    Ok(Outcome::Passed)
}

fn verify_suite(seed: u64, format: Format, out: &mut dyn Write) -> Result<Outcome> {
    let start = std::time::Instant::now();
    let results = verify::run_suite(seed);
    match format {
        Format::Csv => {
            writeln!(out, "id,criterion,result,detail")?;
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{},{},{status},\"{}\"", r.id, r.name, r.detail.replace('"', "'"))?;
            }
        }
        Format::Json => {
            let items: Vec<_> = results
                .iter()
                .map(|r| json!({ "id": r.id, "criterion": r.name, "passed": r.passed, "detail": r.detail }))
                .collect();
            let all = results.iter().all(|r| r.passed);
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "seed": seed, "passed": all, "checks": items }))?)?;
        }
    }
    eprintln!("verify finished in {:.1}s", start.elapsed().as_secs_f64());
    match results.iter().find(|r| !r.passed) {
        Some(first) => {
            eprintln!("first failing check: {} ({})", first.name, first.detail);
            Ok(Outcome::Failed)
        }
        None => Ok(Outcome::Passed),
    }
}
