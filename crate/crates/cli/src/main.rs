mod svg;

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tightgon::analytic::{constant_with, ConstantName, SeriesConfig};
use tightgon::circumscribe::{prime_pair_table, rotated_with_code, s_heuristic, tight_rotated};
use tightgon::nest::{named_constant, CascadeSpec, Mode, Sequence};
use tightgon::translate::Preset;
use tightgon::validate::{heuristic_campaign, oracle_campaign};

#[derive(Parser)]
#[command(name = "tightgon", version, about = "Tight circumscription of regular polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tight ratio of one polygon pair, as JSON.
    Ratio(RatioArgs),
    /// Grid of tight ratios, as CSV.
    Table(TableArgs),
    /// Contact indices for adjacent odd primes, as CSV.
    Primes(PrimesArgs),
    /// A named constant with its truncation and error estimate, as JSON.
    Constant(ConstantArgs),
    /// SVG drawing of a cascade, a single pair or a translated preset.
    Figure(FigureArgs),
    /// Rotation rule and closed forms checked over a grid.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Standard,
    Rotated,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Standard => Mode::Standard,
            ModeArg::Rotated => Mode::Rotated,
        }
    }
}

#[derive(Args)]
struct RatioArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value = "standard")]
    mode: ModeArg,
    /// Shifted-center configuration: 3-4, 4-3 or 3-5.
    #[arg(long)]
    translate_preset: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    /// Inner side counts, `a..b` inclusive.
    #[arg(long, default_value = "3..10", value_parser = parse_range)]
    rows: RangeInclusive<u32>,
    /// Outer side counts, `a..b` inclusive.
    #[arg(long, default_value = "3..10", value_parser = parse_range)]
    cols: RangeInclusive<u32>,
    #[arg(long, value_enum, default_value = "standard")]
    mode: ModeArg,
    #[arg(long, default_value_t = 8)]
    digits: usize,
}

#[derive(Args)]
struct PrimesArgs {
    /// Largest prime in the table.
    #[arg(long, default_value_t = 73)]
    max: u32,
}

#[derive(Args)]
struct ConstantArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    taylor_order: Option<u32>,
    #[arg(long)]
    cutoff: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SequenceArg {
    ConsecutiveUp,
    ConsecutiveDown,
    PrimesUp,
    PrimesDown,
}

impl From<SequenceArg> for Sequence {
    fn from(s: SequenceArg) -> Self {
        match s {
            SequenceArg::ConsecutiveUp => Sequence::ConsecutiveUp,
            SequenceArg::ConsecutiveDown => Sequence::ConsecutiveDown,
            SequenceArg::PrimesUp => Sequence::PrimesUp,
            SequenceArg::PrimesDown => Sequence::PrimesDown,
        }
    }
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long, value_enum, default_value = "consecutive-up")]
    sequence: SequenceArg,
    #[arg(long, default_value_t = 3)]
    start: u32,
    #[arg(long, default_value_t = 16)]
    end: u32,
    #[arg(long, value_enum, default_value = "standard")]
    mode: ModeArg,
    /// Draw just this pair, `n,m`, instead of a cascade.
    #[arg(long, value_parser = parse_pair, conflicts_with = "translate_preset")]
    pair: Option<(u32, u32)>,
    /// Draw a shifted-center preset instead of a cascade.
    #[arg(long)]
    translate_preset: Option<String>,
    /// Width and height of the drawing in pixels.
    #[arg(long, default_value_t = 800)]
    size: u32,
    #[arg(long, default_value_t = 1.0)]
    stroke_width: f64,
    #[arg(long, default_value = "black")]
    stroke: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Campaign {
    All,
    Heuristic,
    Oracle,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = 44)]
    max_n: u32,
    #[arg(long, value_enum, default_value = "all")]
    mode: Campaign,
}

/// Error paired with the process exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self { code: 2, error: error.into() }
    }

    fn io(error: impl Into<anyhow::Error>) -> Self {
        Self { code: 4, error: error.into() }
    }
}

impl From<tightgon::Error> for Failure {
    fn from(e: tightgon::Error) -> Self {
        let code = match e {
            tightgon::Error::UnknownConstant(_) | tightgon::Error::UnknownPreset(_) => 3,
            _ => 2,
        };
        Self { code, error: e.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::io(e)
    }
}

type Outcome = std::result::Result<ExitCode, Failure>;

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("`{b}`: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn parse_pair(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `n,m`, got `{s}`"))?;
    let a = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
    Ok((a, b))
}

/// Fixed-point text with `digits` decimals. Exact binary ties round to even.
fn fixed(x: f64, digits: usize) -> String {
    format!("{x:.digits$}")
}

fn print_json(value: &impl Serialize) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

#[derive(Serialize)]
struct RatioReport {
    n: u32,
    m: u32,
    mode: String,
    ratio: f64,
    j_i: u32,
    j_o: u32,
    t: f64,
    mismatch: i64,
    s: i64,
    alpha: f64,
}

#[derive(Serialize)]
struct PresetReport {
    preset: &'static str,
    n: u32,
    m: u32,
    ratio: f64,
    inverse: f64,
    shift: f64,
    t_values: Vec<f64>,
}

fn cmd_ratio(args: RatioArgs) -> Outcome {
    if let Some(name) = &args.translate_preset {
        let preset = Preset::parse(name)?;
        if preset.sides() != (args.n, args.m) {
            return Err(Failure::input(anyhow!(
                "preset {name} is for n = {}, m = {}",
                preset.sides().0,
                preset.sides().1
            )));
        }
        let s = preset.solve()?;
        print_json(&PresetReport {
            preset: preset.name(),
            n: s.n,
            m: s.m,
            ratio: s.ratio,
            inverse: 1.0 / s.ratio,
            shift: s.shift,
            t_values: s.t_values,
        })?;
        return Ok(ExitCode::SUCCESS);
    }
    let mode = Mode::from(args.mode);
    let s = match mode {
        Mode::Standard => 0,
        Mode::Rotated => s_heuristic(args.n, args.m)?,
    };
    let sol = rotated_with_code(args.n, args.m, s)?;
    print_json(&RatioReport {
        n: args.n,
        m: args.m,
        mode: mode.to_string(),
        ratio: sol.base.ratio,
        j_i: sol.base.j_i,
        j_o: sol.base.j_o,
        t: sol.base.t,
        mismatch: sol.base.mismatch,
        s,
        alpha: sol.alpha,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Outcome {
    // fail on the whole grid before writing any of it
    let mut body = Vec::new();
    for n in args.rows.clone() {
        let mut row = vec![n.to_string()];
        for m in args.cols.clone() {
            let ratio = match args.mode {
                ModeArg::Standard => rotated_with_code(n, m, 0)?.base.ratio,
                ModeArg::Rotated => tight_rotated(n, m)?.base.ratio,
            };
            row.push(fixed(ratio, args.digits));
        }
        body.push(row);
    }
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    let header = std::iter::once("n\\m".to_string()).chain(args.cols.map(|m| m.to_string()));
    w.write_record(header)?;
    for row in body {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_primes(args: PrimesArgs) -> Outcome {
    let table = prime_pair_table(args.max)?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for row in &table.rows {
        w.serialize(row)?;
    }
    w.flush()?;
    drop(w);
    let mut out = io::stdout().lock();
    if table.violations.is_empty() {
        writeln!(out, "# all {} mismatches are ±1", table.rows.len())?;
    } else {
        let list: Vec<String> = table
            .violations
            .iter()
            .map(|r| format!("({},{}):{}", r.n, r.m, r.mismatch))
            .collect();
        writeln!(out, "# {} mismatches are not ±1: {}", list.len(), list.join(" "))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_constant(args: ConstantArgs) -> Outcome {
    let result = if args.taylor_order.is_none() && args.cutoff.is_none() {
        named_constant(&args.name)?
    } else {
        let name: ConstantName = match args.name.parse() {
            Ok(name) => name,
            Err(e) if named_constant(&args.name).is_ok() => {
                return Err(Failure::input(anyhow!(
                    "{}: truncation overrides apply only to the series constants ({e})",
                    args.name
                )))
            }
            Err(e) => return Err(e.into()),
        };
        let base = name.default_config();
        let cfg = SeriesConfig {
            taylor_order: args.taylor_order.unwrap_or(base.taylor_order),
            cutoff_m: args.cutoff.unwrap_or(base.cutoff_m),
            ..base
        };
        constant_with(name, &cfg)?
    };
    print_json(&result)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_figure(args: FigureArgs) -> Outcome {
    let style = svg::Style { size: args.size, stroke: args.stroke, stroke_width: args.stroke_width };
    if args.size == 0 || !(args.stroke_width > 0.0) {
        return Err(Failure::input(anyhow!("size and stroke width must be positive")));
    }
    let shapes = if let Some(name) = &args.translate_preset {
        svg::preset_shapes(Preset::parse(name)?)?
    } else if let Some((n, m)) = args.pair {
        svg::pair_shapes(n, m, args.mode.into())?
    } else {
        let spec = CascadeSpec::new(args.sequence.into(), args.start, args.end, args.mode.into());
        svg::cascade_shapes(&spec)?
    };
    let doc = svg::render(&shapes, &style);
    std::fs::write(&args.out, doc)
        .map_err(|e| Failure::io(anyhow!("{}: {e}", args.out.display())))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: ValidateArgs) -> Outcome {
    let mut out = io::stdout().lock();
    let mut clean = true;
    let span = format!("3 ≤ n, m ≤ {}", args.max_n);
    if args.mode != Campaign::Oracle {
        let checks = heuristic_campaign(args.max_n)?;
        let bad: Vec<_> = checks.iter().filter(|c| c.is_discrepancy()).collect();
        writeln!(
            out,
            "heuristic: {} pairs over {span}, {} discrepancies",
            checks.len(),
            bad.len()
        )?;
        if !bad.is_empty() {
            clean = false;
            writeln!(out, "{:>4} {:>4} {:>7} {:>7} {:>14} {:>14}", "n", "m", "s_rule", "s_best", "rule_ratio", "best_ratio")?;
            for c in bad {
                writeln!(
                    out,
                    "{:>4} {:>4} {:>7} {:>7} {:>14.10} {:>14.10}",
                    c.n, c.m, c.s_heuristic, c.s_search, c.heuristic_ratio, c.search_ratio
                )?;
            }
        }
    }
    if args.mode != Campaign::Heuristic {
        let checks = oracle_campaign(args.max_n)?;
        let worst = checks.iter().map(|c| c.deviation()).fold(0.0, f64::max);
        let bad: Vec<_> = checks.iter().filter(|c| c.is_discrepancy()).collect();
        writeln!(
            out,
            "oracle: {} checks over {span}, max deviation {worst:.3e}, {} discrepancies",
            checks.len(),
            bad.len()
        )?;
        if args.mode == Campaign::Oracle {
            writeln!(out, "{:>4} {:>4} {:>12}", "n", "m", "max_dev")?;
            for pair in checks.chunks(2) {
                let dev = pair.iter().map(|c| c.deviation()).fold(0.0, f64::max);
                writeln!(out, "{:>4} {:>4} {:>12.3e}", pair[0].n, pair[0].m, dev)?;
            }
        }
        if !bad.is_empty() {
            clean = false;
            writeln!(out, "{:>4} {:>4} {:>5} {:>14} {:>14}", "n", "m", "s", "formula", "oracle")?;
            for c in bad {
                writeln!(out, "{:>4} {:>4} {:>5} {:>14.10} {:>14.10}", c.n, c.m, c.s, c.formula, c.oracle)?;
            }
        }
    }
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|e| match e.kind() {
                csv::ErrorKind::Io(e) => e.kind() == io::ErrorKind::BrokenPipe,
                _ => false,
            })
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Ratio(a) => cmd_ratio(a),
        Command::Table(a) => cmd_table(a),
        Command::Primes(a) => cmd_primes(a),
        Command::Constant(a) => cmd_constant(a),
        Command::Figure(a) => cmd_figure(a),
        Command::Validate(a) => cmd_validate(a),
    };
    match outcome {
        Ok(code) => code,
        // a closed downstream pipe (`| head`) is not an error
        Err(f) if is_broken_pipe(&f.error) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..10").unwrap(), 3..=10);
        assert_eq!(parse_range("4..=4").unwrap(), 4..=4);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("3-10").is_err());
        assert_eq!(parse_pair("3, 7").unwrap(), (3, 7));
    }

    #[test]
    fn exact_ties_round_to_even() {
        assert_eq!(fixed(0.125, 2), "0.12");
        assert_eq!(fixed(0.375, 2), "0.38");
        assert_eq!(fixed(2.5, 0), "2");
        assert_eq!(fixed(1.366_025_403_784_438_6, 8), "1.36602540");
    }
}
