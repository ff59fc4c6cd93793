//! Command-line front end.
//!
//! Every command is a pure function of its arguments. Tables go out as CSV
//! (LF line endings, header row) or JSON; records as pretty JSON. Exact values
//! are printed as `p/q` fractions. Failures print one JSON record on stderr
//! and exit with 2 (usage), 3 (validation) or 4 (internal).

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arithmetic::{classify_op, OpKind};
use crate::error::Error;
use crate::lattice::{classify, scale, window_enum, LatticePoint, SignSelection, Window, DEFAULT_WINDOW_CAP};
use crate::limit::convergence_table;
use crate::measurement::{bin_of, coarse_grain, ApparatusLadder, ApparatusReading, CoarseGrainRule, GrainRecord, Outcome};
use crate::number::{parse_or_round, round_to_grid, ExactRational, GridMode, GridParams, RnNumber, RoundMode};
use crate::oracle::{oracle_check, Op};
use crate::ordering::{pred, spacing, succ};
use crate::qm::{norm_check, position_expand, StateFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Upper bound on points any one command may enumerate.
pub const CAP_ENV: &str = "RN_ARITH_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "rn-arith",
    version,
    about = "Finite significant-figure arithmetic, lattices and measurement bins"
)]
pub struct Cli {
    /// Write the result to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    /// Base, 2..=36.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Half the number of significant digits.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// sym or free
    #[arg(long, default_value_t = GridMode::SymmetricRegion)]
    grid: GridMode,
    /// trunc, half-up or up
    #[arg(long, default_value_t = RoundMode::TruncateTowardZero)]
    round: RoundMode,
}

impl GridArgs {
    fn params(&self) -> Result<GridParams, Error> {
        GridParams::new(self.k, self.n, self.grid, self.round)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FigureId {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate `a op b op c ...` strictly left to right (ops: + - * /).
    Eval {
        expr: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Print every intermediate step as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Trace successor or predecessor steps from a starting literal.
    Walk {
        start: String,
        /// Number of steps; negative walks downward.
        #[arg(long, allow_negative_numbers = true, required_unless_present = "to", conflicts_with = "to")]
        steps: Option<i64>,
        /// Walk until this literal is reached.
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Enumerate the points of a finite lattice window.
    Lattice {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1)]
        dims: usize,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        e_min: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        e_max: i64,
        /// pos, neg or both
        #[arg(long, default_value = "both")]
        signs: SignSelection,
        /// Drop points with a zero coordinate.
        #[arg(long)]
        exclude_singular: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Coarse-grain a value to a finite-figure outcome, or bin an outcome.
    Grain {
        /// A value (`p/q`, integer, decimal) with --figures, otherwise an outcome string.
        input: String,
        /// Round the value to this many significant figures first.
        #[arg(long)]
        figures: Option<usize>,
        #[arg(long, default_value_t = 10)]
        k: u32,
        #[arg(long, default_value_t = RoundMode::RoundHalfUp)]
        round: RoundMode,
        /// Read the value as a base-k string.
        #[arg(long)]
        kary: bool,
        /// Symmetric bin half-width.
        #[arg(long, conflicts_with_all = ["delta_l", "delta_u"])]
        delta: Option<String>,
        #[arg(long)]
        delta_l: Option<String>,
        #[arg(long)]
        delta_u: Option<String>,
    },
    /// Readings of a quantity across a ladder of finite-range instruments.
    Apparatus {
        input: String,
        #[arg(long, default_value_t = 10)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        n_digits: u32,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        j_min: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 4)]
        j_max: i64,
        /// Unit exponent of apparatus 1.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        offset: i64,
        #[arg(long)]
        kary: bool,
    },
    /// Normalization report and position expansion of a JSON state (`-` for stdin).
    Qm {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true, requires = "e_max")]
        e_min: Option<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "e_min")]
        e_max: Option<i64>,
        #[arg(long, default_value = "both")]
        signs: SignSelection,
    },
    /// Region bounds and largest gaps as n grows.
    Limit {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        /// Probe interval start.
        #[arg(long, default_value = "1/2")]
        a: String,
        /// Probe interval end.
        #[arg(long, default_value = "2")]
        b: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compare every operand pair of a window against table rounding.
    OracleCheck {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, allow_negative_numbers = true, default_value_t = -1)]
        e_min: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        e_max: i64,
        #[arg(long, value_delimiter = ',', default_value = "add,mul")]
        ops: Vec<Op>,
        #[arg(long)]
        json: bool,
    },
    /// Data behind the axis, plane and scaling pictures.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, allow_negative_numbers = true)]
        e_min: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        e_max: Option<i64>,
        /// Scale shift for fig3; both +1 and -1 when omitted.
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// A failed command, reported as one JSON line on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub error: String,
    pub message: String,
    pub code: i32,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            error: "usage".into(),
            message: message.into(),
            code: EXIT_USAGE,
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            error: "internal".into(),
            message: message.into(),
            code: EXIT_INTERNAL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            error: e.kind().into(),
            message: e.to_string(),
            code: EXIT_VALIDATION,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::internal(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::internal(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::internal(e.to_string())
    }
}

struct Output {
    text: String,
    code: i32,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::internal(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Failure::internal(e.to_string()))
            }
            Format::Json => {
                #[derive(Serialize)]
                struct View<'a> {
                    columns: &'a [String],
                    rows: &'a [Vec<String>],
                }
                json(&View {
                    columns: &self.header,
                    rows: &self.rows,
                })
            }
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Enumeration cap from the environment, defaulting to 2^20 points.
pub fn enumeration_cap() -> Result<u128, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{CAP_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_WINDOW_CAP),
    }
}

fn ensure_cap(size: usize, cap: u128) -> Result<(), Failure> {
    if size as u128 > cap {
        return Err(Error::WindowTooLarge {
            size: size as u128,
            cap,
        }
        .into());
    }
    Ok(())
}

fn read_value(text: &str, k: u32, kary: bool) -> Result<ExactRational, Error> {
    if kary {
        Ok(Outcome::parse(text, k)?.value())
    } else {
        text.parse()
    }
}

#[derive(Debug, Clone, Serialize)]
struct EvalStep {
    op: char,
    lhs: String,
    rhs: String,
    result: String,
    value: String,
    kind: &'static str,
}

#[derive(Debug, Clone, Serialize)]
struct EvalReport {
    params: String,
    result: String,
    value: String,
    steps: Vec<EvalStep>,
}

/// Evaluates whitespace-separated `operand op operand ...` left to right.
pub fn eval_expression(expr: &str, params: GridParams) -> Result<RnNumber, Error> {
    Ok(eval_steps(expr, params)?.0)
}

fn eval_steps(expr: &str, params: GridParams) -> Result<(RnNumber, Vec<EvalStep>), Error> {
    let malformed = |reason: &str| Error::MalformedString {
        input: expr.to_string(),
        reason: reason.to_string(),
    };
    let mut tokens = expr.split_whitespace();
    let first = tokens.next().ok_or_else(|| malformed("empty expression"))?;
    let mut acc = parse_or_round(first, params)?;
    let mut steps = Vec::new();
    while let Some(op) = tokens.next() {
        let op = match op {
            "+" => Op::Add,
            "-" => Op::Sub,
            "*" => Op::Mul,
            "/" => Op::Div,
            _ => return Err(malformed("expected one of + - * / between operands")),
        };
        let rhs_text = tokens.next().ok_or_else(|| malformed("operator without right operand"))?;
        let rhs = parse_or_round(rhs_text, params)?;
        let result = op.apply(&acc, &rhs)?;
        let kind = match classify_op(&acc, &rhs, &result).kind {
            OpKind::Region => "region",
            OpKind::Jump => "jump",
        };
        steps.push(EvalStep {
            op: op.symbol(),
            lhs: acc.to_string(),
            rhs: rhs.to_string(),
            result: result.to_string(),
            value: result.value().to_string(),
            kind,
        });
        acc = result;
    }
    Ok((acc, steps))
}

fn cmd_eval(expr: &str, grid: GridArgs, as_json: bool) -> Result<Output, Failure> {
    let params = grid.params()?;
    let (result, steps) = eval_steps(expr, params)?;
    Ok(if as_json {
        json(&EvalReport {
            params: params.to_string(),
            result: result.to_string(),
            value: result.value().to_string(),
            steps,
        })?
    } else {
        format!("{result}\n")
    }
    .into())
}

fn cmd_walk(start: &str, steps: Option<i64>, to: Option<&str>, grid: GridArgs, format: Format) -> Result<Output, Failure> {
    let params = grid.params()?;
    let cap = enumeration_cap()?;
    let start = RnNumber::parse(start, params)?;
    let mut chain = vec![start.clone()];
    let (count, upward, target) = match (steps, to) {
        (Some(s), None) => (Some(s.unsigned_abs()), s >= 0, None),
        (None, Some(t)) => {
            let target = RnNumber::parse(t, params)?;
            let upward = target.compare(&start)? != std::cmp::Ordering::Less;
            (None, upward, Some(target))
        }
        _ => return Err(Failure::usage("give exactly one of --steps and --to")),
    };
    let mut cur = start;
    loop {
        let done = match (&count, &target) {
            (Some(c), _) => chain.len() as u64 > *c,
            (None, Some(t)) => &cur == t,
            _ => true,
        };
        if done {
            break;
        }
        ensure_cap(chain.len() + 1, cap)?;
        cur = if upward { succ(&cur)?.next } else { pred(&cur)?.next };
        chain.push(cur.clone());
    }
    let mut table = Table::new(["index", "literal", "value", "spacing", "jumped"]);
    for (i, x) in chain.iter().enumerate() {
        let jumped = i > 0 && chain[i - 1].exponent() != x.exponent();
        table.push(vec![
            i.to_string(),
            x.to_string(),
            x.value().to_string(),
            spacing(x)?.to_string(),
            jumped.to_string(),
        ]);
    }
    Ok(table.render(format)?.into())
}

fn coordinate_table(points: &[LatticePoint], dims: usize, names: &[&str]) -> Table {
    let name = |i: usize| names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{}", i + 1));
    let mut header: Vec<String> = (0..dims).map(name).collect();
    header.extend((0..dims).map(|i| format!("{}_value", name(i))));
    header.push("degree".into());
    let mut table = Table::new(header);
    for p in points {
        let mut row: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        row.extend(p.coords().iter().map(|c| c.value().to_string()));
        row.push(classify(p).degree.to_string());
        table.push(row);
    }
    table
}

fn cmd_lattice(
    grid: GridArgs,
    dims: usize,
    window: Window,
    format: Format,
) -> Result<Output, Failure> {
    let params = grid.params()?;
    let window = window.with_cap(enumeration_cap()?);
    let points = window_enum(params, dims, &window)?;
    Ok(coordinate_table(&points, dims, &[]).render(format)?.into())
}

struct GrainArgs<'a> {
    input: &'a str,
    figures: Option<usize>,
    k: u32,
    round: RoundMode,
    kary: bool,
    delta: Option<&'a str>,
    delta_l: Option<&'a str>,
    delta_u: Option<&'a str>,
}

fn cmd_grain(a: GrainArgs<'_>) -> Result<Output, Failure> {
    let outcome = match a.figures {
        Some(m) => coarse_grain(&read_value(a.input, a.k, a.kary)?, m, a.k, a.round)?,
        None => Outcome::parse(a.input, a.k)?,
    };
    let width = |w: Option<&str>| -> Result<ExactRational, Error> { w.map_or(Ok(ExactRational::zero()), str::parse) };
    let rule = match (a.delta, a.delta_l, a.delta_u) {
        (Some(d), _, _) => CoarseGrainRule::symmetric(d.parse()?)?,
        (None, None, None) => CoarseGrainRule::covering(&outcome.step(), a.round),
        (None, l, u) => CoarseGrainRule::constant(width(l)?, width(u)?)?,
    };
    let bin = bin_of(&outcome, &rule);
    Ok(json(&GrainRecord::new(a.input, &outcome, &bin))?.into())
}

#[derive(Serialize)]
struct ApparatusReport {
    input: String,
    value: String,
    located: Option<i64>,
    readings: Vec<ApparatusReading>,
}

fn cmd_apparatus(input: &str, ladder: ApparatusLadder, j_min: i64, j_max: i64, kary: bool) -> Result<Output, Failure> {
    let q = read_value(input, ladder.k, kary)?;
    ensure_cap((j_max - j_min + 1).max(0) as usize, enumeration_cap()?)?;
    let readings = ladder.scan(&q, j_min, j_max)?;
    Ok(json(&ApparatusReport {
        input: input.to_string(),
        value: q.to_string(),
        located: ladder.locate(&q),
        readings,
    })?
    .into())
}

#[derive(Serialize)]
struct NormView {
    norm2: String,
    norm2_value: String,
    exact_norm2: String,
    rounded_square_sum: String,
    residual: String,
    exact_residual: String,
}

#[derive(Serialize)]
struct TermView {
    label: String,
    re: String,
    im: String,
    square: String,
    exact_square: String,
}

#[derive(Serialize)]
struct CoefficientView {
    label: String,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct ExpansionView {
    positions: usize,
    nonzero: Vec<CoefficientView>,
}

#[derive(Serialize)]
struct QmReport {
    params: String,
    norm: NormView,
    terms: Vec<TermView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expansion: Option<ExpansionView>,
}

fn cmd_qm(file: &PathBuf, window: Option<(i64, i64, SignSelection)>) -> Result<Output, Failure> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file)?
    };
    let state_file: StateFile = serde_json::from_str(&text).map_err(|e| {
        Failure::from(Error::MalformedString {
            input: file.display().to_string(),
            reason: e.to_string(),
        })
    })?;
    let state = state_file.to_state()?;
    let params = state.params();
    let report = norm_check(&state)?;
    let terms = state
        .iter()
        .map(|(label, c)| {
            let exact = c.norm_sqr_exact();
            TermView {
                label: label.to_string(),
                re: c.re().to_string(),
                im: c.im().to_string(),
                square: round_to_grid(&exact, params).to_string(),
                exact_square: exact.to_string(),
            }
        })
        .collect();
    let expansion = match window {
        Some((e_min, e_max, signs)) => {
            let w = Window::new(e_min, e_max, signs).with_cap(enumeration_cap()?);
            let coefficients = position_expand(&state, &w)?;
            Some(ExpansionView {
                positions: coefficients.len(),
                nonzero: coefficients
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| CoefficientView {
                        label: l.to_string(),
                        re: c.re().to_string(),
                        im: c.im().to_string(),
                    })
                    .collect(),
            })
        }
        None => None,
    };
    Ok(json(&QmReport {
        params: params.to_string(),
        norm: NormView {
            norm2: report.norm2.to_string(),
            norm2_value: report.norm2.value().to_string(),
            exact_norm2: report.exact_norm2.to_string(),
            rounded_square_sum: report.rounded_square_sum.to_string(),
            residual: report.residual.to_string(),
            exact_residual: report.exact_residual.to_string(),
        },
        terms,
        expansion,
    })?
    .into())
}

fn cmd_limit(k: u32, n_min: u32, n_max: u32, a: &str, b: &str, format: Format) -> Result<Output, Failure> {
    let (a, b): (ExactRational, ExactRational) = (a.parse()?, b.parse()?);
    let rows = convergence_table(k, n_min..=n_max, &a, &b)?;
    Ok(match format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut table = Table::new(["n", "low", "high", "step", "max_gap"]);
            for r in rows {
                table.push(vec![
                    r.n.to_string(),
                    r.low.to_string(),
                    r.high.to_string(),
                    r.step.to_string(),
                    r.max_gap.map(|g| g.to_string()).unwrap_or_default(),
                ]);
            }
            table.render(Format::Csv)?
        }
    }
    .into())
}

fn cmd_oracle(grid: GridArgs, e_min: i64, e_max: i64, ops: &[Op], as_json: bool) -> Result<Output, Failure> {
    let params = grid.params()?;
    let report = oracle_check(params, e_min, e_max, ops)?;
    let code = if report.mismatches.is_empty() { EXIT_OK } else { EXIT_INTERNAL };
    let text = if as_json {
        json(&report)?
    } else {
        let mut s = String::new();
        for m in &report.mismatches {
            s.push_str(&format!(
                "{} {} {}: got {}, expected {}\n",
                m.a,
                m.op.symbol(),
                m.b,
                m.got,
                if m.expected.is_empty() { "off-table" } else { &m.expected }
            ));
        }
        let names: Vec<String> = ops.iter().map(Op::to_string).collect();
        s.push_str(&format!(
            "{} results checked ({} over {} operands)\n{} mismatches\n",
            report.checked,
            names.join(","),
            report.operands,
            report.mismatches.len()
        ));
        s
    };
    Ok(Output { text, code })
}

fn cmd_figure(
    id: FigureId,
    grid: GridArgs,
    e_range: (Option<i64>, Option<i64>),
    j: Option<i64>,
    format: Format,
) -> Result<Output, Failure> {
    let params = grid.params()?;
    let cap = enumeration_cap()?;
    let default_range = if id == FigureId::Fig3 { (-1, 1) } else { (0, 1) };
    let e_min = e_range.0.unwrap_or(default_range.0);
    let e_max = e_range.1.unwrap_or(default_range.1);
    let table = match id {
        FigureId::Fig1 => {
            let w = Window::new(e_min, e_max, SignSelection::Both).with_cap(cap);
            let mut t = Table::new(["tick", "value", "e"]);
            for p in window_enum(params, 1, &w)? {
                let x = &p.coords()[0];
                t.push(vec![x.to_string(), x.value().to_string(), x.exponent().to_string()]);
            }
            t
        }
        FigureId::Fig2 => {
            let w = Window::new(e_min, e_max, SignSelection::Both).with_singular(true).with_cap(cap);
            coordinate_table(&window_enum(params, 2, &w)?, 2, &["x", "y"])
        }
        FigureId::Fig3 => {
            let w = Window::new(e_min, e_max, SignSelection::Positive).with_cap(cap);
            let points = window_enum(params, 1, &w)?;
            let members: HashSet<&LatticePoint> = points.iter().collect();
            let mut t = Table::new(["kind", "j", "from", "from_value", "to", "to_value", "ratio"]);
            for j in j.map_or(vec![1, -1], |j| vec![j]) {
                for p in &points {
                    let q = scale(p, j)?;
                    let (from, to) = (&p.coords()[0], &q.coords()[0]);
                    t.push(vec![
                        "map".into(),
                        j.to_string(),
                        from.to_string(),
                        from.value().to_string(),
                        to.to_string(),
                        to.value().to_string(),
                        to.value().checked_div(&from.value())?.to_string(),
                    ]);
                }
                for p in &points {
                    if !members.contains(&scale(p, -j)?) {
                        let x = &p.coords()[0];
                        t.push(vec![
                            "source".into(),
                            j.to_string(),
                            String::new(),
                            String::new(),
                            x.to_string(),
                            x.value().to_string(),
                            String::new(),
                        ]);
                    }
                }
            }
            t
        }
    };
    Ok(table.render(format)?.into())
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Eval { expr, grid, json } => cmd_eval(expr, *grid, *json),
        Command::Walk {
            start,
            steps,
            to,
            grid,
            format,
        } => cmd_walk(start, *steps, to.as_deref(), *grid, *format),
        Command::Lattice {
            grid,
            dims,
            e_min,
            e_max,
            signs,
            exclude_singular,
            format,
        } => cmd_lattice(
            *grid,
            *dims,
            Window::new(*e_min, *e_max, *signs).with_singular(!exclude_singular),
            *format,
        ),
        Command::Grain {
            input,
            figures,
            k,
            round,
            kary,
            delta,
            delta_l,
            delta_u,
        } => cmd_grain(GrainArgs {
            input,
            figures: *figures,
            k: *k,
            round: *round,
            kary: *kary,
            delta: delta.as_deref(),
            delta_l: delta_l.as_deref(),
            delta_u: delta_u.as_deref(),
        }),
        Command::Apparatus {
            input,
            k,
            n_digits,
            j_min,
            j_max,
            offset,
            kary,
        } => cmd_apparatus(
            input,
            ApparatusLadder::new(*k, *n_digits)?.with_offset(*offset),
            *j_min,
            *j_max,
            *kary,
        ),
        Command::Qm {
            file,
            e_min,
            e_max,
            signs,
        } => cmd_qm(file, e_min.zip(*e_max).map(|(lo, hi)| (lo, hi, *signs))),
        Command::Limit {
            k,
            n_min,
            n_max,
            a,
            b,
            format,
        } => cmd_limit(*k, *n_min, *n_max, a, b, *format),
        Command::OracleCheck {
            grid,
            e_min,
            e_max,
            ops,
            json,
        } => cmd_oracle(*grid, *e_min, *e_max, ops, *json),
        Command::Figure {
            id,
            grid,
            e_min,
            e_max,
            j,
            format,
        } => cmd_figure(*id, *grid, (*e_min, *e_max), *j, *format),
    }
}

fn report(err: &mut dyn Write, failure: &Failure) -> i32 {
    let line = serde_json::to_string(failure).unwrap_or_else(|_| format!("{{\"error\":\"{}\"}}", failure.error));
    let _ = writeln!(err, "{line}");
    failure.code
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => return report(err, &Failure::usage(e.render().to_string().trim_end())),
    };
    match execute(&cli) {
        Ok(output) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &output.text),
                None => out.write_all(output.text.as_bytes()).and_then(|_| out.flush()),
            };
            match written {
                Ok(()) => output.code,
                Err(e) => report(err, &Failure::from(e)),
            }
        }
        Err(failure) => report(err, &failure),
    }
}

/// Entry point for the binary.
pub fn main_exit() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
