//! The `structmor` command-line front end.
//!
//! Exit codes: 0 success, 2 bad input, 3 numerical failure or a failed check.
//! Every file is written atomically and every JSON artifact echoes its
//! configuration next to the tool name and version.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    compute_moments, frequency_grid, match_report, passivity_sample, sample_right_half_plane, sweep,
    sweep_error, GridScale, THEOREM1_TOL, THEOREM2_TOL,
};
use crate::densela::{c64, DEFAULT_RANK_TOL, C64};
use crate::error::{Error, Result};
use crate::io::{write_atomic, write_json_atomic};
use crate::krylov::{build_basis, make_operator, KrylovBasis, DEFAULT_DEFLATION_TOL};
use crate::linearize::{linearize_higher_order, linearize_second_order};
use crate::netlist::{assemble_mna, mna_to_second_order, parse_netlist, ElementKind};
use crate::reduce::{
    higher_order_reduce, prima_reduce, sprim_reduce, structure_check, ReducedModel, StructuredForm,
};
use crate::synth::{rc_ladder, rlc_ladder};
use crate::systems::{
    j_relation_report, FirstOrderSystem, HermitianStructure, HigherOrderSystem, Model, ModelFile,
    SpecialSecondOrderSystem, TransferFunction,
};

/// Named expansion points: `peec` = 2 pi 1e9, `package` = 5 pi 1e9,
/// `shaft` = pi 1e3.
pub const S0_PRESETS: [(&str, f64); 3] = [
    ("peec", 2.0 * PI * 1e9),
    ("package", 5.0 * PI * 1e9),
    ("shaft", PI * 1e3),
];

#[derive(Parser, Debug)]
#[command(name = "structmor", version, about = "Structure-preserving Krylov model-order reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and assemble a netlist and print a summary.
    Parse(ParseArgs),
    /// Reduce a netlist or model file.
    Reduce(ReduceArgs),
    /// Moments of the first-order realization about s0.
    Moments(MomentsArgs),
    /// Frequency response as CSV.
    Sweep(SweepArgs),
    /// Reduce with several methods off one shared Krylov basis and compare.
    Compare(CompareArgs),
    /// Hermitian identities, J-relations and sampled passivity.
    Check(CheckArgs),
    /// Write a synthetic ladder netlist.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Prima,
    Sprim,
    Higher,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Prima => "prima",
            Method::Sprim => "sprim",
            Method::Higher => "higher",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Scale {
    Log,
    Linear,
}

impl From<Scale> for GridScale {
    fn from(s: Scale) -> Self {
        match s {
            Scale::Log => GridScale::Log,
            Scale::Linear => GridScale::Linear,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum LadderKind {
    RcLadder,
    RlcLadder,
}

#[derive(Args, Debug, Serialize)]
struct ParseArgs {
    netlist: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Tolerances {
    /// Relative deflation tolerance of the block Arnoldi process.
    #[arg(long, default_value_t = DEFAULT_DEFLATION_TOL)]
    deflation_tol: f64,
    /// Rank tolerance of the structured re-orthonormalization.
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    rank_tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct ReduceArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    /// Expansion point: a number, `a+bi`, or a preset (peec, package, shaft).
    #[arg(long, value_parser = parse_s0)]
    s0: C64,
    /// Target reduced dimension; snapped up to the next block boundary.
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    tol: Tolerances,
    /// Output directory for `model.json` and `report.json`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct MomentsArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_s0)]
    s0: C64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct GridArgs {
    #[arg(long)]
    f_min: Option<f64>,
    #[arg(long)]
    f_max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    scale: Scale,
}

#[derive(Args, Debug, Serialize)]
struct SweepArgs {
    input: PathBuf,
    #[command(flatten)]
    grid: GridArgs,
    /// Entry `i,j` (1-based) to write; repeatable. Default: all entries.
    #[arg(long = "entry", value_parser = parse_entry)]
    entries: Vec<(usize, usize)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct CompareArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_s0)]
    s0: C64,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Method::Prima, Method::Sprim])]
    methods: Vec<Method>,
    #[command(flatten)]
    tol: Tolerances,
    /// Moment-match tolerance; default 1e-8, or 1e-6 where 2j moments are expected.
    #[arg(long)]
    match_tol: Option<f64>,
    /// Grid; defaults to two decades around |s0| / 2 pi.
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct CheckArgs {
    input: PathBuf,
    /// Real expansion point for the J-relations.
    #[arg(long, value_parser = parse_s0, default_value = "peec")]
    s0: C64,
    /// Right half-plane samples for the passivity test.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample passivity for model files too (always done for netlists).
    #[arg(long)]
    passivity: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: LadderKind,
    #[arg(long)]
    sections: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Couple adjacent inductors (RLC ladder only).
    #[arg(long)]
    coupling: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `1e9`, `0.5-2i`, `3i` or a preset name.
pub fn parse_s0(text: &str) -> std::result::Result<C64, String> {
    let t = text.trim().replace(' ', "");
    if let Some((_, v)) = S0_PRESETS.iter().find(|(name, _)| name.eq_ignore_ascii_case(&t)) {
        return Ok(c64(*v, 0.0));
    }
    let bad = || format!("cannot parse expansion point `{text}`");
    let num = |s: &str| s.parse::<f64>().ok().filter(|x| x.is_finite());
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return num(&t).map(|re| c64(re, 0.0)).ok_or_else(bad);
    };
    // Split at the last sign that is not leading and not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k]), &body[k..]),
        None => (Some(0.0), body),
    };
    let im = match im {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        s => num(s),
    };
    match (re, im) {
        (Some(re), Some(im)) => Ok(c64(re, im)),
        _ => Err(bad()),
    }
}

fn parse_entry(text: &str) -> std::result::Result<(usize, usize), String> {
    let parsed = text.split_once(',').and_then(|(a, b)| {
        let (i, j) = (a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?);
        (i > 0 && j > 0).then_some((i, j))
    });
    parsed.ok_or_else(|| format!("entry must be `i,j` with 1-based indices, got `{text}`"))
}

/// A loaded input: a netlist in its special second-order form, or a model file.
enum Source {
    Netlist(SpecialSecondOrderSystem),
    Model(Model),
}

fn load(path: &Path) -> Result<Source> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        return Ok(Source::Model(ModelFile::from_json(&text)?));
    }
    let netlist = parse_netlist(&text)?;
    Ok(Source::Netlist(mna_to_second_order(&assemble_mna(&netlist)?)?))
}

/// Structured view of a source, if it has one.
enum Structured<'a> {
    Second(&'a SpecialSecondOrderSystem),
    Higher(&'a HigherOrderSystem),
    First(&'a FirstOrderSystem),
}

impl Source {
    fn structured(&self) -> Structured<'_> {
        match self {
            Source::Netlist(system) => Structured::Second(system),
            Source::Model(Model::SecondOrder(s)) => Structured::Second(s),
            Source::Model(Model::HigherOrder(s)) => Structured::Higher(s),
            Source::Model(Model::FirstOrder(s)) => Structured::First(s),
            Source::Model(Model::Reduced(r)) => match &r.structured {
                Some(StructuredForm::SecondOrder(s)) => Structured::Second(s),
                Some(StructuredForm::HigherOrder(s)) => Structured::Higher(s),
                None => Structured::First(&r.first_order),
            },
        }
    }

    fn first_order(&self) -> Result<FirstOrderSystem> {
        match self.structured() {
            Structured::Second(s) => Ok(linearize_second_order(s)?.0),
            Structured::Higher(s) => Ok(linearize_higher_order(s)?.0),
            Structured::First(s) => Ok(s.clone()),
        }
    }

    fn transfer(&self) -> &dyn TransferFunctionSync {
        match self {
            Source::Netlist(system) => system,
            Source::Model(m) => m,
        }
    }

    fn hermitian(&self) -> Option<bool> {
        match self.structured() {
            Structured::Second(s) => Some(s.is_hermitian()),
            Structured::Higher(s) => Some(s.is_hermitian()),
            Structured::First(_) => None,
        }
    }
}

trait TransferFunctionSync: TransferFunction + Sync {}
impl<T: TransferFunction + Sync> TransferFunctionSync for T {}

fn reduce_on_basis(
    source: &Source,
    fo: &FirstOrderSystem,
    basis: &KrylovBasis,
    method: Method,
    rank_tol: f64,
) -> Result<ReducedModel> {
    match (method, source.structured()) {
        (Method::Prima, _) => prima_reduce(fo, basis),
        (Method::Sprim, Structured::Second(s)) => sprim_reduce(s, fo, basis, rank_tol),
        (Method::Higher, Structured::Higher(s)) => higher_order_reduce(s, fo, basis, rank_tol),
        (Method::Sprim, _) => Err(Error::InvalidArgument(
            "sprim needs a netlist or a second-order model".into(),
        )),
        (Method::Higher, _) => Err(Error::InvalidArgument(
            "higher needs a higher-order model".into(),
        )),
    }
}

fn check_tolerances(tol: &Tolerances) -> Result<()> {
    for (name, v) in [("deflation-tol", tol.deflation_tol), ("rank-tol", tol.rank_tol)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive")));
        }
    }
    Ok(())
}

fn artifact(command: &str, config: &impl Serialize, body: Value) -> Result<Value> {
    let mut out = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": serde_json::to_value(config)?,
    });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    Ok(out)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, value: &Value) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(value)?)
}

fn basis_json(basis: &KrylovBasis) -> Value {
    json!({
        "requested_n": basis.requested_n,
        "n": basis.n(),
        "j": basis.j(),
        "boundaries": basis.boundaries,
        "block_widths": basis.block_widths,
        "snapped": basis.snapped(),
        "exhausted": basis.exhausted,
        "deflation_tol": basis.tol,
        "deflations": basis.deflation_log_json(),
    })
}

fn unreachable_payload(err: &Error) -> Option<Value> {
    match err {
        Error::TargetUnreachable {
            requested,
            achieved,
            basis,
        } => Some(json!({
            "error": "target_unreachable",
            "requested_n": requested,
            "achieved_n": achieved,
            "boundaries": basis.boundaries,
            "block_widths": basis.block_widths,
        })),
        _ => None,
    }
}

fn cmd_parse(args: &ParseArgs) -> Result<i32> {
    let netlist = parse_netlist(&std::fs::read_to_string(&args.netlist)?)?;
    let mna = assemble_mna(&netlist)?;
    let system = mna_to_second_order(&mna)?;
    let count = |k| netlist.elements_of(k).count();
    let body = json!({
        "nodes": netlist.nodes().len(),
        "elements": {
            "R": count(ElementKind::R),
            "C": count(ElementKind::C),
            "L": count(ElementKind::L),
            "K": count(ElementKind::K),
            "I": count(ElementKind::I),
        },
        "N": system.state_dim(),
        "N0": system.inner_dim(),
        "m": netlist.num_ports(),
        "hermitian": system.is_hermitian(),
    });
    emit_json(args.out.as_deref(), &artifact("parse", args, body)?)?;
    Ok(0)
}

fn cmd_reduce(args: &ReduceArgs) -> Result<i32> {
    check_tolerances(&args.tol)?;
    let source = load(&args.input)?;
    let fo = source.first_order()?;
    let op = make_operator(&fo, args.s0)?;
    let basis = match build_basis(&op, args.n, args.tol.deflation_tol) {
        Ok(b) => b,
        Err(e) => {
            if let Some(p) = unreachable_payload(&e) {
                println!("{}", serde_json::to_string_pretty(&p)?);
            }
            return Err(e);
        }
    };
    let red = reduce_on_basis(&source, &fo, &basis, args.method, args.tol.rank_tol)?;
    let structure = structure_check(&red);
    let report = artifact(
        "reduce",
        args,
        json!({
            "method": args.method.name(),
            "s0": [args.s0.re, args.s0.im],
            "basis": basis_json(&basis),
            "reduced_dim": red.state_dim(),
            "block_columns": red.provenance.block_columns,
            "hermitian_source": red.provenance.hermitian_source,
            "structure": structure,
            // Merged higher-order basis width beyond n; zero for exact arithmetic.
            "excess_columns": matches!(args.method, Method::Higher)
                .then(|| red.provenance.block_columns[0].saturating_sub(red.provenance.n)),
        }),
    )?;
    let config = serde_json::to_value(args)?;
    ModelFile::new(Model::Reduced(red), config).write(&args.out.join("model.json"))?;
    write_json_atomic(&args.out.join("report.json"), &report)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if structure.all_exact { 0 } else { 3 })
}

fn cmd_moments(args: &MomentsArgs) -> Result<i32> {
    let source = load(&args.input)?;
    let table = compute_moments(&source.first_order()?, args.s0, args.k)?;
    let body = json!({ "moments": serde_json::to_value(&table)? });
    emit_json(args.out.as_deref(), &artifact("moments", args, body)?)?;
    Ok(0)
}

fn resolve_grid(grid: &GridArgs, s0: Option<C64>) -> Result<Vec<f64>> {
    let centre = s0.map(|s| s.norm() / (2.0 * PI)).filter(|&f| f > 0.0);
    let (f_min, f_max) = match (grid.f_min, grid.f_max, centre) {
        (Some(a), Some(b), _) => (a, b),
        (a, b, Some(f0)) => (a.unwrap_or(f0 / 10.0), b.unwrap_or(f0 * 10.0)),
        _ => {
            return Err(Error::InvalidArgument(
                "give --f-min and --f-max".into(),
            ))
        }
    };
    frequency_grid(f_min, f_max, grid.points, grid.scale.into())
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let source = load(&args.input)?;
    let model = source.transfer();
    let (p, m) = (model.num_outputs(), model.num_inputs());
    if let Some(&(i, j)) = args.entries.iter().find(|&&(i, j)| i > p || j > m) {
        return Err(Error::InvalidArgument(format!(
            "entry ({i},{j}) outside the {p}x{m} transfer function"
        )));
    }
    let grid = resolve_grid(&args.grid, None)?;
    let label = args.input.display().to_string();
    let response = sweep(model, &grid, &label);
    let zero_based: Vec<(usize, usize)> = args.entries.iter().map(|&(i, j)| (i - 1, j - 1)).collect();
    let entries = (!zero_based.is_empty()).then_some(zero_based.as_slice());
    emit(args.out.as_deref(), &response.to_csv(entries))?;
    if response.failed_points() > 0 {
        eprintln!("warning: {} sample(s) failed to evaluate", response.failed_points());
    }
    Ok(0)
}

fn cmd_compare(args: &CompareArgs) -> Result<i32> {
    check_tolerances(&args.tol)?;
    if args.methods.is_empty() {
        return Err(Error::InvalidArgument("no methods given".into()));
    }
    if let Some(t) = args.match_tol.filter(|t| !(*t > 0.0)) {
        return Err(Error::InvalidArgument(format!("match-tol must be positive, got {t}")));
    }
    let source = load(&args.input)?;
    let grid = resolve_grid(&args.grid, Some(args.s0))?;
    let fo = source.first_order()?;
    let op = make_operator(&fo, args.s0)?;
    let basis = match build_basis(&op, args.n, args.tol.deflation_tol) {
        Ok(b) => b,
        Err(e) => {
            if let Some(p) = unreachable_payload(&e) {
                println!("{}", serde_json::to_string_pretty(&p)?);
            }
            return Err(e);
        }
    };
    let exact = sweep(source.transfer(), &grid, "exact");
    let config = serde_json::to_value(args)?;
    let mut results = serde_json::Map::new();
    let mut columns = Vec::new();
    for &method in &args.methods {
        let red = reduce_on_basis(&source, &fo, &basis, method, args.tol.rank_tol)?;
        let tol = args
            .match_tol
            .unwrap_or(if red.doubling_expected() { THEOREM2_TOL } else { THEOREM1_TOL });
        let k = 2 * basis.j() + 2;
        let report = match_report(&fo, &red, k, tol)?;
        let response = sweep(&red, &grid, method.name());
        let err = sweep_error(&exact, &response)?;
        results.insert(
            method.name().to_string(),
            json!({
                "reduced_dim": red.state_dim(),
                "block_columns": red.provenance.block_columns,
                "match": report,
                "structure": structure_check(&red),
                "sweep_error": { "max_rel": err.max_rel, "mean_rel": err.mean_rel, "max_abs": err.max_abs, "compared": err.compared },
            }),
        );
        columns.push((method.name(), err.rel_errors));
        ModelFile::new(Model::Reduced(red), config.clone())
            .write(&args.out.join(format!("{}.json", method.name())))?;
    }
    let mut csv = String::from("f_hz");
    for (name, _) in &columns {
        csv.push_str(&format!(",rel_err_{name}"));
    }
    csv.push('\n');
    for (k, f) in grid.iter().enumerate() {
        csv.push_str(&format!("{f:e}"));
        for (_, errs) in &columns {
            match errs[k] {
                Some(e) => csv.push_str(&format!(",{e:e}")),
                None => csv.push_str(",NaN"),
            }
        }
        csv.push('\n');
    }
    write_atomic(&args.out.join("sweep_error.csv"), csv.as_bytes())?;
    let report = artifact(
        "compare",
        args,
        json!({
            "s0": [args.s0.re, args.s0.im],
            "basis": basis_json(&basis),
            "exact_failed_points": exact.failed_points(),
            "methods": results,
        }),
    )?;
    write_json_atomic(&args.out.join("compare.json"), &report)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(0)
}

fn cmd_check(args: &CheckArgs) -> Result<i32> {
    if args.s0.im != 0.0 {
        return Err(Error::InvalidArgument("check needs a real s0".into()));
    }
    let s0 = args.s0.re;
    let source = load(&args.input)?;
    let mut ok = true;

    let hermitian = match source.structured() {
        Structured::Second(s) => Some(s.hermitian_report()),
        Structured::Higher(s) => Some(s.hermitian_report()),
        Structured::First(_) => None,
    };
    let j_relations = match (source.structured(), source.hermitian()) {
        (Structured::Second(s), Some(true)) => {
            let fo = linearize_second_order(s)?.0;
            let j = HermitianStructure::second_order(s.state_dim(), s.inner_dim());
            Some(j_relation_report(&fo, &j, s0)?)
        }
        (Structured::Higher(s), Some(true)) => {
            let fo = linearize_higher_order(s)?.0;
            let j = HermitianStructure::higher_order(s, s0);
            Some(j_relation_report(&fo, &j, s0)?)
        }
        _ => None,
    };
    if let Some(r) = &j_relations {
        ok &= r.all_hold;
    }
    let is_netlist = matches!(source, Source::Netlist(_));
    let passivity = if is_netlist || args.passivity {
        let scale = if s0 != 0.0 { s0.abs() } else { 1.0 };
        let points = sample_right_half_plane(args.samples, scale, args.seed);
        let r = passivity_sample(source.transfer(), &points)?;
        ok &= r.all_psd;
        Some(r)
    } else {
        None
    };
    // A netlist that is not Hermitian is a bug in assembly, not a property.
    if is_netlist {
        ok &= source.hermitian() == Some(true);
    }
    let body = json!({
        "hermitian": hermitian,
        "j_relations": j_relations,
        "passivity": passivity,
        "all_pass": ok,
    });
    emit_json(args.out.as_deref(), &artifact("check", args, body)?)?;
    Ok(if ok { 0 } else { 3 })
}

fn cmd_gen(args: &GenArgs) -> Result<i32> {
    if args.sections == 0 {
        return Err(Error::InvalidArgument("sections must be at least 1".into()));
    }
    let text = match args.kind {
        LadderKind::RcLadder => {
            if args.coupling {
                return Err(Error::InvalidArgument("an RC ladder has no inductors to couple".into()));
            }
            rc_ladder(args.sections, args.seed)
        }
        LadderKind::RlcLadder => rlc_ladder(args.sections, args.seed, args.coupling),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Moments(a) => cmd_moments(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Check(a) => cmd_check(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s0_forms() {
        assert_eq!(parse_s0("1e9").unwrap(), c64(1e9, 0.0));
        assert_eq!(parse_s0("0.5-2i").unwrap(), c64(0.5, -2.0));
        assert_eq!(parse_s0("1e-3+1e+2i").unwrap(), c64(1e-3, 100.0));
        assert_eq!(parse_s0("-3i").unwrap(), c64(0.0, -3.0));
        assert_eq!(parse_s0("i").unwrap(), c64(0.0, 1.0));
        assert_eq!(parse_s0("1 + 2j").unwrap(), c64(1.0, 2.0));
        assert_eq!(parse_s0("PEEC").unwrap(), c64(2.0 * PI * 1e9, 0.0));
        assert_eq!(parse_s0("shaft").unwrap(), c64(PI * 1e3, 0.0));
        assert!(parse_s0("nan").is_err());
        assert!(parse_s0("1+xi").is_err());
        assert!(parse_s0("").is_err());
    }

    #[test]
    fn entries() {
        assert_eq!(parse_entry("2,1").unwrap(), (2, 1));
        assert!(parse_entry("0,1").is_err());
        assert!(parse_entry("2").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["structmor", "reduce"]), 2);
        assert_eq!(run(["structmor", "--version"]), 0);
    }
}
