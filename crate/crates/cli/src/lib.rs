//! Command-line front end for the tortkara experiments.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use tortkara::expansion::{expand, SignVector};
use tortkara::lattice::parse_delta;
use tortkara::linalg::validate_prime;
use tortkara::pipeline::{self, NamedMatrix, RepRow};
use tortkara::skew::TernaryMonomial;
use tortkara::symrep::Partition;
use tortkara::zinbiel::{BinaryMonomial, ZinbielElement};
use tortkara::{Error, DEFAULT_PRIME};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "tortkara", version, about = "Relations of the tortkara triple product in the free Zinbiel algebra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Prime for modular elimination.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME, value_parser = parse_prime)]
    pub prime: u32,
    /// LLL parameter as a rational in (1/4, 1].
    #[arg(long, global = true, default_value = "999/1000", value_parser = parse_delta_arg)]
    pub delta: BigRational,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write an intermediate matrix to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub dump_matrix: Option<PathBuf>,
    /// Which matrix to dump: e3, e5, e7, hnf5, lll5, con7 or nullspace7.
    #[arg(long, global = true, value_name = "NAME")]
    pub matrix: Option<String>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the basic identities in arities 3, 4 and 5.
    Sanity,
    /// Right-normed normal form of a binary monomial such as "(ab)(cd)".
    Znf { monomial: String },
    /// Expansion sign vector of a skew-ternary monomial such as "[[a,b,c],d,e]".
    Expand { monomial: String },
    /// Find the arity-5 relations.
    Arity5,
    /// Find the arity-7 relations and their isotypic decomposition.
    Arity7,
    /// Per-partition multiplicities.
    Rep {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        partition: String,
    },
    /// Check the bundled 60-term arity-7 relation.
    #[command(name = "verify-figure2")]
    VerifyRelation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    validate_prime(p).map_err(|e| e.to_string())?;
    Ok(p)
}

fn parse_delta_arg(s: &str) -> Result<BigRational, String> {
    parse_delta(s).map_err(|e| e.to_string())
}

/// A command's output: the text rendering and the JSON body.
struct Output {
    text: String,
    json: Value,
    matrix: Option<NamedMatrix>,
}

#[derive(Debug)]
pub enum Failure {
    Compute(Error),
    Check(String),
    Io(std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Compute(e) => write!(f, "{e}"),
            Failure::Check(name) => write!(f, "check failed: {name}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn default_matrix(command: &Command) -> Option<&'static str> {
    match command {
        Command::Sanity => Some("e3"),
        Command::Arity5 => Some("lll5"),
        Command::Arity7 | Command::VerifyRelation => Some("nullspace7"),
        _ => None,
    }
}

/// Runs a parsed command, writing the report to `out`.
pub fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let o = &cli.options;
    let wanted = match (&o.dump_matrix, &o.matrix) {
        (None, _) => None,
        (Some(_), Some(name)) => Some(name.clone()),
        (Some(_), None) => Some(
            default_matrix(&cli.command)
                .ok_or_else(|| Error::Unsupported("this command needs --matrix NAME with --dump-matrix".into()))?
                .to_string(),
        ),
    };
    let result = run_command(&cli.command, o, wanted.as_deref())?;
    match o.format {
        Format::Text => out.write_all(result.text.as_bytes())?,
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "command": command_name(&cli.command), "report": result.json });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
        }
    }
    if let (Some(path), Some(name)) = (&o.dump_matrix, wanted) {
        let m = match result.matrix {
            Some(m) => m,
            None => pipeline::named_matrix(&name, &o.delta, o.prime)?,
        };
        let mut f = BufWriter::new(File::create(path)?);
        m.write(&mut f)?;
        f.flush()?;
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Sanity => "sanity",
        Command::Znf { .. } => "znf",
        Command::Expand { .. } => "expand",
        Command::Arity5 => "arity5",
        Command::Arity7 => "arity7",
        Command::Rep { .. } => "rep",
        Command::VerifyRelation => "verify-figure2",
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn run_command(command: &Command, o: &Options, wanted: Option<&str>) -> Result<Output, Failure> {
    let mut text = String::new();
    match command {
        Command::Sanity => {
            let r = pipeline::sanity_checks()?;
            writeln!(text, "arity-3 expansion nullity: {}", r.e3_nullity).unwrap();
            writeln!(text, "tortkara identity residual: zero ({} words)", r.tortkara_residual.len()).unwrap();
            writeln!(text, "anticommutator associativity residual: zero ({} words)", r.anticommutator_residual.len())
                .unwrap();
            writeln!(text, "arity-5 relation residual: zero ({} words)", r.tt_residual.len()).unwrap();
            Ok(Output { text, json: to_json(&r), matrix: None })
        }
        Command::Znf { monomial } => {
            let m = BinaryMonomial::parse(monomial)?;
            let e = ZinbielElement::from_monomial(&m)?;
            writeln!(text, "{e}").unwrap();
            let terms: Vec<Value> =
                e.terms().iter().map(|(c, w)| json!({ "coefficient": c, "word": w.to_string() })).collect();
            Ok(Output { text, json: json!({ "monomial": m.to_string(), "terms": terms }), matrix: None })
        }
        Command::Expand { monomial } => {
            let m = TernaryMonomial::parse(monomial)?;
            let (sign, canonical) = m.straighten()?;
            let mut e = expand(&canonical)?;
            if sign < 0 {
                let mut neg = ZinbielElement::zero(e.arity());
                neg.add_scaled(&e, -1)?;
                e = neg;
            }
            let v = SignVector::from_element(&e)?;
            writeln!(text, "{v}").unwrap();
            let json = json!({
                "monomial": m.to_string(),
                "canonical": canonical.to_string(),
                "sign": sign,
                "signs": v.to_string(),
            });
            Ok(Output { text, json, matrix: None })
        }
        Command::Arity5 => {
            let run = pipeline::run_arity5(&o.delta, o.prime)?;
            let matrix = wanted.and_then(|n| run.matrix(n));
            Ok(Output { text: render_arity5(&run.report), json: to_json(&run.report), matrix })
        }
        Command::Arity7 => {
            let run = pipeline::run_arity7(o.prime)?;
            let matrix = wanted.and_then(|n| run.matrix(n));
            Ok(Output { text: render_arity7(&run.report), json: to_json(&run.report), matrix })
        }
        Command::Rep { arity, partition } => {
            let lambda = Partition::parse(partition)?;
            if lambda.n() != *arity {
                return Err(Error::ArityMismatch { expected: *arity, found: lambda.n() }.into());
            }
            let row = pipeline::rep_row(&lambda)?;
            let printed = pipeline::reference_row(&lambda).filter(|_| *arity == 7);
            render_rep_header(&mut text, *arity);
            render_rep_row(&mut text, &row);
            if let Some(p) = printed {
                writeln!(text, "{:<8} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6}", "printed", row.dim, p[0], p[1], p[2], p[3], p[4])
                    .unwrap();
            }
            let json = json!({ "arity": arity, "row": to_json(&row), "printed": printed });
            Ok(Output { text, json, matrix: None })
        }
        Command::VerifyRelation => {
            let r = pipeline::verify_relation7(o.prime)?;
            writeln!(text, "terms: {}", r.terms).unwrap();
            writeln!(text, "coefficients: {}", join(&r.coefficients)).unwrap();
            writeln!(text, "integer expansion zero: {}", r.expansion_zero).unwrap();
            writeln!(text, "rank with consequences: {} -> {}", r.con_rank, r.rank_with_relation).unwrap();
            if !r.expansion_zero {
                return Err(Failure::Check("bundled relation expands to zero".into()));
            }
            if r.terms != 60 || r.coefficients != [-2, -1, 1, 2] {
                return Err(Failure::Check("bundled relation has 60 terms with coefficients ±1, ±2".into()));
            }
            if r.rank_with_relation != 4900 {
                return Err(Failure::Check("bundled relation raises the rank to 4900".into()));
            }
            Ok(Output { text, json: to_json(&r), matrix: None })
        }
    }
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn render_lengths(ls: &[pipeline::LengthCount]) -> String {
    ls.iter().map(|l| format!("{}^{}", l.squared_length, l.count)).collect::<Vec<_>>().join(" ")
}

fn render_decomposition(d: &pipeline::Decomposition) -> String {
    let parts: Vec<String> = d
        .parts
        .iter()
        .map(|m| if m.multiplicity == 1 { format!("[{}]", m.partition) } else { format!("[{}]^{}", m.partition, m.multiplicity) })
        .collect();
    format!("{} (dim {})", parts.join(" + "), d.dim)
}

fn render_rep_header(text: &mut String, arity: usize) {
    let (con, new) = if arity == 7 { ("symcon", "+new") } else { ("+rel", "") };
    writeln!(text, "{:<8} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6}", "lambda", "dim", "sym", con, new, "exp", "nul").unwrap();
}

fn render_rep_row(text: &mut String, r: &RepRow) {
    let new = r.sym_con_new.map_or(String::new(), |x| x.to_string());
    writeln!(text, "{:<8} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6}", r.partition, r.dim, r.sym, r.sym_con, new, r.exp, r.nul).unwrap();
}

fn render_arity5(r: &pipeline::Arity5Report) -> String {
    let mut t = String::new();
    writeln!(t, "expansion matrix: {} x {}", r.rows, r.cols).unwrap();
    writeln!(t, "rank: {} over Q, {} mod {}", r.rank_rational, r.rank_mod_p, r.prime).unwrap();
    writeln!(t, "nullity: {}", r.nullity).unwrap();
    writeln!(t, "hnf rank: {}, transform rows span nullspace: {}", r.hnf_rank, r.hnf_spans_nullspace).unwrap();
    writeln!(t, "measure hnf: {:.3}  [{}]", r.measure_hnf, render_lengths(&r.lengths_hnf)).unwrap();
    writeln!(t, "measure lll 3/4: {:.3}  [{}]", r.measure_standard, render_lengths(&r.lengths_standard)).unwrap();
    writeln!(t, "measure lll {}: {:.3}  [{}]", r.delta, r.measure_reduced, render_lengths(&r.lengths_reduced)).unwrap();
    writeln!(t, "shortest relation ({} terms, squared length {}):", r.tt_terms, r.tt_squared_length).unwrap();
    writeln!(t, "  {}", r.tt).unwrap();
    writeln!(t, "matches bundled relation up to sign and permutation: {}", r.tt_matches_bundled).unwrap();
    writeln!(t, "module closure equals nullspace: {}", r.closure_equals_nullspace).unwrap();
    writeln!(t, "classes: {}", r.classes.join(" ")).unwrap();
    writeln!(t, "character: {}", join(&r.character)).unwrap();
    writeln!(t, "decomposition: {}", render_decomposition(&r.decomposition)).unwrap();
    render_rep_header(&mut t, 5);
    for row in &r.representations {
        render_rep_row(&mut t, row);
    }
    t
}

fn render_arity7(r: &pipeline::Arity7Report) -> String {
    let mut t = String::new();
    writeln!(t, "prime: {}", r.prime).unwrap();
    writeln!(t, "skew basis: {}", r.basis_size).unwrap();
    writeln!(t, "consequence terms: {}", join(&r.consequence_terms)).unwrap();
    writeln!(t, "consequence ranks: {}", join(&r.con_ranks)).unwrap();
    writeln!(t, "dim con: {}", r.dim_con).unwrap();
    writeln!(t, "expansion rank: {}, nullity: {}, dim new: {}", r.expansion_rank, r.nullity, r.dim_new).unwrap();
    writeln!(t, "nullspace row weights: min {}, max {}", r.row_weight_min, r.row_weight_max).unwrap();
    for s in &r.filtration {
        writeln!(t, "generator: row {} with {} terms, rank {}", s.row, s.terms, s.rank).unwrap();
    }
    writeln!(t, "closure equals nullspace: {}", r.closure_equals_nullspace).unwrap();
    let g = &r.generator;
    writeln!(t, "first generator: {} terms, scaled by {}, coefficients {}", g.terms, g.scale, join(&g.coefficients))
        .unwrap();
    writeln!(t, "  {}", g.relation).unwrap();
    writeln!(t, "integer expansion zero: {}", g.expansion_zero).unwrap();
    writeln!(t, "matches bundled relation up to sign and permutation: {}", g.matches_bundled).unwrap();
    let b = &r.bundled;
    writeln!(
        t,
        "bundled relation: {} terms, expansion zero {}, rank {} -> {}",
        b.terms, b.expansion_zero, b.con_rank, b.rank_with_relation
    )
    .unwrap();
    render_rep_header(&mut t, 7);
    for row in &r.representations {
        render_rep_row(&mut t, row);
    }
    for a in &r.audits {
        writeln!(t, "audit {}: {} = {}", a.name, a.computed, a.expected).unwrap();
    }
    writeln!(t, "connew/con: {}", render_decomposition(&r.con_new_over_con)).unwrap();
    writeln!(t, "all/con: {}", render_decomposition(&r.all_over_con)).unwrap();
    for d in &r.discrepancies {
        writeln!(t, "discrepancy: {} at [{}] printed {}, computed {}", d.row, d.partition, d.printed, d.computed).unwrap();
    }
    t
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    if let Some(n) = cli.options.threads {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
