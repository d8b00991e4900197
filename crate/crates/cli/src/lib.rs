//! Command-line surface for `permrep`: argument parsing, output formatting and
//! exit codes. `main` only wires process streams into [`run`].

pub mod verify;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::num::{NonZeroU64, NonZeroUsize};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use permrep::alpha::{verify_2chars, InvariantMatrixSet, SetKind, DEFAULT_SET_LIMIT};
use permrep::characters::{action_set_size, rep_char, subset_gen_fn, RepresentationSpec};
use permrep::field::{parse_matrix, render_matrix};
use permrep::recovery::{recover_cycle_type, CycleCountOracle};
use permrep::uniting::{find_united_pairs, induced_permutation, ScanMode, DEFAULT_ACTION_LIMIT};
use permrep::{CycleType, Error, FieldMatrix, FieldSpec, Permutation};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;

/// Invariant factors over ℚ get slow past this size.
const RATIONAL_WARN_SIZE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    AlmostSimilar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixSet {
    FullGl,
    Perm,
}

#[derive(Debug, Parser)]
#[command(name = "permrep", version, about = "Permutation representations of S_n and uniting conjugacy classes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format [default: json; csv for `char --table`]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for scans [default: available parallelism]
    #[arg(long, global = true)]
    pub workers: Option<NonZeroUsize>,

    /// Maximum size of any enumerated set (action sets, matrix sets)
    #[arg(long, global = true)]
    pub limit: Option<NonZeroU64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a permutation (one-line or cycle notation; stdin if omitted)
    Parse {
        perm: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Also emit the permutation matrix over this field (Q, GF(p) or p)
        #[arg(long)]
        field: Option<FieldSpec>,
    },
    /// Cycle type and derived counts of a permutation
    CycleType {
        perm: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// k-th power of a permutation or of a cycle type
    Power {
        perm: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "type", value_name = "TYPE", conflicts_with = "perm")]
        cycle_type: Option<CycleType>,
        #[arg(long)]
        k: u64,
    },
    /// Character value of a permutation representation at a class
    Char {
        #[arg(long)]
        rep: String,
        #[arg(long = "type", value_name = "TYPE", required_unless_present = "table")]
        cycle_type: Option<CycleType>,
        #[arg(long)]
        n: Option<usize>,
        /// Emit the whole character column (class, order, value)
        #[arg(long)]
        table: bool,
    },
    /// Subset-counting generating function Π (1 + t^i)^{c_i}
    GenFn {
        #[arg(long = "type", value_name = "TYPE")]
        cycle_type: CycleType,
    },
    /// Scan all class pairs for ones the representation unites
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rep: String,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
    },
    /// Recover a cycle type from a permutation matrix via fixed-space counts
    Recover {
        /// Matrix file ("-" for stdin)
        #[arg(default_value = "-")]
        file: String,
    },
    /// Decide similarity of two matrices by invariant factors
    Similar { left: String, right: String },
    /// Permutation induced on the action set of a representation
    Induced {
        perm: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        rep: String,
    },
    /// Check the two-sided character on an invariant matrix set
    AlphaVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_enum, default_value = "full-gl")]
        set: MatrixSet,
        /// Random conjugates tried per conjugate class pair
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-check every structural result on all small cases
    VerifyPaper {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

/// Rendered result of one command.
struct Output {
    json: Value,
    text: String,
    table: Option<Table>,
    /// Set when a verification ran to completion but found a failure.
    failed: Option<String>,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            table: None,
            failed: None,
        }
    }

    fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| Failure::Domain(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                Ok(s)
            }
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| Failure::Domain("csv output is not available for this command".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Failure::Domain(e.to_string());
                w.write_record(&table.header).map_err(io)?;
                for row in &table.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Failure::Domain(e.to_string()))
            }
        }
    }
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_limit() {
            Failure::Limit(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Parses `args` (including the program name) and executes the command.
/// Results go to `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => execute(&config, input, out, err),
        Err(e) => {
            let rendered = e.render().to_string();
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = out.write_all(rendered.as_bytes());
                if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand {
                    return EXIT_DOMAIN;
                }
                EXIT_OK
            } else {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_DOMAIN
            }
        }
    }
}

/// Executes an already parsed configuration.
pub fn execute(config: &RunConfig, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        pool = pool.num_threads(w.get());
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_LIMIT;
        }
    };
    let result = dispatch(config, &pool, input, err).and_then(|(output, default_format)| {
        let text = output.render(config.format.unwrap_or(default_format))?;
        Ok((output, text))
    });
    match result {
        Ok((output, text)) => {
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_DOMAIN;
            }
            match output.failed {
                Some(msg) => {
                    let _ = writeln!(err, "verification failed: {msg}");
                    EXIT_DOMAIN
                }
                None => EXIT_OK,
            }
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Limit(msg)) => {
            let _ = writeln!(err, "resource limit: {msg}");
            EXIT_LIMIT
        }
    }
}

fn read_source(path: &str, input: &mut dyn Read) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        input.read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{path}: {e}")))
    }
}

fn read_perm(perm: &Option<String>, n: Option<usize>, input: &mut dyn Read) -> Result<Permutation, Failure> {
    let text = match perm {
        Some(t) => t.clone(),
        None => read_source("-", input)?,
    };
    let text = text.trim();
    let n = match n {
        Some(n) => n,
        None => Permutation::infer_degree(text)?,
    };
    Ok(Permutation::parse(text, n)?)
}

fn big(v: &BigUint) -> Value {
    Value::Number(serde_json::Number::from_str(&v.to_string()).expect("digits form a JSON number"))
}

fn big_signed(v: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_str(&v.to_string()).expect("digits form a JSON number"))
}

fn one_based(p: &Permutation) -> Vec<usize> {
    p.images().iter().map(|&x| x + 1).collect()
}

fn dispatch(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    input: &mut dyn Read,
    err: &mut dyn Write,
) -> Result<(Output, Format), Failure> {
    let json = Format::Json;
    match &config.command {
        Command::Parse { perm, n, field } => {
            let p = read_perm(perm, *n, input)?;
            let ct = p.cycle_type();
            let mut value = json!({
                "degree": p.degree(),
                "one_line": one_based(&p),
                "cycles": p.to_string(),
                "cycle_type": ct.to_string(),
            });
            let one_line: Vec<String> = one_based(&p).iter().map(|x| x.to_string()).collect();
            let mut text = format!(
                "# degree: {}\n# one-line: {}\n# cycles: {}\n# type: {}\n",
                p.degree(),
                one_line.join(" "),
                p,
                ct
            );
            if let Some(field) = field {
                let m = render_matrix(&FieldMatrix::permutation(&p, *field));
                value["matrix"] = Value::String(m.clone());
                text.push_str(&m);
            }
            Ok((Output::new(value, text), json))
        }
        Command::CycleType { perm, n } => {
            let ct = read_perm(perm, *n, input)?.cycle_type();
            let value = json!({
                "cycle_type": ct.to_string(),
                "degree": ct.degree(),
                "order": ct.order().to_string(),
                "fixed_points": ct.fix(),
                "cycles": ct.num_cycles(),
            });
            Ok((Output::new(value, ct.to_string()), json))
        }
        Command::Power { perm, n, cycle_type, k } => match cycle_type {
            Some(ct) => {
                if let Some(n) = n {
                    if *n != ct.degree() {
                        return Err(Error::DegreeMismatch { left: *n, right: ct.degree() }.into());
                    }
                }
                let power = ct.power(*k as u128);
                let value = json!({"cycle_type": ct.to_string(), "k": k, "power": power.to_string()});
                Ok((Output::new(value, power.to_string()), json))
            }
            None => {
                let p = read_perm(perm, *n, input)?;
                let power = p.power(*k);
                let value = json!({
                    "permutation": p.to_string(),
                    "k": k,
                    "power": power.to_string(),
                    "one_line": one_based(&power),
                    "cycle_type": power.cycle_type().to_string(),
                });
                Ok((Output::new(value, power.to_string()), json))
            }
        },
        Command::Char { rep, cycle_type, n, table } => {
            let degree = match (n, cycle_type) {
                (Some(n), Some(ct)) if *n != ct.degree() => {
                    return Err(Error::DegreeMismatch { left: *n, right: ct.degree() }.into())
                }
                (Some(n), _) => *n,
                (None, Some(ct)) => ct.degree(),
                (None, None) => return Err(Failure::Domain("--table needs --n or --type".into())),
            };
            let spec = RepresentationSpec::parse(rep, degree)?;
            if *table {
                let mut values = Vec::new();
                let mut rows = Vec::new();
                for ct in CycleType::enumerate(degree) {
                    let v = rep_char(&spec, &ct)?;
                    rows.push(vec![ct.to_string(), ct.order().to_string(), v.to_string()]);
                    values.push(json!({"class": ct.to_string(), "order": ct.order().to_string(), "value": big(&v)}));
                }
                let text = rows.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("\n");
                let output = Output::new(json!({"rep": spec.to_string(), "n": degree, "column": values}), text)
                    .with_table(vec!["class", "order", "value"], rows);
                Ok((output, Format::Csv))
            } else {
                let ct = cycle_type.as_ref().expect("required unless --table");
                let v = rep_char(&spec, ct)?;
                let output = Output::new(big(&v), v.to_string())
                    .with_table(vec!["class", "value"], vec![vec![ct.to_string(), v.to_string()]]);
                Ok((output, json))
            }
        }
        Command::GenFn { cycle_type } => {
            let f = subset_gen_fn(cycle_type);
            let terms: Vec<String> = f
                .coefficients()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != BigUint::from(0u8))
                .map(|(k, c)| {
                    let coeff = if *c == BigUint::from(1u8) && k > 0 { String::new() } else { c.to_string() };
                    match k {
                        0 => coeff,
                        1 => format!("{coeff}t"),
                        _ => format!("{coeff}t^{k}"),
                    }
                })
                .collect();
            let value = json!({
                "cycle_type": cycle_type.to_string(),
                "coefficients": f.coefficients().iter().map(big).collect::<Vec<_>>(),
                "at_one": big(&f.eval_at_one()),
                "at_minus_one": big_signed(&f.eval_at_minus_one()),
            });
            let rows = f
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), c.to_string()])
                .collect();
            let output = Output::new(value, terms.join(" + ")).with_table(vec!["k", "coefficient"], rows);
            Ok((output, json))
        }
        Command::Scan { n, rep, mode } => {
            let spec = RepresentationSpec::parse(rep, *n)?;
            let mode = match mode {
                Mode::Full => ScanMode::Full,
                Mode::AlmostSimilar => ScanMode::AlmostSimilar,
            };
            let report = pool.install(|| find_united_pairs(&spec, mode))?;
            let mut text = format!("{} on n={}: {} united pair(s)\n", spec, n, report.united_pairs.len());
            for (a, b) in &report.united_pairs {
                text.push_str(&format!("{a} ~ {b}\n"));
            }
            let rows = report
                .united_pairs
                .iter()
                .map(|(a, b)| vec![a.to_string(), b.to_string()])
                .collect();
            let value = serde_json::to_value(&report).map_err(|e| Failure::Domain(e.to_string()))?;
            Ok((Output::new(value, text).with_table(vec!["type1", "type2"], rows), json))
        }
        Command::Recover { file } => {
            let m = parse_matrix(&read_source(file, input)?)?;
            let oracle = CycleCountOracle::from_matrix(&m).map_err(|e| match e {
                Error::NotPermutationMatrix(_) => Failure::Domain(format!("consistency failure: {e}")),
                other => other.into(),
            })?;
            let ct = recover_cycle_type(&oracle).map_err(|e| match e {
                Error::InconsistentOracle(_) => Failure::Domain(format!("consistency failure: {e}")),
                other => other.into(),
            })?;
            let trace = oracle.trace();
            let value = json!({
                "cycle_type": ct.to_string(),
                "queries": trace.iter().map(|(k, m)| json!({"k": k, "m": m})).collect::<Vec<_>>(),
            });
            let mut text = format!("{ct}\n");
            for (k, m) in &trace {
                text.push_str(&format!("m(pi^{k}) = {m}\n"));
            }
            let rows = trace.iter().map(|(k, m)| vec![k.to_string(), m.to_string()]).collect();
            Ok((Output::new(value, text).with_table(vec!["k", "m"], rows), json))
        }
        Command::Similar { left, right } => {
            let a = parse_matrix(&read_source(left, input)?)?;
            let b = parse_matrix(&read_source(right, input)?)?;
            if a.field().is_rational() && a.rows().max(b.rows()) > RATIONAL_WARN_SIZE {
                let _ = writeln!(
                    err,
                    "warning: invariant factors over Q above n = {RATIONAL_WARN_SIZE} may be slow (coefficient growth)"
                );
            }
            let similar = a.similar(&b)?;
            let (fa, fb) = (a.invariant_factors()?, b.invariant_factors()?);
            let value = json!({"similar": similar, "left": fa, "right": fb});
            let text = format!(
                "{}\nleft:  {fa}\nright: {fb}",
                if similar { "similar" } else { "not similar" }
            );
            Ok((Output::new(value, text), json))
        }
        Command::Induced { perm, n, rep } => {
            let p = read_perm(perm, *n, input)?;
            let spec = RepresentationSpec::parse(rep, p.degree())?;
            let limit = config.limit.map_or(DEFAULT_ACTION_LIMIT, NonZeroU64::get);
            let induced = pool.install(|| induced_permutation(&p, &spec, limit))?;
            let ct = induced.cycle_type();
            let value = json!({
                "rep": spec.to_string(),
                "permutation": p.to_string(),
                "action_set_size": big(&action_set_size(&spec)),
                "cycle_type": ct.to_string(),
                "fixed_points": ct.fix(),
                "character": big(&rep_char(&spec, &p.cycle_type())?),
            });
            Ok((Output::new(value, ct.to_string()), json))
        }
        Command::AlphaVerify { n, p, set, samples, seed } => {
            let kind = match set {
                MatrixSet::FullGl => SetKind::FullGl,
                MatrixSet::Perm => SetKind::PermMatrices,
            };
            let limit = config.limit.map_or(DEFAULT_SET_LIMIT, NonZeroU64::get);
            let report = pool.install(|| {
                let set = InvariantMatrixSet::build(kind, *n, *p, limit)?;
                verify_2chars(&set, *samples, *seed)
            })?;
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.type1.to_string(),
                        r.type2.to_string(),
                        r.conjugate.to_string(),
                        r.alpha_char.to_string(),
                        r.commutant_count.to_string(),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            let mut text = format!(
                "{} members, {} class pairs: {}\n",
                report.members,
                report.rows.len(),
                if report.pass { "pass" } else { "FAIL" }
            );
            for r in &rows {
                text.push_str(&r.join(" "));
                text.push('\n');
            }
            let value = serde_json::to_value(&report).map_err(|e| Failure::Domain(e.to_string()))?;
            let mut output = Output::new(value, text).with_table(
                vec!["type1", "type2", "conjugate", "alpha_char", "commutant_count", "pass"],
                rows,
            );
            if !report.pass {
                output.failed = Some("two-sided character check".into());
            }
            Ok((output, json))
        }
        Command::VerifyPaper { max_n } => {
            let battery = pool.install(|| verify::battery(*max_n))?;
            let width = battery.checks.iter().map(|c| c.theorem.len()).max().unwrap_or(0);
            let mut text = String::new();
            for c in &battery.checks {
                text.push_str(&format!(
                    "{:<width$}  {}  {:>8}  {}\n",
                    c.theorem,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.cases,
                    c.scope
                ));
            }
            let rows = battery
                .checks
                .iter()
                .map(|c| vec![c.theorem.to_string(), c.scope.clone(), c.cases.to_string(), c.pass.to_string()])
                .collect();
            let value = serde_json::to_value(&battery).map_err(|e| Failure::Domain(e.to_string()))?;
            let mut output =
                Output::new(value, text).with_table(vec!["theorem", "scope", "cases", "pass"], rows);
            if !battery.pass {
                let failed: Vec<&str> = battery.checks.iter().filter(|c| !c.pass).map(|c| c.theorem).collect();
                output.failed = Some(failed.join(", "));
            }
            Ok((output, json))
        }
    }
}
