//! Command-line surface: bundle loading, command dispatch and reports.
//!
//! Exit codes: 0 success, 1 input error, 2 validation failure, 3 resource
//! cap hit. With `--json` every command prints an array of records with
//! the keys `case`, `op`, `expected`, `got` and `pass`.

pub mod bundle;
pub mod catalog;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::mf::{
    cone, hom_space_dimension, is_contractible, null_homotopy, totalize, Homotopy, MatrixFactorization,
    MfMorphism, PairComplex,
};
use crate::module::{FPModule, RingMatrix};
use crate::ring::MonomialOrder;
use crate::singcat::{
    cok, free_resolution_r, mcm_check, stabilize, stable_hom_dimension, syzygy_r, transport_morphism,
    verify_fully_faithful, Verdict,
};
use bundle::{format_mf, format_module, format_morphism, parse_bundle, Bundle, LoadOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// One line of a machine-readable report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub case: String,
    pub op: String,
    pub expected: serde_json::Value,
    pub got: serde_json::Value,
    pub pass: bool,
}

#[derive(Parser, Debug)]
#[command(name = "mfsing", version, about = "Matrix factorizations and the singularity category of a hypersurface fiber")]
pub struct Cli {
    /// Override the characteristic of the coefficient field.
    #[arg(long, global = true)]
    pub field_char: Option<u32>,
    /// Monomial order: grevlex or lex.
    #[arg(long, global = true, default_value = "grevlex")]
    pub order: MonomialOrder,
    /// Emit JSON records instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Bound on Gröbner basis pair reductions.
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
    /// Bound on resolution length.
    #[arg(long, global = true, default_value_t = 50)]
    pub max_resolution: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load and validate a bundle.
    Check { bundle: PathBuf },
    /// Print E[1].
    Shift { bundle: PathBuf, name: String },
    /// Print E ⊕ F.
    Sum { bundle: PathBuf, a: String, b: String },
    /// Print the mapping cone of a morphism.
    Cone { bundle: PathBuf, morphism: String },
    /// Totalize the complex formed by consecutive morphisms (or a single object).
    Totalize {
        bundle: PathBuf,
        #[arg(required = true)]
        names: Vec<String>,
        /// Index of the first object.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        start: i64,
    },
    /// Search for a null-homotopy of a morphism.
    Homotopy { bundle: PathBuf, morphism: String },
    /// Decide whether an object is contractible.
    Contract { bundle: PathBuf, name: String },
    /// dim H^0 Hom(E, F).
    Homdim { bundle: PathBuf, a: String, b: String },
    /// Presentation of cok(E).
    Cok { bundle: PathBuf, name: String },
    /// First syzygy over R.
    Syzygy { bundle: PathBuf, name: String },
    /// Free resolution over R with periodicity detection.
    Resolve {
        bundle: PathBuf,
        name: String,
        /// Number of matrices to compute (default: variables + 4).
        length: Option<usize>,
    },
    /// Maximal Cohen-Macaulay test.
    Mcm { bundle: PathBuf, name: String },
    /// Matrix factorization representing a module in the stable category.
    Stabilize { bundle: PathBuf, name: String },
    /// Lift a module map cok(F) -> cok(E) to a roof of pair morphisms.
    Transport {
        bundle: PathBuf,
        source: String,
        target: String,
        /// Rows separated by `;`, entries by `,` (default: identity).
        matrix: Option<String>,
    },
    /// Stable Hom dimension of two modules.
    Stablehom { bundle: PathBuf, a: String, b: String },
    /// Compare both sides of the comparison functor on Hom spaces.
    VerifyFf { bundle: PathBuf, a: String, b: String },
    /// Run the shipped example suite.
    Catalog {
        /// Run a single case (a1..a5, node, cusp, cubic).
        #[arg(long)]
        only: Option<String>,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        Error::Composition { .. }
        | Error::Morphism { .. }
        | Error::Shape(_)
        | Error::NotAComplex { .. }
        | Error::IncompatibleMorphism { .. }
        | Error::FreenessCertificateFailed(_) => EXIT_VALIDATION,
        Error::ContextMismatch | Error::InvalidRing(_) | Error::Parse { .. } | Error::InvalidArgument(_) => {
            EXIT_INPUT
        }
    }
}

struct Report {
    text: String,
    records: Vec<Record>,
    code: i32,
}

impl Report {
    fn new(case: &str, op: &str, got: serde_json::Value, text: String) -> Self {
        Report {
            text,
            records: vec![Record {
                case: case.to_string(),
                op: op.to_string(),
                expected: serde_json::Value::Null,
                got,
                pass: true,
            }],
            code: EXIT_OK,
        }
    }
}

fn load_options(cli: &Cli) -> LoadOptions {
    LoadOptions {
        field_char: cli.field_char,
        order: cli.order,
        max_steps: cli.max_steps,
    }
}

fn load(path: &PathBuf, opts: &LoadOptions) -> Result<Bundle> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_bundle(&text, opts)
}

fn unknown(kind: &str, name: &str) -> Error {
    Error::InvalidArgument(format!("unknown {kind} `{name}`"))
}

fn mf_arg<'a>(b: &'a Bundle, name: &str) -> Result<&'a MatrixFactorization> {
    b.mf(name).ok_or_else(|| unknown("factorization", name))
}

fn morphism_arg<'a>(b: &'a Bundle, name: &str) -> Result<&'a MfMorphism> {
    b.morphism(name).ok_or_else(|| unknown("morphism", name))
}

/// A module entry, or the cokernel of a factorization.
fn module_arg(b: &Bundle, name: &str) -> Result<FPModule> {
    if let Some(m) = b.module(name) {
        return Ok(m.clone());
    }
    match b.mf(name) {
        Some(e) => cok(e),
        None => Err(unknown("module", name)),
    }
}

fn check_resolution_cap(len: usize, cap: usize) -> Result<()> {
    if len > cap {
        return Err(Error::ResourceLimit(format!(
            "resolution length {len} exceeds --max-resolution {cap}"
        )));
    }
    Ok(())
}

fn homotopy_text(h: &Homotopy, yes: &str, no: &str) -> String {
    match h {
        Homotopy::Witness(w) => format!("{yes}\ns0 = {}\ns1 = {}\n", w.s0, w.s1),
        Homotopy::NotNullHomotopic { normal_form } => {
            let nf: Vec<String> = normal_form.iter().map(|f| f.to_string()).collect();
            format!("{no}\nobstruction = [{}]\n", nf.join(", "))
        }
    }
}

fn dim_json(d: crate::module::Dim) -> serde_json::Value {
    match d.finite() {
        Some(n) => json!(n),
        None => json!("infinite"),
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let opts = load_options(cli);
    let n_vars = |b: &Bundle| b.context().nvars();
    Ok(match &cli.command {
        Command::Check { bundle } => {
            let b = load(bundle, &opts)?;
            let mut text = String::new();
            for e in b.entries() {
                text.push_str(&format!("{}: OK\n", e.name()));
            }
            text.push_str("OK\n");
            Report::new(&bundle.display().to_string(), "check", json!(b.entries().len()), text)
        }
        Command::Shift { bundle, name } => {
            let b = load(bundle, &opts)?;
            let e = mf_arg(&b, name)?.shift();
            let text = format_mf(&format!("{name}_shift"), &e);
            Report::new(name, "shift", json!(text), text)
        }
        Command::Sum { bundle, a, b: other } => {
            let b = load(bundle, &opts)?;
            let s = mf_arg(&b, a)?.direct_sum(mf_arg(&b, other)?)?;
            let text = format_mf(&format!("{a}_plus_{other}"), &s);
            Report::new(&format!("{a},{other}"), "sum", json!(text), text)
        }
        Command::Cone { bundle, morphism } => {
            let b = load(bundle, &opts)?;
            let c = cone(morphism_arg(&b, morphism)?)?;
            let text = format_mf(&format!("cone_{morphism}"), &c.object);
            Report::new(morphism, "cone", json!(text), text)
        }
        Command::Totalize { bundle, names, start } => {
            let b = load(bundle, &opts)?;
            let complex = if names.len() == 1 && b.mf(&names[0]).is_some() {
                PairComplex::new(*start, vec![b.mf(&names[0]).unwrap().clone()], Vec::new())?
            } else {
                let maps = names
                    .iter()
                    .map(|n| morphism_arg(&b, n).cloned())
                    .collect::<Result<Vec<_>>>()?;
                let mut objects = vec![maps[0].src().clone()];
                objects.extend(maps.iter().map(|m| m.dst().clone()));
                PairComplex::new(*start, objects, maps)?
            };
            let t = totalize(&complex)?;
            let text = format_mf("total", &t);
            Report::new(&names.join(","), "totalize", json!(text), text)
        }
        Command::Homotopy { bundle, morphism } => {
            let b = load(bundle, &opts)?;
            let h = null_homotopy(morphism_arg(&b, morphism)?)?;
            let text = homotopy_text(&h, "NULL-HOMOTOPIC", "NOT NULL-HOMOTOPIC");
            Report::new(morphism, "homotopy", json!(h.is_null()), text)
        }
        Command::Contract { bundle, name } => {
            let b = load(bundle, &opts)?;
            let h = is_contractible(mf_arg(&b, name)?)?;
            let text = homotopy_text(&h, "CONTRACTIBLE", "NOT CONTRACTIBLE");
            Report::new(name, "contract", json!(h.is_null()), text)
        }
        Command::Homdim { bundle, a, b: other } => {
            let b = load(bundle, &opts)?;
            let d = hom_space_dimension(mf_arg(&b, a)?, mf_arg(&b, other)?)?;
            Report::new(&format!("{a},{other}"), "homdim", dim_json(d), format!("{d}\n"))
        }
        Command::Cok { bundle, name } => {
            let b = load(bundle, &opts)?;
            let m = cok(mf_arg(&b, name)?)?;
            let text = format_module(&format!("cok_{name}"), &m);
            Report::new(name, "cok", json!(text), text)
        }
        Command::Syzygy { bundle, name } => {
            let b = load(bundle, &opts)?;
            let m = syzygy_r(&module_arg(&b, name)?)?;
            let text = format_module(&format!("syz_{name}"), &m);
            Report::new(name, "syzygy", json!(text), text)
        }
        Command::Resolve { bundle, name, length } => {
            let b = load(bundle, &opts)?;
            let len = length.unwrap_or(n_vars(&b) + 4);
            check_resolution_cap(len, cli.max_resolution)?;
            let res = free_resolution_r(&module_arg(&b, name)?, len)?;
            let ranks: Vec<String> = res.ranks.iter().map(usize::to_string).collect();
            let mut text = format!("ranks {}\n", ranks.join(" "));
            match res.periodic_from {
                Some(s) => text.push_str(&format!("periodic from {s}\n")),
                None => text.push_str("periodic from none\n"),
            }
            for (i, d) in res.mats.iter().enumerate() {
                text.push_str(&format!("d{} = {d}\n", i + 1));
            }
            let got = json!({"ranks": res.ranks, "periodic_from": res.periodic_from});
            Report::new(name, "resolve", got, text)
        }
        Command::Mcm { bundle, name } => {
            let b = load(bundle, &opts)?;
            check_resolution_cap(n_vars(&b) + 1, cli.max_resolution)?;
            let yes = mcm_check(&module_arg(&b, name)?)?;
            let text = if yes { "MCM\n" } else { "NOT MCM\n" };
            Report::new(name, "mcm", json!(yes), text.to_string())
        }
        Command::Stabilize { bundle, name } => {
            let b = load(bundle, &opts)?;
            check_resolution_cap(n_vars(&b) + 2, cli.max_resolution)?;
            let e = stabilize(&module_arg(&b, name)?)?;
            let text = format_mf(&format!("stab_{name}"), &e);
            Report::new(name, "stabilize", json!(text), text)
        }
        Command::Transport { bundle, source, target, matrix } => {
            let b = load(bundle, &opts)?;
            let f = mf_arg(&b, source)?;
            let e = mf_arg(&b, target)?;
            let ring = b.context().ring();
            let a = match matrix {
                Some(text) => {
                    let rows: Vec<&str> = text.split(';').collect();
                    RingMatrix::parse_rows(ring, &rows)?
                }
                None => RingMatrix::identity(ring, f.rank()),
            };
            let t = transport_morphism(&a, f, e)?;
            let cover = format!("{source}_cover");
            let mut text = format_mf(&cover, &t.cover);
            text.push_str(&format_morphism("p", &cover, target, &t.p));
            text.push_str(&format_morphism("s", &cover, source, &t.s));
            Report::new(&format!("{source},{target}"), "transport", json!(text), text)
        }
        Command::Stablehom { bundle, a, b: other } => {
            let b = load(bundle, &opts)?;
            check_resolution_cap(1, cli.max_resolution)?;
            let r = stable_hom_dimension(&module_arg(&b, a)?, &module_arg(&b, other)?)?;
            let mut text = format!("{}\n", r.dimension);
            for g in &r.generators {
                text.push_str(&format!("{g}\n"));
            }
            Report::new(&format!("{a},{other}"), "stablehom", dim_json(r.dimension), text)
        }
        Command::VerifyFf { bundle, a, b: other } => {
            let b = load(bundle, &opts)?;
            let rep = verify_fully_faithful(mf_arg(&b, a)?, mf_arg(&b, other)?)?;
            let text = format!("{}\nshifted {}\n", rep.direct, rep.shifted);
            let mut records = Vec::new();
            for (label, c) in [("", rep.direct), ("[1]", rep.shifted)] {
                records.push(Record {
                    case: format!("{a},{other}{label}"),
                    op: "verify-ff".into(),
                    expected: dim_json(c.mf_side),
                    got: dim_json(c.module_side),
                    pass: c.verdict == Verdict::Pass,
                });
            }
            let code = if rep.verdict() == Verdict::Fail { EXIT_VALIDATION } else { EXIT_OK };
            Report { text, records, code }
        }
        Command::Catalog { only } => {
            let names: Vec<&str> = match only {
                Some(n) if catalog::case_text(n).is_some() => vec![n.as_str()],
                Some(n) => return Err(unknown("catalog case", n)),
                None => catalog::CASE_NAMES.to_vec(),
            };
            let mut records = Vec::new();
            let mut text = String::new();
            for name in names {
                let bundle = catalog::load_case(name, &opts)?.expect("known case");
                let (recs, t) = catalog::run_case(name, &bundle)?;
                records.extend(recs);
                text.push_str(&t);
            }
            let failed = records.iter().filter(|r| !r.pass).count();
            if failed == 0 {
                text.push_str(&format!("all {} checks PASS\n", records.len()));
            } else {
                text.push_str(&format!("{failed} of {} checks FAIL\n", records.len()));
            }
            let code = if failed == 0 { EXIT_OK } else { EXIT_VALIDATION };
            Report { text, records, code }
        }
    })
}

/// Parse arguments, run the command and write the report. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.records).expect("records serialize")
                );
            } else {
                let _ = write!(out, "{}", report.text);
            }
            report.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let rec = Record {
                    case: String::new(),
                    op: "error".into(),
                    expected: serde_json::Value::Null,
                    got: json!(e.to_string()),
                    pass: false,
                };
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&[rec]).expect("records serialize"));
            }
            let _ = writeln!(err, "error: {e}");
            if code == EXIT_INPUT {
                let _ = writeln!(err, "{}", Cli::command_usage());
            }
            code
        }
    }
}

impl Cli {
    fn command_usage() -> String {
        use clap::CommandFactory;
        Cli::command().render_usage().to_string()
    }
}
