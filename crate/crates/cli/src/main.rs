mod config;
mod render;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kpeterson::grassmannian::ExpansionTerm;
use kpeterson::quantum::{emit_chevalley_table, quantum_divisor_product, QKTerm, QuantumProduct};
use kpeterson::{AffineWeylElt, Coweight, Error, FiniteWeylElt, Grassmannian, LocalClass, RootDatum, Window};
use serde::Serialize;
use serde_json::Value;

use config::{Format, SessionConfig};
use suites::Suite;

/// Exact computations in the equivariant K-theory of affine Grassmannians
/// and the quantum K-theory of flag manifolds.
#[derive(Parser, Debug)]
#[command(name = "kpeterson", version)]
struct Cli {
    /// Root system, e.g. A1, A2, B2, G2.
    #[arg(long = "type", env = "KPETERSON_TYPE", global = true)]
    type_tag: Option<String>,
    /// Largest max-norm of translations accepted during expansion.
    #[arg(long, default_value_t = 4, global = true, allow_negative_numbers = true)]
    window: i32,
    /// Depth multiplier N of the deep translation -N·2ρ^∨.
    #[arg(long = "N", default_value_t = 2, global = true)]
    depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Recompute every Schubert class instead of memoizing.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pontryagin product of two Schubert classes, expanded in the Schubert basis.
    Product { x: String, y: String },
    /// Schubert expansion of [O_Gr(x)], optionally times the translation class of a coweight.
    Expand {
        x: String,
        /// Coweight γ in simple coroot coordinates, e.g. "[1,-1]".
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// h_i ⊙ [O_Gr(x)] as a localized class.
    Hop { i: usize, x: String },
    /// Quantum multiplication by divisor classes: one entry or the whole table.
    Chevalley {
        #[arg(long)]
        i: Option<usize>,
        /// Finite Weyl group element, e.g. "s1 s2" or "e".
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Serialize)]
struct GrDocument {
    root_system: String,
    operation: &'static str,
    inputs: Vec<String>,
    terms: Vec<ExpansionTerm>,
}

#[derive(Serialize)]
struct QkDocument {
    #[serde(rename = "type")]
    root_system: String,
    i: usize,
    w: String,
    terms: Vec<QKTerm>,
}

enum Failure {
    Verification(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::WindowTooSmall { .. } | Error::Resource(_) | Error::NotStabilized { .. } => 3,
        Error::Parse { .. }
        | Error::UnsupportedType(_)
        | Error::BadIndex { .. }
        | Error::Config(_)
        | Error::RankMismatch { .. } => 4,
        Error::NotInLattice { .. } | Error::ZeroPivot(_) | Error::Pole(_) | Error::DivisionByZero => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = SessionConfig {
        type_tag: cli.type_tag.clone(),
        radius: cli.window,
        depth: cli.depth,
        format: cli.format,
        cache: !cli.no_cache,
    };
    match run(&cli.command, &cfg) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(doc: &impl Serialize, rows_key: &str, format: Format) -> String {
    let value: Value = serde_json::to_value(doc).expect("documents serialize");
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("valid JSON")),
        Format::Table => render::table(&value, rows_key),
    }
}

fn grassmannian_element(d: &RootDatum, text: &str) -> Result<AffineWeylElt, Error> {
    Ok(d.min_coset_rep(&d.parse_element(text)?))
}

fn finite_element(d: &RootDatum, text: &str) -> Result<FiniteWeylElt, Error> {
    let x = d.parse_element(text)?;
    if !x.beta.is_zero() {
        return Err(Error::Config(format!("`{text}` is not in the finite Weyl group")));
    }
    Ok(x.u)
}

fn coweight(d: &RootDatum, text: &str) -> Result<Coweight, Error> {
    let t = text.trim();
    let t = t.strip_prefix('t').unwrap_or(t);
    let x = d.parse_element(&format!("t{t}"))?;
    Ok(x.beta)
}

fn qk_document(d: &RootDatum, p: &QuantumProduct) -> QkDocument {
    QkDocument {
        root_system: d.cartan_type().to_string(),
        i: p.i,
        w: d.format_finite(p.w),
        terms: p.class.to_terms(d),
    }
}

fn run(command: &Command, cfg: &SessionConfig) -> Result<String, Failure> {
    cfg.validate()?;
    if let Command::Verify { suite } = command {
        let report = suites::run(*suite, cfg)?;
        let out = emit(&report, "checks", cfg.format);
        return if report.passed { Ok(out) } else { Err(Failure::Verification(out)) };
    }
    let d = cfg.datum()?;
    let gr = Grassmannian::new(&d).with_cache(cfg.cache);
    let root_system = d.cartan_type().to_string();
    let origin = Coweight::zero(d.rank());
    match command {
        Command::Product { x, y } => {
            let (a, b) = (grassmannian_element(&d, x)?, grassmannian_element(&d, y)?);
            let prod = gr.schubert_class(&a).pontryagin(&gr.schubert_class(&b));
            let exp = gr.expand(&prod, &Window::new(origin, cfg.radius))?;
            let doc = GrDocument {
                root_system,
                operation: "product",
                inputs: vec![d.format_element(&a), d.format_element(&b)],
                terms: exp.to_terms(&d),
            };
            Ok(emit(&doc, "terms", cfg.format))
        }
        Command::Expand { x, shift } => {
            let a = grassmannian_element(&d, x)?;
            let mut inputs = vec![d.format_element(&a)];
            let class = match shift {
                Some(s) => {
                    let g = coweight(&d, s)?;
                    inputs.push(format!("shift {g}"));
                    gr.local_mul(&gr.translation_class(&g, cfg.depth), &gr.local_class(&a))
                }
                None => LocalClass::new((*gr.schubert_class(&a)).clone(), origin),
            };
            let exp = gr.expand_local(&class, cfg.radius)?;
            let doc = GrDocument { root_system, operation: "expand", inputs, terms: exp.to_terms(&d) };
            Ok(emit(&doc, "terms", cfg.format))
        }
        Command::Hop { i, x } => {
            let a = grassmannian_element(&d, x)?;
            let h = gr.h_class(*i, &d.deep_coweight(cfg.depth))?;
            let exp = gr.expand_local(&gr.local_mul(&h, &gr.local_class(&a)), cfg.radius)?;
            let doc = GrDocument {
                root_system,
                operation: "hop",
                inputs: vec![format!("h_{i}"), d.format_element(&a)],
                terms: exp.to_terms(&d),
            };
            Ok(emit(&doc, "terms", cfg.format))
        }
        Command::Chevalley { i, w } => match (i, w) {
            (Some(i), Some(w)) => {
                let w = finite_element(&d, w)?;
                let p = quantum_divisor_product(&gr, *i, w, cfg.schedule())?;
                Ok(emit(&qk_document(&d, &p), "terms", cfg.format))
            }
            (None, None) => {
                let table = emit_chevalley_table(&gr, cfg.schedule())?;
                let docs: Vec<_> = table.iter().map(|p| qk_document(&d, p)).collect();
                Ok(emit(&docs, "terms", cfg.format))
            }
            _ => Err(Error::Config("give both --i and --w, or neither for the full table".into()).into()),
        },
        Command::Verify { .. } => unreachable!("handled above"),
    }
}
