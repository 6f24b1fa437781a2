//! Command-line front end: `decide`, `witness`, `oracle`, `normal-form`,
//! `conic`, and `cheb` subcommands over a shared field/flag vocabulary.
//! Every command prints one canonical JSON document; exit codes are 0 for a
//! completed verdict, 1 for usage or parse errors, and 2 for internal
//! certificate failures.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::conics::conic_rational_point;
use crate::conics::conic_point_search;
use crate::conjugacy::classify;
use crate::decider::{decide, GeneratorSet, RunConfig};
use crate::numberfield::{FieldElement, NumberField};
use crate::parse::{parse_conic, parse_field, parse_generator, parse_polynomial};
use crate::polyring::cheb_expand;
use crate::report;
use crate::witness::{collision_oracle, generate_pairs};
use crate::Error;

#[derive(Parser)]
#[command(name = "cancelkit", version, about = "Decide dynamical cancellation for sets of polynomials over a number field")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Defining polynomial of K in t ("t" for the rationals)
    #[arg(long, default_value = "t")]
    field: String,
    /// Write the JSON report to this path as well as stdout
    #[arg(long)]
    json: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct DecideOpts {
    /// Comma-separated generator polynomials, e.g. "T(2),T(3)"
    #[arg(long, allow_hyphen_values = true)]
    gens: String,
    /// Composition depth L
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Maximum degree of enumerated compositions
    #[arg(long, default_value_t = 10_000)]
    degree_cap: usize,
    /// Maximum number of enumerated words
    #[arg(long, default_value_t = 100_000)]
    word_cap: usize,
    /// Height bound for conic point searches over K != Q
    #[arg(long, default_value_t = 20)]
    height_bound: u32,
    /// Counterexample pairs generated per witness
    #[arg(long, default_value_t = 1)]
    pairs: usize,
    /// Iterate h1 j times in the moreover-clause pairs
    #[arg(long, default_value_t = 0)]
    iterate_j: u32,
    /// Skip the absence prover
    #[arg(long, default_value_t = false)]
    no_prover: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the cancellation property for a generator set
    Decide {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        opts: DecideOpts,
    },
    /// Re-generate counterexample pairs for one witness of a decide run
    Witness {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        opts: DecideOpts,
        /// Index into the sorted witness list
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Brute-force search for a collision word equalizing two points
    Oracle {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated generator polynomials
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        /// First point (a constant expression over K)
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Second point
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Maximum word length searched
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Linear-conjugacy normal form of one polynomial
    NormalForm {
        #[command(flatten)]
        common: CommonOpts,
        /// The polynomial to classify
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Find a K-point on a conic, or prove there is none (over Q)
    Conic {
        #[command(flatten)]
        common: CommonOpts,
        /// Conic equation in X and Y
        #[arg(long, allow_hyphen_values = true)]
        equation: String,
        /// Height bound for the search over K != Q
        #[arg(long, default_value_t = 20)]
        height_bound: u32,
    },
    /// Chebyshev-basis expansion of a polynomial
    Cheb {
        #[command(flatten)]
        common: CommonOpts,
        /// The polynomial to expand
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

fn parse_gens(text: &str, field: &Arc<NumberField>) -> Result<Vec<crate::polyring::KxPoly>, Error> {
    text.split(',')
        .map(|s| parse_generator(s.trim(), field))
        .collect()
}

fn parse_point(text: &str, field: &Arc<NumberField>) -> Result<FieldElement, Error> {
    let p = parse_polynomial(text, field)?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(Error::Syntax("expected a constant expression".into(), 0));
    }
    Ok(p.coeff(0))
}

fn run_config(o: &DecideOpts) -> RunConfig {
    RunConfig {
        degree_cap: o.degree_cap,
        word_cap: o.word_cap,
        height_bound: o.height_bound,
        pairs: o.pairs,
        iterate_j: o.iterate_j,
        no_prover: o.no_prover,
    }
}

fn emit(common: &CommonOpts, v: &Value) -> Result<(), Error> {
    let s = report::to_canonical_string(v);
    print!("{}", s);
    if let Some(path) = &common.json {
        std::fs::write(path, &s)
            .map_err(|e| Error::Usage(format!("cannot write {}: {}", path.display(), e)))?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Decide { common, opts } => {
            let field = parse_field(&common.field)?;
            let gens = parse_gens(&opts.gens, &field)?;
            let gen_texts: Vec<String> = gens.iter().map(|g| g.to_text()).collect();
            let cfg = run_config(&opts);
            let s = GeneratorSet::new(&field, gens)?;
            let rep = decide(&s, opts.depth, &cfg)?;
            let config = report::config_json(&common.field, &gen_texts, opts.depth, &cfg);
            emit(&common, &report::decision_json(&rep, config))
        }
        Command::Witness {
            common,
            opts,
            index,
        } => {
            let field = parse_field(&common.field)?;
            let gens = parse_gens(&opts.gens, &field)?;
            let gen_texts: Vec<String> = gens.iter().map(|g| g.to_text()).collect();
            let cfg = run_config(&opts);
            let s = GeneratorSet::new(&field, gens)?;
            let rep = decide(&s, opts.depth, &cfg)?;
            let w = rep.witnesses.get(index).ok_or_else(|| {
                Error::Usage(format!(
                    "witness index {} out of range ({} found)",
                    index,
                    rep.witnesses.len()
                ))
            })?;
            let pairs = generate_pairs(
                &w.h1.poly,
                &w.h2.poly,
                &w.curve,
                cfg.iterate_j,
                cfg.pairs.max(1),
            )?;
            let mut m = Map::new();
            m.insert("command".into(), Value::String("witness".into()));
            m.insert(
                "config".into(),
                report::config_json(&common.field, &gen_texts, opts.depth, &cfg),
            );
            m.insert("version".into(), Value::String(report::version().into()));
            m.insert("index".into(), json!(index));
            let mut wj = report::witness_json(w);
            if let Value::Object(ref mut wm) = wj {
                wm.insert(
                    "pairs".into(),
                    Value::Array(
                        pairs
                            .iter()
                            .map(|p| {
                                json!({
                                    "a": format!("{}", p.a),
                                    "b": format!("{}", p.b),
                                    "j": p.j,
                                    "orbit_a": format!("{}", p.orbit_a),
                                    "orbit_b": format!("{}", p.orbit_b),
                                    "image": format!("{}", p.image),
                                })
                            })
                            .collect(),
                    ),
                );
            }
            m.insert("witness".into(), wj);
            emit(&common, &Value::Object(m))
        }
        Command::Oracle {
            common,
            gens,
            a,
            b,
            depth,
        } => {
            let field = parse_field(&common.field)?;
            let gens = parse_gens(&gens, &field)?;
            let pa = parse_point(&a, &field)?;
            let pb = parse_point(&b, &field)?;
            if pa == pb {
                return Err(Error::Usage("the two points must differ".into()));
            }
            let found = collision_oracle(&gens, &pa, &pb, depth);
            let mut m = Map::new();
            m.insert("command".into(), Value::String("oracle".into()));
            m.insert("version".into(), Value::String(report::version().into()));
            m.insert("a".into(), Value::String(format!("{}", pa)));
            m.insert("b".into(), Value::String(format!("{}", pb)));
            m.insert("depth".into(), json!(depth));
            match found {
                Some((word, first)) => {
                    m.insert("collision".into(), json!(word));
                    m.insert("first_depth".into(), json!(first));
                }
                None => {
                    m.insert("collision".into(), Value::Null);
                }
            }
            emit(&common, &Value::Object(m))
        }
        Command::NormalForm { common, poly } => {
            let field = parse_field(&common.field)?;
            let p = parse_polynomial(&poly, &field)?;
            let rep = classify(&p)?;
            let mut m = Map::new();
            m.insert("command".into(), Value::String("normal-form".into()));
            m.insert("version".into(), Value::String(report::version().into()));
            m.insert("poly".into(), Value::String(p.to_text()));
            m.insert("normal_form".into(), report::normal_form_json(&rep));
            emit(&common, &Value::Object(m))
        }
        Command::Conic {
            common,
            equation,
            height_bound,
        } => {
            let field = parse_field(&common.field)?;
            let conic = parse_conic(&equation, &field)?;
            let verdict = if field.degree() == 1 {
                conic_rational_point(&conic)
            } else {
                conic_point_search(&conic, height_bound)
            };
            let mut m = Map::new();
            m.insert("command".into(), Value::String("conic".into()));
            m.insert("version".into(), Value::String(report::version().into()));
            m.insert(
                "result".into(),
                report::conic_verdict_json(Some(&conic), &verdict),
            );
            emit(&common, &Value::Object(m))
        }
        Command::Cheb { common, poly } => {
            let field = parse_field(&common.field)?;
            let p = parse_polynomial(&poly, &field)?;
            let e = cheb_expand(&p);
            let mut coeffs = Map::new();
            coeffs.insert("0".into(), Value::String(format!("{}", e.a0)));
            for (k, c) in &e.a {
                coeffs.insert(k.to_string(), Value::String(format!("{}", c)));
            }
            let mut m = Map::new();
            m.insert("command".into(), Value::String("cheb".into()));
            m.insert("version".into(), Value::String(report::version().into()));
            m.insert("poly".into(), Value::String(p.to_text()));
            m.insert("chebyshev_coefficients".into(), Value::Object(coeffs));
            emit(&common, &Value::Object(m))
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with success codes
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e @ Error::CertificateFailure(_)) => {
            eprintln!("error: {}", e);
            2
        }
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    }
}
