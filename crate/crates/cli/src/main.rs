//! Command-line front end: parse symbols, run the decision procedures, print
//! verdicts, band forms, finite sections, Mellin transforms, and drive the
//! seeded self-test suites.
//!
//! Exit codes: 0 = decided (either way), 1 = self-test failure, 2 = input or
//! parse error, 3 = internal inconsistency between the exact kernel and the
//! affine criterion.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use biharm_core::calculus::{commutator, toeplitz, BandedOperator};
use biharm_core::decide::{decide_commute, decide_normal, normal_line_equations, DecideError};
use biharm_core::mellin::{mellin_hat, RadialPoly};
use biharm_core::numeric::GaussRational;
use biharm_core::oracle::{oracle_matrix, DenseMatrix};
use biharm_core::selftest::{run_selftest, SelfTestConfig};
use biharm_core::symbol::BiharmonicSymbol;

#[derive(Parser)]
#[command(
    name = "biharm",
    about = "Exact Toeplitz-operator calculus for polynomial biharmonic symbols on the Bergman space",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Bands,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the Toeplitz operators of two symbols commute
    CheckCommute {
        /// First symbol: a JSON file path or an inline "expr:..." expression
        #[arg(long = "a")]
        a: String,
        /// Second symbol
        #[arg(long = "b")]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the Toeplitz operator of a symbol is normal
    CheckNormal {
        #[arg(long = "a")]
        a: String,
        #[arg(long)]
        json: bool,
        /// Also print both real-linear equations behind a line verdict
        #[arg(long)]
        verbose: bool,
    },
    /// Print the commutator of two operators in band form
    Commutator {
        #[arg(long = "a")]
        a: String,
        #[arg(long = "b")]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a finite section of an operator in the monomial basis
    Matrix {
        #[arg(long = "a")]
        a: String,
        /// Section size
        #[arg(long, default_value_t = 8)]
        k: usize,
        /// Which implementation renders the section
        #[arg(long, value_enum, default_value_t = Engine::Bands)]
        engine: Engine,
        #[arg(long)]
        json: bool,
    },
    /// Mellin transform of a radial polynomial, e.g. "r^2 + 2"
    Mellin {
        #[arg(long)]
        phi: String,
        /// Optional evaluation point (a complex-rational literal)
        #[arg(long)]
        at: Option<String>,
    },
    /// Run the seeded randomized self-test suites
    Selftest {
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long = "max-degree", default_value_t = 3)]
        max_degree: u32,
        #[arg(long, default_value_t = 24)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CliError {
    Input(String),
    Inconsistency(String),
}

impl From<DecideError> for CliError {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::InternalInconsistency(msg) => CliError::Inconsistency(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn load_symbol(arg: &str) -> Result<BiharmonicSymbol, CliError> {
    if let Some(expr) = arg.strip_prefix("expr:") {
        return BiharmonicSymbol::parse(expr).map_err(|e| CliError::Input(e.to_string()));
    }
    let text = fs::read_to_string(arg)
        .map_err(|e| CliError::Input(format!("cannot read symbol file {arg:?}: {e}")))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{arg}: invalid JSON: {e}")))?;
    BiharmonicSymbol::from_json(&value).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

fn relation_json(rel: &Option<(GaussRational, GaussRational)>) -> Value {
    match rel {
        Some((c1, c2)) => json!({"c1": c1.to_string(), "c2": c2.to_string()}),
        None => Value::Null,
    }
}

fn relation_text(rel: &Option<(GaussRational, GaussRational)>) -> String {
    match rel {
        Some((c1, c2)) => format!("C1 = {c1}, C2 = {c2}"),
        None => "none".to_string(),
    }
}

fn operator_json(op: &BandedOperator) -> Value {
    let bands: Vec<Value> = op
        .bands()
        .iter()
        .map(|(p, coeff)| {
            let strings =
                |l: &[GaussRational]| l.iter().map(|c| c.to_string()).collect::<Vec<_>>();
            json!({
                "shift": p,
                "k0": coeff.k0(),
                "exceptional": strings(coeff.exceptional()),
                "tail": {
                    "num": strings(coeff.tail().num().coeffs()),
                    "den": strings(coeff.tail().den().coeffs()),
                },
            })
        })
        .collect();
    json!({ "bands": bands })
}

fn print_operator_text(op: &BandedOperator) {
    if op.is_zero() {
        println!("commutator is zero; the operators commute");
        return;
    }
    for (p, coeff) in op.bands() {
        println!("band {p:+}: {}", coeff.describe());
    }
}

fn print_matrix_text(m: &DenseMatrix) {
    for j in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|k| m.get(j, k).to_string()).collect();
        println!("[{}]", row.join(", "));
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::CheckCommute { a, b, json } => {
            let phi = load_symbol(&a)?;
            let psi = load_symbol(&b)?;
            let verdict = decide_commute(&phi, &psi)?;
            if json {
                let out = json!({
                    "commute": verdict.commute,
                    "relation": relation_json(&verdict.relation),
                    "hypotheses_met": verdict.hypotheses_met,
                    "consistent": verdict.consistent,
                    "witness": verdict.witness.as_ref().map(|w| json!({
                        "shift": w.shift,
                        "k": w.k,
                        "value": w.value.to_string(),
                    })),
                    "a": phi.to_json(),
                    "b": psi.to_json(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("commute: {}", verdict.commute);
                if let Some(w) = &verdict.witness {
                    println!("witness: band {:+}, k = {}, value = {}", w.shift, w.k, w.value);
                }
                println!("relation: {}", relation_text(&verdict.relation));
                println!("hypotheses_met: {}", verdict.hypotheses_met);
                println!("consistent: {}", verdict.consistent);
            }
            Ok(0)
        }
        Command::CheckNormal { a, json, verbose } => {
            let phi = load_symbol(&a)?;
            let verdict = decide_normal(&phi)?;
            if json {
                let out = json!({
                    "normal": verdict.normal,
                    "classification": verdict.classification.to_string(),
                    "line": verdict.line.as_ref().map(|l| json!({
                        "u": l.u.to_string(),
                        "v": l.v.to_string(),
                        "c": l.c.to_string(),
                    })),
                    "relation": relation_json(&verdict.relation),
                    "symbol": phi.to_json(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("normal: {}", verdict.normal);
                println!("classification: {}", verdict.classification);
                if let Some(line) = &verdict.line {
                    println!("line: {line}");
                }
                println!("relation: {}", relation_text(&verdict.relation));
                if verbose {
                    if let Some((c1, c2)) = &verdict.relation {
                        let (first, second) = normal_line_equations(c1, c2);
                        println!("line equations: {first}; {second}");
                    }
                }
            }
            Ok(0)
        }
        Command::Commutator { a, b, json } => {
            let phi = load_symbol(&a)?;
            let psi = load_symbol(&b)?;
            let comm = commutator(&phi, &psi);
            if json {
                println!("{}", serde_json::to_string_pretty(&operator_json(&comm)).unwrap());
            } else {
                print_operator_text(&comm);
            }
            Ok(0)
        }
        Command::Matrix { a, k, engine, json } => {
            if k < 1 {
                return Err(CliError::Input("k must be at least 1".to_string()));
            }
            let phi = load_symbol(&a)?;
            let section = match engine {
                Engine::Bands => toeplitz(&phi).truncate(k),
                Engine::Oracle => oracle_matrix(&phi, k),
            };
            if json {
                let out = json!({
                    "k": k,
                    "engine": match engine { Engine::Bands => "bands", Engine::Oracle => "oracle" },
                    "entries": section.entry_strings(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                print_matrix_text(&section);
            }
            Ok(0)
        }
        Command::Mellin { phi, at } => {
            let radial = RadialPoly::parse(&phi).map_err(|e| CliError::Input(e.to_string()))?;
            let hat = mellin_hat(&radial).map_err(|e| CliError::Input(e.to_string()))?;
            println!("phi_hat(z) = {}", hat.render("z"));
            if let Some(point) = at {
                let z: GaussRational = point
                    .parse()
                    .map_err(|e| CliError::Input(format!("--at {point:?}: {e}")))?;
                let value = hat
                    .eval_q(&z)
                    .map_err(|e| CliError::Input(format!("--at {point:?}: {e}")))?;
                println!("phi_hat({z}) = {value}");
            }
            Ok(0)
        }
        Command::Selftest { trials, max_degree, k, seed } => {
            if trials < 1 {
                return Err(CliError::Input("trials must be at least 1".to_string()));
            }
            if k < 4 {
                return Err(CliError::Input("k must be at least 4".to_string()));
            }
            let report = run_selftest(SelfTestConfig {
                seed,
                trials,
                max_degree,
                section_dim: k,
            });
            print!("{}", report.render());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Inconsistency(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            ExitCode::from(3)
        }
    }
}
