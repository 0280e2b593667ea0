//! The `wedkit` command line: one verb per operation, JSON on stdout.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::Error;
use crate::ga::{self, GaRep};
use crate::matrix::RatMatrix;
use crate::quiver::{envelope, Quiver};
use crate::rational::Rational;
use crate::roots::{positive_roots, RootType};
use crate::semisimple::{is_wedderburn, semisimple_decompose};
use crate::trace::{
    kimura_dim, lambda_trace, nagata_higman_check, power_to_elementary, power_traces,
    twisted_trace, twisted_trace_direct, GradedObject, Permutation, TensorMorphism,
};
use crate::wedderburn::{conjugate_sections, lift_section, section_from_matrix, Filtration};

#[derive(Parser, Debug)]
#[command(name = "wedkit", version, about = "Exact computations with finite-dimensional algebras over Q")]
pub struct Cli {
    /// Print a human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobson radical of an algebra.
    Radical {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Simple blocks of a semisimple algebra.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Wedderburn report: radical index and semisimple quotient.
    Check {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// A multiplicative section of the projection onto A/rad(A).
    Split {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// A unit u in 1 + rad(A) conjugating one section into another.
    Conjugate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        s1: PathBuf,
        #[arg(long)]
        s2: PathBuf,
    },
    /// Semisimple envelope of the path algebra of a Dynkin quiver.
    Envelope {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Positive roots of a simply-laced root system.
    Roots {
        #[arg(long = "type")]
        root_type: String,
    },
    /// Trace of a permutation-twisted tensor product of matrices.
    Trace {
        /// Cycle notation, 0-based, e.g. "(0 1 2)".
        #[arg(long)]
        perm: String,
        /// JSON list of matrices.
        #[arg(long)]
        mats: PathBuf,
    },
    /// Trace of the n-th exterior power of a matrix.
    Lambda {
        #[arg(long)]
        mat: PathBuf,
        #[arg(short)]
        n: usize,
    },
    /// Kimura dimension of a graded object.
    Kimura {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
    },
    /// Nagata-Higman check for the algebra generated by matrices.
    Nagata {
        /// JSON list of square matrices.
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short)]
        n: usize,
    },
    /// Dimension of Hom(S^m V, S^n V) for the additive group.
    GaHom {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// Decomposition of S^m V (x) S^n V.
    GaCg {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// Consistency of the additive-group and SL2 dictionaries.
    GaSl2 {
        #[arg(long = "max")]
        m_max: usize,
    },
}

/// What a run produced: the exit code and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            Error::ExponentHypothesisFails { exponent, witness } => Failure::Input(format!(
                "exponent hypothesis fails for n = {exponent}; witness: {}",
                serde_json::to_string(&witness).unwrap()
            )),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Accepts a bare matrix or the output of `split`.
fn read_section_matrix(path: &Path) -> Result<RatMatrix, Failure> {
    let v: Value = read_json(path)?;
    let m = v.get("section").cloned().unwrap_or(v);
    serde_json::from_value(m).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn execute(cmd: &Command) -> Result<Value, Failure> {
    Ok(match cmd {
        Command::Radical { input } => {
            let a: Algebra = read_json(input)?;
            let rad = a.radical();
            json!({
                "radical_dim": rad.dim(),
                "nilpotency_index": a.nilpotency_index(&rad)?,
                "basis": rad.basis(),
            })
        }
        Command::Decompose { input } => {
            let a: Algebra = read_json(input)?;
            to_value(&semisimple_decompose(&a)?)
        }
        Command::Check { input } => {
            let a: Algebra = read_json(input)?;
            to_value(&is_wedderburn(&a)?)
        }
        Command::Split { input } => {
            let a: Algebra = read_json(input)?;
            let f = Filtration::new(&a)?;
            let s = lift_section(&a)?;
            let check = s.verify(&a, &f);
            if !check.ok() {
                return Err(Failure::Internal("section failed verification".into()));
            }
            json!({
                "radical_dim": f.radical.dim(),
                "quotient_dim": f.quotient_dim(),
                "section": s.map,
                "verification": check,
            })
        }
        Command::Conjugate { input, s1, s2 } => {
            let a: Algebra = read_json(input)?;
            let s1 = section_from_matrix(&a, read_section_matrix(s1)?)?;
            let s2 = section_from_matrix(&a, read_section_matrix(s2)?)?;
            let u = conjugate_sections(&a, &s1, &s2)?;
            json!({ "u": u, "verified": true })
        }
        Command::Envelope { input } => {
            let q: Quiver = read_json(input)?;
            to_value(&envelope(&q)?)
        }
        Command::Roots { root_type } => {
            let t: RootType = root_type.parse()?;
            to_value(&positive_roots(t))
        }
        Command::Trace { perm, mats } => {
            let factors: Vec<RatMatrix> = read_json(mats)?;
            let sigma = Permutation::parse_cycles(perm, Some(factors.len()))?;
            let tm = TensorMorphism::new(factors, sigma)?;
            let value = twisted_trace(&tm)?;
            let direct = twisted_trace_direct(&tm)?;
            if value != direct {
                return Err(Failure::Internal(format!(
                    "cycle formula {value} disagrees with direct sum {direct}"
                )));
            }
            json!({
                "perm": tm.perm.to_string(),
                "cycles": tm.perm.cycles(),
                "value": value,
                "direct": direct,
                "agrees": true,
            })
        }
        Command::Lambda { mat, n } => {
            let f: RatMatrix = read_json(mat)?;
            let value = lambda_trace(&f, *n)?;
            let newton = if *n == 0 {
                Rational::one()
            } else {
                power_to_elementary(&power_traces(&f, *n)?)[n - 1].clone()
            };
            if value != newton {
                return Err(Failure::Internal(format!(
                    "symmetric-group sum {value} disagrees with Newton identities {newton}"
                )));
            }
            json!({ "n": n, "value": value, "newton": newton, "agrees": true })
        }
        Command::Kimura { p, q } => to_value(&kimura_dim(GradedObject::new(*p, *q))?),
        Command::Nagata { input, n } => {
            let gens: Vec<RatMatrix> = read_json(input)?;
            to_value(&nagata_higman_check(&gens, *n)?)
        }
        Command::GaHom { m, n } => {
            let (a, b) = (GaRep::symmetric_power(*m), GaRep::symmetric_power(*n));
            let oracle = ga::hom_space(&a, &b).dim();
            let dim = ga::hom_dim(*m, *n);
            if dim != oracle {
                return Err(Failure::Internal("hom dimension disagrees with intertwiners".into()));
            }
            json!({ "m": m, "n": n, "hom_dim": dim, "oracle_dim": oracle, "p_set": ga::p_set(*m, *n) })
        }
        Command::GaCg { m, n } => {
            let components = ga::clebsch_gordan(*m, *n);
            let t = GaRep::symmetric_power(*m).tensor(&GaRep::symmetric_power(*n));
            let jt = ga::jordan_type(&t).partition;
            let mut from_jordan: Vec<usize> = jt.iter().map(|s| s - 1).collect();
            from_jordan.sort_unstable();
            if from_jordan != components {
                return Err(Failure::Internal("Clebsch-Gordan disagrees with Jordan type".into()));
            }
            json!({ "m": m, "n": n, "components": components, "jordan_type": jt, "agrees": true })
        }
        Command::GaSl2 { m_max } => to_value(&ga::sl2_consistency(*m_max)?),
    })
}

/// Renders a JSON document as indented `key: value` lines.
pub fn render_pretty(v: &Value) -> String {
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::Bool(b) => Some(b.to_string()),
            Value::Number(n) => Some(n.to_string()),
            Value::String(s) => Some(s.clone()),
            Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
                "[{}]",
                xs.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")
            )),
            _ => None,
        }
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            go(x, indent + 1, out);
                        }
                    }
                }
            }
            Value::Array(xs) => {
                for x in xs {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            go(x, indent + 1, out);
                        }
                    }
                }
            }
            other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}

/// Parses `argv` (including the program name) and runs the verb.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(v) => {
            let stdout = if cli.pretty {
                render_pretty(&v)
            } else {
                let mut s = serde_json::to_string(&v).expect("json");
                s.push('\n');
                s
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(Failure::Input(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Internal(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("internal error: {m}\n"),
        },
    }
}
