use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gitcone::equiv::{EquivContext, Policy};
use gitcone::genhom::generic_subs;
use gitcone::selfcheck::{selfcheck, DEFAULT_SEED};
use gitcone::stability::{d_cone, d_cone_generators, schur_witness};
use gitcone::tame::{compute_tubes, git_cone_delta, maximal_cones};
use gitcone::vector::rational_to_json;
use gitcone::{Cone, DimVector, Error, Quiver, QuiverType, RatVector};

const EXIT_NO: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "gitcone", version, about = "GIT-cones and GIT-equivalence for acyclic quivers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Dynkin, Euclidean (with δ) or wild.
    Classify { quiver: PathBuf },
    /// Euler and Coxeter matrices, or ⟨α, β⟩ when both vectors are given.
    Euler {
        quiver: PathBuf,
        #[arg(long, allow_hyphen_values = true, requires = "b")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "a")]
        b: Option<String>,
    },
    /// The weight wt(α) = αE.
    Wt {
        quiver: PathBuf,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
    /// Schur test with a witness from D⁰(β).
    Schur { quiver: PathBuf, beta: String },
    /// Generic subdimension vectors of β.
    Subdims { quiver: PathBuf, beta: String },
    /// The cone D(β).
    Dcone {
        quiver: PathBuf,
        beta: String,
        /// Build the cone from β-simple vectors instead of halfspaces.
        #[arg(long)]
        generators: bool,
        /// Total dimension bound for the β-simple search.
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Non-homogeneous tubes of a Euclidean quiver.
    Tubes { quiver: PathBuf },
    /// Maximal cones C_I of the fan on D(δ).
    Cones {
        quiver: PathBuf,
        /// List every cone with its rays.
        #[arg(long)]
        list: bool,
    },
    /// The GIT-cone C(δ)_α.
    GitconeDelta {
        quiver: PathBuf,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
    /// Decide whether α₁ and α₂ are GIT-equivalent.
    Equiv {
        quiver: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        /// `dynkin`, `periodic` or `bound:B`.
        #[arg(long)]
        policy: Option<String>,
    },
    /// Run the invariant suites on the quiver.
    Selfcheck {
        quiver: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::CyclicQuiver(_)
            | Error::DisconnectedQuiver(_, _)
            | Error::UnknownVertex(_)
            | Error::DuplicateVertex(_)
            | Error::EmptyQuiver
            | Error::DimensionMismatch { .. }
            | Error::NegativeEntry
            | Error::IndexOutOfRange(_) => EXIT_DATA,
            _ => EXIT_INDETERMINATE,
        };
        Failure { code, message: e.to_string() }
    }
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json, text, code: 0 }
    }
}

fn load(path: &PathBuf) -> Result<Quiver, Failure> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_DATA, message: format!("{}: {e}", path.display()) })?;
    Ok(Quiver::from_json_str(&s)?)
}

fn rat_vec(q: &Quiver, s: &str) -> Result<RatVector, Failure> {
    let v = RatVector::parse(s)?;
    gitcone::error::check_len(q.num_vertices(), v.len())?;
    Ok(v)
}

fn dim_vec(q: &Quiver, s: &str) -> Result<DimVector, Failure> {
    let v = DimVector::parse(s)?;
    gitcone::error::check_len(q.num_vertices(), v.len())?;
    Ok(v)
}

fn cone_text(c: &Cone) -> String {
    let mut out = String::new();
    for r in c.rays() {
        out.push_str(&format!("ray {r}\n"));
    }
    for l in c.lineality() {
        out.push_str(&format!("line {l}\n"));
    }
    out.push_str(&format!("dim {}", c.dim()));
    out
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Classify { quiver } => {
            let ty = load(&quiver)?.classify();
            let text = match ty.delta() {
                Some(d) => format!("{} delta={d}", ty.name()),
                None => ty.name().to_string(),
            };
            Ok(Output::ok(ty.to_json(), text))
        }
        Command::Euler { quiver, a, b } => {
            let q = load(&quiver)?;
            match (a, b) {
                (Some(a), Some(b)) => {
                    let v = q.euler_form(&rat_vec(&q, &a)?, &rat_vec(&q, &b)?)?;
                    Ok(Output::ok(json!({"euler": rational_to_json(&v)}), v.to_string()))
                }
                _ => {
                    let data = q.euler_data();
                    let text = data.euler_matrix.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join("\n");
                    Ok(Output::ok(data.to_json(), text))
                }
            }
        }
        Command::Wt { quiver, alpha } => {
            let q = load(&quiver)?;
            let w = q.wt(&rat_vec(&q, &alpha)?)?;
            Ok(Output::ok(json!({"wt": w.to_json()}), w.to_string()))
        }
        Command::Schur { quiver, beta } => {
            let q = load(&quiver)?;
            let w = schur_witness(&q, &dim_vec(&q, &beta)?)?;
            let text = match &w {
                Some(w) => format!("schur witness={w}"),
                None => "not schur".to_string(),
            };
            Ok(Output::ok(json!({"schur": w.is_some(), "witness": w.as_ref().map(RatVector::to_json)}), text))
        }
        Command::Subdims { quiver, beta } => {
            let q = load(&quiver)?;
            let subs = generic_subs(&q, &dim_vec(&q, &beta)?)?;
            let text = subs.iter().map(DimVector::to_string).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(Value::Array(subs.iter().map(DimVector::to_json).collect()), text))
        }
        Command::Dcone { quiver, beta, generators, bound } => {
            let q = load(&quiver)?;
            let b = dim_vec(&q, &beta)?;
            if generators {
                let g = d_cone_generators(&q, &b, bound)?;
                let c = Cone::from_generators(g.generators)?;
                let mut out = Output::ok(c.to_json(), cone_text(&c));
                if g.bound_too_small {
                    eprintln!("bound {bound} is too small: the generated cone is strictly inside D({b})");
                    out.code = EXIT_INDETERMINATE;
                }
                Ok(out)
            } else {
                let c = d_cone(&q, &b)?;
                Ok(Output::ok(c.to_json(), cone_text(&c)))
            }
        }
        Command::Tubes { quiver } => {
            let t = compute_tubes(&load(&quiver)?)?;
            let text = t
                .tubes
                .iter()
                .map(|tube| tube.iter().map(DimVector::to_string).collect::<Vec<_>>().join(" -> "))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(t.to_json(), format!("delta={}\n{text}", t.delta)))
        }
        Command::Cones { quiver, list } => {
            let cones = maximal_cones(&compute_tubes(&load(&quiver)?)?)?;
            if list {
                let json = cones
                    .iter()
                    .map(|(i, c)| json!({"index": i.0, "rays": c.rays().iter().map(RatVector::to_json).collect::<Vec<_>>()}))
                    .collect();
                let text = cones
                    .iter()
                    .map(|(i, c)| format!("C_{i}: {}", c.rays().iter().map(|r| format!("[{r}]")).collect::<Vec<_>>().join(" ")))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Output::ok(Value::Array(json), text))
            } else {
                Ok(Output::ok(json!({"maximal_cones": cones.len()}), cones.len().to_string()))
            }
        }
        Command::GitconeDelta { quiver, alpha } => {
            let q = load(&quiver)?;
            let a = rat_vec(&q, &alpha)?;
            let c = git_cone_delta(&q, &compute_tubes(&q)?, &a)?;
            Ok(Output::ok(c.to_json(), cone_text(&c)))
        }
        Command::Equiv { quiver, a1, a2, policy } => {
            let q = load(&quiver)?;
            let (a1, a2) = (rat_vec(&q, &a1)?, rat_vec(&q, &a2)?);
            let policy = match policy {
                Some(p) => Policy::parse(&p)?,
                None => match q.classify() {
                    QuiverType::Dynkin => Policy::CompleteDynkin,
                    QuiverType::Euclidean { .. } => Policy::PeriodicEuclidean,
                    QuiverType::Wild => {
                        return Err(Failure {
                            code: EXIT_INDETERMINATE,
                            message: "wild quiver: pass --policy bound:B".into(),
                        })
                    }
                },
            };
            let v = EquivContext::new(&q, policy)
                .map_err(|e| match e {
                    Error::BoxTooLarge(_, _) => Failure {
                        code: EXIT_INDETERMINATE,
                        message: format!("{e}; pass --policy bound:B for a bounded verdict"),
                    },
                    e => e.into(),
                })?
                .decide(&a1, &a2)?;
            let code = match (v.equivalent, v.completeness) {
                (false, _) => EXIT_NO,
                (true, gitcone::equiv::Completeness::Proven) => 0,
                (true, gitcone::equiv::Completeness::Bounded(_)) => EXIT_INDETERMINATE,
            };
            let text = match &v.witness {
                Some(w) => format!("not equivalent witness={w} completeness={}", v.completeness),
                None => format!("equivalent completeness={}", v.completeness),
            };
            Ok(Output { json: v.to_json(), text, code })
        }
        Command::Selfcheck { quiver, seed } => {
            let r = selfcheck(&load(&quiver)?, seed);
            let code = if r.all_passed() { 0 } else { EXIT_NO };
            Ok(Output { json: r.to_json(), text: r.to_text().trim_end().to_string(), code })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let body = match format {
                Format::Json => out.json.to_string(),
                Format::Text => out.text,
            };
            match writeln!(std::io::stdout(), "{body}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_DATA)
                }
                _ => ExitCode::from(out.code),
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
