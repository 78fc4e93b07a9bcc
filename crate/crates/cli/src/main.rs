//! `quivmod`: command-line front end for the quiver moduli library.
//!
//! Every verb reads a quiver file and prints a JSON report on stdout.
//! Exit codes: 0 success, 1 domain or file error, 2 usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quiver_moduli::classify::classify;
use quiver_moduli::doubling::{
    bipartify_with, double_vertex, lift_dimension, lift_weight, sufficient_n, NChoice,
};
use quiver_moduli::forms::{euler_form, tits_form};
use quiver_moduli::local::{
    local_setting, moduli_smooth_with, rep_types_with, setting_smooth, singular_witness_with,
    ModuliVerdict, RepType,
};
use quiver_moduli::stability::verify_doubling_report;
use quiver_moduli::toric::presentation_with;
use quiver_moduli::{
    load_quiver, DimVector, Error, Exec, GenericExt, Quiver, Weight, DEFAULT_MAX_BOX,
};

const VECTOR_HELP: &str = "Vectors and weights are given inline in vertex order (`1,0,-2`), \
as a JSON object mapping vertex ids to integers (`{\"1\":1,\"2\":0}`), \
or read from a file with `@path` (either form).";

#[derive(Parser)]
#[command(name = "quivmod", version, about = "Smoothness of quiver moduli spaces", after_help = VECTOR_HELP)]
struct Cli {
    /// Cap on enumeration boxes; values above 1000000 are allowed with a warning.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BOX)]
    max_box: u64,

    /// Run without data parallelism. Output is identical either way.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Quiver file: JSON with `vertices` and `arrows` (`id`, `from`, `to`).
    quiver: PathBuf,
}

#[derive(Args)]
struct Moduli {
    #[command(flatten)]
    input: Input,
    /// Dimension vector.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Stability weight.
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
}

#[derive(Args)]
struct Shift {
    /// Doubling shift: `auto` (sufficient bound) or a non-negative integer.
    #[arg(long, default_value = "auto")]
    n: String,
}

#[derive(Subcommand)]
enum Command {
    /// Dynkin / extended Dynkin / wild, with both certificates.
    Classify(Input),
    /// Euler form of `alpha` with `beta`, or the Tits form of `alpha`.
    Form {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Double one vertex, optionally lifting a dimension vector and weight.
    Double {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        vertex: String,
        #[arg(long, allow_hyphen_values = true, requires = "theta")]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "alpha")]
        theta: Option<String>,
        #[command(flatten)]
        shift: Shift,
    },
    /// Double every vertex in turn.
    Bipartify {
        #[command(flatten)]
        moduli: Moduli,
        #[command(flatten)]
        shift: Shift,
    },
    /// Semistable and stable dimension vectors below `alpha`.
    StableDims(Moduli),
    /// Representation types of the semistable locus.
    RepTypes(Moduli),
    /// Local quiver settings with their verdicts, for one type or all.
    Local {
        #[command(flatten)]
        moduli: Moduli,
        /// One type as `beta:m` slots separated by `;`, e.g. `1,0:2;0,1:1`.
        #[arg(long = "type")]
        rep_type: Option<String>,
    },
    /// Smoothness verdict for the moduli space.
    Smooth(Moduli),
    /// Singular moduli space for a wild quiver.
    Witness(Input),
    /// Sections, relations and chart verdict for a thin moduli space.
    Toric {
        #[command(flatten)]
        input: Input,
        /// Weight on the (bipartite) quiver.
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, default_value_t = 3)]
        degree_bound: i64,
    },
    /// Check the semistable correspondence under doubling at one vertex.
    VerifyDoubling {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long, allow_hyphen_values = true)]
        vertex: String,
        #[command(flatten)]
        shift: Shift,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.max_box > DEFAULT_MAX_BOX {
        eprintln!(
            "warning: --max-box {} exceeds the default {DEFAULT_MAX_BOX}; runs may be slow",
            cli.max_box
        );
    }
    match execute(&cli) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<Quiver, Error> {
    load_quiver(&read(&input.quiver)?)
}

fn vector_text(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path)),
        None => Ok(arg.to_string()),
    }
}

fn dim(q: &Quiver, arg: &str) -> Result<DimVector, Error> {
    q.dim(&q.parse_vector(&vector_text(arg)?)?)
}

fn weight(q: &Quiver, arg: &str) -> Result<Weight, Error> {
    q.weight(&q.parse_vector(&vector_text(arg)?)?)
}

fn n_choice(arg: &str) -> Result<NChoice, Error> {
    if arg == "auto" {
        return Ok(NChoice::Auto);
    }
    match arg.parse::<i64>() {
        Ok(n) if n >= 0 => Ok(NChoice::Fixed(n)),
        _ => Err(Error::InvalidArgument(format!(
            "--n must be `auto` or a non-negative integer, got `{arg}`"
        ))),
    }
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn generic(cli: &Cli, q: &Quiver) -> GenericExt {
    GenericExt::new(q)
        .with_max_box(cli.max_box)
        .with_exec(exec(cli))
}

fn vectors(q: &Quiver, vs: &[DimVector]) -> Vec<Value> {
    vs.iter().map(|v| q.vector_json(v.entries())).collect()
}

/// Parses `beta:m;beta:m`, each `beta` inline in vertex order.
fn parse_type(q: &Quiver, text: &str) -> Result<RepType, Error> {
    let slots = text
        .split(';')
        .map(|slot| {
            let (beta, m) = slot
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("type slot `{slot}` is not `beta:m`")))?;
            let m = m
                .trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad multiplicity `{m}`: {e}")))?;
            Ok((dim(q, beta)?, m))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    RepType::new(slots)
}

fn execute(cli: &Cli) -> Result<Value, Error> {
    match &cli.command {
        Command::Classify(input) => {
            let q = load(input)?;
            let c = classify(&q)?;
            Ok(json!({
                "kind": c.kind.to_string(),
                "shape": c.shape,
                "certificate": c.certificate,
                "rule": "form-and-shape",
            }))
        }
        Command::Form { input, alpha, beta } => {
            let q = load(input)?;
            let a = dim(&q, alpha)?;
            match beta {
                Some(b) => {
                    let b = dim(&q, b)?;
                    Ok(json!({
                        "alpha": q.vector_json(a.entries()),
                        "beta": q.vector_json(b.entries()),
                        "euler_form": euler_form(&q, &a, &b)?,
                        "rule": "ringel-form",
                    }))
                }
                None => Ok(json!({
                    "alpha": q.vector_json(a.entries()),
                    "tits_form": tits_form(&q, &a)?,
                    "rule": "tits-form",
                })),
            }
        }
        Command::Double {
            input,
            vertex,
            alpha,
            theta,
            shift,
        } => {
            let q = load(input)?;
            let d = double_vertex(&q, vertex)?;
            let mut report = d.to_json();
            if let (Some(alpha), Some(theta)) = (alpha, theta) {
                let a = dim(&q, alpha)?;
                let t = weight(&q, theta)?;
                let n = match n_choice(&shift.n)? {
                    NChoice::Auto => sufficient_n(&a, &t)?,
                    NChoice::Fixed(n) => n,
                };
                let r = d.result();
                report["n"] = json!(n);
                report["alpha"] = r.vector_json(lift_dimension(&a, &d)?.entries());
                report["theta"] = r.vector_json(lift_weight(&t, &d, n)?.entries());
            }
            report["rule"] = json!("vertex-doubling");
            Ok(report)
        }
        Command::Bipartify { moduli, shift } => {
            let q = load(&moduli.input)?;
            let a = dim(&q, &moduli.alpha)?;
            let t = weight(&q, &moduli.theta)?;
            let mut report = bipartify_with(&q, &a, &t, n_choice(&shift.n)?)?.to_json();
            report["rule"] = json!("bipartify");
            Ok(report)
        }
        Command::StableDims(m) => {
            let q = load(&m.input)?;
            let (a, t) = (dim(&q, &m.alpha)?, weight(&q, &m.theta)?);
            let g = generic(cli, &q);
            Ok(json!({
                "alpha": q.vector_json(a.entries()),
                "theta": q.vector_json(t.entries()),
                "semistable": vectors(&q, &g.enumerate_semistable(&a, &t)?),
                "stable": vectors(&q, &g.enumerate_stable(&a, &t)?),
                "rule": "king-generic-subdims",
            }))
        }
        Command::RepTypes(m) => {
            let q = load(&m.input)?;
            let (a, t) = (dim(&q, &m.alpha)?, weight(&q, &m.theta)?);
            let types = rep_types_with(&generic(cli, &q), &a, &t)?;
            Ok(json!({
                "alpha": q.vector_json(a.entries()),
                "theta": q.vector_json(t.entries()),
                "types": types.iter().map(|ty| ty.to_json()).collect::<Vec<_>>(),
                "rule": "stable-decompositions",
            }))
        }
        Command::Local { moduli, rep_type } => {
            let q = load(&moduli.input)?;
            let (a, t) = (dim(&q, &moduli.alpha)?, weight(&q, &moduli.theta)?);
            let types = match rep_type {
                Some(text) => {
                    let ty = parse_type(&q, text)?;
                    if ty.total(q.vertex_count()) != a {
                        return Err(Error::InvalidArgument(format!(
                            "type {ty} does not sum to alpha {a}"
                        )));
                    }
                    vec![ty]
                }
                None => rep_types_with(&generic(cli, &q), &a, &t)?,
            };
            let settings = types
                .iter()
                .map(|ty| {
                    let s = local_setting(&q, ty)?;
                    let v = setting_smooth(&s);
                    Ok(json!({
                        "type": ty.to_json(),
                        "setting": s.to_json(),
                        "verdict": v.verdict.to_string(),
                        "rule": v.rule,
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(json!({ "settings": settings }))
        }
        Command::Smooth(m) => {
            let q = load(&m.input)?;
            let (a, t) = (dim(&q, &m.alpha)?, weight(&q, &m.theta)?);
            let report = moduli_smooth_with(&generic(cli, &q), &a, &t)?;
            let mut out = report.to_json();
            out["rule"] = json!(match report.verdict {
                ModuliVerdict::Empty => "not-semistable",
                ModuliVerdict::Decided(_) => "worst-local-setting",
            });
            Ok(out)
        }
        Command::Witness(input) => {
            let q = load(input)?;
            let kind = classify(&q)?.kind;
            match singular_witness_with(&generic(cli, &q))? {
                Some(w) => {
                    let mut out = w.to_json(&q);
                    out["kind"] = json!(kind.to_string());
                    Ok(out)
                }
                None => Ok(json!({
                    "kind": kind.to_string(),
                    "witness": null,
                    "rule": "tame-has-no-witness",
                })),
            }
        }
        Command::Toric {
            input,
            sigma,
            degree_bound,
        } => {
            let q = load(input)?;
            let s = weight(&q, sigma)?;
            let p = presentation_with(&q, &s, *degree_bound, exec(cli))?;
            Ok(p.to_json(&q))
        }
        Command::VerifyDoubling {
            moduli,
            vertex,
            shift,
        } => {
            let q = load(&moduli.input)?;
            let (a, t) = (dim(&q, &moduli.alpha)?, weight(&q, &moduli.theta)?);
            let d = double_vertex(&q, vertex)?;
            let n = match n_choice(&shift.n)? {
                NChoice::Auto => sufficient_n(&a, &t)?,
                NChoice::Fixed(n) => n,
            };
            let check = verify_doubling_report(
                &generic(cli, &q),
                &generic(cli, d.result()),
                &a,
                &t,
                &d,
                n,
            )?;
            let r = d.result();
            Ok(json!({
                "vertex": vertex,
                "n": check.n,
                "alpha": r.vector_json(&check.lifted_alpha),
                "theta": r.vector_json(&check.lifted_theta),
                "semistable_count": check.semistable_count,
                "holds": check.holds(),
                "failures": check.failures,
                "rule": "doubling-correspondence",
            }))
        }
    }
}
