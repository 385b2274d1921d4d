//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit code.
//!
//! Exit codes: 0 success, 1 a verified relation or identity failed,
//! 2 inconclusive certificate, 64 usage error, 70 internal error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::format_rational;
use crate::certify::{self, Verdict};
use crate::classical::{cohen_h, hurwitz_oracle};
use crate::error::Error;
use crate::freealg;
use crate::lattice;
use crate::lifts::gritsenko_lift;
use crate::weil::{jacobi_eisenstein, Case, PullbackContext};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;
pub const OUT_DIR_ENV: &str = "ORTHOFORMS_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "orthoforms", version, about = "Exact computations with orthogonal and paramodular forms")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write output to this file (relative paths resolve under $ORTHOFORMS_OUT_DIR if set).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Serialize)]
struct FormArgs {
    /// One of D8, E6, E7.
    case: String,
    /// Weight of the Jacobi form.
    #[arg(short)]
    k: i64,
    /// Cusp orbit (D8 only has two).
    #[arg(long, default_value_t = 0)]
    orbit: usize,
    /// Pullback vector, comma separated, in the lattice basis.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    vector: Option<Vec<i64>>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Generator weights and indices of the weak Jacobi ring.
    Table { system: String },
    /// Weights of the free generators.
    Weights { system: String },
    /// Hilbert series of the free algebra.
    Hilbert {
        system: String,
        #[arg(long, default_value_t = 60)]
        order: usize,
    },
    /// Dimension bound from weak Jacobi forms.
    Bound {
        system: String,
        #[arg(short)]
        k: i64,
    },
    /// Compares the free-algebra Hilbert series with the Jacobi-form sum.
    IdentityCheck {
        system: String,
        #[arg(long, default_value_t = 60)]
        order: usize,
    },
    /// Components of a Jacobi Eisenstein series.
    Eisenstein {
        #[command(flatten)]
        #[serde(flatten)]
        form: FormArgs,
        /// Number of integer exponents per component.
        #[arg(long, default_value_t = 4)]
        prec: usize,
    },
    /// Scalar-index pullback of a Jacobi Eisenstein series.
    Pullback {
        #[command(flatten)]
        #[serde(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 4)]
        nmax: i64,
    },
    /// Additive lift of a pulled-back Jacobi Eisenstein series.
    Lift {
        #[command(flatten)]
        #[serde(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 3)]
        nq: i64,
        #[arg(long, default_value_t = 3)]
        nxi: i64,
    },
    /// Independence certificate for the generator lifts of a case.
    Certify {
        case: String,
        #[arg(long)]
        wmax: Option<i64>,
        /// Precision schedule, e.g. 4x4,6x6,8x8.
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        vector: Option<Vec<i64>>,
    },
    /// Checks the weight-14 relation among the D8 lifts.
    VerifyE14 {
        #[arg(long, default_value_t = 5)]
        nq: i64,
        #[arg(long, default_value_t = 5)]
        nxi: i64,
    },
    /// Compares H(1, N) with brute-force class numbers.
    HurwitzCheck {
        #[arg(long, default_value_t = 200)]
        max: u64,
    },
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedRootSystem { .. }
            | Error::UnknownLattice(_)
            | Error::Inadmissible(_)
            | Error::NotInDual(_)
            | Error::ZeroVector
            | Error::DimensionMismatch { .. }
            | Error::InvalidWeight { .. }
            | Error::BeyondTruncation { .. }
            | Error::OddWeightNonCusp(_)
    )
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if is_usage(&e) { EXIT_USAGE } else { EXIT_INTERNAL },
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn parse_case(s: &str) -> Result<Case, Failure> {
    Case::parse(s).ok_or_else(|| usage(format!("unknown case `{s}` (expected D8, E6 or E7)")))
}

fn parse_schedule(items: &[String]) -> Result<Vec<(i64, i64)>, Failure> {
    items
        .iter()
        .map(|s| {
            let (a, b) = s
                .split_once(['x', 'X'])
                .ok_or_else(|| usage(format!("bad precision `{s}`, expected NQxNXI")))?;
            let a: i64 = a.parse().map_err(|_| usage(format!("bad precision `{s}`")))?;
            let b: i64 = b.parse().map_err(|_| usage(format!("bad precision `{s}`")))?;
            if a < 1 || b < 1 {
                return Err(usage(format!("precision `{s}` must be positive")));
            }
            Ok((a, b))
        })
        .collect()
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn resolve_vector(case: Case, v: &Option<Vec<i64>>) -> Result<(Vec<i64>, i64), Failure> {
    let v = v.clone().unwrap_or_else(|| case.default_vector());
    let lat = case.lattice();
    let q = lattice::norm_int(&lat, &v)?;
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector.into());
    }
    Ok((v, q.to_integer()))
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Table { system } => {
            let rec = freealg::record(system)?;
            let gens: Vec<String> = rec.generators.iter().map(|(k, m)| format!("({k},{m})")).collect();
            Ok(Output::ok(
                gens.join(","),
                serde_json::to_value(&rec).expect("serializable"),
            ))
        }
        Command::Weights { system } => {
            let w = freealg::orthogonal_weights(system)?;
            let rec = freealg::record(system)?;
            Ok(Output::ok(
                join(&w, " "),
                json!({"system": rec.name, "group": rec.group, "weights": w}),
            ))
        }
        Command::Hilbert { system, order } => {
            let w = freealg::orthogonal_weights(system)?;
            let h = freealg::hilbert_series(&w, *order);
            Ok(Output::ok(
                join(&h, " "),
                json!({"system": system, "weights": w, "order": order,
                       "coefficients": h.iter().map(|x| x.to_string()).collect::<Vec<_>>()}),
            ))
        }
        Command::Bound { system, k } => {
            let b = freealg::dim_upper_bound(system, *k)?;
            let d = freealg::delta(system)?;
            Ok(Output::ok(
                b.to_string(),
                json!({"system": system, "k": k, "bound": b, "delta": d.to_string()}),
            ))
        }
        Command::IdentityCheck { system, order } => {
            let r = freealg::hilbert_identity_check(system, *order)?;
            let text = match r.first_mismatch {
                None => format!("{system}: equal through t^{order}"),
                Some(i) => format!(
                    "{system}: mismatch at t^{i} (free algebra {}, Jacobi side {})",
                    r.free_side[i], r.jacobi_side[i]
                ),
            };
            let code = if r.equal { 0 } else { 1 };
            Ok(Output {
                text,
                json: serde_json::to_value(&r).expect("serializable"),
                code,
            })
        }
        Command::Eisenstein { form, prec } => {
            let case = parse_case(&form.case)?;
            let f = jacobi_eisenstein(case, form.k, form.orbit, *prec)?;
            let mut lines = vec![format!(
                "{case:?} weight {} (components of weight {})",
                f.jacobi_weight(),
                f.weight
            )];
            for (c, s) in f.lattice.cosets.iter().zip(&f.components) {
                lines.push(format!("[{}] Q = {}: {}", join(&c.rep, ","), c.norm_mod1, s.render_plain()));
            }
            Ok(Output::ok(lines.join("\n"), f.to_json()))
        }
        Command::Pullback { form, nmax } => {
            let case = parse_case(&form.case)?;
            let (v, q) = resolve_vector(case, &form.vector)?;
            let ctx = PullbackContext::new(case.lattice(), &v, *nmax)?;
            let f = jacobi_eisenstein(case, form.k, form.orbit, *nmax as usize + 1)?;
            let j = ctx.pullback(&f)?;
            let mut lines = vec![format!("Q(v) = {q}; weight {}, index {}", j.weight, j.index)];
            for ((n, r), c) in j.entries().filter(|((_, r), _)| *r >= 0) {
                lines.push(format!("c({n},{r}) = {}", format_rational(c)));
            }
            let mut js = j.to_json();
            js["vector"] = json!(v);
            js["norm"] = json!(q);
            Ok(Output::ok(lines.join("\n"), js))
        }
        Command::Lift { form, nq, nxi } => {
            let case = parse_case(&form.case)?;
            let (v, q) = resolve_vector(case, &form.vector)?;
            let nmax = nq * nxi;
            let ctx = PullbackContext::new(case.lattice(), &v, nmax)?;
            let f = jacobi_eisenstein(case, form.k, form.orbit, nmax as usize + 1)?;
            let j = ctx.pullback(&f)?;
            let l = gritsenko_lift(&j, *nq, *nxi)?;
            let mut lines = vec![format!("Q(v) = {q}; weight {}, level {}, precision ({nq},{nxi})", l.weight, l.level)];
            let mut entries = l.entries();
            entries.sort_by_key(|e| e.0);
            for ((n, r, bm), c) in entries.iter().filter(|((_, r, _), _)| *r >= 0) {
                lines.push(format!("A({n},{r},{bm}) = {}", format_rational(c)));
            }
            let mut js = l.to_json();
            js["vector"] = json!(v);
            js["norm"] = json!(q);
            Ok(Output::ok(lines.join("\n"), js))
        }
        Command::Certify {
            case,
            wmax,
            schedule,
            vector,
        } => {
            let case = parse_case(case)?;
            let wmax = wmax.unwrap_or(match case {
                Case::D8 => 14,
                _ => 16,
            });
            let schedule = match schedule {
                Some(s) => parse_schedule(s)?,
                None => certify::DEFAULT_SCHEDULE.to_vec(),
            };
            if let Some(v) = vector {
                resolve_vector(case, &Some(v.clone()))?;
            }
            let mut progress = |r: &certify::WeightRecord| {
                let line = json!({"progress": {"w": r.w, "monomials": r.monomials.len(),
                    "rank": r.rank, "verdict": r.verdict,
                    "precision": [r.precision.nq, r.precision.nxi]}});
                eprintln!("{line}");
            };
            let cert = certify::certify_case(case, wmax, &schedule, vector.clone(), &mut progress)?;
            let sys = certify::bound_system(case);
            let mut lines = vec![format!(
                "{}: {} generators, precision up to ({},{})",
                cert.case,
                cert.generators.len(),
                cert.precision.nq,
                cert.precision.nxi
            )];
            let mut bounds = Vec::new();
            for r in &cert.weights {
                let ub = freealg::dim_upper_bound(sys, r.w)?;
                bounds.push(json!({"w": r.w, "upper_bound": ub}));
                lines.push(format!(
                    "w={:<3} monomials={:<3} rank={:<3} bound={:<3} {} at ({},{})",
                    r.w,
                    r.monomials.len(),
                    r.rank,
                    ub,
                    match r.verdict {
                        Verdict::Independent => "independent",
                        Verdict::Inconclusive => "inconclusive",
                    },
                    r.precision.nq,
                    r.precision.nxi
                ));
            }
            for rel in &cert.relations {
                lines.push(format!("candidate relation in weight {}: [{}]", rel.w, rel.coefficients.join(", ")));
            }
            let code = cert.exit_code();
            let mut js = serde_json::to_value(&cert).expect("serializable");
            js["bounds"] = json!({"system": sys, "values": bounds});
            Ok(Output {
                text: lines.join("\n"),
                json: js,
                code,
            })
        }
        Command::VerifyE14 { nq, nxi } => {
            if *nq < 1 || *nxi < 1 {
                return Err(usage("precision must be positive"));
            }
            let rep = certify::verify_e14(*nq, *nxi)?;
            let mut lines = vec![format!(
                "{} = a*{} + b*{} + c*{} at precision ({nq},{nxi})",
                rep.target, rep.basis[0], rep.basis[1], rep.basis[2]
            )];
            if let Some(c) = &rep.coefficients {
                lines.push(format!("coefficients: {}", c.join(" ")));
            }
            lines.push(format!("expected:     {}", rep.expected.join(" ")));
            lines.push(format!("status: {:?}", rep.status).to_lowercase());
            if let Some(d) = &rep.diagnostic {
                lines.push(format!("diagnostic: {d}"));
            }
            let code = rep.exit_code();
            Ok(Output {
                text: lines.join("\n"),
                json: serde_json::to_value(&rep).expect("serializable"),
                code,
            })
        }
        Command::HurwitzCheck { max } => {
            let mut bad = Vec::new();
            for n in 1..=*max {
                let formula = cohen_h(1, n);
                let oracle = hurwitz_oracle(n);
                if formula != oracle {
                    bad.push(json!({"n": n, "formula": format_rational(&formula),
                                    "oracle": format_rational(&oracle)}));
                }
            }
            let agree = *max as usize - bad.len();
            let code = if bad.is_empty() { 0 } else { 1 };
            Ok(Output {
                text: format!("{agree}/{max} agree"),
                json: json!({"max": max, "agree": agree, "mismatches": bad}),
                code,
            })
        }
    }
}

fn destination(output: &Option<PathBuf>, command: &str, format: Format) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (output, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(d)) => {
            let ext = match format {
                Format::Plain => "txt",
                Format::Json => "json",
            };
            Some(d.join(format!("{command}.{ext}")))
        }
        (None, None) => None,
    }
}

fn command_name(cmd: &Command) -> String {
    serde_json::to_value(cmd)
        .ok()
        .and_then(|v| v.get("command").and_then(|c| c.as_str()).map(String::from))
        .unwrap_or_else(|| "output".into())
}

/// Runs the command line `argv` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let name = command_name(&cli.command);
    let dest = destination(&cli.output, &name, cli.format);
    let config = json!({
        "command": serde_json::to_value(&cli.command).unwrap_or(Value::Null),
        "format": cli.format,
        "output": dest.as_ref().map(|p| p.display().to_string()),
    });
    let out = match execute(&cli.command) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            return f.code;
        }
    };
    let body = match cli.format {
        Format::Plain => {
            eprintln!("config: {config}");
            let mut s = out.text;
            s.push('\n');
            s
        }
        Format::Json => {
            let mut v = json!({"config": config});
            v["result"] = out.json;
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
    };
    let written = match &dest {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(parent) {
                    eprintln!("error: {e}");
                    return EXIT_INTERNAL;
                }
            }
            std::fs::write(p, body.as_bytes())
        }
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INTERNAL;
    }
    out.code
}
