//! Command line: `verify`, `eval` and `list-identities`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qmock_core::identities::IdentityId;
use qmock_core::mocktheta::{eval, Family, Form, FunctionId, ParameterPoint, Psi3Denominator};
use qmock_core::qcore::TruncationPolicy;
use qmock_core::{bits_for_digits, HPComplex, Real, DEFAULT_DIGITS};

use crate::config::{build, read_file};
use crate::report::{render, series_line};
use crate::suite::run_suite;
use crate::{HarnessError, Result, EXIT_CONFIG, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "qmock", version, about = "Evaluate generalized mock theta functions and check their expansions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run identity checks over a set of points and write a JSON-lines report.
    Verify(VerifyArgs),
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Print the identity catalog.
    ListIdentities,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Identity id such as 4.1; repeatable.
    #[arg(long = "identity")]
    identity: Vec<String>,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    tail_tol: Option<String>,
    #[arg(long)]
    assert_tol: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of sampled points.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Leave the timestamp out of the header.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// psi0, psi1, psi2, psi3, phi0 or phi1.
    #[arg(long)]
    function: String,
    /// classical, generalized or complete.
    #[arg(long, default_value = "classical")]
    variant: String,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    tail_tol: Option<f64>,
    /// as-printed or neg-q, for the classical psi3.
    #[arg(long, default_value = "as-printed")]
    psi3_denominator: String,
}

pub fn catalog() -> String {
    let mut s = String::new();
    for id in IdentityId::ALL {
        s.push_str(&format!(
            "{:<4} {:<12} {:<22} {}\n",
            id.name(),
            id.trust().name(),
            id.parameters(),
            id.description()
        ));
    }
    s
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let mut kv: BTreeMap<String, String> = match &a.config {
        Some(p) => read_file(p)?,
        None => BTreeMap::new(),
    };
    let mut set = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            kv.insert(k.to_string(), v);
        }
    };
    set("identities", (!a.identity.is_empty()).then(|| a.identity.join(",")));
    set("precision", a.precision.map(|v| v.to_string()));
    set("max_terms", a.max_terms.map(|v| v.to_string()));
    set("tail_tol", a.tail_tol);
    set("assert_tol", a.assert_tol);
    set("seed", a.seed.map(|v| v.to_string()));
    set("count", a.count.map(|v| v.to_string()));
    set("points", a.points.map(|p| p.display().to_string()));
    set("out", a.out.map(|p| p.display().to_string()));
    set("threads", a.threads.map(|v| v.to_string()));
    let cfg = build(&kv)?;
    let run = run_suite(&cfg)?;
    let ts = if a.no_timestamp {
        None
    } else {
        Some(std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
    };
    let text = render(&run, ts);
    match &cfg.output {
        Some(p) => std::fs::write(p, &text).map_err(|e| HarnessError::Io(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    eprintln!(
        "{} records, {} rejections, established failures: {}",
        run.records().count(),
        run.rejections().count(),
        if run.failed() { "yes" } else { "none" }
    );
    Ok(run.exit_code())
}

fn eval_cmd(a: EvalArgs) -> Result<i32> {
    let digits = a.precision.unwrap_or(DEFAULT_DIGITS);
    if digits == 0 {
        return Err(HarnessError::Usage("precision must be positive".into()));
    }
    let bits = bits_for_digits(digits);
    let family = Family::parse(&a.function).ok_or_else(|| HarnessError::Usage(format!("unknown function {:?}", a.function)))?;
    let form = Form::parse(&a.variant).ok_or_else(|| HarnessError::Usage(format!("unknown variant {:?}", a.variant)))?;
    let psi3 = match a.psi3_denominator.as_str() {
        "as-printed" => Psi3Denominator::AsPrinted,
        "neg-q" => Psi3Denominator::NegQ,
        other => return Err(HarnessError::Usage(format!("unknown psi3 denominator {other:?}"))),
    };
    let num = |name: &str, v: &Option<String>, required: bool| -> Result<HPComplex> {
        match v {
            Some(s) => HPComplex::parse(s, bits).ok_or_else(|| HarnessError::Usage(format!("bad value {s:?} for --{name}"))),
            None if required => Err(HarnessError::Usage(format!("missing --{name}"))),
            None => Ok(HPComplex::zero(bits)),
        }
    };
    let needs_point = form != Form::Classical;
    let q = num("q", &a.q, true)?;
    let z = num("z", &a.z, needs_point)?;
    let t = num("t", &a.t, false)?;
    let alpha = num("alpha", &a.alpha, needs_point)?;
    if !alpha.im.is_zero() {
        return Err(HarnessError::Usage("alpha must be real".into()));
    }
    let mut policy = TruncationPolicy::default();
    if let Some(m) = a.max_terms {
        policy.max_terms = m;
    }
    if let Some(t) = a.tail_tol {
        policy.tail_tol = t;
    }
    policy.validate().map_err(|e| HarnessError::Usage(e.to_string()))?;
    let zero = HPComplex::zero(bits);
    let p = ParameterPoint { q, z, t, alpha: Real::with_prec(&alpha.re, bits), c1: zero.clone(), c2: zero };
    let r = eval(FunctionId { family, form }, &p, psi3, &policy).map_err(|e| match e.root() {
        qmock_core::Error::Domain(_) | qmock_core::Error::Usage(_) => HarnessError::Usage(e.to_string()),
        _ => HarnessError::Usage(format!("evaluation failed: {e}")),
    })?;
    let label = format!("function={} variant={}", family.name(), form.name());
    println!("{}", series_line(&label, &r, digits));
    Ok(EXIT_OK)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = match cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Eval(a) => eval_cmd(a),
        Cmd::ListIdentities => {
            print!("{}", catalog());
            Ok(EXIT_OK)
        }
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qmock: {e}");
            e.exit_code()
        }
    }
}
