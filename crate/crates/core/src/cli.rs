//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 malformed input, 3 violated
//! precondition, 4 internal error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::admissible::{
    check_alpha_self, check_beta_self, check_greedy_vs_alpha, check_quasi_vs_alpha,
    AdmissibilityReport, Verdict, Witness,
};
use crate::error::Error;
use crate::expand::{
    digit_bound_check, greedy_expand, quasi_greedy_expand, ExpansionResult, Mode,
    DEFAULT_MAX_DIGITS,
};
use crate::recover::{base_from_alpha, base_from_beta};
use crate::relate::enumerate_between;
use crate::scalar::{BaseKind, BaseSpec, QElement};
use crate::sequence::{Bound, DigitSeq, Seq};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "betaexp",
    version,
    about = "Greedy and quasi-greedy expansions in a base q > 1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand x in base q.
    Expand(ExpandArgs),
    /// Check a lexicographic admissibility condition.
    Check(CheckArgs),
    /// Recover q from its expansion of 1.
    Recover(RecoverArgs),
    /// Show greedy and quasi-greedy expansions of x side by side.
    Relate(RelateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Greedy,
    Quasi,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    base: String,
    #[arg(long = "M", value_name = "int|inf")]
    m: String,
    #[arg(long)]
    x: String,
    #[arg(long, default_value_t = DEFAULT_MAX_DIGITS)]
    digits: usize,
    #[arg(long)]
    no_cycle_detect: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConditionArg {
    Alpha,
    Beta,
    QuasiVsAlpha,
    GreedyVsAlpha,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    condition: ConditionArg,
    #[arg(long)]
    seq: String,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long = "M", value_name = "int|inf")]
    m: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FromArg {
    Alpha,
    Beta,
}

#[derive(Debug, Args)]
struct RecoverArgs {
    #[arg(long, value_enum)]
    from: FromArg,
    #[arg(long)]
    seq: String,
    #[arg(long = "M", value_name = "int|inf")]
    m: String,
    #[arg(long, default_value_t = 10)]
    decimals: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct RelateArgs {
    #[arg(long)]
    base: String,
    #[arg(long = "M", value_name = "int|inf")]
    m: String,
    #[arg(long)]
    x: String,
    #[arg(long)]
    enumerate: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_DIGITS)]
    digits: usize,
    #[arg(long)]
    json: bool,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(err: &Error) -> Self {
        let code = match err {
            Error::Parse(_)
            | Error::NoRootInInterval
            | Error::MultipleRootsInInterval
            | Error::DigitExceedsBound { .. } => EXIT_PARSE,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_PRECONDITION,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Runs the CLI on `args` (including the program name) without touching the
/// process's standard streams.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(EXIT_OK, text),
                _ => Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let result = match cli.command {
        Command::Expand(a) => cmd_expand(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Recover(a) => cmd_recover(&a),
        Command::Relate(a) => cmd_relate(&a),
    };
    result.unwrap_or_else(|e| Outcome::failure(&e))
}

type CmdResult = crate::error::Result<Outcome>;

#[derive(Serialize)]
struct BaseJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

impl BaseJson {
    fn new(base: &BaseSpec, decimals: usize) -> Self {
        match base.kind() {
            BaseKind::Rational(r) => BaseJson {
                kind: "rational",
                poly: None,
                interval: None,
                value: Some(r.to_string()),
            },
            BaseKind::Algebraic { poly, interval } => BaseJson {
                kind: "algebraic",
                poly: Some(join(poly)),
                interval: Some([interval.0.to_string(), interval.1.to_string()]),
                value: Some(base.q().to_decimal(decimals)),
            },
            BaseKind::Unit => BaseJson {
                kind: "unit",
                poly: None,
                interval: None,
                value: Some("1".into()),
            },
        }
    }
}

#[derive(Serialize)]
struct ReportJson {
    condition: String,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct WitnessJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl ReportJson {
    fn new(r: &AdmissibilityReport) -> Self {
        ReportJson {
            condition: r.condition.to_string(),
            verdict: r.verdict.to_string(),
            witness: r.witness.as_ref().map(|w| match w {
                Witness::Finite => WitnessJson {
                    index: None,
                    tail: None,
                    reference: None,
                    reason: Some(w.to_string()),
                },
                Witness::Tail {
                    index,
                    tail,
                    reference,
                } => WitnessJson {
                    index: Some(*index),
                    tail: Some(tail.to_string()),
                    reference: Some(reference.to_string()),
                    reason: None,
                },
            }),
        }
    }
}

#[derive(Serialize)]
struct ExpandJson {
    mode: String,
    base: BaseJson,
    #[serde(rename = "M")]
    m: String,
    x: String,
    digits: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
    checks: ExpandChecks,
}

#[derive(Serialize)]
struct ExpandChecks {
    remainder: String,
    x_decimal: String,
    admissibility: ReportJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    digit_bound: Option<bool>,
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_seq(text: &str, bound: &Bound) -> crate::error::Result<DigitSeq> {
    DigitSeq::parse(text, bound.clone())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Admissibility of an expansion against the conditions that characterize
/// its generator. Expansions of 1 use the self conditions.
fn expansion_report(res: &ExpansionResult) -> crate::error::Result<AdmissibilityReport> {
    let seq = res.sequence();
    if res.x.value_eq(&res.base.one()) {
        return Ok(match res.mode {
            Mode::Greedy => check_beta_self(&seq, &res.bound),
            Mode::QuasiGreedy => check_alpha_self(&seq, &res.bound),
        });
    }
    let one = res.base.one();
    let alpha = quasi_greedy_expand(
        &res.base,
        &res.bound,
        &one,
        DEFAULT_MAX_DIGITS.max(res.digits.len()),
        true,
    )?
    .sequence();
    match res.mode {
        Mode::Greedy => check_greedy_vs_alpha(&seq, &alpha, &res.bound),
        Mode::QuasiGreedy => check_quasi_vs_alpha(&seq, &alpha, &res.bound),
    }
}

fn cmd_expand(a: &ExpandArgs) -> CmdResult {
    let base = BaseSpec::parse(&a.base)?;
    let bound = Bound::parse(&a.m)?;
    let x = QElement::parse(&a.x, &base)?;
    if a.digits == 0 {
        return Err(Error::Parse("--digits must be positive".into()));
    }
    let res = match a.mode {
        ModeArg::Greedy => greedy_expand(&base, &bound, &x, a.digits, !a.no_cycle_detect)?,
        ModeArg::Quasi => quasi_greedy_expand(&base, &bound, &x, a.digits, !a.no_cycle_detect)?,
    };
    let remainder = res.prefix_defect()?;
    let report = expansion_report(&res)?;
    let digit_bound = if bound.is_infinite() {
        Some(digit_bound_check(&res)?)
    } else {
        None
    };

    if a.json {
        let out = ExpandJson {
            mode: res.mode.to_string(),
            base: BaseJson::new(&base, 10),
            m: bound.to_string(),
            x: x.to_string(),
            digits: res.digits.digits().iter().map(digit_json).collect(),
            closed_form: res.closed_form.as_ref().map(|c| c.to_string()),
            checks: ExpandChecks {
                remainder: remainder.to_string(),
                x_decimal: x.to_decimal(10),
                admissibility: ReportJson::new(&report),
                digit_bound,
            },
        };
        return Ok(Outcome::ok(EXIT_OK, to_json(&out)));
    }

    let mut s = String::new();
    s += &format!("mode: {}\n", res.mode);
    s += &format!("base: {base}\n");
    s += &format!("M: {bound}\n");
    s += &format!("x: {x}\n");
    s += &format!("x decimal: {}\n", x.to_decimal(10));
    s += &format!("digits: {}\n", join(res.digits.digits()));
    match &res.closed_form {
        Some(c) => s += &format!("closed_form: {c}\n"),
        None => s += &format!("closed_form: none within {} digits\n", res.digits.len()),
    }
    s += &format!("remainder: {remainder}\n");
    s += &format!("check {}: {}\n", report.condition, report.verdict);
    if let Some(ok) = digit_bound {
        s += &format!("digit bound: {}\n", if ok { "holds" } else { "violated" });
    }
    Ok(Outcome::ok(EXIT_OK, s))
}

fn digit_json(d: &num_bigint::BigUint) -> Value {
    use num_traits::ToPrimitive;
    match d.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(d.to_string()),
    }
}

fn cmd_check(a: &CheckArgs) -> CmdResult {
    let bound = Bound::parse(&a.m)?;
    let seq = parse_seq(&a.seq, &bound)?;
    let alpha = |a: &CheckArgs| -> crate::error::Result<DigitSeq> {
        let text = a
            .alpha
            .as_deref()
            .ok_or_else(|| Error::Parse("--alpha is required for this condition".into()))?;
        parse_seq(text, &bound)
    };
    let report = match a.condition {
        ConditionArg::Alpha => check_alpha_self(&seq, &bound),
        ConditionArg::Beta => check_beta_self(&seq, &bound),
        ConditionArg::QuasiVsAlpha => check_quasi_vs_alpha(&seq, &alpha(a)?, &bound)?,
        ConditionArg::GreedyVsAlpha => check_greedy_vs_alpha(&seq, &alpha(a)?, &bound)?,
    };
    let code = match report.verdict {
        Verdict::Admissible => EXIT_OK,
        _ => EXIT_NEGATIVE,
    };
    if a.json {
        return Ok(Outcome::ok(code, to_json(&ReportJson::new(&report))));
    }
    let mut s = format!(
        "condition: {}\nverdict: {}\n",
        report.condition, report.verdict
    );
    if let Some(w) = &report.witness {
        s += &format!("witness: {w}\n");
    }
    Ok(Outcome::ok(code, s))
}

#[derive(Serialize)]
struct RecoverJson {
    from: &'static str,
    seq: String,
    #[serde(rename = "M")]
    m: String,
    base: BaseJson,
}

fn cmd_recover(a: &RecoverArgs) -> CmdResult {
    let bound = Bound::parse(&a.m)?;
    let seq = parse_seq(&a.seq, &bound)?;
    let (from, base) = match a.from {
        FromArg::Alpha => ("alpha", base_from_alpha(&seq, &bound)?),
        FromArg::Beta => ("beta", base_from_beta(&seq, &bound)?),
    };
    if a.json {
        let out = RecoverJson {
            from,
            seq: seq.to_string(),
            m: bound.to_string(),
            base: BaseJson::new(&base, a.decimals),
        };
        return Ok(Outcome::ok(EXIT_OK, to_json(&out)));
    }
    let s = match base.kind() {
        BaseKind::Unit => "q = 1 (convention)\n".to_string(),
        BaseKind::Rational(r) => format!("q = {r}\n"),
        BaseKind::Algebraic { poly, interval } => {
            let dec = base.q().to_decimal(a.decimals);
            let value = match dec.strip_prefix('≈') {
                Some(rest) => format!("q ≈ {rest}"),
                None => format!("q = {dec}"),
            };
            format!(
                "poly: {}  {value}\ninterval: ({}, {})\n",
                join(poly),
                interval.0,
                interval.1
            )
        }
    };
    Ok(Outcome::ok(EXIT_OK, s))
}

#[derive(Serialize)]
struct RelateJson {
    mode: &'static str,
    base: BaseJson,
    #[serde(rename = "M")]
    m: String,
    x: String,
    greedy: String,
    quasi_greedy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expansions: Option<Vec<String>>,
    checks: RelateChecks,
}

#[derive(Serialize)]
struct RelateChecks {
    coincide: bool,
}

fn cmd_relate(a: &RelateArgs) -> CmdResult {
    let base = BaseSpec::parse(&a.base)?;
    let bound = Bound::parse(&a.m)?;
    let x = QElement::parse(&a.x, &base)?;
    let greedy = greedy_expand(&base, &bound, &x, a.digits, true)?.sequence();
    let quasi: Option<Seq> = if x.is_zero() {
        None
    } else {
        Some(quasi_greedy_expand(&base, &bound, &x, a.digits, true)?.sequence())
    };
    let coincide = match (&quasi, &greedy) {
        (Some(Seq::Closed(q)), Seq::Closed(g)) => q == g,
        _ => false,
    };
    let expansions = match a.enumerate {
        Some(n) => Some(enumerate_between(&base, &bound, &x, n)?),
        None => None,
    };

    if a.json {
        let out = RelateJson {
            mode: "relate",
            base: BaseJson::new(&base, 10),
            m: bound.to_string(),
            x: x.to_string(),
            greedy: greedy.to_string(),
            quasi_greedy: quasi.as_ref().map(|q| q.to_string()),
            expansions: expansions
                .as_ref()
                .map(|v| v.iter().map(|s| s.to_string()).collect()),
            checks: RelateChecks { coincide },
        };
        return Ok(Outcome::ok(EXIT_OK, to_json(&out)));
    }
    let mut s = format!("greedy: {greedy}\n");
    match &quasi {
        Some(q) => s += &format!("quasi_greedy: {q}\n"),
        None => s += "quasi_greedy: none (x = 0 has no infinite expansion)\n",
    }
    if coincide {
        s += "note: expansions coincide\n";
    }
    if let Some(v) = &expansions {
        s += "expansions:\n";
        for e in v {
            s += &format!("  {e}\n");
        }
    }
    Ok(Outcome::ok(EXIT_OK, s))
}
