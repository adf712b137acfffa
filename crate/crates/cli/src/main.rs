mod expr;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rrcf_core::checks::{self, Outcome, Suite};
use rrcf_core::cubic::{cube_root_chain, cubic_cf, identity36_residual, Vi_of};
use rrcf_core::elliptic::{inverse_singular_modulus, singular_modulus};
use rrcf_core::modular5::evaluate_parametric;
use rrcf_core::qseries::QNome;
use rrcf_core::rrcf::{a_of_r, a_quotient, rrcf_cf, rrcf_derivative_q, rrcf_via_identity};
use rrcf_core::{NumError, NumericContext, Real};

use report::{Draft, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "rrcf", version, about = "High-precision Rogers-Ramanujan and cubic continued fractions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Target significant digits
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    /// Working precision in bits (overrides the value derived from --digits)
    #[arg(long, global = true)]
    prec_bits: Option<usize>,
    /// Iteration and depth cap
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Cells in the polynomial root scan
    #[arg(long, global = true)]
    seed_grid: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate R(q), a_r and R'(q) at q = exp(-pi sqrt(r))
    EvalR {
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
    /// Run the radical pipeline from w = sqrt(k_r k_25r)
    Param {
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    /// Solve k_r = x for r
    InverseK {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Evaluate the cubic continued fraction V(q)
    Cubic(CubicArgs),
    /// Run the built-in identity and evaluation checks
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("nome").required(true).args(["q", "r"])))]
struct CubicArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Apply V(q) -> V(q^(1/3)) this many times
    #[arg(long, default_value_t = 0)]
    cube_root_steps: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Identities,
    Evaluations,
    Pipeline,
    All,
}

fn context(g: &Global) -> rrcf_core::Result<NumericContext> {
    if g.digits == 0 {
        return Err(NumError::InvalidContext("digits must be positive"));
    }
    let mut ctx = NumericContext::with_digits(g.digits);
    if let Some(b) = g.prec_bits {
        ctx = ctx.with_precision_bits(b)?;
    }
    if let Some(m) = g.max_iter {
        ctx = ctx.with_max_iter(m)?;
    }
    if let Some(s) = g.seed_grid {
        ctx = ctx.with_scan_cells(s)?;
    }
    Ok(ctx)
}

fn exit_code(err: &NumError) -> u8 {
    match err {
        NumError::Domain { .. } | NumError::Parse(_) | NumError::InvalidContext(_) => 2,
        _ => 3,
    }
}

/// Decimal digits the working precision can carry.
fn capacity(ctx: &NumericContext) -> u32 {
    (ctx.precision_bits() as f64 * std::f64::consts::LOG10_2).floor() as u32
}

/// `floor(-log10(x))`, or `u32::MAX` for zero.
fn digits_of(x: &Real) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let l = -x.abs().to_f64().log10();
    if l.is_finite() {
        l.max(0.0).floor() as u32
    } else {
        capacity_of(x)
    }
}

fn capacity_of(x: &Real) -> u32 {
    (x.precision() as f64 * std::f64::consts::LOG10_2).floor() as u32
}

/// Settles status and believed digits from the residuals recorded so far.
fn judge(ctx: &NumericContext, d: &mut Draft, residuals: &[&Real], lost: u32) {
    let tol = ctx.tol();
    let worst = residuals.iter().fold(ctx.int(0), |m, r| m.max(&r.abs()));
    let cap = capacity(ctx).saturating_sub(lost);
    d.believe(cap.min(digits_of(&worst)));
    if worst > tol || cap < ctx.target_digits() + ctx.guard_digits() / 2 {
        d.warn();
    }
}

fn eval_r(ctx: &NumericContext, src: &str, d: &mut Draft) -> rrcf_core::Result<()> {
    d.input("r", src);
    let r = expr::evaluate(ctx, src)?;
    if !r.is_positive() {
        return Err(NumError::Domain {
            op: "eval-r",
            detail: "r must be positive".into(),
        });
    }
    let q = QNome::from_r(ctx, &r)?;
    let k = singular_modulus(ctx, &r)?.modulus.k().clone();
    let cf = rrcf_cf(ctx, &q)?.value;
    let id = rrcf_via_identity(ctx, &q)?.value;
    let a = a_quotient(ctx, &q)?.a;
    let d_r = rrcf_derivative_q(ctx, &q)?;
    d.output("r", &r)
        .output("q", q.value())
        .output("k_r", &k)
        .output("R", &cf)
        .output("R_eta_quotient", &id)
        .output("a_r", &a)
        .output("R_prime", &d_r);
    let routes = (&cf - &id).abs();
    let a_gap = ((a_of_r(&cf) - &a) / &a).abs();
    d.residual("R_routes", &routes).residual("a_r_vs_R", &a_gap);
    judge(ctx, d, &[&routes, &a_gap], 0);
    Ok(())
}

fn param(ctx: &NumericContext, src: &str, d: &mut Draft) -> rrcf_core::Result<()> {
    d.input("w", src);
    let w = expr::evaluate(ctx, src)?;
    let ev = evaluate_parametric(ctx, &w)?.with_derivative(ctx)?;
    let s = &ev.solution;
    d.output("w", &s.w)
        .output("L", &s.l)
        .output("M", &s.m)
        .output("x", &s.x)
        .output("y", &s.y)
        .output("w_prime", &s.w_prime)
        .output("r", &ev.r)
        .output("q", &ev.q)
        .output("a_r", &ev.a_r)
        .output("R", &ev.r_value);
    if let Some(rp) = &ev.r_prime {
        d.output("R_prime", rp);
    }
    if s.from_root_search {
        d.note("x_source", "sextic root search");
    }
    let named = ev.residuals.named();
    for (k, v) in named {
        d.residual(k, v);
    }
    let rs: Vec<&Real> = named.iter().map(|(_, v)| *v).collect();
    judge(ctx, d, &rs, ev.digits_lost);
    Ok(())
}

fn inverse_k(ctx: &NumericContext, src: &str, d: &mut Draft) -> rrcf_core::Result<()> {
    d.input("x", src);
    let x = expr::evaluate(ctx, src)?;
    let r = inverse_singular_modulus(ctx, &x)?;
    let back = singular_modulus(ctx, &r)?.modulus.k().clone();
    let gap = (&back - &x).abs();
    d.output("x", &x).output("r", &r).residual("round_trip", &gap);
    judge(ctx, d, &[&gap], 0);
    Ok(())
}

fn cubic(ctx: &NumericContext, args: &CubicArgs, d: &mut Draft) -> rrcf_core::Result<()> {
    let q = match (&args.q, &args.r) {
        (Some(src), _) => {
            d.input("q", src.as_str());
            QNome::new(expr::evaluate(ctx, src)?)?
        }
        (None, Some(src)) => {
            d.input("r", src.as_str());
            let r = expr::evaluate(ctx, src)?;
            QNome::from_r(ctx, &r)?
        }
        (None, None) => unreachable!("clap enforces one of --q/--r"),
    };
    d.input("cube_root_steps", args.cube_root_steps.to_string());
    let v = cubic_cf(ctx, &q)?;
    let vi = Vi_of(ctx, &v.v)?;
    let identity = identity36_residual(ctx, &q)?;
    d.output("q", q.value())
        .output("V", &v.v)
        .output("T", &v.t)
        .output("k", &v.k)
        .output("Vi_V", &vi)
        .output("r", &inverse_singular_modulus(ctx, &v.k)?);
    let quartic = (v.t.square() + v.v.powi(3) * 8 - ctx.int(1)).abs();
    d.residual("inverse_identity", &identity).residual("T_squared_plus_8V_cubed", &quartic);
    let mut rs = vec![identity, quartic];
    if args.cube_root_steps > 0 {
        let chain = cube_root_chain(ctx, &v.v, args.cube_root_steps)?;
        let mut qn = q.clone();
        for (i, vn) in chain.iter().enumerate().skip(1) {
            qn = qn.root(3)?;
            d.output(&format!("V_step_{i}"), vn);
        }
        let last = chain.last().expect("chain holds the start value");
        let kn = Vi_of(ctx, last)?;
        d.output("q_stepped", qn.value())
            .output("k_stepped", &kn)
            .output("r_stepped", &inverse_singular_modulus(ctx, &kn)?);
        let direct = (cubic_cf(ctx, &qn)?.v - last).abs();
        let stepped_identity = identity36_residual(ctx, &qn)?;
        d.residual("stepped_vs_direct", &direct)
            .residual("stepped_inverse_identity", &stepped_identity);
        rs.push(direct);
        rs.push(stepped_identity);
    }
    let refs: Vec<&Real> = rs.iter().collect();
    judge(ctx, d, &refs, 0);
    Ok(())
}

fn verify(ctx: &NumericContext, suite: SuiteArg, d: &mut Draft) -> bool {
    let wanted = match suite {
        SuiteArg::Identities => Some(Suite::Identities),
        SuiteArg::Evaluations => Some(Suite::Evaluations),
        SuiteArg::Pipeline => Some(Suite::Pipeline),
        SuiteArg::All => None,
    };
    d.input("suite", format!("{suite:?}").to_lowercase());
    let selected: Vec<_> = checks::catalogue()
        .iter()
        .filter(|c| wanted.is_none_or(|s| c.suite == s))
        .collect();
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|c| scope.spawn(move || c.run(ctx))).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    let mut all_pass = true;
    for res in &results {
        let label = match &res.outcome {
            Outcome::Error(e) => format!("error: {e}"),
            o => o.label().to_string(),
        };
        d.note(res.name, label);
        if let Some(m) = &res.measurement {
            d.residual(res.name, &m.residual);
            d.residual(&format!("{}.threshold", res.name), &m.threshold);
        }
        all_pass &= !res.outcome.is_hard_failure();
    }
    let errata = results.iter().filter(|r| r.outcome == Outcome::Erratum).count();
    let failed = results.iter().filter(|r| r.outcome.is_hard_failure()).count();
    d.note("checks", results.len().to_string())
        .note("failed", failed.to_string())
        .note("errata", errata.to_string());
    if !all_pass {
        d.fail(&NumError::ResidualTooLarge {
            check: "verify",
            residual: format!("{failed} check(s) failed"),
        });
    }
    all_pass
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::EvalR { .. } => "eval-r",
        Command::Param { .. } => "param",
        Command::InverseK { .. } => "inverse-k",
        Command::Cubic(_) => "cubic",
        Command::Verify { .. } => "verify",
    }
}

/// Writes the report to stdout; a closed pipe is ignored.
fn emit(report: &Report, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Plain => report.to_plain(),
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut draft = Draft::new(command_name(&cli.command), cli.global.digits);
    let code = match context(&cli.global) {
        Err(e) => {
            draft.fail(&e);
            exit_code(&e)
        }
        Ok(ctx) => {
            let outcome = match &cli.command {
                Command::EvalR { r } => eval_r(&ctx, r, &mut draft),
                Command::Param { w } => param(&ctx, w, &mut draft),
                Command::InverseK { x } => inverse_k(&ctx, x, &mut draft),
                Command::Cubic(args) => cubic(&ctx, args, &mut draft),
                Command::Verify { suite } => {
                    let ok = verify(&ctx, *suite, &mut draft);
                    let report = draft.finish();
                    emit(&report, cli.global.format);
                    return ExitCode::from(if ok { 0 } else { 1 });
                }
            };
            match outcome {
                Ok(()) => 0,
                Err(e) => {
                    draft.fail(&e);
                    exit_code(&e)
                }
            }
        }
    };
    debug_assert!(code != 0 || draft.status() != Status::Error);
    emit(&draft.finish(), cli.global.format);
    ExitCode::from(code)
}
