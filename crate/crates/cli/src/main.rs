use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dstar_zeta::arith::Var;
use dstar_zeta::count::{self, CountQuery, FKind};
use dstar_zeta::format::{self, Format};
use dstar_zeta::theta::{self, ThetaArgs};
use dstar_zeta::verify::{self, Suite};
use dstar_zeta::zeta::{self, GroupTag, ThetaMode, X3Form};
use dstar_zeta::{Error, RationalFunction, Series};

#[derive(Parser)]
#[command(name = "dstar-zeta", version, about = "Local pro-isomorphic zeta functions of D*_{x^2} and D*_{x^3}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMode {
    Brute,
    Fast,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    X2,
    X3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Formula,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaSource {
    Formula,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Latex,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Arith,
    Lie,
    Count,
    Theta,
    Cones,
    Zeta,
    Funeq,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Number of (x, y, z) mod p^n with p^alpha x^2 + p^beta y z = 0
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        #[arg(long, default_value_t = 0)]
        beta: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = CountMode::Fast)]
        mode: CountMode,
    },
    /// Closed form or series expansion of a zeta function
    Zeta {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, conflicts_with = "p")]
        symbolic: bool,
        #[arg(long)]
        p: Option<u64>,
        /// Expand through t^N (needs --p)
        #[arg(long, requires = "p")]
        series: Option<i64>,
        /// Source of series coefficients
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Print the x3 closed form in the cone variables X1, X2, X3
        #[arg(long)]
        x_vars: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Run self-checks; exit 1 on the first failure
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        deep: bool,
    },
    /// Measures theta~, theta_0, theta_3 and theta for one triple (k, m, n)
    Theta {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = ThetaSource::Formula)]
        mode: ThetaSource,
        #[arg(long, value_enum, default_value_t = OutFormat::Plain)]
        format: OutFormat,
    },
    /// Symbolic coefficients of F_{alpha,0}(T) or F_{0,beta}(T)
    Fseries {
        #[arg(long, conflicts_with = "beta", required_unless_present = "beta")]
        alpha: Option<u32>,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long, default_value_t = 4)]
        terms: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Plain)]
        format: OutFormat,
    },
}

enum Failure {
    Verification(String),
    Usage(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn fmt_of(f: OutFormat) -> Format {
    match f {
        OutFormat::Json => Format::Json,
        OutFormat::Latex => Format::Latex,
        OutFormat::Plain => Format::Plain,
    }
}

fn render_rational(f: &RationalFunction, format: Format) -> String {
    match format {
        Format::Json => format::rational_json(f),
        Format::Latex => format::rational_latex(f),
        Format::Plain => format::rational_plain(f),
    }
}

fn render_series(s: &Series, var: Var, format: Format) -> String {
    match format {
        Format::Json => format::series_json(s, var),
        Format::Latex => format::series_latex(s, var),
        Format::Plain => format::series_plain(s, var),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Count { p, alpha, beta, n, mode } => {
            let q = CountQuery::new(p, alpha, beta, n)?;
            let v = match mode {
                CountMode::Brute => count::f_brute(&q)?,
                CountMode::Fast => count::f_fast(&q)?,
            };
            Ok(v.to_string())
        }
        Command::Zeta { group, symbolic: _, p, series, method, x_vars, format } => {
            let g = match group {
                Group::X2 => GroupTag::X2,
                Group::X3 => GroupTag::X3,
            };
            let format = fmt_of(format);
            let closed = match (g, x_vars) {
                (GroupTag::X3, true) => zeta::zeta_x3_closed(X3Form::XVars),
                (_, true) => return Err(Error::InvalidArgs("--x-vars applies to x3 only".into()).into()),
                _ => zeta::closed_form(g),
            };
            let Some(p) = p else {
                return Ok(render_rational(&closed, format));
            };
            let Some(order) = series else {
                count::require_prime(p)?;
                let at_p = closed.evaluate_var(Var::P, &dstar_zeta::q(p as i64))?;
                return Ok(render_rational(&at_p, format));
            };
            let s = match method {
                Method::Closed => zeta::closed_series(g, p, order)?,
                Method::Formula => zeta::series_oracle(g, p, order, ThetaMode::Formula)?,
                Method::Oracle => zeta::series_oracle(g, p, order, ThetaMode::Oracle)?,
            };
            Ok(render_series(&s, Var::PS, format))
        }
        Command::Verify { suite, deep } => {
            let suite = match suite {
                SuiteArg::Arith => Suite::Arith,
                SuiteArg::Lie => Suite::Lie,
                SuiteArg::Count => Suite::Count,
                SuiteArg::Theta => Suite::Theta,
                SuiteArg::Cones => Suite::Cones,
                SuiteArg::Zeta => Suite::Zeta,
                SuiteArg::Funeq => Suite::Funeq,
                SuiteArg::All => Suite::All,
            };
            let report = verify::run_suite(suite, deep);
            let lines: Vec<String> = report.checks.iter().map(|c| c.to_string()).collect();
            let text = lines.join("\n");
            match report.first_failure() {
                None => Ok(format!("{text}\n{} checks passed", report.checks.len())),
                Some(c) => {
                    emit(&text);
                    Err(Failure::Verification(c.name.clone()))
                }
            }
        }
        Command::Theta { p, k, m, n, mode, format } => {
            let a = ThetaArgs::new(p, k, m, n)?;
            let tilde = match mode {
                ThetaSource::Formula => theta::theta_tilde_formula(&a)?,
                ThetaSource::Oracle => theta::theta_tilde_oracle(&a)?,
            };
            let t0 = theta::p_pow(p, 4 * k + 3 * m + n) * &tilde;
            let t3 = theta::theta3(&a);
            let full = &t0 * &t3;
            let case = theta::classify(&a).name();
            Ok(match fmt_of(format) {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "case": case,
                    "theta_tilde": tilde.to_string(),
                    "theta_0": t0.to_string(),
                    "theta_3": t3.to_string(),
                    "theta": full.to_string(),
                }))
                .expect("serializable"),
                _ => format!("case {case}\ntheta~ = {tilde}\ntheta_0 = {t0}\ntheta_3 = {t3}\ntheta = {full}"),
            })
        }
        Command::Fseries { alpha, beta, terms, format } => {
            let s = match (alpha, beta) {
                (Some(a), _) => count::f_series(FKind::A0, a, terms, None)?,
                (None, Some(b)) => count::f_series(FKind::ZeroA, b, terms, None)?,
                (None, None) => return Err(Error::InvalidArgs("give --alpha or --beta".into()).into()),
            };
            Ok(render_series(&s, Var::T, fmt_of(format)))
        }
    }
}

/// Print to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(name)) => {
            eprintln!("verification failed: {name}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
