//! The `hyperlift` command line: argument parsing and command dispatch.
//!
//! [`run`] writes reports to `out`, diagnostics to `err`, and returns the
//! process exit code: 0 success or feasible, 1 infeasible or failed
//! verification, 2 usage or input error.

pub mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperlift::oracle::FuzzConfig;
use hyperlift::{
    feasibility_general_with, fuzz_with, inequality_count, inequality_pairs, iterated_lift_with,
    lift_any_with, lift_with, quartic_feasible_with, Error, LiftOutcome, Rational, Scalar,
    WitnessChain, WitnessError, Zeros,
};
use serde::Serialize;

use report::{CheckReport, CountOutput, ErrorOutput, QuarticOutput, WitnessOutput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact rational arithmetic.
    Exact,
    /// f64 with an absolute tolerance.
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperlift",
    version,
    about = "Hyperbolic antiderivatives of real-rooted polynomials"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "exact", global = true)]
    pub mode: Mode,
    /// Tolerance for float mode.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ZerosSource {
    /// Comma-separated zeros, e.g. `4,4,1,1` or `1,1/2,-2/5,-1`, in any order.
    #[arg(long, allow_hyphen_values = true)]
    pub zeros: Option<String>,
    /// File with one comma-separated list per line; one report per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a hyperbolic antiderivative exists.
    Check {
        #[command(flatten)]
        source: ZerosSource,
    },
    /// Closed-form tests for exactly four zeros.
    Quartic {
        #[command(flatten)]
        source: ZerosSource,
    },
    /// Build and verify a real-rooted antiderivative.
    Witness {
        #[command(flatten)]
        source: ZerosSource,
        /// Integration constant; defaults to the midpoint of the valid interval.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Number of successive lifts.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Constants sampled per level when searching a chain.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Number of pair inequalities for `n` zeros.
    Count {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Also list the pairs.
        #[arg(long)]
        verbose: bool,
    },
    /// Differential test of the criterion against the brute-force oracle
    /// (always exact).
    Fuzz {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Also build and verify a witness for every feasible trial.
        #[arg(long)]
        witnesses: bool,
    },
}

/// Parses arguments and runs the command against the process streams.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(&cli, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        let _ = writeln!(err, "error: --tol must be positive, got {}", cli.tol);
        return EXIT_USAGE;
    }
    let mut ctx = Context { cli, out, err };
    match &cli.command {
        Command::Count { degree, verbose } => ctx.count(*degree, *verbose),
        Command::Fuzz {
            degree,
            trials,
            witnesses,
        } => ctx.fuzz(*degree, *trials, *witnesses),
        _ => match cli.mode {
            Mode::Exact => ctx.zero_commands::<Rational>(Rational::default_tolerance()),
            Mode::Float => ctx.zero_commands::<f64>(cli.tol),
        },
    }
}

struct Context<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses a comma-separated list; the error names the offending token.
pub fn parse_zeros<T: Scalar>(text: &str) -> Result<Zeros<T>, String> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    if tokens.iter().all(|t| t.is_empty()) {
        return Err("no zeros given".into());
    }
    let values = tokens
        .iter()
        .map(|t| T::parse_literal(t).ok_or_else(|| format!("invalid number '{t}'")))
        .collect::<Result<Vec<T>, String>>()?;
    Zeros::from_unsorted(values).map_err(|e| e.to_string())
}

pub fn parse_scalar<T: Scalar>(text: &str) -> Result<T, String> {
    T::parse_literal(text).ok_or_else(|| format!("invalid number '{}'", text.trim()))
}

/// One rendered report: JSON line or text block, and its exit code.
struct Rendered {
    body: String,
    code: i32,
}

impl Context<'_> {
    fn json<S: Serialize>(value: &S) -> String {
        serde_json::to_string(value).expect("reports serialize")
    }

    fn emit(&mut self, rendered: Rendered) -> i32 {
        if rendered.body.is_empty() {
            return rendered.code;
        }
        if writeln!(self.out, "{}", rendered.body).is_err() {
            return EXIT_USAGE;
        }
        rendered.code
    }

    fn error_report(
        &self,
        verdict: &str,
        message: &str,
        c_interval: Option<(String, Option<String>)>,
        code: i32,
    ) -> Rendered {
        let body = match self.cli.format {
            Format::Json => Self::json(&ErrorOutput {
                verdict: verdict.into(),
                error: message.into(),
                c_interval,
            }),
            // the message already went to stderr
            Format::Text => String::new(),
        };
        Rendered { body, code }
    }

    fn zero_commands<T: Scalar>(&mut self, tol: T) -> i32 {
        let source = match &self.cli.command {
            Command::Check { source }
            | Command::Quartic { source }
            | Command::Witness { source, .. } => source,
            _ => unreachable!("dispatched on zero-list commands only"),
        };
        let lines: Vec<String> = match (&source.zeros, &source.input) {
            (Some(z), _) => vec![z.clone()],
            (None, Some(path)) => match fs::read_to_string(path) {
                Ok(text) => text
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect(),
                Err(e) => {
                    let _ = writeln!(self.err, "error: cannot read {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            },
            (None, None) => unreachable!("clap requires one source"),
        };

        let mut worst = EXIT_OK;
        for line in &lines {
            let code = match parse_zeros::<T>(line) {
                Ok(zeros) => {
                    let rendered = self.one(&zeros, &tol);
                    self.emit(rendered)
                }
                Err(message) => {
                    let _ = writeln!(self.err, "error: {message}");
                    EXIT_USAGE
                }
            };
            worst = worst.max(code);
        }
        worst
    }

    fn one<T: Scalar>(&mut self, zeros: &Zeros<T>, tol: &T) -> Rendered {
        match &self.cli.command {
            Command::Check { .. } => self.check(zeros, tol),
            Command::Quartic { .. } => self.quartic(zeros, tol),
            Command::Witness {
                c, depth, samples, ..
            } => self.witness(zeros, tol, c.as_deref(), *depth, *samples),
            _ => unreachable!("dispatched on zero-list commands only"),
        }
    }

    fn core_error(&mut self, e: &Error) -> Rendered {
        let _ = writeln!(self.err, "error: {e}");
        self.error_report("error", &e.to_string(), None, EXIT_USAGE)
    }

    fn check<T: Scalar>(&mut self, zeros: &Zeros<T>, tol: &T) -> Rendered {
        let report = match feasibility_general_with(zeros, tol) {
            Ok(r) => r,
            Err(e) => return self.core_error(&e),
        };
        let quartic = if zeros.len() == 4 {
            quartic_feasible_with(zeros, tol).ok()
        } else {
            None
        };
        let dto = CheckReport::new(zeros, &report, quartic.as_ref());
        let body = match self.cli.format {
            Format::Json => Self::json(&dto),
            Format::Text => dto.text(),
        };
        Rendered {
            body,
            code: if report.feasible { EXIT_OK } else { EXIT_FAIL },
        }
    }

    fn quartic<T: Scalar>(&mut self, zeros: &Zeros<T>, tol: &T) -> Rendered {
        let report = match quartic_feasible_with(zeros, tol) {
            Ok(r) => r,
            Err(e) => return self.core_error(&e),
        };
        let dto = QuarticOutput::new(zeros, &report);
        let body = match self.cli.format {
            Format::Json => Self::json(&dto),
            Format::Text => dto.text(),
        };
        Rendered {
            body,
            code: if report.feasible { EXIT_OK } else { EXIT_FAIL },
        }
    }

    fn witness<T: Scalar>(
        &mut self,
        zeros: &Zeros<T>,
        tol: &T,
        c: Option<&str>,
        depth: usize,
        samples: usize,
    ) -> Rendered {
        if depth == 0 {
            let _ = writeln!(self.err, "error: --depth must be at least 1");
            return self.error_report("error", "--depth must be at least 1", None, EXIT_USAGE);
        }
        let c = match c.map(parse_scalar::<T>).transpose() {
            Ok(c) => c,
            Err(message) => {
                let _ = writeln!(self.err, "error: {message}");
                return self.error_report("error", &message, None, EXIT_USAGE);
            }
        };
        let outcome = match (c, depth) {
            (Some(c), 1) => lift_with(zeros, &c, tol)
                .map(|w| LiftOutcome::Complete(WitnessChain { levels: vec![w] })),
            (None, 1) => lift_any_with(zeros, tol)
                .map(|w| LiftOutcome::Complete(WitnessChain { levels: vec![w] })),
            (Some(_), _) => {
                let message = "--c applies to a single lift; omit it with --depth > 1";
                let _ = writeln!(self.err, "error: {message}");
                return self.error_report("error", message, None, EXIT_USAGE);
            }
            (None, d) => iterated_lift_with(zeros, d, samples, tol),
        };
        match outcome {
            Ok(outcome) => {
                let dto = WitnessOutput::from_outcome(&outcome, depth);
                let body = match self.cli.format {
                    Format::Json => Self::json(&dto),
                    Format::Text => dto.text(outcome.chain()),
                };
                Rendered {
                    body,
                    code: if outcome.is_complete() {
                        EXIT_OK
                    } else {
                        EXIT_FAIL
                    },
                }
            }
            Err(e) => self.witness_error(zeros, tol, e),
        }
    }

    fn witness_error<T: Scalar>(
        &mut self,
        zeros: &Zeros<T>,
        tol: &T,
        e: WitnessError<T>,
    ) -> Rendered {
        let _ = writeln!(self.err, "error: {e}");
        match e {
            WitnessError::Infeasible(report) => {
                let quartic = if zeros.len() == 4 {
                    quartic_feasible_with(zeros, tol).ok()
                } else {
                    None
                };
                let dto = CheckReport::new(zeros, &report, quartic.as_ref());
                let body = match self.cli.format {
                    Format::Json => Self::json(&dto),
                    Format::Text => dto.text(),
                };
                Rendered {
                    body,
                    code: EXIT_FAIL,
                }
            }
            WitnessError::OutOfRange { ref lo, ref hi, .. } => {
                let interval = (lo.to_string(), hi.as_ref().map(ToString::to_string));
                self.error_report("out_of_range", &e.to_string(), Some(interval), EXIT_FAIL)
            }
            WitnessError::Verification(_) => {
                self.error_report("verification_failed", &e.to_string(), None, EXIT_FAIL)
            }
            WitnessError::Core(core) => self.core_error(&core),
        }
    }

    fn count(&mut self, degree: i64, verbose: bool) -> i32 {
        if degree < 1 {
            let _ = writeln!(self.err, "error: --degree must be at least 1, got {degree}");
            return EXIT_USAGE;
        }
        let n = degree as usize;
        let dto = CountOutput {
            n,
            count: inequality_count(n),
            pairs: verbose.then(|| inequality_pairs(n)),
        };
        let body = match self.cli.format {
            Format::Json => Self::json(&dto),
            Format::Text => dto.text(),
        };
        self.emit(Rendered {
            body,
            code: EXIT_OK,
        })
    }

    fn fuzz(&mut self, degree: usize, trials: usize, witnesses: bool) -> i32 {
        let mut config = FuzzConfig::new(degree, trials, self.cli.seed);
        config.check_witnesses = witnesses;
        let report = match fuzz_with(&config) {
            Ok(r) => r,
            Err(e) => {
                let _ = writeln!(self.err, "error: {e}");
                return EXIT_USAGE;
            }
        };
        let body = match self.cli.format {
            Format::Json => Self::json(&report),
            Format::Text => {
                let mut s = format!(
                    "degree={} seed={} trials={} agreements={} feasible={} disagreements={}",
                    report.degree,
                    report.seed,
                    report.trials,
                    report.agreements,
                    report.feasible,
                    report.disagreements.len()
                );
                if witnesses {
                    s.push_str(&format!(
                        " witnesses_checked={} witness_failures={}",
                        report.witnesses_checked,
                        report.witness_failures.len()
                    ));
                }
                for d in &report.disagreements {
                    s.push_str(&format!(
                        "\ntrial {} ({:?}) zeros=({}) criterion={} oracle={}",
                        d.trial,
                        d.family,
                        d.zeros.join(", "),
                        d.criterion,
                        d.oracle
                    ));
                }
                for f in &report.witness_failures {
                    s.push_str(&format!(
                        "\ntrial {} zeros=({}) {}",
                        f.trial,
                        f.zeros.join(", "),
                        f.message
                    ));
                }
                s
            }
        };
        self.emit(Rendered {
            body,
            code: if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_FAIL
            },
        })
    }
}
