//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails (the report carries a counterexample), 2 on usage or input
//! errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adversarial::{
    auto_precision, leading_eps, reproduce_example_table, reproduce_example_table_direct, slow_matrix_general,
    slow_matrix_general_dense, slow_matrix_h, verify_slow_general, verify_slow_sweep, EXAMPLE_DIRECT_MIN_DIGITS,
    EXAMPLE_MIN_DIGITS,
};
use crate::analysis::report::combine;
use crate::analysis::theorems::{
    verify_identities, verify_lemma_special_cases, verify_prop_32, verify_prop_34, verify_slow_general_suite,
    verify_slow_sweep_suite, verify_theorem_main, BLOCK_EPS, BLOCK_ORDERS, SLOW_SWEEP_EPS,
};
use crate::analysis::{trace_t_run, TheoremReport};
use crate::error::{Error, Result};
use crate::kernel::{default_tolerance, solve, Solution};
use crate::matrix::SymMatrix;
use crate::scalar::{BigFloat, Precision, Scalar};
use crate::strategy::{
    enumerate_parallel_orderings, named_ordering, ordering_i1, ordering_i2, shift_classes, shift_equivalent,
    strategy_matrix, CyclicStrategy, PivotOrdering,
};

#[derive(Parser, Debug)]
#[command(name = "cyclic-jacobi", version, about = "Cyclic Jacobi method under parallel strategies")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// `hw` or `big:<digits>`; the slow-family commands pick a precision when omitted.
    #[arg(long, global = true)]
    pub precision: Option<Precision>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Diagonalize a matrix file under a named or custom strategy.
    Solve {
        matrix: PathBuf,
        #[arg(long, default_value = "I1")]
        strategy: String,
        #[arg(long, default_value_t = 50)]
        cycles: usize,
    },
    /// Operator trace of a 4x4 matrix with `a12 = a34 = 0`.
    Trace {
        matrix: PathBuf,
        #[arg(long, default_value_t = 6)]
        steps: usize,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Enumerate, classify or print parallel orderings.
    Strategies {
        #[command(subcommand)]
        action: StrategyAction,
    },
    /// Slow-convergence constructions.
    Adversarial {
        #[command(subcommand)]
        action: AdversarialAction,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum Suite {
    Thm36,
    Lemma37,
    Prop32,
    Prop34,
    Identities,
    Prop52 {
        #[arg(long)]
        eps: Option<String>,
    },
    Thm53 {
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<String>>,
        #[arg(long)]
        dense: bool,
    },
    All,
}

#[derive(Subcommand, Debug, Clone)]
pub enum StrategyAction {
    /// The six parallel orderings of order 4 and their shift classes.
    Enumerate,
    /// Shift class of an ordering file.
    Classify { file: PathBuf },
    /// Strategy matrix of a named ordering.
    Matrix {
        name: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum AdversarialAction {
    /// Off-norms of the worked example over eight steps.
    Table {
        #[arg(long, default_value_t = EXAMPLE_MIN_DIGITS)]
        digits: u32,
        /// Iterate on the unshifted matrix (needs 120 digits).
        #[arg(long)]
        direct: bool,
    },
    /// One-cycle reduction of the slow family.
    Hbound {
        #[arg(long, default_value = "1e-6")]
        eps: String,
    },
    /// Block construction of order `n`.
    General {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        dense: bool,
    },
}

/// Rendered output and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, pass: true }
    }
}

macro_rules! with_scalar {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match $p {
            Precision::Hardware64 => $f::<f64>($($arg),*),
            Precision::BigFloat { .. } => $f::<BigFloat>($($arg),*),
        }
    };
}

fn render_report(r: &TheoremReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    }
}

fn report_outcome(r: TheoremReport, format: Option<Format>) -> Outcome {
    Outcome { body: render_report(&r, format.unwrap_or(Format::Json)), pass: r.pass }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn parse_eps(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse(format!("bad epsilon `{s}`")))
}

fn hw_or(p: Option<Precision>) -> Precision {
    p.unwrap_or(Precision::Hardware64)
}

fn load_ordering(name: &str, n: usize) -> Result<PivotOrdering> {
    match named_ordering(name, n) {
        Ok(o) => Ok(o),
        Err(_) if Path::new(name).is_file() => PivotOrdering::from_json(&read(Path::new(name))?),
        Err(e) => Err(e),
    }
}

fn solve_typed<T: Scalar>(matrix: &Path, strategy: &str, cycles: usize, p: Precision, format: Format) -> Result<Outcome> {
    let a = SymMatrix::<T>::from_json(&read(matrix)?, p)?;
    let ord = load_ordering(strategy, a.n())?;
    let strat = CyclicStrategy::new(ord)?;
    let sol: Solution<T> = solve(&a, &strat, &default_tolerance(&a), cycles)?;
    let eig: Vec<String> = sol.eigenvalues().iter().map(|x| x.to_sci_string()).collect();
    let body = match format {
        Format::Json => {
            let v = json!({
                "eigenvalues": eig,
                "vectors": sol.vectors.rows().iter().map(|r| r.iter().map(|x| x.to_sci_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "off_norm": sol.off_norm.to_sci_string(),
                "cycles": sol.cycles,
                "converged": sol.converged,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("index,eigenvalue\n");
            for (k, e) in eig.iter().enumerate() {
                s.push_str(&format!("{},{e}\n", k + 1));
            }
            s
        }
        Format::Text => format!(
            "cycles={} converged={} off_norm={}\neigenvalues: {}\n",
            sol.cycles,
            sol.converged,
            sol.off_norm.to_sci_string(),
            eig.join(" ")
        ),
    };
    Ok(Outcome { body, pass: sol.converged })
}

fn trace_typed<T: Scalar>(matrix: &Path, steps: usize, p: Precision, format: Format) -> Result<Outcome> {
    let a = SymMatrix::<T>::from_json(&read(matrix)?, p)?;
    let csv = trace_t_run(&a, steps)?.to_csv();
    let body = match format {
        Format::Json => {
            let mut lines = csv.lines();
            let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
            let rows: Vec<Value> = lines
                .map(|l| Value::Object(header.iter().zip(l.split(',')).map(|(h, v)| (h.to_string(), json!(v))).collect()))
                .collect();
            serde_json::to_string_pretty(&rows)? + "\n"
        }
        Format::Csv | Format::Text => csv,
    };
    Ok(Outcome::ok(body))
}

fn random_suites<T: Scalar>(g: &GlobalArgs, p: Precision) -> Result<Vec<TheoremReport>> {
    Ok(vec![
        verify_theorem_main::<T>(g.trials, g.seed, p, g.jobs)?,
        verify_lemma_special_cases::<T>(g.trials, g.seed, p, g.jobs)?,
        verify_prop_32::<T>(g.trials, g.seed, p, g.jobs)?,
        verify_prop_34::<T>(g.trials, g.seed, p, g.jobs)?,
        verify_identities::<T>(g.trials, g.seed, p, g.jobs)?,
    ])
}

fn slow_sweep_at(eps: &str, p: Option<Precision>) -> Result<TheoremReport> {
    let p = p.unwrap_or_else(|| auto_precision(parse_eps(eps).unwrap_or(1e-6)));
    match p {
        Precision::Hardware64 => verify_slow_sweep(&parse_eps(eps)?),
        Precision::BigFloat { .. } => verify_slow_sweep(&BigFloat::parse(p, eps)?),
    }
}

fn slow_general_at(eps: &str, n: usize, dense: bool, p: Option<Precision>) -> Result<TheoremReport> {
    let p = match p {
        Some(p) => p,
        None => auto_precision(leading_eps(&parse_eps(eps)?)?),
    };
    match p {
        Precision::Hardware64 => verify_slow_general(&parse_eps(eps)?, n, dense),
        Precision::BigFloat { .. } => verify_slow_general(&BigFloat::parse(p, eps)?, n, dense),
    }
}

fn run_suite(suite: &Suite, g: &GlobalArgs) -> Result<TheoremReport> {
    let p = hw_or(g.precision);
    match suite {
        Suite::Thm36 => with_scalar!(p, verify_theorem_main(g.trials, g.seed, p, g.jobs)),
        Suite::Lemma37 => with_scalar!(p, verify_lemma_special_cases(g.trials, g.seed, p, g.jobs)),
        Suite::Prop32 => with_scalar!(p, verify_prop_32(g.trials, g.seed, p, g.jobs)),
        Suite::Prop34 => with_scalar!(p, verify_prop_34(g.trials, g.seed, p, g.jobs)),
        Suite::Identities => with_scalar!(p, verify_identities(g.trials, g.seed, p, g.jobs)),
        Suite::Prop52 { eps: Some(e) } => slow_sweep_at(e, g.precision),
        Suite::Prop52 { eps: None } => {
            let parts = match g.precision {
                None => verify_slow_sweep_suite(&SLOW_SWEEP_EPS)?,
                Some(_) => SLOW_SWEEP_EPS
                    .iter()
                    .map(|e| {
                        let mut r = slow_sweep_at(e, g.precision)?;
                        r.theorem = format!("{}@eps={e}", r.theorem);
                        Ok(r)
                    })
                    .collect::<Result<_>>()?,
            };
            Ok(combine("prop52", &parts))
        }
        Suite::Thm53 { n, eps, dense } => {
            let orders = n.clone().unwrap_or_else(|| BLOCK_ORDERS.to_vec());
            let eps: Vec<String> = eps.clone().unwrap_or_else(|| BLOCK_EPS.iter().map(|s| s.to_string()).collect());
            let parts = match g.precision {
                None => verify_slow_general_suite(&orders, &eps.iter().map(String::as_str).collect::<Vec<_>>(), *dense)?,
                Some(_) => {
                    let mut v = Vec::new();
                    for e in &eps {
                        for &k in &orders {
                            let mut r = slow_general_at(e, k, *dense, g.precision)?;
                            r.theorem = format!("{}@n={k},eps={e}", r.theorem);
                            v.push(r);
                        }
                    }
                    v
                }
            };
            Ok(combine("thm53", &parts))
        }
        Suite::All => {
            let mut parts = with_scalar!(p, random_suites(g, p))?;
            parts.push(combine("prop52", &verify_slow_sweep_suite(&SLOW_SWEEP_EPS)?));
            parts.push(combine("thm53", &verify_slow_general_suite(&BLOCK_ORDERS, &BLOCK_EPS, false)?));
            Ok(combine("all", &parts))
        }
    }
}

fn strategies(action: &StrategyAction, format: Format) -> Result<Outcome> {
    match action {
        StrategyAction::Enumerate => {
            let all = enumerate_parallel_orderings(4)?;
            let classes = shift_classes(&all);
            let class_of = |i: usize| if shift_equivalent(&all[i], &ordering_i1()) { "I1" } else { "I2" };
            let body = match format {
                Format::Json => {
                    let v: Vec<Value> = all
                        .iter()
                        .enumerate()
                        .map(|(i, o)| json!({"ordering": o.to_string(), "class": class_of(i)}))
                        .collect();
                    serde_json::to_string_pretty(&json!({"orderings": v, "classes": classes.len()}))? + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("index,class,ordering\n");
                    for (i, o) in all.iter().enumerate() {
                        s.push_str(&format!("{i},{},\"{o}\"\n", class_of(i)));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{} orderings in {} shift classes\n", all.len(), classes.len());
                    for (i, o) in all.iter().enumerate() {
                        s.push_str(&format!("  class {}  {o}\n", class_of(i)));
                    }
                    s
                }
            };
            Ok(Outcome::ok(body))
        }
        StrategyAction::Classify { file } => {
            let ord = PivotOrdering::from_json(&read(file)?)?;
            let class = if ord.n() != 4 {
                "none"
            } else if shift_equivalent(&ord, &ordering_i1()) {
                "I1"
            } else if shift_equivalent(&ord, &ordering_i2()) {
                "I2"
            } else {
                "none"
            };
            let body = match format {
                Format::Json => serde_json::to_string(&json!({"ordering": ord.to_string(), "class": class}))? + "\n",
                Format::Csv => format!("ordering,class\n\"{ord}\",{class}\n"),
                Format::Text => format!("{ord}: class {class}\n"),
            };
            Ok(Outcome::ok(body))
        }
        StrategyAction::Matrix { name, n } => {
            let m = strategy_matrix(&named_ordering(name, *n)?)?;
            let body = match format {
                Format::Json => serde_json::to_string(&json!({"name": name, "upper": m.upper_entries()}))? + "\n",
                Format::Csv => {
                    let mut s = String::new();
                    for r in 0..m.n() {
                        let row: Vec<String> = (0..m.n()).map(|c| if r == c { "*".into() } else { m.get(r, c).to_string() }).collect();
                        s.push_str(&row.join(","));
                        s.push('\n');
                    }
                    s
                }
                Format::Text => format!("{m}"),
            };
            Ok(Outcome::ok(body))
        }
    }
}

fn adversarial(action: &AdversarialAction, g: &GlobalArgs) -> Result<Outcome> {
    match action {
        AdversarialAction::Table { digits, direct } => {
            let p = Precision::big(*digits)?;
            let table = if *direct {
                reproduce_example_table_direct::<BigFloat>(p)?
            } else {
                reproduce_example_table::<BigFloat>(p)?
            };
            let body = match g.format.unwrap_or(Format::Text) {
                Format::Csv => table.to_csv(),
                Format::Text => table.to_text(),
                Format::Json => {
                    let rows: Vec<Value> = table
                        .rows
                        .iter()
                        .map(|r| json!({"k": r.k, "pivot": [r.pair.i(), r.pair.j()], "S": r.printed}))
                        .collect();
                    serde_json::to_string_pretty(&json!({"S0": table.initial_printed, "rows": rows}))? + "\n"
                }
            };
            Ok(Outcome::ok(body))
        }
        AdversarialAction::Hbound { eps } => {
            let p = g.precision.unwrap_or_else(|| auto_precision(parse_eps(eps).unwrap_or(1e-6)));
            let report = slow_sweep_at(eps, Some(p))?;
            let matrix = match p {
                Precision::Hardware64 => slow_matrix_h(&parse_eps(eps)?)?.to_json(),
                Precision::BigFloat { .. } => slow_matrix_h(&BigFloat::parse(p, eps)?)?.to_json(),
            };
            with_matrix(report, &matrix, None, g.format)
        }
        AdversarialAction::General { n, eps, dense } => {
            let p = match g.precision {
                Some(p) => p,
                None => auto_precision(leading_eps(&parse_eps(eps)?)?),
            };
            let report = slow_general_at(eps, *n, *dense, Some(p))?;
            let build = |d: bool| -> Result<(String, PivotOrdering)> {
                let (m, o) = match p {
                    Precision::Hardware64 => {
                        let e = parse_eps(eps)?;
                        let (m, o) = if d { slow_matrix_general_dense(&e, *n)? } else { slow_matrix_general(&e, *n)? };
                        (m.to_json(), o)
                    }
                    Precision::BigFloat { .. } => {
                        let e = BigFloat::parse(p, eps)?;
                        let (m, o) = if d { slow_matrix_general_dense(&e, *n)? } else { slow_matrix_general(&e, *n)? };
                        (m.to_json(), o)
                    }
                };
                Ok((m, o))
            };
            let (matrix, ord) = build(*dense)?;
            with_matrix(report, &matrix, Some(&ord), g.format)
        }
    }
}

fn with_matrix(report: TheoremReport, matrix: &str, ord: Option<&PivotOrdering>, format: Option<Format>) -> Result<Outcome> {
    let format = format.unwrap_or(Format::Json);
    let body = match format {
        Format::Json => {
            let mut v = json!({ "report": report, "matrix": serde_json::from_str::<Value>(matrix)? });
            if let Some(o) = ord {
                v["ordering"] = serde_json::from_str(&o.to_json())?;
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => render_report(&report, format),
    };
    Ok(Outcome { body, pass: report.pass })
}

/// Runs a parsed command and renders its output.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    if g.trials == 0 {
        return Err(Error::OutOfRange("trials must be positive".into()));
    }
    if g.jobs == 0 {
        return Err(Error::OutOfRange("jobs must be positive".into()));
    }
    match &cli.command {
        Command::Solve { matrix, strategy, cycles } => {
            let p = hw_or(g.precision);
            let f = g.format.unwrap_or(Format::Json);
            with_scalar!(p, solve_typed(matrix, strategy, *cycles, p, f))
        }
        Command::Trace { matrix, steps } => {
            let p = hw_or(g.precision);
            let f = g.format.unwrap_or(Format::Csv);
            with_scalar!(p, trace_typed(matrix, *steps, p, f))
        }
        Command::Verify { suite } => Ok(report_outcome(run_suite(suite, g)?, g.format)),
        Command::Strategies { action } => strategies(action, g.format.unwrap_or(Format::Text)),
        Command::Adversarial { action } => {
            if let AdversarialAction::Table { digits, direct: true } = action {
                if *digits < EXAMPLE_DIRECT_MIN_DIGITS {
                    return Err(Error::InsufficientPrecision { required: EXAMPLE_DIRECT_MIN_DIGITS, available: *digits });
                }
            }
            adversarial(action, g)
        }
    }
}

/// Parses `args`, runs, writes output and maps the result to an exit code.
pub fn run<I, S>(args: I) -> ExitCode
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.global.out {
                Some(path) => fs::write(path, &out.body).map_err(Error::from),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
