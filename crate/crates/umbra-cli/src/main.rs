//! `umbra` — command line front end for the exact umbral-calculus library.
//!
//! Three subcommands: `compute` builds one member of a polynomial family,
//! `table` prints Stirling triangles or Frobenius-Euler number lists, and
//! `verify` runs identities from the registry and reports per-instance
//! verdicts. Exit codes: 0 success (for `verify`: every must-hold identity
//! passed; probe outcomes never count), 1 must-hold failure, 2 usage or
//! parameter errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use umbra_core::families::{
    self, abel, bernoulli_higher, bernoulli_number, changhee2, frobenius_euler,
    frobenius_euler_number, s_poly, stirling1_triangle, stirling2_triangle, t_poly, Family,
};
use umbra_core::identities::{
    registry, render_reports, verify_instance, IdentityId, IdentityReport, IdentitySpec, Instance,
    InstanceReport, InstanceStatus, ReportFormat,
};
use umbra_core::text::{
    latex_lambdarat, latex_poly, render_lambdarat, render_lambdarat_pretty, render_poly,
    render_poly_pretty,
};
use umbra_core::{Error, LambdaRat, Poly, Rational};

#[derive(Parser)]
#[command(
    name = "umbra",
    version,
    about = "Exact umbral calculus over Q(L): polynomial families and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one member of a polynomial family.
    Compute(ComputeArgs),
    /// Print a Stirling triangle or a list of Frobenius-Euler numbers.
    Table(TableArgs),
    /// Verify identities from the registry over their parameter grids.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Family name: frobenius-euler, bernoulli, stirling1, stirling2, abel,
    /// changhee2, t-poly, s-poly, fe-number, bernoulli-number.
    #[arg(long)]
    family: String,
    /// Degree / index n.
    #[arg(long)]
    n: Option<u32>,
    /// Second Stirling index l.
    #[arg(long)]
    l: Option<u32>,
    /// Order alpha for Frobenius-Euler / Bernoulli families.
    #[arg(long)]
    order: Option<i64>,
    /// Abel parameter b (rational, e.g. 1/2); must be nonzero.
    #[arg(long)]
    b: Option<String>,
    /// Parameter mu for s-poly (positive integer).
    #[arg(long)]
    mu: Option<u32>,
    /// Output format: text, json, csv, latex.
    #[arg(long, default_value = "text")]
    format: String,
    /// Evaluate the result at L = p/q after computing (errors at poles).
    #[arg(long = "eval-lambda")]
    eval_lambda: Option<String>,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Family name: stirling1, stirling2, fe-numbers.
    #[arg(long)]
    family: String,
    /// Number of rows (n = 0..rows); must be at least 1.
    #[arg(long)]
    rows: u32,
    /// Output format: text, json, csv, latex.
    #[arg(long, default_value = "text")]
    format: String,
    /// Evaluate entries at L = p/q (errors at poles).
    #[arg(long = "eval-lambda")]
    eval_lambda: Option<String>,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id (repeatable), e.g. --id T4 --id E51.
    #[arg(long = "id")]
    ids: Vec<String>,
    /// Verify every registry entry.
    #[arg(long)]
    all: bool,
    /// Override the upper bound of the n grid.
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    /// Override the upper bound of the a grid.
    #[arg(long = "a-max")]
    a_max: Option<u32>,
    /// Override the b values for T9 (repeatable, rational).
    #[arg(long = "b")]
    b_values: Vec<String>,
    /// Override the upper bound of the mu grid.
    #[arg(long)]
    mu: Option<u32>,
    /// Output format: text, json, csv.
    #[arg(long, default_value = "text")]
    format: String,
    /// Number of worker threads for grid points.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Record wall-clock milliseconds per instance in the report (off by
    /// default so identical invocations produce byte-identical output).
    #[arg(long)]
    timings: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, Error> {
    text.parse::<Rational>()
        .map_err(|_| Error::BadParameter(format!("{what}: '{text}' is not a rational p/q")))
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::BadParameter(format!("missing required flag {flag}")))
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::BadParameter(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Error::BadParameter(format!("cannot write stdout: {e}")))
        }
    }
}

/// A computed value: polynomial in x, or a scalar in Q(L).
enum Value {
    Poly(Poly),
    Scalar(LambdaRat),
}

impl Value {
    fn specialize(self, lambda: &Rational) -> Result<Value, Error> {
        match self {
            Value::Poly(p) => {
                let mut coeffs = Vec::with_capacity(p.coeffs().len());
                for c in p.coeffs() {
                    coeffs.push(LambdaRat::from_rational(&c.eval(lambda)?));
                }
                Ok(Value::Poly(Poly::from_coeffs(coeffs)))
            }
            Value::Scalar(s) => Ok(Value::Scalar(LambdaRat::from_rational(&s.eval(lambda)?))),
        }
    }

    fn render(&self, format: &str) -> Result<String, Error> {
        Ok(match (self, format) {
            (Value::Poly(p), "text") => render_poly_pretty(p),
            (Value::Poly(p), "latex") => latex_poly(p),
            (Value::Poly(p), "csv") => p
                .coeffs()
                .iter()
                .map(render_lambdarat)
                .collect::<Vec<String>>()
                .join(","),
            (Value::Poly(p), "json") => format!("\"{}\"", render_poly(p)),
            (Value::Scalar(s), "text") => render_lambdarat_pretty(s),
            (Value::Scalar(s), "latex") => latex_lambdarat(s),
            (Value::Scalar(s), "csv") => render_lambdarat(s),
            (Value::Scalar(s), "json") => format!("\"{}\"", render_lambdarat(s)),
            (_, other) => return Err(Error::BadParameter(format!("unknown format '{other}'"))),
        })
    }
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, Error> {
    let family = Family::parse(&args.family)?;
    let mut params: Vec<(&str, String)> = Vec::new();
    let value = match family {
        Family::FrobeniusEuler => {
            let n = require(args.n, "--n")?;
            let order = args.order.unwrap_or(1);
            params.push(("n", n.to_string()));
            params.push(("order", order.to_string()));
            Value::Poly(frobenius_euler(n, order))
        }
        Family::Bernoulli => {
            let n = require(args.n, "--n")?;
            let order = args.order.unwrap_or(1);
            params.push(("n", n.to_string()));
            params.push(("order", order.to_string()));
            Value::Poly(bernoulli_higher(n, order))
        }
        Family::Stirling1 => {
            let n = require(args.n, "--n")?;
            let l = require(args.l, "--l")?;
            params.push(("n", n.to_string()));
            params.push(("l", l.to_string()));
            Value::Scalar(LambdaRat::from_integer(families::stirling1(n, l)))
        }
        Family::Stirling2 => {
            let l = require(args.l, "--l")?;
            let n = require(args.n, "--n")?;
            params.push(("l", l.to_string()));
            params.push(("n", n.to_string()));
            Value::Scalar(LambdaRat::from_integer(families::stirling2(l, n)))
        }
        Family::Abel => {
            let n = require(args.n, "--n")?;
            let b = parse_rational(&require(args.b.clone(), "--b")?, "--b")?;
            params.push(("n", n.to_string()));
            params.push(("b", b.to_string()));
            Value::Poly(abel(n, &b)?)
        }
        Family::Changhee2 => {
            let n = require(args.n, "--n")?;
            params.push(("n", n.to_string()));
            Value::Poly(changhee2(n))
        }
        Family::TPoly => {
            let n = require(args.n, "--n")?;
            params.push(("n", n.to_string()));
            Value::Poly(t_poly(n))
        }
        Family::SPoly => {
            let n = require(args.n, "--n")?;
            let mu = require(args.mu, "--mu")?;
            params.push(("n", n.to_string()));
            params.push(("mu", mu.to_string()));
            Value::Poly(s_poly(n, mu)?)
        }
        Family::FrobeniusEulerNumber => {
            let n = require(args.n, "--n")?;
            params.push(("n", n.to_string()));
            Value::Scalar(frobenius_euler_number(n))
        }
        Family::BernoulliNumber => {
            let n = require(args.n, "--n")?;
            let order = args.order.unwrap_or(1);
            params.push(("n", n.to_string()));
            params.push(("order", order.to_string()));
            Value::Scalar(bernoulli_number(n, order))
        }
    };
    let value = match &args.eval_lambda {
        Some(text) => {
            let lambda = parse_rational(text, "--eval-lambda")?;
            value.specialize(&lambda)?
        }
        None => value,
    };
    let body = value.render(&args.format)?;
    let content = if args.format == "json" {
        let params_json: Vec<String> = params
            .iter()
            .map(|(k, v)| format!("\"{k}\": \"{v}\""))
            .collect();
        format!(
            "{{\"family\": \"{}\", \"params\": {{{}}}, \"value\": {}}}\n",
            family.as_str(),
            params_json.join(", "),
            body
        )
    } else {
        format!("{body}\n")
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, Error> {
    if args.rows == 0 {
        return Err(Error::BadParameter(String::from("--rows must be >= 1")));
    }
    let family = Family::parse(&args.family)?;
    let eval_lambda = match &args.eval_lambda {
        Some(text) => Some(parse_rational(text, "--eval-lambda")?),
        None => None,
    };
    // Entries as machine and pretty strings, one row per line.
    let (name, rows): (&str, Vec<Vec<LambdaRat>>) = match family {
        Family::Stirling1 => (
            "stirling1",
            stirling1_triangle(args.rows)
                .into_iter()
                .map(|row| row.into_iter().map(LambdaRat::from_integer).collect())
                .collect(),
        ),
        Family::Stirling2 => (
            "stirling2",
            stirling2_triangle(args.rows)
                .into_iter()
                .map(|row| row.into_iter().map(LambdaRat::from_integer).collect())
                .collect(),
        ),
        Family::FrobeniusEulerNumber => (
            "fe-numbers",
            vec![(0..=args.rows).map(frobenius_euler_number).collect()],
        ),
        _ => {
            return Err(Error::BadParameter(format!(
                "table supports stirling1, stirling2, fe-numbers (got '{}')",
                family.as_str()
            )))
        }
    };
    let rows: Vec<Vec<LambdaRat>> = match &eval_lambda {
        Some(lambda) => {
            let mut out = Vec::with_capacity(rows.len());
            for row in rows {
                let mut new_row = Vec::with_capacity(row.len());
                for entry in row {
                    new_row.push(LambdaRat::from_rational(&entry.eval(lambda)?));
                }
                out.push(new_row);
            }
            out
        }
        None => rows,
    };
    let content = match args.format.as_str() {
        "text" => {
            let mut out = String::new();
            for row in &rows {
                let cells: Vec<String> = row.iter().map(render_lambdarat_pretty).collect();
                out.push_str(&cells.join(", "));
                out.push('\n');
            }
            out
        }
        "csv" => {
            let mut out = String::new();
            for row in &rows {
                let cells: Vec<String> = row.iter().map(render_lambdarat).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        "json" => {
            let rows_json: Vec<String> = rows
                .iter()
                .map(|row| {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|c| format!("\"{}\"", render_lambdarat(c)))
                        .collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            format!(
                "{{\"family\": \"{name}\", \"rows\": {}, \"data\": [{}]}}\n",
                args.rows,
                rows_json.join(", ")
            )
        }
        "latex" => {
            let mut out = String::new();
            for row in &rows {
                let cells: Vec<String> = row.iter().map(latex_lambdarat).collect();
                out.push_str(&cells.join(" & "));
                out.push_str(" \\\\\n");
            }
            out
        }
        other => return Err(Error::BadParameter(format!("unknown format '{other}'"))),
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn selected_specs(args: &VerifyArgs) -> Result<Vec<IdentitySpec>, Error> {
    if args.all != args.ids.is_empty() {
        return Err(Error::BadParameter(String::from(
            "pass either --all or at least one --id",
        )));
    }
    let mut specs = registry();
    if !args.all {
        let mut wanted: Vec<IdentityId> = Vec::with_capacity(args.ids.len());
        for raw in &args.ids {
            wanted.push(IdentityId::parse(raw)?);
        }
        specs.retain(|spec| wanted.contains(&spec.id));
    }
    // Grid overrides and the truncation-guard environment variable.
    let guard_override = match std::env::var("UMBRA_TRUNC_GUARD") {
        Ok(raw) => Some(raw.parse::<usize>().map_err(|_| {
            Error::BadParameter(format!("UMBRA_TRUNC_GUARD: '{raw}' is not an integer"))
        })?),
        Err(_) => None,
    };
    let mut b_values = Vec::with_capacity(args.b_values.len());
    for raw in &args.b_values {
        b_values.push(parse_rational(raw, "--b")?);
    }
    for spec in &mut specs {
        if let Some(n_max) = args.n_max {
            spec.grid.n_max = n_max;
        }
        if let Some(a_max) = args.a_max {
            spec.grid.a_max = a_max;
        }
        if let Some(mu) = args.mu {
            spec.grid.mu_max = mu;
        }
        if !b_values.is_empty() {
            spec.grid.b_values = b_values.clone();
        }
        if let Some(guard) = guard_override {
            spec.grid.guard = guard;
            spec.grid.t8_extra = guard + 2;
        }
    }
    Ok(specs)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let format = ReportFormat::parse(&args.format)?;
    let specs = selected_specs(&args)?;
    let jobs = args.jobs.max(1);

    // Flatten all grid points, fan out over a worker pool, and reassemble in
    // grid order so output is independent of scheduling.
    let mut tasks: Vec<(usize, Instance)> = Vec::new();
    let mut grids: Vec<Vec<Instance>> = Vec::with_capacity(specs.len());
    for (si, spec) in specs.iter().enumerate() {
        let insts = umbra_core::identities::instances(spec)?;
        for inst in &insts {
            tasks.push((si, inst.clone()));
        }
        grids.push(insts);
    }
    let results: Mutex<Vec<Option<(InstanceStatus, u64)>>> = Mutex::new(vec![None; tasks.len()]);
    let cursor = AtomicUsize::new(0);
    let record_ms = args.timings;
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(tasks.len().max(1)) {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let (si, inst) = &tasks[i];
                let started = Instant::now();
                let status = verify_instance(specs[*si].id, inst, &specs[*si].grid);
                let ms = if record_ms {
                    started.elapsed().as_millis() as u64
                } else {
                    0
                };
                results.lock().expect("no poisoned worker")[i] = Some((status, ms));
            });
        }
    });
    let results = results.into_inner().expect("workers finished");

    let mut reports: Vec<IdentityReport> = Vec::with_capacity(specs.len());
    let mut flat = 0usize;
    for (si, spec) in specs.iter().enumerate() {
        let mut instance_reports = Vec::with_capacity(grids[si].len());
        for inst in &grids[si] {
            let (status, ms) = results[flat].clone().expect("every task completed");
            flat += 1;
            instance_reports.push(InstanceReport {
                instance: inst.clone(),
                status,
                ms,
            });
        }
        reports.push(IdentityReport {
            id: spec.id,
            expectation: spec.expectation,
            grid_desc: umbra_core::identities::grid_description(spec),
            instances: instance_reports,
        });
    }

    let content = render_reports(&reports, format);
    write_output(&args.out, &content)?;
    if umbra_core::identities::suite_passed(&reports) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
