use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use riordan_core::chebfam::{triangle, Family};
use riordan_core::pseudo::{BSequence, Method};
use riordan_core::rational::fmt_all;
use riordan_core::registry::{lookup, names, scaled, Recipe};
use riordan_core::riordan::{Flavor, RiordanArray, TriangularMatrix};
use riordan_core::verify::run_suite;
use riordan_core::Error;
use serde_json::{json, Value};

const MAX_PRECISION: usize = 512;

/// Exact Riordan arrays and B-sequences of pseudo-involutions.
#[derive(Parser)]
#[command(name = "riordan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// g and its pseudo-involutory companion f.
    Series {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// B-sequences by one or more methods, cross-checked.
    Bfun {
        #[command(flatten)]
        input: Input,
        /// Comma-separated: definition,matrix,half,gamma,rational,closed-form.
        #[arg(long, value_delimiter = ',')]
        methods: Option<Vec<String>>,
        /// Also report β_n = (2n+1)! b_n.
        #[arg(long)]
        beta: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Rows 0..=N of a Riordan array or a polynomial-family triangle.
    Matrix {
        #[command(flatten)]
        input: Input,
        /// One of p, P, Q, R, T, U.
        #[arg(long, conflicts_with_all = ["name", "spec", "spec_file"])]
        cheb: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Runs a check suite: examples or identities.
    Verify {
        suite: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Input {
    /// A registered example.
    #[arg(long, conflicts_with_all = ["spec", "spec_file"])]
    name: Option<String>,
    /// Inline JSON spec.
    #[arg(long, conflicts_with = "spec_file")]
    spec: Option<String>,
    #[arg(long)]
    spec_file: Option<PathBuf>,
    #[arg(short = 'N', long = "precision", default_value_t = 8, value_parser = precision)]
    n: usize,
    /// Read (g, f) in this flavor instead of the input's own.
    #[arg(long, value_enum)]
    flavor: Option<FlavorArg>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Ordinary,
    Exponential,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn precision(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a non-negative integer"))?;
    if n > MAX_PRECISION {
        return Err(format!("precision {n} exceeds {MAX_PRECISION}"));
    }
    Ok(n)
}

enum Failure {
    Usage(String),
    Math(String),
    Verification(String),
    Disagreement(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Math(_) => 3,
            Failure::Disagreement(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Math(m) | Failure::Verification(m) | Failure::Disagreement(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

type Outcome = Result<String, (Option<String>, Failure)>;

fn fail<T>(f: Failure) -> Result<T, (Option<String>, Failure)> {
    Err((None, f))
}

fn math(e: Error) -> (Option<String>, Failure) {
    (None, e.into())
}

struct Resolved {
    label: String,
    recipe: Recipe,
}

fn resolve(input: &Input) -> Result<Resolved, (Option<String>, Failure)> {
    if let Some(name) = &input.name {
        return match lookup(name) {
            Some(e) => Ok(Resolved { label: name.clone(), recipe: e.recipe }),
            None => fail(Failure::Usage(format!("unknown example {name:?}; known: {}", names().join(", ")))),
        };
    }
    let text = match (&input.spec, &input.spec_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| (None, Failure::Usage(format!("cannot read {}: {e}", path.display()))))?,
        (None, None) => return fail(Failure::Usage("one of --name, --spec or --spec-file is required".into())),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| (None, Failure::Usage(format!("invalid JSON: {e}"))))?;
    let recipe = Recipe::from_json(&v).map_err(math)?;
    Ok(Resolved { label: "spec".into(), recipe })
}

fn flavor_of(input: &Input, recipe: &Recipe) -> Flavor {
    match input.flavor {
        Some(FlavorArg::Ordinary) => Flavor::Ordinary,
        Some(FlavorArg::Exponential) => Flavor::Exponential,
        None => recipe.flavor(),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn csv_line(label: &str, values: &[String]) -> String {
    let mut s = label.to_string();
    for v in values {
        s.push(',');
        s.push_str(v);
    }
    s
}

fn cmd_series(input: &Input, out: &Output) -> Outcome {
    let r = resolve(input)?;
    let n = input.n;
    let flavor = flavor_of(input, &r.recipe);
    let g = r.recipe.g(n).map_err(math)?;
    let mut report = json!({
        "input": r.label,
        "precision": n,
        "flavor": flavor.name(),
        "g": fmt_all(g.coeffs()),
    });
    if flavor == Flavor::Exponential {
        report["g_scaled"] = json!(fmt_all(&scaled(&g, flavor)));
    }
    let f = match r.recipe.f(n) {
        Ok(f) => f,
        Err(e) => {
            report["companion_error"] = json!(e.to_string());
            let text = match out.format {
                Some(Format::Csv) => csv_line("g", &fmt_all(g.coeffs())),
                _ => pretty(&report),
            };
            return Err((Some(text), e.into()));
        }
    };
    report["f"] = json!(fmt_all(f.coeffs()));
    if flavor == Flavor::Exponential {
        report["f_scaled"] = json!(fmt_all(&scaled(&f, flavor)));
    }
    Ok(match out.format {
        Some(Format::Csv) => format!("{}\n{}", csv_line("g", &fmt_all(g.coeffs())), csv_line("f", &fmt_all(f.coeffs()))),
        _ => pretty(&report),
    })
}

fn parse_methods(requested: &Option<Vec<String>>, recipe: &Recipe) -> Result<Vec<Method>, (Option<String>, Failure)> {
    let available = recipe.methods();
    let Some(list) = requested else { return Ok(available) };
    let mut methods = Vec::new();
    for name in list {
        let m = Method::parse(name.trim())
            .ok_or_else(|| (None, Failure::Usage(format!("unknown method {name:?}"))))?;
        if !available.contains(&m) {
            let names: Vec<&str> = available.iter().map(|m| m.name()).collect();
            return fail(Failure::Usage(format!("method {m} does not apply here; available: {}", names.join(","))));
        }
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return fail(Failure::Usage("no methods requested".into()));
    }
    Ok(methods)
}

fn cmd_bfun(input: &Input, requested: &Option<Vec<String>>, beta: bool, out: &Output) -> Outcome {
    let r = resolve(input)?;
    let methods = parse_methods(requested, &r.recipe)?;
    let n = input.n;
    let mut results: Vec<(Method, BSequence)> = Vec::new();
    for &m in &methods {
        let b = r.recipe.b(m, n).map_err(|e| (None, Failure::from(e)))?;
        results.push((m, b));
    }
    let reference = &results[0];
    let disagreement = results[1..].iter().find_map(|(m, b)| b.first_difference(&reference.1).map(|i| (*m, i)));
    let mut per_method = serde_json::Map::new();
    for (m, b) in &results {
        let mut entry = b.to_json(beta);
        if b.origin != *m {
            entry["computed_by"] = json!(b.origin.name());
        }
        per_method.insert(m.name().to_string(), entry);
    }
    let mut report = json!({
        "input": r.label,
        "precision": n,
        "methods": Value::Object(per_method),
        "agree": disagreement.is_none(),
    });
    if let Some((m, i)) = disagreement {
        report["first_difference"] = json!({ "index": i, "methods": [reference.0.name(), m.name()] });
    }
    let text = match out.format {
        Some(Format::Csv) => {
            let mut s = String::new();
            for (m, b) in &results {
                writeln!(s, "{}", csv_line(m.name(), &fmt_all(&b.b))).unwrap();
                if beta {
                    writeln!(s, "{}", csv_line(&format!("{}-beta", m.name()), &fmt_all(&b.beta()))).unwrap();
                }
            }
            s.trim_end().to_string()
        }
        _ => pretty(&report),
    };
    match disagreement {
        None => Ok(text),
        Some((m, i)) => Err((
            Some(text),
            Failure::Disagreement(format!("{} and {m} first differ at index {i}", reference.0)),
        )),
    }
}

fn emit_matrix(m: &TriangularMatrix, out: &Output) -> String {
    match out.format {
        Some(Format::Csv) => m.to_csv().trim_end().to_string(),
        _ => pretty(&m.to_json()),
    }
}

fn cmd_matrix(input: &Input, cheb: &Option<String>, out: &Output) -> Outcome {
    if let Some(sym) = cheb {
        let family = Family::parse(sym).ok_or_else(|| (None, Failure::Usage(format!("unknown family {sym:?}"))))?;
        let rows = triangle(family, input.n);
        let m = TriangularMatrix::from_rows(rows).map_err(math)?;
        return Ok(emit_matrix(&m, out));
    }
    let r = resolve(input)?;
    let n = input.n;
    let flavor = flavor_of(input, &r.recipe);
    let g = r.recipe.g(n).map_err(math)?;
    let f = r.recipe.f(n).map_err(math)?;
    let arr = RiordanArray::new(g, f, flavor).map_err(math)?;
    let m = arr.entries(n).map_err(math)?;
    Ok(emit_matrix(&m, out))
}

fn cmd_verify(suite: &str, out: &Output) -> Outcome {
    let checks = run_suite(suite).map_err(math)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let text = match out.format {
        Some(Format::Json) => pretty(&json!({ "suite": suite, "checks": checks, "passed": failed.is_empty() })),
        _ => {
            let mut s = String::new();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                write!(s, "{status} {} [{}]", c.name, c.anchor).unwrap();
                if let Some(d) = &c.detail {
                    write!(s, ": {d}").unwrap();
                }
                s.push('\n');
            }
            write!(s, "{}/{} checks passed", checks.len() - failed.len(), checks.len()).unwrap();
            s
        }
    };
    if failed.is_empty() {
        Ok(text)
    } else {
        Err((Some(text), Failure::Verification(format!("failed: {}", failed.join("; ")))))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Series { input, out } => cmd_series(input, out),
        Command::Bfun { input, methods, beta, out } => cmd_bfun(input, methods, *beta, out),
        Command::Matrix { input, cheb, out } => cmd_matrix(input, cheb, out),
        Command::Verify { suite, out } => cmd_verify(suite, out),
    };
    match result {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err((text, failure)) => {
            if let Some(text) = text {
                println!("{text}");
            }
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
