//! `sasaki`: command-line front end for the Reeb-parameter solver and the
//! profile builder.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};

use sasaki_core::catalog::{families, grassmannian_is_non_toric, resolve_source};
use sasaki_core::exact::{parse_rational, to_fraction_string};
use sasaki_core::profile::{
    profile_parameter, tabulate, verify_profile, ProfileGrid, ProfileModel, VerifyTolerances, DEFAULT_QUAD_TOL,
};
use sasaki_core::reeb::{futaki_obstruction, solve_with, SolverOptions};
use sasaki_core::report::SolveRecord;
use sasaki_core::{BigRational, Error, FanoBaseSpec};

const EXIT_INPUT: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_QUADRATURE: u8 = 4;
const EXIT_VERIFICATION: u8 = 5;

#[derive(Parser)]
#[command(name = "sasaki", version, about = "Reeb parameters and transverse Kähler-Einstein profiles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve F(a_0) = 0 and classify the Reeb field.
    Solve {
        /// Spec JSON file or catalog name (dp1, pp:1/1, gr:4,2,1, fermat:3, spec:1/2^2).
        source: String,
        #[command(flatten)]
        solver: SolverArgs,
        /// Print the result as JSON.
        #[arg(long)]
        json: bool,
        /// Also write the JSON result to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Futaki obstruction of M_W^L and the Kähler-Einstein criterion.
    Futaki {
        source: String,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the profile x(ρ), u(ρ) and write a verification report.
    Profile {
        source: String,
        #[command(flatten)]
        solver: SolverArgs,
        /// ρ range as lo:hi.
        #[arg(long, default_value = "-20:20", allow_hyphen_values = true)]
        rho: String,
        /// Number of grid points.
        #[arg(long, default_value_t = 2001)]
        steps: usize,
        /// Quadrature and inversion tolerance.
        #[arg(long, default_value_t = DEFAULT_QUAD_TOL)]
        quad_tol: f64,
        /// CSV path; the report goes next to it as <stem>.report.json.
        #[arg(long, default_value = "profile.csv")]
        out: PathBuf,
        /// Shift a away from a_0 (negative control).
        #[arg(long, hide = true, allow_hyphen_values = true)]
        perturb_a: Option<String>,
        /// Panel budget per quadrature call.
        #[arg(long, hide = true)]
        max_panels: Option<usize>,
    },
    /// List the built-in example families.
    Catalog {
        #[arg(long)]
        json: bool,
        /// Add non-toric Grassmannian annotations.
        #[arg(short, long)]
        verbose: bool,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// Width of the a_0 enclosure, as a decimal or p/q.
    #[arg(long, default_value = "1e-12")]
    tol: String,
    /// Largest a tried while bracketing.
    #[arg(long, hide = true)]
    upper_cap: Option<String>,
    /// Smallest a + 1/2 tried while bracketing.
    #[arg(long, hide = true)]
    lower_gap: Option<String>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EigenvalueOutOfRange { .. }
            | Error::EmptySpec
            | Error::InvalidSpec(_)
            | Error::ReebParameterOutOfRange { .. }
            | Error::DomainError { .. } => EXIT_INPUT,
            Error::ZeroPolynomial | Error::SolverFailure(_) => EXIT_SOLVER,
            Error::QuadratureFailure { .. } | Error::RhoOutOfRange { .. } => EXIT_QUADRATURE,
            Error::PositivityViolation { .. } => EXIT_VERIFICATION,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn positive_rational(text: &str, what: &str) -> CliResult<BigRational> {
    match parse_rational(text) {
        Some(r) if r.is_positive() => Ok(r),
        _ => Err(Failure::input(format!("{what} must be a positive rational, got {text:?}"))),
    }
}

impl SolverArgs {
    fn options(&self) -> CliResult<SolverOptions> {
        let mut options = SolverOptions::with_tolerance(positive_rational(&self.tol, "--tol")?);
        if let Some(cap) = &self.upper_cap {
            options.upper_cap = positive_rational(cap, "--upper-cap")?;
        }
        if let Some(gap) = &self.lower_gap {
            options.lower_gap = positive_rational(gap, "--lower-gap")?;
        }
        Ok(options)
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn parse_rho_range(text: &str) -> CliResult<(f64, f64)> {
    let bad = || Failure::input(format!("--rho expects lo:hi, got {text:?}"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn report_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().and_then(|s| s.to_str()).unwrap_or("profile");
    csv.with_file_name(format!("{stem}.report.json"))
}

fn cmd_solve(source: &str, solver: &SolverArgs, json: bool, out: Option<&Path>) -> CliResult<()> {
    let spec = resolve_source(source)?;
    let solution = solve_with(&spec, &solver.options()?)?;
    let record = SolveRecord::new(&spec, &solution);
    let text = record.to_json();
    if let Some(path) = out {
        write_file(path, &format!("{text}\n"))?;
    }
    if json {
        println!("{text}");
        return Ok(());
    }
    println!("spec:        {}", spec.label());
    println!("a0:          {:.16e}", record.a0.float);
    println!("enclosure:   [{}, {}]", record.a0.enclosure[0], record.a0.enclosure[1]);
    match &record.a0.exact {
        Some(r) => println!("regularity:  {} (a0 = {r})", record.a0.regularity),
        None => println!("regularity:  {}", record.a0.regularity),
    }
    println!("P(a):        {}", solution.numerator.display_in("a"));
    println!("|F(a0)|:     {:e}", record.f_residual);
    println!("futaki:      {}", record.futaki);
    Ok(())
}

fn cmd_futaki(source: &str, json: bool) -> CliResult<()> {
    let spec = resolve_source(source)?;
    let value = futaki_obstruction(&spec);
    let exists = value.is_zero();
    if json {
        let v = serde_json::json!({
            "label": spec.label(),
            "futaki": to_fraction_string(&value),
            "kahler_einstein": exists,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        println!("futaki({}) = {}", spec.label(), to_fraction_string(&value));
        println!("KE exists on M_W^L: {}", if exists { "yes" } else { "no" });
    }
    Ok(())
}

struct ProfileArgs<'a> {
    spec: FanoBaseSpec,
    solver: &'a SolverArgs,
    rho: (f64, f64),
    steps: usize,
    quad_tol: f64,
    out: &'a Path,
    perturb_a: Option<&'a str>,
    max_panels: Option<usize>,
}

fn cmd_profile(args: ProfileArgs<'_>) -> CliResult<()> {
    let spec = &args.spec;
    let grid = ProfileGrid { rho_min: args.rho.0, rho_max: args.rho.1, steps: args.steps };
    if args.quad_tol.is_nan() || args.quad_tol <= 0.0 {
        return Err(Failure::input(format!("--quad-tol must be positive, got {}", args.quad_tol)));
    }
    if args.steps < 2 || grid.rho_min >= grid.rho_max {
        return Err(Failure::input(format!(
            "profile grid needs lo < hi and --steps >= 2, got {}:{} with {} steps",
            grid.rho_min, grid.rho_max, grid.steps
        )));
    }
    let solution = solve_with(spec, &args.solver.options()?)?;
    let mut a = profile_parameter(spec, &solution)?;
    if let Some(delta) = args.perturb_a {
        a += parse_rational(delta).ok_or_else(|| Failure::input(format!("bad --perturb-a {delta:?}")))?;
    }
    let mut model = ProfileModel::new(spec, &a)?;
    if let Some(panels) = args.max_panels {
        model.max_panels = panels;
    }
    let table = tabulate(&model, grid, args.quad_tol)?;
    let report = verify_profile(spec, &solution, &table, &VerifyTolerances::for_quadrature(args.quad_tol));
    write_file(args.out, &table.to_csv())?;
    let report_file = report_path(args.out);
    write_file(&report_file, &format!("{}\n", report.to_json()))?;

    println!("spec:      {}", spec.label());
    println!("a:         {:.16e}", table.a);
    println!("rows:      {}", table.rows.len());
    println!("residual:  {:e}", table.max_abs_residual());
    println!("csv:       {}", args.out.display());
    println!("report:    {}", report_file.display());
    for check in report.failed_checks() {
        println!("FAILED     {}", check.name);
    }
    println!("overall:   {}", if report.passed() { "pass" } else { "fail" });
    if report.passed() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFICATION, message: "profile verification failed".into() })
    }
}

fn cmd_catalog(json: bool, verbose: bool) -> CliResult<()> {
    let fams = families();
    let non_toric: Vec<(u32, u32)> = (4..=7)
        .flat_map(|k| (1..k).map(move |p| (k, p)))
        .filter(|&(k, p)| grassmannian_is_non_toric(k, p))
        .collect();
    if json {
        let mut v = serde_json::json!({ "families": fams });
        if verbose {
            v["non_toric_grassmannians"] =
                non_toric.iter().map(|&(k, p)| serde_json::json!({ "k": k, "p": p })).collect();
        }
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        return Ok(());
    }
    for f in &fams {
        println!("{:<7} {}", f.name, f.grammar);
        println!("        base:        {}", f.base);
        println!("        line bundle: {}", f.line_bundle);
        println!("        eigenvalues: {}", f.eigenvalues);
        println!("        bounds:      {}", f.bounds);
        if verbose {
            println!("        toric:       {}", f.toric);
        }
    }
    if verbose {
        println!();
        println!("non-toric Grassmannians (2 <= p <= k-2), S_W^L non-toric:");
        for (k, p) in non_toric {
            println!("        gr:{k},{p},v   Gr({p},{k}), -{k} < v < {k}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve { source, solver, json, out } => cmd_solve(&source, &solver, json, out.as_deref()),
        Command::Futaki { source, json } => cmd_futaki(&source, json),
        Command::Profile { source, solver, rho, steps, quad_tol, out, perturb_a, max_panels } => {
            let rho = parse_rho_range(&rho)?;
            cmd_profile(ProfileArgs {
                spec: resolve_source(&source)?,
                solver: &solver,
                rho,
                steps,
                quad_tol,
                out: &out,
                perturb_a: perturb_a.as_deref(),
                max_panels,
            })
        }
        Command::Catalog { json, verbose } => cmd_catalog(json, verbose),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
