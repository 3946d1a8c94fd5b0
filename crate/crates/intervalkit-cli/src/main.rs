//! Command-line surface: expression evaluation, differentiation,
//! integration, IDE solving, trajectory comparison, and the built-in
//! check suite.
//!
//! Exit codes are part of the contract: 0 success, 2 parse error, 3
//! evaluation error, 4 solver error, 5 comparison error.

mod config;
mod csvio;
mod svg;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use intervalkit::calculus::{derive, find_switching_points, gh_derive, IvfHandle};
use intervalkit::expr::{eval_interval, eval_interval_t, parse as parse_expr};
use intervalkit::ide::{
    compare, solve_gh, solve_new, solve_param_sweep, solve_picard_detailed, Method,
};
use intervalkit::interval::{ExtendedInterval, Interval};
use intervalkit::quadrature::ir_integral;
use intervalkit::selftest;
use intervalkit::trajectory::EndpointTrajectory;

const EXIT_PARSE: i32 = 2;
const EXIT_EVAL: i32 = 3;
const EXIT_SOLVER: i32 = 4;
const EXIT_COMPARE: i32 = 5;

#[derive(Parser)]
#[command(
    name = "intervalkit",
    version,
    about = "Interval calculus toolkit: linear-space interval arithmetic, hybrid differentiation and integration, and interval differential equation solvers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an interval expression
    Eval {
        /// Expression text, e.g. "[-2,-1]*[1,2]" or "x-x"
        expr: String,
        /// Binding for the variable t
        #[arg(long)]
        t: Option<f64>,
        /// Binding for the variable x as an interval literal, e.g. "[5,9]"
        #[arg(long)]
        x: Option<String>,
    },
    /// Differentiate an interval-valued function of t
    Diff {
        /// Expression in t, e.g. "[t, t^2+1]"
        expr: String,
        /// Evaluation point
        #[arg(long, conflicts_with = "grid")]
        at: Option<f64>,
        /// Evaluation grid lo:hi:n, emitted as CSV
        #[arg(long)]
        grid: Option<String>,
        /// Use the gH-derivative family
        #[arg(long)]
        gh: bool,
        /// Locate width-derivative sign changes instead of differentiating
        #[arg(long, requires = "domain")]
        switching: bool,
        /// Function domain lo:hi (defaults to a neighbourhood of the request)
        #[arg(long)]
        domain: Option<String>,
        /// Scan resolution for --switching
        #[arg(long, default_value_t = 64)]
        grid_n: usize,
    },
    /// Integrate an interval-valued function of t
    Integrate {
        /// Expression in t
        expr: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Solve an interval differential equation described by a config file
    Solve {
        config: PathBuf,
        /// Output directory for trajectory CSV files
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare trajectory CSV files sharing one grid
    Compare {
        files: Vec<PathBuf>,
        /// Write an overlay plot of all trajectories
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write per-node deviation rows
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the reference-example check suite and print a pass table
    Selftest,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn run(cmd: Cmd) -> Result<i32, Failure> {
    match cmd {
        Cmd::Eval { expr, t, x } => cmd_eval(&expr, t, x.as_deref()),
        Cmd::Diff {
            expr,
            at,
            grid,
            gh,
            switching,
            domain,
            grid_n,
        } => cmd_diff(&expr, at, grid.as_deref(), gh, switching, domain.as_deref(), grid_n),
        Cmd::Integrate { expr, from, to, tol } => cmd_integrate(&expr, from, to, tol),
        Cmd::Solve { config, out } => cmd_solve(&config, &out),
        Cmd::Compare { files, svg, csv } => cmd_compare(&files, svg.as_deref(), csv.as_deref()),
        Cmd::Selftest => cmd_selftest(),
    }
}

fn print_interval(v: Interval) {
    println!("[l,r] = {v}");
    println!("<c;w> = {}", v.to_center_radius_string());
}

fn cmd_eval(expr: &str, t: Option<f64>, x: Option<&str>) -> Result<i32, Failure> {
    let ast = parse_expr(expr).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    let x_val = match x {
        Some(text) => Some(
            config::parse_interval_literal(text).map_err(|m| fail(EXIT_PARSE, format!("--x: {m}")))?,
        ),
        None => None,
    };
    if ast.uses_t() && t.is_none() {
        return Err(fail(EXIT_EVAL, "expression references t; pass --t"));
    }
    if ast.uses_x() && x_val.is_none() {
        return Err(fail(EXIT_EVAL, "expression references x; pass --x"));
    }
    let tv = t.unwrap_or(0.0);
    let value = match x_val {
        Some(iv) => eval_interval(&ast, tv, iv),
        None => eval_interval_t(&ast, tv),
    }
    .map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
    print_interval(value);
    Ok(0)
}

fn parse_pair(spec: &str, what: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 2 {
        if let (Ok(a), Ok(b)) = (parts[0].parse(), parts[1].parse()) {
            return Ok((a, b));
        }
    }
    Err(fail(EXIT_PARSE, format!("{what}: expected lo:hi, got `{spec}`")))
}

fn parse_grid_spec(spec: &str) -> Result<(f64, f64, usize), Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        if let (Ok(a), Ok(b), Ok(n)) = (parts[0].parse(), parts[1].parse(), parts[2].parse()) {
            return Ok((a, b, n));
        }
    }
    Err(fail(EXIT_PARSE, format!("--grid: expected lo:hi:n, got `{spec}`")))
}

fn cmd_diff(
    expr: &str,
    at: Option<f64>,
    grid: Option<&str>,
    gh: bool,
    switching: bool,
    domain: Option<&str>,
    grid_n: usize,
) -> Result<i32, Failure> {
    let ast = parse_expr(expr).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    let make_handle = |lo: f64, hi: f64| {
        IvfHandle::from_expr(ast.clone(), lo, hi).map_err(|e| fail(EXIT_EVAL, e.to_string()))
    };

    if switching {
        let (lo, hi) = parse_pair(domain.expect("clap enforces --domain"), "--domain")?;
        let handle = make_handle(lo, hi)?;
        let pts = find_switching_points(&handle, grid_n.max(16))
            .map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
        for p in pts {
            println!("{p:.12}");
        }
        return Ok(0);
    }

    if let Some(spec) = grid {
        let (a, b, n) = parse_grid_spec(spec)?;
        if !(a < b && n >= 2) {
            return Err(fail(EXIT_PARSE, "--grid needs lo < hi and n >= 2"));
        }
        let (dlo, dhi) = match domain {
            Some(d) => parse_pair(d, "--domain")?,
            None => {
                let pad = (1e-3 * (b - a)).max(1e-3);
                (a - pad, b + pad)
            }
        };
        let handle = make_handle(dlo, dhi)?;
        println!("{}", csvio::HEADER);
        for i in 0..n {
            let t = a + (b - a) * (i as f64) / ((n - 1) as f64);
            let (lo, hi) = if gh {
                let d = gh_derive(&handle, t).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
                d.value.to_endpoints()
            } else {
                let d = derive(&handle, t).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
                d.value.to_endpoints()
            };
            let c = 0.5 * (lo + hi);
            let w = 0.5 * (hi - lo);
            println!("{t:.16e},{lo:.16e},{hi:.16e},{c:.16e},{w:.16e}");
        }
        return Ok(0);
    }

    let Some(t) = at else {
        return Err(fail(EXIT_PARSE, "pass --at or --grid"));
    };
    let (dlo, dhi) = match domain {
        Some(d) => parse_pair(d, "--domain")?,
        None => (t - 0.5, t + 0.5),
    };
    let handle = make_handle(dlo, dhi)?;
    if gh {
        let d = gh_derive(&handle, t).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
        println!("[l,r] = {}", d.value);
        println!("estimated error = {:.3e}", d.estimated_error);
    } else {
        let d = derive(&handle, t).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
        print_interval(d.value);
        println!("estimated error = {:.3e}", d.estimated_error);
    }
    Ok(0)
}

fn cmd_integrate(expr: &str, from: f64, to: f64, tol: f64) -> Result<i32, Failure> {
    let ast = parse_expr(expr).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    let handle =
        IvfHandle::from_expr(ast, from, to).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
    let r = ir_integral(&handle, from, to, tol).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
    print_interval(r.value);
    println!("estimated error = {:.3e}", r.estimated_error);
    println!("evaluations = {}", r.evaluations);
    Ok(0)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Rk4 => "rk4",
        Method::Picard => "picard",
        Method::GhBranch => "gh_branch",
        Method::ParamSweep => "param_sweep",
    }
}

fn cmd_solve(config_path: &Path, out_dir: &Path) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| fail(1, format!("read {}: {e}", config_path.display())))?;
    let problem = config::parse_config(&text).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| fail(1, format!("create {}: {e}", out_dir.display())))?;
    let stem = config_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "problem".into());

    println!("method: {}", method_name(problem.method));
    println!("step: {}", problem.step);
    let start = Instant::now();
    let mut written: Vec<PathBuf> = Vec::new();

    match problem.method {
        Method::Rk4 => {
            let traj = solve_new(&problem).map_err(|e| fail(EXIT_SOLVER, e.to_string()))?;
            let path = out_dir.join(format!("{stem}_rk4.csv"));
            csvio::write_trajectory(&path, &traj.to_endpoints())
                .map_err(|e| fail(1, e.to_string()))?;
            written.push(path);
        }
        Method::Picard => {
            let (traj, iterations, residual) =
                solve_picard_detailed(&problem).map_err(|e| fail(EXIT_SOLVER, e.to_string()))?;
            println!("picard iterations: {iterations}");
            println!("picard residual: {residual:.3e}");
            let path = out_dir.join(format!("{stem}_picard.csv"));
            csvio::write_trajectory(&path, &traj.to_endpoints())
                .map_err(|e| fail(1, e.to_string()))?;
            written.push(path);
        }
        Method::GhBranch => {
            let sol = solve_gh(&problem).map_err(|e| fail(EXIT_SOLVER, e.to_string()))?;
            for d in &sol.discarded {
                println!(
                    "discarded branch {}: endpoints crossed at t = {:.6}",
                    d.branch_index + 1,
                    d.t_crossed
                );
            }
            for (k, gt) in sol.trajectories.iter().enumerate() {
                let path = out_dir.join(format!("{stem}_gh_{}.csv", k + 1));
                csvio::write_trajectory(&path, &gt.trajectory)
                    .map_err(|e| fail(1, e.to_string()))?;
                written.push(path);
            }
        }
        Method::ParamSweep => {
            let env = solve_param_sweep(&problem).map_err(|e| fail(EXIT_SOLVER, e.to_string()))?;
            let path = out_dir.join(format!("{stem}_sweep.csv"));
            csvio::write_trajectory(&path, &env).map_err(|e| fail(1, e.to_string()))?;
            written.push(path);
        }
    }

    println!("runtime_ms: {:.1}", start.elapsed().as_secs_f64() * 1e3);
    for p in &written {
        println!("wrote: {}", p.display());
    }
    Ok(0)
}

fn cmd_compare(
    files: &[PathBuf],
    svg_out: Option<&Path>,
    csv_out: Option<&Path>,
) -> Result<i32, Failure> {
    if files.len() < 2 {
        return Err(fail(EXIT_PARSE, "compare needs at least two CSV files"));
    }
    let mut trajs: Vec<EndpointTrajectory> = Vec::new();
    for f in files {
        trajs.push(csvio::read_trajectory(f).map_err(|e| fail(EXIT_PARSE, e.to_string()))?);
    }
    let report = compare(&trajs).map_err(|e| fail(EXIT_COMPARE, e.to_string()))?;
    let label = |k: usize| {
        files[k]
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| format!("traj{k}"))
    };
    for p in report.pairs() {
        println!(
            "pair {}-{} ({} vs {}): sup deviation = {:.6e}",
            p.first,
            p.second,
            label(p.first),
            label(p.second),
            p.sup
        );
    }
    if let Some(path) = csv_out {
        std::fs::write(path, report.to_csv())
            .map_err(|e| fail(1, format!("write {}: {e}", path.display())))?;
        println!("wrote: {}", path.display());
    }
    if let Some(path) = svg_out {
        let series: Vec<svg::Series> = trajs
            .iter()
            .enumerate()
            .map(|(k, t)| svg::Series {
                label: label(k),
                t: t.grid().to_vec(),
                lo: t.values().iter().map(ExtendedInterval::lo).collect(),
                hi: t.values().iter().map(ExtendedInterval::hi).collect(),
            })
            .collect();
        std::fs::write(path, svg::render(&series))
            .map_err(|e| fail(1, format!("write {}: {e}", path.display())))?;
        println!("wrote: {}", path.display());
    }
    Ok(0)
}

fn cmd_selftest() -> Result<i32, Failure> {
    let start = Instant::now();
    let results = selftest::run_all();
    let mut failed = 0usize;
    println!("{:>3}  {:6}  {:52}  {:>10}", "#", "result", "check", "time");
    for r in &results {
        let (state, detail) = match &r.outcome {
            Ok(()) => ("PASS", String::new()),
            Err(e) => {
                failed += 1;
                ("FAIL", format!("  <- {e}"))
            }
        };
        println!(
            "{:>3}  {:6}  {:52}  {:>8.1} ms{}",
            r.id, state, r.name, r.elapsed_ms, detail
        );
    }
    let total = start.elapsed().as_secs_f64();
    if failed == 0 {
        println!("all {} checks passed in {:.2} s", results.len(), total);
        Ok(0)
    } else {
        println!(
            "{failed} of {} checks failed (total {:.2} s)",
            results.len(),
            total
        );
        Ok(1)
    }
}
