use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use abel_trig::abel::{center_obstruction, cofactor_of_line, degree_identity, is_invariant_line, rational_cycle_bound};
use abel_trig::construction::{construct_two_curves, recover_params, ParamTuple, TwoCurves};
use abel_trig::darboux::{curve_ratios, dependence_kernel, first_integral};
use abel_trig::factorization::{self, complex_factors, factor, is_zero_free_exact};
use abel_trig::json::{self, exact_field, exact_to_json, float, rational};
use abel_trig::poincare::{find_limit_cycles, rational_matches, ScanOptions, DEFAULT_RTOL, DEFAULT_TOL};
use abel_trig::{random, AbelEquation, AnyTrigPoly, Error, ExactPoly, InvariantLine, Rational};
use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "abel",
    version,
    about = "Invariant lines, limit cycles and first integrals of Abel equations x' = A(t)x^3 + B(t)x^2"
)]
struct Cli {
    /// Seed for randomized harnesses.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a trigonometric polynomial into irreducibles a cos t + b sin t + c.
    Factor {
        /// JSON file with a polynomial (or {"P": ...}); `-` reads stdin.
        input: PathBuf,
        #[arg(long, default_value_t = factorization::DEFAULT_TOL)]
        tol: f64,
        /// Also list the factorization over ℂ.
        #[arg(long)]
        complex: bool,
    },
    /// Check that 1 - P(t)x = 0 is an invariant line of {"A", "B", "P"}.
    Verify { input: PathBuf },
    /// Build an equation with two invariant lines from {"G", "Ghat", "S1", "k"}.
    Construct {
        /// Parameter file; omit and pass --random to draw a tuple from --seed.
        input: Option<PathBuf>,
        #[arg(long)]
        random: bool,
    },
    /// Recover (G, Ghat, S1, k) from {"A", "B", "P1", "P2"}.
    Recover { input: PathBuf },
    /// Look for a Darboux first integral among {"A", "B", "curves": [...]}.
    Darboux { input: PathBuf },
    /// Scan the return map of {"A", "B"} for limit cycles.
    Poincare {
        input: PathBuf,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        xmin: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        xmax: f64,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_RTOL)]
        rtol: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Write (x0, x(2π)) pairs to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Reproduce the worked example end to end.
    Example1 {
        #[arg(long, default_value_t = 400)]
        grid: usize,
    },
}

enum Failure {
    Io(String),
    Lib(Error),
    /// The report is still printed, then the process exits with code 2.
    Violated(Value, Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_input(path: &PathBuf) -> std::result::Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    Ok(json::parse_document(&text)?)
}

fn equation(doc: &Value) -> Result<AbelEquation, Error> {
    Ok(AbelEquation::new(exact_field(doc, "A")?, exact_field(doc, "B")?))
}

fn bound_json(eq: &AbelEquation) -> Value {
    rational_cycle_bound(eq).map_or(Value::Null, |b| json!(b))
}

fn cmd_factor(doc: &Value, tol: f64, with_complex: bool) -> Outcome {
    let poly = match doc.get("P") {
        Some(p) => json::poly_from_json(p, "P")?,
        None => json::poly_from_json(doc, "P")?,
    };
    let zero_free = match &poly {
        AnyTrigPoly::Exact(p) => is_zero_free_exact(p),
        AnyTrigPoly::Float(p) => factorization::is_zero_free(p, tol)?,
    };
    let fac = match &poly {
        AnyTrigPoly::Exact(p) => factor(p, tol)?,
        AnyTrigPoly::Float(p) => factor(p, tol)?,
    };
    let mut out = json!({
        "degree": poly.degree(),
        "field": poly.field(),
        "zero_free": zero_free,
        "factorization": json::factorization_to_json(&fac),
    });
    if with_complex {
        let c = match &poly {
            AnyTrigPoly::Exact(p) => complex_factors(p, tol)?,
            AnyTrigPoly::Float(p) => complex_factors(p, tol)?,
        };
        out["complex"] = json!({
            "unit": [float(c.unit.re), float(c.unit.im)],
            "factors": c.factors.iter().map(json::complex_factor_to_json).collect::<Vec<_>>(),
            "residual": float(c.residual),
        });
    }
    Ok(out)
}

fn cmd_verify(doc: &Value) -> Outcome {
    let eq = equation(doc)?;
    let mut p = exact_field(doc, "P")?;
    // a curve c - P x = 0 is rescaled to 1 - (P/c) x = 0
    if let Some(c) = doc.get("c") {
        let c = json::rational_from_json(c, "c")?;
        if c.is_zero() {
            return Err(Error::InvalidArgument("c must be nonzero".into()).into());
        }
        p = p.scale(&(Rational::from_integer(1.into()) / c));
    }
    let invariant = is_invariant_line(&eq, &p)?;
    let cofactor = match InvariantLine::new(p.clone()) {
        Ok(line) if invariant => json::cofactor_to_json(&cofactor_of_line(&eq, &line)?),
        _ => Value::Null,
    };
    let identity = match doc.get("P2") {
        Some(v) if invariant => json!(degree_identity(&eq, &p, &json::exact_from_json(v, "P2")?)?),
        _ => Value::Null,
    };
    let report = json!({
        "invariant": invariant,
        "constant_line": p.is_unit(),
        "cofactor": cofactor,
        "degree_identity": identity,
        "bound": bound_json(&eq),
        "center_obstruction": center_obstruction(&eq),
    });
    if invariant {
        Ok(report)
    } else {
        Err(Failure::Violated(report, Error::NotInvariant))
    }
}

fn curves_json(c: &TwoCurves) -> Value {
    json!({
        "A": exact_to_json(&c.eq.a),
        "B": exact_to_json(&c.eq.b),
        "P1": exact_to_json(&c.p1),
        "P2": exact_to_json(&c.p2),
        "bound": bound_json(&c.eq),
        "center_obstruction": center_obstruction(&c.eq),
    })
}

fn cmd_construct(params: &ParamTuple) -> Outcome {
    Ok(curves_json(&construct_two_curves(params)?))
}

fn cmd_recover(doc: &Value) -> Outcome {
    let eq = equation(doc)?;
    let p = recover_params(&exact_field(doc, "P1")?, &exact_field(doc, "P2")?, &eq)?;
    Ok(json::params_to_json(&p))
}

fn cmd_darboux(doc: &Value) -> Outcome {
    let eq = equation(doc)?;
    let curves = doc
        .get("curves")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array \"curves\"".into()))?;
    let lines = curves
        .iter()
        .enumerate()
        .map(|(i, c)| InvariantLine::new(json::exact_from_json(c, &format!("curves[{i}]"))?))
        .collect::<Result<Vec<_>, Error>>()?;
    let ratios = curve_ratios(&eq, &lines)?;
    let kernel = dependence_kernel(&ratios);
    let integrals = kernel
        .iter()
        .map(|alphas| {
            let cert = first_integral(&eq, &lines, alphas)?;
            Ok(json!({
                "alpha0": rational(&cert.alpha0),
                "alphas": cert.alphas.iter().map(rational).collect::<Vec<_>>(),
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(json!({
        "ratios_degrees": ratios.iter().map(ExactPoly::degree).collect::<Vec<_>>(),
        "kernel_basis": kernel
            .iter()
            .map(|v| v.iter().map(rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "independent": kernel.is_empty(),
        "first_integrals": integrals,
    }))
}

fn write_csv(path: &PathBuf, report: &abel_trig::poincare::LimitCycleReport) -> std::result::Result<(), Failure> {
    let io = |e: csv::Error| Failure::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["x0", "x2pi"]).map_err(io)?;
    for s in &report.samples {
        let x2pi = s.x2pi.map_or(String::new(), |x| format!("{x:.16e}"));
        w.write_record([format!("{:.16e}", s.x0), x2pi]).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn cmd_poincare(doc: &Value, opts: &ScanOptions, csv: Option<&PathBuf>) -> Outcome {
    let eq = equation(doc)?;
    let report = find_limit_cycles(&eq, opts)?;
    if let Some(path) = csv {
        write_csv(path, &report)?;
    }
    Ok(json::limit_cycles_to_json(&report))
}

fn cmd_example1(grid: usize) -> Outcome {
    let params = ParamTuple::worked_example();
    let c = construct_two_curves(&params)?;
    let eq = &c.eq;
    let lines = [InvariantLine::new(c.p1.clone())?, InvariantLine::new(c.p2.clone())?];
    let ratios = curve_ratios(eq, &lines)?;
    let mut opts = ScanOptions::new(-0.05, 0.2, grid);
    opts.rtol = DEFAULT_RTOL;
    let report = find_limit_cycles(eq, &opts)?;
    let mut out = curves_json(&c);
    out["params"] = json::params_to_json(&params);
    out["invariant"] = json!({
        "P1": is_invariant_line(eq, &c.p1)?,
        "P2": is_invariant_line(eq, &c.p2)?,
    });
    out["degrees"] = json!({
        "A": eq.a.degree(),
        "P1": c.p1.degree(),
        "P2": c.p2.degree(),
        "identity": degree_identity(eq, &c.p1, &c.p2)?,
    });
    out["mean_B"] = rational(&eq.b.constant_term());
    out["darboux_independent"] = json!(dependence_kernel(&ratios).is_empty());
    out["rational_cycles_found"] = json!(rational_matches(&report, &[c.p1.clone(), c.p2.clone()], 1e-6));
    out["poincare"] = json::limit_cycles_to_json(&report);
    Ok(out)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Factor { input, tol, complex } => cmd_factor(&read_input(input)?, *tol, *complex),
        Command::Verify { input } => cmd_verify(&read_input(input)?),
        Command::Construct { input, random } => {
            let params = match (input, random) {
                (Some(path), false) => json::params_from_json(&read_input(path)?)?,
                (None, true) => random::param_tuple(&mut random::seeded(cli.seed)),
                _ => return Err(Error::InvalidArgument("pass either a parameter file or --random".into()).into()),
            };
            let mut out = cmd_construct(&params)?;
            if *random {
                out["params"] = json::params_to_json(&params);
            }
            Ok(out)
        }
        Command::Recover { input } => cmd_recover(&read_input(input)?),
        Command::Darboux { input } => cmd_darboux(&read_input(input)?),
        Command::Poincare {
            input,
            xmin,
            xmax,
            grid,
            rtol,
            tol,
            csv,
        } => {
            let opts = ScanOptions {
                x_min: *xmin,
                x_max: *xmax,
                grid: *grid,
                rtol: *rtol,
                tol: *tol,
            };
            cmd_poincare(&read_input(input)?, &opts, csv.as_ref())
        }
        Command::Example1 { grid } => cmd_example1(*grid),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 1,
        e if e.is_inconclusive() => 3,
        _ => 2,
    }
}

fn print(v: &Value) {
    use std::io::Write;
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{v}");
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Violated(report, e)) => {
            print(&report);
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
