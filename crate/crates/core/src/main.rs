use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hfg::invariants::{
    alpha_tuple, corner_sets, generator_patterns, invariant_report, resolution, resurgence_certificate,
};
use hfg::io::{parse_grid, parse_ideal, parse_multiplicities, read_file, to_sorted_json, IdealFile};
use hfg::verify::{check_grid_end_to_end, check_point_power_product, check_symbolic_power, VerificationReport};
use hfg::{Budget, Error, FatGrid, Point};

#[derive(Parser)]
#[command(name = "hfg", version, about = "Hadamard fat grids in the projective plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for oracle checks.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Raise the Gröbner degree budget (also caps Σ m_ij for grid ideals).
    #[arg(long, global = true)]
    budget_degree: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Grid points, multiplicities and grid lines.
    Grid(GridArgs),
    /// Alpha tuple, corner sets and resolution twists.
    Resolution(GridArgs),
    /// Minimal generator patterns and their expansions.
    Generators(GridArgs),
    /// Full invariant report.
    Invariants {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 3)]
        t_max: u32,
    },
    /// Check the closed forms against the Gröbner and rank oracles.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
        /// Also compare ordinary and symbolic powers up to this exponent.
        #[arg(long, default_value_t = 1)]
        t_max: u32,
    },
    /// Hadamard product of two ideal files.
    Hadamard(IdealArgs),
    /// Join of two ideal files.
    Join(IdealArgs),
    /// Compare I(P)^m ⋆ I(Q)^n with the prediction for its strata.
    PowerCheck {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(short = 'm', default_value_t = 1)]
        m: u32,
        #[arg(short = 'n', default_value_t = 1)]
        n: u32,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Row multiplicities, e.g. 2,3,3.
    #[arg(long = "m", requires = "n", conflicts_with = "grid")]
    m: Option<String>,
    /// Column multiplicities, e.g. 2,3,4,4.
    #[arg(long = "n", requires = "m", conflicts_with = "grid")]
    n: Option<String>,
    /// Grid file with explicit points or just multiplicities.
    #[arg(long)]
    grid: Option<PathBuf>,
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long)]
    ideal_a: PathBuf,
    #[arg(long)]
    ideal_b: PathBuf,
}

impl GridArgs {
    fn load(&self) -> hfg::Result<FatGrid> {
        match (&self.grid, &self.m, &self.n) {
            (Some(path), _, _) => parse_grid(&read_file(path)?),
            (None, Some(m), Some(n)) => {
                FatGrid::from_multiplicities(&parse_multiplicities(m)?, &parse_multiplicities(n)?)
            }
            _ => Err(Error::InvalidInput("give --m and --n, or --grid".into())),
        }
    }
}

enum Outcome {
    Data(Value),
    Report(Value, bool),
}

fn grid_json(g: &FatGrid) -> Value {
    let pts = |s: &hfg::WeightedPointSet| s.points().iter().map(Point::to_strings).collect::<Vec<_>>();
    json!({
        "P": pts(g.rows()),
        "M": g.m(),
        "Q": pts(g.cols()),
        "N": g.n(),
        "swapped": g.swapped(),
        "line_P": g.row_line().form().to_text(),
        "line_Q": g.col_line().form().to_text(),
        "H": g.h_lines().iter().map(|l| l.form().to_text()).collect::<Vec<_>>(),
        "V": g.v_lines().iter().map(|l| l.form().to_text()).collect::<Vec<_>>(),
        "points": g.points().iter().map(|row| row.iter().map(Point::to_strings).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "mult": g.mult(),
    })
}

fn report_json(r: &VerificationReport) -> hfg::Result<Value> {
    serde_json::to_value(r).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn run(cli: &Cli, budget: &Budget) -> hfg::Result<Outcome> {
    match &cli.command {
        Command::Grid(args) => Ok(Outcome::Data(grid_json(&args.load()?))),
        Command::Resolution(args) => {
            let g = args.load()?;
            let a = alpha_tuple(&g);
            let cs = corner_sets(&a)?;
            let res = resolution(&g);
            Ok(Outcome::Data(json!({
                "alpha_tuple": a,
                "C": cs.c,
                "V": cs.v,
                "generator_twists": res.generator_twists,
                "syzygy_twists": res.syzygy_twists,
            })))
        }
        Command::Generators(args) => {
            let g = args.load()?;
            let gens = generator_patterns(&g)
                .iter()
                .map(|p| {
                    Ok(json!({
                        "k": p.k,
                        "pattern": p.describe(),
                        "degree": p.degree(),
                        "H": p.h_exponents,
                        "V": p.v_exponents,
                        "polynomial": g.expand_pattern(p)?.to_text(),
                    }))
                })
                .collect::<hfg::Result<Vec<_>>>()?;
            Ok(Outcome::Data(json!({ "generators": gens })))
        }
        Command::Invariants { grid, t_max } => {
            let report = invariant_report(&grid.load()?, *t_max)?;
            Ok(Outcome::Data(
                serde_json::to_value(report).map_err(|e| Error::InvalidInput(e.to_string()))?,
            ))
        }
        Command::Verify { grid, t_max } => {
            let g = grid.load()?;
            let mut report = check_grid_end_to_end(&g, budget)?;
            for t in 2..=*t_max {
                report.absorb(check_symbolic_power(&g, t, budget)?);
            }
            if *t_max >= 1 {
                let cert = resurgence_certificate(&g, *t_max)?;
                report.push(
                    &format!("M={:?} N={:?}", g.m(), g.n()),
                    format!("pattern certificate for t <= {t_max}"),
                    if cert.pass() { "rho = 1" } else { "unmatched pattern" },
                    cert.pass(),
                );
            }
            let pass = report.pass();
            Ok(Outcome::Report(report_json(&report)?, pass))
        }
        Command::Hadamard(args) | Command::Join(args) => {
            let a = parse_ideal(&read_file(&args.ideal_a)?)?;
            let b = parse_ideal(&read_file(&args.ideal_b)?)?;
            let out = if matches!(cli.command, Command::Hadamard(_)) {
                a.hadamard(&b)?
            } else {
                a.join(&b)?
            };
            let file = IdealFile::from_ideal(&out.canonical()?);
            Ok(Outcome::Data(
                serde_json::to_value(file).map_err(|e| Error::InvalidInput(e.to_string()))?,
            ))
        }
        Command::PowerCheck { p, q, m, n } => {
            let report = check_point_power_product(&Point::parse(p)?, &Point::parse(q)?, *m, *n, budget)?;
            let pass = report.pass();
            Ok(Outcome::Report(report_json(&report)?, pass))
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), cells.join(", ")));
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(v: &Value, format: Format) -> hfg::Result<String> {
    match format {
        Format::Json => to_sorted_json(v),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            Ok(rows
                .iter()
                .map(|(k, x)| format!("{k:<width$}  {x}"))
                .collect::<Vec<_>>()
                .join("\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = Budget::default();
    if let Some(d) = cli.budget_degree {
        budget.grid_degree = d;
        budget.groebner_degree = d;
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let (value, pass) = match run(&cli, &budget) {
        Ok(Outcome::Data(v)) => (v, true),
        Ok(Outcome::Report(v, pass)) => (v, pass),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match render(&value, cli.format) {
        Ok(text) => println!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
