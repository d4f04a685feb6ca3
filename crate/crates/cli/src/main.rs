//! `kerr-casimir point | sweep | validate`

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kerr_casimir::modes::ValidityThresholds;
use kerr_casimir::sweep::{render_records, Axis, Format, Scale};
use kerr_casimir::validate::validate;
use kerr_casimir::{evaluate_point, run_sweep, CavityGeometry, OmegaSpec, OracleConfig, PointRequest, SeriesControl, Status, SweepSpec};

use config::{pick, ConfigFile};

const EXIT_VALIDATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(version, about = "Thermal Casimir free energy, entropy and internal energy in a cavity orbiting a Kerr source")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point.
    Point(PointArgs),
    /// Evaluate a one-dimensional grid of points.
    Sweep {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Run the oracle suite against the closed forms.
    Validate(PointArgs),
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    spin: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    /// Orbital angular velocity: a number, `zamo`, or `frac=<f>` with f in (-1, 1).
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<String>,
    /// Plate separation L.
    #[arg(long)]
    length: Option<f64>,
    /// Plate area S0.
    #[arg(long)]
    area: Option<f64>,
    /// Coordinate temperature T.
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Accept |a| > M.
    #[arg(long)]
    allow_naked: bool,
    /// csv or jsonl (validate: text unless jsonl).
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    parallelism: Option<usize>,
    /// File of `key = value` defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// r, omega, T, L or a.
    #[arg(long)]
    axis: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    stop: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    /// linear or log.
    #[arg(long)]
    scale: Option<String>,
}

struct Resolved {
    request: PointRequest,
    format_name: String,
    output: Option<PathBuf>,
    parallelism: usize,
    file: ConfigFile,
}

fn resolve(args: PointArgs) -> Result<Resolved, String> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let defaults = SeriesControl::default();
    let omega: String = pick(args.omega, &file, "omega", "zamo".into())?;
    let omega: OmegaSpec = omega.parse()?;
    let length = pick(args.length, &file, "length", 0.01)?;
    let area = pick(args.area, &file, "area", 1e-4)?;
    let cavity = CavityGeometry::new(length, area).map_err(|e| e.to_string())?;
    let series = SeriesControl {
        rel_tol: pick(args.rel_tol, &file, "rel-tol", defaults.rel_tol)?,
        m_max: pick(args.m_max, &file, "m-max", defaults.m_max)?,
        ..defaults
    };
    let allow_naked = args.allow_naked || pick(None, &file, "allow-naked", false)?;
    let format_name: String = pick(args.format, &file, "format", "csv".into())?;
    let request = PointRequest {
        mass: pick(args.mass, &file, "mass", 1.0)?,
        spin: pick(args.spin, &file, "spin", 0.5)?,
        allow_naked,
        radius: pick(args.radius, &file, "radius", 10.0)?,
        omega,
        cavity,
        temperature: pick(args.temperature, &file, "temperature", 10.0)?,
        series,
        thresholds: ValidityThresholds::default(),
    };
    let parallelism = pick(args.parallelism, &file, "parallelism", default_parallelism())?;
    if parallelism == 0 {
        return Err("parallelism must be >= 1".into());
    }
    Ok(Resolved {
        request,
        format_name,
        output: args.output,
        parallelism,
        file,
    })
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> io::Result<()> {
    match output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(bytes)?;
            w.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

fn data_format(r: &Resolved) -> Result<Format, String> {
    r.format_name.parse()
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    let input = |e: String| (EXIT_INPUT, e);
    let io_err = |e: io::Error| (EXIT_INPUT, format!("cannot write output: {e}"));
    match cli.command {
        Command::Point(args) => {
            let r = resolve(args).map_err(input)?;
            let format = data_format(&r).map_err(input)?;
            let rec = evaluate_point(&r.request);
            emit(&r.output, &render_records(std::slice::from_ref(&rec), format)).map_err(io_err)?;
            if rec.status != Status::Ok {
                eprintln!("point failed: {}", rec.message.as_deref().unwrap_or(rec.status.as_str()));
                return Ok(ExitCode::from(EXIT_INPUT));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { point, sweep } => {
            let r = resolve(point).map_err(input)?;
            let format = data_format(&r).map_err(input)?;
            let axis: String = pick(sweep.axis, &r.file, "axis", "T".into()).map_err(input)?;
            let scale: String = pick(sweep.scale, &r.file, "scale", "linear".into()).map_err(input)?;
            let spec = SweepSpec {
                axis: axis.parse::<Axis>().map_err(input)?,
                start: pick(sweep.start, &r.file, "start", f64::NAN).map_err(input)?,
                stop: pick(sweep.stop, &r.file, "stop", f64::NAN).map_err(input)?,
                count: pick(sweep.count, &r.file, "count", 0).map_err(input)?,
                scale: scale.parse::<Scale>().map_err(input)?,
                base: r.request,
            };
            let records = run_sweep(&spec, r.parallelism).map_err(|e| input(e.to_string()))?;
            emit(&r.output, &render_records(&records, format)).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate(args) => {
            let (rel_tol, m_max) = (args.rel_tol, args.m_max);
            let r = resolve(args).map_err(input)?;
            let defaults = OracleConfig::default();
            let cfg = OracleConfig {
                rel_tol: pick(rel_tol, &r.file, "rel-tol", defaults.rel_tol).map_err(input)?,
                m_max: pick(m_max, &r.file, "m-max", defaults.m_max).map_err(input)?,
                ..defaults
            };
            let report = validate(&cfg);
            let text = match r.format_name.as_str() {
                "jsonl" | "json" => report.to_json() + "\n",
                "csv" | "text" => format!("{report}\n"),
                other => return Err(input(format!("unknown validate format {other:?} (expected text or jsonl)"))),
            };
            emit(&r.output, text.as_bytes()).map_err(io_err)?;
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VALIDATION))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
