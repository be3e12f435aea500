//! The `ropelength` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use ropelength::experiments::{self, DEFAULT_PROXY_SAMPLES};
use ropelength::optimize::{anneal, AnnealConfig};
use ropelength::schur::{self, Mode};
use ropelength::smooth::{inscribe_equilateral, rescale_unit, CurvePreset};
use ropelength::{io, thickness, Error};

/// Worker count for the parallel scans; defaults to all cores.
pub const THREADS_ENV: &str = "ROPELENGTH_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "ropelength",
    version,
    about = "Discrete thickness and ropelength of equilateral polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Thickness report of a polygon file, as JSON.
    Thickness { input: PathBuf },
    /// Inscribe an equilateral polygon in a preset curve.
    Inscribe {
        /// `circle`, `trefoil`, `torus:a,b` or `torus:a,b,R,rho`.
        #[arg(long)]
        curve: CurvePreset,
        #[arg(long)]
        n: usize,
        /// Curve samples for the arc-length reparametrization.
        #[arg(long, default_value_t = 8192)]
        samples: usize,
        /// Keep the inscribed polygon's own length instead of rescaling to 1.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the reparametrized curve samples here.
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// Convergence sweep over several polygon sizes, as CSV.
    Gamma {
        #[arg(long)]
        curve: CurvePreset,
        /// Comma-separated polygon sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_PROXY_SAMPLES)]
        m_proxy: usize,
        /// Emit JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Regular n-gon inverse thickness against the closed form, as CSV.
    NgonTable {
        #[arg(long, default_value_t = 3)]
        min: usize,
        #[arg(long, default_value_t = 200)]
        max: usize,
    },
    /// Randomized chord-comparison campaign.
    SchurCampaign {
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "strict")]
        mode: Mode,
        /// Run the tangent-sphere check instead (`K·L ≤ π/2`).
        #[arg(long)]
        sphere: bool,
        /// Write every margin to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Simulated annealing of the inverse thickness.
    Anneal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial temperature (default: half the initial objective).
        #[arg(long)]
        t0: Option<f64>,
        #[arg(long, default_value_t = 0.95)]
        cool: f64,
        /// Cap on the total number of proposals.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 200)]
        steps_per_temp: usize,
        #[arg(long, default_value_t = 1e-4)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0)]
        theta_max: f64,
        #[arg(long, default_value_t = 16)]
        substeps: usize,
        /// Admissibility clearance relative to the polygon length.
        #[arg(long, default_value_t = 1e-6)]
        clearance: f64,
        /// Keep the proposal angle range fixed.
        #[arg(long)]
        fixed_theta: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

/// Exit code for an error: 1 for bad input, 2 for numerical failure.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inscribe { .. }
        | Error::CurveSamples(_)
        | Error::DegenerateAngle
        | Error::NotUnit(_) => 2,
        _ => 1,
    }
}

enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match exit_code(&e) {
            2 => Failure::Numerical(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| {
        Failure::Input(format!(
            "{THREADS_ENV} must be a positive integer, got {v:?}"
        ))
    })?;
    // a pool may already exist when called repeatedly in one process
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn read_input(path: &PathBuf) -> Result<ropelength::Polygon, Failure> {
    io::read_polygon(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Thickness { input } => {
            let p = read_input(&input)?;
            let json = thickness::delta_n(&p).to_json();
            writeln!(out, "{}", serde_json::to_string_pretty(&json).unwrap())?;
        }
        Command::Inscribe {
            curve,
            n,
            samples,
            raw,
            out: path,
            curve_out,
        } => {
            let g = curve.curve(samples)?;
            let ins = inscribe_equilateral(&g, n)?;
            let p = if raw {
                ins.polygon
            } else {
                rescale_unit(&ins.polygon)
            };
            let header = format!(
                "{curve} inscribed, n={n}, length={}",
                io::fmt_f64(p.length())
            );
            emit(
                out,
                path.as_ref(),
                &io::format_points(p.vertices(), Some(&header)),
            )?;
            if let Some(c) = curve_out {
                std::fs::write(c, g.to_text())?;
            }
        }
        Command::Gamma {
            curve,
            ns,
            m_proxy,
            json,
        } => {
            let s = experiments::gamma_series(&curve, &ns, m_proxy)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&s).unwrap())?;
            } else {
                out.write_all(s.to_csv().as_bytes())?;
            }
        }
        Command::NgonTable { min, max } => {
            let rows = experiments::ngon_table(min, max)?;
            out.write_all(experiments::ngon_csv(&rows).as_bytes())?;
        }
        Command::SchurCampaign {
            cases,
            seed,
            mode,
            sphere,
            csv,
        } => {
            let s = if sphere {
                schur::sphere_campaign(cases, seed)?
            } else {
                schur::schur_campaign(cases, seed, mode)?
            };
            let label = if sphere {
                "sphere".to_string()
            } else {
                format!("{mode:?}").to_lowercase()
            };
            writeln!(
                out,
                "check={label} cases={} min_margin={} violations={} tiny={}",
                s.cases,
                io::fmt_f64(s.min_margin),
                s.violations,
                s.tiny
            )?;
            if let Some(path) = csv {
                let mut text = String::from("case,seed,margin\n");
                for (k, m) in s.margins.iter().enumerate() {
                    text.push_str(&format!(
                        "{k},{},{}\n",
                        seed.wrapping_add(k as u64),
                        io::fmt_f64(*m)
                    ));
                }
                std::fs::write(path, text)?;
            }
            if s.violations > 0 {
                return Err(Failure::Numerical(format!("{} violations", s.violations)));
            }
        }
        Command::Anneal {
            input,
            seed,
            t0,
            cool,
            steps,
            steps_per_temp,
            t_min,
            theta_max,
            substeps,
            clearance,
            fixed_theta,
            out: path,
            trace,
        } => {
            let p0 = read_input(&input)?;
            let cfg = AnnealConfig {
                t0,
                cooling: cool,
                steps_per_temp,
                t_min,
                theta_max,
                substeps,
                clearance,
                seed,
                max_steps: steps,
                adaptive: !fixed_theta,
            };
            let (best, tr) = anneal(&p0, &cfg)?;
            writeln!(
                out,
                "initial={} best={} proposals={} accepted={}",
                io::fmt_f64(tr.initial),
                io::fmt_f64(tr.best_objective),
                tr.records.len(),
                tr.accepted().count()
            )?;
            if let Some(p) = path {
                io::write_polygon(p, &best)?;
            }
            if let Some(t) = trace {
                std::fs::write(t, tr.to_csv())?;
            }
        }
    }
    Ok(())
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code: 0 on
/// success, 1 for bad input or usage, 2 for a numerical failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = configure_threads().and_then(|()| execute(cli.command, out));
    match result {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(err, "numerical failure: {msg}");
            2
        }
    }
}
