//! Argument parsing and the subcommands.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use trichain_core::bifurcation::{local_maxima, maxima_levels};
use trichain_core::equilibria::{fixed_points, zone, FixedPointReport, DEFAULT_HYPERBOLIC_TOL, DEFAULT_ZONE_TOL};
use trichain_core::escape::{Axis, Bounds, FateConfig, Plane, RasterSpec};
use trichain_core::lyapunov::{lyapunov_spectrum, LyapunovConfig};
use trichain_core::map::{iterate_with, Outcome};
use trichain_core::spectral::{dft, dominant_peak, first_relevant_peak, DEFAULT_RELEVANCE};
use trichain_core::{Params, PathSpec, State, SweepConfig, SweepRecord};

use crate::config::{ConfigFile, Settings};
use crate::format::{num, write_legend, write_pgm};
use crate::{par, CliError, Result};

/// Default initial condition for orbit-based subcommands.
pub const DEFAULT_S0: (f64, f64, f64) = (0.1, 0.02, 0.03);

#[derive(Parser, Debug)]
#[command(name = "trichain", version, about = "Analysis of the three-species discrete food-chain map")]
struct Cli {
    /// key=value settings file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// worker threads (default: TRICHAIN_THREADS, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// output file (default: stdout; required for raster)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ParamFlags {
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
}

#[derive(Args, Debug)]
struct InitFlags {
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long)]
    y0: Option<f64>,
    #[arg(long)]
    z0: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed points with eigenvalues and stability types
    FixedPoints {
        #[command(flatten)]
        params: ParamFlags,
        /// hyperbolicity band around |l| = 1
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Zone label of a parameter point
    Zone {
        #[command(flatten)]
        params: ParamFlags,
        /// distance to a critical surface reported as Boundary
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Orbit as CSV
    Simulate {
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        init: InitFlags,
        /// rows emitted
        #[arg(long)]
        steps: Option<usize>,
        /// iterates skipped before the first row
        #[arg(long)]
        transient: Option<usize>,
    },
    /// Fate raster over a plane slice, written as a graymap plus CSV legend
    Raster {
        #[command(flatten)]
        params: ParamFlags,
        /// slicing plane, e.g. z=0 or y=0.02
        #[arg(long)]
        plane: Option<PlaneArg>,
        /// u_min,u_max,v_min,v_max in plane coordinates
        #[arg(long)]
        bounds: Option<BoundsArg>,
        /// cells, e.g. 200x200
        #[arg(long)]
        res: Option<ResArg>,
        /// iteration budget per cell
        #[arg(long)]
        max_iter: Option<usize>,
        /// convergence distance
        #[arg(long)]
        tol: Option<f64>,
        /// consecutive iterates within tol needed for convergence
        #[arg(long)]
        window: Option<usize>,
    },
    /// Lyapunov spectrum of one orbit
    Lyapunov {
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        init: InitFlags,
        #[arg(long)]
        transient: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// One-parameter sweep along a straight path
    Sweep {
        /// start point mu,beta,gamma
        #[arg(long)]
        from: Option<Triple>,
        /// end point mu,beta,gamma
        #[arg(long)]
        to: Option<Triple>,
        /// samples including both ends
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        init: InitFlags,
        #[arg(long)]
        transient: Option<usize>,
        /// recorded iterates per sample
        #[arg(long)]
        keep: Option<usize>,
        /// bifurcation, maxima, lyapunov, spectrum or fixed-points
        #[arg(long)]
        emit: Option<Emit>,
        /// running-average window for maxima
        #[arg(long)]
        smooth: Option<usize>,
        /// averaging iterates for lyapunov emission
        #[arg(long)]
        lyap_steps: Option<usize>,
        /// start each sample from the previous sample's last state
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        continuation: Option<bool>,
        /// zone and hyperbolicity tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::FixedPoints { .. } => "fixed-points",
            Command::Zone { .. } => "zone",
            Command::Simulate { .. } => "simulate",
            Command::Raster { .. } => "raster",
            Command::Lyapunov { .. } => "lyapunov",
            Command::Sweep { .. } => "sweep",
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `mu,beta,gamma`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple(pub f64, pub f64, pub f64);

impl FromStr for Triple {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
            .collect::<std::result::Result<_, _>>()?;
        match v[..] {
            [a, b, c] => Ok(Triple(a, b, c)),
            _ => Err(format!("expected mu,beta,gamma, got '{s}'")),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0, self.1, self.2)
    }
}

/// `x=c`, `y=c` or `z=c`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneArg(pub Plane);

impl FromStr for PlaneArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (axis, off) = s.split_once('=').ok_or_else(|| format!("expected axis=value, got '{s}'"))?;
        let axis = match axis.trim() {
            "x" => Axis::X,
            "y" => Axis::Y,
            "z" => Axis::Z,
            a => return Err(format!("unknown axis '{a}'")),
        };
        let offset = off.trim().parse::<f64>().map_err(|e| e.to_string())?;
        Ok(PlaneArg(Plane { axis, offset }))
    }
}

impl fmt::Display for PlaneArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.0.axis {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        write!(f, "{a}={}", self.0.offset)
    }
}

/// `u_min,u_max,v_min,v_max`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsArg(pub Bounds);

impl FromStr for BoundsArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
            .collect::<std::result::Result<_, _>>()?;
        match v[..] {
            [a, b, c, d] => Ok(BoundsArg(Bounds { u: (a, b), v: (c, d) })),
            _ => Err(format!("expected four comma-separated numbers, got '{s}'")),
        }
    }
}

impl fmt::Display for BoundsArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0;
        write!(f, "{},{},{},{}", b.u.0, b.u.1, b.v.0, b.v.1)
    }
}

/// `NUxNV`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResArg(pub usize, pub usize);

impl FromStr for ResArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once('x').ok_or_else(|| format!("expected WxH, got '{s}'"))?;
        let p = |t: &str| t.trim().parse::<usize>().map_err(|e| e.to_string());
        Ok(ResArg(p(a)?, p(b)?))
    }
}

impl fmt::Display for ResArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.0, self.1)
    }
}

/// What a sweep writes per sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    /// every recorded state
    Bifurcation,
    /// local maxima of the smoothed x-series and their level count
    Maxima,
    /// Lyapunov spectrum
    Lyapunov,
    /// DFT magnitudes of the x-series
    Spectrum,
    /// fixed points and their stability
    FixedPoints,
}

impl FromStr for Emit {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bifurcation" => Ok(Emit::Bifurcation),
            "maxima" => Ok(Emit::Maxima),
            "lyapunov" => Ok(Emit::Lyapunov),
            "spectrum" => Ok(Emit::Spectrum),
            "fixed-points" => Ok(Emit::FixedPoints),
            _ => Err(format!("unknown emit kind '{s}'")),
        }
    }
}

impl fmt::Display for Emit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Emit::Bifurcation => "bifurcation",
            Emit::Maxima => "maxima",
            Emit::Lyapunov => "lyapunov",
            Emit::Spectrum => "spectrum",
            Emit::FixedPoints => "fixed-points",
        })
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "trichain: {e}");
            e.exit_code()
        }
    }
}

fn params(s: &mut Settings, f: &ParamFlags) -> Result<Params> {
    let mu = s.require("mu", f.mu)?;
    let beta = s.require("beta", f.beta)?;
    let gamma = s.require("gamma", f.gamma)?;
    Params::new(mu, beta, gamma).map_err(|e| usage(e.to_string()))
}

fn init(s: &mut Settings, f: &InitFlags) -> Result<State> {
    Ok(State::new(s.get("x0", f.x0, DEFAULT_S0.0)?, s.get("y0", f.y0, DEFAULT_S0.1)?, s.get("z0", f.z0, DEFAULT_S0.2)?))
}

fn open_out(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(stdout);
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().has_headers(false).terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let file = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let mut s = Settings::new(cli.command.name(), file)?;
    let threads = s.silent("threads", cli.threads)?;
    let out = s.silent::<PathBuf>("out", cli.out)?;
    match &cli.command {
        Command::FixedPoints { params: pf, tol } => {
            let p = params(&mut s, pf)?;
            let tol = s.get("tol", *tol, DEFAULT_HYPERBOLIC_TOL)?;
            s.finish()?;
            open_out(out.as_deref(), stdout, |w| {
                w.write_all(s.header().as_bytes())?;
                let mut c = csv_writer(w);
                c.write_record(["id", "exists", "x", "y", "z", "re1", "im1", "re2", "im2", "re3", "im3", "class"])?;
                for r in fixed_points(&p, tol) {
                    c.write_record(fixed_point_fields(&r))?;
                }
                c.flush()?;
                Ok(())
            })
        }
        Command::Zone { params: pf, tol } => {
            let p = params(&mut s, pf)?;
            let tol = s.get("tol", *tol, DEFAULT_ZONE_TOL)?;
            s.finish()?;
            if !p.in_cuboid() {
                return Err(usage(format!("{p:?} lies outside the parameter cuboid (0,4]x[2.5,5]x[5,9.4]")));
            }
            let z = zone(&p, tol);
            open_out(out.as_deref(), stdout, |w| {
                w.write_all(s.header().as_bytes())?;
                writeln!(w, "{z}")?;
                Ok(())
            })
        }
        Command::Simulate { params: pf, init: inf, steps, transient } => {
            let p = params(&mut s, pf)?;
            let s0 = init(&mut s, inf)?;
            let transient = s.get("transient", *transient, 0)?;
            let steps = s.get("steps", *steps, 1000)?;
            s.finish()?;
            open_out(out.as_deref(), stdout, |w| {
                w.write_all(s.header().as_bytes())?;
                let mut c = csv_writer(w);
                c.write_record(["n", "x", "y", "z"])?;
                let mut err = None;
                let last = (transient + steps).saturating_sub(1);
                let outcome = if steps == 0 {
                    Outcome::Survived
                } else {
                    iterate_with(s0, &p, last, |k, st| {
                        if k >= transient && err.is_none() {
                            err = c.write_record([k.to_string(), num(st.x), num(st.y), num(st.z)]).err();
                        }
                    })
                };
                if let Some(e) = err {
                    return Err(e.into());
                }
                c.flush()?;
                drop(c);
                match outcome {
                    Outcome::Survived => writeln!(w, "# outcome=survived")?,
                    Outcome::Escaped(k) => writeln!(w, "# outcome=escaped n={k}")?,
                }
                Ok(())
            })
        }
        Command::Raster { params: pf, plane, bounds, res, max_iter, tol, window } => {
            let p = params(&mut s, pf)?;
            let plane = s.get("plane", *plane, PlaneArg(Plane { axis: Axis::Z, offset: 0.0 }))?;
            let bounds = s.get("bounds", *bounds, BoundsArg(Bounds { u: (0.0, 1.0), v: (0.0, 1.0) }))?;
            let res = s.get("res", *res, ResArg(200, 200))?;
            let cfg = FateConfig {
                max_iter: s.get("max-iter", *max_iter, 50)?,
                conv_tol: s.get("tol", *tol, 1e-8)?,
                conv_window: s.get("window", *window, 20)?,
            };
            s.finish()?;
            let spec = RasterSpec::new(plane.0, bounds.0, res.0, res.1).map_err(|e| usage(e.to_string()))?;
            let out = out.ok_or_else(|| usage("raster needs --out for the graymap"))?;
            let pool = par::pool(par::resolve_threads(threads)?)?;
            let raster = par::raster(&pool, &spec, &p, &cfg);
            let header = s.header();
            let mut w = BufWriter::new(File::create(&out)?);
            write_pgm(&mut w, &raster, &header)?;
            w.flush()?;
            let mut l = BufWriter::new(File::create(out.with_extension("legend.csv"))?);
            write_legend(&mut l, &header)?;
            l.flush()?;
            Ok(())
        }
        Command::Lyapunov { params: pf, init: inf, transient, steps } => {
            let p = params(&mut s, pf)?;
            let s0 = init(&mut s, inf)?;
            let defaults = LyapunovConfig::default();
            let cfg = LyapunovConfig {
                transient: s.get("transient", *transient, defaults.transient)?,
                steps: s.get("steps", *steps, defaults.steps)?,
            };
            s.finish()?;
            if cfg.steps == 0 {
                return Err(usage("--steps must be positive"));
            }
            let r = lyapunov_spectrum(s0, &p, &cfg);
            open_out(out.as_deref(), stdout, |w| {
                w.write_all(s.header().as_bytes())?;
                let mut c = csv_writer(w);
                c.write_record(["lambda1", "lambda2", "lambda3", "sum", "mean_log_abs_det", "steps", "escaped"])?;
                let e =
                    r.exponents.map(|e| e.map(num)).unwrap_or_else(|| [String::new(), String::new(), String::new()]);
                let sum = r.sum().map(num).unwrap_or_default();
                let mld = if r.escaped { String::new() } else { num(r.mean_log_det) };
                let [a, b, d] = e;
                c.write_record([a, b, d, sum, mld, r.steps_used.to_string(), u8::from(r.escaped).to_string()])?;
                c.flush()?;
                Ok(())
            })
        }
        Command::Sweep {
            from,
            to,
            samples,
            init: inf,
            transient,
            keep,
            emit,
            smooth,
            lyap_steps,
            continuation,
            tol,
        } => {
            let from = s.require("from", *from)?;
            let to = s.require("to", *to)?;
            let samples = s.get("samples", *samples, 101)?;
            let s0 = init(&mut s, inf)?;
            let defaults = SweepConfig::default();
            let transient = s.get("transient", *transient, defaults.transient)?;
            let keep = s.get("keep", *keep, defaults.keep)?;
            let emit = s.get("emit", *emit, Emit::Bifurcation)?;
            let smooth = if emit == Emit::Maxima { Some(s.get("smooth", *smooth, 3)?) } else { None };
            let lyap = if emit == Emit::Lyapunov {
                Some(s.get("lyap-steps", *lyap_steps, LyapunovConfig::default().steps)?)
            } else {
                None
            };
            let continuation = s.get("continuation", *continuation, false)?;
            let tol = s.get("tol", *tol, defaults.tol)?;
            s.finish()?;
            let to_params = |t: Triple| Params::new(t.0, t.1, t.2).map_err(|e| usage(e.to_string()));
            let path = PathSpec::new(to_params(from)?, to_params(to)?, samples).map_err(|e| usage(e.to_string()))?;
            if keep == 0 {
                return Err(usage("--keep must be positive"));
            }
            if lyap == Some(0) {
                return Err(usage("--lyap-steps must be positive"));
            }
            let cfg = SweepConfig {
                transient,
                keep,
                lyapunov: lyap.map(|steps| LyapunovConfig { transient, steps }),
                continuation,
                tol,
            };
            let pool = par::pool(par::resolve_threads(threads)?)?;
            let records = par::sweep(&pool, &path, s0, &cfg);
            open_out(out.as_deref(), stdout, |w| {
                w.write_all(s.header().as_bytes())?;
                write_sweep(w, &path, &records, emit, smooth.unwrap_or(3))
            })
        }
    }
}

fn fixed_point_fields(r: &FixedPointReport) -> Vec<String> {
    let mut f = vec![
        r.id.to_string(),
        u8::from(r.exists).to_string(),
        num(r.coordinates.x),
        num(r.coordinates.y),
        num(r.coordinates.z),
    ];
    for l in r.eigenvalues {
        f.push(num(l.re));
        f.push(num(l.im));
    }
    f.push(r.class.map(|c| c.to_string()).unwrap_or_else(|| "absent".into()));
    f
}

const SWEEP_COLUMNS: [&str; 7] = ["i", "t", "mu", "beta", "gamma", "zone", "escaped"];

fn record_prefix(path: &PathSpec, r: &SweepRecord) -> Vec<String> {
    vec![
        r.index.to_string(),
        num(path.t(r.index)),
        num(r.params.mu()),
        num(r.params.beta()),
        num(r.params.gamma()),
        r.zone.to_string(),
        u8::from(r.escaped).to_string(),
    ]
}

fn write_sweep(w: &mut dyn Write, path: &PathSpec, records: &[SweepRecord], emit: Emit, smooth: usize) -> Result<()> {
    let mut c = csv_writer(w);
    let extra: &[&str] = match emit {
        Emit::Bifurcation => &["k", "x", "y", "z"],
        Emit::Maxima => &["levels", "k", "max"],
        Emit::Lyapunov => &["lambda1", "lambda2", "lambda3", "mean_log_abs_det"],
        Emit::Spectrum => &["first_peak", "dominant_peak", "j", "magnitude"],
        Emit::FixedPoints => &["id", "exists", "x", "y", "z", "class"],
    };
    c.write_record(SWEEP_COLUMNS.iter().chain(extra))?;
    let blank = |n: usize| vec![String::new(); n];
    for r in records {
        let pre = record_prefix(path, r);
        let row = |tail: Vec<String>| pre.iter().cloned().chain(tail).collect::<Vec<_>>();
        match emit {
            Emit::Bifurcation => {
                if r.attractor.is_empty() {
                    c.write_record(row(blank(4)))?;
                }
                for (k, st) in r.attractor.iter().enumerate() {
                    c.write_record(row(vec![k.to_string(), num(st.x), num(st.y), num(st.z)]))?;
                }
            }
            Emit::Maxima => {
                let xs: Vec<f64> = r.attractor.iter().map(|s| s.x).collect();
                let m = local_maxima(&xs, smooth);
                let levels = maxima_levels(&m, 16).to_string();
                if m.is_empty() {
                    c.write_record(row(vec![levels.clone(), String::new(), String::new()]))?;
                }
                for (k, v) in m.iter().enumerate() {
                    c.write_record(row(vec![levels.clone(), k.to_string(), num(*v)]))?;
                }
            }
            Emit::Lyapunov => {
                let tail = match r.lyapunov.and_then(|l| l.exponents.map(|e| (e, l.mean_log_det))) {
                    Some((e, m)) => vec![num(e[0]), num(e[1]), num(e[2]), num(m)],
                    None => blank(4),
                };
                c.write_record(row(tail))?;
            }
            Emit::Spectrum => {
                let xs: Vec<f64> = r.attractor.iter().map(|s| s.x).collect();
                if xs.len() < 4 {
                    c.write_record(row(blank(4)))?;
                    continue;
                }
                let sp = dft(&xs);
                let first = first_relevant_peak(&sp, DEFAULT_RELEVANCE).map(|p| num(p.index)).unwrap_or_default();
                let dom = dominant_peak(&sp, true).map(|p| num(p.index)).map_err(CliError::Numerical)?;
                for j in 0..=sp.n / 2 {
                    c.write_record(row(vec![first.clone(), dom.clone(), j.to_string(), num(sp.magnitudes[j])]))?;
                }
            }
            Emit::FixedPoints => {
                for f in &r.fixed_points {
                    let class = f.class.map(|c| c.to_string()).unwrap_or_else(|| "absent".into());
                    c.write_record(row(vec![
                        f.id.to_string(),
                        u8::from(f.exists).to_string(),
                        num(f.coordinates.x),
                        num(f.coordinates.y),
                        num(f.coordinates.z),
                        class,
                    ]))?;
                }
            }
        }
    }
    c.flush()?;
    Ok(())
}
