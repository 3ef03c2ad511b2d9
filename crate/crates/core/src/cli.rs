//! Command-line front end. Every subcommand produces one [`Dataset`]; the
//! `figure` subcommand writes the datasets behind one figure into a directory.
//!
//! Exit codes: `0` on success, `2` for rejected flags or unwritable output,
//! `3` when a numerical method fails to converge.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::dataset::{Dataset, Value};
use crate::error::Error;
use crate::gkstate::{CoherentState, DEFAULT_TAIL_TOL};
use crate::measure::{moment_check, QuadratureConfig};
use crate::revival::{autocorrelation, survival_fraction, FractionalDecomposition};
use crate::sampling::{map_points, try_map_points, uniform_grid};
use crate::spectrum::{revival_time, SpectrumParams, TimeScales};

#[derive(Debug, Parser)]
#[command(
    name = "gkrevival",
    version,
    about = "Gazeau-Klauder coherent states of the quadratic spectrum e_n = n(n+mu)/mu and their revivals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighting distribution |c_n|^2.
    Weights {
        #[arg(long)]
        j: f64,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Mean, variance and Mandel Q; one row for --j, otherwise a sweep over (0, --j-max].
    Mandel {
        #[arg(long)]
        j: Option<f64>,
        #[arg(long, default_value_t = 20.0)]
        j_max: f64,
        /// Number of sweep points.
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Autocorrelation A(t), t in units of the revival time.
    Autocorr {
        #[arg(long)]
        j: f64,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Packet fraction P_delta(t) of order q.
    Survival {
        #[arg(long)]
        j: f64,
        #[arg(long, default_value_t = 4)]
        q: usize,
        #[arg(long)]
        delta: usize,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// |A(t)|^2 split into diagonal and interference terms.
    SurvivalIntensity {
        #[arg(long)]
        j: f64,
        #[arg(long, default_value_t = 4)]
        q: usize,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Moment check of the resolution of unity for n = 0..=n_max.
    Unity {
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 5)]
        n_max: u64,
        #[arg(long, default_value_t = 1e-10)]
        abs_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
        #[arg(long, default_value_t = 2000)]
        max_intervals: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Overlap <J, gamma | J2, gamma2>.
    Overlap {
        #[arg(long)]
        j: f64,
        #[arg(long)]
        j2: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma2: f64,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classical period and revival time at the mean quantum number of |J>.
    Timescales {
        #[arg(long)]
        j: f64,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Writes the datasets behind one figure into --out-dir.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        id: u8,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct StateArgs {
    #[arg(long)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
    pub tail_tol: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    /// End of the time grid, in revival times.
    #[arg(long, default_value_t = 1.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    let (dataset, out) = match command {
        Command::Figure {
            id,
            out_dir,
            points,
        } => {
            figure_bundle(id, &out_dir, points)?;
            return Ok(());
        }
        Command::Weights { j, state, out } => (weights(j, &state)?, out),
        Command::Mandel {
            j,
            j_max,
            points,
            state,
            out,
        } => {
            let d = match j {
                Some(j) => mandel(&[j], &state)?,
                None => mandel_sweep(j_max, points, &state)?,
            };
            (d, out)
        }
        Command::Autocorr {
            j,
            state,
            grid,
            out,
        } => (autocorr(j, &state, &grid)?, out),
        Command::Survival {
            j,
            q,
            delta,
            state,
            grid,
            out,
        } => (survival(j, q, delta, &state, &grid)?, out),
        Command::SurvivalIntensity {
            j,
            q,
            state,
            grid,
            out,
        } => (survival_intensity(j, q, &state, &grid)?, out),
        Command::Unity {
            mu,
            n_max,
            abs_tol,
            rel_tol,
            max_intervals,
            out,
        } => {
            let cfg = QuadratureConfig {
                abs_tol,
                rel_tol,
                max_intervals,
                ..Default::default()
            };
            (unity(mu, n_max, &cfg)?, out)
        }
        Command::Overlap {
            j,
            j2,
            gamma,
            gamma2,
            state,
            out,
        } => (overlap(j, gamma, j2, gamma2, &state)?, out),
        Command::Timescales { j, state, out } => (timescales(j, &state)?, out),
    };
    match out.out {
        Some(path) => write_file(&dataset, &path)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            dataset.write_to(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn write_file(d: &Dataset, path: &Path) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    d.write_to(&mut w)?;
    w.flush()
}

impl StateArgs {
    pub fn new(mu: f64) -> Self {
        Self {
            mu,
            alpha: 1.0,
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }

    fn params(&self) -> Result<SpectrumParams, Error> {
        SpectrumParams::new(self.alpha, self.mu)
    }

    fn build(&self, j: f64, gamma: f64) -> Result<CoherentState, Error> {
        CoherentState::build(j, gamma, self.params()?, self.tail_tol)
    }

    fn annotate(&self, d: Dataset) -> Dataset {
        d.param("mu", self.mu)
            .param("alpha", self.alpha)
            .param("tail_tol", self.tail_tol)
    }
}

impl GridArgs {
    pub fn new(t_max: f64, points: usize) -> Self {
        Self { t_max, points }
    }

    fn grid(&self) -> Result<Vec<f64>, Error> {
        uniform_grid(self.t_max, self.points)
    }

    fn annotate(&self, d: Dataset, p: &SpectrumParams) -> Dataset {
        d.param("t_max", self.t_max)
            .param("points", self.points)
            .param("t_unit", "t_rev")
            .param("t_rev", revival_time(p))
    }
}

/// `n, weight` for `n = 0..=n_max`.
pub fn weights(j: f64, state: &StateArgs) -> Result<Dataset, Error> {
    let s = state.build(j, 0.0)?;
    let mut d = state
        .annotate(
            Dataset::new(&["n", "weight"])
                .param("command", "weights")
                .param("j", j),
        )
        .param("n_max", s.n_max());
    for (n, w) in s.weights().into_iter().enumerate() {
        d.push_row(vec![n.into(), w.into()]);
    }
    Ok(d)
}

fn mandel_row(j: f64, state: &StateArgs) -> Result<Vec<Value>, Error> {
    let s = state.build(j, 0.0)?;
    let mean = s.mean_n()?;
    let q = s.mandel_q()?;
    Ok(vec![
        j.into(),
        mean.into(),
        (mean * (1.0 + q)).into(),
        q.into(),
    ])
}

/// `j, mean_n, variance, q` at each listed action.
pub fn mandel(js: &[f64], state: &StateArgs) -> Result<Dataset, Error> {
    let rows = try_map_points(js, |&j| mandel_row(j, state))?;
    let mut d =
        state.annotate(Dataset::new(&["j", "mean_n", "variance", "q"]).param("command", "mandel"));
    if let [j] = js {
        d = d.param("j", j);
    }
    for r in rows {
        d.push_row(r);
    }
    Ok(d)
}

/// [`mandel`] over `J = j_max·i/points`, `i = 1..=points`.
pub fn mandel_sweep(j_max: f64, points: usize, state: &StateArgs) -> Result<Dataset, Error> {
    if !(j_max > 0.0) || !j_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "j_max must be positive and finite, got {j_max}"
        )));
    }
    if points == 0 {
        return Err(Error::InvalidParameter(
            "sweep needs at least 1 point".into(),
        ));
    }
    let js: Vec<f64> = (1..=points)
        .map(|i| j_max * i as f64 / points as f64)
        .collect();
    Ok(mandel(&js, state)?
        .param("j_max", j_max)
        .param("points", points))
}

fn complex_series(
    command: &str,
    j: f64,
    state: &StateArgs,
    grid: &GridArgs,
    f: impl Fn(&CoherentState, f64) -> Result<num_complex::Complex64, Error> + Sync + Send,
) -> Result<(Dataset, CoherentState), Error> {
    let s = state.build(j, 0.0)?;
    let t = grid.grid()?;
    let values = try_map_points(&t, |&t| f(&s, t))?;
    let head = Dataset::new(&["t", "re", "im", "abs2"])
        .param("command", command)
        .param("j", j);
    let mut d = grid.annotate(state.annotate(head), s.params());
    for (t, a) in t.iter().zip(values) {
        d.push_row(vec![
            (*t).into(),
            a.re.into(),
            a.im.into(),
            a.norm_sqr().into(),
        ]);
    }
    Ok((d, s))
}

/// `t, re, im, abs2` of `A(t)`.
pub fn autocorr(j: f64, state: &StateArgs, grid: &GridArgs) -> Result<Dataset, Error> {
    Ok(complex_series("autocorr", j, state, grid, |s, t| Ok(autocorrelation(s, t)))?.0)
}

/// `t, re, im, abs2` of `P_Δ(t)`.
pub fn survival(
    j: f64,
    q: usize,
    delta: usize,
    state: &StateArgs,
    grid: &GridArgs,
) -> Result<Dataset, Error> {
    let (d, _) = complex_series("survival", j, state, grid, |s, t| {
        survival_fraction(s, q, delta, t)
    })?;
    Ok(d.param("q", q).param("delta", delta))
}

/// `t, abs2, diagonal, interference`.
pub fn survival_intensity(
    j: f64,
    q: usize,
    state: &StateArgs,
    grid: &GridArgs,
) -> Result<Dataset, Error> {
    let s = state.build(j, 0.0)?;
    let t = grid.grid()?;
    let dec = FractionalDecomposition::compute(&s, q, &t)?;
    let diagonal = dec.diagonal()?;
    let interference = dec.interference()?;
    let abs2 = map_points(&t, |&t| autocorrelation(&s, t).norm_sqr());
    let head = Dataset::new(&["t", "abs2", "diagonal", "interference"])
        .param("command", "survival-intensity")
        .param("j", j)
        .param("q", q);
    let mut d = grid.annotate(state.annotate(head), s.params());
    let (diag, inter) = (
        diagonal.real().unwrap_or(&[]),
        interference.real().unwrap_or(&[]),
    );
    for i in 0..t.len() {
        d.push_row(vec![
            t[i].into(),
            abs2[i].into(),
            diag[i].into(),
            inter[i].into(),
        ]);
    }
    Ok(d)
}

/// `n, integral, rho_n, rel_err`.
pub fn unity(mu: f64, n_max: u64, cfg: &QuadratureConfig) -> Result<Dataset, Error> {
    let p = SpectrumParams::with_mu(mu)?;
    cfg.validate()?;
    let orders: Vec<u64> = (0..=n_max).collect();
    let reports = try_map_points(&orders, |&n| moment_check(n, &p, cfg))?;
    let mut d = Dataset::new(&["n", "integral", "rho_n", "rel_err"])
        .param("command", "unity")
        .param("mu", mu)
        .param("n_max", n_max)
        .param("abs_tol", cfg.abs_tol)
        .param("rel_tol", cfg.rel_tol)
        .param("max_intervals", cfg.max_intervals);
    for r in reports {
        d.push_row(vec![
            r.n.into(),
            r.integral.into(),
            r.rho_n.into(),
            r.rel_err.into(),
        ]);
    }
    Ok(d)
}

/// One row `re, im, abs2` of `⟨J, γ|J2, γ2⟩`.
pub fn overlap(
    j: f64,
    gamma: f64,
    j2: f64,
    gamma2: f64,
    state: &StateArgs,
) -> Result<Dataset, Error> {
    let a = state.build(j, gamma)?;
    let b = state.build(j2, gamma2)?;
    let o = a.overlap(&b)?;
    let mut d = state.annotate(
        Dataset::new(&["re", "im", "abs2"])
            .param("command", "overlap")
            .param("j", j)
            .param("gamma", gamma)
            .param("j2", j2)
            .param("gamma2", gamma2),
    );
    d.push_row(vec![o.re.into(), o.im.into(), o.norm_sqr().into()]);
    Ok(d)
}

/// One row `n_bar, t_classical, t_revival, ratio` with `n_bar = ⟨n⟩` of `|J⟩`.
pub fn timescales(j: f64, state: &StateArgs) -> Result<Dataset, Error> {
    let s = state.build(j, 0.0)?;
    let n_bar = s.mean_n()?;
    let ts = TimeScales::at(n_bar, s.params())?;
    let mut d = state.annotate(
        Dataset::new(&["n_bar", "t_classical", "t_revival", "ratio"])
            .param("command", "timescales")
            .param("j", j),
    );
    d.push_row(vec![
        n_bar.into(),
        ts.t_classical.into(),
        ts.t_revival.into(),
        ts.ratio().into(),
    ]);
    Ok(d)
}

const FIGURE_J: f64 = 10.0;
const FIGURE_Q: usize = 4;
const FIGURE_J_MAX: f64 = 20.0;
const FIGURE_SWEEP_POINTS: usize = 200;

/// Column header of every file a figure produces.
pub fn figure_columns(id: u8) -> Option<&'static [&'static str]> {
    Some(match id {
        1 => &["n", "weight"],
        2 => &["j", "mean_n", "variance", "q"],
        3..=5 => &["t", "re", "im", "abs2"],
        6 => &["t", "diagonal"],
        7 => &["t", "interference"],
        _ => return None,
    })
}

/// The datasets behind figure `id`, keyed by file stem.
pub fn figure_datasets(id: u8, points: usize) -> Result<Vec<(String, Dataset)>, Error> {
    let grid = GridArgs::new(1.0, points);
    let st = StateArgs::new;
    let fig = |d: Dataset| d.param("figure", id);
    let mut out = Vec::new();
    match id {
        1 => {
            for mu in [28.0, 80.0] {
                out.push((
                    format!("fig1_weights_mu{mu}"),
                    fig(weights(FIGURE_J, &st(mu))?),
                ));
            }
        }
        2 => {
            for mu in [28.0, 80.0] {
                let d = mandel_sweep(FIGURE_J_MAX, FIGURE_SWEEP_POINTS, &st(mu))?;
                out.push((format!("fig2_mandel_mu{mu}"), fig(d)));
            }
        }
        3 => {
            for mu in [1.0, 28.0, 80.0] {
                out.push((
                    format!("fig3_autocorr_mu{mu}"),
                    fig(autocorr(FIGURE_J, &st(mu), &grid)?),
                ));
            }
        }
        4 | 5 => {
            let mu = if id == 4 { 28.0 } else { 80.0 };
            for delta in 0..FIGURE_Q {
                let d = survival(FIGURE_J, FIGURE_Q, delta, &st(mu), &grid)?;
                out.push((format!("fig{id}_survival_mu{mu}_delta{delta}"), fig(d)));
            }
        }
        6 | 7 => {
            let column = if id == 6 { "diagonal" } else { "interference" };
            for mu in [28.0, 80.0] {
                let full = survival_intensity(FIGURE_J, FIGURE_Q, &st(mu), &grid)?;
                let mut d = Dataset::new(&["t", column]);
                for (k, v) in full.params() {
                    d = d.param(k, v);
                }
                let t = full.column("t").unwrap_or_default();
                let v = full.column(column).unwrap_or_default();
                for (t, v) in t.into_iter().zip(v) {
                    d.push_row(vec![t.into(), v.into()]);
                }
                out.push((format!("fig{id}_{column}_mu{mu}"), fig(d)));
            }
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "figure id must lie in 1..=7, got {id}"
            )))
        }
    }
    Ok(out)
}

/// Writes every dataset of figure `id` to `out_dir/<stem>.csv` and returns
/// the paths.
pub fn figure_bundle(id: u8, out_dir: &Path, points: usize) -> Result<Vec<PathBuf>, CliError> {
    let sets = figure_datasets(id, points)?;
    std::fs::create_dir_all(out_dir)?;
    let mut paths = Vec::with_capacity(sets.len());
    for (stem, d) in sets {
        let path = out_dir.join(format!("{stem}.csv"));
        write_file(&d, &path)?;
        paths.push(path);
    }
    Ok(paths)
}
