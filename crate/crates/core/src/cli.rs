//! Command-line front end.
//!
//! Four subcommands (`simulate`, `bounds`, `spectrum`, `mp`) share one flag
//! set. Every flag can also come from a flat JSON object passed with
//! `--config`; flags given on the command line win. Each run writes its data
//! files plus a `run.json` manifest into `--out` (default `.`).
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage or configuration error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bounds::{DofConvention, MPLaw};
use crate::error::{Error, Result};
use crate::experiments::{cdf_vs_bound, mp_compare, sweep, ExperimentConfig, DEFAULT_KAPPA};
use crate::spectra::{
    default_check_grid, generator_condition_check, h_set_xi, j_set, Generator, Spectrum,
    SpectrumFamily,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SWEEP_HEADER: &str = "p,n,phi,xi,overshoot_freq,ci_low,ci_high,undershoot_freq,uci_low,uci_high,thm2_bound,thm3_bound,mean_l1,mean_lp";
pub const BOUNDS_HEADER: &str = "x,emp_cdf_l1,muirhead_upper,emp_cdf_lp,muirhead_lower,stderr,pass";
pub const MP_HEADER: &str = "x,mp_density";
pub const MP_KS_HEADER: &str = "ks,p,q,trials,seed";
pub const MP_HIST_HEADER: &str = "bin_low,bin_high,mass";

pub const SWEEP_FILE: &str = "sweep.csv";
pub const BOUNDS_FILE: &str = "bounds.csv";
pub const SPECTRUM_FILE: &str = "spectrum.json";
pub const MP_FILE: &str = "mp.csv";
pub const MP_KS_FILE: &str = "mp_ks.csv";
pub const MP_HIST_FILE: &str = "mp_hist.csv";
pub const MANIFEST_FILE: &str = "run.json";

/// Points in the `mp` density table.
pub const MP_GRID_POINTS: usize = 400;
/// Grid steps kept on each side of the support in the `mp` table.
const MP_GRID_MARGIN: usize = 20;

const DEFAULT_X_MIN: f64 = 0.25;
const DEFAULT_X_MAX: f64 = 4.0;
const DEFAULT_GRID: usize = 25;

#[derive(Debug, Parser)]
#[command(
    name = "covlab",
    version,
    about = "Extreme eigenvalues of sample covariance matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Overshoot/undershoot frequencies along a list of dimensions.
    Simulate(SharedArgs),
    /// Empirical extreme-eigenvalue CDFs against the product bounds.
    Bounds(BoundsArgs),
    /// Clustering sets and the generator check for one dimension.
    Spectrum(SharedArgs),
    /// Marchenko–Pastur density table, optionally with a simulated KS check.
    Mp(MpArgs),
}

#[derive(Debug, Clone, Default, Args)]
struct SharedArgs {
    /// identity:L | generator:EXPR | dirac:DELTA:TOP:EXPR | blocks:HIGH:LOW:FRACTION | table:FILE.json
    #[arg(long)]
    family: Option<String>,
    /// Dimension, or a comma-separated ascending list for `simulate`.
    #[arg(long)]
    p: Option<String>,
    /// Aspect ratio p/n in (0, 1).
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Chi-square degrees of freedom: n or n-1.
    #[arg(long)]
    dof: Option<String>,
    /// Largest m checked by the clustering quantifier (default max(100 p, 10000)).
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat JSON object with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct BoundsArgs {
    #[command(flatten)]
    shared: SharedArgs,
    #[arg(long = "x-min")]
    x_min: Option<f64>,
    #[arg(long = "x-max")]
    x_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct MpArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Also pool simulated eigenvalues and report the KS distance.
    #[arg(long)]
    simulate: bool,
}

enum Failure {
    Usage(String),
    Numerical(String),
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn numerical(e: Error) -> Failure {
    Failure::Numerical(e.to_string())
}

/// Flags merged with the optional config file.
#[derive(Debug, Clone, Default)]
struct Settings {
    family: Option<String>,
    p: Option<Vec<usize>>,
    q: Option<f64>,
    trials: Option<usize>,
    seed: Option<u64>,
    dof: DofConvention,
    horizon: Option<usize>,
    kappa: Option<f64>,
    out: PathBuf,
    threads: Option<usize>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    grid: Option<usize>,
    simulate: bool,
}

impl Settings {
    fn family(&self) -> CliResult<SpectrumFamily> {
        let spec = self
            .family
            .as_deref()
            .ok_or_else(|| usage("--family is required"))?;
        parse_family(spec).map_err(usage)
    }

    fn p_list(&self) -> CliResult<&[usize]> {
        match &self.p {
            Some(v) if !v.is_empty() => Ok(v),
            _ => Err(usage("--p is required")),
        }
    }

    fn single_p(&self) -> CliResult<usize> {
        match self.p_list()? {
            [p] => Ok(*p),
            _ => Err(usage("this command takes a single --p")),
        }
    }

    fn q(&self) -> CliResult<f64> {
        self.q.ok_or_else(|| usage("--q is required"))
    }

    fn trials(&self) -> CliResult<usize> {
        self.trials.ok_or_else(|| usage("--trials is required"))
    }

    fn seed(&self) -> CliResult<u64> {
        self.seed
            .ok_or_else(|| usage("--seed is required; all randomness derives from it"))
    }

    fn kappa(&self) -> f64 {
        self.kappa.unwrap_or(DEFAULT_KAPPA)
    }

    fn experiment(
        &self,
        family: SpectrumFamily,
        p_list: Vec<usize>,
    ) -> CliResult<ExperimentConfig> {
        let mut c = ExperimentConfig::new(family, p_list, self.q()?, self.trials()?, self.seed()?);
        c.dof_convention = self.dof;
        c.horizon = self.horizon;
        c.kappa = self.kappa();
        c.threads = self.threads;
        c.validate().map_err(usage)?;
        Ok(c)
    }

    /// Experiment settings echoed into the manifest.
    fn echo(&self) -> Value {
        let mut m = Map::new();
        let mut put = |k: &str, v: Value| {
            if !v.is_null() {
                m.insert(k.to_string(), v);
            }
        };
        put("family", json!(self.family));
        put("p", json!(self.p));
        put("q", json!(self.q));
        put("trials", json!(self.trials));
        put("seed", json!(self.seed));
        put("dof", json!(self.dof));
        put("horizon", json!(self.horizon));
        put("kappa", json!(self.kappa));
        put("x_min", json!(self.x_min));
        put("x_max", json!(self.x_max));
        put("grid", json!(self.grid));
        if self.simulate {
            put("simulate", json!(true));
        }
        Value::Object(m)
    }
}

/// Parses a family spec such as `identity:1`, `generator:2-x`,
/// `dirac:0.3:5:2-x`, `blocks:2:1:0.5` or `table:spectra.json`.
///
/// A table file is a JSON object mapping each dimension to its spectrum,
/// e.g. `{"3": [2, 1.5, 1]}`.
pub fn parse_family(spec: &str) -> Result<SpectrumFamily> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("family {spec:?} has no `kind:` prefix")))?;
    let num = |s: &str, what: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("family {spec:?}: {what} {s:?} is not a number")))
    };
    match kind.trim() {
        "identity" => SpectrumFamily::identity(num(rest, "scale")?),
        "generator" => Ok(SpectrumFamily::generator(Generator::parse(rest)?)),
        "dirac" => {
            let mut parts = rest.splitn(3, ':');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(d), Some(t), Some(e)) => SpectrumFamily::dirac_mixture(
                    num(d, "fraction")?,
                    num(t, "atom")?,
                    Generator::parse(e)?,
                ),
                _ => Err(Error::Config(format!(
                    "family {spec:?}: expected dirac:DELTA:TOP:EXPR"
                ))),
            }
        }
        "blocks" => {
            let parts: Vec<&str> = rest.split(':').collect();
            match parts.as_slice() {
                [h, l, f] => {
                    SpectrumFamily::two_block(num(h, "high")?, num(l, "low")?, num(f, "fraction")?)
                }
                _ => Err(Error::Config(format!(
                    "family {spec:?}: expected blocks:HIGH:LOW:FRACTION"
                ))),
            }
        }
        "table" => load_table(Path::new(rest.trim())),
        other => Err(Error::Config(format!("unknown family kind {other:?}"))),
    }
}

fn load_table(path: &Path) -> Result<SpectrumFamily> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, Vec<f64>> = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (k, v) in raw {
        let p: usize = k.parse().map_err(|_| {
            Error::Config(format!("{}: key {k:?} is not a dimension", path.display()))
        })?;
        map.insert(p, Spectrum::new(v)?);
    }
    SpectrumFamily::table(map)
}

fn parse_p_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("--p: {t:?} is not a dimension"))
        })
        .collect()
}

fn config_error(key: &str, want: &str) -> Failure {
    usage(format!("config key {key:?} must be {want}"))
}

fn as_f64(key: &str, v: &Value) -> CliResult<f64> {
    v.as_f64().ok_or_else(|| config_error(key, "a number"))
}

fn as_usize(key: &str, v: &Value) -> CliResult<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| config_error(key, "a nonnegative integer"))
}

fn as_str<'a>(key: &str, v: &'a Value) -> CliResult<&'a str> {
    v.as_str().ok_or_else(|| config_error(key, "a string"))
}

fn merge(shared: &SharedArgs) -> CliResult<Settings> {
    let mut s = Settings {
        family: shared.family.clone(),
        p: shared
            .p
            .as_deref()
            .map(parse_p_list)
            .transpose()
            .map_err(usage)?,
        q: shared.q,
        trials: shared.trials,
        seed: shared.seed,
        dof: DofConvention::N,
        horizon: shared.horizon,
        kappa: shared.kappa,
        out: shared.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        threads: shared.threads,
        ..Settings::default()
    };
    let mut dof = shared.dof.clone();
    if let Some(path) = &shared.config {
        let text =
            fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let obj = value
            .as_object()
            .ok_or_else(|| usage(format!("{}: config must be a JSON object", path.display())))?;
        for (key, v) in obj {
            match key.replace('-', "_").as_str() {
                "family" => {
                    if s.family.is_none() {
                        s.family = Some(as_str(key, v)?.to_string());
                    }
                }
                "p" => {
                    if s.p.is_none() {
                        s.p = Some(match v {
                            Value::String(t) => parse_p_list(t).map_err(usage)?,
                            Value::Array(a) => a
                                .iter()
                                .map(|x| as_usize(key, x))
                                .collect::<CliResult<_>>()?,
                            _ => vec![as_usize(key, v)?],
                        });
                    }
                }
                "q" => s.q = s.q.or(Some(as_f64(key, v)?)),
                "trials" => s.trials = s.trials.or(Some(as_usize(key, v)?)),
                "seed" => {
                    let seed = v
                        .as_u64()
                        .ok_or_else(|| config_error(key, "a nonnegative integer"))?;
                    s.seed = s.seed.or(Some(seed));
                }
                "dof" => {
                    if dof.is_none() {
                        dof = Some(as_str(key, v)?.to_string());
                    }
                }
                "horizon" => s.horizon = s.horizon.or(Some(as_usize(key, v)?)),
                "kappa" => s.kappa = s.kappa.or(Some(as_f64(key, v)?)),
                "out" => {
                    if shared.out.is_none() {
                        s.out = PathBuf::from(as_str(key, v)?);
                    }
                }
                "threads" => s.threads = s.threads.or(Some(as_usize(key, v)?)),
                "x_min" => s.x_min = Some(as_f64(key, v)?),
                "x_max" => s.x_max = Some(as_f64(key, v)?),
                "grid" => s.grid = Some(as_usize(key, v)?),
                "simulate" => {
                    s.simulate = v.as_bool().ok_or_else(|| config_error(key, "a boolean"))?
                }
                _ => return Err(usage(format!("unknown config key {key:?}"))),
            }
        }
    }
    if let Some(d) = dof {
        s.dof = d.parse().map_err(usage)?;
    }
    Ok(s)
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
}

impl Outputs {
    fn new(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> CliResult<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| Failure::Numerical(format!("{}: {e}", path.display())))?;
        self.files.push(name.to_string());
        Ok(())
    }
}

#[derive(Serialize)]
struct HorizonEntry {
    p: usize,
    horizon: usize,
}

#[derive(Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: Value,
    master_seed: Option<u64>,
    dof_convention: DofConvention,
    horizon: Vec<HorizonEntry>,
    outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ks: Option<f64>,
    wall_clock_seconds: f64,
}

struct Report {
    horizon: Vec<HorizonEntry>,
    pass: Option<bool>,
    ks: Option<f64>,
    uses_seed: bool,
}

fn horizons(s: &Settings, ps: &[usize]) -> Vec<HorizonEntry> {
    ps.iter()
        .map(|&p| HorizonEntry {
            p,
            horizon: s
                .horizon
                .unwrap_or_else(|| crate::spectra::default_horizon(p)),
        })
        .collect()
}

fn cmd_simulate(s: &Settings, out: &mut Outputs) -> CliResult<Report> {
    let family = s.family()?;
    let p_list = s.p_list()?.to_vec();
    if !p_list.windows(2).all(|w| w[0] < w[1]) {
        return Err(usage("--p list must be strictly ascending"));
    }
    let config = s.experiment(family, p_list.clone())?;
    let result = sweep(&config).map_err(numerical)?;
    let mut csv = format!("{SWEEP_HEADER}\n");
    for r in &result.rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.p,
            r.n,
            r.phi,
            r.xi,
            num(r.overshoot.freq),
            num(r.overshoot.ci_low),
            num(r.overshoot.ci_high),
            num(r.undershoot.freq),
            num(r.undershoot.ci_low),
            num(r.undershoot.ci_high),
            num(r.theorem2_bound),
            num(r.theorem3_bound),
            num(r.mean_l1),
            num(r.mean_lp),
        );
    }
    out.write(SWEEP_FILE, &csv)?;
    Ok(Report {
        horizon: horizons(s, &p_list),
        pass: None,
        ks: None,
        uses_seed: true,
    })
}

fn cmd_bounds(s: &Settings, out: &mut Outputs) -> CliResult<Report> {
    let family = s.family()?;
    let p = s.single_p()?;
    let config = s.experiment(family, vec![p])?;
    let (lo, hi) = (
        s.x_min.unwrap_or(DEFAULT_X_MIN),
        s.x_max.unwrap_or(DEFAULT_X_MAX),
    );
    let k = s.grid.unwrap_or(DEFAULT_GRID);
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) || k < 2 {
        return Err(usage(format!(
            "grid needs 0 <= x-min < x-max and at least 2 points, got [{lo}, {hi}] with {k}"
        )));
    }
    let grid: Vec<f64> = (0..k)
        .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
        .collect();
    let table = cdf_vs_bound(&config, p, &grid).map_err(numerical)?;
    let mut csv = format!("{BOUNDS_HEADER}\n");
    for r in &table.rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            num(r.x),
            num(r.emp_cdf_l1),
            num(r.muirhead_upper),
            num(r.emp_cdf_lp),
            num(r.muirhead_lower),
            num(r.stderr),
            r.pass
        );
    }
    out.write(BOUNDS_FILE, &csv)?;
    Ok(Report {
        horizon: Vec::new(),
        pass: Some(table.pass),
        ks: None,
        uses_seed: true,
    })
}

fn cmd_spectrum(s: &Settings, out: &mut Outputs) -> CliResult<Report> {
    let family = s.family()?;
    let p = s.single_p()?;
    let kappa = s.kappa();
    let horizon = s
        .horizon
        .unwrap_or_else(|| crate::spectra::default_horizon(p));
    if horizon < p {
        return Err(usage(Error::HorizonTooSmall { p, horizon }));
    }
    crate::bounds::theorem3_constant(kappa).map_err(usage)?;
    family.spectrum_at(p).map_err(usage)?;
    let j = j_set(&family, p, horizon).map_err(numerical)?;
    let h = h_set_xi(&family, p, kappa, horizon).map_err(numerical)?;
    let check = match family.generator_fn() {
        Some(g) => Some(generator_condition_check(g, &default_check_grid()).map_err(numerical)?),
        None => None,
    };
    let doc = json!({
        "p": p,
        "horizon": horizon,
        "kappa": kappa,
        "phi": j.cardinal,
        "xi": h.cardinal,
        "members_j": j.members,
        "members_h": h.members,
        "generator_check": check.map(|c| json!({
            "points": c.points,
            "slopes": c.slopes,
            "passes": c.passes,
            "heuristic": c.heuristic,
        })),
    });
    let text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize") + "\n";
    out.write(SPECTRUM_FILE, &text)?;
    Ok(Report {
        horizon: vec![HorizonEntry { p, horizon }],
        pass: None,
        ks: None,
        uses_seed: false,
    })
}

/// `MP_GRID_POINTS` evenly spaced points with `λ₋` and `λ₊` on the grid and
/// `MP_GRID_MARGIN` steps on either side of the support.
pub fn mp_grid(law: &MPLaw) -> Vec<f64> {
    let inner = MP_GRID_POINTS - 2 * MP_GRID_MARGIN - 1;
    let h = (law.lambda_plus - law.lambda_minus) / inner as f64;
    (0..MP_GRID_POINTS)
        .map(|i| law.lambda_minus + (i as f64 - MP_GRID_MARGIN as f64) * h)
        .collect()
}

fn cmd_mp(s: &Settings, out: &mut Outputs) -> CliResult<Report> {
    let q = s.q()?;
    let law = MPLaw::new(q).map_err(usage)?;
    let mut csv = format!("{MP_HEADER}\n");
    for x in mp_grid(&law) {
        let _ = writeln!(csv, "{},{}", num(x), num(law.density(x)));
    }
    out.write(MP_FILE, &csv)?;
    if !s.simulate {
        return Ok(Report {
            horizon: Vec::new(),
            pass: None,
            ks: None,
            uses_seed: false,
        });
    }
    let p = s.single_p()?;
    let (trials, seed) = (s.trials()?, s.seed()?);
    if s.threads == Some(0) {
        return Err(usage("threads must be at least 1"));
    }
    crate::wishart::sample_size(p, q).map_err(usage)?;
    let r = mp_compare(p, q, trials, seed, s.threads).map_err(|e| match e {
        Error::NoTrials | Error::Config(_) => usage(e),
        e => numerical(e),
    })?;
    out.write(
        MP_KS_FILE,
        &format!(
            "{MP_KS_HEADER}\n{},{p},{},{trials},{seed}\n",
            num(r.ks),
            num(q)
        ),
    )?;
    let mut hist = format!("{MP_HIST_HEADER}\n");
    for b in &r.histogram {
        let _ = writeln!(hist, "{},{},{}", num(b.lo), num(b.hi), num(b.mass));
    }
    out.write(MP_HIST_FILE, &hist)?;
    Ok(Report {
        horizon: Vec::new(),
        pass: None,
        ks: Some(r.ks),
        uses_seed: true,
    })
}

fn execute(command: Command) -> CliResult<()> {
    let start = Instant::now();
    let (name, settings) = match &command {
        Command::Simulate(a) => ("simulate", merge(a)?),
        Command::Spectrum(a) => ("spectrum", merge(a)?),
        Command::Bounds(a) => {
            let mut s = merge(&a.shared)?;
            s.x_min = a.x_min.or(s.x_min);
            s.x_max = a.x_max.or(s.x_max);
            s.grid = a.grid.or(s.grid);
            ("bounds", s)
        }
        Command::Mp(a) => {
            let mut s = merge(&a.shared)?;
            s.simulate |= a.simulate;
            ("mp", s)
        }
    };
    let mut out = Outputs::new(&settings.out)?;
    let report = match name {
        "simulate" => cmd_simulate(&settings, &mut out)?,
        "bounds" => cmd_bounds(&settings, &mut out)?,
        "spectrum" => cmd_spectrum(&settings, &mut out)?,
        _ => cmd_mp(&settings, &mut out)?,
    };
    for f in &out.files {
        let ok = fs::metadata(out.dir.join(f))
            .map(|m| m.len() > 0)
            .unwrap_or(false);
        if !ok {
            return Err(Failure::Numerical(format!(
                "output {f} is missing or empty"
            )));
        }
    }
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: name,
        config: settings.echo(),
        master_seed: if report.uses_seed {
            settings.seed
        } else {
            None
        },
        dof_convention: settings.dof,
        horizon: report.horizon,
        outputs: out.files.clone(),
        pass: report.pass,
        ks: report.ks,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest always serializes") + "\n";
    out.write(MANIFEST_FILE, &text)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            EXIT_NUMERICAL
        }
    }
}
