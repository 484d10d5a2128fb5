//! Command-line front end: `generate`, `aggregate`, `train`, `eval`, `sweep`.
//!
//! Exit status is 0 on success, 2 on a usage error and 1 on a runtime
//! error (one line on stderr). Each run writes a JSON manifest with the
//! fully resolved parameters next to its outputs.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::btl::{PowerLawConfig, SimulationConfig};
use crate::dataset::ComparisonDataset;
use crate::error::{Error, Result};
use crate::experiments::{self, linspace, SweepMode, SweepSpec};
use crate::io::{write_atomic, write_string_atomic};
use crate::learner::{evaluate_accuracy, train_with_history, ScoreTable, TrainConfig};
use crate::loss::{pair_targets, BlendParams};
use crate::metrics::kendall_tau;
use crate::rank_centrality::{RankCentrality, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::seeding::{self, TAG_SPLIT};

pub const THREADS_ENV: &str = "RANKSMOOTH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ranksmooth", version, about = "Rank-smoothed pairwise learning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate BTL comparisons on a random connected pair set.
    Generate(GenerateArgs),
    /// Rank items by the Rank Centrality stationary distribution.
    Aggregate(AggregateArgs),
    /// Train per-item scores on the rank-smoothed loss.
    Train(TrainArgs),
    /// Score a held-out comparison set with trained scores.
    Eval(EvalArgs),
    /// Run a synthetic parameter sweep.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 500)]
    n_items: usize,
    /// Fraction of all item pairs that get compared.
    #[arg(long, default_value_t = 0.15)]
    ratio: f64,
    /// Comparisons per pair.
    #[arg(long, default_value_t = 5)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Defaults to `<out stem>.weights.csv`.
    #[arg(long)]
    weights_out: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.1)]
    omega_min: f64,
    #[arg(long, default_value_t = 1.0)]
    omega_max: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct RankArgs {
    /// L1 convergence tolerance of the power iteration.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Pseudo-count added to both sides of every compared pair.
    #[arg(long, default_value_t = 0.0)]
    laplace: f64,
}

impl RankArgs {
    fn solver(&self) -> RankCentrality {
        RankCentrality { laplace: self.laplace, tol: self.tol, max_iter: self.max_iter }
    }

    fn record(&self, p: &mut Params) {
        p.insert("tol".into(), json!(self.tol));
        p.insert("max_iter".into(), json!(self.max_iter));
        p.insert("laplace".into(), json!(self.laplace));
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Manifest path; defaults to a file next to the main output.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AggregateArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    rank: RankArgs,
    /// Smoothing exponent for `--pairs-out`.
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Also write `item_i,item_j,p_local,p_global` for every compared pair.
    #[arg(long)]
    pairs_out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct TrainingArgs {
    #[arg(long, default_value_t = 0.001)]
    lr: f64,
    #[arg(long, default_value_t = 0.9)]
    momentum: f64,
    /// Learning-rate multiplier applied after every epoch.
    #[arg(long, default_value_t = 0.9)]
    decay: f64,
    #[arg(long, default_value_t = 128)]
    batch_size: usize,
    #[arg(long, default_value_t = 10)]
    epochs: usize,
    /// Fraction of pairs used for training; the rest is the test split.
    #[arg(long, default_value_t = 0.95)]
    train_fraction: f64,
}

impl TrainingArgs {
    fn config(&self, seed: u64) -> TrainConfig {
        TrainConfig {
            learning_rate: self.lr,
            momentum: self.momentum,
            lr_decay_per_epoch: self.decay,
            batch_size: self.batch_size,
            epochs: self.epochs,
            seed,
        }
    }

    fn record(&self, p: &mut Params) {
        p.insert("lr".into(), json!(self.lr));
        p.insert("momentum".into(), json!(self.momentum));
        p.insert("decay".into(), json!(self.decay));
        p.insert("batch_size".into(), json!(self.batch_size));
        p.insert("epochs".into(), json!(self.epochs));
        p.insert("train_fraction".into(), json!(self.train_fraction));
    }
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Scores CSV; defaults to `<in stem>.scores.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.95)]
    beta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    training: TrainingArgs,
    #[command(flatten)]
    rank: RankArgs,
    /// Write the test split here for a later `eval`.
    #[arg(long)]
    test_out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    scores: PathBuf,
    /// Comparison CSV to score.
    #[arg(long = "in")]
    input: PathBuf,
    /// Ground-truth `item,weight` file; adds Kendall tau to the report.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// n_t grid against alpha at r = 0.15, beta = 1.
    TrialsAlpha,
    /// n_t grid against beta at r = 0.15, alpha = 0.2.
    TrialsBeta,
    /// r grid against alpha at n_t = 5, beta = 1.
    RatioAlpha,
    /// r grid against beta at n_t = 5, alpha = 0.25.
    RatioBeta,
    /// Accuracy against alpha for several beta at r = 0.15, n_t = 5.
    Accuracy,
}

/// Comma-separated values or `start:stop:count`.
#[derive(Debug, Clone)]
struct Grid(Vec<f64>);

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let values = if parts.len() == 3 {
        let count: usize = parts[2].trim().parse().map_err(|e| format!("{:?}: {e}", parts[2]))?;
        linspace(num(parts[0])?, num(parts[1])?, count)
    } else if parts.len() == 1 {
        s.split(',').map(num).collect::<std::result::Result<_, _>>()?
    } else {
        return Err("expected a comma list or start:stop:count".into());
    };
    if values.is_empty() {
        return Err("grid is empty".into());
    }
    Ok(Grid(values))
}

fn parse_u64_list(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"))).collect()
}

#[derive(Debug, Clone)]
struct Trials(Vec<u64>);

fn parse_trials(s: &str) -> std::result::Result<Trials, String> {
    parse_u64_list(s).map(Trials)
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepModeArg::Error)]
    mode: SweepModeArg,
    /// Starting grid; explicit flags below override it.
    #[arg(long, value_enum, default_value_t = Preset::TrialsAlpha)]
    preset: Preset,
    #[arg(long)]
    n_items: Option<usize>,
    #[arg(long, value_parser = parse_grid)]
    ratios: Option<Grid>,
    #[arg(long, value_parser = parse_trials)]
    trials: Option<Trials>,
    #[arg(long, value_parser = parse_grid)]
    alphas: Option<Grid>,
    #[arg(long, value_parser = parse_grid)]
    betas: Option<Grid>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
    /// Reuse complete units from an existing `rows.csv` in the output dir.
    #[arg(long)]
    resume: bool,
    #[command(flatten)]
    rank: RankArgs,
    #[command(flatten)]
    training: TrainingArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepModeArg {
    Error,
    Accuracy,
}

type Params = BTreeMap<String, Value>;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub version: String,
    pub seed: Option<u64>,
    pub params: Params,
    pub inputs: BTreeMap<String, PathBuf>,
    pub outputs: BTreeMap<String, PathBuf>,
    pub results: Params,
    pub duration_seconds: f64,
}

impl RunManifest {
    fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: None,
            params: Params::new(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            results: Params::new(),
            duration_seconds: 0.0,
        }
    }

    fn write(&mut self, path: &Path, started: Instant) -> Result<()> {
        self.duration_seconds = started.elapsed().as_secs_f64();
        let text = serde_json::to_string_pretty(self)? + "\n";
        write_string_atomic(path, &text)
    }
}

/// `dir/stem.suffix` next to `path`, e.g. `d.csv` → `d.weights.csv`.
fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn manifest_path(common: &CommonArgs, beside: &Path) -> PathBuf {
    common.manifest.clone().unwrap_or_else(|| sidecar(beside, "manifest.json"))
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV}={raw:?} is not a thread count")))?;
    if n > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run_generate(a: &GenerateArgs) -> Result<()> {
    let started = Instant::now();
    let power = PowerLawConfig { gamma: a.gamma, omega_min: a.omega_min, omega_max: a.omega_max };
    power.validate()?;
    let sim = SimulationConfig { n_items: a.n_items, pair_ratio: a.ratio, trials_per_pair: a.trials, seed: a.seed };
    let syn = sim.generate(&power)?;
    let weights_out = a.weights_out.clone().unwrap_or_else(|| sidecar(&a.out, "weights.csv"));
    syn.dataset.save(&a.out)?;
    syn.weights.save(&weights_out, syn.dataset.labels())?;

    let mut m = RunManifest::new("generate");
    m.seed = Some(a.seed);
    m.params.insert("n_items".into(), json!(a.n_items));
    m.params.insert("ratio".into(), json!(a.ratio));
    m.params.insert("trials".into(), json!(a.trials));
    m.params.insert("gamma".into(), json!(a.gamma));
    m.params.insert("omega_min".into(), json!(a.omega_min));
    m.params.insert("omega_max".into(), json!(a.omega_max));
    m.outputs.insert("dataset".into(), a.out.clone());
    m.outputs.insert("weights".into(), weights_out);
    m.results.insert("pairs".into(), json!(syn.dataset.n_pairs()));
    m.results.insert("pair_set_attempt".into(), json!(syn.attempt));
    println!("items={} pairs={} trials={}", syn.dataset.n_items(), syn.dataset.n_pairs(), a.trials);
    m.write(&manifest_path(&a.common, &a.out), started)
}

fn run_aggregate(a: &AggregateArgs) -> Result<()> {
    let started = Instant::now();
    let ds = ComparisonDataset::load(&a.input)?;
    let st = a.rank.solver().fit(&ds)?;
    st.save_ranking(&a.out, ds.labels())?;

    let mut m = RunManifest::new("aggregate");
    a.rank.record(&mut m.params);
    m.params.insert("beta".into(), json!(a.beta));
    m.inputs.insert("dataset".into(), a.input.clone());
    m.outputs.insert("ranking".into(), a.out.clone());
    if let Some(path) = &a.pairs_out {
        let targets = pair_targets(&ds, &st.pi, BlendParams::new(0.0, a.beta)?);
        write_atomic(path, |w| {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["item_i", "item_j", "p_local", "p_global"])?;
            for t in &targets {
                out.write_record([ds.label(t.i), ds.label(t.j), &t.p_local.to_string(), &t.p_global.to_string()])?;
            }
            out.flush()?;
            Ok(())
        })?;
        m.outputs.insert("pairs".into(), path.clone());
    }
    m.results.insert("iterations".into(), json!(st.iterations));
    m.results.insert("residual".into(), json!(st.residual));
    println!("items={} iterations={} residual={:e}", ds.n_items(), st.iterations, st.residual);
    m.write(&manifest_path(&a.common, &a.out), started)
}

fn run_train(a: &TrainArgs) -> Result<()> {
    let started = Instant::now();
    let params = BlendParams::new(a.alpha, a.beta)?;
    let config = a.training.config(a.seed);
    config.validate()?;
    let ds = ComparisonDataset::load(&a.input)?;
    let (train_set, test_set) = if a.training.train_fraction == 1.0 {
        (ds, None)
    } else {
        let (tr, te) = ds.split(a.training.train_fraction, seeding::derive(a.seed, &[TAG_SPLIT]))?;
        (tr, Some(te))
    };
    let st = a.rank.solver().fit(&train_set)?;
    let report = train_with_history(&train_set, &st.pi, params, &config)?;
    let out = a.out.clone().unwrap_or_else(|| sidecar(&a.input, "scores.csv"));
    report.scores.save(&out, train_set.labels())?;

    let accuracy = match &test_set {
        Some(te) => match evaluate_accuracy(&report.scores, te) {
            Ok(acc) => Some(acc),
            Err(Error::AllTied) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };

    let mut m = RunManifest::new("train");
    m.seed = Some(a.seed);
    m.params.insert("alpha".into(), json!(a.alpha));
    m.params.insert("beta".into(), json!(a.beta));
    a.training.record(&mut m.params);
    a.rank.record(&mut m.params);
    m.inputs.insert("dataset".into(), a.input.clone());
    m.outputs.insert("scores".into(), out.clone());
    if let (Some(path), Some(te)) = (&a.test_out, &test_set) {
        te.save(path)?;
        m.outputs.insert("test_split".into(), path.clone());
    }
    m.results.insert("final_loss".into(), json!(report.final_loss()));
    m.results.insert("epoch_losses".into(), json!(report.epoch_losses));
    m.results.insert("test_accuracy".into(), json!(accuracy));
    let acc_text = accuracy.map_or_else(|| "n/a".to_string(), |x| format!("{x:.6}"));
    println!("final_loss={:.6} test_accuracy={acc_text}", report.final_loss());
    m.write(&manifest_path(&a.common, &out), started)
}

fn load_weights_for(path: &Path, ds: &ComparisonDataset) -> Result<Vec<f64>> {
    let mut rdr = csv::Reader::from_path(path)?;
    let mut w = vec![f64::NAN; ds.n_items()];
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let err = |message: String| Error::Parse { path: path.to_path_buf(), line: k as u64 + 2, message };
        if rec.len() != 2 {
            return Err(err(format!("expected 2 fields, found {}", rec.len())));
        }
        if let Some(i) = ds.index_of(&rec[0]) {
            w[i] = rec[1].parse().map_err(|e| err(format!("weight: {e}")))?;
        }
    }
    if let Some(i) = w.iter().position(|x| x.is_nan()) {
        return Err(Error::UnknownItem(ds.label(i).to_owned()));
    }
    Ok(w)
}

fn run_eval(a: &EvalArgs) -> Result<()> {
    let started = Instant::now();
    let ds = ComparisonDataset::load(&a.input)?;
    let scores = ScoreTable::load_for(&a.scores, &ds)?;
    let accuracy = evaluate_accuracy(&scores, &ds)?;

    let mut m = RunManifest::new("eval");
    m.inputs.insert("dataset".into(), a.input.clone());
    m.inputs.insert("scores".into(), a.scores.clone());
    m.results.insert("accuracy".into(), json!(accuracy));
    let mut line = format!("accuracy={accuracy:.6}");
    if let Some(wp) = &a.weights {
        let w = load_weights_for(wp, &ds)?;
        let tau = kendall_tau(scores.as_slice(), &w);
        m.inputs.insert("weights".into(), wp.clone());
        m.results.insert("kendall_tau".into(), json!(tau));
        line += &format!(" kendall_tau={tau:.6}");
    }
    println!("{line}");
    let path = a.common.manifest.clone().unwrap_or_else(|| sidecar(&a.scores, "eval.manifest.json"));
    m.write(&path, started)
}

fn sweep_spec(a: &SweepArgs) -> SweepSpec {
    let base = match a.preset {
        Preset::TrialsAlpha => SweepSpec::default(),
        Preset::TrialsBeta => SweepSpec::trials_vs_beta(),
        Preset::RatioAlpha => SweepSpec::ratio_vs_alpha(),
        Preset::RatioBeta => SweepSpec::ratio_vs_beta(),
        Preset::Accuracy => SweepSpec::accuracy_grid(),
    };
    SweepSpec {
        n_items: a.n_items.unwrap_or(base.n_items),
        pair_ratios: a.ratios.clone().map_or(base.pair_ratios, |g| g.0),
        trials_per_pair: a.trials.clone().map_or(base.trials_per_pair, |t| t.0),
        alphas: a.alphas.clone().map_or(base.alphas, |g| g.0),
        betas: a.betas.clone().map_or(base.betas, |g| g.0),
        n_repeats: a.repeats.unwrap_or(base.n_repeats),
        base_seed: a.seed,
        power: base.power,
        rank: a.rank.solver(),
        train_fraction: a.training.train_fraction,
    }
}

/// Returns whether every unit completed.
fn run_sweep(a: &SweepArgs) -> Result<bool> {
    let started = Instant::now();
    let spec = sweep_spec(a);
    spec.validate()?;
    let mode = match a.mode {
        SweepModeArg::Error => SweepMode::Error,
        SweepModeArg::Accuracy => SweepMode::Accuracy,
    };
    let config = a.training.config(a.seed);
    std::fs::create_dir_all(&a.out_dir)?;
    let rows_path = a.out_dir.join("rows.csv");
    let prior = if a.resume && rows_path.exists() {
        let old = experiments::read_rows_csv(&rows_path)?;
        if old.mode != mode {
            return Err(Error::InvalidArgument(format!(
                "cannot resume a {} sweep from {} rows",
                mode.name(),
                old.mode.name()
            )));
        }
        old.rows
    } else {
        Vec::new()
    };
    let result = match mode {
        SweepMode::Error => experiments::error_sweep_resume(&spec, &prior)?,
        SweepMode::Accuracy => experiments::accuracy_sweep_resume(&spec, &config, &prior)?,
    };

    let mut m = RunManifest::new("sweep");
    m.seed = Some(a.seed);
    let p = &mut m.params;
    p.insert("mode".into(), json!(mode.name()));
    p.insert("n_items".into(), json!(spec.n_items));
    p.insert("ratios".into(), json!(spec.pair_ratios));
    p.insert("trials".into(), json!(spec.trials_per_pair));
    p.insert("alphas".into(), json!(spec.alphas));
    p.insert("betas".into(), json!(spec.betas));
    p.insert("repeats".into(), json!(spec.n_repeats));
    p.insert("gamma".into(), json!(spec.power.gamma));
    p.insert("omega_min".into(), json!(spec.power.omega_min));
    p.insert("omega_max".into(), json!(spec.power.omega_max));
    p.insert("format".into(), json!(format!("{:?}", a.format).to_lowercase()));
    p.insert("resume".into(), json!(a.resume));
    a.rank.record(p);
    if mode == SweepMode::Accuracy {
        a.training.record(p);
    }

    // rows and cell status are always written so a failed run can resume
    experiments::write_rows_csv(&result, &rows_path)?;
    let cells_path = a.out_dir.join("cells.csv");
    experiments::write_cells_csv(&result, &cells_path)?;
    m.outputs.insert("rows".into(), rows_path);
    m.outputs.insert("cells".into(), cells_path);
    if a.format != Format::Svg {
        let summary = a.out_dir.join("summary.csv");
        let optima = a.out_dir.join("optima.csv");
        experiments::write_summary_csv(&result, &summary)?;
        experiments::write_optima_csv(&result, &optima)?;
        m.outputs.insert("summary".into(), summary);
        m.outputs.insert("optima".into(), optima);
    }
    if a.format != Format::Csv {
        for (k, path) in experiments::write_svg_charts(&result, &a.out_dir)?.into_iter().enumerate() {
            m.outputs.insert(format!("chart{k}"), path);
        }
    }
    let failed = result.failures().count();
    m.results.insert("units".into(), json!(result.cells.len()));
    m.results.insert("failed_units".into(), json!(failed));
    let optima: Vec<Value> = result
        .optima()
        .iter()
        .map(|o| {
            json!({"axis": o.axis.name(), "r": o.r, "n_t": o.n_t, "fixed": o.fixed,
                   "best_x": o.best_x, "best_mean": o.best_mean})
        })
        .collect();
    m.results.insert("optima".into(), Value::Array(optima));
    m.write(&manifest_path(&a.common, &a.out_dir.join("sweep")), started)?;

    for o in result.optima() {
        println!(
            "best {}={} at r={} n_t={} {}={} ({}={:.6})",
            o.axis.name(),
            o.best_x,
            o.r,
            o.n_t,
            o.axis.other().name(),
            o.fixed,
            mode.name(),
            o.best_mean
        );
    }
    if failed > 0 {
        eprintln!("ranksmooth: {failed} of {} units failed; see cells.csv", result.cells.len());
    }
    Ok(failed == 0)
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = configure_threads().and_then(|()| match &cli.command {
        Command::Generate(a) => run_generate(a).map(|()| true),
        Command::Aggregate(a) => run_aggregate(a).map(|()| true),
        Command::Train(a) => run_train(a).map(|()| true),
        Command::Eval(a) => run_eval(a).map(|()| true),
        Command::Sweep(a) => run_sweep(a),
    });
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("ranksmooth: {}", e.to_string().replace('\n', " "));
            1
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}
