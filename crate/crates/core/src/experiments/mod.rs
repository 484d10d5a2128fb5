//! Synthetic parameter sweeps over the blend weight `alpha` and the
//! smoothing exponent `beta`.
//!
//! A sweep is a grid over pair ratio `r`, trials per pair `n_t`, `alpha`,
//! `beta` and a repeat index. Data is generated once per *unit*
//! `(r, n_t, repeat)` and shared by every `(alpha, beta)` cell of that unit,
//! so curves over `alpha` or `beta` compare like with like.
//!
//! Two metrics are supported:
//!
//! * [`SweepMode::Error`]: generalized KL divergence between the true BTL
//!   probabilities and the blended targets `q*` over the compared pairs.
//! * [`SweepMode::Accuracy`]: majority-vote accuracy on a held-out split
//!   after training per-item scores on the rank-smoothed loss.
//!
//! Seeds come from [`cell_seed`], so any cell can be recomputed in isolation
//! and a partially completed sweep can be resumed.

mod emit;

pub use emit::{read_rows_csv, write_cells_csv, write_optima_csv, write_rows_csv, write_summary_csv, write_svg_charts, write_tables};

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::btl::{PowerLawConfig, SimulationConfig};
use crate::error::{Error, Result};
use crate::learner::{evaluate_accuracy, train, TrainConfig};
use crate::loss::{blended_target, generalized_kl_term, BlendParams};
use crate::rank_centrality::{global_probability, RankCentrality};
use crate::seeding::{self, TAG_SPLIT};

/// Index used for the alpha and beta slots of a data-unit seed.
pub const DATA_CELL: u64 = u64::MAX;

/// Seed of grid cell `(r, n_t, alpha_index, beta_index, repeat)`:
/// `derive(base, [r.to_bits(), n_t, alpha_index, beta_index, repeat])`.
///
/// Simulated data for a unit uses `alpha_index = beta_index = DATA_CELL`;
/// training runs use the real grid indices.
pub fn cell_seed(base: u64, r: f64, n_t: u64, alpha_index: u64, beta_index: u64, repeat: u64) -> u64 {
    seeding::derive(base, &[r.to_bits(), n_t, alpha_index, beta_index, repeat])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Error,
    Accuracy,
}

impl SweepMode {
    pub fn name(self) -> &'static str {
        match self {
            SweepMode::Error => "error",
            SweepMode::Accuracy => "accuracy",
        }
    }

    /// Error is minimized, accuracy maximized.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            SweepMode::Error => a < b,
            SweepMode::Accuracy => a > b,
        }
    }
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|k| if k == count - 1 { stop } else { start + step * k as f64 })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_items: usize,
    pub pair_ratios: Vec<f64>,
    pub trials_per_pair: Vec<u64>,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub n_repeats: usize,
    pub base_seed: u64,
    pub power: PowerLawConfig,
    pub rank: RankCentrality,
    /// Fraction of pairs used for training in accuracy sweeps.
    pub train_fraction: f64,
}

pub const TRIALS_GRID: [u64; 6] = [3, 5, 10, 20, 50, 100];
pub const RATIO_GRID: [f64; 5] = [0.15, 0.35, 0.55, 0.75, 0.95];
pub const ACCURACY_BETAS: [f64; 5] = [0.8, 0.9, 0.95, 1.0, 1.05];

impl Default for SweepSpec {
    /// Effect of `n_t` on `alpha` at `r = 0.15`, `beta = 1`.
    fn default() -> Self {
        Self {
            n_items: 500,
            pair_ratios: vec![0.15],
            trials_per_pair: TRIALS_GRID.to_vec(),
            alphas: linspace(0.0, 1.0, 21),
            betas: vec![1.0],
            n_repeats: 10,
            base_seed: 0,
            power: PowerLawConfig::default(),
            rank: RankCentrality::default(),
            train_fraction: 0.95,
        }
    }
}

impl SweepSpec {
    /// Effect of `n_t` on `beta` at `r = 0.15`, `alpha = 0.2`.
    pub fn trials_vs_beta() -> Self {
        Self { alphas: vec![0.2], betas: linspace(0.5, 1.2, 15), ..Self::default() }
    }

    /// Effect of `r` on `alpha` at `n_t = 5`, `beta = 1`.
    pub fn ratio_vs_alpha() -> Self {
        Self { pair_ratios: RATIO_GRID.to_vec(), trials_per_pair: vec![5], ..Self::default() }
    }

    /// Effect of `r` on `beta` at `n_t = 5`, `alpha = 0.25`.
    pub fn ratio_vs_beta() -> Self {
        Self {
            pair_ratios: RATIO_GRID.to_vec(),
            trials_per_pair: vec![5],
            alphas: vec![0.25],
            betas: linspace(0.9, 1.0, 11),
            ..Self::default()
        }
    }

    /// Accuracy against `alpha` for several `beta` at `r = 0.15`, `n_t = 5`.
    pub fn accuracy_grid() -> Self {
        Self {
            trials_per_pair: vec![5],
            alphas: linspace(0.0, 1.0, 11),
            betas: ACCURACY_BETAS.to_vec(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.pair_ratios.is_empty() || self.trials_per_pair.is_empty() || self.alphas.is_empty() || self.betas.is_empty() {
            return bad("sweep grids must be nonempty");
        }
        if self.n_repeats == 0 {
            return bad("need at least one repeat");
        }
        if self.n_items < 2 {
            return bad("need at least two items");
        }
        for &a in &self.alphas {
            BlendParams::new(a, 1.0)?;
        }
        for &b in &self.betas {
            BlendParams::new(0.0, b)?;
        }
        if self.trials_per_pair.contains(&0) {
            return bad("trials per pair must be positive");
        }
        if self.pair_ratios.iter().any(|&r| !(r > 0.0 && r <= 1.0)) {
            return bad("pair ratios must lie in (0, 1]");
        }
        self.power.validate()
    }

    fn units(&self) -> Vec<Unit> {
        let mut out = Vec::new();
        for (ri, &r) in self.pair_ratios.iter().enumerate() {
            for (ti, &n_t) in self.trials_per_pair.iter().enumerate() {
                for repeat in 0..self.n_repeats {
                    out.push(Unit { ri, ti, r, n_t, repeat });
                }
            }
        }
        out
    }

    fn simulate(&self, unit: &Unit) -> Result<crate::btl::Synthetic> {
        let seed = cell_seed(self.base_seed, unit.r, unit.n_t, DATA_CELL, DATA_CELL, unit.repeat as u64);
        SimulationConfig { n_items: self.n_items, pair_ratio: unit.r, trials_per_pair: unit.n_t, seed }
            .generate(&self.power)
    }
}

#[derive(Debug, Clone, Copy)]
struct Unit {
    ri: usize,
    ti: usize,
    r: f64,
    n_t: u64,
    repeat: usize,
}

/// One measured grid cell for one repeat.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: f64,
    pub n_t: u64,
    pub alpha: f64,
    pub beta: f64,
    pub repeat: usize,
    pub value: f64,
}

/// Outcome of one data unit `(r, n_t, repeat)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStatus {
    pub r: f64,
    pub n_t: u64,
    pub repeat: usize,
    /// `None` when the unit completed.
    pub error: Option<String>,
}

/// Mean and spread of one grid cell over repeats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSummary {
    pub r: f64,
    pub n_t: u64,
    pub alpha: f64,
    pub beta: f64,
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (0 for a single repeat, `inf` when the
    /// mean is not finite).
    pub std: f64,
}

impl CellSummary {
    pub fn std_error(&self) -> f64 {
        self.std / (self.count as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Alpha,
    Beta,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::Beta => "beta",
        }
    }

    pub fn other(self) -> Axis {
        match self {
            Axis::Alpha => Axis::Beta,
            Axis::Beta => Axis::Alpha,
        }
    }
}

/// Best point of one curve of mean metric against `axis`, with `(r, n_t)`
/// and the other parameter held at `fixed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveOptimum {
    pub axis: Axis,
    pub r: f64,
    pub n_t: u64,
    pub fixed: f64,
    pub best_x: f64,
    pub best_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub mode: SweepMode,
    pub ratios: Vec<f64>,
    pub trials: Vec<u64>,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    /// Ordered by `(r, n_t, repeat, beta, alpha)` grid position.
    pub rows: Vec<SweepRow>,
    pub cells: Vec<CellStatus>,
}

fn position<T: PartialEq>(grid: &[T], x: &T) -> usize {
    grid.iter().position(|g| g == x).expect("row value lies on the grid")
}

impl SweepResult {
    pub fn failures(&self) -> impl Iterator<Item = &CellStatus> {
        self.cells.iter().filter(|c| c.error.is_some())
    }

    pub fn is_complete(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Per-cell mean and sample standard deviation over repeats, in grid
    /// order `(r, n_t, beta, alpha)`. Repeats are accumulated in row order.
    pub fn summaries(&self) -> Vec<CellSummary> {
        let mut groups: BTreeMap<(usize, usize, usize, usize), Vec<f64>> = BTreeMap::new();
        for row in &self.rows {
            let key = (
                position(&self.ratios, &row.r),
                position(&self.trials, &row.n_t),
                position(&self.betas, &row.beta),
                position(&self.alphas, &row.alpha),
            );
            groups.entry(key).or_default().push(row.value);
        }
        groups
            .into_iter()
            .map(|((ri, ti, bi, ai), values)| {
                let count = values.len();
                let mean = values.iter().sum::<f64>() / count as f64;
                let std = if !mean.is_finite() {
                    f64::INFINITY
                } else if count > 1 {
                    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
                } else {
                    0.0
                };
                CellSummary {
                    r: self.ratios[ri],
                    n_t: self.trials[ti],
                    alpha: self.alphas[ai],
                    beta: self.betas[bi],
                    count,
                    mean,
                    std,
                }
            })
            .collect()
    }

    pub fn summary(&self, r: f64, n_t: u64, alpha: f64, beta: f64) -> Option<CellSummary> {
        self.summaries()
            .into_iter()
            .find(|s| s.r == r && s.n_t == n_t && s.alpha == alpha && s.beta == beta)
    }

    /// Axes with more than one grid value.
    pub fn swept_axes(&self) -> Vec<Axis> {
        let mut axes = Vec::new();
        if self.alphas.len() > 1 {
            axes.push(Axis::Alpha);
        }
        if self.betas.len() > 1 {
            axes.push(Axis::Beta);
        }
        axes
    }

    /// Best mean along every curve of every swept axis. Non-finite means are
    /// never selected; ties keep the smaller parameter value.
    pub fn optima(&self) -> Vec<CurveOptimum> {
        let summaries = self.summaries();
        let mut out = Vec::new();
        for axis in self.swept_axes() {
            let mut curves: BTreeMap<(usize, usize, usize), Vec<&CellSummary>> = BTreeMap::new();
            for s in &summaries {
                let fixed = match axis {
                    Axis::Alpha => position(&self.betas, &s.beta),
                    Axis::Beta => position(&self.alphas, &s.alpha),
                };
                curves
                    .entry((position(&self.ratios, &s.r), position(&self.trials, &s.n_t), fixed))
                    .or_default()
                    .push(s);
            }
            for ((ri, ti, fi), mut points) in curves {
                let x_of = |s: &CellSummary| match axis {
                    Axis::Alpha => s.alpha,
                    Axis::Beta => s.beta,
                };
                points.sort_by(|a, b| x_of(a).total_cmp(&x_of(b)));
                let mut best: Option<&CellSummary> = None;
                for p in points {
                    if !p.mean.is_finite() {
                        continue;
                    }
                    if best.map_or(true, |b| self.mode.better(p.mean, b.mean)) {
                        best = Some(p);
                    }
                }
                if let Some(b) = best {
                    out.push(CurveOptimum {
                        axis,
                        r: self.ratios[ri],
                        n_t: self.trials[ti],
                        fixed: match axis {
                            Axis::Alpha => self.betas[fi],
                            Axis::Beta => self.alphas[fi],
                        },
                        best_x: x_of(b),
                        best_mean: b.mean,
                    });
                }
            }
        }
        out
    }

    fn optimum(&self, axis: Axis, r: f64, n_t: u64, fixed: f64) -> Option<CurveOptimum> {
        self.optima()
            .into_iter()
            .find(|o| o.axis == axis && o.r == r && o.n_t == n_t && o.fixed == fixed)
    }

    /// Best `alpha` on the curve `(r, n_t, beta)`.
    pub fn best_alpha(&self, r: f64, n_t: u64, beta: f64) -> Option<f64> {
        self.optimum(Axis::Alpha, r, n_t, beta).map(|o| o.best_x)
    }

    /// Best `beta` on the curve `(r, n_t, alpha)`.
    pub fn best_beta(&self, r: f64, n_t: u64, alpha: f64) -> Option<f64> {
        self.optimum(Axis::Beta, r, n_t, alpha).map(|o| o.best_x)
    }
}

type UnitOutcome = std::result::Result<Vec<SweepRow>, String>;

fn run_units<F>(spec: &SweepSpec, mode: SweepMode, prior: &[SweepRow], eval: F) -> Result<SweepResult>
where
    F: Fn(&Unit) -> Result<Vec<SweepRow>> + Sync,
{
    spec.validate()?;
    let per_unit = spec.alphas.len() * spec.betas.len();
    let mut reused: HashMap<(u64, u64, usize), Vec<SweepRow>> = HashMap::new();
    let wanted_alpha: HashSet<u64> = spec.alphas.iter().map(|a| a.to_bits()).collect();
    let wanted_beta: HashSet<u64> = spec.betas.iter().map(|b| b.to_bits()).collect();
    for row in prior {
        if wanted_alpha.contains(&row.alpha.to_bits()) && wanted_beta.contains(&row.beta.to_bits()) {
            reused.entry((row.r.to_bits(), row.n_t, row.repeat)).or_default().push(*row);
        }
    }

    let units = spec.units();
    let outcomes: Vec<UnitOutcome> = units
        .par_iter()
        .map(|u| {
            if let Some(rows) = reused.get(&(u.r.to_bits(), u.n_t, u.repeat)) {
                if rows.len() == per_unit {
                    let mut rows = rows.clone();
                    rows.sort_by_key(|row| (position(&spec.betas, &row.beta), position(&spec.alphas, &row.alpha)));
                    return Ok(rows);
                }
            }
            eval(u).map_err(|e| e.to_string())
        })
        .collect();

    let mut rows = Vec::with_capacity(units.len() * per_unit);
    let mut cells = Vec::with_capacity(units.len());
    for (u, outcome) in units.iter().zip(outcomes) {
        let error = match outcome {
            Ok(unit_rows) => {
                rows.extend(unit_rows);
                None
            }
            Err(e) => Some(e),
        };
        cells.push(CellStatus { r: u.r, n_t: u.n_t, repeat: u.repeat, error });
    }
    // grid order (r, n_t, repeat) already holds from the unit order
    debug_assert!(units.windows(2).all(|w| (w[0].ri, w[0].ti, w[0].repeat) < (w[1].ri, w[1].ti, w[1].repeat)));
    Ok(SweepResult {
        mode,
        ratios: spec.pair_ratios.clone(),
        trials: spec.trials_per_pair.clone(),
        alphas: spec.alphas.clone(),
        betas: spec.betas.clone(),
        rows,
        cells,
    })
}

/// Generalized KL error of the blended targets against the true BTL
/// probabilities, for every grid cell and repeat.
///
/// A cell whose blend puts zero mass where the truth has some (possible at
/// `alpha = 1` when a pair was unanimous) records `+inf`. Units that fail
/// to simulate or aggregate are reported in [`SweepResult::cells`].
pub fn error_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    error_sweep_resume(spec, &[])
}

/// [`error_sweep`], reusing complete units found in `prior`.
pub fn error_sweep_resume(spec: &SweepSpec, prior: &[SweepRow]) -> Result<SweepResult> {
    run_units(spec, SweepMode::Error, prior, |u| {
        let syn = spec.simulate(u)?;
        let pi = spec.rank.fit(&syn.dataset)?;
        let pairs = syn.dataset.pairs();
        let p_true: Vec<f64> = pairs.iter().map(|pc| syn.weights.true_probability(pc.i, pc.j)).collect();
        let p_local: Vec<f64> = pairs.iter().map(|pc| pc.p_local()).collect();
        let mut rows = Vec::with_capacity(spec.alphas.len() * spec.betas.len());
        for &beta in &spec.betas {
            let p_global: Vec<f64> = pairs.iter().map(|pc| global_probability(&pi.pi, beta, pc.i, pc.j)).collect();
            for &alpha in &spec.alphas {
                let value = p_true
                    .iter()
                    .zip(&p_local)
                    .zip(&p_global)
                    .map(|((&p, &pl), &pg)| generalized_kl_term(p, blended_target(pl, pg, alpha)))
                    .sum();
                rows.push(SweepRow { r: u.r, n_t: u.n_t, alpha, beta, repeat: u.repeat, value });
            }
        }
        Ok(rows)
    })
}

/// Held-out majority-vote accuracy after training on each `(alpha, beta)`.
///
/// Per unit: simulate, split pairs by `spec.train_fraction`, aggregate the
/// train split, then train once per grid cell with seed
/// `cell_seed(base, r, n_t, alpha_index, beta_index, repeat)`.
pub fn accuracy_sweep(spec: &SweepSpec, train_config: &TrainConfig) -> Result<SweepResult> {
    accuracy_sweep_resume(spec, train_config, &[])
}

pub fn accuracy_sweep_resume(spec: &SweepSpec, train_config: &TrainConfig, prior: &[SweepRow]) -> Result<SweepResult> {
    train_config.validate()?;
    run_units(spec, SweepMode::Accuracy, prior, |u| {
        let syn = spec.simulate(u)?;
        let data_seed = cell_seed(spec.base_seed, u.r, u.n_t, DATA_CELL, DATA_CELL, u.repeat as u64);
        let (train_set, test_set) = syn.dataset.split(spec.train_fraction, seeding::derive(data_seed, &[TAG_SPLIT]))?;
        let pi = spec.rank.fit(&train_set)?;
        let mut rows = Vec::with_capacity(spec.alphas.len() * spec.betas.len());
        for (bi, &beta) in spec.betas.iter().enumerate() {
            for (ai, &alpha) in spec.alphas.iter().enumerate() {
                let config = TrainConfig {
                    seed: cell_seed(spec.base_seed, u.r, u.n_t, ai as u64, bi as u64, u.repeat as u64),
                    ..*train_config
                };
                let scores = train(&train_set, &pi.pi, BlendParams::new(alpha, beta)?, &config)?;
                let value = evaluate_accuracy(&scores, &test_set)?;
                rows.push(SweepRow { r: u.r, n_t: u.n_t, alpha, beta, repeat: u.repeat, value });
            }
        }
        Ok(rows)
    })
}
