//! Rank-smoothed learning from pairwise comparisons.
//!
//! Pairwise preference counts are aggregated into a global ranking with
//! Rank Centrality, the resulting rank-derived probabilities are blended
//! with the empirical ones into a smoothed cross-entropy target, and
//! per-item scores are trained on that target. Synthetic BTL data and a
//! sweep harness make the effect of the blend weight `alpha` and the
//! smoothing exponent `beta` measurable.
//!
//! ```
//! use ranksmooth::{BlendParams, ComparisonDataset, DatasetBuilder, RankCentrality};
//!
//! let mut b = DatasetBuilder::new();
//! b.add_labeled("a", "b", 3, 1)?;
//! b.add_labeled("b", "c", 2, 2)?;
//! b.add_labeled("a", "c", 4, 1)?;
//! let data: ComparisonDataset = b.build()?;
//!
//! let pi = RankCentrality::default().fit(&data)?;
//! assert_eq!(pi.ranking()[0], data.index_of("a").unwrap());
//!
//! let params = BlendParams::new(0.5, 0.95)?;
//! let targets = ranksmooth::loss::pair_targets(&data, &pi.pi, params);
//! assert_eq!(targets.len(), 3);
//! # Ok::<(), ranksmooth::Error>(())
//! ```

pub mod btl;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod experiments;
mod graph;
pub mod io;
pub mod learner;
pub mod loss;
pub mod metrics;
pub mod rank_centrality;
pub mod seeding;

pub use btl::{BtlWeights, PowerLawConfig, SimulationConfig};
pub use dataset::{ComparisonDataset, DatasetBuilder, Majority, PairCounts};
pub use error::{Error, Result};
pub use learner::{ScoreTable, TrainConfig};
pub use loss::{BlendParams, PairTarget};
pub use rank_centrality::{RankCentrality, StationaryDistribution, TransitionMatrix};
