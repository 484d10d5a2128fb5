//! Train per-item scores on the rank-smoothed loss and score a held-out
//! split by majority vote.
//!
//! ```bash
//! cargo run --release --example train_scores
//! ```

use ranksmooth::learner::{evaluate_accuracy, train_with_history};
use ranksmooth::metrics::kendall_tau;
use ranksmooth::{BlendParams, PowerLawConfig, RankCentrality, SimulationConfig, TrainConfig};

fn main() -> ranksmooth::Result<()> {
    let sim = SimulationConfig { n_items: 300, pair_ratio: 0.15, trials_per_pair: 5, seed: 3 };
    let syn = sim.generate(&PowerLawConfig::default())?;
    let (train_set, test_set) = syn.dataset.split(0.95, 1)?;
    let st = RankCentrality::default().fit(&train_set)?;

    // a larger step and more epochs than the defaults so the effect shows
    let config = TrainConfig { learning_rate: 0.05, epochs: 30, ..TrainConfig::default() };
    for alpha in [0.0, 0.5, 1.0] {
        let report = train_with_history(&train_set, &st.pi, BlendParams::new(alpha, 0.95)?, &config)?;
        let acc = evaluate_accuracy(&report.scores, &test_set)?;
        let tau = kendall_tau(report.scores.as_slice(), syn.weights.as_slice());
        println!(
            "alpha = {alpha:.1}: loss {:.2} -> {:.2}, test accuracy {acc:.3}, tau vs truth {tau:.3}",
            report.epoch_losses[0],
            report.final_loss()
        );
    }
    Ok(())
}
