//! Simulate BTL comparisons and check how well Rank Centrality recovers
//! the hidden weights.
//!
//! ```bash
//! cargo run --release --example synthetic_comparisons
//! ```

use ranksmooth::metrics::{kendall_tau, max_abs_diff};
use ranksmooth::{PowerLawConfig, RankCentrality, SimulationConfig};

fn main() -> ranksmooth::Result<()> {
    let power = PowerLawConfig::default();
    for trials in [3, 20, 200] {
        let sim = SimulationConfig { n_items: 200, pair_ratio: 0.15, trials_per_pair: trials, seed: 11 };
        let syn = sim.generate(&power)?;
        let st = RankCentrality::default().fit(&syn.dataset)?;
        let truth = syn.weights.normalized();
        println!(
            "n_t = {trials:>3}: {} pairs, max |pi - w| = {:.2e}, kendall tau = {:.3}",
            syn.dataset.n_pairs(),
            max_abs_diff(&st.pi, &truth),
            kendall_tau(&st.pi, &truth)
        );
    }
    Ok(())
}
