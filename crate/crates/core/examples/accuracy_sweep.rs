//! Held-out accuracy of trained scores over an alpha grid.
//!
//! ```bash
//! cargo run --release --example accuracy_sweep
//! ```

use ranksmooth::experiments::{accuracy_sweep, SweepSpec};
use ranksmooth::TrainConfig;

fn main() -> ranksmooth::Result<()> {
    let spec = SweepSpec {
        n_items: 200,
        pair_ratios: vec![0.3],
        trials_per_pair: vec![5],
        alphas: vec![0.0, 0.25, 0.5, 0.75, 1.0],
        betas: vec![0.95],
        n_repeats: 4,
        ..SweepSpec::default()
    };
    let result = accuracy_sweep(&spec, &TrainConfig::default())?;
    println!("alpha  mean acc  std err");
    for s in result.summaries() {
        println!("{:.2}   {:.4}    {:.4}", s.alpha, s.mean, s.std_error());
    }
    Ok(())
}
