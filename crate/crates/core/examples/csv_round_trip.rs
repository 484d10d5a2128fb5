//! Save a dataset, load it back and write it again.
//!
//! ```bash
//! cargo run --example csv_round_trip
//! ```

use ranksmooth::{ComparisonDataset, PowerLawConfig, SimulationConfig};

fn main() -> ranksmooth::Result<()> {
    let dir = tempfile::tempdir()?;
    let syn = SimulationConfig { n_items: 30, pair_ratio: 0.4, trials_per_pair: 7, seed: 5 }
        .generate(&PowerLawConfig::default())?;
    let first = dir.path().join("a.csv");
    syn.dataset.save(&first)?;
    syn.weights.save(&dir.path().join("a.weights.csv"), syn.dataset.labels())?;

    let loaded = ComparisonDataset::load(&first)?;
    let second = dir.path().join("b.csv");
    loaded.save(&second)?;
    let same = std::fs::read(&first)? == std::fs::read(&second)?;
    println!("{} pairs, identical after reload: {same}", loaded.n_pairs());
    print!("{}", std::fs::read_to_string(&first)?.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}
