//! Rank a handful of items from raw win counts.
//!
//! ```bash
//! cargo run --example aggregate_rankings
//! ```

use ranksmooth::{DatasetBuilder, RankCentrality};

fn main() -> ranksmooth::Result<()> {
    let mut b = DatasetBuilder::new();
    b.add_labeled("sunset", "portrait", 7, 3)?;
    b.add_labeled("portrait", "receipt", 9, 1)?;
    b.add_labeled("sunset", "receipt", 8, 2)?;
    b.add_labeled("sunset", "blurry", 10, 2)?;
    b.add_labeled("blurry", "receipt", 4, 6)?;
    let data = b.build()?;

    let st = RankCentrality::default().fit(&data)?;
    println!("converged in {} iterations (L1 change {:.1e})", st.iterations, st.residual);
    for (rank, &k) in st.ranking().iter().enumerate() {
        println!("{:>2}. {:<10} pi = {:.4}", rank + 1, data.label(k), st.pi[k]);
    }

    // pairwise preferences implied by the ranking, sharpened and flattened
    let (a, b) = (data.index_of("sunset").unwrap(), data.index_of("portrait").unwrap());
    for beta in [0.0, 0.5, 1.0, 2.0] {
        println!("P(sunset > portrait | beta = {beta}) = {:.4}", st.global_probability(beta, a, b));
    }
    Ok(())
}
