//! Unanimous votes can make the Rank Centrality chain reducible. A small
//! pseudo-count on every compared pair restores irreducibility.
//!
//! ```bash
//! cargo run --example connectivity
//! ```

use ranksmooth::{DatasetBuilder, Error, RankCentrality};

fn main() -> ranksmooth::Result<()> {
    let mut b = DatasetBuilder::new();
    b.add_labeled("a", "b", 5, 0)?;
    b.add_labeled("b", "c", 3, 2)?;
    b.add_labeled("c", "d", 0, 4)?;
    let data = b.build()?;

    let report = data.connectivity_report();
    println!("components without smoothing: {:?}", report.components);

    match RankCentrality::default().fit(&data) {
        Err(Error::Reducible { count, sizes, heads }) => {
            println!("reducible: {count} components, sizes {sizes:?}, led by {heads:?}");
        }
        other => println!("unexpected: {other:?}"),
    }

    let smoothed = RankCentrality { laplace: 0.5, ..RankCentrality::default() };
    println!("with laplace 0.5: {:?}", data.connectivity_with_laplace(0.5).components);
    let st = smoothed.fit(&data)?;
    for k in st.ranking() {
        println!("  {} {:.4}", data.label(k), st.pi[k]);
    }
    Ok(())
}
