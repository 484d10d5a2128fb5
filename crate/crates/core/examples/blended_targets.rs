//! Local and global probabilities, their blend, and the combined loss.
//!
//! ```bash
//! cargo run --example blended_targets
//! ```

use ranksmooth::learner::batch_gradient;
use ranksmooth::loss::{combined_loss, pair_targets, pairwise_loss};
use ranksmooth::{BlendParams, DatasetBuilder, RankCentrality};

fn main() -> ranksmooth::Result<()> {
    let mut b = DatasetBuilder::new();
    b.add_labeled("a", "b", 2, 0)?;
    b.add_labeled("b", "c", 3, 2)?;
    b.add_labeled("a", "c", 4, 1)?;
    b.add_labeled("c", "d", 1, 1)?;
    b.add_labeled("b", "d", 2, 1)?;
    let data = b.build()?;
    // a beat b twice and was never beaten: smooth so the chain stays irreducible
    let st = RankCentrality { laplace: 0.25, ..RankCentrality::default() }.fit(&data)?;

    let params = BlendParams::new(0.5, 0.95)?;
    let targets = pair_targets(&data, &st.pi, params);
    println!("pair      p_local  p_global  q*");
    for t in &targets {
        println!(
            "{} > {}     {:.3}    {:.3}     {:.3}",
            data.label(t.i),
            data.label(t.j),
            t.p_local,
            t.p_global,
            t.q_star
        );
    }

    let scores = vec![0.0; data.n_items()];
    println!("loss at zero scores, alpha = 0.5: {:.4}", combined_loss(&data, &targets, &scores, 0.5)?);
    println!("plain pairwise loss:             {:.4}", pairwise_loss(&data, &scores)?);
    println!("gradient at zero scores: {:?}", batch_gradient(&targets, &scores));
    Ok(())
}
