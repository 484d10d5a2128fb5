//! Generalized KL error of the blended targets over an alpha grid, for
//! several trial counts. Writes CSV tables and SVG charts.
//!
//! ```bash
//! cargo run --release --example error_sweep -- /tmp/error-sweep
//! ```

use std::path::PathBuf;

use ranksmooth::experiments::{self, linspace, SweepSpec};

fn main() -> ranksmooth::Result<()> {
    let out: PathBuf = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("error-sweep"), Into::into);
    std::fs::create_dir_all(&out)?;

    let spec = SweepSpec {
        n_items: 200,
        trials_per_pair: vec![3, 10, 100],
        alphas: linspace(0.0, 1.0, 11),
        betas: vec![0.9, 1.0],
        n_repeats: 5,
        ..SweepSpec::default()
    };
    let result = experiments::error_sweep(&spec)?;
    for o in result.optima() {
        println!(
            "n_t = {:>3}, {} = {}: best {} = {} (error {:.3})",
            o.n_t,
            o.axis.other().name(),
            o.fixed,
            o.axis.name(),
            o.best_x,
            o.best_mean
        );
    }
    experiments::write_tables(&result, &out)?;
    let charts = experiments::write_svg_charts(&result, &out)?;
    println!("wrote tables and {} charts to {}", charts.len(), out.display());
    Ok(())
}
