mod support;

use rand::Rng;
use ranksmooth::learner::{evaluate_accuracy, train_with_history};
use ranksmooth::{BlendParams, PowerLawConfig, RankCentrality, ScoreTable, SimulationConfig, TrainConfig};
use support::rng;

fn synthetic(n: usize, ratio: f64, n_t: u64, seed: u64) -> ranksmooth::ComparisonDataset {
    SimulationConfig { n_items: n, pair_ratio: ratio, trials_per_pair: n_t, seed }
        .generate(&PowerLawConfig::default())
        .unwrap()
        .dataset
}

#[test]
fn default_training_loss_never_increases() {
    for seed in 0..10 {
        let d = synthetic(100, 0.15, 5, seed);
        let st = RankCentrality::default().fit(&d).unwrap();
        let config = TrainConfig { seed, ..TrainConfig::default() };
        let report = train_with_history(&d, &st.pi, BlendParams::new(0.5, 0.95).unwrap(), &config).unwrap();
        assert_eq!(report.epoch_losses.len(), config.epochs + 1);
        for w in report.epoch_losses.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12), "seed {seed}: {:?}", report.epoch_losses);
        }
        assert!(report.final_loss() < report.epoch_losses[0]);
    }
}

#[test]
fn random_scores_score_near_one_half() {
    for seed in 0..10 {
        let d = synthetic(200, 0.3, 5, 100 + seed);
        let mut r = rng(seed);
        let scores = ScoreTable::from_vec((0..d.n_items()).map(|_| r.random::<f64>()).collect()).unwrap();
        let decided = d.pairs().iter().filter(|pc| pc.wins_i != pc.wins_j).count();
        let acc = evaluate_accuracy(&scores, &d).unwrap();
        let band = 4.0 / (2.0 * decided as f64).sqrt();
        assert!((acc - 0.5).abs() <= band, "seed {seed}: {acc} outside 0.5 +- {band}");
    }
}

#[test]
fn trained_scores_beat_chance_on_held_out_pairs() {
    let d = synthetic(200, 0.3, 10, 8);
    let (train, test) = d.split(0.9, 2).unwrap();
    let st = RankCentrality::default().fit(&train).unwrap();
    let config = TrainConfig { learning_rate: 0.05, epochs: 30, ..TrainConfig::default() };
    for alpha in [0.0, 0.5, 1.0] {
        let report = train_with_history(&train, &st.pi, BlendParams::new(alpha, 1.0).unwrap(), &config).unwrap();
        let acc = evaluate_accuracy(&report.scores, &test).unwrap();
        assert!(acc > 0.6, "alpha {alpha}: {acc}");
    }
}

#[test]
fn same_seed_same_scores() {
    let d = synthetic(80, 0.3, 5, 4);
    let st = RankCentrality::default().fit(&d).unwrap();
    let params = BlendParams::new(0.3, 0.9).unwrap();
    let a = train_with_history(&d, &st.pi, params, &TrainConfig { seed: 5, ..TrainConfig::default() }).unwrap();
    let b = train_with_history(&d, &st.pi, params, &TrainConfig { seed: 5, ..TrainConfig::default() }).unwrap();
    let c = train_with_history(&d, &st.pi, params, &TrainConfig { seed: 6, ..TrainConfig::default() }).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.scores, c.scores);
}
