//! Ranking agreement.

/// Kendall rank correlation (tau-a) between two score vectors.
///
/// Pairs tied in either vector count as neither concordant nor discordant.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "score vectors differ in length");
    let n = a.len();
    if n < 2 {
        return 1.0;
    }
    let mut score = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let x = (a[i] - a[j]).signum() * (b[i] - b[j]).signum();
            if a[i] != a[j] && b[i] != b[j] {
                score += x as i64;
            }
        }
    }
    score as f64 / (n * (n - 1) / 2) as f64
}

/// Largest absolute elementwise difference.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
