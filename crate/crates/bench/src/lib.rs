//! Fixed inputs shared by the benchmarks.

use besov_core::{ExtExponent, OperatorParams};

/// Deterministic pseudo-random points strictly inside the ball of radius `radius`.
pub fn points(dim: usize, count: usize, radius: f64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| {
            let v: Vec<f64> = (0..dim)
                .map(|j| ((i * 7 + j * 13 + 1) as f64 * 0.618_033_988_749_895).fract() - 0.5)
                .collect();
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-12);
            let s = radius * ((i + 1) as f64 / count as f64);
            v.into_iter().map(|c| c * s / n).collect()
        })
        .collect()
}

/// A grid of classifier inputs covering every source exponent regime.
pub fn classifier_grid() -> Vec<OperatorParams> {
    let ps = [ExtExponent::Finite(1.0), ExtExponent::Finite(2.5), ExtExponent::Infinite];
    let mut out = Vec::new();
    for &p in &ps {
        for i in 0..10 {
            for j in 0..10 {
                out.push(OperatorParams {
                    b: -1.0 + 0.3 * i as f64,
                    c: -2.0 + 0.4 * j as f64,
                    alpha: 0.5,
                    beta: 0.25,
                    p,
                    q: ExtExponent::Finite(2.0),
                    dim: 3,
                });
            }
        }
    }
    out
}
