//! Rules for the normalized surface measure `σ` on the unit sphere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::gauss::gauss_legendre;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SphereRule {
    /// Equally spaced points on the circle.
    Circle { nodes: usize },
    /// Gauss-Legendre in `cos φ` times equally spaced azimuths on `S^2`.
    Product { polar: usize, azimuth: usize },
    /// Normalized Gaussian vectors.
    MonteCarlo { samples: usize, seed: u64 },
}

impl SphereRule {
    /// Highest degree of spherical polynomials integrated exactly, `None` for
    /// Monte Carlo.
    pub fn exact_degree(&self) -> Option<usize> {
        match *self {
            SphereRule::Circle { nodes } => Some(nodes - 1),
            SphereRule::Product { polar, azimuth } => Some((2 * polar - 1).min(azimuth - 1)),
            SphereRule::MonteCarlo { .. } => None,
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, SphereRule::MonteCarlo { .. })
    }
}

/// Materialized sphere rule: `dim`-vectors stored row-major.
#[derive(Debug, Clone)]
pub struct SpherePoints {
    pub dim: usize,
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SpherePoints {
    pub fn build(dim: usize, rule: SphereRule) -> Self {
        match rule {
            SphereRule::Circle { nodes } => {
                assert_eq!(dim, 2, "circle rule is for n = 2");
                let mut points = Vec::with_capacity(2 * nodes);
                for j in 0..nodes {
                    let theta = std::f64::consts::TAU * j as f64 / nodes as f64;
                    points.extend([theta.cos(), theta.sin()]);
                }
                Self {
                    dim,
                    points,
                    weights: vec![1.0 / nodes as f64; nodes],
                }
            }
            SphereRule::Product { polar, azimuth } => {
                assert_eq!(dim, 3, "product rule is for n = 3");
                let gl = gauss_legendre(polar);
                let mut points = Vec::with_capacity(3 * polar * azimuth);
                let mut weights = Vec::with_capacity(polar * azimuth);
                for (z, wz) in gl.mapped(-1.0, 1.0) {
                    let s = (1.0 - z * z).max(0.0).sqrt();
                    for j in 0..azimuth {
                        let phi = std::f64::consts::TAU * j as f64 / azimuth as f64;
                        points.extend([s * phi.cos(), s * phi.sin(), z]);
                        weights.push(wz / 2.0 / azimuth as f64);
                    }
                }
                Self { dim, points, weights }
            }
            SphereRule::MonteCarlo { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut points = Vec::with_capacity(dim * samples);
                let mut v = vec![0.0; dim];
                for _ in 0..samples {
                    loop {
                        for c in v.iter_mut() {
                            *c = StandardNormal.sample(&mut rng);
                        }
                        let r = crate::kernel::norm(&v);
                        if r > 1e-12 {
                            points.extend(v.iter().map(|c| c / r));
                            break;
                        }
                    }
                }
                Self {
                    dim,
                    points,
                    weights: vec![1.0 / samples as f64; samples],
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.points[j * self.dim..(j + 1) * self.dim]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_trig_exactness() {
        let pts = SpherePoints::build(2, SphereRule::Circle { nodes: 64 });
        for k in 1..64 {
            let (mut c, mut s) = (0.0, 0.0);
            for j in 0..pts.len() {
                let p = pts.point(j);
                let th = p[1].atan2(p[0]);
                c += pts.weights[j] * (k as f64 * th).cos();
                s += pts.weights[j] * (k as f64 * th).sin();
            }
            assert!(c.abs() < 1e-13 && s.abs() < 1e-13, "k={k}");
        }
        let total: f64 = pts.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn product_rule_moments() {
        let pts = SpherePoints::build(3, SphereRule::Product { polar: 8, azimuth: 16 });
        // ∫ z^2 dσ = 1/3, ∫ x^2 y^2 dσ = 1/15
        let (mut z2, mut x2y2) = (0.0, 0.0);
        for j in 0..pts.len() {
            let p = pts.point(j);
            z2 += pts.weights[j] * p[2] * p[2];
            x2y2 += pts.weights[j] * p[0] * p[0] * p[1] * p[1];
        }
        assert!((z2 - 1.0 / 3.0).abs() < 1e-14);
        assert!((x2y2 - 1.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn monte_carlo_unit_vectors_deterministic() {
        let a = SpherePoints::build(5, SphereRule::MonteCarlo { samples: 100, seed: 7 });
        let b = SpherePoints::build(5, SphereRule::MonteCarlo { samples: 100, seed: 7 });
        assert_eq!(a.points, b.points);
        for j in 0..a.len() {
            assert!((crate::kernel::norm(a.point(j)) - 1.0).abs() < 1e-14);
        }
    }
}
