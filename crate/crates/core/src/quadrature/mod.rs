//! Integration over the unit ball against `(1 - |x|²)^e dν`, normalization
//! constants `V_α`, and weighted `L^p_α` / `ℒ^∞_α` norms.
//!
//! Functions expose an analytic radial [`Profile`] `(1 - |x|²)^u (1 + L)^{-v}`
//! (with `L = log 1/(1 - |x|²)`) and a bounded remainder. The profile is folded
//! into the radial rule, so boundary singularities are integrated by the
//! weights instead of being sampled.

pub mod gauss;
pub mod ladder;
pub mod sphere;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExtExponent;
use crate::kernel::norm;
use gauss::gauss_jacobi;
pub use ladder::{radial_log_integral, Integral, Ladder, LadderConfig};
pub use sphere::{SpherePoints, SphereRule};

pub const DEFAULT_RADIAL_NODES: usize = 128;
pub const DEFAULT_CIRCLE_NODES: usize = 256;
pub const DEFAULT_AZIMUTH_NODES: usize = 64;
pub const DEFAULT_MC_SAMPLES: usize = 4096;

/// Dyadic depth of the log-graded rule used on the borderline `e = -1`.
const LOG_DEPTH: usize = 40;

/// `(1 - |x|²)^u (1 + log 1/(1 - |x|²))^{-v}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub u: f64,
    pub v: f64,
}

impl Profile {
    pub const ONE: Profile = Profile { u: 0.0, v: 0.0 };

    /// Logarithm of the profile at `s = 1 - |x|²`.
    pub fn ln_at(&self, s: f64) -> f64 {
        let mut out = 0.0;
        if self.u != 0.0 {
            out += self.u * s.ln();
        }
        if self.v != 0.0 {
            out -= self.v * (1.0 - s.ln()).ln();
        }
        out
    }

    pub fn at(&self, s: f64) -> f64 {
        self.ln_at(s).exp()
    }

    pub fn pow(&self, p: f64) -> Profile {
        Profile {
            u: p * self.u,
            v: p * self.v,
        }
    }
}

/// A function on the ball, split as `profile(|x|) · reduced(x)`.
pub trait BallFunction {
    fn eval_reduced(&self, x: &[f64]) -> f64;

    fn profile(&self) -> Profile {
        Profile::ONE
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let r = norm(x);
        self.profile().at((1.0 - r) * (1.0 + r)) * self.eval_reduced(x)
    }
}

impl<F: Fn(&[f64]) -> f64> BallFunction for F {
    fn eval_reduced(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// `|f|^p`, profile included.
struct AbsPow<'a, F: ?Sized> {
    f: &'a F,
    p: f64,
}

impl<F: BallFunction + ?Sized> BallFunction for AbsPow<'_, F> {
    fn eval_reduced(&self, x: &[f64]) -> f64 {
        self.f.eval_reduced(x).abs().powf(self.p)
    }

    fn profile(&self) -> Profile {
        self.f.profile().pow(self.p)
    }
}

/// Product rule descriptor: radial node count times a sphere rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallQuadrature {
    pub dim: usize,
    pub radial_nodes: usize,
    pub sphere_rule: SphereRule,
}

impl BallQuadrature {
    pub fn new(dim: usize) -> Result<Self> {
        let sphere_rule = match dim {
            0 | 1 => return Err(Error::Domain(format!("dimension must be >= 2, got {dim}"))),
            2 => SphereRule::Circle {
                nodes: DEFAULT_CIRCLE_NODES,
            },
            3 => SphereRule::Product {
                polar: DEFAULT_AZIMUTH_NODES / 2,
                azimuth: DEFAULT_AZIMUTH_NODES,
            },
            _ => SphereRule::MonteCarlo {
                samples: DEFAULT_MC_SAMPLES,
                seed: 0,
            },
        };
        Ok(Self {
            dim,
            radial_nodes: DEFAULT_RADIAL_NODES,
            sphere_rule,
        })
    }

    pub fn with_radial_nodes(mut self, nodes: usize) -> Self {
        self.radial_nodes = nodes.max(2);
        self
    }

    /// Circle nodes for `n = 2`, azimuths (with half as many polar nodes) for
    /// `n = 3`, samples for `n >= 4`.
    pub fn with_sphere_nodes(mut self, nodes: usize) -> Self {
        let nodes = nodes.max(2);
        self.sphere_rule = match self.sphere_rule {
            SphereRule::Circle { .. } => SphereRule::Circle { nodes },
            SphereRule::Product { .. } => SphereRule::Product {
                polar: (nodes / 2).max(1),
                azimuth: nodes,
            },
            SphereRule::MonteCarlo { seed, .. } => SphereRule::MonteCarlo { samples: nodes, seed },
        };
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        if let SphereRule::MonteCarlo { samples, .. } = self.sphere_rule {
            self.sphere_rule = SphereRule::MonteCarlo { samples, seed };
        }
        self
    }

    /// Same rule with twice the radial nodes.
    pub fn refined(&self) -> Self {
        self.with_radial_nodes(2 * self.radial_nodes)
    }

    pub fn sphere_points(&self) -> SpherePoints {
        SpherePoints::build(self.dim, self.sphere_rule)
    }
}

/// Radial nodes `r_i ∈ (0, 1]`, with `s_i = 1 - r_i²` kept separately for
/// accuracy, and weights `W_i` such that
/// `Σ W_i g(r_i) ≈ n ∫_0^1 r^{n-1} (1 - r²)^e (1 + L)^{-v} g(r) dr`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialRule {
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub weights: Vec<f64>,
    pub exponent: f64,
}

/// `e` within this distance of `-1` is treated as the borderline.
const BORDER_EPS: f64 = 1e-12;

impl RadialRule {
    pub fn new(dim: usize, e: f64, v: f64, nodes: usize) -> Result<Self> {
        let half = dim as f64 / 2.0;
        if e > -1.0 + BORDER_EPS {
            // u = r², weight u^{n/2-1} (1-u)^e
            let gj = gauss_jacobi(nodes, half - 1.0, e);
            let mut out = Self::with_capacity(nodes, e);
            for (u, w) in gj.nodes.iter().zip(&gj.weights) {
                let s = 1.0 - u;
                let log_factor = if v == 0.0 { 1.0 } else { (1.0 - s.ln()).powf(-v) };
                out.push(u.sqrt(), s, half * w * log_factor);
            }
            return Ok(out);
        }
        if (e + 1.0).abs() <= BORDER_EPS && v > 1.0 {
            return Ok(Self::log_graded(half, v, nodes));
        }
        Err(Error::Divergent)
    }

    /// `e = -1`, `v > 1`: in `w = L` the measure is
    /// `(n/2) (1 - e^{-w})^{n/2-1} (1 + w)^{-v} dw` on `[0, ∞)`.
    fn log_graded(half: f64, v: f64, nodes: usize) -> Self {
        let cfg = LadderConfig {
            depth: LOG_DEPTH,
            panel_nodes: (nodes / 8).max(4),
            ..LadderConfig::default()
        };
        let a = half - 1.0;
        let mut out = Self::with_capacity(nodes * 6, -1.0);
        for (j, panel) in ladder::panels(a, &cfg).into_iter().enumerate() {
            for (w, wt) in panel {
                let shape = if j == 0 {
                    a * ladder::ln_one_minus_exp_over(w)
                } else {
                    a * (-(-w).exp_m1()).ln()
                };
                let weight = half * wt * (shape - v * w.ln_1p()).exp();
                out.push((-(-w).exp_m1()).sqrt(), (-w).exp(), weight);
            }
        }
        let end = (LOG_DEPTH as f64).exp2();
        out.push(1.0, 0.0, half * (1.0 + end).powf(1.0 - v) / (v - 1.0));
        out
    }

    fn with_capacity(n: usize, exponent: f64) -> Self {
        Self {
            r: Vec::with_capacity(n),
            s: Vec::with_capacity(n),
            weights: Vec::with_capacity(n),
            exponent,
        }
    }

    fn push(&mut self, r: f64, s: f64, w: f64) {
        self.r.push(r);
        self.s.push(s);
        self.weights.push(w);
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }
}

/// Quadrature value with a standard error (zero for deterministic rules).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// `∫_B f(x) (1 - |x|²)^{weight_exponent} dν(x)`.
///
/// Fails with [`Error::Divergent`] when the combined radial exponent
/// `weight_exponent + u` of `f`'s profile is not integrable, and with
/// [`Error::NonFinite`] when a node value is not finite.
pub fn integrate_ball<F: BallFunction + ?Sized>(
    f: &F,
    weight_exponent: f64,
    rule: &BallQuadrature,
) -> Result<Estimate> {
    let prof = f.profile();
    let radial = RadialRule::new(rule.dim, weight_exponent + prof.u, prof.v, rule.radial_nodes)?;
    let sphere = rule.sphere_points();
    integrate_with(f, &radial, &sphere, rule.sphere_rule.is_stochastic())
}

pub(crate) fn integrate_with<F: BallFunction + ?Sized>(
    f: &F,
    radial: &RadialRule,
    sphere: &SpherePoints,
    stochastic: bool,
) -> Result<Estimate> {
    let dim = sphere.dim;
    let mut x = vec![0.0; dim];
    let mut shell_sums = Vec::with_capacity(sphere.len());
    for j in 0..sphere.len() {
        let zeta = sphere.point(j);
        let mut acc = 0.0;
        for (r, w) in radial.r.iter().zip(&radial.weights) {
            for (xi, zi) in x.iter_mut().zip(zeta) {
                *xi = r * zi;
            }
            acc += w * f.eval_reduced(&x);
        }
        if !acc.is_finite() {
            return Err(Error::NonFinite);
        }
        shell_sums.push(acc);
    }
    let value: f64 = shell_sums.iter().zip(&sphere.weights).map(|(g, w)| g * w).sum();
    let std_error = if stochastic && shell_sums.len() > 1 {
        let m = shell_sums.len() as f64;
        let var = shell_sums.iter().map(|g| (g - value).powi(2)).sum::<f64>() / (m - 1.0);
        (var / m).sqrt()
    } else {
        0.0
    };
    Ok(Estimate { value, std_error })
}

/// `V_α = Γ(n/2 + 1) Γ(α + 1) / Γ(n/2 + α + 1)`, the mass of
/// `(1 - |x|²)^α dν`.
#[allow(non_snake_case)]
pub fn normalization_V(alpha: f64, dim: usize) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("V_alpha needs alpha > -1, got {alpha}")));
    }
    let half = dim as f64 / 2.0;
    Ok((libm::lgamma(half + 1.0) + libm::lgamma(alpha + 1.0) - libm::lgamma(half + alpha + 1.0)).exp())
}

/// `dν_α = (1 - |x|²)^α dν / V_α`, with `V_α = 1` for `α <= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedMeasure {
    pub alpha: f64,
    pub dim: usize,
    #[serde(rename = "V")]
    pub v: f64,
}

impl WeightedMeasure {
    pub fn new(alpha: f64, dim: usize) -> Self {
        let v = if alpha > -1.0 {
            normalization_V(alpha, dim).unwrap_or(1.0)
        } else {
            1.0
        };
        Self { alpha, dim, v }
    }
}

/// Radii for grid suprema: the centre, a uniform grid and a dyadic approach
/// to the sphere.
pub fn sup_grid_radii(nodes: usize) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = (0..nodes)
        .map(|i| {
            let r = i as f64 / nodes as f64;
            (r, (1.0 - r) * (1.0 + r))
        })
        .collect();
    for j in 1..=52 {
        let d = (-(j as f64)).exp2();
        let r = 1.0 - d;
        if r > (nodes - 1) as f64 / nodes as f64 {
            out.push((r, d * (2.0 - d)));
        }
    }
    out
}

/// Grid supremum of `(1 - |x|²)^weight |f(x)|` (a lower estimate of the true
/// supremum).
pub fn grid_sup<F: BallFunction + ?Sized>(f: &F, weight: f64, rule: &BallQuadrature) -> Result<f64> {
    let prof = f.profile();
    let total = Profile {
        u: prof.u + weight,
        v: prof.v,
    };
    let sphere = rule.sphere_points();
    let mut x = vec![0.0; rule.dim];
    let mut best: f64 = 0.0;
    for (r, s) in sup_grid_radii(rule.radial_nodes) {
        let lp = total.ln_at(s);
        for j in 0..sphere.len() {
            for (xi, zi) in x.iter_mut().zip(sphere.point(j)) {
                *xi = r * zi;
            }
            let val = lp.exp() * f.eval_reduced(&x).abs();
            if val.is_nan() {
                return Err(Error::NonFinite);
            }
            best = best.max(val);
            if r == 0.0 {
                break;
            }
        }
    }
    Ok(best)
}

/// `‖f‖_{L^p_α}` for `p < ∞` (requires `α > -1`), or the grid estimate of
/// `‖f‖_{ℒ^∞_α}` for `p = ∞`.
pub fn lp_norm<F: BallFunction + ?Sized>(
    f: &F,
    p: ExtExponent,
    alpha: f64,
    rule: &BallQuadrature,
) -> Result<f64> {
    match p {
        ExtExponent::Infinite => grid_sup(f, alpha, rule),
        ExtExponent::Finite(p) => {
            let v = normalization_V(alpha, rule.dim)?;
            let est = integrate_ball(&AbsPow { f, p }, alpha, rule)?;
            Ok((est.value / v).powf(1.0 / p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::zonal_harmonic;

    struct Fuv(f64, f64);

    impl BallFunction for Fuv {
        fn eval_reduced(&self, _: &[f64]) -> f64 {
            1.0
        }
        fn profile(&self) -> Profile {
            Profile { u: self.0, v: self.1 }
        }
    }

    fn one(_: &[f64]) -> f64 {
        1.0
    }

    #[test]
    fn normalization_examples() {
        assert!((normalization_V(0.0, 5).unwrap() - 1.0).abs() < 1e-15);
        assert!((normalization_V(1.0, 2).unwrap() - 0.5).abs() < 1e-15);
        // mpmath oracle: Γ(5/2)Γ(3)/Γ(9/2)
        assert!((normalization_V(2.0, 3).unwrap() - 0.228571428571428571).abs() < 1e-15);
        assert!((normalization_V(-0.5, 2).unwrap() - 2.0).abs() < 1e-14);
        assert!(normalization_V(-1.0, 2).is_err());
        assert_eq!(WeightedMeasure::new(-3.0, 4).v, 1.0);
    }

    #[test]
    fn normalization_matches_numeric_integration() {
        for dim in [2usize, 3, 4, 7] {
            for alpha in [-0.9, -0.5, 0.0, 1.0, 2.0, 6.5] {
                let rule = BallQuadrature::new(dim).unwrap().with_sphere_nodes(8);
                let got = integrate_ball(&one, alpha, &rule).unwrap().value;
                let want = normalization_V(alpha, dim).unwrap();
                assert!((got - want).abs() < 1e-11 * want, "dim={dim} alpha={alpha} {got} {want}");
            }
        }
    }

    #[test]
    fn odd_harmonic_integrates_to_zero() {
        let y0 = [0.3, -0.4];
        let f = |x: &[f64]| zonal_harmonic(1, x, &y0, 2);
        let rule = BallQuadrature::new(2).unwrap();
        assert!(integrate_ball(&f, 0.0, &rule).unwrap().value.abs() < 1e-14);
        let y1 = [0.1, 0.2, 0.5];
        let g = |x: &[f64]| zonal_harmonic(1, x, &y1, 3);
        let rule = BallQuadrature::new(3).unwrap();
        assert!(integrate_ball(&g, 1.5, &rule).unwrap().value.abs() < 1e-14);
    }

    #[test]
    fn polar_coordinates_consistency() {
        // radial f(x) = cos(3|x|) against a 1-D Gauss-Legendre oracle of
        // n ∫ r^{n-1} f(r) dr
        let f = |x: &[f64]| (3.0 * norm(x)).cos();
        let oracle_rule = gauss::gauss_legendre(200);
        for dim in [2usize, 3, 5] {
            let n = dim as f64;
            let want = oracle_rule.integrate(|r| n * r.powf(n - 1.0) * (3.0 * r).cos());
            let rule = BallQuadrature::new(dim).unwrap().with_sphere_nodes(16);
            let got = integrate_ball(&f, 0.0, &rule).unwrap().value;
            assert!((got - want).abs() < 1e-10, "dim={dim}: {got} vs {want}");
        }
    }

    #[test]
    fn profile_is_folded_into_weights() {
        // f_{u0} with α + u > -1: ∫ f dν_α = V_{α+u}/V_α
        let rule = BallQuadrature::new(3).unwrap().with_sphere_nodes(4);
        let got = integrate_ball(&Fuv(-0.95, 0.0), 0.0, &rule).unwrap().value;
        let want = normalization_V(-0.95, 3).unwrap();
        assert!((got - want).abs() < 1e-11 * want);
        // borderline e = -1, v = 2: n/2 ∫ (1-e^{-w})^{n/2-1} (1+w)^{-2} dw, which is 1 for n = 2
        let rule = BallQuadrature::new(2).unwrap().with_sphere_nodes(4);
        let got = integrate_ball(&Fuv(-1.0, 2.0), 0.0, &rule).unwrap().value;
        assert!((got - 1.0).abs() < 1e-10, "{got}");
        assert_eq!(integrate_ball(&Fuv(-1.0, 1.0), 0.0, &rule), Err(Error::Divergent));
        assert_eq!(integrate_ball(&Fuv(-0.5, 0.0), -0.6, &rule), Err(Error::Divergent));
    }

    #[test]
    fn lp_norm_examples() {
        for dim in [2usize, 3, 5] {
            let rule = BallQuadrature::new(dim).unwrap().with_sphere_nodes(8);
            for p in [1.0, 2.0, 3.7] {
                for alpha in [-0.5, 0.0, 2.0] {
                    let v = lp_norm(&one, ExtExponent::Finite(p), alpha, &rule).unwrap();
                    assert!((v - 1.0).abs() < 1e-12);
                }
            }
            let s = lp_norm(&one, ExtExponent::Infinite, 0.0, &rule).unwrap();
            assert_eq!(s, 1.0);
        }
        let rule = BallQuadrature::new(2).unwrap();
        // α + pu = -1 with pv <= 1 is outside L^p_α
        assert_eq!(
            lp_norm(&Fuv(-0.5, 0.5), ExtExponent::Finite(2.0), 0.0, &rule),
            Err(Error::Divergent)
        );
        // ‖f_{-1/2,1}‖_{L^2}^2 = ∫_0^∞ (1+w)^{-2} dw = 1 in the plane
        let v = lp_norm(&Fuv(-0.5, 1.0), ExtExponent::Finite(2.0), 0.0, &rule).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn monte_carlo_error_shrinks() {
        let f = |x: &[f64]| (2.0 * x[0]).exp() + x[1] * x[2];
        let base = BallQuadrature::new(5).unwrap().with_radial_nodes(16);
        let small = integrate_ball(&f, 0.0, &base.with_sphere_nodes(1000)).unwrap();
        let large = integrate_ball(&f, 0.0, &base.with_sphere_nodes(16000)).unwrap();
        let ratio = small.std_error / large.std_error;
        assert!(ratio > 3.0 && ratio < 5.3, "ratio {ratio}");
        let again = integrate_ball(&f, 0.0, &base.with_sphere_nodes(1000)).unwrap();
        assert_eq!(small, again);
    }
}
