//! Bergman-Besov coefficients, zonal harmonics and the kernel `R_α(x, y)`.
//!
//! The kernel is summed as `Σ γ_k(α) Z_k(x, y)` and truncated at the first
//! degree whose certified tail bound falls below the requested tolerance.
//! The bound uses `|Z_k(x, y)| <= h_k (|x||y|)^k`, where `h_k` is the dimension
//! of the space of degree-`k` spherical harmonics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{ln_pochhammer, GegenbauerSeq};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Hard cap on the number of series terms a single evaluation may use.
const MAX_TERMS: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub alpha: f64,
    pub dim: usize,
    pub tol: f64,
}

impl KernelSpec {
    pub fn new(alpha: f64, dim: usize) -> Result<Self> {
        Self::with_tol(alpha, dim, DEFAULT_TOL)
    }

    pub fn with_tol(alpha: f64, dim: usize, tol: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain(format!("dimension must be >= 2, got {dim}")));
        }
        if !(tol > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("bad kernel spec alpha={alpha} tol={tol}")));
        }
        Ok(Self { alpha, dim, tol })
    }
}

/// Which of the two closed forms of `γ_k(α)` applies.
fn upper_branch(alpha: f64, dim: usize) -> bool {
    alpha > -(1.0 + dim as f64 / 2.0)
}

/// `γ_k(α)` for the harmonic Bergman-Besov kernel in dimension `dim`.
pub fn gamma_coef(k: usize, alpha: f64, dim: usize) -> f64 {
    let half = dim as f64 / 2.0;
    let kf = k as f64;
    let ln = if upper_branch(alpha, dim) {
        ln_pochhammer(1.0 + half + alpha, kf).map(|s| s.ln_abs).unwrap_or(f64::NAN)
            - ln_pochhammer(half, kf).map(|s| s.ln_abs).unwrap_or(f64::NAN)
    } else {
        2.0 * libm::lgamma(kf + 1.0)
            - ln_pochhammer(1.0 - (half + alpha), kf).map(|s| s.ln_abs).unwrap_or(f64::NAN)
            - ln_pochhammer(half, kf).map(|s| s.ln_abs).unwrap_or(f64::NAN)
    };
    ln.exp()
}

/// Successive `γ_k(α)` by the ratio recurrence.
#[derive(Debug, Clone)]
pub struct GammaSeq {
    upper: bool,
    shift: f64,
    half: f64,
    k: usize,
    cur: f64,
}

impl GammaSeq {
    pub fn new(alpha: f64, dim: usize) -> Self {
        let half = dim as f64 / 2.0;
        let upper = upper_branch(alpha, dim);
        let shift = if upper { 1.0 + half + alpha } else { 1.0 - half - alpha };
        Self {
            upper,
            shift,
            half,
            k: 0,
            cur: 1.0,
        }
    }

    /// `γ_{k+1}/γ_k` for the current `k`.
    fn ratio(&self) -> f64 {
        let k = self.k as f64;
        if self.upper {
            (self.shift + k) / (self.half + k)
        } else {
            (k + 1.0) * (k + 1.0) / ((self.shift + k) * (self.half + k))
        }
    }
}

impl Iterator for GammaSeq {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        self.cur *= self.ratio();
        self.k += 1;
        Some(out)
    }
}

/// Dimension of the space of degree-`k` spherical harmonics on `S^{n-1}`,
/// which equals `Z_k(ζ, ζ)`.
pub fn harmonic_dimension(k: usize, dim: usize) -> f64 {
    match (k, dim) {
        (0, _) => 1.0,
        (_, 2) => 2.0,
        _ => {
            let n = dim as f64;
            let kf = k as f64;
            // (n+2k-2)/(n-2) * C(k+n-3, k)
            let ln_binom = libm::lgamma(kf + n - 2.0) - libm::lgamma(kf + 1.0) - libm::lgamma(n - 2.0);
            (n + 2.0 * kf - 2.0) / (n - 2.0) * ln_binom.exp()
        }
    }
}

/// `h_{k+1}/h_k`.
fn harmonic_dimension_ratio(k: usize, dim: usize) -> f64 {
    if k == 0 {
        return dim as f64;
    }
    if dim == 2 {
        return 1.0;
    }
    let n = dim as f64;
    let kf = k as f64;
    (n + 2.0 * kf) / (n + 2.0 * kf - 2.0) * (kf + n - 2.0) / (kf + 1.0)
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Cosine of the angle between `x` and `y`, 1 when either vanishes.
pub(crate) fn cos_angle(x: &[f64], y: &[f64]) -> f64 {
    let (nx, ny) = (norm(x), norm(y));
    if nx == 0.0 || ny == 0.0 {
        return 1.0;
    }
    (dot(x, y) / (nx * ny)).clamp(-1.0, 1.0)
}

/// Angular part of `Z_k` evaluated along `k = 0, 1, 2, ...` at `t = cos θ`:
/// `2 T_k(t)` in the plane, `(n+2k-2)/(n-2) C_k^{(n-2)/2}(t)` otherwise.
#[derive(Debug, Clone)]
pub enum ZonalAngular {
    Plane { t: f64, k: usize, prev: f64, cur: f64 },
    Higher { dim: f64, k: usize, seq: GegenbauerSeq },
}

impl ZonalAngular {
    pub fn new(dim: usize, t: f64) -> Self {
        if dim == 2 {
            ZonalAngular::Plane {
                t,
                k: 0,
                prev: t,
                cur: 1.0,
            }
        } else {
            let n = dim as f64;
            ZonalAngular::Higher {
                dim: n,
                k: 0,
                seq: GegenbauerSeq::new((n - 2.0) / 2.0, t),
            }
        }
    }
}

impl Iterator for ZonalAngular {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        match self {
            ZonalAngular::Plane { t, k, prev, cur } => {
                // Chebyshev: T_{k+1} = 2t T_k - T_{k-1}, with T_{-1} = t
                let out = if *k == 0 { 1.0 } else { 2.0 * *cur };
                let next = 2.0 * *t * *cur - *prev;
                *prev = *cur;
                *cur = next;
                *k += 1;
                Some(out)
            }
            ZonalAngular::Higher { dim, k, seq } => {
                let c = seq.next()?;
                let kf = *k as f64;
                *k += 1;
                Some(if kf == 0.0 { 1.0 } else { (*dim + 2.0 * kf - 2.0) / (*dim - 2.0) * c })
            }
        }
    }
}

/// Zonal harmonic `Z_k(x, y)` extended homogeneously into the ball.
pub fn zonal_harmonic(k: usize, x: &[f64], y: &[f64], dim: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let rho = norm(x) * norm(y);
    if rho == 0.0 {
        return 0.0;
    }
    let t = cos_angle(x, y);
    let radial = rho.powi(k as i32);
    if dim == 2 {
        return 2.0 * radial * (k as f64 * t.acos()).cos();
    }
    let n = dim as f64;
    let kf = k as f64;
    radial * (n + 2.0 * kf - 2.0) / (n - 2.0) * crate::specfun::gegenbauer(k, (n - 2.0) / 2.0, t)
}

/// Bound terms `|γ_k| h_k ρ^k` up to the point where the remaining tail is
/// below `floor`, plus a geometric bound on everything after.
fn bound_terms(spec: &KernelSpec, rho: f64, floor: f64) -> Result<(Vec<f64>, f64)> {
    let mut gammas = GammaSeq::new(spec.alpha, spec.dim);
    let mut h = 1.0;
    let mut pow = 1.0;
    let mut terms = Vec::new();
    for k in 0..MAX_TERMS {
        let gamma_ratio = gammas.ratio();
        let g = gammas.next().unwrap_or(0.0);
        let term = g.abs() * h * pow;
        terms.push(term);
        let h_ratio = harmonic_dimension_ratio(k, spec.dim);
        if k >= 1 {
            let q = rho * gamma_ratio.max(1.0) * h_ratio;
            if q < 1.0 {
                let rest = term * q / (1.0 - q);
                if rest <= floor {
                    return Ok((terms, rest));
                }
            }
        }
        h *= h_ratio;
        pow *= rho;
    }
    Err(Error::Domain(format!(
        "kernel series needs more than {MAX_TERMS} terms at |x||y| = {rho}"
    )))
}

/// Smallest `K` whose certified tail `Σ_{k>K} |γ_k| h_k (rx ry)^k` is below
/// `spec.tol`.
pub fn truncation_degree(spec: &KernelSpec, rx: f64, ry: f64) -> Result<usize> {
    let rho = rx * ry;
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::Domain(format!("truncation needs rx*ry < 1, got {rho}")));
    }
    let (terms, rest) = bound_terms(spec, rho, spec.tol * (-20f64).exp2())?;
    let mut tail = rest;
    for k in (0..terms.len()).rev() {
        // tail currently holds Σ_{j>k}
        if tail >= spec.tol {
            return Ok(k + 1);
        }
        tail += terms[k];
    }
    Ok(0)
}

/// Truncated kernel series at fixed `ρ = |x||y|`, ready to be evaluated at
/// any angle.
#[derive(Debug, Clone)]
pub struct KernelSeries {
    dim: usize,
    coeffs: Vec<f64>,
}

impl KernelSeries {
    pub fn new(spec: &KernelSpec, rho: f64) -> Result<Self> {
        let degree = truncation_degree(spec, rho, 1.0)?;
        let mut pow = 1.0;
        let coeffs = GammaSeq::new(spec.alpha, spec.dim)
            .take(degree + 1)
            .map(|g| {
                let c = g * pow;
                pow *= rho;
                c
            })
            .collect();
        Ok(Self {
            dim: spec.dim,
            coeffs,
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Drop all terms above degree `max`.
    pub fn capped(mut self, max: usize) -> Self {
        self.coeffs.truncate(max.saturating_add(1));
        self
    }

    /// Sum at `t = cos θ`.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .zip(ZonalAngular::new(self.dim, t))
            .map(|(c, z)| c * z)
            .sum()
    }
}

/// `R_α(x, y)` with truncation error at most `spec.tol` (rounding comes on
/// top, relative to the size of the terms).
pub fn kernel_eval(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != spec.dim || y.len() != spec.dim {
        return Err(Error::Domain(format!(
            "points must have {} coordinates",
            spec.dim
        )));
    }
    let (nx, ny) = (norm(x), norm(y));
    if nx > 1.0 + 1e-12 || ny > 1.0 + 1e-12 {
        return Err(Error::Domain("points must lie in the closed ball".into()));
    }
    let rho = nx.min(1.0) * ny.min(1.0);
    if rho >= 1.0 {
        return Err(Error::Divergent);
    }
    if rho == 0.0 {
        return Ok(1.0);
    }
    Ok(KernelSeries::new(spec, rho)?.eval(cos_angle(x, y)))
}

/// Closed form of `R_α` in the plane for `α > -2`:
/// `2 Re (1 - x ȳ)^{-(2+α)} - 1` with points read as complex numbers.
pub fn plane_kernel(alpha: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if alpha <= -2.0 {
        return Err(Error::Domain(format!("planar closed form needs alpha > -2, got {alpha}")));
    }
    let z = Complex64::new(x[0], x[1]) * Complex64::new(y[0], -y[1]);
    if z.norm() >= 1.0 {
        return Err(Error::Divergent);
    }
    Ok(2.0 * (Complex64::new(1.0, 0.0) - z).powf(-(2.0 + alpha)).re - 1.0)
}
