//! Finite harmonic functions stored as sums of anchored zonal harmonics, and
//! the radial operators `D_s^t`, `I_s^t` acting on them.
//!
//! Each term `(k, y, c)` denotes `c · Z_k(·, y)`, a homogeneous harmonic
//! polynomial of degree `k`, so `D_s^t` only rescales coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{gamma_coef, norm, zonal_harmonic, GammaSeq};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub k: usize,
    pub y: Vec<f64>,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicExpansion {
    dim: usize,
    terms: Vec<Term>,
}

impl HarmonicExpansion {
    pub fn new(dim: usize, terms: Vec<Term>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Expansion(format!("dimension {dim} < 2")));
        }
        for t in &terms {
            if t.y.len() != dim {
                return Err(Error::Expansion(format!(
                    "anchor has {} coordinates, expected {dim}",
                    t.y.len()
                )));
            }
            if norm(&t.y) > 1.0 + 1e-12 {
                return Err(Error::Expansion("anchor outside the closed ball".into()));
            }
            if !t.c.is_finite() {
                return Err(Error::Expansion("non-finite coefficient".into()));
            }
        }
        Ok(Self { dim, terms })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, terms: Vec::new() }
    }

    /// Degree-truncated `Σ_{k<=degree} γ_k(alpha) Z_k(·, anchor)`.
    pub fn truncated_kernel(alpha: f64, anchor: &[f64], degree: usize) -> Result<Self> {
        let terms = GammaSeq::new(alpha, anchor.len())
            .take(degree + 1)
            .enumerate()
            .map(|(k, g)| Term {
                k,
                y: anchor.to_vec(),
                c: g,
            })
            .collect();
        Self::new(anchor.len(), terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.c * zonal_harmonic(t.k, x, &t.y, self.dim))
            .sum()
    }

    /// `D_s^t`: scales each degree-`k` term by `γ_k(s+t)/γ_k(s)`.
    pub fn apply_d(&self, s: f64, t: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|term| Term {
                c: term.c * d_multiplier(term.k, s, t, self.dim),
                ..term.clone()
            })
            .collect();
        Self {
            dim: self.dim,
            terms,
        }
    }

    /// `I_s^t f(x) = (1-|x|^2)^t D_s^t f(x)`.
    pub fn apply_i(&self, s: f64, t: f64, x: &[f64]) -> Result<f64> {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 >= 1.0 {
            return Err(Error::Domain("I_s^t needs |x| < 1".into()));
        }
        Ok((1.0 - r2).powf(t) * self.apply_d(s, t).evaluate(x))
    }

    pub fn scale(&self, factor: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                c: t.c * factor,
                ..t.clone()
            })
            .collect();
        Self {
            dim: self.dim,
            terms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.terms).expect("terms serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let terms: Vec<Term> =
            serde_json::from_str(text).map_err(|e| Error::Expansion(e.to_string()))?;
        let dim = terms
            .first()
            .map(|t| t.y.len())
            .ok_or_else(|| Error::Expansion("empty expansion carries no dimension".into()))?;
        Self::new(dim, terms)
    }
}

/// `γ_k(s+t)/γ_k(s)`; exactly 1 when `t = 0`.
pub fn d_multiplier(k: usize, s: f64, t: f64, dim: usize) -> f64 {
    if t == 0.0 || k == 0 {
        return 1.0;
    }
    gamma_coef(k, s + t, dim) / gamma_coef(k, s, dim)
}
