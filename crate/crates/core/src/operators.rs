//! The operators `T_bc f(x) = ∫ R_c(x, y) f(y) (1 - |y|²)^b dν(y)` and
//! `Q_α = T_αα / V_α`, the radial test functions `f_uv`, and Bergman-Besov /
//! Bloch norms of `T_bc f` through `D_c^t T_bc = T_{b,c+t}`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExtExponent;
use crate::expansion::{HarmonicExpansion, Term};
use crate::kernel::{cos_angle, norm, zonal_harmonic, GammaSeq, KernelSeries, KernelSpec, DEFAULT_TOL};
use crate::quadrature::ladder::ball_radial_ladder;
use crate::quadrature::{
    grid_sup, integrate_ball, normalization_V, BallFunction, BallQuadrature, Integral, LadderConfig, Profile,
    RadialRule, SpherePoints,
};

/// The six parameters of `T_bc : L^p_α → X_β` plus the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub p: ExtExponent,
    pub q: ExtExponent,
    pub dim: usize,
}

/// `f_uv(x) = (1 - |x|²)^u (1 + log 1/(1 - |x|²))^{-v}`, optionally multiplied
/// by the zonal harmonic `Z_k(x, e_1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub u: f64,
    pub v: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

impl TestFunction {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v, degree: None }
    }

    pub fn with_degree(self, k: usize) -> Self {
        Self {
            degree: Some(k),
            ..self
        }
    }
}

impl BallFunction for TestFunction {
    fn eval_reduced(&self, x: &[f64]) -> f64 {
        match self.degree {
            None | Some(0) => 1.0,
            Some(k) => {
                let mut e1 = vec![0.0; x.len()];
                e1[0] = 1.0;
                zonal_harmonic(k, x, &e1, x.len())
            }
        }
    }

    fn profile(&self) -> Profile {
        Profile { u: self.u, v: self.v }
    }
}

pub fn test_function_eval(tf: &TestFunction, x: &[f64]) -> f64 {
    tf.eval(x)
}

/// Functions selectable by name: `const1`, `fuv:u,v`, or an expansion.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedFunction {
    Const1,
    Fuv(TestFunction),
    Expansion(HarmonicExpansion),
}

impl FromStr for NamedFunction {
    type Err = Error;

    /// Parses `const1` and `fuv:u,v`; expansions are loaded separately.
    fn from_str(s: &str) -> Result<Self> {
        if s == "const1" {
            return Ok(NamedFunction::Const1);
        }
        if let Some(rest) = s.strip_prefix("fuv:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 2 {
                if let (Ok(u), Ok(v)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
                    let tf = TestFunction::new(u, v);
                    if tf.u.is_finite() && tf.v.is_finite() {
                        return Ok(NamedFunction::Fuv(tf));
                    }
                }
            }
        }
        Err(Error::Domain(format!("unknown function {s:?}, expected const1 or fuv:u,v")))
    }
}

impl BallFunction for NamedFunction {
    fn eval_reduced(&self, x: &[f64]) -> f64 {
        match self {
            NamedFunction::Const1 => 1.0,
            NamedFunction::Fuv(tf) => tf.eval_reduced(x),
            NamedFunction::Expansion(e) => e.evaluate(x),
        }
    }

    fn profile(&self) -> Profile {
        match self {
            NamedFunction::Fuv(tf) => tf.profile(),
            _ => Profile::ONE,
        }
    }
}

/// A norm value together with the `(s, t)` used for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: Integral,
    pub s: f64,
    pub t: u32,
}

/// Quadrature settings for operator evaluation: `rule` for the integral
/// defining `T_bc`, `outer` for norms of the result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluator {
    pub rule: BallQuadrature,
    pub outer: BallQuadrature,
    pub tol: f64,
    pub ladder: LadderConfig,
}

struct Prepared {
    radial: RadialRule,
    sphere: SpherePoints,
}

impl Evaluator {
    pub fn new(dim: usize) -> Result<Self> {
        let rule = BallQuadrature::new(dim)?;
        let outer_sphere = match dim {
            2 => 32,
            3 => 16,
            _ => 256,
        };
        Ok(Self {
            rule,
            outer: rule.with_radial_nodes(24).with_sphere_nodes(outer_sphere),
            tol: DEFAULT_TOL,
            ladder: LadderConfig::default(),
        })
    }

    pub fn with_rule(self, rule: BallQuadrature) -> Self {
        Self { rule, ..self }
    }

    pub fn with_outer(self, outer: BallQuadrature) -> Self {
        Self { outer, ..self }
    }

    /// Whether `∫ |f| (1 - |y|²)^b dν` is finite, judged on the refinement
    /// ladder of `f`'s radial profile.
    pub fn integrable(&self, b: f64, f: &(impl BallFunction + ?Sized)) -> bool {
        let prof = f.profile();
        ball_radial_ladder(self.rule.dim, 0.0, b + prof.u, prof.v, &self.ladder)
            .result
            .is_finite()
    }

    fn prepare(&self, b: f64, f: &(impl BallFunction + ?Sized)) -> Result<Option<Prepared>> {
        if !self.integrable(b, f) {
            return Ok(None);
        }
        let prof = f.profile();
        match RadialRule::new(self.rule.dim, b + prof.u, prof.v, self.rule.radial_nodes) {
            Ok(radial) => Ok(Some(Prepared {
                radial,
                sphere: self.rule.sphere_points(),
            })),
            Err(Error::Divergent) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn apply_prepared(
        &self,
        prep: &Prepared,
        c: f64,
        f: &(impl BallFunction + ?Sized),
        x: &[f64],
    ) -> Result<f64> {
        let dim = self.rule.dim;
        if x.len() != dim {
            return Err(Error::Domain(format!("point must have {dim} coordinates")));
        }
        let rx = norm(x);
        if rx >= 1.0 {
            return Err(Error::Domain("T_bc f(x) needs |x| < 1".into()));
        }
        let spec = KernelSpec::with_tol(c, dim, self.tol)?;
        let sphere = &prep.sphere;
        // Kernel degrees beyond half the sphere rule's exactness only alias.
        let cap = self.rule.sphere_rule.exact_degree().map_or(usize::MAX, |d| d / 2);
        let angles: Vec<f64> = (0..sphere.len()).map(|j| cos_angle(x, sphere.point(j))).collect();
        let mut y = vec![0.0; dim];
        let mut total = 0.0;
        for (&r, &w) in prep.radial.r.iter().zip(&prep.radial.weights) {
            let series = if rx == 0.0 { None } else { Some(KernelSeries::new(&spec, rx * r)?.capped(cap)) };
            let mut shell = 0.0;
            for (j, t) in angles.iter().enumerate() {
                for (yi, zi) in y.iter_mut().zip(sphere.point(j)) {
                    *yi = r * zi;
                }
                let k = series.as_ref().map_or(1.0, |s| s.eval(*t));
                shell += sphere.weights[j] * k * f.eval_reduced(&y);
            }
            total += w * shell;
        }
        if !total.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(total)
    }

    /// `T_bc f(x)`, or `Divergent` when `f (1 - |y|²)^b` is not integrable.
    pub fn apply_t(&self, b: f64, c: f64, f: &(impl BallFunction + ?Sized), x: &[f64]) -> Result<Integral> {
        match self.prepare(b, f)? {
            None => Ok(Integral::Divergent),
            Some(prep) => Ok(Integral::Finite(self.apply_prepared(&prep, c, f, x)?)),
        }
    }

    /// `D_c^t T_bc f(x) = T_{b,c+t} f(x)`.
    pub fn apply_t_derivative(
        &self,
        b: f64,
        c: f64,
        t: f64,
        f: &(impl BallFunction + ?Sized),
        x: &[f64],
    ) -> Result<Integral> {
        self.apply_t(b, c + t, f, x)
    }

    /// `Q_α f(x) = T_αα f(x) / V_α`.
    pub fn projection_q(&self, alpha: f64, f: &(impl BallFunction + ?Sized), x: &[f64]) -> Result<f64> {
        let v = normalization_V(alpha, self.rule.dim)?;
        match self.apply_t(alpha, alpha, f, x)? {
            Integral::Finite(val) => Ok(val / v),
            Integral::Divergent => Err(Error::Divergent),
        }
    }

    /// `T_bc f` as a finite expansion: the quadrature sum with every kernel
    /// truncated at `degree`.
    pub fn expansion_surrogate(
        &self,
        b: f64,
        c: f64,
        f: &(impl BallFunction + ?Sized),
        degree: usize,
    ) -> Result<HarmonicExpansion> {
        let prep = self.prepare(b, f)?.ok_or(Error::Divergent)?;
        let dim = self.rule.dim;
        let gammas: Vec<f64> = GammaSeq::new(c, dim).take(degree + 1).collect();
        let mut terms = Vec::new();
        for (&r, &w) in prep.radial.r.iter().zip(&prep.radial.weights) {
            for j in 0..prep.sphere.len() {
                let y: Vec<f64> = prep.sphere.point(j).iter().map(|z| r * z).collect();
                let mass = w * prep.sphere.weights[j] * f.eval_reduced(&y);
                for (k, g) in gammas.iter().enumerate() {
                    terms.push(Term {
                        k,
                        y: y.clone(),
                        c: mass * g,
                    });
                }
            }
        }
        HarmonicExpansion::new(dim, terms)
    }

    /// `‖T_bc f‖_{b^q_β}` as `‖(1 - |x|²)^t T_{b,c+t} f‖_{L^q_β}` with the
    /// smallest admissible integer `t` (`β + qt > -1`); normalized by `V_β`
    /// when `β > -1`.
    pub fn besov_norm(
        &self,
        b: f64,
        c: f64,
        f: &(impl BallFunction + ?Sized),
        q: f64,
        beta: f64,
    ) -> Result<NormValue> {
        self.besov_norm_with_order(b, c, f, q, beta, besov_order(q, beta))
    }

    /// [`Evaluator::besov_norm`] with a given admissible order `t`.
    pub fn besov_norm_with_order(
        &self,
        b: f64,
        c: f64,
        f: &(impl BallFunction + ?Sized),
        q: f64,
        beta: f64,
        t: u32,
    ) -> Result<NormValue> {
        if !(q >= 1.0 && q.is_finite()) {
            return Err(Error::Domain(format!("besov norm needs 1 <= q < inf, got {q}")));
        }
        if beta + q * t as f64 <= -1.0 {
            return Err(Error::Domain(format!("order {t} is not admissible for q = {q}, beta = {beta}")));
        }
        let Some(prep) = self.prepare(b, f)? else {
            return Ok(NormValue {
                value: Integral::Divergent,
                s: c,
                t,
            });
        };
        let ct = c + t as f64;
        let g = |x: &[f64]| {
            self.apply_prepared(&prep, ct, f, x)
                .map(|v| v.abs().powf(q))
                .unwrap_or(f64::NAN)
        };
        let weight = beta + q * t as f64;
        let mass = if beta > -1.0 {
            normalization_V(beta, self.rule.dim)?
        } else {
            1.0
        };
        let est = integrate_ball(&g, weight, &self.outer)?;
        Ok(NormValue {
            value: Integral::Finite((est.value / mass).powf(1.0 / q)),
            s: c,
            t,
        })
    }

    /// Grid estimate of `‖T_bc f‖_{b^∞_β}`: `sup (1 - |x|²)^{β+t} |T_{b,c+t} f|`
    /// with the smallest integer `t` making `β + t > 0`.
    pub fn bloch_norm(&self, b: f64, c: f64, f: &(impl BallFunction + ?Sized), beta: f64) -> Result<NormValue> {
        self.bloch_norm_with_order(b, c, f, beta, bloch_order(beta))
    }

    /// [`Evaluator::bloch_norm`] with a given admissible order `t`.
    pub fn bloch_norm_with_order(
        &self,
        b: f64,
        c: f64,
        f: &(impl BallFunction + ?Sized),
        beta: f64,
        t: u32,
    ) -> Result<NormValue> {
        if beta + t as f64 <= 0.0 {
            return Err(Error::Domain(format!("order {t} is not admissible for beta = {beta}")));
        }
        let Some(prep) = self.prepare(b, f)? else {
            return Ok(NormValue {
                value: Integral::Divergent,
                s: c,
                t,
            });
        };
        let ct = c + t as f64;
        let g = |x: &[f64]| self.apply_prepared(&prep, ct, f, x).unwrap_or(f64::NAN);
        let sup = grid_sup(&g, beta + t as f64, &self.outer)?;
        Ok(NormValue {
            value: Integral::Finite(sup),
            s: c,
            t,
        })
    }
}

/// Smallest non-negative integer `t` with `β + q t > -1`.
pub fn besov_order(q: f64, beta: f64) -> u32 {
    let mut t = 0;
    while beta + q * t as f64 <= -1.0 {
        t += 1;
    }
    t
}

/// Smallest non-negative integer `t` with `β + t > 0`.
pub fn bloch_order(beta: f64) -> u32 {
    let mut t = 0;
    while beta + t as f64 <= 0.0 {
        t += 1;
    }
    t
}

pub fn apply_t(b: f64, c: f64, f: &(impl BallFunction + ?Sized), x: &[f64], rule: &BallQuadrature) -> Result<Integral> {
    Evaluator::new(rule.dim)?.with_rule(*rule).apply_t(b, c, f, x)
}

pub fn projection_q(alpha: f64, f: &(impl BallFunction + ?Sized), x: &[f64], rule: &BallQuadrature) -> Result<f64> {
    Evaluator::new(rule.dim)?.with_rule(*rule).projection_q(alpha, f, x)
}

pub fn apply_t_derivative(
    b: f64,
    c: f64,
    t: f64,
    f: &(impl BallFunction + ?Sized),
    x: &[f64],
    rule: &BallQuadrature,
) -> Result<Integral> {
    Evaluator::new(rule.dim)?.with_rule(*rule).apply_t_derivative(b, c, t, f, x)
}
