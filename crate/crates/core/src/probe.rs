//! Numerical evidence for classifier verdicts.
//!
//! * [`finiteness_probe`] integrates `T_bc f_uv(0)` for the test function that
//!   detects the integrability condition of each regime.
//! * [`ratio_probe`] tracks `‖T_bc f‖_X / ‖f‖_{L^p_α}` along a family of test
//!   functions and compares growth against the verdict. Radial `f_uv` are
//!   sent to constants by `T_bc`, so they only see the integrability
//!   condition; the bound on `c` is attacked with kernel bumps
//!   `(1 - |y|²)^m R_{b+m}(y, a)`, `|a| → 1` (mapped to `V_{b+m} R_c(·, a)`),
//!   or, when `q < p`, with oscillating `f_u0 Z_k(·, e_1)`, `k → ∞`.
//! * [`kernel_floor_probe`] finds a radius on which `R_α >= 1/2`.
//!
//! Bump and degree families use the planar closed forms and are available for
//! `n = 2` only.

use serde::{Deserialize, Serialize};

use crate::classifier::{classify, TargetSpace, Verdict};
use crate::error::{Error, Result};
use crate::exponent::ExtExponent;
use crate::kernel::{gamma_coef, kernel_eval, plane_kernel, KernelSpec};
use crate::operators::{besov_order, bloch_order, OperatorParams, TestFunction};
use crate::quadrature::gauss::{gauss_jacobi, gauss_legendre};
use crate::quadrature::ladder::{ball_radial_ladder, sup_ladder};
use crate::quadrature::{normalization_V, Integral, LadderConfig};
use crate::specfun::ln_beta;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub probe: String,
    pub trend: String,
    /// `None` when there is nothing to compare (empty or unsupported family).
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub params: OperatorParams,
    pub target: TargetSpace,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    /// `(resolution, value)`: ladder partial sums for the finiteness probe,
    /// `(member index, ratio)` for the ratio probe.
    pub refinement_ladder: Vec<(f64, f64)>,
}

/// Thresholds and sizes for the probes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSettings {
    /// Family members `j = 1..=members`.
    pub members: usize,
    /// Gauss-Legendre nodes per panel of the planar quadrature.
    pub panel_nodes: usize,
    pub ladder: LadderConfig,
    /// Unbounded verdicts need at least this growth over the family.
    pub growth_factor: f64,
    /// Bounded verdicts need the last step to grow by at most this fraction.
    pub plateau_band: f64,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        Self {
            members: 12,
            panel_nodes: 12,
            ladder: LadderConfig::default(),
            growth_factor: 10.0,
            plateau_band: 0.10,
        }
    }
}

impl ProbeSettings {
    /// Twice the quadrature nodes, radial ladder included.
    pub fn doubled(&self) -> Self {
        Self {
            panel_nodes: 2 * self.panel_nodes,
            ladder: self.ladder.doubled(),
            ..*self
        }
    }
}

/// `n ∫_0^1 r^{n-1} (1 - r²)^e (1 + L)^{-v} dr`, possibly infinite.
fn radial_mass(dim: usize, e: f64, v: f64, ladder: &LadderConfig) -> f64 {
    ball_radial_ladder(dim, 0.0, e, v, ladder)
        .result
        .value()
        .unwrap_or(f64::INFINITY)
}

/// `V_α` for `α > -1`, else 1.
fn mass(alpha: f64, dim: usize) -> f64 {
    if alpha > -1.0 {
        normalization_V(alpha, dim).unwrap_or(1.0)
    } else {
        1.0
    }
}

/// Analytic predicate for `∫ f_uv (1 - |y|²)^b dν < ∞`.
pub fn integrable_predicate(e: f64, v: f64) -> bool {
    e > -1.0 || (e == -1.0 && v > 1.0)
}

/// Whether `f_uv ∈ L^p_α` (for `p = ∞`: `ℒ^∞_α`).
pub fn membership_predicate(u: f64, v: f64, p: ExtExponent, alpha: f64) -> bool {
    match p {
        ExtExponent::Finite(p) => integrable_predicate(alpha + p * u, p * v),
        ExtExponent::Infinite => alpha + u > 0.0 || (u == -alpha && v >= 0.0),
    }
}

/// The test functions used for the integrability condition of each regime.
pub fn finiteness_functions(params: &OperatorParams) -> Vec<TestFunction> {
    let a = params.alpha;
    match params.p {
        ExtExponent::Finite(p) if p == 1.0 => [0.5, 0.25, 0.125, 0.0625]
            .iter()
            .map(|d| TestFunction::new(-(1.0 + a) + d, 0.0))
            .collect(),
        ExtExponent::Finite(p) => vec![TestFunction::new(-(1.0 + a) / p, 1.0)],
        ExtExponent::Infinite => vec![TestFunction::new(-a, 0.0)],
    }
}

/// Evaluates `T_bc f(0) = ∫ f (1 - |y|²)^b dν` on the refinement ladder for
/// the regime's test functions.
pub fn finiteness_probe(params: &OperatorParams, target: TargetSpace) -> Result<ProbeReport> {
    finiteness_probe_with(params, target, &ProbeSettings::default())
}

pub fn finiteness_probe_with(
    params: &OperatorParams,
    target: TargetSpace,
    settings: &ProbeSettings,
) -> Result<ProbeReport> {
    let verdict = classify(params, target)?;
    let mut numeric_finite = true;
    let mut analytic_agrees = true;
    let mut ladder_out = Vec::new();
    let mut trend = Vec::new();
    for tf in finiteness_functions(params) {
        let e = params.b + tf.u;
        let ladder = ball_radial_ladder(params.dim, 0.0, e, tf.v, &settings.ladder);
        let finite = ladder.result.is_finite();
        analytic_agrees &= finite == integrable_predicate(e, tf.v);
        numeric_finite &= finite;
        trend.push(match ladder.result {
            Integral::Finite(x) => format!("u={} v={}: finite {x:.6e}", tf.u, tf.v),
            Integral::Divergent => format!("u={} v={}: divergent", tf.u, tf.v),
        });
        ladder_out = ladder.partial_sums();
    }
    let first_fails = verdict.first_condition().is_some_and(|i| !i.ok);
    let agree = analytic_agrees && (numeric_finite || first_fails);
    Ok(ProbeReport {
        params: *params,
        target,
        verdict,
        evidence: vec![Evidence {
            probe: "finiteness".into(),
            trend: trend.join("; "),
            agree: Some(agree),
        }],
        refinement_ladder: ladder_out,
    })
}

/// A member of a ratio-probe family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyMember {
    /// `f_uv`, or `f_uv Z_k(·, e_1)` when a degree is set.
    Test(TestFunction),
    /// `(1 - |y|²)^m R_{b+m}(y, a e_1)`.
    Bump { a: f64, m: f64 },
}

/// Family aimed at the binding inequality of the verdict.
pub fn default_family(
    params: &OperatorParams,
    target: TargetSpace,
    verdict: &Verdict,
    settings: &ProbeSettings,
) -> Vec<FamilyMember> {
    // Unbounded: attack the failing inequality. Bounded: prefer the shape
    // families, whose ratios are the harder ones to keep bounded.
    let binding_is_first = match (verdict.first_condition(), verdict.binding()) {
        _ if verdict.bounded => false,
        (Some(first), Some(bind)) => bind.name == first.name,
        _ => true,
    };
    let j_range = 1..=settings.members;
    let planar = params.dim == 2;
    let q_below_p = match (params.p, params.q) {
        (ExtExponent::Infinite, ExtExponent::Finite(_)) => true,
        (ExtExponent::Finite(p), ExtExponent::Finite(q)) => q < p,
        _ => false,
    };
    if !binding_is_first && planar && q_below_p {
        let u0 = degree_family_u(params);
        return j_range
            .map(|j| FamilyMember::Test(TestFunction::new(u0, 0.0).with_degree(1 << j)))
            .collect();
    }
    if !binding_is_first && planar && bump_order(params, target).is_some() {
        let m = bump_m(params);
        return j_range
            .map(|j| FamilyMember::Bump {
                a: 1.0 - (-(j as f64)).exp2(),
                m,
            })
            .collect();
    }
    let a = params.alpha;
    j_range
        .map(|j| {
            let d = (-(j as f64)).exp2();
            FamilyMember::Test(match params.p {
                ExtExponent::Finite(p) if p == 1.0 => TestFunction::new(-(1.0 + a) + d, 0.0),
                ExtExponent::Finite(p) => TestFunction::new(-(1.0 + a) / p + d, 1.0),
                ExtExponent::Infinite => TestFunction::new(-a, d),
            })
        })
        .collect()
}

/// `u` for the degree family: half a unit inside both integrability limits.
fn degree_family_u(params: &OperatorParams) -> f64 {
    let src = match params.p {
        ExtExponent::Finite(p) => -(1.0 + params.alpha) / p,
        ExtExponent::Infinite => -params.alpha,
    };
    src.max(-1.0 - params.b) + 0.5
}

/// Exponent `m` of the bump: keeps the bump in `L^p_α` and `b + m > -1`.
fn bump_m(params: &OperatorParams) -> f64 {
    let src = match params.p {
        ExtExponent::Finite(p) => (-1.0 - params.alpha) / p + 0.5,
        ExtExponent::Infinite => -params.alpha + 0.5,
    };
    0.0f64.max(src).max(-0.5 - params.b)
}

/// Order `t` used to measure the image of a bump, `None` when the planar
/// closed form of the needed kernel is unavailable.
fn bump_order(params: &OperatorParams, target: TargetSpace) -> Option<u32> {
    let lift = |t0: u32| {
        let mut t = t0;
        while params.c + (t as f64) <= -1.0 {
            t += 1;
        }
        t
    };
    match target {
        TargetSpace::Besov => Some(lift(besov_order(params.q.as_f64(), params.beta))),
        TargetSpace::Bloch => Some(lift(bloch_order(params.beta))),
        _ if params.c > -2.0 => Some(0),
        _ => None,
    }
}

/// Logarithm of `‖f‖_{L^p_α}` for a family member.
fn ln_source_norm(params: &OperatorParams, member: &FamilyMember, settings: &ProbeSettings) -> Result<f64> {
    let n = params.dim as f64;
    let alpha = params.alpha;
    match *member {
        FamilyMember::Test(tf) => {
            if !membership_predicate(tf.u, tf.v, params.p, alpha) {
                return Err(Error::Domain(format!(
                    "f_uv with u={} v={} is not in the source space",
                    tf.u, tf.v
                )));
            }
            match (tf.degree, params.p) {
                (None, ExtExponent::Finite(p)) => {
                    Ok((radial_mass(params.dim, alpha + p * tf.u, p * tf.v, &settings.ladder) / mass(alpha, params.dim))
                        .ln()
                        / p)
                }
                (None, ExtExponent::Infinite) => {
                    let (s, v) = (alpha + tf.u, tf.v);
                    let sup = sup_ladder(move |w| -s * w - v * w.ln_1p(), &settings.ladder, 1e-3);
                    Ok(sup.result.value().unwrap_or(f64::INFINITY).ln())
                }
                (Some(k), p) => {
                    planar_only(params)?;
                    if tf.v != 0.0 {
                        return Err(Error::Domain("degree members need v = 0".into()));
                    }
                    let kf = k as f64;
                    match p {
                        ExtExponent::Finite(p) => Ok((ln_beta(n / 2.0 + p * kf / 2.0, alpha + p * tf.u + 1.0)?
                            + ln_abs_cos_moment(p)
                            - mass(alpha, params.dim).ln())
                            / p),
                        ExtExponent::Infinite => Ok(std::f64::consts::LN_2 + ln_sup_power(kf, alpha + tf.u)),
                    }
                }
            }
        }
        FamilyMember::Bump { a, m } => {
            planar_only(params)?;
            let s = params.b + m;
            match params.p {
                ExtExponent::Finite(p) => {
                    let val = planar_kernel_norm(s, a, alpha + p * m, Some(p), settings.panel_nodes)?;
                    Ok(val - mass(alpha, params.dim).ln() / p)
                }
                ExtExponent::Infinite => planar_kernel_norm(s, a, alpha + m, None, settings.panel_nodes),
            }
        }
    }
}

/// Logarithm of the target norm of `T_bc f` (infinite when `T_bc f` is not
/// defined or not in the target).
fn ln_target_norm(
    params: &OperatorParams,
    target: TargetSpace,
    member: &FamilyMember,
    settings: &ProbeSettings,
) -> Result<f64> {
    let OperatorParams { b, c, beta, q, dim, .. } = *params;
    let n = dim as f64;
    let qf = q.as_f64();
    match *member {
        FamilyMember::Test(tf) if tf.degree.is_none() => {
            let k = radial_mass(dim, b + tf.u, tf.v, &settings.ladder);
            if !k.is_finite() {
                return Ok(f64::INFINITY);
            }
            // T f is the constant k; norm of the constant 1 in the target
            let unit = match target {
                TargetSpace::Besov => {
                    let t = besov_order(qf, beta) as f64;
                    (radial_mass(dim, beta + qf * t, 0.0, &settings.ladder) / mass(beta, dim)).ln() / qf
                }
                TargetSpace::Lebesgue if beta <= -1.0 => f64::INFINITY,
                TargetSpace::Lebesgue => 0.0,
                TargetSpace::WeightedLinf if beta < 0.0 => f64::INFINITY,
                _ => 0.0,
            };
            Ok(k.ln() + unit)
        }
        FamilyMember::Test(tf) => {
            planar_only(params)?;
            let k = tf.degree.unwrap_or(0) as f64;
            let ku = k as usize;
            let e = b + tf.u;
            if e <= -1.0 {
                return Ok(f64::INFINITY);
            }
            let ln_m = ln_beta(n / 2.0 + k, e + 1.0)? + (n / 2.0).ln();
            let ln_g = |s: f64| gamma_coef(ku, s, dim).abs().ln();
            let out = match target {
                TargetSpace::Besov => {
                    let t = besov_order(qf, beta) as f64;
                    ln_g(c + t)
                        + ln_m
                        + (ln_beta(n / 2.0 + qf * k / 2.0, beta + qf * t + 1.0)? + ln_abs_cos_moment(qf)
                            - mass(beta, dim).ln())
                            / qf
                }
                TargetSpace::Lebesgue if beta <= -1.0 => f64::INFINITY,
                TargetSpace::Lebesgue => {
                    ln_g(c)
                        + ln_m
                        + (ln_beta(n / 2.0 + qf * k / 2.0, beta + 1.0)? + ln_abs_cos_moment(qf) - mass(beta, dim).ln())
                            / qf
                }
                TargetSpace::Bloch => {
                    let t = bloch_order(beta) as f64;
                    ln_g(c + t) + ln_m + std::f64::consts::LN_2 + ln_sup_power(k, beta + t)
                }
                TargetSpace::Hinf => ln_g(c) + ln_m + std::f64::consts::LN_2,
                TargetSpace::WeightedLinf => ln_g(c) + ln_m + std::f64::consts::LN_2 + ln_sup_power(k, beta),
            };
            Ok(out)
        }
        FamilyMember::Bump { a, m } => {
            planar_only(params)?;
            let t = bump_order(params, target)
                .ok_or_else(|| Error::Domain("planar kernel closed form needs c > -2".into()))?;
            let s = c + t as f64;
            let tf = t as f64;
            let ln_v = normalization_V(b + m, dim)?.ln();
            let nodes = settings.panel_nodes;
            let norm = match target {
                TargetSpace::Besov => {
                    planar_kernel_norm(s, a, beta + qf * tf, Some(qf), nodes)? - mass(beta, dim).ln() / qf
                }
                TargetSpace::Lebesgue if beta <= -1.0 => f64::INFINITY,
                TargetSpace::Lebesgue => planar_kernel_norm(s, a, beta, Some(qf), nodes)? - mass(beta, dim).ln() / qf,
                TargetSpace::Bloch => planar_kernel_norm(s, a, beta + tf, None, nodes)?,
                TargetSpace::Hinf => planar_kernel_norm(s, a, 0.0, None, nodes)?,
                TargetSpace::WeightedLinf if beta < 0.0 => f64::INFINITY,
                TargetSpace::WeightedLinf => planar_kernel_norm(s, a, beta, None, nodes)?,
            };
            Ok(ln_v + norm)
        }
    }
}

fn planar_only(params: &OperatorParams) -> Result<()> {
    if params.dim == 2 {
        Ok(())
    } else {
        Err(Error::Domain("bump and degree families are planar".into()))
    }
}

/// `ln ∫ |2 cos kθ|^p dθ/2π = ln(2^p Γ((p+1)/2) / (√π Γ(p/2+1)))`.
fn ln_abs_cos_moment(p: f64) -> f64 {
    p * std::f64::consts::LN_2 + libm::lgamma((p + 1.0) / 2.0)
        - 0.5 * std::f64::consts::PI.ln()
        - libm::lgamma(p / 2.0 + 1.0)
}

/// `ln sup_{0<r<1} r^k (1 - r²)^s`.
fn ln_sup_power(k: f64, s: f64) -> f64 {
    if s < 0.0 {
        f64::INFINITY
    } else if s == 0.0 || k == 0.0 {
        0.0
    } else {
        let d = k + 2.0 * s;
        k / 2.0 * (k / d).ln() + s * (2.0 * s / d).ln()
    }
}

/// `ln ‖(1 - |x|²)^{w/q} R_s(x, a e_1)‖` in the plane: the `L^q(dν)` norm of
/// `(1 - |x|²)^{w/q} R_s` when `q` is given, else the supremum of
/// `(1 - |x|²)^w |R_s|`. Panels are graded geometrically towards `a e_1` and
/// the unit circle.
pub fn planar_kernel_norm(s: f64, a: f64, w: f64, q: Option<f64>, nodes: usize) -> Result<f64> {
    if s <= -2.0 {
        return Err(Error::Domain(format!("planar closed form needs s > -2, got {s}")));
    }
    if q.is_some() && w <= -1.0 {
        return Ok(f64::INFINITY);
    }
    let delta = 1.0 - a;
    let gl = gauss_legendre(nodes);
    // radial: (r, 1 - r, weight including r dr)
    let mut radial: Vec<(f64, f64, f64)> = Vec::new();
    let mut edges = vec![0.0];
    let top = (1.0 / delta).log2().floor() as i32;
    for j in (-30..=top).rev() {
        let gap = delta * (j as f64).exp2();
        if gap < 1.0 {
            edges.push(1.0 - gap);
        }
    }
    for win in edges.windows(2) {
        for (r, wr) in gl.mapped(win[0], win[1]) {
            let one_minus = 1.0 - r;
            let weight = wr * r * ((one_minus * (1.0 + r)).powf(w));
            radial.push((r, one_minus, weight));
        }
    }
    // last panel [lo, 1] with the factor (1 - r)^w inside the rule
    let lo = *edges.last().unwrap_or(&0.0);
    let h = 1.0 - lo;
    let gj = gauss_jacobi(nodes, 0.0, w.max(-0.999_999));
    for (x, wx) in gj.nodes.iter().zip(&gj.weights) {
        let r = lo + h * x;
        let one_minus = h * (1.0 - x);
        let weight = h.powf(w + 1.0) * wx * r * (1.0 + r).powf(w);
        radial.push((r, one_minus, weight));
    }
    // angle on [0, π], graded at 0
    let mut tedges = vec![0.0];
    let mut th = delta / 16.0;
    while th < 0.5 {
        tedges.push(th);
        th *= 2.0;
    }
    let mut th = 0.5;
    while th < std::f64::consts::PI {
        tedges.push(th);
        th += 0.25;
    }
    tedges.push(std::f64::consts::PI);
    let mut angular: Vec<(f64, f64)> = Vec::new();
    for win in tedges.windows(2) {
        angular.extend(gl.mapped(win[0], win[1]));
    }
    let anchor = [a, 0.0];
    match q {
        Some(q) => {
            let mut total = 0.0;
            for &(r, _, wr) in &radial {
                let mut shell = 0.0;
                for &(t, wt) in &angular {
                    let k = plane_kernel(s, &[r * t.cos(), r * t.sin()], &anchor)?;
                    shell += wt * k.abs().powf(q);
                }
                total += wr * shell;
            }
            // dν = r dr dθ / π, doubled for θ ∈ [-π, 0]
            let val = 2.0 / std::f64::consts::PI * total;
            if !val.is_finite() {
                return Err(Error::NonFinite);
            }
            Ok(val.ln() / q)
        }
        None => {
            let mut best = f64::NEG_INFINITY;
            for &(r, one_minus, _) in &radial {
                let ln_weight = w * (one_minus * (1.0 + r)).ln();
                for &(t, _) in angular.iter().chain([(0.0, 0.0)].iter()) {
                    let k = plane_kernel(s, &[r * t.cos(), r * t.sin()], &anchor)?;
                    best = best.max(ln_weight + k.abs().ln());
                }
            }
            Ok(best)
        }
    }
}

/// Ratios `‖T_bc f‖_X / ‖f‖_{L^p_α}` over the family, compared with the
/// verdict.
pub fn ratio_probe(
    params: &OperatorParams,
    target: TargetSpace,
    family: &[FamilyMember],
    settings: &ProbeSettings,
) -> Result<ProbeReport> {
    let verdict = classify(params, target)?;
    let mut ratios = Vec::with_capacity(family.len());
    for (j, member) in family.iter().enumerate() {
        let src = ln_source_norm(params, member, settings)?;
        let tgt = ln_target_norm(params, target, member, settings)?;
        let ratio = if tgt.is_infinite() && tgt > 0.0 {
            f64::INFINITY
        } else {
            (tgt - src).exp()
        };
        ratios.push((j as f64 + 1.0, ratio));
    }
    let evidence = judge_ratios(&ratios, verdict.bounded, settings);
    Ok(ProbeReport {
        params: *params,
        target,
        verdict,
        evidence: vec![evidence],
        refinement_ladder: ratios,
    })
}

/// Ratio probe with [`default_family`].
pub fn ratio_probe_default(params: &OperatorParams, target: TargetSpace, settings: &ProbeSettings) -> Result<ProbeReport> {
    let verdict = classify(params, target)?;
    let family = default_family(params, target, &verdict, settings);
    ratio_probe(params, target, &family, settings)
}

fn judge_ratios(ratios: &[(f64, f64)], bounded: bool, settings: &ProbeSettings) -> Evidence {
    let n = ratios.len();
    if n == 0 {
        return Evidence {
            probe: "ratio".into(),
            trend: "empty family".into(),
            agree: None,
        };
    }
    let values: Vec<f64> = ratios.iter().map(|r| r.1).collect();
    if values.iter().any(|r| r.is_nan()) {
        return Evidence {
            probe: "ratio".into(),
            trend: "non-finite ratio".into(),
            agree: Some(false),
        };
    }
    if values.iter().any(|r| r.is_infinite()) {
        return Evidence {
            probe: "ratio".into(),
            trend: "infinite".into(),
            agree: Some(!bounded),
        };
    }
    let total = values[n - 1] / values[0];
    let last = if n > 1 { values[n - 1] / values[n - 2] } else { 1.0 };
    let agree = if bounded {
        last <= 1.0 + settings.plateau_band
    } else {
        total >= settings.growth_factor && last > 1.0
    };
    Evidence {
        probe: "ratio".into(),
        trend: format!("growth x{total:.3e} overall, x{last:.4} last step"),
        agree: Some(agree),
    }
}

/// Largest `ε = 2^{-j}` (`j = 1..=20`) with `R_α(x, y) >= 1/2` for all sampled
/// `|x| <= ε`, `|y| ∈ {0, 0.5, 0.9, 0.99, 0.999}` and 33 angles; 0 if none.
pub fn kernel_floor_probe(alpha: f64, dim: usize) -> Result<f64> {
    let spec = KernelSpec::new(alpha, dim)?;
    let radii_y = [0.0, 0.5, 0.9, 0.99, 0.999];
    let fractions = [0.0, 0.25, 0.5, 0.75, 1.0];
    for j in 1..=20 {
        let eps = (-(j as f64)).exp2();
        let mut ok = true;
        'outer: for f in fractions {
            let mut x = vec![0.0; dim];
            x[0] = eps * f;
            for ry in radii_y {
                for i in 0..33 {
                    let t = -1.0 + 2.0 * i as f64 / 32.0;
                    let mut y = vec![0.0; dim];
                    y[0] = ry * t;
                    y[1] = ry * (1.0 - t * t).max(0.0).sqrt();
                    if kernel_eval(&spec, &x, &y)? < 0.5 {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return Ok(eps);
        }
    }
    Ok(0.0)
}

/// Sixty tuples in the plane, six for each part of the `b^q_β`, `b^∞_β` and
/// `h^∞` characterizations: for two base settings, a bounded tuple, one with
/// `c` half a unit above its bound, and one violating the integrability
/// condition by a quarter unit.
pub fn curated_suite() -> Vec<(OperatorParams, TargetSpace)> {
    use ExtExponent::{Finite as F, Infinite as I};
    // (target, alpha, beta, p, q)
    let bases: [(TargetSpace, f64, f64, ExtExponent, ExtExponent); 20] = [
        (TargetSpace::Besov, 0.0, 0.0, F(2.0), F(2.0)),
        (TargetSpace::Besov, 1.0, -0.5, F(1.5), F(3.0)),
        (TargetSpace::Besov, 0.0, 1.0, F(1.0), F(2.0)),
        (TargetSpace::Besov, -0.5, 0.0, F(1.0), F(1.0)),
        (TargetSpace::Besov, 0.0, 0.0, F(3.0), F(1.5)),
        (TargetSpace::Besov, 2.0, -2.0, F(4.0), F(2.0)),
        (TargetSpace::Besov, 0.0, 0.0, I, F(2.0)),
        (TargetSpace::Besov, 1.5, 0.5, I, F(1.0)),
        (TargetSpace::Bloch, 0.0, 1.0, F(2.0), I),
        (TargetSpace::Bloch, 1.0, 0.0, F(3.0), I),
        (TargetSpace::Bloch, 0.0, 1.0, F(1.0), I),
        (TargetSpace::Bloch, -0.5, 2.0, F(1.0), I),
        (TargetSpace::Bloch, 0.0, 1.0, I, I),
        (TargetSpace::Bloch, 2.0, 0.5, I, I),
        (TargetSpace::Hinf, 0.0, 0.0, F(2.0), I),
        (TargetSpace::Hinf, 1.0, 0.0, F(4.0), I),
        (TargetSpace::Hinf, 0.0, 0.0, F(1.0), I),
        (TargetSpace::Hinf, -0.5, 0.0, F(1.0), I),
        (TargetSpace::Hinf, 0.0, 0.0, I, I),
        (TargetSpace::Hinf, 1.0, 0.0, I, I),
    ];
    let mut out = Vec::with_capacity(60);
    for (target, alpha, beta, p, q) in bases {
        // b on the integrability boundary
        let b_edge = match p {
            F(p) if p == 1.0 => alpha,
            F(p) => (alpha + 1.0) / p - 1.0,
            I => alpha - 1.0,
        };
        let mk = |b: f64, c: f64| OperatorParams {
            b,
            c,
            alpha,
            beta,
            p,
            q,
            dim: 2,
        };
        let bound_of = |b: f64| {
            let probe = mk(b, 0.0);
            let v = classify(&probe, target).expect("suite tuple is well formed");
            v.c_inequality().expect("every part bounds c").rhs
        };
        let b_good = b_edge + 0.25;
        let b_bad = b_edge - 0.25;
        out.push((mk(b_good, bound_of(b_good) - 0.5), target));
        out.push((mk(b_good, bound_of(b_good) + 0.5), target));
        out.push((mk(b_bad, bound_of(b_bad) - 0.5), target));
    }
    out
}

/// Agreement counts over a list of tuples.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub tuples: usize,
    pub finiteness_agree: usize,
    pub ratio_compared: usize,
    pub ratio_agree: usize,
    /// Indices of tuples whose ratio probe disagreed.
    pub ratio_disagreements: Vec<usize>,
}

pub fn run_suite(tuples: &[(OperatorParams, TargetSpace)], settings: &ProbeSettings) -> Result<SuiteSummary> {
    let mut s = SuiteSummary {
        tuples: tuples.len(),
        ..Default::default()
    };
    for (i, (params, target)) in tuples.iter().enumerate() {
        let fin = finiteness_probe_with(params, *target, settings)?;
        if fin.evidence[0].agree == Some(true) {
            s.finiteness_agree += 1;
        }
        let ratio = ratio_probe_default(params, *target, settings)?;
        if let Some(agree) = ratio.evidence[0].agree {
            s.ratio_compared += 1;
            if agree {
                s.ratio_agree += 1;
            } else {
                s.ratio_disagreements.push(i);
            }
        }
    }
    Ok(s)
}
