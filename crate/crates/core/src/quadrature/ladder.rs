//! Refinement ladders for radial integrals that may diverge at the boundary.
//!
//! Radial integrals over `[0, 1)` are rewritten in `w = log 1/(1 - r²)`, which
//! sends the boundary to `w = ∞` and turns `(1 - r²)^e (1 + log 1/(1 - r²))^{-v}`
//! into `e^{-(e+1) w} (1 + w)^{-v}` times the Jacobian. The half line is cut
//! into `[0, 1]` and dyadic panels `[2^{j-1}, 2^j]`; the sequence of panel
//! contributions is the ladder. Integrals that converge have contributions
//! that eventually shrink geometrically; divergent ones level off or grow,
//! including the logarithmic borderline `e = -1, v = 1`.

use serde::{Deserialize, Serialize};

use super::gauss::{gauss_jacobi, gauss_legendre, Rule1d};

/// Outcome of an integral that is allowed to diverge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Integral {
    Finite(f64),
    Divergent,
}

impl Integral {
    pub fn is_finite(&self) -> bool {
        matches!(self, Integral::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            Integral::Finite(v) => Some(v),
            Integral::Divergent => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderConfig {
    /// Number of dyadic panels; the last one ends at `w = 2^depth`.
    pub depth: usize,
    /// Gauss-Legendre nodes per sub-panel.
    pub panel_nodes: usize,
    /// Ratio of the last two panel contributions at or above which the
    /// integral is declared divergent.
    pub divergence_ratio: f64,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self {
            depth: 40,
            panel_nodes: 16,
            divergence_ratio: 0.999,
        }
    }
}

impl LadderConfig {
    pub fn doubled(&self) -> Self {
        Self {
            panel_nodes: 2 * self.panel_nodes,
            ..*self
        }
    }
}

const SUBPANELS: usize = 8;

/// Panel-by-panel record of a ladder run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ladder {
    /// `(w_end, contribution)` for `[0, 1]` and each dyadic panel.
    pub steps: Vec<(f64, f64)>,
    pub result: Integral,
}

impl Ladder {
    /// Running partial sums, one per step.
    pub fn partial_sums(&self) -> Vec<(f64, f64)> {
        let mut acc = 0.0;
        self.steps
            .iter()
            .map(|&(w, d)| {
                acc += d;
                (w, acc)
            })
            .collect()
    }
}

/// Nodes and weights of the ladder for `∫_0^{2^depth} w^a g(w) dw`, grouped by
/// panel. The first group carries the factor `w^a` in its weights; later
/// groups expect the caller to include it.
pub(crate) fn panels(a: f64, cfg: &LadderConfig) -> Vec<Vec<(f64, f64)>> {
    let first = gauss_jacobi(cfg.panel_nodes.max(2), a, 0.0);
    let gl = gauss_legendre(cfg.panel_nodes.max(2));
    let mut out = vec![first.nodes.iter().copied().zip(first.weights.iter().copied()).collect()];
    for j in 1..=cfg.depth {
        out.push(dyadic_panel(&gl, j));
    }
    out
}

fn dyadic_panel(gl: &Rule1d, j: usize) -> Vec<(f64, f64)> {
    let lo = (j as f64 - 1.0).exp2();
    let h = lo / SUBPANELS as f64;
    (0..SUBPANELS)
        .flat_map(|s| gl.mapped(lo + s as f64 * h, lo + (s + 1) as f64 * h))
        .collect()
}

/// `∫_0^∞ w^a e^{G(w)} dw` with `a > -1`, given `G` as a log-integrand
/// (`-∞` allowed). Divergence is read off the last two panels.
pub fn log_ladder(a: f64, log_g: impl Fn(f64) -> f64, cfg: &LadderConfig) -> Ladder {
    let mut steps = Vec::with_capacity(cfg.depth + 1);
    for (j, panel) in panels(a, cfg).into_iter().enumerate() {
        let d: f64 = if j == 0 {
            panel.iter().map(|&(w, wt)| wt * log_g(w).exp()).sum()
        } else {
            panel
                .iter()
                .map(|&(w, wt)| wt * (a * w.ln() + log_g(w)).exp())
                .sum()
        };
        steps.push(((j as f64).exp2().max(1.0), d));
    }
    let result = judge(&steps, cfg.divergence_ratio);
    Ladder { steps, result }
}

fn judge(steps: &[(f64, f64)], threshold: f64) -> Integral {
    if steps.iter().any(|(_, d)| !d.is_finite()) {
        return Integral::Divergent;
    }
    let total: f64 = steps.iter().map(|s| s.1).sum();
    let n = steps.len();
    let (last, prev) = (steps[n - 1].1, steps[n - 2].1);
    if last == 0.0 {
        return Integral::Finite(total);
    }
    if prev == 0.0 {
        return Integral::Divergent;
    }
    let ratio = last / prev;
    if ratio >= threshold {
        return Integral::Divergent;
    }
    Integral::Finite(total + last * ratio / (1.0 - ratio))
}

/// `sup_{w >= 0} e^{G(w)}` sampled on the ladder nodes together with the
/// panel ends; unbounded when the running supremum still grows over the
/// last panel by more than `1 + growth_tol`.
pub fn sup_ladder(log_g: impl Fn(f64) -> f64, cfg: &LadderConfig, growth_tol: f64) -> Ladder {
    let mut steps = Vec::with_capacity(cfg.depth + 1);
    let mut running = log_g(0.0);
    for (j, panel) in panels(0.0, cfg).into_iter().enumerate() {
        let end = (j as f64).exp2().max(1.0);
        for w in panel.iter().map(|p| p.0).chain([end]) {
            running = running.max(log_g(w));
        }
        steps.push((end, running.exp()));
    }
    let n = steps.len();
    let (last, prev) = (steps[n - 1].1, steps[n - 2].1);
    let result = if !last.is_finite() || last > prev * (1.0 + growth_tol) {
        Integral::Divergent
    } else {
        Integral::Finite(last)
    };
    Ladder { steps, result }
}

/// Ladder for `∫_0^1 n r^{n-1+m} (1 - r²)^e (1 + log 1/(1 - r²))^{-v} dr`,
/// the radial part of integrating `|x|^m f_{ev}` against `ν`.
pub fn ball_radial_ladder(dim: usize, m: f64, e: f64, v: f64, cfg: &LadderConfig) -> Ladder {
    let n = dim as f64;
    let a = (n + m) / 2.0 - 1.0;
    log_ladder(
        a,
        move |w| {
            (n / 2.0).ln() + a * ln_one_minus_exp_over(w) - (e + 1.0) * w - v * w.ln_1p()
        },
        cfg,
    )
}

/// `ln((1 - e^{-w}) / w)`, smooth at `w = 0`.
pub(crate) fn ln_one_minus_exp_over(w: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        (-(-w).exp_m1() / w).ln()
    }
}

/// Whether `∫_0^1 (1 - t²)^u (1 + log 1/(1 - t²))^{-v} dt` converges.
pub fn radial_log_converges(u: f64, v: f64) -> bool {
    u > -1.0 || (u == -1.0 && v > 1.0)
}

/// `∫_0^1 (1 - t²)^u (1 + log 1/(1 - t²))^{-v} dt`; the verdict is analytic,
/// the value comes from the ladder.
pub fn radial_log_integral(u: f64, v: f64) -> Integral {
    if !radial_log_converges(u, v) {
        return Integral::Divergent;
    }
    let ladder = radial_log_ladder(u, v, &LadderConfig::default());
    match ladder.result {
        Integral::Finite(x) => Integral::Finite(x),
        // v barely above 1 converges too slowly for the geometric tail
        // estimate; the partial sum is the best available value.
        Integral::Divergent => Integral::Finite(ladder.steps.iter().map(|s| s.1).sum()),
    }
}

/// The ladder behind [`radial_log_integral`], exposed for refinement checks.
pub fn radial_log_ladder(u: f64, v: f64, cfg: &LadderConfig) -> Ladder {
    // dt = e^{-w} / (2 sqrt(1 - e^{-w})) dw
    log_ladder(
        -0.5,
        move |w| -(u + 1.0) * w - v * w.ln_1p() - std::f64::consts::LN_2 - 0.5 * ln_one_minus_exp_over(w),
        cfg,
    )
}
