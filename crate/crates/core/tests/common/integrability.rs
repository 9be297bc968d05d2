//! Analytic integrability predicates against the numerical refinement ladders.

use besov_core::operators::Evaluator;
use besov_core::probe::{integrable_predicate, membership_predicate};
use besov_core::quadrature::ladder::{ball_radial_ladder, radial_log_converges, radial_log_ladder, sup_ladder};
use besov_core::quadrature::LadderConfig;
use besov_core::{ExtExponent, TestFunction};

pub const MIN_SLACK: f64 = 0.05;

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl Tally {
    fn record(&mut self, label: String, analytic: bool, numeric: bool) {
        self.checked += 1;
        if analytic != numeric {
            self.mismatches.push(format!("{label}: analytic {analytic}, numeric {numeric}"));
        }
    }
}

fn configs() -> [LadderConfig; 2] {
    let c = LadderConfig::default();
    [c, c.doubled()]
}

/// Exponent/log-power pairs `(e, v)` straddling `e = -1` and, on it, `v = 1`,
/// each at least [`MIN_SLACK`] away from the boundary.
pub fn straddle() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for e in [-2.0, -1.5, -1.25, -1.1, -1.05, -0.95, -0.9, -0.5, 0.0, 1.5] {
        for v in [-2.0, -1.0, 0.0, 0.5, 1.0, 1.5, 3.0] {
            out.push((e, v));
        }
    }
    for v in [-2.0, -1.0, 0.0, 0.5, 0.9, 0.95, 1.05, 1.1, 1.5, 3.0] {
        out.push((-1.0, v));
    }
    out
}

/// `∫_0^1 (1 - t²)^u (1 + log 1/(1 - t²))^{-v} dt`.
pub fn radial_log(tally: &mut Tally) {
    for (u, v) in straddle() {
        for cfg in configs() {
            let numeric = radial_log_ladder(u, v, &cfg).result.is_finite();
            tally.record(format!("radial u={u} v={v} panels={}", cfg.panel_nodes), radial_log_converges(u, v), numeric);
        }
    }
}

/// `f_uv ∈ L^p_α`, finite and infinite `p`.
pub fn membership(tally: &mut Tally) {
    use ExtExponent::{Finite as F, Infinite as I};
    for alpha in [-0.5, 0.0, 2.0] {
        for p in [1.0, 2.0, 4.0] {
            for (e, pv) in straddle() {
                // α + p u = e, p v = pv
                let (u, v) = ((e - alpha) / p, pv / p);
                if alpha + p * u != e || p * v != pv {
                    continue;
                }
                for dim in [2, 3, 5] {
                    for cfg in configs() {
                        let numeric = ball_radial_ladder(dim, 0.0, alpha + p * u, p * v, &cfg).result.is_finite();
                        tally.record(
                            format!("member p={p} alpha={alpha} u={u} v={v} n={dim}"),
                            membership_predicate(u, v, F(p), alpha),
                            numeric,
                        );
                    }
                }
            }
        }
        let mut pairs = Vec::new();
        for s in [-1.0, -0.5, -0.05, 0.05, 0.5, 1.0] {
            for v in [-2.0, -0.1, 0.0, 0.1, 2.0] {
                pairs.push((s, v));
            }
        }
        for v in [-2.0, -0.5, -0.1, -0.05, 0.05, 0.1, 2.0] {
            pairs.push((0.0, v));
        }
        for (s, v) in pairs {
            let u = s - alpha;
            if alpha + u != s {
                continue;
            }
            for cfg in configs() {
                // log of (1 - r²)^{α+u} (1 + w)^{-v} at w = log 1/(1 - r²)
                let numeric = sup_ladder(|w| -(alpha + u) * w - v * w.ln_1p(), &cfg, 1e-3).result.is_finite();
                tally.record(
                    format!("member p=inf alpha={alpha} u={u} v={v}"),
                    membership_predicate(u, v, I, alpha),
                    numeric,
                );
            }
        }
    }
}

/// `T_bc f_uv(0) < ∞` through the operator evaluator.
pub fn operator_at_origin(tally: &mut Tally) {
    for dim in [2, 3] {
        let ev = Evaluator::new(dim).unwrap();
        let origin = vec![0.0; dim];
        for b in [-0.5, 0.0, 1.0] {
            for (e, v) in straddle() {
                let u = e - b;
                if b + u != e {
                    continue;
                }
                let f = TestFunction::new(u, v);
                let numeric = ev.apply_t(b, 0.7, &f, &origin).unwrap().is_finite();
                tally.record(format!("T f(0) b={b} u={u} v={v} n={dim}"), integrable_predicate(b + u, v), numeric);
            }
        }
    }
}
