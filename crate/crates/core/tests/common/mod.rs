//! Checks shared by the classifier tests and the acceptance target.
#![allow(dead_code)]

use std::collections::BTreeSet;

use besov_core::{classify, reduce_to_unweighted, ExtExponent, OperatorParams, TargetSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod integrability;

use ExtExponent::{Finite as F, Infinite as I};

pub const EPS: f64 = 1e-9;

pub fn params(b: f64, c: f64, alpha: f64, beta: f64, p: ExtExponent, q: ExtExponent, dim: usize) -> OperatorParams {
    OperatorParams {
        b,
        c,
        alpha,
        beta,
        p,
        q,
        dim,
    }
}

/// Regime label from the exponents alone.
pub fn expected_regime(p: ExtExponent, q: ExtExponent) -> &'static str {
    match (p, q) {
        (F(p), _) if p == 1.0 => "(ii)",
        (I, I) => "(iii)",
        (I, F(_)) => "(iv)",
        (F(_), I) => "(i)",
        (F(p), F(q)) if p <= q => "(i)",
        _ => "(iii)",
    }
}

/// Whether the bound on `c` is strict, restated from the characterizations.
pub fn expected_strict(target: TargetSpace, regime: &str, beta: f64) -> bool {
    match target {
        TargetSpace::Besov | TargetSpace::Lebesgue => matches!(regime, "(iii)" | "(iv)"),
        TargetSpace::Bloch => false,
        TargetSpace::Hinf => regime != "(ii)",
        TargetSpace::WeightedLinf => beta == 0.0 && regime != "(ii)",
    }
}

/// `b` on the boundary of the condition not involving `c`.
pub fn first_edge(alpha: f64, p: ExtExponent) -> f64 {
    match p {
        F(p) if p == 1.0 => alpha,
        F(p) => (alpha + 1.0) / p - 1.0,
        I => alpha - 1.0,
    }
}

fn exponents(target: TargetSpace) -> Vec<(ExtExponent, ExtExponent)> {
    let ps = [F(1.0), F(2.0), F(4.0), I];
    let qs: Vec<ExtExponent> = if target.finite_q() {
        vec![F(1.0), F(2.0), F(8.0)]
    } else {
        vec![I]
    };
    ps.iter()
        .flat_map(|&p| qs.iter().map(move |&q| (p, q)))
        .collect()
}

fn betas(target: TargetSpace) -> Vec<f64> {
    match target {
        TargetSpace::Besov => vec![-3.0, 0.0, 1.5],
        TargetSpace::Lebesgue => vec![-0.5, 0.0, 1.5],
        TargetSpace::Bloch => vec![-0.5, 0.0, 2.0],
        TargetSpace::Hinf => vec![0.0],
        TargetSpace::WeightedLinf => vec![0.0, 2f64.powi(-30), 0.5],
    }
}

/// Outcome of the boundary perturbation sweep.
pub struct BoundaryReport {
    pub checks: usize,
    pub failures: Vec<String>,
    pub parts: BTreeSet<String>,
}

pub fn all_parts() -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    for t in ["besov", "lebesgue"] {
        for r in ["(i)", "(ii)", "(iii)", "(iv)"] {
            s.insert(format!("{t}{r}"));
        }
    }
    for t in ["bloch", "hinf", "weighted-linf"] {
        for r in ["(i)", "(ii)", "(iii)"] {
            s.insert(format!("{t}{r}"));
        }
    }
    s.insert("lebesgue(beta<=-1)".into());
    s.insert("weighted-linf(beta<0)".into());
    s
}

fn expect(rep: &mut BoundaryReport, label: String, p: OperatorParams, target: TargetSpace, bounded: bool) {
    let v = classify(&p, target).expect("well-formed tuple");
    rep.parts.insert(v.theorem_part.clone());
    rep.checks += 1;
    if v.bounded != bounded {
        rep.failures.push(format!("{label}: expected bounded={bounded}, got {v:?}"));
    }
}

/// ±`EPS` perturbations across every part: the `c` bound, the first
/// condition, the `p = 1` alternatives, and the weight obstructions.
pub fn boundary_sweep() -> BoundaryReport {
    let mut rep = BoundaryReport {
        checks: 0,
        failures: Vec::new(),
        parts: BTreeSet::new(),
    };
    for target in TargetSpace::ALL {
        for (p, q) in exponents(target) {
            let regime = expected_regime(p, q);
            for beta in betas(target) {
                for alpha in [-0.5, 0.5, 3.0] {
                    for dim in [2, 3] {
                        let edge = first_edge(alpha, p);
                        let mk = |b: f64, c: f64| params(b, c, alpha, beta, p, q, dim);
                        let bound_at = |b: f64| {
                            classify(&mk(b, 0.0), target)
                                .expect("well-formed tuple")
                                .c_inequality()
                                .expect("c bound")
                                .rhs
                        };
                        let tag = format!("{target}{regime} a={alpha} beta={beta} p={p} q={q} n={dim}");
                        let strict = expected_strict(target, regime, beta);

                        // the c bound, away from the first boundary
                        let b = edge + 1.0;
                        let bound = bound_at(b);
                        expect(&mut rep, format!("{tag} c=bound"), mk(b, bound), target, !strict);
                        expect(&mut rep, format!("{tag} c=bound+eps"), mk(b, bound + EPS), target, false);
                        expect(&mut rep, format!("{tag} c=bound-eps"), mk(b, bound - EPS), target, true);

                        if regime == "(ii)" {
                            // alpha < b with c <= bound, or alpha <= b with c < bound
                            let bound = bound_at(edge);
                            expect(&mut rep, format!("{tag} b=alpha c<bound"), mk(edge, bound - EPS), target, true);
                            expect(&mut rep, format!("{tag} b=alpha c=bound"), mk(edge, bound), target, false);
                            let bp = edge + EPS;
                            expect(&mut rep, format!("{tag} b>alpha c=bound"), mk(bp, bound_at(bp)), target, true);
                            let bm = edge - EPS;
                            expect(&mut rep, format!("{tag} b<alpha"), mk(bm, bound_at(bm) - 1.0), target, false);
                        } else {
                            let v = classify(&mk(edge, 0.0), target).unwrap();
                            let first = v.first_condition().unwrap();
                            if first.lhs != first.rhs {
                                rep.failures.push(format!("{tag}: edge not exact ({} vs {})", first.lhs, first.rhs));
                            }
                            expect(&mut rep, format!("{tag} b=edge"), mk(edge, bound_at(edge) - 1.0), target, false);
                            let bp = edge + EPS;
                            expect(&mut rep, format!("{tag} b=edge+eps"), mk(bp, bound_at(bp) - 1.0), target, true);
                        }
                    }
                }
            }
        }
    }
    // weight obstructions
    let l = |beta: f64| params(1.0, -5.0, 0.0, beta, F(2.0), F(2.0), 2);
    expect(&mut rep, "lebesgue beta=-1".into(), l(-1.0), TargetSpace::Lebesgue, false);
    expect(&mut rep, "lebesgue beta=-1+eps".into(), l(-1.0 + EPS), TargetSpace::Lebesgue, true);
    let w = |beta: f64| params(1.0, -5.0, 0.0, beta, F(2.0), I, 2);
    expect(&mut rep, "weighted-linf beta=-eps".into(), w(-EPS), TargetSpace::WeightedLinf, false);
    expect(&mut rep, "weighted-linf beta=0".into(), w(0.0), TargetSpace::WeightedLinf, true);
    rep
}

fn random_exponent(rng: &mut ChaCha8Rng, allow_inf: bool) -> ExtExponent {
    match rng.gen_range(0..if allow_inf { 4 } else { 3 }) {
        0 => F(1.0),
        1 => F(rng.gen_range(1.0..2.0)),
        2 => F(rng.gen_range(1.0..8.0)),
        _ => I,
    }
}

/// A random tuple for one of the `b^q_β`, `b^∞_β`, `h^∞` targets.
pub fn random_harmonic_tuple(rng: &mut ChaCha8Rng) -> (OperatorParams, TargetSpace) {
    let target = [TargetSpace::Besov, TargetSpace::Bloch, TargetSpace::Hinf][rng.gen_range(0..3)];
    let p = random_exponent(rng, true);
    let q = if target.finite_q() { random_exponent(rng, false) } else { I };
    let beta = if target == TargetSpace::Hinf { 0.0 } else { rng.gen_range(-4.0..4.0) };
    let tuple = params(
        rng.gen_range(-4.0..4.0),
        rng.gen_range(-8.0..8.0),
        rng.gen_range(-4.0..4.0),
        beta,
        p,
        q,
        rng.gen_range(2..=6),
    );
    (tuple, target)
}

/// Tuples whose verdict changes under the weight-removing shift.
pub fn metamorphic_violations(count: usize, seed: u64) -> Vec<(OperatorParams, TargetSpace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..count {
        let (p, target) = random_harmonic_tuple(&mut rng);
        let a = classify(&p, target).unwrap().bounded;
        let b = classify(&reduce_to_unweighted(&p), target).unwrap().bounded;
        if a != b {
            bad.push((p, target));
        }
    }
    bad
}

/// Tuples where the `b^q_β` (resp. `b^∞_β`) verdict differs from the
/// `L^q` (resp. `L^∞_1`) verdict after the composition shift of `c`.
pub fn composition_violations(count: usize, seed: u64) -> Vec<(OperatorParams, TargetSpace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..count {
        let (p, target) = random_harmonic_tuple(&mut rng);
        let (shifted, other) = match target {
            TargetSpace::Besov => (
                OperatorParams {
                    c: p.c - p.beta / p.q.as_f64(),
                    beta: 0.0,
                    ..p
                },
                TargetSpace::Lebesgue,
            ),
            TargetSpace::Bloch => (
                OperatorParams {
                    c: p.c - p.beta + 1.0,
                    beta: 1.0,
                    ..p
                },
                TargetSpace::WeightedLinf,
            ),
            _ => continue,
        };
        let a = classify(&p, target).unwrap().bounded;
        let b = classify(&shifted, other).unwrap().bounded;
        if a != b {
            bad.push((p, target));
        }
    }
    bad
}
