use besov_core::expansion::{HarmonicExpansion, Term};
use besov_core::kernel::{gamma_coef, kernel_eval, zonal_harmonic, KernelSpec, DEFAULT_TOL};
use besov_core::quadrature::gauss::gauss_jacobi;
use besov_core::quadrature::{integrate_ball, BallQuadrature};
use besov_core::specfun::{gegenbauer, pochhammer};
use proptest::prelude::*;

fn point(dim: usize, max_radius: f64) -> impl Strategy<Value = Vec<f64>> {
    (proptest::collection::vec(-1.0f64..1.0, dim), 0.0..max_radius).prop_map(|(v, r)| {
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n < 1e-9 {
            vec![0.0; v.len()]
        } else {
            v.iter().map(|c| c * r / n).collect()
        }
    })
}

fn dim_and_points(max_radius: f64) -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>)> {
    (2usize..7).prop_flat_map(move |d| (Just(d), point(d, max_radius), point(d, max_radius)))
}

fn expansion(dim: usize) -> impl Strategy<Value = HarmonicExpansion> {
    proptest::collection::vec((0usize..12, point(dim, 1.0), -3.0f64..3.0), 1..6).prop_map(move |ts| {
        HarmonicExpansion::new(dim, ts.into_iter().map(|(k, y, c)| Term { k, y, c }).collect()).unwrap()
    })
}

fn legendre(k: usize, t: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, t);
    if k == 0 {
        return p0;
    }
    for j in 1..k {
        let j = j as f64;
        let p2 = ((2.0 * j + 1.0) * t * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn pochhammer_is_additive(a in 0.05f64..20.0, b1 in 0.0f64..10.0, b2 in 0.0f64..10.0) {
        let whole = pochhammer(a, b1 + b2).unwrap();
        let split = pochhammer(a, b1).unwrap() * pochhammer(a + b1, b2).unwrap();
        prop_assert!(close(whole, split, 1e-12), "{whole} vs {split}");
    }

    #[test]
    fn pochhammer_integer_steps_cross_poles(a in -10.0f64..10.0, b1 in 0u32..8, b2 in 0u32..8) {
        let (b1, b2) = (b1 as f64, b2 as f64);
        let whole = pochhammer(a, b1 + b2).unwrap();
        let split = pochhammer(a, b1).unwrap() * pochhammer(a + b1, b2).unwrap();
        prop_assert!((whole - split).abs() <= 1e-12 * whole.abs().max(1.0));
    }

    #[test]
    fn half_gegenbauer_is_legendre(k in 0usize..60, t in -1.0f64..1.0) {
        prop_assert!((gegenbauer(k, 0.5, t) - legendre(k, t)).abs() < 1e-12);
    }

    #[test]
    fn kernel_at_origin_is_one(alpha in -6.0f64..6.0, (dim, x, _y) in dim_and_points(0.999)) {
        let spec = KernelSpec::new(alpha, dim).unwrap();
        let zero = vec![0.0; dim];
        prop_assert!((kernel_eval(&spec, &x, &zero).unwrap() - 1.0).abs() <= DEFAULT_TOL);
        prop_assert!((kernel_eval(&spec, &zero, &x).unwrap() - 1.0).abs() <= DEFAULT_TOL);
    }

    #[test]
    fn kernel_is_symmetric(alpha in -6.0f64..6.0, (dim, x, y) in dim_and_points(0.95)) {
        let spec = KernelSpec::new(alpha, dim).unwrap();
        let a = kernel_eval(&spec, &x, &y).unwrap();
        let b = kernel_eval(&spec, &y, &x).unwrap();
        prop_assert!((a - b).abs() <= 2.0 * DEFAULT_TOL + 1e-13 * a.abs(), "{a} vs {b}");
    }

    #[test]
    fn zonal_harmonics_are_symmetric_and_homogeneous(k in 0usize..20, s in 0.1f64..1.0, (dim, x, y) in dim_and_points(1.0)) {
        let a = zonal_harmonic(k, &x, &y, dim);
        prop_assert!((a - zonal_harmonic(k, &y, &x, dim)).abs() <= 1e-9 * a.abs().max(1.0));
        let sx: Vec<f64> = x.iter().map(|c| c * s).collect();
        let scaled = zonal_harmonic(k, &sx, &y, dim);
        prop_assert!((scaled - s.powi(k as i32) * a).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn gamma_coefficients_grow_like_a_power(alpha in -5.0f64..1.7, dim in 2usize..4) {
        // the first correction is (1+α)(n+α)/2k, under 2% from k = 2^8 here
        let r: Vec<f64> = (8..=14)
            .map(|j| {
                let k = 1usize << j;
                gamma_coef(k, alpha, dim) / (k as f64).powf(1.0 + alpha)
            })
            .collect();
        for w in r.windows(2) {
            prop_assert!((w[1] / w[0] - 1.0).abs() < 0.02, "{r:?}");
        }
    }

    #[test]
    fn gamma_coefficients_are_positive_for_large_alpha(alpha in -1.0f64..8.0, k in 0usize..500, dim in 2usize..8) {
        prop_assert!(gamma_coef(k, alpha, dim) > 0.0);
    }

    #[test]
    fn d_composes_additively(f in expansion(3), s in -0.9f64..5.0, t in -0.5f64..3.0, z in -0.5f64..3.0) {
        prop_assume!(s + t > -0.9 && s + t + z > -0.9);
        let two_step = f.apply_d(s, t).apply_d(s + t, z);
        let one_step = f.apply_d(s, t + z);
        for (a, b) in two_step.terms().iter().zip(one_step.terms()) {
            prop_assert!(close(a.c, b.c, 1e-12) || (a.c - b.c).abs() < 1e-300);
        }
        let back = f.apply_d(s, t).apply_d(s + t, -t);
        for (a, b) in back.terms().iter().zip(f.terms()) {
            prop_assert!(close(a.c, b.c, 1e-12) || (a.c - b.c).abs() < 1e-300);
        }
    }

    #[test]
    fn d_is_linear(f in expansion(4), s in -0.9f64..4.0, t in -0.5f64..3.0, lambda in -5.0f64..5.0) {
        // equal up to the order of two roundings
        for (a, b) in f.scale(lambda).apply_d(s, t).terms().iter().zip(f.apply_d(s, t).scale(lambda).terms()) {
            prop_assert!(close(a.c, b.c, 4.0 * f64::EPSILON) || a.c == b.c);
        }
        prop_assert_eq!(f.apply_d(s, 0.0), f);
    }

    #[test]
    fn expansions_are_harmonic(f in expansion(3), x in point(3, 0.8)) {
        let h = 1e-3;
        let f0 = f.evaluate(&x);
        let mut lap = 0.0;
        for i in 0..3 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            lap += (f.evaluate(&xp) - 2.0 * f0 + f.evaluate(&xm)) / (h * h);
        }
        let scale: f64 = f.terms().iter().map(|t| t.c.abs() * (t.k as f64 + 1.0).powi(4)).sum();
        prop_assert!(lap.abs() <= 1e-4 * scale.max(1.0), "laplacian {lap}");
    }

    #[test]
    fn expansion_json_round_trips(f in expansion(2)) {
        prop_assert_eq!(HarmonicExpansion::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn jacobi_rule_is_exact_on_monomials(n in 2usize..40, a in -0.9f64..4.0, b in -0.9f64..4.0, m in 0usize..20) {
        prop_assume!(m < 2 * n);
        let rule = gauss_jacobi(n, a, b);
        let got = rule.integrate(|u| u.powi(m as i32));
        // Beta(a + m + 1, b + 1)
        let lb = |x: f64, y: f64| libm::lgamma(x) + libm::lgamma(y) - libm::lgamma(x + y);
        let want = lb(a + m as f64 + 1.0, b + 1.0).exp();
        prop_assert!(close(got, want, 1e-11), "{got} vs {want}");
    }

    #[test]
    fn polar_coordinates_for_radial_functions(dim in 2usize..4, k in 0u32..6, alpha in -0.9f64..3.0) {
        let rule = BallQuadrature::new(dim).unwrap().with_radial_nodes(32);
        let f = |x: &[f64]| x.iter().map(|c| c * c).sum::<f64>().powi(k as i32);
        let got = integrate_ball(&f, alpha, &rule).unwrap().value;
        // n ∫_0^1 r^{n-1+2k} (1-r²)^α dr = (n/2) B(n/2 + k, α + 1)
        let n = dim as f64;
        let lb = |x: f64, y: f64| libm::lgamma(x) + libm::lgamma(y) - libm::lgamma(x + y);
        let want = n / 2.0 * lb(n / 2.0 + k as f64, alpha + 1.0).exp();
        prop_assert!(close(got, want, 1e-10), "{got} vs {want}");
    }
}
