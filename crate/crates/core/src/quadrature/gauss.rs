//! Gauss-Jacobi rules on `[0, 1]` by Golub-Welsch, with Christoffel weights.

use crate::specfun::ln_beta;

/// Nodes and weights of a one-dimensional rule, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1d {
    /// Affine image of the rule on `[lo, hi]` (weights scaled by the length).
    pub fn mapped(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = hi - lo;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (lo + h * x, h * w))
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }
}

/// Recurrence data `(A_k, s_k)` of the orthonormal polynomials for the weight
/// `u^left (1-u)^right` on `[0, 1]`: `s_{k+1} p_{k+1} = (u - A_k) p_k - s_k p_{k-1}`.
fn recurrence(n: usize, left: f64, right: f64) -> (Vec<f64>, Vec<f64>) {
    // classical Jacobi coefficients on [-1, 1] for (1-x)^al (1+x)^be
    let (al, be) = (right, left);
    let ab = al + be;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        let a = if k == 0 {
            (be - al) / (ab + 2.0)
        } else {
            (be * be - al * al) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        diag.push((a + 1.0) / 2.0);
        let j = kf + 1.0;
        let b = if k == 0 {
            4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * j + ab;
            4.0 * j * (j + al) * (j + be) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off.push(b.sqrt() / 2.0);
    }
    (diag, off)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, sub: &[f64]) -> Vec<f64> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&sub[..n - 1]);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations < 100, "QL iteration did not converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d
}

/// `n`-point Gauss rule for `∫_0^1 u^left (1-u)^right f(u) du`.
///
/// Panics unless `left, right > -1` and `n >= 1`.
pub fn gauss_jacobi(n: usize, left: f64, right: f64) -> Rule1d {
    assert!(n >= 1 && left > -1.0 && right > -1.0, "bad Gauss-Jacobi request");
    let (diag, off) = recurrence(n, left, right);
    let mut nodes = tridiagonal_eigenvalues(diag.clone(), &off);
    nodes.sort_by(|a, b| a.total_cmp(b));
    let mu0 = ln_beta(left + 1.0, right + 1.0).expect("positive beta arguments").exp();
    let p0 = 1.0 / mu0.sqrt();
    let weights = nodes
        .iter()
        .map(|&u| {
            // Christoffel number: 1 / Σ_{k<n} p_k(u)^2
            let (mut prev, mut cur) = (0.0, p0);
            let mut sum = cur * cur;
            for k in 0..n - 1 {
                let s_prev = if k == 0 { 0.0 } else { off[k - 1] };
                let next = ((u - diag[k]) * cur - s_prev * prev) / off[k];
                prev = cur;
                cur = next;
                sum += cur * cur;
            }
            1.0 / sum
        })
        .collect();
    Rule1d { nodes, weights }
}

/// Gauss-Legendre on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Rule1d {
    gauss_jacobi(n, 0.0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_low_order() {
        let r = gauss_legendre(2);
        let d = 0.5 / 3f64.sqrt();
        assert!((r.nodes[0] - (0.5 - d)).abs() < 1e-15);
        assert!((r.nodes[1] - (0.5 + d)).abs() < 1e-15);
        assert!((r.weights[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jacobi_moments_exact() {
        for (left, right) in [(0.0, 0.0), (0.5, -0.5), (-0.5, 2.3), (1.0, -0.9), (0.0, 7.5)] {
            for n in [1, 3, 10, 40, 128] {
                let rule = gauss_jacobi(n, left, right);
                assert!(rule.nodes.iter().all(|&u| u > 0.0 && u < 1.0));
                for j in 0..2 * n {
                    let exact = ln_beta(left + j as f64 + 1.0, right + 1.0).unwrap().exp();
                    let got = rule.integrate(|u| u.powi(j as i32));
                    assert!((got / exact - 1.0).abs() < 1e-11, "{left} {right} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn weights_positive_and_sum_to_beta() {
        let rule = gauss_jacobi(300, 0.5, -0.75);
        assert!(rule.weights.iter().all(|&w| w > 0.0));
        let total: f64 = rule.weights.iter().sum();
        let exact = ln_beta(1.5, 0.25).unwrap().exp();
        assert!((total / exact - 1.0).abs() < 1e-12);
    }
}
