//! Log-gamma, Pochhammer symbols and Gegenbauer polynomials.

use crate::error::{Error, Result};

/// `log|Γ(x)|` together with the sign of `Γ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub fn value(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

pub fn log_gamma(x: f64) -> Result<SignedLog> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    let (ln_abs, sign) = libm::lgamma_r(x);
    Ok(SignedLog {
        ln_abs,
        sign: if sign < 0 { -1.0 } else { 1.0 },
    })
}

/// Rising factorial `(a)_b = Γ(a+b)/Γ(a)`.
///
/// Integer `b >= 0` goes through the finite product `a(a+1)...(a+b-1)`, which
/// stays exact when `a` is a non-positive integer.
pub fn pochhammer(a: f64, b: f64) -> Result<f64> {
    if b >= 0.0 && b.fract() == 0.0 && b <= 1024.0 {
        return Ok((0..b as u64).map(|j| a + j as f64).product());
    }
    Ok(ln_pochhammer(a, b)?.value())
}

/// `(a)_b` in signed log form.
pub fn ln_pochhammer(a: f64, b: f64) -> Result<SignedLog> {
    if b >= 0.0 && b.fract() == 0.0 && is_nonpositive_integer(a) {
        // the product passes through zero iff -a < b
        if -a < b {
            return Ok(SignedLog {
                ln_abs: f64::NEG_INFINITY,
                sign: 1.0,
            });
        }
        let sign = if (b as u64) % 2 == 0 { 1.0 } else { -1.0 };
        let ln_abs = (0..b as u64).map(|j| (a + j as f64).abs().ln()).sum();
        return Ok(SignedLog { ln_abs, sign });
    }
    let top = log_gamma(a + b)?;
    let bottom = log_gamma(a)?;
    Ok(SignedLog {
        ln_abs: top.ln_abs - bottom.ln_abs,
        sign: top.sign * bottom.sign,
    })
}

/// Gegenbauer polynomial `C_k^λ(t)` by forward recurrence in `k`.
pub fn gegenbauer(k: usize, lambda: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * t;
    for j in 2..=k {
        let jf = j as f64;
        let next = (2.0 * t * (jf + lambda - 1.0) * cur - (jf + 2.0 * lambda - 2.0) * prev) / jf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Iterator over `C_0^λ(t), C_1^λ(t), ...`.
#[derive(Debug, Clone)]
pub struct GegenbauerSeq {
    lambda: f64,
    t: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl GegenbauerSeq {
    pub fn new(lambda: f64, t: f64) -> Self {
        Self {
            lambda,
            t,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for GegenbauerSeq {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let k = self.k as f64 + 1.0;
        let next = if self.k == 0 {
            2.0 * self.lambda * self.t
        } else {
            (2.0 * self.t * (k + self.lambda - 1.0) * self.cur
                - (k + 2.0 * self.lambda - 2.0) * self.prev)
                / k
        };
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

/// `ln B(a, b)` for positive arguments.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a)?.ln_abs + log_gamma(b)?.ln_abs - log_gamma(a + b)?.ln_abs)
}
