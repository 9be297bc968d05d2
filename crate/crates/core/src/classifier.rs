//! Exact boundedness verdicts for `T_bc : L^p_α → X` where `X` is a harmonic
//! Bergman-Besov space `b^q_β`, a weighted Bloch space `b^∞_β`, `h^∞`, a
//! weighted Lebesgue space `L^q_β` or `ℒ^∞_β`.
//!
//! Every part of every characterization is a short list of inequalities; the
//! verdict is bounded exactly when all of them hold. The two-way "or" of the
//! `p = 1` parts is rewritten as three inequalities:
//! `α <= b`, `c <= X`, and `(b - α) + (X - c) > 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExtExponent;
use crate::operators::OperatorParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetSpace {
    /// `b^q_β`, `q < ∞`.
    Besov,
    /// `b^∞_β`.
    Bloch,
    /// `h^∞`; the weight `β` is ignored.
    Hinf,
    /// `L^q_β`, `q < ∞`.
    Lebesgue,
    /// `ℒ^∞_β`.
    WeightedLinf,
}

impl TargetSpace {
    pub const ALL: [TargetSpace; 5] = [
        TargetSpace::Besov,
        TargetSpace::Bloch,
        TargetSpace::Hinf,
        TargetSpace::Lebesgue,
        TargetSpace::WeightedLinf,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TargetSpace::Besov => "besov",
            TargetSpace::Bloch => "bloch",
            TargetSpace::Hinf => "hinf",
            TargetSpace::Lebesgue => "lebesgue",
            TargetSpace::WeightedLinf => "weighted-linf",
        }
    }

    /// Whether the target exponent is finite.
    pub fn finite_q(&self) -> bool {
        matches!(self, TargetSpace::Besov | TargetSpace::Lebesgue)
    }

    /// Whether the target consists of harmonic functions.
    pub fn is_harmonic(&self) -> bool {
        matches!(self, TargetSpace::Besov | TargetSpace::Bloch | TargetSpace::Hinf)
    }
}

impl fmt::Display for TargetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TargetSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "besov" => Ok(TargetSpace::Besov),
            "bloch" => Ok(TargetSpace::Bloch),
            "hinf" | "h-inf" => Ok(TargetSpace::Hinf),
            "lebesgue" => Ok(TargetSpace::Lebesgue),
            "weighted-linf" | "linf" => Ok(TargetSpace::WeightedLinf),
            other => Err(Error::Domain(format!("unknown target space {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = ">=")]
    GreaterEq,
}

impl Relation {
    fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Less => lhs < rhs,
            Relation::LessEq => lhs <= rhs,
            Relation::Greater => lhs > rhs,
            Relation::GreaterEq => lhs >= rhs,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Less | Relation::Greater)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: f64,
    pub rel: Relation,
    pub rhs: f64,
    pub ok: bool,
}

impl Inequality {
    fn new(name: &str, lhs: f64, rel: Relation, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rel,
            rhs,
            ok: rel.holds(lhs, rhs),
        }
    }

    /// Signed distance to failure: positive when satisfied with room.
    pub fn slack(&self) -> f64 {
        match self.rel {
            Relation::Less | Relation::LessEq => self.rhs - self.lhs,
            Relation::Greater | Relation::GreaterEq => self.lhs - self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub bounded: bool,
    pub theorem_part: String,
    pub inequalities: Vec<Inequality>,
    pub notes: String,
}

impl Verdict {
    fn from_list(part: String, inequalities: Vec<Inequality>, notes: String) -> Self {
        Self {
            bounded: inequalities.iter().all(|i| i.ok),
            theorem_part: part,
            inequalities,
            notes,
        }
    }

    /// The inequality with the smallest slack, if any.
    pub fn binding(&self) -> Option<&Inequality> {
        self.inequalities
            .iter()
            .min_by(|a, b| a.slack().total_cmp(&b.slack()))
    }

    /// The upper bound on `c` of the matched part, if it has one.
    pub fn c_inequality(&self) -> Option<&Inequality> {
        self.inequalities.iter().find(|i| i.name.starts_with("c "))
    }

    /// The condition not involving `c` (integrability of the kernel against
    /// the source space).
    pub fn first_condition(&self) -> Option<&Inequality> {
        self.inequalities
            .iter()
            .find(|i| !i.name.starts_with("c ") && i.name != "corner")
    }
}

pub fn conjugate(p: ExtExponent) -> ExtExponent {
    p.conjugate()
}

/// Which of the inequality lists applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    /// `1 < p <= q` (or `q = ∞` and `1 < p < ∞`).
    I,
    /// `p = 1`.
    Ii,
    /// `q < p < ∞`, or `p = ∞` for `q = ∞` targets.
    Iii,
    /// `q < p = ∞`.
    Iv,
}

fn regime(p: ExtExponent, q: ExtExponent) -> Regime {
    match (p, q) {
        (ExtExponent::Finite(p), _) if p == 1.0 => Regime::Ii,
        (ExtExponent::Infinite, ExtExponent::Infinite) => Regime::Iii,
        (ExtExponent::Infinite, ExtExponent::Finite(_)) => Regime::Iv,
        (ExtExponent::Finite(_), ExtExponent::Infinite) => Regime::I,
        (ExtExponent::Finite(p), ExtExponent::Finite(q)) => {
            if p <= q {
                Regime::I
            } else {
                Regime::Iii
            }
        }
    }
}

fn roman(r: Regime) -> &'static str {
    match r {
        Regime::I => "(i)",
        Regime::Ii => "(ii)",
        Regime::Iii => "(iii)",
        Regime::Iv => "(iv)",
    }
}

fn validate(params: &OperatorParams, target: TargetSpace) -> Result<()> {
    let reals = [params.b, params.c, params.alpha, params.beta];
    if reals.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidRegime("b, c, alpha, beta must be finite".into()));
    }
    if params.dim < 2 {
        return Err(Error::InvalidRegime(format!("dimension must be >= 2, got {}", params.dim)));
    }
    for e in [params.p, params.q] {
        if let ExtExponent::Finite(x) = e {
            if !(x >= 1.0 && x.is_finite()) {
                return Err(Error::InvalidRegime(format!("exponent {x} outside [1, inf]")));
            }
        }
    }
    if target.finite_q() == params.q.is_infinite() {
        return Err(Error::InvalidRegime(format!(
            "target {target} needs q {}",
            if target.finite_q() { "< inf" } else { "= inf" }
        )));
    }
    Ok(())
}

/// Bounded / unbounded verdict with the inequality list it rests on.
pub fn classify(params: &OperatorParams, target: TargetSpace) -> Result<Verdict> {
    use Relation::*;
    validate(params, target)?;
    let OperatorParams { b, c, alpha, beta, p, q, dim } = *params;
    let n = dim as f64;

    match target {
        TargetSpace::Lebesgue if beta <= -1.0 => {
            return Ok(Verdict::from_list(
                "lebesgue(beta<=-1)".into(),
                vec![Inequality::new("beta > -1", beta, Greater, -1.0)],
                "L^q_beta with beta <= -1 contains no nonzero harmonic function, so no T_bc is bounded into it".into(),
            ));
        }
        TargetSpace::WeightedLinf if beta < 0.0 => {
            return Ok(Verdict::from_list(
                "weighted-linf(beta<0)".into(),
                vec![Inequality::new("beta >= 0", beta, GreaterEq, 0.0)],
                "weighted L^inf with beta < 0 contains no nonzero harmonic function, so no T_bc is bounded into it".into(),
            ));
        }
        _ => {}
    }

    let r = regime(p, q);
    let part = format!("{}{}", target.name(), roman(r));
    let mut notes = String::new();

    // Bound on c, and whether it is strict, per target and regime.
    let (bound, mut strict) = match (target, r) {
        (TargetSpace::Besov | TargetSpace::Lebesgue, Regime::I) => {
            (b + q.div(n + beta) - p.div(n + alpha), false)
        }
        (TargetSpace::Besov | TargetSpace::Lebesgue, Regime::Ii) => (b + q.div(n + beta) - (n + alpha), false),
        (TargetSpace::Besov | TargetSpace::Lebesgue, Regime::Iii) => {
            (b + q.div(1.0 + beta) - p.div(1.0 + alpha), true)
        }
        (TargetSpace::Besov | TargetSpace::Lebesgue, Regime::Iv) => (b + q.div(beta + 1.0) - alpha, true),
        (TargetSpace::Bloch | TargetSpace::WeightedLinf, Regime::I) => (b + beta - p.div(n + alpha), false),
        (TargetSpace::Bloch | TargetSpace::WeightedLinf, Regime::Ii) => (b + beta - (n + alpha), false),
        (TargetSpace::Bloch | TargetSpace::WeightedLinf, Regime::Iii) => (b + beta - alpha, false),
        (TargetSpace::Hinf, Regime::I) => (b - p.div(n + alpha), true),
        (TargetSpace::Hinf, Regime::Ii) => (b - (n + alpha), false),
        (TargetSpace::Hinf, Regime::Iii) => (b - alpha, true),
        (_, Regime::Iv) => unreachable!("q = inf targets never meet regime (iv)"),
    };
    if target == TargetSpace::WeightedLinf && beta == 0.0 && r != Regime::Ii {
        strict = true;
        notes.push_str("beta = 0: the bound on c is strict");
    }

    let mut list = Vec::with_capacity(3);
    match r {
        Regime::Ii => {
            list.push(Inequality::new("alpha <= b", alpha, LessEq, b));
            list.push(Inequality::new("c <= bound", c, LessEq, bound));
            list.push(Inequality::new("corner", (b - alpha) + (bound - c), Greater, 0.0));
            if !notes.is_empty() {
                notes.push_str("; ");
            }
            notes.push_str("p = 1: alpha < b with c <= bound, or alpha <= b with c < bound");
        }
        Regime::I | Regime::Iii if !p.is_infinite() => {
            let pf = p.as_f64();
            list.push(Inequality::new("alpha + 1 < p(b + 1)", alpha + 1.0, Less, pf * (b + 1.0)));
            let name = if strict { "c < bound" } else { "c <= bound" };
            list.push(Inequality::new(name, c, if strict { Less } else { LessEq }, bound));
        }
        _ => {
            list.push(Inequality::new("alpha - 1 < b", alpha - 1.0, Less, b));
            let name = if strict { "c < bound" } else { "c <= bound" };
            list.push(Inequality::new(name, c, if strict { Less } else { LessEq }, bound));
        }
    }
    Ok(Verdict::from_list(part, list, notes))
}

/// Shift that removes both weights: `(b - α/p, c - β/q, 0, 0)` with
/// `x/∞` read as `x`.
pub fn reduce_to_unweighted(params: &OperatorParams) -> OperatorParams {
    let shift = |x: f64, e: ExtExponent| match e {
        ExtExponent::Finite(p) => x / p,
        ExtExponent::Infinite => x,
    };
    OperatorParams {
        b: params.b - shift(params.alpha, params.p),
        c: params.c - shift(params.beta, params.q),
        alpha: 0.0,
        beta: 0.0,
        ..*params
    }
}
