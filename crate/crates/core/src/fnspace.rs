//! Extended-rational functions on a finite carrier, the Kuratowski
//! embedding, membership predicates and the metrics `d_inf`, `rho`,
//! `rho_tilde`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::magma::{FiniteMetricMagma, MetricTable};
use crate::rational::{self, Rational};

/// A rational or `+inf`. `+inf` absorbs addition and is the maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(Rational),
    PosInf,
}

impl ExtValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtValue::Finite(q) => Some(q),
            ExtValue::PosInf => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "+inf" | "inf" | "+∞" => Ok(ExtValue::PosInf),
            t => rational::parse(t).map(ExtValue::Finite),
        }
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
            (ExtValue::Finite(_), ExtValue::PosInf) => Ordering::Less,
            (ExtValue::PosInf, ExtValue::Finite(_)) => Ordering::Greater,
            (ExtValue::PosInf, ExtValue::PosInf) => Ordering::Equal,
        }
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::PosInf,
        }
    }
}

impl From<Rational> for ExtValue {
    fn from(q: Rational) -> Self {
        ExtValue::Finite(q)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(q) => f.write_str(&rational::format(q)),
            ExtValue::PosInf => f.write_str("+inf"),
        }
    }
}

/// A function `X -> Q u {+inf}` on a carrier of size `n`, with at least
/// one finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FnOnX {
    values: Vec<ExtValue>,
}

impl FnOnX {
    pub fn new(values: Vec<ExtValue>) -> Result<Self> {
        if !values.iter().any(ExtValue::is_finite) {
            return Err(Error::invariant("values", "function must have a nonempty domain"));
        }
        Ok(FnOnX { values })
    }

    pub fn from_rationals(values: Vec<Rational>) -> Self {
        assert!(!values.is_empty(), "function on an empty carrier");
        FnOnX { values: values.into_iter().map(ExtValue::Finite).collect() }
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(values: &[(i64, i64)]) -> Self {
        Self::from_rationals(values.iter().map(|&(p, q)| rational::ratio(p, q)).collect())
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_rationals(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_rationals(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &ExtValue {
        &self.values[i]
    }

    pub fn is_finite_valued(&self) -> bool {
        self.values.iter().all(ExtValue::is_finite)
    }

    /// Finite values, or an error naming the first `+inf` entry.
    pub fn finite_values(&self) -> Result<Vec<&Rational>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.finite().ok_or_else(|| Error::invariant(format!("values[{i}]"), "function must be finite-valued"))
            })
            .collect()
    }

    /// Value at `i` when known to be finite.
    pub fn at(&self, i: usize) -> &Rational {
        self.values[i].finite().expect("finite value")
    }

    /// Pointwise `f + c`; `+inf` entries are unchanged.
    pub fn shift(&self, c: &Rational) -> FnOnX {
        let values = self
            .values
            .iter()
            .map(|v| match v {
                ExtValue::Finite(q) => ExtValue::Finite(q + c),
                ExtValue::PosInf => ExtValue::PosInf,
            })
            .collect();
        FnOnX { values }
    }

    /// Pointwise `s * f` for finite-valued `f`.
    pub fn scale(&self, s: &Rational) -> FnOnX {
        let values = self
            .values
            .iter()
            .map(|v| match v {
                ExtValue::Finite(q) => ExtValue::Finite(q * s),
                ExtValue::PosInf => ExtValue::PosInf,
            })
            .collect();
        FnOnX { values }
    }

    /// Minimum value (always finite).
    pub fn min_value(&self) -> Rational {
        self.values.iter().filter_map(ExtValue::finite).min().cloned().expect("nonempty domain")
    }

    /// Indices realizing the minimum.
    pub fn argmin(&self) -> Vec<usize> {
        let m = ExtValue::Finite(self.min_value());
        (0..self.len()).filter(|&i| self.values[i] == m).collect()
    }

    /// Pointwise `f <= g`.
    pub fn le(&self, other: &FnOnX) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// `x -> f(perm[x])`.
    pub fn compose(&self, perm: &[usize]) -> FnOnX {
        FnOnX { values: perm.iter().map(|&i| self.values[i].clone()).collect() }
    }
}

impl fmt::Display for FnOnX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// The Kuratowski map `delta_a = d(a, .)`.
pub fn kuratowski(m: &FiniteMetricMagma, a: usize) -> FnOnX {
    kuratowski_in(m.metric(), a)
}

pub fn kuratowski_in(metric: &MetricTable, a: usize) -> FnOnX {
    FnOnX::from_rationals((0..metric.len()).map(|t| metric.dist(a, t).clone()).collect())
}

/// Finite-valued and 1-Lipschitz.
pub fn is_lip1(metric: &MetricTable, f: &FnOnX) -> bool {
    let Ok(v) = f.finite_values() else { return false };
    let n = v.len();
    (0..n).all(|x| (x + 1..n).all(|y| rational::abs(&(v[x] - v[y])) <= *metric.dist(x, y)))
}

/// All values are nonnegative.
pub fn is_positive(f: &FnOnX) -> bool {
    f.values().iter().all(|v| match v {
        ExtValue::Finite(q) => !q.is_negative(),
        ExtValue::PosInf => true,
    })
}

/// `|f(x) - f(y)| <= d(x, y) <= f(x) + f(y)` for all `x, y`.
pub fn is_katetov(metric: &MetricTable, f: &FnOnX) -> bool {
    let Ok(v) = f.finite_values() else { return false };
    let n = v.len();
    (0..n).all(|x| {
        (x..n).all(|y| {
            let d = metric.dist(x, y);
            rational::abs(&(v[x] - v[y])) <= *d && *d <= v[x] + v[y]
        })
    })
}

/// `sup |f - g|`. A point where exactly one side is `+inf` gives `+inf`;
/// points where both are `+inf` contribute nothing.
pub fn d_inf(f: &FnOnX, g: &FnOnX) -> ExtValue {
    assert_eq!(f.len(), g.len(), "functions on different carriers");
    let mut best = rational::zero();
    for (a, b) in f.values().iter().zip(g.values()) {
        match (a, b) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => {
                let t = rational::abs(&(a - b));
                if t > best {
                    best = t;
                }
            }
            (ExtValue::PosInf, ExtValue::PosInf) => {}
            _ => return ExtValue::PosInf,
        }
    }
    ExtValue::Finite(best)
}

/// `d_inf` for finite-valued inputs.
pub fn d_inf_finite(f: &FnOnX, g: &FnOnX) -> Result<Rational> {
    f.finite_values()?;
    g.finite_values()?;
    match d_inf(f, g) {
        ExtValue::Finite(q) => Ok(q),
        ExtValue::PosInf => unreachable!("finite inputs"),
    }
}

/// `sup t/(1+t)` with `t = |f(x) - g(x)|`.
pub fn rho(f: &FnOnX, g: &FnOnX) -> Result<Rational> {
    let fv = f.finite_values()?;
    let gv = g.finite_values()?;
    let one = rational::one();
    Ok(fv
        .iter()
        .zip(&gv)
        .map(|(a, b)| {
            let t = rational::abs(&(*a - *b));
            &t / (&one + &t)
        })
        .max()
        .unwrap_or_else(Rational::zero))
}

/// `rho(f - inf f, g - inf g) + |inf f - inf g|`.
pub fn rho_tilde(f: &FnOnX, g: &FnOnX) -> Result<Rational> {
    f.finite_values()?;
    g.finite_values()?;
    let mf = f.min_value();
    let mg = g.min_value();
    let r = rho(&f.shift(&-&mf), &g.shift(&-&mg))?;
    Ok(r + rational::abs(&(mf - mg)))
}

/// The unique global minimizer, if unique. On a finite carrier this is
/// exactly a strong minimum.
pub fn strong_min(f: &FnOnX) -> Option<usize> {
    match f.argmin().as_slice() {
        [x] => Some(*x),
        _ => None,
    }
}

/// `f_eps = (1 - eps) f + eps * delta_xstar`: a 1-Lipschitz function with
/// a unique minimizer at `xstar`, within `eps * d_inf(delta_xstar, f)` of `f`.
pub fn perturb_to_strong_min(m: &FiniteMetricMagma, f: &FnOnX, xstar: usize, eps: &Rational) -> Result<FnOnX> {
    if !eps.is_positive() || *eps >= rational::one() {
        return Err(Error::invariant("eps", "must lie in (0, 1)"));
    }
    if f.len() != m.len() {
        return Err(Error::invariant("f", "carrier size mismatch"));
    }
    if !is_lip1(m.metric(), f) {
        return Err(Error::invariant("f", "function is not 1-Lipschitz"));
    }
    if xstar >= f.len() || !f.argmin().contains(&xstar) {
        return Err(Error::invariant("xstar", format!("{xstar} is not a minimizer of f")));
    }
    let keep = rational::one() - eps;
    let delta = kuratowski(m, xstar);
    Ok(FnOnX::from_rationals((0..f.len()).map(|x| &keep * f.at(x) + eps * delta.at(x)).collect()))
}
