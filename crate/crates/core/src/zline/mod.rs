//! Sequence monoids: `p`-periodic sequences under cyclic min-plus
//! convolution, and cofinite sequences on the integers.

pub mod bench;
pub mod kernels;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use kernels::{convex_minplus_merge, is_convex, naive_minplus, smawk_minplus, Weight};

/// Nonnegative with oscillation at most 1.
fn in_linf_dis<'a>(values: impl IntoIterator<Item = &'a Rational>) -> bool {
    let mut lo: Option<&Rational> = None;
    let mut hi: Option<&Rational> = None;
    for v in values {
        lo = Some(lo.map_or(v, |l| l.min(v)));
        hi = Some(hi.map_or(v, |h| h.max(v)));
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => *lo >= rational::zero() && hi - lo <= rational::one(),
        _ => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicSeq {
    #[serde(with = "rational::serde_str_vec")]
    values: Vec<Rational>,
}

impl CyclicSeq {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invariant("values", "period must be positive"));
        }
        Ok(CyclicSeq { values })
    }

    /// `delta_k = dis(k, .)` on `Z/pZ`.
    pub fn delta(p: usize, k: usize) -> Self {
        let values = (0..p).map(|n| if n == k % p { rational::zero() } else { rational::one() }).collect();
        CyclicSeq { values }
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn in_linf_dis(&self) -> bool {
        in_linf_dis(&self.values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CyclicMode {
    #[default]
    Naive,
    /// Both operands convex as segments `0..p`.
    Merge,
    /// Second operand convex as a segment `0..p`.
    Smawk,
}

/// `(u (+) v)_n = min_k u_{n-k} + v_k` over `Z/pZ`.
///
/// The fast modes convolve the unrolled segments on `0..2p-1` and fold
/// index `n + p` back onto `n`.
pub fn cyclic_minplus(u: &CyclicSeq, v: &CyclicSeq, mode: CyclicMode) -> Result<CyclicSeq> {
    let p = u.period();
    if v.period() != p {
        return Err(Error::invariant("v", format!("period {} differs from {p}", v.period())));
    }
    let values = match mode {
        CyclicMode::Naive => (0..p)
            .map(|n| (0..p).map(|k| &u.values[(n + p - k) % p] + &v.values[k]).min().expect("p > 0"))
            .collect(),
        CyclicMode::Merge | CyclicMode::Smawk => {
            let lin = if mode == CyclicMode::Merge {
                convex_minplus_merge(&u.values, &v.values)?
            } else {
                smawk_minplus(&u.values, &v.values)?
            };
            (0..p).map(|n| if n + p < lin.len() { lin[n].clone().min(lin[n + p].clone()) } else { lin[n].clone() }).collect()
        }
    };
    Ok(CyclicSeq { values })
}

/// A sequence on the integers equal to `default` outside finitely many
/// indices. Exceptions equal to the default are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofiniteSeq {
    default: Rational,
    exceptions: BTreeMap<i64, Rational>,
}

impl CofiniteSeq {
    pub fn new(default: Rational, exceptions: BTreeMap<i64, Rational>) -> Self {
        let exceptions = exceptions.into_iter().filter(|(_, v)| *v != default).collect();
        CofiniteSeq { default, exceptions }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, BTreeMap::new())
    }

    /// `delta_k = dis(k, .)` on the integers.
    pub fn delta(k: i64) -> Self {
        Self::new(rational::one(), BTreeMap::from([(k, rational::zero())]))
    }

    pub fn default_value(&self) -> &Rational {
        &self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, Rational> {
        &self.exceptions
    }

    pub fn get(&self, n: i64) -> &Rational {
        self.exceptions.get(&n).unwrap_or(&self.default)
    }

    /// Infimum over all indices, which is attained.
    pub fn min_value(&self) -> &Rational {
        self.exceptions.values().fold(&self.default, |m, v| m.min(v))
    }

    pub fn in_linf_dis(&self) -> bool {
        in_linf_dis(std::iter::once(&self.default).chain(self.exceptions.values()))
    }
}

/// `(u (+) v)_n = inf_k u_{n-k} + v_k` on the integers.
///
/// Far from the exceptions every index still sees pairs with one exception
/// and one default, so the result's default is
/// `min(du + min v, min u + dv)`; only indices in `ex(u) + ex(v)` can differ.
pub fn z_minplus(u: &CofiniteSeq, v: &CofiniteSeq) -> Result<CofiniteSeq> {
    if !u.in_linf_dis() {
        return Err(Error::invariant("u", "sequence is not nonnegative with oscillation at most 1"));
    }
    if !v.in_linf_dis() {
        return Err(Error::invariant("v", "sequence is not nonnegative with oscillation at most 1"));
    }
    let default = (&u.default + v.min_value()).min(u.min_value() + &v.default);
    let at = |n: i64| {
        let mut best = &u.default + &v.default;
        for (&e, ue) in &u.exceptions {
            best = best.min(ue + v.get(n - e));
        }
        for (&f, vf) in &v.exceptions {
            best = best.min(u.get(n - f) + vf);
        }
        best
    };
    let candidates: BTreeSet<i64> =
        u.exceptions.keys().flat_map(|e| v.exceptions.keys().map(move |f| e + f)).collect();
    let exceptions = candidates.into_iter().map(|n| (n, at(n))).collect();
    Ok(CofiniteSeq::new(default, exceptions))
}
