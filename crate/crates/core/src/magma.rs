//! Finite carriers: a binary law stored as a total table together with a
//! rational metric. Elements are dense indices `0..n`.

use std::collections::BTreeSet;

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Symmetric rational distance table satisfying the metric axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricTable {
    d: Vec<Vec<Rational>>,
}

impl MetricTable {
    /// Validates zero diagonal, symmetry, positivity off the diagonal and
    /// the triangle inequality.
    pub fn new(d: Vec<Vec<Rational>>) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(Error::invariant("metric", "carrier must be nonempty"));
        }
        for (i, row) in d.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invariant(
                    format!("metric[{i}]"),
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
        }
        for i in 0..n {
            if !d[i][i].is_zero() {
                return Err(Error::invariant(format!("metric[{i}][{i}]"), "diagonal entry must be 0"));
            }
            for j in 0..n {
                if d[i][j] != d[j][i] {
                    return Err(Error::invariant(format!("metric[{i}][{j}]"), "metric is not symmetric"));
                }
                if i != j && !d[i][j].is_positive() {
                    return Err(Error::invariant(
                        format!("metric[{i}][{j}]"),
                        "distinct points must be at positive distance",
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if d[i][k] > &d[i][j] + &d[j][k] {
                        return Err(Error::invariant(
                            format!("metric[{i}][{k}]"),
                            format!("triangle inequality fails through {j}"),
                        ));
                    }
                }
            }
        }
        Ok(MetricTable { d })
    }

    /// The discrete metric: 1 between distinct points.
    pub fn discrete(n: usize) -> Self {
        let d = (0..n)
            .map(|i| (0..n).map(|j| if i == j { rational::zero() } else { rational::one() }).collect())
            .collect();
        MetricTable { d }
    }

    /// Word metric of the cycle `Z/nZ`: `min(|i-j|, n-|i-j|)`.
    pub fn cyclic_word(n: usize) -> Self {
        let d = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let k = i.abs_diff(j);
                        rational::int(k.min(n - k) as i64)
                    })
                    .collect()
            })
            .collect();
        MetricTable { d }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.d
    }

    /// Metric restricted to `subset` (indices into `self`), reindexed densely.
    pub fn restrict(&self, subset: &[usize]) -> MetricTable {
        let d = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.d[i][j].clone()).collect())
            .collect();
        MetricTable { d }
    }

    /// Smallest positive distance, or `None` for a one-point space.
    pub fn min_positive(&self) -> Option<Rational> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.d[i][j].clone())
            .min()
    }

    pub fn diameter(&self) -> Rational {
        self.d.iter().flatten().max().cloned().unwrap_or_else(rational::zero)
    }
}

/// Algebraic classification of a finite law, from coarsest to finest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MagmaClass {
    Magma,
    Quasigroup,
    Loop,
    Group,
    AbelianGroup,
}

/// A finite magma `(X, ., d)` with law table and metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricMagma {
    metric: MetricTable,
    law: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl FiniteMetricMagma {
    pub fn new(metric: MetricTable, law: Vec<Vec<usize>>) -> Result<Self> {
        let n = metric.len();
        if law.len() != n {
            return Err(Error::invariant("law", format!("has {} rows, expected {n}", law.len())));
        }
        for (i, row) in law.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invariant(format!("law[{i}]"), format!("has {} entries, expected {n}", row.len())));
            }
            if let Some(j) = row.iter().position(|&v| v >= n) {
                return Err(Error::invariant(format!("law[{i}][{j}]"), format!("index {} out of range", row[j])));
            }
        }
        Ok(FiniteMetricMagma { metric, law, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::invariant("labels", format!("expected {} labels", self.len())));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Law given by a closure, discrete metric.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let law = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        FiniteMetricMagma { metric: MetricTable::discrete(n), law, labels: None }
    }

    /// `Z/nZ` under addition with the discrete metric.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// `Z/nZ` under addition with the cyclic word metric (invariant, not discrete).
    pub fn cyclic_word_metric(n: usize) -> Self {
        let law = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMetricMagma { metric: MetricTable::cyclic_word(n), law, labels: None }
    }

    /// `a . b = a - b mod n`: a quasigroup with right identity 0 only.
    pub fn subtraction(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + n - b) % n)
    }

    /// Dihedral group of order `2m`; element `k + m*s` stands for `r^k s^s`.
    pub fn dihedral(m: usize) -> Self {
        Self::from_fn(2 * m, |a, b| {
            let (k1, s1) = (a % m, a / m);
            let (k2, s2) = (b % m, b / m);
            let k = if s1 == 0 { (k1 + k2) % m } else { (k1 + m - k2) % m };
            k + m * (s1 ^ s2)
        })
    }

    /// `a . b = a`.
    pub fn left_projection(n: usize) -> Self {
        Self::from_fn(n, |a, _| a)
    }

    /// Smallest non-associative loop (order 5), discrete metric.
    pub fn nonassociative_loop5() -> Self {
        const T: [[usize; 5]; 5] =
            [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]];
        Self::from_fn(5, |a, b| T[a][b])
    }

    pub fn len(&self) -> usize {
        self.law.len()
    }

    pub fn is_empty(&self) -> bool {
        self.law.is_empty()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.law[a][b]
    }

    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> &Rational {
        self.metric.dist(a, b)
    }

    pub fn metric(&self) -> &MetricTable {
        &self.metric
    }

    pub fn law(&self) -> &[Vec<usize>] {
        &self.law
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_latin_square(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                if std::mem::replace(&mut seen[self.op(a, b)], true) {
                    return false;
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                if std::mem::replace(&mut seen[self.op(b, a)], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Two-sided identity element, if any.
    pub fn identity(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|b| self.op(e, b) == b && self.op(b, e) == b))
    }

    /// Two-sided inverse of `a` with respect to the identity, if both exist.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity()?;
        (0..self.len()).find(|&b| self.op(a, b) == e && self.op(b, a) == e)
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// First triple `(a, b, c)` with `(ab)c != a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// True iff every left and right translation is an isometry.
    pub fn check_metric_invariance(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    let d = self.dist(y, z);
                    if self.dist(self.op(x, y), self.op(x, z)) != d
                        || self.dist(self.op(y, x), self.op(z, x)) != d
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Finest applicable label.
    pub fn classify(&self) -> MagmaClass {
        if !self.is_latin_square() {
            return MagmaClass::Magma;
        }
        if self.identity().is_none() {
            return MagmaClass::Quasigroup;
        }
        if !self.is_associative() {
            return MagmaClass::Loop;
        }
        if self.is_commutative() {
            MagmaClass::AbelianGroup
        } else {
            MagmaClass::Group
        }
    }

    pub fn is_group(&self) -> bool {
        self.classify() >= MagmaClass::Group
    }

    /// Exact enumeration of `{(y, z) : y . z = x}` with both projections.
    pub fn delta_fiber(&self, x: usize) -> FiberSet {
        let n = self.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|y| (0..n).map(move |z| (y, z))).filter(|&(y, z)| self.op(y, z) == x).collect();
        let proj1: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
        let proj2: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        FiberSet {
            target: x,
            pairs,
            proj1: proj1.into_iter().collect(),
            proj2: proj2.into_iter().collect(),
        }
    }

    /// Tightest constants `(L1, L2, L1', L2')` of two-sided Lipschitz
    /// control of the law over the fiber projections at `x`.
    ///
    /// `None` if the fiber is empty or a distinct pair collapses (no positive
    /// lower constant). A projection with a single point imposes no
    /// constraint; its constants are reported as 1.
    pub fn d_invariance_at(&self, x: usize) -> Option<InvarianceConstants> {
        let fiber = self.delta_fiber(x);
        if fiber.pairs.is_empty() {
            return None;
        }
        let (l1, l2) = self.ratio_bounds(&fiber.proj1, &fiber.proj2, |y, z| self.op(y, z))?;
        let (l1p, l2p) = self.ratio_bounds(&fiber.proj2, &fiber.proj1, |z, y| self.op(y, z))?;
        Some(InvarianceConstants { l1, l2, l1_prime: l1p, l2_prime: l2p })
    }

    /// `(max, min)` of `d(op(u1, w), op(u2, w)) / d(u1, u2)` over distinct
    /// `u1, u2` in `moving` and `w` in `fixed`.
    fn ratio_bounds(
        &self,
        moving: &[usize],
        fixed: &[usize],
        op: impl Fn(usize, usize) -> usize,
    ) -> Option<(Rational, Rational)> {
        let mut hi: Option<Rational> = None;
        let mut lo: Option<Rational> = None;
        for (i, &u1) in moving.iter().enumerate() {
            for &u2 in &moving[i + 1..] {
                for &w in fixed {
                    let r = self.dist(op(u1, w), op(u2, w)) / self.dist(u1, u2);
                    if hi.as_ref().is_none_or(|h| r > *h) {
                        hi = Some(r.clone());
                    }
                    if lo.as_ref().is_none_or(|l| r < *l) {
                        lo = Some(r);
                    }
                }
            }
        }
        match (hi, lo) {
            (None, None) => Some((rational::one(), rational::one())),
            (Some(h), Some(l)) if l.is_positive() => Some((h, l)),
            _ => None,
        }
    }
}

/// Constants witnessing d-invariance at a point: upper `l1`, lower `l2`
/// for the left argument; primed for the right argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceConstants {
    #[serde(with = "rational::serde_str")]
    pub l1: Rational,
    #[serde(with = "rational::serde_str")]
    pub l2: Rational,
    #[serde(with = "rational::serde_str")]
    pub l1_prime: Rational,
    #[serde(with = "rational::serde_str")]
    pub l2_prime: Rational,
}

impl InvarianceConstants {
    pub fn is_isometric(&self) -> bool {
        let one = rational::one();
        self.l1 == one && self.l2 == one && self.l1_prime == one && self.l2_prime == one
    }
}

/// Factorizations of a target element and their coordinate projections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSet {
    pub target: usize,
    pub pairs: Vec<(usize, usize)>,
    pub proj1: Vec<usize>,
    pub proj2: Vec<usize>,
}
