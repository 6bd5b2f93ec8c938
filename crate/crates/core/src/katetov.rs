//! The Katetov space `K(X)`: maps with `|f(x) - f(y)| <= d(x, y) <= f(x) + f(y)`,
//! their extension from subspaces, and the monoid structure under `(+)`.

use serde_json::json;

use crate::error::{Error, Result};
use crate::fnspace::{d_inf, d_inf_finite, is_katetov, kuratowski, FnOnX};
use crate::infconv::inf_conv;
use crate::magma::{FiniteMetricMagma, MetricTable};
use crate::monoid::{is_unit, UnitScope};
use crate::rational::{self, Rational};
use crate::report::TheoremReport;

/// A Katetov map on a subset `Y` of a finite metric space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFn {
    metric: MetricTable,
    subset: Vec<usize>,
    values: Vec<Rational>,
}

impl SubspaceFn {
    pub fn new(metric: MetricTable, subset: Vec<usize>, values: Vec<Rational>) -> Result<Self> {
        let n = metric.len();
        if subset.is_empty() {
            return Err(Error::invariant("subset", "must be nonempty"));
        }
        if values.len() != subset.len() {
            return Err(Error::invariant("values", format!("expected {} entries, one per subset point", subset.len())));
        }
        let mut seen = vec![false; n];
        for (i, &y) in subset.iter().enumerate() {
            if y >= n {
                return Err(Error::invariant(format!("subset[{i}]"), format!("index {y} out of range for n = {n}")));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::invariant(format!("subset[{i}]"), format!("duplicate index {y}")));
            }
        }
        let restricted = metric.restrict(&subset);
        if !is_katetov(&restricted, &FnOnX::from_rationals(values.clone())) {
            return Err(Error::invariant("values", "not a Katetov map on the subset"));
        }
        Ok(SubspaceFn { metric, subset, values })
    }

    pub fn metric(&self) -> &MetricTable {
        &self.metric
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Values as a function on the subset itself.
    pub fn on_subset(&self) -> FnOnX {
        FnOnX::from_rationals(self.values.clone())
    }
}

/// Greatest 1-Lipschitz extension `x -> min_y f(y) + d(x, y)`.
pub fn katetov_extension(sf: &SubspaceFn) -> FnOnX {
    let vals = (0..sf.metric.len())
        .map(|x| {
            sf.subset
                .iter()
                .zip(&sf.values)
                .map(|(&y, v)| v + sf.metric.dist(x, y))
                .min()
                .expect("nonempty subset")
        })
        .collect();
    FnOnX::from_rationals(vals)
}

fn require_katetov(m: &FiniteMetricMagma, f: &FnOnX, name: &str) -> Result<()> {
    if f.len() != m.len() || !is_katetov(m.metric(), f) {
        return Err(Error::invariant(name, "not a Katetov map on the carrier"));
    }
    Ok(())
}

fn require_invariant_group(m: &FiniteMetricMagma) -> Result<()> {
    if !m.check_metric_invariance() || !m.is_group() {
        return Err(Error::hypothesis("carrier must be a metric-invariant group"));
    }
    Ok(())
}

/// `f (+) g` is again Katetov, checked on both inequality chains.
pub fn katetov_closure_check(m: &FiniteMetricMagma, f: &FnOnX, g: &FnOnX) -> Result<TheoremReport> {
    require_invariant_group(m)?;
    require_katetov(m, f, "f")?;
    require_katetov(m, g, "g")?;
    let h = inf_conv(m, f, g);
    let mut report = TheoremReport::new("Katetov maps are closed under inf-convolution");
    let n = m.len();
    for x in 0..n {
        for y in 0..n {
            let (hx, hy, d) = (h.get(x), h.get(y), m.dist(x, y));
            let lip = match (hx.finite(), hy.finite()) {
                (Some(a), Some(b)) => rational::abs(&(a - b)) <= *d,
                _ => false,
            };
            report.check(lip, || json!({ "lipschitz_fails": [x, y], "conv": h }));
            let lower = (hx + hy).finite().is_none_or(|s| s >= d);
            report.check(lower, || json!({ "lower_bound_fails": [x, y], "conv": h }));
        }
    }
    Ok(report)
}

/// Non-expansiveness of `(+ g)` and `(g +)`, and exact isometry of
/// translation by a Kuratowski element, at every `x`.
pub fn contraction_isometry_check(m: &FiniteMetricMagma, f: &FnOnX, g: &FnOnX, h: &FnOnX) -> Result<TheoremReport> {
    require_invariant_group(m)?;
    require_katetov(m, f, "f")?;
    require_katetov(m, g, "g")?;
    require_katetov(m, h, "h")?;
    let base = d_inf(f, h);
    let mut report = TheoremReport::new("inf-convolution is non-expansive on Katetov maps, isometric for Kuratowski factors");
    let right = d_inf(&inf_conv(m, f, g), &inf_conv(m, h, g));
    let left = d_inf(&inf_conv(m, g, f), &inf_conv(m, g, h));
    report.check(right <= base, || json!({ "right_expands": right, "d_inf": base }));
    report.check(left <= base, || json!({ "left_expands": left, "d_inf": base }));
    for x in 0..m.len() {
        let dx = kuratowski(m, x);
        let l = d_inf(&inf_conv(m, &dx, f), &inf_conv(m, &dx, h));
        let r = d_inf(&inf_conv(m, f, &dx), &inf_conv(m, h, &dx));
        report.check(l == base && r == base, || json!({ "x": x, "left": l, "right": r, "d_inf": base }));
    }
    Ok(report)
}

/// `d_inf(f, gamma(x))`, which equals `f(x)` on Katetov maps.
pub fn eval_as_distance(m: &FiniteMetricMagma, f: &FnOnX, x: usize) -> Result<Rational> {
    require_katetov(m, f, "f")?;
    if x >= m.len() {
        return Err(Error::invariant("x", "index out of range"));
    }
    let d = d_inf_finite(f, &kuratowski(m, x))?;
    if d != *f.at(x) {
        return Err(Error::invariant("f", format!("distance to gamma({x}) differs from f({x})")));
    }
    Ok(d)
}

/// Every Kuratowski element is a unit of `K(X)` with inverse `delta_{x^-1}`,
/// and no positive shift `delta_y + c` is: its inverse candidate leaves `K(X)`.
pub fn katetov_units(m: &FiniteMetricMagma) -> Result<TheoremReport> {
    require_invariant_group(m)?;
    let n = m.len();
    let mut report = TheoremReport::new("units of the Katetov monoid are the Kuratowski elements");
    for x in 0..n {
        let dx = kuratowski(m, x);
        let cert = is_unit(m, &dx, UnitScope::Lip1Plus)?;
        let ok = cert.as_ref().is_some_and(|c| {
            c.inverse == kuratowski(m, m.inverse(x).expect("group inverse")) && is_katetov(m.metric(), &c.inverse)
        });
        report.check(ok, || json!({ "kuratowski_not_unit": x }));
        let shifted = dx.shift(&rational::one());
        let inverse_candidate = kuratowski(m, m.inverse(x).expect("group inverse")).shift(&-rational::one());
        let in_k = is_katetov(m.metric(), &inverse_candidate);
        let unit_in_k = is_unit(m, &shifted, UnitScope::Lip1Plus)?.is_some();
        report.check(!in_k && !unit_in_k, || json!({ "positive_shift_is_unit": x }));
    }
    report.witness(json!({ "units": n }));
    Ok(report)
}
