//! Convex Katetov functions on the real line, stored exactly as
//! piecewise-linear curves with tail slopes -1 and +1.
//!
//! A breakpoint list `(x_0, v_0) .. (x_k, v_k)` stands for the function that
//! interpolates the points, has slope -1 left of `x_0` and slope +1 right of
//! `x_k`. On the left tail `f(x) = c_minus - x` with `c_minus = v_0 + x_0`; on
//! the right tail `f(x) = x + c_plus` with `c_plus = v_k - x_k`. Since
//! `f(x) + x` is nondecreasing and `f(x) - x` nonincreasing,
//! `f(x) + f(y) >= |x - y| + c_plus + c_minus`, with equality far out on
//! opposite tails; so the Katetov inequality is `c_plus + c_minus >= 0`.

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gen;
use crate::rational::{self, Rational};
use crate::report::TheoremReport;

type Point = (Rational, Rational);

fn slope(p: &Point, q: &Point) -> Rational {
    (&q.1 - &p.1) / (&q.0 - &p.0)
}

/// Validates convexity and the 1-Lipschitz bound, then drops every
/// breakpoint that is not a kink of the represented function.
pub fn canonical_form(points: Vec<Point>) -> Result<Vec<Point>> {
    if points.is_empty() {
        return Err(Error::invariant("breakpoints", "need at least one breakpoint"));
    }
    for (i, w) in points.windows(2).enumerate() {
        if w[1].0 <= w[0].0 {
            return Err(Error::invariant(format!("breakpoints[{}]", i + 1), "x must be strictly increasing"));
        }
    }
    let minus_one = -rational::one();
    let one = rational::one();
    let mut prev = minus_one.clone();
    for (i, w) in points.windows(2).enumerate() {
        let s = slope(&w[0], &w[1]);
        if s < minus_one || s > one {
            return Err(Error::invariant(format!("breakpoints[{i}..{}]", i + 2), "slope outside [-1, 1]"));
        }
        if s < prev {
            return Err(Error::invariant(format!("breakpoints[{i}..{}]", i + 2), "slopes must be nondecreasing (convexity)"));
        }
        prev = s;
    }
    // Keep a point only where the slope on its left differs from the slope on its right.
    let k = points.len();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let left = if i == 0 { minus_one.clone() } else { slope(&points[i - 1], &points[i]) };
        let right = if i + 1 == k { one.clone() } else { slope(&points[i], &points[i + 1]) };
        if left != right {
            out.push(points[i].clone());
        }
    }
    debug_assert!(!out.is_empty(), "tails -1 and +1 force a kink");
    Ok(out)
}

/// `c_plus + c_minus` of a breakpoint list; nonnegative iff Katetov.
pub fn katetov_slack(points: &[Point]) -> Rational {
    let (x0, v0) = &points[0];
    let (xk, vk) = &points[points.len() - 1];
    (vk - xk) + (v0 + x0)
}

/// Evaluates the curve described by `points` at `x`.
pub fn eval_points(points: &[Point], x: &Rational) -> Rational {
    let i = points.partition_point(|(px, _)| px <= x);
    if i == 0 {
        let (x0, v0) = &points[0];
        return v0 + (x0 - x);
    }
    if i == points.len() {
        let (xk, vk) = &points[i - 1];
        return vk + (x - xk);
    }
    let (p, q) = (&points[i - 1], &points[i]);
    &p.1 + slope(p, q) * (x - &p.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlKatetovFn {
    points: Vec<Point>,
}

impl PlKatetovFn {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let points = canonical_form(points)?;
        if katetov_slack(&points) < rational::zero() {
            return Err(Error::invariant(
                "breakpoints",
                "Katetov condition fails: (v_last - x_last) + (v_first + x_first) < 0",
            ));
        }
        Ok(PlKatetovFn { points })
    }

    /// `gamma(a) = |. - a|`.
    pub fn gamma(a: Rational) -> Self {
        PlKatetovFn { points: vec![(a, rational::zero())] }
    }

    /// `|. - a| + c` for `c >= 0`.
    pub fn shifted_gamma(a: Rational, c: Rational) -> Result<Self> {
        Self::new(vec![(a, c)])
    }

    pub fn breakpoints(&self) -> &[Point] {
        &self.points
    }

    /// Interior slopes, strictly increasing inside `(-1, 1)`.
    pub fn slopes(&self) -> Vec<Rational> {
        self.points.windows(2).map(|w| slope(&w[0], &w[1])).collect()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        eval_points(&self.points, x)
    }

    pub fn c_plus(&self) -> Rational {
        let (x, v) = self.points.last().expect("nonempty");
        v - x
    }

    pub fn c_minus(&self) -> Rational {
        let (x, v) = &self.points[0];
        v + x
    }

    /// Minimum value, attained on the breakpoint where the slope turns
    /// nonnegative.
    pub fn min_value(&self) -> Rational {
        self.points.iter().map(|(_, v)| v.clone()).min().expect("nonempty")
    }

    /// `f o T^-1` for `T = reflection`: breakpoints negated and reversed.
    pub fn reflect(&self) -> Self {
        let points = self.points.iter().rev().map(|(x, v)| (-x, v.clone())).collect();
        PlKatetovFn { points }
    }
}

impl Serialize for PlKatetovFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::io::pl_to_file(self).serialize(s)
    }
}

/// Inf-convolution: the epigraphs add, so the result starts at the sum of
/// the first breakpoints and then follows both slope sequences merged in
/// increasing order.
pub fn pl_infconv(f: &PlKatetovFn, g: &PlKatetovFn) -> PlKatetovFn {
    let segments = |h: &PlKatetovFn| {
        h.points.windows(2).map(|w| (slope(&w[0], &w[1]), &w[1].0 - &w[0].0)).collect::<Vec<_>>()
    };
    let mut segs = segments(f);
    segs.extend(segments(g));
    segs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut cur = (&f.points[0].0 + &g.points[0].0, &f.points[0].1 + &g.points[0].1);
    let mut points = vec![cur.clone()];
    for (s, len) in segs {
        cur = (&cur.0 + &len, &cur.1 + s * len);
        points.push(cur.clone());
    }
    PlKatetovFn::new(points).expect("inf-convolution stays in the cone")
}

/// `lambda * f(x / lambda)` for `lambda > 0`, and `gamma(0)` for `lambda = 0`.
pub fn epi_scale(lambda: &Rational, f: &PlKatetovFn) -> Result<PlKatetovFn> {
    if *lambda < rational::zero() {
        return Err(Error::invariant("lambda", "epi-scaling needs lambda >= 0"));
    }
    if *lambda == rational::zero() {
        return Ok(PlKatetovFn::gamma(rational::zero()));
    }
    Ok(PlKatetovFn { points: f.points.iter().map(|(x, v)| (lambda * x, lambda * v)).collect() })
}

/// Sup distance. Beyond the outermost breakpoints both curves share their
/// tail slopes, so `f - g` is extremal on the union of breakpoints.
pub fn pl_dinf(f: &PlKatetovFn, g: &PlKatetovFn) -> Rational {
    f.points
        .iter()
        .chain(&g.points)
        .map(|(x, _)| rational::abs(&(f.eval(x) - g.eval(x))))
        .max()
        .expect("nonempty")
}

/// Cone axioms on every sample:
/// `1 * c = c`, `0 * c = gamma(0)`,
/// `(a + b) * c = (a * c) (+) (b * c)` for all scalar pairs, and
/// `l * (c (+) c') = (l * c) (+) (l * c')` for each scalar against the next sample.
pub fn verify_cone_axioms(samples: &[PlKatetovFn], scalars: &[Rational]) -> Result<TheoremReport> {
    for (i, l) in scalars.iter().enumerate() {
        if *l < rational::zero() {
            return Err(Error::invariant(format!("scalars[{i}]"), "scalars must be nonnegative"));
        }
    }
    let mut report = TheoremReport::new("convex Katetov functions on the line form a convex cone");
    let e = PlKatetovFn::gamma(rational::zero());
    for (i, c) in samples.iter().enumerate() {
        report.check(epi_scale(&rational::one(), c)? == *c, || json!({ "axiom": 1, "sample": i }));
        report.check(epi_scale(&rational::zero(), c)? == e, || json!({ "axiom": 1, "sample": i }));
        report.check(pl_infconv(&e, c) == *c, || json!({ "identity": i }));
        for a in scalars {
            for b in scalars {
                let lhs = epi_scale(&(a + b), c)?;
                let rhs = pl_infconv(&epi_scale(a, c)?, &epi_scale(b, c)?);
                report.check(lhs == rhs, || {
                    json!({ "axiom": 2, "sample": i, "alpha": rational::format(a), "beta": rational::format(b) })
                });
            }
        }
        if samples.len() > 1 {
            let d = &samples[(i + 1) % samples.len()];
            for l in scalars {
                let lhs = epi_scale(l, &pl_infconv(c, d))?;
                let rhs = pl_infconv(&epi_scale(l, c)?, &epi_scale(l, d)?);
                report.check(lhs == rhs, || json!({ "axiom": 3, "sample": i, "lambda": rational::format(l) }));
            }
        }
    }
    report.witness(json!({ "samples": samples.len(), "scalars": scalars.len() }));
    Ok(report)
}

/// `lambda * gamma(x)` with negative scalars acting through
/// `lambda * gamma(x) = (-lambda) * gamma(-x)`, and the norm
/// `|||gamma(x)||| = d_inf(gamma(x), gamma(0))`.
pub fn banach_on_kuratowski(lambda: &Rational, x: &Rational) -> (PlKatetovFn, Rational) {
    let scaled = if *lambda < rational::zero() {
        epi_scale(&-lambda, &PlKatetovFn::gamma(-x))
    } else {
        epi_scale(lambda, &PlKatetovFn::gamma(x.clone()))
    }
    .expect("nonnegative scalar");
    let norm = pl_dinf(&PlKatetovFn::gamma(x.clone()), &PlKatetovFn::gamma(rational::zero()));
    (scaled, norm)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointStep {
    pub iteration: usize,
    #[serde(with = "rational::serde_str")]
    pub step: Rational,
    pub breakpoints: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointResult {
    pub solution: PlKatetovFn,
    pub iterations: usize,
    #[serde(with = "rational::serde_str")]
    pub residual: Rational,
    /// Upper bound on the distance to the true fixed point.
    #[serde(with = "rational::serde_str")]
    pub error_bound: Rational,
    pub converged: bool,
    pub trace: Vec<FixedPointStep>,
}

/// Iteration cap for [`fixed_point_solve`].
pub const MAX_ITERATIONS: usize = 10_000;

/// `L(f) = (lambda * f) (+) g`.
pub fn contraction_map(lambda: &Rational, g: &PlKatetovFn, f: &PlKatetovFn) -> PlKatetovFn {
    pl_infconv(&epi_scale(lambda, f).expect("lambda > 0"), g)
}

/// Picard iteration of `L` from `gamma(0)`, stopping once
/// `d(f_{k+1}, f_k) <= tol * (1 - lambda)`, which bounds the distance from
/// `f_{k+1}` to the fixed point by `tol * lambda`.
pub fn fixed_point_solve(lambda: &Rational, g: &PlKatetovFn, tol: &Rational) -> Result<FixedPointResult> {
    if *lambda <= rational::zero() || *lambda >= rational::one() {
        return Err(Error::invariant("lambda", "must lie in (0, 1)"));
    }
    if *tol <= rational::zero() {
        return Err(Error::invariant("tol", "must be positive"));
    }
    let max_points = g.slopes().len() + 1;
    let threshold = tol * (rational::one() - lambda);
    let mut f = PlKatetovFn::gamma(rational::zero());
    let mut trace = Vec::new();
    for k in 1..=MAX_ITERATIONS {
        let next = contraction_map(lambda, g, &f);
        if next.points.len() > max_points {
            return Err(Error::invariant("iteration", format!("breakpoint count grew to {} at step {k}", next.points.len())));
        }
        let step = pl_dinf(&next, &f);
        trace.push(FixedPointStep { iteration: k, step: step.clone(), breakpoints: next.points.len() });
        f = next;
        if step <= threshold {
            let residual = pl_dinf(&contraction_map(lambda, g, &f), &f);
            let error_bound = lambda * &step / (rational::one() - lambda);
            return Ok(FixedPointResult { solution: f, iterations: k, residual, error_bound, converged: true, trace });
        }
    }
    let residual = pl_dinf(&contraction_map(lambda, g, &f), &f);
    let error_bound = residual.clone() / (rational::one() - lambda);
    Ok(FixedPointResult { solution: f, iterations: MAX_ITERATIONS, residual, error_bound, converged: false, trace })
}

/// The isometric linear automorphisms of the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineIsometry {
    Identity,
    Reflection,
}

impl LineIsometry {
    pub fn apply(self, x: &Rational) -> Rational {
        match self {
            LineIsometry::Identity => x.clone(),
            LineIsometry::Reflection => -x,
        }
    }

    /// `Phi(f) = f o T^-1`.
    pub fn transport(self, f: &PlKatetovFn) -> PlKatetovFn {
        match self {
            LineIsometry::Identity => f.clone(),
            LineIsometry::Reflection => f.reflect(),
        }
    }
}

/// `Phi(f) = f o T^-1` preserves `(+)`, epi-scaling, `d_inf` and maps
/// `gamma(x)` to `gamma(T x)`.
pub fn verify_cone_iso(t: LineIsometry, samples: &[PlKatetovFn], scalars: &[Rational]) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("a linear isometry of the line induces a cone isometry");
    for (i, f) in samples.iter().enumerate() {
        let pf = t.transport(f);
        for x in f.points.iter().map(|p| &p.0) {
            report.check(pf.eval(&t.apply(x)) == f.eval(x), || json!({ "transport_fails": i }));
        }
        let x0 = &f.points[0].0;
        report.check(t.transport(&PlKatetovFn::gamma(x0.clone())) == PlKatetovFn::gamma(t.apply(x0)), || {
            json!({ "gamma_image_fails": rational::format(x0) })
        });
        let g = &samples[(i + 1) % samples.len()];
        let pg = t.transport(g);
        report.check(t.transport(&pl_infconv(f, g)) == pl_infconv(&pf, &pg), || json!({ "conv_not_preserved": i }));
        report.check(pl_dinf(f, g) == pl_dinf(&pf, &pg), || json!({ "distance_not_preserved": i }));
        for l in scalars {
            report.check(t.transport(&epi_scale(l, f)?) == epi_scale(l, &pf)?, || {
                json!({ "scaling_not_preserved": i, "lambda": rational::format(l) })
            });
        }
    }
    report.witness(json!({ "isometry": t, "samples": samples.len() }));
    Ok(report)
}

/// Random element: interior slopes from the grid `k/8`, segment lengths
/// in quarter steps, first value chosen to leave a Katetov slack in `[0, 2]`.
pub fn random_pl(rng: &mut impl Rng) -> PlKatetovFn {
    let k = rng.gen_range(0..=5);
    let mut slopes: Vec<i64> = (0..k).map(|_| rng.gen_range(-7..=7)).collect();
    slopes.sort_unstable();
    slopes.dedup();
    let x0 = gen::random_ratio(rng, -16, 16, 4);
    let segs: Vec<(Rational, Rational)> =
        slopes.iter().map(|&s| (rational::ratio(s, 8), gen::random_ratio(rng, 1, 8, 4))).collect();
    // c_plus + c_minus = 2 v0 + sum (s - 1) len
    let deficit: Rational = segs.iter().map(|(s, len)| (rational::one() - s) * len).sum();
    let v0 = deficit / rational::int(2) + gen::random_ratio(rng, 0, 8, 4);
    let mut cur = (x0, v0);
    let mut points = vec![cur.clone()];
    for (s, len) in segs {
        cur = (&cur.0 + &len, &cur.1 + s * len);
        points.push(cur.clone());
    }
    PlKatetovFn::new(points).expect("constructed with nonnegative slack")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn abs_plus(c: Rational) -> PlKatetovFn {
        PlKatetovFn::shifted_gamma(int(0), c).unwrap()
    }

    /// Exact inf-convolution at `x`: the minimum over `y` sits at a kink of
    /// `f` or of `g(x - .)`.
    fn conv_oracle(f: &PlKatetovFn, g: &PlKatetovFn, x: &Rational) -> Rational {
        f.breakpoints()
            .iter()
            .map(|(y, _)| y.clone())
            .chain(g.breakpoints().iter().map(|(z, _)| x - z))
            .map(|y| f.eval(&y) + g.eval(&(x - &y)))
            .min()
            .unwrap()
    }

    #[test]
    fn canonical_form_coalesces() {
        let f = PlKatetovFn::new(vec![(int(-2), int(3)), (int(-1), int(2)), (int(0), int(1)), (int(1), int(1)), (int(2), int(1)), (int(3), int(2))]).unwrap();
        assert_eq!(f.breakpoints(), &[(int(0), int(1)), (int(2), int(1))]);
        assert!(PlKatetovFn::new(vec![(int(0), int(0)), (int(1), int(2))]).is_err());
        assert!(PlKatetovFn::new(vec![(int(0), int(1)), (int(1), int(1)), (int(2), int(0))]).is_err());
        assert!(PlKatetovFn::new(vec![(int(0), int(0)), (int(0), int(0))]).is_err());
        assert!(PlKatetovFn::new(vec![(int(0), int(-1))]).is_err());
        assert!(PlKatetovFn::new(vec![]).is_err());
    }

    #[test]
    fn infconv_examples() {
        let c = pl_infconv(&PlKatetovFn::gamma(int(1)), &PlKatetovFn::gamma(int(-1)));
        assert_eq!(c, PlKatetovFn::gamma(int(0)));
        let a = PlKatetovFn::gamma(int(0));
        assert_eq!(pl_infconv(&a, &a), a);
        assert_eq!(pl_infconv(&abs_plus(int(1)), &abs_plus(int(2))), abs_plus(int(3)));
    }

    #[test]
    fn infconv_matches_oracle() {
        let mut rng = gen::rng(21);
        for _ in 0..50 {
            let (f, g) = (random_pl(&mut rng), random_pl(&mut rng));
            let h = pl_infconv(&f, &g);
            assert_eq!(h.c_plus(), f.c_plus() + g.c_plus());
            assert_eq!(h.c_minus(), f.c_minus() + g.c_minus());
            for k in -80..=80 {
                let x = ratio(k, 4);
                assert_eq!(h.eval(&x), conv_oracle(&f, &g, &x));
            }
        }
    }

    #[test]
    fn scaling_examples() {
        let a = PlKatetovFn::gamma(int(0));
        assert_eq!(epi_scale(&int(2), &a).unwrap(), a);
        assert_eq!(epi_scale(&ratio(1, 2), &abs_plus(int(3))).unwrap(), abs_plus(ratio(3, 2)));
        assert_eq!(epi_scale(&int(0), &abs_plus(int(3))).unwrap(), a);
        assert!(epi_scale(&int(-1), &a).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(pl_dinf(&PlKatetovFn::gamma(ratio(-7, 2)), &PlKatetovFn::gamma(int(0))), ratio(7, 2));
        let f = random_pl(&mut gen::rng(1));
        assert_eq!(pl_dinf(&f, &f), int(0));
        assert_eq!(pl_dinf(&PlKatetovFn::gamma(int(0)), &abs_plus(int(2))), int(2));
        for k in -10..=10 {
            let x = ratio(k, 3);
            assert_eq!(pl_dinf(&PlKatetovFn::gamma(x.clone()), &f), f.eval(&x));
        }
    }

    #[test]
    fn cone_examples() {
        let g5 = PlKatetovFn::gamma(int(5));
        let half = epi_scale(&ratio(1, 2), &g5).unwrap();
        assert_eq!(half, PlKatetovFn::gamma(ratio(5, 2)));
        assert_eq!(pl_infconv(&half, &half), g5);
        let mut rng = gen::rng(4);
        let samples: Vec<PlKatetovFn> = (0..10).map(|_| random_pl(&mut rng)).collect();
        let scalars = [int(0), ratio(1, 3), int(1), ratio(5, 2)];
        assert!(verify_cone_axioms(&samples, &scalars).unwrap().holds());
        assert!(verify_cone_axioms(&samples, &[int(-1)]).is_err());
    }

    #[test]
    fn banach_examples() {
        let (s, _) = banach_on_kuratowski(&int(-1), &int(3));
        assert_eq!(s, PlKatetovFn::gamma(int(-3)));
        let (_, n) = banach_on_kuratowski(&int(1), &ratio(-7, 2));
        assert_eq!(n, ratio(7, 2));
        let (s, _) = banach_on_kuratowski(&ratio(-2, 3), &ratio(-3, 4));
        assert_eq!(s, PlKatetovFn::gamma(ratio(1, 2)));
    }

    #[test]
    fn fixed_point_examples() {
        let a = PlKatetovFn::gamma(int(0));
        let r = fixed_point_solve(&ratio(1, 2), &a, &ratio(1, 1_000_000_000)).unwrap();
        assert_eq!(r.solution, a);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.residual, int(0));

        let r = fixed_point_solve(&ratio(1, 2), &abs_plus(int(1)), &ratio(1, 1_000_000_000)).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 32);
        // f_k = |x| + 2 - 2^(1-k)
        let c = int(2) - ratio(1, 1 << 31);
        assert_eq!(r.solution, abs_plus(c));
        assert!(pl_dinf(&r.solution, &abs_plus(int(2))) <= ratio(1, 1_000_000_000));
        assert!(fixed_point_solve(&int(1), &a, &int(1)).is_err());
        assert!(fixed_point_solve(&ratio(1, 2), &a, &int(0)).is_err());
    }

    #[test]
    fn iso_examples() {
        let f = PlKatetovFn::gamma(int(2));
        assert_eq!(LineIsometry::Identity.transport(&f), f);
        assert_eq!(LineIsometry::Reflection.transport(&f), PlKatetovFn::gamma(int(-2)));
        let mut rng = gen::rng(8);
        let samples: Vec<PlKatetovFn> = (0..10).map(|_| random_pl(&mut rng)).collect();
        for t in [LineIsometry::Identity, LineIsometry::Reflection] {
            assert!(verify_cone_iso(t, &samples, &[ratio(1, 2), int(3)]).unwrap().holds());
        }
    }
}
