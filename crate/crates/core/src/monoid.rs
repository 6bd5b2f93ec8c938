//! Monoid and unit-group audits of `(Lip1(X), (+))` over a finite
//! metric-invariant carrier: identity and unit detection, Kuratowski-image
//! closure, associativity probes, the arg-min morphism, canonical
//! isomorphisms, cancellation counterexamples and factorization witnesses.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fnspace::{d_inf, is_katetov, is_lip1, is_positive, kuratowski, strong_min, FnOnX};
use crate::gen;
use crate::infconv::inf_conv;
use crate::magma::{FiniteMetricMagma, MagmaClass};
use crate::rational::{self, Rational};
use crate::report::TheoremReport;

fn require_invariant_group(m: &FiniteMetricMagma) -> Result<usize> {
    if !m.check_metric_invariance() {
        return Err(Error::hypothesis("metric is not invariant under translations"));
    }
    if !m.is_group() {
        return Err(Error::hypothesis(format!("carrier is a {:?}, not a group", m.classify())));
    }
    Ok(m.identity().expect("groups have an identity"))
}

/// Which monoid the unit audit runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitScope {
    /// 1-Lipschitz functions: units are `delta_y + c` for any shift.
    Lip1,
    /// Nonnegative 1-Lipschitz functions: both `f` and its inverse must be
    /// nonnegative, which forces `c = 0`.
    Lip1Plus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCertificate {
    pub base: usize,
    #[serde(with = "rational::serde_str")]
    pub shift: Rational,
    pub inverse: FnOnX,
}

/// Certifies `f = delta_y + c` and builds the inverse
/// `delta_{y^-1} - c`, checked by convolving on both sides.
pub fn is_unit(m: &FiniteMetricMagma, f: &FnOnX, scope: UnitScope) -> Result<Option<UnitCertificate>> {
    let e = require_invariant_group(m)?;
    if f.len() != m.len() {
        return Err(Error::invariant("f", "carrier size mismatch"));
    }
    if !f.is_finite_valued() {
        return Ok(None);
    }
    let n = m.len();
    let Some(y) = (0..n).find(|&y| {
        let c = f.at(y);
        (0..n).all(|x| *f.at(x) == m.dist(y, x) + c)
    }) else {
        return Ok(None);
    };
    let shift = f.at(y).clone();
    let y_inv = m.inverse(y).expect("group element has an inverse");
    let inverse = kuratowski(m, y_inv).shift(&-&shift);
    if scope == UnitScope::Lip1Plus && !(is_positive(f) && is_positive(&inverse)) {
        return Ok(None);
    }
    let id = kuratowski(m, e);
    if inf_conv(m, f, &inverse) != id || inf_conv(m, &inverse, f) != id {
        return Ok(None);
    }
    Ok(Some(UnitCertificate { base: y, shift, inverse }))
}

/// `gamma(a) (+) gamma(b) = gamma(a.b)` for every pair, plus the converse
/// direction: closure of the Kuratowski image forces a Latin square.
pub fn kuratowski_closure(m: &FiniteMetricMagma) -> TheoremReport {
    const NAME: &str = "Kuratowski embedding is a quasigroup isomorphism onto its image";
    if !m.check_metric_invariance() {
        return TheoremReport::hypothesis_unmet(NAME, "metric is not invariant under translations");
    }
    let n = m.len();
    let deltas: Vec<FnOnX> = (0..n).map(|a| kuratowski(m, a)).collect();
    let mut report = TheoremReport::new(NAME);
    let mut closed = true;
    let mut products = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = inf_conv(m, &deltas[a], &deltas[b]);
            let ab = m.op(a, b);
            if !deltas.contains(&p) {
                closed = false;
            }
            report.check(p == deltas[ab], || json!({ "a": a, "b": b, "product": p, "expected": ab }));
            products[a][b] = Some(p);
        }
    }
    let latin = m.is_latin_square();
    report.check(!closed || latin, || json!({ "closed_but_not_latin": true }));
    report.witness(json!({ "closed": closed, "latin_square": latin, "pairs": n * n }));
    let noncommuting = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| products[a][b] != products[b][a]);
    if let Some((a, b)) = noncommuting {
        report.witness(json!({ "noncommuting_pair": [a, b] }));
    }
    report
}

/// Monoid structure of `(Lip1+(X), (+))`.
///
/// On a group: `delta_e` is a two-sided identity on a generated family and
/// the law is associative on every Kuratowski triple. On a quasigroup that
/// is not a group: every Kuratowski triple breaking associativity is listed.
pub fn verify_int2(m: &FiniteMetricMagma, extra: &[FnOnX]) -> Result<TheoremReport> {
    const NAME: &str = "nonnegative 1-Lipschitz functions form a monoid under inf-convolution";
    if !m.check_metric_invariance() {
        return Ok(TheoremReport::hypothesis_unmet(NAME, "metric is not invariant under translations"));
    }
    let class = m.classify();
    if class < MagmaClass::Quasigroup {
        return Ok(TheoremReport::hypothesis_unmet(NAME, "carrier is not a quasigroup"));
    }
    for (i, f) in extra.iter().enumerate() {
        if f.len() != m.len() || !is_lip1(m.metric(), f) || !is_positive(f) {
            return Err(Error::invariant(format!("extra[{i}]"), "not a nonnegative 1-Lipschitz function"));
        }
    }
    let n = m.len();
    let deltas: Vec<FnOnX> = (0..n).map(|a| kuratowski(m, a)).collect();
    let mut report = TheoremReport::new(NAME);
    report.witness(json!({ "carrier_class": class }));

    let assoc = |a: usize, b: usize, c: usize| {
        let left = inf_conv(m, &inf_conv(m, &deltas[a], &deltas[b]), &deltas[c]);
        let right = inf_conv(m, &deltas[a], &inf_conv(m, &deltas[b], &deltas[c]));
        (left, right)
    };

    if class >= MagmaClass::Group {
        let e = m.identity().expect("group identity");
        let id = &deltas[e];
        let mut family: Vec<FnOnX> = Vec::new();
        let shifts = [rational::int(0), rational::ratio(1, 2), rational::int(1), rational::int(2)];
        for d in &deltas {
            family.extend(shifts.iter().map(|c| d.shift(c)));
        }
        if n <= 4 {
            let grid = [rational::int(0), rational::ratio(1, 2), rational::int(1)];
            family.extend(
                gen::grid_functions(n, &grid).into_iter().filter(|f| is_lip1(m.metric(), f)),
            );
        }
        family.extend(extra.iter().cloned());
        for f in &family {
            report.check(inf_conv(m, id, f) == *f && inf_conv(m, f, id) == *f, || {
                json!({ "identity_fails_on": f })
            });
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (l, r) = assoc(a, b, c);
                    report.check(l == r, || json!({ "triple": [a, b, c], "left": l, "right": r }));
                }
            }
        }
        report.witness(json!({ "identity": e, "identity_family_size": family.len(), "triples": n * n * n }));
    } else {
        let mut failures = 0usize;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (l, r) = assoc(a, b, c);
                    let ok = report.check(l == r, || {
                        json!({
                            "triple": [a, b, c],
                            "left_is_delta_of": deltas.iter().position(|d| *d == l),
                            "right_is_delta_of": deltas.iter().position(|d| *d == r),
                            "left": l,
                            "right": r,
                        })
                    });
                    failures += usize::from(!ok);
                }
            }
        }
        if failures > 0 {
            report.note(format!(
                "associativity fails on {failures} Kuratowski triples, consistent with a non-group carrier"
            ));
        } else {
            report.note("no associativity failure among Kuratowski triples");
        }
        if m.identity().is_none() {
            report.note("carrier has no two-sided identity");
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MorphismReport {
    pub pairs_checked: u64,
    pub violations: Vec<serde_json::Value>,
    pub holds: bool,
}

impl MorphismReport {
    fn finish(mut self) -> Self {
        self.holds = self.violations.is_empty();
        self
    }
}

fn require_strong_min(f: &FnOnX, name: &str) -> Result<usize> {
    strong_min(f).ok_or_else(|| Error::invariant(name, "function has no strong minimum"))
}

/// `argmin(f (+) g) = argmin(f) . argmin(g)`, plus `argmin(gamma(x)) = x`.
pub fn argmin_morphism(m: &FiniteMetricMagma, f: &FnOnX, g: &FnOnX) -> Result<MorphismReport> {
    require_invariant_group(m)?;
    let xf = require_strong_min(f, "f")?;
    let xg = require_strong_min(g, "g")?;
    let mut r = MorphismReport::default();
    let got = strong_min(&inf_conv(m, f, g));
    r.pairs_checked += 1;
    if got != Some(m.op(xf, xg)) {
        r.violations.push(json!({ "f": f, "g": g, "argmin_conv": got, "expected": m.op(xf, xg) }));
    }
    for x in 0..m.len() {
        r.pairs_checked += 1;
        if strong_min(&kuratowski(m, x)) != Some(x) {
            r.violations.push(json!({ "kuratowski_argmin_fails_at": x }));
        }
    }
    Ok(r.finish())
}

/// The morphism identity over every ordered pair of a family.
pub fn argmin_morphism_all(m: &FiniteMetricMagma, family: &[FnOnX]) -> Result<MorphismReport> {
    require_invariant_group(m)?;
    let mins: Vec<usize> =
        family.iter().enumerate().map(|(i, f)| require_strong_min(f, &format!("family[{i}]"))).collect::<Result<_>>()?;
    let mut r = MorphismReport::default();
    for (i, f) in family.iter().enumerate() {
        for (j, g) in family.iter().enumerate() {
            r.pairs_checked += 1;
            let got = strong_min(&inf_conv(m, f, g));
            let want = m.op(mins[i], mins[j]);
            if got != Some(want) {
                r.violations.push(json!({ "f": f, "g": g, "argmin_conv": got, "expected": want }));
            }
        }
    }
    Ok(r.finish())
}

/// Checks that `hom: m -> target` is a group homomorphism.
pub fn is_homomorphism(m: &FiniteMetricMagma, target: &FiniteMetricMagma, hom: &[usize]) -> bool {
    let n = m.len();
    hom.len() == n
        && hom.iter().all(|&h| h < target.len())
        && (0..n).all(|a| (0..n).all(|b| hom[m.op(a, b)] == target.op(hom[a], hom[b])))
}

/// `h(argmin(f (+) g)) = h(argmin f) . h(argmin g)` for a group
/// homomorphism `h` (a finite character).
pub fn character_composition(
    m: &FiniteMetricMagma,
    target: &FiniteMetricMagma,
    hom: &[usize],
    f: &FnOnX,
    g: &FnOnX,
) -> Result<MorphismReport> {
    require_invariant_group(m)?;
    if !is_homomorphism(m, target, hom) {
        return Err(Error::invariant("hom", "map is not a homomorphism"));
    }
    let xf = require_strong_min(f, "f")?;
    let xg = require_strong_min(g, "g")?;
    let mut r = MorphismReport { pairs_checked: 1, ..Default::default() };
    let x = strong_min(&inf_conv(m, f, g));
    let lhs = x.map(|x| hom[x]);
    let rhs = target.op(hom[xf], hom[xg]);
    if lhs != Some(rhs) {
        r.violations.push(json!({ "lhs": lhs, "rhs": rhs }));
    }
    Ok(r.finish())
}

/// The transformer `f -> f o T^-1` induced by an isometric group isomorphism.
#[derive(Clone, Debug)]
pub struct CanonicalIso {
    pub map: Vec<usize>,
    inverse: Vec<usize>,
}

impl CanonicalIso {
    pub fn apply(&self, f: &FnOnX) -> FnOnX {
        f.compose(&self.inverse)
    }
}

/// Validates `t` (bijection, homomorphism, isometry) and returns `Phi`.
pub fn canonical_iso(m1: &FiniteMetricMagma, m2: &FiniteMetricMagma, t: &[usize]) -> Result<CanonicalIso> {
    let n = m1.len();
    if m2.len() != n || t.len() != n {
        return Err(Error::invariant("map", "sizes differ"));
    }
    let mut inverse = vec![usize::MAX; n];
    for (x, &y) in t.iter().enumerate() {
        if y >= n || inverse[y] != usize::MAX {
            return Err(Error::invariant(format!("map[{x}]"), "map is not a bijection"));
        }
        inverse[y] = x;
    }
    if !is_homomorphism(m1, m2, t) {
        return Err(Error::invariant("map", "map is not a homomorphism"));
    }
    for a in 0..n {
        for b in 0..n {
            if m2.dist(t[a], t[b]) != m1.dist(a, b) {
                return Err(Error::invariant(format!("map[{a}], map[{b}]"), "map is not an isometry"));
            }
        }
    }
    Ok(CanonicalIso { map: t.to_vec(), inverse })
}

/// Builds `Phi` and checks that it is an isometric monoid homomorphism on
/// all Kuratowski elements plus `suite`, and that it maps `delta_x` to
/// `delta_{T x}` and Katetov maps to Katetov maps.
pub fn verify_canonical_iso(
    m1: &FiniteMetricMagma,
    m2: &FiniteMetricMagma,
    t: &[usize],
    suite: &[FnOnX],
) -> Result<(CanonicalIso, TheoremReport)> {
    require_invariant_group(m1)?;
    require_invariant_group(m2)?;
    let phi = canonical_iso(m1, m2, t)?;
    let n = m1.len();
    let mut report = TheoremReport::new("f -> f o T^-1 is an isometric monoid isomorphism");
    let mut family: Vec<FnOnX> = (0..n).map(|a| kuratowski(m1, a)).collect();
    for (i, f) in suite.iter().enumerate() {
        if f.len() != n || !f.is_finite_valued() {
            return Err(Error::invariant(format!("suite[{i}]"), "expected a finite function on the source carrier"));
        }
        family.push(f.clone());
    }
    for x in 0..n {
        let img = phi.apply(&family[x]);
        report.check(img == kuratowski(m2, t[x]), || json!({ "kuratowski_image_fails_at": x }));
    }
    for f in &family {
        if is_katetov(m1.metric(), f) {
            report.check(is_katetov(m2.metric(), &phi.apply(f)), || json!({ "katetov_lost": f }));
        }
    }
    for f in &family {
        for g in &family {
            let lhs = phi.apply(&inf_conv(m1, f, g));
            let rhs = inf_conv(m2, &phi.apply(f), &phi.apply(g));
            report.check(lhs == rhs, || json!({ "f": f, "g": g, "phi_of_conv": lhs, "conv_of_phi": rhs }));
            report.check(d_inf(f, g) == d_inf(&phi.apply(f), &phi.apply(g)), || {
                json!({ "distance_changed": [f, g] })
            });
        }
    }
    report.witness(json!({ "map": t, "family_size": family.len() }));
    Ok((phi, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationWitness {
    pub f: FnOnX,
    pub h: FnOnX,
    pub g: FnOnX,
}

/// Searches grid-valued 1-Lipschitz functions for `f != h` with
/// `f (+) g = h (+) g`. The returned triple is recomputed before return.
pub fn cancellation_search(m: &FiniteMetricMagma, grid: &[Rational]) -> Option<CancellationWitness> {
    if grid.is_empty() {
        return None;
    }
    let family: Vec<FnOnX> =
        gen::grid_functions(m.len(), grid).into_iter().filter(|f| is_lip1(m.metric(), f)).collect();
    for g in &family {
        let mut seen: HashMap<FnOnX, usize> = HashMap::new();
        for (i, f) in family.iter().enumerate() {
            let p = inf_conv(m, f, g);
            if let Some(&j) = seen.get(&p) {
                let (f0, h0) = (&family[j], f);
                if f0 != h0 && inf_conv(m, f0, g) == inf_conv(m, h0, g) {
                    return Some(CancellationWitness { f: f0.clone(), h: h0.clone(), g: g.clone() });
                }
            } else {
                seen.insert(p, i);
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationWitness {
    pub phi: FnOnX,
    pub psi: FnOnX,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub report: TheoremReport,
}

/// Constructive witness for `f(ab) = min { phi(a) + psi(b) : phi (+) psi = f }`:
/// `phi = f (+) gamma(b^-1)`, `psi = gamma(b)`. Every alternative
/// decomposition `(f (+) gamma(c^-1), gamma(c))` is checked to factor `f`
/// and to give a value no smaller than `f(ab)`.
pub fn factorization_witness(m: &FiniteMetricMagma, f: &FnOnX, a: usize, b: usize) -> Result<FactorizationWitness> {
    require_invariant_group(m)?;
    let n = m.len();
    if a >= n || b >= n {
        return Err(Error::invariant("a/b", "index out of range"));
    }
    if f.len() != n || !is_katetov(m.metric(), f) {
        return Err(Error::invariant("f", "not a Katetov map"));
    }
    let target = f.at(m.op(a, b)).clone();
    let decompose = |c: usize| {
        let c_inv = m.inverse(c).expect("group inverse");
        (inf_conv(m, f, &kuratowski(m, c_inv)), kuratowski(m, c))
    };
    let mut report = TheoremReport::new("Katetov maps evaluate on products as an infimum over factorizations");
    let (phi, psi) = decompose(b);
    let value = phi.at(a) + psi.at(b);
    report.check(inf_conv(m, &phi, &psi) == *f, || json!({ "witness_does_not_factor": true }));
    report.check(value == target, || json!({ "witness_value": rational::format(&value), "f_ab": rational::format(&target) }));
    report.check(is_katetov(m.metric(), &phi) && is_katetov(m.metric(), &psi), || json!({ "witness_not_katetov": true }));
    for c in 0..n {
        let (p, q) = decompose(c);
        report.check(inf_conv(m, &p, &q) == *f, || json!({ "decomposition_does_not_factor": c }));
        let v = p.at(a) + q.at(b);
        report.check(v >= target, || json!({ "decomposition_below_f_ab": c, "value": rational::format(&v) }));
    }
    report.witness(json!({ "a": a, "b": b, "phi": phi, "psi": psi }));
    Ok(FactorizationWitness { phi, psi, value, report })
}

/// `f (+) delta_a = f(. a^-1)` and `delta_a (+) f = f(a^-1 .)`.
pub fn translation_identity(m: &FiniteMetricMagma, f: &FnOnX, a: usize) -> Result<TheoremReport> {
    require_invariant_group(m)?;
    let n = m.len();
    let a_inv = m.inverse(a).expect("group inverse");
    let right: Vec<usize> = (0..n).map(|x| m.op(x, a_inv)).collect();
    let left: Vec<usize> = (0..n).map(|x| m.op(a_inv, x)).collect();
    let d = kuratowski(m, a);
    let mut report = TheoremReport::new("convolving with a Kuratowski element translates");
    report.check(inf_conv(m, f, &d) == f.compose(&right), || json!({ "right_translation_fails": a }));
    report.check(inf_conv(m, &d, f) == f.compose(&left), || json!({ "left_translation_fails": a }));
    Ok(report)
}

/// Certificate of the product of two units.
pub fn unit_product(m: &FiniteMetricMagma, c1: &UnitCertificate, c2: &UnitCertificate) -> Result<Option<UnitCertificate>> {
    let f1 = kuratowski(m, c1.base).shift(&c1.shift);
    let f2 = kuratowski(m, c2.base).shift(&c2.shift);
    is_unit(m, &inf_conv(m, &f1, &f2), UnitScope::Lip1)
}
