//! The inf-convolution engine over an arbitrary finite magma, attainment
//! analysis on fibers and the strong-minimum equivalence verifier.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fnspace::{strong_min, ExtValue, FnOnX};
use crate::magma::{FiniteMetricMagma, InvarianceConstants};

/// `(f (+) g)(x) = min { f(y) + g(z) : y . z = x }`, `+inf` on empty fibers.
pub fn inf_conv(m: &FiniteMetricMagma, f: &FnOnX, g: &FnOnX) -> FnOnX {
    let n = m.len();
    assert!(f.len() == n && g.len() == n, "function and carrier sizes differ");
    let mut out = vec![ExtValue::PosInf; n];
    for y in 0..n {
        let fy = f.get(y);
        if !fy.is_finite() {
            continue;
        }
        for z in 0..n {
            let s = fy + g.get(z);
            let slot = &mut out[m.op(y, z)];
            if s < *slot {
                *slot = s;
            }
        }
    }
    FnOnX::new(out).expect("a finite pair always lands somewhere")
}

/// Minimizers of `eta(y, z) = f(y) + g(z)` on the fiber over `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttainmentReport {
    pub target: usize,
    #[serde(serialize_with = "crate::io::ser_ext")]
    pub value: ExtValue,
    pub minimizing_pairs: Vec<(usize, usize)>,
    pub strongly_attained: bool,
}

pub fn attainment(m: &FiniteMetricMagma, f: &FnOnX, g: &FnOnX, a: usize) -> AttainmentReport {
    let fiber = m.delta_fiber(a);
    let value = fiber.pairs.iter().map(|&(y, z)| f.get(y) + g.get(z)).min().unwrap_or(ExtValue::PosInf);
    let minimizing_pairs: Vec<(usize, usize)> = if value.is_finite() {
        fiber.pairs.iter().copied().filter(|&(y, z)| f.get(y) + g.get(z) == value).collect()
    } else {
        Vec::new()
    };
    let strongly_attained = minimizing_pairs.len() == 1;
    AttainmentReport { target: a, value, minimizing_pairs, strongly_attained }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fond0Outcome {
    /// Both directions agree and all consequences hold.
    Holds,
    /// Hypotheses met but the equivalence or a consequence failed.
    Violated,
    /// The law is not d-invariant at a strong-minimum candidate.
    HypothesisUnmet,
}

/// Evidence for the equivalence "f (+) g has a strong minimum at a" iff
/// "a = y~ z~ with f, g strongly minimized at y~, z~".
#[derive(Clone, Debug, Serialize)]
pub struct Fond0Report {
    pub outcome: Fond0Outcome,
    /// Strong minimizer of `f (+) g`.
    pub direction_i: Option<usize>,
    /// Strong minimizers of `f` and `g`.
    pub direction_ii: Option<(usize, usize)>,
    pub invariance: Option<InvarianceConstants>,
    pub equivalence_holds: bool,
    /// `None` when not applicable (the two directions do not both hold).
    pub consequence1_holds: Option<bool>,
    pub consequence2_holds: Option<bool>,
    pub counterexample: Option<serde_json::Value>,
}

/// Checks both sides of the strong-minimum equivalence and, when both
/// hold, strong attainment at `(y~, z~)` and the two one-sided growth
/// inequalities for every `x`.
pub fn verify_fond0(m: &FiniteMetricMagma, f: &FnOnX, g: &FnOnX) -> Result<Fond0Report> {
    if f.len() != m.len() || g.len() != m.len() {
        return Err(Error::invariant("f/g", "carrier size mismatch"));
    }
    f.finite_values()?;
    g.finite_values()?;
    let h = inf_conv(m, f, g);
    let direction_i = strong_min(&h);
    let direction_ii = strong_min(f).zip(strong_min(g));

    let candidates: Vec<usize> = direction_i.into_iter().chain(direction_ii.map(|(y, z)| m.op(y, z))).collect();
    let mut invariance = None;
    for &a in &candidates {
        match m.d_invariance_at(a) {
            Some(c) => invariance = Some(c),
            None => {
                return Ok(Fond0Report {
                    outcome: Fond0Outcome::HypothesisUnmet,
                    direction_i,
                    direction_ii,
                    invariance: None,
                    equivalence_holds: false,
                    consequence1_holds: None,
                    consequence2_holds: None,
                    counterexample: Some(json!({ "not_d_invariant_at": a })),
                })
            }
        }
    }

    let equivalence_holds = match (direction_i, direction_ii) {
        (None, None) => true,
        (Some(a), Some((y, z))) => m.op(y, z) == a,
        _ => false,
    };

    let mut consequence1_holds = None;
    let mut consequence2_holds = None;
    let mut counterexample = None;
    if let (Some(a), Some((yt, zt))) = (direction_i, direction_ii) {
        let att = attainment(m, f, g, a);
        let c1 = att.strongly_attained && att.minimizing_pairs == [(yt, zt)];
        let ha = h.at(a);
        let mut c2 = true;
        for x in 0..m.len() {
            let left = f.at(x) - f.at(yt) >= h.at(m.op(x, zt)) - ha;
            let right = g.at(x) - g.at(zt) >= h.at(m.op(yt, x)) - ha;
            if !(left && right) {
                c2 = false;
                counterexample.get_or_insert_with(|| json!({ "consequence2_fails_at": x }));
            }
        }
        if !c1 {
            counterexample.get_or_insert_with(|| json!({ "attainment": att }));
        }
        consequence1_holds = Some(c1);
        consequence2_holds = Some(c2);
    }
    if !equivalence_holds {
        counterexample = Some(json!({
            "direction_i": direction_i,
            "direction_ii": direction_ii,
            "f": f,
            "g": g,
            "f_conv_g": h,
        }));
    }
    let ok = equivalence_holds && consequence1_holds != Some(false) && consequence2_holds != Some(false);
    Ok(Fond0Report {
        outcome: if ok { Fond0Outcome::Holds } else { Fond0Outcome::Violated },
        direction_i,
        direction_ii,
        invariance,
        equivalence_holds,
        consequence1_holds,
        consequence2_holds,
        counterexample,
    })
}

/// Parenthesization of an n-fold product; leaves index into the input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssocTree {
    Leaf(usize),
    Node(Box<AssocTree>, Box<AssocTree>),
}

impl AssocTree {
    pub fn node(l: AssocTree, r: AssocTree) -> Self {
        AssocTree::Node(Box::new(l), Box::new(r))
    }

    /// `((0 1) 2) ...`
    pub fn left_comb(n: usize) -> Self {
        assert!(n > 0);
        (1..n).fold(AssocTree::Leaf(0), |acc, i| AssocTree::node(acc, AssocTree::Leaf(i)))
    }

    /// `0 (1 (2 ...))`
    pub fn right_comb(n: usize) -> Self {
        assert!(n > 0);
        (0..n - 1).rev().fold(AssocTree::Leaf(n - 1), |acc, i| AssocTree::node(AssocTree::Leaf(i), acc))
    }
}

/// Folds `inf_conv` along `order`.
pub fn n_fold_conv(m: &FiniteMetricMagma, fs: &[FnOnX], order: &AssocTree) -> Result<FnOnX> {
    match order {
        AssocTree::Leaf(i) => fs
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::invariant("order", format!("leaf {i} out of range"))),
        AssocTree::Node(l, r) => Ok(inf_conv(m, &n_fold_conv(m, fs, l)?, &n_fold_conv(m, fs, r)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fnspace::kuratowski;
    use crate::rational::int;

    /// Independent per-target evaluator.
    fn oracle(m: &FiniteMetricMagma, f: &FnOnX, g: &FnOnX) -> Vec<ExtValue> {
        let n = m.len();
        (0..n)
            .map(|x| {
                let mut best = ExtValue::PosInf;
                for y in 0..n {
                    for z in 0..n {
                        if m.law()[y][z] == x {
                            let s = f.get(y) + g.get(z);
                            if s < best {
                                best = s;
                            }
                        }
                    }
                }
                best
            })
            .collect()
    }

    #[test]
    fn kuratowski_product() {
        let z3 = FiniteMetricMagma::cyclic(3);
        assert_eq!(inf_conv(&z3, &kuratowski(&z3, 1), &kuratowski(&z3, 2)), FnOnX::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn identity_and_zero_collapse() {
        let m = FiniteMetricMagma::cyclic_word_metric(5);
        let e = kuratowski(&m, 0);
        let f = FnOnX::from_ratios(&[(1, 1), (3, 2), (2, 1), (3, 2), (1, 2)]);
        assert_eq!(inf_conv(&m, &e, &f), f);
        assert_eq!(inf_conv(&m, &f, &e), f);
        let zero = FnOnX::constant(5, int(0));
        assert_eq!(inf_conv(&m, &f, &zero), FnOnX::constant(5, f.min_value()));
    }

    #[test]
    fn agrees_with_oracle_on_projection_magma() {
        let m = FiniteMetricMagma::left_projection(3);
        let f = FnOnX::from_ints(&[2, 0, 1]);
        let g = FnOnX::from_ints(&[5, 3, 4]);
        assert_eq!(inf_conv(&m, &f, &g).values(), oracle(&m, &f, &g).as_slice());
    }

    #[test]
    fn empty_fiber_is_infinite() {
        // Constant law: only element 0 is ever a product.
        let m = FiniteMetricMagma::from_fn(3, |_, _| 0);
        let f = FnOnX::from_ints(&[1, 1, 1]);
        let h = inf_conv(&m, &f, &f);
        assert_eq!(h.get(1), &ExtValue::PosInf);
        let att = attainment(&m, &f, &f, 2);
        assert_eq!(att.value, ExtValue::PosInf);
        assert!(att.minimizing_pairs.is_empty());
        assert!(!att.strongly_attained);
    }

    #[test]
    fn attainment_examples() {
        let z3 = FiniteMetricMagma::cyclic(3);
        let att = attainment(&z3, &kuratowski(&z3, 1), &kuratowski(&z3, 2), 0);
        assert_eq!(att.minimizing_pairs, vec![(1, 2)]);
        assert!(att.strongly_attained);
        let z2 = FiniteMetricMagma::cyclic(2);
        let zero = FnOnX::constant(2, int(0));
        let att = attainment(&z2, &zero, &zero, 0);
        assert_eq!(att.minimizing_pairs.len(), 2);
        assert!(!att.strongly_attained);
    }

    #[test]
    fn fond0_worked_instance() {
        let z3 = FiniteMetricMagma::cyclic(3);
        let f = FnOnX::from_ints(&[2, 1, 2]);
        let g = FnOnX::from_ints(&[1, 1, 0]);
        assert_eq!(inf_conv(&z3, &f, &g), FnOnX::from_ints(&[1, 2, 2]));
        let r = verify_fond0(&z3, &f, &g).unwrap();
        assert_eq!(r.outcome, Fond0Outcome::Holds);
        assert_eq!(r.direction_i, Some(0));
        assert_eq!(r.direction_ii, Some((1, 2)));
        assert_eq!(r.consequence1_holds, Some(true));
        assert_eq!(r.consequence2_holds, Some(true));
    }

    #[test]
    fn fond0_tied_minima_vacuous() {
        let z3 = FiniteMetricMagma::cyclic(3);
        let f = FnOnX::from_ints(&[0, 0, 1]);
        let e = kuratowski(&z3, 0);
        let r = verify_fond0(&z3, &f, &e).unwrap();
        assert_eq!(r.direction_i, None);
        assert_eq!(r.direction_ii, None);
        assert!(r.equivalence_holds);
        assert_eq!(r.outcome, Fond0Outcome::Holds);
        assert_eq!(r.consequence1_holds, None);
    }

    #[test]
    fn fond0_reports_unmet_hypothesis() {
        let p = FiniteMetricMagma::left_projection(3);
        let f = FnOnX::from_ints(&[0, 1, 1]);
        let r = verify_fond0(&p, &f, &f).unwrap();
        assert_eq!(r.outcome, Fond0Outcome::HypothesisUnmet);
    }

    #[test]
    fn n_fold_orders() {
        let z5 = FiniteMetricMagma::cyclic(5);
        let ds: Vec<FnOnX> = (0..3).map(|a| kuratowski(&z5, a)).collect();
        assert_eq!(n_fold_conv(&z5, &ds[..1], &AssocTree::Leaf(0)).unwrap(), ds[0]);
        let l = n_fold_conv(&z5, &ds, &AssocTree::left_comb(3)).unwrap();
        let r = n_fold_conv(&z5, &ds, &AssocTree::right_comb(3)).unwrap();
        assert_eq!(l, r);

        let q = FiniteMetricMagma::subtraction(5);
        let ds: Vec<FnOnX> = (0..3).map(|a| kuratowski(&q, a)).collect();
        assert_eq!(n_fold_conv(&q, &ds, &AssocTree::left_comb(3)).unwrap(), kuratowski(&q, 2));
        assert_eq!(n_fold_conv(&q, &ds, &AssocTree::right_comb(3)).unwrap(), kuratowski(&q, 1));
        assert!(n_fold_conv(&q, &ds, &AssocTree::Leaf(7)).is_err());
    }
}
