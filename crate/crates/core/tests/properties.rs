//! Randomized invariants, each checked against a brute-force oracle written
//! here rather than reusing library internals.

use proptest::prelude::*;

use infconv::fnspace::{is_lip1, ExtValue, FnOnX};
use infconv::gen;
use infconv::infconv::inf_conv;
use infconv::magma::FiniteMetricMagma;
use infconv::plcone::{canonical_form, epi_scale, eval_points, katetov_slack, pl_infconv, random_pl, PlKatetovFn};
use infconv::rational::{abs, int, ratio, Rational};
use infconv::zline::{cyclic_minplus, kernels, z_minplus, CofiniteSeq, CyclicMode, CyclicSeq};

fn magmas() -> Vec<FiniteMetricMagma> {
    vec![
        FiniteMetricMagma::cyclic(2),
        FiniteMetricMagma::cyclic(5),
        FiniteMetricMagma::cyclic_word_metric(6),
        FiniteMetricMagma::dihedral(3),
        FiniteMetricMagma::subtraction(4),
        FiniteMetricMagma::left_projection(3),
        FiniteMetricMagma::nonassociative_loop5(),
    ]
}

fn magma() -> impl Strategy<Value = FiniteMetricMagma> {
    (0..magmas().len()).prop_map(|i| magmas().swap_remove(i))
}

fn quarter(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (4 * lo..=4 * hi).prop_map(|k| ratio(k, 4))
}

fn values(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(quarter(-3, 3), n)
}

fn magma_with_fns() -> impl Strategy<Value = (FiniteMetricMagma, Vec<Rational>, Vec<Rational>)> {
    magma().prop_flat_map(|m| {
        let n = m.len();
        (Just(m), values(n), values(n))
    })
}

fn fn_of(v: &[Rational]) -> FnOnX {
    FnOnX::from_rationals(v.to_vec())
}

fn conv_oracle(m: &FiniteMetricMagma, f: &[Rational], g: &[Rational]) -> Vec<Option<Rational>> {
    let n = m.len();
    (0..n)
        .map(|x| {
            let mut best: Option<Rational> = None;
            for y in 0..n {
                for z in 0..n {
                    if m.op(y, z) == x {
                        let s = &f[y] + &g[z];
                        if best.as_ref().map_or(true, |b| s < *b) {
                            best = Some(s);
                        }
                    }
                }
            }
            best
        })
        .collect()
}

fn as_options(f: &FnOnX) -> Vec<Option<Rational>> {
    f.values().iter().map(|v| v.finite().cloned()).collect()
}

fn dis_values(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(quarter(0, 1), n)
}

fn cyclic_triple() -> impl Strategy<Value = (CyclicSeq, CyclicSeq, CyclicSeq)> {
    (1usize..9).prop_flat_map(|p| {
        (dis_values(p), dis_values(p), dis_values(p)).prop_map(|(a, b, c)| {
            (CyclicSeq::new(a).unwrap(), CyclicSeq::new(b).unwrap(), CyclicSeq::new(c).unwrap())
        })
    })
}

fn cofinite() -> impl Strategy<Value = CofiniteSeq> {
    (quarter(0, 1), prop::collection::btree_map(-6i64..=6, quarter(0, 1), 0..4))
        .prop_map(|(d, ex)| CofiniteSeq::new(d, ex))
}

/// Convex sequence of length `len` with integer first differences.
fn convex_ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    (-20i64..20, prop::collection::vec(-10i64..10, len.saturating_sub(1))).prop_map(|(start, mut d)| {
        d.sort();
        let mut out = vec![start];
        for step in d {
            out.push(out.last().unwrap() + step);
        }
        out
    })
}

fn naive(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![i64::MAX; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].min(x + y);
        }
    }
    out
}

/// Breakpoint list with increasing x; slopes are left to chance so that some
/// candidates are rejected.
fn raw_points() -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    prop::collection::vec((1i64..8, quarter(-3, 3)), 1..5).prop_map(|steps| {
        let mut x = int(-4);
        steps
            .into_iter()
            .map(|(dx, v)| {
                x += ratio(dx, 2);
                (x.clone(), v)
            })
            .collect()
    })
}

fn pl_fn() -> impl Strategy<Value = PlKatetovFn> {
    any::<u64>().prop_map(|seed| random_pl(&mut gen::rng(seed)))
}

fn grid() -> Vec<Rational> {
    (-60..=60).map(|k| ratio(k, 4)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conv_matches_oracle((m, f, g) in magma_with_fns()) {
        let got = inf_conv(&m, &fn_of(&f), &fn_of(&g));
        prop_assert_eq!(as_options(&got), conv_oracle(&m, &f, &g));
    }

    #[test]
    fn conv_is_monotone((m, f, g) in magma_with_fns(), bumps in prop::collection::vec(quarter(0, 2), 7)) {
        let f2: Vec<Rational> = f.iter().zip(bumps.iter().cycle()).map(|(a, b)| a + b).collect();
        let lo = inf_conv(&m, &fn_of(&f), &fn_of(&g));
        let hi = inf_conv(&m, &fn_of(&f2), &fn_of(&g));
        prop_assert!(lo.le(&hi));
    }

    #[test]
    fn constants_pass_through((m, f, g) in magma_with_fns(), c in quarter(-2, 2), e in quarter(-2, 2)) {
        let base = inf_conv(&m, &fn_of(&f), &fn_of(&g));
        let moved = inf_conv(&m, &fn_of(&f).shift(&c), &fn_of(&g).shift(&e));
        let expect = FnOnX::new(base.values().iter().map(|v| match v {
            ExtValue::Finite(q) => ExtValue::Finite(q + &c + &e),
            other => other.clone(),
        }).collect()).unwrap();
        prop_assert_eq!(moved, expect);
    }

    #[test]
    fn lip1_closed_on_invariant_groups(i in 0usize..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = [
            FiniteMetricMagma::cyclic(5),
            FiniteMetricMagma::cyclic_word_metric(7),
            FiniteMetricMagma::dihedral(3),
            FiniteMetricMagma::cyclic_word_metric(4),
        ][i].clone();
        prop_assume!(m.check_metric_invariance());
        let f = gen::random_lip1(m.metric(), &mut gen::rng(s1));
        let g = gen::random_lip1(m.metric(), &mut gen::rng(s2));
        prop_assert!(is_lip1(m.metric(), &inf_conv(&m, &f, &g)));
    }

    #[test]
    fn cyclic_is_commutative_and_associative((u, v, w) in cyclic_triple()) {
        let c = |a: &CyclicSeq, b: &CyclicSeq| cyclic_minplus(a, b, CyclicMode::Naive).unwrap();
        prop_assert_eq!(c(&u, &v), c(&v, &u));
        prop_assert_eq!(c(&c(&u, &v), &w), c(&u, &c(&v, &w)));
    }

    #[test]
    fn fast_cyclic_modes_agree(p in 1usize..12, a in any::<u64>(), b in any::<u64>()) {
        let conv = |len: usize, seed: u64| -> Vec<Rational> {
            let mut r = gen::rng(seed);
            let mut d: Vec<Rational> = (1..len).map(|_| gen::random_ratio(&mut r, 0, 1, 4) / int(len as i64)).collect();
            d.sort();
            let mut out = vec![int(0)];
            for s in d { let next = out.last().unwrap() + s; out.push(next); }
            out
        };
        let u = CyclicSeq::new(conv(p, a)).unwrap();
        let v = CyclicSeq::new(conv(p, b)).unwrap();
        let slow = cyclic_minplus(&u, &v, CyclicMode::Naive).unwrap();
        prop_assert_eq!(&cyclic_minplus(&u, &v, CyclicMode::Merge).unwrap(), &slow);
        prop_assert_eq!(&cyclic_minplus(&u, &v, CyclicMode::Smawk).unwrap(), &slow);
    }

    #[test]
    fn zseq_matches_window(u in cofinite(), v in cofinite()) {
        let w = z_minplus(&u, &v).unwrap();
        for n in -30i64..=30 {
            let brute = (-80i64..=80).map(|k| u.get(n - k) + v.get(k)).min().unwrap();
            prop_assert_eq!(w.get(n), &brute, "index {}", n);
        }
    }

    #[test]
    fn kernels_match_naive((a, b) in (1usize..40, 1usize..40).prop_flat_map(|(la, lb)| (convex_ints(la), convex_ints(lb)))) {
        let expect = naive(&a, &b);
        prop_assert_eq!(kernels::naive_minplus(&a, &b).unwrap(), expect.clone());
        prop_assert_eq!(kernels::convex_minplus_merge(&a, &b).unwrap(), expect.clone());
        prop_assert_eq!(kernels::smawk_minplus(&a, &b).unwrap(), expect);
    }

    #[test]
    fn smawk_needs_only_one_convex_side(a in prop::collection::vec(-30i64..30, 1..30), b in convex_ints(17)) {
        prop_assert_eq!(kernels::smawk_minplus(&a, &b).unwrap(), naive(&a, &b));
    }

    #[test]
    fn katetov_reduction_agrees_with_grid(points in raw_points()) {
        let Ok(canon) = canonical_form(points.clone()) else { return Ok(()); };
        let g = grid();
        let vals: Vec<Rational> = g.iter().map(|x| eval_points(&canon, x)).collect();
        // The pruned curve is the same function as the raw one.
        for (x, v) in g.iter().zip(&vals) {
            prop_assert_eq!(v, &eval_points(&points, x));
        }
        let mut grid_ok = true;
        for i in 0..g.len() {
            for j in 0..g.len() {
                let d = abs(&(&g[i] - &g[j]));
                if &vals[i] + &vals[j] < d || abs(&(&vals[i] - &vals[j])) > d {
                    grid_ok = false;
                }
            }
        }
        // Every breakpoint lies inside [-4, 12]; the grid reaches both tails.
        prop_assert_eq!(katetov_slack(&canon) >= int(0), grid_ok);
        prop_assert_eq!(PlKatetovFn::new(points).is_ok(), grid_ok);
    }

    #[test]
    fn pl_conv_commutative_associative(f in pl_fn(), g in pl_fn(), h in pl_fn()) {
        prop_assert_eq!(pl_infconv(&f, &g), pl_infconv(&g, &f));
        prop_assert_eq!(pl_infconv(&pl_infconv(&f, &g), &h), pl_infconv(&f, &pl_infconv(&g, &h)));
    }

    #[test]
    fn pl_conv_pointwise(f in pl_fn(), g in pl_fn()) {
        // y -> f(y) + g(x - y) is convex with end slopes -2 and +2, so its
        // minimum sits at a kink of one of the two terms.
        let c = pl_infconv(&f, &g);
        for x in (-40..=40).map(|k| ratio(k, 4)) {
            let ys = f.breakpoints().iter().map(|p| p.0.clone()).chain(g.breakpoints().iter().map(|p| &x - &p.0));
            let exact = ys.map(|y| f.eval(&y) + g.eval(&(&x - &y))).min().unwrap();
            prop_assert_eq!(c.eval(&x), exact);
        }
    }

    #[test]
    fn scaling_is_a_cone_action(f in pl_fn(), g in pl_fn(), a in 1i64..8, b in 1i64..8) {
        let la = ratio(a, 4);
        let lb = ratio(b, 4);
        let s = |l: &Rational, f: &PlKatetovFn| epi_scale(l, f).unwrap();
        prop_assert_eq!(s(&la, &s(&lb, &f)), s(&(&la * &lb), &f));
        prop_assert_eq!(s(&la, &pl_infconv(&f, &g)), pl_infconv(&s(&la, &f), &s(&la, &g)));
        prop_assert_eq!(s(&int(1), &f), f);
    }
}
