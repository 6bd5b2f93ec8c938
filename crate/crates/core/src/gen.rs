//! Seeded generators for test families: grid-valued functions, random
//! Lipschitz and Katetov maps, Lipschitz extensions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fnspace::{kuratowski_in, FnOnX};
use crate::magma::MetricTable;
use crate::rational::{self, Rational};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x1f2e_3d4c;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every function `X -> grid` in lexicographic order of value indices.
pub fn grid_functions(n: usize, grid: &[Rational]) -> Vec<FnOnX> {
    let k = grid.len();
    assert!(k > 0);
    let total = k.checked_pow(n as u32).expect("grid enumeration too large");
    (0..total)
        .map(|mut code| {
            let mut vals = vec![rational::zero(); n];
            for slot in vals.iter_mut().rev() {
                *slot = grid[code % k].clone();
                code /= k;
            }
            FnOnX::from_rationals(vals)
        })
        .collect()
}

/// A random multiple of `1/den` in `[lo, hi]` (both in units of `1/den`).
pub fn random_ratio(rng: &mut impl Rng, lo: i64, hi: i64, den: i64) -> Rational {
    rational::ratio(rng.gen_range(lo..=hi), den)
}

/// Random point of `[lo, hi]` on the quarter subdivision.
fn pick_between(rng: &mut impl Rng, lo: &Rational, hi: &Rational) -> Rational {
    let t = rational::ratio(rng.gen_range(0..=4), 4);
    lo + (hi - lo) * t
}

/// Extends `partial` (values known on some points) to a 1-Lipschitz map on
/// the whole space, one point at a time in random order, each new value
/// drawn from its admissible interval.
pub fn random_lipschitz_extension(
    metric: &MetricTable,
    partial: &[Option<Rational>],
    rng: &mut impl Rng,
) -> FnOnX {
    let n = metric.len();
    assert_eq!(partial.len(), n);
    let mut vals: Vec<Option<Rational>> = partial.to_vec();
    let mut order: Vec<usize> = (0..n).filter(|&i| vals[i].is_none()).collect();
    order.shuffle(rng);
    for x in order {
        let known: Vec<(usize, Rational)> =
            vals.iter().enumerate().filter_map(|(i, v)| v.clone().map(|v| (i, v))).collect();
        let v = if known.is_empty() {
            random_ratio(rng, -8, 8, 4)
        } else {
            let lo = known.iter().map(|(i, v)| v - metric.dist(*i, x)).max().unwrap();
            let hi = known.iter().map(|(i, v)| v + metric.dist(*i, x)).min().unwrap();
            pick_between(rng, &lo, &hi)
        };
        vals[x] = Some(v);
    }
    FnOnX::from_rationals(vals.into_iter().map(Option::unwrap).collect())
}

pub fn random_lip1(metric: &MetricTable, rng: &mut impl Rng) -> FnOnX {
    random_lipschitz_extension(metric, &vec![None; metric.len()], rng)
}

/// Pointwise maximum of one to three shifted Kuratowski maps
/// `delta_a + c` with `c >= 0`; such maxima are always Katetov.
pub fn random_katetov(metric: &MetricTable, rng: &mut impl Rng) -> FnOnX {
    let n = metric.len();
    let k = rng.gen_range(1..=3);
    let mut best: Option<Vec<Rational>> = None;
    for _ in 0..k {
        let a = rng.gen_range(0..n);
        let c = random_ratio(rng, 0, 8, 4);
        let cone = kuratowski_in(metric, a).shift(&c);
        best = Some(match best {
            None => (0..n).map(|x| cone.at(x).clone()).collect(),
            Some(b) => b.into_iter().enumerate().map(|(x, v)| v.max(cone.at(x).clone())).collect(),
        });
    }
    FnOnX::from_rationals(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fnspace::{is_katetov, is_lip1};

    #[test]
    fn grid_enumeration_is_complete() {
        let g = grid_functions(3, &[rational::int(0), rational::int(1)]);
        assert_eq!(g.len(), 8);
        assert_eq!(g[1], FnOnX::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn generators_respect_membership() {
        let mut r = rng(7);
        for metric in [MetricTable::discrete(6), MetricTable::cyclic_word(7)] {
            for _ in 0..50 {
                assert!(is_lip1(&metric, &random_lip1(&metric, &mut r)));
                assert!(is_katetov(&metric, &random_katetov(&metric, &mut r)));
            }
        }
    }
}
