//! Min-plus convolution kernels on finite segments:
//! `c[i] = min { a[j] + b[i - j] }` for `i` in `0..len(a) + len(b) - 1`.

use std::cell::Cell;
use std::cmp::Ordering;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// Totally ordered weights closed under `+` and `-`.
pub trait Weight: Clone + Ord + Add<Output = Self> + Sub<Output = Self> {}
impl<T: Clone + Ord + Add<Output = T> + Sub<Output = T>> Weight for T {}

/// Second differences nonnegative.
pub fn is_convex<T: Weight>(a: &[T]) -> bool {
    a.windows(3).all(|w| w[1].clone() - w[0].clone() <= w[2].clone() - w[1].clone())
}

fn check_lengths(na: usize, nb: usize) -> Result<()> {
    if na == 0 || nb == 0 {
        return Err(Error::invariant("sequence", "min-plus convolution needs nonempty operands"));
    }
    Ok(())
}

/// Double loop, `O(nm)`. Counts one operation per candidate sum.
pub fn naive_minplus_counted<T: Weight>(a: &[T], b: &[T]) -> Result<(Vec<T>, u64)> {
    check_lengths(a.len(), b.len())?;
    let mut out: Vec<Option<T>> = vec![None; a.len() + b.len() - 1];
    for (j, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            let s = x.clone() + y.clone();
            let slot = &mut out[j + k];
            if slot.as_ref().is_none_or(|cur| s < *cur) {
                *slot = Some(s);
            }
        }
    }
    let ops = (a.len() * b.len()) as u64;
    Ok((out.into_iter().map(|v| v.expect("every index has a factorization")).collect(), ops))
}

pub fn naive_minplus<T: Weight>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    naive_minplus_counted(a, b).map(|(c, _)| c)
}

/// Both operands convex: the first differences of the result are the sorted
/// merge of the operands' differences. `O(n + m)`.
pub fn convex_minplus_merge_counted<T: Weight>(a: &[T], b: &[T]) -> Result<(Vec<T>, u64)> {
    check_lengths(a.len(), b.len())?;
    if !is_convex(a) {
        return Err(Error::invariant("a", "sequence is not convex"));
    }
    if !is_convex(b) {
        return Err(Error::invariant("b", "sequence is not convex"));
    }
    let da = a.windows(2).map(|w| w[1].clone() - w[0].clone());
    let db = b.windows(2).map(|w| w[1].clone() - w[0].clone());
    let mut da = da.peekable();
    let mut db = db.peekable();
    let mut cur = a[0].clone() + b[0].clone();
    let mut out = Vec::with_capacity(a.len() + b.len() - 1);
    out.push(cur.clone());
    let mut ops = 1u64;
    loop {
        let step = match (da.peek(), db.peek()) {
            (Some(x), Some(y)) => {
                if x <= y {
                    da.next()
                } else {
                    db.next()
                }
            }
            (Some(_), None) => da.next(),
            (None, Some(_)) => db.next(),
            (None, None) => break,
        };
        cur = cur + step.expect("peeked");
        out.push(cur.clone());
        ops += 1;
    }
    Ok((out, ops))
}

pub fn convex_minplus_merge<T: Weight>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    convex_minplus_merge_counted(a, b).map(|(c, _)| c)
}

/// Row minima of a totally monotone matrix given by `lookup`, written into
/// `argmin[row]`.
fn smawk<K: Ord>(rows: &[usize], cols: &[usize], lookup: &dyn Fn(usize, usize) -> K, argmin: &mut [usize]) {
    if rows.is_empty() {
        return;
    }
    let mut stack: Vec<usize> = Vec::with_capacity(rows.len());
    for &c in cols {
        while let Some(&top) = stack.last() {
            let r = rows[stack.len() - 1];
            if lookup(r, top) > lookup(r, c) {
                stack.pop();
            } else {
                break;
            }
        }
        if stack.len() < rows.len() {
            stack.push(c);
        }
    }
    let odd: Vec<usize> = rows.iter().skip(1).step_by(2).copied().collect();
    smawk(&odd, &stack, lookup, argmin);
    let mut start = 0;
    for i in (0..rows.len()).step_by(2) {
        let row = rows[i];
        let stop = if i + 1 < rows.len() {
            let target = argmin[rows[i + 1]];
            start + stack[start..].iter().position(|&c| c == target).expect("odd-row minimum is a surviving column")
        } else {
            stack.len() - 1
        };
        let mut best = start;
        let mut best_val = lookup(row, stack[start]);
        for (k, &c) in stack.iter().enumerate().take(stop + 1).skip(start + 1) {
            let v = lookup(row, c);
            if v < best_val {
                best = k;
                best_val = v;
            }
        }
        argmin[row] = stack[best];
        start = stop;
    }
}

/// Entry of the matrix `a[j] + b[i - j]` with `b` continued convexly past its
/// ends by arbitrarily steep lines: out-of-range entries compare first by
/// their distance to the band, then by value.
#[derive(PartialEq, Eq)]
struct Banded<T> {
    overshoot: usize,
    value: T,
}

impl<T: Ord> PartialOrd for Banded<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Banded<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.overshoot.cmp(&other.overshoot).then_with(|| self.value.cmp(&other.value))
    }
}

/// `b` convex, `a` arbitrary: the matrix `a[j] + b[i - j]` is Monge, so its
/// row minima come from SMAWK in `O(n + m)` lookups.
pub fn smawk_minplus_counted<T: Weight>(a: &[T], b: &[T]) -> Result<(Vec<T>, u64)> {
    check_lengths(a.len(), b.len())?;
    if !is_convex(b) {
        return Err(Error::invariant("b", "sequence is not convex"));
    }
    let (n, m) = (a.len(), b.len());
    let lookups = Cell::new(0u64);
    let lookup = |i: usize, j: usize| {
        lookups.set(lookups.get() + 1);
        let (overshoot, k) = if i < j {
            (j - i, 0)
        } else if i - j >= m {
            (i - j - m + 1, m - 1)
        } else {
            (0, i - j)
        };
        Banded { overshoot, value: a[j].clone() + b[k].clone() }
    };
    let rows: Vec<usize> = (0..n + m - 1).collect();
    let cols: Vec<usize> = (0..n).collect();
    let mut argmin = vec![0; rows.len()];
    smawk(&rows, &cols, &lookup, &mut argmin);
    let out = argmin.iter().enumerate().map(|(i, &j)| a[j].clone() + b[i - j].clone()).collect();
    Ok((out, lookups.get()))
}

pub fn smawk_minplus<T: Weight>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    smawk_minplus_counted(a, b).map(|(c, _)| c)
}
