//! Brute-force references for the generators on small instances.
//!
//! Words over `{0..M}` are searched depth first with digits tried from `M`
//! down to 0, so the first complete word found is the lexicographically
//! largest one. A branch is dropped as soon as its partial value is too big;
//! digits are nonnegative, so no extension of it could recover.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::{BaseSpec, QElement, Sign};
use crate::sequence::{Bound, PrefixSeq};

pub const MAX_LENGTH: usize = 12;
pub const MAX_DIGIT: u64 = 3;

/// Largest word `w` of length `n` with `value(w 0^∞) ≤ x`.
pub fn brute_greedy_prefix(
    base: &BaseSpec,
    bound: &Bound,
    x: &QElement,
    n: usize,
) -> Result<PrefixSeq> {
    search(base, bound, x, n, false)
}

/// Largest word `w` of length `n` with `value(w 0^∞) < x`.
pub fn brute_quasi_prefix(
    base: &BaseSpec,
    bound: &Bound,
    x: &QElement,
    n: usize,
) -> Result<PrefixSeq> {
    search(base, bound, x, n, true)
}

fn search(
    base: &BaseSpec,
    bound: &Bound,
    x: &QElement,
    n: usize,
    strict: bool,
) -> Result<PrefixSeq> {
    let m = match bound {
        Bound::Finite(m) => m.to_u64().filter(|&m| m <= MAX_DIGIT),
        Bound::Infinite => None,
    };
    let Some(m) = m else {
        return Err(Error::SearchSpaceTooLarge);
    };
    if n > MAX_LENGTH {
        return Err(Error::SearchSpaceTooLarge);
    }
    if base.is_unit() {
        return Err(Error::UnitBase);
    }
    if x.base() != base {
        return Err(Error::MismatchedBase);
    }

    // weights[i] = q^-(i+1)
    let qinv = base.q().inv()?;
    let mut weights = Vec::with_capacity(n);
    let mut w = qinv.clone();
    for _ in 0..n {
        weights.push(w.clone());
        w = &w * &qinv;
    }

    let fits = |v: &QElement| {
        let s = (x - v).sign();
        if strict {
            s == Sign::Positive
        } else {
            s != Sign::Negative
        }
    };
    if !fits(&base.zero()) {
        return Err(Error::precondition("no word fits below x"));
    }

    let mut word = Vec::with_capacity(n);
    if !descend(&weights, m, &fits, &base.zero(), &mut word) {
        return Err(Error::Internal("exhaustive search found no word".into()));
    }
    PrefixSeq::new(word.into_iter().map(BigUint::from).collect(), bound.clone())
}

fn descend(
    weights: &[QElement],
    m: u64,
    fits: &dyn Fn(&QElement) -> bool,
    partial: &QElement,
    word: &mut Vec<u64>,
) -> bool {
    let depth = word.len();
    if depth == weights.len() {
        return true;
    }
    for d in (0..=m).rev() {
        let v = partial + &weights[depth].scale(&BigRational::from_integer(d.into()));
        if !fits(&v) {
            continue;
        }
        word.push(d);
        if descend(weights, m, fits, &v, word) {
            return true;
        }
        word.pop();
    }
    false
}
