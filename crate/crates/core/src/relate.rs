//! Passing between greedy and quasi-greedy expansions, and listing the
//! expansions of `x` that lie between them.
//!
//! If the greedy expansion `b` of `x` ends in its last nonzero digit `b_m`,
//! the quasi-greedy expansion is `b_1 ... b_{m-1} (b_m - 1) alpha`, where
//! `alpha` is the quasi-greedy expansion of 1. Otherwise the two coincide.

use num_bigint::BigUint;
use num_traits::One;

use crate::admissible::{check_alpha_self, check_beta_self, check_greedy_vs_alpha, Verdict};
use crate::error::{Error, Result};
use crate::expand::greedy_expand;
use crate::recover::is_unit_convention;
use crate::scalar::{BaseSpec, QElement};
use crate::sequence::{Bound, DigitSeq};

/// Digit budget for finding the closed forms used by [`enumerate_between`].
pub const CYCLE_SEARCH_DIGITS: usize = 512;

/// The quasi-greedy expansion matching the greedy expansion `b`, given the
/// quasi-greedy expansion `alpha` of 1 in the same base.
pub fn quasi_from_greedy(b: &DigitSeq, alpha: &DigitSeq, bound: &Bound) -> Result<DigitSeq> {
    if b.is_zero() {
        return Err(Error::precondition("x = 0 has no infinite expansion"));
    }
    let b = b.with_bound(bound.clone())?;
    let alpha = alpha.with_bound(bound.clone())?;
    if check_alpha_self(&alpha, bound).verdict != Verdict::Admissible {
        return Err(Error::precondition("alpha is not admissible"));
    }
    if check_greedy_vs_alpha(&b, &alpha, bound)?.verdict != Verdict::Admissible {
        return Err(Error::precondition("b is not a greedy expansion for alpha"));
    }
    match decremented_head(&b) {
        Some(word) => Ok(alpha.prepend(&word)),
        None => Ok(b),
    }
}

/// The quasi-greedy expansion of 1 from the greedy expansion `beta` of 1.
pub fn alpha_from_beta(beta: &DigitSeq, bound: &Bound) -> Result<DigitSeq> {
    let beta = beta.with_bound(bound.clone())?;
    if is_unit_convention(&beta) {
        return Err(Error::precondition("beta = 1() describes q = 1"));
    }
    if check_beta_self(&beta, bound).verdict != Verdict::Admissible {
        return Err(Error::precondition("beta is not admissible"));
    }
    let Some(word) = decremented_head(&beta) else {
        return Ok(beta);
    };
    let m = word.len();
    let alpha = DigitSeq::new(Vec::new(), word, bound.clone())?;
    if alpha.cycle_len() != m || !alpha.preperiod().is_empty() {
        return Err(Error::Internal(format!(
            "period of {alpha} derived from {beta} is not primitive"
        )));
    }
    Ok(alpha)
}

/// `c_1 ... c_{m-1} (c_m - 1)` for a finite nonzero `c` with last nonzero
/// digit `c_m`.
fn decremented_head(c: &DigitSeq) -> Option<Vec<BigUint>> {
    if c.is_infinite() {
        return None;
    }
    let (m, _) = c.last_nonzero()?;
    let mut word = c.prefix(m);
    word[m - 1] -= BigUint::one();
    Some(word)
}

/// The greedy expansion of `x` followed by up to `count` further expansions
/// of `x` in decreasing lexicographic order.
///
/// With `b` the greedy expansion of `x` and `beta` that of 1:
/// an infinite `b` is the only one listed; a finite `b` with infinite `beta`
/// is followed by `b_1 ... b_m^- beta`; when both are finite the list
/// continues with `b_1 ... b_m^- (beta_1 ... beta_n^-)^N beta_1 ... beta_n`
/// for `N = 0, 1, ...`.
pub fn enumerate_between(
    base: &BaseSpec,
    bound: &Bound,
    x: &QElement,
    count: usize,
) -> Result<Vec<DigitSeq>> {
    let b = closed_greedy(base, bound, x, "x")?;
    if b.is_zero() {
        return Ok(vec![b]);
    }
    let Some(head) = decremented_head(&b) else {
        return Ok(vec![b]);
    };
    let beta = closed_greedy(base, bound, &base.one(), "1")?;

    let mut out = vec![b.clone()];
    match decremented_head(&beta) {
        None => {
            if count > 0 {
                out.push(beta.prepend(&head));
            }
        }
        Some(beta_head) => {
            let n = beta.last_nonzero().map(|(n, _)| n).unwrap_or(0);
            let beta_word = beta.prefix(n);
            for reps in 0..count {
                let mut word = head.clone();
                for _ in 0..reps {
                    word.extend_from_slice(&beta_head);
                }
                word.extend_from_slice(&beta_word);
                out.push(DigitSeq::new(word, Vec::new(), bound.clone())?);
            }
        }
    }

    for s in &out {
        if !s.evaluate(base)?.value_eq(x) {
            return Err(Error::Internal(format!("{s} does not evaluate to x")));
        }
    }
    if out.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Internal(
            "enumeration is not strictly decreasing".into(),
        ));
    }
    Ok(out)
}

fn closed_greedy(base: &BaseSpec, bound: &Bound, x: &QElement, what: &str) -> Result<DigitSeq> {
    greedy_expand(base, bound, x, CYCLE_SEARCH_DIGITS, true)?
        .closed_form
        .ok_or_else(|| {
            Error::precondition(format!(
                "greedy expansion of {what} is not periodic within {CYCLE_SEARCH_DIGITS} digits"
            ))
        })
}
