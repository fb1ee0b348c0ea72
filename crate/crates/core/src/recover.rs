//! From an admissible expansion of 1 back to its base, and from a sequence
//! back to its value.
//!
//! For a nonzero sequence `c`, `q ↦ Σ c_i / q^i` is strictly decreasing on
//! `(1, ∞)`, so `evaluate(c, q) = 1` has at most one root there. Writing the
//! value as `num(q) / den(q)`, that root is the root of `den - num` inside
//! `(1, c_1 + 1]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::admissible::{check_alpha_self, check_beta_self, AdmissibilityReport, Verdict};
use crate::error::{Error, Result};
use crate::expand::{greedy_expand, quasi_greedy_expand, ExpansionResult};
use crate::scalar::{BaseSpec, QElement};
use crate::sequence::{Bound, DigitSeq};

/// The unique `q ∈ (1, M+1]` whose quasi-greedy expansion of 1 is `alpha`.
pub fn base_from_alpha(alpha: &DigitSeq, bound: &Bound) -> Result<BaseSpec> {
    let alpha = alpha.with_bound(bound.clone())?;
    require(check_alpha_self(&alpha, bound), "alpha")?;
    let base = root_of_unit_value(&alpha)?;
    let one = base.one();
    let result = quasi_greedy_expand(&base, bound, &one, round_trip_digits(&alpha), true)?;
    verify_round_trip(&result, &alpha)?;
    Ok(base)
}

/// The unique `q ∈ [1, M+1]` whose greedy expansion of 1 is `beta`; `1()`
/// stands for `q = 1`.
pub fn base_from_beta(beta: &DigitSeq, bound: &Bound) -> Result<BaseSpec> {
    let beta = beta.with_bound(bound.clone())?;
    require(check_beta_self(&beta, bound), "beta")?;
    if is_unit_convention(&beta) {
        return Ok(BaseSpec::unit());
    }
    let base = root_of_unit_value(&beta)?;
    let one = base.one();
    let result = greedy_expand(&base, bound, &one, round_trip_digits(&beta), true)?;
    verify_round_trip(&result, &beta)?;
    Ok(base)
}

/// The value of `seq` in base `q`.
pub fn x_from_sequence(seq: &DigitSeq, base: &BaseSpec) -> Result<QElement> {
    seq.evaluate(base)
}

pub(crate) fn is_unit_convention(beta: &DigitSeq) -> bool {
    beta.period().is_empty() && beta.preperiod().len() == 1 && beta.preperiod()[0].is_one()
}

fn require(report: AdmissibilityReport, name: &str) -> Result<()> {
    match (report.verdict, report.witness) {
        (Verdict::Admissible, _) => Ok(()),
        (_, Some(w)) => Err(Error::precondition(format!(
            "{name} is not admissible: {w}"
        ))),
        (_, None) => Err(Error::precondition(format!("{name} is not admissible"))),
    }
}

// Every remainder of the expansion of 1 is the value of a tail, and there are
// at most |preperiod| + |period| distinct tails.
fn round_trip_digits(seq: &DigitSeq) -> usize {
    seq.preperiod().len() + seq.cycle_len() + 2
}

fn verify_round_trip(result: &ExpansionResult, expected: &DigitSeq) -> Result<()> {
    match &result.closed_form {
        Some(c) if c == expected => Ok(()),
        Some(c) => Err(Error::Internal(format!(
            "round trip produced {c} instead of {expected}"
        ))),
        None => Err(Error::Internal(format!(
            "round trip for {expected} found no cycle"
        ))),
    }
}

fn root_of_unit_value(seq: &DigitSeq) -> Result<BaseSpec> {
    let (num, den) = seq.value_fraction();
    let f = den.sub(&num);
    let first = seq.digit(1);
    if first.is_zero() {
        return Err(Error::Internal(format!("{seq} starts with 0")));
    }
    let one = BigRational::one();
    let hi = BigRational::from_integer(BigInt::from(first.clone()) + 1);
    match f.count_roots_half_open(&one, &hi) {
        1 => {}
        n => {
            return Err(Error::Internal(format!(
                "{n} roots of the value equation for {seq} in (1, {hi}]"
            )))
        }
    }

    // Integer roots can only sit at c_1 or c_1 + 1.
    let c1 = BigRational::from_integer(BigInt::from(first));
    for cand in [&c1, &hi] {
        if cand > &one && f.eval(cand).is_zero() {
            return BaseSpec::rational(cand.clone());
        }
    }
    let lo = if c1 > one { c1 } else { one };
    if f.degree() == Some(1) {
        let root = -f.constant_term() / f.lead().expect("degree one");
        return BaseSpec::rational(root);
    }
    BaseSpec::algebraic(f.to_primitive_ints(), lo, hi)
}
