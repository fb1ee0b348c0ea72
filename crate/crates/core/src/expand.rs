//! Greedy and quasi-greedy digit generation.
//!
//! Both generators run the remainder recursion `r_0 = x`,
//! `r_n = q r_{n-1} - d_n`. The greedy digit is the largest `d ≤ M` keeping
//! `r_n ≥ 0`; the quasi-greedy digit is the largest `d ≤ M` keeping
//! `r_n > 0`. Remainders determine every later digit, so an exact repeat of a
//! remainder proves the expansion eventually periodic.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{BaseSpec, Poly, QElement, Sign};
use crate::sequence::{Bound, DigitSeq, PrefixSeq, Seq};

pub const DEFAULT_MAX_DIGITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Greedy,
    QuasiGreedy,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Greedy => "greedy",
            Mode::QuasiGreedy => "quasi_greedy",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub mode: Mode,
    pub bound: Bound,
    pub base: BaseSpec,
    pub x: QElement,
    pub digits: PrefixSeq,
    /// `r_n` after each emitted digit.
    pub remainders: Vec<QElement>,
    pub closed_form: Option<DigitSeq>,
}

impl ExpansionResult {
    /// The closed form when one was found, else the emitted prefix.
    pub fn sequence(&self) -> Seq {
        match &self.closed_form {
            Some(c) => Seq::Closed(c.clone()),
            None => Seq::Prefix(self.digits.clone()),
        }
    }

    /// The first `n` digits, extended through the closed form when known.
    /// Returns fewer than `n` digits only if the expansion stopped early
    /// without a closed form.
    pub fn leading_digits(&self, n: usize) -> Vec<BigUint> {
        match &self.closed_form {
            Some(c) => c.prefix(n),
            None => self.digits.digits().iter().take(n).cloned().collect(),
        }
    }

    /// `x` minus the value of the emitted prefix, i.e. `r_n / q^n`.
    pub fn prefix_defect(&self) -> Result<QElement> {
        let n = self.digits.len();
        let last = self
            .remainders
            .last()
            .cloned()
            .unwrap_or_else(|| self.x.clone());
        last.checked_div(&self.base.q().pow(n as u32))
    }
}

fn check_common(base: &BaseSpec, bound: &Bound, x: &QElement) -> Result<()> {
    if base.is_unit() {
        return Err(Error::precondition("q ≤ 1"));
    }
    if x.base() != base {
        return Err(Error::MismatchedBase);
    }
    if let Bound::Finite(m) = bound {
        let m = BigInt::from(m.clone());
        // M ≥ q - 1
        let slack = base.q().sub_integer(&(&m + 1));
        if slack.sign() == Sign::Positive {
            return Err(Error::precondition("M < q−1"));
        }
        // x ≤ M / (q - 1)
        let over = &(x * &base.q().sub_integer(&BigInt::one())) - &base.integer(m);
        if over.sign() == Sign::Positive {
            return Err(Error::precondition("x out of range"));
        }
    }
    Ok(())
}

/// Greedy expansion: digits of the lexicographically largest sequence whose
/// value does not exceed `x`.
pub fn greedy_expand(
    base: &BaseSpec,
    bound: &Bound,
    x: &QElement,
    max_digits: usize,
    detect_cycle: bool,
) -> Result<ExpansionResult> {
    check_common(base, bound, x)?;
    if x.sign() == Sign::Negative {
        return Err(Error::precondition("x out of range"));
    }
    Ok(generate(
        Mode::Greedy,
        base,
        bound,
        x,
        max_digits,
        detect_cycle,
    ))
}

/// Quasi-greedy expansion: digits of the lexicographically largest infinite
/// sequence whose value does not exceed `x`.
pub fn quasi_greedy_expand(
    base: &BaseSpec,
    bound: &Bound,
    x: &QElement,
    max_digits: usize,
    detect_cycle: bool,
) -> Result<ExpansionResult> {
    check_common(base, bound, x)?;
    match x.sign() {
        Sign::Zero => return Err(Error::precondition("x = 0 has no infinite expansion")),
        Sign::Negative => return Err(Error::precondition("x out of range")),
        Sign::Positive => {}
    }
    Ok(generate(
        Mode::QuasiGreedy,
        base,
        bound,
        x,
        max_digits,
        detect_cycle,
    ))
}

/// Remembers every remainder seen so far. Structural lookup is exact when the
/// base has canonical representatives; otherwise values are compared too.
struct RemainderLog {
    by_rep: HashMap<Poly, usize>,
    history: Vec<QElement>,
    canonical: bool,
}

impl RemainderLog {
    fn new(canonical: bool) -> Self {
        RemainderLog {
            by_rep: HashMap::new(),
            history: Vec::new(),
            canonical,
        }
    }

    fn find(&self, r: &QElement) -> Option<usize> {
        if let Some(&j) = self.by_rep.get(r.rep()) {
            return Some(j);
        }
        if self.canonical {
            return None;
        }
        self.history.iter().position(|h| h.value_eq(r))
    }

    fn push(&mut self, r: QElement) {
        self.by_rep
            .entry(r.rep().clone())
            .or_insert(self.history.len());
        self.history.push(r);
    }
}

fn generate(
    mode: Mode,
    base: &BaseSpec,
    bound: &Bound,
    x: &QElement,
    max_digits: usize,
    detect_cycle: bool,
) -> ExpansionResult {
    let q = base.q();
    let cap = match bound {
        Bound::Finite(m) => Some(BigInt::from(m.clone())),
        Bound::Infinite => None,
    };
    let mut digits: Vec<BigUint> = Vec::new();
    let mut remainders = Vec::new();
    let mut closed_form = None;
    let mut log = RemainderLog::new(base.has_canonical_elements());
    let mut r = x.clone();

    if mode == Mode::Greedy && r.is_zero() {
        closed_form = Some(DigitSeq::zero(bound.clone()));
    } else {
        log.push(r.clone());
        for _ in 0..max_digits {
            let t = &q * &r;
            let raw = match mode {
                Mode::Greedy => t.floor(),
                Mode::QuasiGreedy => t.floor_strict(),
            }
            .expect("remainders stay nonnegative");
            let d = match &cap {
                Some(m) if &raw > m => m.clone(),
                _ => raw,
            };
            r = t.sub_integer(&d);
            digits.push(d.to_biguint().expect("digits are nonnegative"));
            remainders.push(r.clone());

            if mode == Mode::Greedy && r.is_zero() {
                closed_form = Some(closed(&digits, digits.len(), bound));
                break;
            }
            if detect_cycle {
                if let Some(j) = log.find(&r) {
                    closed_form = Some(closed(&digits, j, bound));
                    break;
                }
            }
            log.push(r.clone());
        }
    }

    ExpansionResult {
        mode,
        bound: bound.clone(),
        base: base.clone(),
        x: x.clone(),
        digits: PrefixSeq::new(digits, bound.clone()).expect("digits capped at M"),
        remainders,
        closed_form,
    }
}

/// `digits[..j]` followed by the repeating block `digits[j..]`.
fn closed(digits: &[BigUint], j: usize, bound: &Bound) -> DigitSeq {
    DigitSeq::new(digits[..j].to_vec(), digits[j..].to_vec(), bound.clone())
        .expect("digits capped at M")
}

/// For `M = ∞`: every emitted digit from the second on is below `q`.
pub fn digit_bound_check(result: &ExpansionResult) -> Result<bool> {
    if !result.bound.is_infinite() {
        return Err(Error::precondition(
            "digit bound check applies to M = ∞ only",
        ));
    }
    let q = result.base.q();
    Ok(result
        .digits
        .digits()
        .iter()
        .skip(1)
        .all(|d| q.sub_integer(&BigInt::from(d.clone())).sign() == Sign::Positive))
}
