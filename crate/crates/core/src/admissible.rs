//! Lexicographic characterizations of greedy and quasi-greedy expansions.
//!
//! Each condition compares every tail `c_{n+1} c_{n+2} ...` that follows a
//! digit `c_n < M` (every tail when `M = ∞`) against a reference sequence:
//!
//! | condition         | sequence | reference | relation |
//! |-------------------|----------|-----------|----------|
//! | `quasi_alpha`     | alpha    | alpha     | `≤`, alpha infinite |
//! | `quasi_vs_alpha`  | a        | alpha     | `≤`, a infinite |
//! | `greedy_beta`     | beta     | beta      | `<` |
//! | `greedy_vs_alpha` | b        | alpha     | `<` |
//!
//! An eventually periodic sequence has at most `|preperiod| + |period|`
//! distinct (digit, tail) pairs, so the checks are exact on closed forms. On
//! prefixes they may end undetermined.

use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::{lex_compare, Bound, LexOrdering, Seq, SeqRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    QuasiAlpha,
    QuasiVsAlpha,
    GreedyBeta,
    GreedyVsAlpha,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::QuasiAlpha => "quasi_alpha",
            Condition::QuasiVsAlpha => "quasi_vs_alpha",
            Condition::GreedyBeta => "greedy_beta",
            Condition::GreedyVsAlpha => "greedy_vs_alpha",
        }
    }

    fn strict(self) -> bool {
        matches!(self, Condition::GreedyBeta | Condition::GreedyVsAlpha)
    }

    fn needs_infinite(self) -> bool {
        matches!(self, Condition::QuasiAlpha | Condition::QuasiVsAlpha)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    Violated,
    /// No violation among the known digits, but prefixes ran out.
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Admissible => "admissible",
            Verdict::Violated => "violated",
            Verdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The condition requires infinitely many nonzero digits.
    Finite,
    /// The tail after index `index` breaks the inequality against `reference`.
    Tail {
        index: usize,
        tail: Seq,
        reference: Seq,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Finite => write!(f, "sequence is finite"),
            Witness::Tail {
                index,
                tail,
                reference,
            } => write!(f, "n={index} tail={tail} reference={reference}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub verdict: Verdict,
    pub condition: Condition,
    /// Present iff the verdict is `Violated`.
    pub witness: Option<Witness>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.verdict == Verdict::Admissible
    }

    fn violated(condition: Condition, witness: Witness) -> Self {
        AdmissibilityReport {
            verdict: Verdict::Violated,
            condition,
            witness: Some(witness),
        }
    }
}

fn check_tails(
    seq: SeqRef<'_>,
    reference: SeqRef<'_>,
    bound: &Bound,
    condition: Condition,
) -> AdmissibilityReport {
    let mut undetermined = false;
    if condition.needs_infinite() {
        match seq {
            SeqRef::Closed(s) if !s.is_infinite() => {
                return AdmissibilityReport::violated(condition, Witness::Finite);
            }
            SeqRef::Prefix(_) => undetermined = true,
            SeqRef::Closed(_) => {}
        }
    }
    let horizon = match seq {
        SeqRef::Closed(s) => s.preperiod().len() + s.cycle_len(),
        SeqRef::Prefix(p) => p.len(),
    };
    for n in 1..=horizon {
        let d = seq.digit(n).expect("index within horizon");
        if !bound.is_below_max(&d) {
            continue;
        }
        let tail = seq.shift(n);
        let violated = match lex_compare(&tail, reference) {
            LexOrdering::Less => false,
            LexOrdering::Equal => condition.strict(),
            LexOrdering::Greater => true,
            LexOrdering::Undetermined => {
                undetermined = true;
                false
            }
        };
        if violated {
            return AdmissibilityReport::violated(
                condition,
                Witness::Tail {
                    index: n,
                    tail,
                    reference: reference.to_owned(),
                },
            );
        }
    }
    AdmissibilityReport {
        verdict: if undetermined {
            Verdict::Undetermined
        } else {
            Verdict::Admissible
        },
        condition,
        witness: None,
    }
}

/// Whether `alpha` can be the quasi-greedy expansion of 1: infinite, and
/// `alpha_{n+1} alpha_{n+2} ... ≤ alpha` whenever `alpha_n < M`.
pub fn check_alpha_self<'a>(alpha: impl Into<SeqRef<'a>>, bound: &Bound) -> AdmissibilityReport {
    let alpha = alpha.into();
    check_tails(alpha, alpha, bound, Condition::QuasiAlpha)
}

/// Whether `beta` can be the greedy expansion of 1:
/// `beta_{n+1} beta_{n+2} ... < beta` whenever `beta_n < M`.
pub fn check_beta_self<'a>(beta: impl Into<SeqRef<'a>>, bound: &Bound) -> AdmissibilityReport {
    let beta = beta.into();
    check_tails(beta, beta, bound, Condition::GreedyBeta)
}

fn require_alpha(alpha: SeqRef<'_>, bound: &Bound) -> Result<()> {
    if check_alpha_self(alpha, bound).verdict == Verdict::Violated {
        return Err(Error::precondition("alpha is not self-admissible"));
    }
    Ok(())
}

/// Whether `a` is a quasi-greedy expansion for the base whose quasi-greedy
/// expansion of 1 is `alpha`.
pub fn check_quasi_vs_alpha<'a, 'b>(
    a: impl Into<SeqRef<'a>>,
    alpha: impl Into<SeqRef<'b>>,
    bound: &Bound,
) -> Result<AdmissibilityReport> {
    let alpha = alpha.into();
    require_alpha(alpha, bound)?;
    Ok(check_tails(a.into(), alpha, bound, Condition::QuasiVsAlpha))
}

/// Whether `b` is a greedy expansion for the base whose quasi-greedy
/// expansion of 1 is `alpha`.
pub fn check_greedy_vs_alpha<'a, 'b>(
    b: impl Into<SeqRef<'a>>,
    alpha: impl Into<SeqRef<'b>>,
    bound: &Bound,
) -> Result<AdmissibilityReport> {
    let alpha = alpha.into();
    require_alpha(alpha, bound)?;
    Ok(check_tails(
        b.into(),
        alpha,
        bound,
        Condition::GreedyVsAlpha,
    ))
}
