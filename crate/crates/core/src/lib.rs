//! Greedy and quasi-greedy expansions of real numbers in a non-integer base.
//!
//! Bases are rational or real algebraic numbers `q > 1`, values live in the
//! field `Q(q)`, and every comparison is exact. The crate generates
//! expansions for a finite digit bound `M` or for unbounded digits, checks
//! the lexicographic conditions that characterize them, recovers the base
//! from an expansion of one, and relates greedy to quasi-greedy expansions.

pub mod admissible;
pub mod cli;
pub mod error;
pub mod expand;
pub mod oracle;
pub mod recover;
pub mod relate;
pub mod scalar;
pub mod sequence;

pub use admissible::{AdmissibilityReport, Condition, Verdict, Witness};
pub use error::{Error, Result};
pub use expand::{greedy_expand, quasi_greedy_expand, ExpansionResult, Mode};
pub use scalar::{BaseSpec, QElement, Sign};
pub use sequence::{lex_compare, Bound, DigitSeq, LexOrdering, PrefixSeq, Seq, SeqRef};
