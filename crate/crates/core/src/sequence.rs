//! Digit sequences: finite, eventually periodic, or known only by a prefix.
//!
//! Indices follow the usual convention for expansions: the first digit is
//! `c_1`, so `digit(1)` is the leading digit and `shift(a, n)` is the tail
//! `c_{n+1} c_{n+2} ...`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{digit_to_rational, BaseSpec, Poly, QElement};

/// The largest admissible digit `M`, or no bound at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(BigUint),
    Infinite,
}

impl Bound {
    pub fn finite(m: u64) -> Bound {
        Bound::Finite(BigUint::from(m))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Bound::Infinite)
    }

    /// Whether `d < M`; always true when `M = ∞`.
    pub fn is_below_max(&self, d: &BigUint) -> bool {
        match self {
            Bound::Finite(m) => d < m,
            Bound::Infinite => true,
        }
    }

    pub fn admits(&self, d: &BigUint) -> bool {
        match self {
            Bound::Finite(m) => d <= m,
            Bound::Infinite => true,
        }
    }

    /// Single-character digits are used when `M ≤ 9`.
    fn compact(&self) -> bool {
        matches!(self, Bound::Finite(m) if m <= &BigUint::from(9u32))
    }

    pub fn parse(text: &str) -> Result<Bound> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Bound::Infinite);
        }
        let m: BigUint = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad digit bound `{t}`")))?;
        if m.is_zero() {
            return Err(Error::Parse("M must be a positive integer".into()));
        }
        Ok(Bound::Finite(m))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(m) => write!(f, "{m}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// An eventually periodic sequence `preperiod (period)^∞` in canonical form.
///
/// An empty period stands for `0^∞`. Canonical form: the period is primitive
/// and never all zeros, and the preperiod is as short as possible. Two
/// canonical sequences are equal as sequences iff their words are equal;
/// `PartialEq` compares the digits only, not the bound.
#[derive(Debug, Clone)]
pub struct DigitSeq {
    preperiod: Vec<BigUint>,
    period: Vec<BigUint>,
    bound: Bound,
}

impl PartialEq for DigitSeq {
    fn eq(&self, other: &Self) -> bool {
        self.preperiod == other.preperiod && self.period == other.period
    }
}

impl Eq for DigitSeq {}

impl std::hash::Hash for DigitSeq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.preperiod.hash(state);
        self.period.hash(state);
    }
}

impl DigitSeq {
    /// Builds and canonicalizes; fails if a digit exceeds `M`.
    pub fn new(preperiod: Vec<BigUint>, period: Vec<BigUint>, bound: Bound) -> Result<DigitSeq> {
        if let Some(d) = preperiod.iter().chain(&period).find(|d| !bound.admits(d)) {
            return Err(Error::DigitExceedsBound {
                digit: d.to_string(),
                bound: bound.to_string(),
            });
        }
        Ok(DigitSeq::canonical(preperiod, period, bound))
    }

    /// Convenience constructor from small digits.
    pub fn from_digits(preperiod: &[u64], period: &[u64], bound: Bound) -> Result<DigitSeq> {
        DigitSeq::new(
            preperiod.iter().map(|&d| BigUint::from(d)).collect(),
            period.iter().map(|&d| BigUint::from(d)).collect(),
            bound,
        )
    }

    pub fn zero(bound: Bound) -> DigitSeq {
        DigitSeq {
            preperiod: Vec::new(),
            period: Vec::new(),
            bound,
        }
    }

    fn canonical(mut pre: Vec<BigUint>, mut period: Vec<BigUint>, bound: Bound) -> DigitSeq {
        if period.iter().all(Zero::is_zero) {
            period.clear();
        }
        if let Some(p) = primitive_root_len(&period) {
            period.truncate(p);
        }
        if period.is_empty() {
            while pre.last().is_some_and(Zero::is_zero) {
                pre.pop();
            }
        } else {
            while pre.last().is_some() && pre.last() == period.last() {
                pre.pop();
                period.rotate_right(1);
            }
        }
        DigitSeq {
            preperiod: pre,
            period,
            bound,
        }
    }

    pub fn preperiod(&self) -> &[BigUint] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigUint] {
        &self.period
    }

    pub fn bound(&self) -> &Bound {
        &self.bound
    }

    /// Same digits under a different bound; fails if a digit exceeds it.
    pub fn with_bound(&self, bound: Bound) -> Result<DigitSeq> {
        DigitSeq::new(self.preperiod.clone(), self.period.clone(), bound)
    }

    /// Infinitely many nonzero digits.
    pub fn is_infinite(&self) -> bool {
        !self.period.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.preperiod.is_empty() && self.period.is_empty()
    }

    /// Length of the period, counting `0^∞` as a period of length one.
    pub fn cycle_len(&self) -> usize {
        self.period.len().max(1)
    }

    /// The digit `c_i` for `i ≥ 1`.
    pub fn digit(&self, i: usize) -> BigUint {
        assert!(i >= 1, "digit indices start at 1");
        let k = self.preperiod.len();
        if i <= k {
            self.preperiod[i - 1].clone()
        } else if self.period.is_empty() {
            BigUint::zero()
        } else {
            self.period[(i - k - 1) % self.period.len()].clone()
        }
    }

    /// The first `n` digits.
    pub fn prefix(&self, n: usize) -> Vec<BigUint> {
        (1..=n).map(|i| self.digit(i)).collect()
    }

    /// Last nonzero digit `(index, digit)` of a finite nonzero sequence.
    pub fn last_nonzero(&self) -> Option<(usize, &BigUint)> {
        if self.is_infinite() {
            return None;
        }
        self.preperiod.last().map(|d| (self.preperiod.len(), d))
    }

    /// The tail `c_{n+1} c_{n+2} ...`, canonicalized.
    pub fn shift(&self, n: usize) -> DigitSeq {
        let k = self.preperiod.len();
        if n <= k {
            return DigitSeq::canonical(
                self.preperiod[n..].to_vec(),
                self.period.clone(),
                self.bound.clone(),
            );
        }
        let mut period = self.period.clone();
        if !period.is_empty() {
            let r = (n - k) % period.len();
            period.rotate_left(r);
        }
        DigitSeq::canonical(Vec::new(), period, self.bound.clone())
    }

    /// `word` followed by `self`.
    pub fn prepend(&self, word: &[BigUint]) -> DigitSeq {
        let mut pre = word.to_vec();
        pre.extend(self.preperiod.iter().cloned());
        DigitSeq::canonical(pre, self.period.clone(), self.bound.clone())
    }

    /// Parses a sequence literal such as `110()`, `(10)`, `1(10)` or
    /// `10,2,0(3,1)`.
    pub fn parse(text: &str, bound: Bound) -> Result<DigitSeq> {
        let t = text.trim();
        let (pre, period) = match t.find('(') {
            None => (t, ""),
            Some(open) => {
                let rest = &t[open + 1..];
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("expected `)` at end of `{t}`")))?;
                (&t[..open], inner)
            }
        };
        if pre.is_empty() && !t.contains('(') {
            return Err(Error::Parse("empty sequence literal".into()));
        }
        let compact = bound.compact();
        let pre = parse_digits(pre, compact)?;
        let period = parse_digits(period, compact)?;
        DigitSeq::new(pre, period, bound)
    }

    /// Closed-form value as a quotient `num(q) / den(q)` of integer
    /// polynomials with `den(q) > 0` for `q > 1`.
    pub fn value_fraction(&self) -> (Poly, Poly) {
        let k = self.preperiod.len();
        let horner = |word: &[BigUint]| {
            let coeffs: Vec<BigRational> = word.iter().rev().map(digit_to_rational).collect();
            Poly::from_coeffs(coeffs)
        };
        let pre_num = horner(&self.preperiod);
        let xk = Poly::monomial(BigRational::one(), k);
        if self.period.is_empty() {
            return (pre_num, xk);
        }
        let p = self.period.len();
        let xp_minus_1 = Poly::monomial(BigRational::one(), p).sub(&Poly::one());
        let num = pre_num.mul(&xp_minus_1).add(&horner(&self.period));
        (num, xk.mul(&xp_minus_1))
    }

    /// Exact value `c_1/q + c_2/q^2 + ...` in the field of `q`.
    pub fn evaluate(&self, base: &BaseSpec) -> Result<QElement> {
        if base.is_unit() {
            return Err(Error::UnitBase);
        }
        let (num, den) = self.value_fraction();
        let num = QElement::from_poly(base, num);
        let den = QElement::from_poly(base, den);
        num.checked_div(&den)
    }
}

/// Length of the shortest word whose repetition gives `w`, if shorter.
fn primitive_root_len(w: &[BigUint]) -> Option<usize> {
    let n = w.len();
    (1..n)
        .filter(|&p| n.is_multiple_of(p))
        .find(|&p| (p..n).all(|i| w[i] == w[i - p]))
}

fn parse_digits(s: &str, compact: bool) -> Result<Vec<BigUint>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if compact && !s.contains(',') {
        return s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(BigUint::from)
                    .ok_or_else(|| Error::Parse(format!("bad digit `{c}`")))
            })
            .collect();
    }
    s.split(',')
        .map(|d| {
            let d = d.trim();
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad digit `{d}`")));
            }
            d.parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("bad digit `{d}`")))
        })
        .collect()
}

fn write_digits(f: &mut fmt::Formatter<'_>, ds: &[BigUint], compact: bool) -> fmt::Result {
    for (i, d) in ds.iter().enumerate() {
        if i > 0 && !compact {
            write!(f, ",")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

impl fmt::Display for DigitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.bound.compact();
        if self.is_zero() {
            return write!(f, "0()");
        }
        write_digits(f, &self.preperiod, compact)?;
        write!(f, "(")?;
        write_digits(f, &self.period, compact)?;
        write!(f, ")")
    }
}

/// A finite list of leading digits of a sequence whose continuation is
/// unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixSeq {
    digits: Vec<BigUint>,
    bound: Bound,
}

impl PrefixSeq {
    pub fn new(digits: Vec<BigUint>, bound: Bound) -> Result<PrefixSeq> {
        if let Some(d) = digits.iter().find(|d| !bound.admits(d)) {
            return Err(Error::DigitExceedsBound {
                digit: d.to_string(),
                bound: bound.to_string(),
            });
        }
        Ok(PrefixSeq { digits, bound })
    }

    pub fn from_digits(digits: &[u64], bound: Bound) -> Result<PrefixSeq> {
        PrefixSeq::new(digits.iter().map(|&d| BigUint::from(d)).collect(), bound)
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn bound(&self) -> &Bound {
        &self.bound
    }

    pub fn shift(&self, n: usize) -> PrefixSeq {
        PrefixSeq {
            digits: self.digits.get(n..).unwrap_or_default().to_vec(),
            bound: self.bound.clone(),
        }
    }

    /// Value of the word followed by `0^∞`.
    pub fn evaluate_padded(&self, base: &BaseSpec) -> Result<QElement> {
        DigitSeq::new(self.digits.clone(), Vec::new(), self.bound.clone())?.evaluate(base)
    }
}

impl fmt::Display for PrefixSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.digits, self.bound.compact())?;
        write!(f, "…")
    }
}

/// Either kind of sequence, borrowed.
#[derive(Debug, Clone, Copy)]
pub enum SeqRef<'a> {
    Closed(&'a DigitSeq),
    Prefix(&'a PrefixSeq),
}

impl<'a> From<&'a DigitSeq> for SeqRef<'a> {
    fn from(s: &'a DigitSeq) -> Self {
        SeqRef::Closed(s)
    }
}

impl<'a> From<&'a PrefixSeq> for SeqRef<'a> {
    fn from(s: &'a PrefixSeq) -> Self {
        SeqRef::Prefix(s)
    }
}

impl<'a> From<&'a Seq> for SeqRef<'a> {
    fn from(s: &'a Seq) -> Self {
        match s {
            Seq::Closed(d) => SeqRef::Closed(d),
            Seq::Prefix(p) => SeqRef::Prefix(p),
        }
    }
}

impl SeqRef<'_> {
    /// `c_i`, or `None` past the end of a prefix.
    pub fn digit(&self, i: usize) -> Option<BigUint> {
        match self {
            SeqRef::Closed(s) => Some(s.digit(i)),
            SeqRef::Prefix(p) => p.digits.get(i - 1).cloned(),
        }
    }

    pub fn bound(&self) -> &Bound {
        match self {
            SeqRef::Closed(s) => &s.bound,
            SeqRef::Prefix(p) => &p.bound,
        }
    }

    pub fn shift(&self, n: usize) -> Seq {
        match self {
            SeqRef::Closed(s) => Seq::Closed(s.shift(n)),
            SeqRef::Prefix(p) => Seq::Prefix(p.shift(n)),
        }
    }

    pub fn to_owned(&self) -> Seq {
        match self {
            SeqRef::Closed(s) => Seq::Closed((*s).clone()),
            SeqRef::Prefix(p) => Seq::Prefix((*p).clone()),
        }
    }
}

/// Either kind of sequence, owned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seq {
    Closed(DigitSeq),
    Prefix(PrefixSeq),
}

impl Seq {
    pub fn as_ref(&self) -> SeqRef<'_> {
        self.into()
    }

    pub fn closed(&self) -> Option<&DigitSeq> {
        match self {
            Seq::Closed(s) => Some(s),
            Seq::Prefix(_) => None,
        }
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seq::Closed(s) => s.fmt(f),
            Seq::Prefix(p) => p.fmt(f),
        }
    }
}

/// Outcome of a lexicographic comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexOrdering {
    Less,
    Equal,
    Greater,
    /// The inputs agree as far as both are known.
    Undetermined,
}

impl From<Ordering> for LexOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => LexOrdering::Less,
            Ordering::Equal => LexOrdering::Equal,
            Ordering::Greater => LexOrdering::Greater,
        }
    }
}

/// Lexicographic comparison; exact on two closed forms.
pub fn lex_compare<'a, 'b>(a: impl Into<SeqRef<'a>>, b: impl Into<SeqRef<'b>>) -> LexOrdering {
    let (a, b) = (a.into(), b.into());
    if let (SeqRef::Closed(x), SeqRef::Closed(y)) = (a, b) {
        return x.cmp(y).into();
    }
    let mut i = 1;
    loop {
        match (a.digit(i), b.digit(i)) {
            (Some(x), Some(y)) => match x.cmp(&y) {
                Ordering::Equal => i += 1,
                o => return o.into(),
            },
            _ => return LexOrdering::Undetermined,
        }
    }
}

impl Ord for DigitSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        // Past max(preperiod) both are periodic with period lcm(cycle lengths).
        let horizon = self.preperiod.len().max(other.preperiod.len())
            + self.cycle_len().lcm(&other.cycle_len());
        (1..=horizon)
            .map(|i| self.digit(i).cmp(&other.digit(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for DigitSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(d: u64) -> BigUint {
        BigUint::from(d)
    }

    fn m1() -> Bound {
        Bound::finite(1)
    }

    fn seq(s: &str) -> DigitSeq {
        DigitSeq::parse(s, m1()).unwrap()
    }

    #[test]
    fn parse_examples() {
        let s = seq("110()");
        assert_eq!(s.preperiod(), &[big(1), big(1)]);
        assert!(s.period().is_empty());
        let p = seq("(10)");
        assert!(p.preperiod().is_empty());
        assert_eq!(p.period(), &[big(1), big(0)]);
        assert_eq!(
            DigitSeq::parse("2(0)", m1()).unwrap_err(),
            Error::DigitExceedsBound {
                digit: "2".into(),
                bound: "1".into()
            }
        );
        assert!(DigitSeq::parse("1(0", m1()).unwrap_err().is_parse());
        assert!(DigitSeq::parse("", m1()).unwrap_err().is_parse());
        assert!(DigitSeq::parse("1a()", m1()).unwrap_err().is_parse());
        let wide = DigitSeq::parse("10,2,0(3,1)", Bound::finite(10)).unwrap();
        assert_eq!(wide.preperiod(), &[big(10), big(2), big(0)]);
        assert_eq!(wide.to_string(), "10,2,0(3,1)");
        assert_eq!(
            DigitSeq::parse("(1,0)", Bound::Infinite)
                .unwrap()
                .to_string(),
            "(1,0)"
        );
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(seq("(0)"), DigitSeq::zero(m1()));
        assert_eq!(seq("()").to_string(), "0()");
        assert_eq!(seq("(1010)"), seq("(10)"));
        assert_eq!(seq("1(01)"), seq("(10)"));
        assert_eq!(seq("10(10)"), seq("(10)"));
        assert_eq!(seq("0110(00)").to_string(), "011()");
        assert_eq!(seq("01(01)").to_string(), "(01)");
        assert!(seq("(10)").is_infinite());
        assert!(!seq("110()").is_infinite());
    }

    #[test]
    fn lex_compare_examples() {
        assert_eq!(lex_compare(&seq("(10)"), &seq("110()")), LexOrdering::Less);
        assert_eq!(lex_compare(&seq("(0)"), &seq("(0)")), LexOrdering::Equal);
        let a = PrefixSeq::from_digits(&[1, 1], m1()).unwrap();
        let b = PrefixSeq::from_digits(&[1, 1, 0], m1()).unwrap();
        assert_eq!(lex_compare(&a, &b), LexOrdering::Undetermined);
        let c = PrefixSeq::from_digits(&[1, 0, 0], m1()).unwrap();
        assert_eq!(lex_compare(&c, &seq("(10)")), LexOrdering::Less);
        // Differ only after long agreement of periods 2 and 3.
        assert_eq!(
            lex_compare(&seq("(110)"), &seq("(11011)")),
            LexOrdering::Less
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(seq("110()").shift(1), seq("1()"));
        let s = seq("(10)").shift(1);
        assert!(s.preperiod().is_empty());
        assert_eq!(s.period(), &[big(0), big(1)]);
        assert_eq!(seq("(10)").shift(2), seq("(10)"));
        assert_eq!(seq("1(10)").shift(5), seq("(10)"));
        assert_eq!(seq("1(10)").shift(4), seq("(01)"));
        assert_eq!(seq("1()").shift(3), DigitSeq::zero(m1()));
    }

    #[test]
    fn evaluate_examples() {
        let g = BaseSpec::parse("root(1,-1,-1;1.5,1.7)").unwrap();
        assert_eq!(seq("(10)").evaluate(&g).unwrap().sign(), g.one().sign());
        assert!(seq("(10)").evaluate(&g).unwrap().value_eq(&g.one()));
        let two = BaseSpec::from_integer(2).unwrap();
        assert_eq!(
            seq("1()").evaluate(&two).unwrap().as_rational(),
            Some(BigRational::new(1.into(), 2.into()))
        );
        let three = BaseSpec::from_integer(3).unwrap();
        let s = DigitSeq::parse("(2)", Bound::finite(2)).unwrap();
        assert_eq!(s.evaluate(&three).unwrap(), three.one());
        assert_eq!(
            seq("1()").evaluate(&BaseSpec::unit()).unwrap_err(),
            Error::UnitBase
        );
    }
}
