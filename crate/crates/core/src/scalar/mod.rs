//! Exact arithmetic in the field generated by the base `q`.
//!
//! A [`BaseSpec`] is either a rational number `p/r > 1`, a real algebraic
//! number given by an integer polynomial and a rational isolating interval,
//! or the symbolic unit base `q = 1`. A [`QElement`] is a polynomial in `q`
//! with rational coefficients, kept reduced modulo the base's modulus.
//!
//! Every comparison is decided exactly. The sign of an element is read off an
//! interval enclosure of `q` when that suffices; otherwise a gcd with the
//! modulus decides whether the element vanishes at `q`, and the enclosure is
//! bisected until the element's range excludes zero.

pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of(r: &BigRational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Borrowed view of how a base was specified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind<'a> {
    Rational(&'a BigRational),
    Algebraic {
        /// Integer coefficients, highest degree first.
        poly: &'a [BigInt],
        interval: (&'a BigRational, &'a BigRational),
    },
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Rational(BigRational),
    Algebraic {
        poly: Vec<BigInt>,
        lo: BigRational,
        hi: BigRational,
    },
    Unit,
}

#[derive(Debug, Clone)]
enum Approx {
    Exact(BigRational),
    /// `q` lies strictly inside `(lo, hi)`; neither endpoint is a root of the
    /// modulus.
    Interval {
        lo: BigRational,
        hi: BigRational,
        lo_positive: bool,
    },
}

#[derive(Debug)]
struct BaseInner {
    kind: Kind,
    /// Monic and square-free, with `q` its only root inside the current
    /// enclosure.
    modulus: Poly,
    /// Whether reduced representatives are unique (modulus irreducible).
    canonical: bool,
    approx: RwLock<Approx>,
}

/// The base `q`. Cheap to clone; clones share the refinement cache.
#[derive(Debug, Clone)]
pub struct BaseSpec {
    inner: Arc<BaseInner>,
}

impl PartialEq for BaseSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.kind == other.inner.kind
    }
}

impl Eq for BaseSpec {}

impl BaseSpec {
    /// Parses a base literal: an integer, a fraction, a decimal or
    /// `root(c_n,...,c_0 ; lo, hi)`.
    pub fn parse(text: &str) -> Result<BaseSpec> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix("root(") {
            let body = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated root literal `{t}`")))?;
            let (coeffs, interval) = body
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("missing `;` in root literal `{t}`")))?;
            let coeffs = coeffs
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{}`", c.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            let (lo, hi) = interval
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("missing interval in `{t}`")))?;
            return BaseSpec::algebraic(coeffs, parse_rational(lo)?, parse_rational(hi)?);
        }
        BaseSpec::rational(parse_rational(t)?)
    }

    pub fn rational(value: BigRational) -> Result<BaseSpec> {
        if value <= BigRational::one() {
            return Err(Error::BaseNotAboveOne);
        }
        let modulus = Poly::from_coeffs(vec![-value.clone(), BigRational::one()]);
        Ok(BaseSpec::from_parts(
            Kind::Rational(value.clone()),
            modulus,
            true,
            Approx::Exact(value),
        ))
    }

    pub fn from_integer(value: u64) -> Result<BaseSpec> {
        BaseSpec::rational(BigRational::from_integer(value.into()))
    }

    /// The symbolic base `q = 1`.
    pub fn unit() -> BaseSpec {
        let one = BigRational::one();
        let modulus = Poly::from_coeffs(vec![-one.clone(), one.clone()]);
        BaseSpec::from_parts(Kind::Unit, modulus, true, Approx::Exact(one))
    }

    /// The unique root above one of `poly` (integer coefficients, highest
    /// degree first) inside the open interval `(lo, hi)`.
    pub fn algebraic(poly: Vec<BigInt>, lo: BigRational, hi: BigRational) -> Result<BaseSpec> {
        if poly.len() < 3 || poly[0].is_zero() {
            return Err(Error::Parse(
                "defining polynomial needs degree ≥ 2 and a nonzero leading coefficient".into(),
            ));
        }
        if lo >= hi {
            return Err(Error::Parse("empty isolating interval".into()));
        }
        let p = Poly::from_ints_high_to_low(&poly);
        match p.count_roots_open(&lo, &hi) {
            0 => return Err(Error::NoRootInInterval),
            1 => {}
            _ => return Err(Error::MultipleRootsInInterval),
        }
        let one = BigRational::one();
        if hi <= one {
            return Err(Error::BaseNotAboveOne);
        }
        let mut inner_lo = lo.clone();
        if lo < one {
            if p.count_roots_half_open(&lo, &one) > 0 {
                return Err(Error::BaseNotAboveOne);
            }
            inner_lo = one;
        }

        let mut modulus = p.squarefree_part();
        if modulus.constant_term().is_zero() {
            modulus = modulus.exact_div(&Poly::x());
        }
        for end in [&inner_lo, &hi] {
            if modulus.eval(end).is_zero() {
                let lin = Poly::from_coeffs(vec![-end.clone(), BigRational::one()]);
                modulus = modulus.exact_div(&lin);
            }
        }
        let approx = if modulus.degree() == Some(1) {
            Approx::Exact(-modulus.constant_term())
        } else {
            let lo_positive = modulus.eval(&inner_lo).is_positive();
            Approx::Interval {
                lo: inner_lo,
                hi: hi.clone(),
                lo_positive,
            }
        };
        let canonical = is_irreducible_small(&modulus);
        Ok(BaseSpec::from_parts(
            Kind::Algebraic { poly, lo, hi },
            modulus,
            canonical,
            approx,
        ))
    }

    fn from_parts(kind: Kind, modulus: Poly, canonical: bool, approx: Approx) -> BaseSpec {
        BaseSpec {
            inner: Arc::new(BaseInner {
                kind,
                modulus,
                canonical,
                approx: RwLock::new(approx),
            }),
        }
    }

    pub fn kind(&self) -> BaseKind<'_> {
        match &self.inner.kind {
            Kind::Rational(r) => BaseKind::Rational(r),
            Kind::Algebraic { poly, lo, hi } => BaseKind::Algebraic {
                poly,
                interval: (lo, hi),
            },
            Kind::Unit => BaseKind::Unit,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.inner.kind, Kind::Unit)
    }

    /// Whether structurally distinct elements always have distinct values.
    pub fn has_canonical_elements(&self) -> bool {
        self.inner.canonical
    }

    pub fn modulus(&self) -> &Poly {
        &self.inner.modulus
    }

    /// `q` itself when it is known to be rational.
    pub fn exact_value(&self) -> Option<BigRational> {
        match &*self.read_approx() {
            Approx::Exact(r) => Some(r.clone()),
            Approx::Interval { .. } => None,
        }
    }

    /// Current rational enclosure `[lo, hi]` of `q`.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        match &*self.read_approx() {
            Approx::Exact(r) => (r.clone(), r.clone()),
            Approx::Interval { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    fn read_approx(&self) -> std::sync::RwLockReadGuard<'_, Approx> {
        self.inner.approx.read().unwrap_or_else(|e| e.into_inner())
    }

    /// Halves the enclosure of `q`.
    pub fn refine(&self) {
        let mut guard = self.inner.approx.write().unwrap_or_else(|e| e.into_inner());
        let next = match &*guard {
            Approx::Exact(_) => return,
            Approx::Interval {
                lo,
                hi,
                lo_positive,
            } => {
                let mid = (lo + hi) / BigRational::from_integer(2.into());
                let v = self.inner.modulus.eval(&mid);
                if v.is_zero() {
                    Approx::Exact(mid)
                } else if v.is_positive() == *lo_positive {
                    Approx::Interval {
                        lo: mid,
                        hi: hi.clone(),
                        lo_positive: *lo_positive,
                    }
                } else {
                    Approx::Interval {
                        lo: lo.clone(),
                        hi: mid,
                        lo_positive: *lo_positive,
                    }
                }
            }
        };
        *guard = next;
    }

    pub fn zero(&self) -> QElement {
        QElement::from_poly(self, Poly::zero())
    }

    pub fn one(&self) -> QElement {
        QElement::from_rational(self, BigRational::one())
    }

    /// The element `q`.
    pub fn q(&self) -> QElement {
        QElement::from_poly(self, Poly::x())
    }

    pub fn integer(&self, n: impl Into<BigInt>) -> QElement {
        QElement::from_rational(self, BigRational::from_integer(n.into()))
    }
}

impl FromStr for BaseSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BaseSpec::parse(s)
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.kind {
            Kind::Rational(r) => write!(f, "{r}"),
            Kind::Unit => write!(f, "1"),
            Kind::Algebraic { poly, lo, hi } => {
                let cs: Vec<String> = poly.iter().map(ToString::to_string).collect();
                write!(f, "root({};{},{})", cs.join(","), lo, hi)
            }
        }
    }
}

/// Degree one, or a quadratic whose discriminant is not a rational square.
fn is_irreducible_small(m: &Poly) -> bool {
    match m.degree() {
        Some(1) => true,
        Some(2) => {
            let c = m.coeffs();
            let disc = &c[1] * &c[1] - BigRational::from_integer(4.into()) * &c[0] * &c[2];
            !is_rational_square(&disc)
        }
        _ => false,
    }
}

fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &(&s * &s) == n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

/// Parses an integer, `a/b` fraction or `d.ddd` decimal as an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad rational literal `{t}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = parse_int(n.trim()).ok_or_else(bad)?;
        let d: BigInt = parse_int(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if ip_digits.is_empty()
            || fp.is_empty()
            || !ip_digits.bytes().all(|b| b.is_ascii_digit())
            || !fp.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let n: BigInt = format!("{ip_digits}{fp}").parse().map_err(|_| bad())?;
        let d = BigInt::from(10u32).pow(fp.len() as u32);
        let r = BigRational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    parse_int(t).map(BigRational::from_integer).ok_or_else(bad)
}

fn parse_int(t: &str) -> Option<BigInt> {
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked field operation on two elements of the same base.
pub fn arith(a: &QElement, b: &QElement, op: ArithOp) -> Result<QElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

/// An exact element of `Q(q)`.
///
/// Equality and hashing are structural on the reduced representative. When
/// the base's modulus may be reducible ([`BaseSpec::has_canonical_elements`]
/// is false) two representatives can share a value; use
/// [`QElement::value_eq`] to compare values.
#[derive(Debug, Clone)]
pub struct QElement {
    base: BaseSpec,
    rep: Poly,
}

impl PartialEq for QElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.base == other.base
    }
}

impl Eq for QElement {}

impl Hash for QElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl QElement {
    pub fn from_poly(base: &BaseSpec, p: Poly) -> QElement {
        let rep = if p.degree() >= base.inner.modulus.degree() {
            p.rem(&base.inner.modulus)
        } else {
            p
        };
        QElement {
            base: base.clone(),
            rep,
        }
    }

    pub fn from_rational(base: &BaseSpec, r: BigRational) -> QElement {
        QElement::from_poly(base, Poly::constant(r))
    }

    pub fn base(&self) -> &BaseSpec {
        &self.base
    }

    /// Reduced representative as a polynomial in `q`.
    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    /// The value when the representative is a plain rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.rep.is_constant() {
            Some(self.rep.constant_term())
        } else {
            None
        }
    }

    fn same_base(&self, other: &QElement) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::MismatchedBase)
        }
    }

    pub fn checked_add(&self, other: &QElement) -> Result<QElement> {
        self.same_base(other)?;
        Ok(QElement {
            base: self.base.clone(),
            rep: self.rep.add(&other.rep),
        })
    }

    pub fn checked_sub(&self, other: &QElement) -> Result<QElement> {
        self.same_base(other)?;
        Ok(QElement {
            base: self.base.clone(),
            rep: self.rep.sub(&other.rep),
        })
    }

    pub fn checked_mul(&self, other: &QElement) -> Result<QElement> {
        self.same_base(other)?;
        Ok(QElement::from_poly(&self.base, self.rep.mul(&other.rep)))
    }

    pub fn checked_div(&self, other: &QElement) -> Result<QElement> {
        self.same_base(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> QElement {
        QElement {
            base: self.base.clone(),
            rep: self.rep.scale(c),
        }
    }

    pub fn add_rational(&self, c: &BigRational) -> QElement {
        QElement {
            base: self.base.clone(),
            rep: self.rep.add(&Poly::constant(c.clone())),
        }
    }

    pub fn sub_integer(&self, n: &BigInt) -> QElement {
        self.add_rational(&BigRational::from_integer(-n))
    }

    pub fn pow(&self, mut e: u32) -> QElement {
        let mut base = self.clone();
        let mut acc = self.base.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse.
    ///
    /// If the modulus shares a factor `g` with the representative, `q` is not
    /// a root of `g` (the element is nonzero), so the inverse is computed
    /// modulo the cofactor instead; its value at `q` is the same.
    pub fn inv(&self) -> Result<QElement> {
        if self.sign() == Sign::Zero {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = self.as_rational() {
            return Ok(QElement::from_rational(&self.base, c.recip()));
        }
        let mut m = self.base.inner.modulus.clone();
        loop {
            let a = self.rep.rem(&m);
            let (g, s, _) = Poly::ext_gcd(&a, &m);
            if g.degree() == Some(0) {
                return Ok(QElement::from_poly(&self.base, s));
            }
            m = m.exact_div(&g);
        }
    }

    /// Exact sign of the value at `q`.
    pub fn sign(&self) -> Sign {
        if self.rep.is_constant() {
            return Sign::of(&self.rep.constant_term());
        }
        if let Some(s) = self.sign_from_enclosure() {
            return s;
        }
        // The enclosure straddles zero: decide vanishing exactly.
        let g = Poly::gcd(&self.rep, &self.base.inner.modulus);
        if g.degree().is_some_and(|d| d >= 1) {
            let vanishes = match &*self.base.read_approx() {
                Approx::Exact(r) => g.eval(r).is_zero(),
                Approx::Interval { lo, hi, .. } => g.count_roots_open(lo, hi) > 0,
            };
            if vanishes {
                return Sign::Zero;
            }
        }
        loop {
            self.base.refine();
            if let Some(s) = self.sign_from_enclosure() {
                return s;
            }
        }
    }

    fn sign_from_enclosure(&self) -> Option<Sign> {
        match &*self.base.read_approx() {
            Approx::Exact(r) => Some(Sign::of(&self.rep.eval(r))),
            Approx::Interval { lo, hi, .. } => {
                let (vlo, vhi) = self.rep.interval_eval(lo, hi);
                if vlo.is_positive() {
                    Some(Sign::Positive)
                } else if vhi.is_negative() {
                    Some(Sign::Negative)
                } else {
                    None
                }
            }
        }
    }

    /// Rational enclosure of the value, no wider than `width`.
    pub fn enclosure(&self, width: &BigRational) -> (BigRational, BigRational) {
        loop {
            let (lo, hi) = match &*self.base.read_approx() {
                Approx::Exact(r) => {
                    let v = self.rep.eval(r);
                    (v.clone(), v)
                }
                Approx::Interval { lo, hi, .. } => self.rep.interval_eval(lo, hi),
            };
            if &(&hi - &lo) <= width {
                return (lo, hi);
            }
            self.base.refine();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    /// Exact value comparison.
    pub fn cmp_value(&self, other: &QElement) -> Ordering {
        (self - other).sign().to_ordering()
    }

    pub fn value_eq(&self, other: &QElement) -> bool {
        self == other || self.cmp_value(other) == Ordering::Equal
    }

    /// The integer `n` with `n <= self < n + 1`.
    pub fn floor(&self) -> Result<BigInt> {
        if self.sign() == Sign::Negative {
            return Err(Error::NegativeInput);
        }
        if let Some(c) = self.as_rational() {
            return Ok(c.floor().to_integer());
        }
        let (lo, hi) = self.enclosure(&BigRational::new(1.into(), 2.into()));
        let (flo, fhi) = (lo.floor(), hi.floor());
        if flo == fhi {
            return Ok(flo.to_integer());
        }
        // Doubling, then bisection, on the integer part.
        let at_least = |n: &BigInt| self.sub_integer(n).sign() != Sign::Negative;
        let mut low = BigInt::zero();
        let mut high = BigInt::one();
        while at_least(&high) {
            low = high.clone();
            high *= 2;
        }
        while &high - &low > BigInt::one() {
            let mid: BigInt = (&low + &high) / 2;
            if at_least(&mid) {
                low = mid;
            } else {
                high = mid;
            }
        }
        Ok(low)
    }

    /// Largest integer strictly below a positive value.
    pub fn floor_strict(&self) -> Result<BigInt> {
        let n = self.floor()?;
        if self.sub_integer(&n).sign() == Sign::Zero {
            Ok(n - 1)
        } else {
            Ok(n)
        }
    }

    /// Truncated decimal expansion with `digits` fractional digits, prefixed
    /// by `≈` unless it is exact.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.sign() == Sign::Negative;
        let magnitude = if negative { -self } else { self.clone() };
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = magnitude.scale(&BigRational::from_integer(scale.clone()));
        let n = scaled.floor().expect("nonnegative by construction");
        let exact = scaled.sub_integer(&n).sign() == Sign::Zero;
        let int_part = &n / &scale;
        let frac_part = (&n % &scale).to_biguint().unwrap_or_default();
        let mut s = String::new();
        if !exact {
            s.push('≈');
        }
        if negative {
            s.push('-');
        }
        s.push_str(&int_part.to_string());
        if digits > 0 {
            s.push('.');
            s.push_str(&format!(
                "{:0>width$}",
                frac_part.to_string(),
                width = digits
            ));
        }
        s
    }

    /// Parses a literal such as `3/2`, `q`, `2*q^2 - q + 1/3` over `base`.
    pub fn parse(text: &str, base: &BaseSpec) -> Result<QElement> {
        let p = parse_poly_in_q(text)?;
        Ok(QElement::from_poly(base, p))
    }

    /// Rough `f64` value, for diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(&BigRational::new(1.into(), BigInt::from(1u64 << 53)));
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

fn parse_poly_in_q(text: &str) -> Result<Poly> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty element literal".into()));
    }
    let bad = || Error::Parse(format!("bad element literal `{text}`"));
    // Split into signed terms.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));

    let mut acc = Poly::zero();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, power) = match term.find('q') {
            None => (parse_rational(&term)?, 0usize),
            Some(pos) => {
                let head = term[..pos].trim_end_matches('*');
                let coef = if head.is_empty() {
                    BigRational::one()
                } else {
                    parse_rational(head)?
                };
                let tail = &term[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(bad)?
                };
                (coef, power)
            }
        };
        let coef = if neg { -coef } else { coef };
        acc = acc.add(&Poly::monomial(coef, power));
    }
    Ok(acc)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&QElement> for &QElement {
            type Output = QElement;
            /// Panics when the operands belong to different bases.
            fn $method(self, rhs: &QElement) -> QElement {
                self.$checked(rhs)
                    .expect("QElement operands must share a base")
            }
        }
        impl std::ops::$tr<QElement> for QElement {
            type Output = QElement;
            fn $method(self, rhs: QElement) -> QElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &QElement {
    type Output = QElement;
    fn neg(self) -> QElement {
        QElement {
            base: self.base.clone(),
            rep: self.rep.neg(),
        }
    }
}

impl std::ops::Neg for QElement {
    type Output = QElement;
    fn neg(self) -> QElement {
        -&self
    }
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Converts a nonnegative integer digit into the field.
pub(crate) fn digit_to_rational(d: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(d.clone()))
}
