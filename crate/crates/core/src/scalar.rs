//! Exact arithmetic in the real quadratic field Q(√2).
//!
//! A [`Scalar`] is `p + q·√2` with `p`, `q` arbitrary-precision rationals.
//! Since √2 is irrational the pair `(p, q)` is unique, so equality is
//! structural. The wire form used everywhere (text output and JSON) is
//!
//! ```text
//! RAT ( ('+'|'-') RAT? 's2' )?        e.g.  "3/2-1/3s2", "s2", "-5", "0"
//! ```
//!
//! where `RAT` is `INT('/'POSINT)?` and a missing `RAT` in front of `s2`
//! means 1.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CdError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    p: BigRational,
    q: BigRational,
}

impl Scalar {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Scalar { p, q }
    }

    pub fn zero() -> Self {
        Scalar {
            p: BigRational::zero(),
            q: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            p: BigRational::from_integer(BigInt::from(n)),
            q: BigRational::zero(),
        }
    }

    /// `num/den` as a rational scalar. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar {
            p: BigRational::new(BigInt::from(num), BigInt::from(den)),
            q: BigRational::zero(),
        }
    }

    /// `p + q·√2` from small integer ratios.
    pub fn from_parts(p: (i64, i64), q: (i64, i64)) -> Self {
        Scalar {
            p: BigRational::new(BigInt::from(p.0), BigInt::from(p.1)),
            q: BigRational::new(BigInt::from(q.0), BigInt::from(q.1)),
        }
    }

    pub fn sqrt2() -> Self {
        Scalar {
            p: BigRational::zero(),
            q: BigRational::one(),
        }
    }

    /// 1/√2 = (1/2)√2
    pub fn inv_sqrt2() -> Self {
        Scalar::from_parts((0, 1), (1, 2))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Galois conjugate `p - q√2`.
    pub fn galois_conj(&self) -> Self {
        Scalar {
            p: self.p.clone(),
            q: -self.q.clone(),
        }
    }

    /// Field norm `p² - 2q²`; zero only for the zero scalar.
    pub fn field_norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.p * &self.p - two * &self.q * &self.q
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CdError::DivisionByZero);
        }
        if self.q.is_zero() {
            return Ok(Scalar {
                p: self.p.recip(),
                q: BigRational::zero(),
            });
        }
        let n = self.field_norm();
        debug_assert!(!n.is_zero(), "p^2 - 2q^2 vanished for a nonzero scalar");
        Ok(Scalar {
            p: &self.p / &n,
            q: -(&self.q / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Sign in the real embedding √2 ≈ 1.414.
    pub fn signum(&self) -> Ordering {
        let sp = self.p.cmp(&BigRational::zero());
        let sq = self.q.cmp(&BigRational::zero());
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (a, b) => {
                // opposite signs: compare p² with 2q²
                let two = BigRational::from_integer(BigInt::from(2));
                match (&self.p * &self.p).cmp(&(two * &self.q * &self.q)) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Approximate value, for human-facing summaries only.
    pub fn to_f64(&self) -> f64 {
        fn r(x: &BigRational) -> f64 {
            let n: f64 = x.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = x.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
        r(&self.p) + r(&self.q) * std::f64::consts::SQRT_2
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(p: BigRational) -> Self {
        Scalar {
            p,
            q: BigRational::zero(),
        }
    }
}

fn add_into(acc: &mut BigRational, x: &BigRational) {
    if !x.is_zero() {
        if acc.is_zero() {
            *acc = x.clone();
        } else {
            *acc += x;
        }
    }
}

fn sub_into(acc: &mut BigRational, x: &BigRational) {
    if !x.is_zero() {
        if acc.is_zero() {
            *acc = -x.clone();
        } else {
            *acc -= x;
        }
    }
}

fn mul_raw(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    match (a.q.is_zero(), b.q.is_zero()) {
        (true, true) => Scalar {
            p: &a.p * &b.p,
            q: BigRational::zero(),
        },
        (true, false) => Scalar {
            p: &a.p * &b.p,
            q: &a.p * &b.q,
        },
        (false, true) => Scalar {
            p: &a.p * &b.p,
            q: &a.q * &b.p,
        },
        (false, false) => {
            let two = BigRational::from_integer(BigInt::from(2));
            Scalar {
                p: &a.p * &b.p + two * &a.q * &b.q,
                q: &a.p * &b.q + &a.q * &b.p,
            }
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        add_into(&mut self.p, &rhs.p);
        add_into(&mut self.q, &rhs.q);
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        sub_into(&mut self.p, &rhs.p);
        sub_into(&mut self.q, &rhs.q);
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_raw(self, rhs);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            p: -self.p,
            q: -self.q,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let mut r = a.clone();
    r += b;
    r
});
binop!(Sub, sub, |a, b| {
    let mut r = a.clone();
    r -= b;
    r
});
binop!(Mul, mul, mul_raw);
// Panics on a zero divisor; use `checked_div` at API boundaries.
binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("scalar division by zero"));

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

fn fmt_rat(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qpart = |q: &BigRational| -> String {
            if q.is_one() {
                "s2".to_string()
            } else {
                format!("{}s2", fmt_rat(q))
            }
        };
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.p)),
            (true, false) => {
                if self.q.is_negative() {
                    write!(f, "-{}", qpart(&-self.q.clone()))
                } else {
                    write!(f, "{}", qpart(&self.q))
                }
            }
            (false, false) => {
                let sign = if self.q.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", fmt_rat(&self.p), sign, qpart(&self.q.abs()))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).ok()?;
        text.parse().ok()
    }

    /// Unsigned `DIGITS ('/' POSINT)?`; `None` if no digits are present.
    fn unsigned_rat(&mut self) -> Result<Option<BigRational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if self.eat(b'/') {
            let at = self.pos;
            let den = self
                .digits()
                .ok_or_else(|| CdError::parse(at, "expected denominator"))?;
            if den.is_zero() {
                return Err(CdError::parse(at, "zero denominator"));
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }

    fn s2(&mut self) -> Result<bool> {
        if self.eat(b's') {
            let at = self.pos;
            if !self.eat(b'2') {
                return Err(CdError::parse(at, "expected '2' after 's'"));
            }
            Ok(true)
        } else {
            Ok(false)
        }
    }
}

impl FromStr for Scalar {
    type Err = CdError;

    fn from_str(text: &str) -> Result<Self> {
        let mut c = Cursor {
            s: text.as_bytes(),
            pos: 0,
        };
        if text.is_empty() {
            return Err(CdError::parse(0, "empty scalar"));
        }
        let negative = if c.eat(b'-') {
            true
        } else {
            c.eat(b'+');
            false
        };
        let lead_at = c.pos;
        let lead = c.unsigned_rat()?;
        let lead_is_s2 = c.s2()?;
        let signed = |x: BigRational, neg: bool| if neg { -x } else { x };
        let (mut p, mut q) = match (lead, lead_is_s2) {
            (None, false) => return Err(CdError::parse(lead_at, "expected a number or 's2'")),
            (r, true) => (
                BigRational::zero(),
                signed(r.unwrap_or_else(BigRational::one), negative),
            ),
            (Some(r), false) => (signed(r, negative), BigRational::zero()),
        };
        if !lead_is_s2 {
            let op = match c.peek() {
                Some(b'+') => Some(false),
                Some(b'-') => Some(true),
                _ => None,
            };
            if let Some(neg) = op {
                c.pos += 1;
                let coef = c.unsigned_rat()?.unwrap_or_else(BigRational::one);
                let at = c.pos;
                if !c.s2()? {
                    return Err(CdError::parse(at, "expected 's2' in second term"));
                }
                q = signed(coef, neg);
            }
        }
        if c.pos != text.len() {
            return Err(CdError::parse(c.pos, "trailing characters"));
        }
        // normalise -0
        if p.is_zero() {
            p = BigRational::zero();
        }
        Ok(Scalar { p, q })
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().unwrap())),
            other => Err(serde::de::Error::custom(format!(
                "expected scalar literal, got {other}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(s("1+s2") * s("1-s2"), Scalar::from_int(-1));
    }

    #[test]
    fn rationalize() {
        let r = Scalar::one().checked_div(&Scalar::sqrt2()).unwrap();
        assert_eq!(r, Scalar::from_parts((0, 1), (1, 2)));
        assert_eq!(r, Scalar::inv_sqrt2());
    }

    #[test]
    fn cancellation() {
        assert_eq!(s("3/2") + s("-3/2+5s2"), s("5s2"));
        assert_eq!(s("5s2"), Scalar::from_parts((0, 1), (5, 1)));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(s("3/2-1/3s2"), Scalar::from_parts((3, 2), (-1, 3)));
        assert_eq!(s("s2"), Scalar::sqrt2());
        assert_eq!(s("-s2"), -Scalar::sqrt2());
        assert_eq!(s("1+s2"), Scalar::from_parts((1, 1), (1, 1)));
        assert_eq!(s("4/6"), Scalar::from_ratio(2, 3));
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn format_canonical() {
        assert_eq!(Scalar::from_parts((3, 2), (-1, 3)).to_string(), "3/2-1/3s2");
        assert_eq!(Scalar::from_parts((0, 1), (-1, 1)).to_string(), "-s2");
        assert_eq!(Scalar::from_parts((0, 1), (-2, 4)).to_string(), "-1/2s2");
        assert_eq!(Scalar::from_parts((-7, 1), (1, 1)).to_string(), "-7+s2");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = "3/".parse::<Scalar>().unwrap_err();
        assert_eq!(e, CdError::parse(2, "expected denominator"));
        assert!(matches!("1/0".parse::<Scalar>(), Err(CdError::Parse { pos: 2, .. })));
        assert!(matches!("1+2".parse::<Scalar>(), Err(CdError::Parse { pos: 3, .. })));
        assert!(matches!("x".parse::<Scalar>(), Err(CdError::Parse { pos: 0, .. })));
        assert!(matches!("2s2+1".parse::<Scalar>(), Err(CdError::Parse { pos: 3, .. })));
        assert!(matches!("".parse::<Scalar>(), Err(CdError::Parse { .. })));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::zero().recip(), Err(CdError::DivisionByZero));
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(CdError::DivisionByZero)
        );
    }

    #[test]
    fn ordering_uses_real_embedding() {
        // 3 - 2√2 ≈ 0.17 > 0, 1 - √2 < 0, 7/5 < √2 < 3/2
        assert!(s("3-2s2") > Scalar::zero());
        assert!(s("1-s2") < Scalar::zero());
        assert!(s("7/5") < Scalar::sqrt2());
        assert!(Scalar::sqrt2() < s("3/2"));
        assert_eq!(s("-3+2s2").signum(), Ordering::Less);
    }
}
