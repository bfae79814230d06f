use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::element::Element;
use crate::scalar::Scalar;

/// `s + t·i_n ∈ C_n`. The level is carried so that products and lifts stay
/// attached to the right algebra.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ComplexScalar {
    #[serde(rename = "n")]
    level: u32,
    #[serde(rename = "re")]
    s: Scalar,
    #[serde(rename = "im")]
    t: Scalar,
}

impl ComplexScalar {
    pub fn new(level: u32, s: Scalar, t: Scalar) -> Self {
        assert!(level >= 1, "C_0 has no imaginary unit");
        ComplexScalar { level, s, t }
    }

    pub fn real(level: u32, s: Scalar) -> Self {
        ComplexScalar::new(level, s, Scalar::zero())
    }

    pub fn one(level: u32) -> Self {
        ComplexScalar::real(level, Scalar::one())
    }

    pub fn i(level: u32) -> Self {
        ComplexScalar::new(level, Scalar::zero(), Scalar::one())
    }

    pub fn zero(level: u32) -> Self {
        ComplexScalar::real(level, Scalar::zero())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn re(&self) -> &Scalar {
        &self.s
    }

    pub fn im(&self) -> &Scalar {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.t.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar {
            level: self.level,
            s: self.s.clone(),
            t: -&self.t,
        }
    }

    pub fn scale(&self, r: &Scalar) -> Self {
        ComplexScalar {
            level: self.level,
            s: &self.s * r,
            t: &self.t * r,
        }
    }

    /// `|α|² = s² + t²`
    pub fn norm_sq(&self) -> Scalar {
        &self.s * &self.s + &self.t * &self.t
    }

    /// The map `C_n → C_{n+1}` sending `1 ↦ 1`, `i_n ↦ i_{n+1}`.
    pub fn lift(&self) -> Self {
        ComplexScalar {
            level: self.level + 1,
            s: self.s.clone(),
            t: self.t.clone(),
        }
    }

    /// `s·1 + t·i_n` as an element of `A_n`.
    pub fn to_element(&self) -> Element {
        let h = 1usize << (self.level - 1);
        Element::from_terms(self.level, &[(0, self.s.clone()), (h, self.t.clone())])
    }

    /// Left multiplication `α·x` for `x ∈ A_n`.
    pub fn act(&self, x: &Element) -> Element {
        assert_eq!(self.level, x.level(), "C_n acts on A_n");
        self.to_element().mul(x)
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &ComplexScalar) -> ComplexScalar {
        assert_eq!(self.level, rhs.level);
        ComplexScalar {
            level: self.level,
            s: &self.s + &rhs.s,
            t: &self.t + &rhs.t,
        }
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &ComplexScalar) -> ComplexScalar {
        assert_eq!(self.level, rhs.level);
        ComplexScalar {
            level: self.level,
            s: &self.s - &rhs.s,
            t: &self.t - &rhs.t,
        }
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &ComplexScalar) -> ComplexScalar {
        assert_eq!(self.level, rhs.level);
        ComplexScalar {
            level: self.level,
            s: &self.s * &rhs.s - &self.t * &rhs.t,
            t: &self.s * &rhs.t + &self.t * &rhs.s,
        }
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar {
            level: self.level,
            s: -&self.s,
            t: -&self.t,
        }
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})i{}", self.s, self.t, self.level)
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}({}, {})", self.level, self.s, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_maps_units() {
        assert_eq!(ComplexScalar::one(3).lift(), ComplexScalar::one(4));
        assert_eq!(ComplexScalar::i(3).lift(), ComplexScalar::i(4));
        assert_eq!(ComplexScalar::i(4).to_element(), Element::i_unit(4));
    }

    #[test]
    fn lift_is_a_ring_map() {
        let a = ComplexScalar::new(3, Scalar::from_int(2), Scalar::from_ratio(-1, 3));
        let b = ComplexScalar::new(3, Scalar::sqrt2(), Scalar::from_int(5));
        assert_eq!(&a.lift() * &b.lift(), (&a * &b).lift());
    }

    #[test]
    fn multiplication_matches_the_algebra() {
        let a = ComplexScalar::new(2, Scalar::from_int(2), Scalar::from_int(-3));
        let b = ComplexScalar::new(2, Scalar::from_ratio(1, 2), Scalar::from_int(7));
        assert_eq!((&a * &b).to_element(), a.to_element().mul(&b.to_element()));
    }
}
