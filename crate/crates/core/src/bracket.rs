//! The bracket notation `{a, b} = (1/√2)(a + b, i_n(−a + b)) ∈ A_{n+1}` for
//! `a, b ∈ C_n^⊥`, with its multiplication and inner-product formulas.

use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexScalar, Element};
use crate::error::{CdError, Result};
use crate::scalar::Scalar;

/// A pair `(a, b)` of elements of `C_n^⊥`, standing for `{a, b} ∈ A_{n+1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BracketPair {
    #[serde(rename = "n")]
    level: u32,
    a: Element,
    b: Element,
}

#[derive(Deserialize)]
struct BracketRepr {
    n: u32,
    a: Element,
    b: Element,
}

impl<'de> Deserialize<'de> for BracketPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BracketRepr::deserialize(d)?;
        if r.a.level() != r.n {
            return Err(serde::de::Error::custom(CdError::LevelMismatch {
                left: r.n,
                right: r.a.level(),
            }));
        }
        BracketPair::new(r.a, r.b).map_err(serde::de::Error::custom)
    }
}

impl BracketPair {
    pub fn new(a: Element, b: Element) -> Result<Self> {
        a.same_level(&b)?;
        if a.level() == 0 {
            return Err(CdError::InvalidLevel {
                level: 0,
                msg: "brackets need n >= 1".into(),
            });
        }
        if !a.in_c_perp() || !b.in_c_perp() {
            return Err(CdError::precondition(
                "bracket entries must lie in the orthogonal complement of C_n",
            ));
        }
        Ok(BracketPair {
            level: a.level(),
            a,
            b,
        })
    }

    pub fn zero(level: u32) -> Self {
        BracketPair::new(Element::zero(level), Element::zero(level)).expect("zero is in C^⊥")
    }

    /// `{a, 0}`
    pub fn left(a: Element) -> Result<Self> {
        let z = Element::zero(a.level());
        BracketPair::new(a, z)
    }

    /// `{0, b}`
    pub fn right(b: Element) -> Result<Self> {
        let z = Element::zero(b.level());
        BracketPair::new(z, b)
    }

    /// Level `n` of the entries; the bracket itself lives in `A_{n+1}`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn a(&self) -> &Element {
        &self.a
    }

    pub fn b(&self) -> &Element {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_element(&self) -> Element {
        let r = Scalar::inv_sqrt2();
        let i = Element::i_unit(self.level);
        let first = (&self.a + &self.b).scale(&r);
        let second = i.mul(&(&self.b - &self.a)).scale(&r);
        Element::from_halves(&first, &second)
    }

    /// Inverse of [`BracketPair::to_element`] on `H_{n+1}^⊥`:
    /// `(x, y) = (1/√2){x + i_n y, x − i_n y}`.
    pub fn from_element(z: &Element) -> Result<Self> {
        if z.level() < 2 {
            return Err(CdError::InvalidLevel {
                level: z.level(),
                msg: "brackets live in A_{n+1} with n >= 1".into(),
            });
        }
        if !z.in_h_perp() {
            return Err(CdError::precondition(
                "element has a nonzero coordinate along 1, i_n, i_{n+1} or i_n i_{n+1}",
            ));
        }
        let (x, y) = z.halves();
        let r = Scalar::inv_sqrt2();
        let iy = Element::i_unit(x.level()).mul(&y);
        BracketPair::new((&x + &iy).scale(&r), (&x - &iy).scale(&r))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        BracketPair {
            level: self.level,
            a: self.a.scale(s),
            b: self.b.scale(s),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn add(&self, rhs: &BracketPair) -> Result<Self> {
        BracketPair::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }

    /// `α̃{a, b} = {α* a, α b}`.
    pub fn c_action(&self, alpha: &ComplexScalar) -> Self {
        BracketPair {
            level: self.level,
            a: alpha.conj().act(&self.a),
            b: alpha.act(&self.b),
        }
    }

    /// `(0, i_n){a, b} = {b, −a}`.
    pub fn i_pair_mul(&self) -> Self {
        BracketPair {
            level: self.level,
            a: self.b.clone(),
            b: -&self.a,
        }
    }

    fn check_level(&self, q: &BracketPair) -> Result<()> {
        if self.level != q.level {
            return Err(CdError::LevelMismatch {
                left: self.level,
                right: q.level,
            });
        }
        Ok(())
    }
}

/// `(0, i_n) ∈ A_{n+1}`.
pub fn zero_i(level: u32) -> Element {
    Element::from_halves(&Element::zero(level), &Element::i_unit(level))
}

/// The three orthogonal pieces of `{a,b}{x,y}`:
/// `√2{π⊥(ax), π⊥(by)}`, `π̃_C(xa + by)` and `π̃_C(ay − xb)·(0, i_n)`.
pub fn bracket_mul_terms(p: &BracketPair, q: &BracketPair) -> Result<[Element; 3]> {
    p.check_level(q)?;
    let (a, b, x, y) = (&p.a, &p.b, &q.a, &q.b);
    let ax = a.mul(x);
    let by = b.mul(y);
    let first = BracketPair::new(ax.pi_c_perp(), by.pi_c_perp())?
        .to_element()
        .scale(&Scalar::sqrt2());
    let second = (&x.mul(a) + &by).pi_c().lift().to_element();
    let third = (&a.mul(y) - &x.mul(b))
        .pi_c()
        .lift()
        .to_element()
        .mul(&zero_i(p.level));
    Ok([first, second, third])
}

/// `{a,b}{x,y}` evaluated through the bracket formula.
pub fn bracket_mul(p: &BracketPair, q: &BracketPair) -> Result<Element> {
    let [t1, t2, t3] = bracket_mul_terms(p, q)?;
    Ok(&(&t1 + &t2) + &t3)
}

/// `⟨{a,b}, {x,y}⟩_C = ⟨a,x⟩_C* + ⟨b,y⟩_C`, lifted to `C_{n+1}`.
pub fn bracket_inner(p: &BracketPair, q: &BracketPair) -> Result<ComplexScalar> {
    p.check_level(q)?;
    let s = &p.a.herm_inner(&q.a).conj() + &p.b.herm_inner(&q.b);
    Ok(s.lift())
}

/// The four conditions whose conjunction is `{a,b}{x,y} = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ZdConditions {
    /// `π_C^⊥(ax) = 0`
    pub ax_in_c: bool,
    /// `π_C^⊥(by) = 0`
    pub by_in_c: bool,
    /// `xa + by = 0`
    pub xa_plus_by_zero: bool,
    /// `π_C(ay − xb) = 0`
    pub ay_minus_xb_perp: bool,
}

impl ZdConditions {
    pub fn all(&self) -> bool {
        self.ax_in_c && self.by_in_c && self.xa_plus_by_zero && self.ay_minus_xb_perp
    }
}

pub fn bracket_zd_conditions(p: &BracketPair, q: &BracketPair) -> Result<ZdConditions> {
    p.check_level(q)?;
    let (a, b, x, y) = (&p.a, &p.b, &q.a, &q.b);
    Ok(ZdConditions {
        ax_in_c: a.mul(x).pi_c_perp().is_zero(),
        by_in_c: b.mul(y).pi_c_perp().is_zero(),
        xa_plus_by_zero: (&x.mul(a) + &b.mul(y)).is_zero(),
        ay_minus_xb_perp: (&a.mul(y) - &x.mul(b)).pi_c().is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn e(n: u32, k: usize) -> Element {
        Element::basis(n, k)
    }

    fn pair(a: Element, b: Element) -> BracketPair {
        BracketPair::new(a, b).unwrap()
    }

    #[test]
    fn to_element_examples() {
        let z = BracketPair::left(e(3, 1)).unwrap().to_element();
        let expected = (&e(4, 1) + &e(4, 13)).scale(&Scalar::inv_sqrt2());
        assert_eq!(z, expected);
        assert!(BracketPair::zero(3).to_element().is_zero());
        assert_eq!(pair(e(3, 1), e(3, 2)).to_element().norm_sq(), Scalar::from_int(2));
        assert!(BracketPair::new(e(3, 0), e(3, 1)).is_err());
        assert!(BracketPair::new(e(3, 4), e(3, 1)).is_err());
    }

    #[test]
    fn from_element_examples() {
        let mut s = Sampler::new(4);
        for _ in 0..30 {
            let z = s.h_perp(4);
            assert_eq!(BracketPair::from_element(&z).unwrap().to_element(), z);
            let p = pair(s.c_perp(3), s.c_perp(3));
            assert_eq!(BracketPair::from_element(&p.to_element()).unwrap(), p);
        }
        let x = e(3, 3);
        let z = Element::from_halves(&x, &Element::zero(3));
        let r = Scalar::inv_sqrt2();
        assert_eq!(
            BracketPair::from_element(&z).unwrap(),
            pair(x.scale(&r), x.scale(&r))
        );
        assert!(BracketPair::from_element(&e(4, 4)).is_err());
    }

    #[test]
    fn c_action_matches_product() {
        let p = pair(e(3, 1), e(3, 2));
        let i = ComplexScalar::i(3);
        assert_eq!(
            p.c_action(&i),
            pair(-&Element::i_unit(3).mul(&e(3, 1)), Element::i_unit(3).mul(&e(3, 2)))
        );
        assert_eq!(p.c_action(&ComplexScalar::one(3)), p);
        let mut s = Sampler::new(8);
        for _ in 0..30 {
            let p = pair(s.c_perp(3), s.c_perp(3));
            let alpha = s.complex(3);
            assert_eq!(
                p.c_action(&alpha).to_element(),
                alpha.lift().act(&p.to_element())
            );
        }
    }

    #[test]
    fn multiplication_examples() {
        let p = BracketPair::left(e(3, 1)).unwrap();
        let q = BracketPair::left(e(3, 2)).unwrap();
        let expected = BracketPair::left(e(3, 1).mul(&e(3, 2)))
            .unwrap()
            .to_element()
            .scale(&Scalar::sqrt2());
        assert_eq!(bracket_mul(&p, &q).unwrap(), expected);
        assert_eq!(p.to_element().mul(&q.to_element()), expected);

        let r = BracketPair::right(e(3, 1)).unwrap();
        assert_eq!(r.to_element().mul(&p.to_element()), e(4, 12));
        assert_eq!(bracket_mul(&r, &p).unwrap(), e(4, 12));

        let t = BracketPair::right(e(3, 2)).unwrap();
        assert!(p.to_element().mul(&t.to_element()).is_zero());
        assert!(bracket_mul(&p, &t).unwrap().is_zero());
    }

    #[test]
    fn bracket_formula_matches_direct_product() {
        let mut s = Sampler::new(17);
        for n in [2u32, 3, 4] {
            for _ in 0..30 {
                let p = pair(s.c_perp(n), s.c_perp(n));
                let q = pair(s.c_perp(n), s.c_perp(n));
                let [t1, t2, t3] = bracket_mul_terms(&p, &q).unwrap();
                assert_eq!(&(&t1 + &t2) + &t3, p.to_element().mul(&q.to_element()));
                assert!(t1.in_h_perp());
                assert!(t2.pi_c_perp().is_zero());
                assert!(t1.dot(&t2).is_zero() && t1.dot(&t3).is_zero() && t2.dot(&t3).is_zero());
            }
        }
    }

    #[test]
    fn i_pair_examples() {
        let p = pair(e(3, 1), e(3, 2));
        assert_eq!(p.i_pair_mul(), pair(e(3, 2), -&e(3, 1)));
        assert_eq!(p.i_pair_mul().i_pair_mul(), p.neg());
        let j = zero_i(3);
        assert_eq!(j.mul(&p.to_element()), p.i_pair_mul().to_element());
        assert_eq!(p.to_element().mul(&j), -&p.i_pair_mul().to_element());
    }

    #[test]
    fn inner_examples() {
        let p = BracketPair::left(e(3, 1)).unwrap();
        assert_eq!(bracket_inner(&p, &p).unwrap(), ComplexScalar::one(4));
        let q = BracketPair::right(e(3, 1)).unwrap();
        assert!(bracket_inner(&p, &q).unwrap().is_zero());
        let mut s = Sampler::new(2);
        for _ in 0..30 {
            let p = pair(s.c_perp(3), s.c_perp(3));
            let q = pair(s.c_perp(3), s.c_perp(3));
            assert_eq!(
                bracket_inner(&p, &q).unwrap(),
                p.to_element().herm_inner(&q.to_element())
            );
        }
    }

    #[test]
    fn zd_condition_examples() {
        let p = BracketPair::left(e(3, 1)).unwrap();
        let q = BracketPair::right(e(3, 2)).unwrap();
        let c = bracket_zd_conditions(&p, &q).unwrap();
        assert!(c.all());
        let c = bracket_zd_conditions(&p, &p).unwrap();
        assert!(!c.xa_plus_by_zero);
        assert!(!c.all());
    }

    #[test]
    fn json_round_trip() {
        let p = pair(e(2, 1), e(2, 3));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<BracketPair>(&s).unwrap(), p);
        let bad = r#"{"n":2,"a":{"n":2,"coeffs":["1","0","0","0"]},"b":{"n":2,"coeffs":["0","0","0","0"]}}"#;
        assert!(serde_json::from_str::<BracketPair>(bad).is_err());
    }
}
