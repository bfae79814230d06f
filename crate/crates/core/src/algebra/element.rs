use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::complex::ComplexScalar;
use super::table::{self, MulTable};
use crate::error::{CdError, Result};
use crate::scalar::Scalar;

/// An element of `A_n` in the standard basis `e_0, …, e_{2^n - 1}`.
///
/// `(x, y) ∈ A_{n-1} × A_{n-1}` occupies coordinates `0..2^{n-1}` for `x`
/// and `2^{n-1}..2^n` for `y`, so `i_n = e_{2^{n-1}}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Element {
    #[serde(rename = "n")]
    level: u32,
    coeffs: Vec<Scalar>,
}

#[derive(Deserialize)]
struct ElementRepr {
    n: u32,
    coeffs: Vec<Scalar>,
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ElementRepr::deserialize(d)?;
        Element::from_coeffs(r.n, r.coeffs).map_err(serde::de::Error::custom)
    }
}

impl Element {
    pub fn zero(level: u32) -> Self {
        Element {
            level,
            coeffs: vec![Scalar::zero(); 1 << level],
        }
    }

    pub fn one(level: u32) -> Self {
        Element::basis(level, 0)
    }

    pub fn basis(level: u32, k: usize) -> Self {
        let mut e = Element::zero(level);
        e.coeffs[k] = Scalar::one();
        e
    }

    /// `i_n = (0, 1)`. Panics at level 0.
    pub fn i_unit(level: u32) -> Self {
        assert!(level >= 1, "i_0 does not exist");
        Element::basis(level, 1 << (level - 1))
    }

    pub fn from_coeffs(level: u32, coeffs: Vec<Scalar>) -> Result<Self> {
        table::check_level(level)?;
        if coeffs.len() != 1 << level {
            return Err(CdError::precondition(format!(
                "level {level} needs {} coefficients, got {}",
                1usize << level,
                coeffs.len()
            )));
        }
        Ok(Element { level, coeffs })
    }

    pub fn from_ints(level: u32, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), 1 << level);
        Element {
            level,
            coeffs: coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
        }
    }

    /// Sparse constructor: `Σ c·e_k` over the given terms.
    pub fn from_terms(level: u32, terms: &[(usize, Scalar)]) -> Self {
        let mut e = Element::zero(level);
        for (k, c) in terms {
            e.coeffs[*k] += c;
        }
        e
    }

    /// `(x, y)` with `x, y ∈ A_{n-1}`.
    pub fn from_halves(x: &Element, y: &Element) -> Self {
        assert_eq!(x.level, y.level, "halves at different levels");
        let mut coeffs = x.coeffs.clone();
        coeffs.extend(y.coeffs.iter().cloned());
        Element {
            level: x.level + 1,
            coeffs,
        }
    }

    /// `(self, 0)` one level up.
    pub fn embed(&self) -> Self {
        Element::from_halves(self, &Element::zero(self.level))
    }

    /// Split `(x, y)` into its two halves in `A_{n-1}`.
    pub fn halves(&self) -> (Element, Element) {
        assert!(self.level >= 1, "level-0 elements have no halves");
        let h = self.half_dim();
        (
            Element {
                level: self.level - 1,
                coeffs: self.coeffs[..h].to_vec(),
            },
            Element {
                level: self.level - 1,
                coeffs: self.coeffs[h..].to_vec(),
            },
        )
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    fn half_dim(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Element {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        let mut coeffs: Vec<Scalar> = self.coeffs.iter().map(|c| -c).collect();
        coeffs[0] = self.coeffs[0].clone();
        Element {
            level: self.level,
            coeffs,
        }
    }

    pub fn re(&self) -> Scalar {
        self.coeffs[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut e = self.clone();
        e.coeffs[0] = Scalar::zero();
        e
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Table-driven product; panics on a level mismatch.
    pub fn mul(&self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("cd_mul level mismatch")
    }

    pub fn try_mul(&self, rhs: &Element) -> Result<Element> {
        self.same_level(rhs)?;
        let t = MulTable::get(self.level);
        let mut out = Element::zero(self.level);
        let ys: Vec<(usize, &Scalar)> = rhs.support().collect();
        for (i, x) in self.support() {
            for &(j, y) in &ys {
                let (k, neg) = t.product(i, j);
                let term = x * y;
                if neg {
                    out.coeffs[k] -= &term;
                } else {
                    out.coeffs[k] += &term;
                }
            }
        }
        Ok(out)
    }

    /// Coefficient `k` of `self · rhs` without forming the whole product.
    pub fn product_coeff(&self, rhs: &Element, k: usize) -> Scalar {
        assert_eq!(self.level, rhs.level);
        let t = MulTable::get(self.level);
        let mut acc = Scalar::zero();
        for (i, x) in self.support() {
            let j = i ^ k;
            let y = &rhs.coeffs[j];
            if y.is_zero() {
                continue;
            }
            let term = x * y;
            if t.is_negative(i, j) {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        acc
    }

    /// Product computed directly from `(a,b)(c,d) = (ac - d*b, da + bc*)`,
    /// recursing down to the reals. Independent of the table.
    pub fn mul_recursive(&self, rhs: &Element) -> Element {
        assert_eq!(self.level, rhs.level);
        if self.level == 0 {
            return Element {
                level: 0,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        if self.is_zero() || rhs.is_zero() {
            return Element::zero(self.level);
        }
        let (a, b) = self.halves();
        let (c, d) = rhs.halves();
        let first = &a.mul_recursive(&c) - &d.conj().mul_recursive(&b);
        let second = &d.mul_recursive(&a) + &b.mul_recursive(&c.conj());
        Element::from_halves(&first, &second)
    }

    /// `⟨a, b⟩_R` as `Re(a b*)`.
    pub fn real_inner(&self, rhs: &Element) -> Scalar {
        self.product_coeff(&rhs.conj(), 0)
    }

    /// Coordinate dot product; agrees with [`Element::real_inner`].
    pub fn dot(&self, rhs: &Element) -> Scalar {
        assert_eq!(self.level, rhs.level);
        let mut acc = Scalar::zero();
        for (i, x) in self.support() {
            let y = &rhs.coeffs[i];
            if !y.is_zero() {
                acc += &(x * y);
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    /// `⟨a, b⟩_C`: the `C_n`-component of `a b*`. Panics at level 0.
    pub fn herm_inner(&self, rhs: &Element) -> ComplexScalar {
        self.try_herm_inner(rhs).expect("herm_inner")
    }

    pub fn try_herm_inner(&self, rhs: &Element) -> Result<ComplexScalar> {
        self.same_level(rhs)?;
        if self.level == 0 {
            return Err(CdError::InvalidLevel {
                level: 0,
                msg: "Hermitian inner product needs i_n".into(),
            });
        }
        let bc = rhs.conj();
        Ok(ComplexScalar::new(
            self.level,
            self.product_coeff(&bc, 0),
            self.product_coeff(&bc, self.half_dim()),
        ))
    }

    pub fn c_orthogonal(&self, rhs: &Element) -> bool {
        self.herm_inner(rhs).is_zero()
    }

    /// Orthogonal projection onto `C_n = span{1, i_n}`.
    pub fn pi_c(&self) -> ComplexScalar {
        assert!(self.level >= 1);
        ComplexScalar::new(
            self.level,
            self.coeffs[0].clone(),
            self.coeffs[self.half_dim()].clone(),
        )
    }

    pub fn pi_c_perp(&self) -> Element {
        assert!(self.level >= 1);
        let mut e = self.clone();
        let h = self.half_dim();
        e.coeffs[0] = Scalar::zero();
        e.coeffs[h] = Scalar::zero();
        e
    }

    pub fn in_c_perp(&self) -> bool {
        self.level >= 1 && self.coeffs[0].is_zero() && self.coeffs[self.half_dim()].is_zero()
    }

    /// Indices of `1, i_{n-1}, i_n, i_{n-1} i_n`: the coordinates of `H_n`.
    pub fn h_indices(level: u32) -> [usize; 4] {
        assert!(level >= 2);
        let h = 1usize << (level - 1);
        let q = h / 2;
        [0, q, h, h + q]
    }

    pub fn in_h_perp(&self) -> bool {
        Element::h_indices(self.level)
            .iter()
            .all(|&k| self.coeffs[k].is_zero())
    }

    pub fn project_h_perp(&self) -> Element {
        let mut e = self.clone();
        for k in Element::h_indices(self.level) {
            e.coeffs[k] = Scalar::zero();
        }
        e
    }

    /// `a(ae_k) = (aa)e_k` for every basis vector.
    pub fn is_alternative(&self) -> bool {
        let sq = self * self;
        (0..self.dim()).all(|k| {
            let ek = Element::basis(self.level, k);
            self.mul(&self.mul(&ek)) == sq.mul(&ek)
        })
    }

    pub fn same_level(&self, rhs: &Element) -> Result<()> {
        if self.level != rhs.level {
            return Err(CdError::LevelMismatch {
                left: self.level,
                right: rhs.level,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}[", self.level)?;
        let mut first = true;
        for (k, c) in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})e{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "e{k}")?;
            } else {
                write!(f, "({c})e{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert_eq!(self.level, rhs.level);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        assert_eq!(self.level, rhs.level);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        Element::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: u32, k: usize) -> Element {
        Element::basis(n, k)
    }

    #[test]
    fn complex_unit_squares_to_minus_one() {
        let i = Element::i_unit(1);
        assert_eq!(&i * &i, -Element::one(1));
    }

    #[test]
    fn quaternion_anticommutation() {
        assert_eq!(&e(2, 1) * &e(2, 2), e(2, 3));
        assert_eq!(&e(2, 2) * &e(2, 1), -e(2, 3));
    }

    #[test]
    fn octonion_e4_e1() {
        assert_eq!(&e(3, 4) * &e(3, 1), -e(3, 5));
        assert_eq!(e(3, 4).mul_recursive(&e(3, 1)), -e(3, 5));
    }

    #[test]
    fn conj_re_im() {
        assert_eq!(e(3, 0).conj(), e(3, 0));
        for k in 1..8 {
            assert_eq!(e(3, k).conj(), -e(3, k));
        }
        let x = Element::from_ints(2, &[3, -1, 4, 2]);
        assert_eq!(x.conj().conj(), x);
        assert_eq!(&x.im() + &Element::one(2).scale(&x.re()), x);
    }

    #[test]
    fn inner_products_on_basis() {
        for n in 0..=6 {
            let d = 1usize << n;
            for i in 0..d {
                for j in 0..d {
                    let expect = Scalar::from_int((i == j) as i64);
                    assert_eq!(e(n, i).real_inner(&e(n, j)), expect, "n={n} i={i} j={j}");
                }
            }
        }
        assert_eq!((&e(3, 1) + &e(3, 2)).norm_sq(), Scalar::from_int(2));
    }

    #[test]
    fn imaginary_square_is_minus_norm() {
        let a = &e(3, 1) + &e(3, 2);
        assert_eq!(&a * &a, Element::one(3).scale(&Scalar::from_int(-2)));
    }

    #[test]
    fn herm_inner_examples() {
        let one = ComplexScalar::new(2, Scalar::one(), Scalar::zero());
        assert_eq!(e(2, 1).herm_inner(&e(2, 1)), one);
        let i2 = ComplexScalar::new(2, Scalar::zero(), Scalar::one());
        assert_eq!(e(2, 1).herm_inner(&e(2, 3)), i2);
        assert!(e(3, 1).herm_inner(&e(3, 2)).is_zero());
        assert!(e(0, 0).try_herm_inner(&e(0, 0)).is_err());
    }

    #[test]
    fn projections() {
        let x = &e(2, 0) + &e(2, 1);
        assert_eq!(x.pi_c().to_element(), e(2, 0));
        assert!(Element::i_unit(4).pi_c_perp().is_zero());
        assert!(e(4, 3).in_c_perp());
        assert!(!e(4, 8).in_c_perp());
        assert_eq!(Element::h_indices(4), [0, 4, 8, 12]);
    }

    #[test]
    fn alternativity() {
        let a = &e(4, 1) + &e(4, 10);
        assert!(!a.is_alternative());
        assert!(e(4, 1).is_alternative());
        assert!(e(3, 5).embed().is_alternative());
    }

    #[test]
    fn level_mismatch_is_an_error() {
        assert_eq!(
            e(2, 1).try_mul(&e(3, 1)),
            Err(CdError::LevelMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn from_coeffs_validates() {
        assert!(Element::from_coeffs(2, vec![Scalar::zero(); 3]).is_err());
        assert!(Element::from_coeffs(9, vec![Scalar::zero(); 512]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = Element::from_terms(2, &[(1, "3/2-1/3s2".parse().unwrap()), (3, Scalar::one())]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":2,"coeffs":["0","3/2-1/3s2","0","1"]}"#);
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Element>(r#"{"n":2,"coeffs":["1"]}"#).is_err());
    }
}
