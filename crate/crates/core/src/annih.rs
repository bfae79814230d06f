//! Annihilators, images, quotients `b/a`, the eigenspace `Eig₂`, and the
//! quaternionic subalgebra spanned by a pair of imaginaries.

use serde::Serialize;

use crate::algebra::Element;
use crate::error::{CdError, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// Matrix of `x ↦ a·x`; column `k` holds `a·e_k`.
pub fn left_mult_matrix(a: &Element) -> Matrix {
    let n = a.level();
    let cols: Vec<Element> = (0..a.dim()).map(|k| a.mul(&Element::basis(n, k))).collect();
    Matrix::from_columns(&cols)
}

/// Left annihilator `{b : ab = 0}`.
pub fn ann(a: &Element) -> Subspace {
    Subspace::kernel(&left_mult_matrix(a)).expect("ambient dimension is a power of two")
}

/// Image of left multiplication, computed as a column space.
pub fn image(a: &Element) -> Subspace {
    Subspace::column_space(&left_mult_matrix(a)).expect("ambient dimension is a power of two")
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnReport {
    pub element: Element,
    pub dim_ann: usize,
    pub ann: Subspace,
    #[serde(skip)]
    pub image: Subspace,
    pub image_dim: usize,
}

impl AnnReport {
    pub fn new(a: &Element) -> Self {
        let ann = ann(a);
        let image = ann.orth_complement();
        AnnReport {
            element: a.clone(),
            dim_ann: ann.dim(),
            image_dim: image.dim(),
            ann,
            image,
        }
    }

    /// Upper bound `2^n − 4n + 4` on annihilator dimensions of nonzero
    /// elements, for `n ≥ 4`.
    pub fn dim_bound(level: u32) -> Option<usize> {
        (level >= 4).then(|| (1usize << level) + 4 - 4 * level as usize)
    }

    /// Divisibility by 4 and the upper bound hold (vacuous for `a = 0` or
    /// levels below 4).
    pub fn dimension_invariants_hold(&self) -> bool {
        match AnnReport::dim_bound(self.element.level()) {
            Some(bound) if !self.element.is_zero() => {
                self.dim_ann % 4 == 0 && self.dim_ann <= bound
            }
            _ => true,
        }
    }
}

/// The unique `x ⊥ Ann(a)` with `ax = b`.
pub fn quotient_div(b: &Element, a: &Element) -> Result<Element> {
    a.same_level(b)?;
    let ann_a = ann(a);
    if !ann_a.is_orthogonal_to(b) {
        return Err(CdError::precondition(
            "dividend is not orthogonal to the annihilator of the divisor",
        ));
    }
    let x = left_mult_matrix(a)
        .solve_particular(b.coeffs())
        .ok_or_else(|| CdError::precondition("dividend is not in the image of the divisor"))?;
    let x = Element::from_coeffs(a.level(), x)?;
    Ok(&x - &ann_a.project(&x))
}

/// `ker(L_a² + 2|a|² Id)`; on unit `a` this is `{b : a(ab) = −2b}`.
pub fn eig2(a: &Element) -> Result<Subspace> {
    if a.is_zero() {
        return Err(CdError::precondition("Eig2 of the zero element"));
    }
    let l = left_mult_matrix(a);
    let two_norm = Scalar::from_int(2) * a.norm_sq();
    Subspace::kernel(&l.mul(&l).add_diagonal(&two_norm))
}

/// `span{1, a1, a2, a1a2}` for orthogonal imaginaries of equal norm.
pub fn quaternion_subalgebra(a1: &Element, a2: &Element) -> Result<Subspace> {
    a1.same_level(a2)?;
    if !a1.is_imaginary() || !a2.is_imaginary() {
        return Err(CdError::precondition("both generators must be imaginary"));
    }
    if a1.is_zero() || a2.is_zero() {
        return Err(CdError::precondition("generators must be nonzero"));
    }
    if !a1.dot(a2).is_zero() {
        return Err(CdError::precondition("generators must be orthogonal"));
    }
    if a1.norm_sq() != a2.norm_sq() {
        return Err(CdError::precondition("generators must have equal norms"));
    }
    let n = a1.level();
    let s = Subspace::span(n, &[Element::one(n), a1.clone(), a2.clone(), a1.mul(a2)])?;
    if s.dim() != 4 || !s.is_closed_under_mul() {
        return Err(CdError::Identity(
            "quaternion span is not a 4-dimensional subalgebra".into(),
        ));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn e(n: u32, k: usize) -> Element {
        Element::basis(n, k)
    }

    #[test]
    fn left_mult_examples() {
        assert_eq!(left_mult_matrix(&Element::one(3)), Matrix::identity(8));
        let m = left_mult_matrix(&e(1, 1));
        assert_eq!(m.get(0, 1), &Scalar::from_int(-1));
        assert_eq!(m.get(1, 0), &Scalar::one());
        assert!(m.get(0, 0).is_zero() && m.get(1, 1).is_zero());
        let mut s = Sampler::new(3);
        let a = s.element(4);
        let x = s.element(4);
        assert_eq!(left_mult_matrix(&a).mul_vec(x.coeffs()), a.mul(&x).coeffs());
    }

    #[test]
    fn octonions_have_trivial_annihilators() {
        let mut s = Sampler::new(9);
        for _ in 0..10 {
            assert_eq!(ann(&s.nonzero_element(3)).dim(), 0);
        }
        assert_eq!(ann(&e(3, 1)).dim(), 0);
    }

    #[test]
    fn stiefel_pair_annihilator() {
        let a = Element::from_halves(&e(3, 1), &e(3, 2));
        let r = AnnReport::new(&a);
        assert_eq!(r.dim_ann, 4);
        let expected: Vec<Element> = (4..8)
            .map(|k| Element::from_halves(&e(3, k), &-&e(3, 3).mul(&e(3, k))))
            .collect();
        assert_eq!(r.ann, Subspace::span(4, &expected).unwrap());
        assert_eq!(r.image, image(&a));
        assert!(r.dimension_invariants_hold());
    }

    #[test]
    fn dugger_annihilator_dimension() {
        let a = Element::from_halves(&Element::i_unit(3), &e(3, 1));
        assert_eq!(ann(&a).dim(), 4);
    }

    #[test]
    fn zero_has_full_annihilator() {
        let r = AnnReport::new(&Element::zero(4));
        assert_eq!(r.dim_ann, 16);
        assert!(r.dimension_invariants_hold());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_div(&e(3, 3), &e(3, 1)).unwrap(), e(3, 2));
        let a = Element::from_halves(&e(3, 1), &e(3, 2));
        assert!(quotient_div(&Element::zero(4), &a).unwrap().is_zero());
        let ann_a = ann(&a);
        assert!(quotient_div(&ann_a.basis()[0], &a).is_err());
        assert!(quotient_div(&e(2, 1), &Element::zero(2)).is_err());
        assert!(quotient_div(&Element::zero(2), &Element::zero(2)).unwrap().is_zero());
        let mut s = Sampler::new(21);
        for _ in 0..5 {
            let x = s.element(4);
            let b = a.mul(&x);
            let q = quotient_div(&b, &a).unwrap();
            assert_eq!(a.mul(&q), b);
            assert!(ann_a.is_orthogonal_to(&q));
        }
    }

    #[test]
    fn eig2_examples() {
        let a = Element::from_halves(&e(3, 1), &e(3, 2));
        let eg = eig2(&a).unwrap();
        let expected: Vec<Element> = (4..8)
            .map(|k| Element::from_halves(&e(3, k), &e(3, 3).mul(&e(3, k))))
            .collect();
        assert_eq!(eg, Subspace::span(4, &expected).unwrap());
        assert!(ann(&a).basis().iter().all(|v| eg.is_orthogonal_to(v)));
        let q = quaternion_subalgebra(&e(3, 1), &e(3, 2)).unwrap();
        let q4 = Subspace::span(
            4,
            &q.basis()
                .iter()
                .flat_map(|v| {
                    [
                        Element::from_halves(v, &Element::zero(3)),
                        Element::from_halves(&Element::zero(3), v),
                    ]
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(q4.basis().iter().all(|v| eg.is_orthogonal_to(v)));
        assert_eq!(eig2(&e(4, 1)).unwrap().dim(), 0);
        assert!(eig2(&Element::zero(4)).is_err());
    }

    #[test]
    fn quaternion_subalgebra_examples() {
        let q = quaternion_subalgebra(&e(3, 1), &e(3, 2)).unwrap();
        assert_eq!(q, Subspace::span(3, &[e(3, 0), e(3, 1), e(3, 2), e(3, 3)]).unwrap());
        let q = quaternion_subalgebra(&e(3, 2), &e(3, 5)).unwrap();
        assert_eq!(q.dim(), 4);
        assert!(q.contains(&e(3, 2).mul(&e(3, 5))));
        assert!(quaternion_subalgebra(&e(3, 1), &e(3, 1)).is_err());
        assert!(quaternion_subalgebra(&e(3, 0), &e(3, 1)).is_err());
        assert!(quaternion_subalgebra(&e(3, 1), &e(3, 2).scale(&Scalar::from_int(2))).is_err());
    }
}
