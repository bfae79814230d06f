//! Seeded random sampling of scalars and elements.
//!
//! Coefficients have numerators uniform in `[-9, 9]` and denominators in
//! `{1, 2}`: small heights keep exact elimination cheap while still landing
//! in generic position.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ComplexScalar, Element};
use crate::scalar::Scalar;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for sub-task `index` under `seed`.
    pub fn derived(seed: u64, index: u64) -> Self {
        Sampler::new(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn rational(&mut self) -> Scalar {
        let num = self.rng.random_range(-9i64..=9);
        let den = if self.rng.random_bool(0.5) { 1 } else { 2 };
        Scalar::from_ratio(num, den)
    }

    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let s = self.rational();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// `p + q√2` with both parts drawn like [`Sampler::rational`].
    pub fn scalar(&mut self) -> Scalar {
        let p = self.rational();
        let q = self.rational();
        p + q * Scalar::sqrt2()
    }

    pub fn complex(&mut self, level: u32) -> ComplexScalar {
        ComplexScalar::new(level, self.rational(), self.rational())
    }

    pub fn element(&mut self, level: u32) -> Element {
        let coeffs = (0..1usize << level).map(|_| self.rational()).collect();
        Element::from_coeffs(level, coeffs).expect("sampled level within cap")
    }

    pub fn nonzero_element(&mut self, level: u32) -> Element {
        loop {
            let e = self.element(level);
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn imaginary(&mut self, level: u32) -> Element {
        self.element(level).im()
    }

    /// Nonzero element of `C_n^⊥`.
    pub fn c_perp(&mut self, level: u32) -> Element {
        loop {
            let e = self.element(level).pi_c_perp();
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Nonzero element of `H_n^⊥`.
    pub fn h_perp(&mut self, level: u32) -> Element {
        loop {
            let e = self.element(level).project_h_perp();
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Element with a random sparse support of the given size.
    pub fn sparse(&mut self, level: u32, terms: usize) -> Element {
        let mut e = Element::zero(level);
        let d = 1usize << level;
        let ts: Vec<(usize, Scalar)> = (0..terms)
            .map(|_| (self.index(d), self.nonzero_rational()))
            .collect();
        for (k, c) in ts {
            e = &e + &Element::from_terms(level, &[(k, c)]);
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_reproducible() {
        let a: Vec<Element> = (0..3).map(|_| Sampler::new(7).element(4)).collect();
        assert_eq!(a[0], a[1]);
        let mut s = Sampler::new(7);
        let x = s.element(4);
        let y = s.element(4);
        assert_ne!(x, y);
    }

    #[test]
    fn coefficient_heights() {
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let r = s.rational();
            let two = Scalar::from_int(2);
            let scaled = &r * &two;
            // numerator in [-9,9], denominator 1 or 2
            assert!(scaled.is_rational());
            assert!(r.abs() <= Scalar::from_int(9));
        }
        assert!(s.c_perp(3).in_c_perp());
        assert!(s.h_perp(4).in_h_perp());
    }
}
