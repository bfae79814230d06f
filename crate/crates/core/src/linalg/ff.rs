//! Fraction-free Gauss-Jordan elimination over `Z[√2]`.
//!
//! Rows are first scaled to integral entries. Every intermediate entry is
//! then a minor of the scaled matrix, so each division by the previous pivot
//! is exact and no gcd is ever taken until the final normalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// `p + q√2` with integer parts.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Zr2 {
    p: BigInt,
    q: BigInt,
}

impl Zr2 {
    fn one() -> Self {
        Zr2 {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    fn mul(&self, o: &Zr2) -> Zr2 {
        if self.q.is_zero() && o.q.is_zero() {
            return Zr2 {
                p: &self.p * &o.p,
                q: BigInt::zero(),
            };
        }
        Zr2 {
            p: &self.p * &o.p + BigInt::from(2) * &self.q * &o.q,
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }

    fn sub(&self, o: &Zr2) -> Zr2 {
        Zr2 {
            p: &self.p - &o.p,
            q: &self.q - &o.q,
        }
    }

    /// Exact quotient; the caller guarantees divisibility in `Z[√2]`.
    fn div_exact(&self, d: &Zr2) -> Zr2 {
        if d.is_one() {
            return self.clone();
        }
        let (num, den) = if d.q.is_zero() {
            (self.clone(), d.p.clone())
        } else {
            let conj = Zr2 {
                p: d.p.clone(),
                q: -&d.q,
            };
            (self.mul(&conj), &d.p * &d.p - BigInt::from(2) * &d.q * &d.q)
        };
        debug_assert!(num.p.is_multiple_of(&den) && num.q.is_multiple_of(&den));
        Zr2 {
            p: num.p / &den,
            q: num.q / &den,
        }
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::new(
            BigRational::from_integer(self.p.clone()),
            BigRational::from_integer(self.q.clone()),
        )
    }
}

fn integral_row(row: &[Scalar]) -> Vec<Zr2> {
    let mut l = BigInt::one();
    for s in row {
        for r in [s.rational_part(), s.sqrt2_part()] {
            if !r.denom().is_one() {
                l = l.lcm(r.denom());
            }
        }
    }
    row.iter()
        .map(|s| {
            let scale = |r: &BigRational| (r.numer() * &l) / r.denom();
            Zr2 {
                p: scale(s.rational_part()),
                q: scale(s.sqrt2_part()),
            }
        })
        .collect()
}

/// Reduced row echelon form with unit pivots; zero rows are dropped.
pub(super) fn rref(rows: &[Vec<Scalar>], cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut a: Vec<Vec<Zr2>> = rows
        .iter()
        .filter(|r| r.iter().any(|s| !s.is_zero()))
        .map(|r| integral_row(r))
        .collect();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prev = Zr2::one();
    let mut prow = 0;
    for col in 0..cols {
        if prow == m {
            break;
        }
        let Some(found) = (prow..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(prow, found);
        let pivot_row = std::mem::take(&mut a[prow]);
        let piv = pivot_row[col].clone();
        let support: Vec<usize> = (0..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let scale_only = piv == prev;
        for (i, row) in a.iter_mut().enumerate() {
            if i == prow {
                continue;
            }
            let f = row[col].clone();
            if f.is_zero() {
                if !scale_only {
                    for x in row.iter_mut() {
                        if !x.is_zero() {
                            *x = x.mul(&piv).div_exact(&prev);
                        }
                    }
                }
                continue;
            }
            for (j, x) in row.iter_mut().enumerate() {
                let in_support = support.binary_search(&j).is_ok();
                if x.is_zero() && !in_support {
                    continue;
                }
                let mut v = x.mul(&piv);
                if in_support {
                    v = v.sub(&f.mul(&pivot_row[j]));
                }
                *x = v.div_exact(&prev);
            }
        }
        a[prow] = pivot_row;
        prev = piv;
        pivots.push(col);
        prow += 1;
    }
    a.truncate(pivots.len());
    let out = a
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let inv = row[p].to_scalar().recip().expect("pivot is nonzero");
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        Scalar::zero()
                    } else {
                        &x.to_scalar() * &inv
                    }
                })
                .collect()
        })
        .collect();
    (out, pivots)
}
