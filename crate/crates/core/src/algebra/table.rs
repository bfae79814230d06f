//! Basis multiplication tables, one per level, built once and shared.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

use crate::error::{CdError, Result};

/// Largest level a table is ever built for, even with the cap lifted.
pub const HARD_MAX_LEVEL: u32 = 10;
/// Default cap for algebra operations (the level-8 table has 2^16 entries).
pub const DEFAULT_ALGEBRA_CAP: u32 = 8;
/// Default cap for the inductive constructions.
pub const DEFAULT_CONSTRUCTION_CAP: u32 = 7;

static ALGEBRA_CAP: AtomicU32 = AtomicU32::new(DEFAULT_ALGEBRA_CAP);
static CONSTRUCTION_CAP: AtomicU32 = AtomicU32::new(DEFAULT_CONSTRUCTION_CAP);

/// Lift (or restore) the level caps process-wide.
pub fn allow_large(on: bool) {
    if on {
        ALGEBRA_CAP.store(HARD_MAX_LEVEL, Ordering::Relaxed);
        CONSTRUCTION_CAP.store(HARD_MAX_LEVEL - 1, Ordering::Relaxed);
    } else {
        ALGEBRA_CAP.store(DEFAULT_ALGEBRA_CAP, Ordering::Relaxed);
        CONSTRUCTION_CAP.store(DEFAULT_CONSTRUCTION_CAP, Ordering::Relaxed);
    }
}

pub fn algebra_cap() -> u32 {
    ALGEBRA_CAP.load(Ordering::Relaxed)
}

pub fn construction_cap() -> u32 {
    CONSTRUCTION_CAP.load(Ordering::Relaxed)
}

pub fn check_level(level: u32) -> Result<()> {
    let cap = algebra_cap();
    if level > cap {
        return Err(CdError::LevelTooLarge { level, cap });
    }
    Ok(())
}

pub fn check_construction_level(level: u32) -> Result<()> {
    let cap = construction_cap();
    if level > cap {
        return Err(CdError::LevelTooLarge { level, cap });
    }
    Ok(())
}

/// `e_i e_j = sign · e_k` for every pair of basis vectors of `A_n`.
#[derive(Debug)]
pub struct MulTable {
    level: u32,
    dim: usize,
    target: Vec<u32>,
    negative: Vec<bool>,
}

static TABLES: [OnceLock<MulTable>; HARD_MAX_LEVEL as usize + 1] =
    [const { OnceLock::new() }; HARD_MAX_LEVEL as usize + 1];

impl MulTable {
    /// The memoized table for `level`. Panics above [`HARD_MAX_LEVEL`].
    pub fn get(level: u32) -> &'static MulTable {
        assert!(
            level <= HARD_MAX_LEVEL,
            "no multiplication table above level {HARD_MAX_LEVEL}"
        );
        TABLES[level as usize].get_or_init(|| {
            let t = MulTable::build(level);
            t.verify_against_recursion()
                .unwrap_or_else(|(i, j)| panic!("table mismatch at level {level}: e{i}*e{j}"));
            t
        })
    }

    fn build(level: u32) -> MulTable {
        if level == 0 {
            return MulTable {
                level: 0,
                dim: 1,
                target: vec![0],
                negative: vec![false],
            };
        }
        let prev = MulTable::get(level - 1);
        let h = prev.dim;
        let dim = 2 * h;
        let mut target = vec![0u32; dim * dim];
        let mut negative = vec![false; dim * dim];
        // conj(e_k) = -e_k for k > 0
        let conj_neg = |k: usize| k != 0;
        for i in 0..dim {
            for j in 0..dim {
                let (k, neg) = match (i < h, j < h) {
                    // (a,0)(c,0) = (ac, 0)
                    (true, true) => prev.product(i, j),
                    // (a,0)(0,d) = (0, da)
                    (true, false) => {
                        let (k, s) = prev.product(j - h, i);
                        (k + h, s)
                    }
                    // (0,b)(c,0) = (0, bc*)
                    (false, true) => {
                        let (k, s) = prev.product(i - h, j);
                        (k + h, s ^ conj_neg(j))
                    }
                    // (0,b)(0,d) = (-d*b, 0)
                    (false, false) => {
                        let (k, s) = prev.product(j - h, i - h);
                        (k, !(s ^ conj_neg(j - h)))
                    }
                };
                target[i * dim + j] = k as u32;
                negative[i * dim + j] = neg;
            }
        }
        MulTable {
            level,
            dim,
            target,
            negative,
        }
    }

    /// Checks every entry against [`basis_product_by_recursion`] and the
    /// `k = i XOR j` indexing that the sparse kernels rely on.
    pub fn verify_against_recursion(&self) -> std::result::Result<(), (usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let (k, neg) = self.product(i, j);
                if k != i ^ j || basis_product_by_recursion(self.level, i, j) != (k, neg) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(k, negative)` with `e_i e_j = ±e_k`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> (usize, bool) {
        let idx = i * self.dim + j;
        (self.target[idx] as usize, self.negative[idx])
    }

    #[inline]
    pub fn is_negative(&self, i: usize, j: usize) -> bool {
        self.negative[i * self.dim + j]
    }
}

/// `e_i e_j` straight from the doubling formula, recursing on halves.
pub fn basis_product_by_recursion(level: u32, i: usize, j: usize) -> (usize, bool) {
    if level == 0 {
        return (0, false);
    }
    let h = 1usize << (level - 1);
    match (i < h, j < h) {
        (true, true) => basis_product_by_recursion(level - 1, i, j),
        (true, false) => {
            let (k, s) = basis_product_by_recursion(level - 1, j - h, i);
            (k + h, s)
        }
        (false, true) => {
            let (k, s) = basis_product_by_recursion(level - 1, i - h, j);
            (k + h, s ^ (j != 0))
        }
        (false, false) => {
            let (k, s) = basis_product_by_recursion(level - 1, j - h, i - h);
            (k, !(s ^ (j - h != 0)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_signs() {
        let t = MulTable::get(2);
        // i j = k, j i = -k, i^2 = -1
        assert_eq!(t.product(1, 2), (3, false));
        assert_eq!(t.product(2, 1), (3, true));
        assert_eq!(t.product(1, 1), (0, true));
        assert_eq!(t.product(3, 3), (0, true));
    }

    #[test]
    fn tables_up_to_eight_verify() {
        for n in 0..=8 {
            assert!(MulTable::get(n).verify_against_recursion().is_ok());
        }
    }

    #[test]
    fn cap_checks() {
        assert!(check_level(8).is_ok());
        assert_eq!(
            check_level(9),
            Err(CdError::LevelTooLarge { level: 9, cap: 8 })
        );
        assert!(check_construction_level(7).is_ok());
        assert!(check_construction_level(8).is_err());
    }
}
