//! Oracles shared by the integration tests. Nothing here goes through the
//! library's multiplication table or its exact elimination.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use cdlab::{Element, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// `e_i e_j = sign · e_k`, straight from `(a,b)(c,d) = (ac − d*b, da + bc*)`.
pub fn basis_mul(n: u32, i: usize, j: usize) -> (usize, i64) {
    if n == 0 {
        return (0, 1);
    }
    let h = 1usize << (n - 1);
    // conjugation in A_{n-1} fixes e_0 and negates the rest
    let conj_sign = |k: usize| if k == 0 { 1 } else { -1 };
    match (i >= h, j >= h) {
        // (a,0)(c,0) = (ac, 0)
        (false, false) => basis_mul(n - 1, i, j),
        // (a,0)(0,d) = (0, da)
        (false, true) => {
            let (k, s) = basis_mul(n - 1, j - h, i);
            (k + h, s)
        }
        // (0,b)(c,0) = (0, bc*)
        (true, false) => {
            let (k, s) = basis_mul(n - 1, i - h, j);
            (k + h, s * conj_sign(j))
        }
        // (0,b)(0,d) = (−d*b, 0)
        (true, true) => {
            let (k, s) = basis_mul(n - 1, j - h, i - h);
            (k, -s * conj_sign(j - h))
        }
    }
}

type Table = Vec<(u32, i8)>;

fn table(n: u32) -> &'static Table {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut g = cache.lock().unwrap();
    g.entry(n).or_insert_with(|| {
        let d = 1usize << n;
        let mut t = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let (k, s) = basis_mul(n, i, j);
                t.push((k as u32, s as i8));
            }
        }
        Box::leak(Box::new(t))
    })
}

/// The Mersenne prime `2^61 − 1`; `2 = (2^31)^2` there, so `√2 ↦ 2^31`
/// is a ring map `Z[√2] → F_p`.
pub const P: u64 = (1 << 61) - 1;
const ROOT2: u64 = 1 << 31;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    assert_ne!(a, 0, "not invertible mod p");
    powmod(a, P - 2)
}

fn int_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = x % &p;
    let r = if r.is_negative() { r + p } else { r };
    r.to_u64().expect("reduced below p")
}

pub fn scalar_mod(s: &Scalar) -> u64 {
    let rat = |r: &num_rational::BigRational| mulmod(int_mod(r.numer()), inv(int_mod(r.denom())));
    (rat(s.rational_part()) + mulmod(rat(s.sqrt2_part()), ROOT2)) % P
}

/// Rank over `F_p` of the given rows.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let k = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = mulmod(*x, k);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in c..cols {
                    let sub = mulmod(f, rows[rank][j]);
                    rows[r][j] = (rows[r][j] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim Ann(a) = 2^n − rank(x ↦ ax)`, computed mod p. Since reduction can
/// only lower a rank, this bounds the exact dimension from above and
/// agrees with it unless p divides some minor.
pub fn ann_dim_mod_p(a: &Element) -> usize {
    let n = a.level();
    let d = 1usize << n;
    let t = table(n);
    let coeffs: Vec<(usize, u64)> = a
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, scalar_mod(c)))
        .collect();
    // row k of L_a^T is a·e_k
    let rows: Vec<Vec<u64>> = (0..d)
        .map(|k| {
            let mut row = vec![0u64; d];
            for &(i, c) in &coeffs {
                let (idx, s) = t[i * d + k];
                let v = if s > 0 { c } else { (P - c) % P };
                row[idx as usize] = (row[idx as usize] + v) % P;
            }
            row
        })
        .collect();
    d - rank_mod_p(rows)
}

/// Rank mod p of a set of elements.
pub fn span_dim_mod_p(vs: &[Element]) -> usize {
    let rows = vs
        .iter()
        .map(|v| v.coeffs().iter().map(scalar_mod).collect())
        .collect();
    rank_mod_p(rows)
}

/// Product through the independent table, exactly.
pub fn mul_oracle(a: &Element, b: &Element) -> Element {
    let n = a.level();
    let d = 1usize << n;
    let t = table(n);
    let mut out = vec![Scalar::zero(); d];
    for (i, x) in a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, y) in b.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (k, s) = t[i * d + j];
            let term = x.clone() * y.clone();
            let slot = &mut out[k as usize];
            *slot = if s > 0 { slot.clone() + term } else { slot.clone() - term };
        }
    }
    Element::from_coeffs(n, out).unwrap()
}

/// The four coordinates spanning `H_n`: `1, i_{n−1}, i_n, i_{n−1}i_n`.
pub fn h_coords(n: u32) -> [usize; 4] {
    let h = 1usize << (n - 1);
    let q = h >> 1;
    [0, q, h, h + q]
}

pub fn in_h_perp(e: &Element) -> bool {
    h_coords(e.level()).iter().all(|&k| e.coeff(k).is_zero())
}

/// The coordinates spanning `C_n`: `1, i_n`.
pub fn in_c_perp(e: &Element) -> bool {
    let n = e.level();
    e.coeff(0).is_zero() && e.coeff(1 << (n - 1)).is_zero()
}
