//! Inductive constructions: mutually annihilating families, degenerate
//! subalgebras, λ-chains, maximal-annihilator D-locus pairs, Dugger
//! elements, and the `T^c_n` stability probe.
//!
//! Every construction checks its defining identities exactly as it is
//! built; a failed identity is returned as [`CdError::Identity`].

mod tcn;
mod top;

pub use tcn::{tcn_probe, ProbeSample, TcnReport, TcnRegime};
pub use top::{dugger, dugger_basis, top_dlocus, DuggerReport, TopDlocus};

use serde::Serialize;

use crate::algebra::table::check_construction_level;
use crate::algebra::Element;
use crate::bracket::BracketPair;
use crate::error::{CdError, Result};
use crate::linalg::Subspace;
use crate::scalar::Scalar;

/// Records identities as they are checked, failing on the first false one.
#[derive(Default, Debug, Clone, Serialize)]
pub struct Ledger(Vec<String>);

impl Ledger {
    pub fn check(&mut self, ok: bool, what: impl Into<String>) -> Result<()> {
        let what = what.into();
        if !ok {
            return Err(CdError::Identity(what));
        }
        self.0.push(what);
        Ok(())
    }

    pub fn entries(&self) -> &[String] {
        &self.0
    }
}

/// Two families in `C_n^⊥` of size `2^{n−3}` with `x_i x_j = 0 = y_i y_j`
/// for `i ≠ j` and every `x_i` `C`-orthogonal to every `y_j`.
#[derive(Clone, Debug, Serialize)]
pub struct ZmFamily {
    pub n: u32,
    pub x: Vec<Element>,
    pub y: Vec<Element>,
    pub verified: Ledger,
}

fn zm_step(x: &[Element], y: &[Element]) -> Result<(Vec<Element>, Vec<Element>)> {
    let lift = |v: &Element, left: bool| -> Result<Element> {
        let p = if left {
            BracketPair::left(v.clone())?
        } else {
            BracketPair::right(v.clone())?
        };
        Ok(p.to_element())
    };
    let mut nx = Vec::with_capacity(2 * x.len());
    let mut ny = Vec::with_capacity(2 * y.len());
    for v in x {
        nx.push(lift(v, true)?);
    }
    for v in y {
        nx.push(lift(v, false)?);
    }
    for v in y {
        ny.push(lift(v, true)?);
    }
    for v in x {
        ny.push(lift(v, false)?);
    }
    Ok((nx, ny))
}

fn mutually_annihilating(vs: &[Element]) -> bool {
    vs.iter().enumerate().all(|(i, u)| {
        vs.iter()
            .enumerate()
            .all(|(j, v)| i == j || u.mul(v).is_zero())
    })
}

pub fn zm_family(n: u32) -> Result<ZmFamily> {
    if n < 3 {
        return Err(CdError::InvalidLevel {
            level: n,
            msg: "families start at n = 3".into(),
        });
    }
    check_construction_level(n)?;
    let mut x = vec![Element::basis(3, 1)];
    let mut y = vec![Element::basis(3, 2)];
    for _ in 3..n {
        (x, y) = zm_step(&x, &y)?;
    }
    let mut verified = Ledger::default();
    let size = 1usize << (n - 3);
    verified.check(x.len() == size && y.len() == size, "both families have 2^(n-3) members")?;
    verified.check(
        x.iter().chain(&y).all(Element::in_c_perp),
        "all members lie in C^perp",
    )?;
    verified.check(mutually_annihilating(&x), "x_i x_j = 0 for i != j")?;
    verified.check(mutually_annihilating(&y), "y_i y_j = 0 for i != j")?;
    verified.check(
        x.iter().all(|u| y.iter().all(|v| u.c_orthogonal(v))),
        "every x_i is C-orthogonal to every y_j",
    )?;
    Ok(ZmFamily { n, x, y, verified })
}

/// `span{1} ∪ X` for the first family: a subalgebra of dimension
/// `1 + 2^{n−3}` in which orthogonal imaginaries multiply to zero.
#[derive(Clone, Debug, Serialize)]
pub struct DegenerateSubalgebra {
    pub n: u32,
    pub dim: usize,
    pub span: Subspace,
    pub verified: Ledger,
}

pub fn degenerate_subalgebra(n: u32) -> Result<DegenerateSubalgebra> {
    let fam = zm_family(n)?;
    let mut vs = vec![Element::one(n)];
    vs.extend(fam.x.iter().cloned());
    let span = Subspace::span(n, &vs)?;
    let mut verified = Ledger::default();
    verified.check(span.dim() == 1 + (1usize << (n - 3)), "dimension is 1 + 2^(n-3)")?;
    verified.check(span.is_closed_under_mul(), "closed under multiplication")?;
    let xs = &fam.x;
    verified.check(
        xs.iter().enumerate().all(|(i, u)| {
            xs.iter()
                .enumerate()
                .all(|(j, v)| i == j || (u.dot(v).is_zero() && u.mul(v).is_zero()))
        }),
        "distinct generators are orthogonal and multiply to zero",
    )?;
    verified.check(
        xs.iter().all(|u| u.mul(u) == Element::one(n).scale(&-u.norm_sq())),
        "each generator squares to minus its norm",
    )?;
    Ok(DegenerateSubalgebra {
        n,
        dim: span.dim(),
        span,
        verified,
    })
}

/// Unit `a ⊥_C b` in `C_n^⊥` with `a·ab = −λb`, `b·ba = −λa`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaPair {
    pub n: u32,
    pub lambda: u32,
    pub a: Element,
    pub b: Element,
    pub verified: Ledger,
}

impl LambdaPair {
    /// The pair at the next level: `(1/√2){a,b}` and `(1/√2){b,−a}`.
    pub fn step(&self) -> Result<LambdaPair> {
        let r = Scalar::inv_sqrt2();
        let a = BracketPair::new(self.a.clone(), self.b.clone())?
            .to_element()
            .scale(&r);
        let b = BracketPair::new(self.b.clone(), -&self.a)?
            .to_element()
            .scale(&r);
        LambdaPair::verified(self.n + 1, self.lambda + 1, a, b)
    }

    fn verified(n: u32, lambda: u32, a: Element, b: Element) -> Result<LambdaPair> {
        let mut v = Ledger::default();
        let l = Scalar::from_int(lambda.into());
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        let one = Element::one(n);
        v.check(a.norm_sq().is_one() && b.norm_sq().is_one(), "|a| = |b| = 1")?;
        v.check(a.in_c_perp() && b.in_c_perp(), "a, b lie in C^perp")?;
        v.check(a.c_orthogonal(&b), "a and b are C-orthogonal")?;
        v.check(a.mul(&ab) == b.scale(&-&l), "a(ab) = -lambda b")?;
        v.check(b.mul(&ba) == a.scale(&-&l), "b(ba) = -lambda a")?;
        v.check(a.mul(&a) == -&one && b.mul(&b) == -&one, "a^2 = b^2 = -1")?;
        v.check(ab == -&ba, "ab = -ba")?;
        v.check(ab.mul(&ab) == one.scale(&-&l), "(ab)^2 = -lambda")?;
        v.check(b.mul(&ab) == a.scale(&l), "b(ab) = lambda a")?;
        v.check(ab.mul(&a) == b.scale(&l), "(ab)a = lambda b")?;
        v.check(
            Subspace::span(n, &[one, a.clone(), b.clone(), ab])?.is_closed_under_mul(),
            "span{1, a, b, ab} is a 4-dimensional subalgebra",
        )?;
        Ok(LambdaPair {
            n,
            lambda,
            a,
            b,
            verified: v,
        })
    }
}

/// The chain started at `e_1, e_2 ∈ A_3` (λ = 1), stepped to `λ = r` at
/// level `r + 2`.
pub fn lambda_chain(r: u32) -> Result<Vec<LambdaPair>> {
    if r == 0 {
        return Err(CdError::precondition("lambda must be positive"));
    }
    check_construction_level(r + 2)?;
    let mut chain = vec![LambdaPair::verified(
        3,
        1,
        Element::basis(3, 1),
        Element::basis(3, 2),
    )?];
    for _ in 1..r {
        let next = chain.last().expect("nonempty").step()?;
        chain.push(next);
    }
    Ok(chain)
}

pub fn lambda_pair(r: u32) -> Result<LambdaPair> {
    Ok(lambda_chain(r)?.pop().expect("nonempty chain"))
}

/// Signed basis Stiefel pairs `(±e_i, ±e_j) ∈ A_4` with `i ≠ j` in
/// `1..=7`: 168 zero-divisors of `A_4`, in a fixed order.
pub fn stiefel_zero_divisors() -> Vec<Element> {
    let mut out = Vec::with_capacity(168);
    for i in 1..8 {
        for j in 1..8 {
            if i == j {
                continue;
            }
            for si in [1i64, -1] {
                for sj in [1i64, -1] {
                    out.push(Element::from_terms(
                        4,
                        &[(i, Scalar::from_int(si)), (8 + j, Scalar::from_int(sj))],
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annih::ann;

    fn ann_dim_is(a: &Element, d: usize) -> bool {
        ann(a).dim() == d
    }

    #[test]
    fn zm_sizes() {
        let f = zm_family(3).unwrap();
        assert_eq!((f.x.len(), f.y.len()), (1, 1));
        let f = zm_family(5).unwrap();
        assert_eq!(f.x.len(), 4);
        assert_eq!(zm_family(6).unwrap().y.len(), 8);
        assert!(zm_family(2).is_err());
        assert!(zm_family(9).is_err());
    }

    #[test]
    fn degenerate_dims() {
        assert_eq!(degenerate_subalgebra(4).unwrap().dim, 3);
        assert_eq!(degenerate_subalgebra(6).unwrap().dim, 9);
    }

    #[test]
    fn lambda_examples() {
        let p = lambda_pair(1).unwrap();
        assert_eq!(p.a, Element::basis(3, 1));
        let p = lambda_pair(2).unwrap();
        assert_eq!((p.n, p.lambda), (4, 2));
        let p = lambda_pair(4).unwrap();
        assert_eq!((p.n, p.lambda), (6, 4));
        assert!(lambda_pair(0).is_err());
    }

    #[test]
    fn stiefel_elements_are_zero_divisors() {
        let zs = stiefel_zero_divisors();
        assert_eq!(zs.len(), 168);
        for z in zs.iter().step_by(7) {
            assert!(ann_dim_is(z, 4));
        }
    }
}
