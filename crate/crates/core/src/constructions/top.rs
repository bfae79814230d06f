use serde::Serialize;

use super::Ledger;
use crate::algebra::table::check_construction_level;
use crate::algebra::Element;
use crate::annih::{ann, AnnReport};
use crate::bracket::BracketPair;
use crate::dlocus::{c_orthogonal_to_one_and, DlocusConditions};
use crate::error::{CdError, Result};
use crate::linalg::Subspace;

/// A D-locus pair `{a,b}` with `a, b ∈ C_n^⊥` whose annihilators have the
/// maximal dimension `2^n − 4n + 4`.
#[derive(Clone, Debug, Serialize)]
pub struct TopDlocus {
    pub n: u32,
    pub pair: BracketPair,
    pub dim_ann_a: usize,
    pub dim_ann_b: usize,
    pub dim_ann_bracket: usize,
    pub verified: Ledger,
}

fn top_dim(n: u32) -> usize {
    (1usize << n) + 4 - 4 * n as usize
}

/// Starts at `(e_1, e_2) ∈ A_3` and steps `a ↦ {a, 0}`, `b ↦ {b, 0}`.
///
/// The bracket annihilator is computed in `A_{n+1}`, so `n` may be at most
/// one below the construction cap.
pub fn top_dlocus(n: u32) -> Result<TopDlocus> {
    if n < 3 {
        return Err(CdError::InvalidLevel {
            level: n,
            msg: "the top construction starts at n = 3".into(),
        });
    }
    check_construction_level(n + 1)?;
    let mut a = Element::basis(3, 1);
    let mut b = Element::basis(3, 2);
    for _ in 3..n {
        a = BracketPair::left(a)?.to_element();
        b = BracketPair::left(b)?.to_element();
    }
    let pair = BracketPair::new(a, b)?;
    let cond = DlocusConditions::new(&pair);
    let (dim_ann_a, dim_ann_b) = (cond.ann_a.dim(), cond.ann_b.dim());
    let dim_ann_bracket = ann(&pair.to_element()).dim();
    let mut verified = Ledger::default();
    let d = if n == 3 { 0 } else { top_dim(n) };
    verified.check(
        dim_ann_a == d && dim_ann_b == d,
        format!("dim Ann(a) = dim Ann(b) = {d}"),
    )?;
    verified.check(cond.holds(), "{a,b} lies on the D-locus")?;
    let expected = (1usize << (n + 1)) + 12 - 8 * n as usize;
    verified.check(
        dim_ann_bracket == expected,
        format!("dim Ann{{a,b}} = 2^(n+1) - 8n + 12 = {expected}"),
    )?;
    Ok(TopDlocus {
        n,
        pair,
        dim_ann_a,
        dim_ann_b,
        dim_ann_bracket,
        verified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DuggerReport {
    pub n: u32,
    /// `(i_{n−1}, a)`
    pub element: Element,
    pub report: AnnReport,
    pub verified: Ledger,
}

/// `{(x, (a i_{n−1}) x) : x ⊥_C 1, a}`.
pub fn dugger_basis(a: &Element) -> Result<Subspace> {
    let i = Element::i_unit(a.level());
    let c = a.mul(&i);
    let vs: Vec<Element> = c_orthogonal_to_one_and(a)
        .basis()
        .iter()
        .map(|x| Element::from_halves(x, &c.mul(x)))
        .collect();
    Subspace::span(a.level() + 1, &vs)
}

/// Annihilator of `(i_{n−1}, a)` for a unit alternative `a ∈ C_{n−1}^⊥`.
pub fn dugger(n: u32, a: &Element) -> Result<DuggerReport> {
    if n < 4 {
        return Err(CdError::InvalidLevel {
            level: n,
            msg: "needs n >= 4".into(),
        });
    }
    check_construction_level(n)?;
    if a.level() + 1 != n {
        return Err(CdError::LevelMismatch {
            left: n - 1,
            right: a.level(),
        });
    }
    if !a.in_c_perp() || !a.norm_sq().is_one() || !a.is_alternative() {
        return Err(CdError::precondition(
            "expects a unit alternative element of C^perp",
        ));
    }
    let element = Element::from_halves(&Element::i_unit(n - 1), a);
    let report = AnnReport::new(&element);
    let mut verified = Ledger::default();
    verified.check(
        report.ann == dugger_basis(a)?,
        "Ann(i, a) = {(x, (a i) x) : x C-orthogonal to 1 and a}",
    )?;
    let d = (1usize << (n - 1)) - 4;
    verified.check(report.dim_ann == d, format!("dim Ann = 2^(n-1) - 4 = {d}"))?;
    verified.check(!element.in_h_perp(), "(i, a) lies outside H^perp")?;
    Ok(DuggerReport {
        n,
        element,
        report,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_examples() {
        let t = top_dlocus(3).unwrap();
        assert_eq!((t.dim_ann_a, t.dim_ann_b, t.dim_ann_bracket), (0, 0, 4));
        let t = top_dlocus(4).unwrap();
        assert_eq!((t.dim_ann_a, t.dim_ann_b, t.dim_ann_bracket), (4, 4, 12));
    }

    #[test]
    fn dugger_examples() {
        let r = dugger(4, &Element::basis(3, 1)).unwrap();
        assert_eq!(r.report.dim_ann, 4);
        let x = Element::basis(3, 2);
        let c = Element::basis(3, 1).mul(&Element::i_unit(3));
        let v = Element::from_halves(&x, &c.mul(&x));
        assert!(r.element.mul(&v).is_zero());
        assert_eq!(dugger(5, &Element::basis(4, 1)).unwrap().report.dim_ann, 12);
        assert!(dugger(4, &Element::basis(3, 0)).is_err());
        assert!(dugger(4, &Element::basis(4, 1)).is_err());
    }
}
