//! The D-locus: brackets `{a,b}` with `a ⊥_C b`, `a ⊥ Ann(b)` and
//! `b ⊥ Ann(a)`, whose annihilators are exactly 4 dimensions larger than
//! `Ann(a) ⊕ Ann(b)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{ComplexScalar, Element};
use crate::annih::{ann, eig2, quotient_div};
use crate::bracket::{zero_i, BracketPair};
use crate::error::{CdError, Result};
use crate::linalg::Subspace;
use crate::scalar::Scalar;

/// The three defining conditions, without any annihilator of the bracket.
#[derive(Clone, Debug, Serialize)]
pub struct DlocusConditions {
    pub cond_orth: bool,
    pub cond_a_vs_annb: bool,
    pub cond_b_vs_anna: bool,
    /// Conditions two and three restated with `C`-orthogonality.
    pub cond_a_vs_annb_c: bool,
    pub cond_b_vs_anna_c: bool,
    #[serde(skip)]
    pub ann_a: Subspace,
    #[serde(skip)]
    pub ann_b: Subspace,
}

impl DlocusConditions {
    pub fn new(p: &BracketPair) -> Self {
        let (a, b) = (p.a(), p.b());
        let ann_a = ann(a);
        let ann_b = ann(b);
        DlocusConditions {
            cond_orth: a.c_orthogonal(b),
            cond_a_vs_annb: ann_b.is_orthogonal_to(a),
            cond_b_vs_anna: ann_a.is_orthogonal_to(b),
            cond_a_vs_annb_c: ann_b.is_c_orthogonal_to(a),
            cond_b_vs_anna_c: ann_a.is_c_orthogonal_to(b),
            ann_a,
            ann_b,
        }
    }

    pub fn holds(&self) -> bool {
        self.cond_orth && self.cond_a_vs_annb && self.cond_b_vs_anna
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DlocusReport {
    pub pair: BracketPair,
    pub in_dlocus: bool,
    pub cond_orth: bool,
    pub cond_a_vs_annb: bool,
    pub cond_b_vs_anna: bool,
    pub dim_ann_a: usize,
    pub dim_ann_b: usize,
    pub dim_ann_bracket: usize,
    #[serde(skip)]
    pub conditions: DlocusConditions,
    #[serde(skip)]
    pub ann_bracket: Subspace,
}

impl DlocusReport {
    /// `dim Ann{a,b} = dim Ann a + dim Ann b + (4 on the D-locus)` for
    /// nonzero `a`, `b`; vacuous otherwise.
    pub fn dimension_formula_holds(&self) -> bool {
        if self.pair.a().is_zero() || self.pair.b().is_zero() {
            return true;
        }
        let extra = if self.in_dlocus { 4 } else { 0 };
        self.dim_ann_bracket == self.dim_ann_a + self.dim_ann_b + extra
    }
}

pub fn is_dlocus(p: &BracketPair) -> DlocusReport {
    let conditions = DlocusConditions::new(p);
    let ann_bracket = ann(&p.to_element());
    DlocusReport {
        pair: p.clone(),
        in_dlocus: conditions.holds(),
        cond_orth: conditions.cond_orth,
        cond_a_vs_annb: conditions.cond_a_vs_annb,
        cond_b_vs_anna: conditions.cond_b_vs_anna,
        dim_ann_a: conditions.ann_a.dim(),
        dim_ann_b: conditions.ann_b.dim(),
        dim_ann_bracket: ann_bracket.dim(),
        conditions,
        ann_bracket,
    }
}

/// Membership through the vanishing of
/// `(β* − α)π_C(ab) + π_C(ay − xb)`, evaluated on generators of the
/// independent variables `α, β ∈ C_n`, `x ∈ Ann a`, `y ∈ Ann b`.
pub fn vanishing_criterion(p: &BracketPair) -> bool {
    let (a, b) = (p.a(), p.b());
    let n = p.level();
    let pab = a.mul(b).pi_c();
    let one = ComplexScalar::one(n);
    let i = ComplexScalar::i(n);
    for alpha in [&one, &i] {
        if !(&(&ComplexScalar::zero(n) - alpha) * &pab).is_zero() {
            return false;
        }
    }
    for beta in [&one, &i] {
        if !(&beta.conj() * &pab).is_zero() {
            return false;
        }
    }
    let xs_ok = ann(a).basis().iter().all(|x| x.mul(b).pi_c().is_zero());
    let ys_ok = ann(b).basis().iter().all(|y| a.mul(y).pi_c().is_zero());
    xs_ok && ys_ok
}

/// Decompose `u = αa + x` with `x ⊥ span_C{a}`; `a` must be nonzero.
fn split_along(u: &Element, a: &Element) -> (ComplexScalar, Element) {
    let n = a.level();
    let ia = Element::i_unit(n).mul(a);
    let na = a.norm_sq();
    let s = u.dot(a).checked_div(&na).expect("nonzero norm");
    let t = u.dot(&ia).checked_div(&na).expect("nonzero norm");
    let alpha = ComplexScalar::new(n, s, t);
    let x = u - &alpha.act(a);
    (alpha, x)
}

/// Every basis vector of `Ann{a,b} ∩ H^⊥` has the form
/// `{αa + x, βb + y}` with `x ∈ Ann a`, `y ∈ Ann b` and
/// `|a|²α + |b|²β* = 0`. Requires nonzero `a` and `b`.
pub fn h_perp_structure_holds(p: &BracketPair, ann_bracket: &Subspace) -> Result<bool> {
    let (a, b) = (p.a(), p.b());
    if a.is_zero() || b.is_zero() {
        return Err(CdError::precondition("both bracket entries must be nonzero"));
    }
    let h_perp = h_perp_subspace(p.level() + 1);
    let meet = ann_bracket.intersect(&h_perp)?;
    let ann_a = ann(a);
    let ann_b = ann(b);
    for z in meet.basis() {
        let q = BracketPair::from_element(z)?;
        let (alpha, x) = split_along(q.a(), a);
        let (beta, y) = split_along(q.b(), b);
        if !ann_a.contains(&x) || !ann_b.contains(&y) {
            return Ok(false);
        }
        let lhs = &alpha.scale(&a.norm_sq()) + &beta.conj().scale(&b.norm_sq());
        if !lhs.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H_n^⊥` as a coordinate subspace.
pub fn h_perp_subspace(level: u32) -> Subspace {
    let skip = Element::h_indices(level);
    let vs: Vec<Element> = (0..1usize << level)
        .filter(|k| !skip.contains(k))
        .map(|k| Element::basis(level, k))
        .collect();
    Subspace::span(level, &vs).expect("same level")
}

/// The three `C`-orthogonal summands of `Ann{a,b}` on the D-locus.
#[derive(Clone, Debug, Serialize)]
pub struct DlocusAnnihilator {
    pub pair: BracketPair,
    /// `{x, y}` with `x ∈ Ann a`, `y ∈ Ann b`.
    pub part_ann: Subspace,
    /// `C`-span of `{|b|²a, −|a|²b}`.
    pub part_norms: Subspace,
    /// `C`-span of `{b/a, −a/b} + √2(0, i_n)`.
    pub part_quotients: Subspace,
    pub total: Subspace,
}

impl DlocusAnnihilator {
    pub fn parts_c_orthogonal(&self) -> bool {
        self.part_ann.is_c_orthogonal_to_subspace(&self.part_norms)
            && self.part_ann.is_c_orthogonal_to_subspace(&self.part_quotients)
            && self.part_norms.is_c_orthogonal_to_subspace(&self.part_quotients)
    }

    /// The generator `{b/a, −a/b} + √2(0, i_n)` of the third summand.
    pub fn quotient_generator(p: &BracketPair) -> Result<Element> {
        let (a, b) = (p.a(), p.b());
        let q = BracketPair::new(quotient_div(b, a)?, -&quotient_div(a, b)?)?;
        Ok(&q.to_element() + &zero_i(p.level()).scale(&Scalar::sqrt2()))
    }
}

fn brackets_of(level: u32, vs: &[Element], left: bool) -> Result<Vec<Element>> {
    vs.iter()
        .map(|v| {
            let p = if left {
                BracketPair::left(v.clone())?
            } else {
                BracketPair::right(v.clone())?
            };
            debug_assert_eq!(p.level(), level);
            Ok(p.to_element())
        })
        .collect()
}

/// Build `Ann{a,b}` for `{a,b}` on the D-locus with `a, b ≠ 0`.
pub fn ann_dlocus_construct(p: &BracketPair) -> Result<DlocusAnnihilator> {
    let (a, b) = (p.a(), p.b());
    if a.is_zero() || b.is_zero() {
        return Err(CdError::precondition("both bracket entries must be nonzero"));
    }
    let cond = DlocusConditions::new(p);
    if !cond.holds() {
        return Err(CdError::precondition("pair is not on the D-locus"));
    }
    let n = p.level();
    let up = n + 1;
    let mut vs = brackets_of(n, cond.ann_a.basis(), true)?;
    vs.extend(brackets_of(n, cond.ann_b.basis(), false)?);
    let part_ann = Subspace::span(up, &vs)?;

    let w = BracketPair::new(a.scale(&b.norm_sq()), -&b.scale(&a.norm_sq()))?.to_element();
    let part_norms = Subspace::span(up, &[w])?.c_span();

    let v = DlocusAnnihilator::quotient_generator(p)?;
    let part_quotients = Subspace::span(up, &[v])?.c_span();

    let total = part_ann.sum(&part_norms)?.sum(&part_quotients)?;
    Ok(DlocusAnnihilator {
        pair: p.clone(),
        part_ann,
        part_norms,
        part_quotients,
        total,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = CdError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(CdError::parse(0, format!("unknown side '{s}'"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Elements `C`-orthogonal to both `1` and `a`.
pub fn c_orthogonal_to_one_and(a: &Element) -> Subspace {
    let n = a.level();
    let i = Element::i_unit(n);
    let s = Subspace::span(n, &[Element::one(n), i.clone(), a.clone(), i.mul(a)])
        .expect("same level");
    s.orth_complement()
}

/// `Ann{a,0}` (left) or `Ann{0,a}` (right) for nonzero `a ∈ C_{n−1}^⊥`,
/// built from `Ann(a)` and the elements `C`-orthogonal to `1` and `a`.
pub fn ann_special(a: &Element, side: Side) -> Result<Subspace> {
    if a.is_zero() {
        return Err(CdError::precondition("element must be nonzero"));
    }
    if a.level() < 3 {
        return Err(CdError::InvalidLevel {
            level: a.level() + 1,
            msg: "needs n >= 4".into(),
        });
    }
    if !a.in_c_perp() {
        return Err(CdError::precondition(
            "element must lie in the orthogonal complement of C",
        ));
    }
    let n = a.level();
    let ann_a = ann(a);
    let others = c_orthogonal_to_one_and(a);
    let (xs, ys) = match side {
        Side::Left => (ann_a.basis(), others.basis()),
        Side::Right => (others.basis(), ann_a.basis()),
    };
    let mut vs = brackets_of(n, xs, true)?;
    vs.extend(brackets_of(n, ys, false)?);
    Subspace::span(n + 1, &vs)
}

/// Is `b ∈ span{(a1, −a2), (a2, a1)} + Eig₂(a)` for zero-divisors `a, b`
/// of `A_4`.
pub fn a5_dlocus_test(a: &Element, b: &Element) -> Result<bool> {
    a.same_level(b)?;
    if a.level() != 4 {
        return Err(CdError::InvalidLevel {
            level: a.level(),
            msg: "expects elements of A_4".into(),
        });
    }
    for (name, v) in [("first", a), ("second", b)] {
        if v.is_zero() || ann(v).dim() != 4 {
            return Err(CdError::precondition(format!(
                "{name} element is not a zero-divisor"
            )));
        }
    }
    Ok(a5_span(a)?.contains(b))
}

/// `span{(a1, −a2), (a2, a1)} + Eig₂(a)`.
pub fn a5_span(a: &Element) -> Result<Subspace> {
    let (a1, a2) = a.halves();
    let s = Subspace::span(
        a.level(),
        &[Element::from_halves(&a1, &-&a2), Element::from_halves(&a2, &a1)],
    )?;
    s.sum(&eig2(a)?)
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
    fn is_dlocus_examples() {
        let r = is_dlocus(&pair(e(3, 1), e(3, 2)));
        assert!(r.in_dlocus);
        assert_eq!(r.dim_ann_bracket, 4);
        assert!(r.dimension_formula_holds());

        let r = is_dlocus(&pair(e(3, 1), e(3, 1)));
        assert!(!r.in_dlocus && !r.cond_orth);
        assert_eq!(r.dim_ann_bracket, 0);

        let r = is_dlocus(&BracketPair::left(e(3, 1)).unwrap());
        assert!(!r.in_dlocus && !r.cond_a_vs_annb);
    }

    #[test]
    fn construction_examples() {
        let p = pair(e(3, 1), e(3, 2));
        let c = ann_dlocus_construct(&p).unwrap();
        assert_eq!(c.total.dim(), 4);
        assert_eq!(c.total, ann(&p.to_element()));
        assert!(c.parts_c_orthogonal());
        let g = DlocusAnnihilator::quotient_generator(&p).unwrap();
        assert!(p.to_element().mul(&g).is_zero());
        assert!(ann_dlocus_construct(&pair(e(3, 1), e(3, 1))).is_err());
    }

    #[test]
    fn special_examples() {
        let s = ann_special(&e(3, 1), Side::Left).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s, ann(&BracketPair::left(e(3, 1)).unwrap().to_element()));
        let r = ann_special(&e(3, 1), Side::Right).unwrap();
        assert_eq!(r, ann(&BracketPair::right(e(3, 1)).unwrap().to_element()));
        assert!(ann_special(&e(3, 0), Side::Left).is_err());
        assert!(ann_special(&e(2, 1), Side::Left).is_err());
    }

    #[test]
    fn a5_examples() {
        let a = Element::from_halves(&e(3, 1), &e(3, 2));
        let b = Element::from_halves(&e(3, 4), &e(3, 3).mul(&e(3, 4)));
        assert!(a5_dlocus_test(&a, &b).unwrap());
        assert!(is_dlocus(&pair(a.clone(), b)).in_dlocus);
        let b = Element::from_halves(&e(3, 1), &-&e(3, 2));
        assert!(a5_dlocus_test(&a, &b).unwrap());
        assert!(is_dlocus(&pair(a.clone(), b)).in_dlocus);
        assert!(!a5_dlocus_test(&a, &a).unwrap());
        assert!(!is_dlocus(&pair(a.clone(), a.clone())).in_dlocus);
        assert!(a5_dlocus_test(&a, &e(4, 1)).is_err());
    }

    #[test]
    fn random_pairs_follow_the_dichotomy() {
        let mut s = Sampler::new(5);
        for _ in 0..10 {
            let p = pair(s.c_perp(3), s.c_perp(3));
            let r = is_dlocus(&p);
            assert!(r.dimension_formula_holds());
            assert_eq!(r.in_dlocus, vanishing_criterion(&p));
            assert!(h_perp_structure_holds(&p, &r.ann_bracket).unwrap());
        }
    }
}
