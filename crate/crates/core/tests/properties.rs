mod common;

use cdlab::algebra::parse_element;
use cdlab::annih::ann;
use cdlab::bracket::BracketPair;
use cdlab::{ComplexScalar, Element, Scalar, Subspace};
use common::{ann_dim_mod_p, mul_oracle, span_dim_mod_p};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2, 1i64..=2).prop_map(|(p, pd, q, qd)| Scalar::from_parts((p, pd), (q, qd)))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

/// Sparse-ish elements: most coordinates zero, so products stay readable.
fn element(n: u32) -> impl Strategy<Value = Element> {
    let d = 1usize << n;
    prop::collection::vec((0..d, scalar()), 0..=d.min(6)).prop_map(move |terms| {
        let mut e = Element::zero(n);
        for (k, c) in terms {
            e = &e + &Element::from_terms(n, &[(k, c)]);
        }
        e
    })
}

fn c_perp(n: u32) -> impl Strategy<Value = Element> {
    element(n).prop_map(|e| e.pi_c_perp())
}

fn leveled(lo: u32, hi: u32) -> impl Strategy<Value = (Element, Element)> {
    (lo..=hi).prop_flat_map(|n| (element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_field_axioms(x in scalar(), y in nonzero_scalar(), z in scalar()) {
        prop_assert_eq!(x.checked_div(&y).unwrap() * y.clone(), x.clone());
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x.clone());
        prop_assert_eq!(x.galois_conj().galois_conj(), x);
    }

    #[test]
    fn table_product_matches_recursion_and_oracle((a, b) in leveled(1, 5)) {
        let p = a.mul(&b);
        prop_assert_eq!(&p, &a.mul_recursive(&b));
        prop_assert_eq!(&p, &mul_oracle(&a, &b));
    }

    #[test]
    fn conjugation_reverses_products((a, b) in leveled(1, 5)) {
        prop_assert_eq!(a.mul(&b).conj(), b.conj().mul(&a.conj()));
        prop_assert_eq!(a.conj().conj(), a.clone());
        // a a* is real and equals |a|²
        prop_assert_eq!(a.mul(&a.conj()), Element::one(a.level()).scale(&a.norm_sq()));
    }

    #[test]
    fn norm_is_multiplicative_through_octonions((a, b) in leveled(1, 3)) {
        prop_assert_eq!(a.mul(&b).norm_sq(), a.norm_sq() * b.norm_sq());
    }

    #[test]
    fn flexible_and_power_associative((a, b) in leveled(1, 5)) {
        prop_assert_eq!(a.mul(&b).mul(&a), a.mul(&b.mul(&a)));
        prop_assert_eq!(a.mul(&a).mul(&a), a.mul(&a.mul(&a)));
    }

    #[test]
    fn hermitian_product_is_c_sesquilinear((a, b) in leveled(2, 5), s in scalar(), t in scalar()) {
        let n = a.level();
        let al = ComplexScalar::new(n, s, t);
        let lhs = al.act(&a).herm_inner(&b);
        prop_assert_eq!(lhs, &al * &a.herm_inner(&b));
        prop_assert_eq!(a.herm_inner(&a), ComplexScalar::real(n, a.norm_sq()));
    }

    #[test]
    fn inline_syntax_round_trips(a in (1u32..=5).prop_flat_map(element)) {
        prop_assert_eq!(parse_element(&a.to_string(), Some(a.level())).unwrap(), a.clone());
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Element>(&j).unwrap(), a);
    }

    #[test]
    fn bracket_round_trips_through_h_perp(a in c_perp(4), b in c_perp(4)) {
        let p = BracketPair::new(a, b).unwrap();
        let z = p.to_element();
        prop_assert!(z.in_h_perp());
        prop_assert_eq!(BracketPair::from_element(&z).unwrap(), p.clone());
        prop_assert_eq!(z.norm_sq(), p.a().norm_sq() + p.b().norm_sq());
    }

    #[test]
    fn subspaces_are_canonical(vs in prop::collection::vec(element(4), 1..5), c in nonzero_scalar()) {
        let s = Subspace::span(4, &vs).unwrap();
        let mut other: Vec<Element> = vs.iter().rev().map(|v| v.scale(&c)).collect();
        other.push(vs.iter().fold(Element::zero(4), |acc, v| &acc + v));
        prop_assert_eq!(&Subspace::span(4, &other).unwrap(), &s);
        prop_assert_eq!(s.dim(), span_dim_mod_p(&vs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn annihilator_dimension_invariants(a in (4u32..=5).prop_flat_map(element)) {
        prop_assume!(!a.is_zero());
        let n = a.level();
        let k = ann(&a);
        prop_assert_eq!(k.dim(), ann_dim_mod_p(&a));
        prop_assert_eq!(k.dim() % 4, 0);
        prop_assert!(k.dim() <= (1usize << n) + 4 - 4 * n as usize);
        for v in k.basis() {
            prop_assert!(a.mul(v).is_zero());
        }
        // scaling does not change the annihilator
        prop_assert_eq!(ann(&a.scale(&Scalar::from_parts((3, 2), (-1, 1)))), k);
    }

    #[test]
    fn zero_divisors_live_in_c_perp(a in element(4)) {
        prop_assume!(!a.is_zero());
        if !ann(&a).is_zero() {
            prop_assert!(a.in_c_perp());
        }
    }

    #[test]
    fn octonion_brackets_jump_on_c_orthogonality(a in c_perp(3), b in c_perp(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let h = a.herm_inner(&b);
        let z = BracketPair::new(a.clone(), b.clone()).unwrap().to_element();
        // octonions have no zero-divisors, so only C-orthogonality matters
        let expected = if h.is_zero() { 4 } else { 0 };
        prop_assert_eq!(ann(&z).dim(), expected);
    }
}
