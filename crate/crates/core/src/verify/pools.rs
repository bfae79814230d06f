//! Shared sample pools for the checks.

use serde_json::{json, Value};

use crate::algebra::{ComplexScalar, Element};
use crate::bracket::BracketPair;
use crate::constructions::stiefel_zero_divisors;
use crate::linalg::Subspace;
use crate::sample::Sampler;

pub fn js<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

pub fn el(e: &Element) -> Value {
    js(e)
}

pub fn cs(c: &ComplexScalar) -> Value {
    json!({ "re": js(c.re()), "im": js(c.im()) })
}

pub fn left(b: &Element) -> Element {
    BracketPair::left(b.clone())
        .expect("element of C^perp")
        .to_element()
}

pub fn right(b: &Element) -> Element {
    BracketPair::right(b.clone())
        .expect("element of C^perp")
        .to_element()
}

/// `e_1, e_2 ∈ A_3` lifted to level `m` by `x ↦ {x,0}`.
pub fn top_pair(m: u32) -> (Element, Element) {
    let mut a = Element::basis(3, 1);
    let mut b = Element::basis(3, 2);
    for _ in 3..m {
        a = left(&a);
        b = left(&b);
    }
    (a, b)
}

/// `(i_{m−1}, e_1)`.
pub fn dugger_element(m: u32) -> Element {
    Element::from_halves(&Element::i_unit(m - 1), &Element::basis(m - 1, 1))
}

/// Stiefel zero-divisors of `A_4` lifted to level `m ≥ 4`, every `stride`-th.
pub fn stiefel_lifted(m: u32, stride: usize) -> Vec<Element> {
    stiefel_zero_divisors()
        .into_iter()
        .step_by(stride)
        .map(|mut e| {
            for k in 4..m {
                e = if k % 2 == 0 { left(&e) } else { right(&e) };
            }
            e
        })
        .collect()
}

/// Known zero-divisors of `A_m` (empty below level 4).
pub fn zero_divisors(m: u32) -> Vec<Element> {
    if m < 4 {
        return Vec::new();
    }
    let stride = if m == 4 { 11 } else { 29 };
    let mut out = stiefel_lifted(m, stride);
    if m >= 5 {
        let (a, b) = top_pair(m);
        out.push(a);
        out.push(b);
    }
    out.push(dugger_element(m));
    out
}

/// Known zero-divisors followed by random elements of `C^⊥`.
pub fn c_perp_pool(m: u32, s: &mut Sampler, random: usize) -> Vec<Element> {
    let mut out = zero_divisors(m);
    out.retain(Element::in_c_perp);
    for _ in 0..random {
        out.push(s.c_perp(m));
    }
    out
}

/// The real span of `C·v` for each `v`, together with `1` and `i_n`.
pub fn c_span_with_c(level: u32, vs: &[Element]) -> Subspace {
    let mut all = vec![Element::one(level)];
    all.extend(vs.iter().cloned());
    Subspace::span(level, &all).expect("same level").c_span()
}

/// Remove from `v` its component along `C` and the `C`-lines of `vs`.
pub fn c_orth_to(v: &Element, vs: &[Element]) -> Element {
    let s = c_span_with_c(v.level(), vs);
    v - &s.project(v)
}

/// `(b', b'')`: projections of `b` onto the `C`-line of `a` and its
/// `C`-orthogonal complement.
pub fn c_line_split(b: &Element, a: &Element) -> (Element, Element) {
    let s = Subspace::span(a.level(), &[a.clone()])
        .expect("same level")
        .c_span();
    let p = s.project(b);
    let rest = b - &p;
    (p, rest)
}

/// A nonzero random element of `C^⊥` that is `C`-orthogonal to all of `vs`.
pub fn c_perp_avoiding(s: &mut Sampler, level: u32, vs: &[Element]) -> Option<Element> {
    for _ in 0..8 {
        let v = c_orth_to(&s.element(level), vs);
        if !v.is_zero() {
            return Some(v);
        }
    }
    None
}

/// Random pairs at level `m` mixing known zero-divisors, random elements,
/// `C`-orthogonalized partners and `a·x`-type partners.
pub fn mixed_pairs(m: u32, s: &mut Sampler, count: usize) -> Vec<BracketPair> {
    let pool = c_perp_pool(m, s, 4);
    let mut out = Vec::with_capacity(count + 1);
    if m >= 3 {
        let (a, b) = top_pair(m);
        out.push(BracketPair::new(a, b).expect("C^perp"));
    }
    while out.len() < count {
        let a = if s.coin() {
            pool[s.index(pool.len())].clone()
        } else {
            s.c_perp(m)
        };
        let b = match s.index(4) {
            0 => pool[s.index(pool.len())].clone(),
            1 => s.c_perp(m),
            2 => c_orth_to(&pool[s.index(pool.len())], std::slice::from_ref(&a)),
            _ => match c_perp_avoiding(s, m, std::slice::from_ref(&a)) {
                Some(x) => a.mul(&x),
                None => s.c_perp(m),
            },
        };
        if a.is_zero() || b.is_zero() || !b.in_c_perp() {
            continue;
        }
        out.push(BracketPair::new(a, b).expect("C^perp"));
    }
    out
}
