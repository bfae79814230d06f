use serde_json::json;

use super::pools::{c_line_split, c_orth_to, c_perp_pool, cs, el, top_pair, zero_divisors};
use super::Ctx;
use crate::algebra::{ComplexScalar, Element, MulTable};
use crate::annih::{ann, image, quotient_div, AnnReport};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::scalar::Scalar;

pub fn basis_table(ctx: &mut Ctx) -> Result<()> {
    for level in 1..=ctx.n {
        let r = MulTable::get(level).verify_against_recursion();
        ctx.expect(r.is_ok(), "basis table matches the recursion", || {
            json!({ "level": level, "pair": r.err() })
        });
    }
    let n = ctx.n;
    let d = 1usize << n;
    for _ in 0..ctx.trials {
        let (i, j) = (ctx.s.index(d), ctx.s.index(d));
        let p = Element::basis(n, i).mul(&Element::basis(n, j));
        let terms: Vec<(usize, Scalar)> = p.support().map(|(k, c)| (k, c.clone())).collect();
        let ok = terms.len() == 1 && terms[0].0 == i ^ j && terms[0].1.abs().is_one();
        ctx.expect(ok, "e_i e_j = ±e_(i xor j)", || json!({ "i": i, "j": j }));
    }
    Ok(())
}

pub fn classical(ctx: &mut Ctx) -> Result<()> {
    let e = Element::basis;
    let one = |n| Element::one(n);
    let i1 = e(1, 1);
    ctx.expect(i1.mul(&i1) == -&one(1), "i^2 = -1 in A_1", || el(&i1));
    let (i, j, k) = (e(2, 1), e(2, 2), e(2, 3));
    ctx.expect(i.mul(&j) == k, "ij = k", || el(&i.mul(&j)));
    ctx.expect(j.mul(&i) == -&k, "ji = -k", || el(&j.mul(&i)));
    ctx.expect(j.mul(&k) == i && k.mul(&i) == j, "jk = i, ki = j", || json!(null));
    for u in [&i, &j, &k] {
        ctx.expect(u.mul(u) == -&one(2), "quaternion units square to -1", || el(u));
    }
    ctx.expect(i.mul(&j).mul(&k) == -&one(2), "ijk = -1", || json!(null));
    let (a, b, c) = (e(3, 1), e(3, 2), e(3, 4));
    let l = a.mul(&b).mul(&c);
    let r = a.mul(&b.mul(&c));
    ctx.expect(l == -&r, "(e1 e2) e4 = -e1 (e2 e4) in A_3", || {
        json!({ "left": el(&l), "right": el(&r) })
    });
    for _ in 0..ctx.trials {
        let (x, y, z) = (ctx.s.element(2), ctx.s.element(2), ctx.s.element(2));
        let ok = x.mul(&y).mul(&z) == x.mul(&y.mul(&z));
        ctx.expect(ok, "A_2 is associative", || json!([el(&x), el(&y), el(&z)]));
        let (x, y) = (ctx.s.element(3), ctx.s.element(3));
        ctx.expect(x.mul(&x).mul(&y) == x.mul(&x.mul(&y)), "A_3 is alternative", || {
            json!([el(&x), el(&y)])
        });
        let ok = x.mul(&y).norm_sq() == x.norm_sq() * y.norm_sq();
        ctx.expect(ok, "A_3 norm is multiplicative", || json!([el(&x), el(&y)]));
    }
    Ok(())
}

pub fn mul_recursive(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let (a, b) = (ctx.s.element(n), ctx.s.element(n));
        ctx.expect(a.mul(&b) == a.mul_recursive(&b), "table product = doubling formula", || {
            json!([el(&a), el(&b)])
        });
    }
    Ok(())
}

pub fn conj(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let (a, b) = (ctx.s.element(n), ctx.s.element(n));
        let w = || json!([el(&a), el(&b)]);
        ctx.expect(a.mul(&b).conj() == b.conj().mul(&a.conj()), "(ab)* = b*a*", w);
        let nrm = Element::one(n).scale(&a.norm_sq());
        ctx.expect(a.mul(&a.conj()) == nrm, "aa* = |a|^2", w);
        ctx.expect(a.conj().mul(&a) == nrm, "a*a = |a|^2", w);
        ctx.expect(a.real_inner(&b) == a.dot(&b), "<a,b> = coefficient dot product", w);
        ctx.expect(a.mul(&b.conj()).re() == a.dot(&b), "<a,b> = Re(ab*)", w);
    }
    Ok(())
}

pub fn c_vs(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let (al, be, x) = (ctx.s.complex(n), ctx.s.complex(n), ctx.s.element(n));
        let ok = al.act(&be.act(&x)) == (&al * &be).act(&x);
        ctx.expect(ok, "α(βx) = (αβ)x", || json!([cs(&al), cs(&be), el(&x)]));
    }
    Ok(())
}

pub fn ortho1(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let (x, y) = (ctx.s.element(n), ctx.s.imaginary(n));
        let ok = x.dot(&x.mul(&y)).is_zero();
        ctx.expect(ok, "x ⊥ xy for imaginary y", || json!([el(&x), el(&y)]));
    }
    Ok(())
}

pub fn c_conj_linear(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let a = ctx.s.c_perp(n);
        let (x, y, al) = (ctx.s.element(n), ctx.s.element(n), ctx.s.complex(n));
        let w = || json!({ "a": el(&a), "x": el(&x), "y": el(&y), "alpha": cs(&al) });
        ctx.expect(a.mul(&al.act(&x)) == al.conj().act(&a.mul(&x)), "a(αx) = α*(ax)", w);
        let l = a.mul(&x).herm_inner(&y);
        let r = -&x.herm_inner(&a.mul(&y)).conj();
        ctx.expect(l == r, "<ax,y>_C = -<x,ay>_C*", w);
    }
    Ok(())
}

pub fn c_bi_conj(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let a = ctx.s.c_perp(n);
        let b = c_orth_to(&ctx.s.element(n), std::slice::from_ref(&a));
        let (al, be) = (ctx.s.complex(n), ctx.s.complex(n));
        let l = al.act(&a).mul(&be.act(&b));
        let r = (&al.conj() * &be.conj()).act(&a.mul(&b));
        ctx.expect(l == r, "(αa)(βb) = α*β*(ab)", || {
            json!({ "a": el(&a), "b": el(&b), "alpha": cs(&al), "beta": cs(&be) })
        });
    }
    Ok(())
}

pub fn c_bi_conj2(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let a = ctx.s.c_perp(n);
        let (al, be) = (ctx.s.complex(n), ctx.s.complex(n));
        let l = al.act(&a).mul(&be.act(&a));
        let r = (&al * &be.conj()).scale(&-a.norm_sq()).to_element();
        ctx.expect(l == r, "(αa)(βa) = -|a|^2 αβ*", || {
            json!({ "a": el(&a), "alpha": cs(&al), "beta": cs(&be) })
        });
    }
    Ok(())
}

/// Known zero-divisors plus sparse samples that happen to have one.
fn zero_divisor_samples(ctx: &mut Ctx) -> Vec<(Element, Subspace)> {
    let n = ctx.n;
    let mut out: Vec<(Element, Subspace)> = zero_divisors(n)
        .into_iter()
        .map(|z| {
            let a = ann(&z);
            (z, a)
        })
        .collect();
    for k in 0..ctx.heavy() {
        let z = ctx.s.sparse(n, 2 + k % 3);
        if z.is_zero() {
            continue;
        }
        let a = ann(&z);
        if !a.is_zero() {
            out.push((z, a));
        }
    }
    out
}

pub fn zd_c_perp(ctx: &mut Ctx) -> Result<()> {
    for (z, a) in zero_divisor_samples(ctx) {
        ctx.expect(z.in_c_perp(), "zero-divisors lie in C^⊥", || el(&z));
        let inside = a.basis().iter().all(Element::in_c_perp);
        ctx.expect(inside, "annihilators lie in C^⊥", || el(&z));
    }
    Ok(())
}

pub fn four_dim(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let bound = AnnReport::dim_bound(n).unwrap_or(0);
    let mut samples: Vec<Element> = zero_divisors(n);
    for k in 0..ctx.heavy() {
        samples.push(match k % 3 {
            0 => ctx.s.nonzero_element(n),
            1 => ctx.s.h_perp(n),
            _ => ctx.s.sparse(n, 2 + k % 4),
        });
    }
    for z in samples.iter().filter(|z| !z.is_zero()) {
        let d = ann(z).dim();
        ctx.expect(d % 4 == 0 && d <= bound, "dim Ann ≡ 0 mod 4 and ≤ 2^n - 4n + 4", || {
            json!({ "element": el(z), "dim": d })
        });
    }
    let (a, _) = top_pair(n);
    let d = ann(&a).dim();
    ctx.expect(d == bound, "the top construction attains the bound", || {
        json!({ "dim": d, "bound": bound })
    });
    Ok(())
}

pub fn ann_im(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let pool = c_perp_pool(n, &mut ctx.s, 2);
    for a in &pool {
        let an = ann(a);
        for _ in 0..2 {
            let b = ctx.s.element(n);
            let ab = a.mul(&b);
            ctx.expect(an.is_orthogonal_to(&ab), "ab ⊥ Ann(a)", || json!([el(a), el(&b)]));
        }
        let im = image(a);
        ctx.expect(im == an.orth_complement(), "image of L_a = Ann(a)^⊥", || el(a));
    }
    Ok(())
}

pub fn cancellation(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let pool = c_perp_pool(n, &mut ctx.s, 2);
    for a in &pool {
        let an = ann(a);
        let b = a.mul(&ctx.s.element(n));
        let x = quotient_div(&b, a)?;
        ctx.expect(a.mul(&x) == b, "a (b/a) = b", || json!([el(a), el(&b)]));
        ctx.expect(an.is_orthogonal_to(&x), "b/a ⊥ Ann(a)", || json!([el(a), el(&b)]));
        if let Some(y) = an.basis().first() {
            let other = &x + y;
            let differs = an.is_orthogonal_to(&other);
            ctx.expect(!differs, "other preimages are not ⊥ Ann(a)", || el(a));
        }
    }
    Ok(())
}

pub fn proj_multiply(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    // Only holds for a in C^⊥, which is the only way it gets used.
    for _ in 0..ctx.light() {
        let a = ctx.s.c_perp(n);
        let b = ctx.s.element(n);
        let (b1, b2) = c_line_split(&b, &a);
        let (ab, ba) = (a.mul(&b), b.mul(&a));
        let w = || json!({ "a": el(&a), "b": el(&b) });
        ctx.expect(ab.pi_c().to_element() == a.mul(&b1), "π_C(ab) = ab'", w);
        ctx.expect(ab.pi_c_perp() == a.mul(&b2), "π_C^⊥(ab) = ab''", w);
        ctx.expect(ba.pi_c().to_element() == b1.mul(&a), "π_C(ba) = b'a", w);
        ctx.expect(ba.pi_c_perp() == b2.mul(&a), "π_C^⊥(ba) = b''a", w);
    }
    Ok(())
}

pub fn c_proj(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let (a, b) = (ctx.s.c_perp(n), ctx.s.c_perp(n));
        let (ab, ba) = (a.mul(&b), b.mul(&a));
        let w = || json!([el(&a), el(&b)]);
        ctx.expect(ab.pi_c() == ba.pi_c().conj(), "π_C(ab) = π_C(ba)*", w);
        ctx.expect(ab.pi_c_perp() == -&ba.pi_c_perp(), "π_C^⊥(ab) = -π_C^⊥(ba)", w);
    }
    Ok(())
}

pub fn proj_multiply_cor(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for _ in 0..ctx.light() {
        let (a, al) = (ctx.s.element(n), ctx.s.complex(n));
        let alpha = al.to_element();
        let w = || json!({ "a": el(&a), "alpha": cs(&al) });
        let mid = &al * &a.pi_c();
        ctx.expect(alpha.mul(&a).pi_c() == mid, "π_C(αa) = απ_C(a)", w);
        ctx.expect(a.mul(&alpha).pi_c() == mid, "π_C(aα) = απ_C(a)", w);
    }
    Ok(())
}

pub fn c_multiply(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    // Restricted to a in C^⊥, as with proj_multiply.
    let pool = c_perp_pool(n, &mut ctx.s, 4);
    for a in &pool {
        let an = ann(a);
        let line = Subspace::span(n, std::slice::from_ref(a))?.c_span();
        let target = line.sum(&an)?;
        let mut bs = vec![ctx.s.element(n)];
        let mut inside = ComplexScalar::real(n, ctx.s.nonzero_rational()).act(a);
        for y in an.basis().iter().take(3) {
            inside = &inside + &y.scale(&ctx.s.scalar());
        }
        bs.push(inside);
        bs.push(ctx.s.complex(n).act(a));
        for b in &bs {
            let in_c = a.mul(b).pi_c_perp().is_zero();
            ctx.expect(in_c == target.contains(b), "ab ∈ C ⟺ b ∈ C·a + Ann(a)", || {
                json!({ "a": el(a), "b": el(b), "ab_in_c": in_c, "dim_target": target.dim() })
            });
        }
    }
    Ok(())
}
