use serde_json::json;

use super::pools::{c_line_split, c_orth_to, c_perp_avoiding, c_perp_pool, el, js, left, mixed_pairs, top_pair};
use super::Ctx;
use crate::algebra::Element;
use crate::annih::{ann, eig2, image, quaternion_subalgebra, quotient_div};
use crate::bracket::BracketPair;
use crate::constructions::stiefel_zero_divisors;
use crate::dlocus::{
    a5_dlocus_test, a5_span, ann_dlocus_construct, h_perp_subspace, is_dlocus, vanishing_criterion,
    DlocusConditions,
};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::sample::Sampler;
use crate::scalar::Scalar;

/// D-locus pairs at level `m`: the top pair, random `C`-orthogonal pairs,
/// and `{a, a·x}` built on known zero-divisors.
fn dlocus_pairs(m: u32, s: &mut Sampler, count: usize) -> Vec<BracketPair> {
    let pool = c_perp_pool(m, s, 2);
    let mut out = vec![];
    if m >= 3 {
        let (a, b) = top_pair(m);
        out.push(BracketPair::new(a, b).expect("C^perp"));
    }
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count {
        attempts += 1;
        let a = if attempts % 2 == 0 {
            pool[s.index(pool.len())].clone()
        } else {
            s.c_perp(m)
        };
        let Some(x) = c_perp_avoiding(s, m, std::slice::from_ref(&a)) else {
            continue;
        };
        let b = if s.coin() { a.mul(&x) } else { x };
        if b.is_zero() {
            continue;
        }
        let p = BracketPair::new(a, b).expect("C^perp");
        if DlocusConditions::new(&p).holds() {
            out.push(p);
        }
    }
    out
}

fn nonzero(p: &BracketPair) -> bool {
    !p.a().is_zero() && !p.b().is_zero()
}

pub fn rem_d(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let k = ctx.heavy();
    for p in mixed_pairs(m, &mut ctx.s, k) {
        let c = DlocusConditions::new(&p);
        let w = || js(&p);
        ctx.expect(c.cond_a_vs_annb == c.cond_a_vs_annb_c, "a ⊥ Ann(b) ⟺ a ⊥_C Ann(b)", w);
        ctx.expect(c.cond_b_vs_anna == c.cond_b_vs_anna_c, "b ⊥ Ann(a) ⟺ b ⊥_C Ann(a)", w);
        ctx.expect(c.cond_a_vs_annb == image(p.b()).contains(p.a()), "a ⊥ Ann(b) ⟺ a = bx", w);
        ctx.expect(c.cond_b_vs_anna == image(p.a()).contains(p.b()), "b ⊥ Ann(a) ⟺ b = ay", w);
    }
    Ok(())
}

pub fn vanish(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let k = ctx.heavy();
    let mut pairs = mixed_pairs(m, &mut ctx.s, k);
    pairs.extend(dlocus_pairs(m, &mut ctx.s, 4));
    for p in pairs {
        let direct = DlocusConditions::new(&p).holds();
        ctx.expect(vanishing_criterion(&p) == direct, "D-locus ⟺ vanishing equation", || {
            js(&p)
        });
    }
    Ok(())
}

pub fn independent(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let hp = h_perp_subspace(n);
    let k = ctx.heavy();
    for p in mixed_pairs(n - 1, &mut ctx.s, k) {
        let r = is_dlocus(&p);
        if r.in_dlocus || p.is_zero() {
            continue;
        }
        let d = r.ann_bracket.intersect(&hp)?.dim();
        ctx.expect(d == r.dim_ann_a + r.dim_ann_b, "dim(Ann ∩ H^⊥) = dim Ann a + dim Ann b", || {
            json!({ "pair": js(&p), "dim": d })
        });
    }
    Ok(())
}

pub fn off_dlocus(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let k = ctx.heavy();
    for p in mixed_pairs(n - 1, &mut ctx.s, k) {
        let r = is_dlocus(&p);
        if r.in_dlocus || !nonzero(&p) {
            continue;
        }
        let inside = r.ann_bracket.basis().iter().all(Element::in_h_perp);
        ctx.expect(inside, "Ann{a,b} ⊆ H^⊥ off the D-locus", || js(&p));
        ctx.expect(
            r.dim_ann_bracket == r.dim_ann_a + r.dim_ann_b,
            "dim Ann{a,b} = dim Ann a + dim Ann b off the D-locus",
            || js(&r),
        );
    }
    Ok(())
}

pub fn frac_perp(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let k = ctx.heavy().min(12);
    for a in c_perp_pool(m, &mut ctx.s, k) {
        let Some(x) = c_perp_avoiding(&mut ctx.s, m, std::slice::from_ref(&a)) else {
            continue;
        };
        let b = a.mul(&x);
        let q = quotient_div(&b, &a)?;
        let w = || json!({ "a": el(&a), "b": el(&b) });
        ctx.expect(q.in_c_perp(), "b/a ∈ C^⊥", w);
        ctx.expect(q.c_orthogonal(&a), "b/a ⊥_C a", w);
        ctx.expect(q.c_orthogonal(&b), "b/a ⊥_C b", w);
    }
    Ok(())
}

pub fn ann_dlocus(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let k = ctx.heavy().clamp(2, 6);
    for p in dlocus_pairs(m, &mut ctx.s, k) {
        if !nonzero(&p) {
            continue;
        }
        let c = ann_dlocus_construct(&p)?;
        let computed = ann(&p.to_element());
        let w = || js(&p);
        ctx.expect(computed == c.total, "Ann{a,b} is the sum of the three parts", w);
        ctx.expect(c.parts_c_orthogonal(), "the three parts are C-orthogonal", w);
        let da = c.part_ann.dim();
        ctx.expect(computed.dim() == da + 4, "dim Ann{a,b} = dim Ann a + dim Ann b + 4", w);
    }
    Ok(())
}

pub fn d5_1(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.heavy() {
        let a = ctx.s.c_perp(3);
        let b = c_orth_to(&ctx.s.element(3), std::slice::from_ref(&a));
        let alpha = ctx.s.complex(3);
        let q = BracketPair::new(b.clone(), alpha.act(&a))?.to_element();
        let ok = ann(&q).is_orthogonal_to(&left(&a));
        ctx.expect(ok, "{a,0} ⊥ Ann{b,αa}", || json!({ "a": el(&a), "b": el(&b) }));
    }
    Ok(())
}

/// Nonzero basis vectors of `C_3^⊥` and one random element.
fn c3_perp_samples(s: &mut Sampler) -> Vec<Element> {
    let mut out: Vec<Element> = [1, 2, 3, 5, 6, 7].iter().map(|&k| Element::basis(3, k)).collect();
    out.push(s.c_perp(3));
    out
}

pub fn d5_2(ctx: &mut Ctx) -> Result<()> {
    let mut tested = 0;
    let zs = stiefel_zero_divisors();
    for a in c3_perp_samples(&mut ctx.s) {
        let la = left(&a);
        let ann_la = ann(&la);
        for z in &zs {
            if !z.c_orthogonal(&la) || !ann_la.is_orthogonal_to(z) {
                continue;
            }
            tested += 1;
            let form = if z.in_h_perp() {
                let p = BracketPair::from_element(z)?;
                let on_line = c_line_split(p.b(), &a).1.is_zero();
                on_line && p.a().c_orthogonal(&a)
            } else {
                false
            };
            ctx.expect(form, "such zero-divisors are {b, αa} with b ⊥_C a", || {
                json!({ "a": el(&a), "z": el(z) })
            });
        }
    }
    ctx.expect(tested > 0, "some zero-divisor meets the hypotheses", || json!(tested));
    Ok(())
}

pub fn prop_d5(ctx: &mut Ctx) -> Result<()> {
    let zs: Vec<BracketPair> = stiefel_zero_divisors()
        .iter()
        .filter(|z| z.in_h_perp())
        .map(BracketPair::from_element)
        .collect::<Result<_>>()?;
    let (mut yes, mut no) = (0, 0);
    for a in c3_perp_samples(&mut ctx.s) {
        let la = left(&a);
        for bc in zs.iter().step_by(3) {
            let p = BracketPair::new(la.clone(), bc.to_element())?;
            let member = DlocusConditions::new(&p).holds();
            let predicted = bc.a().c_orthogonal(&a) && c_line_split(bc.b(), &a).1.is_zero();
            if member {
                yes += 1;
            } else {
                no += 1;
            }
            ctx.expect(member == predicted, "{ {a,0}, {b,c} } ∈ D ⟺ b ⊥_C a, c ∈ C·a", || {
                json!({ "a": el(&a), "bc": js(bc) })
            });
        }
    }
    ctx.expect(yes > 0 && no > 0, "both outcomes occur", || json!({ "in": yes, "out": no }));
    Ok(())
}

pub fn cor_d5(ctx: &mut Ctx) -> Result<()> {
    let zs = stiefel_zero_divisors();
    let (mut yes, mut no, mut total) = (0, 0, 0);
    for a in zs.iter().step_by(23) {
        let span = a5_span(a)?;
        let e2 = eig2(a)?;
        let mut bs: Vec<Element> = zs.iter().step_by(2).cloned().collect();
        bs.extend(zs.iter().filter(|z| e2.contains(z)).cloned());
        bs.extend(zs.iter().filter(|z| span.contains(z)).map(|z| -z));
        for b in &bs {
            let test = a5_dlocus_test(a, b)?;
            let member = DlocusConditions::new(&BracketPair::new(a.clone(), b.clone())?).holds();
            total += 1;
            if member {
                yes += 1;
            } else {
                no += 1;
            }
            ctx.expect(test == member, "span test agrees with D-locus membership", || {
                json!({ "a": el(a), "b": el(b) })
            });
        }
    }
    ctx.expect(total >= 100 && yes > 0 && no > 0, "at least 100 pairs with both outcomes", || {
        json!({ "pairs": total, "in": yes, "out": no })
    });
    Ok(())
}

pub fn eig2_description(ctx: &mut Ctx) -> Result<()> {
    let zs = stiefel_zero_divisors();
    for a in zs.iter().step_by(5) {
        let (a1, a2) = a.halves();
        let c = a1.mul(&a2);
        let q = quaternion_subalgebra(&a1, &a2)?;
        let rest = q.orth_complement();
        let with = |sign: bool| -> Result<Subspace> {
            let vs: Vec<Element> = rest
                .basis()
                .iter()
                .map(|y| {
                    let cy = c.mul(y);
                    Element::from_halves(y, &if sign { cy } else { -&cy })
                })
                .collect();
            Subspace::span(4, &vs)
        };
        let an = ann(a);
        let e2 = eig2(a)?;
        let w = || el(a);
        ctx.expect(an == with(false)?, "Ann(a) = {(y, -cy)}", w);
        ctx.expect(e2 == with(true)?, "Eig2(a) = {(y, cy)}", w);
        let qq: Vec<Element> = q
            .basis()
            .iter()
            .flat_map(|u| {
                let z = Element::zero(3);
                [Element::from_halves(u, &z), Element::from_halves(&z, u)]
            })
            .collect();
        let qq = Subspace::span(4, &qq)?;
        let orth = qq.basis().iter().all(|v| an.is_orthogonal_to(v) && e2.is_orthogonal_to(v));
        ctx.expect(orth, "Q × Q is orthogonal to Ann(a) and Eig2(a)", w);
        let whole = an.sum(&e2)?.sum(&qq)?;
        ctx.expect(whole.dim() == 16, "Ann(a) ⊕ Eig2(a) ⊕ Q × Q = A_4", w);
        let two = Scalar::from_int(-2) * a.norm_sq();
        let eig_ok = e2.basis().iter().all(|b| a.mul(&a.mul(b)) == b.scale(&two));
        ctx.expect(eig_ok, "a(ab) = -2|a|^2 b on Eig2(a)", w);
    }
    Ok(())
}
