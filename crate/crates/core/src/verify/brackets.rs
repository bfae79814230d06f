use serde_json::json;

use super::pools::{c_perp_avoiding, c_perp_pool, cs, el, js, left, mixed_pairs, right};
use super::Ctx;
use crate::algebra::Element;
use crate::annih::ann;
use crate::bracket::{bracket_mul, bracket_mul_terms, bracket_zd_conditions, zero_i, BracketPair};
use crate::constructions::{degenerate_subalgebra, lambda_pair, zm_family};
use crate::dlocus::{ann_special, h_perp_structure_holds, h_perp_subspace, is_dlocus, Side};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::scalar::Scalar;

/// A random pair `{a,b}` at level `m` with `a, b ∈ C_m^⊥`.
fn random_pair(ctx: &mut Ctx, m: u32) -> Result<BracketPair> {
    BracketPair::new(ctx.s.c_perp(m), ctx.s.c_perp(m))
}

/// `π̃_C(v)` as an element one level up.
fn lifted_pi_c(v: &Element) -> Element {
    v.pi_c().lift().to_element()
}

pub fn convert(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let m = n - 1;
    let i = Element::i_unit(m);
    let r = Scalar::inv_sqrt2();
    for _ in 0..ctx.light() {
        let z = ctx.s.h_perp(n);
        let (x, y) = z.halves();
        let p = BracketPair::new(&x + &i.mul(&y), &x - &i.mul(&y))?;
        let ok = p.to_element().scale(&r) == z;
        ctx.expect(ok, "(x,y) = (1/√2){x + iy, x - iy}", || el(&z));
        let back = BracketPair::from_element(&z)?.to_element();
        ctx.expect(back == z, "every element of H^⊥ is a bracket", || el(&z));
        let q = random_pair(ctx, m)?;
        ctx.expect(q.to_element().in_h_perp(), "brackets lie in H^⊥", || js(&q));
    }
    Ok(())
}

pub fn c_action(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    for _ in 0..ctx.light() {
        let p = random_pair(ctx, m)?;
        let al = ctx.s.complex(m);
        let l = al.lift().act(&p.to_element());
        let r = BracketPair::new(al.conj().act(p.a()), al.act(p.b()))?.to_element();
        ctx.expect(l == r, "α~{a,b} = {α*a, αb}", || json!({ "pair": js(&p), "alpha": cs(&al) }));
        ctx.expect(p.c_action(&al).to_element() == l, "library C-action agrees", || js(&p));
    }
    Ok(())
}

pub fn convert_norm(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    for _ in 0..ctx.light() {
        let p = random_pair(ctx, m)?;
        let ok = p.to_element().norm_sq() == p.a().norm_sq() + p.b().norm_sq();
        ctx.expect(ok, "|{a,b}|^2 = |a|^2 + |b|^2", || js(&p));
    }
    Ok(())
}

pub fn multiply_orthogonal(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    for _ in 0..ctx.light() {
        let (x, y) = (ctx.s.c_perp(m), ctx.s.c_perp(m));
        let xy = [x.clone(), y.clone()];
        let (Some(a), Some(b)) = (
            c_perp_avoiding(&mut ctx.s, m, &xy),
            c_perp_avoiding(&mut ctx.s, m, &xy),
        ) else {
            continue;
        };
        let l = BracketPair::new(a.clone(), b.clone())?
            .to_element()
            .mul(&BracketPair::new(x.clone(), y.clone())?.to_element());
        let r = BracketPair::new(a.mul(&x), b.mul(&y))?
            .to_element()
            .scale(&Scalar::sqrt2());
        ctx.expect(l == r, "{a,b}{x,y} = √2{ax,by}", || {
            json!({ "a": el(&a), "b": el(&b), "x": el(&x), "y": el(&y) })
        });
    }
    Ok(())
}

pub fn multiply_parallel(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    for _ in 0..ctx.light() {
        let a = ctx.s.c_perp(m);
        let (l, r) = (left(&a), right(&a));
        let target = zero_i(m).scale(&a.norm_sq());
        ctx.expect(r.mul(&l) == target, "{0,a}{a,0} = |a|^2 (0,i)", || el(&a));
        ctx.expect(l.mul(&r) == -&target, "{a,0}{0,a} = -|a|^2 (0,i)", || el(&a));
    }
    Ok(())
}

pub fn multiply_parallel_cor(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let zi = zero_i(m);
    for _ in 0..ctx.light() {
        let a = ctx.s.c_perp(m);
        let b = ctx.s.complex(m).act(&a);
        let t = lifted_pi_c(&a.mul(&b));
        let tc = a.mul(&b).pi_c().conj().lift().to_element();
        let w = || json!([el(&a), el(&b)]);
        ctx.expect(left(&a).mul(&left(&b)) == tc, "{a,0}{b,0} = π~(ab)*", w);
        ctx.expect(right(&a).mul(&right(&b)) == t, "{0,a}{0,b} = π~(ab)", w);
        ctx.expect(left(&a).mul(&right(&b)) == t.mul(&zi), "{a,0}{0,b} = π~(ab)(0,i)", w);
        ctx.expect(right(&a).mul(&left(&b)) == -&tc.mul(&zi), "{0,a}{b,0} = -π~(ab)*(0,i)", w);
    }
    Ok(())
}

pub fn multiply(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let k = 2 * ctx.light();
    let pairs = mixed_pairs(m, &mut ctx.s, k);
    for w in pairs.chunks(2) {
        let [p, q] = w else { continue };
        let direct = p.to_element().mul(&q.to_element());
        let formula = bracket_mul(p, q)?;
        ctx.expect(direct == formula, "three-term product formula", || {
            json!({ "p": js(p), "q": js(q) })
        });
    }
    Ok(())
}

pub fn multiply_terms_orthogonal(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let m = n - 1;
    let h = Element::h_indices(n);
    for _ in 0..ctx.light() {
        let (p, q) = (random_pair(ctx, m)?, random_pair(ctx, m)?);
        let [t0, t1, t2] = bracket_mul_terms(&p, &q)?;
        let w = || json!({ "p": js(&p), "q": js(&q) });
        let orth = t0.dot(&t1).is_zero() && t0.dot(&t2).is_zero() && t1.dot(&t2).is_zero();
        ctx.expect(orth, "terms are mutually orthogonal", w);
        ctx.expect(t0.in_h_perp(), "first term lies in H^⊥", w);
        ctx.expect(t1.support().all(|(k, _)| k == h[0] || k == h[2]), "second term lies in C", w);
        ctx.expect(
            t2.support().all(|(k, _)| k == h[1] || k == h[3]),
            "third term lies on the C-line of (0,i)",
            w,
        );
    }
    Ok(())
}

pub fn last_multiply(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let zi = zero_i(m);
    for _ in 0..ctx.light() {
        let p = random_pair(ctx, m)?;
        let e = p.to_element();
        let target = BracketPair::new(p.b().clone(), -p.a())?.to_element();
        ctx.expect(zi.mul(&e) == target, "(0,i){a,b} = {b,-a}", || js(&p));
        ctx.expect(e.mul(&zi) == -&target, "{a,b}(0,i) = -{b,-a}", || js(&p));
        ctx.expect(p.i_pair_mul().to_element() == target, "library helper agrees", || js(&p));
    }
    Ok(())
}

pub fn inner(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    for _ in 0..ctx.light() {
        let (p, q) = (random_pair(ctx, m)?, random_pair(ctx, m)?);
        let l = p.to_element().herm_inner(&q.to_element());
        let r = (&p.a().herm_inner(q.a()).conj() + &p.b().herm_inner(q.b())).lift();
        ctx.expect(l == r, "<{a,b},{x,y}>_C = <a,x>_C* + <b,y>_C", || {
            json!({ "p": js(&p), "q": js(&q) })
        });
    }
    Ok(())
}

pub fn inner_real(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    for _ in 0..ctx.light() {
        let (p, q) = (random_pair(ctx, m)?, random_pair(ctx, m)?);
        let l = p.to_element().dot(&q.to_element());
        let r = p.a().dot(q.a()) + p.b().dot(q.b());
        ctx.expect(l == r, "<{a,b},{x,y}> = <a,x> + <b,y>", || {
            json!({ "p": js(&p), "q": js(&q) })
        });
    }
    Ok(())
}

pub fn eigenpair(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let p = lambda_pair(n - 2)?;
    ctx.expect(p.n == n && p.lambda == n - 2, "λ = n - 2 at level n", || js(&p));
    let a = &p.a;
    let b = &p.b;
    let l = Scalar::from_int(i64::from(p.lambda));
    ctx.expect(a.mul(&a.mul(b)) == b.scale(&-&l), "a(ab) = -λb", || js(&p));
    ctx.expect(b.mul(&b.mul(a)) == a.scale(&-&l), "b(ba) = -λa", || js(&p));
    let sub = Subspace::span(n, &[Element::one(n), a.clone(), b.clone(), a.mul(b)])?;
    ctx.expect(sub.dim() == 4 && sub.is_closed_under_mul(), "4-dimensional subalgebra", || {
        js(&p)
    });
    Ok(())
}

pub fn zm_lemma(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let f = zm_family(m)?;
    for (i, x) in f.x.iter().enumerate() {
        for (j, x2) in f.x.iter().enumerate() {
            if i != j {
                ctx.expect(left(x).mul(&left(x2)).is_zero(), "{x_i,0}{x_j,0} = 0", || {
                    json!([i, j])
                });
            }
        }
        for (j, y) in f.y.iter().enumerate() {
            ctx.expect(left(x).mul(&right(y)).is_zero(), "{x_i,0}{0,y_j} = 0", || {
                json!([i, j])
            });
        }
    }
    Ok(())
}

pub fn zm_cor(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let f = zm_family(n)?;
    let size = 1usize << (n - 3);
    ctx.expect(f.x.len() == size, "family has 2^(n-3) members", || json!(f.x.len()));
    for (i, u) in f.x.iter().enumerate() {
        ctx.expect(u.in_c_perp(), "members lie in C^⊥", || json!(i));
        for (j, v) in f.x.iter().enumerate() {
            if i != j {
                ctx.expect(u.mul(v).is_zero(), "distinct members multiply to zero", || {
                    json!([i, j])
                });
            }
        }
    }
    let d = degenerate_subalgebra(n)?;
    ctx.expect(d.dim == 1 + size, "degenerate subalgebra of dimension 1 + 2^(n-3)", || {
        json!(d.dim)
    });
    Ok(())
}

pub fn bracket_zd(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let m = n - 1;
    let hp = h_perp_subspace(n);
    let k = ctx.heavy();
    for p in mixed_pairs(m, &mut ctx.s, k) {
        let mut qs = vec![random_pair(ctx, m)?];
        let inside = ann(&p.to_element()).intersect(&hp)?;
        let mut combo = Element::zero(n);
        for v in inside.basis() {
            qs.push(BracketPair::from_element(v)?);
            combo = &combo + &v.scale(&ctx.s.scalar());
        }
        qs.push(BracketPair::from_element(&combo)?);
        for q in &qs {
            let zero = p.to_element().mul(&q.to_element()).is_zero();
            let c = bracket_zd_conditions(&p, q)?;
            let w = || json!({ "p": js(&p), "q": js(q), "conditions": js(&c) });
            ctx.expect(c.all() == zero, "product vanishes ⟺ conditions (i)-(iv)", w);
            let redundant = !(c.by_in_c && c.xa_plus_by_zero) || c.ax_in_c;
            ctx.expect(redundant, "(ii) and (iii) imply (i)", w);
        }
    }
    Ok(())
}

pub fn ann_intersect_h_perp(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let k = ctx.heavy();
    for p in mixed_pairs(m, &mut ctx.s, k) {
        let a = ann(&p.to_element());
        let ok = h_perp_structure_holds(&p, &a)?;
        ctx.expect(ok, "H^⊥ ∩ Ann{a,b} matches its parametrization", || js(&p));
    }
    Ok(())
}

pub fn ann_bracket_bound(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let k = ctx.heavy();
    for p in mixed_pairs(m, &mut ctx.s, k) {
        let r = is_dlocus(&p);
        let diff = r.dim_ann_bracket as i64 - (r.dim_ann_a + r.dim_ann_b) as i64;
        ctx.expect(diff == 0 || diff == 4, "excess dimension is 0 or 4", || js(&r));
        ctx.expect(r.dimension_formula_holds(), "excess is 4 exactly on the D-locus", || {
            js(&r)
        });
    }
    Ok(())
}

pub fn ann_bracket_special(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let m = n - 1;
    let k = ctx.heavy().min(8);
    for a in c_perp_pool(m, &mut ctx.s, k) {
        let extra = (1usize << m) - 4;
        let da = ann(&a).dim();
        for (side, e) in [(Side::Left, left(&a)), (Side::Right, right(&a))] {
            let computed = ann(&e);
            let built = ann_special(&a, side)?;
            ctx.expect(computed == built, "Ann of a one-sided bracket", || {
                json!({ "a": el(&a), "side": side.to_string() })
            });
            ctx.expect(computed.dim() == da + extra, "dim = dim Ann(a) + 2^(n-1) - 4", || {
                json!({ "a": el(&a), "side": side.to_string(), "dim": computed.dim() })
            });
        }
    }
    Ok(())
}
