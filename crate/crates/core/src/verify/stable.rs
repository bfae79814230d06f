use rand::Rng;
use serde_json::json;

use super::pools::{dugger_element, el, js, left, right, top_pair, zero_divisors};
use super::Ctx;
use crate::algebra::Element;
use crate::annih::ann;
use crate::bracket::BracketPair;
use crate::constructions::{dugger, dugger_basis, stiefel_zero_divisors, tcn_probe, top_dlocus, TcnRegime};
use crate::error::Result;
use crate::scalar::Scalar;

/// Elements of `A_n` likely to have large annihilators, plus random ones.
fn large_ann_candidates(ctx: &mut Ctx) -> Vec<Element> {
    let n = ctx.n;
    let m = n - 1;
    let mut out = zero_divisors(n);
    for b in zero_divisors(m) {
        if b.in_c_perp() {
            out.push(left(&b));
            out.push(right(&b));
        }
    }
    let (a, b) = top_pair(m);
    out.push(BracketPair::new(a, b).expect("C^perp").to_element());
    for k in 0..ctx.heavy() {
        out.push(if k % 2 == 0 {
            ctx.s.h_perp(n)
        } else {
            ctx.s.sparse(n, 2 + k % 5)
        });
    }
    out.retain(|e| !e.is_zero());
    out
}

/// `T^c_{n−1}` is defined for `0 ≤ c ≤ 2^{n−1} − 4(n−1)`.
fn admissible_c(n: u32) -> Vec<usize> {
    let m = n as usize - 1;
    let max = (1usize << m) - 4 * m;
    (0..=max).step_by(4).collect()
}

fn stable_c(n: u32, c: usize) -> bool {
    n as usize - 1 >= c / 4 + 4
}

pub fn top_half(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let half = 1usize << (n - 1);
    for e in large_ann_candidates(ctx) {
        let d = ann(&e).dim();
        if d >= half {
            ctx.expect(e.in_h_perp(), "dim Ann ≥ 2^(n-1) forces H^⊥", || {
                json!({ "element": el(&e), "dim": d })
            });
        }
    }
    let dg = dugger_element(n);
    let d = ann(&dg).dim();
    ctx.expect(d == half - 4 && !dg.in_h_perp(), "the bound is sharp outside H^⊥", || {
        json!({ "dim": d })
    });
    Ok(())
}

pub fn dugger_ex(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let m = n - 1;
    let q = 1usize << (m - 1);
    let mut units: Vec<Element> = [1, 2, q + 1, (1 << m) - 1]
        .iter()
        .map(|&k| Element::basis(m, k))
        .collect();
    let mixed = Element::from_terms(3, &[(1, Scalar::inv_sqrt2()), (2, Scalar::inv_sqrt2())]);
    units.push((3..m).fold(mixed, |e, _| e.embed()));
    for a in &units {
        let r = dugger(n, a)?;
        let expected = (1usize << (n - 1)) - 4;
        ctx.expect(r.report.dim_ann == expected, "dim Ann(i, a) = 2^(n-1) - 4", || {
            json!({ "a": el(a), "dim": r.report.dim_ann })
        });
        ctx.expect(r.report.ann == dugger_basis(a)?, "Ann(i, a) = {(x, (a i) x)}", || el(a));
    }
    Ok(())
}

pub fn stability(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let bound = (1usize << n) + 24 - 8 * n as usize;
    for e in large_ann_candidates(ctx) {
        let d = ann(&e).dim();
        if d < bound {
            continue;
        }
        let one_sided = e.in_h_perp() && {
            let p = BracketPair::from_element(&e)?;
            p.a().is_zero() || p.b().is_zero()
        };
        ctx.expect(one_sided, "dim Ann ≥ 2^n - 8n + 24 forces {b,0} or {0,b}", || {
            json!({ "element": el(&e), "dim": d })
        });
    }
    let (a, b) = top_pair(n - 1);
    let t = BracketPair::new(a, b)?.to_element();
    let d = ann(&t).dim();
    ctx.expect(d + 4 == bound, "a two-sided bracket reaches 2^n - 8n + 20", || json!(d));
    Ok(())
}

fn probe_seed(ctx: &mut Ctx) -> u64 {
    ctx.s.rng().random()
}

pub fn stability2(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for c in admissible_c(n).into_iter().filter(|&c| stable_c(n, c)) {
        let seed = probe_seed(ctx);
        let r = tcn_probe(n, c, ctx.heavy(), seed)?;
        ctx.expect(r.regime == TcnRegime::Stable && r.ok, "members found are one-sided", || {
            json!({ "c": c, "seed": seed, "witnesses": js(&r.witnesses) })
        });
    }
    Ok(())
}

pub fn not_stable(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    let cs: Vec<usize> = admissible_c(n).into_iter().filter(|&c| !stable_c(n, c)).collect();
    // The smallest unstable c is the hardest case: its threshold is highest.
    if let Some(&c) = cs.first() {
        let seed = probe_seed(ctx);
        let r = tcn_probe(n, c, ctx.heavy(), seed)?;
        let ok = r.regime == TcnRegime::Unstable && r.two_sided_members > 0;
        ctx.expect(ok, "a two-sided member exists", || {
            json!({ "c": c, "seed": seed, "members": r.members })
        });
    }
    Ok(())
}

pub fn stable_dim(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.n;
    for c in admissible_c(n) {
        let seed = probe_seed(ctx);
        let r = tcn_probe(n, c, ctx.heavy(), seed)?;
        let predicted = stable_c(n, c);
        ctx.expect(r.stable_on_tested_set == Some(predicted) && r.ok, "stable ⟺ n ≥ c/4 + 4", || {
            json!({
                "c": c,
                "seed": seed,
                "predicted_stable": predicted,
                "two_sided_members": r.two_sided_members,
            })
        });
    }
    Ok(())
}

pub fn top_dim(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let t = top_dlocus(m)?;
    let d = if m == 3 { 0 } else { (1usize << m) + 4 - 4 * m as usize };
    let w = || js(&t);
    ctx.expect(t.dim_ann_a == d && t.dim_ann_b == d, "entries have maximal annihilators", w);
    let on = crate::dlocus::DlocusConditions::new(&t.pair).holds();
    ctx.expect(on, "the top pair lies on the D-locus", w);
    Ok(())
}

pub fn top_dim2(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.n - 1;
    let t = top_dlocus(m)?;
    let expected = (1usize << (m + 1)) + 12 - 8 * m as usize;
    ctx.expect(t.dim_ann_bracket == expected, "dim Ann{a,b} = 2^(n+1) - 8n + 12", || {
        json!({ "n": m, "dim": t.dim_ann_bracket })
    });
    Ok(())
}

pub fn two_copies(ctx: &mut Ctx) -> Result<()> {
    let seed = probe_seed(ctx);
    let r = tcn_probe(5, 0, ctx.heavy(), seed)?;
    ctx.expect(r.members > 0 && r.ok, "16-dimensional members exist", || json!(r.members));
    ctx.expect(r.two_sided_members == 0, "every member is one-sided", || {
        json!({ "seed": seed, "witnesses": js(&r.witnesses) })
    });
    for z in stiefel_zero_divisors().iter().step_by(3) {
        for (side, e) in [("left", left(z)), ("right", right(z))] {
            let d = ann(&e).dim();
            ctx.expect(d == 16, "each copy has 16-dimensional annihilators", || {
                json!({ "z": el(z), "side": side, "dim": d })
            });
        }
    }
    Ok(())
}
