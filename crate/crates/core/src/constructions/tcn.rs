//! Sampling probe for the strata `T^c_n` of near-maximal annihilators.
//!
//! A probe at level `n` draws constructed and random elements of `A_n`,
//! keeps those whose annihilator has dimension at least
//! `2^n − 4n + 4 − c`, and asks whether they are all one-sided brackets
//! `{b,0}` / `{0,b}`. That is the stability question for `T^c_{n−1}`, which
//! holds exactly when `n − 1 ≥ c/4 + 4`.
//!
//! This is a sampler, not a decision procedure. It can exhibit members and
//! witnesses, and confirm stability on the tested set; it cannot show that
//! a stratum has no other members.

use serde::Serialize;

use super::top::{dugger, top_dlocus};
use super::{stiefel_zero_divisors, Ledger};
use crate::algebra::table::check_construction_level;
use crate::algebra::Element;
use crate::annih::ann;
use crate::bracket::BracketPair;
use crate::error::{CdError, Result};
use crate::sample::Sampler;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TcnRegime {
    /// `n − 1 ≥ c/4 + 4`: every member should be one-sided.
    Stable,
    /// `4 ≤ n − 1 ≤ c/4 + 3`: a two-sided member should exist.
    Unstable,
    /// `n = 4`: there is no `T^c_3`; only the top-half check applies.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSample {
    pub source: String,
    pub element: Element,
    pub dim_ann: usize,
    pub in_h_perp: bool,
    /// Both bracket entries nonzero (only meaningful inside `H^⊥`).
    pub two_sided: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TcnReport {
    pub n: u32,
    pub c: usize,
    pub threshold: usize,
    pub seed: u64,
    pub trials: usize,
    pub regime: TcnRegime,
    pub samples: usize,
    pub members: usize,
    pub one_sided_members: usize,
    pub two_sided_members: usize,
    /// First few two-sided members, with their elements.
    pub witnesses: Vec<ProbeSample>,
    /// Samples with `dim Ann ≥ 2^{n−1}` lying outside `H_n^⊥`.
    pub top_half_violations: Vec<ProbeSample>,
    /// One-sided members whose dimension disagrees with
    /// `dim Ann(b) + 2^{n−1} − 4`.
    pub one_sided_mismatches: Vec<ProbeSample>,
    /// Scaled copies whose annihilator dimension changed.
    pub scale_mismatches: Vec<ProbeSample>,
    pub stable_on_tested_set: Option<bool>,
    pub ok: bool,
    pub verified: Ledger,
}

const MAX_WITNESSES: usize = 8;

fn regime(n: u32, c: usize) -> TcnRegime {
    if n < 5 {
        TcnRegime::NotApplicable
    } else if (n as usize - 1) * 4 >= c + 16 {
        TcnRegime::Stable
    } else {
        TcnRegime::Unstable
    }
}

fn left(b: &Element) -> Element {
    BracketPair::left(b.clone()).expect("C^perp").to_element()
}

fn right(b: &Element) -> Element {
    BracketPair::right(b.clone()).expect("C^perp").to_element()
}

/// Elements of `C_m^⊥` with large annihilators: lifted signed-basis Stiefel
/// pairs, the top construction, and a Dugger element.
fn lower_pool(m: u32, sampler: &mut Sampler) -> Result<Vec<(String, Element)>> {
    let mut pool = Vec::new();
    if m >= 4 {
        let stride = if m <= 4 { 1 } else { 7 };
        for (k, s) in stiefel_zero_divisors().into_iter().enumerate().step_by(stride) {
            let mut e = s;
            for _ in 4..m {
                e = left(&e);
            }
            pool.push((format!("stiefel[{k}]"), e));
        }
        let d = dugger(m, &Element::basis(m - 1, 1))?;
        pool.push(("dugger".into(), d.element));
    }
    if m >= 3 {
        let t = top_dlocus(m)?;
        pool.push(("top.a".into(), t.pair.a().clone()));
        pool.push(("top.b".into(), t.pair.b().clone()));
    }
    for k in 0..4 {
        pool.push((format!("random-c-perp[{k}]"), sampler.c_perp(m)));
    }
    Ok(pool)
}

pub fn tcn_probe(n: u32, c: usize, trials: usize, seed: u64) -> Result<TcnReport> {
    if n < 4 {
        return Err(CdError::InvalidLevel {
            level: n,
            msg: "the probe needs n >= 4".into(),
        });
    }
    check_construction_level(n)?;
    let top = (1usize << n) + 4 - 4 * n as usize;
    if c % 4 != 0 || c + 4 > top {
        return Err(CdError::precondition(format!(
            "c must be a multiple of 4 with 0 <= c <= {}",
            top - 4
        )));
    }
    let threshold = top - c;
    let regime = regime(n, c);
    let mut sampler = Sampler::new(seed);
    let m = n - 1;

    let mut candidates: Vec<(String, Element)> = Vec::new();
    let pool = lower_pool(m, &mut sampler)?;
    for (name, b) in &pool {
        candidates.push((format!("{{{name},0}}"), left(b)));
        candidates.push((format!("{{0,{name}}}"), right(b)));
    }
    if m >= 3 {
        let t = top_dlocus(m)?;
        candidates.push(("{top.a,top.b}".into(), t.pair.to_element()));
    }
    for k in 0..pool.len().min(8) {
        let (na, a) = &pool[sampler.index(pool.len())];
        let (nb, b) = &pool[sampler.index(pool.len())];
        candidates.push((format!("{{{na},{nb}}}#{k}"), BracketPair::new(a.clone(), b.clone())?.to_element()));
    }
    candidates.push(("dugger".into(), dugger(n, &Element::basis(m, 1))?.element));
    for k in 0..trials {
        let e = match k % 3 {
            0 => sampler.nonzero_element(n),
            1 => sampler.h_perp(n),
            _ => {
                let s = sampler.sparse(n, 2 + k % 5);
                if s.is_zero() {
                    sampler.c_perp(n)
                } else {
                    s
                }
            }
        };
        candidates.push((format!("random[{k}]"), e));
    }

    let half = 1usize << (n - 1);
    let scale = Scalar::from_parts((3, 2), (-1, 1));
    let mut report = TcnReport {
        n,
        c,
        threshold,
        seed,
        trials,
        regime,
        samples: candidates.len(),
        members: 0,
        one_sided_members: 0,
        two_sided_members: 0,
        witnesses: Vec::new(),
        top_half_violations: Vec::new(),
        one_sided_mismatches: Vec::new(),
        scale_mismatches: Vec::new(),
        stable_on_tested_set: None,
        ok: false,
        verified: Ledger::default(),
    };
    for (k, (source, e)) in candidates.into_iter().enumerate() {
        let dim_ann = ann(&e).dim();
        let in_h_perp = e.in_h_perp();
        let split = if in_h_perp {
            Some(BracketPair::from_element(&e)?)
        } else {
            None
        };
        let two_sided = split
            .as_ref()
            .is_some_and(|p| !p.a().is_zero() && !p.b().is_zero());
        let sample = ProbeSample {
            source,
            element: e,
            dim_ann,
            in_h_perp,
            two_sided,
        };
        if k % 10 == 0 && ann(&sample.element.scale(&scale)).dim() != dim_ann {
            report.scale_mismatches.push(sample.clone());
        }
        if dim_ann >= half && !in_h_perp {
            report.top_half_violations.push(sample.clone());
        }
        if dim_ann < threshold {
            continue;
        }
        report.members += 1;
        match split {
            Some(p) if !two_sided => {
                report.one_sided_members += 1;
                let b = if p.a().is_zero() { p.b() } else { p.a() };
                if !b.is_zero() && ann(b).dim() + half - 4 != dim_ann {
                    report.one_sided_mismatches.push(sample);
                }
            }
            _ => {
                report.two_sided_members += 1;
                if report.witnesses.len() < MAX_WITNESSES {
                    report.witnesses.push(sample);
                }
            }
        }
    }

    let clean = report.top_half_violations.is_empty()
        && report.one_sided_mismatches.is_empty()
        && report.scale_mismatches.is_empty();
    report.stable_on_tested_set = match regime {
        TcnRegime::NotApplicable => None,
        _ => Some(report.two_sided_members == 0),
    };
    let v = &mut report.verified;
    let mut ok = true;
    ok &= v
        .check(
            report.top_half_violations.is_empty(),
            "dim Ann >= 2^(n-1) implies membership in H^perp",
        )
        .is_ok();
    ok &= v
        .check(
            report.one_sided_mismatches.is_empty(),
            "one-sided members satisfy dim Ann{b,0} = dim Ann(b) + 2^(n-1) - 4",
        )
        .is_ok();
    ok &= v
        .check(
            report.scale_mismatches.is_empty(),
            "annihilator dimension is invariant under scaling",
        )
        .is_ok();
    ok &= match regime {
        TcnRegime::Stable => v
            .check(
                report.two_sided_members == 0,
                "every member found is a one-sided bracket",
            )
            .is_ok(),
        TcnRegime::Unstable => v
            .check(
                report.two_sided_members > 0,
                "a two-sided member was exhibited",
            )
            .is_ok(),
        TcnRegime::NotApplicable => true,
    };
    report.ok = ok && clean;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        assert_eq!(regime(4, 0), TcnRegime::NotApplicable);
        assert_eq!(regime(5, 0), TcnRegime::Stable);
        assert_eq!(regime(5, 4), TcnRegime::Unstable);
        assert_eq!(regime(5, 8), TcnRegime::Unstable);
        assert_eq!(regime(6, 4), TcnRegime::Stable);
        assert_eq!(regime(6, 8), TcnRegime::Unstable);
    }

    #[test]
    fn probe_at_four() {
        let r = tcn_probe(4, 0, 20, 0).unwrap();
        assert!(r.ok, "{r:?}");
        assert!(r.members > 0);
        assert!(tcn_probe(4, 2, 5, 0).is_err());
        assert!(tcn_probe(4, 16, 5, 0).is_err());
        assert!(tcn_probe(3, 0, 5, 0).is_err());
    }
}
