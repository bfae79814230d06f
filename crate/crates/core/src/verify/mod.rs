//! Executable checks, one per in-scope result, each tagged with the label
//! of the statement it exercises.
//!
//! A check runs at an effective level (the requested `n` clamped into the
//! check's range), draws from a sampler seeded by `(seed, check id)`, and
//! collects counterexamples. A check passes exactly when it collected none.

mod algebra;
mod brackets;
mod dloc;
mod pools;
mod stable;

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::sample::Sampler;

/// Counterexamples kept per check; the total count is reported separately.
const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyResult {
    pub check_id: String,
    pub anchor: String,
    pub level: u32,
    /// Number of individual identities evaluated.
    pub trials: usize,
    pub status: Status,
    pub failures: usize,
    pub witnesses: Vec<Value>,
    /// Wall time; left out of JSON so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// State handed to a check body.
pub struct Ctx {
    pub n: u32,
    pub trials: usize,
    pub s: Sampler,
    cases: usize,
    failures: usize,
    witnesses: Vec<Value>,
}

impl Ctx {
    fn new(n: u32, trials: usize, s: Sampler) -> Self {
        Ctx {
            n,
            trials,
            s,
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    /// Record one identity; `data` is only built on failure.
    pub fn expect<F: FnOnce() -> Value>(&mut self, ok: bool, what: &str, data: F) {
        self.cases += 1;
        if ok {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses
                .push(serde_json::json!({ "identity": what, "data": data() }));
        }
    }

    /// Trial count for checks that solve one annihilator per trial; the
    /// cost of a dense nullspace grows roughly eightfold per level.
    pub fn heavy(&self) -> usize {
        let t = self.trials;
        match self.n {
            0..=4 => t,
            5 => t.div_ceil(2),
            6 => t.div_ceil(8),
            7 => t.div_ceil(64),
            _ => 1,
        }
        .max(1)
    }

    /// Trial count for checks made of products only.
    pub fn light(&self) -> usize {
        let t = self.trials;
        match self.n {
            0..=6 => t,
            7 => t.div_ceil(4),
            _ => t.div_ceil(16),
        }
        .max(1)
    }
}

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub statement: &'static str,
    /// Inclusive range of levels the check runs at.
    pub levels: (u32, u32),
    run: fn(&mut Ctx) -> Result<()>,
}

impl Check {
    pub fn effective_level(&self, n: u32) -> u32 {
        n.clamp(self.levels.0, self.levels.1)
    }
}

macro_rules! checks {
    ($( $id:literal, $anchor:literal, ($lo:literal, $hi:literal), $run:path, $st:literal; )*) => {
        &[$( Check { id: $id, anchor: $anchor, levels: ($lo, $hi), run: $run, statement: $st }, )*]
    };
}

static REGISTRY: &[Check] = checks! {
    "basis-table", "sctn:cd", (1, 8), algebra::basis_table,
        "e_i e_j = ±e_(i xor j) and the cached table matches the doubling recursion";
    "cd-classical", "sctn:cd", (3, 3), algebra::classical,
        "A_1, A_2, A_3 behave as the complex numbers, quaternions and octonions";
    "cd-mul-recursive", "sctn:cd", (1, 8), algebra::mul_recursive,
        "table multiplication agrees with the doubling formula on random elements";
    "cd-conj", "sctn:cd", (1, 8), algebra::conj,
        "(ab)* = b*a*, aa* = a*a = |a|^2, and the real inner product is Re(ab*)";
    "lem-C-vs", "lem:C-vs", (1, 8), algebra::c_vs,
        "left multiplication makes A_n a C_n-vector space: α(βx) = (αβ)x";
    "lem-ortho1", "lem:ortho1", (1, 8), algebra::ortho1,
        "x is orthogonal to xy whenever y is imaginary";
    "lem-C-conj-linear", "lem:C-conj-linear", (2, 8), algebra::c_conj_linear,
        "for a in C^⊥, a(αx) = α*(ax) and <ax,y>_C = -<x,ay>_C*";
    "lem-C-bi-conj", "lem:C-bi-conj", (3, 8), algebra::c_bi_conj,
        "for C-orthogonal a, b in C^⊥, (αa)(βb) = α*β*(ab)";
    "lem-C-bi-conj2", "lem:C-bi-conj2", (2, 8), algebra::c_bi_conj2,
        "for a in C^⊥, (αa)(βa) = -|a|^2 αβ*";
    "lem-zd-C-perp", "lem:zd-C-perp", (4, 7), algebra::zd_c_perp,
        "zero-divisors lie in C^⊥";
    "thm-4dim", "thm:4dim", (4, 7), algebra::four_dim,
        "annihilator dimensions are multiples of 4 and at most 2^n - 4n + 4";
    "lem-ann-im", "lem:ann-im", (2, 7), algebra::ann_im,
        "for a in C^⊥, every product ab is orthogonal to Ann(a)";
    "lem-cancellation", "lem:cancellation", (2, 7), algebra::cancellation,
        "b ⊥ Ann(a) has a unique preimage ax = b with x ⊥ Ann(a)";
    "lem-proj-multiply", "lem:proj-multiply", (2, 8), algebra::proj_multiply,
        "splitting b along the C-line of a splits ab and ba into their C and C^⊥ parts";
    "cor-C-proj", "cor:C-proj", (2, 8), algebra::c_proj,
        "for a, b in C^⊥, π_C(ab) = π_C(ba)* and π_C^⊥(ab) = -π_C^⊥(ba)";
    "cor-proj-multiply", "cor:proj-multiply", (1, 8), algebra::proj_multiply_cor,
        "π_C(αa) = απ_C(a) = π_C(aα)";
    "cor-C-multiply", "cor:C-multiply", (2, 7), algebra::c_multiply,
        "ab lies in C_n exactly when b lies in the C-span of a plus Ann(a)";
    "lem-convert", "lem:convert", (2, 8), brackets::convert,
        "(x,y) = (1/√2){x + i y, x - i y} and brackets fill H^⊥";
    "lem-bracket-C-action", "lem:bracket-C-action", (2, 8), brackets::c_action,
        "lifted α acts on brackets by {α*a, αb}";
    "lem-convert-norm", "lem:convert-norm", (2, 8), brackets::convert_norm,
        "|{a,b}|^2 = |a|^2 + |b|^2";
    "prop-bracket-multiply", "prop:bracket-multiply", (4, 8), brackets::multiply_orthogonal,
        "{a,b}{x,y} = √2{ax,by} when a, b are C-orthogonal to x, y";
    "lem-bracket-multiply-parallel", "lem:bracket-multiply-parallel", (2, 8), brackets::multiply_parallel,
        "{0,a}{a,0} = -{a,0}{0,a} = |a|^2 (0,i)";
    "cor-bracket-multiply-parallel", "cor:bracket-multiply-parallel", (2, 8), brackets::multiply_parallel_cor,
        "products of one-sided brackets on a common C-line";
    "thm-bracket-multiply", "thm:bracket-multiply", (2, 8), brackets::multiply,
        "{a,b}{x,y} = √2{π⊥(ax), π⊥(by)} + π_C(xa+by)~ + π_C(ay-xb)~ (0,i)";
    "rem-bracket-multiply", "rem:bracket-multiply", (2, 8), brackets::multiply_terms_orthogonal,
        "the three terms of the product formula are mutually orthogonal";
    "lem-last-multiply", "lem:last-multiply", (2, 8), brackets::last_multiply,
        "(0,i){a,b} = -{a,b}(0,i) = {b,-a}";
    "lem-bracket-inner", "lem:bracket-inner", (2, 8), brackets::inner,
        "<{a,b},{x,y}>_C = <a,x>_C* + <b,y>_C";
    "cor-bracket-inner", "cor:bracket-inner", (2, 8), brackets::inner_real,
        "<{a,b},{x,y}> = <a,x> + <b,y>";
    "eigenpair-step", "subsctn:eigenpair", (3, 7), brackets::eigenpair,
        "the λ-chain satisfies a(ab) = -λb, b(ba) = -λa and spans a 4-dimensional subalgebra";
    "lem-Zm", "lem:Zm", (4, 7), brackets::zm_lemma,
        "lifted mutually annihilating families stay mutually annihilating";
    "cor-Zm", "cor:Zm", (3, 7), brackets::zm_cor,
        "C^⊥ holds 2^(n-3) elements with pairwise zero products";
    "prop-bracket-zd", "prop:bracket-zd", (3, 7), brackets::bracket_zd,
        "{a,b}{x,y} = 0 exactly when the four vanishing conditions hold";
    "prop-ann-intersect-H-perp", "prop:ann-intersect-H-perp", (4, 7), brackets::ann_intersect_h_perp,
        "H^⊥ ∩ Ann{a,b} is the space cut out by the norm and projection equations";
    "thm-ann-bracket-bound", "thm:ann-bracket-bound", (4, 7), brackets::ann_bracket_bound,
        "dim Ann{a,b} - dim Ann a - dim Ann b is 0 or 4";
    "prop-ann-bracket-special", "prop:ann-bracket-special", (4, 7), brackets::ann_bracket_special,
        "Ann{a,0} and Ann{0,a} from Ann(a) and the C-complement of 1 and a";
    "rem-D", "rem:D", (4, 7), dloc::rem_d,
        "the D-locus conditions restated with C-orthogonality and with images";
    "lem-D-locus-vanish", "lem:D-locus-vanish", (3, 7), dloc::vanish,
        "D-locus membership is the vanishing of the projection equation";
    "lem-D-locus-independent", "lem:D-locus-independent", (4, 7), dloc::independent,
        "off the D-locus, dim(Ann{a,b} ∩ H^⊥) = dim Ann a + dim Ann b";
    "thm-ann-off-D-locus", "thm:ann-off-D-locus", (4, 7), dloc::off_dlocus,
        "off the D-locus, Ann{a,b} lies in H^⊥ with dimension dim Ann a + dim Ann b";
    "lem-frac-perp", "lem:frac-perp", (3, 7), dloc::frac_perp,
        "b/a lies in C^⊥ and is C-orthogonal to a and b";
    "thm-ann-D-locus", "thm:ann-D-locus", (4, 7), dloc::ann_dlocus,
        "on the D-locus, Ann{a,b} is the C-orthogonal sum of the three explicit parts";
    "lem-D5-1", "lem:D5-1", (4, 4), dloc::d5_1,
        "{a,0} is orthogonal to Ann{b,αa} when b is C-orthogonal to 1 and a";
    "lem-D5-2", "lem:D5-2", (4, 4), dloc::d5_2,
        "zero-divisors C-orthogonal to {a,0} and orthogonal to Ann{a,0} have the form {b,αa}";
    "prop-D5", "prop:D5", (5, 5), dloc::prop_d5,
        "{{a,0},{b,c}} is on the D-locus exactly when b ⊥_C a and c lies on the C-line of a";
    "cor-D5", "cor:D5", (5, 5), dloc::cor_d5,
        "for A_4 zero-divisors, D-locus membership is the span test with Eig2";
    "eig2-description", "sctn:D5", (4, 4), dloc::eig2_description,
        "Ann(a) = {(y,-cy)} and Eig2(a) = {(y,cy)} for Stiefel zero-divisors of A_4";
    "thm-top-half", "thm:top-half", (4, 7), stable::top_half,
        "annihilators of dimension at least 2^(n-1) only occur inside H^⊥";
    "prop-Dugger-ex", "prop:Dugger-ex", (4, 7), stable::dugger_ex,
        "Ann(i, a) = {(x, (a i) x)} has dimension 2^(n-1) - 4";
    "prop-stability", "prop:stability", (5, 7), stable::stability,
        "dim Ann(a) >= 2^n - 8n + 24 forces a one-sided bracket";
    "prop-stability2", "prop:stability2", (5, 6), stable::stability2,
        "T^c stable in the predicted range: members found are one-sided";
    "lem-top-dim-D-locus", "lem:top-dim-D-locus", (4, 7), stable::top_dim,
        "the top pair lies on the D-locus with maximal annihilators";
    "lem-top-dim-D-locus2", "lem:top-dim-D-locus2", (4, 7), stable::top_dim2,
        "Ann of the top bracket has dimension 2^(n+1) - 8n + 12";
    "prop-not-stable", "prop:not-stable", (6, 6), stable::not_stable,
        "outside the stable range a two-sided member exists";
    "thm-stable-dim-desk", "thm:stable-dim", (5, 6), stable::stable_dim,
        "probe outcome matches the predicted regime for every small c";
    "cor-two-stiefel-copies", "cor:fuck-matrices", (5, 5), stable::two_copies,
        "16-dimensional annihilators in A_5 belong to one-sided brackets of A_4 zero-divisors";
};

pub fn registry() -> &'static [Check] {
    REGISTRY
}

/// Registered check ids, in registry order.
pub fn verify_registry() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

pub fn find(id: &str) -> Option<&'static Check> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// FNV-1a, so per-check seeds do not depend on std's hasher.
fn id_hash(id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn run_check(check: &Check, n: u32, trials: usize, seed: u64) -> VerifyResult {
    let level = check.effective_level(n);
    let start = Instant::now();
    let mut ctx = Ctx::new(level, trials, Sampler::derived(seed, id_hash(check.id)));
    if let Err(e) = (check.run)(&mut ctx) {
        ctx.failures += 1;
        ctx.witnesses
            .push(serde_json::json!({ "error": e.to_string() }));
    }
    let status = if ctx.witnesses.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    VerifyResult {
        check_id: check.id.to_string(),
        anchor: check.anchor.to_string(),
        level,
        trials: ctx.cases,
        status,
        failures: ctx.failures,
        witnesses: ctx.witnesses,
        elapsed: start.elapsed(),
    }
}

/// Run every check on a small worker pool; results come back sorted by id.
pub fn run_all(n: u32, trials: usize, seed: u64) -> Vec<VerifyResult> {
    let workers = std::thread::available_parallelism()
        .map(|w| w.get())
        .unwrap_or(1)
        .min(REGISTRY.len());
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut out: Vec<VerifyResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(check) = REGISTRY.get(k) else { break };
                        done.push(run_check(check, n, trials, seed));
                    }
                    done
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("check worker panicked"))
            .collect()
    });
    out.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_anchored() {
        let ids = verify_registry();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        for c in registry() {
            assert!(c.anchor.contains(':'), "{}", c.id);
            assert!(c.levels.0 <= c.levels.1);
        }
        for id in ["prop-bracket-multiply", "thm-ann-D-locus", "thm-stable-dim-desk"] {
            assert!(find(id).is_some(), "{id}");
        }
    }

    #[test]
    fn seeds_differ_per_check() {
        assert_ne!(id_hash("lem-C-vs"), id_hash("lem-ortho1"));
        assert_eq!(id_hash(""), 0xcbf2_9ce4_8422_2325);
    }

    #[test]
    fn failing_expectation_is_reported() {
        let mut ctx = Ctx::new(3, 1, Sampler::new(0));
        ctx.expect(true, "fine", || Value::Null);
        ctx.expect(false, "broken", || serde_json::json!(1));
        assert_eq!((ctx.cases, ctx.failures, ctx.witnesses.len()), (2, 1, 1));
    }
}
