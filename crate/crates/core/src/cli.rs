//! Command-line front end.
//!
//! Every command builds a JSON value (the stable machine format) and a
//! short text rendering. Exit codes: 0 ok, 1 a check failed, 2 usage or
//! parse error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{self, parse_element, Element};
use crate::annih::AnnReport;
use crate::bracket::{bracket_mul, bracket_mul_terms, BracketPair};
use crate::constructions::{
    degenerate_subalgebra, dugger, lambda_pair, tcn_probe, top_dlocus, zm_family, Ledger,
};
use crate::dlocus::{ann_dlocus_construct, is_dlocus};
use crate::error::CdError;
use crate::verify::{self, VerifyResult};

#[derive(Parser, Debug)]
#[command(name = "cdlab", version, about = "Exact experiments in Cayley-Dickson algebras")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Level n of A_n. For bracket pairs, the level of the entries a and b.
    #[arg(long, global = true)]
    n: Option<u32>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Read JSON input from this file instead of stdin.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,

    /// Lift the level caps.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Product ab.
    Mul { elements: Vec<String> },
    /// Conjugate a*.
    Conj { elements: Vec<String> },
    /// Hermitian and real inner products.
    Inner { elements: Vec<String> },
    /// Annihilator of left multiplication.
    Ann { elements: Vec<String> },
    /// Product of two brackets, term by term.
    BracketMul {
        /// Pairs as `{A, B}`, or entries listed two at a time.
        pairs: Vec<String>,
    },
    /// D-locus conditions and annihilator of a bracket.
    Dlocus {
        /// A pair `{A, B}`, or the two entries.
        pairs: Vec<String>,
    },
    /// Self-verifying constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Sample elements with large annihilators and test one-sidedness.
    ProbeTcn {
        #[arg(long, default_value_t = 0)]
        c: usize,
    },
    /// Run the check registry: `all` or a single check id.
    Verify { target: String },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Mutually annihilating families of size 2^(n-3).
    Zm,
    /// Unit pair with a(ab) = -λb, λ = n - 2.
    Lambda,
    /// D-locus pair with maximal annihilators (bracket in A_{n+1}).
    Topd,
    /// Annihilator of (i_{n-1}, a); a defaults to e1.
    Dugger { element: Option<String> },
    /// Subalgebra 1 + 2^(n-3) dimensional with zero products.
    Degsub,
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

struct Fail {
    code: i32,
    msg: String,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl From<CdError> for Fail {
    fn from(e: CdError) -> Self {
        let code = if matches!(e, CdError::Identity(_)) { 1 } else { 2 };
        Fail {
            code,
            msg: e.to_string(),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Parse `args` and run; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if help { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if help { 0 } else { 2 };
        }
    };
    if cli.allow_large {
        algebra::allow_large(true);
    }
    let report = match dispatch(&cli, stdin) {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            return f.code;
        }
    };
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => report.text,
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 2;
    }
    if report.ok {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, Fail> {
    match &cli.cmd {
        Cmd::Mul { elements } => {
            let [a, b] = elements_n::<2>(cli, elements, stdin)?;
            let p = a.try_mul(&b)?;
            Ok(Report {
                text: format!("{p}\n"),
                json: json!({ "a": a, "b": b, "product": p }),
                ok: true,
            })
        }
        Cmd::Conj { elements } => {
            let [a] = elements_n::<1>(cli, elements, stdin)?;
            let c = a.conj();
            Ok(Report {
                text: format!("{c}\n"),
                json: json!({ "element": a, "conj": c }),
                ok: true,
            })
        }
        Cmd::Inner { elements } => {
            let [a, b] = elements_n::<2>(cli, elements, stdin)?;
            let h = a.try_herm_inner(&b)?;
            let r = a.dot(&b);
            let orth = h.is_zero();
            Ok(Report {
                text: format!("herm_inner    {h}\nreal_inner    {r}\nc_orthogonal  {orth}\n"),
                json: json!({ "a": a, "b": b, "herm_inner": h, "real_inner": r, "c_orthogonal": orth }),
                ok: true,
            })
        }
        Cmd::Ann { elements } => {
            let [a] = elements_n::<1>(cli, elements, stdin)?;
            ann_cmd(&a)
        }
        Cmd::BracketMul { pairs } => {
            let [p, q] = pairs_n::<2>(cli, pairs, stdin)?;
            bracket_mul_cmd(&p, &q)
        }
        Cmd::Dlocus { pairs } => {
            let [p] = pairs_n::<1>(cli, pairs, stdin)?;
            dlocus_cmd(&p)
        }
        Cmd::Construct { what } => construct_cmd(cli, what, stdin),
        Cmd::ProbeTcn { c } => {
            let n = need_n(cli)?;
            let r = tcn_probe(n, *c, cli.trials, cli.seed)?;
            let mut text = String::new();
            let _ = writeln!(text, "n {}  c {}  seed {}  trials {}", r.n, r.c, r.seed, r.trials);
            let _ = writeln!(text, "regime              {}", to_json(&r.regime).as_str().unwrap_or("?"));
            let _ = writeln!(text, "threshold dim_ann   {}", r.threshold);
            let _ = writeln!(text, "samples             {}", r.samples);
            let _ = writeln!(text, "members             {}", r.members);
            let _ = writeln!(text, "one-sided members   {}", r.one_sided_members);
            let _ = writeln!(text, "two-sided members   {}", r.two_sided_members);
            let stable = r.stable_on_tested_set.map_or("n/a".into(), |b| b.to_string());
            let _ = writeln!(text, "stable on tested    {stable}");
            let _ = writeln!(text, "consistent          {}", r.ok);
            for w in &r.witnesses {
                let _ = writeln!(text, "witness [{}] dim {}: {}", w.source, w.dim_ann, w.element);
            }
            text.push_str("(sampling only: absence of a member is not certified)\n");
            Ok(Report {
                json: to_json(&r),
                text,
                ok: r.ok,
            })
        }
        Cmd::Verify { target } => verify_cmd(cli, target),
    }
}

fn need_n(cli: &Cli) -> Result<u32, Fail> {
    cli.n.ok_or_else(|| Fail::usage("this command needs --n"))
}

fn ann_cmd(a: &Element) -> Result<Report, Fail> {
    let r = AnnReport::new(a);
    let n = a.level();
    let bound = AnnReport::dim_bound(n);
    let holds = r.dimension_invariants_hold();
    let h_perp = (n >= 2).then(|| a.in_h_perp());
    let mut text = String::new();
    let _ = writeln!(text, "element    {a}");
    let _ = writeln!(text, "dim_ann    {}", r.dim_ann);
    let _ = writeln!(text, "image_dim  {}", r.image_dim);
    if let Some(b) = bound {
        let _ = writeln!(text, "bound      {b}");
    }
    let _ = writeln!(text, "in_c_perp  {}", a.in_c_perp());
    if let Some(h) = h_perp {
        let _ = writeln!(text, "in_h_perp  {h}");
    }
    if !holds {
        let _ = writeln!(text, "FAILED: dim Ann is not a multiple of 4 within the bound");
    }
    let mut json = to_json(&r);
    json["dim_bound"] = json!(bound);
    json["in_c_perp"] = json!(a.in_c_perp());
    json["in_h_perp"] = json!(h_perp);
    json["invariants_hold"] = json!(holds);
    Ok(Report { json, text, ok: holds })
}

fn bracket_mul_cmd(p: &BracketPair, q: &BracketPair) -> Result<Report, Fail> {
    let terms = bracket_mul_terms(p, q)?;
    let product = bracket_mul(p, q)?;
    let direct = p.to_element().try_mul(&q.to_element())?;
    let agrees = product == direct;
    let mut text = String::new();
    for (k, t) in terms.iter().enumerate() {
        let _ = writeln!(text, "term {}  {t}", k + 1);
    }
    let _ = writeln!(text, "product {product}");
    let _ = writeln!(text, "agrees with direct product  {agrees}");
    if !agrees {
        let _ = writeln!(text, "FAILED: direct product is {direct}");
    }
    Ok(Report {
        json: json!({
            "p": p,
            "q": q,
            "terms": terms,
            "product": product,
            "direct": direct,
            "agrees": agrees,
        }),
        text,
        ok: agrees,
    })
}

fn dlocus_cmd(p: &BracketPair) -> Result<Report, Fail> {
    let r = is_dlocus(p);
    let formula = r.dimension_formula_holds();
    let mut text = String::new();
    let _ = writeln!(text, "a ⊥_C b         {}", r.cond_orth);
    let _ = writeln!(text, "a ⊥ Ann b       {}", r.cond_a_vs_annb);
    let _ = writeln!(text, "b ⊥ Ann a       {}", r.cond_b_vs_anna);
    let _ = writeln!(text, "in D-locus      {}", r.in_dlocus);
    let _ = writeln!(text, "dim Ann a       {}", r.dim_ann_a);
    let _ = writeln!(text, "dim Ann b       {}", r.dim_ann_b);
    let _ = writeln!(text, "dim Ann {{a,b}}   {}", r.dim_ann_bracket);
    let mut ok = formula;
    let construction = if r.in_dlocus && !p.a().is_zero() && !p.b().is_zero() {
        let c = ann_dlocus_construct(p)?;
        let matches = c.total == r.ann_bracket;
        let orth = c.parts_c_orthogonal();
        ok &= matches && orth;
        let _ = writeln!(
            text,
            "construction    {} + {} + {} = {}, matches {matches}, parts C-orthogonal {orth}",
            c.part_ann.dim(),
            c.part_norms.dim(),
            c.part_quotients.dim(),
            c.total.dim()
        );
        json!({
            "dim_part_ann": c.part_ann.dim(),
            "dim_part_norms": c.part_norms.dim(),
            "dim_part_quotients": c.part_quotients.dim(),
            "dim_total": c.total.dim(),
            "matches_nullspace": matches,
            "parts_c_orthogonal": orth,
            "parts": c,
        })
    } else {
        Value::Null
    };
    if !formula {
        let _ = writeln!(text, "FAILED: dimension jump does not match D-locus membership");
    }
    Ok(Report {
        json: json!({
            "report": r,
            "dimension_formula_holds": formula,
            "construction": construction,
        }),
        text,
        ok,
    })
}

fn ledger_text(text: &mut String, l: &Ledger) {
    for e in l.entries() {
        let _ = writeln!(text, "  verified: {e}");
    }
}

fn construct_cmd(cli: &Cli, what: &Construct, stdin: &mut dyn Read) -> Result<Report, Fail> {
    let n = need_n(cli)?;
    let mut text = String::new();
    let json = match what {
        Construct::Zm => {
            let f = zm_family(n)?;
            let _ = writeln!(text, "n {}  |X| = |Y| = {}", f.n, f.x.len());
            for (k, (x, y)) in f.x.iter().zip(&f.y).enumerate() {
                let _ = writeln!(text, "x{k} = {x}");
                let _ = writeln!(text, "y{k} = {y}");
            }
            ledger_text(&mut text, &f.verified);
            to_json(&f)
        }
        Construct::Lambda => {
            if n < 3 {
                return Err(Fail::usage("lambda pairs start at n = 3"));
            }
            let l = lambda_pair(n - 2)?;
            let _ = writeln!(text, "n {}  lambda {}", l.n, l.lambda);
            let _ = writeln!(text, "a = {}", l.a);
            let _ = writeln!(text, "b = {}", l.b);
            ledger_text(&mut text, &l.verified);
            to_json(&l)
        }
        Construct::Topd => {
            let t = top_dlocus(n)?;
            let _ = writeln!(text, "n {}", t.n);
            let _ = writeln!(text, "a = {}", t.pair.a());
            let _ = writeln!(text, "b = {}", t.pair.b());
            let _ = writeln!(text, "dim Ann a = {}  dim Ann b = {}", t.dim_ann_a, t.dim_ann_b);
            let _ = writeln!(text, "dim Ann {{a,b}} = {}", t.dim_ann_bracket);
            ledger_text(&mut text, &t.verified);
            to_json(&t)
        }
        Construct::Dugger { element } => {
            if n < 4 {
                return Err(Fail::usage("dugger elements need n >= 4"));
            }
            let a = match (element, &cli.input) {
                (Some(s), _) => parse_element(s, Some(n - 1))?,
                (None, Some(_)) => {
                    let [a] = json_elements::<1>(Some(n - 1), stdin, cli)?;
                    a
                }
                (None, None) => Element::basis(n - 1, 1),
            };
            let d = dugger(n, &a)?;
            let _ = writeln!(text, "element (i_{}, a) = {}", n - 1, d.element);
            let _ = writeln!(text, "dim Ann = {}", d.report.dim_ann);
            ledger_text(&mut text, &d.verified);
            to_json(&d)
        }
        Construct::Degsub => {
            let d = degenerate_subalgebra(n)?;
            let _ = writeln!(text, "n {}  dim {}", d.n, d.dim);
            ledger_text(&mut text, &d.verified);
            to_json(&d)
        }
    };
    Ok(Report { json, text, ok: true })
}

fn verify_cmd(cli: &Cli, target: &str) -> Result<Report, Fail> {
    let n = cli.n.unwrap_or(4);
    if !(1..=algebra::table::algebra_cap()).contains(&n) {
        return Err(CdError::LevelTooLarge {
            level: n,
            cap: algebra::table::algebra_cap(),
        }
        .into());
    }
    let start = Instant::now();
    let results = if target == "all" {
        verify::run_all(n, cli.trials, cli.seed)
    } else {
        let check = verify::find(target).ok_or_else(|| {
            Fail::usage(format!("unknown check id {target:?}; known: {}", verify::verify_registry().join(", ")))
        })?;
        vec![verify::run_check(check, n, cli.trials, cli.seed)]
    };
    let total = start.elapsed();
    let failed = results.iter().filter(|r| !r.passed()).count();
    let mut text = String::new();
    for r in &results {
        verify_line(&mut text, r);
    }
    let _ = writeln!(
        text,
        "{} passed, {} failed ({})",
        results.len() - failed,
        failed,
        fmt_duration(total)
    );
    let json = if target == "all" {
        json!({
            "n": n,
            "seed": cli.seed,
            "trials": cli.trials,
            "passed": results.len() - failed,
            "failed": failed,
            "checks": results,
        })
    } else {
        to_json(&results[0])
    };
    Ok(Report {
        json,
        text,
        ok: failed == 0,
    })
}

fn verify_line(text: &mut String, r: &VerifyResult) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        text,
        "{status} {:<32} {:<28} n={} trials={} {}",
        r.check_id,
        r.anchor,
        r.level,
        r.trials,
        fmt_duration(r.elapsed)
    );
    if !r.passed() {
        let _ = writeln!(text, "  {} failing identities", r.failures);
        for w in &r.witnesses {
            let _ = writeln!(text, "  counterexample: {w}");
        }
    }
}

fn fmt_duration(d: Duration) -> String {
    format!("{:.1}ms", d.as_secs_f64() * 1e3)
}

// ---- input ----

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<Value, Fail> {
    let mut buf = String::new();
    match &cli.input {
        Some(path) => {
            buf = std::fs::read_to_string(path)
                .map_err(|e| Fail::usage(format!("cannot read {}: {e}", path.display())))?;
        }
        None => {
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| Fail::usage(format!("cannot read stdin: {e}")))?;
        }
    }
    serde_json::from_str(&buf).map_err(|e| Fail::from(CdError::Json(e.to_string())))
}

/// One element from JSON: an inline string, `{"halves": [x, y]}`, or
/// `{"n": .., "coeffs": [..]}`.
fn element_from_json(v: &Value, level: Option<u32>) -> Result<Element, Fail> {
    match v {
        Value::String(s) => Ok(parse_element(s, level)?),
        Value::Object(m) if m.contains_key("halves") => {
            let hs = m["halves"]
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Fail::usage("\"halves\" must be a two-element array"))?;
            let inner = level.map(|n| n.saturating_sub(1));
            let mut xy = [element_from_json(&hs[0], inner)?, element_from_json(&hs[1], inner)?];
            unify(&mut xy)?;
            let e = Element::from_halves(&xy[0], &xy[1]);
            check_level_matches(&e, level)?;
            Ok(e)
        }
        _ => {
            let e: Element =
                serde_json::from_value(v.clone()).map_err(|e| Fail::from(CdError::Json(e.to_string())))?;
            check_level_matches(&e, level)?;
            Ok(e)
        }
    }
}

fn check_level_matches(e: &Element, level: Option<u32>) -> Result<(), Fail> {
    match level {
        Some(n) if e.level() != n => Err(CdError::LevelMismatch {
            left: e.level(),
            right: n,
        }
        .into()),
        _ => Ok(()),
    }
}

/// Embed everything into the largest level present.
fn unify(es: &mut [Element]) -> Result<(), Fail> {
    let top = es.iter().map(Element::level).max().unwrap_or(0);
    algebra::table::check_level(top)?;
    for e in es.iter_mut() {
        while e.level() < top {
            *e = e.embed();
        }
    }
    Ok(())
}

fn exactly<const K: usize, T>(items: Vec<T>, what: &str) -> Result<[T; K], Fail> {
    let got = items.len();
    items
        .try_into()
        .map_err(|_| Fail::usage(format!("expected {K} {what}, got {got}")))
}

fn json_items(v: Value, key: &str) -> Vec<Value> {
    match v {
        Value::Array(a) => a,
        Value::Object(mut m) if m.contains_key(key) => match m.remove(key) {
            Some(Value::Array(a)) => a,
            Some(other) => vec![other],
            None => vec![],
        },
        other => vec![other],
    }
}

fn json_elements<const K: usize>(level: Option<u32>, stdin: &mut dyn Read, cli: &Cli) -> Result<[Element; K], Fail> {
    let items = json_items(read_input(cli, stdin)?, "elements");
    let mut es = items
        .iter()
        .map(|v| element_from_json(v, level))
        .collect::<Result<Vec<_>, _>>()?;
    unify(&mut es)?;
    exactly(es, "elements")
}

fn elements_n<const K: usize>(cli: &Cli, args: &[String], stdin: &mut dyn Read) -> Result<[Element; K], Fail> {
    if args.is_empty() {
        return json_elements(cli.n, stdin, cli);
    }
    let mut es = args
        .iter()
        .map(|s| parse_element(s, cli.n))
        .collect::<Result<Vec<_>, _>>()?;
    unify(&mut es)?;
    exactly(es, "elements")
}

fn make_pair(mut ab: [Element; 2]) -> Result<BracketPair, Fail> {
    unify(&mut ab)?;
    let [a, b] = ab;
    Ok(BracketPair::new(a, b)?)
}

/// `{A, B}` split at its top-level comma.
fn split_braced(s: &str) -> Option<(&str, &str)> {
    let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

fn pair_from_json(v: &Value, level: Option<u32>) -> Result<BracketPair, Fail> {
    let (a, b) = match v {
        Value::Array(xs) if xs.len() == 2 => (&xs[0], &xs[1]),
        Value::Object(m) if m.contains_key("a") && m.contains_key("b") => (&m["a"], &m["b"]),
        Value::String(s) => {
            let (a, b) = split_braced(s).ok_or_else(|| Fail::usage(format!("expected {{A, B}}, got {s:?}")))?;
            return make_pair([parse_element(a, level)?, parse_element(b, level)?]);
        }
        _ => return Err(Fail::usage("a pair is [a, b], {\"a\": .., \"b\": ..} or \"{A, B}\"")),
    };
    let p = make_pair([element_from_json(a, level)?, element_from_json(b, level)?])?;
    if let Some(n) = v.get("n").and_then(Value::as_u64) {
        if u64::from(p.level()) != n {
            return Err(CdError::LevelMismatch {
                left: p.level(),
                right: n as u32,
            }
            .into());
        }
    }
    Ok(p)
}

fn pairs_n<const K: usize>(cli: &Cli, args: &[String], stdin: &mut dyn Read) -> Result<[BracketPair; K], Fail> {
    let mut out = Vec::new();
    if args.is_empty() {
        let v = read_input(cli, stdin)?;
        // a lone pair may itself be a two-element array
        let items = if K == 1 && v.is_array() { vec![v] } else { json_items(v, "pairs") };
        for v in &items {
            out.push(pair_from_json(v, cli.n)?);
        }
    } else {
        let mut pending: Vec<Element> = Vec::new();
        for s in args {
            if let Some((a, b)) = split_braced(s) {
                if !pending.is_empty() {
                    return Err(Fail::usage("unpaired entry before a braced pair"));
                }
                out.push(make_pair([parse_element(a, cli.n)?, parse_element(b, cli.n)?])?);
            } else {
                pending.push(parse_element(s, cli.n)?);
                if pending.len() == 2 {
                    let b = pending.pop().expect("two entries");
                    let a = pending.pop().expect("two entries");
                    out.push(make_pair([a, b])?);
                }
            }
        }
        if !pending.is_empty() {
            return Err(Fail::usage("odd number of bracket entries"));
        }
    }
    let top = out.iter().map(BracketPair::level).max().unwrap_or(0);
    if out.iter().any(|p| p.level() != top) {
        return Err(Fail::usage("all pairs must live at the same level; pass --n"));
    }
    exactly(out, "pairs")
}
