//! Compact inline syntax for elements.
//!
//! ```text
//! element := '(' element ',' element ')'      halves (x, y) of A_n
//!          | sum
//! sum     := sign? term (sign term)*
//! term    := coef? 'e' INT | coef
//! coef    := '(' SCALAR ')' | SIMPLE
//! ```
//!
//! `SIMPLE` is a scalar literal without an inner sign, such as `3`, `1/2`,
//! `s2` or `3/2s2`; anything with a sign inside goes in parentheses, as in
//! `(1+s2) e3`. A bare coefficient is a multiple of `e0`. Whitespace is free.

use std::collections::BTreeMap;

use super::table::check_level;
use super::Element;
use crate::error::{CdError, Result};
use crate::scalar::Scalar;

/// Parse `text` as an element of `A_level`, or of the smallest algebra
/// holding every index when `level` is `None`.
pub fn parse_element(text: &str, level: Option<u32>) -> Result<Element> {
    let trimmed_at = text.len() - text.trim_start().len();
    let body = text.trim();
    if let Some((x, y, y_at)) = split_halves(body) {
        let inner = match level {
            Some(0) => return Err(CdError::parse(trimmed_at, "A_0 has no halves")),
            Some(n) => Some(n - 1),
            None => None,
        };
        let shift = |e: CdError, by: usize| match e {
            CdError::Parse { pos, msg } => CdError::parse(pos + by, msg),
            other => other,
        };
        let mut xe = parse_element(x, inner).map_err(|e| shift(e, trimmed_at + 1))?;
        let mut ye = parse_element(y, inner).map_err(|e| shift(e, trimmed_at + y_at))?;
        while xe.level() < ye.level() {
            xe = xe.embed();
        }
        while ye.level() < xe.level() {
            ye = ye.embed();
        }
        check_level(xe.level() + 1)?;
        return Ok(Element::from_halves(&xe, &ye));
    }
    let terms = Parser {
        s: text.as_bytes(),
        pos: 0,
    }
    .sum()?;
    let max = terms.keys().next_back().copied().unwrap_or(0);
    let needed = (usize::BITS - max.leading_zeros()).max(1);
    let n = match level {
        Some(n) if (max >> n) != 0 => {
            return Err(CdError::parse(0, format!("index e{max} does not fit in A_{n}")))
        }
        Some(n) => n,
        None => needed,
    };
    check_level(n)?;
    let terms: Vec<(usize, Scalar)> = terms.into_iter().collect();
    Ok(Element::from_terms(n, &terms))
}

/// `(x, y)` with the comma at paren depth one; returns the two halves and
/// the byte offset of `y`.
fn split_halves(body: &str) -> Option<(&str, &str, usize)> {
    let inner = body.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..], i + 2)),
            _ => {}
        }
    }
    None
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn sum(mut self) -> Result<BTreeMap<usize, Scalar>> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(CdError::parse(0, "empty element"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None => break,
                Some(_) if first => false,
                Some(_) => return Err(CdError::parse(self.pos, "expected '+' or '-'")),
            };
            first = false;
            self.skip_ws();
            let (k, c) = self.term()?;
            let c = if neg { -c } else { c };
            let slot = out.entry(k).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(usize, Scalar)> {
        let at = self.pos;
        let coef = self.coef()?;
        self.skip_ws();
        if self.peek() == Some(b'e') {
            self.pos += 1;
            let k = self.index()?;
            return Ok((k, coef.unwrap_or_else(Scalar::one)));
        }
        match coef {
            Some(c) => Ok((0, c)),
            None => Err(CdError::parse(at, "expected a coefficient or 'e'")),
        }
    }

    fn coef(&mut self) -> Result<Option<Scalar>> {
        let start = self.pos;
        if self.peek() == Some(b'(') {
            let close = self.s[start..]
                .iter()
                .position(|&c| c == b')')
                .ok_or_else(|| CdError::parse(start, "unclosed '('"))?;
            let inner = std::str::from_utf8(&self.s[start + 1..start + close]).expect("ascii slice");
            self.pos = start + close + 1;
            // scalar literals have no whitespace of their own
            if inner.contains(char::is_whitespace) {
                let packed: String = inner.split_whitespace().collect();
                return packed.parse().map(Some).map_err(|e| offset(e, start + 1));
            }
            return inner.parse().map(Some).map_err(|e| offset(e, start + 1));
        }
        while matches!(self.peek(), Some(b'0'..=b'9' | b'/' | b's')) {
            // `s` belongs to the literal only as `s2`
            if self.peek() == Some(b's') && self.s.get(self.pos + 1) != Some(&b'2') {
                break;
            }
            self.pos += if self.peek() == Some(b's') { 2 } else { 1 };
        }
        if self.pos == start {
            return Ok(None);
        }
        let lit = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii slice");
        lit.parse().map(Some).map_err(|e| offset(e, start))
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii slice");
        digits
            .parse()
            .map_err(|_| CdError::parse(start, "expected a basis index after 'e'"))
    }
}

fn offset(e: CdError, by: usize) -> CdError {
    match e {
        CdError::Parse { pos, msg } => CdError::parse(pos + by, msg),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: Option<u32>) -> Element {
        parse_element(text, n).unwrap()
    }

    #[test]
    fn examples() {
        let a = p("e1+e2", None);
        assert_eq!(a, &Element::basis(2, 1) + &Element::basis(2, 2));
        let b = p("1/2 e3 - s2 e7", None);
        assert_eq!(b.level(), 3);
        assert_eq!(b.coeff(3), &Scalar::from_ratio(1, 2));
        assert_eq!(b.coeff(7), &-Scalar::sqrt2());
        assert_eq!(p("(1+s2)e1", Some(2)).coeff(1), &"1+s2".parse::<Scalar>().unwrap());
        assert_eq!(p("( 1/2 + 3 s2 ) e5", None), p("(1/2+3s2)e5", None));
        assert_eq!(p("-e1 + 3", Some(1)), Element::from_ints(1, &[3, -1]));
        assert_eq!(p("0", Some(3)), Element::zero(3));
        assert_eq!(p("e1 - e1", Some(2)), Element::zero(2));
    }

    #[test]
    fn halves() {
        let z = p("(e1, e2)", Some(4));
        assert_eq!(z, &Element::basis(4, 1) + &Element::basis(4, 10));
        let w = p("(e1, e5)", None);
        assert_eq!(w.level(), 4);
        assert_eq!(w, p("e1 + e13", Some(4)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_element("e9", Some(3)), Err(CdError::Parse { .. })));
        assert!(matches!(parse_element("", None), Err(CdError::Parse { .. })));
        assert!(matches!(parse_element("e1 e2", None), Err(CdError::Parse { pos: 3, .. })));
        assert!(matches!(parse_element("ex", None), Err(CdError::Parse { pos: 1, .. })));
        assert!(matches!(parse_element("1/0 e1", None), Err(CdError::Parse { pos: 2, .. })));
        assert!(matches!(parse_element("(1+ e1", None), Err(CdError::Parse { pos: 0, .. })));
        assert!(parse_element("e2000", None).is_err());
    }
}
