//! Line-oriented text format for bivariate polynomials.
//!
//! One nonzero term per line, `[a,b,...] z^I c^J`, where the bracket holds
//! the coordinate vector of the coefficient. Lines are sorted by `I`
//! descending, then `J` descending; the zero polynomial is the empty string.

use super::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::ring::Field;

pub fn to_text<F: Field>(p: &BivarPoly<F>) -> String {
    let mut out = String::new();
    for (i, j, c) in p.terms() {
        out.push('[');
        out.push_str(&p.ring().to_coords(c).join(","));
        out.push_str(&format!("] z^{i} c^{j}\n"));
    }
    out
}

pub fn from_text<F: Field>(ring: F, s: &str) -> Result<BivarPoly<F>> {
    let mut terms = Vec::new();
    for (lineno, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}: {line:?}", lineno + 1));
        let rest = line.strip_prefix('[').ok_or_else(|| bad("missing '['"))?;
        let (coords, rest) = rest.split_once(']').ok_or_else(|| bad("missing ']'"))?;
        let coords: Vec<&str> = coords.split(',').map(str::trim).collect();
        let coef = ring.from_coords(&coords)?;
        let mut parts = rest.split_whitespace();
        let exp = |tok: Option<&str>, var: &str| -> Result<usize> {
            tok.and_then(|t| t.strip_prefix(var))
                .and_then(|t| t.strip_prefix('^'))
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad(&format!("expected {var}^<exponent>")))
        };
        let i = exp(parts.next(), "z")?;
        let j = exp(parts.next(), "c")?;
        if parts.next().is_some() {
            return Err(bad("trailing tokens"));
        }
        terms.push((i, j, coef));
    }
    Ok(BivarPoly::from_terms(ring, terms))
}
