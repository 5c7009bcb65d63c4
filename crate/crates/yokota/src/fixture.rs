//! Triangulation fixtures in TOML.
//!
//! ```toml
//! n = 2
//! terms = [
//!     { sigma = 1, num = "1", den = "z1" },
//!     { sigma = -1, num = "z1", den = "z2" },
//! ]
//! ```
//!
//! `sigma` is `1` or `-1`; `num` and `den` are `"1"` or `"z<k>"` with
//! `1 <= k <= n`. Unknown keys are rejected.

use std::fmt;
use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;
use yokota_core::{Error as CoreError, SideRef, Sign, TetraTerm, Triangulation};

/// A problem in a fixture document, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for FixtureError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    n: Spanned<i64>,
    terms: Spanned<Vec<Spanned<RawTerm>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    sigma: Spanned<i64>,
    num: Spanned<String>,
    den: Spanned<String>,
}

fn locate(src: &str, span: Option<Range<usize>>, message: impl Into<String>) -> FixtureError {
    let offset = span.map_or(0, |s| s.start.min(src.len()));
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    FixtureError { line, column, message: message.into() }
}

fn parse_side(src: &str, text: &Spanned<String>, n: usize) -> Result<SideRef, FixtureError> {
    let s = text.get_ref().as_str();
    if s == "1" {
        return Ok(SideRef::Unit);
    }
    let index = s
        .strip_prefix('z')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| locate(src, Some(text.span()), format!("side must be \"1\" or \"z<k>\", got {s:?}")))?;
    if index > n {
        return Err(locate(src, Some(text.span()), format!("variable z{index} outside z1..z{n}")));
    }
    Ok(SideRef::Var(index))
}

/// Parses and validates a fixture document.
pub fn parse(src: &str) -> Result<Triangulation, FixtureError> {
    let raw: RawFixture = toml::from_str(src).map_err(|e| locate(src, e.span(), e.message().trim()))?;
    let n = match usize::try_from(*raw.n.get_ref()) {
        Ok(n) if n >= 1 => n,
        _ => return Err(locate(src, Some(raw.n.span()), "n must be a positive integer")),
    };
    let term_spans: Vec<Range<usize>> = raw.terms.get_ref().iter().map(|t| t.span()).collect();
    if term_spans.is_empty() {
        return Err(locate(src, Some(raw.terms.span()), "terms must not be empty"));
    }
    let mut terms = Vec::with_capacity(term_spans.len());
    for term in raw.terms.get_ref() {
        let t = term.get_ref();
        let sigma = Sign::from_value(*t.sigma.get_ref()).ok_or_else(|| {
            locate(src, Some(t.sigma.span()), format!("sigma must be 1 or -1, got {}", t.sigma.get_ref()))
        })?;
        let num = parse_side(src, &t.num, n)?;
        let den = parse_side(src, &t.den, n)?;
        if num == SideRef::Unit && den == SideRef::Unit {
            return Err(locate(src, Some(term.span()), "ratio 1/1 is not a tetrahedron"));
        }
        terms.push(TetraTerm::new(sigma, num, den));
    }
    Triangulation::new(n, terms).map_err(|e| match e {
        CoreError::DegenerateTerm { term } | CoreError::UnknownVariable { term, .. } => {
            locate(src, Some(term_spans[term - 1].clone()), e.to_string())
        }
        _ => locate(src, Some(raw.n.span()), e.to_string()),
    })
}

/// Writes a triangulation in the fixture format; `parse` inverts it.
pub fn to_toml(tri: &Triangulation) -> String {
    let mut out = format!("n = {}\nterms = [\n", tri.n());
    for t in tri.terms() {
        let _ = writeln!(
            out,
            "    {{ sigma = {}, num = \"{}\", den = \"{}\" }},",
            t.sigma.value(),
            t.numerator,
            t.denominator
        );
    }
    out.push_str("]\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let tri = parse("n = 1\nterms = [{ sigma = 1, num = \"1\", den = \"z1\" }]\n").unwrap();
        assert_eq!(tri.n(), 1);
        assert_eq!(tri.terms(), &[TetraTerm::plus(SideRef::Unit, SideRef::Var(1))]);
    }

    #[test]
    fn error_points_at_offending_value() {
        let src = "n = 2\nterms = [\n  { sigma = 1, num = \"z1\", den = \"z2\" },\n  { sigma = 0, num = \"z2\", den = \"1\" },\n]\n";
        let err = parse(src).unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(err.column, 13);
        assert!(err.message.contains("sigma"));
    }

    #[test]
    fn rejects_bad_sides() {
        for side in ["z0", "z", "w1", "z01", "2", "z3"] {
            let src = format!("n = 2\nterms = [{{ sigma = 1, num = \"{side}\", den = \"z1\" }}, {{ sigma = 1, num = \"z2\", den = \"1\" }}]\n");
            let err = parse(&src).unwrap_err();
            assert_eq!(err.line, 2, "{side}: {err}");
        }
    }

    #[test]
    fn unknown_field_and_unit_ratio() {
        let err = parse("n = 1\nterms = [{ sigma = 1, num = \"1\", den = \"z1\", extra = 2 }]\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse("n = 1\nterms = [{ sigma = 1, num = \"1\", den = \"1\" }]\n").is_err());
        assert!(parse("foo = 1\nn = 1\nterms = []\n").is_err());
    }

    #[test]
    fn unused_variable_is_reported_at_n() {
        let err = parse("\nn = 2\nterms = [{ sigma = 1, num = \"1\", den = \"z1\" }]\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("z2"));
    }
}
