//! Text forms of rings, ring elements, matrices and torus points.
//!
//! ```text
//! ring    := gaussian | eisenstein | integer
//! elem    := term (("+" | "-") term)*        e.g. 1/3-1/3*z, -z, 2+3*z
//! term    := rational | rational "*z" | "z"
//! matrix  := "[[" elem "," elem "],[" elem "," elem "]]"
//! point   := "(" elem "," elem ")"
//! ```
//!
//! `z` is the ring's `ζ` (`i` or `ζ₃`). Over `integer` it reads as `1` in
//! matrix entries and as the second period `τ` in points. Whitespace is
//! ignored. Printing any parsed value gives text that parses back to it.

use std::fmt;

use kummer_core::exactnum::{FieldElem, IntMatrix, RingElem, RingId};
use kummer_core::torus::{TorusAuto, TorusEndo, TorusPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

fn compact(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn parse_ring(s: &str) -> Result<RingId, ParseError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "gaussian" => Ok(RingId::Gaussian),
        "eisenstein" => Ok(RingId::Eisenstein),
        "integer" => Ok(RingId::RationalInt),
        other => fail(format!("unknown ring '{other}' (expected gaussian, eisenstein or integer)")),
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError(format!("bad rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return fail(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(num, den))
}

/// `(x, y)` of `x + y·z`.
fn parse_linear(s: &str) -> Result<(BigRational, BigRational), ParseError> {
    let s = compact(s);
    if s.is_empty() {
        return fail("empty element");
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let (mut x, mut y) = (BigRational::zero(), BigRational::zero());
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-BigRational::one(), &term[1..]),
            Some(b'+') => (BigRational::one(), &term[1..]),
            _ => (BigRational::one(), term),
        };
        if body.is_empty() {
            return fail(format!("dangling sign in '{s}'"));
        }
        if body == "z" {
            y += sign;
        } else if let Some(coeff) = body.strip_suffix("*z") {
            y += sign * parse_rational(coeff)?;
        } else {
            x += sign * parse_rational(body)?;
        }
    }
    Ok((x, y))
}

pub fn parse_field_elem(ring: RingId, s: &str) -> Result<FieldElem, ParseError> {
    let (x, y) = parse_linear(s)?;
    Ok(FieldElem::new(ring, x, y))
}

pub fn parse_ring_elem(ring: RingId, s: &str) -> Result<RingElem, ParseError> {
    let (x, y) = parse_linear(s)?;
    if !x.is_integer() || !y.is_integer() {
        return fail(format!("'{s}' is not an element of the ring"));
    }
    Ok(RingElem::new(ring, x.to_integer(), y.to_integer()))
}

/// Split `s` at top-level commas (outside brackets and parentheses).
fn split_top(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_delims(s: &str, open: char, close: char) -> Result<&str, ParseError> {
    s.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| ParseError(format!("expected '{open}...{close}', got '{s}'")))
}

/// Rows of a bracketed matrix, entries still as text.
fn matrix_cells(s: &str) -> Result<Vec<Vec<String>>, ParseError> {
    let s = compact(s);
    let inner = strip_delims(&s, '[', ']')?;
    split_top(inner)
        .into_iter()
        .map(|row| Ok(split_top(strip_delims(row, '[', ']')?).into_iter().map(str::to_string).collect()))
        .collect()
}

pub fn parse_endo(ring: RingId, s: &str) -> Result<TorusEndo, ParseError> {
    let cells = matrix_cells(s)?;
    if cells.len() != 2 || cells.iter().any(|r| r.len() != 2) {
        return fail(format!("expected a 2x2 matrix, got '{s}'"));
    }
    let e = |i: usize, j: usize| parse_ring_elem(ring, &cells[i][j]);
    TorusEndo::new([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]]).map_err(|e| ParseError(e.to_string()))
}

/// A square integer matrix such as `[[0,0,0,-1],[1,0,0,-1],...]`.
pub fn parse_int_matrix(s: &str) -> Result<IntMatrix, ParseError> {
    let cells = matrix_cells(s)?;
    let n = cells.len();
    if cells.iter().any(|r| r.len() != n) {
        return fail(format!("expected a square matrix, got '{s}'"));
    }
    let data = cells
        .iter()
        .flatten()
        .map(|c| c.parse::<BigInt>().map_err(|_| ParseError(format!("bad integer '{c}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::from_vec(n, n, data))
}

pub fn parse_point(ring: RingId, s: &str) -> Result<TorusPoint, ParseError> {
    let s = compact(s);
    let parts = split_top(strip_delims(&s, '(', ')')?);
    if parts.len() != 2 {
        return fail(format!("expected a point '(x1+y1*z,x2+y2*z)', got '{s}'"));
    }
    let first = parse_field_elem(ring, parts[0])?;
    let second = parse_field_elem(ring, parts[1])?;
    TorusPoint::new(first, second).map_err(|e| ParseError(e.to_string()))
}

/// Validated `ψ = t_a ∘ h`; errors from the core (non-unit determinant,
/// infinite order) are passed through unchanged.
pub fn parse_automorphism(ring: &str, h: &str, a: &str) -> Result<TorusAuto, crate::app::AppError> {
    let ring = parse_ring(ring)?;
    let h = parse_endo(ring, h)?;
    let a = parse_point(ring, a)?;
    let psi = TorusAuto::new(h, a)?;
    psi.order()?;
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn elements() {
        assert_eq!(parse_linear("1/3-1/3*z").unwrap(), (q(1, 3), q(-1, 3)));
        assert_eq!(parse_linear("-z").unwrap(), (q(0, 1), q(-1, 1)));
        assert_eq!(parse_linear(" 2 + 3*z ").unwrap(), (q(2, 1), q(3, 1)));
        assert_eq!(parse_linear("z+z-1").unwrap(), (q(-1, 1), q(2, 1)));
        assert!(parse_linear("").is_err());
        assert!(parse_linear("1/0").is_err());
        assert!(parse_linear("x").is_err());
        assert!(parse_linear("1+").is_err());
        assert!(parse_ring_elem(RingId::Gaussian, "1/2").is_err());
    }

    #[test]
    fn matrices_and_points() {
        let ring = RingId::Eisenstein;
        let h = parse_endo(ring, "[[z,0],[0,1]]").unwrap();
        assert_eq!(h, TorusEndo::diagonal(RingElem::zeta(ring), RingElem::one(ring)).unwrap());
        assert!(parse_endo(ring, "[[z,0,0],[0,1]]").is_err());
        assert!(parse_endo(ring, "[z,0],[0,1]").is_err());
        let p = parse_point(ring, "(1/3, 1/3)").unwrap();
        assert_eq!(p, TorusPoint::from_fractions(ring, [(1, 3), (0, 1), (1, 3), (0, 1)]).unwrap());
        assert_eq!(parse_point(ring, "(4/3,-2/3)").unwrap(), p);
        assert!(parse_point(ring, "(1/3)").is_err());
        let m = parse_int_matrix("[[0,0,0,-1],[1,0,0,-1],[0,1,0,-1],[0,0,1,-1]]").unwrap();
        assert_eq!(m, IntMatrix::companion(&[1, 1, 1, 1]));
    }

    #[test]
    fn printing_round_trips() {
        for ring in RingId::ALL {
            for text in ["[[z,0],[0,1]]", "[[0,-1],[1,1-z]]", "[[2+3*z,-z],[1,0]]"] {
                let h = parse_endo(ring, text).unwrap();
                assert_eq!(parse_endo(ring, &h.to_string()).unwrap(), h);
            }
            for text in ["(1/3,1/3)", "(1/3-1/3*z,1/4)", "(0,-5/6*z)", "(0,0)"] {
                let p = parse_point(ring, text).unwrap();
                assert_eq!(parse_point(ring, &p.to_string()).unwrap(), p);
            }
        }
    }

    #[test]
    fn automorphisms() {
        let psi = parse_automorphism("eisenstein", "[[z,0],[0,1]]", "(1/3,1/3)").unwrap();
        assert_eq!(psi.order().unwrap(), 3);
        assert!(parse_automorphism("gaussian", "[[z,0],[0,1]]", "(1/4,1/4)").is_ok());
        let id = parse_automorphism("integer", "[[1,0],[0,1]]", "(0,0)").unwrap();
        assert!(id.is_identity());
        assert!(parse_automorphism("gaussian", "[[2,0],[0,1]]", "(0,0)").is_err());
        assert!(parse_automorphism("quaternion", "[[1,0],[0,1]]", "(0,0)").is_err());
    }
}
