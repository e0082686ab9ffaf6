//! Exact scalars: arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    s.parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("bad rational literal `{s}`")))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(q: &Scalar) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.to_integer()).ok()
}

/// Writes `c*name` with the conventions `name`, `-name` for unit coefficients.
/// `first` controls whether a leading `+` separator is emitted.
pub(crate) fn write_term(
    f: &mut std::fmt::Formatter<'_>,
    coeff: &Scalar,
    name: &str,
    first: bool,
) -> std::fmt::Result {
    f.write_str(&format_term(coeff, name, first))
}

pub(crate) fn format_term(coeff: &Scalar, name: &str, first: bool) -> String {
    use std::fmt::Write;
    let mut f = String::new();
    let negative = coeff.is_negative();
    let magnitude = coeff.abs();
    f.push_str(match (first, negative) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    });
    let _ = if name.is_empty() {
        write!(f, "{magnitude}")
    } else if magnitude.is_one() {
        write!(f, "{name}")
    } else {
        write!(f, "{magnitude}*{name}")
    };
    f
}

/// Splits a signed sum like `2*e(1) - e(2)` into `(sign, body)` pieces.
/// Separators are `+`/`-` at parenthesis depth zero that do not follow `*` or `/`.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut negative = false;
    let mut current = String::new();
    let mut last_significant: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        let is_sep = (ch == '+' || ch == '-')
            && depth == 0
            && !matches!(last_significant, Some('*') | Some('/') | Some(','));
        if is_sep {
            if !current.trim().is_empty() {
                out.push((negative, current.trim().to_string()));
                current.clear();
                negative = ch == '-';
            } else {
                if last_significant.is_some() && !matches!(last_significant, Some('+') | Some('-')) {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                negative ^= ch == '-';
            }
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            last_significant = Some(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
    }
    if current.trim().is_empty() {
        if !out.is_empty() || last_significant.is_some() {
            return Err(Error::Parse(format!("trailing operator in `{s}`")));
        }
        return Ok(out);
    }
    out.push((negative, current.trim().to_string()));
    Ok(out)
}

/// Parses `c*atom` or `atom` into `(coefficient, atom)`.
pub(crate) fn split_coefficient(term: &str) -> Result<(Scalar, &str)> {
    match term.rfind('*') {
        Some(pos) => {
            let c = parse_scalar(&term[..pos])?;
            Ok((c, term[pos + 1..].trim()))
        }
        None => Ok((Scalar::one(), term.trim())),
    }
}

/// Parses a comma-separated list of integers, e.g. the inside of `[2,1]`.
pub(crate) fn parse_int_list(inner: &str) -> Result<Vec<i64>> {
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer `{}`", p.trim())))
        })
        .collect()
}

/// Strips `open ... close` around `s`.
pub(crate) fn strip_delims(s: &str, open: char, close: char) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected `{open}...{close}`, got `{t}`")))
}
