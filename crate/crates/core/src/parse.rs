//! Textual number specifications.
//!
//! * rationals: `17/11`, `-7/3`, `4`
//! * surds: `(b+u*sqrt(D))/(c*l^f)`, the `u*` and `b+` parts optional, or `sqrt(D)`
//! * polynomials: `x^2-13`, `3x^2+4x-1`

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use regex::Regex;

use crate::error::{Error, Result};
use crate::padic::Prime;
use crate::quadratic_cf::QuadraticSurd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdSpec {
    pub b: BigInt,
    pub u: BigInt,
    pub disc: BigInt,
    pub c: BigInt,
    /// `None` for a bare `sqrt(D)`.
    pub base: Option<BigInt>,
    pub f: i64,
}

impl SurdSpec {
    pub fn build(&self, prime: &Prime, branch: &BigInt) -> Result<QuadraticSurd> {
        if let Some(base) = self.base.as_ref().filter(|b| *b != prime.value()) {
            return Err(Error::Parse(format!(
                "the denominator uses the base {base}, but the prime is {prime}"
            )));
        }
        QuadraticSurd::with_coefficient(
            self.disc.clone(),
            self.b.clone(),
            self.u.clone(),
            self.c.clone(),
            self.f,
            prime,
            branch.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumberSpec {
    Rational(BigRational),
    Surd(SurdSpec),
    /// `A x² + B x + C`.
    Poly([BigInt; 3]),
}

fn int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (int(n.trim())?, int(d.trim())?),
        None => (int(s)?, BigInt::one()),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

fn surd_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^\((?:(?P<b>[+-]?\d+))?(?P<sign>[+-])?(?:(?P<u>\d+)\*)?sqrt\((?P<d>[+-]?\d+)\)\)/\((?P<c>[+-]?\d+)\*(?P<l>\d+)\^(?P<f>[+-]?\d+)\)$",
        )
        .expect("valid regex")
    })
}

fn bare_sqrt_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^sqrt\((?P<d>[+-]?\d+)\)$").expect("valid regex"))
}

pub fn parse_surd(s: &str) -> Result<SurdSpec> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(m) = bare_sqrt_regex().captures(&compact) {
        return Ok(SurdSpec {
            b: BigInt::zero(),
            u: BigInt::one(),
            disc: int(&m["d"])?,
            c: BigInt::one(),
            base: None,
            f: 0,
        });
    }
    let m = surd_regex().captures(&compact).ok_or_else(|| {
        Error::Parse(format!("expected (b+u*sqrt(D))/(c*l^f), got {s:?}"))
    })?;
    let b = m.name("b").map_or(Ok(BigInt::zero()), |x| int(x.as_str()))?;
    if m.name("b").is_some() && m.name("sign").is_none() {
        return Err(Error::Parse(format!("missing sign before sqrt in {s:?}")));
    }
    let mut u = m.name("u").map_or(Ok(BigInt::one()), |x| int(x.as_str()))?;
    if m.name("sign").is_some_and(|x| x.as_str() == "-") {
        u = -u;
    }
    let f: i64 = m["f"]
        .parse()
        .map_err(|_| Error::Parse(format!("exponent out of range in {s:?}")))?;
    Ok(SurdSpec {
        b,
        u,
        disc: int(&m["d"])?,
        c: int(&m["c"])?,
        base: Some(int(&m["l"])?),
        f,
    })
}

fn term_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?P<k>[+-]?\d*)\*?(?P<x>x\^2|x)?$").expect("valid regex"))
}

pub fn parse_poly(s: &str) -> Result<[BigInt; 3]> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut terms = Vec::new();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    for t in terms {
        let m = term_regex()
            .captures(t)
            .ok_or_else(|| Error::Parse(format!("bad polynomial term {t:?} in {s:?}")))?;
        let k = match &m["k"] {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            k => int(k)?,
        };
        let slot = match m.name("x").map(|x| x.as_str()) {
            Some("x^2") => 0,
            Some(_) => 1,
            None if m["k"].trim_start_matches(['+', '-']).is_empty() => {
                return Err(Error::Parse(format!("bad polynomial term {t:?}")))
            }
            None => 2,
        };
        coeffs[slot] += k;
    }
    if coeffs[0].is_zero() {
        return Err(Error::Parse(format!("{s:?} is not quadratic")));
    }
    Ok(coeffs)
}

pub fn parse_number(s: &str) -> Result<NumberSpec> {
    if s.contains("sqrt") {
        parse_surd(s).map(NumberSpec::Surd)
    } else if s.contains('x') {
        parse_poly(s).map(NumberSpec::Poly)
    } else {
        parse_rational(s).map(NumberSpec::Rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-7/3").unwrap(), BigRational::new(b(-7), b(3)));
        assert_eq!(parse_rational("4").unwrap(), BigRational::from_integer(b(4)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn surds() {
        let s = parse_surd("(1+5*sqrt(2))/(1*7^1)").unwrap();
        assert_eq!((s.b, s.u, s.disc, s.c, s.base, s.f), (b(1), b(5), b(2), b(1), Some(b(7)), 1));
        let s = parse_surd("(17-13*sqrt(2))/(1*7^1)").unwrap();
        assert_eq!((s.b, s.u), (b(17), b(-13)));
        let s = parse_surd("(0+sqrt(13))/(1*3^0)").unwrap();
        assert_eq!((s.b, s.u, s.f), (b(0), b(1), 0));
        let s = parse_surd("(-7-sqrt(13))/(-1*3^-1)").unwrap();
        assert_eq!((s.b, s.u, s.c, s.f), (b(-7), b(-1), b(-1), -1));
        assert_eq!(parse_surd("sqrt(37)").unwrap().disc, b(37));
        assert!(parse_surd("(1+sqrt(13))/3").is_err());
        let l = Prime::new(5).unwrap();
        assert!(parse_surd("(1+sqrt(11))/(1*3^1)").unwrap().build(&l, &b(1)).is_err());
    }

    #[test]
    fn polys() {
        assert_eq!(parse_poly("x^2-13").unwrap(), [b(1), b(0), b(-13)]);
        assert_eq!(parse_poly("3x^2 + 4*x - 1").unwrap(), [b(3), b(4), b(-1)]);
        assert_eq!(parse_poly("-x^2+x").unwrap(), [b(-1), b(1), b(0)]);
        assert!(parse_poly("x-1").is_err());
        assert!(parse_poly("x^3").is_err());
    }

    #[test]
    fn dispatch() {
        assert!(matches!(parse_number("5/6").unwrap(), NumberSpec::Rational(_)));
        assert!(matches!(parse_number("x^2-13").unwrap(), NumberSpec::Poly(_)));
        assert!(matches!(parse_number("sqrt(13)").unwrap(), NumberSpec::Surd(_)));
    }
}
