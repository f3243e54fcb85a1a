use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {input:?} as an exact rational: {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `"3"`, `"-1/137"`, `"0.25"`, `"1e-8"` or `"2.5e3"` into an exact rational.
///
/// Decimal and exponent forms are read digit by digit, so `"0.1"` is exactly
/// `1/10` rather than the nearest double.
pub fn parse_rational(input: &str) -> Result<Rational, RationalParseError> {
    let s = input.trim();
    let err = |reason| RationalParseError {
        input: input.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err("no digits"));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    let all: BigInt = format!("{whole}{frac}0")
        .parse::<BigInt>()
        .map_err(|_| err("bad digits"))?
        / BigInt::from(10);
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(all);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Nearest double; exact for dyadic rationals in range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Very large numerator or denominator: shift both down first.
    let bits = q.numer().bits().max(q.denom().bits()) as i64 - 900;
    let shift = bits.max(0) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

/// Exact square root of a rational that is a perfect square.
pub(crate) fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
