//! Small helpers around `BigRational`: parsing, integer powers, and exact
//! evaluation of `d^(p/q)` when it happens to be rational.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest exponent numerator/denominator for which exact power comparisons
/// are attempted. Beyond it callers fall back to logarithms.
pub(crate) const MAX_EXACT_EXPONENT: u64 = 4096;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any integer exponent. Panics on `0^negative`.
pub fn powi(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        Pow::pow(base.clone(), exp as u64)
    } else {
        Pow::pow(base.recip(), exp.unsigned_abs())
    }
}

/// `2^exp` as an exact rational; negative exponents give `1/2^|exp|`.
pub fn pow2(exp: i64) -> BigRational {
    powi(&int(2), exp)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact value of `base^exponent` for a positive integer base, when rational.
///
/// With `exponent = p/q` in lowest terms this is rational iff `base` is a
/// perfect `q`-th power.
pub fn exact_power(base: u64, exponent: &BigRational) -> Option<BigRational> {
    if base == 0 {
        return None;
    }
    let q = exponent.denom().to_u64()?;
    let p = exponent.numer().to_i64()?;
    if q > MAX_EXACT_EXPONENT || p.unsigned_abs() > MAX_EXACT_EXPONENT {
        return None;
    }
    let big = BigUint::from(base);
    let root = big.nth_root(q as u32);
    if Pow::pow(&root, q as u32) != big {
        return None;
    }
    let root = BigRational::from_integer(BigInt::from(root));
    Some(powi(&root, p))
}

/// `base^exponent` in double precision, preferring the exact value when one exists.
pub fn power_f64(base: u64, exponent: &BigRational) -> f64 {
    match exact_power(base, exponent) {
        Some(x) => to_f64(&x),
        None => (base as f64).powf(to_f64(exponent)),
    }
}

/// Parses `"3"`, `"-7/4"`, `"0.25"` or `"1e-6"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, fractional) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fractional.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(fractional.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("{whole}{fractional}").parse().map_err(|_| bad())?;
    let scale = exp10 - fractional.len() as i64;
    let mut value = BigRational::from_integer(all) * powi(&int(10), scale);
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Shortest readable form: integers print without a denominator.
pub fn display(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a double with 17 significant digits, enough to round-trip any value.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
