//! Big-integer helpers shared by the numeric modules.

use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r *= n - i;
        r /= i + 1;
    }
    r
}

/// All of `C(n, 0), ..., C(n, kmax)`.
pub fn binomial_row(n: u64, kmax: u64) -> Vec<BigUint> {
    let kmax = kmax.min(n);
    let mut row = Vec::with_capacity(kmax as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for i in 0..kmax {
        c *= n - i;
        c /= i + 1;
        row.push(c.clone());
    }
    row
}

/// `10^e` as a big integer.
pub fn pow10(e: u64) -> BigUint {
    let e = u32::try_from(e).expect("decimal exponent exceeds u32");
    BigUint::from(10u32).pow(e)
}

/// Natural logarithm of a positive big integer, accurate to a few ulps of
/// the result regardless of the integer's size.
pub fn ln_biguint(a: &BigUint) -> f64 {
    assert!(!a.is_zero(), "ln of zero");
    let bits = a.bits();
    if bits <= 1000 {
        return a.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 64;
    let top = (a >> shift).to_u64().expect("64 top bits");
    (top as f64).ln() + shift as f64 * LN_2
}

/// `ln(num / den)` for positive integers.
pub fn ln_ratio(num: &BigUint, den: &BigUint) -> f64 {
    ln_biguint(num) - ln_biguint(den)
}

/// Floating value of an exact rational, saturating to `0` or `±inf` only when
/// the value itself lies outside the `f64` range.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let Some(v) = x.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    sign * ln_ratio(num, den).exp()
}

/// Largest integer `r` with `r^k <= a`.
pub fn iroot_floor(a: &BigUint, k: u64) -> BigUint {
    assert!(k >= 1, "root degree must be positive");
    if a.is_zero() || k == 1 {
        return a.clone();
    }
    if a.bits() <= k {
        // 1 <= a < 2^k
        return BigUint::one();
    }
    let k32 = u32::try_from(k).expect("root degree exceeds u32");
    let log2_root = ln_biguint(a) / LN_2 / k as f64;
    let mut x = root_guess(log2_root);
    // Newton from above needs a starting point at or past the true root.
    let mut bump = 30u32;
    while &x.pow(k32) <= a {
        x += (&x >> bump) + 1u32;
        bump = bump.saturating_sub(4).max(1);
    }
    let km1 = k - 1;
    loop {
        let q = a / x.pow(k32 - 1);
        let y = (&x * km1 + q) / k;
        if y >= x {
            break;
        }
        x = y;
    }
    x
}

fn root_guess(log2_root: f64) -> BigUint {
    let inflate = 1.0 + 1e-9;
    if log2_root < 60.0 {
        let v = (log2_root.exp2() * inflate).ceil() + 1.0;
        return BigUint::from(v as u128);
    }
    let e = log2_root.floor() as u64 - 52;
    let m = ((log2_root - e as f64).exp2() * inflate).ceil();
    (BigUint::from(m as u128) + 1u32) << e
}

/// Exact value of a decimal literal such as `0.1415`, `-2.5e-3` or `1e-10`.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = |why: &str| Error::parse(text, why);
    let s = text.trim();
    let (negative, s) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad("bad exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("no digits"));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad("non-digit character"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = if digits.is_empty() {
        BigUint::zero()
    } else {
        digits.parse::<BigUint>().map_err(|_| bad("bad digits"))?
    };
    let scale = exponent - frac_part.len() as i64;
    let mut den = BigUint::one();
    if scale >= 0 {
        num *= pow10(scale as u64);
    } else {
        den = pow10(scale.unsigned_abs());
    }
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    Ok(BigRational::new(
        BigInt::from_biguint(sign, num),
        BigInt::from(den),
    ))
}

/// `x` as a `u64`-backed exact fraction parser: accepts `p/q` or a decimal.
pub fn parse_fraction(text: &str) -> Result<BigRational> {
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::parse(text, "bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::parse(text, "bad denominator"))?;
        if q.is_zero() {
            return Err(Error::parse(text, "zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(text)
}

/// Magnitude of a non-negative rational as a pair of unsigned integers.
pub(crate) fn unsigned_parts(x: &BigRational) -> (BigUint, BigUint) {
    debug_assert!(!x.is_negative());
    (x.numer().magnitude().clone(), x.denom().magnitude().clone())
}

/// Orders two rationals by cross-multiplication.
///
/// `Ord` on `Ratio` recurses once per continued-fraction digit, which
/// overflows the stack on the large endpoints used here.
pub fn cmp_rational(a: &BigRational, b: &BigRational) -> std::cmp::Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(10, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::zero());
        let row = binomial_row(6, 6);
        let expect: Vec<BigUint> = [1u32, 6, 15, 20, 15, 6, 1].iter().map(|&v| v.into()).collect();
        assert_eq!(row, expect);
    }

    #[test]
    fn iroot_exact_and_boundaries() {
        for k in 1..12u64 {
            for r in [1u64, 2, 3, 10, 977, 123_456_789] {
                let p = BigUint::from(r).pow(k as u32);
                assert_eq!(iroot_floor(&p, k), BigUint::from(r));
                if r > 1 {
                    assert_eq!(iroot_floor(&(p - 1u32), k), BigUint::from(r - 1));
                }
            }
        }
    }

    #[test]
    fn iroot_large_degree() {
        let r = BigUint::parse_bytes(b"35508312642208666735184037083", 10).unwrap();
        let a = r.pow(2500) + 12345u32;
        assert_eq!(iroot_floor(&a, 2500), r);
    }

    #[test]
    fn ln_of_huge_integer() {
        let a = BigUint::from(3u32).pow(100_000);
        let expect = 100_000.0 * 3f64.ln();
        assert!((ln_biguint(&a) - expect).abs() < 1e-9);
    }

    #[test]
    fn decimal_literals() {
        let v = parse_decimal("0.1415926535").unwrap();
        assert_eq!(v, BigRational::new(1415926535.into(), 10_000_000_000u64.into()));
        assert_eq!(parse_decimal("1e-10").unwrap(), BigRational::new(1.into(), 10_000_000_000u64.into()));
        assert_eq!(parse_decimal("-2.5E1").unwrap(), BigRational::from_integer((-25).into()));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
        assert_eq!(parse_fraction("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
    }
}
