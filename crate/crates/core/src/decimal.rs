//! Certified decimal values.
//!
//! A [`Decimal`] stores `m` and `e` such that the true magnitude lies in
//! `[m·10^e, (m+1)·10^e)`. Every digit of `m` is therefore exact, and
//! rounding only happens on display.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{iroot_floor, ln_ratio, pow10};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub negative: bool,
    pub mantissa: BigUint,
    pub exp10: i64,
}

impl Decimal {
    pub fn zero() -> Self {
        Decimal {
            negative: false,
            mantissa: BigUint::zero(),
            exp10: 0,
        }
    }

    /// `(num/den)^(1/k)` truncated to about `digits` significant digits.
    pub fn root_of_ratio(num: &BigUint, den: &BigUint, k: u64, digits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(k >= 1);
        if num.is_zero() {
            return Decimal::zero();
        }
        let log10 = ln_ratio(num, den) / k as f64 / std::f64::consts::LN_10;
        let exp10 = log10.floor() as i64 - i64::from(digits) + 1;
        // floor(x^(1/k)) = floor(floor(x)^(1/k)) for x >= 0
        let shift = -(exp10 as i128) * k as i128;
        let scaled = if shift >= 0 {
            num * pow10(shift as u64) / den
        } else {
            num / (den * pow10(shift.unsigned_abs() as u64))
        };
        Decimal {
            negative: false,
            mantissa: iroot_floor(&scaled, k),
            exp10,
        }
    }

    /// A non-negative rational truncated to about `digits` significant digits.
    pub fn of_ratio(num: &BigUint, den: &BigUint, digits: u32) -> Self {
        Decimal::root_of_ratio(num, den, 1, digits)
    }

    /// A signed rational truncated toward zero.
    pub fn of_rational(x: &BigRational, digits: u32) -> Self {
        let mut d = Decimal::of_ratio(x.numer().magnitude(), x.denom().magnitude(), digits);
        d.negative = x.is_negative() && !d.mantissa.is_zero();
        d
    }

    /// Decimal from an already-scaled mantissa: the value `m·10^e` truncated.
    pub fn from_parts(negative: bool, mantissa: BigUint, exp10: i64) -> Self {
        Decimal {
            negative,
            mantissa,
            exp10,
        }
    }

    fn scaled(&self, m: &BigUint) -> BigRational {
        let m = BigInt::from_biguint(
            if self.negative { Sign::Minus } else { Sign::Plus },
            m.clone(),
        );
        if self.exp10 >= 0 {
            BigRational::from_integer(m * BigInt::from(pow10(self.exp10 as u64)))
        } else {
            BigRational::new(m, BigInt::from(pow10(self.exp10.unsigned_abs())))
        }
    }

    /// Truncated value as an exact rational (closer to zero than the truth).
    pub fn truncated(&self) -> BigRational {
        self.scaled(&self.mantissa)
    }

    /// Smallest and largest values the truth may take.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        let a = self.scaled(&self.mantissa);
        let b = self.scaled(&(&self.mantissa + 1u32));
        if self.negative {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Width of one unit in the last certified place.
    pub fn ulp(&self) -> BigRational {
        if self.exp10 >= 0 {
            BigRational::from_integer(BigInt::from(pow10(self.exp10 as u64)))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(pow10(self.exp10.unsigned_abs())))
        }
    }

    /// Number of digits in the mantissa.
    pub fn significant_digits(&self) -> usize {
        if self.mantissa.is_zero() {
            0
        } else {
            self.mantissa.to_str_radix(10).len()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let s = format!(
            "{}{}e{}",
            if self.negative { "-" } else { "" },
            self.mantissa,
            self.exp10
        );
        s.parse().unwrap_or(f64::NAN)
    }

    /// Truncated to `sig` significant digits (a prefix of the certified digits).
    pub fn truncate_sig(&self, sig: usize) -> Decimal {
        let len = self.significant_digits();
        if len <= sig {
            return self.clone();
        }
        let drop = (len - sig) as u64;
        Decimal {
            negative: self.negative,
            mantissa: &self.mantissa / pow10(drop),
            exp10: self.exp10 + drop as i64,
        }
    }

    /// Rounded half-up to `sig` significant digits.
    pub fn round_sig(&self, sig: usize) -> Decimal {
        let len = self.significant_digits();
        if len <= sig || sig == 0 {
            return self.clone();
        }
        let drop = (len - sig) as u64;
        let p = pow10(drop);
        let mut m = &self.mantissa / &p;
        let mut exp10 = self.exp10 + drop as i64;
        if (&self.mantissa % &p) * 2u32 >= p {
            m += 1u32;
            if m.to_str_radix(10).len() > sig {
                m /= 10u32;
                exp10 += 1;
            }
        }
        Decimal {
            negative: self.negative,
            mantissa: m,
            exp10,
        }
    }

    /// Compare the certified prefix with a decimal literal.
    ///
    /// True when the literal's digits agree with this value truncated or
    /// rounded to the same number of decimal places.
    pub fn matches_literal(&self, literal: &str) -> bool {
        let Ok(target) = literal.parse::<Decimal>() else {
            return false;
        };
        if target.exp10 < self.exp10 {
            return false;
        }
        let drop = (target.exp10 - self.exp10) as u64;
        let p = pow10(drop);
        let trunc = &self.mantissa / &p;
        let rounded = if (&self.mantissa % &p) * 2u32 >= p {
            &trunc + 1u32
        } else {
            trunc.clone()
        };
        self.negative == target.negative && (trunc == target.mantissa || rounded == target.mantissa)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.is_zero() {
            return write!(f, "0");
        }
        let digits = self.mantissa.to_str_radix(10);
        let sign = if self.negative { "-" } else { "" };
        let point = digits.len() as i64 + self.exp10;
        if !(-5..=40).contains(&point) {
            let (head, tail) = digits.split_at(1);
            let tail = tail.trim_end_matches('0');
            let exp = point - 1;
            return if tail.is_empty() {
                write!(f, "{sign}{head}e{exp}")
            } else {
                write!(f, "{sign}{head}.{tail}e{exp}")
            };
        }
        if self.exp10 >= 0 {
            return write!(f, "{sign}{digits}{}", "0".repeat(self.exp10 as usize));
        }
        let (int_part, frac) = if point <= 0 {
            ("0".to_string(), format!("{}{}", "0".repeat((-point) as usize), digits))
        } else {
            let (a, b) = digits.split_at(point as usize);
            (a.to_string(), b.to_string())
        };
        write!(f, "{sign}{int_part}.{frac}")
    }
}

impl FromStr for Decimal {
    type Err = crate::error::Error;

    /// Parses a plain or scientific literal as an exact mantissa/exponent pair.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| crate::error::Error::parse(s, why);
        let t = s.trim();
        let (negative, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (body, exp) = match t.find(['e', 'E']) {
            Some(i) => (
                &t[..i],
                t[i + 1..].parse::<i64>().map_err(|_| bad("bad exponent"))?,
            ),
            None => (t, 0),
        };
        let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
        let all = format!("{int_part}{frac}");
        if all.is_empty() || !all.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("not a decimal literal"));
        }
        let mantissa: BigUint = all.parse().map_err(|_| bad("bad digits"))?;
        Ok(Decimal {
            negative,
            mantissa,
            exp10: exp - frac.len() as i64,
        })
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(crate::arith::cmp_rational(&self.truncated(), &other.truncated()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_digits() {
        let d = Decimal::root_of_ratio(&BigUint::from(2u32), &BigUint::one(), 2, 30);
        assert_eq!(d.to_string(), "1.41421356237309504880168872420");
        assert!(d.matches_literal("1.41421356"));
        assert!(d.matches_literal("1.414213562373095"));
        assert!(!d.matches_literal("1.41421357"));
    }

    #[test]
    fn enclosure_contains_truth() {
        let d = Decimal::of_ratio(&BigUint::from(1u32), &BigUint::from(3u32), 10);
        let third = BigRational::new(1.into(), 3.into());
        let (lo, hi) = d.enclosure();
        assert!(lo <= third && third < hi);
        assert_eq!(d.to_string(), "0.3333333333");
    }

    #[test]
    fn display_forms() {
        let d: Decimal = "1.5e50".parse().unwrap();
        assert_eq!(d.to_string(), "1.5e50");
        let d: Decimal = "0.000012".parse().unwrap();
        assert_eq!(d.to_string(), "0.000012");
        let d: Decimal = "1200".parse().unwrap();
        assert_eq!(d.to_string(), "1200");
        assert_eq!(d.to_f64(), 1200.0);
    }

    #[test]
    fn rounding() {
        let d: Decimal = "2.6854520010653".parse().unwrap();
        assert_eq!(d.round_sig(8).to_string(), "2.6854520");
        assert_eq!(d.truncate_sig(3).to_string(), "2.68");
        let e: Decimal = "0.99996".parse().unwrap();
        assert_eq!(e.round_sig(4).to_string(), "1.000");
    }

    #[test]
    fn large_root_is_exact_floor() {
        let a = BigUint::from(7u32).pow(300);
        let d = Decimal::root_of_ratio(&a, &BigUint::one(), 300, 25);
        assert_eq!(d.to_string(), "7.000000000000000000000000");
    }
}
