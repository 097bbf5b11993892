//! Exact values of eventually periodic continued fractions.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::pow10;
use crate::cf::AlphaSpec;
use crate::decimal::Decimal;
use crate::error::{Error, Result};

/// `(a + b·√D) / c` with `c > 0` and `D` not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdValue {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigUint,
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "({}{}{}√{})/{}", self.a, sign, self.b.magnitude(), self.d, self.c)
    }
}

impl SurdValue {
    /// Builds and normalizes `(a + b√D)/c`, pulling small square factors out of `D`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigUint) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidInput("zero denominator in surd".into()));
        }
        let (f, d) = split_square(d);
        if d.is_one() || d.is_zero() {
            return Err(Error::InvalidInput("radicand is a perfect square".into()));
        }
        let mut s = SurdValue {
            a,
            b: b * BigInt::from(f),
            c,
            d,
        };
        s.normalize();
        Ok(s)
    }

    fn normalize(&mut self) {
        if self.c.is_negative() {
            self.a = -&self.a;
            self.b = -&self.b;
            self.c = -&self.c;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_zero() && !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
    }

    /// Same real number, even when the radicands carry different square factors.
    pub fn same_value(&self, other: &SurdValue) -> bool {
        let lhs_rat = &self.a * &other.c;
        let rhs_rat = &other.a * &self.c;
        if lhs_rat != rhs_rat || self.b.sign() != other.b.sign() {
            return false;
        }
        let lhs = (&self.b * &other.c).pow(2) * BigInt::from(self.d.clone());
        let rhs = (&other.b * &self.c).pow(2) * BigInt::from(other.d.clone());
        lhs == rhs
    }

    /// Integer quadratic `[p2, p1, p0]` with `p2·x² + p1·x + p0 = 0`, content removed.
    pub fn minimal_polynomial(&self) -> [BigInt; 3] {
        let d = BigInt::from(self.d.clone());
        let p2 = &self.c * &self.c;
        let p1 = BigInt::from(-2) * &self.a * &self.c;
        let p0 = &self.a * &self.a - &self.b * &self.b * d;
        let g = p2.gcd(&p1).gcd(&p0);
        [p2 / &g, p1 / &g, p0 / &g]
    }

    /// Evaluates `p2·x² + p1·x + p0` exactly; returns the rational and `√D`
    /// parts of `c²` times the result.
    pub fn eval_quadratic(&self, poly: &[BigInt; 3]) -> (BigInt, BigInt) {
        let d = BigInt::from(self.d.clone());
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let rational = &poly[0] * (a * a + b * b * &d) + &poly[1] * c * a + &poly[2] * c * c;
        let irrational = &poly[0] * BigInt::from(2) * a * b + &poly[1] * c * b;
        (rational, irrational)
    }

    /// `floor(value·10^p·c)` and that plus one, bracketing the scaled value.
    fn scaled_bounds(&self, p: u64) -> (BigInt, BigInt) {
        let scale = pow10(p);
        let rad = self.b.magnitude() * self.b.magnitude() * &self.d * &scale * &scale;
        let s = BigInt::from(rad.sqrt());
        let base = &self.a * BigInt::from(scale);
        if self.b.is_negative() {
            (&base - &s - 1, base - s)
        } else {
            (&base + &s, base + s + 1)
        }
    }

    /// Exact rational enclosure of width at most `2·10^-p`.
    pub fn enclosure(&self, p: u64) -> (BigRational, BigRational) {
        let (lo, hi) = self.scaled_bounds(p);
        let den = &self.c * BigInt::from(pow10(p));
        (BigRational::new(lo, den.clone()), BigRational::new(hi, den))
    }

    /// True when the value is below zero.
    pub fn is_negative(&self) -> bool {
        let d = BigInt::from(self.d.clone());
        let rad = &self.b * &self.b * d;
        let sq = &self.a * &self.a;
        match (self.a.is_negative(), self.b.is_negative()) {
            (false, false) => false,
            (true, true) => true,
            (true, false) => rad < sq,
            (false, true) => rad > sq,
        }
    }

    /// Certified decimal with `places` digits after the point.
    pub fn decimal(&self, places: u64) -> Decimal {
        if self.is_negative() {
            let mut m = self.clone();
            m.a = -m.a;
            m.b = -m.b;
            let mut d = m.decimal(places);
            d.negative = !d.mantissa.is_zero();
            return d;
        }
        // floor(x·10^p) = floor(floor(c·x·10^p) / c), and the inner floor is
        // exact because b√D is irrational
        let (lo, _) = self.scaled_bounds(places);
        let m = lo.div_floor(&self.c);
        Decimal::from_parts(false, m.magnitude().clone(), -(places as i64))
    }

    pub fn to_f64(&self) -> f64 {
        self.decimal(20).to_f64()
    }

    /// `DecimalInterval` spec enclosing this value to `places` digits.
    pub fn as_interval(&self, places: u64, label: &str) -> AlphaSpec {
        let (lo, hi) = self.enclosure(places);
        AlphaSpec::DecimalInterval {
            lo,
            hi,
            label: label.to_string(),
        }
    }
}

/// Writes `n = f²·m` pulling out square factors of primes below a bound and a
/// final perfect square if one remains.
fn split_square(n: BigUint) -> (BigUint, BigUint) {
    let mut f = BigUint::one();
    let mut m = n;
    if m.is_zero() {
        return (f, m);
    }
    let r = m.sqrt();
    if &r * &r == m {
        return (r, BigUint::one());
    }
    let mut p = 2u64;
    while p < 20_000 {
        let pp = BigUint::from(p * p);
        if pp > m {
            break;
        }
        while (&m % &pp).is_zero() {
            m /= &pp;
            f *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = m.sqrt();
    if &r * &r == m {
        return (f * r, BigUint::one());
    }
    (f, m)
}

/// Möbius product `[[P, Q], [R, S]]` of `y ↦ 1/(a + y)` over the digits.
fn period_matrix(period: &[u64]) -> [BigInt; 4] {
    let (mut p, mut q, mut r, mut s) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for &a in period {
        // [[p,q],[r,s]] · [[0,1],[1,a]]
        let a = BigInt::from(a);
        let np = q.clone();
        let nq = &p + &q * &a;
        let nr = s.clone();
        let ns = &r + &s * &a;
        p = np;
        q = nq;
        r = nr;
        s = ns;
    }
    [p, q, r, s]
}

/// Fixed-point quadratic `R x² + (S − P) x − Q` of one period.
pub fn period_quadratic(period: &[u64]) -> [BigInt; 3] {
    let [p, q, r, s] = period_matrix(period);
    [r, s - p, -q]
}

/// Exact value of `[preperiod, period, period, ...]`.
pub fn surd_value(preperiod: &[u64], period: &[u64]) -> Result<SurdValue> {
    AlphaSpec::periodic(preperiod, period)?;
    let [p, q, r, s] = period_matrix(period);
    let diff = &p - &s;
    let disc = &diff * &diff + BigInt::from(4) * &q * &r;
    let disc = disc
        .to_biguint()
        .ok_or_else(|| Error::Internal("negative discriminant".into()))?;
    let mut x = SurdValue::new(diff, BigInt::one(), BigInt::from(2) * r, disc)?;
    for &digit in preperiod.iter().rev() {
        // 1/(digit + x) = c(A − b√D)/(A² − b²D), A = digit·c + a
        let d = BigInt::from(x.d.clone());
        let big_a = BigInt::from(digit) * &x.c + &x.a;
        let den = &big_a * &big_a - &x.b * &x.b * d;
        x = SurdValue {
            a: &x.c * &big_a,
            b: -(&x.c * &x.b),
            c: den,
            d: x.d,
        };
        x.normalize();
    }
    let v = x.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Internal(format!("surd {x} not in (0,1)")));
    }
    Ok(x)
}

/// Convenience for a spec that must be periodic.
pub fn surd_of_spec(spec: &AlphaSpec) -> Result<SurdValue> {
    match spec {
        AlphaSpec::PeriodicCf { preperiod, period } => surd_value(preperiod, period),
        other => Err(Error::InvalidInput(format!("{} is not periodic", other.label()))),
    }
}
