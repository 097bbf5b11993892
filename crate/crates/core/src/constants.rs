//! Metric constants of continued fractions.
//!
//! Every constant is a series `Σ_r f(r) h(r)` with `h(r) = ln(1 + 1/(r(r+2)))`.
//! The sum is taken directly up to a cutoff `R` and the rest is estimated
//! from the expansion `h(r) = Σ_{j≥2} a_j r^{-j}`, `a_j = (-1)^j (2^j-2)/j`.
//! Since each summand decreases, the true tail lies between the integrals
//! from `R+1` and from `R`. The midpoint is used, and the error is bounded
//! by half the first omitted term.

use std::f64::consts::LN_2;

use num_bigint::BigUint;

use crate::error::{Error, Result};

const EXPANSION_TERMS: usize = 12;
const MIN_CUTOFF: u64 = 1000;
const MAX_CUTOFF: u64 = 1 << 27;

/// A constant with the tolerance asked for and a bound on the actual error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantValue {
    pub value: f64,
    pub tol: f64,
    pub terms_used: u64,
    pub error_bound: f64,
}

/// Neumaier summation.
#[derive(Clone, Copy, Debug, Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// `ln(1 + 1/(r(r+2)))`.
pub fn h(r: f64) -> f64 {
    (1.0 / (r * (r + 2.0))).ln_1p()
}

fn expansion_coeff(j: usize) -> f64 {
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    sign * (2f64.powi(j as i32) - 2.0) / j as f64
}

/// Which weight multiplies `h(r)`.
#[derive(Clone, Copy, Debug)]
enum Weight {
    /// `ln r`
    Log,
    /// `r^p - 1`
    PowerMinusOne(f64),
}

impl Weight {
    fn at(self, r: f64) -> f64 {
        match self {
            Weight::Log => r.ln(),
            Weight::PowerMinusOne(p) => (p * r.ln()).exp_m1(),
        }
    }

    /// `∫_x^∞ w(t) t^{-j} dt` for `j ≥ 2`.
    fn integral(self, x: f64, j: usize) -> f64 {
        let j1 = j as f64 - 1.0;
        match self {
            Weight::Log => x.powf(-j1) * (x.ln() / j1 + 1.0 / (j1 * j1)),
            Weight::PowerMinusOne(p) => x.powf(p - j1) / (j1 - p) - x.powf(-j1) / j1,
        }
    }

    /// Upper bound on `|w(r) h(r)|` for `r ≥ x`.
    fn envelope(self, x: f64) -> f64 {
        match self {
            Weight::Log => x.ln() / (x * x),
            // |r^p - 1| <= |p| ln r · max(1, r^p), and h(r) <= 1/r²
            Weight::PowerMinusOne(p) => {
                if p > 0.0 {
                    p * x.ln() * x.powf(p - 2.0)
                } else {
                    (p.abs() * x.ln()).min(1.0) / (x * x)
                }
            }
        }
    }
}

/// `Σ_r w(r) h(r) / ln 2`, with error bound, for a cutoff chosen from `tol`.
fn weighted_series(weight: Weight, tol: f64) -> Result<(f64, u64, f64)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let target = tol / 10.0;
    let mut cutoff = MIN_CUTOFF;
    while weight.envelope(cutoff as f64) / (2.0 * LN_2) > target {
        cutoff *= 2;
        if cutoff > MAX_CUTOFF {
            return Err(Error::PrecisionExhausted {
                certified: 0,
                requested: (-tol.log10()).ceil() as usize,
            });
        }
    }
    let mut sum = Sum::default();
    for r in 1..=cutoff {
        let rf = r as f64;
        sum.add(weight.at(rf) * h(rf));
    }
    let rf = cutoff as f64;
    let mut tail = Sum::default();
    for j in 2..=EXPANSION_TERMS {
        let a = expansion_coeff(j);
        let mid = 0.5 * (weight.integral(rf, j) + weight.integral(rf + 1.0, j));
        tail.add(a * mid);
    }
    sum.add(tail.value());
    let truncation = expansion_coeff(EXPANSION_TERMS + 1).abs()
        * weight.integral(rf, EXPANSION_TERMS + 1).abs();
    let midpoint = weight.envelope(rf) / 2.0;
    let rounding = 4.0 * f64::EPSILON * sum.value().abs().max(1.0);
    Ok((
        sum.value() / LN_2,
        cutoff,
        (midpoint + truncation) / LN_2 + rounding,
    ))
}

/// Khinchin's constant `Π_r (1 + 1/(r(r+2)))^{log2 r}`.
pub fn khinchin_k0(tol: f64) -> Result<ConstantValue> {
    let (log_k0, terms, err) = weighted_series(Weight::Log, tol)?;
    let value = log_k0.exp();
    Ok(ConstantValue {
        value,
        tol,
        terms_used: terms,
        error_bound: value * err * 1.01,
    })
}

/// Hölder-mean constant `(Σ_r -r^p log2(1 - 1/(r+1)²))^{1/p}` for `p < 1`, `p ≠ 0`.
///
/// Evaluated as `(1 + W)^{1/p}` with `W = Σ (r^p - 1) h(r)/ln 2`, which keeps
/// full precision as `p` approaches zero.
pub fn holder_kp(p: f64, tol: f64) -> Result<ConstantValue> {
    if !(p < 1.0) {
        return Err(Error::InvalidInput(format!("p = {p}: series diverges for p >= 1")));
    }
    if p == 0.0 {
        return Err(Error::InvalidInput("p = 0 is Khinchin's constant; use khinchin_k0".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    // an error dW moves K_p by about K_p·dW/(|p|(1+W))
    let weight = Weight::PowerMinusOne(p);
    let (w0, _, _) = weighted_series(weight, 1e-3)?;
    let k_rough = (w0.ln_1p() / p).exp();
    let w_tol = tol * p.abs() * (1.0 + w0) / (2.0 * k_rough);
    let (w, terms, err) = weighted_series(weight, w_tol)?;
    let value = (w.ln_1p() / p).exp();
    let error_bound = value * err / (p.abs() * (1.0 + w)) * 1.01;
    Ok(ConstantValue {
        value,
        tol,
        terms_used: terms,
        error_bound,
    })
}

/// `P(a = k) = log2(1 + 1/(k(k+2)))` with the exact ratio `(k+1)²/(k(k+2))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussKuzmin {
    pub k: u64,
    pub ratio_num: BigUint,
    pub ratio_den: BigUint,
    pub value: f64,
}

pub fn gauss_kuzmin_pmf(k: u64) -> Result<GaussKuzmin> {
    if k == 0 {
        return Err(Error::InvalidInput("Gauss-Kuzmin law starts at k = 1".into()));
    }
    let kb = BigUint::from(k);
    Ok(GaussKuzmin {
        k,
        ratio_num: (&kb + 1u32) * (&kb + 1u32),
        ratio_den: &kb * (&kb + 2u32),
        value: h(k as f64) / LN_2,
    })
}

/// `⌊P(a = k) · n⌋`, decided exactly: the largest `m` with `2^m b^n ≤ a^n`.
pub fn gauss_kuzmin_floor(k: u64, n: u64) -> Result<u64> {
    let gk = gauss_kuzmin_pmf(k)?;
    let n32 = u32::try_from(n).map_err(|_| Error::InvalidInput("n too large".into()))?;
    let lhs = gk.ratio_num.pow(n32);
    let rhs = gk.ratio_den.pow(n32);
    let fits = |m: u64| (&rhs << m) <= lhs;
    let mut m = (gk.value * n as f64).floor().max(0.0) as u64;
    while m > 0 && !fits(m) {
        m -= 1;
    }
    while fits(m + 1) {
        m += 1;
    }
    Ok(m)
}

/// `Σ_{k=1..n} P(a = k) = 1 - log2(1 + 1/(n+1))`, summed term by term.
pub fn gauss_kuzmin_mass(n: u64) -> f64 {
    let mut sum = Sum::default();
    for k in 1..=n {
        sum.add(h(k as f64) / LN_2);
    }
    sum.value()
}

/// `K0^{1/c} · K_{-1}^{1 - 1/c}` and the weaker `K0^{1/c}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimsupBounds {
    pub c: f64,
    pub improved: f64,
    pub baby: f64,
}

pub fn limsup_upper_bound(c: f64, tol: f64) -> Result<LimsupBounds> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidInput(format!("c = {c} must lie in (0,1)")));
    }
    let k0 = khinchin_k0(tol)?.value;
    let km1 = holder_kp(-1.0, tol)?.value;
    Ok(LimsupBounds {
        c,
        improved: k0.powf(1.0 / c) * km1.powf(1.0 - 1.0 / c),
        baby: k0.powf(1.0 / c),
    })
}
