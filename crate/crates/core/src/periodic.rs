//! Symmetric means of periodic sequences.
//!
//! `F_X(k, c)` is the symmetric mean of `k` full periods at degree
//! `⌈c·kL⌉`. Because only multiplicities change with `k`, it is evaluated
//! with the multiplicity kernel on a table with `L` rows.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, cmp_rational, parse_fraction, unsigned_parts};
use crate::constants::gauss_kuzmin_floor;
use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::surd::SurdValue;
use crate::symmetric::{esp_multiplicity, mean_root, CeilPolicy, MultiplicityTable};

/// One period of a periodic sequence of positive rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSeq {
    pub period: Vec<BigRational>,
}

impl PeriodicSeq {
    pub fn new(period: Vec<BigRational>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("empty period".into()));
        }
        if period.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidInput("period entries must be positive".into()));
        }
        Ok(PeriodicSeq { period })
    }

    pub fn from_digits(digits: &[u64]) -> Result<Self> {
        PeriodicSeq::new(
            digits
                .iter()
                .map(|&d| BigRational::from_integer(d.into()))
                .collect(),
        )
    }

    /// Parses a comma-separated list such as `1,2` or `1/2,3,0.5`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(parse_fraction)
            .collect::<Result<Vec<_>>>()?;
        PeriodicSeq::new(values)
    }

    pub fn len(&self) -> usize {
        self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        self.period.is_empty()
    }

    /// Multiplicity table of `k` periods.
    pub fn table(&self, k: u64) -> Result<MultiplicityTable> {
        let pairs: Vec<(BigRational, u64)> = self.period.iter().map(|x| (x.clone(), 1)).collect();
        let mut t = MultiplicityTable::from_pairs(&pairs)?;
        for e in &mut t.entries {
            e.mult *= k;
        }
        t.total *= k;
        Ok(t)
    }

    pub fn arithmetic_mean(&self) -> BigRational {
        let sum: BigRational = self.period.iter().cloned().sum();
        sum / BigRational::from_integer(BigInt::from(self.period.len()))
    }
}

impl fmt::Display for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.period.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `F_X(k, c)` with the exact mean behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct FValue {
    pub k: u64,
    pub c: BigRational,
    /// Degree `⌈c·kL⌉`, or 0 at `c = 0`.
    pub degree: u64,
    /// Exact `S(X, kL, degree)`.
    pub s: BigRational,
    pub value: Decimal,
    /// The value itself when it is rational (degree 0 or 1).
    pub exact: Option<BigRational>,
}

/// `S(X, kL, ⌈c·kL⌉)^{1/⌈c·kL⌉}`; at `c = 0` the arithmetic mean of the period.
pub fn f_periodic(x: &PeriodicSeq, k: u64, c: &BigRational, precision: u32) -> Result<FValue> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if c.is_negative() || cmp_rational(c, &BigRational::one()) == Ordering::Greater {
        return Err(Error::InvalidInput(format!("c = {c} must lie in [0,1]")));
    }
    let n = k * x.len() as u64;
    let degree = CeilPolicy::degree(n, c);
    if degree == 0 {
        let mean = x.arithmetic_mean();
        return Ok(FValue {
            k,
            c: c.clone(),
            degree,
            s: mean.clone(),
            value: Decimal::of_rational(&mean, precision),
            exact: Some(mean),
        });
    }
    let t = esp_multiplicity(&x.table(k)?, degree)?;
    let s = t / BigRational::from_integer(binomial(n, degree).into());
    let (sn, sd) = unsigned_parts(&s);
    Ok(FValue {
        k,
        c: c.clone(),
        degree,
        value: mean_root(&sn, &sd, degree, precision),
        exact: (degree == 1).then(|| s.clone()),
        s,
    })
}

/// `F_X(k, c)` over a grid, row-major in `k`.
pub fn f_grid(x: &PeriodicSeq, ks: &[u64], cs: &[BigRational], precision: u32) -> Result<Vec<FValue>> {
    let mut out = Vec::with_capacity(ks.len() * cs.len());
    for &k in ks {
        for c in cs {
            out.push(f_periodic(x, k, c, precision)?);
        }
    }
    Ok(out)
}

/// `P_k(u)` by the three-term recursion, exactly.
pub fn legendre_p(k: u64, u: &BigRational) -> BigRational {
    let mut prev = BigRational::one();
    if k == 0 {
        return prev;
    }
    let mut cur = u.clone();
    for j in 1..k {
        let jr = BigRational::from_integer(BigInt::from(j));
        let next = (BigRational::from_integer(BigInt::from(2 * j + 1)) * u * &cur - &jr * &prev)
            / BigRational::from_integer(BigInt::from(j + 1));
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_k(u) = 2^{-k} Σ_j C(k,j)² (u-1)^{k-j} (u+1)^j`, exactly.
pub fn legendre_p_explicit(k: u64, u: &BigRational) -> BigRational {
    let one = BigRational::one();
    let (um, up) = (u - &one, u + &one);
    let mut sum = BigRational::zero();
    for j in 0..=k {
        let c = BigRational::from_integer(binomial(k, j).pow(2).into());
        sum += c * num_traits::pow(um.clone(), (k - j) as usize) * num_traits::pow(up.clone(), j as usize);
    }
    sum / BigRational::from_integer(BigInt::from(2u32).pow(k as u32))
}

/// `(P_k(u) / C(2k, k))^{1/k}` for `u ≥ 1`, through the ratios
/// `P_{j+1}/P_j` so nothing overflows.
pub fn scaled_legendre(k: u64, u: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if !(u >= 1.0) {
        return Err(Error::InvalidInput(format!("u = {u} must be at least 1")));
    }
    let mut ratio = u;
    let mut log_p = ratio.ln();
    for j in 1..k {
        let jf = j as f64;
        ratio = ((2.0 * jf + 1.0) * u - jf / ratio) / (jf + 1.0);
        log_p += ratio.ln();
    }
    let kf = k as f64;
    let log_binom: f64 = (1..=k).map(|i| ((kf + i as f64) / i as f64).ln()).sum();
    Ok(((log_p - log_binom) / kf).exp())
}

/// Large-`k` limit of [`scaled_legendre`]: `(u + √(u²-1))/4`.
pub fn scaled_legendre_limit(u: f64) -> f64 {
    (u + (u * u - 1.0).sqrt()) / 4.0
}

/// `((√x + √y)/2)²` as an exact expression.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfMean {
    pub rational: Option<BigRational>,
    pub surd: Option<SurdValue>,
    pub value: Decimal,
}

impl fmt::Display for HalfMean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.rational, &self.surd) {
            (Some(r), _) => write!(f, "{r}"),
            (_, Some(s)) => write!(f, "{s}"),
            _ => write!(f, "{}", self.value),
        }
    }
}

/// `((√x + √y)/2)² = (x + y + 2√(xy))/4`.
pub fn holder_half_limit(x: &BigRational, y: &BigRational, places: u64) -> Result<HalfMean> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::InvalidInput("entries must be positive".into()));
    }
    let (p1, q1) = (x.numer().clone(), x.denom().clone());
    let (p2, q2) = (y.numer().clone(), y.denom().clone());
    let q = &q1 * &q2;
    let a = &p1 * &q2 + &p2 * &q1;
    let radicand = (&p1 * &p2 * &q).magnitude().clone();
    let root = radicand.sqrt();
    if &root * &root == radicand {
        let r = BigRational::new(a + BigInt::from(2) * BigInt::from(root), BigInt::from(4) * q);
        return Ok(HalfMean {
            value: Decimal::of_rational(&r, places as u32 + 2),
            rational: Some(r),
            surd: None,
        });
    }
    let s = SurdValue::new(a, BigInt::from(2), BigInt::from(4) * q, radicand)?;
    Ok(HalfMean {
        value: s.decimal(places),
        rational: None,
        surd: Some(s),
    })
}

fn pochhammer_step(q: &BigRational, n: u64) -> BigRational {
    q + BigRational::from_integer(BigInt::from(n))
}

/// Terminating `₂F₁(a, b; c; t) = Σ_n (a)_n (b)_n / (c)_n · tⁿ/n!` with the
/// rising symbol `(q)_n = q(q+1)…(q+n-1)`, exactly.
pub fn hyp2f1_terminating(a: i64, b: i64, c: &BigRational, t: &BigRational) -> Result<BigRational> {
    let stop = match (a < 0, b < 0) {
        (true, true) => a.unsigned_abs().min(b.unsigned_abs()),
        (true, false) => a.unsigned_abs(),
        (false, true) => b.unsigned_abs(),
        _ => return Err(Error::InvalidInput("a or b must be a negative integer".into())),
    };
    let ar = BigRational::from_integer(a.into());
    let br = BigRational::from_integer(b.into());
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for n in 0..stop {
        let cn = pochhammer_step(c, n);
        if cn.is_zero() {
            return Err(Error::Pole { index: n + 1 });
        }
        term = term * pochhammer_step(&ar, n) * pochhammer_step(&br, n) * t
            / (cn * BigRational::from_integer(BigInt::from(n + 1)));
        sum += &term;
    }
    Ok(sum)
}

/// The three subsequences of `F_X(k, 1/3)` for a 2-periodic `X`, written as
/// binomial prefactor times a terminating `₂F₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeScaled {
    pub k: u64,
    /// Roots of `C(3k-1,2k)/C(6k-2,2k)`, `C(3k,2k)/C(6k,2k)`, `C(3k+1,2k+1)/C(6k+2,2k+1)`.
    pub prefactor_roots: [Decimal; 3],
    /// Roots of the matching `₂F₁` values at `t`, when `t` is given.
    pub hyp_roots: Option<[Decimal; 3]>,
}

/// Parameters `(a, b, c, degree, half)` of the three `₂F₁` forms at `k`.
fn three_forms(k: u64) -> [(i64, i64, i64, u64, u64); 3] {
    let ki = k as i64;
    [
        (-3 * ki + 1, -2 * ki, ki, 2 * k, 3 * k - 1),
        (-3 * ki, -2 * ki, 1 + ki, 2 * k, 3 * k),
        (-3 * ki - 1, -2 * ki - 1, 1 + ki, 2 * k + 1, 3 * k + 1),
    ]
}

pub fn three_scaled(k: u64, t: Option<&BigRational>, precision: u32) -> Result<ThreeScaled> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let forms = three_forms(k);
    let prefactor = |i: usize| {
        let (_, _, _, deg, half) = forms[i];
        let num = binomial(half, deg);
        let den = binomial(2 * half, deg);
        Decimal::root_of_ratio(&num, &den, deg, precision)
    };
    let prefactor_roots = [prefactor(0), prefactor(1), prefactor(2)];
    let hyp_roots = match t {
        None => None,
        Some(t) => {
            let mut out = Vec::with_capacity(3);
            for &(a, b, c, deg, _) in &forms {
                let v = hyp2f1_terminating(a, b, &BigRational::from_integer(c.into()), t)?;
                if !v.is_positive() {
                    return Err(Error::Internal("non-positive hypergeometric value".into()));
                }
                let (n, d) = unsigned_parts(&v);
                out.push(Decimal::root_of_ratio(&n, &d, deg, precision));
            }
            let [a, b, c]: [Decimal; 3] = out.try_into().expect("three values");
            Some([a, b, c])
        }
    };
    Ok(ThreeScaled {
        k,
        prefactor_roots,
        hyp_roots,
    })
}

/// Exact `S(X, n, m)` for `X = (x, y)` through the three `₂F₁` identities,
/// for `(n, m)` one of `(6k-2, 2k)`, `(6k, 2k)`, `(6k+2, 2k+1)`.
pub fn two_periodic_via_hyp2f1(x: &BigRational, y: &BigRational, k: u64, which: usize) -> Result<BigRational> {
    if which > 2 {
        return Err(Error::InvalidInput("form index must be 0, 1 or 2".into()));
    }
    let (a, b, c, deg, half) = three_forms(k)[which];
    let t = x / y;
    let f = hyp2f1_terminating(a, b, &BigRational::from_integer(c.into()), &t)?;
    let pre = BigRational::new(binomial(half, deg).into(), binomial(2 * half, deg).into());
    Ok(num_traits::pow(y.clone(), deg as usize) * pre * f)
}

/// Order of the digits inside one period of `X_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XdOrder {
    /// `d, d-1, …, 2, 1, 1, …`
    Descending,
    /// `2, …, 2, 3, …, 3, …, d, 1, …, 1`
    Listed,
}

/// `(digit, count)` in one period of `X_d`, digits `2..=d` then `1`.
pub fn xd_counts(d: u64) -> Result<Vec<(u64, u64)>> {
    if d < 2 {
        return Err(Error::InvalidInput("d must be at least 2".into()));
    }
    let period = 10 * d * d;
    let mut counts = Vec::new();
    let mut used = 0;
    for k in 2..=d {
        let c = gauss_kuzmin_floor(k, period)?;
        used += c;
        counts.push((k, c));
    }
    counts.push((1, period - used));
    Ok(counts)
}

pub fn xd_digits(d: u64, order: XdOrder) -> Result<Vec<u64>> {
    let mut counts = xd_counts(d)?;
    if order == XdOrder::Descending {
        counts.sort_by(|a, b| b.0.cmp(&a.0));
    }
    Ok(counts
        .iter()
        .flat_map(|&(digit, count)| std::iter::repeat(digit).take(count as usize))
        .collect())
}

/// `X_d` as a periodic sequence, digits in descending order.
pub fn xd_sequence(d: u64) -> Result<PeriodicSeq> {
    PeriodicSeq::from_digits(&xd_digits(d, XdOrder::Descending)?)
}

/// `S(X_d, n, ⌈cn⌉)^{1/⌈cn⌉}` where `n` must be a multiple of the period.
pub fn f_xd_at(d: u64, n: u64, c: &BigRational, precision: u32) -> Result<FValue> {
    let x = xd_sequence(d)?;
    let l = x.len() as u64;
    if n % l != 0 {
        return Err(Error::InvalidInput(format!("n = {n} is not a multiple of {l}")));
    }
    f_periodic(&x, n / l, c, precision)
}

/// Where `k ↦ F_X(k, 1/2)` becomes strictly decreasing for `X = (x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfMonotonicity {
    /// Smallest `K` with `F(k) > F(k+1)` for all `K ≤ k < kmax`.
    pub threshold: Option<u64>,
    /// Steps `k` where `F(k) ≤ F(k+1)`.
    pub violations: Vec<u64>,
    pub values: Vec<Decimal>,
}

/// Scans `k = 1..=kmax` comparing `S_k^{k+1}` with `S_{k+1}^k` exactly.
pub fn half_mean_monotonicity(x: &BigRational, y: &BigRational, kmax: u64, precision: u32) -> Result<HalfMonotonicity> {
    let seq = PeriodicSeq::new(vec![x.clone(), y.clone()])?;
    let half = BigRational::new(1.into(), 2.into());
    let mut s = Vec::new();
    let mut values = Vec::new();
    for k in 1..=kmax {
        let f = f_periodic(&seq, k, &half, precision)?;
        s.push(f.s);
        values.push(f.value);
    }
    let mut violations = Vec::new();
    for k in 1..kmax {
        let a = num_traits::pow(s[(k - 1) as usize].clone(), (k + 1) as usize);
        let b = num_traits::pow(s[k as usize].clone(), k as usize);
        if cmp_rational(&a, &b) != Ordering::Greater {
            violations.push(k);
        }
    }
    let threshold = match violations.last() {
        None => Some(1),
        Some(&last) if last + 1 < kmax => Some(last + 1),
        _ => None,
    };
    Ok(HalfMonotonicity {
        threshold,
        violations,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn f_basic_values() {
        let x = PeriodicSeq::from_digits(&[1, 2]).unwrap();
        let f0 = f_periodic(&x, 5, &rat(0, 1), 20).unwrap();
        assert_eq!(f0.exact, Some(rat(3, 2)));
        let f1 = f_periodic(&x, 1, &rat(1, 1), 20).unwrap();
        assert!(f1.value.matches_literal("1.41421356237"));
    }

    #[test]
    fn legendre_values() {
        for k in 0..=200 {
            assert_eq!(legendre_p(k, &rat(1, 1)), rat(1, 1));
        }
        assert_eq!(legendre_p(2, &rat(3, 1)), rat(13, 1));
        for k in 0..=15 {
            let u = rat(7, 3);
            assert_eq!(legendre_p(k, &u), legendre_p_explicit(k, &u));
        }
    }

    #[test]
    fn scaled_legendre_tends_to_limit() {
        let u = 3.0;
        let lim = scaled_legendre_limit(u);
        let e1 = (scaled_legendre(100, u).unwrap() - lim).abs();
        let e2 = (scaled_legendre(10_000, u).unwrap() - lim).abs();
        assert!(e2 < e1 && e2 < 1e-3, "{e1} {e2}");
        assert!((scaled_legendre(1, 1.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn half_limits() {
        let h = holder_half_limit(&rat(5, 1), &rat(5, 1), 10).unwrap();
        assert_eq!(h.rational, Some(rat(5, 1)));
        let h = holder_half_limit(&rat(1, 1), &rat(2, 1), 10).unwrap();
        let want = SurdValue::new(3.into(), 2.into(), 4.into(), 2u32.into()).unwrap();
        assert!(h.surd.as_ref().unwrap().same_value(&want));
        assert!(h.value.matches_literal("1.4571"));
    }

    #[test]
    fn hypergeometric_basics() {
        assert_eq!(hyp2f1_terminating(-3, 2, &rat(1, 1), &rat(0, 1)).unwrap(), rat(1, 1));
        // (1 - t)^3
        assert_eq!(hyp2f1_terminating(-3, 1, &rat(1, 1), &rat(1, 2)).unwrap(), rat(1, 8));
        assert!(matches!(
            hyp2f1_terminating(-3, -3, &rat(-1, 1), &rat(1, 2)),
            Err(Error::Pole { index: 2 })
        ));
    }

    #[test]
    fn hypergeometric_identity_small_k() {
        let (x, y) = (rat(1, 1), rat(3, 1));
        let seq = PeriodicSeq::new(vec![x.clone(), y.clone()]).unwrap();
        for k in 1..=6u64 {
            for (which, (n, m)) in [(3 * k - 1, 2 * k), (3 * k, 2 * k), (3 * k + 1, 2 * k + 1)].into_iter().enumerate() {
                let direct = esp_multiplicity(&seq.table(n).unwrap(), m).unwrap()
                    / BigRational::from_integer(binomial(2 * n, m).into());
                assert_eq!(two_periodic_via_hyp2f1(&x, &y, k, which).unwrap(), direct, "k={k} form={which}");
            }
        }
    }

    #[test]
    fn xd_construction() {
        assert_eq!(xd_counts(2).unwrap(), vec![(2, 6), (1, 34)]);
        assert_eq!(xd_counts(3).unwrap(), vec![(2, 15), (3, 8), (1, 67)]);
        let x = xd_digits(3, XdOrder::Descending).unwrap();
        assert_eq!(x.len(), 90);
        assert!(x.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(xd_sequence(2).unwrap().len(), 40);
    }

    #[test]
    fn half_mean_threshold() {
        let m = half_mean_monotonicity(&rat(1, 1), &rat(2, 1), 30, 15).unwrap();
        assert!(m.threshold.is_some());
    }
}
