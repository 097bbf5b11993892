//! Elementary symmetric polynomials and means, computed exactly.
//!
//! Two independent routes are provided. [`esp_prefix`] runs the classical
//! recursion `E(i, j) = x_i E(i-1, j-1) + E(i-1, j)` over the list, and
//! [`esp_multiplicity`] groups equal entries and multiplies the truncated
//! factors `(1 + d z)^m`. Both return exact values.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{binomial, binomial_row, cmp_rational};
use crate::cf::DigitSeq;
use crate::decimal::Decimal;
use crate::error::{Error, Result};

/// One distinct value `num/den` repeated `mult` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub num: BigUint,
    pub den: BigUint,
    pub mult: u64,
}

impl Entry {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.num.clone().into(), self.den.clone().into())
    }
}

/// Distinct values with multiplicities, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub entries: Vec<Entry>,
    pub total: u64,
}

impl MultiplicityTable {
    /// Groups a list of positive integers.
    pub fn from_digits(digits: &[u64]) -> Result<Self> {
        if digits.contains(&0) {
            return Err(Error::InvalidInput("entries must be positive".into()));
        }
        let mut sorted = digits.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut entries: Vec<Entry> = Vec::new();
        for d in sorted {
            match entries.last_mut() {
                Some(e) if e.num == BigUint::from(d) => e.mult += 1,
                _ => entries.push(Entry {
                    num: d.into(),
                    den: BigUint::one(),
                    mult: 1,
                }),
            }
        }
        Ok(MultiplicityTable {
            total: digits.len() as u64,
            entries,
        })
    }

    /// Groups a list of positive rationals.
    pub fn from_values(values: &[BigRational]) -> Result<Self> {
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidInput("entries must be positive".into()));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| cmp_rational(b, a));
        let mut entries: Vec<Entry> = Vec::new();
        for v in sorted {
            let (num, den) = (v.numer().magnitude().clone(), v.denom().magnitude().clone());
            match entries.last_mut() {
                Some(e) if e.num == num && e.den == den => e.mult += 1,
                _ => entries.push(Entry { num, den, mult: 1 }),
            }
        }
        Ok(MultiplicityTable {
            total: values.len() as u64,
            entries,
        })
    }

    /// Builds a table from `(value, multiplicity)` pairs in any order.
    pub fn from_pairs(pairs: &[(BigRational, u64)]) -> Result<Self> {
        let mut values = Vec::new();
        for (v, m) in pairs {
            if *m == 0 {
                return Err(Error::InvalidInput("multiplicity must be positive".into()));
            }
            for _ in 0..*m {
                values.push(v.clone());
            }
        }
        MultiplicityTable::from_values(&values)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.den.is_one())
    }

    /// Checks ordering and the multiplicity sum.
    pub fn validate(&self) -> Result<()> {
        let sum: u64 = self.entries.iter().map(|e| e.mult).sum();
        if sum != self.total {
            return Err(Error::Internal("multiplicities do not add up".into()));
        }
        for w in self.entries.windows(2) {
            if cmp_rational(&w[0].value(), &w[1].value()) != Ordering::Greater {
                return Err(Error::Internal("table not strictly decreasing".into()));
            }
        }
        Ok(())
    }
}

/// `E(n, 0..=kmax)` for positive integers by the prefix recursion.
pub fn esp_prefix_int(x: &[u64], kmax: usize) -> Result<Vec<BigUint>> {
    if kmax > x.len() {
        return Err(Error::DegreeOutOfRange {
            k: kmax as u64,
            n: x.len() as u64,
        });
    }
    let mut e = vec![BigUint::zero(); kmax + 1];
    e[0] = BigUint::one();
    let mut tmp = BigUint::zero();
    for (i, &xi) in x.iter().enumerate() {
        let top = (i + 1).min(kmax);
        for j in (1..=top).rev() {
            tmp.clone_from(&e[j - 1]);
            tmp *= xi;
            e[j] += &tmp;
        }
    }
    Ok(e)
}

/// `E(n, 0..=kmax)` for positive rationals by the prefix recursion.
pub fn esp_prefix(x: &[BigRational], kmax: usize) -> Result<Vec<BigRational>> {
    if kmax > x.len() {
        return Err(Error::DegreeOutOfRange {
            k: kmax as u64,
            n: x.len() as u64,
        });
    }
    if x.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidInput("entries must be positive".into()));
    }
    // e'_j = e_j · Π q_i stays integral
    let mut e = vec![BigUint::zero(); kmax + 1];
    e[0] = BigUint::one();
    let mut den = BigUint::one();
    for (i, xi) in x.iter().enumerate() {
        let p = xi.numer().magnitude();
        let q = xi.denom().magnitude();
        let top = (i + 1).min(kmax);
        for j in (1..=top).rev() {
            let shifted = &e[j - 1] * p;
            if q.is_one() {
                e[j] += shifted;
            } else {
                e[j] *= q;
                e[j] += shifted;
            }
        }
        if !q.is_one() {
            e[0] *= q;
        }
        den *= q;
    }
    let den = BigInt::from(den);
    Ok(e.into_iter()
        .map(|v| BigRational::new(v.into(), den.clone()))
        .collect())
}

/// Coefficients of `Π (den_j + num_j z)^m_j` for degrees `kmin..=kmax`,
/// with `Π den_j^m_j`.
///
/// Degrees that can no longer reach the window are dropped after every
/// factor, so the last factor reduces to a single dot product when
/// `kmin == kmax`.
fn product_window(table: &MultiplicityTable, kmin: u64, kmax: u64) -> (Vec<BigUint>, BigUint) {
    let mut lo = 0u64;
    let mut coeffs = vec![BigUint::one()];
    let mut den = BigUint::one();
    let mut processed = 0u64;
    for e in &table.entries {
        let m = e.mult;
        let old_hi = lo + coeffs.len() as u64 - 1;
        processed += m;
        let remaining = table.total - processed;
        let new_lo = kmin.saturating_sub(remaining).max(lo);
        let new_hi = kmax.min(processed);
        let bmax = m.min(new_hi - lo);
        let weights = factor_weights(&e.num, &e.den, m, bmax);
        let mut next = Vec::with_capacity((new_hi - new_lo + 1) as usize);
        let mut term = BigUint::zero();
        for j in new_lo..=new_hi {
            let mut acc = BigUint::zero();
            let b_from = j.saturating_sub(old_hi);
            let b_to = bmax.min(j - lo);
            for b in b_from..=b_to {
                let c = &coeffs[(j - b - lo) as usize];
                if c.is_zero() {
                    continue;
                }
                term.clone_from(c);
                term *= &weights[b as usize];
                acc += &term;
            }
            next.push(acc);
        }
        coeffs = next;
        lo = new_lo;
        if !e.den.is_one() {
            den *= e.den.pow(m as u32);
        }
    }
    debug_assert_eq!(lo, kmin);
    (coeffs, den)
}

/// `C(m, b) num^b den^(m-b)` for `b = 0..=bmax`, by the ratio `(m-b)/(b+1)·num/den`.
fn factor_weights(num: &BigUint, den: &BigUint, m: u64, bmax: u64) -> Vec<BigUint> {
    let mut w = Vec::with_capacity(bmax as usize + 1);
    let mut cur = if den.is_one() {
        BigUint::one()
    } else {
        den.pow(m as u32)
    };
    w.push(cur.clone());
    for b in 0..bmax {
        cur *= m - b;
        cur *= num;
        if den.is_one() {
            cur /= b + 1;
        } else {
            cur /= den * (b + 1);
        }
        w.push(cur.clone());
    }
    w
}

/// Exact `E(n, k)` from a multiplicity table.
pub fn esp_multiplicity(table: &MultiplicityTable, k: u64) -> Result<BigRational> {
    if k > table.total {
        return Err(Error::DegreeOutOfRange { k, n: table.total });
    }
    let (coeffs, den) = product_window(table, k, k);
    Ok(BigRational::new(
        coeffs.into_iter().next().unwrap_or_default().into(),
        den.into(),
    ))
}

/// Integer numerator and denominator of `E(n, k)` without reducing.
pub fn esp_multiplicity_parts(table: &MultiplicityTable, k: u64) -> Result<(BigUint, BigUint)> {
    if k > table.total {
        return Err(Error::DegreeOutOfRange { k, n: table.total });
    }
    let (coeffs, den) = product_window(table, k, k);
    Ok((coeffs.into_iter().next().unwrap_or_default(), den))
}

/// All of `E(n, 0..=n)` over a common denominator, from one sweep.
pub fn esp_multiplicity_all(table: &MultiplicityTable) -> (Vec<BigUint>, BigUint) {
    product_window(table, 0, table.total)
}

/// Rule turning a real proportion `c` into a degree: `k = ⌈c·n⌉`.
///
/// `c` is kept as an exact rational so `0.1·10` gives `1`, not `2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CeilPolicy;

impl CeilPolicy {
    pub fn degree(n: u64, c: &BigRational) -> u64 {
        let v = c * BigRational::from_integer(BigInt::from(n));
        v.ceil().to_integer().to_u64().unwrap_or(0)
    }

    /// Degree checked against `1..=n`.
    pub fn checked_degree(n: u64, c: &BigRational) -> Result<u64> {
        let k = CeilPolicy::degree(n, c);
        if k == 0 || k > n {
            return Err(Error::DegreeOutOfRange { k, n });
        }
        Ok(k)
    }
}

/// Exact and decimal summary of one symmetric mean.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanReport {
    pub n: u64,
    pub k: u64,
    /// `E(n, k)` of the digits.
    pub t: BigRational,
    /// `C(n, k)`.
    pub binom: BigUint,
    /// `t / binom`.
    pub s: BigRational,
    /// `s^(1/k)`, truncated.
    pub s_root: Decimal,
    /// Inverse mean of the reciprocals at the same `k`, when requested.
    pub r: Option<BigRational>,
    pub r_root: Option<Decimal>,
    /// Significant digits requested for the roots.
    pub precision: u32,
}

/// Digits carried internally so that `root^k` still matches to `precision`.
fn root_digits(precision: u32, k: u64) -> u32 {
    precision + (k as f64).log10().ceil() as u32 + 2
}

fn check_degree(n: u64, k: u64) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::DegreeOutOfRange { k, n });
    }
    Ok(())
}

/// `k`-th root of `num/den` to `precision` digits, with guard digits for `k`.
pub fn mean_root(num: &BigUint, den: &BigUint, k: u64, precision: u32) -> Decimal {
    Decimal::root_of_ratio(num, den, k, root_digits(precision, k))
}

fn ratio_parts(x: &BigRational) -> (BigUint, BigUint) {
    (x.numer().magnitude().clone(), x.denom().magnitude().clone())
}

/// `S(n, k)` and its `k`-th root for a digit sequence.
pub fn mean_report(digits: &DigitSeq, k: u64, precision: u32) -> Result<MeanReport> {
    let n = digits.len() as u64;
    check_degree(n, k)?;
    let table = MultiplicityTable::from_digits(&digits.digits)?;
    let (t, _) = esp_multiplicity_parts(&table, k)?;
    let binom = binomial(n, k);
    let s_root = mean_root(&t, &binom, k, precision);
    let t = BigRational::from_integer(t.into());
    let s = &t / BigRational::from_integer(binom.clone().into());
    Ok(MeanReport {
        n,
        k,
        t,
        binom,
        s,
        s_root,
        r: None,
        r_root: None,
        precision,
    })
}

/// Mean report over the reciprocal digits as well.
///
/// Also checks `S(n, k) = S(n, n) · R(n, n - k)` exactly and fails with
/// [`Error::Mismatch`] if it does not hold.
pub fn inverse_mean_report(digits: &DigitSeq, k: u64, precision: u32) -> Result<MeanReport> {
    let mut report = mean_report(digits, k, precision)?;
    let n = report.n;
    let recips: Vec<BigRational> = digits
        .digits
        .iter()
        .map(|&d| BigRational::new(BigInt::one(), BigInt::from(d)))
        .collect();
    let table = MultiplicityTable::from_values(&recips)?;
    let binom = BigRational::from_integer(report.binom.clone().into());
    let r = esp_multiplicity(&table, k)? / &binom;
    let (rn, rd) = ratio_parts(&r);
    report.r_root = Some(mean_root(&rn, &rd, k, precision));
    report.r = Some(r);

    let product: BigUint = digits.digits.iter().map(|&d| BigUint::from(d)).product();
    let r_complement = esp_multiplicity(&table, n - k)? / &binom;
    let rhs = BigRational::from_integer(product.into()) * r_complement;
    if rhs != report.s {
        return Err(Error::Mismatch(format!(
            "S(n,k) != S(n,n)·R(n,n-k) at n={n}, k={k}"
        )));
    }
    Ok(report)
}

/// `S(n, k)^(1/k)` for every `k = 1..=n`, from one coefficient sweep.
pub fn maclaurin_chain(digits: &DigitSeq, precision: u32) -> Result<Vec<Decimal>> {
    let n = digits.len() as u64;
    if n == 0 {
        return Err(Error::InvalidInput("empty digit list".into()));
    }
    let table = MultiplicityTable::from_digits(&digits.digits)?;
    let (coeffs, _) = esp_multiplicity_all(&table);
    let binoms = binomial_row(n, n);
    Ok((1..=n)
        .map(|k| mean_root(&coeffs[k as usize], &binoms[k as usize], k, precision))
        .collect())
}

/// Outcome of comparing `S(m)` with `S(j)^t S(k)^(1-t)` where `m = tj + (1-t)k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NiculescuReport {
    pub m: u64,
    pub lhs: BigRational,
    /// `(S(j)^p S(k)^(q-p))^(1/q)` for `t = p/q`.
    pub rhs: Decimal,
    pub holds: bool,
    pub equal: bool,
}

/// Log-concavity check between three symmetric means, decided exactly.
pub fn niculescu_check(
    digits: &DigitSeq,
    j: u64,
    k: u64,
    t: &BigRational,
    precision: u32,
) -> Result<NiculescuReport> {
    let n = digits.len() as u64;
    let zero = BigRational::zero();
    let one = BigRational::one();
    if cmp_rational(t, &zero) != Ordering::Greater || cmp_rational(t, &one) != Ordering::Less {
        return Err(Error::Hypothesis("t must lie in (0,1)".into()));
    }
    check_degree(n, j)?;
    check_degree(n, k)?;
    let m = t * BigRational::from_integer(j.into()) + (&one - t) * BigRational::from_integer(k.into());
    if !m.is_integer() {
        return Err(Error::Hypothesis(format!("tj+(1-t)k = {m} is not an integer")));
    }
    let m = m.to_integer().to_u64().ok_or_else(|| Error::Internal("m range".into()))?;
    check_degree(n, m)?;
    let p = t.numer().to_u32().ok_or_else(|| Error::Hypothesis("t numerator too large".into()))?;
    let q = t.denom().to_u32().ok_or_else(|| Error::Hypothesis("t denominator too large".into()))?;
    let table = MultiplicityTable::from_digits(&digits.digits)?;
    let s = |deg: u64| -> Result<BigRational> {
        Ok(esp_multiplicity(&table, deg)? / BigRational::from_integer(binomial(n, deg).into()))
    };
    let (sm, sj, sk) = (s(m)?, s(j)?, s(k)?);
    let lhs_pow = num_traits::pow(sm.clone(), q as usize);
    let rhs_pow = num_traits::pow(sj, p as usize) * num_traits::pow(sk, (q - p) as usize);
    let ord = cmp_rational(&lhs_pow, &rhs_pow);
    let (rn, rd) = ratio_parts(&rhs_pow);
    Ok(NiculescuReport {
        m,
        lhs: sm,
        rhs: Decimal::root_of_ratio(&rn, &rd, q as u64, precision),
        holds: ord != Ordering::Less,
        equal: ord == Ordering::Equal,
    })
}

/// `C(n, ⌈cn⌉)^(1/⌈cn⌉)`.
pub fn binom_root(n: u64, c: &BigRational, precision: u32) -> Result<Decimal> {
    let k = CeilPolicy::checked_degree(n, c)?;
    Ok(Decimal::root_of_ratio(&binomial(n, k), &BigUint::one(), k, precision))
}

/// Limit of [`binom_root`] as `n` grows: `(1-c)^(1-1/c) / c`.
pub fn binom_root_limit(c: f64) -> f64 {
    (1.0 - c).powf(1.0 - 1.0 / c) / c
}

/// `n / Σ 1/a_i`.
pub fn harmonic_mean(digits: &[u64]) -> Result<BigRational> {
    if digits.is_empty() || digits.contains(&0) {
        return Err(Error::InvalidInput("need positive entries".into()));
    }
    // Σ 1/a over a common denominator, grouped by value
    let table = MultiplicityTable::from_digits(digits)?;
    let mut sum = BigRational::zero();
    for e in &table.entries {
        sum += BigRational::new(BigInt::from(e.mult), BigInt::from(e.num.clone()));
    }
    Ok(BigRational::from_integer(BigInt::from(digits.len())) / sum)
}
