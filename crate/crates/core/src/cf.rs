//! Continued-fraction digits with certification.
//!
//! Decimal inputs are treated as closed rational intervals. A digit is only
//! emitted once both endpoints agree on it, so everything returned is exact.

use std::cmp::Ordering;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{cmp_rational, parse_decimal, pow10};
use crate::error::{Error, Result};

/// Environment variable pointing at a directory of decimal data files.
pub const DATA_DIR_ENV: &str = "MACSYM_DATA_DIR";

/// Presets backed by bundled decimal expansions.
pub const DECIMAL_PRESETS: [&str; 3] = ["pi-3", "gamma", "sin1"];

const BUNDLED: [(&str, &str); 3] = [
    ("pi-3", include_str!("../data/pi-3")),
    ("gamma", include_str!("../data/gamma")),
    ("sin1", include_str!("../data/sin1")),
];

/// Digit patterns given by a closed rule rather than data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DigitRule {
    /// `e - 2 = [1, 2, 1, 1, 4, 1, 1, 6, ...]`
    EMinusTwo,
}

impl DigitRule {
    /// The `i`-th digit, 1-based.
    pub fn digit(self, i: u64) -> u64 {
        match self {
            DigitRule::EMinusTwo => {
                if i == 1 {
                    1
                } else if (i - 2) % 3 == 0 {
                    2 * ((i - 2) / 3 + 1)
                } else {
                    1
                }
            }
        }
    }
}

/// A real number in `(0, 1)` described symbolically.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaSpec {
    Rational { p: BigUint, q: BigUint },
    PeriodicCf { preperiod: Vec<u64>, period: Vec<u64> },
    DecimalInterval { lo: BigRational, hi: BigRational, label: String },
    Rule(DigitRule),
    /// A finite, explicitly listed digit sequence.
    Digits(Vec<u64>),
}

impl AlphaSpec {
    pub fn rational(p: u64, q: u64) -> Result<Self> {
        let s = AlphaSpec::Rational {
            p: p.into(),
            q: q.into(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn periodic(preperiod: &[u64], period: &[u64]) -> Result<Self> {
        let s = AlphaSpec::PeriodicCf {
            preperiod: preperiod.to_vec(),
            period: period.to_vec(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Checks the invariants of each variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            AlphaSpec::Rational { p, q } => {
                if p.is_zero() || p >= q {
                    return Err(Error::InvalidInput(format!("{p}/{q} is not in (0,1)")));
                }
                if !p.gcd(q).is_one() {
                    return Err(Error::InvalidInput(format!("{p}/{q} is not in lowest terms")));
                }
            }
            AlphaSpec::PeriodicCf { preperiod, period } => {
                if period.is_empty() {
                    return Err(Error::InvalidInput("empty period".into()));
                }
                if preperiod.iter().chain(period).any(|&d| d == 0) {
                    return Err(Error::InvalidInput("digits must be positive".into()));
                }
            }
            AlphaSpec::DecimalInterval { lo, hi, label } => {
                let inside = lo.is_positive()
                    && cmp_rational(lo, hi) == Ordering::Less
                    && cmp_rational(hi, &BigRational::one()) == Ordering::Less;
                if !inside {
                    return Err(Error::InvalidInput(format!(
                        "interval for {label} is not inside (0,1)"
                    )));
                }
            }
            AlphaSpec::Rule(_) => {}
            AlphaSpec::Digits(d) => {
                if d.is_empty() || d.iter().any(|&x| x == 0) {
                    return Err(Error::InvalidInput(
                        "digit lists must be nonempty and positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Short text used in cache headers and reports.
    pub fn label(&self) -> String {
        match self {
            AlphaSpec::Rational { p, q } => format!("{p}/{q}"),
            AlphaSpec::PeriodicCf { preperiod, period } => {
                format!("cf:[{};{}]", join(preperiod), join(period))
            }
            AlphaSpec::DecimalInterval { label, .. } => label.clone(),
            AlphaSpec::Rule(DigitRule::EMinusTwo) => "e-2".into(),
            AlphaSpec::Digits(d) => format!("digits:[{}]", join(d)),
        }
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn join(d: &[u64]) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Certified continued-fraction digits of some [`AlphaSpec`].
#[derive(Clone, Debug, PartialEq)]
pub struct DigitSeq {
    pub digits: Vec<u64>,
    pub source: AlphaSpec,
    pub certified_count: usize,
}

impl DigitSeq {
    /// Wraps an explicit digit list.
    pub fn from_digits(digits: Vec<u64>) -> Result<Self> {
        let source = AlphaSpec::Digits(digits.clone());
        source.validate()?;
        Ok(DigitSeq {
            certified_count: digits.len(),
            digits,
            source,
        })
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The first `n` digits.
    pub fn prefix(&self, n: usize) -> DigitSeq {
        let n = n.min(self.digits.len());
        DigitSeq {
            digits: self.digits[..n].to_vec(),
            source: self.source.clone(),
            certified_count: n,
        }
    }
}

/// Parses `p/q`, `cf:[pre;per]`, `dec:<literal|file>±<ulp>` or a preset name.
pub fn parse_alpha(text: &str) -> Result<AlphaSpec> {
    let t = text.trim();
    let spec = match t {
        "e-2" => AlphaSpec::Rule(DigitRule::EMinusTwo),
        "sqrt2-1" => AlphaSpec::periodic(&[], &[2])?,
        "sqrt3-1" => AlphaSpec::periodic(&[], &[1, 2])?,
        _ if DECIMAL_PRESETS.contains(&t) => load_preset(t)?,
        _ => {
            if let Some(body) = t.strip_prefix("cf:") {
                parse_cf(text, body)?
            } else if let Some(body) = t.strip_prefix("dec:") {
                parse_dec(text, body)?
            } else if let Some((p, q)) = t.split_once('/') {
                let p: BigUint = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(text, "bad numerator"))?;
                let q: BigUint = q
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(text, "bad denominator"))?;
                AlphaSpec::Rational { p, q }
            } else {
                return Err(Error::parse(text, "unknown form or preset"));
            }
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn parse_cf(text: &str, body: &str) -> Result<AlphaSpec> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::parse(text, "expected cf:[pre;per]"))?;
    let (pre, per) = inner.split_once(';').unwrap_or(("", inner));
    let list = |s: &str| -> Result<Vec<u64>> {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<u64>()
                    .map_err(|_| Error::parse(text, format!("bad digit `{x}`")))
            })
            .collect()
    };
    Ok(AlphaSpec::PeriodicCf {
        preperiod: list(pre)?,
        period: list(per)?,
    })
}

fn parse_dec(text: &str, body: &str) -> Result<AlphaSpec> {
    let (value, ulp) = match body.split_once('±').or_else(|| body.split_once("+-")) {
        Some((v, u)) => (v.trim(), Some(u.trim())),
        None => (body.trim(), None),
    };
    let (center, last_place) = if Path::new(value).is_file() {
        let path = PathBuf::from(value);
        let raw = std::fs::read_to_string(&path)?;
        read_decimal_data(&raw).map_err(|reason| Error::Data { path, reason })?
    } else {
        let center = parse_decimal(value)?;
        let frac = value
            .split_once('.')
            .map(|(_, f)| f.len())
            .unwrap_or(0);
        (center, BigRational::new(BigInt::one(), BigInt::from(pow10(frac as u64))))
    };
    let ulp = match ulp {
        Some(u) => parse_decimal(u)?,
        None => last_place,
    };
    if !ulp.is_positive() {
        return Err(Error::parse(text, "ulp must be positive"));
    }
    Ok(AlphaSpec::DecimalInterval {
        lo: &center - &ulp,
        hi: &center + &ulp,
        label: text.trim().to_string(),
    })
}

/// Reads a data file body: optional `0.` prefix, digits, whitespace ignored.
/// Returns the value and one unit in its last place.
pub fn read_decimal_data(raw: &str) -> std::result::Result<(BigRational, BigRational), String> {
    let compact: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let digits = compact.strip_prefix("0.").unwrap_or(&compact);
    let digits = digits.strip_prefix('.').unwrap_or(digits);
    if digits.is_empty() {
        return Err("no digits".into());
    }
    if let Some(c) = digits.chars().find(|c| !c.is_ascii_digit()) {
        return Err(format!("unexpected character `{c}`"));
    }
    let num: BigInt = digits.parse().map_err(|_| "bad digits".to_string())?;
    let den = BigInt::from(pow10(digits.len() as u64));
    Ok((
        BigRational::new(num, den.clone()),
        BigRational::new(BigInt::one(), den),
    ))
}

fn load_preset(name: &str) -> Result<AlphaSpec> {
    let (raw, path) = match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(name);
            let raw = std::fs::read_to_string(&path).map_err(|e| Error::Data {
                path: path.clone(),
                reason: e.to_string(),
            })?;
            (raw, path)
        }
        None => {
            let raw = BUNDLED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, r)| r.to_string())
                .ok_or_else(|| Error::parse(name, "unknown preset"))?;
            (raw, PathBuf::from(format!("<bundled>/{name}")))
        }
    };
    let (center, ulp) = read_decimal_data(&raw).map_err(|reason| Error::Data {
        path: path.clone(),
        reason,
    })?;
    let spec = AlphaSpec::DecimalInterval {
        lo: &center - &ulp,
        hi: &center + &ulp,
        label: name.to_string(),
    };
    spec.validate().map_err(|e| Error::Data {
        path,
        reason: e.to_string(),
    })?;
    Ok(spec)
}

/// Why digit production stopped short.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Exhausted,
    Terminated,
    Overflow,
}

/// Exactly `n` certified digits, or an error saying how many were available.
pub fn extract_digits(alpha: &AlphaSpec, n: usize) -> Result<DigitSeq> {
    if n == 0 {
        return Err(Error::InvalidInput("digit count must be positive".into()));
    }
    let (digits, stop) = produce(alpha, n)?;
    if digits.len() < n {
        let got = digits.len();
        return Err(match stop {
            Some(Stop::Terminated) => Error::RationalTerminated {
                available: got,
                requested: n,
            },
            Some(Stop::Overflow) => Error::DigitOverflow { certified: got },
            _ => Error::PrecisionExhausted {
                certified: got,
                requested: n,
            },
        });
    }
    Ok(DigitSeq {
        certified_count: digits.len(),
        digits,
        source: alpha.clone(),
    })
}

/// As many certified digits as possible, up to `n`.
pub fn certified_prefix(alpha: &AlphaSpec, n: usize) -> Result<DigitSeq> {
    let (digits, _) = produce(alpha, n)?;
    Ok(DigitSeq {
        certified_count: digits.len(),
        digits,
        source: alpha.clone(),
    })
}

fn produce(alpha: &AlphaSpec, n: usize) -> Result<(Vec<u64>, Option<Stop>)> {
    alpha.validate()?;
    Ok(match alpha {
        AlphaSpec::Rational { p, q } => euclid(p, q, n),
        AlphaSpec::PeriodicCf { preperiod, period } => (
            preperiod
                .iter()
                .chain(period.iter().cycle())
                .take(n)
                .copied()
                .collect(),
            None,
        ),
        AlphaSpec::Rule(rule) => ((1..=n as u64).map(|i| rule.digit(i)).collect(), None),
        AlphaSpec::Digits(d) => {
            let out: Vec<u64> = d.iter().take(n).copied().collect();
            let stop = (out.len() < n).then_some(Stop::Terminated);
            (out, stop)
        }
        AlphaSpec::DecimalInterval { lo, hi, .. } => gauss_interval(lo, hi, n),
    })
}

fn euclid(p: &BigUint, q: &BigUint, n: usize) -> (Vec<u64>, Option<Stop>) {
    let (mut num, mut den) = (p.clone(), q.clone());
    let mut out = Vec::new();
    while out.len() < n {
        if num.is_zero() {
            return (out, Some(Stop::Terminated));
        }
        let (a, r) = den.div_rem(&num);
        let Some(a) = a.to_u64() else {
            return (out, Some(Stop::Overflow));
        };
        out.push(a);
        den = num;
        num = r;
    }
    (out, None)
}

/// Lockstep Gauss map on both endpoints of `[lo, hi]`.
fn gauss_interval(lo: &BigRational, hi: &BigRational, n: usize) -> (Vec<u64>, Option<Stop>) {
    // x in [ln/ld, hn/hd]; 1/x in [hd/hn, ld/ln]
    let mut l = (lo.numer().magnitude().clone(), lo.denom().magnitude().clone());
    let mut h = (hi.numer().magnitude().clone(), hi.denom().magnitude().clone());
    let mut out = Vec::new();
    while out.len() < n {
        if l.0.is_zero() {
            return (out, Some(Stop::Exhausted));
        }
        let (a_hi, r_hi) = h.1.div_rem(&h.0);
        let (a_lo, r_lo) = l.1.div_rem(&l.0);
        if a_hi != a_lo {
            return (out, Some(Stop::Exhausted));
        }
        let Some(a) = a_lo.to_u64() else {
            return (out, Some(Stop::Overflow));
        };
        out.push(a);
        // new interval [1/hi - a, 1/lo - a]
        let new_lo = (r_hi, std::mem::take(&mut h.0));
        let new_hi = (r_lo, std::mem::take(&mut l.0));
        l = new_lo;
        h = new_hi;
    }
    (out, None)
}

/// Exact value `[a_1, ..., a_n]` of a finite digit list.
pub fn convergent(digits: &[u64]) -> BigRational {
    let mut x = BigRational::zero();
    for &a in digits.iter().rev() {
        x = (BigRational::from_integer(BigInt::from(a)) + x).recip();
    }
    x
}
