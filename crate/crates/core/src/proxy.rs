//! Proxy digits and the Monte-Carlo experiments built on them.
//!
//! A coupled stream draws uniforms `Y_j` and turns each into a true digit
//! `α_j` (through the conditional density of the Gauss map given the digits
//! so far) and a proxy `β_j = 2^⌈-log₂ Y_j⌉`. The proxies are i.i.d. with
//! `P(β = 2^l) = 2^-l` and stay within a factor of four of `α_j`.
//!
//! Solving `(1+θ)X/(1+θX) = Y` for `X` gives `X = Y/(1 + θ(1 - Y))`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{binomial, cmp_rational, ln_ratio, rational_to_f64};
use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::symmetric::{esp_multiplicity_parts, mean_root, Entry, MultiplicityTable};

/// Digits above this restart the stream.
pub const DIGIT_CAP: u64 = 1_000_000_000;

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform in `(0, 1)` that is not a power of two, so `β` is never on a boundary.
fn draw_uniform(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let y: f64 = rng.gen();
        if y > 0.0 && (y.log2().fract() != 0.0) {
            return y;
        }
    }
}

/// `l` with `2^-l < y < 2^(1-l)`.
fn proxy_exponent(y: f64) -> u32 {
    let mut l = 1;
    while y < 0.5f64.powi(l as i32) {
        l += 1;
    }
    l
}

/// `[a_0, a_1, …]` read from the front: `1/(a_0 + 1/(a_1 + …))`.
fn reversed_cf(digits: impl Iterator<Item = u64>) -> BigRational {
    let digits: Vec<u64> = digits.collect();
    let mut x = BigRational::zero();
    for &d in digits.iter().rev() {
        x = (BigRational::from_integer(d.into()) + x).recip();
    }
    x
}

fn digit_of(y: &BigRational, theta: &BigRational) -> BigInt {
    let one = BigRational::one();
    let x = y / (&one + theta * (&one - y));
    x.recip().floor().to_integer()
}

/// Exact `⌊1/X⌋` for `θ = [history reversed]`.
///
/// Truncating the reversed expansion at depth `w` and `w + 1` brackets `θ`,
/// and `X` is monotone in `θ`, so the digit is decided once both ends agree.
fn certified_alpha(y: f64, history: &[u64]) -> Option<u64> {
    let y = BigRational::from_float(y)?;
    let mut w = history.len().min(24);
    loop {
        let a = reversed_cf(history.iter().rev().take(w).copied());
        let b = reversed_cf(history.iter().rev().take(w + 1).copied());
        let (da, db) = (digit_of(&y, &a), digit_of(&y, &b));
        if da == db || w >= history.len() {
            // at full depth `a` is θ itself
            let exact = if w >= history.len() { digit_of(&y, &a) } else { da };
            return exact.to_u64();
        }
        w = (2 * w).min(history.len());
    }
}

/// One step of the stream given the current `θ` estimate.
fn step_alpha(y: f64, theta: f64, history: &[u64]) -> Option<u64> {
    let x = y / (1.0 + theta * (1.0 - y));
    let inv = 1.0 / x;
    let d = inv.floor();
    // far from an integer, the float digit is certain
    let margin = 1e-9 * inv.max(1.0);
    if inv - d > margin && d + 1.0 - inv > margin && d < 1e15 {
        return Some(d as u64);
    }
    certified_alpha(y, history)
}

/// Coupled digit stream `(Y_j, α_j, β_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledStream {
    pub y: Vec<f64>,
    pub alpha_digits: Vec<u64>,
    /// `β_j = 2^l`.
    pub beta_digits: Vec<u64>,
    /// `θ_n = [α_n, …, α_1]` as a float; [`CoupledStream::theta_exact`] gives the rational.
    pub theta: f64,
    /// Times the stream was restarted after a digit above [`DIGIT_CAP`].
    pub restarts: u64,
    /// Index where the current run of digits began.
    start: usize,
}

impl CoupledStream {
    fn empty() -> Self {
        CoupledStream {
            y: Vec::new(),
            alpha_digits: Vec::new(),
            beta_digits: Vec::new(),
            theta: 0.0,
            restarts: 0,
            start: 0,
        }
    }

    /// Feeds one uniform into the stream.
    pub fn push(&mut self, y: f64) -> Result<()> {
        if !(y > 0.0 && y < 1.0) {
            return Err(Error::InvalidInput(format!("uniform {y} outside (0,1)")));
        }
        let history = &self.alpha_digits[self.start..];
        let alpha = step_alpha(y, self.theta, history)
            .ok_or_else(|| Error::Internal("digit not representable".into()))?;
        let l = proxy_exponent(y);
        if alpha > DIGIT_CAP || l > 63 {
            self.restarts += 1;
            self.start = self.alpha_digits.len();
            self.theta = 0.0;
            return Ok(());
        }
        self.y.push(y);
        self.alpha_digits.push(alpha);
        self.beta_digits.push(1u64 << l);
        self.theta = 1.0 / (alpha as f64 + self.theta);
        Ok(())
    }

    /// Builds a stream from explicit uniforms.
    pub fn from_uniforms(ys: &[f64]) -> Result<Self> {
        let mut s = CoupledStream::empty();
        for &y in ys {
            s.push(y)?;
        }
        Ok(s)
    }

    /// `θ = [α_n, …, α_1]` of the current run, exactly.
    pub fn theta_exact(&self) -> BigRational {
        reversed_cf(self.alpha_digits[self.start..].iter().rev().copied())
    }

    pub fn len(&self) -> usize {
        self.alpha_digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha_digits.is_empty()
    }

    /// Indices where `α/2 < β < 4α` fails.
    pub fn coupling_violations(&self) -> Vec<usize> {
        self.alpha_digits
            .iter()
            .zip(&self.beta_digits)
            .enumerate()
            .filter(|(_, (&a, &b))| !(a < 2 * b && b < 4 * a))
            .map(|(i, _)| i)
            .collect()
    }
}

/// `n` coupled digits from the generator for `(seed, stream)`.
pub fn coupled_digit_stream(n: usize, seed: u64) -> Result<CoupledStream> {
    coupled_digit_substream(n, seed, 0)
}

pub fn coupled_digit_substream(n: usize, seed: u64, stream: u64) -> Result<CoupledStream> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let mut rng = trial_rng(seed, stream);
    let mut s = CoupledStream::empty();
    while s.len() < n {
        s.push(draw_uniform(&mut rng))?;
    }
    Ok(s)
}

/// Pearson statistic `Σ (obs - exp)² / exp`.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum()
}

/// Counts of `α_j` over `streams` independent streams, digits `1..=bins-1`
/// and a final bin for everything larger.
pub fn alpha_marginal(j: usize, streams: u64, seed: u64, bins: usize) -> Result<Vec<u64>> {
    let counts = (0..streams)
        .into_par_iter()
        .map(|s| coupled_digit_substream(j, seed, s).map(|c| c.alpha_digits[j - 1]))
        .collect::<Result<Vec<u64>>>()?;
    let mut out = vec![0u64; bins];
    for d in counts {
        out[(d as usize).min(bins) - 1] += 1;
    }
    Ok(out)
}

/// The three tail bounds, with the parameters each one takes.
#[derive(Clone, Debug, PartialEq)]
pub enum TailBound {
    /// `Σ_{j≥m+s} t_j ≤ e·n·exp(-λσ²/2)`.
    Upper { m: u64, s: u64 },
    /// `Σ_{j≤m-s} t_j ≤ n·e^{s/(2λn)}·exp(-(1-λ)σ²/2)`.
    Lower { m: u64, s: u64 },
    /// `Σ_{j≥m} t_j < τ^-m (1 + λ(τ-1))^n`.
    Moment { m: u64, tau: BigRational },
}

/// Exact tail against one bound.
#[derive(Clone, Debug, PartialEq)]
pub struct TailCheck {
    pub n: u64,
    pub lambda: BigRational,
    pub bound: TailBound,
    pub tail: BigRational,
    pub ln_tail: f64,
    pub ln_bound: f64,
    pub holds: bool,
}

/// `Binomial(n, λ)` with integer weights `C(n,j) a^j (b-a)^(n-j)` over `b^n`.
#[derive(Clone, Debug)]
pub struct BinomialLaw {
    pub n: u64,
    pub lambda: BigRational,
    weights: Vec<BigUint>,
    denom: BigUint,
}

impl BinomialLaw {
    pub fn new(n: u64, lambda: &BigRational) -> Result<Self> {
        if lambda <= &BigRational::zero() || lambda >= &BigRational::one() {
            return Err(Error::Hypothesis(format!("λ = {lambda} must lie in (0,1)")));
        }
        let a = lambda.numer().magnitude().clone();
        let b = lambda.denom().magnitude().clone();
        let rest = &b - &a;
        let mut weights = Vec::with_capacity(n as usize + 1);
        let mut w = rest.pow(n as u32);
        weights.push(w.clone());
        for j in 0..n {
            w = w * (n - j) * &a;
            w = w.div_floor(&(BigUint::from(j + 1) * &rest));
            weights.push(w.clone());
        }
        Ok(BinomialLaw {
            n,
            lambda: lambda.clone(),
            weights,
            denom: b.pow(n as u32),
        })
    }

    fn sum(&self, from: u64, to: u64) -> BigRational {
        let num: BigUint = if from > to {
            BigUint::zero()
        } else {
            self.weights[from as usize..=to as usize].iter().sum()
        };
        BigRational::new(num.into(), self.denom.clone().into())
    }

    /// `P(X ≥ from)`.
    pub fn upper_tail(&self, from: u64) -> BigRational {
        self.sum(from, self.n)
    }

    /// `P(X ≤ to)`.
    pub fn lower_tail(&self, to: u64) -> BigRational {
        self.sum(0, to)
    }
}

fn ln_rational(x: &BigRational) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        ln_ratio(x.numer().magnitude(), x.denom().magnitude())
    }
}

fn hypothesis(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis(what.to_string()))
    }
}

/// Checks one bound against the exact tail of `Binomial(n, λ)`.
///
/// `σ` is taken at its largest allowed value `s/√(nλ(1-λ))`, which gives
/// the tightest bound. The moment bound is decided in exact arithmetic; the
/// other two compare logarithms.
pub fn binomial_tail_check(law: &BinomialLaw, bound: TailBound) -> Result<TailCheck> {
    let n = law.n;
    let lambda = &law.lambda;
    let lam = rational_to_f64(lambda);
    let nl = BigRational::from_integer(n.into()) * lambda;
    let half = BigRational::new(1.into(), 2.into());
    let (tail, ln_bound, exact) = match &bound {
        TailBound::Upper { m, s } => {
            let (m, s) = (*m, *s);
            hypothesis(m >= 1 && s >= 1 && m + s <= n, "need positive m, s with m + s ≤ n")?;
            hypothesis(lambda <= &half, "need λ ≤ 1/2")?;
            hypothesis(cmp_rational(&nl, &BigRational::from_integer(m.into())) != Ordering::Greater, "need λn ≤ m")?;
            let sigma2 = (s * s) as f64 / (n as f64 * lam * (1.0 - lam));
            let ln_b = 1.0 + (n as f64).ln() - 0.5 * lam * sigma2;
            (law.upper_tail(m + s), ln_b, None)
        }
        TailBound::Lower { m, s } => {
            let (m, s) = (*m, *s);
            hypothesis(s >= 1 && m > s, "need positive s with m - s ≥ 1")?;
            hypothesis(lambda <= &half, "need λ ≤ 1/2")?;
            hypothesis(cmp_rational(&nl, &BigRational::from_integer(m.into())) != Ordering::Less, "need λn ≥ m")?;
            let sigma2 = (s * s) as f64 / (n as f64 * lam * (1.0 - lam));
            let ln_b = (n as f64).ln() + s as f64 / (2.0 * lam * n as f64) - 0.5 * (1.0 - lam) * sigma2;
            (law.lower_tail(m - s), ln_b, None)
        }
        TailBound::Moment { m, tau } => {
            let m = *m;
            hypothesis(cmp_rational(&BigRational::from_integer(m.into()), &nl) != Ordering::Less, "need m ≥ λn")?;
            hypothesis(m <= n, "need m ≤ n")?;
            hypothesis(tau > &BigRational::one(), "need τ > 1")?;
            let one = BigRational::one();
            let base = &one + lambda * (tau - &one);
            let b = num_traits::pow(base, n as usize) / num_traits::pow(tau.clone(), m as usize);
            let tail = law.upper_tail(m);
            let holds = cmp_rational(&tail, &b) == Ordering::Less;
            (tail, ln_rational(&b), Some(holds))
        }
    };
    let ln_tail = ln_rational(&tail);
    Ok(TailCheck {
        n,
        lambda: lambda.clone(),
        holds: exact.unwrap_or(ln_tail <= ln_bound),
        bound,
        tail,
        ln_tail,
        ln_bound,
    })
}

/// Every bound on a grid of `n` and `λ = 2^-l`, skipping points whose
/// hypotheses fail.
pub fn tail_grid(ns: &[u64], ls: &[u32]) -> Result<Vec<TailCheck>> {
    let points: Vec<(u64, u32)> = ns.iter().flat_map(|&n| ls.iter().map(move |&l| (n, l))).collect();
    let out: Vec<Vec<TailCheck>> = points
        .par_iter()
        .map(|&(n, l)| {
            let lambda = BigRational::new(1.into(), BigInt::one() << l);
            let law = BinomialLaw::new(n, &lambda)?;
            let mean = n as f64 / f64::from(1u32 << l);
            let sd = (mean * (1.0 - 0.5f64.powi(l as i32))).sqrt();
            let mut bounds = Vec::new();
            for mult in [1.0, 2.0, 4.0] {
                let s = ((mult * sd).ceil() as u64).max(1);
                bounds.push(TailBound::Upper { m: mean.ceil().max(1.0) as u64, s });
                bounds.push(TailBound::Lower { m: mean.floor() as u64, s });
            }
            for tau in [2u32, 4] {
                bounds.push(TailBound::Moment {
                    m: (2.0 * mean).ceil() as u64,
                    tau: BigRational::from_integer(tau.into()),
                });
            }
            let mut checks = Vec::new();
            for b in bounds {
                match binomial_tail_check(&law, b) {
                    Ok(c) => checks.push(c),
                    Err(Error::Hypothesis(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(checks)
        })
        .collect::<Result<_>>()?;
    Ok(out.into_iter().flatten().collect())
}

/// Parameters of the band experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct BandConfig {
    pub n: u64,
    pub k: u64,
    pub trials: u64,
    pub seed: u64,
    pub precision: u32,
    /// Upper end of the window is `n / r_guess`.
    pub r_guess: f64,
}

impl BandConfig {
    pub fn new(n: u64, k: u64, trials: u64, seed: u64) -> Self {
        BandConfig {
            n,
            k,
            trials,
            seed,
            precision: 12,
            r_guess: 8.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lo = (self.n as f64).powf(0.75);
        let hi = self.n as f64 / self.r_guess;
        if (self.k as f64) < lo - 1e-9 || self.k as f64 > hi + 1e-9 {
            return Err(Error::Hypothesis(format!(
                "k = {} outside [n^(3/4), n/R] = [{lo:.1}, {hi:.1}]",
                self.k
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// One trial of the band experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct BandTrial {
    pub trial: u64,
    pub seed: u64,
    pub n: u64,
    pub k: u64,
    pub s_root: Decimal,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProxyExperimentReport {
    pub n: u64,
    pub k: u64,
    pub trials: u64,
    pub seed: u64,
    pub rows: Vec<BandTrial>,
    pub ratios: Vec<f64>,
    pub c1_hat: f64,
    pub c2_hat: f64,
    pub failures: u64,
}

impl ProxyExperimentReport {
    pub fn mean_ratio(&self) -> f64 {
        self.ratios.iter().sum::<f64>() / self.ratios.len().max(1) as f64
    }
}

/// `n` i.i.d. exponents `l ≥ 1` with `P(l) = 2^-l`, as counts by `l`.
pub fn proxy_exponent_counts(n: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut counts = Vec::new();
    let mut drawn = 0;
    while drawn < n {
        let bits: u64 = rng.gen();
        if bits == 0 {
            continue;
        }
        let l = bits.trailing_zeros() as usize + 1;
        if counts.len() < l {
            counts.resize(l, 0);
        }
        counts[l - 1] += 1;
        drawn += 1;
    }
    counts
}

/// Table with `2^l` repeated `counts[l-1]` times.
pub fn power_of_two_table(counts: &[u64]) -> MultiplicityTable {
    let entries: Vec<Entry> = counts
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| Entry {
            num: BigUint::one() << (i + 1),
            den: BigUint::one(),
            mult: c,
        })
        .collect();
    MultiplicityTable {
        total: counts.iter().sum(),
        entries,
    }
}

/// `S^{1/k}` of a table.
pub fn table_mean_root(table: &MultiplicityTable, k: u64, precision: u32) -> Result<Decimal> {
    let (num, den) = esp_multiplicity_parts(table, k)?;
    Ok(mean_root(&num, &(den * binomial(table.total, k)), k, precision))
}

/// Samples binarized digits per trial and records `S^{1/k} / log(n/k)`.
pub fn band_experiment(config: &BandConfig) -> Result<ProxyExperimentReport> {
    config.validate()?;
    let log_r = (config.n as f64 / config.k as f64).ln();
    let rows = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.seed, t);
            let counts = proxy_exponent_counts(config.n, &mut rng);
            let table = power_of_two_table(&counts);
            let s_root = table_mean_root(&table, config.k, config.precision)?;
            let ratio = s_root.to_f64() / log_r;
            Ok(BandTrial {
                trial: t,
                seed: config.seed,
                n: config.n,
                k: config.k,
                s_root,
                ratio,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    let c1_hat = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let c2_hat = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ProxyExperimentReport {
        n: config.n,
        k: config.k,
        trials: config.trials,
        seed: config.seed,
        rows,
        ratios,
        c1_hat,
        c2_hat,
        failures: 0,
    })
}

/// `∫_1^∞ x^-2 e^{-sx} dx` by composite Gauss–Legendre on `∫_0^1 e^{-s/t} dt`.
pub fn laplace_quadrature(s: f64) -> f64 {
    const NODES: [f64; 5] = [0.0, 0.538_469_310_105_683_1, -0.538_469_310_105_683_1, 0.906_179_845_938_664, -0.906_179_845_938_664];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_47,
        0.478_628_670_499_366_47,
        0.236_926_885_056_189_08,
        0.236_926_885_056_189_08,
    ];
    let panels = 4000;
    let h = 1.0 / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in NODES.iter().zip(WEIGHTS) {
            let t = mid + 0.5 * h * x;
            total += w * 0.5 * h * (-s / t).exp();
        }
    }
    total
}

/// `E_1(s)` for `s > 0`: power series up to 1, continued fraction beyond.
pub fn exp_integral_e1(s: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if s > 1.0 {
        // modified Lentz on e^{-s}/(s+1-1/(s+3-4/(s+5-…)))
        let tiny = 1e-300;
        let mut b = s + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut f = d;
        for i in 1..500 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        return f * (-s).exp();
    }
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -s / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() < 1e-18 {
            break;
        }
    }
    -EULER_GAMMA - s.ln() - sum
}

/// `e^{-s} - s·E_1(s)`, the closed form of [`laplace_quadrature`].
pub fn laplace_closed_form(s: f64) -> f64 {
    (-s).exp() - s * exp_integral_e1(s)
}

/// `F(s)` against `exp(s log s)` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacePoint {
    pub s: f64,
    pub quadrature: f64,
    pub closed_form: f64,
    /// `1 + s log s - (1/2 - 1/e)s - s²/2`.
    pub intermediate: f64,
    pub bound: f64,
}

impl LaplacePoint {
    pub fn holds(&self) -> bool {
        self.quadrature < self.intermediate && self.intermediate < self.bound
    }
}

pub fn laplace_point(s: f64) -> LaplacePoint {
    LaplacePoint {
        s,
        quadrature: laplace_quadrature(s),
        closed_form: laplace_closed_form(s),
        intermediate: 1.0 + s * s.ln() - (0.5 - (-1.0f64).exp()) * s - 0.5 * s * s,
        bound: (s * s.ln()).exp(),
    }
}

/// Block sums of `r` draws from the density `1/x²` on `[1, ∞)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeavyTailReport {
    pub r: u64,
    pub blocks: u64,
    pub seed: u64,
    /// `r log r - K r` with `K = 1 + 2 log log r`.
    pub threshold: f64,
    pub shortfalls: u64,
    pub empirical: f64,
    /// `exp(-log² r)`.
    pub bound: f64,
    pub min_sum: f64,
    pub laplace: Vec<LaplacePoint>,
}

pub fn heavy_tail_block_experiment(r: u64, blocks: u64, seed: u64) -> Result<HeavyTailReport> {
    if r < 2 {
        return Err(Error::InvalidInput("block length must be at least 2".into()));
    }
    let lr = (r as f64).ln();
    let threshold = r as f64 * lr - (1.0 + 2.0 * lr.ln()) * r as f64;
    let sums: Vec<f64> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = trial_rng(seed, b);
            (0..r)
                .map(|_| {
                    let y: f64 = rng.gen();
                    1.0 / (1.0 - y)
                })
                .sum()
        })
        .collect();
    let shortfalls = sums.iter().filter(|&&u| u <= threshold).count() as u64;
    Ok(HeavyTailReport {
        r,
        blocks,
        seed,
        threshold,
        shortfalls,
        empirical: shortfalls as f64 / blocks.max(1) as f64,
        bound: (-lr * lr).exp(),
        min_sum: sums.iter().copied().fold(f64::INFINITY, f64::min),
        laplace: (1..10).map(|i| laplace_point(i as f64 / 10.0)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn worked_example() {
        let s = CoupledStream::from_uniforms(&[0.37, 0.19, 0.88]).unwrap();
        assert_eq!(s.alpha_digits, vec![2, 7, 1]);
        assert_eq!(s.beta_digits, vec![4, 8, 2]);
        assert_eq!(s.theta_exact(), rat(15, 17));
    }

    #[test]
    fn stream_is_deterministic_and_coupled() {
        let a = coupled_digit_stream(5000, 7).unwrap();
        let b = coupled_digit_stream(5000, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.coupling_violations().is_empty());
        let t = a.theta_exact();
        assert!((rational_to_f64(&t) - a.theta).abs() < 1e-12);
    }

    #[test]
    fn certified_digit_matches_exact_theta() {
        let s = coupled_digit_stream(40, 3).unwrap();
        for j in 1..s.len() {
            let theta = reversed_cf(s.alpha_digits[..j].iter().rev().copied());
            let y = BigRational::from_float(s.y[j]).unwrap();
            assert_eq!(digit_of(&y, &theta).to_u64(), Some(s.alpha_digits[j]));
            assert_eq!(certified_alpha(s.y[j], &s.alpha_digits[..j]), Some(s.alpha_digits[j]));
        }
    }

    #[test]
    fn tail_examples() {
        let law = BinomialLaw::new(100, &rat(1, 2)).unwrap();
        assert!(binomial_tail_check(&law, TailBound::Upper { m: 50, s: 20 }).unwrap().holds);
        let law = BinomialLaw::new(100, &rat(1, 4)).unwrap();
        assert!(binomial_tail_check(&law, TailBound::Lower { m: 25, s: 10 }).unwrap().holds);
        let law = BinomialLaw::new(64, &rat(1, 8)).unwrap();
        let c = binomial_tail_check(&law, TailBound::Moment { m: 16, tau: rat(2, 1) }).unwrap();
        assert!(c.holds);
        assert!(matches!(
            binomial_tail_check(&law, TailBound::Upper { m: 2, s: 1 }),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn binomial_weights_sum_to_one() {
        let law = BinomialLaw::new(37, &rat(3, 8)).unwrap();
        assert_eq!(law.upper_tail(0), rat(1, 1));
        assert_eq!(law.upper_tail(37), rat(3, 8).pow(37));
    }

    #[test]
    fn constant_digits_give_exact_root() {
        let table = power_of_two_table(&[50]);
        let r = table_mean_root(&table, 10, 10).unwrap();
        assert!(r.matches_literal("2.000000000"));
    }

    #[test]
    fn laplace_forms_agree() {
        for i in 1..10 {
            let p = laplace_point(i as f64 / 10.0);
            assert!((p.quadrature - p.closed_form).abs() < 1e-12, "{p:?}");
            assert!(p.holds());
        }
    }

    #[test]
    fn two_blocks_exceed_two() {
        let r = heavy_tail_block_experiment(2, 2000, 1).unwrap();
        assert!(r.min_sum > 2.0);
        assert_eq!(r.shortfalls, 0);
    }
}
