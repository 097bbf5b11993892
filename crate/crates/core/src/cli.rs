//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::arith::{binomial, parse_fraction};
use crate::cache::cache_digits;
use crate::cf::{extract_digits, parse_alpha, DigitSeq};
use crate::constants::{gauss_kuzmin_mass, holder_kp, khinchin_k0, limsup_upper_bound};
use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::fit::fit_decay;
use crate::periodic::{f_periodic, f_xd_at, xd_counts, xd_digits, PeriodicSeq, XdOrder};
use crate::proxy::{band_experiment, heavy_tail_block_experiment, tail_grid, BandConfig, TailBound};
use crate::surd::surd_value;
use crate::symmetric::{
    esp_multiplicity, esp_multiplicity_all, esp_prefix_int, inverse_mean_report, maclaurin_chain, mean_report,
    mean_root, CeilPolicy, MultiplicityTable,
};
use crate::table::{gnuplot_script, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "macsym", version, about = "Symmetric means of continued-fraction digits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified digits of α, optionally through a cache file.
    Digits(DigitsArgs),
    /// S(α,n,k)^(1/k).
    Mean(MeanArgs),
    /// The whole Maclaurin chain k = 1..n.
    Chain(ChainArgs),
    /// (k/n, S^(1/k)) rows for several n.
    ScanC(ScanCArgs),
    /// (n, S^(1/cn)) rows for several c.
    ScanN(ScanNArgs),
    /// F_X(k, c) over a grid for a periodic sequence X.
    Periodic(PeriodicArgs),
    /// The X_d construction.
    Xd(XdArgs),
    /// Khinchin, Hölder and Gauss–Kuzmin constants.
    Constants(ConstantsArgs),
    /// Proxy-digit band experiment and heavy-tail blocks.
    Simulate(SimulateArgs),
    /// Exact binomial tails against the three bounds.
    Tails(TailsArgs),
    /// Prefix recursion against the multiplicity kernel.
    Bench(BenchArgs),
    /// Least-squares fit of (K0/b)·b^(1/c^a) to scan-c output.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write rows here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or tsv; defaults to the extension of --out.
    #[arg(long)]
    pub format: Option<Format>,
    /// Also write a gnuplot script here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DigitsArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    /// Digit cache file, created or reused.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeanArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 15)]
    pub precision: u32,
    /// Also print the inverse mean of the reciprocal digits.
    #[arg(long)]
    pub inverse: bool,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct ScanCArgs {
    #[arg(long)]
    pub alpha: String,
    /// Comma-separated lengths.
    #[arg(long, default_value = "600,800,1000")]
    pub n: String,
    /// Every `step`-th k, always including k = n.
    #[arg(long, default_value_t = 1)]
    pub step: u64,
    #[arg(long, default_value_t = 10)]
    pub precision: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ScanNArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "1/4,1/2,3/4")]
    pub c: String,
    #[arg(long, default_value_t = 20)]
    pub n_min: u64,
    #[arg(long, default_value_t = 1000)]
    pub n_max: u64,
    #[arg(long, default_value_t = 20)]
    pub step: u64,
    #[arg(long, default_value_t = 10)]
    pub precision: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PeriodicArgs {
    /// One period, e.g. `1,2` or `1/2,3`.
    #[arg(long)]
    pub x: String,
    /// List or inclusive range of k, e.g. `1..40`.
    #[arg(long, default_value = "1..20")]
    pub k: String,
    #[arg(long, default_value = "1/10,1/5,3/10,2/5,1/2,3/5,7/10,4/5,9/10")]
    pub c: String,
    #[arg(long, default_value_t = 10)]
    pub precision: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct XdArgs {
    #[arg(long)]
    pub d: u64,
    /// `listed` (2s, 3s, …, then 1s) or `descending`.
    #[arg(long, default_value = "listed")]
    pub order: String,
    #[arg(long, default_value_t = 10)]
    pub places: u64,
    /// Also report F at this c, for n = `--n`.
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub k0: bool,
    /// Hölder constant K_p.
    #[arg(long, allow_hyphen_values = true)]
    pub kp: Option<f64>,
    /// K_{-1} and its reciprocal.
    #[arg(long)]
    pub k_minus_1: bool,
    /// Gauss–Kuzmin mass of digits 1..n.
    #[arg(long)]
    pub gk: Option<u64>,
    /// Upper bounds on the limsup at this c.
    #[arg(long)]
    pub limsup: Option<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 4096)]
    pub n: u64,
    #[arg(long, default_value_t = 512)]
    pub k: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 8.0)]
    pub r_guess: f64,
    #[arg(long, default_value_t = 12)]
    pub precision: u32,
    /// Run the heavy-tail block experiment with this block length instead.
    #[arg(long)]
    pub heavy_tail: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub blocks: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TailsArgs {
    #[arg(long, default_value = "32,64,128,256,512,1024,2048,4096")]
    pub n: String,
    #[arg(long, default_value_t = 8)]
    pub l_max: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// scan-c output.
    #[arg(long)]
    pub input: PathBuf,
    /// Only rows with this n; defaults to the largest.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k0: Option<f64>,
    /// Ignore rows with smaller c.
    #[arg(long, default_value_t = 0.0)]
    pub c_min: f64,
}

/// Comma-separated integers, each possibly an inclusive range `a..b`.
pub fn parse_u64_list(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| Error::parse(part, "not an integer"));
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(Error::parse(part, "empty range"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err(Error::parse(text, "empty list"));
    }
    Ok(out)
}

pub fn parse_fraction_list(text: &str) -> Result<Vec<BigRational>> {
    let v = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_fraction)
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(Error::parse(text, "empty list"));
    }
    Ok(v)
}

/// Decimal shown with `sig` certified digits.
pub fn show(d: &Decimal, sig: u32) -> String {
    d.truncate_sig(sig as usize).to_string()
}

/// As [`show`] without trailing zeros after the point.
pub fn show_trimmed(d: &Decimal, sig: u32) -> String {
    let s = show(d, sig);
    if s.contains('.') && !s.contains('e') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn load_digits(alpha: &str, n: usize, cache: Option<&Path>) -> Result<DigitSeq> {
    let spec = parse_alpha(alpha)?;
    match cache {
        Some(path) => cache_digits(&spec, n, path),
        None => extract_digits(&spec, n),
    }
}

fn emit(table: &Table, output: &Output, x: &str, y: &str, group: Option<&str>, title: &str, out: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => {
            let format = output.format.unwrap_or_else(|| Format::from_path(path));
            table.write(path, format)?;
            if let Some(plot) = &output.plot {
                let script = gnuplot_script(path, table, x, y, group, title)?;
                crate::cache::write_atomic(plot, script.as_bytes())?;
            }
            writeln!(out, "wrote {} rows to {}", table.rows.len(), path.display())?;
        }
        None => {
            out.write_all(table.to_string(output.format.unwrap_or_default())?.as_bytes())?;
        }
    }
    Ok(())
}

/// All `S(n, k)^{1/k}` for `k` in `ks` from one multiplicity sweep.
pub fn scan_roots(digits: &[u64], ks: &[u64], precision: u32) -> Result<Vec<Decimal>> {
    let n = digits.len() as u64;
    let table = MultiplicityTable::from_digits(digits)?;
    let (e, den) = esp_multiplicity_all(&table);
    ks.iter()
        .map(|&k| {
            if k == 0 || k > n {
                return Err(Error::DegreeOutOfRange { k, n });
            }
            Ok(mean_root(&e[k as usize], &(&den * binomial(n, k)), k, precision))
        })
        .collect()
}

fn scan_c(a: &ScanCArgs, out: &mut dyn Write) -> Result<()> {
    let ns = parse_u64_list(&a.n)?;
    let nmax = *ns.iter().max().unwrap_or(&1) as usize;
    let digits = load_digits(&a.alpha, nmax, None)?;
    let mut table = Table::new(&["n", "k", "c", "s_root"]);
    for &n in &ns {
        let mut ks: Vec<u64> = (1..=n).step_by(a.step.max(1) as usize).collect();
        if ks.last() != Some(&n) {
            ks.push(n);
        }
        let roots = scan_roots(&digits.digits[..n as usize], &ks, a.precision)?;
        for (k, r) in ks.iter().zip(roots) {
            table.push(vec![
                n.to_string(),
                k.to_string(),
                format!("{}", *k as f64 / n as f64),
                show(&r, a.precision),
            ])?;
        }
    }
    emit(&table, &a.output, "c", "s_root", Some("n"), &format!("S^(1/k) for {}", a.alpha), out)
}

fn scan_n(a: &ScanNArgs, out: &mut dyn Write) -> Result<()> {
    let cs = parse_fraction_list(&a.c)?;
    let digits = load_digits(&a.alpha, a.n_max as usize, None)?;
    let mut table = Table::new(&["n", "c", "k", "s_root"]);
    let mut n = a.n_min.max(1);
    while n <= a.n_max {
        let t = MultiplicityTable::from_digits(&digits.digits[..n as usize])?;
        for c in &cs {
            let k = CeilPolicy::checked_degree(n, c)?;
            let e = esp_multiplicity(&t, k)?;
            let num = e.numer().magnitude();
            let den = e.denom().magnitude() * binomial(n, k);
            let r = mean_root(num, &den, k, a.precision);
            table.push(vec![n.to_string(), c.to_string(), k.to_string(), show(&r, a.precision)])?;
        }
        n += a.step.max(1);
    }
    emit(&table, &a.output, "n", "s_root", Some("c"), &format!("S^(1/cn) for {}", a.alpha), out)
}

fn periodic(a: &PeriodicArgs, out: &mut dyn Write) -> Result<()> {
    let x = PeriodicSeq::parse(&a.x)?;
    let ks = parse_u64_list(&a.k)?;
    let cs = parse_fraction_list(&a.c)?;
    let mut table = Table::new(&["k", "c", "degree", "f"]);
    for &k in &ks {
        for c in &cs {
            let f = f_periodic(&x, k, c, a.precision)?;
            table.push(vec![k.to_string(), c.to_string(), f.degree.to_string(), show(&f.value, a.precision)])?;
        }
    }
    emit(&table, &a.output, "k", "f", Some("c"), &format!("F_X(k,c) for X = {x}"), out)
}

fn xd(a: &XdArgs, out: &mut dyn Write) -> Result<()> {
    let order = match a.order.as_str() {
        "listed" => XdOrder::Listed,
        "descending" => XdOrder::Descending,
        other => return Err(Error::parse(other, "order must be listed or descending")),
    };
    let counts = xd_counts(a.d)?;
    let parts: Vec<String> = counts.iter().map(|(d, c)| format!("{d}x{c}")).collect();
    writeln!(out, "period {} = {}", 10 * a.d * a.d, parts.join(" "))?;
    let value = surd_value(&[], &xd_digits(a.d, order)?)?;
    writeln!(out, "value {} = {}", value, value.decimal(a.places))?;
    if let Some(c) = &a.c {
        let c = parse_fraction(c)?;
        let n = a.n.unwrap_or(10 * a.d * a.d * 10);
        let f = f_xd_at(a.d, n, &c, 12)?;
        writeln!(out, "F(n={n}, c={c}) = {}", show(&f.value, 12))?;
    }
    Ok(())
}

fn constants(a: &ConstantsArgs, out: &mut dyn Write) -> Result<()> {
    let mut any = false;
    if a.k0 {
        let v = khinchin_k0(a.tol)?;
        writeln!(out, "K0 {:.*} (error <= {:.1e}, {} terms)", digits_for(a.tol), v.value, v.error_bound, v.terms_used)?;
        any = true;
    }
    if let Some(p) = a.kp {
        let v = holder_kp(p, a.tol)?;
        writeln!(out, "K_{p} {:.*} (error <= {:.1e})", digits_for(a.tol), v.value, v.error_bound)?;
        any = true;
    }
    if a.k_minus_1 {
        let v = holder_kp(-1.0, a.tol)?;
        writeln!(out, "K_-1 {:.*}", digits_for(a.tol), v.value)?;
        writeln!(out, "1/K_-1 {:.*}", digits_for(a.tol), 1.0 / v.value)?;
        any = true;
    }
    if let Some(n) = a.gk {
        writeln!(out, "GK mass 1..{n} {:.15}", gauss_kuzmin_mass(n))?;
        any = true;
    }
    if let Some(c) = a.limsup {
        let b = limsup_upper_bound(c, a.tol)?;
        writeln!(out, "limsup bound c={c} improved {:.10} baby {:.10}", b.improved, b.baby)?;
        any = true;
    }
    if !any {
        return Err(Error::InvalidInput("choose at least one of --k0, --kp, --k-minus-1, --gk, --limsup".into()));
    }
    Ok(())
}

fn digits_for(tol: f64) -> usize {
    ((-tol.log10()).ceil().max(1.0) as usize).min(16)
}

fn simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    if let Some(r) = a.heavy_tail {
        let rep = heavy_tail_block_experiment(r, a.blocks, a.seed)?;
        writeln!(
            out,
            "r {} blocks {} threshold {:.4} shortfalls {} empirical {:.3e} bound {:.3e} min_sum {:.4}",
            rep.r, rep.blocks, rep.threshold, rep.shortfalls, rep.empirical, rep.bound, rep.min_sum
        )?;
        for p in &rep.laplace {
            writeln!(out, "F({:.1}) = {:.12} < {:.12} : {}", p.s, p.quadrature, p.bound, p.holds())?;
        }
        return Ok(());
    }
    let mut config = BandConfig::new(a.n, a.k, a.trials, a.seed);
    config.r_guess = a.r_guess;
    config.precision = a.precision;
    let rep = band_experiment(&config)?;
    let mut table = Table::new(&["trial", "seed", "n", "k", "S_root", "ratio"]);
    for r in &rep.rows {
        table.push(vec![
            r.trial.to_string(),
            r.seed.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            show(&r.s_root, a.precision),
            format!("{:.*e}", a.precision as usize - 1, r.ratio),
        ])?;
    }
    emit(&table, &a.output, "trial", "ratio", None, "S^(1/k)/log(n/k)", out)?;
    writeln!(
        out,
        "c1_hat {:.6} c2_hat {:.6} ratio {:.4} failures {}",
        rep.c1_hat,
        rep.c2_hat,
        rep.c2_hat / rep.c1_hat,
        rep.failures
    )?;
    Ok(())
}

fn tails(a: &TailsArgs, out: &mut dyn Write) -> Result<()> {
    let ns = parse_u64_list(&a.n)?;
    let ls: Vec<u32> = (1..=a.l_max).collect();
    let checks = tail_grid(&ns, &ls)?;
    let mut table = Table::new(&["n", "lambda", "bound", "m", "param", "ln_tail", "ln_bound", "holds"]);
    for c in &checks {
        let (kind, m, param) = match &c.bound {
            TailBound::Upper { m, s } => ("upper", *m, s.to_string()),
            TailBound::Lower { m, s } => ("lower", *m, s.to_string()),
            TailBound::Moment { m, tau } => ("moment", *m, tau.to_string()),
        };
        table.push(vec![
            c.n.to_string(),
            c.lambda.to_string(),
            kind.into(),
            m.to_string(),
            param,
            format!("{:.10e}", c.ln_tail),
            format!("{:.10e}", c.ln_bound),
            c.holds.to_string(),
        ])?;
    }
    emit(&table, &a.output, "n", "ln_tail", Some("bound"), "binomial tails", out)?;
    let bad = checks.iter().filter(|c| !c.holds).count();
    writeln!(out, "points {} violations {bad}", checks.len())?;
    if bad > 0 {
        return Err(Error::Mismatch(format!("{bad} tail bounds violated")));
    }
    Ok(())
}

fn bench(a: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let digits = load_digits(&a.alpha, a.n, None)?;
    if a.k == 0 || a.k > a.n as u64 {
        return Err(Error::DegreeOutOfRange { k: a.k, n: a.n as u64 });
    }
    let t0 = Instant::now();
    let prefix = esp_prefix_int(&digits.digits, a.k as usize)?;
    let t_prefix = t0.elapsed();
    let t1 = Instant::now();
    let table = MultiplicityTable::from_digits(&digits.digits)?;
    let mult = esp_multiplicity(&table, a.k)?;
    let t_mult = t1.elapsed();
    let want: &BigUint = &prefix[a.k as usize];
    if !mult.is_integer() || mult.numer().magnitude() != want {
        return Err(Error::Mismatch(format!("algorithms disagree at n={} k={}", a.n, a.k)));
    }
    writeln!(out, "distinct digits {}", table.entries.len())?;
    writeln!(out, "prefix recursion {:.3?}", t_prefix)?;
    writeln!(out, "multiplicity {:.3?}", t_mult)?;
    writeln!(out, "equal true")?;
    Ok(())
}

fn fit(a: &FitArgs, out: &mut dyn Write) -> Result<()> {
    let table = Table::read(&a.input, Format::from_path(&a.input))?;
    let ns = table.floats("n")?;
    let cs = table.floats("c")?;
    let ys = table.floats("s_root")?;
    let target = match a.n {
        Some(n) => n as f64,
        None => ns.iter().copied().fold(0.0, f64::max),
    };
    let points: Vec<(f64, f64)> = ns
        .iter()
        .zip(cs.iter().zip(&ys))
        .filter(|(&n, (&c, _))| n == target && c >= a.c_min)
        .map(|(_, (&c, &y))| (c, y))
        .collect();
    let k0 = match a.k0 {
        Some(v) => v,
        None => khinchin_k0(1e-10)?.value,
    };
    let f = fit_decay(&points, k0)?;
    writeln!(
        out,
        "n {target} points {} a {:.6} b {:.6e} exponent {:.6} rss {:.3e} boundary {}",
        f.points, f.a, f.b, f.exponent, f.rss, f.at_boundary
    )?;
    Ok(())
}

/// Runs one parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Digits(a) => {
            let d = load_digits(&a.alpha, a.n, a.cache.as_deref())?;
            let s: Vec<String> = d.digits.iter().map(u64::to_string).collect();
            writeln!(out, "{}", s.join(","))?;
        }
        Command::Mean(a) => {
            let d = load_digits(&a.alpha, a.n, a.cache.as_deref())?;
            let r = if a.inverse {
                inverse_mean_report(&d, a.k, a.precision)?
            } else {
                mean_report(&d, a.k, a.precision)?
            };
            writeln!(out, "{}", show(&r.s_root, a.precision))?;
            if let Some(rr) = &r.r_root {
                writeln!(out, "inverse {}", show(rr, a.precision))?;
            }
        }
        Command::Chain(a) => {
            let d = load_digits(&a.alpha, a.n, None)?;
            let chain = maclaurin_chain(&d, a.precision)?;
            let s: Vec<String> = chain.iter().map(|v| show_trimmed(v, a.precision)).collect();
            writeln!(out, "{}", s.join(", "))?;
        }
        Command::ScanC(a) => scan_c(a, out)?,
        Command::ScanN(a) => scan_n(a, out)?,
        Command::Periodic(a) => periodic(a, out)?,
        Command::Xd(a) => xd(a, out)?,
        Command::Constants(a) => constants(a, out)?,
        Command::Simulate(a) => simulate(a, out)?,
        Command::Tails(a) => tails(a, out)?,
        Command::Bench(a) => bench(a, out)?,
        Command::Fit(a) => fit(a, out)?,
    }
    Ok(())
}

/// Parses `args` (without the program name) and runs them.
pub fn run_args<I, S>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("macsym")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::InvalidInput(e.to_string().lines().next().unwrap_or("").to_string()))?;
    run(&cli, out)
}
