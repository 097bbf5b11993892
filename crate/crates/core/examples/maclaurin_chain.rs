//! Maclaurin chain, log-concavity and inverse means for a digit sequence.

use macsym::cf::{extract_digits, parse_alpha};
use macsym::symmetric::{harmonic_mean, inverse_mean_report, maclaurin_chain, niculescu_check};
use num_rational::BigRational;

fn main() -> macsym::Result<()> {
    let digits = extract_digits(&parse_alpha("sqrt3-1")?, 2000)?;
    let chain = maclaurin_chain(&digits, 10)?;
    println!("sqrt3-1, n = 2000");
    println!("  arithmetic mean S(1)      = {}", chain[0]);
    println!("  S(1000)^(1/1000)          = {}", chain[999]);
    println!("  geometric mean S(n)^(1/n) = {}", chain[1999]);

    let pi = extract_digits(&parse_alpha("pi-3")?, 200)?;
    let t = BigRational::new(1.into(), 3.into());
    let r = niculescu_check(&pi, 10, 40, &t, 12)?;
    println!("pi-3: S(m={}) vs S(10)^(1/3) S(40)^(2/3): holds = {}", r.m, r.holds);

    let inv = inverse_mean_report(&pi, 50, 12)?;
    println!("pi-3, n = 200, k = 50: S^(1/k) = {}  R^(1/k) = {}", inv.s_root, inv.r_root.expect("inverse"));

    let e = extract_digits(&parse_alpha("e-2")?, 10_000)?;
    let h = harmonic_mean(&e.digits)?;
    println!("e-2 harmonic mean at n = 10^4: {:.6}", macsym::arith::rational_to_f64(&h));
    Ok(())
}
