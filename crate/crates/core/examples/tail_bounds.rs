//! Exact binomial tails against the three tail bounds.

use macsym::proxy::{binomial_tail_check, tail_grid, BinomialLaw, TailBound};
use num_rational::BigRational;

fn main() -> macsym::Result<()> {
    let law = BinomialLaw::new(100, &BigRational::new(1.into(), 2.into()))?;
    let c = binomial_tail_check(&law, TailBound::Upper { m: 50, s: 20 })?;
    println!("n=100 λ=1/2 P(X ≥ 70): ln tail {:.4} ≤ ln bound {:.4}: {}", c.ln_tail, c.ln_bound, c.holds);

    let ns = [32, 64, 128, 256, 512, 1024, 2048, 4096];
    let grid = tail_grid(&ns, &(1..=8).collect::<Vec<_>>())?;
    let bad = grid.iter().filter(|c| !c.holds).count();
    let slack = grid.iter().map(|c| c.ln_bound - c.ln_tail).fold(f64::INFINITY, f64::min);
    println!("{} grid points, {bad} violations, smallest log slack {slack:.4}", grid.len());
    Ok(())
}
