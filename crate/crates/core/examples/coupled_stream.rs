//! Coupled true and proxy digits from one stream of uniforms.

use macsym::constants::gauss_kuzmin_pmf;
use macsym::proxy::{alpha_marginal, chi_square, coupled_digit_stream, CoupledStream};

fn main() -> macsym::Result<()> {
    let s = CoupledStream::from_uniforms(&[0.37, 0.19, 0.88])?;
    println!("Y = (0.37, 0.19, 0.88): alpha = {:?}, beta = {:?}, theta = {}", s.alpha_digits, s.beta_digits, s.theta_exact());

    let s = coupled_digit_stream(200_000, 42)?;
    println!("200000 digits: {} coupling violations, {} restarts", s.coupling_violations().len(), s.restarts);
    let mut counts = vec![0u64; 8];
    for &b in &s.beta_digits {
        let l = b.trailing_zeros() as usize;
        counts[l.min(8) - 1] += 1;
    }
    let mut probs: Vec<f64> = (1..8).map(|l| 0.5f64.powi(l)).collect();
    probs.push(0.5f64.powi(7));
    println!("beta law chi-square (8 bins): {:.2}", chi_square(&counts, &probs));

    let marg = alpha_marginal(50, 20_000, 7, 9)?;
    let mut gk: Vec<f64> = (1..=8).map(|k| gauss_kuzmin_pmf(k).map(|g| g.value)).collect::<macsym::Result<_>>()?;
    gk.push(1.0 - gk.iter().sum::<f64>());
    println!("alpha_50 against Gauss–Kuzmin, chi-square (9 bins): {:.2}", chi_square(&marg, &gk));
    Ok(())
}
