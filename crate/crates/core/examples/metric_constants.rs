//! Khinchin and Hölder-mean constants, the Gauss–Kuzmin law and limsup bounds.

use macsym::constants::{gauss_kuzmin_floor, gauss_kuzmin_pmf, holder_kp, khinchin_k0, limsup_upper_bound};

fn main() -> macsym::Result<()> {
    let k0 = khinchin_k0(1e-12)?;
    println!("K0    = {:.12}  (bound {:.1e}, {} terms)", k0.value, k0.error_bound, k0.terms_used);
    let km1 = holder_kp(-1.0, 1e-12)?;
    println!("K_-1  = {:.12}  1/K_-1 = {:.12}", km1.value, 1.0 / km1.value);
    for (p, tol) in [(-2.0, 1e-10), (-0.5, 1e-10), (0.5, 1e-7)] {
        println!("K_{p:<4} = {:.*}", (-f64::log10(tol)) as usize, holder_kp(p, tol)?.value);
    }
    for k in 1..=5 {
        let g = gauss_kuzmin_pmf(k)?;
        println!("P(a = {k}) = {:.8}  floor(P·90) = {}", g.value, gauss_kuzmin_floor(k, 90)?);
    }
    for c in [0.25, 0.5, 0.75] {
        let b = limsup_upper_bound(c, 1e-10)?;
        println!("c = {c}: limsup <= {:.6} (weaker {:.6})", b.improved, b.baby);
    }
    Ok(())
}
