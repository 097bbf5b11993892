//! F_X(k, c) for periodic sequences, with the Legendre and hypergeometric closed forms.

use macsym::periodic::{
    f_periodic, half_mean_monotonicity, holder_half_limit, scaled_legendre, scaled_legendre_limit, three_scaled,
    two_periodic_via_hyp2f1, PeriodicSeq,
};
use num_rational::BigRational;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn main() -> macsym::Result<()> {
    let x = PeriodicSeq::from_digits(&[1, 2])?;
    println!("F_X(k, c) for X = {x}");
    for c in [rat(1, 3), rat(1, 2), rat(2, 3)] {
        let row: Vec<String> = (1..=6)
            .map(|k| f_periodic(&x, k, &c, 8).map(|f| f.value.truncate_sig(8).to_string()))
            .collect::<macsym::Result<_>>()?;
        println!("  c = {c}: {}", row.join("  "));
    }

    let lim = holder_half_limit(&rat(1, 1), &rat(2, 1), 12)?;
    println!("limit at c = 1/2: {lim} = {}", lim.value);
    println!("F_X(500, 1/2) = {}", f_periodic(&x, 500, &rat(1, 2), 12)?.value);

    let u = 3.0;
    for k in [10, 100, 1000, 10_000] {
        println!("(P_k(3)/C(2k,k))^(1/k) at k = {k}: {:.9}", scaled_legendre(k, u)?);
    }
    println!("limit (u + sqrt(u²-1))/4 = {:.9}", scaled_legendre_limit(u));

    let s = two_periodic_via_hyp2f1(&rat(1, 1), &rat(2, 1), 4, 1)?;
    println!("S(X, 24, 8) via 2F1 = {s}");

    let three = three_scaled(10_000, None, 8)?;
    let roots: Vec<String> = three.prefactor_roots.iter().map(|d| d.truncate_sig(8).to_string()).collect();
    println!("prefactor roots at k = 10^4: {}  (2√3/9 = {:.8})", roots.join(", "), 2.0 * 3f64.sqrt() / 9.0);

    let m = half_mean_monotonicity(&rat(1, 1), &rat(5, 1), 40, 10)?;
    println!("X = (1,5): F(k,1/2) strictly decreasing from k = {:?}", m.threshold);
    Ok(())
}
