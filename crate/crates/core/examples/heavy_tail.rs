//! Block sums of heavy-tailed digits and the Laplace-transform bound.

use macsym::proxy::heavy_tail_block_experiment;

fn main() -> macsym::Result<()> {
    for r in [2, 16, 256] {
        let rep = heavy_tail_block_experiment(r, 100_000, 5)?;
        println!(
            "r = {r:3}: threshold {:9.3}  shortfalls {}  bound exp(-log²r) = {:.3e}  min sum {:.3}",
            rep.threshold, rep.shortfalls, rep.bound, rep.min_sum
        );
    }
    let rep = heavy_tail_block_experiment(2, 1, 0)?;
    for p in &rep.laplace {
        println!("F({:.1}) = {:.12}  (closed form {:.12})  exp(s log s) = {:.12}", p.s, p.quadrature, p.closed_form, p.bound);
    }
    Ok(())
}
