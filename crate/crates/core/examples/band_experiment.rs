//! Proxy-digit band experiment: `S^{1/k} / log(n/k)` over independent trials.

use std::time::Instant;

use macsym::proxy::{band_experiment, BandConfig};

fn main() -> macsym::Result<()> {
    let (n, k, trials) = (4096, 512, 100);
    for seed in [1, 2, 3] {
        let start = Instant::now();
        let report = band_experiment(&BandConfig::new(n, k, trials, seed))?;
        println!(
            "seed {seed}: c1 = {:.4}, c2 = {:.4}, c2/c1 = {:.3}, mean = {:.4} ({:.2?})",
            report.c1_hat,
            report.c2_hat,
            report.c2_hat / report.c1_hat,
            report.mean_ratio(),
            start.elapsed()
        );
    }
    Ok(())
}
