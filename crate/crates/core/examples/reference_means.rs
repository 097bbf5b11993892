//! Exact symmetric means of the first digits of π − 3 at two large sizes.
//!
//! ```bash
//! cargo run --release --example reference_means
//! ```

use std::time::Instant;

use macsym::cf::{extract_digits, parse_alpha};
use macsym::symmetric::mean_report;

fn main() -> macsym::Result<()> {
    let alpha = parse_alpha("pi-3")?;
    let digits = extract_digits(&alpha, 5000)?;
    for (n, k, precision) in [(2000usize, 1000u64, 15u32), (5000, 2500, 23)] {
        let start = Instant::now();
        let report = mean_report(&digits.prefix(n), k, precision)?;
        println!(
            "n={n:5} k={k:5}  S^(1/k) = {}  ({} significant digits, {:.2?})",
            report.s_root.truncate_sig(precision as usize + 3),
            precision,
            start.elapsed()
        );
    }
    Ok(())
}
