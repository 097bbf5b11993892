//! The periodic sequences X_d built from truncated Gauss–Kuzmin frequencies.

use macsym::periodic::{f_xd_at, xd_counts, xd_digits, XdOrder};
use macsym::surd::surd_value;
use num_rational::BigRational;

fn main() -> macsym::Result<()> {
    for d in 2..=4 {
        let counts = xd_counts(d)?;
        let value = surd_value(&[], &xd_digits(d, XdOrder::Listed)?)?;
        println!("X_{d}: {counts:?}");
        println!("     = {} ≈ {}", value, value.decimal(12));
    }
    let half = BigRational::new(1.into(), 2.into());
    // common length 3600 is a multiple of both periods 40 and 90
    for d in [2, 3] {
        let f = f_xd_at(d, 3600, &half, 10)?;
        println!("F_X{d}(n = 3600, c = 1/2) = {}", f.value.truncate_sig(10));
    }
    Ok(())
}
