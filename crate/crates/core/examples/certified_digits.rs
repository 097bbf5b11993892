//! Certified continued-fraction digits from data, surds and rules, and a digit cache.

use macsym::cache::cache_digits;
use macsym::cf::{certified_prefix, extract_digits, parse_alpha};

fn main() -> macsym::Result<()> {
    for spec in ["pi-3", "gamma", "sin1", "sqrt2-1", "e-2", "cf:[3;1,4,2]", "16/113"] {
        let alpha = parse_alpha(spec)?;
        let d = certified_prefix(&alpha, 12)?;
        println!("{spec:>14}: {:?}", d.digits);
    }

    // how far a 1e-10-wide interval can be trusted
    let wide = parse_alpha("dec:0.1415926535±1e-10")?;
    println!("dec:0.1415926535±1e-10 certifies {} digits", certified_prefix(&wide, 100)?.len());

    let pi = parse_alpha("pi-3")?;
    println!("pi-3 data yields {} certified digits", certified_prefix(&pi, 10_000)?.len());

    let dir = std::env::temp_dir().join("macsym-example-cache");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("pi-3.cf");
    let cached = cache_digits(&pi, 50, &path)?;
    assert_eq!(cached, extract_digits(&pi, 50)?);
    println!("cached 50 digits in {}", path.display());
    Ok(())
}
