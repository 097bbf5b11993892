//! CSV and gnuplot output for k/n scans and n scans, through the CLI layer.

use macsym::cli::run_args;

fn main() -> macsym::Result<()> {
    let dir = std::env::temp_dir().join("macsym-example-scans");
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("scan-c.csv");
    let plot = dir.join("scan-c.gp");
    let mut out = std::io::stdout();
    run_args(
        ["scan-c", "--alpha", "pi-3", "--n", "600,800,1000", "--step", "10", "--out", csv.to_str().unwrap(), "--plot", plot.to_str().unwrap()],
        &mut out,
    )?;
    run_args(["fit", "--input", csv.to_str().unwrap()], &mut out)?;
    let scan_n = dir.join("scan-n.csv");
    run_args(["scan-n", "--alpha", "gamma", "--n-max", "400", "--out", scan_n.to_str().unwrap()], &mut out)?;
    run_args(["bench", "--alpha", "sin1", "--n", "1000", "--k", "500"], &mut out)?;
    Ok(())
}
