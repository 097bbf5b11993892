//! Digit cache files.
//!
//! ```text
//! cfdigits v1 <label> <n>
//! 7
//! 15
//! ...
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::cf::{certified_prefix, AlphaSpec, DigitSeq};
use crate::error::{Error, Result};

const MAGIC: &str = "cfdigits";
const VERSION: &str = "v1";

/// Label as stored in the header, with whitespace replaced.
pub fn cache_label(alpha: &AlphaSpec) -> String {
    alpha
        .label()
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect()
}

fn cache_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Cache {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidInput(format!("{} has no file name", path.display())))?;
    let tmp: PathBuf = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Io(e)
    })
}

pub fn write_cache(path: &Path, label: &str, digits: &DigitSeq) -> Result<()> {
    let mut out = format!("{MAGIC} {VERSION} {label} {}\n", digits.len());
    for d in &digits.digits {
        out.push_str(&d.to_string());
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

/// Reads a cache file, checking the header and the digit count.
pub fn read_cache(path: &Path) -> Result<(String, DigitSeq)> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| cache_err(path, "empty file"))?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 4 || fields[0] != MAGIC || fields[1] != VERSION {
        return Err(cache_err(path, format!("bad header {header:?}")));
    }
    let n: usize = fields[3]
        .parse()
        .map_err(|_| cache_err(path, format!("bad digit count {:?}", fields[3])))?;
    let digits = lines
        .map(|l| {
            l.trim()
                .parse::<u64>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| cache_err(path, format!("bad digit {l:?}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    if digits.len() != n {
        return Err(cache_err(path, format!("header says {n} digits, found {}", digits.len())));
    }
    Ok((fields[2].to_string(), DigitSeq::from_digits(digits)?))
}

/// Digits of `alpha`, served from `path` when it holds enough of them.
///
/// A cache for a different label is an error. A short cache is extended
/// and rewritten.
pub fn cache_digits(alpha: &AlphaSpec, n: usize, path: &Path) -> Result<DigitSeq> {
    let label = cache_label(alpha);
    if path.exists() {
        let (found, digits) = read_cache(path)?;
        if found != label {
            return Err(cache_err(path, format!("cache holds {found}, wanted {label}")));
        }
        if digits.len() >= n {
            return Ok(digits.prefix(n));
        }
    }
    let digits = certified_prefix(alpha, n)?;
    if digits.len() < n {
        return Err(Error::PrecisionExhausted {
            certified: digits.len(),
            requested: n,
        });
    }
    write_cache(path, &label, &digits)?;
    Ok(digits)
}
