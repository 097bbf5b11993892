//! Delimited result tables and gnuplot scripts.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::cache::write_atomic;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl Format {
    pub fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }

    /// Guesses from the file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("tsv") => Format::Tsv,
            _ => Format::Csv,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::parse(other, "format must be csv or tsv")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Tsv => "tsv",
        })
    }
}

/// A header row and string cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Internal(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::InvalidInput(format!("no column {name:?}")))
    }

    /// Cells of one column parsed as `f64`.
    pub fn floats(&self, name: &str) -> Result<Vec<f64>> {
        let i = self.column(name)?;
        self.rows
            .iter()
            .map(|r| r[i].parse::<f64>().map_err(|_| Error::parse(r[i].clone(), "not a number")))
            .collect()
    }

    pub fn to_string(&self, format: Format) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .delimiter(format.delimiter())
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .delimiter(format.delimiter())
            .from_reader(text.as_bytes());
        let columns = r.headers()?.iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
            .collect::<std::result::Result<Vec<Vec<String>>, csv::Error>>()?;
        Ok(Table { columns, rows })
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        write_atomic(path, self.to_string(format)?.as_bytes())
    }

    pub fn read(path: &Path, format: Format) -> Result<Self> {
        Table::parse(&std::fs::read_to_string(path)?, format)
    }
}

/// Gnuplot script drawing `y` against `x`, one curve per value of `group`.
pub fn gnuplot_script(data: &Path, table: &Table, x: &str, y: &str, group: Option<&str>, title: &str) -> Result<String> {
    let xi = table.column(x)? + 1;
    let yi = table.column(y)? + 1;
    let file = data.display();
    let mut s = format!(
        "set datafile separator ','\nset key autotitle columnhead\nset title \"{title}\"\nset xlabel \"{x}\"\nset ylabel \"{y}\"\n"
    );
    match group {
        None => s.push_str(&format!("plot '{file}' using {xi}:{yi} with lines title \"{y}\"\n")),
        Some(g) => {
            let gi = table.column(g)?;
            let mut values: Vec<&str> = Vec::new();
            for r in &table.rows {
                if !values.contains(&r[gi].as_str()) {
                    values.push(&r[gi]);
                }
            }
            let curves: Vec<String> = values
                .iter()
                .map(|v| {
                    format!(
                        "'{file}' using (strcol({}) eq '{v}' ? ${xi} : 1/0):{yi} with lines title \"{g} = {v}\"",
                        gi + 1
                    )
                })
                .collect();
            s.push_str(&format!("plot {}\n", curves.join(", \\\n     ")));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_both_formats() {
        let mut t = Table::new(&["k", "c", "s_root"]);
        t.push(vec!["1".into(), "0.5".into(), "1.5".into()]).unwrap();
        t.push(vec!["2".into(), "1/3".into(), "1.41".into()]).unwrap();
        for f in [Format::Csv, Format::Tsv] {
            assert_eq!(Table::parse(&t.to_string(f).unwrap(), f).unwrap(), t);
        }
        assert_eq!(t.floats("s_root").unwrap(), vec![1.5, 1.41]);
        assert!(t.push(vec!["x".into()]).is_err());
    }

    #[test]
    fn script_mentions_columns() {
        let mut t = Table::new(&["n", "c", "s_root"]);
        t.push(vec!["1".into(), "0.25".into(), "2".into()]).unwrap();
        let s = gnuplot_script(Path::new("out.csv"), &t, "c", "s_root", Some("n"), "scan").unwrap();
        assert!(s.contains("using (strcol(1) eq '1' ? $2 : 1/0):3"));
    }
}
