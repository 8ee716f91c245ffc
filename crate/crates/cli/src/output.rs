use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::args::{Format, OutputArgs};
use crate::error::CliError;

/// Rounds to 12 significant digits, the precision of every printed value.
pub fn r12(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().unwrap_or(x)
    } else {
        x
    }
}

/// Formats a value as it appears in CSV output.
pub fn fmt12(x: f64) -> String {
    let r = r12(x);
    if r == 0.0 {
        "0".into()
    } else if r.is_finite() && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

/// One CSV table of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&'static str]) -> Self {
        Table {
            name,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let ser = |e: csv::Error| CliError::Serialize(e.to_string());
        w.write_record(&self.header).map_err(ser)?;
        for r in &self.rows {
            w.write_record(r).map_err(ser)?;
        }
        w.into_inner()
            .map_err(|e| CliError::Serialize(e.to_string()))
    }
}

/// A command result that can be written as CSV tables or one JSON document.
pub trait Report: Serialize {
    /// Used for default file names.
    fn command(&self) -> &'static str;
    /// The first table is the primary one.
    fn tables(&self) -> Vec<Table>;
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, bytes).map_err(io)
}

fn sibling(path: &Path, name: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}_{name}.{ext}"))
}

/// Where output goes: an explicit path, the output directory, or stdout.
pub fn destination(out: &OutputArgs, command: &str) -> Option<PathBuf> {
    out.output.clone().or_else(|| {
        out.out_dir
            .as_ref()
            .map(|d| d.join(format!("{command}.{}", out.format.extension())))
    })
}

/// Renders a report without writing it: `(path suffix, bytes)` pairs, the
/// first with an empty suffix.
pub fn render(
    report: &impl Report,
    format: Format,
) -> Result<Vec<(&'static str, Vec<u8>)>, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec_pretty(report)
                .map_err(|e| CliError::Serialize(e.to_string()))?;
            s.push(b'\n');
            Ok(vec![("", s)])
        }
        Format::Csv => report
            .tables()
            .into_iter()
            .enumerate()
            .map(|(i, t)| Ok((if i == 0 { "" } else { t.name }, t.to_csv()?)))
            .collect(),
    }
}

/// Writes a report and returns the files created (empty for stdout).
pub fn emit(report: &impl Report, out: &OutputArgs) -> Result<Vec<PathBuf>, CliError> {
    let parts = render(report, out.format)?;
    match destination(out, report.command()) {
        Some(path) => {
            let mut written = Vec::new();
            for (suffix, bytes) in parts {
                let p = if suffix.is_empty() {
                    path.clone()
                } else {
                    sibling(&path, suffix)
                };
                write_file(&p, &bytes)?;
                written.push(p);
            }
            Ok(written)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let io = |source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            };
            for (i, (suffix, bytes)) in parts.iter().enumerate() {
                if i > 0 {
                    writeln!(lock, "\n# {suffix}").map_err(io)?;
                }
                lock.write_all(bytes).map_err(io)?;
            }
            lock.flush().map_err(io)?;
            Ok(Vec::new())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(0.884_523_809_523_809_5), "0.884523809524");
        assert_eq!(fmt12(1.0), "1");
        assert_eq!(fmt12(-0.0), "0");
        assert_eq!(fmt12(1.234_567_890_123_4e-20), "1.23456789012e-20");
        assert!(r12(f64::NAN).is_nan());
    }

    #[test]
    fn sibling_names() {
        assert_eq!(
            sibling(Path::new("/tmp/run.csv"), "summary"),
            PathBuf::from("/tmp/run_summary.csv")
        );
    }

    #[test]
    fn csv_table() {
        let mut t = Table::new("x", &["a", "b"]);
        t.push(vec!["1".into(), "2".into()]);
        assert_eq!(
            String::from_utf8(t.to_csv().unwrap()).unwrap(),
            "a,b\n1,2\n"
        );
    }
}
