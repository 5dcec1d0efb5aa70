//! Reading observations from text files.
//!
//! Two layouts are accepted: one number per line, or a comma-separated file
//! with a single header row from which one column is selected. Blank lines
//! are skipped. Without a column selector, a file whose first non-blank line
//! is not a number is treated as CSV and its first column is used.

use std::fs::File;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::Error;
use crate::stats::Dataset;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: file not found")]
    FileNotFound { path: PathBuf },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}:{line}: cannot parse '{token}' as a number")]
    Parse {
        path: PathBuf,
        line: u64,
        token: String,
    },

    #[error("{path}: no column '{column}' in header")]
    MissingColumn { path: PathBuf, column: String },

    #[error("{path}:{line}: row has no field for the selected column")]
    ShortRow { path: PathBuf, line: u64 },

    #[error("{path}:{line}: {source}")]
    Invalid {
        path: PathBuf,
        line: u64,
        #[source]
        source: Error,
    },

    #[error("{path}: {source}")]
    Empty {
        path: PathBuf,
        #[source]
        source: Error,
    },
}

/// Reads a dataset from `path`.
///
/// `column` selects a CSV column by header name, falling back to a
/// zero-based index when no header matches.
pub fn read_dataset(path: &Path, column: Option<&str>) -> Result<Dataset, InputError> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|source| match source.kind() {
            io::ErrorKind::NotFound => InputError::FileNotFound {
                path: path.to_path_buf(),
            },
            _ => InputError::Io {
                path: path.to_path_buf(),
                source,
            },
        })?;
    parse_dataset(&text, column, path)
}

pub(crate) fn parse_dataset(
    text: &str,
    column: Option<&str>,
    path: &Path,
) -> Result<Dataset, InputError> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i as u64 + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let headerless = column.is_none()
        && rows
            .peek()
            .is_none_or(|(_, l)| field(l, 0).parse::<f64>().is_ok());
    let index = if headerless {
        0
    } else {
        match rows.next() {
            Some((_, header)) => resolve_column(header, column, path)?,
            None => 0,
        }
    };

    let mut values = Vec::new();
    let mut lines = Vec::new();
    for (line, row) in rows {
        let token = row
            .split(',')
            .nth(index)
            .map(unquote)
            .ok_or_else(|| InputError::ShortRow {
                path: path.to_path_buf(),
                line,
            })?;
        let value: f64 = token.parse().map_err(|_| InputError::Parse {
            path: path.to_path_buf(),
            line,
            token: token.to_string(),
        })?;
        values.push(value);
        lines.push(line);
    }

    Dataset::new(values).map_err(|source| {
        let index = match &source {
            Error::NegativeValue { index, .. } | Error::NonFinite { index } => Some(*index),
            _ => None,
        };
        match index {
            Some(i) => InputError::Invalid {
                path: path.to_path_buf(),
                line: lines[i],
                source,
            },
            None => InputError::Empty {
                path: path.to_path_buf(),
                source,
            },
        }
    })
}

fn field(row: &str, index: usize) -> &str {
    row.split(',').nth(index).map_or("", unquote)
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .unwrap_or(s)
}

fn resolve_column(header: &str, column: Option<&str>, path: &Path) -> Result<usize, InputError> {
    let Some(column) = column else {
        return Ok(0);
    };
    let names: Vec<&str> = header.split(',').map(unquote).collect();
    if let Some(i) = names.iter().position(|h| *h == column) {
        return Ok(i);
    }
    match column.parse::<usize>() {
        Ok(i) if i < names.len() => Ok(i),
        _ => Err(InputError::MissingColumn {
            path: path.to_path_buf(),
            column: column.to_string(),
        }),
    }
}
