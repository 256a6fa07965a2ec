//! Plain-text matrix dumps.
//!
//! The first line is `rows cols modulus` (modulus 0 for integer entries),
//! followed by one whitespace-separated row per line.

use std::fmt::Display;
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};

pub fn write_matrix<W, T, R>(out: &mut W, rows: usize, cols: usize, modulus: u32, data: R) -> io::Result<()>
where
    W: Write,
    T: Display,
    R: IntoIterator,
    R::Item: IntoIterator<Item = T>,
{
    writeln!(out, "{rows} {cols} {modulus}")?;
    let mut line = String::new();
    for row in data {
        line.clear();
        for (j, x) in row.into_iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(&x.to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// A dump read back into memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u32,
    pub data: Vec<Vec<i64>>,
}

pub fn read_matrix<R: BufRead>(input: R) -> Result<MatrixDump> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Malformed("empty matrix dump".into()))?
        .map_err(|e| Error::Malformed(e.to_string()))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Malformed(format!("bad header field {t:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols, modulus] = fields[..] else {
        return Err(Error::Malformed(format!("header needs 3 fields, found {}", fields.len())));
    };
    let mut data = Vec::with_capacity(rows);
    for line in lines {
        let line = line.map_err(|e| Error::Malformed(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Malformed(format!("bad entry {t:?}"))))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::WidthMismatch(cols, row.len()));
        }
        data.push(row);
    }
    if data.len() != rows {
        return Err(Error::Malformed(format!("expected {rows} rows, found {}", data.len())));
    }
    Ok(MatrixDump { rows, cols, modulus: modulus as u32, data })
}
