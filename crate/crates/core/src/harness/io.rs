//! Matrix text format.
//!
//! ```text
//! # comment lines start with '#'
//! n 2 2
//! 1.0,1.0 0.5,-0.5
//! 0.5,-0.5 1.0,1.0
//! ```
//!
//! The header is `n <rows> <cols>`; each following line is one row of
//! whitespace-separated `re,im` tokens. Blank lines are ignored.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{ComplexDenseMatrix, C64};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let token = &tail[..len];
        let column = line[..offset + start].chars().count() + 1;
        offset += start + len;
        rest = &tail[len..];
        Some((column, token))
    })
}

fn parse_count(token: Option<(usize, &str)>, line: usize, what: &str) -> Result<usize> {
    let (column, text) =
        token.ok_or_else(|| parse_error(line, 1, format!("missing {what} in header")))?;
    match text.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(parse_error(
            line,
            column,
            format!("invalid {what} '{text}'"),
        )),
    }
}

fn parse_entry(text: &str, line: usize, column: usize) -> Result<C64> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| parse_error(line, column, format!("expected 're,im', found '{text}'")))?;
    let value = |s: &str, shift: usize| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| parse_error(line, column + shift, format!("invalid number '{s}'")))
    };
    Ok(C64::new(value(re, 0)?, value(im, re.len() + 1)?))
}

pub fn parse_matrix(text: &str) -> Result<ComplexDenseMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing header 'n <rows> <cols>'"))?;
    let mut head = tokens(header);
    match head.next() {
        Some((_, "n")) => {}
        Some((column, other)) => {
            return Err(parse_error(
                hline,
                column,
                format!("expected 'n', found '{other}'"),
            ))
        }
        None => return Err(parse_error(hline, 1, "empty header")),
    }
    let rows = parse_count(head.next(), hline, "row count")?;
    let cols = parse_count(head.next(), hline, "column count")?;
    if let Some((column, extra)) = head.next() {
        return Err(parse_error(
            hline,
            column,
            format!("unexpected token '{extra}' in header"),
        ));
    }

    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (lineno, line) in lines {
        if seen == rows {
            return Err(parse_error(lineno, 1, format!("more than {rows} rows")));
        }
        let before = entries.len();
        for (column, token) in tokens(line) {
            if entries.len() - before == cols {
                return Err(parse_error(
                    lineno,
                    column,
                    format!("row has more than {cols} entries"),
                ));
            }
            entries.push(parse_entry(token, lineno, column)?);
        }
        let got = entries.len() - before;
        if got != cols {
            return Err(parse_error(
                lineno,
                line.chars().count() + 1,
                format!("row has {got} entries, expected {cols}"),
            ));
        }
        seen += 1;
    }
    if seen != rows {
        return Err(Error::DimensionMismatch(format!(
            "header declares {rows} rows, found {seen}"
        )));
    }
    ComplexDenseMatrix::new(rows, cols, entries)
}

pub fn read_matrix<R: Read>(mut reader: R) -> Result<ComplexDenseMatrix> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_matrix(&text)
}

pub fn parse_matrix_file(path: impl AsRef<Path>) -> Result<ComplexDenseMatrix> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// 17 significant digits, so `parse_matrix(&emit_matrix(m)) == m` exactly.
pub fn emit_matrix(m: &ComplexDenseMatrix) -> String {
    let mut out = format!("n {} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| format!("{:.16e},{:.16e}", z.re, z.im))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_matrix_file(path: impl AsRef<Path>, m: &ComplexDenseMatrix) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, emit_matrix(m)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
