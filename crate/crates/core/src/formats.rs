//! Text formats for parity-check matrices: a dense 0/1 grid and the MacKay
//! alist format.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Dense,
    Alist,
}

impl MatrixFormat {
    /// `.alist` files are alist, everything else is dense.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("alist") => MatrixFormat::Alist,
            _ => MatrixFormat::Dense,
        }
    }
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {lineno}: {t:?} is not a nonnegative integer")))
        })
        .collect()
}

/// Dense format: a header line `rows cols`, then one line per row of
/// space-separated 0/1 entries.
pub fn parse_dense(text: &str) -> Result<BinaryMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (n, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let dims = numbers(header, n + 1)?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse("header must be `rows cols`".into()));
    };
    if rows == 0 || cols == 0 {
        return Err(Error::Parse("matrix dimensions must be positive".into()));
    }
    let mut out = Vec::with_capacity(rows);
    for (n, line) in lines {
        let entries = numbers(line, n + 1)?;
        if entries.len() != cols {
            return Err(Error::Parse(format!(
                "line {}: expected {cols} entries, found {}",
                n + 1,
                entries.len()
            )));
        }
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::Parse(format!("line {}: entries must be 0 or 1", n + 1)));
        }
        out.push(BinaryVector::from_bits(
            &entries.iter().map(|&e| e as u8).collect::<Vec<_>>(),
        ));
    }
    if out.len() != rows {
        return Err(Error::Parse(format!("expected {rows} rows, found {}", out.len())));
    }
    BinaryMatrix::from_rows(out)
}

pub fn write_dense(h: &BinaryMatrix) -> String {
    let mut s = format!("{} {}\n", h.num_rows(), h.num_cols());
    for r in h.rows() {
        let line: Vec<String> = r.bits().map(|b| b.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// MacKay alist: `n m`, max column and row degrees, the degree lists, then the
/// 1-based neighbor lists of every column and every row, each padded with
/// zeros to the maximum degree. Padding entries are ignored.
pub fn parse_alist(text: &str) -> Result<BinaryMatrix> {
    let mut tokens = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::Parse(format!("{t:?} is not a nonnegative integer")))
    });
    let mut next = || -> Result<usize> {
        tokens
            .next()
            .unwrap_or_else(|| Err(Error::Parse("alist file ends early".into())))
    };
    let (n, m) = (next()?, next()?);
    if n == 0 || m == 0 {
        return Err(Error::Parse("matrix dimensions must be positive".into()));
    }
    let (max_col, max_row) = (next()?, next()?);
    let col_degrees = (0..n).map(|_| next()).collect::<Result<Vec<_>>>()?;
    let row_degrees = (0..m).map(|_| next()).collect::<Result<Vec<_>>>()?;
    if col_degrees.iter().any(|&d| d > max_col) || row_degrees.iter().any(|&d| d > max_row) {
        return Err(Error::Parse("alist degree exceeds the declared maximum".into()));
    }
    let mut from_cols = BinaryMatrix::zeros(m, n);
    for (i, &degree) in col_degrees.iter().enumerate() {
        let entries = (0..max_col).map(|_| next()).collect::<Result<Vec<_>>>()?;
        let entries: Vec<usize> = entries.into_iter().filter(|&e| e != 0).collect();
        if entries.len() != degree {
            return Err(Error::Parse(format!("column {} degree mismatch", i + 1)));
        }
        for j in entries {
            if j > m {
                return Err(Error::Parse(format!("row index {j} out of range")));
            }
            from_cols.set(j - 1, i, true);
        }
    }
    let mut from_rows = BinaryMatrix::zeros(m, n);
    for (j, &degree) in row_degrees.iter().enumerate() {
        let entries = (0..max_row).map(|_| next()).collect::<Result<Vec<_>>>()?;
        let entries: Vec<usize> = entries.into_iter().filter(|&e| e != 0).collect();
        if entries.len() != degree {
            return Err(Error::Parse(format!("row {} degree mismatch", j + 1)));
        }
        for i in entries {
            if i > n {
                return Err(Error::Parse(format!("column index {i} out of range")));
            }
            from_rows.set(j, i - 1, true);
        }
    }
    if from_cols != from_rows {
        return Err(Error::Parse("alist column and row lists disagree".into()));
    }
    Ok(from_rows)
}

pub fn write_alist(h: &BinaryMatrix) -> String {
    let (m, n) = (h.num_rows(), h.num_cols());
    let col_w = h.col_weights();
    let row_w = h.row_weights();
    let max_col = col_w.iter().copied().max().unwrap_or(0);
    let max_row = row_w.iter().copied().max().unwrap_or(0);
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "{n} {m}");
    let _ = writeln!(s, "{max_col} {max_row}");
    let _ = writeln!(s, "{}", join(&col_w));
    let _ = writeln!(s, "{}", join(&row_w));
    for i in 0..n {
        let mut idx: Vec<usize> = h.column(i).support().iter().map(|j| j + 1).collect();
        idx.resize(max_col, 0);
        let _ = writeln!(s, "{}", join(&idx));
    }
    for j in 0..m {
        let mut idx: Vec<usize> = h.row(j).support().iter().map(|i| i + 1).collect();
        idx.resize(max_row, 0);
        let _ = writeln!(s, "{}", join(&idx));
    }
    s
}

pub fn parse(text: &str, format: MatrixFormat) -> Result<BinaryMatrix> {
    match format {
        MatrixFormat::Dense => parse_dense(text),
        MatrixFormat::Alist => parse_alist(text),
    }
}

pub fn write(h: &BinaryMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Dense => write_dense(h),
        MatrixFormat::Alist => write_alist(h),
    }
}

pub fn read_matrix(path: &Path, format: Option<MatrixFormat>) -> Result<BinaryMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse(&text, format.unwrap_or_else(|| MatrixFormat::from_path(path)))
}
