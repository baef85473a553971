//! Text formats for matrices, arrays, operation traces and query files.
//!
//! All indices in the text formats are 1-based; in memory they are 0-based.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{ExtInt, IntMatrix};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Token iterator that remembers the (1-based) line of each token.
struct Tokens<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .flat_map(|(ln, l)| l.split_whitespace().map(move |t| (ln + 1, t)));
        Tokens { inner: Box::new(inner), last_line: 1 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let t = self.inner.next();
        if let Some((ln, _)) = t {
            self.last_line = ln;
        }
        t
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        let (ln, t) = self.next().ok_or_else(|| perr(self.last_line, format!("missing {what}")))?;
        t.parse().map_err(|_| perr(ln, format!("bad {what} {t:?}")))
    }
}

/// Parse the `MPM v1` matrix format.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header.trim() != "MPM v1" {
        return Err(perr(1, format!("expected header \"MPM v1\", got {header:?}")));
    }
    let body_start = text.find('\n').map_or(text.len(), |p| p + 1);
    let mut tok = Tokens::new(&text[body_start..]);
    let rows = tok.usize("row count").map_err(shift_line)?;
    let cols = tok.usize("column count").map_err(shift_line)?;
    if rows == 0 || cols == 0 {
        return Err(perr(2, "matrix dimensions must be positive"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    while let Some((ln, t)) = tok.next() {
        let v: ExtInt = t.parse().map_err(|e| match e {
            Error::Parse { msg, .. } => perr(ln + 1, msg),
            other => other,
        })?;
        data.push(v);
    }
    if data.len() != rows * cols {
        return Err(perr(
            tok.last_line + 1,
            format!("expected {} entries, found {}", rows * cols, data.len()),
        ));
    }
    IntMatrix::new(rows, cols, data)
}

fn shift_line(e: Error) -> Error {
    match e {
        Error::Parse { line, msg } => Error::Parse { line: line + 1, msg },
        other => other,
    }
}

/// Render in the `MPM v1` format, one matrix row per line.
pub fn format_matrix(m: &IntMatrix) -> String {
    let mut s = format!("MPM v1\n{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ExtInt::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<IntMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &IntMatrix) -> Result<()> {
    fs::write(path, format_matrix(m))?;
    Ok(())
}

/// Array file: a count followed by that many positive ids.
pub fn parse_array(text: &str) -> Result<Vec<u64>> {
    let mut tok = Tokens::new(text);
    let n = tok.usize("element count")?;
    let mut out = Vec::with_capacity(n);
    while let Some((ln, t)) = tok.next() {
        let v: u64 = t.parse().map_err(|_| perr(ln, format!("bad element id {t:?}")))?;
        if v == 0 {
            return Err(perr(ln, "element ids must be positive"));
        }
        out.push(v);
    }
    if out.len() != n {
        return Err(perr(tok.last_line, format!("expected {n} elements, found {}", out.len())));
    }
    Ok(out)
}

pub fn format_array(a: &[u64]) -> String {
    let mut s = format!("{}\n", a.len());
    let body: Vec<String> = a.iter().map(u64::to_string).collect();
    s.push_str(&body.join(" "));
    s.push('\n');
    s
}

/// One line of a dynamic range-mode trace. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Insert { pos: usize, value: u64 },
    Delete { pos: usize },
    Query { l: usize, r: usize },
}

pub fn parse_ops(text: &str) -> Result<Vec<Op>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.is_empty() {
            continue;
        }
        let num = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| perr(ln, format!("bad number {s:?}")))
        };
        let op = match (f[0], f.len()) {
            ("I", 3) => Op::Insert { pos: num(f[1])? as usize, value: num(f[2])? },
            ("D", 2) => Op::Delete { pos: num(f[1])? as usize },
            ("Q", 3) => Op::Query { l: num(f[1])? as usize, r: num(f[2])? as usize },
            _ => return Err(perr(ln, format!("unrecognised operation {line:?}"))),
        };
        out.push(op);
    }
    Ok(out)
}

pub fn format_ops(ops: &[Op]) -> String {
    let mut s = String::new();
    for op in ops {
        match *op {
            Op::Insert { pos, value } => writeln!(s, "I {pos} {value}"),
            Op::Delete { pos } => writeln!(s, "D {pos}"),
            Op::Query { l, r } => writeln!(s, "Q {l} {r}"),
        }
        .unwrap();
    }
    s
}

/// Range queries for batch mode: one `l r` pair per line, 1-based inclusive.
pub fn parse_ranges(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            [] => {}
            [l, r] => {
                let p = |s: &str| s.parse::<usize>().map_err(|_| perr(ln + 1, format!("bad index {s:?}")));
                out.push((p(l)?, p(r)?));
            }
            _ => return Err(perr(ln + 1, "expected `l r`")),
        }
    }
    Ok(out)
}

/// A parsed query-witness request, converted to 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryLine {
    pub i: usize,
    pub j: usize,
    pub excluded: Vec<usize>,
}

/// Query file lines `i j s k1 .. ks` (1-based).
pub fn parse_queries(text: &str) -> Result<Vec<QueryLine>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.is_empty() {
            continue;
        }
        let nums: Vec<usize> = f
            .iter()
            .map(|s| s.parse::<usize>().map_err(|_| perr(ln, format!("bad index {s:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 3 || nums.len() != 3 + nums[2] {
            return Err(perr(ln, "expected `i j s k1 .. ks`"));
        }
        if nums[0] == 0 || nums[1] == 0 || nums[3..].contains(&0) {
            return Err(perr(ln, "indices are 1-based"));
        }
        out.push(QueryLine {
            i: nums[0] - 1,
            j: nums[1] - 1,
            excluded: nums[3..].iter().map(|k| k - 1).collect(),
        });
    }
    Ok(out)
}
