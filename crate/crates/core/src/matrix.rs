//! Dense integer matrices over `Z ∪ {∞}` and the basic min-plus routines.
//!
//! Everything else in the crate is built on [`IntMatrix`]. Entries are
//! [`ExtInt`]s: a 64-bit integer with `i64::MAX` reserved for `∞`. Ingested
//! values are restricted to `|x| ≤ 2^60` so that any two- or three-term sum
//! formed by the algorithms is exact.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integer or `∞`. `∞` compares greater than every finite value and is
/// absorbing under addition. There is no `-∞`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtInt(i64);

impl ExtInt {
    pub const INF: ExtInt = ExtInt(i64::MAX);
    pub const ZERO: ExtInt = ExtInt(0);
    /// Largest magnitude accepted at ingestion.
    pub const BOUND: i64 = 1 << 60;

    /// Checked constructor used by parsers and public matrix builders.
    pub fn new(v: i64) -> Result<Self> {
        if v.unsigned_abs() > Self::BOUND as u64 {
            return Err(Error::OutOfRange(v as i128));
        }
        Ok(ExtInt(v))
    }

    /// Unchecked constructor for values produced by the algorithms.
    #[inline]
    pub const fn finite(v: i64) -> Self {
        debug_assert!(v != i64::MAX);
        ExtInt(v)
    }

    /// Raw representation; `i64::MAX` denotes `∞`.
    #[inline]
    pub const fn from_raw(v: i64) -> Self {
        ExtInt(v)
    }

    #[inline]
    pub const fn raw(self) -> i64 {
        self.0
    }

    #[inline]
    pub const fn is_inf(self) -> bool {
        self.0 == i64::MAX
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != i64::MAX
    }

    #[inline]
    pub fn get(self) -> Option<i64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    /// The finite value. Panics on `∞`.
    #[inline]
    #[track_caller]
    pub fn unwrap(self) -> i64 {
        assert!(self.is_finite(), "unwrap on ExtInt::INF");
        self.0
    }

    /// `self - x` for finite `x`, keeping `∞` absorbing.
    #[inline]
    pub fn minus(self, x: i64) -> Self {
        if self.is_inf() {
            self
        } else {
            ExtInt(self.0 - x)
        }
    }

    /// Multiply a finite value by a non-negative scalar, keeping `∞`.
    #[inline]
    pub fn scale(self, w: i64) -> Self {
        if self.is_inf() {
            self
        } else {
            ExtInt(self.0 * w)
        }
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    #[inline]
    fn add(self, rhs: ExtInt) -> ExtInt {
        if self.is_inf() || rhs.is_inf() {
            ExtInt::INF
        } else {
            ExtInt(self.0 + rhs.0)
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::finite(v)
    }
}

impl fmt::Debug for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("INF"),
        }
    }
}

impl FromStr for ExtInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "INF" {
            return Ok(ExtInt::INF);
        }
        let v: i128 = s.parse().map_err(|_| Error::Parse {
            line: 0,
            msg: format!("bad entry {s:?}"),
        })?;
        if v.unsigned_abs() > ExtInt::BOUND as u128 {
            return Err(Error::OutOfRange(v));
        }
        Ok(ExtInt(v as i64))
    }
}

/// Row-major dense matrix of [`ExtInt`], at least 1×1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExtInt>,
}

impl IntMatrix {
    /// Checked constructor: dimensions positive, length consistent, finite
    /// entries within [`ExtInt::BOUND`].
    pub fn new(rows: usize, cols: usize, data: Vec<ExtInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for (idx, v) in data.iter().enumerate() {
            if let Some(x) = v.get() {
                if x.unsigned_abs() > ExtInt::BOUND as u64 {
                    return Err(Error::OutOfRange(x as i128));
                }
            } else if v.raw() != i64::MAX {
                unreachable!("corrupt ExtInt at {idx}");
            }
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<ExtInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Build from raw `i64` rows with `i64::MAX` standing for `∞`.
    pub fn from_raw_rows(rows: &[&[i64]]) -> Result<Self> {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ExtInt::from_raw(v)).collect())
                .collect(),
        )
    }

    /// Unchecked builder for derived matrices (entries may exceed the
    /// ingestion bound, e.g. products of bound-sized inputs).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExtInt) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix {rows}x{cols}");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: ExtInt) -> Self {
        IntMatrix::from_fn(rows, cols, |_, _| v)
    }

    /// Min-plus identity: 0 on the diagonal, `∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        IntMatrix::from_fn(n, n, |i, j| if i == j { ExtInt::ZERO } else { ExtInt::INF })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ExtInt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: ExtInt) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[ExtInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[ExtInt] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Same matrix with column order reversed.
    pub fn reverse_cols(&self) -> IntMatrix {
        let c = self.cols;
        IntMatrix::from_fn(self.rows, c, |i, j| self.get(i, c - 1 - j))
    }

    /// Sub-matrix of rows `r0..r1` and columns `c0..c1`.
    pub fn slice(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        IntMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Largest magnitude among finite entries (0 if none).
    pub fn max_abs_finite(&self) -> i64 {
        self.data
            .iter()
            .filter_map(|v| v.get())
            .map(i64::abs)
            .max()
            .unwrap_or(0)
    }

    /// Entrywise minimum of two equally shaped matrices.
    pub fn entrywise_min(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).min(other.get(i, j)))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ExtInt::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Per-cell argmin of a min-plus product; `None` where the product is `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Option<usize>>,
}

impl WitnessMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// A matrix whose rows are non-decreasing (with `∞` above every finite
/// value), together with its total range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMatrix {
    matrix: IntMatrix,
    total_range: u64,
}

impl MonotoneMatrix {
    /// Validates row monotonicity and computes the total range.
    ///
    /// The total range sums, over rows with at least one finite entry,
    /// `max finite − first finite + 1`. All-`∞` rows contribute nothing.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let mut total_range = 0u64;
        for k in 0..matrix.rows() {
            let row = matrix.row(k);
            for j in 1..row.len() {
                if row[j] < row[j - 1] {
                    return Err(Error::NotMonotone { row: k, col: j });
                }
            }
            // Monotone rows keep ∞ in a suffix, so the first entry is the
            // first finite one whenever the row has any.
            if let Some(first) = row[0].get() {
                let last = row.iter().rev().find_map(|v| v.get()).unwrap_or(first);
                total_range += (last - first) as u64 + 1;
            }
        }
        Ok(MonotoneMatrix { matrix, total_range })
    }

    #[inline]
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    #[inline]
    pub fn total_range(&self) -> u64 {
        self.total_range
    }

    /// For each column `j ≥ 1`, the rows `k` with `B(k,j) ≠ B(k,j−1)`.
    /// Entry 0 is always empty.
    pub fn change_positions(&self) -> Vec<Vec<usize>> {
        let b = &self.matrix;
        let mut out = vec![Vec::new(); b.cols()];
        for k in 0..b.rows() {
            let row = b.row(k);
            for j in 1..row.len() {
                if row[j] != row[j - 1] {
                    out[j].push(k);
                }
            }
        }
        out
    }

    pub fn change_count(&self) -> usize {
        self.change_positions().iter().map(Vec::len).sum()
    }

    /// Floor-scaled copy; flooring preserves monotonicity.
    pub fn scale_down(&self, w: i64) -> Result<MonotoneMatrix> {
        MonotoneMatrix::new(scale_down(&self.matrix, w)?)
    }
}

/// Validating wrapper around [`MonotoneMatrix::new`].
pub fn validate_monotone(b: &IntMatrix) -> Result<MonotoneMatrix> {
    MonotoneMatrix::new(b.clone())
}

fn check_mul_dims(a: &IntMatrix, b: &IntMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// Cubic min-plus product with smallest-index witnesses. This is the
/// reference every other product in the crate is tested against.
pub fn minplus_naive(a: &IntMatrix, b: &IntMatrix) -> Result<(IntMatrix, WitnessMatrix)> {
    check_mul_dims(a, b)?;
    let (n, m, p) = (a.rows(), a.cols(), b.cols());
    let mut vals = vec![i64::MAX; n * p];
    let mut wit = vec![None; n * p];
    let braw: Vec<i64> = b.data().iter().map(|v| v.raw()).collect();
    for i in 0..n {
        let out = &mut vals[i * p..(i + 1) * p];
        let owit = &mut wit[i * p..(i + 1) * p];
        for k in 0..m {
            let x = a.get(i, k).raw();
            if x == i64::MAX {
                continue;
            }
            let brow = &braw[k * p..(k + 1) * p];
            for j in 0..p {
                let y = brow[j];
                if y == i64::MAX {
                    continue;
                }
                let s = x + y;
                // strict comparison keeps the smallest k on ties
                if s < out[j] {
                    out[j] = s;
                    owit[j] = Some(k);
                }
            }
        }
    }
    let c = IntMatrix {
        rows: n,
        cols: p,
        data: vals.into_iter().map(ExtInt::from_raw).collect(),
    };
    Ok((c, WitnessMatrix { rows: n, cols: p, data: wit }))
}

/// Work counters of [`minplus_sweep_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    /// One per (row of A, change position of B).
    pub updates: u64,
    /// One per output cell.
    pub queries: u64,
}

/// Min-plus product with a monotone right factor by sweeping columns and
/// maintaining the multiset `{A(i,k) + B(k,j)}`.
pub fn minplus_sweep(a: &IntMatrix, b: &MonotoneMatrix) -> Result<IntMatrix> {
    minplus_sweep_with_stats(a, b).map(|(c, _, _)| c)
}

pub fn minplus_sweep_with_stats(
    a: &IntMatrix,
    b: &MonotoneMatrix,
) -> Result<(IntMatrix, WitnessMatrix, SweepStats)> {
    let bm = b.matrix();
    check_mul_dims(a, bm)?;
    let (n, m, p) = (a.rows(), a.cols(), bm.cols());
    let changes = b.change_positions();
    let mut stats = SweepStats::default();
    let mut vals = Vec::with_capacity(n * p);
    let mut wit = Vec::with_capacity(n * p);
    let mut set: BTreeSet<(i64, usize)> = BTreeSet::new();
    for i in 0..n {
        set.clear();
        for k in 0..m {
            let t = a.get(i, k) + bm.get(k, 0);
            if let Some(v) = t.get() {
                set.insert((v, k));
            }
        }
        for j in 0..p {
            for &k in &changes[j] {
                stats.updates += 1;
                let x = a.get(i, k);
                if x.is_inf() {
                    continue;
                }
                if let Some(old) = (x + bm.get(k, j - 1)).get() {
                    set.remove(&(old, k));
                }
                if let Some(new) = (x + bm.get(k, j)).get() {
                    set.insert((new, k));
                }
            }
            stats.queries += 1;
            match set.first() {
                Some(&(v, k)) => {
                    vals.push(ExtInt::finite(v));
                    wit.push(Some(k));
                }
                None => {
                    vals.push(ExtInt::INF);
                    wit.push(None);
                }
            }
        }
    }
    Ok((
        IntMatrix { rows: n, cols: p, data: vals },
        WitnessMatrix { rows: n, cols: p, data: wit },
        stats,
    ))
}

/// Entrywise `⌊x / w⌋` (towards −∞); `∞` stays `∞`.
pub fn scale_down(x: &IntMatrix, w: i64) -> Result<IntMatrix> {
    if w < 1 {
        return Err(Error::InvalidParams(format!("scale factor {w} < 1")));
    }
    Ok(IntMatrix::from_fn(x.rows(), x.cols(), |i, j| match x.get(i, j).get() {
        Some(v) => ExtInt::finite(v.div_euclid(w)),
        None => ExtInt::INF,
    }))
}

/// True iff all entries are finite and horizontally and vertically adjacent
/// entries differ by at most `m`.
pub fn check_bounded_difference(x: &IntMatrix, m: i64) -> bool {
    let (r, c) = (x.rows(), x.cols());
    for i in 0..r {
        for j in 0..c {
            let Some(v) = x.get(i, j).get() else {
                return false;
            };
            if j + 1 < c {
                match x.get(i, j + 1).get() {
                    Some(u) if (u - v).abs() <= m => {}
                    _ => return false,
                }
            }
            if i + 1 < r {
                match x.get(i + 1, j).get() {
                    Some(u) if (u - v).abs() <= m => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Undo data for [`bd_to_monotone`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BdOffsets {
    pub b11: i64,
    pub m: i64,
}

impl BdOffsets {
    /// Recover `A ⋆ B` from `A ⋆ B′`: `C(i,j) = C′(i,j) + B(1,1) − j·M`
    /// with 1-based `j`.
    pub fn undo(&self, c_prime: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(c_prime.rows(), c_prime.cols(), |i, j| {
            c_prime.get(i, j).minus(-self.b11 + (j as i64 + 1) * self.m)
        })
    }
}

/// Shift a bounded-difference matrix into a monotone one:
/// `B′(k,j) = B(k,j) − B(1,1) + j·M` (1-based `j`).
pub fn bd_to_monotone(b: &IntMatrix, m: i64) -> Result<(MonotoneMatrix, BdOffsets)> {
    if m < 0 || !check_bounded_difference(b, m) {
        return Err(Error::NotBoundedDifference { bound: m });
    }
    let b11 = b.get(0, 0).unwrap();
    let shifted = IntMatrix::from_fn(b.rows(), b.cols(), |k, j| {
        ExtInt::finite(b.get(k, j).unwrap() - b11 + (j as i64 + 1) * m)
    });
    Ok((MonotoneMatrix::new(shifted)?, BdOffsets { b11, m }))
}
