//! Range mode: the most frequent element of a contiguous subarray.
//!
//! Frequencies between chosen points are encoded as a min-plus product: with
//! `A(i,k)` the count of value `k` strictly before point `pᵢ` and `B(k,j)` the
//! negated count up to and including `pⱼ`, `A(i,k) + B(k,j)` is minus the
//! count of `k` in `[pᵢ, pⱼ]`. Reversing the columns of `B` makes every row
//! non-decreasing, so the monotone machinery applies unchanged.

mod batch;
mod blocklist;
mod dynamic;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ExtInt, IntMatrix, MonotoneMatrix};

pub use batch::{batch_range_mode, batch_range_mode_with, BatchConfig, BatchReport};
pub use blocklist::{Element, LiveArray, NO_SNAP};
pub use dynamic::{DrmConfig, DrmStats, DynamicRangeModeEngine, QueryParts};

/// Answer to a range mode query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModeAnswer {
    pub frequency: usize,
    pub witness: u64,
}

impl ModeAnswer {
    /// Higher frequency wins; ties go to the smaller id.
    pub fn better(self, other: ModeAnswer) -> ModeAnswer {
        if (other.frequency, std::cmp::Reverse(other.witness)) > (self.frequency, std::cmp::Reverse(self.witness)) {
            other
        } else {
            self
        }
    }
}

pub(crate) fn best_of(x: Option<ModeAnswer>, y: Option<ModeAnswer>) -> Option<ModeAnswer> {
    match (x, y) {
        (None, o) | (o, None) => o,
        (Some(p), Some(q)) => Some(p.better(q)),
    }
}

/// Static array with per-value sorted position lists (0-based internally).
#[derive(Clone, Debug, Default)]
pub struct ModeArray {
    values: Vec<u64>,
    positions: BTreeMap<u64, Vec<usize>>,
}

impl ModeArray {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::InvalidParams("element ids must be positive".into()));
        }
        let mut positions: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (p, &v) in values.iter().enumerate() {
            positions.entry(v).or_default().push(p);
        }
        Ok(ModeArray { values, positions })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn positions(&self, v: u64) -> &[usize] {
        self.positions.get(&v).map_or(&[], |p| p.as_slice())
    }

    /// Distinct values with their total counts, ascending by id.
    pub fn histogram(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.positions.iter().map(|(&v, p)| (v, p.len()))
    }

    /// Occurrences of `v` in 0-based inclusive `[l, r]`.
    pub fn count0(&self, v: u64, l: usize, r: usize) -> usize {
        let p = self.positions(v);
        p.partition_point(|&x| x <= r) - p.partition_point(|&x| x < l)
    }

    /// Occurrences of `v` among the 0-based positions `< end`.
    pub fn prefix0(&self, v: u64, end: usize) -> usize {
        self.positions(v).partition_point(|&x| x < end)
    }

    /// Occurrences of `v` in 1-based inclusive `[l, r]`.
    pub fn count(&self, v: u64, l: usize, r: usize) -> usize {
        self.count0(v, l - 1, r - 1)
    }

    pub(crate) fn check_range(&self, l: usize, r: usize) -> Result<()> {
        check_range(self.len(), l, r)
    }
}

pub(crate) fn check_range(len: usize, l: usize, r: usize) -> Result<()> {
    if l == 0 || l > r || r > len {
        return Err(Error::OutOfBounds(format!("range [{l}, {r}] in array of length {len}")));
    }
    Ok(())
}

/// Brute-force mode of 1-based `[l, r]`; ties go to the smallest id.
pub fn range_mode_naive(a: &[u64], l: usize, r: usize) -> Result<ModeAnswer> {
    check_range(a.len(), l, r)?;
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &v in &a[l - 1..r] {
        *counts.entry(v).or_insert(0) += 1;
    }
    let (witness, frequency) = counts
        .into_iter()
        .fold((0, 0), |(bw, bf), (v, c)| if c > bf { (v, c) } else { (bw, bf) });
    Ok(ModeAnswer { frequency, witness })
}

/// Frequency encoding over chosen points and a set of values.
#[derive(Clone, Debug)]
pub struct FrequencyMatrices {
    /// `|points| × |values|`, non-negative prefix counts.
    pub a: IntMatrix,
    /// `|values| × |points|`, column-reversed negated prefix counts.
    pub b: MonotoneMatrix,
    /// 1-based chosen positions, ascending.
    pub points: Vec<usize>,
    /// Value of each inner index, ascending.
    pub values: Vec<u64>,
}

impl FrequencyMatrices {
    /// Column of `B` holding point `j`.
    pub fn col(&self, j: usize) -> usize {
        self.points.len() - 1 - j
    }

    /// Frequency recovered from a product entry `C(i, col(j))`.
    pub fn decode(c: ExtInt) -> usize {
        (-c.unwrap()) as usize
    }
}

/// Build the encoding for 1-based sorted `points` and values `frequent`.
/// Returns `None` when either set is empty.
pub fn build_frequency_matrices(a: &ModeArray, points: &[usize], frequent: &[u64]) -> Option<FrequencyMatrices> {
    if points.is_empty() || frequent.is_empty() {
        return None;
    }
    let mut values = frequent.to_vec();
    values.sort_unstable();
    values.dedup();
    let m = points.len();
    let am = IntMatrix::from_fn(m, values.len(), |i, k| ExtInt::finite(a.prefix0(values[k], points[i] - 1) as i64));
    let bm = IntMatrix::from_fn(values.len(), m, |k, jr| {
        ExtInt::finite(-(a.prefix0(values[k], points[m - 1 - jr]) as i64))
    });
    let b = MonotoneMatrix::new(bm).expect("prefix counts are monotone");
    Some(FrequencyMatrices { a: am, b, points: points.to_vec(), values })
}
