//! Exact min-plus product when the left factor has small entries.
//!
//! If every finite `A(i,k)` lies in `[−W, W]`, then for a fixed column `j`
//! only the right entries within `2W` of the smallest useful one can win:
//! a candidate with `B(k′,j) > B(k,j) + 2W` is dominated by `k`. Both
//! strategies below exploit this. `WindowScan` walks each sorted column
//! directly; `Bucketed` cuts sorted columns into buckets and each bucket
//! into runs of spread at most `2W`, and evaluates every run with the
//! small-entry product.

use crate::error::{Error, Result};
use crate::matrix::{ExtInt, IntMatrix};
use crate::params::OmegaPreset;

pub use crate::params::choose_delta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    WindowScan,
    Bucketed,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundedKernelConfig {
    pub w: i64,
    pub strategy: Strategy,
    /// Bucket size exponent; only used by [`Strategy::Bucketed`].
    pub delta: f64,
    /// Reporting only.
    pub omega: OmegaPreset,
}

impl BoundedKernelConfig {
    pub fn window(w: i64) -> Self {
        BoundedKernelConfig { w, strategy: Strategy::WindowScan, delta: 0.5, omega: OmegaPreset::Current }
    }

    pub fn bucketed(w: i64, delta: f64) -> Self {
        BoundedKernelConfig { w, strategy: Strategy::Bucketed, delta, omega: OmegaPreset::Current }
    }
}

fn check_dims(a: &IntMatrix, b: &IntMatrix) -> Result<()> {
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

fn check_entries(x: &IntMatrix, lo: i64, hi: i64, bound: i64) -> Result<()> {
    for i in 0..x.rows() {
        for (j, v) in x.row(i).iter().enumerate() {
            if let Some(v) = v.get() {
                if v < lo || v > hi {
                    return Err(Error::EntryBound { row: i, col: j, value: v, bound });
                }
            }
        }
    }
    Ok(())
}

/// For each column, the rows with finite entries sorted by `(B(k,j), k)`.
fn sorted_columns(b: &IntMatrix) -> Vec<Vec<(i64, usize)>> {
    (0..b.cols())
        .map(|j| {
            let mut col: Vec<(i64, usize)> =
                (0..b.rows()).filter_map(|k| b.get(k, j).get().map(|v| (v, k))).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

/// Exact `A ⋆ B` for `A` with finite entries in `[−W, W]`.
pub fn bounded_minplus(a: &IntMatrix, b: &IntMatrix, cfg: &BoundedKernelConfig) -> Result<IntMatrix> {
    check_dims(a, b)?;
    if cfg.w < 0 {
        return Err(Error::InvalidParams(format!("negative entry bound {}", cfg.w)));
    }
    if !(0.0..=1.0).contains(&cfg.delta) {
        return Err(Error::InvalidParams(format!("delta {} outside [0, 1]", cfg.delta)));
    }
    check_entries(a, -cfg.w, cfg.w, cfg.w)?;
    Ok(match cfg.strategy {
        Strategy::WindowScan => window_scan(a, b, cfg.w),
        Strategy::Bucketed => bucketed(a, b, cfg.w, cfg.delta),
    })
}

/// Rows with at most this many finite entries are evaluated directly.
const DIRECT_ROW: usize = 24;

fn window_scan(a: &IntMatrix, b: &IntMatrix, w: i64) -> IntMatrix {
    let cols = sorted_columns(b);
    let finite: Vec<Vec<usize>> = (0..a.rows())
        .map(|i| (0..a.cols()).filter(|&k| a.get(i, k).is_finite()).collect())
        .collect();
    let mut c = IntMatrix::filled(a.rows(), b.cols(), ExtInt::INF);
    for i in 0..a.rows() {
        let arow = a.row(i);
        if finite[i].len() <= DIRECT_ROW {
            for j in 0..b.cols() {
                let best = finite[i].iter().map(|&k| arow[k] + b.get(k, j)).min();
                c.set(i, j, best.unwrap_or(ExtInt::INF));
            }
            continue;
        }
        for (j, col) in cols.iter().enumerate() {
            let Some(start) = col.iter().position(|&(_, k)| arow[k].is_finite()) else {
                continue;
            };
            let limit = col[start].0 + 2 * w;
            let mut best = i64::MAX;
            for &(bv, k) in &col[start..] {
                if bv > limit {
                    break;
                }
                if let Some(av) = arow[k].get() {
                    best = best.min(av + bv);
                }
            }
            c.set(i, j, ExtInt::finite(best));
        }
    }
    c
}

fn bucketed(a: &IntMatrix, b: &IntMatrix, w: i64, delta: f64) -> IntMatrix {
    let n = a.rows().max(b.cols()).max(2);
    let bucket = ((n as f64).powf(delta).ceil() as usize).max(1);
    let cols = sorted_columns(b);
    let live: Vec<usize> = (0..a.rows()).filter(|&i| a.row(i).iter().any(|v| v.is_finite())).collect();
    // shifted left factor, entries in [0, 2W]
    let a_shift = IntMatrix::from_fn(a.rows(), a.cols(), |i, k| match a.get(i, k).get() {
        Some(v) => ExtInt::finite(v + w),
        None => ExtInt::INF,
    });
    let mut c = IntMatrix::filled(a.rows(), b.cols(), ExtInt::INF);
    for (j, col) in cols.iter().enumerate() {
        let mut best = vec![i64::MAX; a.rows()];
        'buckets: for chunk in col.chunks(bucket) {
            let mut s = 0;
            while s < chunk.len() {
                let lo = chunk[s].0;
                // anything from here on is at least lo − W
                if live.iter().all(|&i| best[i] <= lo - w) {
                    break 'buckets;
                }
                let mut e = s;
                while e < chunk.len() && chunk[e].0 - lo <= 2 * w {
                    e += 1;
                }
                let run = &chunk[s..e];
                // gather the run's rows of A and the normalized column
                let sub_a = IntMatrix::from_fn(a.rows(), run.len(), |i, t| a_shift.get(i, run[t].1));
                let sub_b = IntMatrix::from_fn(run.len(), 1, |t, _| ExtInt::finite(run[t].0 - lo));
                let part = small_entry_unchecked(&sub_a, &sub_b, 2 * w);
                for &i in &live {
                    if let Some(v) = part.get(i, 0).get() {
                        best[i] = best[i].min(v - w + lo);
                    }
                }
                s = e;
            }
        }
        for &i in &live {
            if best[i] != i64::MAX {
                c.set(i, j, ExtInt::finite(best[i]));
            }
        }
    }
    c
}

/// Exact `A ⋆ B` for finite entries of both factors in `[0, U]`.
///
/// Uses level indicators: for every value `x` the set of `k` with
/// `A(i,k) = x` is a bitset, and `C(i,j)` is the least `s` such that some
/// `x + y = s` has intersecting level sets for row `i` and column `j`.
pub fn small_entry_minplus(a: &IntMatrix, b: &IntMatrix, u: i64) -> Result<IntMatrix> {
    check_dims(a, b)?;
    if u < 0 {
        return Err(Error::InvalidParams(format!("negative entry bound {u}")));
    }
    check_entries(a, 0, u, u)?;
    check_entries(b, 0, u, u)?;
    Ok(small_entry_unchecked(a, b, u))
}

fn small_entry_unchecked(a: &IntMatrix, b: &IntMatrix, u: i64) -> IntMatrix {
    let (n, m, p) = (a.rows(), a.cols(), b.cols());
    let words = m.div_ceil(64);
    let levels = (u + 1) as usize;
    // a_bits[(i * levels + x) * words ..] is row i's level-x indicator
    let mut a_bits = vec![0u64; n * levels * words];
    for i in 0..n {
        for k in 0..m {
            if let Some(x) = a.get(i, k).get() {
                a_bits[(i * levels + x as usize) * words + k / 64] |= 1 << (k % 64);
            }
        }
    }
    let mut b_bits = vec![0u64; p * levels * words];
    for j in 0..p {
        for k in 0..m {
            if let Some(y) = b.get(k, j).get() {
                b_bits[(j * levels + y as usize) * words + k / 64] |= 1 << (k % 64);
            }
        }
    }
    let meets = |i: usize, x: usize, j: usize, y: usize| {
        let ra = &a_bits[(i * levels + x) * words..][..words];
        let rb = &b_bits[(j * levels + y) * words..][..words];
        ra.iter().zip(rb).any(|(p, q)| p & q != 0)
    };
    IntMatrix::from_fn(n, p, |i, j| {
        for s in 0..=2 * (levels - 1) {
            let x_lo = s.saturating_sub(levels - 1);
            let x_hi = s.min(levels - 1);
            if (x_lo..=x_hi).any(|x| meets(i, x, j, s - x)) {
                return ExtInt::finite(s as i64);
            }
        }
        ExtInt::INF
    })
}
