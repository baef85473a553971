#![allow(dead_code)]

use mmp_core::gen::{left_matrix, monotone_matrix, Rng64};
use mmp_core::monotone::pow_ceil;
use mmp_core::{ExtInt, IntMatrix, MonotoneMatrix};
use rand::Rng;

/// `n × ⌈n^β⌉` left factor and `⌈n^β⌉ × n` monotone right factor with total
/// range about `n^{β+η}`. Some left entries are `∞`, and some right rows
/// end in an `∞` suffix.
pub fn mmp_instance(r: &mut Rng64, n: usize, beta: f64, eta: f64) -> (IntMatrix, MonotoneMatrix) {
    let m = (pow_ceil(n.max(2), beta) as usize).clamp(1, n.max(1));
    let range = pow_ceil(n.max(2), beta + eta).max(m as u64);
    let b = monotone_matrix(r, m, n, range).unwrap().into_matrix();
    let b = IntMatrix::from_fn(m, n, |k, j| {
        // rows with index ≡ 3 (mod 7) lose a random suffix
        if k % 7 == 3 && j * 4 >= n * 3 {
            ExtInt::INF
        } else {
            b.get(k, j)
        }
    });
    let spread = r.gen_range(1..=range as i64);
    let a = left_matrix(r, n, m, spread, 0.1);
    (a, MonotoneMatrix::new(b).unwrap())
}

/// `rows × cols` with entries in `[−w, w]` or `∞`.
pub fn bounded_pair(r: &mut Rng64, n: usize, m: usize, p: usize, w: i64) -> (IntMatrix, IntMatrix) {
    (left_matrix(r, n, m, w, 0.15), left_matrix(r, m, p, w, 0.15))
}

/// Distinct random subset of `0..m` with at most `max` elements.
pub fn random_subset(r: &mut Rng64, m: usize, max: usize) -> Vec<usize> {
    let size = r.gen_range(0..=max.min(m));
    let mut all: Vec<usize> = (0..m).collect();
    for i in 0..size {
        let j = r.gen_range(i..m);
        all.swap(i, j);
    }
    all.truncate(size);
    all
}
