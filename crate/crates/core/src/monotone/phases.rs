use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounded::{bounded_minplus, BoundedKernelConfig};
use crate::error::Result;
use crate::matrix::{minplus_sweep, ExtInt, IntMatrix, MonotoneMatrix};
use crate::pset::PersistentSet;

/// Output of the scaling phase.
#[derive(Clone, Debug)]
pub struct Phase1 {
    pub w: i64,
    /// `⌊A / W⌋`
    pub a_s: IntMatrix,
    /// `⌊B / W⌋`, still monotone
    pub b_s: MonotoneMatrix,
    /// `Ã ⋆ B̃`
    pub p: IntMatrix,
    /// `W · (Ã ⋆ B̃)`, within `2W` below the true product
    pub c_tilde: IntMatrix,
}

pub fn phase1_approx(a: &IntMatrix, b: &MonotoneMatrix, w: i64) -> Result<Phase1> {
    let a_s = crate::matrix::scale_down(a, w)?;
    let b_s = b.scale_down(w)?;
    let p = minplus_sweep(&a_s, &b_s)?;
    let c_tilde = IntMatrix::from_fn(p.rows(), p.cols(), |i, j| p.get(i, j).scale(w));
    Ok(Phase1 { w, a_s, b_s, p, c_tilde })
}

/// Which `(i, k)` pairs of the left factor have been given a finite entry
/// in some round matrix, and by which round.
#[derive(Clone, Debug)]
pub struct CoverageLedger {
    rows: usize,
    inner: usize,
    round_of: Vec<u32>,
    /// Column `jʳ` chosen for each round, in order.
    pub selected: Vec<usize>,
}

const UNCOVERED: u32 = u32::MAX;

impl CoverageLedger {
    pub fn new(rows: usize, inner: usize) -> Self {
        CoverageLedger { rows, inner, round_of: vec![UNCOVERED; rows * inner], selected: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn inner(&self) -> usize {
        self.inner
    }

    #[inline]
    pub fn covered(&self, i: usize, k: usize) -> bool {
        self.round_of[i * self.inner + k] != UNCOVERED
    }

    pub fn round_of(&self, i: usize, k: usize) -> Option<usize> {
        let r = self.round_of[i * self.inner + k];
        (r != UNCOVERED).then_some(r as usize)
    }

    pub fn rounds(&self) -> usize {
        self.selected.len()
    }

    pub fn covered_count(&self) -> usize {
        self.round_of.iter().filter(|&&r| r != UNCOVERED).count()
    }
}

/// Round matrices for column `jr` against the reference estimate `c_ref`.
///
/// `Aʳ(i,k) = A(i,k) + B(k,jr) − c_ref(i,jr)` when finite, within `3W` in
/// absolute value and `(i,k)` is still uncovered; `∞` otherwise. The pairs
/// given finite entries are recorded as covered by the new round.
/// `Bʳ(k,j) = B(k,j) − B(k,jr)` (or 0 when `B(k,jr) = ∞`).
pub fn build_round_matrices(
    a: &IntMatrix,
    b: &IntMatrix,
    c_ref: &IntMatrix,
    w: i64,
    jr: usize,
    ledger: &mut CoverageLedger,
) -> (IntMatrix, IntMatrix) {
    let r = ledger.selected.len() as u32;
    ledger.selected.push(jr);
    let inner = ledger.inner;
    let mut ar = IntMatrix::filled(a.rows(), a.cols(), ExtInt::INF);
    for i in 0..a.rows() {
        let Some(c) = c_ref.get(i, jr).get() else { continue };
        for k in 0..a.cols() {
            if ledger.round_of[i * inner + k] != UNCOVERED {
                continue;
            }
            if let Some(s) = (a.get(i, k) + b.get(k, jr)).get() {
                let v = s - c;
                if v.abs() <= 3 * w {
                    ar.set(i, k, ExtInt::finite(v));
                    ledger.round_of[i * inner + k] = r;
                }
            }
        }
    }
    let br = IntMatrix::from_fn(b.rows(), b.cols(), |k, j| match b.get(k, jr).get() {
        Some(base) => b.get(k, j).minus(base),
        None => ExtInt::ZERO,
    });
    (ar, br)
}

/// Fold one round into `Ĉ`: `Ĉ(i,j) ← min(Ĉ(i,j), Cʳ(i,j) + c_ref(i,jr))`.
fn apply_round(
    c_hat: &mut IntMatrix,
    ar: &IntMatrix,
    br: &IntMatrix,
    c_ref: &IntMatrix,
    jr: usize,
    kernel: &BoundedKernelConfig,
) -> Result<()> {
    if ar.data().iter().all(|v| v.is_inf()) {
        return Ok(());
    }
    let cfg = BoundedKernelConfig { w: 3 * kernel.w, ..*kernel };
    let cr = bounded_minplus(ar, br, &cfg)?;
    for i in 0..c_hat.rows() {
        let off = c_ref.get(i, jr);
        for j in 0..c_hat.cols() {
            let v = cr.get(i, j) + off;
            if v < c_hat.get(i, j) {
                c_hat.set(i, j, v);
            }
        }
    }
    Ok(())
}

/// Run rounds at the given columns, in order.
///
/// `kernel.w` is the scaling factor `W`; round products use bound `3W`.
pub fn phase2_with_columns(
    a: &IntMatrix,
    b: &MonotoneMatrix,
    c_tilde: &IntMatrix,
    columns: &[usize],
    kernel: &BoundedKernelConfig,
) -> Result<(IntMatrix, CoverageLedger)> {
    let bm = b.matrix();
    let mut ledger = CoverageLedger::new(a.rows(), a.cols());
    let mut c_hat = IntMatrix::filled(a.rows(), bm.cols(), ExtInt::INF);
    for &jr in columns {
        let (ar, br) = build_round_matrices(a, bm, c_tilde, kernel.w, jr, &mut ledger);
        apply_round(&mut c_hat, &ar, &br, c_tilde, jr, kernel)?;
    }
    Ok((c_hat, ledger))
}

/// Randomized selection: `rounds` columns drawn uniformly with replacement.
pub fn phase2_randomized(
    a: &IntMatrix,
    b: &MonotoneMatrix,
    c_tilde: &IntMatrix,
    rounds: usize,
    seed: u64,
    kernel: &BoundedKernelConfig,
) -> Result<(IntMatrix, CoverageLedger)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = b.matrix().cols();
    let columns: Vec<usize> = (0..rounds).map(|_| rng.gen_range(0..cols)).collect();
    phase2_with_columns(a, b, c_tilde, &columns, kernel)
}

/// Diagnostics of the deterministic selection.
#[derive(Clone, Debug, Default)]
pub struct SelectionStats {
    pub threshold: u64,
    /// Moderately-relevant uncovered pair count at each selected column.
    pub counts_at_selection: Vec<u64>,
}

/// Number of uncovered pairs `(i,k)` with `Ã(i,k) + B̃(k,j) ≤ P(i,j) + 1`,
/// counted from scratch (audit helper).
pub fn moderate_uncovered_count(p1: &Phase1, ledger: &CoverageLedger, j: usize) -> u64 {
    let mut count = 0;
    for i in 0..p1.a_s.rows() {
        let Some(pv) = p1.p.get(i, j).get() else { continue };
        for k in 0..p1.a_s.cols() {
            if ledger.covered(i, k) {
                continue;
            }
            if let Some(key) = (p1.a_s.get(i, k) + p1.b_s.matrix().get(k, j)).get() {
                if key <= pv + 1 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Deterministic selection: sweep the columns keeping, per row, the
/// ordered keys `Ã(i,k) + B̃(k,j)` of uncovered pairs; whenever at least
/// `threshold` of them are within one of the scaled product, run a round
/// at that column.
pub fn phase2_deterministic(
    a: &IntMatrix,
    b: &MonotoneMatrix,
    p1: &Phase1,
    threshold: u64,
    kernel: &BoundedKernelConfig,
) -> Result<(IntMatrix, CoverageLedger, SelectionStats)> {
    let bm = b.matrix();
    let bs = p1.b_s.matrix();
    let (n, m, cols) = (a.rows(), a.cols(), bm.cols());
    let threshold = threshold.max(1);
    let changes = p1.b_s.change_positions();
    let mut ledger = CoverageLedger::new(n, m);
    let mut c_hat = IntMatrix::filled(n, cols, ExtInt::INF);
    let mut stats = SelectionStats { threshold, ..Default::default() };

    let key = |i: usize, k: usize, j: usize| (p1.a_s.get(i, k) + bs.get(k, j)).get();
    let mut sets: Vec<PersistentSet<(i64, usize)>> = (0..n)
        .map(|i| {
            let mut s = PersistentSet::new();
            for k in 0..m {
                if let Some(v) = key(i, k, 0) {
                    s = s.insert((v, k));
                }
            }
            s
        })
        .collect();

    for j in 0..cols {
        if j > 0 {
            for &k in &changes[j] {
                for (i, set) in sets.iter_mut().enumerate() {
                    if ledger.covered(i, k) || p1.a_s.get(i, k).is_inf() {
                        continue;
                    }
                    if let Some(old) = key(i, k, j - 1) {
                        *set = set.remove(&(old, k));
                    }
                    if let Some(new) = key(i, k, j) {
                        *set = set.insert((new, k));
                    }
                }
            }
        }
        let mut count = 0u64;
        for (i, set) in sets.iter().enumerate() {
            if let Some(pv) = p1.p.get(i, j).get() {
                count += set.rank(&(pv + 2, 0)) as u64;
            }
        }
        if count < threshold {
            continue;
        }
        stats.counts_at_selection.push(count);
        let before = ledger.rounds();
        let (ar, br) = build_round_matrices(a, bm, &p1.c_tilde, p1.w, j, &mut ledger);
        debug_assert_eq!(ledger.rounds(), before + 1);
        for i in 0..n {
            for k in 0..m {
                if ar.get(i, k).is_finite() {
                    if let Some(v) = key(i, k, j) {
                        sets[i] = sets[i].remove(&(v, k));
                    }
                }
            }
        }
        apply_round(&mut c_hat, &ar, &br, &p1.c_tilde, j, kernel)?;
    }
    Ok((c_hat, ledger, stats))
}

/// Enumerate, for every cell, the uncovered pairs whose scaled key is within
/// one of the scaled product, relax with the exact sums, and merge with `Ĉ`.
/// `on_triple(i, k, j)` sees every enumerated triple.
pub fn phase3_complete(
    a: &IntMatrix,
    b: &MonotoneMatrix,
    p1: &Phase1,
    ledger: &CoverageLedger,
    c_hat: &IntMatrix,
    mut on_triple: impl FnMut(usize, usize, usize),
) -> IntMatrix {
    let bm = b.matrix();
    let bs = p1.b_s.matrix();
    let (n, m, cols) = (a.rows(), a.cols(), bm.cols());
    let changes = p1.b_s.change_positions();
    let mut out = c_hat.clone();
    let mut set: BTreeSet<(i64, usize)> = BTreeSet::new();
    for i in 0..n {
        let live: Vec<bool> = (0..m).map(|k| !ledger.covered(i, k) && p1.a_s.get(i, k).is_finite()).collect();
        set.clear();
        for k in 0..m {
            if live[k] {
                if let Some(v) = (p1.a_s.get(i, k) + bs.get(k, 0)).get() {
                    set.insert((v, k));
                }
            }
        }
        for j in 0..cols {
            if j > 0 {
                for &k in &changes[j] {
                    if !live[k] {
                        continue;
                    }
                    let x = p1.a_s.get(i, k);
                    if let Some(old) = (x + bs.get(k, j - 1)).get() {
                        set.remove(&(old, k));
                    }
                    if let Some(new) = (x + bs.get(k, j)).get() {
                        set.insert((new, k));
                    }
                }
            }
            let Some(pv) = p1.p.get(i, j).get() else { continue };
            let mut best = out.get(i, j);
            for &(key, k) in &set {
                if key > pv + 1 {
                    break;
                }
                on_triple(i, k, j);
                let v = a.get(i, k) + bm.get(k, j);
                if v < best {
                    best = v;
                }
            }
            out.set(i, j, best);
        }
    }
    out
}
