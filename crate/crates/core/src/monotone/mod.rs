//! Exact min-plus product `A ⋆ B` for a row-monotone right factor.
//!
//! Three phases:
//!
//! 1. Scale both factors down by `W` and multiply them with the sweep
//!    algorithm, giving `C̃ = W·(Ã ⋆ B̃)` with `C − 2W ≤ C̃ ≤ C`.
//! 2. Pick columns `jʳ`. For each, every still-uncovered pair `(i,k)` with
//!    `A(i,k) + B(k,jʳ) − C̃(i,jʳ) ≤ 3W` becomes covered and the covered
//!    pairs form a bounded-entry product that is exact on them.
//! 3. The remaining relevant pairs are few; enumerate them directly during
//!    a second sweep.
//!
//! Columns in phase 2 are either drawn at random or, by default, chosen
//! deterministically whenever enough uncovered pairs are near-optimal.

mod phases;
mod relevance;

use serde::Serialize;

use crate::bounded::{BoundedKernelConfig, Strategy};
use crate::error::{Error, Result};
use crate::matrix::{ExtInt, IntMatrix, MonotoneMatrix};

pub use phases::{
    build_round_matrices, moderate_uncovered_count, phase1_approx, phase2_deterministic,
    phase2_randomized, phase2_with_columns, phase3_complete, CoverageLedger, Phase1, SelectionStats,
};
pub use relevance::{classify_triple, Relevance, TripleClass};

/// `⌈n^x⌉` with a small slack so exact powers do not round up.
pub fn pow_ceil(n: usize, x: f64) -> u64 {
    let v = (n as f64).powf(x);
    if !v.is_finite() {
        return u64::MAX;
    }
    (v - 1e-9).ceil().max(0.0) as u64
}

/// Shape exponents of an instance: `n` is the larger outer dimension,
/// the inner dimension is `n^β` and the total range is `n^{β+η}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Shape {
    pub n: usize,
    pub beta: f64,
    pub eta: f64,
}

pub fn shape(a: &IntMatrix, b: &MonotoneMatrix) -> Shape {
    let n = a.rows().max(b.matrix().cols()).max(2);
    let ln = (n as f64).ln();
    let beta = (a.cols() as f64).ln() / ln;
    let eta = if b.total_range() == 0 {
        0.0
    } else {
        ((b.total_range() as f64).ln() / ln - beta).max(0.0)
    };
    Shape { n, beta, eta }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MmpConfig {
    pub theta: f64,
    pub rho: f64,
    /// Overrides `W = max(1, ⌊n^θ⌋)`.
    pub w: Option<i64>,
    pub deterministic: bool,
    pub seed: u64,
    pub strategy: Strategy,
    pub delta: f64,
}

impl Default for MmpConfig {
    fn default() -> Self {
        MmpConfig {
            theta: 0.2,
            rho: 0.4,
            w: None,
            deterministic: true,
            seed: 0,
            strategy: Strategy::WindowScan,
            delta: 0.5,
        }
    }
}

impl MmpConfig {
    pub fn new(theta: f64, rho: f64) -> Self {
        MmpConfig { theta, rho, ..Default::default() }
    }

    pub fn randomized(mut self, seed: u64) -> Self {
        self.deterministic = false;
        self.seed = seed;
        self
    }

    pub fn with_w(mut self, w: i64) -> Self {
        self.w = Some(w);
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy, delta: f64) -> Self {
        self.strategy = strategy;
        self.delta = delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta >= 0.0) || !(self.rho >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "theta {} and rho {} must be non-negative",
                self.theta, self.rho
            )));
        }
        if matches!(self.w, Some(w) if w < 1) {
            return Err(Error::InvalidParams("W must be at least 1".into()));
        }
        Ok(())
    }

    /// The scaling factor for outer dimension `n`.
    pub fn scale(&self, n: usize) -> i64 {
        self.w.unwrap_or_else(|| ((n as f64).powf(self.theta).floor() as i64).max(1))
    }

    fn kernel(&self, w: i64) -> BoundedKernelConfig {
        BoundedKernelConfig { w, strategy: self.strategy, delta: self.delta, omega: Default::default() }
    }
}

/// Diagnostics of one product.
#[derive(Clone, Debug, Serialize)]
pub struct MmpReport {
    pub shape: Shape,
    pub w: i64,
    pub deterministic: bool,
    /// Deterministic selection threshold (`None` in randomized mode).
    pub threshold: Option<u64>,
    pub round_budget: u64,
    pub rounds: usize,
    pub selected_columns: Vec<usize>,
    pub covered_pairs: usize,
    pub phase3_triples: u64,
    pub max_scaling_error: i64,
}

/// Round-count bound for the deterministic mode, `⌈n^ρ⌉`.
pub fn round_budget(n: usize, rho: f64) -> u64 {
    pow_ceil(n, rho).max(1)
}

/// Pair-count threshold of the deterministic mode, `⌈n^{1+β−ρ}⌉`.
pub fn selection_threshold(s: &Shape, rho: f64) -> u64 {
    pow_ceil(s.n, 1.0 + s.beta - rho).max(1)
}

/// Number of random rounds, `⌈(10+β)·n^ρ·log₂ n⌉` capped at the column count.
pub fn randomized_rounds(s: &Shape, rho: f64, cols: usize) -> usize {
    let r = ((10.0 + s.beta) * (s.n as f64).powf(rho) * (s.n as f64).log2()).ceil();
    if r >= cols as f64 {
        cols
    } else {
        r as usize
    }
}

pub fn monotone_minplus(a: &IntMatrix, b: &MonotoneMatrix, cfg: &MmpConfig) -> Result<IntMatrix> {
    monotone_minplus_report(a, b, cfg).map(|(c, _)| c)
}

pub fn monotone_minplus_report(
    a: &IntMatrix,
    b: &MonotoneMatrix,
    cfg: &MmpConfig,
) -> Result<(IntMatrix, MmpReport)> {
    cfg.validate()?;
    if a.cols() != b.matrix().rows() {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.matrix().rows(),
            b.matrix().cols()
        )));
    }
    let sh = shape(a, b);
    let w = cfg.scale(sh.n);
    let kernel = cfg.kernel(w);
    let p1 = phase1_approx(a, b, w)?;
    let (c_hat, ledger, threshold) = if cfg.deterministic {
        let thr = selection_threshold(&sh, cfg.rho);
        let (c, l, _) = phase2_deterministic(a, b, &p1, thr, &kernel)?;
        (c, l, Some(thr))
    } else {
        let rounds = randomized_rounds(&sh, cfg.rho, b.matrix().cols());
        let (c, l) = phase2_randomized(a, b, &p1.c_tilde, rounds, cfg.seed, &kernel)?;
        (c, l, None)
    };
    let mut triples = 0u64;
    let c = phase3_complete(a, b, &p1, &ledger, &c_hat, |_, _, _| triples += 1);
    let max_scaling_error = max_abs_diff(&c, &p1.c_tilde);
    let report = MmpReport {
        shape: sh,
        w,
        deterministic: cfg.deterministic,
        threshold,
        round_budget: round_budget(sh.n, cfg.rho),
        rounds: ledger.rounds(),
        selected_columns: ledger.selected.clone(),
        covered_pairs: ledger.covered_count(),
        phase3_triples: triples,
        max_scaling_error,
    };
    Ok((c, report))
}

/// Largest `|x − y|` over cells where both are finite.
pub fn max_abs_diff(x: &IntMatrix, y: &IntMatrix) -> i64 {
    x.data()
        .iter()
        .zip(y.data())
        .filter_map(|(p, q)| Some((p.get()? - q.get()?).abs()))
        .max()
        .unwrap_or(0)
}

/// `A ⋆ B` where the *left* factor is monotone along its columns, either
/// non-decreasing or non-increasing down each column. Computed via
/// `(Bᵀ ⋆ Aᵀ)ᵀ`, reversing the row order of `A` first when needed.
pub fn monotone_minplus_left(a: &IntMatrix, b: &IntMatrix, cfg: &MmpConfig) -> Result<IntMatrix> {
    let at = a.transpose();
    let bt = b.transpose();
    if let Ok(m) = MonotoneMatrix::new(at.clone()) {
        return Ok(monotone_minplus(&bt, &m, cfg)?.transpose());
    }
    let m = MonotoneMatrix::new(at.reverse_cols())?;
    Ok(monotone_minplus(&bt, &m, cfg)?.reverse_cols().transpose())
}

/// Dense matrix with every entry `∞`.
pub fn all_inf(rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::filled(rows, cols, ExtInt::INF)
}
