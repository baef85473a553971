//! Min-plus query-witness structures.
//!
//! After preprocessing `A` and `B`, a query `(i, j, S)` asks for the index
//! `k ∉ S` minimizing `A(i,k) + B(k,j)`, ties broken by the smallest `k`.
//!
//! [`MpqwBounded`] handles a left factor with entries in `[−W, W]` by storing
//! a sorted prefix of candidates per cell. [`MpqwMonotone`] handles a
//! row-monotone right factor: near-optimal pairs are covered by rounds of
//! bounded structures, the remaining near-optimal triples are stored
//! explicitly, and everything else is found in a short prefix of a
//! persistent per-cell candidate list.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{scale_down, ExtInt, IntMatrix, MonotoneMatrix};
use crate::monotone::{build_round_matrices, pow_ceil, CoverageLedger};
use crate::pset::PersistentSet;

/// `(k, value)` answer to a query.
pub type Witness = (usize, i64);

/// Brute-force reference: scan every `k ∉ excluded`.
pub fn mpqw_brute_force(a: &IntMatrix, b: &IntMatrix, i: usize, j: usize, excluded: &[usize]) -> Option<Witness> {
    let mut best: Option<Witness> = None;
    for k in 0..a.cols() {
        if excluded.contains(&k) {
            continue;
        }
        if let Some(v) = (a.get(i, k) + b.get(k, j)).get() {
            if best.is_none_or(|(_, bv)| v < bv) {
                best = Some((k, v));
            }
        }
    }
    best
}

/// Lexicographic `(value, k)` minimum.
fn better(x: Option<Witness>, y: Option<Witness>) -> Option<Witness> {
    match (x, y) {
        (None, o) | (o, None) => o,
        (Some(p), Some(q)) => Some(if (q.1, q.0) < (p.1, p.0) { q } else { p }),
    }
}

/// Sorted, de-duplicated exclusion set.
fn exclusion(excluded: &[usize], cols: usize) -> Result<Vec<usize>> {
    let mut s = excluded.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&k) = s.last() {
        if k >= cols {
            return Err(Error::OutOfBounds(format!("excluded index {} of {cols}", k + 1)));
        }
    }
    Ok(s)
}

#[inline]
fn in_set(s: &[usize], k: usize) -> bool {
    s.binary_search(&k).is_ok()
}

fn check_cell(rows: usize, cols: usize, i: usize, j: usize) -> Result<()> {
    if i >= rows || j >= cols {
        return Err(Error::OutOfBounds(format!("cell ({}, {}) of {rows}x{cols}", i + 1, j + 1)));
    }
    Ok(())
}

/// Query structure for a left factor with small entries.
#[derive(Clone, Debug)]
pub struct MpqwBounded {
    a: IntMatrix,
    b: IntMatrix,
    prefix_len: usize,
    /// Per cell: the `prefix_len` smallest `(sum, k)`.
    prefix: Vec<Vec<(i64, usize)>>,
    /// Per cell: whether the prefix holds every finite candidate.
    complete: Vec<bool>,
}

impl MpqwBounded {
    /// Prefix length per cell is `max(⌈n^σ⌉, max_excluded) + 1`.
    pub fn build(a: &IntMatrix, b: &IntMatrix, w: i64, sigma: f64, max_excluded: usize) -> Result<Self> {
        if a.cols() != b.rows() {
            return Err(Error::Dimension(format!("{}x{} by {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
        }
        for i in 0..a.rows() {
            for (k, v) in a.row(i).iter().enumerate() {
                if let Some(x) = v.get() {
                    if x.abs() > w {
                        return Err(Error::EntryBound { row: i, col: k, value: x, bound: w });
                    }
                }
            }
        }
        let n = a.rows().max(b.cols()).max(2);
        let prefix_len = (pow_ceil(n, sigma) as usize).max(max_excluded) + 1;
        let finite: Vec<Vec<usize>> = (0..a.rows())
            .map(|i| (0..a.cols()).filter(|&k| a.get(i, k).is_finite()).collect())
            .collect();
        let mut prefix = Vec::with_capacity(a.rows() * b.cols());
        let mut complete = Vec::with_capacity(a.rows() * b.cols());
        let mut buf = Vec::new();
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                buf.clear();
                buf.extend(finite[i].iter().filter_map(|&k| (a.get(i, k) + b.get(k, j)).get().map(|v| (v, k))));
                let full = buf.len() <= prefix_len;
                if !full {
                    buf.select_nth_unstable(prefix_len);
                    buf.truncate(prefix_len);
                }
                buf.sort_unstable();
                prefix.push(buf.clone());
                complete.push(full);
            }
        }
        Ok(MpqwBounded { a: a.clone(), b: b.clone(), prefix_len, prefix, complete })
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }

    /// Stored candidates of cell `(i, j)`.
    pub fn cell(&self, i: usize, j: usize) -> &[(i64, usize)] {
        &self.prefix[i * self.b.cols() + j]
    }

    pub fn query(&self, i: usize, j: usize, excluded: &[usize]) -> Result<Option<Witness>> {
        check_cell(self.a.rows(), self.b.cols(), i, j)?;
        let s = exclusion(excluded, self.a.cols())?;
        Ok(self.query_sorted(i, j, &s))
    }

    fn query_sorted(&self, i: usize, j: usize, s: &[usize]) -> Option<Witness> {
        let idx = i * self.b.cols() + j;
        if let Some(&(v, k)) = self.prefix[idx].iter().find(|&&(_, k)| !in_set(s, k)) {
            return Some((k, v));
        }
        if self.complete[idx] {
            return None;
        }
        // every stored candidate is excluded: fall back to a full scan
        let mut best: Option<Witness> = None;
        for k in 0..self.a.cols() {
            if in_set(s, k) {
                continue;
            }
            if let Some(v) = (self.a.get(i, k) + self.b.get(k, j)).get() {
                best = better(best, Some((k, v)));
            }
        }
        best
    }
}

/// Parameters of [`MpqwMonotone`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MpqwParams {
    pub theta: f64,
    pub rho: f64,
    pub sigma: f64,
    /// Exclusion budget exponent; `|S| ≤ ⌈n^λ⌉`.
    pub lambda: f64,
    /// Explicit exclusion budget, overriding `λ`.
    pub budget: Option<usize>,
    /// Explicit scaling factor, overriding `θ`.
    pub w: Option<i64>,
}

impl Default for MpqwParams {
    fn default() -> Self {
        MpqwParams { theta: 0.3, rho: 0.4, sigma: 0.5, lambda: 0.5, budget: None, w: None }
    }
}

#[derive(Clone, Debug)]
struct Round {
    jr: usize,
    /// Rows with at least one finite round entry.
    active: Vec<bool>,
    ar: IntMatrix,
    structure: MpqwBounded,
}

/// Query structure for a row-monotone right factor.
pub struct MpqwMonotone {
    a: IntMatrix,
    b: IntMatrix,
    w: i64,
    budget: usize,
    /// `L(i,j)` as persistent versions, indexed `i * cols + j`.
    lists: Vec<PersistentSet<(i64, usize)>>,
    c_prime: IntMatrix,
    rounds: Vec<Round>,
    ledger: CoverageLedger,
    /// `T(i,j)`: exact `(sum, k)` of uncovered almost-relevant triples, sorted.
    t_sets: Vec<Vec<(i64, usize)>>,
    threshold: u64,
}

/// Per-case answers of one query (debugging and audits).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseAnswers {
    pub rounds: Option<Witness>,
    pub almost_relevant: Option<Witness>,
    pub prefix: Option<Witness>,
}

impl CaseAnswers {
    pub fn best(&self) -> Option<Witness> {
        better(better(self.rounds, self.almost_relevant), self.prefix)
    }
}

impl MpqwMonotone {
    pub fn build(a: &IntMatrix, b: &MonotoneMatrix, params: &MpqwParams) -> Result<Self> {
        let bm = b.matrix();
        if a.cols() != bm.rows() {
            return Err(Error::Dimension(format!("{}x{} by {}x{}", a.rows(), a.cols(), bm.rows(), bm.cols())));
        }
        if !(params.theta >= 0.0 && params.rho >= 0.0 && params.sigma >= 0.0 && params.lambda >= 0.0) {
            return Err(Error::InvalidParams("negative exponent".into()));
        }
        let (rows, m, cols) = (a.rows(), a.cols(), bm.cols());
        let n = rows.max(cols).max(2);
        let w = params.w.unwrap_or_else(|| ((n as f64).powf(params.theta).floor() as i64).max(1));
        if w < 1 {
            return Err(Error::InvalidParams("W must be at least 1".into()));
        }
        let budget = params.budget.unwrap_or_else(|| pow_ceil(n, params.lambda) as usize);
        let beta = (m as f64).ln() / (n as f64).ln();
        let threshold = pow_ceil(n, 1.0 + beta - params.rho).max(1);

        let a_s = scale_down(a, w)?;
        let b_s = b.scale_down(w)?;
        let bs = b_s.matrix();
        let changes = b_s.change_positions();
        let key = |i: usize, k: usize, j: usize| (a_s.get(i, k) + bs.get(k, j)).get();

        // Step 1: persistent candidate lists and the budget-th order statistic.
        let mut lists = Vec::with_capacity(rows * cols);
        let mut c_prime = IntMatrix::filled(rows, cols, ExtInt::INF);
        for i in 0..rows {
            let mut set = PersistentSet::new();
            for k in 0..m {
                if let Some(v) = key(i, k, 0) {
                    set = set.insert((v, k));
                }
            }
            for j in 0..cols {
                if j > 0 {
                    for &k in &changes[j] {
                        if a_s.get(i, k).is_inf() {
                            continue;
                        }
                        if let Some(old) = key(i, k, j - 1) {
                            set = set.remove(&(old, k));
                        }
                        if let Some(new) = key(i, k, j) {
                            set = set.insert((new, k));
                        }
                    }
                }
                if let Some(&(v, _)) = set.select(budget) {
                    c_prime.set(i, j, ExtInt::finite(v * w));
                }
                lists.push(set.clone());
            }
        }
        let c_scaled = |i: usize, j: usize| c_prime.get(i, j).get().map(|v| v / w);

        // Step 2: deterministic round selection over almost-relevant pairs.
        let mut ledger = CoverageLedger::new(rows, m);
        let mut rounds = Vec::new();
        let mut uncovered: Vec<PersistentSet<(i64, usize)>> = (0..rows)
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
                    for (i, set) in uncovered.iter_mut().enumerate() {
                        if ledger.covered(i, k) || a_s.get(i, k).is_inf() {
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
            for (i, set) in uncovered.iter().enumerate() {
                if let Some(c) = c_scaled(i, j) {
                    count += (set.rank(&(c + 2, 0)) - set.rank(&(c, 0))) as u64;
                }
            }
            if count < threshold {
                continue;
            }
            let (ar, br) = build_round_matrices(a, bm, &c_prime, w, j, &mut ledger);
            let mut active = vec![false; rows];
            for i in 0..rows {
                for k in 0..m {
                    if ar.get(i, k).is_finite() {
                        active[i] = true;
                        if let Some(v) = key(i, k, j) {
                            uncovered[i] = uncovered[i].remove(&(v, k));
                        }
                    }
                }
            }
            let structure = MpqwBounded::build(&ar, &br, 3 * w, params.sigma, budget)?;
            rounds.push(Round { jr: j, active, ar, structure });
        }

        // Step 3: uncovered almost-relevant triples.
        let mut t_sets = vec![Vec::new(); rows * cols];
        let mut set: BTreeSet<(i64, usize)> = BTreeSet::new();
        for i in 0..rows {
            let live: Vec<bool> = (0..m).map(|k| !ledger.covered(i, k) && a_s.get(i, k).is_finite()).collect();
            set.clear();
            for k in 0..m {
                if live[k] {
                    if let Some(v) = key(i, k, 0) {
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
                        if let Some(old) = key(i, k, j - 1) {
                            set.remove(&(old, k));
                        }
                        if let Some(new) = key(i, k, j) {
                            set.insert((new, k));
                        }
                    }
                }
                let Some(c) = c_scaled(i, j) else { continue };
                let cell = &mut t_sets[i * cols + j];
                for &(_, k) in set.range((c, 0)..(c + 2, 0)) {
                    cell.push(((a.get(i, k) + bm.get(k, j)).unwrap(), k));
                }
                cell.sort_unstable();
            }
        }

        Ok(MpqwMonotone {
            a: a.clone(),
            b: bm.clone(),
            w,
            budget,
            lists,
            c_prime,
            rounds,
            ledger,
            t_sets,
            threshold,
        })
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn selected_columns(&self) -> Vec<usize> {
        self.rounds.iter().map(|r| r.jr).collect()
    }

    pub fn ledger(&self) -> &CoverageLedger {
        &self.ledger
    }

    pub fn c_prime(&self) -> &IntMatrix {
        &self.c_prime
    }

    /// The round matrix `Aʳ` of round `r`.
    pub fn round_matrix(&self, r: usize) -> &IntMatrix {
        &self.rounds[r].ar
    }

    /// Version `j` of `L(i, j)`, ascending.
    pub fn list(&self, i: usize, j: usize) -> Vec<(i64, usize)> {
        self.lists[i * self.b.cols() + j].iter().copied().collect()
    }

    /// `T(i, j)`, ascending by exact sum then index.
    pub fn almost_relevant(&self, i: usize, j: usize) -> &[(i64, usize)] {
        &self.t_sets[i * self.b.cols() + j]
    }

    pub fn query(&self, i: usize, j: usize, excluded: &[usize]) -> Result<Option<Witness>> {
        Ok(self.query_cases(i, j, excluded)?.best())
    }

    /// Evaluate the three query cases separately.
    pub fn query_cases(&self, i: usize, j: usize, excluded: &[usize]) -> Result<CaseAnswers> {
        check_cell(self.a.rows(), self.b.cols(), i, j)?;
        let s = exclusion(excluded, self.a.cols())?;
        if s.len() > self.budget {
            return Err(Error::BudgetExceeded { got: s.len(), budget: self.budget });
        }
        let cols = self.b.cols();

        // Case 1: covered pairs, one bounded structure per round.
        let mut case1 = None;
        let mut sr = Vec::new();
        for round in &self.rounds {
            if !round.active[i] {
                continue;
            }
            sr.clear();
            sr.extend(s.iter().copied().filter(|&k| round.ar.get(i, k).is_finite()));
            if let Some((k, v)) = round.structure.query_sorted(i, j, &sr) {
                let off = self.c_prime.get(i, round.jr).unwrap();
                case1 = better(case1, Some((k, v + off)));
            }
        }

        // Case 2: the first |S|+1 stored almost-relevant triples.
        let case2 = self.t_sets[i * cols + j]
            .iter()
            .take(s.len() + 1)
            .find(|&&(_, k)| !in_set(&s, k))
            .map(|&(v, k)| (k, v));

        // Case 3: the budget+1 smallest scaled keys, re-evaluated exactly.
        let mut case3 = None;
        for &(_, k) in self.lists[i * cols + j].iter().take(self.budget + 1) {
            if in_set(&s, k) {
                continue;
            }
            if let Some(v) = (self.a.get(i, k) + self.b.get(k, j)).get() {
                case3 = better(case3, Some((k, v)));
            }
        }
        Ok(CaseAnswers { rounds: case1, almost_relevant: case2, prefix: case3 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::minplus_naive;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_raw_rows(rows).unwrap()
    }

    fn random_monotone(rng: &mut ChaCha8Rng, r: usize, c: usize, step: i64) -> MonotoneMatrix {
        let rows: Vec<Vec<ExtInt>> = (0..r)
            .map(|_| {
                let mut v = rng.gen_range(-10..10);
                (0..c)
                    .map(|_| {
                        v += rng.gen_range(0..=step);
                        ExtInt::finite(v)
                    })
                    .collect()
            })
            .collect();
        MonotoneMatrix::new(IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn random_left(rng: &mut ChaCha8Rng, r: usize, c: usize) -> IntMatrix {
        IntMatrix::from_fn(r, c, |_, _| {
            if rng.gen_bool(0.1) {
                ExtInt::INF
            } else {
                ExtInt::finite(rng.gen_range(-15..15))
            }
        })
    }

    #[test]
    fn bounded_examples() {
        let a = mat(&[&[1, 2, 3]]);
        let b = mat(&[&[0], &[0], &[0]]);
        let d = MpqwBounded::build(&a, &b, 3, 1.0, 2).unwrap();
        assert_eq!(d.cell(0, 0), &[(1, 0), (2, 1), (3, 2)]);
        assert_eq!(d.query(0, 0, &[0]).unwrap(), Some((1, 2)));
        assert_eq!(d.query(0, 0, &[]).unwrap(), Some((0, 1)));
        assert_eq!(d.query(0, 0, &[0, 1, 2]).unwrap(), None);
        assert!(matches!(d.query(0, 0, &[3]), Err(Error::OutOfBounds(_))));
        assert!(MpqwBounded::build(&a, &b, 2, 1.0, 0).is_err());
    }

    #[test]
    fn bounded_fallback_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = IntMatrix::from_fn(6, 20, |_, _| ExtInt::finite(rng.gen_range(-2..=2)));
        let b = random_left(&mut rng, 20, 6);
        let d = MpqwBounded::build(&a, &b, 2, 0.0, 0).unwrap();
        assert_eq!(d.prefix_len(), 2);
        for _ in 0..500 {
            let (i, j) = (rng.gen_range(0..6), rng.gen_range(0..6));
            let mut ks: Vec<usize> = (0..20).collect();
            ks.shuffle(&mut rng);
            ks.truncate(rng.gen_range(0..=20));
            assert_eq!(d.query(i, j, &ks).unwrap(), mpqw_brute_force(&a, &b, i, j, &ks));
        }
    }

    #[test]
    fn monotone_empty_exclusion_equals_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_left(&mut rng, 16, 16);
        let b = random_monotone(&mut rng, 16, 16, 4);
        let (c, wit) = minplus_naive(&a, b.matrix()).unwrap();
        let d = MpqwMonotone::build(&a, &b, &MpqwParams::default()).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let got = d.query(i, j, &[]).unwrap();
                assert_eq!(got.map(|x| x.0), wit.get(i, j));
                assert_eq!(got.map(|x| x.1), c.get(i, j).get());
                // second best by excluding the witness
                if let Some(k) = wit.get(i, j) {
                    assert_eq!(d.query(i, j, &[k]).unwrap(), mpqw_brute_force(&a, b.matrix(), i, j, &[k]));
                }
            }
        }
    }

    #[test]
    fn large_budget_moves_everything_to_prefix() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_left(&mut rng, 10, 8);
        let b = random_monotone(&mut rng, 8, 10, 3);
        let p = MpqwParams { budget: Some(8), ..Default::default() };
        let d = MpqwMonotone::build(&a, &b, &p).unwrap();
        assert!(d.c_prime().data().iter().all(|v| v.is_inf()));
        assert_eq!(d.rounds(), 0);
        for i in 0..10 {
            for j in 0..10 {
                let cases = d.query_cases(i, j, &[1, 3]).unwrap();
                assert_eq!(cases.rounds, None);
                assert_eq!(cases.almost_relevant, None);
                assert_eq!(cases.prefix, mpqw_brute_force(&a, b.matrix(), i, j, &[1, 3]));
            }
        }
    }

    #[test]
    fn no_rounds_still_correct() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_left(&mut rng, 12, 12);
        let b = random_monotone(&mut rng, 12, 12, 3);
        let p = MpqwParams { rho: 0.0, lambda: 0.5, ..Default::default() };
        let d = MpqwMonotone::build(&a, &b, &p).unwrap();
        assert!(d.rounds() <= 1);
        for _ in 0..2000 {
            let (i, j) = (rng.gen_range(0..12), rng.gen_range(0..12));
            let s: Vec<usize> = (0..rng.gen_range(0..=d.budget())).map(|_| rng.gen_range(0..12)).collect();
            assert_eq!(d.query(i, j, &s).unwrap(), mpqw_brute_force(&a, b.matrix(), i, j, &s));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_left(&mut rng, 4, 4);
        let b = random_monotone(&mut rng, 4, 4, 2);
        let d = MpqwMonotone::build(&a, &b, &MpqwParams { budget: Some(1), ..Default::default() }).unwrap();
        assert!(matches!(d.query(0, 0, &[0, 1]), Err(Error::BudgetExceeded { got: 2, budget: 1 })));
        assert!(d.query(0, 0, &[2, 2]).is_ok());
        assert!(matches!(d.query(4, 0, &[]), Err(Error::OutOfBounds(_))));
    }

    #[test]
    fn structure_audit() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..5 {
            let (n, m) = (24, 24);
            let a = random_left(&mut rng, n, m);
            let b = random_monotone(&mut rng, m, n, 5);
            let p = MpqwParams { theta: 0.5, rho: 0.6, sigma: 0.3, lambda: 0.4, budget: None, w: None };
            let d = MpqwMonotone::build(&a, &b, &p).unwrap();
            let w = d.w();
            let a_s = scale_down(&a, w).unwrap();
            let b_s = scale_down(b.matrix(), w).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let mut keys: Vec<(i64, usize)> =
                        (0..m).filter_map(|k| (a_s.get(i, k) + b_s.get(k, j)).get().map(|v| (v, k))).collect();
                    keys.sort_unstable();
                    assert_eq!(d.list(i, j), keys);
                    let want_c = keys.get(d.budget()).map_or(ExtInt::INF, |&(v, _)| ExtInt::finite(v * w));
                    assert_eq!(d.c_prime().get(i, j), want_c);
                    let mut t: Vec<(i64, usize)> = Vec::new();
                    if let Some(c) = want_c.get() {
                        for &(v, k) in &keys {
                            if !d.ledger().covered(i, k) && v * w >= c && v * w - c <= w {
                                t.push(((a.get(i, k) + b.matrix().get(k, j)).unwrap(), k));
                            }
                        }
                    }
                    t.sort_unstable();
                    assert_eq!(d.almost_relevant(i, j), &t[..]);
                }
            }
            for i in 0..n {
                for k in 0..m {
                    let finite: Vec<usize> =
                        (0..d.rounds()).filter(|&r| d.round_matrix(r).get(i, k).is_finite()).collect();
                    assert!(finite.len() <= 1);
                    for r in finite {
                        assert!(d.round_matrix(r).get(i, k).unwrap().abs() <= 3 * w);
                    }
                }
            }
        }
    }
}
