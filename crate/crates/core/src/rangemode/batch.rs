use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{best_of, build_frequency_matrices, FrequencyMatrices, ModeAnswer, ModeArray};
use crate::error::Result;
use crate::matrix::IntMatrix;
use crate::monotone::{monotone_minplus_report, pow_ceil, MmpConfig, MmpReport};
use crate::params::{batch_default_params, OmegaPreset};

#[derive(Clone, Copy, Debug)]
pub struct BatchConfig {
    /// Values occurring at least `⌈n^τ⌉` times are frequent.
    pub tau: f64,
    pub mmp: MmpConfig,
}

impl BatchConfig {
    pub fn new(tau: f64, omega: OmegaPreset) -> Self {
        let s = batch_default_params(omega);
        BatchConfig { tau, mmp: MmpConfig { theta: s.theta, delta: s.delta, ..MmpConfig::default() } }
    }
}

impl Default for BatchConfig {
    fn default() -> Self {
        let s = batch_default_params(OmegaPreset::default());
        BatchConfig::new(s.tau, OmegaPreset::default())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub n: usize,
    pub spacing: usize,
    pub points: usize,
    pub threshold: usize,
    pub frequent_values: usize,
    pub product: Option<MmpReport>,
}

pub fn batch_range_mode(a: &ModeArray, queries: &[(usize, usize)], tau: f64) -> Result<Vec<ModeAnswer>> {
    let cfg = BatchConfig { tau, ..BatchConfig::default() };
    batch_range_mode_with(a, queries, &cfg).map(|(ans, _)| ans)
}

/// Answer all queries offline. Each answer is the best of three sources:
/// frequent values between the chosen points inside the query (one monotone
/// product), infrequent values between those points (a sweep table), and
/// every value occurring in the fringes, counted exactly.
pub fn batch_range_mode_with(
    a: &ModeArray,
    queries: &[(usize, usize)],
    cfg: &BatchConfig,
) -> Result<(Vec<ModeAnswer>, BatchReport)> {
    for &(l, r) in queries {
        a.check_range(l, r)?;
    }
    let n = a.len();
    let spacing = pow_ceil(n.max(1), 0.5).max(1) as usize;
    let threshold = pow_ceil(n.max(1), cfg.tau).max(1) as usize;
    let points: Vec<usize> = (1..=n).step_by(spacing).collect();
    let frequent: Vec<u64> = a.histogram().filter(|&(_, c)| c >= threshold).map(|(v, _)| v).collect();
    let is_frequent: HashSet<u64> = frequent.iter().copied().collect();
    let m = points.len();

    let fm = build_frequency_matrices(a, &points, &frequent);
    let (product, report) = match &fm {
        Some(fm) => {
            let (c, rep) = monotone_minplus_report(&fm.a, &fm.b, &cfg.mmp)?;
            (Some(c), Some(rep))
        }
        None => (None, None),
    };

    // inner[i*m + j]: best infrequent value inside [points[i], points[j]]
    let mut inner: Vec<Option<ModeAnswer>> = vec![None; m * m];
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for i in 0..m {
        counts.clear();
        let mut best: Option<ModeAnswer> = None;
        let mut j = i;
        for p in points[i]..=n {
            let v = a.values()[p - 1];
            if !is_frequent.contains(&v) {
                let c = counts.entry(v).or_insert(0);
                *c += 1;
                best = best_of(best, Some(ModeAnswer { frequency: *c, witness: v }));
            }
            if j < m && points[j] == p {
                inner[i * m + j] = best;
                j += 1;
            }
        }
    }

    let frequent_source = |i: usize, j: usize| -> Option<ModeAnswer> {
        let (fm, c) = (fm.as_ref()?, product.as_ref()?);
        frequent_witness(fm, c, i, j)
    };

    let mut answers = Vec::with_capacity(queries.len());
    for &(l, r) in queries {
        let il = points.partition_point(|&p| p < l);
        let jr = points.partition_point(|&p| p <= r);
        let mut best = None;
        let fringe: Vec<usize> = if il < jr {
            let (pl, pr) = (points[il], points[jr - 1]);
            best = best_of(inner[il * m + jr - 1], frequent_source(il, jr - 1));
            (l..pl).chain(pr + 1..=r).collect()
        } else {
            (l..=r).collect()
        };
        let mut seen = HashSet::new();
        for p in fringe {
            let v = a.values()[p - 1];
            if seen.insert(v) {
                best = best_of(best, Some(ModeAnswer { frequency: a.count(v, l, r), witness: v }));
            }
        }
        answers.push(best.expect("non-empty range"));
    }
    let report = BatchReport { n, spacing, points: m, threshold, frequent_values: frequent.len(), product: report };
    Ok((answers, report))
}

/// Best frequent value between points `i ≤ j`, smallest id on ties.
fn frequent_witness(fm: &FrequencyMatrices, c: &IntMatrix, i: usize, j: usize) -> Option<ModeAnswer> {
    let col = fm.col(j);
    let target = c.get(i, col);
    let frequency = FrequencyMatrices::decode(target);
    if frequency == 0 {
        return None;
    }
    let k = (0..fm.values.len()).find(|&k| fm.a.get(i, k) + fm.b.matrix().get(k, col) == target)?;
    Some(ModeAnswer { frequency, witness: fm.values[k] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rangemode::range_mode_naive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_example() {
        let a = ModeArray::new(vec![1, 2, 1, 3, 1]).unwrap();
        let ans = batch_range_mode(&a, &[(1, 5), (2, 4)], 0.3).unwrap();
        assert_eq!(ans[0], ModeAnswer { frequency: 3, witness: 1 });
        assert_eq!(ans[1].frequency, 1);
        assert_eq!(a.count(ans[1].witness, 2, 4), 1);
    }

    #[test]
    fn singletons() {
        let vals: Vec<u64> = (0..50).map(|i| i % 7 + 1).collect();
        let a = ModeArray::new(vals.clone()).unwrap();
        let q: Vec<(usize, usize)> = (1..=50).map(|p| (p, p)).collect();
        for (p, ans) in batch_range_mode(&a, &q, 0.5).unwrap().into_iter().enumerate() {
            assert_eq!(ans, ModeAnswer { frequency: 1, witness: vals[p] });
        }
    }

    #[test]
    fn random_against_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (n, distinct, tau) in [(300, 40, 0.3), (400, 10, 0.5), (257, 200, 0.4), (1, 1, 0.5)] {
            let vals: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=distinct)).collect();
            let a = ModeArray::new(vals.clone()).unwrap();
            let q: Vec<(usize, usize)> = (0..300)
                .map(|_| {
                    let l = rng.gen_range(1..=n);
                    (l, rng.gen_range(l..=n))
                })
                .collect();
            let (ans, rep) = batch_range_mode_with(&a, &q, &BatchConfig::new(tau, OmegaPreset::default())).unwrap();
            assert!(rep.frequent_values * rep.threshold <= n);
            for (&(l, r), got) in q.iter().zip(&ans) {
                let want = range_mode_naive(&vals, l, r).unwrap();
                assert_eq!(got.frequency, want.frequency, "({l}, {r})");
                assert_eq!(a.count(got.witness, l, r), got.frequency);
            }
        }
    }
}
