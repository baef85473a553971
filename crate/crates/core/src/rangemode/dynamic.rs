use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::blocklist::{Element, LiveArray, NO_SNAP};
use super::{best_of, build_frequency_matrices, check_range, FrequencyMatrices, ModeAnswer, ModeArray};
use crate::error::{Error, Result};
use crate::io::Op;
use crate::monotone::pow_ceil;
use crate::mpqw::{MpqwMonotone, MpqwParams};
use crate::params::{drm_default_params, DynamicSchedule, OmegaPreset};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DrmConfig {
    pub schedule: DynamicSchedule,
}

impl DrmConfig {
    pub fn new(omega: OmegaPreset) -> Self {
        DrmConfig { schedule: drm_default_params(omega) }
    }
}

impl Default for DrmConfig {
    fn default() -> Self {
        DrmConfig::new(OmegaPreset::default())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DrmStats {
    pub rebuilds: usize,
    pub operations: usize,
    pub ops_since_rebuild: usize,
    /// Largest number of operations observed between two rebuilds.
    pub max_gap: usize,
    pub period: usize,
    /// Values with at most this many snapshot occurrences are infrequent.
    pub infrequent_cap: usize,
    pub frequent_values: usize,
    pub snapshot_len: usize,
    pub points: usize,
    pub modified: usize,
}

/// Candidate answers of one query, by source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryParts {
    pub infrequent: Option<ModeAnswer>,
    pub modified: Option<ModeAnswer>,
    pub frequent: Option<ModeAnswer>,
    pub fringe: Option<ModeAnswer>,
}

impl QueryParts {
    pub fn best(&self) -> Option<ModeAnswer> {
        best_of(best_of(self.infrequent, self.modified), best_of(self.frequent, self.fringe))
    }
}

const EMPTY: (u32, u64) = (u32::MAX, 0);

/// Static min-tree over snapshot start indices of `(end, value)`.
#[derive(Clone, Debug)]
struct MinTree {
    size: usize,
    t: Vec<(u32, u64)>,
}

impl MinTree {
    fn new(n: usize) -> Self {
        let size = n.next_power_of_two().max(1);
        MinTree { size, t: vec![EMPTY; 2 * size] }
    }

    fn set(&mut self, pos: usize, v: (u32, u64)) {
        let mut p = pos + self.size;
        self.t[p] = v;
        while p > 1 {
            p /= 2;
            self.t[p] = self.t[2 * p].min(self.t[2 * p + 1]);
        }
    }

    /// Minimum over inclusive `[l, r]`.
    fn min(&self, l: usize, r: usize) -> (u32, u64) {
        let (mut l, mut r) = (l + self.size, r + self.size + 1);
        let mut best = EMPTY;
        while l < r {
            if l & 1 == 1 {
                best = best.min(self.t[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.min(self.t[r]);
            }
            l /= 2;
            r /= 2;
        }
        best
    }
}

/// Immutable structures over the array as of the last rebuild.
struct Snapshot {
    arr: ModeArray,
    cap: usize,
    /// `trees[f−1]`: for each occurrence of an infrequent value, the index of
    /// its `(f−1)`-th next occurrence.
    trees: Vec<MinTree>,
    points: Vec<usize>,
    fm: Option<FrequencyMatrices>,
    mpqw: Option<MpqwMonotone>,
    column: HashMap<u64, usize>,
}

impl Snapshot {
    fn build(values: Vec<u64>, s: &DynamicSchedule, period: usize) -> Result<Self> {
        let arr = ModeArray::new(values)?;
        let n = arr.len();
        let cap = if n == 0 { 0 } else { ((n as f64).powf(1.0 - s.t1) + 1e-9).floor() as usize };
        let mut trees: Vec<MinTree> = (0..cap).map(|_| MinTree::new(n)).collect();
        let mut frequent = Vec::new();
        for (v, c) in arr.histogram() {
            if c > cap {
                frequent.push(v);
                continue;
            }
            let pos = arr.positions(v);
            for f in 1..=c {
                for a in 0..=c - f {
                    trees[f - 1].set(pos[a], (pos[a + f - 1] as u32, v));
                }
            }
        }
        let m = if n == 0 { 0 } else { (pow_ceil(n, 1.0 - s.t3) as usize).clamp(1, n) };
        let spacing = if m == 0 { 1 } else { n.div_ceil(m) };
        let points: Vec<usize> = (0..n).step_by(spacing).collect();
        let one_based: Vec<usize> = points.iter().map(|p| p + 1).collect();
        let fm = build_frequency_matrices(&arr, &one_based, &frequent);
        let mpqw = match &fm {
            Some(fm) => {
                let p = MpqwParams {
                    theta: s.theta,
                    rho: s.rho,
                    sigma: s.sigma,
                    lambda: 0.0,
                    budget: Some(period.min(fm.values.len())),
                    w: None,
                };
                Some(MpqwMonotone::build(&fm.a, &fm.b, &p)?)
            }
            None => None,
        };
        let column = fm.as_ref().map_or_else(HashMap::new, |fm| {
            fm.values.iter().enumerate().map(|(k, &v)| (v, k)).collect()
        });
        Ok(Snapshot { arr, cap, trees, points, fm, mpqw, column })
    }

    /// Drop an infrequent value from the threshold trees.
    fn forget(&mut self, v: u64) {
        let pos = self.arr.positions(v).to_vec();
        if pos.is_empty() || pos.len() > self.cap {
            return;
        }
        for f in 1..=pos.len() {
            for &p in &pos[..=pos.len() - f] {
                self.trees[f - 1].set(p, EMPTY);
            }
        }
    }

    /// Best infrequent unmodified value in snapshot range `[x, y]`.
    fn infrequent(&self, x: usize, y: usize) -> Option<ModeAnswer> {
        // existence of an f-interval is monotone in f
        let (mut lo, mut hi) = (0usize, self.cap);
        let mut best = None;
        while lo < hi {
            let f = (lo + hi).div_ceil(2);
            let (end, v) = self.trees[f - 1].min(x, y);
            if end != u32::MAX && end as usize <= y {
                best = Some(ModeAnswer { frequency: f, witness: v });
                lo = f;
            } else {
                hi = f - 1;
            }
        }
        best
    }
}

/// Fully dynamic range mode with periodic rebuilds.
///
/// Between rebuilds the snapshot is immutable. A query combines four
/// sources: values modified since the rebuild are recounted on the live
/// array; unmodified infrequent values come from per-threshold min-trees;
/// unmodified frequent values between the chosen points come from a
/// query-witness structure that excludes modified values; and values in
/// the fringes around those points are counted exactly.
pub struct DynamicRangeModeEngine {
    cfg: DrmConfig,
    live: LiveArray,
    snap: Snapshot,
    modified: BTreeSet<u64>,
    stats: DrmStats,
}

impl DynamicRangeModeEngine {
    pub fn new(values: Vec<u64>, cfg: DrmConfig) -> Result<Self> {
        let mut e = DynamicRangeModeEngine {
            cfg,
            live: LiveArray::default(),
            snap: Snapshot::build(Vec::new(), &cfg.schedule, 1)?,
            modified: BTreeSet::new(),
            stats: DrmStats::default(),
        };
        e.rebuild_from(values)?;
        e.stats.rebuilds = 0;
        Ok(e)
    }

    pub fn len(&self) -> usize {
        self.live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live.is_empty()
    }

    pub fn values(&self) -> Vec<u64> {
        self.live.values()
    }

    pub fn stats(&self) -> DrmStats {
        let mut s = self.stats.clone();
        s.modified = self.modified.len();
        s
    }

    fn rebuild_from(&mut self, values: Vec<u64>) -> Result<()> {
        let n = values.len();
        let period = pow_ceil(n.max(1), self.cfg.schedule.t2).max(1) as usize;
        self.snap = Snapshot::build(values.clone(), &self.cfg.schedule, period)?;
        self.live = LiveArray::new(
            values.into_iter().enumerate().map(|(i, value)| Element { value, snap: i as u32 }).collect(),
        );
        self.modified.clear();
        let s = &mut self.stats;
        s.rebuilds += 1;
        s.max_gap = s.max_gap.max(s.ops_since_rebuild);
        s.ops_since_rebuild = 0;
        s.period = period;
        s.infrequent_cap = self.snap.cap;
        s.frequent_values = self.snap.fm.as_ref().map_or(0, |fm| fm.values.len());
        s.snapshot_len = n;
        s.points = self.snap.points.len();
        Ok(())
    }

    pub fn rebuild(&mut self) -> Result<()> {
        let v = self.live.values();
        self.rebuild_from(v)
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.operations += 1;
        self.stats.ops_since_rebuild += 1;
        if self.stats.ops_since_rebuild >= self.stats.period {
            self.rebuild()?;
        }
        Ok(())
    }

    fn touch(&mut self, v: u64) {
        if self.modified.insert(v) {
            self.snap.forget(v);
        }
    }

    /// Insert `value` so that it becomes 1-based position `pos`.
    pub fn insert(&mut self, pos: usize, value: u64) -> Result<()> {
        if pos == 0 || pos > self.live.len() + 1 {
            return Err(Error::OutOfBounds(format!("insert at {pos} into length {}", self.live.len())));
        }
        if value == 0 {
            return Err(Error::InvalidParams("element ids must be positive".into()));
        }
        self.live.insert(pos - 1, Element { value, snap: NO_SNAP });
        self.touch(value);
        self.tick()
    }

    /// Delete 1-based position `pos`, returning the removed value.
    pub fn delete(&mut self, pos: usize) -> Result<u64> {
        if pos == 0 || pos > self.live.len() {
            return Err(Error::OutOfBounds(format!("delete at {pos} from length {}", self.live.len())));
        }
        let e = self.live.remove(pos - 1);
        self.touch(e.value);
        self.tick()?;
        Ok(e.value)
    }

    pub fn query(&mut self, l: usize, r: usize) -> Result<ModeAnswer> {
        let parts = self.query_parts(l, r)?;
        self.tick()?;
        Ok(parts.best().expect("non-empty range"))
    }

    pub fn apply(&mut self, op: &Op) -> Result<Option<ModeAnswer>> {
        match *op {
            Op::Insert { pos, value } => self.insert(pos, value).map(|_| None),
            Op::Delete { pos } => self.delete(pos).map(|_| None),
            Op::Query { l, r } => self.query(l, r).map(Some),
        }
    }

    /// Evaluate every source for 1-based `[l, r]` without counting an operation.
    pub fn query_parts(&self, l: usize, r: usize) -> Result<QueryParts> {
        check_range(self.live.len(), l, r)?;
        let (l0, r0) = (l - 1, r - 1);
        let mut parts = QueryParts::default();
        for &v in &self.modified {
            let c = self.live.count(v, l0, r0);
            if c > 0 {
                parts.modified = best_of(parts.modified, Some(ModeAnswer { frequency: c, witness: v }));
            }
        }
        // snapshot range covered by the live range
        let span = r0 - l0 + 1;
        let first = self.live.iter_from(l0).take(span).find(|e| e.snap != NO_SNAP);
        let Some(first) = first else { return Ok(parts) };
        let last = self.live.iter_rev_from(r0).take(span).find(|e| e.snap != NO_SNAP).unwrap();
        let (x, y) = (first.snap as usize, last.snap as usize);

        parts.infrequent = self.snap.infrequent(x, y);

        let pts = &self.snap.points;
        let i = pts.partition_point(|&p| p < x);
        let j = pts.partition_point(|&p| p <= y);
        let fringe: Vec<usize> = if i < j {
            let (pi, pj) = (pts[i], pts[j - 1]);
            parts.frequent = self.frequent(i, j - 1)?;
            (x..pi).chain(pj + 1..=y).collect()
        } else {
            (x..=y).collect()
        };
        let mut seen = HashSet::new();
        for p in fringe {
            let v = self.snap.arr.values()[p];
            if self.modified.contains(&v) || !seen.insert(v) {
                continue;
            }
            let c = self.snap.arr.count0(v, x, y);
            parts.fringe = best_of(parts.fringe, Some(ModeAnswer { frequency: c, witness: v }));
        }
        Ok(parts)
    }

    fn frequent(&self, i: usize, j: usize) -> Result<Option<ModeAnswer>> {
        let (Some(fm), Some(d)) = (&self.snap.fm, &self.snap.mpqw) else { return Ok(None) };
        let s: Vec<usize> = self.modified.iter().filter_map(|v| self.snap.column.get(v).copied()).collect();
        Ok(d.query(i, fm.col(j), &s)?.and_then(|(k, val)| {
            let frequency = (-val) as usize;
            (frequency > 0).then(|| ModeAnswer { frequency, witness: fm.values[k] })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rangemode::range_mode_naive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn min_tree() {
        let mut t = MinTree::new(5);
        t.set(1, (4, 9));
        t.set(3, (3, 2));
        assert_eq!(t.min(0, 4), (3, 2));
        assert_eq!(t.min(0, 2), (4, 9));
        assert_eq!(t.min(4, 4), EMPTY);
        t.set(3, EMPTY);
        assert_eq!(t.min(0, 4), (4, 9));
    }

    #[test]
    fn hand_example() {
        let mut e = DynamicRangeModeEngine::new(Vec::new(), DrmConfig::default()).unwrap();
        e.insert(1, 1).unwrap();
        e.insert(2, 2).unwrap();
        e.insert(3, 1).unwrap();
        assert_eq!(e.query(1, 3).unwrap(), ModeAnswer { frequency: 2, witness: 1 });
        assert!(e.insert(5, 1).is_err());
        assert!(e.delete(0).is_err());
        assert!(e.query(2, 4).is_err());
    }

    #[test]
    fn fresh_snapshot_uses_static_sources() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let vals: Vec<u64> = (0..600).map(|_| rng.gen_range(1..=30)).collect();
        let e = DynamicRangeModeEngine::new(vals.clone(), DrmConfig::default()).unwrap();
        assert!(e.stats().frequent_values > 0);
        for _ in 0..400 {
            let l = rng.gen_range(1..=600);
            let r = rng.gen_range(l..=600);
            let parts = e.query_parts(l, r).unwrap();
            assert_eq!(parts.modified, None);
            assert_eq!(parts.best().unwrap().frequency, range_mode_naive(&vals, l, r).unwrap().frequency);
        }
    }

    #[test]
    fn random_ops_against_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for distinct in [5u64, 60, 400] {
            let mut model: Vec<u64> = (0..500).map(|_| rng.gen_range(1..=distinct)).collect();
            let mut e = DynamicRangeModeEngine::new(model.clone(), DrmConfig::default()).unwrap();
            for _ in 0..1500 {
                let roll = rng.gen_range(0..10);
                if roll < 3 || model.is_empty() {
                    let pos = rng.gen_range(1..=model.len() + 1);
                    let v = rng.gen_range(1..=distinct);
                    model.insert(pos - 1, v);
                    e.insert(pos, v).unwrap();
                } else if roll < 5 {
                    let pos = rng.gen_range(1..=model.len());
                    assert_eq!(e.delete(pos).unwrap(), model.remove(pos - 1));
                } else {
                    let l = rng.gen_range(1..=model.len());
                    let r = rng.gen_range(l..=model.len());
                    let got = e.query(l, r).unwrap();
                    let want = range_mode_naive(&model, l, r).unwrap();
                    assert_eq!(got.frequency, want.frequency);
                    let wc = model[l - 1..r].iter().filter(|&&x| x == got.witness).count();
                    assert_eq!(wc, got.frequency);
                }
                let s = e.stats();
                assert!(s.ops_since_rebuild < s.period);
                assert!(s.modified <= s.period);
            }
            let s = e.stats();
            assert!(s.rebuilds > 3);
            assert!(s.max_gap <= s.period.max(1) + 1);
            assert_eq!(e.values(), model);
        }
    }
}
