use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::baseline::{check_vertex, hop_limited_distances, st_replacement_baseline};
use super::graph::{dijkstra, johnson_potentials, sssp_with_potentials, SpTree, WeightedDigraph};
use crate::error::{Error, Result};
use crate::matrix::{ExtInt, IntMatrix, MonotoneMatrix};
use crate::monotone::{monotone_minplus_left, pow_ceil, MmpConfig};

/// Replacement distances for targets in the subtree of a pivot `t`,
/// avoiding each edge on the tree path from `s` to `t`.
#[derive(Clone, Debug)]
pub struct SubpathInstance {
    pub graph: WeightedDigraph,
    pub source: usize,
    pub pivot: usize,
    /// Tree path `s = s₁, …, s_|P| = t`.
    pub path: Vec<usize>,
    /// Targets, all tree descendants of the pivot (inclusive).
    pub targets: Vec<usize>,
    /// Hop threshold exponent.
    pub zeta: f64,
    pub tree: SpTree,
}

impl SubpathInstance {
    /// Instance over the full subtree of `t`.
    pub fn new(graph: WeightedDigraph, s: usize, t: usize, zeta: f64) -> Result<Self> {
        check_vertex(&graph, s)?;
        check_vertex(&graph, t)?;
        if !(0.0..=1.0).contains(&zeta) {
            return Err(Error::InvalidParams(format!("zeta {zeta} outside [0, 1]")));
        }
        let h = johnson_potentials(&graph)?;
        let tree = sssp_with_potentials(&graph, &h, s);
        let path = tree
            .path_to(t)
            .ok_or_else(|| Error::InvalidGraph(format!("pivot {} unreachable from source", t + 1)))?;
        let targets = tree.subtree(t);
        Ok(SubpathInstance { graph, source: s, pivot: t, path, targets, zeta, tree })
    }

    /// Restrict to a subset of the pivot's subtree.
    pub fn with_targets(mut self, targets: Vec<usize>) -> Result<Self> {
        let sub = self.tree.subtree(self.pivot);
        if let Some(&v) = targets.iter().find(|v| sub.binary_search(v).is_err()) {
            return Err(Error::InvalidGraph(format!("vertex {} is not below the pivot", v + 1)));
        }
        self.targets = targets;
        Ok(self)
    }

    pub fn path_edges(&self) -> Vec<(usize, usize)> {
        self.path.windows(2).map(|p| (p[0], p[1])).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HopLongMode {
    /// Sample `⌈c·n^{1−ζ}·ln n⌉` midpoints with replacement.
    Sampled { c: f64, seed: u64 },
    /// Every vertex is a midpoint; always exact.
    Verify,
}

#[derive(Clone, Copy, Debug)]
pub struct SubpathConfig {
    pub mode: HopLongMode,
    pub mmp: MmpConfig,
}

impl Default for SubpathConfig {
    fn default() -> Self {
        SubpathConfig { mode: HopLongMode::Sampled { c: 10.0, seed: 0 }, mmp: MmpConfig::default() }
    }
}

impl SubpathConfig {
    pub fn verify() -> Self {
        SubpathConfig { mode: HopLongMode::Verify, ..Default::default() }
    }

    pub fn sampled(seed: u64) -> Self {
        SubpathConfig { mode: HopLongMode::Sampled { c: 10.0, seed }, ..Default::default() }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SubpathReport {
    pub hop_limit: usize,
    pub samples: usize,
    pub distinct_midpoints: usize,
    /// Cells whose answer is attained by each source.
    pub jumping_hits: usize,
    pub short_hits: usize,
    pub long_hits: usize,
}

#[derive(Clone, Debug)]
pub struct SubpathResult {
    pub edges: Vec<(usize, usize)>,
    pub targets: Vec<usize>,
    /// `dist[e][v]`: rows follow `edges`, columns follow `targets`.
    pub dist: Vec<Vec<ExtInt>>,
    pub report: SubpathReport,
}

impl SubpathResult {
    pub fn get(&self, e: (usize, usize), v: usize) -> Option<ExtInt> {
        let i = self.edges.iter().position(|&x| x == e)?;
        let j = self.targets.iter().position(|&x| x == v)?;
        Some(self.dist[i][j])
    }
}

/// Solve the subpath problem by splitting replacement paths into jumping
/// paths (rejoin the path after the failed edge), hop-short departing paths
/// (few edges after departure) and hop-long departing paths (routed through
/// a midpoint, combined with one monotone min-plus product).
pub fn subpath_solve(inst: &SubpathInstance, cfg: &SubpathConfig) -> Result<SubpathResult> {
    let g = &inst.graph;
    let n = g.n();
    let edges = inst.path_edges();
    let (pe, nt) = (edges.len(), inst.targets.len());
    let mut report = SubpathReport::default();
    if pe == 0 || nt == 0 {
        return Ok(SubpathResult { edges, targets: inst.targets.clone(), dist: vec![vec![ExtInt::INF; nt]; pe], report });
    }
    let d = &inst.tree.dist;
    let t = inst.pivot;

    // Jumping paths: reach t avoiding e, then follow the tree down to v.
    let jump = st_replacement_baseline(g, inst.source, t, &inst.path)?;
    let jumping = IntMatrix::from_fn(pe, nt, |i, c| {
        let v = inst.targets[c];
        jump[i] + d[v].minus(d[t].unwrap())
    });

    let tilde = g.without_edges(&edges);
    // Prefix minimum over departure points s_j with j ≤ i.
    let departing = |rows: &dyn Fn(usize, usize) -> ExtInt, cols: usize| {
        let mut m = IntMatrix::filled(pe, cols, ExtInt::INF);
        for c in 0..cols {
            let mut best = ExtInt::INF;
            for i in 0..pe {
                best = best.min(d[inst.path[i]] + rows(i, c));
                m.set(i, c, best);
            }
        }
        m
    };

    // Hop-short departing paths.
    let hop = pow_ceil(n.max(1), inst.zeta).max(1) as usize;
    report.hop_limit = hop;
    let short_rows = hop_limited_distances(&tilde, &inst.path[..pe], hop);
    let short = departing(&|j, c| short_rows[j][inst.targets[c]], nt);

    // Hop-long departing paths through midpoints.
    let midpoints: Vec<usize> = match cfg.mode {
        HopLongMode::Verify => (0..n).collect(),
        HopLongMode::Sampled { c, seed } => {
            let count = (c * (n as f64).powf(1.0 - inst.zeta) * (n as f64).ln()).ceil().max(0.0) as usize;
            report.samples = count;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<usize> = (0..count).map(|_| rng.gen_range(0..n)).collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    report.distinct_midpoints = midpoints.len();
    let long = if midpoints.is_empty() {
        IntMatrix::filled(pe, nt, ExtInt::INF)
    } else {
        let h = johnson_potentials(&tilde)?;
        let rev = tilde.reversed();
        let hr: Vec<i64> = h.iter().map(|x| -x).collect();
        let to_mid: Vec<Vec<ExtInt>> = midpoints.iter().map(|&b| dijkstra(&rev, &hr, b, None).0).collect();
        let from_mid: Vec<Vec<ExtInt>> = midpoints.iter().map(|&b| dijkstra(&tilde, &h, b, None).0).collect();
        let a = departing(&|j, c| to_mid[c][inst.path[j]], midpoints.len());
        // columns of A are non-increasing by construction; check before use
        MonotoneMatrix::new(a.transpose().reverse_cols())?;
        let b = IntMatrix::from_fn(midpoints.len(), nt, |r, c| from_mid[r][inst.targets[c]]);
        monotone_minplus_left(&a, &b, &cfg.mmp)?
    };

    let mut dist = vec![vec![ExtInt::INF; nt]; pe];
    for i in 0..pe {
        for c in 0..nt {
            let (x, y, z) = (jumping.get(i, c), short.get(i, c), long.get(i, c));
            let best = x.min(y).min(z);
            dist[i][c] = best;
            if best.is_finite() {
                report.jumping_hits += (x == best) as usize;
                report.short_hits += (y == best) as usize;
                report.long_hits += (z == best) as usize;
            }
        }
    }
    Ok(SubpathResult { edges, targets: inst.targets.clone(), dist, report })
}
