//! Small-size oracle suites for every module.

use mmp_core::gen::{bd_matrix, graph, hamiltonian_graph, left_matrix, mode_array, monotone_matrix, ops_trace, rng, Rng64};
use mmp_core::io::Op;
use mmp_core::matrix::{minplus_naive, minplus_sweep, validate_monotone};
use mmp_core::monotone::{monotone_minplus, MmpConfig};
use mmp_core::mpqw::{mpqw_brute_force, MpqwBounded, MpqwMonotone, MpqwParams};
use mmp_core::params::OmegaPreset;
use mmp_core::rangemode::{batch_range_mode, range_mode_naive, DrmConfig, DynamicRangeModeEngine, ModeArray};
use mmp_core::ssrp::{
    apsp_floyd_warshall, bdmp_via_ssrp, bellman_ford, ham_apsp_via_ssrp, ssrp_baseline, subpath_solve, SubpathConfig,
    SubpathInstance,
};
use mmp_core::{Error, IntMatrix};
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl Summary {
    pub fn failed(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.suites {
            let tag = if r.failed == 0 { "PASS" } else { "FAIL" };
            s += &format!("[{tag}] {:<18} {} passed, {} failed\n", r.name, r.passed, r.failed);
        }
        s += &format!("total failures: {}\n", self.failed());
        s
    }
}

fn suite(name: &'static str, cases: usize, seed: u64, mut case: impl FnMut(&mut Rng64) -> bool) -> SuiteResult {
    let mut r = rng(seed);
    let passed = (0..cases).filter(|_| case(&mut r)).count();
    SuiteResult { name, passed, failed: cases - passed }
}

fn subset(r: &mut Rng64, m: usize, max: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..m).filter(|_| r.gen_bool(0.3)).take(max).collect();
    v.sort_unstable();
    v
}

pub fn run(seed: u64, omega: OmegaPreset) -> Summary {
    let mut suites = Vec::new();

    suites.push(suite("validator", 2, seed, |_| {
        // a corrupted row must be rejected
        let bad = IntMatrix::from_raw_rows(&[&[1, 2, 3], &[4, 2, 5]]).unwrap();
        matches!(validate_monotone(&bad), Err(Error::NotMonotone { row: 1, col: 1 }))
    }));

    suites.push(suite("sweep", 50, seed, |r| {
        let n = r.gen_range(1..=16);
        let b = monotone_matrix(r, n, n, (n * 4) as u64).unwrap();
        let a = left_matrix(r, n, n, 20, 0.1);
        minplus_sweep(&a, &b).ok() == minplus_naive(&a, b.matrix()).ok().map(|x| x.0)
    }));

    suites.push(suite("monotone", 100, seed, |r| {
        let n = r.gen_range(2..=24);
        let b = monotone_matrix(r, n, n, (n * n) as u64).unwrap();
        let a = left_matrix(r, n, n, (n * 2) as i64, 0.1);
        let mut cfg = MmpConfig::new(r.gen_range(0.0..0.5), r.gen_range(0.0..0.8));
        if r.gen_bool(0.5) {
            cfg = cfg.randomized(r.gen());
        }
        monotone_minplus(&a, &b, &cfg).ok() == minplus_naive(&a, b.matrix()).ok().map(|x| x.0)
    }));

    suites.push(suite("mpqw", 10, seed, |r| {
        let n = r.gen_range(3..=12);
        let b = monotone_matrix(r, n, n, (n * n) as u64).unwrap();
        let a = left_matrix(r, n, n, n as i64, 0.1);
        let Ok(s) = MpqwMonotone::build(&a, &b, &MpqwParams::default()) else { return false };
        let (ab, bb) = (left_matrix(r, n, n, 3, 0.2), left_matrix(r, n, n, 3, 0.2));
        let Ok(sb) = MpqwBounded::build(&ab, &bb, 3, 0.5, n) else { return false };
        (0..200).all(|_| {
            let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
            let ex = subset(r, n, s.budget());
            let exb = subset(r, n, n);
            s.query(i, j, &ex).ok() == Some(mpqw_brute_force(&a, b.matrix(), i, j, &ex))
                && sb.query(i, j, &exb).ok() == Some(mpqw_brute_force(&ab, &bb, i, j, &exb))
        })
    }));

    suites.push(suite("rangemode-batch", 10, seed, |r| {
        let n = r.gen_range(1..=300);
        let values = mode_array(r, n, 20);
        let Ok(arr) = ModeArray::new(values.clone()) else { return false };
        let qs: Vec<(usize, usize)> = (0..50)
            .map(|_| {
                let l = r.gen_range(1..=n);
                (l, r.gen_range(l..=n))
            })
            .collect();
        let Ok(ans) = batch_range_mode(&arr, &qs, 0.5) else { return false };
        qs.iter().zip(ans).all(|(q, a)| {
            range_mode_naive(&values, q.0, q.1).map(|w| w.frequency).ok() == Some(a.frequency)
                && arr.count(a.witness, q.0, q.1) == a.frequency
        })
    }));

    suites.push(suite("rangemode-dynamic", 5, seed, |r| {
        let initial = mode_array(r, 100, 15);
        let mut live = initial.clone();
        let Ok(mut e) = DynamicRangeModeEngine::new(initial, DrmConfig::new(omega)) else { return false };
        ops_trace(r, 100, 300, 15).iter().all(|op| {
            let Ok(got) = e.apply(op) else { return false };
            match *op {
                Op::Insert { pos, value } => live.insert(pos - 1, value),
                Op::Delete { pos } => drop(live.remove(pos - 1)),
                Op::Query { l, r } => {
                    let want = range_mode_naive(&live, l, r).unwrap();
                    let Some(a) = got else { return false };
                    return a.frequency == want.frequency
                        && live[l - 1..r].iter().filter(|&&v| v == a.witness).count() == a.frequency;
                }
            }
            true
        })
    }));

    suites.push(suite("ssrp-baseline", 20, seed, |r| {
        let n = r.gen_range(1..=25);
        let Ok(g) = graph(r, n, 3, 0.15, 0.3, true) else { return false };
        let Ok(t) = ssrp_baseline(&g, 0) else { return false };
        t.edges.iter().zip(&t.dist).all(|(&e, d)| bellman_ford(&g.without_edges(&[e]), 0).ok().as_ref() == Some(d))
    }));

    suites.push(suite("ssrp-subpath", 20, seed, |r| {
        let n = r.gen_range(2..=40);
        let Ok(g) = graph(r, n, 4, 3.0 / n as f64, 0.3, true) else { return false };
        let Ok(inst) = SubpathInstance::new(g, 0, r.gen_range(0..n), 0.5) else { return false };
        let (Ok(t), Ok(res)) = (ssrp_baseline(&inst.graph, 0), subpath_solve(&inst, &SubpathConfig::verify())) else {
            return false;
        };
        res.edges.iter().all(|&e| res.targets.iter().all(|&v| res.get(e, v) == t.get(e, v)))
    }));

    suites.push(suite("reductions", 10, seed, |r| {
        let n = r.gen_range(1..=9);
        let (a, b) = (bd_matrix(r, n, n, 1), bd_matrix(r, n, n, 1));
        let pipeline = bdmp_via_ssrp(&a, &b, ssrp_baseline).ok().map(|x| x.0) == minplus_naive(&a, &b).ok().map(|x| x.0);
        let h = hamiltonian_graph(r, n, 0.2);
        let order: Vec<usize> = (0..n).collect();
        pipeline && ham_apsp_via_ssrp(&h, &order, ssrp_baseline).ok() == Some(apsp_floyd_warshall(&h))
    }));

    Summary { seed, suites }
}
