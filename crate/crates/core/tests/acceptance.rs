//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use mmp_core::bench::{bench, Algorithm, BenchConfig};
use mmp_core::bounded::{BoundedKernelConfig, Strategy};
use mmp_core::gen::{bd_matrix, graph, hamiltonian_graph, mode_array, ops_trace, rng};
use mmp_core::io::Op;
use mmp_core::matrix::minplus_naive;
use mmp_core::monotone::{
    classify_triple, moderate_uncovered_count, monotone_minplus_report, phase1_approx, phase2_deterministic,
    selection_threshold, shape, MmpConfig,
};
use mmp_core::mpqw::{mpqw_brute_force, MpqwBounded, MpqwMonotone, MpqwParams};
use mmp_core::params::{
    batch_exponent, default_params, drm_default_params, dynamic_cost, m111_value, ssrp_exponent_pair,
    OmegaPreset,
};
use mmp_core::rangemode::{
    batch_range_mode_with, range_mode_naive, BatchConfig, DrmConfig, DynamicRangeModeEngine, ModeArray,
};
use mmp_core::ssrp::{
    apsp_floyd_warshall, bdmp_via_ssrp, ham_apsp_via_ssrp, reduce_bdmp_to_hamapsp, ssrp_baseline, sssp,
    subpath_solve, verify_hamiltonian, SubpathConfig, SubpathInstance,
};
use mmp_core::{ExtInt, IntMatrix};
use rand::Rng;

type Outcome = Result<String, String>;

struct Suite {
    failures: usize,
}

impl Suite {
    fn run(&mut self, id: usize, name: &str, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("[PASS] {id:>2} {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                self.failures += 1;
                println!("[FAIL] {id:>2} {name}: {msg} ({secs:.1}s)");
            }
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct MonotoneStats {
    instances: usize,
    mismatches: usize,
    max_error_ratio: f64,
    error_violations: usize,
    round_violations: usize,
    residual_violations: usize,
    det_instances: usize,
}

/// Criteria 1, 2 and 4 share one instance sweep.
fn monotone_sweep() -> Result<MonotoneStats, String> {
    let mut r = rng(0xacce);
    let mut st = MonotoneStats {
        instances: 0,
        mismatches: 0,
        max_error_ratio: 0.0,
        error_violations: 0,
        round_violations: 0,
        residual_violations: 0,
        det_instances: 0,
    };
    let thetas = [0.1, 0.2, 0.35, 0.5];
    for &beta in &[0.5, 1.0] {
        for &eta in &[0.5, 1.0] {
            for &theta in &thetas {
                for det in [true, false] {
                    for rep in 0..32 {
                        let n = r.gen_range(2..=64);
                        let (a, b) = common::mmp_instance(&mut r, n, beta, eta);
                        let rho = [0.3, 0.5][rep % 2];
                        let mut cfg = MmpConfig::new(theta, rho);
                        if rep % 4 == 3 {
                            cfg = cfg.with_strategy(Strategy::Bucketed, 0.5);
                        }
                        if !det {
                            cfg = cfg.randomized(rep as u64);
                        }
                        let (c, rep_) = monotone_minplus_report(&a, &b, &cfg).map_err(|e| e.to_string())?;
                        let (exact, _) = minplus_naive(&a, b.matrix()).map_err(|e| e.to_string())?;
                        st.instances += 1;
                        st.mismatches += (c != exact) as usize;
                        st.max_error_ratio = st.max_error_ratio.max(rep_.max_scaling_error as f64 / rep_.w as f64);
                        st.error_violations += (rep_.max_scaling_error > 2 * rep_.w) as usize;
                        if det {
                            st.det_instances += 1;
                            st.round_violations += (rep_.rounds as u64 > rep_.round_budget) as usize;
                            let sh = shape(&a, &b);
                            let thr = selection_threshold(&sh, rho);
                            let p1 = phase1_approx(&a, &b, rep_.w).map_err(|e| e.to_string())?;
                            let kernel = BoundedKernelConfig::window(rep_.w);
                            let (_, ledger, _) =
                                phase2_deterministic(&a, &b, &p1, thr, &kernel).map_err(|e| e.to_string())?;
                            let bound = (sh.n as f64).powf(1.0 + sh.beta - rho);
                            let bad = (0..n).any(|j| moderate_uncovered_count(&p1, &ledger, j) as f64 >= bound);
                            st.residual_violations += bad as usize;
                        }
                    }
                }
            }
        }
    }
    Ok(st)
}

fn relevance_audit() -> Outcome {
    let mut r = rng(0x1e1e);
    let (mut exhaustive, mut sampled, mut bad) = (0u64, 0u64, 0u64);
    let mut audit = |n: usize, triples: Option<usize>, r: &mut mmp_core::gen::Rng64| -> Result<(), String> {
        let beta = [0.5, 1.0][r.gen_range(0..2)];
        let eta = [0.5, 1.0][r.gen_range(0..2)];
        let (a, b) = common::mmp_instance(r, n, beta, eta);
        let w = MmpConfig::new([0.2, 0.5][r.gen_range(0..2)], 0.4).scale(n);
        let p1 = phase1_approx(&a, &b, w).map_err(|e| e.to_string())?;
        let (c, _) = minplus_naive(&a, b.matrix()).map_err(|e| e.to_string())?;
        let check = |i: usize, k: usize, j: usize| {
            let t = classify_triple(&a, b.matrix(), &c, &p1.c_tilde, w, i, k, j);
            ((t.strong && !t.moderate) || (t.moderate && !t.weak)) as u64
        };
        match triples {
            None => {
                for i in 0..a.rows() {
                    for k in 0..a.cols() {
                        for j in 0..b.matrix().cols() {
                            bad += check(i, k, j);
                            exhaustive += 1;
                        }
                    }
                }
            }
            Some(t) => {
                for _ in 0..t {
                    let (i, k, j) = (r.gen_range(0..a.rows()), r.gen_range(0..a.cols()), r.gen_range(0..n));
                    bad += check(i, k, j);
                    sampled += 1;
                }
            }
        }
        Ok(())
    };
    for rep in 0..300 {
        audit(2 + rep % 11, None, &mut r)?;
    }
    for _ in 0..100 {
        let n = r.gen_range(13..=48);
        audit(n, Some(1000), &mut r)?;
    }
    ensure(bad == 0 && sampled >= 100_000, || format!("{bad} inclusion violations"))?;
    Ok(format!("{exhaustive} exhaustive + {sampled} sampled triples, 0 violations"))
}

fn mpqw_audit() -> Outcome {
    let mut r = rng(0x5151);
    let (mut queries, mut nones) = (0usize, 0usize);
    let queries_per_build = 10_000;
    for build in 0..20 {
        let n = r.gen_range(4..=24);
        let (a, b) = common::mmp_instance(&mut r, n, [0.5, 1.0][build % 2], 1.0);
        let params = MpqwParams { theta: [0.2, 0.4][build % 2], lambda: 0.5, ..Default::default() };
        let s = MpqwMonotone::build(&a, &b, &params).map_err(|e| e.to_string())?;
        for _ in 0..queries_per_build {
            let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
            let mut ex = common::random_subset(&mut r, a.cols(), s.budget());
            ex.sort_unstable();
            let got = s.query(i, j, &ex).map_err(|e| e.to_string())?;
            let want = mpqw_brute_force(&a, b.matrix(), i, j, &ex);
            nones += want.is_none() as usize;
            ensure(got == want, || format!("monotone build {build} cell ({i},{j}) S={ex:?}: {got:?} vs {want:?}"))?;
            queries += 1;
        }
    }
    for build in 0..20 {
        let (n, m, p) = (r.gen_range(2..=24), r.gen_range(1..=24), r.gen_range(2..=24));
        let w = r.gen_range(1..=6);
        let (a, b) = common::bounded_pair(&mut r, n, m, p, w);
        let budget = (m as f64).sqrt().ceil() as usize;
        let s = MpqwBounded::build(&a, &b, w, 0.5, budget).map_err(|e| e.to_string())?;
        for _ in 0..queries_per_build {
            let (i, j) = (r.gen_range(0..n), r.gen_range(0..p));
            let mut ex = common::random_subset(&mut r, m, budget);
            ex.sort_unstable();
            let got = s.query(i, j, &ex).map_err(|e| e.to_string())?;
            let want = mpqw_brute_force(&a, &b, i, j, &ex);
            nones += want.is_none() as usize;
            ensure(got == want, || format!("bounded build {build} cell ({i},{j}): {got:?} vs {want:?}"))?;
            queries += 1;
        }
    }
    Ok(format!("{queries} queries over 40 builds ({nones} NONE), 0 mismatches"))
}

fn range_mode_audit() -> Outcome {
    let mut r = rng(0x60de);
    let n = 2000;
    let values = mode_array(&mut r, n, 150);
    let arr = ModeArray::new(values.clone()).map_err(|e| e.to_string())?;
    let queries: Vec<(usize, usize)> = (0..2000)
        .map(|_| {
            let l = r.gen_range(1..=n);
            (l, r.gen_range(l..=n))
        })
        .collect();
    let omega = OmegaPreset::default();
    let mut checked = 0;
    for tau in [BatchConfig::default().tau, 0.3] {
        let (answers, report) = batch_range_mode_with(&arr, &queries, &BatchConfig::new(tau, omega))
            .map_err(|e| e.to_string())?;
        for (q, ans) in queries.iter().zip(&answers) {
            let want = range_mode_naive(&values, q.0, q.1).map_err(|e| e.to_string())?;
            let recount = arr.count(ans.witness, q.0, q.1);
            ensure(ans.frequency == want.frequency && recount == ans.frequency, || {
                format!("batch τ={tau} query {q:?}: {ans:?} vs {want:?} (recount {recount})")
            })?;
            checked += 1;
        }
        ensure(report.frequent_values > 0, || format!("τ={tau}: no frequent values exercised"))?;
    }

    let initial = mode_array(&mut r, 800, 60);
    let ops = ops_trace(&mut r, initial.len(), 2000, 60);
    let mut live = initial.clone();
    let mut eng = DynamicRangeModeEngine::new(initial, DrmConfig::new(OmegaPreset::TunedRectangular))
        .map_err(|e| e.to_string())?;
    let mut dyn_queries = 0;
    for (step, op) in ops.iter().enumerate() {
        let got = eng.apply(op).map_err(|e| e.to_string())?;
        match *op {
            Op::Insert { pos, value } => live.insert(pos - 1, value),
            Op::Delete { pos } => drop(live.remove(pos - 1)),
            Op::Query { l, r: rr } => {
                let want = range_mode_naive(&live, l, rr).map_err(|e| e.to_string())?;
                let ans = got.ok_or("query produced no answer")?;
                let recount = live[l - 1..rr].iter().filter(|&&v| v == ans.witness).count();
                ensure(ans.frequency == want.frequency && recount == ans.frequency, || {
                    format!("dynamic step {step} query ({l},{rr}): {ans:?} vs {want:?}")
                })?;
                dyn_queries += 1;
            }
        }
    }
    let stats = eng.stats();
    ensure(stats.max_gap <= stats.period, || format!("rebuild gap {} above period {}", stats.max_gap, stats.period))?;
    Ok(format!(
        "batch {checked} answers at two τ; dynamic {} ops ({dyn_queries} queries, {} rebuilds), 0 mismatches",
        ops.len(),
        stats.rebuilds
    ))
}

fn reduction_audit() -> Outcome {
    let mut r = rng(0xbd);
    let mut total = 0;
    for n in [4, 9, 16, 25] {
        for _ in 0..50 {
            let a = bd_matrix(&mut r, n, n, 1);
            let b = bd_matrix(&mut r, n, n, 1);
            let (got, _) = bdmp_via_ssrp(&a, &b, ssrp_baseline).map_err(|e| e.to_string())?;
            let (want, _) = minplus_naive(&a, &b).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("pipeline mismatch at n={n}"))?;
            total += 1;
        }
    }
    // gadget identities on rectangular pieces
    let mut gadgets = 0;
    for _ in 0..40 {
        let (n1, l, n2) = (r.gen_range(1..=8), r.gen_range(1..=6), r.gen_range(1..=8));
        let x = bd_matrix(&mut r, n1, l, 1);
        let y = bd_matrix(&mut r, l, n2, 1);
        let gd = reduce_bdmp_to_hamapsp(&x, &y).map_err(|e| e.to_string())?;
        ensure(verify_hamiltonian(&gd.graph, &gd.hamiltonian), || "gadget path is not Hamiltonian".into())?;
        let xs = IntMatrix::from_fn(n1, l, |i, k| x.get(i, k).minus(gd.row_min[i]));
        let ys = IntMatrix::from_fn(l, n2, |k, j| y.get(k, j).minus(gd.col_min[j]));
        let (p, _) = minplus_naive(&xs, &ys).map_err(|e| e.to_string())?;
        for i in 0..n1 {
            let d = sssp(&gd.graph, gd.a_nodes[i]).map_err(|e| e.to_string())?.dist;
            for j in 0..n2 {
                let want = p.get(i, j) + ExtInt::finite(2);
                ensure(d[gd.b_nodes[j]] == want, || format!("d(a_{i}, b_{j}) != (X′⋆Y′)+2"))?;
            }
        }
        gadgets += 1;
    }
    let mut chains = 0;
    for _ in 0..40 {
        let n = r.gen_range(1..=14);
        let g = hamiltonian_graph(&mut r, n, 0.2);
        let order: Vec<usize> = (0..n).collect();
        let got = ham_apsp_via_ssrp(&g, &order, ssrp_baseline).map_err(|e| e.to_string())?;
        ensure(got == apsp_floyd_warshall(&g), || format!("chain decode mismatch at n={n}"))?;
        chains += 1;
    }
    Ok(format!("{total} pipeline products, {gadgets} gadget audits, {chains} chain decodes, 0 mismatches"))
}

fn subpath_audit() -> Outcome {
    let mut r = rng(0x5b);
    let (mut instances, mut cells, mut sampled_bad) = (0, 0usize, 0usize);
    while instances < 200 {
        let n = r.gen_range(8..=200);
        let m = r.gen_range(1..=4);
        let g = graph(&mut r, n, m, 3.0 / n as f64, 0.3, true).map_err(|e| e.to_string())?;
        let t = r.gen_range(0..n);
        let zeta = [0.0, 0.25, 0.5, 0.75][instances % 4];
        let inst = SubpathInstance::new(g, 0, t, zeta).map_err(|e| e.to_string())?;
        if inst.path.len() < 2 {
            continue;
        }
        let table = ssrp_baseline(&inst.graph, 0).map_err(|e| e.to_string())?;
        let exact = subpath_solve(&inst, &SubpathConfig::verify()).map_err(|e| e.to_string())?;
        let sampled = subpath_solve(&inst, &SubpathConfig::sampled(instances as u64)).map_err(|e| e.to_string())?;
        for &e in &exact.edges {
            for &v in &exact.targets {
                let want = table.get(e, v);
                ensure(exact.get(e, v) == want, || format!("instance {instances} edge {e:?} vertex {v}"))?;
                sampled_bad += (sampled.get(e, v) != want) as usize;
                cells += 1;
            }
        }
        instances += 1;
    }
    let rate = sampled_bad as f64 / cells as f64;
    ensure(rate <= 0.01, || format!("sampled mismatch rate {rate:.4} above 1%"))?;
    Ok(format!("{instances} instances, {cells} cells exact in verify mode; sampled mismatch rate {rate:.5}"))
}

fn params_audit() -> Outcome {
    let tuned = OmegaPreset::TunedRectangular;
    let close = |x: f64, y: f64| (x - y).abs() <= 5e-4;
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    let mut check = |name: &str, got: f64, want: f64| {
        lines.push(format!("{name}={got:.4}"));
        if !close(got, want) {
            bad.push(format!("{name}: {got:.6} vs {want}"));
        }
    };
    check("m111(0.1348,0.7305)", m111_value(0.1348, 0.7305, tuned), 2.8653);
    check("(12+ω)/5@ω=2", default_params(1.0, 1.0, OmegaPreset::Custom(2.0)).exponent, 2.8);
    check("(12+ω)/5@ω=2.373", default_params(1.0, 1.0, OmegaPreset::Custom(2.373)).exponent, 2.8746);
    check("batch(0.4804,0.0754,0.6984)", batch_exponent(0.4804, 0.0754, 0.6984, tuned), 1.4805);
    let d = drm_default_params(tuned);
    for (name, got, want) in [
        ("t1", d.t1, 0.67385),
        ("t2", d.t2, 0.6523),
        ("t3", d.t3, 0.6523),
        ("θ", d.theta, 0.1239),
        ("ρ", d.rho, 0.1859),
        ("σ", d.sigma, 1.6902),
    ] {
        check(name, got, want);
    }
    check("dynamic per-op", dynamic_cost(&d, tuned).per_op, 0.6524);
    check("ω(1,0.5965,1)", tuned.omega_rect(0.5965), 2.0922);
    let (sa, sb) = ssrp_exponent_pair(tuned);
    check("ssrp a", sa, 0.8043);
    check("ssrp b", sb, 2.4957);
    if bad.is_empty() {
        Ok(lines.join(" "))
    } else {
        Err(bad.join("; "))
    }
}

fn bench_audit() -> Outcome {
    let cfg = BenchConfig { algorithms: vec![Algorithm::Naive], reps: 3, ..Default::default() };
    let report = bench(&cfg).map_err(|e| e.to_string())?;
    let naive = &report.algorithms[0];
    let slope = naive.slope.ok_or("no slope")?;
    let small = BenchConfig {
        algorithms: vec![Algorithm::Naive, Algorithm::Monotone],
        sizes: vec![32, 64, 96, 128],
        reps: 1,
        ..Default::default()
    };
    let ctx = bench(&small).map_err(|e| e.to_string())?;
    let mono = &ctx.algorithms[1];
    let info = format!(
        "naive slope {slope:.3} on 64..512 (band [2.7, 3.3]); monotone slope {:.3} on 32..128, predicted {:.4}, reference (12+ω)/5 = {:.4}",
        mono.slope.unwrap_or(f64::NAN),
        mono.predicted_exponent.unwrap_or(f64::NAN),
        report.reference_exponent
    );
    ensure((2.7..=3.3).contains(&slope), || info.clone())?;
    Ok(info)
}

fn main() -> ExitCode {
    let mut suite = Suite { failures: 0 };
    let sweep_start = Instant::now();
    let sweep = monotone_sweep();
    let sweep_secs = sweep_start.elapsed().as_secs_f64();
    match &sweep {
        Ok(st) => {
            suite.run(1, "monotone min-plus exactness", || {
                ensure(st.instances >= 1000 && st.mismatches == 0, || {
                    format!("{} of {} instances differ from the naive product", st.mismatches, st.instances)
                })?;
                Ok(format!("{} instances bit-identical, sweep {sweep_secs:.1}s", st.instances))
            });
            suite.run(2, "phase 1 error bound", || {
                ensure(st.error_violations == 0, || format!("{} instances exceed 2W", st.error_violations))?;
                Ok(format!("max |C̃ − C| / W = {:.3} ≤ 2", st.max_error_ratio))
            });
        }
        Err(e) => {
            suite.run(1, "monotone min-plus exactness", || Err(e.clone()));
            suite.run(2, "phase 1 error bound", || Err(e.clone()));
        }
    }
    suite.run(3, "relevance inclusions", relevance_audit);
    suite.run(4, "deterministic round counts", || {
        let st = sweep.as_ref().map_err(|e| e.clone())?;
        ensure(st.round_violations == 0 && st.residual_violations == 0, || {
            format!("{} round-budget and {} residual violations", st.round_violations, st.residual_violations)
        })?;
        Ok(format!("{} deterministic instances within ⌈n^ρ⌉ rounds and residual < n^(1+β−ρ)", st.det_instances))
    });
    suite.run(5, "query with exclusions", mpqw_audit);
    suite.run(6, "range mode", range_mode_audit);
    suite.run(7, "reduction pipeline", reduction_audit);
    suite.run(8, "subpath solver", subpath_audit);
    suite.run(9, "parameter points", params_audit);
    suite.run(10, "bench sanity", bench_audit);
    if suite.failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", suite.failures);
        ExitCode::FAILURE
    }
}
