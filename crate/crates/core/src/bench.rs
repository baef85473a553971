//! Wall-clock benchmarks with log-log slope fits.
//!
//! Reports carry predicted exponents for context only; nothing here makes a
//! pass/fail claim.

use std::time::Instant;

use serde::Serialize;

use crate::bounded::{bounded_minplus, BoundedKernelConfig};
use crate::error::{Error, Result};
use crate::gen::{left_matrix, monotone_matrix, rng};
use crate::matrix::{minplus_naive, minplus_sweep, IntMatrix, MonotoneMatrix};
use crate::monotone::{monotone_minplus, MmpConfig};
use crate::params::{default_params, OmegaPreset};

pub const SCHEMA: &str = "bench.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Naive,
    Sweep,
    Monotone,
    MonotoneRandomized,
    Bounded,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Naive, Algorithm::Sweep, Algorithm::Monotone, Algorithm::MonotoneRandomized, Algorithm::Bounded];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "naive" => Algorithm::Naive,
            "sweep" => Algorithm::Sweep,
            "monotone" => Algorithm::Monotone,
            "monotone-randomized" => Algorithm::MonotoneRandomized,
            "bounded" => Algorithm::Bounded,
            _ => return Err(Error::InvalidParams(format!("unknown algorithm {s:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Sweep => "sweep",
            Algorithm::Monotone => "monotone",
            Algorithm::MonotoneRandomized => "monotone-randomized",
            Algorithm::Bounded => "bounded",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub omega: OmegaPreset,
    /// Prepare instances on worker threads; timing stays sequential.
    pub parallel_prep: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            algorithms: vec![Algorithm::Naive, Algorithm::Monotone],
            sizes: vec![64, 128, 256, 512],
            reps: 3,
            seed: 0,
            omega: OmegaPreset::default(),
            parallel_prep: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeSamples {
    pub n: usize,
    /// Seconds, one per repetition.
    pub samples: Vec<f64>,
    pub best: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgorithmReport {
    pub algorithm: Algorithm,
    pub sizes: Vec<SizeSamples>,
    /// Least-squares slope of ln(best) against ln(n); absent below 4 sizes.
    pub slope: Option<f64>,
    pub predicted_exponent: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub os: &'static str,
    pub arch: &'static str,
    pub threads: usize,
    pub omega_preset: String,
    pub omega: f64,
    pub reps: usize,
    pub seed: u64,
    pub debug_assertions: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub schema: &'static str,
    pub environment: Environment,
    pub algorithms: Vec<AlgorithmReport>,
    /// `(12+ω)/5`, the square-case bound for reference.
    pub reference_exponent: f64,
}

/// Ordinary least squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn loglog_slope(sizes: &[usize], times: &[f64]) -> Option<f64> {
    if sizes.len() < 4 {
        return None;
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = times.iter().map(|t| t.max(1e-9).ln()).collect();
    Some(least_squares_slope(&xs, &ys))
}

pub fn predicted_exponent(alg: Algorithm, omega: OmegaPreset) -> Option<f64> {
    match alg {
        Algorithm::Naive => Some(3.0),
        Algorithm::Monotone | Algorithm::MonotoneRandomized => Some(default_params(1.0, 1.0, omega).exponent),
        Algorithm::Sweep | Algorithm::Bounded => None,
    }
}

struct Instance {
    a: IntMatrix,
    b: MonotoneMatrix,
    small_a: IntMatrix,
    small_b: IntMatrix,
}

fn prepare(n: usize, seed: u64) -> Instance {
    let mut r = rng(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let a = left_matrix(&mut r, n, n, n as i64, 0.0);
    let b = monotone_matrix(&mut r, n, n, (n * n) as u64).expect("n² ≥ n");
    let small_a = left_matrix(&mut r, n, n, 4, 0.0);
    let small_b = left_matrix(&mut r, n, n, 4, 0.0);
    Instance { a, b, small_a, small_b }
}

fn run(alg: Algorithm, inst: &Instance, cfg: &BenchConfig) -> Result<()> {
    let schedule = default_params(1.0, 1.0, cfg.omega);
    let mmp = MmpConfig::new(schedule.theta, schedule.rho);
    match alg {
        Algorithm::Naive => drop(minplus_naive(&inst.a, inst.b.matrix())?),
        Algorithm::Sweep => drop(minplus_sweep(&inst.a, &inst.b)?),
        Algorithm::Monotone => drop(monotone_minplus(&inst.a, &inst.b, &mmp)?),
        Algorithm::MonotoneRandomized => drop(monotone_minplus(&inst.a, &inst.b, &mmp.randomized(cfg.seed))?),
        Algorithm::Bounded => drop(bounded_minplus(&inst.small_a, &inst.small_b, &BoundedKernelConfig::window(4))?),
    }
    Ok(())
}

pub fn bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("sizes must be strictly ascending".into()));
    }
    let instances: Vec<Instance> = if cfg.parallel_prep {
        std::thread::scope(|s| {
            let handles: Vec<_> = cfg.sizes.iter().map(|&n| s.spawn(move || prepare(n, cfg.seed))).collect();
            handles.into_iter().map(|h| h.join().expect("instance preparation panicked")).collect()
        })
    } else {
        cfg.sizes.iter().map(|&n| prepare(n, cfg.seed)).collect()
    };
    let mut algorithms = Vec::new();
    for &alg in &cfg.algorithms {
        let mut sizes = Vec::new();
        for (inst, &n) in instances.iter().zip(&cfg.sizes) {
            let mut samples = Vec::with_capacity(cfg.reps);
            for _ in 0..cfg.reps.max(1) {
                let t = Instant::now();
                run(alg, inst, cfg)?;
                samples.push(t.elapsed().as_secs_f64());
            }
            let best = samples.iter().copied().fold(f64::INFINITY, f64::min);
            sizes.push(SizeSamples { n, samples, best });
        }
        let best: Vec<f64> = sizes.iter().map(|s| s.best).collect();
        algorithms.push(AlgorithmReport {
            algorithm: alg,
            slope: loglog_slope(&cfg.sizes, &best),
            predicted_exponent: predicted_exponent(alg, cfg.omega),
            sizes,
        });
    }
    Ok(BenchReport {
        schema: SCHEMA,
        environment: Environment {
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            omega_preset: cfg.omega.name(),
            omega: cfg.omega.omega(),
            reps: cfg.reps,
            seed: cfg.seed,
            debug_assertions: cfg!(debug_assertions),
        },
        algorithms,
        reference_exponent: (12.0 + cfg.omega.omega()) / 5.0,
    })
}

/// Plain-text table of best times per size.
pub fn format_table(r: &BenchReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    write!(s, "{:>8}", "n").unwrap();
    for a in &r.algorithms {
        write!(s, " {:>20}", a.algorithm.name()).unwrap();
    }
    s.push('\n');
    let rows = r.algorithms.first().map_or(0, |a| a.sizes.len());
    for i in 0..rows {
        write!(s, "{:>8}", r.algorithms[0].sizes[i].n).unwrap();
        for a in &r.algorithms {
            write!(s, " {:>19.6}s", a.sizes[i].best).unwrap();
        }
        s.push('\n');
    }
    for a in &r.algorithms {
        let slope = a.slope.map_or("-".to_string(), |x| format!("{x:.3}"));
        let pred = a.predicted_exponent.map_or("-".to_string(), |x| format!("{x:.4}"));
        writeln!(s, "{}: slope {slope}, predicted {pred}", a.algorithm.name()).unwrap();
    }
    writeln!(s, "reference (12+ω)/5 = {:.4}", r.reference_exponent).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power() {
        let sizes = [8, 16, 32, 64];
        let t: Vec<f64> = sizes.iter().map(|&n| 1e-6 * (n as f64).powi(3)).collect();
        assert!((loglog_slope(&sizes, &t).unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(loglog_slope(&sizes[..3], &t[..3]), None);
    }

    #[test]
    fn small_report() {
        let cfg = BenchConfig {
            algorithms: Algorithm::ALL.to_vec(),
            sizes: vec![8, 12, 16, 20],
            reps: 1,
            parallel_prep: true,
            ..Default::default()
        };
        let r = bench(&cfg).unwrap();
        assert_eq!(r.schema, "bench.v1");
        assert_eq!(r.algorithms.len(), 5);
        assert!(r.algorithms.iter().all(|a| a.slope.is_some() && a.sizes.iter().all(|s| s.samples.len() == 1)));
        assert!((r.reference_exponent - 2.87458).abs() < 1e-4);
        assert!(format_table(&r).contains("monotone-randomized"));
        assert!(bench(&BenchConfig { sizes: vec![4, 4], ..cfg }).is_err());
    }
}
