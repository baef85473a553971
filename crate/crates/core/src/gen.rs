//! Seeded instance generators. Every output passes its validator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::{format_array, format_matrix, format_ops, Op};
use crate::matrix::{ExtInt, IntMatrix, MonotoneMatrix};
use crate::monotone::pow_ceil;
use crate::ssrp::{format_graph, johnson_potentials, WeightedDigraph};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    MonotoneMatrix,
    BdMatrix,
    BoundedMatrix,
    Graph,
    ModeArray,
    OpsTrace,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind> {
        Ok(match s {
            "monotone-matrix" => Kind::MonotoneMatrix,
            "bd-matrix" => Kind::BdMatrix,
            "bounded-matrix" => Kind::BoundedMatrix,
            "graph" => Kind::Graph,
            "mode-array" => Kind::ModeArray,
            "ops-trace" => Kind::OpsTrace,
            _ => return Err(Error::InvalidParams(format!("unknown generator kind {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorSpec {
    pub kind: Kind,
    pub n: usize,
    pub beta: f64,
    pub eta: f64,
    /// Weight or entry bound, depending on the kind.
    pub m: i64,
    /// Edge probability, `∞` density, or distinct-value fraction.
    pub density: f64,
    pub seed: u64,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec { kind: Kind::MonotoneMatrix, n: 16, beta: 1.0, eta: 1.0, m: 2, density: 0.2, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub enum Artifact {
    Matrix(IntMatrix),
    Graph(WeightedDigraph),
    Array(Vec<u64>),
    Ops(Vec<Op>),
}

impl Artifact {
    pub fn render(&self) -> String {
        match self {
            Artifact::Matrix(m) => format_matrix(m),
            Artifact::Graph(g) => format_graph(g),
            Artifact::Array(a) => format_array(a),
            Artifact::Ops(o) => format_ops(o),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Artifact> {
    let mut r = rng(spec.seed);
    let n = spec.n;
    if n == 0 {
        return Err(Error::Infeasible("n must be positive".into()));
    }
    Ok(match spec.kind {
        Kind::MonotoneMatrix => {
            let rows = pow_ceil(n.max(2), spec.beta).max(1) as usize;
            let range = pow_ceil(n.max(2), spec.beta + spec.eta);
            Artifact::Matrix(monotone_matrix(&mut r, rows, n, range)?.into_matrix())
        }
        Kind::BdMatrix => Artifact::Matrix(bd_matrix(&mut r, n, n, spec.m.max(0))),
        Kind::BoundedMatrix => Artifact::Matrix(bounded_matrix(&mut r, n, n, spec.m.max(0), spec.density)),
        Kind::Graph => Artifact::Graph(graph(&mut r, n, spec.m, spec.density, 0.3, true)?),
        Kind::ModeArray => {
            let distinct = ((n as f64 * spec.density).ceil() as u64).max(1);
            Artifact::Array(mode_array(&mut r, n, distinct))
        }
        Kind::OpsTrace => {
            let distinct = ((n as f64 * spec.density).ceil() as u64).max(1);
            Artifact::Ops(ops_trace(&mut r, 0, n, distinct))
        }
    })
}

/// `rows × cols` monotone matrix with total range as close to
/// `total_range` as the shape allows (each row contributes at least 1 and
/// at most `total_range / rows` rounded up).
pub fn monotone_matrix(r: &mut Rng64, rows: usize, cols: usize, total_range: u64) -> Result<MonotoneMatrix> {
    if total_range < rows as u64 {
        return Err(Error::Infeasible(format!("total range {total_range} below row count {rows}")));
    }
    let per = total_range / rows as u64;
    let extra = (total_range % rows as u64) as usize;
    let mut data = Vec::with_capacity(rows * cols);
    for k in 0..rows {
        let span = (per + (k < extra) as u64 - 1) as i64;
        let span = if cols == 1 { 0 } else { span };
        let start = r.gen_range(-span.max(4)..=span.max(4));
        let mut cuts: Vec<i64> = (0..cols).map(|_| r.gen_range(0..=span)).collect();
        cuts.sort_unstable();
        if cols > 1 {
            cuts[0] = 0;
            cuts[cols - 1] = span;
        }
        data.extend(cuts.into_iter().map(|c| ExtInt::finite(start + c)));
    }
    MonotoneMatrix::new(IntMatrix::new(rows, cols, data)?)
}

/// Left factor for a monotone product: entries in `[−range, range]`, each
/// `∞` with probability `inf_density`.
pub fn left_matrix(r: &mut Rng64, rows: usize, cols: usize, range: i64, inf_density: f64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        if r.gen_bool(inf_density.clamp(0.0, 1.0)) {
            ExtInt::INF
        } else {
            ExtInt::finite(r.gen_range(-range..=range))
        }
    })
}

/// Matrix whose adjacent entries differ by at most `m`.
pub fn bd_matrix(r: &mut Rng64, rows: usize, cols: usize, m: i64) -> IntMatrix {
    let mut v = vec![0i64; rows * cols];
    v[0] = r.gen_range(-5..=5);
    for i in 0..rows {
        for j in 0..cols {
            if i == 0 && j == 0 {
                continue;
            }
            let (mut lo, mut hi) = (i64::MIN, i64::MAX);
            if i > 0 {
                let up = v[(i - 1) * cols + j];
                lo = lo.max(up - m);
                hi = hi.min(up + m);
            }
            if j > 0 {
                let left = v[i * cols + j - 1];
                lo = lo.max(left - m);
                hi = hi.min(left + m);
            }
            v[i * cols + j] = r.gen_range(lo..=hi);
        }
    }
    IntMatrix::new(rows, cols, v.into_iter().map(ExtInt::finite).collect()).expect("non-empty")
}

pub fn bounded_matrix(r: &mut Rng64, rows: usize, cols: usize, w: i64, inf_density: f64) -> IntMatrix {
    left_matrix(r, rows, cols, w, inf_density)
}

/// Random digraph without negative cycles. With `rooted`, a random
/// arborescence from vertex 0 is included so every vertex is reachable.
/// Negative weights are drawn with probability `neg_fraction`; if a
/// negative cycle appears the draw is repeated with half the fraction.
pub fn graph(r: &mut Rng64, n: usize, m: i64, density: f64, neg_fraction: f64, rooted: bool) -> Result<WeightedDigraph> {
    if m < 0 {
        return Err(Error::Infeasible("negative weight bound".into()));
    }
    let mut frac = neg_fraction.clamp(0.0, 1.0);
    loop {
        let mut present = vec![false; n * n];
        let mut pairs = Vec::new();
        if rooted {
            for v in 1..n {
                let u = r.gen_range(0..v);
                present[u * n + v] = true;
                pairs.push((u, v));
            }
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && !present[u * n + v] && r.gen_bool(density.clamp(0.0, 1.0)) {
                    present[u * n + v] = true;
                    pairs.push((u, v));
                }
            }
        }
        // relabel so that the arborescence is not aligned with vertex ids
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (2..n).rev() {
            let j = r.gen_range(1..=i);
            perm.swap(i, j);
        }
        let edges: Vec<(usize, usize, i64)> = pairs
            .iter()
            .map(|&(u, v)| {
                let w = if m > 0 && r.gen_bool(frac) { r.gen_range(-m..0) } else { r.gen_range(0..=m) };
                (perm[u], perm[v], w)
            })
            .collect();
        let g = WeightedDigraph::unchecked(n, &edges, m)?;
        if johnson_potentials(&g).is_ok() {
            return Ok(g);
        }
        frac /= 2.0;
        if frac < 1e-3 {
            frac = 0.0;
        }
    }
}

/// Unweighted graph containing the path `0 → 1 → … → n−1`, plus random edges.
pub fn hamiltonian_graph(r: &mut Rng64, n: usize, density: f64) -> WeightedDigraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    for u in 0..n {
        for v in 0..n {
            if u != v && v != u + 1 && r.gen_bool(density.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    WeightedDigraph::unweighted(n, &edges).expect("simple graph")
}

/// Skewed ids in `1..=distinct`, so a few values are frequent.
pub fn mode_array(r: &mut Rng64, n: usize, distinct: u64) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let u: f64 = r.gen();
            1 + ((distinct as f64 * u * u * u) as u64).min(distinct - 1)
        })
        .collect()
}

/// Valid interleaved insert, delete and query trace starting from length `start`.
pub fn ops_trace(r: &mut Rng64, start: usize, ops: usize, distinct: u64) -> Vec<Op> {
    let mut len = start;
    let mut out = Vec::with_capacity(ops);
    for _ in 0..ops {
        let roll = r.gen_range(0..10);
        if len == 0 || roll < 3 {
            let u: f64 = r.gen();
            let value = 1 + ((distinct as f64 * u * u * u) as u64).min(distinct - 1);
            out.push(Op::Insert { pos: r.gen_range(1..=len + 1), value });
            len += 1;
        } else if roll < 5 {
            out.push(Op::Delete { pos: r.gen_range(1..=len) });
            len -= 1;
        } else {
            let l = r.gen_range(1..=len);
            out.push(Op::Query { l, r: r.gen_range(l..=len) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_ops;
    use crate::matrix::{check_bounded_difference, validate_monotone};

    #[test]
    fn generators_pass_validators() {
        let spec = GeneratorSpec { n: 16, eta: 1.0, seed: 7, ..Default::default() };
        let Artifact::Matrix(m) = generate(&spec).unwrap() else { panic!() };
        let mm = validate_monotone(&m).unwrap();
        assert!(mm.total_range() <= 256);

        let spec = GeneratorSpec { kind: Kind::BdMatrix, n: 8, m: 1, ..Default::default() };
        let Artifact::Matrix(m) = generate(&spec).unwrap() else { panic!() };
        assert!(check_bounded_difference(&m, 1));

        let spec = GeneratorSpec { kind: Kind::Graph, n: 20, m: 2, ..Default::default() };
        let Artifact::Graph(g) = generate(&spec).unwrap() else { panic!() };
        assert!(johnson_potentials(&g).is_ok());
        assert!(g.edges().any(|(_, _, w)| w < 0));
    }

    #[test]
    fn deterministic_and_infeasible() {
        let spec = GeneratorSpec { kind: Kind::OpsTrace, n: 200, seed: 3, ..Default::default() };
        let a = generate(&spec).unwrap().render();
        assert_eq!(a, generate(&spec).unwrap().render());
        assert_eq!(parse_ops(&a).unwrap().len(), 200);
        assert!(matches!(monotone_matrix(&mut rng(1), 10, 4, 5), Err(Error::Infeasible(_))));
    }
}
