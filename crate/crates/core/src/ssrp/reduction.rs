use super::baseline::SsrpTable;
use super::graph::WeightedDigraph;
use crate::error::{Error, Result};
use crate::matrix::{check_bounded_difference, ExtInt, IntMatrix};

/// True iff `order` is a permutation of the vertices and consecutive
/// vertices are joined by edges.
pub fn verify_hamiltonian(g: &WeightedDigraph, order: &[usize]) -> bool {
    if order.len() != g.n() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in order {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    order.windows(2).all(|p| g.weight(p[0], p[1]).is_some())
}

/// Unweighted graph whose `a_i → b_j` distances encode `X ⋆ Y`, built with
/// vertex ids in Hamiltonian-path order.
#[derive(Clone, Debug)]
pub struct BdmpGadget {
    pub graph: WeightedDigraph,
    pub hamiltonian: Vec<usize>,
    pub a_nodes: Vec<usize>,
    pub b_nodes: Vec<usize>,
    /// Nodes of each middle path, `2L + 1` per path.
    pub middle: Vec<Vec<usize>>,
    /// Internal nodes of each connector path between blocks.
    pub connectors: Vec<Vec<usize>>,
    /// `min_k X(i,k)` and `min_k Y(k,j)`.
    pub row_min: Vec<i64>,
    pub col_min: Vec<i64>,
}

impl BdmpGadget {
    /// `(X ⋆ Y)(i,j) = d(a_i, b_j) − 2 + min_k X(i,k) + min_k Y(k,j)`.
    pub fn decode(&self, dist: impl Fn(usize, usize) -> ExtInt) -> IntMatrix {
        IntMatrix::from_fn(self.a_nodes.len(), self.b_nodes.len(), |i, j| {
            dist(self.a_nodes[i], self.b_nodes[j]).minus(2 - self.row_min[i] - self.col_min[j])
        })
    }
}

/// Build the gadget for an `n₁ × L` by `L × n₂` bounded-difference pair.
///
/// Each row of `X` is shifted by its minimum, giving `X″ ∈ [0, L−1]`, and
/// likewise each column of `Y`. Vertex `a_i` enters middle path `p_k` at
/// node `L−1−X″(i,k)`; node `L−1+Y″(k,j)` of `p_k` exits to `b_j`.
/// Consecutive `a`'s (and `b`'s) are joined by two-edge paths, and
/// connector paths of `3L` edges thread everything into one Hamiltonian
/// path without creating shortcuts.
pub fn reduce_bdmp_to_hamapsp(x: &IntMatrix, y: &IntMatrix) -> Result<BdmpGadget> {
    if x.cols() != y.rows() {
        return Err(Error::Dimension(format!("{}x{} by {}x{}", x.rows(), x.cols(), y.rows(), y.cols())));
    }
    if !check_bounded_difference(x, 1) || !check_bounded_difference(y, 1) {
        return Err(Error::NotBoundedDifference { bound: 1 });
    }
    let (n1, l, n2) = (x.rows(), x.cols(), y.cols());
    let row_min: Vec<i64> = (0..n1).map(|i| x.row(i).iter().map(|v| v.unwrap()).min().unwrap()).collect();
    let col_min: Vec<i64> = (0..n2).map(|j| (0..l).map(|k| y.get(k, j).unwrap()).min().unwrap()).collect();

    let mut next = 0usize;
    let mut fresh = |count: usize| -> Vec<usize> {
        let v: Vec<usize> = (next..next + count).collect();
        next += count;
        v
    };
    let mut chain_a = Vec::new();
    let mut a_nodes = Vec::new();
    for i in 0..n1 {
        let a = fresh(1)[0];
        a_nodes.push(a);
        chain_a.push(a);
        if i + 1 < n1 {
            chain_a.extend(fresh(1));
        }
    }
    let mut connectors = Vec::new();
    let mut middle = Vec::new();
    for _ in 0..l {
        connectors.push(fresh(3 * l - 1));
        middle.push(fresh(2 * l + 1));
    }
    connectors.push(fresh(3 * l - 1));
    let mut chain_b = Vec::new();
    let mut b_nodes = Vec::new();
    for j in 0..n2 {
        let b = fresh(1)[0];
        b_nodes.push(b);
        chain_b.push(b);
        if j + 1 < n2 {
            chain_b.extend(fresh(1));
        }
    }
    let total = next;
    let hamiltonian: Vec<usize> = (0..total).collect();
    // ids were allocated in path order, so the path is 0, 1, …, total−1
    debug_assert!(chain_a.iter().chain(chain_b.iter()).all(|&v| v < total));

    let mut edges: Vec<(usize, usize)> = hamiltonian.windows(2).map(|p| (p[0], p[1])).collect();
    for (i, &a) in a_nodes.iter().enumerate() {
        for (k, p) in middle.iter().enumerate() {
            let xs = x.get(i, k).unwrap() - row_min[i];
            edges.push((a, p[l - 1 - xs as usize]));
        }
    }
    for (k, p) in middle.iter().enumerate() {
        for (j, &b) in b_nodes.iter().enumerate() {
            let ys = y.get(k, j).unwrap() - col_min[j];
            edges.push((p[l - 1 + ys as usize], b));
        }
    }
    let graph = WeightedDigraph::unweighted(total, &edges)?;
    Ok(BdmpGadget { graph, hamiltonian, a_nodes, b_nodes, middle, connectors, row_min, col_min })
}

/// Graph `G′` whose replacement paths from `v′_{n+1}` encode the distances
/// of a graph with a Hamiltonian path.
#[derive(Clone, Debug)]
pub struct HamSsrpGadget {
    pub graph: WeightedDigraph,
    pub source: usize,
    /// `chain[i]` is `v′_i`, for `0 ≤ i ≤ n+1`.
    pub chain: Vec<usize>,
    /// `copy[v]`: the vertex of `G′` copying vertex `v` of the input.
    pub copy: Vec<usize>,
    /// 1-based position of each input vertex on the Hamiltonian path.
    pub position: Vec<usize>,
}

impl HamSsrpGadget {
    /// `d(v_i, v_j) = d_{G′}(v′_{n+1}, v_j, (v′_i, v′_{i−1})) − (i − n − 1)`.
    pub fn decode(&self, table: &SsrpTable) -> Result<Vec<Vec<ExtInt>>> {
        let n = self.copy.len();
        let mut out = vec![vec![ExtInt::INF; n]; n];
        for u in 0..n {
            let i = self.position[u];
            let e = (self.chain[i], self.chain[i - 1]);
            let row = table.edge_index(e).ok_or_else(|| Error::InvalidGraph("chain edge is not a tree edge".into()))?;
            for v in 0..n {
                out[u][v] = table.dist[row][self.copy[v]].minus(i as i64 - n as i64 - 1);
            }
        }
        Ok(out)
    }
}

/// Build `G′` from an unweighted graph and its Hamiltonian path `order`:
/// a chain `v′_{n+1} → … → v′_0` of weight −1, zero-weight edges
/// `v′_i → v_i`, and a unit-weight copy of the input.
pub fn reduce_hamapsp_to_ssrp(g: &WeightedDigraph, order: &[usize]) -> Result<HamSsrpGadget> {
    if !verify_hamiltonian(g, order) {
        return Err(Error::NotHamiltonian);
    }
    let n = g.n();
    let chain: Vec<usize> = (0..=n + 1).collect();
    let mut position = vec![0; n];
    let mut copy = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p + 1;
        copy[v] = n + 2 + p;
    }
    let mut edges = Vec::new();
    for i in 1..=n + 1 {
        edges.push((chain[i], chain[i - 1], -1));
    }
    for &v in order {
        edges.push((chain[position[v]], copy[v], 0));
    }
    for (u, v, _) in g.edges() {
        edges.push((copy[u], copy[v], 1));
    }
    // the chain only descends, so there is no negative cycle
    let graph = WeightedDigraph::unchecked(2 * n + 2, &edges, 1)?;
    Ok(HamSsrpGadget { graph, source: chain[n + 1], chain, copy, position })
}

/// All-pairs distances of a Hamiltonian graph through one SSRP call.
pub fn ham_apsp_via_ssrp<F>(g: &WeightedDigraph, order: &[usize], mut solver: F) -> Result<Vec<Vec<ExtInt>>>
where
    F: FnMut(&WeightedDigraph, usize) -> Result<SsrpTable>,
{
    let gadget = reduce_hamapsp_to_ssrp(g, order)?;
    let table = solver(&gadget.graph, gadget.source)?;
    gadget.decode(&table)
}

/// Extend a bounded-difference matrix to `rows × cols` by `+1` steps past
/// the last row and column.
pub fn pad_bounded_difference(a: &IntMatrix, rows: usize, cols: usize) -> IntMatrix {
    let (r, c) = (a.rows(), a.cols());
    IntMatrix::from_fn(rows, cols, |i, k| {
        let extra = i.saturating_sub(r - 1) + k.saturating_sub(c - 1);
        a.get(i.min(r - 1), k.min(c - 1)).minus(-(extra as i64))
    })
}

/// Per-piece statistics of [`bdmp_via_ssrp`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PipelineStats {
    pub pieces: usize,
    pub padded: usize,
    pub gadget_vertices: usize,
    pub ssrp_vertices: usize,
}

/// `A ⋆ B` for square bounded-difference matrices, computed only through
/// SSRP calls: pad to `L² × L²`, split the inner dimension into `L`
/// pieces, and per piece go through the Hamiltonian gadget and the chain
/// gadget.
pub fn bdmp_via_ssrp<F>(a: &IntMatrix, b: &IntMatrix, mut solver: F) -> Result<(IntMatrix, PipelineStats)>
where
    F: FnMut(&WeightedDigraph, usize) -> Result<SsrpTable>,
{
    let n = a.rows();
    if a.cols() != n || b.rows() != n || b.cols() != n {
        return Err(Error::Dimension("square matrices of equal size expected".into()));
    }
    if !check_bounded_difference(a, 1) || !check_bounded_difference(b, 1) {
        return Err(Error::NotBoundedDifference { bound: 1 });
    }
    let l = (n as f64).sqrt().ceil() as usize;
    let l = if (l - 1) * (l - 1) >= n { l - 1 } else { l };
    let big = l * l;
    let ap = pad_bounded_difference(a, big, big);
    let bp = pad_bounded_difference(b, big, big);
    let mut c = IntMatrix::filled(n, n, ExtInt::INF);
    let mut stats = PipelineStats { pieces: l, padded: big, ..Default::default() };
    for p in 0..l {
        let x = ap.slice(0, big, p * l, (p + 1) * l);
        let y = bp.slice(p * l, (p + 1) * l, 0, big);
        let gadget = reduce_bdmp_to_hamapsp(&x, &y)?;
        stats.gadget_vertices = stats.gadget_vertices.max(gadget.graph.n());
        stats.ssrp_vertices = stats.ssrp_vertices.max(2 * gadget.graph.n() + 2);
        let dist = ham_apsp_via_ssrp(&gadget.graph, &gadget.hamiltonian, &mut solver)?;
        let part = gadget.decode(|u, v| dist[u][v]);
        c = c.entrywise_min(&part.slice(0, n, 0, n));
    }
    Ok((c, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::minplus_naive;
    use crate::ssrp::baseline::ssrp_baseline;
    use crate::ssrp::graph::apsp_floyd_warshall;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_raw_rows(rows).unwrap()
    }

    fn fw_decode(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
        let g = reduce_bdmp_to_hamapsp(x, y).unwrap();
        assert!(verify_hamiltonian(&g.graph, &g.hamiltonian));
        let d = apsp_floyd_warshall(&g.graph);
        g.decode(|u, v| d[u][v])
    }

    #[test]
    fn one_by_one() {
        let (x, y) = (mat(&[&[4]]), mat(&[&[7]]));
        let g = reduce_bdmp_to_hamapsp(&x, &y).unwrap();
        let d = apsp_floyd_warshall(&g.graph);
        assert_eq!(d[g.a_nodes[0]][g.b_nodes[0]], ExtInt::finite(2));
        assert_eq!(g.decode(|u, v| d[u][v]), mat(&[&[11]]));
        assert_eq!(g.middle[0].len(), 3);
        assert!(g.connectors.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn flat_case_distances_are_two() {
        let x = IntMatrix::filled(4, 2, ExtInt::finite(5));
        let y = IntMatrix::filled(2, 3, ExtInt::finite(-1));
        let g = reduce_bdmp_to_hamapsp(&x, &y).unwrap();
        let d = apsp_floyd_warshall(&g.graph);
        for &a in &g.a_nodes {
            for &b in &g.b_nodes {
                assert_eq!(d[a][b], ExtInt::finite(2));
            }
        }
    }

    #[test]
    fn negative_offsets_decode() {
        // X′ + Y′ < 0 here, which the row-minimum shift handles
        let (x, y) = (mat(&[&[0, -1]]), mat(&[&[0], &[-1]]));
        assert_eq!(fw_decode(&x, &y), mat(&[&[-2]]));
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(reduce_bdmp_to_hamapsp(&mat(&[&[0, 2]]), &mat(&[&[0], &[0]])).is_err());
        let g = WeightedDigraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(verify_hamiltonian(&g, &[0, 1, 2]));
        assert!(!verify_hamiltonian(&g, &[0, 2, 1]));
        assert!(!verify_hamiltonian(&g, &[0, 1]));
        let broken = WeightedDigraph::unweighted(3, &[(0, 1)]).unwrap();
        assert!(matches!(reduce_hamapsp_to_ssrp(&broken, &[0, 1, 2]), Err(Error::NotHamiltonian)));
    }

    #[test]
    fn chain_gadget_hand_example() {
        let g = WeightedDigraph::unweighted(2, &[(0, 1)]).unwrap();
        let gad = reduce_hamapsp_to_ssrp(&g, &[0, 1]).unwrap();
        let table = ssrp_baseline(&gad.graph, gad.source).unwrap();
        let e = (gad.chain[1], gad.chain[0]);
        assert_eq!(table.get(e, gad.copy[1]), Some(ExtInt::finite(-1)));
        let d = gad.decode(&table).unwrap();
        assert_eq!(d[0][1], ExtInt::finite(1));
        assert_eq!(d[0][0], ExtInt::ZERO);
        assert_eq!(d[1][1], ExtInt::ZERO);
        assert_eq!(d[1][0], ExtInt::INF);
    }

    #[test]
    fn pipeline_small() {
        let a = mat(&[&[0, 1, 1, 2], &[1, 1, 0, 1], &[2, 1, 0, 0], &[1, 0, -1, 0]]);
        let b = mat(&[&[3, 2, 2, 1], &[2, 2, 1, 1], &[2, 1, 0, 0], &[1, 0, 0, -1]]);
        let (c, stats) = bdmp_via_ssrp(&a, &b, ssrp_baseline).unwrap();
        assert_eq!(stats.pieces, 2);
        assert_eq!(c, minplus_naive(&a, &b).unwrap().0);
        let k = IntMatrix::filled(3, 3, ExtInt::finite(4));
        let (c, stats) = bdmp_via_ssrp(&k, &k, ssrp_baseline).unwrap();
        assert_eq!(stats.padded, 4);
        assert_eq!(c, IntMatrix::filled(3, 3, ExtInt::finite(8)));
    }
}
