use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::ExtInt;

/// Directed graph with integer weights in `[−M, M]`, no self-loops, no
/// parallel edges and no negative cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    max_weight: i64,
    /// Outgoing `(target, weight)`, sorted by target.
    out: Vec<Vec<(usize, i64)>>,
}

impl WeightedDigraph {
    pub fn new(n: usize, edges: &[(usize, usize, i64)], max_weight: i64) -> Result<Self> {
        let g = Self::unchecked(n, edges, max_weight)?;
        johnson_potentials(&g)?;
        Ok(g)
    }

    /// Structural checks only; the caller guarantees no negative cycle.
    pub(crate) fn unchecked(n: usize, edges: &[(usize, usize, i64)], max_weight: i64) -> Result<Self> {
        if max_weight < 0 {
            return Err(Error::InvalidGraph("negative weight bound".into()));
        }
        let mut out = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) outside {n} vertices", u + 1, v + 1)));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {}", u + 1)));
            }
            if w.abs() > max_weight {
                return Err(Error::InvalidGraph(format!("weight {w} exceeds bound {max_weight}")));
            }
            out[u].push((v, w));
        }
        for (u, adj) in out.iter_mut().enumerate() {
            adj.sort_unstable();
            if adj.windows(2).any(|p| p[0].0 == p[1].0) {
                return Err(Error::InvalidGraph(format!("parallel edges leaving {}", u + 1)));
            }
        }
        Ok(WeightedDigraph { n, max_weight, out })
    }

    /// Unit-weight graph.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        Self::unchecked(n, &e, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn out(&self, u: usize) -> &[(usize, i64)] {
        &self.out[u]
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<i64> {
        let adj = &self.out[u];
        adj.binary_search_by_key(&v, |&(t, _)| t).ok().map(|i| adj[i].1)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, adj)| adj.iter().map(move |&(v, w)| (u, v, w)))
    }

    /// Copy without the listed edges.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> WeightedDigraph {
        let mut g = self.clone();
        for &(u, v) in removed {
            g.out[u].retain(|&(t, _)| t != v);
        }
        g
    }

    pub fn reversed(&self) -> WeightedDigraph {
        let mut out = vec![Vec::new(); self.n];
        for (u, v, w) in self.edges() {
            out[v].push((u, w));
        }
        for adj in &mut out {
            adj.sort_unstable();
        }
        WeightedDigraph { n: self.n, max_weight: self.max_weight, out }
    }
}

/// `GRAPH v1 <n> <m> <M>` followed by `m` lines `u v w`, vertices 1-based.
pub fn parse_graph(text: &str) -> Result<WeightedDigraph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let (ln, head) = lines.next().ok_or_else(|| perr(1, "empty graph file"))?;
    let f: Vec<&str> = head.split_whitespace().collect();
    if f.len() != 5 || f[0] != "GRAPH" || f[1] != "v1" {
        return Err(perr(ln + 1, "expected `GRAPH v1 <n> <m> <M>`"));
    }
    let num = |s: &str, ln: usize| s.parse::<i64>().map_err(|_| perr(ln + 1, &format!("bad number {s:?}")));
    let (n, m, mw) = (num(f[2], ln)?, num(f[3], ln)?, num(f[4], ln)?);
    if n < 0 || m < 0 {
        return Err(perr(ln + 1, "negative count"));
    }
    let mut edges = Vec::with_capacity(m as usize);
    for (ln, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(perr(ln + 1, "expected `u v w`"));
        }
        let (u, v, w) = (num(f[0], ln)?, num(f[1], ln)?, num(f[2], ln)?);
        if u < 1 || v < 1 {
            return Err(perr(ln + 1, "vertices are 1-based"));
        }
        edges.push((u as usize - 1, v as usize - 1, w));
    }
    if edges.len() != m as usize {
        return Err(perr(1, &format!("header declares {m} edges, found {}", edges.len())));
    }
    WeightedDigraph::new(n as usize, &edges, mw)
}

pub fn format_graph(g: &WeightedDigraph) -> String {
    let mut s = format!("GRAPH v1 {} {} {}\n", g.n(), g.edge_count(), g.max_weight());
    for (u, v, w) in g.edges() {
        writeln!(s, "{} {} {w}", u + 1, v + 1).unwrap();
    }
    s
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<WeightedDigraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Single-source distances by Bellman–Ford. Used for potentials and as an
/// independent reference for the Dijkstra-based routines.
pub fn bellman_ford(g: &WeightedDigraph, s: usize) -> Result<Vec<ExtInt>> {
    let mut d = vec![ExtInt::INF; g.n()];
    d[s] = ExtInt::ZERO;
    for round in 0..=g.n() {
        let mut changed = false;
        for (u, v, w) in g.edges() {
            let c = d[u] + ExtInt::finite(w);
            if c < d[v] {
                d[v] = c;
                changed = true;
            }
        }
        if !changed {
            return Ok(d);
        }
        if round == g.n() {
            break;
        }
    }
    Err(Error::NegativeCycle)
}

/// Potentials `h` making every reduced weight `w + h(u) − h(v)` non-negative.
pub fn johnson_potentials(g: &WeightedDigraph) -> Result<Vec<i64>> {
    let mut h = vec![0i64; g.n()];
    for round in 0..=g.n() {
        let mut changed = false;
        for (u, v, w) in g.edges() {
            if h[u] + w < h[v] {
                h[v] = h[u] + w;
                changed = true;
            }
        }
        if !changed {
            return Ok(h);
        }
        if round == g.n() {
            break;
        }
    }
    Err(Error::NegativeCycle)
}

/// Shortest-path tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpTree {
    pub source: usize,
    pub dist: Vec<ExtInt>,
    pub parent: Vec<Option<usize>>,
}

impl SpTree {
    /// Vertices on the tree path from the source to `v`, inclusive.
    pub fn path_to(&self, v: usize) -> Option<Vec<usize>> {
        if self.dist[v].is_inf() {
            return None;
        }
        let mut p = vec![v];
        let mut x = v;
        while let Some(u) = self.parent[x] {
            p.push(u);
            x = u;
        }
        p.reverse();
        Some(p)
    }

    /// Tree edges `(parent(v), v)` ordered by child.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.dist.len()).filter_map(|v| self.parent[v].map(|u| (u, v))).collect()
    }

    /// `v` and all its tree descendants, ascending.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut children = vec![Vec::new(); self.dist.len()];
        for (u, c) in self.edges() {
            children[u].push(c);
        }
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(&children[x]);
        }
        out.sort_unstable();
        out
    }
}

/// Dijkstra on reduced weights, skipping edge `skip`. Returns true
/// distances and the settle order.
pub(crate) fn dijkstra(
    g: &WeightedDigraph,
    h: &[i64],
    s: usize,
    skip: Option<(usize, usize)>,
) -> (Vec<ExtInt>, Vec<usize>) {
    let n = g.n();
    let mut red = vec![i64::MAX; n];
    let mut done = vec![false; n];
    let mut order = Vec::new();
    let mut heap = BinaryHeap::new();
    red[s] = 0;
    heap.push(Reverse((0i64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] || d > red[u] {
            continue;
        }
        done[u] = true;
        order.push(u);
        for &(v, w) in g.out(u) {
            if skip == Some((u, v)) || done[v] {
                continue;
            }
            let nd = d + w + h[u] - h[v];
            if nd < red[v] {
                red[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    let dist = (0..n)
        .map(|v| if done[v] { ExtInt::finite(red[v] - h[s] + h[v]) } else { ExtInt::INF })
        .collect();
    (dist, order)
}

/// Exact distances from `s` with Johnson's reweighting. Each vertex's
/// parent is the smallest-id vertex settled before it with a tight edge.
pub fn sssp(g: &WeightedDigraph, s: usize) -> Result<SpTree> {
    let h = johnson_potentials(g)?;
    Ok(sssp_with_potentials(g, &h, s))
}

pub(crate) fn sssp_with_potentials(g: &WeightedDigraph, h: &[i64], s: usize) -> SpTree {
    let (dist, order) = dijkstra(g, h, s, None);
    let rev = g.reversed();
    let mut rank = vec![usize::MAX; g.n()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut parent = vec![None; g.n()];
    for &v in order.iter().skip(1) {
        parent[v] = rev
            .out(v)
            .iter()
            .find(|&&(u, w)| rank[u] < rank[v] && dist[u] + ExtInt::finite(w) == dist[v])
            .map(|&(u, _)| u);
    }
    SpTree { source: s, dist, parent }
}

/// All-pairs distances by Floyd–Warshall.
pub fn apsp_floyd_warshall(g: &WeightedDigraph) -> Vec<Vec<ExtInt>> {
    let n = g.n();
    let mut d = vec![vec![ExtInt::INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = ExtInt::ZERO;
    }
    for (u, v, w) in g.edges() {
        d[u][v] = d[u][v].min(ExtInt::finite(w));
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik.is_inf() {
                continue;
            }
            for j in 0..n {
                let c = dik + d[k][j];
                if c < d[i][j] {
                    d[i][j] = c;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: &[i64]) -> Vec<ExtInt> {
        v.iter().map(|&x| ExtInt::finite(x)).collect()
    }

    #[test]
    fn sssp_examples() {
        let g = WeightedDigraph::new(3, &[(0, 1, 1), (0, 2, 3), (1, 2, 1)], 3).unwrap();
        let t = sssp(&g, 0).unwrap();
        assert_eq!(t.dist, fin(&[0, 1, 2]));
        assert_eq!(t.parent, vec![None, Some(0), Some(1)]);

        let g = WeightedDigraph::new(1, &[], 0).unwrap();
        assert_eq!(sssp(&g, 0).unwrap().dist, fin(&[0]));

        let g = WeightedDigraph::new(4, &[(0, 1, -1), (1, 2, -1), (2, 3, -1)], 1).unwrap();
        assert_eq!(sssp(&g, 0).unwrap().dist, fin(&[0, -1, -2, -3]));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(WeightedDigraph::new(2, &[(0, 1, -1), (1, 0, 0)], 1), Err(Error::NegativeCycle)));
        assert!(WeightedDigraph::new(2, &[(0, 0, 1)], 1).is_err());
        assert!(WeightedDigraph::new(2, &[(0, 1, 1), (0, 1, 2)], 2).is_err());
        assert!(WeightedDigraph::new(2, &[(0, 1, 3)], 2).is_err());
        assert!(WeightedDigraph::new(2, &[(0, 2, 1)], 2).is_err());
    }

    #[test]
    fn zero_cycles_keep_a_tree() {
        let g = WeightedDigraph::new(3, &[(0, 1, 0), (1, 2, 0), (2, 1, 0)], 1).unwrap();
        let t = sssp(&g, 0).unwrap();
        assert_eq!(t.parent, vec![None, Some(0), Some(1)]);
        assert_eq!(t.path_to(2).unwrap(), vec![0, 1, 2]);
        assert_eq!(t.subtree(1), vec![1, 2]);
    }

    #[test]
    fn graph_file_round_trip() {
        let g = WeightedDigraph::new(3, &[(0, 1, -2), (1, 2, 4), (2, 0, 3)], 4).unwrap();
        let text = format_graph(&g);
        assert_eq!(text.lines().next().unwrap(), "GRAPH v1 3 3 4");
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(parse_graph("GRAPH v1 2 2 1\n1 2 1\n").is_err());
        assert!(parse_graph("GRAPH v2 2 0 1\n").is_err());
        assert!(parse_graph("GRAPH v1 2 1 1\n0 1 1\n").is_err());
    }
}
