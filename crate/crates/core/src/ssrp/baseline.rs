use std::fmt::Write as _;

use super::graph::{dijkstra, johnson_potentials, sssp_with_potentials, SpTree, WeightedDigraph};
use crate::error::{Error, Result};
use crate::matrix::ExtInt;

/// `d(s, v, e)` for every tree edge `e` and vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsrpTable {
    pub tree: SpTree,
    /// Tree edges, ordered by child vertex.
    pub edges: Vec<(usize, usize)>,
    /// `dist[e][v]`.
    pub dist: Vec<Vec<ExtInt>>,
}

impl SsrpTable {
    pub fn edge_index(&self, e: (usize, usize)) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }

    pub fn get(&self, e: (usize, usize), v: usize) -> Option<ExtInt> {
        self.edge_index(e).map(|i| self.dist[i][v])
    }

    /// Lines `e_u e_v vertex dist|INF`, 1-based.
    pub fn format(&self) -> String {
        let mut s = String::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            for (x, d) in self.dist[i].iter().enumerate() {
                writeln!(s, "{} {} {} {d}", u + 1, v + 1, x + 1).unwrap();
            }
        }
        s
    }
}

/// One Dijkstra per tree edge over `G − e`, reusing one set of potentials.
pub fn ssrp_baseline(g: &WeightedDigraph, s: usize) -> Result<SsrpTable> {
    check_vertex(g, s)?;
    let h = johnson_potentials(g)?;
    let tree = sssp_with_potentials(g, &h, s);
    let edges = tree.edges();
    let dist = edges.iter().map(|&e| dijkstra(g, &h, s, Some(e)).0).collect();
    Ok(SsrpTable { tree, edges, dist })
}

/// `d(s, t, e)` for each edge `e` of `path` (vertices from `s` to `t`).
pub fn st_replacement_baseline(g: &WeightedDigraph, s: usize, t: usize, path: &[usize]) -> Result<Vec<ExtInt>> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    if path.first() != Some(&s) || path.last() != Some(&t) {
        return Err(Error::InvalidGraph("path must run from s to t".into()));
    }
    for p in path.windows(2) {
        if g.weight(p[0], p[1]).is_none() {
            return Err(Error::InvalidGraph(format!("path edge ({}, {}) missing", p[0] + 1, p[1] + 1)));
        }
    }
    let h = johnson_potentials(g)?;
    Ok(path.windows(2).map(|p| dijkstra(g, &h, s, Some((p[0], p[1]))).0[t]).collect())
}

/// Minimum weight over walks of at most `h` edges from each source.
pub fn hop_limited_distances(g: &WeightedDigraph, sources: &[usize], h: usize) -> Vec<Vec<ExtInt>> {
    sources
        .iter()
        .map(|&s| {
            let mut d = vec![ExtInt::INF; g.n()];
            d[s] = ExtInt::ZERO;
            for _ in 0..h {
                let mut next = d.clone();
                let mut changed = false;
                for (u, adj) in (0..g.n()).map(|u| (u, g.out(u))) {
                    if d[u].is_inf() {
                        continue;
                    }
                    for &(v, w) in adj {
                        let c = d[u] + ExtInt::finite(w);
                        if c < next[v] {
                            next[v] = c;
                            changed = true;
                        }
                    }
                }
                d = next;
                if !changed {
                    break;
                }
            }
            d
        })
        .collect()
}

pub(crate) fn check_vertex(g: &WeightedDigraph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(Error::OutOfBounds(format!("vertex {} of {}", v + 1, g.n())));
    }
    Ok(())
}
