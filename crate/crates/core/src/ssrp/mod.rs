//! Single-source replacement paths.
//!
//! `d(s, v, e)` is the distance from `s` to `v` once edge `e` is removed.
//! Besides the per-edge baseline this module holds the subpath solver,
//! which routes hop-long departing paths through one monotone min-plus
//! product, and the two gadgets reducing bounded-difference min-plus
//! product to SSRP with weights in `{−1, 0, 1}`.

mod baseline;
mod graph;
mod reduction;
mod subpath;

pub use baseline::{hop_limited_distances, ssrp_baseline, st_replacement_baseline, SsrpTable};
pub use graph::{
    apsp_floyd_warshall, bellman_ford, format_graph, johnson_potentials, parse_graph, read_graph, sssp, SpTree,
    WeightedDigraph,
};
pub use reduction::{
    bdmp_via_ssrp, ham_apsp_via_ssrp, pad_bounded_difference, reduce_bdmp_to_hamapsp, reduce_hamapsp_to_ssrp,
    verify_hamiltonian, BdmpGadget, HamSsrpGadget, PipelineStats,
};
pub use subpath::{subpath_solve, HopLongMode, SubpathConfig, SubpathInstance, SubpathReport, SubpathResult};
