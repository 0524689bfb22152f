#![allow(dead_code)]

use std::collections::BTreeSet;

use mpcc::{Engine, Graph, VertexId};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as VertexId).map(|v| (v - 1, v)))
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as VertexId).map(|v| (0, v)))
}

pub fn complete(n: usize) -> Graph {
    let n = n as VertexId;
    Graph::from_edges(n as usize, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Circulant graph on `n` vertices joining `i` to `i +- s` for each step `s`.
pub fn circulant(n: usize, steps: &[usize]) -> Graph {
    let edges = (0..n).flat_map(|i| steps.iter().map(move |&s| (i as VertexId, ((i + s) % n) as VertexId)));
    Graph::from_edges(n, edges)
}

/// Edges each active vertex should initiate in one 2-hop step, recomputed
/// from scratch by a two-step breadth-first walk.
pub fn replay_two_hops(e: &mut Engine) -> Vec<(VertexId, Vec<VertexId>, i64)> {
    let live: Vec<VertexId> = e.graph().live_vertices().collect();
    let mut out = Vec::new();
    for &v in &live {
        if !e.is_active(v) {
            continue;
        }
        let lv = e.level(v);
        let g = e.graph();
        let nbrs: BTreeSet<VertexId> = g.neighbors(v).iter().copied().collect();
        let mut h = BTreeSet::new();
        for &w in &nbrs {
            if e.level(w) != lv {
                continue;
            }
            for &u in g.neighbors(w) {
                if e.level(u) == lv && u != v && !nbrs.contains(&u) {
                    h.insert(u);
                }
            }
        }
        let d = nbrs.iter().filter(|&&u| e.level(u) >= lv).count() as i64;
        let quota = e.budget(v).floor() as i64 - d;
        let take = quota.max(0) as usize;
        let chosen: Vec<VertexId> = h.into_iter().take(take).collect();
        out.push((v, chosen, quota));
    }
    out
}

pub fn edge_set(g: &Graph) -> BTreeSet<(VertexId, VertexId)> {
    g.edges().collect()
}

/// Checks that the member sets of live vertices partition `0..n` and agree with `owner`.
pub fn assert_member_partition(e: &Engine, n: usize) {
    let mut seen = vec![false; n];
    for v in e.graph().live_vertices() {
        for &u in e.members(v) {
            assert!(!seen[u as usize], "original {u} appears twice");
            seen[u as usize] = true;
            assert_eq!(e.owner(u), v, "owner of {u}");
        }
    }
    assert!(seen.iter().all(|&s| s), "member sets do not cover every original vertex");
}
