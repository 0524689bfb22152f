//! Vertex shrinking by min-id hooking and isolated-arc merging.
//!
//! One round:
//!
//! 1. every vertex points at its smallest neighbor;
//! 2. of each 2-cycle only the arc with the smaller source survives;
//! 3. a vertex with two or more incoming arcs drops its outgoing arc;
//! 4. such a vertex absorbs everything pointing at it, and arcs into the
//!    absorbed vertices are discarded;
//! 5. every remaining arc survives with probability 1/3;
//! 6. each isolated surviving arc is contracted into its head.
//!
//! Components are preserved exactly and the edge count never grows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::mpc::{bundles, CostLedger, MpcConfig};

const NONE: VertexId = VertexId::MAX;

/// Keeps the shrink coins apart from the other random streams under one seed.
const SHRINK_STREAM: u64 = 1 << 63;

/// Composed map from original ids to current ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkMapping {
    pub map: Vec<VertexId>,
}

impl ShrinkMapping {
    pub fn identity(n: usize) -> Self {
        ShrinkMapping {
            map: (0..n as VertexId).collect(),
        }
    }

    pub fn get(&self, u: VertexId) -> VertexId {
        self.map[u as usize]
    }

    /// Follows this mapping with one more round's merge map.
    pub fn compose(&mut self, round: &[VertexId]) {
        for m in &mut self.map {
            *m = round[*m as usize];
        }
    }

    /// Writes `"orig current"` lines.
    pub fn write_lines<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, c) in self.map.iter().enumerate() {
            writeln!(out, "{u} {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkRow {
    pub round: usize,
    /// Non-isolated live vertices before and after.
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    /// Vertices merged by absorption and by isolated arcs.
    pub absorbed: usize,
    pub arc_merges: usize,
}

/// Output of one round. `merge[v]` is where `v` went (itself if it stayed).
#[derive(Debug, Clone)]
pub struct RoundOutcome {
    pub graph: Graph,
    pub merge: Vec<VertexId>,
    pub row: ShrinkRow,
}

/// Live vertices with at least one edge.
pub fn non_isolated_count(g: &Graph) -> usize {
    g.live_vertices().filter(|&v| g.degree(v) > 0).count()
}

/// The survival coin for the arc leaving `source`: kept with probability 1/3.
pub fn arc_coin(seed: u64, round: u64) -> impl FnMut(VertexId) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(SHRINK_STREAM | round);
    move |source| {
        rng.set_word_pos(2 * source as u128);
        rng.gen::<f64>() < 1.0 / 3.0
    }
}

pub fn shrink_round(g: Graph, seed: u64, round: u64) -> RoundOutcome {
    shrink_round_with(g, round, arc_coin(seed, round))
}

/// One round with an explicit survival coin (called with each arc's source).
pub fn shrink_round_with<F>(mut g: Graph, round: u64, mut keep: F) -> RoundOutcome
where
    F: FnMut(VertexId) -> bool,
{
    let n = g.n();
    let vertices_before = non_isolated_count(&g);
    let edges_before = g.edge_count();

    let mut out = vec![NONE; n];
    for v in g.live_vertices() {
        if let Some(&u) = g.neighbors(v).first() {
            out[v as usize] = u;
        }
    }
    for v in 0..n {
        let u = out[v];
        if u != NONE && out[u as usize] == v as VertexId && (v as VertexId) > u {
            out[v] = NONE;
        }
    }

    let indegree = |out: &[VertexId]| {
        let mut d = vec![0u32; n];
        for &u in out {
            if u != NONE {
                d[u as usize] += 1;
            }
        }
        d
    };
    let mut indeg = indegree(&out);
    loop {
        let mut changed = false;
        for v in 0..n {
            if indeg[v] >= 2 && out[v] != NONE {
                out[v] = NONE;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        indeg = indegree(&out);
    }

    let mut merge: Vec<VertexId> = (0..n as VertexId).collect();
    let mut absorbed = 0;
    for v in 0..n {
        let u = out[v];
        if u != NONE && indeg[u as usize] >= 2 {
            merge[v] = u;
            absorbed += 1;
        }
    }
    for v in 0..n {
        let u = out[v];
        if u == NONE {
            continue;
        }
        // arcs that were absorbed, or that point into an absorbed vertex or an absorber
        if merge[v] != v as VertexId || merge[u as usize] != u || indeg[u as usize] >= 2 {
            out[v] = NONE;
        }
    }

    for v in 0..n {
        if out[v] != NONE && !keep(v as VertexId) {
            out[v] = NONE;
        }
    }
    let indeg = indegree(&out);
    let mut arc_merges = 0;
    for v in 0..n {
        let u = out[v];
        if u != NONE && indeg[v] == 0 && indeg[u as usize] == 1 && out[u as usize] == NONE {
            merge[v] = u;
            arc_merges += 1;
        }
    }

    if absorbed + arc_merges > 0 {
        g.redirect(&merge);
        for v in 0..n {
            if merge[v] != v as VertexId {
                g.remove_vertex(v as VertexId);
            }
        }
    }
    let row = ShrinkRow {
        round: round as usize,
        vertices_before,
        vertices_after: non_isolated_count(&g),
        edges_before,
        edges_after: g.edge_count(),
        absorbed,
        arc_merges,
    };
    RoundOutcome { graph: g, merge, row }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkParams {
    /// Stop once at most this many non-isolated vertices remain.
    pub target: usize,
    pub seed: u64,
    pub max_rounds: usize,
    /// Consecutive rounds without any merge before giving up.
    pub stall_limit: usize,
}

impl ShrinkParams {
    pub fn new(target: usize, seed: u64) -> Self {
        ShrinkParams {
            target,
            seed,
            max_rounds: 100_000,
            stall_limit: 100,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhaseOutcome {
    pub graph: Graph,
    pub mapping: ShrinkMapping,
    pub rounds: usize,
    pub trace: Vec<ShrinkRow>,
}

/// Repeats rounds until the non-isolated vertex count reaches the target.
/// Vertices left isolated stay alive; callers label and drop them.
pub fn shrink_phase(
    g: Graph,
    params: &ShrinkParams,
    config: &MpcConfig,
    ledger: &mut CostLedger,
) -> Result<PhaseOutcome> {
    if params.target == 0 {
        return Err(Error::InvalidParams("shrink target must be at least 1".into()));
    }
    let mut mapping = ShrinkMapping::identity(g.n());
    let mut graph = g;
    let mut trace = Vec::new();
    let mut stalled = 0;
    let mut round = 0;
    while non_isolated_count(&graph) > params.target {
        if round >= params.max_rounds {
            return Err(Error::TerminationOverflow {
                max_iterations: params.max_rounds,
            });
        }
        ledger.charge_bundle(config, bundles::SHRINK_ROUND, 2 * graph.edge_count())?;
        let outcome = shrink_round(graph, params.seed, round as u64);
        mapping.compose(&outcome.merge);
        graph = outcome.graph;
        if outcome.row.vertices_after == outcome.row.vertices_before {
            stalled += 1;
            if stalled >= params.stall_limit {
                return Err(Error::NoProgress {
                    rounds: stalled,
                    vertices: outcome.row.vertices_after,
                });
            }
        } else {
            stalled = 0;
        }
        trace.push(outcome.row);
        round += 1;
    }
    Ok(PhaseOutcome {
        graph,
        mapping,
        rounds: round,
        trace,
    })
}
