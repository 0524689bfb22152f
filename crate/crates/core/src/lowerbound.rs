//! Edge-sampling reduction on disjoint cycles.
//!
//! Each outer iteration deletes every edge with probability `2 ln(n0) / D'`,
//! labels the components of what is left (short paths, w.h.p. of diameter at
//! most `D'`), contracts them, and carries only the deleted edges forward.
//! The loop ends when the edge list fits in one machine.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracle::{self, ComponentLabeling, DisjointSets};

const LOWERBOUND_STREAM: u64 = 1 << 62;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReductionIteration {
    pub iteration: usize,
    pub vertices_before: usize,
    pub edges_before: usize,
    /// Edges kept in the sampled graph.
    pub kept_edges: usize,
    pub deleted_edges: usize,
    /// Largest component diameter of the sampled graph.
    pub max_diameter: u32,
    pub vertices_after: usize,
    /// Edge count carried into the next iteration.
    pub edges_after: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReductionStats {
    pub n: usize,
    pub d_prime: usize,
    pub seed: u64,
    pub machine_space: usize,
    pub outer_iterations: usize,
    pub iterations: Vec<ReductionIteration>,
    pub final_components: usize,
}

impl ReductionStats {
    /// Fraction of iterations whose sampled graph had diameter at most `D'`.
    pub fn diameter_ok_fraction(&self) -> f64 {
        if self.iterations.is_empty() {
            return 1.0;
        }
        let ok = self
            .iterations
            .iter()
            .filter(|it| it.max_diameter as usize <= self.d_prime)
            .count();
        ok as f64 / self.iterations.len() as f64
    }
}

/// `2 * ceil(ln n / ln(D' / (4 ln n)))`; `None` when `D' <= 4 ln n`.
pub fn iteration_bound(n: usize, d_prime: usize) -> Option<usize> {
    let ln = (n as f64).ln();
    let base = d_prime as f64 / (4.0 * ln);
    if base <= 1.0 {
        return None;
    }
    Some(2 * (ln / base.ln()).ceil() as usize)
}

/// Checks that every live vertex has degree exactly 2.
pub fn check_disjoint_cycles(g: &Graph) -> Result<()> {
    match g.live_vertices().find(|&v| g.degree(v) != 2) {
        Some(v) => Err(Error::InvalidInput(format!(
            "not a disjoint union of cycles: vertex {v} has degree {}",
            g.degree(v)
        ))),
        None => Ok(()),
    }
}

/// Labels components with a union-find pass.
pub fn union_find_solver(g: &Graph) -> Result<ComponentLabeling> {
    Ok(oracle::oracle_components(g))
}

pub fn cycle_reduction<S>(
    g: &Graph,
    d_prime: usize,
    seed: u64,
    machine_space: usize,
    mut solver: S,
) -> Result<ReductionStats>
where
    S: FnMut(&Graph) -> Result<ComponentLabeling>,
{
    if d_prime < 2 {
        return Err(Error::InvalidParams("D' must be at least 2".into()));
    }
    check_disjoint_cycles(g)?;
    let n0 = g.live_count();
    let p_delete = (2.0 * (n0.max(2) as f64).ln() / d_prime as f64).min(1.0);

    // compact ids; self-loops and parallel edges are kept from here on
    let mut index = vec![VertexId::MAX; g.n()];
    for (i, v) in g.live_vertices().enumerate() {
        index[v as usize] = i as VertexId;
    }
    let mut vertices = n0;
    let mut edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .map(|(u, v)| (index[u as usize], index[v as usize]))
        .collect();

    let mut stats = ReductionStats {
        n: n0,
        d_prime,
        seed,
        machine_space,
        ..Default::default()
    };
    while edges.len() > machine_space {
        let iteration = stats.iterations.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(LOWERBOUND_STREAM | iteration as u64);
        let (deleted, kept): (Vec<_>, Vec<_>) = edges.iter().copied().partition(|_| rng.gen::<f64>() < p_delete);

        let sampled = Graph::from_edges(vertices, kept.iter().copied());
        let max_diameter = oracle::exact_diameter(&sampled).into_iter().max().unwrap_or(0);
        let labels = solver(&sampled)?;
        if !labels.same_partition(&oracle::oracle_components(&sampled)) {
            return Err(Error::VerificationMismatch);
        }
        let labels = labels.canonical();

        let mut compact = vec![VertexId::MAX; vertices];
        let mut next_vertices = 0;
        for v in 0..vertices {
            let rep = labels.label[v] as usize;
            if compact[rep] == VertexId::MAX {
                compact[rep] = next_vertices;
                next_vertices += 1;
            }
            compact[v] = compact[rep];
        }
        let carried: Vec<(VertexId, VertexId)> = deleted
            .iter()
            .map(|&(u, v)| (compact[u as usize], compact[v as usize]))
            .collect();
        stats.iterations.push(ReductionIteration {
            iteration,
            vertices_before: vertices,
            edges_before: edges.len(),
            kept_edges: kept.len(),
            deleted_edges: deleted.len(),
            max_diameter,
            vertices_after: next_vertices as usize,
            edges_after: carried.len(),
        });
        vertices = next_vertices as usize;
        edges = carried;
    }

    let mut dsu = DisjointSets::new(vertices);
    let mut components = vertices;
    for &(u, v) in &edges {
        if dsu.union(u, v) {
            components -= 1;
        }
    }
    stats.outer_iterations = stats.iterations.len();
    stats.final_components = components;
    Ok(stats)
}
