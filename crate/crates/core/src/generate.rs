//! Deterministic seeded graph families.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    /// Two disjoint cycles of `n / 2` vertices each.
    TwoCycles { n: usize },
    /// Vertex 0 joined to `n - 1` leaves.
    Star { n: usize },
    /// Heap-ordered binary tree on `n` vertices (parent of `i` is `(i - 1) / 2`).
    FullBinaryTree { n: usize },
    Grid2d { rows: usize, cols: usize },
    ErdosRenyiGnm { n: usize, m: usize },
    /// A spine path with `legs` pendant leaves on every spine vertex.
    Caterpillar { spine: usize, legs: usize },
    /// Uniform random recursive tree with shuffled ids.
    RandomTree { n: usize },
    /// The inner family with its ids randomly permuted.
    Shuffled { inner: Box<Family> },
    DisjointUnion { parts: Vec<Family> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, seed }
    }
}

impl Family {
    pub fn vertex_count(&self) -> usize {
        match self {
            Family::Path { n }
            | Family::Cycle { n }
            | Family::TwoCycles { n }
            | Family::Star { n }
            | Family::FullBinaryTree { n }
            | Family::ErdosRenyiGnm { n, .. }
            | Family::RandomTree { n } => *n,
            Family::Grid2d { rows, cols } => rows * cols,
            Family::Caterpillar { spine, legs } => spine * (legs + 1),
            Family::Shuffled { inner } => inner.vertex_count(),
            Family::DisjointUnion { parts } => parts.iter().map(Family::vertex_count).sum(),
        }
    }

    /// Builds a family from a short CLI name and a vertex count.
    ///
    /// `grid` uses the squarest `rows x cols` with `rows * cols <= n`; `gnm`
    /// defaults to `m = 2n`; `caterpillar` hangs three legs on each of
    /// `n / 4` spine vertices; `union` splits `n` over a path, a cycle, a star
    /// and a random tree.
    pub fn from_name(name: &str, n: usize, m: Option<usize>) -> Result<Family> {
        let f = match name {
            "path" => Family::Path { n },
            "cycle" => Family::Cycle { n },
            "two_cycles" => Family::TwoCycles { n },
            "star" => Family::Star { n },
            "binary_tree" | "full_binary_tree" => Family::FullBinaryTree { n },
            "grid" | "grid_2d" => {
                let rows = ((n as f64).sqrt().floor() as usize).max(1);
                Family::Grid2d { rows, cols: n / rows }
            }
            "gnm" | "erdos_renyi_gnm" => Family::ErdosRenyiGnm { n, m: m.unwrap_or(2 * n) },
            "caterpillar" => Family::Caterpillar { spine: n / 4, legs: 3 },
            "random_tree" => Family::RandomTree { n },
            "union" | "disjoint_union" => {
                let q = n / 4;
                Family::DisjointUnion {
                    parts: vec![
                        Family::Path { n: q },
                        Family::Cycle { n: q },
                        Family::Star { n: q },
                        Family::RandomTree { n: n - 3 * q },
                    ],
                }
            }
            other => return Err(invalid(format!("unknown family {other:?}"))),
        };
        Ok(f)
    }

    /// Short human-readable name, e.g. `path(1024)`.
    pub fn label(&self) -> String {
        match self {
            Family::Path { n } => format!("path({n})"),
            Family::Cycle { n } => format!("cycle({n})"),
            Family::TwoCycles { n } => format!("two_cycles({n})"),
            Family::Star { n } => format!("star({n})"),
            Family::FullBinaryTree { n } => format!("full_binary_tree({n})"),
            Family::Grid2d { rows, cols } => format!("grid_2d({rows}x{cols})"),
            Family::ErdosRenyiGnm { n, m } => format!("gnm({n},{m})"),
            Family::Caterpillar { spine, legs } => format!("caterpillar({spine},{legs})"),
            Family::RandomTree { n } => format!("random_tree({n})"),
            Family::Shuffled { inner } => format!("shuffled({})", inner.label()),
            Family::DisjointUnion { parts } => {
                let inner: Vec<String> = parts.iter().map(Family::label).collect();
                format!("union({})", inner.join("+"))
            }
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(invalid(format!("{name} must be positive")));
    }
    Ok(())
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    let mut edges = Vec::new();
    build(&spec.family, spec.seed, 0, &mut edges)?;
    Ok(Graph::from_edges(spec.family.vertex_count(), edges))
}

fn build(family: &Family, seed: u64, offset: VertexId, out: &mut Vec<(VertexId, VertexId)>) -> Result<()> {
    let o = offset;
    match *family {
        Family::Path { n } => {
            positive("path n", n)?;
            out.extend((1..n as VertexId).map(|i| (o + i - 1, o + i)));
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            cycle(o, n, out);
        }
        Family::TwoCycles { n } => {
            if n % 2 != 0 || n < 6 {
                return Err(invalid(format!("two_cycles needs an even n >= 6, got {n}")));
            }
            cycle(o, n / 2, out);
            cycle(o + (n / 2) as VertexId, n / 2, out);
        }
        Family::Star { n } => {
            positive("star n", n)?;
            out.extend((1..n as VertexId).map(|i| (o, o + i)));
        }
        Family::FullBinaryTree { n } => {
            positive("tree n", n)?;
            out.extend((1..n as VertexId).map(|i| (o + (i - 1) / 2, o + i)));
        }
        Family::Grid2d { rows, cols } => {
            positive("grid rows", rows)?;
            positive("grid cols", cols)?;
            let id = |r: usize, c: usize| o + (r * cols + c) as VertexId;
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        out.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        out.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
        }
        Family::ErdosRenyiGnm { n, m } => {
            positive("gnm n", n)?;
            let max = n * (n - 1) / 2;
            if m > max {
                return Err(invalid(format!("gnm: m = {m} exceeds {max} possible edges")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if m * 2 > max {
                // dense: shuffle the full pair list
                let mut all: Vec<(VertexId, VertexId)> = (0..n as VertexId)
                    .flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)))
                    .collect();
                all.shuffle(&mut rng);
                out.extend(all.into_iter().take(m).map(|(u, v)| (o + u, o + v)));
            } else {
                let mut seen = HashSet::with_capacity(m);
                let mut picked = Vec::with_capacity(m);
                while picked.len() < m {
                    let u = rng.gen_range(0..n as VertexId);
                    let v = rng.gen_range(0..n as VertexId);
                    if u == v {
                        continue;
                    }
                    let e = (u.min(v), u.max(v));
                    if seen.insert(e) {
                        picked.push(e);
                    }
                }
                out.extend(picked.into_iter().map(|(u, v)| (o + u, o + v)));
            }
        }
        Family::Caterpillar { spine, legs } => {
            positive("caterpillar spine", spine)?;
            out.extend((1..spine as VertexId).map(|i| (o + i - 1, o + i)));
            let mut next = spine as VertexId;
            for s in 0..spine as VertexId {
                for _ in 0..legs {
                    out.push((o + s, o + next));
                    next += 1;
                }
            }
        }
        Family::RandomTree { n } => {
            positive("random_tree n", n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
            ids.shuffle(&mut rng);
            for i in 1..n {
                let parent = rng.gen_range(0..i);
                out.push((o + ids[parent], o + ids[i]));
            }
        }
        Family::Shuffled { ref inner } => {
            let n = inner.vertex_count();
            let mut local = Vec::new();
            build(inner, seed.wrapping_add(1), 0, &mut local)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<VertexId> = (0..n as VertexId).collect();
            perm.shuffle(&mut rng);
            out.extend(
                local
                    .into_iter()
                    .map(|(u, v)| (o + perm[u as usize], o + perm[v as usize])),
            );
        }
        Family::DisjointUnion { ref parts } => {
            if parts.is_empty() {
                return Err(invalid("disjoint_union needs at least one part"));
            }
            let mut base = o;
            for (i, part) in parts.iter().enumerate() {
                let part_seed = seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                build(part, part_seed, base, out)?;
                base += part.vertex_count() as VertexId;
            }
        }
    }
    Ok(())
}

fn cycle(o: VertexId, n: usize, out: &mut Vec<(VertexId, VertexId)>) {
    let n = n as VertexId;
    out.extend((0..n).map(|i| (o + i, o + (i + 1) % n)));
}
