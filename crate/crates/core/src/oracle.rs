//! Sequential reference computations used to check the parallel algorithms.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};

/// A map from vertex id to the representative of its component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLabeling {
    pub label: Vec<VertexId>,
}

impl ComponentLabeling {
    pub fn identity(n: usize) -> Self {
        ComponentLabeling {
            label: (0..n as VertexId).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    /// Relabels every class by its minimum member.
    pub fn canonical(&self) -> ComponentLabeling {
        let n = self.label.len();
        let mut min_of = vec![VertexId::MAX; n];
        for (v, &l) in self.label.iter().enumerate() {
            let slot = &mut min_of[l as usize];
            *slot = (*slot).min(v as VertexId);
        }
        ComponentLabeling {
            label: self.label.iter().map(|&l| min_of[l as usize]).collect(),
        }
    }

    /// True if both labelings induce the same partition.
    pub fn same_partition(&self, other: &ComponentLabeling) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    pub fn class_count(&self) -> usize {
        let c = self.canonical();
        c.label
            .iter()
            .enumerate()
            .filter(|&(v, &l)| v as VertexId == l)
            .count()
    }

    /// Writes `"v label"` lines.
    pub fn write_lines<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for (v, l) in self.label.iter().enumerate() {
            writeln!(out, "{v} {l}")?;
        }
        Ok(())
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<VertexId>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as VertexId).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: VertexId) -> VertexId {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Components by one union-find pass; representatives are minimum ids.
/// Tombstoned vertices label themselves.
pub fn oracle_components(g: &Graph) -> ComponentLabeling {
    let mut dsu = DisjointSets::new(g.n());
    for (u, v) in g.edges() {
        dsu.union(u, v);
    }
    let raw = ComponentLabeling {
        label: (0..g.n() as VertexId).map(|v| dsu.find(v)).collect(),
    };
    raw.canonical()
}

/// Components by BFS flood fill, independent of the union-find path.
pub fn flood_fill_components(g: &Graph) -> ComponentLabeling {
    let n = g.n();
    let mut label = vec![VertexId::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n as VertexId {
        if label[s as usize] != VertexId::MAX {
            continue;
        }
        label[s as usize] = s;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if label[y as usize] == VertexId::MAX {
                    label[y as usize] = s;
                    queue.push_back(y);
                }
            }
        }
    }
    ComponentLabeling { label }
}

/// Live vertices grouped by component, each group sorted, groups ordered by minimum id.
pub fn component_groups(g: &Graph) -> Vec<Vec<VertexId>> {
    let labels = oracle_components(g);
    let mut index = vec![usize::MAX; g.n()];
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    for v in g.live_vertices() {
        let rep = labels.label[v as usize] as usize;
        if index[rep] == usize::MAX {
            index[rep] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[rep]].push(v);
    }
    groups
}

/// Hop distances from `source`; `u32::MAX` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    bfs_into(g, source, &mut dist, &mut VecDeque::new());
    dist
}

fn bfs_into(g: &Graph, source: VertexId, dist: &mut [u32], queue: &mut VecDeque<VertexId>) -> u32 {
    dist[source as usize] = 0;
    queue.clear();
    queue.push_back(source);
    let mut ecc = 0;
    while let Some(x) = queue.pop_front() {
        let dx = dist[x as usize];
        ecc = ecc.max(dx);
        for &y in g.neighbors(x) {
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = dx + 1;
                queue.push_back(y);
            }
        }
    }
    ecc
}

/// Per-component diameters by BFS from every vertex. Quadratic; oracle use only.
pub fn all_pairs_diameters(g: &Graph) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::new();
    component_groups(g)
        .iter()
        .map(|group| {
            let mut best = 0;
            for &s in group {
                for &v in group {
                    dist[v as usize] = u32::MAX;
                }
                best = best.max(bfs_into(g, s, &mut dist, &mut queue));
            }
            best
        })
        .collect()
}

/// Exact per-component hop diameters, ordered like [`component_groups`].
///
/// Uses eccentricity bounds: every BFS tightens `[lo, hi]` for all vertices
/// of the component, and a vertex is dropped once its upper bound cannot
/// beat the best eccentricity seen. Always exact; usually needs only a
/// handful of BFS runs.
pub fn exact_diameter(g: &Graph) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::new();
    let mut lo = vec![0u32; g.n()];
    let mut hi = vec![u32::MAX; g.n()];
    let mut out = Vec::new();
    for group in component_groups(g) {
        let mut candidates = group.clone();
        let mut best = 0u32;
        let mut pick_high = true;
        while !candidates.is_empty() {
            // alternate between the largest upper bound and the smallest lower bound
            let s = if pick_high {
                *candidates
                    .iter()
                    .max_by_key(|&&v| (hi[v as usize], std::cmp::Reverse(v)))
                    .unwrap()
            } else {
                *candidates
                    .iter()
                    .min_by_key(|&&v| (lo[v as usize], v))
                    .unwrap()
            };
            pick_high = !pick_high;
            for &v in &group {
                dist[v as usize] = u32::MAX;
            }
            let ecc = bfs_into(g, s, &mut dist, &mut queue);
            best = best.max(ecc);
            for &v in &group {
                let d = dist[v as usize];
                lo[v as usize] = lo[v as usize].max(d.max(ecc - d));
                hi[v as usize] = hi[v as usize].min(ecc + d);
            }
            candidates.retain(|&v| v != s && hi[v as usize] > best);
        }
        out.push(best);
    }
    out
}

/// Double-sweep lower bound on each component's diameter (exact on trees).
pub fn double_sweep_estimate(g: &Graph) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::new();
    component_groups(g)
        .iter()
        .map(|group| {
            bfs_into(g, group[0], &mut dist, &mut queue);
            let far = *group
                .iter()
                .max_by_key(|&&v| (dist[v as usize], std::cmp::Reverse(v)))
                .unwrap();
            for &v in group {
                dist[v as usize] = u32::MAX;
            }
            let ecc = bfs_into(g, far, &mut dist, &mut queue);
            for &v in group {
                dist[v as usize] = u32::MAX;
            }
            ecc
        })
        .collect()
}

/// True iff every live vertex is adjacent to every other vertex of its component.
pub fn is_clique_partition(g: &Graph) -> bool {
    let labels = oracle_components(g);
    let mut size = vec![0usize; g.n()];
    for v in g.live_vertices() {
        size[labels.label[v as usize] as usize] += 1;
    }
    g.live_vertices()
        .all(|v| g.degree(v) + 1 == size[labels.label[v as usize] as usize])
}
