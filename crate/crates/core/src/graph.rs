//! Undirected simple graph over stable integer vertex ids.
//!
//! Vertices are never renumbered. A vertex that is contracted away or
//! dropped is tombstoned (`alive[v] == false`) and keeps its id, so original
//! ids stay meaningful across every phase of the pipeline.

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    alive: Vec<bool>,
    adj: Vec<Vec<VertexId>>,
    edges: usize,
}

impl Graph {
    /// `n` live, isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            alive: vec![true; n],
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a normalized graph; self-loops and duplicates are dropped.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::empty(n);
        g.add_edges(edges);
        g
    }

    /// Size of the id space, including tombstoned ids.
    pub fn n(&self) -> usize {
        self.alive.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn live_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive[v as usize]
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(v, _)| v as VertexId)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as VertexId;
            nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// Adds a batch of edges and renormalizes the touched adjacency lists.
    ///
    /// Both endpoints of every edge must be live.
    pub fn add_edges<I>(&mut self, edges: I) -> usize
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut dirty = vec![false; self.n()];
        let mut touched: Vec<VertexId> = Vec::new();
        let mut old = 0;
        for (u, v) in edges {
            if u == v {
                continue;
            }
            assert!(
                self.alive[u as usize] && self.alive[v as usize],
                "edge {u}-{v} touches a dead vertex"
            );
            for (a, b) in [(u, v), (v, u)] {
                let list = &mut self.adj[a as usize];
                if !dirty[a as usize] {
                    dirty[a as usize] = true;
                    touched.push(a);
                    old += list.len();
                }
                list.push(b);
            }
        }
        let mut new = 0;
        for &t in &touched {
            let list = &mut self.adj[t as usize];
            list.sort_unstable();
            list.dedup();
            new += list.len();
        }
        let added = (new - old) / 2;
        self.edges += added;
        added
    }

    /// Replaces every edge `{u, v}` by `{target[u], target[v]}` and renormalizes.
    ///
    /// Vertices are not tombstoned here; a vertex mapped elsewhere simply
    /// ends up with no incident edges unless something maps onto it.
    pub fn redirect(&mut self, target: &[VertexId]) {
        debug_assert_eq!(target.len(), self.n());
        let old = std::mem::replace(&mut self.adj, vec![Vec::new(); target.len()]);
        for (u, list) in old.into_iter().enumerate() {
            let a = target[u];
            if a as usize == u {
                // keep the allocation when the vertex stays put
                let mut list = list;
                for x in list.iter_mut() {
                    *x = target[*x as usize];
                }
                list.retain(|&b| b != a);
                let slot = &mut self.adj[u];
                if slot.is_empty() {
                    *slot = list;
                } else {
                    slot.extend(list);
                }
            } else {
                let slot = &mut self.adj[a as usize];
                slot.extend(list.into_iter().map(|x| target[x as usize]).filter(|&b| b != a));
            }
        }
        let mut total = 0;
        for (a, list) in self.adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            debug_assert!(list.is_empty() || self.alive[a]);
            total += list.len();
        }
        self.edges = total / 2;
    }

    /// Tombstones an isolated vertex.
    ///
    /// Panics if `v` still has incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) {
        assert!(
            self.adj[v as usize].is_empty(),
            "removing vertex {v} with live edges"
        );
        self.alive[v as usize] = false;
    }

    /// Normalizes in place. A no-op on any graph built through this API.
    pub fn normalize(&mut self) {
        let mut total = 0;
        for (u, list) in self.adj.iter_mut().enumerate() {
            list.retain(|&v| v as usize != u);
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        self.edges = total / 2;
    }
}
