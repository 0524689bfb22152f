//! Budgeted graph exponentiation with leader contraction.
//!
//! Every live vertex carries a level and a budget `beta0^(1.25^level)`.
//! One iteration runs three steps:
//!
//! 1. [`Engine::connect_two_hops`]: each active vertex links to same-level
//!    vertices two hops away, up to its remaining budget.
//! 2. [`Engine::relabel_inter_level`]: every vertex that sees a strictly
//!    higher level next to it is redirected to its highest-level neighbor and
//!    goes inactive. Chains of redirections advance one hop per iteration.
//! 3. [`Engine::relabel_intra_level`]: vertices whose same-level active
//!    neighborhood fills their budget are saturated; saturated vertices sample
//!    leaders, leaders level up, the rest contract into a leader within two hops.
//!
//! The loop stops once every component is a clique. `C(v)` (the set of
//! original vertices that `v` stands for) is kept as `members[v]` and the
//! sets partition the original live vertex set at every iteration boundary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::mpc::{bundles, CostLedger, MpcConfig};
use crate::oracle::{self, ComponentLabeling};

/// Budget growth on every level increase.
pub const GROWTH_EXPONENT: f64 = 1.25;

/// Default polylog exponent in `T = m + n * lg(n)^alpha`.
pub const DEFAULT_ALPHA: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoParams {
    /// Total space `T` in words.
    pub total_space: f64,
    pub growth_exponent: f64,
    /// Numerator coefficient of the leader probability `coeff * ln(n0) / b`.
    pub leader_coeff: f64,
    /// Vertices whose budget reaches this value are never saturated. Defaults to `n0`.
    pub budget_cap: Option<f64>,
    pub seed: u64,
    /// Defaults to `20 * (lg n0 + 2)^2`.
    pub max_iterations: Option<usize>,
    pub strict_audits: bool,
    pub delta: f64,
    /// Audit multiplier on `T` for potential space.
    pub space_constant: f64,
}

impl AlgoParams {
    pub fn new(total_space: f64, seed: u64) -> Self {
        AlgoParams {
            total_space,
            growth_exponent: GROWTH_EXPONENT,
            leader_coeff: 3.0,
            budget_cap: None,
            seed,
            max_iterations: None,
            strict_audits: false,
            delta: 0.5,
            space_constant: 4.0,
        }
    }

    /// `T = m + n * lg(n)^alpha` over the live vertices of `g`.
    pub fn polylog_space(g: &Graph, alpha: f64, seed: u64) -> Self {
        Self::new(polylog_total_space(g.edge_count(), g.live_count(), alpha), seed)
    }
}

pub fn polylog_total_space(m: usize, n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    let lg = if n > 1.0 { n.log2() } else { 0.0 };
    m as f64 + n * lg.powf(alpha)
}

/// How saturated vertices pick leaders. Anything but `Random` is a test hook.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeaderRule {
    Random,
    Always,
    Never,
    /// Exactly these vertices lead whenever they are saturated.
    Only(Vec<VertexId>),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IterationRow {
    pub iteration: usize,
    pub live_vertices: usize,
    pub edges: usize,
    pub potential_space: f64,
    pub budget_square_sum: f64,
    pub max_level: u32,
    pub inactive: usize,
    pub relabeled: usize,
    pub saturated: usize,
    pub leaders: usize,
    pub contracted: usize,
    pub edges_added: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntraStats {
    pub saturated: usize,
    pub leaders: usize,
    pub contracted: usize,
}

/// One `connect_two_hops` initiation: `(vertex, edges initiated, floor(b) - d)`.
pub type Initiation = (VertexId, usize, i64);

#[derive(Debug, Clone)]
pub struct Engine {
    graph: Graph,
    n0: usize,
    beta0: f64,
    budgets: Vec<f64>,
    level: Vec<u32>,
    active: Vec<bool>,
    next: Vec<VertexId>,
    members: Vec<Vec<VertexId>>,
    owner: Vec<VertexId>,
    params: AlgoParams,
    config: MpcConfig,
    ledger: CostLedger,
    trace: Vec<IterationRow>,
    iteration: usize,
    max_level_seen: u32,
    leader_rule: LeaderRule,
    last_initiations: Vec<Initiation>,
    two_hop_mode: TwoHopMode,
}

impl Engine {
    pub fn initialize(g: Graph, params: AlgoParams) -> Result<Engine> {
        let n0 = g.live_count();
        let m = g.edge_count();
        if params.growth_exponent != GROWTH_EXPONENT {
            return Err(Error::InvalidParams("growth exponent is fixed at 1.25".into()));
        }
        if !(params.leader_coeff > 0.0) {
            return Err(Error::InvalidParams("leader coefficient must be positive".into()));
        }
        if params.total_space < m as f64 {
            return Err(Error::InvalidParams(format!(
                "total space {} is below the edge count {m}",
                params.total_space
            )));
        }
        if n0 > 0 && params.total_space <= n0 as f64 {
            return Err(Error::InvalidParams(format!(
                "total space {} must exceed the vertex count {n0} so that the initial budget is above 1",
                params.total_space
            )));
        }
        let beta0 = if n0 > 0 {
            (params.total_space / n0 as f64).sqrt()
        } else {
            2.0
        };
        let mut config = MpcConfig::new(params.delta, n0, params.total_space.max(2.0))?;
        config.space_constant = params.space_constant;
        config.strict = params.strict_audits;

        let n = g.n();
        let mut members = vec![Vec::new(); n];
        let mut owner = vec![VertexId::MAX; n];
        for v in g.live_vertices() {
            members[v as usize].push(v);
            owner[v as usize] = v;
        }
        let mut engine = Engine {
            graph: g,
            n0,
            beta0,
            budgets: vec![beta0],
            level: vec![0; n],
            active: vec![true; n],
            next: (0..n as VertexId).collect(),
            members,
            owner,
            params,
            config,
            ledger: CostLedger::new(),
            trace: Vec::new(),
            iteration: 0,
            max_level_seen: 0,
            leader_rule: LeaderRule::Random,
            last_initiations: Vec::new(),
            two_hop_mode: TwoHopMode::Auto,
        };
        engine.record_row(0, IntraStats::default())?;
        Ok(engine)
    }

    /// Replaces the random leader draw. Test hook; never set by the CLI.
    pub fn set_leader_rule(&mut self, rule: LeaderRule) {
        self.leader_rule = rule;
    }

    /// Pins the 2-hop candidate search to one implementation. Test hook.
    pub fn set_two_hop_mode(&mut self, mode: TwoHopMode) {
        self.two_hop_mode = mode;
    }

    /// Overrides one vertex's level. Test hook for building specific states.
    pub fn set_level(&mut self, v: VertexId, level: u32) {
        self.level[v as usize] = level;
        self.max_level_seen = self.max_level_seen.max(level);
    }

    /// Overrides the base budget. Test hook.
    pub fn set_beta0(&mut self, beta0: f64) {
        self.beta0 = beta0;
        self.budgets = vec![beta0];
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn beta0(&self) -> f64 {
        self.beta0
    }

    pub fn params(&self) -> &AlgoParams {
        &self.params
    }

    pub fn config(&self) -> &MpcConfig {
        &self.config
    }

    pub fn ledger(&self) -> &CostLedger {
        &self.ledger
    }

    pub fn trace(&self) -> &[IterationRow] {
        &self.trace
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn level(&self, v: VertexId) -> u32 {
        self.level[v as usize]
    }

    pub fn is_active(&self, v: VertexId) -> bool {
        self.active[v as usize]
    }

    pub fn members(&self, v: VertexId) -> &[VertexId] {
        &self.members[v as usize]
    }

    /// The live vertex currently standing for original vertex `u`.
    pub fn owner(&self, u: VertexId) -> VertexId {
        self.owner[u as usize]
    }

    pub fn max_level_seen(&self) -> u32 {
        self.max_level_seen
    }

    pub fn last_initiations(&self) -> &[Initiation] {
        &self.last_initiations
    }

    pub fn budget(&mut self, v: VertexId) -> f64 {
        self.budget_at(self.level[v as usize])
    }

    /// `beta0^(1.25^level)`, evaluated in closed form.
    pub fn budget_at(&mut self, level: u32) -> f64 {
        while self.budgets.len() <= level as usize {
            let l = self.budgets.len() as i32;
            self.budgets.push(self.beta0.powf(GROWTH_EXPONENT.powi(l)));
        }
        self.budgets[level as usize]
    }

    pub fn budget_cap(&self) -> f64 {
        self.params.budget_cap.unwrap_or(self.n0 as f64)
    }

    /// `ceil(log_1.25(log_beta0(n0)))`: no level can exceed this.
    pub fn level_cap(&self) -> u32 {
        level_cap(self.beta0, self.budget_cap())
    }

    pub fn max_iterations(&self) -> usize {
        self.params.max_iterations.unwrap_or_else(|| {
            let lg = if self.n0 > 1 { (self.n0 as f64).log2() } else { 0.0 };
            (20.0 * (lg + 2.0).powi(2)).ceil() as usize
        })
    }

    pub fn is_done(&self) -> bool {
        oracle::is_clique_partition(&self.graph)
    }

    /// Adds 2-hop edges for every active vertex, limited by `floor(b) - d`.
    /// Returns the number of new edges.
    pub fn connect_two_hops(&mut self) -> usize {
        let floors: Vec<i64> = (0..=self.max_level_seen)
            .map(|l| self.budget_at(l).floor() as i64)
            .collect();
        let g = &self.graph;
        let level = &self.level;
        let mut quotas = Vec::new();
        for v in g.live_vertices() {
            if !self.active[v as usize] {
                continue;
            }
            let lv = level[v as usize];
            let d = g
                .neighbors(v)
                .iter()
                .filter(|&&u| level[u as usize] >= lv)
                .count() as i64;
            let quota = floors[lv as usize] - d;
            if quota > 0 {
                quotas.push((v, quota as usize));
            }
        }
        let dense = match self.two_hop_mode {
            TwoHopMode::Sparse => false,
            TwoHopMode::Dense => true,
            TwoHopMode::Auto => {
                let live = g.live_count();
                let words = live.div_ceil(64);
                let sparse_cost: u64 = g.live_vertices().map(|w| (g.degree(w) as u64).pow(2)).sum();
                live <= DENSE_LIVE_LIMIT && dense_cost(g, words) < sparse_cost
            }
        };
        let picks = if dense {
            two_hop_dense(g, level, &quotas)
        } else {
            two_hop_sparse(g, level, &quotas)
        };
        self.last_initiations = quotas
            .iter()
            .zip(&picks)
            .filter(|(_, chosen)| !chosen.is_empty())
            .map(|(&(v, quota), chosen)| (v, chosen.len(), quota as i64))
            .collect();
        let edges = quotas
            .iter()
            .zip(&picks)
            .flat_map(|(&(v, _), chosen)| chosen.iter().map(move |&u| (v, u)));
        self.graph.add_edges(edges)
    }

    /// Redirects every vertex with a strictly higher-level neighbor to its
    /// highest-level neighbor (lowest id on ties) and marks it inactive.
    /// Returns the number of redirected vertices.
    pub fn relabel_inter_level(&mut self) -> usize {
        let mut relabeled = 0;
        for v in self.graph.live_vertices() {
            let lv = self.level[v as usize];
            let mut best: Option<(u32, VertexId)> = None;
            for &u in self.graph.neighbors(v) {
                let lu = self.level[u as usize];
                if best.map_or(true, |(bl, _)| lu > bl) {
                    best = Some((lu, u));
                }
            }
            match best {
                Some((lh, h)) if lh > lv => {
                    self.active[v as usize] = false;
                    self.next[v as usize] = h;
                    relabeled += 1;
                }
                _ => self.next[v as usize] = v,
            }
        }
        if relabeled == 0 {
            return 0;
        }
        let next = std::mem::take(&mut self.next);
        self.graph.redirect(&next);
        self.move_members(&next);
        self.next = next;

        let drop: Vec<VertexId> = self
            .graph
            .live_vertices()
            .filter(|&v| {
                !self.active[v as usize] && self.graph.degree(v) == 0 && self.members[v as usize].is_empty()
            })
            .collect();
        for v in drop {
            self.graph.remove_vertex(v);
        }
        relabeled
    }

    /// Saturation, leader sampling, level increase and 2-hop contraction.
    pub fn relabel_intra_level(&mut self) -> Result<IntraStats> {
        let n = self.graph.n();
        let cap = self.budget_cap();
        let lnn = (self.n0.max(1) as f64).ln();
        let mut stats = IntraStats::default();

        let live: Vec<VertexId> = self.graph.live_vertices().collect();
        let mut direct = vec![false; n];
        for &v in &live {
            if !self.active[v as usize] {
                continue;
            }
            let lv = self.level[v as usize];
            let b = self.budget_at(lv);
            if b >= cap {
                continue;
            }
            let same = self
                .graph
                .neighbors(v)
                .iter()
                .filter(|&&u| self.active[u as usize] && self.level[u as usize] == lv)
                .count();
            direct[v as usize] = same as f64 >= b.floor();
        }
        let mut saturated = direct.clone();
        for &v in &live {
            if saturated[v as usize] || !self.active[v as usize] {
                continue;
            }
            let lv = self.level[v as usize];
            if self.budget_at(lv) >= cap {
                continue;
            }
            saturated[v as usize] = self
                .graph
                .neighbors(v)
                .iter()
                .any(|&u| direct[u as usize] && self.level[u as usize] == lv);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.params.seed);
        rng.set_stream(self.iteration as u64);
        let mut leader = vec![false; n];
        let sat_list: Vec<VertexId> = self.graph.live_vertices().filter(|&v| saturated[v as usize]).collect();
        stats.saturated = sat_list.len();
        for &v in &sat_list {
            let b = self.budget(v);
            leader[v as usize] = match &self.leader_rule {
                LeaderRule::Random => {
                    let p = (self.params.leader_coeff * lnn / b).min(1.0);
                    rng.set_word_pos(2 * v as u128);
                    rng.gen::<f64>() < p
                }
                LeaderRule::Always => true,
                LeaderRule::Never => false,
                LeaderRule::Only(set) => set.contains(&v),
            };
        }
        let old_level = self.level.clone();
        for &v in &sat_list {
            if leader[v as usize] {
                stats.leaders += 1;
                self.level[v as usize] += 1;
                self.max_level_seen = self.max_level_seen.max(self.level[v as usize]);
            }
        }

        // (old level, smallest leader id) among leaders adjacent to each vertex
        let mut nearby: Vec<Vec<(u32, VertexId)>> = vec![Vec::new(); n];
        for &u in &sat_list {
            if !leader[u as usize] {
                continue;
            }
            let lu = old_level[u as usize];
            for &w in self.graph.neighbors(u) {
                let slot = &mut nearby[w as usize];
                match slot.iter_mut().find(|(l, _)| *l == lu) {
                    Some(entry) => entry.1 = entry.1.min(u),
                    None => slot.push((lu, u)),
                }
            }
        }
        let lookup = |w: VertexId, lv: u32| {
            nearby[w as usize]
                .iter()
                .find(|(l, _)| *l == lv)
                .map(|&(_, u)| u)
        };
        let mut target: Vec<VertexId> = (0..n as VertexId).collect();
        let mut contracted = Vec::new();
        for &v in &sat_list {
            if leader[v as usize] {
                continue;
            }
            let lv = self.level[v as usize];
            let mut best = lookup(v, lv);
            for &w in self.graph.neighbors(v) {
                if let Some(u) = lookup(w, lv) {
                    best = Some(best.map_or(u, |b: VertexId| b.min(u)));
                }
            }
            if let Some(u) = best {
                target[v as usize] = u;
                contracted.push(v);
            }
        }
        stats.contracted = contracted.len();
        if !contracted.is_empty() {
            self.graph.redirect(&target);
            self.move_members(&target);
            for v in contracted {
                self.graph.remove_vertex(v);
            }
        }
        Ok(stats)
    }

    /// Moves `C(u)` into `C(target[u])` for every redirected `u`, one hop only.
    fn move_members(&mut self, target: &[VertexId]) {
        let moved: Vec<(VertexId, Vec<VertexId>)> = (0..target.len())
            .filter(|&u| target[u] != u as VertexId)
            .map(|u| (target[u], std::mem::take(&mut self.members[u])))
            .collect();
        for (t, set) in moved {
            for &x in &set {
                self.owner[x as usize] = t;
            }
            self.members[t as usize].extend(set);
        }
    }

    /// One full iteration with cost charging, audits and a trace row.
    pub fn step(&mut self) -> Result<()> {
        self.iteration += 1;
        let added = self.connect_two_hops();
        let items = self.graph.edge_count() * 2;
        self.ledger.charge_bundle(&self.config, bundles::CONNECT_TWO_HOPS, items)?;

        let relabeled = self.relabel_inter_level();
        let items = self.graph.edge_count() * 2;
        self.ledger.charge_bundle(&self.config, bundles::RELABEL_INTER_LEVEL, items)?;

        let stats = self.relabel_intra_level()?;
        let items = self.graph.edge_count() * 2;
        self.ledger.charge_bundle(&self.config, bundles::RELABEL_INTRA_LEVEL, items)?;

        self.record_row(added, stats)?;
        if let Some(row) = self.trace.last_mut() {
            row.relabeled = relabeled;
        }
        Ok(())
    }

    /// Remaining budgets `max(0, b - d)` summed over active vertices, and `sum b^2` over live ones.
    pub fn space_sums(&mut self) -> (f64, f64) {
        let live: Vec<VertexId> = self.graph.live_vertices().collect();
        let mut remaining = 0.0;
        let mut squares = 0.0;
        for v in live {
            let lv = self.level[v as usize];
            let b = self.budget_at(lv);
            squares += b * b;
            if self.active[v as usize] {
                let d = self
                    .graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| self.level[u as usize] >= lv)
                    .count();
                remaining += (b - d as f64).max(0.0);
            }
        }
        (remaining, squares)
    }

    fn record_row(&mut self, edges_added: usize, stats: IntraStats) -> Result<()> {
        let (remaining, squares) = self.space_sums();
        let edges = self.graph.edge_count();
        let y = self
            .ledger
            .audit_iteration(&self.config, self.iteration, edges, remaining, squares)?;
        let live: Vec<VertexId> = self.graph.live_vertices().collect();
        let row = IterationRow {
            iteration: self.iteration,
            live_vertices: live.len(),
            edges,
            potential_space: y,
            budget_square_sum: squares,
            max_level: live.iter().map(|&v| self.level[v as usize]).max().unwrap_or(0),
            inactive: live.iter().filter(|&&v| !self.active[v as usize]).count(),
            relabeled: 0,
            saturated: stats.saturated,
            leaders: stats.leaders,
            contracted: stats.contracted,
            edges_added,
        };
        self.trace.push(row);
        Ok(())
    }

    /// Iterates until every component is a clique.
    pub fn run(&mut self) -> Result<()> {
        let max = self.max_iterations();
        while !self.is_done() {
            if self.iteration >= max {
                return Err(Error::TerminationOverflow { max_iterations: max });
            }
            self.step()?;
        }
        Ok(())
    }

    /// Labels every original vertex by the smallest original id in its final component.
    /// Vertices that were dead when the engine started label themselves.
    pub fn finalize_labels(&self) -> ComponentLabeling {
        let mut labels = ComponentLabeling::identity(self.graph.n());
        for group in oracle::component_groups(&self.graph) {
            let originals = group.iter().flat_map(|&v| self.members[v as usize].iter().copied());
            let Some(rep) = originals.clone().min() else {
                continue;
            };
            for u in originals {
                labels.label[u as usize] = rep;
            }
        }
        labels
    }
}

/// Largest live-vertex count for which the bitset 2-hop search is considered.
const DENSE_LIVE_LIMIT: usize = 1 << 15;

/// How [`Engine::connect_two_hops`] enumerates 2-hop candidates. Both modes
/// pick the same vertices; `Auto` chooses by estimated cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoHopMode {
    Auto,
    Sparse,
    Dense,
}

/// Smallest `quota` ids of `H(v) \ N(v)` for every `(v, quota)`, by merging adjacency lists.
fn two_hop_sparse(g: &Graph, level: &[u32], quotas: &[(VertexId, usize)]) -> Vec<Vec<VertexId>> {
    // same-level adjacency; when every live vertex shares one level it is the graph itself
    let mut live = g.live_vertices();
    let first = live.next().map(|v| level[v as usize]);
    let uniform = live.all(|v| Some(level[v as usize]) == first);
    let filtered: Vec<Vec<VertexId>> = if uniform {
        Vec::new()
    } else {
        (0..g.n() as VertexId)
            .map(|w| {
                let lw = level[w as usize];
                g.neighbors(w)
                    .iter()
                    .copied()
                    .filter(|&u| level[u as usize] == lw)
                    .collect()
            })
            .collect()
    };
    let same_level = |w: VertexId| -> &[VertexId] {
        if uniform {
            g.neighbors(w)
        } else {
            &filtered[w as usize]
        }
    };

    let mut stamp = vec![VertexId::MAX; g.n()];
    let mut out = Vec::with_capacity(quotas.len());
    for &(v, quota) in quotas {
        stamp[v as usize] = v;
        for &w in g.neighbors(v) {
            stamp[w as usize] = v;
        }
        // The k smallest qualifying ids of a union of sorted lists are always
        // among the first k unseen qualifying ids of each list. Once k are
        // known, the largest of them cuts later scans short.
        let mut candidates = Vec::new();
        let mut cutoff = VertexId::MAX;
        for &w in same_level(v) {
            let mut taken = 0;
            for &u in same_level(w) {
                if taken == quota || u > cutoff {
                    break;
                }
                if stamp[u as usize] != v {
                    stamp[u as usize] = v;
                    candidates.push(u);
                    taken += 1;
                }
            }
            if candidates.len() > quota || (candidates.len() == quota && cutoff == VertexId::MAX) {
                candidates.select_nth_unstable(quota - 1);
                candidates.truncate(quota);
                cutoff = candidates[quota - 1];
            }
        }
        candidates.sort_unstable();
        candidates.truncate(quota);
        out.push(candidates);
    }
    out
}

/// Row setup plus one windowed OR per (vertex, neighbor) pair. A row's window
/// is bounded by its smallest and largest neighbor.
fn dense_cost(g: &Graph, words: usize) -> u64 {
    let mut rank = vec![0u64; g.n()];
    for (i, v) in g.live_vertices().enumerate() {
        rank[v as usize] = i as u64;
    }
    let mut cost = (g.live_count() * words) as u64;
    for w in g.live_vertices() {
        let nbrs = g.neighbors(w);
        if let (Some(&a), Some(&b)) = (nbrs.first(), nbrs.last()) {
            let width = rank[b as usize] / 64 - rank[a as usize] / 64 + 1;
            cost += nbrs.len() as u64 * width;
        }
    }
    cost
}

/// Same result as [`two_hop_sparse`] using one bitset row per live vertex.
/// Compact indices follow id order, so "smallest ids first" is preserved.
fn two_hop_dense(g: &Graph, level: &[u32], quotas: &[(VertexId, usize)]) -> Vec<Vec<VertexId>> {
    let live: Vec<VertexId> = g.live_vertices().collect();
    let mut index = vec![u32::MAX; g.n()];
    for (i, &v) in live.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let words = live.len().div_ceil(64);
    let mut rows = vec![0u64; live.len() * words];
    // occupied word range of each row, so sparse-but-local rows stay cheap
    let mut span = vec![(usize::MAX, 0usize); live.len()];
    for (i, &w) in live.iter().enumerate() {
        let lw = level[w as usize];
        let row = &mut rows[i * words..(i + 1) * words];
        for &u in g.neighbors(w) {
            if level[u as usize] == lw {
                let j = index[u as usize] as usize;
                row[j / 64] |= 1 << (j % 64);
                span[i].0 = span[i].0.min(j / 64);
                span[i].1 = span[i].1.max(j / 64 + 1);
            }
        }
    }
    let mut acc = vec![0u64; words];
    let mut out = Vec::with_capacity(quotas.len());
    for &(v, quota) in quotas {
        let lv = level[v as usize];
        let (mut lo, mut hi) = (usize::MAX, 0);
        for &w in g.neighbors(v) {
            if level[w as usize] != lv {
                continue;
            }
            let i = index[w as usize] as usize;
            let (a, b) = span[i];
            if a >= b {
                continue;
            }
            if lo >= hi {
                acc[a..b].iter_mut().for_each(|x| *x = 0);
                (lo, hi) = (a, b);
            } else {
                // zero the newly exposed words before widening
                if a < lo {
                    acc[a..lo].iter_mut().for_each(|x| *x = 0);
                    lo = a;
                }
                if b > hi {
                    acc[hi..b].iter_mut().for_each(|x| *x = 0);
                    hi = b;
                }
            }
            for (x, r) in acc[a..b].iter_mut().zip(&rows[i * words + a..i * words + b]) {
                *x |= r;
            }
        }
        let mut chosen = Vec::new();
        if lo < hi {
            for &u in g.neighbors(v).iter().chain(std::iter::once(&v)) {
                let j = index[u as usize] as usize;
                if (lo..hi).contains(&(j / 64)) {
                    acc[j / 64] &= !(1 << (j % 64));
                }
            }
            'scan: for k in lo..hi {
                let mut bits = acc[k];
                while bits != 0 {
                    if chosen.len() == quota {
                        break 'scan;
                    }
                    let b = bits.trailing_zeros() as usize;
                    chosen.push(live[k * 64 + b]);
                    bits &= bits - 1;
                }
            }
        }
        out.push(chosen);
    }
    out
}

/// `ceil(log_1.25(log_beta0(cap)))`, clamped at zero.
pub fn level_cap(beta0: f64, cap: f64) -> u32 {
    if cap <= beta0 || beta0 <= 1.0 {
        return 0;
    }
    let x = (cap.ln() / beta0.ln()).ln() / GROWTH_EXPONENT.ln();
    x.ceil().max(0.0) as u32
}

/// Runs the main loop on `g` and returns the finished engine (its trace and ledger included).
pub fn run_until_cliques(g: Graph, params: AlgoParams) -> Result<Engine> {
    let mut engine = Engine::initialize(g, params)?;
    engine.run()?;
    Ok(engine)
}
