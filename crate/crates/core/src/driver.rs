//! End-to-end solver: drop isolated vertices, shrink sparse inputs, run the
//! main loop on what is left, and pull the labels back.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::engine::{self, AlgoParams, Engine, IterationRow, DEFAULT_ALPHA};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::mpc::{CostLedger, MpcConfig};
use crate::oracle::{self, ComponentLabeling};
use crate::shrink::{self, ShrinkParams, ShrinkRow};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriverParams {
    pub delta: f64,
    pub seed: u64,
    pub verify: bool,
    /// Polylog exponent in both the shrink target and the main-loop space.
    pub alpha: f64,
    pub strict_audits: bool,
    pub max_iterations: Option<usize>,
}

impl DriverParams {
    pub fn new(delta: f64, seed: u64) -> Self {
        DriverParams {
            delta,
            seed,
            verify: true,
            alpha: DEFAULT_ALPHA,
            strict_audits: false,
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Dense input: main loop with `T = 2m`.
    Direct,
    /// Shrink first, then the main loop on the shrunk graph.
    Shrink,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub isolated: usize,
    pub seed: u64,
    pub delta: f64,
    pub alpha: f64,
    pub route: Route,
    pub shrink_target: Option<usize>,
    pub shrink_rounds: usize,
    /// Non-isolated vertices and edges handed to the main loop.
    pub core_vertices: usize,
    pub core_edges: usize,
    /// `T` of the main loop; zero when the main loop was skipped.
    pub total_space: f64,
    pub main_iterations: usize,
    pub level_cap: u32,
    pub max_level: u32,
    pub rounds_charged: u64,
    pub shrink_rounds_charged: u64,
    pub main_rounds_charged: u64,
    pub ledger: CostLedger,
    pub components: usize,
    pub verified: Option<bool>,
    #[serde(skip)]
    pub wall_clock: Duration,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub labels: ComponentLabeling,
    pub report: RunReport,
    pub trace: Vec<IterationRow>,
    pub shrink_trace: Vec<ShrinkRow>,
}

fn lg(x: usize) -> f64 {
    if x > 1 {
        (x as f64).log2()
    } else {
        0.0
    }
}

/// Labels every vertex of `g` by the smallest id in its component.
pub fn find_connected_components(g: &Graph, params: &DriverParams) -> Result<RunOutput> {
    let start = Instant::now();
    let n = g.n();
    let mut work = g.clone();
    let isolated: Vec<VertexId> = work.live_vertices().filter(|&v| work.degree(v) == 0).collect();
    for &v in &isolated {
        work.remove_vertex(v);
    }
    let live = work.live_count();
    let m = work.edge_count();

    let mut ledger = CostLedger::new();
    let mut report = RunReport {
        n,
        m,
        isolated: isolated.len(),
        seed: params.seed,
        delta: params.delta,
        alpha: params.alpha,
        route: Route::Direct,
        shrink_target: None,
        shrink_rounds: 0,
        core_vertices: 0,
        core_edges: 0,
        total_space: 0.0,
        main_iterations: 0,
        level_cap: 0,
        max_level: 0,
        rounds_charged: 0,
        shrink_rounds_charged: 0,
        main_rounds_charged: 0,
        ledger: CostLedger::new(),
        components: 0,
        verified: None,
        wall_clock: Duration::ZERO,
    };

    let dense = live > 0 && m as f64 >= live as f64 * lg(live).powf(params.alpha);
    let mut mapping = shrink::ShrinkMapping::identity(n);
    let mut shrink_trace = Vec::new();
    let total_space;
    if dense {
        total_space = (2 * m).max(live + 1) as f64;
    } else {
        report.route = Route::Shrink;
        let target = ((live as f64 / lg(live).powf(params.alpha)).floor() as usize).max(1);
        report.shrink_target = Some(target);
        let config = MpcConfig::new(params.delta, live.max(2), (m + live).max(2) as f64)?;
        let mut shrink_ledger = CostLedger::new();
        let outcome = shrink::shrink_phase(work, &ShrinkParams::new(target, params.seed), &config, &mut shrink_ledger)?;
        report.shrink_rounds = outcome.rounds;
        report.shrink_rounds_charged = shrink_ledger.rounds_charged;
        ledger.absorb(&shrink_ledger);
        mapping = outcome.mapping;
        shrink_trace = outcome.trace;
        work = outcome.graph;
        let collapsed: Vec<VertexId> = work.live_vertices().filter(|&v| work.degree(v) == 0).collect();
        for v in collapsed {
            work.remove_vertex(v);
        }
        total_space = engine::polylog_total_space(work.edge_count(), work.live_count(), params.alpha);
    }

    report.core_vertices = work.live_count();
    report.core_edges = work.edge_count();
    let mut trace = Vec::new();
    let key = if report.core_vertices > 0 {
        let mut algo = AlgoParams::new(total_space, params.seed);
        algo.delta = params.delta;
        algo.strict_audits = params.strict_audits;
        algo.max_iterations = params.max_iterations;
        let mut engine = Engine::initialize(work, algo)?;
        engine.run()?;
        report.total_space = total_space;
        report.main_iterations = engine.iteration();
        report.level_cap = engine.level_cap();
        report.max_level = engine.max_level_seen();
        report.main_rounds_charged = engine.ledger().rounds_charged;
        ledger.absorb(engine.ledger());
        trace = engine.trace().to_vec();
        engine.finalize_labels()
    } else {
        ComponentLabeling::identity(n)
    };

    // smallest original id per final key
    let mut smallest = vec![VertexId::MAX; n];
    for u in 0..n {
        let k = key.label[mapping.get(u as VertexId) as usize] as usize;
        smallest[k] = smallest[k].min(u as VertexId);
    }
    let labels = ComponentLabeling {
        label: (0..n)
            .map(|u| smallest[key.label[mapping.get(u as VertexId) as usize] as usize])
            .collect(),
    };

    report.components = labels.class_count();
    report.rounds_charged = ledger.rounds_charged;
    report.ledger = ledger;
    if params.verify {
        let ok = labels.same_partition(&oracle::oracle_components(g));
        report.verified = Some(ok);
        if !ok {
            return Err(Error::VerificationMismatch);
        }
    }
    report.wall_clock = start.elapsed();
    Ok(RunOutput {
        labels,
        report,
        trace,
        shrink_trace,
    })
}

/// One row of the combined trace: shrink rounds first, then main-loop iterations.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub phase: String,
    pub index: usize,
    pub live_vertices: usize,
    pub edges: usize,
    pub potential_space: Option<f64>,
    pub budget_square_sum: Option<f64>,
    pub max_level: Option<u32>,
    pub inactive: Option<usize>,
    pub relabeled: Option<usize>,
    pub saturated: Option<usize>,
    pub leaders: Option<usize>,
    pub contracted: Option<usize>,
    pub edges_added: Option<usize>,
    pub absorbed: Option<usize>,
    pub arc_merges: Option<usize>,
}

pub fn trace_records(shrink_rows: &[ShrinkRow], rows: &[IterationRow]) -> Vec<TraceRecord> {
    let shrink = shrink_rows.iter().map(|r| TraceRecord {
        phase: "shrink".into(),
        index: r.round,
        live_vertices: r.vertices_after,
        edges: r.edges_after,
        absorbed: Some(r.absorbed),
        arc_merges: Some(r.arc_merges),
        ..Default::default()
    });
    let main = rows.iter().map(|r| TraceRecord {
        phase: "main".into(),
        index: r.iteration,
        live_vertices: r.live_vertices,
        edges: r.edges,
        potential_space: Some(r.potential_space),
        budget_square_sum: Some(r.budget_square_sum),
        max_level: Some(r.max_level),
        inactive: Some(r.inactive),
        relabeled: Some(r.relabeled),
        saturated: Some(r.saturated),
        leaders: Some(r.leaders),
        contracted: Some(r.contracted),
        edges_added: Some(r.edges_added),
        ..Default::default()
    });
    shrink.chain(main).collect()
}

/// Writes serializable rows as CSV with a header line.
pub fn write_csv<W: std::io::Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    }
    w.flush()?;
    Ok(())
}
