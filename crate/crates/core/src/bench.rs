//! Parameter sweeps producing one CSV row per (instance, seed).

use serde::{Deserialize, Serialize};

use crate::driver::{find_connected_components, DriverParams};
use crate::engine::{self, AlgoParams, Engine};
use crate::error::{Error, Result};
use crate::generate::{generate, Family, GenSpec};
use crate::graph::Graph;
use crate::oracle;

/// Largest vertex count for which the benchmark computes exact diameters.
pub const EXACT_DIAMETER_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMode {
    /// The full shrink-then-main-loop pipeline.
    Pipeline,
    /// The main loop alone with `T = m + n lg(n)^alpha`.
    Core,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub family: String,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub delta: f64,
    pub alpha: f64,
    pub mode: BenchMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub diameter: u32,
    pub diameter_exact: bool,
    pub seed: u64,
    pub shrink_rounds: usize,
    pub iterations: usize,
    pub rounds_charged: u64,
    pub peak_y_over_t: f64,
    pub peak_b2_over_t: f64,
    pub max_level: u32,
    pub level_cap: u32,
    pub components: usize,
    pub violations: usize,
}

/// Powers of two from `nmin` up to `nmax`, both rounded up to a power of two.
pub fn power_of_two_sizes(nmin: usize, nmax: usize) -> Vec<usize> {
    let mut n = nmin.max(1).next_power_of_two();
    let mut out = Vec::new();
    while n <= nmax {
        out.push(n);
        n *= 2;
    }
    out
}

/// Largest component diameter, exact up to [`EXACT_DIAMETER_LIMIT`] vertices.
pub fn max_diameter(g: &Graph) -> (u32, bool) {
    if g.live_count() <= EXACT_DIAMETER_LIMIT {
        (oracle::exact_diameter(g).into_iter().max().unwrap_or(0), true)
    } else {
        (oracle::double_sweep_estimate(g).into_iter().max().unwrap_or(0), false)
    }
}

/// Runs the main loop alone on `g` and returns the finished engine.
pub fn run_core(g: Graph, alpha: f64, delta: f64, seed: u64) -> Result<Engine> {
    let mut params = AlgoParams::polylog_space(&g, alpha, seed);
    params.delta = delta;
    engine::run_until_cliques(g, params)
}

pub fn bench_row(family: &Family, seed: u64, config: &BenchConfig) -> Result<BenchRow> {
    let g = generate(&GenSpec::new(family.clone(), seed))?;
    let (diameter, diameter_exact) = max_diameter(&g);
    let base = BenchRow {
        family: family.label(),
        n: g.n(),
        m: g.edge_count(),
        diameter,
        diameter_exact,
        seed,
        shrink_rounds: 0,
        iterations: 0,
        rounds_charged: 0,
        peak_y_over_t: 0.0,
        peak_b2_over_t: 0.0,
        max_level: 0,
        level_cap: 0,
        components: 0,
        violations: 0,
    };
    match config.mode {
        BenchMode::Pipeline => {
            let mut p = DriverParams::new(config.delta, seed);
            p.alpha = config.alpha;
            p.verify = g.n() <= 1_000_000;
            let out = find_connected_components(&g, &p)?;
            let r = out.report;
            let t = r.total_space.max(1.0);
            Ok(BenchRow {
                shrink_rounds: r.shrink_rounds,
                iterations: r.main_iterations,
                rounds_charged: r.rounds_charged,
                peak_y_over_t: r.ledger.peak_potential_space / t,
                peak_b2_over_t: r.ledger.peak_budget_square_sum / t,
                max_level: r.max_level,
                level_cap: r.level_cap,
                components: r.components,
                violations: r.ledger.violations.len(),
                ..base
            })
        }
        BenchMode::Core => {
            let reference = oracle::oracle_components(&g);
            let e = run_core(g, config.alpha, config.delta, seed)?;
            let labels = e.finalize_labels();
            if !labels.same_partition(&reference) {
                return Err(Error::VerificationMismatch);
            }
            let t = e.params().total_space;
            Ok(BenchRow {
                iterations: e.iteration(),
                rounds_charged: e.ledger().rounds_charged,
                peak_y_over_t: e.ledger().peak_potential_space / t,
                peak_b2_over_t: e.ledger().peak_budget_square_sum / t,
                max_level: e.max_level_seen(),
                level_cap: e.level_cap(),
                components: labels.class_count(),
                violations: e.ledger().violations.len(),
                ..base
            })
        }
    }
}

/// One row per (size, seed), sizes outermost.
pub fn bench_sweep(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.sizes.is_empty() || config.seeds.is_empty() {
        return Err(Error::InvalidParams("bench grid is empty".into()));
    }
    let mut rows = Vec::new();
    for &n in &config.sizes {
        let family = Family::from_name(&config.family, n, None)?;
        for &seed in &config.seeds {
            rows.push(bench_row(&family, seed, config)?);
        }
    }
    Ok(rows)
}
