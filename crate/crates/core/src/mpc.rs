//! Round and space accounting for the MPC model.
//!
//! Algorithms run logically over a global edge set. Every sort, filter,
//! prefix sum, predecessor, or duplicate-removal pass they would perform on a
//! cluster is charged here at exactly `ceil(1 / delta)` rounds, and the
//! potential space and squared-budget sums are audited once per iteration.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    Sort,
    Filter,
    PrefixSum,
    Predecessor,
    Dedup,
}

impl Primitive {
    pub fn name(self) -> &'static str {
        match self {
            Primitive::Sort => "sort",
            Primitive::Filter => "filter",
            Primitive::PrefixSum => "prefix_sum",
            Primitive::Predecessor => "predecessor",
            Primitive::Dedup => "dedup",
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Primitive bundles charged once per subroutine call.
pub mod bundles {
    use super::Primitive::{self, *};

    pub const CONNECT_TWO_HOPS: &[Primitive] = &[Sort, PrefixSum, Dedup, Filter];
    pub const RELABEL_INTER_LEVEL: &[Primitive] = &[Sort, Predecessor, Sort, Dedup, Filter];
    pub const RELABEL_INTRA_LEVEL: &[Primitive] = &[Sort, PrefixSum, Sort, Predecessor, Dedup, Filter];
    pub const SHRINK_ROUND: &[Primitive] = &[Sort, Predecessor, Filter];

    /// Primitives per main-loop iteration.
    pub fn per_iteration() -> usize {
        CONNECT_TWO_HOPS.len() + RELABEL_INTER_LEVEL.len() + RELABEL_INTRA_LEVEL.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MpcConfig {
    pub delta: f64,
    pub n0: usize,
    /// Words per machine, `ceil(n0^delta)` but at least 2.
    pub machine_space: usize,
    /// Total space budget `T` in words.
    pub total_space: f64,
    /// Potential space may reach `space_constant * T` before an audit fails.
    pub space_constant: f64,
    /// Sum of squared budgets may reach `budget_square_constant * T`.
    pub budget_square_constant: f64,
    /// Promote violations to errors.
    pub strict: bool,
}

impl MpcConfig {
    pub fn new(delta: f64, n0: usize, total_space: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParams(format!("delta must lie in (0, 1), got {delta}")));
        }
        let machine_space = ((n0 as f64).powf(delta).ceil() as usize).max(2);
        if !(total_space >= machine_space as f64) {
            return Err(Error::InvalidParams(format!(
                "total space {total_space} is below one machine ({machine_space} words)"
            )));
        }
        Ok(MpcConfig {
            delta,
            n0,
            machine_space,
            total_space,
            space_constant: 4.0,
            budget_square_constant: 1.0,
            strict: false,
        })
    }

    /// Model rounds charged per primitive invocation.
    pub fn rounds_per_primitive(&self) -> u64 {
        (1.0 / self.delta).ceil() as u64
    }

    pub fn machines(&self) -> usize {
        (self.total_space / self.machine_space as f64).ceil() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Where the audit fired, e.g. `iteration 3` or `sort`.
    pub at: String,
    pub quantity: String,
    pub value: f64,
    pub limit: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {} > {}", self.quantity, self.at, self.value, self.limit)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CostLedger {
    #[serde(rename = "rounds")]
    pub rounds_charged: u64,
    #[serde(rename = "primitives")]
    pub primitive_counts: BTreeMap<String, u64>,
    #[serde(rename = "peak_y")]
    pub peak_potential_space: f64,
    #[serde(rename = "peak_b2")]
    pub peak_budget_square_sum: f64,
    pub violations: Vec<Violation>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    fn record(&mut self, config: &MpcConfig, v: Violation) -> Result<()> {
        let msg = v.to_string();
        self.violations.push(v);
        if config.strict {
            return Err(Error::AuditViolation(msg));
        }
        Ok(())
    }

    /// Charges one primitive over `item_count` tuples.
    pub fn charge_primitive(&mut self, config: &MpcConfig, kind: Primitive, item_count: usize) -> Result<()> {
        self.rounds_charged += config.rounds_per_primitive();
        *self.primitive_counts.entry(kind.name().to_string()).or_insert(0) += 1;
        let limit = config.space_constant * config.total_space;
        if item_count as f64 > limit {
            return self.record(
                config,
                Violation {
                    at: kind.name().to_string(),
                    quantity: "primitive items".into(),
                    value: item_count as f64,
                    limit,
                },
            );
        }
        Ok(())
    }

    pub fn charge_bundle(&mut self, config: &MpcConfig, bundle: &[Primitive], item_count: usize) -> Result<()> {
        for &p in bundle {
            self.charge_primitive(config, p, item_count)?;
        }
        Ok(())
    }

    /// Audits one iteration; returns the potential space `edges + remaining budgets`.
    pub fn audit_iteration(
        &mut self,
        config: &MpcConfig,
        iteration: usize,
        edge_count: usize,
        remaining_budget_sum: f64,
        budget_square_sum: f64,
    ) -> Result<f64> {
        let y = edge_count as f64 + remaining_budget_sum;
        self.peak_potential_space = self.peak_potential_space.max(y);
        self.peak_budget_square_sum = self.peak_budget_square_sum.max(budget_square_sum);
        let y_limit = config.space_constant * config.total_space;
        if y > y_limit {
            self.record(
                config,
                Violation {
                    at: format!("iteration {iteration}"),
                    quantity: "potential space".into(),
                    value: y,
                    limit: y_limit,
                },
            )?;
        }
        let b2_limit = config.budget_square_constant * config.total_space;
        // relative slack absorbs rounding in the closed-form budgets
        if budget_square_sum > b2_limit * (1.0 + 1e-9) {
            self.record(
                config,
                Violation {
                    at: format!("iteration {iteration}"),
                    quantity: "budget square sum".into(),
                    value: budget_square_sum,
                    limit: b2_limit,
                },
            )?;
        }
        Ok(y)
    }

    /// Adds another ledger's charges, counts, peaks and violations into this one.
    pub fn absorb(&mut self, other: &CostLedger) {
        self.rounds_charged += other.rounds_charged;
        for (k, c) in &other.primitive_counts {
            *self.primitive_counts.entry(k.clone()).or_insert(0) += c;
        }
        self.peak_potential_space = self.peak_potential_space.max(other.peak_potential_space);
        self.peak_budget_square_sum = self.peak_budget_square_sum.max(other.peak_budget_square_sum);
        self.violations.extend(other.violations.iter().cloned());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}
