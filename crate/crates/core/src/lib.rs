//! Massively-parallel connected components at desk scale.
//!
//! The main loop lives in [`engine`], the vertex-shrinking pre-pass in
//! [`shrink`], and [`driver`] composes them into a full solver. Every step is
//! charged against an MPC cost model ([`mpc`]) and checked against sequential
//! oracles ([`oracle`]).

pub mod bench;
pub mod driver;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lowerbound;
pub mod mpc;
pub mod oracle;
pub mod shrink;

pub use driver::{find_connected_components, DriverParams, RunOutput, RunReport};
pub use engine::{AlgoParams, Engine, IterationRow, LeaderRule};
pub use error::{Error, Result};
pub use generate::{generate, Family, GenSpec};
pub use graph::{Graph, VertexId};
pub use mpc::{CostLedger, MpcConfig, Primitive};
pub use oracle::{oracle_components, ComponentLabeling};
