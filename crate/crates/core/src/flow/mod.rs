//! Exact integer network-flow kernels.

mod dinic;
mod mcf;
mod network;
mod potential;

pub use dinic::{max_flow, min_cut_side};
pub use mcf::{min_cost_bflow, min_cost_bflow_with_potentials, BFlowSolution};
pub use network::{Flow, FlowNetwork, NetArc, ResidualArc, ResidualGraph};
pub use potential::feasible_potential;
