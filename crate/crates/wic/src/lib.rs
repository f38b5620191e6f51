//! Secrecy-rate-optimal transmit powers for a two-user interference
//! network with an eavesdropper.
//!
//! Two transmitter/receiver pairs share a band while an external eavesdropper
//! overhears both. User 1 carries confidential traffic; user 2 only needs a
//! minimum SINR at its own destination. This crate computes the jointly
//! optimal transmit powers `(P1, P2)` that maximize user 1's secrecy rate:
//!
//! * [`altruistic::solve_altruistic`]: user 2 spends any power that helps
//!   user 1, subject to its own QoS floor (SINR ≥ γ).
//! * [`egoistic::solve_egoistic`]: user 2 pins its destination's SINR at
//!   exactly γ and does nothing more.
//! * [`benchmark::solve_single_user`]: the interference-free wiretap
//!   benchmark, plus the secrecy-energy-efficiency metric used to compare it
//!   against the interference modes.
//!
//! Every optimization in this problem family reduces to maximizing a ratio of
//! two products of affine functions over an interval; [`fractional`] contains
//! the exact candidate-enumeration maximizer they all share. [`oracle`]
//! provides brute-force grid searches used as ground truth in tests and by
//! the `verify` CLI command, and [`sim`] is the seeded Monte-Carlo harness
//! that produces the averaged-metric tables.

pub mod allocation;
pub mod altruistic;
pub mod benchmark;
pub mod case_tables;
pub mod egoistic;
pub mod fractional;
pub mod model;
pub mod oracle;
pub mod sim;

pub use allocation::{Branch, PowerAllocation, QosInfeasible, Scenario};
pub use model::{ChannelInstance, PowerBudget, QosRequirement, SicCase, SicRegime};

/// Default relative tolerance for inequality (QoS, budget) checks.
pub const DEFAULT_TOL: f64 = 1e-9;
