//! Solver output types shared by the altruistic, egoistic, single-user, and
//! oracle paths.

use std::fmt;

use crate::model::ChannelInstance;

/// Which scenario a solver or simulation cell refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scenario {
    Altruistic,
    Egoistic,
    SingleUser,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Altruistic => "altruistic",
            Scenario::Egoistic => "egoistic",
            Scenario::SingleUser => "single_user",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "altruistic" => Some(Scenario::Altruistic),
            "egoistic" => Some(Scenario::Egoistic),
            "single_user" | "single-user" => Some(Scenario::SingleUser),
            _ => None,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Provenance of a returned allocation: which subproblem produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// P1 held at its cap, cancellation blocked, P2 optimized.
    P1FixedBlocked,
    /// P1 rides the QoS-equality curve, cancellation blocked.
    QosTightBlocked,
    /// P1 held at its cap, eavesdropper sees user 1 interference-free.
    P1FixedUnblocked,
    /// P1 rides the QoS-equality curve, eavesdropper interference-free.
    QosTightUnblocked,
    /// User 1 silent; user 2 covers bare QoS.
    U1Off,
    /// Egoistic curve, cancellation blocked.
    EgoisticBlocked,
    /// Egoistic curve, eavesdropper interference-free.
    EgoisticUnblocked,
    /// Interference-free single-user benchmark.
    SingleUser,
    /// Exhaustive grid search.
    GridOracle,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::P1FixedBlocked => "p1-fixed/blocked",
            Branch::QosTightBlocked => "qos-tight/blocked",
            Branch::P1FixedUnblocked => "p1-fixed/unblocked",
            Branch::QosTightUnblocked => "qos-tight/unblocked",
            Branch::U1Off => "u1-off",
            Branch::EgoisticBlocked => "egoistic/blocked",
            Branch::EgoisticUnblocked => "egoistic/unblocked",
            Branch::SingleUser => "single-user",
            Branch::GridOracle => "grid-oracle",
        };
        f.write_str(s)
    }
}

/// A solved power pair with its achieved secrecy rate (clamped at zero), the
/// achieved QoS SINR, the eavesdropper-cancellation state at that point, and
/// the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerAllocation {
    pub p1: f64,
    pub p2: f64,
    /// Clamped secrecy rate, bits/s/Hz.
    pub secrecy: f64,
    /// Achieved SINR at user 2's destination.
    pub qos_sinr: f64,
    pub sic_blocked: bool,
    pub branch: Branch,
}

impl PowerAllocation {
    /// Evaluate the allocation at `(p1, p2)` with the stated cancellation
    /// state, filling in secrecy and QoS from the channel.
    pub fn at(ch: &ChannelInstance, p1: f64, p2: f64, sic_blocked: bool, branch: Branch) -> Self {
        Self {
            p1,
            p2,
            secrecy: ch.clamped_secrecy_rate(p1, p2, sic_blocked),
            qos_sinr: ch.qos_sinr(p1, p2),
            sic_blocked,
            branch,
        }
    }

    pub fn total_power(&self) -> f64 {
        self.p1 + self.p2
    }

    /// Whether `self` should replace `best`: strictly higher secrecy, or the
    /// same secrecy at strictly lower total power.
    pub fn improves_on(&self, best: &PowerAllocation) -> bool {
        self.secrecy > best.secrecy
            || (self.secrecy == best.secrecy && self.total_power() < best.total_power())
    }
}

/// The QoS floor is unreachable even with user 1 silent: the bare-QoS power
/// `gamma * noise / g22` exceeds user 2's budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QosInfeasible {
    /// Minimum P2 that would satisfy QoS with P1 = 0.
    pub required_p2: f64,
    pub pmax2: f64,
}

impl fmt::Display for QosInfeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QoS infeasible: bare-QoS power {} exceeds pmax2 = {}",
            self.required_p2, self.pmax2
        )
    }
}

impl std::error::Error for QosInfeasible {}
