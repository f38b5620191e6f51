//! Joint power control when user 2 pins its destination's SINR at exactly
//! the QoS floor.
//!
//! The equality constraint gives `P2` in closed form as an affine function
//! of `P1`; substituting it leaves a single-variable bilinear-ratio
//! maximization in `P1` over `[0, min(pmax1, lambda3)]`, where `lambda3` is
//! the `P1` beyond which user 2's budget can no longer compensate the
//! interference. As in the altruistic case the objective is piecewise in the
//! SIC threshold; both pieces are solved and the best point returned.

use std::fmt;

use crate::allocation::{Branch, PowerAllocation, QosInfeasible};
use crate::altruistic::FeasibilityCase;
use crate::fractional::{maximize_on_interval, BilinearRatioObjective, Interval};
use crate::model::{ChannelInstance, PowerBudget, SicCase};

/// Positive-secrecy bounds on `P1` along the QoS-equality curve, plus the
/// budget-induced cap `lambda3`.
///
/// With `a = g12`, `b = g11`, `c = gamma g21 / g22`, `d = g1e`,
/// `e = gamma g2e / g22`: `a_p = ((1+c)d - b(1+e)) noise` and
/// `b_p = a(be - cd)`; the primitive condition is `P1 * b_p > a_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgoisticBounds {
    pub case: FeasibilityCase,
    /// `a_p / b_p`, present exactly for `AboveBound` and `BelowBound`.
    pub bound: Option<f64>,
    pub a_p: f64,
    pub b_p: f64,
    /// `(pmax2 g22 - gamma noise) / (gamma g12)`; `+inf` when the QoS cannot
    /// cap `P1` (`gamma == 0` or `g12 == 0`).
    pub lambda3: f64,
}

/// User 2 gives itself exactly SINR `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroGainG22;

impl fmt::Display for ZeroGainG22 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("g22 = 0: user 2 cannot reach its destination")
    }
}

impl std::error::Error for ZeroGainG22 {}

/// The `P2` that holds user 2's SINR exactly at `gamma` for a given `p1`:
/// `gamma (p1 g12 + noise) / g22`.
pub fn p2_equality(ch: &ChannelInstance, p1: f64, gamma: f64) -> Result<f64, ZeroGainG22> {
    if gamma == 0.0 {
        return Ok(0.0);
    }
    if ch.g22 == 0.0 {
        return Err(ZeroGainG22);
    }
    Ok(gamma * (p1 * ch.g12 + ch.noise) / ch.g22)
}

/// Classify the positive-secrecy condition on `P1` along the equality curve
/// (cancellation blocked), and compute the budget cap `lambda3`.
///
/// Assumes `g22 > 0` or `gamma == 0`; [`solve_egoistic`] rejects the rest as
/// QoS-infeasible before getting here.
pub fn egoistic_bounds(ch: &ChannelInstance, gamma: f64, budget: &PowerBudget) -> EgoisticBounds {
    let (c, e) = if gamma == 0.0 {
        (0.0, 0.0)
    } else {
        (gamma * ch.g21 / ch.g22, gamma * ch.g2e / ch.g22)
    };
    let (a, b, d) = (ch.g12, ch.g11, ch.g1e);
    let a_p = ((1.0 + c) * d - b * (1.0 + e)) * ch.noise;
    let b_p = a * (b * e - c * d);
    let case = if a_p > 0.0 && b_p > 0.0 {
        FeasibilityCase::AboveBound
    } else if a_p < 0.0 && b_p > 0.0 {
        FeasibilityCase::AnyPositive
    } else if a_p < 0.0 && b_p < 0.0 {
        FeasibilityCase::BelowBound
    } else if a_p > 0.0 && b_p < 0.0 {
        FeasibilityCase::Impossible
    } else if b_p > 0.0 {
        FeasibilityCase::AnyPositive
    } else if b_p < 0.0 {
        FeasibilityCase::Impossible
    } else if a_p < 0.0 {
        FeasibilityCase::AnyPositive
    } else {
        // a_p == 0, b_p == 0: P1 * 0 > 0 never holds.
        FeasibilityCase::Impossible
    };
    let bound = match case {
        FeasibilityCase::AboveBound | FeasibilityCase::BelowBound => Some(a_p / b_p),
        _ => None,
    };
    let lambda3 = if gamma == 0.0 || ch.g12 == 0.0 {
        f64::INFINITY
    } else {
        (budget.pmax2 * ch.g22 - gamma * ch.noise) / (gamma * ch.g12)
    };
    EgoisticBounds { case, bound, a_p, b_p, lambda3 }
}

/// Objective in `P1` along the equality curve. With the curve substituted,
/// both SINR denominators become affine in `P1`.
pub(crate) fn curve_objective(ch: &ChannelInstance, gamma: f64, blocked: bool) -> BilinearRatioObjective {
    let s = ch.noise;
    let (c, e) = if gamma == 0.0 {
        (0.0, 0.0)
    } else {
        (gamma * ch.g21 / ch.g22, gamma * ch.g2e / ch.g22)
    };
    let (a, b, d) = (ch.g12, ch.g11, ch.g1e);
    if blocked {
        BilinearRatioObjective::new(
            (c * a + b, (1.0 + c) * s),
            (e * a, (1.0 + e) * s),
            (c * a, (1.0 + c) * s),
            (e * a + d, (1.0 + e) * s),
        )
    } else {
        BilinearRatioObjective::new(
            (c * a + b, (1.0 + c) * s),
            (0.0, s),
            (c * a, (1.0 + c) * s),
            (d, s),
        )
    }
}

/// Best allocation on `p1 in [p1_lo, p1_hi]` along the equality curve with
/// the stated cancellation state. The blocked piece is additionally
/// intersected with the positive-secrecy bound on `P1`; absent when the
/// window pinches empty.
pub fn solve_egoistic_window(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
    p1_lo: f64,
    p1_hi: f64,
    blocked: bool,
) -> Option<PowerAllocation> {
    let mut iv = Interval::new(p1_lo, p1_hi);
    if blocked {
        let bounds = egoistic_bounds(ch, gamma, budget);
        match bounds.case {
            FeasibilityCase::Impossible => return None,
            FeasibilityCase::AboveBound => {
                iv = iv.intersect(Interval::new(bounds.bound.unwrap(), f64::INFINITY))
            }
            FeasibilityCase::BelowBound => {
                iv = iv.intersect(Interval::new(0.0, bounds.bound.unwrap()))
            }
            FeasibilityCase::AnyPositive => {}
        }
    }
    if iv.is_empty() {
        return None;
    }
    let obj = curve_objective(ch, gamma, blocked);
    let res = maximize_on_interval(&obj, iv).ok()?;
    let p1 = res.argmax;
    let p2 = p2_equality(ch, p1, gamma).ok()?.min(budget.pmax2);
    let branch = if blocked { Branch::EgoisticBlocked } else { Branch::EgoisticUnblocked };
    Some(PowerAllocation::at(ch, p1, p2, blocked, branch))
}

fn u1_off_allocation(ch: &ChannelInstance, gamma: f64, budget: &PowerBudget) -> PowerAllocation {
    let p2 = p2_equality(ch, 0.0, gamma).unwrap_or(0.0).min(budget.pmax2);
    let blocked = ch.sic_regime().blocked_at(0.0);
    PowerAllocation::at(ch, 0.0, p2, blocked, Branch::U1Off)
}

/// Optimal `P1` (and the induced `P2`) when user 2 holds its SINR exactly at
/// `gamma`.
///
/// The admissible `P1` range `[0, min(pmax1, lambda3)]` is split at the SIC
/// threshold; the blocked piece uses the interference-limited wiretap rate
/// and the complementary piece the interference-free one. Both pieces are
/// exact bilinear-ratio maximizations; the best point wins, with ties broken
/// toward smaller total power.
pub fn solve_egoistic(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
) -> Result<PowerAllocation, QosInfeasible> {
    if gamma > 0.0 {
        let required = if ch.g22 == 0.0 { f64::INFINITY } else { gamma * ch.noise / ch.g22 };
        if required > budget.pmax2 {
            return Err(QosInfeasible { required_p2: required, pmax2: budget.pmax2 });
        }
    }
    let bounds = egoistic_bounds(ch, gamma, budget);
    let hi = budget.pmax1.min(bounds.lambda3);
    let regime = ch.sic_regime();

    let mut candidates: Vec<Option<PowerAllocation>> = Vec::new();
    match regime.case {
        SicCase::BlockAlways => {
            candidates.push(solve_egoistic_window(ch, gamma, budget, 0.0, hi, true));
        }
        SicCase::Unblockable => {
            candidates.push(solve_egoistic_window(ch, gamma, budget, 0.0, hi, false));
        }
        SicCase::BlockAbove => {
            let omega = regime.omega.unwrap();
            if omega <= hi {
                candidates.push(solve_egoistic_window(ch, gamma, budget, omega, hi, true));
            }
            candidates.push(solve_egoistic_window(ch, gamma, budget, 0.0, hi.min(omega), false));
        }
        SicCase::BlockBelow => {
            let omega = regime.omega.unwrap();
            candidates.push(solve_egoistic_window(ch, gamma, budget, 0.0, hi.min(omega), true));
            if omega < hi {
                candidates.push(solve_egoistic_window(ch, gamma, budget, omega, hi, false));
            }
        }
    }

    let mut best = u1_off_allocation(ch, gamma, budget);
    for cand in candidates.into_iter().flatten() {
        if cand.improves_on(&best) {
            best = cand;
        }
    }
    Ok(best)
}
