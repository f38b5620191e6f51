//! Joint power control when user 2 spends power in user 1's favor.
//!
//! The solve proceeds in two nested steps. For a fixed `P2`, the secrecy
//! objective is monotone in `P1`, increasing exactly when positive secrecy is
//! achievable at that `P2` (see [`secrecy_feasibility`]); the optimal `P1` is
//! then the smaller of the regime cap `chi` and the largest power the QoS
//! constraint admits. Substituting the two shapes of that answer (`P1` held
//! at `chi`, or `P1` riding the QoS-equality curve) turns the outer `P2`
//! problem into two single-variable bilinear-ratio maximizations which
//! [`crate::fractional`] solves exactly.
//!
//! When the SIC regime admits a threshold `omega`, the secrecy objective is
//! piecewise: the eavesdropper sees user 1 interference-free on the wrong
//! side of the threshold. [`solve_altruistic`] therefore also solves the
//! complementary window with the interference-free wiretap formula
//! ([`solve_unblocked_window`]) and returns the best of all candidates, so
//! its answer is the optimum of the true piecewise objective over the whole
//! power rectangle.

use std::fmt;

use crate::allocation::{Branch, PowerAllocation, QosInfeasible};
use crate::fractional::{maximize_on_interval, BilinearRatioObjective, Interval};
use crate::model::{ChannelInstance, PowerBudget, SicCase, SicRegime};

/// Sign classification shared by the positive-secrecy bounds of the
/// altruistic (`P2`) and egoistic (`P1`) scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeasibilityCase {
    /// Positive secrecy for powers above the bound.
    AboveBound,
    /// Positive secrecy for any positive power.
    AnyPositive,
    /// Positive secrecy for powers below the bound.
    BelowBound,
    /// No power yields positive secrecy.
    Impossible,
}

impl fmt::Display for FeasibilityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FeasibilityCase::AboveBound => "above-bound",
            FeasibilityCase::AnyPositive => "any-positive",
            FeasibilityCase::BelowBound => "below-bound",
            FeasibilityCase::Impossible => "impossible",
        };
        f.write_str(s)
    }
}

/// Where user 2's power must sit for user 1 to see a positive secrecy rate
/// (eavesdropper cancellation blocked).
///
/// `a = noise * (g1e - g11)`, `b = g11 * g2e - g21 * g1e`; the primitive
/// condition is `P2 * b > a`, independent of `P1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyFeasibility {
    pub case: FeasibilityCase,
    /// `a / b`, present exactly for `AboveBound` and `BelowBound`.
    pub bound: Option<f64>,
    pub a: f64,
    pub b: f64,
}

impl SecrecyFeasibility {
    /// Whether positive secrecy is achievable at this `p2` (for any positive
    /// `p1` with cancellation blocked).
    pub fn positive_at(&self, p2: f64) -> bool {
        p2 * self.b > self.a
    }
}

/// Classify the positive-secrecy condition on `P2`.
///
/// Strict sign patterns of `(a, b)` map to the cases; zero signs resolve by
/// the primitive inequality `P2 * b > a`.
pub fn secrecy_feasibility(ch: &ChannelInstance) -> SecrecyFeasibility {
    let a = ch.noise * (ch.g1e - ch.g11);
    let b = ch.g11 * ch.g2e - ch.g21 * ch.g1e;
    let case = if a > 0.0 && b > 0.0 {
        FeasibilityCase::AboveBound
    } else if a < 0.0 && b > 0.0 {
        FeasibilityCase::AnyPositive
    } else if a < 0.0 && b < 0.0 {
        FeasibilityCase::BelowBound
    } else if a > 0.0 && b < 0.0 {
        FeasibilityCase::Impossible
    } else if b > 0.0 {
        // a == 0: P2 * b > 0 for every positive P2.
        FeasibilityCase::AnyPositive
    } else if b < 0.0 {
        FeasibilityCase::Impossible
    } else if a < 0.0 {
        // b == 0: 0 > a always.
        FeasibilityCase::AnyPositive
    } else {
        FeasibilityCase::Impossible
    };
    let bound = match case {
        FeasibilityCase::AboveBound | FeasibilityCase::BelowBound => Some(a / b),
        _ => None,
    };
    SecrecyFeasibility { case, bound, a, b }
}

/// Constraint landmarks for the two `P2` subproblems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityBounds {
    /// `gamma * (chi * g12 + noise) / g22`: the `P2` above which the QoS
    /// constraint admits `P1 = chi`.
    pub lambda1: f64,
    /// `gamma * noise / g22`: bare-QoS power with user 1 silent.
    pub lambda2: f64,
    /// Positive-secrecy bound on `P2`, when one exists.
    pub phi1: Option<f64>,
    /// Cap on `P1` from the SIC regime and the power budget.
    pub chi: f64,
}

/// `P1` cap for the blocked-cancellation subproblems.
pub fn chi_for(regime: &SicRegime, pmax1: f64) -> f64 {
    match regime.case {
        SicCase::BlockBelow => pmax1.min(regime.omega.unwrap()),
        _ => pmax1,
    }
}

/// Bare-QoS power: the `P2` needed to meet QoS with user 1 silent.
pub fn bare_qos_p2(ch: &ChannelInstance, gamma: f64) -> f64 {
    if gamma == 0.0 {
        0.0
    } else {
        gamma * ch.noise / ch.g22
    }
}

/// Largest `P1` the QoS constraint admits at this `p2`; `+inf` when the
/// constraint cannot bind (`gamma == 0` or `g12 == 0`).
pub fn qos_p1_cap(ch: &ChannelInstance, gamma: f64, p2: f64) -> f64 {
    if gamma == 0.0 || ch.g12 == 0.0 {
        f64::INFINITY
    } else {
        (p2 * ch.g22 - gamma * ch.noise) / (gamma * ch.g12)
    }
}

/// The `P2` at which the QoS-equality curve reaches `P1 = p1_cap`, the
/// inverse of [`qos_p1_cap`]. Zero when `gamma == 0`.
pub fn qos_p2_at_cap(ch: &ChannelInstance, gamma: f64, p1_cap: f64) -> f64 {
    if gamma == 0.0 {
        0.0
    } else {
        gamma * (p1_cap * ch.g12 + ch.noise) / ch.g22
    }
}

/// Assemble the constraint landmarks for a regime/feasibility pair.
pub fn feasibility_bounds(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
    regime: &SicRegime,
    feas: &SecrecyFeasibility,
) -> FeasibilityBounds {
    let chi = chi_for(regime, budget.pmax1);
    FeasibilityBounds {
        lambda1: qos_p2_at_cap(ch, gamma, chi),
        lambda2: bare_qos_p2(ch, gamma),
        phi1: feas.bound,
        chi,
    }
}

/// No `P1` is simultaneously QoS-admissible and inside the blocked window at
/// the given `P2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P1Infeasible;

impl fmt::Display for P1Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("no admissible P1 at this P2")
    }
}

impl std::error::Error for P1Infeasible {}

/// Optimal `P1` for a fixed `P2` in a blockable regime.
///
/// In the increasing region (positive secrecy achievable at this `p2`) the
/// optimum is `min(chi, qos cap)`; in the decreasing region user 1 turns
/// off. For `BlockAbove` the result must also clear the threshold `omega`,
/// otherwise the blocked subproblem has no admissible `P1` at this `p2`.
pub fn optimal_p1_given_p2(
    ch: &ChannelInstance,
    p2: f64,
    gamma: f64,
    pmax1: f64,
    regime: &SicRegime,
    feas: &SecrecyFeasibility,
) -> Result<f64, P1Infeasible> {
    if !feas.positive_at(p2) {
        // Monotone decreasing: user 1 should be turned off.
        return Ok(0.0);
    }
    let chi = chi_for(regime, pmax1);
    let p1 = chi.min(qos_p1_cap(ch, gamma, p2));
    if p1 < 0.0 {
        // p2 below the bare-QoS level: not even P1 = 0 is admissible.
        return Err(P1Infeasible);
    }
    if regime.case == SicCase::BlockAbove && p1 < regime.omega.unwrap() {
        return Err(P1Infeasible);
    }
    Ok(p1)
}

/// Feasibility domains for the two `P2` subproblems: `domain18` for the
/// `P1 = chi` branch, `domain19` for the QoS-tight branch. Empty intervals
/// are valid outputs. For the `Impossible` case there is no positive-secrecy
/// constraint to impose, so the domains are the plain QoS/budget windows:
/// every feasible point there yields zero clamped secrecy and the overall
/// tie-break settles on the cheapest allocation.
pub fn p2_feasibility_domains(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
    regime: &SicRegime,
    feas: &SecrecyFeasibility,
) -> (Interval, Interval) {
    let fb = feasibility_bounds(ch, gamma, budget, regime, feas);
    let pmax2 = budget.pmax2;
    let high = match feas.case {
        FeasibilityCase::AboveBound => Interval::new(fb.lambda1.max(fb.phi1.unwrap()), pmax2),
        FeasibilityCase::BelowBound => Interval::new(fb.lambda1, fb.phi1.unwrap().min(pmax2)),
        FeasibilityCase::AnyPositive | FeasibilityCase::Impossible => {
            Interval::new(fb.lambda1, pmax2)
        }
    };
    let low = if gamma == 0.0 {
        // The QoS-tight curve collapses to P1 = 0.
        Interval::empty()
    } else {
        match feas.case {
            FeasibilityCase::AboveBound => {
                Interval::new(fb.phi1.unwrap().max(fb.lambda2), fb.lambda1.min(pmax2))
            }
            FeasibilityCase::BelowBound => {
                Interval::new(fb.lambda2, fb.phi1.unwrap().min(fb.lambda1).min(pmax2))
            }
            FeasibilityCase::AnyPositive | FeasibilityCase::Impossible => {
                Interval::new(fb.lambda2, fb.lambda1.min(pmax2))
            }
        }
    };
    (high, low)
}

/// Objective in `P2` with `P1` held at `p1_fix`.
pub(crate) fn p1_fixed_objective(ch: &ChannelInstance, p1_fix: f64, blocked: bool) -> BilinearRatioObjective {
    let s = ch.noise;
    if blocked {
        BilinearRatioObjective::new(
            (ch.g21, s + p1_fix * ch.g11),
            (ch.g2e, s),
            (ch.g21, s),
            (ch.g2e, s + p1_fix * ch.g1e),
        )
    } else {
        BilinearRatioObjective::new(
            (ch.g21, s + p1_fix * ch.g11),
            (0.0, s),
            (ch.g21, s),
            (0.0, s + p1_fix * ch.g1e),
        )
    }
}

/// Objective in `P2` along the QoS-equality curve
/// `P1 = (P2 g22 - gamma noise) / (gamma g12)`. Requires `gamma > 0` and
/// `g12 > 0`; the denominator factors are positive for `P2 >= lambda2`.
pub(crate) fn qos_tight_objective(ch: &ChannelInstance, gamma: f64, blocked: bool) -> BilinearRatioObjective {
    let s = ch.noise;
    let n1 = gamma * ch.g12 * ch.g21 + ch.g11 * ch.g22;
    let n0 = gamma * s * (ch.g12 - ch.g11);
    if blocked {
        BilinearRatioObjective::new(
            (n1, n0),
            (ch.g2e, s),
            (ch.g21, s),
            (gamma * ch.g12 * ch.g2e + ch.g1e * ch.g22, gamma * s * (ch.g12 - ch.g1e)),
        )
    } else {
        BilinearRatioObjective::new(
            (n1, n0),
            (0.0, s),
            (ch.g21, s),
            (ch.g1e * ch.g22, gamma * s * (ch.g12 - ch.g1e)),
        )
    }
}

fn p1_fixed_branch(
    ch: &ChannelInstance,
    p1_fix: f64,
    blocked: bool,
    domain: Interval,
    branch: Branch,
) -> Option<PowerAllocation> {
    if domain.is_empty() {
        return None;
    }
    let obj = p1_fixed_objective(ch, p1_fix, blocked);
    let res = maximize_on_interval(&obj, domain).ok()?;
    Some(PowerAllocation::at(ch, p1_fix, res.argmax, blocked, branch))
}

fn qos_tight_branch(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
    p2_domain: Interval,
    p1_window: (f64, f64),
    blocked: bool,
    branch: Branch,
) -> Option<PowerAllocation> {
    if gamma == 0.0 || ch.g12 == 0.0 || p2_domain.is_empty() {
        return None;
    }
    let obj = qos_tight_objective(ch, gamma, blocked);
    let res = maximize_on_interval(&obj, p2_domain).ok()?;
    let p1 = qos_p1_cap(ch, gamma, res.argmax)
        .clamp(p1_window.0, p1_window.1)
        .clamp(0.0, budget.pmax1);
    Some(PowerAllocation::at(ch, p1, res.argmax, blocked, branch))
}

/// The `P1 = chi` subproblem over its feasibility domain; absent when the
/// domain is empty or (for `BlockAbove`) the cap cannot clear `omega`.
pub fn solve_p2_high_branch(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
    regime: &SicRegime,
    feas: &SecrecyFeasibility,
) -> Option<PowerAllocation> {
    if regime.case == SicCase::BlockAbove && budget.pmax1 < regime.omega.unwrap() {
        return None;
    }
    let chi = chi_for(regime, budget.pmax1);
    let (high, _) = p2_feasibility_domains(ch, gamma, budget, regime, feas);
    p1_fixed_branch(ch, chi, true, high, Branch::P1FixedBlocked)
}

/// The QoS-tight subproblem over its feasibility domain. For `BlockAbove`
/// the domain is pre-shrunk so the induced `P1` clears `omega` (the curve is
/// affine increasing in `P2`, so the threshold maps to a `P2` half-line).
pub fn solve_p2_low_branch(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
    regime: &SicRegime,
    feas: &SecrecyFeasibility,
) -> Option<PowerAllocation> {
    if gamma == 0.0 || ch.g12 == 0.0 {
        return None;
    }
    let chi = chi_for(regime, budget.pmax1);
    let (_, mut low) = p2_feasibility_domains(ch, gamma, budget, regime, feas);
    let p1_window = match regime.case {
        SicCase::BlockAbove => {
            let omega = regime.omega.unwrap();
            if budget.pmax1 < omega {
                return None;
            }
            low = low.intersect(Interval::new(qos_p2_at_cap(ch, gamma, omega), f64::INFINITY));
            (omega, chi)
        }
        _ => (0.0, chi),
    };
    qos_tight_branch(ch, gamma, budget, low, p1_window, true, Branch::QosTightBlocked)
}

/// Best allocation on `p1 in [p1_lo, p1_hi]` with the eavesdropper seeing
/// user 1 interference-free (cancellation not blocked there).
///
/// Used for the `Unblockable` regime over the full budget and for the
/// complementary window of the threshold regimes. Decomposes exactly like
/// the blocked problem: `P1` pinned to the window top, or riding the
/// QoS-equality curve.
pub fn solve_unblocked_window(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
    p1_lo: f64,
    p1_hi: f64,
) -> Option<PowerAllocation> {
    if p1_lo > p1_hi || p1_hi <= 0.0 {
        return None;
    }
    let mut best: Option<PowerAllocation> = None;
    let top_domain = Interval::new(qos_p2_at_cap(ch, gamma, p1_hi), budget.pmax2);
    let top = p1_fixed_branch(ch, p1_hi, false, top_domain, Branch::P1FixedUnblocked);
    let curve_domain = Interval::new(
        qos_p2_at_cap(ch, gamma, p1_lo).max(bare_qos_p2(ch, gamma)),
        qos_p2_at_cap(ch, gamma, p1_hi).min(budget.pmax2),
    );
    let curve = qos_tight_branch(
        ch,
        gamma,
        budget,
        curve_domain,
        (p1_lo, p1_hi),
        false,
        Branch::QosTightUnblocked,
    );
    for cand in [top, curve].into_iter().flatten() {
        if best.as_ref().is_none_or(|b| cand.improves_on(b)) {
            best = Some(cand);
        }
    }
    best
}

fn u1_off_allocation(ch: &ChannelInstance, gamma: f64, budget: &PowerBudget) -> PowerAllocation {
    let p2 = bare_qos_p2(ch, gamma).min(budget.pmax2);
    let blocked = ch.sic_regime().blocked_at(0.0);
    PowerAllocation::at(ch, 0.0, p2, blocked, Branch::U1Off)
}

/// Solve the scenario where no power of user 1 can stop the eavesdropper
/// from cancelling user 2's signal. Assumes the bare QoS is within budget
/// (callers go through [`solve_altruistic`], which checks).
pub fn solve_unblockable(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
) -> PowerAllocation {
    let fallback = u1_off_allocation(ch, gamma, budget);
    match solve_unblocked_window(ch, gamma, budget, 0.0, budget.pmax1) {
        Some(cand) if cand.improves_on(&fallback) => cand,
        _ => fallback,
    }
}

/// Jointly optimal `(P1, P2)` maximizing user 1's clamped secrecy rate
/// subject to the budgets and user 2's QoS floor.
///
/// Classifies the SIC regime, solves every applicable subproblem (the two
/// blocked branches, the interference-free complement of the threshold
/// window, and the user-1-off fallback) and returns the best by clamped
/// secrecy, breaking ties toward smaller total power.
pub fn solve_altruistic(
    ch: &ChannelInstance,
    gamma: f64,
    budget: &PowerBudget,
) -> Result<PowerAllocation, QosInfeasible> {
    let lambda2 = bare_qos_p2(ch, gamma);
    if lambda2 > budget.pmax2 {
        return Err(QosInfeasible { required_p2: lambda2, pmax2: budget.pmax2 });
    }
    let regime = ch.sic_regime();
    if regime.case == SicCase::Unblockable {
        return Ok(solve_unblockable(ch, gamma, budget));
    }
    let feas = secrecy_feasibility(ch);

    let mut candidates: Vec<Option<PowerAllocation>> = Vec::new();
    match regime.case {
        SicCase::BlockAlways => {
            candidates.push(solve_p2_high_branch(ch, gamma, budget, &regime, &feas));
            candidates.push(solve_p2_low_branch(ch, gamma, budget, &regime, &feas));
        }
        SicCase::BlockAbove => {
            let omega = regime.omega.unwrap();
            candidates.push(solve_p2_high_branch(ch, gamma, budget, &regime, &feas));
            candidates.push(solve_p2_low_branch(ch, gamma, budget, &regime, &feas));
            // Below the threshold the eavesdropper cancels user 2.
            candidates.push(solve_unblocked_window(
                ch,
                gamma,
                budget,
                0.0,
                budget.pmax1.min(omega),
            ));
        }
        SicCase::BlockBelow => {
            let omega = regime.omega.unwrap();
            candidates.push(solve_p2_high_branch(ch, gamma, budget, &regime, &feas));
            candidates.push(solve_p2_low_branch(ch, gamma, budget, &regime, &feas));
            if omega < budget.pmax1 {
                // Above the threshold the eavesdropper cancels user 2.
                candidates.push(solve_unblocked_window(
                    ch,
                    gamma,
                    budget,
                    omega,
                    budget.pmax1,
                ));
            }
        }
        SicCase::Unblockable => unreachable!(),
    }

    let mut best = u1_off_allocation(ch, gamma, budget);
    for cand in candidates.into_iter().flatten() {
        if cand.improves_on(&best) {
            best = cand;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    fn ch(g11: f64, g21: f64, g12: f64, g22: f64, g1e: f64, g2e: f64) -> ChannelInstance {
        ChannelInstance::new(g11, g21, g12, g22, g1e, g2e, 1.0).unwrap()
    }

    #[test]
    fn feasibility_strict_cases() {
        let f = secrecy_feasibility(&ch(2.0, 1.0, 1.0, 1.0, 1.0, 1.0));
        assert_eq!(f.case, FeasibilityCase::AnyPositive);
        assert_eq!((f.a, f.b), (-1.0, 1.0));
        assert_eq!(f.bound, None);

        let f = secrecy_feasibility(&ch(1.0, 1.0, 1.0, 1.0, 2.0, 1.0));
        assert_eq!(f.case, FeasibilityCase::Impossible);
        assert_eq!((f.a, f.b), (1.0, -1.0));

        let f = secrecy_feasibility(&ch(1.0, 1.0, 1.0, 1.0, 2.0, 4.0));
        assert_eq!(f.case, FeasibilityCase::AboveBound);
        assert_eq!((f.a, f.b), (1.0, 2.0));
        assert!((f.bound.unwrap() - 0.5).abs() < EPS);
    }

    #[test]
    fn feasibility_degenerate_signs() {
        // a == 0, b > 0: any positive P2 works.
        let f = secrecy_feasibility(&ch(1.0, 1.0, 1.0, 1.0, 1.0, 2.0));
        assert_eq!(f.a, 0.0);
        assert!(f.b > 0.0);
        assert_eq!(f.case, FeasibilityCase::AnyPositive);
        // a == 0, b == 0 (fully symmetric): secrecy identically zero.
        let f = secrecy_feasibility(&ch(1.0, 1.0, 1.0, 1.0, 1.0, 1.0));
        assert_eq!(f.case, FeasibilityCase::Impossible);
        // a > 0, b == 0.
        let f = secrecy_feasibility(&ch(1.0, 2.0, 1.0, 1.0, 2.0, 4.0));
        assert_eq!((f.a, f.b), (1.0, 0.0));
        assert_eq!(f.case, FeasibilityCase::Impossible);
    }

    #[test]
    fn optimal_p1_examples() {
        // BlockAlways, AnyPositive: min(pmax1, qos cap) = min(2, 3) = 2.
        let c = ch(2.0, 1.0, 1.0, 4.0, 1.0, 1.0);
        let regime = c.sic_regime();
        assert_eq!(regime.case, SicCase::BlockAlways);
        let feas = secrecy_feasibility(&c);
        assert_eq!(feas.case, FeasibilityCase::AnyPositive);
        let p1 = optimal_p1_given_p2(&c, 1.0, 1.0, 2.0, &regime, &feas).unwrap();
        assert!((p1 - 2.0).abs() < EPS);

        // Impossible: user 1 turns off.
        let c = ch(1.0, 1.0, 1.0, 2.0, 2.0, 1.0);
        let regime = c.sic_regime();
        let feas = secrecy_feasibility(&c);
        assert_eq!(feas.case, FeasibilityCase::Impossible);
        assert_eq!(optimal_p1_given_p2(&c, 1.0, 1.0, 2.0, &regime, &feas).unwrap(), 0.0);
    }

    #[test]
    fn optimal_p1_block_below_caps_at_omega() {
        // BlockBelow with omega = 1.5: a_dd = g2e - g22 < 0, b_dd < 0.
        // g22 = 2, g2e = 0.5 -> a_dd = -1.5; g1e = 0.5, g12 = 4 -> b_dd = 1 - 2 = -1.
        let c = ch(10.0, 0.1, 4.0, 2.0, 0.5, 0.5);
        let regime = c.sic_regime();
        assert_eq!(regime.case, SicCase::BlockBelow);
        assert!((regime.omega.unwrap() - 1.5).abs() < EPS);
        let feas = secrecy_feasibility(&c);
        // Pick p2 with a large qos cap (cap = (p2*g22 - gamma)/ (gamma*g12)).
        let p2 = 6.5; // cap = (13 - 1)/4 = 3
        assert!(feas.positive_at(p2));
        let p1 = optimal_p1_given_p2(&c, p2, 1.0, 2.0, &regime, &feas).unwrap();
        assert!((p1 - 1.5).abs() < EPS, "chi = min(pmax1, omega) = 1.5, got {p1}");
    }

    #[test]
    fn optimal_p1_block_above_infeasible_marker() {
        // BlockAbove: a_dd = 2, b_dd = g1e - 3*g12 = 0.5, omega = 4.
        let c = ch(100.0, 0.1, 1.0, 1.0, 3.5, 3.0);
        let regime = c.sic_regime();
        assert_eq!(regime.case, SicCase::BlockAbove);
        let omega = regime.omega.unwrap();
        assert!((omega - 4.0).abs() < EPS);
        let feas = secrecy_feasibility(&c);
        // Small p2: positive secrecy region but the QoS cap sits below omega.
        let p2 = 1.2;
        assert!(feas.positive_at(p2));
        let cap = qos_p1_cap(&c, 1.0, p2);
        assert!(cap < omega);
        assert_eq!(optimal_p1_given_p2(&c, p2, 1.0, 10.0, &regime, &feas), Err(P1Infeasible));
    }

    #[test]
    fn domains_any_positive_example() {
        // gamma=1, chi=2, g12=1, noise=1, g22=4, pmax2=2, AnyPositive.
        let c = ch(2.0, 1.0, 1.0, 4.0, 1.0, 1.0);
        let regime = c.sic_regime();
        let feas = secrecy_feasibility(&c);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let (high, low) = p2_feasibility_domains(&c, 1.0, &budget, &regime, &feas);
        assert!((high.lo - 0.75).abs() < EPS && (high.hi - 2.0).abs() < EPS);
        assert!((low.lo - 0.25).abs() < EPS && (low.hi - 0.75).abs() < EPS);
    }

    #[test]
    fn lambda_ordering() {
        // lambda2 <= lambda1 for any nonnegative cap.
        let c = ch(2.0, 1.0, 0.7, 4.0, 1.0, 1.0);
        let regime = c.sic_regime();
        let feas = secrecy_feasibility(&c);
        for pmax in [0.1, 1.0, 10.0] {
            let budget = PowerBudget::new(pmax, 2.0).unwrap();
            for gamma in [0.0, 0.5, 3.0] {
                let fb = feasibility_bounds(&c, gamma, &budget, &regime, &feas);
                assert!(fb.lambda2 <= fb.lambda1);
                assert!(fb.chi > 0.0);
            }
        }
    }

    #[test]
    fn domains_zero_gamma() {
        let c = ch(2.0, 1.0, 1.0, 4.0, 1.0, 1.0);
        let regime = c.sic_regime();
        let feas = secrecy_feasibility(&c);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let (high, low) = p2_feasibility_domains(&c, 0.0, &budget, &regime, &feas);
        assert_eq!((high.lo, high.hi), (0.0, 2.0));
        assert!(low.is_empty());
    }

    #[test]
    fn domains_above_bound_exceeding_budget() {
        // AboveBound with bound 5 > pmax2 = 2: the high-branch domain is empty.
        // a = g1e - g11 = 1 > 0; b = g11*g2e - g21*g1e: want a/b = 5 -> b = 0.2.
        // g11 = 1, g1e = 2, g21 = 1: b = g2e - 2 = 0.2 -> g2e = 2.2.
        let c = ch(1.0, 1.0, 1.0, 4.0, 2.0, 2.2);
        let feas = secrecy_feasibility(&c);
        assert_eq!(feas.case, FeasibilityCase::AboveBound);
        assert!((feas.bound.unwrap() - 5.0).abs() < 1e-9);
        let regime = c.sic_regime();
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let (high, _) = p2_feasibility_domains(&c, 1.0, &budget, &regime, &feas);
        assert!(high.is_empty());
        assert!(solve_p2_high_branch(&c, 1.0, &budget, &regime, &feas).is_none());
    }

    #[test]
    fn unblockable_wiretap_dominant_turns_u1_off() {
        // Unblockable regime with g11 <= g1e: the interference-free
        // eavesdropper dominates for every power pair.
        let c = ch(1.0, 1.0, 1.0, 1.0, 2.0, 2.5);
        let regime = c.sic_regime();
        assert_eq!(regime.case, SicCase::Unblockable);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let alloc = solve_unblockable(&c, 1.0, &budget);
        assert_eq!(alloc.p1, 0.0);
        assert_eq!(alloc.secrecy, 0.0);
        assert!((alloc.p2 - 1.0).abs() < EPS); // bare QoS: gamma*noise/g22
        assert!(!alloc.sic_blocked);
    }

    #[test]
    fn high_branch_symmetric_links_returns_domain_lo() {
        // g11 = g1e and g21 = g2e: the ratio is identically 1; the smallest
        // feasible power wins the tie.
        let c = ch(2.0, 1.5, 1.0, 4.0, 2.0, 1.5);
        let regime = c.sic_regime();
        let feas = secrecy_feasibility(&c);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let (high, _) = p2_feasibility_domains(&c, 1.0, &budget, &regime, &feas);
        let alloc = solve_p2_high_branch(&c, 1.0, &budget, &regime, &feas).unwrap();
        assert_eq!(alloc.p2, high.lo);
        assert_eq!(alloc.secrecy, 0.0);
    }

    #[test]
    fn low_branch_empty_domain_absent() {
        // BelowBound with phi1 = 0.1 below lambda2 = 0.25: domain19 empty.
        let c = ch(2.0, 12.0, 1.0, 4.0, 1.0, 1.0);
        let regime = c.sic_regime();
        let feas = secrecy_feasibility(&c);
        assert_eq!(feas.case, FeasibilityCase::BelowBound);
        assert!((feas.bound.unwrap() - 0.1).abs() < EPS);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let (_, low) = p2_feasibility_domains(&c, 1.0, &budget, &regime, &feas);
        assert!(low.is_empty());
        assert!(solve_p2_low_branch(&c, 1.0, &budget, &regime, &feas).is_none());
    }

    #[test]
    fn low_branch_at_lambda2_gives_zero_power_zero_secrecy() {
        // At the domain's lower endpoint the curve starts at P1 = 0.
        let c = ch(4.0, 1.0, 1.0, 4.0, 1.0, 1.0);
        let regime = c.sic_regime();
        let feas = secrecy_feasibility(&c);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let (_, low) = p2_feasibility_domains(&c, 1.0, &budget, &regime, &feas);
        assert!((low.lo - 0.25).abs() < EPS);
        let p1_at_lo = qos_p1_cap(&c, 1.0, low.lo);
        assert!(p1_at_lo.abs() < 1e-12);
        assert_eq!(c.clamped_secrecy_rate(0.0, low.lo, true), 0.0);
    }

    #[test]
    fn solve_altruistic_qos_infeasible() {
        // lambda2 = gamma*noise/g22 = 4 > pmax2 = 2.
        let c = ch(1.0, 1.0, 1.0, 0.25, 1.0, 1.0);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let err = solve_altruistic(&c, 1.0, &budget).unwrap_err();
        assert!((err.required_p2 - 4.0).abs() < EPS);
    }

    #[test]
    fn solve_altruistic_symmetric_zero_secrecy() {
        let c = ch(2.0, 1.5, 1.0, 4.0, 2.0, 1.5);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let alloc = solve_altruistic(&c, 1.0, &budget).unwrap();
        assert_eq!(alloc.secrecy, 0.0);
        // Tie-break lands on the cheapest allocation: user 1 off, bare QoS.
        assert_eq!(alloc.p1, 0.0);
        assert!((alloc.p2 - 0.25).abs() < EPS);
    }

    #[test]
    fn solve_altruistic_reference_instance() {
        // Closed form on the worked instance: optimum at (2, 0.75) with
        // secrecy log2(2.6).
        let c = ch(4.0, 1.0, 1.0, 4.0, 1.0, 1.0);
        let budget = PowerBudget::new(2.0, 2.0).unwrap();
        let alloc = solve_altruistic(&c, 1.0, &budget).unwrap();
        assert!((alloc.p1 - 2.0).abs() < 1e-9);
        assert!((alloc.p2 - 0.75).abs() < 1e-9);
        assert!((alloc.secrecy - 2.6f64.log2()).abs() < 1e-9);
        assert!(alloc.qos_sinr >= 1.0 - 1e-9);
    }
}
