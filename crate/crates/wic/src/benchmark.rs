//! Interference-free single-user wiretap benchmark and the
//! secrecy-energy-efficiency metric used to compare it against the
//! interference-channel modes.

use crate::allocation::{Branch, PowerAllocation};
use crate::model::ModelError;

/// One transceiver pair and an eavesdropper, no interfering user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleUserInstance {
    /// |h_{U,D}|²: data link power gain.
    pub g_ud: f64,
    /// |h_{U,E}|²: wiretap link power gain.
    pub g_ue: f64,
    pub noise: f64,
    pub pmax: f64,
}

impl SingleUserInstance {
    pub fn new(g_ud: f64, g_ue: f64, noise: f64, pmax: f64) -> Result<Self, ModelError> {
        for (name, v) in [("g_ud", g_ud), ("g_ue", g_ue)] {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
            if v < 0.0 {
                return Err(ModelError::NegativeGain(name));
            }
        }
        if !noise.is_finite() || noise <= 0.0 {
            return Err(ModelError::NonPositiveNoise(noise));
        }
        if !pmax.is_finite() || pmax <= 0.0 {
            return Err(ModelError::NonPositivePower("pmax", pmax));
        }
        Ok(Self { g_ud, g_ue, noise, pmax })
    }
}

/// Single-user optimum: full power when the data link dominates the wiretap
/// link (the secrecy rate is then increasing in power), otherwise silence.
/// The `g_ud == g_ue` boundary resolves to silence (power saving).
pub fn solve_single_user(su: &SingleUserInstance) -> PowerAllocation {
    let (p, secrecy) = if su.g_ud > su.g_ue {
        let s = ((su.noise + su.pmax * su.g_ud) / (su.noise + su.pmax * su.g_ue)).log2();
        (su.pmax, s)
    } else {
        (0.0, 0.0)
    };
    PowerAllocation {
        p1: p,
        p2: 0.0,
        secrecy,
        qos_sinr: 0.0,
        sic_blocked: false,
        branch: Branch::SingleUser,
    }
}

/// Secrecy rate per watt of user 1's consumed power. Zero consumed power
/// only arises together with zero secrecy; defining the ratio as 0 there
/// keeps Monte-Carlo averages well-defined.
pub fn secrecy_energy_efficiency(secrecy: f64, consumed_p1: f64) -> f64 {
    if consumed_p1 == 0.0 {
        0.0
    } else {
        secrecy / consumed_p1
    }
}

/// Diagnostic variant over total consumed power (both users). Not used in
/// any benchmark comparison; the headline metric charges user 1's power
/// only.
pub fn secrecy_energy_efficiency_total(secrecy: f64, p1: f64, p2: f64) -> f64 {
    let total = p1 + p2;
    if total == 0.0 {
        0.0
    } else {
        secrecy / total
    }
}
