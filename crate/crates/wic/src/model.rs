//! Physical model shared by every solver: channel instances, per-link rates,
//! SIC-regime classification, and secrecy-rate evaluation.
//!
//! All six links are stored as power gains `|h|²`; every rate formula in this
//! problem family consumes only squared magnitudes, so complex coefficients
//! are never materialized. All operations are pure functions of immutable
//! inputs and safe to call concurrently.

use std::fmt;

/// A two-user wiretap interference channel draw: six link power gains plus
/// the (common) receiver noise power, all in linear units.
///
/// Gain naming: `g{i}{j}` is the power gain from user `i` to destination `j`,
/// and `g{i}e` is the gain from user `i` to the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelInstance {
    /// |h_{U1,D1}|²: user 1 to its own destination.
    pub g11: f64,
    /// |h_{U2,D1}|²: user 2 interfering at destination 1.
    pub g21: f64,
    /// |h_{U1,D2}|²: user 1 interfering at destination 2.
    pub g12: f64,
    /// |h_{U2,D2}|²: user 2 to its own destination.
    pub g22: f64,
    /// |h_{U1,E}|²: user 1 to the eavesdropper.
    pub g1e: f64,
    /// |h_{U2,E}|²: user 2 to the eavesdropper.
    pub g2e: f64,
    /// Noise power σ² at every receiver (linear, > 0).
    pub noise: f64,
}

/// Peak transmit powers for the two users, in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    pub pmax1: f64,
    pub pmax2: f64,
}

/// User 2's quality-of-service requirement: a rate floor `beta` in bits/s/Hz
/// and the equivalent SINR floor `gamma = 2^beta - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QosRequirement {
    pub beta: f64,
    pub gamma: f64,
}

/// Which side of the threshold `omega` user 1's power must be on so that the
/// eavesdropper cannot decode (and cancel) user 2's signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SicCase {
    /// Cancellation is blocked for `P1 >= omega`.
    BlockAbove,
    /// Cancellation is blocked for every `P1`.
    BlockAlways,
    /// Cancellation is blocked for `P1 <= omega`.
    BlockBelow,
    /// No `P1` blocks cancellation; the eavesdropper always sees user 1
    /// interference-free.
    Unblockable,
}

impl SicCase {
    /// Conventional short label for reports.
    pub fn label(self) -> &'static str {
        match self {
            SicCase::BlockAbove => "7a",
            SicCase::BlockAlways => "7b",
            SicCase::BlockBelow => "7c",
            SicCase::Unblockable => "7d",
        }
    }
}

impl fmt::Display for SicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SicCase::BlockAbove => "block-above",
            SicCase::BlockAlways => "block-always",
            SicCase::BlockBelow => "block-below",
            SicCase::Unblockable => "unblockable",
        };
        write!(f, "{name} ({})", self.label())
    }
}

/// SIC-blocking classification of a channel instance.
///
/// The primitive blocking condition is `P1 * b_dd > a_dd` where
/// `a_dd = noise * (g2e - g22)` and `b_dd = g22 * g1e - g12 * g2e`; the sign
/// pattern of the pair decides the case and `omega = a_dd / b_dd` is the
/// threshold when one exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SicRegime {
    pub case: SicCase,
    /// Present exactly for `BlockAbove` and `BlockBelow`; positive.
    pub omega: Option<f64>,
    pub a_dd: f64,
    pub b_dd: f64,
}

impl SicRegime {
    /// Whether the eavesdropper's cancellation is blocked at this `p1`,
    /// treating the threshold itself as blocked (closed boundary).
    pub fn blocked_at(&self, p1: f64) -> bool {
        match self.case {
            SicCase::BlockAlways => true,
            SicCase::Unblockable => false,
            SicCase::BlockAbove => p1 >= self.omega.unwrap(),
            SicCase::BlockBelow => p1 <= self.omega.unwrap(),
        }
    }
}

/// Rejected constructor input for the model types.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    NonFinite(&'static str),
    NegativeGain(&'static str),
    NonPositiveNoise(f64),
    NonPositivePower(&'static str, f64),
    NegativeQos(f64),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NonFinite(field) => write!(f, "field `{field}` must be finite"),
            ModelError::NegativeGain(field) => write!(f, "gain `{field}` must be >= 0"),
            ModelError::NonPositiveNoise(v) => write!(f, "noise power must be > 0, got {v}"),
            ModelError::NonPositivePower(field, v) => {
                write!(f, "power budget `{field}` must be > 0, got {v}")
            }
            ModelError::NegativeQos(v) => write!(f, "QoS threshold must be >= 0, got {v}"),
        }
    }
}

impl std::error::Error for ModelError {}

impl ChannelInstance {
    /// Build a channel instance, rejecting negative or non-finite gains and
    /// non-positive noise.
    pub fn new(
        g11: f64,
        g21: f64,
        g12: f64,
        g22: f64,
        g1e: f64,
        g2e: f64,
        noise: f64,
    ) -> Result<Self, ModelError> {
        let fields = [
            ("g11", g11),
            ("g21", g21),
            ("g12", g12),
            ("g22", g22),
            ("g1e", g1e),
            ("g2e", g2e),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
            if v < 0.0 {
                return Err(ModelError::NegativeGain(name));
            }
        }
        if !noise.is_finite() {
            return Err(ModelError::NonFinite("noise"));
        }
        if noise <= 0.0 {
            return Err(ModelError::NonPositiveNoise(noise));
        }
        Ok(Self { g11, g21, g12, g22, g1e, g2e, noise })
    }

    /// User 1's rate to its destination: `log2(1 + P1 g11 / (P2 g21 + noise))`.
    pub fn rate_u1(&self, p1: f64, p2: f64) -> f64 {
        sinr_rate(p1 * self.g11, p2 * self.g21 + self.noise)
    }

    /// User 2's rate to its destination: `log2(1 + P2 g22 / (P1 g12 + noise))`.
    pub fn rate_u2(&self, p1: f64, p2: f64) -> f64 {
        sinr_rate(p2 * self.g22, p1 * self.g12 + self.noise)
    }

    /// SINR of user 2's link at destination 2.
    pub fn qos_sinr(&self, p1: f64, p2: f64) -> f64 {
        p2 * self.g22 / (p1 * self.g12 + self.noise)
    }

    /// Whether user 2's SINR meets `gamma` up to a relative tolerance.
    pub fn qos_satisfied(&self, p1: f64, p2: f64, gamma: f64, tol: f64) -> bool {
        self.qos_sinr(p1, p2) >= gamma * (1.0 - tol)
    }

    /// Rate at which the eavesdropper wiretaps user 1.
    ///
    /// When cancellation is blocked, user 2's signal stays as interference:
    /// `log2(1 + P1 g1e / (P2 g2e + noise))`. Otherwise the eavesdropper
    /// decodes and subtracts it first and sees user 1 interference-free:
    /// `log2(1 + P1 g1e / noise)`.
    pub fn eavesdropper_rate(&self, p1: f64, p2: f64, sic_blocked: bool) -> f64 {
        let den = if sic_blocked { p2 * self.g2e + self.noise } else { self.noise };
        sinr_rate(p1 * self.g1e, den)
    }

    /// Signed secrecy rate of user 1: data rate minus wiretap rate. May be
    /// negative; exposed for feasibility diagnostics.
    pub fn secrecy_rate(&self, p1: f64, p2: f64, sic_blocked: bool) -> f64 {
        self.rate_u1(p1, p2) - self.eavesdropper_rate(p1, p2, sic_blocked)
    }

    /// Secrecy rate clamped at zero, the quantity every objective and report
    /// uses.
    pub fn clamped_secrecy_rate(&self, p1: f64, p2: f64, sic_blocked: bool) -> f64 {
        self.secrecy_rate(p1, p2, sic_blocked).max(0.0)
    }

    /// Classify how user 1's power controls the eavesdropper's ability to
    /// cancel user 2's signal.
    ///
    /// Strict sign patterns of `(a_dd, b_dd)` map to the four cases; zero
    /// signs are resolved by the primitive inequality `P1 * b_dd > a_dd`
    /// (nothing blocks when it can never hold, everything blocks when it
    /// always holds for positive `P1`).
    pub fn sic_regime(&self) -> SicRegime {
        let a_dd = self.noise * (self.g2e - self.g22);
        let b_dd = self.g22 * self.g1e - self.g12 * self.g2e;
        let case = if a_dd > 0.0 && b_dd > 0.0 {
            SicCase::BlockAbove
        } else if a_dd < 0.0 && b_dd > 0.0 {
            SicCase::BlockAlways
        } else if a_dd < 0.0 && b_dd < 0.0 {
            SicCase::BlockBelow
        } else if a_dd > 0.0 && b_dd < 0.0 {
            SicCase::Unblockable
        } else if b_dd > 0.0 {
            // a_dd == 0: P1 * b_dd > 0 holds for every positive P1.
            SicCase::BlockAlways
        } else if b_dd < 0.0 {
            // a_dd == 0: P1 * b_dd <= 0 never exceeds 0.
            SicCase::Unblockable
        } else if a_dd < 0.0 {
            // b_dd == 0: 0 > a_dd always.
            SicCase::BlockAlways
        } else {
            // b_dd == 0, a_dd >= 0: 0 > a_dd never.
            SicCase::Unblockable
        };
        let omega = match case {
            SicCase::BlockAbove | SicCase::BlockBelow => Some(a_dd / b_dd),
            _ => None,
        };
        SicRegime { case, omega, a_dd, b_dd }
    }
}

/// `log2(1 + signal / interference_plus_noise)`, zero for zero signal.
fn sinr_rate(signal: f64, interference_plus_noise: f64) -> f64 {
    if signal == 0.0 {
        return 0.0;
    }
    (signal / interference_plus_noise).ln_1p() / std::f64::consts::LN_2
}

impl PowerBudget {
    pub fn new(pmax1: f64, pmax2: f64) -> Result<Self, ModelError> {
        if !pmax1.is_finite() || !pmax2.is_finite() {
            return Err(ModelError::NonFinite("pmax"));
        }
        if pmax1 <= 0.0 {
            return Err(ModelError::NonPositivePower("pmax1", pmax1));
        }
        if pmax2 <= 0.0 {
            return Err(ModelError::NonPositivePower("pmax2", pmax2));
        }
        Ok(Self { pmax1, pmax2 })
    }
}

impl QosRequirement {
    /// From a rate floor in bits/s/Hz; `gamma = 2^beta - 1`.
    pub fn from_beta(beta: f64) -> Result<Self, ModelError> {
        if !beta.is_finite() {
            return Err(ModelError::NonFinite("beta"));
        }
        if beta < 0.0 {
            return Err(ModelError::NegativeQos(beta));
        }
        Ok(Self { beta, gamma: beta.exp2() - 1.0 })
    }

    /// From an SINR floor; `beta = log2(1 + gamma)`.
    pub fn from_gamma(gamma: f64) -> Result<Self, ModelError> {
        if !gamma.is_finite() {
            return Err(ModelError::NonFinite("gamma"));
        }
        if gamma < 0.0 {
            return Err(ModelError::NegativeQos(gamma));
        }
        Ok(Self { beta: gamma.ln_1p() / std::f64::consts::LN_2, gamma })
    }
}
