//! Scenario files: a flat JSON object naming the six link gains, noise,
//! budgets, the QoS floor as either `beta` (rate) or `gamma` (SINR), never
//! both, and the scenario to solve.

use serde::{Deserialize, Serialize};

use wic::benchmark::SingleUserInstance;
use wic::model::QosRequirement;
use wic::{ChannelInstance, PowerBudget, Scenario};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenario: String,
    pub g11: f64,
    pub g21: f64,
    pub g12: f64,
    pub g22: f64,
    pub g1e: f64,
    pub g2e: f64,
    pub noise: f64,
    pub pmax1: f64,
    pub pmax2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

/// Fully validated scenario ready to solve.
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub channel: ChannelInstance,
    pub budget: PowerBudget,
    pub qos: QosRequirement,
    pub file: ScenarioFile,
}

impl LoadedScenario {
    pub fn single_user(&self) -> SingleUserInstance {
        SingleUserInstance {
            g_ud: self.channel.g11,
            g_ue: self.channel.g1e,
            noise: self.channel.noise,
            pmax: self.budget.pmax1,
        }
    }
}

pub fn load(path: &std::path::Path) -> Result<LoadedScenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<LoadedScenario, CliError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let scenario = Scenario::parse(&file.scenario)
        .ok_or_else(|| CliError::Parse(format!("unknown scenario {:?}", file.scenario)))?;
    let channel = ChannelInstance::new(
        file.g11, file.g21, file.g12, file.g22, file.g1e, file.g2e, file.noise,
    )
    .map_err(|e| CliError::Parse(e.to_string()))?;
    let budget =
        PowerBudget::new(file.pmax1, file.pmax2).map_err(|e| CliError::Parse(e.to_string()))?;
    let qos = match (file.beta, file.gamma) {
        (Some(_), Some(_)) => {
            return Err(CliError::Parse(
                "scenario file sets both `beta` and `gamma`; supply exactly one".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Parse(
                "scenario file must set `beta` or `gamma`".into(),
            ))
        }
        (Some(beta), None) => {
            QosRequirement::from_beta(beta).map_err(|e| CliError::Parse(e.to_string()))?
        }
        (None, Some(gamma)) => {
            QosRequirement::from_gamma(gamma).map_err(|e| CliError::Parse(e.to_string()))?
        }
    };
    Ok(LoadedScenario { scenario, channel, budget, qos, file })
}

/// Canonical JSON echo; re-parses to an identical instance.
pub fn dump(file: &ScenarioFile) -> String {
    serde_json::to_string_pretty(file).expect("scenario serializes")
}
