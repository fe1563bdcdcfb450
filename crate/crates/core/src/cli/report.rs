//! Output documents. Every JSON document carries [`SCHEMA_VERSION`].

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::input::InputSpec;
use crate::correlations::{DiscordConfig, DiscordReport, LeftZeroCondition, ZeroDiscordCertificate};
use crate::discrimination::{Alpha1SweepRow, GammaSweepRow, OptimumReport, TrialStats};
use crate::ensembles::Construction;
use crate::separability::{ConditionCheck, PptResult, SeparableDecomposition};
use crate::{DensityMatrix, Tolerances};

pub const SCHEMA_VERSION: &str = "assisted-usd/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CommandName {
    Analyze,
    Sweep,
    Montecarlo,
    Discord,
    Ppt,
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Gamma,
    Alpha1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SideSelection {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

/// Everything a run depended on, echoed into its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolvedConfig {
    pub command: CommandName,
    pub format: Format,
    pub input_source: Option<String>,
    pub input: Option<InputSpec>,
    pub out: Option<String>,
    pub tolerances: Tolerances,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub d: Option<usize>,
    pub gamma: Option<f64>,
    pub grid: Option<GridSpec>,
    pub mode: Option<SweepMode>,
    pub side: Option<SideSelection>,
    pub discord: Option<DiscordConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document<T> {
    pub schema_version: String,
    pub config: ResolvedConfig,
    pub result: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorObject {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDocument {
    pub schema_version: String,
    pub error: ErrorObject,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSummary {
    pub dims: (usize, usize),
    pub construction: Option<Construction>,
    /// SHA-256 over the row-major entries, each as little-endian `re` then `im`.
    pub checksum_sha256: String,
    pub gram_residual: Option<f64>,
}

impl StateSummary {
    pub fn new(rho: &DensityMatrix, construction: Option<Construction>, gram_residual: Option<f64>) -> Self {
        Self { dims: rho.dims(), construction, checksum_sha256: checksum(rho), gram_residual }
    }
}

pub fn checksum(rho: &DensityMatrix) -> String {
    let mut hasher = Sha256::new();
    for z in rho.mat().entries() {
        hasher.update(z.re.to_le_bytes());
        hasher.update(z.im.to_le_bytes());
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionSummary {
    pub weights: Vec<f64>,
    pub reconstruction_residual: f64,
    pub min_factor_eigenvalue: f64,
}

impl From<&SeparableDecomposition> for DecompositionSummary {
    fn from(d: &SeparableDecomposition) -> Self {
        let d = d.normalize();
        Self {
            weights: d.terms.iter().map(|t| t.weight).collect(),
            reconstruction_residual: d.reconstruction_residual,
            min_factor_eigenvalue: d.min_factor_eigenvalue,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionSummary {
    pub separability: ConditionCheck,
    pub two_state: Option<ConditionCheck>,
    pub zero_left_discord: LeftZeroCondition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscordEntry {
    pub report: Option<DiscordReport>,
    pub omitted_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscordPair {
    pub left: Option<DiscordEntry>,
    pub right: Option<DiscordEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificates {
    pub left: ZeroDiscordCertificate,
    pub right: ZeroDiscordCertificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeReport {
    pub state: StateSummary,
    pub success_probability: Option<f64>,
    pub ppt: PptResult,
    pub conditions: Option<ConditionSummary>,
    pub decomposition: Option<DecompositionSummary>,
    /// False when the closed-form separability condition holds but PPT fails.
    pub consistent: bool,
    pub discord: DiscordPair,
    pub certificates: Certificates,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PptReport {
    pub state: StateSummary,
    pub ppt: PptResult,
    pub condition: Option<ConditionCheck>,
    pub decomposition: Option<DecompositionSummary>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscordCommandReport {
    pub state: StateSummary,
    pub discord: DiscordPair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepRows {
    Gamma(Vec<GammaSweepRow>),
    Alpha1(Vec<Alpha1SweepRow>),
}

pub type AnalyzeDocument = Document<AnalyzeReport>;
pub type PptDocument = Document<PptReport>;
pub type DiscordDocument = Document<DiscordCommandReport>;
pub type OptimalDocument = Document<OptimumReport>;
pub type SweepDocument = Document<SweepRows>;
pub type MonteCarloDocument = Document<TrialStats>;

/// CSV text: `#` comment lines with the schema and config, a header row,
/// then data rows.
pub fn csv(config: &ResolvedConfig, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("# schema_version={SCHEMA_VERSION}\n");
    out.push_str(&format!("# config={}\n", serde_json::to_string(config).expect("config serializes")));
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
