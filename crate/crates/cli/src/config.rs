//! Experiment manifest: one TOML file with a table per command. Every key
//! mirrors a command-line flag, and flags win over the file.

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub ml: MlSection,
    #[serde(default)]
    pub forward: ForwardSection,
    #[serde(default)]
    pub backward: BackwardSection,
    #[serde(default)]
    pub zeros: ZerosSection,
    #[serde(default)]
    pub conjecture: ConjectureSection,
    #[serde(default)]
    pub figures: FiguresSection,
    #[serde(default)]
    pub verify: VerifySection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MlSection {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub z: Option<String>,
    pub tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForwardSection {
    pub case: Option<String>,
    pub alpha: Option<f64>,
    pub spectrum: Option<PathBuf>,
    pub u0: Option<PathBuf>,
    pub u1: Option<PathBuf>,
    pub horizon: Option<f64>,
    pub times: Option<Vec<f64>>,
    pub n_times: Option<usize>,
    pub s: Option<f64>,
    pub oracle_steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackwardSection {
    pub case: Option<String>,
    pub alpha: Option<f64>,
    pub spectrum: Option<PathBuf>,
    pub u_t: Option<PathBuf>,
    pub v_t: Option<PathBuf>,
    pub horizon: Option<f64>,
    pub denom_floor: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZerosSection {
    pub alpha: Option<f64>,
    pub t_max: Option<f64>,
    pub n_points: Option<usize>,
    pub tol: Option<f64>,
    pub spectrum: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjectureSection {
    pub which: Option<u8>,
    pub alpha: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub n_points: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiguresSection {
    pub which: Option<String>,
    pub n_points: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub constants: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
