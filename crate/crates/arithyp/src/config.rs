//! Run configuration, read from a TOML file of `key = value` lines.

use std::path::Path;

use arithyp_core::geometry::RmaxMode;
use serde::{Deserialize, Serialize};

use crate::AppError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RmaxSetting {
    PaperH6,
    Dim3,
}

impl From<RmaxSetting> for RmaxMode {
    fn from(s: RmaxSetting) -> Self {
        match s {
            RmaxSetting::PaperH6 => RmaxMode::PaperH6,
            RmaxSetting::Dim3 => RmaxMode::Dim3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Constant in the isometry index bound `A·d^e`.
    #[serde(rename = "A")]
    pub a: f64,
    /// Exponent constant in the prime-norm bound `N(p) ≤ d_k^{A1}`.
    #[serde(rename = "A1")]
    pub a1: f64,
    /// `[k_A : k]`.
    pub deg_ka: u32,
    /// Assert that the quaternion algebra has type number one.
    pub type_number_one: bool,
    /// Decimal digits for high-precision geometry.
    pub precision: u32,
    /// Replace the computed finite ramification by these prime norms.
    pub ram_override: Option<Vec<u64>>,
    pub r_max_mode: RmaxSetting,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            a: 1.0,
            a1: 1.0,
            deg_ka: 1,
            type_number_one: false,
            precision: 60,
            ram_override: None,
            r_max_mode: RmaxSetting::PaperH6,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config, AppError> {
        let c: Config =
            toml::from_str(text).map_err(|e| AppError::Input(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), AppError> {
        if !(self.a > 0.0) || !(self.a1 > 0.0) {
            return Err(AppError::Input("A and A1 must be positive".into()));
        }
        if self.deg_ka == 0 {
            return Err(AppError::Input("deg_ka must be at least 1".into()));
        }
        if !(17..=2000).contains(&self.precision) {
            return Err(AppError::Input(
                "precision must lie between 17 and 2000 digits".into(),
            ));
        }
        Ok(())
    }
}
