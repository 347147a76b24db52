//! Pipeline, reports and command-line front end for `arithyp-core`.

pub mod config;
pub mod corpus;
pub mod fixtures;
pub mod hp;
pub mod pipeline;
pub mod report;

use arithyp_core::Error;

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl AppError {
    /// Attach the name of the pipeline stage that produced `e`.
    pub fn at(stage: &str, e: Error) -> AppError {
        match e {
            Error::Input(m) => AppError::Input(format!("[{stage}] {m}")),
            Error::Internal(m) => AppError::Internal(format!("[{stage}] {m}")),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Input(_) => 2,
            AppError::Internal(_) => 3,
        }
    }
}

/// Parse `z1,z2,z3,z4` (positive integers) into `⟨z1,z2,z3,−z4⟩`.
pub fn parse_form(s: &str) -> Result<arithyp_core::DiagForm, AppError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(AppError::Input(format!(
            "expected four comma-separated integers, got {s:?}"
        )));
    }
    let mut z = Vec::with_capacity(4);
    for p in parts {
        let v: i64 = p
            .parse()
            .map_err(|_| AppError::Input(format!("not an integer: {p:?}")))?;
        if v <= 0 {
            return Err(AppError::Input(format!(
                "coefficients must be positive, got {v}"
            )));
        }
        z.push(v);
    }
    z[3] = -z[3];
    arithyp_core::DiagForm::from_integers(&z).map_err(|e| AppError::at("parse", e))
}
