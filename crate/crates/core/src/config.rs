use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical units and numerical tolerances shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalConfig {
    /// Time between classical updates.
    pub tau: f64,
    /// Planck's constant in the chosen unit system.
    pub h: f64,
    /// Shift every eigenvalue up by h/(2T) when set.
    pub zero_point: bool,
    pub tolerance_abs: f64,
    pub tolerance_rel: f64,
    pub rng_seed: u64,
}

impl Default for GlobalConfig {
    fn default() -> Self {
        Self {
            tau: 1.0,
            h: 1.0,
            zero_point: false,
            tolerance_abs: 1e-9,
            tolerance_rel: 1e-10,
            rng_seed: 42,
        }
    }
}

impl GlobalConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("tau", self.tau)?;
        positive("h", self.h)?;
        positive("tolerance_abs", self.tolerance_abs)?;
        positive("tolerance_rel", self.tolerance_rel)
    }

    /// Update rate ν = 1/τ.
    pub fn rate(&self) -> f64 {
        1.0 / self.tau
    }
}
