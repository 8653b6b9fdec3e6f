use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Hermite WENO with the derivative limiter applied in the time stages.
    LHweno,
    /// Classical fifth-order WENO on point values only.
    WenoJs,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::LHweno => "l-hweno",
            Scheme::WenoJs => "weno-js",
        }
    }

    pub fn evolves_derivatives(&self) -> bool {
        matches!(self, Scheme::LHweno)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l-hweno" | "lhweno" | "hweno" => Ok(Scheme::LHweno),
            "weno-js" | "wenojs" | "weno" => Ok(Scheme::WenoJs),
            _ => Err(Error::InvalidConfig(format!(
                "unknown scheme `{s}` (expected l-hweno or weno-js)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimiterMode {
    /// Limited derivatives feed the convex combinations of every RK stage.
    Staged,
    /// Derivatives are never modified.
    Off,
}

impl LimiterMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            LimiterMode::Staged => "staged",
            LimiterMode::Off => "off",
        }
    }
}

impl fmt::Display for LimiterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LimiterMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "staged" | "on" => Ok(LimiterMode::Staged),
            "off" => Ok(LimiterMode::Off),
            _ => Err(Error::InvalidConfig(format!(
                "unknown limiter mode `{s}` (expected staged or off)"
            ))),
        }
    }
}

/// How the time increment scales with the mesh size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeStepRule {
    /// `dt = cfl * dx / alpha`.
    Cfl,
    /// `dt = cfl * dx^(5/3) / alpha`, so the third-order time error shrinks
    /// like `dx^5` and convergence studies measure the spatial order.
    Accuracy,
}

impl TimeStepRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            TimeStepRule::Cfl => "cfl",
            TimeStepRule::Accuracy => "accuracy",
        }
    }
}

impl FromStr for TimeStepRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cfl" => Ok(TimeStepRule::Cfl),
            "accuracy" => Ok(TimeStepRule::Accuracy),
            _ => Err(Error::InvalidConfig(format!(
                "unknown time-step rule `{s}` (expected cfl or accuracy)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub cfl: f64,
    /// Linear weights of the flux reconstruction (quintic, left quadratic,
    /// right quadratic).
    pub gamma_weights: [f64; 3],
    /// Linear weights of the derivative limiter (quartic, left linear, right
    /// linear).
    pub d_weights: [f64; 3],
    pub epsilon: f64,
    pub limiter_mode: LimiterMode,
    pub scheme: Scheme,
    pub time_step: TimeStepRule,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            cfl: 0.6,
            gamma_weights: [0.98, 0.01, 0.01],
            d_weights: [0.98, 0.01, 0.01],
            epsilon: 1e-6,
            limiter_mode: LimiterMode::Staged,
            scheme: Scheme::LHweno,
            time_step: TimeStepRule::Cfl,
        }
    }
}

fn check_weights(name: &str, w: &[f64; 3]) -> Result<()> {
    if w.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "{name} weights must be positive, got {w:?}"
        )));
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidConfig(format!(
            "{name} weights must sum to 1, got {sum}"
        )));
    }
    Ok(())
}

impl SchemeConfig {
    pub fn weno_js() -> Self {
        Self {
            scheme: Scheme::WenoJs,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        check_weights("gamma", &self.gamma_weights)?;
        check_weights("d", &self.d_weights)
    }
}
