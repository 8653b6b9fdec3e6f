//! Time-step selection.

use crate::config::TimeStepRule;
use crate::error::{Error, Result};

/// Effective spatial scale entering the step restriction.
#[inline]
fn scale(h: f64, rule: TimeStepRule) -> f64 {
    match rule {
        TimeStepRule::Cfl => h,
        TimeStepRule::Accuracy => h.powf(5.0 / 3.0),
    }
}

fn clip(dt: f64, t: f64, t_end: f64) -> f64 {
    let remaining = t_end - t;
    if dt >= remaining * (1.0 - 1e-12) {
        remaining
    } else {
        dt
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidWaveSpeed(alpha));
    }
    Ok(())
}

/// `cfl·dx/α` (or `cfl·dx^{5/3}/α`), clipped so the run lands on `t_end`.
pub fn compute_dt_1d(alpha: f64, dx: f64, cfl: f64, rule: TimeStepRule, t: f64, t_end: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 0.0 {
        return Ok(t_end - t);
    }
    Ok(clip(cfl * scale(dx, rule) / alpha, t, t_end))
}

/// `cfl / (α_x/dx + α_y/dy)` with the same scaling and clipping as 1D.
pub fn compute_dt_2d(
    alpha: [f64; 2],
    dx: f64,
    dy: f64,
    cfl: f64,
    rule: TimeStepRule,
    t: f64,
    t_end: f64,
) -> Result<f64> {
    check_alpha(alpha[0])?;
    check_alpha(alpha[1])?;
    let rate = alpha[0] / scale(dx, rule) + alpha[1] / scale(dy, rule);
    if rate == 0.0 {
        return Ok(t_end - t);
    }
    Ok(clip(cfl / rate, t, t_end))
}
