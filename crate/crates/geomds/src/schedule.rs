//! Learning-rate schedules for the stress optimizer.

use serde::{Deserialize, Serialize};

/// How the learning rate decays over epochs. Every schedule is bounded above
/// by the configured cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleKind {
    /// Constant learning rate.
    Fixed { eta: f64 },
    /// Exponential decay `cap * exp(-decay * t)` that switches to a `1/t`
    /// tail, continuous at the switch point, once it falls below `threshold`.
    Piecewise { decay: f64, threshold: f64 },
    /// `cap / (1 + t)`.
    FracT,
    /// `cap / sqrt(1 + t)`.
    FracSqrtT,
}

impl ScheduleKind {
    pub fn fixed() -> Self {
        ScheduleKind::Fixed { eta: 0.05 }
    }

    pub fn piecewise() -> Self {
        ScheduleKind::Piecewise {
            decay: 0.05,
            threshold: 0.01,
        }
    }
}

impl Default for ScheduleKind {
    fn default() -> Self {
        ScheduleKind::piecewise()
    }
}

impl std::str::FromStr for ScheduleKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fixed" => Ok(ScheduleKind::fixed()),
            "piecewise" => Ok(ScheduleKind::piecewise()),
            "frac-t" | "frac_t" => Ok(ScheduleKind::FracT),
            "frac-sqrt-t" | "frac_sqrt_t" => Ok(ScheduleKind::FracSqrtT),
            other => Err(format!(
                "unknown schedule '{other}' (expected fixed, piecewise, frac-t, or frac-sqrt-t)"
            )),
        }
    }
}

/// Learning rate at epoch `t` (0-based). Always positive and at most
/// `lr_cap`.
pub fn eta_at(kind: ScheduleKind, lr_cap: f64, t: usize) -> f64 {
    let t = t as f64;
    match kind {
        ScheduleKind::Fixed { eta } => eta.min(lr_cap),
        ScheduleKind::FracT => lr_cap / (1.0 + t),
        ScheduleKind::FracSqrtT => lr_cap / (1.0 + t).sqrt(),
        ScheduleKind::Piecewise { decay, threshold } => {
            let exp_value = lr_cap * (-decay * t).exp();
            if exp_value >= threshold {
                exp_value
            } else {
                // first epoch at which the exponential part dips below the
                // threshold, then a 1/t tail pinned to that value
                let switch = ((lr_cap / threshold).ln() / decay).max(0.0).ceil();
                let eta_switch = lr_cap * (-decay * switch).exp();
                eta_switch * (1.0 + switch) / (1.0 + t)
            }
        }
    }
}
