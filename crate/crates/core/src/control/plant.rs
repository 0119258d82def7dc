use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{FuzzyError, Result};

/// First-order lag with input dead time, sampled with a zero-order hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantParams {
    /// Lag time constant `T` in seconds.
    pub time_constant: f64,
    /// Input dead time `τ` in seconds; a multiple of the sample time.
    pub dead_time: f64,
    pub sample_time: f64,
    pub setpoint: f64,
    /// Output at `k = 0`.
    pub initial_output: f64,
}

impl Default for PlantParams {
    fn default() -> Self {
        PlantParams {
            time_constant: 20.0,
            dead_time: 2.0,
            sample_time: 1.0,
            setpoint: 40.0,
            initial_output: 0.0,
        }
    }
}

impl PlantParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(FuzzyError::InvalidParameter(msg.to_string()));
        if !(self.time_constant > 0.0 && self.time_constant.is_finite()) {
            return bad("time constant must be positive");
        }
        if !(self.sample_time > 0.0 && self.sample_time.is_finite()) {
            return bad("sample time must be positive");
        }
        if !(self.dead_time >= 0.0 && self.dead_time.is_finite()) {
            return bad("dead time must be non-negative");
        }
        let ratio = self.dead_time / self.sample_time;
        if (ratio - ratio.round()).abs() > 1e-9 {
            return bad("dead time must be a multiple of the sample time");
        }
        if !self.setpoint.is_finite() || !self.initial_output.is_finite() {
            return bad("setpoint and initial output must be finite");
        }
        Ok(())
    }

    /// Discrete pole `exp(−Δt / T)`.
    pub fn alpha(&self) -> f64 {
        (-self.sample_time / self.time_constant).exp()
    }

    /// Dead time in samples.
    pub fn delay_steps(&self) -> usize {
        (self.dead_time / self.sample_time).round() as usize
    }
}

/// One plant update: `y(k+1) = α·y(k) + (1−α)·u(k − d)`.
///
/// `inputs` runs oldest to newest with `u(k)` last; samples before the
/// start of the history count as zero.
pub fn plant_step(params: &PlantParams, y: f64, inputs: &[f64]) -> f64 {
    let alpha = params.alpha();
    let d = params.delay_steps();
    let delayed = inputs
        .len()
        .checked_sub(d + 1)
        .map_or(0.0, |i| inputs[i]);
    alpha * y + (1.0 - alpha) * delayed
}

/// Stateful plant with a bounded delay line.
#[derive(Debug, Clone)]
pub struct Plant {
    alpha: f64,
    y: f64,
    delay_line: VecDeque<f64>,
}

impl Plant {
    pub fn new(params: &PlantParams) -> Result<Self> {
        params.validate()?;
        let d = params.delay_steps();
        Ok(Plant {
            alpha: params.alpha(),
            y: params.initial_output,
            delay_line: std::iter::repeat_n(0.0, d).collect(),
        })
    }

    pub fn output(&self) -> f64 {
        self.y
    }

    /// Applies `u(k)` and returns `y(k+1)`.
    pub fn step(&mut self, u: f64) -> f64 {
        self.delay_line.push_back(u);
        let delayed = self.delay_line.pop_front().unwrap_or(u);
        self.y = self.alpha * self.y + (1.0 - self.alpha) * delayed;
        self.y
    }
}
