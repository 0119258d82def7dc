use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;

use super::controller::{infer_increment, ControllerConfig};
use super::plant::{Plant, PlantParams};
use crate::error::{FuzzyError, Result};
use crate::method::InferenceMethod;

/// Outputs beyond this magnitude count as divergence.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ControlRecord {
    pub k: usize,
    /// Measured output `y(k)`.
    pub y: f64,
    pub e: f64,
    /// `y(k−1) − y(k)`.
    pub de: f64,
    pub du: f64,
    /// `u(k) = u(k−1) + ρ·Δu(k)`.
    pub u: f64,
    pub stalled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlTrace {
    pub backend: InferenceMethod,
    pub rho: f64,
    pub setpoint: f64,
    pub records: Vec<ControlRecord>,
}

impl ControlTrace {
    pub fn final_output(&self) -> Option<f64> {
        self.records.last().map(|r| r.y)
    }

    pub fn final_error(&self) -> Option<f64> {
        self.final_output().map(|y| (self.setpoint - y).abs())
    }

    /// First step at which `|y − r| < tol`.
    pub fn first_within(&self, tol: f64) -> Option<usize> {
        self.records
            .iter()
            .find(|r| (r.y - self.setpoint).abs() < tol)
            .map(|r| r.k)
    }

    pub fn max_abs_output(&self) -> f64 {
        self.records.iter().map(|r| r.y.abs()).fold(0.0, f64::max)
    }

    /// Number of bitwise-distinct increments over the run.
    pub fn distinct_increments(&self) -> usize {
        self.records
            .iter()
            .map(|r| r.du.to_bits())
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn stalled_steps(&self) -> usize {
        self.records.iter().filter(|r| r.stalled).count()
    }

    /// Columns `k,y,e,de,du,u` with six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,y,e,de,du,u\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{:.6},{:.6},{:.6},{:.6},{:.6}",
                r.k, r.y, r.e, r.de, r.du, r.u
            );
        }
        out
    }

    /// Line plot of `y(k)` against the setpoint.
    pub fn to_svg(&self) -> String {
        const W: f64 = 720.0;
        const H: f64 = 360.0;
        const M: f64 = 40.0;
        let n = self.records.len().max(2) as f64 - 1.0;
        let lo = self.records.iter().map(|r| r.y).fold(self.setpoint.min(0.0), f64::min);
        let hi = self.records.iter().map(|r| r.y).fold(self.setpoint.max(0.0), f64::max);
        let span = if hi > lo { (hi - lo) * 1.1 } else { 1.0 };
        let x = |k: f64| M + k / n * (W - 2.0 * M);
        let y = |v: f64| H - M - (v - lo) / span * (H - 2.0 * M);
        let points: Vec<String> = self
            .records
            .iter()
            .map(|r| format!("{:.2},{:.2}", x(r.k as f64), y(r.y)))
            .collect();
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<line x1="{M}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{M}" y1="{M}" x2="{M}" y2="{b}" stroke="black"/>"#,
            b = H - M,
            r = W - M
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{M}" y1="{s:.2}" x2="{r}" y2="{s:.2}" stroke="#999" stroke-dasharray="6 4"/>"##,
            s = y(self.setpoint),
            r = W - M
        );
        let _ = writeln!(
            svg,
            r##"<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{}"/>"##,
            points.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{M}" y="24" font-family="sans-serif" font-size="13">y(k) vs setpoint {} — {}, rho {}</text>"#,
            self.setpoint, self.backend, self.rho
        );
        svg.push_str("</svg>\n");
        svg
    }
}

/// Runs measure → fuzzify → infer → integrate → plant for `steps` samples.
pub fn run_closed_loop(
    plant: &PlantParams,
    controller: &ControllerConfig,
    steps: usize,
) -> Result<ControlTrace> {
    if steps == 0 {
        return Err(FuzzyError::InvalidParameter("steps must be at least 1".into()));
    }
    controller.validate()?;
    let mut sys = Plant::new(plant)?;
    let mut records = Vec::with_capacity(steps);
    let mut y_prev = sys.output();
    let mut u = 0.0;
    for k in 0..steps {
        let y = sys.output();
        let e = plant.setpoint - y;
        let de = y_prev - y;
        let inc = infer_increment(controller, e, de)?;
        u += controller.rho * inc.du;
        records.push(ControlRecord {
            k,
            y,
            e,
            de,
            du: inc.du,
            u,
            stalled: inc.stalled,
        });
        y_prev = y;
        let next = sys.step(u);
        if !next.is_finite() || next.abs() > DIVERGENCE_LIMIT {
            return Err(FuzzyError::Diverged { step: k, value: next });
        }
    }
    Ok(ControlTrace {
        backend: controller.backend,
        rho: controller.rho,
        setpoint: plant.setpoint,
        records,
    })
}
