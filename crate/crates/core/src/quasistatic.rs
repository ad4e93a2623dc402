//! Slowly varying boundary data: each instant is an independent equilibrium
//! solve, with data interpolated piecewise-linearly in τ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::{solve_panel, BoundaryData, Datum, PanelSolution, PanelTemplate, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSample {
    pub tau: f64,
    pub data: BoundaryData,
}

/// Boundary data at strictly increasing τ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedule {
    samples: Vec<ScheduleSample>,
}

impl Schedule {
    pub fn new(samples: Vec<ScheduleSample>) -> Result<Self> {
        let first = samples
            .first()
            .ok_or_else(|| Error::InvalidInput("schedule is empty".into()))?;
        let variant = first.data.variant();
        for s in &samples {
            if !s.tau.is_finite() || !s.data.is_finite() {
                return Err(Error::NonFiniteData(format!("schedule sample at tau = {}", s.tau)));
            }
            if s.data.variant() != variant {
                return Err(Error::InvalidInput(
                    "schedule mixes Dbar and phibar2 samples".into(),
                ));
            }
        }
        if let Some(w) = samples.windows(2).find(|w| w[1].tau <= w[0].tau) {
            return Err(Error::InvalidInput(format!(
                "tau must increase strictly ({} then {})",
                w[0].tau, w[1].tau
            )));
        }
        Ok(Schedule { samples })
    }

    pub fn samples(&self) -> &[ScheduleSample] {
        &self.samples
    }

    pub fn variant(&self) -> Variant {
        self.samples[0].data.variant()
    }

    pub fn span(&self) -> (f64, f64) {
        (self.samples[0].tau, self.samples[self.samples.len() - 1].tau)
    }

    /// Piecewise-linear data at τ; exact at the sample points.
    pub fn data_at(&self, tau: f64) -> Result<BoundaryData> {
        let (start, end) = self.span();
        if !(tau >= start && tau <= end) {
            return Err(Error::OutOfSchedule { tau, start, end });
        }
        // first sample with tau_k >= tau
        let k = self.samples.partition_point(|s| s.tau < tau);
        let hi = &self.samples[k];
        if hi.tau == tau || k == 0 {
            return Ok(hi.data);
        }
        let lo = &self.samples[k - 1];
        let w = (tau - lo.tau) / (hi.tau - lo.tau);
        Ok(lo.data.combine(1.0 - w, &hi.data, w))
    }
}

/// Solves at each requested instant, in input order.
pub fn sweep(
    template: &PanelTemplate,
    sched: &Schedule,
    times: &[f64],
) -> Result<Vec<(f64, PanelSolution)>> {
    times
        .iter()
        .map(|&tau| {
            let spec = template.with_data(sched.data_at(tau)?)?;
            Ok((tau, solve_panel(&spec)?))
        })
        .collect()
}

/// Largest admissible |d(datum)/dτ| for each of the ten data, in data order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateLimits(pub [f64; 10]);

impl RateLimits {
    pub fn uniform(limit: f64) -> Self {
        RateLimits([limit; 10])
    }
}

/// One schedule interval whose rate exceeds the limit for one datum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlownessFlag {
    /// Index of the interval's left sample.
    pub interval: usize,
    pub datum: Datum,
    pub rate: f64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlownessReport {
    pub flags: Vec<SlownessFlag>,
}

impl SlownessReport {
    pub fn is_slow(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Flags intervals whose finite-difference data rate exceeds the limit.
/// Advisory only: nothing here prevents solving.
pub fn slowness_check(sched: &Schedule, limits: &RateLimits) -> SlownessReport {
    let names = Datum::ordered(sched.variant());
    let mut flags = Vec::new();
    for (i, w) in sched.samples.windows(2).enumerate() {
        let (a, b) = (w[0].data.to_array(), w[1].data.to_array());
        let dt = w[1].tau - w[0].tau;
        for j in 0..10 {
            let rate = ((b[j] - a[j]) / dt).abs();
            if rate > limits.0[j] {
                flags.push(SlownessFlag {
                    interval: i,
                    datum: names[j],
                    rate,
                    limit: limits.0[j],
                });
            }
        }
    }
    SlownessReport { flags }
}
