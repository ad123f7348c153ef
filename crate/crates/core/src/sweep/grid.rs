use serde::{Deserialize, Deserializer, Serialize};
use std::f64::consts::FRAC_PI_4;
use std::fmt;

use super::SweepError;
use crate::params::RouterParams;
use crate::scattering::Port;

/// A parameter that a sweep axis may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxisParam {
    #[serde(rename = "g_a")]
    GA,
    #[serde(rename = "g_b")]
    GB,
    #[serde(rename = "g_c")]
    GC,
    #[serde(rename = "k_a")]
    KA,
    #[serde(rename = "n_junction")]
    NJunction,
}

impl AxisParam {
    pub fn name(self) -> &'static str {
        match self {
            AxisParam::GA => "g_a",
            AxisParam::GB => "g_b",
            AxisParam::GC => "g_c",
            AxisParam::KA => "k_a",
            AxisParam::NJunction => "n_junction",
        }
    }

    pub fn is_coupling(self) -> bool {
        matches!(self, AxisParam::GA | AxisParam::GB | AxisParam::GC)
    }
}

impl fmt::Display for AxisParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AxisParam {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "g_a" => Ok(AxisParam::GA),
            "g_b" => Ok(AxisParam::GB),
            "g_c" => Ok(AxisParam::GC),
            "k_a" => Ok(AxisParam::KA),
            "n_junction" | "N" => Ok(AxisParam::NJunction),
            other => Err(SweepError::Invalid(format!("unknown axis `{other}`"))),
        }
    }
}

/// Accepts a number or an angle literal such as "pi/4".
pub(crate) fn angle<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(f64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Number(x) => Ok(x),
        Raw::Text(s) => crate::kinematics::parse_angle(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("cannot parse `{s}` as an angle"))),
    }
}

/// `count` evenly spaced values of one parameter, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: AxisParam,
    #[serde(deserialize_with = "angle")]
    pub min: f64,
    #[serde(deserialize_with = "angle")]
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: AxisParam, min: f64, max: f64, count: usize) -> Self {
        Self { param, min, max, count }
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }

    fn validate(&self) -> Result<(), SweepError> {
        let bad = |reason: String| Err(SweepError::Invalid(format!("axis {}: {reason}", self.param)));
        if self.count < 2 {
            return bad(format!("count must be >= 2 (got {})", self.count));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return bad(format!("range [{}, {}] is not ordered", self.min, self.max));
        }
        match self.param {
            p if p.is_coupling() && self.min < 0.0 => bad("couplings must be >= 0".into()),
            AxisParam::KA if !(self.min > 0.0 && self.max < std::f64::consts::PI) => {
                bad("k_a must lie inside (0, pi)".into())
            }
            AxisParam::NJunction => {
                let step = self.step();
                if self.min < 1.0 || self.min.fract() != 0.0 || step.fract() != 0.0 || step < 1.0 {
                    bad("n_junction needs integer values >= 1 with an integer step".into())
                } else if self.max > f64::from(u32::MAX) {
                    bad("n_junction too large".into())
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// Which incidence ports a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PortSelection {
    FromA,
    FromB,
    Both,
}

impl PortSelection {
    pub fn ports(self) -> &'static [Port] {
        match self {
            PortSelection::FromA => &[Port::FromA],
            PortSelection::FromB => &[Port::FromB],
            PortSelection::Both => &[Port::FromA, Port::FromB],
        }
    }
}

fn default_k() -> f64 {
    FRAC_PI_4
}

/// Axes, port and fixed wavenumber of a sweep; the base parameters come from
/// the surrounding configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Wavenumber used when `k_a` is not an axis.
    #[serde(default = "default_k", deserialize_with = "angle")]
    pub k_a: f64,
    pub axes: Vec<Axis>,
    pub port: PortSelection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub base: RouterParams,
    #[serde(default = "default_k", deserialize_with = "angle")]
    pub k_a: f64,
    pub axes: Vec<Axis>,
    pub port: PortSelection,
}

impl SweepGrid {
    pub fn new(base: RouterParams, spec: GridSpec) -> Self {
        Self { base, k_a: spec.k_a, axes: spec.axes, port: spec.port }
    }

    /// The three coupling axes over [lo, hi] with `count` points each.
    pub fn couplings_cube(base: RouterParams, k_a: f64, lo: f64, hi: f64, count: usize, port: PortSelection) -> Self {
        let axes =
            [AxisParam::GA, AxisParam::GB, AxisParam::GC].into_iter().map(|p| Axis::new(p, lo, hi, count)).collect();
        Self { base, k_a, axes, port }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        self.base.validate()?;
        if self.axes.is_empty() || self.axes.len() > 4 {
            return Err(SweepError::Invalid(format!("a grid needs 1 to 4 axes (got {})", self.axes.len())));
        }
        for (i, axis) in self.axes.iter().enumerate() {
            axis.validate()?;
            if self.axes[..i].iter().any(|a| a.param == axis.param) {
                return Err(SweepError::Invalid(format!("axis {} appears twice", axis.param)));
            }
        }
        if !self.axes.iter().any(|a| a.param == AxisParam::KA) && !(self.k_a > 0.0 && self.k_a < std::f64::consts::PI) {
            return Err(SweepError::Invalid(format!("k_a = {} outside (0, pi)", self.k_a)));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Axis indices of row `row`; the last axis varies fastest.
    pub fn indices(&self, mut row: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for (slot, axis) in idx.iter_mut().zip(&self.axes).rev() {
            *slot = row % axis.count;
            row /= axis.count;
        }
        idx
    }

    pub fn point(&self, row: usize) -> Vec<f64> {
        self.indices(row).iter().zip(&self.axes).map(|(&i, a)| a.value(i)).collect()
    }

    /// Base parameters and wavenumber with the axis values of `point` applied.
    pub fn apply(&self, point: &[f64]) -> (RouterParams, f64) {
        let mut params = self.base;
        let mut k_a = self.k_a;
        for (axis, &x) in self.axes.iter().zip(point) {
            match axis.param {
                AxisParam::GA => params.g_a = x,
                AxisParam::GB => params.g_b = x,
                AxisParam::GC => params.g_c = x,
                AxisParam::KA => k_a = x,
                AxisParam::NJunction => params.n_junction = x as u32,
            }
        }
        (params, k_a)
    }
}
