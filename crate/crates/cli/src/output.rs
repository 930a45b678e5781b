//! Shared serialization helpers: CSV field quoting and the JSON shapes
//! reused across commands. JSON key order follows struct declaration
//! order, so emitted documents are byte-stable.

use serde::Serialize;
use tanlab_core::orbit::{CycleClass, CycleInfo, OrbitStatus};
use tanlab_core::{Complex64, SpherePoint};

/// Quote a CSV field when RFC-4180 requires it (embedded comma, quote,
/// or line break), doubling any inner quotes.
pub fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

#[derive(Serialize, Debug, Clone, Copy, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

/// One orbit sample: `status` is `finite` or `infinity`; an infinite
/// sample keeps the last finite coordinates out of the numeric columns.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub step: usize,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub status: &'static str,
}

impl TrajectoryRow {
    pub fn new(step: usize, point: SpherePoint) -> Self {
        match point {
            SpherePoint::Finite(z) => TrajectoryRow {
                step,
                re: Some(z.re),
                im: Some(z.im),
                status: "finite",
            },
            SpherePoint::Infinity => TrajectoryRow {
                step,
                re: None,
                im: None,
                status: "infinity",
            },
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.step,
            self.re.map_or(String::new(), |v| v.to_string()),
            self.im.map_or(String::new(), |v| v.to_string()),
            csv_escape(self.status)
        )
    }
}

pub fn status_name(status: &OrbitStatus) -> &'static str {
    match status {
        OrbitStatus::ConvergedToCycle { .. } => "converged-to-cycle",
        OrbitStatus::HitPole { .. } => "hit-pole",
        OrbitStatus::Unresolved => "unresolved",
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CycleJson {
    pub period: usize,
    pub points: Vec<ComplexJson>,
    pub multiplier: ComplexJson,
    pub multiplier_abs: f64,
}

impl From<&CycleInfo> for CycleJson {
    fn from(info: &CycleInfo) -> Self {
        CycleJson {
            period: info.period,
            points: info.points.iter().copied().map(ComplexJson::from).collect(),
            multiplier: info.multiplier.into(),
            multiplier_abs: info.multiplier.norm(),
        }
    }
}

pub fn class_name(class: &CycleClass) -> String {
    match class {
        CycleClass::Superattracting => "superattracting".into(),
        CycleClass::Attracting => "attracting".into(),
        CycleClass::Repelling => "repelling".into(),
        CycleClass::ParabolicLike { p, q } => format!("parabolic-like {p}/{q}"),
        CycleClass::IndifferentIrrational => "indifferent-irrational".into(),
    }
}
