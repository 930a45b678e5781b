//! Rasterized views of the dynamical and parameter planes.
//!
//! Pixels are classified (basin of an attracting cycle / pre-pole escape /
//! unresolved) into one byte each, with the cycle period and a flag for
//! the escaping-Julia region packed alongside, so rasters compare exactly
//! and palette mapping stays total.

use crate::map::MapParameter;
use crate::orbit::{
    cantor_signature, iterate_orbit, singular_orbit_fate, OrbitOptions, OrbitStatus,
};
use num_complex::Complex64;
use rayon::prelude::*;

/// Iteration budget for dynamical-plane pixels.
pub const DEFAULT_DYNAMICAL_MAX_ITER: usize = 200;
/// Iteration budget per singular orbit for parameter-plane pixels.
pub const DEFAULT_PARAMETER_MAX_ITER: usize = 100;

/// A pixel grid over an axis-aligned window. Column 0 is the left edge,
/// row 0 the top; pixel centers are offset half a cell inward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub center: Complex64,
    pub width: f64,
    pub height: f64,
    pub cols: usize,
    pub rows: usize,
}

impl GridSpec {
    /// The point under the center of pixel `(col, row)`.
    pub fn pixel_point(&self, col: usize, row: usize) -> Complex64 {
        let re = self.center.re + ((col as f64 + 0.5) / self.cols as f64 - 0.5) * self.width;
        let im = self.center.im + (0.5 - (row as f64 + 0.5) / self.rows as f64) * self.height;
        Complex64::new(re, im)
    }

    pub fn len(&self) -> usize {
        self.cols * self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Broad pixel classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PixelKind {
    /// Converged to an attracting cycle.
    Basin = 0,
    /// Landed on a pole and escaped.
    PrePole = 1,
    /// Budget exhausted without a verdict.
    Unresolved = 2,
}

/// One-byte pixel code: bits 0-1 the [`PixelKind`], bits 2-5 the cycle
/// period capped at 15 (basin pixels only), bit 6 the escaping-Julia
/// region flag (parameter plane only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassCode(u8);

impl ClassCode {
    const KIND_MASK: u8 = 0b0000_0011;
    const PERIOD_SHIFT: u8 = 2;
    const PERIOD_MASK: u8 = 0b0011_1100;
    const CANTOR_BIT: u8 = 0b0100_0000;

    pub fn basin(period: usize, cantor: bool) -> Self {
        let p = period.min(15) as u8;
        let mut code = PixelKind::Basin as u8 | (p << Self::PERIOD_SHIFT);
        if cantor {
            code |= Self::CANTOR_BIT;
        }
        ClassCode(code)
    }

    pub fn pre_pole() -> Self {
        ClassCode(PixelKind::PrePole as u8)
    }

    pub fn unresolved() -> Self {
        ClassCode(PixelKind::Unresolved as u8)
    }

    pub fn kind(self) -> PixelKind {
        match self.0 & Self::KIND_MASK {
            0 => PixelKind::Basin,
            1 => PixelKind::PrePole,
            _ => PixelKind::Unresolved,
        }
    }

    /// Cycle period capped at 15; zero for non-basin pixels.
    pub fn period(self) -> u8 {
        (self.0 & Self::PERIOD_MASK) >> Self::PERIOD_SHIFT
    }

    pub fn cantor_flag(self) -> bool {
        self.0 & Self::CANTOR_BIT != 0
    }

    pub fn as_u8(self) -> u8 {
        self.0
    }
}

/// A classified grid: class codes and iteration counts in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub spec: GridSpec,
    pub class_codes: Vec<ClassCode>,
    pub iter_counts: Vec<u32>,
}

impl Raster {
    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.spec.cols + col
    }

    pub fn code(&self, col: usize, row: usize) -> ClassCode {
        self.class_codes[self.index(col, row)]
    }

    pub fn iters(&self, col: usize, row: usize) -> u32 {
        self.iter_counts[self.index(col, row)]
    }
}

/// Options shared by both renderers.
#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub max_iter: usize,
    pub orbit: OrbitOptions,
}

impl RenderOptions {
    pub fn dynamical() -> Self {
        RenderOptions {
            max_iter: DEFAULT_DYNAMICAL_MAX_ITER,
            orbit: OrbitOptions::default(),
        }
    }

    pub fn parameter() -> Self {
        RenderOptions {
            max_iter: DEFAULT_PARAMETER_MAX_ITER,
            orbit: OrbitOptions::default(),
        }
    }
}

/// Classify every pixel of the dynamical plane by the fate of its orbit.
/// Work is index-parallel and collected in order, so the output is
/// identical for any worker count.
pub fn render_dynamical(param: &MapParameter, spec: &GridSpec, opts: &RenderOptions) -> Raster {
    let cells: Vec<(ClassCode, u32)> = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let (row, col) = (idx / spec.cols, idx % spec.cols);
            let z0 = spec.pixel_point(col, row);
            let r = iterate_orbit(param, z0, opts.max_iter, &opts.orbit);
            match r.status {
                OrbitStatus::ConvergedToCycle { period } => {
                    (ClassCode::basin(period, false), r.steps_used as u32)
                }
                OrbitStatus::HitPole { steps, .. } => (ClassCode::pre_pole(), steps as u32),
                OrbitStatus::Unresolved => (ClassCode::unresolved(), opts.max_iter as u32),
            }
        })
        .collect();

    let (class_codes, iter_counts) = cells.into_iter().unzip();
    Raster {
        spec: *spec,
        class_codes,
        iter_counts,
    }
}

/// Classify every pixel of the parameter plane by the joint fate of the
/// three singular orbits: hyperbolic parameters are basin pixels carrying
/// the longest singular cycle period, flagged when the fixed point sits
/// beside an asymptotic value (the escaping-Julia signature). Iteration
/// counts record the slowest singular orbit.
pub fn render_parameter(spec: &GridSpec, opts: &RenderOptions) -> Raster {
    let cells: Vec<(ClassCode, u32)> = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let (row, col) = (idx / spec.cols, idx % spec.cols);
            let lambda = spec.pixel_point(col, row);
            let param = MapParameter::new(lambda);
            let fate = singular_orbit_fate(&param, opts.max_iter);
            if fate.hyperbolic {
                let period = fate
                    .fates
                    .iter()
                    .filter_map(|r| r.cycle.as_ref())
                    .map(|cy| cy.period)
                    .max()
                    .unwrap_or(0);
                let steps = fate.fates.iter().map(|r| r.steps_used).max().unwrap_or(0);
                let cantor = cantor_signature(&param, &fate).is_some();
                (ClassCode::basin(period, cantor), steps as u32)
            } else {
                (ClassCode::unresolved(), opts.max_iter as u32)
            }
        })
        .collect();

    let (class_codes, iter_counts) = cells.into_iter().unzip();
    Raster {
        spec: *spec,
        class_codes,
        iter_counts,
    }
}

/// An open quadrant region cut off by the hyperbola `|Re . Im| = threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionAi {
    /// Quadrant 1 through 4, counterclockwise from `Re > 0, Im > 0`.
    pub quadrant: u8,
    pub threshold: f64,
}

impl RegionAi {
    pub fn contains(&self, lambda: Complex64) -> bool {
        let (sr, si) = quadrant_signs(self.quadrant);
        lambda.re * sr > 0.0 && lambda.im * si > 0.0 && (lambda.re * lambda.im).abs() > self.threshold
    }
}

fn quadrant_signs(quadrant: u8) -> (f64, f64) {
    match quadrant {
        1 => (1.0, 1.0),
        2 => (-1.0, 1.0),
        3 => (-1.0, -1.0),
        4 => (1.0, -1.0),
        q => panic!("quadrant {q} out of range 1..=4"),
    }
}

/// Search controls for [`estimate_region_threshold`].
#[derive(Debug, Clone, Copy)]
pub struct ThresholdSearch {
    /// Hyperbola levels are sampled at `t_step, 2 t_step, ...` up to `t_max`.
    pub t_step: f64,
    /// Supremum returned when no sampled level passes.
    pub t_max: f64,
    /// Arc points are confined to `|lambda| <= lambda_bound`.
    pub lambda_bound: f64,
    /// Sample count along each arc (log-spaced in `|Re lambda|`).
    pub arc_samples: usize,
    /// Iteration budget per singular orbit.
    pub max_iter: usize,
}

impl Default for ThresholdSearch {
    fn default() -> Self {
        ThresholdSearch {
            t_step: 0.5,
            t_max: 64.0,
            lambda_bound: 10.0,
            arc_samples: 33,
            max_iter: DEFAULT_PARAMETER_MAX_ITER,
        }
    }
}

/// Whether every sampled point of the arc `{|Re . Im| = t}` in the quadrant
/// (within the bound) carries the escaping-Julia signature.
fn arc_all_cantor(quadrant: u8, t: f64, search: &ThresholdSearch) -> bool {
    let b2 = search.lambda_bound * search.lambda_bound;
    // |lambda|^2 = x^2 + (t/x)^2 <= b^2 pins x^2 between the two roots
    let disc = b2 * b2 - 4.0 * t * t;
    if disc < 0.0 {
        return false; // arc lies entirely outside the bound
    }
    let x2_min = (b2 - disc.sqrt()) / 2.0;
    let x2_max = (b2 + disc.sqrt()) / 2.0;
    let x_min = x2_min.sqrt();
    let x_max = x2_max.sqrt();
    let (sr, si) = quadrant_signs(quadrant);
    let n = search.arc_samples.max(2);

    (0..n).into_par_iter().all(|i| {
        let frac = i as f64 / (n - 1) as f64;
        let x = x_min * (x_max / x_min).powf(frac);
        let lambda = Complex64::new(sr * x, si * t / x);
        let param = MapParameter::new(lambda);
        let fate = singular_orbit_fate(&param, search.max_iter);
        cantor_signature(&param, &fate).is_some()
    })
}

/// Smallest sampled hyperbola level whose whole arc carries the
/// escaping-Julia signature, or `t_max` when none does.
pub fn estimate_region_threshold(quadrant: u8, search: &ThresholdSearch) -> f64 {
    let mut t = search.t_step;
    while t <= search.t_max + 1e-12 {
        if arc_all_cantor(quadrant, t, search) {
            return t;
        }
        t += search.t_step;
    }
    search.t_max
}

/// Connected components of pixels with exactly the given class code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentStats {
    pub components: usize,
    /// Largest component's share of all pixels in the raster.
    pub largest_fraction: f64,
}

/// Count 4-connected components of the exact code and measure the largest.
pub fn component_count(raster: &Raster, code: ClassCode) -> ComponentStats {
    let (cols, rows) = (raster.spec.cols, raster.spec.rows);
    let total = cols * rows;
    let mut seen = vec![false; total];
    let mut components = 0usize;
    let mut largest = 0usize;
    let mut stack = Vec::new();

    for start in 0..total {
        if seen[start] || raster.class_codes[start] != code {
            continue;
        }
        components += 1;
        let mut size = 0usize;
        stack.push(start);
        seen[start] = true;
        while let Some(idx) = stack.pop() {
            size += 1;
            let (row, col) = (idx / cols, idx % cols);
            let mut visit = |r: usize, c: usize| {
                let j = r * cols + c;
                if !seen[j] && raster.class_codes[j] == code {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if col > 0 {
                visit(row, col - 1);
            }
            if col + 1 < cols {
                visit(row, col + 1);
            }
            if row > 0 {
                visit(row - 1, col);
            }
            if row + 1 < rows {
                visit(row + 1, col);
            }
        }
        largest = largest.max(size);
    }

    ComponentStats {
        components,
        largest_fraction: if total == 0 {
            0.0
        } else {
            largest as f64 / total as f64
        },
    }
}
