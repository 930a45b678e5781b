//! Forward orbits and their fates: cycle detection and refinement,
//! multiplier classification, the real fixed-point count on the principal
//! interval, and the joint fate of the three singular orbits that decides
//! hyperbolicity.

use crate::map::{MapParameter, SpherePoint};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Recurrence distance at which two orbit points are considered equal.
pub const DEFAULT_CYCLE_TOL: f64 = 1e-10;
/// Longest period the recurrence window looks for.
pub const DEFAULT_MAX_PERIOD: usize = 64;
/// Newton refinement target for `|f^p(z) - z|`.
pub const REFINE_RESIDUAL_TOL: f64 = 1e-12;
/// Newton step budget before giving up on a candidate cycle.
pub const REFINE_MAX_STEPS: usize = 50;
/// Multiplier modulus below which a cycle counts as superattracting.
pub const DEFAULT_SUPER_TOL: f64 = 1e-8;
/// Half-width of the indifferent band around `|multiplier| = 1`.
pub const DEFAULT_INDIFFERENCE_TOL: f64 = 1e-6;
/// Distance to a root of unity at which an indifferent multiplier is
/// called parabolic-like.
pub const DEFAULT_ROOT_TOL: f64 = 1e-6;
/// Largest root-of-unity denominator searched.
pub const DEFAULT_DENOMINATOR_MAX: u32 = 32;
/// `|g|` threshold for counting a sampled tangency as a root.
pub const TANGENCY_TOL: f64 = 1e-8;
/// Margin trimmed off the right end of the principal real interval
/// `[0, sqrt(pi/2))` to keep the scan away from the pole.
pub const PRINCIPAL_INTERVAL_MARGIN: f64 = 1e-6;
/// Sample count for the real fixed-point scan.
pub const FIXED_POINT_SCAN_SAMPLES: usize = 100_000;
/// Radius around `lambda ± i` within which an attracting fixed point
/// certifies the escaping-Julia signature.
pub const CANTOR_NEIGHBORHOOD_RADIUS: f64 = 0.5;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum OrbitError {
    /// Newton refinement ran out of steps (or hit a parabolic degeneracy
    /// where the linearization is singular).
    #[error("cycle refinement did not converge after {steps} steps (residual {residual:.3e})")]
    NonConvergence { steps: usize, residual: f64 },
    /// The candidate cycle runs through a pole, so it is not a cycle of
    /// the finite dynamics at all.
    #[error("cycle refinement passed through a pole")]
    PoleDuringRefinement,
}

/// A refined periodic orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleInfo {
    pub period: usize,
    /// The cycle in orbit order, starting from the refined point.
    pub points: Vec<Complex64>,
    /// Product of `f'` over the cycle.
    pub multiplier: Complex64,
}

/// Multiplier classification of a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleClass {
    Superattracting,
    Attracting,
    Repelling,
    /// Indifferent with multiplier within tolerance of `e^{2 pi i p/q}`
    /// (lowest denominator wins, `gcd(p, q) = 1`).
    ParabolicLike { p: u32, q: u32 },
    /// Indifferent but not near any low-order root of unity.
    IndifferentIrrational,
}

/// Tolerances used by [`classify_cycle`].
#[derive(Debug, Clone, Copy)]
pub struct ClassifyTolerances {
    pub super_tol: f64,
    pub indifference_tol: f64,
    pub root_tol: f64,
    pub denominator_max: u32,
}

impl Default for ClassifyTolerances {
    fn default() -> Self {
        ClassifyTolerances {
            super_tol: DEFAULT_SUPER_TOL,
            indifference_tol: DEFAULT_INDIFFERENCE_TOL,
            root_tol: DEFAULT_ROOT_TOL,
            denominator_max: DEFAULT_DENOMINATOR_MAX,
        }
    }
}

/// What happened to an iterated orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    /// Recurrence was detected and Newton confirmed an attracting cycle.
    ConvergedToCycle { period: usize },
    /// The orbit landed on a pole and escaped to infinity. `pole_index`
    /// saturates to `i32::MAX` outside the indexed range `|n| <= 64`.
    HitPole { pole_index: i32, steps: usize },
    /// Neither within the iteration budget.
    Unresolved,
}

#[derive(Debug, Clone)]
pub struct OrbitResult {
    pub status: OrbitStatus,
    /// The refined cycle, when the status is `ConvergedToCycle`.
    pub cycle: Option<CycleInfo>,
    /// Evaluations actually performed.
    pub steps_used: usize,
    /// The visited points (with a final `Infinity` when a pole was hit),
    /// kept only on request.
    pub trajectory: Option<Vec<SpherePoint>>,
}

#[derive(Debug, Clone, Copy)]
pub struct OrbitOptions {
    pub cycle_tol: f64,
    pub max_period: usize,
    pub record_trajectory: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            cycle_tol: DEFAULT_CYCLE_TOL,
            max_period: DEFAULT_MAX_PERIOD,
            record_trajectory: false,
        }
    }
}

/// Smallest divisor `d` of `period` such that the cycle is `d`-periodic
/// within `tol`.
fn minimal_period(points: &[Complex64], tol: f64) -> usize {
    let p = points.len();
    for d in 1..p {
        if !p.is_multiple_of(d) {
            continue;
        }
        if (0..p).all(|i| (points[i] - points[(i + d) % p]).norm() < tol) {
            return d;
        }
    }
    p
}

/// Iterate `z0` until it lands on a pole, revisits a recent point (which
/// triggers Newton refinement and an attraction check), or exhausts the
/// budget.
///
/// A recurrence within `cycle_tol` of a point up to `max_period` steps back
/// is only reported as convergence if the refined cycle is attracting;
/// near-recurrences along parabolic ghosts fail that gate and iteration
/// simply continues.
pub fn iterate_orbit(
    param: &MapParameter,
    z0: Complex64,
    max_iter: usize,
    opts: &OrbitOptions,
) -> OrbitResult {
    let mut orbit: Vec<Complex64> = Vec::with_capacity(max_iter.min(4096) + 1);
    orbit.push(z0);
    // After a rejected candidate, hold off before re-refining so a slow
    // parabolic passage does not trigger Newton on every step.
    let mut refine_embargo: usize = 0;

    for n in 0..max_iter {
        let cur = orbit[n];
        let next = match param.evaluate(cur) {
            SpherePoint::Infinity => {
                let pole_index = param.pole_index_at(cur);
                let trajectory = opts.record_trajectory.then(|| {
                    let mut t: Vec<SpherePoint> =
                        orbit.iter().copied().map(SpherePoint::Finite).collect();
                    t.push(SpherePoint::Infinity);
                    t
                });
                return OrbitResult {
                    status: OrbitStatus::HitPole {
                        pole_index,
                        steps: n,
                    },
                    cycle: None,
                    steps_used: n,
                    trajectory,
                };
            }
            SpherePoint::Finite(v) => v,
        };
        orbit.push(next);
        let len = orbit.len(); // n + 2 points: z_0 ..= z_{n+1}

        if refine_embargo > 0 {
            refine_embargo -= 1;
            continue;
        }
        for p in 1..=opts.max_period.min(len - 1) {
            if (next - orbit[len - 1 - p]).norm() >= opts.cycle_tol {
                continue;
            }
            let approx: Vec<Complex64> = orbit[len - 1 - p..len - 1].to_vec();
            let d = minimal_period(&approx, 1e-8_f64.max(100.0 * opts.cycle_tol));
            let candidate = CycleInfo {
                period: d,
                points: approx[..d].to_vec(),
                multiplier: Complex64::new(0.0, 0.0),
            };
            match refine_cycle(param, &candidate) {
                Ok(refined) if refined.multiplier.norm() < 1.0 => {
                    let trajectory = opts
                        .record_trajectory
                        .then(|| orbit.iter().copied().map(SpherePoint::Finite).collect());
                    return OrbitResult {
                        status: OrbitStatus::ConvergedToCycle {
                            period: refined.period,
                        },
                        cycle: Some(refined),
                        steps_used: n + 1,
                        trajectory,
                    };
                }
                _ => {
                    refine_embargo = 32;
                    break;
                }
            }
        }
    }

    let trajectory = opts
        .record_trajectory
        .then(|| orbit.iter().copied().map(SpherePoint::Finite).collect());
    OrbitResult {
        status: OrbitStatus::Unresolved,
        cycle: None,
        steps_used: max_iter,
        trajectory,
    }
}

/// Newton's method on `f^p(z) - z` from `approx.points[0]`, keeping the
/// given period. The returned cycle is rebuilt by forward iteration from
/// the refined point, with the multiplier recomputed along it.
///
/// Attraction is not required: repelling cycles refine fine. What fails is
/// a parabolic degeneracy (`(f^p)' ~ 1`) or a candidate running through a
/// pole.
pub fn refine_cycle(param: &MapParameter, approx: &CycleInfo) -> Result<CycleInfo, OrbitError> {
    let p = approx.period;
    assert!(p >= 1 && !approx.points.is_empty(), "empty cycle");
    let mut z = approx.points[0];
    let mut residual = f64::INFINITY;

    for step in 0..REFINE_MAX_STEPS {
        let mut cur = z;
        let mut deriv = Complex64::new(1.0, 0.0);
        for _ in 0..p {
            deriv *= param
                .derivative(cur)
                .map_err(|_| OrbitError::PoleDuringRefinement)?;
            cur = match param.evaluate(cur) {
                SpherePoint::Finite(v) => v,
                SpherePoint::Infinity => return Err(OrbitError::PoleDuringRefinement),
            };
        }
        residual = (cur - z).norm();
        if residual < REFINE_RESIDUAL_TOL {
            return build_cycle(param, z, p);
        }
        let denom = deriv - 1.0;
        if denom.norm() < 1e-14 {
            return Err(OrbitError::NonConvergence { steps: step, residual });
        }
        z -= (cur - z) / denom;
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(OrbitError::NonConvergence { steps: step, residual });
        }
    }
    Err(OrbitError::NonConvergence {
        steps: REFINE_MAX_STEPS,
        residual,
    })
}

fn build_cycle(param: &MapParameter, z: Complex64, period: usize) -> Result<CycleInfo, OrbitError> {
    let mut points = Vec::with_capacity(period);
    let mut multiplier = Complex64::new(1.0, 0.0);
    let mut cur = z;
    for _ in 0..period {
        points.push(cur);
        multiplier *= param
            .derivative(cur)
            .map_err(|_| OrbitError::PoleDuringRefinement)?;
        cur = match param.evaluate(cur) {
            SpherePoint::Finite(v) => v,
            SpherePoint::Infinity => return Err(OrbitError::PoleDuringRefinement),
        };
    }
    Ok(CycleInfo {
        period,
        points,
        multiplier,
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Classify a cycle by its multiplier modulus, with the indifferent band
/// split into parabolic-like (near a root of unity of denominator at most
/// `denominator_max`) and irrational-looking rotation.
pub fn classify_cycle(info: &CycleInfo, tols: &ClassifyTolerances) -> CycleClass {
    let m = info.multiplier.norm();
    if m < tols.super_tol {
        return CycleClass::Superattracting;
    }
    if m < 1.0 - tols.indifference_tol {
        return CycleClass::Attracting;
    }
    if m > 1.0 + tols.indifference_tol {
        return CycleClass::Repelling;
    }
    for q in 1..=tols.denominator_max {
        for p in 0..q {
            if gcd(p, q) != 1 {
                continue;
            }
            let root = Complex64::from_polar(1.0, 2.0 * PI * p as f64 / q as f64);
            if (info.multiplier - root).norm() < tols.root_tol {
                return CycleClass::ParabolicLike { p, q };
            }
        }
    }
    CycleClass::IndifferentIrrational
}

/// Count solutions of `lambda + tan x^2 = x` on the principal real
/// interval `[0, sqrt(pi/2) - margin)` by dense sampling: sign changes
/// and exact zeros each count one root, and a non-crossing local minimum
/// of `|g|` below [`TANGENCY_TOL`] counts the tangency case once.
pub fn count_real_fixed_points_principal(lambda: f64) -> usize {
    let upper = (PI / 2.0).sqrt() - PRINCIPAL_INTERVAL_MARGIN;
    let n = FIXED_POINT_SCAN_SAMPLES;
    let g = |x: f64| lambda + (x * x).tan() - x;
    let vals: Vec<f64> = (0..n).map(|i| g(upper * i as f64 / n as f64)).collect();

    let mut count = 0usize;
    let mut last_sign: Option<bool> = None; // sign of the last nonzero sample
    for &v in &vals {
        if v == 0.0 {
            count += 1;
            last_sign = None;
            continue;
        }
        let s = v > 0.0;
        if let Some(prev) = last_sign {
            if prev != s {
                count += 1;
            }
        }
        last_sign = Some(s);
    }

    // Tangencies: |g| dips below tolerance at an interior local minimum
    // without changing sign. Ties break leftward so a flat pair of minimum
    // samples still counts once.
    for i in 1..n - 1 {
        let (a, b, c) = (vals[i - 1], vals[i], vals[i + 1]);
        let same_sign = (a > 0.0 && b > 0.0 && c > 0.0) || (a < 0.0 && b < 0.0 && c < 0.0);
        if same_sign && b.abs() < a.abs() && b.abs() <= c.abs() && b.abs() < TANGENCY_TOL {
            count += 1;
        }
    }
    count
}

/// The tangency of `y = lambda + tan x^2` with `y = x` on the principal
/// interval: the parameter where the two real fixed points collide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyPoint {
    pub lambda_star: f64,
    pub x_star: f64,
}

/// Locate the tangency by bisecting `h(x) = 2x sec^2(x^2) - 1`, which is
/// increasing through zero on the principal interval, then reading the
/// parameter off `lambda = x - tan x^2`.
pub fn tangency_parameter() -> TangencyPoint {
    let h = |x: f64| {
        let t = (x * x).tan();
        2.0 * x * (1.0 + t * t) - 1.0
    };
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    debug_assert!(h(lo) < 0.0 && h(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x_star = 0.5 * (lo + hi);
    TangencyPoint {
        lambda_star: x_star - (x_star * x_star).tan(),
        x_star,
    }
}

/// Smallest `j <= depth` such that `f^j(v)` is a pole (so `f^{j+1}` first
/// escapes to infinity), or `None` within the given depth.
pub fn is_prepole(param: &MapParameter, v: Complex64, depth: usize) -> Option<usize> {
    let mut cur = v;
    for j in 0..=depth {
        match param.evaluate(cur) {
            SpherePoint::Infinity => return Some(j),
            SpherePoint::Finite(next) => cur = next,
        }
    }
    None
}

/// The three singular orbits (critical value first, then `lambda ± i`) and
/// whether the map is hyperbolic: every singular orbit converging to an
/// attracting cycle.
#[derive(Debug, Clone)]
pub struct SingularFate {
    pub fates: [OrbitResult; 3],
    pub hyperbolic: bool,
}

pub fn singular_orbit_fate(param: &MapParameter, max_iter: usize) -> SingularFate {
    let opts = OrbitOptions::default();
    let fates = param
        .singular_values()
        .map(|v| iterate_orbit(param, v, max_iter, &opts));
    let hyperbolic = fates
        .iter()
        .all(|r| matches!(r.status, OrbitStatus::ConvergedToCycle { .. }));
    SingularFate { fates, hyperbolic }
}

/// The attracting fixed point certifying the escaping-Julia signature:
/// all three singular orbits settle on one period-1 cycle lying within
/// [`CANTOR_NEIGHBORHOOD_RADIUS`] of an asymptotic value. Returns that
/// fixed point, or `None` when the signature fails.
pub fn cantor_signature(param: &MapParameter, fate: &SingularFate) -> Option<Complex64> {
    if !fate.hyperbolic {
        return None;
    }
    let mut points = [Complex64::new(0.0, 0.0); 3];
    for (slot, r) in points.iter_mut().zip(fate.fates.iter()) {
        let cycle = r.cycle.as_ref()?;
        if cycle.period != 1 {
            return None;
        }
        *slot = cycle.points[0];
    }
    if (points[0] - points[1]).norm() > 1e-6 || (points[0] - points[2]).norm() > 1e-6 {
        return None;
    }
    let z = points[0];
    let near = (z - param.asymptotic_value_plus())
        .norm()
        .min((z - param.asymptotic_value_minus()).norm());
    (near < CANTOR_NEIGHBORHOOD_RADIUS).then_some(z)
}
