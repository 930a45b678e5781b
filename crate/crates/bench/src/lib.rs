//! Shared fixtures for the criterion benchmarks: a hyperbolic showcase
//! parameter, a real-line parameter with a slow attracting fixed point,
//! and standard grid windows.

use tanlab_core::map::MapParameter;
use tanlab_core::planes::GridSpec;
use tanlab_core::Complex64;

/// Parameter with a superattracting fixed point and escaping Julia set.
pub fn showcase_param() -> MapParameter {
    MapParameter::new(Complex64::new(4.0, 4.0))
}

/// Real parameter whose origin orbit converges geometrically.
pub fn real_param() -> MapParameter {
    MapParameter::new(Complex64::new(0.1, 0.0))
}

/// Origin-centered dynamical window.
pub fn dynamical_spec(cols: usize, rows: usize) -> GridSpec {
    GridSpec {
        center: Complex64::new(0.0, 0.0),
        width: 8.0,
        height: 8.0,
        cols,
        rows,
    }
}

/// First-quadrant parameter window over [2,6]^2.
pub fn parameter_spec(cols: usize, rows: usize) -> GridSpec {
    GridSpec {
        center: Complex64::new(4.0, 4.0),
        width: 4.0,
        height: 4.0,
        cols,
        rows,
    }
}

/// A spread of sample points that avoids poles and saturation, reused so
/// every run hits identical inputs.
pub fn sample_points(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let t = i as f64 / n as f64;
            Complex64::new(2.4 * (6.3 * t).cos(), 2.4 * (6.3 * t).sin() * 0.8 + 0.1)
        })
        .collect()
}
