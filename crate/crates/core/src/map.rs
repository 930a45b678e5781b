//! The map `f_lambda(z) = lambda + tan z^2`, its derivative, and its
//! singular data: the critical point at the origin, the asymptotic values
//! `lambda ± i`, and the doubly-indexed zeros and poles of `tan z^2`.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Distance in the `w = z^2` plane under which a point is treated as a pole
/// of `tan` and the map value is the point at infinity.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Beyond `|Im z^2| > 700`, `e^{2iz^2}` under- or overflows in `f64`;
/// `tan z^2` is clamped to the exact limit `±i` and the derivative to `0`.
pub const SATURATION_CUTOFF: f64 = 700.0;

/// Poles are indexed for `|n| <= POLE_INDEX_RANGE`; anything further out
/// reports [`POLE_INDEX_SENTINEL`].
pub const POLE_INDEX_RANGE: i32 = 64;

/// Sentinel pole index for points beyond the indexed range.
pub const POLE_INDEX_SENTINEL: i32 = i32::MAX;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum MapError {
    /// Infinity is an essential singularity: `f` has no value there.
    #[error("the point at infinity is not in the domain of the map")]
    InfinityNotInDomain,
    /// `z^2` fell within [`POLE_TOLERANCE`] of a pole of `tan`, where the
    /// derivative (unlike the map itself) has no finite value to report.
    #[error("z^2 = {re}{im:+}i is within tolerance of a pole of tan", re = .w.re, im = .w.im)]
    PoleProximity { w: Complex64 },
}

/// A point of the Riemann sphere: either finite or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    /// The finite value, if there is one.
    pub fn finite(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

/// Index into the zeros and poles of `tan z^2`. Both families come in
/// four arms (two per axis); even indices label the real-axis arms,
/// odd indices the imaginary-axis arms, with sign following the arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZeroPoleIndex(pub i32);

/// The zero `p_n` of `tan z^2`: `±sqrt(m pi)` on the real axis for
/// `n = ±2m`, `±i sqrt(m pi)` on the imaginary axis for `n = ±(2m-1)`.
pub fn zero_point(index: ZeroPoleIndex) -> Complex64 {
    let n = index.0;
    if n % 2 == 0 {
        let m = (n / 2).abs() as f64;
        let r = (m * PI).sqrt();
        Complex64::new(if n >= 0 { r } else { -r }, 0.0)
    } else {
        let m = ((n.abs() + 1) / 2) as f64;
        let r = (m * PI).sqrt();
        Complex64::new(0.0, if n > 0 { r } else { -r })
    }
}

/// The pole `s_n` of `tan z^2`: `±sqrt((m + 1/2) pi)` on the real axis for
/// `n = ±2m` (`m >= 0`), `±i sqrt((m - 1/2) pi)` on the imaginary axis for
/// `n = ±(2m-1)` (`m >= 1`). Consecutive integers alternate between the
/// axes, matching the interleaving of the zeros.
pub fn pole_point(index: ZeroPoleIndex) -> Complex64 {
    let n = index.0;
    if n % 2 == 0 {
        // the arm's pole magnitude comes from the signed strip m = n/2:
        // n and -n-2 share |z| (they square to the same strip)
        let m = (n / 2) as f64;
        let r = ((m + 0.5).abs() * PI).sqrt();
        Complex64::new(if n >= 0 { r } else { -r }, 0.0)
    } else {
        let m = ((n.abs() + 1) / 2) as f64;
        let r = ((m - 0.5) * PI).sqrt();
        Complex64::new(0.0, if n > 0 { r } else { -r })
    }
}

/// Index of the pole nearest to `z` in Euclidean distance, or
/// [`POLE_INDEX_SENTINEL`] when the nearest pole falls outside the indexed
/// range `|n| <= POLE_INDEX_RANGE`. The search runs over a band extending
/// past the range: per axis the distance to the poles is unimodal in the
/// pole position, so whenever the true nearest pole is unindexed the
/// band's argmin also lands outside the range and the sentinel fires.
pub fn nearest_pole_index(z: Complex64) -> i32 {
    const BAND: i32 = POLE_INDEX_RANGE + 16;
    let mut best = f64::INFINITY;
    let mut best_n = POLE_INDEX_SENTINEL;
    for n in -BAND..=BAND {
        let d = (z - pole_point(ZeroPoleIndex(n))).norm();
        if d < best {
            best = d;
            best_n = n;
        }
    }
    if best_n.abs() <= POLE_INDEX_RANGE {
        best_n
    } else {
        POLE_INDEX_SENTINEL
    }
}

/// Pole index of a point already known to be pole-proximate: `k` is the
/// ordinate of the `w`-plane pole `(k + 1/2) pi` that `z^2` landed on, and
/// the half-plane of `z` picks the arm. Out-of-range poles saturate to the
/// sentinel.
pub(crate) fn pole_index_from_strip(z: Complex64, k: i64) -> i32 {
    let n: i64 = if k >= 0 {
        // real-axis poles: z^2 near positive multiples of pi
        if z.re >= 0.0 {
            2 * k
        } else {
            -2 * k - 2
        }
    } else {
        // imaginary-axis poles
        if z.im >= 0.0 {
            -2 * k - 1
        } else {
            2 * k + 1
        }
    };
    if n.unsigned_abs() <= POLE_INDEX_RANGE as u64 {
        n as i32
    } else {
        POLE_INDEX_SENTINEL
    }
}

/// Ordinate of the nearest `w`-plane pole `(k + 1/2) pi` and the distance
/// to it.
pub(crate) fn nearest_tan_pole(w: Complex64) -> (i64, f64) {
    let k = (w.re / PI - 0.5).round();
    let pole = (k + 0.5) * PI;
    (k as i64, (w - pole).norm())
}

/// `tan w` through the exponential form. With `q = e^{2iw}`,
///
/// ```text
///     tan w = -i (q - 1) / (q + 1),
/// ```
///
/// and for `Im w < 0` the reciprocal variable `p = e^{-2iw}` is used
/// instead, so the exponential never exceeds modulus one and large
/// imaginary parts lose no precision. Past the saturation cutoff the
/// value is the exact limit `±i`.
fn tan_stable(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > SATURATION_CUTOFF {
        return i;
    }
    if w.im < -SATURATION_CUTOFF {
        return -i;
    }
    if w.im >= 0.0 {
        let q = (2.0 * i * w).exp();
        -i * (q - 1.0) / (q + 1.0)
    } else {
        let p = (-2.0 * i * w).exp();
        -i * (1.0 - p) / (1.0 + p)
    }
}

/// `sec^2 w = 4q / (1 + q)^2` with the same bounded exponential variable
/// as [`tan_stable`]; underflows cleanly to `0` for large `|Im w|`.
fn sec_squared_stable(w: Complex64) -> Complex64 {
    if w.im.abs() > SATURATION_CUTOFF {
        return Complex64::new(0.0, 0.0);
    }
    let i = Complex64::i();
    let q = if w.im >= 0.0 {
        (2.0 * i * w).exp()
    } else {
        (-2.0 * i * w).exp()
    };
    4.0 * q / ((1.0 + q) * (1.0 + q))
}

/// The parameter `lambda` together with the map, its derivative, and its
/// singular values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParameter {
    lambda: Complex64,
}

impl MapParameter {
    pub fn new(lambda: Complex64) -> Self {
        MapParameter { lambda }
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// The unique critical point of `f` (where `f' = 0`).
    pub fn critical_point(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// `f(0) = lambda`.
    pub fn critical_value(&self) -> Complex64 {
        self.lambda
    }

    /// Asymptotic value approached as `Im z^2 -> +inf`.
    pub fn asymptotic_value_plus(&self) -> Complex64 {
        self.lambda + Complex64::new(0.0, 1.0)
    }

    /// Asymptotic value approached as `Im z^2 -> -inf`.
    pub fn asymptotic_value_minus(&self) -> Complex64 {
        self.lambda - Complex64::new(0.0, 1.0)
    }

    /// The three finite singular values, critical value first:
    /// `[lambda, lambda + i, lambda - i]`.
    pub fn singular_values(&self) -> [Complex64; 3] {
        [
            self.critical_value(),
            self.asymptotic_value_plus(),
            self.asymptotic_value_minus(),
        ]
    }

    /// `f(z) = lambda + tan z^2` as a sphere point: pole-proximate inputs
    /// (within [`POLE_TOLERANCE`] in the `z^2` plane) map to infinity, and
    /// overflow in `z^2` resolves to the saturated asymptotic value or to
    /// infinity — never to NaN.
    pub fn evaluate(&self, z: Complex64) -> SpherePoint {
        let w = z * z;
        // Catches |Im w| past the cutoff including the infinite overflow
        // case: the sign of Im z^2 alone decides the limit value.
        if w.im > SATURATION_CUTOFF {
            return SpherePoint::Finite(self.asymptotic_value_plus());
        }
        if w.im < -SATURATION_CUTOFF {
            return SpherePoint::Finite(self.asymptotic_value_minus());
        }
        if !w.re.is_finite() || !w.im.is_finite() {
            return SpherePoint::Infinity;
        }
        let (_, dist) = nearest_tan_pole(w);
        if dist < POLE_TOLERANCE {
            return SpherePoint::Infinity;
        }
        SpherePoint::Finite(self.lambda + tan_stable(w))
    }

    /// [`evaluate`](Self::evaluate) extended to sphere points. Infinity is
    /// an essential singularity, so it is a domain error, not a value.
    pub fn evaluate_sphere(&self, z: SpherePoint) -> Result<SpherePoint, MapError> {
        match z {
            SpherePoint::Finite(z) => Ok(self.evaluate(z)),
            SpherePoint::Infinity => Err(MapError::InfinityNotInDomain),
        }
    }

    /// `f'(z) = 2z sec^2(z^2)`. Saturates to exactly `0` past the cutoff
    /// (the map is locally constant to machine precision there); errors at
    /// pole-proximate inputs where no finite derivative exists.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64, MapError> {
        let w = z * z;
        if w.im.abs() > SATURATION_CUTOFF {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(MapError::PoleProximity { w });
        }
        let (_, dist) = nearest_tan_pole(w);
        if dist < POLE_TOLERANCE {
            return Err(MapError::PoleProximity { w });
        }
        Ok(2.0 * z * sec_squared_stable(w))
    }

    /// Pole index reported when an orbit lands on a pole: the arm is read
    /// off the half-plane of `z`, the ordinate from the `w`-plane strip.
    pub(crate) fn pole_index_at(&self, z: Complex64) -> i32 {
        let (k, _) = nearest_tan_pole(z * z);
        pole_index_from_strip(z, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn value_at_origin_is_lambda() {
        let p = MapParameter::new(c(0.25, 0.0));
        let v = p.evaluate(c(0.0, 0.0)).finite().unwrap();
        assert_eq!(v, c(0.25, 0.0));
    }

    #[test]
    fn real_sample_matches_real_tangent() {
        let p = MapParameter::new(c(0.0, 0.0));
        let v = p.evaluate(c(1.0, 0.0)).finite().unwrap();
        assert!((v.re - 1.0f64.tan()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn pole_input_maps_to_infinity() {
        let p = MapParameter::new(c(0.0, 0.0));
        let s0 = (PI / 2.0).sqrt();
        assert!(p.evaluate(c(s0, 0.0)).is_infinity());
        // and the imaginary-axis pole of the same modulus
        assert!(p.evaluate(c(0.0, s0)).is_infinity());
    }

    #[test]
    fn saturation_clamps_to_asymptotic_values() {
        let p = MapParameter::new(c(4.0, 4.0));
        // Im z^2 = 2*30*30 = 1800 > 700
        let up = p.evaluate(c(30.0, 30.0)).finite().unwrap();
        assert_eq!(up, c(4.0, 5.0));
        let down = p.evaluate(c(30.0, -30.0)).finite().unwrap();
        assert_eq!(down, c(4.0, 3.0));
    }

    #[test]
    fn saturation_region_is_flat_well_before_cutoff() {
        // Im z^2 = 40 here, far below the clamp, yet the value already
        // agrees with lambda + i to ~1e-35.
        let p = MapParameter::new(c(4.0, 4.0));
        let v = p.evaluate(c(4.0, 5.0)).finite().unwrap();
        assert!((v - c(4.0, 5.0)).norm() < 1e-30);
        let d = p.derivative(c(4.0, 5.0)).unwrap();
        assert!(d.norm() < 1e-30);
        assert!(d.norm() > 0.0, "not yet clamped: genuinely tiny, not zero");
    }

    #[test]
    fn overflowing_square_does_not_produce_nan() {
        let p = MapParameter::new(c(0.0, 0.0));
        let huge = c(1e200, 1e200); // z^2 overflows
        match p.evaluate(huge) {
            SpherePoint::Finite(v) => assert!(v.re.is_finite() && v.im.is_finite()),
            SpherePoint::Infinity => {}
        }
    }

    #[test]
    fn infinity_is_not_in_the_domain() {
        let p = MapParameter::new(c(1.0, 0.0));
        assert_eq!(
            p.evaluate_sphere(SpherePoint::Infinity),
            Err(MapError::InfinityNotInDomain)
        );
    }

    #[test]
    fn singular_values_come_critical_first() {
        let p = MapParameter::new(c(0.5, -0.75));
        let sv = p.singular_values();
        assert_eq!(sv[0], c(0.5, -0.75));
        assert_eq!(sv[1], c(0.5, 0.25));
        assert_eq!(sv[2], c(0.5, -1.75));
    }

    #[test]
    fn derivative_matches_closed_form_at_real_point() {
        let p = MapParameter::new(c(0.0, 0.0));
        let x = 0.7f64;
        let d = p.derivative(c(x, 0.0)).unwrap();
        let expect = 2.0 * x / (x * x).cos().powi(2);
        assert!((d.re - expect).abs() < 1e-12 * expect.abs());
        assert!(d.im.abs() < 1e-12);
    }

    #[test]
    fn derivative_errors_at_pole() {
        let p = MapParameter::new(c(0.0, 0.0));
        let s0 = (PI / 2.0).sqrt();
        assert!(matches!(
            p.derivative(c(s0, 0.0)),
            Err(MapError::PoleProximity { .. })
        ));
    }

    #[test]
    fn zero_points_interleave_axes() {
        let z0 = zero_point(ZeroPoleIndex(0));
        assert_eq!(z0, c(0.0, 0.0));
        assert_eq!(zero_point(ZeroPoleIndex(2)), c(PI.sqrt(), 0.0));
        assert_eq!(zero_point(ZeroPoleIndex(-2)), c(-PI.sqrt(), 0.0));
        assert_eq!(zero_point(ZeroPoleIndex(1)), c(0.0, PI.sqrt()));
        assert_eq!(zero_point(ZeroPoleIndex(-1)), c(0.0, -PI.sqrt()));
        assert_eq!(zero_point(ZeroPoleIndex(4)), c((2.0 * PI).sqrt(), 0.0));
        assert_eq!(zero_point(ZeroPoleIndex(3)), c(0.0, (2.0 * PI).sqrt()));
    }

    #[test]
    fn pole_points_interleave_axes() {
        let r0 = (PI / 2.0).sqrt();
        assert_eq!(pole_point(ZeroPoleIndex(0)), c(r0, 0.0));
        assert_eq!(pole_point(ZeroPoleIndex(-2)), c(-r0, 0.0));
        assert_eq!(pole_point(ZeroPoleIndex(1)), c(0.0, r0));
        assert_eq!(pole_point(ZeroPoleIndex(-1)), c(0.0, -r0));
        assert_eq!(pole_point(ZeroPoleIndex(2)), c((1.5 * PI).sqrt(), 0.0));
        assert_eq!(pole_point(ZeroPoleIndex(3)), c(0.0, (1.5 * PI).sqrt()));
    }

    #[test]
    fn zeros_actually_vanish_and_poles_blow_up() {
        let p = MapParameter::new(c(0.0, 0.0));
        for n in -20..=20 {
            let z = zero_point(ZeroPoleIndex(n));
            let v = p.evaluate(z).finite().expect("zero is not a pole");
            assert!(v.norm() < 1e-9, "tan z^2 at zero #{n} = {v}");
            assert!(p.evaluate(pole_point(ZeroPoleIndex(n))).is_infinity());
        }
    }

    #[test]
    fn nearest_pole_index_identifies_each_indexed_pole() {
        for n in -64..=64 {
            let z = pole_point(ZeroPoleIndex(n));
            assert_eq!(nearest_pole_index(z), n);
        }
    }

    #[test]
    fn nearest_pole_index_saturates_beyond_range() {
        assert_eq!(nearest_pole_index(c(50.0, 0.0)), POLE_INDEX_SENTINEL);
        assert_eq!(nearest_pole_index(c(0.0, -40.0)), POLE_INDEX_SENTINEL);
    }

    #[test]
    fn strip_index_agrees_with_euclidean_on_poles() {
        let p = MapParameter::new(c(0.0, 0.0));
        for n in -64..=64 {
            let z = pole_point(ZeroPoleIndex(n));
            assert_eq!(p.pole_index_at(z), n, "arm/ordinate mismatch at {n}");
        }
    }

    #[test]
    fn evenness_spot_check() {
        let p = MapParameter::new(c(0.3, 1.1));
        let z = c(1.234, -0.567);
        let a = p.evaluate(z).finite().unwrap();
        let b = p.evaluate(-z).finite().unwrap();
        assert_eq!(a, b);
    }
}
