//! Branch-indexed inverse maps.
//!
//! Solving `lambda + tan z^2 = w` gives `z^2 = arctan(w - lambda) + k pi`,
//! so each inverse branch is labelled by the arctangent offset `k` together
//! with a square-root sign. The branches are defined everywhere except at
//! the asymptotic values `lambda ± i`, where the arctangent's argument hits
//! the logarithm's branch points.

use crate::map::{pole_point, MapParameter, ZeroPoleIndex};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Targets closer than this to `lambda ± i` are refused: the inverse has
/// no finite limit there.
pub const ASYMPTOTIC_VALUE_TOLERANCE: f64 = 1e-14;

/// `Re z^2` closer than this to a multiple of `pi` counts as lying on a
/// strip boundary, where the strip index is ill-defined.
pub const REGION_BOUNDARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum InverseError {
    /// The target coincides with an asymptotic value, which has no
    /// preimage (orbits only limit on it through the saturation zone).
    #[error("{re}{im:+}i is within tolerance of an asymptotic value; no preimage exists", re = .w.re, im = .w.im)]
    AsymptoticValue { w: Complex64 },
    /// `Re z^2` sits on a boundary between fundamental strips.
    #[error("Re z^2 = {x} lies on a fundamental-strip boundary")]
    RegionBoundary { x: f64 },
}

/// Square-root sign choice of an inverse branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Label of one inverse branch: the arctangent offset `k` and the root sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchIndex {
    pub k: i32,
    pub sign: Sign,
}

impl BranchIndex {
    pub fn new(k: i32, sign: Sign) -> Self {
        BranchIndex { k, sign }
    }
}

/// Principal arctangent `(1/2i) Log((1 + iu)/(1 - iu))`, with real part in
/// `(-pi/2, pi/2]`.
pub fn arctan_principal(u: Complex64) -> Complex64 {
    let i = Complex64::i();
    ((1.0 + i * u) / (1.0 - i * u)).ln() / (2.0 * i)
}

fn check_asymptotic(param: &MapParameter, w: Complex64) -> Result<(), InverseError> {
    let d_plus = (w - param.asymptotic_value_plus()).norm();
    let d_minus = (w - param.asymptotic_value_minus()).norm();
    if d_plus < ASYMPTOTIC_VALUE_TOLERANCE || d_minus < ASYMPTOTIC_VALUE_TOLERANCE {
        Err(InverseError::AsymptoticValue { w })
    } else {
        Ok(())
    }
}

/// The branch with `k = 0` and the positive root.
pub fn principal_inverse(param: &MapParameter, w: Complex64) -> Result<Complex64, InverseError> {
    branch_inverse(param, w, BranchIndex::new(0, Sign::Plus))
}

/// The inverse branch `±sqrt(arctan(w - lambda) + k pi)` (principal
/// arctangent and square root). Satisfies `f(branch_inverse(w, b)) = w`
/// for every branch `b`.
pub fn branch_inverse(
    param: &MapParameter,
    w: Complex64,
    branch: BranchIndex,
) -> Result<Complex64, InverseError> {
    check_asymptotic(param, w)?;
    let t = arctan_principal(w - param.lambda()) + (branch.k as f64) * PI;
    Ok(branch.sign.factor() * t.sqrt())
}

/// Where the branch sends infinity: `±sqrt((k + 1/2) pi)` when continued
/// to the pole of the arctangent strip. This is the pole of `f` attached
/// to the branch, independent of `lambda`.
pub fn pole_preimage(branch: BranchIndex) -> Complex64 {
    let t = Complex64::new((branch.k as f64 + 0.5) * PI, 0.0);
    branch.sign.factor() * t.sqrt()
}

/// Index `k` of the fundamental strip `(k-1) pi < Re z^2 < k pi`
/// containing `z`. Strip boundaries are reported as errors rather than
/// silently resolved.
pub fn region_index(z: Complex64) -> Result<i32, InverseError> {
    let x = (z * z).re;
    let nearest = (x / PI).round();
    if (x - nearest * PI).abs() < REGION_BOUNDARY_TOLERANCE {
        return Err(InverseError::RegionBoundary { x });
    }
    Ok((x / PI).ceil() as i32)
}

/// Ordinate `j` of the `w`-plane strip holding the indexed pole, i.e. the
/// `j` with `pole_point(n)^2 = (j + 1/2) pi`.
fn pole_strip(pole: ZeroPoleIndex) -> i32 {
    let n = pole.0;
    if n % 2 == 0 {
        if n >= 0 {
            n / 2
        } else {
            -n / 2 - 1
        }
    } else if n > 0 {
        -(n + 1) / 2
    } else {
        (n - 1) / 2
    }
}

/// The inverse branch that lands next to the indexed pole.
///
/// The component of `f^{-1}` around a pole straddles two principal-arctangent
/// strips (poles sit on the strip edges), so the offset is chosen from the
/// sign of `Re arctan(w - lambda)`, and the square root's sign ambiguity is
/// resolved toward the pole itself — which also smooths over the root's
/// branch cut for the imaginary-axis poles, where `z^2` is negative real.
pub fn branch_toward_pole(
    param: &MapParameter,
    w: Complex64,
    pole: ZeroPoleIndex,
) -> Result<Complex64, InverseError> {
    check_asymptotic(param, w)?;
    let a = arctan_principal(w - param.lambda());
    let j = pole_strip(pole);
    let k = if a.re >= 0.0 { j } else { j + 1 };
    let t = a + (k as f64) * PI;
    let r = t.sqrt();
    let target = pole_point(pole);
    if (r - target).norm() <= (-r - target).norm() {
        Ok(r)
    } else {
        Ok(-r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::SpherePoint;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn forward(param: &MapParameter, z: Complex64) -> Complex64 {
        match param.evaluate(z) {
            SpherePoint::Finite(v) => v,
            SpherePoint::Infinity => panic!("unexpected pole"),
        }
    }

    #[test]
    fn principal_branch_inverts_near_lambda() {
        let p = MapParameter::new(c(0.25, 0.0));
        let w = c(0.5, 0.3);
        let z = principal_inverse(&p, w).unwrap();
        assert!((forward(&p, z) - w).norm() < 1e-12);
        // principal strip: Re z^2 in (-pi/2, pi/2]
        assert!((z * z).re.abs() <= PI / 2.0 + 1e-12);
    }

    #[test]
    fn every_branch_is_a_right_inverse() {
        let p = MapParameter::new(c(4.0, 4.0));
        let w = c(2.0, -1.0);
        for k in -5..=5 {
            for sign in [Sign::Plus, Sign::Minus] {
                let z = branch_inverse(&p, w, BranchIndex::new(k, sign)).unwrap();
                assert!(
                    (forward(&p, z) - w).norm() < 1e-9,
                    "branch k={k} sign={sign:?}"
                );
            }
        }
    }

    #[test]
    fn branches_with_opposite_signs_are_antipodal() {
        let p = MapParameter::new(c(0.3, -0.7));
        let w = c(1.0, 2.0);
        let plus = branch_inverse(&p, w, BranchIndex::new(3, Sign::Plus)).unwrap();
        let minus = branch_inverse(&p, w, BranchIndex::new(3, Sign::Minus)).unwrap();
        assert_eq!(plus, -minus);
    }

    #[test]
    fn asymptotic_values_have_no_preimage() {
        let p = MapParameter::new(c(4.0, 4.0));
        for w in [c(4.0, 5.0), c(4.0, 3.0)] {
            assert!(matches!(
                principal_inverse(&p, w),
                Err(InverseError::AsymptoticValue { .. })
            ));
        }
        // but points just outside the tolerance invert fine
        let near = c(4.0, 5.0) + c(1e-12, 0.0);
        assert!(principal_inverse(&p, near).is_ok());
    }

    #[test]
    fn pole_preimage_is_branch_limit_at_infinity() {
        let b = BranchIndex::new(0, Sign::Plus);
        assert_eq!(pole_preimage(b), c((PI / 2.0).sqrt(), 0.0));
        let b2 = BranchIndex::new(2, Sign::Minus);
        assert_eq!(pole_preimage(b2), c(-(2.5 * PI).sqrt(), 0.0));
        // a branch with negative offset: z^2 = -pi/2, so z is imaginary
        let b3 = BranchIndex::new(-1, Sign::Plus);
        let z = pole_preimage(b3);
        assert!((z - c(0.0, (PI / 2.0).sqrt())).norm() < 1e-15);
    }

    #[test]
    fn region_index_brackets_strips() {
        // Re z^2 = 1 lies in strip (0, pi): k = 1
        assert_eq!(region_index(c(1.0, 0.0)).unwrap(), 1);
        // Re z^2 = -1: strip (-pi, 0): k = 0
        assert_eq!(region_index(c(0.0, 1.0)).unwrap(), 0);
        // Re z^2 = 3.5 pi: k = 4
        assert_eq!(region_index(c((3.5 * PI).sqrt(), 0.0)).unwrap(), 4);
    }

    #[test]
    fn region_boundary_is_an_error() {
        // Re z^2 = pi exactly
        assert!(matches!(
            region_index(c(PI.sqrt(), 0.0)),
            Err(InverseError::RegionBoundary { .. })
        ));
        assert!(matches!(
            region_index(c(0.0, 0.0)),
            Err(InverseError::RegionBoundary { .. })
        ));
    }

    #[test]
    fn branch_lands_in_its_own_strip_or_the_next() {
        let p = MapParameter::new(c(4.0, 4.0));
        let w = c(1.5, 0.8);
        for k in -4..=4 {
            let z = branch_inverse(&p, w, BranchIndex::new(k, Sign::Plus)).unwrap();
            let r = region_index(z).unwrap();
            assert!(
                r == k || r == k + 1,
                "branch {k} landed in strip {r}"
            );
        }
    }

    #[test]
    fn pullback_toward_pole_lands_beside_it_and_inverts() {
        let p = MapParameter::new(c(4.0, 4.0));
        let w = pole_point(ZeroPoleIndex(2)); // s_2 = sqrt(1.5 pi)
        for n in [-3, -1, 0, 1, 2, 4] {
            let z = branch_toward_pole(&p, w, ZeroPoleIndex(n)).unwrap();
            assert!((forward(&p, z) - w).norm() < 1e-9, "pole {n}");
            let d = (z - pole_point(ZeroPoleIndex(n))).norm();
            assert!(d < 0.5, "pullback strayed {d} from pole {n}");
        }
    }

    #[test]
    fn pullback_handles_imaginary_axis_root_cut() {
        // Poles on the imaginary axis have z^2 on the negative real axis,
        // the square root's branch cut; the pullback must stay continuous
        // across it by construction.
        // w - lambda real makes arctan real, so z^2 sits on the cut;
        // straddle that line and demand the two pullbacks stay adjacent.
        let p = MapParameter::new(c(4.0, 4.0));
        let w_up = c(2.0, 4.05);
        let w_dn = c(2.0, 3.95);
        let z_up = branch_toward_pole(&p, w_up, ZeroPoleIndex(1)).unwrap();
        let z_dn = branch_toward_pole(&p, w_dn, ZeroPoleIndex(1)).unwrap();
        assert!(
            (z_up - z_dn).norm() < 0.05,
            "discontinuous across the cut: {z_up} vs {z_dn}"
        );
        // both genuinely near s_1 = i sqrt(pi/2)
        let s1 = pole_point(ZeroPoleIndex(1));
        assert!((z_up - s1).norm() < 0.5);
    }
}
