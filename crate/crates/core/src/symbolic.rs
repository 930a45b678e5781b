//! Symbolic coding of escaping orbits.
//!
//! On the parameters where all three singular orbits fall into one
//! attracting fixed point beside an asymptotic value, the Julia set is a
//! Cantor dust of points whose orbits thread between the poles. Each orbit
//! is coded by the indices of the poles it passes nearest, terminated when
//! it lands on one exactly; cylinder sets are realized by pulling a pole
//! back through the branch system, and iteration becomes the shift map on
//! these words.

use crate::inverse::branch_toward_pole;
use crate::map::{nearest_pole_index, pole_point, MapParameter, SpherePoint, ZeroPoleIndex};
use crate::orbit::{cantor_signature, singular_orbit_fate, CANTOR_NEIGHBORHOOD_RADIUS};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Radius of the trap disk around the attracting fixed point: an orbit
/// entering it belongs to the Fatou side and carries no itinerary.
pub const TRAP_DISK_RADIUS: f64 = CANTOR_NEIGHBORHOOD_RADIUS;

/// Iteration budget for locating the attracting fixed point.
pub const CANTOR_FIXED_POINT_MAX_ITER: usize = 200;

/// Radius of the probe ring used to estimate cylinder diameters.
pub const CYLINDER_RING_RADIUS: f64 = 0.1;

/// Probe points on the ring.
pub const CYLINDER_RING_SAMPLES: usize = 8;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum SymbolicError {
    /// The orbit entered the trap disk: it converges, so it never codes.
    #[error("orbit entered the attracting basin's trap disk at step {step}")]
    OrbitEnteredFatouNeighborhood { step: usize },
    /// The singular orbits do not exhibit the one-fixed-point signature,
    /// so itineraries are not meaningful at this parameter.
    #[error("parameter lacks the escaping-Julia signature (no attracting fixed point beside an asymptotic value)")]
    NotCantorParameter,
    /// Shift or cylinder construction on an empty word.
    #[error("word has no symbols")]
    EmptyWord,
    /// An inverse-branch target collided with an asymptotic value.
    #[error("inverse branch undefined at an asymptotic value")]
    BranchUndefined,
}

/// A finite itinerary: pole indices visited in order, with a terminator
/// recorded when the orbit lands on the final pole exactly.
///
/// The display form is comma-separated with `inf` for the terminator:
/// `"0,2,-1,inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ItineraryWord {
    symbols: Vec<i32>,
    terminated: bool,
}

impl ItineraryWord {
    pub fn new(symbols: Vec<i32>, terminated: bool) -> Self {
        ItineraryWord {
            symbols,
            terminated,
        }
    }

    pub fn symbols(&self) -> &[i32] {
        &self.symbols
    }

    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The word shortened to its first `k` symbols, dropping the
    /// terminator unless the whole word survives.
    pub fn prefix(&self, k: usize) -> ItineraryWord {
        if k >= self.symbols.len() {
            self.clone()
        } else {
            ItineraryWord::new(self.symbols[..k].to_vec(), false)
        }
    }
}

impl fmt::Display for ItineraryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.symbols {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        if self.terminated {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "inf")?;
        }
        Ok(())
    }
}

impl FromStr for ItineraryWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ItineraryWord::new(Vec::new(), false));
        }
        let tokens: Vec<&str> = s.split(',').map(str::trim).collect();
        let mut symbols = Vec::with_capacity(tokens.len());
        let mut terminated = false;
        for (i, tok) in tokens.iter().enumerate() {
            if *tok == "inf" {
                if i + 1 != tokens.len() {
                    return Err("terminator 'inf' may only end a word".into());
                }
                terminated = true;
            } else {
                let sym: i32 = tok
                    .parse()
                    .map_err(|_| format!("bad itinerary symbol {tok:?}"))?;
                symbols.push(sym);
            }
        }
        Ok(ItineraryWord::new(symbols, terminated))
    }
}

/// The attracting fixed point whose basin traps the singular orbits, when
/// the parameter carries the escaping-Julia signature.
pub fn cantor_fixed_point(param: &MapParameter) -> Result<Complex64, SymbolicError> {
    let fate = singular_orbit_fate(param, CANTOR_FIXED_POINT_MAX_ITER);
    cantor_signature(param, &fate).ok_or(SymbolicError::NotCantorParameter)
}

fn itinerary_with_trap(
    param: &MapParameter,
    trap: Complex64,
    z: Complex64,
    length: usize,
) -> Result<ItineraryWord, SymbolicError> {
    let mut symbols = Vec::with_capacity(length);
    let mut cur = z;
    for step in 0..length {
        if (cur - trap).norm() < TRAP_DISK_RADIUS {
            return Err(SymbolicError::OrbitEnteredFatouNeighborhood { step });
        }
        match param.evaluate(cur) {
            SpherePoint::Infinity => {
                symbols.push(nearest_pole_index(cur));
                return Ok(ItineraryWord::new(symbols, true));
            }
            SpherePoint::Finite(next) => {
                symbols.push(nearest_pole_index(cur));
                cur = next;
            }
        }
    }
    Ok(ItineraryWord::new(symbols, false))
}

/// The itinerary of `z` up to `length` symbols: at each step the index of
/// the nearest pole, truncated with a terminator when the orbit lands on a
/// pole. Entering the trap disk is an error — such orbits converge instead
/// of coding.
pub fn itinerary(
    param: &MapParameter,
    z: Complex64,
    length: usize,
) -> Result<ItineraryWord, SymbolicError> {
    let trap = cantor_fixed_point(param)?;
    itinerary_with_trap(param, trap, z, length)
}

/// A cylinder set `B_word`, represented by a concrete point together with
/// a propagated diameter estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderSet {
    pub word: ItineraryWord,
    /// A point whose itinerary begins with the word (an exact pre-pole by
    /// construction).
    pub representative: Complex64,
    /// Diameter of a probe ring of radius [`CYLINDER_RING_RADIUS`] around
    /// the final pole, pulled back through the same branch composition.
    pub diameter_estimate: f64,
}

/// Realize the cylinder of a word by anchoring at the last symbol's pole
/// and pulling back through the branches of the earlier symbols, innermost
/// first. The terminator plays no role: the anchor already sits on the
/// pole.
pub fn cylinder_point(
    param: &MapParameter,
    word: &ItineraryWord,
) -> Result<CylinderSet, SymbolicError> {
    if word.is_empty() {
        return Err(SymbolicError::EmptyWord);
    }
    cantor_fixed_point(param)?;
    let symbols = word.symbols();
    let base = pole_point(ZeroPoleIndex(symbols[symbols.len() - 1]));

    let mut points = Vec::with_capacity(CYLINDER_RING_SAMPLES + 1);
    points.push(base);
    for s in 0..CYLINDER_RING_SAMPLES {
        let theta = 2.0 * std::f64::consts::PI * s as f64 / CYLINDER_RING_SAMPLES as f64;
        points.push(base + Complex64::from_polar(CYLINDER_RING_RADIUS, theta));
    }

    for &sym in symbols[..symbols.len() - 1].iter().rev() {
        for pt in points.iter_mut() {
            *pt = branch_toward_pole(param, *pt, ZeroPoleIndex(sym))
                .map_err(|_| SymbolicError::BranchUndefined)?;
        }
    }

    let representative = points[0];
    let diameter_estimate = points[1..]
        .iter()
        .map(|p| (p - representative).norm())
        .fold(0.0f64, f64::max)
        * 2.0;

    Ok(CylinderSet {
        word: word.clone(),
        representative,
        diameter_estimate,
    })
}

/// Drop the first symbol. Shifting an empty word (terminated or not) is
/// an error.
pub fn shift(word: &ItineraryWord) -> Result<ItineraryWord, SymbolicError> {
    if word.is_empty() {
        return Err(SymbolicError::EmptyWord);
    }
    Ok(ItineraryWord::new(
        word.symbols[1..].to_vec(),
        word.terminated,
    ))
}

/// The `2^{-k}` ultrametric on symbol sequences, with `k` the length of
/// the common prefix. Words agreeing on their whole overlap have distance
/// zero; terminators are not compared.
pub fn sequence_distance(a: &ItineraryWord, b: &ItineraryWord) -> f64 {
    let window = a.len().min(b.len());
    let mut k = 0;
    while k < window && a.symbols[k] == b.symbols[k] {
        k += 1;
    }
    if k == window {
        0.0
    } else {
        (2.0f64).powi(-(k as i32))
    }
}

/// Check the coding's defining property on a length-`n` window:
/// the itinerary of `f(z)` equals the shifted itinerary of `z`.
///
/// A `z` already on a pole has no forward orbit to compare against, so the
/// window is vacuously verified. An orbit that reaches the trap disk
/// mid-window stops coding at that point — a pullback-built pre-pole
/// shadows the true one only until rounding error compounds past the pole
/// tolerance, after which it genuinely belongs to the basin — so the
/// comparison truncates to the coded prefix. Only a seed already inside
/// the trap disk is an error.
pub fn verify_conjugacy(
    param: &MapParameter,
    z: Complex64,
    n: usize,
) -> Result<bool, SymbolicError> {
    let trap = cantor_fixed_point(param)?;
    match param.evaluate(z) {
        SpherePoint::Infinity => Ok(true),
        SpherePoint::Finite(fz) => {
            let window = match itinerary_with_trap(param, trap, z, n + 1) {
                Ok(_) => n + 1,
                Err(SymbolicError::OrbitEnteredFatouNeighborhood { step }) if step > 0 => step,
                Err(e) => return Err(e),
            };
            let word = itinerary_with_trap(param, trap, z, window)?;
            let shifted = shift(&word)?;
            let direct = itinerary_with_trap(param, trap, fz, window - 1)?;
            Ok(shifted == direct)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cantor_param() -> MapParameter {
        MapParameter::new(c(4.0, 4.0))
    }

    #[test]
    fn word_display_and_parse_round_trip() {
        for text in ["0,2,-1,inf", "", "inf", "5", "-3,7", "0,0,0"] {
            let w: ItineraryWord = text.parse().unwrap();
            assert_eq!(w.to_string(), text, "round trip of {text:?}");
        }
        let w: ItineraryWord = "0,2,-1,inf".parse().unwrap();
        assert_eq!(w.symbols(), &[0, 2, -1]);
        assert!(w.is_terminated());
    }

    #[test]
    fn word_parse_rejects_garbage() {
        assert!("inf,2".parse::<ItineraryWord>().is_err());
        assert!("1,,2".parse::<ItineraryWord>().is_err());
        assert!("abc".parse::<ItineraryWord>().is_err());
        assert!("1.5".parse::<ItineraryWord>().is_err());
    }

    #[test]
    fn shift_drops_the_head() {
        let w = ItineraryWord::new(vec![3, 1, 4, 1], false);
        assert_eq!(shift(&w).unwrap(), ItineraryWord::new(vec![1, 4, 1], false));
        let t = ItineraryWord::new(vec![0], true);
        let shifted = shift(&t).unwrap();
        assert!(shifted.is_empty() && shifted.is_terminated());
        assert_eq!(shift(&shifted), Err(SymbolicError::EmptyWord));
    }

    #[test]
    fn distance_is_prefix_graded() {
        let a = ItineraryWord::new(vec![1, 2, 3, 4], false);
        let b = ItineraryWord::new(vec![1, 2, 3, 5], false);
        let eq = ItineraryWord::new(vec![1, 2, 3, 4], false);
        assert_eq!(sequence_distance(&a, &eq), 0.0);
        assert_eq!(sequence_distance(&a, &b), 0.125);
        let head = ItineraryWord::new(vec![9], false);
        assert_eq!(sequence_distance(&a, &head), 1.0);
        // overlap agreement counts as zero regardless of length
        let prefix = ItineraryWord::new(vec![1, 2], false);
        assert_eq!(sequence_distance(&a, &prefix), 0.0);
    }

    #[test]
    fn itinerary_of_a_pullback_reads_its_branches() {
        let p = cantor_param();
        let word = ItineraryWord::new(vec![2, 0], true);
        let cyl = cylinder_point(&p, &word).unwrap();
        let read = itinerary(&p, cyl.representative, 5).unwrap();
        assert_eq!(read, word);
        // truncation before the pole drops the terminator
        let short = itinerary(&p, cyl.representative, 1).unwrap();
        assert_eq!(short, ItineraryWord::new(vec![2], false));
    }

    #[test]
    fn itinerary_rejects_basin_points() {
        let p = cantor_param();
        let err = itinerary(&p, c(4.1, 5.0), 10).unwrap_err();
        assert_eq!(err, SymbolicError::OrbitEnteredFatouNeighborhood { step: 0 });
    }

    #[test]
    fn itinerary_requires_the_cantor_signature() {
        let p = MapParameter::new(c(0.1, 0.0));
        assert_eq!(
            itinerary(&p, c(1.0, 1.0), 5),
            Err(SymbolicError::NotCantorParameter)
        );
    }

    #[test]
    fn cylinder_diameters_shrink_along_prefixes() {
        let p = cantor_param();
        let word = ItineraryWord::new(vec![2, 0, 1, -1], false);
        let mut last = f64::INFINITY;
        for k in 1..=word.len() {
            let cyl = cylinder_point(&p, &word.prefix(k)).unwrap();
            assert!(
                cyl.diameter_estimate < last,
                "diameter grew at prefix {k}: {} -> {}",
                last,
                cyl.diameter_estimate
            );
            last = cyl.diameter_estimate;
        }
    }

    #[test]
    fn cylinder_of_empty_word_is_an_error() {
        let p = cantor_param();
        let empty = ItineraryWord::new(vec![], false);
        assert_eq!(cylinder_point(&p, &empty), Err(SymbolicError::EmptyWord));
    }

    #[test]
    fn conjugacy_holds_on_pullbacks_and_vacuously_on_poles() {
        let p = cantor_param();
        let word = ItineraryWord::new(vec![2, 0], true);
        let cyl = cylinder_point(&p, &word).unwrap();
        assert_eq!(verify_conjugacy(&p, cyl.representative, 4), Ok(true));
        let pole = pole_point(ZeroPoleIndex(0));
        assert_eq!(verify_conjugacy(&p, pole, 0), Ok(true));
    }

    #[test]
    fn fixed_point_anchor_matches_the_fate() {
        let p = cantor_param();
        let z = cantor_fixed_point(&p).unwrap();
        assert!((z - c(4.0, 5.0)).norm() < 1e-9);
    }
}
