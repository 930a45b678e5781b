//! Properties of the symbolic coding at a parameter far out in the first
//! quadrant: the word metric is an ultrametric and the shift is
//! 2-Lipschitz; cylinders around distinct words are disjoint (their
//! representatives re-encode to their own words); nested cylinders
//! contract; and the coding intertwines iteration with the shift.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tanlab_core::map::MapParameter;
use tanlab_core::symbolic::{
    cylinder_point, itinerary, sequence_distance, shift, verify_conjugacy, ItineraryWord,
};

fn cantor_param() -> MapParameter {
    MapParameter::new(Complex64::new(4.0, 4.0))
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> ItineraryWord {
    let symbols: Vec<i32> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
    ItineraryWord::new(symbols, false)
}

#[test]
fn distance_is_a_shift_lipschitz_ultrametric() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10_000 {
        let (lx, ly, lz) = (
            rng.gen_range(4..12),
            rng.gen_range(4..12),
            rng.gen_range(4..12),
        );
        let x = random_word(&mut rng, lx);
        let y = random_word(&mut rng, ly);
        let z = random_word(&mut rng, lz);
        let dxy = sequence_distance(&x, &y);
        let dyx = sequence_distance(&y, &x);
        assert_eq!(dxy, dyx, "asymmetric distance");
        let dxz = sequence_distance(&x, &z);
        let dyz = sequence_distance(&y, &z);
        assert!(
            dxz <= dxy.max(dyz) + 1e-15,
            "ultrametric violated: {dxz} > max({dxy}, {dyz})"
        );
        let sx = shift(&x).unwrap();
        let sy = shift(&y).unwrap();
        assert!(
            sequence_distance(&sx, &sy) <= 2.0 * dxy + 1e-15,
            "shift expanded by more than 2"
        );
    }
}

#[test]
fn cylinders_of_distinct_words_separate() {
    let p = cantor_param();
    let symbols = [-2, -1, 0, 1, 2];
    let mut reps: Vec<(Vec<i32>, Complex64)> = Vec::new();
    for &a in &symbols {
        for &b in &symbols {
            for &c in &symbols {
                let word = ItineraryWord::new(vec![a, b, c], false);
                let cyl = cylinder_point(&p, &word).unwrap();
                // the representative's own itinerary starts with the word
                let read = itinerary(&p, cyl.representative, 3).unwrap();
                assert_eq!(read.symbols(), word.symbols(), "encoding of {word}");
                reps.push((vec![a, b, c], cyl.representative));
            }
        }
    }
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let d = (reps[i].1 - reps[j].1).norm();
            assert!(
                d > 1e-8,
                "representatives of {:?} and {:?} collide",
                reps[i].0,
                reps[j].0
            );
        }
    }
}

#[test]
fn nested_cylinders_contract() {
    let p = cantor_param();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..5 {
        let word = random_word(&mut rng, 8);
        let mut last = f64::INFINITY;
        for k in 1..=8 {
            let cyl = cylinder_point(&p, &word.prefix(k)).unwrap();
            assert!(
                cyl.diameter_estimate < last,
                "diameter not decreasing at prefix {k} of {word}"
            );
            last = cyl.diameter_estimate;
        }
    }
}

#[test]
fn coding_intertwines_iteration_and_shift() {
    let p = cantor_param();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..30 {
        let len = rng.gen_range(2..=8);
        let mut word = random_word(&mut rng, len);
        word = ItineraryWord::new(word.symbols().to_vec(), true);
        let cyl = cylinder_point(&p, &word).unwrap();
        assert_eq!(
            verify_conjugacy(&p, cyl.representative, 8),
            Ok(true),
            "conjugacy failed on {word}"
        );
    }
}

#[test]
fn terminated_words_round_trip_through_their_pre_pole() {
    let p = cantor_param();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..100 {
        let len = rng.gen_range(1..=6);
        let symbols: Vec<i32> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
        let word = ItineraryWord::new(symbols, true);
        let cyl = cylinder_point(&p, &word).unwrap();
        // Reading back the symbols over a window of the word's own length
        // is always safe: the computed pre-pole shadows the exact one
        // closely enough that every nearest-pole lookup stays correct.
        let read = itinerary(&p, cyl.representative, len).unwrap();
        assert_eq!(
            read.symbols(),
            word.symbols(),
            "pre-pole re-encoding of {word}"
        );
        // Exact pole termination survives forward iteration only while the
        // accumulated rounding error stays under the pole tolerance; each
        // step multiplies it by |f'| (about 60 here), so only short chains
        // land inside the tolerance.
        if len <= 2 {
            assert!(
                read.is_terminated(),
                "shallow pre-pole of {word} did not reach its pole"
            );
        }
    }
}
