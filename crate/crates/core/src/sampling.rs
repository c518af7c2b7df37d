//! Seeded random instances for verification campaigns.
//!
//! Every trial gets its own ChaCha stream derived from `(seed, trial)`, so a
//! campaign gives the same result however its trials are scheduled.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::spectral::SpectralElement;

/// Largest `|k|` for random trigonometric elements.
pub const PERIODIC_MAX_FREQUENCY: i64 = 32;
/// Half-width of the frequency range for random real-line elements.
pub const REAL_MAX_FREQUENCY: f64 = 20.0;
/// Default upper bound on the number of atoms.
pub const DEFAULT_MAX_ATOMS: usize = 16;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Trigonometric polynomial with `1..=max_atoms` distinct integer
/// frequencies in `[-32, 32]` and complex Gaussian coefficients.
pub fn random_periodic<R: Rng>(rng: &mut R, max_atoms: usize) -> SpectralElement {
    let mut freqs: Vec<i64> = (-PERIODIC_MAX_FREQUENCY..=PERIODIC_MAX_FREQUENCY).collect();
    freqs.shuffle(rng);
    let count = rng.gen_range(1..=max_atoms.clamp(1, freqs.len()));
    let atoms: Vec<(i64, Complex64)> = freqs[..count].iter().map(|&k| (k, complex_gaussian(rng))).collect();
    SpectralElement::periodic(atoms).expect("finite random atoms")
}

/// Element with `1..=max_atoms` frequencies uniform in `[-20, 20]`.
pub fn random_real<R: Rng>(rng: &mut R, max_atoms: usize) -> SpectralElement {
    let count = rng.gen_range(1..=max_atoms.max(1));
    let atoms: Vec<(f64, Complex64)> = (0..count)
        .map(|_| {
            (
                rng.gen_range(-REAL_MAX_FREQUENCY..=REAL_MAX_FREQUENCY),
                complex_gaussian(rng),
            )
        })
        .collect();
    SpectralElement::new(atoms).expect("finite random atoms")
}

/// Vector of `dim` complex Gaussians.
/// Random element sharing part of the spectrum of `x`: each atom of `x`
/// is kept with probability 1/2 under a fresh amplitude, and up to
/// `extra` independent atoms are added.
pub fn random_companion<R: Rng>(rng: &mut R, x: &SpectralElement, extra: usize) -> SpectralElement {
    let shared: Vec<(f64, Complex64)> = x
        .spectrum()
        .filter_map(|f| {
            if rng.gen_bool(0.5) {
                Some((f, complex_gaussian(rng)))
            } else {
                None
            }
        })
        .collect();
    let own = random_real(rng, extra);
    SpectralElement::new(shared).expect("finite atoms").add(&own)
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    (0..dim).map(|_| complex_gaussian(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = random_periodic(&mut trial_rng(7, 3), 16);
        let b = random_periodic(&mut trial_rng(7, 3), 16);
        let c = random_periodic(&mut trial_rng(7, 4), 16);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn ranges_are_respected() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..100 {
            let x = random_periodic(&mut rng, 16);
            assert!(!x.is_empty() && x.len() <= 16);
            assert!(x.spectrum().all(|f| f.fract() == 0.0 && f.abs() <= 32.0));
            let y = random_real(&mut rng, 8);
            assert!(y.spectrum().all(|f| f.abs() <= 20.0));
        }
    }
}
