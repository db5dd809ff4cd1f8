//! Brute-force certification of the analytic bounds.
//!
//! Everything here is a deterministic function of its inputs and, for the
//! sampling searches, of `(seed, samples, refine)`. Sampling is split into
//! fixed-size chunks; chunk `k` draws from ChaCha stream `k` of the seed, so the
//! result does not depend on the thread count.

mod certainty;
mod classical;
mod lemmas;
mod search;

pub use certainty::max_certainty_search;
pub use classical::classical_bruteforce_rac;
pub use lemmas::{lemma3_sum, phi_bound_check, PhiReport};
pub use search::{max_porac_search, optimal_encoding_success, PoracSearchResult};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bases::Basis;
use crate::linalg::PureState;
use crate::{Error, Result};

/// Samples per parallel task.
pub(crate) const CHUNK: usize = 256;
/// Hill-climb starting step and stopping step.
pub(crate) const INITIAL_STEP: f64 = 0.1;
pub(crate) const FINAL_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub samples: usize,
    pub seed: u64,
    /// Run a local hill-climb from the best sample.
    pub refine: bool,
    pub tol: f64,
}

impl SearchConfig {
    pub fn new(samples: usize, seed: u64, refine: bool, tol: f64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Unsupported(
                "a search needs at least one sample".into(),
            ));
        }
        if tol.is_nan() || tol < 0.0 {
            return Err(Error::Unsupported(format!(
                "tolerance must be nonnegative, got {tol}"
            )));
        }
        Ok(Self {
            samples,
            seed,
            refine,
            tol,
        })
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 0,
            refine: true,
            tol: 1e-3,
        }
    }
}

/// Generator for task `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar-random pure state: a normalized standard complex Gaussian vector.
pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<PureState> {
    if d < 2 {
        return Err(Error::InvalidDimension { got: d, min: 2 });
    }
    loop {
        let amps: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-20 {
            return PureState::normalized(amps);
        }
    }
}

/// Orthonormalizes `vectors` in order with two Gram–Schmidt passes per vector.
pub(crate) fn gram_schmidt(vectors: Vec<Vec<Complex64>>, label: &str) -> Result<Basis> {
    let mut done: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        for _ in 0..2 {
            for u in &done {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return Err(Error::NotOrthonormal(norm));
        }
        done.push(v.into_iter().map(|a| a / norm).collect());
    }
    let states = done
        .into_iter()
        .map(PureState::new)
        .collect::<Result<_>>()?;
    Basis::new(states, label)
}

/// Haar-random orthonormal basis.
pub fn haar_basis<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Basis> {
    let vectors = (0..d)
        .map(|_| random_pure_state(d, rng).map(PureState::into_amplitudes))
        .collect::<Result<_>>()?;
    gram_schmidt(vectors, "haar")
}

/// First maximum in index order.
pub(crate) fn argmax_first<T>(items: Vec<(f64, T)>) -> Option<(f64, T)> {
    items.into_iter().fold(None, |best, (v, t)| match best {
        Some((bv, bt)) if bv >= v => Some((bv, bt)),
        _ => Some((v, t)),
    })
}

/// The four perturbation directions `±step`, `±i·step`.
pub(crate) fn directions(step: f64) -> [Complex64; 4] {
    [
        Complex64::new(step, 0.0),
        Complex64::new(-step, 0.0),
        Complex64::new(0.0, step),
        Complex64::new(0.0, -step),
    ]
}

/// Compass search: tries `±step`, `±i·step` on each coordinate, keeps any
/// improvement and halves the step after a pass without one.
pub(crate) fn hill_climb(
    mut x: Vec<Complex64>,
    f: impl Fn(&[Complex64]) -> f64,
    renormalize: bool,
) -> (f64, Vec<Complex64>) {
    const MAX_PASSES: usize = 100_000;
    let mut best = f(&x);
    let mut step = INITIAL_STEP;
    let mut passes = 0;
    while step >= FINAL_STEP && passes < MAX_PASSES {
        passes += 1;
        let mut improved = false;
        for j in 0..x.len() {
            for dir in directions(step) {
                x[j] += dir;
                let v = f(&x);
                if v > best {
                    best = v;
                    improved = true;
                } else {
                    x[j] -= dir;
                }
            }
        }
        if renormalize {
            let norm = x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            x.iter_mut().for_each(|a| *a /= norm);
            best = f(&x);
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::computational_basis;
    use approx::assert_abs_diff_eq;

    #[test]
    fn haar_states_are_normalized_and_unbiased() {
        for (d, samples) in [(2usize, 100_000usize), (5, 100_000)] {
            let mut rng = stream_rng(7, 0);
            let zero = computational_basis(d).unwrap().vector(0).clone();
            let mut mean = 0.0;
            for _ in 0..samples {
                let psi = random_pure_state(d, &mut rng).unwrap();
                let norm: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
                mean += psi.probability_of(&zero).unwrap();
            }
            assert_abs_diff_eq!(mean / samples as f64, 1.0 / d as f64, epsilon = 0.01);
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = random_pure_state(3, &mut stream_rng(1, 4)).unwrap();
        let b = random_pure_state(3, &mut stream_rng(1, 4)).unwrap();
        let c = random_pure_state(3, &mut stream_rng(1, 5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn haar_bases_are_orthonormal() {
        let mut rng = stream_rng(3, 0);
        for d in 2..=8 {
            let b = haar_basis(d, &mut rng).unwrap();
            assert!(b.completeness_deviation() < 1e-12);
            assert!(b.as_unitary().is_unitary(1e-12));
        }
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(0, 1, true, 1e-3).is_err());
        assert!(SearchConfig::new(1, 1, true, f64::NAN).is_err());
        assert_eq!(SearchConfig::default().samples, 10_000);
    }
}
