//! Fine-grained uncertainty: certainty sums, their analytic upper bounds and
//! the states that reach them.
//!
//! For outcomes `|x_1⟩, .., |x_N⟩` of `N` observables chosen with probabilities
//! `p_i`, the certainty of a state `ρ` is `Σ_i p_i ⟨x_i|ρ|x_i⟩`. Three bounds are
//! provided:
//!
//! - [`fur_bound_general`]: uniform choice over `N` arbitrary observables, from
//!   aligning the Bloch vector of `ρ` with `Σ_i x⃗_i`. Tight for qubits; for
//!   `d ≥ 3` the aligned Bloch point may not be a state.
//! - [`tight_fur_two`]: two observables in any dimension, `(1 + |⟨x_1|x_2⟩|)/2`,
//!   always tight.
//! - [`fur_bound_mub`]: the closed form for `N` mutually unbiased bases.

use num_complex::Complex64;

use crate::bloch::{from_bloch, pure_state_norm, to_bloch, BlochVector};
use crate::linalg::{born_probability, inner, projector, DensityMatrix, PureState};
use crate::{Error, Result};

/// Tolerance for "the maximizer reaches the bound".
pub const SATURATION_TOL: f64 = 1e-9;

/// One chosen outcome vector per observable, with the distribution over observables.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeSet {
    dim: usize,
    outcomes: Vec<PureState>,
    weights: Vec<f64>,
}

impl OutcomeSet {
    pub fn new(outcomes: Vec<PureState>, weights: Vec<f64>) -> Result<Self> {
        let dim = outcomes
            .first()
            .map(PureState::dim)
            .ok_or_else(|| Error::InvalidWeights("outcome set is empty".into()))?;
        if let Some(bad) = outcomes.iter().find(|o| o.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        if weights.len() != outcomes.len() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} outcomes",
                weights.len(),
                outcomes.len()
            )));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!(
                "weights must be nonnegative and sum to 1 (sum {total})"
            )));
        }
        Ok(Self {
            dim,
            outcomes,
            weights,
        })
    }

    /// Uniform weights `1/N`.
    pub fn uniform(outcomes: Vec<PureState>) -> Result<Self> {
        let n = outcomes.len().max(1);
        Self::new(outcomes, vec![1.0 / n as f64; n])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> &[PureState] {
        &self.outcomes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        let w = 1.0 / self.len() as f64;
        self.weights.iter().all(|x| (x - w).abs() <= 1e-12)
    }

    /// Certainty of a pure state, `Σ_i p_i |⟨x_i|ψ⟩|²`.
    pub fn certainty_of_pure(&self, psi: &PureState) -> Result<f64> {
        self.outcomes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| Ok(w * inner(x, psi)?.norm_sqr()))
            .sum()
    }
}

/// Outcome of a bound computation.
#[derive(Debug, Clone, PartialEq)]
pub struct FurReport {
    /// Certainty reached by the candidate maximizer. For a non-physical
    /// candidate this is the value of the (non-positive) operator and equals the bound.
    pub certainty: f64,
    pub bound: f64,
    pub maximizer: Option<PureState>,
    pub maximizer_physical: bool,
    pub saturated: bool,
}

/// `P^cert(ρ) = Σ_i p_i Tr(ρ |x_i⟩⟨x_i|)`.
pub fn certainty_sum(rho: &DensityMatrix, s: &OutcomeSet) -> Result<f64> {
    s.outcomes
        .iter()
        .zip(&s.weights)
        .map(|(x, w)| Ok(w * born_probability(rho, x)?))
        .sum()
}

/// `cos θ_jk = (d |⟨x_j|x_k⟩|² - 1) / (d - 1)`: the cosine between the Bloch
/// vectors of two pure states.
pub fn bloch_cosine(x: &PureState, y: &PureState) -> Result<f64> {
    let d = x.dim() as f64;
    Ok((d * inner(x, y)?.norm_sqr() - 1.0) / (d - 1.0))
}

/// `N' = N + 2 Σ_{j>k} cos θ_jk`, so that `|Σ x⃗_i| = sqrt(N') · sqrt((d-1)/(2d))`.
pub fn effective_count(s: &OutcomeSet) -> Result<f64> {
    let xs = &s.outcomes;
    let mut n_prime = xs.len() as f64;
    for j in 0..xs.len() {
        for k in 0..j {
            n_prime += 2.0 * bloch_cosine(&xs[j], &xs[k])?;
        }
    }
    Ok(n_prime)
}

/// Upper bound `(1/d)(1 + (d-1) sqrt(N')/N)` for uniformly chosen arbitrary
/// observables, with the candidate maximizer whose Bloch vector is `Σ x⃗_i / sqrt(N')`.
pub fn fur_bound_general(s: &OutcomeSet) -> Result<FurReport> {
    if !s.is_uniform() {
        return Err(Error::InvalidWeights(
            "the general bound requires uniform weights".into(),
        ));
    }
    let d = s.dim;
    if d < 2 {
        return Err(Error::InvalidDimension { got: d, min: 2 });
    }
    let n = s.len() as f64;
    let df = d as f64;
    let n_prime = effective_count(s)?.max(0.0);

    if n_prime < 1e-12 {
        // Σ x⃗_i = 0: every state gives at most 1/d; report the maximally mixed state.
        return Ok(FurReport {
            certainty: certainty_sum(&DensityMatrix::maximally_mixed(d), s)?,
            bound: 1.0 / df,
            maximizer: None,
            maximizer_physical: true,
            saturated: false,
        });
    }

    let bound = (1.0 + (df - 1.0) * n_prime.sqrt() / n) / df;

    let mut sum = vec![0.0; d * d - 1];
    for x in &s.outcomes {
        for (acc, v) in sum.iter_mut().zip(to_bloch(&projector(x)).components()) {
            *acc += v;
        }
    }
    let scale = 1.0 / n_prime.sqrt();
    let mut b: Vec<f64> = sum.iter().map(|v| v * scale).collect();
    // N' comes from overlaps; trim rounding so the point sits on the pure-state sphere.
    let len = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = pure_state_norm(d);
    if len > target {
        b.iter_mut().for_each(|x| *x *= target / len);
    }
    let candidate = from_bloch(&BlochVector::new(d, b)?)?;

    if candidate.physical {
        let psi = PureState::from_rank_one(&candidate.matrix)?;
        let certainty = s.certainty_of_pure(&psi)?;
        Ok(FurReport {
            certainty,
            bound,
            saturated: (certainty - bound).abs() <= SATURATION_TOL,
            maximizer: Some(psi),
            maximizer_physical: true,
        })
    } else {
        let certainty = s
            .outcomes
            .iter()
            .zip(&s.weights)
            .map(|(x, w)| {
                let mx = candidate.matrix.apply(x.amplitudes())?;
                let v: Complex64 = x
                    .amplitudes()
                    .iter()
                    .zip(&mx)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                Ok(w * v.re)
            })
            .sum::<Result<f64>>()?;
        Ok(FurReport {
            certainty,
            bound,
            maximizer: None,
            maximizer_physical: false,
            saturated: false,
        })
    }
}

/// Tight two-outcome bound `(1 + |⟨x_1|x_2⟩|)/2` with maximizer
/// `∝ x_1 + e^{-i arg⟨x_1|x_2⟩} x_2`.
pub fn tight_fur_two(x1: &PureState, x2: &PureState) -> Result<FurReport> {
    let ov = inner(x1, x2)?;
    let r = ov.norm();
    let phase = if r > 1e-300 {
        ov.conj() / r
    } else {
        Complex64::new(1.0, 0.0)
    };
    let amps = x1
        .amplitudes()
        .iter()
        .zip(x2.amplitudes())
        .map(|(a, b)| a + phase * b)
        .collect();
    let psi = PureState::normalized(amps)?;
    let bound = 0.5 * (1.0 + r);
    let certainty = 0.5 * (inner(x1, &psi)?.norm_sqr() + inner(x2, &psi)?.norm_sqr());
    Ok(FurReport {
        certainty,
        bound,
        saturated: (certainty - bound).abs() <= SATURATION_TOL,
        maximizer: Some(psi),
        maximizer_physical: true,
    })
}

/// `(1/d)(1 + (d-1)/sqrt(N))`: the bound for `N` mutually unbiased bases.
pub fn fur_bound_mub(n: usize, d: usize) -> f64 {
    let (n, d) = (n as f64, d as f64);
    (1.0 + (d - 1.0) / n.sqrt()) / d
}

/// Both sides of `arccos⟨x_1⟩_ρ + arccos⟨x_2⟩_ρ ≥ arccos|⟨x_1|x_2⟩|`,
/// with `⟨x⟩_ρ = sqrt(Tr ρ|x⟩⟨x|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauPollak {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn landau_pollak_check(
    rho: &DensityMatrix,
    x1: &PureState,
    x2: &PureState,
) -> Result<LandauPollak> {
    let a1 = born_probability(rho, x1)?.sqrt().clamp(0.0, 1.0).acos();
    let a2 = born_probability(rho, x2)?.sqrt().clamp(0.0, 1.0).acos();
    let rhs = inner(x1, x2)?.norm().clamp(0.0, 1.0).acos();
    let lhs = a1 + a2;
    Ok(LandauPollak {
        lhs,
        rhs,
        holds: lhs >= rhs - 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{computational_basis, fourier_basis, mub_family_prime, qubit_state};
    use crate::linalg::c;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn arb_state(d: usize) -> impl Strategy<Value = PureState> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
            .prop_filter("nonzero", |v| {
                v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
            })
            .prop_map(|v| {
                PureState::normalized(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap()
            })
    }

    fn zero_and_e0(d: usize) -> (PureState, PureState) {
        (
            computational_basis(d).unwrap().vector(0).clone(),
            fourier_basis(d).unwrap().vector(0).clone(),
        )
    }

    #[test]
    fn certainty_sum_examples() {
        let (z, e) = zero_and_e0(3);
        let s = OutcomeSet::uniform(vec![z, e]).unwrap();
        assert_abs_diff_eq!(
            certainty_sum(&DensityMatrix::maximally_mixed(3), &s).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );

        // σ_x and σ_z "+1" eigenvectors; maximizer is the +1 eigenstate of (σx+σz)/√2
        let s2 = std::f64::consts::FRAC_1_SQRT_2;
        let s = OutcomeSet::uniform(vec![
            qubit_state([1., 0., 0.]).unwrap(),
            qubit_state([0., 0., 1.]).unwrap(),
        ])
        .unwrap();
        let rho = projector(&qubit_state([s2, 0.0, s2]).unwrap());
        assert_abs_diff_eq!(
            certainty_sum(&rho, &s).unwrap(),
            0.5 * (1.0 + s2),
            epsilon = 1e-12
        );

        // ψ_00 in d = 4 against {|0⟩, e_0}: (1 + 1/√4)/2
        let (z, e) = zero_and_e0(4);
        let psi = PureState::normalized(
            z.amplitudes()
                .iter()
                .zip(e.amplitudes())
                .map(|(a, b)| a + b)
                .collect(),
        )
        .unwrap();
        let s = OutcomeSet::uniform(vec![z, e]).unwrap();
        assert_abs_diff_eq!(
            certainty_sum(&projector(&psi), &s).unwrap(),
            0.75,
            epsilon = 1e-12
        );
    }

    #[test]
    fn outcome_set_validation() {
        let (z, e) = zero_and_e0(2);
        assert!(OutcomeSet::new(vec![z.clone(), e.clone()], vec![0.6, 0.6]).is_err());
        assert!(OutcomeSet::new(vec![z.clone(), e.clone()], vec![-0.5, 1.5]).is_err());
        assert!(matches!(
            OutcomeSet::uniform(vec![z, zero_and_e0(3).0]),
            Err(Error::DimensionMismatch { .. })
        ));
        let s = OutcomeSet::new(vec![zero_and_e0(2).0, zero_and_e0(2).1], vec![0.3, 0.7]).unwrap();
        assert!(matches!(
            fur_bound_general(&s),
            Err(Error::InvalidWeights(_))
        ));
    }

    #[test]
    fn general_bound_examples() {
        let (z, e) = zero_and_e0(2);
        let r = fur_bound_general(&OutcomeSet::uniform(vec![z.clone(), e]).unwrap()).unwrap();
        assert_abs_diff_eq!(r.bound, 0.5 * (1.0 + 0.5f64.sqrt()), epsilon = 1e-12);
        assert_abs_diff_eq!(r.bound, 0.853553, epsilon = 1e-6);
        assert!(r.saturated && r.maximizer_physical);

        for d in [2, 3, 6] {
            let v = PureState::normalized((0..d).map(|k| c(1.0 + k as f64, -(k as f64))).collect())
                .unwrap();
            let r = fur_bound_general(&OutcomeSet::uniform(vec![v.clone()]).unwrap()).unwrap();
            assert_abs_diff_eq!(r.bound, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(
                inner(&v, r.maximizer.as_ref().unwrap()).unwrap().norm(),
                1.0,
                epsilon = 1e-10
            );
        }

        let r = fur_bound_general(&OutcomeSet::uniform(vec![z.clone(), z]).unwrap()).unwrap();
        assert_abs_diff_eq!(r.bound, 1.0, epsilon = 1e-12);
        assert!(r.saturated);
    }

    #[test]
    fn degenerate_sum_reports_maximally_mixed() {
        // opposite qubit outcomes: x⃗_1 + x⃗_2 = 0
        let s = OutcomeSet::uniform(vec![
            PureState::basis_state(2, 0).unwrap(),
            PureState::basis_state(2, 1).unwrap(),
        ])
        .unwrap();
        let r = fur_bound_general(&s).unwrap();
        assert_abs_diff_eq!(r.bound, 0.5);
        assert!(r.maximizer.is_none() && !r.saturated);
        assert_abs_diff_eq!(r.certainty, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn nonphysical_candidate_in_qutrit() {
        // |0⟩, |1⟩ in d = 3: the aligned operator is diag(2/3, 2/3, -1/3)
        let s = OutcomeSet::uniform(vec![
            PureState::basis_state(3, 0).unwrap(),
            PureState::basis_state(3, 1).unwrap(),
        ])
        .unwrap();
        let r = fur_bound_general(&s).unwrap();
        assert!(!r.maximizer_physical);
        assert!(!r.saturated);
        assert!(r.certainty <= r.bound + 1e-9);
        // the true maximum is 1/2 (any state in span{|0⟩,|1⟩}); the bound is higher
        assert!(r.bound > 0.5 + 1e-3);
    }

    #[test]
    fn tight_two_examples() {
        let v = PureState::normalized(vec![c(0.2, 0.1), c(0.5, -0.3), c(0.1, 0.7)]).unwrap();
        let r = tight_fur_two(&v, &v).unwrap();
        assert_abs_diff_eq!(r.bound, 1.0, epsilon = 1e-12);
        let r = tight_fur_two(
            &PureState::basis_state(4, 1).unwrap(),
            &PureState::basis_state(4, 3).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(r.bound, 0.5);
        assert!(r.saturated);
        for d in 2..=9 {
            let (z, e) = zero_and_e0(d);
            let r = tight_fur_two(&z, &e).unwrap();
            assert_abs_diff_eq!(
                r.bound,
                0.5 * (1.0 + 1.0 / (d as f64).sqrt()),
                epsilon = 1e-12
            );
            assert!(r.saturated);
        }
        let (z, e) = zero_and_e0(3);
        assert_abs_diff_eq!(
            tight_fur_two(&z, &e).unwrap().bound,
            0.788675,
            epsilon = 1e-6
        );
    }

    #[test]
    fn mub_closed_form() {
        assert_abs_diff_eq!(fur_bound_mub(2, 2), 0.8535534, epsilon = 1e-7);
        assert_abs_diff_eq!(fur_bound_mub(3, 2), 0.7886751, epsilon = 1e-7);
        for d in 2..10 {
            assert_abs_diff_eq!(fur_bound_mub(1, d), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn mub_consistency_across_bounds() {
        for d in [2, 3, 5, 7] {
            let fam = mub_family_prime(d, 2).unwrap();
            let x1 = fam.bases()[0].vector(1).clone();
            let x2 = fam.bases()[1].vector(d - 1).clone();
            let general =
                fur_bound_general(&OutcomeSet::uniform(vec![x1.clone(), x2.clone()]).unwrap())
                    .unwrap()
                    .bound;
            assert_abs_diff_eq!(general, fur_bound_mub(2, d), epsilon = 1e-12);
        }
        // N = 2 MUB bound and tight two-outcome bound coincide only at d = 2
        let (z, e) = zero_and_e0(2);
        assert_abs_diff_eq!(
            tight_fur_two(&z, &e).unwrap().bound,
            fur_bound_mub(2, 2),
            epsilon = 1e-12
        );
    }

    #[test]
    fn landau_pollak_examples() {
        let (z, e) = zero_and_e0(3);
        let lp = landau_pollak_check(&projector(&z), &z, &e).unwrap();
        assert_abs_diff_eq!(lp.lhs, lp.rhs, epsilon = 1e-12);
        assert!(lp.holds);

        let lp = landau_pollak_check(&DensityMatrix::maximally_mixed(3), &z, &e).unwrap();
        assert_abs_diff_eq!(lp.lhs, 2.0 * (1.0 / 3f64.sqrt()).acos(), epsilon = 1e-12);
        assert!(lp.holds && lp.lhs > lp.rhs);

        let m = tight_fur_two(&z, &e).unwrap().maximizer.unwrap();
        let lp = landau_pollak_check(&projector(&m), &z, &e).unwrap();
        assert_abs_diff_eq!(lp.lhs, lp.rhs, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn tight_two_is_saturated((x1, x2) in (2usize..=6).prop_flat_map(|d| (arb_state(d), arb_state(d)))) {
            let r = tight_fur_two(&x1, &x2).unwrap();
            prop_assert!((r.certainty - r.bound).abs() <= 1e-10);
        }

        #[test]
        fn qubit_general_equals_tight((x1, x2) in (arb_state(2), arb_state(2))) {
            let g = fur_bound_general(&OutcomeSet::uniform(vec![x1.clone(), x2.clone()]).unwrap()).unwrap();
            let t = tight_fur_two(&x1, &x2).unwrap();
            prop_assert!((g.bound - t.bound).abs() <= 1e-12);
            if g.maximizer_physical && g.maximizer.is_some() {
                prop_assert!(g.saturated);
            }
        }

        #[test]
        fn dominance_and_landau_pollak(
            (x1, x2, x3, psi) in (2usize..=5).prop_flat_map(|d| (arb_state(d), arb_state(d), arb_state(d), arb_state(d)))
        ) {
            let rho = projector(&psi);
            let s = OutcomeSet::uniform(vec![x1.clone(), x2.clone(), x3]).unwrap();
            let r = fur_bound_general(&s).unwrap();
            prop_assert!(certainty_sum(&rho, &s).unwrap() <= r.bound + 1e-9);
            prop_assert!(r.certainty <= r.bound + 1e-9);
            prop_assert!(landau_pollak_check(&rho, &x1, &x2).unwrap().holds);
        }
    }
}
