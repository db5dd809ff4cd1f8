//! Generalized Gell-Mann matrices and Bloch vectors.
//!
//! Normalization: `Tr(Γ_i Γ_j) = 2 δ_ij`, so `ρ = I/d + b·Γ` with
//! `b_i = Tr(ρ Γ_i) / 2` and pure states have `|b| = sqrt((d-1)/(2d))`.
//! At `d = 2` this is half the usual qubit Bloch vector `ρ = (I + r·σ)/2`;
//! use [`BlochVector::from_qubit_convention`] to convert.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::linalg::{c, hermitian_eigenvalues, ComplexMatrix, DensityMatrix, PSD_TOL};
use crate::{Error, Result};

/// Slack on the Bloch norm bound.
pub const BLOCH_NORM_TOL: f64 = 1e-10;

/// `sqrt((d-1)/(2d))`, the Bloch length of every pure state in dimension `d`.
pub fn pure_state_norm(d: usize) -> f64 {
    let d = d as f64;
    ((d - 1.0) / (2.0 * d)).sqrt()
}

/// The `d² - 1` generalized Gell-Mann matrices: symmetric `(j,k)` pairs,
/// antisymmetric pairs (both lexicographic in `j < k`), then diagonal matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GellMannBasis {
    dim: usize,
    gamma: Vec<ComplexMatrix>,
}

impl GellMannBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.gamma
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

/// Builds the generalized Gell-Mann basis for dimension `d ≥ 2`.
pub fn gell_mann(d: usize) -> Result<GellMannBasis> {
    if d < 2 {
        return Err(Error::InvalidDimension { got: d, min: 2 });
    }
    let mut gamma = Vec::with_capacity(d * d - 1);
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
        .collect();
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d);
        m[(j, k)] = c(1.0, 0.0);
        m[(k, j)] = c(1.0, 0.0);
        gamma.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d);
        m[(j, k)] = c(0.0, -1.0);
        m[(k, j)] = c(0.0, 1.0);
        gamma.push(m);
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let diag: Vec<f64> = (0..d)
            .map(|i| match i.cmp(&l) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -(l as f64) * norm,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        gamma.push(ComplexMatrix::diagonal(&diag));
    }
    Ok(GellMannBasis { dim: d, gamma })
}

/// Shared, lazily built Gell-Mann basis for `d`.
pub fn gell_mann_cached(d: usize) -> Result<Arc<GellMannBasis>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GellMannBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(basis) = cache.read().expect("gell-mann cache poisoned").get(&d) {
        return Ok(Arc::clone(basis));
    }
    let basis = Arc::new(gell_mann(d)?);
    cache
        .write()
        .expect("gell-mann cache poisoned")
        .entry(d)
        .or_insert_with(|| Arc::clone(&basis));
    Ok(basis)
}

/// Real coefficient vector of length `d² - 1` with norm at most the pure-state length.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    dim: usize,
    components: Vec<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, components: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { got: dim, min: 2 });
        }
        if components.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                found: components.len(),
            });
        }
        let v = Self { dim, components };
        let (norm, bound) = (v.norm(), pure_state_norm(dim));
        if norm > bound + BLOCH_NORM_TOL {
            return Err(Error::BlochNormExceeded { norm, bound });
        }
        Ok(v)
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, vec![0.0; dim.saturating_mul(dim).saturating_sub(1)])
    }

    /// Converts a qubit Bloch vector `r` in the `ρ = (I + r·σ)/2` convention (`|r| ≤ 1`)
    /// to this module's normalization by halving it.
    pub fn from_qubit_convention(r: [f64; 3]) -> Result<Self> {
        Self::new(2, r.iter().map(|x| 0.5 * x).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(dot(&self.components, &other.components))
    }

    /// True if the length matches the pure-state length within [`BLOCH_NORM_TOL`].
    pub fn has_pure_length(&self) -> bool {
        (self.norm() - pure_state_norm(self.dim)).abs() <= BLOCH_NORM_TOL
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `b_i = Tr(ρ Γ_i) / 2`.
pub fn to_bloch(rho: &DensityMatrix) -> BlochVector {
    let d = rho.dim();
    let basis = gell_mann_cached(d).expect("density matrices have d ≥ 1");
    let components = bloch_components(rho.matrix(), &basis);
    BlochVector { dim: d, components }
}

/// `Tr(M Γ_i) / 2` for any matrix, without the state-space checks.
pub(crate) fn bloch_components(m: &ComplexMatrix, basis: &GellMannBasis) -> Vec<f64> {
    basis
        .matrices()
        .iter()
        .map(|g| 0.5 * m.trace_product(g).expect("same dimension").re)
        .collect()
}

/// Operator `I/d + b·Γ` rebuilt from a Bloch vector.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochOperator {
    pub matrix: ComplexMatrix,
    /// Whether the operator is positive semi-definite (min eigenvalue ≥ -1e-10).
    pub physical: bool,
    pub min_eigenvalue: f64,
}

impl BlochOperator {
    /// The operator as a density matrix, if it is physical.
    pub fn to_density_matrix(&self) -> Option<DensityMatrix> {
        if self.physical {
            DensityMatrix::new(self.matrix.clone()).ok()
        } else {
            None
        }
    }
}

/// `I/d + Σ b_i Γ_i` plus a physicality flag. Points on the pure-state sphere
/// are always physical for `d = 2` but not in general for `d ≥ 3`.
pub fn from_bloch(b: &BlochVector) -> Result<BlochOperator> {
    let d = b.dim;
    let (norm, bound) = (b.norm(), pure_state_norm(d));
    if norm > bound + BLOCH_NORM_TOL {
        return Err(Error::BlochNormExceeded { norm, bound });
    }
    let basis = gell_mann_cached(d)?;
    let matrix = operator_from_components(d, &b.components, &basis);
    let min_eigenvalue = hermitian_eigenvalues(&matrix)?[0];
    Ok(BlochOperator {
        matrix,
        physical: min_eigenvalue >= PSD_TOL,
        min_eigenvalue,
    })
}

pub(crate) fn operator_from_components(
    d: usize,
    b: &[f64],
    basis: &GellMannBasis,
) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
    for (g, &coef) in basis.matrices().iter().zip(b) {
        if coef != 0.0 {
            m = &m + &g.scale_real(coef);
        }
    }
    m
}

/// `Tr(ρ_1 ρ_2) = 1/d + 2 b_1·b_2`.
pub fn overlap_via_bloch(b1: &BlochVector, b2: &BlochVector) -> Result<f64> {
    Ok(1.0 / b1.dim as f64 + 2.0 * b1.dot(b2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, projector, PureState};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn check_basis_invariants(d: usize) {
        let basis = gell_mann(d).unwrap();
        assert_eq!(basis.len(), d * d - 1);
        for (i, gi) in basis.matrices().iter().enumerate() {
            assert!(gi.is_hermitian(1e-12));
            assert!(gi.trace().norm() <= 1e-12);
            for (j, gj) in basis.matrices().iter().enumerate() {
                let t = gi.trace_product(gj).unwrap();
                let expected = if i == j { 2.0 } else { 0.0 };
                assert!((t - c(expected, 0.0)).norm() <= 1e-12, "Tr(Γ{i}Γ{j}) = {t}");
            }
        }
    }

    #[test]
    fn qubit_gell_mann_is_pauli() {
        let b = gell_mann(2).unwrap();
        let x = ComplexMatrix::from_row_major(vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
            .unwrap();
        let y = ComplexMatrix::from_row_major(vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
            .unwrap();
        let z = ComplexMatrix::diagonal(&[1.0, -1.0]);
        assert_eq!(b.matrices(), &[x, y, z]);
    }

    #[test]
    fn basis_invariants_d3_d5() {
        check_basis_invariants(3);
        check_basis_invariants(5);
        check_basis_invariants(8);
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(matches!(gell_mann(1), Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn to_bloch_examples() {
        let b = to_bloch(&DensityMatrix::maximally_mixed(4));
        assert!(b.components().iter().all(|&x| x.abs() < 1e-15));

        let b = to_bloch(&projector(&PureState::basis_state(2, 0).unwrap()));
        assert_eq!(b.components(), &[0.0, 0.0, 0.5]);

        let psi = PureState::normalized(vec![c(0.2, 0.5), c(-0.7, 0.1), c(0.3, -0.4)]).unwrap();
        let b = to_bloch(&projector(&psi));
        assert_abs_diff_eq!(b.norm(), 1.0 / 3f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn from_bloch_examples() {
        let op = from_bloch(&BlochVector::zero(4).unwrap()).unwrap();
        assert!(op.physical);
        assert!(
            op.matrix
                .max_abs_diff(DensityMatrix::maximally_mixed(4).matrix())
                .unwrap()
                < 1e-15
        );

        let op = from_bloch(&BlochVector::new(2, vec![0.0, 0.0, 0.5]).unwrap()).unwrap();
        assert!(op.physical);
        assert_eq!(op.matrix, ComplexMatrix::diagonal(&[1.0, 0.0]));

        // Γ_8 = diag(1, 1, -2)/√3; along +Γ_8 at pure length the spectrum is
        // 1/3 + (1/√3)(1/√3) = 2/3 twice and 1/3 - 2/3 = -1/3 once.
        let bound = pure_state_norm(3);
        let mut comps = vec![0.0; 8];
        comps[7] = bound;
        let op = from_bloch(&BlochVector::new(3, comps).unwrap()).unwrap();
        assert!(!op.physical);
        assert_abs_diff_eq!(op.min_eigenvalue, -1.0 / 3.0, epsilon = 1e-12);

        // -Γ_8 gives diag(0, 0, 1): a valid pure state.
        let mut comps = vec![0.0; 8];
        comps[7] = -bound;
        assert!(
            from_bloch(&BlochVector::new(3, comps).unwrap())
                .unwrap()
                .physical
        );
    }

    #[test]
    fn norm_bound_enforced() {
        assert!(matches!(
            BlochVector::new(2, vec![0.0, 0.0, 0.6]),
            Err(Error::BlochNormExceeded { .. })
        ));
    }

    #[test]
    fn overlap_examples() {
        let psi = PureState::normalized(vec![c(0.3, 0.2), c(0.1, -0.9)]).unwrap();
        let b = to_bloch(&projector(&psi));
        assert_abs_diff_eq!(overlap_via_bloch(&b, &b).unwrap(), 1.0, epsilon = 1e-12);

        let d = 5;
        let zero = PureState::basis_state(d, 0).unwrap();
        let e0 = PureState::normalized(vec![c(1.0, 0.0); d]).unwrap();
        let o =
            overlap_via_bloch(&to_bloch(&projector(&zero)), &to_bloch(&projector(&e0))).unwrap();
        assert_abs_diff_eq!(o, 0.2, epsilon = 1e-12);
    }

    fn arb_state(d: usize) -> impl Strategy<Value = PureState> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
            .prop_filter("nonzero", |v| {
                v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
            })
            .prop_map(|v| {
                PureState::normalized(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn round_trip_mixed(
            (a, b, w) in (2usize..=6).prop_flat_map(|d| (arb_state(d), arb_state(d), 0.0f64..=1.0))
        ) {
            let rho = DensityMatrix::mixture(&[(w, &projector(&a)), (1.0 - w, &projector(&b))]).unwrap();
            let op = from_bloch(&to_bloch(&rho)).unwrap();
            prop_assert!(op.physical);
            prop_assert!(op.matrix.max_abs_diff(rho.matrix()).unwrap() <= 1e-12);
        }

        #[test]
        fn pure_iff_maximal_length(
            (a, b, w) in (2usize..=6).prop_flat_map(|d| (arb_state(d), arb_state(d), 0.05f64..=0.95))
        ) {
            prop_assert!(to_bloch(&projector(&a)).has_pure_length());
            let rho = DensityMatrix::mixture(&[(w, &projector(&a)), (1.0 - w, &projector(&b))]).unwrap();
            let mixedness = 1.0 - rho.purity();
            prop_assume!(!(1e-12..1e-6).contains(&mixedness));
            let pure = mixedness < 1e-9;
            prop_assert_eq!(to_bloch(&rho).has_pure_length(), pure);
        }

        #[test]
        fn overlap_matches_inner((u, v) in (2usize..=6).prop_flat_map(|d| (arb_state(d), arb_state(d)))) {
            let via = overlap_via_bloch(&to_bloch(&projector(&u)), &to_bloch(&projector(&v))).unwrap();
            prop_assert!((via - inner(&u, &v).unwrap().norm_sqr()).abs() <= 1e-12);
        }
    }
}
