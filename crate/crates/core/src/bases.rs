//! Measurement bases: computational, Fourier, Weyl shift/clock operators and
//! mutually unbiased basis (MUB) families in prime dimension.

use num_complex::Complex64;

use crate::linalg::{c, inner, root_of_unity, ComplexMatrix, PureState};
use crate::{Error, Result};

/// Tolerance used when validating orthonormality of a basis.
pub const BASIS_TOL: f64 = 1e-12;
/// Default tolerance for MUB checks.
pub const MUB_TOL: f64 = 1e-10;

/// Ordered orthonormal basis; vector `k` is the measurement outcome `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    dim: usize,
    vectors: Vec<PureState>,
    label: String,
}

impl Basis {
    /// Validates that `vectors` are `d` pairwise orthonormal states of dimension `d`.
    pub fn new(vectors: Vec<PureState>, label: impl Into<String>) -> Result<Self> {
        let dim = vectors.first().map(PureState::dim).unwrap_or(0);
        if dim < 2 {
            return Err(Error::InvalidDimension { got: dim, min: 2 });
        }
        if vectors.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: vectors.len(),
            });
        }
        let dev = orthonormality_deviation(&vectors)?;
        if dev > BASIS_TOL {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(Self {
            dim,
            vectors,
            label: label.into(),
        })
    }

    pub(crate) fn new_unchecked(vectors: Vec<PureState>, label: impl Into<String>) -> Self {
        Self {
            dim: vectors[0].dim(),
            vectors,
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }

    pub fn vector(&self, outcome: usize) -> &PureState {
        &self.vectors[outcome]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `max |Σ_k |v_k⟩⟨v_k| - I|` entrywise.
    pub fn completeness_deviation(&self) -> f64 {
        let d = self.dim;
        let mut sum = ComplexMatrix::zeros(d);
        for v in &self.vectors {
            sum = &sum + &ComplexMatrix::outer(v.amplitudes(), v.amplitudes()).expect("same dim");
        }
        sum.max_abs_diff(&ComplexMatrix::identity(d))
            .expect("same dim")
    }

    /// Matrix whose columns are the basis vectors.
    pub fn as_unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, col| self.vectors[col].amplitudes()[r])
    }
}

fn orthonormality_deviation(vectors: &[PureState]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate().skip(i) {
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner(u, v)? - c(expected, 0.0)).norm());
        }
    }
    Ok(worst)
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension { got: d, min: 2 })
    } else {
        Ok(())
    }
}

/// `{|0⟩, .., |d-1⟩}`.
pub fn computational_basis(d: usize) -> Result<Basis> {
    check_dim(d)?;
    let vectors = (0..d)
        .map(|k| PureState::basis_state(d, k))
        .collect::<Result<_>>()?;
    Ok(Basis::new_unchecked(vectors, "computational"))
}

/// `e_p = d^{-1/2} Σ_q ω^{pq} |q⟩` with `ω = exp(2πi/d)`.
pub fn fourier_basis(d: usize) -> Result<Basis> {
    check_dim(d)?;
    let scale = 1.0 / (d as f64).sqrt();
    let vectors = (0..d)
        .map(|p| {
            let amps = (0..d)
                .map(|q| root_of_unity((p * q) as i64, d) * scale)
                .collect();
            PureState::new(amps).map(PureState::with_canonical_phase)
        })
        .collect::<Result<_>>()?;
    Ok(Basis::new_unchecked(vectors, "fourier"))
}

/// Shift operator `X = Σ_q |q+1 mod d⟩⟨q|`.
pub fn shift_x(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    Ok(ComplexMatrix::from_fn(d, |r, col| {
        if r == (col + 1) % d {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    }))
}

/// Clock operator `Z = Σ_q ω^q |q⟩⟨q|`.
pub fn clock_z(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    Ok(ComplexMatrix::from_fn(d, |r, col| {
        if r == col {
            root_of_unity(r as i64, d)
        } else {
            c(0.0, 0.0)
        }
    }))
}

/// Largest `| |⟨a_i|b_j⟩|² - 1/d |` over all pairs.
pub fn mub_deviation(a: &Basis, b: &Basis) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let target = 1.0 / a.dim as f64;
    let mut worst = 0.0f64;
    for u in &a.vectors {
        for v in &b.vectors {
            worst = worst.max((inner(u, v)?.norm_sqr() - target).abs());
        }
    }
    Ok(worst)
}

/// True iff every cross overlap probability is within `tol` of `1/d`.
pub fn is_mub(a: &Basis, b: &Basis, tol: f64) -> Result<bool> {
    Ok(mub_deviation(a, b)? <= tol)
}

/// A list of pairwise mutually unbiased bases.
#[derive(Debug, Clone, PartialEq)]
pub struct MubFamily {
    dim: usize,
    bases: Vec<Basis>,
}

impl MubFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn into_bases(self) -> Vec<Basis> {
        self.bases
    }

    /// Largest MUB deviation over all pairs of bases in the family.
    pub fn max_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.bases.iter().enumerate() {
            for b in &self.bases[i + 1..] {
                worst = worst.max(mub_deviation(a, b).expect("same dim"));
            }
        }
        worst
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

/// Eigenbasis of the Weyl operator `X Z^k` in dimension `d`.
///
/// The eigenvalues are `λ_j = μ ω^j` with `μ = exp(iπ k (d-1)/d)` and the
/// eigenvectors have amplitudes `d^{-1/2} λ_j^{-q} ω^{k q(q-1)/2}`.
fn weyl_eigenbasis(d: usize, k: usize) -> Result<Basis> {
    let scale = 1.0 / (d as f64).sqrt();
    let mu_angle = std::f64::consts::PI * (k * (d - 1)) as f64 / d as f64;
    let two_pi_over_d = 2.0 * std::f64::consts::PI / d as f64;
    let vectors = (0..d)
        .map(|j| {
            let amps: Vec<Complex64> = (0..d)
                .map(|q| {
                    // phase of λ_j^{-q} ω^{k q(q-1)/2}, with exponents reduced mod d
                    let lambda_phase =
                        -(q as f64) * mu_angle - two_pi_over_d * ((j * q) % d) as f64;
                    let chirp = ((k * q * q.saturating_sub(1) / 2) % d) as f64 * two_pi_over_d;
                    Complex64::from_polar(scale, lambda_phase + chirp)
                })
                .collect();
            PureState::normalized(amps).map(PureState::with_canonical_phase)
        })
        .collect::<Result<Vec<_>>>()?;
    Basis::new(vectors, format!("weyl XZ^{k}"))
}

/// `count` pairwise mutually unbiased bases in prime dimension `d`: the
/// eigenbasis of `Z` followed by the eigenbases of `X Z^k` for `k = 0..count-2`.
pub fn mub_family_prime(d: usize, count: usize) -> Result<MubFamily> {
    if !is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    if count > d + 1 {
        return Err(Error::TooManyBases {
            requested: count,
            max: d + 1,
        });
    }
    if count < 2 {
        return Err(Error::Unsupported(format!(
            "a MUB family needs at least 2 bases, got {count}"
        )));
    }
    let mut bases = vec![computational_basis(d)?];
    for k in 0..count - 1 {
        bases.push(weyl_eigenbasis(d, k)?);
    }
    Ok(MubFamily { dim: d, bases })
}

/// MUB family for any `d`: prime `d` uses [`mub_family_prime`]; composite `d`
/// supports only the computational/Fourier pair.
pub fn mub_family(d: usize, count: usize) -> Result<MubFamily> {
    if is_prime(d) {
        return mub_family_prime(d, count);
    }
    check_dim(d)?;
    if count == 2 {
        return Ok(MubFamily {
            dim: d,
            bases: vec![computational_basis(d)?, fourier_basis(d)?],
        });
    }
    Err(Error::NotPrime(d))
}

/// Eigenbasis `{|+n⟩, |-n⟩}` of `n·σ` for a unit qubit direction `n`.
pub fn qubit_basis(direction: [f64; 3], label: impl Into<String>) -> Result<Basis> {
    let len = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (len - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(len));
    }
    let plus = qubit_state(direction)?;
    let minus = qubit_state([-direction[0], -direction[1], -direction[2]])?;
    Basis::new(vec![plus, minus], label)
}

/// Pure qubit state with unit Bloch direction `n` (in the `ρ = (I + n·σ)/2` convention).
pub fn qubit_state(n: [f64; 3]) -> Result<PureState> {
    let theta = n[2].clamp(-1.0, 1.0).acos();
    let phi = n[1].atan2(n[0]);
    let amps = vec![
        c((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ];
    PureState::normalized(amps).map(PureState::with_canonical_phase)
}
