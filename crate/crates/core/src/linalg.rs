//! Small dense complex linear algebra for d-level systems (d up to about 16).

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance on `|norm - 1|` for pure states.
pub const NORM_TOL: f64 = 1e-12;
/// Entrywise tolerance on `M - M†` for Hermitian matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `|Tr ρ - 1|` for density matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semi-definite.
pub const PSD_TOL: f64 = -1e-10;

const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(2πi k / d)`, with `k` reduced mod `d` first so large exponents stay exact.
pub fn root_of_unity(k: i64, d: usize) -> Complex64 {
    let d_i = d as i64;
    let k = k.rem_euclid(d_i);
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64)
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for col in 0..dim {
                data.push(f(r, col));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() || dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |r, c| {
            if r == c {
                Complex64::new(values[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        check_dim(u.len(), v.len())?;
        Ok(Self::from_fn(u.len(), |r, c| u[r] * v[c].conj()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        check_dim(self.dim, other.dim)?;
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += self.data[i * d + j] * other.data[j * d + i];
            }
        }
        Ok(acc)
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        check_dim(self.dim, v.len())?;
        let d = self.dim;
        Ok((0..d)
            .map(|r| (0..d).map(|c| self.data[r * d + c] * v[c]).sum())
            .collect())
    }

    /// `max |M - M†|` over all entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        check_dim(self.dim, other.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&i, &j| a[i * d + col].norm().total_cmp(&a[j * d + col].norm()))
                .unwrap_or(col);
            let p = a[pivot * d + col];
            if p.norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for k in 0..d {
                    a.swap(pivot * d + k, col * d + k);
                }
                det = -det;
            }
            det *= p;
            for r in col + 1..d {
                let factor = a[r * d + col] / p;
                for k in col..d {
                    let v = a[col * d + k];
                    a[r * d + k] -= factor * v;
                }
            }
        }
        det
    }

    /// True if `U U† = I` entrywise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = self * &self.adjoint();
        prod.max_abs_diff(&Self::identity(self.dim))
            .map(|e| e <= tol)
            .unwrap_or(false)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    /// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Unit-norm vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension { got: 0, min: 1 });
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension { got: 0, min: 1 });
        }
        let n = norm(&amplitudes);
        if !(n.is_finite() && n > 1e-300) {
            return Err(Error::NotNormalized(n));
        }
        for a in &mut amplitudes {
            *a /= n;
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis vector `|k⟩` in dimension `d`.
    pub fn basis_state(d: usize, k: usize) -> Result<Self> {
        if k >= d {
            return Err(Error::DitOutOfRange { dit: k, d });
        }
        let mut amps = vec![c(0.0, 0.0); d];
        amps[k] = c(1.0, 0.0);
        Ok(Self { amplitudes: amps })
    }

    /// Recovers `|ψ⟩` from a rank-one projector `|ψ⟩⟨ψ|`, up to global phase.
    /// The column with the largest diagonal entry is used and the phase is made canonical.
    pub fn from_rank_one(projector: &ComplexMatrix) -> Result<Self> {
        let d = projector.dim();
        let k = (0..d)
            .max_by(|&i, &j| projector[(i, i)].re.total_cmp(&projector[(j, j)].re))
            .ok_or(Error::InvalidDimension { got: 0, min: 1 })?;
        let column = (0..d).map(|r| projector[(r, k)]).collect();
        Ok(Self::normalized(column)?.with_canonical_phase())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// `|⟨other|self⟩|²`, i.e. the Born probability of outcome `other` for this pure state.
    pub fn probability_of(&self, other: &PureState) -> Result<f64> {
        Ok(inner(other, self)?.norm_sqr())
    }

    /// Multiplies by a global phase so the first amplitude of modulus above
    /// `1e-12` is real and positive.
    pub fn with_canonical_phase(mut self) -> Self {
        if let Some(first) = self.amplitudes.iter().find(|a| a.norm() > 1e-12) {
            let phase = first.conj() / first.norm();
            for a in &mut self.amplitudes {
                *a *= phase;
            }
        }
        self
    }

    /// `U|ψ⟩`, renormalized to absorb rounding; fails if `U` is far from norm preserving.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let out = unitary.apply(&self.amplitudes)?;
        let n = norm(&out);
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(n));
        }
        Self::normalized(out)
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian, unit-trace, positive semi-definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let herm = matrix.hermitian_deviation();
        if herm > HERMITIAN_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        }
    }

    /// Uniform or weighted mixture `Σ w_k ρ_k`; weights must be nonnegative and sum to 1.
    pub fn mixture(components: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidWeights("empty mixture".into()))?;
        let d = first.1.dim();
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if components.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!(
                "mixture weights sum to {total}"
            )));
        }
        let mut acc = ComplexMatrix::zeros(d);
        for (w, rho) in components {
            check_dim(d, rho.dim())?;
            acc = &acc + &rho.matrix.scale_real(*w);
        }
        Ok(Self { matrix: acc })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix
            .trace_product(&self.matrix)
            .map(|z| z.re)
            .unwrap_or(f64::NAN)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("density matrices are Hermitian")
    }
}

/// `⟨u|v⟩`, conjugate-linear in `u`.
pub fn inner(u: &PureState, v: &PureState) -> Result<Complex64> {
    check_dim(u.dim(), v.dim())?;
    Ok(u.amplitudes
        .iter()
        .zip(&v.amplitudes)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// `|v⟩⟨v|` as a density matrix.
pub fn projector(v: &PureState) -> DensityMatrix {
    let amps = v.amplitudes();
    DensityMatrix {
        matrix: ComplexMatrix::from_fn(amps.len(), |r, c| amps[r] * amps[c].conj()),
    }
}

/// `Tr(ρ |outcome⟩⟨outcome|) = ⟨outcome|ρ|outcome⟩`, clamped to `[0, 1]`.
pub fn born_probability(rho: &DensityMatrix, outcome: &PureState) -> Result<f64> {
    check_dim(rho.dim(), outcome.dim())?;
    let v = outcome.amplitudes();
    let rv = rho.matrix.apply(v)?;
    let p: f64 = v.iter().zip(&rv).map(|(a, b)| (a.conj() * b).re).sum();
    Ok(p.clamp(0.0, 1.0))
}

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex Jacobi rotations.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let herm = m.hermitian_deviation();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let d = m.dim();
    let mut a = m.clone();
    for i in 0..d {
        a[(i, i)].im = 0.0;
    }

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..d {
            for col in 0..d {
                if r != col {
                    s += a[(r, col)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) >= JACOBI_OFF_DIAGONAL_TOL {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut values: Vec<f64> = (0..d).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Annihilates `a[p][q]` with `A ← U† A U`, where `U` combines a phase on
/// index `q` (making the pivot real) with a real Givens rotation.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    // U = diag(1, e^{-iφ}) on (p, q) followed by [[c, s], [-s, c]].
    let u_pp = c(cs, 0.0);
    let u_pq = c(sn, 0.0);
    let u_qp = phase.conj() * (-sn);
    let u_qq = phase.conj() * cs;

    let d = a.dim();
    for k in 0..d {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..d {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = c(0.0, 0.0);
    a[(q, p)] = c(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}
