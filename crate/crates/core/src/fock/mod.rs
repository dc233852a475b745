//! Truncated harmonic-oscillator (Fock) representation: the numerical
//! Hilbert-space side against which the symbolic results are checked.
//!
//! Matrices are represented at dimension `N`, but only the interior block is
//! trusted. Truncating the ladder operators corrupts the top corner, so every
//! expectation value requires `N ≥ max level + degree + TRUNCATION_BUFFER`
//! and is recomputed at `2N` as a stability check.

mod wigner;

pub use wigner::{laguerre, overlap_expectation, wigner_fock_closed_form, wigner_grid, wigner_grid_with, GridSpec, WignerGrid};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::operator::OpPoly;
use crate::scalar::ratio_to_f64;

/// Extra basis levels required beyond `max level + operator degree`.
pub const TRUNCATION_BUFFER: usize = 8;
/// Largest admissible change of a trace when the dimension is doubled.
pub const STABILITY_TOL: f64 = 1e-8;
/// Largest admissible imaginary part of an expectation value.
pub const IMAG_TOL: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGEN_TOL: f64 = 1e-10;
/// Entries below this magnitude do not count toward a state's support.
const SUPPORT_TOL: f64 = 1e-14;

/// A complex `N × N` matrix in the number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    pub entries: DMatrix<Complex64>,
    pub hbar: BigRational,
}

impl FockMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn identity(dim: usize, hbar: BigRational) -> Self {
        FockMatrix { entries: DMatrix::identity(dim, dim), hbar }
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_defect(&self) -> f64 {
        let m = &self.entries;
        (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Top-left `k × k` block.
    pub fn interior(&self, k: usize) -> DMatrix<Complex64> {
        self.entries.view((0, 0), (k, k)).into_owned()
    }
}

/// Sparse action of the truncated q̂ and p̂ on coefficient vectors.
#[derive(Clone, Debug)]
struct Ladder {
    dim: usize,
    scale: f64,
    sqrt: Vec<f64>,
}

impl Ladder {
    fn new(dim: usize, hbar: &BigRational) -> Self {
        Ladder { dim, scale: (ratio_to_f64(hbar) / 2.0).sqrt(), sqrt: (0..=dim).map(|n| (n as f64).sqrt()).collect() }
    }

    /// `(a v)_i = √(i+1) v_{i+1}`, `(a† v)_i = √i v_{i−1}`.
    fn lower_raise(&self, v: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let n = self.dim;
        let mut lower = vec![Complex64::new(0.0, 0.0); n];
        let mut raise = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            if i + 1 < n {
                lower[i] = v[i + 1] * self.sqrt[i + 1];
            }
            if i > 0 {
                raise[i] = v[i - 1] * self.sqrt[i];
            }
        }
        (lower, raise)
    }

    fn apply_q(&self, v: &[Complex64]) -> Vec<Complex64> {
        let (lo, hi) = self.lower_raise(v);
        lo.iter().zip(&hi).map(|(a, b)| (a + b) * self.scale).collect()
    }

    fn apply_p(&self, v: &[Complex64]) -> Vec<Complex64> {
        let (lo, hi) = self.lower_raise(v);
        let i_s = Complex64::new(0.0, self.scale);
        lo.iter().zip(&hi).map(|(a, b)| (b - a) * i_s).collect()
    }

    /// `A e_j` for a normal-ordered operator.
    fn apply_op(&self, op: &OpPoly, hbar: &BigRational, j: usize) -> Vec<Complex64> {
        let mut e = vec![Complex64::new(0.0, 0.0); self.dim];
        e[j] = Complex64::new(1.0, 0.0);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        // p̂^b e_j is shared across monomials with the same b
        let max_b = op.monomials().map(|((_, b), _)| b).max().unwrap_or(0);
        let mut p_pows = vec![e];
        for _ in 0..max_b {
            let next = self.apply_p(p_pows.last().unwrap());
            p_pows.push(next);
        }
        for ((a, b), c) in op.monomials() {
            let mut v = p_pows[b as usize].clone();
            for _ in 0..a {
                v = self.apply_q(&v);
            }
            let c = c.eval(hbar);
            for (o, x) in out.iter_mut().zip(&v) {
                *o += c * x;
            }
        }
        out
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { dim: n, required: 2 });
    }
    Ok(())
}

/// Truncated position and momentum matrices,
/// q̂ = √(ħ/2)(a + a†), p̂ = i√(ħ/2)(a† − a).
pub fn build_matrices(n: usize, hbar: &BigRational) -> Result<(FockMatrix, FockMatrix)> {
    check_dim(n)?;
    let ladder = Ladder::new(n, hbar);
    let q = DMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
        1 => Complex64::new(ladder.scale * ladder.sqrt[i.max(j)], 0.0),
        _ => Complex64::new(0.0, 0.0),
    });
    // (a†)_{j+1, j} = √(j+1) enters with +i, (a)_{j, j+1} with −i
    let p = DMatrix::from_fn(n, n, |i, j| {
        if i == j + 1 {
            Complex64::new(0.0, ladder.scale * ladder.sqrt[i])
        } else if j == i + 1 {
            Complex64::new(0.0, -ladder.scale * ladder.sqrt[j])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((FockMatrix { entries: q, hbar: hbar.clone() }, FockMatrix { entries: p, hbar: hbar.clone() }))
}

/// Matrix of a normal-ordered operator in the truncated basis.
pub fn op_to_matrix(op: &OpPoly, n: usize, hbar: &BigRational) -> Result<FockMatrix> {
    check_dim(n)?;
    let required = op.degree().unwrap_or(0) as usize + TRUNCATION_BUFFER;
    if n < required {
        return Err(Error::DimensionTooSmall { dim: n, required });
    }
    let ladder = Ladder::new(n, hbar);
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let col = ladder.apply_op(op, hbar, j);
        m.set_column(j, &nalgebra::DVector::from_vec(col));
    }
    Ok(FockMatrix { entries: m, hbar: hbar.clone() })
}

/// A statistical operator: Hermitian, non-negative, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12), trace (1e-12) and eigenvalues (≥ −1e-10).
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity("matrix is not square".into()));
        }
        check_dim(matrix.nrows())?;
        let defect = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (defect {defect:.3e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let dm = DensityMatrix { matrix };
        let min_eig = dm.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -EIGEN_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(dm)
    }

    /// `|ψ⟩⟨ψ|` for the normalized amplitude vector `ψ`.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("state vector has zero or non-finite norm".into()));
        }
        let v = nalgebra::DVector::from_iterator(amplitudes.len(), amplitudes.iter().map(|z| z / norm));
        let mut m = &v * v.adjoint();
        // exact Hermiticity after rounding
        m = (&m + m.adjoint()).scale(0.5);
        DensityMatrix::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Number of eigenvalues above 1e-10.
    pub fn rank(&self) -> usize {
        self.eigenvalues().into_iter().filter(|e| *e > EIGEN_TOL).count()
    }

    /// Highest basis level the state touches.
    pub fn max_level(&self) -> usize {
        let n = self.dim();
        (0..n)
            .rev()
            .find(|&k| (0..n).any(|j| self.matrix[(k, j)].norm() > SUPPORT_TOL || self.matrix[(j, k)].norm() > SUPPORT_TOL))
            .unwrap_or(0)
    }

    /// The same state padded with zeros to a larger dimension.
    pub fn embed(&self, dim: usize) -> Result<DensityMatrix> {
        if dim < self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), dim));
        }
        let mut m = DMatrix::zeros(dim, dim);
        m.view_mut((0, 0), (self.dim(), self.dim())).copy_from(&self.matrix);
        Ok(DensityMatrix { matrix: m })
    }
}

/// Projector onto the number state `|n⟩` in dimension `dim`.
pub fn fock_state(n: usize, dim: usize) -> Result<DensityMatrix> {
    check_dim(dim)?;
    if n >= dim {
        return Err(Error::IndexOutOfRange { index: n, dim });
    }
    let mut m = DMatrix::zeros(dim, dim);
    m[(n, n)] = Complex64::new(1.0, 0.0);
    DensityMatrix::new(m)
}

/// Convex combination `Σ w_k ρ_k`.
pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<DensityMatrix> {
    if weights.len() != states.len() || weights.is_empty() {
        return Err(Error::BadWeights(format!("{} weights for {} states", weights.len(), states.len())));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::BadWeights(format!("weight {w} is not a non-negative number")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > TRACE_TOL {
        return Err(Error::BadWeights(format!("weights sum to {total}, not 1")));
    }
    let dim = states[0].dim();
    if let Some(s) = states.iter().find(|s| s.dim() != dim) {
        return Err(Error::DimensionMismatch(dim, s.dim()));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for (w, s) in weights.iter().zip(states) {
        m += s.matrix.scale(*w);
    }
    DensityMatrix::new(m)
}

/// `tr(Ū Â)` computed at one dimension, without the stability check.
fn raw_trace(u: &DensityMatrix, op: &OpPoly, hbar: &BigRational) -> Complex64 {
    let ladder = Ladder::new(u.dim(), hbar);
    let top = u.max_level();
    let mut acc = Complex64::new(0.0, 0.0);
    // tr(U M) = Σ_j Σ_i U_ji M_ij, and U vanishes beyond level `top`
    for j in 0..=top {
        let col = ladder.apply_op(op, hbar, j);
        for (i, m_ij) in col.iter().enumerate().take(top + 1) {
            acc += u.matrix[(j, i)] * m_ij;
        }
    }
    acc
}

/// Minimum trustworthy dimension for this state and operator.
pub fn required_dim(u: &DensityMatrix, op: &OpPoly) -> usize {
    u.max_level() + 1 + op.degree().unwrap_or(0) as usize + TRUNCATION_BUFFER
}

/// `Exp(A) = tr(Ū Â)` with the truncation-stability and realness checks.
pub fn trace_expectation(u: &DensityMatrix, op: &OpPoly, hbar: &BigRational) -> Result<f64> {
    let z = trace_expectation_complex(u, op, hbar)?;
    if z.im.abs() > IMAG_TOL {
        return Err(Error::ImaginaryResidue { residue: z.im.abs(), tolerance: IMAG_TOL, context: "trace expectation" });
    }
    Ok(z.re)
}

/// `tr(Ū Â)` for operators that need not be Hermitian.
pub fn trace_expectation_complex(u: &DensityMatrix, op: &OpPoly, hbar: &BigRational) -> Result<Complex64> {
    let required = required_dim(u, op);
    if u.dim() < required {
        return Err(Error::DimensionTooSmall { dim: u.dim(), required });
    }
    let base = raw_trace(u, op, hbar);
    let doubled = raw_trace(&u.embed(2 * u.dim())?, op, hbar);
    let change = (base - doubled).norm();
    if change >= STABILITY_TOL {
        return Err(Error::Truncation { change, dim: u.dim() });
    }
    Ok(base)
}

/// `Dis(A) = tr(Ū Â²) − tr(Ū Â)²`, with Â² formed exactly before substitution.
pub fn dispersion(u: &DensityMatrix, op: &OpPoly, hbar: &BigRational) -> Result<f64> {
    let second = trace_expectation(u, &(op * op), hbar)?;
    let first = trace_expectation(u, op, hbar)?;
    Ok(second - first * first)
}
