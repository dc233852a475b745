//! Executable versions of the ensemble theorems and of the phase-space
//! hidden-variable construction.
//!
//! In the Hilbert-space formulation every state has some quantity with
//! nonzero dispersion. In phase space a point λ = (q₀, p₀) assigns each
//! quantity the value of its Weyl symbol at λ. Read with the rule "measure A,
//! then apply f" that assignment is dispersion free. Read with the rule "f(A)
//! is the quantity whose operator is f(Â)" the same assignment picks up the
//! star-product correction, so the second rule is the one phase space gives up.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{dispersion, overlap_expectation, trace_expectation, DensityMatrix, GridSpec};
use crate::moyal::{assumption_i_gap, dequantize, UniPoly};
use crate::operator::OpPoly;
use crate::phase_poly::{PhasePoint, PhasePoly};

use crate::scalar::{rational_from_f64, GaussianRational, HbarCoeff};

/// Largest admissible linearity discrepancy.
pub const LINEARITY_TOL: f64 = 1e-10;
/// Dispersion above this counts as a witness.
pub const WITNESS_THRESHOLD: f64 = 1e-6;
/// Largest admissible imaginary part of a point value.
pub const HV_IMAG_TOL: f64 = 1e-10;
/// Agreement required between the trace and the phase-space average.
pub const AVERAGE_TOL: f64 = 1e-6;
const PROJECTOR_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-12;

/// `|Exp(Σ aᵢRᵢ) − Σ aᵢ Exp(Rᵢ)|`.
pub fn check_linearity(u: &DensityMatrix, ops: &[OpPoly], coeffs: &[f64], hbar: &BigRational) -> Result<f64> {
    if ops.is_empty() || ops.len() != coeffs.len() {
        return Err(Error::InvalidArgument(format!("{} quantities with {} coefficients", ops.len(), coeffs.len())));
    }
    let mut combined = OpPoly::zero();
    let mut separate = 0.0;
    for (op, a) in ops.iter().zip(coeffs) {
        let exact = rational_from_f64(*a).ok_or_else(|| Error::InvalidArgument(format!("coefficient {a}")))?;
        combined = &combined + &op.scale(&HbarCoeff::from_rational(exact));
        separate += a * trace_expectation(u, op, hbar)?;
    }
    Ok((trace_expectation(u, &combined, hbar)? - separate).abs())
}

/// The fixed quantities searched for a dispersion witness, in order.
pub fn witness_family(hbar: &BigRational) -> Vec<(&'static str, OpPoly)> {
    let q = OpPoly::q();
    let p = OpPoly::p();
    let h = OpPoly::oscillator();
    // N̂ = Ĥ/ħ − 1/2 at the concrete ħ
    let inv_hbar = if hbar.is_zero() { BigRational::zero() } else { hbar.recip() };
    let number = &h.scale(&HbarCoeff::from_rational(inv_hbar)) - &OpPoly::constant(HbarCoeff::from_ratio(1, 2));
    vec![
        ("q", q.clone()),
        ("p", p.clone()),
        ("q+p", &q + &p),
        ("q-p", &q - &p),
        ("H", h),
        ("Q^2", q.pow(2)),
        ("P^2", p.pow(2)),
        ("N", number),
    ]
}

/// A quantity with nonzero dispersion in a given state.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub name: &'static str,
    pub quantity: OpPoly,
    pub dispersion: f64,
}

/// First member of [`witness_family`] whose dispersion exceeds
/// [`WITNESS_THRESHOLD`].
pub fn dispersion_free_witness(u: &DensityMatrix, hbar: &BigRational) -> Result<Witness> {
    for (name, op) in witness_family(hbar) {
        let dis = dispersion(u, &op, hbar)?;
        if dis > WITNESS_THRESHOLD {
            return Ok(Witness { name, quantity: op, dispersion: dis });
        }
    }
    Err(Error::WitnessExhausted { threshold: WITNESS_THRESHOLD })
}

/// Rank-one projector test: `‖Ū² − Ū‖_max ≤ 1e-10` and unit trace.
pub fn is_homogeneous(u: &DensityMatrix) -> bool {
    let m = u.matrix();
    let defect = (m * m - m).iter().map(|z| z.norm()).fold(0.0, f64::max);
    defect <= PROJECTOR_TOL && (m.trace() - Complex64::new(1.0, 0.0)).norm() <= TRACE_TOL
}

fn real_value(z: Complex64, context: &'static str) -> Result<f64> {
    if z.im.abs() > HV_IMAG_TOL {
        return Err(Error::ImaginaryResidue { residue: z.im.abs(), tolerance: HV_IMAG_TOL, context });
    }
    Ok(z.re)
}

/// The value the point λ assigns to the quantity with operator `op`.
pub fn hv_value(point: PhasePoint, op: &OpPoly, hbar: &BigRational) -> Result<f64> {
    check_point(point)?;
    real_value(dequantize(op).eval(point, hbar), "hidden-variable value")
}

fn check_point(point: PhasePoint) -> Result<()> {
    if !point.is_finite() {
        return Err(Error::InvalidArgument(format!("phase point ({}, {}) is not finite", point.q0, point.p0)));
    }
    Ok(())
}

/// Both readings of `f(A)` at a phase point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HvDispersionReport {
    pub point: PhasePoint,
    pub quantity: OpPoly,
    pub function: UniPoly,
    /// Value of `f(A)` minus `f(value of A)` when `f(A)` is measured by
    /// measuring A and applying f. Zero exactly.
    pub aprime_reading: f64,
    /// Symbol of `f(Â)` at the point minus `f(value of A)`.
    pub assumption_i_reading: f64,
    /// Symbol of `f(Â)` minus `f(Ã)`.
    pub gap_polynomial: PhasePoly,
    /// Set when the reading is negative, which no true dispersion can be.
    pub negative_reading: bool,
}

/// [`hv_dispersion_with`] for `f(x) = x²`, the dispersion case.
pub fn hv_dispersion(point: PhasePoint, op: &OpPoly, hbar: &BigRational) -> Result<HvDispersionReport> {
    hv_dispersion_with(point, op, &UniPoly::power(2), hbar)
}

/// Readings of the quantity `f(A)` at `point`. Everything is computed
/// exactly and converted to `f64` at the end.
pub fn hv_dispersion_with(point: PhasePoint, op: &OpPoly, f: &UniPoly, hbar: &BigRational) -> Result<HvDispersionReport> {
    check_point(point)?;
    let symbol = dequantize(op);
    let value = symbol.eval_exact(point, hbar);
    real_value(value.to_complex(), "hidden-variable value")?;
    let f_of_value = eval_unipoly(f, &value, hbar);

    // measure A, then apply f: f(A) is read off f(Ã) at λ
    let aprime_value = f.apply_pointwise(&symbol).eval_exact(point, hbar);
    let aprime = real_value((&aprime_value - &f_of_value).to_complex(), "A' reading")?;

    let gap = assumption_i_gap(op, f, None, hbar).gap;
    let reading = real_value(gap.eval(point, hbar), "assumption-I reading")?;

    Ok(HvDispersionReport {
        point,
        quantity: op.clone(),
        function: f.clone(),
        aprime_reading: aprime,
        assumption_i_reading: reading,
        gap_polynomial: gap,
        negative_reading: reading < 0.0,
    })
}

fn eval_unipoly(f: &UniPoly, x: &GaussianRational, hbar: &BigRational) -> GaussianRational {
    f.coeffs()
        .iter()
        .rev()
        .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + &c.substitute(hbar))
}

/// `(tr(Ū Â), ∫ W_Ū Ã)`: the trace against the Wigner-weighted average of
/// point values.
pub fn hv_average_check(u: &DensityMatrix, op: &OpPoly, spec: &GridSpec, hbar: &BigRational) -> Result<(f64, f64)> {
    let lhs = trace_expectation(u, op, hbar)?;
    let rhs = overlap_expectation(u, &dequantize(op), spec, hbar)?;
    Ok((lhs, rhs))
}
