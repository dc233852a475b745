//! The Moyal star product, dequantization to Weyl symbols, and the
//! function-of-a-quantity gap that separates the two formulations.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::operator::OpPoly;
use crate::phase_poly::{PhasePoint, PhasePoly};
use crate::print::format_terms;
use crate::serial::UniPolyRepr;
use crate::scalar::{binomial, factorial, falling, GaussianRational, HbarCoeff};

/// Star product of two monomials `q^a p^b ⋆ q^c p^d`.
///
/// Every order-`n` term of the series lands on the monomial
/// `q^{a+c−n} p^{b+d−n}`, so the result is a single-monomial sum over `n`
/// with the series cut at `min(a+b, c+d)`.
fn star_monomials(a: u32, b: u32, c: u32, d: u32) -> PhasePoly {
    let half_i = GaussianRational::new(BigRational::zero(), BigRational::new(1.into(), 2.into()));
    let mut out = PhasePoly::zero();
    for n in 0..=(a + b).min(c + d) {
        let mut sum = BigInt::zero();
        for k in 0..=n {
            let term = binomial(n, k) * falling(a, n - k) * falling(b, k) * falling(d, n - k) * falling(c, k);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        if sum.is_zero() {
            continue;
        }
        let scalar = half_i.pow(n).scale(&BigRational::new(sum, factorial(n)));
        // n ≤ min(a, d) + min(b, c) whenever the sum is nonzero
        out.add_monomial(a + c - n, b + d - n, &HbarCoeff::monomial(n, scalar));
    }
    out
}

/// Groenewold–Moyal product `f ⋆ g`, with the convention `q ⋆ p = qp + iħ/2`.
pub fn star(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let mut out = PhasePoly::zero();
    for ((a, b), cf) in f.monomials() {
        for ((c, d), cg) in g.monomials() {
            let coeff = cf * cg;
            for ((x, y), s) in star_monomials(a, b, c, d).monomials() {
                out.add_monomial(x, y, &(s * &coeff));
            }
        }
    }
    out
}

/// `f ⋆ g − g ⋆ f`.
pub fn moyal_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    &star(f, g) - &star(g, f)
}

/// Weyl symbol of a normal-ordered operator: `q̂^a p̂^b ↦ q^a ⋆ p^b`.
pub fn dequantize(op: &OpPoly) -> PhasePoly {
    let mut out = PhasePoly::zero();
    for ((a, b), c) in op.monomials() {
        for ((x, y), s) in star_monomials(a, 0, 0, b).monomials() {
            out.add_monomial(x, y, &(s * c));
        }
    }
    out
}

/// A univariate polynomial `f(x) = Σ c_k x^k` applied to quantities.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "UniPolyRepr", try_from = "UniPolyRepr")]
pub struct UniPoly {
    coeffs: Vec<HbarCoeff>,
}

impl UniPoly {
    /// From coefficients in increasing power; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<HbarCoeff>) -> Self {
        while coeffs.last().is_some_and(HbarCoeff::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `x^n`.
    pub fn power(n: u32) -> Self {
        let mut coeffs = vec![HbarCoeff::zero(); n as usize];
        coeffs.push(HbarCoeff::one());
        UniPoly { coeffs }
    }

    /// `a x + b`.
    pub fn linear(a: HbarCoeff, b: HbarCoeff) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[HbarCoeff] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `f(Â)` in operator arithmetic.
    pub fn apply_op(&self, op: &OpPoly) -> OpPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(OpPoly::zero(), |acc, c| &(&acc * op) + &OpPoly::constant(c.clone()))
    }

    /// `f(g)` with the ordinary pointwise product.
    pub fn apply_pointwise(&self, g: &PhasePoly) -> PhasePoly {
        self.coeffs
            .iter()
            .rev()
            .fold(PhasePoly::zero(), |acc, c| &(&acc * g) + &PhasePoly::constant(c.clone()))
    }

    /// `f(g)` with the star product in place of multiplication.
    pub fn apply_star(&self, g: &PhasePoly) -> PhasePoly {
        self.coeffs
            .iter()
            .rev()
            .fold(PhasePoly::zero(), |acc, c| &star(&acc, g) + &PhasePoly::constant(c.clone()))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // print as a polynomial in one variable, reusing the q slot
        let terms: Vec<((u32, u32), &HbarCoeff)> =
            self.coeffs.iter().enumerate().map(|(k, c)| ((k as u32, 0), c)).collect();
        f.write_str(&format_terms(terms.into_iter(), "x", "_"))
    }
}

/// Comparison of the symbol of `f(Â)` with `f` applied to the symbol of `Â`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub quantity: OpPoly,
    pub function: UniPoly,
    /// Weyl symbol of `f(Â)`.
    pub symbol_of_fa: PhasePoly,
    /// `f(Ã)` with pointwise multiplication.
    pub f_of_symbol: PhasePoly,
    /// `symbol_of_fa − f_of_symbol`.
    pub gap: PhasePoly,
    pub gap_at_point: Option<Complex64>,
}

impl GapReport {
    pub fn is_zero(&self) -> bool {
        self.gap.is_zero()
    }
}

/// Builds the [`GapReport`] for quantity `op` and function `f`, evaluating
/// the gap at `pt` (with the given ħ) when a point is supplied.
pub fn assumption_i_gap(op: &OpPoly, f: &UniPoly, pt: Option<PhasePoint>, hbar: &BigRational) -> GapReport {
    let symbol_of_fa = dequantize(&f.apply_op(op));
    let f_of_symbol = f.apply_pointwise(&dequantize(op));
    let gap = &symbol_of_fa - &f_of_symbol;
    let gap_at_point = pt.map(|p| gap.eval(p, hbar));
    GapReport { quantity: op.clone(), function: f.clone(), symbol_of_fa, f_of_symbol, gap, gap_at_point }
}

/// Whether dequantization is additive on this pair.
pub fn assumption_ii_check(a: &OpPoly, b: &OpPoly) -> bool {
    dequantize(&(a + b)) == &dequantize(a) + &dequantize(b)
}
