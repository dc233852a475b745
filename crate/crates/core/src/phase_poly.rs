//! Commutative polynomials on phase space, with exact ħ-graded coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::print::format_terms;
use crate::serial::PolyRepr;
use crate::scalar::{falling, rational_from_f64, GaussianRational, HbarCoeff};

/// One of the two canonical coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Q,
    P,
}

/// A point λ = (q₀, p₀) of phase space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub q0: f64,
    pub p0: f64,
}

impl PhasePoint {
    pub fn new(q0: f64, p0: f64) -> Self {
        PhasePoint { q0, p0 }
    }

    pub fn is_finite(&self) -> bool {
        self.q0.is_finite() && self.p0.is_finite()
    }
}

/// `Σ c_ab(ħ) q^a p^b`, keyed by `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct PhasePoly {
    monomials: BTreeMap<(u32, u32), HbarCoeff>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(HbarCoeff::one())
    }

    pub fn constant(c: HbarCoeff) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, HbarCoeff::one())
    }

    pub fn p() -> Self {
        Self::monomial(0, 1, HbarCoeff::one())
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::Q => Self::q(),
            Var::P => Self::p(),
        }
    }

    /// `c · q^a p^b`.
    pub fn monomial(a: u32, b: u32, c: HbarCoeff) -> Self {
        let mut monomials = BTreeMap::new();
        if !c.is_zero() {
            monomials.insert((a, b), c);
        }
        PhasePoly { monomials }
    }

    /// The oscillator symbol H = (q² + p²)/2.
    pub fn oscillator() -> Self {
        let half = HbarCoeff::from_ratio(1, 2);
        &Self::monomial(2, 0, half.clone()) + &Self::monomial(0, 2, half)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), HbarCoeff)>>(iter: I) -> Self {
        let mut out = PhasePoly::zero();
        for ((a, b), c) in iter {
            out.add_monomial(a, b, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = ((u32, u32), &HbarCoeff)> {
        self.monomials.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, a: u32, b: u32) -> HbarCoeff {
        self.monomials.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Total degree in (q, p); `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.monomials.keys().map(|(a, b)| a + b).max()
    }

    pub(crate) fn add_monomial(&mut self, a: u32, b: u32, c: &HbarCoeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.monomials.entry((a, b)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.monomials.remove(&(a, b));
        }
    }

    pub fn scale(&self, c: &HbarCoeff) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for ((a, b), v) in &self.monomials {
            out.add_monomial(*a, *b, &(v * c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> PhasePoly {
        (0..n).fold(PhasePoly::one(), |acc, _| &acc * self)
    }

    /// Exact partial derivative of the given order.
    pub fn derive(&self, var: Var, order: u32) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for ((a, b), c) in &self.monomials {
            let (exp, rest) = match var {
                Var::Q => (*a, *b),
                Var::P => (*b, *a),
            };
            if order > exp {
                continue;
            }
            let factor = GaussianRational::from_bigint(falling(exp, order));
            let (na, nb) = match var {
                Var::Q => (exp - order, rest),
                Var::P => (rest, exp - order),
            };
            out.add_monomial(na, nb, &c.scale(&factor));
        }
        out
    }

    /// Keeps only coefficient terms whose ħ-power satisfies `keep`.
    pub fn filter_grades(&self, keep: impl Fn(u32) -> bool + Copy) -> PhasePoly {
        PhasePoly::from_terms(self.monomials.iter().map(|(k, c)| (*k, c.filter_grades(keep))))
    }

    /// The ħ → 0 part: every coefficient term of ħ-grade ≥ 1 dropped.
    pub fn classical_part(&self) -> PhasePoly {
        self.filter_grades(|k| k == 0)
    }

    pub fn conj(&self) -> PhasePoly {
        PhasePoly::from_terms(self.monomials.iter().map(|(k, c)| (*k, c.conj())))
    }

    /// Exact substitution of ħ and the point, converted to floating point last.
    pub fn eval(&self, pt: PhasePoint, hbar: &BigRational) -> Complex64 {
        self.eval_exact(pt, hbar).to_complex()
    }

    /// Exact value at a point; the coordinates are taken as the exact binary
    /// rationals their `f64` representations denote.
    pub fn eval_exact(&self, pt: PhasePoint, hbar: &BigRational) -> GaussianRational {
        let q0 = rational_from_f64(pt.q0).unwrap_or_else(BigRational::zero);
        let p0 = rational_from_f64(pt.p0).unwrap_or_else(BigRational::zero);
        let mut acc = GaussianRational::zero();
        for ((a, b), c) in &self.monomials {
            let x = num_traits::pow(q0.clone(), *a as usize) * num_traits::pow(p0.clone(), *b as usize);
            acc = &acc + &c.substitute(hbar).scale(&x);
        }
        acc
    }

    /// Floating-point copy at a fixed ħ, for evaluation on large grids.
    pub fn to_numeric(&self, hbar: &BigRational) -> NumericPoly {
        NumericPoly {
            terms: self.monomials.iter().map(|((a, b), c)| (*a, *b, c.eval(hbar))).collect(),
        }
    }
}

/// `f64` image of a [`PhasePoly`] at a fixed ħ.
#[derive(Clone, Debug)]
pub struct NumericPoly {
    terms: Vec<(u32, u32, Complex64)>,
}

impl NumericPoly {
    pub fn eval(&self, q: f64, p: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, b, c)| c * (q.powi(*a as i32) * p.powi(*b as i32)))
            .sum()
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.monomials(), "q", "p"))
    }
}

impl<'a> Add<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.monomials {
            out.add_monomial(*a, *b, c);
        }
        out
    }
}

impl<'a> Sub<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for ((a1, b1), c1) in &self.monomials {
            for ((a2, b2), c2) in &rhs.monomials {
                out.add_monomial(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        PhasePoly { monomials: self.monomials.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}
