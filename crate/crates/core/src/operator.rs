//! Noncommutative polynomials in q̂, p̂ kept in q̂-left normal order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::phase_poly::{PhasePoly, Var};
use crate::print::format_terms;
use crate::serial::PolyRepr;
use crate::scalar::{binomial, factorial, GaussianRational, HbarCoeff};

/// `Σ c_ab(ħ) q̂^a p̂^b` with every q̂ to the left of every p̂.
///
/// Because the stored form is canonical, structural equality is operator
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct OpPoly {
    monomials: BTreeMap<(u32, u32), HbarCoeff>,
}

impl OpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(0, 0, HbarCoeff::one())
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

    /// `c · q̂^a p̂^b`.
    pub fn monomial(a: u32, b: u32, c: HbarCoeff) -> Self {
        let mut monomials = BTreeMap::new();
        if !c.is_zero() {
            monomials.insert((a, b), c);
        }
        OpPoly { monomials }
    }

    /// Ĥ = (q̂² + p̂²)/2.
    pub fn oscillator() -> Self {
        let half = HbarCoeff::from_ratio(1, 2);
        &Self::monomial(2, 0, half.clone()) + &Self::monomial(0, 2, half)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), HbarCoeff)>>(iter: I) -> Self {
        let mut out = OpPoly::zero();
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

    pub fn scale(&self, c: &HbarCoeff) -> OpPoly {
        let mut out = OpPoly::zero();
        for ((a, b), v) in &self.monomials {
            out.add_monomial(*a, *b, &(v * c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> OpPoly {
        (0..n).fold(OpPoly::identity(), |acc, _| &acc * self)
    }

    /// `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &OpPoly) -> OpPoly {
        &(self * rhs) - &(rhs * self)
    }

    /// Formal adjoint: conjugate coefficients and reverse every word.
    pub fn adjoint(&self) -> OpPoly {
        let mut out = OpPoly::zero();
        for ((a, b), c) in &self.monomials {
            // (q̂^a p̂^b)† = p̂^b q̂^a
            let reordered = reorder_pq(*b, *a);
            out = &out + &reordered.scale(&c.conj());
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }
}

/// Normal order of `p̂^b q̂^a`:
/// `Σ_k (−iħ)^k k! C(a,k) C(b,k) q̂^{a−k} p̂^{b−k}`.
fn reorder_pq(b: u32, a: u32) -> OpPoly {
    let minus_i = -GaussianRational::i();
    let mut out = OpPoly::zero();
    for k in 0..=a.min(b) {
        let c = GaussianRational::from_bigint(factorial(k) * binomial(a, k) * binomial(b, k));
        let coeff = HbarCoeff::monomial(k, &minus_i.pow(k) * &c);
        out.add_monomial(a - k, b - k, &coeff);
    }
    out
}

/// Normal order of a single word in q̂, p̂ by repeated application of
/// `p̂q̂ → q̂p̂ − iħ`, one adjacent swap at a time.
///
/// This is the slow reference for the closed-form product used by `Mul`.
pub fn normal_order_word(word: &[Var]) -> OpPoly {
    let minus_i_hbar = HbarCoeff::monomial(1, -GaussianRational::i());
    let mut pending: Vec<(HbarCoeff, Vec<Var>)> = vec![(HbarCoeff::one(), word.to_vec())];
    let mut out = OpPoly::zero();
    while let Some((coeff, w)) = pending.pop() {
        match w.windows(2).position(|pair| pair == [Var::P, Var::Q]) {
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                pending.push((coeff.clone(), swapped));
                let mut contracted = w;
                contracted.drain(i..i + 2);
                pending.push((&coeff * &minus_i_hbar, contracted));
            }
            None => {
                let a = w.iter().filter(|v| **v == Var::Q).count() as u32;
                out.add_monomial(a, w.len() as u32 - a, &coeff);
            }
        }
    }
    out
}

/// Weyl (symmetric) quantization, monomial by monomial:
/// `q^m p^n ↦ 2^{−m} Σ_k C(m,k) q̂^k p̂^n q̂^{m−k}`.
pub fn weyl_quantize(f: &PhasePoly) -> OpPoly {
    let mut out = OpPoly::zero();
    for ((m, n), c) in f.monomials() {
        out = &out + &mccoy_q_sided(m, n).scale(c);
    }
    out
}

/// The same map from the p̂-sided formula
/// `q^m p^n ↦ 2^{−n} Σ_k C(n,k) p̂^k q̂^m p̂^{n−k}`; used to cross-check
/// [`weyl_quantize`].
pub fn weyl_quantize_p_sided(f: &PhasePoly) -> OpPoly {
    let mut out = OpPoly::zero();
    for ((m, n), c) in f.monomials() {
        let mut acc = OpPoly::zero();
        for k in 0..=n {
            let word = &(&OpPoly::monomial(0, k, HbarCoeff::one()) * &OpPoly::monomial(m, 0, HbarCoeff::one()))
                * &OpPoly::monomial(0, n - k, HbarCoeff::one());
            acc = &acc + &word.scale(&HbarCoeff::from_rational(BigRational::from_integer(binomial(n, k))));
        }
        let norm = BigRational::new(One::one(), num_traits::pow(num_bigint::BigInt::from(2), n as usize));
        out = &out + &acc.scale(&HbarCoeff::from_rational(norm)).scale(c);
    }
    out
}

fn mccoy_q_sided(m: u32, n: u32) -> OpPoly {
    let mut acc = OpPoly::zero();
    for k in 0..=m {
        let word = &OpPoly::monomial(k, n, HbarCoeff::one()) * &OpPoly::monomial(m - k, 0, HbarCoeff::one());
        acc = &acc + &word.scale(&HbarCoeff::from_rational(BigRational::from_integer(binomial(m, k))));
    }
    let norm = BigRational::new(One::one(), num_traits::pow(num_bigint::BigInt::from(2), m as usize));
    acc.scale(&HbarCoeff::from_rational(norm))
}

impl fmt::Display for OpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.monomials(), "Q", "P"))
    }
}

impl<'a> Add<&'a OpPoly> for &'a OpPoly {
    type Output = OpPoly;
    fn add(self, rhs: &OpPoly) -> OpPoly {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.monomials {
            out.add_monomial(*a, *b, c);
        }
        out
    }
}

impl<'a> Sub<&'a OpPoly> for &'a OpPoly {
    type Output = OpPoly;
    fn sub(self, rhs: &OpPoly) -> OpPoly {
        self + &(-rhs)
    }
}

impl Neg for &OpPoly {
    type Output = OpPoly;
    fn neg(self) -> OpPoly {
        OpPoly { monomials: self.monomials.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl<'a> Mul<&'a OpPoly> for &'a OpPoly {
    type Output = OpPoly;
    fn mul(self, rhs: &OpPoly) -> OpPoly {
        // (q̂^a1 p̂^b1)(q̂^a2 p̂^b2) = q̂^a1 (p̂^b1 q̂^a2) p̂^b2
        let mut out = OpPoly::zero();
        for ((a1, b1), c1) in &self.monomials {
            for ((a2, b2), c2) in &rhs.monomials {
                let c = c1 * c2;
                for ((a, b), r) in reorder_pq(*b1, *a2).monomials() {
                    out.add_monomial(a1 + a, b + b2, &(r * &c));
                }
            }
        }
        out
    }
}
