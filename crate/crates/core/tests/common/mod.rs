#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use phasespace::fock::{fock_state, mixture};
use phasespace::{DensityMatrix, GaussianRational, HbarCoeff, OpPoly, PhasePoly};
use proptest::prelude::*;
use rand::Rng;

pub fn hbar_one() -> BigRational {
    BigRational::from_integer(1.into())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

// ---- proptest strategies ----

pub fn gaussian_rational() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::new(ratio(a, b), ratio(c, d)))
}

pub fn real_rational() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| GaussianRational::real(ratio(a, b)))
}

pub fn hbar_coeff() -> impl Strategy<Value = HbarCoeff> {
    prop::collection::vec((0u32..=2, gaussian_rational()), 1..=2).prop_map(HbarCoeff::from_terms)
}

fn monomials(max_deg: u32, coeff: impl Strategy<Value = HbarCoeff>) -> impl Strategy<Value = Vec<((u32, u32), HbarCoeff)>> {
    let key = (0..=max_deg).prop_flat_map(move |a| (Just(a), 0..=max_deg - a));
    prop::collection::vec((key, coeff), 0..=5)
}

pub fn phase_poly(max_deg: u32) -> impl Strategy<Value = PhasePoly> {
    monomials(max_deg, hbar_coeff()).prop_map(PhasePoly::from_terms)
}

pub fn op_poly(max_deg: u32) -> impl Strategy<Value = OpPoly> {
    monomials(max_deg, hbar_coeff()).prop_map(OpPoly::from_terms)
}

/// Real, ħ-free symbols; their Weyl quantizations are Hermitian.
pub fn real_symbol(max_deg: u32) -> impl Strategy<Value = PhasePoly> {
    monomials(max_deg, real_rational().prop_map(HbarCoeff::constant)).prop_map(PhasePoly::from_terms)
}

// ---- seeded generators for the acceptance run ----

pub fn rand_rational<R: Rng>(rng: &mut R) -> BigRational {
    ratio(rng.random_range(-6..=6), rng.random_range(1..=4))
}

pub fn rand_coeff<R: Rng>(rng: &mut R, complex: bool, graded: bool) -> HbarCoeff {
    let terms = if graded { rng.random_range(1..=2) } else { 1 };
    HbarCoeff::from_terms((0..terms).map(|_| {
        let k = if graded { rng.random_range(0..=2) } else { 0 };
        let im = if complex { rand_rational(rng) } else { ratio(0, 1) };
        (k, GaussianRational::new(rand_rational(rng), im))
    }))
}

fn rand_terms<R: Rng>(rng: &mut R, max_deg: u32, complex: bool, graded: bool) -> Vec<((u32, u32), HbarCoeff)> {
    let n = rng.random_range(1..=6);
    (0..n)
        .map(|_| {
            let a = rng.random_range(0..=max_deg);
            let b = rng.random_range(0..=max_deg - a);
            ((a, b), rand_coeff(rng, complex, graded))
        })
        .collect()
}

pub fn rand_symbol<R: Rng>(rng: &mut R, max_deg: u32) -> PhasePoly {
    PhasePoly::from_terms(rand_terms(rng, max_deg, true, true))
}

pub fn rand_op<R: Rng>(rng: &mut R, max_deg: u32) -> OpPoly {
    OpPoly::from_terms(rand_terms(rng, max_deg, true, true))
}

pub fn rand_hermitian<R: Rng>(rng: &mut R, max_deg: u32) -> OpPoly {
    phasespace::weyl_quantize(&PhasePoly::from_terms(rand_terms(rng, max_deg, false, false)))
}

fn rand_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// `G G† / tr` with `G` supported on the first `levels` Fock states.
pub fn rand_density<R: Rng>(rng: &mut R, levels: usize, dim: usize) -> DensityMatrix {
    let g = DMatrix::from_fn(levels, levels, |_, _| rand_complex(rng));
    let mut rho = &g * g.adjoint();
    let tr = rho.trace();
    rho /= tr;
    let mut m = DMatrix::zeros(dim, dim);
    m.view_mut((0, 0), (levels, levels)).copy_from(&rho);
    DensityMatrix::new(m).expect("valid density matrix")
}

pub fn rand_pure<R: Rng>(rng: &mut R, levels: usize, dim: usize) -> DensityMatrix {
    let v: Vec<Complex64> = (0..dim).map(|i| if i < levels { rand_complex(rng) } else { Complex64::new(0.0, 0.0) }).collect();
    DensityMatrix::pure(&v).expect("valid pure state")
}

/// Mixture of at least two distinct Fock states with random weights.
pub fn rand_mixture<R: Rng>(rng: &mut R, levels: usize, dim: usize) -> DensityMatrix {
    let k = rng.random_range(2..=levels.min(4));
    let mut picked: Vec<usize> = (0..levels).collect();
    for i in 0..k {
        let j = rng.random_range(i..levels);
        picked.swap(i, j);
    }
    let states: Vec<_> = picked[..k].iter().map(|&n| fock_state(n, dim).unwrap()).collect();
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    mixture(&weights, &states).expect("valid mixture")
}
