//! Evaluation of parsed expressions in the exact algebra of their mode.

use num_rational::BigRational;

use super::parse::{parse, Expr, Mode, ParseError, Variable};
use crate::moyal::UniPoly;
use crate::operator::OpPoly;
use crate::phase_poly::{PhasePoly, Var};
use crate::scalar::{GaussianRational, HbarCoeff};

/// Target algebras of lowering. Products go through the algebra's own
/// multiplication, so operator products are order sensitive.
pub trait ExprAlgebra: Sized {
    fn from_coeff(c: HbarCoeff) -> Self;
    fn from_var(v: Variable) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scaled(&self, c: &HbarCoeff) -> Self;
}

impl ExprAlgebra for PhasePoly {
    fn from_coeff(c: HbarCoeff) -> Self {
        PhasePoly::constant(c)
    }
    fn from_var(v: Variable) -> Self {
        match v {
            Variable::SymQ => PhasePoly::var(Var::Q),
            Variable::SymP => PhasePoly::var(Var::P),
            other => unreachable!("{other:?} outside symbol mode"),
        }
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, c: &HbarCoeff) -> Self {
        self.scale(c)
    }
}

impl ExprAlgebra for OpPoly {
    fn from_coeff(c: HbarCoeff) -> Self {
        OpPoly::constant(c)
    }
    fn from_var(v: Variable) -> Self {
        match v {
            Variable::OpQ => OpPoly::var(Var::Q),
            Variable::OpP => OpPoly::var(Var::P),
            other => unreachable!("{other:?} outside operator mode"),
        }
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, c: &HbarCoeff) -> Self {
        self.scale(c)
    }
}

impl ExprAlgebra for UniPoly {
    fn from_coeff(c: HbarCoeff) -> Self {
        UniPoly::new(vec![c])
    }
    fn from_var(v: Variable) -> Self {
        debug_assert_eq!(v, Variable::X);
        UniPoly::power(1)
    }
    fn plus(&self, rhs: &Self) -> Self {
        let (a, b) = (self.coeffs(), rhs.coeffs());
        let n = a.len().max(b.len());
        let zero = HbarCoeff::zero();
        UniPoly::new((0..n).map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero)).collect())
    }
    fn times(&self, rhs: &Self) -> Self {
        let (a, b) = (self.coeffs(), rhs.coeffs());
        if a.is_empty() || b.is_empty() {
            return UniPoly::default();
        }
        let mut out = vec![HbarCoeff::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        UniPoly::new(out)
    }
    fn scaled(&self, c: &HbarCoeff) -> Self {
        UniPoly::new(self.coeffs().iter().map(|x| x * c).collect())
    }
}

/// Evaluates an expression tree in algebra `A`.
pub fn lower_into<A: ExprAlgebra>(e: &Expr) -> A {
    match e {
        Expr::Rational(r) => A::from_coeff(HbarCoeff::from_rational(r.clone())),
        Expr::ImaginaryUnit => A::from_coeff(HbarCoeff::constant(GaussianRational::i())),
        Expr::Hbar => A::from_coeff(HbarCoeff::hbar()),
        Expr::Var(v) => A::from_var(*v),
        Expr::Neg(x) => lower_into::<A>(x).scaled(&HbarCoeff::from_int(-1)),
        Expr::Add(x, y) => lower_into::<A>(x).plus(&lower_into(y)),
        Expr::Sub(x, y) => lower_into::<A>(x).plus(&lower_into::<A>(y).scaled(&HbarCoeff::from_int(-1))),
        Expr::Mul(x, y) => lower_into::<A>(x).times(&lower_into(y)),
        Expr::Pow(x, n) => {
            let base = lower_into::<A>(x);
            (0..*n).fold(A::from_coeff(HbarCoeff::one()), |acc, _| acc.times(&base))
        }
        Expr::Div(x, d) => {
            let inv = BigRational::new(1.into(), d.clone());
            lower_into::<A>(x).scaled(&HbarCoeff::from_rational(inv))
        }
    }
}

/// A lowered value, tagged by its language.
#[derive(Clone, Debug, PartialEq)]
pub enum Lowered {
    Symbol(PhasePoly),
    Operator(OpPoly),
    Univariate(UniPoly),
}

pub fn lower(e: &Expr, mode: Mode) -> Lowered {
    match mode {
        Mode::Symbol => Lowered::Symbol(lower_into(e)),
        Mode::Operator => Lowered::Operator(lower_into(e)),
        Mode::Univariate => Lowered::Univariate(lower_into(e)),
    }
}

/// Parses and lowers a phase-space symbol in `q`, `p`.
pub fn parse_symbol(text: &str) -> Result<PhasePoly, ParseError> {
    Ok(lower_into(&parse(text, Mode::Symbol)?))
}

/// Parses and lowers an operator in `Q`, `P`.
pub fn parse_operator(text: &str) -> Result<OpPoly, ParseError> {
    Ok(lower_into(&parse(text, Mode::Operator)?))
}

/// Parses and lowers a univariate polynomial in `x`.
pub fn parse_univariate(text: &str) -> Result<UniPoly, ParseError> {
    Ok(lower_into(&parse(text, Mode::Univariate)?))
}
