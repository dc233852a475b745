//! Exact scalars: Gaussian rationals and polynomials in a symbolic ħ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact complex rational `re + i·im`.
///
/// Both parts are `BigRational`, which keeps itself in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::real(BigRational::from_integer(n))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Formats a rational the way the expression parser reads it back.
pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}*i)", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
            }
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

/// A polynomial in ħ with Gaussian-rational coefficients, `Σ c_k ħ^k`.
///
/// Zero coefficients are never stored, so the zero value is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HbarCoeff {
    terms: BTreeMap<u32, GaussianRational>,
}

impl HbarCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, c)
    }

    /// `c·ħ^k`.
    pub fn monomial(k: u32, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        HbarCoeff { terms }
    }

    pub fn hbar() -> Self {
        Self::monomial(1, GaussianRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(num, den))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::constant(GaussianRational::real(r))
    }

    /// Builds from `(ħ-power, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, GaussianRational)>>(iter: I) -> Self {
        let mut out = HbarCoeff::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussianRational::is_one)
    }

    /// Iterates `(ħ-power, coefficient)` in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, k: u32) -> GaussianRational {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn max_grade(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub(crate) fn add_term(&mut self, k: u32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> HbarCoeff {
        if c.is_zero() {
            return HbarCoeff::zero();
        }
        HbarCoeff { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Keeps only the terms whose ħ-power satisfies `keep`.
    pub fn filter_grades(&self, keep: impl Fn(u32) -> bool) -> HbarCoeff {
        HbarCoeff {
            terms: self.terms.iter().filter(|(k, _)| keep(**k)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Multiplies by `ħ^k`.
    pub fn shift(&self, k: u32) -> HbarCoeff {
        HbarCoeff { terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect() }
    }

    pub fn conj(&self) -> HbarCoeff {
        HbarCoeff { terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect() }
    }

    /// Exact substitution of a rational ħ.
    pub fn substitute(&self, hbar: &BigRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        // Horner from the top grade down.
        let top = match self.max_grade() {
            Some(t) => t,
            None => return acc,
        };
        for k in (0..=top).rev() {
            acc = acc.scale(hbar);
            if let Some(c) = self.terms.get(&k) {
                acc = &acc + c;
            }
        }
        acc
    }

    pub fn eval(&self, hbar: &BigRational) -> Complex64 {
        self.substitute(hbar).to_complex()
    }
}

impl From<GaussianRational> for HbarCoeff {
    fn from(c: GaussianRational) -> Self {
        HbarCoeff::constant(c)
    }
}

impl<'a> Add<&'a HbarCoeff> for &'a HbarCoeff {
    type Output = HbarCoeff;
    fn add(self, rhs: &HbarCoeff) -> HbarCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&HbarCoeff> for HbarCoeff {
    fn add_assign(&mut self, rhs: &HbarCoeff) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl<'a> Sub<&'a HbarCoeff> for &'a HbarCoeff {
    type Output = HbarCoeff;
    fn sub(self, rhs: &HbarCoeff) -> HbarCoeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a HbarCoeff> for &'a HbarCoeff {
    type Output = HbarCoeff;
    fn mul(self, rhs: &HbarCoeff) -> HbarCoeff {
        let mut out = HbarCoeff::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &HbarCoeff {
    type Output = HbarCoeff;
    fn neg(self) -> HbarCoeff {
        HbarCoeff { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

/// `n!` as a big integer.
pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Falling factorial `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub(crate) fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    falling(n, k) / factorial(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn gaussian_arithmetic_is_exact() {
        let a = &q(1, 3) + &q(1, 6);
        assert_eq!(a, q(1, 2));
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(i.pow(4), GaussianRational::one());
        let z = GaussianRational::new(BigRational::new(2.into(), 4.into()), BigRational::new((-3).into(), 9.into()));
        assert_eq!(z.re, BigRational::new(1.into(), 2.into()));
        assert_eq!(z.im, BigRational::new((-1).into(), 3.into()));
        assert!(z.im.denom() > &BigInt::zero());
    }

    #[test]
    fn hbar_coeff_prunes_zero_terms() {
        let a = HbarCoeff::monomial(2, q(1, 4));
        let b = HbarCoeff::monomial(2, q(-1, 4));
        assert!((&a + &b).is_zero());
        assert_eq!((&a - &a).terms().count(), 0);
    }

    #[test]
    fn hbar_substitution_collapses_to_one_number() {
        // 1 + i ħ - ħ²/4 at ħ = 2: 1 + 2i - 1 = 2i
        let c = HbarCoeff::from_terms([
            (0, GaussianRational::one()),
            (1, GaussianRational::i()),
            (2, q(-1, 4)),
        ]);
        let v = c.substitute(&BigRational::from_integer(2.into()));
        assert_eq!(v, GaussianRational::new(BigRational::zero(), BigRational::from_integer(2.into())));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(binomial(6, 3), BigInt::from(20));
        // fixed-width overflow would hit here
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn display() {
        assert_eq!(q(3, 4).to_string(), "3/4");
        assert_eq!(GaussianRational::i().to_string(), "1*i");
        assert_eq!(GaussianRational::new(BigRational::one(), -BigRational::one()).to_string(), "(1 - 1*i)");
    }
}
