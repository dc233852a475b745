//! JSON wire forms. Rationals travel as decimal strings `"n"` or `"n/d"` and
//! ħ-exponents as integers, so every exact value round-trips losslessly.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::moyal::UniPoly;
use crate::operator::OpPoly;
use crate::phase_poly::PhasePoly;
use crate::scalar::{fmt_rational, GaussianRational, HbarCoeff};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReprError(String);

impl fmt::Display for ReprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn rational(s: &str) -> Result<BigRational, ReprError> {
    let bad = || ReprError(format!("invalid rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
        if d == 0.into() {
            return Err(bad());
        }
        Ok(BigRational::new(n.parse().map_err(|_| bad())?, d))
    } else {
        BigRational::from_str(s).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HbarTermRepr {
    pub hbar: u32,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HbarCoeffRepr(pub Vec<HbarTermRepr>);

impl From<HbarCoeff> for HbarCoeffRepr {
    fn from(c: HbarCoeff) -> Self {
        HbarCoeffRepr(
            c.terms()
                .map(|(k, g)| HbarTermRepr { hbar: k, re: fmt_rational(&g.re), im: fmt_rational(&g.im) })
                .collect(),
        )
    }
}

impl TryFrom<HbarCoeffRepr> for HbarCoeff {
    type Error = ReprError;
    fn try_from(r: HbarCoeffRepr) -> Result<Self, ReprError> {
        let mut terms = Vec::with_capacity(r.0.len());
        for t in r.0 {
            terms.push((t.hbar, GaussianRational::new(rational(&t.re)?, rational(&t.im)?)));
        }
        Ok(HbarCoeff::from_terms(terms))
    }
}

/// One monomial `c · q^q p^p` (for operators, `Q̂^q P̂^p` in normal order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialRepr {
    pub q: u32,
    pub p: u32,
    pub coeff: HbarCoeffRepr,
}

/// Polynomial wire form. `text` is the canonical print and is ignored on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyRepr {
    #[serde(default)]
    pub text: String,
    pub terms: Vec<MonomialRepr>,
}

fn terms_from<'a>(it: impl Iterator<Item = ((u32, u32), &'a HbarCoeff)>) -> Vec<MonomialRepr> {
    it.map(|((q, p), c)| MonomialRepr { q, p, coeff: c.clone().into() }).collect()
}

type Terms = Vec<((u32, u32), HbarCoeff)>;

fn terms_into(terms: Vec<MonomialRepr>) -> Result<Terms, ReprError> {
    terms.into_iter().map(|m| Ok(((m.q, m.p), HbarCoeff::try_from(m.coeff)?))).collect()
}

impl From<PhasePoly> for PolyRepr {
    fn from(f: PhasePoly) -> Self {
        PolyRepr { text: f.to_string(), terms: terms_from(f.monomials()) }
    }
}

impl TryFrom<PolyRepr> for PhasePoly {
    type Error = ReprError;
    fn try_from(r: PolyRepr) -> Result<Self, ReprError> {
        Ok(PhasePoly::from_terms(terms_into(r.terms)?))
    }
}

impl From<OpPoly> for PolyRepr {
    fn from(a: OpPoly) -> Self {
        PolyRepr { text: a.to_string(), terms: terms_from(a.monomials()) }
    }
}

impl TryFrom<PolyRepr> for OpPoly {
    type Error = ReprError;
    fn try_from(r: PolyRepr) -> Result<Self, ReprError> {
        Ok(OpPoly::from_terms(terms_into(r.terms)?))
    }
}

/// Univariate wire form: coefficients in increasing power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniPolyRepr {
    #[serde(default)]
    pub text: String,
    pub coeffs: Vec<HbarCoeffRepr>,
}

impl From<UniPoly> for UniPolyRepr {
    fn from(f: UniPoly) -> Self {
        UniPolyRepr { text: f.to_string(), coeffs: f.coeffs().iter().cloned().map(Into::into).collect() }
    }
}

impl TryFrom<UniPolyRepr> for UniPoly {
    type Error = ReprError;
    fn try_from(r: UniPolyRepr) -> Result<Self, ReprError> {
        Ok(UniPoly::new(r.coeffs.into_iter().map(HbarCoeff::try_from).collect::<Result<_, _>>()?))
    }
}
