//! Phase-space (Weyl–Wigner–Moyal) quantum mechanics in exact arithmetic,
//! checked against a truncated Fock-space numerical representation.
//!
//! * [`scalar`] and [`phase_poly`]: Gaussian-rational coefficients with a
//!   symbolic ħ, and commutative polynomials in (q, p).
//! * [`operator`]: normal-ordered polynomials in q̂, p̂ and Weyl quantization.
//! * [`moyal`]: the star product, dequantization and the gap between the
//!   symbol of `f(Â)` and `f` of the symbol.
//! * [`fock`]: ladder matrices, density matrices, trace expectations,
//!   dispersions and Wigner grids.
//! * [`vn`]: ensemble theorems and the point-evaluation hidden variables.
//! * [`expr`]: the text syntax used by the command-line tool.
//!
//! ```
//! use phasespace::expr::parse_operator;
//! use phasespace::moyal::dequantize;
//!
//! let h = parse_operator("(Q^2+P^2)/2").unwrap();
//! let symbol = dequantize(&(&h * &h));
//! assert_eq!(symbol.to_string(), "(1/4)*q^4 + (1/2)*q^2*p^2 + (1/4)*p^4 - (1/4)*hbar^2");
//! ```

pub mod error;
pub mod exec;
pub mod expr;
pub mod fock;
pub mod moyal;
pub mod operator;
pub mod phase_poly;
mod print;
pub mod scalar;
pub mod serial;
pub mod vn;

pub use error::{Error, Result};
pub use exec::Execution;
pub use fock::{DensityMatrix, FockMatrix, GridSpec, WignerGrid};
pub use moyal::{assumption_i_gap, assumption_ii_check, dequantize, moyal_bracket, star, GapReport, UniPoly};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use operator::{weyl_quantize, OpPoly};
pub use phase_poly::{PhasePoint, PhasePoly, Var};
pub use scalar::{GaussianRational, HbarCoeff};
pub use vn::HvDispersionReport;
