//! Wigner quasi-distributions sampled on rectangular phase-space grids.
//!
//! For a state `Ū = Σ U_mn |m⟩⟨n|` the Wigner function is
//!
//! ```text
//! W(q,p) = (1/πħ) ∫ ⟨q+y|Ū|q−y⟩ e^{−2ipy/ħ} dy
//! ```
//!
//! With Hermite-function wavefunctions the integrand is a Gaussian times a
//! polynomial in `y`. Completing the square and shifting the contour by
//! `−ip` leaves `e^{−(q²+p²)/ħ} ∫ e^{−s²/ħ} poly(s) ds`, which Gauss–Hermite
//! quadrature integrates exactly once it has more than `max level` nodes.

use std::f64::consts::PI;
use std::fmt;
use std::num::NonZeroUsize;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use gauss_quad::GaussHermite;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};
use crate::phase_poly::PhasePoly;
use crate::scalar::ratio_to_f64;

/// Largest admissible imaginary part of a Wigner sample.
pub const WIGNER_IMAG_TOL: f64 = 1e-10;
/// Largest admissible |W f| on the grid boundary for an overlap integral.
pub const BOUNDARY_DECAY_TOL: f64 = 1e-12;
/// Largest admissible imaginary part of an overlap integral.
pub const OVERLAP_IMAG_TOL: f64 = 1e-8;

/// Axis ranges and sample counts of a phase-space grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub nq: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub np: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { q_min: -8.0, q_max: 8.0, nq: 257, p_min: -8.0, p_max: 8.0, np: 257 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let axis_ok = |lo: f64, hi: f64, n: usize| lo.is_finite() && hi.is_finite() && lo < hi && n >= 2;
        if !axis_ok(self.q_min, self.q_max, self.nq) || !axis_ok(self.p_min, self.p_max, self.np) {
            return Err(Error::InvalidArgument(format!("bad grid {self}")));
        }
        Ok(())
    }

    pub fn dq(&self) -> f64 {
        (self.q_max - self.q_min) / (self.nq - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.np - 1) as f64
    }

    pub fn q_at(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.dq()
    }

    pub fn p_at(&self, j: usize) -> f64 {
        self.p_min + j as f64 * self.dp()
    }

    pub fn cell_area(&self) -> f64 {
        self.dq() * self.dp()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{},{}:{}:{}", self.q_min, self.q_max, self.nq, self.p_min, self.p_max, self.np)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `qmin:qmax:nq,pmin:pmax:np`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid must look like qmin:qmax:nq,pmin:pmax:np, got {s:?}"));
        let axis = |part: &str| -> Result<(f64, f64, usize)> {
            let fields: Vec<&str> = part.split(':').collect();
            if fields.len() != 3 {
                return Err(bad());
            }
            let lo = fields[0].trim().parse().map_err(|_| bad())?;
            let hi = fields[1].trim().parse().map_err(|_| bad())?;
            let n = fields[2].trim().parse().map_err(|_| bad())?;
            Ok((lo, hi, n))
        };
        let (qs, ps) = s.split_once(',').ok_or_else(bad)?;
        let (q_min, q_max, nq) = axis(qs)?;
        let (p_min, p_max, np) = axis(ps)?;
        let spec = GridSpec { q_min, q_max, nq, p_min, p_max, np };
        spec.validate()?;
        Ok(spec)
    }
}

/// Real Wigner samples, row-major with q as the outer index.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl WignerGrid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.spec.np + j]
    }

    /// Riemann sum of the samples times the cell area.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell_area()
    }

    /// `Σ W(q,p) f(q,p) ΔqΔp` with a boundary-decay check on the integrand.
    pub fn overlap(&self, f: &PhasePoly, hbar: &BigRational) -> Result<f64> {
        self.overlap_with(f, hbar, Execution::default())
    }

    pub fn overlap_with(&self, f: &PhasePoly, hbar: &BigRational, exec: Execution) -> Result<f64> {
        let spec = self.spec;
        let num = f.to_numeric(hbar);
        let rows = map_range(exec, spec.nq, |i| {
            let q = spec.q_at(i);
            let mut sum = Complex64::new(0.0, 0.0);
            let mut edge = 0.0f64;
            for j in 0..spec.np {
                let v = num.eval(q, spec.p_at(j)) * self.at(i, j);
                if i == 0 || i + 1 == spec.nq || j == 0 || j + 1 == spec.np {
                    edge = edge.max(v.norm());
                }
                sum += v;
            }
            (sum, edge)
        });
        let edge = rows.iter().map(|r| r.1).fold(0.0, f64::max);
        if edge >= BOUNDARY_DECAY_TOL {
            return Err(Error::GridInadequate(format!(
                "integrand reaches {edge:.3e} on the boundary of {spec}"
            )));
        }
        let total = rows.iter().map(|r| r.0).sum::<Complex64>() * spec.cell_area();
        if total.im.abs() > OVERLAP_IMAG_TOL {
            return Err(Error::ImaginaryResidue {
                residue: total.im.abs(),
                tolerance: OVERLAP_IMAG_TOL,
                context: "phase-space overlap",
            });
        }
        Ok(total.re)
    }

    /// CSV with header `q,p,w`, one row per sample, 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["q", "p", "w"])?;
        for i in 0..self.spec.nq {
            let q = format!("{:.16e}", self.spec.q_at(i));
            for j in 0..self.spec.np {
                w.write_record([q.clone(), format!("{:.16e}", self.spec.p_at(j)), format!("{:.16e}", self.at(i, j))])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

/// Normalized Hermite values `H_k(z)/√(2^k k!)` for `k = 0..=n`.
fn hermite_normalized(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(Complex64::new(1.0, 0.0));
    if n >= 1 {
        h.push(z * 2f64.sqrt());
    }
    for k in 1..n {
        let kf = k as f64;
        let next = z * (2.0 / (kf + 1.0)).sqrt() * h[k] - h[k - 1] * (kf / (kf + 1.0)).sqrt();
        h.push(next);
    }
    h
}

struct Sampler {
    block: DMatrix<Complex64>,
    levels: usize,
    nodes: Vec<(f64, f64)>,
    hbar: f64,
}

impl Sampler {
    fn new(u: &DensityMatrix, hbar: &BigRational) -> Result<Self> {
        let hbar = ratio_to_f64(hbar);
        if hbar.is_nan() || hbar <= 0.0 {
            return Err(Error::InvalidArgument("hbar must be positive".into()));
        }
        let levels = u.max_level() + 1;
        let block = u.matrix().view((0, 0), (levels, levels)).into_owned();
        // exact for polynomial degree 2·(levels+1) − 1 ≥ 2·(levels − 1)
        let rule = GaussHermite::new(NonZeroUsize::new(levels + 1).expect("levels + 1 > 0"));
        let nodes = rule.into_node_weight_pairs().into_vec();
        Ok(Sampler { block, levels, nodes, hbar })
    }

    fn sample(&self, q: f64, p: f64) -> Complex64 {
        let s = self.hbar.sqrt();
        let u = Complex64::new(q, -p) / s;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(t, w) in &self.nodes {
            let left = hermite_normalized(u + t, self.levels - 1);
            let right = hermite_normalized(u.conj() - t, self.levels - 1);
            let mut inner = Complex64::new(0.0, 0.0);
            for (m, l) in left.iter().enumerate() {
                for (n, r) in right.iter().enumerate() {
                    inner += self.block[(m, n)] * l * r;
                }
            }
            acc += inner * w;
        }
        acc * (-(q * q + p * p) / self.hbar).exp() / (PI.powf(1.5) * self.hbar)
    }
}

/// Samples the Wigner function of `u` on `spec`.
pub fn wigner_grid(u: &DensityMatrix, spec: &GridSpec, hbar: &BigRational) -> Result<WignerGrid> {
    wigner_grid_with(u, spec, hbar, Execution::default())
}

pub fn wigner_grid_with(u: &DensityMatrix, spec: &GridSpec, hbar: &BigRational, exec: Execution) -> Result<WignerGrid> {
    spec.validate()?;
    let sampler = Sampler::new(u, hbar)?;
    let rows = map_range(exec, spec.nq, |i| {
        let q = spec.q_at(i);
        (0..spec.np).map(|j| sampler.sample(q, spec.p_at(j))).collect::<Vec<_>>()
    });
    let mut values = Vec::with_capacity(spec.nq * spec.np);
    let mut worst = 0.0f64;
    for z in rows.into_iter().flatten() {
        worst = worst.max(z.im.abs());
        values.push(z.re);
    }
    if worst > WIGNER_IMAG_TOL {
        return Err(Error::ImaginaryResidue { residue: worst, tolerance: WIGNER_IMAG_TOL, context: "Wigner sample" });
    }
    Ok(WignerGrid { spec: *spec, values })
}

/// `∫ W_Ū f dq dp` on the grid: the phase-space route to `tr(Ū Â)`.
pub fn overlap_expectation(u: &DensityMatrix, f: &PhasePoly, spec: &GridSpec, hbar: &BigRational) -> Result<f64> {
    wigner_grid(u, spec, hbar)?.overlap(f, hbar)
}

/// Laguerre polynomial `L_n(x)` by the three-term recurrence.
pub fn laguerre(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed form for a number state,
/// `W_n = ((−1)^n / πħ) e^{−2H/ħ} L_n(4H/ħ)` with `H = (q² + p²)/2`.
pub fn wigner_fock_closed_form(n: usize, q: f64, p: f64, hbar: f64) -> f64 {
    let h = 0.5 * (q * q + p * p);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / (PI * hbar) * (-2.0 * h / hbar).exp() * laguerre(n, 4.0 * h / hbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{fock_state, mixture};
    use num_traits::One;

    fn one() -> BigRational {
        BigRational::one()
    }

    #[test]
    fn laguerre_low_orders() {
        let x = 0.7;
        assert_eq!(laguerre(0, x), 1.0);
        assert!((laguerre(1, x) - (1.0 - x)).abs() < 1e-15);
        assert!((laguerre(2, x) - (x * x - 4.0 * x + 2.0) / 2.0).abs() < 1e-15);
        assert!((laguerre(3, x) - (-x * x * x + 9.0 * x * x - 18.0 * x + 6.0) / 6.0).abs() < 1e-14);
    }

    #[test]
    fn origin_values() {
        let spec = GridSpec { q_min: -1.0, q_max: 1.0, nq: 3, p_min: -1.0, p_max: 1.0, np: 3 };
        let w0 = wigner_grid(&fock_state(0, 16).unwrap(), &spec, &one()).unwrap();
        let w1 = wigner_grid(&fock_state(1, 16).unwrap(), &spec, &one()).unwrap();
        assert!((w0.at(1, 1) - 1.0 / PI).abs() < 1e-12);
        assert!((w1.at(1, 1) + 1.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn quadrature_route_matches_closed_form() {
        let spec = GridSpec { q_min: -5.0, q_max: 5.0, nq: 41, p_min: -5.0, p_max: 5.0, np: 37 };
        for hbar in [one(), BigRational::new(1.into(), 2.into())] {
            let hf = ratio_to_f64(&hbar);
            for n in 0..8 {
                let grid = wigner_grid(&fock_state(n, 20).unwrap(), &spec, &hbar).unwrap();
                for i in 0..spec.nq {
                    for j in 0..spec.np {
                        let oracle = wigner_fock_closed_form(n, spec.q_at(i), spec.p_at(j), hf);
                        assert!((grid.at(i, j) - oracle).abs() < 1e-8, "n={n} at ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn normalization() {
        let spec = GridSpec::default();
        let mix = mixture(&[0.25, 0.75], &[fock_state(0, 16).unwrap(), fock_state(3, 16).unwrap()]).unwrap();
        let grid = wigner_grid(&mix, &spec, &one()).unwrap();
        assert!((grid.integral() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let spec = GridSpec { nq: 33, np: 33, ..GridSpec::default() };
        let s = fock_state(2, 16).unwrap();
        let a = wigner_grid_with(&s, &spec, &one(), Execution::Sequential).unwrap();
        let b = wigner_grid_with(&s, &spec, &one(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn overlap_examples() {
        let spec = GridSpec::default();
        let s0 = fock_state(0, 16).unwrap();
        let h = PhasePoly::oscillator();
        assert!((overlap_expectation(&s0, &h, &spec, &one()).unwrap() - 0.5).abs() < 1e-6);
        assert!((overlap_expectation(&s0, &PhasePoly::one(), &spec, &one()).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn narrow_grid_is_inadequate() {
        let spec = GridSpec { q_min: -2.0, q_max: 2.0, nq: 41, p_min: -2.0, p_max: 2.0, np: 41 };
        let err = overlap_expectation(&fock_state(1, 16).unwrap(), &PhasePoly::oscillator(), &spec, &one()).unwrap_err();
        assert!(matches!(err, Error::GridInadequate(_)));
    }

    #[test]
    fn grid_spec_parsing() {
        let g: GridSpec = "-8:8:257,-6:6:129".parse().unwrap();
        assert_eq!(g.nq, 257);
        assert_eq!(g.p_min, -6.0);
        assert_eq!(g.dq(), 1.0 / 16.0);
        assert!("1:0:5,0:1:5".parse::<GridSpec>().is_err());
        assert!("-8:8,0:1:5".parse::<GridSpec>().is_err());
    }

    #[test]
    fn csv_layout() {
        let spec = GridSpec { q_min: -1.0, q_max: 1.0, nq: 2, p_min: 0.0, p_max: 1.0, np: 2 };
        let grid = wigner_grid(&fock_state(0, 10).unwrap(), &spec, &one()).unwrap();
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "q,p,w");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("-1.0000000000000000e0,0.0000000000000000e0,"));
        assert!(lines[2].starts_with("-1.0000000000000000e0,1.0000000000000000e0,"));
        let w: f64 = lines[4].split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(w, grid.at(1, 1));
    }
}
