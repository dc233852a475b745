//! `--state` specifications: `fock:n` or `mix:w1:n1,w2:n2,...`.

use phasespace::fock::{fock_state, mixture};
use phasespace::{DensityMatrix, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Fock(usize),
    Mix(Vec<(f64, usize)>),
}

impl std::str::FromStr for StateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("state must be fock:n or mix:w1:n1,w2:n2,..., got {s:?}");
        if let Some(n) = s.strip_prefix("fock:") {
            return n.trim().parse().map(StateSpec::Fock).map_err(|_| bad());
        }
        let body = s.strip_prefix("mix:").ok_or_else(bad)?;
        let parts = body
            .split(',')
            .map(|part| {
                let (w, n) = part.split_once(':').ok_or_else(bad)?;
                Ok((w.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(StateSpec::Mix(parts))
    }
}

impl StateSpec {
    pub fn build(&self, dim: usize) -> Result<DensityMatrix> {
        match self {
            StateSpec::Fock(n) => fock_state(*n, dim),
            StateSpec::Mix(parts) => {
                let weights: Vec<f64> = parts.iter().map(|p| p.0).collect();
                let states = parts.iter().map(|p| fock_state(p.1, dim)).collect::<Result<Vec<_>>>()?;
                mixture(&weights, &states)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!("fock:3".parse(), Ok(StateSpec::Fock(3)));
        assert_eq!("mix:0.5:0,0.5:1".parse(), Ok(StateSpec::Mix(vec![(0.5, 0), (0.5, 1)])));
        assert!("fock:-1".parse::<StateSpec>().is_err());
        assert!("mix:0.5".parse::<StateSpec>().is_err());
        assert!("coherent:1".parse::<StateSpec>().is_err());
    }

    #[test]
    fn half_half_mixture() {
        let u = "mix:0.5:0,0.5:1".parse::<StateSpec>().unwrap().build(16).unwrap();
        assert_eq!(u.rank(), 2);
    }
}
