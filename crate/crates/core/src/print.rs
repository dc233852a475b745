//! Canonical text form shared by symbols and operators.
//!
//! Terms are ordered by total degree (descending), then q-degree
//! (descending), then ħ-power (ascending), real part before imaginary part.
//! The output is accepted by [`crate::expr::parse`] and lowers back to the
//! same value.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::scalar::{fmt_rational, HbarCoeff};

struct Term {
    a: u32,
    b: u32,
    hbar: u32,
    value: BigRational,
    imaginary: bool,
}

pub(crate) fn format_terms<'a, I>(monomials: I, qname: &str, pname: &str) -> String
where
    I: Iterator<Item = ((u32, u32), &'a HbarCoeff)>,
{
    let mut terms = Vec::new();
    for ((a, b), c) in monomials {
        for (hbar, g) in c.terms() {
            for (value, imaginary) in [(&g.re, false), (&g.im, true)] {
                if !num_traits::Zero::is_zero(value) {
                    terms.push(Term { a, b, hbar, value: value.clone(), imaginary });
                }
            }
        }
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|x, y| {
        (y.a + y.b)
            .cmp(&(x.a + x.b))
            .then(y.a.cmp(&x.a))
            .then(x.hbar.cmp(&y.hbar))
            .then(x.imaginary.cmp(&y.imaginary))
    });

    let mut out = String::new();
    for (idx, t) in terms.iter().enumerate() {
        let negative = t.value.is_negative();
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors: Vec<String> = Vec::new();
        let magnitude = t.value.abs();
        if !magnitude.is_one() {
            let s = fmt_rational(&magnitude);
            factors.push(if magnitude.is_integer() { s } else { format!("({s})") });
        }
        if t.imaginary {
            factors.push("i".into());
        }
        push_power(&mut factors, "hbar", t.hbar);
        push_power(&mut factors, qname, t.a);
        push_power(&mut factors, pname, t.b);
        if factors.is_empty() {
            factors.push("1".into());
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn push_power(factors: &mut Vec<String>, name: &str, exp: u32) {
    match exp {
        0 => {}
        1 => factors.push(name.to_string()),
        n => factors.push(format!("{name}^{n}")),
    }
}
