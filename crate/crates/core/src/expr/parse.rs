//! Recursive-descent parser for the symbol, operator and univariate
//! expression languages.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' NAT)? ('/' NAT)?
//! atom   := RATIONAL | 'i' | 'hbar' | VAR | '(' expr ')'
//! ```
//!
//! `RATIONAL` is an integer optionally followed by `/` and a positive
//! integer, so `3/4` is one literal. Products need an explicit `*`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Which language an expression is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Phase-space symbols in `q`, `p`.
    Symbol,
    /// Operators in `Q`, `P`.
    Operator,
    /// Univariate functions in `x`.
    Univariate,
}

impl Mode {
    fn admits(self, v: Variable) -> bool {
        matches!(
            (self, v),
            (Mode::Symbol, Variable::SymQ | Variable::SymP)
                | (Mode::Operator, Variable::OpQ | Variable::OpP)
                | (Mode::Univariate, Variable::X)
        )
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Symbol => "symbol",
            Mode::Operator => "operator",
            Mode::Univariate => "univariate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    SymQ,
    SymP,
    OpQ,
    OpP,
    X,
}

impl Variable {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "q" => Variable::SymQ,
            "p" => Variable::SymP,
            "Q" => Variable::OpQ,
            "P" => Variable::OpP,
            "x" => Variable::X,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    ImaginaryUnit,
    Hbar,
    Var(Variable),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// Division by a positive integer.
    Div(Box<Expr>, BigInt),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    UnexpectedToken,
    ModeViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, offset: usize, message: impl Into<String>) -> Self {
        ParseError { kind, offset, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("ascii digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &text[start..i];
                if word != "i" && word != "hbar" && Variable::from_name(word).is_none() {
                    return Err(ParseError::new(ParseErrorKind::Lexical, start, format!("unknown identifier {word:?}")));
                }
                out.push((Tok::Ident(word.to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(ParseErrorKind::Lexical, start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(ParseErrorKind::UnexpectedToken, self.offset(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (n, at) = self.natural()?;
            let exp = n.to_u32().ok_or_else(|| ParseError::new(ParseErrorKind::UnexpectedToken, at, "exponent too large"))?;
            base = Expr::Pow(Box::new(base), exp);
        }
        if *self.peek() == Tok::Slash {
            self.bump();
            let (n, at) = self.natural()?;
            if n.is_zero() {
                return Err(ParseError::new(ParseErrorKind::UnexpectedToken, at, "division by zero"));
            }
            base = Expr::Div(Box::new(base), n);
        }
        Ok(base)
    }

    fn natural(&mut self) -> Result<(BigInt, usize), ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let at = self.offset();
                self.bump();
                Ok((n, at))
            }
            _ => Err(self.unexpected("a natural number")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        let tok = self.peek().clone();
        if matches!(tok, Tok::Int(_) | Tok::Ident(_) | Tok::LParen) {
            self.bump();
        }
        match tok {
            Tok::Int(num) => {
                // `a/b` directly after an integer is a single rational literal
                if *self.peek() == Tok::Slash {
                    if let Some((Tok::Int(den), den_at)) = self.toks.get(self.pos + 1).cloned() {
                        if den.is_zero() {
                            return Err(ParseError::new(ParseErrorKind::Lexical, den_at, "zero denominator"));
                        }
                        self.bump();
                        self.bump();
                        return Ok(Expr::Rational(BigRational::new(num, den)));
                    }
                }
                Ok(Expr::Rational(BigRational::from_integer(num)))
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::ImaginaryUnit),
                "hbar" => Ok(Expr::Hbar),
                other => {
                    let v = Variable::from_name(other).expect("lexer admits only known names");
                    if !self.mode.admits(v) {
                        return Err(ParseError::new(
                            ParseErrorKind::ModeViolation,
                            at,
                            format!("variable {other:?} is not allowed in {} mode", self.mode),
                        ));
                    }
                    Ok(Expr::Var(v))
                }
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, 'i', 'hbar', a variable or '('")),
        }
    }
}

/// Parses `text` in the given mode.
pub fn parse(text: &str, mode: Mode) -> Result<Expr, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::new(ParseErrorKind::UnexpectedToken, 0, "empty expression"));
    }
    let mut parser = Parser { toks: lex(text)?, pos: 0, mode };
    let e = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Expr {
        Expr::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn oscillator_operator() {
        let e = parse("(Q^2+P^2)/2", Mode::Operator).unwrap();
        let expected = Expr::Div(
            Box::new(Expr::Add(
                Box::new(Expr::Pow(Box::new(Expr::Var(Variable::OpQ)), 2)),
                Box::new(Expr::Pow(Box::new(Expr::Var(Variable::OpP)), 2)),
            )),
            2.into(),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn single_variable() {
        assert_eq!(parse("q", Mode::Symbol).unwrap(), Expr::Var(Variable::SymQ));
    }

    #[test]
    fn mode_violation_reports_offset() {
        let err = parse("q*P", Mode::Symbol).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ModeViolation);
        assert_eq!(err.offset, 2);
        let err = parse("x + Q", Mode::Univariate).unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::ModeViolation, 4));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse("3/4", Mode::Symbol).unwrap(), rat(3, 4));
        assert_eq!(parse("6/8", Mode::Symbol).unwrap(), rat(3, 4));
        // exponent binds to the integer, division applies after
        assert_eq!(
            parse("q^2/2", Mode::Symbol).unwrap(),
            Expr::Div(Box::new(Expr::Pow(Box::new(Expr::Var(Variable::SymQ)), 2)), 2.into())
        );
        assert_eq!(parse("1/0", Mode::Symbol).unwrap_err().kind, ParseErrorKind::Lexical);
    }

    #[test]
    fn unary_minus_covers_the_power() {
        let e = parse("-q^2", Mode::Symbol).unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var(Variable::SymQ)), 2))));
        assert!(parse("2 - -q", Mode::Symbol).is_ok());
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse("qp", Mode::Symbol).unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::Lexical, 0));
        let err = parse("q + $", Mode::Symbol).unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::Lexical, 4));
        let err = parse("(q + p", Mode::Symbol).unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::UnexpectedToken, 6));
        let err = parse("q q", Mode::Symbol).unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::UnexpectedToken, 2));
        let err = parse("q^p", Mode::Symbol).unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::UnexpectedToken, 2));
        let err = parse("q + * p", Mode::Symbol).unwrap_err();
        assert_eq!((err.kind, err.offset), (ParseErrorKind::UnexpectedToken, 4));
        assert!(parse("   ", Mode::Symbol).is_err());
    }
}
