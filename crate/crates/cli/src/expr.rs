//! The expression language: sums of scalar multiples of generator words.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'#'] factor)*
//! factor := int ['/' int] | 'q' ['^' ['-'] int] | atom | '(' expr ')'
//! atom   := ('p'|'h'|'e') ['+'|'-'] '(' int ',' int ')'
//! ```
//!
//! Scalar factors, including parenthesized groups with no generators, are
//! folded into the term's coefficient while parsing.

use std::fmt;
use std::sync::Arc;

use qheis::laurent::{format_combination, Rational};
use qheis::{Basis, DoubleElement, Generator, LaurentPoly, PairingSpec, Side, SymElement};

use crate::CliError;

/// Largest generator degree the parser accepts.
pub const MAX_DEGREE: u32 = qheis::DEFAULT_DEGREE_BOUND;

/// A generator occurrence. The side is optional so that the same syntax can
/// denote plain symmetric functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub basis: Basis,
    pub side: Option<Side>,
    pub degree: u32,
    pub color: usize,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis.letter())?;
        if let Some(side) = self.side {
            write!(f, "{}", side.sign())?;
        }
        write!(f, "({},{})", self.degree, self.color)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Gen(Atom),
    Group(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: LaurentPoly,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    /// Evaluates in the Heisenberg double; every atom must carry a side.
    pub fn to_double(&self, spec: &Arc<PairingSpec>) -> Result<DoubleElement, CliError> {
        let mut total = DoubleElement::zero(spec.clone());
        for term in &self.terms {
            let mut product = DoubleElement::one(spec.clone());
            for factor in &term.factors {
                let value = match factor {
                    Factor::Gen(atom) => {
                        let side = atom.side.ok_or_else(|| {
                            CliError::Usage(format!(
                                "generator {atom} needs a side: write {}+(..) or {}-(..)",
                                atom.basis, atom.basis
                            ))
                        })?;
                        DoubleElement::generator(
                            spec.clone(),
                            Generator::new(atom.basis, side, atom.degree, atom.color),
                        )?
                    }
                    Factor::Group(inner) => inner.to_double(spec)?,
                };
                product = product.mul(&value)?;
            }
            total = total.add(&product.scale(&term.coeff))?;
        }
        Ok(total)
    }

    /// Evaluates in `Sym^{⊗I}`; sides, if written, are ignored.
    pub fn to_sym(&self, colors: usize) -> Result<SymElement, CliError> {
        let mut total = SymElement::zero(colors, Basis::P);
        for term in &self.terms {
            let mut product = SymElement::one(colors);
            for factor in &term.factors {
                let value = match factor {
                    Factor::Gen(atom) => {
                        SymElement::generator(colors, atom.degree, atom.color, atom.basis)?
                    }
                    Factor::Group(inner) => inner.to_sym(colors)?,
                };
                product = product.mul(&value)?;
            }
            total = total.add(&product.scale(&term.coeff))?;
        }
        Ok(total)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format_combination(self.terms.iter().map(|t| {
            let body = if t.factors.is_empty() {
                "1".to_string()
            } else {
                t.factors
                    .iter()
                    .map(|factor| match factor {
                        Factor::Gen(atom) => atom.to_string(),
                        Factor::Group(inner) => format!("({inner})"),
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            };
            (&t.coeff, body)
        }));
        f.write_str(&text)
    }
}

/// Parses `text`, checking every color against `1..=colors`.
pub fn parse(text: &str, colors: usize) -> Result<Expr, CliError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        colors,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    colors: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), CliError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            if !term.coeff.is_zero() {
                terms.push(term);
            }
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Term, CliError> {
        let mut coeff = LaurentPoly::one();
        let mut factors = Vec::new();
        let mut first = true;
        loop {
            match self.peek() {
                Some(b'*' | b'#') if !first => self.pos += 1,
                Some(c) if !first && starts_factor(c) => {}
                _ if first => {}
                _ => break,
            }
            first = false;
            match self.factor()? {
                Parsed::Scalar(c) => coeff *= &c,
                Parsed::Factor(f) => factors.push(f),
            }
        }
        Ok(Term { coeff, factors })
    }

    fn factor(&mut self) -> Result<Parsed, CliError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer()?;
                let value = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let denom = self.integer()?;
                    if denom == 0 {
                        return Err(self.error("zero denominator"));
                    }
                    Rational::new(numer.into(), denom.into())
                } else {
                    Rational::from_integer(numer.into())
                };
                Ok(Parsed::Scalar(LaurentPoly::constant(value)))
            }
            Some(b'q') => {
                self.pos += 1;
                let mut exp = 1i64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let negative = self.peek() == Some(b'-');
                    if negative {
                        self.pos += 1;
                    }
                    let magnitude = i64::try_from(self.integer()?)
                        .map_err(|_| self.error("exponent too large"))?;
                    exp = if negative { -magnitude } else { magnitude };
                }
                Ok(Parsed::Scalar(LaurentPoly::q_pow(exp)))
            }
            Some(b'p' | b'h' | b'e') => self.atom().map(|a| Parsed::Factor(Factor::Gen(a))),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                if inner.terms.iter().all(|t| t.factors.is_empty()) {
                    Ok(Parsed::Scalar(
                        inner.terms.into_iter().map(|t| t.coeff).sum(),
                    ))
                } else {
                    Ok(Parsed::Factor(Factor::Group(inner)))
                }
            }
            Some(_) => Err(self.error("expected a number, q, a generator or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Atom, CliError> {
        let basis = match self.src[self.pos] {
            b'p' => Basis::P,
            b'h' => Basis::H,
            _ => Basis::E,
        };
        self.pos += 1;
        // no whitespace between the letter, the side and the parenthesis
        let side = match self.src.get(self.pos) {
            Some(b'+') => Some(Side::Plus),
            Some(b'-') => Some(Side::Minus),
            _ => None,
        };
        if side.is_some() {
            self.pos += 1;
        }
        if self.src.get(self.pos) != Some(&b'(') {
            return Err(self.error("expected '(' after generator name"));
        }
        self.pos += 1;
        let degree_at = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let degree = self.integer()?;
        if degree > u64::from(MAX_DEGREE) {
            return Err(CliError::Parse {
                offset: degree_at,
                message: format!("degree {degree} exceeds the limit {MAX_DEGREE}"),
            });
        }
        self.expect(b',')?;
        let color_at = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let color = self.integer()?;
        if color == 0 || color > self.colors as u64 {
            return Err(CliError::Parse {
                offset: color_at,
                message: format!("unknown color {color}; colors are 1..={}", self.colors),
            });
        }
        self.expect(b')')?;
        Ok(Atom {
            basis,
            side,
            degree: degree as u32,
            color: color as usize,
        })
    }

    fn integer(&mut self) -> Result<u64, CliError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| CliError::Parse {
                offset: start,
                message: "integer too large".into(),
            })
    }
}

enum Parsed {
    Scalar(LaurentPoly),
    Factor(Factor),
}

fn starts_factor(c: u8) -> bool {
    c.is_ascii_digit() || matches!(c, b'q' | b'p' | b'h' | b'e' | b'(')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(basis: Basis, side: Side, degree: u32, color: usize) -> Factor {
        Factor::Gen(Atom {
            basis,
            side: Some(side),
            degree,
            color,
        })
    }

    #[test]
    fn grammar_examples() {
        let e = parse("h-(2,1)*h+(3,1)", 1).unwrap();
        assert_eq!(
            e,
            Expr {
                terms: vec![Term {
                    coeff: LaurentPoly::one(),
                    factors: vec![
                        atom(Basis::H, Side::Minus, 2, 1),
                        atom(Basis::H, Side::Plus, 3, 1)
                    ],
                }]
            }
        );
        let e = parse("(q^-1+q)*p+(1,1)", 1).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].coeff, "q^-1+q".parse().unwrap());
        assert_eq!(e.terms[0].factors, vec![atom(Basis::P, Side::Plus, 1, 1)]);
        assert_eq!(e.to_string(), "(q^-1+q)*p+(1,1)");
    }

    #[test]
    fn syntax_errors_report_offsets() {
        let offset = |s: &str| match parse(s, 2) {
            Err(CliError::Parse { offset, .. }) => offset,
            other => panic!("{s:?} parsed as {other:?}"),
        };
        assert_eq!(offset("h+(1,"), 5);
        assert_eq!(offset("h+(1,3)"), 5);
        assert_eq!(offset("p+(17,1)"), 3);
        assert_eq!(offset("h+1"), 2);
        assert_eq!(offset("2 +"), 3);
        assert_eq!(offset("x"), 0);
        assert_eq!(offset("h+(1,1))"), 7);
        assert_eq!(offset("1/0"), 3);
    }

    #[test]
    fn scalars_fold() {
        let e = parse("2 * 3/4 q^2 (1 - q) h+(1,1)", 1).unwrap();
        assert_eq!(e.terms[0].coeff, "3/2*q^2-3/2*q^3".parse().unwrap());
        assert!(parse("0*h+(1,1)", 1).unwrap().terms.is_empty());
        assert_eq!(parse("0", 1).unwrap().to_string(), "0");
        assert_eq!(parse("-(q)", 1).unwrap().to_string(), "-q");
    }

    #[test]
    fn evaluation() {
        let spec =
            Arc::new(PairingSpec::from_lattice(&qheis::LatticeSpec::rank_one(2), 8).unwrap());
        let x = parse("h-(1,1)*h+(1,1) - h+(1,1)#h-(1,1)", 1)
            .unwrap()
            .to_double(&spec)
            .unwrap();
        assert_eq!(x.to_string(), "(q^-1+q)*1#1");
        assert!(parse("h(1,1)", 1).unwrap().to_double(&spec).is_err());
        let s = parse("h(1,1)^", 1);
        assert!(s.is_err());
        let sym = parse("h(2,1) - e(2,1)", 1).unwrap().to_sym(1).unwrap();
        assert_eq!(sym.to_string(), "p[2]");
    }
}
