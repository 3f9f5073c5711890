//! Exact arithmetic in `ℚ[q, q⁻¹]`.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A Laurent polynomial in `q` with rational coefficients.
///
/// Terms are kept in a map from exponent to coefficient with no zero entries,
/// so the zero polynomial is the empty map and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn q() -> Self {
        LaurentPoly::q_pow(1)
    }

    pub fn q_pow(exp: i64) -> Self {
        LaurentPoly::monomial(Rational::one(), exp)
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        LaurentPoly::constant(integer(n))
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The coefficient of the lowest power of `q`, if any.
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        if entry.is_integer() && c.is_integer() {
            // skips the gcd normalization, which dominates integral workloads
            *entry = Rational::from_integer(entry.numer() + c.numer());
        } else {
            *entry += c;
        }
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, mul_rational(v, c)))
                .collect(),
        }
    }

    /// Value at `q = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// True iff every coefficient is an integer, i.e. the polynomial lies in
    /// `ℤ[q, q⁻¹]`.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    /// The image under `q ↦ q⁻¹`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `self / divisor` when the quotient is again a Laurent polynomial.
    ///
    /// Fails with [`Error::InexactDivision`] if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(div_lo), Some(div_hi)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::DivisionByZero);
        };
        let Some(lo) = self.min_exp() else {
            return Ok(LaurentPoly::zero());
        };
        let div_top = divisor.terms[&div_hi].clone();
        let lowest_quotient_exp = lo - div_lo;
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some(top) = rem.max_exp() {
            let shift = top - div_hi;
            if shift < lowest_quotient_exp {
                return Err(Error::InexactDivision {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            let c = &rem.terms[&top] / &div_top;
            for (&e, dc) in &divisor.terms {
                rem.add_term(e + shift, -(dc * &c));
            }
            quotient.add_term(shift, c);
        }
        Ok(quotient)
    }

    /// Compact rendering without spaces, e.g. `q^-1+q`.
    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }

    fn render(&self, spaced: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (&exp, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative, spaced) {
                (0, true, _) => out.push('-'),
                (0, false, _) => {}
                (_, true, true) => out.push_str(" - "),
                (_, false, true) => out.push_str(" + "),
                (_, true, false) => out.push('-'),
                (_, false, false) => out.push('+'),
            }
            out.push_str(&format_monomial(&c.abs(), exp));
        }
        out
    }
}

/// `|c| q^exp` with a nonnegative coefficient.
fn format_monomial(c: &Rational, exp: i64) -> String {
    match exp {
        0 => c.to_string(),
        _ => {
            let var = if exp == 1 {
                "q".to_string()
            } else {
                format!("q^{exp}")
            };
            if c.is_one() {
                var
            } else {
                format!("{c}*{var}")
            }
        }
    }
}

/// The quantum integer `[n] = q^{-n+1} + q^{-n+3} + ⋯ + q^{n-1}`, with
/// `[-n] = [n]` and `[0] = 0`.
pub fn quantum_integer(n: i64) -> LaurentPoly {
    let n = n.abs();
    LaurentPoly::from_terms((0..n).map(|g| (n - 1 - 2 * g, Rational::one())))
}

/// Renders `Σ c·body` as text, e.g. `h+(1,1)#h-(1,1) + (q^-1+q)*1#1`.
///
/// A term whose lowest coefficient is negative is printed with a leading
/// minus sign; unit coefficients are omitted; coefficients with more than one
/// term are parenthesized. The empty sum renders as `0`.
pub fn format_combination<'a>(
    terms: impl IntoIterator<Item = (&'a LaurentPoly, String)>,
) -> String {
    let mut out = String::new();
    for (idx, (coeff, body)) in terms.into_iter().enumerate() {
        let negative = coeff.leading_coeff().is_some_and(Signed::is_negative);
        let coeff = if negative { -coeff } else { coeff.clone() };
        let text = if coeff.is_one() {
            body
        } else if body == "1" {
            coefficient_text(&coeff)
        } else {
            format!("{}*{body}", coefficient_text(&coeff))
        };
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A coefficient as it appears in front of a product: monomials bare,
/// anything longer in parentheses.
pub fn coefficient_text(c: &LaurentPoly) -> String {
    if c.num_terms() > 1 {
        format!("({})", c.to_compact_string())
    } else {
        c.to_compact_string()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::from_int(n)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, mul_rational(c1, c2));
            }
        }
        out
    }
}

fn mul_rational(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, x| acc * x)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses sums of terms such as `q^-2`, `3/2*q^0`, `-q`, `1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = TextParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let poly = parser.sum()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TextParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Malformed(format!(
            "{msg} at offset {} in Laurent polynomial",
            self.pos
        ))
    }

    fn sum(&mut self) -> Result<LaurentPoly> {
        let mut total = LaurentPoly::zero();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let term = self.term()?;
            if negative {
                total -= term;
            } else {
                total += term;
            }
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => return Ok(total),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut value = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            value = value * self.factor()?;
        }
        Ok(value)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let negative = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let exp = self.digits()?;
                    let exp: i64 = exp.parse().map_err(|_| self.error("exponent overflow"))?;
                    Ok(LaurentPoly::q_pow(if negative { -exp } else { exp }))
                } else {
                    Ok(LaurentPoly::q())
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let numer: BigInt = self.digits()?.parse().expect("digits");
                let mut value = Rational::from_integer(numer);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let denom: BigInt = self.digits()?.parse().expect("digits");
                    if denom.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value /= Rational::from_integer(denom);
                }
                Ok(LaurentPoly::constant(value))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected a coefficient or q")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_integer_examples() {
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        assert_eq!(quantum_integer(3), lp("q^-2 + 1 + q^2"));
        assert_eq!(quantum_integer(-2), lp("q^-1 + q"));
        assert_eq!(quantum_integer(0), LaurentPoly::zero());
    }

    #[test]
    fn quantum_integer_closed_form() {
        // (q^-n - q^n) = [n] (q^-1 - q)
        let denom = lp("q^-1 - q");
        for n in 1..=10i64 {
            let lhs = LaurentPoly::q_pow(-n) - LaurentPoly::q_pow(n);
            assert_eq!(&quantum_integer(n) * &denom, lhs);
            assert_eq!(quantum_integer(n).bar(), quantum_integer(n));
            assert_eq!(quantum_integer(n).eval_at_one(), integer(n));
            assert_eq!(quantum_integer(-n).eval_at_one(), integer(n));
        }
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(quantum_integer(4).eval_at_one(), integer(4));
        assert_eq!(LaurentPoly::zero().eval_at_one(), integer(0));
        assert_eq!(lp("q^-2 - 2*q").eval_at_one(), integer(-1));
    }

    #[test]
    fn integrality_examples() {
        assert!(lp("q^-1 + q").is_integral());
        assert!(!lp("1/2*q").is_integral());
        assert!(LaurentPoly::zero().is_integral());
    }

    #[test]
    fn exact_division() {
        // [4]·2 / [2] = 2(q^-2 + q^2)
        let num = quantum_integer(4).scale(&integer(2));
        let quo = num.exact_div(&quantum_integer(2)).unwrap();
        assert_eq!(quo, lp("2*q^-2 + 2*q^2"));
        assert_eq!(&quo * &quantum_integer(2), num);

        for n in 1..=10i64 {
            for chi in -5..=5i64 {
                let num = quantum_integer(n * chi).scale(&integer(n));
                let quo = num.exact_div(&quantum_integer(n)).unwrap();
                assert_eq!(&quo * &quantum_integer(n), num, "n={n} chi={chi}");
            }
        }
        assert!(matches!(
            quantum_integer(3).exact_div(&quantum_integer(2)),
            Err(Error::InexactDivision { .. })
        ));
        assert!(matches!(
            LaurentPoly::one().exact_div(&LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        ));
        assert_eq!(lp("3*q^5").exact_div(&lp("2*q^-1")).unwrap(), lp("3/2*q^6"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(quantum_integer(3).to_string(), "q^-2 + 1 + q^2");
        assert_eq!(quantum_integer(2).to_compact_string(), "q^-1+q");
        assert_eq!(lp("-q^-2 + 3/2 - q").to_string(), "-q^-2 + 3/2 - q");
        assert_eq!(lp("3/2*q^0").to_string(), "3/2");
        assert_eq!(lp("2 * q^3").to_string(), "2*q^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("1/0".parse::<LaurentPoly>().is_err());
        assert!("q q".parse::<LaurentPoly>().is_err());
        assert!("(q".parse::<LaurentPoly>().is_err());
        assert_eq!(lp(" ( q^-1 + q ) * q "), lp("1 + q^2"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = LaurentPoly> {
            prop::collection::vec((-4i64..5, -6i64..7, 1i64..4), 0..5).prop_map(|terms| {
                LaurentPoly::from_terms(terms.into_iter().map(|(e, n, d)| (e, rational(n, d))))
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
                prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn text_round_trip(a in poly()) {
                prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a.clone());
                prop_assert_eq!(a.to_compact_string().parse::<LaurentPoly>().unwrap(), a);
            }

            #[test]
            fn division_inverts_multiplication(a in poly(), b in poly()) {
                prop_assume!(!b.is_zero());
                let prod = &a * &b;
                prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
            }
        }
    }
}
