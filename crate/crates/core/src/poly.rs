//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Two text forms are understood: the canonical coefficient list
//! `"c0,c1,...,cn"` (index = exponent) and a flat sum of terms such as
//! `"x^2 + 2*x + 2"`. [`IntPoly::to_coeff_list`] emits the canonical form and
//! `Display` emits the compact expression form (`x^2+2x+2`); both re-parse to
//! the same value.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest exponent accepted by the expression parser.
const MAX_PARSED_EXPONENT: usize = 1 << 16;

/// Polynomial `a_0 + a_1 x + ... + a_n x^n` over the integers.
///
/// Always normalized: the coefficient vector is non-empty and its last entry
/// is nonzero, except for the zero polynomial which is stored as `[0]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero()],
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> &BigInt {
        self.coeffs.get(i).unwrap_or(&BigInt::ZERO)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs
            .last()
            .expect("normalized polynomial is non-empty")
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Positive content and the primitive part with positive leading
    /// coefficient, so that `f = sign(lc f) * content * primitive`.
    pub fn content_and_primitive(&self) -> Result<(BigInt, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if self.leading().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let primitive = IntPoly::new(self.coeffs.iter().map(|c| c / &content * &sign).collect());
        Ok((content, primitive))
    }

    /// `x^deg f * f(1/x)`: coefficients reversed up to the degree, trailing
    /// zeros of `f` collapse so the degree may drop.
    pub fn reciprocal(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// Splits `f = x^k * g` with `g(0) != 0`.
    pub fn factor_out_x(&self) -> Result<(usize, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial has a nonzero coefficient");
        Ok((k, IntPoly::new(self.coeffs[k..].to_vec())))
    }

    /// Exact quotient `self / divisor` in `Z[x]`, or `None` when the division
    /// leaves a remainder or needs fractions.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * d;
            }
            quot[shift] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// Canonical `"c0,c1,...,cn"` serialization.
    pub fn to_coeff_list(&self) -> String {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{}]", self.to_coeff_list())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Parses either the coefficient-list form or the expression form.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    if text.contains(',') {
        parse_coeff_list(text)
    } else {
        ExprParser::new(text).parse()
    }
}

fn parse_coeff_list(text: &str) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for item in text.split(',') {
        let lead = item.len() - item.trim_start().len();
        let pos = text[..offset + lead].chars().count();
        coeffs.push(parse_signed_integer(item.trim(), pos)?);
        offset += item.len() + 1;
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_signed_integer(s: &str, position: usize) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() {
        return Err(Error::Syntax {
            position,
            message: "expected an integer coefficient".into(),
        });
    }
    if let Some(bad) = digits.chars().position(|c| !c.is_ascii_digit()) {
        return Err(Error::Syntax {
            position: position + bad + (s.len() - digits.len()),
            message: format!(
                "unexpected character {:?}",
                digits.chars().nth(bad).unwrap()
            ),
        });
    }
    let value: BigInt = digits.parse().expect("validated decimal digits");
    Ok(if s.starts_with('-') { -value } else { value })
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn new(text: &str) -> Self {
        ExprParser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn parse(mut self) -> Result<IntPoly> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        self.skip_ws();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.error("expected '+' or '-' between terms")),
            };
            first = false;
            self.skip_ws();

            let coefficient = self.digits();
            self.skip_ws();
            let mut exponent = 0usize;
            if self.peek() == Some('*') {
                if coefficient.is_none() {
                    return Err(self.error("unexpected '*'"));
                }
                self.pos += 1;
                self.skip_ws();
                if !matches!(self.peek(), Some('x' | 'X')) {
                    return Err(self.error("expected 'x' after '*'"));
                }
            }
            if matches!(self.peek(), Some('x' | 'X')) {
                self.pos += 1;
                exponent = 1;
                self.skip_ws();
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let e = self
                        .digits()
                        .ok_or_else(|| self.error("expected exponent"))?;
                    exponent = e
                        .parse::<usize>()
                        .ok()
                        .filter(|&e| e <= MAX_PARSED_EXPONENT)
                        .ok_or(Error::Syntax {
                            position: at,
                            message: "exponent too large".into(),
                        })?;
                }
            } else if coefficient.is_none() {
                return Err(self.error("expected a coefficient or 'x'"));
            }

            let mut value: BigInt = match coefficient {
                Some(d) => d.parse().expect("validated decimal digits"),
                None => BigInt::one(),
            };
            if negative {
                value = -value;
            }
            if coeffs.len() <= exponent {
                coeffs.resize(exponent + 1, BigInt::zero());
            }
            coeffs[exponent] += value;
            self.skip_ws();
        }
        if first {
            return Err(Error::EmptyInput);
        }
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn parses_both_syntaxes() {
        assert_eq!(parse_poly("4,6,4,1").unwrap(), p(&[4, 6, 4, 1]));
        assert_eq!(parse_poly("x^2+2*x+2").unwrap(), p(&[2, 2, 1]));
        assert_eq!(parse_poly("X^2 + 2x + 2").unwrap(), p(&[2, 2, 1]));
        assert_eq!(parse_poly(" -3 , +0, 7 ").unwrap(), p(&[-3, 0, 7]));
        assert_eq!(parse_poly("5").unwrap(), p(&[5]));
        assert_eq!(parse_poly("-x").unwrap(), p(&[0, -1]));
        assert_eq!(parse_poly("0,0,0").unwrap(), IntPoly::zero());
        assert_eq!(parse_poly("x - x").unwrap(), IntPoly::zero());
    }

    #[test]
    fn parses_five_edge_polynomial() {
        let f = parse_poly(
            "16 + 4*x - 4*x^2 + 2*x^3 - 2*x^4 + x^5 + 2*x^6 - x^7 - x^8 + 16*x^9 + 4*x^10 + 32*x^11",
        )
        .unwrap();
        assert_eq!(f, p(&[16, 4, -4, 2, -2, 1, 2, -1, -1, 16, 4, 32]));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_poly("   "), Err(Error::EmptyInput));
        assert_eq!(parse_poly(""), Err(Error::EmptyInput));
        assert!(matches!(
            parse_poly("1,,2"),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("1,2a"),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            parse_poly("x^2 2x"),
            Err(Error::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_poly("*x"),
            Err(Error::Syntax { position: 0, .. })
        ));
        assert!(matches!(parse_poly("3*"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x+1)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn multiplication() {
        assert_eq!(&p(&[2, 1]) * &p(&[2, 2, 1]), p(&[4, 6, 4, 1]));
        let f = p(&[3, 0, -1, 5]);
        assert_eq!(&f * &IntPoly::one(), f);
        assert_eq!(&f * &IntPoly::zero(), IntPoly::zero());
    }

    #[test]
    fn evaluation() {
        let f = p(&[2, 2, 1]);
        assert_eq!(f.eval(&0.into()), 2.into());
        assert_eq!(f.eval(&1.into()), 5.into());
        assert_eq!(p(&[4, 6, 4, 1]).eval(&(-2).into()), 0.into());
    }

    #[test]
    fn content_and_primitive_part() {
        assert_eq!(
            p(&[2, 0, 2]).content_and_primitive().unwrap(),
            (2.into(), p(&[1, 0, 1]))
        );
        assert_eq!(
            p(&[2, 2, 1]).content_and_primitive().unwrap(),
            (1.into(), p(&[2, 2, 1]))
        );
        assert_eq!(
            p(&[-6, -3]).content_and_primitive().unwrap(),
            (3.into(), p(&[2, 1]))
        );
        assert_eq!(
            IntPoly::zero().content_and_primitive(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn reciprocal_reverses() {
        assert_eq!(p(&[4, 6, 4, 1]).reciprocal(), p(&[1, 4, 6, 4]));
        assert_eq!(p(&[1, 3, 1]).reciprocal(), p(&[1, 3, 1]));
        assert_eq!(p(&[0, 1]).reciprocal(), p(&[1]));
    }

    #[test]
    fn strips_powers_of_x() {
        assert_eq!(p(&[0, 0, 1, 1]).factor_out_x().unwrap(), (2, p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).factor_out_x().unwrap(), (0, p(&[1, 0, 1])));
        assert_eq!(p(&[0, 8]).factor_out_x().unwrap(), (1, p(&[8])));
        assert!(IntPoly::zero().factor_out_x().is_err());
    }

    #[test]
    fn exact_division() {
        let f = p(&[4, 6, 4, 1]);
        assert_eq!(f.div_exact(&p(&[2, 1])), Some(p(&[2, 2, 1])));
        assert_eq!(f.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[0, 2])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[4, 6, 4, 1]).to_string(), "x^3+4x^2+6x+4");
        assert_eq!(p(&[-6, -3]).to_string(), "-3x-6");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2-1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[4, 6, 4, 1]).to_coeff_list(), "4,6,4,1");
    }
}
