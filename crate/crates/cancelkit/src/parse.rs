//! Text grammar for fields, polynomials, and conics: terms `c*x^k` with
//! rational or field-element coefficients, the field generator `t`, the
//! shorthands `T(n)` / `P(n)`, and the bivariate variables `X`, `Y` for
//! conics. Errors carry character positions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::conics::Conic;
use crate::numberfield::{nf_create, FieldElement, NumberField};
use crate::polyring::{chebyshev, power_map, KxPoly};
use crate::witness::Bivariate;
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(char), // one of x X y Y t T P
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), pos));
                i = j;
            }
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                match s.as_str() {
                    "x" | "X" | "y" | "Y" | "t" | "T" | "P" => {
                        out.push((Tok::Sym(s.chars().next().unwrap()), pos));
                    }
                    _ => return Err(Error::UnknownSymbol(s, pos)),
                }
                i = j;
            }
            other => {
                return Err(Error::Syntax(format!("unexpected character '{}'", other), pos));
            }
        }
    }
    Ok(out)
}

/// What the letters mean while parsing.
#[derive(Clone, Copy, PartialEq)]
enum Mode {
    /// `x` is the variable, `t` the field generator, `Y` rejected
    Univariate,
    /// `t` is the variable (field minimal polynomials over Q)
    FieldPoly,
    /// `X` and `Y` are the two variables, `t` the field generator
    Conic,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    field: &'a Arc<NumberField>,
    mode: Mode,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        self.i += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax(msg.into(), self.pos())
    }

    fn constant(&self, c: FieldElement) -> Bivariate {
        Bivariate::from_terms(self.field, vec![((0, 0), c)])
    }

    fn var_x(&self) -> Bivariate {
        Bivariate::from_terms(self.field, vec![((1, 0), FieldElement::one(self.field))])
    }

    fn var_y(&self) -> Bivariate {
        Bivariate::from_terms(self.field, vec![((0, 1), FieldElement::one(self.field))])
    }

    fn expr(&mut self) -> Result<Bivariate, Error> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            self.term()?.scale(&FieldElement::from_int(self.field, -1))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Bivariate, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.factor()?;
                    let c = match rhs.terms.get(&(0, 0)) {
                        Some(c) if rhs.terms.len() == 1 => c.clone(),
                        _ if rhs.is_zero() => return Err(Error::DivisionByZero),
                        _ => {
                            return Err(Error::Syntax(
                                "division by a non-constant".into(),
                                pos,
                            ))
                        }
                    };
                    acc = acc.scale(&c.inverse()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Bivariate, Error> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            let f = self.factor()?;
            return Ok(f.scale(&FieldElement::from_int(self.field, -1)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = match self.bump() {
                Some(Tok::Int(n)) => {
                    use num_traits::ToPrimitive;
                    n.to_u32().ok_or_else(|| self.err("exponent out of range"))?
                }
                _ => return Err(self.err("expected an integer exponent after '^'")),
            };
            let mut acc = self.constant(FieldElement::one(self.field));
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn shorthand(&mut self, which: char) -> Result<Bivariate, Error> {
        if self.bump() != Some(Tok::LParen) {
            return Err(self.err("expected '(' after shorthand"));
        }
        let n = match self.bump() {
            Some(Tok::Int(n)) => {
                use num_traits::ToPrimitive;
                n.to_usize().ok_or_else(|| self.err("degree out of range"))?
            }
            _ => return Err(self.err("expected an integer degree")),
        };
        if self.bump() != Some(Tok::RParen) {
            return Err(self.err("expected ')'"));
        }
        if n < 1 {
            return Err(self.err("shorthand degree must be >= 1"));
        }
        let poly = if which == 'T' {
            chebyshev(self.field, n)
        } else {
            power_map(self.field, n)
        };
        let mut out = Bivariate::zero(self.field);
        for (k, c) in poly.coeffs().iter().enumerate() {
            out = out.add(&Bivariate::from_terms(
                self.field,
                vec![((k as u32, 0), c.clone())],
            ));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Bivariate, Error> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(self.constant(FieldElement::from_rat(
                self.field,
                BigRational::from(n),
            ))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Sym(s)) => match (self.mode, s) {
                (Mode::Univariate, 'x') | (Mode::Univariate, 'X') => Ok(self.var_x()),
                (Mode::Univariate, 't') => {
                    Ok(self.constant(FieldElement::generator(self.field)))
                }
                (Mode::FieldPoly, 't') => Ok(self.var_x()),
                (Mode::Conic, 'x') | (Mode::Conic, 'X') => Ok(self.var_x()),
                (Mode::Conic, 'y') | (Mode::Conic, 'Y') => Ok(self.var_y()),
                (Mode::Conic, 't') => Ok(self.constant(FieldElement::generator(self.field))),
                (m, 'T') | (m, 'P') if m != Mode::FieldPoly => self.shorthand(s),
                _ => Err(Error::UnknownSymbol(s.to_string(), pos)),
            },
            _ => Err(Error::Syntax("expected a term".into(), pos)),
        }
    }

    fn finish(&mut self) -> Result<Bivariate, Error> {
        let v = self.expr()?;
        if self.i != self.toks.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

fn run_parser(
    text: &str,
    field: &Arc<NumberField>,
    mode: Mode,
) -> Result<Bivariate, Error> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax("empty input".into(), 0));
    }
    Parser {
        toks,
        i: 0,
        field,
        mode,
        end: text.chars().count(),
    }
    .finish()
}

fn to_univariate(b: &Bivariate, field: &Arc<NumberField>) -> Result<KxPoly, Error> {
    let mut coeffs: Vec<FieldElement> = Vec::new();
    for ((i, j), c) in &b.terms {
        if *j != 0 {
            return Err(Error::Syntax("'Y' is not allowed here".into(), 0));
        }
        while coeffs.len() <= *i as usize {
            coeffs.push(FieldElement::zero(field));
        }
        coeffs[*i as usize] = c.clone();
    }
    Ok(KxPoly::new(field, coeffs))
}

/// Parse the defining polynomial of K in the variable `t` ("t" means Q) and
/// construct the field.
pub fn parse_field(text: &str) -> Result<Arc<NumberField>, Error> {
    let q = NumberField::rationals();
    let b = run_parser(text, &q, Mode::FieldPoly)?;
    let poly = to_univariate(&b, &q)?;
    let coeffs: Vec<BigRational> = poly
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("coefficients over Q"))
        .collect();
    if coeffs.len() < 2 {
        return Err(Error::Syntax("field polynomial must involve t".into(), 0));
    }
    nf_create(&coeffs)
}

/// Parse a univariate polynomial in `x` over K.
pub fn parse_polynomial(text: &str, field: &Arc<NumberField>) -> Result<KxPoly, Error> {
    let b = run_parser(text, field, Mode::Univariate)?;
    to_univariate(&b, field)
}

/// Parse a generator: a polynomial required to have degree >= 2.
pub fn parse_generator(text: &str, field: &Arc<NumberField>) -> Result<KxPoly, Error> {
    let p = parse_polynomial(text, field)?;
    if p.degree().unwrap_or(0) < 2 {
        return Err(Error::DegreeLt2(text.trim().to_string()));
    }
    Ok(p)
}

/// Parse a conic in `X`, `Y` over K (total degree <= 2, quadratic part
/// nonzero).
pub fn parse_conic(text: &str, field: &Arc<NumberField>) -> Result<Conic, Error> {
    let b = run_parser(text, field, Mode::Conic)?;
    let get = |i: u32, j: u32| -> FieldElement {
        b.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(field))
    };
    let conic = Conic {
        field: field.clone(),
        cxx: get(2, 0),
        cxy: get(1, 1),
        cyy: get(0, 2),
        cx: get(1, 0),
        cy: get(0, 1),
        c1: get(0, 0),
    };
    if b.terms.keys().any(|(i, j)| i + j > 2) {
        return Err(Error::Syntax("conic must have total degree <= 2".into(), 0));
    }
    if !conic.is_quadratic() {
        return Err(Error::DegenerateConic);
    }
    Ok(conic)
}
