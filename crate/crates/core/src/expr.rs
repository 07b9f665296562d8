//! Small expression grammar for monomials and elements.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := number | name ('^' exponent)?
//! number  := digits ('/' digits)?
//! exponent:= '-'? digits | '(' '-'? digits ')'
//! name    := letter (letter | digit | '_' | '\'')*
//! ```
//!
//! `1` is the unit. In Lie-group models `x3` is a `π₁` or cohomology-dual generator,
//! `sx2` is `s⁻¹x₂` and `d1` is `x₁^∨`. Grammar version: [`GRAMMAR_VERSION`].

use num_bigint::BigInt;

use crate::algebra::{Element, Signature, WordFactor};
use crate::error::{Error, Result};
use crate::linear::{rat, Linear, Rational};

pub const GRAMMAR_VERSION: u32 = 1;

/// One parsed term: coefficient and a word of `(name, exponent)` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(field: &str, text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut value = Rational::from_integer(parse_int(field, &num)?);
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: String = chars[ds..i].iter().collect();
                if den.is_empty() {
                    return Err(Error::schema(
                        field,
                        format!("missing denominator in `{text}`"),
                    ));
                }
                let d = parse_int(field, &den)?;
                if d == BigInt::from(0) {
                    return Err(Error::schema(
                        field,
                        format!("zero denominator in `{text}`"),
                    ));
                }
                value /= Rational::from_integer(d);
            }
            out.push(Tok::Num(value));
            continue;
        }
        if c.is_alphabetic() || c == '[' {
            let start = i;
            // bracketed names such as `[M]` or `[S1]` are read whole
            if c == '[' {
                while i < chars.len() && chars[i] != ']' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(Error::schema(field, format!("unclosed `[` in `{text}`")));
                }
                i += 1;
            } else {
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::schema(
                    field,
                    format!("unexpected character `{c}` in `{text}`"),
                ))
            }
        };
        out.push(t);
        i += 1;
    }
    Ok(out)
}

fn parse_int(field: &str, s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::schema(field, format!("bad integer `{s}`")))
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a str,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::schema(self.field, format!("{msg} in `{}`", self.text))
    }

    fn expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut sign = rat(1);
        match self.peek() {
            Some(Tok::Minus) => {
                sign = rat(-1);
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            None => return Err(self.err("empty expression")),
            _ => {}
        }
        loop {
            let mut t = self.term()?;
            t.coeff *= &sign;
            terms.push(t);
            match self.next() {
                None => return Ok(terms),
                Some(Tok::Plus) => sign = rat(1),
                Some(Tok::Minus) => sign = rat(-1),
                Some(_) => return Err(self.err("expected `+`, `-` or `*`")),
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = rat(1);
        let mut factors = Vec::new();
        loop {
            match self.next() {
                Some(Tok::Num(n)) => coeff *= n,
                Some(Tok::Name(name)) => {
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    factors.push((name, e));
                }
                _ => return Err(self.err("expected a number or a name")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok(Term { coeff, factors });
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(&Tok::Minus);
        if neg {
            self.pos += 1;
        }
        let n = match self.next() {
            Some(Tok::Num(n)) if n.is_integer() => {
                i64::try_from(n.to_integer()).map_err(|_| self.err("exponent out of range"))?
            }
            _ => return Err(self.err("expected an integer exponent")),
        };
        if paren && self.next() != Some(Tok::RParen) {
            return Err(self.err("expected `)`"));
        }
        Ok(if neg { -n } else { n })
    }
}

/// Parses `text` into terms without resolving names. `field` names the input in errors.
pub fn parse_terms(field: &str, text: &str) -> Result<Vec<Term>> {
    let toks = tokenize(field, text)?;
    Parser {
        toks,
        pos: 0,
        field,
        text,
    }
    .expr()
}

/// Resolves a word against a signature: generator names, then table basis names.
pub fn resolve_word(
    sig: &Signature,
    field: &str,
    word: &[(String, i64)],
) -> Result<Vec<WordFactor>> {
    word.iter()
        .map(|(name, e)| {
            if let Some(id) = sig.generators().iter().position(|g| &g.name == name) {
                return Ok(WordFactor::Gen { id, exponent: *e });
            }
            match sig.table().index_of(name) {
                Some(i) if *e == 1 => Ok(WordFactor::Table(i)),
                Some(_) => Err(Error::schema(
                    field,
                    format!("table class `{name}` takes no exponent"),
                )),
                None => Err(Error::schema(field, format!("unknown generator `{name}`"))),
            }
        })
        .collect()
}

/// Parses an element of the algebra of `sig`.
pub fn parse_element_in(sig: &Signature, field: &str, text: &str) -> Result<Element> {
    let mut out = Element::zero();
    for t in parse_terms(field, text)? {
        let word = resolve_word(sig, field, &t.factors)?;
        out.add_assign_ref(&sig.normalize(t.coeff, &word).map_err(|e| match e {
            Error::Domain(m) | Error::Signature(m) => Error::schema(field, m),
            other => other,
        })?);
    }
    Ok(out)
}

pub fn parse_element(sig: &Signature, text: &str) -> Result<Element> {
    parse_element_in(sig, "expression", text)
}

/// Parses a combination of named classes such as `x1 - 2*x3`; products are rejected.
pub fn parse_classes(field: &str, text: &str) -> Result<Linear<String>> {
    let mut out = Linear::zero();
    for t in parse_terms(field, text)? {
        match t.factors.as_slice() {
            [] if t.coeff == rat(0) => {}
            [(name, 1)] => out.add_term(name.clone(), t.coeff),
            _ => {
                return Err(Error::schema(
                    field,
                    format!("expected a combination of single class names in `{text}`"),
                ))
            }
        }
    }
    Ok(out)
}

/// Parses an exact rational such as `-3/7`.
pub fn parse_rational(field: &str, text: &str) -> Result<Rational> {
    let terms = parse_terms(field, text)?;
    match terms.as_slice() {
        [t] if t.factors.is_empty() => Ok(t.coeff.clone()),
        _ => Err(Error::schema(
            field,
            format!("expected a rational number, got `{text}`"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorSpec, Side};
    use crate::linear::rat_frac;

    fn sig() -> Signature {
        Signature::new(vec![
            GeneratorSpec::free("x1"),
            GeneratorSpec::poly("sx2", 2),
            GeneratorSpec::ext("d1", -1, Side::Manifold),
            GeneratorSpec::ext("d2", -3, Side::Manifold),
        ])
        .unwrap()
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("c", "-3/7").unwrap(), rat_frac(-3, 7));
        assert_eq!(parse_rational("c", "12").unwrap(), rat(12));
        assert!(parse_rational("c", "1/0").is_err());
        assert!(parse_rational("c", "x").is_err());
    }

    #[test]
    fn monomial_grammar() {
        let s = sig();
        let e = parse_element(&s, "x1^3 * sx2^2 * d1*d2").unwrap();
        assert_eq!(s.format(&e), "x1^3*sx2^2*d1*d2");
        let f = parse_element(&s, "d2*d1").unwrap();
        assert_eq!(s.format(&f), "-d1*d2");
        assert_eq!(
            s.format(&parse_element(&s, "x1^(-2) + x1^-2").unwrap()),
            "2*x1^-2"
        );
        assert!(parse_element(&s, "d1*d1").unwrap().is_zero());
        assert_eq!(
            s.format(&parse_element(&s, "1 - 1/2*sx2").unwrap()),
            "1 - 1/2*sx2"
        );
    }

    #[test]
    fn round_trip() {
        let s = sig();
        for text in ["3*x1^-1*sx2*d1 - 2/5*d2 + 1", "-x1*d1*d2", "0"] {
            let e = parse_element(&s, text).unwrap();
            assert_eq!(parse_element(&s, &s.format(&e)).unwrap(), e);
        }
    }

    #[test]
    fn errors_name_the_field() {
        let s = sig();
        match parse_element_in(&s, "a", "y7") {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "a"),
            other => panic!("{other:?}"),
        }
        assert!(parse_element(&s, "x1 +").is_err());
        assert!(parse_element(&s, "sx2^-1").is_err());
    }

    #[test]
    fn classes() {
        let c = parse_classes("hur", "x1 - 2*x3").unwrap();
        assert_eq!(c.coeff(&"x3".to_string()), rat(-2));
        assert!(parse_classes("hur", "x1*x2").is_err());
        assert!(parse_classes("hur", "0").unwrap().is_zero());
    }
}
