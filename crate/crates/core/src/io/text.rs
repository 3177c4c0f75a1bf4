//! Reading and printing polynomials over ℚ.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | symbol ['^' n] | '(' expr ')' ['^' n]
//! ```
//! A rational is `p` or `p/q` with decimal digits. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrdering;
use crate::poly::Polynomial;
use crate::{RatPolynomial, Rational};

const MAX_EXPONENT: u32 = 64;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<RatPolynomial> {
        let mut acc = Polynomial::zero();
        let mut sign = if self.eat('-') {
            -Rational::one()
        } else {
            self.eat('+');
            Rational::one()
        };
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(&sign);
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = -Rational::one();
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatPolynomial> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat('^') {
            return Ok(1);
        }
        self.skip_ws();
        let at = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        match digits.parse::<u32>() {
            Ok(n) if (1..=MAX_EXPONENT).contains(&n) => Ok(n),
            _ => self.err(
                at,
                format!("expected an exponent between 1 and {MAX_EXPONENT}"),
            ),
        }
    }

    fn factor(&mut self) -> Result<RatPolynomial> {
        let at = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[at..].chars().next().expect("peeked");
        let base = if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(')') {
                return self.err(self.pos, "expected `)`");
            }
            e
        } else if c.is_ascii_digit() {
            return self.rational().map(Polynomial::constant);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            match self.alphabet.symbol(name) {
                Some(s) => Polynomial::monomial(Monomial::letter(s)),
                None => return self.err(at, format!("unknown symbol `{name}`")),
            }
        } else {
            return self.err(at, format!("unexpected `{c}`"));
        };
        let n = self.exponent()?;
        let mut acc = base.clone();
        for _ in 1..n {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<Rational> {
        let at = self.pos;
        let num: BigInt = self
            .take_while(|c| c.is_ascii_digit())
            .parse()
            .expect("digits");
        if !self.eat('/') {
            return Ok(Rational::from_integer(num));
        }
        self.skip_ws();
        let dat = self.pos;
        let den = self.take_while(|c| c.is_ascii_digit());
        if den.is_empty() {
            return self.err(dat, "expected a denominator");
        }
        let den: BigInt = den.parse().expect("digits");
        if den.is_zero() {
            return self.err(at, "zero denominator");
        }
        Ok(Rational::new(num, den))
    }
}

pub fn parse_poly(text: &str, alphabet: &Alphabet) -> Result<RatPolynomial> {
    let mut p = Parser {
        src: text,
        pos: 0,
        alphabet,
    };
    if p.peek().is_none() {
        return p.err(p.pos, "empty input");
    }
    let f = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{c}`"));
    }
    Ok(f)
}

/// A word such as `h2*d*i`, or `1`.
pub fn parse_monomial(text: &str, alphabet: &Alphabet) -> Result<Monomial> {
    let f = parse_poly(text, alphabet)?;
    match f.as_term() {
        Some((c, m)) if c.is_one() => Ok(m.clone()),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("`{text}` is not a monomial"),
        }),
    }
}

/// `p`, `-p` or `p/q`, surrounding whitespace allowed.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t.strip_prefix('+').unwrap_or(t).trim_start()),
    };
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("malformed rational `{text}`"),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn format_monomial(m: &Monomial, alphabet: &Alphabet) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.word()
        .iter()
        .map(|&s| alphabet.name(s))
        .collect::<Vec<_>>()
        .join("*")
}

fn format_terms<'a>(
    terms: impl Iterator<Item = (&'a Monomial, &'a Rational)>,
    alphabet: &Alphabet,
) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&format_monomial(m, alphabet));
        } else {
            out.push_str(&format!("{a}*{}", format_monomial(m, alphabet)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Terms in descending canonical order (degree, then symbol ids).
pub fn format_poly(f: &RatPolynomial, alphabet: &Alphabet) -> String {
    format_terms(f.terms().rev(), alphabet)
}

/// Terms in descending order under `ord`.
pub fn format_poly_ordered<O: MonomialOrdering + ?Sized>(
    f: &RatPolynomial,
    alphabet: &Alphabet,
    ord: &O,
) -> String {
    let sorted = ord.sorted_support(f);
    format_terms(
        sorted
            .into_iter()
            .map(|m| (m, f.coeff(m).expect("support"))),
        alphabet,
    )
}
