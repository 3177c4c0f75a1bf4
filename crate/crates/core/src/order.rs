//! Monomial orders, leading terms and the quiver-restricted partial order.

use std::cmp::Ordering;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::quiver::LabelledQuiver;
use crate::scalar::Coefficient;

/// A well-founded total order on words, compatible with concatenation.
pub trait MonomialOrdering {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering;

    fn leading_term<'p, C: Coefficient>(
        &self,
        f: &'p Polynomial<C>,
    ) -> Result<(&'p C, &'p Monomial)> {
        f.terms()
            .max_by(|(a, _), (b, _)| self.compare(a, b))
            .map(|(m, c)| (c, m))
            .ok_or(Error::ZeroPolynomial)
    }

    fn leading_monomial<'p, C: Coefficient>(&self, f: &'p Polynomial<C>) -> Result<&'p Monomial> {
        self.leading_term(f).map(|(_, m)| m)
    }

    /// Support in descending order.
    fn sorted_support<'p, C: Coefficient>(&self, f: &'p Polynomial<C>) -> Vec<&'p Monomial> {
        let mut v: Vec<_> = f.support().collect();
        v.sort_by(|a, b| self.compare(b, a));
        v
    }
}

/// Degree first, then lexicographic under an explicit letter precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegLex {
    /// Greatest first.
    precedence: Vec<Symbol>,
    /// Indexed by symbol id; larger is greater.
    rank: Vec<usize>,
}

impl DegLex {
    /// `precedence` lists every one of the `alphabet_len` letters once, greatest first.
    pub fn from_precedence(precedence: Vec<Symbol>, alphabet_len: usize) -> Result<Self> {
        let mut rank = vec![usize::MAX; alphabet_len];
        for (pos, &s) in precedence.iter().enumerate() {
            let slot = rank
                .get_mut(s.index())
                .ok_or_else(|| Error::BadPrecedence(format!("unknown symbol #{}", s.0)))?;
            if *slot != usize::MAX {
                return Err(Error::BadPrecedence(format!(
                    "symbol #{} listed twice",
                    s.0
                )));
            }
            *slot = precedence.len() - pos;
        }
        if let Some(missing) = rank.iter().position(|&r| r == usize::MAX) {
            return Err(Error::BadPrecedence(format!(
                "symbol #{missing} not listed"
            )));
        }
        Ok(DegLex { precedence, rank })
    }

    pub fn new(alphabet: &Alphabet, precedence: &[&str]) -> Result<Self> {
        let mut syms = Vec::with_capacity(precedence.len());
        for name in precedence {
            syms.push(alphabet.lookup(name)?);
        }
        let missing: Vec<&str> = alphabet
            .symbols()
            .filter(|s| !syms.contains(s))
            .map(|s| alphabet.name(s))
            .collect();
        if !missing.is_empty() {
            return Err(Error::BadPrecedence(format!(
                "missing {}",
                missing.join(", ")
            )));
        }
        Self::from_precedence(syms, alphabet.len())
    }

    pub fn precedence(&self) -> &[Symbol] {
        &self.precedence
    }
}

impl MonomialOrdering for DegLex {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            a.word()
                .iter()
                .zip(b.word())
                .map(|(x, y)| self.rank[x.index()].cmp(&self.rank[y.index()]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

/// Outcome of comparing under the quiver-restricted partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// `m1 <=_Q m2` iff `m1 <= m2` and `sigma(m2)` is contained in `sigma(m1)`.
pub fn q_compare<O: MonomialOrdering + ?Sized>(
    q: &LabelledQuiver,
    ord: &O,
    m1: &Monomial,
    m2: &Monomial,
) -> QOrdering {
    if m1 == m2 {
        return QOrdering::Equal;
    }
    let (s1, s2) = (q.sigma_monomial(m1), q.sigma_monomial(m2));
    match ord.compare(m1, m2) {
        Ordering::Less if s2.is_subset(&s1) => QOrdering::Less,
        Ordering::Greater if s1.is_subset(&s2) => QOrdering::Greater,
        _ => QOrdering::Incomparable,
    }
}

/// Compatible and `sigma(LM(f)) = sigma(f)`.
pub fn is_q_order_compatible<C: Coefficient, O: MonomialOrdering + ?Sized>(
    q: &LabelledQuiver,
    ord: &O,
    f: &Polynomial<C>,
) -> Result<bool> {
    let lm = ord.leading_monomial(f)?;
    let sig = q.sigma(f);
    Ok(!sig.is_empty() && q.sigma_monomial(lm) == sig)
}
