use std::cmp::Ordering;
use std::fmt;

use crate::alphabet::Symbol;

/// A word over the alphabet. The empty word is the unit.
///
/// Words are stored in written order: `d*h1` is `[d, h1]`, and as an operator
/// the rightmost letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<Symbol>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(word: Vec<Symbol>) -> Self {
        Monomial(word)
    }

    pub fn letter(sym: Symbol) -> Self {
        Monomial(vec![sym])
    }

    pub fn word(&self) -> &[Symbol] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut word = Vec::with_capacity(self.0.len() + other.0.len());
        word.extend_from_slice(&self.0);
        word.extend_from_slice(&other.0);
        Monomial(word)
    }

    /// `a * self * b`.
    pub fn sandwich(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let mut word = Vec::with_capacity(a.0.len() + self.0.len() + b.0.len());
        word.extend_from_slice(&a.0);
        word.extend_from_slice(&self.0);
        word.extend_from_slice(&b.0);
        Monomial(word)
    }

    pub fn subword(&self, range: std::ops::Range<usize>) -> Monomial {
        Monomial(self.0[range].to_vec())
    }

    /// Every `(a, b)` with `self = a * divisor * b`, leftmost occurrence first.
    pub fn find_divisions(&self, divisor: &Monomial) -> Vec<(Monomial, Monomial)> {
        self.division_positions(divisor)
            .map(|pos| {
                (
                    self.subword(0..pos),
                    self.subword(pos + divisor.degree()..self.degree()),
                )
            })
            .collect()
    }

    pub fn division_positions<'a>(
        &'a self,
        divisor: &'a Monomial,
    ) -> impl Iterator<Item = usize> + 'a {
        let (n, k) = (self.degree(), divisor.degree());
        let last = if k <= n { n - k + 1 } else { 0 };
        (0..last).filter(move |&pos| self.0[pos..pos + k] == divisor.0[..])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.division_positions(self).next().is_some()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| format!("x{}", s.0)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Canonical order: degree first, then symbol ids left to right.
///
/// This is the iteration order of polynomial term maps; it is independent of
/// any user-chosen monomial order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Symbol> for Monomial {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Monomial(iter.into_iter().collect())
    }
}
