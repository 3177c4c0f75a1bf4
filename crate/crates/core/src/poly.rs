//! Noncommutative polynomials with coefficients in a field.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::monomial::Monomial;
use crate::scalar::Coefficient;

/// A finite map from monomials to nonzero coefficients.
///
/// The zero polynomial is the empty map. Terms iterate in the canonical
/// monomial order (see [`Monomial`]'s `Ord`).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(C::one(), m)
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(c, m);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (C, Monomial)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, c: C, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero scalars.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&Monomial::one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    /// The single `(c, m)` term, if this is a nonzero scalar multiple of a monomial.
    pub fn as_term(&self) -> Option<(&C, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// `c * a * self * b` for monomials `a`, `b`.
    pub fn sandwich(&self, c: &C, a: &Monomial, b: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Concatenation is injective for fixed a, b, so no terms merge.
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.sandwich(a, b), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn add_scaled_sandwich(&mut self, c: &C, a: &Monomial, g: &Self, b: &Monomial) {
        if c.is_zero() {
            return;
        }
        for (m, x) in g.terms() {
            self.add_term(x.clone() * c.clone(), m.sandwich(a, b));
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(c), m.clone())))
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let (mut acc, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in other.terms() {
            acc.add_term(c.clone(), m.clone());
        }
        acc
    }
}

impl<C: Coefficient> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut acc = self.clone();
        for (m, c) in rhs.terms() {
            acc.add_term(-c.clone(), m.clone());
        }
        acc
    }
}

impl<C: Coefficient> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut acc = Polynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in rhs.terms() {
                acc.add_term(c1.clone() * c2.clone(), m1.concat(m2));
            }
        }
        acc
    }
}

impl<C: Coefficient> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> From<Monomial> for Polynomial<C> {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}
