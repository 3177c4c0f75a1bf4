//! Fixtures and brute-force oracles shared by unit and integration tests.
//!
//! The oracles here enumerate explicit edge paths and never go through the
//! relation-composition code they are used to check.

use crate::alphabet::{Alphabet, Symbol};
use crate::monomial::Monomial;
use crate::order::DegLex;
use crate::poly::Polynomial;
use crate::quiver::{LabelledQuiver, Signature, Vertex};
use crate::Rational;

/// Letters of the ODE factorization example.
#[derive(Clone, Copy, Debug)]
pub struct Letters {
    pub h1: Symbol,
    pub h2: Symbol,
    pub b1: Symbol,
    pub b2: Symbol,
    pub th1: Symbol,
    pub th2: Symbol,
    pub i: Symbol,
    pub d: Symbol,
}

pub struct RunningPolys {
    pub f1: Polynomial<Rational>,
    pub f2: Polynomial<Rational>,
    pub f3: Polynomial<Rational>,
    pub f4: Polynomial<Rational>,
    pub f5: Polynomial<Rational>,
    pub claim: Polynomial<Rational>,
}

impl RunningPolys {
    pub fn assumptions(&self) -> Vec<Polynomial<Rational>> {
        vec![
            self.f1.clone(),
            self.f2.clone(),
            self.f3.clone(),
            self.f4.clone(),
            self.f5.clone(),
        ]
    }

    pub fn named(&self) -> Vec<(String, Polynomial<Rational>)> {
        ["f1", "f2", "f3", "f4", "f5"]
            .iter()
            .map(|s| s.to_string())
            .zip(self.assumptions())
            .collect()
    }
}

/// The three-vertex quiver `v1, v2, v3` of the ODE example.
pub fn running() -> (LabelledQuiver, Letters) {
    let alphabet = Alphabet::new(["h1", "h2", "b1", "b2", "th1", "th2", "i", "d"]).unwrap();
    let q = LabelledQuiver::from_names(
        alphabet,
        &["v1", "v2", "v3"],
        &[
            ("v1", "v2", "d"),
            ("v2", "v3", "d"),
            ("v2", "v3", "b1"),
            ("v1", "v2", "b2"),
            ("v2", "v1", "i"),
            ("v3", "v2", "i"),
            ("v2", "v2", "h1"),
            ("v3", "v3", "h1"),
            ("v1", "v1", "h2"),
            ("v2", "v2", "h2"),
            ("v3", "v3", "th1"),
            ("v2", "v2", "th2"),
        ],
    )
    .unwrap();
    let a = q.alphabet();
    let l = Letters {
        h1: a.lookup("h1").unwrap(),
        h2: a.lookup("h2").unwrap(),
        b1: a.lookup("b1").unwrap(),
        b2: a.lookup("b2").unwrap(),
        th1: a.lookup("th1").unwrap(),
        th2: a.lookup("th2").unwrap(),
        i: a.lookup("i").unwrap(),
        d: a.lookup("d").unwrap(),
    };
    (q, l)
}

pub fn running_polys(s: &Letters) -> RunningPolys {
    let f1 = poly(&[(1, &[s.d, s.h1]), (-1, &[s.h1, s.d]), (-1, &[s.b1, s.h1])]);
    let f2 = poly(&[(1, &[s.d, s.h2]), (-1, &[s.h2, s.d]), (-1, &[s.b2, s.h2])]);
    let f3 = poly(&[(1, &[s.h1, s.th1]), (-1, &[])]);
    let f4 = poly(&[(1, &[s.h2, s.th2]), (-1, &[])]);
    let f5 = poly(&[(1, &[s.d, s.i]), (-1, &[])]);
    let left = &poly(&[(1, &[s.d]), (-1, &[s.b1])]) * &poly(&[(1, &[s.d]), (-1, &[s.b2])]);
    let tail = poly(&[(1, &[s.h2, s.i, s.th2, s.h1, s.i, s.th1])]);
    let claim = &(&left * &tail) - &Polynomial::one();
    RunningPolys {
        f1,
        f2,
        f3,
        f4,
        f5,
        claim,
    }
}

/// Deglex with `d` above every other letter.
pub fn d_greatest(s: &Letters) -> DegLex {
    DegLex::from_precedence(vec![s.d, s.i, s.h2, s.h1, s.th2, s.th1, s.b2, s.b1], 8).unwrap()
}

/// Deglex with `h2 > b2 > d > b1, h1`.
pub fn h2_b2_d(s: &Letters) -> DegLex {
    DegLex::from_precedence(vec![s.h2, s.b2, s.d, s.i, s.th2, s.th1, s.h1, s.b1], 8).unwrap()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn mono(word: &[Symbol]) -> Monomial {
    Monomial::new(word.to_vec())
}

pub fn poly(terms: &[(i64, &[Symbol])]) -> Polynomial<Rational> {
    Polynomial::from_terms(terms.iter().map(|(c, w)| (rat(*c), mono(w))))
}

/// A signature on the three running-example vertices (0-based).
pub fn sig(pairs: &[(usize, usize)]) -> Signature {
    Signature::from_pairs(3, pairs.iter().copied())
}

/// Enumerates every edge path whose label is `m` and collects endpoints.
pub fn brute_force_sigma(q: &LabelledQuiver, m: &Monomial) -> Signature {
    let n = q.vertex_count();
    let mut out = Signature::empty(n);
    // the rightmost letter labels the first edge
    let letters: Vec<Symbol> = m.word().iter().rev().copied().collect();
    fn walk(q: &LabelledQuiver, letters: &[Symbol], at: usize, start: usize, out: &mut Signature) {
        match letters.split_first() {
            None => out.insert(Vertex(start), Vertex(at)),
            Some((x, rest)) => {
                for e in q.edges() {
                    if e.src.0 == at && e.label == *x {
                        walk(q, rest, e.tgt.0, start, out);
                    }
                }
            }
        }
    }
    for v in 0..n {
        walk(q, &letters, v, v, &mut out);
    }
    out
}

/// All edge paths (as edge-index lists, first edge first) from `from` to `to` with label `m`.
pub fn brute_force_paths(
    q: &LabelledQuiver,
    m: &Monomial,
    from: Vertex,
    to: Vertex,
) -> Vec<Vec<usize>> {
    let letters: Vec<Symbol> = m.word().iter().rev().copied().collect();
    let mut out = Vec::new();
    fn walk(
        q: &LabelledQuiver,
        letters: &[Symbol],
        at: usize,
        to: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        match letters.split_first() {
            None => {
                if at == to {
                    out.push(path.clone())
                }
            }
            Some((x, rest)) => {
                for (k, e) in q.edges().iter().enumerate() {
                    if e.src.0 == at && e.label == *x {
                        path.push(k);
                        walk(q, rest, e.tgt.0, to, path, out);
                        path.pop();
                    }
                }
            }
        }
    }
    walk(q, &letters, from.0, to.0, &mut Vec::new(), &mut out);
    out
}
