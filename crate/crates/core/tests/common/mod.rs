#![allow(dead_code)]

use std::collections::BTreeSet;

use quiver_gb::alphabet::{Alphabet, Symbol};
use quiver_gb::quiver::{Edge, LabelledQuiver, Vertex};
use quiver_gb::{Monomial, RatPolynomial, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn letters(n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|k| format!("x{k}"))).unwrap()
}

/// Up to `max_edges` random edges over `letters` symbols.
pub fn random_quiver<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_edges: usize,
    letters_n: usize,
) -> LabelledQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let edges = (0..m)
        .map(|_| Edge {
            src: Vertex(rng.gen_range(0..n)),
            tgt: Vertex(rng.gen_range(0..n)),
            label: Symbol(rng.gen_range(0..letters_n) as u32),
        })
        .collect();
    LabelledQuiver::new(
        letters(letters_n),
        (0..n).map(|k| format!("v{k}")).collect(),
        edges,
    )
    .unwrap()
}

/// Every letter labels at most one edge.
pub fn random_unique_label_quiver<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    letters_n: usize,
) -> LabelledQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let used = rng.gen_range(1..=letters_n);
    let mut labels: Vec<u32> = (0..letters_n as u32).collect();
    labels.shuffle(rng);
    let edges = labels[..used]
        .iter()
        .map(|&l| Edge {
            src: Vertex(rng.gen_range(0..n)),
            tgt: Vertex(rng.gen_range(0..n)),
            label: Symbol(l),
        })
        .collect();
    LabelledQuiver::new(
        letters(letters_n),
        (0..n).map(|k| format!("v{k}")).collect(),
        edges,
    )
    .unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, letters_n: usize, max_len: usize) -> Monomial {
    let len = rng.gen_range(0..=max_len);
    Monomial::new(
        (0..len)
            .map(|_| Symbol(rng.gen_range(0..letters_n) as u32))
            .collect(),
    )
}

/// Labels of all paths `from -> to` with at most `max_len` edges; the first
/// edge is the rightmost letter.
pub fn path_words(q: &LabelledQuiver, from: usize, to: usize, max_len: usize) -> Vec<Monomial> {
    fn walk(
        q: &LabelledQuiver,
        at: usize,
        to: usize,
        left: usize,
        rev: &mut Vec<Symbol>,
        out: &mut BTreeSet<Monomial>,
    ) {
        if at == to {
            out.insert(Monomial::new(rev.iter().rev().copied().collect()));
        }
        if left == 0 {
            return;
        }
        for e in q.edges() {
            if e.src.0 == at {
                rev.push(e.label);
                walk(q, e.tgt.0, to, left - 1, rev, out);
                rev.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(q, from, to, max_len, &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-4i64..=4);
    }
    Rational::new(n.into(), rng.gen_range(1i64..=3).into())
}

/// A random combination of paths `v -> w`, so `(v, w)` lies in its signature.
pub fn random_path_poly<R: Rng>(
    rng: &mut R,
    q: &LabelledQuiver,
    v: usize,
    w: usize,
    max_len: usize,
    max_terms: usize,
) -> Option<RatPolynomial> {
    let words = path_words(q, v, w, max_len);
    if words.is_empty() {
        return None;
    }
    let k = rng.gen_range(1..=max_terms.min(words.len()));
    let f = RatPolynomial::from_terms(
        words
            .choose_multiple(rng, k)
            .map(|m| (small_rational(rng), m.clone())),
    );
    (!f.is_zero()).then_some(f)
}

/// Like [`random_path_poly`] with random endpoints.
pub fn random_poly_anywhere<R: Rng>(
    rng: &mut R,
    q: &LabelledQuiver,
    max_len: usize,
    max_terms: usize,
) -> Option<RatPolynomial> {
    let n = q.vertex_count();
    let (v, w) = (rng.gen_range(0..n), rng.gen_range(0..n));
    random_path_poly(rng, q, v, w, max_len, max_terms)
}
