//! Labelled quivers and signatures.
//!
//! A signature of a monomial is the set of `(source, target)` vertex pairs of
//! the paths carrying it as a label; for a polynomial it is the intersection
//! over the support. Relations are dense boolean `|V| x |V|` matrices, and the
//! signature of a word is a left fold of relation products.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: Vertex,
    pub tgt: Vertex,
    pub label: Symbol,
}

/// A binary relation on the vertex set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    n: usize,
    bits: Vec<bool>,
}

impl Signature {
    pub fn empty(n: usize) -> Self {
        Signature {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn full(n: usize) -> Self {
        Signature {
            n,
            bits: vec![true; n * n],
        }
    }

    pub fn diagonal(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(Vertex(v), Vertex(v));
        }
        s
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut s = Self::empty(n);
        for (u, w) in pairs {
            s.insert(Vertex(u), Vertex(w));
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, src: Vertex, tgt: Vertex) {
        self.bits[src.0 * self.n + tgt.0] = true;
    }

    pub fn contains(&self, src: Vertex, tgt: Vertex) -> bool {
        self.bits[src.0 * self.n + tgt.0]
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.n;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (Vertex(k / n), Vertex(k % n)))
    }

    pub fn intersect(&self, other: &Signature) -> Signature {
        Signature {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }

    /// `{(u, w) | exists v: (u, v) in inner, (v, w) in outer}`.
    ///
    /// `inner` is traversed first, matching a word whose right part acts first.
    pub fn compose(outer: &Signature, inner: &Signature) -> Signature {
        let n = inner.n;
        let mut out = Signature::empty(n);
        for u in 0..n {
            for v in 0..n {
                if !inner.bits[u * n + v] {
                    continue;
                }
                let row = &outer.bits[v * n..(v + 1) * n];
                for (w, &b) in row.iter().enumerate() {
                    if b {
                        out.bits[u * n + w] = true;
                    }
                }
            }
        }
        out
    }

    pub fn sources(&self) -> Vec<Vertex> {
        let mut v: Vec<_> = self.pairs().map(|(s, _)| s).collect();
        v.dedup();
        v
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.pairs().map(|(u, w)| (u.0, w.0)))
            .finish()
    }
}

/// Result of a compatibility check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    /// All support monomials share one signature.
    pub uniform: bool,
}

/// `Q = (V, E, X, s, t, l)`, immutable after construction.
#[derive(Debug)]
pub struct LabelledQuiver {
    alphabet: Alphabet,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    relations: Vec<Signature>,
    memo: RwLock<HashMap<Monomial, Signature>>,
}

impl Clone for LabelledQuiver {
    fn clone(&self) -> Self {
        LabelledQuiver {
            alphabet: self.alphabet.clone(),
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            relations: self.relations.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl LabelledQuiver {
    /// Identical `(src, tgt, label)` triples are stored once.
    pub fn new(alphabet: Alphabet, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertices.len();
        for (k, name) in vertices.iter().enumerate() {
            if vertices[..k].contains(name) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut stored: Vec<Edge> = Vec::with_capacity(edges.len());
        for e in edges {
            if e.src.0 >= n {
                return Err(Error::UnknownVertex(format!("#{}", e.src.0)));
            }
            if e.tgt.0 >= n {
                return Err(Error::UnknownVertex(format!("#{}", e.tgt.0)));
            }
            if !alphabet.contains(e.label) {
                return Err(Error::UnknownSymbol(format!("#{}", e.label.0)));
            }
            if !stored.contains(&e) {
                stored.push(e);
            }
        }
        let mut relations = vec![Signature::empty(n); alphabet.len()];
        for e in &stored {
            relations[e.label.index()].insert(e.src, e.tgt);
        }
        Ok(LabelledQuiver {
            alphabet,
            vertices,
            edges: stored,
            relations,
            memo: RwLock::new(HashMap::new()),
        })
    }

    /// Builds a quiver from names, e.g. `("v1", "v2", "d")` triples.
    pub fn from_names(
        alphabet: Alphabet,
        vertices: &[&str],
        edges: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .map(Vertex)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let edges = edges
            .iter()
            .map(|(s, t, l)| {
                Ok(Edge {
                    src: find(s)?,
                    tgt: find(t)?,
                    label: alphabet.lookup(l)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, vertices, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.vertices.iter().position(|v| v == name).map(Vertex)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `{(s(e), t(e)) | l(e) = x}`.
    pub fn edge_relation(&self, x: Symbol) -> Result<Signature> {
        self.relations
            .get(x.index())
            .cloned()
            .ok_or_else(|| Error::UnknownSymbol(format!("#{}", x.0)))
    }

    fn relation_or_empty(&self, x: Symbol) -> Signature {
        self.relations
            .get(x.index())
            .cloned()
            .unwrap_or_else(|| Signature::empty(self.vertex_count()))
    }

    pub fn sigma_monomial(&self, m: &Monomial) -> Signature {
        let n = self.vertex_count();
        if m.is_one() {
            return Signature::diagonal(n);
        }
        if let Some(s) = self.memo.read().expect("memo lock").get(m) {
            return s.clone();
        }
        let word = m.word();
        let mut sig = self.relation_or_empty(word[word.len() - 1]);
        for &x in word[..word.len() - 1].iter().rev() {
            if sig.is_empty() {
                break;
            }
            sig = Signature::compose(&self.relation_or_empty(x), &sig);
        }
        self.memo
            .write()
            .expect("memo lock")
            .insert(m.clone(), sig.clone());
        sig
    }

    pub fn sigma<C: Coefficient>(&self, f: &Polynomial<C>) -> Signature {
        let mut sig = Signature::full(self.vertex_count());
        for m in f.support() {
            sig = sig.intersect(&self.sigma_monomial(m));
            if sig.is_empty() {
                break;
            }
        }
        sig
    }

    pub fn compatibility<C: Coefficient>(&self, f: &Polynomial<C>) -> Compatibility {
        let mut sigs = f.support().map(|m| self.sigma_monomial(m));
        let uniform = match sigs.next() {
            None => true,
            Some(first) => sigs.all(|s| s == first),
        };
        Compatibility {
            compatible: !self.sigma(f).is_empty(),
            uniform,
        }
    }

    pub fn is_compatible<C: Coefficient>(&self, f: &Polynomial<C>) -> bool {
        !self.sigma(f).is_empty()
    }

    pub fn has_unique_edge_labels(&self) -> bool {
        let mut seen = vec![false; self.alphabet.len()];
        for e in &self.edges {
            if std::mem::replace(&mut seen[e.label.index()], true) {
                return false;
            }
        }
        true
    }
}
