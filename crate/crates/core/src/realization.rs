//! Representations of a labelled quiver by matrices and evaluation of
//! polynomials along paths.
//!
//! A polynomial `f` realizes at `(v, w)` in its signature as the sum over its
//! support of `c_m` times the product of the edge matrices along a path from
//! `v` to `w` labelled `m`. That is only well defined when equally labelled
//! paths with equal endpoints give equal products, which [`check_consistency`]
//! tries to establish.

use std::collections::HashMap;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::quiver::{LabelledQuiver, Vertex};
use crate::scalar::Coefficient;

/// Default number of paths explored by [`check_consistency`] before giving up.
pub const DEFAULT_PATH_BUDGET: usize = 200_000;
pub const DEFAULT_MAX_PATH_LEN: usize = 6;

/// Dimensions per vertex and one matrix per edge (indexed like `q.edges()`),
/// of shape `dims[tgt] x dims[src]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<C> {
    dims: Vec<usize>,
    mats: Vec<Matrix<C>>,
}

impl<C: Coefficient> Representation<C> {
    pub fn new(q: &LabelledQuiver, dims: Vec<usize>, mats: Vec<Matrix<C>>) -> Result<Self> {
        if dims.len() != q.vertex_count() {
            return Err(Error::Representation(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if let Some(v) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Representation(format!(
                "vertex `{}` has dimension 0",
                q.vertex_name(Vertex(v))
            )));
        }
        if mats.len() != q.edges().len() {
            return Err(Error::Representation(format!(
                "{} matrices for {} edges",
                mats.len(),
                q.edges().len()
            )));
        }
        for (k, (e, m)) in q.edges().iter().zip(&mats).enumerate() {
            let want = (dims[e.tgt.0], dims[e.src.0]);
            if m.shape() != want {
                return Err(Error::Representation(format!(
                    "edge {k} ({} -> {}, {}) has shape {:?}, expected {:?}",
                    q.vertex_name(e.src),
                    q.vertex_name(e.tgt),
                    q.alphabet().name(e.label),
                    m.shape(),
                    want
                )));
            }
        }
        Ok(Representation { dims, mats })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrices(&self) -> &[Matrix<C>] {
        &self.mats
    }

    /// Product along edge indices, first edge first.
    pub fn path_product(&self, q: &LabelledQuiver, path: &[usize]) -> Option<Matrix<C>> {
        let first = q.edges().get(*path.first()?)?;
        let mut acc = Matrix::identity(self.dims[first.src.0]);
        for &k in path {
            acc = self.mats.get(k)? * &acc;
        }
        Some(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    /// Every vertex has distinct outgoing labels, or every vertex has distinct
    /// incoming labels, so equally labelled paths coincide.
    BySufficientCondition,
    /// All equally labelled paths up to this length agree.
    UpToLength(usize),
    /// Two paths (edge indices, first edge first) with equal source, target and
    /// label but different products.
    Inconsistent {
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// The path budget ran out.
    Unknown,
}

fn distinct_labels(q: &LabelledQuiver, outgoing: bool) -> bool {
    let mut seen = std::collections::HashSet::new();
    q.edges().iter().all(|e| {
        let v = if outgoing { e.src } else { e.tgt };
        seen.insert((v, e.label))
    })
}

pub fn has_sufficient_condition(q: &LabelledQuiver) -> bool {
    distinct_labels(q, true) || distinct_labels(q, false)
}

pub fn check_consistency<C: Coefficient>(
    q: &LabelledQuiver,
    rep: &Representation<C>,
    max_len: usize,
) -> ConsistencyVerdict {
    check_consistency_with_budget(q, rep, max_len, DEFAULT_PATH_BUDGET)
}

/// Compares every pair of equally labelled paths up to `max_len` edges, keeping
/// one representative per (source, label, target).
pub fn check_consistency_with_budget<C: Coefficient>(
    q: &LabelledQuiver,
    rep: &Representation<C>,
    max_len: usize,
    budget: usize,
) -> ConsistencyVerdict {
    if has_sufficient_condition(q) {
        return ConsistencyVerdict::BySufficientCondition;
    }
    type Key = (usize, Vec<Symbol>, usize);
    let mut seen: HashMap<Key, (Vec<usize>, Matrix<C>)> = HashMap::new();
    let mut explored = 0usize;
    // (start, labels first edge first, current vertex, path, product)
    let mut frontier: Vec<_> = (0..q.vertex_count())
        .map(|v| (v, Vec::new(), v, Vec::new(), Matrix::identity(rep.dims[v])))
        .collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (start, labels, at, path, prod) in frontier {
            for (k, e) in q.edges().iter().enumerate() {
                if e.src.0 != at {
                    continue;
                }
                explored += 1;
                if explored > budget {
                    return ConsistencyVerdict::Unknown;
                }
                let mut l = labels.clone();
                l.push(e.label);
                let mut p = path.clone();
                p.push(k);
                let m = &rep.mats[k] * &prod;
                let key = (start, l.clone(), e.tgt.0);
                match seen.get(&key) {
                    Some((other, pm)) if *pm != m => {
                        return ConsistencyVerdict::Inconsistent {
                            first: other.clone(),
                            second: p,
                        }
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(key, (p.clone(), m.clone()));
                    }
                }
                next.push((start, l, e.tgt.0, p, m));
            }
        }
        frontier = next;
    }
    ConsistencyVerdict::UpToLength(max_len)
}

/// Evaluates polynomials on a representation that passed a consistency check.
pub struct Realizer<'a, C> {
    q: &'a LabelledQuiver,
    rep: &'a Representation<C>,
    verdict: ConsistencyVerdict,
}

impl<'a, C: Coefficient> Realizer<'a, C> {
    /// Refuses inconsistent representations, and representations whose
    /// consistency is unknown unless `assume_consistent` is set.
    pub fn new(
        q: &'a LabelledQuiver,
        rep: &'a Representation<C>,
        max_len: usize,
        assume_consistent: bool,
    ) -> Result<Self> {
        let verdict = check_consistency(q, rep, max_len);
        match verdict {
            ConsistencyVerdict::Inconsistent { .. } => Err(Error::InconsistentRepresentation),
            ConsistencyVerdict::Unknown if !assume_consistent => Err(Error::UnknownConsistency),
            _ => Ok(Realizer { q, rep, verdict }),
        }
    }

    pub fn verdict(&self) -> &ConsistencyVerdict {
        &self.verdict
    }

    /// Product along some path from `v` to `w` labelled `m`, found left to
    /// right over the reversed word.
    pub fn monomial(&self, m: &Monomial, v: Vertex, w: Vertex) -> Option<Matrix<C>> {
        let n = self.q.vertex_count();
        let mut reach: Vec<Option<Matrix<C>>> = vec![None; n];
        reach[v.0] = Some(Matrix::identity(self.rep.dims[v.0]));
        for &x in m.word().iter().rev() {
            let mut next: Vec<Option<Matrix<C>>> = vec![None; n];
            for (k, e) in self.q.edges().iter().enumerate() {
                if e.label != x || next[e.tgt.0].is_some() {
                    continue;
                }
                if let Some(p) = &reach[e.src.0] {
                    next[e.tgt.0] = Some(&self.rep.mats[k] * p);
                }
            }
            reach = next;
        }
        reach[w.0].take()
    }

    /// The realization of `f` from `v` to `w`, a `dims[w] x dims[v]` matrix.
    pub fn realize(&self, f: &Polynomial<C>, (v, w): (Vertex, Vertex)) -> Result<Matrix<C>> {
        if !self.q.sigma(f).contains(v, w) {
            return Err(Error::PairNotInSignature(v.0, w.0));
        }
        let mut acc = Matrix::zeros(self.rep.dims[w.0], self.rep.dims[v.0]);
        for (m, c) in f.terms() {
            let p = self
                .monomial(m, v, w)
                .expect("a path exists for every pair in the signature");
            acc.add_scaled(c, &p);
        }
        Ok(acc)
    }

    /// True iff every realization of `f` is zero.
    pub fn verify_zero(&self, f: &Polynomial<C>) -> Result<bool> {
        for pair in self.q.sigma(f).pairs() {
            if !self.realize(f, pair)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The first pair whose realization is nonzero.
    pub fn first_nonzero(&self, f: &Polynomial<C>) -> Result<Option<(Vertex, Vertex)>> {
        for pair in self.q.sigma(f).pairs() {
            if !self.realize(f, pair)?.is_zero() {
                return Ok(Some(pair));
            }
        }
        Ok(None)
    }
}

pub fn realize<C: Coefficient>(
    q: &LabelledQuiver,
    rep: &Representation<C>,
    f: &Polynomial<C>,
    at: (Vertex, Vertex),
) -> Result<Matrix<C>> {
    Realizer::new(q, rep, DEFAULT_MAX_PATH_LEN, false)?.realize(f, at)
}

pub fn verify_zero<C: Coefficient>(
    q: &LabelledQuiver,
    rep: &Representation<C>,
    f: &Polynomial<C>,
) -> Result<bool> {
    Realizer::new(q, rep, DEFAULT_MAX_PATH_LEN, false)?.verify_zero(f)
}
