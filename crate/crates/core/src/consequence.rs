//! Certificates that a polynomial is a consequence of generators along a quiver.
//!
//! A certificate lists terms `coeff * left * g * right` summing to the claim.
//! [`verify_definition`] checks the vertex-pair condition term by term;
//! [`verify_criterion`] checks the cheaper witness-monomial condition and only
//! accepts monomial cofactors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrdering;
use crate::poly::Polynomial;
use crate::quiver::{LabelledQuiver, Signature, Vertex};
use crate::rewrite::ReductionTrace;
use crate::scalar::Coefficient;

/// Which checker a certificate is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CertMode {
    #[default]
    Definition,
    Criterion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertTerm<C> {
    pub coeff: C,
    pub left: Polynomial<C>,
    pub generator: String,
    pub right: Polynomial<C>,
}

impl<C: Coefficient> CertTerm<C> {
    pub fn monomial(
        coeff: C,
        left: Monomial,
        generator: impl Into<String>,
        right: Monomial,
    ) -> Self {
        CertTerm {
            coeff,
            left: Polynomial::monomial(left),
            generator: generator.into(),
            right: Polynomial::monomial(right),
        }
    }

    /// `(scalar, left, right)` when both cofactors are scalar multiples of monomials.
    pub fn as_expanded(&self) -> Option<(C, &Monomial, &Monomial)> {
        let (cl, l) = self.left.as_term()?;
        let (cr, r) = self.right.as_term()?;
        Some((self.coeff.clone() * cl.clone() * cr.clone(), l, r))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<C> {
    pub claim: Polynomial<C>,
    pub generators: Vec<(String, Polynomial<C>)>,
    pub terms: Vec<CertTerm<C>>,
    pub witnesses: BTreeMap<String, Monomial>,
    pub mode: CertMode,
}

impl<C: Coefficient> Certificate<C> {
    /// `g = 1 * 1 * g * 1`.
    pub fn trivial(id: impl Into<String>, g: Polynomial<C>) -> Self {
        let id = id.into();
        Certificate {
            claim: g.clone(),
            generators: vec![(id.clone(), g)],
            terms: vec![CertTerm::monomial(
                C::one(),
                Monomial::one(),
                id,
                Monomial::one(),
            )],
            witnesses: BTreeMap::new(),
            mode: CertMode::Definition,
        }
    }

    pub fn generator(&self, id: &str) -> Option<&Polynomial<C>> {
        self.generators
            .iter()
            .find(|(n, _)| n == id)
            .map(|(_, g)| g)
    }

    fn generator_or_err(&self, id: &str) -> Result<&Polynomial<C>> {
        self.generator(id)
            .ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    /// `sum coeff * left * g * right`.
    pub fn expansion(&self) -> Result<Polynomial<C>> {
        let mut acc = Polynomial::zero();
        for t in &self.terms {
            let g = self.generator_or_err(&t.generator)?;
            let p = &(&t.left * g) * &t.right;
            acc = &acc + &p.scale(&t.coeff);
        }
        Ok(acc)
    }

    pub fn is_expanded(&self) -> bool {
        self.terms.iter().all(|t| t.as_expanded().is_some())
    }

    /// Generator ids in first-use order.
    pub fn used_generators(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for t in &self.terms {
            if !seen.contains(&t.generator.as_str()) {
                seen.push(&t.generator);
            }
        }
        seen
    }

    /// Merges terms sharing a generator and right cofactor by summing their
    /// left cofactors; drops terms that cancel.
    pub fn grouped(&self) -> Self {
        let mut keys: Vec<(String, Polynomial<C>)> = Vec::new();
        let mut lefts: Vec<Polynomial<C>> = Vec::new();
        for t in &self.terms {
            let key = (t.generator.clone(), t.right.clone());
            let left = t.left.scale(&t.coeff);
            match keys.iter().position(|k| *k == key) {
                Some(k) => lefts[k] = &lefts[k] + &left,
                None => {
                    keys.push(key);
                    lefts.push(left);
                }
            }
        }
        let terms = keys
            .into_iter()
            .zip(lefts)
            .filter(|(_, l)| !l.is_zero())
            .map(|((generator, right), left)| CertTerm {
                coeff: C::one(),
                left,
                generator,
                right,
            })
            .collect();
        Certificate {
            terms,
            mode: CertMode::Definition,
            ..self.clone()
        }
    }

    /// Multiplies out polynomial cofactors into monomial terms.
    pub fn expanded(&self) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            for (ml, cl) in t.left.terms() {
                for (mr, cr) in t.right.terms() {
                    let c = t.coeff.clone() * cl.clone() * cr.clone();
                    terms.push(CertTerm::monomial(
                        c,
                        ml.clone(),
                        t.generator.clone(),
                        mr.clone(),
                    ));
                }
            }
        }
        Certificate {
            terms,
            ..self.clone()
        }
    }

    /// Picks a witness for every used generator that lacks one.
    pub fn attach_witnesses<O: MonomialOrdering + ?Sized>(
        &mut self,
        q: &LabelledQuiver,
        ord: Option<&O>,
    ) {
        let used: Vec<String> = self
            .used_generators()
            .into_iter()
            .map(String::from)
            .collect();
        for id in used {
            if self.witnesses.contains_key(&id) {
                continue;
            }
            if let Some(m) = self.generator(&id).and_then(|g| choose_witness(q, ord, g)) {
                self.witnesses.insert(id, m);
            }
        }
    }
}

/// A support monomial with the signature of `g`, preferring the leading one.
pub fn choose_witness<C: Coefficient, O: MonomialOrdering + ?Sized>(
    q: &LabelledQuiver,
    ord: Option<&O>,
    g: &Polynomial<C>,
) -> Option<Monomial> {
    let sg = q.sigma(g);
    if let Some(lm) = ord.and_then(|o| o.leading_monomial(g).ok()) {
        if q.sigma_monomial(lm) == sg {
            return Some(lm.clone());
        }
    }
    g.support().find(|m| q.sigma_monomial(m) == sg).cloned()
}

/// Builds `claim = sum -coeff_i * a_i * g_i * b_i` from a trace ending in zero.
pub fn certificate_from_trace<C: Coefficient>(
    claim: &Polynomial<C>,
    trace: &ReductionTrace<C>,
    gens: &[(String, Polynomial<C>)],
) -> Result<Certificate<C>> {
    if !trace.remainder.is_zero() {
        return Err(Error::NonzeroRemainder);
    }
    let mut terms = Vec::with_capacity(trace.steps.len());
    for s in &trace.steps {
        let (id, _) = gens
            .get(s.generator)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", s.generator)))?;
        terms.push(CertTerm::monomial(
            -s.coeff.clone(),
            s.left.clone(),
            id.clone(),
            s.right.clone(),
        ));
    }
    Ok(Certificate {
        claim: claim.clone(),
        generators: gens.to_vec(),
        terms,
        witnesses: BTreeMap::new(),
        mode: CertMode::Definition,
    })
}

/// Why a certificate was rejected. Term indices are positions in `terms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    UnknownGenerator(String),
    SumMismatch,
    ClaimIncompatible,
    /// No intermediate vertices route `pair` through the term.
    PairNotCovered {
        term: usize,
        pair: (Vertex, Vertex),
    },
    MissingWitness(String),
    WitnessNotInSupport(String),
    WitnessSignature(String),
    /// `sigma(claim)` is not inside `sigma(a * m_g * b)`; `pair` is a missing element.
    WitnessNotCovering {
        term: usize,
        pair: (Vertex, Vertex),
    },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::UnknownGenerator(g) => write!(f, "term uses unknown generator `{g}`"),
            Rejection::SumMismatch => write!(f, "terms do not sum to the claim"),
            Rejection::ClaimIncompatible => write!(f, "claim is not compatible with the quiver"),
            Rejection::PairNotCovered { term, pair } => write!(
                f,
                "term {term} admits no intermediate vertices for pair ({}, {})",
                pair.0 .0, pair.1 .0
            ),
            Rejection::MissingWitness(g) => write!(f, "no witness monomial for generator `{g}`"),
            Rejection::WitnessNotInSupport(g) => {
                write!(f, "witness for `{g}` is not in its support")
            }
            Rejection::WitnessSignature(g) => {
                write!(
                    f,
                    "witness for `{g}` does not have the generator's signature"
                )
            }
            Rejection::WitnessNotCovering { term, pair } => write!(
                f,
                "term {term}: pair ({}, {}) of the claim's signature is missing from sigma(a*m*b)",
                pair.0 .0, pair.1 .0
            ),
        }
    }
}

/// Intermediate vertices for one term and one pair `(u, v)` of the claim's
/// signature: `(u, ui)` in `sigma(right)`, `(ui, vi)` in `sigma(g)`, `(vi, v)` in `sigma(left)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureWitness {
    pub term: usize,
    pub pair: (Vertex, Vertex),
    pub via: (Vertex, Vertex),
}

fn check_sum<C: Coefficient>(cert: &Certificate<C>) -> Result<(), Rejection> {
    for t in &cert.terms {
        if cert.generator(&t.generator).is_none() {
            return Err(Rejection::UnknownGenerator(t.generator.clone()));
        }
    }
    match cert.expansion() {
        Ok(e) if e == cert.claim => Ok(()),
        _ => Err(Rejection::SumMismatch),
    }
}

fn find_via(
    sa: &Signature,
    sg: &Signature,
    sb: &Signature,
    u: Vertex,
    v: Vertex,
) -> Option<(Vertex, Vertex)> {
    let n = sa.vertex_count();
    (0..n)
        .map(Vertex)
        .filter(|&ui| sb.contains(u, ui))
        .find_map(|ui| {
            (0..n)
                .map(Vertex)
                .find(|&vi| sg.contains(ui, vi) && sa.contains(vi, v))
                .map(|vi| (ui, vi))
        })
}

/// Checks the defining condition for every term and every pair of `sigma(claim)`.
/// Cofactor signatures are support intersections, so grouped certificates work.
pub fn verify_definition<C: Coefficient>(
    q: &LabelledQuiver,
    cert: &Certificate<C>,
) -> Result<Vec<SignatureWitness>, Rejection> {
    check_sum(cert)?;
    let sf = q.sigma(&cert.claim);
    if sf.is_empty() {
        return Err(Rejection::ClaimIncompatible);
    }
    let mut out = Vec::new();
    for (k, t) in cert.terms.iter().enumerate() {
        let g = cert.generator(&t.generator).expect("checked above");
        let (sa, sg, sb) = (q.sigma(&t.left), q.sigma(g), q.sigma(&t.right));
        for (u, v) in sf.pairs() {
            let via = find_via(&sa, &sg, &sb, u, v).ok_or(Rejection::PairNotCovered {
                term: k,
                pair: (u, v),
            })?;
            out.push(SignatureWitness {
                term: k,
                pair: (u, v),
                via,
            });
        }
    }
    Ok(out)
}

/// Checks the witness-monomial criterion. Returns `sigma(a_i * m_gi * b_i)`
/// per term on success. Polynomial cofactors are an error, not a rejection.
pub fn verify_criterion<C: Coefficient>(
    q: &LabelledQuiver,
    cert: &Certificate<C>,
) -> Result<Result<Vec<Signature>, Rejection>> {
    let mut expanded = Vec::with_capacity(cert.terms.len());
    for (k, t) in cert.terms.iter().enumerate() {
        expanded.push(t.as_expanded().ok_or(Error::NotExpanded(k))?);
    }
    Ok(criterion_inner(q, cert, &expanded))
}

fn criterion_inner<C: Coefficient>(
    q: &LabelledQuiver,
    cert: &Certificate<C>,
    expanded: &[(C, &Monomial, &Monomial)],
) -> Result<Vec<Signature>, Rejection> {
    check_sum(cert)?;
    let sf = q.sigma(&cert.claim);
    if sf.is_empty() {
        return Err(Rejection::ClaimIncompatible);
    }
    for id in cert.used_generators() {
        let g = cert.generator(id).expect("checked above");
        let m = cert
            .witnesses
            .get(id)
            .ok_or_else(|| Rejection::MissingWitness(id.to_string()))?;
        if !g.contains(m) {
            return Err(Rejection::WitnessNotInSupport(id.to_string()));
        }
        if q.sigma_monomial(m) != q.sigma(g) {
            return Err(Rejection::WitnessSignature(id.to_string()));
        }
    }
    let mut sigs = Vec::with_capacity(expanded.len());
    for (k, ((_, a, b), t)) in expanded.iter().zip(&cert.terms).enumerate() {
        let m = &cert.witnesses[&t.generator];
        let s = q.sigma_monomial(&m.sandwich(a, b));
        if let Some(pair) = sf.pairs().find(|&(u, v)| !s.contains(u, v)) {
            return Err(Rejection::WitnessNotCovering { term: k, pair });
        }
        sigs.push(s);
    }
    Ok(sigs)
}

/// Substitutes each outer generator by its inner certificate:
/// `(c, A, g, B)` with `g = sum (c', A', f, B')` gives terms `(c c', A A', f, B' B)`.
pub fn compose_certificates<C: Coefficient>(
    outer: &Certificate<C>,
    inner: &BTreeMap<String, Certificate<C>>,
) -> Result<Certificate<C>> {
    let mut generators: Vec<(String, Polynomial<C>)> = Vec::new();
    let mut witnesses = BTreeMap::new();
    let mut add_gen = |id: &str, p: &Polynomial<C>| -> Result<()> {
        match generators.iter().find(|(n, _)| n == id) {
            Some((_, q)) if q != p => Err(Error::ConflictingGenerator(id.to_string())),
            Some(_) => Ok(()),
            None => {
                generators.push((id.to_string(), p.clone()));
                Ok(())
            }
        }
    };
    let mut terms = Vec::new();
    for t in &outer.terms {
        let g = outer.generator_or_err(&t.generator)?;
        let ic = inner
            .get(&t.generator)
            .ok_or_else(|| Error::MissingCertificate(t.generator.clone()))?;
        if ic.claim != *g {
            return Err(Error::ConflictingGenerator(t.generator.clone()));
        }
        for it in &ic.terms {
            let f = ic.generator_or_err(&it.generator)?;
            add_gen(&it.generator, f)?;
            if let Some(w) = ic.witnesses.get(&it.generator) {
                witnesses
                    .entry(it.generator.clone())
                    .or_insert_with(|| w.clone());
            }
            terms.push(CertTerm {
                coeff: t.coeff.clone() * it.coeff.clone(),
                left: &t.left * &it.left,
                generator: it.generator.clone(),
                right: &it.right * &t.right,
            });
        }
    }
    Ok(Certificate {
        claim: outer.claim.clone(),
        generators,
        terms,
        witnesses,
        mode: outer.mode,
    })
}
