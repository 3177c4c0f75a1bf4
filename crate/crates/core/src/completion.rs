//! Ambiguities, S-polynomials and completion.
//!
//! [`q_complete`] only adjoins reduced S-polynomials that stay inside the
//! signature of their source and keep a leading monomial carrying the whole
//! signature; every adjoined element comes with a certificate over the input.
//! [`buchberger`] is the unchecked variant for quivers with unique labels.

use std::collections::BTreeMap;

use crate::consequence::{compose_certificates, CertTerm, Certificate};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::{is_q_order_compatible, MonomialOrdering};
use crate::poly::Polynomial;
use crate::quiver::LabelledQuiver;
use crate::rewrite::{DivisorMap, Reducer, ReductionStep, DEFAULT_STEP_CAP};
use crate::scalar::Coefficient;

/// `a * LM(g) * b = a2 * LM(g2) * b2 = source`; `g`, `g2` index the current basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub g: usize,
    pub g2: usize,
    pub a: Monomial,
    pub b: Monomial,
    pub a2: Monomial,
    pub b2: Monomial,
    pub source: Monomial,
}

impl Ambiguity {
    fn key(&self) -> [(usize, &Monomial, &Monomial); 2] {
        let x = (self.g, &self.a, &self.b);
        let y = (self.g2, &self.a2, &self.b2);
        if x <= y {
            [x, y]
        } else {
            [y, x]
        }
    }
}

fn oriented(g: usize, u: &Monomial, h: usize, w: &Monomial, out: &mut Vec<Ambiguity>) {
    let (lu, lw) = (u.degree(), w.degree());
    // a proper suffix of u equals a proper prefix of w
    for k in 1..lu.min(lw) {
        if u.word()[lu - k..] == w.word()[..k] {
            let b = w.subword(k..lw);
            out.push(Ambiguity {
                g,
                g2: h,
                source: u.concat(&b),
                a: Monomial::one(),
                b,
                a2: u.subword(0..lu - k),
                b2: Monomial::one(),
            });
        }
    }
    // u is a factor of w
    for p in w.division_positions(u) {
        out.push(Ambiguity {
            g,
            g2: h,
            a: w.subword(0..p),
            b: w.subword(p + lu..lw),
            a2: Monomial::one(),
            b2: Monomial::one(),
            source: w.clone(),
        });
    }
}

/// Overlaps and inclusions of two leading monomials, both orientations,
/// deduplicated, without the identical self-inclusion.
pub fn lm_ambiguities(g: usize, u: &Monomial, h: usize, w: &Monomial) -> Vec<Ambiguity> {
    let mut raw = Vec::new();
    oriented(g, u, h, w, &mut raw);
    if g != h {
        oriented(h, w, g, u, &mut raw);
    }
    let mut out: Vec<Ambiguity> = Vec::new();
    for amb in raw {
        let [x, y] = amb.key();
        if x == y || out.iter().any(|o| o.key() == [x, y]) {
            continue;
        }
        out.push(amb);
    }
    out
}

pub fn ambiguities<C: Coefficient, O: MonomialOrdering + ?Sized>(
    gens: &[Polynomial<C>],
    g: usize,
    h: usize,
    ord: &O,
) -> Result<Vec<Ambiguity>> {
    let u = ord.leading_monomial(
        gens.get(g)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))?,
    )?;
    let w = ord.leading_monomial(
        gens.get(h)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{h}")))?,
    )?;
    Ok(lm_ambiguities(g, u, h, w))
}

fn check_monic<C: Coefficient, O: MonomialOrdering + ?Sized>(
    gens: &[Polynomial<C>],
    k: usize,
    ord: &O,
) -> Result<()> {
    let g = gens
        .get(k)
        .ok_or_else(|| Error::UnknownGenerator(format!("#{k}")))?;
    let (c, _) = ord.leading_term(g)?;
    if c.is_one() {
        Ok(())
    } else {
        Err(Error::NotMonic(k))
    }
}

/// `a * g * b - a2 * g2 * b2` and the source.
pub fn s_polynomial<C: Coefficient, O: MonomialOrdering + ?Sized>(
    amb: &Ambiguity,
    gens: &[Polynomial<C>],
    ord: &O,
) -> Result<(Polynomial<C>, Monomial)> {
    check_monic(gens, amb.g, ord)?;
    check_monic(gens, amb.g2, ord)?;
    let mut s = gens[amb.g].sandwich(&C::one(), &amb.a, &amb.b);
    s.add_scaled_sandwich(&-C::one(), &amb.a2, &gens[amb.g2], &amb.b2);
    Ok((s, amb.source.clone()))
}

/// Order in which pending ambiguities are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Selection {
    /// Smallest source degree first, then insertion order.
    #[default]
    DegreeFifo,
    Fifo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionConfig {
    pub max_new_elements: usize,
    pub max_ambiguities: usize,
    /// Ambiguities with larger sources are left pending.
    pub max_source_degree: Option<usize>,
    pub selection: Selection,
    /// Per-reduction step limit.
    pub step_cap: usize,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            max_new_elements: 64,
            max_ambiguities: 5000,
            max_source_degree: None,
            selection: Selection::DegreeFifo,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscardReason {
    SourceIncompatible,
    SignatureNotInSource,
    NotQOrderCompatible,
    ReducesToZero,
}

/// A reduction step that would have left the signature of the source or lost
/// order compatibility; the last valid polynomial was adjoined instead.
#[derive(Clone, Debug, PartialEq)]
pub struct Interruption<C> {
    pub ambiguity: Ambiguity,
    pub step: ReductionStep<C>,
    pub rejected: Polynomial<C>,
    pub reason: DiscardReason,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionResult<C> {
    /// The monic inputs followed by adjoined elements.
    pub basis: Vec<(String, Polynomial<C>)>,
    pub input_count: usize,
    /// A certificate over the original inputs for every basis element.
    pub certificates: BTreeMap<String, Certificate<C>>,
    pub discarded: Vec<(Ambiguity, DiscardReason)>,
    pub pending: Vec<Ambiguity>,
    pub interruptions: Vec<Interruption<C>>,
    /// The ambiguity each adjoined element came from, with the 1-based
    /// number of processed ambiguities at that point.
    pub origins: BTreeMap<String, (usize, Ambiguity)>,
    pub processed: usize,
    /// Checks of `sigma(source) <= sigma(s)` on S-polynomials with compatible source.
    pub lemma_checks: usize,
    pub lemma_violations: usize,
    pub constant_found: bool,
}

impl<C: Coefficient> CompletionResult<C> {
    pub fn polynomials(&self) -> Vec<Polynomial<C>> {
        self.basis.iter().map(|(_, g)| g.clone()).collect()
    }

    pub fn added(&self) -> &[(String, Polynomial<C>)] {
        &self.basis[self.input_count..]
    }
}

/// Runs the completion with quiver checks on every S-polynomial and every
/// reduction step. Every input must be order compatible with the quiver.
pub fn q_complete<C: Coefficient, O: MonomialOrdering + ?Sized>(
    q: &LabelledQuiver,
    inputs: &[(String, Polynomial<C>)],
    ord: &O,
    cfg: &CompletionConfig,
) -> Result<CompletionResult<C>> {
    let mut bad = Vec::new();
    for (id, f) in inputs {
        if f.is_zero() || !is_q_order_compatible(q, ord, f)? {
            bad.push(id.clone());
        }
    }
    if !bad.is_empty() {
        return Err(Error::NotQOrderCompatible(bad));
    }
    Engine::new(Some(q), inputs, ord, cfg)?.run()
}

/// Plain noncommutative Buchberger: S-polynomials are fully reduced and every
/// nonzero normal form is adjoined. Stops once a nonzero constant appears.
pub fn buchberger<C: Coefficient, O: MonomialOrdering + ?Sized>(
    inputs: &[(String, Polynomial<C>)],
    ord: &O,
    cfg: &CompletionConfig,
) -> Result<CompletionResult<C>> {
    Engine::new(None, inputs, ord, cfg)?.run()
}

struct Engine<'a, C, O: ?Sized> {
    quiver: Option<&'a LabelledQuiver>,
    ord: &'a O,
    cfg: &'a CompletionConfig,
    names: Vec<String>,
    polys: Vec<Polynomial<C>>,
    dm: DivisorMap,
    certs: BTreeMap<String, Certificate<C>>,
    queue: BTreeMap<(usize, usize), Ambiguity>,
    seq: usize,
    input_count: usize,
    discarded: Vec<(Ambiguity, DiscardReason)>,
    interruptions: Vec<Interruption<C>>,
    origins: BTreeMap<String, (usize, Ambiguity)>,
    processed: usize,
    lemma_checks: usize,
    lemma_violations: usize,
    constant_found: bool,
}

impl<'a, C: Coefficient, O: MonomialOrdering + ?Sized> Engine<'a, C, O> {
    fn new(
        quiver: Option<&'a LabelledQuiver>,
        inputs: &[(String, Polynomial<C>)],
        ord: &'a O,
        cfg: &'a CompletionConfig,
    ) -> Result<Self> {
        let mut e = Engine {
            quiver,
            ord,
            cfg,
            names: Vec::new(),
            polys: Vec::new(),
            dm: DivisorMap::leading::<C, O>(&[], ord)?,
            certs: BTreeMap::new(),
            queue: BTreeMap::new(),
            seq: 0,
            input_count: inputs.len(),
            discarded: Vec::new(),
            interruptions: Vec::new(),
            origins: BTreeMap::new(),
            processed: 0,
            lemma_checks: 0,
            lemma_violations: 0,
            constant_found: false,
        };
        for (id, f) in inputs {
            if e.names.contains(id) {
                return Err(Error::ConflictingGenerator(id.clone()));
            }
            let (lc, _) = ord.leading_term(f)?;
            let inv = lc.inv();
            let mut cert = Certificate::trivial(id.clone(), f.clone());
            cert.claim = f.scale(&inv);
            cert.terms[0].coeff = inv;
            e.push(id.clone(), cert.claim.clone(), cert)?;
        }
        Ok(e)
    }

    fn fresh_name(&self) -> String {
        (self.polys.len() + 1..)
            .map(|k| format!("s{k}"))
            .find(|n| !self.names.contains(n))
            .expect("unbounded")
    }

    /// Adjoins a monic polynomial with its certificate over the inputs and
    /// queues the ambiguities it creates.
    fn push(&mut self, id: String, g: Polynomial<C>, cert: Certificate<C>) -> Result<()> {
        let k = self.polys.len();
        let lm = self.ord.leading_monomial(&g)?.clone();
        if lm.is_one() {
            self.constant_found = true;
        }
        self.names.push(id.clone());
        self.polys.push(g);
        self.dm.push(vec![lm.clone()]);
        self.certs.insert(id, cert);
        for j in 0..=k {
            let w = self.dm.get(j)[0].clone();
            for amb in lm_ambiguities(j, &w, k, &lm) {
                let primary = match self.cfg.selection {
                    Selection::DegreeFifo => amb.source.degree(),
                    Selection::Fifo => 0,
                };
                self.queue.insert((primary, self.seq), amb);
                self.seq += 1;
            }
        }
        Ok(())
    }

    fn added(&self) -> usize {
        self.polys.len() - self.input_count
    }

    fn run(mut self) -> Result<CompletionResult<C>> {
        let mut deferred = Vec::new();
        while !self.constant_found
            && self.added() < self.cfg.max_new_elements
            && self.processed < self.cfg.max_ambiguities
        {
            let Some((_, amb)) = self.queue.pop_first() else {
                break;
            };
            if self
                .cfg
                .max_source_degree
                .is_some_and(|d| amb.source.degree() > d)
            {
                deferred.push(amb);
                continue;
            }
            self.processed += 1;
            self.process(amb)?;
        }
        let mut pending = deferred;
        pending.extend(self.queue.into_values());
        Ok(CompletionResult {
            basis: self.names.into_iter().zip(self.polys).collect(),
            input_count: self.input_count,
            certificates: self.certs,
            discarded: self.discarded,
            pending,
            interruptions: self.interruptions,
            origins: self.origins,
            processed: self.processed,
            lemma_checks: self.lemma_checks,
            lemma_violations: self.lemma_violations,
            constant_found: self.constant_found,
        })
    }

    /// Checks that the signature stays inside the source's and the polynomial
    /// stays order compatible.
    fn admissible(
        &self,
        q: &LabelledQuiver,
        s: &Polynomial<C>,
        m: &Monomial,
    ) -> Result<Option<DiscardReason>> {
        if !q.sigma(s).is_subset(&q.sigma_monomial(m)) {
            return Ok(Some(DiscardReason::SignatureNotInSource));
        }
        if !is_q_order_compatible(q, self.ord, s)? {
            return Ok(Some(DiscardReason::NotQOrderCompatible));
        }
        Ok(None)
    }

    fn process(&mut self, amb: Ambiguity) -> Result<()> {
        let (mut s, m) = s_polynomial(&amb, &self.polys, self.ord)?;
        if let Some(q) = self.quiver {
            let sm = q.sigma_monomial(&m);
            if sm.is_empty() {
                self.discarded
                    .push((amb, DiscardReason::SourceIncompatible));
                return Ok(());
            }
            self.lemma_checks += 1;
            if !sm.is_subset(&q.sigma(&s)) {
                self.lemma_violations += 1;
            }
        }
        if s.is_zero() {
            self.discarded.push((amb, DiscardReason::ReducesToZero));
            return Ok(());
        }
        if let Some(q) = self.quiver {
            if let Some(reason) = self.admissible(q, &s, &m)? {
                self.discarded.push((amb, reason));
                return Ok(());
            }
        }

        let mut steps = Vec::new();
        {
            let mut reducer =
                Reducer::new(&self.polys, &self.dm, self.ord).with_cap(self.cfg.step_cap);
            if let Some(q) = self.quiver {
                reducer = reducer.with_quiver(q);
            }
            loop {
                if steps.len() == self.cfg.step_cap {
                    return Err(Error::StepLimit(self.cfg.step_cap));
                }
                let Some((next, step)) = reducer.step(&s)? else {
                    break;
                };
                if next.is_zero() {
                    self.discarded.push((amb, DiscardReason::ReducesToZero));
                    return Ok(());
                }
                if let Some(q) = self.quiver {
                    if let Some(reason) = self.admissible(q, &next, &m)? {
                        self.interruptions.push(Interruption {
                            ambiguity: amb.clone(),
                            step,
                            rejected: next,
                            reason,
                        });
                        break;
                    }
                }
                steps.push(step);
                s = next;
            }
        }

        // s = a g b - a2 g2 b2 + sum coeff_i a_i g_i b_i, then made monic
        let (lc, _) = self.ord.leading_term(&s)?;
        let inv = lc.inv();
        let mut terms = vec![
            CertTerm::monomial(
                inv.clone(),
                amb.a.clone(),
                self.names[amb.g].clone(),
                amb.b.clone(),
            ),
            CertTerm::monomial(
                -inv.clone(),
                amb.a2.clone(),
                self.names[amb.g2].clone(),
                amb.b2.clone(),
            ),
        ];
        for st in &steps {
            terms.push(CertTerm::monomial(
                st.coeff.clone() * inv.clone(),
                st.left.clone(),
                self.names[st.generator].clone(),
                st.right.clone(),
            ));
        }
        let s = s.scale(&inv);
        let outer = Certificate {
            claim: s.clone(),
            generators: self
                .names
                .iter()
                .cloned()
                .zip(self.polys.iter().cloned())
                .collect(),
            terms,
            witnesses: BTreeMap::new(),
            mode: Default::default(),
        };
        let cert = compose_certificates(&outer, &self.certs)?;
        let id = self.fresh_name();
        self.origins.insert(id.clone(), (self.processed, amb));
        self.push(id, s, cert)
    }
}
