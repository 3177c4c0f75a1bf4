//! Rewriting with divisor-monomial maps and cofactor-tracked reduction.
//!
//! A rewrite step turns `f` into `f + c * a * g * b` where `a * m * b` is in the
//! support of `f` and `m` is a divisor monomial of `g`. [`Reducer`] always picks
//! the cancelling `c`, records every step, and can check the signature lemma
//! (`sigma(f)` only grows) on each step when a quiver is attached.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrdering;
use crate::poly::Polynomial;
use crate::quiver::LabelledQuiver;
use crate::scalar::Coefficient;

/// Default step limit for [`Reducer`].
pub const DEFAULT_STEP_CAP: usize = 100_000;

/// The order on [`Monomial`]'s own `Ord`: degree, then symbol ids.
#[derive(Clone, Copy, Debug, Default)]
pub struct Canonical;

impl MonomialOrdering for Canonical {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.cmp(b)
    }
}

/// Selected divisor monomials, one nonempty list per generator (by position).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorMap {
    entries: Vec<Vec<Monomial>>,
}

impl DivisorMap {
    /// `DM(g) = {LM(g)}`.
    pub fn leading<C: Coefficient, O: MonomialOrdering + ?Sized>(
        gens: &[Polynomial<C>],
        ord: &O,
    ) -> Result<Self> {
        let entries = gens
            .iter()
            .map(|g| ord.leading_monomial(g).map(|m| vec![m.clone()]))
            .collect::<Result<_>>()?;
        Ok(DivisorMap { entries })
    }

    /// `DM(g) = supp(g)`.
    pub fn full_support<C: Coefficient>(gens: &[Polynomial<C>]) -> Self {
        DivisorMap {
            entries: gens
                .iter()
                .map(|g| g.support().cloned().collect())
                .collect(),
        }
    }

    pub fn from_entries<C: Coefficient>(
        gens: &[Polynomial<C>],
        entries: Vec<Vec<Monomial>>,
    ) -> Result<Self> {
        if entries.len() != gens.len() {
            return Err(Error::DivisorMap(format!(
                "{} entries for {} generators",
                entries.len(),
                gens.len()
            )));
        }
        let mut dm = DivisorMap {
            entries: vec![Vec::new(); gens.len()],
        };
        for (k, e) in entries.into_iter().enumerate() {
            dm.set(gens, k, e)?;
        }
        Ok(dm)
    }

    pub fn set<C: Coefficient>(
        &mut self,
        gens: &[Polynomial<C>],
        generator: usize,
        monomials: Vec<Monomial>,
    ) -> Result<()> {
        let g = gens
            .get(generator)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{generator}")))?;
        if monomials.is_empty() {
            return Err(Error::DivisorMap(format!(
                "generator #{generator} has no divisor monomial"
            )));
        }
        if let Some(bad) = monomials.iter().find(|m| !g.contains(m)) {
            return Err(Error::DivisorMap(format!(
                "{bad:?} is not in the support of generator #{generator}"
            )));
        }
        self.entries[generator] = monomials;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, generator: usize) -> &[Monomial] {
        &self.entries[generator]
    }

    pub fn push(&mut self, monomials: Vec<Monomial>) {
        self.entries.push(monomials);
    }
}

/// True iff every divisor monomial has the signature of its generator.
pub fn dm_compatible<C: Coefficient>(
    q: &LabelledQuiver,
    gens: &[Polynomial<C>],
    dm: &DivisorMap,
) -> Result<bool> {
    if dm.len() != gens.len() {
        return Err(Error::DivisorMap(format!(
            "defined on {} of {} generators",
            dm.len(),
            gens.len()
        )));
    }
    Ok(gens.iter().enumerate().all(|(k, g)| {
        let sg = q.sigma(g);
        dm.get(k).iter().all(|m| q.sigma_monomial(m) == sg)
    }))
}

/// One step `h = f + coeff * left * g * right`, where `left * divisor * right` was a
/// support monomial of `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep<C> {
    pub coeff: C,
    pub left: Monomial,
    pub generator: usize,
    pub right: Monomial,
    pub divisor: Monomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace<C> {
    pub steps: Vec<ReductionStep<C>>,
    pub remainder: Polynomial<C>,
}

/// `f + coeff * a * g * b`, using `(g, m)` at the division `(a, b)`.
pub fn rewrite_step<C: Coefficient>(
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    m: &Monomial,
    (a, b): (&Monomial, &Monomial),
    coeff: &C,
) -> Result<Polynomial<C>> {
    if !g.contains(m) {
        return Err(Error::RewriteStep(format!("{m:?} is not in supp(g)")));
    }
    let target = m.sandwich(a, b);
    if !f.contains(&target) {
        return Err(Error::RewriteStep(format!("{target:?} is not in supp(f)")));
    }
    let mut h = f.clone();
    h.add_scaled_sandwich(coeff, a, g, b);
    Ok(h)
}

/// `sum_i -coeff_i * a_i * g_i * b_i`, which equals `f_in - trace.remainder`.
pub fn trace_expand<C: Coefficient>(
    gens: &[Polynomial<C>],
    trace: &ReductionTrace<C>,
) -> Result<Polynomial<C>> {
    let mut acc = Polynomial::zero();
    for step in &trace.steps {
        let g = gens
            .get(step.generator)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", step.generator)))?;
        acc.add_scaled_sandwich(&-step.coeff.clone(), &step.left, g, &step.right);
    }
    Ok(acc)
}

/// Deterministic reduction: the greatest reducible monomial (under the given
/// order), its rightmost division by any divisor monomial, and among divisions
/// at the same position the first generator in input order.
pub struct Reducer<'a, C, O: ?Sized> {
    gens: &'a [Polynomial<C>],
    dm: &'a DivisorMap,
    order: &'a O,
    cap: usize,
    quiver: Option<&'a LabelledQuiver>,
}

impl<'a, C: Coefficient, O: MonomialOrdering + ?Sized> Reducer<'a, C, O> {
    pub fn new(gens: &'a [Polynomial<C>], dm: &'a DivisorMap, order: &'a O) -> Self {
        assert_eq!(
            gens.len(),
            dm.len(),
            "divisor map must cover every generator"
        );
        Reducer {
            gens,
            dm,
            order,
            cap: DEFAULT_STEP_CAP,
            quiver: None,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Check the signature lemma on every step whose divisor has its generator's signature.
    pub fn with_quiver(mut self, q: &'a LabelledQuiver) -> Self {
        self.quiver = Some(q);
        self
    }

    /// The rightmost division of `t`; ties go to the earlier generator.
    fn find_division(&self, t: &Monomial) -> Option<(usize, &'a Monomial, usize)> {
        let mut best: Option<(usize, &'a Monomial, usize)> = None;
        for k in 0..self.gens.len() {
            for m in self.dm.get(k) {
                if let Some(pos) = t.division_positions(m).last() {
                    if best.is_none_or(|(_, _, p)| pos > p) {
                        best = Some((k, m, pos));
                    }
                }
            }
        }
        best
    }

    pub fn is_reducible(&self, f: &Polynomial<C>) -> bool {
        f.support().any(|t| self.find_division(t).is_some())
    }

    /// One cancelling step, or `None` if `f` is irreducible.
    pub fn step(&self, f: &Polynomial<C>) -> Result<Option<(Polynomial<C>, ReductionStep<C>)>> {
        for t in self.order.sorted_support(f) {
            let Some((k, m, pos)) = self.find_division(t) else {
                continue;
            };
            let g = &self.gens[k];
            let a = t.subword(0..pos);
            let b = t.subword(pos + m.degree()..t.degree());
            let cf = f.coeff(t).expect("support monomial").clone();
            let cg = g.coeff(m).expect("divisor in support").clone();
            let coeff = -(cf / cg);
            let h = rewrite_step(f, g, m, (&a, &b), &coeff)?;
            if let Some(q) = self.quiver {
                check_lemma(q, f, &h, g, m, &a, &b)?;
            }
            let step = ReductionStep {
                coeff,
                left: a,
                generator: k,
                right: b,
                divisor: m.clone(),
            };
            return Ok(Some((h, step)));
        }
        Ok(None)
    }

    /// Rewrites to an irreducible polynomial, or fails after `cap` steps.
    pub fn reduce(&self, f: &Polynomial<C>) -> Result<(Polynomial<C>, ReductionTrace<C>)> {
        let mut current = f.clone();
        let mut steps = Vec::new();
        while let Some((h, step)) = self.step(&current)? {
            if steps.len() == self.cap {
                return Err(Error::StepLimit(self.cap));
            }
            steps.push(step);
            current = h;
        }
        Ok((
            current.clone(),
            ReductionTrace {
                steps,
                remainder: current,
            },
        ))
    }
}

fn check_lemma<C: Coefficient>(
    q: &LabelledQuiver,
    f: &Polynomial<C>,
    h: &Polynomial<C>,
    g: &Polynomial<C>,
    m: &Monomial,
    a: &Monomial,
    b: &Monomial,
) -> Result<()> {
    if q.sigma_monomial(m) != q.sigma(g) {
        return Ok(());
    }
    let sf = q.sigma(f);
    if !sf.is_subset(&q.sigma(h)) {
        return Err(Error::SignatureLemma(format!(
            "sigma(f) = {sf:?} not contained in sigma(h)"
        )));
    }
    if !sf.is_subset(&q.sigma_monomial(&m.sandwich(a, b))) {
        return Err(Error::SignatureLemma(format!(
            "sigma(f) = {sf:?} not contained in sigma(a*m*b)"
        )));
    }
    Ok(())
}
