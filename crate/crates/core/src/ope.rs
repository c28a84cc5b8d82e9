//! Order-preserving embeddings and the weakening actions on variables and
//! terms.

use std::fmt;

use thiserror::Error;

use crate::kernel::{Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// The target binding has a pre-image.
    Keep,
    /// The target binding is fresh.
    Drop,
}

/// An order-preserving embedding of a context of length [`Ope::source_len`]
/// into one of length [`Ope::target_len`].
///
/// Stored as the list of steps from the outermost target binding to the most
/// local one, so `Keep(σ)` and `Drop(σ)` push onto the end.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ope {
    steps: Vec<Step>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot compose embeddings: first targets a context of length {first_target}, second starts from length {second_source}")]
pub struct ShapeMismatch {
    pub first_target: usize,
    pub second_source: usize,
}

impl Ope {
    /// `done`: the empty context embedded into itself.
    pub fn done() -> Ope {
        Ope { steps: Vec::new() }
    }

    pub fn keep(mut sigma: Ope) -> Ope {
        sigma.steps.push(Step::Keep);
        sigma
    }

    pub fn drop(mut sigma: Ope) -> Ope {
        sigma.steps.push(Step::Drop);
        sigma
    }

    /// Identity embedding on a context of length `len`.
    pub fn id(len: usize) -> Ope {
        Ope { steps: vec![Step::Keep; len] }
    }

    /// Embeds the empty context into one of length `len`.
    pub fn from_empty(len: usize) -> Ope {
        Ope { steps: vec![Step::Drop; len] }
    }

    pub fn from_steps(steps: Vec<Step>) -> Ope {
        Ope { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn source_len(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Keep).count()
    }

    pub fn target_len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_identity(&self) -> bool {
        self.steps.iter().all(|s| *s == Step::Keep)
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &Ope) -> Result<Ope, ShapeMismatch> {
        if self.target_len() != next.source_len() {
            return Err(ShapeMismatch {
                first_target: self.target_len(),
                second_source: next.source_len(),
            });
        }
        let mut mine = self.steps.iter().rev();
        let mut steps: Vec<Step> = next
            .steps
            .iter()
            .rev()
            .map(|s| match s {
                Step::Drop => Step::Drop,
                Step::Keep => *mine.next().expect("lengths checked above"),
            })
            .collect();
        steps.reverse();
        Ok(Ope { steps })
    }
}

/// Composition of `sigma : Γ ≤ Δ` with `tau : Δ ≤ Θ`.
pub fn ocomp(sigma: &Ope, tau: &Ope) -> Result<Ope, ShapeMismatch> {
    sigma.then(tau)
}

impl fmt::Debug for Ope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Written as nested constructors, most local step outermost.
        for s in self.steps.iter().rev() {
            write!(f, "{} ", if *s == Step::Keep { "Keep" } else { "Drop" })?;
        }
        f.write_str("Done")
    }
}

/// Image of a variable along an embedding.
///
/// Panics if `v` is out of range for the embedding's source.
pub fn wk_var(sigma: &Ope, v: Var) -> Var {
    let mut remaining = v.0;
    for (out, step) in sigma.steps.iter().rev().enumerate() {
        if *step == Step::Keep {
            if remaining == 0 {
                return Var(out);
            }
            remaining -= 1;
        }
    }
    panic!("variable {} is out of scope for {:?}", v.0, sigma);
}

/// Transports a term along an embedding, wrapping it in `Keep` under binders.
pub fn wk_term(sigma: &Ope, t: &Term) -> Term {
    if sigma.is_identity() {
        return t.clone();
    }
    // Variables below `depth` are bound inside `t` and map to themselves.
    fn go(sigma: &Ope, depth: usize, t: &Term) -> Term {
        stacker::maybe_grow(32 * 1024, 1024 * 1024, || {
            let rec = |u: &Term| Box::new(go(sigma, depth, u));
            match t {
                Term::Var(v) if v.0 < depth => Term::Var(*v),
                Term::Var(v) => Term::Var(Var(wk_var(sigma, Var(v.0 - depth)).0 + depth)),
                Term::Lam(d, b) => Term::Lam(d.clone(), Box::new(go(sigma, depth + 1, b))),
                Term::App(a, b) => Term::App(rec(a), rec(b)),
                Term::Quote(a) => Term::Quote(rec(a)),
                Term::Splice(a) => Term::Splice(rec(a)),
                Term::Succ(a) => Term::Succ(rec(a)),
                Term::Fst(a) => Term::Fst(rec(a)),
                Term::Snd(a) => Term::Snd(rec(a)),
                Term::Iter(a, b, c) => Term::Iter(rec(a), rec(b), rec(c)),
                Term::If(a, b, c) => Term::If(rec(a), rec(b), rec(c)),
                Term::Pair(a, b) => Term::Pair(rec(a), rec(b)),
                Term::Par(a, b) => Term::Par(rec(a), rec(b)),
                Term::Seq(a, b) => Term::Seq(rec(a), rec(b)),
                leaf => leaf.clone(),
            }
        })
    }
    go(sigma, 0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{numeral, Phase, Stage, Ty};

    #[test]
    fn identity_shapes() {
        assert_eq!(Ope::id(0), Ope::done());
        assert_eq!(Ope::id(1), Ope::keep(Ope::done()));
    }

    #[test]
    fn wk_var_clauses() {
        let sigma = Ope::id(2);
        assert_eq!(wk_var(&Ope::keep(sigma.clone()), Var::HERE), Var::HERE);
        assert_eq!(wk_var(&Ope::drop(Ope::id(1)), Var::HERE), Var::HERE.there());
        // Keep (Drop oid) sends There Here to There (There Here).
        let k = Ope::keep(Ope::drop(Ope::id(1)));
        assert_eq!(wk_var(&k, Var::HERE.there()), Var::HERE.there().there());
    }

    #[test]
    fn composition_example() {
        let first = Ope::drop(Ope::done());
        let second = Ope::keep(Ope::done());
        assert_eq!(ocomp(&first, &second).unwrap(), Ope::drop(Ope::done()));
    }

    #[test]
    fn composition_shape_mismatch() {
        let err = ocomp(&Ope::id(2), &Ope::id(3)).unwrap_err();
        assert_eq!(err, ShapeMismatch { first_target: 2, second_source: 3 });
    }

    #[test]
    fn wk_term_examples() {
        let up = Ope::drop(Ope::id(0));
        let id = Term::lam(Ty::base(Phase::Src, Stage::Dyn), Term::var(0));
        assert_eq!(wk_term(&up, &id), id);
        assert_eq!(wk_term(&Ope::drop(Ope::id(1)), &Term::var(0)), Term::var(1));
        for n in 0..=10 {
            for sigma in [Ope::drop(Ope::done()), Ope::keep(Ope::drop(Ope::id(2)))] {
                assert_eq!(wk_term(&sigma, &numeral(n)), numeral(n));
            }
        }
    }

    #[test]
    fn wk_term_under_binder_keeps_bound_variable() {
        // \y. x y   with x free, weakened by one fresh outer binding.
        let t = Term::lam(Ty::bool(), Term::app(Term::var(1), Term::var(0)));
        let w = wk_term(&Ope::drop(Ope::id(1)), &t);
        assert_eq!(w, Term::lam(Ty::bool(), Term::app(Term::var(2), Term::var(0))));
    }
}
