//! Well-scoped de Bruijn terms of the two-level language.
//!
//! Terms do not carry their phase, stage, type, or context. Those indices are
//! recovered by [`validate`](super::validate), which needs only the domain
//! annotation on `Lam` and the input arity on `Mix` to stay syntax-directed.

use super::ty::{Phase, Stage, Ty, Var};
use crate::ope::{wk_term, Ope};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    App(Box<Term>, Box<Term>),
    /// Abstraction annotated with its domain type.
    Lam(Ty, Box<Term>),
    Quote(Box<Term>),
    Splice(Box<Term>),
    Zero,
    Succ(Box<Term>),
    /// `Iter(n, z, s)` applies `s` to `z`, `n` times.
    Iter(Box<Term>, Box<Term>, Box<Term>),
    True,
    False,
    If(Box<Term>, Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    Nand,
    Par(Box<Term>, Box<Term>),
    Seq(Box<Term>, Box<Term>),
    /// Rewiring: output `j` is connected to input `wires[j]`.
    Mix { inputs: usize, wires: Vec<usize> },
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(Var(index))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// `f a1 a2 ...`
    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn lam(dom: Ty, body: Term) -> Term {
        Term::Lam(dom, Box::new(body))
    }

    pub fn quote(t: Term) -> Term {
        Term::Quote(Box::new(t))
    }

    pub fn splice(t: Term) -> Term {
        Term::Splice(Box::new(t))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn iter(n: Term, z: Term, s: Term) -> Term {
        Term::Iter(Box::new(n), Box::new(z), Box::new(s))
    }

    pub fn if_(c: Term, t: Term, e: Term) -> Term {
        Term::If(Box::new(c), Box::new(t), Box::new(e))
    }

    pub fn pair(l: Term, r: Term) -> Term {
        Term::Pair(Box::new(l), Box::new(r))
    }

    pub fn fst(t: Term) -> Term {
        Term::Fst(Box::new(t))
    }

    pub fn snd(t: Term) -> Term {
        Term::Snd(Box::new(t))
    }

    pub fn par(l: Term, r: Term) -> Term {
        Term::Par(Box::new(l), Box::new(r))
    }

    pub fn seq(l: Term, r: Term) -> Term {
        Term::Seq(Box::new(l), Box::new(r))
    }

    pub fn mix(inputs: usize, wires: impl Into<Vec<usize>>) -> Term {
        Term::Mix { inputs, wires: wires.into() }
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Zero | Term::True | Term::False | Term::Nand => vec![],
            Term::Mix { .. } => vec![],
            Term::Lam(_, t)
            | Term::Quote(t)
            | Term::Splice(t)
            | Term::Succ(t)
            | Term::Fst(t)
            | Term::Snd(t) => vec![t],
            Term::App(a, b) | Term::Pair(a, b) | Term::Par(a, b) | Term::Seq(a, b) => vec![a, b],
            Term::Iter(a, b, c) | Term::If(a, b, c) => vec![a, b, c],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            count += 1;
            stack.extend(t.children());
        }
        count
    }

    /// Constructors that only exist in the source phase.
    pub fn is_source_only(&self) -> bool {
        matches!(
            self,
            Term::Quote(_)
                | Term::Splice(_)
                | Term::Pair(..)
                | Term::Fst(_)
                | Term::Snd(_)
                | Term::True
                | Term::False
                | Term::If(..)
        )
    }

    /// Counts nodes satisfying `pred`.
    pub fn count_nodes(&self, pred: impl Fn(&Term) -> bool) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if pred(t) {
                count += 1;
            }
            stack.extend(t.children());
        }
        count
    }

    /// Number of `Succ` nodes around a trailing `Zero`, if this is a numeral.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }
}

// Deep `Succ`/`App` spines would otherwise overflow the stack on drop.
impl Drop for Term {
    fn drop(&mut self) {
        let mut stack: Vec<Term> = Vec::new();
        take_children(self, &mut stack);
        while let Some(mut t) = stack.pop() {
            take_children(&mut t, &mut stack);
        }
    }
}

fn take_children(t: &mut Term, out: &mut Vec<Term>) {
    let mut take = |b: &mut Box<Term>| out.push(std::mem::replace(&mut **b, Term::Zero));
    match t {
        Term::Lam(_, a)
        | Term::Quote(a)
        | Term::Splice(a)
        | Term::Succ(a)
        | Term::Fst(a)
        | Term::Snd(a) => take(a),
        Term::App(a, b) | Term::Pair(a, b) | Term::Par(a, b) | Term::Seq(a, b) => {
            take(a);
            take(b);
        }
        Term::Iter(a, b, c) | Term::If(a, b, c) => {
            take(a);
            take(b);
            take(c);
        }
        _ => {}
    }
}

/// `n` nested `Succ` around `Zero`. The same tree serves every phase and stage.
pub fn numeral(n: u64) -> Term {
    (0..n).fold(Term::Zero, |t, _| Term::succ(t))
}

/// Function composition `\x. g (f x)` for `g`, `f` living in a context of
/// length `ctx_len`; `dom` is the domain of `f`.
pub fn compose(ctx_len: usize, dom: Ty, g: &Term, f: &Term) -> Term {
    let up = Ope::drop(Ope::id(ctx_len));
    Term::lam(
        dom,
        Term::app(wk_term(&up, g), Term::app(wk_term(&up, f), Term::Var(Var::HERE))),
    )
}

/// Replaces the phase of every type annotation in `t`. Used to view a purely
/// dynamic source term as a staged one.
pub fn reindex_phase(t: &Term, phase: Phase) -> Term {
    fn ty(t: &Ty, phase: Phase) -> Ty {
        use super::ty::TyKind::*;
        let kind = match &t.kind {
            Arrow(a, b) => Arrow(Box::new(ty(a, phase)), Box::new(ty(b, phase))),
            Lift(a) => Lift(Box::new(ty(a, phase))),
            Prod(a, b) => Prod(Box::new(ty(a, phase)), Box::new(ty(b, phase))),
            k => k.clone(),
        };
        let phase = if t.stage == Stage::Sta { t.phase } else { phase };
        Ty { phase, stage: t.stage, kind }
    }
    map_types(t, &|d| ty(d, phase))
}

fn map_types(t: &Term, f: &dyn Fn(&Ty) -> Ty) -> Term {
    stacker::maybe_grow(32 * 1024, 1024 * 1024, || {
        let go = |u: &Term| Box::new(map_types(u, f));
        match t {
            Term::Lam(d, b) => Term::Lam(f(d), go(b)),
            Term::App(a, b) => Term::App(go(a), go(b)),
            Term::Quote(a) => Term::Quote(go(a)),
            Term::Splice(a) => Term::Splice(go(a)),
            Term::Succ(a) => Term::Succ(go(a)),
            Term::Fst(a) => Term::Fst(go(a)),
            Term::Snd(a) => Term::Snd(go(a)),
            Term::Iter(a, b, c) => Term::Iter(go(a), go(b), go(c)),
            Term::If(a, b, c) => Term::If(go(a), go(b), go(c)),
            Term::Pair(a, b) => Term::Pair(go(a), go(b)),
            Term::Par(a, b) => Term::Par(go(a), go(b)),
            Term::Seq(a, b) => Term::Seq(go(a), go(b)),
            leaf => leaf.clone(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ty::Phase;

    fn base_d() -> Ty {
        Ty::base(Phase::Src, Stage::Dyn)
    }

    #[test]
    fn numerals() {
        assert_eq!(numeral(0), Term::Zero);
        assert_eq!(numeral(2), Term::succ(Term::succ(Term::Zero)));
        let n = numeral(42);
        assert_eq!(n.count_nodes(|t| matches!(t, Term::Succ(_))), 42);
        assert_eq!(n.as_numeral(), Some(42));
    }

    #[test]
    fn compose_unfolds() {
        let id = Term::lam(base_d(), Term::var(0));
        let c = compose(0, base_d(), &id, &id);
        let expected = Term::lam(
            base_d(),
            Term::app(id.clone(), Term::app(id.clone(), Term::var(0))),
        );
        assert_eq!(c, expected);
    }

    #[test]
    fn compose_weakens_free_variables() {
        // In context (f : A -> A), compose f f = \x. f' (f' x) with f' = There Here.
        let f = Term::var(0);
        let c = compose(1, base_d(), &f, &f);
        assert_eq!(
            c,
            Term::lam(base_d(), Term::app(Term::var(1), Term::app(Term::var(1), Term::var(0))))
        );
    }

    #[test]
    fn deep_terms_drop_without_overflow() {
        let t = numeral(200_000);
        assert_eq!(t.size(), 200_001);
        drop(t);
    }
}
