//! Seeded generators for well-typed terms and circuits, and host-level
//! oracles used across the integration tests.
#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twolevel::kernel::{Phase, Stage, Term, Ty, TyKind, Var};

pub const SRC: Phase = Phase::Src;

pub fn base_d() -> Ty {
    Ty::base(SRC, Stage::Dyn)
}

pub fn nat_d() -> Ty {
    Ty::nat(SRC, Stage::Dyn)
}

pub fn nat_s() -> Ty {
    Ty::nat(SRC, Stage::Sta)
}

fn var_of(ctx: &[Ty], ty: &Ty) -> Vec<Term> {
    ctx.iter()
        .rev()
        .enumerate()
        .filter(|(_, t)| *t == ty)
        .map(|(i, _)| Term::Var(Var(i)))
        .collect()
}

fn circ_inhabited(i: usize, o: usize) -> bool {
    i > 0 || o == 0
}

/// Smallest term of `ty` in `ctx`, if one exists without elimination forms
/// other than splicing a lifted variable.
pub fn canon(ctx: &[Ty], ty: &Ty) -> Option<Term> {
    if let Some(v) = var_of(ctx, ty).into_iter().next() {
        return Some(v);
    }
    match &ty.kind {
        TyKind::Nat => Some(Term::Zero),
        TyKind::Bool => Some(Term::True),
        TyKind::Circ(i, o) if circ_inhabited(*i, *o) => Some(Term::mix(*i, vec![0; *o])),
        TyKind::Circ(..) => None,
        TyKind::Arrow(a, b) => {
            let mut inner = ctx.to_vec();
            inner.push(a.as_ref().clone());
            canon(&inner, b).map(|body| Term::lam(a.as_ref().clone(), body))
        }
        TyKind::Lift(a) => canon(ctx, a).map(Term::quote),
        TyKind::Prod(a, b) => Some(Term::pair(canon(ctx, a)?, canon(ctx, b)?)),
        TyKind::Base if ty.stage == Stage::Dyn => {
            var_of(ctx, &Ty::lift(ty.clone())).into_iter().next().map(Term::splice)
        }
        TyKind::Base => None,
    }
}

pub fn inhabited(ctx: &[Ty], ty: &Ty) -> bool {
    canon(ctx, ty).is_some()
}

/// Height of the term tree, counting a leaf as 1.
pub fn depth(t: &Term) -> usize {
    1 + t.children().into_iter().map(depth).max().unwrap_or(0)
}

/// Number of quote, splice, boolean, and pair nodes.
pub fn source_only_nodes(t: &Term) -> usize {
    t.count_nodes(|n| {
        matches!(
            n,
            Term::Quote(_)
                | Term::Splice(_)
                | Term::True
                | Term::False
                | Term::If(..)
                | Term::Pair(..)
                | Term::Fst(_)
                | Term::Snd(_)
        )
    })
}

pub struct Gen {
    rng: ChaCha8Rng,
    /// Probability of crossing stages at a dynamic goal.
    pub splice_prob: f64,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), splice_prob: 0.3 }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn bits(&mut self, n: usize) -> Vec<bool> {
        (0..n).map(|_| self.chance(0.5)).collect()
    }

    pub fn dyn_ty(&mut self, size: usize) -> Ty {
        let pick = if size == 0 { self.below(3) } else { self.below(5) };
        match pick {
            0 => base_d(),
            1 => nat_d(),
            2 => {
                let i = 1 + self.below(3);
                Ty::circ(SRC, i, self.below(3))
            }
            _ => Ty::arrow(self.dyn_ty(size - 1), self.dyn_ty(size - 1)),
        }
    }

    pub fn sta_ty(&mut self, size: usize) -> Ty {
        let pick = if size == 0 { self.below(3) } else { self.below(7) };
        match pick {
            0 => Ty::base(SRC, Stage::Sta),
            1 => nat_s(),
            2 => Ty::bool(),
            3 | 4 => Ty::lift(self.dyn_ty(size - 1)),
            5 => Ty::prod(self.sta_ty(size - 1), self.sta_ty(size - 1)),
            _ => Ty::arrow(self.sta_ty(size - 1), self.sta_ty(size - 1)),
        }
    }

    pub fn ty_at(&mut self, stage: Stage, size: usize) -> Ty {
        match stage {
            Stage::Dyn => self.dyn_ty(size),
            Stage::Sta => self.sta_ty(size),
        }
    }

    /// A context of `len` random inhabited-or-not source types.
    pub fn ctx(&mut self, len: usize) -> Vec<Ty> {
        (0..len)
            .map(|_| {
                let s = if self.chance(0.6) { Stage::Dyn } else { Stage::Sta };
                self.ty_at(s, 1)
            })
            .collect()
    }

    /// A closed inhabited source dynamic type.
    pub fn closed_dyn_ty(&mut self) -> Ty {
        loop {
            let ty = self.dyn_ty(2);
            if inhabited(&[], &ty) {
                return ty;
            }
        }
    }

    /// A random term of `ty` in `ctx` with roughly `budget` levels of
    /// constructors above the minimal fill-ins. `ty` must be inhabited.
    pub fn term(&mut self, ctx: &[Ty], ty: &Ty, budget: usize) -> Term {
        if budget == 0 {
            return canon(ctx, ty).expect("goal is inhabited");
        }
        for _ in 0..8 {
            if let Some(t) = self.production(ctx, ty, budget - 1) {
                return t;
            }
        }
        canon(ctx, ty).expect("goal is inhabited")
    }

    fn production(&mut self, ctx: &[Ty], ty: &Ty, d: usize) -> Option<Term> {
        let stage = ty.stage;
        if stage == Stage::Dyn && self.chance(self.splice_prob) {
            let lifted = Ty::lift(ty.clone());
            return Some(Term::splice(self.term(ctx, &lifted, d)));
        }
        match self.below(6) {
            0 => {
                let vars = var_of(ctx, ty);
                (!vars.is_empty()).then(|| vars[self.below(vars.len())].clone())
            }
            1 | 2 => self.intro(ctx, ty, d),
            3 => {
                let a = self.ty_at(stage, 1);
                let f = Ty::arrow(a.clone(), ty.clone());
                if !inhabited(ctx, &a) || !inhabited(ctx, &f) {
                    return None;
                }
                Some(Term::app(self.term(ctx, &f, d), self.term(ctx, &a, d)))
            }
            4 => {
                let n = self.term(ctx, &Ty::nat(SRC, stage), d.min(2));
                let z = self.term(ctx, ty, d);
                let s = self.term(ctx, &Ty::arrow(ty.clone(), ty.clone()), d);
                Some(Term::iter(n, z, s))
            }
            _ if stage == Stage::Sta => {
                if self.chance(0.5) {
                    let c = self.term(ctx, &Ty::bool(), d);
                    Some(Term::if_(c, self.term(ctx, ty, d), self.term(ctx, ty, d)))
                } else {
                    let other = self.sta_ty(1);
                    if !inhabited(ctx, &other) {
                        return None;
                    }
                    if self.chance(0.5) {
                        let p = Ty::prod(ty.clone(), other);
                        Some(Term::fst(self.term(ctx, &p, d)))
                    } else {
                        let p = Ty::prod(other, ty.clone());
                        Some(Term::snd(self.term(ctx, &p, d)))
                    }
                }
            }
            _ => None,
        }
    }

    fn intro(&mut self, ctx: &[Ty], ty: &Ty, d: usize) -> Option<Term> {
        match &ty.kind {
            TyKind::Nat => Some(if self.chance(0.7) {
                Term::succ(self.term(ctx, ty, d))
            } else {
                Term::Zero
            }),
            TyKind::Bool => Some(if self.chance(0.5) { Term::True } else { Term::False }),
            TyKind::Arrow(a, b) => {
                let mut inner = ctx.to_vec();
                inner.push(a.as_ref().clone());
                if !inhabited(&inner, b) {
                    return None;
                }
                Some(Term::lam(a.as_ref().clone(), self.term(&inner, b, d)))
            }
            TyKind::Lift(a) if inhabited(ctx, a) => Some(Term::quote(self.term(ctx, a, d))),
            TyKind::Prod(a, b) if inhabited(ctx, a) && inhabited(ctx, b) => {
                Some(Term::pair(self.term(ctx, a, d), self.term(ctx, b, d)))
            }
            TyKind::Lift(_) | TyKind::Prod(..) => None,
            TyKind::Circ(i, o) => Some(self.circuit_in(ctx, *i, *o, d)),
            TyKind::Base => None,
        }
    }

    fn circuit_in(&mut self, ctx: &[Ty], i: usize, o: usize, d: usize) -> Term {
        if !circ_inhabited(i, o) {
            return canon(ctx, &Ty::circ(SRC, i, o)).expect("goal is inhabited");
        }
        match self.below(4) {
            0 if (i, o) == (2, 1) => Term::Nand,
            1 => {
                let i1 = self.below(i + 1);
                let o1 = self.below(o + 1);
                if circ_inhabited(i1, o1) && circ_inhabited(i - i1, o - o1) {
                    let l = self.term(ctx, &Ty::circ(SRC, i1, o1), d);
                    let r = self.term(ctx, &Ty::circ(SRC, i - i1, o - o1), d);
                    Term::par(l, r)
                } else {
                    self.mix(i, o)
                }
            }
            2 => {
                let m = self.below(4);
                if circ_inhabited(i, m) && circ_inhabited(m, o) {
                    let l = self.term(ctx, &Ty::circ(SRC, i, m), d);
                    let r = self.term(ctx, &Ty::circ(SRC, m, o), d);
                    Term::seq(l, r)
                } else {
                    self.mix(i, o)
                }
            }
            _ => self.mix(i, o),
        }
    }

    fn mix(&mut self, i: usize, o: usize) -> Term {
        let wires: Vec<usize> = (0..o).map(|_| self.below(i)).collect();
        Term::mix(i, wires)
    }

    /// A closed well-typed source dynamic term of depth at most `max_depth`.
    pub fn closed_program(&mut self, max_depth: usize) -> (Term, Ty) {
        loop {
            let ty = self.closed_dyn_ty();
            let budget = 1 + self.below(max_depth - 1);
            let t = self.term(&[], &ty, budget);
            if depth(&t) <= max_depth {
                return (t, ty);
            }
        }
    }

    /// A first-order circuit term of the given arity built only from
    /// `nand`, `mix`, `par`, and `seq`.
    pub fn circuit(&mut self, i: usize, o: usize, budget: usize) -> Term {
        assert!(circ_inhabited(i, o));
        if budget == 0 {
            return if (i, o) == (2, 1) && self.chance(0.5) { Term::Nand } else { self.mix(i, o) };
        }
        match self.below(4) {
            0 => {
                let i1 = self.below(i + 1);
                let o1 = self.below(o + 1);
                if circ_inhabited(i1, o1) && circ_inhabited(i - i1, o - o1) {
                    Term::par(self.circuit(i1, o1, budget - 1), self.circuit(i - i1, o - o1, budget - 1))
                } else {
                    self.circuit(i, o, budget - 1)
                }
            }
            1 => {
                let m = self.below(4);
                if circ_inhabited(i, m) && circ_inhabited(m, o) {
                    Term::seq(self.circuit(i, m, budget - 1), self.circuit(m, o, budget - 1))
                } else {
                    self.circuit(i, o, budget - 1)
                }
            }
            _ => self.circuit(i, o, 0),
        }
    }
}

/// Input and output arity of a first-order circuit term.
pub fn circ_arity(t: &Term) -> (usize, usize) {
    match t {
        Term::Nand => (2, 1),
        Term::Mix { inputs, wires } => (*inputs, wires.len()),
        Term::Par(l, r) => {
            let (a, b) = circ_arity(l);
            let (c, d) = circ_arity(r);
            (a + c, b + d)
        }
        Term::Seq(l, r) => (circ_arity(l).0, circ_arity(r).1),
        other => panic!("not a circuit: {other:?}"),
    }
}

/// Direct denotation of a circuit term as a boolean function.
pub fn eval_circuit(t: &Term, bits: &[bool]) -> Vec<bool> {
    match t {
        Term::Nand => vec![!(bits[0] && bits[1])],
        Term::Mix { wires, .. } => wires.iter().map(|w| bits[*w]).collect(),
        Term::Par(l, r) => {
            let k = circ_arity(l).0;
            let mut out = eval_circuit(l, &bits[..k]);
            out.extend(eval_circuit(r, &bits[k..]));
            out
        }
        Term::Seq(l, r) => eval_circuit(r, &eval_circuit(l, bits)),
        other => panic!("not a circuit: {other:?}"),
    }
}

/// Every input vector of width `n` in ascending order, input 0 most
/// significant.
pub fn all_inputs(n: usize) -> Vec<Vec<bool>> {
    (0..1usize << n).map(|r| (0..n).map(|j| (r >> (n - 1 - j)) & 1 == 1).collect()).collect()
}

/// Host-level Fibonacci with `fib 0 = 0`, `fib 1 = 1`.
pub fn fib(n: u64) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}
