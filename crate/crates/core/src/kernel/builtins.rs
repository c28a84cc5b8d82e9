//! Library of closed terms: identities, arithmetic, Fibonacci, and the circuit
//! combinators.

use thiserror::Error;

use super::term::{compose, numeral, Term};
use super::ty::{Phase, Stage, Ty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown builtin `{0}`")]
pub struct UnknownBuiltin(pub String);

/// Catalogue of builtin names in a fixed order.
pub const BUILTIN_NAMES: &[&str] = &[
    "idDyn", "idSta", "add", "reify", "fib", "id2", "swap", "dup", "diag", "not", "and", "or",
    "tab",
];

/// A closed builtin term together with the type it is catalogued at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Builtin {
    pub name: &'static str,
    pub term: Term,
    pub ty: Ty,
}

impl Builtin {
    pub fn stage(&self) -> Stage {
        self.ty.stage
    }

    pub fn phase(&self) -> Phase {
        self.ty.phase
    }
}

/// Looks up a builtin at its catalogued instantiation. Type-polymorphic
/// entries are catalogued at `Base`, `add` as static, and circuits in the
/// source phase.
pub fn builtin(name: &str) -> Result<Builtin, UnknownBuiltin> {
    let base_d = Ty::base(Phase::Src, Stage::Dyn);
    let base_s = Ty::base(Phase::Src, Stage::Sta);
    let (term, ty) = match name {
        "idDyn" => (identity(base_d.clone()), Ty::arrow(base_d.clone(), base_d)),
        "idSta" => (identity(base_s.clone()), Ty::arrow(base_s.clone(), base_s)),
        "add" => (add(Phase::Src, Stage::Sta), add_type(Phase::Src, Stage::Sta)),
        "reify" => (reify(), reify_type()),
        "fib" => (fib(), Ty::arrow(nat_s(), nat_s())),
        "id2" => (id2(), Ty::circ(Phase::Src, 2, 2)),
        "swap" => (swap(), Ty::circ(Phase::Src, 2, 2)),
        "dup" => (dup(), Ty::circ(Phase::Src, 1, 2)),
        "diag" => (diag(), diag_type()),
        "not" => (not(), Ty::circ(Phase::Src, 1, 1)),
        "and" => (and(), Ty::circ(Phase::Src, 2, 1)),
        "or" => (or(), Ty::circ(Phase::Src, 2, 1)),
        "tab" => (tab(), tab_type()),
        _ => return Err(UnknownBuiltin(name.to_owned())),
    };
    let name = BUILTIN_NAMES.iter().find(|n| **n == name).expect("catalogued");
    Ok(Builtin { name, term, ty })
}

/// Every builtin at its catalogued instantiation.
pub fn catalogue() -> Vec<Builtin> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).expect("catalogued")).collect()
}

fn nat_s() -> Ty {
    Ty::nat(Phase::Src, Stage::Sta)
}

fn nat_d() -> Ty {
    Ty::nat(Phase::Src, Stage::Dyn)
}

/// `\x. x` at any type.
pub fn identity(dom: Ty) -> Term {
    Term::lam(dom, Term::var(0))
}

pub fn add_type(phase: Phase, stage: Stage) -> Ty {
    let nat = Ty::nat(phase, stage);
    Ty::arrows([nat.clone(), nat.clone()], nat)
}

/// `\m. \n. iter m n (\r. succ r)`: iterated successor, valid at every phase
/// and stage.
pub fn add(phase: Phase, stage: Stage) -> Term {
    let nat = Ty::nat(phase, stage);
    Term::lam(
        nat.clone(),
        Term::lam(
            nat.clone(),
            Term::iter(Term::var(1), Term::var(0), Term::lam(nat, Term::succ(Term::var(0)))),
        ),
    )
}

pub fn reify_type() -> Ty {
    Ty::arrow(nat_s(), Ty::lift(nat_d()))
}

/// `\n. iter n <zero> (\r. <succ ~r>)`: replaces static zeros and successors
/// by dynamic ones.
pub fn reify() -> Term {
    Term::lam(
        nat_s(),
        Term::iter(
            Term::var(0),
            Term::quote(Term::Zero),
            Term::lam(Ty::lift(nat_d()), Term::quote(Term::succ(Term::splice(Term::var(0))))),
        ),
    )
}

fn nat_pair() -> Ty {
    Ty::prod(nat_s(), nat_s())
}

/// `\p. (snd p, add (fst p) (snd p))`
pub fn fib_step() -> Term {
    let p = || Term::var(0);
    Term::lam(
        nat_pair(),
        Term::pair(
            Term::snd(p()),
            Term::apps(add(Phase::Src, Stage::Sta), [Term::fst(p()), Term::snd(p())]),
        ),
    )
}

/// `(\p. fst p) ∘ (\n. iter n (0, 1) step)`: linear Fibonacci through a
/// static pair of consecutive values.
pub fn fib() -> Term {
    let first = Term::lam(nat_pair(), Term::fst(Term::var(0)));
    let run = Term::lam(
        nat_s(),
        Term::iter(Term::var(0), Term::pair(numeral(0), numeral(1)), fib_step()),
    );
    compose(0, nat_s(), &first, &run)
}

pub fn id2() -> Term {
    Term::mix(2, [0, 1])
}

pub fn swap() -> Term {
    Term::mix(2, [1, 0])
}

pub fn dup() -> Term {
    Term::mix(1, [0, 0])
}

/// One-wire identity circuit.
pub fn id1() -> Term {
    Term::mix(1, [0])
}

pub fn diag_type() -> Ty {
    Ty::arrow(Ty::lift(Ty::circ(Phase::Src, 2, 1)), Ty::lift(Ty::circ(Phase::Src, 1, 1)))
}

/// `\c. <seq dup ~c>`: feeds one input to both ports of a binary circuit.
pub fn diag() -> Term {
    Term::lam(
        Ty::lift(Ty::circ(Phase::Src, 2, 1)),
        Term::quote(Term::seq(dup(), Term::splice(Term::var(0)))),
    )
}

/// `~(diag <nand>)`
pub fn not() -> Term {
    Term::splice(Term::app(diag(), Term::quote(Term::Nand)))
}

/// `seq nand not`
pub fn and() -> Term {
    Term::seq(Term::Nand, not())
}

/// `seq (par not not) nand`
pub fn or() -> Term {
    Term::seq(Term::par(not(), not()), Term::Nand)
}

pub fn tab_type() -> Ty {
    let c11 = Ty::lift(Ty::circ(Phase::Src, 1, 1));
    Ty::arrow(Ty::arrow(Ty::bool(), c11), Ty::lift(Ty::circ(Phase::Src, 2, 1)))
}

/// Two-input circuit `(b, x) ↦ (b ∧ f true x) ∨ (¬b ∧ f false x)` built from
/// a static function `f` from booleans to one-wire circuits.
pub fn tab() -> Term {
    let f = || Term::var(0);
    let spread = Term::mix(2, [0, 1, 0, 1]);
    let branches = Term::par(
        Term::par(id1(), Term::splice(Term::app(f(), Term::True))),
        Term::par(not(), Term::splice(Term::app(f(), Term::False))),
    );
    let select = Term::seq(Term::par(and(), and()), or());
    Term::lam(
        Ty::arrow(Ty::bool(), Ty::lift(Ty::circ(Phase::Src, 1, 1))),
        Term::quote(Term::seq(spread, Term::seq(branches, select))),
    )
}
