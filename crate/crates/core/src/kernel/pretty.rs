//! Printing terms and types in the surface grammar.
//!
//! The printer follows the elaborator's checking/synthesis discipline so that
//! parsing and elaborating the output against the term's type reproduces the
//! term: binder annotations and `mix` ascriptions are only emitted where the
//! elaborator would have to synthesize a type.

use std::fmt;

use super::term::Term;
use super::ty::{Stage, Ty, TyKind};

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_type(self))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TyPrec {
    Arrow,
    Prod,
    App,
    Atom,
}

pub fn pretty_type(ty: &Ty) -> String {
    let mut out = String::new();
    write_type(&mut out, ty, TyPrec::Arrow);
    out
}

fn write_type(out: &mut String, ty: &Ty, ctx: TyPrec) {
    let mark = |s: Stage| if s == Stage::Sta { "s" } else { "d" };
    let (prec, text) = match &ty.kind {
        TyKind::Base => (TyPrec::Atom, format!("Base@{}", mark(ty.stage))),
        TyKind::Nat => (TyPrec::Atom, format!("Nat@{}", mark(ty.stage))),
        TyKind::Bool => (TyPrec::Atom, "Bool".to_owned()),
        TyKind::Circ(i, o) => (TyPrec::App, format!("Circ {i} {o}")),
        TyKind::Lift(a) => {
            let mut s = "Up ".to_owned();
            write_type(&mut s, a, TyPrec::Atom);
            (TyPrec::App, s)
        }
        TyKind::Prod(a, b) => {
            let mut s = String::new();
            write_type(&mut s, a, TyPrec::App);
            s.push_str(" * ");
            write_type(&mut s, b, TyPrec::Prod);
            (TyPrec::Prod, s)
        }
        TyKind::Arrow(a, b) => {
            let mut s = String::new();
            write_type(&mut s, a, TyPrec::Prod);
            s.push_str(" -> ");
            write_type(&mut s, b, TyPrec::Arrow);
            (TyPrec::Arrow, s)
        }
    };
    if prec < ctx {
        out.push('(');
        out.push_str(&text);
        out.push(')');
    } else {
        out.push_str(&text);
    }
}

const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

/// Name of the variable bound at de Bruijn level `level`.
pub fn binder_name(level: usize) -> String {
    NAMES.get(level).map(|s| (*s).to_owned()).unwrap_or_else(|| format!("x{level}"))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Check,
    Synth,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Expr,
    App,
    Atom,
}

/// Prints a term assumed to be checked against a known type.
pub fn pretty_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t, 0, Mode::Check, Prec::Expr);
    out
}

/// Prints a term in a form whose type can be synthesized without any
/// expected type.
pub fn pretty_term_synth(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t, 0, Mode::Synth, Prec::Expr);
    out
}

/// Whether the checking-mode rendering of `t` also synthesizes.
fn plain(t: &Term) -> bool {
    match t {
        Term::Lam(..) | Term::Mix { .. } => false,
        Term::Quote(a) | Term::Splice(a) => plain(a),
        Term::Iter(_, z, _) => plain(z),
        Term::If(_, a, _) => plain(a),
        Term::Pair(a, b) | Term::Par(a, b) | Term::Seq(a, b) => plain(a) && plain(b),
        _ => true,
    }
}

fn write_term(out: &mut String, t: &Term, depth: usize, mode: Mode, ctx: Prec) {
    stacker::maybe_grow(32 * 1024, 1024 * 1024, || {
        let prec = prec_of(t, mode);
        if prec < ctx {
            out.push('(');
            write_node(out, t, depth, mode);
            out.push(')');
        } else {
            write_node(out, t, depth, mode);
        }
    })
}

fn prec_of(t: &Term, mode: Mode) -> Prec {
    match t {
        Term::Lam(..) | Term::If(..) => Prec::Expr,
        Term::App(..)
        | Term::Succ(_)
        | Term::Iter(..)
        | Term::Fst(_)
        | Term::Snd(_)
        | Term::Par(..)
        | Term::Seq(..) => Prec::App,
        Term::Mix { .. } if mode == Mode::Check => Prec::App,
        _ => Prec::Atom,
    }
}

fn write_node(out: &mut String, t: &Term, depth: usize, mode: Mode) {
    use Mode::*;
    match t {
        Term::Var(v) => match depth.checked_sub(v.0 + 1) {
            Some(level) => out.push_str(&binder_name(level)),
            None => out.push_str(&format!("#{}", v.0 - depth)),
        },
        Term::App(f, a) => {
            write_term(out, f, depth, Synth, Prec::App);
            out.push(' ');
            write_term(out, a, depth, Check, Prec::Atom);
        }
        Term::Lam(dom, body) => {
            let name = binder_name(depth);
            match mode {
                Check => out.push_str(&format!("\\{name}. ")),
                Synth => out.push_str(&format!("\\({name} : {}). ", pretty_type(dom))),
            }
            write_term(out, body, depth + 1, mode, Prec::Expr);
        }
        Term::Quote(a) => {
            out.push('<');
            write_term(out, a, depth, mode, Prec::Expr);
            out.push('>');
        }
        Term::Splice(a) => {
            out.push('~');
            write_term(out, a, depth, mode, Prec::Atom);
        }
        Term::Zero => out.push_str("zero"),
        Term::Succ(a) => {
            out.push_str("succ ");
            write_term(out, a, depth, Check, Prec::Atom);
        }
        Term::Iter(n, z, s) => {
            out.push_str("iter ");
            write_term(out, n, depth, Check, Prec::Atom);
            out.push(' ');
            write_term(out, z, depth, mode, Prec::Atom);
            out.push(' ');
            write_term(out, s, depth, Check, Prec::Atom);
        }
        Term::True => out.push_str("true"),
        Term::False => out.push_str("false"),
        Term::If(c, a, b) => {
            out.push_str("if ");
            write_term(out, c, depth, Check, Prec::Expr);
            out.push_str(" then ");
            write_term(out, a, depth, mode, Prec::Expr);
            out.push_str(" else ");
            write_term(out, b, depth, Check, Prec::Expr);
        }
        Term::Pair(a, b) => {
            out.push('(');
            write_term(out, a, depth, mode, Prec::Expr);
            out.push_str(", ");
            write_term(out, b, depth, mode, Prec::Expr);
            out.push(')');
        }
        Term::Fst(a) | Term::Snd(a) => {
            out.push_str(if matches!(t, Term::Fst(_)) { "fst " } else { "snd " });
            write_term(out, a, depth, Synth, Prec::Atom);
        }
        Term::Nand => out.push_str("nand"),
        Term::Par(l, r) | Term::Seq(l, r) => {
            out.push_str(if matches!(t, Term::Par(..)) { "par " } else { "seq " });
            // Checking needs one side to synthesize; prefer a side that does
            // so without annotations.
            let (lm, rm) = match mode {
                Synth => (Synth, Synth),
                Check if plain(l) || plain(r) => (Check, Check),
                Check => (Synth, Check),
            };
            write_term(out, l, depth, lm, Prec::Atom);
            out.push(' ');
            write_term(out, r, depth, rm, Prec::Atom);
        }
        Term::Mix { inputs, wires } => {
            let list: Vec<String> = wires.iter().map(|w| w.to_string()).collect();
            match mode {
                Check => out.push_str(&format!("mix [{}]", list.join(","))),
                Synth => out.push_str(&format!(
                    "(mix [{}] : Circ {} {})",
                    list.join(","),
                    inputs,
                    wires.len()
                )),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ty::Phase;

    #[test]
    fn identity() {
        let t = Term::lam(Ty::base(Phase::Src, Stage::Dyn), Term::var(0));
        assert_eq!(pretty_term(&t), "\\x. x");
        assert_eq!(pretty_term_synth(&t), "\\(x : Base@d). x");
    }

    #[test]
    fn not_circuit() {
        let t = Term::seq(Term::mix(1, [0, 0]), Term::Nand);
        assert_eq!(pretty_term(&t), "seq (mix [0,0]) nand");
    }

    #[test]
    fn types() {
        let nat = Ty::nat(Phase::Src, Stage::Sta);
        let t = Ty::arrow(Ty::prod(nat.clone(), nat.clone()), Ty::lift(Ty::circ(Phase::Src, 2, 1)));
        assert_eq!(pretty_type(&t), "Nat@s * Nat@s -> Up (Circ 2 1)");
        let hi = Ty::arrow(Ty::arrow(nat.clone(), nat.clone()), nat.clone());
        assert_eq!(pretty_type(&hi), "(Nat@s -> Nat@s) -> Nat@s");
    }

    #[test]
    fn application_of_lambda_is_annotated() {
        let nat = Ty::nat(Phase::Src, Stage::Dyn);
        let t = Term::app(Term::lam(nat, Term::succ(Term::var(0))), Term::Zero);
        assert_eq!(pretty_term(&t), "(\\(x : Nat@d). succ x) zero");
    }

    #[test]
    fn binder_names() {
        assert_eq!(binder_name(0), "x");
        assert_eq!(binder_name(5), "v");
        assert_eq!(binder_name(6), "x6");
    }
}
