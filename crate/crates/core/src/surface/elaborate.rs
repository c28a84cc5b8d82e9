use crate::kernel::{
    add, add_type, builtin, identity, numeral, reindex_phase, validate, Ctx, Phase, Stage, Term,
    Ty, TyFault, TyKind,
};
use crate::ope::{wk_term, Ope};

use super::ast::{Expr, ExprKind, Program, Span, TyExpr, TyExprKind};
use super::resolve::{lookup, unbound, Resolution};
use super::{Diagnostic, DiagnosticKind};

/// Restriction on the dynamic types a program may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Profile {
    #[default]
    Full,
    /// Every dynamic type must be a circuit type.
    Circuit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub phase: Phase,
    pub profile: Profile,
}

impl Default for Options {
    fn default() -> Options {
        Options { phase: Phase::Src, profile: Profile::Full }
    }
}

/// A validated top-level definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elaborated {
    pub name: String,
    pub ty: Ty,
    pub term: Term,
}

fn diag(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Diagnostic {
    Diagnostic::new(kind, span, message)
}

fn stage_name(s: Stage) -> &'static str {
    if s == Stage::Sta {
        "static"
    } else {
        "dynamic"
    }
}

fn stage_error(span: Span, what: &str, own: Stage) -> Diagnostic {
    let other = if own == Stage::Sta { Stage::Dyn } else { Stage::Sta };
    diag(
        DiagnosticKind::StageError,
        span,
        format!("{} construct {what} in {} position", stage_name(own), stage_name(other)),
    )
}

fn mismatch(span: Span, expected: &Ty, found: &Ty) -> Diagnostic {
    diag(DiagnosticKind::TypeMismatch, span, format!("expected {expected}, found {found}"))
}

/// Elaborates a type at the given phase.
pub fn elaborate_type(t: &TyExpr, phase: Phase) -> Result<Ty, Diagnostic> {
    let ty = match &t.kind {
        TyExprKind::Base(s) => Ty::base(phase, *s),
        TyExprKind::Nat(s) => Ty::nat(phase, *s),
        TyExprKind::Bool => Ty::bool(),
        TyExprKind::Up(a) => Ty::lift(elaborate_type(a, phase)?),
        TyExprKind::Circ(i, o) => Ty::circ(phase, *i, *o),
        TyExprKind::Arrow(a, b) => Ty::arrow(elaborate_type(a, phase)?, elaborate_type(b, phase)?),
        TyExprKind::Prod(a, b) => Ty::prod(elaborate_type(a, phase)?, elaborate_type(b, phase)?),
    };
    if ty.phase != phase {
        return Err(diag(
            DiagnosticKind::PhaseError,
            t.span,
            format!("type {ty} does not exist in the {phase} phase"),
        ));
    }
    ty.well_formed().map_err(|fault| {
        let kind = match fault {
            TyFault::IllegalStage => DiagnosticKind::PhaseError,
            _ => DiagnosticKind::IllFormedType,
        };
        diag(kind, t.span, format!("{ty}: {fault}"))
    })?;
    Ok(ty)
}

/// Elaborates every def in order, checking each body against its declared
/// type and validating the result.
pub fn elaborate(p: &Program, opts: Options) -> Result<Vec<Elaborated>, Diagnostic> {
    let mut done: Vec<Elaborated> = Vec::new();
    for def in &p.defs {
        if done.iter().any(|d| d.name == def.name) {
            return Err(diag(
                DiagnosticKind::DuplicateDef,
                def.span,
                format!("`{}` is already defined", def.name),
            ));
        }
        let ty = elaborate_type(&def.ty, opts.phase)?;
        let term = Elab { opts, defs: &done, locals: Vec::new() }.check(&def.body, &ty)?;
        validate(&term, opts.phase, ty.stage, &ty, &Ctx::empty()).map_err(|e| {
            diag(DiagnosticKind::Internal, def.span, format!("elaborated `{}` fails validation: {e}", def.name))
        })?;
        done.push(Elaborated { name: def.name.clone(), ty, term });
    }
    Ok(done)
}

/// Elaborates a closed expression against a type, without any defs in scope.
pub fn elaborate_expr(e: &Expr, ty: &Ty, opts: Options) -> Result<Term, Diagnostic> {
    let term = Elab { opts, defs: &[], locals: Vec::new() }.check(e, ty)?;
    validate(&term, opts.phase, ty.stage, ty, &Ctx::empty())
        .map_err(|err| diag(DiagnosticKind::Internal, e.span, err.to_string()))?;
    Ok(term)
}

struct Elab<'a> {
    opts: Options,
    defs: &'a [Elaborated],
    locals: Vec<(String, Ty)>,
}

fn is_check_only(name: &str) -> bool {
    name == "idDyn" || name == "idSta"
}

impl Elab<'_> {
    fn phase(&self) -> Phase {
        self.opts.phase
    }

    fn def_names(&self) -> Vec<&str> {
        self.defs.iter().map(|d| d.name.as_str()).collect()
    }

    fn resolve(&self, span: Span, name: &str) -> Result<Resolution, Diagnostic> {
        let locals: Vec<&str> = self.locals.iter().map(|(n, _)| n.as_str()).collect();
        lookup(&locals, &self.def_names(), name).ok_or_else(|| unbound(span, name))
    }

    /// Whether `e` can synthesize its type, with `bound` naming binders
    /// introduced inside `e` so far.
    fn synthesizable(&self, e: &Expr, bound: &mut Vec<String>) -> bool {
        use ExprKind::*;
        match &e.kind {
            Ident(name) => {
                !is_check_only(name)
                    || bound.contains(name)
                    || self.locals.iter().any(|(n, _)| n == name)
                    || self.defs.iter().any(|d| &d.name == name)
            }
            Lam(_, None, _) | Mix(_) => false,
            Lam(x, Some(_), body) => {
                bound.push(x.clone());
                let r = self.synthesizable(body, bound);
                bound.pop();
                r
            }
            App(f, _) => self.synthesizable(f, bound),
            Quote(a) | Splice(a) => self.synthesizable(a, bound),
            Iter(_, z, _) => self.synthesizable(z, bound),
            If(_, a, _) => self.synthesizable(a, bound),
            Pair(a, b) | Par(a, b) | Seq(a, b) => {
                self.synthesizable(a, bound) && self.synthesizable(b, bound)
            }
            _ => true,
        }
    }

    fn check_only_head(&self, f: &Expr) -> bool {
        matches!(&f.kind, ExprKind::Ident(name) if is_check_only(name) && !self.synthesizes(f))
    }

    fn synthesizes(&self, e: &Expr) -> bool {
        self.synthesizable(e, &mut Vec::new())
    }

    fn profile(&self, span: Span, ty: &Ty) -> Result<(), Diagnostic> {
        if self.opts.profile == Profile::Circuit
            && ty.stage == Stage::Dyn
            && ty.as_circ().is_none()
        {
            return Err(diag(
                DiagnosticKind::ProfileViolation,
                span,
                format!("dynamic type {ty} is not a circuit type"),
            ));
        }
        Ok(())
    }

    fn require_src(&self, span: Span, what: &str) -> Result<(), Diagnostic> {
        if self.phase() == Phase::Src {
            Ok(())
        } else {
            Err(diag(
                DiagnosticKind::PhaseError,
                span,
                format!("{what} does not exist in the staged phase"),
            ))
        }
    }

    fn with_local<T>(
        &mut self,
        name: &str,
        ty: Ty,
        f: impl FnOnce(&mut Self) -> Result<T, Diagnostic>,
    ) -> Result<T, Diagnostic> {
        self.locals.push((name.to_owned(), ty));
        let r = f(self);
        self.locals.pop();
        r
    }

    fn check(&mut self, e: &Expr, ty: &Ty) -> Result<Term, Diagnostic> {
        stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || {
            self.profile(e.span, ty)?;
            self.check_node(e, ty)
        })
    }

    fn check_node(&mut self, e: &Expr, ty: &Ty) -> Result<Term, Diagnostic> {
        let phase = self.phase();
        let span = e.span;
        match &e.kind {
            ExprKind::Lam(x, ann, body) => {
                let Some((dom, cod)) = ty.as_arrow() else {
                    return Err(diag(
                        DiagnosticKind::TypeMismatch,
                        span,
                        format!("expected {ty}, found a function"),
                    ));
                };
                if let Some(ann) = ann {
                    let a = elaborate_type(ann, phase)?;
                    if &a != dom {
                        return Err(mismatch(ann.span, dom, &a));
                    }
                }
                let (dom, cod) = (dom.clone(), cod.clone());
                let body = self.with_local(x, dom.clone(), |s| s.check(body, &cod))?;
                Ok(Term::lam(dom, body))
            }
            ExprKind::Quote(inner) => {
                self.require_src(span, "quote")?;
                match &ty.kind {
                    TyKind::Lift(a) => Ok(Term::quote(self.check(inner, a)?)),
                    _ if ty.stage == Stage::Dyn => Err(stage_error(span, "quote", Stage::Sta)),
                    _ => Err(diag(
                        DiagnosticKind::TypeMismatch,
                        span,
                        format!("expected {ty}, found a quote"),
                    )),
                }
            }
            ExprKind::Splice(inner) => {
                self.require_src(span, "splice")?;
                if ty.stage == Stage::Sta {
                    return Err(stage_error(span, "splice", Stage::Dyn));
                }
                Ok(Term::splice(self.check(inner, &Ty::lift(ty.clone()))?))
            }
            ExprKind::Pair(l, r) => match &ty.kind {
                TyKind::Prod(a, b) => Ok(Term::pair(self.check(l, a)?, self.check(r, b)?)),
                _ if ty.stage == Stage::Dyn => Err(stage_error(span, "pair", Stage::Sta)),
                _ => Err(diag(
                    DiagnosticKind::TypeMismatch,
                    span,
                    format!("expected {ty}, found a pair"),
                )),
            },
            ExprKind::Succ(a) if ty.kind == TyKind::Nat => Ok(Term::succ(self.check(a, ty)?)),
            ExprKind::Iter(n, z, s) => {
                let n = self.check(n, &Ty::nat(phase, ty.stage))?;
                let z = self.check(z, ty)?;
                let s = self.check(s, &Ty::arrow(ty.clone(), ty.clone()))?;
                Ok(Term::iter(n, z, s))
            }
            ExprKind::If(c, a, b) => {
                if ty.stage == Stage::Dyn {
                    return Err(stage_error(span, "if", Stage::Sta));
                }
                let c = self.check(c, &Ty::bool())?;
                Ok(Term::if_(c, self.check(a, ty)?, self.check(b, ty)?))
            }
            ExprKind::Mix(wires) => {
                let (i, o) = self.expect_circ(span, ty, "mix")?;
                if wires.len() != o {
                    return Err(diag(
                        DiagnosticKind::ArityError,
                        span,
                        format!("mix with {} outputs checked against {ty}", wires.len()),
                    ));
                }
                if let Some(w) = wires.iter().find(|w| **w >= i) {
                    return Err(diag(
                        DiagnosticKind::ArityError,
                        span,
                        format!("mix wire {w} out of range for {i} inputs"),
                    ));
                }
                Ok(Term::mix(i, wires.clone()))
            }
            ExprKind::Par(l, r) => {
                let (i, o) = self.expect_circ(span, ty, "par")?;
                let left_first = self.synthesizes(l);
                if !left_first && !self.synthesizes(r) {
                    return Err(diag(
                        DiagnosticKind::AnnotationRequired,
                        span,
                        "neither side of `par` determines its arity; add an ascription",
                    ));
                }
                let (known, other) = if left_first { (l, r) } else { (r, l) };
                let (kt, (ki, ko)) = self.synth_circ(known)?;
                if ki > i || ko > o {
                    return Err(diag(
                        DiagnosticKind::ArityError,
                        known.span,
                        format!("component of type Circ {ki} {ko} does not fit in {ty}"),
                    ));
                }
                let ot = self.check(other, &Ty::circ(phase, i - ki, o - ko))?;
                Ok(if left_first { Term::par(kt, ot) } else { Term::par(ot, kt) })
            }
            ExprKind::Seq(l, r) => {
                let (i, o) = self.expect_circ(span, ty, "seq")?;
                if self.synthesizes(l) {
                    let (lt, (li, m)) = self.synth_circ(l)?;
                    if li != i {
                        return Err(diag(
                            DiagnosticKind::ArityError,
                            l.span,
                            format!("circuit with {li} inputs where {ty} expects {i}"),
                        ));
                    }
                    let rt = self.check(r, &Ty::circ(phase, m, o))?;
                    Ok(Term::seq(lt, rt))
                } else if self.synthesizes(r) {
                    let (rt, (m, ro)) = self.synth_circ(r)?;
                    if ro != o {
                        return Err(diag(
                            DiagnosticKind::ArityError,
                            r.span,
                            format!("circuit with {ro} outputs where {ty} expects {o}"),
                        ));
                    }
                    let lt = self.check(l, &Ty::circ(phase, i, m))?;
                    Ok(Term::seq(lt, rt))
                } else {
                    Err(diag(
                        DiagnosticKind::AnnotationRequired,
                        span,
                        "neither side of `seq` determines its arity; add an ascription",
                    ))
                }
            }
            ExprKind::Ident(name) => match self.resolve(span, name)? {
                Resolution::Builtin(b) if is_check_only(b) => self.identity_builtin(span, b, ty),
                _ => self.check_by_synth(e, ty),
            },
            ExprKind::App(f, a) if self.check_only_head(f) => {
                let ExprKind::Ident(name) = &f.kind else { unreachable!() };
                let ft = self.identity_builtin(f.span, name, &Ty::arrow(ty.clone(), ty.clone()))?;
                Ok(Term::app(ft, self.check(a, ty)?))
            }
            ExprKind::App(f, a) if !self.synthesizes(f) && self.synthesizes(a) => {
                let (at, aty) = self.synth(a, ty.stage)?;
                let ft = self.check(f, &Ty::arrow(aty, ty.clone()))?;
                Ok(Term::app(ft, at))
            }
            _ => self.check_by_synth(e, ty),
        }
    }

    fn check_by_synth(&mut self, e: &Expr, ty: &Ty) -> Result<Term, Diagnostic> {
        let (t, got) = self.synth(e, ty.stage)?;
        if &got != ty {
            return Err(mismatch(e.span, ty, &got));
        }
        Ok(t)
    }

    fn expect_circ(&self, span: Span, ty: &Ty, what: &str) -> Result<(usize, usize), Diagnostic> {
        ty.as_circ().ok_or_else(|| {
            if ty.stage == Stage::Sta {
                stage_error(span, what, Stage::Dyn)
            } else {
                diag(DiagnosticKind::TypeMismatch, span, format!("expected {ty}, found a circuit"))
            }
        })
    }

    fn synth_circ(&mut self, e: &Expr) -> Result<(Term, (usize, usize)), Diagnostic> {
        let (t, ty) = self.synth(e, Stage::Dyn)?;
        let io = ty.as_circ().ok_or_else(|| {
            diag(DiagnosticKind::TypeMismatch, e.span, format!("expected a circuit, found {ty}"))
        })?;
        Ok((t, io))
    }

    fn identity_builtin(&self, span: Span, name: &str, ty: &Ty) -> Result<Term, Diagnostic> {
        let want = if name == "idDyn" { Stage::Dyn } else { Stage::Sta };
        if ty.stage != want {
            return Err(stage_error(span, &format!("`{name}`"), want));
        }
        match ty.as_arrow() {
            Some((a, b)) if a == b => Ok(identity(a.clone())),
            _ => Err(diag(
                DiagnosticKind::TypeMismatch,
                span,
                format!("expected {ty}, but `{name}` has type A -> A"),
            )),
        }
    }

    fn builtin_at(&self, span: Span, name: &str, stage: Stage) -> Result<(Term, Ty), Diagnostic> {
        let phase = self.phase();
        if name == "add" {
            if !stage.legal_in(phase) {
                return Err(stage_error(span, "`add`", stage));
            }
            return Ok((add(phase, stage), add_type(phase, stage)));
        }
        if is_check_only(name) {
            return Err(diag(
                DiagnosticKind::AnnotationRequired,
                span,
                format!("`{name}` needs an expected type; use it in checking position or ascribe it"),
            ));
        }
        let b = builtin(name).expect("resolved builtin");
        let (term, ty) = match phase {
            Phase::Src => (b.term, b.ty),
            Phase::Stg => match b.ty.as_staged() {
                Some(ty) if b.term.count_nodes(Term::is_source_only) == 0 => (reindex_phase(&b.term, Phase::Stg), ty),
                _ => {
                    return Err(diag(
                        DiagnosticKind::PhaseError,
                        span,
                        format!("builtin `{name}` does not exist in the staged phase"),
                    ))
                }
            },
        };
        if ty.stage != stage {
            return Err(stage_error(span, &format!("`{name}`"), ty.stage));
        }
        Ok((term, ty))
    }

    fn synth(&mut self, e: &Expr, stage: Stage) -> Result<(Term, Ty), Diagnostic> {
        stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || {
            let (t, ty) = self.synth_node(e, stage)?;
            self.profile(e.span, &ty)?;
            Ok((t, ty))
        })
    }

    fn synth_node(&mut self, e: &Expr, stage: Stage) -> Result<(Term, Ty), Diagnostic> {
        let phase = self.phase();
        let span = e.span;
        let need = |want: Stage, what: &str| {
            if stage == want {
                Ok(())
            } else {
                Err(stage_error(span, what, want))
            }
        };
        match &e.kind {
            ExprKind::Ident(name) => {
                let (t, ty) = match self.resolve(span, name)? {
                    Resolution::Local(v) => {
                        let ty = self.locals[self.locals.len() - 1 - v.0].1.clone();
                        (Term::Var(v), ty)
                    }
                    Resolution::Def(d) => {
                        let def = self.defs.iter().find(|x| x.name == d).expect("resolved def");
                        let t = wk_term(&Ope::from_empty(self.locals.len()), &def.term);
                        (t, def.ty.clone())
                    }
                    Resolution::Builtin(b) => return self.builtin_at(span, b, stage),
                };
                if ty.stage != stage {
                    return Err(stage_error(span, &format!("`{name}`"), ty.stage));
                }
                Ok((t, ty))
            }
            ExprKind::Ann(inner, ann) => {
                let ty = elaborate_type(ann, phase)?;
                if ty.stage != stage {
                    return Err(stage_error(span, &format!("of type {ty}"), ty.stage));
                }
                Ok((self.check(inner, &ty)?, ty))
            }
            ExprKind::Lam(x, Some(ann), body) => {
                let dom = elaborate_type(ann, phase)?;
                if dom.stage != stage {
                    return Err(stage_error(ann.span, &format!("binder of type {dom}"), dom.stage));
                }
                let (b, cod) = self.with_local(x, dom.clone(), |s| s.synth(body, stage))?;
                Ok((Term::lam(dom.clone(), b), Ty::arrow(dom, cod)))
            }
            ExprKind::Lam(x, None, _) => Err(diag(
                DiagnosticKind::AnnotationRequired,
                span,
                format!("cannot infer the type of `{x}`; write `\\({x} : T). ...` or ascribe the function"),
            )),
            ExprKind::App(f, a) => {
                if !self.synthesizes(f) {
                    return Err(diag(
                        DiagnosticKind::AnnotationRequired,
                        f.span,
                        "cannot infer the type of the applied function; add an ascription",
                    ));
                }
                let (ft, fty) = self.synth(f, stage)?;
                let Some((dom, cod)) = fty.as_arrow() else {
                    return Err(diag(
                        DiagnosticKind::TypeMismatch,
                        f.span,
                        format!("applying a non-function of type {fty}"),
                    ));
                };
                let at = self.check(a, dom)?;
                Ok((Term::app(ft, at), cod.clone()))
            }
            ExprKind::Quote(inner) => {
                self.require_src(span, "quote")?;
                need(Stage::Sta, "quote")?;
                let (t, a) = self.synth(inner, Stage::Dyn)?;
                Ok((Term::quote(t), Ty::lift(a)))
            }
            ExprKind::Splice(inner) => {
                self.require_src(span, "splice")?;
                need(Stage::Dyn, "splice")?;
                let (t, lifted) = self.synth(inner, Stage::Sta)?;
                match lifted.kind {
                    TyKind::Lift(a) => Ok((Term::splice(t), *a)),
                    _ => Err(diag(
                        DiagnosticKind::TypeMismatch,
                        inner.span,
                        format!("splicing a value of type {lifted}, which is not lifted"),
                    )),
                }
            }
            ExprKind::Zero => Ok((Term::Zero, Ty::nat(phase, stage))),
            ExprKind::Succ(a) => {
                let nat = Ty::nat(phase, stage);
                Ok((Term::succ(self.check(a, &nat)?), nat))
            }
            ExprKind::Lit(n, mark) => {
                if *mark != stage {
                    return Err(stage_error(span, &format!("literal `{n}`"), *mark));
                }
                Ok((numeral(*n), Ty::nat(phase, stage)))
            }
            ExprKind::Iter(n, z, s) => {
                let n = self.check(n, &Ty::nat(phase, stage))?;
                let (z, a) = self.synth(z, stage)?;
                let s = self.check(s, &Ty::arrow(a.clone(), a.clone()))?;
                Ok((Term::iter(n, z, s), a))
            }
            ExprKind::True | ExprKind::False => {
                need(Stage::Sta, "boolean")?;
                let t = if e.kind == ExprKind::True { Term::True } else { Term::False };
                Ok((t, Ty::bool()))
            }
            ExprKind::If(c, a, b) => {
                need(Stage::Sta, "if")?;
                let c = self.check(c, &Ty::bool())?;
                let (a, ty) = self.synth(a, stage)?;
                let b = self.check(b, &ty)?;
                Ok((Term::if_(c, a, b), ty))
            }
            ExprKind::Pair(l, r) => {
                need(Stage::Sta, "pair")?;
                let (l, a) = self.synth(l, stage)?;
                let (r, b) = self.synth(r, stage)?;
                Ok((Term::pair(l, r), Ty::prod(a, b)))
            }
            ExprKind::Fst(p) | ExprKind::Snd(p) => {
                let first = matches!(e.kind, ExprKind::Fst(_));
                need(Stage::Sta, if first { "fst" } else { "snd" })?;
                let (t, ty) = self.synth(p, stage)?;
                match &ty.kind {
                    TyKind::Prod(a, _) if first => Ok((Term::fst(t), a.as_ref().clone())),
                    TyKind::Prod(_, b) => Ok((Term::snd(t), b.as_ref().clone())),
                    _ => Err(diag(
                        DiagnosticKind::TypeMismatch,
                        p.span,
                        format!("projecting out of non-pair type {ty}"),
                    )),
                }
            }
            ExprKind::Nand => {
                need(Stage::Dyn, "nand")?;
                Ok((Term::Nand, Ty::circ(phase, 2, 1)))
            }
            ExprKind::Par(l, r) => {
                need(Stage::Dyn, "par")?;
                let (lt, (i1, o1)) = self.synth_circ(l)?;
                let (rt, (i2, o2)) = self.synth_circ(r)?;
                Ok((Term::par(lt, rt), Ty::circ(phase, i1 + i2, o1 + o2)))
            }
            ExprKind::Seq(l, r) => {
                need(Stage::Dyn, "seq")?;
                let (lt, (i, m1)) = self.synth_circ(l)?;
                let (rt, (m2, o)) = self.synth_circ(r)?;
                if m1 != m2 {
                    return Err(diag(
                        DiagnosticKind::ArityError,
                        span,
                        format!("first circuit has {m1} outputs but second has {m2} inputs"),
                    ));
                }
                Ok((Term::seq(lt, rt), Ty::circ(phase, i, o)))
            }
            ExprKind::Mix(_) => {
                need(Stage::Dyn, "mix")?;
                Err(diag(
                    DiagnosticKind::AnnotationRequired,
                    span,
                    "cannot infer the input arity of `mix`; write `(mix [..] : Circ i o)`",
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{catalogue, pretty_term};
    use crate::surface::{parse, parse_expr};

    fn src(stage: Stage) -> Ty {
        Ty::base(Phase::Src, stage)
    }

    fn only(text: &str) -> Result<Elaborated, Diagnostic> {
        elaborate(&parse(text).unwrap(), Options::default()).map(|mut v| v.pop().unwrap())
    }

    fn kind(text: &str) -> DiagnosticKind {
        only(text).unwrap_err().kind
    }

    #[test]
    fn identity_def() {
        let d = only("def id : (Base@d -> Base@d) = \\x. x;").unwrap();
        assert_eq!(d.term, Term::lam(src(Stage::Dyn), Term::var(0)));
        assert_eq!(d.ty, Ty::arrow(src(Stage::Dyn), src(Stage::Dyn)));
    }

    #[test]
    fn spliced_identity_application() {
        let a = src(Stage::Dyn);
        let aa = Ty::arrow(a.clone(), a.clone());
        let d = only("def t : Base@d -> Base@d = ~(idSta <idDyn>);").unwrap();
        let expected = Term::splice(Term::app(
            identity(Ty::lift(aa.clone())),
            Term::quote(identity(a.clone())),
        ));
        assert_eq!(d.term, expected);
    }

    #[test]
    fn pair_in_dynamic_def() {
        assert_eq!(kind("def p : Nat@d = (zero, zero);"), DiagnosticKind::StageError);
    }

    #[test]
    fn static_in_dynamic_position() {
        let e = only("def b : Up Nat@d = <true>;").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::StageError);
        assert!(e.message.contains("static construct"), "{}", e.message);
        assert_eq!(kind("def n : Nat@s = ~<zero>;"), DiagnosticKind::StageError);
        assert_eq!(kind("def q : Nat@s -> Nat@s = \\x. nand;"), DiagnosticKind::StageError);
    }

    #[test]
    fn unannotated_lambda_in_synthesis_position() {
        assert_eq!(kind("def n : Nat@s = fst (\\x. x, zero);"), DiagnosticKind::AnnotationRequired);
        assert!(only("def n : Nat@s = (\\x. x) zero;").is_ok());
        let d = only("def n : Nat@s = (\\(x : Nat@s). succ x) zero;").unwrap();
        assert_eq!(d.ty, Ty::nat(Phase::Src, Stage::Sta));
    }

    #[test]
    fn unbound_and_duplicate() {
        let e = only("def f : Nat@s = y;").unwrap_err();
        assert_eq!((e.kind, e.span), (DiagnosticKind::UnboundIdentifier, Span::new(1, 17)));
        assert_eq!(kind("def a : Nat@s = zero; def a : Nat@s = zero;"), DiagnosticKind::DuplicateDef);
    }

    #[test]
    fn literals_follow_stage_marks() {
        let d = only("def n : Nat@d = 3@d;").unwrap();
        assert_eq!(d.term.as_numeral(), Some(3));
        assert_eq!(kind("def n : Nat@d = 3@s;"), DiagnosticKind::StageError);
    }

    #[test]
    fn defs_are_inlined_and_weakened() {
        let ds = elaborate(
            &parse("def two : Nat@s = 2@s; def f : Nat@s -> Nat@s = \\x. add x two;").unwrap(),
            Options::default(),
        )
        .unwrap();
        let f = &ds[1].term;
        assert_eq!(
            *f,
            Term::lam(
                Ty::nat(Phase::Src, Stage::Sta),
                Term::apps(add(Phase::Src, Stage::Sta), [Term::var(0), numeral(2)])
            )
        );
    }

    #[test]
    fn circuit_arity_checks() {
        assert!(only("def c : Circ 1 1 = seq (mix [0,0]) nand;").is_ok());
        assert_eq!(kind("def c : Circ 1 1 = seq (mix [0,0,0]) nand;"), DiagnosticKind::ArityError);
        assert_eq!(kind("def c : Circ 1 2 = mix [0,1];"), DiagnosticKind::ArityError);
        assert_eq!(kind("def c : Circ 2 2 = par (mix [0]) (mix [0]);"), DiagnosticKind::AnnotationRequired);
        assert!(only("def c : Circ 3 2 = par nand (mix [0]);").is_ok());
        assert!(only("def c : Circ 3 2 = par (mix [0]) nand;").is_ok());
    }

    #[test]
    fn circuit_profile() {
        let p = parse("def f : Circ 1 1 -> Circ 1 1 = \\c. c;").unwrap();
        let opts = Options { profile: Profile::Circuit, ..Options::default() };
        assert_eq!(elaborate(&p, opts).unwrap_err().kind, DiagnosticKind::ProfileViolation);
        assert!(elaborate(&p, Options::default()).is_ok());
        let ok = parse("def n : Circ 1 1 = not; def d : Up (Circ 1 1) -> Up (Circ 1 1) = \\c. c;").unwrap();
        assert!(elaborate(&ok, opts).is_ok());
    }

    #[test]
    fn staged_phase() {
        let stg = Options { phase: Phase::Stg, ..Options::default() };
        let p = parse("def id : Base@d -> Base@d = (\\x. x);").unwrap();
        let d = elaborate(&p, stg).unwrap().pop().unwrap();
        assert_eq!(d.ty.phase, Phase::Stg);
        for bad in ["def n : Nat@s = zero;", "def b : Up Nat@d = <zero>;", "def c : Circ 1 1 = not;", "def c : Circ 2 1 = and;"] {
            assert_eq!(elaborate(&parse(bad).unwrap(), stg).unwrap_err().kind, DiagnosticKind::PhaseError, "{bad}");
        }
        assert!(elaborate(&parse("def s : Circ 2 2 = swap;").unwrap(), stg).is_ok());
    }

    #[test]
    fn catalogue_round_trips() {
        for b in catalogue() {
            let text = pretty_term(&b.term);
            let e = parse_expr(&text).unwrap();
            let t = elaborate_expr(&e, &b.ty, Options::default())
                .unwrap_or_else(|d| panic!("{}: {d}\n{text}", b.name));
            assert_eq!(t, b.term, "{}", b.name);
        }
    }

    #[test]
    fn deterministic_first_error() {
        let text = "def a : Nat@s = q; def b : Nat@s = r;";
        assert_eq!(only(text).unwrap_err(), only(text).unwrap_err());
    }
}
