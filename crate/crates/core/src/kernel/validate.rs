//! Re-checks the intrinsic indices of a term: phase, stage, type, and scope.

use std::fmt;

use thiserror::Error;

use super::term::Term;
use super::ty::{Ctx, Phase, Stage, Ty, TyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    StageViolation,
    PhaseViolation,
    ScopeViolation,
    TypeMismatch,
    ArityViolation,
    IllFormedType,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::StageViolation => "stage violation",
            ViolationKind::PhaseViolation => "phase violation",
            ViolationKind::ScopeViolation => "scope violation",
            ViolationKind::TypeMismatch => "type mismatch",
            ViolationKind::ArityViolation => "arity violation",
            ViolationKind::IllFormedType => "ill-formed type",
        })
    }
}

/// The first violating node, located by the path of constructor fields
/// leading to it from the root.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {}: {message}", display_path(path))]
pub struct ValidationError {
    pub kind: ViolationKind,
    pub path: Vec<&'static str>,
    pub message: String,
}

fn display_path(path: &[&'static str]) -> String {
    if path.is_empty() {
        "root".to_owned()
    } else {
        format!("root.{}", path.join("."))
    }
}

/// Checks that `t` is a term of type `ty` at `(phase, stage)` in `ctx`.
pub fn validate(
    t: &Term,
    phase: Phase,
    stage: Stage,
    ty: &Ty,
    ctx: &Ctx,
) -> Result<(), ValidationError> {
    let mut checker = Checker { phase, ctx: ctx.clone(), path: Vec::new() };
    checker.check_ty(ty)?;
    if ty.phase != phase {
        return Err(checker.fail(
            ViolationKind::PhaseViolation,
            format!("claimed type lives in phase {}, not {}", ty.phase, phase),
        ));
    }
    if ty.stage != stage {
        return Err(checker.fail(
            ViolationKind::StageViolation,
            format!("claimed type lives at stage {}, not {}", ty.stage, stage),
        ));
    }
    for entry in ctx.entries() {
        checker.check_ty(entry)?;
        if entry.phase != phase {
            return Err(checker.fail(
                ViolationKind::PhaseViolation,
                format!("context entry lives in phase {}, not {}", entry.phase, phase),
            ));
        }
    }
    checker.check(t, stage, ty)
}

/// Synthesizes the type of `t` at `(phase, stage)` in `ctx`.
pub fn synth_type(t: &Term, phase: Phase, stage: Stage, ctx: &Ctx) -> Result<Ty, ValidationError> {
    let mut checker = Checker { phase, ctx: ctx.clone(), path: Vec::new() };
    checker.synth(t, stage)
}

struct Checker {
    phase: Phase,
    ctx: Ctx,
    path: Vec<&'static str>,
}

impl Checker {
    fn fail(&self, kind: ViolationKind, message: impl Into<String>) -> ValidationError {
        ValidationError { kind, path: self.path.clone(), message: message.into() }
    }

    fn check_ty(&self, ty: &Ty) -> Result<(), ValidationError> {
        ty.well_formed()
            .map_err(|fault| self.fail(ViolationKind::IllFormedType, fault.to_string()))
    }

    fn under<T>(
        &mut self,
        field: &'static str,
        f: impl FnOnce(&mut Self) -> Result<T, ValidationError>,
    ) -> Result<T, ValidationError> {
        self.path.push(field);
        let out = f(self)?;
        self.path.pop();
        Ok(out)
    }

    fn require_stage(&self, what: &str, want: Stage, got: Stage) -> Result<(), ValidationError> {
        if want == got {
            Ok(())
        } else {
            Err(self.fail(
                ViolationKind::StageViolation,
                format!("{what} is only available at stage {want}, used at {got}"),
            ))
        }
    }

    fn require_src(&self, what: &str) -> Result<(), ValidationError> {
        if self.phase == Phase::Src {
            Ok(())
        } else {
            Err(self.fail(
                ViolationKind::PhaseViolation,
                format!("{what} only exists in the source phase"),
            ))
        }
    }

    fn check(&mut self, t: &Term, stage: Stage, expected: &Ty) -> Result<(), ValidationError> {
        let got = self.synth(t, stage)?;
        if &got == expected {
            Ok(())
        } else {
            Err(self.fail(
                ViolationKind::TypeMismatch,
                format!("expected {}, found {}", expected, got),
            ))
        }
    }

    fn circ(&mut self, field: &'static str, t: &Term) -> Result<(usize, usize), ValidationError> {
        self.under(field, |c| {
            let ty = c.synth(t, Stage::Dyn)?;
            ty.as_circ().ok_or_else(|| {
                c.fail(ViolationKind::TypeMismatch, format!("expected a circuit, found {ty}"))
            })
        })
    }

    fn synth(&mut self, t: &Term, stage: Stage) -> Result<Ty, ValidationError> {
        stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || self.synth_node(t, stage))
    }

    fn synth_node(&mut self, t: &Term, stage: Stage) -> Result<Ty, ValidationError> {
        let phase = self.phase;
        if !stage.legal_in(phase) {
            return Err(self.fail(
                ViolationKind::PhaseViolation,
                "the static stage does not exist in the staged phase",
            ));
        }
        match t {
            Term::Var(v) => {
                let ty = self.ctx.lookup(*v).cloned().ok_or_else(|| {
                    self.fail(
                        ViolationKind::ScopeViolation,
                        format!("index {} in a context of length {}", v.0, self.ctx.len()),
                    )
                })?;
                if ty.stage != stage {
                    return Err(self.fail(
                        ViolationKind::StageViolation,
                        format!("variable of stage {} used at stage {}", ty.stage, stage),
                    ));
                }
                Ok(ty)
            }
            Term::App(f, a) => {
                let fty = self.under("app.fun", |c| c.synth(f, stage))?;
                let (dom, cod) = match &fty.kind {
                    TyKind::Arrow(d, c) => (d.as_ref().clone(), c.as_ref().clone()),
                    _ => {
                        return Err(self.fail(
                            ViolationKind::TypeMismatch,
                            format!("applying a non-function of type {fty}"),
                        ))
                    }
                };
                self.under("app.arg", |c| c.check(a, stage, &dom))?;
                Ok(cod)
            }
            Term::Lam(dom, body) => {
                self.check_ty(dom)?;
                if dom.phase != phase {
                    return Err(self.fail(
                        ViolationKind::PhaseViolation,
                        format!("binder type lives in phase {}, not {}", dom.phase, phase),
                    ));
                }
                if dom.stage != stage {
                    return Err(self.fail(
                        ViolationKind::StageViolation,
                        format!("binder type lives at stage {}, not {}", dom.stage, stage),
                    ));
                }
                self.ctx.push(dom.clone());
                let cod = self.under("lam.body", |c| c.synth(body, stage));
                self.ctx.pop();
                Ok(Ty::arrow(dom.clone(), cod?))
            }
            Term::Quote(inner) => {
                self.require_src("quote")?;
                self.require_stage("quote", Stage::Sta, stage)?;
                let a = self.under("quote", |c| c.synth(inner, Stage::Dyn))?;
                Ok(Ty::lift(a))
            }
            Term::Splice(inner) => {
                self.require_src("splice")?;
                self.require_stage("splice", Stage::Dyn, stage)?;
                let lifted = self.under("splice", |c| c.synth(inner, Stage::Sta))?;
                match lifted.kind {
                    TyKind::Lift(a) => Ok(*a),
                    _ => Err(self.fail(
                        ViolationKind::TypeMismatch,
                        format!("splicing a non-lifted type {lifted}"),
                    )),
                }
            }
            Term::Zero => Ok(Ty::nat(phase, stage)),
            Term::Succ(n) => {
                self.under("succ", |c| c.check(n, stage, &Ty::nat(phase, stage)))?;
                Ok(Ty::nat(phase, stage))
            }
            Term::Iter(n, z, s) => {
                self.under("iter.count", |c| c.check(n, stage, &Ty::nat(phase, stage)))?;
                let a = self.under("iter.zero", |c| c.synth(z, stage))?;
                let step = Ty::arrow(a.clone(), a.clone());
                self.under("iter.step", |c| c.check(s, stage, &step))?;
                Ok(a)
            }
            Term::True | Term::False => {
                self.require_stage("boolean", Stage::Sta, stage)?;
                Ok(Ty::bool())
            }
            Term::If(cond, then, els) => {
                self.require_stage("if", Stage::Sta, stage)?;
                self.under("if.cond", |c| c.check(cond, stage, &Ty::bool()))?;
                let a = self.under("if.then", |c| c.synth(then, stage))?;
                self.under("if.else", |c| c.check(els, stage, &a))?;
                Ok(a)
            }
            Term::Pair(l, r) => {
                self.require_stage("pair", Stage::Sta, stage)?;
                let a = self.under("pair.fst", |c| c.synth(l, stage))?;
                let b = self.under("pair.snd", |c| c.synth(r, stage))?;
                Ok(Ty::prod(a, b))
            }
            Term::Fst(p) | Term::Snd(p) => {
                let (name, field) =
                    if matches!(t, Term::Fst(_)) { ("fst", "fst") } else { ("snd", "snd") };
                self.require_stage(name, Stage::Sta, stage)?;
                let pty = self.under(field, |c| c.synth(p, stage))?;
                match pty.kind {
                    TyKind::Prod(a, b) => Ok(if name == "fst" { *a } else { *b }),
                    _ => Err(self.fail(
                        ViolationKind::TypeMismatch,
                        format!("projecting out of non-pair type {pty}"),
                    )),
                }
            }
            Term::Nand => {
                self.require_stage("nand", Stage::Dyn, stage)?;
                Ok(Ty::circ(phase, 2, 1))
            }
            Term::Par(l, r) => {
                self.require_stage("par", Stage::Dyn, stage)?;
                let (i1, o1) = self.circ("par.left", l)?;
                let (i2, o2) = self.circ("par.right", r)?;
                Ok(Ty::circ(phase, i1 + i2, o1 + o2))
            }
            Term::Seq(l, r) => {
                self.require_stage("seq", Stage::Dyn, stage)?;
                let (i, m1) = self.circ("seq.left", l)?;
                let (m2, o) = self.circ("seq.right", r)?;
                if m1 != m2 {
                    return Err(self.fail(
                        ViolationKind::ArityViolation,
                        format!("first circuit has {m1} outputs but second has {m2} inputs"),
                    ));
                }
                Ok(Ty::circ(phase, i, o))
            }
            Term::Mix { inputs, wires } => {
                self.require_stage("mix", Stage::Dyn, stage)?;
                if let Some((j, w)) = wires.iter().enumerate().find(|(_, w)| **w >= *inputs) {
                    return Err(self.fail(
                        ViolationKind::ArityViolation,
                        format!("output {j} reads input {w} of a {inputs}-input mix"),
                    ));
                }
                Ok(Ty::circ(phase, *inputs, wires.len()))
            }
        }
    }
}
