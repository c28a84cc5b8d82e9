use std::rc::Rc;

use crate::kernel::{validate, Ctx, Phase, Stage, Term, Ty, Var};
use crate::ope::Ope;

use super::model::{extend, kripke, sem_app, try_iterate, Env, Kripke, Static, Value};
use super::StageError;

/// Evaluates a source term at `stage` under `env`.
///
/// Static constructs compute in the host; dynamic ones are rebuilt as staged
/// terms over the environment's target context.
pub fn eval(t: &Term, stage: Stage, env: &Env) -> Result<Value, StageError> {
    stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || eval_node(t, stage, env))
}

fn eval_dyn(t: &Term, env: &Env) -> Result<Box<Term>, StageError> {
    eval(t, Stage::Dyn, env)?.into_dyn().map(Box::new)
}

fn eval_sta(t: &Term, env: &Env) -> Result<Static, StageError> {
    eval(t, Stage::Sta, env)?.into_static()
}

fn wrong_stage(what: &str, stage: Stage) -> StageError {
    StageError::Stuck(format!("{what} evaluated at stage {stage}"))
}

fn eval_node(t: &Term, stage: Stage, env: &Env) -> Result<Value, StageError> {
    use Stage::*;
    match (t, stage) {
        (Term::Var(v), _) => env.lookup(*v),

        (Term::App(f, a), Sta) => {
            let f = eval_sta(f, env)?.into_fun()?;
            let a = eval(a, Sta, env)?;
            sem_app(&f, a)
        }
        (Term::App(f, a), Dyn) => Ok(Value::Dyn(Term::App(eval_dyn(f, env)?, eval_dyn(a, env)?))),

        (Term::Lam(_, b), Sta) => Ok(Value::Sta(Static::Fun(body(b, Sta, env)))),
        (Term::Lam(dom, b), Dyn) => {
            let dom = staged_domain(dom)?;
            // Instantiate the body one binder deeper at the fresh variable.
            let fresh = Ope::drop(Ope::id(env.target_len()));
            let inner = (body(b, Dyn, env).run(&fresh))(Value::Dyn(Term::Var(Var::HERE)))?;
            Ok(Value::Dyn(Term::Lam(dom, Box::new(inner.into_dyn()?))))
        }

        (Term::Quote(a), Sta) => Ok(Value::Sta(Static::Code(*eval_dyn(a, env)?))),
        (Term::Splice(a), Dyn) => Ok(Value::Dyn(eval_sta(a, env)?.into_code()?)),

        (Term::Zero, Sta) => Ok(Value::Sta(Static::Nat(0))),
        (Term::Zero, Dyn) => Ok(Value::Dyn(Term::Zero)),
        (Term::Succ(n), Sta) => {
            let n = eval_sta(n, env)?.as_nat()?;
            let m = n.checked_add(1).ok_or_else(|| StageError::Stuck("natural overflow".into()))?;
            Ok(Value::Sta(Static::Nat(m)))
        }
        (Term::Succ(n), Dyn) => Ok(Value::Dyn(Term::Succ(eval_dyn(n, env)?))),
        (Term::Iter(n, z, s), Sta) => {
            let n = eval_sta(n, env)?.as_nat()?;
            let z = eval(z, Sta, env)?;
            let s = eval_sta(s, env)?.into_fun()?;
            try_iterate(n, z, |acc| sem_app(&s, acc))
        }
        (Term::Iter(n, z, s), Dyn) => Ok(Value::Dyn(Term::Iter(
            eval_dyn(n, env)?,
            eval_dyn(z, env)?,
            eval_dyn(s, env)?,
        ))),

        (Term::True, Sta) => Ok(Value::Sta(Static::Bool(true))),
        (Term::False, Sta) => Ok(Value::Sta(Static::Bool(false))),
        (Term::If(c, a, b), Sta) => {
            if eval_sta(c, env)?.as_bool()? {
                eval(a, Sta, env)
            } else {
                eval(b, Sta, env)
            }
        }
        (Term::Pair(a, b), Sta) => Ok(Value::Sta(Static::Pair(
            Box::new(eval_sta(a, env)?),
            Box::new(eval_sta(b, env)?),
        ))),
        (Term::Fst(p), Sta) => Ok(Value::Sta(eval_sta(p, env)?.into_pair()?.0)),
        (Term::Snd(p), Sta) => Ok(Value::Sta(eval_sta(p, env)?.into_pair()?.1)),

        (Term::Nand, Dyn) => Ok(Value::Dyn(Term::Nand)),
        (Term::Par(l, r), Dyn) => Ok(Value::Dyn(Term::Par(eval_dyn(l, env)?, eval_dyn(r, env)?))),
        (Term::Seq(l, r), Dyn) => Ok(Value::Dyn(Term::Seq(eval_dyn(l, env)?, eval_dyn(r, env)?))),
        (Term::Mix { inputs, wires }, Dyn) => {
            Ok(Value::Dyn(Term::Mix { inputs: *inputs, wires: wires.clone() }))
        }

        (Term::Quote(_), Dyn) => Err(wrong_stage("quote", Dyn)),
        (Term::Splice(_), Sta) => Err(wrong_stage("splice", Sta)),
        (Term::True | Term::False | Term::If(..), Dyn) => Err(wrong_stage("boolean", Dyn)),
        (Term::Pair(..) | Term::Fst(_) | Term::Snd(_), Dyn) => Err(wrong_stage("pair", Dyn)),
        (Term::Nand | Term::Par(..) | Term::Seq(..) | Term::Mix { .. }, Sta) => {
            Err(wrong_stage("circuit", Sta))
        }
    }
}

fn staged_domain(dom: &Ty) -> Result<Ty, StageError> {
    if dom.phase == Phase::Stg {
        return Ok(dom.clone());
    }
    dom.as_staged()
        .ok_or_else(|| StageError::Stuck(format!("dynamic binder of non-dynamic type {dom}")))
}

/// The Kripke function evaluating `t` (one variable deeper than `env`'s
/// source) under the environment extended with its argument.
pub fn body(t: &Term, stage: Stage, env: &Env) -> Kripke {
    let t = Rc::new(t.clone());
    let extension = extend(env);
    kripke(env.target_len(), move |sigma, v| {
        let env = (extension.run(sigma))(v);
        eval(&t, stage, &env)
    })
}

/// Stages a closed source dynamic term of type `ty`, producing a staged term
/// of type `ty.as_staged()`.
pub fn stage(t: &Term, ty: &Ty) -> Result<Term, StageError> {
    validate(t, Phase::Src, Stage::Dyn, ty, &Ctx::empty())?;
    let out_ty = ty
        .as_staged()
        .ok_or_else(|| StageError::Stuck(format!("{ty} has no staged counterpart")))?;
    let out = eval(t, Stage::Dyn, &Env::empty(0))?.into_dyn()?;
    validate(&out, Phase::Stg, Stage::Dyn, &out_ty, &Ctx::empty())
        .map_err(StageError::Residual)?;
    Ok(out)
}
