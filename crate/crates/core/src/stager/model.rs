//! The semantic domain: boxes over context extensions, Kripke function
//! spaces, stage-indexed values, and environments.

use std::fmt;
use std::rc::Rc;

use crate::kernel::{Term, Var};
use crate::ope::{wk_term, Ope};

use super::StageError;

/// A value available in every extension of a context of length `ctx_len`.
pub struct Boxed<T> {
    ctx_len: usize,
    run: Rc<dyn Fn(&Ope) -> T>,
}

impl<T> Clone for Boxed<T> {
    fn clone(&self) -> Self {
        Boxed { ctx_len: self.ctx_len, run: Rc::clone(&self.run) }
    }
}

impl<T: 'static> Boxed<T> {
    pub fn new(ctx_len: usize, run: impl Fn(&Ope) -> T + 'static) -> Self {
        Boxed { ctx_len, run: Rc::new(run) }
    }

    /// A box ignoring the extension it is run at.
    pub fn constant(ctx_len: usize, value: T) -> Self
    where
        T: Clone,
    {
        Boxed::new(ctx_len, move |_| value.clone())
    }

    pub fn ctx_len(&self) -> usize {
        self.ctx_len
    }

    /// Runs the box along `sigma`, which must start from the box's context.
    pub fn run(&self, sigma: &Ope) -> T {
        assert_eq!(
            sigma.source_len(),
            self.ctx_len,
            "box over a context of length {} run along {:?}",
            self.ctx_len,
            sigma
        );
        (self.run)(sigma)
    }

    pub fn extract(&self) -> T {
        self.run(&Ope::id(self.ctx_len))
    }

    pub fn duplicate(&self) -> Boxed<Boxed<T>> {
        let inner = self.clone();
        Boxed::new(self.ctx_len, move |sigma| {
            let inner = inner.clone();
            let sigma = sigma.clone();
            Boxed::new(sigma.target_len(), move |tau| {
                inner.run(&sigma.then(tau).expect("box run along a composable extension"))
            })
        })
    }

    /// Transports the box to the target of `sigma` by precomposition.
    pub fn weaken(&self, sigma: &Ope) -> Boxed<T> {
        let inner = self.clone();
        let sigma = sigma.clone();
        Boxed::new(sigma.target_len(), move |tau| {
            inner.run(&sigma.then(tau).expect("box run along a composable extension"))
        })
    }
}

pub type SemFn = Rc<dyn Fn(Value) -> Result<Value, StageError>>;

/// Functions inside a box: usable at every extension of their context.
pub type Kripke = Boxed<SemFn>;

/// Builds a Kripke function from the body `f(sigma, value)`.
pub fn kripke(
    ctx_len: usize,
    f: impl Fn(&Ope, Value) -> Result<Value, StageError> + 'static,
) -> Kripke {
    let f = Rc::new(f);
    Boxed::new(ctx_len, move |sigma| {
        let f = Rc::clone(&f);
        let sigma = sigma.clone();
        Rc::new(move |v| f(&sigma, v)) as SemFn
    })
}

/// Semantic application: the function instantiated at its own context.
pub fn sem_app(f: &Kripke, v: Value) -> Result<Value, StageError> {
    (f.extract())(v)
}

pub fn wk_kripke(sigma: &Ope, f: &Kripke) -> Kripke {
    f.weaken(sigma)
}

/// A value at a given stage: staged terms at `Dyn`, static values at `Sta`.
#[derive(Clone)]
pub enum Value {
    Dyn(Term),
    Sta(Static),
}

/// Static values, by induction on the static type. There is no variant for
/// the base type, which has no static inhabitants.
#[derive(Clone)]
pub enum Static {
    Nat(u64),
    Bool(bool),
    /// A lifted type: a staged term of the underlying dynamic type.
    Code(Term),
    Fun(Kripke),
    Pair(Box<Static>, Box<Static>),
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Dyn(t) => f.debug_tuple("Dyn").field(t).finish(),
            Value::Sta(s) => f.debug_tuple("Sta").field(s).finish(),
        }
    }
}

impl fmt::Debug for Static {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Static::Nat(n) => f.debug_tuple("Nat").field(n).finish(),
            Static::Bool(b) => f.debug_tuple("Bool").field(b).finish(),
            Static::Code(t) => f.debug_tuple("Code").field(t).finish(),
            Static::Fun(k) => write!(f, "Fun(<kripke over {}>)", k.ctx_len()),
            Static::Pair(a, b) => f.debug_tuple("Pair").field(a).field(b).finish(),
        }
    }
}

impl Value {
    pub fn into_dyn(self) -> Result<Term, StageError> {
        match self {
            Value::Dyn(t) => Ok(t),
            Value::Sta(s) => Err(StageError::Stuck(format!("expected a dynamic value, found {s:?}"))),
        }
    }

    pub fn into_static(self) -> Result<Static, StageError> {
        match self {
            Value::Sta(s) => Ok(s),
            Value::Dyn(t) => Err(StageError::Stuck(format!("expected a static value, found {t:?}"))),
        }
    }

    /// Structural equality where decidable; Kripke functions never compare
    /// equal.
    pub fn same(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Dyn(a), Value::Dyn(b)) => a == b,
            (Value::Sta(a), Value::Sta(b)) => a.same(b),
            _ => false,
        }
    }
}

impl Static {
    fn stuck(&self, want: &str) -> StageError {
        StageError::Stuck(format!("expected a static {want}, found {self:?}"))
    }

    pub fn as_nat(&self) -> Result<u64, StageError> {
        match self {
            Static::Nat(n) => Ok(*n),
            other => Err(other.stuck("natural")),
        }
    }

    pub fn as_bool(&self) -> Result<bool, StageError> {
        match self {
            Static::Bool(b) => Ok(*b),
            other => Err(other.stuck("boolean")),
        }
    }

    pub fn into_code(self) -> Result<Term, StageError> {
        match self {
            Static::Code(t) => Ok(t),
            other => Err(other.stuck("code fragment")),
        }
    }

    pub fn into_fun(self) -> Result<Kripke, StageError> {
        match self {
            Static::Fun(k) => Ok(k),
            other => Err(other.stuck("function")),
        }
    }

    pub fn into_pair(self) -> Result<(Static, Static), StageError> {
        match self {
            Static::Pair(a, b) => Ok((*a, *b)),
            other => Err(other.stuck("pair")),
        }
    }

    pub fn same(&self, other: &Static) -> bool {
        match (self, other) {
            (Static::Nat(a), Static::Nat(b)) => a == b,
            (Static::Bool(a), Static::Bool(b)) => a == b,
            (Static::Code(a), Static::Code(b)) => a == b,
            (Static::Pair(a1, b1), Static::Pair(a2, b2)) => a1.same(a2) && b1.same(b2),
            _ => false,
        }
    }
}

pub fn wk_value(sigma: &Ope, v: &Value) -> Value {
    match v {
        Value::Dyn(t) => Value::Dyn(wk_term(sigma, t)),
        Value::Sta(s) => Value::Sta(wk_static(sigma, s)),
    }
}

pub fn wk_static(sigma: &Ope, s: &Static) -> Static {
    match s {
        Static::Nat(n) => Static::Nat(*n),
        Static::Bool(b) => Static::Bool(*b),
        Static::Code(t) => Static::Code(wk_term(sigma, t)),
        Static::Fun(k) => Static::Fun(wk_kripke(sigma, k)),
        Static::Pair(a, b) => {
            Static::Pair(Box::new(wk_static(sigma, a)), Box::new(wk_static(sigma, b)))
        }
    }
}

/// Values for every variable of a source context, living over a staged
/// context of length `target_len`.
#[derive(Clone, Debug)]
pub struct Env {
    target_len: usize,
    /// Outermost variable first.
    values: Rc<Vec<Value>>,
}

impl Env {
    /// The environment for the empty source context.
    pub fn empty(target_len: usize) -> Env {
        Env { target_len, values: Rc::new(Vec::new()) }
    }

    /// Builds an environment from values listed outermost first.
    pub fn from_values(target_len: usize, values: Vec<Value>) -> Env {
        Env { target_len, values: Rc::new(values) }
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn source_len(&self) -> usize {
        self.values.len()
    }

    pub fn lookup(&self, v: Var) -> Result<Value, StageError> {
        self.values
            .len()
            .checked_sub(v.0 + 1)
            .map(|i| self.values[i].clone())
            .ok_or_else(|| {
                StageError::Stuck(format!(
                    "variable {} outside an environment of {} values",
                    v.0,
                    self.values.len()
                ))
            })
    }
}

pub type EnvExtension = Rc<dyn Fn(Value) -> Env>;

/// Transports `env` along the box's embedding and binds the new variable to
/// the supplied value.
pub fn extend(env: &Env) -> Boxed<EnvExtension> {
    let env = env.clone();
    Boxed::new(env.target_len, move |sigma| {
        let moved: Vec<Value> = env.values.iter().map(|v| wk_value(sigma, v)).collect();
        let target_len = sigma.target_len();
        Rc::new(move |v| {
            let mut values = moved.clone();
            values.push(v);
            Env { target_len, values: Rc::new(values) }
        }) as EnvExtension
    })
}

/// Applies `step` to `zero`, `n` times.
pub fn iterate<V>(n: u64, zero: V, step: impl FnMut(V) -> V) -> V {
    let mut step = step;
    (0..n).fold(zero, |acc, _| step(acc))
}

/// Fallible [`iterate`].
pub fn try_iterate<V, E>(n: u64, zero: V, step: impl FnMut(V) -> Result<V, E>) -> Result<V, E> {
    let mut step = step;
    (0..n).try_fold(zero, |acc, _| step(acc))
}
