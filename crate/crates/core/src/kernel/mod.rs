//! The unified two-level language: phases, stages, types, contexts, and
//! terms, with validation and printing.

mod builtins;
mod pretty;
mod term;
mod ty;
mod validate;

pub use builtins::{
    add, add_type, builtin, catalogue, diag, dup, id1, id2, identity, reify, swap, tab, Builtin,
    UnknownBuiltin, BUILTIN_NAMES,
};
pub use builtins::{and as and_gate, fib, not as not_gate, or as or_gate};
pub use pretty::{binder_name, pretty_term, pretty_term_synth, pretty_type};
pub use term::{compose, numeral, reindex_phase, Term};
pub use ty::{Ctx, Phase, Stage, Ty, TyFault, TyKind, Var};
pub use validate::{synth_type, validate, ValidationError, ViolationKind};
