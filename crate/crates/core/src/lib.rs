//! A staging compiler for a two-level simply typed calculus.
//!
//! Source programs mix a static (compile-time) layer and a dynamic (runtime)
//! layer through quotes and splices. [`stager::stage`] evaluates every static
//! subterm away, producing residual dynamic code; dynamic circuit terms can
//! then be flattened, simulated, and rendered by [`circuits`].
//!
//! - [`kernel`]: types, contexts, de Bruijn terms, validation, printing, and
//!   the builtin library.
//! - [`ope`]: order-preserving embeddings and weakening.
//! - [`stager`]: the Kripke model and evaluator.
//! - [`circuits`]: netlists, simulation, truth tables, DOT output.
//! - [`surface`]: concrete syntax and elaboration.

pub mod circuits;
pub mod kernel;
pub mod ope;
pub mod stager;
pub mod surface;

pub use kernel::{Phase, Stage, Term, Ty};
pub use stager::stage;
