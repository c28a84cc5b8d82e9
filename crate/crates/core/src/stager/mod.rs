//! Staging by evaluation into a Kripke model.

mod eval;
mod model;

use thiserror::Error;

use crate::kernel::ValidationError;

pub use eval::{body, eval, stage};
pub use model::{
    extend, iterate, kripke, sem_app, try_iterate, wk_kripke, wk_static, wk_value, Boxed, Env,
    EnvExtension, Kripke, SemFn, Static, Value,
};

#[derive(Debug, Error)]
pub enum StageError {
    /// The input term does not validate.
    #[error("{0}")]
    Invalid(#[from] ValidationError),
    /// Evaluation reached a configuration typing rules out.
    #[error("internal error: evaluation is stuck: {0}")]
    Stuck(String),
    /// The staged output fails validation.
    #[error("internal error: staged term does not validate: {0}")]
    Residual(ValidationError),
}

impl StageError {
    /// Whether this signals a bug rather than a bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(self, StageError::Invalid(_))
    }
}
