//! Concrete syntax: lexing, parsing, name resolution, and bidirectional
//! elaboration into kernel terms.
//!
//! ```text
//! def add42 : Up Nat@d = reify (add 7@s 35@s);
//! ```

mod ast;
mod elaborate;
mod lexer;
mod parser;
mod resolve;

use std::fmt;

use thiserror::Error;

pub use ast::{Def, Expr, ExprKind, Program, Span, TyExpr, TyExprKind};
pub use elaborate::{
    elaborate, elaborate_expr, elaborate_type, Elaborated, Options, Profile,
};
pub use lexer::{lex, Tok, Token};
pub use parser::{is_keyword, parse, parse_expr, parse_type, KEYWORDS};
pub use resolve::{lookup, resolve, Resolution, Resolved};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    SyntaxError,
    TypeMismatch,
    StageError,
    PhaseError,
    UnboundIdentifier,
    AnnotationRequired,
    ArityError,
    DuplicateDef,
    ProfileViolation,
    IllFormedType,
    UnknownDef,
    /// Elaborated output failed kernel validation.
    Internal,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DiagnosticKind::*;
        f.write_str(match self {
            SyntaxError => "syntax error",
            TypeMismatch => "type mismatch",
            StageError => "stage error",
            PhaseError => "phase error",
            UnboundIdentifier => "unbound identifier",
            AnnotationRequired => "annotation required",
            ArityError => "arity error",
            DuplicateDef => "duplicate definition",
            ProfileViolation => "profile violation",
            IllFormedType => "ill-formed type",
            UnknownDef => "unknown definition",
            Internal => "internal error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {kind}: {message}")]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { kind, span, message: message.into() }
    }

    pub fn is_internal(&self) -> bool {
        self.kind == DiagnosticKind::Internal
    }
}
