use std::fmt;

use crate::kernel::Stage;

/// 1-based line and column of a token.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn new(line: usize, col: usize) -> Span {
        Span { line, col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TyExpr {
    pub span: Span,
    pub kind: TyExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TyExprKind {
    Base(Stage),
    Nat(Stage),
    Bool,
    Up(Box<TyExpr>),
    Circ(usize, usize),
    Arrow(Box<TyExpr>, Box<TyExpr>),
    Prod(Box<TyExpr>, Box<TyExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub span: Span,
    pub kind: ExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Ident(String),
    Lam(String, Option<TyExpr>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Quote(Box<Expr>),
    Splice(Box<Expr>),
    Zero,
    Succ(Box<Expr>),
    Iter(Box<Expr>, Box<Expr>, Box<Expr>),
    True,
    False,
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Fst(Box<Expr>),
    Snd(Box<Expr>),
    Nand,
    Par(Box<Expr>, Box<Expr>),
    Seq(Box<Expr>, Box<Expr>),
    Mix(Vec<usize>),
    /// Numeral literal such as `7@s`.
    Lit(u64, Stage),
    Ann(Box<Expr>, TyExpr),
}

impl Expr {
    pub fn new(span: Span, kind: ExprKind) -> Expr {
        Expr { span, kind }
    }

    pub fn children(&self) -> Vec<&Expr> {
        use ExprKind::*;
        match &self.kind {
            Ident(_) | Zero | True | False | Nand | Mix(_) | Lit(..) => vec![],
            Lam(_, _, a) | Quote(a) | Splice(a) | Succ(a) | Fst(a) | Snd(a) | Ann(a, _) => {
                vec![a]
            }
            App(a, b) | Pair(a, b) | Par(a, b) | Seq(a, b) => vec![a, b],
            Iter(a, b, c) | If(a, b, c) => vec![a, b, c],
        }
    }
}

fn take_children(kind: &mut ExprKind, out: &mut Vec<Expr>) {
    use ExprKind::*;
    match std::mem::replace(kind, Zero) {
        Ident(_) | Zero | True | False | Nand | Mix(_) | Lit(..) => {}
        Lam(_, _, a) | Quote(a) | Splice(a) | Succ(a) | Fst(a) | Snd(a) | Ann(a, _) => {
            out.push(*a)
        }
        App(a, b) | Pair(a, b) | Par(a, b) | Seq(a, b) => out.extend([*a, *b]),
        Iter(a, b, c) | If(a, b, c) => out.extend([*a, *b, *c]),
    }
}

impl Drop for Expr {
    fn drop(&mut self) {
        let mut pending = Vec::new();
        take_children(&mut self.kind, &mut pending);
        while let Some(mut e) = pending.pop() {
            take_children(&mut e.kind, &mut pending);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Def {
    pub name: String,
    pub span: Span,
    pub ty: TyExpr,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Program {
    pub defs: Vec<Def>,
}

impl Program {
    pub fn def(&self, name: &str) -> Option<&Def> {
        self.defs.iter().find(|d| d.name == name)
    }
}
