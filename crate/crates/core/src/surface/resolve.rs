use crate::kernel::{Var, BUILTIN_NAMES};

use super::ast::{Expr, ExprKind, Span};
use super::{Diagnostic, DiagnosticKind};

/// What an identifier refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Local(Var),
    Def(String),
    Builtin(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolved {
    pub span: Span,
    pub name: String,
    pub resolution: Resolution,
}

/// Looks a name up: innermost local binder first, then earlier defs, then
/// builtins. `locals` lists binder names outermost first.
pub fn lookup<S: AsRef<str>>(locals: &[S], defs: &[&str], name: &str) -> Option<Resolution> {
    if let Some(pos) = locals.iter().rposition(|l| l.as_ref() == name) {
        return Some(Resolution::Local(Var(locals.len() - 1 - pos)));
    }
    if defs.contains(&name) {
        return Some(Resolution::Def(name.to_owned()));
    }
    BUILTIN_NAMES.iter().find(|b| **b == name).map(|b| Resolution::Builtin(b))
}

pub(crate) fn unbound(span: Span, name: &str) -> Diagnostic {
    Diagnostic::new(DiagnosticKind::UnboundIdentifier, span, format!("unbound identifier `{name}`"))
}

/// Scope-checks a closed expression, returning the resolution of every
/// identifier occurrence in source order.
pub fn resolve(e: &Expr, defs: &[&str]) -> Result<Vec<Resolved>, Diagnostic> {
    let mut out = Vec::new();
    let mut locals: Vec<&str> = Vec::new();
    walk(e, defs, &mut locals, &mut out)?;
    Ok(out)
}

fn walk<'e>(
    e: &'e Expr,
    defs: &[&str],
    locals: &mut Vec<&'e str>,
    out: &mut Vec<Resolved>,
) -> Result<(), Diagnostic> {
    stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || match &e.kind {
        ExprKind::Ident(name) => {
            let resolution = lookup(locals, defs, name).ok_or_else(|| unbound(e.span, name))?;
            out.push(Resolved { span: e.span, name: name.clone(), resolution });
            Ok(())
        }
        ExprKind::Lam(x, _, body) => {
            locals.push(x);
            let r = walk(body, defs, locals, out);
            locals.pop();
            r
        }
        _ => e.children().into_iter().try_for_each(|c| walk(c, defs, locals, out)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_expr;

    fn first(src: &str) -> Resolution {
        resolve(&parse_expr(src).unwrap(), &[]).unwrap().remove(0).resolution
    }

    #[test]
    fn outer_binder() {
        assert_eq!(first("\\x. \\y. x"), Resolution::Local(Var(1)));
    }

    #[test]
    fn shadowing() {
        assert_eq!(first("\\x. \\x. x"), Resolution::Local(Var(0)));
    }

    #[test]
    fn free_name() {
        let e = resolve(&parse_expr("\\x. z").unwrap(), &[]).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::UnboundIdentifier);
        assert_eq!(e.span, Span::new(1, 5));
    }

    #[test]
    fn defs_then_builtins() {
        let r = resolve(&parse_expr("add not").unwrap(), &["not"]).unwrap();
        assert_eq!(r[0].resolution, Resolution::Builtin("add"));
        assert_eq!(r[1].resolution, Resolution::Def("not".into()));
        assert_eq!(first("\\add. add"), Resolution::Local(Var(0)));
    }
}
