use super::ast::{Def, Expr, ExprKind, Program, Span, TyExpr, TyExprKind};
use super::lexer::{lex, Tok, Token};
use super::{Diagnostic, DiagnosticKind};

pub const KEYWORDS: &[&str] = &[
    "def", "zero", "succ", "iter", "true", "false", "if", "then", "else", "fst", "snd", "nand",
    "par", "seq", "mix", "Base", "Nat", "Bool", "Up", "Circ",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Parses a whole `.2lt` file.
pub fn parse(src: &str) -> Result<Program, Diagnostic> {
    let mut p = Parser::new(src)?;
    let mut defs = Vec::new();
    while p.peek() != &Tok::Eof {
        defs.push(p.def()?);
    }
    Ok(Program { defs })
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(e)
}

/// Parses a single type.
pub fn parse_type(src: &str) -> Result<TyExpr, Diagnostic> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, Diagnostic> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn error(&self, expected: &str) -> Diagnostic {
        Diagnostic::new(
            DiagnosticKind::SyntaxError,
            self.span(),
            format!("expected {expected}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Span, Diagnostic> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<Span, Diagnostic> {
        if self.is_kw(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn name(&mut self) -> Result<(String, Span), Diagnostic> {
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => {
                let s = s.clone();
                Ok((s, self.bump().span))
            }
            _ => Err(self.error("a name")),
        }
    }

    fn number(&mut self) -> Result<usize, Diagnostic> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                usize::try_from(n).map_err(|_| self.error("a smaller number"))
            }
            _ => Err(self.error("a number")),
        }
    }

    fn def(&mut self) -> Result<Def, Diagnostic> {
        self.expect_kw("def")?;
        let (name, span) = self.name()?;
        self.expect(Tok::Colon, "`:`")?;
        let ty = self.ty()?;
        self.expect(Tok::Eq, "`=`")?;
        let body = self.expr()?;
        self.expect(Tok::Semi, "`;`")?;
        Ok(Def { name, span, ty, body })
    }

    fn ty(&mut self) -> Result<TyExpr, Diagnostic> {
        let left = self.prod_ty()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.ty()?;
            Ok(TyExpr { span: left.span, kind: TyExprKind::Arrow(Box::new(left), Box::new(right)) })
        } else {
            Ok(left)
        }
    }

    fn prod_ty(&mut self) -> Result<TyExpr, Diagnostic> {
        let left = self.app_ty()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let right = self.prod_ty()?;
            Ok(TyExpr { span: left.span, kind: TyExprKind::Prod(Box::new(left), Box::new(right)) })
        } else {
            Ok(left)
        }
    }

    fn app_ty(&mut self) -> Result<TyExpr, Diagnostic> {
        let span = self.span();
        if self.is_kw("Up") {
            self.bump();
            let inner = self.atom_ty()?;
            Ok(TyExpr { span, kind: TyExprKind::Up(Box::new(inner)) })
        } else if self.is_kw("Circ") {
            self.bump();
            let i = self.number()?;
            let o = self.number()?;
            Ok(TyExpr { span, kind: TyExprKind::Circ(i, o) })
        } else {
            self.atom_ty()
        }
    }

    fn atom_ty(&mut self) -> Result<TyExpr, Diagnostic> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Tok::Marked(s, st) if s == "Base" => TyExprKind::Base(st),
            Tok::Marked(s, st) if s == "Nat" => TyExprKind::Nat(st),
            Tok::Ident(s) if s == "Bool" => TyExprKind::Bool,
            Tok::Ident(s) if s == "Base" || s == "Nat" => {
                return Err(Diagnostic::new(
                    DiagnosticKind::SyntaxError,
                    span,
                    format!("`{s}` needs a stage mark `@s` or `@d`"),
                ))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(t);
            }
            _ => return Err(self.error("a type")),
        };
        self.bump();
        Ok(TyExpr { span, kind })
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || self.expr_inner())
    }

    fn expr_inner(&mut self) -> Result<Expr, Diagnostic> {
        let span = self.span();
        if *self.peek() == Tok::Backslash {
            self.bump();
            let (name, ann) = if *self.peek() == Tok::LParen {
                self.bump();
                let (name, _) = self.name()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                (name, Some(ty))
            } else {
                (self.name()?.0, None)
            };
            self.expect(Tok::Dot, "`.`")?;
            let body = self.expr()?;
            return Ok(Expr::new(span, ExprKind::Lam(name, ann, Box::new(body))));
        }
        if self.is_kw("if") {
            self.bump();
            let c = self.expr()?;
            self.expect_kw("then")?;
            let a = self.expr()?;
            self.expect_kw("else")?;
            let b = self.expr()?;
            return Ok(Expr::new(span, ExprKind::If(Box::new(c), Box::new(a), Box::new(b))));
        }
        let mut head = self.head()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Expr::new(span, ExprKind::App(Box::new(head), Box::new(arg)));
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => {
                !is_keyword(s) || matches!(s.as_str(), "zero" | "true" | "false" | "nand")
            }
            Tok::Lit(..) | Tok::Lt | Tok::Tilde | Tok::LParen => true,
            _ => false,
        }
    }

    fn head(&mut self) -> Result<Expr, Diagnostic> {
        let span = self.span();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.atom(),
        };
        let boxed = |p: &mut Parser| p.atom().map(Box::new);
        let kind = match kw.as_str() {
            "succ" => {
                self.bump();
                ExprKind::Succ(boxed(self)?)
            }
            "fst" => {
                self.bump();
                ExprKind::Fst(boxed(self)?)
            }
            "snd" => {
                self.bump();
                ExprKind::Snd(boxed(self)?)
            }
            "iter" => {
                self.bump();
                ExprKind::Iter(boxed(self)?, boxed(self)?, boxed(self)?)
            }
            "par" => {
                self.bump();
                ExprKind::Par(boxed(self)?, boxed(self)?)
            }
            "seq" => {
                self.bump();
                ExprKind::Seq(boxed(self)?, boxed(self)?)
            }
            "mix" => {
                self.bump();
                self.expect(Tok::LBracket, "`[`")?;
                let mut wires = Vec::new();
                if *self.peek() != Tok::RBracket {
                    wires.push(self.number()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        wires.push(self.number()?);
                    }
                }
                self.expect(Tok::RBracket, "`]`")?;
                ExprKind::Mix(wires)
            }
            _ => return self.atom(),
        };
        Ok(Expr::new(span, kind))
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || self.atom_inner())
    }

    fn atom_inner(&mut self) -> Result<Expr, Diagnostic> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Tok::Ident(s) => match s.as_str() {
                "zero" => ExprKind::Zero,
                "true" => ExprKind::True,
                "false" => ExprKind::False,
                "nand" => ExprKind::Nand,
                _ if is_keyword(&s) => return Err(self.error("an expression")),
                _ => ExprKind::Ident(s),
            },
            Tok::Lit(n, st) => ExprKind::Lit(n, st),
            Tok::Num(n) => {
                return Err(Diagnostic::new(
                    DiagnosticKind::SyntaxError,
                    span,
                    format!("numeral `{n}` needs a stage mark `@s` or `@d`"),
                ))
            }
            Tok::Lt => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::Gt, "`>`")?;
                return Ok(Expr::new(span, ExprKind::Quote(Box::new(e))));
            }
            Tok::Tilde => {
                self.bump();
                let e = self.atom()?;
                return Ok(Expr::new(span, ExprKind::Splice(Box::new(e))));
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                let kind = match self.peek() {
                    Tok::Comma => {
                        self.bump();
                        let r = self.expr()?;
                        ExprKind::Pair(Box::new(e), Box::new(r))
                    }
                    Tok::Colon => {
                        self.bump();
                        let ty = self.ty()?;
                        ExprKind::Ann(Box::new(e), ty)
                    }
                    Tok::RParen => {
                        self.bump();
                        return Ok(e);
                    }
                    _ => return Err(self.error("`,`, `:` or `)`")),
                };
                self.expect(Tok::RParen, "`)`")?;
                return Ok(Expr::new(span, kind));
            }
            _ => return Err(self.error("an expression")),
        };
        self.bump();
        Ok(Expr::new(span, kind))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip(e: &Expr) -> String {
        format!("{:?}", e.kind).replace(char::is_whitespace, "")
    }

    #[test]
    fn identity_def() {
        let p = parse("def id : (Base@d -> Base@d) = \\x. x;").unwrap();
        assert_eq!(p.defs.len(), 1);
        assert_eq!(p.defs[0].name, "id");
        assert!(matches!(p.defs[0].body.kind, ExprKind::Lam(ref x, None, _) if x == "x"));
        assert!(matches!(p.defs[0].ty.kind, TyExprKind::Arrow(..)));
    }

    #[test]
    fn numeral_def() {
        let p = parse("def n : Nat@s = succ (succ zero);").unwrap();
        match &p.defs[0].body.kind {
            ExprKind::Succ(a) => assert!(matches!(&a.kind, ExprKind::Succ(z) if z.kind == ExprKind::Zero)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_type_reports_first_equals() {
        let e = parse("def bad : = ;").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::SyntaxError);
        assert_eq!(e.span, Span::new(1, 11));
    }

    #[test]
    fn application_is_left_associative_and_splice_binds_tighter() {
        let e = parse_expr("f ~g x").unwrap();
        let s = strip(&e);
        assert!(s.starts_with("App(Expr{"), "{s}");
        match &e.kind {
            ExprKind::App(fg, x) => {
                assert_eq!(x.kind, ExprKind::Ident("x".into()));
                assert!(matches!(&fg.kind, ExprKind::App(_, g) if matches!(g.kind, ExprKind::Splice(_))));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn types_associate_right() {
        let t = parse_type("Nat@s * Nat@s -> Up (Circ 2 1) -> Bool").unwrap();
        match t.kind {
            TyExprKind::Arrow(a, b) => {
                assert!(matches!(a.kind, TyExprKind::Prod(..)));
                assert!(matches!(b.kind, TyExprKind::Arrow(..)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pairs_ascriptions_and_mix() {
        let e = parse_expr("((mix [1,0] : Circ 2 2), <nand>)").unwrap();
        match &e.kind {
            ExprKind::Pair(a, b) => {
                assert!(matches!(&a.kind, ExprKind::Ann(m, _) if m.kind == ExprKind::Mix(vec![1, 0])));
                assert!(matches!(b.kind, ExprKind::Quote(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unmarked_numeral_rejected() {
        let e = parse_expr("succ 3").unwrap_err();
        assert_eq!(e.span, Span::new(1, 6));
    }

    #[test]
    fn keyword_is_not_a_name() {
        assert!(parse("def if : Bool = true;").is_err());
        assert!(parse_expr("\\then. x").is_err());
    }

    #[test]
    fn deep_nesting() {
        let src = format!("{}zero{}", "succ (".repeat(20_000), ")".repeat(20_000));
        assert!(parse_expr(&src).is_ok());
    }
}
