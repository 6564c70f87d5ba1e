use super::ast::{Arg, BinOp, Expr, ExprKind, FieldSpec, Script, Stmt, StmtKind};
use super::lexer::{tokenize, Diagnostic, Span, Tok, Token};
use crate::algebra::Field;

pub fn parse(src: &str) -> Result<Script, Diagnostic> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut stmts = Vec::new();
    while !p.at(&Tok::Eof) {
        stmts.push(p.stmt()?);
    }
    Ok(Script { stmts })
}

/// Parses a single expression spanning the whole input.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn at(&self, t: &Tok) -> bool {
        &self.peek().tok == t
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn error(&self, expected: &[&str]) -> Diagnostic {
        let t = self.peek();
        Diagnostic {
            span: t.span,
            message: format!("unexpected {}", t.tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<Token, Diagnostic> {
        if self.at(&t) {
            Ok(self.bump())
        } else {
            let sym = format!("`{}`", t.symbol());
            Err(self.error(&[&sym]))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Span), Diagnostic> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, Diagnostic> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => Ok(self.bump().span),
            _ => Err(self.error(&[&format!("`{kw}`")])),
        }
    }

    fn stmt(&mut self) -> Result<Stmt, Diagnostic> {
        let start = self.peek().span;
        let Tok::Ident(head) = self.peek().tok.clone() else {
            return Err(self.error(&["statement"]));
        };
        let kind = match head.as_str() {
            "field" => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                let spec = self.field_spec()?;
                StmtKind::Field { name, spec }
            }
            "ring" => {
                self.bump();
                self.ring_decl()?
            }
            "module" => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                let (ctor, _) = self.ident()?;
                self.expect(Tok::LParen)?;
                let (ring, _) = self.ident()?;
                let mut args = Vec::new();
                while self.eat(&Tok::Comma) {
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                StmtKind::Module { name, ctor, ring, args }
            }
            "normalization" => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LParen)?;
                let (ring, _) = self.ident()?;
                self.expect(Tok::Semi)?;
                let thetas = if self.at(&Tok::RParen) { Vec::new() } else { self.expr_list()? };
                self.expect(Tok::RParen)?;
                StmtKind::Normalization { name, ring, thetas }
            }
            "primes" => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LBracket)?;
                let ideals = if self.at(&Tok::RBracket) { Vec::new() } else { self.expr_list()? };
                self.expect(Tok::RBracket)?;
                StmtKind::Primes { name, ideals }
            }
            "let" => {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                let value = self.expr()?;
                StmtKind::Let { name, value }
            }
            "assert" | "assert_not" => {
                self.bump();
                let expr = self.call_expr()?;
                StmtKind::Assert {
                    negated: head == "assert_not",
                    expr,
                }
            }
            "assert_equal" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let lhs = self.expr()?;
                self.expect(Tok::Comma)?;
                let rhs = self.expr()?;
                self.expect(Tok::RParen)?;
                StmtKind::AssertEqual { lhs, rhs }
            }
            _ => StmtKind::Command(self.call_expr()?),
        };
        Ok(Stmt {
            kind,
            span: start.to(self.prev_span()),
        })
    }

    fn call_expr(&mut self) -> Result<Expr, Diagnostic> {
        let e = self.expr()?;
        if e.call_name().is_none() {
            return Err(Diagnostic {
                span: e.span,
                message: "expected a command call".into(),
                expected: vec!["NAME(...)".into()],
            });
        }
        Ok(e)
    }

    fn field_spec(&mut self) -> Result<FieldSpec, Diagnostic> {
        let (name, _) = self.ident()?;
        match name.as_str() {
            "QQ" => Ok(FieldSpec::Rational),
            "GF" => {
                self.expect(Tok::LParen)?;
                let (p, span) = match &self.peek().tok {
                    Tok::Int(s) => (s.clone(), self.peek().span),
                    _ => return Err(self.error(&["integer"])),
                };
                self.bump();
                let prime = p.parse::<u64>().ok().is_some_and(|v| Field::prime(v).is_ok());
                if !prime {
                    return Err(Diagnostic::new(span, format!("GF({p}): {p} is not prime (or not below 2^31)")));
                }
                self.expect(Tok::RParen)?;
                Ok(FieldSpec::Prime(p))
            }
            _ => Ok(FieldSpec::Named(name)),
        }
    }

    fn ring_decl(&mut self) -> Result<StmtKind, Diagnostic> {
        let (name, _) = self.ident()?;
        self.expect(Tok::Eq)?;
        self.keyword("poly")?;
        self.expect(Tok::LParen)?;
        let field = self.field_spec()?;
        self.expect(Tok::Comma)?;
        self.expect(Tok::LBracket)?;
        let mut vars = Vec::new();
        if !self.at(&Tok::RBracket) {
            loop {
                let (v, span) = self.ident()?;
                if !valid_variable(&v) {
                    return Err(Diagnostic::new(
                        span,
                        format!("variable `{v}` must match [a-z][a-z0-9_]*"),
                    ));
                }
                if vars.contains(&v) {
                    return Err(Diagnostic::new(span, format!("duplicate variable `{v}`")));
                }
                vars.push(v);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        let mut order = None;
        if self.eat(&Tok::Comma) {
            self.keyword("order")?;
            self.expect(Tok::Eq)?;
            let (o, span) = self.ident()?;
            if o != "lex" && o != "grevlex" {
                return Err(Diagnostic {
                    span,
                    message: format!("unknown order `{o}`"),
                    expected: vec!["`lex`".into(), "`grevlex`".into()],
                });
            }
            order = Some(o);
        }
        self.expect(Tok::RParen)?;
        let mut ideal = None;
        if self.eat(&Tok::Slash) {
            self.keyword("ideal")?;
            self.expect(Tok::LParen)?;
            let gens = if self.at(&Tok::RParen) { Vec::new() } else { self.expr_list()? };
            self.expect(Tok::RParen)?;
            ideal = Some(gens);
        }
        Ok(StmtKind::Ring {
            name,
            field,
            vars,
            order,
            ideal,
        })
    }

    fn expr_list(&mut self) -> Result<Vec<Expr>, Diagnostic> {
        let mut out = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    pub fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        if self.at(&Tok::Minus) {
            let start = self.bump().span;
            let inner = self.unary()?;
            let span = start.to(inner.span);
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let t = self.peek().clone();
        let Tok::Int(s) = &t.tok else {
            return Err(self.error(&["integer exponent"]));
        };
        let e: u32 = s
            .parse()
            .map_err(|_| Diagnostic::new(t.span, format!("exponent `{s}` is too large")))?;
        self.bump();
        let span = base.span.to(t.span);
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), e),
            span,
        })
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(s) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Int(s),
                    span: t.span,
                })
            }
            Tok::Ident(name) => {
                self.bump();
                if !self.eat(&Tok::LParen) {
                    return Ok(Expr {
                        kind: ExprKind::Name(name),
                        span: t.span,
                    });
                }
                let mut args = Vec::new();
                if !self.at(&Tok::RParen) {
                    loop {
                        args.push(self.arg()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                let end = self.expect(Tok::RParen)?.span;
                Ok(Expr {
                    kind: ExprKind::Call { name, args },
                    span: t.span.to(end),
                })
            }
            Tok::LParen => {
                self.bump();
                let mut e = self.expr()?;
                let end = self.expect(Tok::RParen)?.span;
                e.span = t.span.to(end);
                Ok(e)
            }
            Tok::LBracket => {
                self.bump();
                let items = if self.at(&Tok::RBracket) { Vec::new() } else { self.expr_list()? };
                let end = self.expect(Tok::RBracket)?.span;
                Ok(Expr {
                    kind: ExprKind::List(items),
                    span: t.span.to(end),
                })
            }
            _ => Err(self.error(&["integer", "identifier", "`(`", "`[`", "`-`"])),
        }
    }

    fn arg(&mut self) -> Result<Arg, Diagnostic> {
        // `key=value` looks like an identifier followed by `=`.
        if let (Tok::Ident(k), Some(Tok::Eq)) = (&self.peek().tok, self.tokens.get(self.pos + 1).map(|t| &t.tok)) {
            let key = k.clone();
            self.bump();
            self.bump();
            let value = self.expr()?;
            return Ok(Arg { key: Some(key), value });
        }
        Ok(Arg {
            key: None,
            value: self.expr()?,
        })
    }
}

pub fn valid_variable(v: &str) -> bool {
    let mut chars = v.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}
