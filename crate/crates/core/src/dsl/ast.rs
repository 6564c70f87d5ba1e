use std::fmt;

use super::lexer::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(String),
    Name(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call { name: String, args: Vec<Arg> },
    List(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Call argument, optionally keyed (`order=lex`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub key: Option<String>,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(String),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Field {
        name: String,
        spec: FieldSpec,
    },
    Ring {
        name: String,
        field: FieldSpec,
        vars: Vec<String>,
        order: Option<String>,
        ideal: Option<Vec<Expr>>,
    },
    Module {
        name: String,
        ctor: String,
        ring: String,
        args: Vec<Expr>,
    },
    Normalization {
        name: String,
        ring: String,
        thetas: Vec<Expr>,
    },
    Primes {
        name: String,
        ideals: Vec<Expr>,
    },
    Let {
        name: String,
        value: Expr,
    },
    Assert {
        negated: bool,
        expr: Expr,
    },
    AssertEqual {
        lhs: Expr,
        rhs: Expr,
    },
    Command(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl Expr {
    fn strip_spans(&mut self) {
        self.span = Span::default();
        match &mut self.kind {
            ExprKind::Int(_) | ExprKind::Name(_) => {}
            ExprKind::Neg(e) | ExprKind::Pow(e, _) => e.strip_spans(),
            ExprKind::Binary(_, a, b) => {
                a.strip_spans();
                b.strip_spans();
            }
            ExprKind::Call { args, .. } => args.iter_mut().for_each(|a| a.value.strip_spans()),
            ExprKind::List(items) => items.iter_mut().for_each(Expr::strip_spans),
        }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(op, ..) => op.precedence(),
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Name of the call, if this is one.
    pub fn call_name(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Call { name, .. } => Some(name),
            _ => None,
        }
    }
}

impl Script {
    /// Copy with every span zeroed, for structural comparison.
    pub fn without_spans(&self) -> Script {
        let mut s = self.clone();
        for st in &mut s.stmts {
            st.span = Span::default();
            match &mut st.kind {
                StmtKind::Field { .. } => {}
                StmtKind::Ring { ideal, .. } => {
                    if let Some(gens) = ideal {
                        gens.iter_mut().for_each(Expr::strip_spans);
                    }
                }
                StmtKind::Module { args, .. } => args.iter_mut().for_each(Expr::strip_spans),
                StmtKind::Normalization { thetas, .. } => thetas.iter_mut().for_each(Expr::strip_spans),
                StmtKind::Primes { ideals, .. } => ideals.iter_mut().for_each(Expr::strip_spans),
                StmtKind::Let { value, .. } => value.strip_spans(),
                StmtKind::Assert { expr, .. } => expr.strip_spans(),
                StmtKind::AssertEqual { lhs, rhs } => {
                    lhs.strip_spans();
                    rhs.strip_spans();
                }
                StmtKind::Command(e) => e.strip_spans(),
            }
        }
        s
    }
}

fn join(items: &[Expr]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8| {
            if e.precedence() < min {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        match &self.kind {
            ExprKind::Int(s) | ExprKind::Name(s) => write!(f, "{s}"),
            ExprKind::Neg(e) => write!(f, "-{}", wrap(e, 3)),
            ExprKind::Binary(op, a, b) => {
                let p = op.precedence();
                // left-associative: the right operand needs parentheses at equal precedence
                write!(f, "{} {} {}", wrap(a, p), op.symbol(), wrap(b, p + 1))
            }
            ExprKind::Pow(base, e) => write!(f, "{}^{e}", wrap(base, 5)),
            ExprKind::Call { name, args } => {
                let parts: Vec<String> = args
                    .iter()
                    .map(|a| match &a.key {
                        Some(k) => format!("{k}={}", a.value),
                        None => a.value.to_string(),
                    })
                    .collect();
                write!(f, "{name}({})", parts.join(", "))
            }
            ExprKind::List(items) => write!(f, "[{}]", join(items)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Named(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Field { name, spec } => write!(f, "field {name} = {spec}"),
            StmtKind::Ring {
                name,
                field,
                vars,
                order,
                ideal,
            } => {
                write!(f, "ring {name} = poly({field}, [{}]", vars.join(", "))?;
                if let Some(o) = order {
                    write!(f, ", order={o}")?;
                }
                write!(f, ")")?;
                if let Some(gens) = ideal {
                    write!(f, " / ideal({})", join(gens))?;
                }
                Ok(())
            }
            StmtKind::Module { name, ctor, ring, args } => {
                write!(f, "module {name} = {ctor}({ring}")?;
                for a in args {
                    write!(f, ", {a}")?;
                }
                write!(f, ")")
            }
            StmtKind::Normalization { name, ring, thetas } => {
                write!(f, "normalization {name} = ({ring}; {})", join(thetas))
            }
            StmtKind::Primes { name, ideals } => write!(f, "primes {name} = [{}]", join(ideals)),
            StmtKind::Let { name, value } => write!(f, "let {name} = {value}"),
            StmtKind::Assert { negated, expr } => {
                write!(f, "{} {expr}", if *negated { "assert_not" } else { "assert" })
            }
            StmtKind::AssertEqual { lhs, rhs } => write!(f, "assert_equal({lhs}, {rhs})"),
            StmtKind::Command(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
