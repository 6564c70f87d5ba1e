use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use super::ast::{Arg, Expr, ExprKind, FieldSpec, Script, Stmt, StmtKind};
use super::lexer::{Diagnostic, Span};
use super::{eval_polynomial, parse};
use crate::algebra::{Field, MonomialOrder, PolyMatrix, PolyRing, Polynomial};
use crate::differents::{
    derived_different_refute, enveloping, fitting_ideal, jacobian_ideal, kaehler_different, kaehler_presentation,
    noether_different, radical_agreement, smoothness_criterion, tor_over_normalization,
    tor_vanishing_certifies_equality, NormalizationData, Probe, Refutation, Smoothness,
};
use crate::error::Error;
use crate::groebner::{syzygies, Dimension, Ideal, QuotientRing};
use crate::homology::{
    ext_module, free_resolution, hom_complex, koszul_homology, module_depth_and_pd, depth_and_pd, FPModule,
    FreeResolution, Subquotient,
};
use crate::verify::{
    annihilation_exponent, component_dimensions, decomposition_check, theorem2_hypotheses, AnnihilationExponent,
    DecompositionClaim, ProbeCorpus, DEFAULT_S_MAX,
};

/// Quotients of polynomial rings stand in for the completed local rings;
/// all checks concern classes supported at the origin.
pub const AFFINE_MODEL: &str = "affine model";

#[derive(Clone, Debug)]
pub struct ExecOptions {
    pub s_max: usize,
    /// Order for rings declared without one.
    pub order: MonomialOrder,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            s_max: DEFAULT_S_MAX,
            order: MonomialOrder::GrevLex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub label: String,
    pub passed: bool,
    pub expected: String,
    pub got: String,
}

impl Assertion {
    /// `PASS|FAIL <prefix><label> expected=<..> got=<..>`.
    pub fn line(&self, prefix: &str) -> String {
        format!(
            "{} {prefix}{} expected={} got={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.label,
            self.expected,
            self.got
        )
    }
}

#[derive(Clone, Debug)]
pub struct CommandReport {
    pub cmd: String,
    pub span: Span,
    pub text: String,
    pub result: Json,
    pub assertion: Option<Assertion>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub commands: Vec<CommandReport>,
    pub status: Status,
    pub diagnostic: Option<Diagnostic>,
}

impl Report {
    /// 0 on success, 1 on a failed assertion, 2 on a diagnostic.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn assertions(&self) -> impl Iterator<Item = &Assertion> {
        self.commands.iter().filter_map(|c| c.assertion.as_ref())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.commands {
            match &c.assertion {
                Some(a) => {
                    let _ = writeln!(out, "{}", a.line(""));
                }
                None => {
                    let _ = writeln!(out, "> {}", c.cmd);
                    for l in c.text.lines() {
                        let _ = writeln!(out, "  {l}");
                    }
                }
            }
        }
        if let Some(d) = &self.diagnostic {
            let _ = writeln!(out, "error at {d}");
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        out
    }

    pub fn to_json(&self) -> Json {
        let commands: Vec<Json> = self
            .commands
            .iter()
            .map(|c| {
                let mut result = c.result.clone();
                if let Some(a) = &c.assertion {
                    result = json!({
                        "assertion": a.label,
                        "passed": a.passed,
                        "expected": a.expected,
                        "got": a.got,
                    });
                }
                json!({ "cmd": c.cmd, "span": span_json(c.span), "result": result })
            })
            .collect();
        let mut top = json!({ "commands": commands, "status": self.status.as_str() });
        if let Some(d) = &self.diagnostic {
            top["diagnostic"] = json!({
                "span": span_json(d.span),
                "message": d.message,
                "expected": d.expected,
            });
        }
        top
    }
}

fn span_json(s: Span) -> Json {
    json!({ "line": s.line, "col": s.col, "offset": s.offset, "len": s.len })
}

/// Parses and runs a script.
pub fn run_source(src: &str, opts: &ExecOptions) -> Report {
    match parse(src) {
        Ok(script) => execute(&script, opts),
        Err(d) => Report {
            commands: Vec::new(),
            status: Status::Error,
            diagnostic: Some(d),
        },
    }
}

pub fn execute(script: &Script, opts: &ExecOptions) -> Report {
    let mut ex = Executor {
        opts: opts.clone(),
        env: HashMap::new(),
        modules: Vec::new(),
        current: None,
    };
    let mut commands = Vec::new();
    let mut status = Status::Ok;
    for stmt in &script.stmts {
        match ex.stmt(stmt) {
            Ok(report) => {
                if report.assertion.as_ref().is_some_and(|a| !a.passed) {
                    status = Status::Fail;
                }
                commands.push(report);
            }
            Err(d) => {
                return Report {
                    commands,
                    status: Status::Error,
                    diagnostic: Some(d),
                };
            }
        }
    }
    Report {
        commands,
        status,
        diagnostic: None,
    }
}

#[derive(Clone)]
enum Value {
    Field(Field),
    Ring(Arc<QuotientRing>),
    Poly(Arc<QuotientRing>, Polynomial),
    Int(i64),
    Bool(bool),
    Ideal(Ideal),
    Module(FPModule),
    Sub(Subquotient),
    Resolution(FreeResolution),
    Matrix(PolyMatrix),
    Normalization(NormalizationData),
    Primes(Vec<Ideal>),
    Probe(Probe),
    Pair(String, FPModule, FPModule),
    List(Vec<Value>),
    Status { ok: bool, text: String, json: Json },
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Field(_) => "field",
            Value::Ring(_) => "ring",
            Value::Poly(..) => "polynomial",
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::Ideal(_) => "ideal",
            Value::Module(_) => "module",
            Value::Sub(_) => "subquotient",
            Value::Resolution(_) => "resolution",
            Value::Matrix(_) => "matrix",
            Value::Normalization(_) => "normalization",
            Value::Primes(_) => "prime list",
            Value::Probe(_) => "probe",
            Value::Pair(..) => "module pair",
            Value::List(_) => "list",
            Value::Status { .. } => "status",
        }
    }

    fn ring(&self) -> Option<Arc<QuotientRing>> {
        match self {
            Value::Ring(r) | Value::Poly(r, _) => Some(r.clone()),
            Value::Ideal(i) => Some(i.ring().clone()),
            Value::Module(m) => Some(m.ring().clone()),
            Value::Sub(s) => Some(s.ring().clone()),
            Value::Resolution(r) => Some(r.ring().clone()),
            Value::Normalization(a) => Some(a.ring().clone()),
            Value::Primes(p) => p.first().map(|i| i.ring().clone()),
            Value::Probe(p) => Some(p.source.ring().clone()),
            Value::Pair(_, m, _) => Some(m.ring().clone()),
            _ => None,
        }
    }

    /// Single-line canonical form.
    fn canonical(&self) -> String {
        match self {
            Value::Field(f) => f.to_string(),
            Value::Ring(r) => r.to_string(),
            Value::Poly(_, p) => p.to_string(),
            Value::Int(v) => v.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Ideal(i) => ideal_string(i),
            Value::Module(m) => m.to_string(),
            Value::Sub(s) => format!("{}{}", s, if s.is_zero() { " (zero)" } else { "" }),
            Value::Resolution(r) => format!("ranks {:?}", r.ranks()),
            Value::Matrix(m) => m.to_string(),
            Value::Normalization(a) => a.to_string(),
            Value::Primes(p) => format!("[{}]", p.iter().map(ideal_string).collect::<Vec<_>>().join(", ")),
            Value::Probe(p) => format!("probe(Ext^{})", p.degree),
            Value::Pair(l, ..) => l.clone(),
            Value::List(v) => format!("[{}]", v.iter().map(Value::canonical).collect::<Vec<_>>().join(", ")),
            Value::Status { text, .. } => text.lines().next().unwrap_or("").to_string(),
        }
    }

    /// Multi-line display for command output.
    fn block(&self) -> String {
        match self {
            Value::Ideal(i) => {
                let b = i.basis();
                if b.is_empty() {
                    "0".into()
                } else {
                    b.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
                }
            }
            Value::Matrix(m) => matrix_rows(m),
            Value::Module(m) => {
                let mut s = format!("generators: {}\nrelations:\n{}", m.generator_count(), matrix_rows(&m.presentation()));
                if let Some(t) = m.grading() {
                    let _ = write!(s, "\ntwists: {t:?}");
                }
                s
            }
            Value::Sub(sq) => {
                let a = sq.ring().ambient();
                format!(
                    "rank: {}\nzero: {}\ncycles:\n{}\nboundaries:\n{}",
                    sq.rank(),
                    sq.is_zero(),
                    matrix_rows(&PolyMatrix::from_columns(a, sq.rank(), sq.cycles())),
                    matrix_rows(&PolyMatrix::from_columns(a, sq.rank(), sq.boundaries()))
                )
            }
            Value::Resolution(r) => r.to_string(),
            Value::Ring(r) => {
                let mut s = format!("{r}\ndim: {}\nmodel: {AFFINE_MODEL}", r.krull_dimension());
                for n in r.characteristic_notes() {
                    let _ = write!(s, "\nnote: {n}");
                }
                s
            }
            Value::List(v) if v.iter().all(|x| matches!(x, Value::Matrix(_))) => v
                .iter()
                .enumerate()
                .map(|(i, m)| format!("map {}:\n{}", i + 1, m.block()))
                .collect::<Vec<_>>()
                .join("\n"),
            Value::Status { text, .. } => text.clone(),
            _ => self.canonical(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Field(f) => json!({ "field": f.to_string() }),
            Value::Ring(r) => json!({
                "ring": r.to_string(),
                "dim": r.krull_dimension().to_string(),
                "model": AFFINE_MODEL,
                "notes": r.characteristic_notes(),
            }),
            Value::Poly(_, p) => json!(p.to_string()),
            Value::Int(v) => json!(v),
            Value::Bool(b) => json!(b),
            Value::Ideal(i) => json!({ "basis": i.basis().iter().map(ToString::to_string).collect::<Vec<_>>() }),
            Value::Module(m) => json!({
                "generators": m.generator_count(),
                "relations": matrix_json(&m.presentation()),
                "twists": m.grading(),
            }),
            Value::Sub(s) => {
                let a = s.ring().ambient();
                json!({
                    "rank": s.rank(),
                    "zero": s.is_zero(),
                    "cycles": matrix_json(&PolyMatrix::from_columns(a, s.rank(), s.cycles())),
                    "boundaries": matrix_json(&PolyMatrix::from_columns(a, s.rank(), s.boundaries())),
                })
            }
            Value::Resolution(r) => json!({
                "ranks": r.ranks(),
                "maps": r.maps().iter().map(matrix_json).collect::<Vec<_>>(),
                "minimality": r.minimality().to_string(),
                "complete": r.is_complete(),
            }),
            Value::Matrix(m) => matrix_json(m),
            Value::Normalization(a) => json!({
                "normalization": a.to_string(),
                "certificate": a.certificate().map(ToString::to_string).map_err(|e| e.to_string()).unwrap_or_else(|e| e),
            }),
            Value::Primes(p) => json!(p.iter().map(|i| Value::Ideal(i.clone()).to_json()).collect::<Vec<_>>()),
            Value::List(v) => json!(v.iter().map(Value::to_json).collect::<Vec<_>>()),
            Value::Status { ok, text, json } => json!({ "ok": ok, "text": text, "detail": json }),
            Value::Probe(_) | Value::Pair(..) => json!(self.canonical()),
        }
    }
}

fn ideal_string(i: &Ideal) -> String {
    let b = i.basis();
    if b.is_empty() {
        "(0)".into()
    } else {
        format!("({})", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
    }
}

fn matrix_rows(m: &PolyMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("({}x{} zero matrix)", m.rows(), m.cols());
    }
    (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn matrix_json(m: &PolyMatrix) -> Json {
    json!((0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

type Res<T> = Result<T, Diagnostic>;

fn err(span: Span, e: Error) -> Diagnostic {
    Diagnostic::new(span, e.to_string())
}

struct Executor {
    opts: ExecOptions,
    env: HashMap<String, Value>,
    /// Declared modules in order, for probe corpora.
    modules: Vec<(String, FPModule)>,
    current: Option<Arc<QuotientRing>>,
}

/// Evaluated call arguments.
struct Args {
    name: String,
    span: Span,
    pos: Vec<(Value, Span)>,
    keys: HashMap<String, (Value, Span)>,
}

impl Args {
    fn get(&self, i: usize) -> Res<&(Value, Span)> {
        self.pos.get(i).ok_or_else(|| {
            Diagnostic::new(self.span, format!("`{}` expects at least {} argument(s)", self.name, i + 1))
        })
    }

    fn wrong(&self, i: usize, want: &str) -> Diagnostic {
        let (v, span) = &self.pos[i];
        Diagnostic::new(*span, format!("`{}` argument {} must be a {want}, found a {}", self.name, i + 1, v.kind()))
    }

    fn max(&self, n: usize) -> Res<()> {
        if self.pos.len() > n {
            return Err(Diagnostic::new(
                self.pos[n].1,
                format!("`{}` takes at most {n} argument(s)", self.name),
            ));
        }
        Ok(())
    }

    fn ring(&self, i: usize) -> Res<Arc<QuotientRing>> {
        match &self.get(i)?.0 {
            Value::Ring(r) => Ok(r.clone()),
            _ => Err(self.wrong(i, "ring")),
        }
    }

    fn usize(&self, i: usize) -> Res<usize> {
        match &self.get(i)?.0 {
            Value::Int(v) if *v >= 0 => Ok(*v as usize),
            _ => Err(self.wrong(i, "nonnegative integer")),
        }
    }

    fn poly(&self, i: usize, ring: &Arc<QuotientRing>) -> Res<Polynomial> {
        let (v, span) = self.get(i)?;
        to_poly(v, ring).ok_or_else(|| {
            if v.ring().is_some_and(|r| !r.same_as(ring)) {
                Diagnostic::new(*span, Error::RingMismatch.to_string())
            } else {
                self.wrong(i, "polynomial")
            }
        })
    }

    fn ideal(&self, i: usize) -> Res<Ideal> {
        match &self.get(i)?.0 {
            Value::Ideal(j) => Ok(j.clone()),
            Value::Poly(r, p) => Ok(Ideal::new(r, vec![p.clone()])),
            _ => Err(self.wrong(i, "ideal")),
        }
    }

    fn module(&self, i: usize) -> Res<FPModule> {
        match &self.get(i)?.0 {
            Value::Module(m) => Ok(m.clone()),
            Value::Ring(r) => Ok(FPModule::free(r, 1)),
            _ => Err(self.wrong(i, "module")),
        }
    }

    fn normalization(&self, i: usize) -> Res<NormalizationData> {
        match &self.get(i)?.0 {
            Value::Normalization(a) => Ok(a.clone()),
            _ => Err(self.wrong(i, "normalization")),
        }
    }

    fn primes(&self, i: usize) -> Res<Vec<Ideal>> {
        match &self.get(i)?.0 {
            Value::Primes(p) => Ok(p.clone()),
            Value::List(items) => items
                .iter()
                .map(|v| match v {
                    Value::Ideal(j) => Ok(j.clone()),
                    _ => Err(self.wrong(i, "list of ideals")),
                })
                .collect(),
            _ => Err(self.wrong(i, "list of ideals")),
        }
    }

    fn same_ring(&self, a: &Arc<QuotientRing>, b: &Arc<QuotientRing>) -> Res<()> {
        if a.same_as(b) {
            Ok(())
        } else {
            Err(err(self.span, Error::RingMismatch))
        }
    }

    fn matrix(&self, i: usize, ring: &Arc<QuotientRing>) -> Res<PolyMatrix> {
        let (v, _) = self.get(i)?;
        to_matrix(v, ring).ok_or_else(|| self.wrong(i, "matrix (list of rows)"))
    }
}

fn to_poly(v: &Value, ring: &Arc<QuotientRing>) -> Option<Polynomial> {
    match v {
        Value::Poly(r, p) if r.ambient().same_as(ring.ambient()) => Some(ring.reduce(p)),
        Value::Int(k) => Some(ring.ambient().from_int(*k)),
        _ => None,
    }
}

fn to_matrix(v: &Value, ring: &Arc<QuotientRing>) -> Option<PolyMatrix> {
    match v {
        Value::Matrix(m) if m.ring().same_as(ring.ambient()) => Some(m.clone()),
        Value::List(rows) if rows.iter().all(|r| matches!(r, Value::List(_))) => {
            let rows: Option<Vec<Vec<Polynomial>>> = rows
                .iter()
                .map(|r| match r {
                    Value::List(items) => items.iter().map(|x| to_poly(x, ring)).collect(),
                    _ => None,
                })
                .collect();
            PolyMatrix::from_rows(ring.ambient(), rows?).ok()
        }
        Value::List(items) => {
            let row: Option<Vec<Polynomial>> = items.iter().map(|x| to_poly(x, ring)).collect();
            PolyMatrix::from_rows(ring.ambient(), vec![row?]).ok()
        }
        _ => None,
    }
}

fn compare(a: &Value, b: &Value) -> Option<bool> {
    Some(match (a, b) {
        (Value::Ideal(x), Value::Ideal(y)) => x.ring().same_as(y.ring()) && x.equals(y).ok()?,
        (Value::Ideal(x), Value::List(items)) | (Value::List(items), Value::Ideal(x)) => {
            let gens: Option<Vec<Polynomial>> = items.iter().map(|v| to_poly(v, x.ring())).collect();
            x.equals(&Ideal::new(x.ring(), gens?)).ok()?
        }
        (Value::Poly(r, p), other) | (other, Value::Poly(r, p)) => {
            let q = to_poly(other, r)?;
            r.reduce(&(p - &q)).is_zero()
        }
        (Value::Int(x), Value::Int(y)) => x == y,
        (Value::Bool(x), Value::Bool(y)) => x == y,
        (Value::Status { ok, .. }, Value::Bool(y)) | (Value::Bool(y), Value::Status { ok, .. }) => ok == y,
        (Value::Status { json, .. }, Value::Int(n)) | (Value::Int(n), Value::Status { json, .. }) => *json == json!(n),
        (Value::Matrix(m), other) | (other, Value::Matrix(m)) => {
            let ring = QuotientRing::polynomial(m.ring());
            let n = to_matrix(other, &ring)?;
            m.rows() == n.rows() && m.cols() == n.cols() && m.columns() == n.columns()
        }
        (Value::List(x), Value::List(y)) => {
            if x.len() != y.len() {
                return Some(false);
            }
            for (u, v) in x.iter().zip(y) {
                if !compare(u, v)? {
                    return Some(false);
                }
            }
            true
        }
        _ => return None,
    })
}

impl Executor {
    fn bind(&mut self, name: &str, span: Span, v: Value) -> Res<()> {
        if self.env.contains_key(name) {
            return Err(Diagnostic::new(span, format!("`{name}` is already declared")));
        }
        self.env.insert(name.to_string(), v);
        Ok(())
    }

    fn report(stmt: &Stmt, v: &Value) -> CommandReport {
        CommandReport {
            cmd: stmt.to_string(),
            span: stmt.span,
            text: v.block(),
            result: v.to_json(),
            assertion: None,
        }
    }

    fn stmt(&mut self, stmt: &Stmt) -> Res<CommandReport> {
        let span = stmt.span;
        match &stmt.kind {
            StmtKind::Field { name, spec } => {
                let f = self.field(spec, span)?;
                let v = Value::Field(f);
                self.bind(name, span, v.clone())?;
                Ok(Self::report(stmt, &v))
            }
            StmtKind::Ring {
                name,
                field,
                vars,
                order,
                ideal,
            } => {
                let f = self.field(field, span)?;
                let order = match order.as_deref() {
                    Some("lex") => MonomialOrder::Lex,
                    Some(_) => MonomialOrder::GrevLex,
                    None => self.opts.order,
                };
                let a = PolyRing::new(f, vars.iter().cloned(), order);
                let poly_ring = QuotientRing::polynomial(&a);
                let mut gens = Vec::new();
                for g in ideal.iter().flatten() {
                    gens.push(self.polynomial(g, &poly_ring)?);
                }
                let r = QuotientRing::new(&a, gens).map_err(|e| err(span, e))?;
                if r.is_zero_ring() {
                    return Err(err(span, Error::UnitIdeal));
                }
                let v = Value::Ring(r.clone());
                self.bind(name, span, v.clone())?;
                self.current = Some(r);
                Ok(Self::report(stmt, &v))
            }
            StmtKind::Module { name, ctor, ring, args } => {
                let r = match self.env.get(ring) {
                    Some(Value::Ring(r)) => r.clone(),
                    _ => return Err(Diagnostic::new(span, format!("`{ring}` is not a declared ring"))),
                };
                let m = self.module_ctor(ctor, &r, args, span)?;
                self.modules.push((name.clone(), m.clone()));
                let v = Value::Module(m);
                self.bind(name, span, v.clone())?;
                Ok(Self::report(stmt, &v))
            }
            StmtKind::Normalization { name, ring, thetas } => {
                let r = match self.env.get(ring) {
                    Some(Value::Ring(r)) => r.clone(),
                    _ => return Err(Diagnostic::new(span, format!("`{ring}` is not a declared ring"))),
                };
                let mut ts = Vec::new();
                for t in thetas {
                    ts.push(self.polynomial(t, &r)?);
                }
                let a = NormalizationData::new(&r, ts).map_err(|e| err(span, e))?;
                let v = Value::Normalization(a);
                self.bind(name, span, v.clone())?;
                let mut rep = Self::report(stmt, &v);
                if let Value::Normalization(a) = &v {
                    rep.text = match a.certificate() {
                        Ok(c) => format!("{a}\n{c}"),
                        Err(e) => format!("{a}\nnot certified: {e}"),
                    };
                }
                Ok(rep)
            }
            StmtKind::Primes { name, ideals } => {
                let mut out = Vec::new();
                for e in ideals {
                    match self.eval(e, None)? {
                        Value::Ideal(j) => out.push(j),
                        Value::Poly(r, p) => out.push(Ideal::new(&r, vec![p])),
                        other => {
                            return Err(Diagnostic::new(e.span, format!("expected an ideal, found a {}", other.kind())))
                        }
                    }
                }
                if let Some(first) = out.first() {
                    if out.iter().any(|j| !j.ring().same_as(first.ring())) {
                        return Err(err(span, Error::RingMismatch));
                    }
                }
                let v = Value::Primes(out);
                self.bind(name, span, v.clone())?;
                Ok(Self::report(stmt, &v))
            }
            StmtKind::Let { name, value } => {
                let v = self.eval(value, None)?;
                self.bind(name, span, v.clone())?;
                Ok(Self::report(stmt, &v))
            }
            StmtKind::Assert { negated, expr } => {
                let v = self.eval(expr, None)?;
                let truth = match &v {
                    Value::Bool(b) => *b,
                    Value::Status { ok, .. } => *ok,
                    other => {
                        return Err(Diagnostic::new(
                            expr.span,
                            format!("assertion needs a boolean, found a {}", other.kind()),
                        ))
                    }
                };
                let want = !negated;
                let a = Assertion {
                    label: label(&expr.to_string()),
                    passed: truth == want,
                    expected: want.to_string(),
                    got: if matches!(v, Value::Bool(_)) { truth.to_string() } else { format!("{truth} ({})", v.canonical()) },
                };
                Ok(CommandReport {
                    cmd: stmt.to_string(),
                    span,
                    text: a.line(""),
                    result: json!(null),
                    assertion: Some(a),
                })
            }
            StmtKind::AssertEqual { lhs, rhs } => {
                let a = self.eval(lhs, None)?;
                let ctx = a.ring();
                let b = self.eval(rhs, ctx.as_ref())?;
                let passed = compare(&a, &b).ok_or_else(|| {
                    Diagnostic::new(span, format!("cannot compare a {} with a {}", a.kind(), b.kind()))
                })?;
                let a = Assertion {
                    label: label(&format!("{lhs}")),
                    passed,
                    expected: b.canonical(),
                    got: a.canonical(),
                };
                Ok(CommandReport {
                    cmd: stmt.to_string(),
                    span,
                    text: a.line(""),
                    result: json!(null),
                    assertion: Some(a),
                })
            }
            StmtKind::Command(e) => {
                let v = self.eval(e, None)?;
                Ok(Self::report(stmt, &v))
            }
        }
    }

    fn field(&self, spec: &FieldSpec, span: Span) -> Res<Field> {
        match spec {
            FieldSpec::Rational => Ok(Field::Rational),
            FieldSpec::Prime(p) => {
                let v: u64 = p.parse().map_err(|_| Diagnostic::new(span, format!("GF({p}): {p} is not prime")))?;
                Field::prime(v).map_err(|e| err(span, e))
            }
            FieldSpec::Named(n) => match self.env.get(n) {
                Some(Value::Field(f)) => Ok(*f),
                _ => Err(Diagnostic::new(span, format!("`{n}` is not a declared field"))),
            },
        }
    }

    fn module_ctor(&mut self, ctor: &str, r: &Arc<QuotientRing>, args: &[Expr], span: Span) -> Res<FPModule> {
        let polys = |ex: &mut Executor| -> Res<Vec<Polynomial>> { args.iter().map(|a| ex.polynomial(a, r)).collect() };
        match ctor {
            "coker" => {
                let [m] = args else {
                    return Err(Diagnostic::new(span, "`coker(R, matrix)` takes one matrix"));
                };
                let v = self.eval(m, Some(r))?;
                let m = to_matrix(&v, r).ok_or_else(|| Diagnostic::new(m.span, "expected a matrix [[...], ...]"))?;
                FPModule::from_matrix(r, &m).map_err(|e| err(span, e))
            }
            "quotient" => Ok(FPModule::cyclic(&Ideal::new(r, polys(self)?))),
            "ideal" => FPModule::ideal_module(&Ideal::new(r, polys(self)?)).map_err(|e| err(span, e)),
            "residue" => Ok(FPModule::residue_field(r)),
            "free" => {
                let [n] = args else {
                    return Err(Diagnostic::new(span, "`free(R, n)` takes a rank"));
                };
                match &n.kind {
                    ExprKind::Int(s) => {
                        let n: usize = s.parse().map_err(|_| Diagnostic::new(n.span, "rank too large"))?;
                        Ok(FPModule::free(r, n))
                    }
                    _ => Err(Diagnostic::new(n.span, "rank must be an integer")),
                }
            }
            _ => Err(Diagnostic {
                span,
                message: format!("unknown module constructor `{ctor}`"),
                expected: ["coker", "quotient", "ideal", "residue", "free"].iter().map(|s| format!("`{s}`")).collect(),
            }),
        }
    }

    /// A polynomial expression in `ring`.
    fn polynomial(&mut self, e: &Expr, ring: &Arc<QuotientRing>) -> Res<Polynomial> {
        let v = self.eval(e, Some(ring))?;
        to_poly(&v, ring).ok_or_else(|| {
            if v.ring().is_some_and(|r| !r.same_as(ring)) {
                Diagnostic::new(e.span, Error::RingMismatch.to_string())
            } else {
                Diagnostic::new(e.span, format!("expected a polynomial, found a {}", v.kind()))
            }
        })
    }

    /// Ring of the first name in `e` bound to a ring-carrying value.
    fn find_ring(&self, e: &Expr) -> Option<Arc<QuotientRing>> {
        match &e.kind {
            ExprKind::Name(n) => self.env.get(n).and_then(Value::ring),
            ExprKind::Int(_) => None,
            ExprKind::Neg(x) | ExprKind::Pow(x, _) => self.find_ring(x),
            ExprKind::Binary(_, a, b) => self.find_ring(a).or_else(|| self.find_ring(b)),
            ExprKind::Call { args, .. } => args.iter().find_map(|a| self.find_ring(&a.value)),
            ExprKind::List(items) => items.iter().find_map(|x| self.find_ring(x)),
        }
    }

    fn eval(&mut self, e: &Expr, ctx: Option<&Arc<QuotientRing>>) -> Res<Value> {
        match &e.kind {
            ExprKind::Int(s) => match s.parse::<i64>() {
                Ok(v) => Ok(Value::Int(v)),
                Err(_) => self.arith(e, ctx),
            },
            ExprKind::Name(n) => {
                if let Some(r) = ctx.or(self.current.as_ref()) {
                    if let Some(p) = r.ambient().var_named(n) {
                        if !self.env.contains_key(n) {
                            return Ok(Value::Poly(r.clone(), p));
                        }
                    }
                }
                self.env
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Diagnostic::new(e.span, format!("undefined name `{n}`")))
            }
            ExprKind::Neg(_) | ExprKind::Binary(..) | ExprKind::Pow(..) => self.arith(e, ctx),
            ExprKind::List(items) => {
                let mut out = Vec::with_capacity(items.len());
                for x in items {
                    out.push(self.eval(x, ctx)?);
                }
                Ok(Value::List(out))
            }
            ExprKind::Call { name, args } => {
                let ring = self.find_ring(e).or_else(|| ctx.cloned());
                self.call(name, args, e.span, ring.as_ref())
            }
        }
    }

    fn arith(&self, e: &Expr, ctx: Option<&Arc<QuotientRing>>) -> Res<Value> {
        let ring = self
            .find_ring(e)
            .or_else(|| ctx.cloned())
            .or_else(|| self.current.clone())
            .ok_or_else(|| Diagnostic::new(e.span, "no ring in scope for a polynomial expression"))?;
        let a = ring.ambient().clone();
        let lookup = |n: &str| match self.env.get(n) {
            Some(Value::Poly(r, p)) if r.ambient().same_as(&a) => Some(p.clone()),
            Some(Value::Int(k)) => Some(a.from_int(*k)),
            _ => None,
        };
        let p = eval_polynomial(&a, e, &lookup)?;
        Ok(Value::Poly(ring.clone(), ring.reduce(&p)))
    }

    fn call(&mut self, name: &str, raw: &[Arg], span: Span, ctx: Option<&Arc<QuotientRing>>) -> Res<Value> {
        let mut args = Args {
            name: name.to_string(),
            span,
            pos: Vec::new(),
            keys: HashMap::new(),
        };
        for a in raw {
            let v = self.eval(&a.value, ctx)?;
            match &a.key {
                Some(k) => {
                    args.keys.insert(k.clone(), (v, a.value.span));
                }
                None => args.pos.push((v, a.value.span)),
            }
        }
        let ctx_ring = || {
            ctx.cloned()
                .or_else(|| self.current.clone())
                .ok_or_else(|| Diagnostic::new(span, "no ring in scope"))
        };
        let e = |x: Error| err(span, x);
        // A leading ring argument is optional for most commands.
        let skip_ring = |args: &Args| usize::from(matches!(args.pos.first(), Some((Value::Ring(_), _))));
        let v = match name {
            "use" => {
                args.max(1)?;
                let r = args.ring(0)?;
                self.current = Some(r.clone());
                Value::Ring(r)
            }
            "show" => {
                args.max(1)?;
                args.get(0)?.0.clone()
            }
            "ideal" => {
                let s = skip_ring(&args);
                let r = if s == 1 { args.ring(0)? } else { ctx_ring()? };
                let gens = (s..args.pos.len()).map(|i| args.poly(i, &r)).collect::<Res<Vec<_>>>()?;
                Value::Ideal(Ideal::new(&r, gens))
            }
            "matrix" => {
                let s = skip_ring(&args);
                let r = if s == 1 { args.ring(0)? } else { ctx_ring()? };
                Value::Matrix(args.matrix(s, &r)?)
            }
            "groebner" | "gb" => {
                let s = skip_ring(&args);
                if s == 0 && args.pos.len() == 1 && matches!(args.get(0)?.0, Value::Ideal(_)) {
                    Value::Ideal(args.ideal(0)?)
                } else {
                    let r = if s == 1 { args.ring(0)? } else { ctx_ring()? };
                    let gens = (s..args.pos.len()).map(|i| args.poly(i, &r)).collect::<Res<Vec<_>>>()?;
                    Value::Ideal(Ideal::new(&r, gens))
                }
            }
            "normal_form" => {
                args.max(2)?;
                let j = args.ideal(1)?;
                let f = args.poly(0, j.ring())?;
                Value::Poly(j.ring().clone(), j.normal_form(&f).map_err(e)?)
            }
            "eliminate" => {
                args.max(2)?;
                let j = args.ideal(0)?;
                let keep = match &args.get(1)?.0 {
                    Value::List(items) => items
                        .iter()
                        .map(|v| match v {
                            Value::Poly(_, p) => p
                                .leading_monomial()
                                .filter(|m| p.terms().len() == 1 && m.degree() == 1)
                                .and_then(|m| m.support().next()),
                            _ => None,
                        })
                        .collect::<Option<Vec<usize>>>()
                        .ok_or_else(|| args.wrong(1, "list of variables"))?,
                    _ => return Err(args.wrong(1, "list of variables")),
                };
                Value::Ideal(j.eliminate(&keep).map_err(e)?)
            }
            "intersect" => {
                let ideals = (0..args.pos.len()).map(|i| args.ideal(i)).collect::<Res<Vec<_>>>()?;
                Value::Ideal(Ideal::intersect_all(&ideals).map_err(e)?)
            }
            "colon" => {
                args.max(2)?;
                Value::Ideal(args.ideal(0)?.colon(&args.ideal(1)?).map_err(e)?)
            }
            "radical_member" => {
                args.max(2)?;
                let j = args.ideal(1)?;
                Value::Bool(j.radical_contains(&args.poly(0, j.ring())?).map_err(e)?)
            }
            "sum" => Value::Ideal(args.ideal(0)?.sum(&args.ideal(1)?).map_err(e)?),
            "product" => Value::Ideal(args.ideal(0)?.product(&args.ideal(1)?).map_err(e)?),
            "power" => {
                let s = match &args.get(1)?.0 {
                    Value::Int(v) => *v,
                    _ => return Err(args.wrong(1, "integer")),
                };
                Value::Ideal(args.ideal(0)?.power(s).map_err(e)?)
            }
            "equal" => Value::Bool(args.ideal(0)?.equals(&args.ideal(1)?).map_err(e)?),
            "contains" => {
                let j = args.ideal(0)?;
                Value::Bool(j.contains(&args.poly(1, j.ring())?).map_err(e)?)
            }
            "is_zero" => match &args.get(0)?.0 {
                Value::Ideal(j) => Value::Bool(j.is_zero()),
                Value::Module(m) => Value::Bool(m.is_zero()),
                Value::Sub(s) => Value::Bool(s.is_zero()),
                Value::Poly(_, p) => Value::Bool(p.is_zero()),
                _ => return Err(args.wrong(0, "ideal, module or polynomial")),
            },
            "is_unit" => Value::Bool(args.ideal(0)?.is_unit()),
            "dim" | "krull_dimension" => match args.ring(0)?.krull_dimension() {
                Dimension::Finite(d) => Value::Int(d as i64),
                Dimension::Empty => Value::Status {
                    ok: false,
                    text: "empty".into(),
                    json: json!("empty"),
                },
            },
            "vector_dim" => match args.ring(0)?.vector_space_dimension() {
                Some(d) => Value::Int(d as i64),
                None => Value::Status {
                    ok: false,
                    text: "infinite".into(),
                    json: json!("infinite"),
                },
            },
            "syzygies" => {
                let s = skip_ring(&args);
                let r = if s == 1 { args.ring(0)? } else { ctx_ring()? };
                Value::Matrix(syzygies(&args.matrix(s, &r)?, &r).map_err(e)?)
            }
            "resolution" => {
                args.max(2)?;
                let m = args.module(0)?;
                let len = match args.pos.get(1) {
                    Some(_) => Some(args.usize(1)?),
                    None if m.ring().is_polynomial_ring() => None,
                    None => Some(m.ring().krull_dimension().value().map_err(e)? + 2),
                };
                Value::Resolution(free_resolution(&m, len).map_err(e)?)
            }
            "ranks" => match &args.get(0)?.0 {
                Value::Resolution(r) => Value::List(r.ranks().iter().map(|&k| Value::Int(k as i64)).collect()),
                _ => return Err(args.wrong(0, "resolution")),
            },
            "map" => match &args.get(0)?.0 {
                Value::Resolution(r) => {
                    let i = args.usize(1)?;
                    let m = i
                        .checked_sub(1)
                        .and_then(|k| r.maps().get(k))
                        .ok_or_else(|| Diagnostic::new(args.get(1).map(|a| a.1).unwrap_or(span), format!("no map d_{i}")))?;
                    Value::Matrix(m.clone())
                }
                _ => return Err(args.wrong(0, "resolution")),
            },
            "depth" | "pd" => {
                args.max(1)?;
                let (depth, pd) = match &args.get(0)?.0 {
                    Value::Ring(r) => depth_and_pd(r).map_err(e)?,
                    Value::Module(m) => module_depth_and_pd(m).map_err(e)?,
                    _ => return Err(args.wrong(0, "ring or module")),
                };
                Value::Int(if name == "depth" { depth } else { pd } as i64)
            }
            "hom_complex" => {
                let s = skip_ring(&args);
                let m = args.module(s)?;
                let n = args.module(s + 1)?;
                let len = args.usize(s + 2)?;
                let res = free_resolution(&m, Some(len)).map_err(e)?;
                let h = hom_complex(&res, &n).map_err(e)?;
                Value::List(h.display_maps().into_iter().map(Value::Matrix).collect())
            }
            "ext" => {
                let s = skip_ring(&args);
                args.max(s + 3)?;
                let n = args.usize(s)?;
                let m = args.module(s + 1)?;
                let t = args.module(s + 2)?;
                if s == 1 {
                    args.same_ring(&args.ring(0)?, m.ring())?;
                }
                Value::Sub(ext_module(n, &m, &t).map_err(e)?)
            }
            "koszul" | "koszul_homology" => {
                args.max(3)?;
                let r = args.ring(0)?;
                let i = args.usize(1)?;
                let seq = match &args.get(2)?.0 {
                    Value::List(items) => items
                        .iter()
                        .map(|v| to_poly(v, &r))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| args.wrong(2, "list of polynomials"))?,
                    _ => return Err(args.wrong(2, "list of polynomials")),
                };
                if i > seq.len() {
                    return Err(Diagnostic::new(span, format!("H_{i} of a sequence of length {}", seq.len())));
                }
                Value::Sub(koszul_homology(&seq, &r, i).map_err(e)?)
            }
            "tor" => {
                args.max(2)?;
                Value::Sub(tor_over_normalization(&args.normalization(0)?, args.usize(1)?).map_err(e)?)
            }
            "acts_zero" => {
                args.max(2)?;
                let sq = match &args.get(1)?.0 {
                    Value::Sub(s) => s.clone(),
                    Value::Module(m) => m.as_subquotient(),
                    _ => return Err(args.wrong(1, "subquotient")),
                };
                Value::Bool(sq.acts_zero(&args.poly(0, sq.ring())?).map_err(e)?)
            }
            "annihilator" => match &args.get(0)?.0 {
                Value::Sub(s) => Value::Ideal(s.annihilator().map_err(e)?),
                Value::Module(m) => Value::Ideal(m.annihilator().map_err(e)?),
                _ => return Err(args.wrong(0, "subquotient or module")),
            },
            "kaehler" => {
                let r = args.ring(0)?;
                let base = match args.pos.get(1) {
                    Some(_) => args.normalization(1)?,
                    None => NormalizationData::base_field(&r),
                };
                Value::Module(kaehler_presentation(&r, &base).map_err(e)?)
            }
            "fitting" => {
                let m = args.module(0)?;
                Value::Ideal(fitting_ideal(&m, args.usize(1)?).map_err(e)?)
            }
            "jacobian" => Value::Ideal(jacobian_ideal(&args.ring(0)?).map_err(e)?),
            "kaehler_different" | "kappa" => {
                let (r, a) = self.ring_and_base(&args)?;
                Value::Ideal(kaehler_different(&r, &a).map_err(e)?)
            }
            "noether_different" | "aleph" => {
                let (r, a) = self.ring_and_base(&args)?;
                Value::Ideal(noether_different(&r, &a).map_err(e)?)
            }
            // Doubled variables stay internal: report invariants only.
            "enveloping_ring" | "enveloping" => {
                let (r, a) = self.ring_and_base(&args)?;
                let env = enveloping(&r, &a).map_err(e)?;
                let er = env.ring();
                let dim = er.krull_dimension().to_string();
                let vdim = er.vector_space_dimension().map_or("infinite".to_string(), |v| v.to_string());
                let kernel = env.kernel_generators().len();
                Value::Status {
                    ok: env.is_well_defined(),
                    text: format!(
                        "variables: {}\ndim: {dim}\nvector_dim: {vdim}\nkernel generators: {kernel}\nmultiplication well defined: {}",
                        er.nvars(),
                        env.is_well_defined()
                    ),
                    json: json!({
                        "variables": er.nvars(),
                        "dim": dim,
                        "vector_dim": vdim,
                        "kernel_generators": kernel,
                        "well_defined": env.is_well_defined(),
                    }),
                }
            }
            "tor_vanishing" => {
                let (r, a) = self.ring_and_base(&args)?;
                let t = tor_vanishing_certifies_equality(&r, &a).map_err(e)?;
                let degrees: Vec<String> = t
                    .degrees
                    .iter()
                    .map(|(i, z)| format!("Tor_{i} {}", if *z { "= 0" } else { "!= 0" }))
                    .collect();
                Value::Status {
                    ok: t.certified(),
                    text: format!("{}\n{}", t.status, degrees.join("\n")).trim_end().to_string(),
                    json: serde_json::to_value(&t).unwrap_or(Json::Null),
                }
            }
            "probe" => {
                args.max(3)?;
                Value::Probe(Probe {
                    degree: args.usize(0)?,
                    source: args.module(1)?,
                    target: args.module(2)?,
                })
            }
            "pair" => {
                args.max(2)?;
                let m = args.module(0)?;
                let n = args.module(1)?;
                Value::Pair(format!("({}, {})", raw[0].value, raw[1].value), m, n)
            }
            "refute" => {
                let r = args.ring(1)?;
                let z = args.poly(0, &r)?;
                let mut probes = Vec::new();
                for i in 2..args.pos.len() {
                    match &args.pos[i].0 {
                        Value::Probe(p) => probes.push(p.clone()),
                        _ => return Err(args.wrong(i, "probe")),
                    }
                }
                let out = derived_different_refute(&z, &r, &probes).map_err(e)?;
                Value::Status {
                    ok: matches!(out, Refutation::Refuted { .. }),
                    text: out.to_string(),
                    json: serde_json::to_value(&out).unwrap_or(Json::Null),
                }
            }
            "radical_agreement" => Value::Bool(radical_agreement(&args.ideal(0)?, &args.ideal(1)?).map_err(e)?),
            "smooth" => {
                let out = smoothness_criterion(&args.ring(0)?).map_err(e)?;
                let witness = match &out {
                    Smoothness::Singular(j) => Some(ideal_string(j)),
                    Smoothness::Smooth => None,
                };
                Value::Status {
                    ok: out.is_smooth(),
                    text: match &witness {
                        Some(w) => format!("singular, witness {w}"),
                        None => "smooth".into(),
                    },
                    json: json!({ "smooth": out.is_smooth(), "witness": witness }),
                }
            }
            "normalization_check" => {
                let a = args.normalization(0)?;
                match a.certificate() {
                    Ok(c) => Value::Status {
                        ok: true,
                        text: c.to_string(),
                        json: serde_json::to_value(c).unwrap_or(Json::Null),
                    },
                    Err(x) => Value::Status {
                        ok: false,
                        text: format!("not certified: {x}"),
                        json: json!({ "error": x.to_string() }),
                    },
                }
            }
            "annihilation_exponent" => {
                let r = args.ring(0)?;
                let j = args.ideal(1)?;
                args.same_ring(&r, j.ring())?;
                let s_max = match args.keys.get("smax") {
                    Some((Value::Int(v), _)) if *v > 0 => *v as usize,
                    Some((_, sp)) => return Err(Diagnostic::new(*sp, "`smax` must be a positive integer")),
                    None => self.opts.s_max,
                };
                let mut corpus = ProbeCorpus::standard(&r);
                for (n, m) in &self.modules {
                    if m.ring().same_as(&r) {
                        corpus.add_module(n, m.clone()).map_err(e)?;
                    }
                }
                for i in 2..args.pos.len() {
                    match &args.pos[i].0 {
                        Value::Pair(l, m, n) => corpus.add_pair(l.clone(), m.clone(), n.clone()).map_err(e)?,
                        Value::Module(m) => corpus.add_module(&raw[i].value.to_string(), m.clone()).map_err(e)?,
                        _ => return Err(args.wrong(i, "module pair")),
                    }
                }
                match annihilation_exponent(&r, &j, &corpus, s_max).map_err(e)? {
                    AnnihilationExponent::Found(s) => Value::Int(s as i64),
                    x @ AnnihilationExponent::Exceeded(_) => Value::Status {
                        ok: false,
                        text: x.to_string(),
                        json: json!(x.to_string()),
                    },
                }
            }
            "decomposition" => {
                let target = args.ideal(0)?;
                let parts = args.primes(1)?;
                let claim = DecompositionClaim::new(target, parts).map_err(e)?;
                Value::Bool(decomposition_check(&claim).map_err(e)?)
            }
            "component_dims" => {
                let primes = args.primes(0)?;
                let dims = component_dimensions(&primes).map_err(e)?;
                Value::List(dims.into_iter().map(|d| Value::Int(d as i64)).collect())
            }
            "equidimensional" => {
                let primes = args.primes(0)?;
                let dims = component_dimensions(&primes).map_err(e)?;
                Value::Bool(dims.windows(2).all(|w| w[0] == w[1]))
            }
            "theorem2" | "hypotheses" => {
                let r = args.ring(0)?;
                let primes = args.primes(1)?;
                let claim = DecompositionClaim::new(Ideal::zero(&r), primes.clone()).map_err(e)?;
                let rep = theorem2_hypotheses(&r, &claim, &primes).map_err(e)?;
                Value::Status {
                    ok: rep.passes(),
                    text: rep.to_string(),
                    json: serde_json::to_value(&rep).unwrap_or(Json::Null),
                }
            }
            _ => {
                return Err(Diagnostic::new(span, format!("unknown command `{name}`")));
            }
        };
        Ok(v)
    }

    /// `(R, A)` or `(A)`; a bare ring means `A = k`.
    fn ring_and_base(&self, args: &Args) -> Res<(Arc<QuotientRing>, NormalizationData)> {
        match &args.get(0)?.0 {
            Value::Normalization(a) => Ok((a.ring().clone(), a.clone())),
            Value::Ring(r) => {
                let a = match args.pos.get(1) {
                    Some(_) => args.normalization(1)?,
                    None => NormalizationData::base_field(r),
                };
                args.same_ring(r, a.ring())?;
                Ok((r.clone(), a))
            }
            _ => Err(args.wrong(0, "ring or normalization")),
        }
    }
}

/// Assertion label: the expression without spaces.
fn label(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Report {
        run_source(src, &ExecOptions::default())
    }

    const FIRST: &str = "ring R = poly(QQ, [x, y]) / ideal(x^5, x*y)\nmodule M = coker(R, [[x^3]])\n";

    #[test]
    fn first_example_script() {
        let rep = run(&format!(
            "{FIRST}assert_not acts_zero(x, ext(R, 2, M, M))\nassert acts_zero(y, ext(R, 2, M, M))\n\
             assert_equal(jacobian(R), ideal(x, y))\nassert_equal(ranks(resolution(M, 3)), [1, 1, 2, 3])\n"
        ));
        assert_eq!(rep.status, Status::Ok, "{}", rep.to_text());
        assert_eq!(rep.exit_code(), 0);
        assert_eq!(rep.assertions().count(), 4);
    }

    #[test]
    fn failing_assertion_exits_one() {
        let rep = run(&format!("{FIRST}assert acts_zero(x, ext(R, 2, M, M))\n"));
        assert_eq!(rep.exit_code(), 1);
        let a = rep.assertions().next().unwrap();
        assert_eq!(a.line("ex."), "FAIL ex.acts_zero(x,ext(R,2,M,M)) expected=true got=false");
    }

    #[test]
    fn undeclared_names_are_diagnostics() {
        let rep = run("ring R = poly(QQ, [x])\njacobian(S)\n");
        assert_eq!(rep.exit_code(), 2);
        let d = rep.diagnostic.unwrap();
        assert_eq!((d.span.line, d.span.col), (2, 10));
        assert!(d.message.contains("`S`"));
        assert_eq!(run("field F = GF(4)\n").exit_code(), 2);
    }

    #[test]
    fn jacobian_block() {
        let rep = run("ring R = poly(GF(13), [x, y, z]) / ideal(x*y, x^5 - x*z^4)\njacobian(R)\n");
        let block = &rep.commands[1].text;
        for g in ["x", "y", "z^4"] {
            assert!(block.lines().any(|l| l == g), "{block}");
        }
    }

    #[test]
    fn json_and_text_agree() {
        let rep = run("ring R = poly(QQ, [x, y])\nlet J = ideal(x^2 - y^2, x*y)\ngroebner(J)\n");
        let j = rep.to_json();
        assert_eq!(j["status"], "ok");
        let basis = j["commands"][2]["result"]["basis"].as_array().unwrap();
        let text = &rep.commands[2].text;
        for b in basis {
            assert!(text.lines().any(|l| l == b.as_str().unwrap()));
        }
    }

    #[test]
    fn ring_mismatch_carries_the_span() {
        let rep = run("ring R = poly(QQ, [x])\nring S = poly(QQ, [y])\nequal(ideal(R, x), ideal(S, y))\n");
        assert_eq!(rep.exit_code(), 2);
        assert_eq!(rep.diagnostic.unwrap().span.line, 3);
    }
}
