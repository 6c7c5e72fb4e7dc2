//! Runtime values of the statement language and their canonical text form.

use std::sync::Arc;

use katoforge::algebra::Ring;
use katoforge::finite_fields::{GFConfig, GFElem};
use katoforge::forms::DiffForm;
use katoforge::function_fields::{FuncField, Laurent, RatFunc};
use katoforge::kato::HClass;
use katoforge::milnor::{ASExtension, MilnorElement};
use katoforge::witt::WittVector;

pub type Series = Laurent<GFElem>;

pub enum FieldKind {
    Finite(Arc<GFConfig>),
    Rational(Arc<FuncField>),
    Laurent { cfg: Arc<GFConfig>, var: String },
}

pub struct FieldDecl {
    pub name: String,
    pub kind: FieldKind,
    /// Set when the field was declared as `AS(base, u)`.
    pub ext: Option<ASExtension>,
    pub base_name: Option<String>,
}

impl FieldDecl {
    pub fn config(&self) -> &Arc<GFConfig> {
        match &self.kind {
            FieldKind::Finite(cfg) | FieldKind::Laurent { cfg, .. } => cfg,
            FieldKind::Rational(f) => f.base(),
        }
    }

    pub fn vars(&self) -> Vec<String> {
        match &self.kind {
            FieldKind::Finite(_) => Vec::new(),
            FieldKind::Rational(f) => f.vars().to_vec(),
            FieldKind::Laurent { var, .. } => vec![var.clone()],
        }
    }

    /// Text form of the declaration, e.g. `GF(2)(t)`.
    pub fn describe(&self) -> String {
        let cfg = self.config();
        let gf = if cfg.degree() == 1 { format!("GF({})", cfg.p()) } else { format!("GF({}, {})", cfg.p(), cfg.degree()) };
        match &self.kind {
            FieldKind::Finite(_) => gf,
            FieldKind::Rational(f) => format!("{gf}({})", f.vars().join(", ")),
            FieldKind::Laurent { var, .. } => format!("{gf}(({var}))"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Elem {
    Gf(GFElem),
    Rat(RatFunc),
    Ser(Series),
}

#[derive(Clone, Debug, PartialEq)]
pub enum WittVal {
    Gf(WittVector<GFElem>),
    Rat(WittVector<RatFunc>),
    Ser(WittVector<Series>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassVal {
    Gf(HClass<GFElem>),
    Rat(HClass<RatFunc>),
    Ser(HClass<Series>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Elem(Elem),
    Witt(WittVal),
    Symbol(MilnorElement),
    Class(ClassVal),
    Form(DiffForm),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::Elem(_) => "field element",
            Value::Witt(_) => "Witt vector",
            Value::Symbol(_) => "symbol",
            Value::Class(_) => "class",
            Value::Form(_) => "differential form",
        }
    }

    pub fn level(&self) -> Option<usize> {
        match self {
            Value::Witt(WittVal::Gf(w)) => Some(w.level()),
            Value::Witt(WittVal::Rat(w)) => Some(w.level()),
            Value::Witt(WittVal::Ser(w)) => Some(w.level()),
            Value::Class(ClassVal::Gf(c)) => Some(c.level()),
            Value::Class(ClassVal::Rat(c)) => Some(c.level()),
            Value::Class(ClassVal::Ser(c)) => Some(c.level()),
            _ => None,
        }
    }
}

/// Identity of the field a value lives in, for compatibility checks.
#[derive(Clone, Debug)]
pub enum FieldId {
    Finite(Arc<GFConfig>),
    Rational(Arc<FuncField>),
    Laurent(Arc<GFConfig>),
}

impl FieldId {
    pub fn same(&self, other: &FieldId) -> bool {
        match (self, other) {
            (FieldId::Finite(a), FieldId::Finite(b)) | (FieldId::Laurent(a), FieldId::Laurent(b)) => Arc::ptr_eq(a, b),
            (FieldId::Rational(a), FieldId::Rational(b)) => **a == **b,
            _ => false,
        }
    }

    pub fn of_decl(d: &FieldDecl) -> FieldId {
        match &d.kind {
            FieldKind::Finite(c) => FieldId::Finite(c.clone()),
            FieldKind::Rational(f) => FieldId::Rational(f.clone()),
            FieldKind::Laurent { cfg, .. } => FieldId::Laurent(cfg.clone()),
        }
    }
}

impl Elem {
    pub fn field_id(&self) -> FieldId {
        match self {
            Elem::Gf(a) => FieldId::Finite(a.config().clone()),
            Elem::Rat(f) => FieldId::Rational(f.field().clone()),
            Elem::Ser(s) => FieldId::Laurent(s.template().config().clone()),
        }
    }
}

pub fn field_id(v: &Value) -> Option<FieldId> {
    Some(match v {
        Value::Int(_) | Value::Bool(_) => return None,
        Value::Elem(e) => e.field_id(),
        Value::Witt(WittVal::Gf(w)) => FieldId::Finite(w.template().config().clone()),
        Value::Witt(WittVal::Rat(w)) => FieldId::Rational(w.template().field().clone()),
        Value::Witt(WittVal::Ser(w)) => FieldId::Laurent(w.template().template().config().clone()),
        Value::Class(ClassVal::Gf(c)) => FieldId::Finite(c.template().config().clone()),
        Value::Class(ClassVal::Rat(c)) => FieldId::Rational(c.template().field().clone()),
        Value::Class(ClassVal::Ser(c)) => FieldId::Laurent(c.template().template().config().clone()),
        Value::Symbol(s) => FieldId::Rational(s.field().clone()),
        Value::Form(f) => FieldId::Rational(f.field().clone()),
    })
}

/// Render a series in a named variable; exact series print without `O(…)`.
pub fn render_series(s: &Series, var: &str) -> String {
    s.render(var)
}

pub fn render_elem(e: &Elem, var: &str) -> String {
    match e {
        Elem::Gf(a) => a.to_string(),
        Elem::Rat(f) => f.render(),
        Elem::Ser(s) => render_series(s, var),
    }
}

fn render_coords<K>(coords: &[K], f: impl Fn(&K) -> String) -> String {
    format!("[{}]", coords.iter().map(f).collect::<Vec<_>>().join(", "))
}

/// Canonical text of a value; `var` names the series variable.
pub fn render(v: &Value, var: &str) -> String {
    let ser = |s: &Series| render_series(s, var);
    match v {
        Value::Int(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Elem(e) => render_elem(e, var),
        Value::Witt(WittVal::Gf(w)) => render_coords(w.coords(), |a| a.to_string()),
        Value::Witt(WittVal::Rat(w)) => render_coords(w.coords(), RatFunc::render),
        Value::Witt(WittVal::Ser(w)) => render_coords(w.coords(), ser),
        Value::Class(ClassVal::Gf(c)) => c.render_with(|a| a.to_string()),
        Value::Class(ClassVal::Rat(c)) => c.render_with(RatFunc::render),
        Value::Class(ClassVal::Ser(c)) => c.render_with(ser),
        Value::Symbol(s) => s.render(),
        Value::Form(f) => f.render(),
    }
}

pub fn elem_is_zero(e: &Elem) -> bool {
    match e {
        Elem::Gf(a) => a.is_zero(),
        Elem::Rat(f) => f.is_zero(),
        Elem::Ser(s) => s.is_exact_zero(),
    }
}
