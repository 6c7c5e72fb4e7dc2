//! Expression evaluation against a session.

use katoforge::algebra::Ring;
use katoforge::finite_fields::GFElem;
use katoforge::forms::DiffForm;
use katoforge::function_fields::{FuncField, Laurent, RatFunc};
use katoforge::kato::{self, h_build};
use katoforge::milnor::{ASExtension, MilnorElement};
use katoforge::witt::{witt_as_solve, WittVector};
use std::sync::Arc;

use crate::ast::{BinOp, Expr};
use crate::error::CliError;
use crate::session::Session;
use crate::value::*;

pub type R<T> = Result<T, CliError>;

/// Per-statement evaluation context.
pub struct Cx<'a> {
    pub decl: Option<&'a FieldDecl>,
    pub line: usize,
    pub level: usize,
    pub precision: i64,
}

impl<'a> Cx<'a> {
    pub fn lib(&self, e: katoforge::Error) -> CliError {
        CliError::Lib { line: self.line, source: e }
    }

    pub fn ty(&self, message: impl Into<String>) -> CliError {
        CliError::Type { line: self.line, message: message.into() }
    }

    pub fn decl(&self) -> R<&'a FieldDecl> {
        self.decl.ok_or_else(|| self.ty("no field has been declared"))
    }

    fn rational(&self) -> R<&'a Arc<FuncField>> {
        match &self.decl()?.kind {
            FieldKind::Rational(f) => Ok(f),
            _ => Err(self.ty(format!("`{}` is not a rational function field", self.decl()?.name))),
        }
    }
}

macro_rules! witt_map {
    ($w:expr, $v:ident => $body:expr) => {
        match $w {
            WittVal::Gf($v) => WittVal::Gf($body),
            WittVal::Rat($v) => WittVal::Rat($body),
            WittVal::Ser($v) => WittVal::Ser($body),
        }
    };
}

macro_rules! witt_zip {
    ($a:expr, $b:expr, $x:ident, $y:ident => $body:expr, $err:expr) => {
        match ($a, $b) {
            (WittVal::Gf($x), WittVal::Gf($y)) => WittVal::Gf($body),
            (WittVal::Rat($x), WittVal::Rat($y)) => WittVal::Rat($body),
            (WittVal::Ser($x), WittVal::Ser($y)) => WittVal::Ser($body),
            _ => return Err($err),
        }
    };
}

macro_rules! class_map {
    ($c:expr, $v:ident => $body:expr) => {
        match $c {
            ClassVal::Gf($v) => ClassVal::Gf($body),
            ClassVal::Rat($v) => ClassVal::Rat($body),
            ClassVal::Ser($v) => ClassVal::Ser($body),
        }
    };
}

macro_rules! class_zip {
    ($a:expr, $b:expr, $x:ident, $y:ident => $body:expr, $err:expr) => {
        match ($a, $b) {
            (ClassVal::Gf($x), ClassVal::Gf($y)) => ClassVal::Gf($body),
            (ClassVal::Rat($x), ClassVal::Rat($y)) => ClassVal::Rat($body),
            (ClassVal::Ser($x), ClassVal::Ser($y)) => ClassVal::Ser($body),
            _ => return Err($err),
        }
    };
}

pub fn int_elem(decl: &FieldDecl, n: i64) -> Elem {
    match &decl.kind {
        FieldKind::Finite(c) => Elem::Gf(GFElem::from_int(c, n)),
        FieldKind::Rational(f) => Elem::Rat(RatFunc::from_int(f, n)),
        FieldKind::Laurent { cfg, .. } => Elem::Ser(Laurent::constant(GFElem::from_int(cfg, n))),
    }
}

fn int_like(e: &Elem, n: i64) -> Elem {
    match e {
        Elem::Gf(a) => Elem::Gf(GFElem::from_int(a.config(), n)),
        Elem::Rat(f) => Elem::Rat(RatFunc::from_int(f.field(), n)),
        Elem::Ser(s) => Elem::Ser(Laurent::constant(GFElem::from_int(s.template().config(), n))),
    }
}

fn elem_neg(e: &Elem) -> Elem {
    match e {
        Elem::Gf(a) => Elem::Gf(Ring::neg(a)),
        Elem::Rat(f) => Elem::Rat(Ring::neg(f)),
        Elem::Ser(s) => Elem::Ser(s.neg()),
    }
}

fn is_precision(e: &katoforge::Error) -> bool {
    matches!(e, katoforge::Error::PrecisionExhausted(_))
}

/// Exact series whose inverse is infinite are cut to the session precision.
fn series_div(a: &Series, b: &Series, cx: &Cx) -> R<Series> {
    match a.try_div(b) {
        Err(e) if is_precision(&e) && b.is_exact() => a.try_div(&b.truncated(cx.precision)),
        r => r,
    }
    .map_err(|e| cx.lib(e))
}

fn elem_arith(op: BinOp, a: &Elem, b: &Elem, cx: &Cx) -> R<Elem> {
    if !a.field_id().same(&b.field_id()) {
        return Err(cx.ty("operands live in different fields"));
    }
    let lib = |e| cx.lib(e);
    Ok(match (a, b) {
        (Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(
            match op {
                BinOp::Add => x.try_add(y),
                BinOp::Sub => x.try_sub(y),
                BinOp::Mul => x.try_mul(y),
                _ => x.try_div(y),
            }
            .map_err(lib)?,
        ),
        (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(match op {
            BinOp::Add => Ring::add(x, y),
            BinOp::Sub => Ring::sub(x, y),
            BinOp::Mul => Ring::mul(x, y),
            _ => x.try_div(y).map_err(lib)?,
        }),
        (Elem::Ser(x), Elem::Ser(y)) => Elem::Ser(match op {
            BinOp::Add => x.add(y),
            BinOp::Sub => x.sub(y),
            BinOp::Mul => x.mul(y),
            _ => series_div(x, y, cx)?,
        }),
        _ => return Err(cx.ty("operands live in different fields")),
    })
}

fn elem_pow(a: &Elem, n: i64, cx: &Cx) -> R<Elem> {
    let lib = |e| cx.lib(e);
    Ok(match a {
        Elem::Gf(x) => Elem::Gf(x.pow_int(n).map_err(lib)?),
        Elem::Rat(x) => Elem::Rat(x.pow_int(n).map_err(lib)?),
        Elem::Ser(x) => Elem::Ser(
            match x.pow_int(n) {
                Err(e) if is_precision(&e) && x.is_exact() => x.truncated(cx.precision).pow_int(n),
                r => r,
            }
            .map_err(lib)?,
        ),
    })
}

fn witt_from(coords: Vec<Elem>, cx: &Cx) -> R<WittVal> {
    let lib = |e| cx.lib(e);
    Ok(match &coords[0] {
        Elem::Gf(_) => {
            let v = coords.into_iter().map(|e| if let Elem::Gf(a) = e { a } else { unreachable!() }).collect();
            WittVal::Gf(WittVector::new(v).map_err(lib)?)
        }
        Elem::Rat(_) => {
            let v = coords.into_iter().map(|e| if let Elem::Rat(a) = e { a } else { unreachable!() }).collect();
            WittVal::Rat(WittVector::new(v).map_err(lib)?)
        }
        Elem::Ser(_) => {
            let v = coords.into_iter().map(|e| if let Elem::Ser(a) = e { a } else { unreachable!() }).collect();
            WittVal::Ser(WittVector::new(v).map_err(lib)?)
        }
    })
}

/// `(a, 0, …, 0)` at the given level.
fn scalar_witt(a: Elem, level: usize, cx: &Cx) -> R<WittVal> {
    let zero = int_like(&a, 0);
    let mut coords = vec![a];
    coords.resize(level.max(1), zero);
    witt_from(coords, cx)
}

fn witt_neg(w: &WittVal) -> WittVal {
    witt_map!(w, x => x.neg())
}

fn class_neg(c: &ClassVal) -> ClassVal {
    class_map!(c, x => x.neg())
}

fn op_name(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "+",
        BinOp::Sub => "-",
        BinOp::Mul => "*",
        BinOp::Div => "/",
        BinOp::Pow => "^",
    }
}

impl Session {
    pub fn eval(&self, e: &Expr, cx: &Cx) -> R<Value> {
        match e {
            Expr::Int(n) => Ok(Value::Int(*n)),
            Expr::Name(s, col) => self.lookup(s, *col, cx),
            Expr::Neg(a) => self.negate(self.eval(a, cx)?, cx),
            Expr::Bin(BinOp::Pow, a, b) => {
                let base = self.eval(a, cx)?;
                let exp = self.eval(b, cx)?;
                self.power(base, exp, cx)
            }
            Expr::Bin(op, a, b) => {
                let x = self.eval(a, cx)?;
                let y = self.eval(b, cx)?;
                self.binary(*op, x, y, cx)
            }
            Expr::Call(f, args, col) => self.call(f, args, *col, cx),
            Expr::Witt(items) => {
                let coords = items.iter().map(|i| self.elem_arg(i, cx)).collect::<R<Vec<_>>>()?;
                Ok(Value::Witt(witt_from(coords, cx)?))
            }
            Expr::Symbol(items) => {
                let field = cx.rational()?;
                let entries = items
                    .iter()
                    .map(|i| match self.elem_arg(i, cx)? {
                        Elem::Rat(f) => Ok(f),
                        _ => unreachable!(),
                    })
                    .collect::<R<Vec<_>>>()?;
                Ok(Value::Symbol(MilnorElement::symbol_in(field, &entries).map_err(|e| cx.lib(e))?))
            }
            Expr::Class(w, slots) => {
                let w = self.witt_arg(w, cx)?;
                let id = FieldId::of_decl(cx.decl()?);
                if !field_id(&Value::Witt(w.clone())).is_some_and(|f| f.same(&id)) {
                    return Err(cx.ty("the Witt slot lives in a different field"));
                }
                let b = slots.iter().map(|s| self.elem_arg(s, cx)).collect::<R<Vec<_>>>()?;
                Ok(Value::Class(class_from(w, b, cx)?))
            }
        }
    }

    fn lookup(&self, s: &str, col: usize, cx: &Cx) -> R<Value> {
        if let Some(v) = self.values.get(s) {
            return Ok(v.clone());
        }
        if s == "true" || s == "false" {
            return Ok(Value::Bool(s == "true"));
        }
        let unknown = || CliError::UnknownName { line: cx.line, col, name: s.to_string() };
        let decl = cx.decl.ok_or_else(unknown)?;
        let vars = decl.vars();
        if let Some(k) = vars.iter().position(|v| v == s) {
            return Ok(Value::Elem(match &decl.kind {
                FieldKind::Rational(f) => Elem::Rat(RatFunc::var(f, k)),
                FieldKind::Laurent { cfg, .. } => Elem::Ser(Laurent::monomial(GFElem::one(cfg), 1)),
                FieldKind::Finite(_) => unreachable!(),
            }));
        }
        let cfg = decl.config();
        if s == "z" && cfg.degree() > 1 {
            let g = GFElem::generator(cfg);
            return Ok(Value::Elem(match &decl.kind {
                FieldKind::Finite(_) => Elem::Gf(g),
                FieldKind::Rational(f) => Elem::Rat(RatFunc::constant(f, g)),
                FieldKind::Laurent { .. } => Elem::Ser(Laurent::constant(g)),
            }));
        }
        if let (Some(rest), FieldKind::Rational(f)) = (s.strip_prefix('d'), &decl.kind) {
            if let Some(k) = f.var_index(rest) {
                return Ok(Value::Form(DiffForm::dx(f, k).map_err(|e| cx.lib(e))?));
            }
        }
        Err(unknown())
    }

    /// An element of the statement's field; integers are mapped in.
    pub fn to_elem(&self, v: Value, cx: &Cx) -> R<Elem> {
        let decl = cx.decl()?;
        match v {
            Value::Int(n) => Ok(int_elem(decl, n)),
            Value::Elem(e) if e.field_id().same(&FieldId::of_decl(decl)) => Ok(e),
            Value::Elem(_) => Err(cx.ty(format!("element does not live in `{}`", decl.name))),
            other => Err(cx.ty(format!("expected a field element, found a {}", other.kind()))),
        }
    }

    fn elem_arg(&self, e: &Expr, cx: &Cx) -> R<Elem> {
        let v = self.eval(e, cx)?;
        self.to_elem(v, cx)
    }

    /// A Witt vector, or a scalar read as `(a, 0, …)` at the session level.
    fn witt_arg(&self, e: &Expr, cx: &Cx) -> R<WittVal> {
        match self.eval(e, cx)? {
            Value::Witt(w) => Ok(w),
            other => scalar_witt(self.to_elem(other, cx)?, cx.level, cx),
        }
    }

    fn negate(&self, v: Value, cx: &Cx) -> R<Value> {
        Ok(match v {
            Value::Int(n) => Value::Int(n.checked_neg().ok_or_else(|| cx.ty("integer overflow"))?),
            Value::Elem(e) => Value::Elem(elem_neg(&e)),
            Value::Witt(w) => Value::Witt(witt_neg(&w)),
            Value::Symbol(s) => Value::Symbol(s.neg()),
            Value::Class(c) => Value::Class(class_neg(&c)),
            Value::Form(f) => Value::Form(f.neg()),
            Value::Bool(_) => return Err(cx.ty("cannot negate a boolean")),
        })
    }

    fn power(&self, base: Value, exp: Value, cx: &Cx) -> R<Value> {
        match (base, exp) {
            (Value::Form(a), Value::Form(b)) => Ok(Value::Form(a.wedge(&b).map_err(|e| cx.lib(e))?)),
            (Value::Int(a), Value::Int(n)) if n >= 0 => {
                let n = u32::try_from(n).map_err(|_| cx.ty("exponent too large"))?;
                a.checked_pow(n).map(Value::Int).ok_or_else(|| cx.ty("integer overflow"))
            }
            (Value::Int(a), Value::Int(n)) => {
                let a = self.to_elem(Value::Int(a), cx)?;
                Ok(Value::Elem(elem_pow(&a, n, cx)?))
            }
            (Value::Elem(a), Value::Int(n)) => Ok(Value::Elem(elem_pow(&a, n, cx)?)),
            (Value::Witt(w), Value::Int(n)) if n >= 0 => {
                let mut acc = witt_map!(&w, x => WittVector::one(&x.template(), x.level()).map_err(|e| cx.lib(e))?);
                for _ in 0..n {
                    acc = witt_zip!(&acc, &w, x, y => x.mul(y), cx.ty("mismatched Witt vectors"));
                }
                Ok(Value::Witt(acc))
            }
            (b, e) => Err(cx.ty(format!("cannot raise a {} to a {}", b.kind(), e.kind()))),
        }
    }

    fn binary(&self, op: BinOp, x: Value, y: Value, cx: &Cx) -> R<Value> {
        use Value::*;
        let mismatch = |a: &Value, b: &Value| cx.ty(format!("cannot apply `{}` to a {} and a {}", op_name(op), a.kind(), b.kind()));
        if let (Some(a), Some(b)) = (field_id(&x), field_id(&y)) {
            if !a.same(&b) {
                return Err(cx.ty("operands live in different fields"));
            }
        }
        if let (Some(a), Some(b)) = (x.level(), y.level()) {
            if a != b {
                return Err(cx.ty(format!("operands have levels {a} and {b}")));
            }
        }
        let lib = |e| cx.lib(e);
        Ok(match (op, x, y) {
            (BinOp::Div, Int(a), Int(b)) => {
                let a = self.to_elem(Int(a), cx)?;
                let b = self.to_elem(Int(b), cx)?;
                Elem(elem_arith(op, &a, &b, cx)?)
            }
            (_, Int(a), Int(b)) => {
                let r = match op {
                    BinOp::Add => a.checked_add(b),
                    BinOp::Sub => a.checked_sub(b),
                    _ => a.checked_mul(b),
                };
                Int(r.ok_or_else(|| cx.ty("integer overflow"))?)
            }
            (_, Elem(a), Elem(b)) => Elem(elem_arith(op, &a, &b, cx)?),
            (_, Int(n), Elem(b)) => Elem(elem_arith(op, &int_like(&b, n), &b, cx)?),
            (_, Elem(a), Int(n)) => Elem(elem_arith(op, &a, &int_like(&a, n), cx)?),
            (BinOp::Add, Witt(a), Witt(b)) => Witt(witt_zip!(&a, &b, x, y => x.add(y), cx.ty("mismatched Witt vectors"))),
            (BinOp::Sub, Witt(a), Witt(b)) => Witt(witt_zip!(&a, &b, x, y => x.sub(y), cx.ty("mismatched Witt vectors"))),
            (BinOp::Mul, Witt(a), Witt(b)) => Witt(witt_zip!(&a, &b, x, y => x.mul(y), cx.ty("mismatched Witt vectors"))),
            (BinOp::Mul, Int(k), Witt(w)) | (BinOp::Mul, Witt(w), Int(k)) => Witt(witt_map!(&w, x => x.scale_int(k))),
            (BinOp::Add, Symbol(a), Symbol(b)) => Symbol(a.try_add(&b).map_err(lib)?),
            (BinOp::Sub, Symbol(a), Symbol(b)) => Symbol(a.try_sub(&b).map_err(lib)?),
            (BinOp::Mul, Int(k), Symbol(s)) | (BinOp::Mul, Symbol(s), Int(k)) => Symbol(s.scale(k)),
            (BinOp::Add, Class(a), Class(b)) => {
                Class(class_zip!(&a, &b, x, y => x.try_add(y).map_err(lib)?, cx.ty("classes over different fields")))
            }
            (BinOp::Sub, Class(a), Class(b)) => {
                Class(class_zip!(&a, &b, x, y => x.try_sub(y).map_err(lib)?, cx.ty("classes over different fields")))
            }
            (BinOp::Mul, Int(k), Class(c)) | (BinOp::Mul, Class(c), Int(k)) => Class(class_map!(&c, x => x.scale_int(k))),
            (BinOp::Add, Form(a), Form(b)) => Form(a.try_add(&b).map_err(lib)?),
            (BinOp::Sub, Form(a), Form(b)) => Form(a.try_add(&b.neg()).map_err(lib)?),
            (BinOp::Mul, Form(a), Form(b)) => Form(a.wedge(&b).map_err(lib)?),
            (BinOp::Mul, Int(k), Form(f)) | (BinOp::Mul, Form(f), Int(k)) => Form(f.scale_int(k)),
            (BinOp::Mul, Elem(crate::value::Elem::Rat(g)), Form(f)) | (BinOp::Mul, Form(f), Elem(crate::value::Elem::Rat(g))) => {
                Form(f.scale(&g))
            }
            (BinOp::Div, Form(f), Elem(crate::value::Elem::Rat(g))) => Form(f.scale(&g.inv().map_err(lib)?)),
            (BinOp::Div, Form(f), Int(k)) => {
                let g = RatFunc::from_int(f.field(), k);
                Form(f.scale(&g.inv().map_err(lib)?))
            }
            (_, a, b) => return Err(mismatch(&a, &b)),
        })
    }

    fn unary_arg(&self, name: &str, args: &[Expr], cx: &Cx) -> R<Value> {
        if args.len() != 1 {
            return Err(cx.ty(format!("`{name}` takes one argument")));
        }
        self.eval(&args[0], cx)
    }

    /// The Artin–Schreier extension whose top field is `f`.
    pub fn extension_of(&self, f: &FuncField) -> Option<&ASExtension> {
        self.fields.iter().filter_map(|d| d.ext.as_ref()).find(|e| **e.ext() == *f)
    }

    fn call(&self, name: &str, args: &[Expr], col: usize, cx: &Cx) -> R<Value> {
        let lib = |e| cx.lib(e);
        let bad = |v: &Value| cx.ty(format!("`{name}` does not apply to a {}", v.kind()));
        let v = match name {
            "restrict" | "shift" | "pair" => None,
            _ => {
                if !matches!(
                    name,
                    "d" | "dlog" | "cinv" | "cartier" | "wp" | "F" | "V" | "teich" | "norm" | "oms" | "sigma" | "solve" | "O"
                ) {
                    return Err(CliError::UnknownName { line: cx.line, col, name: name.to_string() });
                }
                Some(self.unary_arg(name, args, cx)?)
            }
        };
        let two = || -> R<(&Expr, &Expr)> {
            match args {
                [a, b] => Ok((a, b)),
                _ => Err(cx.ty(format!("`{name}` takes two arguments"))),
            }
        };
        Ok(match (name, v) {
            ("d", Some(Value::Form(f))) => Value::Form(f.d()),
            ("d", Some(Value::Int(_))) => Value::Form(DiffForm::vanishing(cx.rational()?, 1)),
            ("d", Some(Value::Elem(Elem::Rat(f)))) => Value::Form(DiffForm::function(&f).d()),
            ("dlog", Some(Value::Elem(Elem::Rat(f)))) => Value::Form(DiffForm::dlog(&f).map_err(lib)?),
            ("cinv", Some(Value::Form(f))) => Value::Form(f.cartier_inv()),
            ("cartier", Some(Value::Form(f))) => Value::Form(f.cartier().map_err(lib)?),
            ("wp", Some(Value::Witt(w))) => Value::Witt(witt_map!(&w, x => x.wp())),
            ("wp", Some(v @ (Value::Elem(_) | Value::Int(_)))) => {
                let w = scalar_witt(self.to_elem(v, cx)?, 1, cx)?;
                let image = witt_map!(&w, x => x.wp());
                Value::Elem(match image {
                    WittVal::Gf(x) => Elem::Gf(x.coords()[0].clone()),
                    WittVal::Rat(x) => Elem::Rat(x.coords()[0].clone()),
                    WittVal::Ser(x) => Elem::Ser(x.coords()[0].clone()),
                })
            }
            ("F", Some(Value::Witt(w))) => Value::Witt(witt_map!(&w, x => x.frobenius())),
            ("V", Some(Value::Witt(w))) => Value::Witt(witt_map!(&w, x => x.verschiebung())),
            ("teich", Some(v @ (Value::Elem(_) | Value::Int(_)))) => {
                let level = cx.level;
                Value::Witt(match self.to_elem(v, cx)? {
                    Elem::Gf(a) => WittVal::Gf(WittVector::teichmuller(&a, level).map_err(lib)?),
                    Elem::Rat(a) => WittVal::Rat(WittVector::teichmuller(&a, level).map_err(lib)?),
                    Elem::Ser(a) => WittVal::Ser(WittVector::teichmuller(&a, level).map_err(lib)?),
                })
            }
            ("norm", Some(Value::Elem(Elem::Rat(g)))) => {
                let ext = self.extension_of(g.field()).ok_or_else(|| cx.ty("element is not in an AS extension"))?;
                Value::Elem(Elem::Rat(ext.norm(&g).map_err(lib)?))
            }
            ("norm", Some(Value::Symbol(s))) => {
                let ext = self.extension_of(s.field()).ok_or_else(|| cx.ty("symbol is not over an AS extension"))?;
                Value::Symbol(ext.norm_proj(&s).map_err(lib)?)
            }
            ("oms", Some(Value::Symbol(s))) => {
                let ext = self.extension_of(s.field()).ok_or_else(|| cx.ty("symbol is not over an AS extension"))?;
                Value::Symbol(ext.one_minus_sigma(&s).map_err(lib)?)
            }
            ("sigma", Some(Value::Elem(Elem::Rat(g)))) => {
                let ext = self.extension_of(g.field()).ok_or_else(|| cx.ty("element is not in an AS extension"))?;
                Value::Elem(Elem::Rat(ext.sigma(&g).map_err(lib)?))
            }
            ("solve", Some(v)) => self.solve(v, cx)?,
            ("O", Some(Value::Elem(Elem::Ser(s)))) => {
                let k = s.valuation().filter(|_| s.is_exact() && s.terms().count() == 1);
                let k = k.ok_or_else(|| cx.ty("`O` takes a power of the series variable"))?;
                Value::Elem(Elem::Ser(Laurent::zero_to(k, &s.template().zero_like())))
            }
            ("shift", None) => {
                let (a, b) = two()?;
                let Value::Int(level) = self.eval(b, cx)? else {
                    return Err(cx.ty("`shift` needs an integer level"));
                };
                let level = usize::try_from(level).map_err(|_| cx.ty("levels are positive"))?;
                match self.eval(a, cx)? {
                    Value::Class(c) => Value::Class(class_map!(&c, x => kato::level_shift(x, level).map_err(lib)?)),
                    Value::Witt(w) => Value::Witt(witt_map!(&w, x => x.shift_to(level).map_err(lib)?)),
                    other => return Err(bad(&other)),
                }
            }
            ("pair", None) => {
                let (a, b) = two()?;
                let w = match self.witt_arg(a, cx)? {
                    WittVal::Rat(w) => w,
                    _ => return Err(cx.ty("`pair` needs a Witt vector over a rational function field")),
                };
                match self.eval(b, cx)? {
                    Value::Symbol(s) => Value::Class(ClassVal::Rat(kato::pair(&w, &s).map_err(lib)?)),
                    other => return Err(bad(&other)),
                }
            }
            ("restrict", None) => {
                let (a, b) = two()?;
                let target = match b {
                    Expr::Name(n, _) => n,
                    _ => return Err(cx.ty("`restrict` needs a field name as second argument")),
                };
                let ext = self
                    .fields
                    .iter()
                    .find(|d| &d.name == target)
                    .and_then(|d| d.ext.as_ref())
                    .ok_or_else(|| cx.ty(format!("`{target}` is not an AS extension")))?;
                match self.eval(a, cx)? {
                    Value::Elem(Elem::Rat(f)) => Value::Elem(Elem::Rat(ext.embed(&f).map_err(lib)?)),
                    Value::Symbol(s) => Value::Symbol(ext.restrict(&s).map_err(lib)?),
                    Value::Class(ClassVal::Rat(c)) => Value::Class(ClassVal::Rat(kato::restrict_class(ext, &c).map_err(lib)?)),
                    other => return Err(bad(&other)),
                }
            }
            (_, Some(v)) => return Err(bad(&v)),
            (_, None) => unreachable!(),
        })
    }

    fn solve(&self, v: Value, cx: &Cx) -> R<Value> {
        let lib = |e| cx.lib(e);
        let none = || cx.ty("no solution: the argument is not in the image of the Artin-Schreier map");
        Ok(match v {
            Value::Int(_) => return self.solve(Value::Elem(self.to_elem(v, cx)?), cx),
            Value::Elem(Elem::Gf(a)) => Value::Elem(Elem::Gf(a.as_solve().ok_or_else(none)?)),
            Value::Elem(Elem::Rat(f)) => Value::Elem(Elem::Rat(kato::as_solve_univariate(&f).map_err(lib)?.ok_or_else(none)?)),
            Value::Witt(WittVal::Gf(w)) => Value::Witt(WittVal::Gf(witt_as_solve(&w).ok_or_else(none)?)),
            Value::Witt(WittVal::Rat(w)) => Value::Witt(WittVal::Rat(kato::wp_solve_rational(&w).map_err(lib)?.ok_or_else(none)?)),
            other => return Err(cx.ty(format!("`solve` does not apply to a {}", other.kind()))),
        })
    }
}

fn class_from(w: WittVal, b: Vec<Elem>, cx: &Cx) -> R<ClassVal> {
    let lib = |e| cx.lib(e);
    Ok(match w {
        WittVal::Gf(w) => {
            let b: Vec<_> = b.into_iter().map(|e| if let Elem::Gf(a) = e { a } else { unreachable!() }).collect();
            ClassVal::Gf(h_build(&w, &b).map_err(lib)?)
        }
        WittVal::Rat(w) => {
            let b: Vec<_> = b.into_iter().map(|e| if let Elem::Rat(a) = e { a } else { unreachable!() }).collect();
            ClassVal::Rat(h_build(&w, &b).map_err(lib)?)
        }
        WittVal::Ser(w) => {
            let b: Vec<_> = b.into_iter().map(|e| if let Elem::Ser(a) = e { a } else { unreachable!() }).collect();
            ClassVal::Ser(h_build(&w, &b).map_err(lib)?)
        }
    })
}
