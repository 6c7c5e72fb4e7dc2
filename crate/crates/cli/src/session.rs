//! Session state, statement execution and output records.

use std::collections::HashMap;
use std::io::Write;

use serde_json::{json, Value as Json};

use katoforge::finite_fields::gf_make;
use katoforge::function_fields::{FuncField, Place};
use katoforge::kato::{self, h_zero_test, LocalInvariant};
use katoforge::milnor::{d_symbol, kn_equal, ASExtension, MilnorElement};
use katoforge::witt::witt_trace;
use katoforge::witt::WittVector;

use crate::ast::{Expr, FieldSpec, Setting, Statement, Stmt};
use crate::error::CliError;
use crate::eval::{Cx, R};
use crate::parser::{parse_statement, KEYWORDS};
use crate::value::*;

pub const DEFAULT_PRECISION: i64 = 32;

/// One query result.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub op: &'static str,
    pub inputs: Vec<String>,
    pub result: Json,
    pub text: String,
    pub level: Option<usize>,
    pub field: Option<String>,
}

impl Output {
    pub fn json_line(&self) -> String {
        json!({
            "op": self.op,
            "inputs": self.inputs,
            "result": self.result,
            "level": self.level,
            "field": self.field,
        })
        .to_string()
    }
}

pub struct Session {
    pub(crate) fields: Vec<FieldDecl>,
    current: Option<usize>,
    pub(crate) values: HashMap<String, Value>,
    pub level: usize,
    pub precision: i64,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(DEFAULT_PRECISION)
    }
}

fn invariant_json(inv: &LocalInvariant, var: &str) -> Json {
    json!({ "place": inv.place.render(var), "inv": inv.value, "mod": inv.modulus })
}

fn invariant_text(inv: &LocalInvariant, var: &str) -> String {
    format!("{}: {}", inv.place.render(var), inv.value)
}

impl Session {
    pub fn new(precision: i64) -> Self {
        Session { fields: Vec::new(), current: None, values: HashMap::new(), level: 1, precision }
    }

    pub fn field(&self, name: &str) -> Option<&FieldDecl> {
        self.fields.iter().find(|d| d.name == name)
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn current_field(&self) -> Option<&FieldDecl> {
        self.current.map(|k| &self.fields[k])
    }

    fn context(&self, st: &Statement) -> R<Cx<'_>> {
        let decl = match &st.field {
            Some(name) => Some(self.field(name).ok_or_else(|| CliError::UnknownName {
                line: st.line,
                col: st.text.rfind(name.as_str()).map_or(1, |k| st.text[..k].chars().count() + 1),
                name: name.clone(),
            })?),
            None => self.current_field(),
        };
        Ok(Cx { decl, line: st.line, level: self.level, precision: self.precision })
    }

    /// Series variable used to print a value.
    fn var_for(&self, v: &Value, cx: &Cx) -> String {
        let id = field_id(v);
        let matches =
            |d: &FieldDecl| matches!(d.kind, FieldKind::Laurent { .. }) && id.as_ref().is_some_and(|i| i.same(&FieldId::of_decl(d)));
        cx.decl
            .filter(|d| matches(d))
            .or_else(|| self.fields.iter().find(|d| matches(d)))
            .map_or_else(|| "t".to_string(), |d| d.vars()[0].clone())
    }

    /// Canonical text of a value.
    pub fn render(&self, v: &Value, cx: &Cx) -> String {
        render(v, &self.var_for(v, cx))
    }

    /// Render in the context of the current field.
    pub fn render_value(&self, v: &Value) -> String {
        let cx = Cx { decl: self.current_field(), line: 0, level: self.level, precision: self.precision };
        self.render(v, &cx)
    }

    /// Evaluate a lone expression in the current field.
    pub fn eval_expr(&self, e: &Expr) -> R<Value> {
        let cx = Cx { decl: self.current_field(), line: 1, level: self.level, precision: self.precision };
        self.eval(e, &cx)
    }

    fn check_fresh(&self, name: &str, line: usize) -> R<()> {
        if self.values.contains_key(name) || self.field(name).is_some() {
            return Err(CliError::Type { line, message: format!("`{name}` is already defined") });
        }
        Ok(())
    }

    fn declare(&mut self, name: &str, spec: &FieldSpec, line: usize) -> R<()> {
        self.check_fresh(name, line)?;
        let lib = |e| CliError::Lib { line, source: e };
        let ty = |m: String| CliError::Type { line, message: m };
        let taken = |v: &str| self.values.contains_key(v) || self.field(v).is_some();
        let check_vars = |vars: &[String], e: usize| -> R<()> {
            for (k, v) in vars.iter().enumerate() {
                if vars[..k].contains(v) {
                    return Err(ty(format!("variable `{v}` repeated")));
                }
                if KEYWORDS.contains(&v.as_str()) || (v == "z" && e > 1) || v == "inf" || taken(v) {
                    return Err(ty(format!("`{v}` cannot name a variable")));
                }
            }
            Ok(())
        };
        let decl = match spec {
            FieldSpec::Finite { p, e } => {
                FieldDecl { name: name.into(), kind: FieldKind::Finite(gf_make(*p, *e).map_err(lib)?), ext: None, base_name: None }
            }
            FieldSpec::Rational { p, e, vars } => {
                check_vars(vars, *e)?;
                let cfg = gf_make(*p, *e).map_err(lib)?;
                let names: Vec<&str> = vars.iter().map(String::as_str).collect();
                FieldDecl { name: name.into(), kind: FieldKind::Rational(FuncField::new(&cfg, &names)), ext: None, base_name: None }
            }
            FieldSpec::Laurent { p, e, var } => {
                check_vars(std::slice::from_ref(var), *e)?;
                let cfg = gf_make(*p, *e).map_err(lib)?;
                FieldDecl { name: name.into(), kind: FieldKind::Laurent { cfg, var: var.clone() }, ext: None, base_name: None }
            }
            FieldSpec::ArtinSchreier { base, var } => {
                let b = self.field(base).ok_or_else(|| ty(format!("unknown field `{base}`")))?;
                let FieldKind::Rational(bf) = &b.kind else {
                    return Err(ty(format!("`{base}` is not a rational function field")));
                };
                check_vars(std::slice::from_ref(var), bf.base().degree())?;
                let ext_field = FuncField::new(bf.base(), &[var.as_str()]);
                let ext = ASExtension::new(bf, &ext_field).map_err(lib)?;
                FieldDecl { name: name.into(), kind: FieldKind::Rational(ext_field), ext: Some(ext), base_name: Some(base.clone()) }
            }
        };
        self.fields.push(decl);
        self.current = Some(self.fields.len() - 1);
        Ok(())
    }

    /// Execute one statement; declarations and settings produce no output.
    pub fn execute(&mut self, st: &Statement) -> R<Option<Output>> {
        let line = st.line;
        let ty = |m: &str| CliError::Type { line, message: m.to_string() };
        match &st.stmt {
            Stmt::Field { name, spec } => return self.declare(name, spec, line).map(|_| None),
            Stmt::Use(name) => {
                let k = self.fields.iter().position(|d| &d.name == name).ok_or_else(|| CliError::UnknownName {
                    line,
                    col: st.text.rfind(name.as_str()).map_or(1, |k| k + 1),
                    name: name.clone(),
                })?;
                self.current = Some(k);
                return Ok(None);
            }
            Stmt::Set(Setting::Level, n) => {
                if *n < 1 {
                    return Err(ty("level must be at least 1"));
                }
                self.level = *n as usize;
                return Ok(None);
            }
            Stmt::Set(Setting::Precision, n) => {
                if *n < 1 {
                    return Err(ty("precision must be at least 1"));
                }
                self.precision = *n;
                return Ok(None);
            }
            Stmt::Let { name, expr } => {
                self.check_fresh(name, line)?;
                let v = {
                    let cx = self.context(st)?;
                    self.eval(expr, &cx)?
                };
                self.values.insert(name.clone(), v);
                return Ok(None);
            }
            _ => {}
        }
        let cx = self.context(st)?;
        let out = self.query(st, &cx)?;
        Ok(Some(out))
    }

    fn query(&self, st: &Statement, cx: &Cx) -> R<Output> {
        let lib = |e| cx.lib(e);
        let field = cx.decl.map(|d| d.name.clone());
        let mk = |op: &'static str, inputs: &[&Value], result: Json, text: String| Output {
            op,
            inputs: inputs.iter().map(|v| self.render(v, cx)).collect(),
            result,
            text,
            level: inputs.first().and_then(|v| v.level()),
            field: field.clone(),
        };
        let boolean = |op, inputs: &[&Value], b: bool| mk(op, inputs, Json::Bool(b), b.to_string());
        let form = |e: &Expr| -> R<(Value, katoforge::forms::DiffForm)> {
            match self.eval(e, cx)? {
                Value::Form(f) => Ok((Value::Form(f.clone()), f)),
                Value::Elem(Elem::Rat(g)) => {
                    let f = katoforge::forms::DiffForm::function(&g);
                    Ok((Value::Form(f.clone()), f))
                }
                other => Err(cx.ty(format!("expected a differential form, found a {}", other.kind()))),
            }
        };
        Ok(match &st.stmt {
            Stmt::Eval(e) => {
                let v = self.eval(e, cx)?;
                let text = self.render(&v, cx);
                let mut out = mk("eval", &[], Json::String(text.clone()), text);
                out.inputs = vec![expr_source(st)];
                out.level = v.level();
                out
            }
            Stmt::Dsym(e) => {
                let v = self.eval(e, cx)?;
                let Value::Symbol(s) = &v else {
                    return Err(cx.ty(format!("`dsym` needs a symbol, found a {}", v.kind())));
                };
                let f = d_symbol(s).map_err(lib)?;
                mk("dsym", &[&v], Json::String(f.render()), f.render())
            }
            Stmt::Inv { class, place } => self.inv(class, place.as_ref(), cx, &mk)?,
            Stmt::Recip(e) => {
                let v = self.eval(e, cx)?;
                let Value::Class(ClassVal::Rat(c)) = &v else {
                    return Err(cx.ty("`recip` needs a class over a rational function field"));
                };
                let r = kato::reciprocity_check(c).map_err(lib)?;
                let var = c.template().field().vars()[0].clone();
                let table: Vec<Json> = r.table.iter().map(|i| invariant_json(i, &var)).collect();
                let rows: Vec<String> = r.table.iter().map(|i| invariant_text(i, &var)).collect();
                let text = format!("{} (sum {} mod {}): {}", if r.holds { "holds" } else { "fails" }, r.sum, r.modulus, rows.join(", "));
                mk("recip", &[&v], json!({"holds": r.holds, "sum": r.sum, "mod": r.modulus, "table": table}), text)
            }
            Stmt::Zero(e) => {
                let v = self.eval(e, cx)?;
                let z = match &v {
                    Value::Class(ClassVal::Gf(c)) => h_zero_test(c).map_err(lib)?,
                    Value::Class(ClassVal::Rat(c)) => h_zero_test(c).map_err(lib)?,
                    Value::Class(ClassVal::Ser(c)) => h_zero_test(c).map_err(lib)?,
                    Value::Symbol(s) => kn_equal(s, &MilnorElement::zero(s.field(), s.degree())).map_err(lib)?,
                    Value::Form(f) => f.is_zero(),
                    Value::Elem(e) => elem_is_zero(e),
                    Value::Witt(WittVal::Gf(w)) => w.is_zero(),
                    Value::Witt(WittVal::Rat(w)) => w.is_zero(),
                    Value::Witt(WittVal::Ser(w)) => w.is_zero(),
                    Value::Int(n) => *n == 0,
                    Value::Bool(_) => return Err(cx.ty("`zero` does not apply to a boolean")),
                };
                boolean("zero", &[&v], z)
            }
            Stmt::Decompose(e) => {
                let v = self.eval(e, cx)?;
                let Value::Class(ClassVal::Ser(c)) = &v else {
                    return Err(cx.ty("`decompose` needs a class over a Laurent series field"));
                };
                let d = kato::theorem3_decompose(c).map_err(lib)?;
                let spec = d.specialization.render_with(|a| a.to_string());
                let res = d.residue.as_ref().map(|r| r.render_with(|a| a.to_string()));
                let value = d.residue_value();
                let text = match (&res, value) {
                    (Some(r), Some(k)) => format!("specialization {spec}; residue {r} = {k} mod {}", c.modulus()),
                    _ => format!("specialization {spec}"),
                };
                mk("decompose", &[&v], json!({"specialization": spec, "residue": res, "residue_inv": value, "mod": c.modulus()}), text)
            }
            Stmt::Cartier(e) => {
                let (v, f) = form(e)?;
                let c = f.cartier().map_err(lib)?;
                mk("cartier", &[&v], Json::String(c.render()), c.render())
            }
            Stmt::Nu(e) => {
                let (v, f) = form(e)?;
                boolean("nu", &[&v], f.nu_test())
            }
            Stmt::Exact(e) => {
                let (v, f) = form(e)?;
                boolean("exact", &[&v], f.is_exact())
            }
            Stmt::Kneq(a, b) => {
                let x = self.eval(a, cx)?;
                let y = self.eval(b, cx)?;
                let (Value::Symbol(s), Value::Symbol(t)) = (&x, &y) else {
                    return Err(cx.ty("`kneq` compares two symbols"));
                };
                boolean("kneq", &[&x, &y], kn_equal(s, t).map_err(lib)?)
            }
            Stmt::Field { .. } | Stmt::Use(_) | Stmt::Let { .. } | Stmt::Set(..) => unreachable!(),
        })
    }

    fn place(&self, e: &Expr, cx: &Cx) -> R<Place> {
        if let Expr::Name(n, _) = e {
            if (n == "inf" || n == "oo") && !self.values.contains_key(n) {
                return Ok(Place::Infinity);
            }
        }
        let bad = || cx.ty("a place is `inf` or a monic irreducible polynomial in one variable");
        let Value::Elem(Elem::Rat(f)) = self.eval(e, cx)? else {
            return Err(bad());
        };
        if f.field().nvars() != 1 {
            return Err(bad());
        }
        let (num, den) = f.univariate_parts(0).ok_or_else(bad)?;
        if den.degree() != Some(0) || !den.is_monic() {
            return Err(bad());
        }
        Place::finite(num).map_err(|e| cx.lib(e))
    }

    fn inv(&self, class: &Expr, place: Option<&Expr>, cx: &Cx, mk: &dyn Fn(&'static str, &[&Value], Json, String) -> Output) -> R<Output> {
        let lib = |e| cx.lib(e);
        let v = self.eval(class, cx)?;
        let Value::Class(c) = &v else {
            return Err(cx.ty(format!("`inv` needs a class, found a {}", v.kind())));
        };
        match (c, place) {
            (ClassVal::Rat(c), Some(p)) => {
                let place = self.place(p, cx)?;
                let var = c.template().field().vars()[0].clone();
                let inv = kato::local_invariant(c, &place).map_err(lib)?;
                let mut out = mk("inv", &[&v], invariant_json(&inv, &var), format!("{} mod {}", invariant_text(&inv, &var), inv.modulus));
                out.inputs.push(place.render(&var));
                Ok(out)
            }
            (ClassVal::Rat(c), None) => {
                let var = c.template().field().vars()[0].clone();
                let r = kato::reciprocity_check(c).map_err(lib)?;
                let table: Vec<Json> = r.table.iter().map(|i| invariant_json(i, &var)).collect();
                let rows: Vec<String> = r.table.iter().map(|i| invariant_text(i, &var)).collect();
                Ok(mk("inv", &[&v], Json::Array(table), format!("{} (mod {})", rows.join(", "), r.modulus)))
            }
            (ClassVal::Ser(c), None) => {
                let var = self.var_for(&v, cx);
                let inv = kato::laurent_invariant(c).map_err(lib)?;
                Ok(mk("inv", &[&v], invariant_json(&inv, &var), format!("{} mod {}", invariant_text(&inv, &var), inv.modulus)))
            }
            (ClassVal::Gf(c), None) => {
                let value = if c.degree() == 0 {
                    let mut acc = WittVector::zero(c.template(), c.level()).map_err(lib)?;
                    for t in c.terms() {
                        acc = acc.add(&t.w);
                    }
                    witt_trace(&acc).value
                } else {
                    0
                };
                let m = c.modulus();
                Ok(mk("inv", &[&v], json!({"inv": value, "mod": m}), format!("{value} mod {m}")))
            }
            (_, Some(_)) => Err(cx.ty("`at` applies to classes over rational function fields")),
        }
    }

    /// Parse and execute one line.
    pub fn run_line(&mut self, text: &str, line: usize) -> R<Option<Output>> {
        match parse_statement(text, line)? {
            Some(st) => self.execute(&st),
            None => Ok(None),
        }
    }
}

/// Source text of an evaluated expression, without any `in` suffix.
fn expr_source(st: &Statement) -> String {
    match &st.field {
        Some(f) => {
            let suffix = format!(" in {f}");
            st.text.strip_suffix(suffix.as_str()).unwrap_or(&st.text).trim_end().to_string()
        }
        None => st.text.clone(),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub json: bool,
    pub keep_going: bool,
}

/// Run a script, writing results to `out` and errors to `err`. Returns
/// whether every statement succeeded.
pub fn run_script(session: &mut Session, src: &str, opts: RunOptions, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<bool> {
    let mut ok = true;
    for (k, text) in src.lines().enumerate() {
        match session.run_line(text, k + 1) {
            Ok(Some(o)) => {
                let line = if opts.json { o.json_line() } else { o.text };
                writeln!(out, "{line}")?;
            }
            Ok(None) => {}
            Err(e) => {
                writeln!(err, "error: {e}")?;
                ok = false;
                if !opts.keep_going {
                    break;
                }
            }
        }
    }
    out.flush()?;
    Ok(ok)
}
