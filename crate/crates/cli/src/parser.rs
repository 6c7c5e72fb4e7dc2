//! Recursive-descent parser for single statements.
//!
//! ```text
//! stmt   := 'field' NAME '=' fspec | 'use' NAME | 'let' NAME '=' expr [in]
//!         | 'dsym' expr [in] | 'inv' expr ['at' expr] [in] | 'recip' expr [in]
//!         | 'zero' expr [in] | 'decompose' expr [in] | 'cartier' expr [in]
//!         | 'nu' expr [in] | 'exact' expr [in] | 'kneq' expr ',' expr [in]
//!         | 'set' ('level' | 'precision') INT | expr [in]
//! in     := 'in' NAME
//! fspec  := 'GF' '(' INT [',' INT] ')' ['(' NAME {',' NAME} ')' | '(' '(' NAME ')' ')']
//!         | 'AS' '(' NAME ',' NAME ')'
//! expr   := term {('+' | '-') term}
//! term   := unary {('*' | '/') unary | diff}
//! unary  := '-' unary | power
//! power  := atom ['^' unary]
//! atom   := INT | NAME | NAME '(' [expr {',' expr}] ')' | '(' expr ')'
//!         | '[' expr {',' expr} ']' | '[' expr '|' [expr {',' expr}] ')'
//!         | '{' [expr {',' expr}] '}'
//! ```
//!
//! A `diff` is an atom starting with `d` (`dx`, `d(f)`, `dlog(f)`) written
//! directly after a coefficient, as in `x^2 dx^dy`.

use crate::ast::*;
use crate::error::CliError;
use crate::lexer::{tokenize, Tok, Token};

pub const KEYWORDS: [&str; 15] =
    ["field", "use", "let", "dsym", "inv", "recip", "zero", "decompose", "cartier", "nu", "exact", "kneq", "set", "in", "at"];

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::syntax(self.line, self.col(), message))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Punct(c))
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.is_punct(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn name(&mut self) -> Result<String, CliError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.is_punct('+') {
                BinOp::Add
            } else if self.is_punct('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn starts_diff(&self) -> bool {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "d" => self.peek_at(1) == Some(&Tok::Punct('(')),
            Some(Tok::Ident(s)) => s.len() >= 2 && s.starts_with('d') && !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_punct('*') || self.is_punct('/') {
                let op = if self.is_punct('*') { BinOp::Mul } else { BinOp::Div };
                self.pos += 1;
                let rhs = self.unary()?;
                lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
            } else if self.starts_diff() {
                let rhs = self.power()?;
                lhs = Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.is_punct('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if self.is_punct('^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn list_until(&mut self, close: char) -> Result<Vec<Expr>, CliError> {
        let mut items = Vec::new();
        if self.is_punct(close) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.is_punct(',') {
                self.pos += 1;
            } else {
                self.expect(close)?;
                return Ok(items);
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(s)) => {
                if self.is_punct('(') {
                    self.pos += 1;
                    let args = self.list_until(')')?;
                    Ok(Expr::Call(s, args, col))
                } else {
                    Ok(Expr::Name(s, col))
                }
            }
            Some(Tok::Punct('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Punct('{')) => Ok(Expr::Symbol(self.list_until('}')?)),
            Some(Tok::Punct('[')) => {
                let first = self.expr()?;
                if self.is_punct('|') {
                    self.pos += 1;
                    let slots = self.list_until(')')?;
                    return Ok(Expr::Class(Box::new(first), slots));
                }
                let mut items = vec![first];
                while self.is_punct(',') {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                self.expect(']')?;
                Ok(Expr::Witt(items))
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected an expression")
            }
            None => self.err("unexpected end of line"),
        }
    }

    fn field_spec(&mut self) -> Result<FieldSpec, CliError> {
        let head = self.name()?;
        match head.as_str() {
            "AS" => {
                self.expect('(')?;
                let base = self.name()?;
                self.expect(',')?;
                let var = self.name()?;
                self.expect(')')?;
                Ok(FieldSpec::ArtinSchreier { base, var })
            }
            "GF" => {
                self.expect('(')?;
                let p = self.int()?;
                let e = if self.is_punct(',') {
                    self.pos += 1;
                    self.int()?
                } else {
                    1
                };
                self.expect(')')?;
                if p < 2 || e < 1 {
                    return self.err("GF(p, e) needs p >= 2 and e >= 1");
                }
                let (p, e) = (p as u64, e as usize);
                if !self.is_punct('(') {
                    return Ok(FieldSpec::Finite { p, e });
                }
                self.pos += 1;
                if self.is_punct('(') {
                    self.pos += 1;
                    let var = self.name()?;
                    self.expect(')')?;
                    self.expect(')')?;
                    return Ok(FieldSpec::Laurent { p, e, var });
                }
                let mut vars = vec![self.name()?];
                while self.is_punct(',') {
                    self.pos += 1;
                    vars.push(self.name()?);
                }
                self.expect(')')?;
                Ok(FieldSpec::Rational { p, e, vars })
            }
            _ => {
                self.pos -= 1;
                self.err("expected `GF(...)` or `AS(...)`")
            }
        }
    }

    fn binding_name(&mut self) -> Result<String, CliError> {
        let col = self.col();
        let name = self.name()?;
        if KEYWORDS.contains(&name.as_str()) {
            return Err(CliError::syntax(self.line, col, format!("`{name}` is reserved")));
        }
        Ok(name)
    }

    fn statement(&mut self) -> Result<Stmt, CliError> {
        let word = match self.peek() {
            Some(Tok::Ident(s)) if KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return Ok(Stmt::Eval(self.expr()?)),
        };
        self.pos += 1;
        Ok(match word.as_str() {
            "field" => {
                let name = self.binding_name()?;
                self.expect('=')?;
                Stmt::Field { name, spec: self.field_spec()? }
            }
            "use" => Stmt::Use(self.name()?),
            "let" => {
                let name = self.binding_name()?;
                self.expect('=')?;
                Stmt::Let { name, expr: self.expr()? }
            }
            "dsym" => Stmt::Dsym(self.expr()?),
            "inv" => {
                let class = self.expr()?;
                let place = if self.is_word("at") {
                    self.pos += 1;
                    Some(self.expr()?)
                } else {
                    None
                };
                Stmt::Inv { class, place }
            }
            "recip" => Stmt::Recip(self.expr()?),
            "zero" => Stmt::Zero(self.expr()?),
            "decompose" => Stmt::Decompose(self.expr()?),
            "cartier" => Stmt::Cartier(self.expr()?),
            "nu" => Stmt::Nu(self.expr()?),
            "exact" => Stmt::Exact(self.expr()?),
            "kneq" => {
                let a = self.expr()?;
                self.expect(',')?;
                Stmt::Kneq(a, self.expr()?)
            }
            "set" => {
                let key = match self.name()?.as_str() {
                    "level" => Setting::Level,
                    "precision" => Setting::Precision,
                    other => {
                        self.pos -= 1;
                        return self.err(format!("unknown setting `{other}`"));
                    }
                };
                Stmt::Set(key, self.int()?)
            }
            _ => {
                self.pos -= 1;
                return self.err(format!("`{word}` cannot start a statement"));
            }
        })
    }
}

/// Parse one line; `Ok(None)` for blank lines and comments.
pub fn parse_statement(text: &str, line: usize) -> Result<Option<Statement>, CliError> {
    let toks = tokenize(text, line)?;
    if toks.is_empty() {
        return Ok(None);
    }
    let mut p = Parser { toks: &toks, pos: 0, line, end_col: text.chars().count() + 1 };
    let stmt = p.statement()?;
    let field = if p.is_word("in") && !matches!(stmt, Stmt::Field { .. } | Stmt::Use(_) | Stmt::Set(..)) {
        p.pos += 1;
        Some(p.name()?)
    } else {
        None
    };
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(Some(Statement { line, text: text.trim().to_string(), stmt, field }))
}

/// Parse a whole script, stopping at the first syntax error.
pub fn parse_script(src: &str) -> Result<Vec<Statement>, CliError> {
    let mut out = Vec::new();
    for (k, line) in src.lines().enumerate() {
        if let Some(s) = parse_statement(line, k + 1)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Parse a lone expression, as used by the round-trip checks.
pub fn parse_expr(text: &str) -> Result<Expr, CliError> {
    let toks = tokenize(text, 1)?;
    let mut p = Parser { toks: &toks, pos: 0, line: 1, end_col: text.chars().count() + 1 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stmt(s: &str) -> Stmt {
        parse_statement(s, 1).unwrap().unwrap().stmt
    }

    #[test]
    fn declarations() {
        assert_eq!(
            stmt("field F = GF(2)(t)"),
            Stmt::Field { name: "F".into(), spec: FieldSpec::Rational { p: 2, e: 1, vars: vec!["t".into()] } }
        );
        assert_eq!(
            stmt("field K = GF(3, 2)((s))"),
            Stmt::Field { name: "K".into(), spec: FieldSpec::Laurent { p: 3, e: 2, var: "s".into() } }
        );
        assert_eq!(stmt("field k = GF(5)"), Stmt::Field { name: "k".into(), spec: FieldSpec::Finite { p: 5, e: 1 } });
        assert_eq!(stmt("set level 2"), Stmt::Set(Setting::Level, 2));
    }

    #[test]
    fn queries() {
        match stmt("inv [ [1/t] | 1+t ) at t") {
            Stmt::Inv { class: Expr::Class(w, b), place: Some(Expr::Name(v, _)) } => {
                assert!(matches!(*w, Expr::Witt(ref c) if c.len() == 1));
                assert_eq!(b.len(), 1);
                assert_eq!(v, "t");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(stmt("dsym {t, t+1}"), Stmt::Dsym(Expr::Symbol(ref e)) if e.len() == 2));
        let s = parse_statement("zero [t | ) in F", 1).unwrap().unwrap();
        assert_eq!(s.field.as_deref(), Some("F"));
        assert!(matches!(s.stmt, Stmt::Zero(Expr::Class(_, ref b)) if b.is_empty()));
    }

    #[test]
    fn forms_use_juxtaposition() {
        let e = parse_expr("x^2 dx^dy + (1/y) d(x)").unwrap();
        match e {
            Expr::Bin(BinOp::Add, l, _) => assert!(matches!(*l, Expr::Bin(BinOp::Mul, _, _))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_statement("let x = (t + ", 4) {
            Err(CliError::Syntax { line: 4, col, .. }) => assert_eq!(col, 14),
            other => panic!("{other:?}"),
        }
        assert!(parse_statement("let x = t $ 2", 1).is_err());
        assert!(parse_statement("set depth 3", 1).is_err());
        assert!(parse_statement("   # comment", 1).unwrap().is_none());
    }
}
