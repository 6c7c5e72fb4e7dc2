//! Parsed statements.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    /// An identifier with its column.
    Name(String, usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// `f(a, b)` with the column of `f`.
    Call(String, Vec<Expr>, usize),
    /// Witt literal `[a0, a1, …]`.
    Witt(Vec<Expr>),
    /// Symbol `{a, b, …}`.
    Symbol(Vec<Expr>),
    /// Class `[w | b1, …)`.
    Class(Box<Expr>, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// `GF(p, e)`.
    Finite { p: u64, e: usize },
    /// `GF(p, e)(x, y)`.
    Rational { p: u64, e: usize, vars: Vec<String> },
    /// `GF(p, e)((t))`.
    Laurent { p: u64, e: usize, var: String },
    /// `AS(F, u)`: `F(u)` with `u^p - u = t`.
    ArtinSchreier { base: String, var: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    Level,
    Precision,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Field { name: String, spec: FieldSpec },
    Use(String),
    Let { name: String, expr: Expr },
    Eval(Expr),
    Dsym(Expr),
    Inv { class: Expr, place: Option<Expr> },
    Recip(Expr),
    Zero(Expr),
    Decompose(Expr),
    Cartier(Expr),
    Nu(Expr),
    Exact(Expr),
    Kneq(Expr, Expr),
    Set(Setting, i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statement {
    pub line: usize,
    pub text: String,
    pub stmt: Stmt,
    /// Explicit `in <field>` context.
    pub field: Option<String>,
}
