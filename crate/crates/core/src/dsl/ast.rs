//! Syntax tree of `.geo` documents and its printer.
//!
//! Spans are carried for diagnostics but ignored by equality, so a printed
//! and reparsed document compares equal to the original.

use std::fmt;

use super::Span;

#[derive(Clone, Debug, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Wedge,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Wedge => "^",
            BinOp::Pow => "**",
        }
    }
}

#[derive(Clone, Debug, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    /// Decimal literal as written.
    Num(String),
    Name(String),
    /// `@x`
    Vector(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Ident, Box<Expr>),
}

/// Argument of a constructor call: an expression or a matrix literal.
#[derive(Clone, Debug, Eq)]
pub enum Arg {
    Expr(Expr),
    Matrix(Vec<Vec<Expr>>, Span),
}

impl PartialEq for Arg {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Arg::Expr(a), Arg::Expr(b)) => a == b,
            (Arg::Matrix(a, _), Arg::Matrix(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Arg {
    pub fn span(&self) -> Span {
        match self {
            Arg::Expr(e) => e.span,
            Arg::Matrix(_, s) => *s,
        }
    }
}

/// `name` or `name(arg, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constructor {
    pub name: Ident,
    pub args: Option<Vec<Arg>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleItem {
    Fiber(Ident),
    Conn(Ident, Expr),
    Curv(Ident, Expr),
    Flux(Ident, Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebroidItem {
    Frame(Vec<Ident>),
    Anchor(Ident, Vec<Expr>),
    Bracket(Ident, Ident, Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebroidBody {
    Block(Vec<AlgebroidItem>),
    Builtin(Constructor),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Chart(Vec<Ident>),
    Opaque(Vec<Ident>),
    Scalar(Ident, Expr),
    Form(Ident, Expr),
    Bundle(Ident, Vec<BundleItem>),
    Algebroid(Ident, AlgebroidBody),
    Pair(Ident, Constructor),
    Check(Ident, Ident),
}

#[derive(Clone, Debug, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeoDocument {
    pub stmts: Vec<Stmt>,
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Num(s) | ExprKind::Name(s) => f.write_str(s),
            ExprKind::Vector(s) => write!(f, "@{s}"),
            ExprKind::Neg(e) => write!(f, "(-{e})"),
            ExprKind::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            ExprKind::Call(name, arg) => write!(f, "{name}({arg})"),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Expr(e) => write!(f, "{e}"),
            Arg::Matrix(rows, _) => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "[{}]", rows.join(", "))
            }
        }
    }
}

impl fmt::Display for Constructor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if let Some(args) = &self.args {
            write!(f, "({})", join(args))?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Chart(c) => write!(f, "chart ({});", join(c)),
            StmtKind::Opaque(n) => write!(f, "opaque {};", join(n)),
            StmtKind::Scalar(n, e) => write!(f, "scalar {n} = {e};"),
            StmtKind::Form(n, e) => write!(f, "form {n} = {e};"),
            StmtKind::Bundle(n, items) => {
                writeln!(f, "bundle {n} {{")?;
                for it in items {
                    match it {
                        BundleItem::Fiber(x) => writeln!(f, "    fiber {x};")?,
                        BundleItem::Conn(x, e) => writeln!(f, "    conn {x} = {e};")?,
                        BundleItem::Curv(x, e) => writeln!(f, "    curv {x} = {e};")?,
                        BundleItem::Flux(x, e) => writeln!(f, "    flux {x} = {e};")?,
                    }
                }
                write!(f, "}};")
            }
            StmtKind::Algebroid(n, AlgebroidBody::Builtin(c)) => write!(f, "algebroid {n} = {c};"),
            StmtKind::Algebroid(n, AlgebroidBody::Block(items)) => {
                writeln!(f, "algebroid {n} {{")?;
                for it in items {
                    match it {
                        AlgebroidItem::Frame(g) => writeln!(f, "    frame {};", join(g))?,
                        AlgebroidItem::Anchor(g, v) => writeln!(f, "    anchor {g} = ({});", join(v))?,
                        AlgebroidItem::Bracket(a, b, e) => writeln!(f, "    bracket {a}, {b} = {e};")?,
                    }
                }
                write!(f, "}};")
            }
            StmtKind::Pair(n, c) => write!(f, "pair {n} = {c};"),
            StmtKind::Check(s, t) => write!(f, "check {s} on {t};"),
        }
    }
}

impl fmt::Display for GeoDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
