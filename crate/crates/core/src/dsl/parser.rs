//! Recursive-descent parser with precedence climbing for expressions.
//!
//! Precedence, loosest first: `+ -`, `* /`, `^` (wedge), unary `-`, `**`.

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::{Diagnostic, DiagnosticKind, Span};

const MAX_DEPTH: usize = 64;

pub fn parse(src: &str) -> Result<GeoDocument, Diagnostic> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    p.document()
}

/// Parses raw bytes, reporting invalid UTF-8 as a diagnostic.
pub fn parse_bytes(bytes: &[u8]) -> Result<GeoDocument, Diagnostic> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse(s),
        Err(e) => {
            let at = e.valid_up_to();
            Err(Diagnostic::new(
                DiagnosticKind::SyntaxError { expected: vec![] },
                "input is not valid UTF-8",
                Span::new(at, at + 1),
            ))
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        let expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        let msg = format!("expected {}, found {}", expected.join(" or "), t.tok.describe());
        Err(Diagnostic::new(DiagnosticKind::SyntaxError { expected }, msg, t.span))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            let sym = format!("`{}`", tok.symbol());
            self.error(&[&sym])
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(name) => {
                let name = name.clone();
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        match &self.peek().tok {
            Tok::Ident(n) if n == kw => Ok(self.bump().span),
            _ => self.error(&[&format!("`{kw}`")]),
        }
    }

    fn ident_list(&mut self) -> PResult<Vec<Ident>> {
        let mut out = vec![self.ident()?];
        while self.eat(&Tok::Comma) {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn document(&mut self) -> PResult<GeoDocument> {
        let mut stmts = Vec::new();
        while self.peek().tok != Tok::Eof {
            stmts.push(self.statement()?);
        }
        Ok(GeoDocument { stmts })
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let start = self.peek().span;
        let kw = match &self.peek().tok {
            Tok::Ident(k) => k.clone(),
            _ => return self.error(&["statement"]),
        };
        let kind = match kw.as_str() {
            "chart" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let coords = self.ident_list()?;
                self.expect(Tok::RParen)?;
                StmtKind::Chart(coords)
            }
            "opaque" => {
                self.bump();
                StmtKind::Opaque(self.ident_list()?)
            }
            "scalar" | "form" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let e = self.expr()?;
                if kw == "scalar" {
                    StmtKind::Scalar(name, e)
                } else {
                    StmtKind::Form(name, e)
                }
            }
            "bundle" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::LBrace)?;
                let mut items = Vec::new();
                while !self.eat(&Tok::RBrace) {
                    items.push(self.bundle_item()?);
                }
                StmtKind::Bundle(name, items)
            }
            "algebroid" => {
                self.bump();
                let name = self.ident()?;
                if self.eat(&Tok::Eq) {
                    StmtKind::Algebroid(name, AlgebroidBody::Builtin(self.constructor()?))
                } else {
                    self.expect(Tok::LBrace)?;
                    let mut items = Vec::new();
                    while !self.eat(&Tok::RBrace) {
                        items.push(self.algebroid_item()?);
                    }
                    StmtKind::Algebroid(name, AlgebroidBody::Block(items))
                }
            }
            "pair" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                StmtKind::Pair(name, self.constructor()?)
            }
            "check" => {
                self.bump();
                let suite = self.suite_name()?;
                self.keyword("on")?;
                StmtKind::Check(suite, self.ident()?)
            }
            _ => {
                return self.error(&[
                    "`chart`", "`opaque`", "`scalar`", "`form`", "`bundle`", "`algebroid`",
                    "`pair`", "`check`",
                ])
            }
        };
        let end = self.expect(Tok::Semi)?.span;
        Ok(Stmt {
            kind,
            span: start.to(end),
        })
    }

    /// Suite names may contain `-` (`poisson-jacobi`).
    fn suite_name(&mut self) -> PResult<Ident> {
        let mut id = self.ident()?;
        while self.peek().tok == Tok::Minus && matches!(self.peek_at(1), Tok::Ident(_)) {
            let next_start = self.tokens[self.pos + 1].span.start;
            if next_start != self.peek().span.end || self.peek().span.start != id.span.end {
                break;
            }
            self.bump();
            let more = self.ident()?;
            id.name = format!("{}-{}", id.name, more.name);
            id.span = id.span.to(more.span);
        }
        Ok(id)
    }

    fn bundle_item(&mut self) -> PResult<BundleItem> {
        let kw = match &self.peek().tok {
            Tok::Ident(k) => k.clone(),
            _ => return self.error(&["`fiber`", "`conn`", "`curv`", "`flux`", "`}`"]),
        };
        let item = match kw.as_str() {
            "fiber" => {
                self.bump();
                BundleItem::Fiber(self.ident()?)
            }
            "conn" | "curv" | "flux" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                let e = self.expr()?;
                match kw.as_str() {
                    "conn" => BundleItem::Conn(name, e),
                    "curv" => BundleItem::Curv(name, e),
                    _ => BundleItem::Flux(name, e),
                }
            }
            _ => return self.error(&["`fiber`", "`conn`", "`curv`", "`flux`", "`}`"]),
        };
        self.expect(Tok::Semi)?;
        Ok(item)
    }

    fn algebroid_item(&mut self) -> PResult<AlgebroidItem> {
        let kw = match &self.peek().tok {
            Tok::Ident(k) => k.clone(),
            _ => return self.error(&["`frame`", "`anchor`", "`bracket`", "`}`"]),
        };
        let item = match kw.as_str() {
            "frame" => {
                self.bump();
                AlgebroidItem::Frame(self.ident_list()?)
            }
            "anchor" => {
                self.bump();
                let g = self.ident()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LParen)?;
                let mut comps = vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    comps.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                AlgebroidItem::Anchor(g, comps)
            }
            "bracket" => {
                self.bump();
                let a = self.ident()?;
                self.expect(Tok::Comma)?;
                let b = self.ident()?;
                self.expect(Tok::Eq)?;
                AlgebroidItem::Bracket(a, b, self.expr()?)
            }
            _ => return self.error(&["`frame`", "`anchor`", "`bracket`", "`}`"]),
        };
        self.expect(Tok::Semi)?;
        Ok(item)
    }

    fn constructor(&mut self) -> PResult<Constructor> {
        let name = self.ident()?;
        if !self.eat(&Tok::LParen) {
            return Ok(Constructor { name, args: None });
        }
        let mut args = Vec::new();
        if !self.eat(&Tok::RParen) {
            loop {
                args.push(self.arg()?);
                if self.eat(&Tok::RParen) {
                    break;
                }
                if !self.eat(&Tok::Comma) {
                    return self.error(&["`,`", "`)`"]);
                }
            }
        }
        Ok(Constructor {
            name,
            args: Some(args),
        })
    }

    fn arg(&mut self) -> PResult<Arg> {
        if self.peek().tok != Tok::LBracket {
            return Ok(Arg::Expr(self.expr()?));
        }
        let start = self.bump().span;
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = vec![self.expr()?];
            while self.eat(&Tok::Comma) {
                row.push(self.expr()?);
            }
            self.expect(Tok::RBracket)?;
            rows.push(row);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        let end = self.expect(Tok::RBracket)?.span;
        Ok(Arg::Matrix(rows, start.to(end)))
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Diagnostic::new(
                DiagnosticKind::SyntaxError { expected: vec![] },
                "expression nested too deeply",
                self.peek().span,
            ));
        }
        Ok(())
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let r = self.binary(0);
        self.depth -= 1;
        r
    }

    fn binop(tok: &Tok, level: u8) -> Option<BinOp> {
        match (level, tok) {
            (0, Tok::Plus) => Some(BinOp::Add),
            (0, Tok::Minus) => Some(BinOp::Sub),
            (1, Tok::Star) => Some(BinOp::Mul),
            (1, Tok::Slash) => Some(BinOp::Div),
            (2, Tok::Caret) => Some(BinOp::Wedge),
            _ => None,
        }
    }

    fn binary(&mut self, level: u8) -> PResult<Expr> {
        if level > 2 {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while let Some(op) = Self::binop(&self.peek().tok, level) {
            self.bump();
            let rhs = self.binary(level + 1)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek().tok == Tok::Minus {
            let start = self.bump().span;
            self.enter()?;
            let inner = self.unary();
            self.depth -= 1;
            let inner = inner?;
            let span = start.to(inner.span);
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::StarStar) {
            self.enter()?;
            let exp = self.unary();
            self.depth -= 1;
            let exp = exp?;
            let span = base.span.to(exp.span);
            return Ok(Expr {
                kind: ExprKind::Binary(BinOp::Pow, Box::new(base), Box::new(exp)),
                span,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(s) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Num(s),
                    span: t.span,
                })
            }
            Tok::At(s) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Vector(s),
                    span: t.span,
                })
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek().tok == Tok::LParen {
                    self.bump();
                    let arg = self.expr()?;
                    let end = self.expect(Tok::RParen)?.span;
                    return Ok(Expr {
                        kind: ExprKind::Call(Ident { name, span: t.span }, Box::new(arg)),
                        span: t.span.to(end),
                    });
                }
                Ok(Expr {
                    kind: ExprKind::Name(name),
                    span: t.span,
                })
            }
            Tok::LParen => {
                self.bump();
                let mut e = self.expr()?;
                let end = self.expect(Tok::RParen)?.span;
                e.span = t.span.to(end);
                Ok(e)
            }
            _ => self.error(&["number", "name", "`@coord`", "`(`", "`-`"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let d = parse("form w = 2*x*dx^dy + -y**2*dz;").unwrap();
        let s = d.stmts[0].to_string();
        assert_eq!(s, "form w = (((2 * x) * (dx ^ dy)) + ((-(y ** 2)) * dz));");
    }

    #[test]
    fn round_trip_simple() {
        let src = "chart (x, y);\nopaque f, g;\nform w = dx ^ dy;\nbundle E { fiber theta; conn A = dtheta + x*dy; flux H = A ^ w; };\npair P = tdual(E, E2, trivialization);\npair Q = bialgebroid(T, C, [[1, 0], [0, 1]]);\nalgebroid T = tangent;\nalgebroid U { frame e1, e2; anchor e1 = (1, 0); bracket e1, e2 = x*e1; };\ncheck poisson-jacobi on P;\n";
        let d = parse(src).unwrap();
        let printed = d.to_string();
        assert_eq!(parse(&printed).unwrap(), d);
        assert_eq!(d.stmts.len(), 9);
    }

    #[test]
    fn syntax_error_reports_expected() {
        let err = parse("chart (x, y;").unwrap_err();
        match &err.kind {
            DiagnosticKind::SyntaxError { expected } => assert!(expected.contains(&"`)`".to_string())),
            other => panic!("{other:?}"),
        }
        assert_eq!(err.span, Span::new(11, 12));
    }

    #[test]
    fn deep_nesting_is_a_diagnostic() {
        let src = format!("form w = {}x{};", "(".repeat(5000), ")".repeat(5000));
        assert!(parse(&src).is_err());
        let src = format!("form w = {}x;", "-".repeat(5000));
        assert!(parse(&src).is_err());
    }

    #[test]
    fn invalid_utf8() {
        let err = parse_bytes(&[b'c', 0xff, 0xfe]).unwrap_err();
        assert_eq!(err.span.start, 1);
    }
}
