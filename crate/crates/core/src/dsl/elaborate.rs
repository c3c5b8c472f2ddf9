//! Turns a parsed document into geometric objects and check jobs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::ast::*;
use super::{Diagnostic, DiagnosticKind, Span};
use crate::algebroid::LieAlgebroid;
use crate::bialgebroid::{BialgebroidCandidate, CourantDouble};
use crate::exterior::{ExteriorError, Frame, GradedElement, PairingMatrix, Side};
use crate::report::CheckReport;
use crate::symbolic::{ChartSpec, Scalar};
use crate::tduality::{
    atiyah_algebroid, check_tduality, theorem_candidate, verify_theorem_with, BundleSpec,
    Splitting,
};

pub const SUITES: &[&str] = &[
    "axioms",
    "bialgebroid",
    "courant",
    "tduality",
    "theorem1",
    "poisson-jacobi",
];

/// Elaboration settings.
#[derive(Clone, Debug, Default)]
pub struct ElabOptions {
    /// Cap on exterior degree; defaults to the frame rank.
    pub max_degree: Option<usize>,
}

impl ElabOptions {
    /// Reads `ALGK_MAX_DEGREE`; unparsable values are ignored.
    pub fn from_env() -> Self {
        ElabOptions {
            max_degree: std::env::var("ALGK_MAX_DEGREE")
                .ok()
                .and_then(|v| v.trim().parse().ok()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum PairObject {
    TDual {
        e: BundleSpec,
        ehat: BundleSpec,
        splitting: Splitting,
    },
    Candidate(BialgebroidCandidate),
}

impl PairObject {
    fn candidate(&self) -> Result<BialgebroidCandidate, String> {
        match self {
            PairObject::TDual { e, ehat, splitting } => {
                theorem_candidate(e, ehat, *splitting).map_err(|err| match err {
                    crate::tduality::TDualityError::DegeneratePairing { .. } => {
                        format!("DegeneratePairing: {err}")
                    }
                    other => other.to_string(),
                })
            }
            PairObject::Candidate(c) => Ok(c.clone()),
        }
    }
}

#[derive(Clone, Debug)]
enum Binding {
    Coordinate,
    Fiber,
    Scalar(Scalar),
    Graded(GradedElement),
    Bundle(BundleSpec),
    Algebroid(LieAlgebroid),
    Pair(PairObject),
}

impl Binding {
    fn describe(&self) -> &'static str {
        match self {
            Binding::Coordinate => "a base coordinate",
            Binding::Fiber => "a fiber coordinate",
            Binding::Scalar(_) => "a scalar",
            Binding::Graded(_) => "a form",
            Binding::Bundle(_) => "a bundle",
            Binding::Algebroid(_) => "an algebroid",
            Binding::Pair(_) => "a pair",
        }
    }
}

#[derive(Clone, Debug)]
enum Target {
    Algebroid(LieAlgebroid),
    Pair(PairObject),
}

#[derive(Clone, Debug)]
struct CheckJob {
    suite: String,
    target_name: String,
    target: Target,
}

#[derive(Clone, Debug)]
enum Val {
    S(Scalar),
    G(GradedElement),
}

/// Objects declared by a document, ready to run.
#[derive(Clone, Debug)]
pub struct Environment {
    chart: ChartSpec,
    derham: LieAlgebroid,
    max_degree: usize,
    names: HashMap<String, Binding>,
    checks: Vec<CheckJob>,
}

fn semantic(msg: impl Into<String>, span: Span) -> Diagnostic {
    Diagnostic::new(DiagnosticKind::Semantic, msg, span)
}

fn degree_error(msg: impl Into<String>, span: Span) -> Diagnostic {
    Diagnostic::new(DiagnosticKind::DegreeError, msg, span)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    match s.split_once('.') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((int, frac)) => {
            let num: BigInt = format!("{int}{frac}").parse().ok()?;
            let den = num_traits::pow(BigInt::from(10), frac.len());
            Some(BigRational::new(num, den))
        }
    }
}

/// Elaborates a document into an [`Environment`].
pub fn elaborate(doc: &GeoDocument, options: &ElabOptions) -> Result<Environment, Diagnostic> {
    let mut chart_stmt = None;
    for s in &doc.stmts {
        if let StmtKind::Chart(coords) = &s.kind {
            if chart_stmt.is_some() {
                return Err(semantic(
                    "only one chart per document is supported; multi-chart gluing is not available",
                    s.span,
                ));
            }
            chart_stmt = Some((coords, s.span));
        }
    }
    let Some((coords, chart_span)) = chart_stmt else {
        return Err(semantic("document declares no chart", Span::default()));
    };
    if let Some(first) = doc.stmts.first() {
        if !matches!(first.kind, StmtKind::Chart(_)) {
            return Err(semantic("the chart must be declared before anything else", first.span));
        }
    }
    let base: Vec<&str> = coords.iter().map(|c| c.name.as_str()).collect();
    let chart = ChartSpec::base(&base).map_err(|e| {
        Diagnostic::new(DiagnosticKind::DuplicateName(e.to_string()), e.to_string(), chart_span)
    })?;

    let mut names: HashMap<String, Binding> = HashMap::new();
    for c in coords {
        names.insert(c.name.clone(), Binding::Coordinate);
    }
    // Fiber coordinates are collected up front so forms can use `dtheta`.
    let mut fibers: Vec<String> = Vec::new();
    for s in &doc.stmts {
        if let StmtKind::Bundle(_, items) = &s.kind {
            for it in items {
                if let BundleItem::Fiber(f) = it {
                    if names.contains_key(&f.name) {
                        return Err(Diagnostic::new(
                            DiagnosticKind::DuplicateName(f.name.clone()),
                            format!("`{}` is already declared", f.name),
                            f.span,
                        ));
                    }
                    names.insert(f.name.clone(), Binding::Fiber);
                    fibers.push(f.name.clone());
                }
            }
        }
    }
    let universal = chart
        .with_fiber(&fibers)
        .map_err(|e| semantic(e.to_string(), chart_span))?;
    let derham = LieAlgebroid::tangent_total(&universal);
    let rank = derham.rank();
    let mut env = Environment {
        chart,
        max_degree: options.max_degree.unwrap_or(rank).min(rank),
        derham,
        names,
        checks: Vec::new(),
    };
    for s in doc.stmts.iter().skip(1) {
        env.statement(s)?;
    }
    Ok(env)
}

impl Environment {
    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    /// Coframe `dx, .., dtheta, ..` shared by all forms of the document.
    pub fn coframe(&self) -> Frame {
        self.derham.dual_frame()
    }

    pub fn form(&self, name: &str) -> Option<&GradedElement> {
        match self.names.get(name) {
            Some(Binding::Graded(g)) => Some(g),
            _ => None,
        }
    }

    pub fn scalar(&self, name: &str) -> Option<&Scalar> {
        match self.names.get(name) {
            Some(Binding::Scalar(s)) => Some(s),
            _ => None,
        }
    }

    pub fn bundle(&self, name: &str) -> Option<&BundleSpec> {
        match self.names.get(name) {
            Some(Binding::Bundle(b)) => Some(b),
            _ => None,
        }
    }

    pub fn algebroid(&self, name: &str) -> Option<&LieAlgebroid> {
        match self.names.get(name) {
            Some(Binding::Algebroid(a)) => Some(a),
            _ => None,
        }
    }

    pub fn pair(&self, name: &str) -> Option<&PairObject> {
        match self.names.get(name) {
            Some(Binding::Pair(p)) => Some(p),
            _ => None,
        }
    }

    /// Algebroids declared directly or through pairs, in no particular order.
    pub fn algebroids(&self) -> Vec<LieAlgebroid> {
        let mut out = Vec::new();
        for b in self.names.values() {
            match b {
                Binding::Algebroid(a) => out.push(a.clone()),
                Binding::Pair(PairObject::Candidate(c)) => {
                    out.push(c.a().clone());
                    out.push(c.a_star().clone());
                }
                Binding::Pair(PairObject::TDual { e, ehat, .. }) => {
                    out.push(atiyah_algebroid(e));
                    out.push(atiyah_algebroid(ehat));
                }
                _ => {}
            }
        }
        out
    }

    pub fn num_checks(&self) -> usize {
        self.checks.len()
    }

    fn declare(&mut self, id: &Ident, b: Binding) -> Result<(), Diagnostic> {
        if self.names.contains_key(&id.name) {
            return Err(Diagnostic::new(
                DiagnosticKind::DuplicateName(id.name.clone()),
                format!("`{}` is already declared", id.name),
                id.span,
            ));
        }
        self.names.insert(id.name.clone(), b);
        Ok(())
    }

    fn lookup(&self, id: &Ident) -> Result<&Binding, Diagnostic> {
        self.names.get(&id.name).ok_or_else(|| {
            Diagnostic::new(
                DiagnosticKind::UndefinedName(id.name.clone()),
                format!("`{}` is not declared", id.name),
                id.span,
            )
        })
    }

    fn statement(&mut self, s: &Stmt) -> Result<(), Diagnostic> {
        match &s.kind {
            StmtKind::Chart(_) => unreachable!("single chart handled up front"),
            StmtKind::Opaque(ids) => {
                for id in ids {
                    self.declare(id, Binding::Scalar(Scalar::opaque(&id.name)))?;
                }
            }
            StmtKind::Scalar(id, e) => match self.eval(e, None)? {
                Val::S(v) => self.declare(id, Binding::Scalar(v))?,
                Val::G(g) => {
                    return Err(degree_error(
                        format!("scalar `{}` has degree {}", id.name, g.degree()),
                        e.span,
                    ))
                }
            },
            StmtKind::Form(id, e) => {
                let v = match self.eval(e, None)? {
                    Val::S(v) => Binding::Scalar(v),
                    Val::G(g) => Binding::Graded(g),
                };
                self.declare(id, v)?;
            }
            StmtKind::Bundle(id, items) => self.bundle_stmt(id, items, s.span)?,
            StmtKind::Algebroid(id, body) => {
                let alg = match body {
                    AlgebroidBody::Builtin(c) => self.builtin_algebroid(c)?,
                    AlgebroidBody::Block(items) => self.algebroid_block(id, items, s.span)?,
                };
                self.declare(id, Binding::Algebroid(alg.renamed(&id.name)))?;
            }
            StmtKind::Pair(id, c) => {
                let p = self.pair_stmt(c)?;
                self.declare(id, Binding::Pair(p))?;
            }
            StmtKind::Check(suite, target) => {
                if !SUITES.contains(&suite.name.as_str()) {
                    return Err(semantic(
                        format!("unknown suite `{}`; expected one of {}", suite.name, SUITES.join(", ")),
                        suite.span,
                    ));
                }
                let t = match self.lookup(target)? {
                    Binding::Algebroid(a) => Target::Algebroid(a.clone()),
                    Binding::Pair(p) => Target::Pair(p.clone()),
                    other => {
                        return Err(semantic(
                            format!("`{}` is {}, not an algebroid or pair", target.name, other.describe()),
                            target.span,
                        ))
                    }
                };
                let ok = match (suite.name.as_str(), &t) {
                    ("axioms", _) => true,
                    ("tduality" | "theorem1", Target::Pair(PairObject::TDual { .. })) => true,
                    ("tduality" | "theorem1", _) => false,
                    (_, Target::Pair(_)) => true,
                    _ => false,
                };
                if !ok {
                    return Err(semantic(
                        format!("suite `{}` does not apply to `{}`", suite.name, target.name),
                        target.span,
                    ));
                }
                self.checks.push(CheckJob {
                    suite: suite.name.clone(),
                    target_name: target.name.clone(),
                    target: t,
                });
            }
        }
        Ok(())
    }

    fn form_value(&self, e: &Expr, degree: usize) -> Result<GradedElement, Diagnostic> {
        let g = match self.eval(e, None)? {
            Val::G(g) => g,
            Val::S(s) if s.is_zero() => GradedElement::zero(&self.coframe(), degree),
            Val::S(_) => return Err(degree_error(format!("expected a {degree}-form, got a scalar"), e.span)),
        };
        if g.side() != Side::Dual || g.frame().names() != self.coframe().names() {
            return Err(semantic("expected a differential form", e.span));
        }
        if g.degree() != degree {
            return Err(degree_error(
                format!("expected a {degree}-form, got degree {}", g.degree()),
                e.span,
            ));
        }
        Ok(g)
    }

    fn bundle_stmt(&mut self, id: &Ident, items: &[BundleItem], span: Span) -> Result<(), Diagnostic> {
        let mut fiber = None;
        let mut conn = None;
        let mut curv = None;
        let mut flux = None;
        for it in items {
            match it {
                BundleItem::Fiber(f) => {
                    if fiber.replace(f.name.clone()).is_some() {
                        return Err(semantic("a bundle has exactly one fiber coordinate", f.span));
                    }
                }
                BundleItem::Conn(n, e) | BundleItem::Curv(n, e) | BundleItem::Flux(n, e) => {
                    let (slot, degree) = match it {
                        BundleItem::Conn(..) => (&mut conn, 1),
                        BundleItem::Curv(..) => (&mut curv, 2),
                        _ => (&mut flux, 3),
                    };
                    if slot.is_some() {
                        return Err(semantic("item given twice", n.span));
                    }
                    let g = self.form_value(e, degree)?;
                    *slot = Some(g.clone());
                    self.declare(n, Binding::Graded(g))?;
                }
            }
        }
        let fiber = fiber.ok_or_else(|| semantic(format!("bundle `{}` needs a fiber", id.name), span))?;
        let conn = conn.ok_or_else(|| semantic(format!("bundle `{}` needs a connection", id.name), span))?;
        let b = BundleSpec::new(&id.name, &self.chart, &fiber, &conn, curv.as_ref(), flux.as_ref())
            .map_err(|e| semantic(e.to_string(), span))?;
        self.declare(id, Binding::Bundle(b))
    }

    fn ident_arg<'a>(&self, a: &'a Arg) -> Result<Ident, Diagnostic> {
        match a {
            Arg::Expr(Expr {
                kind: ExprKind::Name(n),
                span,
            }) => Ok(Ident {
                name: n.clone(),
                span: *span,
            }),
            other => Err(semantic("expected a name", other.span())),
        }
    }

    fn args<'a>(&self, c: &'a Constructor, min: usize, max: usize) -> Result<&'a [Arg], Diagnostic> {
        let args = c.args.as_deref().unwrap_or(&[]);
        if args.len() < min || args.len() > max {
            let want = if min == max {
                format!("{min}")
            } else {
                format!("{min} to {max}")
            };
            return Err(semantic(
                format!("`{}` takes {want} arguments, got {}", c.name.name, args.len()),
                c.name.span,
            ));
        }
        Ok(args)
    }

    fn bivector_matrix(&self, e: &Expr) -> Result<Vec<Vec<Scalar>>, Diagnostic> {
        let g = match self.eval(e, None)? {
            Val::G(g) if g.side() == Side::Vector && g.degree() == 2 => g,
            Val::S(s) if s.is_zero() => GradedElement::zero(&self.coframe().dual(), 2),
            _ => return Err(degree_error("expected a bivector such as @x ^ @y", e.span)),
        };
        let n = self.chart.dimension();
        if g.terms().any(|(idx, _)| idx.iter().any(|&i| i >= n)) {
            return Err(semantic("bivector must only involve base directions", e.span));
        }
        Ok((0..n)
            .map(|i| (0..n).map(|j| g.component(&[i, j])).collect())
            .collect())
    }

    fn builtin_algebroid(&self, c: &Constructor) -> Result<LieAlgebroid, Diagnostic> {
        match c.name.name.as_str() {
            "tangent" => {
                self.args(c, 0, 0)?;
                Ok(LieAlgebroid::tangent(&self.chart))
            }
            "cotangent" => {
                let args = self.args(c, 1, 1)?;
                let Arg::Expr(e) = &args[0] else {
                    return Err(semantic("expected a bivector", args[0].span()));
                };
                let pi = self.bivector_matrix(e)?;
                LieAlgebroid::cotangent(&self.chart, &pi).map_err(|err| semantic(err.to_string(), e.span))
            }
            "atiyah" => {
                let args = self.args(c, 1, 1)?;
                let id = self.ident_arg(&args[0])?;
                match self.lookup(&id)? {
                    Binding::Bundle(b) => Ok(atiyah_algebroid(b)),
                    other => Err(semantic(format!("`{}` is {}, not a bundle", id.name, other.describe()), id.span)),
                }
            }
            other => Err(semantic(
                format!("unknown algebroid constructor `{other}`; expected tangent, cotangent or atiyah"),
                c.name.span,
            )),
        }
    }

    fn algebroid_block(
        &self,
        id: &Ident,
        items: &[AlgebroidItem],
        span: Span,
    ) -> Result<LieAlgebroid, Diagnostic> {
        let Some(AlgebroidItem::Frame(gens)) = items.first() else {
            return Err(semantic(format!("algebroid `{}` must start with `frame`", id.name), span));
        };
        let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        let frame = Frame::new(&names, Side::Vector).map_err(|e| match e {
            ExteriorError::DuplicateGenerator(n) => Diagnostic::new(
                DiagnosticKind::DuplicateName(n.clone()),
                format!("generator `{n}` repeated"),
                span,
            ),
            other => semantic(other.to_string(), span),
        })?;
        let r = frame.rank();
        let n = self.chart.dimension();
        let mut anchor = vec![vec![Scalar::zero(); n]; r];
        let mut structure = vec![vec![vec![Scalar::zero(); r]; r]; r];
        let gen_index = |g: &Ident| {
            frame.index_of(&g.name).ok_or_else(|| {
                Diagnostic::new(
                    DiagnosticKind::UndefinedName(g.name.clone()),
                    format!("`{}` is not a generator of `{}`", g.name, id.name),
                    g.span,
                )
            })
        };
        for it in &items[1..] {
            match it {
                AlgebroidItem::Frame(g) => {
                    return Err(semantic("frame declared twice", g[0].span));
                }
                AlgebroidItem::Anchor(g, comps) => {
                    let i = gen_index(g)?;
                    if comps.len() != n {
                        return Err(semantic(
                            format!("anchor needs {n} components, one per base coordinate"),
                            g.span,
                        ));
                    }
                    for (j, e) in comps.iter().enumerate() {
                        anchor[i][j] = self.scalar_value(e)?;
                    }
                }
                AlgebroidItem::Bracket(a, b, e) => {
                    let (ia, ib) = (gen_index(a)?, gen_index(b)?);
                    let v = match self.eval(e, Some(&frame))? {
                        Val::S(s) if s.is_zero() => GradedElement::zero(&frame, 1),
                        Val::G(g) if g.frame().names() == frame.names() && g.degree() == 1 => g,
                        _ => {
                            return Err(degree_error(
                                "bracket must be a combination of frame generators",
                                e.span,
                            ))
                        }
                    };
                    if ia == ib && !v.is_zero() {
                        return Err(semantic("[e, e] must vanish", e.span));
                    }
                    for g in 0..r {
                        let c = v.coefficient(&[g]);
                        structure[ib][ia][g] = -c.clone();
                        structure[ia][ib][g] = c;
                    }
                }
            }
        }
        LieAlgebroid::new(&id.name, self.chart.clone(), frame, anchor, structure)
            .map_err(|e| semantic(e.to_string(), span))
    }

    fn pair_stmt(&self, c: &Constructor) -> Result<PairObject, Diagnostic> {
        match c.name.name.as_str() {
            "tdual" => {
                let args = self.args(c, 2, 3)?;
                let mut bundles = Vec::new();
                for a in &args[..2] {
                    let id = self.ident_arg(a)?;
                    match self.lookup(&id)? {
                        Binding::Bundle(b) => bundles.push(b.clone()),
                        other => {
                            return Err(semantic(
                                format!("`{}` is {}, not a bundle", id.name, other.describe()),
                                id.span,
                            ))
                        }
                    }
                }
                let splitting = match args.get(2) {
                    None => Splitting::Connection,
                    Some(a) => {
                        let id = self.ident_arg(a)?;
                        match id.name.as_str() {
                            "connection" => Splitting::Connection,
                            "trivialization" => Splitting::Trivialization,
                            _ => {
                                return Err(semantic(
                                    "splitting must be `connection` or `trivialization`",
                                    id.span,
                                ))
                            }
                        }
                    }
                };
                let ehat = bundles.pop().expect("two bundles");
                let e = bundles.pop().expect("two bundles");
                Ok(PairObject::TDual { e, ehat, splitting })
            }
            "standard" => {
                let args = self.args(c, 1, 1)?;
                let Arg::Expr(e) = &args[0] else {
                    return Err(semantic("expected a bivector", args[0].span()));
                };
                let pi = self.bivector_matrix(e)?;
                BialgebroidCandidate::standard(&self.chart, &pi)
                    .map(PairObject::Candidate)
                    .map_err(|err| semantic(err.to_string(), e.span))
            }
            "bialgebroid" => {
                let args = self.args(c, 2, 3)?;
                let mut algs = Vec::new();
                for a in &args[..2] {
                    let id = self.ident_arg(a)?;
                    match self.lookup(&id)? {
                        Binding::Algebroid(l) => algs.push(l.clone()),
                        other => {
                            return Err(semantic(
                                format!("`{}` is {}, not an algebroid", id.name, other.describe()),
                                id.span,
                            ))
                        }
                    }
                }
                let r = algs[0].rank();
                let pairing = match args.get(2) {
                    None => PairingMatrix::identity(r),
                    Some(Arg::Matrix(rows, _)) => {
                        let mut m = Vec::new();
                        for row in rows {
                            let mut out = Vec::new();
                            for e in row {
                                out.push(self.scalar_value(e)?);
                            }
                            m.push(out);
                        }
                        PairingMatrix::new(m)
                    }
                    Some(other) => return Err(semantic("expected a matrix literal", other.span())),
                };
                let a_star = algs.pop().expect("two algebroids");
                let a = algs.pop().expect("two algebroids");
                BialgebroidCandidate::new(a, a_star, pairing)
                    .map(PairObject::Candidate)
                    .map_err(|err| semantic(err.to_string(), c.name.span))
            }
            other => Err(semantic(
                format!("unknown pair constructor `{other}`; expected tdual, standard or bialgebroid"),
                c.name.span,
            )),
        }
    }

    fn scalar_value(&self, e: &Expr) -> Result<Scalar, Diagnostic> {
        match self.eval(e, None)? {
            Val::S(s) => Ok(s),
            Val::G(g) => Err(degree_error(format!("expected a scalar, got degree {}", g.degree()), e.span)),
        }
    }

    fn check_degree(&self, g: GradedElement, span: Span) -> Result<Val, Diagnostic> {
        if g.degree() > self.max_degree {
            return Err(degree_error(
                format!("degree {} exceeds the maximum degree {}", g.degree(), self.max_degree),
                span,
            ));
        }
        Ok(Val::G(g))
    }

    fn eval(&self, e: &Expr, local: Option<&Frame>) -> Result<Val, Diagnostic> {
        let sym = |err: crate::symbolic::SymbolicError| semantic(err.to_string(), e.span);
        match &e.kind {
            ExprKind::Num(s) => parse_decimal(s)
                .map(|q| Val::S(Scalar::from_rational(q)))
                .ok_or_else(|| semantic(format!("bad number `{s}`"), e.span)),
            ExprKind::Name(n) => {
                if let Some(fr) = local {
                    if let Some(i) = fr.index_of(n) {
                        return Ok(Val::G(GradedElement::generator(fr, i)));
                    }
                }
                match self.names.get(n) {
                    Some(Binding::Coordinate) => Ok(Val::S(Scalar::coord(n))),
                    Some(Binding::Fiber) => Err(semantic(
                        format!("fiber coordinate `{n}` cannot appear in coefficients (data must be invariant)"),
                        e.span,
                    )),
                    Some(Binding::Scalar(s)) => Ok(Val::S(s.clone())),
                    Some(Binding::Graded(g)) => Ok(Val::G(g.clone())),
                    Some(other) => Err(semantic(format!("`{n}` is {}, not a value", other.describe()), e.span)),
                    None => {
                        let frame = self.coframe();
                        match n.strip_prefix('d').and_then(|c| frame.index_of(&format!("@{c}"))) {
                            Some(i) => Ok(Val::G(GradedElement::generator(&frame, i))),
                            None => Err(Diagnostic::new(
                                DiagnosticKind::UndefinedName(n.clone()),
                                format!("`{n}` is not declared"),
                                e.span,
                            )),
                        }
                    }
                }
            }
            ExprKind::Vector(c) => {
                let frame = self.coframe().dual();
                match frame.index_of(&format!("@{c}")) {
                    Some(i) => Ok(Val::G(GradedElement::generator(&frame, i))),
                    None => Err(Diagnostic::new(
                        DiagnosticKind::UndefinedName(c.clone()),
                        format!("`{c}` is not a coordinate"),
                        e.span,
                    )),
                }
            }
            ExprKind::Neg(inner) => Ok(match self.eval(inner, local)? {
                Val::S(s) => Val::S(-s),
                Val::G(g) => Val::G(g.neg()),
            }),
            ExprKind::Call(f, arg) => {
                if f.name != "d" {
                    return Err(Diagnostic::new(
                        DiagnosticKind::UndefinedName(f.name.clone()),
                        format!("unknown function `{}`; only `d` is available", f.name),
                        f.span,
                    ));
                }
                match self.eval(arg, local)? {
                    Val::S(s) => self.check_degree(self.derham.differential_of_scalar(&s), e.span),
                    Val::G(g) if g.side() == Side::Dual && g.frame().names() == self.coframe().names() => {
                        let d = self.derham.differential(&g).map_err(|err| semantic(err.to_string(), e.span))?;
                        self.check_degree(d, e.span)
                    }
                    Val::G(_) => Err(semantic("`d` applies to scalars and forms", arg.span)),
                }
            }
            ExprKind::Binary(op, a, b) => {
                let va = self.eval(a, local)?;
                if *op == BinOp::Pow {
                    let base = match va {
                        Val::S(s) => s,
                        Val::G(_) => return Err(degree_error("only scalars can be raised to a power", a.span)),
                    };
                    let exp = match self.eval(b, local)? {
                        Val::S(s) => s.as_constant(),
                        Val::G(_) => None,
                    };
                    let n = exp
                        .filter(|q| q.is_integer())
                        .and_then(|q| q.to_integer().to_i32())
                        .filter(|n| n.abs() <= 64)
                        .ok_or_else(|| semantic("exponent must be an integer constant of size at most 64", b.span))?;
                    return base.pow(n).map(Val::S).map_err(sym);
                }
                let vb = self.eval(b, local)?;
                self.binary(*op, va, vb, e.span)
            }
        }
    }

    fn binary(&self, op: BinOp, a: Val, b: Val, span: Span) -> Result<Val, Diagnostic> {
        let compatible = |x: &GradedElement, y: &GradedElement| {
            x.frame().names() == y.frame().names() && x.side() == y.side() && x.degree() == y.degree()
        };
        match (op, a, b) {
            (BinOp::Add, Val::S(x), Val::S(y)) => Ok(Val::S(x + y)),
            (BinOp::Sub, Val::S(x), Val::S(y)) => Ok(Val::S(x - y)),
            (BinOp::Add | BinOp::Sub, Val::G(x), Val::G(y)) => {
                if !compatible(&x, &y) {
                    return Err(degree_error(
                        format!(
                            "cannot add a degree-{} {} and a degree-{} {}",
                            x.degree(),
                            side_word(&x),
                            y.degree(),
                            side_word(&y)
                        ),
                        span,
                    ));
                }
                Ok(Val::G(if op == BinOp::Add { x.add(&y) } else { x.sub(&y) }))
            }
            (BinOp::Add | BinOp::Sub, Val::S(s), Val::G(g)) | (BinOp::Add | BinOp::Sub, Val::G(g), Val::S(s)) => {
                if s.is_zero() {
                    // `0 + w` and `w - 0`; `0 - w` keeps its sign below.
                    return Ok(Val::G(g));
                }
                Err(degree_error(
                    format!("cannot add a scalar and a degree-{} element", g.degree()),
                    span,
                ))
            }
            (BinOp::Mul | BinOp::Wedge, Val::S(x), Val::S(y)) => Ok(Val::S(x * y)),
            (BinOp::Mul | BinOp::Wedge, Val::S(s), Val::G(g)) | (BinOp::Mul | BinOp::Wedge, Val::G(g), Val::S(s)) => {
                Ok(Val::G(g.scale(&s)))
            }
            (BinOp::Mul, Val::G(_), Val::G(_)) => Err(degree_error(
                "product of two forms; use `^` for the wedge product",
                span,
            )),
            (BinOp::Wedge, Val::G(x), Val::G(y)) => {
                let w = x.wedge(&y).map_err(|err| match err {
                    ExteriorError::DegreeOverflow { .. } => degree_error(err.to_string(), span),
                    other => degree_error(format!("cannot wedge: {other}"), span),
                })?;
                self.check_degree(w, span)
            }
            (BinOp::Div, x, Val::S(d)) => {
                let r = d.recip().map_err(|err| semantic(err.to_string(), span))?;
                Ok(match x {
                    Val::S(s) => Val::S(s * r),
                    Val::G(g) => Val::G(g.scale(&r)),
                })
            }
            (BinOp::Div, _, Val::G(_)) => Err(degree_error("cannot divide by a form", span)),
            (BinOp::Pow, _, _) => unreachable!("handled in eval"),
        }
    }

    /// Runs the checks whose suite matches `suite` (all when `None`).
    pub fn run(&self, suite: Option<&str>) -> Vec<CheckReport> {
        self.checks
            .par_iter()
            .filter(|j| suite.is_none_or(|s| s == j.suite))
            .map(run_check)
            .collect()
    }
}

fn side_word(g: &GradedElement) -> &'static str {
    match g.side() {
        Side::Vector => "multivector",
        Side::Dual => "form",
    }
}

fn with_candidate(
    report: &mut CheckReport,
    pair: &PairObject,
    f: impl FnOnce(&mut CheckReport, BialgebroidCandidate),
) {
    match pair.candidate() {
        Ok(c) => f(report, c),
        Err(msg) => report.fail("pair precondition", "duality pairing", msg),
    }
}

fn run_check(job: &CheckJob) -> CheckReport {
    let mut report = CheckReport::new(format!("{} on {}", job.suite, job.target_name));
    match (job.suite.as_str(), &job.target) {
        ("axioms", Target::Algebroid(a)) => report.absorb("", a.check_axioms()),
        ("axioms", Target::Pair(PairObject::TDual { e, ehat, .. })) => {
            let (l, lh) = (atiyah_algebroid(e), atiyah_algebroid(ehat));
            report.absorb(l.name(), l.check_axioms());
            report.absorb(lh.name(), lh.check_axioms());
        }
        ("axioms", Target::Pair(PairObject::Candidate(c))) => {
            report.absorb(c.a().name(), c.a().check_axioms());
            report.absorb(c.a_star().name(), c.a_star().check_axioms());
        }
        ("bialgebroid", Target::Pair(p)) => with_candidate(&mut report, p, |r, c| {
            r.absorb("", c.check_derivation_condition());
            r.absorb("roles exchanged", c.swapped().check_derivation_condition());
        }),
        ("courant", Target::Pair(p)) => with_candidate(&mut report, p, |r, c| {
            if let Err(e) = c.ensure_bialgebroid() {
                r.fail("Courant double precondition", "Courant double of a Lie bialgebroid", e.to_string());
            }
            r.absorb("", CourantDouble::new_unchecked(c).check_courant_axioms());
        }),
        ("poisson-jacobi", Target::Pair(p)) => {
            with_candidate(&mut report, p, |r, c| r.absorb("", c.check_poisson()))
        }
        ("tduality", Target::Pair(PairObject::TDual { e, ehat, .. })) => {
            report.absorb("", check_tduality(e, ehat))
        }
        ("theorem1", Target::Pair(PairObject::TDual { e, ehat, splitting })) => {
            report.absorb("", verify_theorem_with(e, ehat, *splitting))
        }
        (suite, _) => report.fail("suite applicability", "run", format!("suite `{suite}` does not apply")),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn env(src: &str) -> Result<Environment, Diagnostic> {
        elaborate(&parse(src).unwrap(), &ElabOptions::default())
    }

    #[test]
    fn forms_and_zero_wedge() {
        let e = env("chart (x,y); form w = dx ^ dy; form z = dx ^ dx;").unwrap();
        assert_eq!(e.form("w").unwrap().num_terms(), 1);
        assert!(e.form("z").unwrap().is_zero());
    }

    #[test]
    fn undefined_name_has_span() {
        let src = "chart (x,y);\ncheck theorem1 on Q;";
        let err = env(src).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UndefinedName("Q".into()));
        assert_eq!(&src[err.span.start..err.span.end], "Q");
    }

    #[test]
    fn duplicate_and_degree_errors() {
        let err = env("chart (x,y); form w = dx; form w = dy;").unwrap_err();
        assert!(matches!(err.kind, DiagnosticKind::DuplicateName(_)));
        let err = env("chart (x,y); form w = dx + dx ^ dy;").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::DegreeError);
        let err = env("chart (x,y); scalar s = dx;").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::DegreeError);
    }

    #[test]
    fn max_degree_cap() {
        let doc = parse("chart (x,y,z); form w = dx ^ dy ^ dz;").unwrap();
        let opts = ElabOptions { max_degree: Some(2) };
        assert_eq!(elaborate(&doc, &opts).unwrap_err().kind, DiagnosticKind::DegreeError);
    }

    #[test]
    fn second_chart_rejected() {
        let err = env("chart (x); chart (y);").unwrap_err();
        assert!(err.message.contains("one chart"));
    }

    #[test]
    fn fiber_coordinate_in_coefficient() {
        let err = env("chart (x,y); bundle E { fiber t; conn A = dt + t*dx; };").unwrap_err();
        assert!(err.message.contains("fiber coordinate"));
    }

    #[test]
    fn algebroid_block() {
        let e = env(
            "chart (x,y); algebroid U { frame a, b; anchor a = (1, 0); anchor b = (0, 1); bracket a, b = 0; };",
        )
        .unwrap();
        assert!(e.algebroid("U").unwrap().check_axioms().passed());
    }
}
