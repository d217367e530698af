//! ASCII surface syntax for the five formula dialects.
//!
//! Text is parsed into an untyped [`Expr`] tree (with source spans), then
//! lowered into the core ASTs. The printers in [`print`] produce text that
//! parses back to the same AST.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use wcl_core::focl::{Focl, WFocl};
use wcl_core::interaction::{Port, PortUniverse};
use wcl_core::pcl::{Pcl, WPcl};
use wcl_core::pil::Pil;
use wcl_core::semiring::{SemiringId, Value};

mod lexer;
mod lower;
mod parser;
pub mod print;

pub use lexer::{tokenize, Tok, Token};
pub use print::{print_focl, print_pcl, print_pil, print_wfocl, print_wpcl};

/// Byte offsets `[start, end)` into the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

/// A located syntax or lowering error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(src: &str, span: Span, message: impl Into<String>, mut expected: Vec<String>) -> Self {
        let at = span.start.min(src.len());
        let before = &src[..at];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = src[line_start..at].chars().count() + 1;
        expected.sort();
        expected.dedup();
        ParseError {
            span,
            line,
            column,
            message: message.into(),
            expected,
        }
    }

    /// The message followed by the offending line and a caret marker.
    pub fn render(&self, src: &str) -> String {
        let line_text = src.lines().nth(self.line - 1).unwrap_or("");
        let width = src[self.span.start.min(src.len())..self.span.end.min(src.len())]
            .chars()
            .count()
            .max(1);
        format!(
            "{self}\n  | {line_text}\n  | {}{}",
            " ".repeat(self.column - 1),
            "^".repeat(width)
        )
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dialect {
    Pil,
    Pcl,
    Wpcl,
    Focl,
    Wfocl,
}

impl Dialect {
    pub const ALL: [Dialect; 5] = [Dialect::Pil, Dialect::Pcl, Dialect::Wpcl, Dialect::Focl, Dialect::Wfocl];

    pub fn name(self) -> &'static str {
        match self {
            Dialect::Pil => "pil",
            Dialect::Pcl => "pcl",
            Dialect::Wpcl => "wpcl",
            Dialect::Focl => "focl",
            Dialect::Wfocl => "wfocl",
        }
    }

    /// Dialect named by a file extension such as `.wpcl`.
    pub fn from_path(path: &std::path::Path) -> Option<Dialect> {
        path.extension()?.to_str()?.parse().ok()
    }

    pub fn weighted(self) -> bool {
        matches!(self, Dialect::Wpcl | Dialect::Wfocl)
    }

    pub fn first_order(self) -> bool {
        matches!(self, Dialect::Focl | Dialect::Wfocl)
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dialect::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown dialect `{s}` (expected pil, pcl, wpcl, focl or wfocl)"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    True,
    False,
    /// A port inside braces, `p` or `c.p`.
    Port { owner: Option<String>, name: String },
    /// `{ φ }`
    Braces(Box<Expr>),
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// A numeric literal or `inf`/`-inf`, read by the active semiring.
    Weight(String),
    /// A named weight such as `k11`, bound at lowering time.
    Param(String),
    Close(Box<Expr>),
    Guard(Box<Expr>, Box<Expr>),
    When(PredExpr, Box<Expr>),
    Quant(Quant, BinderExpr, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnOp {
    /// `!` inside braces.
    PilNot,
    /// `not`
    Not,
    /// `~`
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    /// `&` inside braces.
    PilAnd,
    /// `|` inside braces.
    PilOr,
    /// `/\`
    Meet,
    /// `\/`
    Union,
    /// `+`
    Coalesce,
    /// `=>`
    Implies,
    /// `or`
    Or,
    /// `(+)`
    WPlus,
    /// `(*)`
    WTimes,
    /// `(#)`
    WCoalesce,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::PilAnd => "&",
            BinOp::PilOr => "|",
            BinOp::Meet => "/\\",
            BinOp::Union => "\\/",
            BinOp::Coalesce => "+",
            BinOp::Implies => "=>",
            BinOp::Or => "or",
            BinOp::WPlus => "(+)",
            BinOp::WTimes => "(*)",
            BinOp::WCoalesce => "(#)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quant {
    Exists,
    Sum,
    Forall,
    Oplus,
    Otimes,
    Ouplus,
}

impl Quant {
    pub fn keyword(self) -> &'static str {
        match self {
            Quant::Exists => "exists",
            Quant::Sum => "sum",
            Quant::Forall => "forall",
            Quant::Oplus => "Oplus",
            Quant::Otimes => "Otimes",
            Quant::Ouplus => "Ouplus",
        }
    }

    fn from_keyword(s: &str) -> Option<Quant> {
        [Quant::Exists, Quant::Sum, Quant::Forall, Quant::Oplus, Quant::Otimes, Quant::Ouplus]
            .into_iter()
            .find(|q| q.keyword() == s)
    }

    pub fn weighted(self) -> bool {
        matches!(self, Quant::Oplus | Quant::Otimes | Quant::Ouplus)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinderExpr {
    pub var: Name,
    pub ctype: Name,
    pub pred: PredExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PredExpr {
    True,
    Eq(Name, Name),
    Neq(Name, Name),
    And(Box<PredExpr>, Box<PredExpr>),
}

/// Named weights such as `k11`.
pub type Params = BTreeMap<String, Value>;

/// Parses `src` as a formula of `dialect`, rejecting constructs the
/// dialect does not have.
pub fn parse(src: &str, dialect: Dialect) -> Result<Expr, ParseError> {
    parser::Parser::new(src, dialect)?.parse_formula()
}

/// Ports mentioned inside braces, in canonical order.
pub fn ports_in(e: &Expr) -> BTreeSet<Port> {
    let mut out = BTreeSet::new();
    collect_ports(e, &mut out);
    out
}

fn collect_ports(e: &Expr, out: &mut BTreeSet<Port>) {
    match &e.kind {
        ExprKind::Port { owner, name } => {
            out.insert(Port {
                owner: owner.clone(),
                name: name.clone(),
            });
        }
        ExprKind::Braces(x) | ExprKind::Unary(_, x) | ExprKind::Close(x) | ExprKind::When(_, x) | ExprKind::Quant(_, _, x) => {
            collect_ports(x, out)
        }
        ExprKind::Binary(_, a, b) | ExprKind::Guard(a, b) => {
            collect_ports(a, out);
            collect_ports(b, out);
        }
        ExprKind::True | ExprKind::False | ExprKind::Weight(_) | ExprKind::Param(_) => {}
    }
}

pub fn parse_pil(src: &str, u: &PortUniverse) -> Result<Pil<usize>, ParseError> {
    lower::Lowerer::new(src).pil(&parse(src, Dialect::Pil)?, u)
}

pub fn parse_pcl(src: &str, u: &PortUniverse) -> Result<Pcl, ParseError> {
    lower::Lowerer::new(src).pcl(&parse(src, Dialect::Pcl)?, u)
}

pub fn parse_wpcl(src: &str, u: &PortUniverse, sr: SemiringId, params: &Params) -> Result<WPcl, ParseError> {
    lower::Lowerer::new(src).wpcl(&parse(src, Dialect::Wpcl)?, u, sr, params)
}

pub fn parse_focl(src: &str) -> Result<Focl, ParseError> {
    lower::Lowerer::new(src).focl(&parse(src, Dialect::Focl)?)
}

pub fn parse_wfocl(src: &str, sr: SemiringId, params: &Params) -> Result<WFocl, ParseError> {
    lower::Lowerer::new(src).wfocl(&parse(src, Dialect::Wfocl)?, sr, params)
}

/// A lowered formula of any dialect.
#[derive(Clone, Debug, PartialEq)]
pub enum Formula {
    Pil(Pil<usize>),
    Pcl(Pcl),
    Wpcl(WPcl),
    Focl(Focl),
    Wfocl(WFocl),
}

impl Formula {
    /// Parses and lowers. `u` is required for the propositional dialects.
    pub fn parse(src: &str, dialect: Dialect, u: Option<&PortUniverse>, sr: SemiringId, params: &Params) -> Result<Formula, ParseError> {
        let e = parse(src, dialect)?;
        let l = lower::Lowerer::new(src);
        let need_u = || {
            u.ok_or_else(|| ParseError::new(src, e.span, format!("{dialect} formulas need a port universe"), Vec::new()))
        };
        Ok(match dialect {
            Dialect::Pil => Formula::Pil(l.pil(&e, need_u()?)?),
            Dialect::Pcl => Formula::Pcl(l.pcl(&e, need_u()?)?),
            Dialect::Wpcl => Formula::Wpcl(l.wpcl(&e, need_u()?, sr, params)?),
            Dialect::Focl => Formula::Focl(l.focl(&e)?),
            Dialect::Wfocl => Formula::Wfocl(l.wfocl(&e, sr, params)?),
        })
    }
}
