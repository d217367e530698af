use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, BinderExpr, Dialect, Expr, ExprKind, Name, ParseError, PredExpr, Quant, Span, UnOp};

const KEYWORDS: &[&str] = &[
    "true", "false", "not", "or", "close", "guard", "when", "where", "exists", "sum", "forall", "Oplus", "Otimes", "Ouplus",
];

// Binding strength, loosest first.
const PREC_OR: u8 = 2;
const PREC_COAL: u8 = 3;
const PREC_AND: u8 = 4;

pub struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    dialect: Dialect,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    pub fn new(src: &'a str, dialect: Dialect) -> PResult<Self> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
            dialect,
        })
    }

    pub fn parse_formula(mut self) -> PResult<Expr> {
        let e = if self.dialect == Dialect::Pil {
            self.pil_or()?
        } else {
            self.expr()?
        };
        if self.peek() != &Tok::Eof {
            let what = if self.peek() == &Tok::RParen {
                "unbalanced `)`".to_string()
            } else {
                format!("unexpected {}", self.peek().describe())
            };
            return Err(self.error_here(what, vec!["end of input".into()]));
        }
        Ok(e)
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>, expected: Vec<String>) -> ParseError {
        ParseError::new(self.src, self.span(), message, expected)
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let what = match self.peek() {
            Tok::Eof => "unexpected end of input".to_string(),
            t => format!("unexpected {}", t.describe()),
        };
        self.error_here(what, expected.iter().map(|s| s.to_string()).collect())
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[&format!("`{}`", tok.symbol())]))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn reject(&self, span: Span, what: &str) -> ParseError {
        ParseError::new(self.src, span, format!("{what} is not allowed in {} formulas", self.dialect), Vec::new())
    }

    fn require_weighted(&self, span: Span, what: &str) -> PResult<()> {
        if self.dialect.weighted() {
            Ok(())
        } else {
            Err(self.reject(span, what))
        }
    }

    // PIL, inside braces or as a whole `.pil` file.

    fn pil_or(&mut self) -> PResult<Expr> {
        let mut left = self.pil_and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.pil_and()?;
            left = binary(BinOp::PilOr, left, right);
        }
        Ok(left)
    }

    fn pil_and(&mut self) -> PResult<Expr> {
        let mut left = self.pil_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.pil_unary()?;
            left = binary(BinOp::PilAnd, left, right);
        }
        Ok(left)
    }

    fn pil_unary(&mut self) -> PResult<Expr> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                let e = self.pil_unary()?;
                Ok(Expr {
                    span: start.to(e.span),
                    kind: ExprKind::Unary(UnOp::PilNot, Box::new(e)),
                })
            }
            Tok::LParen => {
                self.bump();
                let e = self.pil_or()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: e.kind,
                    span: start.to(close.span),
                })
            }
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.bump();
                Ok(Expr {
                    kind: if s == "true" { ExprKind::True } else { ExprKind::False },
                    span: start,
                })
            }
            Tok::Ident(first) => {
                self.bump();
                if *self.peek() == Tok::Dot {
                    self.bump();
                    let t = self.bump();
                    match t.tok {
                        Tok::Ident(name) => Ok(Expr {
                            kind: ExprKind::Port {
                                owner: Some(first),
                                name,
                            },
                            span: start.to(t.span),
                        }),
                        _ => {
                            self.pos -= 1;
                            Err(self.unexpected(&["port name"]))
                        }
                    }
                } else {
                    Ok(Expr {
                        kind: ExprKind::Port { owner: None, name: first },
                        span: start,
                    })
                }
            }
            _ => Err(self.unexpected(&["port", "`!`", "`(`", "`true`", "`false`"])),
        }
    }

    // Configuration-level formulas.

    fn expr(&mut self) -> PResult<Expr> {
        self.implies()
    }

    fn implies(&mut self) -> PResult<Expr> {
        let left = self.level(PREC_OR)?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implies()?;
            return Ok(binary(BinOp::Implies, left, right));
        }
        Ok(left)
    }

    fn binop_at(&self, prec: u8) -> Option<BinOp> {
        let op = match (prec, self.peek()) {
            (PREC_OR, Tok::Vee) => BinOp::Union,
            (PREC_OR, Tok::OPlus) => BinOp::WPlus,
            (PREC_OR, Tok::Ident(s)) if s == "or" => BinOp::Or,
            (PREC_COAL, Tok::Plus) => BinOp::Coalesce,
            (PREC_COAL, Tok::OUplus) => BinOp::WCoalesce,
            (PREC_AND, Tok::Wedge) => BinOp::Meet,
            (PREC_AND, Tok::OTimes) => BinOp::WTimes,
            _ => return None,
        };
        Some(op)
    }

    fn level(&mut self, prec: u8) -> PResult<Expr> {
        let sub = |p: &mut Self| if prec == PREC_AND { p.unary() } else { p.level(prec + 1) };
        let mut left = sub(self)?;
        while let Some(op) = self.binop_at(prec) {
            let at = self.span();
            if matches!(op, BinOp::WPlus | BinOp::WTimes | BinOp::WCoalesce) {
                self.require_weighted(at, &format!("`{}`", op.symbol()))?;
            }
            self.bump();
            let right = sub(self)?;
            left = binary(op, left, right);
        }
        if matches!(self.peek(), Tok::Amp | Tok::Pipe | Tok::Bang) {
            let t = self.peek().clone();
            return Err(self.error_here(
                format!("`{}` only appears inside braces; use `/\\`, `\\/` or `not` between configuration formulas", t.symbol()),
                Vec::new(),
            ));
        }
        Ok(left)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let start = self.span();
        let op = match self.peek() {
            Tok::Tilde => Some(UnOp::Closure),
            Tok::Ident(s) if s == "not" => Some(UnOp::Not),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            let e = self.unary()?;
            return Ok(Expr {
                span: start.to(e.span),
                kind: ExprKind::Unary(op, Box::new(e)),
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        let start = self.span();
        match self.peek().clone() {
            Tok::LBrace => {
                self.bump();
                let inner = self.pil_or()?;
                let close = self.expect(Tok::RBrace)?;
                Ok(Expr {
                    kind: ExprKind::Braces(Box::new(inner)),
                    span: start.to(close.span),
                })
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: e.kind,
                    span: start.to(close.span),
                })
            }
            Tok::Number(n) => {
                self.require_weighted(start, "a weight literal")?;
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Weight(n),
                    span: start,
                })
            }
            Tok::Inf(neg) => {
                self.require_weighted(start, "a weight literal")?;
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Weight(if neg { "-inf" } else { "inf" }.into()),
                    span: start,
                })
            }
            Tok::Ident(word) => self.word(word, start),
            _ => Err(self.unexpected(&["formula"])),
        }
    }

    fn word(&mut self, word: String, start: Span) -> PResult<Expr> {
        match word.as_str() {
            "true" | "false" => {
                self.bump();
                Ok(Expr {
                    kind: if word == "true" { ExprKind::True } else { ExprKind::False },
                    span: start,
                })
            }
            "close" => {
                self.require_weighted(start, "`close`")?;
                self.bump();
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: ExprKind::Close(Box::new(e)),
                    span: start.to(close.span),
                })
            }
            "guard" => {
                self.require_weighted(start, "`guard`")?;
                self.bump();
                self.expect(Tok::LParen)?;
                let f = self.expr()?;
                self.expect(Tok::Comma)?;
                let z = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: ExprKind::Guard(Box::new(f), Box::new(z)),
                    span: start.to(close.span),
                })
            }
            "when" => {
                if self.dialect != Dialect::Wfocl {
                    return Err(self.reject(start, "`when`"));
                }
                self.bump();
                self.expect(Tok::LParen)?;
                let p = self.pred()?;
                self.expect(Tok::Comma)?;
                let z = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: ExprKind::When(p, Box::new(z)),
                    span: start.to(close.span),
                })
            }
            w => {
                if let Some(q) = Quant::from_keyword(w) {
                    return self.quantifier(q, start);
                }
                if KEYWORDS.contains(&w) {
                    return Err(self.unexpected(&["formula"]));
                }
                if !self.dialect.weighted() {
                    return Err(self.error_here(
                        format!("bare name `{w}`; ports are written inside braces, e.g. `{{{w}}}`"),
                        Vec::new(),
                    ));
                }
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Param(word),
                    span: start,
                })
            }
        }
    }

    fn quantifier(&mut self, q: Quant, start: Span) -> PResult<Expr> {
        if !self.dialect.first_order() {
            return Err(self.reject(start, "a quantifier"));
        }
        if q.weighted() && !self.dialect.weighted() {
            return Err(self.reject(start, &format!("`{}`", q.keyword())));
        }
        self.bump();
        let var = self.name("variable")?;
        self.expect(Tok::Colon)?;
        let ctype = self.name("component type")?;
        let pred = if self.is_kw("where") {
            self.bump();
            self.pred()?
        } else {
            PredExpr::True
        };
        self.expect(Tok::Dot)?;
        let body = self.expr()?;
        Ok(Expr {
            span: start.to(body.span),
            kind: ExprKind::Quant(q, BinderExpr { var, ctype, pred }, Box::new(body)),
        })
    }

    fn name(&mut self, what: &str) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let t = self.bump();
                Ok(Name { text: s, span: t.span })
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn pred(&mut self) -> PResult<PredExpr> {
        let mut left = self.pred_atom()?;
        while *self.peek() == Tok::AndAnd {
            self.bump();
            let right = self.pred_atom()?;
            left = PredExpr::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn pred_atom(&mut self) -> PResult<PredExpr> {
        if self.is_kw("true") {
            self.bump();
            return Ok(PredExpr::True);
        }
        if *self.peek() == Tok::LParen {
            self.bump();
            let p = self.pred()?;
            self.expect(Tok::RParen)?;
            return Ok(p);
        }
        let a = self.name("component or variable")?;
        let eq = match self.peek() {
            Tok::Eq => true,
            Tok::Neq => false,
            _ => return Err(self.unexpected(&["`=`", "`!=`"])),
        };
        self.bump();
        let b = self.name("component or variable")?;
        Ok(if eq { PredExpr::Eq(a, b) } else { PredExpr::Neq(a, b) })
    }
}

fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
    Expr {
        span: l.span.to(r.span),
        kind: ExprKind::Binary(op, Box::new(l), Box::new(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn kind(src: &str, d: Dialect) -> ExprKind {
        parse(src, d).unwrap().kind
    }

    #[test]
    fn braces_hold_pil() {
        match kind("{p}", Dialect::Wpcl) {
            ExprKind::Braces(inner) => assert_eq!(
                inner.kind,
                ExprKind::Port {
                    owner: None,
                    name: "p".into()
                }
            ),
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn precedence() {
        // /\ binds tighter than +, which binds tighter than \/, then =>.
        let e = kind("{a} \\/ {b} + {c} /\\ {d} => {e}", Dialect::Pcl);
        let ExprKind::Binary(BinOp::Implies, l, _) = e else { panic!() };
        let ExprKind::Binary(BinOp::Union, _, r) = l.kind else { panic!() };
        let ExprKind::Binary(BinOp::Coalesce, _, r) = r.kind else { panic!() };
        assert!(matches!(r.kind, ExprKind::Binary(BinOp::Meet, _, _)));
    }

    #[test]
    fn unbalanced_paren_column() {
        let e = parse("({p} + {q}", Dialect::Pcl).unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert!(e.expected.contains(&"`)`".to_string()));
        let e = parse("{p} + {q})", Dialect::Pcl).unwrap_err();
        assert_eq!(e.column, 10);
        assert!(e.message.contains("unbalanced"));
    }

    #[test]
    fn dialect_violations() {
        let e = parse("{p} (#) {q}", Dialect::Pcl).unwrap_err();
        assert!(e.message.contains("not allowed in pcl"), "{e}");
        assert_eq!(e.column, 5);
        assert!(parse("exists c:T . {c.p}", Dialect::Wpcl).is_err());
        assert!(parse("Oplus c:T . {c.p}", Dialect::Focl).is_err());
        assert!(parse("2 (*) {p}", Dialect::Pcl).is_err());
        assert!(parse("{p} & {q}", Dialect::Pcl).is_err());
    }

    #[test]
    fn quantifier_with_predicate() {
        let e = kind("forall c2:M where c2 != c1 && c2 != b1 . {c2.m}", Dialect::Focl);
        let ExprKind::Quant(Quant::Forall, b, _) = e else { panic!() };
        assert_eq!(b.var.text, "c2");
        assert!(matches!(b.pred, PredExpr::And(_, _)));
    }
}
