use wcl_core::focl::{Binder, Focl, PortRef, Predicate, Term, WFocl};
use wcl_core::interaction::{Port, PortUniverse};
use wcl_core::pcl::{Pcl, WPcl};
use wcl_core::pil::Pil;
use wcl_core::semiring::{SemiringId, Value};

use super::{BinOp, BinderExpr, Expr, ExprKind, Params, ParseError, PredExpr, Quant, Span, UnOp};

type LResult<T> = Result<T, ParseError>;

pub struct Lowerer<'a> {
    src: &'a str,
}

/// True when `e` is built only from unweighted constructs.
fn is_boolean(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::True | ExprKind::False | ExprKind::Braces(_) => true,
        ExprKind::Unary(_, x) => is_boolean(x),
        ExprKind::Binary(op, a, b) => {
            matches!(op, BinOp::Meet | BinOp::Union | BinOp::Coalesce | BinOp::Implies | BinOp::Or) && is_boolean(a) && is_boolean(b)
        }
        ExprKind::Quant(q, _, x) => !q.weighted() && is_boolean(x),
        ExprKind::Port { .. }
        | ExprKind::Weight(_)
        | ExprKind::Param(_)
        | ExprKind::Close(_)
        | ExprKind::Guard(_, _)
        | ExprKind::When(_, _) => false,
    }
}

impl<'a> Lowerer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lowerer { src }
    }

    fn err(&self, span: Span, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.src, span, msg, Vec::new())
    }

    fn pil_with<A>(&self, e: &Expr, atom: &mut impl FnMut(&Option<String>, &str, Span) -> LResult<A>) -> LResult<Pil<A>> {
        Ok(match &e.kind {
            ExprKind::True => Pil::truth(),
            ExprKind::False => Pil::falsity(),
            ExprKind::Port { owner, name } => Pil::atom(atom(owner, name, e.span)?),
            ExprKind::Unary(UnOp::PilNot, x) => self.pil_with(x, atom)?.negate(),
            ExprKind::Binary(BinOp::PilAnd, a, b) => self.pil_with(a, atom)?.and(self.pil_with(b, atom)?),
            ExprKind::Binary(BinOp::PilOr, a, b) => self.pil_with(a, atom)?.or(self.pil_with(b, atom)?),
            _ => return Err(self.err(e.span, "expected an interaction formula")),
        })
    }

    pub fn pil(&self, e: &Expr, u: &PortUniverse) -> LResult<Pil<usize>> {
        self.pil_with(e, &mut |owner, name, span| {
            let p = Port {
                owner: owner.clone(),
                name: name.to_string(),
            };
            u.index_of(&p)
                .ok_or_else(|| self.err(span, format!("port `{p}` is not in the port universe")))
        })
    }

    pub fn pcl(&self, e: &Expr, u: &PortUniverse) -> LResult<Pcl> {
        Ok(match &e.kind {
            ExprKind::True => Pcl::True,
            ExprKind::False => Pcl::falsity(),
            ExprKind::Braces(x) => Pcl::inter(self.pil(x, u)?),
            ExprKind::Unary(UnOp::Not, x) => self.pcl(x, u)?.not(),
            ExprKind::Unary(UnOp::Closure, x) => self.pcl(x, u)?.closure(),
            ExprKind::Binary(op, a, b) if bool_op(*op) => {
                let (a, b) = (self.pcl(a, u)?, self.pcl(b, u)?);
                match op {
                    BinOp::Meet => a.meet(b),
                    BinOp::Union => a.union(b),
                    BinOp::Coalesce => a.coalesce(b),
                    BinOp::Implies => a.implies(b),
                    _ => a.disj(b),
                }
            }
            _ => return Err(self.not_boolean(e)),
        })
    }

    fn not_boolean(&self, e: &Expr) -> ParseError {
        self.err(e.span, "expected an unweighted configuration formula here")
    }

    /// Error for a Boolean-only operator applied to a weighted operand.
    fn mixed(&self, e: &Expr) -> ParseError {
        let what = match &e.kind {
            ExprKind::Unary(UnOp::Not, _) => "`not` needs an unweighted operand".to_string(),
            ExprKind::Unary(UnOp::Closure, _) => "`~` needs an unweighted operand; use close(...) for weighted closure".to_string(),
            ExprKind::Binary(op, _, _) => {
                let hint = match op {
                    BinOp::Coalesce => "; use `(#)` for weighted coalescing",
                    BinOp::Union => "; use `(+)` for weighted sum",
                    BinOp::Meet => "; use `(*)` for weighted product",
                    _ => "",
                };
                format!("`{}` needs unweighted operands{hint}", op.symbol())
            }
            ExprKind::Quant(q, _, _) => format!("`{}` needs an unweighted body", q.keyword()),
            _ => "expected an unweighted formula".to_string(),
        };
        self.err(e.span, what)
    }

    fn weight(&self, e: &Expr, sr: SemiringId, params: &Params) -> LResult<Value> {
        match &e.kind {
            // `0` and `1` name the semiring's own constants.
            ExprKind::Weight(lit) if lit == "0" => Ok(sr.zero()),
            ExprKind::Weight(lit) if lit == "1" => Ok(sr.one()),
            ExprKind::Weight(lit) => sr.parse_weight(lit).map_err(|err| self.err(e.span, err.to_string())),
            ExprKind::Param(name) => match params.get(name) {
                Some(v) if v.semiring() == sr => Ok(*v),
                Some(v) => Err(self.err(e.span, format!("weight `{name}` belongs to {}, not {sr}", v.semiring()))),
                None => Err(self.err(e.span, format!("unbound weight `{name}`"))),
            },
            _ => unreachable!(),
        }
    }

    pub fn wpcl(&self, e: &Expr, u: &PortUniverse, sr: SemiringId, params: &Params) -> LResult<WPcl> {
        if is_boolean(e) {
            return Ok(WPcl::Bool(self.pcl(e, u)?));
        }
        let go = |x: &Expr| self.wpcl(x, u, sr, params);
        Ok(match &e.kind {
            ExprKind::Weight(_) | ExprKind::Param(_) => WPcl::Const(self.weight(e, sr, params)?),
            ExprKind::Binary(BinOp::WPlus, a, b) => go(a)?.plus(go(b)?),
            ExprKind::Binary(BinOp::WTimes, a, b) => go(a)?.times(go(b)?),
            ExprKind::Binary(BinOp::WCoalesce, a, b) => go(a)?.coalesce(go(b)?),
            ExprKind::Binary(BinOp::Or, a, b) => go(a)?.wdisj(go(b)?),
            ExprKind::Close(x) => go(x)?.closure(),
            ExprKind::Guard(f, z) => {
                if !is_boolean(f) {
                    return Err(self.err(f.span, "the condition of guard(...) must be unweighted"));
                }
                WPcl::guard(self.pcl(f, u)?, go(z)?)
            }
            _ => return Err(self.mixed(e)),
        })
    }

    fn term(&self, n: &super::Name, scope: &[String]) -> Term {
        if scope.contains(&n.text) {
            Term::Var(n.text.clone())
        } else {
            Term::Comp(n.text.clone())
        }
    }

    fn pred(&self, p: &PredExpr, scope: &[String]) -> Predicate {
        match p {
            PredExpr::True => Predicate::True,
            PredExpr::Eq(a, b) => Predicate::Eq(self.term(a, scope), self.term(b, scope)),
            PredExpr::Neq(a, b) => Predicate::Neq(self.term(a, scope), self.term(b, scope)),
            PredExpr::And(a, b) => self.pred(a, scope).and(self.pred(b, scope)),
        }
    }

    /// Pushes the binder's variable, rejecting shadowing.
    fn binder(&self, b: &BinderExpr, scope: &mut Vec<String>) -> LResult<Binder> {
        if scope.contains(&b.var.text) {
            return Err(self.err(b.var.span, format!("variable `{}` shadows an enclosing binder", b.var.text)));
        }
        scope.push(b.var.text.clone());
        Ok(Binder::new(b.var.text.clone(), b.ctype.text.clone()).with_pred(self.pred(&b.pred, scope)))
    }

    fn port_ref(&self, owner: &Option<String>, name: &str, span: Span, scope: &[String]) -> LResult<PortRef> {
        match owner {
            Some(o) if scope.contains(o) => Ok(PortRef::var(o.clone(), name)),
            Some(o) => Ok(PortRef::comp(o.clone(), name)),
            None => Err(self.err(span, format!("first-order ports are qualified, e.g. `c.{name}`"))),
        }
    }

    pub fn focl(&self, e: &Expr) -> LResult<Focl> {
        self.focl_in(e, &mut Vec::new())
    }

    fn focl_in(&self, e: &Expr, scope: &mut Vec<String>) -> LResult<Focl> {
        Ok(match &e.kind {
            ExprKind::True => Focl::True,
            ExprKind::False => Focl::True.not(),
            ExprKind::Braces(x) => Focl::inter(self.pil_with(x, &mut |o, n, s| self.port_ref(o, n, s, scope))?),
            ExprKind::Unary(UnOp::Not, x) => self.focl_in(x, scope)?.not(),
            ExprKind::Unary(UnOp::Closure, x) => self.focl_in(x, scope)?.closure(),
            ExprKind::Binary(op, a, b) if bool_op(*op) => {
                let (a, b) = (self.focl_in(a, scope)?, self.focl_in(b, scope)?);
                match op {
                    BinOp::Meet => a.meet(b),
                    BinOp::Union => a.union(b),
                    BinOp::Coalesce => a.coalesce(b),
                    BinOp::Implies => a.implies(b),
                    _ => focl_disj(a, b),
                }
            }
            ExprKind::Quant(q, b, body) if !q.weighted() => {
                let binder = self.binder(b, scope)?;
                let f = self.focl_in(body, scope);
                scope.pop();
                let f = f?;
                match q {
                    Quant::Exists => Focl::exists(binder, f),
                    Quant::Sum => Focl::sum(binder, f),
                    _ => Focl::forall(binder, f),
                }
            }
            _ => return Err(self.not_boolean(e)),
        })
    }

    pub fn wfocl(&self, e: &Expr, sr: SemiringId, params: &Params) -> LResult<WFocl> {
        self.wfocl_in(e, sr, params, &mut Vec::new())
    }

    fn wfocl_in(&self, e: &Expr, sr: SemiringId, params: &Params, scope: &mut Vec<String>) -> LResult<WFocl> {
        if is_boolean(e) {
            return Ok(WFocl::Bool(self.focl_in(e, scope)?));
        }
        macro_rules! go {
            ($x:expr) => {
                self.wfocl_in($x, sr, params, scope)?
            };
        }
        Ok(match &e.kind {
            ExprKind::Weight(_) | ExprKind::Param(_) => WFocl::Const(self.weight(e, sr, params)?),
            ExprKind::Binary(BinOp::WPlus, a, b) => go!(a).plus(go!(b)),
            ExprKind::Binary(BinOp::WTimes, a, b) => go!(a).times(go!(b)),
            ExprKind::Binary(BinOp::WCoalesce, a, b) => go!(a).coalesce(go!(b)),
            ExprKind::Binary(BinOp::Or, a, b) => {
                let (a, b) = (go!(a), go!(b));
                a.clone().plus(b.clone()).plus(a.coalesce(b))
            }
            ExprKind::Close(x) => go!(x).closure(),
            ExprKind::Guard(f, z) => {
                if !is_boolean(f) {
                    return Err(self.err(f.span, "the condition of guard(...) must be unweighted"));
                }
                WFocl::guard(self.focl_in(f, scope)?, go!(z))
            }
            ExprKind::When(p, z) => WFocl::when(self.pred(p, scope), go!(z)),
            ExprKind::Quant(q, b, body) if q.weighted() => {
                let binder = self.binder(b, scope)?;
                let z = self.wfocl_in(body, sr, params, scope);
                scope.pop();
                let z = z?;
                match q {
                    Quant::Oplus => WFocl::oplus(binder, z),
                    Quant::Otimes => WFocl::otimes(binder, z),
                    _ => WFocl::ouplus(binder, z),
                }
            }
            _ => return Err(self.mixed(e)),
        })
    }
}

fn bool_op(op: BinOp) -> bool {
    matches!(op, BinOp::Meet | BinOp::Union | BinOp::Coalesce | BinOp::Implies | BinOp::Or)
}

/// F₁ ∨ F₂ := F₁ ⊔ F₂ ⊔ (F₁ + F₂)
pub fn focl_disj(a: Focl, b: Focl) -> Focl {
    let c = a.clone().coalesce(b.clone());
    a.union(b).union(c)
}
