//! First-order configuration logic over typed component models, and its
//! weighted version.
//!
//! Quantifiers are evaluated with an environment of bound variables rather
//! than by rewriting the formula; [`Focl::substitute`] and
//! [`WFocl::substitute`] provide the textual substitution F[c′/c].

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::eval::superset_sums;
use crate::interaction::{low_bits, Configuration, NamedConfiguration, Port, PortUniverse};
use crate::pcl::coalesce_tables;
use crate::pil::Pil;
use crate::semiring::{SemiringId, Value};

/// Name of the universal component type, matched by every component.
pub const UNIVERSAL_TYPE: &str = "U";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentType {
    pub name: String,
    pub ports: Vec<String>,
}

impl ComponentType {
    pub fn new<S: Into<String>>(name: impl Into<String>, ports: impl IntoIterator<Item = S>) -> Self {
        ComponentType {
            name: name.into(),
            ports: ports.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub ctype: String,
}

impl Component {
    pub fn new(name: impl Into<String>, ctype: impl Into<String>) -> Self {
        Component {
            name: name.into(),
            ctype: ctype.into(),
        }
    }
}

/// A set B of typed components together with its port universe P_B.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    types: Vec<ComponentType>,
    components: Vec<Component>,
    universe: PortUniverse,
    /// For each component, its port names mapped to indices of `universe`.
    port_index: Vec<BTreeMap<String, usize>>,
}

impl Model {
    pub fn new(types: Vec<ComponentType>, components: Vec<Component>) -> Result<Model> {
        let mut types = types;
        types.sort_by(|a, b| a.name.cmp(&b.name));
        for w in types.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateType(w[0].name.clone()));
            }
        }
        for t in types.iter_mut() {
            if t.name == UNIVERSAL_TYPE {
                return Err(Error::DuplicateType(t.name.clone()));
            }
            t.ports.sort();
            for w in t.ports.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicatePort(alloc::format!("{}.{}", t.name, w[0])));
                }
            }
        }
        let mut components = components;
        components.sort_by(|a, b| a.name.cmp(&b.name));
        for w in components.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateComponent(w[0].name.clone()));
            }
        }
        let mut ports = Vec::new();
        for c in &components {
            let t = types
                .iter()
                .find(|t| t.name == c.ctype)
                .ok_or_else(|| Error::UnknownType(c.ctype.clone()))?;
            ports.extend(t.ports.iter().map(|p| Port::qualified(c.name.clone(), p.clone())));
        }
        let universe = PortUniverse::new(ports)?;
        let port_index = components
            .iter()
            .map(|c| {
                let t = types.iter().find(|t| t.name == c.ctype).unwrap();
                t.ports
                    .iter()
                    .map(|p| {
                        let i = universe.index_of(&Port::qualified(c.name.clone(), p.clone())).unwrap();
                        (p.clone(), i)
                    })
                    .collect()
            })
            .collect();
        Ok(Model {
            types,
            components,
            universe,
            port_index,
        })
    }

    /// P_B.
    pub fn universe(&self) -> &PortUniverse {
        &self.universe
    }

    pub fn types(&self) -> &[ComponentType] {
        &self.types
    }

    /// Components in canonical name order.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.binary_search_by(|c| c.name.as_str().cmp(name)).ok()
    }

    /// Indices of the components of type `ctype` (all for the universal type).
    pub fn components_of(&self, ctype: &str) -> Result<Vec<usize>> {
        if ctype == UNIVERSAL_TYPE {
            return Ok((0..self.components.len()).collect());
        }
        if !self.types.iter().any(|t| t.name == ctype) {
            return Err(Error::UnknownType(ctype.to_string()));
        }
        Ok((0..self.components.len())
            .filter(|&i| self.components[i].ctype == ctype)
            .collect())
    }

    fn port_of(&self, comp: usize, port: &str) -> Option<usize> {
        self.port_index[comp].get(port).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Comp(String),
}

impl Term {
    fn substitute(&self, var: &str, comp: &str) -> Term {
        match self {
            Term::Var(v) if v == var => Term::Comp(comp.to_string()),
            t => t.clone(),
        }
    }

    fn mentions(&self, var: &str) -> bool {
        matches!(self, Term::Var(v) if v == var)
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(v) | Term::Comp(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    True,
    Eq(Term, Term),
    Neq(Term, Term),
    And(Box<Predicate>, Box<Predicate>),
}

impl Predicate {
    pub fn and(self, other: Predicate) -> Predicate {
        Predicate::And(Box::new(self), Box::new(other))
    }

    fn substitute(&self, var: &str, comp: &str) -> Predicate {
        match self {
            Predicate::True => Predicate::True,
            Predicate::Eq(a, b) => Predicate::Eq(a.substitute(var, comp), b.substitute(var, comp)),
            Predicate::Neq(a, b) => Predicate::Neq(a.substitute(var, comp), b.substitute(var, comp)),
            Predicate::And(a, b) => a.substitute(var, comp).and(b.substitute(var, comp)),
        }
    }

    fn mentions(&self, var: &str) -> bool {
        match self {
            Predicate::True => false,
            Predicate::Eq(a, b) | Predicate::Neq(a, b) => a.mentions(var) || b.mentions(var),
            Predicate::And(a, b) => a.mentions(var) || b.mentions(var),
        }
    }
}

/// `c.p` where `c` is a variable or a component name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub comp: Term,
    pub port: String,
}

impl PortRef {
    pub fn var(var: impl Into<String>, port: impl Into<String>) -> Self {
        PortRef {
            comp: Term::Var(var.into()),
            port: port.into(),
        }
    }

    pub fn comp(comp: impl Into<String>, port: impl Into<String>) -> Self {
        PortRef {
            comp: Term::Comp(comp.into()),
            port: port.into(),
        }
    }
}

/// The `c:T(Φ(c))` part of a quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binder {
    pub var: String,
    pub ctype: String,
    pub pred: Predicate,
}

impl Binder {
    pub fn new(var: impl Into<String>, ctype: impl Into<String>) -> Self {
        Binder {
            var: var.into(),
            ctype: ctype.into(),
            pred: Predicate::True,
        }
    }

    pub fn with_pred(mut self, pred: Predicate) -> Self {
        self.pred = pred;
        self
    }

    fn substitute(&self, var: &str, comp: &str) -> Binder {
        Binder {
            var: self.var.clone(),
            ctype: self.ctype.clone(),
            pred: self.pred.substitute(var, comp),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Focl {
    True,
    Inter(Pil<PortRef>),
    Not(Box<Focl>),
    Union(Box<Focl>, Box<Focl>),
    Coalesce(Box<Focl>, Box<Focl>),
    Exists(Binder, Box<Focl>),
    Sum(Binder, Box<Focl>),
}

impl Focl {
    pub fn inter(phi: Pil<PortRef>) -> Focl {
        Focl::Inter(phi)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Focl {
        Focl::Not(Box::new(self))
    }

    pub fn union(self, other: Focl) -> Focl {
        Focl::Union(Box::new(self), Box::new(other))
    }

    pub fn coalesce(self, other: Focl) -> Focl {
        Focl::Coalesce(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: Focl) -> Focl {
        self.not().union(other.not()).not()
    }

    pub fn implies(self, other: Focl) -> Focl {
        self.not().union(other)
    }

    pub fn closure(self) -> Focl {
        self.coalesce(Focl::True)
    }

    pub fn exists(b: Binder, f: Focl) -> Focl {
        Focl::Exists(b, Box::new(f))
    }

    pub fn sum(b: Binder, f: Focl) -> Focl {
        Focl::Sum(b, Box::new(f))
    }

    /// ∀c:T(Φ).F := ¬∃c:T(Φ).¬F
    pub fn forall(b: Binder, f: Focl) -> Focl {
        Focl::exists(b, f.not()).not()
    }

    pub fn as_forall(&self) -> Option<(&Binder, &Focl)> {
        if let Focl::Not(inner) = self {
            if let Focl::Exists(b, body) = inner.as_ref() {
                if let Focl::Not(f) = body.as_ref() {
                    return Some((b, f));
                }
            }
        }
        None
    }

    pub fn as_meet(&self) -> Option<(&Focl, &Focl)> {
        if let Focl::Not(inner) = self {
            if let Focl::Union(l, r) = inner.as_ref() {
                if let (Focl::Not(a), Focl::Not(b)) = (l.as_ref(), r.as_ref()) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn as_implies(&self) -> Option<(&Focl, &Focl)> {
        match self {
            Focl::Union(l, r) => match l.as_ref() {
                Focl::Not(a) => Some((a, r)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_closure(&self) -> Option<&Focl> {
        match self {
            Focl::Coalesce(f, t) if **t == Focl::True => Some(f),
            _ => None,
        }
    }

    /// Whether `var` is bound by some quantifier of the formula.
    pub fn binds(&self, var: &str) -> bool {
        match self {
            Focl::True | Focl::Inter(_) => false,
            Focl::Not(f) => f.binds(var),
            Focl::Union(l, r) | Focl::Coalesce(l, r) => l.binds(var) || r.binds(var),
            Focl::Exists(b, f) | Focl::Sum(b, f) => b.var == var || f.binds(var),
        }
    }

    /// Whether `var` occurs as a term anywhere.
    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Focl::True => false,
            Focl::Inter(phi) => phi.atoms().iter().any(|r| r.comp.mentions(var)),
            Focl::Not(f) => f.mentions(var),
            Focl::Union(l, r) | Focl::Coalesce(l, r) => l.mentions(var) || r.mentions(var),
            Focl::Exists(b, f) | Focl::Sum(b, f) => b.pred.mentions(var) || f.mentions(var),
        }
    }

    /// F[comp/var]. Fails if `var` is bound in F.
    pub fn substitute(&self, var: &str, comp: &str) -> Result<Focl> {
        if self.binds(var) {
            return Err(Error::BoundVariable(var.to_string()));
        }
        Ok(self.subst(var, comp))
    }

    fn subst(&self, var: &str, comp: &str) -> Focl {
        match self {
            Focl::True => Focl::True,
            Focl::Inter(phi) => Focl::Inter(phi.map_atoms(&mut |r: &PortRef| PortRef {
                comp: r.comp.substitute(var, comp),
                port: r.port.clone(),
            })),
            Focl::Not(f) => f.subst(var, comp).not(),
            Focl::Union(l, r) => l.subst(var, comp).union(r.subst(var, comp)),
            Focl::Coalesce(l, r) => l.subst(var, comp).coalesce(r.subst(var, comp)),
            Focl::Exists(b, f) => Focl::exists(b.substitute(var, comp), f.subst(var, comp)),
            Focl::Sum(b, f) => Focl::sum(b.substitute(var, comp), f.subst(var, comp)),
        }
    }
}

/// A weighted FOCL formula.
///
/// `When(Φ, Z)` is the identity guard: ‖Z‖ if the closed predicate Φ
/// holds, 1 otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum WFocl {
    Const(Value),
    Bool(Focl),
    Plus(Box<WFocl>, Box<WFocl>),
    Times(Box<WFocl>, Box<WFocl>),
    Coalesce(Box<WFocl>, Box<WFocl>),
    Closure(Box<WFocl>),
    OplusQ(Binder, Box<WFocl>),
    OtimesQ(Binder, Box<WFocl>),
    OuplusQ(Binder, Box<WFocl>),
    When(Predicate, Box<WFocl>),
}

impl WFocl {
    pub fn plus(self, other: WFocl) -> WFocl {
        WFocl::Plus(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: WFocl) -> WFocl {
        WFocl::Times(Box::new(self), Box::new(other))
    }

    pub fn coalesce(self, other: WFocl) -> WFocl {
        WFocl::Coalesce(Box::new(self), Box::new(other))
    }

    pub fn closure(self) -> WFocl {
        WFocl::Closure(Box::new(self))
    }

    pub fn oplus(b: Binder, z: WFocl) -> WFocl {
        WFocl::OplusQ(b, Box::new(z))
    }

    pub fn otimes(b: Binder, z: WFocl) -> WFocl {
        WFocl::OtimesQ(b, Box::new(z))
    }

    pub fn ouplus(b: Binder, z: WFocl) -> WFocl {
        WFocl::OuplusQ(b, Box::new(z))
    }

    pub fn when(pred: Predicate, z: WFocl) -> WFocl {
        WFocl::When(pred, Box::new(z))
    }

    /// F ⟹ Z := ¬F ⊕ (F ⊗ Z)
    pub fn guard(f: Focl, z: WFocl) -> WFocl {
        WFocl::Bool(f.clone().not()).plus(WFocl::Bool(f).times(z))
    }

    pub fn check(&self, sr: SemiringId) -> Result<()> {
        match self {
            WFocl::Const(k) if k.semiring() != sr => Err(Error::MixedSemiring {
                left: k.semiring(),
                right: sr,
            }),
            WFocl::Const(_) | WFocl::Bool(_) => Ok(()),
            WFocl::Plus(l, r) | WFocl::Times(l, r) | WFocl::Coalesce(l, r) => {
                l.check(sr)?;
                r.check(sr)
            }
            WFocl::Closure(z)
            | WFocl::OplusQ(_, z)
            | WFocl::OtimesQ(_, z)
            | WFocl::OuplusQ(_, z)
            | WFocl::When(_, z) => z.check(sr),
        }
    }

    pub fn binds(&self, var: &str) -> bool {
        match self {
            WFocl::Const(_) => false,
            WFocl::Bool(f) => f.binds(var),
            WFocl::Plus(l, r) | WFocl::Times(l, r) | WFocl::Coalesce(l, r) => l.binds(var) || r.binds(var),
            WFocl::Closure(z) | WFocl::When(_, z) => z.binds(var),
            WFocl::OplusQ(b, z) | WFocl::OtimesQ(b, z) | WFocl::OuplusQ(b, z) => b.var == var || z.binds(var),
        }
    }

    /// Z[comp/var]. Fails if `var` is bound in Z.
    pub fn substitute(&self, var: &str, comp: &str) -> Result<WFocl> {
        if self.binds(var) {
            return Err(Error::BoundVariable(var.to_string()));
        }
        Ok(self.subst(var, comp))
    }

    fn subst(&self, var: &str, comp: &str) -> WFocl {
        match self {
            WFocl::Const(k) => WFocl::Const(*k),
            WFocl::Bool(f) => WFocl::Bool(f.subst(var, comp)),
            WFocl::Plus(l, r) => l.subst(var, comp).plus(r.subst(var, comp)),
            WFocl::Times(l, r) => l.subst(var, comp).times(r.subst(var, comp)),
            WFocl::Coalesce(l, r) => l.subst(var, comp).coalesce(r.subst(var, comp)),
            WFocl::Closure(z) => z.subst(var, comp).closure(),
            WFocl::OplusQ(b, z) => WFocl::oplus(b.substitute(var, comp), z.subst(var, comp)),
            WFocl::OtimesQ(b, z) => WFocl::otimes(b.substitute(var, comp), z.subst(var, comp)),
            WFocl::OuplusQ(b, z) => WFocl::ouplus(b.substitute(var, comp), z.subst(var, comp)),
            WFocl::When(p, z) => WFocl::when(p.substitute(var, comp), z.subst(var, comp)),
        }
    }
}

/// Variable bindings, innermost last.
type Env = Vec<(String, usize)>;

fn resolve(model: &Model, env: &Env, t: &Term) -> Result<usize> {
    match t {
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|&(_, c)| c)
            .ok_or_else(|| Error::FreeVariable(v.clone())),
        Term::Comp(c) => model.component_index(c).ok_or_else(|| Error::UnknownComponent(c.clone())),
    }
}

fn pred_holds(model: &Model, env: &Env, p: &Predicate) -> Result<bool> {
    Ok(match p {
        Predicate::True => true,
        Predicate::Eq(a, b) => resolve(model, env, a)? == resolve(model, env, b)?,
        Predicate::Neq(a, b) => resolve(model, env, a)? != resolve(model, env, b)?,
        Predicate::And(a, b) => pred_holds(model, env, a)? && pred_holds(model, env, b)?,
    })
}

fn matches(model: &Model, env: &Env, b: &Binder) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut env = env.clone();
    for c in model.components_of(&b.ctype)? {
        env.push((b.var.clone(), c));
        if pred_holds(model, &env, &b.pred)? {
            out.push(c);
        }
        env.pop();
    }
    Ok(out)
}

/// Components of the binder's type satisfying its predicate, in canonical
/// name order. `bindings` maps the other free variables of the predicate to
/// component names.
pub fn matching_components<'m>(model: &'m Model, binder: &Binder, bindings: &[(&str, &str)]) -> Result<Vec<&'m Component>> {
    let env = bindings
        .iter()
        .map(|&(v, c)| {
            model
                .component_index(c)
                .map(|i| (v.to_string(), i))
                .ok_or_else(|| Error::UnknownComponent(c.to_string()))
        })
        .collect::<Result<Env>>()?;
    Ok(matches(model, &env, binder)?
        .into_iter()
        .map(|i| &model.components[i])
        .collect())
}

struct Tables<'a> {
    model: &'a Model,
    inters: &'a [u64],
    size: usize,
    sr: SemiringId,
    caps: &'a Caps,
}

impl Tables<'_> {
    fn atom_positions(&self, phi: &Pil<PortRef>, env: &Env) -> Result<u64> {
        // A port the component does not have is an always-false atom.
        let resolved: Pil<Option<usize>> = phi.try_map_atoms(&mut |r: &PortRef| {
            let c = resolve(self.model, env, &r.comp)?;
            Ok::<_, Error>(self.model.port_of(c, &r.port))
        })?;
        Ok(self
            .inters
            .iter()
            .enumerate()
            .filter(|(_, &a)| resolved.eval(&mut |p: &Option<usize>| p.is_some_and(|i| a >> i & 1 == 1)))
            .fold(0, |m, (i, _)| m | 1 << i))
    }

    fn sat(&self, f: &Focl, env: &mut Env) -> Result<Vec<bool>> {
        let size = self.size;
        let mut t = match f {
            Focl::True => vec![true; size],
            Focl::Inter(phi) => {
                let s = self.atom_positions(phi, env)? as usize;
                (0..size).map(|m| m & !s == 0).collect()
            }
            Focl::Not(g) => self.sat(g, env)?.into_iter().map(|b| !b).collect(),
            Focl::Union(l, r) => {
                let a = self.sat(l, env)?;
                let b = self.sat(r, env)?;
                a.into_iter().zip(b).map(|(x, y)| x || y).collect()
            }
            Focl::Coalesce(l, r) => {
                let a = self.sat(l, env)?;
                let b = self.sat(r, env)?;
                coalesce_tables(&a, &b, self.caps)?
            }
            Focl::Exists(b, g) => {
                let mut acc = vec![false; size];
                for c in matches(self.model, env, b)? {
                    env.push((b.var.clone(), c));
                    let t = self.sat(g, env);
                    env.pop();
                    for (x, y) in acc.iter_mut().zip(t?) {
                        *x = *x || y;
                    }
                }
                acc
            }
            Focl::Sum(b, g) => {
                let mut acc: Option<Vec<bool>> = None;
                for c in matches(self.model, env, b)? {
                    env.push((b.var.clone(), c));
                    let t = self.sat(g, env);
                    env.pop();
                    let t = t?;
                    acc = Some(match acc {
                        None => t,
                        Some(a) => coalesce_tables(&a, &t, self.caps)?,
                    });
                }
                acc.unwrap_or_else(|| vec![false; size])
            }
        };
        t[0] = false;
        Ok(t)
    }

    fn pairs_guard(&self, a: usize, b: usize) -> Result<()> {
        let pairs = a.saturating_mul(b);
        if pairs > self.caps.pairs {
            return Err(Error::CapExceeded {
                what: "coalescing support pairs",
                size: pairs,
                cap: self.caps.pairs,
                hint: "use a smaller configuration",
            });
        }
        Ok(())
    }

    /// Union convolution; index 0 stands for the empty configuration and is
    /// only used inside the ⊎-quantifier.
    fn convolve(&self, a: &[Value], b: &[Value], include_empty: bool) -> Result<Vec<Value>> {
        let start = usize::from(!include_empty);
        let la: Vec<usize> = (start..self.size).filter(|&m| !a[m].is_zero()).collect();
        let lb: Vec<usize> = (1..self.size).filter(|&m| !b[m].is_zero()).collect();
        self.pairs_guard(la.len(), lb.len())?;
        let mut out = vec![self.sr.zero(); self.size];
        for &x in &la {
            for &y in &lb {
                out[x | y] = out[x | y].add(a[x].mul(b[y]));
            }
        }
        Ok(out)
    }

    fn weight(&self, z: &WFocl, env: &mut Env) -> Result<Vec<Value>> {
        let sr = self.sr;
        let size = self.size;
        let mut t = match z {
            WFocl::Const(k) => vec![*k; size],
            WFocl::Bool(f) => self.sat(f, env)?.into_iter().map(|b| sr.indicator(b)).collect(),
            WFocl::Plus(l, r) => {
                let a = self.weight(l, env)?;
                let b = self.weight(r, env)?;
                a.into_iter().zip(b).map(|(x, y)| x.add(y)).collect()
            }
            WFocl::Times(l, r) => {
                let a = self.weight(l, env)?;
                let b = self.weight(r, env)?;
                a.into_iter().zip(b).map(|(x, y)| x.mul(y)).collect()
            }
            WFocl::Coalesce(l, r) => {
                let mut a = self.weight(l, env)?;
                let b = self.weight(r, env)?;
                a[0] = sr.zero();
                self.convolve(&a, &b, false)?
            }
            WFocl::Closure(y) => {
                let mut a = self.weight(y, env)?;
                a[0] = sr.zero();
                superset_sums(&mut a);
                a
            }
            WFocl::OplusQ(b, y) | WFocl::OtimesQ(b, y) => {
                let is_sum = matches!(z, WFocl::OplusQ(..));
                let mut acc = vec![if is_sum { sr.zero() } else { sr.one() }; size];
                for c in matches(self.model, env, b)? {
                    env.push((b.var.clone(), c));
                    let t = self.weight(y, env);
                    env.pop();
                    for (x, v) in acc.iter_mut().zip(t?) {
                        *x = if is_sum { x.add(v) } else { x.mul(v) };
                    }
                }
                acc
            }
            WFocl::OuplusQ(b, y) => {
                // dp[m]: ⊕ over families of nonempty parts for the components
                // seen so far whose union is m.
                let mut dp = vec![sr.zero(); size];
                dp[0] = sr.one();
                for c in matches(self.model, env, b)? {
                    env.push((b.var.clone(), c));
                    let t = self.weight(y, env);
                    env.pop();
                    dp = self.convolve(&dp, &t?, true)?;
                }
                dp
            }
            WFocl::When(p, y) => {
                if pred_holds(self.model, env, p)? {
                    self.weight(y, env)?
                } else {
                    vec![sr.one(); size]
                }
            }
        };
        t[0] = sr.zero();
        Ok(t)
    }
}

fn encode(model: &Model, gamma: &NamedConfiguration) -> Option<Configuration> {
    model.universe.encode(gamma).ok()
}

fn tables<'a>(model: &'a Model, masks: &'a [u64], sr: SemiringId, caps: &'a Caps) -> Result<Tables<'a>> {
    if masks.len() > caps.direct_gamma {
        return Err(Error::CapExceeded {
            what: "first-order evaluation",
            size: masks.len(),
            cap: caps.direct_gamma,
            hint: "use a smaller configuration",
        });
    }
    Ok(Tables {
        model,
        inters: masks,
        size: 1usize << masks.len(),
        sr,
        caps,
    })
}

/// (B, γ) ⊨ F, for γ already encoded over P_B.
pub fn focl_satisfies_encoded(model: &Model, gamma: &Configuration, f: &Focl, caps: &Caps) -> Result<bool> {
    let masks: Vec<u64> = gamma.iter().map(|a| a.mask()).collect();
    let t = tables(model, &masks, SemiringId::Boolean, caps)?;
    Ok(t.sat(f, &mut Env::new())?[low_bits(masks.len()) as usize])
}

/// (B, γ) ⊨ F. A γ outside C(P_B) satisfies nothing.
pub fn focl_satisfies(model: &Model, gamma: &NamedConfiguration, f: &Focl) -> Result<bool> {
    match encode(model, gamma) {
        Some(g) => focl_satisfies_encoded(model, &g, f, &Caps::default()),
        None => Ok(false),
    }
}

/// ‖Z‖(B, γ), for γ already encoded over P_B.
pub fn wfocl_eval_encoded(z: &WFocl, model: &Model, gamma: &Configuration, sr: SemiringId, caps: &Caps) -> Result<Value> {
    z.check(sr)?;
    let masks: Vec<u64> = gamma.iter().map(|a| a.mask()).collect();
    let t = tables(model, &masks, sr, caps)?;
    Ok(t.weight(z, &mut Env::new())?[low_bits(masks.len()) as usize])
}

/// ‖Z‖(B, γ); zero when γ ∉ C(P_B).
pub fn wfocl_eval(z: &WFocl, model: &Model, gamma: &NamedConfiguration, sr: SemiringId) -> Result<Value> {
    z.check(sr)?;
    match encode(model, gamma) {
        Some(g) => wfocl_eval_encoded(z, model, &g, sr, &Caps::default()),
        None => Ok(sr.zero()),
    }
}
