//! Seeded random values, formulas, models and configurations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wcl_core::focl::{Binder, Component, ComponentType, Focl, Model, PortRef, Predicate, Term, WFocl, UNIVERSAL_TYPE};
use wcl_core::interaction::Configuration;
use wcl_core::pcl::{Pcl, WPcl};
use wcl_core::pil::Pil;
use wcl_core::semiring::{SemiringId, Value};

/// A bound variable and its type.
pub type Scope = Vec<(String, String)>;

pub struct Gen {
    rng: ChaCha8Rng,
    fresh: usize,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            fresh: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }

    /// Small values; real semirings use multiples of 1/8 so products stay exact.
    pub fn value(&mut self, sr: SemiringId) -> Value {
        match sr {
            SemiringId::Natural => Value::Nat(self.rng.gen_range(0..=3)),
            SemiringId::Boolean => Value::Bool(self.rng.gen()),
            SemiringId::MinPlus | SemiringId::MaxPlus => {
                if self.chance(1, 10) {
                    sr.zero()
                } else {
                    sr.value(self.rng.gen_range(0..=9) as f64).expect("in carrier")
                }
            }
            SemiringId::Viterbi | SemiringId::Fuzzy => sr.value(self.rng.gen_range(0..=8) as f64 / 8.0).expect("in carrier"),
        }
    }

    pub fn pil(&mut self, ports: usize, depth: usize) -> Pil<usize> {
        self.pil_with(depth, &mut |g| Pil::atom(g.rng.gen_range(0..ports)))
    }

    fn pil_with<A>(&mut self, depth: usize, atom: &mut dyn FnMut(&mut Gen) -> Pil<A>) -> Pil<A> {
        if depth == 0 || self.chance(1, 3) {
            return if self.chance(1, 12) { Pil::truth() } else { atom(self) };
        }
        match self.rng.gen_range(0..3) {
            0 => self.pil_with(depth - 1, atom).negate(),
            1 => self.pil_with(depth - 1, atom).and(self.pil_with(depth - 1, atom)),
            _ => self.pil_with(depth - 1, atom).or(self.pil_with(depth - 1, atom)),
        }
    }

    pub fn pcl(&mut self, ports: usize, depth: usize) -> Pcl {
        if depth == 0 || self.chance(1, 4) {
            return if self.chance(1, 10) { Pcl::True } else { Pcl::inter(self.pil(ports, 2)) };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..8) {
            0 => self.pcl(ports, d).not(),
            1 => self.pcl(ports, d).union(self.pcl(ports, d)),
            2 | 3 => self.pcl(ports, d).coalesce(self.pcl(ports, d)),
            4 => self.pcl(ports, d).meet(self.pcl(ports, d)),
            5 => self.pcl(ports, d).implies(self.pcl(ports, d)),
            6 => self.pcl(ports, d).closure(),
            _ => self.pcl(ports, d).disj(self.pcl(ports, d)),
        }
    }

    pub fn wpcl(&mut self, ports: usize, sr: SemiringId, depth: usize) -> WPcl {
        if depth == 0 || self.chance(1, 4) {
            return if self.chance(1, 2) {
                WPcl::Const(self.value(sr))
            } else {
                WPcl::Bool(self.pcl(ports, 1))
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..9) {
            0 | 1 => self.wpcl(ports, sr, d).plus(self.wpcl(ports, sr, d)),
            2 | 3 => self.wpcl(ports, sr, d).times(self.wpcl(ports, sr, d)),
            4 | 5 => self.wpcl(ports, sr, d).coalesce(self.wpcl(ports, sr, d)),
            6 => self.wpcl(ports, sr, d).closure(),
            7 => WPcl::guard(self.pcl(ports, 1), self.wpcl(ports, sr, d)),
            _ => self.wpcl(ports, sr, d).wdisj(self.wpcl(ports, sr, d)),
        }
    }

    /// A configuration of 1..=`max_len` distinct interactions over `ports` ports.
    pub fn configuration(&mut self, ports: usize, max_len: usize) -> Configuration {
        let space = (1u64 << ports) - 1;
        let len = self.rng.gen_range(1..=max_len.min(space as usize).max(1));
        let mut masks: Vec<u64> = (1..=space).collect();
        masks.shuffle(&mut self.rng);
        masks.truncate(len);
        Configuration::from_masks(masks).expect("nonempty masks")
    }

    /// Types `T1`, `T2` with ports drawn from `p`, `q`, and 1..=`max_components`
    /// components `c1`, `c2`, ...
    pub fn model(&mut self, max_components: usize) -> Model {
        let mut types = Vec::new();
        for t in ["T1", "T2"] {
            let ports: Vec<&str> = match self.rng.gen_range(0..3) {
                0 => vec!["p"],
                1 => vec!["q"],
                _ => vec!["p", "q"],
            };
            types.push(ComponentType::new(t, ports));
        }
        let n = self.rng.gen_range(1..=max_components);
        let comps = (1..=n)
            .map(|i| Component::new(format!("c{i}"), if self.chance(1, 2) { "T1" } else { "T2" }))
            .collect();
        Model::new(types, comps).expect("valid model")
    }

    pub fn fresh_var(&mut self) -> String {
        self.fresh += 1;
        format!("x{}", self.fresh)
    }

    fn ports_of(model: &Model, ctype: &str) -> Vec<String> {
        if ctype == UNIVERSAL_TYPE {
            return vec!["p".into(), "q".into()];
        }
        model
            .types()
            .iter()
            .find(|t| t.name == ctype)
            .map(|t| t.ports.clone())
            .unwrap_or_default()
    }

    fn port_ref(&mut self, model: &Model, scope: &Scope) -> PortRef {
        let comps = model.components();
        let pick_var = !scope.is_empty() && (comps.is_empty() || self.chance(2, 3));
        if pick_var {
            let (v, t) = scope.choose(&mut self.rng).expect("nonempty").clone();
            let ports = Self::ports_of(model, &t);
            PortRef::var(v, ports.choose(&mut self.rng).expect("typed ports").clone())
        } else {
            let c = comps.choose(&mut self.rng).expect("nonempty model");
            let ports = Self::ports_of(model, &c.ctype);
            PortRef::comp(c.name.clone(), ports.choose(&mut self.rng).expect("typed ports").clone())
        }
    }

    /// A binder over a random type, sometimes constrained to differ from an
    /// earlier variable or a component.
    pub fn binder(&mut self, model: &Model, scope: &Scope) -> Binder {
        let mut types: Vec<String> = model.types().iter().map(|t| t.name.clone()).collect();
        types.push(UNIVERSAL_TYPE.into());
        let ctype = types.choose(&mut self.rng).expect("types").clone();
        let b = Binder::new(self.fresh_var(), ctype);
        if !self.chance(1, 3) {
            return b;
        }
        let other = if !scope.is_empty() && self.chance(1, 2) {
            Term::Var(scope.choose(&mut self.rng).expect("nonempty").0.clone())
        } else {
            Term::Comp(model.components().choose(&mut self.rng).expect("nonempty model").name.clone())
        };
        let mine = Term::Var(b.var.clone());
        let pred = if self.chance(3, 4) {
            Predicate::Neq(mine, other)
        } else {
            Predicate::Eq(mine, other)
        };
        b.with_pred(pred)
    }

    pub fn focl(&mut self, model: &Model, depth: usize) -> Focl {
        self.focl_in(model, &Vec::new(), depth)
    }

    /// A formula whose free variables are among `scope`.
    pub fn focl_in(&mut self, model: &Model, scope: &Scope, depth: usize) -> Focl {
        if depth == 0 || self.chance(1, 4) {
            if self.chance(1, 12) {
                return Focl::True;
            }
            let phi = self.pil_with(2, &mut |g| Pil::atom(g.port_ref(model, scope)));
            return Focl::inter(phi);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..9) {
            0 => self.focl_in(model, scope, d).not(),
            1 => self.focl_in(model, scope, d).union(self.focl_in(model, scope, d)),
            2 => self.focl_in(model, scope, d).coalesce(self.focl_in(model, scope, d)),
            3 => self.focl_in(model, scope, d).meet(self.focl_in(model, scope, d)),
            4 => self.focl_in(model, scope, d).closure(),
            q => {
                let b = self.binder(model, scope);
                let mut inner = scope.clone();
                inner.push((b.var.clone(), b.ctype.clone()));
                let body = self.focl_in(model, &inner, d);
                match q {
                    5 | 6 => Focl::exists(b, body),
                    7 => Focl::sum(b, body),
                    _ => Focl::forall(b, body),
                }
            }
        }
    }

    pub fn wfocl(&mut self, model: &Model, sr: SemiringId, depth: usize) -> WFocl {
        self.wfocl_in(model, &Vec::new(), sr, depth)
    }

    pub fn wfocl_in(&mut self, model: &Model, scope: &Scope, sr: SemiringId, depth: usize) -> WFocl {
        if depth == 0 || self.chance(1, 4) {
            return if self.chance(1, 2) {
                WFocl::Const(self.value(sr))
            } else {
                WFocl::Bool(self.focl_in(model, scope, 1))
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0 => self.wfocl_in(model, scope, sr, d).plus(self.wfocl_in(model, scope, sr, d)),
            1 => self.wfocl_in(model, scope, sr, d).times(self.wfocl_in(model, scope, sr, d)),
            2 => self.wfocl_in(model, scope, sr, d).coalesce(self.wfocl_in(model, scope, sr, d)),
            3 => self.wfocl_in(model, scope, sr, d).closure(),
            4 if !scope.is_empty() => {
                let b = self.binder(model, scope);
                // Reuse the binder's predicate with the fresh variable swapped
                // for one already in scope.
                let v = scope.choose(&mut self.rng).expect("nonempty").0.clone();
                let pred = match b.pred {
                    Predicate::True => Predicate::True,
                    p => rebind(p, &b.var, &v),
                };
                WFocl::when(pred, self.wfocl_in(model, scope, sr, d))
            }
            q => {
                let b = self.binder(model, scope);
                let mut inner = scope.clone();
                inner.push((b.var.clone(), b.ctype.clone()));
                let body = self.wfocl_in(model, &inner, sr, d);
                match q % 3 {
                    0 => WFocl::oplus(b, body),
                    1 => WFocl::otimes(b, body),
                    _ => WFocl::ouplus(b, body),
                }
            }
        }
    }
}

fn rebind(p: Predicate, from: &str, to: &str) -> Predicate {
    let t = |t: Term| match t {
        Term::Var(v) if v == from => Term::Var(to.to_string()),
        t => t,
    };
    match p {
        Predicate::True => Predicate::True,
        Predicate::Eq(a, b) => Predicate::Eq(t(a), t(b)),
        Predicate::Neq(a, b) => Predicate::Neq(t(a), t(b)),
        Predicate::And(a, b) => rebind(*a, from, to).and(rebind(*b, from, to)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wcl_core::focl::{focl_satisfies_encoded, wfocl_eval_encoded};
    use wcl_core::Caps;

    #[test]
    fn deterministic_per_seed() {
        let a: Vec<WPcl> = (0..5).map({
            let mut g = Gen::new(3);
            move |_| g.wpcl(3, SemiringId::Natural, 3)
        }).collect();
        let b: Vec<WPcl> = (0..5).map({
            let mut g = Gen::new(3);
            move |_| g.wpcl(3, SemiringId::Natural, 3)
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn values_lie_in_carrier() {
        let mut g = Gen::new(1);
        for sr in SemiringId::ALL {
            for _ in 0..50 {
                let v = g.value(sr);
                assert_eq!(v.semiring(), sr);
                WPcl::Const(v).check(sr).unwrap();
            }
        }
    }

    #[test]
    fn generated_first_order_formulas_evaluate() {
        let mut g = Gen::new(9);
        for _ in 0..50 {
            let m = g.model(3);
            let gamma = g.configuration(m.universe().len(), 3);
            let f = g.focl(&m, 3);
            focl_satisfies_encoded(&m, &gamma, &f, &Caps::default()).unwrap();
            let z = g.wfocl(&m, SemiringId::Viterbi, 3);
            wfocl_eval_encoded(&z, &m, &gamma, SemiringId::Viterbi, &Caps::default()).unwrap();
        }
    }
}
