//! Propositional interaction logic and its weighted version.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interaction::Interaction;
use crate::semiring::{SemiringId, Value};

/// A PIL formula over atoms of type `A`.
///
/// Port indices (`usize`) are used by the propositional logics; FOCL uses
/// port references that may mention component variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pil<A> {
    True,
    Atom(A),
    Not(Box<Pil<A>>),
    Or(Box<Pil<A>>, Box<Pil<A>>),
}

impl<A> Pil<A> {
    pub fn truth() -> Self {
        Pil::True
    }

    pub fn falsity() -> Self {
        Pil::Not(Box::new(Pil::True))
    }

    pub fn atom(a: A) -> Self {
        Pil::Atom(a)
    }

    /// Negation with φ̄̄ = φ applied at construction.
    pub fn negate(self) -> Self {
        match self {
            Pil::Not(inner) => *inner,
            other => Pil::Not(Box::new(other)),
        }
    }

    pub fn or(self, other: Self) -> Self {
        Pil::Or(Box::new(self), Box::new(other))
    }

    /// φ ∧ ψ, encoded as the complement of φ̄ ∨ ψ̄.
    pub fn and(self, other: Self) -> Self {
        self.negate().or(other.negate()).negate()
    }

    /// Left-nested conjunction; `true` for no operands.
    pub fn and_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items.into_iter().reduce(Pil::and).unwrap_or(Pil::True)
    }

    /// Left-nested disjunction; `false` for no operands.
    pub fn or_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items.into_iter().reduce(Pil::or).unwrap_or_else(Pil::falsity)
    }

    /// Recognizes the encoding produced by [`Pil::and`]; returns the operands
    /// in their un-negated form.
    pub fn as_and(&self) -> Option<(Pil<A>, Pil<A>)>
    where
        A: Clone,
    {
        match self {
            Pil::Not(inner) => match inner.as_ref() {
                Pil::Or(l, r) => Some(((**l).clone().negate(), (**r).clone().negate())),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Pil::Not(inner) if matches!(**inner, Pil::True))
    }

    pub fn eval(&self, atom: &mut impl FnMut(&A) -> bool) -> bool {
        match self {
            Pil::True => true,
            Pil::Atom(a) => atom(a),
            Pil::Not(f) => !f.eval(atom),
            Pil::Or(l, r) => l.eval(atom) || r.eval(atom),
        }
    }

    pub fn try_map_atoms<B, E>(&self, f: &mut impl FnMut(&A) -> core::result::Result<B, E>) -> core::result::Result<Pil<B>, E> {
        Ok(match self {
            Pil::True => Pil::True,
            Pil::Atom(a) => Pil::Atom(f(a)?),
            Pil::Not(g) => Pil::Not(Box::new(g.try_map_atoms(f)?)),
            Pil::Or(l, r) => Pil::Or(Box::new(l.try_map_atoms(f)?), Box::new(r.try_map_atoms(f)?)),
        })
    }

    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> B) -> Pil<B> {
        let r: core::result::Result<Pil<B>, core::convert::Infallible> = self.try_map_atoms(&mut |a| Ok(f(a)));
        match r {
            Ok(p) => p,
            Err(e) => match e {},
        }
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a A>) {
        match self {
            Pil::True => {}
            Pil::Atom(a) => out.push(a),
            Pil::Not(f) => f.collect_atoms(out),
            Pil::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }
}

impl Pil<usize> {
    /// Truth under the valuation "p is true iff p ∈ a", given as a mask.
    pub fn holds(&self, mask: u64) -> bool {
        self.eval(&mut |&i| i < 64 && mask >> i & 1 == 1)
    }

    /// Fails if the formula mentions a port index outside `0..n_ports`.
    pub fn check_ports(&self, n_ports: usize) -> Result<()> {
        match self.atoms().into_iter().find(|&&i| i >= n_ports) {
            Some(i) => Err(Error::UnknownPort(alloc::format!("#{i}"))),
            None => Ok(()),
        }
    }
}

/// a ⊨ᵢ φ.
pub fn pil_satisfies(a: Interaction, phi: &Pil<usize>, n_ports: usize) -> Result<bool> {
    phi.check_ports(n_ports)?;
    if n_ports < 64 && a.mask() >> n_ports != 0 {
        return Err(Error::UnknownPort(alloc::format!("#{}", 63 - a.mask().leading_zeros())));
    }
    Ok(phi.holds(a.mask()))
}

/// The characteristic monomial of `a`: its ports positive, all others negated.
pub fn characteristic_monomial(a: Interaction, n_ports: usize) -> Pil<usize> {
    Pil::and_all((0..n_ports).map(|i| {
        if a.contains(i) {
            Pil::atom(i)
        } else {
            Pil::atom(i).negate()
        }
    }))
}

/// A weighted PIL formula.
#[derive(Clone, Debug, PartialEq)]
pub enum WPil {
    Const(Value),
    Bool(Pil<usize>),
    Plus(Box<WPil>, Box<WPil>),
    Times(Box<WPil>, Box<WPil>),
}

impl WPil {
    pub fn plus(self, other: WPil) -> WPil {
        WPil::Plus(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: WPil) -> WPil {
        WPil::Times(Box::new(self), Box::new(other))
    }

    fn check(&self, sr: SemiringId) -> Result<()> {
        match self {
            WPil::Const(k) if k.semiring() != sr => Err(Error::MixedSemiring {
                left: k.semiring(),
                right: sr,
            }),
            WPil::Const(_) | WPil::Bool(_) => Ok(()),
            WPil::Plus(l, r) | WPil::Times(l, r) => {
                l.check(sr)?;
                r.check(sr)
            }
        }
    }

    fn eval_unchecked(&self, mask: u64, sr: SemiringId) -> Value {
        match self {
            WPil::Const(k) => *k,
            WPil::Bool(phi) => sr.indicator(phi.holds(mask)),
            WPil::Plus(l, r) => l.eval_unchecked(mask, sr).add(r.eval_unchecked(mask, sr)),
            WPil::Times(l, r) => l.eval_unchecked(mask, sr).mul(r.eval_unchecked(mask, sr)),
        }
    }
}

/// ‖φ‖(a) over `sr`.
pub fn wpil_eval(varphi: &WPil, a: Interaction, sr: SemiringId) -> Result<Value> {
    varphi.check(sr)?;
    Ok(varphi.eval_unchecked(a.mask(), sr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::{enumerate_interactions, PortUniverse};

    fn u(names: &[&str]) -> PortUniverse {
        PortUniverse::from_names(names).unwrap()
    }

    #[test]
    fn double_negation_normalizes() {
        let p: Pil<usize> = Pil::atom(0);
        assert_eq!(p.clone().negate().negate(), p);
    }

    #[test]
    fn and_pattern_is_recognized() {
        let f = Pil::atom(0).and(Pil::atom(1).negate());
        let (l, r) = f.as_and().unwrap();
        assert_eq!(l, Pil::atom(0));
        assert_eq!(r, Pil::atom(1).negate());
    }

    #[test]
    fn master_slave_monomial() {
        let u = u(&["m1", "m2", "s1", "s2"]);
        let [m1, m2, s1, s2] = ["m1", "m2", "s1", "s2"].map(|n| u.index_of_name(n).unwrap());
        let phi = Pil::and_all([
            Pil::atom(s1),
            Pil::atom(m1),
            Pil::atom(s2).negate(),
            Pil::atom(m2).negate(),
        ]);
        let a = u.interaction(&["s1", "m1"]).unwrap();
        assert!(pil_satisfies(a, &phi, 4).unwrap());
        let b = u.interaction(&["s1", "m1", "m2"]).unwrap();
        assert!(!pil_satisfies(b, &phi, 4).unwrap());
    }

    #[test]
    fn false_and_disjunction() {
        let u = u(&["p", "q"]);
        for a in enumerate_interactions(2).unwrap() {
            assert!(!pil_satisfies(a, &Pil::falsity(), 2).unwrap());
        }
        let p_or_q = Pil::atom(0).or(Pil::atom(1));
        assert!(pil_satisfies(u.interaction(&["p"]).unwrap(), &p_or_q, 2).unwrap());
    }

    #[test]
    fn ports_outside_universe_are_rejected() {
        let a = Interaction::new(1).unwrap();
        assert!(pil_satisfies(a, &Pil::atom(3), 2).is_err());
        assert!(pil_satisfies(Interaction::new(0b100).unwrap(), &Pil::True, 2).is_err());
    }

    #[test]
    fn characteristic_monomials() {
        let u2 = u(&["p", "q"]);
        let a = u2.interaction(&["p"]).unwrap();
        let m = characteristic_monomial(a, 2);
        assert_eq!(m, Pil::atom(0).and(Pil::atom(1).negate()));
        let sats: Vec<_> = enumerate_interactions(2)
            .unwrap()
            .into_iter()
            .filter(|&b| m.holds(b.mask()))
            .collect();
        assert_eq!(sats, [a]);

        let single = Interaction::new(1).unwrap();
        assert_eq!(characteristic_monomial(single, 1), Pil::atom(0));

        for n in 1..=3 {
            let all = enumerate_interactions(n).unwrap();
            for &a in &all {
                let m = characteristic_monomial(a, n);
                for &b in &all {
                    assert_eq!(m.holds(b.mask()), a == b);
                }
            }
        }
    }

    #[test]
    fn weighted_pil() {
        let sr = SemiringId::Viterbi;
        let k = Value::Viterbi(0.7);
        let phi = Pil::atom(0).and(Pil::atom(1)).and(Pil::atom(2).negate());
        let w = WPil::Const(k).times(WPil::Bool(phi.clone()));
        assert_eq!(wpil_eval(&w, Interaction::new(0b011).unwrap(), sr).unwrap(), k);
        assert_eq!(wpil_eval(&w, Interaction::new(0b111).unwrap(), sr).unwrap(), sr.zero());

        let nat = SemiringId::Natural;
        let a = Interaction::new(1).unwrap();
        let or = WPil::Bool(Pil::atom(0).or(Pil::atom(0)));
        let plus = WPil::Bool(Pil::atom(0)).plus(WPil::Bool(Pil::atom(0)));
        assert_eq!(wpil_eval(&or, a, nat).unwrap(), Value::Nat(1));
        assert_eq!(wpil_eval(&plus, a, nat).unwrap(), Value::Nat(2));

        let two_p = WPil::Const(Value::Nat(2)).times(WPil::Bool(Pil::atom(0)));
        assert_eq!(wpil_eval(&two_p, Interaction::new(0b10).unwrap(), nat).unwrap(), Value::Nat(0));
        assert!(wpil_eval(&two_p, a, SemiringId::MinPlus).is_err());
    }
}
