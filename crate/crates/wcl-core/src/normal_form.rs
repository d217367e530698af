//! Full monomials and full normal forms.
//!
//! A sum of full monomials m_{a₁} + … + m_{aₖ} is satisfied by exactly one
//! configuration, {a₁, …, aₖ}. A full normal form is therefore stored as a
//! map from configurations to nonzero coefficients: the term γ̄ ↦ k stands
//! for k ⊗ ∑_{a∈γ̄} m_a. Two formulas are equivalent iff their maps agree.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::eval::superset_sums;
use crate::interaction::{bits, enumerate_interactions, low_bits, Configuration, Interaction};
use crate::pcl::{sat_table, Pcl, WPcl};
use crate::pil::{characteristic_monomial, Pil};
use crate::semiring::{SemiringId, Value};

/// A conjunction mentioning every port of P, positively or negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullMonomial {
    ports: usize,
    positives: u64,
}

impl FullMonomial {
    /// `None` if P₊ is empty or mentions ports outside P.
    pub fn new(ports: usize, positives: u64) -> Option<Self> {
        (positives != 0 && positives & !low_bits(ports) == 0).then_some(FullMonomial { ports, positives })
    }

    pub fn from_interaction(a: Interaction, ports: usize) -> Option<Self> {
        Self::new(ports, a.mask())
    }

    pub fn positives(&self) -> u64 {
        self.positives
    }

    pub fn negatives(&self) -> u64 {
        low_bits(self.ports) & !self.positives
    }

    /// The unique interaction satisfying this monomial.
    pub fn interaction(&self) -> Interaction {
        Interaction::new(self.positives).expect("positives are nonempty")
    }

    pub fn to_pil(&self) -> Pil<usize> {
        characteristic_monomial(self.interaction(), self.ports)
    }
}

/// γ̄ ↦ {m_a : a ∈ γ̄}.
pub fn config_to_monomials(gamma: &Configuration, ports: usize) -> Result<Vec<FullMonomial>> {
    gamma
        .iter()
        .map(|a| {
            FullMonomial::from_interaction(a, ports)
                .ok_or_else(|| Error::UnknownPort(alloc::format!("#{}", 63 - a.mask().leading_zeros())))
        })
        .collect()
}

/// Inverse of [`config_to_monomials`].
pub fn monomials_to_config(monomials: &[FullMonomial]) -> Result<Configuration> {
    Configuration::new(monomials.iter().map(FullMonomial::interaction))
}

/// ⊕ᵢ (kᵢ ⊗ ∑ⱼ m_{i,j}) in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct FullNormalForm {
    semiring: SemiringId,
    ports: usize,
    terms: BTreeMap<Configuration, Value>,
}

impl FullNormalForm {
    pub fn semiring(&self) -> SemiringId {
        self.semiring
    }

    pub fn ports(&self) -> usize {
        self.ports
    }

    /// Terms in canonical key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Configuration, &Value)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Structural check: keys are valid, pairwise distinct monomial sets
    /// with pairwise distinct monomials, and no coefficient is zero.
    pub fn check_statements(&self) -> bool {
        let mut prev: Option<&Configuration> = None;
        for (key, k) in &self.terms {
            if k.is_zero() || k.semiring() != self.semiring {
                return false;
            }
            let Ok(ms) = config_to_monomials(key, self.ports) else {
                return false;
            };
            // Statement (i): no two equivalent (= equal) full monomials in a term.
            if ms.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            // Statement (ii): distinct terms carry distinct monomial sets.
            if prev.is_some_and(|p| p >= key) {
                return false;
            }
            prev = Some(key);
        }
        true
    }

    /// Term-by-term comparison within `tol`.
    pub fn approx_eq(&self, other: &FullNormalForm, tol: f64) -> bool {
        self.semiring == other.semiring
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((g1, k1), (g2, k2))| g1 == g2 && k1.approx_eq(k2, tol))
    }
}

fn check_ports(ports: usize, caps: &Caps) -> Result<Vec<Interaction>> {
    let cap = caps.fnf_ports.min(5);
    if ports > cap || ports == 0 {
        return Err(Error::UniverseTooLarge {
            what: "full normal form",
            ports,
            cap,
        });
    }
    enumerate_interactions(ports)
}

/// Nonzero coefficients keyed by masks over the positions of I(P).
type Terms = BTreeMap<u64, Value>;

struct Builder<'a> {
    all: Vec<Interaction>,
    sr: SemiringId,
    caps: &'a Caps,
}

impl Builder<'_> {
    fn full(&self) -> u64 {
        low_bits(self.all.len())
    }

    fn constant(&self, k: Value) -> Terms {
        if k.is_zero() {
            return Terms::new();
        }
        (1..=self.full()).map(|m| (m, k)).collect()
    }

    fn boolean(&self, f: &Pcl) -> Result<Terms> {
        let one = self.sr.one();
        Ok(sat_table(f, &self.all, self.caps)?
            .into_iter()
            .enumerate()
            .filter(|&(m, b)| m > 0 && b)
            .map(|(m, _)| (m as u64, one))
            .collect())
    }

    fn build(&self, z: &WPcl) -> Result<Terms> {
        let sr = self.sr;
        Ok(match z {
            WPcl::Const(k) => self.constant(*k),
            WPcl::Bool(f) => self.boolean(f)?,
            WPcl::Plus(l, r) => {
                let mut a = self.build(l)?;
                for (m, v) in self.build(r)? {
                    let e = a.entry(m).or_insert(sr.zero());
                    *e = e.add(v);
                }
                a.retain(|_, v| !v.is_zero());
                a
            }
            WPcl::Times(l, r) => {
                // Equal monomial sums multiply, distinct ones annihilate.
                let scale = |k: Value, mut t: Terms| {
                    for v in t.values_mut() {
                        *v = v.mul(k);
                    }
                    t.retain(|_, v| !v.is_zero());
                    t
                };
                match (l.as_ref(), r.as_ref()) {
                    (WPcl::Const(k), other) | (other, WPcl::Const(k)) => scale(*k, self.build(other)?),
                    _ => {
                        let a = self.build(l)?;
                        let b = self.build(r)?;
                        a.into_iter()
                            .filter_map(|(m, v)| b.get(&m).map(|w| (m, v.mul(*w))))
                            .filter(|(_, v)| !v.is_zero())
                            .collect()
                    }
                }
            }
            WPcl::Coalesce(l, r) => {
                let a = self.build(l)?;
                let b = self.build(r)?;
                let pairs = a.len().saturating_mul(b.len());
                if pairs > self.caps.pairs {
                    return Err(Error::CapExceeded {
                        what: "normal form coalescing pairs",
                        size: pairs,
                        cap: self.caps.pairs,
                        hint: "use fewer ports or raise the pair cap",
                    });
                }
                let mut out = Terms::new();
                for (&m1, &v1) in &a {
                    for (&m2, &v2) in &b {
                        let e = out.entry(m1 | m2).or_insert(sr.zero());
                        *e = e.add(v1.mul(v2));
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            }
            WPcl::Closure(y) => {
                let a = self.build(y)?;
                let mut t = vec![sr.zero(); 1usize << self.all.len()];
                for (m, v) in a {
                    t[m as usize] = v;
                }
                superset_sums(&mut t);
                t.into_iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(m, v)| (m as u64, v))
                    .collect()
            }
        })
    }

    fn finish(&self, terms: Terms, ports: usize) -> FullNormalForm {
        let terms = terms
            .into_iter()
            .map(|(m, v)| (Configuration::new(bits(m).map(|i| self.all[i])).unwrap(), v))
            .collect();
        FullNormalForm {
            semiring: self.sr,
            ports,
            terms,
        }
    }
}

/// Full normal form of an unweighted formula: coefficient 1 on every model.
pub fn fnf_of_pcl(f: &Pcl, ports: usize, sr: SemiringId, caps: &Caps) -> Result<FullNormalForm> {
    let all = check_ports(ports, caps)?;
    f.check_ports(ports)?;
    let b = Builder { all, sr, caps };
    let terms = b.boolean(f)?;
    Ok(b.finish(terms, ports))
}

/// Full normal form of a weighted formula, by structural induction.
pub fn fnf_of_wpcl(zeta: &WPcl, ports: usize, sr: SemiringId, caps: &Caps) -> Result<FullNormalForm> {
    let all = check_ports(ports, caps)?;
    zeta.check(sr)?;
    zeta.check_ports(ports)?;
    let b = Builder { all, sr, caps };
    let terms = b.build(zeta)?;
    Ok(b.finish(terms, ports))
}

/// The coefficient at γ, or zero.
pub fn fnf_eval(fnf: &FullNormalForm, gamma: &Configuration) -> Value {
    fnf.terms.get(gamma).copied().unwrap_or(fnf.semiring.zero())
}

/// ⊕ over terms of k ⊗ (m₁ + … + mₖ); the empty form becomes the constant 0.
pub fn fnf_to_formula(fnf: &FullNormalForm) -> WPcl {
    fnf.terms
        .iter()
        .map(|(gamma, k)| {
            let sum = gamma
                .iter()
                .map(|a| Pcl::inter(characteristic_monomial(a, fnf.ports)))
                .reduce(Pcl::coalesce)
                .expect("configurations are nonempty");
            WPcl::Const(*k).times(WPcl::Bool(sum))
        })
        .reduce(WPcl::plus)
        .unwrap_or(WPcl::Const(fnf.semiring.zero()))
}

/// Equivalence by comparing canonical full normal forms.
pub fn fnf_equiv(z1: &WPcl, z2: &WPcl, ports: usize, sr: SemiringId, tol: f64, caps: &Caps) -> Result<bool> {
    let a = fnf_of_wpcl(z1, ports, sr, caps)?;
    let b = fnf_of_wpcl(z2, ports, sr, caps)?;
    Ok(a.approx_eq(&b, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::wpcl_eval;
    use crate::interaction::{enumerate_configurations, PortUniverse};
    use SemiringId::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn true_has_all_configurations() {
        let fnf = fnf_of_pcl(&Pcl::True, 2, Natural, &caps()).unwrap();
        assert_eq!(fnf.len(), 7);
        assert!(fnf.terms().all(|(_, k)| *k == Value::Nat(1)));
        assert!(fnf.check_statements());
    }

    #[test]
    fn unsatisfiable_gives_empty_form() {
        let fnf = fnf_of_pcl(&Pcl::falsity(), 2, Natural, &caps()).unwrap();
        assert!(fnf.is_empty());
        let z = fnf_of_wpcl(&WPcl::Const(MinPlus.zero()), 1, MinPlus, &caps()).unwrap();
        assert!(z.is_empty());
        assert_eq!(fnf_to_formula(&z), WPcl::Const(MinPlus.zero()));
    }

    #[test]
    fn interaction_formula_models() {
        let u = PortUniverse::from_names(&["p", "q"]).unwrap();
        let fnf = fnf_of_pcl(&Pcl::inter(Pil::atom(0)), 2, Boolean, &caps()).unwrap();
        let keys: Vec<_> = fnf.terms().map(|(g, _)| u.fmt_configuration(g)).collect();
        assert_eq!(keys, ["{{p}}", "{{p}, {p, q}}", "{{p, q}}"]);
    }

    #[test]
    fn monomial_round_trip() {
        for g in enumerate_configurations(3, 4).unwrap() {
            let ms = config_to_monomials(&g, 3).unwrap();
            assert_eq!(monomials_to_config(&ms).unwrap(), g);
        }
        let g = Configuration::from_masks([0b01]).unwrap();
        let ms = config_to_monomials(&g, 2).unwrap();
        assert_eq!(ms[0].positives(), 0b01);
        assert_eq!(ms[0].negatives(), 0b10);
        assert_eq!(ms[0].to_pil(), Pil::atom(0).and(Pil::atom(1).negate()));
    }

    #[test]
    fn evaluation_agrees_with_semantics() {
        let p = || WPcl::Bool(Pcl::inter(Pil::atom(0)));
        let q = || WPcl::Bool(Pcl::inter(Pil::atom(1)));
        let nat = |k| WPcl::Const(Value::Nat(k));
        let zs = [
            nat(2).times(p()).coalesce(nat(3).times(q())),
            p().plus(nat(1)).closure(),
            p().coalesce(q()).plus(q().times(nat(4))),
            nat(2).coalesce(p()),
        ];
        for z in zs {
            let fnf = fnf_of_wpcl(&z, 2, Natural, &caps()).unwrap();
            assert!(fnf.check_statements());
            for g in enumerate_configurations(2, 4).unwrap() {
                assert_eq!(fnf_eval(&fnf, &g), wpcl_eval(&z, &g, Natural).unwrap());
            }
            let back = fnf_of_wpcl(&fnf_to_formula(&fnf), 2, Natural, &caps()).unwrap();
            assert_eq!(back, fnf);
        }
    }

    #[test]
    fn distinct_monomial_sums_annihilate() {
        let all = enumerate_configurations(2, 4).unwrap();
        let indicator = |g: &Configuration| {
            fnf_to_formula(&FullNormalForm {
                semiring: Natural,
                ports: 2,
                terms: [(g.clone(), Value::Nat(1))].into_iter().collect(),
            })
        };
        for g1 in &all {
            for g2 in &all {
                let prod = indicator(g1).times(indicator(g2));
                let fnf = fnf_of_wpcl(&prod, 2, Natural, &caps()).unwrap();
                if g1 == g2 {
                    assert_eq!(fnf.len(), 1);
                } else {
                    assert!(fnf.is_empty());
                }
            }
        }
    }

    #[test]
    fn zero_sum_and_non_equivalence() {
        let k = WPcl::Const(Value::Nat(3));
        let k0 = k.clone().plus(WPcl::Const(Value::Nat(0)));
        assert!(fnf_equiv(&k, &k0, 2, Natural, 0.0, &caps()).unwrap());
        let two = WPcl::Const(Value::Nat(2));
        assert!(!fnf_equiv(&k, &two, 2, Natural, 0.0, &caps()).unwrap());
    }

    #[test]
    fn port_cap() {
        assert!(matches!(
            fnf_of_wpcl(&WPcl::Const(Value::Nat(1)), 5, Natural, &caps()),
            Err(Error::UniverseTooLarge { .. })
        ));
    }
}
