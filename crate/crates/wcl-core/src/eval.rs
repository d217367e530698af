//! Weighted PCL evaluation.
//!
//! Two strategies compute ‖ζ‖(γ):
//!
//! * **direct** builds, for each subformula, a table over every
//!   sub-configuration of γ, literally enumerating decompositions for `⊎`
//!   and subsets for closure. Exponential in |γ| (4^|γ| for `⊎`).
//! * **sparse** keeps only the nonzero entries of each subformula's
//!   polynomial restricted to sub-configurations of γ, with constants kept
//!   symbolic. Formulas built from weighted monomials, like the travelling
//!   salesman encoding, stay tiny.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::interaction::{enumerate_configurations, enumerate_interactions, low_bits, nonempty_submasks, Configuration, Interaction};
use crate::pcl::{for_each_decomposition, sat_table, satisfying_positions, Pcl, WPcl};
use crate::semiring::{SemiringId, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Direct,
    Sparse,
    /// Sparse, falling back to direct when the sparse strategy hits a cap.
    #[default]
    Auto,
}

/// ‖ζ‖(γ) by the direct strategy with default caps.
pub fn wpcl_eval(zeta: &WPcl, gamma: &Configuration, sr: SemiringId) -> Result<Value> {
    evaluate(zeta, gamma, sr, Strategy::Direct, &Caps::default())
}

/// ‖ζ‖(γ) by the sparse strategy with default caps.
pub fn wpcl_eval_sparse(zeta: &WPcl, gamma: &Configuration, sr: SemiringId) -> Result<Value> {
    evaluate(zeta, gamma, sr, Strategy::Sparse, &Caps::default())
}

pub fn evaluate(zeta: &WPcl, gamma: &Configuration, sr: SemiringId, strategy: Strategy, caps: &Caps) -> Result<Value> {
    zeta.check(sr)?;
    let inters = gamma.interactions();
    match strategy {
        Strategy::Direct => {
            let t = direct_table(zeta, inters, sr, caps)?;
            Ok(t[low_bits(inters.len()) as usize])
        }
        Strategy::Sparse => SparseEval::new(inters, sr, caps)?.value_at_full(zeta),
        Strategy::Auto => match SparseEval::new(inters, sr, caps).and_then(|s| s.value_at_full(zeta)) {
            Err(Error::CapExceeded { .. }) if inters.len() <= caps.direct_gamma => {
                let t = direct_table(zeta, inters, sr, caps)?;
                Ok(t[low_bits(inters.len()) as usize])
            }
            other => other,
        },
    }
}

fn direct_table(z: &WPcl, inters: &[Interaction], sr: SemiringId, caps: &Caps) -> Result<Vec<Value>> {
    let n = inters.len();
    if n > caps.direct_gamma {
        return Err(Error::CapExceeded {
            what: "direct evaluation",
            size: n,
            cap: caps.direct_gamma,
            hint: "use the sparse evaluation strategy",
        });
    }
    let size = 1usize << n;
    let mut t = match z {
        WPcl::Const(k) => vec![*k; size],
        WPcl::Bool(f) => sat_table(f, inters, caps)?
            .into_iter()
            .map(|b| sr.indicator(b))
            .collect(),
        WPcl::Plus(l, r) => {
            let mut a = direct_table(l, inters, sr, caps)?;
            let b = direct_table(r, inters, sr, caps)?;
            for (x, y) in a.iter_mut().zip(b) {
                *x = x.add(y);
            }
            a
        }
        WPcl::Times(l, r) => {
            let mut a = direct_table(l, inters, sr, caps)?;
            let b = direct_table(r, inters, sr, caps)?;
            for (x, y) in a.iter_mut().zip(b) {
                *x = x.mul(y);
            }
            a
        }
        WPcl::Coalesce(l, r) => {
            let a = direct_table(l, inters, sr, caps)?;
            let b = direct_table(r, inters, sr, caps)?;
            let mut out = vec![sr.zero(); size];
            for (mask, slot) in out.iter_mut().enumerate().skip(1) {
                let mut acc = sr.zero();
                for_each_decomposition(mask as u64, |m1, m2| {
                    acc = acc.add(a[m1 as usize].mul(b[m2 as usize]));
                });
                *slot = acc;
            }
            out
        }
        WPcl::Closure(y) => {
            let a = direct_table(y, inters, sr, caps)?;
            let mut out = vec![sr.zero(); size];
            for (mask, slot) in out.iter_mut().enumerate().skip(1) {
                *slot = nonempty_submasks(mask as u64).fold(sr.zero(), |acc, s| acc.add(a[s as usize]));
            }
            out
        }
    };
    t[0] = sr.zero();
    Ok(t)
}

/// A polynomial restricted to the nonempty sub-configurations of γ, keyed
/// by position masks.
#[derive(Clone, Debug)]
enum SubPoly {
    /// The same value at every nonempty sub-configuration.
    Dense(Value),
    /// Nonzero entries only.
    Sparse(BTreeMap<u64, Value>),
}

struct SparseEval<'a> {
    inters: &'a [Interaction],
    n: usize,
    full: u64,
    sr: SemiringId,
    caps: &'a Caps,
}

impl<'a> SparseEval<'a> {
    fn new(inters: &'a [Interaction], sr: SemiringId, caps: &'a Caps) -> Result<Self> {
        if inters.len() > 63 {
            return Err(Error::CapExceeded {
                what: "configuration size",
                size: inters.len(),
                cap: 63,
                hint: "configurations are limited to 63 interactions",
            });
        }
        Ok(SparseEval {
            inters,
            n: inters.len(),
            full: low_bits(inters.len()),
            sr,
            caps,
        })
    }

    fn dense_guard(&self, what: &'static str) -> Result<()> {
        if self.n > self.caps.dense_gamma {
            Err(Error::CapExceeded {
                what,
                size: self.n,
                cap: self.caps.dense_gamma,
                hint: "the formula has dense support; use a smaller configuration",
            })
        } else {
            Ok(())
        }
    }

    fn materialize(&self, p: SubPoly) -> Result<BTreeMap<u64, Value>> {
        match p {
            SubPoly::Sparse(m) => Ok(m),
            SubPoly::Dense(k) if k.is_zero() => Ok(BTreeMap::new()),
            SubPoly::Dense(k) => {
                self.dense_guard("materializing a constant")?;
                Ok((1..=self.full).map(|m| (m, k)).collect())
            }
        }
    }

    fn poly(&self, z: &WPcl) -> Result<SubPoly> {
        let sr = self.sr;
        Ok(match z {
            WPcl::Const(k) => SubPoly::Dense(*k),
            WPcl::Bool(f) => self.bool_poly(f)?,
            WPcl::Plus(l, r) => match (self.poly(l)?, self.poly(r)?) {
                (SubPoly::Dense(a), SubPoly::Dense(b)) => SubPoly::Dense(a.add(b)),
                (a, b) => {
                    let mut x = self.materialize(a)?;
                    for (m, v) in self.materialize(b)? {
                        let e = x.entry(m).or_insert(sr.zero());
                        *e = e.add(v);
                    }
                    x.retain(|_, v| !v.is_zero());
                    SubPoly::Sparse(x)
                }
            },
            WPcl::Times(l, r) => match (self.poly(l)?, self.poly(r)?) {
                (SubPoly::Dense(a), SubPoly::Dense(b)) => SubPoly::Dense(a.mul(b)),
                (SubPoly::Dense(k), SubPoly::Sparse(mut x)) | (SubPoly::Sparse(mut x), SubPoly::Dense(k)) => {
                    for v in x.values_mut() {
                        *v = v.mul(k);
                    }
                    x.retain(|_, v| !v.is_zero());
                    SubPoly::Sparse(x)
                }
                (SubPoly::Sparse(x), SubPoly::Sparse(y)) => {
                    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
                    let out = small
                        .into_iter()
                        .filter_map(|(m, v)| large.get(&m).map(|w| (m, v.mul(*w))))
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    SubPoly::Sparse(out)
                }
            },
            WPcl::Coalesce(l, r) => {
                let a = self.materialize(self.poly(l)?)?;
                let b = self.materialize(self.poly(r)?)?;
                self.pair_guard(a.len(), b.len())?;
                let mut out: BTreeMap<u64, Value> = BTreeMap::new();
                for (&m1, &v1) in &a {
                    for (&m2, &v2) in &b {
                        let e = out.entry(m1 | m2).or_insert(sr.zero());
                        *e = e.add(v1.mul(v2));
                    }
                }
                out.retain(|_, v| !v.is_zero());
                SubPoly::Sparse(out)
            }
            WPcl::Closure(y) => match self.poly(y)? {
                SubPoly::Dense(k) if sr.is_idempotent() || k.is_zero() => SubPoly::Dense(k),
                SubPoly::Dense(k) => {
                    self.dense_guard("closure of a constant")?;
                    let out = (1..=self.full)
                        .map(|m| (m, k.repeat((1u64 << m.count_ones()) - 1)))
                        .collect();
                    SubPoly::Sparse(out)
                }
                SubPoly::Sparse(x) => {
                    self.dense_guard("closure")?;
                    let mut t = vec![sr.zero(); 1usize << self.n];
                    for (m, v) in x {
                        t[m as usize] = v;
                    }
                    superset_sums(&mut t);
                    let out = t
                        .into_iter()
                        .enumerate()
                        .skip(1)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(m, v)| (m as u64, v))
                        .collect();
                    SubPoly::Sparse(out)
                }
            },
        })
    }

    fn pair_guard(&self, a: usize, b: usize) -> Result<()> {
        let pairs = a.saturating_mul(b);
        if pairs > self.caps.pairs {
            Err(Error::CapExceeded {
                what: "coalescing support pairs",
                size: pairs,
                cap: self.caps.pairs,
                hint: "raise the pair cap or use a smaller configuration",
            })
        } else {
            Ok(())
        }
    }

    fn bool_poly(&self, f: &Pcl) -> Result<SubPoly> {
        let one = self.sr.one();
        match f {
            Pcl::True => Ok(SubPoly::Dense(one)),
            Pcl::Inter(phi) => {
                let s = satisfying_positions(phi, self.inters);
                if s == self.full {
                    return Ok(SubPoly::Dense(one));
                }
                if s.count_ones() as usize > self.caps.dense_gamma {
                    return Err(Error::CapExceeded {
                        what: "interaction formula support",
                        size: s.count_ones() as usize,
                        cap: self.caps.dense_gamma,
                        hint: "use a smaller configuration",
                    });
                }
                Ok(SubPoly::Sparse(nonempty_submasks(s).map(|m| (m, one)).collect()))
            }
            _ => {
                self.dense_guard("satisfaction table")?;
                let t = sat_table(f, self.inters, self.caps)?;
                if t.iter().skip(1).all(|&b| b) {
                    return Ok(SubPoly::Dense(one));
                }
                Ok(SubPoly::Sparse(
                    t.into_iter()
                        .enumerate()
                        .filter(|&(m, b)| m > 0 && b)
                        .map(|(m, _)| (m as u64, one))
                        .collect(),
                ))
            }
        }
    }

    fn lookup(&self, p: &SubPoly, m: u64) -> Value {
        match p {
            SubPoly::Dense(k) => *k,
            SubPoly::Sparse(x) => x.get(&m).copied().unwrap_or(self.sr.zero()),
        }
    }

    /// ‖ζ‖(γ) without building the polynomial of the root where avoidable.
    fn value_at_full(&self, z: &WPcl) -> Result<Value> {
        let sr = self.sr;
        let full = self.full;
        match z {
            WPcl::Const(k) => Ok(*k),
            WPcl::Bool(f) => match f {
                Pcl::Inter(phi) => Ok(sr.indicator(self.inters.iter().all(|a| phi.holds(a.mask())))),
                _ => Ok(self.lookup(&self.bool_poly(f)?, full)),
            },
            WPcl::Plus(l, r) => Ok(self.value_at_full(l)?.add(self.value_at_full(r)?)),
            WPcl::Times(l, r) => Ok(self.value_at_full(l)?.mul(self.value_at_full(r)?)),
            WPcl::Closure(y) => Ok(match self.poly(y)? {
                SubPoly::Dense(k) => k.repeat(full),
                SubPoly::Sparse(x) => x.values().fold(sr.zero(), |acc, v| acc.add(*v)),
            }),
            WPcl::Coalesce(l, r) => {
                let n = self.n as u32;
                match (self.poly(l)?, self.poly(r)?) {
                    (SubPoly::Dense(a), SubPoly::Dense(b)) => {
                        if n > 40 {
                            return Err(Error::CapExceeded {
                                what: "decomposition count",
                                size: self.n,
                                cap: 40,
                                hint: "use a smaller configuration",
                            });
                        }
                        Ok(a.mul(b).repeat(3u64.pow(n) - 2))
                    }
                    (SubPoly::Dense(k), SubPoly::Sparse(x)) | (SubPoly::Sparse(x), SubPoly::Dense(k)) => {
                        // Partners of m cover full \ m and may add any part of m.
                        let mut acc = sr.zero();
                        for (m, v) in x {
                            let mut count = 1u64 << m.count_ones();
                            if m == full {
                                count -= 1;
                            }
                            acc = acc.add(v.mul(k.repeat(count)));
                        }
                        Ok(acc)
                    }
                    (SubPoly::Sparse(a), SubPoly::Sparse(b)) => {
                        self.pair_guard(a.len(), b.len())?;
                        let mut acc = sr.zero();
                        for (&m1, &v1) in &a {
                            let need = full & !m1;
                            for (&m2, &v2) in &b {
                                if m2 & need == need {
                                    acc = acc.add(v1.mul(v2));
                                }
                            }
                        }
                        Ok(acc)
                    }
                }
            }
        }
    }
}

/// In-place sum over subsets: afterwards `t[m]` is the ⊕ of the old `t[s]`
/// over all `s ⊆ m`. Needs only a commutative monoid.
pub(crate) fn superset_sums(t: &mut [Value]) {
    let size = t.len();
    let mut bit = 1;
    while bit < size {
        for m in 0..size {
            if m & bit != 0 {
                t[m] = t[m].add(t[m ^ bit]);
            }
        }
        bit <<= 1;
    }
}

/// A polynomial over C(P): a default value plus the configurations where
/// the value differs from it. The default is zero for finite-support
/// polynomials and k for the constant series k̃.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    semiring: SemiringId,
    ports: usize,
    base: Value,
    entries: BTreeMap<Configuration, Value>,
}

impl Polynomial {
    pub fn zero(sr: SemiringId, ports: usize) -> Self {
        Self::constant(sr.zero(), ports)
    }

    pub fn constant(k: Value, ports: usize) -> Self {
        Polynomial {
            semiring: k.semiring(),
            ports,
            base: k,
            entries: BTreeMap::new(),
        }
    }

    pub fn semiring(&self) -> SemiringId {
        self.semiring
    }

    pub fn ports(&self) -> usize {
        self.ports
    }

    /// The value taken outside the listed entries.
    pub fn base(&self) -> Value {
        self.base
    }

    pub fn get(&self, gamma: &Configuration) -> Value {
        self.entries.get(gamma).copied().unwrap_or(self.base)
    }

    pub fn set(&mut self, gamma: Configuration, v: Value) {
        if v == self.base {
            self.entries.remove(&gamma);
        } else {
            self.entries.insert(gamma, v);
        }
    }

    /// Entries that differ from the base value, in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Configuration, &Value)> {
        self.entries.iter()
    }

    /// supp(s) for a finite-support polynomial; `None` when the base is nonzero.
    pub fn support(&self) -> Option<Vec<&Configuration>> {
        self.base.is_zero().then(|| self.entries.keys().collect())
    }

    fn combine(&self, other: &Polynomial, op: impl Fn(Value, Value) -> Value) -> Result<Polynomial> {
        if self.semiring != other.semiring {
            return Err(Error::MixedSemiring {
                left: self.semiring,
                right: other.semiring,
            });
        }
        let mut out = Polynomial::constant(op(self.base, other.base), self.ports.max(other.ports));
        for g in self.entries.keys().chain(other.entries.keys()) {
            out.set(g.clone(), op(self.get(g), other.get(g)));
        }
        Ok(out)
    }

    /// Pointwise ⊕.
    pub fn sum(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, Value::add)
    }

    /// Pointwise ⊗ (Hadamard product).
    pub fn hadamard(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, Value::mul)
    }
}

/// ‖ζ‖ as a polynomial over C(P), |P| = `ports`.
pub fn semantics(zeta: &WPcl, ports: usize, sr: SemiringId, caps: &Caps) -> Result<Polynomial> {
    if ports > caps.enum_ports {
        return Err(Error::UniverseTooLarge {
            what: "semantics over C(P)",
            ports,
            cap: caps.enum_ports,
        });
    }
    zeta.check(sr)?;
    zeta.check_ports(ports)?;
    let all = enumerate_interactions(ports)?;
    let select = |m: u64| Configuration::new(crate::interaction::bits(m).map(|i| all[i])).unwrap();
    let sparse = SparseEval::new(&all, sr, caps)?;
    match sparse.poly(zeta) {
        Ok(SubPoly::Dense(k)) => Ok(Polynomial::constant(k, ports)),
        Ok(SubPoly::Sparse(x)) => {
            let mut p = Polynomial::zero(sr, ports);
            for (m, v) in x {
                p.set(select(m), v);
            }
            Ok(p)
        }
        Err(Error::CapExceeded { .. }) if all.len() <= caps.direct_gamma => {
            let t = direct_table(zeta, &all, sr, caps)?;
            let mut p = Polynomial::zero(sr, ports);
            for (m, v) in t.into_iter().enumerate().skip(1) {
                p.set(select(m as u64), v);
            }
            Ok(p)
        }
        Err(e) => Err(e),
    }
}

/// A configuration on which two formulas differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub gamma: Configuration,
    pub left: Value,
    pub right: Value,
}

/// The first configuration in canonical order where ‖ζ₁‖ and ‖ζ₂‖ differ
/// beyond `tol`, or `None` when they are equivalent over C(P).
pub fn wpcl_counterexample(z1: &WPcl, z2: &WPcl, ports: usize, sr: SemiringId, tol: f64, caps: &Caps) -> Result<Option<Witness>> {
    let a = semantics(z1, ports, sr, caps).map_err(hint_fnf)?;
    let b = semantics(z2, ports, sr, caps).map_err(hint_fnf)?;
    for gamma in enumerate_configurations(ports, caps.enum_ports).map_err(hint_fnf)? {
        let (l, r) = (a.get(&gamma), b.get(&gamma));
        if !l.approx_eq(&r, tol) {
            return Ok(Some(Witness {
                gamma,
                left: l,
                right: r,
            }));
        }
    }
    Ok(None)
}

fn hint_fnf(e: Error) -> Error {
    match e {
        Error::UniverseTooLarge { ports, cap, .. } => Error::CapExceeded {
            what: "equivalence by enumeration",
            size: ports,
            cap,
            hint: "compare full normal forms instead",
        },
        other => other,
    }
}

/// ζ₁ ≡ ζ₂ over C(P).
pub fn wpcl_equiv(z1: &WPcl, z2: &WPcl, ports: usize, sr: SemiringId, tol: f64) -> Result<bool> {
    Ok(wpcl_counterexample(z1, z2, ports, sr, tol, &Caps::default())?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pil::Pil;
    use SemiringId::*;

    fn pq_and() -> WPcl {
        WPcl::Bool(Pcl::inter(Pil::atom(0).and(Pil::atom(1))))
    }

    fn nat(k: u64) -> WPcl {
        WPcl::Const(Value::Nat(k))
    }

    fn lhs() -> WPcl {
        nat(5)
            .plus(pq_and())
            .times(pq_and().times(nat(6)).coalesce(pq_and().times(nat(3))))
    }

    fn rhs() -> WPcl {
        let a = nat(5).plus(pq_and()).times(pq_and().times(nat(6)));
        let b = nat(5).plus(pq_and()).times(pq_and().times(nat(3)));
        a.coalesce(b)
    }

    fn gamma_pq() -> Configuration {
        Configuration::from_masks([0b11]).unwrap()
    }

    #[test]
    fn non_distributivity_values() {
        for s in [Strategy::Direct, Strategy::Sparse, Strategy::Auto] {
            let caps = Caps::default();
            assert_eq!(evaluate(&lhs(), &gamma_pq(), Natural, s, &caps).unwrap(), Value::Nat(108));
            assert_eq!(evaluate(&rhs(), &gamma_pq(), Natural, s, &caps).unwrap(), Value::Nat(648));
        }
        let w = wpcl_counterexample(&lhs(), &rhs(), 2, Natural, 0.0, &Caps::default())
            .unwrap()
            .unwrap();
        assert_ne!(w.left, w.right);
    }

    #[test]
    fn single_decomposition_contributes() {
        let p = WPcl::Bool(Pcl::inter(Pil::atom(0)));
        let q = WPcl::Bool(Pcl::inter(Pil::atom(1)));
        let z = nat(2).times(p).coalesce(nat(3).times(q));
        let g = Configuration::from_masks([0b01, 0b10]).unwrap();
        assert_eq!(wpcl_eval(&z, &g, Natural).unwrap(), Value::Nat(6));
        assert_eq!(wpcl_eval_sparse(&z, &g, Natural).unwrap(), Value::Nat(6));
    }

    #[test]
    fn constants_are_dense() {
        let g = Configuration::from_masks([1, 2, 3]).unwrap();
        let k = Value::Viterbi(0.3);
        assert_eq!(wpcl_eval_sparse(&WPcl::Const(k), &g, Viterbi).unwrap(), k);
    }

    #[test]
    fn closure_is_a_subset_sum() {
        // Over ℕ the closure of 1 counts nonempty subsets; the ⊎1 macro counts decompositions.
        let g = Configuration::from_masks([1, 2]).unwrap();
        let one = nat(1);
        assert_eq!(wpcl_eval(&one.clone().closure(), &g, Natural).unwrap(), Value::Nat(3));
        assert_eq!(wpcl_eval(&one.coalesce_one(Natural), &g, Natural).unwrap(), Value::Nat(7));
    }

    #[test]
    fn closure_matches_coalesce_one_on_idempotent_semirings() {
        let caps = Caps::default();
        for sr in SemiringId::ALL.into_iter().filter(|s| s.is_idempotent()) {
            let z = WPcl::Bool(Pcl::inter(Pil::atom(0))).plus(WPcl::Bool(Pcl::inter(Pil::atom(1))));
            assert!(wpcl_counterexample(&z.clone().closure(), &z.coalesce_one(sr), 2, sr, 1e-9, &caps)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn zero_absorbs_coalescing() {
        let z = WPcl::Bool(Pcl::inter(Pil::atom(0))).plus(nat(2));
        assert!(wpcl_equiv(&z.coalesce(nat(0)), &nat(0), 2, Natural, 0.0).unwrap());
    }

    #[test]
    fn polynomial_operations() {
        let g1 = Configuration::from_masks([1]).unwrap();
        let g2 = Configuration::from_masks([2]).unwrap();
        let mut a = Polynomial::zero(Natural, 2);
        a.set(g1.clone(), Value::Nat(2));
        let mut b = Polynomial::constant(Value::Nat(3), 2);
        b.set(g2.clone(), Value::Nat(0));
        let s = a.sum(&b).unwrap();
        assert_eq!(s.get(&g1), Value::Nat(5));
        assert_eq!(s.get(&g2), Value::Nat(0));
        let h = a.hadamard(&b).unwrap();
        assert_eq!(h.get(&g1), Value::Nat(6));
        assert_eq!(h.support().unwrap(), vec![&g1]);
        assert!(b.support().is_none());
        assert!(a.sum(&Polynomial::zero(Viterbi, 2)).is_err());
    }

    #[test]
    fn semantics_of_constant_has_dense_marker() {
        let p = semantics(&nat(4), 3, Natural, &Caps::default()).unwrap();
        assert_eq!(p.base(), Value::Nat(4));
        assert_eq!(p.entries().count(), 0);
    }

    #[test]
    fn equivalence_over_too_many_ports_suggests_fnf() {
        let err = wpcl_counterexample(&nat(1), &nat(1), 5, Natural, 0.0, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { hint, .. } if hint.contains("normal form")));
    }
}
