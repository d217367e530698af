//! Propositional configuration logic and weighted PCL syntax, satisfaction,
//! and decompositions.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::interaction::{bits, low_bits, nonempty_submasks, Configuration, Interaction};
use crate::pil::Pil;
use crate::semiring::{SemiringId, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pcl {
    True,
    Inter(Pil<usize>),
    Not(Box<Pcl>),
    Union(Box<Pcl>, Box<Pcl>),
    Coalesce(Box<Pcl>, Box<Pcl>),
}

impl Pcl {
    pub fn inter(phi: Pil<usize>) -> Pcl {
        Pcl::Inter(phi)
    }

    pub fn falsity() -> Pcl {
        Pcl::True.not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Pcl {
        Pcl::Not(Box::new(self))
    }

    pub fn union(self, other: Pcl) -> Pcl {
        Pcl::Union(Box::new(self), Box::new(other))
    }

    pub fn coalesce(self, other: Pcl) -> Pcl {
        Pcl::Coalesce(Box::new(self), Box::new(other))
    }

    /// f₁ ⊓ f₂ := ¬(¬f₁ ⊔ ¬f₂)
    pub fn meet(self, other: Pcl) -> Pcl {
        self.not().union(other.not()).not()
    }

    /// f₁ ⟹ f₂ := ¬f₁ ⊔ f₂
    pub fn implies(self, other: Pcl) -> Pcl {
        self.not().union(other)
    }

    /// ~f := f + true
    pub fn closure(self) -> Pcl {
        self.coalesce(Pcl::True)
    }

    /// f₁ ∨ f₂ := f₁ ⊔ f₂ ⊔ (f₁ + f₂)
    pub fn disj(self, other: Pcl) -> Pcl {
        let c = self.clone().coalesce(other.clone());
        self.union(other).union(c)
    }

    pub fn as_meet(&self) -> Option<(&Pcl, &Pcl)> {
        if let Pcl::Not(inner) = self {
            if let Pcl::Union(l, r) = inner.as_ref() {
                if let (Pcl::Not(a), Pcl::Not(b)) = (l.as_ref(), r.as_ref()) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn as_implies(&self) -> Option<(&Pcl, &Pcl)> {
        match self {
            Pcl::Union(l, r) => match l.as_ref() {
                Pcl::Not(a) => Some((a, r)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_closure(&self) -> Option<&Pcl> {
        match self {
            Pcl::Coalesce(f, t) if **t == Pcl::True => Some(f),
            _ => None,
        }
    }

    pub fn as_disj(&self) -> Option<(&Pcl, &Pcl)> {
        if let Pcl::Union(u, c) = self {
            if let (Pcl::Union(a, b), Pcl::Coalesce(a2, b2)) = (u.as_ref(), c.as_ref()) {
                if a == a2 && b == b2 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn check_ports(&self, n_ports: usize) -> Result<()> {
        match self {
            Pcl::True => Ok(()),
            Pcl::Inter(phi) => phi.check_ports(n_ports),
            Pcl::Not(f) => f.check_ports(n_ports),
            Pcl::Union(l, r) | Pcl::Coalesce(l, r) => {
                l.check_ports(n_ports)?;
                r.check_ports(n_ports)
            }
        }
    }
}

/// A weighted PCL formula over one semiring.
///
/// Closure is primitive: ‖~ζ‖(γ) is the ⊕ of ‖ζ‖ over all nonempty γ′ ⊆ γ.
#[derive(Clone, Debug, PartialEq)]
pub enum WPcl {
    Const(Value),
    Bool(Pcl),
    Plus(Box<WPcl>, Box<WPcl>),
    Times(Box<WPcl>, Box<WPcl>),
    Coalesce(Box<WPcl>, Box<WPcl>),
    Closure(Box<WPcl>),
}

impl WPcl {
    pub fn constant(k: Value) -> WPcl {
        WPcl::Const(k)
    }

    pub fn boolean(f: Pcl) -> WPcl {
        WPcl::Bool(f)
    }

    pub fn plus(self, other: WPcl) -> WPcl {
        WPcl::Plus(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: WPcl) -> WPcl {
        WPcl::Times(Box::new(self), Box::new(other))
    }

    pub fn coalesce(self, other: WPcl) -> WPcl {
        WPcl::Coalesce(Box::new(self), Box::new(other))
    }

    pub fn closure(self) -> WPcl {
        WPcl::Closure(Box::new(self))
    }

    /// ζ₁ ⋎ ζ₂ := ζ₁ ⊕ ζ₂ ⊕ (ζ₁ ⊎ ζ₂)
    pub fn wdisj(self, other: WPcl) -> WPcl {
        let c = self.clone().coalesce(other.clone());
        self.plus(other).plus(c)
    }

    /// f ⟹ ζ := ¬f ⊕ (f ⊗ ζ)
    pub fn guard(f: Pcl, z: WPcl) -> WPcl {
        WPcl::Bool(f.clone().not()).plus(WPcl::Bool(f).times(z))
    }

    /// ζ ⊎ 1, the closure macro this crate does not use as closure.
    pub fn coalesce_one(self, sr: SemiringId) -> WPcl {
        self.coalesce(WPcl::Const(sr.one()))
    }

    pub fn as_guard(&self) -> Option<(&Pcl, &WPcl)> {
        if let WPcl::Plus(l, r) = self {
            if let (WPcl::Bool(Pcl::Not(f)), WPcl::Times(b, z)) = (l.as_ref(), r.as_ref()) {
                if let WPcl::Bool(f2) = b.as_ref() {
                    if **f == *f2 {
                        return Some((f2, z));
                    }
                }
            }
        }
        None
    }

    pub fn as_wdisj(&self) -> Option<(&WPcl, &WPcl)> {
        if let WPcl::Plus(u, c) = self {
            if let (WPcl::Plus(a, b), WPcl::Coalesce(a2, b2)) = (u.as_ref(), c.as_ref()) {
                if a == a2 && b == b2 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Checks that every constant belongs to `sr`.
    pub fn check(&self, sr: SemiringId) -> Result<()> {
        match self {
            WPcl::Const(k) if k.semiring() != sr => Err(Error::MixedSemiring {
                left: k.semiring(),
                right: sr,
            }),
            WPcl::Const(_) | WPcl::Bool(_) => Ok(()),
            WPcl::Plus(l, r) | WPcl::Times(l, r) | WPcl::Coalesce(l, r) => {
                l.check(sr)?;
                r.check(sr)
            }
            WPcl::Closure(z) => z.check(sr),
        }
    }

    pub fn check_ports(&self, n_ports: usize) -> Result<()> {
        match self {
            WPcl::Const(_) => Ok(()),
            WPcl::Bool(f) => f.check_ports(n_ports),
            WPcl::Plus(l, r) | WPcl::Times(l, r) | WPcl::Coalesce(l, r) => {
                l.check_ports(n_ports)?;
                r.check_ports(n_ports)
            }
            WPcl::Closure(z) => z.check_ports(n_ports),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            WPcl::Const(_) | WPcl::Bool(_) => 1,
            WPcl::Plus(l, r) | WPcl::Times(l, r) | WPcl::Coalesce(l, r) => 1 + l.size() + r.size(),
            WPcl::Closure(z) => 1 + z.size(),
        }
    }
}

/// Calls `f(m1, m2)` once for every ordered pair of nonempty submasks with
/// `m1 | m2 == mask`.
pub fn for_each_decomposition(mask: u64, mut f: impl FnMut(u64, u64)) {
    for m1 in nonempty_submasks(mask) {
        let rest = mask & !m1;
        // t ranges over all submasks of m1, including the empty one.
        let mut t = m1;
        loop {
            let m2 = rest | t;
            if m2 != 0 {
                f(m1, m2);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & m1;
        }
    }
}

/// All ordered pairs (γ₁, γ₂) of nonempty sub-configurations with γ₁ ∪ γ₂ = γ.
pub fn decompositions2(gamma: &Configuration, caps: &Caps) -> Result<Vec<(Configuration, Configuration)>> {
    if gamma.len() > caps.direct_gamma {
        return Err(Error::CapExceeded {
            what: "decomposition enumeration",
            size: gamma.len(),
            cap: caps.direct_gamma,
            hint: "use the sparse evaluation strategy",
        });
    }
    let mut out = Vec::new();
    for_each_decomposition(gamma.full_mask(), |m1, m2| {
        out.push((gamma.select(m1).unwrap(), gamma.select(m2).unwrap()));
    });
    Ok(out)
}

/// Mask of positions in `inters` whose interaction satisfies `phi`.
pub(crate) fn satisfying_positions(phi: &Pil<usize>, inters: &[Interaction]) -> u64 {
    inters
        .iter()
        .enumerate()
        .filter(|(_, a)| phi.holds(a.mask()))
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Truth table of `f` over every sub-configuration of `inters`; entry 0 is unused.
pub(crate) fn sat_table(f: &Pcl, inters: &[Interaction], caps: &Caps) -> Result<Vec<bool>> {
    let n = inters.len();
    if n > caps.dense_gamma || n > 30 {
        return Err(Error::CapExceeded {
            what: "configuration size for satisfaction tables",
            size: n,
            cap: caps.dense_gamma.min(30),
            hint: "raise the dense cap",
        });
    }
    let size = 1usize << n;
    Ok(match f {
        Pcl::True => {
            let mut t = vec![true; size];
            t[0] = false;
            t
        }
        Pcl::Inter(phi) => {
            let s = satisfying_positions(phi, inters);
            (0..size as u64).map(|m| m != 0 && m & !s == 0).collect()
        }
        Pcl::Not(g) => {
            let mut t = sat_table(g, inters, caps)?;
            for v in t.iter_mut().skip(1) {
                *v = !*v;
            }
            t
        }
        Pcl::Union(l, r) => {
            let mut t = sat_table(l, inters, caps)?;
            let u = sat_table(r, inters, caps)?;
            for (a, b) in t.iter_mut().zip(u) {
                *a = *a || b;
            }
            t
        }
        Pcl::Coalesce(l, r) => {
            let a = sat_table(l, inters, caps)?;
            let b = sat_table(r, inters, caps)?;
            coalesce_tables(&a, &b, caps)?
        }
    })
}

pub(crate) fn coalesce_tables(a: &[bool], b: &[bool], caps: &Caps) -> Result<Vec<bool>> {
    let size = a.len();
    let all_true = |t: &[bool]| t.iter().skip(1).all(|&x| x);
    // With one side true everywhere, f + true holds exactly on supersets of a model of f.
    if all_true(b) || all_true(a) {
        let other = if all_true(b) { a } else { b };
        let mut t = other.to_vec();
        let n = size.trailing_zeros();
        for bit in 0..n {
            let bit = 1usize << bit;
            for m in 0..size {
                if m & bit != 0 && t[m ^ bit] {
                    t[m] = true;
                }
            }
        }
        t[0] = false;
        return Ok(t);
    }
    let la: Vec<usize> = (1..size).filter(|&m| a[m]).collect();
    let lb: Vec<usize> = (1..size).filter(|&m| b[m]).collect();
    let pairs = la.len().saturating_mul(lb.len());
    if pairs > caps.pairs {
        return Err(Error::CapExceeded {
            what: "coalescing pairs",
            size: pairs,
            cap: caps.pairs,
            hint: "reduce the configuration or raise the pair cap",
        });
    }
    let mut t = vec![false; size];
    for &x in &la {
        for &y in &lb {
            t[x | y] = true;
        }
    }
    Ok(t)
}

/// γ ⊨ f.
pub fn pcl_satisfies(gamma: &Configuration, f: &Pcl) -> Result<bool> {
    pcl_satisfies_with(gamma, f, &Caps::default())
}

pub fn pcl_satisfies_with(gamma: &Configuration, f: &Pcl, caps: &Caps) -> Result<bool> {
    // Interaction formulas need no table.
    if let Pcl::Inter(phi) = f {
        return Ok(gamma.iter().all(|a| phi.holds(a.mask())));
    }
    let t = sat_table(f, gamma.interactions(), caps)?;
    Ok(t[low_bits(gamma.len()) as usize])
}

/// Positions of `mask` as a vector, for diagnostics and tests.
pub fn mask_positions(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::{enumerate_configurations, PortUniverse};

    fn pq() -> PortUniverse {
        PortUniverse::from_names(&["p", "q"]).unwrap()
    }

    fn p() -> Pcl {
        Pcl::inter(Pil::atom(0))
    }

    fn q() -> Pcl {
        Pcl::inter(Pil::atom(1))
    }

    #[test]
    fn decomposition_counts() {
        let caps = Caps::default();
        for (n, want) in [(1usize, 1usize), (2, 7), (3, 25)] {
            let gamma = Configuration::from_masks(1..=n as u64).unwrap();
            let ds = decompositions2(&gamma, &caps).unwrap();
            assert_eq!(ds.len(), want);
            let mut seen = ds.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), want);
            for (a, b) in &ds {
                assert_eq!(a.union(b), gamma);
            }
        }
        let one = Configuration::from_masks([3]).unwrap();
        assert_eq!(decompositions2(&one, &caps).unwrap(), vec![(one.clone(), one)]);
    }

    #[test]
    fn decomposition_cap() {
        let caps = Caps {
            direct_gamma: 2,
            ..Caps::default()
        };
        let gamma = Configuration::from_masks([1, 2, 3]).unwrap();
        assert!(matches!(
            decompositions2(&gamma, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn interaction_formula_holds_for_every_member() {
        let u = pq();
        let g = u.configuration(&[&["p"], &["p", "q"]]).unwrap();
        assert!(pcl_satisfies(&g, &p()).unwrap());
        assert!(!pcl_satisfies(&g, &q()).unwrap());
    }

    #[test]
    fn coalescing_examples() {
        let u = pq();
        let f = p().coalesce(q());
        let both = u.configuration(&[&["p"], &["q"]]).unwrap();
        let only_p = u.configuration(&[&["p"]]).unwrap();
        assert!(pcl_satisfies(&both, &f).unwrap());
        assert!(!pcl_satisfies(&only_p, &f).unwrap());
    }

    #[test]
    fn interaction_formulas_are_coalescing_idempotent() {
        let phis = [
            Pil::atom(0),
            Pil::atom(1).negate(),
            Pil::atom(0).or(Pil::atom(1)),
            Pil::atom(0).and(Pil::atom(1)),
            Pil::True,
            Pil::falsity(),
        ];
        for phi in phis {
            let f = Pcl::inter(phi);
            let ff = f.clone().coalesce(f.clone());
            for g in enumerate_configurations(2, 4).unwrap() {
                assert_eq!(pcl_satisfies(&g, &f).unwrap(), pcl_satisfies(&g, &ff).unwrap());
            }
        }
    }

    #[test]
    fn table_coalescing_matches_decompositions() {
        let caps = Caps::default();
        let fs = [p(), q(), p().not(), p().union(q()), Pcl::True, p().closure()];
        for g in enumerate_configurations(2, 4).unwrap() {
            let ds = decompositions2(&g, &caps).unwrap();
            for f1 in &fs {
                for f2 in &fs {
                    let want = ds.iter().any(|(a, b)| {
                        pcl_satisfies(a, f1).unwrap() && pcl_satisfies(b, f2).unwrap()
                    });
                    let got = pcl_satisfies(&g, &f1.clone().coalesce(f2.clone())).unwrap();
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn derived_operator_recognizers() {
        assert_eq!(p().meet(q()).as_meet(), Some((&p(), &q())));
        assert_eq!(p().implies(q()).as_implies(), Some((&p(), &q())));
        assert_eq!(p().closure().as_closure(), Some(&p()));
        assert_eq!(p().disj(q()).as_disj(), Some((&p(), &q())));
        let z = WPcl::Const(Value::Nat(3));
        assert_eq!(WPcl::guard(p(), z.clone()).as_guard(), Some((&p(), &z)));
    }
}
