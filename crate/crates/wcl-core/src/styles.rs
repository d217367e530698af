//! Encoders for the Master/Slave, Publish/Subscribe and travelling
//! salesman examples, plus a brute-force tour oracle.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::focl::{Binder, Component, ComponentType, Focl, Model, PortRef, Predicate, Term, WFocl};
use crate::interaction::{Configuration, NamedConfiguration, Port, PortUniverse};
use crate::pcl::{Pcl, WPcl};
use crate::pil::Pil;
use crate::semiring::{SemiringId, Value};

/// Weights k_{i,j}, row i and column j, 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct PriorityTable {
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl PriorityTable {
    pub fn new(rows: Vec<Vec<Value>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::WeightShape {
                rows: r,
                cols: rows.iter().map(Vec::len).max().unwrap_or(0),
                want_rows: r.max(1),
                want_cols: c.max(1),
            });
        }
        let sr = rows[0][0].semiring();
        if let Some(k) = rows.iter().flatten().find(|k| k.semiring() != sr) {
            return Err(Error::MixedSemiring {
                left: sr,
                right: k.semiring(),
            });
        }
        Ok(PriorityTable {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// A table with every entry equal to `k`.
    pub fn filled(rows: usize, cols: usize, k: Value) -> Self {
        PriorityTable {
            rows,
            cols,
            data: vec![k; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn semiring(&self) -> SemiringId {
        self.data[0].semiring()
    }

    pub fn get(&self, i: usize, j: usize) -> Value {
        self.data[i * self.cols + j]
    }

    fn expect_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::WeightShape {
                rows: self.rows,
                cols: self.cols,
                want_rows: rows,
                want_cols: cols,
            });
        }
        Ok(())
    }
}

fn master_port(j: usize) -> String {
    format!("m{}", j + 1)
}

fn slave_port(i: usize) -> String {
    format!("s{}", i + 1)
}

/// Ports m1..mₙ and s1..sₘ.
pub fn master_slave_ports(n_masters: usize, n_slaves: usize) -> PortUniverse {
    let names: Vec<String> = (0..n_masters).map(master_port).chain((0..n_slaves).map(slave_port)).collect();
    PortUniverse::from_names(&names).expect("distinct port names")
}

/// φ_{i,j}: slave i and master j present, every other port absent.
fn master_slave_monomial(u: &PortUniverse, n_masters: usize, n_slaves: usize, i: usize, j: usize) -> Pil<usize> {
    let idx = |name: String| u.index_of_name(&name).expect("port exists");
    let mut lits = vec![Pil::atom(idx(slave_port(i))), Pil::atom(idx(master_port(j)))];
    lits.extend((0..n_slaves).filter(|&x| x != i).map(|x| Pil::atom(idx(slave_port(x))).negate()));
    lits.extend((0..n_masters).filter(|&x| x != j).map(|x| Pil::atom(idx(master_port(x))).negate()));
    Pil::and_all(lits)
}

/// ~(⊎ over slaves i of ⊕ over masters j of k_{i,j} ⊗ φ_{i,j}).
/// `weights` has one row per slave and one column per master.
pub fn master_slave_wpcl(n_masters: usize, n_slaves: usize, weights: &PriorityTable) -> Result<(PortUniverse, WPcl)> {
    weights.expect_shape(n_slaves, n_masters)?;
    let u = master_slave_ports(n_masters, n_slaves);
    let body = (0..n_slaves)
        .map(|i| {
            (0..n_masters)
                .map(|j| {
                    let phi = master_slave_monomial(&u, n_masters, n_slaves, i, j);
                    WPcl::Const(weights.get(i, j)).times(WPcl::Bool(Pcl::inter(phi)))
                })
                .reduce(WPcl::plus)
                .expect("at least one master")
        })
        .reduce(WPcl::coalesce)
        .expect("at least one slave");
    Ok((u, body.closure()))
}

/// The configuration {{sᵢ, mⱼ} : (i, j) ∈ pairs} over [`master_slave_ports`].
pub fn master_slave_gamma(u: &PortUniverse, pairs: &[(usize, usize)]) -> Result<Configuration> {
    let inters = pairs
        .iter()
        .map(|&(i, j)| u.interaction(&[slave_port(i), master_port(j)]))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(inters)
}

/// The same configuration over the component model: {{dᵢ.s, bⱼ.m}}.
pub fn master_slave_named_gamma(pairs: &[(usize, usize)]) -> NamedConfiguration {
    pairs
        .iter()
        .map(|&(i, j)| {
            [
                Port::qualified(format!("d{}", i + 1), "s"),
                Port::qualified(format!("b{}", j + 1), "m"),
            ]
            .into_iter()
            .collect::<BTreeSet<_>>()
        })
        .collect()
}

/// All slave/master pairings.
pub fn all_pairs(n_masters: usize, n_slaves: usize) -> Vec<(usize, usize)> {
    (0..n_slaves).flat_map(|i| (0..n_masters).map(move |j| (i, j))).collect()
}

fn var(v: &str) -> Term {
    Term::Var(v.to_string())
}

fn comp(c: String) -> Term {
    Term::Comp(c)
}

fn port(v: &str, p: &str) -> Pil<PortRef> {
    Pil::atom(PortRef::var(v, p))
}

/// Masters b1..bₙ of type M (port m), slaves d1..dₘ of type S (port s), and
/// Z = ~⊎c:S.(⊕c₁:M.Z′) with
/// Z′ = (c.s ∧ c₁.m) ⊗ ⊗_{i,j}(when c = dᵢ ∧ c₁ = bⱼ then k_{i,j})
///      ⊗ ⊗c₂:M(c₂ ≠ c₁).⊗c₃:S(c₃ ≠ c).(¬c₂.m ∧ ¬c₃.s).
pub fn master_slave_wfocl(n_masters: usize, n_slaves: usize, weights: &PriorityTable) -> Result<(Model, WFocl)> {
    weights.expect_shape(n_slaves, n_masters)?;
    let components = (0..n_masters)
        .map(|j| Component::new(format!("b{}", j + 1), "M"))
        .chain((0..n_slaves).map(|i| Component::new(format!("d{}", i + 1), "S")))
        .collect();
    let model = Model::new(vec![ComponentType::new("M", ["m"]), ComponentType::new("S", ["s"])], components)?;

    let link = WFocl::Bool(Focl::inter(port("c", "s").and(port("c1", "m"))));
    let guards = all_pairs(n_masters, n_slaves)
        .into_iter()
        .map(|(i, j)| {
            let pred = Predicate::Eq(var("c"), comp(format!("d{}", i + 1)))
                .and(Predicate::Eq(var("c1"), comp(format!("b{}", j + 1))));
            WFocl::when(pred, WFocl::Const(weights.get(i, j)))
        })
        .reduce(WFocl::times)
        .expect("nonempty table");
    let others = WFocl::otimes(
        Binder::new("c2", "M").with_pred(Predicate::Neq(var("c2"), var("c1"))),
        WFocl::otimes(
            Binder::new("c3", "S").with_pred(Predicate::Neq(var("c3"), var("c"))),
            WFocl::Bool(Focl::inter(port("c2", "m").negate().and(port("c3", "s").negate()))),
        ),
    );
    let z_prime = link.times(guards).times(others);
    let z = WFocl::ouplus(Binder::new("c", "S"), WFocl::oplus(Binder::new("c1", "M"), z_prime)).closure();
    Ok((model, z))
}

/// A symmetric distance matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(Error::BadMatrix(format!("need at least 3 cities, got {n}")));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::BadMatrix(format!("row {} has {} entries, expected {n}", r + 1, rows[r].len())));
        }
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return Err(Error::BadMatrix(format!("diagonal entry {} is not zero", i + 1)));
            }
            for j in 0..n {
                let x = rows[i][j];
                if !(x.is_finite() && x >= 0.0) {
                    return Err(Error::BadMatrix(format!("entry ({}, {}) is not a nonnegative real", i + 1, j + 1)));
                }
                if x != rows[j][i] {
                    return Err(Error::BadMatrix(format!("entries ({0}, {1}) and ({1}, {0}) differ", i + 1, j + 1)));
                }
            }
        }
        Ok(DistanceMatrix {
            n,
            d: rows.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// Length of the closed tour visiting `tour` in order.
    pub fn tour_length(&self, tour: &[usize]) -> f64 {
        (0..tour.len())
            .map(|k| self.get(tour[k], tour[(k + 1) % tour.len()]))
            .sum()
    }
}

/// Cyclic tours of cities 0..n anchored at city 0, one per direction pair:
/// the second city has a smaller index than the last. (n−1)!/2 tours.
pub fn cyclic_tours(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |perm| {
        if perm[0] < perm[perm.len() - 1] {
            let mut t = vec![0];
            t.extend_from_slice(perm);
            out.push(t);
        }
    });
    out.sort();
    out
}

fn permute(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn city_port(i: usize) -> String {
    format!("c{}", i + 1)
}

/// Ports c1..cₙ.
pub fn tsp_ports(n: usize) -> PortUniverse {
    let names: Vec<String> = (0..n).map(city_port).collect();
    PortUniverse::from_names(&names).expect("distinct port names")
}

/// The closure of ⊕ over tours of the ⊎-chain of weighted edge monomials,
/// closing edge included, over min-plus.
pub fn tsp_formula(m: &DistanceMatrix) -> Result<(PortUniverse, WPcl)> {
    let n = m.len();
    let u = tsp_ports(n);
    let idx: Vec<usize> = (0..n).map(|i| u.index_of_name(&city_port(i)).unwrap()).collect();
    let edge = |i: usize, j: usize| -> Result<WPcl> {
        let lits = [Pil::atom(idx[i]), Pil::atom(idx[j])]
            .into_iter()
            .chain((0..n).filter(|&k| k != i && k != j).map(|k| Pil::atom(idx[k]).negate()));
        let w = SemiringId::MinPlus.value(m.get(i, j))?;
        Ok(WPcl::Const(w).times(WPcl::Bool(Pcl::inter(Pil::and_all(lits)))))
    };
    let mut tours = Vec::new();
    for t in cyclic_tours(n) {
        let chain = (0..n)
            .map(|k| edge(t[k], t[(k + 1) % n]))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .reduce(WPcl::coalesce)
            .expect("n >= 3");
        tours.push(chain);
    }
    let sum = tours.into_iter().reduce(WPcl::plus).expect("at least one tour");
    Ok((u, sum.closure()))
}

/// {{cᵢ, cⱼ} : i ≠ j}.
pub fn tsp_gamma(u: &PortUniverse, n: usize) -> Result<Configuration> {
    let mut inters = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            inters.push(u.interaction(&[city_port(i), city_port(j)])?);
        }
    }
    Configuration::new(inters)
}

/// Shortest closed tour by enumerating every permutation of the cities
/// after the first (Heap's algorithm). Limited to 10 cities.
pub fn tsp_brute_force(m: &DistanceMatrix) -> Result<f64> {
    let n = m.len();
    if n > 10 {
        return Err(Error::CapExceeded {
            what: "brute-force tour search",
            size: n,
            cap: 10,
            hint: "at most 10 cities",
        });
    }
    let mut a: Vec<usize> = (1..n).collect();
    let len = |a: &[usize]| {
        let mut s = m.get(0, a[0]) + m.get(a[a.len() - 1], 0);
        for w in a.windows(2) {
            s += m.get(w[0], w[1]);
        }
        s
    };
    let mut best = len(&a);
    let k = a.len();
    let mut c = vec![0usize; k];
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            best = best.min(len(&a));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// Publishers p1.. (type P, port p), topics r1.. (type T, ports t1, t2),
/// subscribers s1.. (type S, port s), and
/// Z = ⊗c₁:S.(⊕c₂:T.(⊕c₃:P.(Z₂ ⊎ Z₅))).
/// `priorities` has one row per topic and one column per subscriber.
pub fn pubsub_wfocl(publishers: usize, topics: usize, subscribers: usize, priorities: &PriorityTable) -> Result<(Model, WFocl)> {
    priorities.expect_shape(topics, subscribers)?;
    let components = (0..publishers)
        .map(|i| Component::new(format!("p{}", i + 1), "P"))
        .chain((0..topics).map(|i| Component::new(format!("r{}", i + 1), "T")))
        .chain((0..subscribers).map(|i| Component::new(format!("s{}", i + 1), "S")))
        .collect();
    let model = Model::new(
        vec![
            ComponentType::new("P", ["p"]),
            ComponentType::new("S", ["s"]),
            ComponentType::new("T", ["t1", "t2"]),
        ],
        components,
    )?;

    let neq = |a: &str, b: &str| Predicate::Neq(var(a), var(b));
    let z1 = Focl::forall(
        Binder::new("d1", "P").with_pred(neq("d1", "c3")),
        Focl::forall(
            Binder::new("d2", "T").with_pred(neq("d2", "c2")),
            Focl::forall(
                Binder::new("d3", "S"),
                Focl::inter(Pil::and_all([
                    port("d1", "p").negate(),
                    port("d2", "t1").negate(),
                    port("d2", "t2").negate(),
                    port("d3", "s").negate(),
                    port("c2", "t2").negate(),
                ])),
            ),
        ),
    );
    let z2 = Focl::inter(port("c3", "p").and(port("c2", "t1"))).meet(z1).closure();
    let z3 = Focl::forall(
        Binder::new("d1", "P"),
        Focl::forall(
            Binder::new("d2", "T").with_pred(neq("d2", "c2")),
            Focl::forall(
                Binder::new("d3", "S").with_pred(neq("d3", "c1")),
                Focl::inter(Pil::and_all([
                    port("d1", "p").negate(),
                    port("d2", "t1").negate(),
                    port("d2", "t2").negate(),
                    port("d3", "s").negate(),
                    port("c2", "t1").negate(),
                ])),
            ),
        ),
    );
    let z4 = (0..topics)
        .flat_map(|i| (0..subscribers).map(move |j| (i, j)))
        .map(|(i, j)| {
            let pred = Predicate::Eq(var("c2"), comp(format!("r{}", i + 1)))
                .and(Predicate::Eq(var("c1"), comp(format!("s{}", j + 1))));
            WFocl::when(pred, WFocl::Const(priorities.get(i, j)))
        })
        .reduce(WFocl::times)
        .expect("nonempty table");
    let z5 = WFocl::Bool(Focl::inter(port("c2", "t2").and(port("c1", "s"))).meet(z3).closure()).times(z4);
    let body = WFocl::Bool(z2).coalesce(z5);
    let z = WFocl::otimes(
        Binder::new("c1", "S"),
        WFocl::oplus(Binder::new("c2", "T"), WFocl::oplus(Binder::new("c3", "P"), body)),
    );
    Ok((model, z))
}

/// {{p1.p, r1.t1}, {p1.p, r3.t1}, {p2.p, r1.t1}, {r1.t2, s1.s}, {r2.t2, s2.s}, {r3.t2, s2.s}}.
pub fn pubsub_sample_gamma() -> NamedConfiguration {
    let pairs = [
        ("p1.p", "r1.t1"),
        ("p1.p", "r3.t1"),
        ("p2.p", "r1.t1"),
        ("r1.t2", "s1.s"),
        ("r2.t2", "s2.s"),
        ("r3.t2", "s2.s"),
    ];
    pairs
        .iter()
        .map(|&(a, b)| [Port::parse(a), Port::parse(b)].into_iter().collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{evaluate, Strategy};
    use crate::focl::wfocl_eval;
    use crate::Caps;
    use SemiringId::*;

    fn table(rows: &[&[f64]], sr: SemiringId) -> PriorityTable {
        PriorityTable::new(rows.iter().map(|r| r.iter().map(|&x| sr.value(x).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn tour_counts() {
        let fact = |n: usize| (1..=n).product::<usize>();
        for n in 3..=8 {
            let tours = cyclic_tours(n);
            assert_eq!(tours.len(), fact(n - 1) / 2, "n = {n}");
            assert!(tours.iter().all(|t| t[0] == 0 && t[1] < t[n - 1]));
        }
        assert_eq!(cyclic_tours(5).len(), 12);
    }

    #[test]
    fn three_cities() {
        let m = DistanceMatrix::new(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 4.0], vec![2.0, 4.0, 0.0]]).unwrap();
        let (u, z) = tsp_formula(&m).unwrap();
        let g = tsp_gamma(&u, 3).unwrap();
        let v = evaluate(&z, &g, MinPlus, Strategy::Sparse, &Caps::default()).unwrap();
        assert_eq!(v, Value::MinPlus(7.0));
        assert_eq!(tsp_brute_force(&m).unwrap(), 7.0);
    }

    #[test]
    fn four_city_fixture() {
        let rows = [[0.0, 1.0, 9.0, 4.0], [1.0, 0.0, 2.0, 9.0], [9.0, 2.0, 0.0, 3.0], [4.0, 9.0, 3.0, 0.0]];
        let m = DistanceMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
        // The three tours: 1-2-3-4 (10), 1-2-4-3 (1+9+3+9 = 22), 1-3-2-4 (9+2+9+4 = 24).
        let lengths: Vec<f64> = cyclic_tours(4).iter().map(|t| m.tour_length(t)).collect();
        assert_eq!(lengths.len(), 3);
        assert_eq!(lengths.iter().cloned().fold(f64::INFINITY, f64::min), 10.0);
        assert_eq!(tsp_brute_force(&m).unwrap(), 10.0);
        let (u, z) = tsp_formula(&m).unwrap();
        let g = tsp_gamma(&u, 4).unwrap();
        for s in [Strategy::Direct, Strategy::Sparse] {
            assert_eq!(evaluate(&z, &g, MinPlus, s, &Caps::default()).unwrap(), Value::MinPlus(10.0));
        }
    }

    #[test]
    fn dominant_cheap_cycle() {
        let n = 6;
        let mut rows = vec![vec![100.0; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 0.0;
        }
        for i in 0..n {
            let j = (i + 1) % n;
            rows[i][j] = 1.0;
            rows[j][i] = 1.0;
        }
        let m = DistanceMatrix::new(rows).unwrap();
        assert_eq!(tsp_brute_force(&m).unwrap(), 6.0);
    }

    #[test]
    fn matrix_validation() {
        assert!(DistanceMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 4.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![1.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.0, -1.0, 2.0], vec![-1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]]).is_err());
    }

    #[test]
    fn single_master_single_slave() {
        for sr in SemiringId::ALL {
            let k = match sr {
                Natural => Value::Nat(4),
                Boolean => Value::Bool(true),
                _ => sr.value(0.5).unwrap(),
            };
            let w = PriorityTable::new(vec![vec![k]]).unwrap();
            let (u, z) = master_slave_wpcl(1, 1, &w).unwrap();
            let g = master_slave_gamma(&u, &[(0, 0)]).unwrap();
            assert_eq!(evaluate(&z, &g, sr, Strategy::Direct, &Caps::default()).unwrap(), k);
            let (model, zf) = master_slave_wfocl(1, 1, &w).unwrap();
            assert_eq!(wfocl_eval(&zf, &model, &master_slave_named_gamma(&[(0, 0)]), sr).unwrap(), k);
        }
    }

    #[test]
    fn master_slave_two_by_two_min_plus() {
        let w = table(&[&[1.0, 5.0], &[2.0, 7.0]], MinPlus);
        let (u, z) = master_slave_wpcl(2, 2, &w).unwrap();
        let g = master_slave_gamma(&u, &all_pairs(2, 2)).unwrap();
        // Cheapest way to give each slave a master: 1 + 2.
        let v = evaluate(&z, &g, MinPlus, Strategy::Direct, &Caps::default()).unwrap();
        assert_eq!(v, Value::MinPlus(3.0));
        let v = evaluate(&z, &g, MaxPlus, Strategy::Direct, &Caps::default());
        assert!(v.is_err());
        let wmax = table(&[&[1.0, 5.0], &[2.0, 7.0]], MaxPlus);
        let (_, zmax) = master_slave_wpcl(2, 2, &wmax).unwrap();
        assert_eq!(evaluate(&zmax, &g, MaxPlus, Strategy::Direct, &Caps::default()).unwrap(), Value::MaxPlus(12.0));
    }

    #[test]
    fn unmatched_pattern_gives_zero() {
        let w = table(&[&[0.5, 0.4], &[0.3, 0.2], &[0.9, 0.8]], Viterbi);
        let (model, z) = master_slave_wfocl(2, 3, &w).unwrap();
        // {d1.s, b1.m, b2.m} satisfies no pattern and must be covered by some part.
        let mut g = master_slave_named_gamma(&[(0, 0)]);
        g.insert([Port::parse("d1.s"), Port::parse("b1.m"), Port::parse("b2.m")].into_iter().collect());
        assert_eq!(wfocl_eval(&z, &model, &g, Viterbi).unwrap(), Viterbi.zero());
    }

    #[test]
    fn pubsub_sample_value() {
        let w = table(&[&[0.9, 0.3], &[0.5, 0.6], &[0.2, 0.7]], Viterbi);
        let (model, z) = pubsub_wfocl(2, 3, 2, &w).unwrap();
        let v = wfocl_eval(&z, &model, &pubsub_sample_gamma(), Viterbi).unwrap();
        assert!(v.approx_eq(&Value::Viterbi(0.9 * 0.7), 1e-12), "{v}");
        let zero = PriorityTable::filled(3, 2, Viterbi.zero());
        let (model, z) = pubsub_wfocl(2, 3, 2, &zero).unwrap();
        assert_eq!(wfocl_eval(&z, &model, &pubsub_sample_gamma(), Viterbi).unwrap(), Viterbi.zero());
    }

    #[test]
    fn shape_errors() {
        let w = PriorityTable::filled(2, 3, Value::Nat(1));
        assert!(matches!(master_slave_wpcl(2, 2, &w), Err(Error::WeightShape { .. })));
        assert!(PriorityTable::new(vec![vec![Value::Nat(1)], vec![Value::Nat(1), Value::Nat(2)]]).is_err());
        assert!(PriorityTable::new(vec![vec![Value::Nat(1), Value::Bool(true)]]).is_err());
    }
}
