use rand::Rng;
use wcl_core::eval::wpcl_eval;
use wcl_core::interaction::{enumerate_configurations, Configuration, PortUniverse};
use wcl_core::normal_form::{config_to_monomials, fnf_eval, fnf_of_wpcl, monomials_to_config, FullNormalForm};
use wcl_core::pcl::{Pcl, WPcl};
use wcl_core::semiring::{SemiringId, Value};
use wcl_core::styles::{master_slave_wpcl, PriorityTable};

use super::{Options, Outcome};
use crate::gen::Gen;
use crate::syntax::print_wpcl;

const REWRITES: usize = 4;

pub(super) fn fnf(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let mut g = Gen::new(opts.seed ^ 0xf7f);
    for (ports, count) in [(2, 200), (3, 50)] {
        let names: Vec<String> = (0..ports).map(|i| format!("p{}", i + 1)).collect();
        let u = PortUniverse::from_names(&names).expect("distinct ports");
        let all = enumerate_configurations(ports, opts.caps.enum_ports).expect("small universe");
        for k in 0..count {
            let sr = SemiringId::ALL[k % SemiringId::ALL.len()];
            let z = g.wpcl(ports, sr, 3);
            let show = || format!("{} over {sr}", print_wpcl(&z, &u));
            let Some(nf) = out.ok(fnf_of_wpcl(&z, ports, sr, &opts.caps), show) else {
                continue;
            };
            out.check(structurally_full(&nf), || format!("{}: terms violate the normal form statements", show()));
            for gamma in &all {
                if let Some(v) = out.ok(wpcl_eval(&z, gamma, sr), show) {
                    let w = fnf_eval(&nf, gamma);
                    out.check(v.approx_eq(&w, opts.tolerance), || {
                        format!("{} at {}: formula {v}, normal form {w}", show(), u.fmt_configuration(gamma))
                    });
                }
            }
            let mut z2 = z.clone();
            for _ in 0..REWRITES {
                z2 = rewrite(&z2, &mut g, sr);
            }
            if let Some(nf2) = out.ok(fnf_of_wpcl(&z2, ports, sr, &opts.caps), show) {
                out.check(nf.approx_eq(&nf2, opts.tolerance), || {
                    format!("{}\nrewritten to {}: normal forms differ", show(), print_wpcl(&z2, &u))
                });
            }
        }
    }
    master_slave(&mut out, &mut g, opts);
    out
}

/// Every term is a set of distinct full monomials that maps back to its key,
/// keys are distinct, and coefficients are nonzero.
fn structurally_full(nf: &FullNormalForm) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    nf.terms().all(|(key, k)| {
        let Ok(ms) = config_to_monomials(key, nf.ports()) else {
            return false;
        };
        let distinct = ms.iter().map(|m| m.positives()).collect::<std::collections::BTreeSet<_>>().len() == ms.len();
        distinct && !k.is_zero() && monomials_to_config(&ms).is_ok_and(|c| &c == key) && seen.insert(key.clone())
    }) && nf.check_statements()
}

/// Applies one equivalence-preserving step at a random node.
fn rewrite(z: &WPcl, g: &mut Gen, sr: SemiringId) -> WPcl {
    let nodes = size(z);
    let target = g.rng().gen_range(0..nodes);
    let mut counter = 0;
    at(z, target, &mut counter, g, sr)
}

fn size(z: &WPcl) -> usize {
    1 + match z {
        WPcl::Const(_) | WPcl::Bool(_) => 0,
        WPcl::Plus(a, b) | WPcl::Times(a, b) | WPcl::Coalesce(a, b) => size(a) + size(b),
        WPcl::Closure(a) => size(a),
    }
}

fn at(z: &WPcl, target: usize, counter: &mut usize, g: &mut Gen, sr: SemiringId) -> WPcl {
    if *counter == target {
        *counter += 1;
        return step(z, g, sr);
    }
    *counter += 1;
    let mut go = |x: &WPcl| at(x, target, counter, g, sr);
    match z {
        WPcl::Const(_) | WPcl::Bool(_) => z.clone(),
        WPcl::Plus(a, b) => go(a).plus(go(b)),
        WPcl::Times(a, b) => go(a).times(go(b)),
        WPcl::Coalesce(a, b) => go(a).coalesce(go(b)),
        WPcl::Closure(a) => go(a).closure(),
    }
}

fn step(z: &WPcl, g: &mut Gen, sr: SemiringId) -> WPcl {
    use WPcl::*;
    let c = |x: &WPcl| x.clone();
    let mut options: Vec<WPcl> = vec![c(z).plus(Const(sr.zero())), Const(sr.one()).times(c(z))];
    match z {
        Plus(a, b) => {
            options.push(c(b).plus(c(a)));
            if let Plus(x, y) = a.as_ref() {
                options.push(c(x).plus(c(y).plus(c(b))));
            }
        }
        Times(a, b) => {
            options.push(c(b).times(c(a)));
            if let Times(x, y) = a.as_ref() {
                options.push(c(x).times(c(y).times(c(b))));
            }
            if let Plus(x, y) = b.as_ref() {
                options.push(c(a).times(c(x)).plus(c(a).times(c(y))));
            }
            if let (Bool(Pcl::Inter(_)), Coalesce(x, y)) = (a.as_ref(), b.as_ref()) {
                options.push(c(a).times(c(x)).coalesce(c(a).times(c(y))));
            }
        }
        Coalesce(a, b) => {
            options.push(c(b).coalesce(c(a)));
            if let Coalesce(x, y) = a.as_ref() {
                options.push(c(x).coalesce(c(y).coalesce(c(b))));
            }
            if let Plus(x, y) = b.as_ref() {
                options.push(c(a).coalesce(c(x)).plus(c(a).coalesce(c(y))));
            }
            if matches!(b.as_ref(), Const(k) if k.is_zero()) {
                options.push(Const(sr.zero()));
            }
            if let (Times(k1, x), Times(k2, y)) = (a.as_ref(), b.as_ref()) {
                if let (Const(k1), Const(k2)) = (k1.as_ref(), k2.as_ref()) {
                    options.push(Const(k1.mul(*k2)).times(c(x).coalesce(c(y))));
                }
            }
        }
        Closure(a) => match a.as_ref() {
            Plus(x, y) => options.push(c(x).closure().plus(c(y).closure())),
            Coalesce(x, y) => {
                options.push(c(x).closure().times(c(y).closure()));
                if sr.is_idempotent() {
                    options.push(c(x).closure().coalesce(c(y).closure()));
                }
            }
            Closure(_) if sr.is_idempotent() => options.push(c(a)),
            _ => {}
        },
        Const(_) | Bool(_) => {}
    }
    // Prefer the structural rewrites over the unit padding.
    let pick = if options.len() > 2 { g.rng().gen_range(2..options.len()) } else { g.rng().gen_range(0..2) };
    options.swap_remove(pick)
}

/// Two masters, two slaves: the normal form of the weighted architecture is
/// the four pairing products spread over every superset of their pairings.
fn master_slave(out: &mut Outcome, g: &mut Gen, opts: &Options) {
    for sr in SemiringId::ALL.into_iter().filter(|s| s.is_idempotent()) {
        for _ in 0..3 {
            let rows: Vec<Vec<Value>> = (0..2).map(|_| (0..2).map(|_| g.value(sr)).collect()).collect();
            let w = PriorityTable::new(rows).expect("2x2 table");
            let (u, z) = master_slave_wpcl(2, 2, &w).expect("shape matches");
            let Some(nf) = out.ok(fnf_of_wpcl(&z, u.len(), sr, &opts.caps), || format!("master/slave over {sr}")) else {
                continue;
            };
            let a = |i: usize, j: usize| u.interaction(&[format!("s{}", i + 1), format!("m{}", j + 1)]).expect("ports exist");
            let pairings: Vec<(Configuration, Value)> = [(0, 0), (1, 0), (0, 1), (1, 1)]
                .into_iter()
                .map(|(j1, j2)| {
                    let base = Configuration::new([a(0, j1), a(1, j2)]).expect("two interactions");
                    (base, w.get(0, j1).mul(w.get(1, j2)))
                })
                .collect();
            for (base, k) in &pairings {
                let got = fnf_eval(&nf, base);
                out.check(got.approx_eq(k, opts.tolerance), || {
                    format!("master/slave over {sr}: coefficient at {} is {got}, expected {k}", u.fmt_configuration(base))
                });
            }
            let all = enumerate_configurations(u.len(), opts.caps.enum_ports).expect("four ports");
            let mut nonzero = 0;
            for gamma in &all {
                let want = pairings
                    .iter()
                    .filter(|(base, _)| base.is_subset(gamma))
                    .fold(sr.zero(), |acc, (_, k)| acc.add(*k));
                if !want.is_zero() {
                    nonzero += 1;
                }
                let got = fnf_eval(&nf, gamma);
                out.check(got.approx_eq(&want, opts.tolerance), || {
                    format!("master/slave over {sr} at {}: normal form {got}, expected {want}", u.fmt_configuration(gamma))
                });
            }
            out.check(nf.len() == nonzero, || format!("master/slave over {sr}: {} terms, expected {nonzero}", nf.len()));
        }
    }
}
