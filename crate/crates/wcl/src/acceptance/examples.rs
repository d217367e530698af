use rand::Rng;
use wcl_core::eval::{evaluate, Strategy};
use wcl_core::focl::wfocl_eval;
use wcl_core::interaction::PortUniverse;
use wcl_core::pcl::{Pcl, WPcl};
use wcl_core::pil::Pil;
use wcl_core::semiring::{SemiringId, Value};
use wcl_core::styles::{cyclic_tours, pubsub_sample_gamma, pubsub_wfocl, tsp_brute_force, tsp_formula, tsp_gamma, DistanceMatrix, PriorityTable};

use super::{Options, Outcome};
use crate::gen::Gen;

/// (5 (+) {p & q}) (*) (({p & q} (*) 6) (#) ({p & q} (*) 3)) and its
/// distributed form, over N with P = {p, q}.
pub fn counterexample_pair() -> (PortUniverse, WPcl, WPcl) {
    let u = PortUniverse::from_names(&["p", "q"]).expect("distinct ports");
    let nat = |k| WPcl::Const(Value::Nat(k));
    let pq = || WPcl::Bool(Pcl::inter(Pil::atom(0).and(Pil::atom(1))));
    let head = || nat(5).plus(pq());
    let left = head().times(pq().times(nat(6)).coalesce(pq().times(nat(3))));
    let right = head().times(pq().times(nat(6))).coalesce(head().times(pq().times(nat(3))));
    (u, left, right)
}

pub(super) fn counterexample(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let (u, left, right) = counterexample_pair();
    let gamma = u.configuration(&[&["p", "q"]]).expect("ports exist");
    for strategy in [Strategy::Direct, Strategy::Sparse] {
        for (z, want) in [(&left, 108), (&right, 648)] {
            if let Some(v) = out.ok(evaluate(z, &gamma, SemiringId::Natural, strategy, &opts.caps), || format!("{strategy:?}")) {
                out.check(v == Value::Nat(want), || format!("{strategy:?}: expected {want}, got {v}"));
            }
        }
    }
    out
}

/// Four cities whose shortest tour 1-2-3-4-1 has length 10.
pub const PINNED_TSP: [[f64; 4]; 4] = [[0., 1., 9., 4.], [1., 0., 2., 9.], [9., 2., 0., 3.], [4., 9., 3., 0.]];
pub const PINNED_TSP_LENGTH: f64 = 10.0;

fn tsp_value(m: &DistanceMatrix, opts: &Options) -> Result<f64, wcl_core::Error> {
    let (u, z) = tsp_formula(m)?;
    let gamma = tsp_gamma(&u, m.len())?;
    Ok(evaluate(&z, &gamma, SemiringId::MinPlus, Strategy::Sparse, &opts.caps)?.as_f64())
}

fn random_matrix(g: &mut Gen, n: usize) -> DistanceMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = g.rng().gen_range(1..=30) as f64;
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    DistanceMatrix::new(rows).expect("symmetric matrix")
}

pub(super) fn tsp(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let mut g = Gen::new(opts.seed ^ 0x7500);
    for (n, tours) in [(4, 3), (5, 12), (6, 60)] {
        let count = cyclic_tours(n).len();
        out.check(count == tours, || format!("n = {n}: {count} tours, expected {tours}"));
        for k in 0..100 {
            let m = random_matrix(&mut g, n);
            let (Some(v), Some(best)) = (
                out.ok(tsp_value(&m, opts), || format!("n = {n}, matrix {k}")),
                out.ok(tsp_brute_force(&m), || format!("n = {n}, matrix {k}")),
            ) else {
                continue;
            };
            out.check(v == best, || format!("n = {n}, matrix {k}: formula {v}, brute force {best}"));
        }
    }

    let mut fixture: Vec<Vec<f64>> = PINNED_TSP.iter().map(|r| r.to_vec()).collect();
    if opts.mutate_tsp {
        fixture[0][1] += 1.0;
        fixture[1][0] += 1.0;
        out.note("pinned fixture perturbed: d(1,2) raised by 1");
    }
    let m = DistanceMatrix::new(fixture).expect("symmetric fixture");
    if let Some(v) = out.ok(tsp_value(&m, opts), || "pinned fixture".into()) {
        out.check(v == PINNED_TSP_LENGTH, || {
            format!("pinned fixture:\n--- expected {PINNED_TSP_LENGTH}\n+++ got      {v}")
        });
    }
    out
}

pub(super) fn pubsub(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let mut g = Gen::new(opts.seed ^ 0x9b5);
    let gamma = pubsub_sample_gamma();
    let sr = SemiringId::Viterbi;
    for k in 0..20 {
        let rows: Vec<Vec<Value>> = (0..3)
            .map(|_| (0..2).map(|_| Value::Viterbi(g.rng().gen_range(0.0..=1.0))).collect())
            .collect();
        let table = PriorityTable::new(rows).expect("3x2 table");
        let want = table.get(0, 0).as_f64() * table.get(2, 1).as_f64();
        let Some((model, z)) = out.ok(pubsub_wfocl(2, 3, 2, &table), || format!("table {k}")) else {
            continue;
        };
        if let Some(v) = out.ok(wfocl_eval(&z, &model, &gamma, sr), || format!("table {k}")) {
            out.check((v.as_f64() - want).abs() <= opts.tolerance, || {
                format!("table {k}: got {v}, expected k11 * k32 = {want}")
            });
        }
    }
    let zeros = PriorityTable::filled(3, 2, sr.zero());
    if let Some((model, z)) = out.ok(pubsub_wfocl(2, 3, 2, &zeros), || "zero table".into()) {
        if let Some(v) = out.ok(wfocl_eval(&z, &model, &gamma, sr), || "zero table".into()) {
            out.check(v.is_zero(), || format!("zero table: got {v}"));
        }
    }
    out
}

pub(super) fn strategy(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let mut g = Gen::new(opts.seed ^ 0x57a7);
    let u = PortUniverse::from_names(&["p", "q", "r"]).expect("distinct ports");
    for k in 0..500 {
        let sr = SemiringId::ALL[k % SemiringId::ALL.len()];
        let z = g.wpcl(3, sr, 4);
        let gamma = g.configuration(3, 5);
        let direct = out.ok(evaluate(&z, &gamma, sr, Strategy::Direct, &opts.caps), || format!("pair {k}, direct"));
        let sparse = out.ok(evaluate(&z, &gamma, sr, Strategy::Sparse, &opts.caps), || format!("pair {k}, sparse"));
        if let (Some(d), Some(s)) = (direct, sparse) {
            out.check(d.approx_eq(&s, opts.tolerance), || {
                format!(
                    "{sr}, {} at {}: direct {d}, sparse {s}",
                    crate::syntax::print_wpcl(&z, &u),
                    u.fmt_configuration(&gamma)
                )
            });
        }
    }
    out
}
