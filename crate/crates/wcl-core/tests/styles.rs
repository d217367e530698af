use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wcl_core::eval::{evaluate, Strategy};
use wcl_core::focl::wfocl_eval;
use wcl_core::interaction::Port;
use wcl_core::semiring::{SemiringId, Value};
use wcl_core::styles::*;
use wcl_core::Caps;

fn weight(sr: SemiringId, rng: &mut ChaCha8Rng) -> Value {
    match sr {
        SemiringId::Natural => Value::Nat(rng.gen_range(0..4)),
        SemiringId::MaxPlus | SemiringId::MinPlus => sr.value(rng.gen_range(0..10) as f64).unwrap(),
        _ => sr.value(rng.gen_range(0..=8) as f64 / 8.0).unwrap(),
    }
}

/// ⊕ over attachments f (one master per slave, all pairs present in γ) of ⊗ k_{i,f(i)}.
fn attachments_oracle(pairs: &[(usize, usize)], n_masters: usize, n_slaves: usize, k: &PriorityTable, sr: SemiringId) -> Value {
    let mut total = sr.zero();
    for code in 0..n_masters.pow(n_slaves as u32) {
        let f: Vec<usize> = (0..n_slaves).map(|i| code / n_masters.pow(i as u32) % n_masters).collect();
        if (0..n_slaves).all(|i| pairs.contains(&(i, f[i]))) {
            total = total.add((0..n_slaves).fold(sr.one(), |acc, i| acc.mul(k.get(i, f[i]))));
        }
    }
    total
}

#[test]
fn master_slave_formulas_match_attachment_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15);
    for sr in [SemiringId::Natural, SemiringId::MaxPlus, SemiringId::Viterbi, SemiringId::Fuzzy] {
        for (nm, ns) in [(2, 2), (3, 2), (2, 3)] {
            let rows = (0..ns).map(|_| (0..nm).map(|_| weight(sr, &mut rng)).collect()).collect();
            let k = PriorityTable::new(rows).unwrap();
            let (u, z) = master_slave_wpcl(nm, ns, &k).unwrap();
            let (model, zf) = master_slave_wfocl(nm, ns, &k).unwrap();
            let all = all_pairs(nm, ns);
            for sel in 1u32..1 << all.len() {
                let pairs: Vec<_> = (0..all.len()).filter(|b| sel >> b & 1 == 1).map(|b| all[b]).collect();
                let want = attachments_oracle(&pairs, nm, ns, &k, sr);
                let g = master_slave_gamma(&u, &pairs).unwrap();
                let got = evaluate(&z, &g, sr, Strategy::Sparse, &Caps::default()).unwrap();
                assert!(got.approx_eq(&want, 1e-9), "{sr} {nm}x{ns} {pairs:?}: {got} vs {want}");
                if pairs.len() <= 4 {
                    let named = master_slave_named_gamma(&pairs);
                    let got_fo = wfocl_eval(&zf, &model, &named, sr).unwrap();
                    assert!(got_fo.approx_eq(&want, 1e-9), "{sr} {nm}x{ns} {pairs:?}: {got_fo} vs {want}");
                }
            }
        }
    }
}

fn shortest_tour(d: &[Vec<f64>]) -> f64 {
    fn go(d: &[Vec<f64>], path: &mut Vec<usize>, used: &mut [bool], best: &mut f64) {
        let n = d.len();
        if path.len() == n {
            let mut s = d[path[n - 1]][path[0]];
            for w in path.windows(2) {
                s += d[w[0]][w[1]];
            }
            *best = best.min(s);
            return;
        }
        for c in 1..n {
            if !used[c] {
                used[c] = true;
                path.push(c);
                go(d, path, used, best);
                path.pop();
                used[c] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(d, &mut vec![0], &mut vec![false; d.len()], &mut best);
    best
}

#[test]
fn tsp_formula_finds_the_shortest_tour() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in [3, 4, 5] {
        for _ in 0..25 {
            let mut d = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let w = rng.gen_range(1..=30) as f64;
                    d[i][j] = w;
                    d[j][i] = w;
                }
            }
            let want = shortest_tour(&d);
            let m = DistanceMatrix::new(d).unwrap();
            assert_eq!(tsp_brute_force(&m).unwrap(), want);
            let (u, z) = tsp_formula(&m).unwrap();
            let g = tsp_gamma(&u, n).unwrap();
            let got = evaluate(&z, &g, SemiringId::MinPlus, Strategy::Sparse, &Caps::default()).unwrap();
            assert_eq!(got, Value::MinPlus(want));
        }
    }
    assert_eq!(cyclic_tours(4).len(), 3);
    assert_eq!(cyclic_tours(5).len(), 12);
}

#[test]
fn tsp_rejects_bad_matrices() {
    assert!(DistanceMatrix::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
    assert!(DistanceMatrix::new(vec![vec![1.0]]).is_err());
    assert!(DistanceMatrix::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
}

#[test]
fn pubsub_sample_picks_one_priority_per_subscriber() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sr in [SemiringId::Viterbi, SemiringId::Fuzzy] {
        for _ in 0..10 {
            let rows = (0..3).map(|_| (0..2).map(|_| weight(sr, &mut rng)).collect()).collect();
            let k = PriorityTable::new(rows).unwrap();
            let (model, z) = pubsub_wfocl(2, 3, 2, &k).unwrap();
            let got = wfocl_eval(&z, &model, &pubsub_sample_gamma(), sr).unwrap();
            let want = k.get(0, 0).mul(k.get(2, 1));
            assert!(got.approx_eq(&want, 1e-9), "{sr}: {got} vs {want}");
        }
    }
}

#[test]
fn pubsub_without_subscriber_links_is_zero() {
    let k = PriorityTable::filled(3, 2, Value::Viterbi(0.5));
    let (model, z) = pubsub_wfocl(2, 3, 2, &k).unwrap();
    let mut g = pubsub_sample_gamma();
    g.retain(|a| !a.contains(&Port::parse("s2.s")));
    assert!(wfocl_eval(&z, &model, &g, SemiringId::Viterbi).unwrap().is_zero());
}

#[test]
fn shapes_are_checked() {
    let k = PriorityTable::filled(2, 2, Value::Nat(1));
    assert!(master_slave_wpcl(2, 3, &k).is_err());
    assert!(pubsub_wfocl(2, 3, 2, &k).is_err());
}
