//! Evaluators checked against a brute-force reading of the semantics that
//! works on plain masks and `f64` arithmetic.

use proptest::prelude::*;
use wcl_core::eval::{evaluate, wpcl_counterexample, Strategy as EvalStrategy};
use wcl_core::interaction::Configuration;
use wcl_core::normal_form::{fnf_eval, fnf_of_wpcl};
use wcl_core::pcl::{pcl_satisfies, Pcl, WPcl};
use wcl_core::pil::Pil;
use wcl_core::semiring::{SemiringId, Value};
use wcl_core::Caps;

fn o_zero(sr: SemiringId) -> f64 {
    match sr {
        SemiringId::MinPlus => f64::INFINITY,
        SemiringId::MaxPlus => f64::NEG_INFINITY,
        _ => 0.0,
    }
}

fn o_one(sr: SemiringId) -> f64 {
    match sr {
        SemiringId::MinPlus | SemiringId::MaxPlus => 0.0,
        _ => 1.0,
    }
}

fn o_add(sr: SemiringId, a: f64, b: f64) -> f64 {
    match sr {
        SemiringId::Natural => a + b,
        SemiringId::MinPlus => a.min(b),
        _ => a.max(b),
    }
}

fn o_mul(sr: SemiringId, a: f64, b: f64) -> f64 {
    match sr {
        SemiringId::MinPlus | SemiringId::MaxPlus => {
            if a == o_zero(sr) || b == o_zero(sr) {
                o_zero(sr)
            } else {
                a + b
            }
        }
        SemiringId::Boolean | SemiringId::Fuzzy => a.min(b),
        _ => a * b,
    }
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-9 * a.abs().max(1.0))
}

fn pil_holds(phi: &Pil<usize>, m: u64) -> bool {
    match phi {
        Pil::True => true,
        Pil::Atom(i) => m >> i & 1 == 1,
        Pil::Not(x) => !pil_holds(x, m),
        Pil::Or(a, b) => pil_holds(a, m) || pil_holds(b, m),
    }
}

fn sub(gamma: &[u64], sel: u32) -> Vec<u64> {
    (0..gamma.len()).filter(|i| sel >> i & 1 == 1).map(|i| gamma[i]).collect()
}

/// Ordered pairs of nonempty sub-configurations whose union is `gamma`.
fn splits(gamma: &[u64]) -> Vec<(Vec<u64>, Vec<u64>)> {
    let full = (1u32 << gamma.len()) - 1;
    let mut out = Vec::new();
    for a in 1..=full {
        for b in 1..=full {
            if a | b == full {
                out.push((sub(gamma, a), sub(gamma, b)));
            }
        }
    }
    out
}

fn sat(f: &Pcl, gamma: &[u64]) -> bool {
    match f {
        Pcl::True => true,
        Pcl::Inter(phi) => gamma.iter().all(|&m| pil_holds(phi, m)),
        Pcl::Not(x) => !sat(x, gamma),
        Pcl::Union(a, b) => sat(a, gamma) || sat(b, gamma),
        Pcl::Coalesce(a, b) => splits(gamma).iter().any(|(g1, g2)| sat(a, g1) && sat(b, g2)),
    }
}

fn value(z: &WPcl, gamma: &[u64], sr: SemiringId) -> f64 {
    match z {
        WPcl::Const(k) => k.as_f64(),
        WPcl::Bool(f) => {
            if sat(f, gamma) {
                o_one(sr)
            } else {
                o_zero(sr)
            }
        }
        WPcl::Plus(a, b) => o_add(sr, value(a, gamma, sr), value(b, gamma, sr)),
        WPcl::Times(a, b) => o_mul(sr, value(a, gamma, sr), value(b, gamma, sr)),
        WPcl::Coalesce(a, b) => splits(gamma)
            .iter()
            .map(|(g1, g2)| o_mul(sr, value(a, g1, sr), value(b, g2, sr)))
            .fold(o_zero(sr), |s, x| o_add(sr, s, x)),
        WPcl::Closure(a) => (1..1u32 << gamma.len())
            .map(|sel| value(a, &sub(gamma, sel), sr))
            .fold(o_zero(sr), |s, x| o_add(sr, s, x)),
    }
}

fn weight(sr: SemiringId) -> BoxedStrategy<Value> {
    let v = move |x: f64| sr.value(x).unwrap();
    match sr {
        SemiringId::Natural => (0u64..=3).prop_map(Value::Nat).boxed(),
        SemiringId::Boolean => any::<bool>().prop_map(Value::Bool).boxed(),
        SemiringId::MinPlus | SemiringId::MaxPlus => prop_oneof![
            1 => Just(sr.zero()),
            6 => (0u8..10).prop_map(move |k| v(k as f64)),
        ]
        .boxed(),
        _ => (0u8..=4).prop_map(move |k| v(k as f64 / 4.0)).boxed(),
    }
}

fn pil(ports: usize) -> impl Strategy<Value = Pil<usize>> {
    let leaf = prop_oneof![1 => Just(Pil::True), 4 => (0..ports).prop_map(Pil::atom)];
    leaf.prop_recursive(3, 8, 2, |x| {
        prop_oneof![
            x.clone().prop_map(Pil::negate),
            (x.clone(), x.clone()).prop_map(|(a, b)| a.or(b)),
            (x.clone(), x).prop_map(|(a, b)| a.and(b)),
        ]
    })
}

fn pcl(ports: usize) -> impl Strategy<Value = Pcl> {
    let leaf = prop_oneof![1 => Just(Pcl::True), 4 => pil(ports).prop_map(Pcl::inter)];
    leaf.prop_recursive(2, 6, 2, |x| {
        prop_oneof![
            x.clone().prop_map(Pcl::not),
            (x.clone(), x.clone()).prop_map(|(a, b)| a.union(b)),
            (x.clone(), x).prop_map(|(a, b)| a.coalesce(b)),
        ]
    })
}

fn wpcl(ports: usize, sr: SemiringId) -> impl Strategy<Value = WPcl> {
    let leaf = prop_oneof![weight(sr).prop_map(WPcl::Const), pcl(ports).prop_map(WPcl::Bool)];
    leaf.prop_recursive(3, 10, 2, |x| {
        prop_oneof![
            (x.clone(), x.clone()).prop_map(|(a, b)| a.plus(b)),
            (x.clone(), x.clone()).prop_map(|(a, b)| a.times(b)),
            (x.clone(), x.clone()).prop_map(|(a, b)| a.coalesce(b)),
            x.prop_map(WPcl::closure),
        ]
    })
}

/// A nonempty configuration over `ports` with at most `max_len` interactions.
fn gamma(ports: usize, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    let inters: Vec<u64> = (1..1u64 << ports).collect();
    let max_len = max_len.min(inters.len());
    proptest::sample::subsequence(inters, 1..=max_len)
}

fn semiring() -> impl Strategy<Value = SemiringId> {
    proptest::sample::select(SemiringId::ALL.to_vec())
}

fn instance() -> impl Strategy<Value = (SemiringId, usize, WPcl, Vec<u64>)> {
    (semiring(), 2usize..=3).prop_flat_map(|(sr, n)| (Just(sr), Just(n), wpcl(n, sr), gamma(n, 4)))
}

fn all_gammas(ports: usize) -> Vec<Vec<u64>> {
    let inters: Vec<u64> = (1..1u64 << ports).collect();
    (1..1u32 << inters.len()).map(|sel| sub(&inters, sel)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn every_strategy_matches_the_oracle((sr, _n, z, g) in instance()) {
        let c = Configuration::from_masks(g.iter().copied()).unwrap();
        let want = value(&z, &g, sr);
        let caps = Caps::default();
        for s in [EvalStrategy::Direct, EvalStrategy::Sparse, EvalStrategy::Auto] {
            let got = evaluate(&z, &c, sr, s, &caps).unwrap();
            prop_assert_eq!(got.semiring(), sr);
            prop_assert!(close(got.as_f64(), want), "{:?}: got {} want {} for {:?}", s, got, want, z);
        }
    }

    #[test]
    fn satisfaction_matches_the_oracle(f in pcl(3), g in gamma(3, 4)) {
        let c = Configuration::from_masks(g.iter().copied()).unwrap();
        prop_assert_eq!(pcl_satisfies(&c, &f).unwrap(), sat(&f, &g));
    }

    #[test]
    fn semiring_operations((sr, a, b, c) in semiring().prop_flat_map(|sr| (Just(sr), weight(sr), weight(sr), weight(sr)))) {
        prop_assert!(close(a.add(b).as_f64(), o_add(sr, a.as_f64(), b.as_f64())));
        prop_assert!(close(a.mul(b).as_f64(), o_mul(sr, a.as_f64(), b.as_f64())));
        prop_assert!(a.add(b).approx_eq(&b.add(a), 1e-9));
        prop_assert!(a.mul(b).approx_eq(&b.mul(a), 1e-9));
        prop_assert!(a.add(b).add(c).approx_eq(&a.add(b.add(c)), 1e-9));
        prop_assert!(a.mul(b).mul(c).approx_eq(&a.mul(b.mul(c)), 1e-9));
        prop_assert!(a.mul(b.add(c)).approx_eq(&a.mul(b).add(a.mul(c)), 1e-9));
        prop_assert_eq!(a.add(sr.zero()), a);
        prop_assert_eq!(a.mul(sr.one()), a);
        prop_assert!(a.mul(sr.zero()).is_zero());
        if sr.is_idempotent() {
            prop_assert_eq!(a.add(a), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn normal_form_agrees_everywhere((sr, z) in semiring().prop_flat_map(|sr| (Just(sr), wpcl(2, sr)))) {
        let fnf = fnf_of_wpcl(&z, 2, sr, &Caps::default()).unwrap();
        for g in all_gammas(2) {
            let c = Configuration::from_masks(g.iter().copied()).unwrap();
            let got = fnf_eval(&fnf, &c);
            prop_assert!(close(got.as_f64(), value(&z, &g, sr)), "at {:?}", g);
        }
    }

    #[test]
    fn counterexamples_are_genuine((sr, z1, z2) in semiring().prop_flat_map(|sr| (Just(sr), wpcl(2, sr), wpcl(2, sr)))) {
        let found = wpcl_counterexample(&z1, &z2, 2, sr, 1e-9, &Caps::default()).unwrap();
        let differs: Vec<Vec<u64>> = all_gammas(2)
            .into_iter()
            .filter(|g| !close(value(&z1, g, sr), value(&z2, g, sr)))
            .collect();
        match found {
            None => prop_assert!(differs.is_empty()),
            Some(w) => {
                let mut g: Vec<u64> = w.gamma.iter().map(|a| a.mask()).collect();
                g.sort();
                prop_assert!(differs.contains(&g), "{:?} not in {:?}", g, differs);
                prop_assert!(close(w.left.as_f64(), value(&z1, &g, sr)));
                prop_assert!(close(w.right.as_f64(), value(&z2, &g, sr)));
            }
        }
    }
}

