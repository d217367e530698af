use wcl_core::focl::{
    focl_satisfies, focl_satisfies_encoded, matching_components, wfocl_eval_encoded, Binder, Component, ComponentType, Focl, Model, PortRef,
    WFocl, UNIVERSAL_TYPE,
};
use wcl_core::interaction::{enumerate_configurations, Configuration, NamedConfiguration, Port};
use wcl_core::pil::Pil;
use wcl_core::semiring::SemiringId;

use super::{Options, Outcome};
use crate::formats::format_configuration;
use crate::gen::Gen;
use crate::syntax::{print_focl, print_wfocl};

/// Exhaustive over C(P_B) up to this many ports, sampled beyond.
const EXHAUSTIVE_PORTS: usize = 3;
const SAMPLED_GAMMAS: usize = 64;
const INSTANCES: usize = 100;
const WEIGHTED_INSTANCES: usize = 40;

struct Inputs {
    b: Binder,
    /// Open in the binder's variable.
    f1: Focl,
    f2: Focl,
    /// Closed.
    g1: Focl,
    g2: Focl,
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Equivalent,
    Implies,
}

struct Law {
    name: &'static str,
    kind: Kind,
    /// The law assumes at least one component matches the binder.
    nonempty: bool,
    sides: fn(&Inputs) -> Vec<Focl>,
}

const LAWS: &[Law] = &[
    Law {
        name: "closure is idempotent",
        kind: Kind::Equivalent,
        nonempty: false,
        sides: |i| vec![i.g1.clone().closure().closure(), i.g1.clone().closure()],
    },
    Law {
        name: "a formula implies its closure",
        kind: Kind::Implies,
        nonempty: false,
        sides: |i| vec![i.g1.clone(), i.g1.clone().closure()],
    },
    Law {
        name: "dual closure implies the formula",
        kind: Kind::Implies,
        nonempty: false,
        sides: |i| vec![i.g1.clone().not().closure().not(), i.g1.clone()],
    },
    Law {
        name: "closure distributes over union",
        kind: Kind::Equivalent,
        nonempty: false,
        sides: |i| vec![i.g1.clone().union(i.g2.clone()).closure(), i.g1.clone().closure().union(i.g2.clone().closure())],
    },
    Law {
        name: "closure distributes over coalescing",
        kind: Kind::Equivalent,
        nonempty: false,
        sides: |i| vec![i.g1.clone().coalesce(i.g2.clone()).closure(), i.g1.clone().closure().coalesce(i.g2.clone().closure())],
    },
    Law {
        name: "closure commutes with exists",
        kind: Kind::Equivalent,
        nonempty: false,
        sides: |i| vec![Focl::exists(i.b.clone(), i.f1.clone()).closure(), Focl::exists(i.b.clone(), i.f1.clone().closure())],
    },
    Law {
        name: "closure commutes with sum and becomes forall",
        kind: Kind::Equivalent,
        nonempty: true,
        sides: |i| {
            vec![
                Focl::sum(i.b.clone(), i.f1.clone()).closure(),
                Focl::sum(i.b.clone(), i.f1.clone().closure()),
                Focl::forall(i.b.clone(), i.f1.clone().closure()),
            ]
        },
    },
    Law {
        name: "exists distributes over union",
        kind: Kind::Equivalent,
        nonempty: false,
        sides: |i| {
            vec![
                Focl::exists(i.b.clone(), i.f1.clone().union(i.f2.clone())),
                Focl::exists(i.b.clone(), i.f1.clone()).union(Focl::exists(i.b.clone(), i.f2.clone())),
            ]
        },
    },
    Law {
        name: "forall distributes over conjunction",
        kind: Kind::Equivalent,
        nonempty: false,
        sides: |i| {
            vec![
                Focl::forall(i.b.clone(), i.f1.clone().meet(i.f2.clone())),
                Focl::forall(i.b.clone(), i.f1.clone()).meet(Focl::forall(i.b.clone(), i.f2.clone())),
            ]
        },
    },
    Law {
        name: "sum distributes over coalescing",
        kind: Kind::Equivalent,
        nonempty: true,
        sides: |i| {
            vec![
                Focl::sum(i.b.clone(), i.f1.clone().coalesce(i.f2.clone())),
                Focl::sum(i.b.clone(), i.f1.clone()).coalesce(Focl::sum(i.b.clone(), i.f2.clone())),
            ]
        },
    },
    Law {
        name: "closed sums meet as forall of closed coalescing",
        kind: Kind::Equivalent,
        nonempty: true,
        sides: |i| {
            vec![
                Focl::sum(i.b.clone(), i.f1.clone())
                    .closure()
                    .meet(Focl::sum(i.b.clone(), i.f2.clone()).closure()),
                Focl::forall(i.b.clone(), i.f1.clone().coalesce(i.f2.clone()).closure()),
            ]
        },
    },
    Law {
        name: "forall of coalescing implies coalesced sums",
        kind: Kind::Implies,
        nonempty: true,
        sides: |i| {
            vec![
                Focl::forall(i.b.clone(), i.f1.clone().coalesce(i.f2.clone())),
                Focl::sum(i.b.clone(), i.f1.clone()).coalesce(Focl::sum(i.b.clone(), i.f2.clone())),
            ]
        },
    },
    Law {
        name: "sum of conjunction implies conjunction of sums",
        kind: Kind::Implies,
        nonempty: true,
        sides: |i| {
            vec![
                Focl::sum(i.b.clone(), i.f1.clone().meet(i.f2.clone())),
                Focl::sum(i.b.clone(), i.f1.clone()).meet(Focl::sum(i.b.clone(), i.f2.clone())),
            ]
        },
    },
];

fn gammas(g: &mut Gen, model: &Model, caps: &wcl_core::Caps) -> Vec<Configuration> {
    let n = model.universe().len();
    if n <= EXHAUSTIVE_PORTS {
        enumerate_configurations(n, caps.enum_ports).expect("small universe")
    } else {
        (0..SAMPLED_GAMMAS).map(|_| g.configuration(n, 4)).collect()
    }
}

/// A binder, retried until at least one component matches when `nonempty`.
fn binder(g: &mut Gen, model: &Model, nonempty: bool) -> Binder {
    for _ in 0..20 {
        let b = g.binder(model, &Vec::new());
        if !nonempty || matching_components(model, &b, &[]).is_ok_and(|m| !m.is_empty()) {
            return b;
        }
    }
    Binder::new(g.fresh_var(), UNIVERSAL_TYPE)
}

pub(super) fn laws(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let mut g = Gen::new(opts.seed ^ 0xf0c1);
    for law in LAWS {
        for k in 0..INSTANCES {
            let model = g.model(3);
            let b = binder(&mut g, &model, law.nonempty);
            let scope = vec![(b.var.clone(), b.ctype.clone())];
            let i = Inputs {
                f1: g.focl_in(&model, &scope, 2),
                f2: g.focl_in(&model, &scope, 2),
                g1: g.focl(&model, 2),
                g2: g.focl(&model, 2),
                b,
            };
            let sides = (law.sides)(&i);
            for gamma in gammas(&mut g, &model, &opts.caps) {
                for pair in sides.windows(2) {
                    let l = out.ok(focl_satisfies_encoded(&model, &gamma, &pair[0], &opts.caps), || format!("{}, instance {k}", law.name));
                    let r = out.ok(focl_satisfies_encoded(&model, &gamma, &pair[1], &opts.caps), || format!("{}, instance {k}", law.name));
                    let (Some(l), Some(r)) = (l, r) else { continue };
                    let ok = match law.kind {
                        Kind::Equivalent => l == r,
                        Kind::Implies => !l || r,
                    };
                    out.check(ok, || {
                        format!(
                            "{}: {}  vs  {}\nat {}: {l} vs {r}",
                            law.name,
                            print_focl(&pair[0]),
                            print_focl(&pair[1]),
                            model.universe().fmt_configuration(&gamma)
                        )
                    });
                }
            }
        }
    }
    counterexamples(&mut out);
    weighted(&mut out, &mut g, opts);
    out
}

fn named(interactions: &[&[(&str, &str)]]) -> NamedConfiguration {
    interactions
        .iter()
        .map(|a| a.iter().map(|&(c, p)| Port::qualified(c, p)).collect())
        .collect()
}

fn atom(r: PortRef) -> Pil<PortRef> {
    Pil::atom(r)
}

/// The two configurations that separate the sides of the one-way laws.
fn counterexamples(out: &mut Outcome) {
    // forall c:T.(F1 + F2) vs (sum c:T.F1) + (sum c:T.F2)
    let model = Model::new(
        vec![ComponentType::new("T", ["p"])],
        vec![Component::new("c1", "T"), Component::new("c2", "T")],
    )
    .expect("valid model");
    let f1 = Focl::inter(atom(PortRef::var("c", "p"))).coalesce(Focl::inter(atom(PortRef::comp("c1", "p"))));
    let f2 = Focl::inter(atom(PortRef::comp("c1", "p")));
    let b = Binder::new("c", "T");
    let strong = Focl::forall(b.clone(), f1.clone().coalesce(f2.clone()));
    let weak = Focl::sum(b.clone(), f1).coalesce(Focl::sum(b, f2));
    let gamma = named(&[&[("c1", "p")], &[("c2", "p")]]);
    separate(out, "forall of coalescing", &model, &gamma, &strong, &weak);

    // sum s:T1.(F1 /\ F2) vs (sum s:T1.F1) /\ (sum s:T1.F2)
    let model = Model::new(
        vec![ComponentType::new("T1", ["p"]), ComponentType::new("T2", ["q"])],
        vec![Component::new("b", "T1"), Component::new("c", "T1"), Component::new("d", "T2")],
    )
    .expect("valid model");
    let spdq = || Focl::inter(atom(PortRef::var("s", "p")).and(atom(PortRef::comp("d", "q"))));
    let f1 = spdq();
    let f2 = Focl::inter(atom(PortRef::comp("c", "p"))).coalesce(spdq());
    let b = Binder::new("s", "T1");
    let strong = Focl::sum(b.clone(), f1.clone().meet(f2.clone()));
    let weak = Focl::sum(b.clone(), f1).meet(Focl::sum(b, f2));
    let gamma = named(&[&[("b", "p"), ("d", "q")], &[("c", "p"), ("d", "q")]]);
    separate(out, "sum of conjunction", &model, &gamma, &strong, &weak);
}

fn separate(out: &mut Outcome, name: &str, model: &Model, gamma: &NamedConfiguration, strong: &Focl, weak: &Focl) {
    let s = out.ok(focl_satisfies(model, gamma, strong), || name.to_string());
    let w = out.ok(focl_satisfies(model, gamma, weak), || name.to_string());
    if let (Some(s), Some(w)) = (s, w) {
        out.check(!s && w, || {
            format!(
                "{name} at {}: {} is {s}, {} is {w}; expected false and true",
                format_configuration(gamma),
                print_focl(strong),
                print_focl(weak)
            )
        });
        if !s && w {
            out.note(format!(
                "{name}: {} holds and {} fails at {}",
                print_focl(weak),
                print_focl(strong),
                format_configuration(gamma)
            ));
        }
    }
}

struct WLaw {
    name: &'static str,
    nonempty: bool,
    sides: fn(&Binder, &WFocl, &WFocl) -> (WFocl, WFocl),
}

const WEIGHTED_LAWS: &[WLaw] = &[
    WLaw {
        name: "closure commutes with the sum quantifier",
        nonempty: false,
        sides: |b, z, _| (WFocl::oplus(b.clone(), z.clone()).closure(), WFocl::oplus(b.clone(), z.clone().closure())),
    },
    WLaw {
        name: "sum quantifier distributes over sum",
        nonempty: false,
        sides: |b, z1, z2| {
            (
                WFocl::oplus(b.clone(), z1.clone().plus(z2.clone())),
                WFocl::oplus(b.clone(), z1.clone()).plus(WFocl::oplus(b.clone(), z2.clone())),
            )
        },
    },
    WLaw {
        name: "product quantifier distributes over product",
        nonempty: false,
        sides: |b, z1, z2| {
            (
                WFocl::otimes(b.clone(), z1.clone().times(z2.clone())),
                WFocl::otimes(b.clone(), z1.clone()).times(WFocl::otimes(b.clone(), z2.clone())),
            )
        },
    },
    WLaw {
        name: "coalescing quantifier distributes over coalescing",
        nonempty: true,
        sides: |b, z1, z2| {
            (
                WFocl::ouplus(b.clone(), z1.clone().coalesce(z2.clone())),
                WFocl::ouplus(b.clone(), z1.clone()).coalesce(WFocl::ouplus(b.clone(), z2.clone())),
            )
        },
    },
];

fn weighted(out: &mut Outcome, g: &mut Gen, opts: &Options) {
    for law in WEIGHTED_LAWS {
        for sr in SemiringId::ALL {
            for k in 0..WEIGHTED_INSTANCES {
                let model = g.model(3);
                let b = binder(g, &model, law.nonempty);
                let scope = vec![(b.var.clone(), b.ctype.clone())];
                let z1 = g.wfocl_in(&model, &scope, sr, 2);
                let z2 = g.wfocl_in(&model, &scope, sr, 2);
                let (l, r) = (law.sides)(&b, &z1, &z2);
                let n = model.universe().len();
                for _ in 0..8 {
                    let gamma = g.configuration(n, 4);
                    let lv = out.ok(wfocl_eval_encoded(&l, &model, &gamma, sr, &opts.caps), || format!("{}, {sr}, instance {k}", law.name));
                    let rv = out.ok(wfocl_eval_encoded(&r, &model, &gamma, sr, &opts.caps), || format!("{}, {sr}, instance {k}", law.name));
                    let (Some(a), Some(c)) = (lv, rv) else { continue };
                    out.check(a.approx_eq(&c, opts.tolerance), || {
                        format!(
                            "{} over {sr}: {}  vs  {}\nat {}: {a} vs {c}",
                            law.name,
                            print_wfocl(&l),
                            print_wfocl(&r),
                            model.universe().fmt_configuration(&gamma)
                        )
                    });
                }
            }
        }
    }
}
