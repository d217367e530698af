use wcl_core::eval::{evaluate, wpcl_counterexample, Strategy};
use wcl_core::interaction::{Configuration, PortUniverse};
use wcl_core::pcl::{Pcl, WPcl};
use wcl_core::pil::Pil;
use wcl_core::semiring::SemiringId;

use super::{Options, Outcome};
use crate::gen::Gen;
use crate::syntax::print_wpcl;

pub(super) struct Inputs {
    pub z: [WPcl; 3],
    pub phi: Pil<usize>,
    pub sr: SemiringId,
}

pub(super) struct Law {
    pub name: &'static str,
    pub idempotent_only: bool,
    pub sides: fn(&Inputs) -> (WPcl, WPcl),
}

fn zero(i: &Inputs) -> WPcl {
    WPcl::Const(i.sr.zero())
}

pub(super) const LAWS: &[Law] = &[
    Law {
        name: "coalescing is associative",
        idempotent_only: false,
        sides: |i| {
            let [a, b, c] = i.z.clone();
            (a.clone().coalesce(b.clone()).coalesce(c.clone()), a.coalesce(b.coalesce(c)))
        },
    },
    Law {
        name: "zero absorbs coalescing",
        idempotent_only: false,
        sides: |i| (i.z[0].clone().coalesce(zero(i)), zero(i)),
    },
    Law {
        name: "coalescing is commutative",
        idempotent_only: false,
        sides: |i| (i.z[0].clone().coalesce(i.z[1].clone()), i.z[1].clone().coalesce(i.z[0].clone())),
    },
    Law {
        name: "coalescing distributes over sum",
        idempotent_only: false,
        sides: |i| {
            let [a, b, c] = i.z.clone();
            (
                a.clone().coalesce(b.clone().plus(c.clone())),
                a.clone().coalesce(b).plus(a.coalesce(c)),
            )
        },
    },
    Law {
        name: "interaction guard distributes over coalescing",
        idempotent_only: false,
        sides: |i| {
            let phi = || WPcl::Bool(Pcl::inter(i.phi.clone()));
            let [a, b, _] = i.z.clone();
            (phi().times(a.clone().coalesce(b.clone())), phi().times(a).coalesce(phi().times(b)))
        },
    },
    Law {
        name: "closure distributes over sum",
        idempotent_only: false,
        sides: |i| {
            let [a, b, _] = i.z.clone();
            (a.clone().plus(b.clone()).closure(), a.closure().plus(b.closure()))
        },
    },
    Law {
        name: "closure of coalescing is a product of closures",
        idempotent_only: false,
        sides: |i| {
            let [a, b, _] = i.z.clone();
            (a.clone().coalesce(b.clone()).closure(), a.closure().times(b.closure()))
        },
    },
    Law {
        name: "disjunction distributes over sum",
        idempotent_only: true,
        sides: |i| {
            let [a, b, c] = i.z.clone();
            (
                a.clone().wdisj(b.clone().plus(c.clone())),
                a.clone().wdisj(b).plus(a.wdisj(c)),
            )
        },
    },
    Law {
        name: "closure of coalescing is a coalescing of closures",
        idempotent_only: true,
        sides: |i| {
            let [a, b, _] = i.z.clone();
            (a.clone().coalesce(b.clone()).closure(), a.closure().coalesce(b.closure()))
        },
    },
    Law {
        name: "closure is idempotent",
        idempotent_only: true,
        sides: |i| (i.z[0].clone().closure().closure(), i.z[0].clone().closure()),
    },
];

const INSTANCES: usize = 200;
const SAMPLED_GAMMAS: usize = 6;

fn inputs(g: &mut Gen, ports: usize, sr: SemiringId, depth: usize) -> Inputs {
    Inputs {
        z: [g.wpcl(ports, sr, depth), g.wpcl(ports, sr, depth), g.wpcl(ports, sr, depth)],
        phi: g.pil(ports, 2),
        sr,
    }
}

pub(super) fn laws(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let mut g = Gen::new(opts.seed ^ 0x1a35);
    let u2 = PortUniverse::from_names(&["p", "q"]).expect("distinct ports");
    let u3 = PortUniverse::from_names(&["p", "q", "r"]).expect("distinct ports");
    for law in LAWS {
        for sr in SemiringId::ALL.into_iter().filter(|sr| sr.is_idempotent() || !law.idempotent_only) {
            for k in 0..INSTANCES {
                // Every configuration over two ports.
                let i = inputs(&mut g, 2, sr, 2);
                let (l, r) = (law.sides)(&i);
                let found = wpcl_counterexample(&l, &r, 2, sr, opts.tolerance, &opts.caps);
                if let Some(w) = out.ok(found, || format!("{}, {sr}, instance {k}", law.name)) {
                    out.check(w.is_none(), || {
                        let w = w.expect("witness");
                        format!(
                            "{} over {sr}: {}  vs  {}\nat {}: {} vs {}",
                            law.name,
                            print_wpcl(&l, &u2),
                            print_wpcl(&r, &u2),
                            u2.fmt_configuration(&w.gamma),
                            w.left,
                            w.right
                        )
                    });
                }
                // Sampled configurations over three ports.
                let i = inputs(&mut g, 3, sr, 2);
                let (l, r) = (law.sides)(&i);
                for _ in 0..SAMPLED_GAMMAS {
                    let gamma = g.configuration(3, 4);
                    compare(&mut out, law.name, &l, &r, &gamma, &u3, sr, opts);
                }
            }
        }
        if law.idempotent_only {
            match nat_counterexample(law, opts, &u2) {
                Some(note) => out.note(format!("{}: fails over N, {note}", law.name)),
                None => out.check(false, || format!("{}: no counterexample over N found", law.name)),
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn compare(out: &mut Outcome, name: &str, l: &WPcl, r: &WPcl, gamma: &Configuration, u: &PortUniverse, sr: SemiringId, opts: &Options) {
    let lv = out.ok(evaluate(l, gamma, sr, Strategy::Auto, &opts.caps), || format!("{name}, {sr}"));
    let rv = out.ok(evaluate(r, gamma, sr, Strategy::Auto, &opts.caps), || format!("{name}, {sr}"));
    if let (Some(a), Some(b)) = (lv, rv) {
        out.check(a.approx_eq(&b, opts.tolerance), || {
            format!(
                "{name} over {sr}: {}  vs  {}\nat {}: {a} vs {b}",
                print_wpcl(l, u),
                print_wpcl(r, u),
                u.fmt_configuration(gamma)
            )
        });
    }
}

/// Searches small instances over N, constants first, for a configuration
/// where the two sides differ.
pub(super) fn nat_counterexample(law: &Law, opts: &Options, u: &PortUniverse) -> Option<String> {
    let sr = SemiringId::Natural;
    let one = || WPcl::Const(sr.one());
    let mut candidates = vec![Inputs {
        z: [one(), one(), one()],
        phi: Pil::truth(),
        sr,
    }];
    let mut g = Gen::new(opts.seed ^ 0xc0de);
    candidates.extend((0..2000).map(|_| inputs(&mut g, 2, sr, 2)));
    for i in candidates {
        let (l, r) = (law.sides)(&i);
        if let Ok(Some(w)) = wpcl_counterexample(&l, &r, 2, sr, 0.0, &opts.caps) {
            return Some(format!(
                "{}  vs  {}  at {}: {} vs {}",
                print_wpcl(&l, u),
                print_wpcl(&r, u),
                u.fmt_configuration(&w.gamma),
                w.left,
                w.right
            ));
        }
    }
    None
}
