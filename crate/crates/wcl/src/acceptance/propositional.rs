use wcl_core::interaction::{enumerate_configurations, Configuration, PortUniverse};
use wcl_core::pcl::{pcl_satisfies_with, Pcl};
use wcl_core::pil::Pil;

use super::{Options, Outcome};
use crate::gen::Gen;
use crate::syntax::print_pcl;

struct Inputs {
    f: [Pcl; 3],
    phi: Pil<usize>,
    psi: Pil<usize>,
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Equivalent,
    Implies,
}

struct Law {
    name: &'static str,
    kind: Kind,
    /// Two or more formulas; each consecutive pair is compared.
    sides: fn(&Inputs) -> Vec<Pcl>,
}

fn inter(p: &Pil<usize>) -> Pcl {
    Pcl::inter(p.clone())
}

const LAWS: &[Law] = &[
    Law {
        name: "interaction conjunction is intersection",
        kind: Kind::Equivalent,
        sides: |i| vec![Pcl::inter(i.phi.clone().and(i.psi.clone())), inter(&i.phi).meet(inter(&i.psi))],
    },
    Law {
        name: "interaction formula distributes over coalescing",
        kind: Kind::Equivalent,
        sides: |i| {
            let [a, b, _] = i.f.clone();
            let phi = || inter(&i.phi);
            vec![phi().meet(a.clone().coalesce(b.clone())), phi().meet(a).coalesce(phi().meet(b))]
        },
    },
    Law {
        name: "coalescing distributes over union",
        kind: Kind::Equivalent,
        sides: |i| {
            let [a, b, c] = i.f.clone();
            vec![a.clone().coalesce(b.clone().union(c.clone())), a.clone().coalesce(b).union(a.coalesce(c))]
        },
    },
    Law {
        name: "disjunction distributes over union",
        kind: Kind::Equivalent,
        sides: |i| {
            let [a, b, c] = i.f.clone();
            vec![a.clone().disj(b.clone().union(c.clone())), a.clone().disj(b).union(a.disj(c))]
        },
    },
    Law {
        name: "coalescing into a conjunction",
        kind: Kind::Implies,
        sides: |i| {
            let [a, b, c] = i.f.clone();
            vec![a.clone().coalesce(b.clone().meet(c.clone())), a.clone().coalesce(b).meet(a.coalesce(c))]
        },
    },
    Law {
        name: "union-closed coalescing distributes over disjunction",
        kind: Kind::Equivalent,
        sides: |i| {
            let [_, b, c] = i.f.clone();
            let a = || inter(&i.phi);
            vec![a().coalesce(b.clone().disj(c.clone())), a().coalesce(b).disj(a().coalesce(c))]
        },
    },
    Law {
        name: "union-closed coalescing is idempotent",
        kind: Kind::Equivalent,
        sides: |i| vec![inter(&i.phi).coalesce(inter(&i.phi)), inter(&i.phi)],
    },
    Law {
        name: "interaction formulas coalesce with themselves",
        kind: Kind::Equivalent,
        sides: |i| vec![inter(&i.psi).coalesce(inter(&i.psi)), inter(&i.psi)],
    },
    Law {
        name: "closure is idempotent",
        kind: Kind::Equivalent,
        sides: |i| vec![i.f[0].clone().closure().closure(), i.f[0].clone().closure()],
    },
    Law {
        name: "a formula implies its closure",
        kind: Kind::Implies,
        sides: |i| vec![i.f[0].clone(), i.f[0].clone().closure()],
    },
    Law {
        name: "dual closure implies the formula",
        kind: Kind::Implies,
        sides: |i| vec![i.f[0].clone().not().closure().not(), i.f[0].clone()],
    },
    Law {
        name: "closure distributes over union and disjunction",
        kind: Kind::Equivalent,
        sides: |i| {
            let [a, b, _] = i.f.clone();
            vec![
                a.clone().union(b.clone()).closure(),
                a.clone().closure().union(b.clone().closure()),
                a.disj(b).closure(),
            ]
        },
    },
    Law {
        name: "closure turns coalescing into conjunction",
        kind: Kind::Equivalent,
        sides: |i| {
            let [a, b, _] = i.f.clone();
            vec![
                a.clone().closure().coalesce(b.clone().closure()),
                a.clone().coalesce(b.clone()).closure(),
                a.closure().meet(b.closure()),
            ]
        },
    },
];

const INSTANCES: usize = 200;

pub(super) fn laws(opts: &Options) -> Outcome {
    let mut out = Outcome::default();
    let mut g = Gen::new(opts.seed ^ 0x9c1);
    let u = PortUniverse::from_names(&["p", "q"]).expect("distinct ports");
    let all = enumerate_configurations(2, opts.caps.enum_ports).expect("two ports");
    for law in LAWS {
        for k in 0..INSTANCES {
            let i = Inputs {
                f: [g.pcl(2, 3), g.pcl(2, 3), g.pcl(2, 3)],
                phi: g.pil(2, 2),
                psi: g.pil(2, 2),
            };
            let sides = (law.sides)(&i);
            for pair in sides.windows(2) {
                for gamma in &all {
                    let l = out.ok(pcl_satisfies_with(gamma, &pair[0], &opts.caps), || format!("{}, instance {k}", law.name));
                    let r = out.ok(pcl_satisfies_with(gamma, &pair[1], &opts.caps), || format!("{}, instance {k}", law.name));
                    let (Some(l), Some(r)) = (l, r) else { continue };
                    let ok = match law.kind {
                        Kind::Equivalent => l == r,
                        Kind::Implies => !l || r,
                    };
                    out.check(ok, || describe(law.name, &pair[0], &pair[1], gamma, l, r, &u));
                }
            }
        }
    }
    out
}

fn describe(name: &str, a: &Pcl, b: &Pcl, gamma: &Configuration, l: bool, r: bool, u: &PortUniverse) -> String {
    format!(
        "{name}: {}  vs  {}\nat {}: {l} vs {r}",
        print_pcl(a, u),
        print_pcl(b, u),
        u.fmt_configuration(gamma)
    )
}
