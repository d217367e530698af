//! Canonical printers. Output parses back to the printed AST.

use wcl_core::focl::{Binder, Focl, PortRef, Predicate, WFocl};
use wcl_core::interaction::PortUniverse;
use wcl_core::pcl::{Pcl, WPcl};
use wcl_core::pil::Pil;
use wcl_core::semiring::Value;

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const COAL: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const QUANT: u8 = 0;

fn wrap(s: String, own: u8, min: u8) -> String {
    if own < min {
        format!("({s})")
    } else {
        s
    }
}

fn pil_str<A: Clone>(p: &Pil<A>, name: &dyn Fn(&A) -> String, min: u8) -> String {
    // Inside braces: `|` is 1, `&` is 2, `!` is 3.
    if p.is_false() {
        return "false".into();
    }
    if let Some((a, b)) = p.as_and() {
        return wrap(format!("{} & {}", pil_str(&a, name, 2), pil_str(&b, name, 3)), 2, min);
    }
    match p {
        Pil::True => "true".into(),
        Pil::Atom(a) => name(a),
        Pil::Not(x) => format!("!{}", pil_str(x, name, 3)),
        Pil::Or(a, b) => wrap(format!("{} | {}", pil_str(a, name, 1), pil_str(b, name, 2)), 1, min),
    }
}

/// A `.pil` formula.
pub fn print_pil(p: &Pil<usize>, u: &PortUniverse) -> String {
    pil_str(p, &|&i| u.port(i).to_string(), 0)
}

/// `0` and `1` are read back as the semiring constants, so carrier values
/// that merely display that way get a decimal point.
fn weight_str(k: &Value) -> String {
    let sr = k.semiring();
    if *k == sr.zero() {
        return "0".into();
    }
    if *k == sr.one() {
        return "1".into();
    }
    match k.to_string() {
        s if s == "0" || s == "1" => format!("{s}.0"),
        s => s,
    }
}

fn bin(l: String, op: &str, r: String, own: u8, min: u8) -> String {
    wrap(format!("{l} {op} {r}"), own, min)
}

fn pcl_str(f: &Pcl, u: &PortUniverse, min: u8) -> String {
    if let Some((a, b)) = f.as_disj() {
        return bin(pcl_str(a, u, OR), "or", pcl_str(b, u, OR + 1), OR, min);
    }
    if let Some((a, b)) = f.as_meet() {
        return bin(pcl_str(a, u, AND), "/\\", pcl_str(b, u, AND + 1), AND, min);
    }
    if let Some((a, b)) = f.as_implies() {
        return bin(pcl_str(a, u, IMPLIES + 1), "=>", pcl_str(b, u, IMPLIES), IMPLIES, min);
    }
    if let Some(a) = f.as_closure() {
        return format!("~{}", pcl_str(a, u, UNARY));
    }
    match f {
        Pcl::True => "true".into(),
        Pcl::Inter(phi) => format!("{{{}}}", print_pil(phi, u)),
        Pcl::Not(x) => wrap(format!("not {}", pcl_str(x, u, UNARY)), UNARY, min),
        Pcl::Union(a, b) => bin(pcl_str(a, u, OR), "\\/", pcl_str(b, u, OR + 1), OR, min),
        Pcl::Coalesce(a, b) => bin(pcl_str(a, u, COAL), "+", pcl_str(b, u, COAL + 1), COAL, min),
    }
}

pub fn print_pcl(f: &Pcl, u: &PortUniverse) -> String {
    pcl_str(f, u, 0)
}

/// Recognizes Z₁ ⊕ Z₂ ⊕ (Z₁ ⊎ Z₂).
fn as_wdisj_focl(z: &WFocl) -> Option<(&WFocl, &WFocl)> {
    if let WFocl::Plus(s, c) = z {
        if let (WFocl::Plus(a, b), WFocl::Coalesce(a2, b2)) = (s.as_ref(), c.as_ref()) {
            if a == a2 && b == b2 {
                return Some((a, b));
            }
        }
    }
    None
}

fn as_guard_focl(z: &WFocl) -> Option<(&Focl, &WFocl)> {
    if let WFocl::Plus(l, r) = z {
        if let (WFocl::Bool(Focl::Not(f)), WFocl::Times(b, z)) = (l.as_ref(), r.as_ref()) {
            if let WFocl::Bool(f2) = b.as_ref() {
                if **f == *f2 {
                    return Some((f2, z));
                }
            }
        }
    }
    None
}

fn wpcl_str(z: &WPcl, u: &PortUniverse, min: u8) -> String {
    if let Some((f, body)) = z.as_guard() {
        return format!("guard({}, {})", pcl_str(f, u, 0), wpcl_str(body, u, 0));
    }
    if let Some((a, b)) = z.as_wdisj() {
        // Two unweighted operands would reparse as the unweighted `or`.
        if !(matches!(a, WPcl::Bool(_)) && matches!(b, WPcl::Bool(_))) {
            return bin(wpcl_str(a, u, OR), "or", wpcl_str(b, u, OR + 1), OR, min);
        }
    }
    match z {
        WPcl::Const(k) => weight_str(k),
        WPcl::Bool(f) => pcl_str(f, u, min),
        WPcl::Plus(a, b) => bin(wpcl_str(a, u, OR), "(+)", wpcl_str(b, u, OR + 1), OR, min),
        WPcl::Times(a, b) => bin(wpcl_str(a, u, AND), "(*)", wpcl_str(b, u, AND + 1), AND, min),
        WPcl::Coalesce(a, b) => bin(wpcl_str(a, u, COAL), "(#)", wpcl_str(b, u, COAL + 1), COAL, min),
        WPcl::Closure(x) => format!("close({})", wpcl_str(x, u, 0)),
    }
}

pub fn print_wpcl(z: &WPcl, u: &PortUniverse) -> String {
    wpcl_str(z, u, 0)
}

fn port_ref(r: &PortRef) -> String {
    format!("{}.{}", r.comp.name(), r.port)
}

fn pred_str(p: &Predicate, nested: bool) -> String {
    match p {
        Predicate::True => "true".into(),
        Predicate::Eq(a, b) => format!("{} = {}", a.name(), b.name()),
        Predicate::Neq(a, b) => format!("{} != {}", a.name(), b.name()),
        Predicate::And(a, b) => {
            let s = format!("{} && {}", pred_str(a, false), pred_str(b, true));
            if nested {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

fn binder_str(kw: &str, b: &Binder) -> String {
    match b.pred {
        Predicate::True => format!("{kw} {}:{} .", b.var, b.ctype),
        ref p => format!("{kw} {}:{} where {} .", b.var, b.ctype, pred_str(p, false)),
    }
}

fn as_disj_focl(f: &Focl) -> Option<(&Focl, &Focl)> {
    if let Focl::Union(s, c) = f {
        if let (Focl::Union(a, b), Focl::Coalesce(a2, b2)) = (s.as_ref(), c.as_ref()) {
            if a == a2 && b == b2 {
                return Some((a, b));
            }
        }
    }
    None
}

fn focl_str(f: &Focl, min: u8) -> String {
    if let Some((a, b)) = as_disj_focl(f) {
        return bin(focl_str(a, OR), "or", focl_str(b, OR + 1), OR, min);
    }
    if let Some((b, body)) = f.as_forall() {
        return wrap(format!("{} {}", binder_str("forall", b), focl_str(body, 0)), QUANT, min);
    }
    if let Some((a, b)) = f.as_meet() {
        return bin(focl_str(a, AND), "/\\", focl_str(b, AND + 1), AND, min);
    }
    if let Some((a, b)) = f.as_implies() {
        return bin(focl_str(a, IMPLIES + 1), "=>", focl_str(b, IMPLIES), IMPLIES, min);
    }
    if let Some(a) = f.as_closure() {
        return format!("~{}", focl_str(a, UNARY));
    }
    match f {
        Focl::True => "true".into(),
        Focl::Inter(phi) => format!("{{{}}}", pil_str(phi, &port_ref, 0)),
        Focl::Not(x) => wrap(format!("not {}", focl_str(x, UNARY)), UNARY, min),
        Focl::Union(a, b) => bin(focl_str(a, OR), "\\/", focl_str(b, OR + 1), OR, min),
        Focl::Coalesce(a, b) => bin(focl_str(a, COAL), "+", focl_str(b, COAL + 1), COAL, min),
        Focl::Exists(b, body) => wrap(format!("{} {}", binder_str("exists", b), focl_str(body, 0)), QUANT, min),
        Focl::Sum(b, body) => wrap(format!("{} {}", binder_str("sum", b), focl_str(body, 0)), QUANT, min),
    }
}

pub fn print_focl(f: &Focl) -> String {
    focl_str(f, 0)
}

fn wfocl_str(z: &WFocl, min: u8) -> String {
    if let Some((f, body)) = as_guard_focl(z) {
        return format!("guard({}, {})", focl_str(f, 0), wfocl_str(body, 0));
    }
    if let Some((a, b)) = as_wdisj_focl(z) {
        if !(matches!(a, WFocl::Bool(_)) && matches!(b, WFocl::Bool(_))) {
            return bin(wfocl_str(a, OR), "or", wfocl_str(b, OR + 1), OR, min);
        }
    }
    match z {
        WFocl::Const(k) => weight_str(k),
        WFocl::Bool(f) => focl_str(f, min),
        WFocl::Plus(a, b) => bin(wfocl_str(a, OR), "(+)", wfocl_str(b, OR + 1), OR, min),
        WFocl::Times(a, b) => bin(wfocl_str(a, AND), "(*)", wfocl_str(b, AND + 1), AND, min),
        WFocl::Coalesce(a, b) => bin(wfocl_str(a, COAL), "(#)", wfocl_str(b, COAL + 1), COAL, min),
        WFocl::Closure(x) => format!("close({})", wfocl_str(x, 0)),
        WFocl::OplusQ(b, x) => wrap(format!("{} {}", binder_str("Oplus", b), wfocl_str(x, 0)), QUANT, min),
        WFocl::OtimesQ(b, x) => wrap(format!("{} {}", binder_str("Otimes", b), wfocl_str(x, 0)), QUANT, min),
        WFocl::OuplusQ(b, x) => wrap(format!("{} {}", binder_str("Ouplus", b), wfocl_str(x, 0)), QUANT, min),
        WFocl::When(p, x) => format!("when({}, {})", pred_str(p, false), wfocl_str(x, 0)),
    }
}

pub fn print_wfocl(z: &WFocl) -> String {
    wfocl_str(z, 0)
}
