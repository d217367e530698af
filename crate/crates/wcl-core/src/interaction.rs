//! Ports, interactions and configurations over a finite port universe.
//!
//! An interaction is a bitmask over the indices of a [`PortUniverse`], so at
//! most 64 ports are supported. Ports are kept sorted by `(owner, name)`,
//! which makes index order and canonical print order coincide.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Default cap on |P| for enumerating C(P).
pub const DEFAULT_CONFIG_ENUM_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub owner: Option<String>,
    pub name: String,
}

impl Port {
    pub fn new(name: impl Into<String>) -> Self {
        Port {
            owner: None,
            name: name.into(),
        }
    }

    pub fn qualified(owner: impl Into<String>, name: impl Into<String>) -> Self {
        Port {
            owner: Some(owner.into()),
            name: name.into(),
        }
    }

    /// `c.p` becomes a qualified port, anything else a plain one.
    pub fn parse(text: &str) -> Self {
        match text.split_once('.') {
            Some((owner, name)) => Port::qualified(owner, name),
            None => Port::new(text),
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.owner {
            Some(o) => write!(f, "{o}.{}", self.name),
            None => f.write_str(&self.name),
        }
    }
}

/// A named configuration: a set of sets of ports, not yet checked against a universe.
pub type NamedConfiguration = BTreeSet<BTreeSet<Port>>;

/// A finite, canonically ordered set of ports.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PortUniverse {
    ports: Vec<Port>,
}

impl PortUniverse {
    pub fn new<I: IntoIterator<Item = Port>>(ports: I) -> Result<Self> {
        let mut ports: Vec<Port> = ports.into_iter().collect();
        ports.sort();
        for w in ports.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePort(w[0].to_string()));
            }
        }
        if ports.len() > 64 {
            return Err(Error::TooManyPorts(ports.len()));
        }
        if let Some(p) = ports.iter().find(|p| p.name.is_empty()) {
            return Err(Error::UnknownPort(p.to_string()));
        }
        Ok(PortUniverse { ports })
    }

    /// Universe from port names such as `p`, `q` or `b1.m`.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|s| Port::parse(s.as_ref().trim())))
    }

    pub fn len(&self) -> usize {
        self.ports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ports.is_empty()
    }

    pub fn ports(&self) -> &[Port] {
        &self.ports
    }

    pub fn port(&self, index: usize) -> &Port {
        &self.ports[index]
    }

    pub fn index_of(&self, port: &Port) -> Option<usize> {
        self.ports.binary_search(port).ok()
    }

    pub fn index_of_name(&self, name: &str) -> Result<usize> {
        self.index_of(&Port::parse(name))
            .ok_or_else(|| Error::UnknownPort(name.to_string()))
    }

    /// Mask with every port set.
    pub fn full_mask(&self) -> u64 {
        low_bits(self.ports.len())
    }

    pub fn interaction<S: AsRef<str>>(&self, names: &[S]) -> Result<Interaction> {
        let mut mask = 0u64;
        for n in names {
            mask |= 1 << self.index_of_name(n.as_ref())?;
        }
        Interaction::new(mask).ok_or(Error::EmptyInteraction)
    }

    pub fn configuration<S: AsRef<str>>(&self, interactions: &[&[S]]) -> Result<Configuration> {
        let inters = interactions
            .iter()
            .map(|a| self.interaction(a))
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(inters)
    }

    /// Encodes a named configuration. Fails on ports outside the universe and on empty sets.
    pub fn encode(&self, named: &NamedConfiguration) -> Result<Configuration> {
        let mut inters = Vec::with_capacity(named.len());
        for a in named {
            let mut mask = 0u64;
            for p in a {
                let i = self.index_of(p).ok_or_else(|| Error::UnknownPort(p.to_string()))?;
                mask |= 1 << i;
            }
            inters.push(Interaction::new(mask).ok_or(Error::EmptyInteraction)?);
        }
        Configuration::new(inters)
    }

    pub fn decode(&self, gamma: &Configuration) -> NamedConfiguration {
        gamma
            .iter()
            .map(|a| a.ports().map(|i| self.ports[i].clone()).collect())
            .collect()
    }

    pub fn fmt_interaction(&self, a: Interaction) -> String {
        let mut s = String::from("{");
        for (k, i) in a.ports().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            s.push_str(&self.ports[i].to_string());
        }
        s.push('}');
        s
    }

    /// Canonical literal `{{p, q}, {p}}` style text.
    pub fn fmt_configuration(&self, gamma: &Configuration) -> String {
        let mut s = String::from("{");
        for (k, a) in gamma.iter().enumerate() {
            if k > 0 {
                s.push_str(", ");
            }
            s.push_str(&self.fmt_interaction(a));
        }
        s.push('}');
        s
    }
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit indices of a mask in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Iterates all nonempty submasks of `mask` in decreasing numeric order.
pub fn nonempty_submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask).filter(|&m| m != 0);
    core::iter::from_fn(move || {
        let cur = next?;
        let s = (cur - 1) & mask;
        next = if s == 0 { None } else { Some(s) };
        Some(cur)
    })
}

/// A nonempty set of ports, as a bitmask over universe indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interaction(u64);

impl Interaction {
    pub fn new(mask: u64) -> Option<Self> {
        (mask != 0).then_some(Interaction(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, port: usize) -> bool {
        port < 64 && self.0 >> port & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn ports(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }
}

impl Ord for Interaction {
    /// Lexicographic order of the increasing port-index sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0, other.0);
        let x = a ^ b;
        if x == 0 {
            return Ordering::Equal;
        }
        let d = x.trailing_zeros();
        let above = |m: u64| if d >= 63 { 0 } else { m >> (d + 1) };
        if a >> d & 1 == 1 {
            // a has port d where b has a larger port or has ended.
            if above(b) == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if above(a) == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Interaction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonempty, canonically ordered set of interactions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<Interaction>);

impl Configuration {
    pub fn new<I: IntoIterator<Item = Interaction>>(inters: I) -> Result<Self> {
        let mut v: Vec<Interaction> = inters.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        Ok(Configuration(v))
    }

    pub fn from_masks<I: IntoIterator<Item = u64>>(masks: I) -> Result<Self> {
        let inters = masks
            .into_iter()
            .map(|m| Interaction::new(m).ok_or(Error::EmptyInteraction))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inters)
    }

    pub fn singleton(a: Interaction) -> Self {
        Configuration(alloc::vec![a])
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Interaction> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, a: Interaction) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    /// Mask with one bit per interaction of `self`.
    pub fn full_mask(&self) -> u64 {
        low_bits(self.0.len())
    }

    /// The sub-configuration picked by a mask over positions of `self`.
    pub fn select(&self, mask: u64) -> Option<Configuration> {
        let v: Vec<Interaction> = bits(mask)
            .take_while(|&i| i < self.0.len())
            .map(|i| self.0[i])
            .collect();
        (!v.is_empty()).then_some(Configuration(v))
    }

    /// Union of all interactions' ports.
    pub fn port_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, a| m | a.0)
    }

    pub fn union(&self, other: &Configuration) -> Configuration {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort();
        v.dedup();
        Configuration(v)
    }

    pub fn is_subset(&self, other: &Configuration) -> bool {
        self.0.iter().all(|&a| other.contains(a))
    }
}

/// All 2^n − 1 interactions over n ports in canonical order.
pub fn enumerate_interactions(n: usize) -> Result<Vec<Interaction>> {
    if n > 20 {
        return Err(Error::UniverseTooLarge {
            what: "interaction enumeration",
            ports: n,
            cap: 20,
        });
    }
    let mut v: Vec<Interaction> = (1..=low_bits(n)).map(Interaction).collect();
    v.sort();
    Ok(v)
}

/// All 2^(2^n − 1) − 1 configurations over n ports, in canonical order.
pub fn enumerate_configurations(n: usize, cap: usize) -> Result<Vec<Configuration>> {
    if n > cap || n > 5 {
        return Err(Error::UniverseTooLarge {
            what: "configuration enumeration",
            ports: n,
            cap: cap.min(5),
        });
    }
    let inters = enumerate_interactions(n)?;
    let m = inters.len();
    let mut v: Vec<Configuration> = (1..=low_bits(m))
        .map(|sel| Configuration(bits(sel).map(|i| inters[i]).collect()))
        .collect();
    v.sort();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn interaction_order_is_lexicographic_on_port_sequences() {
        let all = enumerate_interactions(3).unwrap();
        let seqs: Vec<Vec<usize>> = all.iter().map(|a| a.ports().collect()).collect();
        let mut sorted = seqs.clone();
        sorted.sort();
        assert_eq!(seqs, sorted);
        assert_eq!(seqs[0], vec![0]);
        assert_eq!(seqs[1], vec![0, 1]);
        assert_eq!(seqs[2], vec![0, 1, 2]);
    }

    #[test]
    fn order_matches_sequence_order_exhaustively() {
        for a in 1u64..64 {
            for b in 1u64..64 {
                let sa: Vec<usize> = bits(a).collect();
                let sb: Vec<usize> = bits(b).collect();
                assert_eq!(Interaction(a).cmp(&Interaction(b)), sa.cmp(&sb));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_interactions(2).unwrap().len(), 3);
        assert_eq!(enumerate_configurations(2, 4).unwrap().len(), 7);
        assert_eq!(enumerate_interactions(3).unwrap().len(), 7);
        assert_eq!(enumerate_configurations(3, 4).unwrap().len(), 127);
    }

    #[test]
    fn enumeration_of_four_ports_is_distinct_and_sorted() {
        let all = enumerate_configurations(4, 4).unwrap();
        assert_eq!(all.len(), 32767);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_configurations(5, 4).unwrap_err();
        assert!(matches!(err, Error::UniverseTooLarge { .. }));
    }

    #[test]
    fn universe_sorting_and_lookup() {
        let u = PortUniverse::from_names(&["q", "p", "b1.m"]).unwrap();
        assert_eq!(u.port(0), &Port::new("p"));
        assert_eq!(u.port(2), &Port::qualified("b1", "m"));
        assert_eq!(u.index_of_name("b1.m").unwrap(), 2);
        assert!(u.index_of_name("r").is_err());
        assert!(PortUniverse::from_names(&["p", "p"]).is_err());
    }

    #[test]
    fn configuration_canonical_and_printing() {
        let u = PortUniverse::from_names(&["p", "q"]).unwrap();
        let g = u.configuration(&[&["q"], &["p", "q"], &["q"]]).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(u.fmt_configuration(&g), "{{p, q}, {q}}");
        let named = u.decode(&g);
        assert_eq!(u.encode(&named).unwrap(), g);
    }

    #[test]
    fn submasks() {
        let subs: Vec<u64> = nonempty_submasks(0b101).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001]);
        assert_eq!(nonempty_submasks(0).count(), 0);
        assert_eq!(nonempty_submasks(0b1111).count(), 15);
    }
}
