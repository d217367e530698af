/// Size limits that keep the exponential procedures bounded.
///
/// Every limit produces an explicit error when exceeded; nothing is
/// silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest |γ| evaluated by the direct strategy.
    pub direct_gamma: usize,
    /// Largest |γ| for which a table over all sub-configurations may be built.
    pub dense_gamma: usize,
    /// Largest number of support pairs visited by one coalescing step.
    pub pairs: usize,
    /// Largest |P| for enumerating C(P).
    pub enum_ports: usize,
    /// Largest |P| for full normal forms.
    pub fnf_ports: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            direct_gamma: 12,
            dense_gamma: 20,
            pairs: 1 << 25,
            enum_ports: 4,
            fnf_ports: 4,
        }
    }
}
