use super::Instance;

/// Dual values produced by a solver run together with a shrink factor.
///
/// `alpha[j]` is the per-unit contribution of city `j`; with demands the city
/// pays `d_j * alpha[j]` in total.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub alpha: Vec<f64>,
    pub gamma: f64,
}

impl DualCertificate {
    pub fn new(alpha: Vec<f64>) -> Self {
        DualCertificate { alpha, gamma: 1.0 }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    /// Sum of demand-weighted contributions.
    pub fn total(&self, inst: &Instance) -> f64 {
        self.alpha
            .iter()
            .enumerate()
            .map(|(j, &a)| inst.demand(j) * a)
            .sum()
    }
}
