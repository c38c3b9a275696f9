use serde::{Deserialize, Serialize};

/// Slack used when floating-point results stand in for exact algebraic identities.
///
/// `tol_eig` is relative: eigenvalues of `a` closer than `tol_eig * max(1, ‖a‖)`
/// are treated as one value (see [`TolerancePolicy::eig_threshold`]). The other
/// three fields are absolute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub tol_eig: f64,
    pub tol_psd: f64,
    pub tol_proj: f64,
    pub tol_recon: f64,
}

impl TolerancePolicy {
    pub const DEFAULT_TOL_EIG: f64 = 1e-9;
    pub const DEFAULT_TOL_PSD: f64 = 1e-9;
    pub const DEFAULT_TOL_PROJ: f64 = 1e-8;
    pub const DEFAULT_TOL_RECON: f64 = 1e-8;

    /// Absolute eigenvalue clustering threshold for an operand of norm `norm`.
    pub fn eig_threshold(&self, norm: f64) -> f64 {
        self.tol_eig * norm.max(1.0)
    }

    /// Returns `None` if any field is negative or NaN.
    pub fn validated(self) -> Option<Self> {
        let ok = [self.tol_eig, self.tol_psd, self.tol_proj, self.tol_recon]
            .iter()
            .all(|t| *t >= 0.0);
        ok.then_some(self)
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            tol_eig: Self::DEFAULT_TOL_EIG,
            tol_psd: Self::DEFAULT_TOL_PSD,
            tol_proj: Self::DEFAULT_TOL_PROJ,
            tol_recon: Self::DEFAULT_TOL_RECON,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_scales_with_norm_above_one() {
        let tol = TolerancePolicy::default();
        assert_eq!(tol.eig_threshold(0.25), 1e-9);
        assert_eq!(tol.eig_threshold(10.0), 1e-8);
    }

    #[test]
    fn negative_fields_rejected() {
        let tol = TolerancePolicy { tol_psd: -1.0, ..Default::default() };
        assert!(tol.validated().is_none());
        assert!(TolerancePolicy::default().validated().is_some());
    }
}
