use serde::{Deserialize, Serialize};

use crate::eigen::spectrum;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::tolerance::TolerancePolicy;

/// An element `e` with `0 ⪯ e ⪯ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Effect(SymMatrix);

impl Effect {
    /// Accepts `m` when its spectrum lies in `[-tol_psd, 1 + tol_psd]`.
    pub fn try_new(m: SymMatrix, tol: &TolerancePolicy) -> Result<Self> {
        let es = spectrum(&m);
        let (min, max) = (es.min(), es.max());
        if min < -tol.tol_psd || max > 1.0 + tol.tol_psd {
            return Err(Error::NotEffect { min, max });
        }
        Ok(Self(m))
    }

    pub fn zero(dim: usize) -> Self {
        Self(SymMatrix::zeros(dim))
    }

    pub fn one(dim: usize) -> Self {
        Self(SymMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> SymMatrix {
        self.0
    }
}

impl From<Projection> for Effect {
    fn from(p: Projection) -> Self {
        Self(p.into_matrix())
    }
}

impl From<&Projection> for Effect {
    fn from(p: &Projection) -> Self {
        Self(p.matrix().clone())
    }
}

impl AsRef<SymMatrix> for Effect {
    fn as_ref(&self) -> &SymMatrix {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_interval_membership() {
        let tol = TolerancePolicy::default();
        assert!(Effect::try_new(SymMatrix::diag(&[0.0, 1.0]).unwrap(), &tol).is_ok());
        assert!(Effect::try_new(SymMatrix::diag(&[-1e-12, 1.0 + 1e-12]).unwrap(), &tol).is_ok());
        assert!(matches!(
            Effect::try_new(SymMatrix::diag(&[0.5, 1.5]).unwrap(), &tol),
            Err(Error::NotEffect { .. })
        ));
        assert!(Effect::try_new(SymMatrix::diag(&[-0.1, 0.5]).unwrap(), &tol).is_err());
    }
}
