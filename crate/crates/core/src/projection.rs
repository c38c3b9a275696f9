use serde::{Deserialize, Serialize};

use crate::eigen::spectrum;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::tolerance::TolerancePolicy;

/// An orthogonal projection `p = p² = pᵀ`.
///
/// Every constructor rebuilds the matrix as `Σ vᵢvᵢᵀ` from an orthonormal
/// basis of its range, so idempotency does not drift across long chains of
/// lattice operations. The rank is carried alongside as an exact integer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    matrix: SymMatrix,
    rank: usize,
}

impl Projection {
    pub fn zero(dim: usize) -> Self {
        Self { matrix: SymMatrix::zeros(dim), rank: 0 }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: SymMatrix::identity(dim), rank: dim }
    }

    /// Projector onto the span of `vectors`, which the caller guarantees to be
    /// orthonormal.
    pub fn from_orthonormal(dim: usize, vectors: Vec<Vec<f64>>) -> Self {
        let rank = vectors.len();
        let matrix = SymMatrix::from_weighted_outer(dim, vectors.into_iter().map(|v| (1.0, v)));
        Self { matrix, rank }
    }

    /// Rounds a nearly idempotent symmetric matrix to the projector onto its
    /// eigenvectors with eigenvalue above ½.
    pub fn rebuild(m: &SymMatrix) -> Self {
        spectrum(m).projector_where(|x| x > 0.5)
    }

    /// Accepts `m` if `‖m² − m‖_F ≤ tol_proj`, then rebuilds it exactly.
    pub fn try_from_matrix(m: &SymMatrix, tol: &TolerancePolicy) -> Result<Self> {
        let residual = idempotency_residual(m);
        if residual > tol.tol_proj {
            return Err(Error::NotProjection { residual });
        }
        Ok(Self::rebuild(m))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SymMatrix {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rank == self.dim()
    }

    /// `1 − p`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        Self { matrix: &SymMatrix::identity(n) - &self.matrix, rank: n - self.rank }
    }

    /// Orthonormal basis of the range.
    pub fn range_basis(&self) -> Vec<Vec<f64>> {
        if self.rank == 0 {
            return Vec::new();
        }
        let es = spectrum(&self.matrix);
        (0..self.dim()).filter(|&k| es.eigenvalues()[k] > 0.5).map(|k| es.vector(k)).collect()
    }

    /// Same rank and Frobenius distance at most `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rank == other.rank && self.matrix.distance(&other.matrix) <= tol
    }
}

/// `‖m² − m‖_F`.
pub fn idempotency_residual(m: &SymMatrix) -> f64 {
    m.try_mul(m).expect("square").sub(&m.to_dense()).frobenius_norm()
}

impl From<Projection> for SymMatrix {
    fn from(p: Projection) -> Self {
        p.matrix
    }
}
