//! Projections onto spans and kernels.

use crate::eigen::spectrum;
use crate::error::{check_dims, Result};
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::tolerance::TolerancePolicy;

/// Orthoprojector onto the linear span of `vectors`.
///
/// The span is read off the Gram-type matrix `G = Σ vvᵀ`: its range is the
/// span, and directions with eigenvalue at most
/// `tol.eig_threshold(‖G‖)` are treated as absent.
pub fn projection_onto_span(dim: usize, vectors: &[Vec<f64>], tol: &TolerancePolicy) -> Result<Projection> {
    for v in vectors {
        check_dims(dim, v.len())?;
    }
    if vectors.is_empty() {
        return Ok(Projection::zero(dim));
    }
    Ok(span_with_cut(dim, vectors, tol.tol_eig))
}

/// [`projection_onto_span`] with Gram eigenvalues at most `rel_cut·max(1, ‖G‖)`
/// treated as zero.
pub(crate) fn span_with_cut(dim: usize, vectors: &[Vec<f64>], rel_cut: f64) -> Projection {
    let gram = SymMatrix::from_weighted_outer(dim, vectors.iter().map(|v| (1.0, v.clone())));
    let es = spectrum(&gram);
    let cut = rel_cut * es.spectral_radius().max(1.0);
    es.projector_where(|x| x > cut)
}

/// Orthoprojector onto the eigenvectors of `a` with `|λ| ≤ tol.eig_threshold(‖a‖)`.
pub fn nullspace_projection(a: &SymMatrix, tol: &TolerancePolicy) -> Projection {
    kernel_with_cut(a, tol.tol_eig)
}

/// [`nullspace_projection`] with threshold `rel_cut·max(1, ‖a‖)`.
pub(crate) fn kernel_with_cut(a: &SymMatrix, rel_cut: f64) -> Projection {
    let es = spectrum(a);
    let cut = rel_cut * es.spectral_radius().max(1.0);
    es.projector_where(|x| x.abs() <= cut)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn span_of_axis() {
        let p = projection_onto_span(2, &[vec![1.0, 0.0]], &tol()).unwrap();
        assert_eq!(p.matrix(), &SymMatrix::diag(&[1.0, 0.0]).unwrap());
    }

    #[test]
    fn span_of_diagonal_line() {
        let p = projection_onto_span(2, &[vec![1.0, 1.0]], &tol()).unwrap();
        let want = SymMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(p.matrix().distance(&want) < 1e-15);
    }

    #[test]
    fn empty_span_is_zero() {
        let p = projection_onto_span(3, &[], &tol()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.matrix(), &SymMatrix::zeros(3));
    }

    #[test]
    fn dependent_vectors_do_not_inflate_rank() {
        let p = projection_onto_span(3, &[vec![1.0, 2.0, 0.0], vec![2.0, 4.0, 0.0]], &tol()).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(projection_onto_span(3, &[vec![1.0, 2.0]], &tol()).is_err());
    }

    #[test]
    fn kernels() {
        let p = nullspace_projection(&SymMatrix::diag(&[0.0, 3.0]).unwrap(), &tol());
        assert_eq!(p.matrix(), &SymMatrix::diag(&[1.0, 0.0]).unwrap());
        assert!(nullspace_projection(&SymMatrix::identity(2), &tol()).is_zero());
        let ones = SymMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let k = nullspace_projection(&ones, &tol());
        let want = SymMatrix::from_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]).unwrap();
        assert!(k.matrix().distance(&want) < 1e-15);
    }
}
