//! Symmetric eigendecomposition by cyclic Jacobi rotations, plus the
//! spectrum-derived quantities everything else is built on.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SymMatrix};
use crate::projection::Projection;

/// Sweeps are abandoned after this many passes over the upper triangle.
pub const MAX_SWEEPS: usize = 100;

/// Convergence when the off-diagonal Frobenius mass drops below this fraction
/// of `‖a‖_F`.
pub const CONVERGENCE_RATIO: f64 = 1e-13;

/// Eigenvalues in ascending order with a matching orthogonal matrix whose
/// columns are the eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: DenseMatrix,
}

/// A run of eigenvalues treated as one distinct value.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub value: f64,
    /// Index range into the sorted eigenvalues.
    pub members: Range<usize>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvectors(&self) -> &DenseMatrix {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `Q · diag(λ) · Qᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        self.map(|x| x)
    }

    /// `Σ f(λₖ) vₖvₖᵀ` over individual eigenpairs.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        SymMatrix::from_weighted_outer(
            self.dim(),
            (0..self.dim()).map(|k| (f(self.values[k]), self.vector(k))),
        )
    }

    /// Groups sorted eigenvalues: a new cluster starts whenever the gap to the
    /// previous eigenvalue exceeds `tol`.
    pub fn clusters(&self, tol: f64) -> Vec<Cluster> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=self.values.len() {
            if k == self.values.len() || self.values[k] - self.values[k - 1] > tol {
                let members = start..k;
                let value = self.values[members.clone()].iter().sum::<f64>() / members.len() as f64;
                out.push(Cluster { value, members });
                start = k;
            }
        }
        out
    }

    /// `Σ f(c) P_c` over clusters, so the result is exactly a function of the
    /// clustered spectrum.
    pub fn map_clusters(&self, tol: f64, f: impl Fn(f64) -> f64) -> SymMatrix {
        let clusters = self.clusters(tol);
        SymMatrix::from_weighted_outer(
            self.dim(),
            clusters
                .iter()
                .flat_map(|c| c.members.clone().map(|k| (f(c.value), self.vector(k))).collect::<Vec<_>>()),
        )
    }

    /// Orthoprojector onto the span of the selected eigenvectors.
    pub fn projector(&self, indices: impl IntoIterator<Item = usize>) -> Projection {
        Projection::from_orthonormal(self.dim(), indices.into_iter().map(|k| self.vector(k)).collect())
    }

    /// Orthoprojector onto the eigenvectors whose eigenvalue satisfies `keep`.
    pub fn projector_where(&self, keep: impl Fn(f64) -> bool) -> Projection {
        self.projector((0..self.dim()).filter(|&k| keep(self.values[k])))
    }
}

/// Cyclic Jacobi eigendecomposition with a fixed row-by-row pivot order.
///
/// Eigenvectors are sign-normalized so that the first component of magnitude
/// at least `1/(2√n)` is positive; together with the fixed sweep order this
/// makes the output a deterministic function of the input bits.
pub fn eig(a: &SymMatrix) -> Result<EigenSystem> {
    let n = a.dim();
    let mut m: Vec<f64> = a.as_slice().to_vec();
    let mut v = DenseMatrix::identity(n);
    let threshold = CONVERGENCE_RATIO * a.frobenius_norm();

    let off_mass = |m: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += m[i * n + j] * m[i * n + j];
                }
            }
        }
        acc.sqrt()
    };

    let mut converged = false;
    let mut residual = off_mass(&m);
    for _ in 0..MAX_SWEEPS {
        if residual <= threshold {
            converged = true;
            // quadratic convergence: one more sweep takes the off-diagonal
            // mass to round-off, which matters for close eigenvalues
            if residual > 0.0 {
                jacobi_sweep(&mut m, &mut v, n);
            }
            break;
        }
        jacobi_sweep(&mut m, &mut v, n);
        residual = off_mass(&m);
    }
    if !converged && residual > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, residual });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();

    let pivot = 0.5 / (n as f64).sqrt();
    let mut vectors = DenseMatrix::identity(n);
    for (col, &src) in order.iter().enumerate() {
        let first_big = (0..n).map(|r| v.get(r, src)).find(|x| x.abs() >= pivot).unwrap_or(1.0);
        let sign = if first_big < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors.set(r, col, sign * v.get(r, src));
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// One cyclic pass of Jacobi rotations over the strict upper triangle.
fn jacobi_sweep(m: &mut [f64], v: &mut DenseMatrix, n: usize) {
    for p in 0..n {
        for q in (p + 1)..n {
            let apq = m[p * n + q];
            if apq == 0.0 {
                continue;
            }
            let app = m[p * n + p];
            let aqq = m[q * n + q];
            let theta = (aqq - app) / (2.0 * apq);
            let t = if theta.abs() > 1e150 {
                0.5 / theta
            } else {
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                sign / (theta.abs() + (theta * theta + 1.0).sqrt())
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // columns: M ← M J
            for k in 0..n {
                let mkp = m[k * n + p];
                let mkq = m[k * n + q];
                m[k * n + p] = c * mkp - s * mkq;
                m[k * n + q] = s * mkp + c * mkq;
            }
            // rows: M ← Jᵀ M
            for k in 0..n {
                let mpk = m[p * n + k];
                let mqk = m[q * n + k];
                m[p * n + k] = c * mpk - s * mqk;
                m[q * n + k] = s * mpk + c * mqk;
            }
            m[p * n + q] = 0.0;
            m[q * n + p] = 0.0;
            for k in 0..n {
                let vkp = v.get(k, p);
                let vkq = v.get(k, q);
                v.set(k, p, c * vkp - s * vkq);
                v.set(k, q, s * vkp + c * vkq);
            }
        }
    }
}

/// Eigendecomposition for callers whose contract is infallible. Cyclic Jacobi
/// converges quadratically on every finite symmetric matrix, far inside
/// [`MAX_SWEEPS`].
pub(crate) fn spectrum(a: &SymMatrix) -> EigenSystem {
    eig(a).expect("cyclic Jacobi failed to converge on a finite symmetric matrix")
}

/// Distinct eigenvalues (clusters within `tol_eig`) with their eigenprojections.
pub fn cluster_spectrum(es: &EigenSystem, tol_eig: f64) -> Vec<(f64, Projection)> {
    es.clusters(tol_eig)
        .into_iter()
        .map(|c| (c.value, es.projector(c.members)))
        .collect()
}

/// Order-unit norm: the largest absolute eigenvalue.
pub fn operator_norm(a: &SymMatrix) -> f64 {
    spectrum(a).spectral_radius()
}

/// `min eigenvalue ≥ -tol_psd`.
pub fn is_psd(a: &SymMatrix, tol_psd: f64) -> bool {
    spectrum(a).min() >= -tol_psd
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn diagonal_input_sorted() {
        let es = eig(&SymMatrix::diag(&[2.0, 1.0]).unwrap()).unwrap();
        assert_eq!(es.eigenvalues(), &[1.0, 2.0]);
        assert_eq!(es.vector(0), vec![0.0, 1.0]);
        assert_eq!(es.vector(1), vec![1.0, 0.0]);
    }

    #[test]
    fn swap_matrix() {
        let es = eig(&sym(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((es.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!((es.eigenvalues()[1] - 1.0).abs() < 1e-15);
        let v0 = es.vector(0);
        let v1 = es.vector(1);
        assert!((v0[0] - h).abs() < 1e-15 && (v0[1] + h).abs() < 1e-15);
        assert!((v1[0] - h).abs() < 1e-15 && (v1[1] - h).abs() < 1e-15);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let es = eig(&SymMatrix::identity(3)).unwrap();
        assert_eq!(es.eigenvalues(), &[1.0, 1.0, 1.0]);
        let q = es.eigenvectors();
        let qtq = q.transpose().mul(q);
        assert!(qtq.sub(&DenseMatrix::identity(3)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn zero_matrix_and_scalar_dim_one() {
        assert_eq!(eig(&SymMatrix::zeros(3)).unwrap().eigenvalues(), &[0.0; 3]);
        assert_eq!(eig(&SymMatrix::scalar(1, -4.5)).unwrap().eigenvalues(), &[-4.5]);
    }

    #[test]
    fn reconstruction_of_dense_matrix() {
        let a = sym(&[&[4.0, 1.0, -2.0], &[1.0, 2.0, 0.5], &[-2.0, 0.5, 3.0]]);
        let es = eig(&a).unwrap();
        assert!(es.reconstruct().distance(&a) < 1e-12);
        let trace: f64 = es.eigenvalues().iter().sum();
        assert!((trace - 9.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_bits() {
        let a = sym(&[&[0.3, -0.7, 0.1], &[-0.7, 1.1, 0.25], &[0.1, 0.25, -0.4]]);
        assert_eq!(eig(&a).unwrap(), eig(&a).unwrap());
    }

    #[test]
    fn clusters_exact_repeats() {
        let es = eig(&SymMatrix::diag(&[1.0, 2.0, 1.0]).unwrap()).unwrap();
        let cl = cluster_spectrum(&es, 0.0);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].0, 1.0);
        assert_eq!(cl[0].1.rank(), 2);
        assert_eq!(cl[0].1.matrix(), &SymMatrix::diag(&[1.0, 0.0, 1.0]).unwrap());
        assert_eq!(cl[1].1.rank(), 1);
    }

    #[test]
    fn clusters_within_tolerance() {
        let es = eig(&SymMatrix::diag(&[0.0, 1e-14, 1.0]).unwrap()).unwrap();
        let cl = cluster_spectrum(&es, 1e-9);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].1.rank(), 2);
        assert_eq!(cluster_spectrum(&es, 0.0).len(), 3);
    }

    #[test]
    fn two_clusters_sum_to_identity() {
        let es = eig(&SymMatrix::diag(&[0.0, 1.0]).unwrap()).unwrap();
        let cl = cluster_spectrum(&es, 1e-9);
        let sum = cl[0].1.matrix() + cl[1].1.matrix();
        assert_eq!(sum, SymMatrix::identity(2));
    }

    #[test]
    fn norms_and_psd() {
        assert_eq!(operator_norm(&SymMatrix::diag(&[1.0, -2.0]).unwrap()), 2.0);
        assert_eq!(operator_norm(&SymMatrix::zeros(2)), 0.0);
        assert!((operator_norm(&sym(&[&[0.0, 1.0], &[1.0, 0.0]])) - 1.0).abs() < 1e-15);
        assert!(is_psd(&SymMatrix::diag(&[0.0, 1.0]).unwrap(), 1e-9));
        assert!(!is_psd(&SymMatrix::diag(&[-1e-3, 1.0]).unwrap(), 1e-9));
        assert!(is_psd(&sym(&[&[0.5, 0.5], &[0.5, 0.5]]), 1e-9));
    }
}
