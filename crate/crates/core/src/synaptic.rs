//! The basic synaptic-algebra operations on symmetric matrices: the numerical
//! order, Jordan and quadratic products, and the continuous functional
//! calculus pieces (square root, absolute value, positive/negative parts,
//! carrier, inverse).

use crate::eigen::spectrum;
use crate::error::{check_dims, Error, Result};
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::tolerance::TolerancePolicy;

/// `a ⪯ b` iff `b − a` is positive semidefinite within `tol_psd`.
pub fn numerical_leq(a: &SymMatrix, b: &SymMatrix, tol: &TolerancePolicy) -> Result<bool> {
    let diff = b.try_sub(a)?;
    Ok(spectrum(&diff).min() >= -tol.tol_psd)
}

/// `½(ab + ba)`.
pub fn jordan_product(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    Ok(a.try_mul(b)?.symmetric_part())
}

/// `aba`.
pub fn quadratic_map(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.try_mul(b)?.mul_sym(a).symmetric_part())
}

/// The positive square root. Eigenvalues in `[-tol_psd, 0)` are clamped to 0.
pub fn sqrt_psd(a: &SymMatrix, tol: &TolerancePolicy) -> Result<SymMatrix> {
    let es = spectrum(a);
    if es.min() < -tol.tol_psd {
        return Err(Error::NotPsd { min_eigenvalue: es.min() });
    }
    // round-off eigenvalues near 0 would otherwise become ~1e-8 after the root
    let cut = tol.eig_threshold(es.spectral_radius());
    Ok(es.map_clusters(cut, |x| if x > cut { x.sqrt() } else { 0.0 }))
}

/// `|a| = (a²)^½`.
pub fn abs_val(a: &SymMatrix, tol: &TolerancePolicy) -> SymMatrix {
    let es = spectrum(a);
    es.map_clusters(tol.eig_threshold(es.spectral_radius()), f64::abs)
}

/// `a⁺ = ½(|a| + a)`.
pub fn pos_part(a: &SymMatrix, tol: &TolerancePolicy) -> SymMatrix {
    let es = spectrum(a);
    let cut = tol.eig_threshold(es.spectral_radius());
    es.map_clusters(cut, |x| if x > cut { x } else { 0.0 })
}

/// `a⁻ = ½(|a| − a)`.
pub fn neg_part(a: &SymMatrix, tol: &TolerancePolicy) -> SymMatrix {
    let es = spectrum(a);
    let cut = tol.eig_threshold(es.spectral_radius());
    es.map_clusters(cut, |x| if x < -cut { -x } else { 0.0 })
}

/// The carrier `a°`: the projection onto the eigenvectors with
/// `|λ| > tol.eig_threshold(‖a‖)`, i.e. the smallest projection `q` with `aq = a`.
pub fn carrier(a: &SymMatrix, tol: &TolerancePolicy) -> Projection {
    let es = spectrum(a);
    let cut = tol.eig_threshold(es.spectral_radius());
    es.projector_where(|x| x.abs() > cut)
}

/// Inverse of a numerically invertible `a`.
pub fn inverse(a: &SymMatrix, tol: &TolerancePolicy) -> Result<SymMatrix> {
    let es = spectrum(a);
    let cut = tol.eig_threshold(es.spectral_radius());
    let min_abs = es.eigenvalues().iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    if min_abs <= cut {
        return Err(Error::Singular { min_abs_eigenvalue: min_abs });
    }
    Ok(es.map_clusters(cut, f64::recip))
}

/// `‖ab − ba‖_F ≤ tol · (1 + ‖a‖‖b‖)`.
pub fn commutes(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<bool> {
    let ab = a.try_mul(b)?;
    let scale = 1.0 + spectrum(a).spectral_radius() * spectrum(b).spectral_radius();
    Ok(ab.asymmetry() <= tol * scale)
}

/// Whether `b` is a real function of `a`: `b = Σ cᵢPᵢ` over the clustered
/// eigenprojections `Pᵢ` of `a`, to within `tol_recon · (1 + ‖b‖_F)`.
pub fn in_bicommutant(b: &SymMatrix, a: &SymMatrix, tol: &TolerancePolicy) -> Result<bool> {
    check_dims(a.dim(), b.dim())?;
    let es = spectrum(a);
    let clusters = es.clusters(tol.eig_threshold(es.spectral_radius()));
    let mut fitted = SymMatrix::zeros(a.dim());
    for c in clusters {
        let p = es.projector(c.members.clone());
        let coeff = p.matrix().try_mul(b)?.symmetric_part().trace() / p.rank() as f64;
        fitted = &fitted + &p.matrix().scale(coeff);
    }
    Ok(fitted.distance(b) <= tol.tol_recon * (1.0 + b.frobenius_norm()))
}

/// A common orthonormal eigenbasis of two commuting elements, returned as
/// `(⟨v, a v⟩, ⟨v, b v⟩, v)` triples. Fails if the pair does not commute at
/// `tol_proj`.
pub fn common_eigenbasis(
    a: &SymMatrix,
    b: &SymMatrix,
    tol: &TolerancePolicy,
) -> Result<Vec<(f64, f64, Vec<f64>)>> {
    if !commutes(a, b, tol.tol_proj)? {
        return Err(Error::Precondition("elements do not commute".into()));
    }
    let n = a.dim();
    let es = spectrum(a);
    let mut out = Vec::with_capacity(n);
    for cluster in es.clusters(tol.eig_threshold(es.spectral_radius())) {
        let basis: Vec<Vec<f64>> = cluster.members.clone().map(|k| es.vector(k)).collect();
        let k = basis.len();
        // compress b onto the eigenspace and diagonalize the k×k block
        let block = SymMatrix::from_fn(k, |i, j| quad_form(&basis[i], b, &basis[j]))?;
        let inner = spectrum(&block);
        for col in 0..k {
            let w = inner.vector(col);
            let mut v = vec![0.0; n];
            for (coef, bv) in w.iter().zip(&basis) {
                for r in 0..n {
                    v[r] += coef * bv[r];
                }
            }
            out.push((quad_form(&v, a, &v), quad_form(&v, b, &v), v));
        }
    }
    Ok(out)
}

pub(crate) fn quad_form(x: &[f64], m: &SymMatrix, y: &[f64]) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for (i, xi) in x.iter().enumerate().take(n) {
        let row: f64 = y.iter().take(n).enumerate().map(|(j, yj)| m.get(i, j) * yj).sum();
        acc += xi * row;
    }
    acc
}
