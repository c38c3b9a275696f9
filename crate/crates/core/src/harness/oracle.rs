//! Brute-force reference computations used to cross-check the lattice
//! operations. They are slow and only meant for small dimensions.

use crate::eigen::spectrum;
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::resolution::resolution_of;
use crate::spectral::spectral_leq_res;
use crate::tolerance::TolerancePolicy;

/// Angles added to the eigenvector angles of the operands.
const ANGLE_GRID: usize = 8;
/// Values added between the smallest and largest operand eigenvalue.
const VALUE_GRID: usize = 5;
/// Squarings applied to `pqp` by [`alternating_meet`].
const SQUARINGS: usize = 40;

/// Lower bounds of `a` and `b` under `≤ₛ` in dimension 2, searched over
/// `c = x·uuᵀ + y·wwᵀ` with `u = (cos θ, sin θ)`, `w ⟂ u`.
///
/// `θ` ranges over the eigenvector angles of `a` and `b` plus an even grid
/// on `[0, π)`; `x` and `y` range over the eigenvalues of `a` and `b` plus an
/// even grid spanning them. The spectral meet has eigenvectors among those of
/// `a` and `b` and eigenvalues among theirs, so it is one of the candidates.
pub fn dim2_lower_bounds(a: &SymMatrix, b: &SymMatrix, tol: &TolerancePolicy) -> Result<Vec<SymMatrix>> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::Precondition("the dim-2 oracle needs 2×2 operands".into()));
    }
    let (ea, eb) = (spectrum(a), spectrum(b));
    let mut angles: Vec<f64> = Vec::new();
    for es in [&ea, &eb] {
        for k in 0..2 {
            let v = es.vector(k);
            angles.push(v[1].atan2(v[0]));
        }
    }
    angles.extend((0..ANGLE_GRID).map(|k| std::f64::consts::PI * k as f64 / ANGLE_GRID as f64));

    let mut values: Vec<f64> = ea.eigenvalues().iter().chain(eb.eigenvalues()).copied().collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values.extend((0..=VALUE_GRID).map(|k| lo + (hi - lo) * k as f64 / VALUE_GRID as f64));
    values.sort_by(f64::total_cmp);
    values.dedup();

    let (ra, rb) = (resolution_of(a, tol), resolution_of(b, tol));
    let mut out = Vec::new();
    for &theta in &angles {
        let u = vec![theta.cos(), theta.sin()];
        let w = vec![-theta.sin(), theta.cos()];
        for &x in &values {
            for &y in &values {
                let c = SymMatrix::from_weighted_outer(2, [(x, u.clone()), (y, w.clone())]);
                let rc = resolution_of(&c, tol);
                if spectral_leq_res(&rc, &ra, tol)? && spectral_leq_res(&rc, &rb, tol)? {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// Compares a claimed meet `m` of `a` and `b` against [`dim2_lower_bounds`].
///
/// Returns the largest violation found: a sampled lower bound not below `m`
/// counts 1, and otherwise the distance from `m` to the largest-trace lower
/// bound (a `≤ₛ`-maximum has maximal trace since `≤ₛ` implies `⪯`).
pub fn dim2_meet_defect(a: &SymMatrix, b: &SymMatrix, m: &SymMatrix, tol: &TolerancePolicy) -> Result<f64> {
    let bounds = dim2_lower_bounds(a, b, tol)?;
    let rm = resolution_of(m, tol);
    let mut worst: f64 = 0.0;
    for c in &bounds {
        if !spectral_leq_res(&resolution_of(c, tol), &rm, tol)? {
            worst = worst.max(1.0);
        }
    }
    let top = bounds
        .iter()
        .max_by(|x, y| x.trace().total_cmp(&y.trace()))
        .ok_or_else(|| Error::Precondition("no sampled lower bound".into()))?;
    Ok(worst.max(top.distance(m)))
}

/// `p ∧ q` as the limit of `(pqp)ᵏ`, by repeated squaring.
///
/// The eigenvalues of `pqp` are squared cosines of the principal angles
/// between the ranges; only those equal to 1 survive, and they belong to the
/// intersection.
pub fn alternating_meet(p: &Projection, q: &Projection) -> Result<Projection> {
    let mut m = p.matrix().try_mul(q.matrix())?.mul_sym(p.matrix()).symmetric_part();
    for _ in 0..SQUARINGS {
        m = m.try_mul(&m)?.symmetric_part();
    }
    Ok(Projection::rebuild(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::meet;
    use crate::spectral::spectral_meet;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn oracle_agrees_on_lines() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = Projection::rebuild(&SymMatrix::diag(&[1.0, 0.0]).unwrap());
        let q = Projection::from_orthonormal(2, vec![vec![h, h]]);
        let m = spectral_meet(p.matrix(), q.matrix(), &tol()).unwrap();
        assert!(dim2_meet_defect(p.matrix(), q.matrix(), &m, &tol()).unwrap() < 1e-12);
        assert!(alternating_meet(&p, &q).unwrap().is_zero());
    }

    #[test]
    fn oracle_rejects_wrong_meet() {
        let a = SymMatrix::from_rows(&[vec![0.3, 0.1], vec![0.1, 0.7]]).unwrap();
        let b = SymMatrix::diag(&[0.6, 0.2]).unwrap();
        let m = spectral_meet(&a, &b, &tol()).unwrap();
        assert!(dim2_meet_defect(&a, &b, &m, &tol()).unwrap() < 1e-12);
        let smaller = m.shift(-0.05);
        assert!(dim2_meet_defect(&a, &b, &smaller, &tol()).unwrap() > 1e-3);
    }

    #[test]
    fn alternating_meet_of_planes() {
        let a = Projection::rebuild(&SymMatrix::diag(&[1.0, 1.0, 0.0]).unwrap());
        let b = Projection::rebuild(&SymMatrix::diag(&[0.0, 1.0, 1.0]).unwrap());
        let got = alternating_meet(&a, &b).unwrap();
        assert!(got.approx_eq(&meet(&a, &b, &tol()).unwrap(), 1e-12));
    }
}
