//! The orthomodular lattice of projections.

use crate::error::{check_dims, Error, Result};
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::subspace::{kernel_with_cut, span_with_cut};
use crate::tolerance::TolerancePolicy;

/// `p ≤ q` iff `p = pq`, tested as `‖p − pq‖_F ≤ tol_proj`.
pub fn proj_leq(p: &Projection, q: &Projection, tol: &TolerancePolicy) -> Result<bool> {
    check_dims(p.dim(), q.dim())?;
    if p.rank() > q.rank() {
        return Ok(false);
    }
    if p.is_zero() || q.is_identity() {
        return Ok(true);
    }
    let pq = p.matrix().try_mul(q.matrix())?;
    Ok(p.matrix().to_dense().sub(&pq).frobenius_norm() <= tol.tol_proj)
}

/// Projector onto `range(p) ∩ range(q)`, the kernel of `(1 − p) + (1 − q)`.
pub fn meet(p: &Projection, q: &Projection, tol: &TolerancePolicy) -> Result<Projection> {
    family_meet(p.dim(), &[p.clone(), q.clone()], tol)
}

/// Projector onto `range(p) + range(q)`, spanned by the columns of `p` and `q`.
pub fn join(p: &Projection, q: &Projection, tol: &TolerancePolicy) -> Result<Projection> {
    family_join(p.dim(), &[p.clone(), q.clone()], tol)
}

/// Both the meet defect `Σ(1 − pᵢ)` and the join Gram matrix have eigenvalues
/// of order `θ²` for subspaces at principal angle `θ`, so an eigenvalue cut of
/// `tol_eig` would merge subspaces up to `√tol_eig` apart.
const SUBSPACE_CUT_FACTOR: f64 = 1e-3;

fn subspace_cut(tol: &TolerancePolicy) -> f64 {
    tol.tol_eig * SUBSPACE_CUT_FACTOR
}

/// Meet of a finite family; the empty meet is the identity.
pub fn family_meet(dim: usize, family: &[Projection], tol: &TolerancePolicy) -> Result<Projection> {
    for p in family {
        check_dims(dim, p.dim())?;
    }
    match family {
        [] => Ok(Projection::identity(dim)),
        [p] => Ok(p.clone()),
        _ => {
            let mut defect = SymMatrix::zeros(dim);
            for p in family {
                defect = &defect + p.complement().matrix();
            }
            Ok(kernel_with_cut(&defect, subspace_cut(tol)))
        }
    }
}

/// Join of a finite family; the empty join is 0.
pub fn family_join(dim: usize, family: &[Projection], tol: &TolerancePolicy) -> Result<Projection> {
    for p in family {
        check_dims(dim, p.dim())?;
    }
    match family {
        [] => Ok(Projection::zero(dim)),
        [p] => Ok(p.clone()),
        _ => {
            let columns: Vec<Vec<f64>> = family
                .iter()
                .flat_map(|p| {
                    let rows = p.matrix().rows();
                    // p is symmetric, so its rows are its columns
                    rows.into_iter()
                })
                .collect();
            Ok(span_with_cut(dim, &columns, subspace_cut(tol)))
        }
    }
}

/// `p⊥ = 1 − p`.
pub fn orthocomplement(p: &Projection) -> Projection {
    p.complement()
}

/// Frobenius distance between `(e ∨ f) ∧ g` and `e ∨ (f ∧ g)`. Requires `e ≤ g`.
pub fn modular_defect(e: &Projection, f: &Projection, g: &Projection, tol: &TolerancePolicy) -> Result<f64> {
    check_dims(e.dim(), f.dim())?;
    check_dims(e.dim(), g.dim())?;
    if !proj_leq(e, g, tol)? {
        return Err(Error::Precondition("modular law needs e ≤ g".into()));
    }
    let lhs = meet(&join(e, f, tol)?, g, tol)?;
    let rhs = join(e, &meet(f, g, tol)?, tol)?;
    if lhs.rank() != rhs.rank() {
        return Ok(lhs.matrix().distance(rhs.matrix()).max(1.0));
    }
    Ok(lhs.matrix().distance(rhs.matrix()))
}

/// `(e ∨ f) ∧ g = e ∨ (f ∧ g)` within `tol_proj`, for `e ≤ g`.
pub fn modular_check(e: &Projection, f: &Projection, g: &Projection, tol: &TolerancePolicy) -> Result<bool> {
    Ok(modular_defect(e, f, g, tol)? <= tol.tol_proj)
}

/// `p` and `q` are in position p′ iff `p ∧ (1 − q) = 0 = (1 − p) ∧ q`.
pub fn position_pprime(p: &Projection, q: &Projection, tol: &TolerancePolicy) -> Result<bool> {
    Ok(meet(p, &q.complement(), tol)?.is_zero() && meet(&p.complement(), q, tol)?.is_zero())
}
