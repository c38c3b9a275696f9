//! The spectral order `≤ₛ` and its lattice operations.
//!
//! `a ≤ₛ b` iff `p_{b,λ} ≤ p_{a,λ}` for every real `λ`. Both resolutions are
//! right-continuous step functions, so it is enough to compare them at the
//! merged breakpoints of `a` and `b`.
//!
//! Suprema and infima are assembled resolution-first:
//!
//! * `p_{a∨ₛb,λ} = p_{a,λ} ∧ p_{b,λ}`
//! * `p_{a∧ₛb,λ} = ⋀_{μ>λ} (p_{a,μ} ∨ p_{b,μ})`
//!
//! and the element is recovered with [`StepResolution::reconstruct`]. The
//! right limit in the infimum is exact when probed once strictly inside each
//! interval between merged breakpoints, since the join is constant there.

use crate::effect::Effect;
use crate::error::{check_dims, Error, Result};
use crate::lattice::{family_join, family_meet, join, proj_leq};
use crate::projection::Projection;
use crate::matrix::SymMatrix;
use crate::resolution::{merged_grid, resolution_of, StepResolution};
use crate::tolerance::TolerancePolicy;

const DRIFT_CONDITIONING: f64 = 256.0;

/// `a ≤ₛ b`.
pub fn spectral_leq(a: &SymMatrix, b: &SymMatrix, tol: &TolerancePolicy) -> Result<bool> {
    check_dims(a.dim(), b.dim())?;
    spectral_leq_res(&resolution_of(a, tol), &resolution_of(b, tol), tol)
}

/// `a ≤ₛ b` on precomputed resolutions.
pub fn spectral_leq_res(ra: &StepResolution, rb: &StepResolution, tol: &TolerancePolicy) -> Result<bool> {
    check_dims(ra.dim(), rb.dim())?;
    for lambda in merged_grid([ra, rb], grid_tolerance([ra, rb], tol)) {
        if !proj_leq(&rb.eval(lambda), &ra.eval(lambda), tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a ∨ₛ b`.
pub fn spectral_join(a: &SymMatrix, b: &SymMatrix, tol: &TolerancePolicy) -> Result<SymMatrix> {
    check_dims(a.dim(), b.dim())?;
    let res = sup_resolution(&[resolution_of(a, tol), resolution_of(b, tol)], tol)?;
    canonicalize(&res, tol)
}

/// `a ∧ₛ b`.
pub fn spectral_meet(a: &SymMatrix, b: &SymMatrix, tol: &TolerancePolicy) -> Result<SymMatrix> {
    check_dims(a.dim(), b.dim())?;
    let res = inf_resolution(&[resolution_of(a, tol), resolution_of(b, tol)], tol)?;
    canonicalize(&res, tol)
}

/// Supremum of a nonempty finite family of effects under `≤ₛ`.
pub fn family_sup(effects: &[Effect], tol: &TolerancePolicy) -> Result<Effect> {
    let resolutions = effect_resolutions(effects, tol)?;
    let m = canonicalize(&sup_resolution(&resolutions, tol)?, tol)?;
    Effect::try_new(m, tol)
}

/// Infimum of a nonempty finite family of effects under `≤ₛ`.
pub fn family_inf(effects: &[Effect], tol: &TolerancePolicy) -> Result<Effect> {
    let resolutions = effect_resolutions(effects, tol)?;
    let m = canonicalize(&inf_resolution(&resolutions, tol)?, tol)?;
    Effect::try_new(m, tol)
}

/// `u_λ = ⋀ₙ p_{aₙ,λ}` on the merged grid.
pub fn sup_resolution(family: &[StepResolution], tol: &TolerancePolicy) -> Result<StepResolution> {
    let dim = family_dim(family)?;
    let grid = merged_grid(family, grid_tolerance(family, tol));
    let mut steps = Vec::with_capacity(grid.len());
    for &lambda in &grid {
        let at: Vec<_> = family.iter().map(|r| r.eval(lambda)).collect();
        let u = family_meet(dim, &at, tol)?;
        steps.push((lambda, nested(&steps, u, tol)?));
    }
    StepResolution::from_monotone_steps(steps, grid_tolerance(family, tol))
}

/// `v_λ = ⋀_{μ>λ} ⋁ₙ p_{aₙ,μ}` on the merged grid, with the right limit
/// probed at the midpoint to the next breakpoint (or one past the last).
pub fn inf_resolution(family: &[StepResolution], tol: &TolerancePolicy) -> Result<StepResolution> {
    let dim = family_dim(family)?;
    let grid = merged_grid(family, grid_tolerance(family, tol));
    let mut steps = Vec::with_capacity(grid.len());
    for (k, &lambda) in grid.iter().enumerate() {
        let probe = match grid.get(k + 1) {
            Some(next) => 0.5 * (lambda + next),
            None => lambda + 1.0,
        };
        let at: Vec<_> = family.iter().map(|r| r.eval(probe)).collect();
        let v = family_join(dim, &at, tol)?;
        steps.push((lambda, nested(&steps, v, tol)?));
    }
    StepResolution::from_monotone_steps(steps, grid_tolerance(family, tol))
}

/// `p` joined with the previous step, so that steps computed independently
/// at nearby angles stay exactly nested.
fn nested(steps: &[(f64, Projection)], p: Projection, tol: &TolerancePolicy) -> Result<Projection> {
    match steps.last() {
        Some((_, prev)) => join(prev, &p, tol),
        None => Ok(p),
    }
}

/// Reconstructs the element of a constructed resolution and checks that
/// re-resolving it gives the same resolution back.
pub fn canonicalize(res: &StepResolution, tol: &TolerancePolicy) -> Result<SymMatrix> {
    let m = res.reconstruct();
    let again = resolution_of(&m, tol);
    let discrepancy = again.discrepancy(res);
    let allowed = tol.tol_proj.max(grid_tolerance([res], tol)).max(conditioning_slack(res));
    if discrepancy > allowed {
        return Err(Error::ResolutionDrift { discrepancy });
    }
    Ok(m)
}

fn effect_resolutions(effects: &[Effect], tol: &TolerancePolicy) -> Result<Vec<StepResolution>> {
    let first = effects.first().ok_or(Error::EmptyFamily)?;
    effects
        .iter()
        .map(|e| {
            check_dims(first.dim(), e.dim())?;
            Ok(resolution_of(e.matrix(), tol))
        })
        .collect()
}

fn family_dim(family: &[StepResolution]) -> Result<usize> {
    let dim = family.first().ok_or(Error::EmptyFamily)?.dim();
    for r in family {
        check_dims(dim, r.dim())?;
    }
    Ok(dim)
}

/// Eigenvectors of clusters a gap `δ` apart are only determined to about
/// `ε‖m‖/δ`, so closely spaced breakpoints loosen the drift check.
fn conditioning_slack(res: &StepResolution) -> f64 {
    let scale = res.lower().abs().max(res.upper().abs()).max(1.0);
    let gap = res.breakpoints().windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    DRIFT_CONDITIONING * f64::EPSILON * scale / gap
}

/// Breakpoints closer than this are one grid point.
fn grid_tolerance<'a>(family: impl IntoIterator<Item = &'a StepResolution>, tol: &TolerancePolicy) -> f64 {
    let scale = family
        .into_iter()
        .map(|r| r.lower().abs().max(r.upper().abs()))
        .fold(0.0, f64::max);
    tol.eig_threshold(scale)
}
