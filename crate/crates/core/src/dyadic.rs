//! Dyadic expansion `e = Σⱼ 2⁻ʲ pⱼ` of an effect into projections that are
//! functions of `e`, and the carrier as the join of those projections.

use crate::effect::Effect;
use crate::eigen::spectrum;
use crate::error::{Error, Result};
use crate::lattice::family_join;
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::tolerance::TolerancePolicy;

/// Largest step count whose weights `2⁻ʲ` and partial sums stay exact in binary64.
pub const MAX_STEPS: usize = 52;

/// `2⁻ⁿ` for `n ≤ 1074`.
pub fn dyadic(n: usize) -> f64 {
    0.5f64.powi(n as i32)
}

/// Residual eigenvalues at most `λ(1 + tol_eig)` count as ties with the step
/// value `λ`. Relative to `λ`, so that `e = 1` (residual exactly `2λ` at every
/// step) keeps every step, while exact hits such as `¾q` at step 2 are ties.
fn tie_cut(lambda: f64, tol: &TolerancePolicy) -> f64 {
    tol.tol_eig * lambda
}

/// Matrix residuals carry rounding noise of this order on their eigenvalues.
fn noise_floor(radius: f64) -> f64 {
    64.0 * f64::EPSILON * radius.max(1.0)
}

/// For `0 ⪯ b ⪯ 2⁻ⁿ`, the projection `p = 1 − p_{b,λ}` with `λ = 2⁻⁽ⁿ⁺¹⁾`,
/// which satisfies `0 ⪯ b − λp ⪯ λ`.
///
/// Eigenvalues tied with `λ` count as `≤ λ` and are left out of `p`.
pub fn dyadic_step(b: &SymMatrix, n: usize, tol: &TolerancePolicy) -> Result<Projection> {
    let es = spectrum(b);
    let bound = dyadic(n);
    if es.min() < -tol.tol_psd || es.max() > bound + tol.tol_psd {
        return Err(Error::Precondition(format!(
            "spectrum [{:e}, {:e}] is not inside [0, 2^-{n}]",
            es.min(),
            es.max()
        )));
    }
    let lambda = dyadic(n + 1);
    let cut = tie_cut(lambda, tol).max(noise_floor(es.spectral_radius()));
    Ok(es.projector_where(|x| x > lambda + cut))
}

/// The first `steps` projections `p₁, p₂, …` of the dyadic expansion of `e`.
///
/// All residuals `e − Σ_{j<n} 2⁻ʲpⱼ` are diagonal in one eigenbasis of `e`,
/// so the expansion runs on the eigenvalues: each one is expanded in binary
/// with the same tie rule as [`dyadic_step`]. Eigenvalues below the carrier
/// threshold are taken as 0. The scalar subtractions `r − λ` with
/// `λ < r ≤ 2λ` are exact in binary64.
pub fn dyadic_expand(e: &Effect, steps: usize, tol: &TolerancePolicy) -> Result<Vec<Projection>> {
    check_steps(steps)?;
    let es = spectrum(e.matrix());
    let zero = tol.eig_threshold(es.spectral_radius());
    let mut residual: Vec<f64> = es.eigenvalues().iter().map(|&x| if x > zero { x } else { 0.0 }).collect();
    let mut out = Vec::with_capacity(steps);
    for j in 1..=steps {
        let lambda = dyadic(j);
        let cut = tie_cut(lambda, tol);
        let mut chosen = Vec::new();
        for (k, r) in residual.iter_mut().enumerate() {
            if *r > lambda + cut {
                *r -= lambda;
                chosen.push(k);
            }
        }
        out.push(es.projector(chosen));
    }
    Ok(out)
}

/// The same expansion computed by iterating [`dyadic_step`] on matrix
/// residuals `bⱼ = bⱼ₋₁ − 2⁻ʲpⱼ`. Used to cross-check [`dyadic_expand`].
pub fn dyadic_expand_matrix(e: &Effect, steps: usize, tol: &TolerancePolicy) -> Result<Vec<Projection>> {
    check_steps(steps)?;
    let mut b = e.matrix().clone();
    let mut out = Vec::with_capacity(steps);
    for j in 1..=steps {
        let p = dyadic_step(&b, j - 1, tol)?;
        b = &b - &p.matrix().scale(dyadic(j));
        out.push(p);
    }
    Ok(out)
}

/// `e − Σⱼ 2⁻ʲ pⱼ` over the given projections.
pub fn dyadic_residual(e: &Effect, projections: &[Projection]) -> SymMatrix {
    projections
        .iter()
        .enumerate()
        .fold(e.matrix().clone(), |acc, (i, p)| &acc - &p.matrix().scale(dyadic(i + 1)))
}

/// `⋁ⱼ pⱼ` over the first `steps` dyadic projections. Always below `e°`, and
/// equal to it once `2⁻ˢᵗᵉᵖˢ` drops below the smallest positive eigenvalue.
pub fn carrier_via_join(e: &Effect, steps: usize, tol: &TolerancePolicy) -> Result<Projection> {
    family_join(e.dim(), &dyadic_expand(e, steps, tol)?, tol)
}

fn check_steps(steps: usize) -> Result<()> {
    if (1..=MAX_STEPS).contains(&steps) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("step count {steps} outside 1..={MAX_STEPS}")))
    }
}
