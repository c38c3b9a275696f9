//! Spectral resolutions `λ ↦ p_{a,λ}` as finite right-continuous step functions.
//!
//! A [`StepResolution`] stores only the jump points `λ₁ < … < λ_k` and the
//! value `pᵢ` taken on `[λᵢ, λᵢ₊₁)`; the value is 0 below `λ₁` and the last
//! projection is the identity. For an element with finite spectrum this is a
//! lossless representation of the full real-indexed family.

use serde::{Deserialize, Serialize};

use crate::effect::Effect;
use crate::eigen::spectrum;
use crate::error::{Error, Result};
use crate::lattice::proj_leq;
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::synaptic::{carrier, pos_part};
use crate::tolerance::TolerancePolicy;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepResolution {
    breakpoints: Vec<f64>,
    projections: Vec<Projection>,
    /// Breakpoints within `cut` of a query point count as reached.
    #[serde(default)]
    cut: f64,
}

impl StepResolution {
    /// Validates a step resolution: strictly ascending finite breakpoints,
    /// nested projections, identity at the last breakpoint.
    pub fn new(breakpoints: Vec<f64>, projections: Vec<Projection>, tol: &TolerancePolicy) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::InvalidResolution("no breakpoints".into()));
        }
        if breakpoints.len() != projections.len() {
            return Err(Error::InvalidResolution(format!(
                "{} breakpoints but {} projections",
                breakpoints.len(),
                projections.len()
            )));
        }
        if breakpoints.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidResolution("non-finite breakpoint".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidResolution("breakpoints must be strictly ascending".into()));
        }
        let dim = projections[0].dim();
        if projections.iter().any(|p| p.dim() != dim) {
            return Err(Error::InvalidResolution("projections of differing dimension".into()));
        }
        for w in projections.windows(2) {
            if !proj_leq(&w[0], &w[1], tol)? {
                return Err(Error::InvalidResolution("projections are not increasing".into()));
            }
        }
        if !projections[projections.len() - 1].is_identity() {
            return Err(Error::InvalidResolution("last projection is not the identity".into()));
        }
        let radius = breakpoints[0].abs().max(breakpoints[breakpoints.len() - 1].abs());
        let cut = tol.eig_threshold(radius);
        Ok(Self { breakpoints, projections, cut })
    }

    /// Builds from (breakpoint, projection) pairs produced by a monotone
    /// construction, dropping pairs that do not raise the rank. Fails if the
    /// construction never reaches the identity, which happens when the
    /// tolerances are too tight to absorb round-off.
    pub(crate) fn from_monotone_steps(steps: Vec<(f64, Projection)>, cut: f64) -> Result<Self> {
        let mut breakpoints = Vec::new();
        let mut projections: Vec<Projection> = Vec::new();
        let mut rank = 0;
        for (lambda, p) in steps {
            if p.rank() > rank {
                rank = p.rank();
                breakpoints.push(lambda);
                projections.push(p);
            }
        }
        if !projections.last().is_some_and(Projection::is_identity) {
            return Err(Error::InvalidResolution(format!("monotone construction stopped at rank {rank}")));
        }
        Ok(Self { breakpoints, projections, cut })
    }

    pub fn dim(&self) -> usize {
        self.projections[0].dim()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn projections(&self) -> &[Projection] {
        &self.projections
    }

    /// `L_a`, the first breakpoint (smallest eigenvalue).
    pub fn lower(&self) -> f64 {
        self.breakpoints[0]
    }

    /// `U_a`, the last breakpoint (largest eigenvalue).
    pub fn upper(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1]
    }

    /// Number of breakpoints at or below `lambda`, ties included.
    fn steps_at(&self, lambda: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= lambda + self.cut)
    }

    /// `p_λ`: 0 below the first breakpoint, `pᵢ` on `[λᵢ, λᵢ₊₁)`.
    pub fn eval(&self, lambda: f64) -> Projection {
        match self.steps_at(lambda) {
            0 => Projection::zero(self.dim()),
            k => self.projections[k - 1].clone(),
        }
    }

    /// `⋁_{μ<λ} p_μ`, the left limit at `λ`.
    pub fn eval_left(&self, lambda: f64) -> Projection {
        match self.breakpoints.partition_point(|&b| b < lambda - self.cut) {
            0 => Projection::zero(self.dim()),
            k => self.projections[k - 1].clone(),
        }
    }

    /// The jump `pᵢ − pᵢ₋₁` at each breakpoint, i.e. the eigenprojections.
    pub fn jumps(&self) -> Vec<(f64, Projection)> {
        let mut prev = SymMatrix::zeros(self.dim());
        let mut out = Vec::with_capacity(self.breakpoints.len());
        for (lambda, p) in self.breakpoints.iter().zip(&self.projections) {
            out.push((*lambda, Projection::rebuild(&(p.matrix() - &prev))));
            prev = p.matrix().clone();
        }
        out
    }

    /// `Σ λᵢ (pᵢ − pᵢ₋₁)` with `p₀ = 0`.
    pub fn reconstruct(&self) -> SymMatrix {
        let mut acc = SymMatrix::zeros(self.dim());
        let mut prev = SymMatrix::zeros(self.dim());
        for (lambda, p) in self.breakpoints.iter().zip(&self.projections) {
            let jump = p.matrix() - &prev;
            acc = &acc + &jump.scale(*lambda);
            prev = p.matrix().clone();
        }
        acc
    }

    /// Resolution of `αa + β`: `p_{αa+β,λ} = p_{a,(λ−β)/α}`, so breakpoints move
    /// and projections stay.
    pub fn affine(&self, alpha: f64, beta: f64) -> Result<Self> {
        if alpha <= 0.0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidArgument(format!("affine map needs α > 0, got α = {alpha}")));
        }
        Ok(Self {
            breakpoints: self.breakpoints.iter().map(|l| alpha * l + beta).collect(),
            projections: self.projections.clone(),
            cut: alpha * self.cut,
        })
    }

    /// Resolution of `−a` via `p_{−a,λ} = 1 − p_{a,−λ} + d_{a,−λ}`.
    pub fn negate(&self) -> Self {
        let n = self.dim();
        let one = SymMatrix::identity(n);
        let jumps = self.jumps();
        let mut breakpoints = Vec::with_capacity(jumps.len());
        let mut projections = Vec::with_capacity(jumps.len());
        for (lambda, d) in jumps.iter().rev() {
            let m = &(&one - self.eval(*lambda).matrix()) + d.matrix();
            breakpoints.push(-lambda);
            projections.push(Projection::rebuild(&m));
        }
        Self { breakpoints, projections, cut: self.cut }
    }

    /// Largest breakpoint gap or projection distance against `other`;
    /// infinite if the breakpoint counts differ.
    pub fn discrepancy(&self, other: &Self) -> f64 {
        if self.breakpoints.len() != other.breakpoints.len() || self.dim() != other.dim() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.breakpoints.len() {
            worst = worst.max((self.breakpoints[i] - other.breakpoints[i]).abs());
            if self.projections[i].rank() != other.projections[i].rank() {
                return f64::INFINITY;
            }
            worst = worst.max(self.projections[i].matrix().distance(other.projections[i].matrix()));
        }
        worst
    }
}

/// The spectral resolution of `a`: breakpoints are the clustered distinct
/// eigenvalues, and the projection at `λᵢ` projects onto all eigenvectors in
/// clusters up to and including `i`.
pub fn resolution_of(a: &SymMatrix, tol: &TolerancePolicy) -> StepResolution {
    let es = spectrum(a);
    let cut = tol.eig_threshold(es.spectral_radius());
    let clusters = es.clusters(cut);
    let mut breakpoints = Vec::with_capacity(clusters.len());
    let mut projections = Vec::with_capacity(clusters.len());
    for c in &clusters {
        breakpoints.push(c.value);
        projections.push(es.projector(0..c.members.end));
    }
    StepResolution { breakpoints, projections, cut }
}

/// `p_{a,λ} = 1 − ((a − λ)⁺)°`, computed directly from the definition.
pub fn resolution_projection(a: &SymMatrix, lambda: f64, tol: &TolerancePolicy) -> Projection {
    carrier(&pos_part(&a.shift(-lambda), tol), tol).complement()
}

/// The λ-eigenprojection `d_{a,λ} = 1 − (a − λ)°`: the projector onto
/// eigenvectors with eigenvalue within `tol.eig_threshold(‖a‖)` of `λ`.
pub fn eigenprojection(a: &SymMatrix, lambda: f64, tol: &TolerancePolicy) -> Projection {
    let es = spectrum(a);
    let cut = tol.eig_threshold(es.spectral_radius());
    es.projector_where(|x| (x - lambda).abs() <= cut)
}

/// `eₙ = 1 − (1/n) Σ_{k=0}^{n−1} p_{e,k/n}`.
///
/// All `p_{e,k/n}` come from one eigendecomposition of `e`: on an eigencluster
/// with value `μ` the sum counts the `k` with `μ ≤ k/n` (ties within the
/// clustering threshold included), so each cluster gets weight
/// `1 − count/n`.
pub fn step_approximant(e: &Effect, n: usize, tol: &TolerancePolicy) -> Result<SymMatrix> {
    if n < 1 {
        return Err(Error::InvalidArgument("approximant order must be at least 1".into()));
    }
    let es = spectrum(e.matrix());
    let cut = tol.eig_threshold(es.spectral_radius());
    let nf = n as f64;
    Ok(es.map_clusters(cut, |mu| {
        let count = (0..n).filter(|&k| mu <= k as f64 / nf + cut).count();
        1.0 - count as f64 / nf
    }))
}

/// Sorted union of the breakpoints of several resolutions, with values closer
/// than `tol` merged into their maximum.
pub fn merged_grid<'a>(resolutions: impl IntoIterator<Item = &'a StepResolution>, tol: f64) -> Vec<f64> {
    let mut all: Vec<f64> = resolutions.into_iter().flat_map(|r| r.breakpoints.iter().copied()).collect();
    all.sort_by(f64::total_cmp);
    let mut grid: Vec<f64> = Vec::with_capacity(all.len());
    for x in all {
        match grid.last_mut() {
            Some(last) if x - *last <= tol => *last = x,
            _ => grid.push(x),
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn diag(v: &[f64]) -> SymMatrix {
        SymMatrix::diag(v).unwrap()
    }

    fn line(theta: f64) -> Projection {
        Projection::from_orthonormal(2, vec![vec![theta.cos(), theta.sin()]])
    }

    #[test]
    fn projection_resolution_has_three_regimes() {
        let q = line(0.3);
        let res = resolution_of(q.matrix(), &tol());
        assert_eq!(res.breakpoints().len(), 2);
        assert!(res.eval(-0.5).is_zero());
        assert!(res.eval(0.0).approx_eq(&q.complement(), 1e-14));
        assert!(res.eval(0.7).approx_eq(&q.complement(), 1e-14));
        assert!(res.eval(1.0).is_identity());
    }

    #[test]
    fn diagonal_resolution() {
        let res = resolution_of(&diag(&[1.0, 2.0]), &tol());
        assert_eq!(res.breakpoints(), &[1.0, 2.0]);
        assert_eq!(res.projections()[0].matrix(), &diag(&[1.0, 0.0]));
        assert!(res.projections()[1].is_identity());
        assert_eq!(res.eval(1.5).matrix(), &diag(&[1.0, 0.0]));
        assert!(res.eval(res.lower() - 1.0).is_zero());
        assert!(res.eval(res.upper()).is_identity());
    }

    #[test]
    fn scalar_resolution_is_one_step() {
        let res = resolution_of(&SymMatrix::scalar(3, 0.4), &tol());
        assert_eq!(res.breakpoints().len(), 1);
        assert!((res.lower() - 0.4).abs() < 1e-15);
        assert!(res.projections()[0].is_identity());
    }

    #[test]
    fn eigenprojection_examples() {
        assert!(eigenprojection(&diag(&[1.0, 1.0]), 1.0, &tol()).is_identity());
        assert!(eigenprojection(&diag(&[1.0, 2.0]), 3.0, &tol()).is_zero());
        let swap = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let d = eigenprojection(&swap, 1.0, &tol());
        assert!(d.approx_eq(&line(std::f64::consts::FRAC_PI_4), 1e-15));
    }

    #[test]
    fn reconstruct_examples() {
        let a = diag(&[1.0, 2.0]);
        assert!(resolution_of(&a, &tol()).reconstruct().distance(&a) < 1e-15);
        let single = StepResolution::new(vec![0.7], vec![Projection::identity(2)], &tol()).unwrap();
        assert_eq!(single.reconstruct(), SymMatrix::scalar(2, 0.7));
        let q = line(1.1);
        let res = StepResolution::new(vec![0.0, 1.0], vec![q.complement(), Projection::identity(2)], &tol())
            .unwrap();
        assert!(res.reconstruct().distance(q.matrix()) < 1e-15);
    }

    #[test]
    fn invalid_resolutions_rejected() {
        let id = Projection::identity(2);
        assert!(StepResolution::new(vec![], vec![], &tol()).is_err());
        assert!(StepResolution::new(vec![1.0, 0.0], vec![line(0.0), id.clone()], &tol()).is_err());
        assert!(StepResolution::new(vec![0.0, 1.0], vec![id.clone(), line(0.0)], &tol()).is_err());
        assert!(StepResolution::new(vec![0.0], vec![line(0.0)], &tol()).is_err());
        assert!(StepResolution::new(vec![0.0, 1.0], vec![line(0.0)], &tol()).is_err());
    }

    #[test]
    fn affine_examples() {
        let res = resolution_of(&diag(&[0.0, 1.0]), &tol());
        assert_eq!(res.affine(1.0, 0.0).unwrap(), res);
        assert_eq!(res.affine(2.0, 1.0).unwrap().breakpoints(), &[1.0, 3.0]);
        assert!(res.affine(0.0, 1.0).is_err());
        assert!(res.affine(-1.0, 1.0).is_err());

        // rescaling into the unit interval: a ↦ a/(2n) + ½
        let a = diag(&[-3.0, 0.5, 2.0]);
        let e = resolution_of(&a, &tol()).affine(1.0 / 6.0, 0.5).unwrap();
        assert!(e.lower() >= 0.0 && e.upper() <= 1.0);
        let direct = resolution_of(&a.scale(1.0 / 6.0).shift(0.5), &tol());
        assert!(e.discrepancy(&direct) < 1e-15);
    }

    #[test]
    fn negate_examples() {
        let res = resolution_of(&diag(&[1.0, 2.0]), &tol()).negate();
        assert_eq!(res.breakpoints(), &[-2.0, -1.0]);
        assert_eq!(res.projections()[0].matrix(), &diag(&[0.0, 1.0]));
        let s = resolution_of(&SymMatrix::scalar(2, 0.3), &tol()).negate();
        assert_eq!(s.breakpoints(), &[-0.3]);
    }

    #[test]
    fn approximant_examples() {
        let p = line(0.8);
        let e = Effect::from(&p);
        for n in [1, 2, 3, 7] {
            assert!(step_approximant(&e, n, &tol()).unwrap().distance(p.matrix()) < 1e-15);
        }
        let half = Effect::try_new(SymMatrix::scalar(2, 0.5), &tol()).unwrap();
        assert_eq!(step_approximant(&half, 2, &tol()).unwrap(), SymMatrix::scalar(2, 0.5));
        let e = Effect::try_new(diag(&[0.3, 0.7]), &tol()).unwrap();
        let e10 = step_approximant(&e, 10, &tol()).unwrap();
        assert!(e10.distance(e.matrix()) <= 0.1);
        assert!(step_approximant(&e, 0, &tol()).is_err());
    }

    #[test]
    fn merged_grid_collapses_near_ties() {
        let a = resolution_of(&diag(&[0.0, 1.0]), &tol());
        let b = resolution_of(&diag(&[1.0 + 1e-13, 0.5]), &tol());
        assert_eq!(merged_grid([&a, &b], 1e-9), vec![0.0, 0.5, 1.0 + 1e-13]);
    }
}
