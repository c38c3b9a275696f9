//! Seeded random instances.
//!
//! Every trial draws from its own ChaCha8 stream: the 64-bit seed keys the
//! generator and the trial index selects the stream, so trials are
//! independent of each other and of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::effect::Effect;
use crate::error::Result;
use crate::matrix::{DenseMatrix, SymMatrix};
use crate::projection::Projection;
use crate::spectral::{spectral_join, spectral_meet};
use crate::tolerance::TolerancePolicy;

/// What a [`GeneratorSpec`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Effect,
    Projection,
    CommutingPair,
    GeneralPair,
    /// `b = a + (positive semidefinite perturbation)`.
    OrderedPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub dim: usize,
    pub kind: GeneratorKind,
    pub seed: u64,
}

/// One generated instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Effect(Effect),
    Projection(Projection),
    Pair(SymMatrix, SymMatrix),
}

impl GeneratorSpec {
    /// The `index`-th instance of this spec.
    pub fn instance(&self, index: u64) -> Instance {
        let mut g = Generator::new(self.seed, index, self.dim);
        match self.kind {
            GeneratorKind::Effect => Instance::Effect(g.effect()),
            GeneratorKind::Projection => Instance::Projection(g.projection()),
            GeneratorKind::CommutingPair => {
                let (a, b) = g.commuting_pair();
                Instance::Pair(a, b)
            }
            GeneratorKind::GeneralPair => Instance::Pair(g.symmetric(), g.symmetric()),
            GeneratorKind::OrderedPair => {
                let (a, b) = g.ordered_pair();
                Instance::Pair(a, b)
            }
        }
    }

    /// The instance sequence `0, 1, 2, …`.
    pub fn instances(&self) -> impl Iterator<Item = Instance> + '_ {
        (0..).map(|k| self.instance(k))
    }
}

/// First effect of `spec`, ignoring its kind.
pub fn random_effect(spec: &GeneratorSpec) -> Effect {
    Generator::new(spec.seed, 0, spec.dim).effect()
}

/// First projection of `spec`, ignoring its kind.
pub fn random_projection(spec: &GeneratorSpec) -> Projection {
    Generator::new(spec.seed, 0, spec.dim).projection()
}

/// First commuting pair of `spec`, ignoring its kind.
pub fn random_commuting_pair(spec: &GeneratorSpec) -> (SymMatrix, SymMatrix) {
    Generator::new(spec.seed, 0, spec.dim).commuting_pair()
}

/// Random matrices of a fixed dimension from one ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
    dim: usize,
}

impl Generator {
    pub fn new(seed: u64, stream: u64, dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.random_range(0..upper)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn gaussian_vector(&mut self) -> Vec<f64> {
        (0..self.dim).map(|_| self.gaussian()).collect()
    }

    /// An orthogonal matrix from Gram–Schmidt on independent standard normal
    /// columns (redrawn in the measure-zero degenerate case).
    pub fn orthogonal(&mut self) -> DenseMatrix {
        let n = self.dim;
        'draw: loop {
            let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
            for _ in 0..n {
                let mut v = self.gaussian_vector();
                // two passes keep the columns orthogonal to working precision
                for _ in 0..2 {
                    for c in &cols {
                        let d: f64 = v.iter().zip(c).map(|(x, y)| x * y).sum();
                        for (x, y) in v.iter_mut().zip(c) {
                            *x -= d * y;
                        }
                    }
                }
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-8 {
                    continue 'draw;
                }
                v.iter_mut().for_each(|x| *x /= norm);
                cols.push(v);
            }
            let data = (0..n).flat_map(|i| cols.iter().map(move |c| c[i])).collect();
            return DenseMatrix::new(n, data).expect("square");
        }
    }

    /// `Q · diag(values) · Qᵀ`.
    pub fn with_spectrum(&self, q: &DenseMatrix, values: &[f64]) -> SymMatrix {
        SymMatrix::from_weighted_outer(self.dim, values.iter().enumerate().map(|(k, &v)| (v, q.column(k))))
    }

    /// Symmetrized standard normal entries, scaled by `10^u`, `u ∈ [−1, 1)`.
    pub fn symmetric(&mut self) -> SymMatrix {
        let scale = 10f64.powf(self.uniform(-1.0, 1.0));
        let n = self.dim;
        let data: Vec<f64> = (0..n * n).map(|_| self.gaussian() * scale).collect();
        SymMatrix::new(n, data).expect("finite")
    }

    /// `Q · diag(u) · Qᵀ` with `uᵢ` uniform on `[0, 1)`.
    pub fn effect(&mut self) -> Effect {
        let q = self.orthogonal();
        let values: Vec<f64> = (0..self.dim).map(|_| self.uniform(0.0, 1.0)).collect();
        Effect::try_new(self.with_spectrum(&q, &values), &TolerancePolicy::default()).expect("spectrum in [0,1]")
    }

    /// An effect whose spectrum mixes exact 0s, 1s, repeated values and
    /// dyadic rationals with uniform draws.
    pub fn structured_effect(&mut self) -> Effect {
        let q = self.orthogonal();
        let shared = self.uniform(0.0, 1.0);
        let values: Vec<f64> = (0..self.dim)
            .map(|_| match self.index(6) {
                0 => 0.0,
                1 => 1.0,
                2 => shared,
                3 => self.index(16) as f64 / 16.0,
                _ => self.uniform(0.0, 1.0),
            })
            .collect();
        Effect::try_new(self.with_spectrum(&q, &values), &TolerancePolicy::default()).expect("spectrum in [0,1]")
    }

    /// Half plain, half structured effects.
    pub fn mixed_effect(&mut self) -> Effect {
        if self.coin() {
            self.effect()
        } else {
            self.structured_effect()
        }
    }

    /// Two effects sharing one eigenbasis, with spectra drawn like
    /// [`Generator::structured_effect`].
    pub fn commuting_effects(&mut self) -> (Effect, Effect) {
        let q = self.orthogonal();
        let draw = |g: &mut Self| -> Vec<f64> {
            (0..g.dim)
                .map(|_| match g.index(4) {
                    0 => 0.0,
                    1 => g.index(8) as f64 / 8.0,
                    _ => g.uniform(0.0, 1.0),
                })
                .collect()
        };
        let (x, y) = (draw(self), draw(self));
        let tol = TolerancePolicy::default();
        (
            Effect::try_new(self.with_spectrum(&q, &x), &tol).expect("spectrum in [0,1]"),
            Effect::try_new(self.with_spectrum(&q, &y), &tol).expect("spectrum in [0,1]"),
        )
    }

    /// `Q · diag(bits) · Qᵀ` with rank uniform on `0..=dim`.
    pub fn projection(&mut self) -> Projection {
        let rank = self.index(self.dim + 1);
        self.projection_of_rank(rank)
    }

    pub fn projection_of_rank(&mut self, rank: usize) -> Projection {
        let q = self.orthogonal();
        Projection::from_orthonormal(self.dim, (0..rank).map(|k| q.column(k)).collect())
    }

    /// A subprojection of `p` of uniformly chosen rank.
    pub fn subprojection(&mut self, p: &Projection) -> Projection {
        let basis = p.range_basis();
        let keep = self.index(basis.len() + 1);
        // rotate within range(p) so the subprojection is not aligned with p's eigenbasis
        let mut inner = Generator::new(self.rng.random(), 0, basis.len().max(1));
        let rot = inner.orthogonal();
        let vectors = (0..keep)
            .map(|k| {
                let mut v = vec![0.0; self.dim];
                for (j, b) in basis.iter().enumerate() {
                    let c = rot.get(j, k);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
        Projection::from_orthonormal(self.dim, vectors)
    }

    /// Two elements sharing one eigenbasis with independent spectra; half the
    /// time the second spectrum dominates the first entrywise.
    pub fn commuting_pair(&mut self) -> (SymMatrix, SymMatrix) {
        let q = self.orthogonal();
        let a: Vec<f64> = (0..self.dim).map(|_| self.uniform(-1.0, 1.0)).collect();
        let b: Vec<f64> = if self.coin() {
            a.iter().map(|x| if self.coin() { *x } else { x + self.uniform(0.0, 1.0) }).collect()
        } else {
            (0..self.dim).map(|_| self.uniform(-1.0, 1.0)).collect()
        };
        if self.coin() {
            (self.with_spectrum(&q, &a), self.with_spectrum(&q, &b))
        } else {
            (self.with_spectrum(&q, &b), self.with_spectrum(&q, &a))
        }
    }

    /// `(a, a + ggᵀ)` for random `a` and a random rank-deficient `g`.
    pub fn ordered_pair(&mut self) -> (SymMatrix, SymMatrix) {
        let a = self.symmetric();
        let rank = 1 + self.index(self.dim);
        let scale = self.uniform(0.0, 1.0);
        let terms: Vec<(f64, Vec<f64>)> = (0..rank).map(|_| (scale, self.gaussian_vector())).collect();
        let bump = SymMatrix::from_weighted_outer(self.dim, terms);
        let b = &a + &bump;
        (a, b)
    }

    /// A pair with `a ≤ₛ b`, from one of: every eigenvalue of `a` raised by a
    /// nonnegative amount in the same eigenbasis (each `p_{b,λ}` shrinks);
    /// `b = a ∨ₛ c`; `a = b ∧ₛ c`. The lattice cases fail only when the
    /// tolerances are too tight for the construction.
    pub fn spectral_pair(&mut self, tol: &TolerancePolicy) -> Result<(SymMatrix, SymMatrix)> {
        match self.index(3) {
            0 => {
                let q = self.orthogonal();
                let values: Vec<f64> = (0..self.dim).map(|_| self.uniform(-1.0, 1.0)).collect();
                let raised: Vec<f64> =
                    values.iter().map(|x| if self.coin() { *x } else { x + self.uniform(0.0, 0.5) }).collect();
                Ok((self.with_spectrum(&q, &values), self.with_spectrum(&q, &raised)))
            }
            1 => {
                let (a, c) = (self.effect().into_matrix(), self.effect().into_matrix());
                let b = spectral_join(&a, &c, tol)?;
                Ok((a, b))
            }
            _ => {
                let (b, c) = (self.effect().into_matrix(), self.effect().into_matrix());
                Ok((spectral_meet(&b, &c, tol)?, b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::spectral_leq;
    use crate::synaptic::{commutes, numerical_leq};

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn deterministic_per_seed_and_stream() {
        let spec = GeneratorSpec { dim: 2, kind: GeneratorKind::Effect, seed: 42 };
        let a: Vec<_> = spec.instances().take(3).collect();
        let b: Vec<_> = spec.instances().take(3).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        let other = GeneratorSpec { seed: 43, ..spec };
        assert_ne!(other.instance(0), a[0]);
    }

    #[test]
    fn dim_one_effect_is_unit_interval_scalar() {
        let e = random_effect(&GeneratorSpec { dim: 1, kind: GeneratorKind::Effect, seed: 7 });
        let x = e.matrix().get(0, 0);
        assert!((0.0..=1.0).contains(&x));
    }

    #[test]
    fn orthogonal_is_orthogonal() {
        let mut g = Generator::new(1, 0, 6);
        let q = g.orthogonal();
        let err = q.transpose().mul(&q).sub(&DenseMatrix::identity(6)).frobenius_norm();
        assert!(err < 1e-14);
    }

    #[test]
    fn pair_kinds_hold_their_promises() {
        let tol = tol();
        for s in 0..40 {
            let mut g = Generator::new(3, s, 4);
            let (a, b) = g.commuting_pair();
            assert!(commutes(&a, &b, 1e-12).unwrap());
            let (a, b) = g.ordered_pair();
            assert!(numerical_leq(&a, &b, &tol).unwrap());
            let (a, b) = g.spectral_pair(&tol).unwrap();
            assert!(spectral_leq(&a, &b, &tol).unwrap());
            let p = g.projection();
            let sub = g.subprojection(&p);
            assert!(crate::lattice::proj_leq(&sub, &p, &tol).unwrap());
        }
    }
}
