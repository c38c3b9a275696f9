//! Involution, Kleene and Brouwer-Zadeh structure on effects under either
//! order, and the carrier laws for meets and joins.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::effect::Effect;
use crate::error::{check_dims, Error, Result};
use crate::lattice::{join, meet};
use crate::matrix::SymMatrix;
use crate::projection::Projection;
use crate::report::{Outcome, VerificationReport};
use crate::resolution::{merged_grid, resolution_of};
use crate::spectral::{spectral_join, spectral_leq, spectral_meet};
use crate::synaptic::{carrier, common_eigenbasis, commutes, numerical_leq, quadratic_map};
use crate::tolerance::TolerancePolicy;

/// Allowed projector distance in the carrier laws.
pub const CARRIER_LAW_LIMIT: f64 = 1e-7;

/// Allowed distance between `e∼∼` and `e°`.
pub const DOUBLE_TILDE_LIMIT: f64 = 1e-8;

/// A partial-order test on symmetric matrices.
pub type Comparator = fn(&SymMatrix, &SymMatrix, &TolerancePolicy) -> Result<bool>;

/// Which order a check runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderTag {
    /// The numerical order `a ⪯ b` iff `b − a ⪰ 0`.
    #[serde(alias = "numerical")]
    Synaptic,
    /// The spectral order `≤ₛ`.
    Spectral,
}

impl OrderTag {
    pub fn comparator(self) -> Comparator {
        match self {
            OrderTag::Synaptic => numerical_leq,
            OrderTag::Spectral => spectral_leq,
        }
    }

    pub fn leq(self, a: &SymMatrix, b: &SymMatrix, tol: &TolerancePolicy) -> Result<bool> {
        (self.comparator())(a, b, tol)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrderTag::Synaptic => "synaptic",
            OrderTag::Spectral => "spectral",
        }
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "synaptic" | "numerical" => Ok(OrderTag::Synaptic),
            "spectral" => Ok(OrderTag::Spectral),
            other => Err(Error::InvalidArgument(format!("unknown order `{other}`"))),
        }
    }
}

/// `a⊥ = 1 − a`.
pub fn kleene_complement(a: &SymMatrix) -> SymMatrix {
    &SymMatrix::identity(a.dim()) - a
}

/// `e∼ = (e°)⊥`.
pub fn brouwer_complement(e: &Effect, tol: &TolerancePolicy) -> Projection {
    carrier(e.matrix(), tol).complement()
}

/// (I1) `a⊥⊥ = a`, measured as the Frobenius defect relative to `1 + ‖a‖_F`.
pub fn axiom_i1(a: &SymMatrix, complement: &dyn Fn(&SymMatrix) -> SymMatrix, tol: &TolerancePolicy) -> Outcome {
    let back = complement(&complement(a));
    Outcome::within(back.distance(a) / (1.0 + a.frobenius_norm()), tol.tol_recon)
}

/// (I2) `a ≤ b ⇒ b⊥ ≤ a⊥`.
pub fn axiom_i2(
    a: &SymMatrix,
    b: &SymMatrix,
    complement: &dyn Fn(&SymMatrix) -> SymMatrix,
    leq: Comparator,
    tol: &TolerancePolicy,
) -> Result<Outcome> {
    if !leq(a, b, tol)? {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::from_bool(leq(&complement(b), &complement(a), tol)?))
}

/// (R) `a ≤ a⊥` and `b ≤ b⊥` imply `a ≤ b⊥`.
pub fn axiom_r(
    a: &SymMatrix,
    b: &SymMatrix,
    complement: &dyn Fn(&SymMatrix) -> SymMatrix,
    leq: Comparator,
    tol: &TolerancePolicy,
) -> Result<Outcome> {
    let cb = complement(b);
    if !leq(a, &complement(a), tol)? || !leq(b, &cb, tol)? {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::from_bool(leq(a, &cb, tol)?))
}

/// (2a) `e ∧ e∼ = 0`.
///
/// Under `≤ₛ` the meet exists and is computed. Under `⪯` the meet need not
/// exist, so the check uses the reduction `f ⪯ e∼ ⇒ fe = 0 ⇒ f = 0` for lower
/// bounds `f` of `e`: it measures `‖e·e∼‖_F` and tests candidate lower bounds
/// of `e∼` built from `e`, `e∼` and the `probes`.
pub fn axiom_2a(
    e: &Effect,
    probes: &[SymMatrix],
    order: OrderTag,
    leq: Comparator,
    tol: &TolerancePolicy,
) -> Result<Outcome> {
    let tilde = brouwer_complement(e, tol);
    let t = tilde.matrix();
    let mut worst = match order {
        OrderTag::Spectral => spectral_meet(e.matrix(), t, tol)?.frobenius_norm(),
        OrderTag::Synaptic => e.matrix().try_mul(t)?.frobenius_norm(),
    };
    let mut candidates = vec![t.clone(), t.scale(0.5), quadratic_map(t, e.matrix())?];
    for p in probes {
        check_dims(e.dim(), p.dim())?;
        candidates.push(quadratic_map(t, p)?);
    }
    for f in &candidates {
        if leq(f, e.matrix(), tol)? && leq(f, t, tol)? {
            worst = worst.max(f.frobenius_norm());
        }
    }
    Ok(Outcome::within(worst, tol.tol_proj))
}

/// (2b) `e ≤ e∼∼`.
pub fn axiom_2b(e: &Effect, leq: Comparator, tol: &TolerancePolicy) -> Result<Outcome> {
    let tt = double_tilde(e, tol);
    Ok(Outcome::from_bool(leq(e.matrix(), tt.matrix(), tol)?))
}

/// (2c) `e ≤ f ⇒ f∼ ≤ e∼`.
pub fn axiom_2c(e: &Effect, f: &Effect, leq: Comparator, tol: &TolerancePolicy) -> Result<Outcome> {
    if !leq(e.matrix(), f.matrix(), tol)? {
        return Ok(Outcome::NotApplicable);
    }
    let (te, tf) = (brouwer_complement(e, tol), brouwer_complement(f, tol));
    Ok(Outcome::from_bool(leq(tf.matrix(), te.matrix(), tol)?))
}

/// (3) `e∼⊥ = e∼∼`.
pub fn axiom_3(e: &Effect, tol: &TolerancePolicy) -> Outcome {
    let perp = brouwer_complement(e, tol).complement();
    let tt = double_tilde(e, tol);
    Outcome::within(projection_gap(&perp, &tt), tol.tol_proj)
}

/// `e∼∼ = e°`.
pub fn double_tilde_is_carrier(e: &Effect, tol: &TolerancePolicy) -> Outcome {
    let tt = double_tilde(e, tol);
    Outcome::within(projection_gap(&tt, &carrier(e.matrix(), tol)), DOUBLE_TILDE_LIMIT)
}

/// `p∼ = p⊥` for a projection.
pub fn projection_tilde(p: &Projection, tol: &TolerancePolicy) -> Outcome {
    let tilde = brouwer_complement(&Effect::from(p), tol);
    Outcome::within(projection_gap(&tilde, &p.complement()), tol.tol_proj)
}

fn double_tilde(e: &Effect, tol: &TolerancePolicy) -> Projection {
    brouwer_complement(&Effect::from(brouwer_complement(e, tol)), tol)
}

/// Frobenius distance, or at least 1 when the ranks differ.
pub(crate) fn projection_gap(p: &Projection, q: &Projection) -> f64 {
    let d = p.matrix().distance(q.matrix());
    if p.rank() == q.rank() {
        d
    } else {
        d.max(1.0)
    }
}

/// Runs (I1) on every element and (I2), (R) on every pair, with `1 − a` as
/// the involution.
pub fn check_involution(
    sample: &[(SymMatrix, SymMatrix)],
    order: OrderTag,
    tol: &TolerancePolicy,
) -> Result<VerificationReport> {
    check_involution_with(sample, order, tol, &kleene_complement)
}

/// [`check_involution`] with a caller-supplied involution.
pub fn check_involution_with(
    sample: &[(SymMatrix, SymMatrix)],
    order: OrderTag,
    tol: &TolerancePolicy,
    complement: &dyn Fn(&SymMatrix) -> SymMatrix,
) -> Result<VerificationReport> {
    let (first, _) = sample.first().ok_or(Error::EmptyFamily)?;
    let leq = order.comparator();
    let mut report = VerificationReport::new("involution", order, first.dim(), sample.len(), 0);
    for (a, b) in sample {
        check_dims(a.dim(), b.dim())?;
        report.record("I1", axiom_i1(a, complement, tol), || vec![a.clone()]);
        report.record("I1", axiom_i1(b, complement, tol), || vec![b.clone()]);
        report.record("I2", axiom_i2(a, b, complement, leq, tol)?, || vec![a.clone(), b.clone()]);
        report.record("I2", axiom_i2(b, a, complement, leq, tol)?, || vec![b.clone(), a.clone()]);
        report.record("R", axiom_r(a, b, complement, leq, tol)?, || vec![a.clone(), b.clone()]);
    }
    Ok(report)
}

/// Runs the Brouwer-Zadeh axioms on a sample of effects.
///
/// (2c) is evaluated on consecutive sample pairs and on a comparable pair
/// built from each: `(eᵢ ∧ₛ eᵢ₊₁, eᵢ)` under `≤ₛ`, `(√eᵢ eᵢ₊₁ √eᵢ, eᵢ)`
/// under `⪯`.
pub fn check_bz(sample: &[Effect], order: OrderTag, tol: &TolerancePolicy) -> Result<VerificationReport> {
    let first = sample.first().ok_or(Error::EmptyFamily)?;
    let leq = order.comparator();
    let mut report = VerificationReport::new("bz", order, first.dim(), sample.len(), 0);
    for (i, e) in sample.iter().enumerate() {
        let next = &sample[(i + 1) % sample.len()];
        check_dims(e.dim(), next.dim())?;
        let m = e.matrix();
        report.record("2a", axiom_2a(e, std::slice::from_ref(next.matrix()), order, leq, tol)?, || {
            vec![m.clone(), next.matrix().clone()]
        });
        report.record("2b", axiom_2b(e, leq, tol)?, || vec![m.clone()]);
        report.record("2c", axiom_2c(e, next, leq, tol)?, || vec![m.clone(), next.matrix().clone()]);
        let below = comparable_below(e, next, order, tol)?;
        report.record("2c", axiom_2c(&below, e, leq, tol)?, || vec![below.matrix().clone(), m.clone()]);
        report.record("3", axiom_3(e, tol), || vec![m.clone()]);
        report.record("double-tilde", double_tilde_is_carrier(e, tol), || vec![m.clone()]);
    }
    Ok(report)
}

/// An effect below `e` in the given order, built from `e` and `f`.
pub fn comparable_below(e: &Effect, f: &Effect, order: OrderTag, tol: &TolerancePolicy) -> Result<Effect> {
    let m = match order {
        OrderTag::Spectral => spectral_meet(e.matrix(), f.matrix(), tol)?,
        OrderTag::Synaptic => {
            let root = crate::synaptic::sqrt_psd(e.matrix(), tol)?;
            quadratic_map(&root, f.matrix())?
        }
    };
    Effect::try_new(m, tol)
}

/// Meet of two effects under `⪯` when it is known: the smaller one for a
/// comparable pair, and the pointwise minimum in a joint eigenbasis for a
/// commuting pair. The latter is the infimum within the commutative
/// subalgebra generated by the pair. Returns `None` otherwise.
pub fn synaptic_meet(e: &SymMatrix, f: &SymMatrix, tol: &TolerancePolicy) -> Result<Option<SymMatrix>> {
    synaptic_bound(e, f, tol, true)
}

/// Join counterpart of [`synaptic_meet`].
pub fn synaptic_join(e: &SymMatrix, f: &SymMatrix, tol: &TolerancePolicy) -> Result<Option<SymMatrix>> {
    synaptic_bound(e, f, tol, false)
}

fn synaptic_bound(e: &SymMatrix, f: &SymMatrix, tol: &TolerancePolicy, lower: bool) -> Result<Option<SymMatrix>> {
    check_dims(e.dim(), f.dim())?;
    let (small, large) = if lower { (e, f) } else { (f, e) };
    if numerical_leq(small, large, tol)? {
        return Ok(Some(e.clone()));
    }
    if numerical_leq(large, small, tol)? {
        return Ok(Some(f.clone()));
    }
    if !commutes(e, f, tol.tol_proj)? {
        return Ok(None);
    }
    let basis = common_eigenbasis(e, f, tol)?;
    let pick = |x: f64, y: f64| if lower { x.min(y) } else { x.max(y) };
    Ok(Some(SymMatrix::from_weighted_outer(
        e.dim(),
        basis.into_iter().map(|(x, y, v)| (pick(x, y), v)),
    )))
}

/// Carrier laws for the meet and join of `e` and `f` under `order`:
///
/// * `(e ∧ f)° = e° ∧ f°` and `(e ∨ f)° = e° ∨ f°`
/// * under `≤ₛ`, also `p_{e∧ₛf,λ} = p_{e,λ} ∨ p_{f,λ}` at every merged breakpoint
///
/// Under `⪯` the laws are recorded as not applicable when the meet or join is
/// not known (see [`synaptic_meet`]).
pub fn demorgan_carrier_checks(
    e: &Effect,
    f: &Effect,
    order: OrderTag,
    tol: &TolerancePolicy,
) -> Result<VerificationReport> {
    check_dims(e.dim(), f.dim())?;
    let mut report = VerificationReport::new("demorgan", order, e.dim(), 1, 0);
    let witnesses = || vec![e.matrix().clone(), f.matrix().clone()];
    report.record("carrier-meet", carrier_meet_law(e, f, order, tol)?, witnesses);
    report.record("carrier-join", carrier_join_law(e, f, order, tol)?, witnesses);
    if order == OrderTag::Spectral {
        report.record("meet-resolution", meet_resolution_law(e, f, tol)?, witnesses);
    }
    Ok(report)
}

/// `(e ∧ f)° = e° ∧ f°`.
pub fn carrier_meet_law(e: &Effect, f: &Effect, order: OrderTag, tol: &TolerancePolicy) -> Result<Outcome> {
    let m = match order {
        OrderTag::Spectral => spectral_meet(e.matrix(), f.matrix(), tol)?,
        OrderTag::Synaptic => match synaptic_meet(e.matrix(), f.matrix(), tol)? {
            Some(m) => m,
            None => return Ok(Outcome::NotApplicable),
        },
    };
    let want = meet(&carrier(e.matrix(), tol), &carrier(f.matrix(), tol), tol)?;
    Ok(Outcome::within(projection_gap(&carrier(&m, tol), &want), CARRIER_LAW_LIMIT))
}

/// `(e ∨ f)° = e° ∨ f°`.
pub fn carrier_join_law(e: &Effect, f: &Effect, order: OrderTag, tol: &TolerancePolicy) -> Result<Outcome> {
    let j = match order {
        OrderTag::Spectral => spectral_join(e.matrix(), f.matrix(), tol)?,
        OrderTag::Synaptic => match synaptic_join(e.matrix(), f.matrix(), tol)? {
            Some(j) => j,
            None => return Ok(Outcome::NotApplicable),
        },
    };
    let want = join(&carrier(e.matrix(), tol), &carrier(f.matrix(), tol), tol)?;
    Ok(Outcome::within(projection_gap(&carrier(&j, tol), &want), CARRIER_LAW_LIMIT))
}

/// `p_{e∧ₛf,λ} = p_{e,λ} ∨ p_{f,λ}` at the merged breakpoints of `e` and `f`.
///
/// Each side is evaluated just above the breakpoint (by half the clustering
/// threshold) so that breakpoints of the recomputed meet that land a rounding
/// error above the grid value are still counted.
pub fn meet_resolution_law(e: &Effect, f: &Effect, tol: &TolerancePolicy) -> Result<Outcome> {
    let (re, rf) = (resolution_of(e.matrix(), tol), resolution_of(f.matrix(), tol));
    let m = spectral_meet(e.matrix(), f.matrix(), tol)?;
    let rm = resolution_of(&m, tol);
    let slack = 0.5 * tol.eig_threshold(1.0);
    let mut worst: f64 = 0.0;
    for lambda in merged_grid([&re, &rf], tol.eig_threshold(1.0)) {
        let probe = lambda + slack;
        let want = join(&re.eval(probe), &rf.eval(probe), tol)?;
        worst = worst.max(projection_gap(&rm.eval(probe), &want));
    }
    Ok(Outcome::within(worst, CARRIER_LAW_LIMIT))
}

/// `(e ∧ₛ f)⊥ = e⊥ ∨ₛ f⊥` and `(e ∨ₛ f)⊥ = e⊥ ∧ₛ f⊥`.
pub fn kleene_demorgan(e: &SymMatrix, f: &SymMatrix, tol: &TolerancePolicy) -> Result<Outcome> {
    let (ce, cf) = (kleene_complement(e), kleene_complement(f));
    let lhs_meet = kleene_complement(&spectral_meet(e, f, tol)?);
    let rhs_meet = spectral_join(&ce, &cf, tol)?;
    let lhs_join = kleene_complement(&spectral_join(e, f, tol)?);
    let rhs_join = spectral_meet(&ce, &cf, tol)?;
    let worst = lhs_meet.distance(&rhs_meet).max(lhs_join.distance(&rhs_join));
    Ok(Outcome::within(worst, CARRIER_LAW_LIMIT))
}
