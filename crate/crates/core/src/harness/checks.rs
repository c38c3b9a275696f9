//! Named single checks. Each takes the witness matrices it was evaluated on,
//! so any recorded failure can be replayed with [`recheck`].
//!
//! Scalar parameters travel as 1×1 witnesses.

use crate::dyadic::{carrier_via_join, dyadic, dyadic_expand, dyadic_expand_matrix, dyadic_residual};
use crate::effect::Effect;
use crate::eigen::{cluster_spectrum, eig, is_psd, operator_norm, spectrum};
use crate::error::{Error, Result};
use crate::harness::oracle::{alternating_meet, dim2_meet_defect};
use crate::lattice::{family_join, join, meet, modular_defect, proj_leq};
use crate::matrix::{DenseMatrix, SymMatrix};
use crate::order::{self, kleene_complement, projection_gap, Comparator, OrderTag};
use crate::projection::{idempotency_residual, Projection};
use crate::report::Outcome;
use crate::resolution::{eigenprojection, resolution_of, resolution_projection, step_approximant};
use crate::spectral::{family_inf, family_sup, spectral_join, spectral_leq, spectral_meet};
use crate::subspace::projection_onto_span;
use crate::synaptic::{abs_val, carrier, commutes, neg_part, numerical_leq, pos_part, quadratic_map};
use crate::tolerance::TolerancePolicy;

/// Steps used by the dyadic checks.
pub const DYADIC_STEPS: usize = 30;

/// Slack on the dyadic sandwich bounds: eigenvalues below the carrier
/// threshold are expanded as 0, plus `tol_psd`.
pub const DYADIC_SLACK: f64 = 2e-9;

/// Allowed modular-law defect.
pub const MODULAR_LIMIT: f64 = 1e-7;

const ANGLE_CONDITIONING: f64 = 64.0;

/// Everything a check may depend on besides its witnesses.
#[derive(Debug, Clone, Copy)]
pub struct CheckCtx {
    pub tol: TolerancePolicy,
    pub order: OrderTag,
    /// Implementation of `≤ₛ`; replaceable to self-test the harness.
    pub spectral: Comparator,
    /// Implementation of `⪯`.
    pub numerical: Comparator,
}

impl CheckCtx {
    pub fn new(order: OrderTag, tol: TolerancePolicy) -> Self {
        Self { tol, order, spectral: spectral_leq, numerical: numerical_leq }
    }

    /// The comparator selected by `order`.
    pub fn leq(&self) -> Comparator {
        match self.order {
            OrderTag::Synaptic => self.numerical,
            OrderTag::Spectral => self.spectral,
        }
    }
}

pub type CheckFn = fn(&[SymMatrix], &CheckCtx) -> Result<Outcome>;

/// Every registered check id with its implementation.
pub const CHECKS: &[(&str, CheckFn)] = &[
    // substrate
    ("eig-roundtrip", eig_roundtrip),
    ("eig-orthogonality", eig_orthogonality),
    ("cluster-partition", cluster_partition),
    ("norm-bisection", norm_bisection),
    ("span-projection", span_projection),
    // sa-axioms
    ("square-positive", square_positive),
    ("quadratic-positive", quadratic_positive),
    ("square-norm", square_norm),
    ("carrier-minimal", carrier_minimal),
    ("part-identities", part_identities),
    ("positive-part-order", positive_part_order),
    // resolution-props
    ("resolution-sandwich", resolution_sandwich),
    ("resolution-definition", resolution_definition),
    ("resolution-structure", resolution_structure),
    ("resolution-carrier", resolution_carrier),
    ("resolution-roundtrip", resolution_roundtrip),
    ("eigenprojection-gap", eigenprojection_gap),
    ("affine-law", affine_law),
    ("negation-law", negation_law),
    ("commuting-resolutions", commuting_resolutions),
    ("approximant-rate", approximant_rate),
    // order-implication, commuting-equivalence
    ("spectral-implies-numerical", spectral_implies_numerical),
    ("monotone-transform", monotone_transform),
    ("positivity-bridge", positivity_bridge),
    ("one-projection-agreement", one_projection_agreement),
    ("commuting-equivalence", commuting_equivalence),
    // lattice-laws
    ("meet-lower-bound", meet_lower_bound),
    ("join-upper-bound", join_upper_bound),
    ("meet-greatest", meet_greatest),
    ("join-least", join_least),
    ("binary-family-agreement", binary_family_agreement),
    ("effect-sublattice", effect_sublattice),
    ("meet-oracle-dim2", meet_oracle_dim2),
    ("orthomodular", orthomodular),
    ("projection-demorgan", projection_demorgan),
    ("projection-meet-oracle", projection_meet_oracle),
    ("projection-order-agreement", projection_order_agreement),
    // sigma-lattice
    ("family-sup-upper", family_sup_upper),
    ("family-inf-lower", family_inf_lower),
    ("family-sup-least", family_sup_least),
    ("family-inf-greatest", family_inf_greatest),
    // kleene
    ("I1", involution_i1),
    ("I2", involution_i2),
    ("R", involution_r),
    ("kleene-demorgan", kleene_demorgan),
    ("carrier-monotone", carrier_monotone),
    // bz
    ("2a", bz_2a),
    ("2b", bz_2b),
    ("2c", bz_2c),
    ("3", bz_3),
    ("double-tilde", double_tilde),
    ("projection-tilde", projection_tilde),
    // demorgan
    ("carrier-meet", carrier_meet),
    ("carrier-join", carrier_join),
    ("meet-resolution", meet_resolution),
    // dyadic
    ("dyadic-sandwich", dyadic_sandwich),
    ("dyadic-residual", dyadic_final_residual),
    ("dyadic-commutation", dyadic_commutation),
    ("dyadic-join-monotone", dyadic_join_monotone),
    ("dyadic-paths-agree", dyadic_paths_agree),
    ("carrier-via-join", carrier_join_steps),
    // modularity
    ("modular-law", modular_law),
];

pub fn lookup(id: &str) -> Option<CheckFn> {
    CHECKS.iter().find(|(name, _)| *name == id).map(|(_, f)| *f)
}

/// Re-evaluates the check `id` on `witnesses`.
pub fn recheck(id: &str, witnesses: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let f = lookup(id).ok_or_else(|| Error::InvalidArgument(format!("unknown check `{id}`")))?;
    f(witnesses, ctx)
}

/// A 1×1 witness carrying a scalar parameter.
pub fn scalar(x: f64) -> SymMatrix {
    SymMatrix::scalar(1, x)
}

fn arg(w: &[SymMatrix], k: usize) -> Result<&SymMatrix> {
    w.get(k).ok_or_else(|| Error::Precondition(format!("missing witness {k}")))
}

fn scalar_arg(w: &[SymMatrix], k: usize) -> Result<f64> {
    let m = arg(w, k)?;
    if m.dim() != 1 {
        return Err(Error::Precondition(format!("witness {k} should be a scalar")));
    }
    Ok(m.get(0, 0))
}

fn effect_arg(w: &[SymMatrix], k: usize, tol: &TolerancePolicy) -> Result<Effect> {
    Effect::try_new(arg(w, k)?.clone(), tol)
}

fn projection_arg(w: &[SymMatrix], k: usize, tol: &TolerancePolicy) -> Result<Projection> {
    Projection::try_from_matrix(arg(w, k)?, tol)
}

/// `1 + ‖a‖`, the scale attached to absolute tolerances.
fn scale(a: &SymMatrix) -> f64 {
    1.0 + operator_norm(a)
}

fn all_true(items: impl IntoIterator<Item = Result<bool>>) -> Result<bool> {
    for x in items {
        if !x? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ----- substrate -----

fn eig_roundtrip(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let es = eig(a)?;
    Ok(Outcome::within(es.reconstruct().distance(a) / scale(a), ctx.tol.tol_recon))
}

fn eig_orthogonality(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let q = eig(arg(w, 0)?)?.eigenvectors().clone();
    let n = q.dim();
    let defect = q.transpose().mul(&q).sub(&DenseMatrix::identity(n)).frobenius_norm();
    Ok(Outcome::within(defect, ctx.tol.tol_recon))
}

fn cluster_partition(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let n = a.dim();
    let es = eig(a)?;
    let parts = cluster_spectrum(&es, ctx.tol.eig_threshold(es.spectral_radius()));
    let mut worst: f64 = 0.0;
    for (i, (_, p)) in parts.iter().enumerate() {
        for (_, q) in &parts[i + 1..] {
            worst = worst.max(p.matrix().try_mul(q.matrix())?.frobenius_norm());
        }
    }
    let total = parts.iter().fold(SymMatrix::zeros(n), |acc, (_, p)| &acc + p.matrix());
    worst = worst.max(total.distance(&SymMatrix::identity(n)));
    let rebuilt = parts.iter().fold(SymMatrix::zeros(n), |acc, (l, p)| &acc + &p.matrix().scale(*l));
    worst = worst.max(rebuilt.distance(a) / scale(a));
    Ok(Outcome::within(worst, ctx.tol.tol_recon))
}

fn norm_bisection(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let (mut lo, mut hi) = (0.0, a.frobenius_norm());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if is_psd(&a.scale(-1.0).shift(mid), 0.0) && is_psd(&a.shift(mid), 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Outcome::within((hi - operator_norm(a)).abs() / scale(a), ctx.tol.tol_recon))
}

fn span_projection(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let p = projection_onto_span(a.dim(), &a.rows(), &ctx.tol)?;
    let idem = idempotency_residual(p.matrix());
    let outside = quadratic_map(&p.complement().into_matrix(), a)?.frobenius_norm() / scale(a);
    Ok(Outcome::within(idem, ctx.tol.tol_proj).and(Outcome::within(outside, ctx.tol.tol_recon)))
}

// ----- sa-axioms -----

fn square_positive(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let sq = a.try_mul(a)?.symmetric_part();
    let min = spectrum(&sq).min();
    Ok(Outcome::within(-min / scale(a).powi(2), ctx.tol.tol_psd))
}

fn quadratic_positive(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    if spectrum(b).min() < 0.0 {
        return Ok(Outcome::NotApplicable);
    }
    let min = spectrum(&quadratic_map(a, b)?).min();
    Ok(Outcome::within(-min / (scale(a).powi(2) * scale(b)), ctx.tol.tol_psd))
}

fn square_norm(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    // ‖a²‖ = ‖a‖², so a² = 0 forces a = 0
    let a = arg(w, 0)?;
    let sq = a.try_mul(a)?.symmetric_part();
    let gap = (operator_norm(&sq) - operator_norm(a).powi(2)).abs();
    Ok(Outcome::within(gap / scale(a).powi(2), ctx.tol.tol_recon))
}

fn carrier_minimal(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let q = projection_arg(w, 1, &ctx.tol)?;
    let aq = a.try_mul(q.matrix())?;
    if aq.sub(&a.to_dense()).frobenius_norm() > ctx.tol.tol_recon * scale(a) {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::from_bool(proj_leq(&carrier(a, &ctx.tol), &q, &ctx.tol)?))
}

fn part_identities(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let tol = &ctx.tol;
    let (pos, neg, abs) = (pos_part(a, tol), neg_part(a, tol), abs_val(a, tol));
    let worst = (&pos - &neg)
        .distance(a)
        .max((&pos + &neg).distance(&abs))
        .max(pos.try_mul(&neg)?.frobenius_norm());
    Ok(Outcome::within(worst / scale(a), tol.tol_recon))
}

fn positive_part_order(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    let tol = &ctx.tol;
    if !commutes(a, b, tol.tol_proj)? || !numerical_leq(a, b, tol)? {
        return Ok(Outcome::NotApplicable);
    }
    let gap = &pos_part(b, tol) - &pos_part(a, tol);
    let min = spectrum(&gap).min();
    Ok(Outcome::within(-min / (scale(a) + scale(b)), tol.tol_psd))
}

// ----- resolution-props -----

fn resolution_sandwich(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let lambda = scalar_arg(w, 1)?;
    let p = resolution_of(a, &ctx.tol).eval(lambda);
    let shifted = a.shift(-lambda);
    let below = spectrum(&quadratic_map(p.matrix(), &shifted)?).max();
    let above = spectrum(&quadratic_map(p.complement().matrix(), &shifted)?).min();
    let worst = below.max(-above).max(0.0);
    Ok(Outcome::within(worst / (scale(a) + lambda.abs()), ctx.tol.tol_recon))
}

fn resolution_definition(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let lambda = scalar_arg(w, 1)?;
    let got = resolution_of(a, &ctx.tol).eval(lambda);
    let want = resolution_projection(a, lambda, &ctx.tol);
    Ok(Outcome::within(projection_gap(&got, &want), ctx.tol.tol_proj))
}

fn resolution_structure(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let r = resolution_of(a, &ctx.tol);
    let (bps, ps) = (r.breakpoints(), r.projections());
    let mut ok = r.eval(r.lower() - 1.0).is_zero() && r.eval(r.upper()).is_identity();
    for i in 0..bps.len() {
        let next = bps.get(i + 1).copied().unwrap_or(bps[i] + 2.0);
        ok &= r.eval(0.5 * (bps[i] + next)) == ps[i];
        ok &= r.eval(bps[i]) == ps[i];
        if i > 0 {
            ok &= r.eval_left(bps[i]) == ps[i - 1];
            ok &= ps[i].rank() > ps[i - 1].rank();
            ok &= proj_leq(&ps[i - 1], &ps[i], &ctx.tol)?;
        }
    }
    Ok(Outcome::from_bool(ok))
}

fn resolution_carrier(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    if !is_psd(a, ctx.tol.tol_psd) {
        return Ok(Outcome::NotApplicable);
    }
    // eigenvalues within the clustering threshold of 0 belong to p_{a,0}
    let cut = ctx.tol.eig_threshold(operator_norm(a));
    let p0 = resolution_of(a, &ctx.tol).eval(cut);
    Ok(Outcome::within(projection_gap(&carrier(a, &ctx.tol), &p0.complement()), ctx.tol.tol_proj))
}

fn resolution_roundtrip(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let back = resolution_of(a, &ctx.tol).reconstruct();
    Ok(Outcome::within(back.distance(a) / scale(a), ctx.tol.tol_recon))
}

fn eigenprojection_gap(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let r = resolution_of(a, &ctx.tol);
    let mut worst: f64 = 0.0;
    for (lambda, jump) in r.jumps() {
        let d = eigenprojection(a, lambda, &ctx.tol);
        let step = Projection::rebuild(&(r.eval(lambda).matrix() - r.eval_left(lambda).matrix()));
        worst = worst.max(projection_gap(&d, &jump)).max(projection_gap(&d, &step));
    }
    Ok(Outcome::within(worst, ctx.tol.tol_proj))
}

fn affine_law(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let (alpha, beta) = (scalar_arg(w, 1)?, scalar_arg(w, 2)?);
    let direct = resolution_of(&a.scale(alpha).shift(beta), &ctx.tol);
    let moved = resolution_of(a, &ctx.tol).affine(alpha, beta)?;
    let limit = ctx.tol.tol_recon * (1.0 + alpha * operator_norm(a) + beta.abs());
    Ok(Outcome::within(direct.discrepancy(&moved), limit))
}

fn negation_law(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let direct = resolution_of(&-a, &ctx.tol);
    let flipped = resolution_of(a, &ctx.tol).negate();
    Ok(Outcome::within(direct.discrepancy(&flipped), ctx.tol.tol_recon * scale(a)))
}

fn commuting_resolutions(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    if !commutes(a, b, ctx.tol.tol_proj)? {
        return Ok(Outcome::NotApplicable);
    }
    let (ra, rb) = (resolution_of(a, &ctx.tol), resolution_of(b, &ctx.tol));
    let mut worst: f64 = 0.0;
    for p in ra.projections() {
        for q in rb.projections() {
            worst = worst.max(p.matrix().try_mul(q.matrix())?.asymmetry());
        }
    }
    Ok(Outcome::within(worst, ctx.tol.tol_proj))
}

fn approximant_rate(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    let n = scalar_arg(w, 1)?;
    if !(n >= 1.0 && n.fract() == 0.0) {
        return Err(Error::Precondition("approximant order must be a positive integer".into()));
    }
    let approx = step_approximant(&e, n as usize, &ctx.tol)?;
    let err = operator_norm(&(e.matrix() - &approx));
    Ok(Outcome::within(err - 1.0 / n, 1e-12))
}

// ----- order-implication, commuting-equivalence -----

fn spectral_implies_numerical(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    if !(ctx.spectral)(a, b, &ctx.tol)? {
        return Ok(Outcome::NotApplicable);
    }
    let min = spectrum(&(b - a)).min();
    Ok(Outcome::within(-min / (scale(a) + scale(b)), ctx.tol.tol_psd))
}

fn monotone_transform(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    let (alpha, beta) = (scalar_arg(w, 2)?, scalar_arg(w, 3)?);
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Precondition("transform needs α > 0".into()));
    }
    let before = (ctx.spectral)(a, b, &ctx.tol)?;
    let after = (ctx.spectral)(&a.scale(alpha).shift(beta), &b.scale(alpha).shift(beta), &ctx.tol)?;
    Ok(Outcome::from_bool(before == after))
}

fn positivity_bridge(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let a = arg(w, 0)?;
    let zero = SymMatrix::zeros(a.dim());
    Ok(Outcome::from_bool((ctx.numerical)(&zero, a, &ctx.tol)? == (ctx.spectral)(&zero, a, &ctx.tol)?))
}

fn one_projection_agreement(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (e, f) = (arg(w, 0)?, arg(w, 1)?);
    let is_proj = |m: &SymMatrix| idempotency_residual(m) <= ctx.tol.tol_proj;
    if !is_proj(e) && !is_proj(f) {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::from_bool((ctx.numerical)(e, f, &ctx.tol)? == (ctx.spectral)(e, f, &ctx.tol)?))
}

fn commuting_equivalence(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    if !commutes(a, b, ctx.tol.tol_proj)? {
        return Ok(Outcome::NotApplicable);
    }
    let forward = (ctx.numerical)(a, b, &ctx.tol)? == (ctx.spectral)(a, b, &ctx.tol)?;
    let backward = (ctx.numerical)(b, a, &ctx.tol)? == (ctx.spectral)(b, a, &ctx.tol)?;
    Ok(Outcome::from_bool(forward && backward))
}

// ----- lattice-laws -----

fn meet_lower_bound(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    let m = spectral_meet(a, b, &ctx.tol)?;
    Ok(Outcome::from_bool((ctx.spectral)(&m, a, &ctx.tol)? && (ctx.spectral)(&m, b, &ctx.tol)?))
}

fn join_upper_bound(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    let j = spectral_join(a, b, &ctx.tol)?;
    Ok(Outcome::from_bool((ctx.spectral)(a, &j, &ctx.tol)? && (ctx.spectral)(b, &j, &ctx.tol)?))
}

fn meet_greatest(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b, c) = (arg(w, 0)?, arg(w, 1)?, arg(w, 2)?);
    if !((ctx.spectral)(c, a, &ctx.tol)? && (ctx.spectral)(c, b, &ctx.tol)?) {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::from_bool((ctx.spectral)(c, &spectral_meet(a, b, &ctx.tol)?, &ctx.tol)?))
}

fn join_least(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b, c) = (arg(w, 0)?, arg(w, 1)?, arg(w, 2)?);
    if !((ctx.spectral)(a, c, &ctx.tol)? && (ctx.spectral)(b, c, &ctx.tol)?) {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::from_bool((ctx.spectral)(&spectral_join(a, b, &ctx.tol)?, c, &ctx.tol)?))
}

fn binary_family_agreement(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (e, f) = (effect_arg(w, 0, &ctx.tol)?, effect_arg(w, 1, &ctx.tol)?);
    let pair = [e.clone(), f.clone()];
    let same_meet = family_inf(&pair, &ctx.tol)?.matrix() == &spectral_meet(e.matrix(), f.matrix(), &ctx.tol)?;
    let same_join = family_sup(&pair, &ctx.tol)?.matrix() == &spectral_join(e.matrix(), f.matrix(), &ctx.tol)?;
    Ok(Outcome::from_bool(same_meet && same_join))
}

fn effect_sublattice(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (e, f) = (effect_arg(w, 0, &ctx.tol)?, effect_arg(w, 1, &ctx.tol)?);
    let m = spectral_meet(e.matrix(), f.matrix(), &ctx.tol)?;
    let j = spectral_join(e.matrix(), f.matrix(), &ctx.tol)?;
    Ok(Outcome::from_bool(Effect::try_new(m, &ctx.tol).is_ok() && Effect::try_new(j, &ctx.tol).is_ok()))
}

fn meet_oracle_dim2(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    if a.dim() != 2 {
        return Ok(Outcome::NotApplicable);
    }
    let m = spectral_meet(a, b, &ctx.tol)?;
    Ok(Outcome::within(dim2_meet_defect(a, b, &m, &ctx.tol)?, ctx.tol.tol_recon * (scale(a) + scale(b))))
}

fn orthomodular(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (p, q) = (projection_arg(w, 0, &ctx.tol)?, projection_arg(w, 1, &ctx.tol)?);
    if !proj_leq(&p, &q, &ctx.tol)? {
        return Ok(Outcome::NotApplicable);
    }
    let rebuilt = join(&p, &meet(&q, &p.complement(), &ctx.tol)?, &ctx.tol)?;
    Ok(Outcome::within(projection_gap(&rebuilt, &q), ctx.tol.tol_proj))
}

fn projection_demorgan(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (p, q) = (projection_arg(w, 0, &ctx.tol)?, projection_arg(w, 1, &ctx.tol)?);
    let tol = &ctx.tol;
    let meet_side = projection_gap(&meet(&p, &q, tol)?.complement(), &join(&p.complement(), &q.complement(), tol)?);
    let join_side = projection_gap(&join(&p, &q, tol)?.complement(), &meet(&p.complement(), &q.complement(), tol)?);
    Ok(Outcome::within(meet_side.max(join_side), tol.tol_proj.max(angle_slack(&p, &q))))
}

/// Both sides of the duality are the kernel or range of `p + q` or
/// `2 − p − q`, formed with different rounding. Their eigenvectors are only
/// determined to about `ε‖m‖/g`, with `g` the smallest nonzero eigenvalue,
/// which is of order `θ²` for the smallest nonzero principal angle `θ`.
fn angle_slack(p: &Projection, q: &Projection) -> f64 {
    let sum = p.matrix() + q.matrix();
    let two = SymMatrix::scalar(p.dim(), 2.0);
    let mut gap = f64::INFINITY;
    for m in [&sum, &(&two - &sum)] {
        let floor = 1e3 * f64::EPSILON;
        if let Some(g) = spectrum(m).eigenvalues().iter().copied().filter(|x| *x > floor).reduce(f64::min) {
            gap = gap.min(g);
        }
    }
    ANGLE_CONDITIONING * f64::EPSILON * 2.0 / gap
}

fn projection_meet_oracle(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (p, q) = (projection_arg(w, 0, &ctx.tol)?, projection_arg(w, 1, &ctx.tol)?);
    if p.dim() > 4 {
        return Ok(Outcome::NotApplicable);
    }
    let got = meet(&p, &q, &ctx.tol)?;
    Ok(Outcome::within(projection_gap(&got, &alternating_meet(&p, &q)?), ctx.tol.tol_proj))
}

fn projection_order_agreement(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (p, q) = (projection_arg(w, 0, &ctx.tol)?, projection_arg(w, 1, &ctx.tol)?);
    let lattice = proj_leq(&p, &q, &ctx.tol)?;
    Ok(Outcome::from_bool(lattice == (ctx.spectral)(p.matrix(), q.matrix(), &ctx.tol)?))
}

// ----- sigma-lattice -----

fn effects(w: &[SymMatrix], tol: &TolerancePolicy) -> Result<Vec<Effect>> {
    w.iter().map(|m| Effect::try_new(m.clone(), tol)).collect()
}

fn family_sup_upper(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let fam = effects(w, &ctx.tol)?;
    let sup = family_sup(&fam, &ctx.tol)?;
    Ok(Outcome::from_bool(all_true(fam.iter().map(|e| (ctx.spectral)(e.matrix(), sup.matrix(), &ctx.tol)))?))
}

fn family_inf_lower(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let fam = effects(w, &ctx.tol)?;
    let inf = family_inf(&fam, &ctx.tol)?;
    Ok(Outcome::from_bool(all_true(fam.iter().map(|e| (ctx.spectral)(inf.matrix(), e.matrix(), &ctx.tol)))?))
}

/// Witnesses: the family followed by one competitor.
fn family_sup_least(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (c, fam) = w.split_last().ok_or(Error::EmptyFamily)?;
    let fam = effects(fam, &ctx.tol)?;
    if !all_true(fam.iter().map(|e| (ctx.spectral)(e.matrix(), c, &ctx.tol)))? {
        return Ok(Outcome::NotApplicable);
    }
    let sup = family_sup(&fam, &ctx.tol)?;
    Ok(Outcome::from_bool((ctx.spectral)(sup.matrix(), c, &ctx.tol)?))
}

/// Witnesses: the family followed by one competitor.
fn family_inf_greatest(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (c, fam) = w.split_last().ok_or(Error::EmptyFamily)?;
    let fam = effects(fam, &ctx.tol)?;
    if !all_true(fam.iter().map(|e| (ctx.spectral)(c, e.matrix(), &ctx.tol)))? {
        return Ok(Outcome::NotApplicable);
    }
    let inf = family_inf(&fam, &ctx.tol)?;
    Ok(Outcome::from_bool((ctx.spectral)(c, inf.matrix(), &ctx.tol)?))
}

// ----- kleene -----

fn involution_i1(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    Ok(order::axiom_i1(arg(w, 0)?, &kleene_complement, &ctx.tol))
}

fn involution_i2(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    order::axiom_i2(arg(w, 0)?, arg(w, 1)?, &kleene_complement, ctx.leq(), &ctx.tol)
}

fn involution_r(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    order::axiom_r(arg(w, 0)?, arg(w, 1)?, &kleene_complement, ctx.leq(), &ctx.tol)
}

fn kleene_demorgan(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    order::kleene_demorgan(arg(w, 0)?, arg(w, 1)?, &ctx.tol)
}

fn carrier_monotone(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (a, b) = (arg(w, 0)?, arg(w, 1)?);
    let zero = SymMatrix::zeros(a.dim());
    if !(ctx.leq())(&zero, a, &ctx.tol)? || !(ctx.leq())(a, b, &ctx.tol)? {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::from_bool(proj_leq(&carrier(a, &ctx.tol), &carrier(b, &ctx.tol), &ctx.tol)?))
}

// ----- bz -----

/// Witnesses: the effect, then probes used to build candidate lower bounds.
fn bz_2a(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    order::axiom_2a(&e, &w[1..], ctx.order, ctx.leq(), &ctx.tol)
}

fn bz_2b(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    order::axiom_2b(&effect_arg(w, 0, &ctx.tol)?, ctx.leq(), &ctx.tol)
}

fn bz_2c(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    order::axiom_2c(&effect_arg(w, 0, &ctx.tol)?, &effect_arg(w, 1, &ctx.tol)?, ctx.leq(), &ctx.tol)
}

fn bz_3(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    Ok(order::axiom_3(&effect_arg(w, 0, &ctx.tol)?, &ctx.tol))
}

fn double_tilde(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    Ok(order::double_tilde_is_carrier(&effect_arg(w, 0, &ctx.tol)?, &ctx.tol))
}

fn projection_tilde(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    Ok(order::projection_tilde(&projection_arg(w, 0, &ctx.tol)?, &ctx.tol))
}

// ----- demorgan -----

fn carrier_meet(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (e, f) = (effect_arg(w, 0, &ctx.tol)?, effect_arg(w, 1, &ctx.tol)?);
    order::carrier_meet_law(&e, &f, ctx.order, &ctx.tol)
}

fn carrier_join(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (e, f) = (effect_arg(w, 0, &ctx.tol)?, effect_arg(w, 1, &ctx.tol)?);
    order::carrier_join_law(&e, &f, ctx.order, &ctx.tol)
}

fn meet_resolution(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let (e, f) = (effect_arg(w, 0, &ctx.tol)?, effect_arg(w, 1, &ctx.tol)?);
    order::meet_resolution_law(&e, &f, &ctx.tol)
}

// ----- dyadic -----

fn dyadic_sandwich(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    let ps = dyadic_expand(&e, DYADIC_STEPS, &ctx.tol)?;
    let mut worst: f64 = 0.0;
    for n in 1..=DYADIC_STEPS {
        let es = spectrum(&dyadic_residual(&e, &ps[..n]));
        worst = worst.max(-es.min()).max(es.max() - dyadic(n));
    }
    Ok(Outcome::within(worst, DYADIC_SLACK))
}

fn dyadic_final_residual(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    let ps = dyadic_expand(&e, DYADIC_STEPS, &ctx.tol)?;
    let norm = operator_norm(&dyadic_residual(&e, &ps));
    Ok(Outcome::within(norm - dyadic(DYADIC_STEPS), 1e-8))
}

fn dyadic_commutation(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    let ps = dyadic_expand(&e, DYADIC_STEPS, &ctx.tol)?;
    let mut worst: f64 = 0.0;
    for (j, p) in ps.iter().enumerate() {
        worst = worst.max(p.matrix().try_mul(e.matrix())?.asymmetry());
        for q in &ps[j + 1..] {
            worst = worst.max(p.matrix().try_mul(q.matrix())?.asymmetry());
        }
    }
    Ok(Outcome::within(worst, ctx.tol.tol_proj))
}

fn dyadic_join_monotone(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    let ps = dyadic_expand(&e, DYADIC_STEPS, &ctx.tol)?;
    let top = carrier(e.matrix(), &ctx.tol);
    let mut prev = Projection::zero(e.dim());
    let mut ok = true;
    for n in 1..=DYADIC_STEPS {
        let j = family_join(e.dim(), &ps[..n], &ctx.tol)?;
        ok &= proj_leq(&prev, &j, &ctx.tol)? && proj_leq(&j, &top, &ctx.tol)?;
        prev = j;
    }
    Ok(Outcome::from_bool(ok))
}

fn dyadic_paths_agree(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    let scalar_path = dyadic_expand(&e, DYADIC_STEPS, &ctx.tol)?;
    let matrix_path = dyadic_expand_matrix(&e, DYADIC_STEPS, &ctx.tol)?;
    let worst = scalar_path
        .iter()
        .zip(&matrix_path)
        .map(|(p, q)| projection_gap(p, q))
        .fold(0.0, f64::max);
    Ok(Outcome::within(worst, ctx.tol.tol_proj))
}

/// `⋁_{j≤N} pⱼ = e°` exactly from the first `N` with `2⁻ᴺ(1 + tol_eig)`
/// below the smallest nonzero eigenvalue, and not before.
fn carrier_join_steps(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = effect_arg(w, 0, &ctx.tol)?;
    let es = spectrum(e.matrix());
    let cut = ctx.tol.eig_threshold(es.spectral_radius());
    let Some(smallest) = es.eigenvalues().iter().copied().filter(|x| *x > cut).reduce(f64::min) else {
        return Ok(Outcome::from_bool(carrier_via_join(&e, 1, &ctx.tol)?.is_zero()));
    };
    let Some(n) = (1..=crate::dyadic::MAX_STEPS).find(|&j| dyadic(j) * (1.0 + ctx.tol.tol_eig) < smallest) else {
        return Ok(Outcome::NotApplicable);
    };
    let top = carrier(e.matrix(), &ctx.tol);
    let mut ok = carrier_via_join(&e, n, &ctx.tol)?.approx_eq(&top, ctx.tol.tol_proj);
    if n > 1 {
        ok &= carrier_via_join(&e, n - 1, &ctx.tol)?.rank() < top.rank();
    }
    Ok(Outcome::from_bool(ok))
}

// ----- modularity -----

fn modular_law(w: &[SymMatrix], ctx: &CheckCtx) -> Result<Outcome> {
    let e = projection_arg(w, 0, &ctx.tol)?;
    let f = projection_arg(w, 1, &ctx.tol)?;
    let g = projection_arg(w, 2, &ctx.tol)?;
    if !proj_leq(&e, &g, &ctx.tol)? {
        return Ok(Outcome::NotApplicable);
    }
    Ok(Outcome::within(modular_defect(&e, &f, &g, &ctx.tol)?, MODULAR_LIMIT))
}
