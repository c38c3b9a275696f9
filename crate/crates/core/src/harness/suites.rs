//! Named suites: which instances to generate per trial and which checks to
//! run on them.

use std::time::Instant;

use crate::effect::Effect;
use crate::error::{Error, Result};
use crate::harness::checks::{lookup, scalar, CheckCtx};
use crate::harness::generate::Generator;
use crate::lattice::join;
use crate::matrix::SymMatrix;
use crate::order::{comparable_below, kleene_complement, Comparator, OrderTag};
use crate::report::VerificationReport;
use crate::resolution::resolution_of;
use crate::spectral::{family_inf, family_sup, spectral_join, spectral_leq, spectral_meet};
use crate::synaptic::{numerical_leq, quadratic_map};
use crate::tolerance::TolerancePolicy;

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "sa-axioms",
    "resolution-props",
    "order-implication",
    "commuting-equivalence",
    "lattice-laws",
    "sigma-lattice",
    "kleene",
    "bz",
    "demorgan",
    "dyadic",
    "modularity",
    "substrate",
];

/// Third elements tried per pair in `lattice-laws`.
pub const DEFAULT_LATTICE_COMPETITORS: usize = 100;
/// Competitors tried per family in `sigma-lattice`.
pub const DEFAULT_FAMILY_COMPETITORS: usize = 50;
/// Family size in `sigma-lattice`.
pub const FAMILY_SIZE: usize = 5;
/// Approximant orders checked in `resolution-props`.
pub const APPROXIMANT_ORDERS: [usize; 5] = [1, 2, 5, 10, 100];

/// Knobs beyond (suite, dim, trials, seed, order).
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub tol: TolerancePolicy,
    /// Implementation of `≤ₛ` under test.
    pub spectral: Comparator,
    /// Implementation of `⪯` under test.
    pub numerical: Comparator,
    /// Overrides the per-suite competitor count.
    pub competitors: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { tol: TolerancePolicy::default(), spectral: spectral_leq, numerical: numerical_leq, competitors: None }
    }
}

impl SuiteConfig {
    pub fn with_tol(tol: TolerancePolicy) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn ctx(&self, order: OrderTag) -> CheckCtx {
        CheckCtx { tol: self.tol, order, spectral: self.spectral, numerical: self.numerical }
    }
}

/// Runs `name` with default tolerances and comparators.
pub fn run_suite(name: &str, dim: usize, trials: usize, seed: u64, order: OrderTag) -> Result<VerificationReport> {
    run_suite_with(name, dim, trials, seed, order, &SuiteConfig::default())
}

/// Runs `trials` trials of suite `name`. Trial `k` draws from stream `k` of
/// the generator keyed by `seed`.
pub fn run_suite_with(
    name: &str,
    dim: usize,
    trials: usize,
    seed: u64,
    order: OrderTag,
    config: &SuiteConfig,
) -> Result<VerificationReport> {
    let body = suite_body(name)?;
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let ctx = config.ctx(order);
    let start = Instant::now();
    let mut report = VerificationReport::new(name, order, dim, trials, seed);
    for k in 0..trials {
        let mut trial = Trial {
            g: Generator::new(seed, k as u64, dim),
            ctx: &ctx,
            report: &mut report,
            competitors: config.competitors,
        };
        if let Err(e) = body(&mut trial) {
            report.record_error("instance-generation", &e, Vec::new);
        }
    }
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

type SuiteBody = fn(&mut Trial) -> Result<()>;

fn suite_body(name: &str) -> Result<SuiteBody> {
    Ok(match name {
        "sa-axioms" => sa_axioms,
        "resolution-props" => resolution_props,
        "order-implication" => order_implication,
        "commuting-equivalence" => commuting_equivalence,
        "lattice-laws" => lattice_laws,
        "sigma-lattice" => sigma_lattice,
        "kleene" => kleene_structure,
        "bz" => bz,
        "demorgan" => demorgan,
        "dyadic" => dyadic,
        "modularity" => modularity,
        "substrate" => substrate,
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

struct Trial<'a> {
    g: Generator,
    ctx: &'a CheckCtx,
    report: &'a mut VerificationReport,
    competitors: Option<usize>,
}

impl Trial<'_> {
    fn check(&mut self, id: &str, witnesses: Vec<SymMatrix>) {
        let f = lookup(id).unwrap_or_else(|| panic!("check `{id}` is not registered"));
        match f(&witnesses, self.ctx) {
            Ok(outcome) => self.report.record(id, outcome, || witnesses),
            Err(e) => self.report.record_error(id, &e, || witnesses),
        }
    }

    fn tol(&self) -> &TolerancePolicy {
        &self.ctx.tol
    }

    fn effect(&mut self) -> SymMatrix {
        self.g.mixed_effect().into_matrix()
    }

    fn low_rank(&mut self) -> SymMatrix {
        let n = self.g.dim();
        let rank = self.g.index(n);
        let terms: Vec<(f64, Vec<f64>)> = (0..rank)
            .map(|_| {
                let sign = if self.g.coin() { 1.0 } else { -1.0 };
                (sign, self.g.gaussian_vector())
            })
            .collect();
        SymMatrix::from_weighted_outer(n, terms)
    }
}

fn sa_axioms(t: &mut Trial) -> Result<()> {
    let a = t.g.symmetric();
    let b = t.g.symmetric();
    let b2 = b.try_mul(&b)?.symmetric_part();
    t.check("square-positive", vec![a.clone()]);
    t.check("square-norm", vec![a.clone()]);
    t.check("quadratic-positive", vec![a.clone(), b2]);
    t.check("part-identities", vec![a.clone()]);
    let lr = t.low_rank();
    t.check("part-identities", vec![lr]);

    let q = t.g.projection();
    let inside = quadratic_map(q.matrix(), &b)?;
    t.check("carrier-minimal", vec![inside, q.into_matrix()]);

    let (c1, c2) = t.g.commuting_pair();
    t.check("positive-part-order", vec![c1.clone(), c2.clone()]);
    t.check("positive-part-order", vec![c2, c1]);
    Ok(())
}

fn resolution_props(t: &mut Trial) -> Result<()> {
    let a = if t.g.coin() { t.g.symmetric() } else { t.effect() };
    let r = resolution_of(&a, t.tol());
    let mut lambdas: Vec<f64> = r.breakpoints().to_vec();
    lambdas.push(r.lower() - 1.0);
    lambdas.push(r.upper() + 1.0);
    lambdas.push(t.g.uniform(r.lower() - 0.5, r.upper() + 0.5));
    for w in r.breakpoints().windows(2) {
        lambdas.push(0.5 * (w[0] + w[1]));
    }
    for lambda in lambdas {
        t.check("resolution-sandwich", vec![a.clone(), scalar(lambda)]);
        t.check("resolution-definition", vec![a.clone(), scalar(lambda)]);
    }
    t.check("resolution-structure", vec![a.clone()]);
    t.check("resolution-roundtrip", vec![a.clone()]);
    t.check("eigenprojection-gap", vec![a.clone()]);
    t.check("negation-law", vec![a.clone()]);
    let alpha = 10f64.powf(t.g.uniform(-1.0, 1.0));
    let beta = t.g.uniform(-2.0, 2.0);
    t.check("affine-law", vec![a.clone(), scalar(alpha), scalar(beta)]);

    let e = t.effect();
    t.check("resolution-carrier", vec![e.clone()]);
    for n in APPROXIMANT_ORDERS {
        t.check("approximant-rate", vec![e.clone(), scalar(n as f64)]);
    }
    let (c1, c2) = t.g.commuting_pair();
    t.check("commuting-resolutions", vec![c1, c2]);
    Ok(())
}

fn order_implication(t: &mut Trial) -> Result<()> {
    let tol = *t.tol();
    let (a, b) = t.g.spectral_pair(&tol)?;
    t.check("spectral-implies-numerical", vec![a.clone(), b.clone()]);
    let alpha = 10f64.powf(t.g.uniform(-1.0, 1.0));
    let beta = t.g.uniform(-2.0, 2.0);
    t.check("monotone-transform", vec![a, b, scalar(alpha), scalar(beta)]);

    let (x, y) = t.g.ordered_pair();
    t.check("spectral-implies-numerical", vec![x.clone(), y.clone()]);
    t.check("monotone-transform", vec![x, y, scalar(alpha), scalar(beta)]);

    let s = t.g.symmetric();
    t.check("positivity-bridge", vec![s]);
    let e = t.effect();
    t.check("positivity-bridge", vec![e.clone()]);

    let p = t.g.projection();
    let comp = p.complement();
    let above = &p.matrix().clone() + &quadratic_map(comp.matrix(), &e)?;
    let below = quadratic_map(p.matrix(), &e)?;
    t.check("one-projection-agreement", vec![p.matrix().clone(), above]);
    t.check("one-projection-agreement", vec![below, p.matrix().clone()]);
    t.check("one-projection-agreement", vec![p.matrix().clone(), e]);
    Ok(())
}

fn commuting_equivalence(t: &mut Trial) -> Result<()> {
    let (a, b) = t.g.commuting_pair();
    t.check("commuting-equivalence", vec![a, b]);
    Ok(())
}

fn lattice_laws(t: &mut Trial) -> Result<()> {
    let tol = *t.tol();
    let e = t.effect();
    let f = t.effect();
    let pair = vec![e.clone(), f.clone()];
    for id in ["meet-lower-bound", "join-upper-bound", "binary-family-agreement", "effect-sublattice"] {
        t.check(id, pair.clone());
    }
    if e.dim() == 2 {
        t.check("meet-oracle-dim2", pair.clone());
    }

    let m = spectral_meet(&e, &f, &tol)?;
    let j = spectral_join(&e, &f, &tol)?;
    let floor = resolution_of(&e, &tol).lower().min(resolution_of(&f, &tol).lower()).max(0.0);
    let ceiling = resolution_of(&e, &tol).upper().max(resolution_of(&f, &tol).upper()).min(1.0);
    for k in 0..t.competitors.unwrap_or(DEFAULT_LATTICE_COMPETITORS) {
        let g = t.g.effect().into_matrix();
        let c = match k % 5 {
            0 => g,
            1 => g.scale(t.g.uniform(0.0, 1.0) * floor),
            2 => kleene_complement(&kleene_complement(&g).scale(t.g.uniform(0.0, 1.0) * (1.0 - ceiling))),
            3 => spectral_meet(&m, &g, &tol)?,
            _ => spectral_join(&j, &g, &tol)?,
        };
        t.check("meet-greatest", vec![e.clone(), f.clone(), c.clone()]);
        t.check("join-least", vec![e.clone(), f.clone(), c]);
    }

    let p = t.g.projection();
    let q = t.g.projection();
    let sub = t.g.subprojection(&q);
    let shared = join(&sub, &t.g.projection_of_rank(1), &tol)?;
    let (p, q, sub, shared) = (p.into_matrix(), q.into_matrix(), sub.into_matrix(), shared.into_matrix());
    t.check("orthomodular", vec![sub.clone(), q.clone()]);
    t.check("orthomodular", vec![p.clone(), q.clone()]);
    t.check("projection-demorgan", vec![p.clone(), q.clone()]);
    t.check("projection-demorgan", vec![shared.clone(), q.clone()]);
    t.check("projection-meet-oracle", vec![p.clone(), q.clone()]);
    t.check("projection-meet-oracle", vec![shared, q.clone()]);
    t.check("projection-order-agreement", vec![sub.clone(), q.clone()]);
    t.check("projection-order-agreement", vec![q.clone(), sub]);
    t.check("projection-order-agreement", vec![p, q]);
    Ok(())
}

fn sigma_lattice(t: &mut Trial) -> Result<()> {
    let tol = *t.tol();
    let family: Vec<SymMatrix> = (0..FAMILY_SIZE).map(|_| t.effect()).collect();
    t.check("family-sup-upper", family.clone());
    t.check("family-inf-lower", family.clone());

    let effects: Vec<Effect> = family.iter().map(|m| Effect::try_new(m.clone(), &tol)).collect::<Result<_>>()?;
    let sup = family_sup(&effects, &tol)?.into_matrix();
    let inf = family_inf(&effects, &tol)?.into_matrix();
    let floor = resolution_of(&inf, &tol).lower().max(0.0);
    let ceiling = resolution_of(&sup, &tol).upper().min(1.0);
    for k in 0..t.competitors.unwrap_or(DEFAULT_FAMILY_COMPETITORS) {
        let g = t.g.effect().into_matrix();
        let c = match k % 5 {
            0 => g,
            1 => spectral_join(&sup, &g, &tol)?,
            2 => spectral_meet(&inf, &g, &tol)?,
            3 => g.scale(t.g.uniform(0.0, 1.0) * floor),
            _ => kleene_complement(&kleene_complement(&g).scale(t.g.uniform(0.0, 1.0) * (1.0 - ceiling))),
        };
        let mut with_c = family.clone();
        with_c.push(c);
        t.check("family-sup-least", with_c.clone());
        t.check("family-inf-greatest", with_c);
    }
    Ok(())
}

fn kleene_suite_pairs(t: &mut Trial) -> Result<(SymMatrix, SymMatrix, SymMatrix)> {
    let tol = *t.tol();
    let e = t.g.mixed_effect();
    let f = t.g.mixed_effect();
    let below = comparable_below(&e, &f, t.ctx.order, &tol)?.into_matrix();
    Ok((e.into_matrix(), f.into_matrix(), below))
}

fn kleene_structure(t: &mut Trial) -> Result<()> {
    let (e, f, below) = kleene_suite_pairs(t)?;
    let a = t.g.symmetric();
    let b = t.g.symmetric();
    t.check("I1", vec![a.clone()]);
    t.check("I1", vec![e.clone()]);
    for (x, y) in [(&e, &f), (&f, &e), (&below, &e), (&a, &b)] {
        t.check("I2", vec![x.clone(), y.clone()]);
    }
    t.check("R", vec![e.scale(0.5), f.scale(0.5)]);
    t.check("R", vec![e.clone(), f.clone()]);
    t.check("R", vec![below.scale(0.5), e.scale(0.5)]);
    t.check("kleene-demorgan", vec![e.clone(), f]);
    t.check("carrier-monotone", vec![below, e]);
    Ok(())
}

fn bz(t: &mut Trial) -> Result<()> {
    let (e, f, below) = kleene_suite_pairs(t)?;
    let p = t.g.projection().into_matrix();
    t.check("2a", vec![e.clone(), f.clone()]);
    t.check("2a", vec![p.clone(), e.clone()]);
    t.check("2b", vec![e.clone()]);
    t.check("2b", vec![p.clone()]);
    t.check("2c", vec![e.clone(), f]);
    t.check("2c", vec![below, e.clone()]);
    t.check("3", vec![e.clone()]);
    t.check("double-tilde", vec![e]);
    t.check("projection-tilde", vec![p]);
    Ok(())
}

fn demorgan(t: &mut Trial) -> Result<()> {
    let e = t.effect();
    let f = t.effect();
    let (ce, cf) = t.g.commuting_effects();
    let p = t.g.projection();
    let q = t.g.projection();
    let pairs = [(e, f), (ce.into_matrix(), cf.into_matrix()), (p.into_matrix(), q.into_matrix())];
    for (x, y) in pairs {
        t.check("carrier-meet", vec![x.clone(), y.clone()]);
        t.check("carrier-join", vec![x.clone(), y.clone()]);
        if t.ctx.order == OrderTag::Spectral {
            t.check("meet-resolution", vec![x, y]);
        }
    }
    Ok(())
}

fn dyadic(t: &mut Trial) -> Result<()> {
    let e = t.effect();
    for id in [
        "dyadic-sandwich",
        "dyadic-residual",
        "dyadic-commutation",
        "dyadic-join-monotone",
        "dyadic-paths-agree",
        "carrier-via-join",
    ] {
        t.check(id, vec![e.clone()]);
    }
    Ok(())
}

fn modularity(t: &mut Trial) -> Result<()> {
    let tol = *t.tol();
    let g = t.g.projection();
    let e = t.g.subprojection(&g);
    let f = if t.g.coin() {
        t.g.projection()
    } else {
        // share part of g so that f ∧ g is nontrivial more often
        let part = t.g.subprojection(&g);
        join(&part, &t.g.projection_of_rank(1), &tol)?
    };
    t.check("modular-law", vec![e.into_matrix(), f.into_matrix(), g.into_matrix()]);
    Ok(())
}

fn substrate(t: &mut Trial) -> Result<()> {
    let a = if t.g.coin() { t.g.symmetric() } else { t.low_rank() };
    for id in ["eig-roundtrip", "eig-orthogonality", "cluster-partition", "norm-bisection", "span-projection"] {
        t.check(id, vec![a.clone()]);
    }
    let e = t.g.structured_effect().into_matrix();
    t.check("cluster-partition", vec![e]);
    Ok(())
}

/// A dimension-2 pair with `a ⪯ b` but not `a ≤ₛ b`, and the number of
/// ordered pairs drawn before finding it.
#[derive(Debug, Clone, PartialEq)]
pub struct StrictnessWitness {
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub draws: usize,
}

/// Searches up to `max_pairs` random pairs `(a, a + ggᵀ)` in dimension 2 for
/// one that is numerically but not spectrally ordered.
pub fn find_strictness_witness(seed: u64, max_pairs: usize, tol: &TolerancePolicy) -> Result<Option<StrictnessWitness>> {
    for k in 0..max_pairs {
        let (a, b) = Generator::new(seed, k as u64, 2).ordered_pair();
        if numerical_leq(&a, &b, tol)? && !spectral_leq(&a, &b, tol)? {
            return Ok(Some(StrictnessWitness { a, b, draws: k + 1 }));
        }
    }
    Ok(None)
}
