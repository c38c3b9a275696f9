use proptest::prelude::*;

use synalg::dyadic::{dyadic, dyadic_expand, dyadic_residual};
use synalg::eigen::operator_norm;
use synalg::harness::Generator;
use synalg::io::{format_matrix, parse_matrix};
use synalg::lattice::{join, meet, orthocomplement, proj_leq};
use synalg::resolution::resolution_of;
use synalg::{
    carrier, eig, kleene_complement, numerical_leq, spectral_join, spectral_leq, spectral_meet, Effect, SymMatrix,
    TolerancePolicy,
};

fn spectrum_values(a: &SymMatrix) -> Vec<f64> {
    eig(a).unwrap().eigenvalues().to_vec()
}

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn symmetric(max_dim: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(-10.0f64..10.0, n * n)
            .prop_map(move |v| SymMatrix::from_fn(n, |i, j| if i <= j { v[i * n + j] } else { v[j * n + i] }).unwrap())
    })
}

/// Seed, stream and dimension for the library generators.
fn draw(max_dim: usize) -> impl Strategy<Value = Generator> {
    (any::<u64>(), any::<u64>(), 1..=max_dim).prop_map(|(seed, stream, dim)| Generator::new(seed, stream, dim))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eig_reconstructs(a in symmetric(8)) {
        let es = eig(&a).unwrap();
        prop_assert!(es.reconstruct().distance(&a) <= 1e-8 * (1.0 + operator_norm(&a)));
        let v = es.eigenvectors();
        let gram = v.transpose().mul(v);
        prop_assert!(gram.sub(&synalg::DenseMatrix::identity(a.dim())).frobenius_norm() < 1e-10);
        prop_assert!(es.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn trace_is_eigenvalue_sum(a in symmetric(8)) {
        let sum: f64 = spectrum_values(&a).iter().sum();
        prop_assert!((sum - a.trace()).abs() < 1e-9 * (1.0 + a.frobenius_norm()));
    }

    #[test]
    fn resolution_round_trip(a in symmetric(6)) {
        let r = resolution_of(&a, &tol());
        prop_assert!(r.reconstruct().distance(&a) <= 1e-8 * (1.0 + operator_norm(&a)));
        prop_assert!(r.projections().last().unwrap().is_identity());
        prop_assert!(r.eval(r.lower() - 1.0).is_zero());
    }

    #[test]
    fn kleene_is_an_involution(a in symmetric(6)) {
        prop_assert!(kleene_complement(&kleene_complement(&a)).distance(&a) < 1e-12);
    }

    #[test]
    fn carrier_is_idempotent(a in symmetric(6)) {
        let c = carrier(&a, &tol());
        prop_assert!(carrier(c.matrix(), &tol()).approx_eq(&c, 1e-10));
        let ac = a.try_mul(c.matrix()).unwrap();
        prop_assert!(ac.sub(&a.to_dense()).frobenius_norm() < 1e-8 * (1.0 + a.frobenius_norm()));
    }

    #[test]
    fn spectral_order_implies_numerical(mut g in draw(6)) {
        let (a, b) = g.spectral_pair(&tol()).unwrap();
        if spectral_leq(&a, &b, &tol()).unwrap() {
            prop_assert!(numerical_leq(&a, &b, &tol()).unwrap());
        }
    }

    #[test]
    fn meet_and_join_bound_the_pair(mut g in draw(5)) {
        let (e, f) = (g.mixed_effect(), g.mixed_effect());
        let m = spectral_meet(e.matrix(), f.matrix(), &tol()).unwrap();
        let j = spectral_join(e.matrix(), f.matrix(), &tol()).unwrap();
        for x in [e.matrix(), f.matrix()] {
            prop_assert!(spectral_leq(&m, x, &tol()).unwrap());
            prop_assert!(spectral_leq(x, &j, &tol()).unwrap());
        }
        prop_assert!(Effect::try_new(m, &tol()).is_ok());
        prop_assert!(Effect::try_new(j, &tol()).is_ok());
    }

    #[test]
    fn projection_lattice_bounds(mut g in draw(6)) {
        let (p, q) = (g.projection(), g.projection());
        let m = meet(&p, &q, &tol()).unwrap();
        let j = join(&p, &q, &tol()).unwrap();
        prop_assert!(proj_leq(&m, &p, &tol()).unwrap() && proj_leq(&m, &q, &tol()).unwrap());
        prop_assert!(proj_leq(&p, &j, &tol()).unwrap() && proj_leq(&q, &j, &tol()).unwrap());
        prop_assert!(orthocomplement(&orthocomplement(&p)).approx_eq(&p, 1e-15));
        prop_assert!(meet(&p, &p.complement(), &tol()).unwrap().is_zero());
        prop_assert!(join(&p, &p.complement(), &tol()).unwrap().is_identity());
    }

    #[test]
    fn dyadic_residual_is_small(mut g in draw(6), steps in 1usize..=30) {
        let e = g.mixed_effect();
        let ps = dyadic_expand(&e, steps, &tol()).unwrap();
        let r = dyadic_residual(&e, &ps);
        let values = spectrum_values(&r);
        prop_assert!(values[0] >= -1e-12);
        prop_assert!(values[values.len() - 1] <= dyadic(steps) + 2e-9);
    }

    #[test]
    fn matrix_text_round_trip(a in symmetric(5)) {
        let back = parse_matrix(&format_matrix(&a)).unwrap();
        prop_assert_eq!(back.matrix, a);
        prop_assert_eq!(back.asymmetry, 0.0);
    }
}
