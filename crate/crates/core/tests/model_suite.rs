use spinorlab_core::model::{kappa_upper_bound, HyperquadricModel, SpinorField};
use spinorlab_core::Signature;

/// Every hyperquadric with cone dimension ≤ 6: all constant cone spinors are
/// Killing with one sign, Dirac and scalar-curvature identities hold, the
/// curvature bound is saturated, and residuals converge at second order.
#[test]
fn default_suite() {
    for n in 2..=6 {
        for p in 1..=n {
            let m = HyperquadricModel::new(Signature::new(p, n - p).unwrap()).unwrap();
            let dim = m.spinor_dim();
            let r = m.killing_report();
            assert_eq!(r.passing, dim, "{r:?}");
            let eps = r.epsilon.expect("one sign for all basis spinors");
            let lambda = eps as f64 * 0.5;
            let s = SpinorField::basis(dim, 0);
            assert!(m.epsilon_stable(&s));
            assert!(m.dirac_residual(&s, lambda) < 1e-5);
            assert!(m.scal_check(lambda).max_error < 1e-5);
            assert_eq!(kappa_upper_bound(&m, lambda, 1e-4).bound, dim);
            if let Some(form) = m.intrinsic_form(-1).unwrap() {
                let t = SpinorField::basis(dim, dim - 1);
                let b = m.bracket_field_checks(&s, &t, 1, &form, lambda, lambda).unwrap();
                assert!(b.max_residual() < 1e-5, "{b:?}");
                let all: Vec<_> = (0..dim).map(|k| SpinorField::basis(dim, k)).collect();
                assert_eq!(m.homogeneity_span(&all, &form), m.n());
            }
            let c = m.convergence_study(1e-2).unwrap();
            assert!(c.passed(3.0), "{c:?}");
        }
    }
}
