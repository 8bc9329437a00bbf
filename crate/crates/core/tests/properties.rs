use proptest::prelude::*;

use spinorlab_core::admissible::form_of_type;
use spinorlab_core::brackets::{blade_metric, bracket_k};
use spinorlab_core::linalg::{kernel, rank, solve_linear};
use spinorlab_core::polyvector::{blades, Polyvector};
use spinorlab_core::scalar::int;
use spinorlab_core::{build_rep, ExactMatrix, Rational, Signature};

fn rat(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| ExactMatrix::from_fn(r, c, |i, j| int(v[i * c + j])))
    })
}

fn signature(max_n: usize) -> impl Strategy<Value = Signature> {
    (1..=max_n).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(m in int_matrix(6, 6)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn solve_reproduces_rhs(m in int_matrix(5, 5), x in proptest::collection::vec(-4i64..=4, 5)) {
        let x = rat(&x[..m.cols()]);
        let rhs = m.mul_vec(&x);
        let sol = solve_linear(&m, &rhs).unwrap();
        prop_assert_eq!(m.mul_vec(&sol), rhs);
    }

    #[test]
    fn kernel_is_annihilated(m in int_matrix(5, 7)) {
        let k = kernel(&m);
        prop_assert_eq!(k.cols() + rank(&m), m.cols());
        prop_assert!(m.mul(&k).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_squares_to_minus_norm(sig in signature(6), v in proptest::collection::vec(-3i64..=3, 6)) {
        let rep = build_rep(sig).unwrap();
        let v = rat(&v[..sig.n()]);
        let g = rep.gamma_vector(&v);
        let want = rep.identity().scale(&-sig.metric(&v, &v));
        prop_assert_eq!(g.mul(&g), want);
    }

    #[test]
    fn degree_filtration(sig in signature(5), v in proptest::collection::vec(-3i64..=3, 5), w in proptest::collection::vec(-3i64..=3, 5)) {
        // γ_{v∧w} = γ_vγ_w + g(v,w)·Id
        let rep = build_rep(sig).unwrap();
        let n = sig.n();
        let (v, w) = (rat(&v[..n]), rat(&w[..n]));
        let lhs = rep.gamma_polyvector(&Polyvector::wedge(n, &[v.clone(), w.clone()]));
        let rhs = rep.gamma_vector(&v).mul(&rep.gamma_vector(&w)).add(&rep.identity().scale(&sig.metric(&v, &w)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_bilinear(
        sig in signature(4),
        s in proptest::collection::vec(-3i64..=3, 8),
        s2 in proptest::collection::vec(-3i64..=3, 8),
        t in proptest::collection::vec(-3i64..=3, 8),
        a in -3i64..=3,
        k in 0usize..=2,
    ) {
        let rep = build_rep(sig).unwrap();
        prop_assume!(k <= sig.n() && rep.dim <= 8);
        let Some(h) = form_of_type(&rep, -1).unwrap().or(form_of_type(&rep, 1).unwrap()) else {
            return Ok(());
        };
        let d = rep.dim;
        let (s, s2, t) = (rat(&s[..d]), rat(&s2[..d]), rat(&t[..d]));
        let mix: Vec<Rational> = s.iter().zip(&s2).map(|(x, y)| x * int(a) + y).collect();
        let lhs = bracket_k(&rep, &h, &mix, &t, k).unwrap();
        let rhs = bracket_k(&rep, &h, &s, &t, k).unwrap().scale(&int(a)).add(&bracket_k(&rep, &h, &s2, &t, k).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        let lhs = bracket_k(&rep, &h, &t, &mix, k).unwrap();
        let rhs = bracket_k(&rep, &h, &t, &s, k).unwrap().scale(&int(a)).add(&bracket_k(&rep, &h, &t, &s2, k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_defining_identity(sig in signature(4), s in proptest::collection::vec(-3i64..=3, 8), t in proptest::collection::vec(-3i64..=3, 8)) {
        let rep = build_rep(sig).unwrap();
        prop_assume!(rep.dim <= 8);
        let Some(h) = form_of_type(&rep, -1).unwrap().or(form_of_type(&rep, 1).unwrap()) else {
            return Ok(());
        };
        let d = rep.dim;
        let (s, t) = (rat(&s[..d]), rat(&t[..d]));
        for k in 0..=sig.n() {
            let w = bracket_k(&rep, &h, &s, &t, k).unwrap();
            for b in blades(sig.n(), k) {
                let xi = Polyvector::basis(sig.n(), &b);
                let direct = h.eval(&rep.gamma_blade(&b).mul_vec(&s), &t);
                prop_assert_eq!(blade_metric(&rep, &w, &xi), direct);
            }
        }
    }
}

#[test]
fn build_rep_is_deterministic() {
    for n in 1..=8 {
        for p in 0..=n {
            let sig = Signature::new(p, n - p).unwrap();
            let (a, b) = (build_rep(sig).unwrap(), build_rep(sig).unwrap());
            assert_eq!(a.generators, b.generators);
            assert_eq!(format!("{:?}", a.generators), format!("{:?}", b.generators));
        }
    }
}
