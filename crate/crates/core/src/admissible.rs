// SPDX-License-Identifier: Apache-2.0

//! Admissible bilinear forms on spinor modules.
//!
//! A form `h(s,t) = sᵀHt` is admissible of symmetry `σ` and type `τ` when
//! `Hᵀ = σH` and `h(γ_v s, t) = τ h(s, γ_v t)`, i.e. `G_iᵀH = τHG_i`.

use alloc::format;
use alloc::vec::Vec;

use crate::clifford::{CliffordRep, HypercomplexStructure};
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseSystem};
use crate::matrix::ExactMatrix;
use crate::polyvector::blades;
use crate::scalar::{int, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    pub h: ExactMatrix,
    pub sigma: i8,
    pub tau: i8,
    pub nondegenerate: bool,
}

impl BilinearForm {
    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    /// `h(s,t) = sᵀHt`.
    pub fn eval(&self, s: &[Rational], t: &[Rational]) -> Rational {
        let ht = self.h.mul_vec(t);
        s.iter().zip(&ht).fold(int(0), |acc, (a, b)| acc + a * b)
    }

    /// Exact check of both defining identities against `rep`.
    pub fn is_admissible(&self, rep: &CliffordRep) -> bool {
        let tau = int(self.tau as i64);
        self.h.transpose() == self.h.scale(&int(self.sigma as i64))
            && rep.generators.iter().all(|g| g.transpose().mul(&self.h) == self.h.mul(g).scale(&tau))
    }
}

fn sign_check(x: i8) -> Result<()> {
    if x == 1 || x == -1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("sign must be +1 or -1, got {x}")))
    }
}

/// Adds the equations `(AᵀH − c·HB)[a][b] = 0` over all `(a, b)`.
///
/// `H` is stored row-major as unknown `a·N + b`.
pub(crate) fn add_intertwiner_equations(
    sys: &mut SparseSystem<Rational>,
    a_mat: &ExactMatrix,
    b_mat: &ExactMatrix,
    c: &Rational,
) {
    let n = a_mat.rows();
    let cols = |m: &ExactMatrix, col: usize| -> Vec<(usize, Rational)> {
        (0..n).filter(|&r| !Scalar::is_zero(&m[(r, col)])).map(|r| (r, m[(r, col)].clone())).collect()
    };
    let a_cols: Vec<_> = (0..n).map(|j| cols(a_mat, j)).collect();
    let b_cols: Vec<_> = (0..n).map(|j| cols(b_mat, j)).collect();
    for a in 0..n {
        for b in 0..n {
            // (AᵀH)[a][b] = Σ_r A[r][a] H[r][b]; (HB)[a][b] = Σ_r H[a][r] B[r][b]
            let mut eq: Vec<(usize, Rational)> = a_cols[a].iter().map(|(r, v)| (r * n + b, v.clone())).collect();
            eq.extend(b_cols[b].iter().map(|(r, v)| (a * n + r, -(v * c))));
            sys.add_equation(eq);
        }
    }
}

fn add_symmetry_equations(sys: &mut SparseSystem<Rational>, n: usize, sigma: i8) {
    for a in 0..n {
        for b in a..n {
            if a == b {
                if sigma < 0 {
                    sys.add_equation([(a * n + a, int(1))]);
                }
            } else {
                sys.add_equation([(a * n + b, int(1)), (b * n + a, int(-sigma as i64))]);
            }
        }
    }
}

fn to_form(v: Vec<Rational>, n: usize, sigma: i8, tau: i8) -> BilinearForm {
    let h = ExactMatrix::from_vectorized(n, n, &v).normalized();
    let nondegenerate = rank(&h) == n;
    BilinearForm { h, sigma, tau, nondegenerate }
}

/// Exact basis of all admissible forms with symmetry `sigma` and type `tau`.
///
/// Basis elements are scaled so their first nonzero entry (row-major) is 1.
/// Degenerate solutions are kept and flagged.
pub fn find_admissible(rep: &CliffordRep, sigma: i8, tau: i8) -> Result<Vec<BilinearForm>> {
    sign_check(sigma)?;
    sign_check(tau)?;
    let n = rep.dim;
    let mut sys = SparseSystem::new(n * n);
    add_symmetry_equations(&mut sys, n, sigma);
    let t = int(tau as i64);
    for g in &rep.generators {
        add_intertwiner_equations(&mut sys, g, g, &t);
    }
    Ok(sys.kernel().into_iter().map(|v| to_form(v, n, sigma, tau)).collect())
}

/// First nondegenerate admissible form of the given symmetry and type.
///
/// Basis elements are tried first; on reducible modules every basis
/// element may be degenerate, so small integer combinations follow.
pub fn nondegenerate_form(rep: &CliffordRep, sigma: i8, tau: i8) -> Result<Option<BilinearForm>> {
    let basis = find_admissible(rep, sigma, tau)?;
    if let Some(f) = basis.iter().find(|f| f.nondegenerate) {
        return Ok(Some(f.clone()));
    }
    let m = basis.len();
    if m < 2 {
        return Ok(None);
    }
    let n = rep.dim;
    let coeffs = [0i64, 1, 2, -1];
    let total = coeffs.len().checked_pow(m as u32).unwrap_or(usize::MAX).min(1 << 14);
    for code in 1..total {
        let mut c = code;
        let mut h = ExactMatrix::zeros(n, n);
        for f in &basis {
            let k = coeffs[c % coeffs.len()];
            c /= coeffs.len();
            if k != 0 {
                h = h.add(&f.h.scale(&int(k)));
            }
        }
        if rank(&h) == n {
            return Ok(Some(BilinearForm { h: h.normalized(), sigma, tau, nondegenerate: true }));
        }
    }
    Ok(None)
}

/// First nondegenerate form of type `tau`, trying `σ = +1` before `σ = −1`.
pub fn form_of_type(rep: &CliffordRep, tau: i8) -> Result<Option<BilinearForm>> {
    for sigma in [1, -1] {
        if let Some(f) = nondegenerate_form(rep, sigma, tau)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Sign `τ^k (−1)^{k(k−1)/2}` relating `γ_ξᵀH` and `Hγ_ξ` on `k`-vectors.
pub fn polyvector_sign(tau: i8, k: usize) -> i64 {
    let t = if tau < 0 && k % 2 == 1 { -1 } else { 1 };
    let r = if (k * k.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 };
    t * r
}

/// Checks `γ_ξᵀ H = τ^k (−1)^{k(k−1)/2} H γ_ξ` on every basis `k`-blade.
pub fn polyvector_type_rule_check(rep: &CliffordRep, h: &BilinearForm, k: usize) -> bool {
    let sign = int(polyvector_sign(h.tau, k));
    blades(rep.n(), k).iter().all(|b| {
        let g = rep.gamma_blade(b);
        g.transpose().mul(&h.h) == h.h.mul(&g).scale(&sign)
    })
}

/// The `τ = +1` form invariant under `J_1, J_2, J_3`.
///
/// The symmetry is not imposed; it is read off the unique solution. Fails
/// with [`Error::NotUnique`] when the solution space is not one-dimensional,
/// and with [`Error::Falsified`] when an expected identity breaks.
pub fn j_invariant_form(rep: &CliffordRep, j: &HypercomplexStructure) -> Result<BilinearForm> {
    if !j.verify(rep) {
        return Err(Error::Precondition("invalid hypercomplex structure".into()));
    }
    let n = rep.dim;
    let mut sys = SparseSystem::new(n * n);
    let one = int(1);
    for g in &rep.generators {
        add_intertwiner_equations(&mut sys, g, g, &one);
    }
    // J_aᵀ H J_a = H is equivalent to J_aᵀ H = −H J_a since J_a⁻¹ = −J_a.
    for ja in [&j.j1, &j.j2, &j.j3] {
        add_intertwiner_equations(&mut sys, ja, ja, &int(-1));
    }
    let mut sols = sys.kernel();
    if sols.len() != 1 {
        return Err(Error::NotUnique(sols.len()));
    }
    let h = ExactMatrix::from_vectorized(n, n, &sols.pop().unwrap()).normalized();
    let sigma = if h.transpose() == h {
        1
    } else if h.transpose() == h.neg() {
        -1
    } else {
        return Err(Error::Falsified("J-invariant form has no definite symmetry".into()));
    };
    let form = BilinearForm { nondegenerate: rank(&h) == n, h, sigma, tau: 1 };
    if !form.nondegenerate {
        return Err(Error::DegenerateForm);
    }
    for ja in [&j.j1, &j.j2, &j.j3] {
        if ja.transpose().mul(&form.h).mul(ja) != form.h || !ja.transpose().mul(&form.h).add(&form.h.mul(ja)).is_zero() {
            return Err(Error::Falsified("J-invariance or J-skewness".into()));
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{build_rep, find_hypercomplex};
    use crate::linalg::{kernel, span_basis};
    use crate::signature::Signature;

    fn rep(p: usize, q: usize) -> CliffordRep {
        build_rep(Signature::new(p, q).unwrap()).unwrap()
    }

    /// Dense oracle: stack every constraint as a row and take the kernel.
    fn dense_solutions(rep: &CliffordRep, sigma: i8, tau: i8) -> Vec<Vec<Rational>> {
        let n = rep.dim;
        let mut rows = Vec::new();
        let unit = |a: usize, b: usize| a * n + b;
        for a in 0..n {
            for b in 0..n {
                let mut row = alloc::vec![int(0); n * n];
                row[unit(a, b)] += int(1);
                row[unit(b, a)] -= int(sigma as i64);
                rows.push(row);
            }
        }
        for g in &rep.generators {
            for a in 0..n {
                for b in 0..n {
                    let mut row = alloc::vec![int(0); n * n];
                    for r in 0..n {
                        row[unit(r, b)] += g[(r, a)].clone();
                        row[unit(a, r)] -= &g[(r, b)] * int(tau as i64);
                    }
                    rows.push(row);
                }
            }
        }
        kernel(&ExactMatrix::from_rows(rows)).columns()
    }

    #[test]
    fn one_zero_table() {
        // Cℓ(1,0) on R², G = J with Jᵀ = −J. τ = +1 forces HJ = −JH, which
        // leaves the symmetric σz, σx; τ = −1 forces HJ = JH: Id and J.
        let r = rep(1, 0);
        let dims: Vec<usize> =
            [(1, 1), (1, -1), (-1, 1), (-1, -1)].iter().map(|&(s, t)| find_admissible(&r, s, t).unwrap().len()).collect();
        assert_eq!(dims, [2, 1, 0, 1]);
        let f = &find_admissible(&r, 1, -1).unwrap()[0];
        assert_eq!(f.h, ExactMatrix::identity(2));
    }

    #[test]
    fn definite_has_positive_tau_minus_form() {
        for p in 1..=8 {
            let forms = find_admissible(&rep(p, 0), 1, -1).unwrap();
            assert!(forms.iter().any(|f| f.h == ExactMatrix::identity(f.dim())), "({p},0)");
        }
    }

    #[test]
    fn sparse_matches_dense() {
        for s in Signature::all_up_to(6) {
            let r = build_rep(s).unwrap();
            for sigma in [1, -1] {
                for tau in [1, -1] {
                    let sparse: Vec<Vec<Rational>> =
                        find_admissible(&r, sigma, tau).unwrap().iter().map(|f| f.h.vectorize()).collect();
                    let dense = dense_solutions(&r, sigma, tau);
                    assert_eq!(sparse.len(), dense.len(), "{s} {sigma} {tau}");
                    let mut both = sparse.clone();
                    both.extend(dense);
                    assert_eq!(span_basis(&both, r.dim * r.dim).len(), sparse.len(), "{s}");
                    for f in find_admissible(&r, sigma, tau).unwrap() {
                        assert!(f.is_admissible(&r));
                    }
                }
            }
        }
    }

    #[test]
    fn exclusion_rule() {
        for s in Signature::all_up_to(8) {
            let r = build_rep(s).unwrap();
            let minus = form_of_type(&r, -1).unwrap().is_some();
            let plus = form_of_type(&r, 1).unwrap().is_some();
            assert!(minus || plus, "{s}");
            let excluded = s.n() % 4 == 1 && s.s_mod4() == 3;
            assert_eq!(!minus, excluded, "{s}");
        }
    }

    #[test]
    fn two_three_type_rule() {
        let r = rep(2, 3);
        assert!(form_of_type(&r, -1).unwrap().is_none());
        let h = form_of_type(&r, 1).unwrap().unwrap();
        assert_eq!(polyvector_sign(1, 2), -1);
        assert_eq!(blades(5, 2).len(), 10);
        for k in 0..=5 {
            assert!(polyvector_type_rule_check(&r, &h, k), "k={k}");
        }
    }

    #[test]
    fn j_invariant() {
        // Uniqueness is only claimed for n ≡ 1 (4), s ≡ 3 (8).
        let sigs: Vec<Signature> = Signature::all_up_to(5).into_iter().filter(|s| s.n() % 4 == 1 && s.s_mod8() == 3).collect();
        assert_eq!(sigs, [Signature::new(4, 1).unwrap(), Signature::new(0, 5).unwrap()]);
        for s in sigs {
            let r = build_rep(s).unwrap();
            {
                let j = find_hypercomplex(&r).unwrap();
                let f = j_invariant_form(&r, &j).unwrap_or_else(|e| panic!("{s}: {e}"));
                assert!(f.is_admissible(&r));
                let doubled = f.h.scale(&int(2));
                assert_eq!(doubled.normalized(), f.h);
            }
        }
    }
}
