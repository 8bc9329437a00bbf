// SPDX-License-Identifier: Apache-2.0

//! The bracket `[s,t]_k`, null-vector kernels, and the obstruction system
//! deciding surjectivity of `Π = [·,·]_1` on a subspace.

use alloc::format;
use alloc::vec::Vec;

use crate::admissible::BilinearForm;
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, span_basis, SparseSystem};
use crate::matrix::ExactMatrix;
use crate::polyvector::{blades, Polyvector};
use crate::scalar::{int, Rational, Scalar};

/// Subspace of the spinor module given by a full-rank `N × d` basis matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorSubspace {
    basis: ExactMatrix,
}

impl SpinorSubspace {
    /// Span of `vectors` in `R^ambient`; dependent vectors are dropped.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let b = span_basis(vectors, ambient);
        Self { basis: basis_matrix(ambient, &b) }
    }

    /// Wraps `basis`, which must have independent columns.
    pub fn from_basis(basis: ExactMatrix) -> Result<Self> {
        if rank(&basis) != basis.cols() {
            return Err(Error::Precondition("subspace basis columns are dependent".into()));
        }
        Ok(Self { basis })
    }

    pub fn full(ambient: usize) -> Self {
        Self { basis: ExactMatrix::identity(ambient) }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { basis: ExactMatrix::zeros(ambient, 0) }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut vs = self.vectors();
        vs.push(v.to_vec());
        crate::linalg::rank_of_vectors(&vs) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        crate::linalg::rank_of_vectors(&vs) == self.dim()
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Self) -> Self {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Self::span(self.ambient(), &vs)
    }

    /// Gram matrix `Bᵀ H B` of `h` restricted to the subspace.
    pub fn gram(&self, h: &BilinearForm) -> ExactMatrix {
        self.basis.transpose().mul(&h.h).mul(&self.basis)
    }

    pub fn is_isotropic(&self, h: &BilinearForm) -> bool {
        self.gram(h).is_zero()
    }
}

pub(crate) fn basis_matrix(ambient: usize, cols: &[Vec<Rational>]) -> ExactMatrix {
    if cols.is_empty() {
        ExactMatrix::zeros(ambient, 0)
    } else {
        ExactMatrix::from_columns(cols)
    }
}

fn require_nondegenerate(h: &BilinearForm) -> Result<()> {
    if h.nondegenerate {
        Ok(())
    } else {
        Err(Error::DegenerateForm)
    }
}

/// `[s,t]_k`: the degree-`k` polyvector with `g(ω, e_I) = h(γ_{e_I} s, t)`.
///
/// With the diagonal blade metric `g(e_I,e_I) = Π η_ii = ±1` this gives
/// `ω_I = g(e_I,e_I)·h(γ_{e_I} s, t)`.
pub fn bracket_k(rep: &CliffordRep, h: &BilinearForm, s: &[Rational], t: &[Rational], k: usize) -> Result<Polyvector<Rational>> {
    require_nondegenerate(h)?;
    let n = rep.n();
    if k > n {
        return Err(Error::Precondition(format!("degree {k} exceeds n = {n}")));
    }
    if s.len() != rep.dim || t.len() != rep.dim {
        return Err(Error::Shape { expected: rep.dim, found: s.len().max(t.len()) });
    }
    let ht = h.h.mul_vec(t);
    let coeffs = blades(n, k)
        .iter()
        .map(|b| {
            let gs = rep.gamma_blade(b).mul_vec(s);
            let val = gs.iter().zip(&ht).fold(int(0), |acc, (x, y)| acc + x * y);
            if rep.blade_norm(b) < 0 {
                -val
            } else {
                val
            }
        })
        .collect();
    Ok(Polyvector::from_coeffs(n, k, coeffs))
}

/// `g(ω, ξ)` on `k`-vectors with the diagonal blade metric.
pub fn blade_metric(rep: &CliffordRep, a: &Polyvector<Rational>, b: &Polyvector<Rational>) -> Rational {
    assert_eq!((a.n, a.k), (b.n, b.k));
    blades(a.n, a.k)
        .iter()
        .zip(a.coeffs.iter().zip(&b.coeffs))
        .fold(int(0), |acc, (bl, (x, y))| acc + x * y * int(rep.blade_norm(bl)))
}

/// Verification data for the null-vector lemma.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NullLemmaReport {
    pub spinor_dim: usize,
    pub kernel_dim: usize,
    pub image_equals_kernel: bool,
    pub isotropic: bool,
}

impl NullLemmaReport {
    pub fn holds(&self) -> bool {
        2 * self.kernel_dim == self.spinor_dim && self.image_equals_kernel && self.isotropic
    }
}

fn check_null(rep: &CliffordRep, v: &[Rational]) -> Result<()> {
    let sig = rep.signature;
    if sig.is_definite() {
        return Err(Error::DefiniteSignature);
    }
    if v.len() != sig.n() {
        return Err(Error::Shape { expected: sig.n(), found: v.len() });
    }
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    if !Scalar::is_zero(&sig.metric(v, v)) {
        return Err(Error::NotNull);
    }
    Ok(())
}

/// Checks the lemma for `v` and returns the report together with `L_v`.
pub fn null_lemma(rep: &CliffordRep, h: &BilinearForm, v: &[Rational]) -> Result<(NullLemmaReport, SpinorSubspace)> {
    check_null(rep, v)?;
    let g = rep.gamma_vector(v);
    let ker = SpinorSubspace { basis: kernel(&g) };
    let img = SpinorSubspace::span(rep.dim, &g.columns());
    let report = NullLemmaReport {
        spinor_dim: rep.dim,
        kernel_dim: ker.dim(),
        image_equals_kernel: img.dim() == ker.dim() && ker.contains_subspace(&img),
        isotropic: ker.is_isotropic(h),
    };
    Ok((report, ker))
}

/// `L_v = ker γ_v` for a nonzero null vector, after checking the lemma.
pub fn null_kernel(rep: &CliffordRep, h: &BilinearForm, v: &[Rational]) -> Result<SpinorSubspace> {
    let (report, ker) = null_lemma(rep, h, v)?;
    if !report.holds() {
        return Err(Error::Falsified(format!("null-vector lemma: {report:?}")));
    }
    Ok(ker)
}

/// The `d × d` matrices `Bᵀ G_iᵀ H B`, one per generator.
fn restricted_betas(rep: &CliffordRep, h: &BilinearForm, a: &SpinorSubspace, b: &SpinorSubspace) -> Vec<ExactMatrix> {
    let hb = h.h.mul(&b.basis);
    rep.generators.iter().map(|g| g.mul(&a.basis).transpose().mul(&hb)).collect()
}

/// Basis of `{v : γ_v S0 ⊆ S0^⊥}`; empty exactly when `Π` is onto on `S0`.
pub fn obstruction_vectors(rep: &CliffordRep, h: &BilinearForm, s0: &SpinorSubspace) -> Result<Vec<Vec<Rational>>> {
    require_nondegenerate(h)?;
    let mats = restricted_betas(rep, h, s0, s0);
    let d = s0.dim();
    let mut sys = SparseSystem::new(rep.n());
    for a in 0..d {
        for b in 0..d {
            sys.add_equation(mats.iter().enumerate().map(|(i, m)| (i, m[(a, b)].clone())));
        }
    }
    Ok(sys.kernel())
}

/// Span of `{[s,t]_1 : s ∈ A, t ∈ B}` as coordinate vectors.
pub fn pi_image(rep: &CliffordRep, h: &BilinearForm, a: &SpinorSubspace, b: &SpinorSubspace) -> Result<Vec<Vec<Rational>>> {
    require_nondegenerate(h)?;
    let mats = restricted_betas(rep, h, a, b);
    let mut vs = Vec::with_capacity(a.dim() * b.dim());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            vs.push(
                mats.iter()
                    .enumerate()
                    .map(|(k, m)| if rep.signature.eta(k) < 0 { -m[(i, j)].clone() } else { m[(i, j)].clone() })
                    .collect(),
            );
        }
    }
    Ok(span_basis(&vs, rep.n()))
}

/// `β = h(γ_v ·, ·)` together with its rank and verified symmetry `στ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaForm {
    /// Matrix `γ_vᵀ H`, so that `β(s,t) = sᵀ β t`.
    pub beta: ExactMatrix,
    pub rank: usize,
    pub symmetry: i8,
}

pub fn beta_form(rep: &CliffordRep, h: &BilinearForm, v: &[Rational]) -> Result<BetaForm> {
    let beta = rep.gamma_vector(v).transpose().mul(&h.h);
    let symmetry = h.sigma * h.tau;
    if beta.transpose() != beta.scale(&int(symmetry as i64)) {
        return Err(Error::Falsified("symmetry of beta differs from sigma*tau".into()));
    }
    Ok(BetaForm { rank: rank(&beta), beta, symmetry })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::form_of_type;
    use crate::clifford::build_rep;
    use crate::linalg::solve_linear;
    use crate::rng::{int_vector, null_vector, seeded};
    use crate::signature::Signature;
    use alloc::vec;

    fn setup(p: usize, q: usize) -> (CliffordRep, BilinearForm) {
        let r = build_rep(Signature::new(p, q).unwrap()).unwrap();
        let h = form_of_type(&r, -1).unwrap().or_else(|| form_of_type(&r, 1).unwrap()).unwrap();
        (r, h)
    }

    #[test]
    fn degree_zero_and_zero_spinor() {
        let (r, h) = setup(2, 3);
        let mut rng = seeded(1);
        let s = int_vector(&mut rng, 4, 3);
        let t = int_vector(&mut rng, 4, 3);
        let b0 = bracket_k(&r, &h, &s, &t, 0).unwrap();
        assert_eq!(b0.coeffs, [h.eval(&s, &t)]);
        for k in 0..=5 {
            assert!(bracket_k(&r, &h, &[int(0), int(0), int(0), int(0)], &t, k).unwrap().is_zero());
        }
    }

    #[test]
    fn degree_one_matches_gram_solve() {
        // Oracle: solve G ω = (h(γ_{e_i} s, t))_i with the metric Gram matrix.
        let (r, h) = setup(2, 0);
        assert_eq!(h.tau, -1);
        let mut rng = seeded(20);
        let gram = ExactMatrix::from_fn(2, 2, |i, j| if i == j { int(r.signature.eta(i)) } else { int(0) });
        for _ in 0..20 {
            let s = int_vector(&mut rng, r.dim, 3);
            let t = int_vector(&mut rng, r.dim, 3);
            let v = int_vector(&mut rng, 2, 3);
            let w = bracket_k(&r, &h, &s, &t, 1).unwrap();
            let rhs: Vec<Rational> = (0..2).map(|i| h.eval(&r.generators[i].mul_vec(&s), &t)).collect();
            assert_eq!(solve_linear(&gram, &rhs).unwrap(), w.coeffs);
            let gw = r.signature.metric(&w.coeffs, &v);
            assert_eq!(gw, h.eval(&r.gamma_vector(&v).mul_vec(&s), &t));
        }
    }

    #[test]
    fn rejects_degenerate() {
        let (r, mut h) = setup(2, 0);
        h.nondegenerate = false;
        assert_eq!(bracket_k(&r, &h, &vec![int(1); 4], &vec![int(1); 4], 1), Err(Error::DegenerateForm));
    }

    #[test]
    fn null_kernel_examples() {
        let (r, h) = setup(1, 1);
        assert_eq!(null_kernel(&r, &h, &[int(1), int(1)]).unwrap().dim(), 1);
        let (r, h) = setup(2, 3);
        let mut rng = seeded(3);
        for _ in 0..10 {
            let v = null_vector(&mut rng, r.signature);
            let l = null_kernel(&r, &h, &v).unwrap();
            assert_eq!(l.dim(), 2);
            assert!(l.is_isotropic(&h));
        }
        let (r, h) = setup(3, 0);
        assert_eq!(null_kernel(&r, &h, &[int(1), int(0), int(0)]), Err(Error::DefiniteSignature));
        let (r, h) = setup(2, 3);
        assert_eq!(null_kernel(&r, &h, &[int(1), int(0), int(0), int(0), int(0)]), Err(Error::NotNull));
        assert_eq!(null_kernel(&r, &h, &vec![int(0); 5]), Err(Error::ZeroVector));
    }

    #[test]
    fn obstruction_examples() {
        let (r, h) = setup(2, 3);
        assert!(obstruction_vectors(&r, &h, &SpinorSubspace::full(4)).unwrap().is_empty());
        assert_eq!(obstruction_vectors(&r, &h, &SpinorSubspace::zero(4)).unwrap().len(), 5);
        let v = null_vector(&mut seeded(9), r.signature);
        let l = null_kernel(&r, &h, &v).unwrap();
        let obs = obstruction_vectors(&r, &h, &l).unwrap();
        let mut with_v = obs.clone();
        with_v.push(v);
        assert_eq!(crate::linalg::rank_of_vectors(&with_v), obs.len());
    }

    #[test]
    fn pi_image_examples() {
        let (r, h) = setup(2, 3);
        let full = SpinorSubspace::full(4);
        assert_eq!(pi_image(&r, &h, &full, &full).unwrap().len(), 5);
        assert!(pi_image(&r, &h, &SpinorSubspace::zero(4), &full).unwrap().is_empty());
    }

    #[test]
    fn beta_examples() {
        let (r, h) = setup(2, 3);
        assert!(beta_form(&r, &h, &vec![int(0); 5]).unwrap().beta.is_zero());
        let v = null_vector(&mut seeded(4), r.signature);
        let b = beta_form(&r, &h, &v).unwrap();
        assert_eq!(b.rank, 2);
        assert_eq!(b.symmetry, h.sigma * h.tau);
        let b = beta_form(&r, &h, &[int(1), int(0), int(0), int(0), int(0)]).unwrap();
        assert_eq!(b.rank, 4);
    }
}
