// SPDX-License-Identifier: Apache-2.0

//! Irreducible real representations of Clifford algebras.
//!
//! Convention: `γ_v² = −g(v,v)·Id`, so positive-norm generators square to
//! `−Id` and negative-norm generators to `+Id`. Every generator produced here
//! is a signed permutation matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{rank, SparseSystem};
use crate::matrix::{ExactMatrix, Matrix};
use crate::polyvector::{blades, Polyvector};
use crate::scalar::{int, rational_sqrt, Rational, Scalar};
use crate::signature::{CommutantType, Signature};

/// Irreducible real module of `Cℓ(p,q)` given by its generator matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordRep {
    pub signature: Signature,
    pub dim: usize,
    pub generators: Vec<ExactMatrix>,
    pub commutant_type: CommutantType,
}

/// Generators tagged with the sign of their square.
#[derive(Clone)]
struct Gens {
    dim: usize,
    gens: Vec<(i64, ExactMatrix)>,
}

fn m2(a: i64, b: i64, c: i64, d: i64) -> ExactMatrix {
    ExactMatrix::from_int_rows(&[&[a, b], &[c, d]])
}

fn sigma_z() -> ExactMatrix {
    m2(1, 0, 0, -1)
}

fn sigma_x() -> ExactMatrix {
    m2(0, 1, 1, 0)
}

fn complex_j() -> ExactMatrix {
    m2(0, -1, 1, 0)
}

impl Gens {
    fn trivial() -> Self {
        Self { dim: 1, gens: Vec::new() }
    }

    fn product(&self) -> ExactMatrix {
        self.gens.iter().fold(ExactMatrix::identity(self.dim), |acc, (_, g)| acc.mul(g))
    }

    /// Doubles the module and appends one generator with the given square.
    fn double(&self, square: i64) -> Self {
        let mut gens: Vec<_> = self.gens.iter().map(|(s, g)| (*s, g.kron(&sigma_z()))).collect();
        let extra = if square < 0 { complex_j() } else { sigma_x() };
        gens.push((square, ExactMatrix::identity(self.dim).kron(&extra)));
        Self { dim: 2 * self.dim, gens }
    }

    /// `Cℓ(p+1,q+1) ≅ Cℓ(p,q) ⊗ Cℓ(1,1)`.
    fn hyperbolic(&self) -> Self {
        let mut g = self.double(-1);
        g.gens.push((1, ExactMatrix::identity(self.dim).kron(&sigma_x())));
        g
    }

    /// `Cℓ(p,q+2) ≅ Cℓ(q,p) ⊗ Cℓ(0,2)`; the old generators flip their squares.
    fn twist(&self) -> Self {
        let mut gens: Vec<_> = self.gens.iter().map(|(s, g)| (-s, g.kron(&complex_j()))).collect();
        let id = ExactMatrix::identity(self.dim);
        gens.push((1, id.kron(&sigma_x())));
        gens.push((1, id.kron(&sigma_z())));
        Self { dim: 2 * self.dim, gens }
    }

    /// Appends the volume element of an even number of generators.
    fn volume_extend(&self) -> Self {
        debug_assert!(self.gens.len() % 2 == 0);
        let nu = self.product();
        let sq = nu.mul(&nu);
        let sign = if sq == ExactMatrix::identity(self.dim) { 1 } else { -1 };
        let mut g = self.clone();
        g.gens.push((sign, nu));
        g
    }

    fn restrict(&self, keep: usize) -> Self {
        Self { dim: self.dim, gens: self.gens[..keep].to_vec() }
    }

    /// Graded product with the 16-dimensional `Cℓ(8,0)` module.
    fn tensor_eight(&self) -> Self {
        let eight = octonion_eight();
        let nu = eight.product();
        let mut gens: Vec<_> = self.gens.iter().map(|(s, g)| (*s, g.kron(&nu))).collect();
        let id = ExactMatrix::identity(self.dim);
        gens.extend(eight.gens.iter().map(|(s, g)| (*s, id.kron(g))));
        Self { dim: self.dim * eight.dim, gens }
    }
}

/// Cayley–Dickson product of coefficient vectors of length `2^k`.
fn cayley_dickson(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return alloc::vec![a[0] * b[0]];
    }
    let h = n / 2;
    let conj = |x: &[i64]| -> Vec<i64> {
        let mut v: Vec<i64> = x.iter().map(|t| -t).collect();
        v[0] = x[0];
        v
    };
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    // (a1,a2)(b1,b2) = (a1 b1 − b2* a2, b2 a1 + a2 b1*)
    let x1 = cayley_dickson(a1, b1);
    let x2 = cayley_dickson(&conj(b2), a2);
    let y1 = cayley_dickson(b2, a1);
    let y2 = cayley_dickson(a2, &conj(b1));
    let mut out: Vec<i64> = x1.iter().zip(&x2).map(|(u, v)| u - v).collect();
    out.extend(y1.iter().zip(&y2).map(|(u, v)| u + v));
    out
}

/// Left multiplication by the octonion basis unit `e_i` on `R^8`.
fn octonion_left(i: usize) -> ExactMatrix {
    let unit = |k: usize| {
        let mut v = alloc::vec![0i64; 8];
        v[k] = 1;
        v
    };
    let mut m = ExactMatrix::zeros(8, 8);
    for j in 0..8 {
        let prod = cayley_dickson(&unit(i), &unit(j));
        for (k, c) in prod.iter().enumerate() {
            if *c != 0 {
                m[(k, j)] = int(*c);
            }
        }
    }
    m
}

/// `Cℓ(7,0)` on `R^8` by imaginary octonions.
fn octonion_seven() -> Gens {
    Gens { dim: 8, gens: (1..8).map(|i| (-1, octonion_left(i))).collect() }
}

/// `Cℓ(8,0)` on `R^16 = O ⊕ O` via `v ↦ [[0, L_v], [−L_{v̄}, 0]]`.
fn octonion_eight() -> Gens {
    let zero = ExactMatrix::zeros(8, 8);
    let block = |a: &ExactMatrix, b: &ExactMatrix| zero.hstack(a).vstack(&b.hstack(&zero));
    let id = ExactMatrix::identity(8);
    let mut gens = alloc::vec![(-1, block(&id, &id.neg()))];
    for i in 1..8 {
        let l = octonion_left(i);
        gens.push((-1, block(&l, &l)));
    }
    Gens { dim: 16, gens }
}

/// Deterministic generator set for `Cℓ(p,q)`, in construction order.
fn construct(p: usize, q: usize) -> Gens {
    if p >= 1 && q >= 1 {
        return construct(p - 1, q - 1).hyperbolic();
    }
    if p == 0 {
        return match q {
            0 => Gens::trivial(),
            1 => Gens::trivial().volume_extend(),
            _ => construct(q - 2, 0).twist(),
        };
    }
    match p {
        1 => Gens::trivial().double(-1),
        2 => construct(1, 0).double(-1),
        3 => construct(2, 0).volume_extend(),
        4..=6 => octonion_seven().restrict(p),
        7 => octonion_seven(),
        8 => octonion_eight(),
        _ => construct(p - 8, 0).tensor_eight(),
    }
}

/// Builds an irreducible real representation of `Cℓ(p,q)`.
///
/// Generators are ordered with the `p` positive directions first. The module
/// dimension always equals [`Signature::spinor_dim`], which makes the module
/// irreducible; the commutant check in the tests confirms this independently.
pub fn build_rep(sig: Signature) -> Result<CliffordRep> {
    let sig = Signature::new(sig.p, sig.q)?;
    let g = construct(sig.p, sig.q);
    let mut gens = g.gens;
    // Stable sort: squares −1 (positive norm) first.
    gens.sort_by_key(|(s, _)| *s);
    debug_assert_eq!(gens.iter().filter(|(s, _)| *s < 0).count(), sig.p);
    if g.dim != sig.spinor_dim() {
        return Err(Error::ConstructionFailed(format!(
            "module for {} has dimension {}, expected {}",
            sig,
            g.dim,
            sig.spinor_dim()
        )));
    }
    Ok(CliffordRep {
        signature: sig,
        dim: g.dim,
        generators: gens.into_iter().map(|(_, m)| m).collect(),
        commutant_type: sig.commutant_type(),
    })
}

impl CliffordRep {
    pub fn n(&self) -> usize {
        self.signature.n()
    }

    pub fn identity(&self) -> ExactMatrix {
        ExactMatrix::identity(self.dim)
    }

    /// `γ_v = Σ v_i G_i`.
    pub fn gamma_vector(&self, v: &[Rational]) -> ExactMatrix {
        assert_eq!(v.len(), self.n(), "vector length must equal n");
        let mut acc = ExactMatrix::zeros(self.dim, self.dim);
        for (vi, g) in v.iter().zip(&self.generators) {
            if !Scalar::is_zero(vi) {
                acc = acc.add(&g.scale(vi));
            }
        }
        acc
    }

    /// `γ_{e_I}` for a strictly increasing multi-index: the plain product.
    pub fn gamma_blade(&self, idx: &[usize]) -> ExactMatrix {
        idx.iter().fold(self.identity(), |acc, &i| acc.mul(&self.generators[i]))
    }

    /// Antisymmetrized Clifford action of a polyvector; degree 0 acts as a
    /// multiple of the identity.
    pub fn gamma_polyvector(&self, xi: &Polyvector<Rational>) -> ExactMatrix {
        assert_eq!(xi.n, self.n(), "polyvector dimension must equal n");
        let mut acc = ExactMatrix::zeros(self.dim, self.dim);
        for (b, c) in blades(xi.n, xi.k).iter().zip(&xi.coeffs) {
            if !Scalar::is_zero(c) {
                acc = acc.add(&self.gamma_blade(b).scale(c));
            }
        }
        acc
    }

    /// `g(e_I, e_I) = Π η_ii` for a basis blade.
    pub fn blade_norm(&self, idx: &[usize]) -> i64 {
        idx.iter().map(|&i| self.signature.eta(i)).product()
    }

    /// Volume element `G_1⋯G_n`.
    pub fn volume_element(&self) -> ExactMatrix {
        self.gamma_blade(&(0..self.n()).collect::<Vec<_>>())
    }

    /// Exact check of `G_iG_j + G_jG_i = −2η_ij·Id`, naming the first failure.
    pub fn check_relations(&self) -> Result<()> {
        check_clifford_relations(&self.generators, self.signature, self.dim)
    }

    /// Basis of the commutant `{X : X G_i = G_i X}`.
    pub fn commutant(&self) -> Vec<ExactMatrix> {
        commutant_of(&self.generators, self.dim)
    }
}

pub(crate) fn check_clifford_relations(gens: &[ExactMatrix], sig: Signature, dim: usize) -> Result<()> {
    let id = ExactMatrix::identity(dim);
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let ac = gens[i].anticommutator(&gens[j]);
            let expect = if i == j { id.scale(&int(2 * sig.eta(i) * -1)) } else { ExactMatrix::zeros(dim, dim) };
            if ac != expect {
                return Err(Error::RelationMismatch(format!("G_{i}G_{j} + G_{j}G_{i} = -2 eta_{i}{j} Id")));
            }
        }
    }
    Ok(())
}

/// Basis of `{X : X A = A X for all A in mats}`.
pub fn commutant_of(mats: &[ExactMatrix], dim: usize) -> Vec<ExactMatrix> {
    let var = |a: usize, b: usize| a * dim + b;
    let mut sys = SparseSystem::<Rational>::new(dim * dim);
    for m in mats {
        // (XA − AX)[a][b] = Σ_c X[a][c] A[c][b] − Σ_c A[a][c] X[c][b]
        let nz: Vec<Vec<(usize, Rational)>> = (0..dim)
            .map(|r| (0..dim).filter(|&c| !Scalar::is_zero(&m[(r, c)])).map(|c| (c, m[(r, c)].clone())).collect())
            .collect();
        let nz_col: Vec<Vec<(usize, Rational)>> = (0..dim)
            .map(|c| (0..dim).filter(|&r| !Scalar::is_zero(&m[(r, c)])).map(|r| (r, m[(r, c)].clone())).collect())
            .collect();
        for a in 0..dim {
            for b in 0..dim {
                let mut eq: Vec<(usize, Rational)> = Vec::new();
                for (c, v) in &nz_col[b] {
                    eq.push((var(a, *c), v.clone()));
                }
                for (c, v) in &nz[a] {
                    eq.push((var(*c, b), -v));
                }
                sys.add_equation(eq);
            }
        }
    }
    sys.kernel().into_iter().map(|v| ExactMatrix::from_vectorized(dim, dim, &v)).collect()
}

/// Classifies a commutant basis as a real division algebra, or `None` when
/// it is not one (the module is then reducible).
pub fn classify_commutant(basis: &[ExactMatrix]) -> Option<CommutantType> {
    let traceless = traceless_part(basis);
    match basis.len() {
        1 => Some(CommutantType::R),
        2 => {
            let x = &traceless[0];
            let sq = x.mul(x);
            let c = sq[(0, 0)].clone();
            (sq == ExactMatrix::scalar(x.rows(), c.clone()) && c < int(0)).then_some(CommutantType::C)
        }
        4 => quaternion_norms(&traceless).map(|_| CommutantType::H),
        _ => None,
    }
}

/// Traceless parts of a commutant basis that contains the identity direction.
fn traceless_part(basis: &[ExactMatrix]) -> Vec<ExactMatrix> {
    if basis.is_empty() {
        return Vec::new();
    }
    let dim = basis[0].rows();
    let nn = int(dim as i64);
    let stripped: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            let t = b.trace() / &nn;
            b.sub(&ExactMatrix::scalar(dim, t)).vectorize()
        })
        .collect();
    crate::linalg::span_basis(&stripped, dim * dim).into_iter().map(|v| ExactMatrix::from_vectorized(dim, dim, &v)).collect()
}

/// Gram matrix `B` with `Y_aY_b + Y_bY_a = −2B_ab·Id`, when the traceless
/// elements span a definite quaternion algebra.
fn quaternion_norms(traceless: &[ExactMatrix]) -> Option<ExactMatrix> {
    if traceless.len() != 3 {
        return None;
    }
    let dim = traceless[0].rows();
    let mut b = ExactMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let ac = traceless[i].anticommutator(&traceless[j]);
            let c = &ac[(0, 0)] / int(-2);
            if ac != ExactMatrix::scalar(dim, &c * int(-2)) {
                return None;
            }
            b[(i, j)] = c;
        }
    }
    // Sylvester: leading minors positive.
    let m1 = b[(0, 0)].clone();
    let m2 = &b[(0, 0)] * &b[(1, 1)] - &b[(0, 1)] * &b[(1, 0)];
    let m3 = crate::polyvector::determinant(&b);
    (m1 > int(0) && m2 > int(0) && m3 > int(0)).then_some(b)
}

/// Hypercomplex structure `J_1, J_2, J_3 = J_1J_2` commuting with a module.
#[derive(Clone, Debug, PartialEq)]
pub struct HypercomplexStructure {
    pub j1: ExactMatrix,
    pub j2: ExactMatrix,
    pub j3: ExactMatrix,
}

/// Small integer combinations of `basis` with a rational-square norm under
/// `norm`; searched in a fixed order.
fn find_unit<F>(basis: &[ExactMatrix], norm: F) -> Option<ExactMatrix>
where
    F: Fn(&ExactMatrix) -> Option<Rational>,
{
    let k = basis.len();
    let range = [0i64, 1, -1, 2, -2, 3, -3];
    let total = range.len().pow(k as u32);
    for code in 1..total {
        let mut c = code;
        let mut x = ExactMatrix::zeros(basis[0].rows(), basis[0].cols());
        for b in basis {
            let coef = range[c % range.len()];
            c /= range.len();
            if coef != 0 {
                x = x.add(&b.scale(&int(coef)));
            }
        }
        if let Some(nq) = norm(&x) {
            if let Some(r) = rational_sqrt(&nq) {
                if r != int(0) {
                    return Some(x.scale(&r.recip()));
                }
            }
        }
    }
    None
}

/// Finds a hypercomplex structure spanning the traceless part of the
/// commutant when the commutant is quaternionic.
pub fn find_hypercomplex(rep: &CliffordRep) -> Option<HypercomplexStructure> {
    let basis = rep.commutant();
    if classify_commutant(&basis) != Some(CommutantType::H) {
        return None;
    }
    let traceless = traceless_part(&basis);
    let dim = rep.dim;
    let norm = |x: &ExactMatrix| -> Option<Rational> {
        let sq = x.mul(x);
        let c = -sq[(0, 0)].clone();
        (sq == ExactMatrix::scalar(dim, -c.clone())).then_some(c)
    };
    let j1 = find_unit(&traceless, norm)?;
    // Traceless elements orthogonal to J1: anticommuting with it.
    let orth: Vec<ExactMatrix> = {
        let mut sys = SparseSystem::<Rational>::new(3);
        let acs: Vec<Rational> = traceless.iter().map(|t| j1.anticommutator(t)[(0, 0)].clone()).collect();
        sys.add_equation(acs.into_iter().enumerate());
        sys.kernel()
            .into_iter()
            .map(|v| v.iter().zip(&traceless).fold(ExactMatrix::zeros(dim, dim), |acc, (c, t)| acc.add(&t.scale(c))))
            .collect()
    };
    let j2 = find_unit(&orth, norm)?;
    let j3 = j1.mul(&j2);
    Some(HypercomplexStructure { j1, j2, j3 })
}

impl HypercomplexStructure {
    /// `J_a² = −Id`, `J_3 = J_1J_2`, `J_1J_2 = −J_2J_1`, and each `J_a`
    /// commutes with every generator.
    pub fn verify(&self, rep: &CliffordRep) -> bool {
        let minus = rep.identity().neg();
        let js = [&self.j1, &self.j2, &self.j3];
        js.iter().all(|j| j.mul(j) == minus)
            && self.j3 == self.j1.mul(&self.j2)
            && self.j1.anticommutator(&self.j2).is_zero()
            && js.iter().all(|j| rep.generators.iter().all(|g| j.commutator(g).is_zero()))
    }
}

/// Result of checking `e_ie_0 ↦ e_i`, `e_ie_j ↦ e_ie_j` as an algebra
/// isomorphism `Cℓ⁰(p+1,q) → Cℓ(p,q)`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EvenIsoReport {
    pub base: Signature,
    pub cone: Signature,
    /// Pairs `(i, j)` whose relations were checked, including `i = j`.
    pub relations_checked: usize,
    /// `2^n`, the common dimension of `Cℓ⁰(p+1,q)` and `Cℓ(p,q)`.
    pub algebra_dim: usize,
    /// Rank of the `2^n` even monomials as operators on the cone module.
    pub even_span_in_cone: usize,
    /// Rank of the `2^n` monomials on the irreducible base module: `2^n`,
    /// or `2^(n-1)` when the algebra is a sum of two simple ideals.
    pub span_in_base: usize,
    /// Assignment in readable form, e.g. `"e1e0 -> e1"`.
    pub assignment: Vec<String>,
}

/// Verifies the even-subalgebra isomorphism on generator matrices.
///
/// The cone's generator 0 is taken as the radial direction; cone generator
/// `i + 1` corresponds to base generator `i`.
pub fn cone_even_iso(base: &CliffordRep, cone: &CliffordRep) -> Result<EvenIsoReport> {
    let (bs, cs) = (base.signature, cone.signature);
    if cs != bs.cone() {
        return Err(Error::Precondition(format!("{cs} is not the cone signature of {bs}")));
    }
    if cs.eta(0) != 1 {
        return Err(Error::Precondition("cone generator 0 must have positive norm".into()));
    }
    let n = bs.n();
    let g0 = &cone.generators[0];
    let images: Vec<ExactMatrix> = (0..n).map(|i| cone.generators[i + 1].mul(g0)).collect();
    check_clifford_relations(&images, bs, cone.dim).map_err(|e| Error::RelationMismatch(format!("image of e_i e_0: {e}")))?;
    check_clifford_relations(&base.generators, bs, base.dim)?;
    let mut relations = n * (n + 1) / 2;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let lhs = cone.generators[i + 1].mul(&cone.generators[j + 1]);
            if lhs != images[i].mul(&images[j]) {
                return Err(Error::RelationMismatch(format!("e{}e{} -> e{}e{}", i + 1, j + 1, i + 1, j + 1)));
            }
            relations += 1;
        }
    }
    let monomial_rank = |gens: &[ExactMatrix], dim: usize| -> usize {
        let rows: Vec<Vec<Rational>> = (0..1usize << n)
            .map(|mask| {
                let idx: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
                idx.iter().fold(ExactMatrix::identity(dim), |acc, &i| acc.mul(&gens[i])).vectorize()
            })
            .collect();
        rank(&Matrix::from_rows(rows))
    };
    let assignment = (0..n).map(|i| format!("e{}e0 -> e{}", i + 1, i + 1)).collect();
    Ok(EvenIsoReport {
        base: bs,
        cone: cs,
        relations_checked: relations,
        algebra_dim: 1 << n,
        even_span_in_cone: monomial_rank(&images, cone.dim),
        span_in_base: monomial_rank(&base.generators, base.dim),
        assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn small_examples() {
        let r = build_rep(sig(1, 0)).unwrap();
        assert_eq!(r.dim, 2);
        assert_eq!(r.generators[0].mul(&r.generators[0]), r.identity().neg());
        let r = build_rep(sig(0, 1)).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.generators[0], ExactMatrix::from_int_rows(&[&[1]]));
        assert_eq!(build_rep(sig(2, 3)).unwrap().dim, 4);
        assert_eq!(build_rep(sig(4, 5)).unwrap().dim, 16);
    }

    #[test]
    fn relations_hold_up_to_nine() {
        for s in Signature::all_up_to(9) {
            let r = build_rep(s).unwrap();
            assert_eq!(r.generators.len(), s.n());
            r.check_relations().unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }

    #[test]
    fn commutant_matches_table() {
        // Brute-force commutant for every signature up to n = 7; the module is
        // irreducible exactly when the commutant is a division algebra.
        for s in Signature::all_up_to(7) {
            let r = build_rep(s).unwrap();
            let c = r.commutant();
            assert_eq!(classify_commutant(&c), Some(s.commutant_type()), "{s}");
        }
    }

    #[test]
    fn reducible_module_detected() {
        // Two copies of the (1,0) module: commutant M2(C), not a division algebra.
        let r = build_rep(sig(1, 0)).unwrap();
        let doubled: Vec<ExactMatrix> = r.generators.iter().map(|g| ExactMatrix::identity(2).kron(g)).collect();
        assert_eq!(classify_commutant(&commutant_of(&doubled, 4)), None);
    }

    #[test]
    fn gamma_examples() {
        let r = build_rep(sig(2, 3)).unwrap();
        let e1: Vec<Rational> = (0..5).map(|i| int((i == 0) as i64)).collect();
        assert_eq!(r.gamma_vector(&e1), r.generators[0]);
        assert!(r.gamma_vector(&[int(0), int(0), int(0), int(0), int(0)]).is_zero());
        let null = [int(1), int(0), int(1), int(0), int(0)];
        let g = r.gamma_vector(&null);
        assert!(g.mul(&g).is_zero());
        let b = Polyvector::basis(5, &[0, 1]);
        assert_eq!(r.gamma_polyvector(&b), r.generators[0].mul(&r.generators[1]));
        assert_eq!(r.gamma_polyvector(&Polyvector::scalar(5, int(3))), r.identity().scale(&int(3)));
    }

    #[test]
    fn volume_examples() {
        let r = build_rep(sig(0, 1)).unwrap();
        assert_eq!(r.volume_element(), r.generators[0]);
        let r = build_rep(sig(2, 0)).unwrap();
        let nu = r.volume_element();
        assert_eq!(nu.mul(&nu), r.identity().neg());
        let r = build_rep(sig(1, 1)).unwrap();
        let nu = r.volume_element();
        assert_eq!(nu.mul(&nu), r.identity());
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_rep(sig(3, 4)).unwrap(), build_rep(sig(3, 4)).unwrap());
    }

    #[test]
    fn even_iso_examples() {
        let rep = |p, q| build_rep(sig(p, q)).unwrap();
        let r = cone_even_iso(&rep(0, 1), &rep(1, 1)).unwrap();
        assert_eq!(r.algebra_dim, 2);
        assert_eq!(r.even_span_in_cone, 2);
        let r = cone_even_iso(&rep(2, 0), &rep(3, 0)).unwrap();
        assert_eq!(r.even_span_in_cone, 4);
        assert!(cone_even_iso(&rep(2, 0), &rep(2, 1)).is_err());
    }

    #[test]
    fn hypercomplex_presence() {
        for s in Signature::all_up_to(5) {
            let r = build_rep(s).unwrap();
            let h = find_hypercomplex(&r);
            assert_eq!(h.is_some(), s.commutant_type() == CommutantType::H, "{s}");
            if let Some(h) = h {
                assert!(h.verify(&r), "{s}");
            }
        }
    }
}
