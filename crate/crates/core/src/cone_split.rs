// SPDX-License-Identifier: Apache-2.0

//! Tensor decompositions of complex Clifford modules, semi-spinor splitting
//! of cone modules, invariant spinors of null-plane rotations, and the
//! volume-element parity.

use alloc::format;
use alloc::vec::Vec;

use crate::brackets::SpinorSubspace;
use crate::clifford::{classify_commutant, commutant_of, find_hypercomplex, CliffordRep};
use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel, rank};
use crate::matrix::{ExactMatrix, Matrix};
use crate::polyvector::Polyvector;
use crate::scalar::{int, GaussianRational, Rational};
use crate::signature::Signature;

type CMatrix = Matrix<GaussianRational>;

fn c(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(int(re), int(im))
}

fn pauli() -> [CMatrix; 3] {
    let m = |a: [[GaussianRational; 2]; 2]| {
        let [[a0, a1], [a2, a3]] = a;
        CMatrix::from_rows(alloc::vec![alloc::vec![a0, a1], alloc::vec![a2, a3]])
    };
    [
        m([[c(0, 0), c(1, 0)], [c(1, 0), c(0, 0)]]),
        m([[c(0, 0), c(0, -1)], [c(0, 1), c(0, 0)]]),
        m([[c(1, 0), c(0, 0)], [c(0, 0), c(-1, 0)]]),
    ]
}

fn kron_all(ms: &[CMatrix]) -> CMatrix {
    ms.iter().fold(CMatrix::identity(1), |acc, m| acc.kron(m))
}

/// Irreducible complex module of `Cℓ_n(C)` with generators squaring to `−Id`
/// (Jordan–Wigner strings times `i`).
pub fn complex_rep(n: usize) -> Vec<CMatrix> {
    let [x, y, z] = pauli();
    let id = CMatrix::identity(2);
    let m = n / 2;
    let i = GaussianRational::i();
    let mut gens = Vec::with_capacity(n);
    for k in 0..m {
        for a in [&x, &y] {
            let mut factors: Vec<CMatrix> = (0..k).map(|_| z.clone()).collect();
            factors.push(a.clone());
            factors.extend((k + 1..m).map(|_| id.clone()));
            gens.push(kron_all(&factors).scale(&i));
        }
    }
    if n % 2 == 1 {
        let factors: Vec<CMatrix> = (0..m).map(|_| z.clone()).collect();
        gens.push(kron_all(&factors).scale(&i));
    }
    gens
}

fn euclidean_relations(gens: &[CMatrix]) -> bool {
    let Some(first) = gens.first() else { return true };
    let minus2 = CMatrix::identity(first.rows()).scale(&c(-2, 0));
    (0..gens.len()).all(|a| {
        (a..gens.len()).all(|b| {
            let ac = gens[a].anticommutator(&gens[b]);
            if a == b {
                ac == minus2
            } else {
                ac.is_zero()
            }
        })
    })
}

fn product(gens: &[CMatrix], dim: usize) -> CMatrix {
    gens.iter().fold(CMatrix::identity(dim), |acc, g| acc.mul(g))
}

/// `±i` multiple of `m` squaring to `target·Id` (`target = ±1`), given `m² = ±Id`.
fn normalize_square(m: &CMatrix, target: i64) -> CMatrix {
    let id = CMatrix::identity(m.rows());
    if m.mul(m) == id.scale(&c(target, 0)) {
        m.clone()
    } else {
        m.scale(&GaussianRational::i())
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GradedTensorReport {
    pub n1: usize,
    pub n2: usize,
    /// True in the odd–odd case, where the graded product is used.
    pub graded: bool,
    pub factor_dims: (usize, usize),
    pub module_dim: usize,
    /// Dimension of the irreducible complex `Cℓ_{n1+n2}` module.
    pub expected_dim: usize,
    pub relations_ok: bool,
    pub sign_rule_ok: Option<bool>,
    pub xi_squares_to_minus_one: Option<bool>,
    pub eigenspace_dims: Option<(usize, usize)>,
}

impl GradedTensorReport {
    pub fn passed(&self) -> bool {
        let graded_ok = !self.graded
            || (self.sign_rule_ok == Some(true)
                && self.xi_squares_to_minus_one == Some(true)
                && matches!(self.eigenspace_dims, Some((a, b)) if a == b && a + b == self.module_dim)
                && self.module_dim == 2 * self.factor_dims.0 * self.factor_dims.1);
        self.relations_ok && self.module_dim == self.expected_dim && graded_ok
    }
}

/// Builds `Cℓ_{n1+n2}` from `Cℓ_{n1}` and `Cℓ_{n2}` over the Gaussian rationals.
///
/// If one factor is even its volume element gives an ungraded tensor
/// product; if both are odd the first module is doubled to carry a grading
/// operator `P` and `a ⊗̂ b` acts as `ã P^{|b|} ⊗ b`.
pub fn graded_tensor_check(n1: usize, n2: usize) -> Result<GradedTensorReport> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Precondition("both factors need n >= 1".into()));
    }
    let (g1, g2) = (complex_rep(n1), complex_rep(n2));
    let (d1, d2) = (g1[0].rows(), g2[0].rows());
    let expected_dim = complex_rep(n1 + n2)[0].rows();
    let mut report = GradedTensorReport {
        n1,
        n2,
        graded: n1 % 2 == 1 && n2 % 2 == 1,
        factor_dims: (d1, d2),
        module_dim: 0,
        expected_dim,
        relations_ok: false,
        sign_rule_ok: None,
        xi_squares_to_minus_one: None,
        eigenspace_dims: None,
    };
    let gens: Vec<CMatrix> = if n1 % 2 == 0 {
        let w1 = normalize_square(&product(&g1, d1), 1);
        let i2 = CMatrix::identity(d2);
        g1.iter().map(|e| e.kron(&i2)).chain(g2.iter().map(|f| w1.kron(f))).collect()
    } else if n2 % 2 == 0 {
        let w2 = normalize_square(&product(&g2, d2), 1);
        let i1 = CMatrix::identity(d1);
        g1.iter().map(|e| e.kron(&w2)).chain(g2.iter().map(|f| i1.kron(f))).collect()
    } else {
        let [x, _, z] = pauli();
        let lift_odd = |a: &CMatrix| x.kron(a);
        let lift_even = |a: &CMatrix| CMatrix::identity(2).kron(a);
        let p = z.kron(&CMatrix::identity(d1));
        let i2 = CMatrix::identity(d2);
        // Homogeneous generators with parity: (matrix on 2·S1, parity).
        let mut left: Vec<(CMatrix, usize)> = alloc::vec![(lift_even(&CMatrix::identity(d1)), 0)];
        left.extend(g1.iter().map(|e| (lift_odd(e), 1)));
        let mut right: Vec<(CMatrix, usize)> = alloc::vec![(i2.clone(), 0)];
        right.extend(g2.iter().map(|f| (f.clone(), 1)));
        let op = |a: &(CMatrix, usize), b: &(CMatrix, usize)| -> CMatrix {
            let pa = if b.1 == 1 { a.0.mul(&p) } else { a.0.clone() };
            pa.kron(&b.0)
        };
        let mut sign_ok = true;
        for a in &left {
            for b in &right {
                for cc in &left {
                    for d in &right {
                        let lhs = op(a, b).mul(&op(cc, d));
                        let ac = (a.0.mul(&cc.0), (a.1 + cc.1) % 2);
                        let bd = (b.0.mul(&d.0), (b.1 + d.1) % 2);
                        let sign = if b.1 * cc.1 == 1 { c(-1, 0) } else { c(1, 0) };
                        if lhs != op(&ac, &bd).scale(&sign) {
                            sign_ok = false;
                        }
                    }
                }
            }
        }
        report.sign_rule_ok = Some(sign_ok);
        let mut gens: Vec<CMatrix> = g1.iter().map(|e| op(&(lift_odd(e), 1), &right[0])).collect();
        gens.extend(g2.iter().map(|f| op(&left[0], &(f.clone(), 1))));
        gens
    };
    let dim = gens[0].rows();
    report.module_dim = dim;
    report.relations_ok = euclidean_relations(&gens);
    if report.graded {
        let xi = normalize_square(&product(&gens, dim), -1);
        let id = CMatrix::identity(dim);
        let even_central = (0..gens.len()).all(|a| (a + 1..gens.len()).all(|b| xi.commutator(&gens[a].mul(&gens[b])).is_zero()));
        report.xi_squares_to_minus_one = Some(xi.mul(&xi) == id.neg() && even_central);
        let i = id.scale(&GaussianRational::i());
        let plus = kernel(&xi.sub(&i)).cols();
        let minus = kernel(&xi.add(&i)).cols();
        report.eigenspace_dims = Some((plus, minus));
    }
    Ok(report)
}

/// Joint kernel of `γ_b` over the given bivectors.
pub fn invariant_spinors(rep: &CliffordRep, bivectors: &[Polyvector<Rational>]) -> Result<SpinorSubspace> {
    if bivectors.iter().any(|b| b.k != 2 || b.n != rep.n()) {
        return Err(Error::Precondition("expected degree-2 polyvectors on the rep's space".into()));
    }
    if bivectors.is_empty() {
        return Ok(SpinorSubspace::full(rep.dim));
    }
    let stacked = bivectors.iter().map(|b| rep.gamma_polyvector(b)).reduce(|acc, m| acc.vstack(&m)).unwrap();
    SpinorSubspace::from_basis(kernel(&stacked))
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct InvariantReport {
    pub signature: Signature,
    pub spinor_dim: usize,
    pub invariant_dim: usize,
    /// Same count with the null vector `p` replaced by `2p`.
    pub rescaled_dim: usize,
    /// Whether the invariant space coincides with `ker γ_p`.
    pub equals_kernel_of_p: bool,
}

/// Lorentzian signature: `𝔢 = p ∧ E` with `p = f + e_0`, `q = (e_0 − f)/2`,
/// `f` the (first) negative direction when `q = 1`, otherwise the roles of
/// the single positive direction and a negative one are used the same way.
pub fn null_plane_invariants(rep: &CliffordRep) -> Result<InvariantReport> {
    let sig = rep.signature;
    if sig.is_definite() || (sig.p != 1 && sig.q != 1) {
        return Err(Error::Precondition(format!("{sig} is not Lorentzian")));
    }
    let n = sig.n();
    if n < 3 {
        return Err(Error::Precondition("need n >= 3 so that E is nonzero".into()));
    }
    let (e0, f) = (0usize, sig.p);
    let unit = |i: usize| -> Vec<Rational> { (0..n).map(|j| int((i == j) as i64)).collect() };
    let p: Vec<Rational> = (0..n).map(|j| int((j == e0 || j == f) as i64)).collect();
    let half = Rational::new(1.into(), 2.into());
    let q: Vec<Rational> = (0..n)
        .map(|j| {
            if j == e0 {
                half.clone()
            } else if j == f {
                -half.clone()
            } else {
                int(0)
            }
        })
        .collect();
    debug_assert_eq!(sig.metric(&p, &q), int(1));
    debug_assert_eq!(sig.metric(&p, &p), int(0));
    let es: Vec<usize> = (0..n).filter(|&j| j != e0 && j != f).collect();
    let bivs = |scale: i64| -> Vec<Polyvector<Rational>> {
        let ps: Vec<Rational> = p.iter().map(|x| x * int(scale)).collect();
        es.iter().map(|&j| Polyvector::wedge(n, &[ps.clone(), unit(j)])).collect()
    };
    let inv = invariant_spinors(rep, &bivs(1))?;
    let rescaled = invariant_spinors(rep, &bivs(2))?;
    let ker_p = SpinorSubspace::from_basis(kernel(&rep.gamma_vector(&p)))?;
    Ok(InvariantReport {
        signature: sig,
        spinor_dim: rep.dim,
        invariant_dim: inv.dim(),
        rescaled_dim: rescaled.dim(),
        equals_kernel_of_p: inv.dim() == ker_p.dim() && inv.contains_subspace(&ker_p),
    })
}

/// Lorentzian signatures `(m,1)` and `(1,m)` with `3 ≤ n ≤ max_n`.
pub fn lorentzian_signatures(max_n: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        out.push(Signature::new(n - 1, 1).expect("n >= 3"));
        out.push(Signature::new(1, n - 1).expect("n >= 3"));
    }
    out
}

/// Residue list of base signatures whose cone module splits, as stated for
/// the cone lemma: `s ≡ 1, 3, 7 (mod 8)`.
pub fn stated_split(base: Signature) -> bool {
    matches!(base.s_mod8(), 1 | 3 | 7)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemispinorReport {
    pub base: Signature,
    pub cone: Signature,
    pub cone_dim: usize,
    pub base_dim: usize,
    pub even_commutant_dim: usize,
    /// Reducibility of the cone module under its even subalgebra, decided
    /// from the commutant.
    pub computed_split: bool,
    pub stated_split: bool,
    /// `(P+, P−)` when the module splits.
    pub projectors: Option<(ExactMatrix, ExactMatrix)>,
}

impl SemispinorReport {
    pub fn agrees(&self) -> bool {
        self.computed_split == self.stated_split
    }
}

/// Decides whether the cone module `S_{p+1,q}` splits under `Cℓ⁰(p+1,q)`
/// and, if so, builds the two projectors.
pub fn semispinor_decision(cone: &CliffordRep) -> Result<SemispinorReport> {
    let cs = cone.signature;
    if cs.p == 0 || cs.n() < 2 {
        return Err(Error::Precondition(format!("{cs} is not a cone signature")));
    }
    let base = Signature::new(cs.p - 1, cs.q)?;
    let g0 = &cone.generators[0];
    let even: Vec<ExactMatrix> = cone.generators[1..].iter().map(|g| g.mul(g0)).collect();
    let comm = commutant_of(&even, cone.dim);
    let computed_split = classify_commutant(&comm).is_none();
    let projectors = if computed_split { Some(split_projectors(cone, &even, &comm)?) } else { None };
    Ok(SemispinorReport {
        base,
        cone: cs,
        cone_dim: cone.dim,
        base_dim: base.spinor_dim(),
        even_commutant_dim: comm.len(),
        computed_split,
        stated_split: stated_split(base),
        projectors,
    })
}

/// Projectors onto two complementary invariant halves of the cone module.
///
/// Uses `(Id ± ν)/2` when `ν² = Id`, `(Id ± νJ)/2` with `J` from a
/// hypercomplex structure when `ν² = −Id`, and otherwise images of
/// half-rank elements of the even commutant `comm`.
fn split_projectors(cone: &CliffordRep, even: &[ExactMatrix], comm: &[ExactMatrix]) -> Result<(ExactMatrix, ExactMatrix)> {
    let dim = cone.dim;
    let id = ExactMatrix::identity(dim);
    let half = Rational::new(1.into(), 2.into());
    let check = |pp: ExactMatrix| -> Option<(ExactMatrix, ExactMatrix)> {
        let pm = id.sub(&pp);
        let ok =
            [&pp, &pm].iter().all(|p| rank(p) * 2 == dim && p.mul(p) == **p && even.iter().all(|e| e.commutator(p).is_zero()));
        ok.then_some((pp, pm))
    };
    let nu = cone.volume_element();
    let involution = if nu.mul(&nu) == id { Some(nu) } else { find_hypercomplex(cone).map(|j| nu.mul(&j.j1)) };
    if let Some(y) = involution {
        if let Some(r) = check(id.add(&y).scale(&half)) {
            return Ok(r);
        }
    }
    // Images of rank-N/2 elements of the even commutant are invariant halves.
    let range = [0i64, 1, -1, 2, -2];
    let mut halves: Vec<SpinorSubspace> = Vec::new();
    for code in 1..range.len().pow(comm.len() as u32) {
        let mut c = code;
        let mut x = ExactMatrix::zeros(dim, dim);
        for b in comm {
            let k = range[c % range.len()];
            c /= range.len();
            if k != 0 {
                x = x.add(&b.scale(&int(k)));
            }
        }
        if 2 * rank(&x) != dim {
            continue;
        }
        let u = SpinorSubspace::span(dim, &x.columns());
        if let Some(w) = halves.iter().find(|w| u.sum(w).dim() == dim) {
            // P = [U W] diag(I, 0) [U W]⁻¹
            let t = u.basis().hstack(w.basis());
            let tinv = inverse(&t).expect("complementary halves");
            let mut d = ExactMatrix::zeros(dim, dim);
            for k in 0..u.dim() {
                d[(k, k)] = int(1);
            }
            if let Some(r) = check(t.mul(&d).mul(&tinv)) {
                return Ok(r);
            }
        }
        halves.push(u);
    }
    Err(Error::ConstructionFailed("could not split the cone module under its even part".into()))
}

/// Projectors `(P+, P−)` or `None` when the cone module stays irreducible.
///
/// A disagreement between the computed decision and the stated residue
/// list is returned as [`Error::Falsified`].
pub fn semispinor_projectors(cone: &CliffordRep) -> Result<Option<(ExactMatrix, ExactMatrix)>> {
    let r = semispinor_decision(cone)?;
    if !r.agrees() {
        return Err(Error::Falsified(format!(
            "base {} (s mod 8 = {}): computed split = {}, residue list says {}",
            r.base,
            r.base.s_mod8(),
            r.computed_split,
            r.stated_split
        )));
    }
    Ok(r.projectors)
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VolumeFlipReport {
    pub n: usize,
    pub commutes: Vec<bool>,
    pub anticommutes: Vec<bool>,
    /// `ν² = ±Id`.
    pub nu_square: i8,
    /// `(−1)^{n+1}`: the factor applied to the Killing number.
    pub killing_factor: i8,
}

impl VolumeFlipReport {
    pub fn consistent(&self) -> bool {
        if self.n % 2 == 0 {
            self.anticommutes.iter().all(|&b| b) && self.killing_factor == -1
        } else {
            self.commutes.iter().all(|&b| b) && self.killing_factor == 1
        }
    }
}

pub fn volume_flip_degree(rep: &CliffordRep) -> VolumeFlipReport {
    let nu = rep.volume_element();
    let sq = nu.mul(&nu);
    VolumeFlipReport {
        n: rep.n(),
        commutes: rep.generators.iter().map(|g| nu.commutator(g).is_zero()).collect(),
        anticommutes: rep.generators.iter().map(|g| nu.anticommutator(g).is_zero()).collect(),
        nu_square: if sq == rep.identity() { 1 } else { -1 },
        killing_factor: if rep.n() % 2 == 0 { -1 } else { 1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_rep;
    use crate::polyvector::blades;

    fn rep(p: usize, q: usize) -> CliffordRep {
        build_rep(Signature::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn complex_reps() {
        for n in 1..=6 {
            let g = complex_rep(n);
            assert_eq!(g.len(), n);
            assert_eq!(g[0].rows(), 1 << (n / 2));
            assert!(euclidean_relations(&g));
        }
    }

    #[test]
    fn tensor_cases() {
        let r = graded_tensor_check(1, 1).unwrap();
        assert!(r.graded && r.passed(), "{r:?}");
        assert_eq!(r.module_dim, 2);
        let r = graded_tensor_check(2, 1).unwrap();
        assert!(!r.graded && r.passed(), "{r:?}");
        for (a, b) in [(1, 3), (3, 3), (2, 2), (1, 4), (3, 2)] {
            assert!(graded_tensor_check(a, b).unwrap().passed(), "{a},{b}");
        }
    }

    #[test]
    fn invariants() {
        let r = rep(3, 1);
        assert_eq!(invariant_spinors(&r, &[]).unwrap().dim(), r.dim);
        for s in lorentzian_signatures(6) {
            let r = build_rep(s).unwrap();
            let rep = null_plane_invariants(&r).unwrap();
            assert_eq!(rep.invariant_dim * 2, r.dim, "{s}");
            assert_eq!(rep.rescaled_dim, rep.invariant_dim);
            assert!(rep.equals_kernel_of_p);
        }
        for p in 2..=4 {
            let r = rep(p, 0);
            let all: Vec<Polyvector<Rational>> = blades(p, 2).iter().map(|b| Polyvector::basis(p, b)).collect();
            assert_eq!(invariant_spinors(&r, &all).unwrap().dim(), 0);
        }
    }

    #[test]
    fn semispinor_cases() {
        // Base (2,3): s ≡ 7.
        let r = semispinor_decision(&rep(3, 3)).unwrap();
        assert!(r.computed_split && r.agrees());
        // Base (2,0): s ≡ 2, cone (3,0) stays irreducible.
        let r = semispinor_decision(&rep(3, 0)).unwrap();
        assert!(!r.computed_split && r.agrees());
        let (pp, pm) = semispinor_projectors(&rep(4, 0)).unwrap().unwrap();
        assert_eq!(pp.add(&pm), ExactMatrix::identity(8));
        assert!(pp.mul(&pm).is_zero());
    }

    #[test]
    fn volume_flip() {
        for s in Signature::all_up_to(5) {
            assert!(volume_flip_degree(&build_rep(s).unwrap()).consistent(), "{s}");
        }
        let r = volume_flip_degree(&rep(2, 0));
        assert_eq!(r.nu_square, -1);
    }
}
