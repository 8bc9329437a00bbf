// SPDX-License-Identifier: Apache-2.0

//! Constructions and seeded searches around the `¾N` and `½N` bounds for
//! surjectivity of `Π`, and the isotropic-subspace examples in signatures
//! (2,3) and (4,5).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::admissible::BilinearForm;
use crate::brackets::{basis_matrix, beta_form, null_kernel, obstruction_vectors, pi_image, SpinorSubspace};
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::linalg::{complement, inverse, rank_of_vectors, SparseSystem};
use crate::matrix::ExactMatrix;
use crate::rng::{independent_vectors, int_vector, null_vector, trial_rng, SeededRng};
use crate::scalar::{int, rational_sqrt, Rational, Scalar};

fn pair(m: &ExactMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    let my = m.mul_vec(y);
    x.iter().zip(&my).fold(int(0), |acc, (a, b)| acc + a * b)
}

fn lin_comb(coeffs: &[Rational], vs: &[Vec<Rational>]) -> Vec<Rational> {
    let len = vs.first().map_or(0, |v| v.len());
    let mut out = alloc::vec![int(0); len];
    for (c, v) in coeffs.iter().zip(vs) {
        if !Scalar::is_zero(c) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
    }
    out
}

/// Vectors of `span(space)` that are `form`-orthogonal to every vector in `to`.
fn orthogonal_within(form: &ExactMatrix, space: &[Vec<Rational>], to: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut sys = SparseSystem::new(space.len());
    for t in to {
        sys.add_equation(space.iter().enumerate().map(|(i, u)| (i, pair(form, u, t))));
    }
    sys.kernel().iter().map(|c| lin_comb(c, space)).collect()
}

/// Rational isotropic vector of a symmetric form on `span(space)`, found by
/// diagonalizing and searching small integer combinations.
fn symmetric_isotropic(form: &ExactMatrix, space: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    if let Some(x) = space.iter().find(|u| Scalar::is_zero(&pair(form, u, u))) {
        return Some(x.clone());
    }
    // Orthogonal basis by Gram–Schmidt with the first non-isotropic pivot.
    let mut rest: Vec<Vec<Rational>> = space.to_vec();
    let mut diag: Vec<(Vec<Rational>, Rational)> = Vec::new();
    while !rest.is_empty() {
        let idx = rest.iter().position(|u| !Scalar::is_zero(&pair(form, u, u)));
        let Some(idx) = idx else {
            // Every remaining vector is isotropic.
            return rest.into_iter().next();
        };
        let u = rest.remove(idx);
        let d = pair(form, &u, &u);
        rest = rest
            .into_iter()
            .map(|w| {
                let c = pair(form, &u, &w) / &d;
                w.iter().zip(&u).map(|(a, b)| a - &c * b).collect::<Vec<Rational>>()
            })
            .filter(|w| w.iter().any(|x| !Scalar::is_zero(x)))
            .collect();
        if rest.iter().any(|w| Scalar::is_zero(&pair(form, w, w))) {
            let w = rest.iter().find(|w| Scalar::is_zero(&pair(form, w, w))).unwrap();
            return Some(w.clone());
        }
        diag.push((u, d));
    }
    let m = diag.len();
    // Two coordinates: d_i a² + d_j b² = 0 needs −d_i/d_j to be a square.
    for i in 0..m {
        for j in i + 1..m {
            if let Some(r) = rational_sqrt(&(-(&diag[i].1 / &diag[j].1))) {
                return Some(lin_comb(&[int(1), r], &[diag[i].0.clone(), diag[j].0.clone()]));
            }
        }
    }
    // Up to four coordinates with small integer weights.
    let range: [i64; 7] = [1, 2, 3, 4, 5, 6, 7];
    for k in 3..=m.min(4) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let total = range.len().pow(k as u32);
            for code in 0..total {
                let mut c = code;
                let w: Vec<i64> = (0..k)
                    .map(|_| {
                        let x = range[c % range.len()];
                        c /= range.len();
                        x
                    })
                    .collect();
                let val = idx.iter().zip(&w).fold(int(0), |acc, (&i, &x)| acc + &diag[i].1 * int(x * x));
                if Scalar::is_zero(&val) {
                    let coeffs: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
                    let vs: Vec<Vec<Rational>> = idx.iter().map(|&i| diag[i].0.clone()).collect();
                    return Some(lin_comb(&coeffs, &vs));
                }
            }
            // next combination
            let mut p = k;
            while p > 0 && idx[p - 1] == m - k + p - 1 {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            idx[p - 1] += 1;
            for t in p..k {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    None
}

/// Isotropic subspace of dimension `target` for a symmetric or skew form on
/// `span(space)`, built by splitting off hyperbolic pairs.
pub fn isotropic_subspace(form: &ExactMatrix, space: &[Vec<Rational>], target: usize) -> Result<Vec<Vec<Rational>>> {
    let skew = form.transpose() == form.neg();
    if !skew && form.transpose() != *form {
        return Err(Error::Precondition("form is neither symmetric nor skew".into()));
    }
    let mut found: Vec<Vec<Rational>> = Vec::new();
    let mut current: Vec<Vec<Rational>> = space.to_vec();
    while found.len() < target {
        // Radical vectors of the current space are isotropic and orthogonal
        // to everything; use them first.
        let radical = orthogonal_within(form, &current, &current);
        let x = if let Some(r) = radical.into_iter().next() {
            r
        } else if skew {
            match current.first() {
                Some(x) => x.clone(),
                None => break,
            }
        } else {
            match symmetric_isotropic(form, &current) {
                Some(x) => x,
                None => break,
            }
        };
        let y = current.iter().find(|u| !Scalar::is_zero(&pair(form, &x, u))).cloned();
        let mut to = alloc::vec![x.clone()];
        to.extend(y);
        let next = orthogonal_within(form, &current, &to);
        found.push(x.clone());
        // Drop x itself when it is in the radical, so the space shrinks.
        let mut reduced: Vec<Vec<Rational>> = Vec::new();
        let mut span_with_found = found.clone();
        for w in next {
            span_with_found.push(w.clone());
            if rank_of_vectors(&span_with_found) == span_with_found.len() {
                reduced.push(w);
            } else {
                span_with_found.pop();
            }
        }
        current = reduced;
    }
    if found.len() < target {
        return Err(Error::ConstructionFailed(format!(
            "found an isotropic subspace of dimension {} of the required {target}",
            found.len()
        )));
    }
    Ok(found)
}

/// `S0 = L_v ⊕ W` of dimension `3N/4` with `γ_v S0 ⊆ S0^⊥`.
///
/// `W` is an `N/4`-dimensional isotropic subspace of `β = h(γ_v·,·)` inside a
/// complement of `L_v`; `L_v` is the radical of `β`.
pub fn extremal_obstructed_subspace(rep: &CliffordRep, h: &BilinearForm, v: &[Rational]) -> Result<SpinorSubspace> {
    let n = rep.dim;
    if n % 4 != 0 {
        return Err(Error::Precondition(format!("3N/4 is not an integer for N = {n}")));
    }
    let lv = null_kernel(rep, h, v)?;
    let beta = beta_form(rep, h, v)?;
    let comp = complement(lv.basis()).columns();
    let w = isotropic_subspace(&beta.beta, &comp, n / 4)?;
    let s0 = lv.sum(&SpinorSubspace::span(n, &w));
    if s0.dim() != 3 * n / 4 {
        return Err(Error::ConstructionFailed(format!("dimension {} instead of {}", s0.dim(), 3 * n / 4)));
    }
    let obs = obstruction_vectors(rep, h, &s0)?;
    let mut with_v = obs.clone();
    with_v.push(v.to_vec());
    if obs.is_empty() || rank_of_vectors(&with_v) != obs.len() {
        return Err(Error::Falsified("constructed subspace is not obstructed by v".into()));
    }
    Ok(s0)
}

/// Outcome of one random-subspace trial.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepCounterexample {
    pub trial: u64,
    #[cfg_attr(feature = "serde", serde(serialize_with = "crate::scalar::serde_strings::vectors"))]
    pub basis: Vec<Vec<Rational>>,
    #[cfg_attr(feature = "serde", serde(serialize_with = "crate::scalar::serde_strings::vectors"))]
    pub obstruction: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepReport {
    pub spinor_dim: usize,
    pub subspace_dim: usize,
    pub trials: u64,
    /// Whether `d` exceeds the bound (`3N/4`, or `N/2` when definite), so
    /// that the theorem predicts surjectivity.
    pub covered: bool,
    pub obstructed_trials: u64,
    /// Obstructed subspaces with `d > 3N/4`; must stay empty.
    pub bound_violations: u64,
    pub counterexample: Option<SweepCounterexample>,
}

impl SweepReport {
    /// False only when the theorem's hypothesis holds and a trial failed.
    pub fn consistent(&self) -> bool {
        self.bound_violations == 0 && !(self.covered && self.counterexample.is_some())
    }
}

/// Threshold below or at which surjectivity is not guaranteed.
pub fn surjectivity_threshold(rep: &CliffordRep) -> usize {
    if rep.signature.is_definite() {
        rep.dim / 2
    } else {
        3 * rep.dim / 4
    }
}

/// Random `d`-dimensional subspaces; records the first obstructed one.
pub fn random_surjectivity_sweep(rep: &CliffordRep, h: &BilinearForm, d: usize, trials: u64, seed: u64) -> Result<SweepReport> {
    if d > rep.dim {
        return Err(Error::Precondition(format!("d = {d} exceeds N = {}", rep.dim)));
    }
    let mut report = SweepReport {
        spinor_dim: rep.dim,
        subspace_dim: d,
        trials,
        covered: 4 * d > 4 * surjectivity_threshold(rep),
        obstructed_trials: 0,
        bound_violations: 0,
        counterexample: None,
    };
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let basis = independent_vectors(&mut rng, rep.dim, d, 3);
        let s0 = SpinorSubspace::span(rep.dim, &basis);
        let obs = obstruction_vectors(rep, h, &s0)?;
        if !obs.is_empty() {
            report.obstructed_trials += 1;
            if 4 * d > 3 * rep.dim {
                report.bound_violations += 1;
            }
            if report.counterexample.is_none() {
                report.counterexample = Some(SweepCounterexample { trial, basis, obstruction: obs });
            }
        }
    }
    Ok(report)
}

/// Random Lagrangian subspace for a nondegenerate form with a known pair of
/// complementary Lagrangians `l`, `l2`.
///
/// Parametrizes the Lagrangians transverse to `l2` as graphs of maps
/// `A: l → l2`; the isotropy condition says `P·A` is `σ`-antisymmetric,
/// where `P` is the pairing `h(l_i, l2_j)`.
pub fn random_lagrangian(
    h: &BilinearForm,
    l: &SpinorSubspace,
    l2: &SpinorSubspace,
    rng: &mut SeededRng,
) -> Result<SpinorSubspace> {
    let m = l.dim();
    let p = l.basis().transpose().mul(&h.h).mul(l2.basis());
    let pinv = inverse(&p).ok_or_else(|| Error::Precondition("Lagrangians are not complementary".into()))?;
    let mut c = ExactMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let x = int_vector(rng, 1, 3).pop().unwrap();
            if i == j {
                if h.sigma < 0 {
                    c[(i, i)] = x;
                }
            } else {
                c[(j, i)] = if h.sigma > 0 { -x.clone() } else { x.clone() };
                c[(i, j)] = x;
            }
        }
    }
    let a = pinv.mul(&c);
    let graph = l.basis().add(&l2.basis().mul(&a));
    let s = SpinorSubspace::from_basis(graph)?;
    if !s.is_isotropic(h) {
        return Err(Error::Falsified("graph Lagrangian is not isotropic".into()));
    }
    Ok(s)
}

/// Pair of complementary Lagrangians `L_u`, `L_v` from seeded null vectors
/// with `g(u,v) ≠ 0`.
pub fn lagrangian_pair(rep: &CliffordRep, h: &BilinearForm, rng: &mut SeededRng) -> Result<(SpinorSubspace, SpinorSubspace)> {
    let sig = rep.signature;
    let v = null_vector(rng, sig);
    loop {
        let u = null_vector(rng, sig);
        if !Scalar::is_zero(&sig.metric(&u, &v)) {
            return Ok((null_kernel(rep, h, &v)?, null_kernel(rep, h, &u)?));
        }
    }
}

/// `dim [S0,S0]_1` for an isotropic `S0`; errors when `S0` is not isotropic.
pub fn isotropic_image_dim(rep: &CliffordRep, h: &BilinearForm, s0: &SpinorSubspace) -> Result<usize> {
    if !s0.is_isotropic(h) {
        return Err(Error::Precondition("subspace is not h-isotropic".into()));
    }
    Ok(pi_image(rep, h, s0, s0)?.len())
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IsotropicScan {
    pub trials: u64,
    pub subspace_dim: usize,
    /// `dim [S0,S0]_1` ↦ number of sampled subspaces.
    pub histogram: BTreeMap<usize, u64>,
}

/// Image dimensions over random Lagrangians of a split form.
pub fn isotropic_scan(rep: &CliffordRep, h: &BilinearForm, trials: u64, seed: u64) -> Result<IsotropicScan> {
    let mut histogram = BTreeMap::new();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let (l, l2) = lagrangian_pair(rep, h, &mut rng)?;
        let s0 = random_lagrangian(h, &l, &l2, &mut rng)?;
        *histogram.entry(isotropic_image_dim(rep, h, &s0)?).or_insert(0) += 1;
    }
    Ok(IsotropicScan { trials, subspace_dim: rep.dim / 2, histogram })
}

/// Spin(2,3) scan with the (unique type) `τ = +1` form.
pub fn spin23_isotropic_scan(trials: u64, seed: u64) -> Result<IsotropicScan> {
    let (rep, h) = tau_plus_setup(2, 3)?;
    isotropic_scan(&rep, &h, trials, seed)
}

fn tau_plus_setup(p: usize, q: usize) -> Result<(CliffordRep, BilinearForm)> {
    let rep = crate::clifford::build_rep(crate::signature::Signature::new(p, q)?)?;
    let h = crate::admissible::form_of_type(&rep, 1)?
        .ok_or_else(|| Error::ConstructionFailed(format!("no tau=+1 form for ({p},{q})")))?;
    Ok((rep, h))
}

/// Exact verification of a Spin(4,5) witness.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WitnessReport {
    pub subspace_dim: usize,
    pub isotropic: bool,
    pub image_dim: usize,
    #[cfg_attr(feature = "serde", serde(serialize_with = "crate::scalar::serde_strings::vectors"))]
    pub image_basis: Vec<Vec<Rational>>,
}

impl WitnessReport {
    pub fn valid(&self, target: usize) -> bool {
        self.isotropic && self.subspace_dim * 2 == 16 && self.image_dim == target
    }
}

pub fn verify_isotropic_witness(rep: &CliffordRep, h: &BilinearForm, basis: &[Vec<Rational>]) -> Result<WitnessReport> {
    let s0 = SpinorSubspace::from_basis(basis_matrix(rep.dim, basis))?;
    let isotropic = s0.is_isotropic(h);
    let image = pi_image(rep, h, &s0, &s0)?;
    Ok(WitnessReport { subspace_dim: s0.dim(), isotropic, image_dim: image.len(), image_basis: image })
}

/// Rep and `τ = +1` form used for all Spin(4,5) witnesses.
pub fn spin45_setup() -> Result<(CliffordRep, BilinearForm)> {
    tau_plus_setup(4, 5)
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Spin45Result {
    pub seed: u64,
    pub candidates_tried: u64,
    pub histogram: BTreeMap<usize, u64>,
    #[cfg_attr(feature = "serde", serde(serialize_with = "crate::scalar::serde_strings::vectors"))]
    pub witness: Vec<Vec<Rational>>,
    pub report: WitnessReport,
}

/// Seeded search for a maximal isotropic `S0 ⊂ S_{4,5}` with image dimension 4.
///
/// Candidates are isotropic coordinate 8-subspaces (in seeded order)
/// followed by random graph Lagrangians. `budget` caps the number of
/// candidates that are evaluated.
pub fn spin45_search(seed: u64, budget: u64) -> Result<Spin45Result> {
    const TARGET: usize = 4;
    let (rep, h) = spin45_setup()?;
    let mut histogram = BTreeMap::new();
    let mut tried = 0u64;
    let mut rng = trial_rng(seed, u64::MAX);
    let mut subsets = coordinate_lagrangians(&h);
    shuffle(&mut subsets, &mut rng);
    let consider =
        |basis: Vec<Vec<Rational>>, tried: &mut u64, histogram: &mut BTreeMap<usize, u64>| -> Result<Option<Spin45Result>> {
            *tried += 1;
            let report = verify_isotropic_witness(&rep, &h, &basis)?;
            *histogram.entry(report.image_dim).or_insert(0) += 1;
            Ok(report.valid(TARGET).then(|| Spin45Result {
                seed,
                candidates_tried: *tried,
                histogram: histogram.clone(),
                witness: basis,
                report,
            }))
        };
    for cols in subsets {
        if tried >= budget {
            return Err(Error::BudgetExhausted(budget as usize));
        }
        let basis: Vec<Vec<Rational>> = cols.iter().map(|&c| (0..rep.dim).map(|r| int((r == c) as i64)).collect()).collect();
        if let Some(r) = consider(basis, &mut tried, &mut histogram)? {
            return Ok(r);
        }
    }
    let mut trial = 0u64;
    while tried < budget {
        let mut trng = trial_rng(seed, trial);
        trial += 1;
        let (l, l2) = lagrangian_pair(&rep, &h, &mut trng)?;
        let s0 = random_lagrangian(&h, &l, &l2, &mut trng)?;
        if let Some(r) = consider(s0.vectors(), &mut tried, &mut histogram)? {
            return Ok(r);
        }
    }
    Err(Error::BudgetExhausted(budget as usize))
}

/// All 8-element coordinate subsets spanning an `h`-isotropic subspace.
fn coordinate_lagrangians(h: &BilinearForm) -> Vec<Vec<usize>> {
    let n = h.dim();
    let half = n / 2;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != half {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        if cols.iter().all(|&a| cols.iter().all(|&b| Scalar::is_zero(&h.h[(a, b)]))) {
            out.push(cols);
        }
    }
    out
}

fn shuffle<T>(xs: &mut [T], rng: &mut SeededRng) {
    use rand::Rng;
    for i in (1..xs.len()).rev() {
        let j = rng.random_range(0..=i);
        xs.swap(i, j);
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MixedRankReport {
    pub spinor_dim: usize,
    pub k_plus: usize,
    pub k_minus: usize,
    pub trials: u64,
    /// `k_+ + k_- > 3N/2` (or `> N` when definite).
    pub hypothesis: bool,
    /// `rk β ≤ 2N − k_+ − k_-` for the smallest possible `rk β`.
    pub rank_chain_satisfiable: bool,
    pub full_span_trials: u64,
    /// Obstructing `v` with `rk β > 2N − k_+ − k_-`; must stay zero.
    pub rank_chain_violations: u64,
}

impl MixedRankReport {
    pub fn consistent(&self) -> bool {
        self.rank_chain_violations == 0
            && self.rank_chain_satisfiable != self.hypothesis
            && (!self.hypothesis || self.full_span_trials == self.trials)
    }
}

/// Random pairs `(A, B)` of dimensions `k_+`, `k_-` and the span of `[A,B]_1`.
pub fn mixed_rank_inequality(
    rep: &CliffordRep,
    h: &BilinearForm,
    k_plus: usize,
    k_minus: usize,
    trials: u64,
    seed: u64,
) -> Result<MixedRankReport> {
    if h.tau != 1 {
        return Err(Error::Precondition("mixed bound needs a tau=+1 form".into()));
    }
    let nn = rep.dim;
    if k_plus > nn || k_minus > nn {
        return Err(Error::Precondition("subspace dimension exceeds N".into()));
    }
    let definite = rep.signature.is_definite();
    let min_rank = if definite { nn } else { nn / 2 };
    let hypothesis = if definite { k_plus + k_minus > nn } else { 2 * (k_plus + k_minus) > 3 * nn };
    let mut report = MixedRankReport {
        spinor_dim: nn,
        k_plus,
        k_minus,
        trials,
        hypothesis,
        rank_chain_satisfiable: min_rank + k_plus + k_minus <= 2 * nn,
        full_span_trials: 0,
        rank_chain_violations: 0,
    };
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let a = SpinorSubspace::span(nn, &independent_vectors(&mut rng, nn, k_plus, 3));
        let b = SpinorSubspace::span(nn, &independent_vectors(&mut rng, nn, k_minus, 3));
        let image = pi_image(rep, h, &a, &b)?;
        if image.len() == rep.n() {
            report.full_span_trials += 1;
            continue;
        }
        // Obstructing v: h(γ_v A, B) = 0.
        let mats: Vec<ExactMatrix> =
            rep.generators.iter().map(|g| g.mul(a.basis()).transpose().mul(&h.h).mul(b.basis())).collect();
        let mut sys = SparseSystem::new(rep.n());
        for i in 0..k_plus {
            for j in 0..k_minus {
                sys.add_equation(mats.iter().enumerate().map(|(k, m)| (k, m[(i, j)].clone())));
            }
        }
        for v in sys.kernel() {
            let beta = beta_form(rep, h, &v)?;
            if beta.rank + k_plus + k_minus > 2 * nn {
                report.rank_chain_violations += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::form_of_type;
    use crate::clifford::build_rep;
    use crate::rng::seeded;
    use crate::signature::Signature;

    fn setup(p: usize, q: usize) -> (CliffordRep, BilinearForm) {
        let r = build_rep(Signature::new(p, q).unwrap()).unwrap();
        let h = form_of_type(&r, -1).unwrap().or_else(|| form_of_type(&r, 1).unwrap()).unwrap();
        (r, h)
    }

    #[test]
    fn extremal_examples() {
        // With a skew β (στ = −1) the construction never needs a rational
        // isotropic vector of a symmetric form, so it must always succeed.
        for s in Signature::all_up_to(6).into_iter().filter(|s| !s.is_definite()) {
            let r = build_rep(s).unwrap();
            if r.dim % 4 != 0 {
                continue;
            }
            let v = null_vector(&mut seeded(11), s);
            for (sigma, tau) in [(1, -1), (-1, 1)] {
                if let Some(h) = crate::admissible::nondegenerate_form(&r, sigma, tau).unwrap() {
                    let s0 = extremal_obstructed_subspace(&r, &h, &v).unwrap_or_else(|e| panic!("{s}: {e}"));
                    assert_eq!(4 * s0.dim(), 3 * r.dim);
                }
            }
        }
        // Symmetric β that is definite on the quotient by L_v: no W exists.
        let r = build_rep(Signature::new(1, 3).unwrap()).unwrap();
        let h = crate::admissible::nondegenerate_form(&r, -1, -1).unwrap().unwrap();
        let v = null_vector(&mut seeded(11), r.signature);
        assert!(matches!(extremal_obstructed_subspace(&r, &h, &v), Err(Error::ConstructionFailed(_))));
        let (r, h) = setup(1, 1);
        assert!(matches!(extremal_obstructed_subspace(&r, &h, &[int(1), int(1)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn sweeps() {
        let (r, h) = setup(3, 0);
        let rep = random_surjectivity_sweep(&r, &h, 3, 100, 5).unwrap();
        assert!(rep.covered && rep.counterexample.is_none());
        let (r, h) = setup(2, 3);
        let rep = random_surjectivity_sweep(&r, &h, 4, 20, 5).unwrap();
        assert!(rep.counterexample.is_none());
    }

    #[test]
    fn spin23() {
        let scan = spin23_isotropic_scan(30, 1).unwrap();
        assert_eq!(scan.histogram.keys().copied().collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn mixed() {
        let (r, h) = tau_plus_setup(2, 3).unwrap();
        let rep = mixed_rank_inequality(&r, &h, 4, 4, 3, 2).unwrap();
        assert!(rep.consistent());
        let rep = mixed_rank_inequality(&r, &h, 2, 2, 5, 2).unwrap();
        assert!(rep.consistent());
    }
}
