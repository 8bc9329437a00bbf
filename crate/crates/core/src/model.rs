//! Floating-point checks on unit hyperquadrics `ĝ(x,x) = 1` inside a flat
//! cone `ℝ^{p+1,q}`.
//!
//! Spinors on the hyperquadric are cone spinors seen through a moving spin
//! frame. At a point `x` the frame is the image of the standard basis under
//! the rotation `R = ρ_m ρ_b` (two reflections) taking the patch base point
//! `b = ±E_0` to `x`; its spin lift `γ̂_m γ̂_b` is explicit, so a constant cone
//! spinor `s` has frame coordinates `ψ(y) = γ̂_b γ̂_{m(y)} s`. Everything
//! downstream (connection forms, covariant derivatives, curvature) is taken
//! by central differences of these frame quantities.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)] // float methods live in core only on newer toolchains
use num_traits::Float;
use num_traits::ToPrimitive;

use crate::admissible::{form_of_type, BilinearForm};
use crate::clifford::{build_rep, classify_commutant, commutant_of, CliffordRep};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::polyvector::{blade_position, blades, sort_sign};
use crate::signature::Signature;

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;
/// Default acceptance tolerance for residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Number of quasi-uniform sample points per model.
pub const SAMPLE_COUNT: usize = 32;

const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn radical_inverse(mut i: u32, base: u32) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

pub fn to_f64(m: &ExactMatrix) -> Mat {
    Mat::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)].to_f64().unwrap_or(f64::NAN))
}

fn max_norm(m: &Mat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Numeric rank with singular values below `tol · σ_max` treated as zero.
pub fn numeric_rank(m: &Mat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().fold(0.0f64, |a, &x| a.max(x));
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > tol * top).count()
}

/// Dimension of the joint kernel: singular values below `tol` (absolute).
pub fn joint_kernel_dim(ops: &[Mat], dim: usize, tol: f64) -> usize {
    if ops.is_empty() {
        return dim;
    }
    let rows: usize = ops.iter().map(|m| m.nrows()).sum();
    let mut stacked = Mat::zeros(rows, dim);
    let mut r = 0;
    for m in ops {
        stacked.view_mut((r, 0), (m.nrows(), dim)).copy_from(m);
        r += m.nrows();
    }
    if rows < dim {
        return dim - rows + joint_kernel_dim_square(&stacked, tol);
    }
    joint_kernel_dim_square(&stacked, tol)
}

fn joint_kernel_dim_square(m: &Mat, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    sv.iter().filter(|&&x| x < tol).count()
}

/// Lift of a skew endomorphism `A` (frame matrix, `A e_i = Σ_j A_ji e_j`)
/// to the spin representation: `½ Σ_{i<j} η_i A_ji γ_i γ_j`.
pub fn spin_lift(a: &Mat, eta: &[f64], gammas: &[Mat]) -> Mat {
    let dim = gammas[0].nrows();
    let mut out = Mat::zeros(dim, dim);
    for i in 0..eta.len() {
        for j in i + 1..eta.len() {
            let c = 0.5 * eta[i] * a[(j, i)];
            if c != 0.0 {
                out += (&gammas[i] * &gammas[j]) * c;
            }
        }
    }
    out
}

/// A spinor field on the hyperquadric coming from a constant cone spinor,
/// optionally multiplied by the intrinsic volume element.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    pub spinor: Vec<f64>,
    pub twisted: bool,
}

impl SpinorField {
    pub fn constant(spinor: Vec<f64>) -> Self {
        SpinorField { spinor, twisted: false }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut s = vec![0.0; dim];
        s[k] = 1.0;
        SpinorField::constant(s)
    }

    pub fn twist(mut self) -> Self {
        self.twisted = !self.twisted;
        self
    }
}

#[derive(Clone, Debug)]
pub struct HyperquadricModel {
    cone: Signature,
    base: Signature,
    cone_rep: CliffordRep,
    cone_gammas: Vec<Mat>,
    /// Cone metric; index 0 is the base-point direction `E_0`.
    eta: Vec<f64>,
    points: Vec<Vector>,
    pub step: f64,
    pub tolerance: f64,
}

impl HyperquadricModel {
    /// Unit hyperquadric in the cone of signature `cone = (p+1, q)`.
    pub fn new(cone: Signature) -> Result<Self> {
        if cone.p == 0 || cone.n() < 2 {
            return Err(Error::Precondition("cone needs p ≥ 1 and dimension ≥ 2".into()));
        }
        let base = Signature::new(cone.p - 1, cone.q)?;
        let cone_rep = build_rep(cone)?;
        let cone_gammas: Vec<Mat> = cone_rep.generators.iter().map(to_f64).collect();
        let eta: Vec<f64> = (0..cone.n()).map(|i| cone.eta(i) as f64).collect();
        let n = base.n();
        let points = (1..=SAMPLE_COUNT as u32)
            .map(|i| {
                let y: Vec<f64> = (0..n).map(|k| 2.4 * (radical_inverse(i, PRIMES[k % 12]) - 0.5)).collect();
                let qf: f64 = (0..n).map(|k| eta[k + 1] * y[k] * y[k]).sum();
                let (c, s) = if qf > 0.0 {
                    let r = qf.sqrt();
                    (r.cos(), r.sin() / r)
                } else if qf < 0.0 {
                    let r = (-qf).sqrt();
                    (r.cosh(), r.sinh() / r)
                } else {
                    (1.0, 1.0)
                };
                let mut x = Vector::zeros(n + 1);
                x[0] = c;
                for k in 0..n {
                    x[k + 1] = s * y[k];
                }
                x
            })
            .collect();
        Ok(HyperquadricModel { cone, base, cone_rep, cone_gammas, eta, points, step: DEFAULT_STEP, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.step = h;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn cone(&self) -> Signature {
        self.cone
    }

    pub fn base(&self) -> Signature {
        self.base
    }

    /// Dimension `n` of the hyperquadric.
    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Real dimension of the cone spinor module.
    pub fn spinor_dim(&self) -> usize {
        self.cone_rep.dim
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn cone_rep(&self) -> &CliffordRep {
        &self.cone_rep
    }

    /// Intrinsic metric signs `η_1..η_n`.
    pub fn base_eta(&self) -> &[f64] {
        &self.eta[1..]
    }

    pub fn dot(&self, a: &Vector, b: &Vector) -> f64 {
        (0..a.len()).map(|i| self.eta[i] * a[i] * b[i]).sum()
    }

    /// Patch sign: the frame at `x` is built from the base point `σE_0`.
    pub fn patch(&self, x: &Vector) -> f64 {
        if x[0] >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Exact intrinsic Clifford action `e_i ↦ γ̂_i γ̂_0` on the cone module.
    pub fn intrinsic_rep(&self) -> CliffordRep {
        let g0 = &self.cone_rep.generators[0];
        let generators: Vec<ExactMatrix> = self.cone_rep.generators[1..].iter().map(|g| g.mul(g0)).collect();
        let dim = self.cone_rep.dim;
        // Describes the irreducible summand when the module is reducible.
        let commutant_type = classify_commutant(&commutant_of(&generators, dim)).unwrap_or(self.base.commutant_type());
        CliffordRep { signature: self.base, dim, generators, commutant_type }
    }

    /// Nondegenerate admissible form of type `tau` for the intrinsic action.
    pub fn intrinsic_form(&self, tau: i8) -> Result<Option<BilinearForm>> {
        form_of_type(&self.intrinsic_rep(), tau)
    }

    /// Frame-gauge intrinsic Clifford matrices `σ γ̂_i γ̂_0`.
    pub fn gammas(&self, sigma: f64) -> Vec<Mat> {
        let g0 = &self.cone_gammas[0];
        self.cone_gammas[1..].iter().map(|g| (g * g0) * sigma).collect()
    }

    fn volume(&self, sigma: f64) -> Mat {
        let gs = self.gammas(sigma);
        let dim = self.spinor_dim();
        gs.iter().fold(Mat::identity(dim, dim), |acc, g| acc * g)
    }

    fn mid(&self, y: &Vector, sigma: f64) -> Vector {
        let d = 2.0 * (1.0 + sigma * y[0]);
        let mut m = y.clone();
        m[0] += sigma;
        m / d.sqrt()
    }

    /// Orthonormal tangent frame `e_i = E_i − 2η_i m_i m` at `y`.
    pub fn frame(&self, y: &Vector, sigma: f64) -> Vec<Vector> {
        let m = self.mid(y, sigma);
        (1..=self.n())
            .map(|i| {
                let mut e = &m * (-2.0 * self.eta[i] * m[i]);
                e[i] += 1.0;
                e
            })
            .collect()
    }

    /// Inverse spin lift `γ̂_b γ̂_m` of the frame rotation at `y`.
    pub fn gauge(&self, y: &Vector, sigma: f64) -> Mat {
        let m = self.mid(y, sigma);
        let dim = self.spinor_dim();
        let mut gm = Mat::zeros(dim, dim);
        for (a, g) in self.cone_gammas.iter().enumerate() {
            gm += g * m[a];
        }
        (&self.cone_gammas[0] * gm) * sigma
    }

    /// Point `(y + tX)/|y + tX|` on the hyperquadric.
    pub fn curve(&self, y: &Vector, x: &Vector, t: f64) -> Vector {
        let z = y + x * t;
        let nz = self.dot(&z, &z);
        z / nz.sqrt()
    }

    fn tangent(&self, x: &Vector, v: &Vector) -> Result<bool> {
        let scale = 1.0 + v.amax();
        let along = self.dot(x, v);
        if along.abs() <= 1e-9 * scale {
            return Ok(true);
        }
        let radial = v - x * along;
        if radial.amax() <= 1e-9 * scale {
            return Ok(false);
        }
        Err(Error::NotTangent)
    }

    /// Frame components `X^i = η_i ĝ(X, e_i)`.
    pub fn components(&self, frame: &[Vector], v: &Vector) -> Vec<f64> {
        frame.iter().enumerate().map(|(i, e)| self.eta[i + 1] * self.dot(v, e)).collect()
    }

    pub fn vector_from(&self, frame: &[Vector], comps: &[f64]) -> Vector {
        let mut v = Vector::zeros(self.n() + 1);
        for (e, c) in frame.iter().zip(comps) {
            v += e * *c;
        }
        v
    }

    /// Connection forms `ω_ij(X) = ĝ(∇_X e_i, e_j)` by central differences.
    pub fn connection_form(&self, x: &Vector, v: &Vector) -> Result<Mat> {
        let n = self.n();
        if !self.tangent(x, v)? {
            return Ok(Mat::zeros(n, n));
        }
        Ok(self.omega(x, self.patch(x), v, self.step))
    }

    fn omega(&self, y: &Vector, sigma: f64, v: &Vector, h: f64) -> Mat {
        let n = self.n();
        let e = self.frame(y, sigma);
        let ep = self.frame(&self.curve(y, v, h), sigma);
        let em = self.frame(&self.curve(y, v, -h), sigma);
        Mat::from_fn(n, n, |i, j| self.dot(&((&ep[i] - &em[i]) / (2.0 * h)), &e[j]))
    }

    /// Frame matrix of `∇_X`: `A_ji = η_j ω_ij(X)`.
    fn conn_matrix(&self, y: &Vector, sigma: f64, v: &Vector, h: f64) -> Mat {
        let w = self.omega(y, sigma, v, h);
        Mat::from_fn(w.nrows(), w.ncols(), |j, i| self.eta[j + 1] * w[(i, j)])
    }

    /// Spinor connection matrix `¼ Σ η_iη_j ω_ij(X) γ_iγ_j` at `x`.
    pub fn spin_connection(&self, x: &Vector, v: &Vector) -> Result<Mat> {
        let dim = self.spinor_dim();
        if !self.tangent(x, v)? {
            return Ok(Mat::zeros(dim, dim));
        }
        let sigma = self.patch(x);
        let a = self.conn_matrix(x, sigma, v, self.step);
        Ok(spin_lift(&a, self.base_eta(), &self.gammas(sigma)))
    }

    /// Frame coordinates of `field` at `y`.
    pub fn field_at(&self, field: &SpinorField, y: &Vector, sigma: f64) -> Vector {
        let s = Vector::from_column_slice(&field.spinor);
        let psi = self.gauge(y, sigma) * s;
        if field.twisted {
            self.volume(sigma) * psi
        } else {
            psi
        }
    }

    fn covariant_with(&self, field: &SpinorField, x: &Vector, sigma: f64, v: &Vector, h: f64) -> Vector {
        let d =
            (self.field_at(field, &self.curve(x, v, h), sigma) - self.field_at(field, &self.curve(x, v, -h), sigma)) / (2.0 * h);
        let a = self.conn_matrix(x, sigma, v, h);
        d + spin_lift(&a, self.base_eta(), &self.gammas(sigma)) * self.field_at(field, x, sigma)
    }

    /// `∇_X ψ` in frame coordinates at `x`.
    pub fn covariant(&self, field: &SpinorField, x: &Vector, v: &Vector) -> Result<Vector> {
        self.tangent(x, v)?;
        Ok(self.covariant_with(field, x, self.patch(x), v, self.step))
    }

    fn killing_at(&self, field: &SpinorField, x: &Vector, lambda: f64, h: f64) -> f64 {
        let sigma = self.patch(x);
        let frame = self.frame(x, sigma);
        let gs = self.gammas(sigma);
        let psi = self.field_at(field, x, sigma);
        frame
            .iter()
            .enumerate()
            .map(|(a, e)| (self.covariant_with(field, x, sigma, e, h) - (&gs[a] * &psi) * lambda).amax())
            .fold(0.0, f64::max)
    }

    fn killing_with(&self, field: &SpinorField, lambda: f64, h: f64) -> f64 {
        self.points.iter().map(|x| self.killing_at(field, x, lambda, h)).fold(0.0, f64::max)
    }

    /// `max ‖∇_X ψ − λ X·ψ‖` over samples and frame vectors.
    pub fn killing_residual(&self, field: &SpinorField, lambda: f64) -> f64 {
        self.killing_with(field, lambda, self.step)
    }

    /// Sign `ε` with `λ = ε/2` minimizing the residual, with both residuals.
    pub fn detect_epsilon(&self, field: &SpinorField) -> (i8, f64, f64) {
        let plus = self.killing_residual(field, 0.5);
        let minus = self.killing_residual(field, -0.5);
        if plus <= minus {
            (1, plus, minus)
        } else {
            (-1, minus, plus)
        }
    }

    fn dirac_with(&self, field: &SpinorField, x: &Vector, sigma: f64, h: f64) -> Vector {
        let frame = self.frame(x, sigma);
        let gs = self.gammas(sigma);
        let mut out = Vector::zeros(self.spinor_dim());
        for (a, e) in frame.iter().enumerate() {
            out += (&gs[a] * self.covariant_with(field, x, sigma, e, h)) * self.eta[a + 1];
        }
        out
    }

    /// `D ψ = Σ η_a γ_a ∇_{e_a} ψ` at `x`.
    pub fn dirac(&self, field: &SpinorField, x: &Vector) -> Vector {
        self.dirac_with(field, x, self.patch(x), self.step)
    }

    fn dirac_residual_with(&self, field: &SpinorField, lambda: f64, h: f64) -> f64 {
        let n = self.n() as f64;
        self.points
            .iter()
            .map(|x| {
                let sigma = self.patch(x);
                (self.dirac_with(field, x, sigma, h) + self.field_at(field, x, sigma) * (n * lambda)).amax()
            })
            .fold(0.0, f64::max)
    }

    /// `max ‖Dψ + nλψ‖` over samples.
    pub fn dirac_residual(&self, field: &SpinorField, lambda: f64) -> f64 {
        self.dirac_residual_with(field, lambda, self.step)
    }

    /// Largest `|ω_ij(X) + ω_ji(X)|` over samples and frame vectors.
    pub fn connection_skew_defect(&self) -> f64 {
        self.skew_defect_with(self.step)
    }

    fn skew_defect_with(&self, h: f64) -> f64 {
        let mut worst = 0.0f64;
        for x in &self.points {
            let sigma = self.patch(x);
            for e in self.frame(x, sigma) {
                let w = self.omega(x, sigma, &e, h);
                worst = worst.max(max_norm(&(&w + w.transpose())));
            }
        }
        worst
    }

    /// Frame curvature matrices `R(e_a, e_b)` at `x`, by nested differences
    /// with outer step `outer`.
    fn curvature_with(&self, x: &Vector, h: f64, outer: f64) -> Vec<Vec<Mat>> {
        let n = self.n();
        let sigma = self.patch(x);
        let frame = self.frame(x, sigma);
        let a_at = |y: &Vector, b: usize| {
            let fy = self.frame(y, sigma);
            self.conn_matrix(y, sigma, &fy[b], h)
        };
        let a: Vec<Mat> = (0..n).map(|b| a_at(x, b)).collect();
        // d_a A(e_b) along e_a
        let da: Vec<Vec<Mat>> = (0..n)
            .map(|ia| {
                let yp = self.curve(x, &frame[ia], outer);
                let ym = self.curve(x, &frame[ia], -outer);
                (0..n).map(|b| (a_at(&yp, b) - a_at(&ym, b)) / (2.0 * outer)).collect()
            })
            .collect();
        let mut out = vec![vec![Mat::zeros(n, n); n]; n];
        for ia in 0..n {
            for b in 0..n {
                if ia == b {
                    continue;
                }
                // [e_a, e_b] = Σ_j (A(e_a)_jb − A(e_b)_ja) e_j
                let mut torsion = Mat::zeros(n, n);
                for j in 0..n {
                    let c = a[ia][(j, b)] - a[b][(j, ia)];
                    torsion += &a[j] * c;
                }
                out[ia][b] = &da[ia][b] - &da[b][ia] + &a[ia] * &a[b] - &a[b] * &a[ia] - torsion;
            }
        }
        out
    }

    fn outer_step(&self, h: f64) -> f64 {
        3.0 * h
    }

    /// Frame curvature at sample `i`.
    pub fn curvature(&self, i: usize) -> Vec<Vec<Mat>> {
        let h = self.step;
        self.curvature_with(&self.points[i], h, self.outer_step(h))
    }

    fn scal_from(&self, r: &[Vec<Mat>]) -> f64 {
        // scal = Σ_{a,b} η_a η_b ĝ(R(e_a,e_b)e_b, e_a) = Σ η_b (R_ab)_{ab}
        let n = self.n();
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += self.eta[b + 1] * r[a][b][(a, b)];
            }
        }
        s
    }

    fn scal_error_with(&self, lambda: f64, h: f64) -> f64 {
        let n = self.n() as f64;
        let expected = 4.0 * n * (n - 1.0) * lambda * lambda;
        self.points
            .iter()
            .map(|x| (self.scal_from(&self.curvature_with(x, h, self.outer_step(h))) - expected).abs())
            .fold(0.0, f64::max)
    }

    /// Numeric scalar curvature at every sample.
    pub fn scalar_curvature(&self) -> Vec<f64> {
        (0..self.points.len()).map(|i| self.scal_from(&self.curvature(i))).collect()
    }

    /// Largest deviation of the numeric scalar curvature from `4n(n−1)λ²`.
    pub fn scal_check(&self, lambda: f64) -> ScalReport {
        let n = self.n() as f64;
        ScalReport { expected: 4.0 * n * (n - 1.0) * lambda * lambda, max_error: self.scal_error_with(lambda, self.step) }
    }

    /// Constant cone spinors tested one basis vector at a time.
    pub fn killing_report(&self) -> KillingReport {
        let dim = self.spinor_dim();
        let mut eps = Vec::with_capacity(dim);
        let mut passing = 0;
        let mut worst = 0.0f64;
        let mut wrong = f64::INFINITY;
        for k in 0..dim {
            let (e, good, bad) = self.detect_epsilon(&SpinorField::basis(dim, k));
            eps.push(e);
            if good < self.tolerance {
                passing += 1;
            }
            worst = worst.max(good);
            wrong = wrong.min(bad);
        }
        let epsilon = if eps.iter().all(|&e| e == eps[0]) { Some(eps[0]) } else { None };
        KillingReport {
            cone: self.cone,
            base: self.base,
            spinor_dim: dim,
            epsilon,
            passing,
            kappa: passing as f64 / dim as f64,
            max_residual: worst,
            wrong_sign_residual: wrong,
        }
    }

    /// Whether `ε` detected pointwise agrees at every sample and at steps
    /// `h` and `h/2`.
    pub fn epsilon_stable(&self, field: &SpinorField) -> bool {
        let mut seen = None;
        for h in [self.step, self.step / 2.0] {
            for x in &self.points {
                let e = if self.killing_at(field, x, 0.5, h) <= self.killing_at(field, x, -0.5, h) { 1 } else { -1 };
                match seen {
                    None => seen = Some(e),
                    Some(s) if s != e => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// `[ψ_s, ψ_t]_k` in frame components at `y`; `ω_I = g(e_I,e_I) h(γ_I ψ_s, ψ_t)`.
    fn bracket_at(&self, form: &Mat, s: &SpinorField, t: &SpinorField, k: usize, y: &Vector, sigma: f64) -> Vec<f64> {
        let gs = self.gammas(sigma);
        let ps = self.field_at(s, y, sigma);
        let pt = self.field_at(t, y, sigma);
        let ht = form * pt;
        blades(self.n(), k)
            .iter()
            .map(|idx| {
                let mut v = ps.clone();
                for &i in idx.iter().rev() {
                    v = &gs[i] * v;
                }
                let norm: f64 = idx.iter().map(|&i| self.eta[i + 1]).product();
                norm * v.dot(&ht)
            })
            .collect()
    }

    /// Derivation action of a frame matrix on `k`-vector coefficients.
    fn derive(&self, a: &Mat, coeffs: &[f64], k: usize) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; coeffs.len()];
        for (pos, idx) in blades(n, k).iter().enumerate() {
            if coeffs[pos] == 0.0 {
                continue;
            }
            for r in 0..k {
                for j in 0..n {
                    let c = a[(j, idx[r])];
                    if c == 0.0 {
                        continue;
                    }
                    let mut moved = idx.clone();
                    moved[r] = j;
                    if let Some((sign, sorted)) = sort_sign(&moved) {
                        let at = blade_position(n, &sorted).expect("sorted blade");
                        out[at] += sign as f64 * c * coeffs[pos];
                    }
                }
            }
        }
        out
    }

    /// `X ⌟ ω` for frame components `x` of `X`.
    fn interior(&self, x: &[f64], coeffs: &[f64], k: usize) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; crate::polyvector::binomial(n, k - 1)];
        for (pos, idx) in blades(n, k).iter().enumerate() {
            for r in 0..k {
                let i = idx[r];
                let c = self.eta[i + 1] * x[i];
                if c == 0.0 {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(r);
                let at = blade_position(n, &rest).expect("sorted blade");
                let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                out[at] += sign * c * coeffs[pos];
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn covariant_bracket(
        &self,
        form: &Mat,
        s: &SpinorField,
        t: &SpinorField,
        k: usize,
        x: &Vector,
        sigma: f64,
        v: &Vector,
        h: f64,
    ) -> Vec<f64> {
        let p = self.bracket_at(form, s, t, k, &self.curve(x, v, h), sigma);
        let m = self.bracket_at(form, s, t, k, &self.curve(x, v, -h), sigma);
        let w = self.bracket_at(form, s, t, k, x, sigma);
        let a = self.conn_matrix(x, sigma, v, h);
        let turn = self.derive(&a, &w, k);
        (0..w.len()).map(|i| (p[i] - m[i]) / (2.0 * h) + turn[i]).collect()
    }

    /// Residual checks for `ω = [s,t]_k` where `s`, `t` are Killing with
    /// numbers `lambda`, `mu`, against the admissible form `form`.
    pub fn bracket_field_checks(
        &self,
        s: &SpinorField,
        t: &SpinorField,
        k: usize,
        form: &BilinearForm,
        lambda: f64,
        mu: f64,
    ) -> Result<BracketFieldReport> {
        self.bracket_checks_with(s, t, k, form, lambda, mu, self.step)
    }

    #[allow(clippy::too_many_arguments)]
    fn bracket_checks_with(
        &self,
        s: &SpinorField,
        t: &SpinorField,
        k: usize,
        form: &BilinearForm,
        lambda: f64,
        mu: f64,
        h: f64,
    ) -> Result<BracketFieldReport> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(Error::Precondition("bracket degree must satisfy 1 ≤ k ≤ n".into()));
        }
        let hm = to_f64(&form.h);
        let tau = form.tau as f64;
        let kf = if k % 2 == 0 { 1.0 } else { -1.0 };
        let factor = lambda * kf - mu * tau;
        let killing_case = (mu - kf * tau * lambda).abs() < 1e-12;
        let vector_case = k == 1 && form.tau == -1 && (lambda - mu).abs() < 1e-12;
        let mut report = BracketFieldReport {
            k,
            lambda,
            mu,
            tau: form.tau,
            conformal: 0.0,
            killing: killing_case.then_some(0.0),
            killing_vector: vector_case.then_some(0.0),
            geodesic: killing_case.then_some(0.0),
            tilde_consistency: 0.0,
        };
        for x in &self.points {
            let sigma = self.patch(x);
            let frame = self.frame(x, sigma);
            let lower = self.bracket_at(&hm, s, t, k - 1, x, sigma);
            let tilde: Vec<f64> = lower.iter().map(|c| factor * c).collect();
            // n ω̃ = (−1)^{k−1} [Ds,t]_{k−1} + τ [s,Dt]_{k−1}
            let ds = self.dirac_with(s, x, sigma, h);
            let dt = self.dirac_with(t, x, sigma, h);
            let ht = &hm * self.field_at(t, x, sigma);
            let hdt = &hm * dt;
            let ps = self.field_at(s, x, sigma);
            let gs = self.gammas(sigma);
            for (pos, idx) in blades(n, k - 1).iter().enumerate() {
                let act = |v: &Vector| idx.iter().rev().fold(v.clone(), |acc, &i| &gs[i] * acc);
                let norm: f64 = idx.iter().map(|&i| self.eta[i + 1]).product();
                let a = norm * act(&ds).dot(&ht);
                let b = norm * act(&ps).dot(&hdt);
                let via_dirac = (-kf * a + tau * b) / n as f64;
                report.tilde_consistency = report.tilde_consistency.max((via_dirac - tilde[pos]).abs());
            }
            let mut dirs: Vec<Vec<f64>> = (0..n).map(|a| (0..n).map(|b| if a == b { 1.0 } else { 0.0 }).collect()).collect();
            for a in 0..n {
                for b in a + 1..n {
                    dirs.push((0..n).map(|c| if c == a || c == b { 1.0 } else { 0.0 }).collect());
                }
            }
            for comps in &dirs {
                let v = self.vector_from(&frame, comps);
                let gxx: f64 = (0..n).map(|c| self.eta[c + 1] * comps[c] * comps[c]).sum();
                let nabla = self.covariant_bracket(&hm, s, t, k, x, sigma, &v, h);
                let lhs = self.interior(comps, &nabla, k);
                let conf = lhs.iter().zip(&tilde).map(|(l, r)| (l - gxx * r).abs()).fold(0.0, f64::max);
                report.conformal = report.conformal.max(conf);
                if let Some(kres) = report.killing.as_mut() {
                    *kres = kres.max(lhs.iter().fold(0.0, |m, l| m.max(l.abs())));
                }
            }
            if let Some(kv) = report.killing_vector.as_mut() {
                let nab: Vec<Vec<f64>> = frame.iter().map(|e| self.covariant_bracket(&hm, s, t, 1, x, sigma, e, h)).collect();
                for a in 0..n {
                    for b in 0..n {
                        let sym = self.eta[b + 1] * nab[a][b] + self.eta[a + 1] * nab[b][a];
                        *kv = kv.max(sym.abs());
                    }
                }
            }
            if let Some(geo) = report.geodesic.as_mut() {
                for (a, e) in frame.iter().enumerate() {
                    *geo = geo.max(self.geodesic_defect(&hm, s, t, k, x, sigma, e, self.eta[a + 1], h));
                }
            }
        }
        Ok(report)
    }

    /// `|∇_{ċ}(ċ ⌟ ω)|` at `t = 0` along the unit-speed geodesic with
    /// `c(0) = x`, `ċ(0) = e`, `ĝ(e,e) = g`.
    #[allow(clippy::too_many_arguments)]
    fn geodesic_defect(
        &self,
        hm: &Mat,
        s: &SpinorField,
        t: &SpinorField,
        k: usize,
        x: &Vector,
        sigma: f64,
        e: &Vector,
        g: f64,
        h: f64,
    ) -> f64 {
        let geo = |u: f64| -> (Vector, Vector) {
            if g > 0.0 {
                (x * u.cos() + e * u.sin(), e * u.cos() - x * u.sin())
            } else {
                (x * u.cosh() + e * u.sinh(), e * u.cosh() + x * u.sinh())
            }
        };
        let field = |u: f64| -> Vec<f64> {
            let (c, dc) = geo(u);
            let fr = self.frame(&c, sigma);
            let comps = self.components(&fr, &dc);
            let w = self.bracket_at(hm, s, t, k, &c, sigma);
            self.interior(&comps, &w, k)
        };
        let p = field(h);
        let m = field(-h);
        let z = field(0.0);
        let a = self.conn_matrix(x, sigma, e, h);
        let turn = self.derive(&a, &z, k - 1);
        (0..z.len()).map(|i| ((p[i] - m[i]) / (2.0 * h) + turn[i]).abs()).fold(0.0, f64::max)
    }

    /// Smallest (over samples) dimension of `span{[s_i, s_j]_1(x)}`.
    pub fn homogeneity_span(&self, spinors: &[SpinorField], form: &BilinearForm) -> usize {
        let hm = to_f64(&form.h);
        let n = self.n();
        let mut least = n;
        for x in &self.points {
            let sigma = self.patch(x);
            let mut cols = Vec::new();
            for i in 0..spinors.len() {
                for j in 0..spinors.len() {
                    cols.push(self.bracket_at(&hm, &spinors[i], &spinors[j], 1, x, sigma));
                }
            }
            if cols.is_empty() {
                return 0;
            }
            let m = Mat::from_fn(n, cols.len(), |r, c| cols[c][r]);
            least = least.min(numeric_rank(&m, 1e-8));
        }
        least
    }

    /// Residuals at step `h` and `h/2`, with their ratios.
    pub fn convergence_study(&self, h: f64) -> Result<ConvergenceReport> {
        let dim = self.spinor_dim();
        let s = SpinorField::basis(dim, 0);
        let t = SpinorField::basis(dim, dim - 1);
        let (eps, _, _) = self.detect_epsilon(&s);
        let lambda = eps as f64 * 0.5;
        let form = self.intrinsic_form(-1)?;
        let mut rows = Vec::new();
        for (name, f) in [
            ("killing", &|m: &Self, h: f64| -> Result<f64> {
                Ok((0..dim).map(|k| m.killing_with(&SpinorField::basis(dim, k), lambda, h)).fold(0.0, f64::max))
            } as &dyn Fn(&Self, f64) -> Result<f64>),
            ("dirac", &|m: &Self, h: f64| Ok(m.dirac_residual_with(&s, lambda, h))),
            ("connection_skew", &|m: &Self, h: f64| Ok(m.skew_defect_with(h))),
            ("scal", &|m: &Self, h: f64| Ok(m.scal_error_with(lambda, h))),
        ] {
            let a = f(self, h)?;
            let b = f(self, h / 2.0)?;
            rows.push(ConvergenceRow { name: name.into(), coarse: a, fine: b, ratio: a / b });
        }
        if let Some(form) = form {
            let r = |h: f64| -> Result<f64> {
                let rep = self.bracket_checks_with(&s, &t, 1, &form, lambda, lambda, h)?;
                Ok(rep.conformal.max(rep.killing_vector.unwrap_or(0.0)))
            };
            let a = r(h)?;
            let b = r(h / 2.0)?;
            rows.push(ConvergenceRow { name: "bracket".into(), coarse: a, fine: b, ratio: a / b });
        }
        Ok(ConvergenceReport { step: h, rows })
    }
}

/// Numeric curvature data needed for the Killing-spinor bound.
pub trait CurvatureModel {
    /// Intrinsic metric signs.
    fn metric_signs(&self) -> Vec<f64>;
    /// Spinor module dimension.
    fn module_dim(&self) -> usize;
    fn sample_count(&self) -> usize;
    /// Frame Clifford matrices at sample `i`.
    fn frame_gammas(&self, i: usize) -> Vec<Mat>;
    /// Frame curvature matrices `R(e_a, e_b)` at sample `i`.
    fn frame_curvature(&self, i: usize) -> Vec<Vec<Mat>>;
}

impl CurvatureModel for HyperquadricModel {
    fn metric_signs(&self) -> Vec<f64> {
        self.base_eta().to_vec()
    }

    fn module_dim(&self) -> usize {
        self.spinor_dim()
    }

    fn sample_count(&self) -> usize {
        self.points.len()
    }

    fn frame_gammas(&self, i: usize) -> Vec<Mat> {
        self.gammas(self.patch(&self.points[i]))
    }

    fn frame_curvature(&self, i: usize) -> Vec<Vec<Mat>> {
        self.curvature(i)
    }
}

/// Riemannian-style product of two hyperquadrics with block curvature.
#[derive(Clone, Debug)]
pub struct ProductModel {
    first: HyperquadricModel,
    second: HyperquadricModel,
    signature: Signature,
    gammas: Vec<Mat>,
    /// Position of each factor index in the product's positives-first order.
    slots: Vec<usize>,
}

impl ProductModel {
    pub fn new(first: HyperquadricModel, second: HyperquadricModel) -> Result<Self> {
        let (a, b) = (first.base(), second.base());
        let signature = Signature::new(a.p + b.p, a.q + b.q)?;
        let rep = build_rep(signature)?;
        let gammas = rep.generators.iter().map(to_f64).collect();
        let mut slots = Vec::with_capacity(signature.n());
        slots.extend(0..a.p);
        slots.extend((0..a.q).map(|i| a.p + b.p + i));
        slots.extend((0..b.p).map(|i| a.p + i));
        slots.extend((0..b.q).map(|i| a.p + b.p + a.q + i));
        Ok(ProductModel { first, second, signature, gammas, slots })
    }

    /// Product of two round spheres `S^{n1} × S^{n2}`.
    pub fn spheres(n1: usize, n2: usize) -> Result<Self> {
        ProductModel::new(
            HyperquadricModel::new(Signature::new(n1 + 1, 0)?)?,
            HyperquadricModel::new(Signature::new(n2 + 1, 0)?)?,
        )
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }
}

impl CurvatureModel for ProductModel {
    fn metric_signs(&self) -> Vec<f64> {
        (0..self.signature.n()).map(|i| self.signature.eta(i) as f64).collect()
    }

    fn module_dim(&self) -> usize {
        self.gammas[0].nrows()
    }

    fn sample_count(&self) -> usize {
        self.first.points.len().min(self.second.points.len())
    }

    fn frame_gammas(&self, _i: usize) -> Vec<Mat> {
        self.gammas.clone()
    }

    fn frame_curvature(&self, i: usize) -> Vec<Vec<Mat>> {
        let n = self.signature.n();
        let n1 = self.first.n();
        let mut out = vec![vec![Mat::zeros(n, n); n]; n];
        for (off, part) in [(0, self.first.curvature(i)), (n1, self.second.curvature(i))] {
            let m = part.len();
            for a in 0..m {
                for b in 0..m {
                    let (sa, sb) = (self.slots[off + a], self.slots[off + b]);
                    for r in 0..m {
                        for c in 0..m {
                            out[sa][sb][(self.slots[off + r], self.slots[off + c])] = part[a][b][(r, c)];
                        }
                    }
                }
            }
        }
        out
    }
}

/// Upper bound on the dimension of Killing spinors with number `lambda`:
/// the joint numeric kernel of `R^spin(e_a,e_b) + λ²[γ_a,γ_b]` over all
/// samples and frame pairs.
pub fn kappa_upper_bound<M: CurvatureModel>(model: &M, lambda: f64, tol: f64) -> KappaReport {
    let eta = model.metric_signs();
    let n = eta.len();
    let dim = model.module_dim();
    let mut ops = Vec::new();
    let mut largest = 0.0f64;
    for i in 0..model.sample_count() {
        let gs = model.frame_gammas(i);
        let r = model.frame_curvature(i);
        for a in 0..n {
            for b in a + 1..n {
                let op = spin_lift(&r[a][b], &eta, &gs) + (&gs[a] * &gs[b] - &gs[b] * &gs[a]) * (lambda * lambda);
                largest = largest.max(max_norm(&op));
                ops.push(op);
            }
        }
    }
    let bound = joint_kernel_dim(&ops, dim, tol);
    KappaReport { lambda, module_dim: dim, bound, largest_entry: largest }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KillingReport {
    pub cone: Signature,
    pub base: Signature,
    pub spinor_dim: usize,
    /// Common sign `ε` of `λ = ε/2`, if all basis spinors agree.
    pub epsilon: Option<i8>,
    pub passing: usize,
    pub kappa: f64,
    pub max_residual: f64,
    /// Smallest residual obtained with the opposite sign.
    pub wrong_sign_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScalReport {
    pub expected: f64,
    pub max_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BracketFieldReport {
    pub k: usize,
    pub lambda: f64,
    pub mu: f64,
    pub tau: i8,
    /// `max |X⌟∇_Xω − g(X,X) ω̃|`.
    pub conformal: f64,
    /// `max |X⌟∇_Xω|` when `μ = (−1)^k τ λ`.
    pub killing: Option<f64>,
    /// Symmetrized `∇ω` for `k = 1`, `τ = −1`, `λ = μ`.
    pub killing_vector: Option<f64>,
    /// `|∇_{ċ}(ċ⌟ω)|` along geodesics, Killing case only.
    pub geodesic: Option<f64>,
    /// Disagreement between `ω̃` from the closed formula and from `D`.
    pub tilde_consistency: f64,
}

impl BracketFieldReport {
    pub fn max_residual(&self) -> f64 {
        [Some(self.conformal), self.killing, self.killing_vector, self.geodesic, Some(self.tilde_consistency)]
            .iter()
            .flatten()
            .fold(0.0, |a, &b| a.max(b))
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KappaReport {
    pub lambda: f64,
    pub module_dim: usize,
    pub bound: usize,
    pub largest_entry: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceRow {
    pub name: alloc::string::String,
    pub coarse: f64,
    pub fine: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceReport {
    pub step: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Every residual shrinks by `factor`; residuals that vanish identically
    /// (round-off level) at both steps have nothing to shrink and count as
    /// converged.
    pub fn passed(&self, factor: f64) -> bool {
        self.rows.iter().all(|r| r.ratio >= factor || r.coarse.max(r.fine) < 1e-11)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: usize) -> HyperquadricModel {
        HyperquadricModel::new(Signature::new(n + 1, 0).unwrap()).unwrap()
    }

    #[test]
    fn samples_on_quadric() {
        for cone in [(3, 0), (4, 0), (2, 1), (2, 2), (3, 2)] {
            let m = HyperquadricModel::new(Signature::new(cone.0, cone.1).unwrap()).unwrap();
            assert_eq!(m.points().len(), SAMPLE_COUNT);
            for x in m.points() {
                assert!((m.dot(x, x) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn frames_orthonormal_and_tangent() {
        let m = HyperquadricModel::new(Signature::new(2, 2).unwrap()).unwrap();
        for x in m.points() {
            let f = m.frame(x, m.patch(x));
            for (i, e) in f.iter().enumerate() {
                assert!(m.dot(e, x).abs() < 1e-12);
                for (j, d) in f.iter().enumerate() {
                    let want = if i == j { m.base_eta()[i] } else { 0.0 };
                    assert!((m.dot(e, d) - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gauge_intertwines_frame() {
        // g⁻¹ γ̂_{e_i} γ̂_x g = σ γ̂_i γ̂_0
        let m = sphere(3);
        let dim = m.spinor_dim();
        for x in m.points().iter().take(8) {
            let sigma = m.patch(x);
            let g = m.gauge(x, sigma);
            let ginv = g.clone().try_inverse().unwrap();
            let gv = |v: &Vector| {
                let mut out = Mat::zeros(dim, dim);
                for (a, gm) in m.cone_gammas.iter().enumerate() {
                    out += gm * v[a];
                }
                out
            };
            for (i, e) in m.frame(x, sigma).iter().enumerate() {
                let lhs = &g * gv(e) * gv(x) * &ginv;
                assert!(max_norm(&(lhs - &m.gammas(sigma)[i])) < 1e-12);
            }
        }
    }

    #[test]
    fn connection_antisymmetric() {
        let m = sphere(2).with_step(1e-5);
        assert!(m.connection_skew_defect() < 1e-8);
    }

    #[test]
    fn radial_and_non_tangent() {
        let m = sphere(2);
        let x = m.points()[3].clone();
        assert_eq!(max_norm(&m.spin_connection(&x, &x).unwrap()), 0.0);
        let mut bad = x.clone() * 0.5;
        bad[1] += 1.0;
        assert_eq!(m.spin_connection(&x, &bad), Err(Error::NotTangent));
    }

    #[test]
    fn sphere_two_killing() {
        let m = sphere(2);
        let r = m.killing_report();
        assert_eq!(r.spinor_dim, 4);
        assert_eq!(r.passing, 4);
        assert_eq!(r.kappa, 1.0);
        assert!(r.epsilon.is_some());
        assert!(r.wrong_sign_residual > 0.1);
        let s = SpinorField::basis(4, 1);
        assert!(m.epsilon_stable(&s));
        let lambda = r.epsilon.unwrap() as f64 * 0.5;
        assert!(m.dirac_residual(&s, lambda) < 1e-5);
        assert_eq!(m.dirac_residual(&SpinorField::constant(vec![0.0; 4]), lambda), 0.0);
    }

    #[test]
    fn sphere_three_killing() {
        let r = sphere(3).killing_report();
        assert_eq!(r.passing, r.spinor_dim);
    }

    #[test]
    fn scal_matches() {
        let m = sphere(2);
        let r = m.scal_check(0.5);
        assert_eq!(r.expected, 2.0);
        assert!(r.max_error < 1e-6, "{r:?}");
    }

    #[test]
    fn bracket_fields_on_sphere() {
        let m = sphere(2);
        let form = m.intrinsic_form(-1).unwrap().unwrap();
        let lambda = m.killing_report().epsilon.unwrap() as f64 * 0.5;
        let s = SpinorField::basis(4, 0);
        let t = SpinorField::basis(4, 2);
        let r = m.bracket_field_checks(&s, &t, 1, &form, lambda, lambda).unwrap();
        assert!(r.killing_vector.unwrap() < 1e-5, "{r:?}");
        assert!(r.max_residual() < 1e-5, "{r:?}");
        // twisted spinor carries the opposite number on an even-dimensional base
        let tt = t.clone().twist();
        assert!(m.killing_residual(&tt, -lambda) < 1e-6);
        for k in 1..=2 {
            let r = m.bracket_field_checks(&s, &tt, k, &form, lambda, -lambda).unwrap();
            assert!(r.max_residual() < 1e-5, "{r:?}");
        }
        let zero = SpinorField::constant(vec![0.0; 4]);
        assert_eq!(m.bracket_field_checks(&zero, &zero, 1, &form, lambda, lambda).unwrap().max_residual(), 0.0);
    }

    #[test]
    fn homogeneity() {
        let m = sphere(2);
        let form = m.intrinsic_form(-1).unwrap().unwrap();
        let all: Vec<_> = (0..4).map(|k| SpinorField::basis(4, k)).collect();
        assert_eq!(m.homogeneity_span(&all, &form), 2);
        let pq = HyperquadricModel::new(Signature::new(2, 2).unwrap()).unwrap();
        let form = pq.intrinsic_form(-1).unwrap().unwrap();
        let all: Vec<_> = (0..pq.spinor_dim()).map(|k| SpinorField::basis(pq.spinor_dim(), k)).collect();
        assert_eq!(pq.homogeneity_span(&all, &form), 3);
    }

    #[test]
    fn kappa_bounds() {
        let s2 = sphere(2);
        assert_eq!(kappa_upper_bound(&s2, 0.5, 1e-4).bound, 4);
        let prod = ProductModel::spheres(2, 2).unwrap();
        assert_eq!(kappa_upper_bound(&prod, 0.5, 1e-4).bound, 0);
    }

    #[test]
    fn convergence() {
        let m = sphere(2);
        let r = m.convergence_study(1e-2).unwrap();
        assert!(r.passed(3.0), "{r:?}");
    }
}
