// SPDX-License-Identifier: Apache-2.0

//! Degree-k polyvectors in coordinates over an orthonormal basis.

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Strictly increasing multi-indices of length `k` in `0..n`, lexicographic.
pub fn blades(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Position of `idx` in [`blades`] order.
pub fn blade_position(n: usize, idx: &[usize]) -> Option<usize> {
    blades(n, idx.len()).iter().position(|b| b == idx)
}

/// Sign that sorts `idx` into increasing order, or `None` on repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// `k`-vector on an `n`-dimensional space; coefficients follow [`blades`].
#[derive(Clone, Debug, PartialEq)]
pub struct Polyvector<T> {
    pub n: usize,
    pub k: usize,
    pub coeffs: Vec<T>,
}

impl<T: Clone> Polyvector<T> {
    pub fn from_coeffs(n: usize, k: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), binomial(n, k), "coefficient count must be binomial(n, k)");
        Self { n, k, coeffs }
    }

    pub fn get(&self, idx: &[usize]) -> Option<&T> {
        blade_position(self.n, idx).map(|p| &self.coeffs[p])
    }
}

impl<T: Scalar> Polyvector<T> {
    pub fn zero(n: usize, k: usize) -> Self {
        Self { n, k, coeffs: alloc::vec![T::zero(); binomial(n, k)] }
    }

    pub fn scalar(n: usize, value: T) -> Self {
        Self { n, k: 0, coeffs: alloc::vec![value] }
    }

    /// The basis blade `e_{i_1} ∧ … ∧ e_{i_k}` (any order; sign applied).
    pub fn basis(n: usize, idx: &[usize]) -> Self {
        let mut pv = Self::zero(n, idx.len());
        if let Some((sign, sorted)) = sort_sign(idx) {
            let pos = blade_position(n, &sorted).expect("index out of range");
            pv.coeffs[pos] = T::from_int(sign);
        }
        pv
    }

    pub fn vector(v: &[T]) -> Self {
        Self { n: v.len(), k: 1, coeffs: v.to_vec() }
    }

    /// `v_1 ∧ … ∧ v_k` expanded in blades via `k×k` minors.
    pub fn wedge(n: usize, vectors: &[Vec<T>]) -> Self {
        let k = vectors.len();
        let coeffs = blades(n, k)
            .iter()
            .map(|b| {
                let m = Matrix::from_fn(k, k, |r, c| vectors[r][b[c]].clone());
                determinant(&m)
            })
            .collect();
        Self { n, k, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.n, self.k), (rhs.n, rhs.k));
        Self { n: self.n, k: self.k, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|a| a.mul(s)).collect() }
    }
}

/// Determinant by cofactor-free elimination.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> T {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return T::zero();
        };
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            det = det.neg();
        }
        let piv = a[(c, c)].clone();
        det = det.mul(&piv);
        let inv = piv.inv();
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].mul(&inv);
            for j in c..n {
                let v = a[(i, j)].sub(&f.mul(&a[(c, j)]));
                a[(i, j)] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    #[test]
    fn blade_counts() {
        for n in 0..7 {
            for k in 0..=n {
                assert_eq!(blades(n, k).len(), binomial(n, k));
            }
        }
        assert_eq!(blades(3, 2), alloc::vec![alloc::vec![0, 1], alloc::vec![0, 2], alloc::vec![1, 2]]);
    }

    #[test]
    fn wedge_antisymmetry() {
        let v = alloc::vec![int(1), int(2), int(-1)];
        let w = alloc::vec![int(0), int(3), int(5)];
        let vv = Polyvector::<Rational>::wedge(3, &[v.clone(), v.clone()]);
        assert!(vv.is_zero());
        let vw = Polyvector::<Rational>::wedge(3, &[v.clone(), w.clone()]);
        let wv = Polyvector::<Rational>::wedge(3, &[w, v]);
        assert_eq!(vw, wv.scale(&int(-1)));
        assert_eq!(Polyvector::<Rational>::basis(3, &[2, 0]).coeffs, alloc::vec![int(0), int(-1), int(0)]);
    }
}
