// SPDX-License-Identifier: Apache-2.0

//! Kernel, rank and solve over exact scalars.
//!
//! Dense elimination uses a deterministic pivot rule: for each column the
//! first row (top to bottom) with a nonzero entry. Rank is computed by
//! fraction-free (Bareiss) elimination on a denominator-cleared copy.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].inv();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = a[(r, j)].mul(&inv);
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    a[(i, j)] = a[(i, j)].sub(&f.mul(&a[(r, j)]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the null space, one column per free variable.
///
/// Each basis column has a one in its free coordinate and zeros in the other
/// free coordinates.
pub fn kernel<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let cols = m.cols();
    let (red, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = T::one();
        for (r, &p) in pivots.iter().enumerate() {
            out[(p, k)] = red[(r, f)].neg();
        }
    }
    out
}

/// Solves `m·x = rhs`, returning the solution with free variables set to zero.
pub fn solve_linear<T: Scalar>(m: &Matrix<T>, rhs: &[T]) -> Result<Vec<T>> {
    if rhs.len() != m.rows() {
        return Err(Error::Shape { expected: m.rows(), found: rhs.len() });
    }
    let aug = m.hstack(&Matrix::column_vector(rhs));
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return Err(Error::Inconsistent);
    }
    let mut x = alloc::vec![T::zero(); m.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[(r, m.cols())].clone();
    }
    Ok(x)
}

/// Exact rank by fraction-free elimination.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    // Clear denominators row by row so the elimination stays integral.
    let mut a: Vec<Vec<T>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let mut l = num_bigint::BigInt::from(1);
            for x in row {
                l = num_integer::Integer::lcm(&l, &x.denominator_lcm());
            }
            let k = T::from_rational(crate::scalar::Rational::from_integer(l));
            row.iter().map(|x| x.mul(&k)).collect()
        })
        .collect();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c + 1..cols {
                let v = pivot.mul(&a[i][j]).sub(&f.mul(&a[r][j]));
                a[i][j] = v.div(&prev);
            }
            a[i][c] = T::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Rank of a list of vectors (as rows).
pub fn rank_of_vectors<T: Scalar>(vs: &[Vec<T>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vs.to_vec()))
}

/// Linearly independent subset of the columns of `m`, as a matrix.
pub fn column_space<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let (_, pivots) = rref(m);
    m.select_columns(&pivots)
}

/// Basis of the row space of the given vectors in reduced echelon form.
pub fn span_basis<T: Scalar>(vs: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vs.to_vec());
    debug_assert_eq!(m.cols(), dim);
    let (red, pivots) = rref(&m);
    (0..pivots.len()).map(|r| red.row(r).to_vec()).collect()
}

/// Standard basis vectors completing the columns of `sub` (full column rank)
/// to a basis of the ambient space. Returned as columns of a matrix.
pub fn complement<T: Scalar>(sub: &Matrix<T>) -> Matrix<T> {
    let n = sub.rows();
    let with_std = sub.hstack(&Matrix::identity(n));
    let (_, pivots) = rref(&with_std);
    let extra: Vec<usize> = pivots.into_iter().filter(|&p| p >= sub.cols()).map(|p| p - sub.cols()).collect();
    Matrix::identity(n).select_columns(&extra)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.rows();
    if !m.is_square() {
        return None;
    }
    let (red, pivots) = rref(&m.hstack(&Matrix::identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| red[(i, n + j)].clone()))
}

type SparseRow<T> = Vec<(usize, T)>;

/// `a − k·b` for sorted sparse rows.
fn sparse_axpy<T: Scalar>(a: &[(usize, T)], k: &T, b: &[(usize, T)]) -> SparseRow<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, k.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&k.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally reduced homogeneous linear system with sparse rows.
///
/// Used for constraint systems in `N²` unknowns (bilinear forms, commutants)
/// where each equation touches only a handful of entries. Rows are kept in
/// reduced echelon form at all times.
#[derive(Clone, Debug)]
pub struct SparseSystem<T> {
    unknowns: usize,
    rows: Vec<SparseRow<T>>,
    pivot_row: BTreeMap<usize, usize>,
}

impl<T: Scalar> SparseSystem<T> {
    pub fn new(unknowns: usize) -> Self {
        Self { unknowns, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coeff·x_col = 0`. Returns false when the equation was
    /// already implied by the previous ones.
    pub fn add_equation(&mut self, terms: impl IntoIterator<Item = (usize, T)>) -> bool {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (c, v) in terms {
            assert!(c < self.unknowns, "unknown index out of range");
            if v.is_zero() {
                continue;
            }
            let e = acc.entry(c).or_insert_with(T::zero);
            *e = e.add(&v);
        }
        let mut eq: SparseRow<T> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let hits: Vec<(usize, T)> = eq.iter().filter(|(c, _)| self.pivot_row.contains_key(c)).cloned().collect();
        for (c, v) in hits {
            let r = self.pivot_row[&c];
            eq = sparse_axpy(&eq, &v, &self.rows[r]);
        }
        let Some((pc, lead)) = eq.first().cloned() else {
            return false;
        };
        let inv = lead.inv();
        for e in eq.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pc, |e| e.0) {
                let k = row[pos].1.clone();
                *row = sparse_axpy(row, &k, &eq);
            }
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.rows.push(eq);
        true
    }

    /// Null-space basis; each vector has a one in its free coordinate.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let free: Vec<usize> = (0..self.unknowns).filter(|c| !self.pivot_row.contains_key(c)).collect();
        let mut free_pos = alloc::vec![usize::MAX; self.unknowns];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut out: Vec<Vec<T>> = free
            .iter()
            .map(|&f| {
                let mut v = alloc::vec![T::zero(); self.unknowns];
                v[f] = T::one();
                v
            })
            .collect();
        for (&p, &r) in &self.pivot_row {
            for (c, val) in &self.rows[r] {
                if *c != p {
                    out[free_pos[*c]][p] = val.neg();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;
    use crate::scalar::{int, ratio, Rational};

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&ExactMatrix::identity(3)).cols(), 0);
        assert_eq!(kernel(&ExactMatrix::zeros(2, 3)).cols(), 3);
        let k = kernel(&ExactMatrix::from_int_rows(&[&[1, 1], &[2, 2]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), alloc::vec![int(-1), int(1)]);
    }

    #[test]
    fn solve_examples() {
        let x = solve_linear(&ExactMatrix::identity(2), &[int(5), int(7)]).unwrap();
        assert_eq!(x, alloc::vec![int(5), int(7)]);
        let x = solve_linear(&ExactMatrix::from_int_rows(&[&[2]]), &[int(1)]).unwrap();
        assert_eq!(x, alloc::vec![ratio(1, 2)]);
        let e = solve_linear(&ExactMatrix::from_int_rows(&[&[1], &[1]]), &[int(0), int(1)]);
        assert_eq!(e, Err(Error::Inconsistent));
        assert!(matches!(solve_linear(&ExactMatrix::identity(2), &[int(1)]), Err(Error::Shape { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::identity(5)), 5);
        assert_eq!(rank(&ExactMatrix::zeros(3, 4)), 0);
        let u = ExactMatrix::column_vector(&[int(1), ratio(-2, 3), int(4)]);
        let v = ExactMatrix::column_vector(&[int(3), int(1), ratio(1, 5)]);
        assert_eq!(rank(&u.mul(&v.transpose())), 1);
    }

    #[test]
    fn sparse_matches_dense() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2, 0, -1], &[0, 1, 1, 0], &[1, 3, 1, -1]]);
        let mut sys = SparseSystem::<Rational>::new(4);
        for r in 0..m.rows() {
            sys.add_equation(m.row(r).iter().cloned().enumerate());
        }
        assert_eq!(sys.rank(), rank(&m));
        let k = sys.kernel();
        assert_eq!(k.len(), kernel(&m).cols());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x == &int(0)));
        }
    }

    #[test]
    fn inverse_and_complement() {
        let m = ExactMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&ExactMatrix::from_int_rows(&[&[1, 1], &[1, 1]])).is_none());
        let sub = ExactMatrix::column_vector(&[int(1), int(1), int(0)]);
        let c = complement(&sub);
        assert_eq!(c.cols(), 2);
        assert_eq!(rank(&sub.hstack(&c)), 3);
    }
}
