//! Dense matrices over any [`Scalar`] with the small set of exact-friendly
//! operations the rest of the crate needs: LU determinants and solves,
//! Pfaffians of skew-symmetric matrices, adjugates, and exhaustive minor
//! scans for total-positivity checks.
//!
//! Everything here is written for desk-scale sizes (n well under 100); the
//! exact rational channel dominates the cost profile, not asymptotics.

use crate::scalar::{Bf, Rat, Scalar};

/// Scalars with a real sign, i.e. the non-complex channels.
pub trait RealScalar: Scalar {
    fn s_sign(&self) -> i32;
    /// Lift into the big-float channel (for square roots and evaluation).
    fn s_to_bf(&self) -> Bf;
}

impl RealScalar for Rat {
    fn s_sign(&self) -> i32 {
        self.signum()
    }
    fn s_to_bf(&self) -> Bf {
        self.to_bf()
    }
}

impl RealScalar for Bf {
    fn s_sign(&self) -> i32 {
        self.signum()
    }
    fn s_to_bf(&self) -> Bf {
        self.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::s_zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::s_one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::s_zero();
            for k in 0..self.cols {
                acc = acc.s_add(&self.at(i, k).s_mul(other.at(k, j)));
            }
            acc
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }

    /// Determinant via LU with partial pivoting. Exact over rationals.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::s_one();
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut det = T::s_one();
        let mut negate = false;
        for k in 0..n {
            let mut piv = k;
            for r in (k + 1)..n {
                if a[idx(r, k)].s_abs_cmp(&a[idx(piv, k)]) == std::cmp::Ordering::Greater {
                    piv = r;
                }
            }
            if a[idx(piv, k)].s_is_zero() {
                return T::s_zero();
            }
            if piv != k {
                for j in 0..n {
                    a.swap(idx(k, j), idx(piv, j));
                }
                negate = !negate;
            }
            let pivot = a[idx(k, k)].clone();
            det = det.s_mul(&pivot);
            for r in (k + 1)..n {
                if a[idx(r, k)].s_is_zero() {
                    continue;
                }
                let factor = a[idx(r, k)].s_div(&pivot);
                for j in (k + 1)..n {
                    let upd = a[idx(r, j)].s_sub(&factor.s_mul(&a[idx(k, j)]));
                    a[idx(r, j)] = upd;
                }
                a[idx(r, k)] = T::s_zero();
            }
        }
        if negate {
            det.s_neg()
        } else {
            det
        }
    }

    /// All leading principal minors D_1..D_n from a single elimination
    /// sweep without pivoting: D_k is the product of the first k pivots.
    /// Returns `None` if some leading minor vanishes (fall back to
    /// per-size `determinant` in that case).
    pub fn leading_minors(&self) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols, "leading minors of non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut minors = Vec::with_capacity(n);
        let mut prod = T::s_one();
        for k in 0..n {
            let pivot = a[idx(k, k)].clone();
            if pivot.s_is_zero() {
                return None;
            }
            prod = prod.s_mul(&pivot);
            minors.push(prod.clone());
            for r in (k + 1)..n {
                if a[idx(r, k)].s_is_zero() {
                    continue;
                }
                let factor = a[idx(r, k)].s_div(&pivot);
                for j in (k + 1)..n {
                    let upd = a[idx(r, j)].s_sub(&factor.s_mul(&a[idx(k, j)]));
                    a[idx(r, j)] = upd;
                }
            }
        }
        Some(minors)
    }

    /// Solves `self * x = rhs`; `None` when the matrix is singular.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, rhs.len(), "rhs length mismatch");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut b = rhs.to_vec();
        let idx = |i: usize, j: usize| i * n + j;
        for k in 0..n {
            let mut piv = k;
            for r in (k + 1)..n {
                if a[idx(r, k)].s_abs_cmp(&a[idx(piv, k)]) == std::cmp::Ordering::Greater {
                    piv = r;
                }
            }
            if a[idx(piv, k)].s_is_zero() {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    a.swap(idx(k, j), idx(piv, j));
                }
                b.swap(k, piv);
            }
            let pivot = a[idx(k, k)].clone();
            for r in (k + 1)..n {
                if a[idx(r, k)].s_is_zero() {
                    continue;
                }
                let factor = a[idx(r, k)].s_div(&pivot);
                for j in (k + 1)..n {
                    let upd = a[idx(r, j)].s_sub(&factor.s_mul(&a[idx(k, j)]));
                    a[idx(r, j)] = upd;
                }
                let upd = b[r].s_sub(&factor.s_mul(&b[k]));
                b[r] = upd;
                a[idx(r, k)] = T::s_zero();
            }
        }
        let mut x = vec![T::s_zero(); n];
        for k in (0..n).rev() {
            let mut acc = b[k].clone();
            for j in (k + 1)..n {
                acc = acc.s_sub(&a[idx(k, j)].s_mul(&x[j]));
            }
            x[k] = acc.s_div(&a[idx(k, k)]);
        }
        Some(x)
    }

    /// Inverse via column-wise solves; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![T::s_zero(); n];
            e[j] = T::s_one();
            cols.push(self.solve(&e)?);
        }
        Some(Mat::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    /// Adjugate through signed cofactors; exact and defined even when the
    /// matrix is singular (needed for the even-size skew adjugate identity).
    pub fn adjugate(&self) -> Self {
        assert_eq!(self.rows, self.cols, "adjugate of non-square matrix");
        let n = self.rows;
        let all: Vec<usize> = (0..n).collect();
        Mat::from_fn(n, n, |i, j| {
            // adj[i][j] = (-1)^{i+j} * minor with row j and column i removed
            let rows: Vec<usize> = all.iter().copied().filter(|&r| r != j).collect();
            let cols: Vec<usize> = all.iter().copied().filter(|&c| c != i).collect();
            let m = self.submatrix(&rows, &cols).determinant();
            if (i + j) % 2 == 0 {
                m
            } else {
                m.s_neg()
            }
        })
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != self.at(j, i).s_neg() {
                    return false;
                }
            }
        }
        true
    }
}

/// Pfaffian of an even-dimensional skew-symmetric matrix by the perfect
/// matching expansion. Exact in every channel; sizes up to 12 are fine
/// ((12-1)!! = 10395 terms).
pub fn pfaffian<T: Scalar>(m: &Mat<T>) -> T {
    assert_eq!(m.nrows(), m.ncols(), "pfaffian of non-square matrix");
    assert!(m.nrows() % 2 == 0, "pfaffian needs even dimension");
    assert!(m.nrows() <= 12, "matching expansion limited to n <= 12");
    assert!(m.is_skew_symmetric(), "pfaffian of non-skew matrix");
    let idx: Vec<usize> = (0..m.nrows()).collect();
    pf_rec(m, &idx)
}

fn pf_rec<T: Scalar>(m: &Mat<T>, idx: &[usize]) -> T {
    if idx.is_empty() {
        return T::s_one();
    }
    let i0 = idx[0];
    let mut acc = T::s_zero();
    for (t, &j) in idx.iter().enumerate().skip(1) {
        let entry = m.at(i0, j);
        if entry.s_is_zero() {
            continue;
        }
        let rest: Vec<usize> =
            idx.iter().copied().filter(|&r| r != i0 && r != j).collect();
        let term = entry.s_mul(&pf_rec(m, &rest));
        acc = if t % 2 == 1 { acc.s_add(&term) } else { acc.s_sub(&term) };
    }
    acc
}

/// Calls `f` with every k-element ascending subset of `0..n`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for v in start..=(n - need) {
            cur.push(v);
            rec(n, k, v + 1, cur, f);
            cur.pop();
        }
    }
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut f);
}

/// Outcome of an exhaustive minor scan.
#[derive(Clone, Debug)]
pub struct MinorScan {
    pub checked: usize,
    /// First offending minor, as (row set, column set, sign of determinant).
    pub failure: Option<(Vec<usize>, Vec<usize>, i32)>,
}

impl MinorScan {
    pub fn all_positive(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks strict positivity of every square minor (all orders, all ordered
/// row/column subsets). 12869 determinants for an 8×8 input.
pub fn scan_minors_positive<T: RealScalar>(m: &Mat<T>) -> MinorScan {
    scan_minors_signed(m, |_| 1)
}

/// Checks that every k×k minor has sign `expected_sign(k)` (strictly, zero
/// minors fail). Used for the sign-regular kernels as well as plain total
/// positivity.
pub fn scan_minors_signed<T: RealScalar>(
    m: &Mat<T>,
    expected_sign: impl Fn(usize) -> i32,
) -> MinorScan {
    let n = m.nrows().min(m.ncols());
    let mut checked = 0usize;
    let mut failure = None;
    'outer: for k in 1..=n {
        let want = expected_sign(k);
        let mut row_sets = Vec::new();
        for_each_subset(m.nrows(), k, |s| row_sets.push(s.to_vec()));
        let mut col_sets = Vec::new();
        for_each_subset(m.ncols(), k, |s| col_sets.push(s.to_vec()));
        for rs in &row_sets {
            for cs in &col_sets {
                checked += 1;
                let sign = m.submatrix(rs, cs).determinant().s_sign();
                if sign != want {
                    failure = Some((rs.clone(), cs.clone(), sign));
                    break 'outer;
                }
            }
        }
    }
    MinorScan { checked, failure }
}
