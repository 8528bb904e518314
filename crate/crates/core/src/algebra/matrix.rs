//! Dense matrices and exact linear algebra over any [`FieldOps`] context.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::FieldOps;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, fill: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![fill; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors. Panics on ragged input; `cols` is used for the
    /// empty case.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == c), "ragged matrix rows");
        Matrix {
            rows: n,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn block_sum(&self, other: &Matrix<T>, zero: T) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                zero.clone()
            }
        })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// Counts of positive, negative and zero eigenvalues of a hermitian form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn mat_mul<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in product");
    let mut out = Matrix::new(a.rows, b.cols, f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let t = f.mul(aik, &b[(k, j)]);
                out[(i, j)] = f.add(&out[(i, j)], &t);
            }
        }
    }
    out
}

pub fn mat_add<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert!(a.rows == b.rows && a.cols == b.cols);
    Matrix::from_fn(a.rows, a.cols, |i, j| f.add(&a[(i, j)], &b[(i, j)]))
}

pub fn mat_scale<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, k: &F::Elem) -> Matrix<F::Elem> {
    a.map(|x| f.mul(x, k))
}

/// Conjugate transpose.
pub fn adjoint<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.cols, a.rows, |i, j| f.conj(&a[(j, i)]))
}

/// Inertia of a hermitian matrix by congruence diagonalization. A zero
/// diagonal with a nonzero off-diagonal entry `h_ij` is handled by replacing
/// `e_i` with `e_i + conj(h_ij) e_j`, whose norm is `2|h_ij|^2 > 0`.
pub fn inertia<F: FieldOps>(f: &F, h: &Matrix<F::Elem>) -> Inertia {
    assert!(h.is_square());
    let n = h.rows;
    let mut a = h.clone();
    let mut res = Inertia::default();
    let mut k = 0;
    while k < n {
        let piv = (k..n).find(|&i| !f.is_zero(&a[(i, i)]));
        let piv = match piv {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !f.is_zero(&a[(i, j)]));
                let Some((i, j)) = off else {
                    res.zero += n - k;
                    break;
                };
                let lambda = f.conj(&a[(i, j)]);
                let lambda_bar = f.conj(&lambda);
                for r in 0..n {
                    let t = f.mul(&a[(r, j)], &lambda);
                    a[(r, i)] = f.add(&a[(r, i)], &t);
                }
                for c in 0..n {
                    let t = f.mul(&a[(j, c)], &lambda_bar);
                    a[(i, c)] = f.add(&a[(i, c)], &t);
                }
                i
            }
        };
        a.swap_rows(k, piv);
        a.swap_cols(k, piv);
        let d = a[(k, k)].clone();
        match f.real_sign(&d) {
            Ordering::Greater => res.positive += 1,
            Ordering::Less => res.negative += 1,
            Ordering::Equal => unreachable!("pivot is nonzero"),
        }
        let d_inv = f.inv(&d);
        for j in k + 1..n {
            if f.is_zero(&a[(j, k)]) {
                continue;
            }
            let l = f.mul(&a[(j, k)], &d_inv);
            let l_bar = f.conj(&l);
            for c in k..n {
                let t = f.mul(&l, &a[(k, c)]);
                a[(j, c)] = f.sub(&a[(j, c)], &t);
            }
            for r in k..n {
                let t = f.mul(&a[(r, k)], &l_bar);
                a[(r, j)] = f.sub(&a[(r, j)], &t);
            }
        }
        k += 1;
    }
    res
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: FieldOps>(f: &F, a: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(&a[(i, c)])) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(&a[(r, c)]);
        for j in c..a.cols {
            a[(r, j)] = f.mul(&a[(r, j)], &inv);
        }
        for i in 0..a.rows {
            if i == r || f.is_zero(&a[(i, c)]) {
                continue;
            }
            let l = a[(i, c)].clone();
            for j in c..a.cols {
                let t = f.mul(&l, &a[(r, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, &mut a.clone()).len()
}

/// Basis of the right kernel `{x : a x = 0}`.
pub fn nullspace<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); a.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[(r, fc)]);
            }
            v
        })
        .collect()
}

pub fn inverse<F: FieldOps>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert!(a.is_square());
    let n = a.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
}

/// Matrix whose columns are the given vectors.
pub fn from_columns<T: Clone>(cols: &[Vec<T>], rows: usize) -> Matrix<T> {
    Matrix::from_rows(cols.to_vec(), rows).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{CyclotomicField, Rationals};
    use crate::algebra::qpoly::{rat, QPoly};
    use num_rational::BigRational;

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), 0)
    }

    #[test]
    fn inertia_of_symmetric_forms() {
        let f = Rationals;
        assert_eq!(inertia(&f, &qm(&[&[-2, 1], &[1, -2]])).signature(), -2);
        let hyp = inertia(&f, &qm(&[&[0, 3], &[3, 0]]));
        assert_eq!((hyp.positive, hyp.negative, hyp.zero), (1, 1, 0));
        let deg = inertia(&f, &qm(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]));
        assert_eq!((deg.positive, deg.negative, deg.zero), (1, 1, 1));
    }

    #[test]
    fn hermitian_inertia_over_cyclotomic_field() {
        // [[0, i], [-i, 0]] over Q(zeta_4) has signature 0.
        let f = CyclotomicField::new(1, 4);
        let i = f.zeta();
        let m = Matrix::from_rows(vec![vec![QPoly::zero(), i.clone()], vec![f.neg(&i), QPoly::zero()]], 2);
        let r = inertia(&f, &m);
        assert_eq!((r.positive, r.negative), (1, 1));
    }

    #[test]
    fn nullspace_and_inverse() {
        let f = Rationals;
        let a = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&f, &a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let x = from_columns(std::slice::from_ref(v), 3);
            assert!(mat_mul(&f, &a, &x).to_rows().iter().flatten().all(|e| e == &rat(0)));
        }
        let b = qm(&[&[2, 1], &[1, 1]]);
        let bi = inverse(&f, &b).unwrap();
        assert_eq!(mat_mul(&f, &b, &bi), identity(&f, 2));
        assert!(inverse(&f, &qm(&[&[1, 2], &[2, 4]])).is_none());
    }
}
