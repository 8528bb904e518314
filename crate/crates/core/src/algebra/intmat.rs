//! Integer matrices: fraction-free determinants and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;

pub type IntMatrix = Matrix<BigInt>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let c = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        c,
    )
}

pub fn int_identity(n: usize) -> IntMatrix {
    Matrix::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).map(|k| &a[(i, k)] * &b[(k, j)]).sum()
    })
}

pub fn to_rational(a: &IntMatrix) -> Matrix<BigRational> {
    a.map(|x| BigRational::from_integer(x.clone()))
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = v / &prev;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

/// Smith normal form `U A W = D` with `U`, `W` unimodular. `u_inv` is
/// maintained alongside `u` so that cokernel generators can be read off as
/// the columns of `U^{-1}`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Diagonal entries, nonnegative, each dividing the next; length
    /// `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub w: IntMatrix,
}

impl SmithForm {
    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one() && !d.is_zero()).cloned().collect()
    }
}

struct Smith {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    w: IntMatrix,
}

impl Smith {
    // row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.a.cols() {
            let v = q * &self.a[(t, j)];
            self.a[(i, j)] -= v;
        }
        for j in 0..self.u.cols() {
            let v = q * &self.u[(t, j)];
            self.u[(i, j)] -= v;
        }
        for r in 0..self.u_inv.rows() {
            let v = q * &self.u_inv[(r, i)];
            self.u_inv[(r, t)] += v;
        }
    }

    // col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for i in 0..self.a.rows() {
            let v = q * &self.a[(i, t)];
            self.a[(i, j)] -= v;
        }
        for i in 0..self.w.rows() {
            let v = q * &self.w[(i, t)];
            self.w[(i, j)] -= v;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.w.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.cols() {
            self.a[(i, j)] = -self.a[(i, j)].clone();
        }
        for j in 0..self.u.cols() {
            self.u[(i, j)] = -self.u[(i, j)].clone();
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, i)] = -self.u_inv[(r, i)].clone();
        }
    }

    /// Smallest nonzero |entry| in the trailing block, first in row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form with the deterministic pivot rule: at each stage the
/// smallest nonzero absolute value in the trailing block, ties broken
/// row-major.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (r, c) = (a.rows(), a.cols());
    let mut s = Smith {
        a: a.clone(),
        u: int_identity(r),
        u_inv: int_identity(r),
        w: int_identity(c),
    };
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = s.pivot(t) else {
                break;
            };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            let p = s.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = s.a[(i, t)].div_floor(&p);
                if !q.is_zero() {
                    s.row_sub(i, t, &q);
                }
                clean &= s.a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = s.a[(t, j)].div_floor(&p);
                if !q.is_zero() {
                    s.col_sub(j, t, &q);
                }
                clean &= s.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => s.row_sub(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if s.a[(t, t)].is_negative() {
            s.negate_row(t);
        }
    }
    let diagonal = (0..r.min(c)).map(|i| s.a[(i, i)].clone()).collect();
    SmithForm {
        diagonal,
        u: s.u,
        u_inv: s.u_inv,
        w: s.w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_expansion() {
        assert_eq!(determinant(&int_matrix(&[vec![-2, 1], vec![1, -2]])), BigInt::from(3));
        let m = int_matrix(&[vec![0, 2, 1], vec![3, 0, 4], vec![1, 1, 0]]);
        // 0*(0-4) - 2*(0-4) + 1*(3-0) = 11
        assert_eq!(determinant(&m), BigInt::from(11));
        assert_eq!(determinant(&int_matrix(&[])), BigInt::one());
    }

    #[test]
    fn smith_form_reconstructs() {
        let a = int_matrix(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = int_mul(&int_mul(&s.u, &a), &s.w);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[(i, j)], want);
            }
        }
        assert_eq!(int_mul(&s.u, &s.u_inv), int_identity(3));
    }

    #[test]
    fn trefoil_double_cover() {
        let s = smith_normal_form(&int_matrix(&[vec![-2, 1], vec![1, -2]]));
        assert_eq!(s.torsion(), vec![BigInt::from(3)]);
    }
}
