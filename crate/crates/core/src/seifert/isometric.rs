//! Rational isometric structures `(V + V^T, V^-1 V^T)` and the Witt
//! reduction that makes `V` nonsingular first.

use num_rational::BigRational;

use crate::algebra::field::{FieldOps, Rationals};
use crate::algebra::matrix::{from_columns, inverse, mat_mul, nullspace, rank, Matrix};

use super::SeifertMatrix;

type QMatrix = Matrix<BigRational>;

#[derive(Debug, Clone, PartialEq)]
pub struct IsometricStructure {
    /// Nonsingular rational Seifert form Witt-equivalent to the input.
    pub reduced: QMatrix,
    /// `B = V + V^T`.
    pub inner_product: QMatrix,
    /// `T = V^-1 V^T`, an isometry of `B` whose characteristic polynomial is
    /// the Alexander polynomial up to a unit.
    pub transformation: QMatrix,
}

impl IsometricStructure {
    /// Check `T^T B T = B` exactly.
    pub fn preserves_form(&self) -> bool {
        let f = Rationals;
        let t = &self.transformation;
        mat_mul(&f, &mat_mul(&f, &t.transpose(), &self.inner_product), t) == self.inner_product
    }
}

/// Split off isotropic pairs until `V` is nonsingular over Q. For `x` with
/// `V x = 0`, the space `x^⊥ = {y : x^T V y = 0}` contains `x` in the radical
/// of `V` restricted to it, and `V` descends to `x^⊥ / <x>`, two dimensions
/// smaller and Witt-equivalent.
pub fn witt_reduce(v: &QMatrix) -> QMatrix {
    let f = Rationals;
    let mut v = v.clone();
    loop {
        let n = v.rows();
        let kernel = nullspace(&f, &v);
        let Some(x) = kernel.into_iter().next() else {
            return v;
        };
        let xv: Vec<BigRational> = (0..n)
            .map(|j| (0..n).map(|i| &x[i] * &v[(i, j)]).sum())
            .collect();
        let perp = nullspace(&f, &Matrix::from_rows(vec![xv], n));
        let mut chosen = vec![x];
        for b in perp {
            if chosen.len() == n - 1 {
                break;
            }
            let mut trial = chosen.clone();
            trial.push(b);
            if rank(&f, &Matrix::from_rows(trial.clone(), n)) == trial.len() {
                chosen = trial;
            }
        }
        let y = from_columns(&chosen[1..], n);
        v = mat_mul(&f, &mat_mul(&f, &y.transpose(), &v), &y);
    }
}

pub fn isometric_structure(v: &SeifertMatrix) -> IsometricStructure {
    let f = Rationals;
    let reduced = witt_reduce(&v.rational());
    let n = reduced.rows();
    let vt = reduced.transpose();
    let inner_product = Matrix::from_fn(n, n, |i, j| f.add(&reduced[(i, j)], &vt[(i, j)]));
    let vinv = inverse(&f, &reduced).expect("Witt-reduced form is nonsingular");
    let transformation = mat_mul(&f, &vinv, &vt);
    IsometricStructure { reduced, inner_product, transformation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qpoly::{rat, ratio};

    #[test]
    fn trefoil_structure() {
        let v: SeifertMatrix = "-1,1;0,-1".parse().unwrap();
        let s = isometric_structure(&v);
        assert!(s.preserves_form());
        assert_eq!(s.inner_product.to_rows(), vec![vec![rat(-2), rat(1)], vec![rat(1), rat(-2)]]);
        // trace 1, determinant 1: characteristic polynomial t^2 - t + 1
        let t = &s.transformation;
        assert_eq!(&t[(0, 0)] + &t[(1, 1)], rat(1));
        assert_eq!(&t[(0, 0)] * &t[(1, 1)] - &t[(0, 1)] * &t[(1, 0)], rat(1));
    }

    #[test]
    fn slice_block_structure() {
        let v: SeifertMatrix = "0,1;2,0".parse().unwrap();
        let s = isometric_structure(&v);
        assert_eq!(s.inner_product.to_rows(), vec![vec![rat(0), rat(3)], vec![rat(3), rat(0)]]);
        let t = &s.transformation;
        assert_eq!(&t[(0, 0)] + &t[(1, 1)], ratio(5, 2));
        assert_eq!(&t[(0, 0)] * &t[(1, 1)] - &t[(0, 1)] * &t[(1, 0)], rat(1));
    }

    #[test]
    fn singular_form_reduces() {
        // Trefoil plus a trivial hyperbolic pair with V = [[0,1],[0,0]].
        let v: SeifertMatrix = "-1,1,0,0;0,-1,0,0;0,0,0,1;0,0,0,0".parse().unwrap();
        let s = isometric_structure(&v);
        assert_eq!(s.reduced.rows(), 2);
        assert!(s.preserves_form());
    }
}
