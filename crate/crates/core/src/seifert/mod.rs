//! Seifert matrices and the invariants read off from them: the Alexander
//! polynomial, classical, Tristram-Levine and Milnor signatures, the
//! isometric structure, and the homology of the double branched cover.

mod isometric;
mod signature;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::field::Rationals;
use crate::algebra::intmat::{determinant, smith_normal_form, to_rational, IntMatrix, SmithForm};
use crate::algebra::matrix::{inertia, Matrix};
use crate::algebra::qpoly::QPoly;
use crate::algebra::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::laurent::{normalize, LaurentPolynomial, NormalizedAlexander};

pub use isometric::{isometric_structure, witt_reduce, IsometricStructure};
pub use signature::{
    milnor_signatures, milnor_theta_signature, root_angles, signature_function,
    tristram_levine_signature, Jump, MilnorSignature, SignatureFunction,
};

/// An integer square matrix `V` with `det(V - V^T) = ±1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

pub fn validate(v: IntMatrix) -> Result<SeifertMatrix> {
    if !v.is_square() {
        return Err(Error::InvalidSeifert(format!(
            "matrix is {}x{}, not square",
            v.rows(),
            v.cols()
        )));
    }
    let n = v.rows();
    let skew = Matrix::from_fn(n, n, |i, j| &v[(i, j)] - &v[(j, i)]);
    let d = determinant(&skew);
    if d.abs() != BigInt::one() {
        return Err(Error::InvalidSeifert(format!("det(V - V^T) = {d}, expected ±1")));
    }
    Ok(SeifertMatrix { v })
}

impl SeifertMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::InvalidSeifert("matrix rows have inconsistent lengths".into()));
        }
        validate(crate::algebra::intmat::int_matrix(rows))
    }

    /// The 0x0 form of the unknot.
    pub fn unknot() -> Self {
        SeifertMatrix { v: Matrix::new(0, 0, BigInt::zero()) }
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    /// Genus of the surface the matrix comes from; an upper bound for the
    /// knot genus.
    pub fn genus_bound(&self) -> usize {
        self.size() / 2
    }

    /// Seifert form of the connected sum.
    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        SeifertMatrix { v: self.v.block_sum(&other.v, BigInt::zero()) }
    }

    /// `-V^T`: the concordance inverse (reversed mirror image).
    pub fn concordance_inverse(&self) -> SeifertMatrix {
        SeifertMatrix { v: self.v.transpose().map(|x| -x) }
    }

    /// Congruent form `P^T V P`; fails unless `det P = ±1`.
    pub fn congruent(&self, p: &IntMatrix) -> Result<SeifertMatrix> {
        if determinant(p).abs() != BigInt::one() {
            return Err(Error::Domain("change of basis is not unimodular".into()));
        }
        let pt = p.transpose();
        let w = crate::algebra::intmat::int_mul(&crate::algebra::intmat::int_mul(&pt, &self.v), p);
        validate(w)
    }

    /// `V + V^T`, a presentation matrix for the double branched cover.
    pub fn symmetrized(&self) -> IntMatrix {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| &self.v[(i, j)] + &self.v[(j, i)])
    }

    pub fn rational(&self) -> Matrix<BigRational> {
        to_rational(&self.v)
    }

    pub fn to_text(&self) -> String {
        self.v
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl FromStr for SeifertMatrix {
    type Err = Error;

    /// Rows separated by `;`, entries by `,`: `"0,1;2,0"`. The empty string
    /// is the unknot.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(SeifertMatrix::unknot());
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry {x:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SeifertMatrix::from_rows(&rows)
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seifert[{}]", self.to_text())
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Lagrange interpolation through `(x_i, y_i)` over Q.
fn interpolate(points: &[(i64, BigInt)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPoly::one();
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &QPoly::from_i64(&[-xj, 1]);
                denom *= BigInt::from(xi - xj);
            }
        }
        acc = &acc + &basis.scale(&BigRational::new(yi.clone(), denom));
    }
    acc
}

/// `det(V - t V^T)` as an integer polynomial, by evaluation at `t = 0..n`
/// and interpolation.
pub fn alexander_determinant(v: &SeifertMatrix) -> ZPoly {
    let n = v.size();
    let m = v.entries();
    let points: Vec<(i64, BigInt)> = (0..=n as i64)
        .map(|t| {
            let tb = BigInt::from(t);
            let a = Matrix::from_fn(n, n, |i, j| &m[(i, j)] - &tb * &m[(j, i)]);
            (t, determinant(&a))
        })
        .collect();
    let q = interpolate(&points);
    ZPoly::new(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

pub fn alexander_polynomial(v: &SeifertMatrix) -> NormalizedAlexander {
    let z = alexander_determinant(v);
    normalize(&LaurentPolynomial::from_zpoly(&z, 0)).expect("det(V - tV^T) is nonzero at t = 1")
}

/// Signature of `V + V^T`.
pub fn classical_signature(v: &SeifertMatrix) -> i64 {
    inertia(&Rationals, &to_rational(&v.symmetrized())).signature()
}

/// First homology of the double branched cover, presented by `V + V^T`.
#[derive(Debug, Clone)]
pub struct CoverHomology {
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<BigInt>,
    pub smith: SmithForm,
}

impl CoverHomology {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

impl fmt::Display for CoverHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn branched_cover_homology(v: &SeifertMatrix) -> Result<CoverHomology> {
    let smith = smith_normal_form(&v.symmetrized());
    if smith.diagonal.iter().any(Zero::is_zero) {
        return Err(Error::Domain("det(V + V^T) = 0: the double branched cover has infinite homology".into()));
    }
    Ok(CoverHomology { invariant_factors: smith.torsion(), smith })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> SeifertMatrix {
        "-1,1;0,-1".parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(SeifertMatrix::from_rows(&[vec![-1, 1], vec![0, -1]]).is_ok());
        assert!(SeifertMatrix::from_rows(&[vec![0, 1], vec![2, 0]]).is_ok());
        assert!(matches!(
            SeifertMatrix::from_rows(&[vec![1, 1], vec![1, 1]]),
            Err(Error::InvalidSeifert(_))
        ));
        assert!(matches!("1,2,3".parse::<SeifertMatrix>(), Err(Error::InvalidSeifert(_))));
        assert!(matches!("1,x;0,1".parse::<SeifertMatrix>(), Err(Error::Parse(_))));
    }

    #[test]
    fn alexander_examples() {
        let slice: SeifertMatrix = "0,1;2,0".parse().unwrap();
        assert_eq!(alexander_polynomial(&slice).to_text(), "2,-5,2");
        let granny = trefoil().block_sum(&trefoil());
        assert_eq!(alexander_polynomial(&granny).to_text(), "1,-2,3,-2,1");
        assert_eq!(alexander_polynomial(&SeifertMatrix::unknot()).to_text(), "1");
    }

    #[test]
    fn classical_signature_examples() {
        assert_eq!(classical_signature(&trefoil()), -2);
        assert_eq!(classical_signature(&"0,1;2,0".parse().unwrap()), 0);
        let granny = trefoil().block_sum(&trefoil());
        assert_eq!(classical_signature(&granny), -4);
        assert_eq!(classical_signature(&granny.concordance_inverse()), 4);
    }

    #[test]
    fn cover_homology_examples() {
        let slice: SeifertMatrix = "0,1;2,0".parse().unwrap();
        let h = branched_cover_homology(&slice).unwrap();
        assert_eq!(h.to_string(), "Z3 + Z3");
        assert_eq!(branched_cover_homology(&trefoil()).unwrap().to_string(), "Z3");
        let three = slice.block_sum(&slice).block_sum(&slice);
        assert_eq!(branched_cover_homology(&three).unwrap().order(), BigInt::from(729));
    }
}
