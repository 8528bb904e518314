//! Exact fields used by the signature computations: the rationals, real number
//! fields `Q(alpha)` with a chosen real embedding, and cyclotomic fields with
//! complex conjugation.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qpoly::{rat, QPoly};
use super::real_algebraic::{root_near, RealAlgebraic};
use super::zpoly::ZPoly;

/// Field operations carried by a context object, so that elements of number
/// fields need not store their modulus.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Involution: complex conjugation for CM fields, identity for real fields.
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    /// Sign of a self-conjugate element under the fixed embedding.
    fn real_sign(&self, a: &Self::Elem) -> Ordering;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_rational(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn conj(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn real_sign(&self, a: &BigRational) -> Ordering {
        a.cmp(&BigRational::zero())
    }
}

/// `Q[x]/(modulus)` with modulus irreducible.
#[derive(Debug, Clone)]
struct SimpleExtension {
    modulus: QPoly,
}

impl SimpleExtension {
    fn reduce(&self, a: QPoly) -> QPoly {
        if a.deg() < self.modulus.deg() {
            a
        } else {
            a.rem(&self.modulus)
        }
    }

    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(a * b)
    }

    fn inv(&self, a: &QPoly) -> QPoly {
        a.inverse_mod(&self.modulus)
            .expect("inverting zero in a number field")
    }
}

/// The real number field `Q(alpha)`, embedded in R by sending the generator
/// to a specific real root of its minimal polynomial.
#[derive(Debug, Clone)]
pub struct RealNumberField {
    ext: SimpleExtension,
    root: RealAlgebraic,
}

impl RealNumberField {
    /// `root` must be a root of the irreducible polynomial it carries.
    pub fn new(root: RealAlgebraic) -> Self {
        let modulus = root.poly().monic();
        RealNumberField {
            ext: SimpleExtension { modulus },
            root,
        }
    }

    pub fn generator(&self) -> QPoly {
        self.ext.reduce(QPoly::x())
    }

    pub fn root(&self) -> &RealAlgebraic {
        &self.root
    }
}

impl FieldOps for RealNumberField {
    type Elem = QPoly;

    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn one(&self) -> QPoly {
        QPoly::one()
    }
    fn from_rational(&self, r: &BigRational) -> QPoly {
        QPoly::constant(r.clone())
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a + b
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a - b
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.ext.mul(a, b)
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        -a.clone()
    }
    fn inv(&self, a: &QPoly) -> QPoly {
        self.ext.inv(a)
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn conj(&self, a: &QPoly) -> QPoly {
        a.clone()
    }
    fn real_sign(&self, a: &QPoly) -> Ordering {
        if a.deg() == 0 {
            return a.coeff(0).cmp(&BigRational::zero());
        }
        self.root.sign_of(a)
    }
}

/// Integer cyclotomic polynomial `Phi_m`.
pub fn cyclotomic_polynomial(m: u64) -> ZPoly {
    assert!(m >= 1);
    let mut p = ZPoly::monomial(BigInt::one(), m as usize) - ZPoly::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p
                .div_exact(&cyclotomic_polynomial(d))
                .expect("cyclotomic divisibility");
        }
    }
    p
}

/// For a palindromic `p` of degree `2d`, the polynomial `q` of degree `d` with
/// `p(t) = t^d q(t + 1/t)`. Returns `None` when `p` is not palindromic of even
/// degree.
pub fn trace_polynomial(p: &ZPoly) -> Option<QPoly> {
    let n = p.degree()?;
    if n % 2 == 1 {
        return None;
    }
    let c = p.coeffs();
    if (0..=n).any(|i| c[i] != c[n - i]) {
        return None;
    }
    let d = n / 2;
    // Laurent coefficients, index j + d for exponent j in [-d, d].
    let mut laurent: Vec<BigRational> = c.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut q = vec![BigRational::zero(); d + 1];
    for k in (1..=d).rev() {
        let a = laurent[d + k].clone();
        if a.is_zero() {
            continue;
        }
        q[k] = a.clone();
        // (t + 1/t)^k = sum_j C(k, j) t^{k - 2j}
        let mut binom = BigInt::one();
        for j in 0..=k {
            let e = k as isize - 2 * j as isize;
            let idx = (d as isize + e) as usize;
            laurent[idx] -= &a * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
    }
    q[0] = laurent[d].clone();
    Some(QPoly::new(q))
}

/// `Q(zeta_m)` embedded in C by `zeta -> exp(2 pi i a / m)`.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    m: u64,
    ext: SimpleExtension,
    /// `2 cos(2 pi a / m)` as a root of the real-subfield minimal polynomial.
    real_generator: Option<RealAlgebraic>,
}

impl CyclotomicField {
    /// Field for the primitive root of unity `exp(2 pi i a / m)`; `a/m` is
    /// reduced first.
    pub fn new(a: u64, m: u64) -> Self {
        let g = a.gcd(&m);
        let (a, m) = (a / g, m / g);
        let phi = QPoly::from(&cyclotomic_polynomial(m));
        let real_generator = if m >= 3 {
            let psi = trace_polynomial(&cyclotomic_polynomial(m)).expect("Phi_m palindromic");
            let approx = 2.0 * (2.0 * std::f64::consts::PI * a as f64 / m as f64).cos();
            Some(root_near(&psi, approx).expect("real root of Psi_m"))
        } else {
            None
        };
        CyclotomicField {
            m,
            ext: SimpleExtension { modulus: phi },
            real_generator,
        }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// The root of unity `zeta`.
    pub fn zeta(&self) -> QPoly {
        self.ext.reduce(QPoly::x())
    }

    /// Express a self-conjugate element as a polynomial in `c = zeta + 1/zeta`.
    fn to_real_subfield(&self, a: &QPoly) -> QPoly {
        // x = (x + conj x)/2 = 1/2 sum a_k (zeta^k + zeta^-k) = 1/2 sum a_k P_k(c)
        let mut p_prev = QPoly::from_i64(&[2]);
        let mut p_cur = QPoly::x();
        let mut acc = QPoly::zero();
        for (k, ak) in a.coeffs().iter().enumerate() {
            let pk = match k {
                0 => p_prev.clone(),
                1 => p_cur.clone(),
                _ => {
                    let next = &(&QPoly::x() * &p_cur) - &p_prev;
                    p_prev = std::mem::replace(&mut p_cur, next);
                    p_cur.clone()
                }
            };
            acc = &acc + &pk.scale(ak);
        }
        acc.scale(&BigRational::new(1.into(), 2.into()))
    }
}

impl FieldOps for CyclotomicField {
    type Elem = QPoly;

    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn one(&self) -> QPoly {
        QPoly::one()
    }
    fn from_rational(&self, r: &BigRational) -> QPoly {
        QPoly::constant(r.clone())
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a + b
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a - b
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.ext.mul(a, b)
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        -a.clone()
    }
    fn inv(&self, a: &QPoly) -> QPoly {
        self.ext.inv(a)
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn conj(&self, a: &QPoly) -> QPoly {
        let m = self.m as usize;
        let mut v = vec![BigRational::zero(); m];
        for (k, c) in a.coeffs().iter().enumerate() {
            v[(m - k % m) % m] += c;
        }
        self.ext.reduce(QPoly::new(v))
    }
    fn real_sign(&self, a: &QPoly) -> Ordering {
        if a.deg() == 0 {
            return a.coeff(0).cmp(&BigRational::zero());
        }
        debug_assert_eq!(&self.conj(a), a, "sign of a non-real element");
        let r = self.to_real_subfield(a);
        match &self.real_generator {
            Some(g) => g.sign_of(&r),
            None => r.eval(&rat(if self.m == 1 { 2 } else { -2 })).cmp(&BigRational::zero()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ZPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ZPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(10), ZPoly::from_i64(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ZPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn trace_polynomial_of_trefoil_and_phi10() {
        // t^2 - t + 1 = t (y - 1) with y = t + 1/t
        assert_eq!(
            trace_polynomial(&ZPoly::from_i64(&[1, -1, 1])),
            Some(QPoly::from_i64(&[-1, 1]))
        );
        // Phi_10: y^2 - y - 1
        assert_eq!(
            trace_polynomial(&ZPoly::from_i64(&[1, -1, 1, -1, 1])),
            Some(QPoly::from_i64(&[-1, -1, 1]))
        );
        assert_eq!(trace_polynomial(&ZPoly::from_i64(&[-2, 1])), None);
    }

    #[test]
    fn cyclotomic_conjugation_and_sign() {
        let f = CyclotomicField::new(1, 5);
        let z = f.zeta();
        let zc = f.conj(&z);
        assert_eq!(f.mul(&z, &zc), f.one());
        // zeta + conj(zeta) = 2 cos(72 deg) > 0
        assert_eq!(f.real_sign(&f.add(&z, &zc)), Ordering::Greater);
        let g = CyclotomicField::new(2, 5);
        let w = g.zeta();
        assert_eq!(g.real_sign(&g.add(&w, &g.conj(&w))), Ordering::Less);
    }
}
