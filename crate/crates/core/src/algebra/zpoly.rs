//! Dense univariate polynomials over the integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with integer coefficients, stored from the constant term up.
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        ZPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|x| x * k).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `t^deg p(1/t)`: coefficient list reversed.
    pub fn reversal(&self) -> ZPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        ZPoly::new(v)
    }

    /// Lowest index carrying a nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divide out `t^valuation`.
    pub fn strip_t(&self) -> ZPoly {
        let v = self.valuation();
        ZPoly::new(self.coeffs[v..].to_vec())
    }

    /// Exact division over Z. Returns `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let (n, m) = (self.deg(), d.deg());
        if n < m {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        let lc = d.lc();
        for k in (0..=n - m).rev() {
            let top = &rem[k + m];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(ZPoly::new(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let m = d.deg();
        let lc = d.lc();
        while !r.is_zero() && r.deg() >= m {
            let shift = r.deg() - m;
            let rl = r.lc();
            r = r.scale(&lc) - ZPoly::monomial(rl, shift) * d.clone();
        }
        r
    }

    /// Greatest common divisor of the primitive parts, normalized to positive
    /// leading coefficient. Contents are ignored.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        let mut acc = ZPoly::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Total order used for deterministic factor listings: by degree, then
    /// lexicographically on coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &ZPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Euclidean norm squared of the coefficient vector.
    pub fn norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl Add for ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: ZPoly) -> ZPoly {
        &self * &rhs
    }
}

impl Mul<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ZPoly::new(v)
    }
}

impl fmt::Display for ZPoly {
    /// Human form in the variable `t`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)), "t")
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

/// Shared pretty-printer for integer polynomials given as (exponent, coefficient)
/// pairs in increasing exponent order.
pub(crate) fn write_poly<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (i64, &'a BigInt)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms.rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let coef = if a.is_one() && e != 0 { String::new() } else { a.to_string() };
        match e {
            0 => write!(f, "{a}")?,
            1 => write!(f, "{coef}{var}")?,
            _ => write!(f, "{coef}{var}^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_and_gcd() {
        let a = ZPoly::from_i64(&[-1, 2]); // 2t - 1
        let b = ZPoly::from_i64(&[-2, 1]); // t - 2
        let p = &a * &b;
        assert_eq!(p, ZPoly::from_i64(&[2, -5, 2]));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&ZPoly::from_i64(&[1, 1])), None);
        let q = &a * &ZPoly::from_i64(&[1, 1]);
        assert_eq!(p.gcd(&q), a);
    }

    #[test]
    fn display_is_high_degree_first() {
        let p = ZPoly::from_i64(&[1, -3, 3, -3, 1]);
        assert_eq!(p.to_string(), "t^4 - 3t^3 + 3t^2 - 3t + 1");
        assert_eq!(ZPoly::zero().to_string(), "0");
        assert_eq!(ZPoly::from_i64(&[-2]).to_string(), "-2");
    }
}
