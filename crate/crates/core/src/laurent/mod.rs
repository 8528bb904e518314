//! Integer Laurent polynomials: normalization up to units `±t^n`,
//! factorization over the rationals, symmetry and the Fox-Milnor condition.

mod factor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::zpoly::{write_poly, ZPoly};
use crate::error::{domain, Error, Result};

pub use factor::factor_primitive;

/// Finitely supported map from exponents to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPolynomial { terms }
    }

    /// `sum_i coeffs[i] t^(shift + i)`.
    pub fn from_coeffs(shift: i64, coeffs: &[i64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (shift + i as i64, BigInt::from(c)))
            .collect();
        LaurentPolynomial { terms }
    }

    pub fn from_zpoly(p: &ZPoly, shift: i64) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (shift + i as i64, c.clone()))
            .collect();
        LaurentPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Split as `t^shift * p(t)` with `p(0) != 0`.
    pub fn to_zpoly(&self) -> (ZPoly, i64) {
        let Some(lo) = self.min_exponent() else {
            return (ZPoly::zero(), 0);
        };
        let hi = self.max_exponent().unwrap();
        let v = (lo..=hi).map(|e| self.coeff(e)).collect();
        (ZPoly::new(v), lo)
    }

    /// `p(t^-1)`.
    pub fn involution(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        assert!(!x.is_zero() || self.min_exponent().is_none_or(|e| e >= 0));
        self.terms
            .iter()
            .map(|(&e, c)| BigRational::from_integer(c.clone()) * x.pow(e as i32))
            .sum()
    }

    pub fn eval_i64(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Coefficient list from exponent 0 up, e.g. `1,-3,3,-3,1`. Only defined
    /// for polynomials without negative powers.
    pub fn to_text(&self) -> String {
        let hi = self.max_exponent().unwrap_or(0).max(0);
        (0..=hi).map(|e| self.coeff(e).to_string()).collect::<Vec<_>>().join(",")
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {x:?} in polynomial {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPolynomial::from_zpoly(&ZPoly::new(coeffs), 0))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            let v = terms.entry(e).or_default();
            *v += c;
            if v.is_zero() {
                terms.remove(&e);
            }
        }
        LaurentPolynomial { terms }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                *terms.entry(a + b).or_default() += x * y;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.terms.iter().map(|(&e, c)| (e, c)), "t")
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// The distinguished associate of a Laurent polynomial: lowest exponent 0 and
/// positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalizedAlexander {
    poly: ZPoly,
}

impl NormalizedAlexander {
    pub fn poly(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_zpoly(&self.poly, 0)
    }

    pub fn as_zpoly(&self) -> &ZPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    /// Wrap a polynomial already in normal form.
    pub fn from_zpoly(p: &ZPoly) -> Result<Self> {
        normalize(&LaurentPolynomial::from_zpoly(p, 0))
    }

    pub fn from_coeffs(c: &[i64]) -> Result<Self> {
        Self::from_zpoly(&ZPoly::from_i64(c))
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.poly.eval_i64(x)
    }

    /// True when `|p(1)| = 1`, as for every knot's Alexander polynomial.
    pub fn is_knot_polynomial(&self) -> bool {
        self.eval_i64(1).abs().is_one()
    }

    pub fn check_knot_polynomial(&self) -> Result<()> {
        if self.is_knot_polynomial() {
            Ok(())
        } else {
            domain(format!(
                "{} is not an Alexander polynomial of a knot: |p(1)| = {}",
                self,
                self.eval_i64(1).abs()
            ))
        }
    }

    pub fn to_text(&self) -> String {
        self.poly().to_text()
    }
}

impl fmt::Display for NormalizedAlexander {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for NormalizedAlexander {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alexander({})", self.poly)
    }
}

impl FromStr for NormalizedAlexander {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        normalize(&s.parse()?)
    }
}

pub fn normalize(p: &LaurentPolynomial) -> Result<NormalizedAlexander> {
    if p.is_zero() {
        return domain("cannot normalize the zero polynomial");
    }
    let (z, _) = p.to_zpoly();
    let z = if z.lc().is_negative() { -z } else { z };
    Ok(NormalizedAlexander { poly: z })
}

/// An irreducible factor with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub poly: ZPoly,
    pub multiplicity: u32,
}

impl Factor {
    pub fn laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_zpoly(&self.poly, 0)
    }

    pub fn is_symmetric(&self) -> bool {
        zpoly_is_symmetric(&self.poly)
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }
}

/// `unit * content * t^shift * prod factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleFactorization {
    pub unit: i8,
    pub content: BigInt,
    pub shift: i64,
    pub factors: Vec<Factor>,
}

impl IrreducibleFactorization {
    pub fn expand(&self) -> LaurentPolynomial {
        let mut z = ZPoly::constant(self.content.clone() * BigInt::from(self.unit));
        for f in &self.factors {
            z = z * f.poly.pow(f.multiplicity);
        }
        LaurentPolynomial::from_zpoly(&z, self.shift)
    }

    pub fn is_irreducible(&self) -> bool {
        self.content.is_one() && self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }

    pub fn symmetric_factors(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| f.is_symmetric())
    }
}

impl fmt::Display for IrreducibleFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.unit < 0 || !self.content.is_one() || self.factors.is_empty() {
            parts.push((BigInt::from(self.unit) * &self.content).to_string());
        }
        for fac in &self.factors {
            let base = if fac.poly.deg() == 0 { fac.poly.to_string() } else { format!("({})", fac.poly) };
            if fac.multiplicity == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{}", fac.multiplicity));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Complete factorization over Q, factors in primitive integer form ordered
/// by degree and then lexicographically on coefficients from the constant
/// term up.
pub fn factor(p: &NormalizedAlexander) -> IrreducibleFactorization {
    factor_laurent(&p.poly()).expect("normalized polynomials are nonzero")
}

pub fn factor_laurent(p: &LaurentPolynomial) -> Result<IrreducibleFactorization> {
    if p.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    let (z, shift) = p.to_zpoly();
    let unit: i8 = if z.lc().is_negative() { -1 } else { 1 };
    let content = z.content();
    let prim = z.primitive();
    let factors = if prim.deg() == 0 {
        Vec::new()
    } else {
        factor_primitive(&prim)
            .into_iter()
            .map(|(poly, multiplicity)| Factor { poly, multiplicity })
            .collect()
    };
    Ok(IrreducibleFactorization { unit, content, shift, factors })
}

fn zpoly_is_symmetric(z: &ZPoly) -> bool {
    let r = z.reversal();
    r == *z || r == -z.clone()
}

/// True iff `p(t) = ±t^n p(t^-1)` for some `n`.
pub fn is_symmetric(p: &LaurentPolynomial) -> Result<bool> {
    if p.is_zero() {
        return domain("symmetry of the zero polynomial is undefined");
    }
    Ok(zpoly_is_symmetric(&p.to_zpoly().0))
}

/// `t^deg p * p(t) * p(t^-1)`, the symmetrization used by Fox-Milnor.
pub fn norm_product(f: &LaurentPolynomial) -> LaurentPolynomial {
    f * &f.involution()
}

/// Search for `f` with `p = ±t^n f(t) f(t^-1)`. Each symmetric factor must
/// occur to even multiplicity and contributes half of it; each asymmetric
/// factor must occur as often as its reversal, and the canonically larger
/// member of the pair carries the whole multiplicity into the witness.
pub fn fox_milnor_test(p: &NormalizedAlexander) -> Result<Option<LaurentPolynomial>> {
    p.check_knot_polynomial()?;
    let fac = factor(p);
    let mut witness = ZPoly::one();
    for f in &fac.factors {
        if f.is_symmetric() {
            if f.multiplicity % 2 == 1 {
                return Ok(None);
            }
            witness = witness * f.poly.pow(f.multiplicity / 2);
            continue;
        }
        let rev = f.poly.reversal().primitive();
        let partner = fac.factors.iter().find(|g| g.poly == rev);
        match partner {
            Some(g) if g.multiplicity == f.multiplicity => {
                if f.poly.canonical_cmp(&rev).is_gt() {
                    witness = witness * f.poly.pow(f.multiplicity);
                }
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(LaurentPolynomial::from_zpoly(&witness, 0)))
}

/// True if `a` and `b` agree up to multiplication by `±t^n`.
pub fn associates(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
    match (normalize(a), normalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a.is_zero() && b.is_zero(),
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `phi_2p(t) = t^(p-1) - t^(p-2) + ... - t + 1`, the cyclotomic polynomial of
/// order `2p`.
pub fn cyclotomic_phi_2p(p: u64) -> Result<NormalizedAlexander> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    let coeffs: Vec<i64> = (0..p).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
    NormalizedAlexander::from_coeffs(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(shift: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coeffs(shift, c)
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&lp(-2, &[1, -3, 3, -3, 1])).unwrap();
        assert_eq!(n.to_text(), "1,-3,3,-3,1");
        assert_eq!(n.degree(), 4);
        assert_eq!(normalize(&lp(0, &[-1])).unwrap().to_text(), "1");
        let n = normalize(&lp(1, &[-2, 5, -2])).unwrap();
        assert_eq!(n.to_text(), "2,-5,2");
        assert_eq!(n.degree(), 2);
        assert!(normalize(&LaurentPolynomial::zero()).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = factor(&NormalizedAlexander::from_coeffs(&[1, -3, 3, -3, 1]).unwrap());
        assert!(f.is_irreducible());
        let sq = factor(&NormalizedAlexander::from_coeffs(&[1, -2, 3, -2, 1]).unwrap());
        assert_eq!(sq.factors, vec![Factor { poly: ZPoly::from_i64(&[1, -1, 1]), multiplicity: 2 }]);
        let f = factor(&NormalizedAlexander::from_coeffs(&[2, -5, 2]).unwrap());
        let polys: Vec<_> = f.factors.iter().map(|x| x.poly.clone()).collect();
        assert_eq!(polys, vec![ZPoly::from_i64(&[-2, 1]), ZPoly::from_i64(&[-1, 2])]);
        assert_eq!(f.to_string(), "(t - 2) (2t - 1)");
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&lp(0, &[1, -1, 1])).unwrap());
        assert!(!is_symmetric(&lp(0, &[-2, 1])).unwrap());
        assert!(is_symmetric(&lp(0, &[1, -3, 3, -3, 1])).unwrap());
        assert!(is_symmetric(&LaurentPolynomial::zero()).is_err());
    }

    #[test]
    fn fox_milnor_examples() {
        let sq = NormalizedAlexander::from_coeffs(&[1, -2, 3, -2, 1]).unwrap();
        assert_eq!(fox_milnor_test(&sq).unwrap(), Some(lp(0, &[1, -1, 1])));
        let slice = NormalizedAlexander::from_coeffs(&[2, -5, 2]).unwrap();
        assert_eq!(fox_milnor_test(&slice).unwrap(), Some(lp(0, &[-1, 2])));
        let fig8 = NormalizedAlexander::from_coeffs(&[1, -3, 1]).unwrap();
        assert_eq!(fox_milnor_test(&fig8).unwrap(), None);
        let bad = NormalizedAlexander::from_coeffs(&[1, 1]).unwrap();
        assert!(matches!(fox_milnor_test(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_2p() {
        let p5 = cyclotomic_phi_2p(5).unwrap();
        assert_eq!(p5.to_string(), "t^4 - t^3 + t^2 - t + 1");
        assert_eq!(p5.eval_i64(1), BigInt::one());
        assert_eq!(p5.eval_i64(-1), BigInt::from(5));
        assert!(cyclotomic_phi_2p(9).is_err());
        assert!(cyclotomic_phi_2p(2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p: LaurentPolynomial = "1, -3,3,-3,1".parse().unwrap();
        assert_eq!(p.to_text(), "1,-3,3,-3,1");
        assert!("1,x".parse::<LaurentPolynomial>().is_err());
    }
}
