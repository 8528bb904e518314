//! Real algebraic numbers given by a squarefree rational polynomial and an
//! isolating interval, with certified sign determination.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::qpoly::{rat, QPoly};

/// Sturm sequence of a squarefree polynomial.
pub fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = -seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_variations(seq: &[QPoly], x: &BigRational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in seq {
        let v = s.sign_at(x);
        if v == 0 {
            continue;
        }
        if last != 0 && v != last {
            count += 1;
        }
        last = v;
    }
    count
}

/// Number of distinct roots of the (squarefree) head of `seq` in `(a, b]`.
pub fn count_roots(seq: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(seq, a).saturating_sub(sign_variations(seq, b))
}

/// Cauchy bound: every real root has absolute value below the result.
pub fn root_bound(p: &QPoly) -> BigRational {
    let lc = p.lc().abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.deg())
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(BigRational::zero);
    m + rat(1)
}

#[derive(Clone)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

/// A real root of `poly` pinned down by an isolating interval. The interval is
/// refined lazily as comparisons demand.
#[derive(Clone)]
pub struct RealAlgebraic {
    poly: QPoly,
    exact: Option<BigRational>,
    interval: RefCell<Interval>,
}

impl RealAlgebraic {
    pub fn rational(r: BigRational) -> Self {
        let poly = QPoly::new(vec![-r.clone(), rat(1)]);
        RealAlgebraic {
            poly,
            exact: Some(r.clone()),
            interval: RefCell::new(Interval { lo: r.clone(), hi: r }),
        }
    }

    /// Wrap the unique root of `poly` in `(lo, hi)`. The caller guarantees the
    /// root is simple and unique there.
    fn isolated(poly: QPoly, lo: BigRational, hi: BigRational) -> Self {
        if poly.deg() == 1 {
            let r = -poly.coeff(0) / poly.coeff(1);
            return Self::rational(r);
        }
        RealAlgebraic {
            poly,
            exact: None,
            interval: RefCell::new(Interval { lo, hi }),
        }
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn bounds(&self) -> (BigRational, BigRational) {
        let iv = self.interval.borrow();
        (iv.lo.clone(), iv.hi.clone())
    }

    /// Halve the isolating interval.
    pub fn refine(&self) {
        if self.exact.is_some() {
            return;
        }
        let mut iv = self.interval.borrow_mut();
        let mid = (&iv.lo + &iv.hi) / rat(2);
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == 0 {
            // Rational root of a reducible poly; shrink to a tiny interval around it.
            let w = (&iv.hi - &iv.lo) / rat(1 << 20);
            iv.lo = &mid - &w;
            iv.hi = &mid + w;
            return;
        }
        if s_mid == self.poly.sign_at(&iv.lo) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }

    pub fn refine_to_width(&self, width: &BigRational) {
        while {
            let iv = self.interval.borrow();
            &iv.hi - &iv.lo > *width
        } && self.exact.is_none()
        {
            self.refine();
        }
    }

    pub fn approx(&self) -> f64 {
        if let Some(r) = &self.exact {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        self.refine_to_width(&BigRational::new(1.into(), (1u64 << 50).into()));
        let iv = self.interval.borrow();
        ((&iv.lo + &iv.hi) / rat(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// True if this number is a root of `g`.
    pub fn is_root_of(&self, g: &QPoly) -> bool {
        if g.is_zero() {
            return true;
        }
        if let Some(r) = &self.exact {
            return g.eval(r).is_zero();
        }
        let h = self.poly.gcd(g);
        if h.deg() == 0 {
            return false;
        }
        let iv = self.interval.borrow();
        let seq = sturm_sequence(&h);
        // The interval isolates a single root of `poly`; any root of the common
        // factor inside it is that root.
        count_roots(&seq, &iv.lo, &iv.hi) > 0 || h.sign_at(&iv.hi) == 0
    }

    /// Certified sign of `g` evaluated at this number.
    pub fn sign_of(&self, g: &QPoly) -> Ordering {
        if let Some(r) = &self.exact {
            return g.eval(r).cmp(&BigRational::zero());
        }
        if self.is_root_of(g) {
            return Ordering::Equal;
        }
        loop {
            let (a, b) = {
                let iv = self.interval.borrow();
                g.eval_interval(&iv.lo, &iv.hi)
            };
            if a.is_positive() {
                return Ordering::Greater;
            }
            if b.is_negative() {
                return Ordering::Less;
            }
            self.refine();
        }
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.sign_of(&QPoly::new(vec![-r.clone(), rat(1)]))
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp_algebraic(&self, other: &RealAlgebraic) -> Ordering {
        if let Some(r) = &other.exact {
            return self.cmp_rational(r);
        }
        if let Some(r) = &self.exact {
            return other.cmp_rational(r).reverse();
        }
        loop {
            let (a, b) = (self.bounds(), other.bounds());
            if a.1 < b.0 {
                return Ordering::Less;
            }
            if b.1 < a.0 {
                return Ordering::Greater;
            }
            let lo = if a.0 > b.0 { a.0.clone() } else { b.0.clone() };
            let hi = if a.1 < b.1 { a.1.clone() } else { b.1.clone() };
            let h = self.poly.gcd(&other.poly);
            if h.deg() > 0 && lo < hi {
                let seq = sturm_sequence(&h);
                if count_roots(&seq, &lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
            self.refine();
            other.refine();
        }
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.bounds();
        write!(f, "root of {:?} in [{lo}, {hi}] (~{:.6})", self.poly, self.approx())
    }
}

/// Isolate every real root of the squarefree polynomial `p` in the open
/// interval `(lo, hi)`; the endpoints must not be roots. Roots come back in
/// increasing order.
pub fn isolate_real_roots(p: &QPoly, lo: &BigRational, hi: &BigRational) -> Vec<RealAlgebraic> {
    assert!(p.sign_at(lo) != 0 && p.sign_at(hi) != 0, "endpoint is a root");
    let seq = sturm_sequence(p);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = count_roots(&seq, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RealAlgebraic::isolated(p.clone(), a, b));
            continue;
        }
        let mut mid = (&a + &b) / rat(2);
        let mut k = 3;
        while p.sign_at(&mid) == 0 {
            mid = &a + (&b - &a) / rat(k);
            k += 1;
        }
        // Push the upper half first so the lower half is processed first.
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(|x, y| x.cmp_algebraic(y));
    out
}

/// All real roots of a squarefree polynomial.
pub fn real_roots(p: &QPoly) -> Vec<RealAlgebraic> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let b = root_bound(p);
    isolate_real_roots(p, &(-b.clone()), &b)
}

/// The real root of `p` closest to `approx`. `p` must be squarefree and the
/// approximation good enough to separate roots at double precision.
pub fn root_near(p: &QPoly, approx: f64) -> Option<RealAlgebraic> {
    let roots = real_roots(p);
    roots.into_iter().min_by(|a, b| {
        let da = (a.approx() - approx).abs();
        let db = (b.approx() - approx).abs();
        da.partial_cmp(&db).unwrap_or(Ordering::Equal)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qpoly::ratio;

    #[test]
    fn isolates_roots_of_golden_polynomial() {
        // x^2 - x - 1 has roots (1 +- sqrt 5)/2.
        let p = QPoly::from_i64(&[-1, -1, 1]);
        let roots = real_roots(&p);
        assert_eq!(roots.len(), 2);
        assert!((roots[0].approx() - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((roots[1].approx() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(roots[1].cmp_rational(&ratio(161, 100)), Ordering::Greater);
        assert_eq!(roots[1].cmp_rational(&ratio(162, 100)), Ordering::Less);
    }

    #[test]
    fn sign_of_detects_exact_zero() {
        let p = QPoly::from_i64(&[-2, 0, 1]); // sqrt 2
        let r = root_near(&p, 1.41).unwrap();
        // (x^2 - 2)(x + 1) vanishes at sqrt 2.
        let g = &p * &QPoly::from_i64(&[1, 1]);
        assert_eq!(r.sign_of(&g), Ordering::Equal);
        assert_eq!(r.sign_of(&QPoly::from_i64(&[-3, 2])), Ordering::Less); // 2x - 3 < 0
        assert_eq!(r.sign_of(&QPoly::from_i64(&[-2, 2])), Ordering::Greater);
    }

    #[test]
    fn compares_distinct_algebraics() {
        let a = root_near(&QPoly::from_i64(&[-2, 0, 1]), 1.41).unwrap();
        let b = root_near(&QPoly::from_i64(&[-3, 0, 1]), 1.73).unwrap();
        assert_eq!(a.cmp_algebraic(&b), Ordering::Less);
        let c = root_near(&QPoly::from_i64(&[-2, 0, 1]), 1.4).unwrap();
        assert_eq!(a.cmp_algebraic(&c), Ordering::Equal);
    }
}
