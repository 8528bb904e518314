//! Tristram-Levine signatures, the signature function on the upper unit
//! semicircle, and Milnor θ-signatures.
//!
//! Angles `θ ∈ (0, π)` are carried as the real algebraic number `2cos θ`,
//! a root of the trace polynomial of a symmetric factor of Δ. Two independent
//! evaluation routes exist: exact hermitian arithmetic in `Q(ζ_m)` at rational
//! angles, and a real route at `u = cot(θ/2)` used for the arcs of the
//! signature function, where `(1-ω)V + (1-ω̄)V^T` is a positive multiple of
//! `S + iuK` with `S = V + V^T` and `K = V^T - V`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::field::{
    cyclotomic_polynomial, trace_polynomial, CyclotomicField, FieldOps, RealNumberField, Rationals,
};
use crate::algebra::matrix::{from_columns, identity, inertia, mat_add, mat_mul, mat_scale, nullspace, Matrix};
use crate::algebra::qpoly::{rat, QPoly};
use crate::algebra::real_algebraic::{isolate_real_roots, root_near, RealAlgebraic};
use crate::algebra::zpoly::ZPoly;
use crate::error::{domain, Error, Result};
use crate::laurent::{factor, normalize, LaurentPolynomial};

use super::{alexander_polynomial, isometric_structure, SeifertMatrix};

/// A discontinuity of the signature function.
#[derive(Clone)]
pub struct Jump {
    /// Symmetric irreducible factor of Δ vanishing at `e^{iθ}`.
    pub factor: ZPoly,
    /// `2cos θ`.
    pub two_cos: RealAlgebraic,
    /// Value just after the jump minus value just before it.
    pub size: i64,
}

impl Jump {
    /// `θ` in radians, for display.
    pub fn angle(&self) -> f64 {
        (self.two_cos.approx() / 2.0).clamp(-1.0, 1.0).acos()
    }

    /// `θ / 2π`, as a fraction of a full turn.
    pub fn turn_fraction(&self) -> f64 {
        self.angle() / (2.0 * std::f64::consts::PI)
    }
}

impl fmt::Debug for Jump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "jump {:+} at θ ≈ {:.6} (factor {})", self.size, self.angle(), self.factor)
    }
}

/// Piecewise-constant signature function on `(0, π)`: `values[i]` holds on
/// the open arc between `jumps[i-1]` and `jumps[i]`, with jumps sorted by
/// increasing angle. At an arc's endpoints the function is not sampled.
#[derive(Clone, Debug)]
pub struct SignatureFunction {
    pub jumps: Vec<Jump>,
    pub values: Vec<i64>,
}

impl SignatureFunction {
    /// Limit as `θ → 0+`.
    pub fn initial_value(&self) -> i64 {
        self.values[0]
    }

    /// Limit as `θ → π-`: the classical signature.
    pub fn final_value(&self) -> i64 {
        *self.values.last().unwrap()
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Value at `e^{2πi a/m}`, or an on-jump error carrying the one-sided
    /// limits.
    pub fn value_at(&self, a: u64, m: u64) -> Result<i64> {
        check_fraction(a, m)?;
        let g = a.gcd(&m);
        let (a, m) = (a / g, m / g);
        let reflected = 2 * a > m;
        let a_half = if reflected { m - a } else { a };
        let c = two_cos_of_fraction(a_half, m);
        // Number of jumps at smaller angle, i.e. larger 2cos.
        let mut idx = 0;
        for (i, j) in self.jumps.iter().enumerate() {
            match j.two_cos.cmp_algebraic(&c) {
                Ordering::Greater => idx = i + 1,
                Ordering::Equal => {
                    let (l, r) = (self.values[i], self.values[i + 1]);
                    let (left, right) = if reflected { (r, l) } else { (l, r) };
                    return Err(Error::OnJump { angle: format!("{a}/{m}"), left, right });
                }
                Ordering::Less => break,
            }
        }
        Ok(self.values[idx])
    }
}

fn check_fraction(a: u64, m: u64) -> Result<()> {
    if m == 0 || a == 0 || a >= m {
        return domain(format!("angle {a}/{m} is not strictly between 0 and 1"));
    }
    Ok(())
}

/// `2cos(2π a/m)` for reduced `a/m` with `0 < a/m <= 1/2`.
fn two_cos_of_fraction(a: u64, m: u64) -> RealAlgebraic {
    if m == 2 {
        return RealAlgebraic::rational(rat(-2));
    }
    let psi = trace_polynomial(&cyclotomic_polynomial(m)).expect("Phi_m is palindromic");
    let approx = 2.0 * (2.0 * std::f64::consts::PI * a as f64 / m as f64).cos();
    root_near(&psi, approx).expect("Psi_m has the root 2cos(2πa/m)")
}

/// Roots `2cos θ`, `θ ∈ (0, π)`, of a symmetric irreducible factor, sorted by
/// increasing angle.
pub fn root_angles(factor: &ZPoly) -> Vec<RealAlgebraic> {
    let Some(q) = trace_polynomial(factor) else {
        return Vec::new();
    };
    if q.deg() == 0 {
        return Vec::new();
    }
    let mut roots: Vec<RealAlgebraic> = if q.sign_at(&rat(-2)) != 0 && q.sign_at(&rat(2)) != 0 {
        isolate_real_roots(&q, &rat(-2), &rat(2))
    } else {
        Vec::new()
    };
    roots.reverse();
    roots
}

/// `2 (u^2 - 1) / (u^2 + 1)`, which is `2cos θ` for `u = cot(θ/2)`.
fn two_cos_of_cot(u: &BigRational) -> BigRational {
    let u2 = u * u;
    rat(2) * (&u2 - rat(1)) / (u2 + rat(1))
}

/// A rational `u > 0` with `lower < 2cos θ(u) < upper`; `None` bounds mean
/// `-2` and `2`.
fn cot_in_arc(lower: Option<&RealAlgebraic>, upper: Option<&RealAlgebraic>) -> BigRational {
    let above_lower = |u: &BigRational| lower.is_none_or(|l| l.cmp_rational(&two_cos_of_cot(u)) == Ordering::Less);
    let below_upper = |u: &BigRational| upper.is_none_or(|h| h.cmp_rational(&two_cos_of_cot(u)) == Ordering::Greater);
    let mut hi = rat(1);
    if upper.is_none() {
        while !above_lower(&hi) {
            hi *= rat(2);
        }
        return hi;
    }
    while below_upper(&hi) {
        if above_lower(&hi) {
            return hi;
        }
        hi *= rat(2);
    }
    let mut lo = BigRational::zero();
    loop {
        let mid = (&lo + &hi) / rat(2);
        match (above_lower(&mid), below_upper(&mid)) {
            (true, true) => return mid,
            (false, _) => lo = mid,
            (_, false) => hi = mid,
        }
    }
}

/// `σ(θ)` at `u = cot(θ/2)` via the real form `[[S, -uK], [uK, S]]`, whose
/// signature is twice that of the hermitian matrix `S + iuK`.
fn signature_at_cot(v: &SeifertMatrix, u: &BigRational) -> i64 {
    let f = Rationals;
    let m = v.rational();
    let n = m.rows();
    let s = Matrix::from_fn(n, n, |i, j| &m[(i, j)] + &m[(j, i)]);
    let k = Matrix::from_fn(n, n, |i, j| (&m[(j, i)] - &m[(i, j)]) * u);
    let big = Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => s[(i, j)].clone(),
        (false, false) => s[(i - n, j - n)].clone(),
        (true, false) => -k[(i, j - n)].clone(),
        (false, true) => k[(i - n, j)].clone(),
    });
    let sig = inertia(&f, &big).signature();
    debug_assert!(sig % 2 == 0);
    sig / 2
}

pub fn signature_function(v: &SeifertMatrix) -> SignatureFunction {
    let delta = alexander_polynomial(v);
    let mut located: Vec<(ZPoly, RealAlgebraic)> = Vec::new();
    for fac in factor(&delta).symmetric_factors() {
        for r in root_angles(&fac.poly) {
            located.push((fac.poly.clone(), r));
        }
    }
    located.sort_by(|a, b| b.1.cmp_algebraic(&a.1));
    let values: Vec<i64> = (0..=located.len())
        .map(|i| {
            let upper = i.checked_sub(1).map(|k| &located[k].1);
            let lower = located.get(i).map(|x| &x.1);
            signature_at_cot(v, &cot_in_arc(lower, upper))
        })
        .collect();
    let jumps = located
        .into_iter()
        .enumerate()
        .map(|(i, (factor, two_cos))| Jump { factor, two_cos, size: values[i + 1] - values[i] })
        .collect();
    SignatureFunction { jumps, values }
}

/// Signature of `(1 - ω)V + (1 - ω̄)V^T` at `ω = e^{2πi a/m}`, computed in the
/// cyclotomic field with certified signs.
pub fn tristram_levine_signature(v: &SeifertMatrix, a: u64, m: u64) -> Result<i64> {
    check_fraction(a, m)?;
    let g = a.gcd(&m);
    let (a, m) = (a / g, m / g);
    let delta = QPoly::from(alexander_polynomial(v).as_zpoly());
    let phi = QPoly::from(&cyclotomic_polynomial(m));
    if delta.rem(&phi).is_zero() {
        return signature_function(v).value_at(a, m);
    }
    let f = CyclotomicField::new(a, m);
    let z = f.zeta();
    let one_minus = f.sub(&f.one(), &z);
    let one_minus_bar = f.conj(&one_minus);
    let vm = v.entries();
    let n = v.size();
    let h = Matrix::from_fn(n, n, |i, j| {
        let x = f.from_rational(&BigRational::from_integer(vm[(i, j)].clone()));
        let y = f.from_rational(&BigRational::from_integer(vm[(j, i)].clone()));
        f.add(&f.mul(&one_minus, &x), &f.mul(&one_minus_bar, &y))
    });
    Ok(inertia(&f, &h).signature())
}

/// Milnor signature at one root angle of one symmetric factor.
#[derive(Clone)]
pub struct MilnorSignature {
    pub factor: ZPoly,
    pub two_cos: RealAlgebraic,
    pub value: i64,
}

impl MilnorSignature {
    pub fn angle(&self) -> f64 {
        (self.two_cos.approx() / 2.0).clamp(-1.0, 1.0).acos()
    }
}

impl fmt::Debug for MilnorSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ_θ = {} at θ ≈ {:.6} (factor {})", self.value, self.angle(), self.factor)
    }
}

/// Signature of `B = V + V^T` restricted to the `t^2 - 2cos θ t + 1`-primary
/// summand of `T = V^-1 V^T`, computed in the real field `Q(2cos θ)`.
pub fn milnor_theta_signature(
    v: &SeifertMatrix,
    factor_poly: &LaurentPolynomial,
    two_cos: &RealAlgebraic,
) -> Result<i64> {
    let p = normalize(factor_poly)?;
    let fac = factor(&p);
    if !fac.is_irreducible() || !fac.factors[0].is_symmetric() || p.degree() < 2 {
        return domain(format!("{p} is not a symmetric irreducible polynomial"));
    }
    let delta = alexander_polynomial(v);
    if delta.as_zpoly().div_exact(p.as_zpoly()).is_none() {
        return domain(format!("{p} does not divide the Alexander polynomial {delta}"));
    }
    let root = root_angles(p.as_zpoly())
        .into_iter()
        .find(|r| r.cmp_algebraic(two_cos) == Ordering::Equal);
    let Some(root) = root else {
        return domain(format!("2cos θ ≈ {:.6} is not a unit-circle root of {p}", two_cos.approx()));
    };
    Ok(restricted_signature(v, root))
}

fn restricted_signature(v: &SeifertMatrix, root: RealAlgebraic) -> i64 {
    let iso = isometric_structure(v);
    let n = iso.inner_product.rows();
    let k = RealNumberField::new(root);
    let lift = |m: &Matrix<BigRational>| m.map(|x| k.from_rational(x));
    let t = lift(&iso.transformation);
    let b = lift(&iso.inner_product);
    let c = k.generator();
    let t2 = mat_mul(&k, &t, &t);
    let pt = mat_add(&k, &mat_add(&k, &t2, &mat_scale(&k, &t, &k.neg(&c))), &identity(&k, n));
    // Generalized kernel of p_θ(T).
    let mut power = pt.clone();
    let mut kernel = nullspace(&k, &power);
    loop {
        power = mat_mul(&k, &power, &pt);
        let next = nullspace(&k, &power);
        if next.len() == kernel.len() {
            break;
        }
        kernel = next;
    }
    if kernel.is_empty() {
        return 0;
    }
    let w = from_columns(&kernel, n);
    let g = mat_mul(&k, &mat_mul(&k, &w.transpose(), &b), &w);
    inertia(&k, &g).signature()
}

/// All Milnor signatures of `V`, over every symmetric irreducible factor of Δ
/// and every root angle in `(0, π)`, sorted by angle.
pub fn milnor_signatures(v: &SeifertMatrix) -> Vec<MilnorSignature> {
    let delta = alexander_polynomial(v);
    let mut out = Vec::new();
    for fac in factor(&delta).symmetric_factors() {
        for r in root_angles(&fac.poly) {
            let value = restricted_signature(v, r.clone());
            out.push(MilnorSignature { factor: fac.poly.clone(), two_cos: r, value });
        }
    }
    out.sort_by(|a, b| b.two_cos.cmp_algebraic(&a.two_cos));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> SeifertMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_tristram_levine() {
        let t = v("-1,1;0,-1");
        assert_eq!(tristram_levine_signature(&t, 1, 3).unwrap(), -2);
        assert_eq!(tristram_levine_signature(&t, 2, 3).unwrap(), -2);
        assert_eq!(tristram_levine_signature(&t, 1, 12).unwrap(), 0);
        assert_eq!(
            tristram_levine_signature(&t, 1, 6),
            Err(Error::OnJump { angle: "1/6".into(), left: 0, right: -2 })
        );
        assert_eq!(
            tristram_levine_signature(&t, 5, 6),
            Err(Error::OnJump { angle: "5/6".into(), left: -2, right: 0 })
        );
        assert!(tristram_levine_signature(&t, 3, 3).is_err());
    }

    #[test]
    fn slice_block_is_flat() {
        let s = v("0,1;2,0");
        assert_eq!(tristram_levine_signature(&s, 1, 3).unwrap(), 0);
        let f = signature_function(&s);
        assert!(f.jumps.is_empty());
        assert_eq!(f.values, vec![0]);
    }

    #[test]
    fn signature_function_examples() {
        let t = v("-1,1;0,-1");
        let f = signature_function(&t);
        assert_eq!(f.values, vec![0, -2]);
        assert!((f.jumps[0].angle() - std::f64::consts::PI / 3.0).abs() < 1e-12);
        let granny = t.block_sum(&t);
        let g = signature_function(&granny);
        assert_eq!(g.values, vec![0, -4]);
        assert_eq!(g.jumps[0].size, -4);
    }

    #[test]
    fn both_routes_agree_off_jumps() {
        let forms = ["-1,1;0,-1", "1,1;0,-1", "-1,1,0,0;0,-1,0,0;0,0,-1,1;0,0,0,-1", "0,1;2,0"];
        for s in forms {
            let m = v(s);
            let f = signature_function(&m);
            for (a, q) in [(1, 5), (2, 5), (1, 7), (3, 7), (1, 9), (4, 9), (5, 12), (1, 2)] {
                match tristram_levine_signature(&m, a, q) {
                    Ok(x) => assert_eq!(x, f.value_at(a, q).unwrap(), "{s} at {a}/{q}"),
                    Err(e) => assert!(matches!(e, Error::OnJump { .. })),
                }
            }
        }
    }

    #[test]
    fn milnor_examples() {
        let t = v("-1,1;0,-1");
        let f = LaurentPolynomial::from_coeffs(0, &[1, -1, 1]);
        let root = root_angles(&ZPoly::from_i64(&[1, -1, 1])).remove(0);
        assert_eq!(milnor_theta_signature(&t, &f, &root).unwrap(), -2);
        assert_eq!(milnor_theta_signature(&t.block_sum(&t), &f, &root).unwrap(), -4);
        let square = t.block_sum(&t.concordance_inverse());
        assert_eq!(milnor_theta_signature(&square, &f, &root).unwrap(), 0);
        let slice = v("0,1;2,0");
        assert!(milnor_theta_signature(&slice, &LaurentPolynomial::from_coeffs(0, &[-1, 2]), &root).is_err());
        assert!(milnor_theta_signature(&slice, &f, &root).is_err());
        assert!(milnor_signatures(&slice).is_empty());
    }
}
