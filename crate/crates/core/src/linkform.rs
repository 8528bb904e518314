//! Linking forms on the first homology of the double branched cover,
//! restricted to a `p`-primary part, and their metabolizers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::field::Rationals;
use crate::algebra::fp::{self, FpForm, FpVec, Subspace};
use crate::algebra::intmat::to_rational;
use crate::algebra::matrix::{inverse, Matrix};
use crate::error::{domain, Error, Result};
use crate::seifert::SeifertMatrix;

/// A metabolizer is stored as its canonical (reduced echelon) subspace.
pub type Metabolizer = Subspace;

/// Nonsingular symmetric pairing on a finite abelian `p`-group
/// `⊕ Z/p^{k_i}`, with values in `Q/Z` stored as fractions in `[0, 1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLinkingForm {
    prime: u32,
    /// Order `p^{k_i}` of each cyclic summand.
    orders: Vec<BigInt>,
    pairing: Matrix<BigRational>,
}

fn frac_part(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

impl FiniteLinkingForm {
    /// Homogeneous form on `(Z/p)^r` with pairing matrix `gram / p`.
    pub fn from_fp(form: &FpForm) -> Self {
        let p = form.prime();
        let r = form.dim();
        let pairing = Matrix::from_fn(r, r, |i, j| BigRational::new(BigInt::from(form.gram()[i][j]), BigInt::from(p)));
        FiniteLinkingForm { prime: p, orders: vec![BigInt::from(p); r], pairing }
    }

    pub fn hyperbolic(p: u32, g: usize) -> Self {
        Self::from_fp(&FpForm::hyperbolic(p, g))
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn pairing(&self) -> &Matrix<BigRational> {
        &self.pairing
    }

    pub fn is_homogeneous(&self) -> bool {
        self.orders.iter().all(|o| *o == BigInt::from(self.prime))
    }

    /// The form as `p · β` on `F_p^r`; only for homogeneous groups.
    pub fn fp_form(&self) -> Result<FpForm> {
        if !self.is_homogeneous() {
            return domain("metabolizer computations need a homogeneous group (Z/p)^r");
        }
        let p = BigInt::from(self.prime);
        let r = self.rank();
        let gram = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (&self.pairing[(i, j)] * &p).to_integer().mod_floor(&p).to_u32().unwrap())
                    .collect()
            })
            .collect();
        Ok(FpForm::new(self.prime, gram))
    }

    /// Orthogonal sum `self ⊕ (sign · other)`.
    pub fn orthogonal_sum(&self, other: &FiniteLinkingForm, negate_other: bool) -> Result<Self> {
        if self.prime != other.prime {
            return domain("orthogonal sum of forms at different primes");
        }
        let (n, m) = (self.rank(), other.rank());
        let pairing = Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
            (true, true) => self.pairing[(i, j)].clone(),
            (false, false) => {
                let x = other.pairing[(i - n, j - n)].clone();
                frac_part(&if negate_other { -x } else { x })
            }
            _ => BigRational::zero(),
        });
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        Ok(FiniteLinkingForm { prime: self.prime, orders, pairing })
    }

    pub fn is_nonsingular(&self) -> bool {
        match self.fp_form() {
            Ok(f) => f.is_nonsingular(),
            // Off the homogeneous case, check that the determinant of the
            // scaled pairing is a unit modulo p.
            Err(_) => {
                let top = self.orders.iter().max().cloned().unwrap_or_else(BigInt::one);
                let scaled = self.pairing.map(|x| (x * BigRational::from_integer(top.clone())).to_integer());
                let d = crate::algebra::intmat::determinant(&scaled);
                !d.is_multiple_of(&BigInt::from(self.prime))
            }
        }
    }

    /// A basis in which the pairing is `⊕ [[0, 1/p], [1/p, 0]]`, if the form
    /// is hyperbolic and `p` is odd. Rows of the result are the new basis
    /// vectors in the old coordinates.
    pub fn hyperbolic_basis(&self) -> Option<Vec<FpVec>> {
        let form = self.fp_form().ok()?;
        let p = self.prime;
        if p == 2 || form.dim() % 2 == 1 {
            return None;
        }
        let n = form.dim();
        let mut basis = Vec::new();
        let mut complement = Subspace::full(p, n);
        while !complement.is_zero() {
            let x = complement.elements().into_iter().find(|v| v.iter().any(|&c| c != 0) && form.pair(v, v) == 0)?;
            let y = complement.elements().into_iter().find(|v| form.pair(&x, v) == 1)?;
            let half = fp::mul(p, form.pair(&y, &y), fp::inv(p, 2));
            let y = fp::vsub(p, &y, &fp::vscale(p, half, &x));
            let plane = Subspace::span(p, n, &[x.clone(), y.clone()]);
            let perp = form.annihilator(&plane);
            complement = Subspace::span(
                p,
                n,
                &complement.elements().into_iter().filter(|v| perp.contains(v)).collect::<Vec<_>>(),
            );
            basis.push(x);
            basis.push(y);
        }
        Some(basis)
    }
}

impl fmt::Debug for FiniteLinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.orders.iter().map(|o| o.to_string()).collect();
        write!(f, "LinkingForm(Z/[{}], {:?})", orders.join(","), self.pairing)
    }
}

/// The `p`-primary part of the cokernel of `P = V + V^T` with pairing
/// `β(x, y) = x^T P^{-1} y mod 1`, in the basis given by the Smith normal
/// form transform.
pub fn from_seifert(v: &SeifertMatrix, p: u32) -> Result<FiniteLinkingForm> {
    let pm = v.symmetrized();
    let snf = crate::algebra::intmat::smith_normal_form(&pm);
    if snf.diagonal.iter().any(Zero::is_zero) {
        return Err(Error::Domain("det(V + V^T) = 0".into()));
    }
    let pb = BigInt::from(p);
    let pinv = inverse(&Rationals, &to_rational(&pm)).expect("nonsingular");
    let n = v.size();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in snf.diagonal.iter().enumerate() {
        if !d.is_multiple_of(&pb) {
            continue;
        }
        let mut pk = BigInt::one();
        let mut rest = d.clone();
        while rest.is_multiple_of(&pb) {
            rest /= &pb;
            pk *= &pb;
        }
        gens.push((0..n).map(|r| &snf.u_inv[(r, i)] * &rest).collect());
        orders.push(pk);
    }
    if gens.is_empty() {
        return Err(Error::Domain(format!("{p} does not divide the order of the branched cover homology")));
    }
    let r = gens.len();
    let pairing = Matrix::from_fn(r, r, |i, j| {
        let mut s = BigRational::zero();
        for a in 0..n {
            for b in 0..n {
                s += &pinv[(a, b)] * BigRational::from_integer(&gens[i][a] * &gens[j][b]);
            }
        }
        frac_part(&s)
    });
    Ok(FiniteLinkingForm { prime: p, orders, pairing })
}

/// `{x : β(x, s) = 0 for all s in S}`.
pub fn annihilator(l: &FiniteLinkingForm, s: &Subspace) -> Result<Subspace> {
    Ok(l.fp_form()?.annihilator(s))
}

pub fn is_metabolizer(l: &FiniteLinkingForm, m: &Subspace) -> Result<bool> {
    Ok(annihilator(l, m)? == *m)
}

/// The character `x ↦ β(x, m)`, valued in `(1/p)Z/Z ≅ Z/p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    form: FpForm,
    m: FpVec,
}

impl Character {
    pub fn new(l: &FiniteLinkingForm, m: FpVec) -> Result<Self> {
        Ok(Character { form: l.fp_form()?, m })
    }

    pub fn element(&self) -> &[u32] {
        &self.m
    }

    /// `p · χ(x)` as a residue mod `p`.
    pub fn eval(&self, x: &[u32]) -> u32 {
        self.form.pair(x, &self.m)
    }

    pub fn vanishes_on(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|b| self.eval(b) == 0)
    }
}

/// Solve `A x = b` over `F_p`; returns a particular solution and a kernel
/// basis, or `None` if inconsistent.
fn solve_affine(p: u32, a: &[FpVec], b: &[u32], nvars: usize) -> Option<(FpVec, Vec<FpVec>)> {
    let mut aug: Vec<FpVec> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = fp::rref(p, &mut aug, nvars + 1);
    if pivots.last() == Some(&nvars) {
        return None;
    }
    let mut x = vec![0; nvars];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][nvars];
    }
    let coeff_rows: Vec<FpVec> = aug.iter().map(|r| r[..nvars].to_vec()).collect();
    Some((x, fp::kernel(p, &coeff_rows, nvars)))
}

/// All totally isotropic subspaces of dimension `d` whose reduced echelon
/// basis has the given pivot columns.
fn isotropic_with_pivots(form: &FpForm, pivots: &[usize]) -> Vec<Subspace> {
    let p = form.prime();
    let n = form.dim();
    let mut out = Vec::new();
    let mut rows: Vec<FpVec> = Vec::new();
    extend_rows(form, pivots, &mut rows, &mut out, p, n);
    out
}

fn extend_rows(form: &FpForm, pivots: &[usize], rows: &mut Vec<FpVec>, out: &mut Vec<Subspace>, p: u32, n: usize) {
    let i = rows.len();
    if i == pivots.len() {
        out.push(Subspace::span(p, n, rows));
        return;
    }
    let c = pivots[i];
    let free: Vec<usize> = (c + 1..n).filter(|k| !pivots.contains(k)).collect();
    // Orthogonality to earlier rows is linear in the free entries.
    let images: Vec<FpVec> = rows.iter().map(|r| form.apply(r)).collect();
    let a: Vec<FpVec> = images.iter().map(|g| free.iter().map(|&k| g[k]).collect()).collect();
    let b: Vec<u32> = images.iter().map(|g| fp::neg(p, g[c])).collect();
    let Some((x0, kernel)) = solve_affine(p, &a, &b, free.len()) else {
        return;
    };
    let coeffs = Subspace::full(p, kernel.len()).elements();
    for t in coeffs {
        let mut x = x0.clone();
        for (tk, kv) in t.iter().zip(&kernel) {
            if *tk != 0 {
                x = fp::vadd(p, &x, &fp::vscale(p, *tk, kv));
            }
        }
        let mut r = vec![0; n];
        r[c] = 1;
        for (&k, &xv) in free.iter().zip(&x) {
            r[k] = xv;
        }
        if form.pair(&r, &r) != 0 {
            continue;
        }
        rows.push(r);
        extend_rows(form, pivots, rows, out, p, n);
        rows.pop();
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every totally isotropic subspace of dimension `d`, in a fixed order: by
/// pivot set lexicographically, then by echelon entries. Pivot sets are
/// searched in parallel and merged in order.
pub fn isotropic_subspaces(form: &FpForm, d: usize) -> Vec<Subspace> {
    if d > form.dim() {
        return Vec::new();
    }
    combinations(form.dim(), d)
        .par_iter()
        .map(|piv| isotropic_with_pivots(form, piv))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// All metabolizers of a homogeneous nonsingular form on `(Z/p)^r`.
pub fn enumerate_metabolizers(l: &FiniteLinkingForm) -> Result<Vec<Metabolizer>> {
    let form = l.fp_form()?;
    if form.dim() % 2 == 1 {
        return Err(Error::Domain(format!(
            "group of order {}^{} is not a square: no metabolizer exists",
            l.prime(),
            form.dim()
        )));
    }
    Ok(isotropic_subspaces(&form, form.dim() / 2))
}

/// Serialize a subspace basis as `[a,b,..];[..]`.
pub fn format_subspace(s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    s.basis()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qpoly::ratio;

    fn v(s: &str) -> SeifertMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn from_seifert_examples() {
        let l = from_seifert(&v("0,1;2,0"), 3).unwrap();
        assert_eq!(l.orders(), &[BigInt::from(3), BigInt::from(3)]);
        assert_eq!(l.pairing().to_rows(), vec![vec![ratio(0, 1), ratio(1, 3)], vec![ratio(1, 3), ratio(0, 1)]]);
        let block = v("0,1;2,0");
        let two = block.block_sum(&block);
        assert_eq!(from_seifert(&two, 3).unwrap(), FiniteLinkingForm::hyperbolic(3, 2));
        let t = from_seifert(&v("-1,1;0,-1"), 3).unwrap();
        assert_eq!(t.rank(), 1);
        let self_pair = t.pairing()[(0, 0)].clone();
        assert!(self_pair == ratio(1, 3) || self_pair == ratio(2, 3));
        assert!(from_seifert(&v("-1,1;0,-1"), 5).is_err());
    }

    #[test]
    fn metabolizers_of_small_hyperbolic_forms() {
        let h1 = FiniteLinkingForm::hyperbolic(3, 1);
        let ms = enumerate_metabolizers(&h1).unwrap();
        assert_eq!(ms, vec![Subspace::span(3, 2, &[vec![1, 0]]), Subspace::span(3, 2, &[vec![0, 1]])]);
        assert_eq!(enumerate_metabolizers(&FiniteLinkingForm::hyperbolic(3, 2)).unwrap().len(), 8);
        assert_eq!(enumerate_metabolizers(&FiniteLinkingForm::hyperbolic(2, 1)).unwrap().len(), 3);
        let odd = FiniteLinkingForm::from_fp(&FpForm::new(3, vec![vec![1]]));
        assert!(enumerate_metabolizers(&odd).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let h = FiniteLinkingForm::hyperbolic(3, 1);
        let e1 = Subspace::span(3, 2, &[vec![1, 0]]);
        assert_eq!(annihilator(&h, &e1).unwrap(), e1);
        assert!(is_metabolizer(&h, &e1).unwrap());
        assert!(annihilator(&h, &Subspace::full(3, 2)).unwrap().is_zero());
        assert_eq!(annihilator(&h, &Subspace::zero(3, 2)).unwrap(), Subspace::full(3, 2));
    }

    #[test]
    fn hyperbolic_basis_of_diagonal_form() {
        // <1/3> ⊕ <-1/3> = <1/3> ⊕ <2/3> is hyperbolic.
        let l = FiniteLinkingForm::from_fp(&FpForm::new(3, vec![vec![1, 0], vec![0, 2]]));
        let b = l.hyperbolic_basis().unwrap();
        let f = l.fp_form().unwrap();
        assert_eq!((f.pair(&b[0], &b[0]), f.pair(&b[0], &b[1]), f.pair(&b[1], &b[1])), (0, 1, 0));
        // <1/3> ⊕ <1/3> is anisotropic mod 3.
        let aniso = FiniteLinkingForm::from_fp(&FpForm::new(3, vec![vec![1, 0], vec![0, 1]]));
        assert!(aniso.hyperbolic_basis().is_none());
    }
}
