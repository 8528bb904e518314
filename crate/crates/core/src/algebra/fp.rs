//! Vector spaces over a prime field `F_p` with small `p`: canonical subspaces
//! and bilinear forms.

use std::fmt;

pub type FpVec = Vec<u32>;

pub fn add(p: u32, a: u32, b: u32) -> u32 {
    (a + b) % p
}

pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    (a + p - b) % p
}

pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn neg(p: u32, a: u32) -> u32 {
    (p - a % p) % p
}

pub fn inv(p: u32, a: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverting zero mod {p}");
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

pub fn reduce(p: u32, x: i64) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn vadd(p: u32, a: &[u32], b: &[u32]) -> FpVec {
    a.iter().zip(b).map(|(&x, &y)| add(p, x, y)).collect()
}

pub fn vsub(p: u32, a: &[u32], b: &[u32]) -> FpVec {
    a.iter().zip(b).map(|(&x, &y)| sub(p, x, y)).collect()
}

pub fn vscale(p: u32, k: u32, a: &[u32]) -> FpVec {
    a.iter().map(|&x| mul(p, k, x)).collect()
}

pub fn dot(p: u32, a: &[u32], b: &[u32]) -> u32 {
    let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    (s % p as u64) as u32
}

/// Row-reduce in place over `F_p`; returns pivot columns. Rows past the rank
/// are left zero and truncated.
pub fn rref(p: u32, rows: &mut Vec<FpVec>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let iv = inv(p, rows[r][c]);
        rows[r] = vscale(p, iv, &rows[r]);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let sub_row = vscale(p, f, &rows[r]);
                rows[i] = vsub(p, &rows[i], &sub_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Right kernel of the matrix with the given rows, as a list of basis vectors.
pub fn kernel(p: u32, rows: &[FpVec], n: usize) -> Vec<FpVec> {
    let mut m = rows.to_vec();
    let pivots = rref(p, &mut m, n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(p, m[r][fc]);
            }
            v
        })
        .collect()
}

/// A subspace of `F_p^n`, stored by its reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u32,
    n: usize,
    basis: Vec<FpVec>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace { p, n, basis: Vec::new() }
    }

    pub fn full(p: u32, n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Subspace { p, n, basis }
    }

    pub fn span(p: u32, n: usize, vectors: &[FpVec]) -> Self {
        let mut rows: Vec<FpVec> = vectors.iter().map(|v| v.iter().map(|&x| x % p).collect()).collect();
        rref(p, &mut rows, n);
        Subspace { p, n, basis: rows }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.dim() as u32)
    }

    pub fn basis(&self) -> &[FpVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("nonzero basis row"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w: FpVec = v.iter().map(|&x| x % self.p).collect();
        for (row, pc) in self.basis.iter().zip(self.pivots()) {
            if w[pc] != 0 {
                let f = w[pc];
                w = vsub(self.p, &w, &vscale(self.p, f, row));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.n, &v)
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coeffs: &[u32]) -> FpVec {
        let mut v = vec![0; self.n];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                v = vadd(self.p, &v, &vscale(self.p, *c, b));
            }
        }
        v
    }

    /// Every element, enumerated by basis coefficients in lexicographic order
    /// (first coefficient slowest).
    pub fn elements(&self) -> Vec<FpVec> {
        let d = self.dim();
        let total = self.order() as usize;
        let mut out = Vec::with_capacity(total);
        let mut coeffs = vec![0u32; d];
        for _ in 0..total {
            out.push(self.combine(&coeffs));
            for k in (0..d).rev() {
                coeffs[k] += 1;
                if coeffs[k] < self.p {
                    break;
                }
                coeffs[k] = 0;
            }
        }
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?} mod {}", self.basis, self.p)
    }
}

/// Every vector of `F_p^n` in lexicographic order.
pub fn all_vectors(p: u32, n: usize) -> Vec<FpVec> {
    Subspace::full(p, n).elements()
}

/// Symmetric bilinear form on `F_p^n` given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpForm {
    p: u32,
    gram: Vec<FpVec>,
}

impl FpForm {
    pub fn new(p: u32, gram: Vec<FpVec>) -> Self {
        let n = gram.len();
        assert!(gram.iter().all(|r| r.len() == n), "Gram matrix must be square");
        let gram = gram.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        FpForm { p, gram }
    }

    /// Orthogonal sum of `g` hyperbolic planes `[[0,1],[1,0]]`.
    pub fn hyperbolic(p: u32, g: usize) -> Self {
        let n = 2 * g;
        let gram = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i / 2 == j / 2 && i != j)).collect())
            .collect();
        FpForm { p, gram }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[FpVec] {
        &self.gram
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn apply(&self, x: &[u32]) -> FpVec {
        (0..self.dim())
            .map(|j| {
                let s: u64 = (0..self.dim()).map(|i| x[i] as u64 * self.gram[i][j] as u64).sum();
                (s % self.p as u64) as u32
            })
            .collect()
    }

    pub fn pair(&self, x: &[u32], y: &[u32]) -> u32 {
        dot(self.p, &self.apply(x), y)
    }

    pub fn is_nonsingular(&self) -> bool {
        kernel(self.p, &self.gram, self.dim()).is_empty()
    }

    /// `{x : b(x, s) = 0 for all s in S}`.
    pub fn annihilator(&self, s: &Subspace) -> Subspace {
        let rows: Vec<FpVec> = s.basis().iter().map(|b| self.apply(b)).collect();
        Subspace::span(self.p, self.dim(), &kernel(self.p, &rows, self.dim()))
    }

    pub fn is_isotropic(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i..b.len()).all(|j| self.pair(&b[i], &b[j]) == 0))
    }

    /// Orthogonal sum `self ⊕ (k · other)`.
    pub fn direct_sum_scaled(&self, other: &FpForm, k: u32) -> FpForm {
        let (n, m) = (self.dim(), other.dim());
        let gram = (0..n + m)
            .map(|i| {
                (0..n + m)
                    .map(|j| match (i < n, j < n) {
                        (true, true) => self.gram[i][j],
                        (false, false) => mul(self.p, k % self.p, other.gram[i - n][j - n]),
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        FpForm { p: self.p, gram }
    }

    pub fn negate(&self) -> FpForm {
        FpForm {
            p: self.p,
            gram: self.gram.iter().map(|r| r.iter().map(|&x| neg(self.p, x)).collect()).collect(),
        }
    }
}

impl fmt::Debug for FpForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpForm(p={}, {:?})", self.p, self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_p() {
        for p in [2, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul(p, a, inv(p, a)), 1);
            }
        }
    }

    #[test]
    fn subspace_canonical_form() {
        let a = Subspace::span(3, 3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        let b = Subspace::span(3, 3, &[vec![2, 1, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.order(), 3);
        assert!(a.contains(&[1, 2, 0]));
        assert!(!a.contains(&[1, 0, 0]));
        assert_eq!(Subspace::full(3, 2).elements().len(), 9);
    }

    #[test]
    fn hyperbolic_annihilators() {
        let h = FpForm::hyperbolic(3, 1);
        let e1 = Subspace::span(3, 2, &[vec![1, 0]]);
        assert_eq!(h.annihilator(&e1), e1);
        assert!(h.annihilator(&Subspace::full(3, 2)).is_zero());
        assert_eq!(h.annihilator(&Subspace::zero(3, 2)), Subspace::full(3, 2));
    }
}
