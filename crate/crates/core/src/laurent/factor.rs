//! Factorization of integer polynomials over Q: squarefree decomposition,
//! Berlekamp factorization modulo a good prime, multifactor Hensel lifting and
//! Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::algebra::qpoly::QPoly;
use crate::algebra::zpoly::ZPoly;

/// Dense polynomial over `F_p`, constant term first, no trailing zeros.
type Pp = Vec<u64>;

fn trim(mut a: Pp) -> Pp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

fn p_reduce(f: &ZPoly, p: u64) -> Pp {
    let pb = BigInt::from(p);
    trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn p_sub(a: &Pp, b: &Pp, p: u64) -> Pp {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

fn p_mul(a: &Pp, b: &Pp, p: u64) -> Pp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim(v)
}

fn p_scale(a: &Pp, k: u64, p: u64) -> Pp {
    trim(a.iter().map(|&x| x * k % p).collect())
}

fn p_divrem(a: &Pp, b: &Pp, p: u64) -> (Pp, Pp) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let m = b.len() - 1;
    let lc_inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - m];
    for k in (0..q.len()).rev() {
        let c = r[k + m] * lc_inv % p;
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(m);
    (trim(q), trim(r))
}

fn p_monic(a: &Pp, p: u64) -> Pp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => p_scale(a, inv_mod(l, p), p),
    }
}

fn p_gcd(a: &Pp, b: &Pp, p: u64) -> Pp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = p_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    p_monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
fn p_ext_gcd(a: &Pp, b: &Pp, p: u64) -> (Pp, Pp, Pp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = p_divrem(&r0, &r1, p);
        let s2 = p_sub(&s0, &p_mul(&q, &s1, p), p);
        let t2 = p_sub(&t0, &p_mul(&q, &t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let l = inv_mod(*r0.last().unwrap(), p);
    (p_scale(&r0, l, p), p_scale(&s0, l, p), p_scale(&t0, l, p))
}

fn p_derivative(a: &Pp, p: u64) -> Pp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// Berlekamp factorization of a monic squarefree polynomial over `F_p`.
fn berlekamp(f: &Pp, p: u64) -> Vec<Pp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Row i of Q holds x^(i p) mod f.
    let xp = {
        let mut base = vec![0, 1];
        let mut acc = vec![1u64];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = p_divrem(&p_mul(&acc, &base, p), f, p).1;
            }
            base = p_divrem(&p_mul(&base, &base, p), f, p).1;
            e >>= 1;
        }
        acc
    };
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut r = cur.clone();
        r.resize(n, 0);
        rows.push(r);
        cur = p_divrem(&p_mul(&cur, &xp, p), f, p).1;
    }
    // Kernel of (Q - I)^T: vectors v with v (Q - I) = 0.
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..n).map(|i| (rows[i][j] + p - u64::from(i == j)) % p).collect())
        .collect();
    let basis = kernel_mod(&mut m, n, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in basis.iter() {
        if factors.len() == r {
            break;
        }
        let v = trim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.len() <= 2 {
                next.push(u);
                continue;
            }
            let mut rest = u;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = p_sub(&v, &vec![s], p);
                let g = p_gcd(&rest, &shifted, p);
                if g.len() > 1 && g.len() < rest.len() {
                    rest = p_divrem(&rest, &g, p).0;
                    next.push(g);
                }
            }
            next.push(p_monic(&rest, p));
        }
        factors = next;
    }
    debug_assert_eq!(factors.len(), r);
    factors
}

fn kernel_mod(m: &mut [Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let iv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..n {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][fc]) % p;
            }
            v
        })
        .collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Symmetric residue of `x` modulo `m`, in `(-m/2, m/2]`.
fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn z_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn lift_pp(a: &Pp) -> ZPoly {
    ZPoly::new(a.iter().map(|&x| BigInt::from(x)).collect())
}

/// Lift `g = a b mod p` (a monic) to a factorization modulo `p^k`.
fn hensel_pair(g: &ZPoly, a: &Pp, b: &Pp, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = p_ext_gcd(a, b, p);
    let pb = BigInt::from(p);
    let (mut za, mut zb) = (lift_pp(a), lift_pp(b));
    let mut pk = pb.clone();
    for _ in 1..k {
        // e = (g - a b) / p^k mod p
        let diff = g.clone() - &za * &zb;
        let e: Vec<BigInt> = diff.coeffs().iter().map(|c| (c / &pk).mod_floor(&pb)).collect();
        let e = trim(e.iter().map(|c| c.to_u64().unwrap()).collect());
        if !e.is_empty() {
            let te = p_mul(&t, &e, p);
            let (q, da) = p_divrem(&te, a, p);
            let db = trim(p_sub(&p_mul(&s, &e, p), &p_scale(&p_mul(&q, b, p), p - 1, p), p));
            za = za + lift_pp(&da).scale(&pk);
            zb = zb + lift_pp(&db).scale(&pk);
        }
        pk *= &pb;
    }
    (z_mod(&za, &pk), z_mod(&zb, &pk))
}

/// Lift the monic modular factors of `g` (with `g = lc * prod mod p`) to
/// monic factors modulo `p^k`.
fn hensel_multi(g: &ZPoly, factors: &[Pp], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc_inv = g.lc().modinv(&pk).expect("lc invertible mod p^k");
        return vec![z_mod(&g.scale(&lc_inv), &pk)];
    }
    let lc_p = g.lc().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let rest = factors[1..]
        .iter()
        .fold(vec![lc_p], |acc, f| p_mul(&acc, f, p));
    let (a, b) = hensel_pair(g, &factors[0], &rest, p, k);
    let mut out = vec![a];
    out.extend(hensel_multi(&b, &factors[1..], p, k));
    out
}

fn squarefree_mod_p(f: &ZPoly, p: u64) -> bool {
    let fp = p_reduce(f, p);
    fp.len() == f.coeffs().len() && p_gcd(&fp, &p_derivative(&fp, p), p).len() == 1
}

/// Factor a primitive squarefree polynomial of positive degree and positive
/// leading coefficient into irreducibles over Z.
fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    // Among the first few good primes, keep the one with fewest modular factors.
    let mut best: Option<(u64, Vec<Pp>)> = None;
    let mut tried = 0;
    for p in (3u64..).filter(|&p| is_prime(p)) {
        if tried == 5 || p > 2000 {
            break;
        }
        if !squarefree_mod_p(f, p) {
            continue;
        }
        tried += 1;
        let facs = berlekamp(&p_monic(&p_reduce(f, p), p), p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("a good prime exists");
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Mignotte-style bound on coefficients of lc * (any factor).
    let norm = f.norm_sq().sqrt() + BigInt::one();
    let bound = BigInt::from(2) * f.lc().abs() * (BigInt::one() << f.deg()) * norm;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let mut lifted = hensel_multi(f, &modular, p, k);
    let mut g = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), s) {
            let lc = g.lc();
            let prod = subset
                .iter()
                .fold(ZPoly::constant(lc.clone()), |acc, &i| z_mod(&(acc * lifted[i].clone()), &pk));
            let cand = ZPoly::new(prod.coeffs().iter().map(|c| symmetric_mod(c, &pk)).collect()).primitive();
            if let Some(q) = g.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                g = q.primitive();
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
            }
            None => s += 1,
        }
    }
    found.push(g);
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Yun's squarefree decomposition over Q; returns primitive integer parts
/// `(a_i, i)` with `f = ± prod a_i^i`.
fn squarefree_decomposition(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let a = QPoly::from(f);
    let d = a.derivative();
    let c = a.gcd(&d);
    let mut w = a.div_rem(&c).0;
    let mut y = d.div_rem(&c).0;
    let mut z = &y - &w.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while w.deg() > 0 {
        let g = w.gcd(&z);
        if g.deg() > 0 {
            out.push((g.to_primitive_zpoly(), i));
        }
        w = w.div_rem(&g).0;
        y = z.div_rem(&g).0;
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

/// Irreducible factors over Z of a primitive polynomial with nonzero constant
/// term, with multiplicities, sorted canonically.
pub fn factor_primitive(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let mut out: Vec<(ZPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for q in factor_squarefree(&part) {
            out.push((q.primitive(), mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn berlekamp_splits_mod_p() {
        // x^2 + 1 = (x + 2)(x + 3) mod 5
        let f = berlekamp(&vec![1, 0, 1], 5);
        assert_eq!(f.len(), 2);
        // x^4 + 1 is irreducible over Q but splits into quadratics mod 3.
        assert_eq!(berlekamp(&vec![1, 0, 0, 0, 1], 3).len(), 2);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 + 1 splits modulo every prime; recombination must keep it whole.
        assert_eq!(factor_primitive(&z(&[1, 0, 0, 0, 1])), vec![(z(&[1, 0, 0, 0, 1]), 1)]);
    }

    #[test]
    fn mixed_multiplicities() {
        let f = z(&[1, -1, 1]).pow(2) * z(&[-2, 1]) * z(&[-1, 2]).pow(3);
        let got = factor_primitive(&f);
        assert_eq!(
            got,
            vec![(z(&[-2, 1]), 1), (z(&[-1, 2]), 3), (z(&[1, -1, 1]), 2)]
        );
    }

    #[test]
    fn large_leading_coefficient() {
        let f = z(&[3, -7, 3]) * z(&[5, -11, 5]) * z(&[1, 1, 1, 1, 1]);
        let got: Vec<ZPoly> = factor_primitive(&f).into_iter().map(|x| x.0).collect();
        assert_eq!(got, vec![z(&[3, -7, 3]), z(&[5, -11, 5]), z(&[1, 1, 1, 1, 1])]);
    }
}
