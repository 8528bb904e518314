//! Splitting a metabolizer of `β_K ⊕ -β_J` into the pieces `M_K`, `M_0`,
//! `M_{m'}` and `M_{J,0}`, with exhaustive checks of the splitting lemmas on
//! small homogeneous forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::fp::{self, FpForm, FpVec, Subspace};
use crate::error::{domain, Result};
use crate::linkform::{self, format_subspace, FiniteLinkingForm, Metabolizer};

/// Everything derived from one pair `(M_#, M_J)`. Subgroups are stored as
/// sorted element lists, exactly as found by scanning `M_#`.
#[derive(Clone, PartialEq, Eq)]
pub struct SplitData {
    /// `β_K ⊕ -β_J` on `H_K ⊕ H_J`.
    pub ambient: FiniteLinkingForm,
    pub k_form: FpForm,
    pub j_form: FpForm,
    pub m_sharp: Metabolizer,
    pub m_j: Metabolizer,
    pub m_k: Vec<FpVec>,
    pub m_0: Vec<FpVec>,
    pub m_j0: Vec<FpVec>,
    /// `m' ↦ M_{m'}` for every `m' ∈ M_J` (possibly empty).
    pub coset_map: BTreeMap<FpVec, Vec<FpVec>>,
}

/// `β_K ⊕ -β_J` as a form over `F_p`.
pub fn ambient_form(k: &FpForm, j: &FpForm) -> FpForm {
    k.direct_sum_scaled(j, k.prime() - 1)
}

fn is_closed(p: u32, set: &[FpVec]) -> bool {
    let members: BTreeSet<&FpVec> = set.iter().collect();
    set.iter().any(|x| x.iter().all(|&c| c == 0))
        && set.iter().all(|x| set.iter().all(|y| members.contains(&fp::vadd(p, x, y))))
}

fn sorted(mut v: Vec<FpVec>) -> Vec<FpVec> {
    v.sort();
    v.dedup();
    v
}

/// Compute the split subgroups of `M_#` relative to `M_J`.
pub fn split(k: &FiniteLinkingForm, j: &FiniteLinkingForm, m_sharp: &Metabolizer, m_j: &Metabolizer) -> Result<SplitData> {
    let (kf, jf) = (k.fp_form()?, j.fp_form()?);
    if kf.prime() != jf.prime() {
        return domain("H_K and H_J are primary at different primes");
    }
    split_forms(&kf, &jf, m_sharp, m_j)
}

pub fn split_forms(kf: &FpForm, jf: &FpForm, m_sharp: &Metabolizer, m_j: &Metabolizer) -> Result<SplitData> {
    let amb = ambient_form(kf, jf);
    let (nk, nj) = (kf.dim(), jf.dim());
    if m_sharp.ambient_dim() != nk + nj || amb.annihilator(m_sharp) != *m_sharp {
        return domain("M_# is not a metabolizer of β_K ⊕ -β_J");
    }
    if m_j.ambient_dim() != nj || jf.annihilator(m_j) != *m_j {
        return domain("M_J is not a metabolizer of β_J");
    }
    let zero_j = vec![0; nj];
    let zero_k = vec![0; nk];
    // Bucket the elements of M_# by their H_J coordinate.
    let mut partners: BTreeMap<FpVec, Vec<FpVec>> = BTreeMap::new();
    for e in m_sharp.elements() {
        partners.entry(e[nk..].to_vec()).or_default().push(e[..nk].to_vec());
    }
    let members = |m2: &FpVec| sorted(partners.get(m2).cloned().unwrap_or_default());
    let coset_map: BTreeMap<FpVec, Vec<FpVec>> = m_j.elements().into_iter().map(|m2| {
        let s = members(&m2);
        (m2, s)
    }).collect();
    let m_k = sorted(coset_map.values().flatten().cloned().collect());
    let m_0 = members(&zero_j);
    let m_j0 = sorted(partners.iter().filter(|(_, ms)| ms.contains(&zero_k)).map(|(m2, _)| m2.clone()).collect());
    Ok(SplitData {
        ambient: FiniteLinkingForm::from_fp(&amb),
        k_form: kf.clone(),
        j_form: jf.clone(),
        m_sharp: m_sharp.clone(),
        m_j: m_j.clone(),
        m_k,
        m_0,
        m_j0,
        coset_map,
    })
}

/// The individual statements checked on a [`SplitData`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// `M_0` and `M_K` are closed under addition.
    SubgroupClosure,
    /// `M_K` is a metabolizer of `β_K`.
    MetabolizerK,
    /// Each nonempty `M_{m'}` is a coset of `M_0`.
    CosetLemma,
    /// `M_{m'} ↦ m'` is a well-defined injective homomorphism
    /// `M_K/M_0 → M_J/(M_J ∩ M_{J,0})`.
    InjectionLemma,
    /// `|M_K/M_0| ≤ |M_J/(M_J ∩ M_{J,0})|`.
    CountingBound,
    /// Two elements of `M_K` in one `M_0`-coset share a partner `m' ∈ M_J`,
    /// which is what makes the Casson-Gordon signature constant on cosets.
    CommonPartner,
    /// `M_0 ≠ 0` when `rank M_J < g` and `H_K = (Z_p)^{2g}`.
    NontrivialM0,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::SubgroupClosure => "subgroup-closure",
            Check::MetabolizerK => "m_k-metabolizer",
            Check::CosetLemma => "coset-lemma",
            Check::InjectionLemma => "injection-lemma",
            Check::CountingBound => "counting-bound",
            Check::CommonPartner => "common-partner",
            Check::NontrivialM0 => "nontrivial-m0",
        };
        f.write_str(s)
    }
}

impl SplitData {
    pub fn prime(&self) -> u32 {
        self.k_form.prime()
    }

    fn coset_of_m0(&self, x: &FpVec) -> Vec<FpVec> {
        sorted(self.m_0.iter().map(|y| fp::vadd(self.prime(), x, y)).collect())
    }

    fn m_j_cap_m_j0(&self) -> Vec<FpVec> {
        self.m_j0.iter().filter(|m2| self.m_j.contains(m2)).cloned().collect()
    }

    /// `M_K` as a subspace, if it is one.
    pub fn m_k_subspace(&self) -> Option<Subspace> {
        is_closed(self.prime(), &self.m_k).then(|| Subspace::span(self.prime(), self.k_form.dim(), &self.m_k))
    }

    pub fn m_0_subspace(&self) -> Option<Subspace> {
        is_closed(self.prime(), &self.m_0).then(|| Subspace::span(self.prime(), self.k_form.dim(), &self.m_0))
    }

    pub fn check(&self, c: Check) -> bool {
        match c {
            Check::SubgroupClosure => self.m_k_subspace().is_some() && self.m_0_subspace().is_some(),
            Check::MetabolizerK => self.m_k_subspace().is_some_and(|m| self.k_form.annihilator(&m) == m),
            Check::CosetLemma => verify_coset_lemma(self),
            Check::InjectionLemma => verify_injection_lemma(self),
            Check::CountingBound => {
                let quotient_j = self.m_j.order() as usize / self.m_j_cap_m_j0().len();
                self.m_k.len() / self.m_0.len() <= quotient_j && self.m_k.len().is_multiple_of(self.m_0.len())
            }
            Check::CommonPartner => self.m_k.iter().all(|x| {
                self.coset_of_m0(x).iter().all(|y| {
                    self.coset_map.values().any(|ms| ms.binary_search(x).is_ok() && ms.binary_search(y).is_ok())
                })
            }),
            Check::NontrivialM0 => {
                2 * self.m_j.dim() >= self.k_form.dim() || self.k_form.dim() % 2 == 1 || self.m_0.len() > 1
            }
        }
    }

    /// The first failing check in declaration order.
    pub fn first_failure(&self) -> Option<Check> {
        ALL_CHECKS.iter().copied().find(|&c| !self.check(c))
    }
}

pub const ALL_CHECKS: [Check; 7] = [
    Check::SubgroupClosure,
    Check::MetabolizerK,
    Check::CosetLemma,
    Check::InjectionLemma,
    Check::CountingBound,
    Check::CommonPartner,
    Check::NontrivialM0,
];

pub fn verify_coset_lemma(s: &SplitData) -> bool {
    s.coset_map.values().filter(|ms| !ms.is_empty()).all(|ms| ms.iter().all(|x| s.coset_of_m0(x) == *ms))
}

pub fn verify_injection_lemma(s: &SplitData) -> bool {
    let p = s.prime();
    let kernel_j = s.m_j_cap_m_j0();
    let nonempty: Vec<(&FpVec, &Vec<FpVec>)> = s.coset_map.iter().filter(|(_, ms)| !ms.is_empty()).collect();
    let in_kernel = |v: &FpVec| kernel_j.contains(v);
    nonempty.iter().all(|(a, ma)| {
        nonempty.iter().all(|(b, mb)| {
            let diff = fp::vsub(p, a, b);
            // Well defined and injective: equal cosets iff partners agree
            // modulo M_J ∩ M_{J,0}.
            let same = (ma == mb) == in_kernel(&diff);
            // Homomorphism: M_{a} + M_{b} ⊆ M_{a+b}.
            let sum = &s.coset_map[&fp::vadd(p, a, b)];
            same && sum.binary_search(&fp::vadd(p, &ma[0], &mb[0])).is_ok()
        })
    }) && kernel_j.iter().all(|m2| s.coset_map.get(m2) == Some(&s.m_0))
}

/// A split that failed one of the checks, serialized as coordinate lists.
#[derive(Clone)]
pub struct Counterexample {
    pub check: Check,
    pub data: SplitData,
}

fn list(vs: &[FpVec]) -> String {
    vs.iter()
        .map(|v| format!("[{}]", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.data;
        writeln!(f, "counterexample to {} at p = {}", self.check, d.prime())?;
        writeln!(f, "  beta_K gram: {:?}", d.k_form.gram())?;
        writeln!(f, "  beta_J gram: {:?}", d.j_form.gram())?;
        writeln!(f, "  M_#:  {}", format_subspace(&d.m_sharp))?;
        writeln!(f, "  M_J:  {}", format_subspace(&d.m_j))?;
        writeln!(f, "  M_K:  {}", list(&d.m_k))?;
        writeln!(f, "  M_0:  {}", list(&d.m_0))?;
        writeln!(f, "  M_J0: {}", list(&d.m_j0))?;
        for (m2, ms) in &d.coset_map {
            writeln!(f, "  M_{}: {}", list(std::slice::from_ref(m2)), list(ms))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Tallies for the nontrivial-`M_0` statement under both quantifier orders.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct M0Tally {
    /// Pairs `(M_#, M_J)` satisfying the rank hypothesis.
    pub applicable_pairs: usize,
    pub nontrivial_pairs: usize,
    pub sharp_total: usize,
    /// `M_#` for which every `M_J` gives `M_0 ≠ 0`.
    pub sharp_all_nontrivial: usize,
    /// `M_#` for which some `M_J` gives `M_0 ≠ 0`.
    pub sharp_some_nontrivial: usize,
}

impl M0Tally {
    pub fn applicable(&self) -> bool {
        self.applicable_pairs > 0
    }

    /// The reading "for every `M_#` and every `M_J`".
    pub fn forall_forall(&self) -> bool {
        self.applicable() && self.nontrivial_pairs == self.applicable_pairs
    }

    /// The reading "for some `M_#` and every `M_J`".
    pub fn exists_forall(&self) -> bool {
        self.applicable() && self.sharp_all_nontrivial > 0
    }

    fn merge(&mut self, o: &M0Tally) {
        self.applicable_pairs += o.applicable_pairs;
        self.nontrivial_pairs += o.nontrivial_pairs;
        self.sharp_total += o.sharp_total;
        self.sharp_all_nontrivial += o.sharp_all_nontrivial;
        self.sharp_some_nontrivial += o.sharp_some_nontrivial;
    }
}

/// A pair of forms `(β_K, β_J)` to sweep over.
#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub k_form: FpForm,
    pub j_form: FpForm,
}

impl Family {
    pub fn new(name: impl Into<String>, k_form: FpForm, j_form: FpForm) -> Self {
        Family { name: name.into(), k_form, j_form }
    }

    pub fn ambient_order_log_p(&self) -> usize {
        self.k_form.dim() + self.j_form.dim()
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub family: String,
    pub prime: u32,
    pub sharp_count: usize,
    pub j_count: usize,
    pub instances: usize,
    /// First failure in the canonical order of `(M_#, M_J)`.
    pub counterexample: Option<Counterexample>,
    pub m0: M0Tally,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: p={} |M_#|-choices={} |M_J|-choices={} splits={} {}",
            self.family,
            self.prime,
            self.sharp_count,
            self.j_count,
            self.instances,
            if self.passed() { "ok" } else { "FAILED" }
        )?;
        if self.m0.applicable() {
            write!(
                f,
                " nontrivial-M0 {}/{} pairs, {}/{} M_# for all M_J",
                self.m0.nontrivial_pairs, self.m0.applicable_pairs, self.m0.sharp_all_nontrivial, self.m0.sharp_total
            )?;
        } else {
            write!(f, " nontrivial-M0 inapplicable")?;
        }
        Ok(())
    }
}

/// Split every metabolizer of `β_K ⊕ -β_J` against every metabolizer of
/// `β_J` and run all checks.
pub fn sweep(family: &Family) -> Result<SweepReport> {
    let (kf, jf) = (&family.k_form, &family.j_form);
    let kl = FiniteLinkingForm::from_fp(kf);
    let jl = FiniteLinkingForm::from_fp(jf);
    let sharps = linkform::enumerate_metabolizers(&FiniteLinkingForm::from_fp(&ambient_form(kf, jf)))?;
    let js = linkform::enumerate_metabolizers(&jl)?;
    // Metabolizers of a form all have half its dimension.
    let applicable = kf.dim() % 2 == 0 && 2 * (jf.dim() / 2) < kf.dim();
    let per_sharp: Vec<Result<(Option<Counterexample>, M0Tally)>> = sharps
        .par_iter()
        .map(|ms| {
            let mut first = None;
            let mut tally = M0Tally { sharp_total: 1, ..Default::default() };
            let mut nontrivial = 0;
            for mj in &js {
                let data = split(&kl, &jl, ms, mj)?;
                if first.is_none() {
                    if let Some(check) = data.first_failure() {
                        first = Some(Counterexample { check, data: data.clone() });
                    }
                }
                if applicable {
                    tally.applicable_pairs += 1;
                    if data.m_0.len() > 1 {
                        nontrivial += 1;
                    }
                }
            }
            tally.nontrivial_pairs = nontrivial;
            if applicable {
                tally.sharp_all_nontrivial = usize::from(nontrivial == js.len());
                tally.sharp_some_nontrivial = usize::from(nontrivial > 0);
            }
            Ok((first, tally))
        })
        .collect();
    let mut counterexample = None;
    let mut m0 = M0Tally::default();
    for r in per_sharp {
        let (ce, t) = r?;
        if counterexample.is_none() {
            counterexample = ce;
        }
        m0.merge(&t);
    }
    Ok(SweepReport {
        family: family.name.clone(),
        prime: kf.prime(),
        sharp_count: sharps.len(),
        j_count: js.len(),
        instances: sharps.len() * js.len(),
        counterexample,
        m0,
    })
}

/// The nontrivial-`M_0` statement for `H_K = (Z_p)^{2g}` against `β_J`:
/// every pair is split and both quantifier readings are tallied. The tally
/// is marked inapplicable when no `M_J` has rank below `g`.
pub fn verify_nontrivial_m0(k_form: &FpForm, j_form: &FpForm) -> Result<M0Tally> {
    Ok(sweep(&Family::new("nontrivial-m0", k_form.clone(), j_form.clone()))?.m0)
}

/// `A^T G A` for a random invertible `A`.
pub fn twist(form: &FpForm, rng: &mut impl Rng) -> FpForm {
    let p = form.prime();
    let n = form.dim();
    let a = loop {
        let rows: Vec<FpVec> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        if Subspace::span(p, n, &rows).dim() == n {
            break rows;
        }
    };
    let g = form.gram();
    let gram = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = 0;
                    for r in 0..n {
                        for c in 0..n {
                            s = fp::add(p, s, fp::mul(p, fp::mul(p, a[r][i], g[r][c]), a[c][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    FpForm::new(p, gram)
}

/// Largest ambient group allowed in the standard sweeps, as an exponent of 3.
pub const MAX_AMBIENT_EXPONENT: usize = 10;

/// Hyperbolic `H_K` of rank `2g` (`g ≤ 2`) against hyperbolic `H_J` of rank
/// `2g'` (`g' ≤ 2`), plus the same pairs in random bases and the forms coming
/// from Seifert matrices of the slice knot with `V = [[0,1],[2,0]]`.
pub fn standard_families(p: u32, seed: u64) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in 1..=2 {
        for gj in 0..=2 {
            if 2 * (g + gj) > MAX_AMBIENT_EXPONENT {
                continue;
            }
            let (k, j) = (FpForm::hyperbolic(p, g), FpForm::hyperbolic(p, gj));
            out.push(Family::new(format!("hyperbolic g={g} g'={gj}"), k.clone(), j.clone()));
            out.push(Family::new(format!("twisted g={g} g'={gj}"), twist(&k, &mut rng), twist(&j, &mut rng)));
        }
    }
    if p == 3 {
        let block: crate::seifert::SeifertMatrix = "0,1;2,0".parse().expect("valid Seifert matrix");
        let two = block.block_sum(&block);
        for (name, v) in [("seifert g=1", &block), ("seifert g=2", &two)] {
            let k = linkform::from_seifert(v, 3).and_then(|l| l.fp_form()).expect("homogeneous 3-torsion");
            out.push(Family::new(format!("{name} g'=1"), k, FpForm::hyperbolic(3, 1)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(g: usize) -> FpForm {
        FpForm::hyperbolic(3, g)
    }

    #[test]
    fn diagonal_split() {
        let diag = Subspace::span(3, 4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        let mj = Subspace::span(3, 2, &[vec![1, 0]]);
        // The diagonal is a metabolizer of β ⊕ -β.
        let d = split_forms(&h(1), &h(1), &diag, &mj).unwrap();
        assert_eq!(d.m_k_subspace().unwrap(), mj);
        assert_eq!(d.m_0, vec![vec![0, 0]]);
        assert_eq!(d.m_j0, vec![vec![0, 0]]);
        assert_eq!(d.first_failure(), None);
    }

    #[test]
    fn product_split() {
        let prod = Subspace::span(3, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let mj = Subspace::span(3, 2, &[vec![0, 1]]);
        let d = split_forms(&h(1), &h(1), &prod, &mj).unwrap();
        assert_eq!(d.m_0_subspace().unwrap(), Subspace::span(3, 2, &[vec![0, 1]]));
        assert_eq!(d.m_k, d.m_0);
        assert!(verify_coset_lemma(&d) && verify_injection_lemma(&d));
    }

    #[test]
    fn rejects_non_metabolizers() {
        let bad = Subspace::span(3, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let mj = Subspace::span(3, 2, &[vec![1, 0]]);
        assert!(split_forms(&h(1), &h(1), &bad, &mj).is_err());
        let ms = Subspace::span(3, 4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert!(split_forms(&h(1), &h(1), &ms, &Subspace::span(3, 2, &[vec![1, 1]])).is_err());
    }

    #[test]
    fn m0_tallies() {
        let t = verify_nontrivial_m0(&h(2), &h(1)).unwrap();
        assert!(t.forall_forall() && t.exists_forall());
        assert_eq!(t.applicable_pairs, 80 * 2);
        assert!(!verify_nontrivial_m0(&h(1), &h(1)).unwrap().applicable());
    }

    #[test]
    fn twisted_form_is_still_hyperbolic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = twist(&h(2), &mut rng);
        assert!(t.is_nonsingular() && t.is_symmetric());
        assert_eq!(linkform::isotropic_subspaces(&t, 2).len(), 8);
    }
}
