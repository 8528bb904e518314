//! A symbolic model of the Casson-Gordon signatures of the knot `K*`
//! obtained from the genus `N` slice knot `K` (Seifert form `N·[[0,1],[2,0]]`)
//! by infecting along the link `L = L' ∪ L'' ∪ L'''`.
//!
//! `H = (Z/3)^{2N}` is stored with `ã_k` at coordinate `2(k-1)` and `b̃_k` at
//! `2(k-1)+1`, so the linking form is the standard hyperbolic one and
//! `χ_m(ã_k) = β_k(m)`, `χ_m(b̃_k) = α_k(m)` where `m = Σ α_k ã_k + β_k b̃_k`.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::fp::{self, FpForm, FpVec, Subspace};
use crate::error::{domain, Result};
use crate::linkform::{format_subspace, isotropic_subspaces};

pub const P: u32 = 3;

fn a(k: usize) -> usize {
    2 * (k - 1)
}

fn b(k: usize) -> usize {
    2 * (k - 1) + 1
}

fn unit(n: usize, i: usize) -> FpVec {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Position of `v` in the lexicographic enumeration of `F_p^n`.
fn index_of(p: u32, v: &[u32]) -> usize {
    v.iter().fold(0, |acc, &x| acc * p as usize + x as usize)
}

/// A component of the infection link, seen through the character it pairs
/// with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    /// Coefficient `[χ(class) ≠ 0]`.
    Single { class: FpVec },
    /// Two components filled by `J` and `-J`: coefficient
    /// `[χ(first) ≠ 0] - [χ(second) ≠ 0]`.
    Pair { first: FpVec, second: FpVec },
}

impl Component {
    fn pad(&self, before: usize, after: usize) -> Component {
        let pad = |v: &FpVec| {
            let mut w = vec![0; before];
            w.extend(v);
            w.extend(std::iter::repeat_n(0, after));
            w
        };
        match self {
            Component::Single { class } => Component::Single { class: pad(class) },
            Component::Pair { first, second } => Component::Pair { first: pad(first), second: pad(second) },
        }
    }
}

/// Values of `σ(K, χ_m)` for every `m`, indexed lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseFunction {
    Zero,
    Table(Vec<i64>),
}

impl BaseFunction {
    /// Random even function with `f(0) = 0` and values in `[0, bound]`.
    pub fn random_even(dim: usize, bound: i64, rng: &mut impl Rng) -> BaseFunction {
        let elems = fp::all_vectors(P, dim);
        let mut table = vec![0; elems.len()];
        for (i, m) in elems.iter().enumerate() {
            let j = index_of(P, &m.iter().map(|&x| fp::neg(P, x)).collect::<Vec<_>>());
            if j < i {
                table[i] = table[j];
            } else if i > 0 {
                table[i] = rng.gen_range(0..=bound);
            }
        }
        BaseFunction::Table(table)
    }

    pub fn value(&self, m: &[u32]) -> i64 {
        match self {
            BaseFunction::Zero => 0,
            BaseFunction::Table(t) => t[index_of(P, m)],
        }
    }

    /// `max |f(x) - f(y)|`.
    pub fn spread(&self) -> i64 {
        match self {
            BaseFunction::Zero => 0,
            BaseFunction::Table(t) => t.iter().max().unwrap_or(&0) - t.iter().min().unwrap_or(&0),
        }
    }

    fn is_even(&self, dim: usize) -> bool {
        fp::all_vectors(P, dim)
            .iter()
            .all(|m| self.value(m) == self.value(&m.iter().map(|&x| fp::neg(P, x)).collect::<Vec<_>>()))
    }
}

/// `σ(K*, χ_m) = σ(K, χ_m) + 2 Σ_j coeff_j(m) · weight_j`, where the weights
/// are the `1/3` Tristram-Levine signatures of the infecting knots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionModel {
    pub form: FpForm,
    pub base: BaseFunction,
    pub components: Vec<Component>,
    pub weights: Vec<i64>,
}

impl CompanionModel {
    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    fn chi(&self, m: &[u32], x: &[u32]) -> u32 {
        self.form.pair(x, m)
    }

    pub fn coefficient(&self, j: usize, m: &[u32]) -> i64 {
        let nz = |x: &FpVec| i64::from(self.chi(m, x) != 0);
        match &self.components[j] {
            Component::Single { class } => nz(class),
            Component::Pair { first, second } => nz(first) - nz(second),
        }
    }

    pub fn pattern(&self, m: &[u32]) -> Vec<i64> {
        (0..self.components.len()).map(|j| self.coefficient(j, m)).collect()
    }

    pub fn value(&self, m: &[u32]) -> i64 {
        let infection: i64 = self.pattern(m).iter().zip(&self.weights).map(|(c, w)| c * w).sum();
        self.base.value(m) + 2 * infection
    }

    /// The model of a connected sum: orthogonal sum of forms, disjoint union
    /// of infection links, base function `f_1(m_1) + f_2(m_2)`.
    pub fn connected_sum(&self, other: &CompanionModel) -> CompanionModel {
        let (n1, n2) = (self.dim(), other.dim());
        let mut components: Vec<Component> = self.components.iter().map(|c| c.pad(0, n2)).collect();
        components.extend(other.components.iter().map(|c| c.pad(n1, 0)));
        let mut weights = self.weights.clone();
        weights.extend(&other.weights);
        let base = match (&self.base, &other.base) {
            (BaseFunction::Zero, BaseFunction::Zero) => BaseFunction::Zero,
            _ => BaseFunction::Table(
                fp::all_vectors(P, n1 + n2)
                    .iter()
                    .map(|m| self.base.value(&m[..n1]) + other.base.value(&m[n1..]))
                    .collect(),
            ),
        };
        CompanionModel { form: self.form.direct_sum_scaled(&other.form, 1), base, components, weights }
    }
}

/// Where an `L'''` component sits: the pair `(a_k, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partner {
    B(usize),
    AN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleLink {
    pub k: usize,
    pub partner: Partner,
}

impl fmt::Display for TripleLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.partner {
            Partner::B(l) => write!(f, "(a_{}, b_{})", self.k, l),
            Partner::AN => write!(f, "(a_{}, a_N)", self.k),
        }
    }
}

/// How each signature in the schedule is obtained from the previous one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScheduleRule {
    /// `2 · prev + 1`. Meets the doubling condition but does not separate
    /// values once `E`-coefficient differences of `±2` occur (from `N = 3`).
    Doubling,
    /// `3 · prev + 1`. Each value exceeds twice the sum of all earlier ones
    /// by at least `2B + 1`, which separates patterns with coefficient
    /// differences up to 2.
    #[default]
    Tripling,
}

/// Positive signatures `σ'`, `σ''_1..σ''_N`, `σ'''_1..σ'''_{N²-1}` in that
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule(pub Vec<i64>);

impl Schedule {
    pub fn build(n: usize, bound: i64, rule: ScheduleRule) -> Schedule {
        let len = 1 + n + n * n - 1;
        let mut v = vec![2 * bound + 1];
        while v.len() < len {
            let prev = *v.last().unwrap();
            v.push(match rule {
                ScheduleRule::Doubling => 2 * prev + 1,
                ScheduleRule::Tripling => 3 * prev + 1,
            });
        }
        Schedule(v)
    }

    /// `σ' > 2B` and each later value more than doubles the previous one.
    pub fn is_doubling(&self, bound: i64) -> bool {
        self.0.first().is_some_and(|&s| s > 2 * bound) && self.0.windows(2).all(|w| w[1] > 2 * w[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CGConfiguration {
    pub n: usize,
    /// Bound `B` on `|σ(K, χ_x) - σ(K, χ_y)|`.
    pub bound: i64,
    pub schedule: Schedule,
    pub triples: Vec<TripleLink>,
    pub model: CompanionModel,
}

impl CGConfiguration {
    /// Zero base function and the default schedule.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_base(n, BaseFunction::Zero, 0, ScheduleRule::default())
    }

    pub fn with_base(n: usize, base: BaseFunction, bound: i64, rule: ScheduleRule) -> Result<Self> {
        Self::with_schedule(n, base, bound, Schedule::build(n, bound, rule))
    }

    /// Any schedule is accepted here; the doubling condition is checked where
    /// it is a precondition.
    pub fn with_schedule(n: usize, base: BaseFunction, bound: i64, schedule: Schedule) -> Result<Self> {
        if n == 0 {
            return domain("genus parameter N must be positive");
        }
        let dim = 2 * n;
        if let BaseFunction::Table(t) = &base {
            if t.len() != fp::all_vectors(P, dim).len() {
                return domain("base function table has the wrong size");
            }
        }
        if base.value(&vec![0; dim]) != 0 || !base.is_even(dim) {
            return domain("base function must vanish at 0 and satisfy f(m) = f(-m)");
        }
        if base.spread() > bound {
            return domain(format!("base function spread {} exceeds the bound {bound}", base.spread()));
        }
        if schedule.0.len() != n * n + n {
            return domain(format!("schedule needs {} entries", n * n + n));
        }
        let mut triples = Vec::with_capacity(n * n - 1);
        for k in 1..n {
            for l in 1..=n {
                triples.push(TripleLink { k, partner: Partner::B(l) });
            }
        }
        for k in 1..n {
            triples.push(TripleLink { k, partner: Partner::AN });
        }
        let mut components = vec![Component::Single { class: unit(dim, a(n)) }];
        components.extend((1..=n).map(|i| Component::Single { class: unit(dim, b(i)) }));
        for t in &triples {
            let first = unit(dim, a(t.k));
            let x = match t.partner {
                Partner::B(l) => unit(dim, b(l)),
                Partner::AN => unit(dim, a(n)),
            };
            components.push(Component::Pair { second: fp::vadd(P, &first, &x), first });
        }
        let model = CompanionModel { form: FpForm::hyperbolic(P, n), base, components, weights: schedule.0.clone() };
        Ok(CGConfiguration { n, bound, schedule, triples, model })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `span(b̃_1, ..., b̃_{N-1})`.
    pub fn b_span(&self) -> Subspace {
        let gens: Vec<FpVec> = (1..self.n).map(|i| unit(self.dim(), b(i))).collect();
        Subspace::span(P, self.dim(), &gens)
    }
}

/// The coefficients `(C, D, E)` of `χ_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficients {
    pub c: i64,
    pub d: Vec<i64>,
    pub e: Vec<i64>,
}

pub fn coefficients(cfg: &CGConfiguration, m: &[u32]) -> Coefficients {
    let pat = cfg.model.pattern(m);
    let n = cfg.n;
    Coefficients { c: pat[0], d: pat[1..=n].to_vec(), e: pat[n + 1..].to_vec() }
}

pub fn cg_value(cfg: &CGConfiguration, m: &[u32]) -> i64 {
    cfg.model.value(m)
}

/// Two elements with equal values but different coefficient patterns.
pub fn find_collision(cfg: &CGConfiguration) -> Option<(FpVec, FpVec)> {
    let mut seen: HashMap<i64, (Vec<i64>, FpVec)> = HashMap::new();
    for m in fp::all_vectors(P, cfg.dim()) {
        let pat = cfg.model.pattern(&m);
        match seen.get(&cg_value(cfg, &m)) {
            Some((p0, m0)) if *p0 != pat => return Some((m0.clone(), m)),
            Some(_) => {}
            None => {
                seen.insert(cg_value(cfg, &m), (pat, m));
            }
        }
    }
    None
}

/// Equal values force equal coefficient patterns, over all of `H`. With the
/// zero base function the value is a function of the pattern, so this is
/// the full equivalence.
pub fn separation_property(cfg: &CGConfiguration) -> Result<bool> {
    if !cfg.schedule.is_doubling(cfg.bound) {
        return domain("schedule violates the doubling condition");
    }
    Ok(find_collision(cfg).is_none())
}

fn nonzero_subspaces(s: &Subspace) -> Vec<Subspace> {
    let basis = s.basis();
    let d = basis.len();
    let n = s.ambient_dim();
    // Subspaces of s correspond to subspaces of F_3^d through the basis.
    (1..=d)
        .flat_map(|k| isotropic_subspaces(&FpForm::new(P, vec![vec![0; d]; d]), k))
        .map(|sub| Subspace::span(P, n, &sub.basis().iter().map(|c| s.combine(c)).collect::<Vec<_>>()))
        .collect()
}

fn constant_on_cosets(cfg: &CGConfiguration, m_k: &Subspace, m_0: &Subspace) -> bool {
    let zero = m_0.elements();
    m_k.elements().iter().all(|x| {
        let v = cg_value(cfg, x);
        zero.iter().all(|y| cg_value(cfg, &fp::vadd(P, x, y)) == v)
    })
}

/// Every subgroup `M_0` of a metabolizer `M_K` on whose cosets the value is
/// constant lies in `span(b̃_1..b̃_{N-1})`.
pub fn verify_m0_support(cfg: &CGConfiguration) -> bool {
    let span = cfg.b_span();
    let mks = isotropic_subspaces(&cfg.model.form, cfg.n);
    mks.par_iter().all(|mk| {
        nonzero_subspaces(mk).iter().all(|m0| !constant_on_cosets(cfg, mk, m0) || m0.is_subspace_of(&span))
    })
}

/// One `(M_K, M_0)` case with a coset carrying two distinct values.
#[derive(Debug, Clone)]
pub struct NonconstancyCase {
    pub m_k: Subspace,
    pub m_0: Subspace,
    /// `m` and `m - m_0` in the same coset.
    pub representative: FpVec,
    pub partner: FpVec,
    pub link_index: usize,
    pub link: TripleLink,
    pub values: (i64, i64),
    /// Whether the witness came from the normalized construction
    /// (`m_0 = b̃_j + ...`, `χ_m(ã_j) = 1`, `χ_m(b̃) = 1`) rather than a scan.
    pub from_construction: bool,
    pub normal_form: String,
}

impl fmt::Display for NonconstancyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |x: &FpVec| x.iter().map(u32::to_string).collect::<Vec<_>>().join("");
        write!(
            f,
            "M_K={} M_0={} m={} m-m0={} link#{} {} values {} vs {} [{}]",
            format_subspace(&self.m_k),
            format_subspace(&self.m_0),
            v(&self.representative),
            v(&self.partner),
            self.link_index,
            self.link,
            self.values.0,
            self.values.1,
            self.normal_form
        )
    }
}

#[derive(Debug, Clone)]
pub struct NonconstancyReport {
    pub n: usize,
    pub applicable: bool,
    pub metabolizers: usize,
    pub cases: Vec<NonconstancyCase>,
    /// `(M_K, M_0)` pairs with every coset constant.
    pub failures: Vec<(Subspace, Subspace)>,
}

impl NonconstancyReport {
    pub fn passed(&self) -> bool {
        self.applicable && self.failures.is_empty()
    }
}

impl fmt::Display for NonconstancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.applicable {
            return write!(f, "N={}: inapplicable (no nontrivial subgroup of span(b_1..b_(N-1)))", self.n);
        }
        write!(
            f,
            "N={}: {} metabolizers, {} (M_K, M_0) cases, {} failures",
            self.n,
            self.metabolizers,
            self.cases.len(),
            self.failures.len()
        )
    }
}

/// The witness from the proof: normalize `m_0 ∈ M_0` to have `b̃_j`
/// coefficient 1 at its first nonzero `b̃` coordinate, find `m ∈ M_K` outside
/// `span(b̃_1..b̃_{N-1})` with `χ_m(ã_j) = 1` and some `χ_m(b̃) = 1` for `b̃`
/// among `b̃_1..b̃_N, ã_N`, and compare `m` with `m - m_0` on `(a_j, b̃)`.
fn construct_witness(cfg: &CGConfiguration, mk: &Subspace, m0: &Subspace) -> Option<NonconstancyCase> {
    let n = cfg.n;
    let span = cfg.b_span();
    for z in m0.elements() {
        let Some(j) = (1..n).find(|&j| z[b(j)] != 0) else { continue };
        if z[b(j)] != 1 {
            continue;
        }
        for m in mk.elements() {
            if span.contains(&m) || m[b(j)] != 1 {
                continue;
            }
            let targets = (1..=n).map(|l| (Partner::B(l), a(l))).chain(std::iter::once((Partner::AN, b(n))));
            for (partner, coord) in targets {
                // χ_m(b̃_l) = α_l, χ_m(ã_N) = β_N.
                if m[coord] != 1 {
                    continue;
                }
                let link = TripleLink { k: j, partner };
                let idx = cfg.triples.iter().position(|t| *t == link)?;
                let mm = fp::vsub(P, &m, &z);
                let (v1, v2) = (cg_value(cfg, &m), cg_value(cfg, &mm));
                let e1 = coefficients(cfg, &m).e[idx];
                let e2 = coefficients(cfg, &mm).e[idx];
                if v1 != v2 && (e1, e2) == (0, -1) {
                    let label = match partner {
                        Partner::B(l) => format!("b_{l}"),
                        Partner::AN => "a_N".into(),
                    };
                    return Some(NonconstancyCase {
                        m_k: mk.clone(),
                        m_0: m0.clone(),
                        representative: m,
                        partner: mm,
                        link_index: idx,
                        link,
                        values: (v1, v2),
                        from_construction: true,
                        normal_form: format!("m_0 = b_{j} + ..., chi_m({label}) = 1"),
                    });
                }
            }
        }
    }
    None
}

fn scan_witness(cfg: &CGConfiguration, mk: &Subspace, m0: &Subspace) -> Option<NonconstancyCase> {
    for m in mk.elements() {
        for z in m0.elements() {
            let mm = fp::vsub(P, &m, &z);
            let (v1, v2) = (cg_value(cfg, &m), cg_value(cfg, &mm));
            if v1 == v2 {
                continue;
            }
            let (e1, e2) = (coefficients(cfg, &m).e, coefficients(cfg, &mm).e);
            let idx = (0..e1.len()).find(|&i| e1[i] != e2[i]).unwrap_or(0);
            return Some(NonconstancyCase {
                m_k: mk.clone(),
                m_0: m0.clone(),
                representative: m,
                partner: mm,
                link_index: idx,
                link: cfg.triples[idx],
                values: (v1, v2),
                from_construction: false,
                normal_form: "found by scan".into(),
            });
        }
    }
    None
}

/// For every metabolizer `M_K` of `H` and every nontrivial
/// `M_0 ⊆ M_K ∩ span(b̃_1..b̃_{N-1})`, exhibit a coset of `M_0` in `M_K`
/// carrying two different values.
pub fn verify_nonconstancy(cfg: &CGConfiguration) -> NonconstancyReport {
    let n = cfg.n;
    if n < 2 {
        return NonconstancyReport { n, applicable: false, metabolizers: 0, cases: vec![], failures: vec![] };
    }
    let span = cfg.b_span();
    let mks = isotropic_subspaces(&cfg.model.form, n);
    let per: Vec<Vec<std::result::Result<NonconstancyCase, (Subspace, Subspace)>>> = mks
        .par_iter()
        .map(|mk| {
            let inter: Vec<FpVec> = mk.elements().into_iter().filter(|x| span.contains(x)).collect();
            let inter = Subspace::span(P, cfg.dim(), &inter);
            nonzero_subspaces(&inter)
                .into_iter()
                .map(|m0| {
                    construct_witness(cfg, mk, &m0)
                        .or_else(|| scan_witness(cfg, mk, &m0))
                        .ok_or((mk.clone(), m0))
                })
                .collect()
        })
        .collect();
    let mut cases = Vec::new();
    let mut failures = Vec::new();
    for r in per.into_iter().flatten() {
        match r {
            Ok(c) => cases.push(c),
            Err(f) => failures.push(f),
        }
    }
    NonconstancyReport { n, applicable: true, metabolizers: mks.len(), cases, failures }
}

/// `trials` random even base functions with spread at most `bound`, each
/// with its own schedule, drawn from one seeded stream.
pub fn random_configurations(n: usize, bound: i64, trials: usize, seed: u64, rule: ScheduleRule) -> Result<Vec<CGConfiguration>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let base = BaseFunction::random_even(2 * n, bound, &mut rng);
            CGConfiguration::with_base(n, base, bound, rule)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(n: usize, alpha: &[u32], beta: &[u32]) -> FpVec {
        let mut v = vec![0; 2 * n];
        for k in 1..=n {
            v[a(k)] = alpha[k - 1];
            v[b(k)] = beta[k - 1];
        }
        v
    }

    #[test]
    fn link_index_set_size() {
        for n in 1..=4 {
            let cfg = CGConfiguration::new(n).unwrap();
            assert_eq!(cfg.triples.len(), n * n - 1);
            assert_eq!(cfg.model.components.len(), n * n + n);
        }
    }

    #[test]
    fn trivial_character() {
        let cfg = CGConfiguration::new(3).unwrap();
        let z = vec![0; 6];
        assert_eq!(coefficients(&cfg, &z), Coefficients { c: 0, d: vec![0; 3], e: vec![0; 8] });
        assert_eq!(cg_value(&cfg, &z), 0);
    }

    #[test]
    fn proof_coefficients() {
        // N = 3, b̃ = b̃_2: m with χ_m(ã_1) = 1 and χ_m(b̃_2) = 1, and
        // m_0 = b̃_1 so that χ_{m-m_0}(ã_1) = 0.
        let cfg = CGConfiguration::new(3).unwrap();
        let m = elem(3, &[0, 1, 0], &[1, 0, 0]);
        let idx = cfg.triples.iter().position(|t| *t == TripleLink { k: 1, partner: Partner::B(2) }).unwrap();
        assert_eq!(coefficients(&cfg, &m).e[idx], 0);
        let m0 = elem(3, &[0, 0, 0], &[1, 0, 0]);
        let mm = fp::vsub(P, &m, &m0);
        assert_eq!(coefficients(&cfg, &mm).e[idx], -1);
        assert_ne!(cg_value(&cfg, &m), cg_value(&cfg, &mm));
    }

    #[test]
    fn schedule_shape() {
        let s = Schedule::build(2, 5, ScheduleRule::Doubling);
        assert_eq!(s.0, vec![11, 23, 47, 95, 191, 383]);
        assert!(s.is_doubling(5));
        let s = Schedule::build(2, 5, ScheduleRule::Tripling);
        assert_eq!(s.0, vec![11, 34, 103, 310, 931, 2794]);
        assert!(s.is_doubling(5));
        assert!(!Schedule(vec![11, 11, 47, 95, 191, 383]).is_doubling(5));
    }

    #[test]
    fn evenness_enforced() {
        let mut t = vec![0; 81];
        t[1] = 2;
        assert!(CGConfiguration::with_base(2, BaseFunction::Table(t), 2, ScheduleRule::Doubling).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base = BaseFunction::random_even(4, 6, &mut rng);
        let cfg = CGConfiguration::with_base(2, base, 6, ScheduleRule::Doubling).unwrap();
        for m in fp::all_vectors(P, 4) {
            let neg: FpVec = m.iter().map(|&x| fp::neg(P, x)).collect();
            assert_eq!(cg_value(&cfg, &m), cg_value(&cfg, &neg));
        }
    }

    #[test]
    fn inapplicable_at_genus_one() {
        assert!(!verify_nonconstancy(&CGConfiguration::new(1).unwrap()).applicable);
    }
}
