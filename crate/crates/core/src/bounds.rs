//! Lower bounds for the concordance genus `g_c` and the 4-ball genus `g_4`,
//! and their combination with table data into a per-knot verdict.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::laurent::{factor, fox_milnor_test, NormalizedAlexander};
use crate::seifert::{classical_signature, milnor_signatures, SeifertMatrix};

/// How Milnor signatures at several root angles of one factor are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MilnorMode {
    /// Each factor contributes `deg/2 · max_θ |σ_θ/2|`. Always a valid bound.
    #[default]
    MaxPerFactor,
    /// Each factor contributes `deg/2 · Σ_θ |σ_θ/2|`, the literal reading of
    /// the sum over all pairs `(p_i, θ_i)`. Can exceed the genus.
    SumOverAngles,
}

/// Half the total degree of the symmetric irreducible factors of odd
/// multiplicity.
pub fn gc_polynomial_bound(delta: &NormalizedAlexander) -> Result<u32> {
    delta.check_knot_polynomial()?;
    let total: usize = factor(delta)
        .symmetric_factors()
        .filter(|f| f.multiplicity % 2 == 1)
        .map(|f| f.degree())
        .sum();
    Ok((total / 2) as u32)
}

/// Per-factor `max_θ |σ_θ| / 2` and `Σ_θ |σ_θ| / 2`.
fn milnor_by_factor(v: &SeifertMatrix) -> BTreeMap<Vec<i64>, (ZPoly, i64, i64)> {
    let mut per: BTreeMap<Vec<i64>, (ZPoly, i64, i64)> = BTreeMap::new();
    for m in milnor_signatures(v) {
        let key: Vec<i64> = m.factor.coeffs().iter().map(|c| i64::try_from(c).unwrap_or(i64::MAX)).collect();
        let k = (m.value / 2).abs();
        let e = per.entry(key).or_insert((m.factor.clone(), 0, 0));
        e.1 = e.1.max(k);
        e.2 += k;
    }
    per
}

/// `½ Σ |k_i| deg(p_i)` with `σ_θ = 2k`, combined across the root angles of
/// each factor according to `mode`.
pub fn gc_milnor_bound(v: &SeifertMatrix, mode: MilnorMode) -> u32 {
    let total: i64 = milnor_by_factor(v)
        .values()
        .map(|(p, max, sum)| {
            let k = match mode {
                MilnorMode::MaxPerFactor => *max,
                MilnorMode::SumOverAngles => *sum,
            };
            k * p.deg() as i64
        })
        .sum();
    (total / 2) as u32
}

/// Both obstructions read factor by factor: a concordant knot's Alexander
/// polynomial must contain each symmetric factor `p` at least
/// `max(ε mod 2, max_θ |σ_θ/2|)` times, where `ε` is the multiplicity of `p`
/// in Δ. Half the resulting degree bounds `g_c`.
pub fn gc_algebraic_bound(v: &SeifertMatrix, delta: &NormalizedAlexander) -> Result<u32> {
    delta.check_knot_polynomial()?;
    let milnor = milnor_by_factor(v);
    let mut total = 0usize;
    for f in factor(delta).symmetric_factors() {
        let key: Vec<i64> = f.poly.coeffs().iter().map(|c| i64::try_from(c).unwrap_or(i64::MAX)).collect();
        let k = milnor.get(&key).map_or(0, |e| e.1) as usize;
        let need = k.max((f.multiplicity % 2) as usize);
        total += need * f.degree();
    }
    Ok((total / 2) as u32)
}

/// `⌈|σ|/2⌉`.
pub fn g4_signature_bound(v: &SeifertMatrix) -> u32 {
    (classical_signature(v).unsigned_abs() as u32).div_ceil(2)
}

/// Rule that produced (or capped) a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    AlexanderFactors,
    MilnorSignatures,
    CombinedAlgebraic,
    Signature,
    FoxMilnor,
    SeifertGenus,
    TableG4,
    Concordance,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::AlexanderFactors => "alexander-factors",
            Rule::MilnorSignatures => "milnor-signatures",
            Rule::CombinedAlgebraic => "combined-algebraic",
            Rule::Signature => "signature",
            Rule::FoxMilnor => "fox-milnor",
            Rule::SeifertGenus => "genus",
            Rule::TableG4 => "table-g4",
            Rule::Concordance => "concordance",
        };
        f.write_str(s)
    }
}

/// Data for one knot.
#[derive(Debug, Clone)]
pub struct BoundInputs<'a> {
    pub delta: &'a NormalizedAlexander,
    pub seifert: Option<&'a SeifertMatrix>,
    pub genus: Option<u32>,
    /// Known range for `g_4`, inclusive.
    pub g4_range: Option<(u32, u32)>,
    /// `g_c` of a knot this one is known to be concordant to.
    pub concordant_gc: Option<u32>,
    pub milnor_mode: MilnorMode,
}

impl<'a> BoundInputs<'a> {
    pub fn new(delta: &'a NormalizedAlexander) -> Self {
        BoundInputs {
            delta,
            seifert: None,
            genus: None,
            g4_range: None,
            concordant_gc: None,
            milnor_mode: MilnorMode::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusBounds {
    pub genus: Option<u32>,
    pub g4_lower: u32,
    pub g4_upper: Option<u32>,
    pub gc_lower: u32,
    pub gc_upper: Option<u32>,
    /// Rules attaining the reported lower bounds, and any upper-bound sources.
    pub provenance: Vec<Rule>,
}

impl GenusBounds {
    /// `g_c` when the bounds meet.
    pub fn gc(&self) -> Option<u32> {
        (self.gc_upper == Some(self.gc_lower)).then_some(self.gc_lower)
    }

    pub fn g4(&self) -> Option<u32> {
        (self.g4_upper == Some(self.g4_lower)).then_some(self.g4_lower)
    }

    pub fn is_resolved(&self) -> bool {
        self.gc().is_some()
    }
}

/// Combine every applicable rule. With `g_c` squeezed between the best lower
/// bound and `min(genus, g_c of a concordant knot)`, the verdict is resolved
/// when the two meet.
pub fn combine_bounds(input: &BoundInputs) -> Result<GenusBounds> {
    let delta = input.delta;
    let poly = gc_polynomial_bound(delta)?;
    let mut candidates = vec![(poly, Rule::AlexanderFactors)];
    let mut g4_candidates = vec![(0u32, Rule::Signature)];
    if fox_milnor_test(delta)?.is_none() {
        g4_candidates.push((1, Rule::FoxMilnor));
    }
    if let Some(v) = input.seifert {
        let sig = g4_signature_bound(v);
        g4_candidates.push((sig, Rule::Signature));
        candidates.push((sig, Rule::Signature));
        // Milnor signatures only matter when some symmetric factor has roots
        // on the unit circle, and only add information beyond the parity rule
        // when the genus is not yet reached.
        if input.genus.is_none_or(|g| poly < g) {
            candidates.push((gc_milnor_bound(v, input.milnor_mode), Rule::MilnorSignatures));
            candidates.push((gc_algebraic_bound(v, delta)?, Rule::CombinedAlgebraic));
        }
    }
    let gc_lower = candidates.iter().map(|c| c.0).max().unwrap();
    let g4_lower = g4_candidates.iter().map(|c| c.0).max().unwrap();
    let mut provenance: Vec<Rule> = candidates.iter().filter(|c| c.0 == gc_lower && gc_lower > 0).map(|c| c.1).collect();
    provenance.extend(g4_candidates.iter().filter(|c| c.0 == g4_lower && g4_lower > 0).map(|c| c.1));

    let genus = input.genus.or(input.seifert.map(|v| v.genus_bound() as u32));
    let mut gc_upper = genus;
    if genus.is_some() {
        provenance.push(Rule::SeifertGenus);
    }
    if let Some(c) = input.concordant_gc {
        if gc_upper.is_none_or(|g| c < g) {
            gc_upper = Some(c);
        }
        provenance.push(Rule::Concordance);
    }
    let (mut g4_lower, mut g4_upper) = (g4_lower, gc_upper);
    if let Some((lo, hi)) = input.g4_range {
        g4_lower = g4_lower.max(lo);
        g4_upper = Some(g4_upper.map_or(hi, |u| u.min(hi)));
        provenance.push(Rule::TableG4);
    }
    provenance.sort();
    provenance.dedup();

    if let Some(g) = genus {
        if gc_lower > g {
            return Err(Error::Integrity(format!(
                "concordance genus lower bound {gc_lower} exceeds the genus {g} for Δ = {delta}"
            )));
        }
    }
    if let Some(u) = gc_upper {
        if gc_lower > u {
            return Err(Error::Integrity(format!(
                "concordance genus lower bound {gc_lower} exceeds the upper bound {u} from a concordance"
            )));
        }
    }
    if let Some(u) = g4_upper {
        if g4_lower > u {
            return Err(Error::Integrity(format!("4-ball genus bounds are inconsistent: {g4_lower} > {u}")));
        }
    }
    Ok(GenusBounds { genus, g4_lower, g4_upper, gc_lower, gc_upper, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::cyclotomic_phi_2p;
    use crate::seifert::alexander_polynomial;

    fn v(s: &str) -> SeifertMatrix {
        s.parse().unwrap()
    }

    const TREFOIL: &str = "-1,1;0,-1";
    // (2,5) torus knot: Δ = φ_10.
    const CINQUEFOIL: &str = "-1,1,0,0;0,-1,1,0;0,0,-1,1;0,0,0,-1";

    #[test]
    fn polynomial_bound_examples() {
        let d62 = NormalizedAlexander::from_coeffs(&[1, -3, 3, -3, 1]).unwrap();
        assert_eq!(gc_polynomial_bound(&d62).unwrap(), 2);
        let sq = NormalizedAlexander::from_coeffs(&[1, -2, 3, -2, 1]).unwrap();
        assert_eq!(gc_polynomial_bound(&sq).unwrap(), 0);
        assert_eq!(gc_polynomial_bound(&cyclotomic_phi_2p(5).unwrap()).unwrap(), 2);
        let bad = NormalizedAlexander::from_coeffs(&[1, 1]).unwrap();
        assert!(gc_polynomial_bound(&bad).is_err());
    }

    #[test]
    fn milnor_bound_examples() {
        let t = v(TREFOIL);
        let granny = t.block_sum(&t);
        let square = t.block_sum(&t.concordance_inverse());
        assert_eq!(gc_milnor_bound(&granny, MilnorMode::MaxPerFactor), 2);
        assert_eq!(gc_milnor_bound(&square, MilnorMode::MaxPerFactor), 0);
        let k = v(CINQUEFOIL);
        assert_eq!(alexander_polynomial(&k), cyclotomic_phi_2p(5).unwrap());
        let j = k.block_sum(&k);
        assert_eq!(gc_milnor_bound(&j, MilnorMode::MaxPerFactor), 4);
        // Strict summation counts both root angles of φ_10 and overshoots.
        assert_eq!(gc_milnor_bound(&j, MilnorMode::SumOverAngles), 8);
    }

    #[test]
    fn g4_signature_examples() {
        let t = v(TREFOIL);
        assert_eq!(g4_signature_bound(&t.block_sum(&t)), 2);
        assert_eq!(g4_signature_bound(&v("0,1;2,0")), 0);
        assert_eq!(g4_signature_bound(&t), 1);
    }

    #[test]
    fn combine_examples() {
        let d62 = NormalizedAlexander::from_coeffs(&[1, -3, 3, -3, 1]).unwrap();
        let mut input = BoundInputs::new(&d62);
        input.genus = Some(2);
        input.g4_range = Some((1, 1));
        let b = combine_bounds(&input).unwrap();
        assert_eq!((b.gc(), b.g4()), (Some(2), Some(1)));

        let d810 = NormalizedAlexander::from_coeffs(&[1, -3, 6, -7, 6, -3, 1]).unwrap();
        let mut input = BoundInputs::new(&d810);
        input.genus = Some(3);
        input.concordant_gc = Some(1);
        let b = combine_bounds(&input).unwrap();
        assert_eq!(b.gc(), Some(1));
        assert!(b.provenance.contains(&Rule::Concordance));

        let mut input = BoundInputs::new(&d62);
        input.genus = Some(1);
        assert!(matches!(combine_bounds(&input), Err(Error::Integrity(_))));
    }
}
