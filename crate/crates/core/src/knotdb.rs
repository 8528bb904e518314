//! The bundled table of prime knots through ten crossings, and the census of
//! their concordance genera.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::bounds::{combine_bounds, BoundInputs, GenusBounds, MilnorMode};
use crate::error::{Error, Result};
use crate::laurent::{fox_milnor_test, normalize, NormalizedAlexander};
use crate::seifert::{alexander_polynomial, classical_signature, SeifertMatrix};

/// The table shipped with the crate.
pub const BUNDLED_TABLE: &str = include_str!("../data/prime_knots_10.tbl");

/// Where a field's value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Published knot tables (KnotInfo).
    Table,
    /// Published slice and concordance lists.
    ConcordanceList,
    /// Replaced by hand; see the decisions ledger.
    Override,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSources {
    pub alexander: Source,
    pub signature: Source,
    pub genus: Source,
    pub seifert: Source,
    pub slice: Source,
    pub target: Source,
    pub g4: Source,
}

impl Default for FieldSources {
    fn default() -> Self {
        FieldSources {
            alexander: Source::Table,
            signature: Source::Table,
            genus: Source::Table,
            seifert: Source::Table,
            slice: Source::ConcordanceList,
            target: Source::ConcordanceList,
            g4: Source::Table,
        }
    }
}

/// A knot, possibly written as a connected sum `A#B` with `-A` for the
/// concordance inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotExpr {
    pub summands: Vec<(bool, String)>,
}

impl KnotExpr {
    pub fn parse(s: &str) -> Result<KnotExpr> {
        let summands = s
            .split('#')
            .map(|t| {
                let t = t.trim();
                let (inv, name) = match t.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, t),
                };
                if name.is_empty() {
                    return Err(Error::Parse(format!("empty knot name in {s:?}")));
                }
                Ok((inv, name.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KnotExpr { summands })
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(inv, n)| format!("{}{n}", if *inv { "-" } else { "" }))
            .collect();
        f.write_str(&parts.join("#"))
    }
}

#[derive(Debug, Clone)]
pub struct KnotRecord {
    pub name: String,
    pub crossings: u32,
    pub alexander: NormalizedAlexander,
    pub abs_signature: u32,
    pub genus: u32,
    pub seifert: Option<SeifertMatrix>,
    pub slice: bool,
    pub concordance_target: Option<KnotExpr>,
    /// Known range for the 4-ball genus, inclusive.
    pub g4: Option<(u32, u32)>,
    pub sources: FieldSources,
    /// 1-based line in the table file.
    pub line: usize,
    raw: String,
}

impl KnotRecord {
    /// The record's table line, as read.
    pub fn raw_line(&self) -> &str {
        &self.raw
    }
}

fn parse_u32(field: &str, what: &str, line: usize) -> Result<u32> {
    field
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad {what} {field:?}")))
}

fn parse_g4(field: &str, line: usize) -> Result<(u32, u32)> {
    match field.split_once('-') {
        Some((lo, hi)) => Ok((parse_u32(lo, "g4", line)?, parse_u32(hi, "g4", line)?)),
        None => {
            let g = parse_u32(field, "g4", line)?;
            Ok((g, g))
        }
    }
}

fn parse_line(text: &str, line: usize) -> Result<KnotRecord> {
    let fields: Vec<&str> = text.split('|').map(str::trim).collect();
    if fields.len() != 8 && fields.len() != 9 {
        return Err(Error::Parse(format!("line {line}: expected 8 or 9 fields, found {}", fields.len())));
    }
    let name = fields[0].to_string();
    if name.is_empty() {
        return Err(Error::Parse(format!("line {line}: empty knot name")));
    }
    let alexander: NormalizedAlexander = fields[2]
        .parse()
        .map_err(|e| Error::Parse(format!("line {line}: bad Alexander polynomial {:?}: {e}", fields[2])))?;
    let slice = match fields[5] {
        "0" => false,
        "1" => true,
        s => return Err(Error::Parse(format!("line {line}: slice flag must be 0 or 1, found {s:?}"))),
    };
    let concordance_target = match fields[6] {
        "-" => None,
        s => Some(KnotExpr::parse(s).map_err(|e| Error::Parse(format!("line {line}: {e}")))?),
    };
    let seifert = match fields[7] {
        "-" => None,
        s => Some(s.parse::<SeifertMatrix>().map_err(|e| Error::Parse(format!("line {line}: {e}")))?),
    };
    let mut sources = FieldSources::default();
    let g4 = match fields.get(8) {
        None | Some(&"-") => None,
        Some(s) => {
            let r = parse_g4(s, line)?;
            if r.0 != r.1 {
                sources.g4 = Source::Override;
            }
            Some(r)
        }
    };
    Ok(KnotRecord {
        name,
        crossings: parse_u32(fields[1], "crossing number", line)?,
        alexander,
        abs_signature: parse_u32(fields[3], "signature", line)?,
        genus: parse_u32(fields[4], "genus", line)?,
        seifert,
        slice,
        concordance_target,
        g4,
        sources,
        line,
        raw: text.to_string(),
    })
}

/// Check the per-record invariants: `|Δ(1)| = 1`, genus `= deg Δ / 2`, the
/// Seifert matrix reproduces `Δ` and `|σ|`, and slice knots pass Fox-Milnor
/// with `σ = 0`.
pub fn validate_record(r: &KnotRecord) -> Result<()> {
    let bad = |msg: String| Err(Error::Integrity(format!("{}: {msg}", r.name)));
    if !r.alexander.is_knot_polynomial() {
        return bad(format!("Δ = {} has |Δ(1)| ≠ 1", r.alexander));
    }
    if r.alexander.degree() != 2 * r.genus as usize {
        return bad(format!("genus {} but deg Δ = {}", r.genus, r.alexander.degree()));
    }
    if let Some(v) = &r.seifert {
        let from_v = alexander_polynomial(v);
        if from_v != r.alexander {
            return bad(format!("Seifert matrix gives Δ = {from_v}, table has {}", r.alexander));
        }
        if classical_signature(v).unsigned_abs() as u32 != r.abs_signature {
            return bad(format!("Seifert matrix gives σ = {}, table has |σ| = {}", classical_signature(v), r.abs_signature));
        }
    }
    if r.slice {
        if fox_milnor_test(&r.alexander)?.is_none() {
            return bad("marked slice but Δ fails the Fox-Milnor condition".into());
        }
        if r.abs_signature != 0 {
            return bad("marked slice but σ ≠ 0".into());
        }
        if r.concordance_target.is_some() {
            return bad("slice knots carry no concordance target".into());
        }
    }
    if let Some((lo, hi)) = r.g4 {
        if lo > hi || hi > r.genus {
            return bad(format!("g4 range {lo}-{hi} is inconsistent with genus {}", r.genus));
        }
    }
    Ok(())
}

/// Parse and validate a table; `#` lines and blank lines are skipped.
pub fn parse_table(text: &str) -> Result<Vec<KnotRecord>> {
    let mut records = Vec::new();
    let mut seen = BTreeMap::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let r = parse_line(l, i + 1)?;
        validate_record(&r)?;
        if let Some(prev) = seen.insert(r.name.clone(), r.line) {
            return Err(Error::Integrity(format!("{}: duplicate record (lines {prev} and {})", r.name, r.line)));
        }
        records.push(r);
    }
    for r in &records {
        if let Some(t) = &r.concordance_target {
            for (_, n) in &t.summands {
                if !seen.contains_key(n) {
                    return Err(Error::Integrity(format!("{}: unknown concordance target {n}", r.name)));
                }
            }
        }
    }
    Ok(records)
}

pub fn load_table(path: &Path) -> Result<Vec<KnotRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse_table(&text)
}

pub fn load_bundled() -> Result<Vec<KnotRecord>> {
    parse_table(BUNDLED_TABLE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Slice,
    /// The Alexander polynomial bound, combined with Milnor signatures where
    /// needed, reaches the genus.
    Polynomial,
    /// Concordant to a knot of known smaller concordance genus.
    Concordance,
    Unresolved,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Slice => "slice",
            Category::Polynomial => "polynomial",
            Category::Concordance => "concordance",
            Category::Unresolved => "unresolved",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub name: String,
    pub category: Category,
    pub bounds: GenusBounds,
    pub target: Option<KnotExpr>,
    /// The bound from the Alexander factors alone.
    pub polynomial_bound: u32,
}

impl Verdict {
    pub fn gc(&self) -> Option<u32> {
        match self.category {
            Category::Slice => Some(0),
            _ => self.bounds.gc(),
        }
    }
}

/// A target knot assembled from table records.
pub struct ResolvedTarget {
    pub alexander: NormalizedAlexander,
    pub seifert: Option<SeifertMatrix>,
    pub genus: u32,
    pub signature: Option<i64>,
}

fn index(records: &[KnotRecord]) -> BTreeMap<&str, &KnotRecord> {
    records.iter().map(|r| (r.name.as_str(), r)).collect()
}

pub fn resolve_target(records: &[KnotRecord], t: &KnotExpr) -> Result<ResolvedTarget> {
    let idx = index(records);
    let mut poly = crate::laurent::LaurentPolynomial::one();
    let mut seifert = Some(SeifertMatrix::unknot());
    let mut genus = 0;
    for (inv, name) in &t.summands {
        let r = idx
            .get(name.as_str())
            .ok_or_else(|| Error::Integrity(format!("unknown concordance target {name}")))?;
        poly = &poly * &r.alexander.poly();
        genus += r.genus;
        seifert = match (&seifert, &r.seifert) {
            (Some(acc), Some(v)) => Some(acc.block_sum(&if *inv { v.concordance_inverse() } else { v.clone() })),
            _ => None,
        };
    }
    let signature = seifert.as_ref().map(classical_signature);
    Ok(ResolvedTarget { alexander: normalize(&poly)?, seifert, genus, signature })
}

fn record_bounds(r: &KnotRecord, concordant_gc: Option<u32>, mode: MilnorMode) -> Result<GenusBounds> {
    let mut input = BoundInputs::new(&r.alexander);
    input.seifert = r.seifert.as_ref();
    input.genus = Some(r.genus);
    input.g4_range = r.g4;
    input.concordant_gc = concordant_gc;
    input.milnor_mode = mode;
    combine_bounds(&input).map_err(|e| match e {
        Error::Integrity(m) => Error::Integrity(format!("{}: {m}", r.name)),
        other => other,
    })
}

/// Concordance genus of a target, which must be resolved by its own bounds.
fn target_gc(records: &[KnotRecord], t: &KnotExpr, mode: MilnorMode) -> Result<u32> {
    let idx = index(records);
    if let [(_, name)] = t.summands.as_slice() {
        let r = idx[name.as_str()];
        if r.concordance_target.is_some() {
            return Err(Error::Integrity(format!("concordance target {name} has a target of its own")));
        }
        if r.slice {
            return Ok(0);
        }
    }
    let rt = resolve_target(records, t)?;
    let mut input = BoundInputs::new(&rt.alexander);
    input.seifert = rt.seifert.as_ref();
    input.genus = Some(rt.genus);
    input.milnor_mode = mode;
    combine_bounds(&input)?
        .gc()
        .ok_or_else(|| Error::Integrity(format!("concordance genus of target {t} is not determined")))
}

fn classify_one(records: &[KnotRecord], r: &KnotRecord, mode: MilnorMode) -> Result<Verdict> {
    let polynomial_bound = crate::bounds::gc_polynomial_bound(&r.alexander)?;
    let plain = record_bounds(r, None, mode)?;
    let (category, bounds) = if r.slice {
        let mut b = plain;
        b.gc_upper = Some(0);
        b.g4_upper = Some(0);
        if b.gc_lower > 0 || b.g4_lower > 0 {
            return Err(Error::Integrity(format!("{}: marked slice but has a positive genus bound", r.name)));
        }
        (Category::Slice, b)
    } else if plain.gc_lower == r.genus {
        (Category::Polynomial, plain)
    } else if let Some(t) = &r.concordance_target {
        let c = target_gc(records, t, mode)?;
        let b = record_bounds(r, Some(c), mode)?;
        if b.is_resolved() {
            (Category::Concordance, b)
        } else {
            (Category::Unresolved, b)
        }
    } else {
        (Category::Unresolved, plain)
    };
    Ok(Verdict { name: r.name.clone(), category, bounds, target: r.concordance_target.clone(), polynomial_bound })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryCounts {
    pub slice: usize,
    pub polynomial: usize,
    pub concordance: usize,
    pub unresolved: usize,
}

impl CategoryCounts {
    pub fn total(&self) -> usize {
        self.slice + self.polynomial + self.concordance + self.unresolved
    }
}

impl fmt::Display for CategoryCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {} / {} / {}", self.slice, self.polynomial, self.concordance, self.unresolved)
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    /// In table order.
    pub verdicts: Vec<Verdict>,
    pub counts: CategoryCounts,
    /// Knots that are neither slice nor resolved by their own bounds.
    pub exceptions: Vec<String>,
    pub groups: Vec<(String, Vec<String>)>,
    /// Places where the verdict needed more than the literal rule, or where
    /// the data disagree with published values.
    pub discrepancies: Vec<String>,
}

impl EnumerationReport {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn names_in(&self, c: Category) -> Vec<&str> {
        self.verdicts.iter().filter(|v| v.category == c).map(|v| v.name.as_str()).collect()
    }
}

pub fn classify_all(records: &[KnotRecord], mode: MilnorMode) -> Result<EnumerationReport> {
    let verdicts = records
        .par_iter()
        .map(|r| classify_one(records, r, mode))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = CategoryCounts::default();
    let mut discrepancies = Vec::new();
    for v in &verdicts {
        match v.category {
            Category::Slice => counts.slice += 1,
            Category::Polynomial => counts.polynomial += 1,
            Category::Concordance => counts.concordance += 1,
            Category::Unresolved => counts.unresolved += 1,
        }
        if v.category == Category::Polynomial && v.polynomial_bound < v.bounds.gc_lower {
            discrepancies.push(format!(
                "{}: Alexander factor bound {} < genus {}; reached by the combined Milnor bound",
                v.name, v.polynomial_bound, v.bounds.gc_lower
            ));
        }
        if v.category == Category::Unresolved {
            discrepancies.push(format!(
                "{}: unresolved, g_c in [{}, {}]",
                v.name,
                v.bounds.gc_lower,
                v.bounds.gc_upper.map_or("?".into(), |u| u.to_string())
            ));
        }
    }
    let exceptions = verdicts
        .iter()
        .filter(|v| matches!(v.category, Category::Concordance | Category::Unresolved))
        .map(|v| v.name.clone())
        .collect();
    Ok(EnumerationReport { groups: concordance_targets(records), verdicts, counts, exceptions, discrepancies })
}

/// Knots grouped by concordance target, targets and members in table order.
pub fn concordance_targets(records: &[KnotRecord]) -> Vec<(String, Vec<String>)> {
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    for r in records {
        if let Some(t) = &r.concordance_target {
            let key = t.to_string();
            match groups.iter_mut().find(|g| g.0 == key) {
                Some(g) => g.1.push(r.name.clone()),
                None => groups.push((key, vec![r.name.clone()])),
            }
        }
    }
    groups
}

/// The algebraic consequences of one claimed concordance `K ~ J`.
#[derive(Debug, Clone)]
pub struct ConcordanceCheck {
    pub name: String,
    pub target: String,
    /// `Δ_K · Δ_J = f(t) f(t^{-1})` up to units.
    pub fox_milnor: bool,
    /// `|σ(K)| = |σ(J)|`.
    pub signature: bool,
}

impl ConcordanceCheck {
    pub fn passed(&self) -> bool {
        self.fox_milnor && self.signature
    }
}

pub fn concordance_sanity(records: &[KnotRecord]) -> Result<Vec<ConcordanceCheck>> {
    records
        .iter()
        .filter_map(|r| r.concordance_target.as_ref().map(|t| (r, t)))
        .map(|(r, t)| {
            let rt = resolve_target(records, t)?;
            let product = normalize(&(&r.alexander.poly() * &rt.alexander.poly()))?;
            let target_sig = match rt.signature {
                Some(s) => s.unsigned_abs() as u32,
                None => return Err(Error::Integrity(format!("{}: target {t} has no Seifert matrix", r.name))),
            };
            Ok(ConcordanceCheck {
                name: r.name.clone(),
                target: t.to_string(),
                fox_milnor: fox_milnor_test(&product)?.is_some(),
                signature: r.abs_signature == target_sig,
            })
        })
        .collect()
}

/// Violations of `g4_lower ≤ gc_lower ≤ genus` and
/// `|Δ(-1)| = |det(V + V^T)|` across the census.
pub fn consistency_sweep(records: &[KnotRecord], report: &EnumerationReport) -> Vec<String> {
    let mut out = Vec::new();
    for (r, v) in records.iter().zip(&report.verdicts) {
        let b = &v.bounds;
        if !(b.g4_lower <= b.gc_lower && b.gc_lower <= r.genus) {
            out.push(format!("{}: g4 lower {} / gc lower {} / genus {}", r.name, b.g4_lower, b.gc_lower, r.genus));
        }
        if let Some(s) = &r.seifert {
            let det = crate::algebra::intmat::determinant(&s.symmetrized());
            let at_minus_one = r.alexander.eval_i64(-1);
            if num_traits::Signed::abs(&det) != num_traits::Signed::abs(&at_minus_one) {
                out.push(format!("{}: |Δ(-1)| = {} but |det(V+V^T)| = {}", r.name, at_minus_one, det));
            }
        }
    }
    out
}

fn range(lo: u32, hi: Option<u32>) -> String {
    match hi {
        Some(h) if h == lo => lo.to_string(),
        Some(h) => format!("{lo}-{h}"),
        None => format!("{lo}-?"),
    }
}

impl EnumerationReport {
    /// Human-readable table plus the summary counts.
    pub fn to_text(&self) -> String {
        let mut s = format!("{:<8} {:>5} {:>5} {:>5} {:<12} {:<10} rules\n", "knot", "g", "g_c", "g_4", "category", "target");
        for v in &self.verdicts {
            let b = &v.bounds;
            let rules: Vec<String> = b.provenance.iter().map(|r| r.to_string()).collect();
            s.push_str(&format!(
                "{:<8} {:>5} {:>5} {:>5} {:<12} {:<10} {}\n",
                v.name,
                b.genus.map_or("-".into(), |g| g.to_string()),
                range(b.gc_lower, if v.category == Category::Slice { Some(0) } else { b.gc_upper }),
                range(b.g4_lower, b.g4_upper),
                v.category,
                v.target.as_ref().map_or("-".into(), |t| t.to_string()),
                rules.join(",")
            ));
        }
        s.push_str(&format!("\nslice / polynomial / concordance / unresolved: {}\n", self.counts));
        s.push_str(&format!("exceptions ({}): {}\n", self.exceptions.len(), self.exceptions.join(", ")));
        for (t, ms) in &self.groups {
            s.push_str(&format!("concordant to {t}: {}\n", ms.join(", ")));
        }
        for d in &self.discrepancies {
            s.push_str(&format!("note: {d}\n"));
        }
        s
    }

    /// The input line followed by verdict columns
    /// `category | gc | g4 | rules`.
    pub fn to_machine(&self, records: &[KnotRecord]) -> String {
        let mut s = String::new();
        for (r, v) in records.iter().zip(&self.verdicts) {
            let b = &v.bounds;
            let rules: Vec<String> = b.provenance.iter().map(|r| r.to_string()).collect();
            s.push_str(&format!(
                "{} | {} | {} | {} | {}\n",
                r.raw_line(),
                v.category,
                range(b.gc_lower, if v.category == Category::Slice { Some(0) } else { b.gc_upper }),
                range(b.g4_lower, b.g4_upper),
                if rules.is_empty() { "-".into() } else { rules.join(",") }
            ));
        }
        s.push_str(&format!("# counts | {} | {} | {} | {}\n", self.counts.slice, self.counts.polynomial, self.counts.concordance, self.counts.unresolved));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_loads() {
        let recs = load_bundled().unwrap();
        assert_eq!(recs.len(), 250);
        let r62 = recs.iter().find(|r| r.name == "6_2").unwrap();
        assert_eq!(r62.alexander.to_text(), "1,-3,3,-3,1");
        assert_eq!(r62.genus, 2);
        let r67 = recs.iter().find(|r| r.name == "10_67").unwrap();
        assert_eq!(r67.concordance_target.as_ref().unwrap().to_string(), "5_2");
    }

    #[test]
    fn malformed_rows() {
        let e = parse_table("# header\n3_1 | 3 | 1,-1,1 | 2 | 1 | 0 | -\n").unwrap_err();
        assert_eq!(e, Error::Parse("line 2: expected 8 or 9 fields, found 7".into()));
        let e = parse_table("3_1 | 3 | 1,x,1 | 2 | 1 | 0 | - | -\n").unwrap_err();
        assert!(matches!(e, Error::Parse(m) if m.starts_with("line 1:")));
        let e = parse_table("3_1 | 3 | 1,-1,1 | 2 | 2 | 0 | - | -\n").unwrap_err();
        assert!(matches!(e, Error::Integrity(m) if m.starts_with("3_1:")));
        let e = parse_table("8_10 | 8 | 1,-2,3,-3,3,-2,1 | 2 | 3 | 0 | 3_1 | -\n").unwrap_err();
        assert!(matches!(e, Error::Integrity(m) if m.contains("unknown concordance target 3_1")));
    }

    #[test]
    fn knot_expressions() {
        let e = KnotExpr::parse("3_1#-3_1").unwrap();
        assert_eq!(e.summands, vec![(false, "3_1".to_string()), (true, "3_1".to_string())]);
        assert_eq!(e.to_string(), "3_1#-3_1");
        assert!(KnotExpr::parse("3_1#").is_err());
    }
}
