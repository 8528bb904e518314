//! Command-line front end. Every subcommand renders into a [`CommandResult`];
//! the binary only prints it and exits with its code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{combine_bounds, BoundInputs, MilnorMode};
use crate::cgmodel::{self, CGConfiguration, ScheduleRule};
use crate::error::{Error, Result};
use crate::knotdb::{self, KnotExpr, KnotRecord};
use crate::laurent::{factor, fox_milnor_test, NormalizedAlexander};
use crate::linkform::{self, format_subspace, FiniteLinkingForm};
use crate::metlab;
use crate::reproduce;
use crate::seifert::{
    alexander_polynomial, branched_cover_homology, classical_signature, milnor_signatures, signature_function,
    SeifertMatrix,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INTEGRITY: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ScheduleArg {
    Doubling,
    #[default]
    Tripling,
}

impl From<ScheduleArg> for ScheduleRule {
    fn from(s: ScheduleArg) -> Self {
        match s {
            ScheduleArg::Doubling => ScheduleRule::Doubling,
            ScheduleArg::Tripling => ScheduleRule::Tripling,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "concordance-genus", version, about = "Lower bounds and census for the knot concordance genus")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Knot table to use instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    pub table: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized trials and random bases.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Sum Milnor signatures over all angles of a factor instead of taking
    /// the largest.
    #[arg(long, global = true)]
    pub strict_milnor: bool,
}

impl GlobalArgs {
    fn milnor_mode(&self) -> MilnorMode {
        if self.strict_milnor {
            MilnorMode::SumOverAngles
        } else {
            MilnorMode::MaxPerFactor
        }
    }

    fn records(&self) -> Result<Vec<KnotRecord>> {
        match &self.table {
            Some(p) => knotdb::load_table(p),
            None => knotdb::load_bundled(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants and genus bounds of one knot: a Seifert matrix ("0,1;2,0"),
    /// Alexander coefficients ("1,-3,3,-3,1"), or table knots ("6_2",
    /// "3_1#-3_1").
    Invariants {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Classify every knot in the table.
    Enumerate,
    /// List the metabolizers of a linking form: "hyperbolic" (with --rank), or
    /// a Seifert matrix or table knot at --prime.
    Metabolizers {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        /// Number of hyperbolic planes for "hyperbolic".
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Exhaustive check of the metabolizer splitting lemmas.
    #[command(name = "verify-sec4")]
    VerifySec4 {
        /// Primes to sweep.
        #[arg(long, value_delimiter = ',', default_values_t = [3, 2])]
        primes: Vec<u32>,
    },
    /// Exhaustive check of the Casson-Gordon non-constancy argument.
    #[command(name = "verify-sec5")]
    VerifySec5 {
        #[arg(long = "genus", value_delimiter = ',', default_values_t = [2, 3])]
        genus: Vec<usize>,
        /// Random even base functions per genus, on top of the zero function.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Bound B on the base function.
        #[arg(long, default_value_t = 20)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = ScheduleArg::Tripling)]
        schedule: ScheduleArg,
    },
    /// Run every reproduction check and summarize.
    Report,
}

/// Exit code and rendered output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn verification(stdout: String, witness: String) -> Self {
        CommandResult { code: EXIT_VERIFICATION, stdout, stderr: witness }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::InvalidSeifert(_) | Error::OnJump { .. } => EXIT_DOMAIN,
        Error::Integrity(_) => EXIT_INTEGRITY,
        Error::Verification(_) => EXIT_VERIFICATION,
    }
}

/// Parse arguments and run. Usage errors exit 1; `--help` and `--version`
/// exit 0.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                CommandResult { code: EXIT_DOMAIN, stdout: String::new(), stderr: text }
            } else {
                CommandResult::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    let g = &cli.global;
    let r = match &cli.command {
        Command::Invariants { input } => cmd_invariants(g, input),
        Command::Enumerate => cmd_enumerate(g),
        Command::Metabolizers { input, prime, rank } => cmd_metabolizers(g, input, *prime, *rank),
        Command::VerifySec4 { primes } => cmd_verify_sec4(g, primes),
        Command::VerifySec5 { genus, trials, bound, schedule } => {
            cmd_verify_sec5(g, genus, *trials, *bound, (*schedule).into())
        }
        Command::Report => cmd_report(g),
    };
    r.unwrap_or_else(|e| CommandResult { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") })
}

/// A knot given on the command line.
enum KnotInput {
    Polynomial(NormalizedAlexander),
    Seifert { v: SeifertMatrix, genus: Option<u32> },
}

fn parse_knot(g: &GlobalArgs, input: &str) -> Result<KnotInput> {
    let s = input.trim();
    if s.contains('_') {
        let records = g.records()?;
        let expr = KnotExpr::parse(s)?;
        let t = knotdb::resolve_target(&records, &expr)
            .map_err(|_| Error::Domain(format!("unknown knot {s:?}")))?;
        return match t.seifert {
            Some(v) => Ok(KnotInput::Seifert { v, genus: Some(t.genus) }),
            None => Ok(KnotInput::Polynomial(t.alexander)),
        };
    }
    if s.contains(';') {
        return Ok(KnotInput::Seifert { v: s.parse()?, genus: None });
    }
    let p: NormalizedAlexander = s.parse()?;
    p.check_knot_polynomial()?;
    Ok(KnotInput::Polynomial(p))
}

fn kv(out: &mut String, format: Format, key: &str, value: impl std::fmt::Display) {
    match format {
        Format::Text => writeln!(out, "{key:<22} {value}"),
        Format::Machine => writeln!(out, "{key} | {value}"),
    }
    .unwrap();
}

pub fn cmd_invariants(g: &GlobalArgs, input: &str) -> Result<CommandResult> {
    let knot = parse_knot(g, input)?;
    let (delta, seifert, genus) = match &knot {
        KnotInput::Polynomial(p) => (p.clone(), None, None),
        KnotInput::Seifert { v, genus } => (alexander_polynomial(v), Some(v), *genus),
    };
    let f = g.format;
    let mut out = String::new();
    kv(&mut out, f, "alexander", &delta);
    let fac = factor(&delta);
    kv(&mut out, f, "factorization", &fac);
    kv(&mut out, f, "irreducible", fac.is_irreducible());
    match fox_milnor_test(&delta)? {
        Some(w) => kv(&mut out, f, "fox-milnor", format!("passes (slice-compatible), f = {w}")),
        None => kv(&mut out, f, "fox-milnor", "fails"),
    }
    kv(&mut out, f, "det", delta.eval_i64(-1).magnitude());
    if let Some(v) = seifert {
        kv(&mut out, f, "seifert", v);
        kv(&mut out, f, "signature", classical_signature(v));
        match branched_cover_homology(v) {
            Ok(h) => kv(&mut out, f, "h1-double-cover", &h),
            Err(e) => kv(&mut out, f, "h1-double-cover", e),
        }
        let sf = signature_function(v);
        let jumps: Vec<String> = sf
            .jumps
            .iter()
            .map(|j| format!("{:.6}:{:+}", j.turn_fraction(), j.size))
            .collect();
        kv(&mut out, f, "tl-jumps", if jumps.is_empty() { "-".into() } else { jumps.join(" ") });
        let values: Vec<String> = sf.values.iter().map(i64::to_string).collect();
        kv(&mut out, f, "tl-values", values.join(" "));
        let ms: Vec<String> = milnor_signatures(v)
            .iter()
            .map(|m| format!("[{}]@{:.6}:{:+}", m.factor, m.angle() / std::f64::consts::TAU, m.value))
            .collect();
        kv(&mut out, f, "milnor", if ms.is_empty() { "-".into() } else { ms.join(" ") });
    }
    let mut input = BoundInputs::new(&delta);
    input.seifert = seifert;
    input.genus = genus;
    input.milnor_mode = g.milnor_mode();
    let b = combine_bounds(&input)?;
    kv(&mut out, f, "gc_lower", b.gc_lower);
    kv(&mut out, f, "gc_upper", b.gc_upper.map_or("-".into(), |u| u.to_string()));
    kv(&mut out, f, "g4_lower", b.g4_lower);
    let rules: Vec<String> = b.provenance.iter().map(|r| r.to_string()).collect();
    kv(&mut out, f, "rules", if rules.is_empty() { "-".into() } else { rules.join(",") });
    Ok(CommandResult::ok(out))
}

pub fn cmd_enumerate(g: &GlobalArgs) -> Result<CommandResult> {
    let records = g.records()?;
    let report = knotdb::classify_all(&records, g.milnor_mode())?;
    Ok(CommandResult::ok(match g.format {
        Format::Text => report.to_text(),
        Format::Machine => report.to_machine(&records),
    }))
}

pub fn cmd_metabolizers(g: &GlobalArgs, input: &str, prime: u32, rank: usize) -> Result<CommandResult> {
    if prime < 2 || !(2..prime).all(|d| !prime.is_multiple_of(d)) {
        return Err(Error::Domain(format!("{prime} is not prime")));
    }
    let form = if input == "hyperbolic" {
        FiniteLinkingForm::hyperbolic(prime, rank)
    } else {
        let v = match parse_knot(g, input)? {
            KnotInput::Seifert { v, .. } => v,
            KnotInput::Polynomial(_) => return Err(Error::Domain("metabolizers need a Seifert matrix".into())),
        };
        linkform::from_seifert(&v, prime)?
    };
    let ms = linkform::enumerate_metabolizers(&form)?;
    let mut out = String::new();
    match g.format {
        Format::Text => {
            writeln!(out, "linking form {form:?}").unwrap();
            writeln!(out, "{} metabolizers", ms.len()).unwrap();
            for m in &ms {
                writeln!(out, "  {}", format_subspace(m)).unwrap();
            }
        }
        Format::Machine => {
            for m in &ms {
                writeln!(out, "{} | {} | {}", prime, m.dim(), format_subspace(m)).unwrap();
            }
        }
    }
    Ok(CommandResult::ok(out))
}

pub fn cmd_verify_sec4(g: &GlobalArgs, primes: &[u32]) -> Result<CommandResult> {
    let mut out = String::new();
    let mut witness = None;
    for &p in primes {
        if p != 2 && p != 3 {
            return Err(Error::Domain("the exhaustive sweeps are sized for p = 2 and p = 3".into()));
        }
        for fam in metlab::standard_families(p, g.seed) {
            let r = metlab::sweep(&fam)?;
            match g.format {
                Format::Text => writeln!(out, "{r}").unwrap(),
                Format::Machine => writeln!(
                    out,
                    "{} | {} | {} | {} | {} | {} | {} | {}",
                    r.family,
                    r.prime,
                    r.sharp_count,
                    r.j_count,
                    r.instances,
                    if r.passed() { "ok" } else { "failed" },
                    r.m0.nontrivial_pairs,
                    r.m0.applicable_pairs
                )
                .unwrap(),
            }
            if witness.is_none() {
                witness = r.counterexample.map(|c| c.to_string());
            }
        }
    }
    Ok(match witness {
        None => {
            if g.format == Format::Text {
                out.push_str("all splits pass\n");
            }
            CommandResult::ok(out)
        }
        Some(w) => CommandResult::verification(out, w),
    })
}

fn nonconstancy_line(tag: &str, r: &cgmodel::NonconstancyReport) -> String {
    format!("{tag}: {r}")
}

pub fn cmd_verify_sec5(g: &GlobalArgs, genera: &[usize], trials: usize, bound: i64, rule: ScheduleRule) -> Result<CommandResult> {
    let mut out = String::new();
    let mut witness: Option<String> = None;
    for &n in genera {
        if !(1..=3).contains(&n) {
            return Err(Error::Domain(format!("genus parameter {n} is outside the exhaustive range 1..=3")));
        }
        let zero = CGConfiguration::with_base(n, cgmodel::BaseFunction::Zero, 0, rule)?;
        let sep = cgmodel::find_collision(&zero);
        let support = cgmodel::verify_m0_support(&zero);
        let r = cgmodel::verify_nonconstancy(&zero);
        let mut fails = 0;
        for cfg in cgmodel::random_configurations(n, bound, trials, g.seed ^ n as u64, rule)? {
            let rr = cgmodel::verify_nonconstancy(&cfg);
            if !rr.passed() && rr.applicable {
                fails += 1;
                if witness.is_none() {
                    witness = rr.failures.first().map(|(mk, m0)| {
                        format!("N={n} random base: cosets constant for M_K={} M_0={}\n", format_subspace(mk), format_subspace(m0))
                    });
                }
            }
        }
        match g.format {
            Format::Text => {
                writeln!(out, "{}", nonconstancy_line("zero base", &r)).unwrap();
                writeln!(out, "  separation: {}", match &sep { None => "ok".into(), Some((a, b)) => format!("collision {a:?} {b:?}") }).unwrap();
                writeln!(out, "  M_0 support: {}", if support { "ok" } else { "violated" }).unwrap();
                writeln!(out, "  random even bases (B = {bound}): {}/{} pass", trials - fails, trials).unwrap();
                for c in &r.cases {
                    writeln!(out, "  {c}").unwrap();
                }
                if r.applicable && r.failures.is_empty() && fails == 0 {
                    writeln!(out, "N={n}: all cases pass ({} cases)", r.cases.len()).unwrap();
                }
            }
            Format::Machine => {
                for c in &r.cases {
                    writeln!(
                        out,
                        "{n} | {} | {} | {} | {} | {} | {}",
                        format_subspace(&c.m_k),
                        format_subspace(&c.m_0),
                        c.representative.iter().map(u32::to_string).collect::<String>(),
                        c.link_index,
                        c.values.0,
                        c.values.1
                    )
                    .unwrap();
                }
            }
        }
        if witness.is_none() {
            if let Some((a, b)) = &sep {
                witness = Some(format!("N={n}: separation fails, {a:?} and {b:?} give the same value\n"));
            } else if let Some((mk, m0)) = r.failures.first() {
                witness = Some(format!("N={n}: cosets constant for M_K={} M_0={}\n", format_subspace(mk), format_subspace(m0)));
            } else if !support {
                witness = Some(format!("N={n}: a constant-coset subgroup escapes span(b_1..b_(N-1))\n"));
            }
        }
    }
    Ok(match witness {
        None => CommandResult::ok(out),
        Some(w) => CommandResult::verification(out, w),
    })
}

pub fn cmd_report(g: &GlobalArgs) -> Result<CommandResult> {
    let records = g.records()?;
    let criteria = reproduce::run_all(&records, g.seed)?;
    let mut out = String::new();
    for c in &criteria {
        match g.format {
            Format::Text => writeln!(out, "{c}").unwrap(),
            Format::Machine => writeln!(
                out,
                "{} | {} | {} | {} | {:.3}",
                c.id,
                c.name,
                if c.passed { "pass" } else { "fail" },
                c.detail,
                c.elapsed.as_secs_f64()
            )
            .unwrap(),
        }
    }
    let failed: Vec<String> = criteria.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
    Ok(if failed.is_empty() {
        CommandResult::ok(out)
    } else {
        CommandResult::verification(out, failed.join("\n") + "\n")
    })
}
