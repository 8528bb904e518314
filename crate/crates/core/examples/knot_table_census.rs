//! Classify the bundled table of prime knots up to ten crossings.
use concordance_genus::bounds::MilnorMode;
use concordance_genus::knotdb::{classify_all, concordance_sanity, load_bundled};

fn main() -> concordance_genus::Result<()> {
    let records = load_bundled()?;
    let report = classify_all(&records, MilnorMode::MaxPerFactor)?;
    println!("slice / polynomial / concordance / unresolved: {}", report.counts);
    println!("exceptions: {}", report.exceptions.join(" "));
    for (target, members) in &report.groups {
        println!("  {target} <- {}", members.join(" "));
    }
    for d in &report.discrepancies {
        println!("note: {d}");
    }
    let failing = concordance_sanity(&records)?.into_iter().filter(|c| !c.passed()).count();
    println!("claimed concordances failing an algebraic check: {failing}");
    Ok(())
}
