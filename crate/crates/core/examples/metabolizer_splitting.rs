//! Exhaustively split every metabolizer of H_K ⊕ (p-1)·H_J against every
//! metabolizer of H_J and check the splitting lemmas.
use concordance_genus::metlab::{standard_families, sweep};

fn main() -> concordance_genus::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for p in [3, 2] {
        for fam in standard_families(p, seed) {
            let r = sweep(&fam)?;
            println!("{r}");
            if let Some(c) = &r.counterexample {
                println!("{c}");
            }
        }
    }
    Ok(())
}
