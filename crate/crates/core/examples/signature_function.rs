//! Tristram-Levine signature function of a Seifert matrix given on the
//! command line (default: 6_2).
use concordance_genus::seifert::{milnor_signatures, signature_function, tristram_levine_signature, SeifertMatrix};

fn main() -> concordance_genus::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1,0,0,0;-1,-1,-1,-1;-1,0,-1,0;-1,0,-1,-1".into());
    let v: SeifertMatrix = arg.parse()?;
    let sf = signature_function(&v);
    println!("starts at {}", sf.initial_value());
    for (j, after) in sf.jumps.iter().zip(sf.values.iter().skip(1)) {
        println!("  θ/2π = {:.6}: jump {:+} to {after}", j.turn_fraction(), j.size);
    }
    for m in milnor_signatures(&v) {
        println!("Milnor σ at θ/2π = {:.6} ({}): {}", m.angle() / std::f64::consts::TAU, m.factor, m.value);
    }
    // sample at rational angles θ = 2πa/m, skipping roots of Δ
    for m in [12u64, 7] {
        let row: Vec<String> = (1..m)
            .map(|a| tristram_levine_signature(&v, a, m).map_or("*".into(), |s| s.to_string()))
            .collect();
        println!("θ = 2πa/{m}: {}", row.join(" "));
    }
    Ok(())
}
