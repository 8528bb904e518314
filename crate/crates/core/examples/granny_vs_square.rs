//! The granny and square knots share an Alexander polynomial; signatures tell
//! them apart.
use concordance_genus::bounds::{combine_bounds, BoundInputs};
use concordance_genus::seifert::{alexander_polynomial, classical_signature, milnor_signatures, SeifertMatrix};

fn main() -> concordance_genus::Result<()> {
    let trefoil: SeifertMatrix = "-1,1;0,-1".parse()?;
    let granny = trefoil.block_sum(&trefoil);
    let square = trefoil.block_sum(&trefoil.concordance_inverse());
    for (name, v) in [("granny", &granny), ("square", &square)] {
        let delta = alexander_polynomial(v);
        let mut input = BoundInputs::new(&delta);
        input.seifert = Some(v);
        input.genus = Some(2);
        let b = combine_bounds(&input)?;
        let milnor: Vec<i64> = milnor_signatures(v).iter().map(|m| m.value).collect();
        println!(
            "{name}: Δ = {delta}, σ = {}, Milnor {milnor:?}, g_4 >= {}, g_c in [{}, {}]",
            classical_signature(v),
            b.g4_lower,
            b.gc_lower,
            b.gc_upper.unwrap_or(2)
        );
    }
    Ok(())
}
