//! Linking forms on the double branched cover and their metabolizers.
use concordance_genus::linkform::{enumerate_metabolizers, format_subspace, from_seifert, FiniteLinkingForm};
use concordance_genus::seifert::SeifertMatrix;

fn main() -> concordance_genus::Result<()> {
    for (p, g) in [(3, 1), (3, 2), (2, 2)] {
        let n = enumerate_metabolizers(&FiniteLinkingForm::hyperbolic(p, g))?.len();
        println!("hyperbolic (Z/{p})^{}: {n} metabolizers", 2 * g);
    }
    // trefoil # mirror: H_1 = (Z/3)^2 with a metabolic form
    let t: SeifertMatrix = "-1,1;0,-1".parse()?;
    let square = t.block_sum(&t.concordance_inverse());
    let form = from_seifert(&square, 3)?;
    println!("square knot, p = 3: {form:?}");
    for m in enumerate_metabolizers(&form)? {
        println!("  {}", format_subspace(&m));
    }
    let granny = t.block_sum(&t);
    println!("granny knot, p = 3: {} metabolizers", enumerate_metabolizers(&from_seifert(&granny, 3)?)?.len());
    Ok(())
}
