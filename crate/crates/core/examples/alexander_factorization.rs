//! Factor a few Alexander polynomials and read off the genus bound coming
//! from symmetric irreducible factors of odd multiplicity.
use concordance_genus::bounds::gc_polynomial_bound;
use concordance_genus::laurent::{cyclotomic_phi_2p, factor, fox_milnor_test, NormalizedAlexander};

fn main() -> concordance_genus::Result<()> {
    let mut polys: Vec<(String, NormalizedAlexander)> = vec![
        ("6_2".into(), "1,-3,3,-3,1".parse()?),
        ("granny".into(), "1,-2,3,-2,1".parse()?),
        ("10_82".into(), "1,-4,8,-12,13,-12,8,-4,1".parse()?),
    ];
    for p in [3, 5, 7, 11] {
        polys.push((format!("phi_{}", 2 * p), cyclotomic_phi_2p(p)?));
    }
    for (name, d) in &polys {
        let f = factor(d);
        let fm = fox_milnor_test(d)?.map_or("no".to_string(), |w| format!("yes, f = {w}"));
        println!("{name:>8}: {f}   g_c >= {}   Fox-Milnor {fm}", gc_polynomial_bound(d)?);
    }
    Ok(())
}
