use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use concordance_genus::algebra::fp::{all_vectors, FpForm};
use concordance_genus::algebra::intmat::{determinant, int_matrix};
use concordance_genus::bounds::{combine_bounds, BoundInputs, MilnorMode};
use concordance_genus::cgmodel::{BaseFunction, CGConfiguration, ScheduleRule};
use concordance_genus::laurent::{factor, fox_milnor_test, normalize, NormalizedAlexander};
use concordance_genus::linkform::{enumerate_metabolizers, from_seifert, isotropic_subspaces, FiniteLinkingForm};
use concordance_genus::reproduce::{milnor_matches_jumps, random_seifert};
use concordance_genus::seifert::{
    alexander_polynomial, branched_cover_homology, classical_signature, signature_function, SeifertMatrix,
};

fn seifert(max_genus: usize) -> impl Strategy<Value = SeifertMatrix> {
    (1..=max_genus, any::<u64>()).prop_map(|(g, seed)| random_seifert(g, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Unimodular change of basis: a product of elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, k) in ops {
            if i != j {
                for c in 0..n {
                    m[i][c] += k * m[j][c];
                }
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alexander_is_a_knot_polynomial(v in seifert(3)) {
        let d = alexander_polynomial(&v);
        prop_assert!(d.is_knot_polynomial());
        prop_assert_eq!(d.degree() % 2, 0);
        prop_assert!(d.degree() <= v.size());
    }

    #[test]
    fn determinant_matches_alexander_at_minus_one(v in seifert(3)) {
        let d = alexander_polynomial(&v);
        let det = determinant(&v.symmetrized());
        prop_assert_eq!(num_traits::Signed::abs(&det), num_traits::Signed::abs(&d.eval_i64(-1)));
        prop_assert_eq!(branched_cover_homology(&v).unwrap().order(), num_traits::Signed::abs(&det));
    }

    #[test]
    fn factorization_expands_back(v in seifert(3)) {
        let d = alexander_polynomial(&v);
        prop_assert_eq!(normalize(&factor(&d).expand()).unwrap(), d);
    }

    #[test]
    fn block_sum_is_multiplicative_and_additive(a in seifert(2), b in seifert(2)) {
        let s = a.block_sum(&b);
        let product = normalize(&(&alexander_polynomial(&a).poly() * &alexander_polynomial(&b).poly())).unwrap();
        prop_assert_eq!(alexander_polynomial(&s), product);
        prop_assert_eq!(classical_signature(&s), classical_signature(&a) + classical_signature(&b));
    }

    #[test]
    fn sum_with_inverse_is_algebraically_slice(v in seifert(2)) {
        let s = v.block_sum(&v.concordance_inverse());
        prop_assert_eq!(classical_signature(&s), 0);
        prop_assert!(fox_milnor_test(&alexander_polynomial(&s)).unwrap().is_some());
        let d = alexander_polynomial(&s);
        let mut input = BoundInputs::new(&d);
        input.seifert = Some(&s);
        let b = combine_bounds(&input).unwrap();
        prop_assert_eq!(b.gc_lower, 0);
        prop_assert_eq!(b.g4_lower, 0);
    }

    #[test]
    fn congruence_preserves_invariants((v, p) in seifert(2).prop_flat_map(|v| { let n = v.size(); (Just(v), unimodular(n)) })) {
        let w = v.congruent(&int_matrix(&p)).unwrap();
        prop_assert_eq!(alexander_polynomial(&w), alexander_polynomial(&v));
        prop_assert_eq!(classical_signature(&w), classical_signature(&v));
    }

    #[test]
    fn bounds_are_ordered(v in seifert(3)) {
        let d = alexander_polynomial(&v);
        let genus = (v.size() / 2) as u32;
        for mode in [MilnorMode::MaxPerFactor, MilnorMode::SumOverAngles] {
            let mut input = BoundInputs::new(&d);
            input.seifert = Some(&v);
            input.genus = Some(genus);
            input.milnor_mode = mode;
            let b = combine_bounds(&input).unwrap();
            prop_assert!(b.g4_lower <= b.gc_lower);
            if mode == MilnorMode::MaxPerFactor {
                prop_assert!(b.gc_lower <= genus);
            }
        }
    }

    #[test]
    fn signature_function_starts_at_zero_and_ends_at_sigma(v in seifert(3)) {
        let sf = signature_function(&v);
        prop_assert_eq!(sf.initial_value(), 0);
        prop_assert_eq!(sf.final_value(), classical_signature(&v));
        prop_assert_eq!(sf.values.len(), sf.jumps.len() + 1);
        for (j, w) in sf.jumps.iter().zip(sf.values.windows(2)) {
            prop_assert_eq!(w[1] - w[0], j.size);
        }
    }

    #[test]
    fn milnor_agrees_with_jumps(v in seifert(3)) {
        prop_assert!(milnor_matches_jumps(&v));
    }

    #[test]
    fn fox_milnor_witness_is_a_witness(v in seifert(2)) {
        let s = v.block_sum(&v.concordance_inverse());
        let d = alexander_polynomial(&s);
        let f = fox_milnor_test(&d).unwrap().unwrap();
        prop_assert_eq!(normalize(&(&f * &f.involution())).unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn metabolizers_are_half_dimensional_and_self_annihilating(v in seifert(2)) {
        let s = v.block_sum(&v.concordance_inverse());
        for p in [2u32, 3, 5] {
            let Ok(form) = from_seifert(&s, p) else { continue };
            let Ok(ms) = enumerate_metabolizers(&form) else { continue };
            // the diagonal class is always a metabolizer of K # -K
            prop_assert!(!ms.is_empty());
            let fp = form.fp_form().unwrap();
            for m in &ms {
                prop_assert_eq!(2 * m.dim(), form.rank());
                prop_assert_eq!(fp.annihilator(m), m.clone());
            }
        }
    }

    #[test]
    fn isotropic_subspaces_are_isotropic(gram in prop::collection::vec(0u32..3, 9)) {
        let mut g = vec![vec![0u32; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                g[i][j] = gram[3 * i + j];
                g[j][i] = gram[3 * i + j];
            }
        }
        let form = FpForm::new(3, g);
        for d in 1..=2 {
            let subs = isotropic_subspaces(&form, d);
            for s in &subs {
                prop_assert_eq!(s.dim(), d);
                prop_assert!(form.is_isotropic(s));
            }
            // no duplicates
            let mut b: Vec<_> = subs.iter().map(|s| s.basis().to_vec()).collect();
            b.sort();
            b.dedup();
            prop_assert_eq!(b.len(), subs.len());
        }
    }

    #[test]
    fn companion_model_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = BaseFunction::random_even(4, 10, &mut rng);
        let a = CGConfiguration::with_base(2, base, 10, ScheduleRule::Tripling).unwrap().model;
        let b = CGConfiguration::new(1).unwrap().model;
        let sum = a.connected_sum(&b);
        for m in all_vectors(3, 6).iter().step_by(7) {
            prop_assert_eq!(sum.value(m), a.value(&m[..4]) + b.value(&m[4..]));
        }
    }
}

#[test]
fn hyperbolic_forms_are_nonsingular() {
    for p in [2, 3, 5] {
        for g in 1..=3 {
            let f = FiniteLinkingForm::hyperbolic(p, g);
            assert!(f.is_nonsingular());
            // p = 2 has no symmetric splitting into hyperbolic planes via 1/2
            assert_eq!(f.hyperbolic_basis().is_some(), p != 2);
        }
    }
}

#[test]
fn malformed_polynomials_are_rejected() {
    for s in ["", "1,2", "x", "2,-3,2,1"] {
        let r: Result<NormalizedAlexander, _> = s.parse();
        assert!(r.map(|p| p.check_knot_polynomial()).map_or(true, |c| c.is_err()), "{s}");
    }
}
