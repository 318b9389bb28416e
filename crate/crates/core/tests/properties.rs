//! Randomized and sweep-style invariants that complement the unit tests:
//! identity covers are fixpoints, orbifold Euler characteristics scale by
//! the index for arbitrary Klein-four subgroups, word monodromy is letter
//! parity, quotient types recombine into the top of the tower, and the
//! membership certificates hold across a wide genus range.

use proptest::prelude::*;

use necdouble_core::{
    build_tower, canonical_presentation, complex_double, cover_report, dd_monodromy, dd_type,
    klein_four, membership_check, omega_dd, orienting_double, psi_image, real_curve_types,
    schottky_double, signatures_equal, subgroup_signature, CoverSpec, GenKind, GroupHom, Letter,
    NecSignature, Rational, Sign, TopType,
};

fn tt(genus: u32, orientable: bool, boundary: u32) -> TopType {
    TopType::new(genus, orientable, boundary).unwrap()
}

fn arb_signature() -> impl Strategy<Value = NecSignature> {
    let cycles = prop::collection::vec(prop::collection::vec(2u32..5, 0..3), 0..3);
    let periods = prop::collection::vec(2u32..6, 0..3);
    (any::<bool>(), 0u32..3, periods, cycles).prop_map(|(plus, extra, periods, cycles)| {
        let (sign, genus) = if plus { (Sign::Plus, extra) } else { (Sign::Minus, extra + 1) };
        NecSignature::new(genus, sign, periods, cycles).unwrap()
    })
}

proptest! {
    #[test]
    fn identity_cover_is_a_fixpoint(sig in arb_signature()) {
        let pres = canonical_presentation(&sig);
        let images = vec![0; pres.generators().len()];
        let hom = GroupHom::new(pres, necdouble_core::trivial(), images).unwrap();
        let spec = CoverSpec::new(hom, &[]).unwrap();
        let got = subgroup_signature(&spec).unwrap();
        prop_assert!(signatures_equal(&got, &sig), "{sig} became {got}");
        prop_assert_eq!(got.euler_char_orb(), sig.euler_char_orb());
    }

    #[test]
    fn orbifold_chi_scales_with_the_index(
        g in 1u32..5,
        k in 1u32..5,
        pick in 0usize..5,
    ) {
        let base = tt(g, false, k);
        let hom = omega_dd(&base).unwrap();
        let k4 = klein_four();
        let subgroup: &[usize] = match pick {
            0 => &[],
            1 => &[1], // s
            2 => &[2], // t
            3 => &[3], // st
            _ => &[1, 2],
        };
        let subgroup: Vec<usize> = subgroup
            .iter()
            .map(|&i| match i {
                1 => k4.element_by_name("s").unwrap(),
                2 => k4.element_by_name("t").unwrap(),
                3 => k4.element_by_name("st").unwrap(),
                _ => unreachable!(),
            })
            .collect();
        let spec = CoverSpec::new(hom, &subgroup).unwrap();
        let report = cover_report(&spec).unwrap();
        let expected_index = 4 / (subgroup.len() + 1).next_power_of_two();
        prop_assert_eq!(report.index, expected_index);
        let total: Rational =
            report.component_signatures.iter().map(|s| s.euler_char_orb()).sum();
        prop_assert_eq!(total, Rational::from_integer(report.index as i64) * spec.base().euler_char_orb());
    }

    #[test]
    fn monodromy_is_reflection_letter_parity(
        letters in prop::collection::vec((0usize..8, any::<bool>()), 0..12),
    ) {
        let base = tt(2, false, 2);
        let pres = canonical_presentation(&base.signature());
        let n = pres.generators().len();
        let word: Vec<Letter> =
            letters.iter().map(|&(g, inv)| Letter { gen: g % n, inv }).collect();
        let parity = word
            .iter()
            .filter(|l| matches!(pres.generators()[l.gen].kind, GenKind::Reflection { .. }))
            .count()
            % 2
            == 1;
        let text = pres.format_word(&word);
        prop_assert_eq!(dd_monodromy(&base, &text).unwrap(), parity, "{}", text);
        // Formatting round-trips through the parser.
        let reparsed = pres.parse_word(&text).unwrap();
        prop_assert_eq!(reparsed, word);
    }
}

#[test]
fn quotient_types_recombine_into_the_top() {
    // The complex double of either middle quotient is the double of
    // doubles itself.
    for g in 1..=6 {
        for k in 1..=6 {
            let base = tt(g, false, k);
            let dd = dd_type(&base).unwrap();
            let ox = orienting_double(&base).unwrap().0;
            let sx = schottky_double(&base).unwrap().0;
            assert_eq!(complex_double(&ox).unwrap(), dd, "(g,k)=({g},{k})");
            assert_eq!(complex_double(&sx).unwrap(), dd, "(g,k)=({g},{k})");
            // And the tower agrees with the catalog at every level.
            let report = build_tower(&base).unwrap();
            assert_eq!(report.dx, dd);
            assert_eq!(report.quotient("s").unwrap().top_type, ox);
            assert_eq!(report.quotient("t").unwrap().top_type, sx);
            assert_eq!(report.quotient("st").unwrap().top_type, complex_double(&base).unwrap());
        }
    }
}

#[test]
fn membership_certificates_across_genera() {
    for p in 1..=8 {
        for t in real_curve_types(p).unwrap() {
            if t.top_type().boundary() == 0 {
                assert!(psi_image(&t).is_err());
                assert!(membership_check(&t).is_err());
                continue;
            }
            let report = membership_check(&t).unwrap();
            assert_eq!(report.dx, psi_image(&t).unwrap());
            assert_eq!(report.dx.euler_char(), 2 * report.conformal_quotient.euler_char());
            assert_eq!(report.dx.euler_char(), 2 * report.anticonformal_quotient.euler_char());
        }
    }
}
