//! The Klein-four tower over a bordered non-orientable surface X: the
//! double of doubles DX at the top, X at the bottom, and the three
//! intermediate quotients — the orienting double OX (by `s`), the Schottky
//! double SX (by `t`) and the complex double X⁺ (by `st`). Every type in
//! the tower is computed by the covering engine and cross-checked against
//! the closed-form catalog. Also here: the word-parity monodromy of the
//! covering DX → X⁺, and the lifting construction that extends a finite
//! quotient map by two parity characters so that its kernel uniformizes
//! the double of doubles of the original kernel surface.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cover::{build_cover, components_cut_along_mirrors, subgroup_signature, CoverSpec};
use crate::doubles::{complex_double, dd_type, orienting_double, schottky_double};
use crate::error::Error;
use crate::hom::{omega_dd, GroupHom};
use crate::perm::{direct_product, direct_sum, klein_four};
use crate::presentation::{canonical_presentation, GenKind};
use crate::signature::{NecSignature, Sign, TopType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientLabel {
    Orienting,
    Schottky,
    Complex,
}

impl QuotientLabel {
    pub fn name(&self) -> &'static str {
        match self {
            QuotientLabel::Orienting => "OX",
            QuotientLabel::Schottky => "SX",
            QuotientLabel::Complex => "X+",
        }
    }
}

/// One intermediate quotient of the double of doubles.
#[derive(Debug, Clone)]
pub struct TowerQuotient {
    /// The involution generating the quotient subgroup: "s", "t" or "st".
    pub involution: &'static str,
    pub top_type: TopType,
    pub label: QuotientLabel,
    /// Circles fixed by the involution on the double of doubles — the
    /// boundary circles of the quotient.
    pub fix_circles: u32,
}

/// The full tower: base, top, the three intermediate quotients, and
/// whether the fixed curves of `s` separate the top surface.
///
/// Convention: reflections map to `s` and glide generators to `t`, so `s`
/// is the involution with fixed curves (lying over the boundary of the
/// orienting double) and `t` and `st` act freely.
#[derive(Debug, Clone)]
pub struct TowerReport {
    pub base: TopType,
    pub dx: TopType,
    /// Quotients by ⟨s⟩, ⟨t⟩ and ⟨st⟩, in that order.
    pub quotients: [TowerQuotient; 3],
    pub fix_s_separating: bool,
}

impl TowerReport {
    pub fn quotient(&self, involution: &str) -> Option<&TowerQuotient> {
        self.quotients.iter().find(|q| q.involution == involution)
    }
}

fn surface_type(sig: &NecSignature, what: &str) -> Result<TopType, Error> {
    sig.as_top_type().ok_or_else(|| Error::Internal(format!("{what} is not a surface: {sig}")))
}

/// Build the tower over a non-orientable bordered type by running the
/// covering engine on the Klein-four map and its three index-two
/// subgroups.
pub fn build_tower(t: &TopType) -> Result<TowerReport, Error> {
    let hom = omega_dd(t)?;
    let dx_spec = CoverSpec::new(hom.clone(), &[])?;
    let dx_sig = subgroup_signature(&dx_spec)?;
    let dx = surface_type(&dx_sig, "the double of doubles")?;
    let expected_dx = dd_type(t)?;
    if dx != expected_dx {
        return Err(Error::Internal(format!(
            "engine found {dx} for the double of doubles of {t}, catalog says {expected_dx}"
        )));
    }

    let quotient = |involution: &'static str,
                    expected: TopType,
                    label: QuotientLabel|
     -> Result<TowerQuotient, Error> {
        let u = hom.group().element_by_name(involution)?;
        let spec = CoverSpec::new(hom.clone(), &[u])?;
        let sig = subgroup_signature(&spec)?;
        let top_type = surface_type(&sig, label.name())?;
        if top_type != expected {
            return Err(Error::Internal(format!(
                "engine found {top_type} for {} of {t}, catalog says {expected}",
                label.name()
            )));
        }
        Ok(TowerQuotient { involution, top_type, label, fix_circles: top_type.boundary() })
    };
    let quotients = [
        quotient("s", orienting_double(t)?.0, QuotientLabel::Orienting)?,
        quotient("t", schottky_double(t)?.0, QuotientLabel::Schottky)?,
        quotient("st", complex_double(t)?, QuotientLabel::Complex)?,
    ];

    let complex = build_cover(&dx_spec)?;
    let fix_s_separating = components_cut_along_mirrors(&complex) == 2;
    Ok(TowerReport { base: *t, dx, quotients, fix_s_separating })
}

/// The monodromy of the double-of-doubles covering on a word over the
/// canonical generators of `t`'s surface group: nontrivial exactly when
/// the word carries an odd number of reflection letters.
pub fn dd_monodromy(t: &TopType, word: &str) -> Result<bool, Error> {
    let pres = canonical_presentation(&t.signature());
    let w = pres.parse_word(word)?;
    Ok(pres.reflection_parity(&w))
}

/// Extend a validated quotient map θ onto a finite group G to a map into
/// G × C₂ × C₂ by two parity characters: the second component marks
/// orientation-reversing generators (the `t` factor) and the third marks
/// reflection generators lying in the kernel of θ (the `s` factor). When
/// the kernel of θ is a bordered non-orientable surface group, the kernel
/// of the extended map uniformizes that surface's double of doubles.
pub fn theta_prime(hom: &GroupHom) -> Result<GroupHom, Error> {
    hom.validate()?;
    let kernel_spec = CoverSpec::new(hom.clone(), &[])?;
    let kernel = subgroup_signature(&kernel_spec)?;
    let bordered_nonorientable_surface =
        kernel.is_surface() && kernel.sign() == Sign::Minus && kernel.cycle_count() >= 1;
    if !bordered_nonorientable_surface {
        return Err(Error::domain(format!(
            "the kernel must be a bordered non-orientable surface group; its signature is {kernel}"
        )));
    }
    let k4 = klein_four();
    let s = k4.element_by_name("s")?;
    let t4 = k4.element_by_name("t")?;
    let product = direct_product(hom.group(), &k4);
    let pres = hom.presentation().clone();
    let mut images = Vec::with_capacity(pres.generators().len());
    for (gi, g) in pres.generators().iter().enumerate() {
        let mut k_elem = k4.identity();
        if matches!(g.kind, GenKind::Reflection { .. })
            && hom.image_of(gi) == hom.group().identity()
        {
            k_elem = k4.mul(k_elem, s);
        }
        if g.kind.reverses_orientation() {
            k_elem = k4.mul(k_elem, t4);
        }
        let combined = direct_sum(hom.group().perm(hom.image_of(gi)), k4.perm(k_elem));
        let id = product.element_index(&combined).ok_or_else(|| {
            Error::Internal(String::from("product group is missing a factor element"))
        })?;
        images.push(id);
    }
    let prime = GroupHom::new(pres, product, images)?;
    prime
        .validate()
        .map_err(|e| Error::Internal(format!("parity-extended map failed validation: {e}")))?;
    if !prime.is_surjective() {
        return Err(Error::Internal(String::from("parity-extended map is not surjective")));
    }
    Ok(prime)
}

/// For a validated quotient map θ whose kernel is a bordered
/// non-orientable surface X: build the parity extension, compute the type
/// of its kernel with the engine, check it against the closed form for
/// the double of doubles of X, and return both types `(X, DX)`.
pub fn lifting_kernel_type(hom: &GroupHom) -> Result<(TopType, TopType), Error> {
    let prime = theta_prime(hom)?;
    let kernel_spec = CoverSpec::new(hom.clone(), &[])?;
    let x = surface_type(&subgroup_signature(&kernel_spec)?, "the kernel")?;
    let prime_spec = CoverSpec::new(prime, &[])?;
    let dx = surface_type(&subgroup_signature(&prime_spec)?, "the lifted kernel")?;
    let expected = dd_type(&x)?;
    if dx != expected {
        return Err(Error::Internal(format!(
            "lifted kernel has type {dx}, but the double of doubles of {x} is {expected}"
        )));
    }
    Ok((x, dx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{assignment_to_hom, klein_four_components, standard_epis_c2};
    use crate::perm::{dihedral, trivial, FinGroup};
    use crate::presentation::Presentation;

    fn tt(genus: u32, orientable: bool, boundary: u32) -> TopType {
        TopType::new(genus, orientable, boundary).unwrap()
    }

    #[test]
    fn moebius_tower() {
        let report = build_tower(&tt(1, false, 1)).unwrap();
        assert_eq!(report.dx, tt(1, true, 0));
        let s = report.quotient("s").unwrap();
        assert_eq!(s.top_type, tt(0, true, 2));
        assert_eq!(s.label, QuotientLabel::Orienting);
        assert_eq!(s.fix_circles, 2);
        let t = report.quotient("t").unwrap();
        assert_eq!(t.top_type, tt(2, false, 0));
        assert_eq!(t.label, QuotientLabel::Schottky);
        assert_eq!(t.fix_circles, 0);
        let st = report.quotient("st").unwrap();
        assert_eq!(st.top_type, tt(1, true, 0));
        assert_eq!(st.label, QuotientLabel::Complex);
        assert_eq!(st.fix_circles, 0);
        assert!(report.fix_s_separating);
    }

    #[test]
    fn projective_plane_with_two_holes_tower() {
        let base = tt(1, false, 2);
        let report = build_tower(&base).unwrap();
        assert_eq!(report.dx, tt(3, true, 0));
        assert_eq!(report.quotient("st").unwrap().top_type, tt(2, true, 0));
        assert_eq!(report.quotient("s").unwrap().top_type, tt(0, true, 4));
        assert_eq!(report.quotient("t").unwrap().top_type, tt(4, false, 0));
        // chi multiplies by four up the tower.
        assert_eq!(report.dx.euler_char(), 4 * base.euler_char());
        assert!(report.fix_s_separating);
    }

    #[test]
    fn odd_boundary_tower() {
        let report = build_tower(&tt(2, false, 3)).unwrap();
        assert_eq!(report.dx, tt(7, true, 0));
        assert_eq!(report.quotient("s").unwrap().top_type, tt(1, true, 6));
        assert_eq!(report.quotient("t").unwrap().top_type, tt(8, false, 0));
        assert_eq!(report.quotient("st").unwrap().top_type, tt(4, true, 0));
        assert_eq!(report.quotient("s").unwrap().fix_circles, 6);
    }

    #[test]
    fn tower_refuses_wrong_bases() {
        assert!(build_tower(&tt(1, true, 1)).is_err());
        assert!(build_tower(&tt(1, false, 0)).is_err());
    }

    #[test]
    fn monodromy_counts_reflection_letters() {
        let moebius = tt(1, false, 1);
        assert!(dd_monodromy(&moebius, "c1").unwrap());
        assert!(!dd_monodromy(&moebius, "d1 c1 d1^-1 c1").unwrap());
        assert!(!dd_monodromy(&moebius, "e1 d1^2").unwrap());
        assert!(dd_monodromy(&moebius, "d1 c1 e1").unwrap());
        assert!(dd_monodromy(&tt(2, false, 2), "c1 c2 c1").unwrap());
        assert!(dd_monodromy(&moebius, "q7").is_err());
    }

    #[test]
    fn monodromy_is_trivial_on_relators() {
        for t in [tt(1, false, 1), tt(2, false, 2), tt(1, false, 3)] {
            let pres = canonical_presentation(&t.signature());
            for relator in pres.relators() {
                let text = pres.format_word(relator);
                assert!(!dd_monodromy(&t, &text).unwrap(), "{t}: {text}");
            }
        }
    }

    #[test]
    fn monodromy_matches_the_klein_four_map() {
        let t = tt(2, false, 2);
        let hom = omega_dd(&t).unwrap();
        let pres = hom.presentation();
        for text in [
            "c1",
            "c2",
            "d1 d2",
            "c1 d1",
            "e1 c1 e1^-1",
            "d1^3 c2 d2^-1",
            "c1 c2",
            "e1 e2",
            "d2 c1 c2 c1 d1^2",
        ] {
            let w = pres.parse_word(text).unwrap();
            let (s_part, _) = klein_four_components(hom.group(), hom.evaluate(&w));
            assert_eq!(dd_monodromy(&t, text).unwrap(), s_part, "{text}");
        }
    }

    fn trivial_hom(pres: Presentation) -> GroupHom {
        let group = trivial();
        let images = alloc::vec![0; pres.generators().len()];
        GroupHom::new(pres, group, images).unwrap()
    }

    /// Klein-four components of the second factor of a product element, in
    /// the (s, t) basis.
    fn k4_part(product: &FinGroup, first_degree: usize, elem: usize) -> (bool, bool) {
        let p = product.perm(elem);
        (p.apply(first_degree) != first_degree, p.apply(first_degree + 2) != first_degree + 2)
    }

    #[test]
    fn parity_extension_of_the_trivial_map_is_the_klein_four_map() {
        let sig = NecSignature::parse("(1;-;[-];{(-)})").unwrap();
        let pres = canonical_presentation(&sig);
        let hom = trivial_hom(pres);
        let prime = theta_prime(&hom).unwrap();
        let product = prime.group();
        let first_degree = trivial().perm(0).degree();
        let pres = prime.presentation();
        // e1: no markers; c1: both markers; d1: orientation marker only.
        let e1 = pres.generator_index("e1").unwrap();
        assert_eq!(k4_part(product, first_degree, prime.image_of(e1)), (false, false));
        let c1 = pres.generator_index("c1").unwrap();
        assert_eq!(k4_part(product, first_degree, prime.image_of(c1)), (true, true));
        let d1 = pres.generator_index("d1").unwrap();
        assert_eq!(k4_part(product, first_degree, prime.image_of(d1)), (false, true));
        // Same kernel as the Klein-four map: both kill exactly the words
        // with even reflection count and even orientation character.
        let omega = omega_dd(&tt(1, false, 1)).unwrap();
        for text in ["c1 d1", "c1 c1", "d1^2", "e1", "c1 e1 d1", "d1 c1"] {
            let w = pres.parse_word(text).unwrap();
            let in_prime_kernel = prime.evaluate(&w) == prime.group().identity();
            let in_omega_kernel = omega.evaluate(&w) == omega.group().identity();
            assert_eq!(in_prime_kernel, in_omega_kernel, "{text}");
        }
    }

    #[test]
    fn lifting_the_trivial_map_reduces_to_the_tower() {
        let sig = NecSignature::parse("(1;-;[-];{(-)})").unwrap();
        let hom = trivial_hom(canonical_presentation(&sig));
        let (x, dx) = lifting_kernel_type(&hom).unwrap();
        assert_eq!(x, tt(1, false, 1));
        assert_eq!(dx, tt(1, true, 0));
    }

    #[test]
    fn lifting_standard_epimorphism_kernels() {
        // Over (2;-;2), exactly the two rows with bordered non-orientable
        // kernels qualify.
        let base = tt(2, false, 2);
        let mut accepted = alloc::vec::Vec::new();
        for assignment in standard_epis_c2(&base).unwrap() {
            let hom = assignment_to_hom(&base, &assignment).unwrap();
            match lifting_kernel_type(&hom) {
                Ok((x, dx)) => {
                    accepted.push(assignment.row);
                    assert_eq!(x, tt(4, false, 2));
                    assert_eq!(dx, tt(9, true, 0));
                }
                Err(err) => assert!(!err.is_syntax(), "{err}"),
            }
        }
        assert_eq!(accepted, alloc::vec![4, 5]);
    }

    #[test]
    fn lifting_through_an_odd_link_presentation() {
        // Two odd links force the rotation images to have full order three;
        // the second cycle's reflection maps to the identity and keeps the
        // kernel bordered.
        let sig = NecSignature::parse("(1;-;[-];{(3,3),(-)})").unwrap();
        let pres = canonical_presentation(&sig);
        let d3 = dihedral(3).unwrap();
        let hom =
            GroupHom::from_literal(pres, d3, "e1->1,c1.0->s,c1.1->t,c1.2->s,e2->1,c2->1,d1->1")
                .unwrap();
        let (x, dx) = lifting_kernel_type(&hom).unwrap();
        assert_eq!(x, tt(6, false, 6));
        assert_eq!(dx, tt(21, true, 0));
        // Reflections of the odd link carry equal kernel markers.
        let prime = theta_prime(&hom).unwrap();
        let first_degree = 3;
        let ppres = prime.presentation();
        let c10 = ppres.generator_index("c1.0").unwrap();
        let c11 = ppres.generator_index("c1.1").unwrap();
        let (s10, _) = k4_part(prime.group(), first_degree, prime.image_of(c10));
        let (s11, _) = k4_part(prime.group(), first_degree, prime.image_of(c11));
        assert_eq!(s10, s11);
        assert!(!s10);
        let c2 = ppres.generator_index("c2").unwrap();
        let (s2, t2) = k4_part(prime.group(), first_degree, prime.image_of(c2));
        assert!(s2 && t2);
    }

    #[test]
    fn lifting_rejects_closed_or_orientable_kernels() {
        // The index-six dihedral cover: its kernel is a closed orientable
        // surface, so the lifting refuses it.
        let sig = NecSignature::parse("(1;+;[3];{(3)})").unwrap();
        let pres = canonical_presentation(&sig);
        let d3 = dihedral(3).unwrap();
        let hom =
            GroupHom::from_literal(pres, d3, "x->st,e->ts,a->1,b->1,c1.0->s,c1.1->tst").unwrap();
        match lifting_kernel_type(&hom) {
            Err(Error::Domain(msg)) => assert!(msg.contains("(7;+;[-];{-})"), "{msg}"),
            other => panic!("expected a domain error, got {other:?}"),
        }
    }
}
