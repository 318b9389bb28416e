//! Homomorphisms from canonical presentations into finite groups:
//! evaluation, relator validation, surjectivity, and the distinguished
//! constructions used by the double classification (the seven standard
//! index-two assignments and the Klein-four map whose kernel is the double
//! of doubles).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::perm::{cyclic, klein_four, FinGroup};
use crate::presentation::{canonical_presentation, GenKind, Presentation, Word};
use crate::signature::TopType;

#[derive(Debug, Clone)]
pub struct GroupHom {
    pres: Presentation,
    group: FinGroup,
    images: Vec<usize>,
}

impl GroupHom {
    /// Wrap a generator-image table. Images are element ids of `group`, one
    /// per generator of `pres`, in generator order. No relator check here;
    /// see [`GroupHom::violated_relators`].
    pub fn new(pres: Presentation, group: FinGroup, images: Vec<usize>) -> Result<GroupHom, Error> {
        if images.len() != pres.generators().len() {
            return Err(Error::domain(format!(
                "expected {} generator images, got {}",
                pres.generators().len(),
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&e| e >= group.order()) {
            return Err(Error::domain(format!("image id {bad} is outside the group")));
        }
        Ok(GroupHom { pres, group, images })
    }

    /// Parse a comma-separated literal like
    /// `"x->st, e->ts, a->1, b->1, c1.0->s, c1.1->tst"`. Every generator of
    /// the presentation must receive exactly one image; bare names fall
    /// back as in [`Presentation::resolve_generator`].
    pub fn from_literal(
        pres: Presentation,
        group: FinGroup,
        literal: &str,
    ) -> Result<GroupHom, Error> {
        let mut images: Vec<Option<usize>> = alloc::vec![None; pres.generators().len()];
        for entry in literal.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (name, value) = entry.split_once("->").ok_or_else(|| {
                Error::domain(format!("bad assignment `{entry}` (expected `name->element`)"))
            })?;
            let gen = pres.resolve_generator(name.trim())?;
            let elem = group.element_by_name(value.trim())?;
            if images[gen].is_some() {
                return Err(Error::domain(format!(
                    "generator `{}` assigned twice",
                    pres.generators()[gen].name
                )));
            }
            images[gen] = Some(elem);
        }
        let mut table = Vec::with_capacity(images.len());
        for (i, img) in images.into_iter().enumerate() {
            match img {
                Some(e) => table.push(e),
                None => {
                    return Err(Error::domain(format!(
                        "generator `{}` has no image",
                        pres.generators()[i].name
                    )))
                }
            }
        }
        GroupHom::new(pres, group, table)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_of(&self, gen: usize) -> usize {
        self.images[gen]
    }

    /// Product of the letter images, respecting inverses.
    pub fn evaluate(&self, word: &Word) -> usize {
        let mut acc = self.group.identity();
        for letter in word {
            let img = self.images[letter.gen];
            let img = if letter.inv { self.group.inv(img) } else { img };
            acc = self.group.mul(acc, img);
        }
        acc
    }

    /// Indices of relators that do not evaluate to the identity.
    pub fn violated_relators(&self) -> Vec<usize> {
        self.pres
            .relators()
            .iter()
            .enumerate()
            .filter(|(_, r)| self.evaluate(r) != self.group.identity())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let violated = self.violated_relators();
        if violated.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidHom(violated))
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violated_relators().is_empty()
    }

    /// True when the generator images generate the whole codomain.
    pub fn is_surjective(&self) -> bool {
        self.group.generated_subgroup(&self.images).len() == self.group.order()
    }

    /// Render as a literal in generator order.
    pub fn to_literal(&self) -> String {
        let parts: Vec<String> = self
            .pres
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, &e)| format!("{}->{}", g.name, self.group.name(e)))
            .collect();
        parts.join(",")
    }
}

/// One of the seven constant-on-generator-sets assignments onto the
/// two-element group: boundary generators map together, reflections map
/// together, handle/glide generators map together. `true` means the
/// nontrivial element. `row` is the 1-based position in the conventional
/// table ordering below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardAssignment {
    pub row: u8,
    pub v_e: bool,
    pub v_c: bool,
    pub v_a: bool,
}

impl StandardAssignment {
    pub fn describe(&self) -> String {
        let v = |b: bool| if b { "t" } else { "1" };
        format!("E->{},C->{},A->{}", v(self.v_e), v(self.v_c), v(self.v_a))
    }
}

/// The fixed row order of the seven nontrivial assignments `(E, C, A)`.
pub const STANDARD_ROWS: [(bool, bool, bool); 7] = [
    (false, true, true),
    (false, false, true),
    (false, true, false),
    (true, false, false),
    (true, false, true),
    (true, true, false),
    (true, true, true),
];

/// All standard epimorphisms of the surface group of `t` onto the
/// two-element group, in row order: the assignments that respect every
/// relator and are surjective. There are 7 when the boundary count is
/// even, 3 (rows 1-3, those with trivial boundary images) when odd.
///
/// Requires genus >= 1 and boundary >= 1: with no handles or glides, or no
/// boundary, whole generator sets vanish and the seven-row table no longer
/// describes distinct surjections, so such inputs are refused.
pub fn standard_epis_c2(t: &TopType) -> Result<Vec<StandardAssignment>, Error> {
    if t.genus() == 0 || t.boundary() == 0 {
        return Err(Error::domain(
            "standard double enumeration needs genus >= 1 and at least one boundary component",
        ));
    }
    let pres = canonical_presentation(&t.signature());
    let c2 = cyclic(2)?;
    let mut rows = Vec::new();
    for (i, &(v_e, v_c, v_a)) in STANDARD_ROWS.iter().enumerate() {
        let assignment = StandardAssignment { row: (i + 1) as u8, v_e, v_c, v_a };
        let hom = assignment_hom(&pres, &c2, &assignment);
        if hom.is_valid() {
            debug_assert!(hom.is_surjective());
            rows.push(assignment);
        }
    }
    Ok(rows)
}

/// The homomorphism realizing a standard assignment on the surface group
/// of `t`, into the order-2 group.
pub fn assignment_to_hom(t: &TopType, assignment: &StandardAssignment) -> Result<GroupHom, Error> {
    let pres = canonical_presentation(&t.signature());
    let c2 = cyclic(2)?;
    Ok(assignment_hom(&pres, &c2, assignment))
}

fn assignment_hom(pres: &Presentation, c2: &FinGroup, a: &StandardAssignment) -> GroupHom {
    let nontrivial = 1usize; // the non-identity element of the order-2 group
    let images = pres
        .generators()
        .iter()
        .map(|g| {
            let v = match g.kind {
                GenKind::Boundary => a.v_e,
                GenKind::Reflection { .. } => a.v_c,
                GenKind::HandleA | GenKind::HandleB | GenKind::Glide => a.v_a,
                GenKind::Elliptic { .. } => false,
            };
            if v {
                nontrivial
            } else {
                0
            }
        })
        .collect();
    GroupHom::new(pres.clone(), c2.clone(), images).expect("image table length matches")
}

/// The Klein-four map whose kernel uniformizes the double of doubles:
/// glide generators map to `t`, boundary generators to the identity,
/// reflections to `s`. Defined for non-orientable bordered types only.
pub fn omega_dd(t: &TopType) -> Result<GroupHom, Error> {
    if t.orientable() || t.boundary() == 0 {
        return Err(Error::domain(
            "the double-of-doubles map needs a non-orientable Klein surface with non-empty boundary",
        ));
    }
    let pres = canonical_presentation(&t.signature());
    let k4 = klein_four();
    let s = k4.element_by_name("s")?;
    let tt = k4.element_by_name("t")?;
    let images = pres
        .generators()
        .iter()
        .map(|g| match g.kind {
            GenKind::Glide => tt,
            GenKind::Boundary => 0,
            GenKind::Reflection { .. } => s,
            GenKind::HandleA | GenKind::HandleB | GenKind::Elliptic { .. } => 0,
        })
        .collect();
    let hom = GroupHom::new(pres, k4, images)?;
    hom.validate()
        .map_err(|e| Error::Internal(format!("double-of-doubles map failed validation: {e}")))?;
    if !hom.is_surjective() {
        return Err(Error::Internal(String::from(
            "double-of-doubles map is not surjective on a bordered non-orientable type",
        )));
    }
    Ok(hom)
}

/// Components of a Klein-four element in the `s`/`t` generator basis used
/// by [`crate::perm::klein_four`]: `(s-part, t-part)`.
pub fn klein_four_components(group: &FinGroup, elem: usize) -> (bool, bool) {
    let p = group.perm(elem);
    (p.apply(0) != 0, p.apply(2) != 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::dihedral;
    use crate::signature::NecSignature;

    fn example_hom() -> GroupHom {
        let sig = NecSignature::parse("(1;+;[3];{(3)})").unwrap();
        let pres = canonical_presentation(&sig);
        let d3 = dihedral(3).unwrap();
        GroupHom::from_literal(pres, d3, "x->st,e->ts,a->1,b->1,c1.0->s,c1.1->tst").unwrap()
    }

    #[test]
    fn dihedral_example_validates() {
        let hom = example_hom();
        assert!(hom.is_valid());
        assert!(hom.is_surjective());
        // The long relator evaluates to the identity: st * ts = 1.
        let long = &hom.presentation().relators()[0];
        assert_eq!(hom.evaluate(long), 0);
        // e c0 e^-1 c1^-1 also dies: ts * s * st = tst.
        let w = hom.presentation().parse_word("e1 c1.0 e1^-1").unwrap();
        let d3 = hom.group();
        assert_eq!(hom.evaluate(&w), d3.element_by_name("tst").unwrap());
        assert_eq!(hom.evaluate(&Vec::new()), 0);
    }

    #[test]
    fn literal_errors() {
        let sig = NecSignature::parse("(1;+;[3];{(3)})").unwrap();
        let pres = canonical_presentation(&sig);
        let d3 = dihedral(3).unwrap();
        // Missing c1.1.
        assert!(matches!(
            GroupHom::from_literal(pres.clone(), d3.clone(), "x->st,e->ts,a->1,b->1,c1.0->s"),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            GroupHom::from_literal(pres.clone(), d3.clone(), "x->st,q->1"),
            Err(Error::UnknownName(_))
        ));
        assert!(matches!(
            GroupHom::from_literal(pres.clone(), d3.clone(), "x=st"),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            GroupHom::from_literal(pres, d3, "x->zz,e->ts,a->1,b->1,c1.0->s,c1.1->t"),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn invalid_hom_lists_violated_relators() {
        // On (1;-;3), boundary generators to the nontrivial element violate
        // the long relator (odd boundary count).
        let t = TopType::new(1, false, 3).unwrap();
        let a = StandardAssignment { row: 4, v_e: true, v_c: false, v_a: false };
        let hom = assignment_to_hom(&t, &a).unwrap();
        let violated = hom.violated_relators();
        assert_eq!(violated, alloc::vec![0]);
        assert!(matches!(hom.validate(), Err(Error::InvalidHom(_))));
    }

    #[test]
    fn standard_counts_follow_boundary_parity() {
        for g in 1..=6u32 {
            for k in 1..=6u32 {
                for orientable in [false, true] {
                    let t = TopType::new(g, orientable, k).unwrap();
                    let rows = standard_epis_c2(&t).unwrap();
                    if k % 2 == 0 {
                        assert_eq!(rows.len(), 7, "{t}");
                    } else {
                        assert_eq!(rows.len(), 3, "{t}");
                        assert!(rows.iter().all(|r| !r.v_e), "{t}");
                        assert_eq!(
                            rows.iter().map(|r| r.row).collect::<Vec<_>>(),
                            [1, 2, 3],
                            "{t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn standard_epis_refuse_degenerate_types() {
        assert!(standard_epis_c2(&TopType::new(0, true, 2).unwrap()).is_err());
        assert!(standard_epis_c2(&TopType::new(2, true, 0).unwrap()).is_err());
    }

    #[test]
    fn omega_on_moebius_band() {
        let t = TopType::new(1, false, 1).unwrap();
        let hom = omega_dd(&t).unwrap();
        assert!(hom.is_valid() && hom.is_surjective());
        let pres = hom.presentation();
        let k4 = hom.group();
        let d1 = pres.generator_index("d1").unwrap();
        let e1 = pres.generator_index("e1").unwrap();
        let c1 = pres.generator_index("c1").unwrap();
        assert_eq!(hom.image_of(d1), k4.element_by_name("t").unwrap());
        assert_eq!(hom.image_of(e1), 0);
        assert_eq!(hom.image_of(c1), k4.element_by_name("s").unwrap());
        // Refusals.
        assert!(omega_dd(&TopType::new(1, true, 1).unwrap()).is_err());
        assert!(omega_dd(&TopType::new(2, false, 0).unwrap()).is_err());
    }

    #[test]
    fn omega_word_components_track_parities() {
        let t = TopType::new(2, false, 3).unwrap();
        let hom = omega_dd(&t).unwrap();
        let pres = hom.presentation().clone();
        let k4 = hom.group().clone();
        // A deterministic batch of words over the generators.
        let n = pres.generators().len();
        let mut seed = 0x9e3779b97f4a7c15u64;
        for _ in 0..200 {
            let mut word = Vec::new();
            for _ in 0..12 {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let gen = (seed >> 33) as usize % n;
                let inv = (seed >> 7) & 1 == 1;
                word.push(crate::presentation::Letter { gen, inv });
            }
            let (s_part, t_part) = klein_four_components(&k4, hom.evaluate(&word));
            let refl = pres.reflection_parity(&word);
            let rev = pres.word_reverses(&word);
            assert_eq!(s_part, refl);
            assert_eq!(t_part, rev != refl);
        }
    }

    #[test]
    fn non_surjective_images_are_detected() {
        // An omega-like map on a closed genus-2 type has no reflections or
        // boundary generators, so its image is a proper subgroup.
        let sig = NecSignature::parse("(2;-;[-];{-})").unwrap();
        let pres = canonical_presentation(&sig);
        let k4 = klein_four();
        let tt = k4.element_by_name("t").unwrap();
        let hom = GroupHom::new(pres, k4, alloc::vec![tt, tt]).unwrap();
        assert!(hom.is_valid());
        assert!(!hom.is_surjective());
    }
}
