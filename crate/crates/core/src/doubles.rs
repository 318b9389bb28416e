//! Closed-form classification of the index-two doubles of a bordered Klein
//! surface: one record per standard epimorphism onto the order-two group,
//! with the double's boundary count, orientability and genus, plus the
//! three named doubles (complex, orienting, Schottky) and the type of the
//! double of doubles. Everything here is arithmetic on the topological
//! type; the covering engine provides the independent check.

use alloc::vec::Vec;

use crate::error::Error;
use crate::hom::{standard_epis_c2, StandardAssignment};
use crate::signature::TopType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleLabel {
    Complex,
    Orienting,
    Schottky,
    Plain,
}

impl DoubleLabel {
    pub fn name(&self) -> &'static str {
        match self {
            DoubleLabel::Complex => "complex",
            DoubleLabel::Orienting => "orienting",
            DoubleLabel::Schottky => "schottky",
            DoubleLabel::Plain => "plain",
        }
    }
}

/// One standard epimorphism together with the topology of its kernel
/// surface.
#[derive(Debug, Clone)]
pub struct DoubleRecord {
    /// Row number, 1-7.
    pub row: u8,
    pub assignment: StandardAssignment,
    /// Boundary components of the double.
    pub boundary: u32,
    pub orientable: bool,
    pub genus: u32,
    pub label: DoubleLabel,
    /// Always 1 for a standard epimorphism (the double is connected).
    pub components: u32,
}

impl DoubleRecord {
    pub fn top_type(&self) -> TopType {
        TopType::new(self.genus, self.orientable, self.boundary)
            .expect("classified doubles are valid surface types")
    }
}

/// Boundary components of the double, as a multiple of the base's boundary
/// count, indexed by row - 1.
const BOUNDARY_FACTOR: [i64; 7] = [0, 2, 0, 1, 1, 0, 0];
/// Orientability of the double over a non-orientable base, by row.
const ORIENTABLE_OVER_NONORIENTABLE: [bool; 7] = [true, true, false, false, false, false, false];
/// Orientability of the double over an orientable base, by row.
const ORIENTABLE_OVER_ORIENTABLE: [bool; 7] = [false, true, true, true, true, false, false];

/// Classify the kernel surface of every standard epimorphism of `t`
/// (seven when the boundary count is even, three when odd). The genus is
/// solved from doubling the Euler characteristic.
pub fn classify_standard_doubles(t: &TopType) -> Result<Vec<DoubleRecord>, Error> {
    let assignments = standard_epis_c2(t)?;
    let chi_double = 2 * t.euler_char();
    let k = i64::from(t.boundary());
    let mut records = Vec::new();
    for assignment in assignments {
        let idx = usize::from(assignment.row - 1);
        let boundary = BOUNDARY_FACTOR[idx] * k;
        let orientable = if t.orientable() {
            ORIENTABLE_OVER_ORIENTABLE[idx]
        } else {
            ORIENTABLE_OVER_NONORIENTABLE[idx]
        };
        let genus = if orientable {
            let twice_g = 2 - chi_double - boundary;
            if twice_g < 0 || twice_g % 2 != 0 {
                return Err(Error::Internal(alloc::format!(
                    "row {} double of {t} cannot be orientable with {boundary} boundary circles",
                    assignment.row
                )));
            }
            twice_g / 2
        } else {
            let g = 2 - chi_double - boundary;
            if g < 1 {
                return Err(Error::Internal(alloc::format!(
                    "row {} double of {t} cannot be non-orientable with {boundary} boundary circles",
                    assignment.row
                )));
            }
            g
        };
        let label = match (t.orientable(), assignment.row) {
            (false, 1) => DoubleLabel::Complex,
            (false, 2) => DoubleLabel::Orienting,
            (false, 3) => DoubleLabel::Schottky,
            (true, 3) => DoubleLabel::Complex,
            _ => DoubleLabel::Plain,
        };
        records.push(DoubleRecord {
            row: assignment.row,
            assignment,
            boundary: boundary as u32,
            orientable,
            genus: genus as u32,
            label,
            components: 1,
        });
    }
    Ok(records)
}

/// The complex double: a closed orientable surface whose genus is the
/// algebraic genus of the base. Only the sphere (algebraic genus -1) has
/// no connected complex double.
pub fn complex_double(t: &TopType) -> Result<TopType, Error> {
    let p = t.algebraic_genus();
    if p < 0 {
        return Err(Error::domain(
            "the sphere has algebraic genus -1 and no connected complex double",
        ));
    }
    TopType::new(p as u32, true, 0)
}

/// The orienting double and its component count: for a non-orientable base
/// of genus g with k boundary circles it is the connected orientable
/// surface of genus g-1 with 2k boundary circles (for k = 0 this coincides
/// with the complex double); an orientable base gives two copies of
/// itself.
pub fn orienting_double(t: &TopType) -> Result<(TopType, u32), Error> {
    if t.orientable() {
        Ok((*t, 2))
    } else {
        Ok((TopType::new(t.genus() - 1, true, 2 * t.boundary())?, 1))
    }
}

/// The Schottky double and its component count: for a non-orientable base
/// with boundary it is the closed non-orientable surface of genus
/// 2g+2k-2; without boundary it is two copies of the base; for an
/// orientable base it coincides with the complex double.
pub fn schottky_double(t: &TopType) -> Result<(TopType, u32), Error> {
    if t.orientable() {
        Ok((complex_double(t)?, 1))
    } else if t.boundary() == 0 {
        Ok((*t, 2))
    } else {
        Ok((TopType::new(2 * t.genus() + 2 * t.boundary() - 2, false, 0)?, 1))
    }
}

/// The double of doubles: the closed orientable surface of genus 2g+2k-3.
/// Defined for non-orientable bases with non-empty boundary only.
pub fn dd_type(t: &TopType) -> Result<TopType, Error> {
    if t.orientable() || t.boundary() == 0 {
        return Err(Error::domain(
            "the double of doubles needs a non-orientable surface with non-empty boundary",
        ));
    }
    TopType::new(2 * t.genus() + 2 * t.boundary() - 3, true, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{signatures_equal, subgroup_signature, CoverSpec};
    use crate::hom::assignment_to_hom;

    fn tt(genus: u32, orientable: bool, boundary: u32) -> TopType {
        TopType::new(genus, orientable, boundary).unwrap()
    }

    #[test]
    fn named_rows_of_an_odd_boundary_base() {
        let records = classify_standard_doubles(&tt(2, false, 3)).unwrap();
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].top_type(), tt(4, true, 0));
        assert_eq!(records[0].label, DoubleLabel::Complex);
        assert_eq!(records[1].top_type(), tt(1, true, 6));
        assert_eq!(records[1].label, DoubleLabel::Orienting);
        assert_eq!(records[2].top_type(), tt(8, false, 0));
        assert_eq!(records[2].label, DoubleLabel::Schottky);
    }

    #[test]
    fn seven_rows_with_engine_checked_row_four() {
        let base = tt(1, false, 2);
        let records = classify_standard_doubles(&base).unwrap();
        assert_eq!(records.len(), 7);
        let row4 = &records[3];
        assert_eq!(row4.row, 4);
        assert_eq!(row4.boundary, 2);
        assert!(!row4.orientable);
        // chi doubles: chi(base) = -1, so the double has chi = -2 and
        // non-orientable genus 2 - (-2) - 2 = 2. The engine arbitrates.
        let hom = assignment_to_hom(&base, &row4.assignment).unwrap();
        let spec = CoverSpec::new(hom, &[]).unwrap();
        let engine = subgroup_signature(&spec).unwrap();
        assert!(
            signatures_equal(&engine, &row4.top_type().signature()),
            "catalog {} vs engine {engine}",
            row4.top_type()
        );
        assert_eq!(row4.genus, 2);
    }

    #[test]
    fn doubles_double_the_euler_characteristic() {
        for g in 1..=4 {
            for k in 1..=4 {
                for orientable in [false, true] {
                    let base = tt(g, orientable, k);
                    for record in classify_standard_doubles(&base).unwrap() {
                        assert_eq!(
                            record.top_type().euler_char(),
                            2 * base.euler_char(),
                            "{base} row {}",
                            record.row
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn complex_label_is_the_unique_orientable_closed_row() {
        for g in 1..=4 {
            for k in 1..=4 {
                for orientable in [false, true] {
                    let records = classify_standard_doubles(&tt(g, orientable, k)).unwrap();
                    let complexes: Vec<_> =
                        records.iter().filter(|r| r.label == DoubleLabel::Complex).collect();
                    assert_eq!(complexes.len(), 1);
                    let closed_orientable: Vec<_> =
                        records.iter().filter(|r| r.boundary == 0 && r.orientable).collect();
                    assert_eq!(closed_orientable.len(), 1);
                    assert_eq!(complexes[0].row, closed_orientable[0].row);
                }
            }
        }
    }

    #[test]
    fn complex_double_genus_is_the_algebraic_genus() {
        assert_eq!(complex_double(&tt(1, false, 2)).unwrap(), tt(2, true, 0));
        assert_eq!(complex_double(&tt(1, false, 1)).unwrap(), tt(1, true, 0));
        assert_eq!(complex_double(&tt(0, true, 1)).unwrap(), tt(0, true, 0));
        assert!(complex_double(&tt(0, true, 0)).is_err());
        for g in 1..=4 {
            for k in 0..=4 {
                let base = tt(g, false, k);
                let double = complex_double(&base).unwrap();
                assert_eq!(i64::from(double.genus()), base.algebraic_genus());
            }
        }
    }

    #[test]
    fn orienting_double_cases() {
        assert_eq!(orienting_double(&tt(2, false, 3)).unwrap(), (tt(1, true, 6), 1));
        assert_eq!(orienting_double(&tt(2, true, 1)).unwrap(), (tt(2, true, 1), 2));
        // Closed non-orientable: coincides with the complex double.
        let (ox, n) = orienting_double(&tt(3, false, 0)).unwrap();
        assert_eq!((ox, n), (tt(2, true, 0), 1));
        assert_eq!(ox, complex_double(&tt(3, false, 0)).unwrap());
    }

    #[test]
    fn schottky_double_cases() {
        assert_eq!(schottky_double(&tt(1, false, 2)).unwrap(), (tt(4, false, 0), 1));
        assert_eq!(schottky_double(&tt(1, true, 2)).unwrap(), (tt(3, true, 0), 1));
        assert_eq!(schottky_double(&tt(2, false, 0)).unwrap(), (tt(2, false, 0), 2));
    }

    #[test]
    fn dd_type_cases() {
        assert_eq!(dd_type(&tt(1, false, 1)).unwrap(), tt(1, true, 0));
        assert_eq!(dd_type(&tt(1, false, 2)).unwrap(), tt(3, true, 0));
        assert_eq!(dd_type(&tt(3, false, 2)).unwrap(), tt(7, true, 0));
        assert!(dd_type(&tt(2, true, 1)).is_err());
        assert!(dd_type(&tt(2, false, 0)).is_err());
        // 2g+2k-3 = twice the algebraic genus minus one.
        for g in 1..=5 {
            for k in 1..=5 {
                let base = tt(g, false, k);
                let d = dd_type(&base).unwrap();
                assert_eq!(i64::from(d.genus()), 2 * base.algebraic_genus() - 1);
            }
        }
    }
}
