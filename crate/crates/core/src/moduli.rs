//! Type-level bookkeeping for non-orientable real curves: enumerate the
//! topological types of a given algebraic genus, push a type through the
//! doubling map ψ (whose image is the type of the double of doubles), and
//! certify that the image lies in the locus of closed orientable surfaces
//! carrying both a free orientation-preserving and a free
//! orientation-reversing involution. Everything here is discrete — types
//! and counts, nothing metric.

use alloc::format;
use alloc::vec::Vec;

use crate::doubles::dd_type;
use crate::error::Error;
use crate::signature::TopType;
use crate::tower::build_tower;

/// A non-orientable topological type (h;−;k) tagged with its algebraic
/// genus p = h + k − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealCurveType {
    top_type: TopType,
    algebraic_genus: i64,
}

impl RealCurveType {
    pub fn new(top_type: TopType) -> Result<RealCurveType, Error> {
        if top_type.orientable() {
            return Err(Error::domain(format!("expected a non-orientable type, got {top_type}")));
        }
        Ok(RealCurveType { top_type, algebraic_genus: top_type.algebraic_genus() })
    }

    pub fn top_type(&self) -> TopType {
        self.top_type
    }

    pub fn algebraic_genus(&self) -> i64 {
        self.algebraic_genus
    }
}

/// All non-orientable types (h;−;k) of algebraic genus p, i.e. with
/// h ≥ 1, k ≥ 0 and h + k − 1 = p; there are exactly p + 1 of them.
pub fn real_curve_types(p: i64) -> Result<Vec<RealCurveType>, Error> {
    if p < 1 {
        return Err(Error::domain(format!("algebraic genus must be at least 1, got {p}")));
    }
    let mut out = Vec::with_capacity(p as usize + 1);
    for h in 1..=(p + 1) {
        let k = p + 1 - h;
        let t = TopType::new(h as u32, false, k as u32)?;
        out.push(RealCurveType::new(t)?);
    }
    Ok(out)
}

/// The image of a bordered type under the doubling map: the type of its
/// double of doubles, a closed orientable surface of genus 2p − 1.
/// Closed types (k = 0) are refused — they have no boundary to double.
pub fn psi_image(t: &RealCurveType) -> Result<TopType, Error> {
    if t.top_type.boundary() == 0 {
        return Err(Error::domain(format!(
            "the doubling map needs a bordered type, got {}",
            t.top_type
        )));
    }
    dd_type(&t.top_type)
}

/// Evidence that the image of a type under the doubling map carries the
/// two free involutions that characterize the image locus.
#[derive(Debug, Clone, Copy)]
pub struct MembershipReport {
    pub curve: RealCurveType,
    pub dx: TopType,
    /// Quotient by the free orientation-preserving involution (by `st`).
    pub conformal_quotient: TopType,
    /// Quotient by the free orientation-reversing involution (by `t`).
    pub anticonformal_quotient: TopType,
}

/// Certify via the tower that the double of doubles of a bordered type
/// admits a free orientation-preserving involution (the `st`-quotient is
/// closed and orientable, with half the Euler characteristic) and a free
/// orientation-reversing involution (the `t`-quotient is closed and
/// non-orientable). A failed certificate is an implementation bug, not a
/// property of the input.
pub fn membership_check(t: &RealCurveType) -> Result<MembershipReport, Error> {
    if t.top_type.boundary() == 0 {
        return Err(Error::domain(format!(
            "membership concerns bordered types, got {}",
            t.top_type
        )));
    }
    let tower = build_tower(&t.top_type)?;
    let dx = tower.dx;
    let conformal = tower
        .quotient("st")
        .ok_or_else(|| Error::Internal("tower lost its st-quotient".into()))?
        .top_type;
    if conformal.boundary() != 0 || !conformal.orientable() {
        return Err(Error::Internal(format!(
            "st-quotient {conformal} of {dx} is not closed orientable"
        )));
    }
    if dx.euler_char() != 2 * conformal.euler_char() {
        return Err(Error::Internal(format!(
            "st-quotient {conformal} does not halve the Euler characteristic of {dx}"
        )));
    }
    let anticonformal = tower
        .quotient("t")
        .ok_or_else(|| Error::Internal("tower lost its t-quotient".into()))?
        .top_type;
    if anticonformal.boundary() != 0 || anticonformal.orientable() {
        return Err(Error::Internal(format!(
            "t-quotient {anticonformal} of {dx} is not closed non-orientable"
        )));
    }
    Ok(MembershipReport {
        curve: *t,
        dx,
        conformal_quotient: conformal,
        anticonformal_quotient: anticonformal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(genus: u32, orientable: bool, boundary: u32) -> TopType {
        TopType::new(genus, orientable, boundary).unwrap()
    }

    #[test]
    fn genus_one_types() {
        let types = real_curve_types(1).unwrap();
        let tops: Vec<TopType> = types.iter().map(|t| t.top_type()).collect();
        assert_eq!(tops, alloc::vec![tt(1, false, 1), tt(2, false, 0)]);
        assert!(types.iter().all(|t| t.algebraic_genus() == 1));
    }

    #[test]
    fn genus_two_types() {
        let tops: Vec<TopType> =
            real_curve_types(2).unwrap().iter().map(|t| t.top_type()).collect();
        assert_eq!(tops, alloc::vec![tt(1, false, 2), tt(2, false, 1), tt(3, false, 0)]);
    }

    #[test]
    fn type_counts_and_distinctness() {
        for p in 1..=10 {
            let types = real_curve_types(p).unwrap();
            assert_eq!(types.len(), (p + 1) as usize);
            for (i, a) in types.iter().enumerate() {
                for b in &types[i + 1..] {
                    assert_ne!(a.top_type(), b.top_type());
                }
                assert_eq!(a.algebraic_genus(), p);
            }
        }
        assert!(real_curve_types(0).is_err());
        assert!(real_curve_types(-3).is_err());
    }

    #[test]
    fn doubling_map_images() {
        let torus_like = RealCurveType::new(tt(1, false, 1)).unwrap();
        assert_eq!(psi_image(&torus_like).unwrap(), tt(1, true, 0));
        let genus_two = RealCurveType::new(tt(1, false, 2)).unwrap();
        assert_eq!(psi_image(&genus_two).unwrap(), tt(3, true, 0));
    }

    #[test]
    fn doubling_map_lands_in_genus_two_p_minus_one() {
        for p in 1..=10 {
            for t in real_curve_types(p).unwrap() {
                if t.top_type().boundary() == 0 {
                    assert!(psi_image(&t).is_err());
                } else {
                    let image = psi_image(&t).unwrap();
                    assert!(image.orientable());
                    assert_eq!(image.boundary(), 0);
                    assert_eq!(i64::from(image.genus()), 2 * p - 1);
                }
            }
        }
    }

    #[test]
    fn rejects_orientable_types() {
        assert!(RealCurveType::new(tt(1, true, 1)).is_err());
    }

    #[test]
    fn membership_certificates() {
        let t = RealCurveType::new(tt(1, false, 1)).unwrap();
        let report = membership_check(&t).unwrap();
        assert_eq!(report.dx, tt(1, true, 0));
        assert_eq!(report.conformal_quotient, tt(1, true, 0));
        assert_eq!(report.anticonformal_quotient, tt(2, false, 0));

        for p in 1..=5 {
            for t in real_curve_types(p).unwrap() {
                if t.top_type().boundary() == 0 {
                    assert!(membership_check(&t).is_err());
                    continue;
                }
                let report = membership_check(&t).unwrap();
                assert_eq!(report.dx, psi_image(&t).unwrap());
            }
        }
    }
}
