//! Klein surfaces from the group side: canonical presentations attached to
//! signatures, finite permutation quotients, and an explicit covering
//! engine that recovers the topology of any finite-index subgroup by
//! gluing polygon copies indexed by cosets. On top of that sit the
//! classification of the standard order-two doubles (complex, orienting,
//! Schottky), the double-of-doubles tower with its three intermediate
//! quotients, and the real-curve bookkeeping that the tower induces.
//!
//! The crate is `no_std` (with `alloc`); IO and the command-line front end
//! live in the companion binary crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod cover;
mod doubles;
mod error;
mod hom;
mod moduli;
mod perm;
mod presentation;
mod signature;
mod tower;

pub use cover::{
    analyze, build_cover, components_cut_along_mirrors, cover_report, signatures_equal,
    subgroup_signature, CoverReport, CoverSpec, GluedComplex,
};
pub use doubles::{
    classify_standard_doubles, complex_double, dd_type, orienting_double, schottky_double,
    DoubleLabel, DoubleRecord,
};
pub use error::{Error, ParseError};
pub use hom::{
    assignment_to_hom, klein_four_components, omega_dd, standard_epis_c2, GroupHom,
    StandardAssignment, STANDARD_ROWS,
};
pub use moduli::{membership_check, psi_image, real_curve_types, MembershipReport, RealCurveType};
pub use perm::{
    cyclic, dihedral, direct_product, direct_sum, klein_four, named_group, trivial, CosetSpace,
    FinGroup, Perm,
};
pub use presentation::{
    canonical_presentation, free_reduce, CornerKind, GenKind, Generator, Letter, Polygon,
    Presentation, Side, SideRole, Word,
};
pub use signature::{parse_top_type, NecSignature, Rational, Sign, TopType};
pub use tower::{
    build_tower, dd_monodromy, lifting_kernel_type, theta_prime, QuotientLabel, TowerQuotient,
    TowerReport,
};
