//! The covering engine: build the surface determined by a finite-index
//! subgroup explicitly, as polygon copies indexed by right cosets, then
//! read its topology back off the glued complex.
//!
//! Faces are right cosets `Hq`. For a pairing generator `g` carrying side
//! `s'` onto side `s`, the `s'`-slot of face `w` is glued to the `s`-slot
//! of face `act(w, theta(g))`. A mirror side fixed by reflection `c` stays
//! boundary on face `w` exactly when `act(w, theta(c)) = w`; otherwise it
//! is glued to the same side of the partner face. Endpoints are identified
//! crosswise (start-to-end) for orientation-preserving generators and
//! straight (start-to-start) for orientation-reversing ones.
//!
//! From the glued complex: components by union-find over faces; vertices
//! as corner classes; `chi = V - E + F`; orientability as the solvability
//! of a face-sign assignment (equal signs across preserving gluings,
//! opposite across reversing ones); boundary circles by walking unglued
//! slots through shared corner classes; cone points and corner orders from
//! the sizes of apex and dihedral corner classes. Every analysis
//! cross-checks the orbifold Euler characteristic against the base times
//! the index and reports an internal error on any mismatch.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::hom::GroupHom;
use crate::perm::CosetSpace;
use crate::presentation::{CornerKind, Polygon, SideRole};
use crate::signature::{NecSignature, Rational, Sign};

#[derive(Debug, Clone)]
pub struct CoverSpec {
    hom: GroupHom,
    subgroup: Vec<usize>,
}

impl CoverSpec {
    /// A validated homomorphism plus a subgroup of its codomain, given by
    /// any generating set of element ids (closed up automatically).
    pub fn new(hom: GroupHom, subgroup_gens: &[usize]) -> Result<CoverSpec, Error> {
        hom.validate()?;
        let subgroup = hom.group().generated_subgroup(subgroup_gens);
        Ok(CoverSpec { hom, subgroup })
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn base(&self) -> &NecSignature {
        self.hom.presentation().signature()
    }
}

/// Polygon copies glued along coset-translated side pairings.
#[derive(Debug, Clone)]
pub struct GluedComplex {
    polygon: Polygon,
    n_faces: usize,
    n_sides: usize,
    /// Per slot (`face * n_sides + side`): the partner slot, or `None` for
    /// a boundary slot (a mirror side whose reflection fixes the coset).
    glue: Vec<Option<usize>>,
    cosets: CosetSpace,
}

impl GluedComplex {
    pub fn face_count(&self) -> usize {
        self.n_faces
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn glue(&self) -> &[Option<usize>] {
        &self.glue
    }

    fn face_of(&self, slot: usize) -> usize {
        slot / self.n_sides
    }

    fn side_of(&self, slot: usize) -> usize {
        slot % self.n_sides
    }
}

pub fn build_cover(spec: &CoverSpec) -> Result<GluedComplex, Error> {
    let pres = spec.hom.presentation();
    let polygon = pres.polygon();
    let cosets = CosetSpace::new(spec.hom.group(), &spec.subgroup)?;
    let n_faces = cosets.count();
    let n_sides = polygon.side_count();
    let mut glue: Vec<Option<usize>> = alloc::vec![None; n_faces * n_sides];
    let mut assigned = alloc::vec![false; n_faces * n_sides];
    let pairings = polygon.pairings();
    let mirrors = polygon.mirrors();

    fn set(
        slot: usize,
        value: Option<usize>,
        assigned: &mut [bool],
        glue: &mut [Option<usize>],
    ) -> Result<(), Error> {
        if assigned[slot] && glue[slot] != value {
            return Err(Error::Internal(format!(
                "slot {slot} glued inconsistently ({:?} vs {value:?})",
                glue[slot]
            )));
        }
        glue[slot] = value;
        assigned[slot] = true;
        Ok(())
    }

    for face in 0..n_faces {
        for &(src, tgt, gen) in &pairings {
            let partner = cosets.act(face, spec.hom.image_of(gen));
            let a = face * n_sides + src;
            let b = partner * n_sides + tgt;
            set(a, Some(b), &mut assigned, &mut glue)?;
            set(b, Some(a), &mut assigned, &mut glue)?;
        }
        for &(side, gen) in &mirrors {
            let partner = cosets.act(face, spec.hom.image_of(gen));
            let a = face * n_sides + side;
            if partner == face {
                set(a, None, &mut assigned, &mut glue)?;
            } else {
                set(a, Some(partner * n_sides + side), &mut assigned, &mut glue)?;
            }
        }
    }
    for slot in 0..n_faces * n_sides {
        if !assigned[slot] {
            return Err(Error::Internal(format!("slot {slot} never assigned")));
        }
        if let Some(p) = glue[slot] {
            if p == slot || glue[p] != Some(slot) {
                return Err(Error::Internal(format!(
                    "gluing is not a fixed-point-free involution at slot {slot}"
                )));
            }
        }
    }
    Ok(GluedComplex { polygon, n_faces, n_sides, glue, cosets })
}

/// Union-find with an optional sign constraint between merged items.
struct ParityDsu {
    parent: Vec<usize>,
    /// Parity of the path to the parent.
    parity: Vec<bool>,
    /// Whether the component rooted here has an unsatisfiable constraint.
    conflict: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> ParityDsu {
        ParityDsu {
            parent: (0..n).collect(),
            parity: alloc::vec![false; n],
            conflict: alloc::vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        let total = self.parity[x] ^ p;
        self.parent[x] = root;
        self.parity[x] = total;
        (root, total)
    }

    /// Merge with the constraint `sign(a) xor sign(b) = flip`.
    fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != flip {
                self.conflict[ra] = true;
            }
            return;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ flip;
        self.conflict[ra] = self.conflict[ra] || self.conflict[rb];
    }
}

/// Plain union-find.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            return x;
        }
        let root = self.find(self.parent[x]);
        self.parent[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

/// Everything the engine can say about one cover.
#[derive(Debug, Clone)]
pub struct CoverReport {
    /// Number of sheets (cosets).
    pub index: usize,
    pub components: usize,
    /// Topological Euler characteristic of the whole cover (sum over
    /// components).
    pub euler_char: i64,
    /// True when every component is orientable.
    pub orientable: bool,
    /// Boundary circles: for each, its corner orders in traversal order
    /// (smooth corners omitted; an empty list is a pure boundary circle).
    pub boundary: Vec<Vec<u32>>,
    /// Orders of all cone points, ascending.
    pub cone_points: Vec<u32>,
    /// True when there are no cone points and no boundary corner of order
    /// above 1 — i.e. the subgroup is a (possibly bordered) surface group.
    pub is_surface_group: bool,
    /// The recovered signature when the cover is connected.
    pub signature: Option<NecSignature>,
    /// One signature per component, in component order.
    pub component_signatures: Vec<NecSignature>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Endpoint {
    Start,
    End,
}

pub fn analyze(complex: &GluedComplex, spec: &CoverSpec) -> Result<CoverReport, Error> {
    let n_faces = complex.n_faces;
    let n_sides = complex.n_sides;
    let pres = spec.hom.presentation();
    let polygon = &complex.polygon;

    // Face components with orientability parities, and corner classes.
    let mut faces = ParityDsu::new(n_faces);
    let mut corners = Dsu::new(n_faces * n_sides);
    let corner_at = |face: usize, idx: usize| face * n_sides + idx;
    let endpoint_corner = |slot: usize, ep: Endpoint| {
        let (f, s) = (slot / n_sides, slot % n_sides);
        match ep {
            Endpoint::Start => corner_at(f, s),
            Endpoint::End => corner_at(f, (s + 1) % n_sides),
        }
    };

    for slot in 0..n_faces * n_sides {
        let Some(partner) = complex.glue[slot] else { continue };
        if partner < slot {
            continue; // each glued pair once
        }
        let gen = polygon.sides[complex.side_of(slot)].gen;
        let reversing = pres.reverses(gen);
        faces.union(complex.face_of(slot), complex.face_of(partner), reversing);
        let (sa, ea) =
            (endpoint_corner(slot, Endpoint::Start), endpoint_corner(slot, Endpoint::End));
        let (sb, eb) =
            (endpoint_corner(partner, Endpoint::Start), endpoint_corner(partner, Endpoint::End));
        if reversing {
            corners.union(sa, sb);
            corners.union(ea, eb);
        } else {
            corners.union(sa, eb);
            corners.union(ea, sb);
        }
    }

    // Component ids in order of least face.
    let mut comp_of_face = alloc::vec![usize::MAX; n_faces];
    let mut comp_roots: Vec<usize> = Vec::new();
    for (f, slot) in comp_of_face.iter_mut().enumerate() {
        let (root, _) = faces.find(f);
        let comp = match comp_roots.iter().position(|&r| r == root) {
            Some(i) => i,
            None => {
                comp_roots.push(root);
                comp_roots.len() - 1
            }
        };
        *slot = comp;
    }
    let n_comps = comp_roots.len();
    let comp_orientable: Vec<bool> = comp_roots.iter().map(|&r| !faces.conflict[r]).collect();

    // Corner classes.
    struct ClassInfo {
        kind: CornerKind,
        size: usize,
        comp: usize,
        incidences: Vec<(usize, Endpoint)>,
    }
    let mut classes: BTreeMap<usize, ClassInfo> = BTreeMap::new();
    for corner in 0..n_faces * n_sides {
        let (face, idx) = (corner / n_sides, corner % n_sides);
        let root = corners.find(corner);
        let kind = polygon.corners[idx];
        let entry = classes.entry(root).or_insert(ClassInfo {
            kind,
            size: 0,
            comp: comp_of_face[face],
            incidences: Vec::new(),
        });
        if entry.kind != kind || entry.comp != comp_of_face[face] {
            return Err(Error::Internal(format!(
                "corner class at {corner} mixes corner kinds or components"
            )));
        }
        entry.size += 1;
        // Incidences with unglued slots make this a boundary class.
        let prev_slot = face * n_sides + (idx + n_sides - 1) % n_sides;
        let this_slot = face * n_sides + idx;
        if complex.glue[prev_slot].is_none() {
            entry.incidences.push((prev_slot, Endpoint::End));
        }
        if complex.glue[this_slot].is_none() {
            entry.incidences.push((this_slot, Endpoint::Start));
        }
    }

    // Tallies per component.
    let mut v = alloc::vec![0i64; n_comps];
    let mut e = alloc::vec![0i64; n_comps];
    let mut f_count = alloc::vec![0i64; n_comps];
    let mut chi_bonus = alloc::vec![0i64; n_comps];
    let mut cones: Vec<Vec<u32>> = alloc::vec![Vec::new(); n_comps];
    // Boundary corner order per boundary class root (order 1 = smooth).
    let mut class_order: BTreeMap<usize, u32> = BTreeMap::new();
    // Incidence pairs per boundary class root.
    let mut class_exits: BTreeMap<usize, Vec<(usize, Endpoint)>> = BTreeMap::new();

    for face in 0..n_faces {
        f_count[comp_of_face[face]] += 1;
        if n_sides == 0 {
            // A 0-gon face is a sphere: V - E + F alone undercounts by one
            // missing vertex.
            chi_bonus[comp_of_face[face]] += 1;
        }
    }
    for slot in 0..n_faces * n_sides {
        match complex.glue[slot] {
            None => e[comp_of_face[complex.face_of(slot)]] += 1,
            Some(p) if p > slot => e[comp_of_face[complex.face_of(slot)]] += 1,
            Some(_) => {}
        }
    }

    for (&root, info) in &classes {
        v[info.comp] += 1;
        let boundary_class = !info.incidences.is_empty();
        if boundary_class && info.incidences.len() != 2 {
            return Err(Error::Internal(format!(
                "boundary corner class {root} has {} free slot ends, expected 2",
                info.incidences.len()
            )));
        }
        match (info.kind, boundary_class) {
            (CornerKind::Plain, _) => {}
            (CornerKind::Apex { order }, false) => {
                let l = info.size as u32;
                if order % l != 0 {
                    return Err(Error::Internal(format!(
                        "apex class of size {l} does not divide elliptic order {order}"
                    )));
                }
                if order / l > 1 {
                    cones[info.comp].push(order / l);
                }
            }
            (CornerKind::Apex { .. }, true) => {
                return Err(Error::Internal(String::from(
                    "apex corner class reached the boundary",
                )));
            }
            (CornerKind::Dihedral { order }, false) => {
                let c = info.size as u32;
                if (2 * order) % c != 0 {
                    return Err(Error::Internal(format!(
                        "interior dihedral class of size {c} incompatible with link period {order}"
                    )));
                }
                if 2 * order / c > 1 {
                    cones[info.comp].push(2 * order / c);
                }
            }
            (CornerKind::Dihedral { order }, true) => {
                let c = info.size as u32;
                if order % c != 0 {
                    return Err(Error::Internal(format!(
                        "boundary dihedral class of size {c} incompatible with link period {order}"
                    )));
                }
                class_order.insert(root, order / c);
            }
        }
        if boundary_class {
            class_exits.insert(root, info.incidences.clone());
        }
    }

    // Trace boundary circles.
    let mut circles: Vec<(usize, Vec<u32>)> = Vec::new(); // (component, orders)
    let mut visited_slot = alloc::vec![false; n_faces * n_sides];
    for slot in 0..n_faces * n_sides {
        if complex.glue[slot].is_some() || visited_slot[slot] {
            continue;
        }
        let comp = comp_of_face[complex.face_of(slot)];
        let mut orders: Vec<u32> = Vec::new();
        let start = (slot, Endpoint::Start);
        let mut cur = start;
        loop {
            visited_slot[cur.0] = true;
            let exit_ep = match cur.1 {
                Endpoint::Start => Endpoint::End,
                Endpoint::End => Endpoint::Start,
            };
            let exit_corner = endpoint_corner(cur.0, exit_ep);
            let root = corners.find(exit_corner);
            if let Some(&q) = class_order.get(&root) {
                if q > 1 {
                    orders.push(q);
                }
            }
            let exits = class_exits.get(&root).ok_or_else(|| {
                Error::Internal(format!("boundary walk reached interior class {root}"))
            })?;
            let &(next_slot, next_ep) =
                exits.iter().find(|&&(s, ep)| !(s == cur.0 && ep == exit_ep)).ok_or_else(|| {
                    Error::Internal(String::from("boundary class lacks a continuation"))
                })?;
            cur = (next_slot, next_ep);
            if cur == start {
                break;
            }
        }
        circles.push((comp, orders));
    }

    // Assemble per-component signatures.
    let mut component_signatures: Vec<NecSignature> = Vec::new();
    let mut total_chi = 0i64;
    for comp in 0..n_comps {
        let chi = v[comp] - e[comp] + f_count[comp] + chi_bonus[comp];
        total_chi += chi;
        let b = circles.iter().filter(|(c, _)| *c == comp).count() as i64;
        let cycles: Vec<Vec<u32>> =
            circles.iter().filter(|(c, _)| *c == comp).map(|(_, o)| o.clone()).collect();
        let genus;
        let sign;
        if comp_orientable[comp] {
            let twice_g = 2 - chi - b;
            if twice_g < 0 || twice_g % 2 != 0 {
                return Err(Error::Internal(format!(
                    "orientable component with chi {chi} and {b} boundary circles"
                )));
            }
            genus = (twice_g / 2) as u32;
            sign = Sign::Plus;
        } else {
            let g = 2 - chi - b;
            if g < 1 {
                return Err(Error::Internal(format!(
                    "non-orientable component with chi {chi} and {b} boundary circles"
                )));
            }
            genus = g as u32;
            sign = Sign::Minus;
        }
        let sig = NecSignature::new(genus, sign, cones[comp].clone(), cycles)
            .map_err(|err| Error::Internal(format!("recovered signature invalid: {err}")))?;
        component_signatures.push(sig);
    }

    // Orbifold Euler characteristic must multiply by the index.
    let mut orb = Rational::from_integer(total_chi);
    for comp_cones in &cones {
        for &m in comp_cones {
            orb -= Rational::new(i64::from(m) - 1, i64::from(m));
        }
    }
    for (_, orders) in &circles {
        for &n in orders {
            orb -= Rational::new(i64::from(n) - 1, 2 * i64::from(n));
        }
    }
    let expected = Rational::from_integer(n_faces as i64) * spec.base().euler_char_orb();
    if orb != expected {
        return Err(Error::Internal(format!(
            "orbifold Euler characteristic {orb} differs from index * base = {expected}"
        )));
    }

    let mut cone_points: Vec<u32> = cones.iter().flatten().copied().collect();
    cone_points.sort_unstable();
    let boundary: Vec<Vec<u32>> = circles.iter().map(|(_, o)| o.clone()).collect();
    let is_surface_group = cone_points.is_empty() && boundary.iter().all(|o| o.is_empty());
    let signature = if n_comps == 1 { Some(component_signatures[0].clone()) } else { None };
    Ok(CoverReport {
        index: n_faces,
        components: n_comps,
        euler_char: total_chi,
        orientable: comp_orientable.iter().all(|&o| o),
        boundary,
        cone_points,
        is_surface_group,
        signature,
        component_signatures,
    })
}

/// Build and analyze in one step.
pub fn cover_report(spec: &CoverSpec) -> Result<CoverReport, Error> {
    analyze(&build_cover(spec)?, spec)
}

/// The signature of the subgroup when the cover is connected.
pub fn subgroup_signature(spec: &CoverSpec) -> Result<NecSignature, Error> {
    let report = cover_report(spec)?;
    report.signature.ok_or_else(|| {
        let parts: Vec<String> =
            report.component_signatures.iter().map(|s| format!("{s}")).collect();
        Error::domain(format!("cover is disconnected; component signatures: {}", parts.join(", ")))
    })
}

/// Signature equality up to period sorting and rotation/reversal of each
/// period cycle (with cycle lists compared as multisets).
pub fn signatures_equal(a: &NecSignature, b: &NecSignature) -> bool {
    a.normalized() == b.normalized()
}

/// Number of connected components after cutting every gluing made by a
/// reflection generator (the fixed curves of the mirror involution).
pub fn components_cut_along_mirrors(complex: &GluedComplex) -> usize {
    let mut dsu = Dsu::new(complex.n_faces);
    for slot in 0..complex.n_faces * complex.n_sides {
        let Some(partner) = complex.glue[slot] else { continue };
        if partner < slot {
            continue;
        }
        if complex.polygon.sides[complex.side_of(slot)].role == SideRole::Mirror {
            continue;
        }
        dsu.union(complex.face_of(slot), complex.face_of(partner));
    }
    let mut roots: Vec<usize> = (0..complex.n_faces).map(|f| dsu.find(f)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}
