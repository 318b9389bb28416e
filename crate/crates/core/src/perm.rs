//! A minimal finite permutation-group engine: fully enumerated small
//! groups, named elements, subgroup closure, and right-coset actions.
//!
//! Composition is left-to-right throughout: `(a * b)(x) = b(a(x))`, so a
//! word `st` means "apply `s`, then `t`". Coset actions are right actions
//! on right cosets, `act(Hq, u) = Hqu`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { map: (0..n).collect() }
    }

    pub fn from_map(map: Vec<usize>) -> Result<Perm, Error> {
        let n = map.len();
        let mut seen = alloc::vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return Err(Error::domain("permutation table is not a bijection"));
            }
            seen[i] = true;
        }
        Ok(Perm { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { map: self.map.iter().map(|&i| other.map[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = alloc::vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Perm { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle lengths of the permutation, covering fixed points too.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.map.len();
        let mut seen = alloc::vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.map[p];
            }
            lengths.push(len);
        }
        lengths
    }
}

/// A finite group of permutations, fully enumerated, with a name for every
/// element (shortest product of generator names, breadth-first) and a list
/// of named generators.
#[derive(Debug, Clone)]
pub struct FinGroup {
    elems: Vec<Perm>,
    names: Vec<String>,
    index: BTreeMap<Perm, usize>,
    gens: Vec<(String, usize)>,
    inv: Vec<usize>,
}

impl FinGroup {
    /// Close the given named generators into a full group.
    pub fn from_generators(
        degree: usize,
        generators: Vec<(String, Perm)>,
    ) -> Result<FinGroup, Error> {
        for (name, p) in &generators {
            if p.degree() != degree {
                return Err(Error::domain(format!(
                    "generator `{name}` acts on {} points, expected {degree}",
                    p.degree()
                )));
            }
        }
        let mut elems = alloc::vec![Perm::identity(degree)];
        let mut names = alloc::vec![String::from("1")];
        let mut index: BTreeMap<Perm, usize> = BTreeMap::new();
        index.insert(elems[0].clone(), 0);
        // Breadth-first closure so element names are shortest products.
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(0usize);
        while let Some(i) = queue.pop_front() {
            for (gname, gperm) in &generators {
                let p = elems[i].compose(gperm);
                if !index.contains_key(&p) {
                    let name =
                        if i == 0 { gname.clone() } else { format!("{}{}", names[i], gname) };
                    index.insert(p.clone(), elems.len());
                    names.push(name);
                    elems.push(p);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let gens = generators
            .into_iter()
            .map(|(name, p)| {
                let id = index[&p];
                (name, id)
            })
            .collect();
        let inv = elems.iter().map(|p| index[&p.inverse()]).collect();
        Ok(FinGroup { elems, names, index, gens, inv })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elems[a].compose(&self.elems[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn perm(&self, a: usize) -> &Perm {
        &self.elems[a]
    }

    /// The element id acting as the given permutation, if it is in the
    /// group.
    pub fn element_index(&self, perm: &Perm) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.gens
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut n = 1;
        let mut p = a;
        while p != 0 {
            p = self.mul(p, a);
            n += 1;
        }
        n
    }

    /// Resolve an element name: `"1"` is the identity; otherwise the name
    /// is read as a product of generator names (longest generator name
    /// first), so `"st"`, `"tst"`, `"ttt"` all work even when the
    /// breadth-first table stored another spelling.
    pub fn element_by_name(&self, name: &str) -> Result<usize, Error> {
        let text = name.trim();
        if text == "1" {
            return Ok(0);
        }
        if let Some(i) = self.names.iter().position(|n| n == text) {
            return Ok(i);
        }
        let mut by_len: Vec<&(String, usize)> = self.gens.iter().collect();
        by_len.sort_by_key(|g| core::cmp::Reverse(g.0.len()));
        let mut elem = 0usize;
        let mut rest = text;
        'outer: while !rest.is_empty() {
            for (gname, gid) in &by_len {
                if let Some(tail) = rest.strip_prefix(gname.as_str()) {
                    elem = self.mul(elem, *gid);
                    rest = tail;
                    continue 'outer;
                }
            }
            return Err(Error::UnknownName(format!("group element `{name}`")));
        }
        Ok(elem)
    }

    /// Closure of a set of elements: the subgroup they generate, as a
    /// sorted list of element ids.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.order()];
        seen[0] = true;
        let mut members = alloc::vec![0usize];
        let mut queue: Vec<usize> = alloc::vec![0];
        while let Some(e) = queue.pop() {
            for &g in gens {
                let p = self.mul(e, g);
                if !seen[p] {
                    seen[p] = true;
                    members.push(p);
                    queue.push(p);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// The full element-id list (the improper subgroup).
    pub fn all_elements(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
}

/// Right cosets `Hq` of a subgroup, with the right action of the group on
/// them: `act(Hq, u) = Hqu`. Coset 0 is `H` itself.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    n_cosets: usize,
    coset_of: Vec<usize>,
    reps: Vec<usize>,
    act_table: Vec<Vec<usize>>,
}

impl CosetSpace {
    pub fn new(group: &FinGroup, subgroup: &[usize]) -> Result<CosetSpace, Error> {
        let closure = group.generated_subgroup(subgroup);
        if closure.len() != subgroup.len() {
            return Err(Error::domain("subgroup list is not closed under products"));
        }
        let order = group.order();
        let mut coset_of = alloc::vec![usize::MAX; order];
        let mut reps = Vec::new();
        for e in 0..order {
            if coset_of[e] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(e);
            for &h in &closure {
                coset_of[group.mul(h, e)] = c;
            }
        }
        let n_cosets = reps.len();
        let act_table = (0..n_cosets)
            .map(|c| (0..order).map(|u| coset_of[group.mul(reps[c], u)]).collect())
            .collect();
        Ok(CosetSpace { n_cosets, coset_of, reps, act_table })
    }

    pub fn count(&self) -> usize {
        self.n_cosets
    }

    pub fn coset_of(&self, elem: usize) -> usize {
        self.coset_of[elem]
    }

    pub fn rep(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    pub fn act(&self, coset: usize, elem: usize) -> usize {
        self.act_table[coset][elem]
    }

    /// The action of one element as a permutation of the cosets.
    pub fn action_perm(&self, elem: usize) -> Perm {
        Perm::from_map((0..self.n_cosets).map(|c| self.act(c, elem)).collect())
            .expect("a group element acts bijectively on cosets")
    }
}

/// The one-element group.
pub fn trivial() -> FinGroup {
    FinGroup::from_generators(1, Vec::new()).unwrap()
}

/// Cyclic group of order `n` with generator `t` (trivial when `n = 1`).
pub fn cyclic(n: usize) -> Result<FinGroup, Error> {
    if n == 0 {
        return Err(Error::domain("cyclic group order must be at least 1"));
    }
    if n == 1 {
        return FinGroup::from_generators(1, alloc::vec![(String::from("t"), Perm::identity(1))]);
    }
    let t = Perm::from_map((0..n).map(|i| (i + 1) % n).collect())?;
    FinGroup::from_generators(n, alloc::vec![(String::from("t"), t)])
}

/// Klein four-group with commuting involutions `s = (0 1)` and `t = (2 3)`.
pub fn klein_four() -> FinGroup {
    let s = Perm::from_map(alloc::vec![1, 0, 2, 3]).unwrap();
    let t = Perm::from_map(alloc::vec![0, 1, 3, 2]).unwrap();
    FinGroup::from_generators(4, alloc::vec![(String::from("s"), s), (String::from("t"), t)])
        .unwrap()
}

/// Dihedral group of order `2n` generated by two reflections `s`, `t`
/// whose product has order `n`. For `n = 1` this is the order-2 group with
/// `s = t`; `n = 2` is the Klein four-group.
pub fn dihedral(n: usize) -> Result<FinGroup, Error> {
    match n {
        0 => Err(Error::domain("dihedral parameter must be at least 1")),
        1 => {
            let s = Perm::from_map(alloc::vec![1, 0])?;
            FinGroup::from_generators(
                2,
                alloc::vec![(String::from("s"), s.clone()), (String::from("t"), s)],
            )
        }
        2 => Ok(klein_four()),
        _ => {
            let s = Perm::from_map((0..n).map(|i| (n - i) % n).collect())?;
            let t = Perm::from_map((0..n).map(|i| (n + 1 - i) % n).collect())?;
            FinGroup::from_generators(
                n,
                alloc::vec![(String::from("s"), s), (String::from("t"), t)],
            )
        }
    }
}

/// Direct product acting on the disjoint union of the factors' points.
/// Generator names are prefixed `a:`/`b:` to stay unambiguous.
/// The block-diagonal permutation acting as `a` on the first block of
/// points and as `b` on the rest — the embedding used by
/// [`direct_product`].
pub fn direct_sum(a: &Perm, b: &Perm) -> Perm {
    let da = a.degree();
    let mut map: Vec<usize> = (0..da).map(|i| a.apply(i)).collect();
    map.extend((0..b.degree()).map(|i| da + b.apply(i)));
    Perm::from_map(map).expect("block sum of permutations is a permutation")
}

pub fn direct_product(a: &FinGroup, b: &FinGroup) -> FinGroup {
    let da = a.perm(0).degree();
    let db = b.perm(0).degree();
    let mut gens: Vec<(String, Perm)> = Vec::new();
    for (name, id) in a.generators() {
        let pa = a.perm(*id);
        let mut map: Vec<usize> = (0..da).map(|i| pa.apply(i)).collect();
        map.extend(da..da + db);
        gens.push((format!("a:{name}"), Perm::from_map(map).unwrap()));
    }
    for (name, id) in b.generators() {
        let pb = b.perm(*id);
        let mut map: Vec<usize> = (0..da).collect();
        map.extend((0..db).map(|i| da + pb.apply(i)));
        gens.push((format!("b:{name}"), Perm::from_map(map).unwrap()));
    }
    FinGroup::from_generators(da + db, gens).unwrap()
}

/// Parse a group name: `c<N>` (cyclic), `d<N>` (dihedral), `klein4`, or
/// `trivial`/`c1`.
pub fn named_group(spec: &str) -> Result<FinGroup, Error> {
    let text = spec.trim().to_ascii_lowercase();
    if text == "klein4" {
        return Ok(klein_four());
    }
    if text == "trivial" {
        return Ok(trivial());
    }
    if let Some(n) = text.strip_prefix('c').and_then(|t| t.parse::<usize>().ok()) {
        return cyclic(n);
    }
    if let Some(n) = text.strip_prefix('d').and_then(|t| t.parse::<usize>().ok()) {
        return dihedral(n);
    }
    Err(Error::UnknownName(format!("group `{spec}` (expected c<N>, d<N>, klein4, or trivial)")))
}
