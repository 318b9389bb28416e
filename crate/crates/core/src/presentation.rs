//! Canonical presentations of NEC groups and their fundamental polygons.
//!
//! A signature `(g; ±; [m1..mr]; {(n11..), ..})` determines a group with
//! generators
//!
//! * `x1..xr` — elliptic generators, one per proper period,
//! * per period cycle `i`: a boundary generator `ei` and reflections
//!   `ci.0..ci.s` (a single reflection named `ci` when the cycle is empty),
//! * `a1,b1,..` (sign `+`) or `d1..dg` (sign `-`) — handle or glide
//!   generators,
//!
//! and relators
//!
//! * `xi^mi`,
//! * `cij^2` and `(ci,j-1 cij)^nij`,
//! * `ei ci0 ei^-1 = ci,si`,
//! * the long relator `x1..xr e1..ek [a1,b1]..[ag,bg]` (or `d1^2..dg^2`).
//!
//! The polygon pairing follows the same data: sides `XI XI'` per elliptic
//! generator, `Ei G0..Gs Ei'` per period cycle (the `G` sides fixed by the
//! reflections), then handle blocks `A B A' B'` or glide blocks `A A*`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, ParseError};
use crate::signature::NecSignature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// `xi`, of finite order `m`.
    Elliptic { order: u32 },
    /// `ei`, connecting a period cycle to the long relator.
    Boundary,
    /// `ci.j`: reflection `j` of period cycle `i` (0-based on both).
    Reflection { cycle: usize, pos: usize },
    /// `ai` of a handle pair.
    HandleA,
    /// `bi` of a handle pair.
    HandleB,
    /// `di`, a glide reflection (sign `-`).
    Glide,
}

impl GenKind {
    /// True for the generators that reverse orientation (reflections and
    /// glide reflections).
    pub fn reverses_orientation(&self) -> bool {
        matches!(self, GenKind::Reflection { .. } | GenKind::Glide)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
}

/// One letter of a word: a generator index with an inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

pub type Word = Vec<Letter>;

/// Cancel adjacent `g g^-1` pairs until none remain.
pub fn free_reduce(word: &Word) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        match out.last() {
            Some(&top) if top.gen == l.gen && top.inv != l.inv => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    signature: NecSignature,
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn signature(&self) -> &NecSignature {
        &self.signature
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Look a generator up by name, falling back to `name + "1"` so the
    /// common single-handle/single-cycle inputs can say `a`, `e`, `x`, `c`.
    pub fn resolve_generator(&self, name: &str) -> Result<usize, Error> {
        if let Some(i) = self.generator_index(name) {
            return Ok(i);
        }
        let with_one = format!("{name}1");
        if let Some(i) = self.generator_index(&with_one) {
            return Ok(i);
        }
        Err(Error::UnknownName(format!("generator `{name}`")))
    }

    /// Orientation character of a single generator: true = reversing.
    pub fn reverses(&self, gen: usize) -> bool {
        self.generators[gen].kind.reverses_orientation()
    }

    /// Orientation character of a word (parity of reversing letters):
    /// true = reversing.
    pub fn word_reverses(&self, word: &Word) -> bool {
        word.iter().filter(|l| self.reverses(l.gen)).count() % 2 == 1
    }

    /// Parity of reflection letters in a word: true = odd.
    pub fn reflection_parity(&self, word: &Word) -> bool {
        word.iter()
            .filter(|l| matches!(self.generators[l.gen].kind, GenKind::Reflection { .. }))
            .count()
            % 2
            == 1
    }

    /// Parse a word literal: whitespace- or `*`-separated letters, each a
    /// generator name with an optional `^<integer>` exponent, e.g.
    /// `"e1 c1 e1^-1 c1^-1"` or `"d1^2 e1"`. Bare names fall back as in
    /// [`Presentation::resolve_generator`].
    pub fn parse_word(&self, text: &str) -> Result<Word, Error> {
        let mut word: Word = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() || token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                None => (token, 1i32),
                Some((n, e)) => {
                    let exp: i32 = e.parse().map_err(|_| {
                        Error::Parse(ParseError {
                            pos: 0,
                            msg: format!("bad exponent `{e}` in `{token}`"),
                        })
                    })?;
                    (n, exp)
                }
            };
            let gen = self.resolve_generator(name)?;
            let inv = exp < 0;
            for _ in 0..exp.unsigned_abs() {
                word.push(Letter { gen, inv });
            }
        }
        Ok(word)
    }

    /// Render a word with `^-1` markers and power grouping.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return String::from("1");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i + 1;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let name = &self.generators[word[i].gen].name;
            let count = (j - i) as i64;
            let exp = if word[i].inv { -count } else { count };
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i = j;
        }
        parts.join(" ")
    }

    /// The fundamental polygon with side pairings matching this
    /// presentation.
    pub fn polygon(&self) -> Polygon {
        Polygon::build(self)
    }
}

/// Build the canonical presentation of a signature.
pub fn canonical_presentation(sig: &NecSignature) -> Presentation {
    let mut generators: Vec<Generator> = Vec::new();
    let r = sig.proper_periods().len();
    let genus = sig.genus() as usize;
    let orientable = sig.sign() == crate::signature::Sign::Plus;

    for (i, &m) in sig.proper_periods().iter().enumerate() {
        generators
            .push(Generator { name: format!("x{}", i + 1), kind: GenKind::Elliptic { order: m } });
    }
    // Per cycle: e, then its reflections. Record generator indices for the
    // relators below.
    let mut e_idx: Vec<usize> = Vec::new();
    let mut c_idx: Vec<Vec<usize>> = Vec::new();
    for (i, cycle) in sig.period_cycles().iter().enumerate() {
        e_idx.push(generators.len());
        generators.push(Generator { name: format!("e{}", i + 1), kind: GenKind::Boundary });
        let s = cycle.len();
        let mut refs = Vec::new();
        for j in 0..=s {
            refs.push(generators.len());
            let name = if s == 0 { format!("c{}", i + 1) } else { format!("c{}.{}", i + 1, j) };
            generators.push(Generator { name, kind: GenKind::Reflection { cycle: i, pos: j } });
        }
        c_idx.push(refs);
    }
    let mut handle_idx: Vec<usize> = Vec::new();
    if orientable {
        for i in 0..genus {
            handle_idx.push(generators.len());
            generators.push(Generator { name: format!("a{}", i + 1), kind: GenKind::HandleA });
            generators.push(Generator { name: format!("b{}", i + 1), kind: GenKind::HandleB });
        }
    } else {
        for i in 0..genus {
            handle_idx.push(generators.len());
            generators.push(Generator { name: format!("d{}", i + 1), kind: GenKind::Glide });
        }
    }

    let lit = |gen: usize| Letter { gen, inv: false };
    let inv = |gen: usize| Letter { gen, inv: true };

    let mut relators: Vec<Word> = Vec::new();
    // Long relator: elliptics, boundary generators, then the handle or
    // glide block.
    let mut long: Word = Vec::new();
    for i in 0..r {
        long.push(lit(i));
    }
    for &e in &e_idx {
        long.push(lit(e));
    }
    if orientable {
        for &a in &handle_idx {
            let b = a + 1;
            long.extend_from_slice(&[lit(a), lit(b), inv(a), inv(b)]);
        }
    } else {
        for &d in &handle_idx {
            long.extend_from_slice(&[lit(d), lit(d)]);
        }
    }
    relators.push(long);
    // Elliptic orders.
    for (i, &m) in sig.proper_periods().iter().enumerate() {
        relators.push(alloc::vec![lit(i); m as usize]);
    }
    // Per cycle: reflection squares, link relators, e-conjugation.
    for (i, cycle) in sig.period_cycles().iter().enumerate() {
        let refs = &c_idx[i];
        for &c in refs {
            relators.push(alloc::vec![lit(c), lit(c)]);
        }
        for (j, &n) in cycle.iter().enumerate() {
            let mut link: Word = Vec::new();
            for _ in 0..n {
                link.push(lit(refs[j]));
                link.push(lit(refs[j + 1]));
            }
            relators.push(link);
        }
        let e = e_idx[i];
        relators.push(alloc::vec![lit(e), lit(refs[0]), inv(e), inv(*refs.last().unwrap()),]);
    }

    Presentation { signature: sig.clone(), generators, relators }
}

/// Role of one polygon side in its pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideRole {
    /// The side its generator maps onto (`XI`, `Ei`, `A`, `B`).
    Target,
    /// The side the generator carries to the target (`XI'`, `Ei'`, `A'`,
    /// `B'`, `A*`).
    Source,
    /// A side fixed pointwise by a reflection.
    Mirror,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Side {
    /// Index of the pairing (or fixing) generator.
    pub gen: usize,
    pub role: SideRole,
    pub label: String,
}

/// Corner between two consecutive sides. `Apex` sits between `XI` and
/// `XI'` and carries the elliptic order; `Dihedral` sits between two
/// consecutive mirror sides and carries the link period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerKind {
    Plain,
    Apex { order: u32 },
    Dihedral { order: u32 },
}

/// The fundamental polygon: a cyclic sequence of sides and the corners
/// between them. Corner `i` sits between side `i-1` and side `i`; side `i`
/// runs from corner `i` to corner `i+1` (indices mod side count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub sides: Vec<Side>,
    pub corners: Vec<CornerKind>,
}

impl Polygon {
    fn build(pres: &Presentation) -> Polygon {
        let sig = pres.signature();
        let mut sides: Vec<Side> = Vec::new();
        let mut corners: Vec<CornerKind> = Vec::new();
        let push = |sides: &mut Vec<Side>,
                    corners: &mut Vec<CornerKind>,
                    gen: usize,
                    role: SideRole,
                    label: String,
                    corner: CornerKind| {
            sides.push(Side { gen, role, label });
            corners.push(corner);
        };

        for (gi, g) in pres.generators().iter().enumerate() {
            match g.kind {
                GenKind::Elliptic { order } => {
                    push(
                        &mut sides,
                        &mut corners,
                        gi,
                        SideRole::Target,
                        g.name.clone(),
                        CornerKind::Plain,
                    );
                    push(
                        &mut sides,
                        &mut corners,
                        gi,
                        SideRole::Source,
                        format!("{}'", g.name),
                        CornerKind::Apex { order },
                    );
                }
                GenKind::Boundary => {
                    push(
                        &mut sides,
                        &mut corners,
                        gi,
                        SideRole::Target,
                        g.name.clone(),
                        CornerKind::Plain,
                    );
                }
                GenKind::Reflection { cycle, pos } => {
                    let corner = if pos == 0 {
                        CornerKind::Plain
                    } else {
                        CornerKind::Dihedral { order: sig.period_cycles()[cycle][pos - 1] }
                    };
                    push(&mut sides, &mut corners, gi, SideRole::Mirror, g.name.clone(), corner);
                    // Close the cycle block after the last reflection.
                    if pos == sig.period_cycles()[cycle].len() {
                        let e_gen = pres
                            .generators()
                            .iter()
                            .position(|h| h.name == format!("e{}", cycle + 1))
                            .unwrap();
                        push(
                            &mut sides,
                            &mut corners,
                            e_gen,
                            SideRole::Source,
                            format!("e{}'", cycle + 1),
                            CornerKind::Plain,
                        );
                    }
                }
                GenKind::HandleA => {
                    push(
                        &mut sides,
                        &mut corners,
                        gi,
                        SideRole::Target,
                        g.name.clone(),
                        CornerKind::Plain,
                    );
                    push(
                        &mut sides,
                        &mut corners,
                        gi + 1,
                        SideRole::Target,
                        pres.generators()[gi + 1].name.clone(),
                        CornerKind::Plain,
                    );
                    push(
                        &mut sides,
                        &mut corners,
                        gi,
                        SideRole::Source,
                        format!("{}'", g.name),
                        CornerKind::Plain,
                    );
                    push(
                        &mut sides,
                        &mut corners,
                        gi + 1,
                        SideRole::Source,
                        format!("{}'", pres.generators()[gi + 1].name),
                        CornerKind::Plain,
                    );
                }
                GenKind::HandleB => {} // emitted with its HandleA partner
                GenKind::Glide => {
                    push(
                        &mut sides,
                        &mut corners,
                        gi,
                        SideRole::Target,
                        g.name.clone(),
                        CornerKind::Plain,
                    );
                    push(
                        &mut sides,
                        &mut corners,
                        gi,
                        SideRole::Source,
                        format!("{}*", g.name),
                        CornerKind::Plain,
                    );
                }
            }
        }
        Polygon { sides, corners }
    }

    pub fn side_count(&self) -> usize {
        self.sides.len()
    }

    /// `(source side index, target side index, generator)` for every
    /// pairing generator.
    pub fn pairings(&self) -> Vec<(usize, usize, usize)> {
        let mut by_gen: alloc::collections::BTreeMap<usize, (Option<usize>, Option<usize>)> =
            alloc::collections::BTreeMap::new();
        for (i, side) in self.sides.iter().enumerate() {
            let entry = by_gen.entry(side.gen).or_insert((None, None));
            match side.role {
                SideRole::Source => entry.0 = Some(i),
                SideRole::Target => entry.1 = Some(i),
                SideRole::Mirror => {}
            }
        }
        by_gen.into_iter().filter_map(|(g, (s, t))| Some((s?, t?, g))).collect()
    }

    /// `(side index, generator)` for every mirror side.
    pub fn mirrors(&self) -> Vec<(usize, usize)> {
        self.sides
            .iter()
            .enumerate()
            .filter(|(_, s)| s.role == SideRole::Mirror)
            .map(|(i, s)| (i, s.gen))
            .collect()
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, side) in self.sides.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&side.label)?;
        }
        Ok(())
    }
}
