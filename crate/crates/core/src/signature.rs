//! NEC signatures and topological types of compact Klein surfaces.
//!
//! A signature `(g; ±; [m1,...,mr]; {(n11,...),...})` records the quotient
//! genus, orientability sign, proper periods and period cycles of a
//! non-euclidean crystallographic group. Surface signatures (no periods,
//! all cycles empty) are in bijection with topological types `(g, ±, k)`
//! of compact surfaces with `k` boundary components.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, ParseError};

/// Exact rational number used for orbifold Euler characteristics.
pub type Rational = num_rational::Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Topological type of a compact surface: genus, orientability and the
/// number of boundary components. For non-orientable surfaces the genus is
/// the number of cross-caps and must be at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TopType {
    genus: u32,
    orientable: bool,
    boundary: u32,
}

impl TopType {
    pub fn new(genus: u32, orientable: bool, boundary: u32) -> Result<Self, Error> {
        if !orientable && genus == 0 {
            return Err(Error::domain(
                "a non-orientable surface has at least one cross-cap (genus >= 1)",
            ));
        }
        Ok(TopType { genus, orientable, boundary })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    /// Topological Euler characteristic: `2 - 2g - k` when orientable,
    /// `2 - g - k` otherwise.
    pub fn euler_char(&self) -> i64 {
        let g = i64::from(self.genus);
        let k = i64::from(self.boundary);
        if self.orientable {
            2 - 2 * g - k
        } else {
            2 - g - k
        }
    }

    /// Algebraic genus: `2g + k - 1` when orientable, `g + k - 1` otherwise.
    ///
    /// The same formulas are applied when `k = 0`; in every case the value
    /// equals `1 - euler_char()`.
    pub fn algebraic_genus(&self) -> i64 {
        1 - self.euler_char()
    }

    /// The surface signature with this topological type: no proper periods
    /// and one empty period cycle per boundary component.
    pub fn signature(&self) -> NecSignature {
        let sign = if self.orientable { Sign::Plus } else { Sign::Minus };
        let cycles = alloc::vec![Vec::new(); self.boundary as usize];
        NecSignature::new(self.genus, sign, Vec::new(), cycles)
            .expect("surface signatures from a valid type are valid")
    }
}

impl fmt::Display for TopType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.orientable { "+" } else { "-" };
        write!(f, "({};{};{})", self.genus, sign, self.boundary)
    }
}

/// An NEC signature. Proper periods are kept sorted (their order carries no
/// information); period cycles are kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NecSignature {
    genus: u32,
    sign: Sign,
    periods: Vec<u32>,
    cycles: Vec<Vec<u32>>,
}

impl NecSignature {
    pub fn new(
        genus: u32,
        sign: Sign,
        mut periods: Vec<u32>,
        cycles: Vec<Vec<u32>>,
    ) -> Result<Self, Error> {
        if sign == Sign::Minus && genus == 0 {
            return Err(Error::domain("sign `-` requires genus >= 1"));
        }
        if let Some(&m) = periods.iter().find(|&&m| m < 2) {
            return Err(Error::domain(alloc::format!("proper period {m} is below 2")));
        }
        for cycle in &cycles {
            if let Some(&n) = cycle.iter().find(|&&n| n < 2) {
                return Err(Error::domain(alloc::format!("link period {n} is below 2")));
            }
        }
        periods.sort_unstable();
        Ok(NecSignature { genus, sign, periods, cycles })
    }

    /// Convenience constructor for the surface signature of `(g, ±, k)`.
    pub fn surface(genus: u32, sign: Sign, boundary: u32) -> Result<Self, Error> {
        NecSignature::new(genus, sign, Vec::new(), alloc::vec![Vec::new(); boundary as usize])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn proper_periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn period_cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    /// Number of period cycles (= boundary components of the quotient).
    pub fn cycle_count(&self) -> u32 {
        self.cycles.len() as u32
    }

    /// True when there are no proper periods and every cycle is empty, i.e.
    /// the group is a (bordered) surface group.
    pub fn is_surface(&self) -> bool {
        self.periods.is_empty() && self.cycles.iter().all(|c| c.is_empty())
    }

    /// The topological type, when this is a surface signature.
    pub fn as_top_type(&self) -> Option<TopType> {
        if !self.is_surface() {
            return None;
        }
        Some(TopType {
            genus: self.genus,
            orientable: self.sign == Sign::Plus,
            boundary: self.cycles.len() as u32,
        })
    }

    /// Orbifold Euler characteristic
    /// `-(alpha*g + c - 2 + sum(1 - 1/m_i) + (1/2) sum(1 - 1/n_ij))`
    /// with `alpha = 2` for sign `+` and `1` for sign `-`.
    pub fn euler_char_orb(&self) -> Rational {
        let alpha: i64 = match self.sign {
            Sign::Plus => 2,
            Sign::Minus => 1,
        };
        let mut total =
            Rational::from_integer(alpha * i64::from(self.genus) + self.cycles.len() as i64 - 2);
        for &m in &self.periods {
            total += Rational::new(i64::from(m) - 1, i64::from(m));
        }
        for cycle in &self.cycles {
            for &n in cycle {
                total += Rational::new(i64::from(n) - 1, 2 * i64::from(n));
            }
        }
        -total
    }

    /// Parse the textual signature language. Syntax errors carry a byte
    /// position; violations such as sign `-` with genus 0 are domain errors.
    pub fn parse(input: &str) -> Result<Self, Error> {
        Parser::new(input).signature()
    }

    /// Normal form used when comparing engine output against references:
    /// periods are already sorted, each cycle is replaced by its minimal
    /// rotation (over both reading directions), and the cycle list is
    /// sorted. Boundary circles of a cover come back in traversal order, so
    /// comparisons must not depend on cycle order or starting point.
    pub fn normalized(&self) -> NecSignature {
        let mut cycles: Vec<Vec<u32>> = self.cycles.iter().map(|c| dihedral_min(c)).collect();
        cycles.sort();
        NecSignature { genus: self.genus, sign: self.sign, periods: self.periods.clone(), cycles }
    }
}

/// Minimal representative of a cycle under rotation and reversal.
fn dihedral_min(cycle: &[u32]) -> Vec<u32> {
    if cycle.len() <= 1 {
        return cycle.to_vec();
    }
    let mut best: Option<Vec<u32>> = None;
    let mut reversed: Vec<u32> = cycle.to_vec();
    reversed.reverse();
    for candidate in [cycle.to_vec(), reversed] {
        for shift in 0..candidate.len() {
            let mut rotated = candidate[shift..].to_vec();
            rotated.extend_from_slice(&candidate[..shift]);
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap()
}

impl fmt::Display for NecSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{};[", self.genus, self.sign)?;
        if self.periods.is_empty() {
            f.write_str("-")?;
        } else {
            for (i, m) in self.periods.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{m}")?;
            }
        }
        f.write_str("];{")?;
        if self.cycles.is_empty() {
            f.write_str("-")?;
        } else {
            // Runs of identical consecutive cycles print with an exponent,
            // e.g. three empty cycles as `(-)^3`.
            let mut first = true;
            let mut i = 0;
            while i < self.cycles.len() {
                let mut j = i + 1;
                while j < self.cycles.len() && self.cycles[j] == self.cycles[i] {
                    j += 1;
                }
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                f.write_str("(")?;
                if self.cycles[i].is_empty() {
                    f.write_str("-")?;
                } else {
                    for (t, n) in self.cycles[i].iter().enumerate() {
                        if t > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{n}")?;
                    }
                }
                f.write_str(")")?;
                if j - i > 1 {
                    write!(f, "^{}", j - i)?;
                }
                i = j;
            }
        }
        f.write_str("})")
    }
}

/// Parse the compact type notation accepted on the command line:
/// `g=2,-,k=3`, or the shorter `(2;-;3)`.
pub fn parse_top_type(input: &str) -> Result<TopType, Error> {
    let s = input.trim();
    let body = if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        inner
    } else {
        s
    };
    let sep = if body.contains(';') { ';' } else { ',' };
    let parts: Vec<&str> = body.split(sep).map(str::trim).collect();
    if parts.len() != 3 {
        return Err(ParseError {
            pos: 0,
            msg: String::from("expected three fields: genus, sign, boundary count"),
        }
        .into());
    }
    let genus_txt = parts[0].strip_prefix("g=").unwrap_or(parts[0]);
    let k_txt = parts[2].strip_prefix("k=").unwrap_or(parts[2]);
    let genus: u32 = genus_txt
        .parse()
        .map_err(|_| ParseError { pos: 0, msg: alloc::format!("bad genus `{genus_txt}`") })?;
    let boundary: u32 = k_txt
        .parse()
        .map_err(|_| ParseError { pos: 0, msg: alloc::format!("bad boundary count `{k_txt}`") })?;
    let orientable = match parts[1] {
        "+" => true,
        "-" => false,
        other => {
            return Err(ParseError {
                pos: 0,
                msg: alloc::format!("bad sign `{other}` (expected + or -)"),
            }
            .into())
        }
    };
    TopType::new(genus, orientable, boundary)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { bytes: input.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        ParseError { pos: self.pos, msg: msg.into() }.into()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> Result<(), Error> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(alloc::format!("expected `{}`", ch as char)))
        }
    }

    fn int(&mut self) -> Result<u32, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let text = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<u32>().map_err(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    /// `"-"` or a non-empty comma-separated integer list.
    fn int_list_or_dash(&mut self, terminator: u8) -> Result<Vec<u32>, Error> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut items = alloc::vec![self.int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            items.push(self.int()?);
        }
        if self.peek() != Some(terminator) {
            return Err(self.err(alloc::format!("expected `,` or `{}`", terminator as char)));
        }
        Ok(items)
    }

    fn signature(&mut self) -> Result<NecSignature, Error> {
        self.eat(b'(')?;
        let genus = self.int()?;
        self.eat(b';')?;
        let sign = match self.peek() {
            Some(b'+') => Sign::Plus,
            Some(b'-') => Sign::Minus,
            _ => return Err(self.err("expected sign `+` or `-`")),
        };
        self.pos += 1;
        self.eat(b';')?;
        self.eat(b'[')?;
        let periods = self.int_list_or_dash(b']')?;
        self.eat(b']')?;
        self.eat(b';')?;
        self.eat(b'{')?;
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        if self.peek() == Some(b'-') {
            self.pos += 1;
        } else {
            loop {
                self.eat(b'(')?;
                let cycle = self.int_list_or_dash(b')')?;
                self.eat(b')')?;
                let mut n = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    n = self.int()?;
                    if n == 0 {
                        return Err(self.err("cycle exponent must be at least 1"));
                    }
                }
                for _ in 0..n {
                    cycles.push(cycle.clone());
                }
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.eat(b'}')?;
        self.eat(b')')?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("trailing input after signature"));
        }
        NecSignature::new(genus, sign, periods, cycles)
    }
}
