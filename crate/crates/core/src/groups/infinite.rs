//! Finitely generated infinite groups with computable normal forms.
//!
//! Generators are lowercase letters (`a`, `b`, ... ; `r`, `s` for the infinite
//! dihedral group) and an uppercase letter is the inverse generator. Words may
//! use exponents: `a^3B`, `r^-2s`. Finitely supported permutations of the
//! positive integers use cycle notation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Group;
use crate::error::{Error, Result};

/// Default cap on the normal-form length explored by orbit searches.
pub const DEFAULT_LENGTH_CAP: usize = 40;
/// Largest support accepted for a finitely supported permutation.
pub const SUPPORT_BOUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    Free {
        rank: usize,
    },
    FreeAbelian {
        rank: usize,
    },
    InfiniteDihedral,
    /// Permutations of `{1, 2, ...}` moving finitely many points.
    FinSuppPermutations,
}

/// JSON description, e.g. `{"type":"free","rank":2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilySpec {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    InfiniteDihedral,
    FinSuppPermutations,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    /// Reduced word; letter `i + 1` is generator `i`, `-(i + 1)` its inverse.
    Word(Vec<i8>),
    Vector(Vec<i64>),
    /// `r^shift s^flip`
    Dihedral {
        shift: i64,
        flip: bool,
    },
    /// Moved points with their images, sorted by point (1-based).
    Perm(Vec<(u32, u32)>),
}

/// Normal form of an element of an [`InfiniteGroup`]. Ordered by length first,
/// then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyElement(Repr);

impl FamilyElement {
    /// Word length in the family generators (support size for permutations).
    pub fn length(&self) -> usize {
        match &self.0 {
            Repr::Word(w) => w.len(),
            Repr::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            Repr::Dihedral { shift, flip } => shift.unsigned_abs() as usize + *flip as usize,
            Repr::Perm(m) => m.len(),
        }
    }

    /// Largest moved point of a permutation; word length otherwise.
    fn extent(&self) -> usize {
        match &self.0 {
            Repr::Perm(m) => m.last().map_or(0, |&(p, _)| p as usize),
            _ => self.length(),
        }
    }
}

impl Ord for FamilyElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length().cmp(&other.length()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FamilyElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteGroup {
    kind: FamilyKind,
    length_cap: usize,
}

fn letter(i: usize, inverse: bool) -> char {
    let c = (b'a' + i as u8) as char;
    if inverse {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

fn power_label(out: &mut String, base: char, exp: i64) {
    match exp {
        0 => {}
        1 => out.push(base),
        -1 => out.push(base.to_ascii_uppercase()),
        e => out.push_str(&format!("{base}^{e}")),
    }
}

impl InfiniteGroup {
    pub fn new(kind: FamilyKind) -> Result<Self> {
        match kind {
            FamilyKind::Free { rank } | FamilyKind::FreeAbelian { rank } if rank == 0 || rank > 26 => {
                Err(Error::InvalidGroupSpec(format!("rank {rank} outside 1..=26")))
            }
            _ => Ok(InfiniteGroup {
                kind,
                length_cap: DEFAULT_LENGTH_CAP,
            }),
        }
    }

    pub fn from_spec(spec: &FamilySpec) -> Result<Self> {
        Self::new(match *spec {
            FamilySpec::Free { rank } => FamilyKind::Free { rank },
            FamilySpec::FreeAbelian { rank } => FamilyKind::FreeAbelian { rank },
            FamilySpec::InfiniteDihedral => FamilyKind::InfiniteDihedral,
            FamilySpec::FinSuppPermutations => FamilyKind::FinSuppPermutations,
        })
    }

    pub fn with_length_cap(mut self, cap: usize) -> Self {
        self.length_cap = cap;
        self
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn name(&self) -> String {
        match self.kind {
            FamilyKind::Free { rank } => format!("F_{rank}"),
            FamilyKind::FreeAbelian { rank } => format!("Z^{rank}"),
            FamilyKind::InfiniteDihedral => "D_inf".into(),
            FamilyKind::FinSuppPermutations => "FSym(N)".into(),
        }
    }

    /// Whether every nontrivial conjugacy class is known to be infinite by a
    /// standard argument: in a free group of rank >= 2, `b^-n a b^n` are
    /// pairwise distinct for any `a` not a power of `b` (and symmetrically);
    /// in the finitary symmetric group conjugation can move the support
    /// arbitrarily far.
    pub fn has_icc_proof(&self) -> bool {
        matches!(
            self.kind,
            FamilyKind::Free { rank: 2.. } | FamilyKind::FinSuppPermutations
        )
    }

    /// Generators used for orbit searches, together with their inverses. For
    /// the finitary symmetric group only the adjacent transpositions that can
    /// act nontrivially on an element of extent `extent` are listed.
    pub fn generators_for(&self, extent: usize) -> Vec<FamilyElement> {
        match self.kind {
            FamilyKind::Free { rank } => (0..rank)
                .flat_map(|i| [i as i8 + 1, -(i as i8) - 1])
                .map(|l| FamilyElement(Repr::Word(vec![l])))
                .collect(),
            FamilyKind::FreeAbelian { rank } => (0..rank)
                .flat_map(|i| {
                    [1, -1].map(|s| {
                        let mut v = vec![0; rank];
                        v[i] = s;
                        FamilyElement(Repr::Vector(v))
                    })
                })
                .collect(),
            FamilyKind::InfiniteDihedral => vec![
                FamilyElement(Repr::Dihedral { shift: 1, flip: false }),
                FamilyElement(Repr::Dihedral { shift: -1, flip: false }),
                FamilyElement(Repr::Dihedral { shift: 0, flip: true }),
            ],
            FamilyKind::FinSuppPermutations => (1..=extent.max(1) as u32)
                .map(|i| FamilyElement(Repr::Perm(vec![(i, i + 1), (i + 1, i)])))
                .collect(),
        }
    }

    /// Largest coordinate of the normal form relevant to the length cap.
    pub fn extent(&self, a: &FamilyElement) -> usize {
        a.extent()
    }

    fn reduce_word(word: impl IntoIterator<Item = i8>) -> Vec<i8> {
        let mut out: Vec<i8> = Vec::new();
        for l in word {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    fn perm_apply(m: &[(u32, u32)], x: u32) -> u32 {
        m.binary_search_by_key(&x, |&(p, _)| p).map_or(x, |i| m[i].1)
    }

    fn perm_normalize(map: BTreeMap<u32, u32>) -> Vec<(u32, u32)> {
        map.into_iter().filter(|(p, q)| p != q).collect()
    }

    fn word_element(&self, tokens: &[(usize, i64)]) -> Result<FamilyElement> {
        let mut acc = self.identity();
        for &(gen, exp) in tokens {
            let g = match self.kind {
                FamilyKind::Free { rank } | FamilyKind::FreeAbelian { rank } if gen >= rank => {
                    return Err(Error::UnknownElement(format!("generator {}", letter(gen, false))))
                }
                FamilyKind::Free { .. } => FamilyElement(Repr::Word(vec![gen as i8 + 1])),
                FamilyKind::FreeAbelian { rank } => {
                    let mut v = vec![0; rank];
                    v[gen] = 1;
                    FamilyElement(Repr::Vector(v))
                }
                FamilyKind::InfiniteDihedral => match gen {
                    // 'r' and 's'
                    17 => FamilyElement(Repr::Dihedral { shift: 1, flip: false }),
                    18 => FamilyElement(Repr::Dihedral { shift: 0, flip: true }),
                    _ => return Err(Error::UnknownElement(format!("generator {}", letter(gen, false)))),
                },
                FamilyKind::FinSuppPermutations => unreachable!(),
            };
            let g = if exp < 0 { self.inv(&g) } else { g };
            for _ in 0..exp.unsigned_abs() {
                acc = self.mul(&acc, &g);
            }
        }
        Ok(acc)
    }
}

/// Splits `"a^2Bc^-1"` into `(generator index, exponent)` pairs.
fn tokenize_word(s: &str) -> Result<Vec<(usize, i64)>> {
    let bad = |m: &str| Error::Parse(format!("word {s:?}: {m}"));
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !c.is_ascii_alphabetic() {
            return Err(bad("expected a generator letter"));
        }
        let gen = (c.to_ascii_lowercase() as u8 - b'a') as usize;
        let mut exp: i64 = if c.is_ascii_uppercase() { -1 } else { 1 };
        i += 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let n: i64 = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| bad("bad exponent"))?;
            exp *= n;
        }
        out.push((gen, exp));
    }
    Ok(out)
}

impl Group for InfiniteGroup {
    type Elem = FamilyElement;

    fn identity(&self) -> FamilyElement {
        FamilyElement(match self.kind {
            FamilyKind::Free { .. } => Repr::Word(Vec::new()),
            FamilyKind::FreeAbelian { rank } => Repr::Vector(vec![0; rank]),
            FamilyKind::InfiniteDihedral => Repr::Dihedral { shift: 0, flip: false },
            FamilyKind::FinSuppPermutations => Repr::Perm(Vec::new()),
        })
    }

    fn mul(&self, a: &FamilyElement, b: &FamilyElement) -> FamilyElement {
        FamilyElement(match (&a.0, &b.0) {
            (Repr::Word(x), Repr::Word(y)) => Repr::Word(Self::reduce_word(x.iter().chain(y.iter()).copied())),
            (Repr::Vector(x), Repr::Vector(y)) => Repr::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect()),
            // r^a s^e r^b s^f = r^{a + (-1)^e b} s^{e + f}
            (Repr::Dihedral { shift: a1, flip: e }, Repr::Dihedral { shift: b1, flip: f }) => Repr::Dihedral {
                shift: if *e { a1 - b1 } else { a1 + b1 },
                flip: e ^ f,
            },
            // right action: x^(ab) = (x^a)^b
            (Repr::Perm(x), Repr::Perm(y)) => {
                let mut map = BTreeMap::new();
                for &(p, _) in x.iter().chain(y.iter()) {
                    map.insert(p, Self::perm_apply(y, Self::perm_apply(x, p)));
                }
                Repr::Perm(Self::perm_normalize(map))
            }
            _ => panic!("elements from different group families"),
        })
    }

    fn inv(&self, a: &FamilyElement) -> FamilyElement {
        FamilyElement(match &a.0 {
            Repr::Word(w) => Repr::Word(w.iter().rev().map(|l| -l).collect()),
            Repr::Vector(v) => Repr::Vector(v.iter().map(|x| -x).collect()),
            Repr::Dihedral { shift, flip: false } => Repr::Dihedral {
                shift: -shift,
                flip: false,
            },
            // reflections are involutions
            r @ Repr::Dihedral { flip: true, .. } => r.clone(),
            Repr::Perm(m) => {
                let mut inv: Vec<(u32, u32)> = m.iter().map(|&(p, q)| (q, p)).collect();
                inv.sort_unstable();
                Repr::Perm(inv)
            }
        })
    }

    fn contains(&self, a: &FamilyElement) -> bool {
        match (&self.kind, &a.0) {
            (FamilyKind::Free { rank }, Repr::Word(w)) => {
                w.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) <= *rank)
                    && Self::reduce_word(w.iter().copied()) == *w
            }
            (FamilyKind::FreeAbelian { rank }, Repr::Vector(v)) => v.len() == *rank,
            (FamilyKind::InfiniteDihedral, Repr::Dihedral { .. }) => true,
            (FamilyKind::FinSuppPermutations, Repr::Perm(m)) => m.len() <= SUPPORT_BOUND,
            _ => false,
        }
    }

    fn label(&self, a: &FamilyElement) -> String {
        let mut out = String::new();
        match &a.0 {
            Repr::Word(w) => out.extend(w.iter().map(|&l| letter(l.unsigned_abs() as usize - 1, l < 0))),
            Repr::Vector(v) => {
                for (i, &x) in v.iter().enumerate() {
                    power_label(&mut out, letter(i, false), x);
                }
            }
            Repr::Dihedral { shift, flip } => {
                power_label(&mut out, 'r', *shift);
                if *flip {
                    out.push('s');
                }
            }
            Repr::Perm(m) => {
                let mut seen = std::collections::BTreeSet::new();
                for &(start, _) in m {
                    if !seen.insert(start) {
                        continue;
                    }
                    let mut cycle = vec![start];
                    let mut x = Self::perm_apply(m, start);
                    while x != start {
                        seen.insert(x);
                        cycle.push(x);
                        x = Self::perm_apply(m, x);
                    }
                    let pts: Vec<String> = cycle.iter().map(u32::to_string).collect();
                    out.push_str(&format!("({})", pts.join(" ")));
                }
                if out.is_empty() {
                    out.push_str("()");
                }
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    fn parse_element(&self, s: &str) -> Result<FamilyElement> {
        let t = s.trim();
        if self.kind == FamilyKind::FinSuppPermutations {
            let mut acc = self.identity();
            let mut rest = t;
            if rest == "1" || rest == "()" || rest.is_empty() {
                return Ok(acc);
            }
            while !rest.is_empty() {
                let open = rest
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("cycle notation {s:?}")))?;
                let close = open
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("cycle notation {s:?}")))?;
                let pts = open[..close]
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<u32>().ok().filter(|&p| p > 0))
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| Error::Parse(format!("cycle notation {s:?}")))?;
                let mut map = BTreeMap::new();
                for (i, &p) in pts.iter().enumerate() {
                    if map.insert(p, pts[(i + 1) % pts.len()]).is_some() {
                        return Err(Error::Parse(format!("repeated point in {s:?}")));
                    }
                }
                acc = self.mul(&acc, &FamilyElement(Repr::Perm(Self::perm_normalize(map))));
                rest = open[close + 1..].trim_start();
            }
            if !self.contains(&acc) {
                return Err(Error::Parse(format!("support of {s:?} exceeds {SUPPORT_BOUND}")));
            }
            return Ok(acc);
        }
        if t.is_empty() || t == "1" {
            return Ok(self.identity());
        }
        self.word_element(&tokenize_word(t)?)
    }
}

impl fmt::Display for FamilyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
