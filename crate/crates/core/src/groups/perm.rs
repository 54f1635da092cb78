use std::fmt;

use crate::error::{Error, Result};

/// Permutation of `{0, .., n-1}` by its image array. Displayed and parsed in
/// 1-based cycle notation. Products act on the right: `x^(ab) = (x^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Panics unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(!seen[i as usize], "not a permutation: {images:?}");
            seen[i as usize] = true;
        }
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0.get(x as usize).copied().unwrap_or(x)
    }

    /// Extends (or keeps) the degree to `n`.
    pub fn padded(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(v.len() as u32..n as u32);
        Perm(v)
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        let n = self.degree().max(other.degree());
        Perm((0..n as u32).map(|x| other.apply(self.apply(x))).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.0[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.0[x as usize];
            }
            out.push(cycle);
        }
        out
    }

    /// Parses `"(1 2 3)(4 5)"`, `"(1,2)"` or `"()"`; points are 1-based.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
        let bad = |msg: &str| Error::Parse(format!("cycle notation {s:?}: {msg}"));
        let mut perm = Perm::identity(degree);
        let mut rest = s.trim();
        if rest.is_empty() || rest == "e" || rest == "1" {
            return Ok(perm);
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let points = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| bad("bad point")))
                .collect::<Result<Vec<u32>>>()?;
            if points.iter().any(|&p| p == 0 || p as usize > degree) {
                return Err(bad("point out of range"));
            }
            let mut uniq = points.clone();
            uniq.sort_unstable();
            uniq.dedup();
            if uniq.len() != points.len() {
                return Err(bad("repeated point in a cycle"));
            }
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (i, &p) in points.iter().enumerate() {
                images[(p - 1) as usize] = points[(i + 1) % points.len()] - 1;
            }
            perm = perm.then(&Perm(images));
            rest = open[close + 1..].trim_start();
        }
        Ok(perm)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
