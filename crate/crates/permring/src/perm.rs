//! Permutations of {0, .., n-1} with cycle-notation parsing and formatting.
//!
//! Cycle strings are 1-based on the outside ("(1 2 3)(4 5)") and 0-based
//! internally. A product of overlapping cycles in one string is applied left
//! to right; `compose` applies right to left (function composition).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, validating bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidDegree(0));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let img = img as usize;
            if img >= n || seen[img] {
                return Err(Error::parse(0, "image table is not a bijection"));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Function composition: `(a.compose(b))(x) = a(b(x))`, so `b` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycle_lengths()
            .into_iter()
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            if len > 1 {
                lengths.push(len);
            }
        }
        lengths
    }

    /// Disjoint cycles, each starting at its least point, sorted by that
    /// point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start as u32 {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Builds the product of `cycles` (0-based points), applied left to
    /// right, as a permutation of the given degree.
    pub fn from_cycles(cycles: &[Vec<u32>], degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(0));
        }
        for cycle in cycles {
            let mut seen = std::collections::HashSet::new();
            for &p in cycle {
                if p as usize >= degree {
                    return Err(Error::parse(0, format!("point {} exceeds degree {degree}", p + 1)));
                }
                if !seen.insert(p) {
                    return Err(Error::parse(0, format!("point {} repeated within a cycle", p + 1)));
                }
            }
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for x in 0..degree as u32 {
            let mut y = x;
            for cycle in cycles {
                if let Some(pos) = cycle.iter().position(|&p| p == y) {
                    y = cycle[(pos + 1) % cycle.len()];
                }
            }
            images[x as usize] = y;
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as "(1 2 3)(4 5)". The degree is
    /// the larger of `min_degree` and the largest point mentioned; "()" is
    /// the identity.
    pub fn parse_cycles(text: &str, min_degree: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let max_point = cycles
            .iter()
            .flat_map(|c| c.iter())
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(0);
        let degree = min_degree.max(max_point).max(1);
        Permutation::from_cycles(&cycles, degree)
    }

    /// 1-based disjoint-cycle string; the identity prints as "()".
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
            }
            out.push(')');
        }
        out
    }
}

/// Parses a whitespace-tolerant list of parenthesized 1-based cycles,
/// returning 0-based point lists. Repeats across cycles are allowed (the
/// product is taken left to right), repeats within one cycle are not.
pub(crate) fn parse_cycle_list(text: &str) -> Result<Vec<Vec<u32>>> {
    let bytes = text.as_bytes();
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                i += 1;
                let mut cycle = Vec::new();
                loop {
                    while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t' || bytes[i] == b',') {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(Error::parse(i, "unterminated cycle"));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == start {
                        return Err(Error::parse(i, format!("unexpected character '{}'", bytes[i] as char)));
                    }
                    let point: u64 = text[start..i]
                        .parse()
                        .map_err(|_| Error::parse(start, "point out of range"))?;
                    if point == 0 {
                        return Err(Error::parse(start, "points are 1-based; 0 is not a point"));
                    }
                    if point > u32::MAX as u64 {
                        return Err(Error::parse(start, "point out of range"));
                    }
                    cycle.push(point as u32 - 1);
                }
                if cycle.len() == 1 {
                    return Err(Error::parse(i, "a cycle needs zero or at least two points"));
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
            }
            c => return Err(Error::parse(i, format!("unexpected character '{}'", c as char))),
        }
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.cycle_string())
    }
}
