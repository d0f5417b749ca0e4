//! Permutations of a finite set `{0, .., degree-1}`.
//!
//! Composition is left-to-right throughout the crate: `(p * q)(x) = q(p(x))`.
//! Points are 0-indexed internally and 1-indexed in every textual form, so
//! `Permutation::from_cycles(5, "(1,2)(3,4)")` swaps the first two and the
//! middle two of five points.

use crate::error::{Error, Result};
use std::fmt;

/// A bijection on `{0, .., degree-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from an image table, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if (im as usize) >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {}",
                    im + 1,
                    n
                )));
            }
            if seen[im as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} repeated",
                    im + 1
                )));
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation with 1-indexed points, e.g. `"(1,2)(3,4)"`.
    /// `"()"` and the empty string denote the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        let body = text.trim();
        if body.is_empty() || body == "()" {
            return Ok(Permutation { images });
        }
        if !body.starts_with('(') || !body.ends_with(')') {
            return Err(Error::Parse(format!("expected cycle notation, got {body:?}")));
        }
        for cycle in body[1..body.len() - 1].split(")(") {
            let mut points = Vec::new();
            for tok in cycle.split([',', ' ']).filter(|t| !t.is_empty()) {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!(
                        "point {p} out of range 1..={degree}"
                    )));
                }
                points.push(p - 1);
            }
            if points.len() < 2 {
                continue;
            }
            for &p in &points {
                if moved[p] {
                    return Err(Error::Parse(format!("point {} repeated", p + 1)));
                }
                moved[p] = true;
            }
            for w in 0..points.len() {
                images[points[w]] = points[(w + 1) % points.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// Left-to-right composition: `(self.compose(other))(x) = other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&m| other.images[m as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self` raised to an arbitrary (possibly negative) power.
    pub fn pow(&self, exponent: i64) -> Permutation {
        let mut base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `self^by = by^-1 * self * by`.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        by.inverse().compose(self).compose(by)
    }

    /// Cycle lengths (fixed points omitted), sorted ascending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens = Vec::new();
        let mut seen = vec![false; self.images.len()];
        for start in 0..self.images.len() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.image(p);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    /// Points fixed by the permutation, 0-indexed.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&p| self.image(p) == p).collect()
    }

    /// The set of points actually moved, or `None` for the identity.
    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&p| self.image(p) != p)
    }

    /// Whether the permutation is even (a product of an even number of
    /// transpositions).
    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        transpositions % 2 == 0
    }

    /// Restriction to the window `[offset, offset+width)`, which the
    /// permutation must map to itself.
    pub fn restrict(&self, offset: usize, width: usize) -> Result<Permutation> {
        let mut images = Vec::with_capacity(width);
        for p in offset..offset + width {
            let im = self.image(p);
            if im < offset || im >= offset + width {
                return Err(Error::Inconsistency(format!(
                    "point {} leaves the window [{}, {})",
                    p + 1,
                    offset + 1,
                    offset + width + 1
                )));
            }
            images.push((im - offset) as u32);
        }
        Ok(Permutation { images })
    }

    /// Re-embeds the permutation into a larger domain, acting on the window
    /// starting at `offset` and fixing everything else.
    pub fn shift(&self, offset: usize, total_degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total_degree as u32).collect();
        for (p, &im) in self.images.iter().enumerate() {
            images[offset + p] = offset as u32 + im;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    /// Disjoint-cycle notation with 1-indexed points; identity prints `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.image(p);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
