//! Positive roots and highest roots of the classical root systems, written in
//! coordinates.
//!
//! A root `c_1 a_1 + ... + c_r a_r` is stored as the coordinate vector of its
//! image under the map sending simple roots to standard basis vectors:
//! `a_i -> e_i` for types A, B and D, and `a_i -> e_{r-i+1}` for type C. In
//! these coordinates every highest root of type B, C or D starts `(1, 2, ...)`
//! and the counting problem becomes a vector partition problem.
//!
//! Positive roots split into *hooked* roots (some coordinate equals 2) and
//! *nonhooked* roots (all coordinates 0 or 1).

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootSystemError {
    #[error("type {family} requires rank >= {min}")]
    InvalidRank { family: Family, min: u32 },
    #[error("unknown Lie type family `{0}`; expected A, B, C or D")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    /// Smallest rank accepted for this family. B1 and C1 are the one-root
    /// system `{e_1}`.
    pub fn min_rank(self) -> u32 {
        match self {
            Family::A | Family::B | Family::C => 1,
            Family::D => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(RootSystemError::UnknownFamily(other.to_owned())),
        }
    }
}

/// A classical Lie type `X_r` with a rank valid for its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: u32,
}

impl LieType {
    pub fn new(family: Family, rank: u32) -> Result<Self, RootSystemError> {
        let min = family.min_rank();
        if rank < min {
            return Err(RootSystemError::InvalidRank { family, min });
        }
        Ok(Self { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> u32 {
        self.rank
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

fn trim(mut coords: Vec<u32>) -> Vec<u32> {
    while coords.last() == Some(&0) {
        coords.pop();
    }
    coords
}

/// Coordinates of a positive root, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootVector {
    coords: Vec<u32>,
    hooked: bool,
}

impl RootVector {
    /// Builds a vector from raw coordinates; `hooked` is derived from the
    /// presence of a coordinate equal to 2. Returns `None` for the zero vector.
    pub fn new(coords: Vec<u32>) -> Option<Self> {
        let coords = trim(coords);
        if coords.is_empty() {
            return None;
        }
        let hooked = coords.contains(&2);
        Some(Self { coords, hooked })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn hooked(&self) -> bool {
        self.hooked
    }

    /// Coordinate `i` (0-based), zero past the stored length.
    pub fn coord(&self, i: usize) -> u32 {
        self.coords.get(i).copied().unwrap_or(0)
    }

    pub fn coord_sum(&self) -> u32 {
        self.coords.iter().sum()
    }

    /// Ordering used for parts inside a partition: coordinate sum, then
    /// roots supported earlier first (`e_1 < e_2`, `e_1+e_2 < e_2+e_3`).
    pub fn canonical_key(&self) -> (u32, Reverse<&[u32]>) {
        (self.coord_sum(), Reverse(&self.coords))
    }
}

/// Renders as a sum of basis vectors, e.g. `e_1+2e_2+2e_3`.
impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "e_{}", i + 1)?;
        }
        Ok(())
    }
}

/// A weight to be partitioned into positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TargetWeight {
    coords: Vec<u32>,
}

impl TargetWeight {
    /// Arbitrary target. Experimental: only highest roots carry stability
    /// guarantees; counts on other weights are supported but unvalidated.
    /// Returns `None` for the zero vector.
    pub fn from_raw(coords: Vec<u32>) -> Option<Self> {
        let coords = trim(coords);
        (!coords.is_empty()).then_some(Self { coords })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn coord_sum(&self) -> u32 {
        self.coords.iter().sum()
    }
}

fn interval(lo: usize, hi: usize, len: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    v[lo - 1..hi].iter_mut().for_each(|c| *c = 1);
    v
}

/// All positive roots of `t`, each tagged hooked/nonhooked, sorted by
/// [`RootVector::canonical_key`].
pub fn positive_roots(t: LieType) -> Vec<RootVector> {
    let r = t.rank() as usize;
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(r * r);
    let intervals = |out: &mut Vec<Vec<u32>>, skip: Option<(usize, usize)>| {
        for i in 1..=r {
            for j in i..=r {
                if skip != Some((i, j)) {
                    out.push(interval(i, j, r));
                }
            }
        }
    };
    match t.family() {
        Family::A => intervals(&mut out, None),
        Family::B => {
            intervals(&mut out, None);
            // e_i + ... + e_{j-1} + 2e_j + ... + 2e_r
            for i in 1..r {
                for j in i + 1..=r {
                    let mut v = interval(i, r, r);
                    v[j - 1..].iter_mut().for_each(|c| *c = 2);
                    out.push(v);
                }
            }
        }
        Family::C => {
            intervals(&mut out, None);
            // e_1 + 2e_2 + ... + 2e_a + e_{a+1} + ... + e_b, 2 <= a <= b <= r
            for a in 2..=r {
                for b in a..=r {
                    let mut v = interval(1, b, r);
                    v[1..a].iter_mut().for_each(|c| *c = 2);
                    out.push(v);
                }
            }
        }
        Family::D => {
            // e_{r-1} + e_r is not a root: the two end nodes are not adjacent.
            intervals(&mut out, Some((r - 1, r)));
            for i in 1..=r - 2 {
                let mut v = interval(i, r - 2, r);
                v[r - 1] = 1;
                out.push(v);
            }
            // e_i + ... + e_{j-1} + 2e_j + ... + 2e_{r-2} + e_{r-1} + e_r
            for i in 1..r - 2 {
                for j in i + 1..=r - 2 {
                    let mut v = interval(i, r, r);
                    v[j - 1..r - 2].iter_mut().for_each(|c| *c = 2);
                    out.push(v);
                }
            }
        }
    }
    let mut roots: Vec<RootVector> = out
        .into_iter()
        .map(|v| RootVector::new(v).expect("templates are nonzero"))
        .collect();
    roots.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    roots.dedup();
    roots
}

/// The highest root in coordinates: `(1, 2, ..., 2)` for B and C,
/// `(1, 2, ..., 2, 1, 1)` for D and `(1, ..., 1)` for A, each with `r` entries.
pub fn highest_root(t: LieType) -> TargetWeight {
    let r = t.rank() as usize;
    let mut coords = vec![2; r];
    match t.family() {
        Family::A => coords.iter_mut().for_each(|c| *c = 1),
        Family::B | Family::C => {}
        Family::D => {
            coords[r - 2] = 1;
            coords[r - 1] = 1;
        }
    }
    coords[0] = 1;
    TargetWeight { coords }
}

/// Whether the hooked root of largest coordinate sum is unique and equals the
/// highest root. Type A has no hooked roots and always yields `false`, as do
/// B1 and C1.
pub fn sum_check(t: LieType) -> bool {
    let roots = positive_roots(t);
    let Some(max) = roots
        .iter()
        .filter(|v| v.hooked())
        .map(RootVector::coord_sum)
        .max()
    else {
        return false;
    };
    let mut top = roots.iter().filter(|v| v.hooked() && v.coord_sum() == max);
    match (top.next(), top.next()) {
        (Some(v), None) => v.coords() == highest_root(t).coords(),
        _ => false,
    }
}
