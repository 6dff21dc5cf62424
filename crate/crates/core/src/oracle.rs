//! Brute-force weighted counting and explicit enumeration of multiset
//! partitions of a weight into a fixed set of vectors.
//!
//! This is the ground truth the other routes are checked against. It knows
//! nothing about the structure of classical root systems beyond the vectors
//! it is handed.
//!
//! The search walks the vectors in a fixed order (by first nonzero
//! coordinate), choosing a multiplicity for each, and memoizes on
//! `(vector index, remaining weight, hooked budget)`. Ordering by first
//! coordinate gives a cheap dead-end test: once the walk has passed every
//! vector that touches the lowest nonzero coordinate of the remainder, the
//! branch is empty.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::qpoly::QPolynomial;
use crate::root_systems::{highest_root, positive_roots, LieType, RootVector, TargetWeight};

/// Enumeration guard used when callers have no better bound.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration would produce {count} partitions, above the limit of {limit}")]
    LimitExceeded { count: BigInt, limit: usize },
}

/// A multiset of parts, stored in [`RootVector::canonical_key`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionMultiset {
    parts: Vec<RootVector>,
}

impl PartitionMultiset {
    fn from_parts(mut parts: Vec<RootVector>) -> Self {
        parts.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        Self { parts }
    }

    pub fn parts(&self) -> &[RootVector] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn hooked_parts(&self) -> usize {
        self.parts.iter().filter(|p| p.hooked()).count()
    }

    /// Coordinatewise sum of the parts, trailing zeros trimmed.
    pub fn sum(&self) -> Vec<u32> {
        let n = self
            .parts
            .iter()
            .map(|p| p.coords().len())
            .max()
            .unwrap_or(0);
        let mut out = vec![0; n];
        for p in &self.parts {
            for (o, c) in out.iter_mut().zip(p.coords()) {
                *o += c;
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

impl std::fmt::Display for PartitionMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum WeightKey {
    Packed(u128),
    Wide(Box<[u32]>),
}

/// Search state shared by counting and enumeration.
struct Search<'a> {
    roots: Vec<(&'a RootVector, Vec<u32>, usize)>,
    radices: Option<Vec<u128>>,
    /// `None` counts every partition; `Some(k)` only those with exactly `k`
    /// hooked parts.
    hooked_exact: Option<u32>,
    memo: HashMap<(usize, u32, WeightKey), QPolynomial>,
    deadline: Option<Instant>,
    calls: u64,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(roots: &'a [RootVector], target: &[u32], hooked_exact: Option<u32>) -> Self {
        let n = target.len();
        let mut prepared: Vec<(&RootVector, Vec<u32>, usize)> = roots
            .iter()
            .filter(|v| v.coords().len() <= n)
            .map(|v| {
                let mut padded = v.coords().to_vec();
                padded.resize(n, 0);
                let first = padded
                    .iter()
                    .position(|&c| c != 0)
                    .expect("roots are nonzero");
                (v, padded, first)
            })
            .collect();
        prepared.sort_by(|a, b| (a.2, &a.1).cmp(&(b.2, &b.1)));
        prepared.dedup_by(|a, b| a.1 == b.1);

        // mixed-radix place values, when the whole box fits in 128 bits
        let mut radices = Vec::with_capacity(n);
        let mut place: Option<u128> = Some(1);
        for &t in target {
            radices.push(place.unwrap_or(0));
            place = place.and_then(|p| p.checked_mul(t as u128 + 1));
        }
        Self {
            roots: prepared,
            radices: place.map(|_| radices),
            hooked_exact,
            memo: HashMap::new(),
            deadline: None,
            calls: 0,
            aborted: false,
        }
    }

    fn key(&self, remaining: &[u32]) -> WeightKey {
        match &self.radices {
            Some(radices) => WeightKey::Packed(
                remaining
                    .iter()
                    .zip(radices)
                    .map(|(&c, &p)| c as u128 * p)
                    .sum(),
            ),
            None => WeightKey::Wide(remaining.into()),
        }
    }

    fn hooked_ok_at_end(&self, hooked_left: u32) -> bool {
        self.hooked_exact.is_none() || hooked_left == 0
    }

    /// Fast rejection: the lowest nonzero coordinate of `remaining` can no
    /// longer be reached by vectors from `idx` on.
    fn dead_end(&self, idx: usize, remaining: &[u32]) -> Option<bool> {
        remaining
            .iter()
            .position(|&c| c != 0)
            .map(|low| idx >= self.roots.len() || self.roots[idx].2 > low)
    }

    fn count(&mut self, idx: usize, remaining: &mut Vec<u32>, hooked_left: u32) -> QPolynomial {
        match self.dead_end(idx, remaining) {
            None => {
                return if self.hooked_ok_at_end(hooked_left) {
                    QPolynomial::one()
                } else {
                    QPolynomial::zero()
                };
            }
            Some(true) => return QPolynomial::zero(),
            Some(false) => {}
        }
        self.calls += 1;
        if self.calls % 4096 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.aborted = true;
                }
            }
        }
        if self.aborted {
            return QPolynomial::zero();
        }
        let key = (idx, hooked_left, self.key(remaining));
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }

        let (hooked, vector) = {
            let (root, padded, _) = &self.roots[idx];
            (root.hooked(), padded.clone())
        };
        let mut total = QPolynomial::zero();
        let mut taken = 0usize;
        let mut budget = hooked_left;
        loop {
            let sub = self.count(idx + 1, remaining, budget);
            if !sub.is_zero() {
                total += &sub.shift(taken);
            }
            // take one more copy of this vector, if it fits
            let fits = remaining.iter().zip(&vector).all(|(r, v)| r >= v);
            let hook_ok = !hooked || self.hooked_exact.is_none() || budget > 0;
            if !fits || !hook_ok {
                break;
            }
            remaining.iter_mut().zip(&vector).for_each(|(r, v)| *r -= v);
            if hooked && self.hooked_exact.is_some() {
                budget -= 1;
            }
            taken += 1;
        }
        remaining
            .iter_mut()
            .zip(&vector)
            .for_each(|(r, v)| *r += v * taken as u32);

        self.memo.insert(key, total.clone());
        total
    }

    fn enumerate(
        &mut self,
        idx: usize,
        remaining: &mut Vec<u32>,
        hooked_left: u32,
        chosen: &mut Vec<RootVector>,
        out: &mut Vec<PartitionMultiset>,
    ) {
        if self.dead_end(idx, remaining).is_none() {
            if self.hooked_ok_at_end(hooked_left) {
                out.push(PartitionMultiset::from_parts(chosen.clone()));
            }
            return;
        }
        if self.count(idx, remaining, hooked_left).is_zero() {
            return;
        }
        let (root, vector) = {
            let (root, padded, _) = &self.roots[idx];
            ((*root).clone(), padded.clone())
        };
        let mut taken = 0usize;
        let mut budget = hooked_left;
        loop {
            self.enumerate(idx + 1, remaining, budget, chosen, out);
            let fits = remaining.iter().zip(&vector).all(|(r, v)| r >= v);
            let hook_ok = !root.hooked() || self.hooked_exact.is_none() || budget > 0;
            if !fits || !hook_ok {
                break;
            }
            remaining.iter_mut().zip(&vector).for_each(|(r, v)| *r -= v);
            if root.hooked() && self.hooked_exact.is_some() {
                budget -= 1;
            }
            chosen.push(root.clone());
            taken += 1;
        }
        remaining
            .iter_mut()
            .zip(&vector)
            .for_each(|(r, v)| *r += v * taken as u32);
        chosen.truncate(chosen.len() - taken);
    }
}

fn run_count(
    roots: &[RootVector],
    target: &TargetWeight,
    hooked_exact: Option<u32>,
    deadline: Option<Instant>,
) -> Option<QPolynomial> {
    let mut search = Search::new(roots, target.coords(), hooked_exact);
    search.deadline = deadline;
    let mut remaining = target.coords().to_vec();
    let p = search.count(0, &mut remaining, hooked_exact.unwrap_or(0));
    (!search.aborted).then_some(p)
}

/// q-weighted count of multisets of `roots` summing to `target`: the
/// coefficient of `q^i` is the number of such multisets with `i` parts.
/// Unreachable targets give zero.
pub fn count_partitions_q(roots: &[RootVector], target: &TargetWeight) -> QPolynomial {
    run_count(roots, target, None, None).expect("no deadline set")
}

/// The q-weighted count over the zero weight: the empty partition only.
pub fn count_zero_target() -> QPolynomial {
    QPolynomial::one()
}

/// As [`count_partitions_q`], giving up with `None` once `deadline` passes.
pub fn count_partitions_q_until(
    roots: &[RootVector],
    target: &TargetWeight,
    deadline: Instant,
) -> Option<QPolynomial> {
    run_count(roots, target, None, Some(deadline))
}

/// As [`count_partitions_q`], restricted to multisets containing exactly
/// `hooked_parts` hooked vectors.
pub fn count_partitions_q_restricted(
    roots: &[RootVector],
    target: &TargetWeight,
    hooked_parts: u32,
) -> QPolynomial {
    run_count(roots, target, Some(hooked_parts), None).expect("no deadline set")
}

/// Every multiset of `roots` summing to `target`, each exactly once, ordered
/// by part count and then lexicographically by canonical part order.
pub fn enumerate_partitions(
    roots: &[RootVector],
    target: &TargetWeight,
    limit: usize,
) -> Result<Vec<PartitionMultiset>, OracleError> {
    let mut search = Search::new(roots, target.coords(), None);
    let mut remaining = target.coords().to_vec();
    let count = search.count(0, &mut remaining, 0).eval_one();
    if count.to_usize().map_or(true, |c| c > limit) {
        return Err(OracleError::LimitExceeded { count, limit });
    }
    let mut out = Vec::new();
    search.enumerate(0, &mut remaining, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            a.parts
                .iter()
                .map(RootVector::canonical_key)
                .cmp(b.parts.iter().map(RootVector::canonical_key))
        })
    });
    Ok(out)
}

/// The q-analog of Kostant's partition function on the highest root of `t`.
pub fn highest_root_count(t: LieType) -> QPolynomial {
    count_partitions_q(&positive_roots(t), &highest_root(t))
}
