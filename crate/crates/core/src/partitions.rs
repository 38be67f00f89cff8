//! Partition bookkeeping for the wall-crossing sums.
//!
//! Two index sets appear. [`ThreefoldPartition`] indexes the threefold sum:
//! a genus `g0` for the remaining bracket, the genera of the
//! `mu_{g,1}` insertions (`g1`) and those of the `mu_{g,0}` insertions
//! (`g2`). [`StablePartition`] is the general wall-crossing index,
//! restricted to marking counts 0 and 1.
//!
//! All multisets are stored weakly decreasing, so equal multisets compare
//! equal and enumeration never double counts. Prefactors that recover the
//! count of ordered arrangements are applied by the callers.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts sum to {parts} but the total is {total}")]
    PartsMismatch { total: u64, parts: u64 },
    #[error("wall weight must be positive, got {0}")]
    NonPositiveWall(Rat),
}

/// `total! / prod(parts!)`.
pub fn multinomial(total: u64, parts: &[u64]) -> Result<BigUint, PartitionError> {
    let sum: u64 = parts.iter().sum();
    if sum != total {
        return Err(PartitionError::PartsMismatch { total, parts: sum });
    }
    // product of binomials avoids the big intermediate factorial
    let mut acc = BigUint::one();
    let mut placed = 0u64;
    for &p in parts {
        for i in 1..=p {
            acc *= placed + i;
            acc /= i;
        }
        placed += p;
    }
    Ok(acc)
}

/// Multiplicities of the distinct values in `parts`, by increasing value.
pub fn multiplicities(parts: &[u32]) -> Vec<u64> {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    counts.into_values().collect()
}

/// Weakly decreasing partitions of `total` into at most `max_len` positive
/// parts, in reverse lexicographic order.
pub fn integer_partitions(total: u32, max_len: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, max_len, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThreefoldPartition {
    pub g0: u32,
    /// Genera of the `mu_{g,1}` insertions, weakly decreasing.
    pub g1: Vec<u32>,
    /// Genera of the `mu_{g,0}` insertions, weakly decreasing.
    pub g2: Vec<u32>,
}

impl ThreefoldPartition {
    pub fn genus(&self) -> u32 {
        self.g0 + self.g1.iter().sum::<u32>() + self.g2.iter().sum::<u32>()
    }

    /// Genus added on top of the `g0` bracket.
    pub fn excess(&self) -> u32 {
        self.genus() - self.g0
    }

    pub fn k1(&self) -> usize {
        self.g1.len()
    }

    pub fn k2(&self) -> usize {
        self.g2.len()
    }
}

/// All threefold partitions of genus `g` with at most `n` insertions of
/// type `mu_{g,1}`, except the trivial one `(g, [], [])`.
pub fn enumerate_threefold_partitions(g: u32, n: usize) -> Vec<ThreefoldPartition> {
    let mut out = Vec::new();
    for g0 in 0..g {
        out.extend(partitions_over(g0, g - g0, n));
    }
    out
}

/// Threefold partitions with bracket genus `g0` adding exactly `excess`
/// (which must be positive for the result to be non-trivial).
pub fn partitions_over(g0: u32, excess: u32, n: usize) -> Vec<ThreefoldPartition> {
    let mut out = Vec::new();
    for s1 in 0..=excess {
        let s2 = excess - s1;
        for g1 in integer_partitions(s1, n) {
            for g2 in integer_partitions(s2, usize::MAX) {
                if g1.is_empty() && g2.is_empty() {
                    continue;
                }
                out.push(ThreefoldPartition {
                    g0,
                    g1: g1.clone(),
                    g2,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StablePart {
    pub genus: u32,
    /// Number of markings carried by the part, 0 or 1.
    pub markings: u8,
    /// Ramification profile over the divisor at infinity, weakly decreasing.
    pub eta: Vec<u32>,
}

impl StablePart {
    /// `2 g - 2 + |eta| + l(eta) + markings / 2`.
    pub fn weight(&self) -> Rat {
        let eta_sum: u32 = self.eta.iter().sum();
        int(2 * i64::from(self.genus) - 2 + i64::from(eta_sum) + self.eta.len() as i64)
            + Rat::new(i64::from(self.markings).into(), 2.into())
    }

    /// Contribution `g + l(eta) - 1` to the total genus.
    pub fn genus_contribution(&self) -> u32 {
        self.genus + self.eta.len() as u32 - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StablePartition {
    pub g0: u32,
    /// Weakly decreasing, non-empty.
    pub parts: Vec<StablePart>,
}

impl StablePartition {
    pub fn genus(&self) -> u32 {
        self.g0 + self.parts.iter().map(StablePart::genus_contribution).sum::<u32>()
    }

    pub fn marked_parts(&self) -> usize {
        self.parts.iter().filter(|p| p.markings == 1).count()
    }
}

/// The part types of weight `d0` with `1 <= |eta| <= eta_cap`.
///
/// A genus-0 part with a single ramification point and no marking has no
/// moduli to contribute and would repeat without bound, so it is excluded.
fn part_types(d0: &Rat, eta_cap: u32) -> Vec<StablePart> {
    let mut types = Vec::new();
    for size in 1..=eta_cap {
        for eta in integer_partitions(size, usize::MAX) {
            for markings in 0..=1u8 {
                // 2g = d0 + 2 - |eta| - l(eta) - markings/2
                let two_g = d0 + int(2 - i64::from(size) - eta.len() as i64)
                    - Rat::new(i64::from(markings).into(), 2.into());
                if !two_g.is_integer() || two_g.is_negative() {
                    continue;
                }
                let two_g = two_g.to_integer();
                if (&two_g % 2u32) != Zero::zero() {
                    continue;
                }
                let genus: u32 = (two_g / 2u32).try_into().expect("genus fits in u32");
                let part = StablePart {
                    genus,
                    markings,
                    eta: eta.clone(),
                };
                if part.genus_contribution() == 0 && markings == 0 {
                    continue;
                }
                types.push(part);
            }
        }
    }
    types.sort_by(|a, b| b.cmp(a));
    types
}

/// Stable partitions of total genus `g` and `n` markings at wall `d0`, with
/// at least one part and every ramification profile of size at most
/// `eta_cap`. Marked parts use distinct markings, so at most `n` of them occur.
pub fn enumerate_stable_partitions(
    g: i64,
    n: usize,
    d0: &Rat,
    eta_cap: u32,
) -> Result<Vec<StablePartition>, PartitionError> {
    if !d0.is_positive() {
        return Err(PartitionError::NonPositiveWall(d0.clone()));
    }
    if g < 0 {
        return Ok(Vec::new());
    }
    let types = part_types(d0, eta_cap);

    fn go(
        types: &[StablePart],
        from: usize,
        genus_left: u32,
        marks_left: usize,
        cur: &mut Vec<StablePart>,
        out: &mut Vec<StablePartition>,
    ) {
        if !cur.is_empty() {
            out.push(StablePartition {
                g0: genus_left,
                parts: cur.clone(),
            });
        }
        for (i, t) in types.iter().enumerate().skip(from) {
            let need = t.genus_contribution();
            let marks = usize::from(t.markings);
            if need > genus_left || marks > marks_left {
                continue;
            }
            cur.push(t.clone());
            go(types, i, genus_left - need, marks_left - marks, cur, out);
            cur.pop();
        }
    }

    let mut out = Vec::new();
    go(&types, 0, g as u32, n, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}
