//! Integer partitions in multiplicity form.
//!
//! A partition of `k` is stored sparsely as `(part, multiplicity)` pairs in
//! decreasing part order; for large `k` nearly all multiplicities vanish.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::factorial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartitionMultiset {
    weight: u32,
    parts: Vec<(u32, u32)>,
}

impl PartitionMultiset {
    /// Builds a partition from a list of parts in any order. Zero parts are
    /// ignored.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut sorted: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(u32, u32)> = Vec::new();
        for p in sorted {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        let weight = out.iter().map(|&(p, m)| p * m).sum();
        PartitionMultiset { weight, parts: out }
    }

    /// The number being partitioned, `Σ i·λ_i`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of parts `N_k = Σ λ_i`.
    pub fn length(&self) -> u32 {
        self.parts.iter().map(|&(_, m)| m).sum()
    }

    /// `λ_i`, zero when `i` does not occur.
    pub fn multiplicity(&self, part: u32) -> u32 {
        self.parts.iter().find(|&&(p, _)| p == part).map_or(0, |&(_, m)| m)
    }

    /// Nonzero `(i, λ_i)` pairs, largest part first.
    pub fn multiplicities(&self) -> &[(u32, u32)] {
        &self.parts
    }

    /// Parts written out in non-increasing order, e.g. `[4, 1, 1]`.
    pub fn part_list(&self) -> Vec<u32> {
        self.parts.iter().flat_map(|&(p, m)| std::iter::repeat_n(p, m as usize)).collect()
    }

    /// Checks `Σ iλ_i = k`, and `1 ≤ λ_i ≤ ⌊k/i⌋` for every stored part.
    pub fn is_valid(&self) -> bool {
        let k = self.weight;
        let sum: u32 = self.parts.iter().map(|&(p, m)| p * m).sum();
        let strictly_decreasing = self.parts.windows(2).all(|w| w[0].0 > w[1].0);
        sum == k && strictly_decreasing && self.parts.iter().all(|&(p, m)| p >= 1 && m >= 1 && m <= k / p)
    }
}

impl fmt::Display for PartitionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.part_list().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for PartitionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Iterator over the partitions of `k` in decreasing lexicographic order of
/// the part list: `{k}`, `{k−1,1}`, …, `{1,…,1}`.
///
/// Each step rewrites only the tail of the multiplicity stack, so the
/// successor costs amortized constant work.
#[derive(Debug, Clone)]
pub struct Partitions {
    weight: u32,
    current: Option<Vec<(u32, u32)>>,
}

pub fn enumerate_partitions(k: u32) -> Partitions {
    let first = if k == 0 { Vec::new() } else { vec![(k, 1)] };
    Partitions { weight: k, current: Some(first) }
}

impl Iterator for Partitions {
    type Item = PartitionMultiset;

    fn next(&mut self) -> Option<PartitionMultiset> {
        let current = self.current.take()?;
        let out = PartitionMultiset { weight: self.weight, parts: current.clone() };

        let mut stack = current;
        let mut rem = match stack.last() {
            Some(&(1, m)) => {
                stack.pop();
                m
            }
            _ => 0,
        };
        if let Some(&(x, m)) = stack.last() {
            if m == 1 {
                stack.pop();
            } else {
                stack.last_mut().unwrap().1 -= 1;
            }
            rem += x;
            let y = x - 1;
            stack.push((y, rem / y));
            if rem % y > 0 {
                stack.push((rem % y, 1));
            }
            self.current = Some(stack);
        }
        Some(out)
    }
}

/// `p(k)` from Euler's pentagonal-number recurrence
/// `p(n) = Σ_{j≥1} (−1)^{j+1} [p(n − j(3j−1)/2) + p(n − j(3j+1)/2)]`.
pub fn partition_count(k: u32) -> BigInt {
    partition_counts(k).pop().unwrap()
}

/// `p(0), …, p(k)`.
pub fn partition_counts(k: u32) -> Vec<BigInt> {
    let k = k as usize;
    let mut p: Vec<BigInt> = Vec::with_capacity(k + 1);
    p.push(BigInt::one());
    for n in 1..=k {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let mut term = p[n - g1].clone();
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                term += &p[n - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

/// `N_k! / Π λ_i!`.
pub fn multinomial_factor(pm: &PartitionMultiset) -> BigInt {
    let denom: BigInt = pm.multiplicities().iter().map(|&(_, m)| factorial(m as usize)).product();
    factorial(pm.length() as usize) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_matches_the_multiplicity_table() {
        let all: Vec<_> = enumerate_partitions(6).collect();
        let lists: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(
            lists,
            [
                "{6}",
                "{5,1}",
                "{4,2}",
                "{4,1,1}",
                "{3,3}",
                "{3,2,1}",
                "{3,1,1,1}",
                "{2,2,2}",
                "{2,2,1,1}",
                "{2,1,1,1,1}",
                "{1,1,1,1,1,1}"
            ]
        );
        let row = &all[9];
        assert_eq!(row.multiplicity(1), 4);
        assert_eq!(row.multiplicity(2), 1);
        assert_eq!(row.multiplicity(3), 0);
        assert_eq!(row.length(), 5);
    }

    #[test]
    fn zero_has_one_empty_partition() {
        let all: Vec<_> = enumerate_partitions(0).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].length(), 0);
        assert_eq!(all[0].to_string(), "{}");
        assert!(all[0].is_valid());
    }

    #[test]
    fn counts() {
        assert_eq!(partition_count(0), BigInt::from(1));
        assert_eq!(partition_count(6), BigInt::from(11));
        assert_eq!(partition_count(10), BigInt::from(42));
        assert_eq!(partition_count(15), BigInt::from(176));
        assert_eq!(partition_count(100), "190569292".parse::<BigInt>().unwrap());
        assert_eq!(enumerate_partitions(10).count(), 42);
    }

    #[test]
    fn enumeration_agrees_with_recurrence_to_forty() {
        let counts = partition_counts(40);
        for k in 0..=40u32 {
            assert_eq!(BigInt::from(enumerate_partitions(k).count()), counts[k as usize], "k = {k}");
        }
    }

    #[test]
    fn every_partition_is_valid_and_distinct() {
        for k in 0..=25u32 {
            let all: Vec<_> = enumerate_partitions(k).collect();
            assert!(all.iter().all(|p| p.is_valid() && p.weight() == k));
            // strictly decreasing lexicographic order implies uniqueness
            for w in all.windows(2) {
                assert!(w[0].part_list() > w[1].part_list(), "k = {k}");
            }
        }
    }

    #[test]
    fn enumeration_is_reproducible() {
        let a: Vec<_> = enumerate_partitions(18).collect();
        let b: Vec<_> = enumerate_partitions(18).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial_factor(&PartitionMultiset::from_parts(&[2, 1, 1, 1, 1])), BigInt::from(5));
        assert_eq!(multinomial_factor(&PartitionMultiset::from_parts(&[9])), BigInt::from(1));
        assert_eq!(multinomial_factor(&PartitionMultiset::from_parts(&[3, 2, 1])), BigInt::from(6));
        assert_eq!(multinomial_factor(&PartitionMultiset::from_parts(&[])), BigInt::from(1));
    }

    #[test]
    fn from_parts_normalizes() {
        let p = PartitionMultiset::from_parts(&[1, 4, 0, 1]);
        assert_eq!(p.to_string(), "{4,1,1}");
        assert_eq!(p.weight(), 6);
        assert_eq!(p.multiplicities(), &[(4, 1), (1, 2)]);
    }
}
