//! Integer-partition machinery: exact counts, bounded enumeration, shapes,
//! and the "pigeons into holes" count used by the Burnside sums.
//!
//! All counts are exact [`BigUint`] values.  Counting uses a bounded-part
//! dynamic program memoized per `(max_parts, q)`; enumeration streams
//! partitions in reverse-lexicographic order so downstream golden tests are
//! deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("partition has {len} parts, more than the {max} point(s) available")]
    TooManyParts { len: usize, max: u32 },
    #[error("weights differ: {left} vs {right}")]
    WeightMismatch { left: u64, right: u64 },
    #[error("shape has weight {weight}, expected {expected}")]
    ShapeWeight { weight: u64, expected: u64 },
}

/// A partition: weakly decreasing sequence of positive integers.
/// The empty sequence is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from an already-sorted list of parts.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.contains(&0) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order; zeros are rejected.
    pub fn from_unsorted(parts: impl IntoIterator<Item = u32>) -> Result<Self, PartitionError> {
        let mut parts: Vec<u32> = parts.into_iter().collect();
        if parts.contains(&0) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// `(value, multiplicity)` pairs for the distinct values, descending.
    pub fn value_multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The shape of a partition relative to a point-set size `M`: the sorted
/// multiplicities of its values after zero-padding to exactly `M` entries.
/// Always a partition of `M`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Shape(Partition);

impl Shape {
    pub fn as_partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of partitions `p(q)`, with `p(0) = 1`.
pub fn count_partitions(q: u64) -> BigUint {
    if q == 0 {
        return BigUint::one();
    }
    count_partitions_at_most(q.min(u32::MAX as u64) as u32, q)
}

/// Number of partitions of `q` into at most `max_parts` positive parts.
///
/// Equals `p(q)` whenever `max_parts >= q`.  Computed by the bounded-part
/// dynamic program `p_M(q) = p_{M-1}(q) + p_M(q - M)`, memoized per row.
pub fn count_partitions_at_most(max_parts: u32, q: u64) -> BigUint {
    if q == 0 {
        return BigUint::one();
    }
    if max_parts == 0 {
        return BigUint::zero();
    }
    let m = max_parts.min(q.min(u32::MAX as u64) as u32);
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigUint>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut rows = cache.lock().unwrap();
    extend_rows(&mut rows, m, q as usize);
    rows[&m][q as usize].clone()
}

fn extend_rows(rows: &mut HashMap<u32, Vec<BigUint>>, m: u32, q: usize) {
    for k in 1..=m {
        let lower = if k > 1 {
            rows[&(k - 1)].clone()
        } else {
            Vec::new()
        };
        let row = rows.entry(k).or_insert_with(|| vec![BigUint::one()]);
        while row.len() <= q {
            let i = row.len();
            // p_k(i) = p_{k-1}(i) + p_k(i - k), with p_0(i) = [i == 0].
            let mut v = if k == 1 {
                BigUint::zero()
            } else {
                lower[i].clone()
            };
            if i >= k as usize {
                v += &row[i - k as usize];
            }
            row.push(v);
        }
    }
}

/// Streams every partition of `q` with at most `max_parts` parts exactly
/// once, in reverse-lexicographic order: `(4), (3,1), (2,2), ...`.
pub fn enumerate_partitions(q: u64, max_parts: u32) -> PartitionIter {
    PartitionIter {
        q,
        max_parts,
        current: None,
        done: false,
    }
}

pub struct PartitionIter {
    q: u64,
    max_parts: u32,
    current: Option<Vec<u32>>,
    done: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        match self.current.take() {
            None => {
                if self.q == 0 {
                    self.done = true;
                    return Some(Partition::empty());
                }
                if self.max_parts == 0 || self.q > u32::MAX as u64 {
                    self.done = true;
                    return None;
                }
                let first = vec![self.q as u32];
                self.current = Some(first.clone());
                Some(Partition { parts: first })
            }
            Some(cur) => match next_partition(&cur, self.max_parts) {
                Some(next) => {
                    self.current = Some(next.clone());
                    Some(Partition { parts: next })
                }
                None => {
                    self.done = true;
                    None
                }
            },
        }
    }
}

/// Successor of `cur` in reverse-lexicographic order among partitions with
/// at most `max_parts` parts, or `None` if `cur` is the last one.
fn next_partition(cur: &[u32], max_parts: u32) -> Option<Vec<u32>> {
    let mut suffix_sum: u64 = 0;
    for j in (0..cur.len()).rev() {
        suffix_sum += cur[j] as u64;
        if cur[j] < 2 {
            continue;
        }
        let v = cur[j] - 1;
        let rest = suffix_sum - v as u64;
        let slots = max_parts as u64 - j as u64 - 1;
        if rest > v as u64 * slots {
            continue;
        }
        let mut next: Vec<u32> = cur[..j].to_vec();
        next.push(v);
        let mut rest = rest;
        while rest > 0 {
            let part = rest.min(v as u64) as u32;
            next.push(part);
            rest -= part as u64;
        }
        return Some(next);
    }
    None
}

/// Shape of `kappa` relative to a point set of `m_points` elements:
/// zero-pad `kappa` to `m_points` entries, then sort the multiplicities of
/// the distinct values (including 0) in decreasing order.
pub fn shape_of(kappa: &Partition, m_points: u32) -> Result<Shape, PartitionError> {
    if kappa.len() as u64 > m_points as u64 {
        return Err(PartitionError::TooManyParts {
            len: kappa.len(),
            max: m_points,
        });
    }
    let mut mults: Vec<u32> = kappa
        .value_multiplicities()
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    let zeros = m_points - kappa.len() as u32;
    if zeros > 0 {
        mults.push(zeros);
    }
    mults.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Shape(Partition { parts: mults }))
}

/// Number of ways to fit pigeons of volumes `lambda` into holes of
/// capacities `mu` so that every hole is filled exactly.  Pigeons and holes
/// are distinguishable even when equal.
///
/// Filling proceeds hole by hole (largest first); the pigeons assigned to a
/// hole are chosen as a sub-multiset of the remaining ones, weighted by the
/// number of ways to pick that sub-multiset from distinguishable pigeons.
pub fn fits(lambda: &Partition, mu: &Partition) -> Result<BigUint, PartitionError> {
    if lambda.weight() != mu.weight() {
        return Err(PartitionError::WeightMismatch {
            left: lambda.weight(),
            right: mu.weight(),
        });
    }
    let groups = lambda.value_multiplicities();
    let values: Vec<u32> = groups.iter().map(|&(v, _)| v).collect();
    let counts: Vec<u32> = groups.iter().map(|&(_, c)| c).collect();
    let holes = mu.parts();
    let mut memo: HashMap<(Vec<u32>, usize), BigUint> = HashMap::new();
    Ok(fill(&values, counts, holes, 0, &mut memo))
}

fn fill(
    values: &[u32],
    remaining: Vec<u32>,
    holes: &[u32],
    hole: usize,
    memo: &mut HashMap<(Vec<u32>, usize), BigUint>,
) -> BigUint {
    if hole == holes.len() {
        // Weights were equal up front, so no pigeons can be left over.
        debug_assert!(remaining.iter().all(|&c| c == 0));
        return BigUint::one();
    }
    if let Some(v) = memo.get(&(remaining.clone(), hole)) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut selection = vec![0u32; values.len()];
    select(
        values,
        &remaining,
        holes,
        hole,
        0,
        holes[hole] as u64,
        BigUint::one(),
        &mut selection,
        &mut total,
        memo,
    );
    memo.insert((remaining, hole), total.clone());
    total
}

/// Enumerates sub-multisets of the remaining pigeons summing to `target`
/// and recurses into the next hole with the chosen pigeons removed.
#[allow(clippy::too_many_arguments)]
fn select(
    values: &[u32],
    remaining: &[u32],
    holes: &[u32],
    hole: usize,
    group: usize,
    target: u64,
    ways: BigUint,
    selection: &mut Vec<u32>,
    total: &mut BigUint,
    memo: &mut HashMap<(Vec<u32>, usize), BigUint>,
) {
    if target == 0 {
        let rest: Vec<u32> = remaining
            .iter()
            .zip(selection.iter())
            .map(|(&have, &used)| have - used)
            .collect();
        *total += ways * fill(values, rest, holes, hole + 1, memo);
        return;
    }
    if group == values.len() {
        return;
    }
    let value = values[group] as u64;
    let max_take = (remaining[group] as u64).min(target / value) as u32;
    for take in 0..=max_take {
        selection[group] = take;
        let w = if take == 0 {
            ways.clone()
        } else {
            &ways * choose(remaining[group], take)
        };
        select(
            values,
            remaining,
            holes,
            hole,
            group + 1,
            target - take as u64 * value,
            w,
            selection,
            total,
            memo,
        );
    }
    selection[group] = 0;
}

fn choose(n: u32, k: u32) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Number of partitions of `q` with at most `m_points` parts whose shape
/// relative to `m_points` equals `mu`.
pub fn count_with_shape(mu: &Shape, q: u64, m_points: u32) -> Result<BigUint, PartitionError> {
    if mu.as_partition().weight() != m_points as u64 {
        return Err(PartitionError::ShapeWeight {
            weight: mu.as_partition().weight(),
            expected: m_points as u64,
        });
    }
    let census = shape_census(q, m_points);
    Ok(census
        .get(mu.as_partition())
        .cloned()
        .unwrap_or_else(BigUint::zero))
}

/// Groups all partitions of `q` with at most `m_points` parts by shape.
/// The map sums to `count_partitions_at_most(m_points, q)`.
pub fn shape_census(q: u64, m_points: u32) -> std::collections::BTreeMap<Partition, BigUint> {
    let mut census = std::collections::BTreeMap::new();
    for kappa in enumerate_partitions(q, m_points) {
        let shape = shape_of(&kappa, m_points).expect("enumeration respects the part bound");
        *census
            .entry(shape.into_partition())
            .or_insert_with(BigUint::zero) += BigUint::one();
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Independent oracle: p(q) by the pentagonal-number recurrence.
    fn pentagonal_p(n: usize) -> BigUint {
        let mut table: Vec<num_bigint::BigInt> = vec![num_bigint::BigInt::from(0); n + 1];
        table[0] = num_bigint::BigInt::from(1);
        for i in 1..=n {
            let mut sum = num_bigint::BigInt::from(0);
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * &table[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += sign * &table[i - g2];
                }
                k += 1;
            }
            table[i] = sum;
        }
        table[n].to_biguint().unwrap()
    }

    #[test]
    fn small_partition_counts() {
        assert_eq!(count_partitions(0), big(1));
        assert_eq!(count_partitions(1), big(1));
        assert_eq!(count_partitions(5), big(7));
        // Two independent algorithms must agree at 101.
        assert_eq!(count_partitions(101), pentagonal_p(101));
    }

    #[test]
    fn bounded_counts() {
        assert_eq!(count_partitions_at_most(3, 5), big(5));
        assert_eq!(count_partitions_at_most(1, 7), big(1));
        assert_eq!(count_partitions_at_most(9, 12), big(73));
        assert_eq!(count_partitions_at_most(16, 12), big(77));
        // p_M(q) = p(q) once M >= q.
        assert_eq!(count_partitions_at_most(12, 12), count_partitions(12));
        assert_eq!(count_partitions_at_most(40, 12), count_partitions(12));
    }

    #[test]
    fn bounded_count_matches_nearest_integer_formula() {
        // p_3(1 + 2s) equals the integer nearest to (s + 2)^2 / 3.
        for s in 0u64..40 {
            let nearest = ((s + 2) * (s + 2) + 1) / 3; // round((s+2)^2/3); never a half
            assert_eq!(count_partitions_at_most(3, 1 + 2 * s), big(nearest));
        }
    }

    #[test]
    fn enumeration_order_and_counts() {
        let got: Vec<Partition> = enumerate_partitions(4, 2).collect();
        assert_eq!(got, vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);

        let zero: Vec<Partition> = enumerate_partitions(0, 5).collect();
        assert_eq!(zero, vec![Partition::empty()]);

        assert_eq!(enumerate_partitions(12, 9).count(), 73);
        assert_eq!(enumerate_partitions(12, 16).count(), 77);
    }

    #[test]
    fn enumeration_matches_count_up_to_40() {
        for q in 0..=40u64 {
            assert_eq!(
                big(enumerate_partitions(q, q.max(1) as u32).count() as u64),
                count_partitions(q),
                "q={q}"
            );
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(
            shape_of(&p(&[4, 4, 4, 3, 1]), 7).unwrap().as_partition(),
            &p(&[3, 2, 1, 1])
        );
        assert_eq!(
            shape_of(&Partition::empty(), 5).unwrap().as_partition(),
            &p(&[5])
        );
        assert_eq!(
            shape_of(&p(&[2, 2, 1]), 4).unwrap().as_partition(),
            &p(&[2, 1, 1])
        );
        assert!(shape_of(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn shape_invariant_under_value_relabeling() {
        // Applying an injective map to the values leaves the shape alone.
        let kappa = p(&[4, 4, 3, 1, 1]);
        let relabeled = Partition::from_unsorted(kappa.parts().iter().map(|&v| 2 * v + 5)).unwrap();
        assert_eq!(
            shape_of(&kappa, 9).unwrap(),
            shape_of(&relabeled, 9).unwrap()
        );
    }

    #[test]
    fn fits_examples() {
        let m = 6u32;
        let ones = Partition::new(vec![1; m as usize]).unwrap();
        let block = p(&[m]);
        assert_eq!(fits(&ones, &block).unwrap(), big(1));
        assert_eq!(fits(&block, &ones).unwrap(), big(0));
        assert_eq!(fits(&p(&[3, 3, 2]), &p(&[5, 3])).unwrap(), big(2));
        assert!(fits(&p(&[3]), &p(&[2])).is_err());
    }

    #[test]
    fn fits_identity_lower_bound() {
        // Mapping each part to an equal-capacity hole gives at least the
        // product of multiplicity factorials.
        let lambda = p(&[3, 3, 2, 2, 2, 1]);
        let lower = big(2) * big(6) * big(1); // 2! * 3! * 1!
        assert!(fits(&lambda, &lambda).unwrap() >= lower);
    }

    #[test]
    fn fits_multinomial_on_unit_pigeons() {
        // All-ones pigeons into holes mu: multinomial coefficient.
        let mu = p(&[3, 2, 2]);
        let ones = Partition::new(vec![1; 7]).unwrap();
        // 7! / (3! 2! 2!) = 210
        assert_eq!(fits(&ones, &mu).unwrap(), big(210));
    }

    #[test]
    fn count_with_shape_examples() {
        let block = shape_of(&Partition::empty(), 9).unwrap();
        assert_eq!(count_with_shape(&block, 0, 9).unwrap(), big(1));

        let mu = shape_of(&p(&[4, 4, 4, 3, 1]), 7).unwrap();
        assert!(count_with_shape(&mu, 16, 7).unwrap() >= big(1));

        let bad = shape_of(&Partition::empty(), 3).unwrap();
        assert!(count_with_shape(&bad, 5, 7).is_err());
    }

    #[test]
    fn shape_census_partitions_everything() {
        for m_points in [3u32, 7, 16] {
            for q in [0u64, 1, 5, 12] {
                let census = shape_census(q, m_points);
                let total: BigUint = census.values().sum();
                assert_eq!(total, count_partitions_at_most(m_points, q));
            }
        }
    }

    proptest! {
        #[test]
        fn prop_enumeration_count_matches_dp(q in 0u64..30, m in 1u32..12) {
            let listed = enumerate_partitions(q, m).count() as u64;
            prop_assert_eq!(BigUint::from(listed), count_partitions_at_most(m, q));
        }

        #[test]
        fn prop_enumeration_is_strictly_reverse_lex(q in 1u64..25, m in 1u32..8) {
            let all: Vec<Partition> = enumerate_partitions(q, m).collect();
            for w in all.windows(2) {
                prop_assert!(w[0].parts() > w[1].parts());
            }
            for part in &all {
                prop_assert_eq!(part.weight(), q);
                prop_assert!(part.len() <= m as usize);
            }
        }

        #[test]
        fn prop_shape_census_sums(q in 0u64..20, m in 1u32..10) {
            let census = shape_census(q, m);
            let total: BigUint = census.values().sum();
            prop_assert_eq!(total, count_partitions_at_most(m, q));
            for shape in census.keys() {
                prop_assert_eq!(shape.weight(), m as u64);
            }
        }

        #[test]
        fn prop_fits_symmetric_under_input_reordering(seed in proptest::collection::vec(1u32..5, 1..6)) {
            // Feeding the same multiset in any order gives the same count,
            // because construction canonicalizes.
            let lambda = Partition::from_unsorted(seed.clone()).unwrap();
            let mut rev = seed.clone();
            rev.reverse();
            let lambda2 = Partition::from_unsorted(rev).unwrap();
            prop_assert_eq!(&lambda, &lambda2);
            let mu = Partition::new(vec![lambda.weight() as u32]).unwrap();
            prop_assert_eq!(fits(&lambda, &mu).unwrap(), BigUint::from(1u32));
        }
    }
}
