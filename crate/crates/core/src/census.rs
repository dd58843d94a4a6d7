//! Grading-count formulas for matrix algebras and the classical series.
//!
//! The matrix count is a multiplicative function of the prime factorization
//! (two independent routes computed and compared).  Series B is `r + 1`.
//! Series A/C/D counts stack orbit counts of the three actions over the
//! two-power stratification of `n` ([`orbit_sum`]), with small corrections
//! at two-power ranks and two special cases (`A_2` in characteristic 3,
//! `D_4`).

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::orbits::{OrbitCounter, OrbitError};
use crate::partitions::count_partitions;
use crate::Action;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(u64),
    #[error("characteristic 2 is not supported for the Lie series")]
    CharacteristicTwo,
    #[error("series {series} starts at rank {min}, got {rank}")]
    RankTooSmall { series: Series, rank: u64, min: u64 },
    #[error("type D_4 is classified only in characteristic 0")]
    D4Characteristic,
    #[error("averages are defined for series A, C and D only")]
    UnsupportedAverage,
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// Ground field, described by its characteristic (0 or a prime).
/// Characteristic 2 is valid for matrix algebras only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, CensusError> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(CensusError::InvalidCharacteristic(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn char_zero() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    fn check_lie(self) -> Result<Self, CensusError> {
        if self.characteristic == 2 {
            return Err(CensusError::CharacteristicTwo);
        }
        Ok(self)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    M,
    A,
    B,
    C,
    D,
}

impl Series {
    /// Smallest index carried in a table of this series.
    pub fn first_index(self) -> u64 {
        match self {
            Series::M => 1,
            Series::A => 2,
            Series::B => 2,
            Series::C => 1,
            Series::D => 3,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::M => "M",
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        };
        f.write_str(s)
    }
}

/// Whether a row was fully computed or is waiting on an imported cycle
/// index for the named `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    BuiltIn,
    NeedsImport { missing_m: u32 },
}

/// One row of an output table.  For series A the two sub-counts are
/// carried; `total` is absent exactly when the row needs an import.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingCountRow {
    pub series: Series,
    pub index: u64,
    pub type_i: Option<BigUint>,
    pub type_ii: Option<BigUint>,
    pub total: Option<BigUint>,
    pub provenance: Provenance,
}

impl GradingCountRow {
    fn complete(series: Series, index: u64, total: BigUint) -> Self {
        GradingCountRow {
            series,
            index,
            type_i: None,
            type_ii: None,
            total: Some(total),
            provenance: Provenance::BuiltIn,
        }
    }

    /// The total, or the missing-data error for single-count queries.
    pub fn require_total(&self) -> Result<BigUint, CensusError> {
        match (&self.total, self.provenance) {
            (Some(t), _) => Ok(t.clone()),
            (None, Provenance::NeedsImport { missing_m }) => {
                Err(OrbitError::CycleIndexUnavailable { m: missing_m }.into())
            }
            (None, Provenance::BuiltIn) => unreachable!("complete rows carry a total"),
        }
    }
}

/// Number of isomorphism classes of abelian groups of order `l`: the
/// product of partition numbers of the prime-power multiplicities.
pub fn abelian_group_count(l: u64) -> BigUint {
    assert!(l >= 1);
    factorize(l)
        .into_iter()
        .map(|(_, alpha)| count_partitions(alpha as u64))
        .product()
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut alpha = 0;
            while n.is_multiple_of(d) {
                n /= d;
                alpha += 1;
            }
            out.push((d, alpha));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Partial sum `p(0) + ... + p(alpha)` of the partition numbers.
fn partition_partial_sum(alpha: u32) -> BigUint {
    (0..=alpha as u64).map(count_partitions).sum()
}

/// Number of fine gradings on the `n x n` matrix algebra.
///
/// Computed by two independent routes which must agree: the divisor sum of
/// abelian-group counts over divisors coprime to the characteristic, and
/// the product over primes of partition-number partial sums.
pub fn matrix_gradings(n: u64, field: FieldSpec) -> BigUint {
    assert!(n >= 1);
    let p = field.characteristic();

    let product: BigUint = factorize(n)
        .into_iter()
        .filter(|&(prime, _)| prime != p)
        .map(|(_, alpha)| partition_partial_sum(alpha))
        .product();

    let mut divisor_sum = BigUint::zero();
    for d in divisors(n) {
        if p == 0 || d % p != 0 {
            divisor_sum += abelian_group_count(d);
        }
    }
    assert_eq!(
        product, divisor_sum,
        "the two matrix-count routes must agree at n={n}"
    );
    product
}

/// Average of the matrix counts over sizes `1..=n`, exact sum internally.
///
/// Uses a smallest-prime-factor sieve, so the million range stays cheap.
pub fn matrix_gradings_average(n: u64, field: FieldSpec) -> f64 {
    assert!(n >= 1);
    assert!(n <= 100_000_000, "sieve memory grows linearly in n");
    let p = field.characteristic();
    let n = n as usize;

    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }

    // Largest exponent of any prime power <= n; partial sums as u64
    // (they stay far below 2^64 for feasible exponents).
    let max_alpha = (usize::BITS - n.leading_zeros()) as usize;
    let mut psum = vec![0u64; max_alpha + 2];
    let mut acc = 0u64;
    for (alpha, slot) in psum.iter_mut().enumerate() {
        acc += count_partitions(alpha as u64)
            .to_u64()
            .expect("partition numbers of small arguments fit u64");
        *slot = acc;
    }

    let mut sum: u128 = 1; // j = 1 contributes one grading
    for j in 2..=n {
        let mut rest = j;
        let mut value = 1u64;
        while rest > 1 {
            let prime = spf[rest] as usize;
            let mut alpha = 0usize;
            while rest % prime == 0 {
                rest /= prime;
                alpha += 1;
            }
            if prime as u64 != p {
                value *= psum[alpha];
            }
        }
        sum += value as u128;
    }
    sum as f64 / n as f64
}

fn two_adic(n: u64) -> (u32, u64) {
    assert!(n >= 1);
    let alpha = n.trailing_zeros();
    (alpha, n >> alpha)
}

fn is_power_of_two(n: u64) -> bool {
    n >= 1 && n & (n - 1) == 0
}

/// Sum of orbit counts over the two-power stratification of `n`:
/// with `n = 2^alpha k` (`k` odd), the counts `N(m, 2^{alpha-m} k - 2s)`
/// summed over `0 <= m <= alpha` and `0 <= s <= floor(2^{alpha-m-1} k)`.
///
/// Availability of every stratum is checked up front, so a missing cycle
/// index is reported with the smallest missing `m` and no wasted work.
pub fn orbit_sum(counter: &OrbitCounter, n: u64, action: Action) -> Result<BigUint, OrbitError> {
    assert!(n >= 1);
    let (alpha, k) = two_adic(n);
    for m in 1..=alpha {
        if !counter.has_data(m, action) {
            return Err(OrbitError::CycleIndexUnavailable { m });
        }
    }
    let mut sum = BigUint::zero();
    for m in 0..=alpha {
        let stratum = (k as u128) << (alpha - m); // 2^{alpha-m} k
        let stratum = stratum as u64;
        // s ranges to floor(2^{alpha-m-1} k) = floor(stratum / 2).
        for s in 0..=(stratum / 2) {
            sum += counter.orbit_count(m, action, stratum - 2 * s)?;
        }
    }
    Ok(sum)
}

/// Type I count for `A_r`: the matrix count at `r + 1`, less two at powers
/// of two.
pub fn series_a_type_i(r: u64, field: FieldSpec) -> Result<BigUint, CensusError> {
    check_rank(Series::A, r)?;
    let field = field.check_lie()?;
    let mut count = matrix_gradings(r + 1, field);
    if is_power_of_two(r + 1) {
        count -= BigUint::from(2u32);
    }
    Ok(count)
}

/// Type II count for `A_r`: the affine orbit sum at `r + 1`, less one at
/// powers of two.  Equals `r/2 + 1` for even `r`.
pub fn series_a_type_ii(counter: &OrbitCounter, r: u64) -> Result<BigUint, CensusError> {
    check_rank(Series::A, r)?;
    let mut count = orbit_sum(counter, r + 1, Action::Asp)?;
    if is_power_of_two(r + 1) {
        count -= BigUint::one();
    }
    Ok(count)
}

/// Full `A_r` row.  `A_2` in characteristic 3 is the one special value
/// (total 2, with no type split).  A missing cycle index degrades the row
/// to `NeedsImport` with the type II count left empty.
pub fn series_a(
    counter: &OrbitCounter,
    r: u64,
    field: FieldSpec,
) -> Result<GradingCountRow, CensusError> {
    check_rank(Series::A, r)?;
    let field = field.check_lie()?;
    if r == 2 && field.characteristic() == 3 {
        return Ok(GradingCountRow::complete(Series::A, 2, BigUint::from(2u32)));
    }
    let type_i = series_a_type_i(r, field)?;
    match series_a_type_ii(counter, r) {
        Ok(type_ii) => Ok(GradingCountRow {
            series: Series::A,
            index: r,
            total: Some(&type_i + &type_ii),
            type_i: Some(type_i),
            type_ii: Some(type_ii),
            provenance: Provenance::BuiltIn,
        }),
        Err(CensusError::Orbit(OrbitError::CycleIndexUnavailable { m })) => Ok(GradingCountRow {
            series: Series::A,
            index: r,
            type_i: Some(type_i),
            type_ii: None,
            total: None,
            provenance: Provenance::NeedsImport { missing_m: m },
        }),
        Err(e) => Err(e),
    }
}

/// `B_r` carries exactly `r + 1` fine gradings.
pub fn series_b(r: u64) -> Result<BigUint, CensusError> {
    check_rank(Series::B, r)?;
    Ok(BigUint::from(r + 1))
}

/// `C_r` row: the twisted-minus orbit sum at `2r`, less one at powers of
/// two.  Equals `floor(r/2) + 2` for odd `r`.
pub fn series_c(counter: &OrbitCounter, r: u64) -> Result<GradingCountRow, CensusError> {
    check_rank(Series::C, r)?;
    twisted_series(counter, Series::C, r, Action::TwistedMinus)
}

/// `D_r` row: the twisted-plus orbit sum at `2r`, less one at powers of
/// two.  `D_4` is special (triality): 17 in characteristic 0, unclassified
/// otherwise.
pub fn series_d(
    counter: &OrbitCounter,
    r: u64,
    field: FieldSpec,
) -> Result<GradingCountRow, CensusError> {
    check_rank(Series::D, r)?;
    field.check_lie()?;
    if r == 4 {
        if field.characteristic() != 0 {
            return Err(CensusError::D4Characteristic);
        }
        return Ok(GradingCountRow::complete(
            Series::D,
            4,
            BigUint::from(17u32),
        ));
    }
    twisted_series(counter, Series::D, r, Action::TwistedPlus)
}

fn twisted_series(
    counter: &OrbitCounter,
    series: Series,
    r: u64,
    action: Action,
) -> Result<GradingCountRow, CensusError> {
    match orbit_sum(counter, 2 * r, action) {
        Ok(mut total) => {
            // The subtraction applies to the ranks the classification
            // covers (r >= 2); the carried-along C_1 row keeps the plain
            // sum, which is its true count of 2.
            if is_power_of_two(r) && r >= 2 {
                total -= BigUint::one();
            }
            Ok(GradingCountRow::complete(series, r, total))
        }
        Err(OrbitError::CycleIndexUnavailable { m }) => Ok(GradingCountRow {
            series,
            index: r,
            type_i: None,
            type_ii: None,
            total: None,
            provenance: Provenance::NeedsImport { missing_m: m },
        }),
        Err(e) => Err(e.into()),
    }
}

fn check_rank(series: Series, r: u64) -> Result<(), CensusError> {
    let min = series.first_index();
    if r < min {
        return Err(CensusError::RankTooSmall {
            series,
            rank: r,
            min,
        });
    }
    Ok(())
}

/// Average total over ranks `first..=r_max`, divided by `r_max`; exact sum
/// internally.  Characteristic 0 (only `D_4` would depend on it).
pub fn series_average(
    counter: &OrbitCounter,
    series: Series,
    r_max: u64,
) -> Result<f64, CensusError> {
    let field = FieldSpec::char_zero();
    let mut sum = BigUint::zero();
    for r in series.first_index()..=r_max {
        let row = match series {
            Series::A => series_a(counter, r, field)?,
            Series::C => series_c(counter, r)?,
            Series::D => series_d(counter, r, field)?,
            Series::M | Series::B => return Err(CensusError::UnsupportedAverage),
        };
        sum += row.require_total()?;
    }
    Ok(sum.to_f64().expect("finite totals") / r_max as f64)
}
