//! Bit-packed linear algebra over GF(2): the symplectic form, the quadratic
//! form and its level sets, generation and full enumeration of `Sp_{2m}(2)`,
//! twist vectors, and the cycle-type distributions of the three group
//! actions used by the orbit counts.
//!
//! Vectors of `Z_2^{2m}` are packed into a `u16` (bit `i-1` holds coordinate
//! `i`), matrices into one `u16` per row, so applying a matrix is a handful
//! of AND/parity instructions.  Points are identified with the integer value
//! of their bits throughout, which is also the order used by [`t_split`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::partitions::Partition;
use crate::{Action, Sign};

/// Largest supported vector dimension `2m`.
pub const MAX_VECTOR_DIM: u32 = 12;

/// Full group enumeration is built in up to this `m`.  `Sp_6(2)` has
/// 1,451,520 elements; the next group is four orders of magnitude larger
/// and is served only through imported cycle indices.
pub const ENUMERATION_BUDGET_M: u32 = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension must be even and between 2 and {MAX_VECTOR_DIM}, got {0}")]
    InvalidDimension(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error(
        "enumeration budget exceeded: m={m} is beyond the built-in limit m<={ENUMERATION_BUDGET_M}"
    )]
    EnumerationBudget { m: u32 },
    #[error("matrix is not invertible over GF(2)")]
    NotInvertible,
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("transvection vector must be nonzero")]
    ZeroVector,
}

/// A vector of `Z_2^{2m}`, bit-packed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GF2Vector {
    dim: u16,
    bits: u16,
}

impl GF2Vector {
    pub fn new(dim: u32, bits: u16) -> Result<Self, Gf2Error> {
        check_dim(dim)?;
        debug_assert!(dim == 16 || bits < (1 << dim));
        Ok(GF2Vector {
            dim: dim as u16,
            bits: bits & mask(dim),
        })
    }

    pub fn zero(dim: u32) -> Result<Self, Gf2Error> {
        Self::new(dim, 0)
    }

    /// The `i`-th standard basis vector, `1 <= i <= dim`.
    pub fn basis(dim: u32, i: u32) -> Result<Self, Gf2Error> {
        check_dim(dim)?;
        if i == 0 || i > dim {
            return Err(Gf2Error::DimensionMismatch {
                expected: dim,
                got: i,
            });
        }
        Self::new(dim, 1 << (i - 1))
    }

    pub fn dim(self) -> u32 {
        self.dim as u32
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    /// Coordinate `x_i`, `1 <= i <= dim`.
    pub fn coordinate(self, i: u32) -> bool {
        debug_assert!(i >= 1 && i <= self.dim as u32);
        (self.bits >> (i - 1)) & 1 == 1
    }

}

/// Vector addition (XOR of the bits); panics on mismatched dimensions.
impl std::ops::Add for GF2Vector {
    type Output = GF2Vector;

    fn add(self, other: GF2Vector) -> GF2Vector {
        assert_eq!(self.dim, other.dim, "adding vectors of different spaces");
        GF2Vector {
            dim: self.dim,
            bits: self.bits ^ other.bits,
        }
    }
}

fn check_dim(dim: u32) -> Result<(), Gf2Error> {
    if !(2..=MAX_VECTOR_DIM).contains(&dim) || !dim.is_multiple_of(2) {
        return Err(Gf2Error::InvalidDimension(dim));
    }
    Ok(())
}

fn mask(dim: u32) -> u16 {
    ((1u32 << dim) - 1) as u16
}

#[inline]
fn parity(x: u16) -> bool {
    x.count_ones() & 1 == 1
}

/// Bits of `x` reversed within the low `dim` positions, so that bit `i-1`
/// moves to bit `dim-i`.
#[inline]
fn rev_bits(dim: u32, x: u16) -> u16 {
    x.reverse_bits() >> (16 - dim)
}

#[inline]
fn sp_bits(dim: u32, x: u16, y: u16) -> bool {
    parity(x & rev_bits(dim, y))
}

#[inline]
fn q_bits(dim: u32, x: u16) -> bool {
    // Q(x) = sum_{i<=m} x_i x_{2m+1-i}; pairing bit i-1 with bit 2m-i.
    parity(x & rev_bits(dim, x) & mask(dim / 2))
}

/// The alternating bilinear form `(x, y) = sum_i x_i y_{2m+1-i}`.
pub fn sp_form(m: u32, x: GF2Vector, y: GF2Vector) -> Result<bool, Gf2Error> {
    let dim = 2 * m;
    if x.dim() != dim || y.dim() != dim {
        return Err(Gf2Error::DimensionMismatch {
            expected: dim,
            got: if x.dim() != dim { x.dim() } else { y.dim() },
        });
    }
    Ok(sp_bits(dim, x.bits, y.bits))
}

/// The quadratic form `Q(x) = sum_{i<=m} x_i x_{2m+1-i}`, whose polar is
/// [`sp_form`].
pub fn q_form(m: u32, x: GF2Vector) -> Result<bool, Gf2Error> {
    let dim = 2 * m;
    if x.dim() != dim {
        return Err(Gf2Error::DimensionMismatch {
            expected: dim,
            got: x.dim(),
        });
    }
    Ok(q_bits(dim, x.bits))
}

/// Splits all `4^m` vectors into `(T_plus, T_minus)` by the value of the
/// quadratic form, each list ordered by the integer value of the bits.
/// The sizes are `2^{m-1}(2^m + 1)` and `2^{m-1}(2^m - 1)`.
pub fn t_split(m: u32) -> Result<(Vec<GF2Vector>, Vec<GF2Vector>), Gf2Error> {
    let dim = 2 * m;
    check_dim(dim)?;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for bits in 0..(1u32 << dim) as u16 {
        let v = GF2Vector {
            dim: dim as u16,
            bits,
        };
        if q_bits(dim, bits) {
            minus.push(v);
        } else {
            plus.push(v);
        }
    }
    Ok((plus, minus))
}

/// An element of `Sp_{2m}(2)`: an invertible matrix over GF(2) preserving
/// the symplectic form.  Row `i` is bit-packed; `(Ax)_i = parity(row_i & x)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SpElement {
    dim: u16,
    rows: [u16; MAX_VECTOR_DIM as usize],
}

impl SpElement {
    /// Validates the invariants (invertible, form-preserving).
    pub fn new(dim: u32, rows: &[u16]) -> Result<Self, Gf2Error> {
        check_dim(dim)?;
        if rows.len() != dim as usize {
            return Err(Gf2Error::DimensionMismatch {
                expected: dim,
                got: rows.len() as u32,
            });
        }
        let mut packed = [0u16; MAX_VECTOR_DIM as usize];
        for (i, &r) in rows.iter().enumerate() {
            packed[i] = r & mask(dim);
        }
        let el = SpElement {
            dim: dim as u16,
            rows: packed,
        };
        if !el.is_invertible() {
            return Err(Gf2Error::NotInvertible);
        }
        if !el.preserves_form() {
            return Err(Gf2Error::NotSymplectic);
        }
        Ok(el)
    }

    pub fn identity(m: u32) -> Result<Self, Gf2Error> {
        let dim = 2 * m;
        check_dim(dim)?;
        let mut rows = [0u16; MAX_VECTOR_DIM as usize];
        for (i, row) in rows.iter_mut().take(dim as usize).enumerate() {
            *row = 1 << i;
        }
        Ok(SpElement {
            dim: dim as u16,
            rows,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim as u32
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.dim as usize]
    }

    #[inline]
    pub fn apply_bits(&self, x: u16) -> u16 {
        let mut out = 0u16;
        for i in 0..self.dim as usize {
            out |= (parity(self.rows[i] & x) as u16) << i;
        }
        out
    }

    pub fn apply(&self, x: GF2Vector) -> Result<GF2Vector, Gf2Error> {
        if x.dim() != self.dim() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(GF2Vector {
            dim: self.dim,
            bits: self.apply_bits(x.bits),
        })
    }

    /// Matrix product: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &SpElement) -> SpElement {
        debug_assert_eq!(self.dim, other.dim);
        let mut rows = [0u16; MAX_VECTOR_DIM as usize];
        for (row, &own) in rows.iter_mut().zip(&self.rows[..self.dim as usize]) {
            // Each product row is the XOR of the other's rows selected by
            // the bits of our row.
            let mut r = 0u16;
            let mut sel = own;
            while sel != 0 {
                let j = sel.trailing_zeros() as usize;
                r ^= other.rows[j];
                sel &= sel - 1;
            }
            *row = r;
        }
        SpElement {
            dim: self.dim,
            rows,
        }
    }

    pub fn is_invertible(&self) -> bool {
        let dim = self.dim as usize;
        let mut rows: Vec<u16> = self.rows[..dim].to_vec();
        let mut rank = 0;
        for col in 0..dim {
            let Some(pivot) = (rank..dim).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in 0..dim {
                if r != rank && (rows[r] >> col) & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank == dim
    }

    /// Checks `(Ae_i, Ae_j) = (e_i, e_j)` on all basis pairs, which by
    /// bilinearity covers all vector pairs.
    pub fn preserves_form(&self) -> bool {
        let dim = self.dim();
        let cols: Vec<u16> = (0..dim).map(|j| self.apply_bits(1 << j)).collect();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let expected = sp_bits(dim, 1 << i, 1 << j);
                if sp_bits(dim, cols[i as usize], cols[j as usize]) != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Full permutation of the `4^m` points (by bit value).
    fn permutation(&self) -> Vec<u8> {
        let n = 1usize << self.dim;
        (0..n).map(|x| self.apply_bits(x as u16) as u8).collect()
    }

    fn pack(&self) -> u64 {
        let dim = self.dim as usize;
        let mut key = 0u64;
        for i in 0..dim {
            key |= (self.rows[i] as u64) << (i * dim);
        }
        key
    }

    fn unpack(dim: u32, key: u64) -> SpElement {
        let mut rows = [0u16; MAX_VECTOR_DIM as usize];
        for (i, row) in rows.iter_mut().take(dim as usize).enumerate() {
            *row = ((key >> (i * dim as usize)) as u16) & mask(dim);
        }
        SpElement {
            dim: dim as u16,
            rows,
        }
    }
}

/// The symplectic transvection `x -> x + (x, v) v`.
pub fn transvection(m: u32, v: GF2Vector) -> Result<SpElement, Gf2Error> {
    let dim = 2 * m;
    check_dim(dim)?;
    if v.dim() != dim {
        return Err(Gf2Error::DimensionMismatch {
            expected: dim,
            got: v.dim(),
        });
    }
    if v.bits == 0 {
        return Err(Gf2Error::ZeroVector);
    }
    let rv = rev_bits(dim, v.bits);
    let mut rows = [0u16; MAX_VECTOR_DIM as usize];
    for (i, row) in rows.iter_mut().take(dim as usize).enumerate() {
        // Row i computes x_i + v_i (x, v); (x, v) = parity(x & rev(v)).
        *row = (1 << i) ^ if (v.bits >> i) & 1 == 1 { rv } else { 0 };
    }
    Ok(SpElement {
        dim: dim as u16,
        rows,
    })
}

/// All `4^m - 1` symplectic transvections.  They generate `Sp_{2m}(2)`;
/// generation is certified post hoc by the order formula in
/// [`enumerate_sp`].
pub fn transvections(m: u32) -> Result<Vec<SpElement>, Gf2Error> {
    let dim = 2 * m;
    check_dim(dim)?;
    (1..(1u32 << dim) as u16)
        .map(|bits| {
            transvection(
                m,
                GF2Vector {
                    dim: dim as u16,
                    bits,
                },
            )
        })
        .collect()
}

/// `|Sp_{2m}(2)| = 2^{m^2} prod_{i=1}^{m} (2^{2i} - 1)`.
pub fn sp_order(m: u32) -> BigUint {
    let mut order = BigUint::one() << (m * m) as usize;
    for i in 1..=m {
        order *= (BigUint::one() << (2 * i) as usize) - BigUint::one();
    }
    order
}

/// `|ASp_{2m}(2)| = 4^m |Sp_{2m}(2)|`.
pub fn asp_order(m: u32) -> BigUint {
    sp_order(m) << (2 * m) as usize
}

/// Breadth-first closure of the transvections under multiplication.
/// The cardinality is checked against the order formula.
pub fn enumerate_sp(m: u32) -> Result<Vec<SpElement>, Gf2Error> {
    if m == 0 || m > ENUMERATION_BUDGET_M {
        return Err(Gf2Error::EnumerationBudget { m });
    }
    let dim = 2 * m;
    let gens = transvections(m)?;
    let identity = SpElement::identity(m)?.pack();

    let expected = sp_order(m);
    let capacity = expected.to_string().parse::<usize>().unwrap_or(1 << 20);

    let mut seen: HashSet<u64> = HashSet::with_capacity(capacity * 2);
    seen.insert(identity);
    let mut frontier = vec![identity];
    let mut all = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &key in &frontier {
            let el = SpElement::unpack(dim, key);
            for g in &gens {
                let prod = el.compose(g).pack();
                if seen.insert(prod) {
                    next.push(prod);
                    all.push(prod);
                }
            }
        }
        frontier = next;
    }
    assert_eq!(
        BigUint::from(all.len()),
        expected,
        "transvection closure must have the full symplectic order"
    );
    all.sort_unstable();
    Ok(all.into_iter().map(|k| SpElement::unpack(dim, k)).collect())
}

/// The unique `t_A` with `(t_A, x) = Q(A^{-1}x) + Q(x)` for all `x`.
///
/// Computed without inverting `A`: with `s` defined by
/// `(s, x) = Q(Ax) + Q(x)`, form invariance gives `t_A = A s`.
pub fn twist_vector(a: &SpElement) -> GF2Vector {
    let dim = a.dim();
    let mut s = 0u16;
    for j in 1..=dim {
        let ej = 1u16 << (j - 1);
        let c = q_bits(dim, a.apply_bits(ej)) ^ q_bits(dim, ej);
        // (s, e_j) = s_{2m+1-j}, i.e. bit 2m-j of s.
        s |= (c as u16) << (dim - j);
    }
    GF2Vector {
        dim: dim as u16,
        bits: a.apply_bits(s),
    }
}

/// Distribution of cycle types over a finite group action: for each cycle
/// type `lambda` (a partition of the point count), the number of group
/// elements inducing a permutation of that type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIndex {
    pub m: u32,
    pub action: Action,
    pub point_count: u64,
    pub group_order: BigUint,
    pub entries: BTreeMap<Partition, BigUint>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleIndexError {
    #[error("order-sum mismatch: entry counts sum to {sum}, group order is {order}")]
    OrderSum { sum: BigUint, order: BigUint },
    #[error(
        "weight mismatch: cycle type {cycle_type} has weight {weight}, point count is {points}"
    )]
    Weight {
        cycle_type: String,
        weight: u64,
        points: u64,
    },
    #[error("point count {points} does not match action {action} at m={m} (expected {expected})")]
    PointCount {
        points: u64,
        action: Action,
        m: u32,
        expected: u64,
    },
    #[error("group order {got} does not match the {action} group at m={m} (expected {expected})")]
    OrderFormula {
        got: BigUint,
        action: Action,
        m: u32,
        expected: BigUint,
    },
    #[error("identity cycle type is missing")]
    MissingIdentity,
}

impl CycleIndex {
    /// Checks all structural invariants: entry counts sum to the group
    /// order, the order matches the group the action tag names, every
    /// cycle type has the right weight, the point count matches the
    /// action, and the identity type is present.
    pub fn validate(&self) -> Result<(), CycleIndexError> {
        let expected = self.action.point_count(self.m);
        if self.point_count != expected {
            return Err(CycleIndexError::PointCount {
                points: self.point_count,
                action: self.action,
                m: self.m,
                expected,
            });
        }
        let expected_order = match self.action {
            Action::Asp => asp_order(self.m),
            _ => sp_order(self.m),
        };
        if self.group_order != expected_order {
            return Err(CycleIndexError::OrderFormula {
                got: self.group_order.clone(),
                action: self.action,
                m: self.m,
                expected: expected_order,
            });
        }
        let mut sum = BigUint::from(0u32);
        for (cycle_type, count) in &self.entries {
            if cycle_type.weight() != self.point_count {
                return Err(CycleIndexError::Weight {
                    cycle_type: cycle_type.to_string(),
                    weight: cycle_type.weight(),
                    points: self.point_count,
                });
            }
            sum += count;
        }
        if sum != self.group_order {
            return Err(CycleIndexError::OrderSum {
                sum,
                order: self.group_order.clone(),
            });
        }
        let identity = Partition::new(vec![1; self.point_count as usize])
            .expect("identity cycle type is well formed");
        if !self.entries.contains_key(&identity) {
            return Err(CycleIndexError::MissingIdentity);
        }
        Ok(())
    }
}

/// Cycle index of the natural affine action of `ASp_{2m}(2)` on all `4^m`
/// points, aggregated over the full element stream.
pub fn cycle_index_asp(m: u32) -> Result<Arc<CycleIndex>, Gf2Error> {
    builtin_cycle_index(m, Action::Asp)
}

/// Cycle index of the twisted action of `Sp_{2m}(2)` on the chosen quadric
/// stratum.
pub fn cycle_index_twisted(m: u32, sign: Sign) -> Result<Arc<CycleIndex>, Gf2Error> {
    builtin_cycle_index(m, sign.action())
}

pub(crate) fn builtin_cycle_index(m: u32, action: Action) -> Result<Arc<CycleIndex>, Gf2Error> {
    if m == 0 || m > ENUMERATION_BUDGET_M {
        return Err(Gf2Error::EnumerationBudget { m });
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, Action), Arc<CycleIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let cache = cache.lock().unwrap();
        if let Some(found) = cache.get(&(m, action)) {
            return Ok(Arc::clone(found));
        }
    }
    // One sweep over the enumerated group produces all three actions, so
    // the expensive m=3 pass happens at most once per process.
    let built = build_cycle_indices(m)?;
    let mut cache = cache.lock().unwrap();
    for idx in built {
        cache
            .entry((m, idx.action))
            .or_insert_with(|| Arc::new(idx));
    }
    Ok(Arc::clone(&cache[&(m, action)]))
}

struct Tally {
    asp: HashMap<Vec<u32>, u64>,
    plus: HashMap<Vec<u32>, u64>,
    minus: HashMap<Vec<u32>, u64>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            asp: HashMap::new(),
            plus: HashMap::new(),
            minus: HashMap::new(),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (map, incoming) in [
            (&mut self.asp, other.asp),
            (&mut self.plus, other.plus),
            (&mut self.minus, other.minus),
        ] {
            for (k, v) in incoming {
                *map.entry(k).or_insert(0) += v;
            }
        }
        self
    }
}

fn build_cycle_indices(m: u32) -> Result<Vec<CycleIndex>, Gf2Error> {
    let group = enumerate_sp(m)?;
    let n_points = 1usize << (2 * m);
    let (t_plus, t_minus) = t_split(m)?;
    // Position of each point inside its stratum; usable for both strata
    // since they are disjoint.
    let mut stratum_pos = vec![0u8; n_points];
    for (i, v) in t_plus.iter().enumerate() {
        stratum_pos[v.bits as usize] = i as u8;
    }
    for (i, v) in t_minus.iter().enumerate() {
        stratum_pos[v.bits as usize] = i as u8;
    }

    let tally = group
        .par_iter()
        .fold(Tally::new, |mut tally, a| {
            let perm = a.permutation();
            let t_a = twist_vector(a).bits;

            // Twisted action on each stratum: x -> Ax + t_A.
            let mut scratch = [0u8; 64];
            for (points, map) in [(&t_plus, &mut tally.plus), (&t_minus, &mut tally.minus)] {
                for (i, v) in points.iter().enumerate() {
                    let image = perm[v.bits as usize] ^ t_a as u8;
                    scratch[i] = stratum_pos[image as usize];
                }
                let ct = cycle_type(&scratch[..points.len()], 0);
                *map.entry(ct).or_insert(0) += 1;
            }

            // Natural affine action: x -> Ax + t for every translation t.
            for t in 0..n_points as u8 {
                let ct = cycle_type(&perm, t);
                *tally.asp.entry(ct).or_insert(0) += 1;
            }
            tally
        })
        .reduce(Tally::new, Tally::merge);

    let finish = |map: HashMap<Vec<u32>, u64>, action: Action, order: BigUint| {
        let entries: BTreeMap<Partition, BigUint> = map
            .into_iter()
            .map(|(parts, count)| {
                let p = Partition::new(parts).expect("cycle types are canonical");
                (p, BigUint::from(count))
            })
            .collect();
        let idx = CycleIndex {
            m,
            action,
            point_count: action.point_count(m),
            group_order: order,
            entries,
        };
        idx.validate()
            .expect("built cycle index satisfies invariants");
        idx
    };

    Ok(vec![
        finish(tally.asp, Action::Asp, asp_order(m)),
        finish(tally.plus, Action::TwistedPlus, sp_order(m)),
        finish(tally.minus, Action::TwistedMinus, sp_order(m)),
    ])
}

/// Cycle type of the permutation `i -> perm[i] ^ xor`, as parts sorted
/// decreasing.
fn cycle_type(perm: &[u8], xor: u8) -> Vec<u32> {
    let n = perm.len();
    let mut visited = 0u64;
    let mut parts = Vec::new();
    for start in 0..n {
        if visited >> start & 1 == 1 {
            continue;
        }
        let mut len = 0u32;
        let mut cur = start;
        loop {
            visited |= 1 << cur;
            len += 1;
            cur = (perm[cur] ^ xor) as usize;
            if cur == start {
                break;
            }
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}
