//! Orbit counting on multisets for the three group actions.
//!
//! Two independent Burnside paths are implemented and cross-checked: the
//! shape-based triple sum ([`burnside_shape`], bounded to small multiset
//! sizes) and the cycle-index generating-function expansion
//! ([`burnside_gf`], the production path).  A third, direct path
//! ([`orbits_direct`]) enumerates canonical multiset representatives on tiny
//! instances and serves as the oracle for both.
//!
//! [`OrbitCounter`] dispatches queries, applies the `m = 0` conventions,
//! serves `m <= 3` from the built-in group enumeration, and larger `m` from
//! imported cycle-index files (see [`import_cycle_index`]).

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{
    self, asp_order, sp_order, CycleIndex, CycleIndexError, Gf2Error, ENUMERATION_BUDGET_M,
};
use crate::partitions::{count_partitions_at_most, fits, shape_census, Partition};
use crate::Action;

/// The shape path enumerates all partitions of `q`, so it is capped.
pub const SHAPE_PATH_MAX_Q: u64 = 40;

/// Cap on generating-function expansion degree.
pub const SERIES_MAX_Q: u64 = 256;

/// Cap on the number of multisets the direct oracle will enumerate.
pub const DIRECT_MAX_MULTISETS: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("cycle index unavailable for m={m}")]
    CycleIndexUnavailable { m: u32 },
    #[error(
        "shape-path budget exceeded: q={q} > {SHAPE_PATH_MAX_Q}; use the generating-function path"
    )]
    ShapeBudget { q: u64 },
    #[error("series budget exceeded: q_max={q_max} > {SERIES_MAX_Q}")]
    SeriesBudget { q_max: u64 },
    #[error("direct-enumeration budget exceeded: m={m}, q={q}")]
    DirectBudget { m: u32, q: u64 },
    #[error(
        "Burnside numerator for q={q} is not divisible by the group order \
         (corrupted cycle index for action {action}, m={m})"
    )]
    Divisibility { action: Action, m: u32, q: u64 },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    InvalidCycleIndex(#[from] CycleIndexError),
}

/// Orbit counts `N(q)` for `q = 0..=q_max` of one action at one `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCountTable {
    pub m: u32,
    pub action: Action,
    pub values: Vec<BigUint>,
}

impl OrbitCountTable {
    pub fn q_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }
}

/// A multiset on the points of an action: a positive multiplicity for each
/// carried point.  Only used by the direct-enumeration cross-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetOnT {
    point_count: u64,
    multiplicities: BTreeMap<u64, u64>,
}

impl MultisetOnT {
    pub fn new(point_count: u64, multiplicities: BTreeMap<u64, u64>) -> Option<Self> {
        let ok = multiplicities
            .iter()
            .all(|(&p, &c)| p < point_count && c >= 1);
        ok.then_some(MultisetOnT {
            point_count,
            multiplicities,
        })
    }

    pub fn from_counts(counts: &[u32]) -> Self {
        MultisetOnT {
            point_count: counts.len() as u64,
            multiplicities: counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(p, &c)| (p as u64, c as u64))
                .collect(),
        }
    }

    pub fn point_count(&self) -> u64 {
        self.point_count
    }

    pub fn size(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, point: u64) -> u64 {
        self.multiplicities.get(&point).copied().unwrap_or(0)
    }
}

/// Number of orbits on multisets of size `q` by the shape-based Burnside
/// sum: group the partitions of `q` by shape, pair each cycle type with
/// each shape through the pigeonhole count, and average over the group.
pub fn burnside_shape(cidx: &CycleIndex, q: u64) -> Result<BigUint, OrbitError> {
    if q > SHAPE_PATH_MAX_Q {
        return Err(OrbitError::ShapeBudget { q });
    }
    let census = shape_census(q, cidx.point_count as u32);
    let numerator: BigUint = cidx
        .entries
        .par_iter()
        .map(|(lambda, count)| {
            let mut acc = BigUint::zero();
            for (mu, shapes) in &census {
                let ways = cached_fits(lambda, mu);
                if !ways.is_zero() {
                    acc += ways * shapes;
                }
            }
            acc * count
        })
        .reduce(BigUint::zero, |a, b| a + b);
    exact_quotient(numerator, cidx, q)
}

/// Fixed-point counts recur across queries with the same cycle type and
/// shape, so the pigeonhole counts are cached globally.
fn cached_fits(lambda: &Partition, mu: &Partition) -> BigUint {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), BigUint>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(lambda.clone(), mu.clone())) {
        return hit.clone();
    }
    let computed = fits(lambda, mu).expect("cycle type and shape have equal weight");
    cache
        .lock()
        .unwrap()
        .insert((lambda.clone(), mu.clone()), computed.clone());
    computed
}

/// Orbit counts for all `q <= q_max` at once, by expanding the cycle-index
/// generating function: each cycle type with part multiplicities `k_i`
/// contributes `c(lambda) * prod_i (1 - t^i)^{-k_i}`.
pub fn burnside_gf(cidx: &CycleIndex, q_max: u64) -> Result<OrbitCountTable, OrbitError> {
    if q_max > SERIES_MAX_Q {
        return Err(OrbitError::SeriesBudget { q_max });
    }
    let n = q_max as usize;
    let mut acc = vec![BigUint::zero(); n + 1];
    for (cycle_type, count) in &cidx.entries {
        let mut series = vec![BigUint::zero(); n + 1];
        series[0] = BigUint::one();
        for &part in cycle_type.parts() {
            // Multiply by 1/(1 - t^part): running sums with stride `part`.
            let step = part as usize;
            for i in step..=n {
                let (lo, hi) = series.split_at_mut(i);
                hi[0] += &lo[i - step];
            }
        }
        for (a, s) in acc.iter_mut().zip(series) {
            *a += s * count;
        }
    }
    let values = acc
        .into_iter()
        .enumerate()
        .map(|(q, numerator)| exact_quotient(numerator, cidx, q as u64))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrbitCountTable {
        m: cidx.m,
        action: cidx.action,
        values,
    })
}

/// Burnside division: the numerator must be exactly divisible by the group
/// order; a remainder signals a corrupted cycle index and is never rounded.
fn exact_quotient(numerator: BigUint, cidx: &CycleIndex, q: u64) -> Result<BigUint, OrbitError> {
    let (quotient, remainder) = numerator.div_rem(&cidx.group_order);
    if !remainder.is_zero() {
        return Err(OrbitError::Divisibility {
            action: cidx.action,
            m: cidx.m,
            q,
        });
    }
    Ok(quotient)
}

/// Dispatches orbit-count queries, owning the caches and any imported
/// cycle indices for `m` beyond the enumeration budget.
#[derive(Default)]
pub struct OrbitCounter {
    imports: HashMap<(u32, Action), Arc<CycleIndex>>,
    tables: Mutex<HashMap<(u32, Action), Arc<OrbitCountTable>>>,
}

impl OrbitCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers an imported cycle index after re-checking its invariants.
    /// Built-in data always wins, so loading an import never changes a
    /// value that was computable without it.
    pub fn load_import(&mut self, cidx: CycleIndex) -> Result<(), OrbitError> {
        cidx.validate()?;
        self.imports.insert((cidx.m, cidx.action), Arc::new(cidx));
        Ok(())
    }

    pub fn imports(&self) -> impl Iterator<Item = &CycleIndex> {
        self.imports.values().map(|arc| arc.as_ref())
    }

    /// Whether `orbit_count(m, action, _)` can be answered.
    pub fn has_data(&self, m: u32, action: Action) -> bool {
        m <= ENUMERATION_BUDGET_M || self.imports.contains_key(&(m, action))
    }

    /// The cycle index serving `(m, action)`: built-in enumeration for
    /// `m <= 3`, an imported file otherwise.
    pub fn cycle_index(&self, m: u32, action: Action) -> Result<Arc<CycleIndex>, OrbitError> {
        if (1..=ENUMERATION_BUDGET_M).contains(&m) {
            return Ok(gf2::builtin_cycle_index(m, action)?);
        }
        self.imports
            .get(&(m, action))
            .cloned()
            .ok_or(OrbitError::CycleIndexUnavailable { m })
    }

    /// Number of orbits on multisets of size `q`.
    ///
    /// `m = 0` is the degenerate case: the affine and twisted-plus actions
    /// have a single point (one multiset of each size), while the
    /// twisted-minus point set is empty (only the empty multiset exists).
    pub fn orbit_count(&self, m: u32, action: Action, q: u64) -> Result<BigUint, OrbitError> {
        if m == 0 {
            return Ok(match action {
                Action::Asp | Action::TwistedPlus => BigUint::one(),
                Action::TwistedMinus => {
                    if q == 0 {
                        BigUint::one()
                    } else {
                        BigUint::zero()
                    }
                }
            });
        }
        let table = self.table(m, action, q)?;
        Ok(table.values[q as usize].clone())
    }

    /// Cached orbit-count table covering at least `q`; grows on demand.
    pub fn table(
        &self,
        m: u32,
        action: Action,
        q: u64,
    ) -> Result<Arc<OrbitCountTable>, OrbitError> {
        if q > SERIES_MAX_Q {
            return Err(OrbitError::SeriesBudget { q_max: q });
        }
        {
            let tables = self.tables.lock().unwrap();
            if let Some(table) = tables.get(&(m, action)) {
                if table.q_max() >= q {
                    return Ok(Arc::clone(table));
                }
            }
        }
        let cidx = self.cycle_index(m, action)?;
        let q_max = q.max(128).min(SERIES_MAX_Q);
        let table = Arc::new(burnside_gf(&cidx, q_max)?);
        let mut tables = self.tables.lock().unwrap();
        let slot = tables
            .entry((m, action))
            .or_insert_with(|| Arc::clone(&table));
        if slot.q_max() < q {
            *slot = Arc::clone(&table);
        }
        Ok(Arc::clone(slot))
    }
}

/// Independent oracle: explicitly partitions the multisets of size `q` into
/// orbits, by counting the multisets that are the lexicographically
/// smallest image over every group element.  Bounded to tiny instances.
pub fn orbits_direct(m: u32, action: Action, q: u64) -> Result<BigUint, OrbitError> {
    if m > 2 {
        return Err(OrbitError::DirectBudget { m, q });
    }
    if m == 0 {
        // Same conventions as `orbit_count`.
        return Ok(match action {
            Action::Asp | Action::TwistedPlus => BigUint::one(),
            Action::TwistedMinus => {
                if q == 0 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            }
        });
    }
    let pc = action.point_count(m);
    let total = multiset_count(pc, q);
    if total > BigUint::from(DIRECT_MAX_MULTISETS) {
        return Err(OrbitError::DirectBudget { m, q });
    }
    if pc == 1 {
        return Ok(BigUint::one());
    }

    // Inverse point permutations of every group element, so that image
    // comparison can walk output positions in order and stop early.
    let group = gf2::enumerate_sp(m)?;
    let n_points = 1usize << (2 * m);
    let inverse_perms: Vec<Vec<u8>> = match action {
        Action::Asp => group
            .iter()
            .map(|a| {
                let mut inv = vec![0u8; n_points];
                for x in 0..n_points {
                    inv[a.apply_bits(x as u16) as usize] = x as u8;
                }
                inv
            })
            .collect(),
        Action::TwistedPlus | Action::TwistedMinus => {
            let (plus, minus) = gf2::t_split(m)?;
            let points = if action == Action::TwistedPlus {
                plus
            } else {
                minus
            };
            let mut pos = vec![u8::MAX; n_points];
            for (i, v) in points.iter().enumerate() {
                pos[v.bits() as usize] = i as u8;
            }
            group
                .iter()
                .map(|a| {
                    let t = gf2::twist_vector(a).bits();
                    let mut inv = vec![0u8; points.len()];
                    for (i, v) in points.iter().enumerate() {
                        let image = pos[(a.apply_bits(v.bits()) ^ t) as usize];
                        inv[image as usize] = i as u8;
                    }
                    inv
                })
                .collect()
        }
    };
    // For the affine action the translations compose with each matrix
    // permutation; for the twisted action there is exactly one map per
    // group element.
    let translations: Vec<u8> = match action {
        Action::Asp => (0..n_points as u8).collect(),
        _ => vec![0],
    };

    let multisets = enumerate_multisets(pc as usize, q);
    let canonical = multisets
        .par_iter()
        .filter(|counts| is_canonical(counts, &inverse_perms, &translations))
        .count();
    Ok(BigUint::from(canonical as u64))
}

/// A multiset is canonical when no group element maps it to a
/// lexicographically smaller multiplicity vector.
fn is_canonical(counts: &[u32], inverse_perms: &[Vec<u8>], translations: &[u8]) -> bool {
    for inv in inverse_perms {
        for &t in translations {
            // image[j] = counts[perm^{-1}(j)]; for the affine action
            // sigma(x) = perm(x) ^ t, so sigma^{-1}(j) = perm^{-1}(j ^ t).
            for (j, &c) in counts.iter().enumerate() {
                let source = inv[j ^ t as usize] as usize;
                let image = counts[source];
                if image < c {
                    return false;
                }
                if image > c {
                    break;
                }
            }
        }
    }
    true
}

fn enumerate_multisets(points: usize, q: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut counts = vec![0u32; points];
    fill_multisets(&mut counts, 0, q, &mut out);
    out
}

fn fill_multisets(counts: &mut Vec<u32>, point: usize, remaining: u64, out: &mut Vec<Vec<u32>>) {
    if point + 1 == counts.len() {
        counts[point] = remaining as u32;
        out.push(counts.clone());
        return;
    }
    for c in 0..=remaining {
        counts[point] = c as u32;
        fill_multisets(counts, point + 1, remaining - c, out);
    }
    counts[point] = 0;
}

fn multiset_count(points: u64, q: u64) -> BigUint {
    num_integer::binomial(BigUint::from(q + points - 1), BigUint::from(q))
}

/// Two-sided bounds on the orbit count: the partition count from below
/// (multisets in one partition class stay in it), the multiset count from
/// above, improved from below by multiset count over the group order
/// (an orbit cannot exceed the group).
pub fn orbit_bounds(m: u32, action: Action, q: u64) -> (BigUint, BigUint) {
    assert!(m >= 1, "bounds need a nonempty group action");
    let pc = action.point_count(m);
    let group = match action {
        Action::Asp => asp_order(m),
        _ => sp_order(m),
    };
    let upper = multiset_count(pc, q);
    let by_group = (&upper + &group - BigUint::one()) / &group;
    let max_parts = pc.min(q).min(u32::MAX as u64) as u32;
    let by_partitions = count_partitions_at_most(max_parts.max(1), q);
    (by_partitions.max(by_group), upper)
}

#[derive(Debug, Error)]
pub enum CycleIndexParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] CycleIndexError),
}

fn line_err(line: usize, msg: impl Into<String>) -> CycleIndexParseError {
    CycleIndexParseError::Line {
        line,
        msg: msg.into(),
    }
}

/// Writes the cycle index in the `cycle-index v1` text format: a fixed
/// header followed by one line per cycle type, `len^mult` pairs with
/// strictly increasing lengths, then the count; lines sorted
/// lexicographically by the type string.
pub fn export_cycle_index(cidx: &CycleIndex, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "cycle-index v1")?;
    writeln!(out, "action={}", cidx.action.tag())?;
    writeln!(out, "m={}", cidx.m)?;
    writeln!(out, "points={}", cidx.point_count)?;
    writeln!(out, "order={}", cidx.group_order)?;
    let mut lines: Vec<String> = cidx
        .entries
        .iter()
        .map(|(cycle_type, count)| format!("{} {}", type_string(cycle_type), count))
        .collect();
    lines.sort_by(|a, b| type_of_line(a).cmp(type_of_line(b)));
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn type_string(cycle_type: &Partition) -> String {
    let mut groups = cycle_type.value_multiplicities();
    groups.reverse(); // strictly increasing lengths
    groups
        .iter()
        .map(|(len, mult)| format!("{len}^{mult}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn type_of_line(line: &str) -> &str {
    match line.rfind(' ') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses and validates the `cycle-index v1` format.  `#` starts a comment
/// line.  Validation failures carry the offending line number; the
/// order-sum and identity checks run on the assembled index.
pub fn import_cycle_index(text: &str) -> Result<CycleIndex, CycleIndexParseError> {
    if text.contains('\r') {
        return Err(line_err(0, "carriage returns are not allowed (LF only)"));
    }
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'));
    let mut header = |key: &str| -> Result<(usize, String), CycleIndexParseError> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| line_err(0, format!("missing header line `{key}`")))?;
        check_whitespace(no, line)?;
        if key.is_empty() {
            return Ok((no, line.to_string()));
        }
        let value = line
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| line_err(no, format!("expected `{key}=<value>`, got `{line}`")))?;
        Ok((no, value.to_string()))
    };

    let (no, magic) = header("")?;
    if magic != "cycle-index v1" {
        return Err(line_err(
            no,
            format!("expected `cycle-index v1`, got `{magic}`"),
        ));
    }
    let (no, action) = header("action")?;
    let action = Action::from_tag(&action)
        .ok_or_else(|| line_err(no, format!("unknown action `{action}`")))?;
    let (no, m) = header("m")?;
    let m: u32 = m
        .parse()
        .map_err(|_| line_err(no, format!("invalid m `{m}`")))?;
    if m == 0 {
        return Err(line_err(no, "m must be at least 1"));
    }
    let (no, points) = header("points")?;
    let points: u64 = points
        .parse()
        .map_err(|_| line_err(no, format!("invalid point count `{points}`")))?;
    let (no, order) = header("order")?;
    let order: BigUint = order
        .parse()
        .map_err(|_| line_err(no, format!("invalid order `{order}`")))?;

    let mut entries: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for (no, line) in lines {
        if line.is_empty() {
            continue;
        }
        check_whitespace(no, line)?;
        let (type_str, count_str) = line
            .rsplit_once(' ')
            .ok_or_else(|| line_err(no, "expected `<len>^<mult>... <count>`"))?;
        let count: BigUint = count_str
            .parse()
            .map_err(|_| line_err(no, format!("invalid count `{count_str}`")))?;
        let mut parts: Vec<u32> = Vec::new();
        let mut prev_len = 0u32;
        for pair in type_str.split(' ') {
            let (len, mult) = pair
                .split_once('^')
                .ok_or_else(|| line_err(no, format!("malformed pair `{pair}`")))?;
            let len: u32 = len
                .parse()
                .map_err(|_| line_err(no, format!("invalid cycle length `{len}`")))?;
            let mult: u32 = mult
                .parse()
                .map_err(|_| line_err(no, format!("invalid multiplicity `{mult}`")))?;
            if len == 0 || mult == 0 {
                return Err(line_err(
                    no,
                    "cycle lengths and multiplicities must be positive",
                ));
            }
            if len <= prev_len {
                return Err(line_err(no, "cycle lengths must be strictly increasing"));
            }
            prev_len = len;
            parts.extend(std::iter::repeat_n(len, mult as usize));
        }
        parts.reverse();
        let cycle_type =
            Partition::new(parts).map_err(|e| line_err(no, format!("invalid cycle type: {e}")))?;
        if cycle_type.weight() != points {
            return Err(line_err(
                no,
                format!(
                    "weight mismatch: cycle type {cycle_type} has weight {}, point count is {points}",
                    cycle_type.weight()
                ),
            ));
        }
        if entries.insert(cycle_type, count).is_some() {
            return Err(line_err(no, "duplicate cycle type"));
        }
    }

    let cidx = CycleIndex {
        m,
        action,
        point_count: points,
        group_order: order,
        entries,
    };
    cidx.validate()?;
    Ok(cidx)
}

fn check_whitespace(no: usize, line: &str) -> Result<(), CycleIndexParseError> {
    if line.ends_with(' ') || line.ends_with('\t') {
        return Err(line_err(no, "trailing whitespace"));
    }
    Ok(())
}
