//! Acceptance suite: every shipping criterion as one test, each printing a
//! `criterion N ...: PASS` line (visible with `--nocapture`).  The heavy
//! `Sp_6(2)` sweep is shared through the library cache, so it runs once per
//! test process no matter which tests execute.
//!
//! Import-completed checks (criterion 4) activate when the environment
//! variable `FINEGRAD_IMPORT_DIR` points at a directory of cycle-index
//! files covering m = 4, 5, 6 for all three actions; they are skipped, not
//! failed, otherwise.

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use finegrad::asym::{self, AsymptoticConstants};
use finegrad::census::{self, FieldSpec, Provenance, Series};
use finegrad::gf2;
use finegrad::golden;
use finegrad::orbits::{self, OrbitCounter};
use finegrad::{Action, Sign};

const ACTIONS: [Action; 3] = [Action::Asp, Action::TwistedPlus, Action::TwistedMinus];

fn counter() -> &'static OrbitCounter {
    static COUNTER: OnceLock<OrbitCounter> = OnceLock::new();
    COUNTER.get_or_init(OrbitCounter::new)
}

fn constants() -> &'static AsymptoticConstants {
    static CONSTANTS: OnceLock<AsymptoticConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| asym::solve_constants().expect("constants solve"))
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Log-spaced grid of `n` points over `[lo, hi]`.
fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let ratio = hi / lo;
    (0..n).map(move |i| lo * ratio.powf(i as f64 / (n - 1) as f64))
}

#[test]
fn criterion_01_matrix_table() {
    let start = Instant::now();
    let field = FieldSpec::char_zero();
    for (i, &expected) in golden::MATRIX.iter().enumerate() {
        let n = i as u64 + 1;
        assert_eq!(census::matrix_gradings(n, field), big(expected), "n={n}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "matrix table took {elapsed:?}");
    println!("criterion 1 (matrix table, 100 cells, {elapsed:?}): PASS");
}

#[test]
fn criterion_02_orbit_tables_builtin() {
    let start = Instant::now();
    let c = counter();
    let mut cells = 0;
    for (action, rows) in [
        (Action::Asp, &golden::ORBITS_ASP[..]),
        (Action::TwistedMinus, &golden::ORBITS_MINUS[..]),
        (Action::TwistedPlus, &golden::ORBITS_PLUS[..]),
    ] {
        for &(m, ref values) in rows {
            if m > 3 {
                continue;
            }
            for (qi, &expected) in values.iter().enumerate() {
                let q = qi as u64 + 1;
                assert_eq!(
                    c.orbit_count(m, action, q).unwrap(),
                    big(expected),
                    "{action} m={m} q={q}"
                );
                cells += 1;
            }
        }
    }
    let first_pass = start.elapsed();
    assert!(
        first_pass.as_secs_f64() < 600.0,
        "orbit tables took {first_pass:?}"
    );
    // Once cached, queries are instant.
    let requery = Instant::now();
    c.orbit_count(3, Action::Asp, 12).unwrap();
    let requery = requery.elapsed();
    assert!(requery.as_secs_f64() < 1.0, "cached re-query {requery:?}");
    println!(
        "criterion 2 (orbit tables m<=3, {cells} cells in {first_pass:?}, re-query {requery:?}): PASS"
    );
}

#[test]
fn criterion_03_series_tables_builtin() {
    let start = Instant::now();
    let c = counter();
    let field = FieldSpec::char_zero();

    let mut cells = 0;
    for &(r, type_i, type_ii, total) in &golden::SERIES_A {
        let row = census::series_a(c, r, field).unwrap();
        assert_eq!(row.type_i, Some(big(type_i)), "A r={r} type I");
        cells += 1;
        // Built-in data covers ranks where the two-adic valuation of
        // r + 1 is at most 3; r = 15, 31, 47, 63, 79, 95 need imports.
        if (r + 1) % 16 != 0 {
            assert_eq!(row.type_ii, Some(big(type_ii)), "A r={r} type II");
            assert_eq!(row.total, Some(big(total)), "A r={r} total");
            cells += 2;
        } else {
            assert_eq!(row.provenance, Provenance::NeedsImport { missing_m: 4 });
        }
    }

    for &(r, total) in &golden::SERIES_C {
        let row = census::series_c(c, r).unwrap();
        if r % 8 != 0 {
            assert_eq!(row.total, Some(big(total)), "C r={r}");
            cells += 1;
        } else {
            assert_eq!(row.provenance, Provenance::NeedsImport { missing_m: 4 });
        }
    }

    for &(r, total) in &golden::SERIES_D {
        let row = census::series_d(c, r, field).unwrap();
        if r % 8 != 0 {
            assert_eq!(row.total, Some(big(total)), "D r={r}");
            cells += 1;
        } else {
            assert_eq!(row.provenance, Provenance::NeedsImport { missing_m: 4 });
        }
    }
    // The two pinned special rows.
    assert_eq!(census::series_d(c, 4, field).unwrap().total, Some(big(17)));
    assert_eq!(census::series_d(c, 3, field).unwrap().total, Some(big(8)));

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 900.0,
        "series tables took {elapsed:?}"
    );
    println!("criterion 3 (series tables r<=100 built-in, {cells} cells, {elapsed:?}): PASS");
}

#[test]
fn criterion_04_import_completed_tables() {
    let Some(dir) = std::env::var_os("FINEGRAD_IMPORT_DIR") else {
        println!("criterion 4 (import-completed tables): SKIPPED (set FINEGRAD_IMPORT_DIR to run)");
        return;
    };
    let mut c = OrbitCounter::new();
    let mut loaded = 0;
    for entry in std::fs::read_dir(&dir).expect("readable import directory") {
        let path = entry.expect("directory entry").path();
        if path.is_file() {
            let text = std::fs::read_to_string(&path).expect("readable import file");
            let cidx = orbits::import_cycle_index(&text)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            c.load_import(cidx).expect("valid import");
            loaded += 1;
        }
    }
    for m in 4..=6u32 {
        for action in ACTIONS {
            assert!(
                c.has_data(m, action),
                "import set must cover m={m} action={action}"
            );
        }
    }

    for (action, rows) in [
        (Action::Asp, &golden::ORBITS_ASP[..]),
        (Action::TwistedMinus, &golden::ORBITS_MINUS[..]),
        (Action::TwistedPlus, &golden::ORBITS_PLUS[..]),
    ] {
        for &(m, ref values) in rows {
            for (qi, &expected) in values.iter().enumerate() {
                let q = qi as u64 + 1;
                assert_eq!(
                    c.orbit_count(m, action, q).unwrap(),
                    big(expected),
                    "{action} m={m} q={q}"
                );
            }
        }
    }
    assert_eq!(c.orbit_count(5, Action::Asp, 12).unwrap(), big(226160064));

    let field = FieldSpec::char_zero();
    for &(r, type_i, type_ii, total) in &golden::SERIES_A {
        let row = census::series_a(&c, r, field).unwrap();
        assert_eq!(row.type_i, Some(big(type_i)), "A r={r}");
        assert_eq!(row.type_ii, Some(big(type_ii)), "A r={r}");
        assert_eq!(row.total, Some(big(total)), "A r={r}");
    }
    for &(r, total) in &golden::SERIES_C {
        assert_eq!(
            census::series_c(&c, r).unwrap().total,
            Some(big(total)),
            "C r={r}"
        );
    }
    for &(r, total) in &golden::SERIES_D {
        assert_eq!(
            census::series_d(&c, r, field).unwrap().total,
            Some(big(total)),
            "D r={r}"
        );
    }
    assert_eq!(
        census::series_c(&c, 96).unwrap().total,
        Some(big(220645585))
    );
    assert_eq!(
        census::series_d(&c, 96, field).unwrap().total,
        Some(big(17847717516))
    );
    println!("criterion 4 (import-completed tables, {loaded} files): PASS");
}

#[test]
fn criterion_05_oracle_equivalence() {
    let c = counter();
    let mut checks = 0;
    for m in 1..=2u32 {
        for action in ACTIONS {
            for q in 0..=6u64 {
                let direct = orbits::orbits_direct(m, action, q).unwrap();
                let cidx = c.cycle_index(m, action).unwrap();
                let shape = orbits::burnside_shape(&cidx, q).unwrap();
                let series = c.orbit_count(m, action, q).unwrap();
                assert_eq!(direct, shape, "direct vs shape: m={m} {action} q={q}");
                assert_eq!(direct, series, "direct vs series: m={m} {action} q={q}");
                checks += 1;
            }
        }
    }
    assert!(checks >= 36);
    println!("criterion 5 (oracle equivalence, {checks} triples): PASS");
}

#[test]
fn criterion_06_constants() {
    let start = Instant::now();
    let c = constants();
    for (name, expected, tol) in golden::CONSTANTS {
        let got = match name {
            "x0" => c.x0,
            "y0" => c.y0,
            "b0" => c.b0,
            "x1" => c.x1,
            "b1" => c.b1,
            "a0" => c.a0,
            other => panic!("unknown constant {other}"),
        };
        assert!(
            (got - expected).abs() <= tol,
            "{name}: got {got}, want {expected} ± {tol}"
        );
    }
    for (prime, _, a_c) in golden::CHARACTERISTIC_CONSTANTS {
        let got = c.a_c(prime);
        assert!(
            (got - a_c).abs() <= 1e-5,
            "a_{prime}: got {got}, want {a_c} ± 1e-5"
        );
    }
    let residual = c.z0 * (1.0 + 1.0 / c.z0).ln() - 2.0 * (1.0 + c.z0).ln();
    assert!(residual.abs() <= 1e-12, "z0 residual {residual}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0);
    println!("criterion 6 (constants, {elapsed:?}): PASS");
}

#[test]
fn criterion_07_average_slope_char0() {
    let start = Instant::now();
    let field = FieldSpec::char_zero();
    let slope = census::matrix_gradings_average(1_000_000, field)
        - census::matrix_gradings_average(10_000, field);
    let predicted = constants().a0 * 100.0f64.ln();
    assert!(
        (slope - predicted).abs() <= 0.1 * predicted,
        "char 0 slope {slope} not within 10% of {predicted}"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0);
    println!(
        "criterion 7a (average slope char 0: {slope:.4} vs {predicted:.4} ± 10%, {elapsed:?}): PASS"
    );
}

/// The characteristic-2 half of the slope criterion, checked exactly as
/// stated: the measured slope must lie within 10% of a_2 ln(100).
///
/// This check FAILS, and the failure is real, not a coding defect: the
/// claimed density of abelian-group counts over integers coprime to c
/// misses a factor (1 - 1/c).  The Dirichlet series of the restricted
/// count is prod_{k>=1} zeta(ks)(1 - c^{-ks}), whose residue at s = 1 is
/// (1 - 1/c) a_c, not a_c; direct summation confirms it (the density at
/// 10^6 is 0.662219 for c = 2 against (1-1/2) a_2 = 0.662728, and
/// 1.283175 for c = 3 against (1-1/3) a_3 = 1.285409).  The corrected
/// prediction is asserted alongside so the failure isolates the constant,
/// not the computation.
#[test]
fn criterion_07_average_slope_char2() {
    let field = FieldSpec::new(2).unwrap();
    let slope = census::matrix_gradings_average(1_000_000, field)
        - census::matrix_gradings_average(10_000, field);
    let a2 = constants().a_c(2);
    let stated = a2 * 100.0f64.ln();
    let corrected = 0.5 * a2 * 100.0f64.ln();

    // The computation itself is sound: the corrected constant matches.
    assert!(
        (slope - corrected).abs() <= 0.1 * corrected,
        "char 2 slope {slope} disagrees even with the corrected constant {corrected}"
    );

    let pass = (slope - stated).abs() <= 0.1 * stated;
    println!(
        "criterion 7b (average slope char 2: {slope:.4} vs stated {stated:.4} ± 10%): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "char 2 slope is {slope:.4}; the stated band a_2 ln(100) ± 10% = [{:.4}, {:.4}] \
         cannot contain it because the stated density constant is too large by the \
         factor (1 - 1/2): the measured slope matches 0.5 a_2 ln(100) = {corrected:.4} \
         to within 0.3%",
        0.9 * stated,
        1.1 * stated
    );
}

#[test]
fn criterion_08_envelope_properties() {
    let c = constants();

    // Periodicity and bounds on ten thousand log-spaced samples.
    for t in log_grid(1.0, 1e12, 10_000) {
        let b = c.envelope(t);
        assert!(b >= c.b1 - 1e-9 && b <= c.b0 + 1e-9, "bounds at t={t}");
        assert!((c.envelope(8.0 * t) - b).abs() <= 1e-9, "period at t={t}");
    }

    // The scaled gap to the twisted envelopes stays finite and stable when
    // the sampling grid doubles.
    let sup_gap = |n: usize| -> f64 {
        let mut sup: f64 = 0.0;
        for t in log_grid(1e3, 1e12, n) {
            for sign in [Sign::Plus, Sign::Minus] {
                let gap = (c.envelope_pm(t, sign).unwrap() - c.envelope(t)).abs() * t.cbrt();
                sup = sup.max(gap);
            }
        }
        sup
    };
    let coarse = sup_gap(4000);
    let fine = sup_gap(8000);
    assert!(coarse.is_finite() && fine.is_finite());
    let drift = (fine - coarse).abs() / fine;
    assert!(
        drift < 0.05,
        "sup gap unstable under grid doubling: {coarse} vs {fine}"
    );

    // Two-term expansion at non-switch points.  The expansion variable is
    // tau = (2t)^{-1/3}; points within SWITCH_C * t^{-1/3} of the branch
    // switch are excluded, as the expansion itself requires.
    const SWITCH_C: f64 = 10.0;
    let switch_ratio = c.x1 / c.x0;
    let mut tested = 0;
    let mut skipped = 0;
    for t in log_grid(1e4, 1e12, 2000) {
        let phi = asym::pow2_excess(t.cbrt() / c.x0);
        if (phi - switch_ratio).abs() <= SWITCH_C * t.powf(-1.0 / 3.0) {
            skipped += 1;
            continue;
        }
        let b = c.envelope(t);
        let corr = c.envelope_correction(t);
        for sign in [Sign::Plus, Sign::Minus] {
            let two_term =
                (c.envelope_pm(t, sign).unwrap() - b) * (2.0 * t).cbrt() - sign.as_f64() * corr;
            assert!(
                two_term.abs() <= 5.0 * t.powf(-1.0 / 3.0),
                "two-term residual {two_term} at t={t} ({sign:?})"
            );
        }
        tested += 1;
    }
    // The exclusion window scales like t^{-1/3}, so it is wide at the
    // small end of the grid; what matters is that plenty of points remain.
    assert!(
        tested >= 1200,
        "only {tested} non-switch samples ({skipped} excluded)"
    );
    println!(
        "criterion 8 (envelope: bounds+period on 10^4 samples; sup gap {fine:.4} stable within {:.2}%; two-term at {tested} non-switch points): PASS",
        100.0 * drift
    );
}

#[test]
fn criterion_09_binomial_band() {
    let c = constants();
    // Quarter-decade grid over [1e3, 1e12].
    let grid: Vec<f64> = (0..=36)
        .map(|k| 10.0f64.powf(3.0 + k as f64 / 4.0))
        .collect();

    let mut fitted: [f64; 3] = [0.0; 3];
    let mut late: [f64; 3] = [0.0; 3];
    for &t in &grid {
        for (i, action) in ACTIONS.iter().enumerate() {
            let (value, m_star, _) = asym::ln_max_binom(t, *action);
            // The twisted families are compared against the envelope of
            // the actual maximization grid (see `envelope_pm_grid`).
            let predicted = match action {
                Action::Asp => c.envelope(t) * t.powf(2.0 / 3.0),
                Action::TwistedPlus => {
                    2.0f64.powf(-1.0 / 3.0)
                        * c.envelope_pm_grid(t, Sign::Plus).unwrap()
                        * t.powf(2.0 / 3.0)
                }
                Action::TwistedMinus => {
                    2.0f64.powf(-1.0 / 3.0)
                        * c.envelope_pm_grid(t, Sign::Minus).unwrap()
                        * t.powf(2.0 / 3.0)
                }
            };
            let ratio = (value - predicted).abs() / t.ln();
            fitted[i] = fitted[i].max(ratio);
            if t >= 3e7 {
                late[i] = late[i].max(ratio);
            }
            // The maximizing stratum stays within a constant of t^{1/3}.
            assert!(
                (m_star as f64).exp2() <= 4.0 * t.cbrt(),
                "m*={m_star} too large at t={t}"
            );
        }
    }
    // Recorded fitted constants (observed ~0.65, ~0.60, ~0.59 on this
    // grid); the band pins them with margin for platform variation.
    const RECORDED_BAND: [f64; 3] = [1.0, 1.0, 1.0];
    for (i, action) in ACTIONS.iter().enumerate() {
        assert!(
            fitted[i] <= RECORDED_BAND[i],
            "{action}: fitted constant {} exceeds recorded band {}",
            fitted[i],
            RECORDED_BAND[i]
        );
        // The constant must not grow across the grid: the upper half of
        // the grid stays within the overall fit.
        assert!(
            late[i] <= fitted[i] + 1e-12,
            "{action}: band grows across the grid"
        );
    }
    println!(
        "criterion 9 (binomial band, fitted constants asp={:.3} sp+={:.3} sp-={:.3} <= {:?}): PASS",
        fitted[0], fitted[1], fitted[2], RECORDED_BAND
    );
}

#[test]
fn criterion_10_structural_invariants() {
    // Group orders.
    let orders = [(1u32, 6usize), (2, 720), (3, 1_451_520)];
    let mut groups = Vec::new();
    for (m, order) in orders {
        let group = gf2::enumerate_sp(m).unwrap();
        assert_eq!(group.len(), order, "order of the m={m} group");
        groups.push((m, group));
    }

    // Twist vectors form a crossed homomorphism, exhaustively for m <= 2.
    for (m, group) in &groups[..2] {
        for a in group {
            for b in group {
                let lhs = gf2::twist_vector(&a.compose(b));
                let rhs = a.apply(gf2::twist_vector(b)).unwrap() + gf2::twist_vector(a);
                assert_eq!(lhs, rhs, "m={m}");
            }
        }
    }

    // The twisted action preserves the quadratic form: exhaustive for
    // m <= 2, and at least 1e5 sampled pairs for m = 3.
    for (m, group) in &groups {
        let m = *m;
        let dim = 2 * m;
        if m <= 2 {
            for a in group {
                let t_a = gf2::twist_vector(a);
                for bits in 0..(1u16 << dim) {
                    let x = gf2::GF2Vector::new(dim, bits).unwrap();
                    let moved = a.apply(x).unwrap() + t_a;
                    assert_eq!(gf2::q_form(m, moved), gf2::q_form(m, x));
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..100_000 {
                let a = &group[(next() % group.len() as u64) as usize];
                let bits = (next() % (1 << dim)) as u16;
                let t_a = gf2::twist_vector(a);
                let x = gf2::GF2Vector::new(dim, bits).unwrap();
                let moved = a.apply(x).unwrap() + t_a;
                assert_eq!(gf2::q_form(m, moved), gf2::q_form(m, x));
            }
        }
    }

    // Burnside divisibility across every built-in cycle index: the series
    // expansion fails loudly on any non-exact division, so expanding the
    // full range is the assertion.
    let c = counter();
    for m in 1..=3u32 {
        for action in ACTIONS {
            let cidx = c.cycle_index(m, action).unwrap();
            orbits::burnside_gf(&cidx, 128).unwrap();
        }
    }
    println!("criterion 10 (structural invariants): PASS");
}

/// The two Burnside paths agree everywhere the shape path is defined.
#[test]
fn invariant_path_equivalence_to_q40() {
    let c = counter();
    for m in 1..=3u32 {
        for action in ACTIONS {
            let cidx = c.cycle_index(m, action).unwrap();
            let table = orbits::burnside_gf(&cidx, 40).unwrap();
            for q in 0..=40u64 {
                assert_eq!(
                    orbits::burnside_shape(&cidx, q).unwrap(),
                    table.values[q as usize],
                    "m={m} {action} q={q}"
                );
            }
        }
    }
    println!("invariant (shape path = series path, m<=3, q<=40): PASS");
}

/// Lower and upper bounds pinch every computed orbit count.
#[test]
fn invariant_bound_sandwich_to_q101() {
    let c = counter();
    for m in 1..=3u32 {
        for action in ACTIONS {
            for q in 0..=101u64 {
                let count = c.orbit_count(m, action, q).unwrap();
                let (lo, hi) = orbits::orbit_bounds(m, action, q);
                assert!(
                    lo <= count && count <= hi,
                    "sandwich violated: m={m} {action} q={q}"
                );
            }
        }
    }
    println!("invariant (bound sandwich, m<=3, q<=101): PASS");
}

/// Two-transitivity makes tiny multisets rigid: the affine count at
/// q <= 2 is the unrestricted partition count for every m.
#[test]
fn invariant_small_q_rigidity() {
    let c = counter();
    for m in 1..=3u32 {
        for q in 0..=2u64 {
            assert_eq!(
                c.orbit_count(m, Action::Asp, q).unwrap(),
                finegrad::partitions::count_partitions(q),
                "m={m} q={q}"
            );
        }
    }
    println!("invariant (small-q rigidity): PASS");
}

/// Built-in data shadows imports: loading an import for a built-in `m`
/// never changes an already computable value.
#[test]
fn invariant_import_never_overrides_builtin() {
    let reference = counter().orbit_count(2, Action::Asp, 6).unwrap();

    // A structurally valid but numerically wrong index: swap the counts of
    // two equal-weight cycle types.  Validation cannot catch it (sums and
    // weights still match), so shadowing is what protects the values.
    let cidx = gf2::cycle_index_asp(2).unwrap();
    let mut tampered = (*cidx).clone();
    let keys: Vec<_> = tampered.entries.keys().cloned().collect();
    let (a, b) = (keys[1].clone(), keys[2].clone());
    let va = tampered.entries[&a].clone();
    let vb = tampered.entries[&b].clone();
    assert_ne!(va, vb);
    tampered.entries.insert(a, vb);
    tampered.entries.insert(b, va);
    tampered.validate().unwrap();

    let mut c = OrbitCounter::new();
    c.load_import(tampered).unwrap();
    assert_eq!(c.orbit_count(2, Action::Asp, 6).unwrap(), reference);
    assert_eq!(reference, BigUint::from(38u32));
    println!("invariant (imports never override built-in data): PASS");
}

/// Matrix averages stay exact: the float is a ratio of an exact integer
/// sum, so small prefixes match the direct rational.
#[test]
fn invariant_average_is_exact_ratio() {
    let field = FieldSpec::char_zero();
    let direct: BigUint = (1..=1000u64)
        .map(|j| census::matrix_gradings(j, field))
        .sum();
    let expected = direct.to_f64().unwrap() / 1000.0;
    assert_eq!(census::matrix_gradings_average(1000, field), expected);
    let one = census::series_average(counter(), Series::A, 3).unwrap();
    assert!((one - 4.0).abs() < 1e-12);
    println!("invariant (averages are exact ratios): PASS");
}
