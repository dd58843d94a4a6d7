mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use finegrad::asym;
use finegrad::census::{self, FieldSpec, Provenance, Series};
use finegrad::golden;
use finegrad::orbits::{import_cycle_index, OrbitCounter, OrbitError};
use finegrad::Action;
use output::{Cell, Format, ImportEntry, OutputDocument};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MISSING_DATA: u8 = 3;

#[derive(Parser)]
#[command(
    name = "finegrad",
    version,
    about = "Exact counts of fine gradings on matrix algebras and classical simple Lie algebras, \
             orbit tables, asymptotic constants, and golden verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a single grading count.
    Count {
        #[arg(long, value_enum)]
        series: SeriesArg,
        /// Matrix size (series M).
        #[arg(long)]
        n: Option<u64>,
        /// Lie rank (series A, B, C, D).
        #[arg(long)]
        rank: Option<u64>,
        /// Field characteristic: 0 or a prime (series M and A only).
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        /// Cycle-index file to load (repeatable).
        #[arg(long = "import")]
        imports: Vec<PathBuf>,
    },
    /// Print a whole table up to an index bound.
    Table {
        #[arg(long, value_enum)]
        series: SeriesArg,
        /// Largest matrix size / rank to include.
        #[arg(long)]
        max: u64,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        #[arg(long = "import")]
        imports: Vec<PathBuf>,
    },
    /// Print orbit counts N(m, q) for q = 1..=qmax.
    Orbits {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        action: ActionArg,
        #[arg(long)]
        qmax: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        #[arg(long = "import")]
        imports: Vec<PathBuf>,
    },
    /// Print the solved asymptotic constants.
    Constants {
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Compare computed values against the embedded reference tables.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        scope: Scope,
        #[arg(long = "import")]
        imports: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    #[value(name = "M")]
    M,
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

impl From<SeriesArg> for Series {
    fn from(s: SeriesArg) -> Series {
        match s {
            SeriesArg::M => Series::M,
            SeriesArg::A => Series::A,
            SeriesArg::B => Series::B,
            SeriesArg::C => Series::C,
            SeriesArg::D => Series::D,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionArg {
    #[value(name = "asp")]
    Asp,
    #[value(name = "sp+")]
    Plus,
    #[value(name = "sp-")]
    Minus,
}

impl From<ActionArg> for Action {
    fn from(a: ActionArg) -> Action {
        match a {
            ActionArg::Asp => Action::Asp,
            ActionArg::Plus => Action::TwistedPlus,
            ActionArg::Minus => Action::TwistedMinus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scope {
    #[value(name = "matrix")]
    Matrix,
    #[value(name = "orbits")]
    Orbits,
    #[value(name = "seriesA")]
    SeriesA,
    #[value(name = "seriesC")]
    SeriesC,
    #[value(name = "seriesD")]
    SeriesD,
    #[value(name = "constants")]
    Constants,
    #[value(name = "all")]
    All,
}

/// A command failure with its exit code; message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<census::CensusError> for Failure {
    fn from(e: census::CensusError) -> Failure {
        let code = match &e {
            census::CensusError::Orbit(OrbitError::CycleIndexUnavailable { .. }) => {
                EXIT_MISSING_DATA
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<OrbitError> for Failure {
    fn from(e: OrbitError) -> Failure {
        let code = match &e {
            OrbitError::CycleIndexUnavailable { .. } => EXIT_MISSING_DATA,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Count {
            series,
            n,
            rank,
            characteristic,
            format,
            imports,
        } => run_count(series.into(), n, rank, characteristic, format, &imports),
        Cmd::Table {
            series,
            max,
            characteristic,
            format,
            imports,
        } => run_table(series.into(), max, characteristic, format, &imports),
        Cmd::Orbits {
            m,
            action,
            qmax,
            format,
            imports,
        } => run_orbits(m, action.into(), qmax, format, &imports),
        Cmd::Constants { format } => run_constants(format),
        Cmd::Verify { scope, imports } => return run_verify(scope, &imports),
    };
    match result {
        Ok(doc) => {
            print!("{}", doc);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_counter(paths: &[PathBuf]) -> Result<(OrbitCounter, Vec<ImportEntry>), Failure> {
    let mut counter = OrbitCounter::new();
    let mut manifest = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let cidx = import_cycle_index(&text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        manifest.push(ImportEntry {
            path: path.display().to_string(),
            action: cidx.action.tag().to_string(),
            m: cidx.m,
        });
        counter.load_import(cidx).map_err(Failure::from)?;
    }
    manifest.sort_by_key(|a| (a.m, a.action.clone()));
    Ok((counter, manifest))
}

fn field_for(series: Series, characteristic: u64) -> Result<FieldSpec, Failure> {
    if characteristic != 0 && !matches!(series, Series::M | Series::A) {
        return Err(Failure::usage(format!(
            "--char is accepted for series M and A only, not {series}"
        )));
    }
    FieldSpec::new(characteristic).map_err(Failure::from)
}

const SERIES_COLUMNS: [&str; 6] = [
    "series",
    "index",
    "type_i",
    "type_ii",
    "total",
    "provenance",
];

fn series_row(row: &census::GradingCountRow) -> Vec<Cell> {
    let opt = |v: &Option<BigUint>| match v {
        Some(n) => Cell::Int(n.clone()),
        None => Cell::Empty,
    };
    let provenance = match row.provenance {
        Provenance::BuiltIn => "built-in",
        Provenance::NeedsImport { .. } => "needs-import",
    };
    vec![
        Cell::Text(row.series.to_string()),
        Cell::Int(BigUint::from(row.index)),
        opt(&row.type_i),
        opt(&row.type_ii),
        opt(&row.total),
        Cell::Text(provenance.to_string()),
    ]
}

fn compute_row(
    counter: &OrbitCounter,
    series: Series,
    index: u64,
    field: FieldSpec,
) -> Result<census::GradingCountRow, Failure> {
    let row = match series {
        Series::M => census::GradingCountRow {
            series: Series::M,
            index,
            type_i: None,
            type_ii: None,
            total: Some(census::matrix_gradings(index.max(1), field)),
            provenance: Provenance::BuiltIn,
        },
        Series::A => census::series_a(counter, index, field)?,
        Series::B => census::GradingCountRow {
            series: Series::B,
            index,
            type_i: None,
            type_ii: None,
            total: Some(census::series_b(index)?),
            provenance: Provenance::BuiltIn,
        },
        Series::C => census::series_c(counter, index)?,
        Series::D => census::series_d(counter, index, field)?,
    };
    Ok(row)
}

fn run_count(
    series: Series,
    n: Option<u64>,
    rank: Option<u64>,
    characteristic: u64,
    format: Format,
    imports: &[PathBuf],
) -> Result<String, Failure> {
    let field = field_for(series, characteristic)?;
    let index = match (series, n, rank) {
        (Series::M, Some(n), None) => n,
        (Series::M, _, _) => return Err(Failure::usage("series M takes --n (and not --rank)")),
        (_, None, Some(r)) => r,
        (_, _, _) => {
            return Err(Failure::usage(format!(
                "series {series} takes --rank (and not --n)"
            )))
        }
    };
    if series == Series::M && index == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let (counter, manifest) = load_counter(imports)?;
    let row = compute_row(&counter, series, index, field)?;
    // Single-count mode is strict: missing data is an error, not a blank.
    row.require_total()?;
    let mut doc = OutputDocument::new(characteristic, SERIES_COLUMNS.to_vec());
    doc.imports = manifest;
    doc.push(series_row(&row));
    Ok(doc.render(format))
}

fn run_table(
    series: Series,
    max: u64,
    characteristic: u64,
    format: Format,
    imports: &[PathBuf],
) -> Result<String, Failure> {
    let field = field_for(series, characteristic)?;
    let first = series.first_index();
    if max < first {
        return Err(Failure::usage(format!(
            "series {series} starts at {first}; --max {max} selects nothing"
        )));
    }
    let (counter, manifest) = load_counter(imports)?;
    let mut doc = OutputDocument::new(characteristic, SERIES_COLUMNS.to_vec());
    doc.imports = manifest;
    for index in first..=max {
        let row = compute_row(&counter, series, index, field)?;
        doc.push(series_row(&row));
    }
    Ok(doc.render(format))
}

fn run_orbits(
    m: u32,
    action: Action,
    qmax: u64,
    format: Format,
    imports: &[PathBuf],
) -> Result<String, Failure> {
    let (counter, manifest) = load_counter(imports)?;
    let mut doc = OutputDocument::new(0, vec!["m", "action", "q", "orbits"]);
    doc.imports = manifest;
    for q in 1..=qmax {
        let count = counter.orbit_count(m, action, q)?;
        doc.push(vec![
            Cell::Int(BigUint::from(m)),
            Cell::Text(action.tag().to_string()),
            Cell::Int(BigUint::from(q)),
            Cell::Int(count),
        ]);
    }
    Ok(doc.render(format))
}

fn run_constants(format: Format) -> Result<String, Failure> {
    let c = asym::solve_constants().expect("constant solving is self-contained");
    let mut doc = OutputDocument::new(0, vec!["name", "value"]);
    let mut push = |name: &str, value: f64| {
        doc.push(vec![Cell::Text(name.to_string()), Cell::Float(value)]);
    };
    push("z0", c.z0);
    push("x0", c.x0);
    push("y0", c.y0);
    push("b0", c.b0);
    push("x1", c.x1);
    push("b1", c.b1);
    push("a0", c.a0);
    for prime in [2u64, 3, 5, 7, 11, 13] {
        push(&format!("a_{prime}"), c.a_c(prime));
    }
    Ok(doc.render(format))
}

enum Outcome {
    Pass,
    Fail { expected: String, got: String },
    Skip { missing_m: u32 },
}

struct Report {
    passed: usize,
    failed: usize,
    skipped: usize,
}

impl Report {
    fn new() -> Report {
        Report {
            passed: 0,
            failed: 0,
            skipped: 0,
        }
    }

    fn record(&mut self, cell: &str, outcome: Outcome) {
        match outcome {
            Outcome::Pass => {
                self.passed += 1;
                println!("{cell}: pass");
            }
            Outcome::Fail { expected, got } => {
                self.failed += 1;
                println!("{cell}: FAIL (expected {expected}, got {got})");
            }
            Outcome::Skip { missing_m } => {
                self.skipped += 1;
                println!("{cell}: skipped (needs import for m={missing_m})");
            }
        }
    }

    fn check_int(&mut self, cell: &str, expected: u64, got: &BigUint) {
        if *got == BigUint::from(expected) {
            self.record(cell, Outcome::Pass);
        } else {
            self.record(
                cell,
                Outcome::Fail {
                    expected: expected.to_string(),
                    got: got.to_string(),
                },
            );
        }
    }

    fn check_float(&mut self, cell: &str, expected: f64, got: f64, tolerance: f64) {
        if (got - expected).abs() <= tolerance {
            self.record(cell, Outcome::Pass);
        } else {
            self.record(
                cell,
                Outcome::Fail {
                    expected: format!("{expected} ± {tolerance}"),
                    got: format!("{got:.7}"),
                },
            );
        }
    }
}

fn run_verify(scope: Scope, imports: &[PathBuf]) -> ExitCode {
    let (counter, _manifest) = match load_counter(imports) {
        Ok(v) => v,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let mut report = Report::new();
    let on = |s: Scope| scope == s || scope == Scope::All;

    if on(Scope::Matrix) {
        verify_matrix(&mut report);
    }
    if on(Scope::Orbits) {
        verify_orbits(&counter, &mut report);
    }
    if on(Scope::SeriesA) {
        verify_series_a(&counter, &mut report);
    }
    if on(Scope::SeriesC) {
        verify_series_cd(&counter, Series::C, &golden::SERIES_C, &mut report);
    }
    if on(Scope::SeriesD) {
        verify_series_cd(&counter, Series::D, &golden::SERIES_D, &mut report);
    }
    if on(Scope::Constants) {
        verify_constants(&mut report);
    }

    println!(
        "verify: {} passed, {} failed, {} skipped",
        report.passed, report.failed, report.skipped
    );
    if report.failed > 0 {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}

fn verify_matrix(report: &mut Report) {
    let field = FieldSpec::char_zero();
    for (i, &expected) in golden::MATRIX.iter().enumerate() {
        let n = i as u64 + 1;
        let got = census::matrix_gradings(n, field);
        report.check_int(&format!("matrix[n={n}]"), expected, &got);
    }
}

fn verify_orbits(counter: &OrbitCounter, report: &mut Report) {
    let sections: [(Action, &[(u32, [u64; 12])]); 3] = [
        (Action::Asp, &golden::ORBITS_ASP),
        (Action::TwistedMinus, &golden::ORBITS_MINUS),
        (Action::TwistedPlus, &golden::ORBITS_PLUS),
    ];
    for (action, rows) in sections {
        for &(m, ref values) in rows {
            for (qi, &expected) in values.iter().enumerate() {
                let q = qi as u64 + 1;
                let cell = format!("orbits[{} m={m} q={q}]", action.tag());
                if !counter.has_data(m, action) {
                    report.record(&cell, Outcome::Skip { missing_m: m });
                    continue;
                }
                match counter.orbit_count(m, action, q) {
                    Ok(got) => report.check_int(&cell, expected, &got),
                    Err(e) => report.record(
                        &cell,
                        Outcome::Fail {
                            expected: expected.to_string(),
                            got: e.to_string(),
                        },
                    ),
                }
            }
        }
    }
}

fn verify_series_a(counter: &OrbitCounter, report: &mut Report) {
    let field = FieldSpec::char_zero();
    for &(r, type_i, type_ii, total) in &golden::SERIES_A {
        match census::series_a(counter, r, field) {
            Ok(row) => {
                report.check_int(
                    &format!("seriesA[r={r} type_i]"),
                    type_i,
                    row.type_i.as_ref().expect("type I is always computable"),
                );
                match (&row.type_ii, row.provenance) {
                    (Some(got_ii), _) => {
                        report.check_int(&format!("seriesA[r={r} type_ii]"), type_ii, got_ii);
                        report.check_int(
                            &format!("seriesA[r={r} total]"),
                            total,
                            row.total.as_ref().expect("complete row"),
                        );
                    }
                    (None, Provenance::NeedsImport { missing_m }) => {
                        report.record(
                            &format!("seriesA[r={r} type_ii]"),
                            Outcome::Skip { missing_m },
                        );
                        report.record(
                            &format!("seriesA[r={r} total]"),
                            Outcome::Skip { missing_m },
                        );
                    }
                    (None, Provenance::BuiltIn) => unreachable!(),
                }
            }
            Err(e) => report.record(
                &format!("seriesA[r={r}]"),
                Outcome::Fail {
                    expected: total.to_string(),
                    got: e.to_string(),
                },
            ),
        }
    }
}

fn verify_series_cd(
    counter: &OrbitCounter,
    series: Series,
    rows: &[(u64, u64)],
    report: &mut Report,
) {
    let field = FieldSpec::char_zero();
    for &(r, expected) in rows {
        let cell = format!("series{series}[r={r}]");
        let row = match series {
            Series::C => census::series_c(counter, r),
            Series::D => census::series_d(counter, r, field),
            _ => unreachable!(),
        };
        match row {
            Ok(row) => match (&row.total, row.provenance) {
                (Some(got), _) => report.check_int(&cell, expected, got),
                (None, Provenance::NeedsImport { missing_m }) => {
                    report.record(&cell, Outcome::Skip { missing_m })
                }
                (None, Provenance::BuiltIn) => unreachable!(),
            },
            Err(e) => report.record(
                &cell,
                Outcome::Fail {
                    expected: expected.to_string(),
                    got: e.to_string(),
                },
            ),
        }
    }
}

fn verify_constants(report: &mut Report) {
    let c = asym::solve_constants().expect("constant solving is self-contained");
    for (name, expected, tolerance) in golden::CONSTANTS {
        let got = match name {
            "x0" => c.x0,
            "y0" => c.y0,
            "b0" => c.b0,
            "x1" => c.x1,
            "b1" => c.b1,
            "a0" => c.a0,
            _ => unreachable!(),
        };
        report.check_float(&format!("constants[{name}]"), expected, got, tolerance);
    }
    for (prime, factor, a_c) in golden::CHARACTERISTIC_CONSTANTS {
        report.check_float(
            &format!("constants[poch_{prime}]"),
            factor,
            asym::pochhammer_factor(prime),
            1e-5,
        );
        report.check_float(&format!("constants[a_{prime}]"), a_c, c.a_c(prime), 1e-5);
    }
}
