//! `rext`: spectra, degeneracies, symmetry algebras, and representation
//! content of the rationally-extended oscillator systems.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 verification
//! failure (a checked identity did not hold), 3 I/O error.

mod config;
mod report;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{emit_config, parse_config, SpecFields};
use report::*;
use rext_core::algebra::{
    integral_set, printed_structure_polynomial, structure_diff, structure_polynomial,
};
use rext_core::daska::{reproduce_printed_phi, solve_families, union_degeneracy};
use rext_core::error::Error;
use rext_core::model::{Family, StepIndices, SystemSpec};
use rext_core::numerics::component_spectrum_report;
use rext_core::ser::rational_string;
use rext_core::spectrum::{degeneracy_closed_form, level_report, min_level};
use rext_core::unirreps::{build_chains, classify_level};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rext",
    version,
    about = "k-step rationally-extended oscillator systems: exact spectra, degeneracies, and symmetry algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Level-by-level energies, states, and both degeneracy counts
    Spectrum(CommonArgs),
    /// Ladder chains per level with the classification row
    Unirreps(CommonArgs),
    /// Structure polynomial factors, derived and as printed
    StructureFn(CommonArgs),
    /// Deformed-oscillator solution families and union degeneracies
    Daska(CommonArgs),
    /// Check every level's classification row; nonzero exit on mismatch
    VerifyTable3(CommonArgs),
    /// Diagonalize both axes numerically and check the predicted structure
    VerifyNumeric(CommonArgs),
    /// Report discrepancies between derived and printed formulas
    DiffReport(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Unirreps(_) => "unirreps",
            Command::StructureFn(_) => "structure-fn",
            Command::Daska(_) => "daska",
            Command::VerifyTable3(_) => "verify-table3",
            Command::VerifyNumeric(_) => "verify-numeric",
            Command::DiffReport(_) => "diff-report",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Spectrum(a)
            | Command::Unirreps(a)
            | Command::StructureFn(a)
            | Command::Daska(a)
            | Command::VerifyTable3(a)
            | Command::VerifyNumeric(a)
            | Command::DiffReport(a) => a,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// System family: a, b, c, or d
    #[arg(long)]
    family: Option<char>,
    /// Comma-separated step indices m_1 < m_2 < ... < m_k
    #[arg(long, value_delimiter = ',')]
    steps: Option<Vec<u32>>,
    /// Centrifugal parameter of the radial x axis (families b, d)
    #[arg(long = "lx")]
    l_x: Option<u32>,
    /// Centrifugal parameter of the radial y axis (families c, d)
    #[arg(long = "ly")]
    l_y: Option<u32>,
    /// key=value file supplying family/steps/l_x/l_y (flags override)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Lowest level to report (default: the minimal level)
    #[arg(long)]
    nmin: Option<i64>,
    /// Highest level to report
    #[arg(long, default_value_t = 20)]
    nmax: i64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print the system as a config record and exit
    #[arg(long, default_value_t = false)]
    emit_config: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

enum Failure {
    Validation(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Verification(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ToleranceExceeded { .. } | Error::NoMatchingCase { .. } => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Validation(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_ok = matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if usage_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn build_spec(args: &CommonArgs) -> Result<SystemSpec, Failure> {
    let mut fields = SpecFields::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        fields = parse_config(&text).map_err(Failure::Validation)?;
    }
    if let Some(f) = args.family {
        fields.family = Some(f);
    }
    if let Some(steps) = &args.steps {
        fields.steps = Some(steps.clone());
    }
    if let Some(l) = args.l_x {
        fields.l_x = Some(l);
    }
    if let Some(l) = args.l_y {
        fields.l_y = Some(l);
    }

    let letter = fields
        .family
        .ok_or_else(|| Failure::Validation("missing --family (or a config file)".into()))?;
    let family = Family::from_letter(letter)
        .ok_or_else(|| Failure::Validation(format!("--family must be a, b, c, or d, got {letter}")))?;
    let steps = StepIndices::new(
        fields
            .steps
            .ok_or_else(|| Failure::Validation("missing --steps".into()))?,
    )
    .map_err(Failure::from)?;
    SystemSpec::new(family, steps, fields.l_x, fields.l_y).map_err(Failure::from)
}

fn level_range(spec: &SystemSpec, args: &CommonArgs) -> Result<(i64, i64), Failure> {
    let min = min_level(spec);
    let n_min = args.nmin.unwrap_or(min);
    if n_min < min {
        return Err(Failure::Validation(format!(
            "--nmin {n_min} lies below the minimal level {min}"
        )));
    }
    Ok((n_min, args.nmax))
}

fn emit(args: &CommonArgs, text: &str) -> Result<(), Failure> {
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render<T: Serialize>(
    args: &CommonArgs,
    envelope: &Envelope<'_, T>,
    csv: impl FnOnce() -> String,
    table: impl FnOnce() -> String,
) -> Result<(), Failure> {
    let text = match args.format {
        Format::Json => to_json(envelope),
        Format::Csv => csv(),
        Format::Table => table(),
    };
    emit(args, &text)
}

fn run(command: &Command) -> Result<(), Failure> {
    let args = command.args();
    let spec = build_spec(args)?;
    if args.emit_config {
        return emit(args, &emit_config(&spec));
    }
    let (n_min, n_max) = level_range(&spec, args)?;
    let levels = n_min..=n_max;

    match command {
        Command::Spectrum(_) => {
            let mut rows = Vec::new();
            for n in levels {
                rows.push(level_report(&spec, n).map_err(Failure::from)?);
            }
            let ok = rows.iter().all(|r| r.deg_enumerated == r.deg_closed_form);
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: command.name(),
                spec: &spec,
                n_min,
                n_max,
                results: &rows,
            };
            render(args, &envelope, || spectrum_csv(&rows), || spectrum_table(&rows))?;
            if !ok {
                return Err(Failure::Verification(
                    "enumerated degeneracy differs from the closed form".into(),
                ));
            }
            Ok(())
        }

        Command::Unirreps(_) => {
            let mut rows = Vec::new();
            let mut ok = true;
            for n in levels {
                let chains = build_chains(&spec, n)
                    .into_iter()
                    .map(|c| c.nu_x_values)
                    .collect();
                match classify_level(&spec, n) {
                    Ok(c) => rows.push(UnirrepRow {
                        n,
                        classification: Some(c),
                        chains,
                        error: None,
                    }),
                    Err(e) => {
                        ok = false;
                        rows.push(UnirrepRow {
                            n,
                            classification: None,
                            chains,
                            error: Some(e.to_string()),
                        });
                    }
                }
            }
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: command.name(),
                spec: &spec,
                n_min,
                n_max,
                results: &rows,
            };
            render(args, &envelope, || unirrep_csv(&rows), || unirrep_table(&rows))?;
            if !ok {
                return Err(Failure::Verification("level classification failed".into()));
            }
            Ok(())
        }

        Command::VerifyTable3(_) => {
            let mut rows = Vec::new();
            let mut ok = true;
            for n in levels {
                match classify_level(&spec, n) {
                    Ok(c) => rows.push(Table3Row {
                        n,
                        pass: true,
                        classification: Some(c),
                        error: None,
                    }),
                    Err(e) => {
                        ok = false;
                        rows.push(Table3Row {
                            n,
                            pass: false,
                            classification: None,
                            error: Some(e.to_string()),
                        });
                    }
                }
            }
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: command.name(),
                spec: &spec,
                n_min,
                n_max,
                results: &rows,
            };
            render(args, &envelope, || table3_csv(&rows), || table3_table(&rows))?;
            if !ok {
                return Err(Failure::Verification(
                    "classification mismatch on at least one level".into(),
                ));
            }
            Ok(())
        }

        Command::StructureFn(_) => {
            let results = StructureResults {
                derived: structure_polynomial(&spec),
                printed: printed_structure_polynomial(&spec),
                k_degree: structure_polynomial(&spec).k_degree(),
                table_f_degree: rext_core::algebra::table2_f_degree(spec.family(), spec.m_k()),
                integrals: integral_set(&spec),
            };
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: command.name(),
                spec: &spec,
                n_min,
                n_max,
                results: &results,
            };
            render(
                args,
                &envelope,
                || structure_csv(&results),
                || structure_table(&results),
            )
        }

        Command::Daska(_) => {
            let solution = solve_families(&spec);
            let families = solution
                .families
                .iter()
                .enumerate()
                .map(|(index, f)| FamilyRow {
                    index,
                    energy: f.energy.clone(),
                    energy_display: f.energy.to_string(),
                    u: f.u.clone(),
                    u_display: f.u.to_string(),
                    validity: f.validity,
                    source_a_constant: rational_string(&f.source_a.constant),
                    source_b_constant: rational_string(&f.source_b.constant),
                })
                .collect();
            let mut unions = Vec::new();
            let mut ok = true;
            for n in levels {
                let union = union_degeneracy(&spec, &solution, n).map_err(Failure::from)?;
                ok &= union.total == degeneracy_closed_form(&spec, n).map_err(Failure::from)? as i64;
                unions.push(union);
            }
            let results = DaskaResults {
                families,
                degenerate_pairs: solution.degenerate_pairs.len(),
                orientation_excluded: solution.orientation_excluded,
                deduplicated: solution.deduplicated,
                unions,
            };
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: command.name(),
                spec: &spec,
                n_min,
                n_max,
                results: &results,
            };
            render(args, &envelope, || daska_csv(&results), || daska_table(&results))?;
            if !ok {
                return Err(Failure::Verification(
                    "union of unirreps misses the closed-form degeneracy".into(),
                ));
            }
            Ok(())
        }

        Command::VerifyNumeric(_) => {
            let x = component_spectrum_report(&spec, 'x', 8).map_err(Failure::from)?;
            let y = component_spectrum_report(&spec, 'y', 8).map_err(Failure::from)?;
            let passed = x.passed() && y.passed();
            let results = NumericResults { x, y, passed };
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: command.name(),
                spec: &spec,
                n_min,
                n_max,
                results: &results,
            };
            render(args, &envelope, || numeric_csv(&results), || numeric_table(&results))?;
            if !passed {
                return Err(Failure::Verification(
                    "numerical spectrum check exceeded tolerance".into(),
                ));
            }
            Ok(())
        }

        Command::DiffReport(_) => {
            let printed_phi = if spec.family() == Family::A && spec.k() == 1 {
                Some(reproduce_printed_phi(spec.m_k()).map_err(Failure::from)?)
            } else {
                None
            };
            let results = DiffResults {
                structure: vec![structure_diff(&spec)],
                printed_phi,
            };
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command: command.name(),
                spec: &spec,
                n_min,
                n_max,
                results: &results,
            };
            render(args, &envelope, || diff_csv(&results), || diff_table(&results))
        }
    }
}
