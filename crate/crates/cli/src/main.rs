//! `nk6`: verification suites, pointwise analysis and integral
//! certification for Lagrangian submanifolds of the nearly Kähler S⁶.

mod analyze;
mod config;
mod error;
mod report;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nk6_core::cayley::MulTable;
use nk6_core::models::Model;
use nk6_core::simons::{integrate_inequality, Classification, InequalityReport, Sample};
use serde::Serialize;

use config::{Format, RunArgs, RunConfig};
use error::CliError;
use report::{emit, num, to_csv, to_json, Envelope, Provenance};

#[derive(Parser)]
#[command(name = "nk6", version, about = "Lagrangian submanifolds of the nearly Kähler six-sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identity suites for the table and the selected model
    Verify(RunArgs),
    /// Pointwise invariants at chart points
    Analyze(RunArgs),
    /// Quadrature of the integral inequality
    Integrate(RunArgs),
    /// Everything above in one document
    Report(RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("nk6: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Command) -> Result<bool, CliError> {
    match cmd {
        Command::Verify(a) => cmd_verify(&RunConfig::from_args(&a)?, &a),
        Command::Analyze(a) => cmd_analyze(&RunConfig::from_args(&a)?, &a),
        Command::Integrate(a) => cmd_integrate(&RunConfig::from_args(&a)?, &a),
        Command::Report(a) => cmd_report(&RunConfig::from_args(&a)?, &a),
    }
}

/// The model and, for immersions, the table.
fn resolve(cfg: &RunConfig) -> Result<(Model, Option<MulTable>), CliError> {
    if cfg.model.starts_with("synthetic:") {
        return Ok((Model::resolve(&cfg.model, &MulTable::default())?, None));
    }
    let table = cfg.load_table()?;
    Ok((Model::resolve(&cfg.model, &table)?, Some(table)))
}

fn table_name(t: Option<&MulTable>) -> String {
    t.map_or_else(|| "none".to_string(), |t| t.name().to_string())
}

fn cmd_verify(cfg: &RunConfig, a: &RunArgs) -> Result<bool, CliError> {
    if cfg.format == Format::Csv {
        return Err(CliError::Usage("verify emits JSON only".into()));
    }
    // a table that fails its axioms is a failed suite, not a usage error
    let model = if cfg.model.starts_with("synthetic:") {
        Model::resolve(&cfg.model, &MulTable::default())?
    } else {
        match cfg.load_table() {
            Ok(t) => Model::resolve(&cfg.model, &t)?,
            Err(CliError::Core(nk6_core::Error::InvalidTable(_))) => Model::resolve(&cfg.model, &MulTable::default())?,
            Err(e) => return Err(e),
        }
    };
    let body = verify::run(cfg, &model)?;
    let pass = body.pass();
    let table = if matches!(model, Model::Synthetic(_)) { "none".into() } else { cfg.table.clone() };
    let env = Envelope {
        schema_version: report::SCHEMA_VERSION,
        command: "verify",
        model: model.name(),
        pass,
        provenance: Provenance::new(cfg, table),
        body,
    };
    emit(a.out.as_deref(), &[("verify.json", to_json(&env)?)])?;
    Ok(pass)
}

fn cmd_analyze(cfg: &RunConfig, a: &RunArgs) -> Result<bool, CliError> {
    let (model, table) = resolve(cfg)?;
    let body = analyze::run(cfg, table.as_ref(), &model)?;
    let csv = analyze::csv(&body)?;
    let env = Envelope {
        schema_version: report::SCHEMA_VERSION,
        command: "analyze",
        model: model.name(),
        pass: true,
        provenance: Provenance::new(cfg, table_name(table.as_ref())),
        body,
    };
    let json = to_json(&env)?;
    match (a.out.as_deref(), cfg.format) {
        (Some(dir), _) => emit(Some(dir), &[("analyze.json", json), ("analyze.csv", csv)])?,
        (None, Format::Json) => emit(None, &[("", json)])?,
        (None, Format::Csv) => emit(None, &[("", csv)])?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct IntegrateBody {
    inequality: InequalityReport,
}

fn integrate(cfg: &RunConfig, model: &Model, table: &MulTable) -> Result<InequalityReport, CliError> {
    let imm = cfg.immersion(model).ok_or_else(|| nk6_core::Error::NoImmersion(model.name()))?;
    Ok(integrate_inequality(table, imm.as_ref(), &cfg.rule, &cfg.tolerances)?)
}

fn samples_csv(samples: &[Sample]) -> Result<String, CliError> {
    to_csv(&Sample::CSV_HEADER, samples.iter().map(|s| s.csv_row().map(num)))
}

fn cmd_integrate(cfg: &RunConfig, a: &RunArgs) -> Result<bool, CliError> {
    let (model, table) = resolve(cfg)?;
    let table = table.ok_or_else(|| nk6_core::Error::NoImmersion(model.name()))?;
    let rep = integrate(cfg, &model, &table)?;
    let pass = rep.classification != Classification::Violation;
    let csv = samples_csv(&rep.samples)?;
    let body = IntegrateBody { inequality: rep };
    let env = Envelope {
        schema_version: report::SCHEMA_VERSION,
        command: "integrate",
        model: model.name(),
        pass,
        provenance: Provenance::new(cfg, table.name().to_string()),
        body,
    };
    let json = to_json(&env)?;
    match (a.out.as_deref(), cfg.format) {
        (Some(dir), _) => emit(Some(dir), &[("integrate.json", json), ("integrand.csv", csv)])?,
        (None, Format::Json) => emit(None, &[("", json)])?,
        (None, Format::Csv) => emit(None, &[("", csv)])?,
    }
    Ok(pass)
}

#[derive(Serialize)]
struct ReportBody {
    suites: Vec<report::Suite>,
    analysis: analyze::AnalyzeBody,
    inequality: Option<InequalityReport>,
    inequality_error: Option<String>,
}

fn cmd_report(cfg: &RunConfig, a: &RunArgs) -> Result<bool, CliError> {
    let (model, table) = resolve(cfg)?;
    let verify = verify::run(cfg, &model)?;
    let analysis = analyze::run(cfg, table.as_ref(), &model)?;
    let (inequality, inequality_error) = match &table {
        Some(t) => match integrate(cfg, &model, t) {
            Ok(r) => (Some(r), None),
            Err(CliError::Core(e)) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        },
        None => (None, None),
    };
    let pass = verify.pass()
        && inequality_error.is_none()
        && inequality.as_ref().is_none_or(|r| r.classification != Classification::Violation);
    let analyze_csv = analyze::csv(&analysis)?;
    let integrand_csv = inequality.as_ref().map(|r| samples_csv(&r.samples)).transpose()?;
    let body = ReportBody { suites: verify.suites, analysis, inequality, inequality_error };
    let env = Envelope {
        schema_version: report::SCHEMA_VERSION,
        command: "report",
        model: model.name(),
        pass,
        provenance: Provenance::new(cfg, table_name(table.as_ref())),
        body,
    };
    let json = to_json(&env)?;
    let files = match (a.out.is_some(), cfg.format) {
        (true, _) => {
            let mut f = vec![("report.json", json), ("analyze.csv", analyze_csv)];
            f.extend(integrand_csv.map(|c| ("integrand.csv", c)));
            f
        }
        (false, Format::Json) => vec![("", json)],
        (false, Format::Csv) => vec![("", analyze_csv)],
    };
    emit(a.out.as_deref(), &files)?;
    Ok(pass)
}
