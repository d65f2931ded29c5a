//! Command-line front end: single-point simulations, parameter sweeps,
//! scenario inspection, stability cross-checks and matrix dumps, with
//! CSV/JSON data tables ready for external plotting.

mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phonoflex::dynamics::build_system;
use phonoflex::presets::{list_presets, preset, Preset};
use phonoflex::stability::{routh_hurwitz_n1, spectral_stability};
use phonoflex::steadystate::solve_lyapunov;
use phonoflex::sweep::{evaluate_point, run_nested, run_sweep, SweepResult};
use serde_json::json;

use config::ConfigDocument;
use output::{fmt_f64, matrix_section, point_csv, point_json, sweep_csv, sweep_json};

/// Exit codes: 0 success, 2 configuration error, 3 system unstable at
/// simulate, 4 I/O error.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Unstable(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unstable(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Unstable(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "phonoflex", version, about = "Steady-state simulator for vacuum-force-coupled membrane and atomic phonon modes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one operating point and report every observable
    Simulate(RunArgs),
    /// Run a parameter sweep and emit a data table
    Sweep(RunArgs),
    /// List scenario presets, or show one in full
    Scenario {
        /// Preset name; omit to list the catalog
        name: Option<String>,
    },
    /// Compare the Routh-Hurwitz and spectral stability verdicts
    CheckStability(RunArgs),
    /// Print the drift, diffusion and covariance matrices in full precision
    DumpMatrices(RunArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Path to a JSON configuration document
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from a named scenario preset (see `scenario`)
    #[arg(long)]
    scenario: Option<String>,
    /// Override one configuration key, e.g. --set g=-6.5e3 (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output table format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output file; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Scenario { name } => cmd_scenario(name.as_deref()),
        Command::CheckStability(args) => cmd_check_stability(&args),
        Command::DumpMatrices(args) => cmd_dump_matrices(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

/// Loads the document from --config or --scenario and applies overrides.
fn load_document(args: &RunArgs) -> Result<(ConfigDocument, Option<Preset>), CliError> {
    let (mut doc, preset) = match (&args.config, &args.scenario) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config(
                "--config and --scenario are mutually exclusive".into(),
            ))
        }
        (Some(path), None) => (ConfigDocument::from_file(path)?, None),
        (None, Some(name)) => {
            let p = preset(name).map_err(|e| CliError::Config(e.to_string()))?;
            (ConfigDocument::from_preset(&p), Some(p))
        }
        (None, None) => {
            return Err(CliError::Config(
                "a configuration is required: pass --config <file> or --scenario <name>".into(),
            ))
        }
    };
    for assignment in &args.set {
        doc.apply_override(assignment)?;
    }
    Ok((doc, preset))
}

fn write_output(path: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn meta_for(command: &str, doc: &ConfigDocument, preset: Option<&Preset>) -> serde_json::Value {
    json!({
        "command": command,
        "scenario": preset.map(|p| p.name),
        "title": preset.map(|p| p.title),
        "provenance": preset.map(|p| p.notes.clone()),
        "config": serde_json::to_value(doc).expect("document serializes"),
    })
}

fn print_warnings(doc: &ConfigDocument) -> Result<(), CliError> {
    let config = doc.resolve_config()?;
    for warning in config.validate().map_err(|e| CliError::Config(e.to_string()))? {
        eprintln!("warning: {warning}");
    }
    Ok(())
}

fn cmd_simulate(args: &RunArgs) -> Result<(), CliError> {
    let (doc, preset) = load_document(args)?;
    print_warnings(&doc)?;
    let config = doc.resolve_config()?;
    let bipartitions = doc.report_bipartitions()?;
    let report = evaluate_point(&config, &bipartitions)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let labels: Vec<String> = bipartitions.iter().map(|b| b.label()).collect();

    let mut text = String::new();
    if let Some(p) = &preset {
        text.push_str(&format!("scenario: {} — {}\n", p.name, p.title));
    }
    text.push_str(&format!(
        "modes: {}   theta: {} Hz   temperature: {} K\n",
        config.n_modes(),
        fmt_f64(config.theta),
        fmt_f64(config.temperature)
    ));
    text.push_str(&format!(
        "effective: xi = {} Hz, gamma_eff = {} Hz, omega_eff = {} Hz, |alpha| = {}\n",
        fmt_f64(report.eff.xi),
        fmt_f64(report.eff.gamma_eff),
        fmt_f64(report.eff.omega_eff),
        fmt_f64(report.eff.alpha_abs)
    ));
    if report.stability.stable {
        text.push_str(&format!(
            "stability: stable (max Re = {} Hz), decay rate = {} Hz, relaxation time = {} s\n",
            fmt_f64(report.stability.max_real_part),
            fmt_f64(report.stability.decay_rate.unwrap()),
            fmt_f64(report.stability.relaxation_time.unwrap())
        ));
    } else {
        text.push_str(&format!(
            "stability: UNSTABLE (max Re = {} Hz); no stationary state\n",
            fmt_f64(report.stability.max_real_part)
        ));
    }
    if let Some(occ) = &report.occupations {
        for (j, m) in occ.iter().enumerate() {
            text.push_str(&format!("m_eff[{}] = {}\n", j + 1, fmt_f64(*m)));
        }
    }
    if let Some((vx, vy)) = report.phonon_variances {
        text.push_str(&format!(
            "phonon variances: <dX^2> = {}, <dY^2> = {}\n",
            fmt_f64(vx),
            fmt_f64(vy)
        ));
    }
    for (label, pair) in labels.iter().zip(&report.entanglement) {
        match pair {
            Some((eta, en)) => text.push_str(&format!(
                "{label}: eta_minus = {}, logneg = {}\n",
                fmt_f64(*eta),
                fmt_f64(*en)
            )),
            None => text.push_str(&format!("{label}: unavailable\n")),
        }
    }
    if let Some(err) = &report.error {
        text.push_str(&format!("note: {err}\n"));
    }

    match (&args.output, args.format) {
        (None, OutputFormat::Csv) => write_output(None, &text)?,
        (path, OutputFormat::Csv) => {
            write_output(None, &text)?;
            write_output(path.as_ref(), &point_csv(&report, &labels))?;
        }
        (path, OutputFormat::Json) => {
            let meta = meta_for("simulate", &doc, preset.as_ref());
            let doc_json = point_json(&report, &labels, meta);
            let mut rendered = serde_json::to_string_pretty(&doc_json).expect("serializable");
            rendered.push('\n');
            write_output(path.as_ref(), &rendered)?;
        }
    }

    if !report.stability.stable {
        return Err(CliError::Unstable(format!(
            "no steady state at theta = {} Hz (max eigenvalue real part {} Hz)",
            fmt_f64(config.theta),
            fmt_f64(report.stability.max_real_part)
        )));
    }
    Ok(())
}

fn cmd_sweep(args: &RunArgs) -> Result<(), CliError> {
    let (doc, preset) = load_document(args)?;
    print_warnings(&doc)?;
    let spec = doc.resolve_sweep()?;

    let outer = preset.as_ref().and_then(|p| p.outer.clone());
    let to_cli = |e: phonoflex::Error| CliError::Config(e.to_string());
    let tables: Vec<(Option<f64>, SweepResult)> = match &outer {
        Some((axis, grid)) => run_nested(*axis, grid, &spec)
            .map_err(to_cli)?
            .into_iter()
            .map(|(value, result)| (Some(value), result))
            .collect(),
        None => vec![(None, run_sweep(&spec).map_err(to_cli)?)],
    };
    let table_refs: Vec<(Option<f64>, &SweepResult)> =
        tables.iter().map(|(v, r)| (*v, r)).collect();
    let outer_label = outer.as_ref().map(|(axis, _)| axis.label());

    let rendered = match args.format {
        OutputFormat::Csv => sweep_csv(&table_refs, outer_label),
        OutputFormat::Json => {
            let mut meta = meta_for("sweep", &doc, preset.as_ref());
            if let Some((axis, grid)) = &outer {
                meta["outer_axis"] = json!(axis.label());
                meta["outer_grid"] = json!(grid);
            }
            let mut rendered =
                serde_json::to_string_pretty(&sweep_json(&table_refs, outer_label, meta))
                    .expect("serializable");
            rendered.push('\n');
            rendered
        }
    };
    write_output(args.output.as_ref(), &rendered)
}

fn cmd_scenario(name: Option<&str>) -> Result<(), CliError> {
    match name {
        None => {
            let mut text = String::new();
            for p in list_presets() {
                text.push_str(&format!("{:13} {}\n{:13} notes: {}\n", p.name, p.title, "", p.notes));
            }
            write_output(None, &text)
        }
        Some(name) => {
            let p = preset(name).map_err(|e| CliError::Config(e.to_string()))?;
            let doc = ConfigDocument::from_preset(&p);
            let rendered = serde_json::to_string_pretty(&json!({
                "name": p.name,
                "title": p.title,
                "provenance": p.notes,
                "outer_axis": p.outer.as_ref().map(|(axis, _)| axis.label()),
                "outer_grid": p.outer.as_ref().map(|(_, grid)| grid),
                "config": serde_json::to_value(&doc).expect("document serializes"),
            }))
            .expect("serializable");
            write_output(None, &format!("{rendered}\n"))
        }
    }
}

fn cmd_check_stability(args: &RunArgs) -> Result<(), CliError> {
    let (doc, _) = load_document(args)?;
    print_warnings(&doc)?;
    let config = doc.resolve_config()?;
    let (system, eff) =
        build_system(&config).map_err(|e| CliError::Config(e.to_string()))?;
    let report = spectral_stability(&system).map_err(|e| CliError::Config(e.to_string()))?;

    let mut text = format!(
        "spectral: {} (max eigenvalue real part = {} Hz, margin = {} Hz)\n",
        if report.stable { "stable" } else { "unstable" },
        fmt_f64(report.max_real_part),
        fmt_f64(report.max_real_part.abs()),
    );
    if let Some(rate) = report.decay_rate {
        text.push_str(&format!(
            "decay rate = {} Hz, relaxation time = {} s\n",
            fmt_f64(rate),
            fmt_f64(report.relaxation_time.unwrap())
        ));
    }
    match routh_hurwitz_n1(&config, &eff) {
        Ok(verdict) => {
            text.push_str(&format!(
                "routh-hurwitz: {}\n",
                if verdict { "stable" } else { "unstable" }
            ));
            text.push_str(&format!(
                "verdicts agree: {}\n",
                verdict == report.stable
            ));
        }
        Err(err) => text.push_str(&format!("routh-hurwitz: unavailable ({err})\n")),
    }
    write_output(args.output.as_ref(), &text)
}

fn cmd_dump_matrices(args: &RunArgs) -> Result<(), CliError> {
    let (doc, _) = load_document(args)?;
    print_warnings(&doc)?;
    let config = doc.resolve_config()?;
    let (system, _) = build_system(&config).map_err(|e| CliError::Config(e.to_string()))?;

    let mut text = String::new();
    text.push_str(&format!(
        "# quadrature ordering: {}\n",
        system.quadrature_labels().join(", ")
    ));
    text.push_str(&matrix_section("drift A", &system.drift));
    text.push_str(&matrix_section("diffusion D", &system.diffusion));
    match solve_lyapunov(&system) {
        Ok(cov) => text.push_str(&matrix_section("covariance V", cov.matrix())),
        Err(err) => text.push_str(&format!("# covariance V unavailable: {err}\n")),
    }
    write_output(args.output.as_ref(), &text)
}
