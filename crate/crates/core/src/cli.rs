//! Command-line front end. Parsing uses clap; [`run`] does the work and
//! returns the rendered payload with an exit code, so it can be tested
//! without spawning a process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, Catalog};
use crate::engine::{bundled_scripts, script_for, EngineError, Protocol, Script};
use crate::flavor::{build_diagram, FlavorError};
use crate::group::{character_table, FiniteGroup, GroupError};
use crate::modular::{build_double, ModularError};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_THEORY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "anyon-phases", version, about = "Quantum-double modular data and label-forbidding transitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; `export` defaults to json, everything else to markdown.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the payload to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress the version header on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum RunMode {
    #[default]
    Auto,
    Script,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Anyon table, S, T, fusion rules and flavor diagram of D(G).
    Inspect {
        /// Preset name (z2, z3, s3, ...) or path to a group JSON file.
        group: String,
    },
    /// Forbid labels and report the resulting transition.
    Forbid {
        group: String,
        /// Conjugacy class to forbid, e.g. Cx.
        #[arg(long = "class")]
        classes: Vec<String>,
        /// Irrep to forbid, e.g. Gamma2.
        #[arg(long = "irrep")]
        irreps: Vec<String>,
        #[arg(long, value_enum, default_value_t = RunMode::Auto)]
        mode: RunMode,
        /// Script file to use with `--mode script` instead of the bundled one.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Extra catalog entries (JSON file).
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Run every subset of nontrivial labels.
    Diagram {
        group: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Check the bundled scripts (or every script in a directory).
    VerifyScripts {
        group: String,
        #[arg(long)]
        scripts: Option<PathBuf>,
    },
    /// Theory JSON of D(G) or of a catalog entry.
    Export {
        group: Option<String>,
        /// Catalog key or name instead of a group.
        #[arg(long, conflicts_with = "group")]
        theory: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Flavor(#[from] FlavorError),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error(transparent)]
    Engine(EngineError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Group(e) => CliError::Group(e),
            EngineError::Flavor(e) => CliError::Flavor(e),
            EngineError::Modular(e) => CliError::Modular(e),
            EngineError::Catalog(e) => CliError::Catalog(e),
            e => CliError::Engine(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(EngineError::NoValidTheory { .. }) => EXIT_NO_THEORY,
            CliError::Engine(_) => EXIT_FAILED,
            _ => EXIT_INPUT,
        }
    }
}

/// Rendered payload and the exit code it should produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

pub fn header() -> String {
    format!("anyon-phases {}", env!("CARGO_PKG_VERSION"))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let json = |default_json: bool| cli.format.map_or(default_json, |f| f == Format::Json);
    let out = match &cli.command {
        Command::Inspect { group } => inspect(group, json(false))?,
        Command::Forbid { group, classes, irreps, mode, script, catalog } => {
            forbid(group, classes, irreps, *mode, script.as_deref(), catalog.as_deref(), json(false))?
        }
        Command::Diagram { group, catalog } => diagram(group, catalog.as_deref(), json(false))?,
        Command::VerifyScripts { group, scripts } => verify_scripts(group, scripts.as_deref(), json(false))?,
        Command::Export { group, theory } => export(group.as_deref(), theory.as_deref(), json(true))?,
    };
    if let Some(path) = &cli.out {
        std::fs::write(path, &out.text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        return Ok(Output { text: String::new(), code: out.code });
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("payload serializes");
    s.push('\n');
    s
}

fn protocol(group: &str, extra: Option<&Path>) -> Result<Protocol, CliError> {
    let g = FiniteGroup::resolve(group)?;
    let mut catalog = Catalog::builtin();
    if let Some(path) = extra {
        catalog.load_file(path)?;
    }
    Ok(Protocol::with_catalog(&g, catalog)?)
}

pub fn inspect(group: &str, json: bool) -> Result<Output, CliError> {
    let g = FiniteGroup::resolve(group)?;
    let theory = build_double(&g)?;
    if json {
        return Ok(Output::ok(to_json(&theory.to_json())));
    }
    let diagram = build_diagram(&g)?;
    let table = character_table(&g)?;
    let names = theory.names();
    let mut out = format!("# D({})\n\n{} anyons, total dimension {}\n\n", g.name(), theory.len(), render::real_number(theory.total_dim));

    out += "## Anyons\n\n| anyon | flux | charge | dim | kind | spin |\n|---|---|---|---|---|---|\n";
    for (i, label) in theory.labels.iter().enumerate() {
        let (flux, charge, kind) = match &label.double {
            Some(d) => (diagram.class_names[d.class_index].clone(), d.irrep_name.clone(), d.kind.to_string()),
            None => ("-".into(), "-".into(), "-".into()),
        };
        let spin = theory.t.as_ref().map_or("-".into(), |t| render::complex_number(t[i]));
        let _ = writeln!(out, "| {} | {flux} | {charge} | {} | {kind} | {spin} |", names[i], render::real_number(theory.dims[i]));
    }

    out += "\n## Characters\n\n";
    let _ = writeln!(out, "| irrep | {} |", diagram.class_names.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(diagram.class_names.len()));
    for irrep in &table.irreps {
        let cells: Vec<String> = (0..diagram.class_names.len()).map(|c| render::complex_number(irrep.values[c])).collect();
        let _ = writeln!(out, "| {} | {} |", irrep.name, cells.join(" | "));
    }

    let _ = write!(out, "\n## S-matrix\n\n{}\n", render::matrix_markdown(&theory.s, &names));

    out += "## Fusion rules\n\n";
    let _ = writeln!(out, "| × | {} |", names.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(names.len()));
    for a in 0..theory.len() {
        let cells: Vec<String> = (0..theory.len()).map(|b| theory.fusion.format_product(a, b, &names)).collect();
        let _ = writeln!(out, "| {} | {} |", names[a], cells.join(" | "));
    }

    let _ = write!(out, "\n## Flavor diagram\n\n{}", diagram.to_markdown());
    Ok(Output::ok(out))
}

pub fn forbid(
    group: &str,
    classes: &[String],
    irreps: &[String],
    mode: RunMode,
    script: Option<&Path>,
    extra: Option<&Path>,
    json: bool,
) -> Result<Output, CliError> {
    let p = protocol(group, extra)?;
    let spec = p.spec_from_names(classes, irreps)?;
    let result = match mode {
        RunMode::Auto => p.run_auto(&spec),
        RunMode::Script => {
            let script = match script {
                Some(path) => load_script(path)?,
                None => script_for(p.group_name(), &spec.names(&p.diagram)).ok_or_else(|| {
                    CliError::Usage(format!("no bundled script for {} in D({})", spec.display(&p.diagram), p.group_name()))
                })?,
            };
            p.run_script(&spec, &script)
        }
    };
    let render = |r: &crate::engine::PhaseReport| if json { format!("{}\n", r.to_json()) } else { r.to_markdown() };
    match result {
        Ok(report) => Ok(Output::ok(render(&report))),
        Err(EngineError::NoValidTheory { report, .. }) => Ok(Output { text: render(&report), code: EXIT_NO_THEORY }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Serialize)]
struct DiagramRow {
    forbidden: Vec<String>,
    theory: Option<String>,
    steps: Vec<String>,
    error: Option<String>,
    script_agrees: Option<bool>,
}

pub fn diagram(group: &str, extra: Option<&Path>, json: bool) -> Result<Output, CliError> {
    let p = protocol(group, extra)?;
    let rows: Vec<DiagramRow> = p
        .enumerate_diagram()
        .into_iter()
        .map(|cell| {
            let (theory, steps, error) = match &cell.result {
                Ok(r) => (
                    Some(r.final_name().unwrap_or("unidentified").to_string()),
                    r.step_kinds().iter().map(ToString::to_string).collect(),
                    None,
                ),
                Err(e) => (None, vec![], Some(e.clone())),
            };
            DiagramRow { forbidden: cell.names, theory, steps, error, script_agrees: cell.script_agrees }
        })
        .collect();
    if json {
        return Ok(Output::ok(to_json(&rows)));
    }
    let mut out = format!("# Phase diagram of D({})\n\n| forbidden | theory | steps | script |\n|---|---|---|---|\n", p.group_name());
    for r in &rows {
        let theory = match (&r.theory, &r.error) {
            (Some(t), _) => t.clone(),
            (None, Some(e)) => format!("failed: {e}"),
            (None, None) => "-".into(),
        };
        let steps = if r.steps.is_empty() { "none".to_string() } else { r.steps.join(" → ") };
        let script = match r.script_agrees {
            Some(true) => "agrees",
            Some(false) => "disagrees",
            None => "-",
        };
        let _ = writeln!(out, "| {{{}}} | {theory} | {steps} | {script} |", r.forbidden.join(", "));
    }
    Ok(Output::ok(out))
}

fn load_script(path: &Path) -> Result<Script, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Script::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct ScriptOutcome {
    name: String,
    passed: bool,
    theory: Option<String>,
    error: Option<String>,
}

pub fn verify_scripts(group: &str, dir: Option<&Path>, json: bool) -> Result<Output, CliError> {
    let p = protocol(group, None)?;
    let scripts = match dir {
        Some(dir) => {
            let entries = std::fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
            let mut paths: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|path| path.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            paths.iter().map(|path| load_script(path)).collect::<Result<Vec<_>, _>>()?
        }
        None => bundled_scripts(p.group_name()),
    };
    let outcomes: Vec<ScriptOutcome> = scripts
        .iter()
        .map(|s| {
            let result = p.spec_from_names(&s.spec.classes, &s.spec.irreps).and_then(|spec| p.run_script(&spec, s));
            match result {
                Ok(r) => ScriptOutcome {
                    name: s.name.clone(),
                    passed: true,
                    theory: r.final_name().map(str::to_string),
                    error: None,
                },
                Err(e) => ScriptOutcome { name: s.name.clone(), passed: false, theory: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let code = if passed == outcomes.len() { EXIT_OK } else { EXIT_FAILED };
    if json {
        return Ok(Output { text: to_json(&outcomes), code });
    }
    let mut out = String::new();
    for o in &outcomes {
        match (&o.theory, &o.error) {
            (Some(t), _) => {
                let _ = writeln!(out, "PASS {} → {t}", o.name);
            }
            (_, e) => {
                let _ = writeln!(out, "FAIL {}: {}", o.name, e.as_deref().unwrap_or("no result"));
            }
        }
    }
    let _ = writeln!(out, "{passed}/{} scripts passed", outcomes.len());
    Ok(Output { text: out, code })
}

pub fn export(group: Option<&str>, theory: Option<&str>, json: bool) -> Result<Output, CliError> {
    let t = match (group, theory) {
        (_, Some(key)) => Catalog::builtin().find(key)?.theory.clone(),
        (Some(g), None) => build_double(&FiniteGroup::resolve(g)?)?,
        (None, None) => return Err(CliError::Usage("export needs a group or --theory".into())),
    };
    if json {
        return Ok(Output::ok(to_json(&t.to_json())));
    }
    let names = t.names();
    let mut out = format!("# {}\n\n{}\n", t.name, render::matrix_markdown(&t.s, &names));
    if let Some(spins) = &t.t {
        let cells: Vec<String> = spins.iter().map(|&z| render::complex_number(z)).collect();
        let _ = writeln!(out, "T = diag({})", cells.join(", "));
    }
    Ok(Output::ok(out))
}
