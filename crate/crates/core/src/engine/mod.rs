//! The forbidding protocol: truncate fusion, rebuild an S-matrix from
//! fusion eigenvalues, condense proportional rows, and identify the
//! result against the catalog.

mod auto;
mod condense;
mod matching;
mod reconstruct;
mod report;
mod script;
mod truncate;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::flavor::FlavorError;
use crate::group::GroupError;
use crate::modular::ModularError;

pub use auto::{enumerate_diagram, run_auto, DiagramCell, Protocol};
pub use condense::{condense, Condensed};
pub use matching::{match_catalog, match_direct, split_check, CatalogMatch, MatchVia, Presented, SplitWitness};
pub use reconstruct::{
    graded_candidate, proportional_classes, reconstruct_smatrix, Reconstruction, SymmetryHints,
};
pub use report::{
    Branch, DimChange, FinalTheory, MatrixSnapshot, Mode, PartialInfo, PhaseReport, ProcessStep, StepKind,
    StepPayload,
};
pub use script::{bundled_scripts, parse_scalar, run_script, script_for, MatrixSpec, Script, ScriptSpec, ScriptStep};
pub use truncate::{truncate_fusion, TruncatedFusion};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("fusion matrices of {a} and {b} do not commute")]
    NonCommutingFusion { a: String, b: String },
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("block {{{}}} does not condense: complement residual {residual:e}", block.join(", "))]
    NonVanishingComplement { block: Vec<String>, residual: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("condensed matrix is not modular: {0}")]
    CondensedNotModular(String),
    #[error("script step {index} ({kind}) failed: {reason}")]
    ScriptStepFailed { index: usize, kind: String, reason: String },
    #[error("invalid script: {0}")]
    Script(String),
    #[error("no valid theory for {spec} after {} branches", report.branches.len())]
    NoValidTheory { spec: String, report: Box<PhaseReport> },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Flavor(#[from] FlavorError),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
