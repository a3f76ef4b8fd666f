//! Step-by-step record of a transition, with JSON and Markdown forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::matching::MatchVia;
use crate::linalg::{CMatrix, C64};
use crate::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Forbid,
    PartialForbid,
    Condense,
    Split,
    SymmetryBreak,
    CatalogMatch,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Forbid => "Forbid",
            StepKind::PartialForbid => "PartialForbid",
            StepKind::Condense => "Condense",
            StepKind::Split => "Split",
            StepKind::SymmetryBreak => "SymmetryBreak",
            StepKind::CatalogMatch => "CatalogMatch",
        })
    }
}

/// A labelled matrix; complex entries are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSnapshot {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixSnapshot {
    pub fn new(labels: &[String], m: &CMatrix) -> Self {
        Self {
            labels: labels.to_vec(),
            entries: (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.entries.len();
        let m = self.entries.first().map_or(0, Vec::len);
        CMatrix::from_fn(n, m, |i, j| C64::new(self.entries[i][j][0], self.entries[i][j][1]))
    }

    pub fn to_markdown(&self) -> String {
        render::matrix_markdown(&self.to_matrix(), &self.labels)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialInfo {
    pub anyon: String,
    pub removed_squares: usize,
    pub remaining_squares: usize,
    pub predicted_dim: f64,
    pub surviving_flavors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimChange {
    pub anyon: String,
    pub predicted: f64,
    pub reconstructed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepPayload {
    Forbid {
        removed: Vec<String>,
        /// Removed by the repair search rather than by the diagram.
        induced: bool,
    },
    PartialForbid {
        anyons: Vec<PartialInfo>,
    },
    Condense {
        /// Method that produced the candidate matrix.
        route: String,
        /// Forbidden labels restored because they act trivially on every survivor.
        reinstated: Vec<String>,
        blocks: Vec<Vec<String>>,
        candidate: MatrixSnapshot,
        discarded: Vec<String>,
    },
    Split {
        theory: String,
        merge_map: String,
        /// Reduced label → merged catalog labels.
        groups: Vec<(String, Vec<String>)>,
        /// Antisymmetric combinations, which carry no vacuum and are dropped.
        discarded: Vec<String>,
    },
    SymmetryBreak {
        anyons: Vec<DimChange>,
    },
    CatalogMatch {
        theory: String,
        key: String,
        #[serde(flatten)]
        via: MatchVia,
        relabeling: Vec<(String, String)>,
        correspondence: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessStep {
    #[serde(flatten)]
    pub payload: StepPayload,
    pub note: String,
    /// Labels present after the step.
    pub labels: Vec<String>,
    /// S-matrix after the step, when one is known.
    pub s: Option<MatrixSnapshot>,
}

impl ProcessStep {
    pub fn kind(&self) -> StepKind {
        match self.payload {
            StepPayload::Forbid { .. } => StepKind::Forbid,
            StepPayload::PartialForbid { .. } => StepKind::PartialForbid,
            StepPayload::Condense { .. } => StepKind::Condense,
            StepPayload::Split { .. } => StepKind::Split,
            StepPayload::SymmetryBreak { .. } => StepKind::SymmetryBreak,
            StepPayload::CatalogMatch { .. } => StepKind::CatalogMatch,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Scripted,
    Automatic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalTheory {
    pub name: String,
    pub key: String,
    pub correspondence: Vec<(String, String)>,
    /// The outcome is not tabulated in the reference results.
    pub extrapolated: bool,
}

/// One attempt of the repair search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub removed: Vec<String>,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub group: String,
    pub spec: Vec<String>,
    pub mode: Mode,
    pub survivors: Vec<String>,
    pub steps: Vec<ProcessStep>,
    pub final_theory: Option<FinalTheory>,
    pub branches: Vec<Branch>,
    pub notes: Vec<String>,
}

impl PhaseReport {
    pub fn final_name(&self) -> Option<&str> {
        self.final_theory.as_ref().map(|f| f.name.as_str())
    }

    pub fn step_kinds(&self) -> Vec<StepKind> {
        self.steps.iter().map(ProcessStep::kind).collect()
    }

    /// `Forbid → Condense → Split → CatalogMatch` style summary.
    pub fn kind_summary(&self) -> String {
        if self.steps.is_empty() {
            return "none".into();
        }
        self.step_kinds().iter().map(ToString::to_string).collect::<Vec<_>>().join(" → ")
    }

    pub fn spec_display(&self) -> String {
        format!("{{{}}}", self.spec.join(", "))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# D({}) with {} forbidden\n\n", self.group, self.spec_display());
        let mode = match self.mode {
            Mode::Scripted => "scripted",
            Mode::Automatic => "automatic",
        };
        out += &format!("Mode: {mode}\n\nSurviving anyons: {}\n\n", self.survivors.join(", "));
        let unchanged = self.steps.iter().all(|s| s.kind() == StepKind::CatalogMatch);
        if unchanged {
            out += "No transition: every anyon survives intact.\n\n";
        }
        for (i, step) in self.steps.iter().enumerate() {
            out += &format!("## Step {}: {}\n\n{}\n\n", i + 1, step.kind(), step.note);
            match &step.payload {
                StepPayload::Forbid { removed, induced } => {
                    let how = if *induced { " (induced)" } else { "" };
                    out += &format!("Removed{how}: {}\n\n", removed.join(", "));
                }
                StepPayload::PartialForbid { anyons } => {
                    out += "| anyon | squares removed | squares left | predicted dim | flavors left |\n";
                    out += "|---|---|---|---|---|\n";
                    for p in anyons {
                        out += &format!(
                            "| {} | {} | {} | {} | {} |\n",
                            p.anyon,
                            p.removed_squares,
                            p.remaining_squares,
                            render::real_number(p.predicted_dim),
                            p.surviving_flavors.join(", ")
                        );
                    }
                    out += "\n";
                }
                StepPayload::Condense { route, reinstated, blocks, candidate, discarded } => {
                    if !reinstated.is_empty() {
                        out += &format!("Reinstated: {}\n\n", reinstated.join(", "));
                    }
                    out += &format!("Candidate from {route}:\n\n{}\n", candidate.to_markdown());
                    let blocks: Vec<String> = blocks.iter().map(|b| format!("{{{}}}", b.join(", "))).collect();
                    out += &format!("Blocks: {}\n\n", blocks.join(" "));
                    if !discarded.is_empty() {
                        out += &format!("Vanishing combinations discarded: {}\n\n", discarded.join(", "));
                    }
                }
                StepPayload::Split { theory, merge_map, groups, discarded } => {
                    out += &format!("Symmetric block of {theory} under the {merge_map} merge map:\n\n");
                    for (label, g) in groups {
                        out += &format!("- {label} ↔ {{{}}}\n", g.join(", "));
                    }
                    out += &format!("\nAntisymmetric block discarded: {}\n\n", discarded.join(", "));
                }
                StepPayload::SymmetryBreak { anyons } => {
                    out += "| anyon | predicted dim | reconstructed dim |\n|---|---|---|\n";
                    for d in anyons {
                        out += &format!(
                            "| {} | {} | {} |\n",
                            d.anyon,
                            render::real_number(d.predicted),
                            render::real_number(d.reconstructed)
                        );
                    }
                    out += "\n";
                }
                StepPayload::CatalogMatch { theory, relabeling, correspondence, via, .. } => {
                    let how = match via {
                        MatchVia::Direct => "direct".to_string(),
                        MatchVia::Split { merge_map } => format!("split, {merge_map}"),
                    };
                    out += &format!("Matched {theory} ({how}).\n\n");
                    if let Some(c) = correspondence {
                        out += &format!("Correspondence: {c}\n\n");
                    }
                    let pairs: Vec<String> = relabeling.iter().map(|(a, b)| format!("{a} → {b}")).collect();
                    out += &format!("{}\n\n", pairs.join(", "));
                }
            }
            if let Some(s) = &step.s {
                out += &format!("S after this step:\n\n{}\n", s.to_markdown());
            }
        }
        if self.branches.len() > 1 {
            out += "## Repair search\n\n";
            for b in &self.branches {
                let removed = if b.removed.is_empty() { "nothing".to_string() } else { b.removed.join(", ") };
                out += &format!("- removing {removed}: {}\n", b.outcome);
            }
            out += "\n";
        }
        for n in &self.notes {
            out += &format!("> {n}\n\n");
        }
        match &self.final_theory {
            Some(f) if unchanged => out += &format!("Result: {}, no transition\n", f.name),
            Some(f) => out += &format!("Result: {}\n", f.name),
            None => out += "Result: no valid theory\n",
        }
        out
    }
}
