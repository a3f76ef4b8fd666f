//! The automatic pipeline and the phase-diagram sweep.

use rayon::prelude::*;

use super::condense::condense;
use super::matching::{match_catalog, CatalogMatch, MatchVia, Presented};
use super::reconstruct::{graded_candidate, reconstruct_smatrix, Reconstruction, SymmetryHints};
use super::report::{
    Branch, DimChange, FinalTheory, MatrixSnapshot, Mode, PartialInfo, PhaseReport, ProcessStep, StepPayload,
};
use super::script::{run_script_with, script_for};
use super::truncate::{truncate_fusion, TruncatedFusion};
use super::EngineError;
use crate::catalog::Catalog;
use crate::flavor::{FlavorDiagram, ForbidSpec, SurvivalResult};
use crate::group::FiniteGroup;
use crate::linalg::{real, CMatrix, C64};
use crate::modular::{validate_theory, AnyonKind, AnyonLabel, AnyonTheory, DoubleData};

const REPAIR_DEPTH: usize = 2;
const DIM_TOL: f64 = 1e-6;

/// Everything the protocol needs about one group, built once.
#[derive(Debug, Clone)]
pub struct Protocol {
    pub group: FiniteGroup,
    pub theory: AnyonTheory,
    pub diagram: FlavorDiagram,
    pub catalog: Catalog,
    pub kinds: Vec<AnyonKind>,
    /// Integer quantum dimension of every anyon of the double.
    pub dims: Vec<usize>,
}

/// A theory reached by the pipeline, with the parent anyons behind each label.
#[derive(Debug, Clone)]
pub(crate) struct Stage {
    pub names: Vec<String>,
    pub s: CMatrix,
    pub t: Option<Vec<C64>>,
    pub kinds: Vec<AnyonKind>,
    pub members: Vec<Vec<usize>>,
}

impl Stage {
    pub fn presented(&self) -> Presented<'_> {
        Presented { names: &self.names, s: &self.s, t: self.t.as_deref(), kinds: Some(&self.kinds) }
    }

    pub fn snapshot(&self) -> MatrixSnapshot {
        MatrixSnapshot::new(&self.names, &self.s)
    }

    pub fn dims(&self) -> Vec<f64> {
        let s00 = self.s[(0, 0)].re;
        (0..self.s.ncols()).map(|z| self.s[(0, z)].re / s00).collect()
    }
}

/// Output of reconstruction before any condensation.
#[derive(Debug, Clone)]
pub(crate) enum Candidate {
    Modular(CMatrix),
    Blocks { route: &'static str, candidate: CMatrix, classes: Vec<Vec<usize>> },
}

impl Protocol {
    pub fn new(g: &FiniteGroup) -> Result<Self, EngineError> {
        Self::with_catalog(g, Catalog::builtin())
    }

    pub fn with_catalog(g: &FiniteGroup, catalog: Catalog) -> Result<Self, EngineError> {
        let data = DoubleData::new(g)?;
        let theory = crate::modular::build_double(g)?;
        let diagram = FlavorDiagram::from_double(&data)?;
        let kinds = (0..data.anyons.len()).map(|a| data.kind(a)).collect();
        let dims = (0..data.anyons.len()).map(|a| data.dim(a)).collect();
        Ok(Self { group: g.clone(), theory, diagram, catalog, kinds, dims })
    }

    pub fn group_name(&self) -> &str {
        self.group.name()
    }

    pub fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&a| self.theory.labels[a].display_name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.theory.index_of(name)
    }

    pub fn spec_from_names(&self, classes: &[String], irreps: &[String]) -> Result<ForbidSpec, EngineError> {
        Ok(ForbidSpec::from_names(&self.diagram, classes, irreps)?)
    }

    pub fn survivors(&self, spec: &ForbidSpec) -> Result<SurvivalResult, EngineError> {
        Ok(self.diagram.survivors(spec)?)
    }

    /// Forbidden Abelian anyons that fuse trivially with every nonvacuum
    /// survivor. They cannot be told apart from the vacuum by any surviving
    /// label and are restored so that they condense with it.
    pub(crate) fn reinstatable(&self, labels: &[usize]) -> Vec<usize> {
        let f = &self.theory.fusion;
        (1..self.theory.len())
            .filter(|b| !labels.contains(b) && self.dims[*b] == 1)
            .filter(|&b| labels.iter().filter(|&&x| x != 0).all(|&x| f.product(b, x) == vec![(x, 1)]))
            .filter(|_| labels.iter().any(|&x| x != 0))
            .collect()
    }

    pub(crate) fn hints(&self, idx: &[usize]) -> SymmetryHints {
        let n = idx.len();
        SymmetryHints { reference: Some(CMatrix::from_fn(n, n, |i, j| self.theory.s[(idx[i], idx[j])])) }
    }

    pub fn truncate(&self, labels: &[usize]) -> TruncatedFusion {
        truncate_fusion(&self.theory, labels)
    }

    /// Reconstruction, falling back to the graded candidate when the
    /// fusion matrices do not commute.
    pub(crate) fn candidate(&self, tf: &TruncatedFusion, weights: &[f64]) -> Result<Candidate, EngineError> {
        match reconstruct_smatrix(tf, &self.hints(&tf.parent_indices)) {
            Ok(Reconstruction::Reconstructed { s }) => Ok(Candidate::Modular(s)),
            Ok(Reconstruction::Degenerate { candidate, classes }) => {
                Ok(Candidate::Blocks { route: "fusion eigenvalues", candidate, classes })
            }
            Err(EngineError::NonCommutingFusion { a, b }) => {
                let w: Vec<f64> = tf.parent_indices.iter().map(|&x| weights[x]).collect();
                match graded_candidate(tf, &w) {
                    Some((candidate, classes, _)) => Ok(Candidate::Blocks { route: "Z2 grading", candidate, classes }),
                    None => Err(EngineError::NonCommutingFusion { a, b }),
                }
            }
            Err(e) => Err(e),
        }
    }

    pub(crate) fn stage(&self, idx: &[usize], s: CMatrix) -> Stage {
        Stage {
            names: self.names(idx),
            s,
            t: self.theory.t.as_ref().map(|t| idx.iter().map(|&a| t[a]).collect()),
            kinds: idx.iter().map(|&a| self.kinds[a]).collect(),
            members: idx.iter().map(|&a| vec![a]).collect(),
        }
    }

    /// Condenses the blocks of `classes` over the parent labels `idx`.
    pub(crate) fn condensed_stage(
        &self,
        idx: &[usize],
        candidate: &CMatrix,
        classes: &[Vec<usize>],
    ) -> Result<(Stage, Vec<String>), EngineError> {
        let names = self.names(idx);
        let c = condense(candidate, classes, &names)?;
        let base = self.stage(idx, CMatrix::zeros(0, 0));
        let mut stage = Stage { names: vec![], s: c.s, t: base.t.as_ref().map(|_| vec![]), kinds: vec![], members: vec![] };
        for (k, block) in c.blocks.iter().enumerate() {
            let head = block[0];
            let name = if block.len() > 1 { format!("{}'", names[head]) } else { names[head].clone() };
            stage.names.push(name);
            stage.kinds.push(if k == 0 { AnyonKind::Vacuum } else { base.kinds[head] });
            if let (Some(t), Some(bt)) = (stage.t.as_mut(), base.t.as_ref()) {
                t.push(if k == 0 { real(1.0) } else { bt[head] });
            }
            stage.members.push(block.iter().map(|&b| idx[b]).collect());
        }
        let discarded = c.discarded.iter().map(|&b| names[b].clone()).collect();
        Ok((stage, discarded))
    }

    /// Labels whose dimension fell strictly below the diagram prediction.
    /// Condensed labels and labels explained by a split are exempt.
    pub(crate) fn dimension_drops(&self, stage: &Stage, predicted: &[f64]) -> Vec<DimChange> {
        let dims = stage.dims();
        (1..stage.names.len())
            .filter(|&i| stage.members[i].len() == 1)
            .filter_map(|i| {
                let p = predicted[stage.members[i][0]];
                (dims[i] < p - DIM_TOL).then(|| DimChange {
                    anyon: stage.names[i].clone(),
                    predicted: p,
                    reconstructed: dims[i],
                })
            })
            .collect()
    }
}

fn verb<'a>(n: usize, one: &'a str, many: &'a str) -> &'a str {
    if n == 1 {
        one
    } else {
        many
    }
}

pub(crate) fn forbid_step(p: &Protocol, removed: &[usize], induced: bool, labels: &[usize]) -> ProcessStep {
    let names = p.names(removed);
    let note = if induced {
        format!("Every remaining flavor of {} is incompatible with the survivors; it is removed as well.", names.join(", "))
    } else {
        format!("No flavor of {} survives the forbidden labels.", names.join(", "))
    };
    ProcessStep {
        payload: StepPayload::Forbid { removed: names, induced },
        note,
        labels: p.names(labels),
        s: None,
    }
}

pub(crate) fn partial_step(p: &Protocol, surv: &SurvivalResult) -> ProcessStep {
    let anyons = surv
        .partially_forbidden
        .iter()
        .map(|&(a, removed)| PartialInfo {
            anyon: p.theory.labels[a].display_name.clone(),
            removed_squares: removed,
            remaining_squares: surv.remaining[a],
            predicted_dim: surv.predicted_dims[a],
            surviving_flavors: surv.surviving_tags[a]
                .iter()
                .map(|&tag| p.diagram.flavor_name(crate::flavor::Flavor { anyon: a, tag }))
                .collect(),
        })
        .collect::<Vec<_>>();
    let names: Vec<&str> = anyons.iter().map(|x: &PartialInfo| x.anyon.as_str()).collect();
    ProcessStep {
        note: format!("{} {} only some of {} flavors.", names.join(", "), verb(names.len(), "keeps", "keep"), verb(names.len(), "its", "their")),
        payload: StepPayload::PartialForbid { anyons },
        labels: p.names(&surv.surviving),
        s: None,
    }
}

pub(crate) fn condense_step(
    stage: &Stage,
    route: &str,
    reinstated: Vec<String>,
    candidate: MatrixSnapshot,
    discarded: Vec<String>,
    protocol: &Protocol,
) -> ProcessStep {
    let blocks: Vec<Vec<String>> = stage.members.iter().map(|m| protocol.names(m)).collect();
    let condensing: Vec<String> = blocks[0].iter().skip(1).cloned().collect();
    let mut note = format!(
        "Rows of {} are proportional; {} {} to the vacuum.",
        blocks[0].join(", "),
        condensing.join(", "),
        verb(condensing.len(), "condenses", "condense")
    );
    if !reinstated.is_empty() {
        note += &format!(
            " {} {} trivially with every survivor and {} restored before condensing.",
            reinstated.join(", "),
            verb(reinstated.len(), "fuses", "fuse"),
            verb(reinstated.len(), "is", "are")
        );
    }
    ProcessStep {
        payload: StepPayload::Condense { route: route.to_string(), reinstated, blocks, candidate, discarded },
        note,
        labels: stage.names.clone(),
        s: Some(stage.snapshot()),
    }
}

pub(crate) fn symmetry_step(stage: &Stage, drops: Vec<DimChange>) -> ProcessStep {
    let names: Vec<&str> = drops.iter().map(|d| d.anyon.as_str()).collect();
    ProcessStep {
        note: format!(
            "Reconstructed {} of {} {} below the diagram prediction; only some flavors are realized.",
            verb(names.len(), "dimension", "dimensions"),
            names.join(", "),
            verb(names.len(), "falls", "fall")
        ),
        payload: StepPayload::SymmetryBreak { anyons: drops },
        labels: stage.names.clone(),
        s: Some(stage.snapshot()),
    }
}

/// Split (when applicable) and match steps for an identified theory.
pub(crate) fn match_steps(stage: &Stage, m: &CatalogMatch) -> Vec<ProcessStep> {
    let mut steps = Vec::new();
    if let (MatchVia::Split { merge_map }, Some(w)) = (&m.via, &m.split) {
        let groups: Vec<(String, Vec<String>)> = stage
            .names
            .iter()
            .map(|name| {
                let members =
                    m.relabeling.iter().filter(|(a, _)| label_root(a) == name).map(|(_, b)| b.clone()).collect();
                (name.clone(), members)
            })
            .collect();
        let splitting: Vec<&str> =
            groups.iter().filter(|(_, g)| g.len() > 1).map(|(a, _)| a.as_str()).collect();
        steps.push(ProcessStep {
            note: format!(
                "{} split into pairs; {}'s S is block diagonal and its symmetric block equals the reduced S.",
                splitting.join(", "),
                m.name
            ),
            payload: StepPayload::Split {
                theory: m.name.clone(),
                merge_map: merge_map.clone(),
                groups,
                discarded: w.antisymmetric.clone(),
            },
            labels: m.relabeling.iter().map(|(a, _)| a.clone()).collect(),
            s: Some(MatrixSnapshot::new(&stage.names, &w.symmetric_block)),
        });
    }
    steps.push(ProcessStep {
        note: format!("The S-matrix matches {} entrywise.", m.name),
        payload: StepPayload::CatalogMatch {
            theory: m.name.clone(),
            key: m.key.clone(),
            via: m.via.clone(),
            relabeling: m.relabeling.clone(),
            correspondence: m.correspondence.clone(),
        },
        labels: m.relabeling.iter().map(|(_, b)| b.clone()).collect(),
        s: Some(stage.snapshot()),
    });
    steps
}

/// `C` for `C_a`; split components carry a one-letter suffix.
fn label_root(name: &str) -> &str {
    match name.rsplit_once('_') {
        Some((root, suffix)) if suffix.len() == 1 && suffix.chars().all(|c| c.is_ascii_lowercase()) => root,
        _ => name,
    }
}

pub(crate) fn final_theory(m: &CatalogMatch) -> FinalTheory {
    FinalTheory { name: m.name.clone(), key: m.key.clone(), correspondence: m.relabeling.clone(), extrapolated: false }
}

pub(crate) fn trivial_theory() -> FinalTheory {
    FinalTheory { name: "trivial".into(), key: "trivial".into(), correspondence: vec![], extrapolated: true }
}

pub(crate) const TRIVIAL_NOTE: &str =
    "Only the vacuum survives. The trivial theory is an extrapolation: this cell is not tabulated in the reference results.";

pub(crate) const MULTIPLICITY_NOTE: &str = "Z2 (with multiplicity): non-Abelian anyons condensed, so the dimensions of \
     the intermediate subspaces are not tracked; only the final S-matrix is verified.";

struct Outcome {
    steps: Vec<ProcessStep>,
    final_theory: Option<FinalTheory>,
    notes: Vec<String>,
}

fn attempt(p: &Protocol, labels: &[usize], predicted: &[f64]) -> Result<Outcome, EngineError> {
    if labels.iter().all(|&a| a == 0) {
        return Ok(Outcome { steps: vec![], final_theory: Some(trivial_theory()), notes: vec![TRIVIAL_NOTE.into()] });
    }
    let reinstated = p.reinstatable(labels);
    let mut work: Vec<usize> = labels.iter().chain(&reinstated).copied().collect();
    work.sort_unstable();
    let mut weights = predicted.to_vec();
    for &b in &reinstated {
        weights[b] = p.dims[b] as f64;
    }
    let tf = p.truncate(&work);
    let mut steps = Vec::new();
    let mut notes = Vec::new();
    let stage = match p.candidate(&tf, &weights)? {
        Candidate::Modular(s) => p.stage(&work, s),
        Candidate::Blocks { route, candidate, classes } => {
            if classes[0].len() < 2 {
                return Err(EngineError::Reconstruction("proportional rows do not involve the vacuum".into()));
            }
            if let Some(c) = classes[1..].iter().find(|c| c.len() > 1) {
                let names: Vec<String> = c.iter().map(|&i| tf.labels[i].clone()).collect();
                return Err(EngineError::Reconstruction(format!(
                    "rows of {} are proportional outside the vacuum block",
                    names.join(", ")
                )));
            }
            let (stage, discarded) = p.condensed_stage(&work, &candidate, &classes)?;
            if stage.members[0].iter().any(|&a| p.dims[a] > 1) {
                notes.push(MULTIPLICITY_NOTE.to_string());
            }
            let snap = MatrixSnapshot::new(&tf.labels, &candidate);
            steps.push(condense_step(&stage, route, p.names(&reinstated), snap, discarded, p));
            stage
        }
    };
    // A reduced S that is only the symmetric block of a larger theory is
    // not modular by itself; the split match stands in for validation.
    let matched = match_catalog(&stage.presented(), &p.catalog);
    let split = matches!(matched.as_ref().map(|m| &m.via), Some(MatchVia::Split { .. }));
    if !split {
        let theory = AnyonTheory::from_modular_data(
            "reduced",
            stage.names.iter().map(AnyonLabel::opaque).collect(),
            stage.s.clone(),
            stage.t.clone(),
        )?;
        let report = validate_theory(&theory);
        let failures: Vec<&str> =
            report.failures().iter().map(|c| c.name).filter(|n| *n != "T unit modulus").collect();
        if !failures.is_empty() {
            return Err(EngineError::Reconstruction(format!("reduced theory fails: {}", failures.join(", "))));
        }
    }
    let drops = if split { vec![] } else { p.dimension_drops(&stage, predicted) };
    if !drops.is_empty() {
        steps.push(symmetry_step(&stage, drops));
    }
    let final_theory = match &matched {
        Some(m) => {
            steps.extend(match_steps(&stage, m));
            Some(final_theory(m))
        }
        None => {
            notes.push("The reduced theory is valid but matches no catalog entry.".into());
            None
        }
    };
    Ok(Outcome { steps, final_theory, notes })
}

/// Repair candidates: partially forbidden anyons, dyons first, then by index.
fn repair_sets(p: &Protocol, surv: &SurvivalResult) -> Vec<Vec<usize>> {
    let mut partial: Vec<usize> = surv.partially_forbidden.iter().map(|&(a, _)| a).collect();
    partial.sort_by_key(|&a| (p.kinds[a] != AnyonKind::Dyon, a));
    let mut sets = vec![vec![]];
    for depth in 1..=REPAIR_DEPTH.min(partial.len()) {
        let mut combo: Vec<usize> = (0..depth).collect();
        loop {
            sets.push(combo.iter().map(|&i| partial[i]).collect());
            let Some(pos) = (0..depth).rev().find(|&i| combo[i] < partial.len() - depth + i) else { break };
            combo[pos] += 1;
            for j in pos + 1..depth {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    sets
}

pub(crate) fn base_report(p: &Protocol, spec: &ForbidSpec, mode: Mode, surv: &SurvivalResult) -> PhaseReport {
    PhaseReport {
        group: p.group_name().to_string(),
        spec: spec.names(&p.diagram),
        mode,
        survivors: p.names(&surv.surviving),
        steps: vec![],
        final_theory: None,
        branches: vec![],
        notes: vec![],
    }
}

impl Protocol {
    pub fn run_auto(&self, spec: &ForbidSpec) -> Result<PhaseReport, EngineError> {
        let surv = self.survivors(spec)?;
        let mut report = base_report(self, spec, Mode::Automatic, &surv);
        if !surv.fully_forbidden.is_empty() {
            report.steps.push(forbid_step(self, &surv.fully_forbidden, false, &surv.surviving));
        }
        if !surv.partially_forbidden.is_empty() {
            report.steps.push(partial_step(self, &surv));
        }
        for removal in repair_sets(self, &surv) {
            let labels: Vec<usize> = surv.surviving.iter().copied().filter(|a| !removal.contains(a)).collect();
            match attempt(self, &labels, &surv.predicted_dims) {
                Ok(out) => {
                    let outcome = out.final_theory.as_ref().map_or("valid, unidentified".to_string(), |f| f.name.clone());
                    report.branches.push(Branch { removed: self.names(&removal), outcome });
                    if !removal.is_empty() {
                        report.steps.push(forbid_step(self, &removal, true, &labels));
                    }
                    report.steps.extend(out.steps);
                    report.final_theory = out.final_theory;
                    report.notes.extend(out.notes);
                    return Ok(report);
                }
                Err(e) => report.branches.push(Branch { removed: self.names(&removal), outcome: e.to_string() }),
            }
        }
        Err(EngineError::NoValidTheory { spec: spec.display(&self.diagram), report: Box::new(report) })
    }

    pub fn enumerate_diagram(&self) -> Vec<DiagramCell> {
        let specs = self.diagram.all_specs();
        specs
            .par_iter()
            .map(|spec| {
                let names = spec.names(&self.diagram);
                let result = self.run_auto(spec).map_err(|e| e.to_string());
                let script_agrees = script_for(self.group_name(), &names).map(|script| {
                    let scripted = run_script_with(self, spec, &script);
                    match (&result, scripted) {
                        (Ok(a), Ok(b)) => a.final_name() == b.final_name(),
                        _ => false,
                    }
                });
                DiagramCell { spec: spec.clone(), names, result, script_agrees }
            })
            .collect()
    }
}

/// One cell of the phase diagram.
#[derive(Debug, Clone)]
pub struct DiagramCell {
    pub spec: ForbidSpec,
    pub names: Vec<String>,
    pub result: Result<PhaseReport, String>,
    /// Whether the bundled script for this cell reaches the same theory.
    pub script_agrees: Option<bool>,
}

impl DiagramCell {
    pub fn final_name(&self) -> Option<&str> {
        self.result.as_ref().ok().and_then(|r| r.final_name())
    }
}

pub fn run_auto(g: &FiniteGroup, spec: &ForbidSpec) -> Result<PhaseReport, EngineError> {
    Protocol::new(g)?.run_auto(spec)
}

pub fn enumerate_diagram(g: &FiniteGroup) -> Result<Vec<DiagramCell>, EngineError> {
    Ok(Protocol::new(g)?.enumerate_diagram())
}
