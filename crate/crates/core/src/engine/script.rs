//! Scripted transitions: an ordered list of claimed steps, each of which is
//! recomputed and checked.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::auto::{
    base_report, condense_step, final_theory, forbid_step, match_steps, partial_step, symmetry_step,
    trivial_theory, Candidate, Protocol, Stage, MULTIPLICITY_NOTE, TRIVIAL_NOTE,
};
use super::matching::{match_catalog, match_direct, split_check, CatalogMatch, MatchVia};
use super::report::{MatrixSnapshot, Mode, PhaseReport};
use super::EngineError;
use crate::flavor::{ForbidSpec, SurvivalResult};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMatrix, C64};
use crate::tol;

/// A matrix written with exact-looking entries such as `-3*sqrt2`, `w/3`
/// or `1/sqrt12`, times an optional common factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSpec {
    #[serde(default)]
    pub scale: Option<String>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixSpec {
    pub fn to_matrix(&self) -> Result<CMatrix, String> {
        let k = match &self.scale {
            Some(s) => parse_scalar(s)?,
            None => C64::new(1.0, 0.0),
        };
        let n = self.rows.len();
        let m = self.rows.first().map_or(0, Vec::len);
        if self.rows.iter().any(|r| r.len() != m) {
            return Err("ragged matrix".into());
        }
        let mut out = CMatrix::zeros(n, m);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                out[(i, j)] = parse_scalar(cell)? * k;
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScriptStep {
    Forbid {
        anyons: Vec<String>,
        #[serde(default)]
        induced: bool,
    },
    PartialForbid {
        anyons: Vec<String>,
    },
    Condense {
        /// Nontrivial blocks; unlisted labels stay alone.
        blocks: Vec<Vec<String>>,
        #[serde(default)]
        reinstate: Vec<String>,
        #[serde(default)]
        candidate: Option<MatrixSpec>,
        /// Compare the candidate only up to an overall factor.
        #[serde(default)]
        proportional: bool,
        #[serde(default)]
        result: Option<MatrixSpec>,
    },
    Split {
        theory: String,
        #[serde(default)]
        merge_map: Option<String>,
    },
    SymmetryBreak {
        anyons: Vec<String>,
    },
    CatalogMatch {
        theory: String,
        #[serde(default)]
        relabeling: Vec<(String, String)>,
        #[serde(default)]
        s: Option<MatrixSpec>,
    },
}

impl ScriptStep {
    fn kind_name(&self) -> &'static str {
        match self {
            ScriptStep::Forbid { .. } => "forbid",
            ScriptStep::PartialForbid { .. } => "partial_forbid",
            ScriptStep::Condense { .. } => "condense",
            ScriptStep::Split { .. } => "split",
            ScriptStep::SymmetryBreak { .. } => "symmetry_break",
            ScriptStep::CatalogMatch { .. } => "catalog_match",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptSpec {
    #[serde(default)]
    pub classes: Vec<String>,
    #[serde(default)]
    pub irreps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Script {
    pub name: String,
    pub group: String,
    pub title: String,
    pub spec: ScriptSpec,
    /// Theory the script must end in.
    #[serde(rename = "final")]
    pub final_theory: String,
    pub steps: Vec<ScriptStep>,
}

impl Script {
    pub fn from_json(text: &str) -> Result<Self, EngineError> {
        serde_json::from_str(text).map_err(|e| EngineError::Script(e.to_string()))
    }

    pub fn spec_names(&self) -> BTreeSet<String> {
        self.spec.classes.iter().chain(&self.spec.irreps).cloned().collect()
    }
}

const S3_SCRIPTS: [&str; 15] = [
    include_str!("../../scripts/s3/none.json"),
    include_str!("../../scripts/s3/cx.json"),
    include_str!("../../scripts/s3/cy.json"),
    include_str!("../../scripts/s3/gamma2.json"),
    include_str!("../../scripts/s3/gamma_minus1.json"),
    include_str!("../../scripts/s3/cy_gamma2.json"),
    include_str!("../../scripts/s3/cx_cy.json"),
    include_str!("../../scripts/s3/cx_gamma2.json"),
    include_str!("../../scripts/s3/cx_gamma_minus1.json"),
    include_str!("../../scripts/s3/cy_gamma_minus1.json"),
    include_str!("../../scripts/s3/gamma_minus1_gamma2.json"),
    include_str!("../../scripts/s3/cx_cy_gamma2.json"),
    include_str!("../../scripts/s3/cx_cy_gamma_minus1.json"),
    include_str!("../../scripts/s3/cx_gamma_minus1_gamma2.json"),
    include_str!("../../scripts/s3/cy_gamma_minus1_gamma2.json"),
];

/// Scripts shipped for a group, matched by group name.
pub fn bundled_scripts(group: &str) -> Vec<Script> {
    if group.eq_ignore_ascii_case("s3") {
        S3_SCRIPTS.iter().map(|s| Script::from_json(s).expect("bundled scripts parse")).collect()
    } else {
        vec![]
    }
}

pub fn script_for(group: &str, spec_names: &[String]) -> Option<Script> {
    let want: BTreeSet<String> = spec_names.iter().cloned().collect();
    bundled_scripts(group).into_iter().find(|s| s.spec_names() == want)
}

/// Parses `[-]factor[*factor...][/factor...]` where a factor is an integer,
/// `sqrtN` (or `√N`), `w` (or `ω`), `wbar` (or `ω̄`) or `i`. Factors may
/// also be written adjacently, as in `3sqrt2`.
pub fn parse_scalar(text: &str) -> Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    let mut parts = body.split('/');
    let mut value = product(parts.next().unwrap_or(""), text)?;
    for den in parts {
        let d = product(den, text)?;
        if d.norm() == 0.0 {
            return Err(format!("division by zero in `{text}`"));
        }
        value /= d;
    }
    Ok(if negative { -value } else { value })
}

fn product(s: &str, whole: &str) -> Result<C64, String> {
    let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut value = C64::new(1.0, 0.0);
    let mut rest = s;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('*') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix("sqrt").or_else(|| rest.strip_prefix('√')) {
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            let n: f64 = r[..end].parse().map_err(|_| format!("bad radicand in `{whole}`"))?;
            value *= n.sqrt();
            rest = &r[end..];
        } else if let Some(r) = rest.strip_prefix("wbar").or_else(|| rest.strip_prefix("ω̄")) {
            value *= omega.conj();
            rest = r;
        } else if let Some(r) = rest.strip_prefix('w').or_else(|| rest.strip_prefix('ω')) {
            value *= omega;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('i') {
            value *= C64::new(0.0, 1.0);
            rest = r;
        } else if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let end = rest.find(|c: char| !c.is_ascii_digit() && c != '.').unwrap_or(rest.len());
            let n: f64 = rest[..end].parse().map_err(|_| format!("bad number in `{whole}`"))?;
            value *= n;
            rest = &rest[end..];
        } else {
            return Err(format!("cannot parse `{whole}`"));
        }
    }
    Ok(value)
}

fn matrices_agree(got: &CMatrix, want: &CMatrix, proportional: bool) -> Result<(), String> {
    let (g, w) = if proportional {
        let (a, b) = (got[(0, 0)], want[(0, 0)]);
        if a.norm() <= tol::tau() || b.norm() <= tol::tau() {
            return Err("vacuum entry vanishes".into());
        }
        (got / a, want / b)
    } else {
        (got.clone(), want.clone())
    };
    let diff = linalg::max_abs_diff(&g, &w);
    if diff <= tol::tau().max(1e-9) * 10.0 {
        Ok(())
    } else {
        Err(format!("matrices differ by {diff:e}\nexpected {}\ngot      {}", crate::render::matrix_inline(&w), crate::render::matrix_inline(&g)))
    }
}

fn name_set(v: &[String]) -> BTreeSet<String> {
    v.iter().cloned().collect()
}

struct Runner<'a> {
    p: &'a Protocol,
    surv: SurvivalResult,
    labels: Vec<usize>,
    stage: Option<Stage>,
    split: Option<CatalogMatch>,
    report: PhaseReport,
}

impl Runner<'_> {
    fn resolve(&self, names: &[String]) -> Result<Vec<usize>, String> {
        names.iter().map(|n| self.p.index_of(n).ok_or_else(|| format!("unknown anyon {n}"))).collect()
    }

    /// Reconstructs the current labels directly when no stage exists yet.
    fn ensure_stage(&mut self) -> Result<(), String> {
        if self.stage.is_some() {
            return Ok(());
        }
        if self.labels.iter().all(|&a| a == 0) {
            self.stage = Some(self.p.stage(&[0], CMatrix::identity(1, 1)));
            return Ok(());
        }
        let tf = self.p.truncate(&self.labels);
        match self.p.candidate(&tf, &self.surv.predicted_dims).map_err(|e| e.to_string())? {
            Candidate::Modular(s) => {
                self.stage = Some(self.p.stage(&self.labels, s));
                Ok(())
            }
            Candidate::Blocks { classes, .. } => {
                let names: Vec<Vec<String>> =
                    classes.iter().filter(|c| c.len() > 1).map(|c| c.iter().map(|&i| tf.labels[i].clone()).collect()).collect();
                Err(format!("reconstruction is degenerate (proportional rows {names:?}); a condense step is required"))
            }
        }
    }

    fn step(&mut self, step: &ScriptStep) -> Result<(), String> {
        let p = self.p;
        match step {
            ScriptStep::Forbid { anyons, induced: false } => {
                let want = name_set(&p.names(&self.surv.fully_forbidden));
                if name_set(anyons) != want {
                    return Err(format!("diagram forbids {want:?}, script claims {anyons:?}"));
                }
                self.labels = self.surv.surviving.clone();
                self.report.steps.push(forbid_step(p, &self.surv.fully_forbidden, false, &self.labels));
            }
            ScriptStep::Forbid { anyons, induced: true } => {
                if self.stage.is_some() {
                    return Err("induced forbiddance must precede reconstruction".into());
                }
                let idx = self.resolve(anyons)?;
                if let Some(&a) = idx.iter().find(|&&a| !self.surv.is_partial(a) || !self.labels.contains(&a)) {
                    return Err(format!("{} is not a partially forbidden survivor", p.names(&[a])[0]));
                }
                self.labels.retain(|a| !idx.contains(a));
                self.report.steps.push(forbid_step(p, &idx, true, &self.labels));
            }
            ScriptStep::PartialForbid { anyons } => {
                let partial: Vec<usize> = self.surv.partially_forbidden.iter().map(|&(a, _)| a).collect();
                let want = name_set(&p.names(&partial));
                if name_set(anyons) != want {
                    return Err(format!("diagram partially forbids {want:?}, script claims {anyons:?}"));
                }
                self.report.steps.push(partial_step(p, &self.surv));
            }
            ScriptStep::Condense { blocks, reinstate, candidate, proportional, result } => {
                let restored = self.resolve(reinstate)?;
                let allowed = p.reinstatable(&self.labels);
                if let Some(&b) = restored.iter().find(|b| !allowed.contains(b)) {
                    return Err(format!("{} does not fuse trivially with every survivor", p.names(&[b])[0]));
                }
                let mut work: Vec<usize> = self.labels.iter().chain(&restored).copied().collect();
                work.sort_unstable();
                let mut weights = self.surv.predicted_dims.clone();
                for &b in &restored {
                    weights[b] = p.dims[b] as f64;
                }
                let tf = p.truncate(&work);
                let (route, cand, classes) = match p.candidate(&tf, &weights).map_err(|e| e.to_string())? {
                    Candidate::Modular(_) => return Err("S is already modular; nothing condenses".into()),
                    Candidate::Blocks { route, candidate, classes } => (route, candidate, classes),
                };
                if let Some(spec) = candidate {
                    matrices_agree(&cand, &spec.to_matrix()?, *proportional).map_err(|e| format!("candidate: {e}"))?;
                }
                let mut partition: Vec<Vec<usize>> = Vec::new();
                for b in blocks {
                    let idx: Vec<usize> = b
                        .iter()
                        .map(|n| tf.index_of(n).ok_or_else(|| format!("{n} is not present")))
                        .collect::<Result<_, _>>()?;
                    partition.push(idx);
                }
                for i in 0..tf.len() {
                    if !partition.iter().flatten().any(|&x| x == i) {
                        partition.push(vec![i]);
                    }
                }
                let (stage, discarded) = p.condensed_stage(&work, &cand, &partition).map_err(|e| e.to_string())?;
                let mut found: Vec<Vec<usize>> = classes.clone();
                let mut claimed = partition.clone();
                for v in found.iter_mut().chain(claimed.iter_mut()) {
                    v.sort_unstable();
                }
                found.sort();
                claimed.sort();
                if found != claimed {
                    return Err(format!("proportional classes are {classes:?}, script condenses {partition:?}"));
                }
                if let Some(spec) = result {
                    matrices_agree(&stage.s, &spec.to_matrix()?, false).map_err(|e| format!("result: {e}"))?;
                }
                if stage.members[0].iter().any(|&a| p.dims[a] > 1) {
                    self.report.notes.push(MULTIPLICITY_NOTE.into());
                }
                let snap = MatrixSnapshot::new(&tf.labels, &cand);
                self.report.steps.push(condense_step(&stage, route, p.names(&restored), snap, discarded, p));
                self.labels = work;
                self.stage = Some(stage);
            }
            ScriptStep::Split { theory, merge_map } => {
                self.ensure_stage()?;
                let stage = self.stage.as_ref().expect("stage exists");
                let entry = p.catalog.find(theory).map_err(|e| e.to_string())?;
                let merge = match merge_map {
                    Some(n) => entry.merge_maps.iter().find(|m| &m.name == n),
                    None => entry.merge_maps.first(),
                }
                .ok_or_else(|| format!("{} has no such merge map", entry.name()))?;
                let w = split_check(&stage.presented(), entry, merge);
                if !w.matched {
                    return Err(w.violation.unwrap_or_else(|| "split check failed".into()));
                }
                let mut relabeling = Vec::new();
                for (i, &g) in w.permutation.iter().enumerate() {
                    let group = &merge.groups[g];
                    if group.len() == 1 {
                        relabeling.push((stage.names[i].clone(), group[0].clone()));
                    } else {
                        for (k, l) in group.iter().enumerate() {
                            relabeling.push((format!("{}_{}", stage.names[i], (b'a' + k as u8) as char), l.clone()));
                        }
                    }
                }
                let m = CatalogMatch {
                    key: entry.key.clone(),
                    name: entry.name().to_string(),
                    via: MatchVia::Split { merge_map: merge.name.clone() },
                    correspondence: entry
                        .correspondences
                        .iter()
                        .find(|c| name_pairs(&c.pairs) == name_pairs(&relabeling))
                        .map(|c| c.name.clone()),
                    relabeling,
                    split: Some(w),
                };
                let steps = match_steps(stage, &m);
                self.report.steps.push(steps[0].clone());
                self.split = Some(m);
            }
            ScriptStep::SymmetryBreak { anyons } => {
                self.ensure_stage()?;
                let stage = self.stage.as_ref().expect("stage exists");
                let drops = p.dimension_drops(stage, &self.surv.predicted_dims);
                let got: Vec<String> = drops.iter().map(|d| d.anyon.clone()).collect();
                if name_set(&got) != name_set(anyons) {
                    return Err(format!("dimension drops found for {got:?}, script claims {anyons:?}"));
                }
                self.report.steps.push(symmetry_step(stage, drops));
            }
            ScriptStep::CatalogMatch { theory, relabeling, s } => {
                self.ensure_stage()?;
                let stage = self.stage.as_ref().expect("stage exists");
                if let Some(spec) = s {
                    matrices_agree(&stage.s, &spec.to_matrix()?, false).map_err(|e| format!("S: {e}"))?;
                }
                let entry = p.catalog.find(theory).map_err(|e| e.to_string())?;
                let m = match self.split.take() {
                    Some(m) if m.key == entry.key => m,
                    Some(m) => return Err(format!("split was checked against {}, not {}", m.name, entry.name())),
                    None => {
                        let perm = match_direct(&stage.presented(), entry)
                            .ok_or_else(|| format!("S does not match {} under any relabeling", entry.name()))?;
                        let names = entry.theory.names();
                        let found: Vec<(String, String)> =
                            perm.iter().enumerate().map(|(i, &j)| (stage.names[i].clone(), names[j].clone())).collect();
                        CatalogMatch {
                            key: entry.key.clone(),
                            name: entry.name().to_string(),
                            via: MatchVia::Direct,
                            correspondence: None,
                            relabeling: found,
                            split: None,
                        }
                    }
                };
                if !relabeling.is_empty() && name_pairs(relabeling) != name_pairs(&m.relabeling) {
                    return Err(format!("relabeling is {:?}, script claims {relabeling:?}", m.relabeling));
                }
                let steps = match_steps(stage, &m);
                self.report.steps.push(steps.last().expect("match step").clone());
                self.report.final_theory = Some(final_theory(&m));
            }
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<(), String> {
        if self.report.final_theory.is_some() {
            return Ok(());
        }
        if self.labels.iter().all(|&a| a == 0) {
            self.report.final_theory = Some(trivial_theory());
            self.report.notes.push(TRIVIAL_NOTE.into());
            return Ok(());
        }
        self.ensure_stage()?;
        let stage = self.stage.as_ref().expect("stage exists");
        let m = match_catalog(&stage.presented(), &self.p.catalog).ok_or("no catalog entry matches")?;
        self.report.steps.extend(match_steps(stage, &m));
        self.report.final_theory = Some(final_theory(&m));
        Ok(())
    }
}

fn name_pairs(v: &[(String, String)]) -> BTreeSet<(String, String)> {
    v.iter().cloned().collect()
}

impl Protocol {
    pub fn run_script(&self, spec: &ForbidSpec, script: &Script) -> Result<PhaseReport, EngineError> {
        run_script_with(self, spec, script)
    }
}

pub(crate) fn run_script_with(p: &Protocol, spec: &ForbidSpec, script: &Script) -> Result<PhaseReport, EngineError> {
    let claimed = p.spec_from_names(&script.spec.classes, &script.spec.irreps)?;
    if &claimed != spec {
        return Err(EngineError::Script(format!(
            "script `{}` is written for {}, not {}",
            script.name,
            claimed.display(&p.diagram),
            spec.display(&p.diagram)
        )));
    }
    let surv = p.survivors(spec)?;
    let report = base_report(p, spec, Mode::Scripted, &surv);
    let labels = (0..p.theory.len()).collect();
    let mut r = Runner { p, surv, labels, stage: None, split: None, report };
    if !r.surv.fully_forbidden.is_empty() && !matches!(script.steps.first(), Some(ScriptStep::Forbid { induced: false, .. })) {
        return Err(EngineError::ScriptStepFailed {
            index: 0,
            kind: "forbid".into(),
            reason: "the first step must forbid the anyons removed by the diagram".into(),
        });
    }
    if r.surv.fully_forbidden.is_empty() {
        r.labels = r.surv.surviving.clone();
    }
    for (index, step) in script.steps.iter().enumerate() {
        r.step(step).map_err(|reason| EngineError::ScriptStepFailed {
            index,
            kind: step.kind_name().into(),
            reason,
        })?;
    }
    r.finish().map_err(|reason| EngineError::ScriptStepFailed {
        index: script.steps.len(),
        kind: "final".into(),
        reason,
    })?;
    let got = r.report.final_name().unwrap_or("none").to_string();
    if !got.eq_ignore_ascii_case(&script.final_theory) {
        return Err(EngineError::ScriptStepFailed {
            index: script.steps.len(),
            kind: "final".into(),
            reason: format!("script ends in {got}, expected {}", script.final_theory),
        });
    }
    Ok(r.report)
}

pub fn run_script(g: &FiniteGroup, spec: &ForbidSpec, script: &Script) -> Result<PhaseReport, EngineError> {
    Protocol::new(g)?.run_script(spec, script)
}
