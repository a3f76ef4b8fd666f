//! Flavor diagrams: group-element rows × G-irrep column slots, each square
//! owned by one flavor of one anyon.
//!
//! Within a row of class C and the column block of a G-irrep Γ (dim Γ² slots),
//! the centralizer irreps γ of C take mult(γ ⊂ Res Γ)·dim γ·dim Γ slots each,
//! in character-table order. An anyon therefore owns exactly d² squares.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{restrict_multiplicity, FiniteGroup, GroupError};
use crate::modular::DoubleData;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlavorError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("anyon {anyon} owns {squares} squares but d² = {expected}")]
    AttributionMismatch { anyon: String, squares: usize, expected: usize },
    #[error("the vacuum cannot be forbidden: {0} is a trivial label")]
    VacuumForbidden(String),
    #[error("unknown conjugacy class {0:?}")]
    UnknownClass(String),
    #[error("unknown irrep {0:?}")]
    UnknownIrrep(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub class_index: usize,
    pub element: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub irrep: usize,
    pub slot: usize,
}

/// One square: the owning anyon and, when the anyon appears under more than
/// one G-irrep block, a 1-based flavor tag numbering those blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub anyon: usize,
    pub tag: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlavorDiagram {
    pub group: String,
    pub element_names: Vec<String>,
    /// "C" + representative name, per class.
    pub class_names: Vec<String>,
    pub irrep_names: Vec<String>,
    pub anyon_names: Vec<String>,
    /// Integer quantum dimensions of the double.
    pub dims: Vec<usize>,
    /// Class of each anyon.
    pub anyon_class: Vec<usize>,
    pub rows: Vec<Row>,
    pub columns: Vec<Column>,
    /// `squares[row][column]`.
    pub squares: Vec<Vec<Square>>,
}

/// Labels removed from the theory; trivial labels are not allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ForbidSpec {
    pub classes: BTreeSet<usize>,
    pub irreps: BTreeSet<usize>,
}

impl ForbidSpec {
    pub fn new(classes: impl IntoIterator<Item = usize>, irreps: impl IntoIterator<Item = usize>) -> Self {
        Self { classes: classes.into_iter().collect(), irreps: irreps.into_iter().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.irreps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.classes.len() + self.irreps.len()
    }

    /// Resolves label names against a diagram. Classes accept `Cx` or the
    /// bare representative `x`; irreps accept `Gamma2`, `Γ2` and `Γ−1`.
    pub fn from_names(d: &FlavorDiagram, classes: &[String], irreps: &[String]) -> Result<Self, FlavorError> {
        let mut spec = Self::default();
        for name in classes {
            let k = d.class_index(name).ok_or_else(|| FlavorError::UnknownClass(name.clone()))?;
            spec.classes.insert(k);
        }
        for name in irreps {
            let k = d.irrep_index(name).ok_or_else(|| FlavorError::UnknownIrrep(name.clone()))?;
            spec.irreps.insert(k);
        }
        spec.validate(d)?;
        Ok(spec)
    }

    pub fn validate(&self, d: &FlavorDiagram) -> Result<(), FlavorError> {
        if self.classes.contains(&0) {
            return Err(FlavorError::VacuumForbidden(d.class_names[0].clone()));
        }
        if self.irreps.contains(&0) {
            return Err(FlavorError::VacuumForbidden(d.irrep_names[0].clone()));
        }
        if let Some(&k) = self.classes.iter().find(|&&k| k >= d.class_names.len()) {
            return Err(FlavorError::UnknownClass(format!("#{k}")));
        }
        if let Some(&k) = self.irreps.iter().find(|&&k| k >= d.irrep_names.len()) {
            return Err(FlavorError::UnknownIrrep(format!("#{k}")));
        }
        Ok(())
    }

    /// Label names, classes first, e.g. `["Cx", "Gamma2"]`.
    pub fn names(&self, d: &FlavorDiagram) -> Vec<String> {
        self.classes
            .iter()
            .map(|&k| d.class_names[k].clone())
            .chain(self.irreps.iter().map(|&k| d.irrep_names[k].clone()))
            .collect()
    }

    /// `{Cx, Gamma2}` style rendering.
    pub fn display(&self, d: &FlavorDiagram) -> String {
        format!("{{{}}}", self.names(d).join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalResult {
    /// Anyon indices with at least one remaining square, in anyon order.
    pub surviving: Vec<usize>,
    /// Remaining square count per anyon (all anyons).
    pub remaining: Vec<usize>,
    /// √(remaining squares) per anyon.
    pub predicted_dims: Vec<f64>,
    pub fully_forbidden: Vec<usize>,
    /// (anyon, removed square count) for survivors that lost squares.
    pub partially_forbidden: Vec<(usize, usize)>,
    /// Flavor tags of each anyon that keep at least one square.
    pub surviving_tags: Vec<Vec<Option<usize>>>,
}

impl SurvivalResult {
    pub fn is_partial(&self, anyon: usize) -> bool {
        self.partially_forbidden.iter().any(|&(a, _)| a == anyon)
    }
}

/// A flavor of an anyon as listed in projector images, e.g. `D1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flavor {
    pub anyon: usize,
    pub tag: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorImages {
    /// Anyons per conjugacy class, in class order.
    pub flux: Vec<Vec<usize>>,
    /// Anyon flavors per G-irrep, in irrep order.
    pub charge: Vec<Vec<Flavor>>,
}

pub fn build_diagram(g: &FiniteGroup) -> Result<FlavorDiagram, FlavorError> {
    FlavorDiagram::from_double(&DoubleData::new(g)?)
}

impl FlavorDiagram {
    pub fn from_double(data: &DoubleData) -> Result<Self, FlavorError> {
        let g = &data.group;
        let table = &data.table;
        let anyon_of = |class: usize, irrep: usize| {
            data.anyons.iter().position(|&p| p == (class, irrep)).expect("anyon exists")
        };

        let mut rows = Vec::new();
        for (k, c) in table.classes.iter().enumerate() {
            rows.extend(c.members.iter().map(|&m| Row { class_index: k, element: m }));
        }
        let mut columns = Vec::new();
        for (i, r) in table.irreps.iter().enumerate() {
            columns.extend((0..r.dim * r.dim).map(|slot| Column { irrep: i, slot }));
        }

        // Slot owners for one row of each class, one block per G-irrep.
        let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
        for (k, sub) in data.centralizers.iter().enumerate() {
            let sub_table = &data.centralizer_tables[k];
            let mut per_irrep = Vec::new();
            for (i, r) in table.irreps.iter().enumerate() {
                let mut owners = Vec::with_capacity(r.dim * r.dim);
                for (j, s) in sub_table.irreps.iter().enumerate() {
                    let mult = restrict_multiplicity(table, i, sub, sub_table, j)?;
                    owners.extend(std::iter::repeat_n(anyon_of(k, j), mult * s.dim * r.dim));
                }
                per_irrep.push(owners);
            }
            blocks.push(per_irrep);
        }

        let n = data.anyons.len();
        // Flavor tags number the G-irrep blocks in which an anyon appears.
        let mut appears: Vec<Vec<usize>> = vec![Vec::new(); n];
        for per_irrep in &blocks {
            for (i, owners) in per_irrep.iter().enumerate() {
                for &a in owners {
                    if !appears[a].contains(&i) {
                        appears[a].push(i);
                    }
                }
            }
        }
        let tag = |a: usize, i: usize| -> Option<usize> {
            (appears[a].len() > 1).then(|| appears[a].iter().position(|&x| x == i).unwrap() + 1)
        };

        let squares: Vec<Vec<Square>> = rows
            .iter()
            .map(|row| {
                columns
                    .iter()
                    .map(|col| {
                        let a = blocks[row.class_index][col.irrep][col.slot];
                        Square { anyon: a, tag: tag(a, col.irrep) }
                    })
                    .collect()
            })
            .collect();

        let dims: Vec<usize> = (0..n).map(|a| data.dim(a)).collect();
        let labels = data.labels();
        let anyon_names: Vec<String> = labels.iter().map(|l| l.display_name.clone()).collect();
        let mut counts = vec![0usize; n];
        for r in &squares {
            for s in r {
                counts[s.anyon] += 1;
            }
        }
        for a in 0..n {
            if counts[a] != dims[a] * dims[a] {
                return Err(FlavorError::AttributionMismatch {
                    anyon: anyon_names[a].clone(),
                    squares: counts[a],
                    expected: dims[a] * dims[a],
                });
            }
        }

        Ok(Self {
            group: g.name().to_string(),
            element_names: g.elements().to_vec(),
            class_names: table
                .classes
                .iter()
                .map(|c| format!("C{}", g.element_name(c.representative)))
                .collect(),
            irrep_names: table.irreps.iter().map(|r| r.name.clone()).collect(),
            anyon_names,
            dims,
            anyon_class: data.anyons.iter().map(|&(c, _)| c).collect(),
            rows,
            columns,
            squares,
        })
    }

    pub fn total_squares(&self) -> usize {
        self.rows.len() * self.columns.len()
    }

    pub fn square_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.anyon_names.len()];
        for r in &self.squares {
            for s in r {
                counts[s.anyon] += 1;
            }
        }
        counts
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        self.class_names
            .iter()
            .position(|c| c == name || c.strip_prefix('C') == Some(name) || c.replacen('C', "C_", 1) == name)
    }

    pub fn irrep_index(&self, name: &str) -> Option<usize> {
        let normalized = name.trim().replace('Γ', "Gamma").replace('−', "-").replace("Gamma_", "Gamma");
        self.irrep_names
            .iter()
            .position(|r| *r == name.trim() || r.replace("Gamma_", "Gamma") == normalized)
    }

    /// `D1`, `E2`, or the bare anyon name for untagged flavors.
    pub fn flavor_name(&self, f: Flavor) -> String {
        match f.tag {
            Some(t) => format!("{}{t}", self.anyon_names[f.anyon]),
            None => self.anyon_names[f.anyon].clone(),
        }
    }

    pub fn projector_images(&self) -> ProjectorImages {
        let mut flux: Vec<Vec<usize>> = vec![Vec::new(); self.class_names.len()];
        let mut charge: Vec<Vec<Flavor>> = vec![Vec::new(); self.irrep_names.len()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, col) in self.columns.iter().enumerate() {
                let s = self.squares[r][c];
                if !flux[row.class_index].contains(&s.anyon) {
                    flux[row.class_index].push(s.anyon);
                }
                let f = Flavor { anyon: s.anyon, tag: s.tag };
                if !charge[col.irrep].contains(&f) {
                    charge[col.irrep].push(f);
                }
            }
        }
        for v in &mut flux {
            v.sort_unstable();
        }
        for v in &mut charge {
            v.sort_by_key(|f| (f.anyon, f.tag));
        }
        ProjectorImages { flux, charge }
    }

    pub fn survivors(&self, spec: &ForbidSpec) -> Result<SurvivalResult, FlavorError> {
        spec.validate(self)?;
        let n = self.anyon_names.len();
        let mut remaining = vec![0usize; n];
        let mut tags: Vec<Vec<Option<usize>>> = vec![Vec::new(); n];
        for (r, row) in self.rows.iter().enumerate() {
            if spec.classes.contains(&row.class_index) {
                continue;
            }
            for (c, col) in self.columns.iter().enumerate() {
                if spec.irreps.contains(&col.irrep) {
                    continue;
                }
                let s = self.squares[r][c];
                remaining[s.anyon] += 1;
                if !tags[s.anyon].contains(&s.tag) {
                    tags[s.anyon].push(s.tag);
                }
            }
        }
        for t in &mut tags {
            t.sort();
        }
        let surviving: Vec<usize> = (0..n).filter(|&a| remaining[a] > 0).collect();
        let fully_forbidden = (0..n).filter(|&a| remaining[a] == 0).collect();
        let partially_forbidden = surviving
            .iter()
            .filter(|&&a| remaining[a] < self.dims[a] * self.dims[a])
            .map(|&a| (a, self.dims[a] * self.dims[a] - remaining[a]))
            .collect();
        Ok(SurvivalResult {
            predicted_dims: remaining.iter().map(|&k| (k as f64).sqrt()).collect(),
            surviving,
            remaining,
            fully_forbidden,
            partially_forbidden,
            surviving_tags: tags,
        })
    }

    /// Every subset of the nontrivial classes and irreps, ordered by size and
    /// then lexicographically by label index (classes before irreps).
    pub fn all_specs(&self) -> Vec<ForbidSpec> {
        let labels: Vec<(bool, usize)> = (1..self.class_names.len())
            .map(|k| (true, k))
            .chain((1..self.irrep_names.len()).map(|k| (false, k)))
            .collect();
        let m = labels.len();
        let mut subsets: Vec<Vec<usize>> = (0..1u64 << m)
            .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        subsets
            .into_iter()
            .map(|s| {
                let mut spec = ForbidSpec::default();
                for i in s {
                    match labels[i] {
                        (true, k) => spec.classes.insert(k),
                        (false, k) => spec.irreps.insert(k),
                    };
                }
                spec
            })
            .collect()
    }

    fn column_headers(&self) -> Vec<String> {
        self.columns
            .iter()
            .map(|c| {
                let name = &self.irrep_names[c.irrep];
                if self.columns.iter().filter(|x| x.irrep == c.irrep).count() > 1 {
                    format!("{name}:{}", c.slot + 1)
                } else {
                    name.clone()
                }
            })
            .collect()
    }

    fn cell(&self, s: Square) -> String {
        self.flavor_name(Flavor { anyon: s.anyon, tag: s.tag })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let headers = self.column_headers();
        let _ = writeln!(out, "| element | {} |", headers.join(" | "));
        let _ = writeln!(out, "|---|{}", "---|".repeat(headers.len()));
        for (r, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = self.squares[r].iter().map(|&s| self.cell(s)).collect();
            let _ = writeln!(out, "| {} | {} |", self.element_names[row.element], cells.join(" | "));
        }
        out
    }

    pub fn to_ascii(&self) -> String {
        let headers = self.column_headers();
        let first = self.rows.iter().map(|r| self.element_names[r.element].len()).max().unwrap_or(1).max(1);
        let width = headers
            .iter()
            .map(String::len)
            .chain(self.squares.iter().flatten().map(|&s| self.cell(s).len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let _ = write!(out, "{:first$} |", "");
        for h in &headers {
            let _ = write!(out, " {h:>width$}");
        }
        out.push('\n');
        let mut last_class = None;
        for (r, row) in self.rows.iter().enumerate() {
            if last_class.is_some() && last_class != Some(row.class_index) {
                let _ = writeln!(out, "{}-+{}", "-".repeat(first), "-".repeat((width + 1) * headers.len()));
            }
            last_class = Some(row.class_index);
            let _ = write!(out, "{:first$} |", self.element_names[row.element]);
            for &s in &self.squares[r] {
                let _ = write!(out, " {:>width$}", self.cell(s));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::preset;

    fn s3() -> FlavorDiagram {
        build_diagram(&preset("s3").unwrap()).unwrap()
    }

    #[test]
    fn s3_counts() {
        let d = s3();
        assert_eq!(d.total_squares(), 36);
        assert_eq!(d.square_counts(), [1, 1, 4, 9, 9, 4, 4, 4]);
    }

    #[test]
    fn s3_tags() {
        let d = s3();
        let images = d.projector_images();
        let names = |v: &[Flavor]| v.iter().map(|&f| d.flavor_name(f)).collect::<Vec<_>>();
        assert_eq!(names(&images.charge[0]), ["A", "D1", "F1"]);
        assert_eq!(names(&images.charge[1]), ["B", "E1", "F2"]);
        assert_eq!(names(&images.charge[2]), ["C", "D2", "E2", "G", "H"]);
        assert_eq!(images.flux, vec![vec![0, 1, 2], vec![3, 4], vec![5, 6, 7]]);
    }

    #[test]
    fn forbid_cx() {
        let d = s3();
        let spec = ForbidSpec::from_names(&d, &["Cx".into()], &[]).unwrap();
        let r = d.survivors(&spec).unwrap();
        assert_eq!(r.surviving, [0, 1, 2, 5, 6, 7]);
        let dims: Vec<f64> = r.surviving.iter().map(|&a| r.predicted_dims[a]).collect();
        assert_eq!(dims, [1.0, 1.0, 2.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn forbid_gamma2() {
        let d = s3();
        let spec = ForbidSpec::from_names(&d, &[], &["Gamma2".into()]).unwrap();
        let r = d.survivors(&spec).unwrap();
        assert_eq!(r.surviving, [0, 1, 3, 4, 5]);
        assert_eq!(r.remaining[3], 3);
        assert_eq!(r.remaining[4], 3);
        assert_eq!(r.partially_forbidden, vec![(3, 6), (4, 6)]);
    }

    #[test]
    fn vacuum_labels_rejected() {
        let d = s3();
        assert!(matches!(
            ForbidSpec::from_names(&d, &["Ce".into()], &[]),
            Err(FlavorError::VacuumForbidden(_))
        ));
        assert!(matches!(
            ForbidSpec::from_names(&d, &[], &["Gamma1".into()]),
            Err(FlavorError::VacuumForbidden(_))
        ));
        assert!(matches!(
            ForbidSpec::from_names(&d, &["Cq".into()], &[]),
            Err(FlavorError::UnknownClass(_))
        ));
    }

    #[test]
    fn name_aliases() {
        let d = s3();
        assert_eq!(d.irrep_index("Γ−1"), Some(1));
        assert_eq!(d.irrep_index("Γ2"), Some(2));
        assert_eq!(d.class_index("y"), Some(2));
        assert_eq!(d.class_index("C_x"), Some(1));
    }

    #[test]
    fn sixteen_specs_for_s3() {
        let specs = s3().all_specs();
        assert_eq!(specs.len(), 16);
        assert!(specs[0].is_empty());
    }
}
