//! Reference theories used to identify the outcome of a transition.
//!
//! Matrices are transcribed entry by entry rather than generated, so the
//! catalog doubles as an oracle for [`crate::modular::build_double`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{real, CMatrix, C64};
use crate::modular::{AnyonKind, AnyonLabel, AnyonTheory, FusionRules, ModularError, TheoryJson};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid theory file: {0}")]
    Json(#[from] serde_json::Error),
}

/// Groups of catalog labels that collapse into one label of a smaller theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeMap {
    pub name: String,
    pub groups: Vec<Vec<String>>,
}

/// A named dictionary from external label names to catalog labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub name: String,
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    /// Lowercase lookup key such as `d_s3` or `su2_4`.
    pub key: String,
    pub theory: AnyonTheory,
    /// Flux/charge type of each label, for entries that are quantum doubles.
    pub kinds: Option<Vec<AnyonKind>>,
    pub merge_maps: Vec<MergeMap>,
    pub correspondences: Vec<Correspondence>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.theory.name
    }

    pub fn len(&self) -> usize {
        self.theory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theory.is_empty()
    }

    pub fn fusion(&self) -> &FusionRules {
        &self.theory.fusion
    }
}

/// JSON form of a user-supplied entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryJson {
    pub key: String,
    pub theory: TheoryJson,
    #[serde(default)]
    pub merge_maps: Vec<MergeMap>,
    #[serde(default)]
    pub correspondences: Vec<Correspondence>,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Catalog {
    pub fn builtin() -> Self {
        Self { entries: builtin_entries() }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn push(&mut self, entry: CatalogEntry) {
        self.entries.retain(|e| e.key != entry.key);
        self.entries.push(entry);
    }

    pub fn find(&self, key: &str) -> Result<&CatalogEntry, CatalogError> {
        let k = key.to_ascii_lowercase();
        self.entries
            .iter()
            .find(|e| e.key == k || e.theory.name.eq_ignore_ascii_case(key))
            .ok_or_else(|| CatalogError::UnknownTheory(key.to_string()))
    }

    pub fn all_of_size(&self, n: usize) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.len() == n).collect()
    }

    /// Adds every entry found in a JSON file holding one entry or a list.
    pub fn load_file(&mut self, path: &Path) -> Result<usize, CatalogError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
        let parsed: Vec<EntryJson> = match serde_json::from_str::<Vec<EntryJson>>(&text) {
            Ok(list) => list,
            Err(_) => vec![serde_json::from_str::<EntryJson>(&text)?],
        };
        let count = parsed.len();
        for e in parsed {
            self.push(entry_from_json(&e)?);
        }
        Ok(count)
    }
}

pub fn entry_from_json(e: &EntryJson) -> Result<CatalogEntry, CatalogError> {
    Ok(CatalogEntry {
        key: e.key.to_ascii_lowercase(),
        theory: AnyonTheory::from_json(&e.theory)?,
        kinds: None,
        merge_maps: e.merge_maps.clone(),
        correspondences: e.correspondences.clone(),
    })
}

pub fn entry_to_json(e: &CatalogEntry) -> EntryJson {
    EntryJson {
        key: e.key.clone(),
        theory: e.theory.to_json(),
        merge_maps: e.merge_maps.clone(),
        correspondences: e.correspondences.clone(),
    }
}

pub fn find(key: &str) -> Result<CatalogEntry, CatalogError> {
    Catalog::builtin().find(key).cloned()
}

pub fn all_of_size(n: usize) -> Vec<CatalogEntry> {
    builtin_entries().into_iter().filter(|e| e.len() == n).collect()
}

fn omega() -> C64 {
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

fn labels(names: &[&str]) -> Vec<AnyonLabel> {
    names.iter().map(|n| AnyonLabel::opaque(*n)).collect()
}

fn scaled(rows: &[&[f64]], k: f64) -> CMatrix {
    CMatrix::from_fn(rows.len(), rows.len(), |i, j| real(rows[i][j] * k))
}

fn theory(name: &str, names: &[&str], s: CMatrix, t: Option<Vec<C64>>) -> AnyonTheory {
    AnyonTheory::from_modular_data(name, labels(names), s, t).expect("bundled theories are consistent")
}

fn strings(groups: &[&[&str]]) -> Vec<Vec<String>> {
    groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect()
}

fn pairs(p: &[(&str, &str)]) -> Vec<(String, String)> {
    p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn d_s3() -> CatalogEntry {
    let s = scaled(
        &[
            &[1.0, 1.0, 2.0, 3.0, 3.0, 2.0, 2.0, 2.0],
            &[1.0, 1.0, 2.0, -3.0, -3.0, 2.0, 2.0, 2.0],
            &[2.0, 2.0, 4.0, 0.0, 0.0, -2.0, -2.0, -2.0],
            &[3.0, -3.0, 0.0, 3.0, -3.0, 0.0, 0.0, 0.0],
            &[3.0, -3.0, 0.0, -3.0, 3.0, 0.0, 0.0, 0.0],
            &[2.0, 2.0, -2.0, 0.0, 0.0, 4.0, -2.0, -2.0],
            &[2.0, 2.0, -2.0, 0.0, 0.0, -2.0, 4.0, -2.0],
            &[2.0, 2.0, -2.0, 0.0, 0.0, -2.0, -2.0, 4.0],
        ],
        1.0 / 6.0,
    );
    let w = omega();
    let one = real(1.0);
    let t = vec![one, one, one, one, real(-1.0), one, w, w.conj()];
    use AnyonKind::*;
    CatalogEntry {
        key: "d_s3".into(),
        theory: theory("D(S3)", &["A", "B", "C", "D", "E", "F", "G", "H"], s, Some(t)),
        kinds: Some(vec![Vacuum, Chargeon, Chargeon, Fluxon, Dyon, Fluxon, Dyon, Dyon]),
        merge_maps: vec![],
        correspondences: vec![],
    }
}

fn d_z3() -> CatalogEntry {
    let names = ["1", "e1", "e2", "m1", "m2", "e1m1", "e2m1", "e1m2", "e2m2"];
    // 0 → 1, 1 → ω, 2 → ω̄, all over 3.
    let codes: [[u8; 9]; 9] = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 2, 1, 1, 2, 2],
        [0, 0, 0, 2, 1, 2, 2, 1, 1],
        [0, 2, 1, 0, 0, 2, 1, 2, 1],
        [0, 1, 2, 0, 0, 1, 2, 1, 2],
        [0, 2, 1, 1, 2, 0, 2, 1, 0],
        [0, 2, 1, 2, 1, 1, 0, 0, 2],
        [0, 1, 2, 1, 2, 2, 0, 0, 1],
        [0, 1, 2, 2, 1, 0, 1, 2, 0],
    ];
    let w = omega();
    let phase = |c: u8| match c {
        0 => real(1.0),
        1 => w,
        _ => w.conj(),
    };
    let s = CMatrix::from_fn(9, 9, |i, j| phase(codes[i][j]) / 3.0);
    let t = [0u8, 0, 0, 0, 0, 1, 2, 2, 1].iter().map(|&c| phase(c)).collect();
    use AnyonKind::*;
    CatalogEntry {
        key: "d_z3".into(),
        theory: theory("D(Z3)", &names, s, Some(t)),
        kinds: Some(vec![Vacuum, Chargeon, Chargeon, Fluxon, Fluxon, Dyon, Dyon, Dyon, Dyon]),
        merge_maps: vec![MergeMap {
            name: "charge-conjugation pairs".into(),
            groups: strings(&[&["1"], &["e1", "e2"], &["m1", "m2"], &["e1m1", "e2m2"], &["e2m1", "e1m2"]]),
        }],
        correspondences: vec![Correspondence {
            name: "S3 labels".into(),
            pairs: pairs(&[
                ("A'", "1"),
                ("C_a", "e1"),
                ("C_b", "e2"),
                ("F_a", "m1"),
                ("F_b", "m2"),
                ("G_a", "e1m1"),
                ("G_b", "e2m2"),
                ("H_a", "e2m1"),
                ("H_b", "e1m2"),
            ]),
        }],
    }
}

fn d_z2() -> CatalogEntry {
    let s = scaled(
        &[&[1.0, 1.0, 1.0, 1.0], &[1.0, 1.0, -1.0, -1.0], &[1.0, -1.0, 1.0, -1.0], &[1.0, -1.0, -1.0, 1.0]],
        0.5,
    );
    let t = vec![real(1.0), real(1.0), real(1.0), real(-1.0)];
    use AnyonKind::*;
    CatalogEntry {
        key: "d_z2".into(),
        theory: theory("D(Z2)", &["1", "e", "m", "em"], s, Some(t)),
        kinds: Some(vec![Vacuum, Chargeon, Fluxon, Dyon]),
        merge_maps: vec![],
        correspondences: vec![],
    }
}

fn su2_4() -> CatalogEntry {
    let q = 3f64.sqrt();
    // Rows and columns in spin order J0, J1/2, J1, J3/2, J2.
    let s = scaled(
        &[
            &[1.0, q, 2.0, q, 1.0],
            &[q, q, 0.0, -q, -q],
            &[2.0, 0.0, -2.0, 0.0, 2.0],
            &[q, -q, 0.0, q, -q],
            &[1.0, -q, 2.0, -q, 1.0],
        ],
        1.0 / 12f64.sqrt(),
    );
    CatalogEntry {
        key: "su2_4".into(),
        theory: theory("SU(2)_4", &["J0", "J1/2", "J1", "J3/2", "J2"], s, None),
        kinds: None,
        merge_maps: vec![],
        correspondences: vec![],
    }
}

fn z3() -> CatalogEntry {
    let w = omega();
    let one = real(1.0);
    let k = 1.0 / 3f64.sqrt();
    let s = CMatrix::from_row_slice(3, 3, &[one, one, one, one, w, w.conj(), one, w.conj(), w]) * real(k);
    CatalogEntry {
        key: "z3".into(),
        theory: theory("Z3", &["1", "e1", "e2"], s, None),
        kinds: None,
        merge_maps: vec![MergeMap { name: "conjugate pair".into(), groups: strings(&[&["1"], &["e1", "e2"]]) }],
        correspondences: vec![],
    }
}

fn z2() -> CatalogEntry {
    let s = scaled(&[&[1.0, 1.0], &[1.0, -1.0]], 1.0 / 2f64.sqrt());
    CatalogEntry {
        key: "z2".into(),
        theory: theory("Z2", &["1", "e"], s, None),
        kinds: None,
        merge_maps: vec![],
        correspondences: vec![],
    }
}

pub fn builtin_entries() -> Vec<CatalogEntry> {
    vec![d_s3(), d_z3(), d_z2(), su2_4(), z3(), z2()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::validate_theory;

    fn outcome(e: &CatalogEntry, a: &str, b: &str) -> Vec<String> {
        let names = e.theory.names();
        let (ia, ib) = (e.theory.index_of(a).unwrap(), e.theory.index_of(b).unwrap());
        e.fusion().product(ia, ib).iter().map(|&(c, _)| names[c].clone()).collect()
    }

    #[test]
    fn su2_4_fusion_table() {
        let e = find("su2_4").unwrap();
        let cases: [(&str, &str, &[&str]); 10] = [
            ("J1/2", "J1/2", &["J0", "J1"]),
            ("J1", "J1", &["J0", "J1", "J2"]),
            ("J1/2", "J1", &["J1/2", "J3/2"]),
            ("J1/2", "J3/2", &["J1", "J2"]),
            ("J1/2", "J2", &["J3/2"]),
            ("J1", "J3/2", &["J1/2", "J3/2"]),
            ("J1", "J2", &["J1"]),
            ("J3/2", "J3/2", &["J0", "J1"]),
            ("J3/2", "J2", &["J1/2"]),
            ("J2", "J2", &["J0"]),
        ];
        for (a, b, want) in cases {
            assert_eq!(outcome(&e, a, b), want, "{a} × {b}");
        }
    }

    #[test]
    fn d_z3_entry() {
        let e = find("d_z3").unwrap();
        let (a, b) = (e.theory.index_of("e1").unwrap(), e.theory.index_of("m1").unwrap());
        assert!((e.theory.s[(a, b)] - omega() / 3.0).norm() < 1e-15);
        let groups: usize = e.merge_maps[0].groups.iter().map(Vec::len).sum();
        assert_eq!(groups, 9);
    }

    #[test]
    fn z2_entry() {
        let e = find("Z2").unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.theory.dims.iter().all(|d| (d - 1.0).abs() < 1e-12));
    }

    #[test]
    fn lookups() {
        assert_eq!(find("su2_4").unwrap().len(), 5);
        let four = all_of_size(4);
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].name(), "D(Z2)");
        assert!(matches!(find("d_q8"), Err(CatalogError::UnknownTheory(_))));
    }

    #[test]
    fn entries_validate() {
        for e in builtin_entries() {
            let r = validate_theory(&e.theory);
            assert!(r.passed(), "{}: {r}", e.name());
        }
    }

    #[test]
    fn json_round_trip_and_user_file() {
        let e = find("d_z3").unwrap();
        let json = serde_json::to_string(&entry_to_json(&e)).unwrap();
        let back = entry_from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.theory.s, e.theory.s);
        assert_eq!(back.merge_maps, e.merge_maps);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("extra.json");
        let mut custom = entry_to_json(&find("z2").unwrap());
        custom.key = "my_z2".into();
        std::fs::write(&path, serde_json::to_string(&custom).unwrap()).unwrap();
        let mut cat = Catalog::builtin();
        assert_eq!(cat.load_file(&path).unwrap(), 1);
        assert_eq!(cat.find("my_z2").unwrap().len(), 2);
    }
}
