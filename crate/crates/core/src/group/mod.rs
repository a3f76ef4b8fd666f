//! Finite groups given by Cayley tables.
//!
//! Group identity is by element index; names are ingestion metadata only.

mod character;
mod classes;
mod presets;

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use character::{character_table, character_table_with_bound, restrict_multiplicity, CharacterTable, Irrep, DEFAULT_ORDER_BOUND};
pub use classes::{centralizer, conjugacy_classes, ConjugacyClass, Subgroup};
pub use presets::{preset, PRESET_NAMES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("table row {row} has {len} entries, expected {order}")]
    TableShape { row: usize, len: usize, order: usize },
    #[error("expected {order} element names, got {names}")]
    NameCount { order: usize, names: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("not a Latin square: {line} {index} repeats element {value}")]
    NotLatinSquare { line: &'static str, index: usize, value: usize },
    #[error("no identity element: no index e with table[e][i] = table[i][e] = i")]
    NoIdentity,
    #[error("not associative: ({a}·{b})·{c} = {left} but {a}·({b}·{c}) = {right}")]
    NonAssociative { a: usize, b: usize, c: usize, left: usize, right: usize },
    #[error("group of order {order} exceeds the character-table bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("character orthogonality violated (defect {defect:e})")]
    OrthogonalityFailure { defect: f64 },
    #[error("restriction multiplicity {value} is not a nonnegative integer")]
    NonIntegerMultiplicity { value: f64 },
    #[error("unknown preset group {0:?}")]
    UnknownPreset(String),
    #[error("invalid group file: {0}")]
    Format(String),
}

/// A finite group stored as its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// On-disk group description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// Validates a Cayley table and computes identity and inverses.
pub fn load_group(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::new("", table, names)
}

impl FiniteGroup {
    pub fn new(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        elements: Vec<String>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::TableShape { row, len: r.len(), order });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= order) {
                return Err(GroupError::OutOfRange { row, col, value });
            }
        }
        if elements.len() != order {
            return Err(GroupError::NameCount { order, names: elements.len() });
        }
        let mut seen = HashSet::new();
        for n in &elements {
            if !seen.insert(n.as_str()) {
                return Err(GroupError::DuplicateName(n.clone()));
            }
        }
        check_latin(&table)?;
        let identity = (0..order)
            .find(|&e| (0..order).all(|i| table[e][i] == i && table[i][e] == i))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    let left = table[ab][c];
                    let right = table[a][table[b][c]];
                    if left != right {
                        return Err(GroupError::NonAssociative { a, b, c, left, right });
                    }
                }
            }
        }
        // Latin rows guarantee exactly one right inverse per element.
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| table[a][b] == identity).expect("latin row"))
            .collect();
        Ok(Self { name: name.into(), elements, table, identity, inverse })
    }

    pub fn from_json_str(s: &str) -> Result<Self, GroupError> {
        let file: GroupFile = serde_json::from_str(s).map_err(|e| GroupError::Format(e.to_string()))?;
        Self::new(file.name, file.table, file.elements)
    }

    pub fn from_path(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Format(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// Resolves a preset name first, then falls back to a JSON file path.
    pub fn resolve(source: &str) -> Result<Self, GroupError> {
        match preset(source) {
            Ok(g) => Ok(g),
            Err(GroupError::UnknownPreset(_)) if Path::new(source).exists() => {
                Self::from_path(Path::new(source))
            }
            Err(e) => Err(e),
        }
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile { name: self.name.clone(), elements: self.elements.clone(), table: self.table.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `z·g·z⁻¹`
    pub fn conjugate(&self, z: usize, g: usize) -> usize {
        self.mul(self.mul(z, g), self.inv(z))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

fn check_latin(table: &[Vec<usize>]) -> Result<(), GroupError> {
    let n = table.len();
    for (i, row) in table.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            if std::mem::replace(&mut seen[v], true) {
                return Err(GroupError::NotLatinSquare { line: "row", index: i, value: v });
            }
        }
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            let v = row[j];
            if std::mem::replace(&mut seen[v], true) {
                return Err(GroupError::NotLatinSquare { line: "column", index: j, value: v });
            }
        }
    }
    Ok(())
}
