use crate::linalg::{self, CMatrix};
use crate::modular::{AnyonTheory, FusionRules};
use crate::tol;

/// Fusion rules restricted to a set of surviving labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedFusion {
    pub labels: Vec<String>,
    /// Index of each label in the parent theory.
    pub parent_indices: Vec<usize>,
    pub fusion: FusionRules,
}

/// Keeps only products among survivors; forbidden outcomes are deleted.
/// The vacuum is always kept and placed first.
pub fn truncate_fusion(theory: &AnyonTheory, surviving: &[usize]) -> TruncatedFusion {
    let mut keep: Vec<usize> = surviving.iter().copied().filter(|&a| a < theory.len()).collect();
    keep.push(0);
    keep.sort_unstable();
    keep.dedup();
    let names = theory.names();
    TruncatedFusion {
        labels: keep.iter().map(|&a| names[a].clone()).collect(),
        fusion: theory.fusion.restrict(&keep),
        parent_indices: keep,
    }
}

impl TruncatedFusion {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn slices(&self) -> Vec<CMatrix> {
        (0..self.len()).map(|a| self.fusion.slice(a)).collect()
    }

    /// First pair of labels whose fusion matrices fail to commute.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let s = self.slices();
        (0..s.len())
            .flat_map(|a| (a + 1..s.len()).map(move |b| (a, b)))
            .find(|&(a, b)| !linalg::commutes(&s[a], &s[b], tol::tau()))
    }

    /// `a × b` in terms of label names, `0` when every outcome was removed.
    pub fn product_string(&self, a: &str, b: &str) -> Option<String> {
        Some(self.fusion.format_product(self.index_of(a)?, self.index_of(b)?, &self.labels))
    }

    /// Fusion table as Markdown.
    pub fn to_markdown(&self) -> String {
        let mut out = format!("| × | {} |\n|---|{}\n", self.labels.join(" | "), "---|".repeat(self.len()));
        for a in 0..self.len() {
            let cells: Vec<String> =
                (0..self.len()).map(|b| self.fusion.format_product(a, b, &self.labels)).collect();
            out += &format!("| **{}** | {} |\n", self.labels[a], cells.join(" | "));
        }
        out
    }
}
