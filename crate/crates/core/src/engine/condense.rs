//! Identifying proportional labels with a single label.

use super::EngineError;
use crate::linalg::{self, real, CMatrix, CVector, C64};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct Condensed {
    pub s: CMatrix,
    /// For each reduced label, the candidate labels merged into it.
    pub blocks: Vec<Vec<usize>>,
    /// Candidate labels whose basis vectors were orthogonal complements of
    /// a block and vanished.
    pub discarded: Vec<usize>,
}

/// Collapses each block onto the unit vector weighted by the vacuum row
/// (proportional to quantum dimensions), verifies that the orthogonal complement carries
/// no weight, and renormalizes the surviving columns.
///
/// `blocks` must partition `0..n`; the block holding label 0 acts as the
/// new vacuum. Reduced labels appear in the order of their blocks' first
/// members.
pub fn condense(candidate: &CMatrix, blocks: &[Vec<usize>], names: &[String]) -> Result<Condensed, EngineError> {
    let n = candidate.nrows();
    let mut seen = vec![false; n];
    for &a in blocks.iter().flatten() {
        if a >= n || std::mem::replace(&mut seen[a], true) {
            return Err(EngineError::InvalidPartition(format!("label #{a} is out of range or repeated")));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(EngineError::InvalidPartition("blocks do not cover every label".into()));
    }
    let mut blocks: Vec<Vec<usize>> = blocks.iter().map(|b| {
        let mut b = b.clone();
        b.sort_unstable();
        b
    }).collect();
    blocks.sort_by_key(|b| b[0]);

    let scale = candidate.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut kept: Vec<CVector> = Vec::new();
    let mut dropped: Vec<(usize, CVector)> = Vec::new();
    for block in &blocks {
        let weights: Vec<C64> = block.iter().map(|&b| candidate[(0, b)]).collect();
        let mut v = CVector::zeros(n);
        for (&b, &k) in block.iter().zip(&weights) {
            v[b] = k.conj();
        }
        let v = &v / real(v.norm());
        let mut basis = CMatrix::zeros(n, block.len());
        basis.set_column(0, &v);
        for (j, &b) in block.iter().enumerate().skip(1) {
            basis[(b, j)] = real(1.0);
        }
        let ortho = linalg::orthonormalize(&basis);
        kept.push(v);
        for (j, &b) in block.iter().enumerate().skip(1) {
            dropped.push((b, ortho.column(j).into_owned()));
        }
    }

    let transform = |u: &CVector, w: &CVector| -> C64 { (u.transpose() * candidate * w)[(0, 0)] };
    for (label, u) in &dropped {
        let residual = kept
            .iter()
            .chain(dropped.iter().map(|(_, w)| w))
            .map(|w| transform(u, w).norm().max(transform(w, u).norm()))
            .fold(0.0, f64::max);
        if residual > tol::tau().max(1e-9) * 10.0 * scale.max(1.0) {
            let block = blocks.iter().find(|b| b.contains(label)).cloned().unwrap_or_default();
            return Err(EngineError::NonVanishingComplement {
                block: block.iter().map(|&b| names.get(b).cloned().unwrap_or_else(|| format!("#{b}"))).collect(),
                residual,
            });
        }
    }

    let m = kept.len();
    let mut s = CMatrix::from_fn(m, m, |i, j| transform(&kept[i], &kept[j]));
    for j in 0..m {
        let norm = s.column(j).norm();
        if norm <= tol::tau() {
            return Err(EngineError::CondensedNotModular(format!("column {j} vanished")));
        }
        s.column_mut(j).scale_mut(1.0 / norm);
    }
    let s00 = s[(0, 0)];
    if s00.norm() <= tol::tau() {
        return Err(EngineError::CondensedNotModular("vacuum entry vanished".into()));
    }
    s *= s00.conj() / real(s00.norm());

    let t = tol::tau().max(1e-9) * 10.0;
    if !linalg::is_unitary(&s, t) {
        return Err(EngineError::CondensedNotModular(format!(
            "defect {:e}",
            linalg::unitarity_defect(&s)
        )));
    }
    if !(linalg::is_symmetric(&s, t) || linalg::is_symmetric_up_to_conjugation(&s, t)) {
        return Err(EngineError::CondensedNotModular("not symmetric".into()));
    }
    if let Some(z) = (0..m).find(|&z| s[(0, z)].re <= t || s[(0, z)].im.abs() > t) {
        return Err(EngineError::CondensedNotModular(format!("first row not positive at column {z}")));
    }
    let discarded = dropped.iter().map(|(b, _)| *b).collect();
    Ok(Condensed { s, blocks, discarded })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn rank_one_pair() {
        let (a, b) = (3f64.sqrt(), 2f64.sqrt());
        let m = linalg::from_real_rows(&[vec![1.0, a, b], vec![a, -3.0, 6f64.sqrt()], vec![b, 6f64.sqrt(), 2.0]]);
        let c = condense(&m, &[vec![0, 2], vec![1]], &names("ADF")).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let want = linalg::from_real_rows(&[vec![h, h], vec![h, -h]]);
        assert!(linalg::max_abs_diff(&c.s, &want) < 1e-12);
        assert_eq!(c.discarded, vec![2]);
    }

    #[test]
    fn wrong_block_rejected() {
        let m = linalg::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]);
        assert!(matches!(
            condense(&m, &[vec![0, 1]], &names("AB")),
            Err(EngineError::NonVanishingComplement { .. })
        ));
        assert!(condense(&m, &[vec![0]], &names("AB")).is_err());
    }
}
