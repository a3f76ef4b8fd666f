//! S-matrices from fusion rules.
//!
//! Each joint eigenvector of the fusion matrices N_a gives a character
//! a ↦ λ_a of the fusion ring; the Perron character is the quantum
//! dimension vector d. A candidate S has entries S[a][z] = λ_a(t(z))·d_z/D
//! for an assignment t of characters to columns, chosen so that S is
//! symmetric (or symmetric up to conjugation).

use super::truncate::TruncatedFusion;
use super::EngineError;
use crate::linalg::{self, real, CMatrix, C64};
use crate::modular::verlinde_fusion;
use crate::tol;

const MATCH_TOL: f64 = 1e-6;

/// Preferences used to choose among equally valid candidates.
#[derive(Debug, Clone, Default)]
pub struct SymmetryHints {
    /// S-matrix of the parent theory restricted to the same labels; the
    /// candidate agreeing with its sign pattern most often wins.
    pub reference: Option<CMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Reconstruction {
    Reconstructed { s: CMatrix },
    /// No assignment gives a modular S; classes of proportional rows of the
    /// best candidate, the vacuum's class first.
    Degenerate { candidate: CMatrix, classes: Vec<Vec<usize>> },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    Plain,
    Conjugate,
}

struct Search<'a> {
    chars: &'a [Vec<C64>],
    d: &'a [f64],
    reference: Option<&'a CMatrix>,
    symmetry: Symmetry,
    best: Option<((usize, usize), Vec<usize>)>,
}

impl Search<'_> {
    fn entry(&self, a: usize, z: usize, t: usize) -> C64 {
        self.chars[t][a] * self.d[z]
    }

    fn consistent(&self, assign: &[usize], z: usize, k: usize) -> bool {
        (0..=z).all(|a| {
            let ta = if a < z { assign[a] } else { k };
            let left = self.entry(a, z, k);
            let right = self.entry(z, a, ta);
            let right = if self.symmetry == Symmetry::Conjugate { right.conj() } else { right };
            (left - right).norm() <= MATCH_TOL
        })
    }

    fn score(&self, assign: &[usize]) -> (usize, usize) {
        let mut used = assign.to_vec();
        used.sort_unstable();
        used.dedup();
        let agree = self.reference.map_or(0, |p| {
            let n = assign.len();
            let mut count = 0;
            for a in 0..n {
                for z in 0..n {
                    let m = self.entry(a, z, assign[z]);
                    let q = p[(a, z)];
                    count += usize::from(sign(m.re) == sign(q.re)) + usize::from(sign(m.im) == sign(q.im));
                }
            }
            count
        });
        (used.len(), agree)
    }

    fn run(&mut self, assign: &mut Vec<usize>) {
        let n = self.d.len();
        let z = assign.len();
        if z == n {
            let key = self.score(assign);
            if self.best.as_ref().is_none_or(|(b, _)| key > *b) {
                self.best = Some((key, assign.clone()));
            }
            return;
        }
        if let Some(((distinct, _), _)) = &self.best {
            let mut used = assign.clone();
            used.sort_unstable();
            used.dedup();
            if used.len() + (n - z) < *distinct {
                return;
            }
        }
        for k in 0..self.chars.len() {
            if self.consistent(assign, z, k) {
                assign.push(k);
                self.run(assign);
                assign.pop();
            }
        }
    }
}

fn sign(x: f64) -> i8 {
    if x > 1e-9 {
        1
    } else if x < -1e-9 {
        -1
    } else {
        0
    }
}

/// Fusion-ring characters, one per joint eigenvector (repeated by
/// multiplicity), in the deterministic order of the joint eigenspaces.
fn characters(f: &TruncatedFusion) -> Result<Vec<Vec<C64>>, EngineError> {
    let n = f.len();
    let slices = f.slices();
    let spaces = linalg::joint_eigenspaces(n, &slices)
        .map_err(|e| EngineError::Reconstruction(format!("fusion matrices not diagonalizable: {e:?}")))?;
    let mut out = Vec::new();
    for q in spaces {
        let v = q.column(0).into_owned();
        let lambda: Vec<C64> = slices.iter().map(|m| v.dotc(&(m * &v))).collect();
        out.extend(std::iter::repeat_n(lambda, q.ncols()));
    }
    Ok(out)
}

/// Rows grouped into proportionality classes, ordered by first member.
pub fn proportional_classes(m: &CMatrix) -> Vec<Vec<usize>> {
    let rows = linalg::to_rows(m);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        match classes.iter_mut().find(|c| linalg::proportionality(&rows[c[0]], r).is_some()) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

pub fn reconstruct_smatrix(f: &TruncatedFusion, hints: &SymmetryHints) -> Result<Reconstruction, EngineError> {
    let n = f.len();
    if n == 1 {
        return Ok(Reconstruction::Reconstructed { s: CMatrix::from_element(1, 1, real(1.0)) });
    }
    if let Some((a, b)) = f.non_commuting_pair() {
        return Err(EngineError::NonCommutingFusion { a: f.labels[a].clone(), b: f.labels[b].clone() });
    }
    let chars = characters(f)?;
    let perron = chars
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().all(|z| z.im.abs() <= MATCH_TOL && z.re >= 1.0 - MATCH_TOL))
        .max_by(|x, y| {
            let s = |c: &Vec<C64>| c.iter().map(|z| z.re).sum::<f64>();
            s(x.1).total_cmp(&s(y.1))
        })
        .map(|(k, _)| k)
        .ok_or_else(|| EngineError::Reconstruction("no positive fusion character".into()))?;
    let d: Vec<f64> = chars[perron].iter().map(|z| z.re).collect();
    let total = d.iter().map(|x| x * x).sum::<f64>().sqrt();

    let reference = hints.reference.as_ref().filter(|p| p.shape() == (n, n));
    let mut best: Option<((usize, usize), Vec<usize>, Symmetry)> = None;
    for symmetry in [Symmetry::Plain, Symmetry::Conjugate] {
        let mut search = Search { chars: &chars, d: &d, reference, symmetry, best: None };
        search.run(&mut vec![perron]);
        if let Some((key, assign)) = search.best {
            if best.as_ref().is_none_or(|(b, _, _)| key > *b) {
                best = Some((key, assign, symmetry));
            }
        }
    }
    let (_, assign, _) =
        best.ok_or_else(|| EngineError::Reconstruction("no symmetric assignment of fusion characters".into()))?;
    let m = CMatrix::from_fn(n, n, |a, z| chars[assign[z]][a] * d[z] / total);

    let mut used = assign.clone();
    used.sort_unstable();
    used.dedup();
    if used.len() == n && is_modular(&m) && verlinde_fusion(&m).is_ok_and(|v| v == f.fusion) {
        return Ok(Reconstruction::Reconstructed { s: m });
    }
    let classes = proportional_classes(&m);
    let vacuum_block = classes[0].len() as f64;
    Ok(Reconstruction::Degenerate { candidate: m / real(vacuum_block.sqrt()), classes })
}

fn is_modular(m: &CMatrix) -> bool {
    let t = tol::tau().max(1e-9) * 10.0;
    linalg::is_unitary(m, t) && (linalg::is_symmetric(m, t) || linalg::is_symmetric_up_to_conjugation(m, t))
}

/// Candidate for fusion rules that admit a nontrivial grading by ±1.
///
/// With χ the grading, S[a][z] = ε(a,z)·w_a·w_z, where ε = −1 exactly when
/// both labels are odd and w are the predicted dimensions. The odd weights
/// are rescaled so that both graded parts carry the same total weight.
/// Returns the candidate, its proportional classes and the grading.
pub fn graded_candidate(
    f: &TruncatedFusion,
    weights: &[f64],
) -> Option<(CMatrix, Vec<Vec<usize>>, Vec<bool>)> {
    let n = f.len();
    if n < 2 || weights.len() != n {
        return None;
    }
    let odd = (1u64..1 << (n - 1)).find_map(|mask| {
        let odd: Vec<bool> = (0..n).map(|a| a > 0 && mask >> (a - 1) & 1 == 1).collect();
        let graded = (0..n).all(|a| {
            (0..n).all(|b| f.fusion.product(a, b).iter().all(|&(c, _)| odd[a] ^ odd[b] == odd[c]))
        });
        graded.then_some(odd)
    })?;
    let even_weight: f64 = (0..n).filter(|&a| !odd[a]).map(|a| weights[a] * weights[a]).sum();
    let odd_weight: f64 = (0..n).filter(|&a| odd[a]).map(|a| weights[a] * weights[a]).sum();
    if odd_weight <= 0.0 {
        return None;
    }
    let k = (even_weight / odd_weight).sqrt();
    let w: Vec<f64> = (0..n).map(|a| if odd[a] { weights[a] * k } else { weights[a] }).collect();
    let norm = 2.0 * even_weight;
    let s = CMatrix::from_fn(n, n, |a, z| {
        let eps = if odd[a] && odd[z] { -1.0 } else { 1.0 };
        real(eps * w[a] * w[z] / norm)
    });
    let classes = proportional_classes(&s);
    Some((s, classes, odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::truncate_fusion;
    use crate::group::preset;
    use crate::modular::{build_double, AnyonTheory};

    fn s3() -> AnyonTheory {
        build_double(&preset("s3").unwrap()).unwrap()
    }

    fn cut(t: &AnyonTheory, names: &str) -> (TruncatedFusion, SymmetryHints) {
        let keep: Vec<usize> = names.chars().map(|c| t.index_of(&c.to_string()).unwrap()).collect();
        let f = truncate_fusion(t, &keep);
        let p = CMatrix::from_fn(keep.len(), keep.len(), |i, j| t.s[(keep[i], keep[j])]);
        (f, SymmetryHints { reference: Some(p) })
    }

    #[test]
    fn flux_y_forbidden_gives_level_four() {
        let t = s3();
        let (f, h) = cut(&t, "ABCDE");
        let Reconstruction::Reconstructed { s } = reconstruct_smatrix(&f, &h).unwrap() else {
            panic!("expected a modular S");
        };
        let q = 3f64.sqrt();
        let want = [
            [1.0, 1.0, 2.0, q, q],
            [1.0, 1.0, 2.0, -q, -q],
            [2.0, 2.0, -2.0, 0.0, 0.0],
            [q, -q, 0.0, q, -q],
            [q, -q, 0.0, -q, q],
        ];
        let want = CMatrix::from_fn(5, 5, |i, j| real(want[i][j] / 12f64.sqrt()));
        assert!(linalg::max_abs_diff(&s, &want) < 1e-9, "{s}");
    }

    #[test]
    fn flux_x_forbidden_is_degenerate() {
        let t = s3();
        let (f, h) = cut(&t, "ABCFGH");
        let Reconstruction::Degenerate { candidate, classes } = reconstruct_smatrix(&f, &h).unwrap() else {
            panic!("expected proportional rows");
        };
        assert_eq!(classes[0], vec![0, 1]);
        assert!(classes[1..].iter().all(|c| c.len() == 1));
        let want = CMatrix::from_fn(6, 6, |i, j| {
            let (a, b) = ([0, 1, 2, 5, 6, 7][i], [0, 1, 2, 5, 6, 7][j]);
            t.s[(a, b)]
        });
        assert!(linalg::max_abs_diff(&candidate, &want) < 1e-9, "{candidate}");
    }

    #[test]
    fn graded_cut() {
        let t = s3();
        let (f, _) = cut(&t, "ADF");
        assert!(reconstruct_smatrix(&f, &SymmetryHints::default()).is_err());
        let (s, classes, odd) = graded_candidate(&f, &[1.0, 3f64.sqrt(), 2f64.sqrt()]).unwrap();
        assert_eq!(odd, vec![false, true, false]);
        assert_eq!(classes, vec![vec![0, 2], vec![1]]);
        let k = s[(0, 0)].re;
        let (q3, q2, q6) = (3f64.sqrt(), 2f64.sqrt(), 6f64.sqrt());
        let want = [[1.0, q3, q2], [q3, -3.0, q6], [q2, q6, 2.0]];
        let want = CMatrix::from_fn(3, 3, |i, j| real(want[i][j] * k));
        assert!(linalg::max_abs_diff(&s, &want) < 1e-12);
    }

    #[test]
    fn proportional_rows_grouped() {
        let m = linalg::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![1.0, -1.0]]);
        assert_eq!(proportional_classes(&m), vec![vec![0, 1], vec![2]]);
    }
}
