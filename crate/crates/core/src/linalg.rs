//! Small dense complex linear algebra on top of `nalgebra`.
//!
//! Everything here works on matrices of at most a few dozen rows, so
//! clarity wins over speed. Eigen-decompositions go through the complex
//! Schur form; eigenspaces are recovered as SVD null spaces so that
//! degenerate eigenvalues are handled without special cases.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use crate::tol;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

const SCHUR_MAX_ITER: usize = 500;
const NULL_SPACE_TOL: f64 = 1e-7;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Builds a complex matrix from nested rows of real numbers.
pub fn from_real_rows(rows: &[Vec<f64>]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    CMatrix::from_fn(n, m, |i, j| real(rows[i][j]))
}

pub fn from_rows(rows: &[Vec<C64>]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    CMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn to_rows(m: &CMatrix) -> Vec<Vec<C64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Largest entrywise modulus of `a - b`; infinite when shapes differ.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn unitarity_defect(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let prod = m * m.adjoint();
    max_abs_diff(&prod, &CMatrix::identity(m.nrows(), m.ncols()))
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    unitarity_defect(m) <= tol
}

pub fn is_symmetric(m: &CMatrix, tol: f64) -> bool {
    max_abs_diff(m, &m.transpose()) <= tol
}

/// `S^T = S` or `S^T = conj(S)`; the latter is the convention produced by
/// the character formula for doubles with complex characters.
pub fn is_symmetric_up_to_conjugation(m: &CMatrix, tol: f64) -> bool {
    is_symmetric(m, tol) || max_abs_diff(&m.transpose(), &m.conjugate()) <= tol
}

pub fn commutes(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    max_abs_diff(&(a * b), &(b * a)) <= tol
}

/// Eigenvalues (with algebraic multiplicity) read off the complex Schur form.
pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![m[(0, 0)]];
    }
    // Shifted QR can stall on highly structured inputs such as permutation
    // matrices; a fixed unitary similarity breaks the symmetry.
    for attempt in 0..4 {
        let input = if attempt == 0 {
            m.clone()
        } else {
            let q = scrambler(n, attempt);
            q.adjoint() * m * q
        };
        if let Some(schur) = Schur::try_new(input, f64::EPSILON, SCHUR_MAX_ITER) {
            let (_, t) = schur.unpack();
            return (0..n).map(|i| t[(i, i)]).collect();
        }
    }
    panic!("complex Schur iteration failed to converge");
}

/// Deterministic dense unitary used to precondition eigenvalue solves.
fn scrambler(n: usize, seed: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |i, j| {
        let t = (i * 31 + j * 17 + seed * 7) as f64;
        c((t * 0.618).sin() + if i == j { 2.0 } else { 0.0 }, (t * 0.371).cos())
    });
    a.qr().q()
}

/// Groups values closer than the relative clustering tolerance; each output
/// entry is (mean value, multiplicity). Order follows first appearance.
pub fn cluster(values: &[C64]) -> Vec<(C64, usize)> {
    let mut groups: Vec<(C64, Vec<C64>)> = Vec::new();
    for &v in values {
        let found = groups.iter_mut().find(|(rep, _)| {
            (rep - v).norm() <= tol::PROPORTIONAL * rep.norm().max(1.0)
        });
        match found {
            Some((_, members)) => members.push(v),
            None => groups.push((v, vec![v])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let k = members.len();
            let mean = members.iter().sum::<C64>() / k as f64;
            (mean, k)
        })
        .collect()
}

/// Orthonormal basis (as columns) of the null space of a square matrix.
pub fn null_space(m: &CMatrix) -> CMatrix {
    let n = m.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let scale = m.iter().map(|x| x.norm()).fold(1.0, f64::max);
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut cols: Vec<CVector> = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= NULL_SPACE_TOL * scale {
            cols.push(v_t.row(k).adjoint());
        }
    }
    // A square input of rank < n always has a zero singular value listed
    // above, so nothing is missed when v_t is a full n×n matrix.
    if cols.is_empty() {
        return CMatrix::zeros(n, 0);
    }
    CMatrix::from_columns(&cols)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SimultaneousError {
    /// Some matrix in the family is not diagonalizable on a joint eigenspace.
    Defective { matrix: usize, missing: usize },
}

/// Splits `C^n` into joint eigenspaces of a commuting family.
///
/// Returns orthonormal column bases, one per joint eigenspace, in a
/// deterministic order: eigenvalues of each successive matrix are visited
/// sorted by (real, imaginary) part. Commutation is the caller's
/// responsibility; a defective member is reported, not patched.
pub fn joint_eigenspaces(n: usize, family: &[CMatrix]) -> Result<Vec<CMatrix>, SimultaneousError> {
    let mut spaces = vec![CMatrix::identity(n, n)];
    for (idx, m) in family.iter().enumerate() {
        let mut next = Vec::new();
        for q in &spaces {
            let k = q.ncols();
            if k == 1 {
                next.push(q.clone());
                continue;
            }
            let restricted = q.adjoint() * m * q;
            let mut vals = cluster(&eigenvalues(&restricted));
            sort_by_value(&mut vals);
            let mut found = 0;
            for (lambda, _) in vals {
                let shifted = &restricted - CMatrix::identity(k, k) * lambda;
                let ns = null_space(&shifted);
                if ns.ncols() == 0 {
                    continue;
                }
                found += ns.ncols();
                next.push(orthonormalize(&(q * ns)));
            }
            if found < k {
                return Err(SimultaneousError::Defective { matrix: idx, missing: k - found });
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

fn sort_by_value(vals: &mut [(C64, usize)]) {
    vals.sort_by(|a, b| {
        let key = |z: &C64| (quantize(z.re), quantize(z.im));
        key(&a.0).cmp(&key(&b.0))
    });
}

/// Integer key used to compare floats deterministically up to tolerance.
pub fn quantize(x: f64) -> i64 {
    (x / tol::PROPORTIONAL).round() as i64
}

/// Gram–Schmidt on the columns of `m`.
pub fn orthonormalize(m: &CMatrix) -> CMatrix {
    let mut cols: Vec<CVector> = Vec::new();
    for j in 0..m.ncols() {
        let mut v = m.column(j).into_owned();
        for u in &cols {
            let proj = u.dotc(&v);
            v -= u * proj;
        }
        let norm = v.norm();
        if norm > NULL_SPACE_TOL {
            cols.push(v / real(norm));
        }
    }
    if cols.is_empty() {
        return CMatrix::zeros(m.nrows(), 0);
    }
    CMatrix::from_columns(&cols)
}

/// Returns `Some(k)` with `b ≈ k·a` when the two vectors are proportional.
pub fn proportionality(a: &[C64], b: &[C64]) -> Option<C64> {
    let pivot = a
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?
        .0;
    let scale = a.iter().chain(b).map(|x| x.norm()).fold(0.0, f64::max);
    if a[pivot].norm() <= tol::PROPORTIONAL * scale.max(f64::MIN_POSITIVE) {
        return None;
    }
    let k = b[pivot] / a[pivot];
    let ok = a
        .iter()
        .zip(b)
        .all(|(x, y)| (y - k * x).norm() <= tol::PROPORTIONAL * scale.max(1.0));
    ok.then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_permutation_matrix() {
        let m = from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let mut ev: Vec<f64> = eigenvalues(&m).iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let ns = null_space(&m);
        assert_eq!(ns.ncols(), 1);
        assert!((ns[(0, 0)] + ns[(1, 0)]).norm() < 1e-12);
    }

    #[test]
    fn joint_eigenspaces_split_degeneracy() {
        // a is degenerate on the first two coordinates, b separates them.
        let a = from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 2.0]]);
        let b = from_real_rows(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]]);
        let spaces = joint_eigenspaces(3, &[a, b]).unwrap();
        assert_eq!(spaces.len(), 3);
        assert!(spaces.iter().all(|s| s.ncols() == 1));
    }

    #[test]
    fn defective_matrix_is_reported() {
        let jordan = from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(matches!(
            joint_eigenspaces(2, &[jordan]),
            Err(SimultaneousError::Defective { .. })
        ));
    }

    #[test]
    fn proportional_rows() {
        let a = [real(1.0), real(2.0)];
        let b = [real(-2.0), real(-4.0)];
        let k = proportionality(&a, &b).unwrap();
        assert!((k - real(-2.0)).norm() < 1e-12);
        assert!(proportionality(&a, &[real(1.0), real(1.0)]).is_none());
    }
}
