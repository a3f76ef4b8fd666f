//! Reference data transcribed from printed tables, plus an independent
//! brute-force S-matrix evaluator used as an oracle.
#![allow(dead_code)]

use anyon_phases::group::FiniteGroup;
use anyon_phases::linalg::{CMatrix, C64};

pub fn omega() -> C64 {
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

pub fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn scaled(rows: &[&[f64]], k: f64) -> CMatrix {
    let n = rows.len();
    CMatrix::from_fn(n, rows[0].len(), |i, j| r(rows[i][j] * k))
}

/// D(S3) S-matrix in A–H order, before the overall 1/6.
pub const S3_DOUBLE_S: [[f64; 8]; 8] = [
    [1.0, 1.0, 2.0, 3.0, 3.0, 2.0, 2.0, 2.0],
    [1.0, 1.0, 2.0, -3.0, -3.0, 2.0, 2.0, 2.0],
    [2.0, 2.0, 4.0, 0.0, 0.0, -2.0, -2.0, -2.0],
    [3.0, -3.0, 0.0, 3.0, -3.0, 0.0, 0.0, 0.0],
    [3.0, -3.0, 0.0, -3.0, 3.0, 0.0, 0.0, 0.0],
    [2.0, 2.0, -2.0, 0.0, 0.0, 4.0, -2.0, -2.0],
    [2.0, 2.0, -2.0, 0.0, 0.0, -2.0, 4.0, -2.0],
    [2.0, 2.0, -2.0, 0.0, 0.0, -2.0, -2.0, 4.0],
];

pub fn s3_double_s() -> CMatrix {
    CMatrix::from_fn(8, 8, |i, j| r(S3_DOUBLE_S[i][j] / 6.0))
}

/// D(Z3) label order used by the printed 9×9 matrix.
pub const Z3_PRINTED_ORDER: [&str; 9] = ["1", "e1", "e2", "m1", "m2", "e1m1", "e2m1", "e1m2", "e2m2"];

/// D(Z3) S-matrix in [`Z3_PRINTED_ORDER`], before the overall 1/3.
/// Entries: 0 → 1, 1 → ω, 2 → ω̄.
const Z3_CODES: [[u8; 9]; 9] = [
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

pub fn z3_double_s_printed() -> CMatrix {
    let w = omega();
    CMatrix::from_fn(9, 9, |i, j| {
        let v = match Z3_CODES[i][j] {
            0 => r(1.0),
            1 => w,
            _ => w.conj(),
        };
        v / 3.0
    })
}

/// D(S3) fusion table, row × column.
pub const S3_FUSION: [[&str; 8]; 8] = [
    ["A", "B", "C", "D", "E", "F", "G", "H"],
    ["B", "A", "C", "E", "D", "F", "G", "H"],
    ["C", "C", "A+B+C", "D+E", "D+E", "G+H", "F+H", "F+G"],
    ["D", "E", "D+E", "A+C+F+G+H", "B+C+F+G+H", "D+E", "D+E", "D+E"],
    ["E", "D", "D+E", "B+C+F+G+H", "A+C+F+G+H", "D+E", "D+E", "D+E"],
    ["F", "F", "G+H", "D+E", "D+E", "A+B+F", "H+C", "G+C"],
    ["G", "G", "F+H", "D+E", "D+E", "H+C", "A+B+G", "F+C"],
    ["H", "H", "F+G", "D+E", "D+E", "G+C", "F+C", "A+B+H"],
];

/// Sorted outcome names of a fusion-table cell.
pub fn outcomes(cell: &str) -> Vec<String> {
    let mut v: Vec<String> = cell.split('+').map(|s| s.trim().to_string()).collect();
    v.sort();
    v
}

pub fn z2_double_s() -> CMatrix {
    scaled(
        &[&[1.0, 1.0, 1.0, 1.0], &[1.0, 1.0, -1.0, -1.0], &[1.0, -1.0, 1.0, -1.0], &[1.0, -1.0, -1.0, 1.0]],
        0.5,
    )
}

/// SU(2)_4 S-matrix in the order J0, J2, J1, J1/2, J3/2.
pub fn su2_4_s() -> CMatrix {
    let q = 3f64.sqrt();
    scaled(
        &[
            &[1.0, 1.0, 2.0, q, q],
            &[1.0, 1.0, 2.0, -q, -q],
            &[2.0, 2.0, -2.0, 0.0, 0.0],
            &[q, -q, 0.0, q, -q],
            &[q, -q, 0.0, -q, q],
        ],
        1.0 / 12f64.sqrt(),
    )
}

/// Condensed 5×5 matrix obtained from D(S3) without C_x, before the 1/3.
pub fn condensed_cx() -> CMatrix {
    let s = 2f64.sqrt();
    scaled(
        &[
            &[1.0, s, s, s, s],
            &[s, 2.0, -1.0, -1.0, -1.0],
            &[s, -1.0, 2.0, -1.0, -1.0],
            &[s, -1.0, -1.0, 2.0, -1.0],
            &[s, -1.0, -1.0, -1.0, 2.0],
        ],
        1.0 / 3.0,
    )
}

/// Printed characters for S3: traces of the 2D irrep matrices, and the
/// Z2 / Z3 tables for the centralizers of x and y.
pub fn s3_characters(centralizer_of: &str) -> (Vec<&'static str>, Vec<Vec<C64>>) {
    match centralizer_of {
        "e" => (
            vec!["e", "x", "xy", "xy2", "y", "y2"],
            vec![
                vec![r(1.0); 6],
                vec![r(1.0), r(-1.0), r(-1.0), r(-1.0), r(1.0), r(1.0)],
                vec![r(2.0), r(0.0), r(0.0), r(0.0), r(-1.0), r(-1.0)],
            ],
        ),
        "x" => (vec!["e", "x"], vec![vec![r(1.0), r(1.0)], vec![r(1.0), r(-1.0)]]),
        "y" => z3_characters(),
        other => panic!("no printed centralizer for {other}"),
    }
}

pub fn z3_characters() -> (Vec<&'static str>, Vec<Vec<C64>>) {
    let w = omega();
    (
        vec!["e", "y", "y2"],
        vec![vec![r(1.0); 3], vec![r(1.0), w, w.conj()], vec![r(1.0), w.conj(), w]],
    )
}

pub fn z2_characters() -> (Vec<&'static str>, Vec<Vec<C64>>) {
    (vec!["e", "x"], vec![vec![r(1.0), r(1.0)], vec![r(1.0), r(-1.0)]])
}

/// Direct evaluation of the character sum for the S-matrix of D(G):
/// classes found by brute-force conjugation, characters supplied by the
/// caller for each class representative's centralizer.
pub fn brute_force_smatrix(
    g: &FiniteGroup,
    characters: impl Fn(&str) -> (Vec<&'static str>, Vec<Vec<C64>>),
) -> CMatrix {
    let n = g.order();
    let mul = |a: usize, b: usize| g.table()[a][b];
    let e = (0..n).find(|&i| (0..n).all(|j| mul(i, j) == j)).unwrap();
    let inv = |a: usize| (0..n).find(|&b| mul(a, b) == e).unwrap();

    let mut reps = vec![e];
    let mut seen: Vec<usize> = vec![e];
    for x in 0..n {
        if seen.contains(&x) {
            continue;
        }
        reps.push(x);
        for z in 0..n {
            let c = mul(mul(z, x), inv(z));
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
    }

    struct Sector {
        rep: usize,
        members: Vec<usize>,
        chars: Vec<Vec<C64>>,
    }
    let sectors: Vec<Sector> = reps
        .iter()
        .map(|&rep| {
            let (names, chars) = characters(g.element_name(rep));
            let members = names.iter().map(|nm| g.index_of(nm).unwrap()).collect();
            Sector { rep, members, chars }
        })
        .collect();
    let chi = |s: &Sector, irrep: usize, h: usize| -> Option<C64> {
        s.members.iter().position(|&m| m == h).map(|k| s.chars[irrep][k])
    };

    let anyons: Vec<(usize, usize)> =
        sectors.iter().enumerate().flat_map(|(k, s)| (0..s.chars.len()).map(move |i| (k, i))).collect();
    let m = anyons.len();
    CMatrix::from_fn(m, m, |a, b| {
        let (sa, ia) = anyons[a];
        let (sb, ib) = anyons[b];
        let (pa, pb) = (&sectors[sa], &sectors[sb]);
        let mut acc = C64::new(0.0, 0.0);
        for h in 0..n {
            let x = mul(mul(h, pb.rep), inv(h));
            if let Some(u) = chi(pa, ia, x) {
                let y = mul(mul(inv(h), inv(pa.rep)), h);
                acc += u * chi(pb, ib, y).unwrap();
            }
        }
        acc / (pa.members.len() * pb.members.len()) as f64
    })
}

/// Column map σ with `a[.., j] = b[.., σ(j)]` within `tol`, if it is a
/// bijection. Columns of a unitary matrix are distinct, so each column of
/// `a` has at most one partner.
pub fn column_permutation(a: &CMatrix, b: &CMatrix, tol: f64) -> Option<Vec<usize>> {
    let n = a.ncols();
    if b.ncols() != n || a.nrows() != b.nrows() {
        return None;
    }
    let same = |j: usize, k: usize| (0..a.nrows()).all(|i| (a[(i, j)] - b[(i, k)]).norm() <= tol);
    let sigma: Vec<usize> = (0..n).map(|j| (0..n).find(|&k| same(j, k))).collect::<Option<_>>()?;
    let mut seen = vec![false; n];
    for &k in &sigma {
        if std::mem::replace(&mut seen[k], true) {
            return None;
        }
    }
    Some(sigma)
}

/// `m[p[i]][p[j]]`, the matrix relabeled by `p`.
pub fn relabel(m: &CMatrix, p: &[usize]) -> CMatrix {
    CMatrix::from_fn(p.len(), p.len(), |i, j| m[(p[i], p[j])])
}
