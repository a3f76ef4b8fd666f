mod common;

use anyon_phases::group::{preset, FiniteGroup};
use anyon_phases::linalg::{self, CMatrix};
use anyon_phases::modular::{build_double, smatrix_double, tmatrix_double, validate_theory, verlinde_fusion};
use common::*;
use proptest::prelude::*;

fn permuted(s: &CMatrix, order: &[usize]) -> CMatrix {
    CMatrix::from_fn(order.len(), order.len(), |i, j| s[(order[i], order[j])])
}

#[test]
fn s3_smatrix_matches_printed() {
    let s = smatrix_double(&preset("s3").unwrap()).unwrap();
    assert!(linalg::max_abs_diff(&s, &s3_double_s()) < 1e-9);
}

#[test]
fn z3_smatrix_matches_printed_after_relabeling() {
    let t = build_double(&preset("z3").unwrap()).unwrap();
    let order: Vec<usize> = Z3_PRINTED_ORDER.iter().map(|n| t.index_of(n).unwrap()).collect();
    assert!(linalg::max_abs_diff(&permuted(&t.s, &order), &z3_double_s_printed()) < 1e-9);
}

#[test]
fn z2_smatrix_matches_printed() {
    let s = smatrix_double(&preset("z2").unwrap()).unwrap();
    assert!(linalg::max_abs_diff(&s, &z2_double_s()) < 1e-12);
}

#[test]
fn s3_fusion_table_from_printed_smatrix() {
    let f = verlinde_fusion(&s3_double_s()).unwrap();
    let names: Vec<String> = "ABCDEFGH".chars().map(String::from).collect();
    for a in 0..8 {
        for b in 0..8 {
            let mut got: Vec<String> = f.product(a, b).iter().map(|&(c, m)| {
                assert_eq!(m, 1);
                names[c].clone()
            }).collect();
            got.sort();
            assert_eq!(got, outcomes(S3_FUSION[a][b]), "{} x {}", names[a], names[b]);
        }
    }
}

#[test]
fn brute_force_oracle_agrees() {
    let cases: [(&str, fn(&str) -> (Vec<&'static str>, Vec<Vec<anyon_phases::linalg::C64>>)); 3] = [
        ("s3", s3_characters),
        ("z2", |_| z2_characters()),
        ("z3", |_| z3_characters()),
    ];
    for (name, chars) in cases {
        let g = preset(name).unwrap();
        let oracle = brute_force_smatrix(&g, chars);
        let s = smatrix_double(&g).unwrap();
        assert!(linalg::max_abs_diff(&s, &oracle) < 1e-12, "{name}");
    }
}

#[test]
fn s3_spins() {
    let t = tmatrix_double(&preset("s3").unwrap()).unwrap();
    let w = omega();
    let expected = [r(1.0), r(1.0), r(1.0), r(1.0), r(-1.0), r(1.0), w, w.conj()];
    for (a, e) in expected.iter().enumerate() {
        assert!((t[a] - e).norm() < 1e-12, "anyon {a}");
    }
}

const SMALL: &[&str] = &[
    "z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z9", "z10", "z11", "z12", "s3", "d4", "d5", "d6",
    "z2xz2", "z3xz3", "z2xz2xz2", "q8", "a4",
];

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(SMALL).prop_map(|n| preset(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn doubles_are_valid_theories(g in small_group()) {
        let t = build_double(&g).unwrap();
        let report = validate_theory(&t);
        prop_assert!(report.passed(), "{}", report);
        let expected: usize = anyon_phases::modular::DoubleData::new(&g).unwrap()
            .centralizer_tables.iter().map(|t| t.len()).sum();
        prop_assert_eq!(t.len(), expected);
        prop_assert!((t.total_dim - g.order() as f64).abs() < 1e-9);
        let spins = t.t.as_ref().unwrap();
        prop_assert!((spins[0].re - 1.0).abs() < 1e-12);
        prop_assert!(spins.iter().all(|z| (z.norm() - 1.0).abs() < 1e-9));
        prop_assert!(linalg::is_symmetric_up_to_conjugation(&t.s, 1e-9));
    }
}
