mod common;

use anyon_phases::cli::{self, Cli};
use anyon_phases::engine::{
    bundled_scripts, EngineError, PhaseReport, Protocol, Script, ScriptStep, StepKind, StepPayload,
};
use anyon_phases::group::{preset, FiniteGroup};
use anyon_phases::linalg;
use clap::Parser;
use common::*;

fn s3() -> Protocol {
    Protocol::new(&preset("s3").unwrap()).unwrap()
}

fn names(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

fn run(p: &Protocol, classes: &str, irreps: &str) -> PhaseReport {
    let spec = p.spec_from_names(&names(classes), &names(irreps)).unwrap();
    p.run_auto(&spec).unwrap()
}

#[test]
fn truncated_tables_restrict_the_full_table() {
    let p = s3();
    let letters = "ABCDEFGH";
    for keep in ["ABCFGH", "ABCDE", "ABDEF", "ADF", "ACD", "ACDFGH", "ABC", "ABF", "ABDE"] {
        let idx: Vec<usize> = keep.chars().map(|c| letters.find(c).unwrap()).collect();
        let tf = p.truncate(&idx);
        for &a in &idx {
            for &b in &idx {
                let mut want: Vec<String> =
                    outcomes(S3_FUSION[a][b]).into_iter().filter(|c| keep.contains(c.as_str())).collect();
                want.sort();
                let (x, y) = (tf.index_of(&letters[a..=a]).unwrap(), tf.index_of(&letters[b..=b]).unwrap());
                let mut got: Vec<String> = tf.fusion.product(x, y).iter().map(|&(c, _)| tf.labels[c].clone()).collect();
                got.sort();
                assert_eq!(got, want, "{keep}: {} x {}", &letters[a..=a], &letters[b..=b]);
            }
        }
    }
}

#[test]
fn printed_truncated_products() {
    let p = s3();
    let abcfgh = p.truncate(&[0, 1, 2, 5, 6, 7]);
    assert_eq!(abcfgh.product_string("C", "F").unwrap(), "G ⊕ H");
    assert_eq!(abcfgh.product_string("F", "F").unwrap(), "A ⊕ B ⊕ F");
    let abcde = p.truncate(&[0, 1, 2, 3, 4]);
    assert_eq!(abcde.product_string("D", "D").unwrap(), "A ⊕ C");
    assert_eq!(abcde.product_string("D", "E").unwrap(), "B ⊕ C");
    let adf = p.truncate(&[0, 3, 5]);
    assert_eq!(adf.product_string("D", "D").unwrap(), "A ⊕ F");
    assert_eq!(adf.product_string("F", "D").unwrap(), "D");
}

#[test]
fn every_cell_reaches_its_theory() {
    use StepKind::*;
    let p = s3();
    let want: [(&str, &str, &str, &[StepKind]); 16] = [
        ("", "", "D(S3)", &[CatalogMatch]),
        ("Cx", "", "D(Z3)", &[Forbid, Condense, Split, CatalogMatch]),
        ("Cy", "", "SU(2)_4", &[Forbid, SymmetryBreak, CatalogMatch]),
        ("", "Gamma2", "SU(2)_4", &[Forbid, PartialForbid, CatalogMatch]),
        ("", "Gamma-1", "Z2", &[Forbid, PartialForbid, Forbid, Condense, SymmetryBreak, CatalogMatch]),
        ("Cy", "Gamma2", "D(Z2)", &[Forbid, PartialForbid, SymmetryBreak, CatalogMatch]),
        ("Cx Cy", "", "Z3", &[Forbid, Condense, Split, CatalogMatch]),
        ("Cx", "Gamma2", "Z3", &[Forbid, Condense, Split, CatalogMatch]),
        ("Cx", "Gamma-1", "D(Z3)", &[Forbid, PartialForbid, Condense, Split, CatalogMatch]),
        ("Cy", "Gamma-1", "Z2", &[Forbid, PartialForbid, Forbid, Condense, SymmetryBreak, CatalogMatch]),
        ("", "Gamma-1 Gamma2", "Z2", &[Forbid, PartialForbid, Condense, SymmetryBreak, CatalogMatch]),
        ("Cx Cy", "Gamma2", "Z2", &[Forbid, CatalogMatch]),
        ("Cx Cy", "Gamma-1", "Z3", &[Forbid, Condense, Split, CatalogMatch]),
        ("Cx", "Gamma-1 Gamma2", "Z3", &[Forbid, PartialForbid, Condense, Split, CatalogMatch]),
        ("Cy", "Gamma-1 Gamma2", "Z2", &[Forbid, PartialForbid, SymmetryBreak, CatalogMatch]),
        ("Cx Cy", "Gamma-1 Gamma2", "trivial", &[Forbid]),
    ];
    for (classes, irreps, theory, kinds) in want {
        let r = run(&p, classes, irreps);
        assert_eq!(r.final_name(), Some(theory), "{classes} / {irreps}");
        assert_eq!(r.step_kinds(), kinds.to_vec(), "{classes} / {irreps}");
    }
    let trivial = run(&p, "Cx Cy", "Gamma-1 Gamma2");
    assert!(trivial.final_theory.unwrap().extrapolated);
}

#[test]
fn repair_removes_e_for_the_sign_irrep() {
    let p = s3();
    for classes in ["", "Cy"] {
        let r = run(&p, classes, "Gamma-1");
        assert_eq!(r.branches.len(), 2);
        assert!(r.branches[0].removed.is_empty());
        assert_eq!(r.branches[1].removed, vec!["E".to_string()]);
        let induced = r.steps.iter().find_map(|s| match &s.payload {
            StepPayload::Forbid { removed, induced: true } => Some(removed.clone()),
            _ => None,
        });
        assert_eq!(induced, Some(vec!["E".to_string()]));
    }
}

#[test]
fn condensed_matrices() {
    let p = s3();
    let cx = run(&p, "Cx", "");
    let condense = cx.steps.iter().find(|s| s.kind() == StepKind::Condense).unwrap();
    assert!(linalg::max_abs_diff(&condense.s.as_ref().unwrap().to_matrix(), &condensed_cx()) < 1e-9);

    let cxcy = run(&p, "Cx Cy", "");
    let condense = cxcy.steps.iter().find(|s| s.kind() == StepKind::Condense).unwrap();
    let q = 2f64.sqrt();
    let want = scaled(&[&[1.0, q], &[q, -1.0]], 1.0 / 3f64.sqrt());
    assert!(linalg::max_abs_diff(&condense.s.as_ref().unwrap().to_matrix(), &want) < 1e-9);

    let adf = run(&p, "", "Gamma-1 Gamma2");
    let condense = adf.steps.iter().find(|s| s.kind() == StepKind::Condense).unwrap();
    let h = 1.0 / 2f64.sqrt();
    let want = scaled(&[&[1.0, 1.0], &[1.0, -1.0]], h);
    assert!(linalg::max_abs_diff(&condense.s.as_ref().unwrap().to_matrix(), &want) < 1e-9);
    assert!(adf.notes.iter().any(|n| n.contains("with multiplicity")));
}

#[test]
fn wrong_block_fails_at_the_condense_step() {
    let p = s3();
    let mut script = bundled_scripts("s3").into_iter().find(|s| s.name == "cx").unwrap();
    let at = script.steps.iter().position(|s| matches!(s, ScriptStep::Condense { .. })).unwrap();
    if let ScriptStep::Condense { blocks, .. } = &mut script.steps[at] {
        *blocks = vec![names("A C")];
    }
    let spec = p.spec_from_names(&script.spec.classes, &script.spec.irreps).unwrap();
    match p.run_script(&spec, &script) {
        Err(EngineError::ScriptStepFailed { index, kind, reason }) => {
            assert_eq!(index, at);
            assert_eq!(kind, "condense");
            assert!(reason.contains("does not condense"), "{reason}");
        }
        other => panic!("expected a step failure, got {other:?}"),
    }
}

#[test]
fn wrong_final_theory_fails() {
    let p = s3();
    let mut script = bundled_scripts("s3").into_iter().find(|s| s.name == "cy").unwrap();
    script.final_theory = "D(Z2)".into();
    script.steps.pop();
    let spec = p.spec_from_names(&script.spec.classes, &script.spec.irreps).unwrap();
    assert!(matches!(p.run_script(&spec, &script), Err(EngineError::ScriptStepFailed { .. })));
}

#[test]
fn scripts_agree_with_auto() {
    let p = s3();
    let cells = p.enumerate_diagram();
    assert_eq!(cells.len(), 16);
    assert_eq!(cells.iter().filter(|c| c.script_agrees == Some(true)).count(), 15);
}

#[test]
fn reports_round_trip_and_repeat() {
    let p = s3();
    for cell in p.enumerate_diagram() {
        let r = cell.result.unwrap();
        let json = r.to_json();
        assert_eq!(PhaseReport::from_json(&json).unwrap(), r);
        let again = p.run_auto(&cell.spec).unwrap();
        assert_eq!(again.to_json(), json);
        assert_eq!(again.to_markdown(), r.to_markdown());
    }
}

#[test]
fn bundled_scripts_round_trip() {
    for s in bundled_scripts("s3") {
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(Script::from_json(&text).unwrap(), s);
    }
}

fn cli(args: &str) -> Result<cli::Output, cli::CliError> {
    let argv = std::iter::once("anyon-phases").chain(args.split_whitespace());
    cli::run(&Cli::try_parse_from(argv).unwrap())
}

#[test]
fn cli_exit_codes() {
    assert_eq!(cli("forbid s3 --class Cx").unwrap().code, cli::EXIT_OK);
    assert!(cli("forbid s3 --class Cx").unwrap().text.contains("Result: D(Z3)"));
    assert!(cli("forbid s3 --irrep Gamma2").unwrap().text.trim_end().ends_with("Result: SU(2)_4"));
    assert!(cli("forbid s3").unwrap().text.trim_end().ends_with("D(S3), no transition"));
    assert_eq!(cli("forbid s3 --irrep Gamma1").unwrap_err().exit_code(), cli::EXIT_INPUT);
    assert_eq!(cli("forbid s3 --class Cq").unwrap_err().exit_code(), cli::EXIT_INPUT);
    assert_eq!(cli("inspect nosuchgroup").unwrap_err().exit_code(), cli::EXIT_INPUT);
    assert_eq!(cli("forbid d4 --class Cr").unwrap().code, cli::EXIT_NO_THEORY);
    assert_eq!(cli("forbid s3 --class Cx --mode script").unwrap().code, cli::EXIT_OK);
}

#[test]
fn cli_outputs() {
    let inspect = cli("inspect s3").unwrap().text;
    for row in ["| A | Ce | Gamma1 | 1 |", "| D | Cx | Gamma1 | 3 |", "| H | Cy | Gamma_wbar | 2 |"] {
        assert!(inspect.contains(row), "{row}");
    }
    let z2 = cli("inspect z2 --format json").unwrap().text;
    let parsed: anyon_phases::modular::TheoryJson = serde_json::from_str(&z2).unwrap();
    assert_eq!(parsed.labels, names("1 e m em"));

    let diagram = cli("diagram s3").unwrap().text;
    assert!(diagram.contains("| {Cx, Gamma2} | Z3 |"));
    assert!(diagram.contains("| {Cx, Gamma-1} | D(Z3) |"));
    assert_eq!(diagram.lines().filter(|l| l.starts_with("| {")).count(), 16);
    assert!(cli("diagram z3").unwrap().text.contains("| {} | D(Z3) |"));

    let verify = cli("verify-scripts s3").unwrap();
    assert_eq!(verify.code, cli::EXIT_OK);
    assert!(verify.text.contains("15/15 scripts passed"));
    let vacuous = cli("verify-scripts z2").unwrap();
    assert_eq!((vacuous.code, vacuous.text.as_str()), (cli::EXIT_OK, "0/0 scripts passed\n"));

    assert_eq!(cli("diagram s3 --format json").unwrap(), cli("diagram s3 --format json").unwrap());
}

#[test]
fn cli_tampered_script_directory() {
    let dir = tempfile::tempdir().unwrap();
    for s in bundled_scripts("s3") {
        let mut s = s;
        if s.name == "cx_cy" {
            for step in &mut s.steps {
                if let ScriptStep::Condense { blocks, .. } = step {
                    *blocks = vec![names("A C")];
                }
            }
        }
        std::fs::write(dir.path().join(format!("{}.json", s.name)), serde_json::to_string_pretty(&s).unwrap()).unwrap();
    }
    let out = cli(&format!("verify-scripts s3 --scripts {}", dir.path().display())).unwrap();
    assert_eq!(out.code, cli::EXIT_FAILED);
    assert!(out.text.contains("FAIL cx_cy: script step 1 (condense) failed"), "{}", out.text);
    assert!(out.text.contains("14/15 scripts passed"));
}

#[test]
fn cli_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d_z3.json");
    let out = cli(&format!("export --theory d_z3 --out {}", path.display())).unwrap();
    assert!(out.text.is_empty());
    let parsed: anyon_phases::modular::TheoryJson = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(parsed.labels.len(), 9);

    let group = dir.path().join("s3.json");
    std::fs::write(&group, serde_json::to_string(&preset("s3").unwrap().to_file()).unwrap()).unwrap();
    let from_file = cli(&format!("forbid {} --class Cx", group.display())).unwrap();
    assert!(from_file.text.contains("Result: D(Z3)"));
    let g = FiniteGroup::resolve(group.to_str().unwrap()).unwrap();
    assert_eq!(g.order(), 6);
}
