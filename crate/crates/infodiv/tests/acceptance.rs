//! Acceptance suite: runs every criterion from the verify module and prints
//! one PASS/FAIL line per criterion (visible with `--nocapture`). The same
//! checks back the `infodiv verify` subcommand.

use infodiv::verify::{run_all, CriterionReport};

fn run(id: usize) -> CriterionReport {
    let report = run_all()
        .into_iter()
        .find(|r| r.id == id)
        .expect("criterion exists");
    println!("{}", report.line());
    report
}

macro_rules! criterion_test {
    ($name:ident, $id:expr) => {
        #[test]
        fn $name() {
            let report = run($id);
            assert!(report.passed, "{}", report.line());
        }
    };
}

criterion_test!(criterion_01_scenarios_1_and_2, 1);
criterion_test!(criterion_02_scenarios_3_and_4, 2);
criterion_test!(criterion_03_knowledge_worth, 3);
criterion_test!(criterion_04_coding_examples, 4);
criterion_test!(criterion_05_boundedness_suite, 5);
criterion_test!(criterion_06_codeword_length_bounds, 6);
criterion_test!(criterion_07_averaging_identity, 7);
criterion_test!(criterion_08_sweep_spot_checks, 8);
criterion_test!(criterion_09_legend_paradox, 9);
criterion_test!(criterion_10_score_table, 10);
criterion_test!(criterion_11_sigma_thresholds, 11);
