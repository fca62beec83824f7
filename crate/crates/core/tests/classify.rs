use scroll_core::classify::{
    classify_one, enumerate_candidates, run_search, ClassifyOptions, RejectReason, Status, VerifyScope, TABLE1,
};
use scroll_core::report::compare_table;
use scroll_core::ScrollSpec;

fn fast() -> ClassifyOptions {
    ClassifyOptions { verify: VerifyScope::Off, ..Default::default() }
}

#[test]
fn unweighted_table_is_stable_in_the_bound() {
    for bound in [4, 6, 8] {
        let res = run_search(&[1, 1, 1, 1], bound, &fast()).unwrap();
        assert!(compare_table(&res, &TABLE1).exact(), "bound {bound}");
        assert_eq!(res.table_rows().len(), 10);
    }
}

#[test]
fn candidates_are_normalized_and_distinct() {
    let c = enumerate_candidates(&[1, 1, 2, 2], 6).unwrap();
    assert_eq!(c.len(), 343);
    assert!(c.iter().all(|s| s.is_normalized()));
    let mut seen = c.clone();
    seen.sort_by_key(|s| (s.twists().to_vec(), s.weights().to_vec()));
    seen.dedup();
    assert_eq!(seen.len(), c.len());
}

#[test]
fn two_two_weights_rejection_census() {
    let res = run_search(&[1, 1, 2, 2], 6, &ClassifyOptions::default()).unwrap();
    assert_eq!(res.candidates, 343);
    assert_eq!(res.accepted.len(), 30);
    assert_eq!(res.rejections[&RejectReason::BaseLocusDim3], 25);
    assert_eq!(res.rejections[&RejectReason::NonIsolatedSingularities], 284);
    assert_eq!(res.rejections[&RejectReason::SingularPointsOnBaseCurve], 3);
    assert_eq!(res.rejections[&RejectReason::FractionalOdpCount], 1);
    let mut odp: Vec<(String, i64)> = res.table_rows().iter().map(|r| (r.notation.clone(), r.odp().unwrap())).collect();
    odp.sort();
    assert_eq!(odp, vec![("F(0,0,1,2|1²,2²)".to_string(), 4), ("F(0,2,0,1|1²,2²)".to_string(), 2)]);
}

#[test]
fn single_records() {
    let rec = classify_one(&ScrollSpec::parse("F(0,0,1,2)").unwrap(), &ClassifyOptions::default());
    assert_eq!(rec.status, Status::Accepted);
    assert_eq!(rec.odp(), Some(3));
    let rec = classify_one(&ScrollSpec::parse("F(0,0,0,9)").unwrap(), &fast());
    assert!(matches!(rec.status, Status::Rejected { reason: RejectReason::BaseLocusDim3, .. }), "{:?}", rec.status);
}

#[test]
fn quartic_inequalities_cut_out_the_surface_base_locus_rows() {
    let mut solutions = Vec::new();
    for a2 in 0..=12i64 {
        for a3 in a2..=12 {
            for a4 in a3..=12 {
                let ok = 2 - a2 + 3 * a3 - a4 >= 0 && 2 + 3 * a2 - a3 - a4 < 0 && 2 + 2 * a2 - a4 >= 0 && 2 - a2 - a3 >= 0;
                if ok {
                    solutions.push(format!("F(0,{a2},{a3},{a4})"));
                }
            }
        }
    }
    assert_eq!(solutions, vec!["F(0,0,1,2)", "F(0,0,2,2)"]);
    let a = ScrollSpec::parse("F(0,0,1,2)").unwrap().twists().to_vec();
    assert_eq!(2 - a[1] + 3 * a[2] - a[3], 3);

    let res = run_search(&[1, 1, 1, 1], 10, &fast()).unwrap();
    let mut surface_rows: Vec<String> =
        res.table_rows().iter().filter(|r| r.base_dim() == Some(2)).map(|r| r.notation.clone()).collect();
    surface_rows.sort();
    assert_eq!(surface_rows, solutions);
}
