use fracbound_core::report::{from_json, to_csv, to_json, REPORT_CSV_HEADER};
use fracbound_core::{default_corpus, run_corpus, RunConfig, Summary, XPoints};

fn small_config() -> RunConfig {
    RunConfig {
        functions: default_corpus().into_iter().take(2).collect(),
        alphas: vec![1.0, 2.0],
        x_points: XPoints::Count(3),
        ..RunConfig::default()
    }
}

#[test]
fn json_round_trip_is_lossless() {
    let report = run_corpus(&small_config()).unwrap();
    let text = to_json(&report).unwrap();
    assert_eq!(from_json(&text).unwrap(), report);
}

#[test]
fn summary_recomputes_from_records() {
    let report = run_corpus(&small_config()).unwrap();
    assert_eq!(Summary::from_records(&report.records), report.summary);
    assert_eq!(report.records.len(), 2 * 2 * 3);
}

#[test]
fn csv_has_fixed_header_and_unix_newlines() {
    let report = run_corpus(&small_config()).unwrap();
    let csv = to_csv(&report).unwrap();
    assert!(!csv.contains('\r'));
    assert_eq!(csv.lines().next().unwrap(), REPORT_CSV_HEADER.join(","));
    assert_eq!(to_csv(&report).unwrap(), csv);
}

#[test]
fn invalid_config_names_field() {
    let err = RunConfig::from_json(r#"{"functions": [], "intervals": [[1, 1]], "alphas": [1], "x_points": 3}"#)
        .unwrap_err()
        .to_string();
    assert!(err.contains("intervals") || err.contains("functions"), "{err}");
}
