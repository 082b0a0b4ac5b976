use std::io::Write;
use std::process::Command;

use proptest::prelude::*;
use serde_json::json;
use thetakit_cli::config::{parse_args, parse_config_text, Experiment, Format};
use thetakit_cli::error::Origin;
use thetakit_cli::report::{row, Metadata, ReportDocument, Verdict};
use thetakit_cli::{exit_code, run, CliError, ConfigError};

fn args(line: &str) -> Vec<String> {
    std::iter::once("thetakit".to_string()).chain(line.split_whitespace().map(String::from)).collect()
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thetakit"))
}

#[test]
fn flags_give_a_valid_config() {
    let c = parse_args(args("--experiment symbol-table --p 7 --n 3")).unwrap();
    assert_eq!(c.experiment, Experiment::SymbolTable);
    assert_eq!(c.int("p"), 7);
    assert_eq!(c.int("n"), 3);
    assert_eq!(c.format, Format::Text);
    assert!(c.timestamp);
}

#[test]
fn defaults_are_filled_in() {
    let c = parse_args(args("--experiment prop28-search --p 7 --n 3")).unwrap();
    assert_eq!(c.get("g"), "1");
    assert_eq!(c.get("subgroup"), "zero");
}

#[test]
fn file_parsing_skips_comments_and_blanks() {
    let text = "# header\n\nexperiment = symbol-table  # trailing\n p=7\nn =3\n";
    let entries = parse_config_text(text, "x.cfg".as_ref()).unwrap();
    let pairs: Vec<(&str, &str)> = entries.iter().map(|(k, v, _)| (k.as_str(), v.as_str())).collect();
    assert_eq!(pairs, [("experiment", "symbol-table"), ("p", "7"), ("n", "3")]);
    assert_eq!(entries[1].2, Origin::Line { file: "x.cfg".into(), line: 4 });
}

#[test]
fn malformed_line_is_located() {
    let err = parse_config_text("experiment=symbol-table\njunk\n", "x.cfg".as_ref()).unwrap_err();
    match err {
        ConfigError::Malformed { origin, .. } => assert_eq!(origin, Origin::Line { file: "x.cfg".into(), line: 2 }),
        other => panic!("{other:?}"),
    }
}

#[test]
fn type_error_names_the_key_and_line() {
    let f = config_file("experiment=heisenberg-verify\nn=banana\ng=1\n");
    let err = parse_args(args(&format!("--config {}", f.path().display()))).unwrap_err();
    match &err {
        ConfigError::Type { key, value, origin, .. } => {
            assert_eq!(key, "n");
            assert_eq!(value, "banana");
            assert_eq!(*origin, Origin::Line { file: f.path().to_path_buf(), line: 2 });
        }
        other => panic!("{other:?}"),
    }
    assert!(err.to_string().contains("`n`"));
}

#[test]
fn type_error_from_flag_names_the_flag() {
    let err = parse_args(args("--experiment symbol-table --p seven --n 3")).unwrap_err();
    assert!(matches!(err, ConfigError::Type { ref origin, .. } if *origin == Origin::Flag("p".into())));
}

#[test]
fn flag_overrides_file() {
    let f = config_file("experiment=symbol-table\np=11\nn=5\n");
    let c = parse_args(args(&format!("--config {} --p 7 --n 3", f.path().display()))).unwrap();
    assert_eq!(c.int("p"), 7);
    assert_eq!(c.int("n"), 3);
    let c = parse_args(args(&format!("--config {}", f.path().display()))).unwrap();
    assert_eq!(c.int("p"), 11);
}

#[test]
fn unknown_inputs_are_rejected() {
    assert!(matches!(parse_args(args("--experiment nonsense")).unwrap_err(), ConfigError::UnknownExperiment { .. }));
    assert!(matches!(parse_args(args("--p 7")).unwrap_err(), ConfigError::MissingExperiment));
    assert!(matches!(parse_args(args("--experiment symbol-table --q 7")).unwrap_err(), ConfigError::Usage(_)));
    assert!(matches!(
        parse_args(args("--experiment symbol-table --p 7 --n 3 --groups C2")).unwrap_err(),
        ConfigError::UnknownKey { .. }
    ));
    let f = config_file("experiment=symbol-table\np=7\nn=3\ncolour=blue\n");
    assert!(matches!(
        parse_args(args(&format!("--config {}", f.path().display()))).unwrap_err(),
        ConfigError::UnknownKey { .. }
    ));
    assert!(matches!(parse_args(args("--experiment symbol-table --p 7")).unwrap_err(), ConfigError::MissingKey { .. }));
    assert!(matches!(
        parse_args(args("--experiment symbol-table --p 7 --n 3 --format xml")).unwrap_err(),
        ConfigError::Type { .. }
    ));
}

#[test]
fn parameters_are_checked_against_models_and_guards() {
    assert!(matches!(parse_args(args("--experiment symbol-table --p 8 --n 3")).unwrap_err(), ConfigError::Invalid(_)));
    assert!(matches!(parse_args(args("--experiment symbol-table --p 7 --n 4")).unwrap_err(), ConfigError::Invalid(_)));
    assert!(matches!(
        parse_args(args("--experiment cohomology-survey --groups C2,Q8")).unwrap_err(),
        ConfigError::Type { .. }
    ));
    let err = parse_args(args("--experiment lang-tate-index --n 50 --g 4")).unwrap_err();
    assert!(matches!(err, ConfigError::Invalid(thetakit::Error::GuardExceeded { guard: "lang_tate_index", .. })));
}

#[test]
fn empty_group_selector_gives_empty_passing_report() {
    let c = parse_args(args("--experiment cohomology-survey --groups= --no-timestamp")).unwrap();
    let doc = run(&c).unwrap();
    assert!(doc.rows.is_empty());
    assert!(!doc.verdicts.is_empty());
    assert!(doc.all_passed());
}

#[test]
fn heisenberg_report_contains_dihedral_counts() {
    let c = parse_args(args("--experiment heisenberg-verify --n 2 --g 1")).unwrap();
    let doc = run(&c).unwrap();
    let value = |q: &str| doc.rows.iter().find(|r| r["quantity"] == q).map(|r| r["value"].clone());
    assert_eq!(value("g1_order"), Some(json!(8)));
    assert_eq!(value("quotient_image_order"), Some(json!(2)));
    assert!(doc.all_passed());
}

#[test]
fn symbol_table_is_square_and_antisymmetric() {
    let c = parse_args(args("--experiment symbol-table --p 7 --n 3")).unwrap();
    let doc = run(&c).unwrap();
    assert_eq!(doc.rows.len(), 9);
    assert_eq!(doc.columns.len(), 10);
    let labels: Vec<String> = doc.rows.iter().map(|r| r["a"].as_str().unwrap().to_string()).collect();
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            let x = doc.rows[i][b].as_u64().unwrap();
            let y = doc.rows[j][a].as_u64().unwrap();
            assert_eq!((x + y) % 3, 0);
        }
    }
}

#[test]
fn every_experiment_runs_and_round_trips() {
    for line in [
        "--experiment cohomology-survey --max-group 4 --max-module 4",
        "--experiment heisenberg-verify --n 3 --g 1",
        "--experiment obstruction-table --instances all",
        "--experiment symbol-table --p 7 --n 3",
        "--experiment prop28-search --p 7 --n 3",
        "--experiment lang-tate-index --n 2 --g 1",
    ] {
        let c = parse_args(args(line)).unwrap();
        let doc = run(&c).unwrap();
        assert!(doc.all_passed(), "{line}");
        assert!(doc.metadata.timestamp.is_some());
        assert_eq!(ReportDocument::from_json(&doc.to_json().unwrap()).unwrap(), doc, "{line}");
        let csv = doc.to_csv().unwrap();
        assert_eq!(csv.lines().count(), doc.rows.len() + 1);
    }
}

#[test]
fn output_is_deterministic_without_timestamp() {
    let c = parse_args(args("--experiment obstruction-table --no-timestamp")).unwrap();
    let a = run(&c).unwrap();
    let b = run(&c).unwrap();
    assert_eq!(a.metadata.timestamp, None);
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    assert!(!a.to_json().unwrap().contains("timestamp"));
}

#[test]
fn exit_codes_follow_verdicts_and_errors() {
    let meta = Metadata {
        experiment: "symbol-table".into(),
        parameters: Default::default(),
        library_version: thetakit::VERSION.into(),
        timestamp: None,
    };
    let mut doc = ReportDocument {
        metadata: meta,
        columns: vec!["x".into()],
        rows: vec![row([("x", 1)])],
        verdicts: vec![Verdict::new("ok", true, "")],
    };
    assert_eq!(exit_code(&Ok(doc.clone())), 0);
    doc.verdicts.push(Verdict::new("bad", false, ""));
    assert_eq!(exit_code(&Ok(doc)), 1);
    assert_eq!(exit_code(&Err(CliError::Config(ConfigError::MissingExperiment))), 2);
    let guard = thetakit::Error::GuardExceeded { guard: "z2", required: 1, limit: 0 };
    assert_eq!(exit_code(&Err(CliError::Library(guard))), 3);
}

#[test]
fn binary_exit_status() {
    let ok = bin().args(args("--experiment symbol-table --p 7 --n 3").iter().skip(1)).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS  antisymmetric"));
    let bad = bin().args(["--experiment", "heisenberg-verify", "--n", "banana", "--g", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("`n`"));
    let usage = bin().arg("--no-such-flag").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn binary_writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let status = bin()
        .args(["--experiment", "lang-tate-index", "--n", "2", "--g", "1", "--format", "csv", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("g,k,index,expected,scan_index\n"));
}

proptest! {
    #[test]
    fn report_round_trips(
        cells in prop::collection::vec((0u64..1000, "[a-z ,\"]{0,8}", any::<bool>()), 0..6),
        verdicts in prop::collection::vec(("[a-z ]{1,10}", any::<bool>(), "[ -~]{0,12}"), 0..4),
        stamp in prop::option::of(any::<u64>()),
    ) {
        let doc = ReportDocument {
            metadata: Metadata {
                experiment: "lang-tate-index".into(),
                parameters: [("n".to_string(), "3".to_string())].into(),
                library_version: "0.1.0".into(),
                timestamp: stamp,
            },
            columns: vec!["count".into(), "label".into(), "flag".into()],
            rows: cells.iter().map(|(n, s, b)| row([("count", json!(n)), ("label", json!(s)), ("flag", json!(b))])).collect(),
            verdicts: verdicts.iter().map(|(n, p, d)| Verdict::new(n.clone(), *p, d.clone())).collect(),
        };
        let back = ReportDocument::from_json(&doc.to_json().unwrap()).unwrap();
        prop_assert_eq!(&back, &doc);
        let csv = doc.to_csv().unwrap();
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        let parsed: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
        prop_assert_eq!(parsed.len(), cells.len());
        for (rec, (n, s, b)) in parsed.iter().zip(&cells) {
            prop_assert_eq!(rec[0].to_string(), n.to_string());
            prop_assert_eq!(&rec[1], s.as_str());
            prop_assert_eq!(rec[2].to_string(), b.to_string());
        }
    }
}
