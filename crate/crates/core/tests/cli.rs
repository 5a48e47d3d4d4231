use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flagcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagcodes"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn construct_and_verify(dir: &Path, name: &str, args: &[&str]) -> (Value, Value) {
    let path = dir.join(name);
    let path = path.to_str().unwrap();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path]);
    let built = flagcodes(&full);
    assert_eq!(
        built.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&built.stderr)
    );
    let checked = flagcodes(&["verify", path]);
    assert_eq!(
        checked.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&checked.stderr)
    );
    (json(&built), json(&checked))
}

#[test]
fn spread_type_orbit_of_size_28() {
    let dir = tempfile::tempdir().unwrap();
    let (summary, report) = construct_and_verify(
        dir.path(),
        "st.flagcode",
        &[
            "spread-type",
            "--p",
            "3",
            "--e",
            "1",
            "--k",
            "3",
            "--s",
            "2",
            "--t",
            "56",
        ],
    );
    assert_eq!(summary["size"], 28);
    assert_eq!(summary["is_odfc"], true);
    assert_eq!(report["size"], 28);
    assert_eq!(report["odfc_by_definition"], true);
    assert_eq!(report["agree"], true);
    assert_eq!(report["distance"], summary["bound"]);
}

#[test]
fn full_type_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let (summary, report) = construct_and_verify(
        dir.path(),
        "ft.flagcode",
        &["full-type", "--p", "2", "--e", "1", "--k", "2", "--max-size"],
    );
    assert_eq!(summary["size"], 9);
    assert_eq!(summary["distance"], 12);
    assert_eq!(report["disjoint"], true);
    assert_eq!(report["index_a"], 2);
    assert_eq!(report["index_b"], 3);
    assert_eq!(report["odfc_by_characterization"], true);
    assert_eq!(report["agree"], true);
}

#[test]
fn every_construct_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["spread-type", "--p", "2", "--k", "2", "--s", "2", "--t", "5"],
        &[
            "spread-type",
            "--p",
            "2",
            "--e",
            "2",
            "--q",
            "4",
            "--k",
            "2",
            "--s",
            "2",
            "--t",
            "51",
            "--max-size",
        ],
        &[
            "spread-type",
            "--p",
            "3",
            "--k",
            "3",
            "--s",
            "2",
            "--t",
            "28",
            "--max-size",
        ],
        &["full-type", "--p", "3", "--k", "2"],
        &["full-type", "--p", "2", "--k", "3", "--max-size"],
        &["full-type", "--p", "2", "--k", "1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let (summary, report) = construct_and_verify(dir.path(), &format!("c{i}.flagcode"), args);
        assert_eq!(report["size"], summary["size"], "{args:?}");
        assert_eq!(report["odfc_by_definition"], summary["is_odfc"], "{args:?}");
        assert_eq!(report["agree"], true, "{args:?}");
    }
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.flagcode");
    let b = dir.path().join("b.flagcode");
    for p in [&a, &b] {
        let out = flagcodes(&[
            "construct",
            "spread-type",
            "--p",
            "3",
            "--k",
            "3",
            "--s",
            "2",
            "--t",
            "14",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let parsed = flagcodes::cli::codefile::CodeFile::parse(&text).unwrap();
    assert_eq!(parsed.to_text(), text);
    assert!(text.starts_with("FLAGCODE v1\nfield p=3 e=1 tower=3,2\nambient n=6\ntype 1,2,3,4,5\ncount 7\n"));
}

#[test]
fn spread_files() {
    let dir = tempfile::tempdir().unwrap();
    for (flag, dim) in [("", 2), ("--hyperplanes", 4)] {
        let path = dir.path().join(format!("s{dim}.subcode"));
        let mut args = vec![
            "spread",
            "--p",
            "2",
            "--k",
            "2",
            "--s",
            "3",
            "--out",
            path.to_str().unwrap(),
        ];
        if !flag.is_empty() {
            args.push(flag);
        }
        let out = flagcodes(&args);
        assert!(out.status.success());
        assert_eq!(json(&out)["size"], 21);
        assert_eq!(json(&out)["is_spread"], dim == 2);
        let report = json(&flagcodes(&["verify", path.to_str().unwrap()]));
        assert_eq!(report["dim"], dim);
        assert_eq!(report["size"], 21);
        assert_eq!(report["is_spread"], dim == 2);
        assert_eq!(report["distance"], 4);
    }
}

#[test]
fn tables() {
    let out = flagcodes(&["table", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<u64>> = text
        .lines()
        .skip(1)
        .map_while(|l| {
            l.split_whitespace()
                .map(|x| x.parse().ok())
                .collect::<Option<Vec<u64>>>()
        })
        .collect();
    assert!(rows.contains(&vec![14, 7, 4]));
    assert!(rows.contains(&vec![1, 1, 28]));
    let out = flagcodes(&["table", "2"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("     219           73       57"));
}

#[test]
fn exit_codes() {
    let out = flagcodes(&[
        "construct",
        "spread-type",
        "--p",
        "3",
        "--k",
        "3",
        "--s",
        "2",
        "--t",
        "13",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd(t, q^k-1) = gcd(t, q-1)"));
    assert_eq!(
        flagcodes(&["spread", "--p", "2", "--k", "2", "--s", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        flagcodes(&["construct", "full-type", "--p", "4", "--k", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(flagcodes(&["verify", "/definitely/missing"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.flagcode");
    std::fs::write(
        &bad,
        "FLAGCODE v1\nfield p=2 e=1\nambient n=4\ntype 1,2\ncount 1\nflag\nsubspace k=1\n1 0 0\n",
    )
    .unwrap();
    let out = flagcodes(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 8"));
}

#[test]
fn fixture_counterexample() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/three_flags_type_2_3.flagcode"
    );
    let report = json(&flagcodes(&["verify", path]));
    assert_eq!(report["projected"][0]["distance"], 2);
    assert_eq!(report["projected"][1]["distance"], 6);
    assert_eq!(report["projected"][1]["size"], 2);
    assert_eq!(report["disjoint"], false);
    assert_eq!(report["odfc_by_definition"], false);
    assert_eq!(report["odfc_by_characterization"], false);
}
