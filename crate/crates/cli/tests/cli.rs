use std::path::{Path, PathBuf};
use std::process::Command as Proc;

use proptest::prelude::*;
use serde_json::Value;

use qav_cli::input::{document_for, parse_str, to_json, CoverSpec};
use qav_cli::{exit_code, parse_input, run, Command, Flags};
use qav_core::arrangement::Mode;
use qav_core::fixtures;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn analyze(name: &str) -> Value {
    let doc = parse_input(&fixture(name)).unwrap();
    serde_json::from_str(&run(&Command::Analyze, &doc, Flags::default()).unwrap().to_json()).unwrap()
}

#[test]
fn parses_ceva_over_q() {
    let doc = parse_input(&fixture("ceva")).unwrap();
    assert_eq!(doc.curve.mode, Mode::Lines);
    assert_eq!(doc.curve.lines.len(), 6);
    assert_eq!(doc.curve.field.degree(), 1);
}

#[test]
fn parses_dual_hesse_over_eisenstein_field() {
    let doc = parse_input(&fixture("dual_hesse")).unwrap();
    assert_eq!(doc.curve.lines.len(), 9);
    let mp: Vec<i64> = doc.curve.field.minpoly().iter().map(|x| x.try_into().unwrap()).collect();
    assert_eq!(mp, [1, 1, 1]);
}

#[test]
fn fixture_files_match_library_fixtures() {
    let pairs = [
        ("triangle", fixtures::triangle()),
        ("four_lines", fixtures::four_lines()),
        ("ceva", fixtures::ceva()),
        ("dual_hesse", fixtures::dual_hesse()),
        ("hesse", fixtures::hesse()),
        ("six_cusps_on_conic", fixtures::six_cusps_on_conic()),
        ("six_generic_cusps", fixtures::six_generic_cusps()),
    ];
    for (name, curve) in pairs {
        let doc = parse_input(&fixture(name)).unwrap();
        let want = document_for(curve);
        assert_eq!(doc.curve.lines, want.curve.lines, "{name}");
        assert_eq!(doc.curve.degrees, want.curve.degrees, "{name}");
        assert_eq!(doc.curve.singular_points, want.curve.singular_points, "{name}");
    }
}

#[test]
fn zero_line_is_rejected_with_path() {
    let text = r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"lines",
        "lines":[[["1"],["0"],["0"]],[["0"],["0"],["0"]]]}"#;
    let e = parse_str(text).unwrap_err();
    assert!(e.to_string().contains("lines[1]"), "{e}");
    assert_eq!(exit_code(&e), 2);
}

#[test]
fn schema_errors_carry_field_paths() {
    let cases = [
        (r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"lines","lines":[[["1/0"],["0"],["1"]]]}"#, "lines[0][0][0]"),
        (r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"lines","lines":[[["1", "2"],["0"],["1"]]]}"#, "lines[0][0]"),
        (r#"{"field":{"generator":"a","minpoly":["1","0","1"]},"mode":"lines","lines":[[["1"],["0"],["1"]]],"extra":1}"#, "$"),
        (r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"components","components":[{"degree":3}],
            "singular_points":[{"x":["0"],"y":["0"],"kind":{"type":"a5"},"branches":[0]}]}"#, "singular_points[0].kind"),
        (r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"lines","lines":[[["1"],["0"],["1"]]],
            "covers":[{"orders":[2,2]}]}"#, "covers[0].orders"),
    ];
    for (text, path) in cases {
        let e = parse_str(text).unwrap_err();
        assert!(e.to_string().contains(path) || path == "$", "{e} should mention {path}");
        assert_eq!(exit_code(&e), 2, "{e}");
    }
    // a reducible minimal polynomial is a field error, reported at `field`
    let e = parse_str(r#"{"field":{"generator":"a","minpoly":["-4","0","1"]},"mode":"lines","lines":[[["1"],["0"],["1"]]]}"#)
        .unwrap_err();
    assert!(e.to_string().contains("field"), "{e}");
}

#[test]
fn line_at_infinity_is_unsupported() {
    let text = r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"lines","lines":[[["0"],["0"],["1"]],[["1"],["0"],["0"]]]}"#;
    assert_eq!(exit_code(&parse_str(text).unwrap_err()), 3);
}

#[test]
fn fixtures_round_trip() {
    for name in ["triangle", "four_lines", "ceva", "dual_hesse", "hesse", "six_cusps_on_conic", "six_generic_cusps"] {
        let doc = parse_input(&fixture(name)).unwrap();
        let text = to_json(&doc);
        let again = parse_str(&text).unwrap();
        assert_eq!(doc, again, "{name}");
        assert_eq!(to_json(&again), text, "{name}");
        // the files themselves are in canonical form
        assert_eq!(std::fs::read_to_string(fixture(name)).unwrap().trim_end(), text, "{name}");
    }
}

#[test]
fn custom_local_type_round_trips() {
    let text = r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"components",
        "components":[{"degree":2},{"degree":2}],
        "singular_points":[{"x":["0"],"y":["0"],"branches":[0,1],
            "kind":{"type":"custom","faces":[{"equations":[["1","1","1/2"]],"exponent":1}]}}]}"#;
    let doc = parse_str(text).unwrap();
    assert_eq!(parse_str(&to_json(&doc)).unwrap(), doc);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_arrangements_round_trip(seed in any::<u64>()) {
        let mut doc = document_for(fixtures::random_arrangement(seed, 8));
        let r = doc.curve.rank() as u64;
        doc.covers = vec![CoverSpec { orders: (2..2 + r).collect(), quotient: None }];
        let again = parse_str(&to_json(&doc)).unwrap();
        prop_assert_eq!(&doc, &again);
        prop_assert_eq!(to_json(&doc), to_json(&again));
    }
}

#[test]
fn analyze_ceva() {
    let r = analyze("ceva");
    let cs = r["components"].as_array().unwrap();
    assert_eq!(cs.len(), 5);
    assert_eq!(cs.iter().filter(|c| c["essential"] == true).count(), 1);
    let e = cs.iter().find(|c| c["essential"] == true).unwrap();
    assert_eq!((e["dimension"].as_u64(), e["depth"].as_u64(), e["face_order"].as_u64()), (Some(2), Some(1), Some(2)));
    assert_eq!(r["milnor"]["b1"], 7);
    assert_eq!(r["resonance"]["cross_check"]["pass"], true);
    assert_eq!(r["covers"][0]["irregularity"], 30);
    assert_eq!(r["schema"], 1);
}

#[test]
fn covers_on_four_lines() {
    let doc = parse_input(&fixture("four_lines")).unwrap();
    let cmd = Command::Covers(Some(CoverSpec { orders: vec![3; 4], quotient: None }));
    let r: Value = serde_json::from_str(&run(&cmd, &doc, Flags::default()).unwrap().to_json()).unwrap();
    assert_eq!(r["covers"][0]["irregularity"], 10);
    assert_eq!(r["covers"][0]["b1_branched"], 20);
    // the document's own list: n = 2..5
    let r: Value = serde_json::from_str(&run(&Command::Covers(None), &doc, Flags::default()).unwrap().to_json()).unwrap();
    let q: Vec<i64> = r["covers"].as_array().unwrap().iter().map(|c| c["irregularity"].as_i64().unwrap()).collect();
    assert_eq!(q, (2..=5).map(|n| (n - 1) * (n * n - n - 1)).collect::<Vec<_>>());
}

#[test]
fn milnor_on_ceva() {
    let doc = parse_input(&fixture("ceva")).unwrap();
    let r = run(&Command::Milnor, &doc, Flags::default()).unwrap();
    assert_eq!(r.milnor.unwrap().b1, 7);
}

#[test]
fn superabundance_of_cusps() {
    for (name, h1) in [("six_cusps_on_conic", 1), ("six_generic_cusps", 0)] {
        let doc = parse_input(&fixture(name)).unwrap();
        let r = run(&Command::Superabundance { degree: 2, scheme: None }, &doc, Flags::default()).unwrap();
        assert_eq!(r.superabundance.unwrap().h1, h1, "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["ceva", "four_lines", "triangle"] {
        let doc = parse_input(&fixture(name)).unwrap();
        for cmd in [Command::Analyze, Command::Faces, Command::Resonance, Command::Milnor] {
            let a = run(&cmd, &doc, Flags { fast: false, seed: 7 }).unwrap().to_json();
            let b = run(&cmd, &doc, Flags { fast: false, seed: 7 }).unwrap().to_json();
            assert_eq!(a, b, "{name} {cmd:?}");
        }
    }
}

fn qav(args: &[&str]) -> (i32, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_qav")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_writes_identical_reports_and_exit_codes() {
    let dir = std::env::temp_dir().join(format!("qav-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ceva = fixture("ceva");
    let ceva = ceva.to_str().unwrap();
    let outs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let p = dir.join(format!("r{i}.json"));
            let (code, _) = qav(&["analyze", ceva, "--seed", "3", "--json", p.to_str().unwrap()]);
            assert_eq!(code, 0);
            std::fs::read(p).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);

    let (code, text) = qav(&["covers", fixture("four_lines").to_str().unwrap(), "--orders", "3,3,3,3"]);
    assert_eq!(code, 0);
    assert!(text.contains("irregularity 10"), "{text}");

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"field":{"generator":"a","minpoly":["0","1"]},"mode":"lines","lines":[[["0"],["0"],["0"]]]}"#).unwrap();
    assert_eq!(qav(&["faces", bad.to_str().unwrap()]).0, 2);
    assert_eq!(qav(&["resonance", fixture("six_cusps_on_conic").to_str().unwrap()]).0, 3);
    assert_eq!(qav(&["superabundance", ceva, "--degree", "-3"]).0, 3);
    assert_eq!(qav(&["faces", dir.join("missing.json").to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
