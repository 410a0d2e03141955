mod common;

use common::{data, igmax, json, structured};
use serde_json::Value;
use tempfile::TempDir;

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    std::fs::write(&p, text).unwrap();
    p
}

fn error_of(out: &str) -> Value {
    let v = json(out);
    assert_eq!(v["format"], "igmax-error");
    assert_eq!(v["version"], 1);
    v["error"].clone()
}

#[test]
fn rectband_ranks() {
    for (rows, cols, rank) in [(3, 4, 6), (1, 5, 0), (4, 4, 9), (2, 2, 1)] {
        let (code, out) = structured(&["rectband", &rows.to_string(), &cols.to_string()]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["stages"]["freeness"]["generators"], rank);
        assert_eq!(v["stages"]["freeness"]["relations"], 0);
    }
}

#[test]
fn simplify_stage_on_dumped_band_presentation() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "band.txt");
    let out = igmax(&["rectband", "3", "4", "--dump-presentation", &p]);
    assert!(out.status.success());
    let (code, out) = structured(&["simplify", &p]);
    assert_eq!(code, 0);
    let v = json(&out);
    let s = &v["stages"]["simplified"]["presentation"];
    assert_eq!(s["generators"].as_array().unwrap().len(), 6);
    assert!(s["relations"].as_array().unwrap().is_empty());
}

#[test]
fn squares_stage_matches_fused_pipeline() {
    let dir = TempDir::new().unwrap();
    let dump = path(&dir, "s.json");
    let (code, fused) = structured(&[
        "construct2",
        data("k4.json").to_str().unwrap(),
        "--dump-semigroup",
        &dump,
    ]);
    assert_eq!(code, 0);
    let (code, staged) = structured(&["squares", &dump]);
    assert_eq!(code, 0);
    let fused = json(&fused);
    let staged = json(&staged);
    assert_eq!(fused["stages"]["squares"], staged["stages"]["squares"]);
    let hit = staged["stages"]["squares"]["list"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| {
            (
                s["i"].as_u64(),
                s["k"].as_u64(),
                s["j"].as_u64(),
                s["l"].as_u64(),
            ) == (Some(1), Some(2), Some(6), Some(5))
        })
        .expect("square (1,2;6,5)")
        .clone();
    assert_eq!(hit["witness_name"], "sigma_1");
}

#[test]
fn construct1_squares_round_trip() {
    let dir = TempDir::new().unwrap();
    let dump = path(&dir, "s.json");
    let (_, fused) = structured(&[
        "construct1",
        data("c2_identity.txt").to_str().unwrap(),
        "--dump-semigroup",
        &dump,
    ]);
    let (_, staged) = structured(&["squares", &dump]);
    assert_eq!(
        json(&fused)["stages"]["squares"],
        json(&staged)["stages"]["squares"]
    );
}

#[test]
fn verify_stage_passes_and_catches_tampering() {
    let dir = TempDir::new().unwrap();
    let dump = path(&dir, "v.json");
    let out = igmax(&[
        "construct2",
        data("k4.json").to_str().unwrap(),
        "--dump-verify",
        &dump,
    ]);
    assert!(out.status.success());
    let (code, out) = structured(&["verify", &dump]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["verdict"], "pass");

    let text = std::fs::read_to_string(&dump).unwrap();
    let tampered = write(&dir, "t.json", &text.replace("b a = c", "b a = 1"));
    let (code, out) = structured(&["verify", &tampered]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(
        v["stages"]["verification"]["completeness"]["missing"],
        serde_json::json!(["b a = c"])
    );
}

#[test]
fn verify_stage_for_infinite_input() {
    let dir = TempDir::new().unwrap();
    let dump = path(&dir, "v.json");
    let out = igmax(&[
        "construct1",
        data("klein.txt").to_str().unwrap(),
        "--dump-verify",
        &dump,
    ]);
    assert!(out.status.success());
    let (code, out) = structured(&["verify", &dump]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdict"], "pass-with-abelianization");
}

#[test]
fn stage_documents_are_versioned() {
    let dir = TempDir::new().unwrap();
    let dump = path(&dir, "s.json");
    igmax(&[
        "construct2",
        data("c4.json").to_str().unwrap(),
        "--dump-semigroup",
        &dump,
    ]);
    let (code, out) = structured(&["verify", &dump]);
    assert_eq!(code, 2);
    assert_eq!(error_of(&out)["kind"], "format-error");

    let text = std::fs::read_to_string(&dump).unwrap();
    let bumped = write(
        &dir,
        "b.json",
        &text.replacen("\"version\": 1", "\"version\": 7", 1),
    );
    let (code, out) = structured(&["squares", &bumped]);
    assert_eq!(code, 2);
    assert!(error_of(&out)["message"]
        .as_str()
        .unwrap()
        .contains("version 7"));

    let extra = write(&dir, "e.json", &text.replacen("{", "{\n  \"extra\": 1,", 1));
    let (code, _) = structured(&["squares", &extra]);
    assert_eq!(code, 2);
}

#[test]
fn parse_error_reports_position() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "generators: a\na^2 = 1\n");
    let (code, out) = structured(&["construct1", &p]);
    assert_eq!(code, 2);
    let e = error_of(&out);
    assert_eq!(e["kind"], "parse-error");
    assert_eq!(e["stage"], "input");
    assert!(e["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn relation_free_input_is_unsupported() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "generators: a b\n");
    let (code, out) = structured(&["construct1", &p]);
    assert_eq!(code, 2);
    assert_eq!(error_of(&out)["kind"], "unsupported-input");
}

#[test]
fn non_group_table_names_the_axiom() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "t.json",
        r#"{"elements":["1","a","b"],"table":[[1,2,3],[2,3,1],[3,1,1]]}"#,
    );
    let (code, out) = structured(&["construct2", &p]);
    assert_eq!(code, 2);
    let e = error_of(&out);
    assert_eq!(e["kind"], "validation-error");
    assert!(e["message"].as_str().unwrap().contains("associativity"));

    let text = igmax(&["construct2", &p]);
    assert_eq!(text.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&text.stderr).contains("associativity fails at"));
}

#[test]
fn closure_cap_exits_with_resource_code() {
    let (code, out) = structured(&[
        "--closure-cap",
        "20",
        "construct2",
        data("k4.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    assert_eq!(error_of(&out)["kind"], "capacity-exceeded");
}

#[test]
fn coset_cap_makes_finite_check_inconclusive() {
    let (code, out) = structured(&[
        "--coset-cap",
        "1",
        "construct1",
        data("c3_identity.txt").to_str().unwrap(),
    ]);
    let v = json(&out);
    assert_eq!(code, 3);
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(
        v["stages"]["verification"]["abelian"]["computed"],
        serde_json::json!([3])
    );
}

#[test]
fn bad_flags_are_usage_errors() {
    let (code, out) = structured(&["--coset-cap", "0", "rectband", "2", "2"]);
    assert_eq!(code, 2);
    assert_eq!(error_of(&out)["kind"], "usage-error");
    let out = igmax(&["rectband", "x", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, out) = structured(&["construct2", "/nonexistent/table.json"]);
    assert_eq!(code, 2);
    assert_eq!(error_of(&out)["kind"], "io-error");
}

#[test]
fn out_flag_writes_the_document() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "r.json");
    let out = igmax(&["--format", "structured", "--out", &p, "rectband", "2", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v = json(&std::fs::read_to_string(&p).unwrap());
    assert_eq!(v["stages"]["freeness"]["generators"], 2);
}

#[test]
fn text_output_for_finite_construct1() {
    let out = igmax(&["construct1", data("c2_identity.txt").to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: expected 2, enumerated 2"), "{text}");
    assert!(text.contains("verdict: pass"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["construct2", "k4.json"],
        vec!["construct1", "c3_identity.txt"],
    ] {
        let file = data(args[1]);
        let a = structured(&[args[0], file.to_str().unwrap()]);
        let b = structured(&[args[0], file.to_str().unwrap()]);
        assert_eq!(a, b);
    }
}
