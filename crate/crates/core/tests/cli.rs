use std::path::PathBuf;
use std::process::Command;

use catoms::cli::{run, Outcome};

fn program(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/programs");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("catoms").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?} failed: {}", out.stderr);
    out.stdout
}

#[test]
fn answersets_in_both_modes() {
    let p3 = program("p3.cat");
    assert_eq!(
        ok(&["answersets", &p3]),
        "reduct:\n{p}\n{q}\ncomplement:\n{p}\n{q}\n"
    );
    let p6 = program("p6.cat");
    assert_eq!(ok(&["answersets", &p6, "--mode", "reduct"]), "{a,b,c}\n");
    assert_eq!(ok(&["answersets", &p6, "--mode", "complement"]), "(none)\n");
}

#[test]
fn general_programs_are_routed_to_the_instance_check() {
    assert_eq!(
        ok(&["answersets", &program("p9.cat"), "--mode", "reduct"]),
        "{a}\n{b,c}\n{a,b,c}\n"
    );
    assert_eq!(
        ok(&["answersets", &program("p8.cat"), "--mode", "complement"]),
        "{a}\n{b}\n"
    );
}

#[test]
fn check_rejects_without_failing() {
    let p9 = program("p9.cat");
    assert_eq!(
        ok(&["check", &p9, "--model", "a,c", "--mode", "reduct"]),
        "reject\n"
    );
    assert_eq!(ok(&["check", &p9, "--model", "{b,c}"]), "accept\n");
    let p1 = program("p1.cat");
    assert_eq!(ok(&["check", &p1, "--model", "p(a),p(b)"]), "accept\n");
}

#[test]
fn exit_codes() {
    let p4 = program("p4.cat");
    let out = cli(&["altsem", &p4, "--semantics", "mt"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("not monotone"));

    assert_eq!(cli(&["--cap", "2", "answersets", &p4]).code, 3);
    assert_eq!(cli(&["check", &p4, "--model", "zz"]).code, 1);
    assert_eq!(cli(&["answersets", &program("missing.cat")]).code, 1);
    assert_eq!(cli(&["frobnicate"]).code, 1);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn unfold_complements_naf_first() {
    let out = cli(&["unfold", &program("p5.cat")]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "a.\nc :- not a, not b.\nc :- a, not b.\nc :- b, not a.\n"
    );
    assert!(out.stderr.contains("complement"));
    assert_eq!(ok(&["unfold", &program("p3.cat"), "--solve"]), "{p}\n{q}\n");
    assert_eq!(cli(&["unfold", &program("p8.cat")]).code, 2);
    let p5 = program("p5.cat");
    assert_eq!(ok(&["unfold", &p5, "--model", "a,c"]), "accept\n");
    assert_eq!(
        ok(&["unfold", &p5, "--model", "a,b", "--mode", "both"]),
        "reduct:\nreject\ncomplement:\nreject\n"
    );
    assert_eq!(
        ok(&["unfold", &program("p9.cat"), "--model", "b,c"]),
        "accept\n"
    );
}

#[test]
fn wellsupported_prints_a_witness() {
    let p6 = program("p6.cat");
    assert_eq!(
        ok(&["wellsupported", &p6, "--model", "a,b,c", "--kind", "weak"]),
        "a:2,b:3,c:1\n"
    );
    assert_eq!(
        ok(&[
            "wellsupported",
            &p6,
            "--model",
            "a,b,c",
            "--kind",
            "weak",
            "--method",
            "brute"
        ]),
        "a:2,b:3,c:1\n"
    );
    assert_eq!(
        ok(&["wellsupported", &p6, "--model", "a,b,c", "--kind", "strong"]),
        "(none)\n"
    );
}

#[test]
fn compare_reports_every_column() {
    assert_eq!(
        ok(&["compare", &program("p4.cat")]),
        "ours-reduct: {c}\nours-complement: {c}\nmr: {c} {a,c}\nmt: unsupported (program is not monotone)\nflp: {c}\npelov: {c}\nfindings: (none)\n"
    );
}

#[test]
fn json_envelope() {
    let text = ok(&[
        "--json",
        "answersets",
        &program("p3.cat"),
        "--mode",
        "reduct",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "limits", "program_hash", "results"]);
    assert_eq!(v["command"], "answersets");
    assert_eq!(v["results"]["reduct"], serde_json::json!([["p"], ["q"]]));
    assert_eq!(v["program_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn workers_do_not_change_output() {
    let p1 = program("p1_naf.cat");
    for args in [
        vec!["compare", p1.as_str()],
        vec![
            "fuzz", "--count", "40", "--seed", "9", "--naf", "--atoms", "5",
        ],
        vec![
            "--json",
            "fuzz",
            "--count",
            "20",
            "--seed",
            "3",
            "--general",
        ],
    ] {
        let one: Vec<&str> = ["--workers", "1"]
            .into_iter()
            .chain(args.iter().copied())
            .collect();
        let many: Vec<&str> = ["--workers", "4"]
            .into_iter()
            .chain(args.iter().copied())
            .collect();
        assert_eq!(ok(&one), ok(&many), "{args:?}");
    }
}

#[test]
fn binary_exit_status() {
    let status = Command::new(env!("CARGO_BIN_EXE_catoms"))
        .args(["altsem", &program("p4.cat"), "--semantics", "mt"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_catoms"))
        .args([
            "answersets",
            &program("choice_normal.cat"),
            "--mode",
            "reduct",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{p}\n{q}\n");
}
