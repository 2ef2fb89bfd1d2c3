use std::path::PathBuf;
use std::process::Command;

use nearsemi::cli::run;
use nearsemi::format;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn nearsemi(args: &[&str]) -> (String, i32) {
    run(std::iter::once("nearsemi").chain(args.iter().copied()))
}

#[test]
fn ideals_of_l3() {
    let (out, code) = nearsemi(&["ideals", &data("l3.alg")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("count = 2\nI0 = {0}\nI1 = {0, h[1], 1[2]}\n"));
    assert!(out.contains("## lattice\nI0 < I1\n"));
    assert!(out.ends_with("RESULT PASS checks=10 failed=0\n"));
}

#[test]
fn claims_on_l3_disagree() {
    let (out, code) = nearsemi(&["claims", &data("l3.alg")]);
    assert_eq!(code, 1);
    let disagreements: Vec<&str> = out.lines().filter(|l| l.starts_with("DISAGREE")).collect();
    assert_eq!(
        disagreements,
        [
            "DISAGREE claim:semiring-ideal {0, h[1]} :: conditions (i)-(iii) hold, is_ideal false: (I1) a=1[2] b=h[1] (a*b'=h[1] in S, b in S, a not in S)",
            "DISAGREE claim:principal-ideal h[1] :: computed {0, h[1]} vs oracle {0, h[1], 1[2]}",
        ]
    );
}

#[test]
fn check_classes() {
    let (out, code) = nearsemi(&["check", &data("b2.alg"), "--class", "luk-rs"]);
    assert_eq!(code, 0, "{out}");
    let (out, code) = nearsemi(&["check", &data("g3.alg"), "--class", "luk-nrs"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL axiom:vii :: x=1[2] y=h[1] (lhs=h[1], rhs=0)\n"));
    let (out, code) = nearsemi(&["check", &data("g3.alg")]);
    assert_eq!(code, 1, "derived identities fail on G3");
    assert!(out.contains("## axioms inrs\n"));
    let (_, code) = nearsemi(&["check", &data("mv-l4.alg")]);
    assert_eq!(code, 0);
}

#[test]
fn every_failure_has_a_witness() {
    for (args, _) in [
        (
            vec![
                "check".to_string(),
                data("g3.alg"),
                "--class".into(),
                "luk-rs".into(),
            ],
            1,
        ),
        (vec!["claims".to_string(), data("l3.alg")], 1),
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (out, _) = nearsemi(&args);
        for line in out.lines() {
            if line.starts_with("FAIL ") || line.starts_with("DISAGREE ") {
                assert!(line.contains(" :: "), "{line}");
            }
        }
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(
        &bad,
        "size = 2\nzero = 0\none = 1\nplus = [[0, 1],\n  [1, 1, 1]]\ntimes = [[0, 0], [0, 1]]\nalpha = [1, 0]\n",
    )
    .unwrap();
    let (out, code) = nearsemi(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("bad.alg:5:3: "), "{out}");
    assert!(out.contains("`plus` row 1 has 3 entries, expected 2"));

    let (out, code) = nearsemi(&["decompose", &data("l3.alg"), "--element", "q"]);
    assert_eq!((out.as_str(), code), ("error: unknown element `q`\n", 2));
    let (out, code) = nearsemi(&["decompose", &data("l3.alg"), "--element", "7"]);
    assert_eq!(code, 2);
    assert!(out.contains("element 7 is outside the universe of size 3"));
    let (out, code) = nearsemi(&["decompose", &data("l3.alg"), "--element", "h"]);
    assert_eq!(code, 2);
    assert!(out.contains("is not central"));
    let (out, code) = nearsemi(&["ideals", &data("l4.alg"), "--max-size", "3"]);
    assert_eq!(code, 2);
    assert!(out.contains("size 4 exceeds the configured maximum 3"));
    let (out, code) = nearsemi(&["ideals", &data("g3.alg")]);
    assert_eq!(code, 2);
    assert!(out.contains("input is not a luk-nrs"));
    let (_, code) = nearsemi(&["cb", &data("b2.alg"), &data("b2.alg")]);
    assert_eq!(code, 2);
}

#[test]
fn elements_by_name_or_index() {
    let by_name = nearsemi(&["principal-ideal", &data("b2xl3.alg"), "--element", "(0,h)"]);
    let by_index = nearsemi(&["principal-ideal", &data("b2xl3.alg"), "--element", "1"]);
    assert_eq!(by_name.1, 0);
    assert_eq!(
        by_name.0.lines().skip(1).collect::<Vec<_>>(),
        by_index.0.lines().skip(1).collect::<Vec<_>>()
    );
}

#[test]
fn decompositions() {
    let (out, code) = nearsemi(&["decompose", &data("b2xl3.alg"), "--element", "(1,0)"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(1,h)[4] -> ((1,0)[3], (0,h)[1])\n"));
    let (out, code) = nearsemi(&["decompose", &data("b2xl3.alg"), "--parts", "(1,0),(0,1)"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS partition:isomorphism\n"));
    let (out, code) = nearsemi(&["decompose", &data("b2xl3.alg"), "--parts", "(1,0),(1,1)"]);
    assert_eq!(code, 2);
    assert!(out.contains("overlap"), "{out}");
    let (out, code) = nearsemi(&["decompose", &data("b2xl3.alg"), "--parts", "(1,0)"]);
    assert_eq!(code, 2);
    assert!(out.contains("join"), "{out}");
}

#[test]
fn center_report_passes_on_corpus() {
    for f in [
        "l3.alg",
        "b2xb2.alg",
        "b2xl3.alg",
        "l4.alg",
        "g3.alg",
        "trivial.alg",
    ] {
        let (out, code) = nearsemi(&["center", &data(f)]);
        assert_eq!(code, 0, "{f}: {out}");
    }
    let (out, _) = nearsemi(&["center", &data("b2xb2.alg")]);
    assert!(out.contains("Ce = [(0,0)[0], (0,1)[1], (1,0)[2], (1,1)[3]]\n"));
}

#[test]
fn cb_instances() {
    let (out, code) = nearsemi(&[
        "cb",
        &data("b2xl3.alg"),
        &data("l3xb2.alg"),
        "--gamma",
        &data("swap23.map"),
        "--beta",
        &data("swap32.map"),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS cb:isomorphism\n"));
    let (out, code) = nearsemi(&[
        "cb",
        &data("b2xb2.alg"),
        &data("b2xb2.alg"),
        "--gamma",
        &data("swap22.map"),
        "--beta",
        &data("id4.map"),
        "--a",
        "3",
        "--b",
        "(1,1)",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(0,1)[1] -> (1,0)[2]\n"));
    let (out, code) = nearsemi(&["cb", &data("b2.alg"), &data("l3.alg"), "--search"]);
    assert_eq!(code, 0);
    assert!(out.contains("no qualifying pair exists\n"));
    let (out, code) = nearsemi(&["cb", &data("l3.alg"), &data("l3.alg"), "--search"]);
    assert_eq!(code, 0);
    assert!(out.contains("instance found: a=1[2] b=1[2]\n"));
    let (out, code) = nearsemi(&[
        "cb",
        &data("b2xb2.alg"),
        &data("b2xb2.alg"),
        "--gamma",
        &data("id2.map"),
        "--beta",
        &data("id4.map"),
    ]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn mv_translation_files() {
    let dir = tempfile::tempdir().unwrap();
    let mv_path = dir.path().join("l4.mv");
    let (out, code) = nearsemi(&["to-mv", &data("l4.alg"), "--out", mv_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let written = std::fs::read_to_string(&mv_path).unwrap();
    assert_eq!(written, std::fs::read_to_string(data("mv-l4.alg")).unwrap());
    let back = dir.path().join("l4.alg");
    let (_, code) = nearsemi(&[
        "from-mv",
        mv_path.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read_to_string(&back).unwrap(),
        std::fs::read_to_string(data("l4.alg")).unwrap()
    );
    for f in ["l3.alg", "mv-b2xl3.alg", "b2.alg"] {
        let (out, code) = nearsemi(&["roundtrip", &data(f)]);
        assert_eq!(code, 0, "{out}");
    }
    let (_, code) = nearsemi(&["to-mv", &data("g3.alg")]);
    assert_eq!(code, 2);
    let (_, code) = nearsemi(&["from-mv", &data("l3.alg")]);
    assert_eq!(code, 2);
}

#[test]
fn dot_exports() {
    let (out, code) = nearsemi(&["dot", &data("l3.alg"), "--lattice", "id"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("[label=").count(), 2);
    assert_eq!(out.matches(" -> ").count(), 1);
    let (out, _) = nearsemi(&["dot", &data("b2xb2.alg"), "--lattice", "ce"]);
    assert_eq!(out.matches("[label=").count(), 4);
    assert_eq!(out.matches(" -> ").count(), 4);
    let (out, _) = nearsemi(&["dot", &data("trivial.alg"), "--lattice", "id"]);
    assert_eq!(out.matches("[label=").count(), 1);
    assert_eq!(out.matches(" -> ").count(), 0);
    let (out, _) = nearsemi(&["dot", &data("b2xl3.alg"), "--lattice", "con"]);
    assert_eq!(out.matches("[label=").count(), 4);
}

#[test]
fn enumerate_exports_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (out, code) = nearsemi(&["enumerate", "--size", "4", "--class", "inrs", "--out", d]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("models = 30\n"));
    let mut files: Vec<_> = std::fs::read_dir(d)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 30);
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        let (class, alg) = format::parse_algebra(&text).unwrap();
        assert_eq!(format::serialize_algebra(class, &alg), text);
        let stem = f.file_stem().unwrap().to_str().unwrap();
        assert_eq!(nearsemi::search::canonical_form(&alg).hash_hex(), stem);
    }

    let capped = tempfile::tempdir().unwrap();
    let c = capped.path().to_str().unwrap();
    let mut args = vec![
        "enumerate",
        "--size",
        "4",
        "--class",
        "inrs",
        "--out",
        c,
        "--max-results",
        "3",
    ];
    let (out, code) = nearsemi(&args);
    assert_eq!(code, 2);
    let token = out
        .lines()
        .last()
        .and_then(|l| l.split("--resume ").nth(1))
        .map(|t| t.trim_end_matches('`').to_string())
        .expect("resume hint");
    let mut rounds = 0;
    let mut token = token;
    loop {
        rounds += 1;
        args = vec![
            "enumerate",
            "--size",
            "4",
            "--class",
            "inrs",
            "--out",
            c,
            "--max-results",
            "3",
            "--resume",
        ];
        args.push(&token);
        let (out, code) = nearsemi(&args);
        if code == 0 {
            break;
        }
        assert_eq!(code, 2, "{out}");
        token = out
            .lines()
            .last()
            .and_then(|l| l.split("--resume ").nth(1))
            .map(|t| t.trim_end_matches('`').to_string())
            .unwrap();
        assert!(rounds < 100);
    }
    let mut resumed: Vec<_> = std::fs::read_dir(c)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    resumed.sort();
    let full: Vec<_> = files
        .iter()
        .map(|p| p.file_name().unwrap().to_owned())
        .collect();
    assert_eq!(resumed, full);
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["congruences".to_string(), data("b2xl3.alg")],
        vec!["ideals".to_string(), data("b2xb2.alg")],
        vec!["center".to_string(), data("b2xl3.alg")],
        vec![
            "enumerate".to_string(),
            "--size".into(),
            "4".into(),
            "--class".into(),
            "inrs".into(),
        ],
    ] {
        let mut outputs = Vec::new();
        for t in ["1", "2", "4"] {
            let mut a: Vec<&str> = vec!["--threads", t];
            a.extend(args.iter().map(String::as_str));
            outputs.push(nearsemi(&a));
        }
        let echo_free: Vec<(Vec<String>, i32)> = outputs
            .iter()
            .map(|(o, c)| (o.lines().skip(1).map(String::from).collect(), *c))
            .collect();
        assert!(echo_free.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nearsemi");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["ideals", &data("l3.alg")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("# nearsemi ideals "));
    assert_eq!(status(&["claims", &data("l3.alg")]).status.code(), Some(1));
    let err = status(&["check", "/does/not/exist.alg"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(err.stdout.is_empty());
    assert!(String::from_utf8_lossy(&err.stderr).contains("cannot read"));
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
}
