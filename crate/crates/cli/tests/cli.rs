use std::io::Write;
use std::process::{Command, Output, Stdio};

use dna_labeling::codes::AllLabelsCode;
use dna_labeling::Alphabet;

fn dnalabel(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dnalabel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn dnalabel");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = dnalabel(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn dna_words(k: usize) -> Vec<String> {
    let mut words = vec![String::new()];
    for _ in 0..k {
        words = words
            .iter()
            .flat_map(|w| "ACGT".chars().map(move |c| format!("{w}{c}")))
            .collect();
    }
    words
}

#[test]
fn label_and_unlabel() {
    assert_eq!(
        ok(&["label", "--set", "minimal", "--flank", "A"], "ACGT\n"),
        "01067\n"
    );
    assert_eq!(ok(&["unlabel"], "01067\n"), "ACGT\n");
    assert_eq!(ok(&["label", "--standalone"], "ACGT\n"), "1060\n");
    assert_eq!(
        ok(
            &["label", "--set", "all", "--q", "2", "--flank", "A,C"],
            "CA\n"
        ),
        "121\n"
    );
}

#[test]
fn encode_regressions() {
    assert_eq!(ok(&["encode", "--scheme", "e1"], "ACGT\n"), "ACGTGGGCG\n");
    assert_eq!(ok(&["encode", "--scheme", "e2"], "ACGT\n"), "ACGTTAGGGAC\n");
    assert_eq!(
        ok(&["encode", "--scheme", "e1", "--labeling"], "ACGT\n"),
        "ACGTGGGCG\t0106955403\n"
    );
}

#[test]
fn bounds_row() {
    let tsv = ok(
        &[
            "bounds", "--q", "2", "--n-min", "9", "--n-max", "9", "--format", "tsv",
        ],
        "",
    );
    let row: Vec<&str> = tsv.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[4], "4629/20");
    assert_eq!(row[2], "1024/11");
    let json: serde_json::Value = serde_json::from_str(&ok(
        &[
            "bounds", "--q", "4", "--n-min", "20", "--n-max", "21", "--format", "json",
        ],
        "",
    ))
    .unwrap();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!((rows[0]["gap"].as_f64().unwrap() - 1.1664).abs() < 1e-4);
}

#[test]
fn e1_pipeline_reproduces_corpus() {
    for k in 2..=5 {
        let corpus = dna_words(k).join("\n") + "\n";
        let coded = ok(&["encode", "--scheme", "e1"], &corpus);
        let noisy = ok(&["simulate", "--errors", "0,0,1", "--seed", "7"], &coded);
        let k = k.to_string();
        assert_eq!(
            ok(&["decode", "--scheme", "e1", "--k", &k, "--strict"], &noisy),
            corpus
        );
    }
}

#[test]
fn e2_pipeline_reproduces_corpus() {
    let corpus = dna_words(4).join("\n") + "\n";
    let coded = ok(&["encode", "--scheme", "e2"], &corpus);
    let noisy = ok(&["simulate", "--errors", "1,0,0", "--seed", "11"], &coded);
    assert_eq!(
        ok(&["decode", "--scheme", "e2", "--k", "4"], &noisy),
        corpus
    );
}

#[test]
fn all_labels_pipeline() {
    let code = AllLabelsCode::build(4, 5, 0).unwrap();
    let dna = Alphabet::dna();
    let words: Vec<String> = code
        .codebook(1 << 12)
        .unwrap()
        .iter()
        .map(|x| dna.render(x))
        .collect();
    let corpus = words.join("\n") + "\n";
    let flank = format!(
        "{},{}",
        dna.symbol_char(code.flanks.left),
        dna.symbol_char(code.flanks.right)
    );
    let labels = ok(
        &["label", "--set", "all", "--q", "4", "--flank", &flank],
        &corpus,
    );
    let noisy = ok(
        &[
            "simulate", "--set", "all", "--q", "4", "--flank", &flank, "--errors", "0,0,1",
            "--seed", "2",
        ],
        &labels,
    );
    let args = [
        "decode",
        "--scheme",
        "all-labels-del",
        "--q",
        "4",
        "--n",
        "5",
        "--strict",
    ];
    assert_eq!(ok(&args, &noisy), corpus);
}

#[test]
fn simulate_is_deterministic() {
    let input = "ACGTACGT\nTTTT\n";
    let a = ok(&["simulate", "--errors", "1,1,1", "--seed", "5"], input);
    let b = ok(&["simulate", "--errors", "1,1,1", "--seed", "5"], input);
    assert_eq!(a, b);
    let c = ok(&["simulate", "--errors", "1,1,1", "--seed", "6"], input);
    assert_ne!(a, c);
    assert!(a.lines().all(|l| l.len() == 9 || l.len() == 5));
}

#[test]
fn decode_failures() {
    let out = dnalabel(&["decode", "--scheme", "e2", "--k", "4"], "0\n01067\n");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "!DECODE_FAIL\n!DECODE_FAIL\n"
    );
    let out = dnalabel(&["decode", "--scheme", "e2", "--k", "4", "--strict"], "0\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(dnalabel(&["label"], "ACGX\n").status.code(), Some(2));
    assert_eq!(
        dnalabel(&["decode", "--scheme", "e1"], "0\n").status.code(),
        Some(2)
    );
    assert_eq!(
        dnalabel(&["label", "--standalone", "--flank", "C"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dnalabel(&["bounds", "--q", "2", "--n-min", "5", "--n-max", "4"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dnalabel(&["simulate", "--errors", "1,0"], "").status.code(),
        Some(2)
    );
    assert_eq!(dnalabel(&["frobnicate"], "").status.code(), Some(2));
}

#[test]
fn empty_input_is_a_no_op() {
    for args in [
        vec!["label"],
        vec!["unlabel"],
        vec!["encode", "--scheme", "e1"],
        vec!["decode", "--scheme", "e2", "--k", "3"],
        vec!["simulate", "--errors", "0,0,1"],
    ] {
        let out = dnalabel(&args, "");
        assert!(out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn search_and_verify() {
    assert_eq!(
        ok(&["search", "--family", "hamming-coset", "--n", "4"], ""),
        "hamming-coset n=4 p=11 r=2 syndrome=1,5 size=6 labelings=256 floor=0.46\n"
    );
    let json: serde_json::Value = serde_json::from_str(&ok(
        &[
            "search",
            "--family",
            "tenengolts",
            "--n",
            "4",
            "--format",
            "json",
        ],
        "",
    ))
    .unwrap();
    assert_eq!(json["size"], 10);
    let report = ok(
        &[
            "verify", "--target", "e2", "--k-max", "3", "--format", "tsv",
        ],
        "",
    );
    assert_eq!(report.lines().count(), 3);
    assert!(report.lines().skip(1).all(|l| l.ends_with("\ttrue")));
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("dnalabel-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.txt");
    let output = dir.join("out.txt");
    std::fs::write(&input, "ACGT\nAAAA\n").unwrap();
    ok(
        &[
            "encode",
            "--scheme",
            "e1",
            "--in",
            input.to_str().unwrap(),
            "--out",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(
        std::fs::read_to_string(&output).unwrap(),
        "ACGTGGGCG\nAAAATTAAA\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
