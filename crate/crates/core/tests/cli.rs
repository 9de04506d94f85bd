//! Golden documents for the shipped corpus, printer round-trips, rejection
//! of corrupted input and exit codes of the binary.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/`.

use std::path::PathBuf;
use std::process::Command;

use superquot::cli::build::build_hopf;
use superquot::cli::parse::{parse_presentation, PresentationFile};
use superquot::cli::print::print_presentation;
use superquot::cli::run;
use superquot::hopf::lie::is_graded;
use superquot::superlinalg::Field;
use superquot::Error;

/// (corpus file, command, expected exit code)
const GOLDEN: &[(&str, &str, i32)] = &[
    ("GL11", "analyze GL11 --bound 4", 0),
    ("Borel", "quotient GL11 Borel --bound 6", 0),
    ("Torus", "quotient GL11 Torus --bound 6", 0),
    ("Gm", "analyze Gm --bound 4", 0),
    ("Mu2", "galois Gm Mu2 --bound 4", 0),
    ("Ga01", "lie Ga01 --bound 4", 0),
    ("Ga11", "gr Ga11 --bound 4", 0),
    ("GmSplit", "quotient GmSplit Mu2e --bound 4", 0),
    ("GL2", "validate GL2 --bound 3", 0),
    ("GL2Borel", "galois GL2 GL2Borel --bound 3", 2),
];

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn corpus_path(file: &str) -> PathBuf {
    manifest().join("corpus").join(format!("{file}.hopf"))
}

fn args(cmd: &str, extra: &[&str]) -> Vec<String> {
    std::iter::once("superquot").chain(cmd.split_whitespace()).chain(extra.iter().copied()).map(String::from).collect()
}

fn golden_check(path: PathBuf, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "{} differs", path.display());
}

#[test]
fn corpus_documents_match_golden() {
    for (file, cmd, code) in GOLDEN {
        let input = corpus_path(file);
        let out = run(&args(cmd, &["--input", input.to_str().unwrap(), "--format", "json"]));
        assert_eq!(out.code, *code, "{cmd}: {}", out.stderr);
        golden_check(manifest().join("tests/golden").join(format!("{file}.json")), &out.stdout);
    }
}

fn strip(mut f: PresentationFile) -> PresentationFile {
    for h in &mut f.hopfs {
        h.pos = (0, 0);
        for r in &mut h.relations {
            r.pos = (0, 0);
        }
        for c in h.coproduct.iter_mut().chain(h.counit.iter_mut()).chain(h.antipode.iter_mut().flatten()) {
            c.pos = (0, 0);
        }
    }
    for s in &mut f.subs {
        s.pos = (0, 0);
        for k in &mut s.kill {
            k.pos = (0, 0);
        }
    }
    f
}

#[test]
fn canonical_printing_round_trips() {
    for (file, _, _) in GOLDEN {
        let text = std::fs::read_to_string(corpus_path(file)).unwrap();
        let parsed = parse_presentation(&text).unwrap();
        let printed = print_presentation(&parsed);
        let again = parse_presentation(&printed).unwrap();
        assert_eq!(strip(again.clone()), strip(parsed), "{file}");
        assert_eq!(print_presentation(&again), printed, "{file}");
        golden_check(manifest().join("tests/golden").join(format!("{file}.canonical.hopf")), &printed);
    }
}

#[test]
fn reruns_are_byte_identical() {
    for (file, cmd, _) in GOLDEN {
        let input = corpus_path(file);
        let a = args(cmd, &["--input", input.to_str().unwrap(), "--format", "json"]);
        assert_eq!(run(&a), run(&a), "{cmd}");
    }
    let bin = env!("CARGO_BIN_EXE_superquot");
    let once = || Command::new(bin).args(["quotient", "GmSplit", "Mu2e", "--bound", "4", "--format", "json"]).output().unwrap();
    let (a, b) = (once(), once());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

const GOOD: &str = "hopf G {\n  even t inv;\n  coproduct { t = t(x)t; }\n  counit { t = 1; }\n  antipode auto;\n}\n";

fn parse_error(text: &str) -> (usize, usize, String) {
    let f = match parse_presentation(text) {
        Err(Error::Parse { line, col, msg }) => return (line, col, msg),
        Err(e) => panic!("unexpected error {e}"),
        Ok(f) => f,
    };
    match build_hopf(&f.hopfs[0], Field::Rational) {
        Err(Error::Parse { line, col, msg }) => (line, col, msg),
        other => panic!("expected a positioned error, got {other:?}"),
    }
}

#[test]
fn corrupted_input_is_rejected_with_positions() {
    assert!(parse_presentation(GOOD).is_ok());
    let cases: &[(&str, usize, usize, &str)] = &[
        ("hopf G {\n  even t inv;\n  coproduct { t = t(x)t }\n  counit { t = 1; }\n  antipode auto;\n}\n", 3, 25, "expected ';'"),
        ("hopf G {\n  even t inv;\n  coproduct { t = t(x)s; }\n  counit { t = 1; }\n  antipode auto;\n}\n", 3, 15, "unknown generator 's'"),
        (
            "hopf G {\n  even t;\n  odd y;\n  coproduct { t = t(x)t; y = y(x)1; }\n  counit { t = 1; y = 1; }\n  antipode auto;\n}\n",
            5,
            19,
            "must be 0",
        ),
        (
            "hopf G {\n  even t;\n  odd y;\n  coproduct { t = t(x)y; y = y(x)1; }\n  counit { t = 1; y = 0; }\n  antipode auto;\n}\n",
            4,
            15,
            "parity",
        ),
        ("hopf G {\n  even t;\n  coproduct { t = t^-1(x)t; }\n  counit { t = 1; }\n  antipode auto;\n}\n", 3, 15, "non-invertible"),
        ("hopf G {\n  even t inv, t;\n}\n", 2, 15, "duplicate generator"),
        ("hopf G {\n  even t inv;\n  coprod { t = t(x)t; }\n}\n", 3, 3, "expected"),
        ("hopf G {\n  even t inv;\n  coproduct { t = t(x)t(x)t; }\n  counit { t = 1; }\n  antipode auto;\n}\n", 3, 15, "two tensor factors"),
    ];
    for (text, line, col, msg) in cases {
        let (l, c, m) = parse_error(text);
        assert_eq!((l, c), (*line, *col), "{m}");
        assert!(m.contains(msg), "{m}");
    }
    let bad_sub = format!("{GOOD}sub H of K {{ kill t - 1; }}\n");
    assert!(matches!(parse_presentation(&bad_sub), Err(Error::Parse { line: 7, col: 1, .. })));
}

fn bin(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superquot")).args(args).env_remove("SUPERQUOT_BOUND").envs(env.iter().copied()).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("superquot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gl11 = std::fs::read_to_string(corpus_path("GL11")).unwrap();
    let corrupt = dir.join("corrupt.hopf");
    std::fs::write(&corrupt, gl11.replace("a = a(x)a + b(x)g;", "a = a(x)a + g(x)b;")).unwrap();
    let (code, out) = bin(&["validate", "GL11", "--bound", "2", "--input", corrupt.to_str().unwrap()], &[]);
    assert_eq!(code, 2);
    assert!(out.contains("coassociativity"), "{out}");

    let broken = dir.join("broken.hopf");
    std::fs::write(&broken, gl11.replace("coproduct {", "coproduct {{")).unwrap();
    assert_eq!(bin(&["validate", "GL11", "--input", broken.to_str().unwrap()], &[]).0, 1);
    assert_eq!(bin(&["quotient", "GL11", "Nope"], &[]).0, 1);
    assert_eq!(bin(&["quotient", "GL11", "Borel", "--bogus"], &[]).0, 1);
    assert_eq!(bin(&["quotient", "GL11", "Mu2"], &[]).0, 1);
    assert_eq!(bin(&["galois", "GL2", "GL2Borel", "--bound", "2"], &[]).0, 2);
    assert_eq!(bin(&["quotient", "GL2", "GL2Borel", "--bound", "2"], &[]).0, 2);
    assert_eq!(bin(&["quotient", "GL2", "GL2Borel", "--bound", "2", "--override-affinity"], &[]).0, 0);
    assert_eq!(bin(&["galois", "Gm", "Mu2", "--bound", "2"], &[]).0, 0);
    assert_eq!(bin(&["--help"], &[]).0, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn json(args: &[&str], env: &[(&str, &str)]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&bin(&a, env).1).unwrap()
}

#[test]
fn bound_and_field_settings() {
    assert_eq!(json(&["quotient", "Gm", "Mu2"], &[])["bound"], 8);
    assert_eq!(json(&["quotient", "Gm", "Mu2"], &[("SUPERQUOT_BOUND", "3")])["bound"], 3);
    assert_eq!(json(&["quotient", "Gm", "Mu2", "--bound", "2"], &[("SUPERQUOT_BOUND", "3")])["bound"], 2);
    let doc = json(&["quotient", "Gm", "Mu2", "--bound", "2", "--field", "p=7"], &[]);
    assert_eq!(doc["field"], "p=7");
    assert_eq!(bin(&["quotient", "Gm", "Mu2", "--field", "p=9"], &[]).0, 1);
    let keys: Vec<String> = doc.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["bound", "command", "dimensions", "field", "generators", "verdicts", "witnesses"]);
    for v in doc["verdicts"].as_object().unwrap().values() {
        assert!(v["bound"].is_u64());
    }
}

#[test]
fn documented_examples() {
    let doc = json(&["quotient", "GL11", "Borel", "--bound", "6"], &[]);
    assert_eq!(doc["dimensions"]["z"], 1);
    assert_eq!(doc["dimensions"]["total"], 2);

    let doc = json(&["gr", "Ga11"], &[]);
    assert_eq!(doc["verdicts"]["graded"]["status"], "Disproven");
    assert_eq!(doc["witnesses"]["graded"], "[y*,y*] ≠ 0");
    assert_eq!(doc["verdicts"]["gr_graded"]["status"], "Proven");
    // the emitted presentation is itself a valid input
    let text = doc["generators"]["gr_presentation"][0].as_str().unwrap();
    let f = parse_presentation(text).unwrap();
    let gr = build_hopf(&f.hopfs[0], Field::Rational).unwrap();
    assert!(gr.validate(4).ok);
    assert!(is_graded(&gr).0);

    let doc = json(&["consistency", "GmSplit", "Mu2e", "--bound", "4", "--chart", "x=t^2-1"], &[]);
    assert_eq!(doc["verdicts"]["result"]["status"], "Proven");
    assert_eq!(doc["verdicts"]["local_consistency"]["status"], "Proven");
}
