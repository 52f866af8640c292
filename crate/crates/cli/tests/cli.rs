//! The binary end to end: documented examples, exit codes, stdin, files,
//! JSON round trips and byte-identical reruns.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use braidlaz::json::{BraidJson, HolonomyJson, NormalFormJson, PolyJson, SystemJson};
use braidlaz::text::{format_braid, parse_braid, parse_polynomial};
use braidlaz_core::braid::{left_normal_form, BraidWord, GarsideNormalForm};
use braidlaz_core::fgl::{universal_bud, Bud, GradedPolynomial, Monomial};
use braidlaz_core::kz::{transposition_system, InfinitesimalSystem};
use braidlaz_core::rational::ratio;
use proptest::prelude::*;

fn cli(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_braidlaz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = cli(args, None);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["braid", "eq", "--n", "3", "1 2 1", "2 1 2"]), "true\n");
    assert_eq!(
        ok(&["fgl", "universal", "--stages", "1", "--format", "text"]),
        "x + y + a1*x*y\n"
    );
    let missing = cli(&["kz", "check", "--file", "missing.json"], None);
    assert_eq!(missing.status.code(), Some(2));
    let err = String::from_utf8_lossy(&missing.stderr);
    assert!(err.contains("missing.json") && err.contains("Usage"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["braid", "shuffle"], None).status.code(), Some(2));
    assert_eq!(
        cli(&["braid", "eq", "--n", "3", "1 5", "1"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        cli(&["fgl", "defects", "x + q", "--m", "2"], None).status.code(),
        Some(2)
    );
    let domain = cli(&["braid", "markov", "--n", "3", "1 1", "--move", "destabilize"], None);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("destabiliz"));
    assert_eq!(
        cli(&["fgl", "universal", "--stages", "3", "--max-stages", "2"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cli(&["fgl", "cocycle", "--n", "1"], None).status.code(), Some(1));
    assert_eq!(cli(&["--version"], None).status.code(), Some(0));
}

#[test]
fn braid_commands() {
    assert_eq!(ok(&["braid", "reduce", "--n", "3", "1 2 -2 -1 2"]), "n=3\n2\n");
    assert_eq!(ok(&["braid", "perm", "--n", "3", "1 2"]), "[2 3 1]\n");
    assert_eq!(ok(&["braid", "pure", "--n", "3", "1 1 2 2"]), "true\n");
    assert_eq!(
        ok(&["braid", "closure", "--n", "3", "1 2"]),
        "strands=3 components=1 exponent_sum=2\n"
    );
    assert_eq!(
        ok(&["braid", "markov", "--n", "2", "1", "--move", "stabilize"]),
        "n=3\n1 2\n"
    );
    assert_eq!(
        ok(&["braid", "markov", "--n", "3", "1 2", "--move", "destabilize"]),
        "n=2\n1\n"
    );
    assert_eq!(ok(&["braid", "nf", "--n", "3", "1 2 1"]), "n=3 inf=1\n");
    let cob = ok(&["braid", "cobordism", "--n", "2", "1"]);
    assert!(cob.starts_with("intervals=2\n"), "{cob}");
    let pairs = ok(&["braid", "eq", "--n", "4", "--insert-relators", "50", "--seed", "9"]);
    assert_eq!(pairs, "seed=9 pairs=50 equal=50\n");
}

#[test]
fn stdin_and_files() {
    let out = cli(&["braid", "reduce", "-"], Some("n=3\n1 -1 2\n"));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n=3\n2\n");
    let out = cli(&["fgl", "defects", "-", "--m", "2"], Some("x + y + a1*x*y"));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "associativity: 0\ncommutativity: 0\nunit: 0\n"
    );

    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("w.txt");
    std::fs::write(&word, "n=4\n1 3 -1\n").unwrap();
    assert_eq!(ok(&["braid", "perm", "--file", word.to_str().unwrap()]), "[1 2 4 3]\n");

    let sys = dir.path().join("sys.json");
    std::fs::write(&sys, ok(&["kz", "example", "--n", "3", "--d", "2", "--format", "json"])).unwrap();
    let check = ok(&["kz", "check", "--file", sys.to_str().unwrap()]);
    assert!(check.starts_with("satisfied=true\n"), "{check}");
    let from_stdin = cli(
        &["kz", "curvature", "--file", "-"],
        Some(&std::fs::read_to_string(&sys).unwrap()),
    );
    assert!(String::from_utf8(from_stdin.stdout).unwrap().starts_with("flat=true"));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n":3,"dim":1,"A":{"1,2":[["1"]],"1,3":[["0"]],"2,3":[["x"]]}}"#,
    )
    .unwrap();
    assert_eq!(
        cli(&["kz", "check", "--file", bad.to_str().unwrap()], None)
            .status
            .code(),
        Some(2)
    );

    let poly = dir.path().join("square.txt");
    std::fs::write(&poly, "0,1\n-1i,1\n2-1i,1\n2+1i,1\n1i,1\n0,1\n").unwrap();
    let spec = format!("polyline:@{}", poly.display());
    let sys2 = dir.path().join("half.json");
    std::fs::write(&sys2, r#"{"n":2,"dim":1,"A":{"1,2":[["1/2"]]}}"#).unwrap();
    let out = ok(&[
        "kz",
        "holonomy",
        "--file",
        sys2.to_str().unwrap(),
        "--loop",
        &spec,
        "--format",
        "json",
        "--steps",
        "2000",
    ]);
    let h: HolonomyJson = serde_json::from_str(&out).unwrap();
    assert!((h.matrix[0][0].re + 1.0).abs() < 1e-6 && h.matrix[0][0].im.abs() < 1e-6);
}

#[test]
fn kz_commands() {
    let out = ok(&[
        "kz",
        "sample",
        "--example",
        "3,2",
        "--point",
        "0,1,2+i",
        "--point",
        "1/2,3,-1",
        "--threads",
        "2",
    ]);
    assert_eq!(out, "point 1: 0\npoint 2: 0\n");
    assert_eq!(ok(&["kz", "equivariance", "--example", "3,2"]), "true\n");
    let bad = cli(&["kz", "sample", "--example", "2,1", "--point", "1,1"], None);
    assert_eq!(bad.status.code(), Some(1));
    let out = ok(&[
        "kz",
        "holonomy",
        "--example",
        "3,2",
        "--loop",
        "circle:1,2,0.75",
        "--loop",
        "offset:3,0.2",
        "--steps",
        "256",
    ]);
    assert!(out.starts_with("steps=256 "), "{out}");
    let mono = ok(&["kz", "example", "--n", "2", "--d", "1", "--scale", "1/3"]);
    assert_eq!(mono, "n=2 dim=1\nA1,2 =\n  [1/3]\n");
}

#[test]
fn fgl_commands() {
    assert_eq!(ok(&["fgl", "cocycle", "--n", "4"]), "2*x^3*y + 3*x^2*y^2 + 2*x*y^3\n");
    assert_eq!(ok(&["fgl", "log", "--stages", "1"]), "t - 1/2*a1*t^2\n");
    assert_eq!(
        ok(&["fgl", "log", "--law", "x + y + x*y", "--m", "3"]),
        "t - 1/2*t^2 + 1/3*t^3\n"
    );
    assert_eq!(
        ok(&["fgl", "exp", "t - 1/2*t^2 + 1/3*t^3", "--m", "3"]),
        "x + y + x*y\n"
    );
    let classes = ok(&["fgl", "mishchenko", "--stages", "2"]);
    assert!(classes.starts_with("[CP^0] = 1\n[CP^1] = -a1\n"), "{classes}");
    assert_eq!(
        ok(&["fgl", "quillen", "x", "y", "--law", "x + y + 2*x*y", "--m", "2"]),
        "x + y + 2*x*y\n"
    );
    assert_eq!(
        ok(&["fgl", "quillen", "x + x^2", "y", "--stages", "1", "--m", "2"]),
        "x + y + x^2 + a1*x*y\n"
    );
    assert_eq!(
        cli(&["fgl", "quillen", "1 + x", "y", "--stages", "1", "--m", "2"], None)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ok(&["fgl", "specialize", "--stages", "1", "--assign", "1=-1"]),
        "x + y - x*y\n"
    );
    let tower = ok(&["fgl", "universal", "--stages", "2", "--tower"]);
    assert_eq!(tower.lines().count(), 2);
}

#[test]
fn json_round_trips() {
    let w = BraidWord::from_signed(4, &[1, -3, 2]).unwrap();
    let out = ok(&["braid", "reduce", "--n", "4", "1 -3 2", "--format", "json"]);
    assert_eq!(
        BraidWord::try_from(&serde_json::from_str::<BraidJson>(&out).unwrap()).unwrap(),
        w
    );

    let out = ok(&["braid", "nf", "--n", "4", "1 -3 2", "--format", "json"]);
    let nf: NormalFormJson = serde_json::from_str(&out).unwrap();
    assert_eq!(GarsideNormalForm::try_from(&nf).unwrap(), left_normal_form(&w));

    let out = ok(&["fgl", "universal", "--stages", "3", "--format", "json"]);
    let bud = Bud::try_from(&serde_json::from_str::<PolyJson>(&out).unwrap()).unwrap();
    assert_eq!(bud, *universal_bud(3).unwrap().law());

    let out = ok(&["kz", "example", "--n", "3", "--d", "2", "--format", "json"]);
    let sys = InfinitesimalSystem::try_from(&serde_json::from_str::<SystemJson>(&out).unwrap()).unwrap();
    assert_eq!(sys, transposition_system(3, 2).unwrap());
}

#[test]
fn reruns_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &[
            "braid",
            "eq",
            "--n",
            "5",
            "--insert-relators",
            "30",
            "--seed",
            "4",
            "--format",
            "json",
        ],
        &["fgl", "universal", "--stages", "4", "--format", "json"],
        &[
            "kz",
            "holonomy",
            "--example",
            "3,2",
            "--loop",
            "circle:1,2,0.75",
            "--steps",
            "128",
            "--format",
            "json",
        ],
        &[
            "kz",
            "sample",
            "--example",
            "3,2",
            "--point",
            "0,1,i",
            "--point",
            "0,2,5",
            "--threads",
            "3",
        ],
    ];
    for args in runs {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

fn poly_strategy() -> impl Strategy<Value = GradedPolynomial> {
    prop::collection::vec(
        (
            prop::array::uniform4(0u32..3),
            prop::collection::vec(0u32..3, 0..3),
            -20i64..20,
            1i64..6,
        ),
        0..6,
    )
    .prop_map(|terms| {
        GradedPolynomial::from_terms(terms.into_iter().map(|(v, g, p, q)| (Monomial::new(v, g), ratio(p, q))))
    })
}

proptest! {
    #[test]
    fn polynomial_text_round_trip(p in poly_strategy()) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p.clone());
        let j = PolyJson::of_polynomial(&p);
        let back: PolyJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        prop_assert_eq!(back.to_polynomial().unwrap(), p);
    }

    #[test]
    fn braid_text_round_trip(n in 2usize..7, raw in prop::collection::vec((1i64..6, any::<bool>()), 0..30)) {
        let letters: Vec<i64> = raw.into_iter().map(|(i, s)| { let i = 1 + (i - 1) % (n as i64 - 1); if s { i } else { -i } }).collect();
        let w = BraidWord::from_signed(n, &letters).unwrap();
        let text = format_braid(&w);
        let back = parse_braid(&text).unwrap();
        prop_assert_eq!(format_braid(&back), text);
        prop_assert_eq!(back, w);
    }
}
