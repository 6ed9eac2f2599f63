use std::io::Write;
use std::process::Command;

use bgcert::certifier::{certify_theorem, enumerate_candidates, Candidate, Certificate, ModeRequest};
use bgcert::cli::report::{EvalReport, GeomReport};
use bgcert::{PolarizedCY3, Preset, Rational};

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn bgcert(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_bgcert"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().expect("exit code"),
    }
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn certify_quintic_matches_golden() {
    let run = bgcert(&["certify", "--preset", "quintic", "--json"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, golden("certify_quintic.json"));
}

#[test]
fn enumerate_quintic_matches_golden() {
    let run = bgcert(&["enumerate", "--preset", "quintic"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, golden("enumerate_quintic.txt"));
}

#[test]
fn json_reports_reparse_to_library_values() {
    let run = bgcert(&["certify", "--preset", "ci24", "--mode", "even", "--json"]);
    assert_eq!(run.code, 1);
    let cert: Certificate = serde_json::from_str(&run.stdout).unwrap();
    let expected = certify_theorem(&PolarizedCY3::ci24(), None, ModeRequest::Even).unwrap();
    assert_eq!(cert, expected);

    let run = bgcert(&["enumerate", "--preset", "ci24", "--json"]);
    let list: Vec<Candidate> = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(list, enumerate_candidates(&PolarizedCY3::ci24()));

    let run = bgcert(&["geom", "--preset", "quintic", "--json"]);
    let geom: GeomReport = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(geom.preset, Some(Preset::Quintic));
    assert_eq!(geom.chi_oh, Rational::from(5));
    assert!(geom.chi_ox.is_zero());
    assert!(geom.full_hypothesis.holds);
    assert_eq!(geom.even_hypothesis, None);
    // re-serializing gives the same bytes
    assert_eq!(serde_json::to_string_pretty(&geom).unwrap() + "\n", run.stdout);

    let run = bgcert(&["eval", "--op", "ineq12", "--ch", "1,1,5/2,5/6", "--json"]);
    let eval: EvalReport = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(eval.equality, Some(true));
    assert_eq!(serde_json::to_string_pretty(&eval).unwrap() + "\n", run.stdout);
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(bgcert(&["certify", "--preset", "quintic"]).code, 0);
    assert_eq!(bgcert(&["certify", "--preset", "ci24", "--mode", "full"]).code, 2);
    assert_eq!(bgcert(&["certify", "--preset", "ci24", "--mode", "even"]).code, 1);
    assert_eq!(bgcert(&["certify", "--preset", "ci223"]).code, 1);
    assert_eq!(bgcert(&["certify", "--preset", "quintic", "--mode", "even"]).code, 2);

    let run = bgcert(&["certify", "--preset", "quintic", "--curve-bound", "2:-2"]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.contains("beta = 2: chi_min = -2, ch3 <= 5/6  FAIL  [violates curve inequality]"));
    assert!(run.stdout.contains("verdict: HYPOTHESIS_FAIL"));
}

#[test]
fn config_errors_exit_3() {
    let run = bgcert(&["geom", "--d", "5", "--c2h", "49"]);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("NonIntegralGeometry"));
    assert!(run.stdout.is_empty());

    assert_eq!(bgcert(&["eval", "--op", "chi", "--preset", "quintic", "--ch", "1,1,+5/2,0"]).code, 3);
    assert_eq!(bgcert(&["eval", "--op", "chi", "--preset", "quintic", "--ch", "1,1,5/0,0"]).code, 3);
    assert_eq!(bgcert(&["geom", "--d", "5", "--c2h", "50", "--dimh", "3"]).code, 3);
    assert_eq!(bgcert(&["certify"]).code, 3);
    assert_eq!(bgcert(&["bogus"]).code, 3);
}

#[test]
fn custom_geometry_from_flags() {
    // d = 2 needs 4 + c2h divisible by 12; c2h = 20 gives dim|H| = 1
    let run = bgcert(&["enumerate", "--d", "2", "--c2h", "20", "--json"]);
    assert_eq!(run.code, 0);
    let list: Vec<Candidate> = serde_json::from_str(&run.stdout).unwrap();
    let pairs: Vec<(i64, i64)> = list.iter().map(|c| (c.r, c.c2h)).collect();
    assert_eq!(pairs, vec![(1, 0)]);
    assert_eq!(bgcert(&["enumerate", "--d", "2", "--c2h", "28"]).code, 3);

    let run = bgcert(&["geom", "--d", "5", "--c2h", "50", "--castelnuovo-known"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("castelnuovo_known = true"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("bgcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let kv = dir.join("quintic.conf");
    std::fs::File::create(&kv)
        .unwrap()
        .write_all(b"# the quintic\nd = 5\nc2h = 50\ncastelnuovo_known = true\n")
        .unwrap();
    let kv = kv.to_str().unwrap();

    let run = bgcert(&["certify", "--config", kv]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("verdict: CERTIFIED_STRICT"));

    // flags win over the file
    let run = bgcert(&["certify", "--config", kv, "--preset", "ci24"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.starts_with("geometry: d = 8, c2.H = 56"));

    let json = dir.join("bad.json");
    std::fs::write(&json, r#"{"d": 5, "c2h": "fifty"}"#).unwrap();
    let run = bgcert(&["geom", "--config", json.to_str().unwrap()]);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("`c2h`"), "{}", run.stderr);

    let run = bgcert(&["geom", "--config", dir.join("missing.conf").to_str().unwrap()]);
    assert_eq!(run.code, 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn eval_examples() {
    let run = bgcert(&["eval", "--op", "chi", "--preset", "quintic", "--ch", "1,1,5/2,5/6"]);
    assert_eq!(run.stdout, "chi = 5\nintegral: yes\n");
    let run = bgcert(&["eval", "--op", "chi", "--preset", "quintic", "--ch", "1,1,5/2,0"]);
    assert_eq!(run.stdout, "chi = 25/6\nintegral: no\n");
    let run = bgcert(&["eval", "--op", "nu", "--preset", "quintic", "--ch", "1,1,5/2,5/6", "--t", "1"]);
    assert_eq!(run.stdout, "nu(t = 1) = 1/3\n");
    let run = bgcert(&["eval", "--op", "ineq12", "--ch", "1,1,5/2,5/6"]);
    assert_eq!(run.stdout, "ch3 = 5/6 <= ch2H/(3 ch0) = 5/6\nequality\n");
    let run = bgcert(&["eval", "--op", "mu", "--preset", "quintic", "--ch", "2,1,0,0"]);
    assert_eq!(run.stdout, "mu = 5/2\n");
    let run = bgcert(&["eval", "--op", "bg", "--preset", "quintic", "--ch", "3,1,1/2,0"]);
    assert_eq!(run.stdout, "discriminant = 2\nbogomolov: pass\n");
    let run = bgcert(&["eval", "--op", "nu", "--preset", "quintic", "--ch", "-1,-1,-5/2,-5/6", "--t", "2"]);
    assert_eq!(run.stdout, "nu(t = 2) = -1/12\n");
}

#[test]
fn geom_reports() {
    let run = bgcert(&["geom", "--preset", "quintic"]);
    assert!(run.stdout.contains("d = 5\nc2XH = 50\ndimH = 4\n"));
    assert!(run.stdout.contains("7/6 d - 3 = 17/6: pass"));
    let run = bgcert(&["geom", "--preset", "ci24"]);
    assert!(run.stdout.contains("7/6 d - 3 = 19/3: fail"));
    assert!(run.stdout.contains("2/3 d - 3 = 7/3: pass"));
}
