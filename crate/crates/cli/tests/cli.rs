use std::process::{Command, Output};

fn fqmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqmzv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn power_sum_remark_value() {
    let o = fqmzv(&["powersum", "--q", "3", "--d", "2", "--s", "-8"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("S_2(-8) = t^6+t^4+t^2"), "{s}");
    assert!(s.contains("valuation: 2"));
}

#[test]
fn power_sum_edge_degrees() {
    let s = stdout(&fqmzv(&["powersum", "--q", "3", "--d", "0", "--s", "-8"]));
    assert!(s.contains("S_0(-8) = 1"));
    let o = fqmzv(&["powersum", "--q", "3", "--d", "3", "--s", "-8", "--method", "both"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("S_3(-8) = 0"));
    assert!(s.contains("valuation: inf"));
    assert!(s.contains("agreement: yes"));
}

#[test]
fn power_sum_json_is_parseable() {
    let o = fqmzv(&[
        "powersum", "--p", "3", "--f", "2", "--d", "1", "--s", "-4", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["meta"][0]["q"], 9);
    assert_eq!(v["results"][0]["method"], "formula");
}

#[test]
fn mixed_sign_zeta_vanishes_exactly() {
    let s = stdout(&fqmzv(&["mzv", "--q", "3", "--s", "-8,2"]));
    assert!(s.contains("zeta(-8,2) = 0"), "{s}");
    assert!(s.contains("exact: true"));
}

#[test]
fn trivial_zero_is_classified() {
    let s = stdout(&fqmzv(&["mzv", "--q", "3", "--s", "-1,-2"]));
    assert!(s.contains("classification: trivial_zero"), "{s}");
}

#[test]
fn matrices_for_131_over_f9() {
    let o = fqmzv(&[
        "compositions", "--q", "9", "--N", "131", "--d", "2", "--what", "matrices",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("[[2,3],[2,0]]"), "{s}");
    assert!(s.contains("[[5,0],[1,1]]"));
}

#[test]
fn modest_u_tuple() {
    let s = stdout(&fqmzv(&["compositions", "--q", "3", "--k", "8", "--d", "1", "--what", "modest"]));
    assert!(s.lines().any(|l| l.starts_with("(0,8)")), "{s}");
}

#[test]
fn empty_set_is_an_empty_listing() {
    let o = fqmzv(&[
        "compositions", "--q", "3", "--k", "8", "--d", "3", "--what", "modest", "--format", "csv",
        "--no-banner",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn exit_codes() {
    // not a prime power
    assert_eq!(code(&fqmzv(&["powersum", "--q", "6", "--d", "1", "--s", "-1"])), 1);
    // clap rejects a missing argument
    assert_eq!(code(&fqmzv(&["powersum", "--q", "3"])), 1);
    // greedy needs the U convention
    assert_eq!(
        code(&fqmzv(&["compositions", "--q", "3", "--N", "8", "--d", "2", "--what", "greedy"])),
        1
    );
    // brute force over 3^9 monic polynomials with a cap of 10
    assert_eq!(
        code(&fqmzv(&[
            "powersum", "--q", "3", "--d", "9", "--s", "5", "--max-evaluations", "10",
        ])),
        3
    );
    // the literal cover statement has counterexamples
    assert_eq!(code(&fqmzv(&["verify", "--suite", "digits", "--quick"])), 2);
    assert_eq!(code(&fqmzv(&["verify", "--suite", "powersum", "--quick"])), 0);
    assert_eq!(code(&fqmzv(&["--help"])), 0);
}

#[test]
fn sweep_output_is_independent_of_jobs() {
    let base = ["sweep", "--q", "4,3", "--depth", "2", "--smin", "-12", "--format", "csv"];
    let one = fqmzv(&[&base[..], &["--jobs", "1"]].concat());
    let four = fqmzv(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let s = stdout(&one);
    assert!(s.contains("q,p,f,s_tuple,depth,value,valuation,classification,exact"));
    // 12 * 12 tuples for each of the two fields
    assert_eq!(s.lines().filter(|l| !l.starts_with('#')).count(), 1 + 2 * 144);
}

#[test]
fn sweep_writes_file() {
    let dir = std::env::temp_dir().join(format!("fqmzv-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let o = fqmzv(&[
        "sweep", "--q", "2", "--depth", "3", "--smin", "-3", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 27);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn banner_only_changes_the_first_line() {
    let args = ["powersum", "--q", "9", "--d", "2", "--s", "-10"];
    let with = stdout(&fqmzv(&args));
    let without = stdout(&fqmzv(&[&args[..], &["--no-banner"]].concat()));
    assert_eq!(with.split_once('\n').unwrap().1, without);
    assert_eq!(without, stdout(&fqmzv(&[&args[..], &["--no-banner"]].concat())));
}
