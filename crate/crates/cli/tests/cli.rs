use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn liexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liexp"))
        .args(args)
        .env_remove("LIEXP_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../algebras")
        .join(format!("{name}.alg"))
}

const CATALOG: [&str; 5] = ["galilei", "galilei_ext", "poincare", "newton_hooke", "euclid4"];

#[test]
fn shipped_files_match_catalog_byte_for_byte() {
    for name in CATALOG {
        let path = shipped(name);
        let file = std::fs::read_to_string(&path).unwrap();
        let from_catalog = liexp(&["emit", name]);
        assert!(from_catalog.status.success());
        assert_eq!(stdout(&from_catalog), file, "{name}");
        let reparsed = liexp(&["emit", path.to_str().unwrap()]);
        assert_eq!(stdout(&reparsed), file, "{name} round trip");
    }
}

#[test]
fn shipped_poincare_contracts_to_galilei() {
    let path = shipped("poincare");
    let o = liexp(&["contract", path.to_str().unwrap(), "--param", "ω"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("equals catalog galilei: pass"));
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&liexp(&["bracket", "galilei", "J1", "J2"])), "J3\n");
    assert_eq!(stdout(&liexp(&["bracket", "poincare", "K1", "K2"])), "omega*J3\n");
    assert_eq!(
        stdout(&liexp(&["normal-form", "galilei", "[<JP>, K1]"])),
        "-P2*K3 + P3*K2\n"
    );
    assert_eq!(
        stdout(&liexp(&["normal-form", "galilei", "P1*P1 + P2*P2 + P3*P3"])),
        stdout(&liexp(&["normal-form", "galilei", "<C1>"]))
    );
    assert_eq!(stdout(&liexp(&["normal-form", "galilei", "0"])), "0\n");
    let o = liexp(&["contract", "poincare", "--param", "ω"]);
    assert!(stdout(&o).contains("equals catalog galilei: pass"), "{}", stdout(&o));
}

#[test]
fn poincare_expansion_json_has_45_passing_pairs() {
    let o = liexp(&["expand", "poincare", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 45);
    assert!(pairs.iter().all(|p| p["verdict"] != "mismatch"));
    let keys: Vec<&str> = pairs[0].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(&keys[..2], ["pair", "mode"]);
}

#[test]
fn exit_status_contract() {
    for target in ["poincare", "euclid4", "newton_hooke", "negative-nh"] {
        let o = liexp(&["expand", target]);
        assert!(o.status.success(), "{target}: {}", stderr(&o));
    }
    assert!(liexp(&["expand", "newton_hooke", "--kappa-positive"]).status.success());
    let neg = stdout(&liexp(&["expand", "negative-nh"]));
    assert!(neg.contains("[H,P1]   MISMATCH"), "{neg}");
    assert!(neg.contains("closes: false; expected: false; as expected: true"));

    let o = liexp(&["identity", "galilei", "[<JP>, K1]", "-<W1>"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("failed: [<JP>, K1] = -<W1>"));

    let o = liexp(&["expand", "poincare", "--witness", "a1=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("a1*c1 + a2*c2"), "{}", stderr(&o));

    let o = liexp(&["expand", "poincare", "--witness", "a1=0.5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = liexp(&["expand", "poincare", "--witness", "a2=-1", "--witness", "a1=1/4"]);
    assert!(o.status.success(), "negative root of a2: {}", stderr(&o));
}

#[test]
fn parse_errors_carry_positions() {
    let o = liexp(&["normal-form", "galilei", "P1 * Q7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`Q7` at column 6"), "{}", stderr(&o));
}

#[test]
fn definition_file_faults() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(shipped("galilei")).unwrap();
    let bad = good.replace(
        r#"{"left": "H", "right": "K1", "terms": [{"gen": "P1", "coeff": "-1"}]}"#,
        r#"{"left": "H", "right": "K1", "terms": [{"gen": "P1", "coeff": "1"}]}"#,
    );
    assert_ne!(good, bad);
    let path = dir.path().join("wrong_sign.alg");
    std::fs::write(&path, bad).unwrap();
    let p = path.to_str().unwrap();

    let o = liexp(&["check-jacobi", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).to_lowercase().contains("jacobi"), "{}", stderr(&o));

    let o = liexp(&["check-jacobi", p, "--allow-non-lie"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation (H,K1,J"), "{}", stdout(&o));

    let abelian = dir.path().join("abelian.alg");
    std::fs::write(
        &abelian,
        r#"{"name": "ab", "parameters": [], "generators": ["A", "B"], "brackets": [], "metadata": {}}"#,
    )
    .unwrap();
    let o = liexp(&["check-jacobi", abelian.to_str().unwrap()]);
    assert!(o.status.success());

    let broken = dir.path().join("broken.alg");
    std::fs::write(&broken, "{\n  \"name\": \"x\",\n  \"generators\": [\"A\", \"B\"\n}\n").unwrap();
    let o = liexp(&["emit", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn reports_are_deterministic_and_print_the_seed() {
    for format in ["text", "json"] {
        let a = liexp(&["report", "--seed", "7", "--samples", "3", "--format", format]);
        let b = liexp(&["report", "--seed", "7", "--samples", "3", "--format", format]);
        assert!(a.status.success(), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
    }
    let text = stdout(&liexp(&["corpus", "--seed", "7", "--samples", "3"]));
    assert!(text.contains("seed: 7"));
    assert!(text.contains("JW JP [<JW>, <JP>]"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn out_directory_from_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = liexp(&["expand", "euclid4", "--out", d]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(dir.path().join("expand-euclid.txt")).unwrap(), o.stdout);

    let o = Command::new(env!("CARGO_BIN_EXE_liexp"))
        .args(["emit", "galilei"])
        .env("LIEXP_OUT_DIR", d)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read(dir.path().join("galilei.alg")).unwrap(), o.stdout);
}

#[test]
fn timing_only_on_request() {
    assert!(!stdout(&liexp(&["expand", "poincare"])).contains("time"));
    assert!(stdout(&liexp(&["expand", "poincare", "--timing"])).contains("time: "));
}
