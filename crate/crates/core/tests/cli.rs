use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn jacal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacal")).args(args).output().expect("spawn jacal")
}

struct Script(tempfile::NamedTempFile);

impl Script {
    fn path(&self) -> &str {
        self.0.path().to_str().unwrap()
    }
}

fn script(src: &str) -> Script {
    let mut f = tempfile::Builder::new().suffix(".jcl").tempfile().unwrap();
    f.write_all(src.as_bytes()).unwrap();
    Script(f)
}

const OK: &str = "ring R = poly(QQ, [x, y]) / ideal(x^5, x*y)
let J = jacobian(R)
assert_equal(J, ideal(x, y))
groebner(ideal(R, x^2 + y, x*y))
";

#[test]
fn exit_codes() {
    let ok = script(OK);
    assert_eq!(jacal(&["run", ok.path()]).status.code(), Some(0));

    let fail = script("ring R = poly(QQ, [x]) / ideal(x^2)\nassert is_zero(ideal(x))\n");
    let out = jacal(&["run", fail.path()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));

    let undeclared = script("ring R = poly(QQ, [x])\ngroebner(ideal(S, x))\n");
    let out = jacal(&["run", undeclared.path(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "error");
    assert!(v["diagnostic"]["span"].is_object(), "{v}");

    let gf4 = script("ring R = poly(GF(4), [x])\n");
    assert_eq!(jacal(&["run", gf4.path()]).status.code(), Some(2));

    assert_eq!(jacal(&["run", "/nonexistent/file.jcl"]).status.code(), Some(2));
}

#[test]
fn json_schema_and_key_order() {
    let ok = script(OK);
    let out = jacal(&["run", ok.path(), "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let top: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(top, ["commands", "status"]);
    assert_eq!(v["status"], "ok");
    for c in v["commands"].as_array().unwrap() {
        let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["cmd", "span", "result"]);
    }
    // Stable output: a second run is byte-identical.
    let again = jacal(&["run", ok.path(), "--format", "json"]);
    assert_eq!(text.as_bytes(), &again.stdout[..]);
}

fn json_strings(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| json_strings(x, out)),
        Value::Object(o) => o.values().for_each(|x| json_strings(x, out)),
        _ => {}
    }
}

#[test]
fn json_and_text_share_canonical_strings() {
    let ok = script(OK);
    let text = String::from_utf8(jacal(&["run", ok.path()]).stdout).unwrap();
    let v: Value = serde_json::from_slice(&jacal(&["run", ok.path(), "--format", "json"]).stdout).unwrap();
    let mut strings = Vec::new();
    for c in v["commands"].as_array().unwrap() {
        json_strings(&c["result"], &mut strings);
    }
    let polys: Vec<&String> = strings.iter().filter(|s| s.contains('x')).collect();
    assert!(!polys.is_empty());
    for p in polys {
        assert!(text.contains(p.as_str()), "{p:?} missing from text output:\n{text}");
    }
}

#[test]
fn order_and_smax_flags() {
    let src = script("ring R = poly(QQ, [x, y])\ngroebner(ideal(R, x^2 - y, x*y - 1))\n");
    let grevlex = jacal(&["run", src.path()]);
    let lex = jacal(&["run", src.path(), "--order", "lex"]);
    assert!(grevlex.status.success() && lex.status.success());
    assert_ne!(grevlex.stdout, lex.stdout);
    let lex_text = String::from_utf8(lex.stdout).unwrap();
    assert!(lex_text.contains("y^3 - 1"), "{lex_text}");

    let exp = script(
        "ring R = poly(QQ, [x, y]) / ideal(x^5, x*y)
module M = quotient(R, x^3)
assert_equal(annihilation_exponent(R, jacobian(R)), 2)
",
    );
    assert_eq!(jacal(&["run", exp.path()]).status.code(), Some(0));
    let out = jacal(&["run", exp.path(), "--smax", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("exceeded(1)"));
}

#[test]
fn corpus_files_run_clean() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let out = jacal(&["run", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}:\n{}", path.display(), String::from_utf8_lossy(&out.stdout));
        n += 1;
    }
    assert_eq!(n, 4);
    let out = jacal(&["corpus"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.starts_with("INFO")), "{text}");
    let v: Value = serde_json::from_slice(&jacal(&["corpus", "--format", "json"]).stdout).unwrap();
    assert!(v.is_object() || v.is_array());
}

#[test]
fn doubled_variables_stay_internal() {
    let src = script(
        "ring R = poly(QQ, [x, y, z]) / ideal(x^2 - y^2, x^2 - z^2, x*y, x*z, y*z)
enveloping_ring(R)
assert tor_vanishing(R)
",
    );
    let out = jacal(&["run", src.path()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("vector_dim: 25"), "{text}");
    let doubled = ["xp", "yp", "zp", "x_p", "y_p", "z_p"];
    let leaked = text
        .split(|c: char| !c.is_ascii_alphanumeric() && c != '_')
        .any(|w| doubled.contains(&w));
    assert!(!leaked, "{text}");
}
