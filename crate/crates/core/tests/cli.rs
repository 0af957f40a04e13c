use std::path::PathBuf;
use std::process::{Command, Output};

fn gts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gts-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let (a, b) = (scratch("a.csv"), scratch("b.csv"));
    for path in [&a, &b] {
        let out = gts(&[
            "interp",
            "--f",
            "sin(x)",
            "--nodes",
            "0:2,0.5:1,1:2",
            "--domain",
            "0:1",
            "--grid",
            "257",
            "--csv",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn interp_csv_rows_respect_bound() {
    for f in ["exp(x)", "sin(x)", "1/(1+x^2)"] {
        for nodes in ["0:2,1:2", "0:3", "0:1,0.25:2,0.75:1,1:2", "0.5:6"] {
            let out = gts(&[
                "interp", "--f", f, "--nodes", nodes, "--domain", "0:1", "--grid", "513",
            ]);
            assert_eq!(out.status.code(), Some(0), "{f} {nodes}");
            let text = String::from_utf8(out.stdout).unwrap();
            assert!(text.contains("x,f,g,abs_err,bound\n"));
            let body = &text[text.find("x,f,g").unwrap()..];
            let table = rows(body);
            assert_eq!(table.len(), 513);
            for row in table {
                let err: f64 = row[3].parse().unwrap();
                let bound: f64 = row[4].parse().unwrap();
                assert!(err <= bound, "{f} {nodes} x={}: {err} > {bound}", row[0]);
            }
        }
    }
}

#[test]
fn rational_csv_marks_poles() {
    let out = gts(&[
        "rational",
        "--f",
        "1/(x-0.3)",
        "--nodes",
        "0:1,1:1",
        "--deg-num",
        "0",
        "--deg-den",
        "1",
        "--domain",
        "0:1",
        "--grid",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let body = &text[text.find("x,f,u_over_v,abs_err,bound,pole").unwrap()..];
    let table = rows(body);
    // five grid rows plus the pole at 0.3 between 0.25 and 0.5
    assert_eq!(table.len(), 6);
    let pole: Vec<_> = table.iter().filter(|r| r[5] == "pole").collect();
    assert_eq!(pole.len(), 1);
    // the location is kept; every value field is empty
    let at: f64 = pole[0][0].parse().unwrap();
    assert!((at - 0.3).abs() < 1e-12);
    assert!(pole[0][1..5].iter().all(String::is_empty));
    for row in table.iter().filter(|r| r[5].is_empty()) {
        let err: f64 = row[3].parse().unwrap();
        let bound: f64 = row[4].parse().unwrap();
        assert!(err <= bound);
    }
}

#[test]
fn json_mirror_has_all_sections() {
    let path = scratch("out.json");
    let out = gts(&[
        "interp",
        "--f",
        "exp(x)",
        "--nodes",
        "0:2,1:2",
        "--domain",
        "0:1",
        "--eval",
        "0.25",
        "--witness",
        "0.5",
        "--json-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(v["config"]["function"], "exp(x)");
    assert_eq!(v["coefficients"]["g"].as_array().unwrap().len(), 4);
    assert!(v["coefficients"]["g"][0].is_string());
    assert!(!v["table"].as_array().unwrap().is_empty());
    let c = v["diagnostics"]["witness"]["c"].as_f64().unwrap();
    assert!((c - 0.5166394823408522).abs() < 1e-6);
    assert_eq!(v["diagnostics"]["rolle"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (
            &[
                "interp", "--f", "exp(x)", "--nodes", "0:2,2:1", "--domain", "0:1",
            ],
            4,
        ),
        (
            &[
                "interp", "--f", "exp(x)", "--nodes", "0:2,0:1", "--domain", "0:1",
            ],
            2,
        ),
        (
            &[
                "interp", "--f", "exp(x)", "--nodes", "0:0", "--domain", "0:1",
            ],
            2,
        ),
        (
            &[
                "interp", "--f", "exp(x)", "--nodes", "0:1", "--domain", "1:0",
            ],
            4,
        ),
        (
            &[
                "interp", "--f", "log(x)", "--nodes", "-1:1,1:1", "--domain", "-1:1", "--eval",
                "0.5",
            ],
            4,
        ),
        (
            &[
                "rational",
                "--f",
                "1/x",
                "--nodes",
                "0:1,1:1",
                "--deg-num",
                "0",
                "--deg-den",
                "1",
            ],
            4,
        ),
        (
            &[
                "rational",
                "--f",
                "x",
                "--nodes",
                "0:1,1:1",
                "--deg-num",
                "0",
                "--deg-den",
                "1",
            ],
            3,
        ),
        (&["rolle", "--nodes", "0:2,a:1"], 2),
        (&["rolle", "--nodes", "-1:2,1:1"], 0),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let out = gts(args);
        assert_eq!(
            out.status.code(),
            Some(*code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(out.stderr.is_empty(), *code == 0, "{args:?}");
    }
}

#[test]
fn missing_domain_defaults_with_warning() {
    let out = gts(&[
        "interp", "--f", "exp(x)", "--nodes", "0:2,1:2", "--eval", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("--domain not given"), "{stderr}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("bound = 0.0074328"), "{stdout}");
}

#[test]
fn backends_agree_on_polynomial_data() {
    let exact = gts(&[
        "interp",
        "--f",
        "x^5 - x",
        "--nodes",
        "0:2,1:2",
        "--domain",
        "0:1",
        "--backend",
        "exact",
    ]);
    let float = gts(&[
        "interp", "--f", "x^5 - x", "--nodes", "0:2,1:2", "--domain", "0:1",
    ]);
    assert_eq!(
        String::from_utf8(exact.stdout).unwrap(),
        "g = [0, -1, -2, 3]\n"
    );
    assert_eq!(
        String::from_utf8(float.stdout).unwrap(),
        "g = [0.0, -1.0, -2.0, 3.0]\n"
    );
}
