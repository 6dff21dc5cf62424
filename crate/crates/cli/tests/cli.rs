use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn kostantq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kostantq"))
        .args(args)
        .env_remove("KOSTANTQ_ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_b4_oracle_plain() {
    let o = kostantq(&[
        "compute", "--family", "B", "--rank", "4", "--method", "oracle", "--format", "plain",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("q^7 + 3q^6 + 8q^5 + 11q^4 + 11q^3 + 5q^2 + q")
    );
    let meta: Vec<&str> = lines.collect();
    assert_eq!(
        meta,
        [
            "# family: B",
            "# rank: 4",
            "# method: oracle",
            "# degree: 7",
            "# value_at_1: 40"
        ]
    );
}

#[test]
fn compute_a1_default_method() {
    let o = kostantq(&["compute", "--family", "A", "--rank", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("q"));
    assert!(stdout(&o).contains("# method: recurrence"));
}

#[test]
fn compute_rank_guard() {
    let o = kostantq(&["compute", "--family", "D", "--rank", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("type D requires rank >= 4"),
        "{}",
        stderr(&o)
    );
    assert!(stdout(&o).is_empty());
}

#[test]
fn compute_bad_arguments_exit_2() {
    assert_eq!(
        kostantq(&["compute", "--family", "E", "--rank", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        kostantq(&["compute", "--family", "B"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kostantq(&["compute", "--family", "B", "--rank", "1", "--method", "closed"])
            .status
            .code(),
        Some(2)
    );
    let a = kostantq(&[
        "compute", "--family", "A", "--rank", "3", "--method", "genfun",
    ]);
    assert_eq!(a.status.code(), Some(2));
    assert!(stderr(&a).contains("type A"));
}

#[test]
fn compute_methods_agree_across_formats() {
    for family in ["B", "C", "D"] {
        let mut seen = Vec::new();
        for method in ["oracle", "recurrence", "genfun", "closed"] {
            let o = kostantq(&[
                "compute", "--family", family, "--rank", "6", "--method", method, "--format",
                "json",
            ]);
            assert_eq!(o.status.code(), Some(0));
            let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
            seen.push(v["coefficients"].clone());
        }
        assert!(seen.windows(2).all(|w| w[0] == w[1]), "{family}: {seen:?}");
    }
}

#[test]
fn compute_json_schema() {
    let o = kostantq(&[
        "compute", "--family", "D", "--rank", "5", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "D");
    assert_eq!(v["rank"], 5);
    assert_eq!(v["method"], "recurrence");
    assert_eq!(v["degree"], 7);
    assert_eq!(v["value_at_1"], "55");
    let coeffs: Vec<&str> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["0", "1", "6", "15", "17", "11", "4", "1"]);
}

#[test]
fn compute_json_large_coefficients_are_strings() {
    let o = kostantq(&[
        "compute", "--family", "B", "--rank", "40", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 80);
    assert!(coeffs.iter().all(Value::is_string));
    assert!(coeffs.iter().any(|c| c.as_str().unwrap().len() > 20));
}

#[test]
fn compute_csv() {
    let o = kostantq(&["compute", "--family", "C", "--rank", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "family,rank,method,degree,value_at_1,c0,c1,c2,c3,c4,c5\nC,3,recurrence,5,10,0,1,2,4,2,1\n"
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "compute", "--family", "B", "--rank", "9", "--method", "oracle", "--format", "json",
        ][..],
        &[
            "enumerate",
            "--family",
            "C",
            "--rank",
            "4",
            "--format",
            "json",
        ][..],
        &["verify", "--max-rank", "7"][..],
    ] {
        assert_eq!(kostantq(args).stdout, kostantq(args).stdout, "{args:?}");
    }
}

#[test]
fn enumerate_b4_table_layout() {
    let o = kostantq(&[
        "enumerate",
        "--family",
        "B",
        "--rank",
        "4",
        "--limit",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let headers: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with(' ') && !l.starts_with('#'))
        .collect();
    assert_eq!(
        headers,
        [
            "7 parts (1)",
            "6 parts (3)",
            "5 parts (8)",
            "4 parts (11)",
            "3 parts (11)",
            "2 parts (5)",
            "1 part (1)"
        ]
    );
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("  ")).collect();
    assert_eq!(rows.len(), 40);
    assert_eq!(rows[0].trim(), "e_1  e_2  e_2  e_3  e_3  e_4  e_4");
    assert_eq!(rows[39].trim(), "e_1+2e_2+2e_3+2e_4");
}

#[test]
fn enumerate_c2_json() {
    let o = kostantq(&[
        "enumerate",
        "--family",
        "C",
        "--rank",
        "2",
        "--limit",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 3);
    let total: usize = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["partitions"].as_array().unwrap().len())
        .sum();
    assert_eq!(total, 3);
}

#[test]
fn enumerate_limit_exit_3_with_count() {
    let o = kostantq(&["enumerate", "--family", "B", "--rank", "8", "--limit", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let c = kostantq(&["compute", "--family", "B", "--rank", "8"]);
    let count = stdout(&c)
        .lines()
        .find_map(|l| l.strip_prefix("# value_at_1: "))
        .unwrap()
        .to_owned();
    assert!(
        stderr(&o).contains(&format!("has {count} partitions")),
        "{}",
        stderr(&o)
    );
}

#[test]
fn series_examples() {
    let c = kostantq(&["series", "--family", "C", "--terms", "3"]);
    assert_eq!(
        stdout(&c),
        "q\nq^3 + q^2 + q\nq^5 + 2q^4 + 4q^3 + 2q^2 + q\n"
    );
    let b = kostantq(&["series", "--family", "B", "--terms", "5", "--q1"]);
    assert_eq!(stdout(&b), "1\n3\n11\n40\n145\n");
    let d = kostantq(&["series", "--family", "D", "--terms", "4"]);
    assert_eq!(stdout(&d), "0\n0\n0\nq^5 + 3q^4 + 6q^3 + 4q^2 + q\n");
}

#[test]
fn series_variants() {
    let h = kostantq(&[
        "series",
        "--family",
        "B",
        "--terms",
        "3",
        "--variant",
        "hooked",
    ]);
    assert_eq!(stdout(&h), "0\nq\nq^3 + 2q^2 + q\n");
    let bad = kostantq(&[
        "series",
        "--family",
        "C",
        "--terms",
        "3",
        "--variant",
        "hooked",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(
        kostantq(&["series", "--family", "B", "--terms", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn series_json_and_csv() {
    let o = kostantq(&[
        "series", "--family", "C", "--terms", "4", "--q1", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"], serde_json::json!(["1", "3", "10", "35"]));
    let csv = kostantq(&["series", "--family", "C", "--terms", "2", "--format", "csv"]);
    assert_eq!(stdout(&csv), "index,c0,c1,c2,c3\n1,0,1,0,0\n2,0,1,1,1\n");
}

#[test]
fn verify_default_passes() {
    let o = kostantq(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for r in reports {
        assert_eq!(r["status"], "pass");
        assert!(r.get("discrepancy").is_none());
    }
    assert_eq!(reports[0]["rank_range"], serde_json::json!([1, 16]));
    assert_eq!(reports[3]["rank_range"], serde_json::json!([4, 12]));
}

#[test]
fn verify_c8_oracle_vs_closed() {
    let o = kostantq(&[
        "verify",
        "--family",
        "C",
        "--max-rank",
        "8",
        "--methods",
        "oracle,closed",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v[0]["methods"],
        serde_json::json!(["oracle", "closed_form"])
    );
    assert_eq!(v[0]["skips"], serde_json::json!([]));
}

#[test]
fn verify_injected_fault_reports_minimal_rank() {
    let o = kostantq(&[
        "verify",
        "--family",
        "B",
        "--max-rank",
        "10",
        "--inject-fault",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["status"], "fail");
    assert_eq!(r["discrepancy"]["rank"], 6);
    assert_eq!(
        r["discrepancy"]["methods"],
        serde_json::json!(["oracle", "recurrence"])
    );
}

#[test]
fn verify_budget_sources() {
    let skips = |o: &Output| -> usize {
        let v: Value = serde_json::from_str(&stdout(o)).unwrap();
        v[0]["skips"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|s| s["method"] == "oracle")
            .count()
    };
    let base = [
        "verify",
        "--family",
        "C",
        "--max-rank",
        "10",
        "--methods",
        "oracle,recurrence",
    ];

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "# smaller budget\noracle_budget = 6\noracle_budget.C = 7"
    )
    .unwrap();
    let path = file.path().to_str().unwrap();

    let from_file = kostantq(&[&base[..], &["--config", path]].concat());
    assert_eq!(skips(&from_file), 3);

    let from_flag = kostantq(&[&base[..], &["--config", path, "--oracle-budget", "9"]].concat());
    assert_eq!(skips(&from_flag), 1);

    let from_env = Command::new(env!("CARGO_BIN_EXE_kostantq"))
        .args(base)
        .env("KOSTANTQ_ORACLE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(0));
    assert_eq!(skips(&from_env), 5);

    let bad_env = Command::new(env!("CARGO_BIN_EXE_kostantq"))
        .args(base)
        .env("KOSTANTQ_ORACLE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn verify_bad_config_exit_2() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "oracle_budget twelve").unwrap();
    let o = kostantq(&["verify", "--config", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
    assert_eq!(
        kostantq(&["verify", "--family", "D", "--max-rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        kostantq(&["verify", "--methods", "oracle,magic"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_plain_and_csv() {
    let o = kostantq(&[
        "verify",
        "--family",
        "B,C",
        "--max-rank",
        "5",
        "--format",
        "plain",
    ]);
    assert_eq!(
        stdout(&o),
        "B ranks 1..5: pass (1 skipped)\nC ranks 1..5: pass (0 skipped)\n"
    );
    let c = kostantq(&[
        "verify",
        "--family",
        "D",
        "--max-rank",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&c),
        "family,min_rank,max_rank,status,discrepancy_rank,skips\nD,4,6,pass,,0\n"
    );
}
