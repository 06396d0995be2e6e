use std::process::{Command, Output};

use cyclic_ic::cli::parse_json;
use cyclic_ic::Family;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-ic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TWO_USER: [&str; 8] = [
    "--k",
    "2",
    "--snr-db",
    "11.76,11.76",
    "--inr-db",
    "4.77,4.77",
    "--split",
    "etw",
];

#[test]
fn region_has_five_families_and_is_byte_stable() {
    let mut args = vec!["region"];
    args.extend(TWO_USER);
    let a = cli(&args);
    assert_eq!(a.status.code(), Some(0));
    let sys = parse_json(stdout(&a).trim_end()).unwrap();
    assert_eq!(sys.vars, vec!["R_1", "R_2"]);
    assert_eq!(sys.families().len(), 5);
    assert_eq!(stdout(&cli(&args)), stdout(&a));
}

#[test]
fn region_subcommands_write_files() {
    let dir = std::env::temp_dir().join(format!("cyclic-ic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (cmd, k, snr, inr) in [
        ("outer", "3", "20,20,20", "10,10,10"),
        ("ts3", "3", "20,20,20", "10,10,10"),
        ("strong", "3", "10,10,10", "10,10,10"),
    ] {
        let path = dir.join(format!("{cmd}.json"));
        let o = cli(&[
            cmd,
            "--k",
            k,
            "--snr-db",
            snr,
            "--inr-db",
            inr,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{cmd}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(o.stdout.is_empty());
        let sys = parse_json(std::fs::read_to_string(&path).unwrap().trim_end()).unwrap();
        assert_eq!(sys.dim(), 3);
        assert!(sys.rows.iter().any(|r| r.family == Family::Nonneg));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_fm_passes() {
    let o = cli(&["verify-fm", "--k", "3", "--trials", "10", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("failures=0"));
}

#[test]
fn gdof_csv() {
    let o = cli(&[
        "gdof",
        "--k",
        "3",
        "--alpha-min",
        "0",
        "--alpha-max",
        "2",
        "--steps",
        "5",
        "--snr-db",
        "80",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("alpha,snr_db,dsym_lower,dsym_upper,dsym_formula")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    let formula: Vec<f64> = rows.iter().map(|r| r[4]).collect();
    assert_eq!(formula, vec![1.0, 0.5, 0.5, 0.75, 1.0]);
    for r in &rows {
        assert!(r[2] <= r[3] + 1e-9);
        assert!((r[2] - r[4]).abs() <= 0.1 && (r[3] - r[4]).abs() <= 0.1);
    }
}

fn polygon(text: &str) -> Vec<(f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y"));
    lines
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

fn signed_area(p: &[(f64, f64)]) -> f64 {
    (0..p.len())
        .map(|t| {
            let (a, b) = (p[t], p[(t + 1) % p.len()]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum::<f64>()
        / 2.0
}

#[test]
fn slices_are_counterclockwise() {
    let mut args = vec!["slice", "--i", "1", "--j", "2"];
    args.extend(TWO_USER);
    let o = cli(&args);
    assert_eq!(o.status.code(), Some(0));
    let p = polygon(&stdout(&o));
    assert!((3..=7).contains(&p.len()));
    assert!(signed_area(&p) > 0.0);

    // strong two-user region: R_i <= log2(1 + SNR_i), R_1 + R_2 <= log2(1 + SNR_1 + INR_2)
    let o = cli(&[
        "slice", "--region", "strong", "--i", "1", "--j", "2", "--k", "2", "--snr-db", "10,10",
        "--inr-db", "15,15",
    ]);
    let p = polygon(&stdout(&o));
    assert_eq!(p.len(), 5);

    let o = cli(&[
        "slice", "--i", "1", "--j", "3", "--fix", "100", "--k", "3", "--snr-db", "20,20,20",
        "--inr-db", "10,10,10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x,y\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty"));
}

#[test]
fn gap_and_inequality_reports() {
    let mut args = vec!["gap"];
    args.extend(TWO_USER);
    let o = cli(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["regime"], "weak");
    assert!(v["certified_b"].as_f64().unwrap() <= 2.0);
    assert_eq!(v["families"].as_array().unwrap().len(), 5);

    let o = cli(&[
        "gap", "--ts3", "--k", "3", "--snr-db", "30,25,20", "--inr-db", "12,8,15",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let mut args = vec!["check-ineq"];
    args.extend(TWO_USER);
    let o = cli(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn exit_codes() {
    // split that is not ETW breaks the gamma - g = 1 identity
    let o = cli(&[
        "check-ineq",
        "--k",
        "2",
        "--snr-db",
        "20,20",
        "--inr-db",
        "10,10",
        "--split",
        "private-only",
    ]);
    assert_eq!(o.status.code(), Some(2));

    for bad in [
        vec![
            "region", "--k", "3", "--snr-db", "10,10", "--inr-db", "3,3,3",
        ],
        vec!["region", "--k", "1", "--snr-db", "10", "--inr-db", "3"],
        vec![
            "region", "--k", "2", "--snr-db", "10,10", "--inr-db", "3,3", "--split", "20,0",
        ],
        vec!["ts3", "--k", "2", "--snr-db", "10,10", "--inr-db", "3,3"],
        vec!["strong", "--k", "2", "--snr-db", "10,10", "--inr-db", "3,3"],
        vec!["gap", "--k", "2", "--snr-db", "10,10", "--inr-db", "3,13"],
        vec![
            "slice", "--i", "0", "--j", "2", "--k", "2", "--snr-db", "10,10", "--inr-db", "3,3",
        ],
        vec![
            "gdof",
            "--k",
            "3",
            "--alpha-min",
            "0",
            "--alpha-max",
            "2",
            "--steps",
            "0",
            "--snr-db",
            "80",
        ],
        vec!["nonsense"],
        vec!["region", "--k", "two"],
    ] {
        assert_eq!(cli(&bad).status.code(), Some(1), "{bad:?}");
    }
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
}
