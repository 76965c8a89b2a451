use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mfdcca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfdcca"))
        .args(args)
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn prices() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/synthetic_prices.csv")
        .display()
        .to_string()
}

/// Two cascades written through the `binomial` subcommand and pasted into
/// one two-column file.
fn cascade_pair(dir: &Path, stages: &str) -> PathBuf {
    let mut cols = Vec::new();
    for p in ["0.3", "0.4"] {
        let o = mfdcca(&[
            "binomial", "--stages", stages, "--p", p, "--order", "left-p",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        cols.push(String::from_utf8(o.stdout).unwrap());
    }
    let mut body = String::from("x,y\n");
    for (a, b) in cols[0].lines().skip(1).zip(cols[1].lines().skip(1)) {
        body.push_str(&format!("{a},{b}\n"));
    }
    let path = dir.join("pair.csv");
    std::fs::write(&path, body).unwrap();
    path
}

fn assert_single_line_error(o: &Output, needle: &str) {
    assert!(!o.status.success());
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(o);
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains(needle), "{err}");
}

#[test]
fn missing_column_is_a_one_line_error() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("o");
    let o = mfdcca(&[
        "--input",
        &prices(),
        "--column",
        "cocoa",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_single_line_error(&o, "cocoa");
    assert!(!out.exists());
}

#[test]
fn cross_algorithm_needs_two_inputs() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("o");
    let o = mfdcca(&[
        "--input",
        &prices(),
        "--column",
        "sugar",
        "--algorithms",
        "MFDFA,PS",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_single_line_error(&o, "second series");
}

#[test]
fn bad_options_rejected() {
    let p = prices();
    for (args, needle) in [
        (
            vec!["--input", &p, "--column", "sugar", "--algorithms", "XYZ"],
            "XYZ",
        ),
        (
            vec!["--input", &p, "--column", "sugar", "--format", "xml"],
            "xml",
        ),
        (vec!["--input", "/nonexistent/file.csv"], "nonexistent"),
    ] {
        assert_single_line_error(&mfdcca(&args), needle);
    }
}

#[test]
fn binomial_subcommand_writes_cascade() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("c.csv");
    let o = mfdcca(&[
        "binomial",
        "--stages",
        "2",
        "--p",
        "0.3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let body = std::fs::read_to_string(&path).unwrap();
    let values: Vec<f64> = body.lines().skip(1).map(|l| l.parse().unwrap()).collect();
    assert_eq!(body.lines().next(), Some("value"));
    let want = [0.49, 0.21, 0.21, 0.09];
    for (v, w) in values.iter().zip(want) {
        assert!((v - w).abs() < 1e-15, "{values:?}");
    }
    let o = mfdcca(&["binomial", "--stages", "0", "--p", "0.3"]);
    assert!(!o.status.success());
}

fn ols_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[test]
fn plotted_fluctuations_refit_to_reported_slopes() {
    let tmp = TempDir::new().unwrap();
    let input = cascade_pair(tmp.path(), "12");
    let out = tmp.path().join("o");
    let o = mfdcca(&[
        "--input",
        input.to_str().unwrap(),
        "--column",
        "x,y",
        "--q-min",
        "-4",
        "--q-max",
        "4",
        "--q-step",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("summary.txt"));

    let fluct = std::fs::read_to_string(out.join("fluctuations.csv")).unwrap();
    let spectra = std::fs::read_to_string(out.join("spectra.csv")).unwrap();
    let mut checked = 0;
    for line in spectra.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (alg, q) = (f[0], f[1]);
        let points: Vec<(f64, f64)> = fluct
            .lines()
            .skip(1)
            .map(|l| l.split(',').collect::<Vec<_>>())
            .filter(|c| c[0] == alg && c[2] == q && c[4] == "true")
            .map(|c| (c[1].parse::<f64>().unwrap(), c[3].parse::<f64>().unwrap()))
            .filter(|&(_, v)| v > 0.0)
            .map(|(n, v)| (n.ln(), v.ln()))
            .collect();
        if f[2].is_empty() {
            assert!(points.len() < 5, "{alg} q={q}");
            continue;
        }
        let h: f64 = f[2].parse().unwrap();
        let refit = ols_slope(&points);
        assert!(
            (refit - h).abs() <= 1e-12 * h.abs().max(1.0),
            "{alg} q={q}: {refit} vs {h}"
        );
        checked += 1;
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn summary_has_table_rows() {
    let tmp = TempDir::new().unwrap();
    let input = cascade_pair(tmp.path(), "10");
    let out = tmp.path().join("o");
    let o = mfdcca(&[
        "--input",
        input.to_str().unwrap(),
        "--column",
        "x,y",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!out.join("fluctuations.csv").exists());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    let names: Vec<&str> = json["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["algorithm"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "MFDFA average",
            "MFDXA",
            "ABS",
            "MFCCA",
            "PS",
            "MS",
            "PB",
            "MB",
            "PP",
            "PM",
            "MP",
            "MM"
        ]
    );
    let ms = &json["rows"][5];
    assert_eq!(ms["pairs_pct"].as_f64(), Some(0.0));
    assert!(ms["H"].is_null());
    assert_eq!(ms["low_coverage"], true);
    let text = std::fs::read_to_string(out.join("summary.txt")).unwrap();
    assert!(text.contains("low coverage"));
}

#[test]
fn two_files_joined_on_dates() {
    let tmp = TempDir::new().unwrap();
    let src = std::fs::read_to_string(prices()).unwrap();
    let (mut a, mut b) = (String::from("date,price\n"), String::from("date,price\n"));
    for (i, line) in src.lines().skip(1).enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        // drop a few dates from each side so the join has work to do
        if i % 97 != 5 {
            a.push_str(&format!("{},{}\n", f[0], f[1]));
        }
        if i % 89 != 7 {
            b.push_str(&format!("{},{}\n", f[0], f[2]));
        }
    }
    let (pa, pb) = (tmp.path().join("sugar.csv"), tmp.path().join("ethanol.csv"));
    std::fs::write(&pa, a).unwrap();
    std::fs::write(&pb, b).unwrap();
    let out = tmp.path().join("o");
    let o = mfdcca(&[
        "--input",
        pa.to_str().unwrap(),
        "--input2",
        pb.to_str().unwrap(),
        "--column",
        "price",
        "--date-column",
        "date",
        "--returns",
        "log",
        "--algorithms",
        "MFDFA,MFDXA",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["series"]["labels"][0], "sugar:price");
    assert_eq!(m["series"]["labels"][1], "ethanol:price");
    assert_eq!(m["load"]["date_joined"], true);
    // at least the 14 and 13 dates removed from the other side; missing
    // values add a few more
    let unmatched = &m["load"]["unmatched_dates"];
    assert!(unmatched[0].as_u64().unwrap() >= 14 && unmatched[1].as_u64().unwrap() >= 13);
    let diags: Vec<&str> = m["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["algorithm"].as_str().unwrap())
        .collect();
    assert_eq!(diags, ["MFDFA:sugar:price", "MFDFA:ethanol:price", "MFDXA"]);
}
