use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_udg-clique"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("udg-clique-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(name: &str, text: &str) -> String {
    let path = scratch(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const TRIANGLES: &str = "# two far triangles\n0 0\n0.2 0\n0.1 0.17\n5 0\n5.2 0\n5.1 0.17\n";

#[test]
fn solve_general_reports_trace() {
    let pts = write("tri.txt", TRIANGLES);
    let r = json(&run(&["solve", "--algo", "general", &pts]));
    assert_eq!(r["clique_size"], 3);
    assert_eq!(r["indices"], serde_json::json!([0, 1, 2]));
    assert_eq!(r["algorithm"], "general");
    let ks: Vec<u64> = r["probe_trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["k"].as_u64().unwrap())
        .collect();
    assert_eq!(ks, vec![1, 2, 4, 3]);
}

#[test]
fn decide_reports_witness() {
    let pts = write("tri-decide.txt", TRIANGLES);
    let yes = json(&run(&["decide", "--k", "3", &pts]));
    assert_eq!(yes["found"], true);
    assert_eq!(yes["witness"].as_array().unwrap().len(), 3);
    let no = json(&run(&["decide", "--k", "4", &pts]));
    assert_eq!(no["found"], false);
    assert!(no["witness"].is_null());
}

#[test]
fn generated_convex_matches_oracle() {
    for seed in [7, 8, 9] {
        let out = scratch(&format!("convex-{seed}.txt"));
        let out = out.to_str().unwrap();
        let seed = seed.to_string();
        let st = run(&[
            "gen", "--family", "convex", "--n", "40", "--param", "0.5", "--seed", &seed, "--out",
            out,
        ]);
        assert!(st.status.success());
        let fast = json(&run(&["solve", "--algo", "convex", "--seed", &seed, out]));
        let exact = json(&run(&["solve", "--algo", "brute-force", out]));
        assert_eq!(fast["clique_size"], exact["clique_size"]);
    }
    // A wider circle keeps the answer below n.
    let out = scratch("convex-wide.txt");
    let out = out.to_str().unwrap();
    run(&[
        "gen", "--family", "convex", "--n", "40", "--param", "1.5", "--seed", "3", "--out", out,
    ]);
    let fast = json(&run(&[
        "solve",
        "--algo",
        "convex",
        "--threshold-override",
        "1",
        out,
    ]));
    let exact = json(&run(&["solve", "--algo", "brute-force", out]));
    assert_eq!(fast["clique_size"], exact["clique_size"]);
    assert!(exact["clique_size"].as_u64().unwrap() < 40);
}

#[test]
fn gen_is_deterministic() {
    let a = run(&[
        "gen", "--family", "uniform", "--n", "25", "--param", "2", "--seed", "11",
    ]);
    let b = run(&[
        "gen", "--family", "uniform", "--n", "25", "--param", "2", "--seed", "11",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let lines = String::from_utf8(a.stdout).unwrap();
    assert_eq!(lines.lines().filter(|l| !l.starts_with('#')).count(), 25);
}

#[test]
fn convex_given_needs_anchor() {
    let pts = write(
        "hex.txt",
        "0.45 0\n0.22 0.39\n-0.23 0.38\n-0.45 0.01\n-0.22 -0.39\n0.23 -0.38\n",
    );
    assert_eq!(
        run(&["solve", "--algo", "convex-given", &pts])
            .status
            .code(),
        Some(1)
    );
    let r = json(&run(&[
        "solve",
        "--algo",
        "convex-given",
        "--anchor",
        "2",
        &pts,
    ]));
    assert_eq!(r["clique_size"], 6);
    assert!(r["update_counts"]["upper_run"].as_u64().unwrap() > 0);
}

#[test]
fn verify_exit_codes() {
    let pts = write("tri-verify.txt", TRIANGLES);
    let good = write("good.txt", "0 1 2\n");
    let bad = write("bad.txt", "0 3\n");
    let out_of_range = write("oor.txt", "0 9\n");
    assert_eq!(
        json(&run(&["verify", "--clique", &good, &pts]))["valid"],
        true
    );
    let r = run(&["verify", "--clique", &bad, &pts]);
    assert_eq!(r.status.code(), Some(2));
    assert_eq!(
        serde_json::from_slice::<Value>(&r.stdout).unwrap()["valid"],
        false
    );
    assert_eq!(
        run(&["verify", "--clique", &out_of_range, &pts])
            .status
            .code(),
        Some(1)
    );

    let report = run(&["solve", "--algo", "lens", &pts]);
    let report = write("report.json", &String::from_utf8(report.stdout).unwrap());
    assert_eq!(
        json(&run(&["verify", "--clique", &report, &pts]))["size"],
        3
    );
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--bogus", "x"]).status.code(), Some(1));
    assert_eq!(
        run(&["solve", "/nonexistent/points.txt"]).status.code(),
        Some(1)
    );
    let broken = write("broken.txt", "0 0\n1 x\n");
    let r = run(&["solve", &broken]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 2"));
    let dup = write("dup.txt", "0 0\n0 0\n");
    assert_eq!(run(&["solve", &dup]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn plot_highlights_clique() {
    let pts = write("tri-plot.txt", "0 0\n0.5 0\n0.25 0.4\n");
    let plain = run(&["plot", &pts]);
    let plain = String::from_utf8(plain.stdout).unwrap();
    assert!(plain.starts_with("<svg"));
    assert_eq!(plain.matches("class=\"clique\"").count(), 0);

    let svg = scratch("tri.svg");
    let st = run(&[
        "plot",
        &pts,
        "--solve",
        "general",
        "--lens",
        "0",
        "1",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert!(st.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"clique\"").count(), 3);
    assert!(text.contains("class=\"lens\""));
}

#[test]
fn bench_csv_is_stable_across_thread_counts() {
    let spec = write(
        "bench.json",
        r#"{"families": [{"family": "uniform_square", "n": [20, 30], "param": 2.0,
            "algos": ["general", "lens"], "seeds": [1, 2, 3, 4, 5]}], "timeout_s": 30}"#,
    );
    let csv_at = |threads: &str| -> Vec<String> {
        let out = bin()
            .args(["bench", "--spec", &spec])
            .env("UDG_CLIQUE_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f[6] = "";
                f.join(",")
            })
            .collect()
    };
    let one = csv_at("1");
    assert_eq!(
        one[0],
        "family,n,param,algo,seed,clique_size,,probes,updates"
    );
    assert_eq!(one.len(), 1 + 2 * 2 * 6);
    assert_eq!(one, csv_at("4"));
}
