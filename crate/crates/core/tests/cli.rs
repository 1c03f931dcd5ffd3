use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use smallgon::cli::document::{vertices_from_csv, PolygonDocument};
use smallgon::geometry::{diameter, perimeter, width, Polygon};
use smallgon::solver::{nlp, solve_dn_star_with, SolveOptions};
use smallgon::OptimizationResult;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_smallgon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn summary_fields(line: &str) -> (String, usize, f64, f64, f64) {
    let f: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(f.len(), 5, "{line:?}");
    (
        f[0].to_string(),
        f[1].parse().unwrap(),
        f[2].parse().unwrap(),
        f[3].parse().unwrap(),
        f[4].parse().unwrap(),
    )
}

#[test]
fn construct_dn16_summary() {
    let o = run(&["construct", "--family", "dn", "--n", "16"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert_eq!(line, "dn 16 3.1365475080 0.9951068324 1.0000000000\n");
    let (_, _, l, w, _) = summary_fields(&line);
    assert_eq!(
        (format!("{l:.6}"), format!("{w:.6}")),
        ("3.136548".into(), "0.995107".into())
    );
}

#[test]
fn construct_reinhardt_summary() {
    let o = run(&["construct", "--family", "reinhardt", "--m", "3", "--n", "6"]);
    assert!(o.status.success());
    let (family, n, l, _, d) = summary_fields(&stdout(&o));
    assert_eq!((family.as_str(), n), ("reinhardt", 6));
    assert!((l - 3.105829).abs() < 5e-7, "{l}");
    assert!((d - 1.0).abs() < 1e-10);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["construct", "--family", "dn", "--n", "12"][..],
        &["construct", "--family", "reinhardt", "--n", "12"],
        &["optimize", "--problem", "dn-star", "--n", "8"],
        &["table", "5"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn render_rejects_malformed_input() {
    let empty = scratch("empty.json");
    std::fs::write(&empty, "").unwrap();
    let out = scratch("empty.svg");
    let o = run(&[
        "render",
        empty.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn construct_then_measure_reproduces_metrics() {
    for (family, extra, name) in [
        ("dn", &["--n", "32"][..], "d32"),
        ("regular", &["--n", "7"], "r7"),
        ("reinhardt", &["--m", "5", "--n", "20"], "r520"),
    ] {
        for format in ["json", "csv"] {
            let path = scratch(&format!("{name}.{format}"));
            let mut args = vec!["construct", "--family", family, "--format", format, "--out"];
            args.push(path.to_str().unwrap());
            args.extend_from_slice(extra);
            let o = run(&args);
            assert!(o.status.success(), "{args:?}");
            let (_, n, l, w, d) = summary_fields(&stdout(&o));

            // independent re-measure from the file contents
            let text = std::fs::read_to_string(&path).unwrap();
            let pts = if format == "json" {
                PolygonDocument::from_json(&text).unwrap().points()
            } else {
                vertices_from_csv(&text).unwrap()
            };
            assert_eq!(pts.len(), n);
            let p = Polygon::new(pts).unwrap();
            assert!((perimeter(&p) - l).abs() < 1e-10 + 1e-12);
            assert!((width(&p).unwrap() - w).abs() < 1e-10 + 1e-12);
            assert!((diameter(&p) - d).abs() < 1e-10 + 1e-12);

            // measure verb agrees with construct to every printed digit
            let m = run(&["measure", path.to_str().unwrap()]);
            assert!(m.status.success());
            let (_, mn, ml, mw, md) = summary_fields(&stdout(&m));
            assert_eq!((mn, ml, mw, md), (n, l, w, d), "{name} {format}");
        }
    }
}

#[test]
fn json_document_keeps_full_precision() {
    let path = scratch("d16.json");
    run(&[
        "construct",
        "--family",
        "dn",
        "--n",
        "16",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = PolygonDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json(), text);
    assert_eq!(
        (
            doc.diameter_graph.cycle_length,
            doc.diameter_graph.pendant_count
        ),
        (11, 5)
    );
    let report = smallgon::constructions::build_dn(16).unwrap();
    for (got, want) in doc.points().iter().zip(report.polygon.vertices()) {
        assert_eq!(got, want);
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let mut files = Vec::new();
    for i in 0..2 {
        let doc = scratch(&format!("det{i}.json"));
        let svg = scratch(&format!("det{i}.svg"));
        let opt = scratch(&format!("det{i}.opt.json"));
        run(&[
            "construct",
            "--family",
            "dn",
            "--n",
            "64",
            "--out",
            doc.to_str().unwrap(),
        ]);
        run(&[
            "render",
            doc.to_str().unwrap(),
            "--out",
            svg.to_str().unwrap(),
        ]);
        let o = run(&[
            "optimize",
            "--problem",
            "bn-star",
            "--n",
            "16",
            "--out",
            opt.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        files.push([doc, svg, opt].map(|p| std::fs::read(p).unwrap()));
    }
    assert!(files[0] == files[1]);
}

fn svg_lines(svg: &str, class: &str) -> usize {
    let group = svg.split(&format!("class=\"{class}\"")).nth(1).unwrap();
    group.split("</g>").next().unwrap().matches("<line").count()
}

#[test]
fn render_draws_boundary_and_diameter_edges() {
    for (family, n, boundary, solid) in [("dn", "16", 16, 16), ("regular", "4", 4, 2)] {
        let doc = scratch(&format!("render_{family}.json"));
        let svg = scratch(&format!("render_{family}.svg"));
        run(&[
            "construct",
            "--family",
            family,
            "--n",
            n,
            "--out",
            doc.to_str().unwrap(),
        ]);
        let o = run(&[
            "render",
            doc.to_str().unwrap(),
            "--out",
            svg.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let text = std::fs::read_to_string(&svg).unwrap();
        assert_eq!(svg_lines(&text, "boundary"), boundary, "{family}");
        assert_eq!(svg_lines(&text, "diameter"), solid, "{family}");
        assert!(text.contains("stroke-dasharray"));
    }
}

#[test]
fn optimize_writes_converged_result() {
    let o = run(&["optimize", "--problem", "dn-star", "--n", "16"]);
    assert!(o.status.success());
    let r: OptimizationResult = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.converged);
    assert!((r.objective - 3.1365477165).abs() < 1e-8);

    let path = scratch("b8.json");
    let o = run(&[
        "optimize",
        "--problem",
        "bn-star",
        "--n",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let line = stdout(&o);
    let f: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(&f[..2], ["bn-star", "8"]);
    assert!(
        (f[2].parse::<f64>().unwrap() - 3.1211471340).abs() < 1e-8,
        "{line}"
    );
    assert_eq!(f[3], "converged=true");
    let r: OptimizationResult =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((r.objective - 3.1211471340).abs() < 1e-8);
    assert_eq!(r.alphas.alphas().len(), 3);
}

#[test]
fn starved_solver_reports_non_convergence() {
    let opts = SolveOptions {
        perturbed_starts: 0,
        // no point can meet a negative gradient tolerance
        nlp: nlp::Options {
            gradient_tol: -1.0,
            ..nlp::Options::default()
        },
        ..SolveOptions::default()
    };
    let r = solve_dn_star_with(16, &opts).unwrap();
    assert!(!r.converged);
    // the best point is still returned
    assert!((r.objective - 3.1365477165).abs() < 1e-8);
}

#[test]
fn table_rows() {
    let o = run(&["table", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = "16 3.1214451523 3.1365427675 3.1365475080 3.1365484905 0.8283";
    assert!(
        text.lines()
            .any(|l| l.split_whitespace().collect::<Vec<_>>().join(" ") == row),
        "{text}"
    );

    let text = stdout(&run(&["table", "2"]));
    assert!(
        text.lines().any(|l| l.trim_start().starts_with("256 ")),
        "{text}"
    );

    let text = stdout(&run(&["table", "3"]));
    assert!(
        text.contains("3.1365477165") && text.contains("3.1403310858"),
        "{text}"
    );

    let o = run(&["table", "4", "--csv"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), 8);
    let rows: Vec<&str> = lines.collect();
    // 1 + 2 + 4 rows for n = 16, 32, 64
    assert_eq!(rows.len(), 7);
    for r in &rows {
        assert_eq!(r.split(',').count(), 8, "{r}");
    }
    assert!(
        rows[0].starts_with("16,0,0.1983163,0.1945033"),
        "{}",
        rows[0]
    );
}
