use std::path::Path;
use std::process::{Command, Output};

use conelab::format::ConeFile;

fn conelab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conelab"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build(dir: &Path, family: &str, n: &str) -> std::path::PathBuf {
    let path = dir.join(format!("{family}{n}.json"));
    let o = conelab(
        &dir.join("cache"),
        &["build", family, n, "-o", path.to_str().unwrap()],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn build_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cut = ConeFile::load(&build(dir.path(), "cut", "5")).unwrap();
    assert_eq!(cut.rays.as_ref().unwrap().len(), 15);
    assert_eq!(cut.ambient().unwrap().dim(), 10);
    assert_eq!(cut.header.coordinates.len(), 10);

    let ocut = ConeFile::load(&build(dir.path(), "ocut", "4")).unwrap();
    assert_eq!(ocut.rays.as_ref().unwrap().len(), 14);

    let wqmet = ConeFile::load(&build(dir.path(), "wqmet", "3")).unwrap();
    assert!(wqmet.rays.is_none());
    // 6 non-negativity rows and 6 oriented triangles; Q_3 has codimension 1
    assert_eq!(wqmet.inequalities.as_ref().unwrap().len(), 12);
    assert_eq!(wqmet.equalities.len(), 1);
}

#[test]
fn bad_family_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = conelab(dir.path(), &["build", "cheese", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cheese"));
    let o = conelab(dir.path(), &["verify", "identities", "--n", "5..3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cached_conversion_is_identical_to_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let input = build(dir.path(), "cut", "6");
    let cache = dir.path().join("cache");
    let first = conelab(&cache, &["convert", input.to_str().unwrap()]);
    assert!(first.status.success());
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let again = conelab(&cache, &["convert", input.to_str().unwrap()]);
    let fresh = conelab(&cache, &["--no-cache", "convert", input.to_str().unwrap()]);
    assert_eq!(first.stdout, again.stdout);
    assert_eq!(first.stdout, fresh.stdout);
    let file = ConeFile::from_json(&stdout(&first)).unwrap();
    assert_eq!(file.inequalities.as_ref().unwrap().len(), 210);
    assert!(file.header.certified.facets);
}

#[test]
fn stopped_conversion_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let input = build(dir.path(), "ocut", "5");
    let cache = dir.path().join("cache");
    let arg = input.to_str().unwrap();
    let stopped = conelab(
        &cache,
        &[
            "convert",
            arg,
            "--stop-after",
            "12",
            "--checkpoint-every",
            "4",
        ],
    );
    assert_eq!(stopped.status.code(), Some(3));
    let saved = std::fs::read_dir(&cache)
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .path()
                .to_string_lossy()
                .contains("checkpoint")
        })
        .count();
    assert_eq!(saved, 1);
    let resumed = conelab(&cache, &["convert", arg, "--resume"]);
    assert!(
        resumed.status.success(),
        "{}",
        String::from_utf8_lossy(&resumed.stderr)
    );
    let fresh = conelab(&cache, &["--no-cache", "convert", arg]);
    assert_eq!(resumed.stdout, fresh.stdout);
}

#[test]
fn ray_cap_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let input = build(dir.path(), "cut", "6");
    let o = conelab(
        &dir.path().join("cache"),
        &["--max-rays", "20", "convert", input.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn orbit_reports() {
    let dir = tempfile::tempdir().unwrap();
    let input = build(dir.path(), "ocut", "5");
    let csv = dir.path().join("o.csv");
    let cache = dir.path().join("cache");
    let o = conelab(
        &cache,
        &[
            "orbits",
            input.to_str().unwrap(),
            "--group",
            "rev",
            "--csv",
            csv.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["orbit_count"], 5);
    assert_eq!(json["facet_count"], 130);
    let sizes: u64 = json["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["size"].as_u64().unwrap())
        .sum();
    assert_eq!(sizes, 130);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 6);

    let o = conelab(
        &cache,
        &[
            "orbits",
            input.to_str().unwrap(),
            "--group",
            "sym",
            "--format",
            "csv",
        ],
    );
    assert_eq!(stdout(&o).lines().count(), 7);

    let o = conelab(&cache, &["orbits", input.to_str().unwrap(), "--table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("S6"), "{text}");
    assert!(
        text.lines().last().unwrap().trim_end().ends_with('5'),
        "{text}"
    );
}

#[test]
fn facet_tools() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let ocut = build(dir.path(), "ocut", "3");
    let arg = ocut.to_str().unwrap();

    let o = conelab(&cache, &["roots", arg]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);
    assert!(stdout(&o).lines().all(|l| l.contains("{}")));

    let o = conelab(&cache, &["classify", arg]);
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.contains(" symmetric")).count(),
        3,
        "{text}"
    );
    assert_eq!(
        text.lines().filter(|l| l.contains("asymmetric")).count(),
        6,
        "{text}"
    );

    let o = conelab(&cache, &["switch", arg, "--set", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);

    let cut = build(dir.path(), "cut", "4");
    let image = dir.path().join("psi.json");
    let o = conelab(
        &cache,
        &[
            "project",
            cut.to_str().unwrap(),
            "-o",
            image.to_str().unwrap(),
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let file = ConeFile::load(&image).unwrap();
    // psi(d(S)) = 2c(S) and psi(e_0) = 0: the six oriented cuts of OCut_3
    assert_eq!(file.rays.as_ref().unwrap().len(), 6);
    let o = conelab(&cache, &["project", cut.to_str().unwrap(), "--map", "pi"]);
    assert!(o.status.success());
}

#[test]
fn table_for_small_n() {
    let dir = tempfile::tempdir().unwrap();
    let o = conelab(dir.path(), &["table", "--n", "5", "--json"]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["types"].as_array().unwrap().len(), 3);
    assert_eq!(json["ocut_facets"], 130);
}

#[test]
fn verify_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = conelab(dir.path(), &["verify", "identities", "--n", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() == 7);
    assert!(!text.contains("FAIL"));
}
