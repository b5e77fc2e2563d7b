use std::path::Path;
use std::process::{Command, Output};

fn axa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn single_error_line(out: &Output) -> String {
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "), "{err}");
    err
}

const HEADER: &str =
    "kind,n,m,k,med,mred,error_rate,max_ed,transistors,ssim,psnr,energy_fj,normalized_energy";

fn camera() -> String {
    format!(
        "{}/../core/tests/data/camera.pgm",
        env!("CARGO_MANIFEST_DIR")
    )
}

#[test]
fn analyze_haloc_row() {
    let out = stdout(&axa(&[
        "analyze",
        "--kind",
        "haloc",
        "--samples",
        "200000",
        "--seed",
        "1",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&cells[..4], ["haloc", "32", "10", "5"]);
    let med: f64 = cells[4].parse().unwrap();
    assert!((med - 123.9).abs() < 0.02 * 123.9, "{med}");
    assert!(!cells[5].is_empty());
    assert_eq!(cells[8], "676");
    assert!(cells[9..].iter().all(|c| c.is_empty()));
}

#[test]
fn analyze_exact_is_error_free() {
    let out = stdout(&axa(&[
        "analyze",
        "--kind",
        "exact",
        "--n",
        "32",
        "--samples",
        "10000",
    ]));
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("exact,32,0,0,0,0,0,0,"), "{row}");
}

#[test]
fn analyze_is_byte_deterministic_across_threads() {
    let args = [
        "analyze",
        "--kind",
        "loa",
        "--samples",
        "300000",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let runs: Vec<Vec<u8>> = ["1", "3", "8"]
        .iter()
        .map(|t| {
            let out = Command::new(env!("CARGO_BIN_EXE_axa"))
                .args(args)
                .env("RAYON_NUM_THREADS", t)
                .output()
                .unwrap();
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    let json = String::from_utf8(runs[0].clone()).unwrap();
    assert!(json.contains("\"kind\": \"loa\""));
}

#[test]
fn sweep_rows_sorted() {
    let out = stdout(&axa(&[
        "sweep",
        "--kind",
        "haloc",
        "--m",
        "12,8,10",
        "--k",
        "4-6",
        "--samples",
        "5000",
    ]));
    let keys: Vec<(u32, u32)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[2].parse().unwrap(), c[3].parse().unwrap())
        })
        .collect();
    assert_eq!(keys.len(), 9);
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn sweep_reports_skips_and_rejects_empty_ranges() {
    let out = axa(&[
        "sweep",
        "--kind",
        "haloc",
        "--m",
        "0,1",
        "--k",
        "0",
        "--samples",
        "100",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped m=1 k=0"));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 2);
    single_error_line(&axa(&["sweep", "--kind", "haloc", "--m", "1", "--k", "0"]));
}

#[test]
fn vectors_counts() {
    for (kind, errors) in [("loa", 5), ("haloc", 1), ("exact", 0)] {
        let out = stdout(&axa(&["vectors", "--kind", kind]));
        assert!(out.contains(&format!("erroneous: {errors} of 10")), "{out}");
        let csv = stdout(&axa(&["vectors", "--kind", kind, "--format", "csv"]));
        assert_eq!(csv.lines().filter(|l| l.ends_with(",true")).count(), errors);
    }
}

#[test]
fn cost_with_overrides_and_netlist_export() {
    let dir = tempfile::tempdir().unwrap();
    let cells = dir.path().join("cells.txt");
    std::fs::write(
        &cells,
        "# every gate costs zero except full adders\nOR2=0\nAND2=0\nHA=0\nFA=1\n",
    )
    .unwrap();
    let netlist = dir.path().join("haloc.net");
    let out = stdout(&axa(&[
        "cost",
        "--kind",
        "haloc",
        "--cells",
        cells.to_str().unwrap(),
        "--netlist",
        netlist.to_str().unwrap(),
    ]));
    let row = out.lines().nth(1).unwrap();
    assert_eq!(row.split(',').nth(8), Some("22"));
    let text = std::fs::read_to_string(&netlist).unwrap();
    assert!(text.lines().filter(|l| l.contains(" FA ")).count() == 22);

    std::fs::write(&cells, "MUX2=4\n").unwrap();
    let err = single_error_line(&axa(&[
        "cost",
        "--kind",
        "loa",
        "--cells",
        cells.to_str().unwrap(),
    ]));
    assert!(err.contains("cells.txt"), "{err}");
}

#[test]
fn image_reconstruction() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("rec.pgm");
    let cam = camera();
    let out = axa(&[
        "image",
        "--input",
        &cam,
        "--kind",
        "exact,haloc",
        "--image-out",
        img.to_str().unwrap(),
    ]);
    let text = stdout(&out);
    let ssims: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(9).unwrap().parse().unwrap())
        .collect();
    assert!(ssims[0] >= 0.99);
    assert!(ssims[1] > 0.87 && ssims[1] < 0.97);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("high"), "{stderr}");
    for kind in ["exact", "haloc"] {
        let bytes = std::fs::read(dir.path().join(format!("rec-{kind}.pgm"))).unwrap();
        assert!(bytes.starts_with(b"P5"));
    }
}

#[test]
fn image_errors_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let odd = dir.path().join("odd.pgm");
    let mut bytes = b"P5\n100 100\n255\n".to_vec();
    bytes.resize(bytes.len() + 100 * 100, 7);
    std::fs::write(&odd, bytes).unwrap();
    let dims = single_error_line(&axa(&["image", "--input", odd.to_str().unwrap()]));
    let bad = dir.path().join("bad.pgm");
    std::fs::write(&bad, b"P6\n1 1\n255\nabc").unwrap();
    let magic = single_error_line(&axa(&["image", "--input", bad.to_str().unwrap()]));
    let missing = single_error_line(&axa(&["image", "--input", "/nonexistent/x.pgm"]));
    assert!(missing.contains("cannot read"));
    assert_ne!(dims, magic);
    assert_ne!(magic, missing);
}

#[test]
fn tradeoff_join() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows.csv");
    std::fs::write(
        &rows,
        format!("{HEADER}\nloa,32,10,0,,,,,,0.85,,,\nhaloc,32,10,5,,,,,,0.92,,,\nexact,32,0,0,,,,,,1,,,\n"),
    )
    .unwrap();
    let out = stdout(&axa(&["tradeoff", "--rows", rows.to_str().unwrap()]));
    let energies: Vec<(String, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].to_string(), c[12].parse().unwrap())
        })
        .collect();
    let min = energies
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    assert_eq!(min.0, "haloc");
    assert_eq!(energies.iter().find(|e| e.0 == "exact").unwrap().1, 1.0);

    let energy = dir.path().join("e.txt");
    std::fs::write(&energy, "loa=5\nhaloc=5\nexact=5\n").unwrap();
    let out = stdout(&axa(&[
        "tradeoff",
        "--rows",
        rows.to_str().unwrap(),
        "--energy",
        energy.to_str().unwrap(),
    ]));
    assert!(out.lines().skip(1).all(|l| l.ends_with(",5,1")), "{out}");

    std::fs::write(&energy, "loa=5\n").unwrap();
    let err = single_error_line(&axa(&[
        "tradeoff",
        "--rows",
        rows.to_str().unwrap(),
        "--energy",
        energy.to_str().unwrap(),
    ]));
    assert!(err.contains("haloc"), "{err}");
    std::fs::write(&energy, "gda=5\n").unwrap();
    single_error_line(&axa(&[
        "tradeoff",
        "--rows",
        rows.to_str().unwrap(),
        "--energy",
        energy.to_str().unwrap(),
    ]));
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = axa(&[
        "analyze",
        "--kind",
        "oloca",
        "--samples",
        "1000",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(Path::new(&path).exists());
}

#[test]
fn usage_errors_exit_nonzero() {
    single_error_line(&axa(&["analyze", "--kind", "nope"]));
    single_error_line(&axa(&["analyze"]));
    single_error_line(&axa(&[
        "analyze", "--kind", "haloc", "--m", "10", "--k", "9",
    ]));
    single_error_line(&axa(&["frobnicate"]));
    assert!(axa(&["--help"]).status.success());
}
