use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TABLE2: [[f64; 5]; 10] = [
    [1.0, 0.686720257, -0.595539559, -3.622765814, -10.838068721],
    [4.0, 4.113008823, 4.345345170, 3.873494394, 0.432511407],
    [9.0, 9.057352856, 9.354964694, 10.147416013, 10.358251307],
    [16.0, 16.031789784, 16.200110073, 16.813060198, 18.778787010],
    [25.0, 25.020212925, 25.126692366, 25.512098215, 27.111504117],
    [36.0, 36.013989568, 36.087552002, 36.351914438, 37.436795310],
    [49.0, 49.010257797, 49.064156865, 49.257285819, 50.040106169],
    [64.0, 64.007843753, 64.049043706, 64.196465710, 64.790623174],
    [81.0, 81.006192252, 81.038711488, 81.154988044, 81.622257081],
    [100.0, 100.005012691, 100.031334558, 100.125413252, 100.502864037],
];

const TABLE3_TOP: [f64; 5] = [
    137.163172017,
    136.687579697,
    136.683036310,
    136.683022596,
    136.683022577,
];

fn tra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tra"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("spawn tra")
}

fn ok(args: &[&str]) -> String {
    let out = tra(args);
    assert!(
        out.status.success(),
        "tra {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    tra(args).status.code().expect("exit code")
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Csv {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers().unwrap().iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.unwrap().iter().map(String::from).collect())
            .collect();
        Csv { header, rows }
    }

    fn num(&self, row: usize, col: usize) -> f64 {
        self.rows[row][col].parse().unwrap()
    }

    fn column(&self, col: usize) -> Vec<f64> {
        (0..self.rows.len()).map(|r| self.num(r, col)).collect()
    }
}

#[test]
fn table2_matches_reference_values() {
    let t = Csv::parse(&ok(&["table2"]));
    assert_eq!(t.header, ["n", "gamma=0", "gamma=2", "gamma=5", "gamma=10", "gamma=20"]);
    assert_eq!(t.rows.len(), 10);
    for (n, expected) in TABLE2.iter().enumerate() {
        for (c, &v) in expected.iter().enumerate() {
            assert!((t.num(n, c + 1) - v).abs() < 1e-6, "n={n} column {c}");
        }
    }
    assert_eq!(t.rows[1][4], "3.873494394");
}

#[test]
fn table2_flat_bottom_and_truncation() {
    let flat = Csv::parse(&ok(&["table2", "--gammas", "0"]));
    for (n, v) in flat.column(1).iter().enumerate() {
        assert_eq!(*v, ((n + 1) * (n + 1)) as f64);
    }
    let a = Csv::parse(&ok(&["table2", "--gammas", "5", "--full-precision"])).column(1);
    let b = Csv::parse(&ok(&["table2", "--gammas", "5", "--n", "100", "--full-precision"])).column(1);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-9);
    }
    assert_eq!(code(&["table2", "--n", "9"]), 2);
}

#[test]
fn table3_matches_reference_values() {
    let t = Csv::parse(&ok(&["table3"]));
    assert_eq!(t.header, ["n", "N=10", "N=11", "N=12", "N=13", "N=100"]);
    for (c, &v) in TABLE3_TOP.iter().enumerate() {
        assert!((t.num(9, c + 1) - v).abs() < 1e-6);
    }
    assert_eq!(t.rows[9][1], "137.163172017");
    let first: Vec<&String> = t.rows[0][1..].iter().collect();
    assert!(first.iter().all(|s| *s == first[0]));
}

#[test]
fn table3_without_trigonometric_terms_is_the_well() {
    let scarf = Csv::parse(&ok(&[
        "table3",
        "--v0",
        "5",
        "--v-plus",
        "0",
        "--v-minus",
        "0",
        "--sizes",
        "50",
    ]));
    let well = Csv::parse(&ok(&["table2", "--gammas", "5"]));
    assert_eq!(scarf.column(1), well.column(1));
}

#[test]
fn reality_violation_exits_with_parameter_status() {
    let out = tra(&["table3", "--v-plus", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reality"));
    assert!(out.stdout.is_empty());
}

fn sign_changes(values: &[f64]) -> usize {
    let inner: Vec<f64> = values[1..values.len() - 1]
        .iter()
        .copied()
        .filter(|v| *v != 0.0)
        .collect();
    inner.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
}

#[test]
fn wavefunction_nodes_and_walls() {
    let t = Csv::parse(&ok(&["wavefunction", "--gamma", "5", "--levels", "0,1,2,3"]));
    assert_eq!(t.header, ["x", "psi_0", "psi_1", "psi_2", "psi_3"]);
    assert_eq!(t.rows.len(), 401);
    let x = t.column(0);
    assert_eq!((x[0], x[400]), (-0.5, 0.5));
    for k in 0..4 {
        let psi = t.column(k + 1);
        assert_eq!(sign_changes(&psi), k);
        assert_eq!(psi[0], 0.0);
        assert_eq!(psi[400], 0.0);
    }
}

#[test]
fn flat_ground_state_is_a_cosine() {
    let t = Csv::parse(&ok(&[
        "wavefunction",
        "--gamma",
        "0",
        "--levels",
        "0",
        "--points",
        "101",
        "--full-precision",
    ]));
    let scale = t.num(50, 1);
    for row in 0..t.rows.len() {
        let x = t.num(row, 0);
        let expected = scale * (std::f64::consts::PI * x).cos();
        assert!((t.num(row, 1) - expected).abs() < 1e-12);
    }
    assert_eq!(code(&["wavefunction", "--levels", "50"]), 2);
}

#[test]
fn morse_bound_list_and_empty_case() {
    let t = Csv::parse(&ok(&["morse", "--lambda", "1", "--v1", "-2"]));
    assert_eq!(t.header, ["kind", "k", "energy", "delta"]);
    assert_eq!(t.rows[0], ["bound_count", "4", "", ""]);
    let energies: Vec<f64> = t.rows[1..].iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(energies, [-6.125, -3.125, -1.125, -0.125]);

    let none = Csv::parse(&ok(&["morse", "--v1", "0"]));
    assert!(none.rows.iter().any(|r| r[0] == "no_bound_states"));
    assert!(none.rows.iter().all(|r| r[0] != "bound"));
}

#[test]
fn morse_matrix_levels_approach_closed_form() {
    let t = Csv::parse(&ok(&["morse", "--nu", "0", "--basis-size", "400"]));
    let matrix: Vec<f64> = t
        .rows
        .iter()
        .filter(|r| r[0] == "matrix")
        .map(|r| r[2].parse().unwrap())
        .collect();
    assert_eq!(matrix.len(), 4);
    for (m, e) in matrix.iter().zip([-6.125, -3.125, -1.125, -0.125]) {
        assert!((m - e).abs() < 1e-3);
    }
    assert_eq!(code(&["morse", "--energies", "-1"]), 2);
}

#[test]
fn coulomb_without_charge_has_no_phase() {
    let t = Csv::parse(&ok(&["coulomb", "--charge", "0", "--energies", "0.1,0.5,2"]));
    assert!(t.column(1).iter().all(|d| *d == 0.0));
    assert!(t.rows.iter().all(|r| r[1] == "0.000000000"));
}

#[test]
fn coulomb_recursion_agrees_with_closed_form() {
    let t = Csv::parse(&ok(&["coulomb", "--recursion"]));
    assert_eq!(t.header, ["energy", "delta", "delta_recursion", "residual"]);
    assert!((t.num(0, 1) - t.num(0, 2)).abs() < 2e-3);
    assert!((t.num(0, 1) - 0.301640320).abs() < 1e-9);
    // an impossible fit tolerance is a numerical failure
    assert_eq!(code(&["coulomb", "--recursion", "--tolerance", "1e-12"]), 3);
}

#[test]
fn sweep_reproduces_table2_in_long_format() {
    let long = Csv::parse(&ok(&["sweep", "--values", "0,2,5,10,20"]));
    assert_eq!(long.header, ["gamma", "level", "energy"]);
    assert_eq!(long.rows.len(), 50);
    let wide = Csv::parse(&ok(&["table2"]));
    for (i, row) in long.rows.iter().enumerate() {
        let (g, n) = (i / 10, i % 10);
        assert_eq!(row[1], n.to_string());
        assert_eq!(row[2], wide.rows[n][g + 1]);
    }
    let ground: Vec<f64> = long
        .rows
        .iter()
        .filter(|r| r[1] == "0")
        .map(|r| r[2].parse().unwrap())
        .collect();
    assert!(ground.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn empty_sweep_is_header_only() {
    assert_eq!(ok(&["sweep", "--range", "0:5:0"]), "gamma,level,energy\n");
    assert_eq!(ok(&["sweep", "--system", "scarf"]), "v0,level,energy\n");
}

#[test]
fn sweep_order_is_deterministic() {
    let args = [
        "sweep",
        "--system",
        "scarf",
        "--parameter",
        "v-plus",
        "--range",
        "3:40:64",
        "--levels",
        "3",
    ];
    let first = ok(&args);
    for _ in 0..3 {
        assert_eq!(ok(&args), first);
    }
    let t = Csv::parse(&first);
    let params = t.column(0);
    assert!(params.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(code(&["sweep", "--system", "scarf", "--parameter", "gamma"]), 2);
}

#[test]
fn printed_values_round_trip() {
    let short = ok(&["table3"]);
    let full = Csv::parse(&ok(&["table3", "--full-precision"]));
    let printed = Csv::parse(&short);
    for (r, row) in printed.rows.iter().enumerate() {
        for (c, cell) in row.iter().enumerate().skip(1) {
            let v: f64 = cell.parse().unwrap();
            assert_eq!(&format!("{v:.9}"), cell);
            assert_eq!(&format!("{:.9}", full.num(r, c)), cell);
        }
    }
}

#[test]
fn json_output_carries_the_same_numbers() {
    let csv = Csv::parse(&ok(&["well", "--gamma", "10", "--levels", "4"]));
    let json: Value =
        serde_json::from_str(&ok(&["well", "--gamma", "10", "--levels", "4", "--format", "json"])).unwrap();
    assert_eq!(json["columns"], serde_json::json!(["k", "energy"]));
    let rows = json["rows"].as_array().unwrap();
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[1].as_f64().unwrap(), csv.num(i, 1));
    }
    assert_eq!(csv.num(1, 1), 3.873494394);
}

#[test]
fn physical_units_scale_by_lambda_squared_over_two() {
    let eps = Csv::parse(&ok(&["well", "--gamma", "5", "--length", "2", "--full-precision"]));
    let e = Csv::parse(&ok(&[
        "well",
        "--gamma",
        "5",
        "--length",
        "2",
        "--full-precision",
        "--units",
        "physical",
    ]));
    let unit = (std::f64::consts::PI / 2.0).powi(2) / 2.0;
    for (a, b) in eps.column(1).iter().zip(e.column(1)) {
        assert!((a * unit - b).abs() < 1e-12 * b.abs().max(1.0));
    }
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# well run\ngamma = 10\nlevels = 2\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_config = Csv::parse(&ok(&["well", "--config", cfg]));
    assert_eq!(from_config.rows.len(), 2);
    assert_eq!(from_config.rows[1][1], "3.873494394");
    let flagged = Csv::parse(&ok(&["well", "--config", cfg, "--gamma", "0"]));
    assert_eq!(flagged.rows[1][1], "4.000000000");

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "gama = 10\n").unwrap();
    assert_eq!(code(&["well", "--config", bad.to_str().unwrap()]), 2);
}

fn manifest(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn outputs_are_paired_with_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t2.csv");
    let run = || {
        let status = Command::new(env!("CARGO_BIN_EXE_tra"))
            .args(["table2", "--gammas", "0,5", "--out", out.to_str().unwrap()])
            .env("SOURCE_DATE_EPOCH", "1700000000")
            .status()
            .unwrap();
        assert!(status.success());
        (
            fs::read(&out).unwrap(),
            fs::read(dir.path().join("t2.csv.manifest.json")).unwrap(),
        )
    };
    let first = run();
    assert_eq!(run(), first);
    let m = manifest(&dir.path().join("t2.csv.manifest.json"));
    assert_eq!(m["command"], "table2");
    assert_eq!(m["basis_size"], 50);
    assert_eq!(m["timestamp"], "2023-11-14T22:13:20Z");
    assert_eq!(m["parameters"]["gammas"], "0,5");
    assert_eq!(m["parameters"]["units"], "dimensionless");
    assert_eq!(m["tool_version"], env!("CARGO_PKG_VERSION"));
    let text = String::from_utf8(first.0).unwrap();
    assert!(text.starts_with("n,gamma=0,gamma=5\n") && text.ends_with('\n'));
}

#[test]
fn oracle_check_passes_and_flags_mismatch() {
    let t = Csv::parse(&ok(&["oracle-check", "--gamma", "5", "--levels", "10"]));
    assert_eq!(t.header, ["k", "tra", "fd", "abs_diff"]);
    assert!(t.column(3).iter().all(|d| *d < 1e-5));

    let morse = Csv::parse(&ok(&["oracle-check", "--system", "morse", "--units", "physical"]));
    assert_eq!(morse.column(1), [-6.125, -3.125, -1.125, -0.125]);

    let coarse = tra(&["oracle-check", "--gamma", "5", "--points", "101", "--tolerance", "1e-9"]);
    assert_eq!(coarse.status.code(), Some(3));
    assert_eq!(Csv::parse(&String::from_utf8(coarse.stdout).unwrap()).rows.len(), 6);
    assert_eq!(code(&["oracle-check", "--points", "100"]), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["well", "--format", "xml"]), 2);
    assert_eq!(code(&["wavefunction", "--system", "well", "--v-plus", "1"]), 2);
}
