//! The `qhyper` binary end to end: outputs, exit codes and determinism.

use std::path::Path;
use std::process::{Command, Output};

use qhyper::identities::{self, point_rng};
use qhyper::integrals::sample_integral_point;
use qhyper::products::sample_product_point;
use qhyper::report::ParamMap;
use qhyper_cli::report_file::CSV_COLUMNS;
use qhyper_cli::targets::Target;
use qhyper_cli::ReportFile;

fn qhyper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhyper")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn params_arg(p: &ParamMap) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

#[test]
fn bailey_sum_verifies_exactly() {
    let o = qhyper(&["verify", "T_BAILEY41", "--params", "q=1/2,a=1/3,b=1/5", "--n", "4", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let file = ReportFile::from_json(&stdout(&o)).unwrap();
    assert_eq!(file.entries.len(), 1);
    let r = &file.entries[0];
    assert!(r.pass && !r.degenerate && r.abs_err == 0.0 && r.lhs == r.rhs);
}

#[test]
fn andrews_watson_odd_order_is_degenerate() {
    let o = qhyper(&["verify", "T_ANDREWS_WATSON", "--params", "q=1/2,a=1/3,c=2/7", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &ReportFile::from_json(&stdout(&o)).unwrap().entries[0];
    assert!(r.pass && r.degenerate);
    assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("0", "0"));
}

#[test]
fn sweeps_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = ["sweep", "T_NEW_N2", "--trials", "25", "--seed", "7", "--n-range", "0..8", "--output", path.to_str().unwrap()];
        assert_eq!(qhyper(&args).status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let file = ReportFile::from_json(std::str::from_utf8(&a).unwrap()).unwrap();
    assert_eq!(file.summary.total, 25 * 9);
    assert_eq!(file.summary.failed, 0);
}

#[test]
fn report_rerenders_json_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let args = ["sweep", "SRIV_JAIN", "--mode", "exact", "--trials", "3", "--seed", "2", "--output", json.to_str().unwrap()];
    assert_eq!(qhyper(&args).status.code(), Some(0));
    let o = qhyper(&["report", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), CSV_COLUMNS.to_vec());
    let rows = rd.records().count();
    let file = ReportFile::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rows, file.entries.len());
    assert_eq!(rows, 3 * 10);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| qhyper(args).status.code();
    assert_eq!(code(&["verify", "NOPE", "--n", "1"]), Some(2));
    assert_eq!(code(&["verify", "T_BAILEY41", "--n", "4"]), Some(2), "missing parameters");
    assert_eq!(code(&["verify", "T_BAILEY41", "--params", "q=1/2,a=1/3,b=1/5,x=1", "--n", "4"]), Some(2));
    assert_eq!(code(&["verify", "T_BAILEY41", "--params", "q=1/2,a=1/3,b=1/5", "--n", "4", "--precision-bits", "32"]), Some(2));
    assert_eq!(code(&["verify", "IR_SRIV_JAIN", "--mode", "exact", "--params", "q=1/2,a=1/3,b=1/4,z=1/5"]), Some(2));
    assert_eq!(code(&["verify", "IR_SRIV_JAIN", "--params", "q=1/2,a=1/3,b=1/4,z=1/5", "--sigma", "1"]), Some(2));
    assert_eq!(code(&["verify", "SRIV_JAIN", "--params", "q=1/2,a=1/3,b=1/4,z=1/2"]), Some(3), "outside the series radius");
    // A correct identity judged at an unreachable tolerance fails.
    assert_eq!(code(&["verify", "CLAUSEN", "--params", "a=1/3,b=1/4,z=1/5", "--eps", "1e-60"]), Some(1));
    assert_eq!(code(&["verify", "CLAUSEN", "--params", "a=1/3,b=1/4,z=1/5"]), Some(0));
}

#[test]
fn output_path_is_not_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let args = ["verify", "T_BAILEY41", "--params", "q=1/2,a=1/3,b=1/5", "--n", "2", "--format", "csv", "--output", path.to_str().unwrap()];
    let o = qhyper(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert_eq!(text.lines().count(), 2);
}

/// Every listed id runs through `verify` at an admissible point.
#[test]
fn every_listed_id_is_accepted_by_verify() {
    let listing = stdout(&qhyper(&["list", "--format", "json"]));
    let entries: Vec<serde_json::Value> = serde_json::from_str(&listing).unwrap();
    assert_eq!(entries.len(), Target::all().len());
    for e in entries {
        let id = e["id"].as_str().unwrap();
        let mut rng = point_rng(11, 0);
        let (params, n) = match Target::resolve(id).unwrap() {
            Target::Terminating(rec) => {
                let n = rec.min_n.max(2);
                let p = identities::sample_until(rec.id, rec.params, &mut rng, |p| identities::verify(rec.id, p, n).map(|_| p.clone())).unwrap();
                (p, Some(n))
            }
            Target::Product(p) => (sample_product_point(p, &mut rng), None),
            Target::Integral(r) => (sample_integral_point(r, &mut rng).unwrap(), None),
            Target::Classical(_) => ([("a", "1/3"), ("b", "1/4"), ("z", "1/5")].iter().map(|(k, v)| (k.to_string(), v.parse().unwrap())).collect(), None),
        };
        let p = params_arg(&params);
        let n_str = n.map(|n| n.to_string());
        let mut args = vec!["verify", id, "--params", &p];
        if let Some(n) = &n_str {
            args.extend(["--n", n.as_str()]);
        }
        let o = qhyper(&args);
        assert_eq!(o.status.code(), Some(0), "{id} {p}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
