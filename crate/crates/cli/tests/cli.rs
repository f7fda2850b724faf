use std::path::Path;
use std::process::{Command, Output};

use emergence::io::{matrix_to_json, parse_hamiltonian, parse_matrix, parse_state, state_to_json};
use emergence::models::transverse_field_ising;
use emergence::quantum::{diagonalize, StateVector};
use emergence::scalar::{cr, CVector};
use serde_json::Value;

fn emergence(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emergence")).current_dir(dir).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn model_then_spectrum_matches_direct_diagonalization() {
    let dir = tempfile::tempdir().unwrap();
    let out = emergence(dir.path(), &["model", "--kind", "ising", "--n", "4", "--J", "1", "--g", "1", "-o", "h.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["tool"], "emergence");
    assert_eq!(r["command"], "model");
    assert_eq!(r["seed"], 0);
    assert_eq!(r["config"]["model"]["parameters"]["n"], 4.0);

    let h = parse_hamiltonian(&std::fs::read_to_string(dir.path().join("h.json")).unwrap()).unwrap();
    assert_eq!(h, transverse_field_ising(4, 1.0, 1.0, false).unwrap());

    let out = emergence(dir.path(), &["spectrum", "h.json"]);
    assert_eq!(out.status.code(), Some(0));
    let energies: Vec<f64> = report(&out)["result"]["energies"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert_eq!(energies.len(), 16);
    assert!(energies.windows(2).all(|w| w[0] <= w[1]));
    let direct = diagonalize(&h);
    for (a, b) in energies.iter().zip(direct.spectrum.energies()) {
        assert_eq!(a, b);
    }
}

#[test]
fn model_spec_file_and_scrambling_frame() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "spec.json", r#"{"kind":"scrambled","parameters":{"n":3,"J":1,"g":0.5},"seed":4}"#);
    let out = emergence(dir.path(), &["model", "--spec", "spec.json", "-o", "s.json", "--frame-out", "u.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = parse_hamiltonian(&std::fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    let u = parse_matrix(&std::fs::read_to_string(dir.path().join("u.json")).unwrap()).unwrap();
    let back = u.adjoint() * s.matrix() * &u;
    assert!((back - transverse_field_ising(3, 1.0, 0.5, false).unwrap().matrix()).norm() < 1e-10);

    let out = emergence(dir.path(), &["model", "--kind", "ising", "--n", "3", "--J", "1", "--g", "1", "-o", "h.json", "--frame-out", "u2.json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = emergence(dir.path(), &["model", "--kind", "sho", "--dim", "8", "-o", "h.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zero_time_evolution_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let h = transverse_field_ising(2, 0.3, 1.7, false).unwrap();
    write(dir.path(), "h.json", &matrix_to_json(h.matrix()));
    let psi = StateVector::normalized(CVector::from_vec(vec![cr(0.1), cr(0.7), cr(-0.3), cr(0.2)])).unwrap();
    let text = state_to_json(&psi);
    write(dir.path(), "psi.json", &text);
    for method in ["spectral", "ode"] {
        let out = emergence(dir.path(), &["evolve", "h.json", "psi.json", "--t", "0", "--method", method, "-o", "out.json"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(std::fs::read_to_string(dir.path().join("out.json")).unwrap(), text);
    }
    let out = emergence(dir.path(), &["evolve", "h.json", "psi.json", "--t", "-2.5", "--method", "ode", "-o", "back.json"]);
    assert_eq!(out.status.code(), Some(0));
    let back = parse_state(&std::fs::read_to_string(dir.path().join("back.json")).unwrap()).unwrap();
    let want = diagonalize(&h).evolve(&psi, -2.5).unwrap();
    assert!((back.amplitudes() - want.amplitudes()).norm() < 1e-8);
}

#[test]
fn geometry_on_ring_ground_state() {
    let dir = tempfile::tempdir().unwrap();
    let h = transverse_field_ising(8, 1.0, 1.0, true).unwrap();
    write(dir.path(), "h.json", &matrix_to_json(h.matrix()));
    let out = emergence(dir.path(), &["spectrum", "h.json", "--ground-state", "gs.json"]);
    assert_eq!(out.status.code(), Some(0));
    let out = emergence(
        dir.path(),
        &["geometry", "--state", "gs.json", "--dims", "2,2,2,2,2,2,2,2", "--l0", "1.0", "--embedding-out", "emb.csv", "--mi-out", "mi.csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["embedding"]["n_points"], 8);
    assert!(r["result"]["embedding"]["stress"].is_f64());
    assert_eq!(r["config"]["d_cap"], 50.0);
    let csv = std::fs::read_to_string(dir.path().join("emb.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("region,x"));
    assert_eq!(lines.len(), 9);
    assert_eq!(std::fs::read_to_string(dir.path().join("mi.csv")).unwrap().lines().count(), 9);

    let via_h = emergence(dir.path(), &["geometry", "--hamiltonian", "h.json", "--dims", "2,2,2,2,2,2,2,2"]);
    assert_eq!(report(&via_h)["result"], r["result"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "nh.json", r#"{"dim":2,"re":[[0,1],[0,0]],"im":[[0,0],[0,0]]}"#);
    write(dir.path(), "junk.json", "{not json");
    write(dir.path(), "deg.json", &matrix_to_json(transverse_field_ising(2, 1.0, 0.0, false).unwrap().matrix()));
    write(dir.path(), "zz.json", &matrix_to_json(transverse_field_ising(2, 1.0, 0.4, false).unwrap().matrix()));

    assert_eq!(emergence(dir.path(), &["spectrum", "nh.json"]).status.code(), Some(2));
    assert_eq!(emergence(dir.path(), &["spectrum", "junk.json"]).status.code(), Some(1));
    assert_eq!(emergence(dir.path(), &["spectrum", "missing.json"]).status.code(), Some(1));
    assert_eq!(emergence(dir.path(), &["spectrum", "deg.json"]).status.code(), Some(0));
    assert_eq!(emergence(dir.path(), &["spectrum", "deg.json", "--vectors", "v.json"]).status.code(), Some(2));
    assert!(!dir.path().join("v.json").exists());
    assert_eq!(emergence(dir.path(), &["mereology", "zz.json", "--ds", "3"]).status.code(), Some(1));
    assert_eq!(emergence(dir.path(), &["locality", "zz.json", "--dims", "2,3"]).status.code(), Some(1));
    assert_eq!(emergence(dir.path(), &["bogus"]).status.code(), Some(1));
    assert_eq!(emergence(dir.path(), &["--help"]).status.code(), Some(0));

    // an unreachable tolerance exhausts the budget: exit 3, artifacts still written
    let out = emergence(
        dir.path(),
        &["mereology", "zz.json", "--ds", "2", "--restarts", "1", "--budget", "5", "--tol", "0", "--frame-out", "f.json", "--trace-out", "t.csv"],
    );
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["status"], "below_threshold");
    assert!(dir.path().join("f.json").exists());
    assert!(std::fs::read_to_string(dir.path().join("t.csv")).unwrap().starts_with("iteration,objective\n"));
}

#[test]
fn locality_reports_profile_and_expansion() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.json", &matrix_to_json(transverse_field_ising(3, 1.0, 0.7, true).unwrap().matrix()));
    let out = emergence(dir.path(), &["locality", "h.json", "--dims", "2,2,2", "--profile-out", "p.csv", "--expansion-out", "e.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["k_local"], true);
    assert_eq!(r["result"]["weight_by_order"].as_array().unwrap().len(), 4);
    assert!(std::fs::read_to_string(dir.path().join("p.csv")).unwrap().starts_with("order,weight\n0,"));
    // three bonds and three fields survive the coefficient floor
    assert_eq!(std::fs::read_to_string(dir.path().join("e.csv")).unwrap().lines().count(), 7);
}

#[test]
fn reports_are_reproducible_and_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.json", &matrix_to_json(transverse_field_ising(3, 1.0, 0.5, false).unwrap().matrix()));
    let args = ["--seed", "3", "mereology", "h.json", "--ds", "2", "--restarts", "2", "--budget", "10", "--report", "r.json"];
    assert_eq!(emergence(dir.path(), &args).status.code(), Some(0));
    let first = std::fs::read(dir.path().join("r.json")).unwrap();
    assert_eq!(emergence(dir.path(), &args).status.code(), Some(0));
    assert_eq!(std::fs::read(dir.path().join("r.json")).unwrap(), first);
    let r: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(r["seed"], 3);
    assert_eq!(r["config"]["restarts"], 2);
    assert!(r["config"].get("threads").is_none());
    // no stray temp files left beside the outputs
    let names: Vec<String> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names.len(), 2, "{names:?}");
}
