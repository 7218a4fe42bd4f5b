use std::process::{Command, Output};

use jetsym_cli::{terms_to_poly, SymmetryTableDoc};

fn jetsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_burgers_text_lists_five_entries() {
    let o = jetsym(&["gen", "--eq", "burgers", "--max-order", "2", "--format", "text"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("Qhat^{20}"));
}

#[test]
fn gen_heat_order_zero_is_u() {
    let o = jetsym(&["gen", "--eq", "heat", "--max-order", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Q^{00}: u\n");
}

#[test]
fn gen_json_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let o = jetsym(&["gen", "--eq", "burgers", "--max-order", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: SymmetryTableDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.entries.len(), 2);
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
    for e in &doc.entries {
        terms_to_poly(&e.terms).unwrap();
    }
    // byte-deterministic
    let again = jetsym(&["gen", "--eq", "burgers", "--max-order", "1", "--format", "json"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn gen_latex_is_balanced() {
    let o = jetsym(&["gen", "--eq", "potburgers", "--max-order", "3", "--format", "latex"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains(r"\tilde{\mathfrak{Q}}^{30}"));
    assert_eq!(out.matches('{').count(), out.matches('}').count());
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(jetsym(&["gen", "--eq", "kdv", "--max-order", "1"]).status.code(), Some(2));
    assert_eq!(jetsym(&["gen", "--eq", "burgers", "--max-order", "0"]).status.code(), Some(2));
    assert_eq!(jetsym(&["map", "--from", "burgers", "--to", "heat", "--k", "0", "--l", "0"]).status.code(), Some(2));
}

#[test]
fn verify_recursion_passes() {
    let o = jetsym(&["verify", "--suite", "recursion", "--max-order", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("PASS [R1,R2] = 1/2"));
    assert!(out.contains("summary:"));
}

#[test]
fn verify_zeta_passes() {
    let o = jetsym(&["verify", "--suite", "zeta", "--max-order", "8"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_commutators_reports_burgers_normalization() {
    // The Burgers brackets follow the closed form only after rescaling by -2.
    let o = jetsym(&["verify", "--suite", "commutators", "--max-order", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("PASS structure constants heat-q"));
    assert!(out.contains("FAIL structure constants burgers-q"));
    assert!(out.contains("36 of 36 pairs satisfy"));
}

#[test]
fn solve_dimensions() {
    for (n, dim) in [("1", 2), ("2", 5)] {
        let o = jetsym(&["solve", "--order", n]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["dimension"], dim);
        assert_eq!(v["span"], "MATCH");
    }
}

#[test]
fn solve_cap_exits_three() {
    assert_eq!(jetsym(&["solve", "--order", "3", "--cap", "5"]).status.code(), Some(3));
}

#[test]
fn map_chain() {
    let o = jetsym(&["map", "--from", "heat", "--to", "burgers", "--k", "0", "--l", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("burgers: v_1 (= -2 Qhat^{01})"));

    let o = jetsym(&["map", "--from", "heat", "--to", "burgers", "--k", "0", "--l", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("KERNEL"));

    let o = jetsym(&["map", "--from", "heat", "--to", "burgers", "--k", "0", "--l", "1", "--normalized"]);
    assert!(stdout(&o).contains("burgers: -1/2*v_1 (= Qhat^{01})"));
}

#[test]
fn map_trivial_member_is_not_projectable() {
    let o = jetsym(&["map", "--from", "heat", "--to", "burgers", "--k", "1", "--l", "0", "--z"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NOT PROJECTABLE"));
}
