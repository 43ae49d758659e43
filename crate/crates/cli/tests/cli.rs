use diptych::projseq::Spreadsheet;
use diptych::unproject::EquationStore;
use diptych::weights::WeightTable;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diptych")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_prints_the_worked_pair() {
    let o = run(&["classify", "--d", "2", "--e", "4", "--k", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(7,12;4,7),(7,24;2,7)"));
}

#[test]
fn classify_rejects_k_beyond_the_bound() {
    let o = run(&["classify", "--d", "1", "--e", "1", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k <= 2"));
}

#[test]
fn classify_enumerates_identity_type_pairs() {
    let o = run(&["classify", "--enumerate", "--bound", "1", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("r,a,b,s,g,h,kind,d,e,k,variant\n"));
    assert!(text.contains("1,0,0,1,0,0,regular,0,0,1,first\n"), "{text}");
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn classify_explicit_pair_and_bad_pair() {
    let o = run(&["classify", "--pair", "7,12,4,7,24,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("d = 2, e = 4, k = 3"));
    assert_eq!(run(&["classify", "--pair", "7,12,4,7,24,3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--pair", "7,12,4"]).status.code(), Some(2));
}

#[test]
fn chain_text_shows_the_initial_equations() {
    let o = run(&["chain", "--d", "2", "--e", "4", "--k", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("x_1y_0 = A^4B^7 + Lx_0^4"));
    assert!(text.contains("13.45  x_0x_2 = x_1^2 + AB^2M"));
    assert!(text.contains("17 equations"));
}

#[test]
fn chain_json_round_trips() {
    let o = run(&["chain", "--d", "2", "--e", "4", "--k", "3", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let store: EquationStore = serde_json::from_str(&text).unwrap();
    assert_eq!(store.equations.len(), 17);
    assert_eq!(store.log.len(), 5);
    assert_eq!(serde_json::to_string_pretty(&store).unwrap() + "\n", text);
}

#[test]
fn chain_verify_passes_in_the_main_case() {
    for (d, e, k) in [("2", "4", "3"), ("3", "3", "4"), ("5", "2", "6"), ("4", "4", "1")] {
        let o = run(&["chain", "--d", d, "--e", e, "--k", k, "--verify", "--format", "json"]);
        assert!(o.status.success(), "({d}, {e}, {k}): {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn chain_outside_the_main_case_is_out_of_scope() {
    assert_eq!(run(&["chain", "--d", "2", "--e", "2", "--k", "3"]).status.code(), Some(3));
    assert_eq!(run(&["chain", "--d", "1", "--e", "5", "--k", "3"]).status.code(), Some(3));
}

#[test]
fn top_down_chain_has_the_same_equations() {
    let up: EquationStore = serde_json::from_str(&stdout(&run(&["chain", "--d", "3", "--e", "4", "--k", "5", "--format", "json"]))).unwrap();
    let down: EquationStore =
        serde_json::from_str(&stdout(&run(&["chain", "--d", "3", "--e", "4", "--k", "5", "--format", "json", "--top-down"]))).unwrap();
    assert_eq!(up.by_lhs(), down.by_lhs());
}

#[test]
fn weights_csv_rows() {
    let o = run(&["weights", "--d", "4", "--e", "6", "--k", "6", "--csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "generator,L,M,A,B");
    assert_eq!(lines.len(), 1 + 7 + 17);
    assert!(lines.contains(&"x_0,-1/4,0,505/4,483"));
    assert!(lines.contains(&"y_8,21/2,241/6,21/2,241/6"));
    assert!(lines.contains(&"y_{16},483,11087/6,0,-1/6"));
}

#[test]
fn weights_json_round_trips() {
    let text = stdout(&run(&["weights", "--d", "2", "--e", "5", "--k", "4", "--format", "json"]));
    let table: WeightTable = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&table).unwrap() + "\n", text);
}

#[test]
fn scissors_csv() {
    let o = run(&["weights", "--d", "4", "--e", "6", "--k", "6", "--scissors", "--csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("generator,L_units,M_units\n"));
    // x_0 = (-1/4, 0, ..) in units of 1/4, 1/6.
    assert!(text.contains("x_0,-1,0\n"));
}

#[test]
fn schedule_prints_the_h_sequence() {
    let o = run(&["schedule", "--d", "2", "--e", "4", "--k", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("h: [A^3B^5, AB^2, AB^2, AB, B]"));
    let json = stdout(&run(&["schedule", "--d", "2", "--e", "4", "--k", "3", "--format", "json"]));
    let sheet: Spreadsheet = serde_json::from_str(&json).unwrap();
    assert_eq!(sheet.steps.len(), 5);
}

#[test]
fn rectangle_renders_both_panels() {
    let o = run(&["rectangle", "--d", "2", "--e", "4", "--k", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("V_AB from (7,12;4,7)"));
    assert!(text.contains("V_LM from (7,24;2,7)"));
    assert!(text.contains("zero word [4,2,1,3,2,2] vanishes: yes"));
    assert!(text.contains("bottom: A^4B^7 at x_0, A^7B^{12} at y_0"));
    assert!(text.contains("Gorenstein: yes"));
    assert_eq!(run(&["rectangle", "--pair", "7,12,4,7,24,2", "--csv"]).status.code(), Some(2));
}

#[test]
fn verify_small_sweep() {
    let o = run(&["verify", "--sweep", "--dmax", "3", "--emax", "3", "--kmax", "4", "--jobs", "2", "--claim-bound", "6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("(2, 3, 3)"));
    assert!(text.ends_with("12 of 12 tuples passed\n"), "{text}");
}

#[test]
fn output_goes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("diptych-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chain.json");
    let o = run(&["chain", "--d", "2", "--e", "4", "--k", "3", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let store: EquationStore = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(store.equations.len(), 17);
    std::fs::remove_dir_all(&dir).unwrap();
}
