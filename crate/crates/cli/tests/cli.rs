use std::path::Path;
use std::process::{Command, Output};

fn linchrom(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linchrom")).args(args).current_dir(dir).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn witness_runs_are_byte_identical_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["witness", "--k", "128", "--colours", "4", "--r", "9", "--seed", "7", "--out"];
    for name in ["a.witness", "b.witness"] {
        let mut full = args.to_vec();
        full.push(name);
        assert_eq!(code(&linchrom(&full, dir.path())), 0);
    }
    let a = std::fs::read(dir.path().join("a.witness")).unwrap();
    let b = std::fs::read(dir.path().join("b.witness")).unwrap();
    assert_eq!(a, b);
    assert_eq!(code(&linchrom(&["verify", "a.witness"], dir.path())), 0);
}

#[test]
fn tampered_witness_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = linchrom(&["witness", "--k", "64", "--colours", "2", "--seed", "3", "--out", "w"], dir.path());
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("w")).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut path: Vec<&str> = lines[1].split_whitespace().collect();
    path.swap(0, 1);
    lines[1] = path.join(" ");
    std::fs::write(dir.path().join("t"), lines.join("\n")).unwrap();
    assert_eq!(code(&linchrom(&["verify", "t"], dir.path())), 1);

    // Replacing a vertex with one off the path is caught too.
    let mut path: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    path[3] = "0";
    let swapped = format!("{}\n{}\n{}\n", text.lines().next().unwrap(), path.join(" "), text.lines().nth(2).unwrap());
    std::fs::write(dir.path().join("u"), swapped).unwrap();
    assert_eq!(code(&linchrom(&["verify", "u"], dir.path())), 1);
}

#[test]
fn treedepth_of_path_on_seven_vertices() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p7"), "graph 7 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\n").unwrap();
    let out = linchrom(&["exact", "treedepth", "p7"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "3");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = linchrom(&["witness", "--k", "many"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("--k"));
    assert_eq!(code(&linchrom(&["nonsense"], dir.path())), 2);
    assert_eq!(code(&linchrom(&["verify", "missing-file"], dir.path())), 2);
}

#[test]
fn experiment_csv_is_deterministic_and_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["experiment", "--k", "64,128", "--divisor", "32", "--trials", "20", "--seed", "5"];
    let mut first = base.to_vec();
    first.extend(["--out", "a.csv", "--witness-dir", "w"]);
    let mut second = base.to_vec();
    second.extend(["--out", "b.csv"]);
    let out = linchrom(&first, dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(code(&linchrom(&second, dir.path())), 0);
    let a = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read_to_string(dir.path().join("b.csv")).unwrap());
    assert!(String::from_utf8(out.stderr).unwrap().contains("success_rate"));

    let mut reader = csv::Reader::from_reader(a.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, linchrom::experiment::HEADER);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 40);
    let mut trial = [0u32; 2];
    for row in &rows {
        if &row[5] != "1" {
            continue;
        }
        let (k, c) = (&row[0], &row[1]);
        let cell = usize::from(k == "128");
        let file = format!("w/k{k}_c{c}_t{}.witness", trial[cell]);
        trial[cell] += 1;
        assert_eq!(code(&linchrom(&["verify", &file], dir.path())), 0, "{file}");
    }
}

#[test]
fn zero_trials_give_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = linchrom(&["experiment", "--k", "64", "--colours", "2", "--trials", "0"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k,c,r,d,seed,success,retries,path_length,wall_ms,failure_stage\n");
}

#[test]
fn generated_files_feed_the_witness_command() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&linchrom(&["gen-pseudogrid", "--k", "64", "--seed", "2", "--out", "g.spec"], p)), 0);
    assert_eq!(code(&linchrom(&["colour-random", "--spec", "g.spec", "--colours", "2", "--seed", "4", "--out", "g.col"], p)), 0);
    let out = linchrom(&["witness", "--spec", "g.spec", "--colouring", "g.col", "--seed", "1", "--out", "g.witness"], p);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&linchrom(&["verify", "g.witness", "--spec", "g.spec", "--colouring", "g.col"], p)), 0);

    assert_eq!(code(&linchrom(&["gen-grid", "--k", "2", "--height", "3", "--out", "g23"], p)), 0);
    let out = linchrom(&["exact", "chicen", "g23"], p);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&linchrom(&["colour-random", "--graph", "g23", "--colours", "3"], p)), 0);
}

#[test]
fn packing_census_stays_small() {
    let dir = tempfile::tempdir().unwrap();
    let out = linchrom(&["packing-census", "--k", "120", "--r", "5", "--trials", "20", "--seed", "1"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("max census"));
}
