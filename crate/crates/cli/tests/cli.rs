use std::path::{Path, PathBuf};
use std::process::Command;

use invsemi_cli::formats::{parse_ia, serialize_ia, CtFile, EqnFile, GraphFile, NclFile, PbFile};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("invsemi").chain(args.iter().copied());
    let code = invsemi_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn brandt_path_member_is_yes_and_verifies() {
    let f = data("b3_path.pb");
    let (code, out, _) = run(&["member", p(&f)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("YES\n"));
    assert!(out.contains("\nslp\n"));
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("out.txt");
    std::fs::write(&saved, &out).unwrap();
    assert_eq!(run(&["verify", p(&f), p(&saved)]).1, "VALID\n");
}

#[test]
fn oracle_prints_named_word() {
    let (code, out, _) = run(&["member", p(&data("b3_path.pb")), "--solver", "oracle", "--force-oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("word a b\n"), "{out}");
}

#[test]
fn classify_b2() {
    let (code, out, _) = run(&["classify", p(&data("b2.ct"))]);
    assert_eq!(code, 0);
    assert_eq!(out, "StrictInverse\ndivides_Y2 = true\ndivides_B2 = true\ndivides_B21 = false\n");
}

#[test]
fn ct_conjugacy_and_green() {
    let f = data("b2.ct");
    let (_, out, _) = run(&["conj", p(&f)]);
    assert!(out.starts_with("YES\nconjugator 1\n"), "{out}");
    assert_eq!(run(&["green", p(&f), "--rel", "D"]).1, "YES\n");
    assert_eq!(run(&["green", p(&f), "--rel", "r"]).1, "NO\n");
}

#[test]
fn pb_conjugacy_through_the_table_solver_agrees() {
    let f = data("s3.pb");
    let a = run(&["conj", p(&f)]).1;
    let b = run(&["conj", p(&f), "--solver", "ct-greedy"]).1;
    assert_eq!(a, "NO\n");
    assert_eq!(a, b);
}

#[test]
fn non_associative_table_is_an_input_error() {
    let (code, out, err) = run(&["member", p(&data("nonassoc.ct"))]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 2") && err.contains("associative"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["member"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["member", "/nonexistent/file.pb"]).0, 2);
    // general variety without --force-oracle
    let dir = tempfile::tempdir().unwrap();
    let n = dir.path().join("n.pb");
    assert_eq!(run(&["gen", "ncl-conj", p(&data("small.ncl")), "-o", p(&n)]).0, 0);
    let (code, _, err) = run(&["conj", p(&n)]);
    assert_eq!(code, 1, "{err}");
    assert_eq!(run(&["member", p(&data("b3_path.pb")), "--max-elements", "2"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["member", "b3_path.pb"], vec!["slp", "s3.pb"], vec!["mgs", "s3.pb", "-k", "2"]] {
        let f = data(args[1]);
        let mut a: Vec<&str> = args.clone();
        a[1] = p(&f);
        let first = run(&a).1;
        let mut seeded = a.clone();
        seeded.extend(["--seed", "17"]);
        assert_eq!(first, run(&a).1);
        assert_eq!(first, run(&seeded).1);
    }
}

#[test]
fn canonical_serialization_round_trips() {
    let read = |n: &str| std::fs::read_to_string(data(n)).unwrap();
    let pb = PbFile::parse(&read("b3_path.pb")).unwrap();
    assert_eq!(PbFile::parse(&pb.serialize()).unwrap(), pb);
    let ct = CtFile::parse(&read("b2.ct")).unwrap();
    assert_eq!(CtFile::parse(&ct.serialize()).unwrap(), ct);
    let g = GraphFile::parse(&read("path.graph")).unwrap();
    assert_eq!(GraphFile::parse(&g.serialize()).unwrap(), g);
    let n = NclFile::parse(&read("small.ncl")).unwrap();
    assert_eq!(NclFile::parse(&n.serialize()).unwrap(), n);
    let ia = parse_ia(&read("two.ia")).unwrap();
    let text: String = ia.iter().map(serialize_ia).collect();
    assert_eq!(parse_ia(&text).unwrap(), ia);
    // serialize is a fixed point after one pass
    assert_eq!(PbFile::parse(&pb.serialize()).unwrap().serialize(), pb.serialize());
}

#[test]
fn equation_generation_and_solution() {
    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("e.eqn");
    let (code, _, err) = run(&["gen", "equation", p(&data("idem.pb")), "-o", p(&e)]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&e).unwrap();
    assert!(text.starts_with("% generated by invsemi gen equation from idem.pb\n"));
    let parsed = EqnFile::parse(&text).unwrap();
    assert_eq!(EqnFile::parse(&parsed.serialize()).unwrap(), parsed);
    let (code, out, _) = run(&["eqn", p(&e)]);
    assert_eq!(code, 0);
    assert_eq!(out, "YES\nassign X 3 _ _\n");
    let saved = dir.path().join("out.txt");
    std::fs::write(&saved, &out).unwrap();
    assert_eq!(run(&["verify", p(&e), p(&saved)]).0, 0);
    std::fs::write(&saved, "YES\nassign X 1 _ _\n").unwrap();
    assert_eq!(run(&["verify", p(&e), p(&saved)]).0, 1);
}

#[test]
fn ncl_automata_writes_one_file_per_local_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("auto");
    assert_eq!(run(&["gen", "ncl-automata", p(&data("small.ncl")), "-o", p(&out)]).0, 0);
    // K4 with every weight 2: each vertex has the 7 nonempty in-masks.
    let files: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 4 * 7);
    let mut args = vec!["automata".to_string(), "intersect".to_string()];
    args.extend(files.iter().map(|f| f.display().to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, res, _) = run(&refs);
    assert_eq!(code, 0);
    assert!(res.starts_with("YES\nword "), "{res}");
}

#[test]
fn ugap_instances_follow_connectivity() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("u.ct");
    let m = dir.path().join("um.ct");
    assert_eq!(run(&["gen", "ugap-conj", p(&data("path.graph")), "-o", p(&c)]).0, 0);
    assert_eq!(run(&["gen", "ugap-member", p(&data("path.graph")), "-o", p(&m)]).0, 0);
    assert!(run(&["conj", p(&c)]).1.starts_with("YES\n"));
    let (_, out, _) = run(&["member", p(&m)]);
    assert!(out.starts_with("YES\n"));
    let saved = dir.path().join("out.txt");
    std::fs::write(&saved, &out).unwrap();
    assert_eq!(run(&["verify", p(&m), p(&saved)]).0, 0);
}

#[test]
fn mgs_and_transport() {
    let f = data("s3.pb");
    assert_eq!(run(&["mgs", p(&f), "-k", "1"]).1, "NO\nminimum 2\n");
    let (_, out, _) = run(&["transport", p(&f)]);
    assert!(out.starts_with("YES\nwitness "));
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("out.txt");
    std::fs::write(&saved, "YES\nminimum 1\ngen 2 1 3\n").unwrap();
    assert_eq!(run(&["verify", p(&f), p(&saved)]).1, "INVALID\n");
}

#[test]
fn automata_subcommands() {
    let (_, out, _) = run(&["automata", "intersect", p(&data("two.ia"))]);
    assert_eq!(out, "YES\nword 1 1\n");
    assert_eq!(run(&["automata", "validate", p(&data("two.ia"))]).1, "ok 2\n");
    assert_eq!(run(&["automata", "validate", p(&data("nondet.ia"))]).0, 2);
}

#[test]
fn binary_matches_library_entry_point() {
    let f = data("b2.ct");
    let o = Command::new(env!("CARGO_BIN_EXE_invsemi")).args(["classify", p(&f)]).output().unwrap();
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), run(&["classify", p(&f)]).1);
    let o = Command::new(env!("CARGO_BIN_EXE_invsemi")).args(["member", p(&data("nonassoc.ct"))]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
