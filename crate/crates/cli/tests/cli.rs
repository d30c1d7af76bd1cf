use std::io::Write;
use std::process::{Command, Output, Stdio};

fn heavyseg(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_heavyseg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SAMPLE: &str = "2 -3 4 -1 2\n";

#[test]
fn max_density_json() {
    let o = heavyseg(&["max-density", "--L", "2", "--U", "3"], SAMPLE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"start\":3,\"end\":5,\"sum\":5,\"width\":3,\"density\":1.666666667}\n");
}

#[test]
fn max_sum_weighted() {
    let o = heavyseg(&["max-sum", "--L", "2", "--U", "3", "--format", "numbers-with-widths"], "3 1\n1 2\n-2 1\n");
    assert_eq!(stdout(&o), "{\"start\":1,\"end\":2,\"sum\":4,\"width\":3,\"density\":1.333333333}\n");
}

#[test]
fn count_example() {
    let o = heavyseg(&["count", "--L", "2", "--U", "3"], SAMPLE);
    assert_eq!(stdout(&o), "{\"count\":7}\n");
}

#[test]
fn above_sum_sorted_by_position() {
    let o = heavyseg(&["above-sum", "--L", "2", "--U", "3", "--threshold", "3", "--output", "tsv"], SAMPLE);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split('\t').take(2).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(rows, vec!["1,3", "3,4", "3,5"]);
}

#[test]
fn above_density_exact_ratio() {
    let inclusive = heavyseg(&["above-density", "--L", "2", "--U", "3", "--threshold", "5/3"], SAMPLE);
    assert_eq!(stdout(&inclusive).lines().count(), 3);
    let strict = heavyseg(&["above-density", "--L", "2", "--U", "3", "--threshold", "5/3", "--strict"], SAMPLE);
    assert_eq!(stdout(&strict), "[]\n");
}

#[test]
fn topk_order_and_clamp() {
    let o = heavyseg(&["topk-sum", "--L", "2", "--U", "3", "--k", "3", "--output", "tsv"], SAMPLE);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split('\t').take(2).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(rows, vec!["3,5", "1,3", "3,4"]);
    let o = heavyseg(&["topk-density", "--L", "2", "--U", "3", "--k", "9"], SAMPLE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
    assert!(String::from_utf8_lossy(&o.stderr).contains("clamped"));
}

#[test]
fn matrix_commands() {
    let m = "rows 2 cols 3\n1 -2 3\n2 1 -4\n";
    let o = heavyseg(&["matrix2d-sum", "--L", "1", "--U", "2"], m);
    assert_eq!(stdout(&o), "{\"r1\":1,\"r2\":1,\"c1\":3,\"c2\":3,\"sum\":3,\"width\":1,\"density\":3}\n");
    let o = heavyseg(&["matrix2d-density", "--L", "2", "--U", "3", "--threads", "2"], m);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("{\"r1\":2,\"r2\":2,\"c1\":1,\"c2\":2,"));
}

#[test]
fn fasta_with_scoring_and_footer() {
    let fasta = ">chr1 test\nACGCG\n>chr2\nATAT\n";
    let o = heavyseg(&["max-density", "--L", "4", "--U", "4", "--format", "fasta"], fasta);
    assert_eq!(stdout(&o), "{\"start\":2,\"end\":5,\"sum\":4,\"width\":4,\"density\":1}\n");
    let footer = String::from_utf8(o.stderr).unwrap();
    assert!(footer.contains("{\"id\":\"chr1\",\"start\":1,\"end\":5}"));
    assert!(footer.contains("{\"id\":\"chr2\",\"start\":6,\"end\":9}"));
    let o = heavyseg(&["max-sum", "--L", "2", "--U", "2", "--format", "fasta", "--scoring", "A=2,T=1"], fasta);
    assert_eq!(stdout(&o), "{\"start\":6,\"end\":7,\"sum\":3,\"width\":2,\"density\":1.5}\n");
}

#[test]
fn stream_matches_batch_byte_for_byte() {
    let text: String = (0..400).map(|i| format!("{}\n", i * 37 % 21 - 10)).collect();
    for cmd in ["max-sum", "max-density", "topk-sum", "topk-density", "above-sum", "above-density"] {
        let args = ["--L", "5", "--U", "17", "--k", "12", "--threshold", "8"];
        let mut batch: Vec<&str> = vec![cmd];
        batch.extend(args);
        let mut streamed = batch.clone();
        streamed.push("--stream");
        let a = heavyseg(&batch, &text);
        let b = heavyseg(&streamed, &text);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(a.stdout, heavyseg(&batch, &text).stdout, "{cmd} is deterministic");
    }
}

#[test]
fn file_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(SAMPLE.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();
    let o = heavyseg(&["max-sum", "--L", "2", "--U", "3", path], "");
    assert_eq!(stdout(&o), "{\"start\":3,\"end\":5,\"sum\":5,\"width\":3,\"density\":1.666666667}\n");
}

#[test]
fn exit_codes() {
    assert_eq!(heavyseg(&["max-sum", "--L", "6", "--U", "9"], SAMPLE).status.code(), Some(2));
    let o = heavyseg(&["max-sum", "--L", "3", "--U", "2"], SAMPLE);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--L/--U"));
    let o = heavyseg(&["topk-sum", "--L", "2", "--U", "3"], SAMPLE);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--k"));
    let o = heavyseg(&["max-sum", "--U", "3"], SAMPLE);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--L"));
    let o = heavyseg(&["max-sum", "--L", "2", "--U", "3", "--format", "numbers-with-widths"], "3 0\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(heavyseg(&["max-sum", "--L", "1", "--U", "2"], "").status.code(), Some(1));
    assert_eq!(heavyseg(&["--help"], "").status.code(), Some(0));
}
