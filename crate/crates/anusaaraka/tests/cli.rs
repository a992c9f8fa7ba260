use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use anusaaraka_core::notation::parse_sentence;

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/te-hi")
}

fn cli(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_anusaaraka"))
        .arg("--tables")
        .arg(fixture())
        .arg("--kb")
        .arg(fixture().join("kb"))
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

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn corpus_sources() -> Vec<String> {
    let text = std::fs::read_to_string(fixture().join("corpus.txt")).unwrap();
    text.lines().filter_map(|l| l.strip_prefix("T: ")).map(str::to_owned).collect()
}

#[test]
fn stage1_from_stdin() {
    let o = cli(&[], "mlru pustakaM caduvutunnArA?\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?\n");
}

#[test]
fn empty_input_is_fine() {
    let o = cli(&[], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
}

#[test]
fn stage2_fills_doer_marker() {
    let o = cli(&["--mode", "stage2", "pani cesina rAmmUrti maMcivADu."], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("kiyA_HE_jo_ne_vaHa"));
    assert!(stderr(&o).contains("stage2 fill_star"));
}

#[test]
fn stage2_failure_keeps_exit_zero() {
    let o = cli(&["--mode", "stage2", "UriniMci oVccina nalini mA ceVlleVlu."], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "gAzva_se` AyA_HE_jo*_vaHa bImArI_ko hamArA CotI_bahana.\n");
    assert!(stderr(&o).contains("stage2 failed"));
}

#[test]
fn golden_corpus_passes() {
    let corpus = fixture().join("corpus.txt");
    let o = cli(&["--corpus", corpus.to_str().unwrap()], "");
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("6/6 passed\n"));
}

#[test]
fn altered_corpus_fails() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture().join("corpus.txt")).unwrap().replace("gayA.", "gayA_HE.");
    let path = dir.path().join("corpus.txt");
    std::fs::write(&path, text).unwrap();
    let o = cli(&["--corpus", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL line 17"));
    assert!(stdout(&o).ends_with("5/6 passed\n"));
}

#[test]
fn regenerated_corpus_passes() {
    let input = corpus_sources().join("\n");
    let o = cli(&["--format", "aligned"], &input);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("regen.txt");
    std::fs::write(&path, stdout(&o)).unwrap();
    let o = cli(&["--corpus", path.to_str().unwrap()], "");
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn malformed_corpus_is_a_load_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "@H: x\n").unwrap();
    let o = cli(&["--corpus", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("corpus line 1"));
}

#[test]
fn missing_tables_exit_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_anusaaraka")).args(["--tables", "/nonexistent", "x"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("roots.tsv"));
}

#[test]
fn interactive_answers_from_stdin() {
    let o = cli(&["--mode", "interactive", "pani cesina rAmmUrti maMcivADu."], "ne\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "kAma kiyA_HE_jo_ne_vaHa rAmmUrti bhalA_AdamI.\n");
}

#[test]
fn interactive_with_input_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.txt");
    std::fs::write(&path, "mlru pustakaM caduvutunnArA?\nUriniMci oVccina nalini mA ceVlleVlu.\n").unwrap();
    let o = cli(&["--mode", "interactive", "--input", path.to_str().unwrap()], "thA\nskip\n");
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "Apa pustaka paDha_raHA_thA_kyA{23_ba.}?\ngAzva_se` AyA_HE_jo*_vaHa bImArI_ko hamArA CotI_bahana.\n"
    );
}

#[test]
fn stage1_never_resolves() {
    let o = cli(&[], &corpus_sources().join("\n"));
    for line in stdout(&o).lines() {
        let tokens = parse_sentence(line).unwrap();
        assert!(!line.contains("jo_ne") && !line.contains("raHA_HE") && !line.contains("raHA_thA"), "{line}");
        assert_eq!(anusaaraka_core::stage2::targets(&tokens).is_empty(), !line.contains(['*', '[']));
    }
}

#[test]
fn batch_output_is_deterministic() {
    let sources = corpus_sources();
    let input = sources.iter().cycle().take(sources.len() * 20).cloned().collect::<Vec<_>>().join("\n");
    let a = cli(&["--mode", "stage2"], &input);
    let b = cli(&["--mode", "stage2"], &input);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    assert_eq!(stdout(&a).lines().count(), 120);
}
