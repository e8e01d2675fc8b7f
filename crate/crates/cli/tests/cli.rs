//! End-to-end tests of the pipeline binary: every subcommand runs as a
//! real process, exit codes are checked against the documented contract
//! (0 success, 1 input error, 2 usage/config error), and each run's
//! stage report on stderr must be one line of valid JSON.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bitext-forge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// The stage report: the single stderr line, parsed as JSON.
fn report(out: &Output) -> Value {
    let text = stderr_of(out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1, "expected exactly one stderr line, got: {text}");
    let report: Value = serde_json::from_str(lines[0]).unwrap();
    for key in ["stage", "input_count", "output_count", "wall_ms", "parameters"] {
        assert!(report.get(key).is_some(), "report missing {key}: {report}");
    }
    assert!(report["parameters"]["config"].is_object());
    report
}

fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn write_raw_f32(dir: &Path, name: &str, rows: &[Vec<f32>]) -> PathBuf {
    let path = dir.join(name);
    let mut bytes = Vec::new();
    for row in rows {
        for &x in row {
            bytes.extend_from_slice(&x.to_le_bytes());
        }
    }
    std::fs::write(&path, bytes).unwrap();
    path
}

fn unit(mut v: Vec<f32>) -> Vec<f32> {
    let norm = v.iter().map(|&x| (x as f64) * (x as f64)).sum::<f64>().sqrt();
    for x in &mut v {
        *x = (*x as f64 / norm) as f32;
    }
    v
}

/// Deterministic noise for fixture vectors; xorshift so the tests carry
/// no RNG dependency.
fn jitter(state: &mut u64) -> f32 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    ((*state >> 11) as f64 / (1u64 << 53) as f64 * 0.1 - 0.05) as f32
}

fn p(path: &Path) -> String {
    path.display().to_string()
}

// --- metrics ---

#[test]
fn bleu_identity_scores_100_with_signature() {
    let dir = TempDir::new().unwrap();
    let text = "the cat sat on the mat today\nwe all enjoy a good long walk\n";
    let hyp = write_file(dir.path(), "hyp.txt", text);
    let refs = write_file(dir.path(), "ref.txt", text);
    let out = run(&["bleu", "--hyp", &p(&hyp), "--ref", &p(&refs)]);
    assert_eq!(code(&out), 0);
    let stdout = stdout_of(&out);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "100.0");
    assert!(lines[1].contains("|tok:13a|"), "signature: {}", lines[1]);
    assert_eq!(report(&out)["stage"], "bleu");
}

#[test]
fn bleu_tok_none_skips_punctuation_splitting() {
    let dir = TempDir::new().unwrap();
    let hyp = write_file(dir.path(), "hyp.txt", "hello , world again and again\n");
    let refs = write_file(dir.path(), "ref.txt", "hello, world again and again\n");
    let tok13a = run(&["bleu", "--hyp", &p(&hyp), "--ref", &p(&refs)]);
    let none = run(&["bleu", "--hyp", &p(&hyp), "--ref", &p(&refs), "--tok", "none"]);
    assert_eq!(stdout_of(&tok13a).lines().next().unwrap(), "100.0");
    assert_ne!(stdout_of(&none).lines().next().unwrap(), "100.0");
    assert!(stdout_of(&none).contains("|tok:none|"));
}

#[test]
fn chrfpp_identity_scores_100() {
    let dir = TempDir::new().unwrap();
    let text = "यह घर बहुत अच्छा है\n";
    let hyp = write_file(dir.path(), "hyp.txt", text);
    let refs = write_file(dir.path(), "ref.txt", text);
    let out = run(&["chrfpp", "--hyp", &p(&hyp), "--ref", &p(&refs)]);
    assert_eq!(code(&out), 0);
    let stdout = stdout_of(&out);
    assert_eq!(stdout.lines().next().unwrap(), "100.0");
    assert!(stdout.contains("|eff:yes|nc:6|nw:2|"));
}

#[test]
fn significance_of_identical_systems_is_not_significant() {
    let dir = TempDir::new().unwrap();
    let text = "one two three four five\nsix seven eight nine ten\n";
    let hyp = write_file(dir.path(), "hyp.txt", text);
    let refs = write_file(dir.path(), "ref.txt", text);
    let out = run(&[
        "significance", "--hyp-a", &p(&hyp), "--hyp-b", &p(&hyp), "--ref", &p(&refs),
    ]);
    assert_eq!(code(&out), 0);
    let verdict: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["p_value"], 1.0);
    assert_eq!(verdict["significant"], false);
    assert_eq!(verdict["delta"], 0.0);
}

#[test]
fn significance_seed_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let text = "one two three four five\n";
    let hyp = write_file(dir.path(), "hyp.txt", text);
    let refs = write_file(dir.path(), "ref.txt", text);
    let out = run(&[
        "--seed", "7", "significance", "--hyp-a", &p(&hyp), "--hyp-b", &p(&hyp),
        "--ref", &p(&refs),
    ]);
    let verdict: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["seed"], 7);
}

#[test]
fn qc_check_reports_both_verdicts_with_exit_zero() {
    let dir = TempDir::new().unwrap();
    let ok = write_file(dir.path(), "ok.json", r#"{"a": 40.0, "b": 35.0, "c": 33.0}"#);
    let out = run(&["qc-check", "--scores", &p(&ok)]);
    assert_eq!(code(&out), 0);
    let verdict: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["accepted"], true);
    assert_eq!(verdict["suspected"], Value::Null);

    let bad = write_file(dir.path(), "bad.json", r#"{"a": 52.0, "b": 35.0}"#);
    let out = run(&["qc-check", "--scores", &p(&bad)]);
    assert_eq!(code(&out), 0, "a failed check is a verdict, not a tool error");
    let verdict: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["accepted"], false);
    assert_eq!(verdict["suspected"], "a");
}

#[test]
fn bt_allocate_splits_proportionally() {
    let dir = TempDir::new().unwrap();
    let scores = write_file(
        dir.path(),
        "scores.json",
        r#"{"hin_Deva": 50.0, "ben_Beng": 30.0, "tam_Taml": 20.0}"#,
    );
    let out = run(&["bt-allocate", "--scores", &p(&scores), "--total", "100"]);
    assert_eq!(code(&out), 0);
    let alloc: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(alloc["total"], 100);
    assert_eq!(alloc["per_lang_count"]["hin_Deva"], 50);
    assert_eq!(alloc["per_lang_count"]["ben_Beng"], 30);
    assert_eq!(alloc["per_lang_count"]["tam_Taml"], 20);
}

#[test]
fn lcsr_identity_is_one_and_per_line_prints_each_pair() {
    let dir = TempDir::new().unwrap();
    let left = write_file(dir.path(), "left.txt", "abcd\nwxyz\n");
    let right_same = write_file(dir.path(), "right.txt", "abcd\nwxyz\n");
    let out = run(&["lcsr", "--left", &p(&left), "--right", &p(&right_same)]);
    assert_eq!(stdout_of(&out).trim(), "1.000000");

    let right_half = write_file(dir.path(), "half.txt", "abxx\nwxyz\n");
    let out = run(&[
        "lcsr", "--left", &p(&left), "--right", &p(&right_half), "--per-line",
    ]);
    let lines: Vec<String> = stdout_of(&out).lines().map(str::to_string).collect();
    assert_eq!(lines, vec!["0.500000", "1.000000"]);
}

#[test]
fn correlate_reports_pearson_and_kendall() {
    let dir = TempDir::new().unwrap();
    let x = write_file(dir.path(), "x.txt", "1.0\n2.0\n3.0\n4.0\n");
    let y = write_file(dir.path(), "y.txt", "2.0\n4.0\n6.0\n8.0\n");
    let out = run(&["correlate", "--x", &p(&x), "--y", &p(&y)]);
    assert_eq!(code(&out), 0);
    let result: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(result["pearson"], 1.0);
    assert_eq!(result["kendall_tau"], 1.0);
}

// --- text stages ---

#[test]
fn normalize_folds_punctuation_and_preserves_line_count() {
    let dir = TempDir::new().unwrap();
    let input = write_file(dir.path(), "raw.txt", "Hello   World\u{2026} fine\nsecond line\n");
    let output = dir.path().join("clean.txt");
    let out = run(&["normalize", "--input", &p(&input), "--output", &p(&output)]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&output).unwrap();
    assert_eq!(text, "Hello World... fine\nsecond line\n");
    let rep = report(&out);
    assert_eq!(rep["input_count"], 2);
    assert_eq!(rep["output_count"], 2);
}

#[test]
fn normalize_reads_stdin_when_no_input_given() {
    let mut child = bin()
        .arg("normalize")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all("a \u{2019}quoted\u{2019} word\n".as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out), "a 'quoted' word\n");
}

#[test]
fn filter_attributes_drops_and_keeps_matching_sentences() {
    let dir = TempDir::new().unwrap();
    let input = write_file(
        dir.path(),
        "corpus.txt",
        "यह घर बहुत अच्छा है\nछोटा\nthis is english text only here today\nयह एक बुरा वाक्य है\n",
    );
    let blocklist = write_file(dir.path(), "block.txt", "बुरा\n");
    let output = dir.path().join("kept.txt");
    let out = run(&[
        "filter", "--lang", "hin_Deva", "--input", &p(&input), "--output", &p(&output),
        "--blocklist", &p(&blocklist),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&output).unwrap(), "यह घर बहुत अच्छा है\n");
    let rep = report(&out);
    assert_eq!(rep["input_count"], 4);
    assert_eq!(rep["output_count"], 1);
    let dropped = &rep["parameters"]["filter"]["dropped_by_reason"];
    assert_eq!(dropped["length"], 1);
    assert_eq!(dropped["lid"], 1);
    assert_eq!(dropped["toxicity"], 1);
}

#[test]
fn dedup_keeps_first_of_each_variant_group() {
    let dir = TempDir::new().unwrap();
    let input = write_file(
        dir.path(),
        "lines.txt",
        "Hello World today\nHELLO world... today\nanother sentence entirely\nhello   world TODAY\n",
    );
    let out = run(&["dedup", "--input", &p(&input)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out), "Hello World today\nanother sentence entirely\n");
    let rep = report(&out);
    assert_eq!(rep["input_count"], 4);
    assert_eq!(rep["output_count"], 2);
    assert_eq!(rep["parameters"]["mode"], "self");
}

#[test]
fn dedup_against_benchmarks_drops_overlapping_pairs() {
    let dir = TempDir::new().unwrap();
    let pairs = "0\t0\tkeep this source line\tkeep this target line\t0.910000\tmargin\n\
                 1\t1\tHeld OUT sentence here!!\tsome target text\t0.920000\tmargin\n\
                 2\t2\tsafe source text\tanother target text\t0.930000\tmargin\n";
    let input = write_file(dir.path(), "mined.tsv", pairs);
    let bench = write_file(dir.path(), "bench.txt", "held out sentence here\n");
    let out = run(&[
        "dedup", "--input", &p(&input), "--benchmarks", &p(&bench),
        "--src-lang", "eng_Latn", "--tgt-lang", "hin_Deva",
    ]);
    assert_eq!(code(&out), 0);
    let kept = stdout_of(&out);
    assert!(!kept.contains("Held OUT"));
    assert_eq!(kept.lines().count(), 2);
    let rep = report(&out);
    assert_eq!(rep["parameters"]["filter"]["dropped_by_reason"]["benchmark_overlap"], 1);
}

#[test]
fn dedup_with_benchmarks_requires_language_flags() {
    let dir = TempDir::new().unwrap();
    let input = write_file(dir.path(), "mined.tsv", "");
    let bench = write_file(dir.path(), "bench.txt", "a\n");
    let out = run(&["dedup", "--input", &p(&input), "--benchmarks", &p(&bench)]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("--src-lang"));
}

// --- mining stages ---

/// 640 near-basis vectors in 8 dimensions; shard-able (two shards of 320
/// rows, enough for product quantization) and clusterable with 16 cells.
fn target_fixture() -> Vec<Vec<f32>> {
    let mut state = 0x9e3779b97f4a7c15u64;
    (0..640)
        .map(|i| {
            let mut v: Vec<f32> = (0..8).map(|_| jitter(&mut state)).collect();
            v[i % 8] += 1.0;
            unit(v)
        })
        .collect()
}

fn mining_config(dir: &Path) -> PathBuf {
    write_file(dir, "mine.json", r#"{"shards": 2, "k_c": 16, "m_sub": 4, "top_clusters": 16}"#)
}

#[test]
fn mine_mono_recovers_planted_pairs_deterministically() {
    let dir = TempDir::new().unwrap();
    let targets = target_fixture();
    let planted = [3usize, 17, 100, 555];
    let mut state = 0xdeadbeefcafef00du64;
    let queries: Vec<Vec<f32>> = planted
        .iter()
        .map(|&t| {
            let v: Vec<f32> =
                targets[t].iter().map(|&x| x + 0.2 * jitter(&mut state)).collect();
            unit(v)
        })
        .collect();
    let tgt_raw = write_raw_f32(dir.path(), "tgt.raw", &targets);
    let qry_raw = write_raw_f32(dir.path(), "qry.raw", &queries);
    let tgt_txt_content: String =
        (0..640).map(|i| format!("target sentence number {i} here\n")).collect();
    let tgt_txt = write_file(dir.path(), "tgt.txt", &tgt_txt_content);
    let qry_txt_content: String =
        planted.iter().map(|t| format!("query aimed at target {t}\n")).collect();
    let qry_txt = write_file(dir.path(), "qry.txt", &qry_txt_content);
    let config = mining_config(dir.path());

    let tgt_embf = dir.path().join("tgt.embf");
    let qry_embf = dir.path().join("qry.embf");
    for (raw, embf) in [(&tgt_raw, &tgt_embf), (&qry_raw, &qry_embf)] {
        let out = run(&[
            "embed-convert", "--input", &p(raw), "--dim", "8", "--output", &p(embf),
            "--normalize",
        ]);
        assert_eq!(code(&out), 0, "{}", stderr_of(&out));
    }

    let args = [
        "--config", &p(&config), "mine-mono", "--queries", &p(&qry_txt),
        "--query-embeds", &p(&qry_embf), "--targets", &p(&tgt_txt),
        "--target-embeds", &p(&tgt_embf), "--src-lang", "eng_Latn",
        "--tgt-lang", "hin_Deva",
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0, "{}", stderr_of(&first));
    let mined = stdout_of(&first);
    let mined_targets: Vec<usize> = mined
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(mined_targets, planted.to_vec());

    let second = run(&args);
    assert_eq!(stdout_of(&second), mined, "mining must be deterministic");
}

#[test]
fn mine_comparable_finds_the_aligned_pair() {
    let dir = TempDir::new().unwrap();
    // A shared bias axis keeps every margin denominator positive; only
    // pair (0, 0) is actually aligned.
    let axis = |i: usize| {
        let mut v = vec![0.0f32; 8];
        v[i] = 1.0;
        v[7] = 0.3;
        unit(v)
    };
    let src = vec![axis(0), axis(1), axis(2)];
    let tgt = vec![unit(vec![1.0, 0.05, 0.0, 0.0, 0.0, 0.0, 0.0, 0.3]), axis(3), axis(4)];
    let src_raw = write_raw_f32(dir.path(), "src.raw", &src);
    let tgt_raw = write_raw_f32(dir.path(), "tgt.raw", &tgt);
    let src_txt = write_file(dir.path(), "src.txt", "source zero\nsource one\nsource two\n");
    let tgt_txt = write_file(dir.path(), "tgt.txt", "cible zero\ncible one\ncible two\n");
    let config = write_file(dir.path(), "cfg.json", r#"{"k_nn": 2}"#);

    let src_embf = dir.path().join("src.embf");
    let tgt_embf = dir.path().join("tgt.embf");
    for (raw, embf) in [(&src_raw, &src_embf), (&tgt_raw, &tgt_embf)] {
        let out = run(&[
            "embed-convert", "--input", &p(raw), "--dim", "8", "--output", &p(embf),
            "--normalize",
        ]);
        assert_eq!(code(&out), 0);
    }
    let out = run(&[
        "--config", &p(&config), "mine-comparable", "--src", &p(&src_txt),
        "--src-embeds", &p(&src_embf), "--tgt", &p(&tgt_txt),
        "--tgt-embeds", &p(&tgt_embf), "--src-lang", "eng_Latn",
        "--tgt-lang", "hin_Deva",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_of(&out));
    let mined = stdout_of(&out);
    assert_eq!(mined.lines().count(), 1);
    let fields: Vec<&str> = mined.lines().next().unwrap().split('\t').collect();
    assert_eq!(&fields[..4], &["0", "0", "source zero", "cible zero"]);
    assert_eq!(fields[5], "margin");
}

#[test]
fn refilter_drops_pairs_below_the_cosine_threshold() {
    let dir = TempDir::new().unwrap();
    let src = vec![unit(vec![1.0, 0.0, 0.0, 0.0]), unit(vec![0.0, 1.0, 0.0, 0.0])];
    let tgt = vec![unit(vec![1.0, 0.05, 0.0, 0.0]), unit(vec![0.0, 0.0, 1.0, 0.0])];
    let src_raw = write_raw_f32(dir.path(), "src.raw", &src);
    let tgt_raw = write_raw_f32(dir.path(), "tgt.raw", &tgt);
    let pairs = write_file(
        dir.path(),
        "pairs.tsv",
        "good source pair\tgood target pair\nbad source pair\tbad target pair\n",
    );
    let src_embf = dir.path().join("src.embf");
    let tgt_embf = dir.path().join("tgt.embf");
    for (raw, embf) in [(&src_raw, &src_embf), (&tgt_raw, &tgt_embf)] {
        let out = run(&[
            "embed-convert", "--input", &p(raw), "--dim", "4", "--output", &p(embf),
            "--normalize",
        ]);
        assert_eq!(code(&out), 0);
    }
    let out = run(&[
        "refilter", "--pairs", &p(&pairs), "--src-embeds", &p(&src_embf),
        "--tgt-embeds", &p(&tgt_embf), "--src-lang", "eng_Latn", "--tgt-lang", "hin_Deva",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_of(&out));
    let kept = stdout_of(&out);
    assert_eq!(kept.lines().count(), 1);
    assert!(kept.contains("good source pair"));
    let rep = report(&out);
    assert_eq!(rep["parameters"]["retention_percent"], 50.0);
}

#[test]
fn index_build_writes_a_loadable_index() {
    let dir = TempDir::new().unwrap();
    let targets = target_fixture();
    let raw = write_raw_f32(dir.path(), "tgt.raw", &targets);
    let embf = dir.path().join("tgt.embf");
    let out = run(&[
        "embed-convert", "--input", &p(&raw), "--dim", "8", "--output", &p(&embf),
        "--normalize",
    ]);
    assert_eq!(code(&out), 0);
    let config = mining_config(dir.path());
    let index = dir.path().join("tgt.ivpq");
    let out = run(&[
        "--config", &p(&config), "index-build", "--embeddings", &p(&embf),
        "--output", &p(&index),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_of(&out));
    let bytes = std::fs::read(&index).unwrap();
    assert_eq!(&bytes[..4], b"IVPQ");
}

#[test]
fn index_build_rejects_unnormalized_embeddings() {
    let dir = TempDir::new().unwrap();
    let raw = write_raw_f32(dir.path(), "v.raw", &target_fixture());
    let embf = dir.path().join("v.embf");
    let out = run(&["embed-convert", "--input", &p(&raw), "--dim", "8", "--output", &p(&embf)]);
    assert_eq!(code(&out), 0);
    let config = mining_config(dir.path());
    let index = dir.path().join("v.ivpq");
    let out = run(&[
        "--config", &p(&config), "index-build", "--embeddings", &p(&embf),
        "--output", &p(&index),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_of(&out).contains("not L2-normalized"));
}

#[test]
fn embed_convert_rejects_misshapen_input() {
    let dir = TempDir::new().unwrap();
    let odd = write_file(dir.path(), "odd.raw", "abcdefghij");
    let out = run(&[
        "embed-convert", "--input", &p(&odd), "--dim", "8",
        "--output", &p(&dir.path().join("x.embf")),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_of(&out).contains("whole number of f32"));

    let three_floats = write_raw_f32(dir.path(), "three.raw", &[vec![1.0, 2.0, 3.0]]);
    let out = run(&[
        "embed-convert", "--input", &p(&three_floats), "--dim", "8",
        "--output", &p(&dir.path().join("y.embf")),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_of(&out).contains("dimension 8"));
}

// --- config and exit codes ---

#[test]
fn unknown_subcommand_exits_with_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("Usage"));
}

#[test]
fn unknown_config_key_is_rejected_by_name() {
    let dir = TempDir::new().unwrap();
    let config = write_file(dir.path(), "c.json", r#"{"cosine_treshold": 0.85}"#);
    let text = write_file(dir.path(), "t.txt", "five words are here now\n");
    let out = run(&[
        "--config", &p(&config), "bleu", "--hyp", &p(&text), "--ref", &p(&text),
    ]);
    assert_eq!(code(&out), 2);
    let err = stderr_of(&out);
    assert!(err.contains("cosine_treshold"), "error must name the key: {err}");
    assert!(err.contains("cosine_threshold"), "error should list valid keys: {err}");
}

#[test]
fn config_path_that_does_not_exist_is_rejected_by_key() {
    let dir = TempDir::new().unwrap();
    let config = write_file(dir.path(), "c.json", r#"{"embeddings": "missing.embf"}"#);
    let text = write_file(dir.path(), "t.txt", "five words are here now\n");
    let out = run(&[
        "--config", &p(&config), "bleu", "--hyp", &p(&text), "--ref", &p(&text),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("config key `embeddings`"));
}

#[test]
fn config_overrides_are_echoed_in_the_stage_report() {
    let dir = TempDir::new().unwrap();
    let config = write_file(dir.path(), "c.json", r#"{"cosine_threshold": 0.9, "seed": 42}"#);
    let text = write_file(dir.path(), "t.txt", "five words are here now\n");
    let out = run(&[
        "--config", &p(&config), "bleu", "--hyp", &p(&text), "--ref", &p(&text),
    ]);
    assert_eq!(code(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["parameters"]["config"]["cosine_threshold"], 0.9);
    assert_eq!(rep["parameters"]["config"]["seed"], 42);
    assert_eq!(rep["parameters"]["config"]["margin_threshold"], 1.06);
}

#[test]
fn invalid_language_code_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let input = write_file(dir.path(), "t.txt", "some text\n");
    let out = run(&["filter", "--lang", "zz_Nope", "--input", &p(&input)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_input_file_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let refs = write_file(dir.path(), "ref.txt", "five words are here now\n");
    let out = run(&["bleu", "--hyp", &p(&dir.path().join("absent.txt")), "--ref", &p(&refs)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn missing_required_path_names_flag_and_config_key() {
    let dir = TempDir::new().unwrap();
    let out = run(&["index-build", "--output", &p(&dir.path().join("x.ivpq"))]);
    assert_eq!(code(&out), 2);
    let err = stderr_of(&out);
    assert!(err.contains("--embeddings") && err.contains("config key `embeddings`"), "{err}");
}
