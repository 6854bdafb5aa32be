mod common;

use common::{fixtures, hitchin};
use serde_json::Value;

#[test]
fn subcommands_match_goldens() {
    let (count, problems) = common::check_goldens();
    assert!(count >= 13);
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn output_is_stable_across_runs() {
    let input = fixtures().join("inputs/descend_klein.json");
    let args = ["descend", "--input", input.to_str().unwrap()];
    assert_eq!(hitchin(&args, None).stdout, hitchin(&args, None).stdout);
}

#[test]
fn image_sample_pipes_into_image_check() {
    let input = std::fs::read_to_string(fixtures().join("inputs/image_sample_minus_one.json")).unwrap();
    for seed in 0..5 {
        let seed = seed.to_string();
        let sample = hitchin(&["image-sample", "--seed", &seed], Some(&input));
        assert_eq!(sample.code, 0);
        let check = hitchin(&["image-check"], Some(&sample.stdout));
        assert_eq!(check.code, 0);
        let v: Value = serde_json::from_str(&check.stdout).unwrap();
        assert_eq!(v["in_image"], Value::Bool(true));
    }
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("hitchin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("charpoly.json");
    let input = fixtures().join("inputs/charpoly_diag.json");
    let run = hitchin(
        &["charpoly", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()],
        None,
    );
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    let stdout = hitchin(&["charpoly", "--input", input.to_str().unwrap()], None).stdout;
    assert_eq!(written, stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_json_is_invalid_input() {
    let run = hitchin(&["split"], Some("{not json"));
    assert_eq!(run.code, 1);
}
