use std::process::Command;

use baer::payload::{AbelianPayload, ComputePayload, CongruenceSweepPayload, Envelope, GridPayload, PredictPayload};
use baer_core::AbelianStructure;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn baer(args: &str) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_baer"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

#[test]
fn compute_examples() {
    let run = baer("compute --r 3 --s 9 --n 2 --c 2");
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, "Z_3^5\ninvariant factors: 3 3 3 3 3\nfree rank: 0\n");
    assert_eq!(baer("compute --r 3 --s 5 --n 2 --c 2").stdout.lines().next(), Some("trivial"));
    assert_eq!(baer("compute --r 2 --s 2 --n 1 --c 1").stdout.lines().next(), Some("Z_2"));
}

#[test]
fn usage_errors_exit_2() {
    let run = baer("compute --r 2 --s 2 --n 2 --c 1");
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("requires c >= n"), "{}", run.stderr);
    assert_eq!(baer("compute --r 0 --s 2 --n 1 --c 1").code, 2);
    assert_eq!(baer("compute --r 2 --s 2 --n 1").code, 2);
    assert_eq!(baer("abelian --orders 4,x --c 2").code, 2);
    assert_eq!(baer("frobnicate").code, 2);
    assert_eq!(baer("verify lemma21 --c 3 --r 3").code, 2);
    assert_eq!(baer("--format yaml witt --weight 2").code, 2);
}

#[test]
fn resource_rejections_exit_3() {
    let run = baer("compute --r 2 --s 2 --n 5 --c 6");
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("cap"));
    assert_eq!(baer("--cap 13 witt --weight 3").code, 3);
    assert_eq!(baer("--cap 6 verify lemma21 --c 3 --r 4").code, 3);
    let run = baer("--cap 11 witt --weight 3");
    assert_eq!((run.code, run.stdout.as_str()), (0, "2\n"));
    assert!(run.stderr.starts_with("warning:"));
}

#[test]
fn predict_examples() {
    assert_eq!(baer("predict --r 6 --s 10 --n 1 --c 3").stdout, "Z_2^3 (direct product)\n");
    assert_eq!(baer("predict --r 4 --s 6 --n 2 --c 2").stdout, "no closed form applies\n");
    assert_eq!(baer("predict --r 7 --s 11 --n 9 --c 9").stdout, "trivial (coprime orders)\n");
}

#[test]
fn small_commands() {
    assert_eq!(baer("witt --weight 5 --letters 2").stdout, "6\n");
    let run = baer("basis --weight 3 --letters 2");
    let rows: Vec<&str> = run.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].ends_with("[x,[x,y]]") && rows[1].ends_with("[[x,y],y]"));
    assert_eq!(baer("abelian --orders 4,2 --c 2").stdout, "Z_2^2\n");
    let run = baer("prop22 --r 3 --s 9 --c 2 --j 3");
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("diagonal: 3 3 3 3 3\n"));
    assert!(run.stdout.contains("(matches)"));
}

#[test]
fn verify_power_expansions() {
    let run = baer("verify prop22 --c 2 --r 5");
    assert_eq!(run.code, 0);
    assert!(run.stdout.ends_with("8 of 8 hold\n"));
}

#[test]
fn verify_small_grid() {
    let run = baer("verify theorems --max-rs 5 --max-c 4");
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.lines().skip(1).all(|l| l.ends_with("PASS") || l.contains(" PASS, ")));
    let run = baer("--cap 6 verify theorems --max-rs 3 --max-c 4");
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("skipped (cap)"));
}

#[test]
fn json_envelopes_round_trip() {
    let run = baer("--format json compute --r 3 --s 9 --n 2 --c 2");
    let env: Envelope<ComputePayload> = Envelope::parse(&run.stdout).unwrap();
    assert_eq!(env.command, "compute");
    assert_eq!(env.cap, "10");
    assert_eq!(env.parameters["r"], "3");
    assert_eq!(env.result.group.invariant_factors, vec!["3"; 5]);
    assert_eq!(env.result.group.free_rank, "0");
    let group = AbelianStructure::try_from(&env.result.group).unwrap();
    assert_eq!(group.to_string(), "Z_3^5");
    assert_eq!(env.render(), run.stdout);

    let run = baer("--format json predict --r 4 --s 6 --n 2 --c 2");
    let env: Envelope<PredictPayload> = Envelope::parse(&run.stdout).unwrap();
    assert_eq!(env.result.prediction, None);
    assert_eq!(env.render(), run.stdout);

    let run = baer("--format json abelian --orders 4,2 --c 2");
    let env: Envelope<AbelianPayload> = Envelope::parse(&run.stdout).unwrap();
    assert_eq!(env.render(), run.stdout);

    let run = baer("--format json verify lemma21 --c 3 --r 4");
    assert_eq!(run.code, 1);
    let env: Envelope<CongruenceSweepPayload> = Envelope::parse(&run.stdout).unwrap();
    assert!(!env.result.all_hold);
    assert_eq!(env.result.reports.len(), 4);
    assert_eq!(env.render(), run.stdout);

    let run = baer("--format json verify theorems --max-rs 3 --max-c 2");
    let env: Envelope<GridPayload> = Envelope::parse(&run.stdout).unwrap();
    assert_eq!(env.result.failed, "0");
    assert_eq!(env.render(), run.stdout);
}

#[test]
fn json_keys_are_sorted_and_integers_are_strings() {
    let run = baer("--format json witt --weight 4");
    assert_eq!(
        run.stdout,
        "{\n  \"cap\": \"10\",\n  \"command\": \"witt\",\n  \"engine_version\": \"0.1.0\",\n  \"parameters\": {\n    \"letters\": \"2\",\n    \"weight\": \"4\"\n  },\n  \"result\": {\n    \"rank\": \"3\"\n  }\n}\n"
    );
}

#[test]
fn output_is_deterministic() {
    for args in ["verify theorems --max-rs 4 --max-c 3", "--format json compute --r 4 --s 6 --n 2 --c 3"] {
        assert_eq!(baer(args).stdout, baer(args).stdout);
    }
}

#[test]
fn nine_term_goldens() {
    for (c, r) in [(3, 4), (3, 5), (4, 4)] {
        let run = baer(&format!("verify lemma21 --c {c} --r {r}"));
        let path = format!("{}/tests/golden/nine_term_c{c}_r{r}.txt", env!("CARGO_MANIFEST_DIR"));
        assert_eq!(run.stdout, std::fs::read_to_string(path).unwrap());
        assert_eq!(run.code, 1);
    }
}
