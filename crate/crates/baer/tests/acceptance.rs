//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p baer --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use baer::payload::CellStatus;
use baer::sweep::{theorem_grid, GridBounds};
use baer_core::baer::{abelian_multiplicator, baer_invariant, power_claim, rho_subgroup_structure};
use baer_core::intlin::{smith_normal_form, IntMatrix};
use baer_core::lyndon::{enumerate_basis, witt_rank};
use baer_core::magnus::{expand_expr, lcs_class, magnus_expand};
use baer_core::nilform::{coordinates, from_coordinates, CoordinateVector};
use baer_core::{CommutatorExpr, Generator, Int, Letter, ProblemSpec, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(r: u64, s: u64, n: usize, c: usize) -> ProblemSpec {
    ProblemSpec::new(r, s, n, c).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn run_cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_baer")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn klein_four() -> Outcome {
    let start = Instant::now();
    let (stdout, code) = run_cli(&["compute", "--r", "2", "--s", "2", "--n", "1", "--c", "1"]);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let first = stdout.lines().next().unwrap_or_default();
    ensure(first == "Z_2", || format!("got {first:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("Z_2 in {elapsed:.2?}"))
}

// Hypotheses written out independently of the predictor.
fn covered(r: u64, s: u64, n: usize) -> bool {
    let prime_to_six = |v: u64| !v.is_multiple_of(2) && !v.is_multiple_of(3);
    gcd(r, s) == 1
        || n == 1
        || (n == 2 && r % 2 == 1 && s % 2 == 1)
        || ((n == 3 || n == 4) && prime_to_six(r) && prime_to_six(s))
}

fn theorem_grid_agreement() -> Outcome {
    let start = Instant::now();
    let bounds = GridBounds {
        min_rs: 2,
        max_rs: 9,
        max_n: 4,
        max_c: 5,
    };
    let cells = theorem_grid(&bounds, 9).map_err(|e| e.to_string())?;
    let mut expected = Vec::new();
    for r in 2..=9 {
        for s in 2..=9 {
            for n in 1..=4 {
                for c in n..=5 {
                    // n = 2, c = 1 is outside the c ≥ n range and never reaches the grid.
                    if c + n <= 9 && covered(r, s, n) {
                        expected.push((r, s, n, c));
                    }
                }
            }
        }
    }
    let got: Vec<_> = cells.iter().map(|c| (c.spec.r, c.spec.s, c.spec.n, c.spec.c)).collect();
    ensure(got == expected, || format!("grid has {} cells, expected {}", got.len(), expected.len()))?;
    let failed: Vec<String> = cells
        .iter()
        .filter(|c| c.status() != CellStatus::Pass)
        .map(|c| format!("{} {}", c.spec, c.status()))
        .collect();
    ensure(failed.is_empty(), || format!("non-passing cells: {}", failed.join("; ")))?;
    Ok(format!("{} cells agree in {:.1?}", cells.len(), start.elapsed()))
}

fn rho_first_layer() -> Outcome {
    for (r, s, c) in [(3, 9, 2), (4, 6, 3), (5, 10, 2)] {
        let p = spec(r, s, 1, c);
        let sub = rho_subgroup_structure(&p, 2, 10).map_err(|e| e.to_string())?;
        let n = witt_rank(c + 1, 2) as usize;
        let d = Int::from(gcd(r, s));
        ensure(sub.ambient_rank == n && sub.diagonal == vec![d.clone(); n], || {
            format!("{p}: diagonal {:?} in rank {}", sub.diagonal, sub.ambient_rank)
        })?;
    }
    Ok("d·Z^r(c+1) for all three".into())
}

fn rho_second_layer() -> Outcome {
    let sub = rho_subgroup_structure(&spec(3, 9, 1, 2), 3, 10).map_err(|e| e.to_string())?;
    ensure(sub.ambient_rank == 5 && sub.diagonal == vec![Int::from(3); 5], || format!("{:?}", sub))?;
    Ok("five factors equal to 3".into())
}

fn witt_counts() -> Outcome {
    let start = Instant::now();
    let formula: Vec<u64> = (1..=10).map(|w| witt_rank(w, 2)).collect();
    let counted: Vec<u64> = (1..=10).map(|w| enumerate_basis(w, 2).len() as u64).collect();
    let elapsed = start.elapsed();
    ensure(formula == counted, || format!("{formula:?} vs {counted:?}"))?;
    ensure(formula == [2, 1, 2, 3, 6, 9, 18, 30, 56, 99], || format!("{formula:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{formula:?}"))
}

fn tails(len: usize) -> Vec<Vec<Generator>> {
    (0..1usize << len)
        .map(|bits| (0..len).map(|i| Generator::from_index((bits >> i) & 1).unwrap()).collect())
        .collect()
}

fn congruence_oracle() -> Outcome {
    let (mut claims, mut perturbations, mut identity_terms) = (0, 0, 0);
    for c in 1..=4 {
        for r in 1..=9 {
            for tail in tails(c) {
                for m in [c + 2, c + 3] {
                    let claim = power_claim(c, r, &tail, m, 10).map_err(|e| e.to_string())?;
                    let report = claim.check().map_err(|e| e.to_string())?;
                    ensure(report.holds, || format!("c={c} r={r} {tail:?} mod γ_{m} fails"))?;
                    claims += 1;
                    for (i, (term, _)) in claim.terms.iter().enumerate() {
                        // Perturbing the exponent of an identity element leaves the claim unchanged.
                        let identity = expand_expr(term, m - 1).map_err(|e| e.to_string())?.is_one();
                        ensure(identity == (tail[0] == Generator::X), || format!("{term} identity = {identity}"))?;
                        for delta in [-1, 1] {
                            let holds = claim.perturbed(i, delta).check().map_err(|e| e.to_string())?.holds;
                            ensure(holds == identity, || format!("c={c} r={r} {tail:?} term {i} {delta:+}"))?;
                            perturbations += 1;
                            identity_terms += identity as usize;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{claims} claims hold; {} perturbations of non-identity terms all fail ({identity_terms} perturb identity terms, a_1 = x)",
        perturbations - identity_terms
    ))
}

fn nine_term_goldens() -> Outcome {
    let mut notes = Vec::new();
    for (c, r) in [(3, 4), (3, 5), (4, 4)] {
        let start = Instant::now();
        let (c_arg, r_arg) = (c.to_string(), r.to_string());
        let (stdout, code) = run_cli(&["--cap", "9", "verify", "lemma21", "--c", &c_arg, "--r", &r_arg]);
        let elapsed = start.elapsed();
        let path = format!("{}/tests/golden/nine_term_c{c}_r{r}.txt", env!("CARGO_MANIFEST_DIR"));
        let golden = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
        ensure(stdout == golden, || format!("c={c} r={r} differs from {path}"))?;
        ensure(code == 1, || format!("c={c} r={r} exit code {code}, golden verdict is a failure"))?;
        ensure(elapsed < Duration::from_secs(120), || format!("c={c} r={r} took {elapsed:?}"))?;
        notes.push(format!("c={c} r={r}: {}", stdout.lines().last().unwrap_or_default()));
    }
    Ok(format!("matches goldens ({})", notes.join(", ")))
}

fn multiplicator_cross_check() -> Outcome {
    for m in [2u64, 3, 4, 6] {
        for c in 1..=4 {
            let a = abelian_multiplicator(&[Int::from(m), Int::from(m)], c).map_err(|e| e.to_string())?;
            let b = baer_invariant(&spec(m, m, 1, c), 10).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("m={m} c={c}: {a} vs {b}"))?;
        }
    }
    Ok("16 cases agree".into())
}

const LETTERS: [Letter; 4] = [Letter::X, Letter::Y, Letter::X_INV, Letter::Y_INV];

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| LETTERS[rng.gen_range(0..4)]))
}

fn random_commutator(rng: &mut ChaCha8Rng, k: usize) -> Word {
    CommutatorExpr::left_normed((0..k).map(|_| CommutatorExpr::generator(Generator::from_index(rng.gen_range(0..2)).unwrap())))
        .eval()
}

const CASES: usize = 150;

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba11);
    for i in 0..CASES {
        let (a, b, c) = (random_word(&mut rng, 10), random_word(&mut rng, 10), random_word(&mut rng, 10));
        ensure(a.multiply(&b).multiply(&c) == a.multiply(&b.multiply(&c)), || format!("associativity, case {i}"))?;
        ensure(a.multiply(&a.inverse()).is_empty(), || format!("inverse, case {i}"))?;
        ensure(a.letters().windows(2).all(|p| p[0] != p[1].inv()), || format!("reduction, case {i}"))?;
        ensure(a.to_string().parse::<Word>().as_ref() == Ok(&a), || format!("text, case {i}"))?;
    }
    for i in 0..CASES {
        let (a, b) = (random_word(&mut rng, 10), random_word(&mut rng, 10));
        let cap = rng.gen_range(1..=7);
        let (ma, mb) = (magnus_expand(&a, cap).unwrap(), magnus_expand(&b, cap).unwrap());
        ensure(magnus_expand(&a.multiply(&b), cap).unwrap() == ma.multiply(&mb), || format!("Magnus product, case {i}"))?;
        ensure(magnus_expand(&a.inverse(), cap).unwrap() == ma.inverse().unwrap(), || format!("Magnus inverse, case {i}"))?;
    }
    for i in 0..CASES {
        let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (u, v) = (random_commutator(&mut rng, p), random_commutator(&mut rng, q));
        let class = lcs_class(&u.commutator(&v), 7).unwrap();
        ensure(class.at_least(p + q), || format!("filtration, case {i}: class {class}"))?;
    }
    for i in 0..CASES {
        let low = rng.gen_range(1..=3);
        let high = low + rng.gen_range(0..=2);
        let dim: u64 = (low..=high).map(|w| witt_rank(w, 2)).sum();
        let entries = (0..dim).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect();
        let v = CoordinateVector::new(low, high, entries).unwrap();
        let back = coordinates(&from_coordinates(&v), low, high).unwrap();
        ensure(back == v, || format!("coordinate round trip, case {i}"))?;
    }
    for i in 0..CASES {
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let mut m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let before = smith_normal_form(&to_matrix(&m));
        for _ in 0..12 {
            let (a, b) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
            let k = rng.gen_range(-2..=2);
            if a != b {
                let src = m[b].clone();
                m[a].iter_mut().zip(src).for_each(|(x, y)| *x += k * y);
            }
            let (a, b) = (rng.gen_range(0..cols), rng.gen_range(0..cols));
            if a != b {
                m.iter_mut().for_each(|row| row[a] += k * row[b]);
            }
        }
        ensure(smith_normal_form(&to_matrix(&m)) == before, || format!("SNF invariance, case {i}"))?;
    }
    Ok(format!("5 suites x {CASES} seeded cases"))
}

fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows[0].len(), rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 Klein four-group multiplier", klein_four),
        ("2 closed-form grid agreement", theorem_grid_agreement),
        ("3 first ρ layer is d·Z^r(c+1)", rho_first_layer),
        ("4 second ρ layer for odd orders", rho_second_layer),
        ("5 Witt counts", witt_counts),
        ("6 power-expansion oracle soundness", congruence_oracle),
        ("7 nine-term expansion goldens", nine_term_goldens),
        ("8 abelian multiplicator vs direct products", multiplicator_cross_check),
        ("9 seeded property suites", property_suites),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of 9 criteria pass", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
