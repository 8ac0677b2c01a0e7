//! Argument parsing, dispatch and text rendering for the `baer` binary.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use baer_core::baer::{
    abelian_multiplicator, baer_computation, nine_term_claim, power_claim, predict_closed_form, predict_rho_subgroup,
    rho_subgroup_structure, CongruenceReport, GeneratorScheme,
};
use baer_core::lyndon::{enumerate_basis, witt_rank};
use baer_core::magnus::MagnusError;
use baer_core::{BaerError, Generator, Int, ProblemSpec, MAX_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::payload::{
    tail_text, AbelianPayload, BasisPayload, BasisRow, CellStatus, ComputePayload, CongruencePayload,
    CongruenceSweepPayload, Envelope, GridCellPayload, GridPayload, PredictPayload, SubgroupPayload, WittPayload,
};
use crate::sweep::{theorem_grid, GridBounds};

/// Default total nilpotency class.
pub const DEFAULT_CAP: usize = 10;

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verification finds a disagreement.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit code for invalid arguments.
pub const EXIT_USAGE: i32 = 2;
/// Exit code when a computation would exceed the resource cap.
pub const EXIT_RESOURCE: i32 = 3;

// Largest basis listing `basis` will print.
const MAX_BASIS_ROWS: u64 = 100_000;
// Largest exponent accepted by the congruence checks.
const MAX_CHECK_EXPONENT: i64 = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "baer",
    version,
    about = "Baer-invariants of nilpotent products of two cyclic groups",
    propagate_version = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest total nilpotency class a computation may use (up to 12).
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Order of x.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=i64::MAX as u64))]
    r: u64,
    /// Order of y.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=i64::MAX as u64))]
    s: u64,
    /// Class of the nilpotent product.
    #[arg(long, value_parser = positive)]
    n: usize,
    /// Class of the variety.
    #[arg(long, value_parser = positive)]
    c: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<ProblemSpec, BaerError> {
        ProblemSpec::new(self.r, self.s, self.n, self.c)
    }

    fn params(&self) -> Vec<(&'static str, String)> {
        vec![
            ("r", self.r.to_string()),
            ("s", self.s.to_string()),
            ("n", self.n.to_string()),
            ("c", self.c.to_string()),
        ]
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute N_c M(G(r,s,n)) exactly.
    Compute(SpecArgs),
    /// Closed-form value of N_c M(G(r,s,n)), where one is known.
    Predict(SpecArgs),
    /// Run a verification experiment.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// List the basic commutators of one weight.
    Basis {
        /// Weight.
        #[arg(long, value_parser = positive)]
        weight: usize,
        /// Alphabet size.
        #[arg(long, default_value_t = 2, value_parser = positive)]
        letters: usize,
    },
    /// Number of basic commutators of one weight.
    Witt {
        /// Weight.
        #[arg(long, value_parser = positive)]
        weight: usize,
        /// Alphabet size.
        #[arg(long, default_value_t = 2, value_parser = positive)]
        letters: usize,
    },
    /// N_c M of a finite abelian group given by cyclic orders.
    Abelian {
        /// Comma-separated orders, e.g. 4,2.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true,
              value_parser = clap::value_parser!(u64).range(1..))]
        orders: Vec<u64>,
        /// Class of the variety.
        #[arg(long, value_parser = positive)]
        c: usize,
    },
    /// Structure of γ_{c+j}ρ_{c+1}(S)/γ_{c+j} inside γ_{c+1}/γ_{c+j}.
    Prop22 {
        /// Order of x.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=i64::MAX as u64))]
        r: u64,
        /// Order of y.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=i64::MAX as u64))]
        s: u64,
        /// Class of the variety.
        #[arg(long, value_parser = positive)]
        c: usize,
        /// Depth j (2 ≤ j ≤ c + 2).
        #[arg(long, default_value_t = 2, value_parser = positive)]
        j: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Nine-term expansion of [x^r,y,a_1,…,a_{c-1}] modulo γ_{c+5}, for all a ∈ {x,y}^{c-1}.
    Lemma21 {
        /// Class c (at least 3).
        #[arg(long, value_parser = positive)]
        c: usize,
        /// Exponent r (at least 4).
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=MAX_CHECK_EXPONENT))]
        r: i64,
    },
    /// [x^r,a_1,…,a_c] against its one- and two-term expansions, for all a ∈ {x,y}^c.
    Prop22 {
        /// Class c.
        #[arg(long, value_parser = positive)]
        c: usize,
        /// Exponent r.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=MAX_CHECK_EXPONENT))]
        r: i64,
    },
    /// Compare computed invariants with every applicable closed form on a grid.
    Theorems {
        /// Smallest order for r and s.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        min_rs: u64,
        /// Largest order for r and s.
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
        max_rs: u64,
        /// Largest nilpotent-product class n.
        #[arg(long, default_value_t = 4, value_parser = positive)]
        max_n: usize,
        /// Largest variety class c.
        #[arg(long, default_value_t = 5, value_parser = positive)]
        max_c: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// What a run printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    /// Standard output.
    pub stdout: String,
    /// Standard error.
    pub stderr: String,
    /// Process exit code.
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            stderr: format!("error: {message}\n"),
            code,
            ..Default::default()
        }
    }
}

fn exit_code(e: &BaerError) -> i32 {
    match e {
        BaerError::Resource { .. } | BaerError::Magnus(MagnusError::Cap { .. }) => EXIT_RESOURCE,
        BaerError::InvalidArgument(_) | BaerError::ClassBelowProduct { .. } | BaerError::Precondition(_) => EXIT_USAGE,
        BaerError::Nilform(_) | BaerError::Magnus(_) => EXIT_VERIFY_FAILED,
    }
}

impl From<BaerError> for Outcome {
    fn from(e: BaerError) -> Self {
        Outcome::error(exit_code(&e), e)
    }
}

struct Ctx {
    format: Format,
    cap: usize,
}

impl Ctx {
    fn render<T: Serialize>(&self, command: &str, params: Vec<(&str, String)>, payload: T, text: String) -> String {
        match self.format {
            Format::Text => text,
            Format::Json => Envelope {
                command: command.to_string(),
                parameters: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>(),
                result: payload,
                engine_version: env!("CARGO_PKG_VERSION").to_string(),
                cap: self.cap.to_string(),
            }
            .render(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Default::default()
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    if cli.cap == 0 {
        return Outcome::error(EXIT_USAGE, "--cap must be at least 1");
    }
    if cli.cap > MAX_CAP {
        return Outcome::error(EXIT_RESOURCE, format!("--cap {} exceeds the hard limit {MAX_CAP}", cli.cap));
    }
    let warning = (cli.cap > DEFAULT_CAP).then(|| {
        format!(
            "warning: --cap {} is above the default {DEFAULT_CAP}; series carry up to {} coefficients\n",
            cli.cap,
            (1u64 << (cli.cap + 1)) - 1
        )
    });
    let ctx = Ctx {
        format: cli.format,
        cap: cli.cap,
    };
    let mut outcome = dispatch(&ctx, cli.command).unwrap_or_else(Outcome::from);
    if let Some(w) = warning {
        outcome.stderr.insert_str(0, &w);
    }
    outcome
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<Outcome, BaerError> {
    match command {
        Command::Compute(args) => compute(ctx, &args),
        Command::Predict(args) => predict(ctx, &args),
        Command::Verify { target } => match target {
            VerifyTarget::Lemma21 { c, r } => verify_nine_term(ctx, c, r),
            VerifyTarget::Prop22 { c, r } => verify_power(ctx, c, r),
            VerifyTarget::Theorems {
                min_rs,
                max_rs,
                max_n,
                max_c,
            } => verify_theorems(
                ctx,
                GridBounds {
                    min_rs,
                    max_rs,
                    max_n,
                    max_c,
                },
            ),
        },
        Command::Basis { weight, letters } => basis(ctx, weight, letters),
        Command::Witt { weight, letters } => witt(ctx, weight, letters),
        Command::Abelian { orders, c } => abelian(ctx, &orders, c),
        Command::Prop22 { r, s, c, j } => subgroup(ctx, r, s, c, j),
    }
}

fn compute(ctx: &Ctx, args: &SpecArgs) -> Result<Outcome, BaerError> {
    let spec = args.spec()?;
    let b = baer_computation(&spec, ctx.cap, GeneratorScheme::default(), &[])?;
    let factors: Vec<String> = b.structure.invariant_factors().iter().map(Int::to_string).collect();
    let text = format!(
        "{}\ninvariant factors: {}\nfree rank: {}\n",
        b.structure,
        if factors.is_empty() { "(none)".to_string() } else { factors.join(" ") },
        b.structure.free_rank()
    );
    Ok(Outcome::ok(ctx.render("compute", args.params(), ComputePayload::from(&b), text)))
}

fn predict(ctx: &Ctx, args: &SpecArgs) -> Result<Outcome, BaerError> {
    let spec = args.spec()?;
    let p = predict_closed_form(&spec);
    let text = match &p {
        Some(p) => format!("{} ({})\n", p.structure, p.rule),
        None => "no closed form applies\n".to_string(),
    };
    Ok(Outcome::ok(ctx.render("predict", args.params(), PredictPayload::from(p.as_ref()), text)))
}

fn tails(len: usize) -> Vec<Vec<Generator>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|i| Generator::from_index((bits >> (len - 1 - i)) & 1).unwrap())
                .collect()
        })
        .collect()
}

fn describe(report: &CongruenceReport, out: &mut String) {
    let (_, _, tail) = &report.claim.parameters;
    let verdict = if report.holds {
        "holds".to_string()
    } else {
        format!("fails (residual class {})", report.residual_class)
    };
    let _ = writeln!(
        out,
        "a = {}, modulo γ_{}: {verdict}",
        tail_text(tail),
        report.claim.modulus_weight
    );
    let _ = writeln!(out, "  lhs: {}", report.claim.lhs);
    let _ = writeln!(out, "  rhs: {}", report.claim.rhs());
    if !report.discrepancy.is_empty() {
        let terms: Vec<String> = report.discrepancy.iter().map(|(b, e)| format!("{b}^{e}")).collect();
        let _ = writeln!(out, "  residual: {}", terms.join(" "));
    }
}

fn congruence_outcome(ctx: &Ctx, command: &str, params: Vec<(&str, String)>, header: String, reports: &[CongruenceReport]) -> Outcome {
    let holding = reports.iter().filter(|r| r.holds).count();
    let mut text = header;
    for r in reports {
        describe(r, &mut text);
    }
    let _ = writeln!(text, "{holding} of {} hold", reports.len());
    let payload = CongruenceSweepPayload {
        reports: reports.iter().map(CongruencePayload::from).collect(),
        holding: holding.to_string(),
        all_hold: holding == reports.len(),
    };
    let mut outcome = Outcome::ok(ctx.render(command, params, payload, text));
    if holding < reports.len() {
        outcome.code = EXIT_VERIFY_FAILED;
    }
    outcome
}

fn verify_nine_term(ctx: &Ctx, c: usize, r: i64) -> Result<Outcome, BaerError> {
    let reports = tails(c.saturating_sub(1))
        .iter()
        .map(|tail| nine_term_claim(c, r, tail, ctx.cap)?.check())
        .collect::<Result<Vec<_>, _>>()?;
    let header = format!("nine-term expansion of [x^r,y,a_1,...,a_(c-1)], c = {c}, r = {r}\n");
    let params = vec![("c", c.to_string()), ("r", r.to_string())];
    Ok(congruence_outcome(ctx, "verify lemma21", params, header, &reports))
}

fn verify_power(ctx: &Ctx, c: usize, r: i64) -> Result<Outcome, BaerError> {
    let mut reports = Vec::new();
    for tail in tails(c) {
        for m in [c + 2, c + 3] {
            reports.push(power_claim(c, r, &tail, m, ctx.cap)?.check()?);
        }
    }
    let header = format!("expansions of [x^r,a_1,...,a_c], c = {c}, r = {r}\n");
    let params = vec![("c", c.to_string()), ("r", r.to_string())];
    Ok(congruence_outcome(ctx, "verify prop22", params, header, &reports))
}

fn verify_theorems(ctx: &Ctx, bounds: GridBounds) -> Result<Outcome, BaerError> {
    if bounds.min_rs > bounds.max_rs {
        return Err(BaerError::InvalidArgument("--min-rs exceeds --max-rs".into()));
    }
    let cells = theorem_grid(&bounds, ctx.cap)?;
    let mut text = format!(
        "{:>3} {:>3} {:>2} {:>2}  {:<30} {:<24} {:<24} {}\n",
        "r", "s", "n", "c", "rule", "predicted", "computed", "status"
    );
    let mut counts = [0usize; 3];
    let mut rows = Vec::with_capacity(cells.len());
    for cell in &cells {
        let status = cell.status();
        counts[status as usize] += 1;
        let computed = cell.computed.as_ref().map(ToString::to_string);
        let p = &cell.spec;
        let _ = writeln!(
            text,
            "{:>3} {:>3} {:>2} {:>2}  {:<30} {:<24} {:<24} {}",
            p.r,
            p.s,
            p.n,
            p.c,
            cell.prediction.rule.label(),
            cell.prediction.structure.to_string(),
            computed.as_deref().unwrap_or("-"),
            status
        );
        rows.push(GridCellPayload {
            r: p.r.to_string(),
            s: p.s.to_string(),
            n: p.n.to_string(),
            c: p.c.to_string(),
            rule: cell.prediction.rule.label().to_string(),
            predicted: cell.prediction.structure.to_string(),
            computed,
            status,
        });
    }
    let [passed, failed, skipped] = counts;
    let _ = writeln!(text, "{passed} PASS, {failed} FAIL, {skipped} skipped (cap)");
    let payload = GridPayload {
        cells: rows,
        passed: passed.to_string(),
        failed: failed.to_string(),
        skipped: skipped.to_string(),
    };
    let params = vec![
        ("min_rs", bounds.min_rs.to_string()),
        ("max_rs", bounds.max_rs.to_string()),
        ("max_n", bounds.max_n.to_string()),
        ("max_c", bounds.max_c.to_string()),
    ];
    let mut outcome = Outcome::ok(ctx.render("verify theorems", params, payload, text));
    if failed > 0 {
        outcome.code = EXIT_VERIFY_FAILED;
    }
    debug_assert_eq!(CellStatus::Skipped as usize, 2);
    Ok(outcome)
}

fn checked_witt(weight: usize, letters: usize) -> Result<u64, BaerError> {
    let fits = u32::try_from(weight)
        .ok()
        .and_then(|w| (letters as u128).checked_pow(w))
        .is_some();
    if !fits {
        return Err(BaerError::InvalidArgument(format!(
            "{letters}^{weight} is too large to count"
        )));
    }
    Ok(witt_rank(weight, letters))
}

fn basis(ctx: &Ctx, weight: usize, letters: usize) -> Result<Outcome, BaerError> {
    let count = checked_witt(weight, letters)?;
    if count > MAX_BASIS_ROWS {
        return Err(BaerError::Resource {
            needed: weight,
            cap: ctx.cap,
        });
    }
    let basis = enumerate_basis(weight, letters);
    let mut text = format!("{:>5}  {:<w$}  {}\n", "index", "word", "bracketing", w = weight.max(4));
    let mut rows = Vec::with_capacity(basis.len());
    for (i, b) in basis.iter().enumerate() {
        let _ = writeln!(text, "{:>5}  {:<w$}  {}", i + 1, b.word_text(), b, w = weight.max(4));
        rows.push(BasisRow {
            index: (i + 1).to_string(),
            word: b.word_text(),
            bracketing: b.to_string(),
            weight: b.weight().to_string(),
        });
    }
    let params = vec![("weight", weight.to_string()), ("letters", letters.to_string())];
    Ok(Outcome::ok(ctx.render("basis", params, BasisPayload { rows }, text)))
}

fn witt(ctx: &Ctx, weight: usize, letters: usize) -> Result<Outcome, BaerError> {
    let rank = checked_witt(weight, letters)?;
    let params = vec![("weight", weight.to_string()), ("letters", letters.to_string())];
    let payload = WittPayload { rank: rank.to_string() };
    Ok(Outcome::ok(ctx.render("witt", params, payload, format!("{rank}\n"))))
}

fn abelian(ctx: &Ctx, orders: &[u64], c: usize) -> Result<Outcome, BaerError> {
    let ints: Vec<Int> = orders.iter().map(|&o| Int::from(o)).collect();
    if let Some(k) = ints.len().checked_add(1) {
        // Counting needs k^(c+1) to fit.
        checked_witt(c + 1, k)?;
    }
    let a = abelian_multiplicator(&ints, c)?;
    let listed: Vec<String> = orders.iter().map(u64::to_string).collect();
    let params = vec![("orders", listed.join(",")), ("c", c.to_string())];
    Ok(Outcome::ok(ctx.render("abelian", params, AbelianPayload::from(&a), format!("{a}\n"))))
}

fn subgroup(ctx: &Ctx, r: u64, s: u64, c: usize, j: usize) -> Result<Outcome, BaerError> {
    let spec = ProblemSpec::new(r, s, 1, c)?;
    let sub = rho_subgroup_structure(&spec, j, ctx.cap)?;
    let predicted = predict_rho_subgroup(&spec, j);
    let join = |v: &[Int]| v.iter().map(Int::to_string).collect::<Vec<_>>().join(" ");
    let mut text = format!(
        "γ_{}/γ_{} has rank {}; the subgroup has rank {}\ndiagonal: {}\nquotient: {}\n",
        c + 1,
        c + j,
        sub.ambient_rank,
        sub.rank(),
        join(&sub.diagonal),
        sub.cokernel()
    );
    let mismatch = predicted.as_ref().is_some_and(|p| *p != sub);
    match &predicted {
        Some(p) => {
            let verdict = if mismatch { "differs" } else { "matches" };
            let _ = writeln!(text, "predicted: {} ({verdict})", join(&p.diagonal));
        }
        None => text.push_str("predicted: no prediction applies\n"),
    }
    let params = vec![
        ("r", r.to_string()),
        ("s", s.to_string()),
        ("c", c.to_string()),
        ("j", j.to_string()),
    ];
    let mut outcome = Outcome::ok(ctx.render("prop22", params, SubgroupPayload::new(&sub, predicted.as_ref()), text));
    if mismatch {
        outcome.code = EXIT_VERIFY_FAILED;
    }
    Ok(outcome)
}
