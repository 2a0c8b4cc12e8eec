use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schubert_fgl::chern::{closed_form_factors, kernel_top_chern, Evaluation, FactorProduct};
use schubert_fgl::degeneracy::{
    essential_sufficiency_check, expected_codimension, first_violation, Conditions, IntMatrix,
};
use schubert_fgl::exec::{self, Strategy};
use schubert_fgl::fgl::{law_from_json, lazard_relations, make_additive, make_multiplicative, verify_axioms, FormalGroupLaw};
use schubert_fgl::flag::{
    bott_samelson_class, fingerprint, first_disagreement, pullback_to_base, FlagClass, FlagContext, Mode,
};
use schubert_fgl::perm::{essential_cells, essential_set, rank_table, Permutation, MAX_WORDS_N};
use schubert_fgl::poly::{parse_poly, Poly, Var};
use schubert_fgl::schubert::{double_poly, Family};
use schubert_fgl::verify::{self, hyperbolic_law, Options};

const MAX_EQ_N: usize = 6;

#[derive(Parser)]
#[command(name = "schubert-fgl", version, about = "Exact Schubert calculus over formal group laws")]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation degree for series computations.
    #[arg(long, global = true)]
    cap: Option<u32>,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Double Schubert, Grothendieck or beta-polynomial of a permutation.
    Poly {
        family: FamilyArg,
        #[arg(long)]
        perm: String,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Formal group law utilities.
    #[command(subcommand)]
    Fgl(FglCommand),
    /// Chern-root computations.
    #[command(subcommand)]
    Chern(ChernCommand),
    /// Classes in the flag bundle quotient.
    #[command(subcommand)]
    Flag(FlagCommand),
    /// Rank conditions and essential sets.
    #[command(subcommand)]
    Degeneracy(DegeneracyCommand),
    /// All double polynomials of a family in S_n.
    Table {
        family: FamilyArg,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Schubert,
    Grothendieck,
    Beta,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Schubert => Family::Schubert,
            FamilyArg::Grothendieck => Family::Grothendieck,
            FamilyArg::Beta => Family::Beta,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
    suite: String,
    #[arg(long)]
    n: usize,
    /// Keep going after the first failure.
    #[arg(long)]
    all: bool,
    /// Random polynomials per relation.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Subcommand)]
enum FglCommand {
    /// The inverse series chi(u).
    Chi {
        #[arg(long, default_value = "mult")]
        law: String,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Unit, commutativity, associativity and inverse checks.
    Axioms {
        #[arg(long, default_value = "mult")]
        law: String,
    },
    /// Generators of the Lazard relations up to a degree.
    Lazard {
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum ChernCommand {
    /// Top Chern class of the kernel bundle against its closed form.
    BaseClass {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "add")]
        law: String,
        /// Multiply the factors out.
        #[arg(long)]
        expand: bool,
    },
}

#[derive(Subcommand)]
enum FlagCommand {
    /// The class produced by a chain of A operators.
    Class {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "ch")]
        mode: Mode,
        /// Comma-separated letters; the first acts first.
        #[arg(long, default_value = "")]
        word: String,
        /// Law file for fgl mode; defaults to the bundled hyperbolic law.
        #[arg(long)]
        law: Option<String>,
        /// Comma-separated roots substituted for x_1..x_n.
        #[arg(long)]
        pullback: Option<String>,
        /// Include the evaluation vector over S_n.
        #[arg(long)]
        fingerprint: bool,
    },
    /// Equality of two polynomials modulo the flag relations.
    Eq {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "ch")]
        mode: Mode,
        #[arg(long)]
        law: Option<String>,
        expr1: String,
        expr2: String,
    },
}

#[derive(Subcommand)]
enum DegeneracyCommand {
    /// Essential set and rank table of a permutation.
    Essential {
        #[arg(long)]
        perm: String,
    },
    /// Random matrices meeting the essential conditions meet all of them.
    Check {
        #[arg(long)]
        perm: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Test one matrix, given as a JSON array of rows.
    Satisfies {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        matrix: String,
        /// Check only the essential cells.
        #[arg(long)]
        essential: bool,
    },
}

/// Result of one invocation: text and JSON renderings plus the pass bit.
struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, passed: true }
    }
}

struct Env {
    seed: u64,
    cap: Option<u32>,
    strategy: Strategy,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let env = Env {
        seed: cli.seed,
        cap: cli.cap,
        strategy: if cli.sequential { Strategy::Sequential } else { Strategy::default() },
    };
    match run(&cli.command, &env) {
        Ok(out) => {
            if cli.json {
                let envelope = json!({
                    "command": argv[1..],
                    "seed": env.seed,
                    "cap": env.cap,
                    "passed": out.passed,
                    "result": out.json,
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command, env: &Env) -> Result<Output> {
    match cmd {
        Command::Poly { family, perm } => {
            let w = parse_perm(perm)?;
            let family = Family::from(*family);
            let p = double_poly(family, &w);
            Ok(Output::ok(
                p.to_string(),
                json!({"family": family.to_string(), "perm": w.to_string(), "text": p.to_string(), "poly": p.to_json()}),
            ))
        }
        Command::Table { family, n } => table(Family::from(*family), *n, env),
        Command::Verify(args) => {
            let opts = Options { seed: env.seed, samples: args.samples, stop_at_first: !args.all, strategy: env.strategy };
            let report = verify::run_named(&args.suite, args.n, &opts)
                .ok_or_else(|| anyhow!("unknown suite {:?}", args.suite))?;
            Ok(Output { text: report.to_string(), json: json!(report), passed: report.passed() })
        }
        Command::Fgl(c) => fgl(c, env),
        Command::Chern(c) => chern(c, env),
        Command::Flag(c) => flag(c, env),
        Command::Degeneracy(c) => degeneracy(c, env),
    }
}

fn parse_perm(s: &str) -> Result<Permutation> {
    s.parse().map_err(|e| anyhow!("bad permutation {s:?}: {e}"))
}

fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().with_context(|| format!("bad letter {t:?} in word {s:?}")))
        .collect()
}

fn parse_roots(s: &str) -> Result<Vec<Poly>> {
    s.split(',').map(|t| parse_poly(t.trim()).with_context(|| format!("bad root {t:?}"))).collect()
}

/// `add`, `mult`, `hyperbolic`, or a path to a law file.
fn load_law(name: &str) -> Result<FormalGroupLaw> {
    Ok(match name {
        "add" | "additive" => make_additive(),
        "mult" | "multiplicative" => make_multiplicative(),
        "hyperbolic" => hyperbolic_law(),
        path => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading law file {path}"))?;
            law_from_json(&text).with_context(|| format!("law file {path}"))?
        }
    })
}

fn table(family: Family, n: usize, env: &Env) -> Result<Output> {
    let max = if family == Family::Schubert { 6 } else { 5 };
    if n == 0 || n > max {
        bail!("table {family} supports 1 <= n <= {max}, got {n}");
    }
    let mut perms = Permutation::all(n);
    perms.sort_by(|a, b| (a.length(), a.images()).cmp(&(b.length(), b.images())));
    let polys = exec::map(env.strategy, &perms, |w| double_poly(family, w));
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for (w, p) in perms.iter().zip(&polys) {
        text.push(format!("{w}\t{p}"));
        rows.push(json!({"perm": w.to_string(), "length": w.length(), "text": p.to_string(), "poly": p.to_json()}));
    }
    Ok(Output::ok(text.join("\n"), json!({"family": family.to_string(), "n": n, "rows": rows})))
}

fn fgl(cmd: &FglCommand, env: &Env) -> Result<Output> {
    match cmd {
        FglCommand::Chi { law, degree } => {
            let f = load_law(law)?;
            let chi = f.chi_to(*degree)?;
            let text = chi.poly().to_string();
            Ok(Output::ok(
                format!("chi(u) = {text} + O({})", degree + 1),
                json!({"law": f.name(), "degree": degree, "chi": text, "poly": chi.poly().to_json()}),
            ))
        }
        FglCommand::Axioms { law } => {
            let f = match env.cap {
                Some(c) => load_law(law)?.with_cap(c),
                None => load_law(law)?,
            };
            let report = verify_axioms(&f);
            let lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| match &c.offender {
                    None => format!("PASS {}", c.name),
                    Some((m, v)) => format!("FAIL {}: coefficient of {m} is {v}", c.name),
                })
                .collect();
            Ok(Output {
                text: format!("cap {}\n{}", report.cap, lines.join("\n")),
                json: json!(report),
                passed: report.passed(),
            })
        }
        FglCommand::Lazard { degree } => {
            let rels = lazard_relations(*degree);
            let text: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
            let shown = if text.is_empty() { format!("no relations up to degree {degree}") } else { text.join("\n") };
            Ok(Output::ok(shown, json!({"degree": degree, "relations": text})))
        }
    }
}

fn factor_lines(f: &FactorProduct) -> Vec<String> {
    f.factors().map(|(p, k)| if k == 1 { format!("({p})") } else { format!("({p})^{k}") }).collect()
}

fn chern(cmd: &ChernCommand, env: &Env) -> Result<Output> {
    let ChernCommand::BaseClass { n, law, expand } = cmd;
    let n = *n;
    if n < 2 {
        bail!("base-class needs n >= 2");
    }
    let f = load_law(law)?;
    let cap = env.cap.unwrap_or(schubert_fgl::flag::default_cap(n));
    let eval = match f.kind() {
        schubert_fgl::fgl::LawKind::Additive => Evaluation::Exact,
        schubert_fgl::fgl::LawKind::Multiplicative => Evaluation::ck(cap),
        schubert_fgl::fgl::LawKind::Custom => Evaluation::total(cap.min(f.cap())),
    };
    let closed = closed_form_factors(n, &f, eval)?;
    let kernel = kernel_top_chern(n, &f, eval)?;
    let passed = kernel == closed && kernel.len() == n * (n - 1) / 2;
    let factors = factor_lines(&kernel);
    let mut text = format!(
        "law {} n {n}: {} factors, kernel {} closed form\n{}",
        f.name(),
        kernel.len(),
        if passed { "equals" } else { "differs from" },
        factors.join("\n")
    );
    let mut out = json!({"law": f.name(), "n": n, "factors": factors, "count": kernel.len(), "matches_closed_form": passed});
    if *expand {
        let p = kernel.expand(eval);
        text.push_str(&format!("\nexpanded: {p}"));
        out["expanded"] = json!(p.to_string());
    }
    Ok(Output { text, json: out, passed })
}

fn flag_context(n: usize, mode: Mode, law: Option<&str>, env: &Env) -> Result<FlagContext> {
    if n == 0 || n > MAX_EQ_N {
        bail!("flag computations support 1 <= n <= {MAX_EQ_N}, got {n}");
    }
    let ctx = match mode {
        Mode::Ch => FlagContext::ch(n),
        Mode::Ck => FlagContext::ck(n),
        Mode::Fgl => {
            let f = match law {
                Some(l) => load_law(l)?,
                None => hyperbolic_law(),
            };
            FlagContext::fgl(n, f, env.cap)
        }
    };
    Ok(ctx.with_strategy(env.strategy))
}

fn flag(cmd: &FlagCommand, env: &Env) -> Result<Output> {
    match cmd {
        FlagCommand::Class { n, mode, word, law, pullback, fingerprint: with_fp } => {
            if *n > MAX_WORDS_N {
                bail!("n > {MAX_WORDS_N} is not supported");
            }
            let ctx = flag_context(*n, *mode, law.as_deref(), env)?;
            let word = parse_word(word)?;
            let c = bott_samelson_class(&ctx, &word)?;
            let mut text = c.to_string();
            let mut out = json!({
                "mode": ctx.mode().to_string(),
                "n": n,
                "cap": ctx.cap(),
                "word": word,
                "representative": c.to_string(),
                "numerator": c.numerator().to_json(),
                "denominator": c.denominator(),
                "precision": c.precision(),
            });
            if let Some(roots) = pullback {
                let p = pullback_to_base(&ctx, &c, &parse_roots(roots)?)?;
                text.push_str(&format!("\npullback: {p}"));
                out["pullback"] = json!(p.to_string());
            }
            if *with_fp {
                let fp: Vec<String> = fingerprint(&ctx, &c).iter().map(|p| p.to_string()).collect();
                out["fingerprint"] = json!(fp);
            }
            Ok(Output::ok(text, out))
        }
        FlagCommand::Eq { n, mode, law, expr1, expr2 } => {
            let ctx = flag_context(*n, *mode, law.as_deref(), env)?;
            let lift = |s: &str| -> Result<FlagClass> {
                let p = parse_poly(s).with_context(|| format!("bad expression {s:?}"))?;
                check_vars(&p, *n)?;
                Ok(match ctx.mode() {
                    Mode::Fgl => FlagClass::series(p, ctx.cap()),
                    _ => FlagClass::polynomial(p),
                })
            };
            let (a, b) = (lift(expr1)?, lift(expr2)?);
            let hit = first_disagreement(&ctx, &a, &b);
            let (text, detail) = match &hit {
                None => ("equal modulo the flag relations".to_string(), Value::Null),
                Some((sigma, d)) => (
                    format!("different: at x = {sigma}(y) the difference is {d}"),
                    json!({"sigma": sigma.to_string(), "difference": d.to_string()}),
                ),
            };
            Ok(Output {
                text,
                json: json!({"mode": ctx.mode().to_string(), "n": n, "cap": ctx.cap(), "equal": hit.is_none(), "witness": detail}),
                passed: hit.is_none(),
            })
        }
    }
}

/// Rejects `x_i` or `y_i` with `i > n`, which the quotient does not know.
fn check_vars(p: &Poly, n: usize) -> Result<()> {
    for v in p.variables() {
        if let Var::X(i) | Var::Y(i) = v {
            if i as usize > n {
                bail!("variable {v} out of range for n = {n}");
            }
        }
    }
    Ok(())
}

fn degeneracy(cmd: &DegeneracyCommand, env: &Env) -> Result<Output> {
    match cmd {
        DegeneracyCommand::Essential { perm } => {
            let w = parse_perm(perm)?;
            let ess = essential_set(&w);
            let table = rank_table(&w);
            let cells: Vec<String> = essential_cells(&w)
                .iter()
                .map(|&(i, j)| format!("r({i},{j}) = {}", table.get(i, j)))
                .collect();
            let text = format!(
                "{w}: codimension {}\nessential set {:?}\n{}",
                expected_codimension(&w),
                ess.iter().collect::<Vec<_>>(),
                cells.join("\n")
            );
            let conditions: BTreeMap<String, usize> =
                essential_cells(&w).iter().map(|&(i, j)| (format!("{i},{j}"), table.get(i, j))).collect();
            Ok(Output::ok(
                text,
                json!({"perm": w.to_string(), "codimension": w.length(), "essential_set": ess, "conditions": conditions, "rank_table": table.rows()}),
            ))
        }
        DegeneracyCommand::Check { perm, trials } => {
            let w = parse_perm(perm)?;
            let report = essential_sufficiency_check(&w, *trials, env.seed, env.strategy);
            let mut text = format!(
                "{} {w}: {} trials, {} conditioned, {} counterexamples",
                if report.passed() { "PASS" } else { "FAIL" },
                report.trials,
                report.conditioned,
                report.counterexamples.len()
            );
            if let Some(c) = report.counterexamples.first() {
                text.push_str(&format!("\n  trial {} matrix {}: {:?}", c.trial, c.matrix, c.violation));
            }
            Ok(Output { text, json: json!(report), passed: report.passed() })
        }
        DegeneracyCommand::Satisfies { perm, matrix, essential } => {
            let w = parse_perm(perm)?;
            let rows: Vec<Vec<i64>> = serde_json::from_str(matrix).context("matrix must be a JSON array of integer rows")?;
            let m = IntMatrix::from_rows(rows)?;
            let which = if *essential { Conditions::Essential } else { Conditions::All };
            let v = first_violation(&m, &w, which)?;
            let text = match &v {
                None => format!("{m} satisfies the rank conditions of {w}"),
                Some(v) => format!("{m} violates r{:?} <= {}: rank {}", v.cell, v.bound, v.rank),
            };
            Ok(Output { text, json: json!({"perm": w.to_string(), "violation": v}), passed: v.is_none() })
        }
    }
}
