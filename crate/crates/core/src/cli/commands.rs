//! The `dlog` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::parse::{parse_assignment, parse_equation, parse_hypotheses, parse_proof, parse_term, parse_theory};
use super::samples::parse_samples;
use super::sexpr::ParseError;
use crate::approx::lattice_approximation;
use crate::calculus::check_proof;
use crate::eval::{eval, Valuation};
use crate::identities::{holds, Identity};
use crate::meta::{deduction_exponent, interpolant, InterpolantKind, MetaError, DEFAULT_ITER_CAP};
use crate::solver::{entails, satisfiable, EntailResult, SatResult};
use crate::syntax::rational::{parse_rational, to_decimal};
use crate::syntax::{rat, EpSeq, Rational, Term};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Environment variable overriding the exponent cap of `deduce-k`.
pub const ITER_CAP_VAR: &str = "DLOG_ITER_CAP";

#[derive(Debug, Parser)]
#[command(name = "dlog", version, about = "Exact reasoning in the logic of δ-algebras")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add decimal approximations (marked with ≈) next to exact values.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the term in FILE at an assignment.
    Eval {
        file: PathBuf,
        /// Comma-separated `VAR=p/q` pairs.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Decide satisfiability of a theory.
    Sat { file: PathBuf },
    /// Decide whether a theory entails an equation.
    Entails {
        file: PathBuf,
        /// The goal, as `(eq t1 t2)`.
        #[arg(long)]
        goal: String,
    },
    /// Check a proof against a file of hypotheses.
    CheckProof {
        file: PathBuf,
        #[arg(long)]
        hyp: Option<PathBuf>,
    },
    /// Least k with Σ ⊨ (sᵏ → t) ≈ 1.
    DeduceK {
        file: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// A term that is 0 on the first theory and 1 on the second.
    Interpolate { first: PathBuf, second: PathBuf },
    /// Approximate sampled data by a lattice term.
    Approx {
        samples: PathBuf,
        #[arg(long)]
        eps: String,
    },
    /// Check the δ-algebra identities on random instances.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    lines: Vec<String>,
    json: Value,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

type CmdResult = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::usage(format!("{}:{e}", path.display())))
}

fn in_arg<T>(name: &str, r: Result<T, ParseError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::usage(format!("--{name}:{e}")))
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_LIMIT, message: e.to_string() }
}

struct Fmt {
    pretty: bool,
}

impl Fmt {
    fn rat(&self, r: &Rational) -> String {
        if self.pretty && !r.is_integer() {
            format!("{r} (≈ {})", to_decimal(r, 6))
        } else {
            r.to_string()
        }
    }

    fn valuation(&self, f: &Valuation) -> Vec<String> {
        f.iter().map(|(v, r)| format!("  {v} = {}", self.rat(r))).collect()
    }
}

fn valuation_json(f: &Valuation) -> Value {
    Value::Object(f.iter().map(|(v, r)| (v.clone(), json!(r.to_string()))).collect())
}

fn iter_cap() -> Result<u64, Failure> {
    match std::env::var(ITER_CAP_VAR) {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Failure::usage(format!("{ITER_CAP_VAR} must be a positive integer"))),
        Err(_) => Ok(DEFAULT_ITER_CAP),
    }
}

fn run_command(cmd: &Command, fmt: &Fmt) -> CmdResult {
    match cmd {
        Command::Eval { file, assign } => {
            let t = in_file(file, parse_term(&read(file)?))?;
            let f = parse_assignment(assign).map_err(|e| Failure::usage(format!("--assign: {e}")))?;
            let v = eval(&t, &f).map_err(|e| Failure::usage(e.to_string()))?;
            Ok(Report { code: EXIT_YES, lines: vec![fmt.rat(&v)], json: json!({ "value": v.to_string() }) })
        }
        Command::Sat { file } => {
            let th = in_file(file, parse_theory(&read(file)?))?;
            Ok(match satisfiable(&th).map_err(internal)? {
                SatResult::Sat(f) => {
                    let mut lines = vec!["SAT".to_string()];
                    lines.extend(fmt.valuation(&f));
                    Report { code: EXIT_YES, lines, json: json!({ "result": "SAT", "witness": valuation_json(&f) }) }
                }
                SatResult::Unsat => {
                    Report { code: EXIT_NO, lines: vec!["UNSAT".into()], json: json!({ "result": "UNSAT" }) }
                }
            })
        }
        Command::Entails { file, goal } => {
            let th = in_file(file, parse_theory(&read(file)?))?;
            let goal = in_arg("goal", parse_equation(goal))?;
            Ok(match entails(&th, &goal).map_err(internal)? {
                EntailResult::Entailed => Report {
                    code: EXIT_YES,
                    lines: vec!["ENTAILED".into()],
                    json: json!({ "result": "ENTAILED" }),
                },
                EntailResult::Refuted(f) => {
                    let mut lines = vec!["REFUTED".to_string()];
                    lines.extend(fmt.valuation(&f));
                    Report {
                        code: EXIT_NO,
                        lines,
                        json: json!({ "result": "REFUTED", "counterexample": valuation_json(&f) }),
                    }
                }
            })
        }
        Command::CheckProof { file, hyp } => {
            let proof = in_file(file, parse_proof(&read(file)?))?;
            let hyps = match hyp {
                Some(h) => in_file(h, parse_hypotheses(&read(h)?))?,
                None => Vec::new(),
            };
            Ok(match check_proof(&hyps, &proof) {
                Ok(phi) => Report {
                    code: EXIT_YES,
                    lines: vec!["ACCEPT".into(), format!("  proves {phi}")],
                    json: json!({ "result": "ACCEPT", "conclusion": phi.to_string() }),
                },
                Err(r) => Report {
                    code: EXIT_NO,
                    lines: vec![format!("REJECT step {} {}", r.step, r.reason), format!("  {}", r.detail)],
                    json: json!({
                        "result": "REJECT",
                        "step": r.step,
                        "reason": r.reason.as_str(),
                        "detail": r.detail,
                    }),
                },
            })
        }
        Command::DeduceK { file, s, t } => {
            let th = in_file(file, parse_theory(&read(file)?))?;
            let s = in_arg("s", parse_term(s))?;
            let t = in_arg("t", parse_term(t))?;
            match deduction_exponent(&th, &s, &t, iter_cap()?) {
                Ok(k) => Ok(Report { code: EXIT_YES, lines: vec![k.to_string()], json: json!({ "k": k }) }),
                Err(MetaError::Precondition(m)) => Ok(Report {
                    code: EXIT_NO,
                    lines: vec![format!("precondition failed: {m}")],
                    json: json!({ "error": "precondition", "detail": m }),
                }),
                Err(e) => Err(internal(e)),
            }
        }
        Command::Interpolate { first, second } => {
            let s1 = in_file(first, parse_theory(&read(first)?))?;
            let s2 = in_file(second, parse_theory(&read(second)?))?;
            match interpolant(&s1, &s2, iter_cap()?) {
                Ok(i) => {
                    let (kind, k) = match i.kind {
                        InterpolantKind::VacuousFirst => ("vacuous-first", None),
                        InterpolantKind::VacuousSecond => ("vacuous-second", None),
                        InterpolantKind::Core { k, .. } => ("core", Some(k)),
                    };
                    Ok(Report {
                        code: EXIT_YES,
                        lines: vec![i.term.to_string()],
                        json: json!({ "term": i.term.to_string(), "kind": kind, "k": k }),
                    })
                }
                Err(MetaError::UnionSatisfiable) => Ok(Report {
                    code: EXIT_NO,
                    lines: vec!["union-satisfiable: the theories have a common model".into()],
                    json: json!({ "error": "union-satisfiable" }),
                }),
                Err(e) => Err(internal(e)),
            }
        }
        Command::Approx { samples, eps } => {
            let s = parse_samples(&read(samples)?).map_err(|e| Failure::usage(format!("{}: {e}", samples.display())))?;
            let eps = parse_rational(eps)
                .filter(|e| *e > rat(0, 1))
                .ok_or_else(|| Failure::usage("--eps must be a positive rational p/q"))?;
            let r = lattice_approximation(&s, &eps).map_err(internal)?;
            let mut lines = vec![r.term.to_string()];
            let header: Vec<String> = (1..=s.dim()).map(|j| format!("x{j}")).collect();
            lines.push(format!("{}\tf\tvalue\terror", header.join("\t")));
            let mut rows = Vec::new();
            for (i, p) in s.points().iter().enumerate() {
                let coords: Vec<String> = p.iter().map(|x| fmt.rat(x)).collect();
                lines.push(format!(
                    "{}\t{}\t{}\t{}",
                    coords.join("\t"),
                    fmt.rat(&s.values()[i]),
                    fmt.rat(&r.values[i]),
                    fmt.rat(&r.errors[i])
                ));
                rows.push(json!({
                    "point": p.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "f": s.values()[i].to_string(),
                    "value": r.values[i].to_string(),
                    "error": r.errors[i].to_string(),
                }));
            }
            lines.push(format!("max_error {}", fmt.rat(&r.max_error)));
            let ok = r.max_error < eps;
            Ok(Report {
                code: if ok { EXIT_YES } else { EXIT_NO },
                lines,
                json: json!({
                    "term": r.term.to_string(),
                    "epsilon": eps.to_string(),
                    "max_error": r.max_error.to_string(),
                    "samples": rows,
                }),
            })
        }
        Command::Selftest { instances, seed } => {
            let results = selftest(*instances, *seed).map_err(internal)?;
            let mut lines = Vec::new();
            let mut all = true;
            let mut js = BTreeMap::new();
            for (id, failures) in &results {
                all &= failures.is_empty();
                let status = if failures.is_empty() { "ok" } else { "FAILED" };
                lines.push(format!("identity {id}: {instances} instances {status}"));
                for fail in failures.iter().take(3) {
                    lines.push(format!("  counterexample: {fail}"));
                }
                js.insert(id.to_string(), json!({ "instances": instances, "failures": failures }));
            }
            Ok(Report { code: if all { EXIT_YES } else { EXIT_NO }, lines, json: json!(js) })
        }
    }
}

/// Random terms of bounded depth over `x`, `y` for the self-test.
pub fn random_term(rng: &mut impl Rng, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..5) {
            0 => Term::var("x"),
            1 => Term::var("y"),
            2 => Term::Zero,
            3 => Term::One,
            _ => Term::constant(rat(rng.gen_range(1..8), 8)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => Term::neg(random_term(rng, d)),
        1 => Term::oplus(random_term(rng, d), random_term(rng, d)),
        2 => Term::odot(random_term(rng, d), random_term(rng, d)),
        3 => Term::ominus(random_term(rng, d), random_term(rng, d)),
        4 => Term::imp(random_term(rng, d), random_term(rng, d)),
        _ => Term::delta_seq(random_seq(rng, depth - 1)),
    }
}

/// A random eventually periodic sequence of random terms.
pub fn random_seq(rng: &mut impl Rng, depth: usize) -> EpSeq<Term> {
    let pre = (0..rng.gen_range(0..3)).map(|_| random_term(rng, depth)).collect();
    let per = (0..rng.gen_range(1..4)).map(|_| random_term(rng, depth)).collect();
    EpSeq::new(pre, per).expect("nonempty period")
}

/// A random valuation of `x`, `y` with denominators up to `den`.
pub fn random_valuation(rng: &mut impl Rng, den: i64) -> Valuation {
    let mut f = Valuation::new();
    for v in ["x", "y"] {
        let q = rng.gen_range(1..=den);
        f.set(v, rat(rng.gen_range(0..=q), q)).expect("in range");
    }
    f
}

/// Failing instances per identity, as printable strings.
pub fn selftest(instances: usize, seed: u64) -> Result<Vec<(Identity, Vec<String>)>, crate::eval::EvalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for id in Identity::ALL {
        let mut failures = Vec::new();
        for _ in 0..instances {
            let xs = random_seq(&mut rng, 3);
            let ys = random_seq(&mut rng, 3);
            let f = random_valuation(&mut rng, 64);
            if !holds(id, &xs, &ys, &f)? {
                failures.push(format!("x⃗={:?} y⃗={:?} at {f}", xs, ys));
            }
        }
        out.push((id, failures));
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> Outcome {
    let fmt = Fmt { pretty: cli.pretty };
    match run_command(&cli.command, &fmt) {
        Ok(r) => {
            let stdout = if cli.json {
                format!("{}\n", r.json)
            } else {
                r.lines.iter().map(|l| format!("{l}\n")).collect()
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(f) => {
            let stdout = if cli.json { format!("{}\n", json!({ "error": f.message })) } else { String::new() };
            Outcome { code: f.code, stdout, stderr: format!("error: {}\n", f.message) }
        }
    }
}
