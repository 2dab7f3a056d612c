use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use partcalc::classify::classify_orthogonality;
use partcalc::closure::{closure, ClosureConfig, ClosureResult, Derivation, Membership};
use partcalc::enumerate::{enumerate, Predicate, DEFAULT_LIMIT};
use partcalc::linear::{check_intertwiner, check_relation, parse_matrix, right_inverse_witness, t_map, RationalMatrix};
use partcalc::Partition;
use serde_json::json;

use crate::expr::{evaluate, split_top_level};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "partcalc", version, about = "Two-row set partitions, their closures and linear models")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression; `a ; b` puts b below a.
    Eval { expr: String },
    /// Case analysis of a one-row partition.
    Classify { expr: String },
    /// Bounded closure of a generator set.
    Closure {
        /// Comma-separated generator expressions.
        #[arg(long)]
        gen: String,
        #[arg(long)]
        max_points: usize,
        #[arg(long, default_value_t = 200_000)]
        max_elements: usize,
        /// Add involution and seed pair and copair.
        #[arg(long)]
        bs: bool,
        /// Enable the orthogonality inference rules.
        #[arg(long)]
        semantic: bool,
        /// Do not add nestings and doublings through oversized intermediates.
        #[arg(long)]
        no_shortcuts: bool,
        /// Also write the structured report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look up an expression in a saved closure report.
    Member {
        expr: String,
        #[arg(long = "in")]
        report: PathBuf,
    },
    /// Count (and optionally list) partitions of P(k,l) satisfying a predicate.
    Enumerate {
        /// all, nc, or ncm:<m>
        #[arg(long)]
        pred: String,
        /// k,l
        #[arg(long)]
        points: String,
        #[arg(long)]
        list: bool,
    },
    /// Check the relations of a partition on a matrix.
    Check {
        #[arg(long)]
        p: String,
        #[arg(long)]
        matrix: PathBuf,
        /// Use the intertwiner formulation instead.
        #[arg(long)]
        intertwiner: bool,
        /// Run both formulations and compare them.
        #[arg(long)]
        both: bool,
    },
    /// Sparse dump of T_p as 1-based `row col 1` triplets.
    Tmap {
        #[arg(long)]
        p: String,
        #[arg(long)]
        n: usize,
    },
    /// Right inverse of a matrix from a one-row partition.
    WitnessInverse {
        #[arg(long)]
        p: String,
        #[arg(long)]
        matrix: PathBuf,
    },
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn render(format: Format, text: String, structured: serde_json::Value) -> String {
    match format {
        Format::Text => text,
        Format::Structured => format!("{}\n", serde_json::to_string_pretty(&structured).expect("json")),
    }
}

fn read_matrix(path: &PathBuf) -> Result<RationalMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_predicate(text: &str) -> Result<Predicate> {
    Ok(match text {
        "all" => Predicate::All,
        "nc" => Predicate::Noncrossing,
        _ => match text.strip_prefix("ncm:") {
            Some(m) => {
                let m: usize = m.parse().map_err(|_| anyhow!("bad grading modulus in '{text}'"))?;
                if m == 0 {
                    bail!("the grading modulus must be at least 1");
                }
                Predicate::Graded(m)
            }
            None => bail!("unknown predicate '{text}' (expected all, nc or ncm:<m>)"),
        },
    })
}

fn derivation_summary(d: &Derivation) -> String {
    match d {
        Derivation::Seed { origin } => format!("seed {origin:?}"),
        Derivation::Step { op, operands, removed_loops } => {
            let ops: Vec<String> = operands.iter().map(|p| format!("[{p}]")).collect();
            format!("{op} {} loops={removed_loops}", ops.join(" "))
        }
        Derivation::Construction { name, .. } => format!("construction {name}"),
        Derivation::Rule { rule, lemma, .. } => format!("rule {rule:?}: {lemma}"),
    }
}

fn closure_text(r: &ClosureResult) -> String {
    let mut out = format!(
        "members={} saturated={} bound_hit={} one_row_hypothesis={}\n",
        r.len(),
        r.saturated,
        r.bound_hit,
        r.one_row_hypothesis
    );
    for f in &r.rule_log {
        let triggers: Vec<String> = f.triggers.iter().map(|p| format!("[{p}]")).collect();
        let added: Vec<String> = f.added.iter().map(|p| format!("[{p}]")).collect();
        let _ = writeln!(out, "rule {:?} triggers={} added={}", f.rule, triggers.join(" "), added.join(" "));
    }
    for m in &r.members {
        let _ = writeln!(out, "{}  <- {}", m.partition, derivation_summary(&m.derivation));
    }
    out
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Eval { expr } => {
            let v = evaluate(&expr)?;
            let text = format!("{v}\n");
            Ok(Outcome::ok(render(format, text, json!({"partition": v.partition, "loops": v.loops}))))
        }
        Command::Classify { expr } => {
            let p = evaluate(&expr)?.partition;
            let c = classify_orthogonality(&p)?;
            let text = format!("{c}\nclause: {}\n", c.clause);
            let cases: Vec<String> = c.cases.iter().map(|x| x.letter()).collect();
            let structured = json!({"partition": p, "cases": cases, "conclusion": c.conclusion.to_string(), "clause": c.clause});
            Ok(Outcome::ok(render(format, text, structured)))
        }
        Command::Closure { gen, max_points, max_elements, bs, semantic, no_shortcuts, out } => {
            if max_points < 2 {
                bail!("--max-points must be at least 2");
            }
            let generators = split_top_level(&gen)
                .into_iter()
                .map(|g| evaluate(g).map(|v| v.partition).with_context(|| format!("generator '{g}'")))
                .collect::<Result<Vec<Partition>>>()?;
            let cfg = ClosureConfig {
                max_total_points: max_points,
                max_elements,
                banica_speicher: bs,
                semantic_rules: semantic,
                lemma_shortcuts: !no_shortcuts,
            };
            let r = closure(&generators, &cfg);
            if let Some(path) = out {
                fs::write(&path, r.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            let stdout = match format {
                Format::Text => closure_text(&r),
                Format::Structured => format!("{}\n", r.to_json()),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Member { expr, report } => {
            let text = fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let r = ClosureResult::from_json(&text).with_context(|| format!("parsing {}", report.display()))?;
            let p = evaluate(&expr)?.partition;
            let (text, structured) = match r.membership(&p) {
                Membership::Member(trace) => (
                    format!("Member {p}\n{}", trace.to_text()),
                    json!({"partition": p, "verdict": "Member", "trace": trace}),
                ),
                Membership::NotFoundWithinBounds => (
                    format!("NotFoundWithinBounds {p}\n"),
                    json!({"partition": p, "verdict": "NotFoundWithinBounds"}),
                ),
            };
            Ok(Outcome::ok(render(format, text, structured)))
        }
        Command::Enumerate { pred, points, list } => {
            let predicate = parse_predicate(&pred)?;
            let (k, l) = points
                .split_once(',')
                .and_then(|(k, l)| Some((k.trim().parse::<usize>().ok()?, l.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| anyhow!("--points expects k,l"))?;
            let found = enumerate(predicate, k, l, DEFAULT_LIMIT)?;
            let mut text = format!("count={}\n", found.len());
            if list {
                for p in &found {
                    let _ = writeln!(text, "{p}");
                }
            }
            let structured = if list {
                json!({"count": found.len(), "partitions": found})
            } else {
                json!({"count": found.len()})
            };
            Ok(Outcome::ok(render(format, text, structured)))
        }
        Command::Check { p, matrix, intertwiner, both } => {
            let p = evaluate(&p)?.partition;
            let u = read_matrix(&matrix)?;
            if both {
                let relation = check_relation(&p, &u)?;
                let inter = check_intertwiner(&p, &u)?;
                let agree = relation == inter;
                let text = format!("relation: {relation}\nintertwiner: {inter}\nagree={agree}\n");
                let structured = json!({
                    "relation": relation.to_string(),
                    "intertwiner": inter.to_string(),
                    "agree": agree,
                });
                let code = if agree && relation.holds() { 0 } else { 1 };
                return Ok(Outcome { stdout: render(format, text, structured), code });
            }
            let verdict = if intertwiner { check_intertwiner(&p, &u)? } else { check_relation(&p, &u)? };
            let code = if verdict.holds() { 0 } else { 1 };
            let structured = json!({"verdict": verdict.to_string(), "holds": verdict.holds()});
            Ok(Outcome { stdout: render(format, format!("{verdict}\n"), structured), code })
        }
        Command::Tmap { p, n } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let p = evaluate(&p)?.partition;
            let t = t_map(&p, n);
            let text = format!("rows={} cols={} nnz={}\n{}", t.rows(), t.cols(), t.entries.len(), t.triplets());
            let entries: Vec<[usize; 2]> = t.entries.iter().map(|&(r, c)| [r + 1, c + 1]).collect();
            let structured = json!({"partition": p, "n": n, "rows": t.rows(), "cols": t.cols(), "entries": entries});
            Ok(Outcome::ok(render(format, text, structured)))
        }
        Command::WitnessInverse { p, matrix } => {
            let p = evaluate(&p)?.partition;
            let u = read_matrix(&matrix)?;
            let t = right_inverse_witness(&p, &u)?;
            let rows: Vec<Vec<String>> =
                (0..t.rows()).map(|i| t.row(i).iter().map(|x| x.to_string()).collect()).collect();
            Ok(Outcome::ok(render(format, t.to_string(), json!({"t": rows}))))
        }
    }
}
