//! The `flg` command line tool.
//!
//! Subcommand groups mirror the library modules. Every command renders a
//! report to stdout in `--format text` or `--format json` (scans use JSON
//! lines); timing and progress notes go to stderr so reruns with equal flags
//! and seed are byte-identical, including under `--jobs`. Exit codes: 0 for
//! a computed answer, 1 for domain errors, 2 for usage errors.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::abelian::{
    elementarily_equivalent, invariant_factors, localized_quotient_structure, parse_group,
    szmielew_ranks,
};
use crate::genus::{
    duncan_howie_scan, f_lower_table, genus, is_commutator, CommutatorExpression,
    CommutatorVerdict, FLowerBound, GenusCertificate, ScanInstance,
};
use crate::sentences::{
    bounded_check, build_template, classify_prenex, eval_phi_n, eval_pi_p, eval_psi_pk,
    parse_formula, separate_conjugacy_finite, BoundedOutcome, BuiltTemplate, Formula,
    PhiOutcome, PiOutcome, Presentation, PsiOutcome, SentenceError, TemplateParams, Verdict,
};
use crate::surface::{apply_retraction, Retraction, SeparationOutcome, SurfacePresentation};
use crate::whitehead::{is_primitive, minimize_length};
use crate::word::{are_conjugate, exponent_vector, extract_root, parse_word, GroupContext, Word};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "flg", version, about = "Free-group, genus, and surface-group toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; defaults to text (genus of defaults to json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for scans (default: FLG_JOBS, else 1)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Free-group word arithmetic
    #[command(subcommand)]
    Word(WordCmd),
    /// Whitehead automorphisms and primitivity
    #[command(subcommand)]
    Auto(AutoCmd),
    /// Finitely generated and localized abelian groups
    #[command(subcommand)]
    Abelian(AbelianCmd),
    /// Commutator genus computations and scans
    #[command(subcommand)]
    Genus(GenusCmd),
    /// First-order sentences over free groups
    #[command(subcommand)]
    Logic(LogicCmd),
    /// The genus-4 surface group K and its retractions
    #[command(subcommand)]
    Surface(SurfaceCmd),
}

#[derive(Args)]
struct RankArg {
    /// Free-group rank
    #[arg(long, default_value_t = 2)]
    rank: usize,
}

#[derive(Subcommand)]
enum WordCmd {
    /// Freely reduce a word
    Reduce {
        #[command(flatten)]
        rank: RankArg,
        word: String,
    },
    /// Decide conjugacy of two words and print a conjugator
    Conj {
        #[command(flatten)]
        rank: RankArg,
        u: String,
        v: String,
    },
    /// Extract the maximal root: w = root^exp
    Root {
        #[command(flatten)]
        rank: RankArg,
        word: String,
    },
    /// Exponent vector in the abelianization
    Expvec {
        #[command(flatten)]
        rank: RankArg,
        word: String,
    },
}

#[derive(Subcommand)]
enum AutoCmd {
    /// Is the word part of some basis?
    Primitive {
        #[command(flatten)]
        rank: RankArg,
        word: String,
    },
    /// Whitehead length minimization with trace
    Minimize {
        #[command(flatten)]
        rank: RankArg,
        word: String,
    },
}

#[derive(Subcommand)]
enum AbelianCmd {
    /// Smith normal form of a presentation: relations as comma-separated columns
    Snf {
        /// Number of generators
        #[arg(long)]
        gens: usize,
        /// Relation columns, each "c1,c2,...", one entry per generator
        relations: Vec<String>,
    },
    /// Szmielew ranks rho1, rho2, rho3 at (p, k)
    Ranks {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// Group descriptor, e.g. "Z^2 + Z/4" or "Z[1/2,1/3]"
        group: String,
    },
    /// Elementary equivalence of two group descriptors
    Equiv { g1: String, g2: String },
    /// Structure of Z[S^-1] / p^k Z[S^-1]
    Quotient {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// A single localized summand: "Z" or "Z[1/p1,...]"
        group: String,
    },
}

#[derive(Subcommand)]
enum GenusCmd {
    /// Genus certificate for a derived-subgroup word
    Of {
        #[command(flatten)]
        rank: RankArg,
        /// Largest genus the search will certify
        #[arg(long, default_value_t = 3)]
        gmax: usize,
        /// Commutator table letter bound
        #[arg(short = 'B', long = "bound", default_value_t = 4)]
        bound: usize,
        word: String,
    },
    /// Wicks commutator test
    Wicks {
        #[command(flatten)]
        rank: RankArg,
        word: String,
    },
    /// Scan powers z^n against the law n < 2 genus(z^n)
    Dhscan {
        #[command(flatten)]
        rank: RankArg,
        /// Largest representative length
        #[arg(long = "L", default_value_t = 4)]
        l_max: usize,
        /// Largest power
        #[arg(long = "n", default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        gmax: usize,
        #[arg(short = 'B', long = "bound", default_value_t = 4)]
        bound: usize,
    },
    /// Certified lower bound for f(g, n) over a length window
    Ftable {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        g: usize,
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "L", default_value_t = 6)]
        l_max: usize,
        #[arg(short = 'B', long = "bound", default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum LogicCmd {
    /// Parse a formula and print its canonical form
    Parse { formula: String },
    /// Prenex classification: Pi_n / Sigma_n
    Classify { formula: String },
    /// Build a named sentence template
    #[command(subcommand)]
    Build(BuildCmd),
    /// Evaluate a template exactly on free-group arguments
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Bounded model check over a ball in the free group
    Check {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        formula: String,
    },
    /// Separate conjugacy classes in a finite symmetric-group quotient
    Separate {
        #[command(flatten)]
        rank: RankArg,
        /// Largest permutation degree tried
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Random assignments per degree after the grid phase
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        u: String,
        w: String,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Commuting-power sentence, parameter n >= 2
    Phi {
        #[arg(long = "n")]
        n: u32,
    },
    /// p-divisibility ladder sentence
    Psi {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// No p-th root sentence
    Pi {
        #[arg(long)]
        p: u64,
    },
    /// Square-of-genus-g implies product of k commutators
    Sigma {
        #[arg(long)]
        g: u32,
        #[arg(long = "n")]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Conjugacy separation pair over a finite presentation
    Conj {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        w: String,
        #[arg(long)]
        u: String,
        /// Relator words, repeatable
        #[arg(long = "relator")]
        relators: Vec<String>,
    },
}

#[derive(Subcommand)]
enum EvalCmd {
    Phi {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long = "n")]
        n: u32,
        #[arg(long)]
        x0: String,
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
    },
    Psi {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        x0: String,
        #[arg(long)]
        x1: String,
    },
    Pi {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: String,
    },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Dehn-reduce a rank-4 word against the symmetrized relator set
    Dehn { word: String },
    /// Word problem in K
    Trivial { word: String },
    /// Maximum piece length of the symmetrized set
    Pieces,
    /// Apply the retraction r_m to a word
    Retract {
        #[arg(long, default_value_t = 0)]
        m: u32,
        word: String,
    },
    /// Smallest r_m keeping every listed word alive in F_2
    Separate {
        #[arg(long, default_value_t = 5)]
        mmax: u32,
        #[arg(required = true)]
        words: Vec<String>,
    },
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let jobs = match resolve_jobs(cli.jobs) {
        Ok(jobs) => jobs,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let format = cli.format.unwrap_or(match &cli.command {
        Command::Genus(GenusCmd::Of { .. }) => Format::Json,
        _ => Format::Text,
    });

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let started = std::time::Instant::now();
    let result = pool.install(|| dispatch(&cli.command, format));
    eprintln!("runtime: {:?}", started.elapsed());

    let (body, code) = match result {
        Ok(body) => (body, 0),
        Err(msg) => {
            let body = match format {
                Format::Text => format!("error: {msg}\n"),
                Format::Json => format!("{}\n", json!({ "error": msg })),
            };
            (body, 1)
        }
    };
    match &cli.out {
        None => {
            print!("{body}");
            let _ = std::io::stdout().flush();
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
    }
    code
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, String> {
    if let Some(jobs) = flag {
        if jobs == 0 {
            return Err("--jobs must be positive".into());
        }
        return Ok(jobs);
    }
    match std::env::var("FLG_JOBS") {
        Err(_) => Ok(1),
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&jobs| jobs > 0)
            .ok_or_else(|| format!("FLG_JOBS must be a positive integer, got {raw:?}")),
    }
}

fn dispatch(command: &Command, format: Format) -> Result<String, String> {
    match command {
        Command::Word(cmd) => run_word(cmd, format),
        Command::Auto(cmd) => run_auto(cmd, format),
        Command::Abelian(cmd) => run_abelian(cmd, format),
        Command::Genus(cmd) => run_genus(cmd, format),
        Command::Logic(cmd) => run_logic(cmd, format),
        Command::Surface(cmd) => run_surface(cmd, format),
    }
}

fn context(rank: usize) -> Result<GroupContext, String> {
    GroupContext::new(rank).map_err(|e| e.to_string())
}

fn parse_in(s: &str, ctx: &GroupContext) -> Result<Word, String> {
    parse_word(s, ctx).map_err(|e| e.to_string())
}

fn witness_json(expr: &CommutatorExpression) -> serde_json::Value {
    serde_json::Value::Array(
        expr.pairs()
            .iter()
            .map(|(x, y)| json!([x.to_string(), y.to_string()]))
            .collect(),
    )
}

fn int_list<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn run_word(cmd: &WordCmd, format: Format) -> Result<String, String> {
    match cmd {
        WordCmd::Reduce { rank, word } => {
            let ctx = context(rank.rank)?;
            let w = parse_in(word, &ctx)?;
            Ok(match format {
                Format::Text => format!("reduced={w}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "word reduce",
                        "rank": rank.rank,
                        "input": word,
                        "reduced": w.to_string(),
                        "len": w.len(),
                        "version": VERSION,
                    })
                ),
            })
        }
        WordCmd::Conj { rank, u, v } => {
            let ctx = context(rank.rank)?;
            let u_word = parse_in(u, &ctx)?;
            let v_word = parse_in(v, &ctx)?;
            let g = are_conjugate(&u_word, &v_word);
            Ok(match format {
                Format::Text => match &g {
                    Some(g) => format!("conjugate=true g={g}\n"),
                    None => "conjugate=false\n".to_string(),
                },
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "word conj",
                        "rank": rank.rank,
                        "u": u_word.to_string(),
                        "v": v_word.to_string(),
                        "conjugate": g.is_some(),
                        "g": g.map(|g| g.to_string()),
                        "version": VERSION,
                    })
                ),
            })
        }
        WordCmd::Root { rank, word } => {
            let ctx = context(rank.rank)?;
            let w = parse_in(word, &ctx)?;
            let dec = extract_root(&w).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => format!("root={} exp={}\n", dec.root, dec.exponent),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "word root",
                        "rank": rank.rank,
                        "word": w.to_string(),
                        "root": dec.root.to_string(),
                        "exp": dec.exponent,
                        "version": VERSION,
                    })
                ),
            })
        }
        WordCmd::Expvec { rank, word } => {
            let ctx = context(rank.rank)?;
            let w = parse_in(word, &ctx)?;
            let ev = exponent_vector(&w, &ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => format!("expvec={}\n", int_list(ev.entries())),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "word expvec",
                        "rank": rank.rank,
                        "word": w.to_string(),
                        "expvec": ev.entries(),
                        "version": VERSION,
                    })
                ),
            })
        }
    }
}

fn run_auto(cmd: &AutoCmd, format: Format) -> Result<String, String> {
    match cmd {
        AutoCmd::Primitive { rank, word } => {
            let ctx = context(rank.rank)?;
            let w = parse_in(word, &ctx)?;
            let primitive = is_primitive(&w, &ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => format!("primitive={primitive}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "auto primitive",
                        "rank": rank.rank,
                        "word": w.to_string(),
                        "primitive": primitive,
                        "version": VERSION,
                    })
                ),
            })
        }
        AutoCmd::Minimize { rank, word } => {
            let ctx = context(rank.rank)?;
            let w = parse_in(word, &ctx)?;
            let trace = minimize_length(&w, &ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => format!(
                    "minimal={} len={} steps={}\n",
                    trace.minimal,
                    trace.minimal.len(),
                    trace.steps.len()
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "auto minimize",
                        "rank": rank.rank,
                        "word": w.to_string(),
                        "minimal": trace.minimal.to_string(),
                        "len": trace.minimal.len(),
                        "steps": trace.steps.len(),
                        "version": VERSION,
                    })
                ),
            })
        }
    }
}

fn parse_relation_column(raw: &str, gens: usize) -> Result<Vec<i64>, String> {
    let column: Vec<i64> = raw
        .split(',')
        .map(|part| part.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("relation column {raw:?} is not a comma-separated integer list"))?;
    if column.len() != gens {
        return Err(format!(
            "relation column {raw:?} has {} entries, expected {gens}",
            column.len()
        ));
    }
    Ok(column)
}

fn run_abelian(cmd: &AbelianCmd, format: Format) -> Result<String, String> {
    match cmd {
        AbelianCmd::Snf { gens, relations } => {
            let columns: Vec<Vec<i64>> = relations
                .iter()
                .map(|raw| parse_relation_column(raw, *gens))
                .collect::<Result<_, _>>()?;
            let inv = invariant_factors(*gens, &columns).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => format!(
                    "free_rank={} factors={}\n",
                    inv.free_rank,
                    int_list(&inv.factors)
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "abelian snf",
                        "gens": gens,
                        "relations": columns,
                        "free_rank": inv.free_rank,
                        "factors": inv.factors,
                        "version": VERSION,
                    })
                ),
            })
        }
        AbelianCmd::Ranks { p, k, group } => {
            let g = parse_group(group).map_err(|e| e.to_string())?;
            let (rho1, rho2, rho3) = szmielew_ranks(&g, *p, *k).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => format!("rho1={rho1} rho2={rho2} rho3={rho3}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "abelian ranks",
                        "group": g.to_string(),
                        "p": p,
                        "k": k,
                        "rho1": rho1,
                        "rho2": rho2,
                        "rho3": rho3,
                        "version": VERSION,
                    })
                ),
            })
        }
        AbelianCmd::Equiv { g1, g2 } => {
            let a = parse_group(g1).map_err(|e| e.to_string())?;
            let b = parse_group(g2).map_err(|e| e.to_string())?;
            let equivalent = elementarily_equivalent(&a, &b);
            Ok(match format {
                Format::Text => format!("equivalent={equivalent}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "abelian equiv",
                        "g1": a.to_string(),
                        "g2": b.to_string(),
                        "equivalent": equivalent,
                        "version": VERSION,
                    })
                ),
            })
        }
        AbelianCmd::Quotient { p, k, group } => {
            let g = parse_group(group).map_err(|e| e.to_string())?;
            if g.free_summands().len() != 1 || !g.torsion_orders().is_empty() {
                return Err(format!(
                    "quotient expects a single localized summand like \"Z\" or \"Z[1/2]\", got {g}"
                ));
            }
            let order =
                localized_quotient_structure(&g.free_summands()[0], *p, *k).map_err(|e| e.to_string())?;
            let quotient = if order == 1 {
                "0".to_string()
            } else {
                format!("Z/{order}")
            };
            Ok(match format {
                Format::Text => format!("order={order} quotient={quotient}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "abelian quotient",
                        "group": g.to_string(),
                        "p": p,
                        "k": k,
                        "order": order,
                        "quotient": quotient,
                        "version": VERSION,
                    })
                ),
            })
        }
    }
}

fn scan_line(inst: &ScanInstance, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            json!({
                "z": inst.z.to_string(),
                "n": inst.n,
                "genus_lower": inst.genus_lower,
                "genus_upper": inst.genus_upper,
                "witness": inst.witness.as_ref().map(witness_json),
            })
        ),
        Format::Text => {
            let upper = inst
                .genus_upper
                .map_or("?".to_string(), |u| u.to_string());
            let witness = inst
                .witness
                .as_ref()
                .map_or(String::new(), |w| format!(" witness={w}"));
            format!(
                "z={} n={} lower={} upper={upper}{witness}\n",
                inst.z, inst.n, inst.genus_lower
            )
        }
    }
}

fn run_genus(cmd: &GenusCmd, format: Format) -> Result<String, String> {
    match cmd {
        GenusCmd::Of {
            rank,
            gmax,
            bound,
            word,
        } => {
            let ctx = context(rank.rank)?;
            let w = parse_in(word, &ctx)?;
            let cert = genus(&w, &ctx, *gmax, *bound).map_err(|e| e.to_string())?;
            let exact = matches!(cert, GenusCertificate::Exact { .. });
            let search_complete = match &cert {
                GenusCertificate::Bounds {
                    search_complete, ..
                } => *search_complete,
                _ => true,
            };
            let witness = cert.witness();
            Ok(match format {
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "genus of",
                        "rank": rank.rank,
                        "word": w.to_string(),
                        "gmax": gmax,
                        "bound": bound,
                        "genus_lower": cert.lower(),
                        "genus_upper": cert.upper(),
                        "exact": exact,
                        "search_complete": search_complete,
                        "witness": witness.map(witness_json),
                        "version": VERSION,
                    })
                ),
                Format::Text => {
                    if matches!(cert, GenusCertificate::NotInDerivedGroup) {
                        "not-in-derived-group\n".to_string()
                    } else {
                        let lower = cert.lower().expect("derived word has a lower bound");
                        let upper = cert
                            .upper()
                            .map_or("?".to_string(), |u| u.to_string());
                        let witness = witness
                            .map_or(String::new(), |w| format!(" witness={w}"));
                        format!(
                            "genus_lower={lower} genus_upper={upper} exact={exact} search_complete={search_complete}{witness}\n"
                        )
                    }
                }
            })
        }
        GenusCmd::Wicks { rank, word } => {
            let ctx = context(rank.rank)?;
            let w = parse_in(word, &ctx)?;
            let verdict = is_commutator(&w, &ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => match &verdict {
                    CommutatorVerdict::Yes(expr) => {
                        format!("commutator=true witness={expr}\n")
                    }
                    CommutatorVerdict::No => "commutator=false\n".to_string(),
                    CommutatorVerdict::NotInDerivedGroup => {
                        "commutator=false not-in-derived-group\n".to_string()
                    }
                },
                Format::Json => {
                    let (yes, witness, derived) = match &verdict {
                        CommutatorVerdict::Yes(expr) => (true, Some(witness_json(expr)), true),
                        CommutatorVerdict::No => (false, None, true),
                        CommutatorVerdict::NotInDerivedGroup => (false, None, false),
                    };
                    format!(
                        "{}\n",
                        json!({
                            "command": "genus wicks",
                            "rank": rank.rank,
                            "word": w.to_string(),
                            "commutator": yes,
                            "in_derived_group": derived,
                            "witness": witness,
                            "version": VERSION,
                        })
                    )
                }
            })
        }
        GenusCmd::Dhscan {
            rank,
            l_max,
            n_max,
            gmax,
            bound,
        } => {
            let ctx = context(rank.rank)?;
            let report = duncan_howie_scan(&ctx, *l_max, *n_max, *gmax, *bound)
                .map_err(|e| e.to_string())?;
            let mut body = String::new();
            for inst in &report.instances {
                body.push_str(&scan_line(inst, format));
            }
            eprintln!(
                "checked={} violations={} skipped={}",
                report.checked,
                report.violations.len(),
                report
                    .instances
                    .iter()
                    .filter(|i| i.skipped.is_some())
                    .count()
            );
            for violation in &report.violations {
                eprintln!(
                    "VIOLATION z={} n={} genus_upper={}",
                    violation.z, violation.n, violation.genus_upper
                );
            }
            Ok(body)
        }
        GenusCmd::Ftable {
            rank,
            g,
            n,
            l_max,
            bound,
        } => {
            let ctx = context(rank.rank)?;
            let entry =
                f_lower_table(&ctx, *g, *n, *l_max, *bound).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => match &entry.result {
                    FLowerBound::NoInstances => "f_lower=none\n".to_string(),
                    FLowerBound::Value { value, witness_z } => {
                        format!("f_lower={value} witness_z={witness_z}\n")
                    }
                },
                Format::Json => {
                    let (value, witness_z) = match &entry.result {
                        FLowerBound::NoInstances => (None, None),
                        FLowerBound::Value { value, witness_z } => {
                            (Some(*value), Some(witness_z.to_string()))
                        }
                    };
                    format!(
                        "{}\n",
                        json!({
                            "command": "genus ftable",
                            "rank": rank.rank,
                            "g": entry.g,
                            "n": entry.n,
                            "l_max": entry.l_max,
                            "bound": entry.bound,
                            "f_lower": value,
                            "witness_z": witness_z,
                            "version": VERSION,
                        })
                    )
                }
            })
        }
    }
}

fn class_of(f: &Formula) -> Option<String> {
    classify_prenex(f).ok().map(|c| c.to_string())
}

fn assignment_text(pairs: &[(String, Word)]) -> String {
    pairs
        .iter()
        .map(|(v, w)| format!("{v}={w}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn assignment_json(pairs: &[(String, Word)]) -> serde_json::Value {
    serde_json::Value::Array(
        pairs
            .iter()
            .map(|(v, w)| json!([v, w.to_string()]))
            .collect(),
    )
}

fn verdict_name(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Satisfied { .. } => "satisfied",
        Verdict::BoundedSatisfied { .. } => "bounded-satisfied",
        Verdict::Refuted { .. } => "refuted",
        Verdict::NoWitnessWithinBudget { .. } => "no-witness-within-budget",
    }
}

fn leading_assignment(verdict: &Verdict) -> Option<&[(String, Word)]> {
    match verdict {
        Verdict::Satisfied { witnesses } => Some(witnesses),
        Verdict::Refuted { counterexample } => Some(counterexample),
        _ => None,
    }
}

/// Re-checks a reported leading-block assignment by peeling those quantifiers,
/// substituting the words, and model checking what remains.
fn substitution_check(
    f: &Formula,
    assignment: &[(String, Word)],
    ctx: &GroupContext,
    radius: usize,
    budget: u64,
) -> Option<BoundedOutcome> {
    let mut cur = f.clone();
    for (var, w) in assignment {
        cur = match cur {
            Formula::Forall(name, body) | Formula::Exists(name, body) if name == *var => {
                body.substitute(var, w)
            }
            _ => return None,
        };
    }
    bounded_check(&cur, ctx, radius, budget).ok()
}

fn run_logic(cmd: &LogicCmd, format: Format) -> Result<String, String> {
    match cmd {
        LogicCmd::Parse { formula } => {
            let f = parse_formula(formula).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => format!("{f}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "logic parse",
                        "formula": f.to_string(),
                        "class": class_of(&f),
                        "version": VERSION,
                    })
                ),
            })
        }
        LogicCmd::Classify { formula } => {
            let f = parse_formula(formula).map_err(|e| e.to_string())?;
            let class = match classify_prenex(&f) {
                Ok(class) => class.to_string(),
                Err(SentenceError::NotPrenex) => "NotPrenex".to_string(),
                Err(e) => return Err(e.to_string()),
            };
            Ok(match format {
                Format::Text => format!("class={class}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "logic classify",
                        "formula": f.to_string(),
                        "class": class,
                        "version": VERSION,
                    })
                ),
            })
        }
        LogicCmd::Build(build) => run_build(build, format),
        LogicCmd::Check {
            rank,
            radius,
            budget,
            formula,
        } => {
            let ctx = context(rank.rank)?;
            let f = parse_formula(formula).map_err(|e| e.to_string())?;
            let outcome =
                bounded_check(&f, &ctx, *radius, *budget).map_err(|e| e.to_string())?;
            let recheck = leading_assignment(&outcome.verdict).and_then(|assignment| {
                substitution_check(&f, assignment, &ctx, *radius, *budget)
            });
            Ok(match format {
                Format::Text => {
                    let mut body = format!(
                        "verdict={} exact={} radius={} evaluations={}\n",
                        verdict_name(&outcome.verdict),
                        outcome.exact,
                        outcome.radius,
                        outcome.evaluations
                    );
                    match &outcome.verdict {
                        Verdict::Satisfied { witnesses } if !witnesses.is_empty() => {
                            body.push_str(&format!(
                                "witnesses: {}\n",
                                assignment_text(witnesses)
                            ));
                        }
                        Verdict::Refuted { counterexample } if !counterexample.is_empty() => {
                            body.push_str(&format!(
                                "counterexample: {}\n",
                                assignment_text(counterexample)
                            ));
                        }
                        _ => {}
                    }
                    if let Some(check) = &recheck {
                        body.push_str(&format!(
                            "substitution-check: {} exact={}\n",
                            verdict_name(&check.verdict),
                            check.exact
                        ));
                    }
                    body
                }
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "logic check",
                        "rank": rank.rank,
                        "formula": f.to_string(),
                        "radius": outcome.radius,
                        "budget": budget,
                        "verdict": verdict_name(&outcome.verdict),
                        "exact": outcome.exact,
                        "evaluations": outcome.evaluations,
                        "assignment": leading_assignment(&outcome.verdict).map(assignment_json),
                        "substitution_check": recheck.as_ref().map(|check| json!({
                            "verdict": verdict_name(&check.verdict),
                            "exact": check.exact,
                        })),
                        "version": VERSION,
                    })
                ),
            })
        }
        LogicCmd::Eval(eval) => run_eval(eval, format),
        LogicCmd::Separate {
            rank,
            dmax,
            samples,
            seed,
            u,
            w,
        } => {
            let ctx = context(rank.rank)?;
            let u_word = parse_in(u, &ctx)?;
            let w_word = parse_in(w, &ctx)?;
            match separate_conjugacy_finite(&u_word, &w_word, &ctx, *dmax, *samples, *seed) {
                Ok(witness) => Ok(match format {
                    Format::Text => {
                        let mut body = format!(
                            "degree={} u_cycles={} w_cycles={}\n",
                            witness.degree,
                            int_list(&witness.u_cycle_type),
                            int_list(&witness.w_cycle_type)
                        );
                        for (i, perm) in witness.images.iter().enumerate() {
                            let gen = (b'a' + i as u8) as char;
                            body.push_str(&format!("{gen}={}\n", int_list(perm.images())));
                        }
                        body
                    }
                    Format::Json => format!(
                        "{}\n",
                        json!({
                            "command": "logic separate",
                            "rank": rank.rank,
                            "u": u_word.to_string(),
                            "w": w_word.to_string(),
                            "dmax": dmax,
                            "samples": samples,
                            "seed": seed,
                            "found": true,
                            "degree": witness.degree,
                            "images": witness.images.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
                            "u_cycle_type": witness.u_cycle_type,
                            "w_cycle_type": witness.w_cycle_type,
                            "version": VERSION,
                        })
                    ),
                }),
                Err(SentenceError::NotFoundWithinBudget { max_degree }) => Ok(match format {
                    Format::Text => format!("found=false dmax={max_degree}\n"),
                    Format::Json => format!(
                        "{}\n",
                        json!({
                            "command": "logic separate",
                            "rank": rank.rank,
                            "u": u_word.to_string(),
                            "w": w_word.to_string(),
                            "dmax": dmax,
                            "samples": samples,
                            "seed": seed,
                            "found": false,
                            "version": VERSION,
                        })
                    ),
                }),
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

fn run_build(cmd: &BuildCmd, format: Format) -> Result<String, String> {
    let params = match cmd {
        BuildCmd::Phi { n } => TemplateParams::PhiN { n: *n },
        BuildCmd::Psi { p, k } => TemplateParams::PsiPK { p: *p, k: *k },
        BuildCmd::Pi { p } => TemplateParams::PiP { p: *p },
        BuildCmd::Sigma { g, n, k } => TemplateParams::SigmaGNK {
            g: *g,
            n: *n,
            k: *k,
        },
        BuildCmd::Conj {
            rank,
            w,
            u,
            relators,
        } => {
            let ctx = context(rank.rank)?;
            let relators: Vec<Word> = relators
                .iter()
                .map(|r| parse_in(r, &ctx))
                .collect::<Result<_, _>>()?;
            TemplateParams::ConjPair {
                presentation: Presentation {
                    generators: rank.rank,
                    relators,
                },
                w: parse_in(w, &ctx)?,
                u: parse_in(u, &ctx)?,
            }
        }
    };
    let name = match cmd {
        BuildCmd::Phi { .. } => "phi",
        BuildCmd::Psi { .. } => "psi",
        BuildCmd::Pi { .. } => "pi",
        BuildCmd::Sigma { .. } => "sigma",
        BuildCmd::Conj { .. } => "conj",
    };
    match build_template(&params).map_err(|e| e.to_string())? {
        BuiltTemplate::Single(f) => Ok(match format {
            Format::Text => format!("{f}\n"),
            Format::Json => format!(
                "{}\n",
                json!({
                    "command": format!("logic build {name}"),
                    "formula": f.to_string(),
                    "class": class_of(&f),
                    "version": VERSION,
                })
            ),
        }),
        BuiltTemplate::Pair { sigma, tau } => Ok(match format {
            Format::Text => format!("sigma: {sigma}\ntau: {tau}\n"),
            Format::Json => format!(
                "{}\n",
                json!({
                    "command": format!("logic build {name}"),
                    "sigma": sigma.to_string(),
                    "sigma_class": class_of(&sigma),
                    "tau": tau.to_string(),
                    "tau_class": class_of(&tau),
                    "version": VERSION,
                })
            ),
        }),
    }
}

fn run_eval(cmd: &EvalCmd, format: Format) -> Result<String, String> {
    match cmd {
        EvalCmd::Phi {
            rank,
            n,
            x0,
            x1,
            x2,
        } => {
            let ctx = context(rank.rank)?;
            let x0 = parse_in(x0, &ctx)?;
            let x1 = parse_in(x1, &ctx)?;
            let x2 = parse_in(x2, &ctx)?;
            let outcome = eval_phi_n(*n, &x0, &x1, &x2, &ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => match &outcome {
                    PhiOutcome::Satisfied { i, j, y } => {
                        format!("SATISFIED i={i} j={j} y={y}\n")
                    }
                    PhiOutcome::HypothesisFalse => "HYPOTHESIS-FALSE\n".to_string(),
                },
                Format::Json => {
                    let (satisfied, i, j, y) = match &outcome {
                        PhiOutcome::Satisfied { i, j, y } => {
                            (true, Some(*i), Some(*j), Some(y.to_string()))
                        }
                        PhiOutcome::HypothesisFalse => (false, None, None, None),
                    };
                    format!(
                        "{}\n",
                        json!({
                            "command": "logic eval phi",
                            "rank": rank.rank,
                            "n": n,
                            "x0": x0.to_string(),
                            "x1": x1.to_string(),
                            "x2": x2.to_string(),
                            "satisfied": satisfied,
                            "i": i,
                            "j": j,
                            "y": y,
                            "version": VERSION,
                        })
                    )
                }
            })
        }
        EvalCmd::Psi { rank, p, k, x0, x1 } => {
            let ctx = context(rank.rank)?;
            let x0 = parse_in(x0, &ctx)?;
            let x1 = parse_in(x1, &ctx)?;
            let outcome = eval_psi_pk(*p, *k, &x0, &x1, &ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => match &outcome {
                    PsiOutcome::SatisfiedRoot { y } => format!("SATISFIED root y={y}\n"),
                    PsiOutcome::SatisfiedShift { i, y } => format!("SATISFIED i={i} y={y}\n"),
                    PsiOutcome::HypothesisFalse => "HYPOTHESIS-FALSE\n".to_string(),
                },
                Format::Json => {
                    let (satisfied, disjunct, i, y) = match &outcome {
                        PsiOutcome::SatisfiedRoot { y } => {
                            (true, Some("root"), None, Some(y.to_string()))
                        }
                        PsiOutcome::SatisfiedShift { i, y } => {
                            (true, Some("shift"), Some(*i), Some(y.to_string()))
                        }
                        PsiOutcome::HypothesisFalse => (false, None, None, None),
                    };
                    format!(
                        "{}\n",
                        json!({
                            "command": "logic eval psi",
                            "rank": rank.rank,
                            "p": p,
                            "k": k,
                            "x0": x0.to_string(),
                            "x1": x1.to_string(),
                            "satisfied": satisfied,
                            "disjunct": disjunct,
                            "i": i,
                            "y": y,
                            "version": VERSION,
                        })
                    )
                }
            })
        }
        EvalCmd::Pi { rank, p, x } => {
            let ctx = context(rank.rank)?;
            let x = parse_in(x, &ctx)?;
            let outcome = eval_pi_p(*p, &x, &ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => match &outcome {
                    PiOutcome::Satisfied { y } => format!("SATISFIED y={y}\n"),
                    PiOutcome::HypothesisFalse => "HYPOTHESIS-FALSE\n".to_string(),
                },
                Format::Json => {
                    let (satisfied, y) = match &outcome {
                        PiOutcome::Satisfied { y } => (true, Some(y.to_string())),
                        PiOutcome::HypothesisFalse => (false, None),
                    };
                    format!(
                        "{}\n",
                        json!({
                            "command": "logic eval pi",
                            "rank": rank.rank,
                            "p": p,
                            "x": x.to_string(),
                            "satisfied": satisfied,
                            "y": y,
                            "version": VERSION,
                        })
                    )
                }
            })
        }
    }
}

fn run_surface(cmd: &SurfaceCmd, format: Format) -> Result<String, String> {
    let k = SurfacePresentation::new();
    match cmd {
        SurfaceCmd::Dehn { word } => {
            let w = parse_in(word, k.context())?;
            let trace = k.dehn_reduce(&w);
            Ok(match format {
                Format::Text => {
                    let mut body = String::new();
                    for (i, step) in trace.steps.iter().enumerate() {
                        body.push_str(&format!(
                            "step={} pos={} replaced={} replacement={}\n",
                            i + 1,
                            step.position,
                            step.replaced,
                            step.replacement
                        ));
                    }
                    body.push_str(&format!("final={}\n", trace.final_word));
                    body
                }
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "surface dehn",
                        "word": w.to_string(),
                        "steps": trace.steps.iter().map(|s| json!({
                            "position": s.position,
                            "replaced": s.replaced.to_string(),
                            "replacement": s.replacement.to_string(),
                        })).collect::<Vec<_>>(),
                        "final": trace.final_word.to_string(),
                        "trivial": trace.final_word.is_empty(),
                        "version": VERSION,
                    })
                ),
            })
        }
        SurfaceCmd::Trivial { word } => {
            let w = parse_in(word, k.context())?;
            let trivial = k.is_trivial(&w);
            Ok(match format {
                Format::Text => format!("trivial={trivial}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "surface trivial",
                        "word": w.to_string(),
                        "trivial": trivial,
                        "version": VERSION,
                    })
                ),
            })
        }
        SurfaceCmd::Pieces => {
            let piece = k.max_piece_length();
            let sixth = (piece as f64) < 8.0 / 6.0;
            Ok(match format {
                Format::Text => format!("max_piece={piece} c_one_sixth={sixth}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "surface pieces",
                        "max_piece": piece,
                        "relator_len": 8,
                        "c_one_sixth": sixth,
                        "version": VERSION,
                    })
                ),
            })
        }
        SurfaceCmd::Retract { m, word } => {
            let w = parse_in(word, k.context())?;
            let image = apply_retraction(&Retraction::new(*m), &w);
            Ok(match format {
                Format::Text => format!("image={image}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "command": "surface retract",
                        "m": m,
                        "word": w.to_string(),
                        "image": image.to_string(),
                        "killed": image.is_empty(),
                        "version": VERSION,
                    })
                ),
            })
        }
        SurfaceCmd::Separate { mmax, words } => {
            let set: Vec<Word> = words
                .iter()
                .map(|raw| parse_in(raw, k.context()))
                .collect::<Result<_, _>>()?;
            let outcome = k
                .find_separating_retraction(&set, *mmax)
                .map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Text => match outcome {
                    SeparationOutcome::Found { m } => format!("m={m}\n"),
                    SeparationOutcome::NotFound { m_max } => {
                        format!("found=false mmax={m_max}\n")
                    }
                },
                Format::Json => {
                    let found = matches!(outcome, SeparationOutcome::Found { .. });
                    let m = match outcome {
                        SeparationOutcome::Found { m } => Some(m),
                        SeparationOutcome::NotFound { .. } => None,
                    };
                    format!(
                        "{}\n",
                        json!({
                            "command": "surface separate",
                            "words": set.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                            "mmax": mmax,
                            "found": found,
                            "m": m,
                            "version": VERSION,
                        })
                    )
                }
            })
        }
    }
}
