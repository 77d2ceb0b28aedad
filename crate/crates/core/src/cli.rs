//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit code.
//!
//! Exit codes: 0 success or property holds, 2 property fails (certificate on
//! stdout), 3 parameter error, 4 budget exceeded, 5 I/O or parse error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::comb::binomial;
use crate::constructions::{
    centered_family, construct_lift, construct_modular, construct_split, LiftConfig, ModularConfig, SplitConfig,
};
use crate::error::{Error, Result};
use crate::hypercore::{io as hgio, kpartite_reduce, Hypergraph, Partition};
use crate::numbers::{
    behrend_good_set, exact_max_packing, greedy_packing, is_ap_free, is_k_good, max_ap_free, max_good_set, GoodSet,
};
use crate::patterns::{d_sets, find_i_copy, find_q_copy, shadow_clique_audit, Certificate, IPattern, QPattern};
use crate::turan::{
    bes_family, density_trend, ex_exact_capped, growth_table, monotone_chain_check, write_csv, ForbiddenFamily,
    GoodSetSource, GrowthRow, GrowthSpec, Member, DEFAULT_MAX_CANDIDATES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 2;
pub const EXIT_PARAM: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_IO: i32 = 5;

const PATTERN_HELP: &str = "Pattern spec (grammar v1): qkr:K:R = Q_K(R); ik:K:I = I_K(I); \
file:PATH = hypergraph file; bes:K:V:E = all K-graphs with E edges on at most V vertices";

#[derive(Parser, Debug)]
#[command(name = "hyperturan", version, about = "Q_k(r)-free hypergraphs: constructions, checkers and exact search")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, env = "HYPERTURAN_BUDGET", default_value_t = Budget::DEFAULT_NODES)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a construction and write it to a file.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a property; exit 2 with a certificate when it fails.
    #[command(subcommand)]
    Check(Check),
    /// Exact or constructive optimisation.
    #[command(subcommand)]
    Search(Search),
    /// CSV tables over parameter sweeps.
    #[command(subcommand)]
    Table(Table),
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Output file (`.json` selects JSON, anything else the text format).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also run the matching freeness checker.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// F(S, α, β) on k parts of size p.
    Modular {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
        /// `exact`, `behrend`, or an explicit comma-separated set.
        #[arg(long, default_value = "exact")]
        goodset: String,
        #[arg(long, default_value_t = 0)]
        alpha: u64,
        #[arg(long, default_value_t = 0)]
        beta: u64,
        /// Weights m_1..m_k (a permutation of 1..k); default identity.
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u64>>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Greedy packing on X joined with all (k−r+1)-sets of Y.
    Split {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Lift of an r-uniform base to k = 2r − 1.
    Lift {
        #[arg(long)]
        r: usize,
        /// Base hypergraph file.
        #[arg(long, conflicts_with = "base_turan")]
        base: Option<PathBuf>,
        /// Use the extremal {Q_r(r), I_r(r−1)}-free graph on this many vertices as the base.
        #[arg(long)]
        base_turan: Option<usize>,
        #[arg(long)]
        n2: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All k-sets through vertex 0.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Q_k(r)-freeness.
    QFree {
        #[arg(long, help = PATTERN_HELP)]
        pattern: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// I_k(i)-freeness.
    IFree {
        #[arg(long, help = PATTERN_HELP)]
        pattern: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Freeness of a family given by one or more pattern specs.
    Free {
        #[arg(long, required = true, help = PATTERN_HELP)]
        forbid: Vec<String>,
        #[arg(long)]
        input: PathBuf,
    },
    /// k-goodness of a subset of Z_p.
    Goodset {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
    },
    /// AP_k-freeness of a subset of 1..n.
    ApFree {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
    },
    /// Shadow-clique audit.
    Audit {
        #[arg(long)]
        input: PathBuf,
    },
    /// |D(e)| over all edges; uses the file's partition or a k-partite reduction.
    Dset {
        #[arg(long)]
        input: PathBuf,
        /// Fail when some |D(e)| reaches this value.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetSource {
    Exact,
    Behrend,
}

#[derive(Subcommand, Debug)]
enum Search {
    /// (n, r, t)-packing: greedy, or exact with --exact.
    Packing {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k-good set: digit-sphere construction, or maximum with --exact.
    Goodset {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum AP_k-free subset of 1..n.
    Apfree {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact Turán number ex(n, F).
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, required = true, help = PATTERN_HELP)]
        forbid: Vec<String>,
        /// Largest allowed C(n, k).
        #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
        max_candidates: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Table {
    /// Modular construction edge counts over primes.
    ModularGrowth {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value_t = SetSource::Exact)]
        goodset: SetSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split construction edge counts over n.
    SplitGrowth {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        ns: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ex(n, F)/C(n, k) for n = nmin..=nmax.
    Density {
        #[arg(long)]
        k: usize,
        #[arg(long, required = true, help = PATTERN_HELP)]
        forbid: Vec<String>,
        /// Defaults to k.
        #[arg(long)]
        nmin: Option<usize>,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ex(n, Q_k(3)) ≤ … ≤ ex(n, Q_k(k)).
    Chain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses a pattern spec into family members.
pub fn parse_pattern(spec: &str) -> Result<Vec<Member>> {
    let bad = || Error::Param(format!("unknown pattern spec {spec:?}; {PATTERN_HELP}"));
    let nums = |rest: &str, count: usize| -> Result<Vec<usize>> {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != count {
            return Err(bad());
        }
        parts.iter().map(|p| p.parse().map_err(|_| bad())).collect()
    };
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "qkr" => {
            let v = nums(rest, 2)?;
            Ok(vec![Member::Q(QPattern::new(v[0], v[1])?)])
        }
        "ik" => {
            let v = nums(rest, 2)?;
            Ok(vec![Member::I(IPattern::new(v[0], v[1])?)])
        }
        "file" => Ok(vec![Member::Graph(hgio::load(rest)?)]),
        "bes" => {
            let v = nums(rest, 3)?;
            Ok(bes_family(v[0], v[1], v[2])?.members().to_vec())
        }
        _ => Err(bad()),
    }
}

fn parse_family(specs: &[String], k: Option<usize>) -> Result<ForbiddenFamily> {
    let mut members = Vec::new();
    for s in specs {
        members.extend(parse_pattern(s)?);
    }
    let k = k.or_else(|| members.first().map(Member::k)).ok_or_else(|| Error::Param("no patterns".into()))?;
    Ok(ForbiddenFamily::new(k, members)?.with_id(specs.join("+")))
}

fn print_json(v: &Value) {
    println!("{v}");
}

fn violation(c: Certificate) -> Error {
    Error::Violation(Box::new(c))
}

fn write_hypergraph(h: &Hypergraph, out: Option<&Path>) -> Result<()> {
    if let Some(path) = out {
        hgio::save(h, path)?;
        eprintln!("wrote {} edges to {}", h.m(), path.display());
    }
    Ok(())
}

fn write_json_file(v: &Value, out: Option<&Path>) -> Result<()> {
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut w, v)?;
        writeln!(w)?;
        w.flush()?;
    }
    Ok(())
}

fn write_rows(rows: &[GrowthRow], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(rows, &mut w)?;
            w.flush()?;
        }
        None => write_csv(rows, io::stdout().lock())?,
    }
    Ok(())
}

/// Runs the Q_k(r) checker; a copy is returned as a violation.
fn require_q_free(h: &Hypergraph, pat: QPattern) -> Result<()> {
    match find_q_copy(h, pat)? {
        Some(q) => Err(violation(Certificate::Q(q))),
        None => {
            eprintln!("verified {pat}-free");
            Ok(())
        }
    }
}

fn finish_construct(h: &Hypergraph, out: &OutArgs, pat: QPattern) -> Result<i32> {
    write_hypergraph(h, out.out.as_deref())?;
    print_json(&json!({ "edges": h.m(), "n": h.n(), "k": h.k() }));
    if out.verify {
        require_q_free(h, pat)?;
    }
    Ok(EXIT_OK)
}

fn good_set_from(spec: &str, p: u64, k: u64, budget: Budget) -> Result<GoodSet> {
    match spec {
        "exact" => max_good_set(p, k, budget),
        "behrend" => behrend_good_set(p, k),
        list => {
            let set = list
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Param(format!("bad good set {list:?}")))?;
            GoodSet::user(p, k, set)
        }
    }
}

fn construct(cmd: &Construct, budget: Budget) -> Result<i32> {
    match cmd {
        Construct::Modular { k, p, goodset, alpha, beta, m, out } => {
            let s = good_set_from(goodset, *p, *k as u64, budget)?;
            eprintln!("good set of size {} ({:?})", s.len(), s.provenance);
            let mut cfg = ModularConfig::new(*k, s);
            cfg.alpha = *alpha;
            cfg.beta = *beta;
            if let Some(m) = m {
                cfg.m = m.clone();
            }
            let h = construct_modular(&cfg)?;
            finish_construct(&h, out, QPattern::new(*k, 3)?)
        }
        Construct::Split { n, k, r, out } => {
            let h = construct_split(&SplitConfig { n: *n, k: *k, r: *r })?;
            finish_construct(&h, out, QPattern::new(*k, *r)?)
        }
        Construct::Lift { r, base, base_turan, n2, out } => {
            let base = match (base, base_turan) {
                (Some(path), _) => hgio::load(path)?,
                (None, Some(n1)) => {
                    let fam = ForbiddenFamily::new(
                        *r,
                        vec![Member::Q(QPattern::new(*r, *r)?), Member::I(IPattern::new(*r, r.saturating_sub(1))?)],
                    )?;
                    let res = ex_exact_capped(*n1, *r, &fam, budget, DEFAULT_MAX_CANDIDATES)?;
                    if res.budget_hit {
                        return Err(Error::Budget { budget: budget.max_nodes });
                    }
                    res.witness
                }
                (None, None) => return Err(Error::Param("lift needs --base or --base-turan".into())),
            };
            let h = construct_lift(&LiftConfig { r: *r, base, n2: *n2 })?;
            finish_construct(&h, out, QPattern::new(2 * r - 1, *r)?)
        }
        Construct::Star { n, k, out } => {
            let h = centered_family(*n, *k)?;
            finish_construct(&h, out, QPattern::new(*k, *k)?)
        }
    }
}

fn single_member(spec: &str) -> Result<Member> {
    let mut members = parse_pattern(spec)?;
    if members.len() != 1 {
        return Err(Error::Param(format!("{spec:?} is a family, not a single pattern")));
    }
    Ok(members.remove(0))
}

fn check(cmd: &Check) -> Result<i32> {
    match cmd {
        Check::QFree { pattern, input } => {
            let Member::Q(pat) = single_member(pattern)? else {
                return Err(Error::Param(format!("q-free needs a qkr:K:R pattern, got {pattern:?}")));
            };
            let h = hgio::load(input)?;
            require_q_free(&h, pat)?;
            print_json(&json!({ "pattern": pat.to_string(), "free": true }));
        }
        Check::IFree { pattern, input } => {
            let Member::I(pat) = single_member(pattern)? else {
                return Err(Error::Param(format!("i-free needs an ik:K:I pattern, got {pattern:?}")));
            };
            let h = hgio::load(input)?;
            if let Some(c) = find_i_copy(&h, pat)? {
                return Err(violation(Certificate::I(c)));
            }
            print_json(&json!({ "pattern": pat.to_string(), "free": true }));
        }
        Check::Free { forbid, input } => {
            let h = hgio::load(input)?;
            let fam = parse_family(forbid, Some(h.k()))?;
            if let Some(c) = fam.find_copy(&h)? {
                return Err(violation(c));
            }
            print_json(&json!({ "family": fam.id(), "free": true }));
        }
        Check::Goodset { p, k, set } => {
            if let Some(v) = is_k_good(set, *p, *k)? {
                return Err(violation(Certificate::GoodSet(v)));
            }
            print_json(&json!({ "p": p, "k": k, "S": set, "good": true }));
        }
        Check::ApFree { n, k, set } => {
            if let Some(prog) = is_ap_free(set, *n, *k)? {
                return Err(violation(Certificate::Progression(prog)));
            }
            print_json(&json!({ "n": n, "k": k, "A": set, "ap_free": true }));
        }
        Check::Audit { input } => {
            let h = hgio::load(input)?;
            let rep = shadow_clique_audit(&h)?;
            print_json(&serde_json::to_value(&rep)?);
            if !rep.pass {
                return Ok(EXIT_FAILS);
            }
        }
        Check::Dset { input, bound, seed } => {
            let h = hgio::load(input)?;
            let stored = h
                .meta()
                .get("partition")
                .map(|v| serde_json::from_value::<Vec<Vec<u32>>>(v.clone()))
                .transpose()?;
            let (partition, host, reduced) = match stored {
                Some(parts) => (Partition::new(h.n(), parts)?, h, false),
                None => {
                    let (p, kept) = kpartite_reduce(&h, *seed)?;
                    (p, kept, true)
                }
            };
            let ds = d_sets(&host, &partition)?;
            let worst = ds.iter().max_by_key(|d| d.d.len());
            let max_d = worst.map_or(0, |d| d.d.len());
            let summary = json!({
                "edges": host.m(),
                "reduced": reduced,
                "max_d": max_d,
                "witness": worst.map(|d| json!({ "edge": host.edge(d.edge_id), "d": d.d })),
            });
            print_json(&summary);
            if bound.is_some_and(|b| max_d >= b) {
                return Ok(EXIT_FAILS);
            }
        }
    }
    Ok(EXIT_OK)
}

fn search(cmd: &Search, budget: Budget) -> Result<i32> {
    match cmd {
        Search::Packing { n, r, t, exact, out } => {
            let p = if *exact {
                exact_max_packing(*n, *r, *t, budget)?
            } else {
                greedy_packing(*n, *r, *t)?
            };
            let h = p.to_hypergraph();
            write_hypergraph(&h, out.as_deref())?;
            print_json(&json!({ "n": n, "r": r, "t": t, "exact": exact, "value": p.len(), "edges": p.edges }));
        }
        Search::Goodset { p, k, exact, out } => {
            let g = if *exact { max_good_set(*p, *k, budget)? } else { behrend_good_set(*p, *k)? };
            let mut v = g.to_json();
            v["value"] = json!(g.len());
            write_json_file(&g.to_json(), out.as_deref())?;
            print_json(&v);
        }
        Search::Apfree { n, k, out } => {
            let a = max_ap_free(*n, *k, budget)?;
            let v = serde_json::to_value(&a)?;
            write_json_file(&v, out.as_deref())?;
            let mut shown = v;
            shown["value"] = json!(a.a.len());
            print_json(&shown);
        }
        Search::Turan { n, k, forbid, max_candidates, out } => {
            let fam = parse_family(forbid, Some(*k))?;
            let res = ex_exact_capped(*n, *k, &fam, budget, *max_candidates)?;
            write_hypergraph(&res.witness, out.as_deref())?;
            let mut v = res.to_json();
            v["value"] = json!(res.max_edges);
            print_json(&v);
            if res.budget_hit {
                eprintln!("budget exhausted after {} nodes; value is a lower bound", res.nodes);
                return Ok(EXIT_BUDGET);
            }
        }
    }
    Ok(EXIT_OK)
}

fn table(cmd: &Table, budget: Budget) -> Result<i32> {
    match cmd {
        Table::ModularGrowth { k, primes, goodset, out } => {
            let source = match goodset {
                SetSource::Exact => GoodSetSource::Exact,
                SetSource::Behrend => GoodSetSource::Behrend,
            };
            let rows = growth_table(&GrowthSpec::Modular { k: *k, primes: primes.clone(), source }, budget)?;
            write_rows(&rows, out.as_deref())?;
        }
        Table::SplitGrowth { k, r, ns, out } => {
            let rows = growth_table(&GrowthSpec::Split { k: *k, r: *r, ns: ns.clone() }, budget)?;
            write_rows(&rows, out.as_deref())?;
        }
        Table::Density { k, forbid, nmin, nmax, out } => {
            let fam = parse_family(forbid, Some(*k))?;
            let ns: Vec<usize> = (nmin.unwrap_or(*k)..=*nmax).collect();
            let rep = density_trend(*k, &fam, &ns, budget)?;
            write_rows(&rep.rows(), out.as_deref())?;
            if !rep.nonincreasing {
                eprintln!("density increased: {}", serde_json::to_string(&rep)?);
                return Ok(EXIT_FAILS);
            }
            if rep.points.iter().any(|p| p.budget_hit) {
                eprintln!("budget exhausted; some values are lower bounds");
                return Ok(EXIT_BUDGET);
            }
        }
        Table::Chain { n, k, out } => {
            let rep = monotone_chain_check(*n, *k, budget)?;
            let total = binomial(*n as u64, *k as u64);
            let rows: Vec<GrowthRow> = rep
                .values
                .iter()
                .map(|&(r, v, hit)| GrowthRow {
                    n: *n,
                    k: *k,
                    param: if hit { format!("r={r} lower-bound") } else { format!("r={r}") },
                    edges: v as u128,
                    reference: total,
                })
                .collect();
            write_rows(&rows, out.as_deref())?;
            if rep.lower_bound_only {
                eprintln!("chain is lower-bound only");
                return Ok(EXIT_BUDGET);
            }
            if !rep.holds {
                eprintln!("chain violated: {}", rep.to_json());
                return Ok(EXIT_FAILS);
            }
        }
    }
    Ok(EXIT_OK)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Violation(_) => EXIT_FAILS,
        Error::Param(_) | Error::Structure(_) => EXIT_PARAM,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Parse { .. } | Error::Io(_) | Error::Json(_) => EXIT_IO,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let budget = Budget::nodes(cli.budget);
    match &cli.command {
        Command::Construct(c) => construct(c, budget),
        Command::Check(c) => check(c),
        Command::Search(c) => search(c, budget),
        Command::Table(c) => table(c, budget),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARAM,
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return EXIT_PARAM;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => code,
        Err(err) => {
            if let Error::Violation(c) = &err {
                print_json(&c.to_json());
            }
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}
