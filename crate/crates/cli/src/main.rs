mod families;

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use spherekit::checks::sphere_euler;
use spherekit::facet_file::{parse_facets, write_facets};
use spherekit::homology::sphere_betti;
use spherekit::lemmas::LemmaId;
use spherekit::transversal::DEFAULT_BUDGET;
use spherekit::{
    exact_transversal, explicit_cs_transversal, facet_hypergraph, gf2_betti, greedy_transversal,
    is_cs, is_cs_k_neighborly, is_k_neighborly, matching_lower_bound, pseudomanifold_report,
    transversal_ratio, verify_lemma, CsFamily, Face, PureComplex, TransversalCertificate,
};

use families::{build, parse_antichain, parse_edge, Family, Params};

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(
    name = "spherekit",
    version,
    about = "Build and check neighborly and cs spheres"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a complex and write its facets.
    Build(BuildArgs),
    /// Run structural checks on a facet file.
    Verify(VerifyArgs),
    /// Compute a transversal certificate for a facet file.
    Transversal(TransversalArgs),
    /// Check a facet-membership lemma on explicit instances.
    Lemmas(LemmaArgs),
    /// Tabulate results over a range of parameters.
    Report {
        #[command(subcommand)]
        report: ReportCommand,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    i: Option<i64>,
    /// Edge of the host sphere for `cs-lambda`, e.g. "1 2".
    #[arg(long, allow_hyphen_values = true)]
    edge: Option<String>,
    /// Antichain members as start lists, e.g. "1 7;2 6".
    #[arg(long)]
    antichain: Option<String>,
}

impl FamilyArgs {
    fn params(&self, n: Option<usize>) -> Result<Params> {
        Ok(Params {
            d: self.d,
            n,
            k: self.k,
            i: self.i,
            edge: self.edge.as_deref().map(parse_edge).transpose()?,
            antichain: self.antichain.as_deref().map(parse_antichain).transpose()?,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Facets,
    Json,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "facets")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated: pseudomanifold, euler, betti, neighborly=K, cs, cs-neighborly=K.
    #[arg(long, default_value = "pseudomanifold,euler,betti")]
    checks: String,
}

#[derive(Args)]
struct TransversalArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,
    #[arg(long)]
    greedy: bool,
    /// Time budget of the exact search in seconds.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long)]
    lemma: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Subcommand)]
enum ReportCommand {
    /// Transversal ratios of one family for a range of n.
    Mu(MuArgs),
}

#[derive(Args)]
struct MuArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n_from: usize,
    #[arg(long)]
    n_to: usize,
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    csv: PathBuf,
}

fn budget(seconds: Option<f64>) -> Result<Duration> {
    match seconds {
        None => Ok(DEFAULT_BUDGET),
        Some(s) => Duration::try_from_secs_f64(s)
            .map_err(|e| UsageError(format!("bad --budget {s}: {e}")).into()),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonComplex {
    family: Option<String>,
    params: Option<serde_json::Value>,
    dim: isize,
    f0: usize,
    facet_count: usize,
    #[serde(default)]
    checks: Vec<String>,
    facets: Vec<Vec<i32>>,
}

fn load(path: &Path) -> Result<PureComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let json: JsonComplex = serde_json::from_str(&text).context("parsing JSON complex")?;
        let facets = json
            .facets
            .iter()
            .map(|f| Face::from_labels(f))
            .collect::<spherekit::Result<Vec<_>>>()?;
        return Ok(PureComplex::new(facets)?);
    }
    parse_facets(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn cmd_build(args: &BuildArgs) -> Result<bool> {
    let params = args.family.params(args.n)?;
    let family = args.family.family;
    let built = build(family, &params, &CsFamily::new())?;
    let delta = &built.complex;
    let mut checks = Vec::new();
    if built.is_sphere && pseudomanifold_report(delta).passed() {
        checks.push("pseudomanifold".to_string());
    }
    let text = match args.format {
        Format::Facets => {
            let header = vec![
                format!("family: {family}"),
                format!("params: {}", serde_json::to_string(&params)?),
                format!(
                    "dim: {} f0: {} facets: {}",
                    built.d,
                    delta.vertex_count(),
                    delta.facet_count()
                ),
            ];
            write_facets(delta, &header)
        }
        Format::Json => {
            let json = JsonComplex {
                family: Some(family.to_string()),
                params: Some(serde_json::to_value(&params)?),
                dim: delta.dim(),
                f0: delta.vertex_count(),
                facet_count: delta.facet_count(),
                checks,
                facets: delta.facets().iter().map(Face::labels).collect(),
            };
            serde_json::to_string_pretty(&json)? + "\n"
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(true)
}

enum Check {
    Pseudomanifold,
    Euler,
    Betti,
    Neighborly(usize),
    Cs,
    CsNeighborly(usize),
}

fn parse_checks(list: &str) -> Result<Vec<(String, Check)>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (name, arg) = match s.split_once('=') {
                Some((n, a)) => (n, Some(a)),
                None => (s, None),
            };
            let level = || -> Result<usize> {
                arg.ok_or_else(|| UsageError(format!("check {name} needs =K")))?
                    .parse()
                    .map_err(|e| UsageError(format!("bad check {s:?}: {e}")).into())
            };
            let check = match name {
                "pseudomanifold" => Check::Pseudomanifold,
                "euler" => Check::Euler,
                "betti" => Check::Betti,
                "cs" => Check::Cs,
                "neighborly" => Check::Neighborly(level()?),
                "cs-neighborly" => Check::CsNeighborly(level()?),
                _ => return Err(UsageError(format!("unknown check {name:?}")).into()),
            };
            Ok((s.to_string(), check))
        })
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let checks = parse_checks(&args.checks)?;
    let delta = load(&args.input)?;
    let dim = delta.dim();
    let mut all = true;
    let width = checks.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
    for (label, check) in &checks {
        let (ok, detail) = match check {
            Check::Pseudomanifold => {
                let r = pseudomanifold_report(&delta);
                (
                    r.passed(),
                    format!(
                        "bad ridges {}, components {}",
                        r.bad_ridges.len(),
                        r.components
                    ),
                )
            }
            Check::Euler => {
                let chi = delta.f_vector()?.euler_characteristic();
                let want = sphere_euler(dim);
                (chi == want, format!("chi {chi}, sphere {want}"))
            }
            Check::Betti => {
                let b = gf2_betti(&delta)?;
                let want = sphere_betti(dim.max(0) as usize);
                (b == want, format!("{b:?}, sphere {want:?}"))
            }
            Check::Neighborly(k) => (is_k_neighborly(&delta, *k), String::new()),
            Check::Cs => (is_cs(&delta), String::new()),
            Check::CsNeighborly(k) => (is_cs_k_neighborly(&delta, *k)?, String::new()),
        };
        all &= ok;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{label:<width$}  {verdict}  {detail}");
    }
    Ok(all)
}

#[derive(Serialize)]
struct TransversalOutput<'a> {
    method: &'a str,
    f0: usize,
    facet_count: usize,
    tau_lower: usize,
    tau_upper: usize,
    optimal: bool,
    mu_lower: String,
    mu_upper: String,
    nodes_explored: u64,
    timed_out: bool,
    hitting_set: Vec<i32>,
}

fn cmd_transversal(args: &TransversalArgs) -> Result<bool> {
    let delta = load(&args.input)?;
    let h = facet_hypergraph(&delta)?;
    let (method, cert) = if args.greedy {
        let t = greedy_transversal(&h);
        let lower = matching_lower_bound(&h);
        let cert = TransversalCertificate {
            optimal: lower == t.len(),
            lower_bound: lower,
            upper_bound: t.len(),
            hitting_set: t,
            nodes_explored: 0,
            timed_out: false,
        };
        ("greedy", cert)
    } else {
        ("exact", exact_transversal(&h, budget(args.budget)?))
    };
    let (lo, hi) = transversal_ratio(&delta, &cert);
    let out = TransversalOutput {
        method,
        f0: delta.vertex_count(),
        facet_count: delta.facet_count(),
        tau_lower: cert.lower_bound,
        tau_upper: cert.upper_bound,
        optimal: cert.optimal,
        mu_lower: lo.to_string(),
        mu_upper: hi.to_string(),
        nodes_explored: cert.nodes_explored,
        timed_out: cert.timed_out,
        hitting_set: cert.hitting_set.iter().map(|v| v.get()).collect(),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("method       {}", out.method);
        println!("f0           {}", out.f0);
        println!("facets       {}", out.facet_count);
        println!("tau          [{}, {}]", out.tau_lower, out.tau_upper);
        println!("optimal      {}", out.optimal);
        println!("mu           [{}, {}]", out.mu_lower, out.mu_upper);
        println!("nodes        {}", out.nodes_explored);
        println!("timed_out    {}", out.timed_out);
        let t: Vec<String> = out.hitting_set.iter().map(i32::to_string).collect();
        println!("hitting_set  {}", t.join(" "));
    }
    Ok(true)
}

fn cmd_lemmas(args: &LemmaArgs) -> Result<bool> {
    let lemma: LemmaId = args
        .lemma
        .parse()
        .map_err(|e: spherekit::Error| UsageError(e.to_string()))?;
    let r = verify_lemma(lemma, args.k, args.n, args.m)?;
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    print!("{lemma} k={} n={}", r.k, r.n);
    if let Some(m) = r.m {
        print!(" m={m}");
    }
    println!(
        ": {verdict} ({} candidates, {} failures)",
        r.candidates_checked,
        r.failures.len()
    );
    if let (Some(bound), Some(lo), Some(hi)) = (r.bound, r.tau_lower, r.tau_upper) {
        if lo == hi {
            println!("tau = {lo} >= {bound}");
        } else {
            println!("tau in [{lo}, {hi}], bound {bound}");
        }
    }
    for f in r.failures.iter().take(20) {
        println!("  failed: {f}");
    }
    Ok(r.passed)
}

#[derive(Serialize)]
struct ReportRow {
    family: String,
    d: usize,
    n: usize,
    f0: usize,
    facet_count: usize,
    tau_lower: usize,
    tau_upper: usize,
    optimal: bool,
    mu_lower: String,
    mu_upper: String,
    wall_time_ms: u128,
}

fn decimal(numer: u64, denom: u64) -> String {
    format!("{:.6}", numer as f64 / denom as f64)
}

fn cmd_report_mu(args: &MuArgs) -> Result<bool> {
    if args.n_from > args.n_to {
        return Err(UsageError(format!(
            "--n-from {} exceeds --n-to {}",
            args.n_from, args.n_to
        ))
        .into());
    }
    let family = args.family.family;
    let budget = budget(args.budget)?;
    let cache = CsFamily::new();
    let mut writer = csv::Writer::from_path(&args.csv)
        .with_context(|| format!("writing {}", args.csv.display()))?;
    let mut all_optimal = true;
    for n in args.n_from..=args.n_to {
        let start = Instant::now();
        let built = build(family, &args.family.params(Some(n))?, &cache)?;
        let delta = &built.complex;
        let cert = exact_transversal(&facet_hypergraph(delta)?, budget);
        let elapsed = start.elapsed().as_millis();
        let (lo, hi) = transversal_ratio(delta, &cert);
        all_optimal &= cert.optimal;
        let explicit = match (family, built.d) {
            (Family::CsDelta, d @ (3 | 4)) if args.family.i.is_none() => {
                explicit_cs_transversal(d, n)
                    .ok()
                    .map(|t: BTreeSet<_>| t.len())
            }
            _ => None,
        };
        print!(
            "{family} d={} n={n}: tau [{}, {}] mu [{lo}, {hi}]{}",
            built.d,
            cert.lower_bound,
            cert.upper_bound,
            if cert.optimal {
                ""
            } else {
                " (not proven optimal)"
            }
        );
        match explicit {
            Some(t) => println!(", explicit T {t}/{}", delta.vertex_count()),
            None => println!(),
        }
        writer.serialize(ReportRow {
            family: family.to_string(),
            d: built.d,
            n,
            f0: delta.vertex_count(),
            facet_count: delta.facet_count(),
            tau_lower: cert.lower_bound,
            tau_upper: cert.upper_bound,
            optimal: cert.optimal,
            mu_lower: decimal(*lo.numer(), *lo.denom()),
            mu_upper: decimal(*hi.numer(), *hi.denom()),
            wall_time_ms: elapsed,
        })?;
    }
    writer.flush()?;
    if !all_optimal {
        eprintln!("warning: some rows carry bounds only");
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Transversal(a) => cmd_transversal(a),
        Command::Lemmas(a) => cmd_lemmas(a),
        Command::Report {
            report: ReportCommand::Mu(a),
        } => cmd_report_mu(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
