use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use extremal_links::complex::{
    find_graph_homeomorph, find_subcomplex, join, join_power, link_intersection, vertex_link,
    SearchLimits, SimplicialComplex,
};
use extremal_links::extremal::{
    constant_chain, default_base_constant, face_count_exponent, inductive_step_probe,
    EmbeddingVariant, ProbeConfig,
};
use extremal_links::linking::{
    is_linkless, linking_number_cone, linking_number_crossings, parse_rational, LinklessStatus,
    PolygonalCurve, SpatialEmbedding,
};
use extremal_links::set_system::fuzz::{fuzz, FuzzConfig, FuzzMode, LemmaSelection};
use extremal_links::set_system::{
    atom_decomposition, chain_identities, verify_intersection_bound, verify_power_mean_bound,
    SetSystem,
};
use extremal_links::{Error, Result};

/// Exact exponents, set-system inequality checks, simplicial complexes and
/// linking numbers.
#[derive(Parser)]
#[command(name = "xlinks", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Face-count exponent `d + 1 - r^{1-d}` and the constant chain
    Bound(BoundArgs),
    /// Fuzz the intersection bound and its double-counting chain
    #[command(name = "fuzz-parsa")]
    FuzzIntersection(FuzzArgs),
    /// Fuzz the power-mean bound and the atom identities
    #[command(name = "fuzz-misk")]
    FuzzPowerMean(FuzzArgs),
    /// Report every identity and bound for one set system (JSON on stdin)
    Identities(IdentitiesArgs),
    /// Build and inspect simplicial complexes (JSON on stdin/stdout)
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Trace the inductive step on a complex read from stdin
    ProbeInductive(ProbeArgs),
    /// Linking number of two curve files
    Lk(LkArgs),
    /// Check every pair of disjoint cycles of a spatial embedding
    Linkless(LinklessArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    d: u32,
    /// obstruction size; defaults to the variant's, else 3
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, value_enum)]
    variant: Option<EmbeddingVariant>,
    /// base constant as "p/q"; defaults to 4r²
    #[arg(long)]
    c1: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct FuzzArgs {
    /// JSON config file ("-" for stdin); flags below are ignored when given
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "random")]
    mode: ModeArg,
    #[arg(long, default_value_t = 8)]
    m_max: usize,
    #[arg(long, default_value_t = 32)]
    a_max: usize,
    /// comma-separated arities
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    r: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// set-system JSON file; stdin when absent
    input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    r: Vec<usize>,
}

#[derive(Args)]
struct SearchCaps {
    /// largest pattern accepted by the searches
    #[arg(long, env = "XLINKS_CAP_PATTERN", default_value_t = 12)]
    cap_pattern: usize,
    /// backtracking steps before a search gives up
    #[arg(long, env = "XLINKS_CAP_STEPS", default_value_t = 100_000_000)]
    cap_steps: u64,
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Join of two complexes; a missing side is read from stdin
    Join {
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// The join power `[r]^{*p}`
    Power {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: usize,
    },
    /// Link of one vertex
    Link {
        #[arg(long)]
        vertex: String,
        input: Option<PathBuf>,
    },
    /// Intersection of the links of several distinct vertices
    LinkIntersect {
        #[arg(long = "vertex", required = true)]
        vertices: Vec<String>,
        input: Option<PathBuf>,
    },
    /// f-vector as a JSON array
    Fvector { input: Option<PathBuf> },
    /// Search the host (stdin) for a subcomplex isomorphic to the pattern
    FindPattern {
        #[arg(long)]
        pattern: PathBuf,
        host: Option<PathBuf>,
        #[command(flatten)]
        caps: SearchCaps,
    },
    /// Search the host graph (stdin) for a subdivision of the pattern graph
    FindHomeomorph {
        #[arg(long)]
        pattern: PathBuf,
        host: Option<PathBuf>,
        #[command(flatten)]
        caps: SearchCaps,
    },
}

#[derive(Args)]
struct ProbeArgs {
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// enumerate all r-tuples when there are at most this many
    #[arg(long, env = "XLINKS_CAP_TUPLES", default_value_t = 1_000_000)]
    cap_tuples: u64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Cone,
    Crossings,
}

#[derive(Args)]
struct LkArgs {
    beta: PathBuf,
    gamma: PathBuf,
    #[arg(long, value_enum, default_value = "cone")]
    method: Method,
    /// run both algorithms and print each
    #[arg(long)]
    both: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LinklessArgs {
    input: Option<PathBuf>,
    /// most disjoint cycle pairs examined
    #[arg(long, env = "XLINKS_CAP_PAIRS", default_value_t = 1_000_000)]
    cap_pairs: usize,
}

enum Outcome {
    Ok,
    Flagged,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Flagged) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: Option<&PathBuf>) -> Result<T> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn flag(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::Flagged
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Bound(args) => bound(args),
        Command::FuzzIntersection(args) => run_fuzz(args, LemmaSelection::IntersectionBound),
        Command::FuzzPowerMean(args) => run_fuzz(args, LemmaSelection::PowerMean),
        Command::Identities(args) => identities(args),
        Command::Complex(cmd) => complex(cmd),
        Command::ProbeInductive(args) => probe(args),
        Command::Lk(args) => lk(args),
        Command::Linkless(args) => linkless(args),
    }
}

fn bound(args: BoundArgs) -> Result<Outcome> {
    let r = match (args.r, args.variant) {
        (Some(r), Some(v)) if r != v.obstruction_size() => {
            return Err(Error::InvalidConfig(format!(
                "--r {r} conflicts with the variant's r = {}",
                v.obstruction_size()
            )))
        }
        (Some(r), _) => r,
        (None, Some(v)) => v.obstruction_size(),
        (None, None) => 3,
    };
    let exponent = face_count_exponent(args.d, r)?;
    let head = BigRational::from_integer((args.d as i64 + 1).into());
    let tail = &head - &exponent;
    let c1 = match &args.c1 {
        Some(text) => parse_rational(text)?,
        None => default_base_constant(r),
    };
    let chain = constant_chain(c1, r, args.d)?;
    if args.json {
        let chain: Vec<_> = chain
            .iter()
            .map(|c| json!({"expression": c.render(), "approx": c.to_f64()}))
            .collect();
        print_json(&json!({
            "d": args.d,
            "r": r,
            "exponent": exponent.to_string(),
            "constants": chain,
        }))?;
    } else {
        println!("{head} − {tail} = {exponent}");
        for (i, c) in chain.iter().enumerate() {
            println!("C_{} = {} ≈ {:.6}", i + 1, c.render(), c.to_f64());
        }
    }
    Ok(Outcome::Ok)
}

fn run_fuzz(args: FuzzArgs, lemmas: LemmaSelection) -> Result<Outcome> {
    let config = match &args.config {
        Some(path) => {
            let mut c: FuzzConfig = read_json(Some(path))?;
            c.lemmas = lemmas;
            c
        }
        None => FuzzConfig {
            mode: match args.mode {
                ModeArg::Exhaustive => FuzzMode::Exhaustive,
                ModeArg::Random => FuzzMode::Random,
            },
            m_max: args.m_max,
            a_max: args.a_max,
            r_set: args.r,
            trials: args.trials,
            seed: args.seed,
            lemmas,
        },
    };
    let summary = fuzz(&config)?;
    print_json(&summary)?;
    Ok(flag(summary.violation_count == 0))
}

fn identities(args: IdentitiesArgs) -> Result<Outcome> {
    let sys: SetSystem = read_json(args.input.as_ref())?;
    let mut ok = true;
    let mut per_r = Vec::new();
    for &r in &args.r {
        if r == 0 {
            return Err(Error::InvalidArity { got: 0, min: 1 });
        }
        let ib = verify_intersection_bound(&sys, r);
        let chain = chain_identities(&sys, r);
        let pm = verify_power_mean_bound(&sys, r);
        ok &= ib.holds && chain.holds() && pm.holds;
        per_r.push(json!({
            "r": r,
            "intersection_bound": ib,
            "chain": chain,
            "power_mean": pm,
        }));
    }
    print_json(&json!({
        "atoms": atom_decomposition(&sys),
        "reports": per_r,
    }))?;
    Ok(flag(ok))
}

fn limits(caps: &SearchCaps) -> SearchLimits {
    SearchLimits {
        pattern_vertex_cap: caps.cap_pattern,
        step_budget: caps.cap_steps,
    }
}

fn complex(cmd: ComplexCommand) -> Result<Outcome> {
    match cmd {
        ComplexCommand::Join { left, right } => {
            if left.is_none() && right.is_none() {
                return Err(Error::InvalidConfig("join needs --left or --right".into()));
            }
            let l: SimplicialComplex = read_json(left.as_ref())?;
            let r: SimplicialComplex = read_json(right.as_ref())?;
            print_json(&join(&l, &r))?;
        }
        ComplexCommand::Power { r, p } => print_json(&join_power(r, p)?)?,
        ComplexCommand::Link { vertex, input } => {
            let k: SimplicialComplex = read_json(input.as_ref())?;
            print_json(&vertex_link(&k, &vertex)?)?;
        }
        ComplexCommand::LinkIntersect { vertices, input } => {
            let k: SimplicialComplex = read_json(input.as_ref())?;
            print_json(&link_intersection(&k, &vertices)?)?;
        }
        ComplexCommand::Fvector { input } => {
            let k: SimplicialComplex = read_json(input.as_ref())?;
            print_json(&k.f_vector())?;
        }
        ComplexCommand::FindPattern {
            pattern,
            host,
            caps,
        } => {
            let p: SimplicialComplex = read_json(Some(&pattern))?;
            let h: SimplicialComplex = read_json(host.as_ref())?;
            let w = find_subcomplex(&h, &p, limits(&caps))?;
            print_json(&json!({"found": w.is_some(), "witness": w}))?;
        }
        ComplexCommand::FindHomeomorph {
            pattern,
            host,
            caps,
        } => {
            let p: SimplicialComplex = read_json(Some(&pattern))?;
            let h: SimplicialComplex = read_json(host.as_ref())?;
            let w = find_graph_homeomorph(&h, &p, limits(&caps))?;
            print_json(&json!({"found": w.is_some(), "witness": w}))?;
        }
    }
    Ok(Outcome::Ok)
}

fn probe(args: ProbeArgs) -> Result<Outcome> {
    let k: SimplicialComplex = read_json(args.input.as_ref())?;
    let report = inductive_step_probe(
        &k,
        args.r,
        ProbeConfig {
            tuple_budget: args.cap_tuples,
            samples: args.samples,
            seed: args.seed,
        },
    )?;
    print_json(&report)?;
    Ok(flag(report.holds && report.incidence_holds))
}

fn lk(args: LkArgs) -> Result<Outcome> {
    let beta: PolygonalCurve = read_json(Some(&args.beta))?;
    let gamma: PolygonalCurve = read_json(Some(&args.gamma))?;
    if args.both {
        let cone = linking_number_cone(&beta, &gamma)?;
        let crossings = linking_number_crossings(&beta, &gamma)?;
        if args.json {
            print_json(&json!({"cone": cone, "crossings": crossings, "agree": cone == crossings}))?;
        } else {
            println!("cone: {cone}");
            println!("crossings: {crossings}");
        }
        return Ok(flag(cone == crossings));
    }
    let value = match args.method {
        Method::Cone => linking_number_cone(&beta, &gamma)?,
        Method::Crossings => linking_number_crossings(&beta, &gamma)?,
    };
    if args.json {
        print_json(&json!({"lk": value}))?;
    } else {
        println!("{value}");
    }
    Ok(Outcome::Ok)
}

fn linkless(args: LinklessArgs) -> Result<Outcome> {
    let emb: SpatialEmbedding = read_json(args.input.as_ref())?;
    if args.cap_pairs == 0 {
        return Err(Error::InvalidConfig("--cap-pairs must be positive".into()));
    }
    let report = is_linkless(&emb, args.cap_pairs)?;
    print_json(&report)?;
    Ok(flag(report.status == LinklessStatus::AllZero))
}
