use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use chomog::census::{census_with_ceiling, recognize, DEFAULT_CEILING, EXTENDED_CEILING};
use chomog::digraph::Digraph;
use chomog::families::{cp, directed_cycle, h, t2_ball, y, CatalogEntry};
use chomog::homogeneity::{
    is_c_homogeneous, is_c_homogeneous_bipartite, is_homogeneous, two_coloring, HomogeneityVerdict,
};
use chomog::io::{read_digraph, to_dot, to_json};
use chomog::quotients::{build_quotient, covering_check, search_quotients, verify_quotient, QuotientSpec};
use chomog::reachability::{delta_shape, reachability_classes};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "chomog", version, about = "Connected-homogeneous digraph toolkit")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a family member in the interchange format.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Lexicographic product with the edgeless digraph on this many vertices.
        #[arg(long, global = true, default_value_t = 1)]
        compose_empty: usize,
        /// Emit DOT instead of JSON.
        #[arg(long, global = true)]
        dot: bool,
    },
    /// Test (connected-)homogeneity; exit 1 with a witness when it fails.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Side of each vertex for c-bipartite, e.g. [0,1,0,1]; defaults to
        /// the 2-colouring that puts the smallest vertex of each component on side 0.
        #[arg(long, value_parser = parse_list)]
        sides: Option<List>,
    },
    /// Reachability classes and the shape of their digraphs.
    Reach {
        path: PathBuf,
        /// Write one DOT file per class into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Build and verify the quotient of T(2) given by two permutations.
    Quotient {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_list)]
        a: List,
        #[arg(long, value_parser = parse_list)]
        b: List,
        /// Also run the covering check up to this radius.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Search quotients on at most `max_k` points.
    QuotientSearch {
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive census of connected C-homogeneous digraphs.
    Census {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Permit max-n = 7 (several minutes).
        #[arg(long)]
        extended: bool,
    },
    /// Print the catalog family of a connected digraph.
    Classify { path: PathBuf },
}

#[derive(Subcommand)]
enum Family {
    /// Directed cycle C_m.
    Cycle { m: usize },
    /// Complete bipartite digraph minus a perfect matching.
    Cp { k: usize },
    /// Y_k.
    Y { k: usize },
    /// The 8-vertex homogeneous digraph H.
    H,
    /// Ball of radius r around the identity in T(2).
    T2Ball { r: usize },
    /// Edgeless digraph.
    Empty { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Homogeneous,
    CHomogeneous,
    CBipartite,
}

/// A zero-based array such as a permutation's images.
#[derive(Clone)]
struct List(Vec<usize>);

/// Accepts `[1,2,0]` or `1,2,0`.
fn parse_list(s: &str) -> Result<List, String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(List(Vec::new()));
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(List)
}

/// Malformed input; reported with exit code 2.
struct Malformed(String);

impl<E: Display> From<E> for Malformed {
    fn from(e: E) -> Self {
        Malformed(e.to_string())
    }
}

type Outcome = Result<bool, Malformed>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gen { family, compose_empty, dot } => gen(family, compose_empty, dot),
        Command::Check { path, mode, sides } => check(&path, mode, sides.map(|l| l.0)),
        Command::Reach { path, dot_dir } => reach(&path, dot_dir.as_deref()),
        Command::Quotient { k, a, b, radius } => quotient(k, a.0, b.0, radius),
        Command::QuotientSearch { max_k, out } => quotient_search(max_k, &out),
        Command::Census { max_n, out, extended } => census(max_n, &out, extended),
        Command::Classify { path } => classify(&path),
    }
}

fn emit(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
}

fn gen(family: Family, compose_empty: usize, dot: bool) -> Outcome {
    if compose_empty == 0 {
        return Err(Malformed("--compose-empty must be at least 1".into()));
    }
    let d = match family {
        Family::Cycle { m } => directed_cycle(m)?,
        Family::Cp { k } => cp(k)?,
        Family::Y { k } => y(k)?,
        Family::H => h(),
        Family::T2Ball { r } => t2_ball(r)?.digraph,
        Family::Empty { n } => Digraph::empty(n),
    };
    let d = d.lex_product(&Digraph::empty(compose_empty));
    if dot {
        emit(&to_dot(&d));
    } else {
        emit(&format!("{}\n", to_json(&d)));
    }
    Ok(true)
}

fn print_verdict(v: &HomogeneityVerdict) {
    println!("verdict: {}", v.describe());
    println!("levels checked: {}", v.levels_checked);
    if let Some(w) = &v.witness {
        let pairs: Vec<String> = w.pairs.iter().map(|(x, y)| format!("{x}->{y}")).collect();
        println!("witness: {}", pairs.join(" "));
        println!("witness pattern: {:?}", w.pattern);
    }
    println!("{}", serde_json::to_string(v).expect("verdicts serialize"));
}

fn check(path: &Path, mode: Mode, sides: Option<Vec<usize>>) -> Outcome {
    let d = read_digraph(path)?;
    let verdict = match mode {
        Mode::Homogeneous => is_homogeneous(&d),
        Mode::CHomogeneous => is_c_homogeneous(&d),
        Mode::CBipartite => {
            let sides: Vec<u32> = match sides {
                Some(s) => s.into_iter().map(|x| u32::try_from(x).unwrap_or(u32::MAX)).collect(),
                None => two_coloring(&d).ok_or_else(|| Malformed("underlying graph is not bipartite".into()))?,
            };
            is_c_homogeneous_bipartite(&d, &sides)?
        }
    };
    print_verdict(&verdict);
    Ok(verdict.holds)
}

fn reach(path: &Path, dot_dir: Option<&Path>) -> Outcome {
    let d = read_digraph(path)?;
    let part = reachability_classes(&d)?;
    let report = delta_shape(&d)?;
    println!("classes: {}", part.classes.len());
    println!("sizes: {:?}", part.sizes());
    for (i, c) in report.classes.iter().enumerate() {
        println!("class {i}: {} edges, shape {}, bipartite {}", c.edges, c.shape, c.bipartite);
    }
    println!("shape: {}", report.shape);
    println!("uniform: {}", report.uniform);
    println!("universal: {}", report.universal);
    println!("dichotomy: {}", report.dichotomy_holds());
    if let Some(dir) = dot_dir {
        fs::create_dir_all(dir)?;
        for i in 0..part.classes.len() {
            let (delta, _) = part.class_digraph(i);
            fs::write(dir.join(format!("class_{i}.dot")), to_dot(&delta))?;
        }
    }
    println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    Ok(true)
}

fn quotient(k: usize, a: Vec<usize>, b: Vec<usize>, radius: Option<usize>) -> Outcome {
    if a.len() != k || b.len() != k {
        return Err(Malformed(format!("--a and --b must have {k} entries")));
    }
    let spec = QuotientSpec::new(a, b);
    let report = verify_quotient(&spec)?;
    let d = build_quotient(&spec)?;
    println!("{}", to_json(&d));
    let mut covering = Vec::new();
    for r in 1..=radius.unwrap_or(0) {
        covering.push(json!({"radius": r, "passes": covering_check(&spec, r)?}));
    }
    let summary = json!({"report": report, "passes": report.passes(), "covering": covering});
    println!("{}", serde_json::to_string_pretty(&summary).expect("reports serialize"));
    Ok(report.passes() && covering.iter().all(|c| c["passes"] == true))
}

fn quotient_search(max_k: usize, out: &Path) -> Outcome {
    let start = Instant::now();
    let results = search_quotients(max_k);
    for r in &results {
        println!(
            "k={} shape={} swap-invariant={} spec={}",
            r.spec.k,
            r.report.delta_shape,
            r.report.swap_witness.is_some(),
            r.spec
        );
    }
    println!("{} quotients with at most {max_k} points", results.len());
    fs::write(out, serde_json::to_string_pretty(&results).expect("results serialize") + "\n")?;
    eprintln!("search took {:.2?}", start.elapsed());
    Ok(true)
}

fn census(max_n: usize, out: &Path, extended: bool) -> Outcome {
    let ceiling = if extended { EXTENDED_CEILING } else { DEFAULT_CEILING };
    if extended {
        eprintln!("warning: a 7-vertex census canonicalises ~15M digraphs and takes minutes");
    }
    let report = census_with_ceiling(max_n, ceiling)?;
    for f in &report.found {
        println!("{} {}", f.entry, to_json(&f.digraph));
    }
    for d in &report.unexplained {
        println!("unexplained {}", to_json(d));
    }
    for e in &report.missing {
        println!("missing {e}");
    }
    println!("counts: {}", serde_json::to_string(&report.counts).expect("counts serialize"));
    fs::write(out, serde_json::to_string_pretty(&report).expect("report serializes") + "\n")?;
    eprintln!("census took {:.2?}", report.stats.elapsed);
    Ok(report.unexplained.is_empty())
}

fn classify(path: &Path) -> Outcome {
    let d = read_digraph(path)?;
    let entry = recognize(&d)?;
    println!("{entry}");
    println!("{}", serde_json::to_string(&entry).expect("entries serialize"));
    Ok(entry != CatalogEntry::Unknown)
}
