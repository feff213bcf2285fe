use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use binmat::canon;
use binmat::catalog;
use binmat::generator::{self, Classification, EnumerateOptions, Excluded, SplitterOptions, Step};
use binmat::persist::{read_db, write_db};
use binmat::verify::{self, Suite};
use binmat::{BinaryMatroid, CanonicalKey, Error, MinorOracle};
use clap::{Parser, Subcommand};

/// Ranks above this need `--long-run`.
const DESK_RANK: usize = 6;

#[derive(Parser)]
#[command(name = "binmat", version, about = "Binary matroid catalog, enumeration and minor testing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries or show one.
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogAction>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
    },
    /// Enumerate simple binary matroids with excluded minors.
    Enumerate {
        #[arg(long)]
        max_rank: usize,
        #[arg(long, num_args = 1..)]
        exclude: Vec<String>,
        /// Database file, rewritten after every level.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Continue from a checkpoint.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Allow ranks above 6; these take hours.
        #[arg(long)]
        long_run: bool,
    },
    /// Search 3-connected extensions and coextensions of a catalog matroid.
    Extend {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// Keep nodes that contain a listed internally 4-connected matroid one
        /// element larger than the seed
        #[arg(long)]
        keep_larger_listed: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Decide whether a host has a minor isomorphic to a target.
    MinorTest {
        /// Catalog name or record file.
        #[arg(long)]
        host: String,
        /// Catalog name or record file.
        #[arg(long)]
        target: String,
    },
    /// Print the canonical key of every record in a file.
    Canon { file: PathBuf },
    /// Classify the members of a database.
    Classify {
        db: PathBuf,
        /// Also list minor-order edges between 3-connected members.
        #[arg(long)]
        edges: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

enum Failure {
    Assertion,
    /// The reader went away; nothing to report.
    Closed,
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Catalog { action } => catalog_cmd(&mut out, action.unwrap_or(CatalogAction::List)),
        Command::Verify { suite } => verify_cmd(&mut out, &suite),
        Command::Enumerate { max_rank, exclude, out: path, resume, jobs, long_run } => {
            enumerate_cmd(&mut out, max_rank, &exclude, path, resume, jobs, long_run)
        }
        Command::Extend { seed, steps, keep_larger_listed, jobs } => {
            extend_cmd(&mut out, &seed, steps, !keep_larger_listed, jobs)
        }
        Command::MinorTest { host, target } => minor_cmd(&mut out, &host, &target),
        Command::Canon { file } => canon_cmd(&mut out, &file),
        Command::Classify { db, edges } => classify_cmd(&mut out, &db, edges),
    };
    let _ = out.flush();
    match result {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Assertion) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn catalog_cmd(out: &mut impl Write, action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            writeln!(
                out,
                "{:<11} {:>4} {:>4}  {:<4} {:<4} {:<10} description",
                "name", "size", "rank", "3c", "i4c", "prism-free"
            )?;
            for e in catalog::catalog() {
                let x = e.expected;
                writeln!(
                    out,
                    "{:<11} {:>4} {:>4}  {:<4} {:<4} {:<10} {}",
                    e.name,
                    x.size,
                    x.rank,
                    yes_no(x.three_connected),
                    yes_no(x.internally_4_connected),
                    yes_no(x.prism_free),
                    e.description
                )?;
            }
        }
        CatalogAction::Show { name } => {
            let e = catalog::lookup(&name)?;
            let m = &e.matroid;
            writeln!(out, "name: {}", e.name)?;
            if !e.description.is_empty() {
                writeln!(out, "description: {}", e.description)?;
            }
            writeln!(out, "size: {}", m.len())?;
            writeln!(out, "rank: {}", m.rank())?;
            writeln!(out, "labels: {}", m.labels().join(" "))?;
            write!(out, "{}", m.format_matrix())?;
            writeln!(out, "simple: {}", yes_no(m.is_simple()))?;
            writeln!(out, "3-connected: {}", yes_no(m.is_3connected()))?;
            writeln!(out, "internally 4-connected: {}", yes_no(m.is_internally_4connected()))?;
            let mut prism = MinorOracle::new(&catalog::prism())?;
            writeln!(out, "prism-free: {}", yes_no(!prism.check(m)))?;
            if m.is_simple() {
                writeln!(out, "key: {}", m.canonical_key()?)?;
            }
        }
    }
    Ok(())
}

fn verify_cmd(out: &mut impl Write, suite: &str) -> Outcome {
    let suite: Suite = suite.parse()?;
    let claims = verify::run(suite);
    for c in &claims {
        writeln!(out, "{c}")?;
    }
    let failed = claims.iter().filter(|c| !c.pass).count();
    writeln!(out, "{} claims, {} failed", claims.len(), failed)?;
    if failed > 0 {
        Err(Failure::Assertion)
    } else {
        Ok(())
    }
}

fn enumerate_cmd(
    out: &mut impl Write,
    max_rank: usize,
    exclude: &[String],
    path: Option<PathBuf>,
    resume: Option<PathBuf>,
    jobs: Option<usize>,
    long_run: bool,
) -> Outcome {
    if max_rank == 0 {
        return Err(Failure::Usage("--max-rank must be at least 1".into()));
    }
    if max_rank > DESK_RANK && !long_run {
        return Err(Failure::Usage(format!("--max-rank {max_rank} takes hours; pass --long-run to proceed")));
    }
    if jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let excluded = Excluded::from_names(exclude)?;
    let start = match &resume {
        Some(p) => Some(read_db(p)?),
        None => None,
    };
    let checkpoint = path.or(resume);
    let opts = EnumerateOptions { max_rank, excluded, checkpoint: checkpoint.clone(), jobs };
    let db = generator::enumerate_minor_free(&opts, start, &mut |s| eprintln!("{s}"))?;
    if let Some(p) = &checkpoint {
        write_db(&db, p)?;
    }
    let report = generator::classify(&db, false)?;
    write_report(out, &report, false)?;
    Ok(())
}

fn write_report(out: &mut impl Write, c: &Classification, edges: bool) -> io::Result<()> {
    let name = |k: &CanonicalKey| c.name_of(k).map(|n| format!(" {n}")).unwrap_or_default();
    writeln!(out, "{:>4} {:>4} {:>8} {:>6} {:>6}", "rank", "size", "classes", "3c", "i4c")?;
    for s in &c.counts {
        writeln!(
            out,
            "{:>4} {:>4} {:>8} {:>6} {:>6}",
            s.rank, s.size, s.total, s.three_connected, s.internally_4_connected
        )?;
    }
    let total: usize = c.counts.iter().map(|s| s.total).sum();
    writeln!(out, "total classes: {total}")?;
    let mut by_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for k in &c.internally_4_connected {
        *by_rank.entry(k.rank()).or_default() += 1;
    }
    let ranks: Vec<String> = by_rank.iter().map(|(r, n)| format!("rank {r}: {n}")).collect();
    writeln!(out, "internally 4-connected: {} ({})", c.internally_4_connected.len(), ranks.join(", "))?;
    for k in &c.internally_4_connected {
        writeln!(out, "  {k}{}", name(k))?;
    }
    writeln!(out, "3-connected, not internally 4-connected: {}", c.three_connected_only.len())?;
    writeln!(out, "with a large internally 4-connected minor: {}", c.sporadic.len())?;
    for k in &c.sporadic {
        writeln!(out, "  {k}{}", name(k))?;
    }
    if edges {
        writeln!(out, "minor edges: {}", c.minor_edges.len())?;
        for (a, b) in &c.minor_edges {
            writeln!(out, "  {a}{} < {b}{}", name(a), name(b))?;
        }
    }
    Ok(())
}

fn extend_cmd(
    out: &mut impl Write,
    seed: &str,
    steps: usize,
    prune_larger_listed: bool,
    jobs: Option<usize>,
) -> Outcome {
    let entry = catalog::lookup(seed)?;
    let opts = SplitterOptions { max_steps: steps, forbidden: vec![catalog::prism()], prune_larger_listed };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let found = pool.install(|| generator::splitter_search(&entry.matroid, &opts))?;
    let mut names = BTreeMap::new();
    for e in catalog::catalog() {
        if e.matroid.is_simple() {
            names.entry(e.matroid.canonical_key()?).or_insert(e.name);
        }
    }
    for n in &found {
        let step = match n.step {
            Step::Extension => "extension",
            Step::Coextension => "coextension",
        };
        let name = names.get(&n.key).map(|s| format!(" {s}")).unwrap_or_default();
        writeln!(out, "depth={} {step} i4c={} {}{name}", n.depth, yes_no(n.internally_4_connected), n.key)?;
    }
    let i4c = found.iter().filter(|n| n.internally_4_connected).count();
    writeln!(out, "{} found from {}, {} internally 4-connected", found.len(), entry.name, i4c)?;
    Ok(())
}

/// A record line `r=<width>;<p1>,...,<pn>`; the points need not be sorted.
fn parse_record(line: &str, path: &str, lineno: usize) -> Result<(usize, Vec<u32>), Error> {
    let err = |msg: String| Error::Parse { path: path.to_string(), line: lineno, msg };
    let rest = line.strip_prefix("r=").ok_or_else(|| err("expected `r=<width>;<points>` at column 1".into()))?;
    let (w, pts) = rest.split_once(';').ok_or_else(|| err("missing `;` after the width".into()))?;
    let width: usize = w.trim().parse().map_err(|_| err(format!("bad width `{w}` at column 3")))?;
    let mut points = Vec::new();
    let mut col = 2 + w.len() + 1;
    for tok in pts.split(',') {
        let t = tok.trim();
        if !t.is_empty() || pts.contains(',') {
            points.push(t.parse().map_err(|_| err(format!("bad point `{t}` at column {}", col + 1)))?);
        }
        col += tok.len() + 1;
    }
    Ok((width, points))
}

fn records(path: &Path) -> Result<Vec<(usize, usize, Vec<u32>)>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let name = path.display().to_string();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (w, pts) = parse_record(line, &name, i + 1)?;
        out.push((i + 1, w, pts));
    }
    Ok(out)
}

fn load_matroid(spec: &str) -> Result<BinaryMatroid, Failure> {
    let path = Path::new(spec);
    if !path.exists() {
        return Ok(catalog::matroid(spec)?);
    }
    let recs = records(path)?;
    let [(_, w, pts)] = recs.as_slice() else {
        return Err(Failure::Usage(format!("{spec}: expected exactly one record, found {}", recs.len())));
    };
    Ok(BinaryMatroid::from_points(*w, pts)?)
}

fn minor_cmd(out: &mut impl Write, host: &str, target: &str) -> Outcome {
    let host = load_matroid(host)?;
    let target = load_matroid(target)?;
    if !target.is_simple() {
        return Err(Failure::Usage("the target must be simple".into()));
    }
    writeln!(out, "{}", binmat::has_minor(&host, &target)?)?;
    Ok(())
}

fn canon_cmd(out: &mut impl Write, file: &Path) -> Outcome {
    let name = file.display().to_string();
    for (line, w, pts) in records(file)? {
        let key =
            canon::canonical_key(&pts, w).map_err(|e| Error::Parse { path: name.clone(), line, msg: e.to_string() })?;
        writeln!(out, "{key}")?;
    }
    Ok(())
}

fn classify_cmd(out: &mut impl Write, path: &Path, edges: bool) -> Outcome {
    let db = read_db(path)?;
    let report = generator::classify(&db, edges)?;
    write_report(out, &report, edges)?;
    Ok(())
}
