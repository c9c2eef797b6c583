mod cache;
mod ops;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gengraph::graph::EulerMode;
use gengraph::mobius::{symbolic_lattice, symbolic_lattice_for};
use gengraph::verify::{run_suite, FactLedger, Suite, TableCache};
use gengraph::{Caps, Error, Family, GroupSpec, Permutation};

use cache::{Cache, CacheKey, IoError};
use ops::{Format, NormalizerChoice, Output, Request};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  verify: at least one fact failed
  2  usage error (bad flags, unknown suite, invalid config)
  3  unparsable permutation or wrong degree
  4  element is not in the group
  5  a size cap was exceeded
  6  precondition failed or operation unsupported
  7  I/O error (cache, certificate, config file)";

#[derive(Parser)]
#[command(
    name = "gengraph",
    version,
    about = "Degrees, Möbius sums and Euler circuits of the generating graph of Alt_n and Sym_n",
    after_help = EXIT_CODES
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (0 lets the pool decide).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Cache directory; defaults to $GENGRAPH_CACHE_DIR, then the platform cache dir.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// TOML file with caps (enumeration_cap, scan_cap, lattice_cap,
    /// connectivity_cap, circuit_cap, threads, degree_limit).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Override one cap, e.g. --cap lattice_cap=30000. Repeatable.
    #[arg(long = "cap", global = true, value_name = "KEY=VALUE")]
    caps: Vec<String>,
}

#[derive(Args, Clone, Copy)]
struct GroupArgs {
    #[arg(long, value_enum)]
    group: FamilyArg,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Clone)]
struct ElementArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)".
    #[arg(long)]
    element: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Alt,
    Sym,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Alt => Family::Alt,
            FamilyArg::Sym => Family::Sym,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EulerModeArg {
    /// Circuit when --certificate is given, empirical within caps, else predicate.
    Auto,
    Predicate,
    Empirical,
    Circuit,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of one representative per conjugacy class.
    Degrees(GroupArgs),
    /// Degree of one element.
    Degree(ElementArgs),
    /// Eulerian status, optionally with a circuit certificate.
    Euler {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = EulerModeArg::Auto)]
        mode: EulerModeArg,
        /// Write the circuit as a JSON array of permutation strings.
        #[arg(long, value_name = "FILE")]
        certificate: Option<PathBuf>,
    },
    /// Degree as the Möbius sum over overgroups of <g>.
    Mobius(ElementArgs),
    /// Overgroup lattice of <g>, or a drawn lattice with --symbolic.
    Lattice {
        #[arg(long, value_enum)]
        group: Option<FamilyArg>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        element: Option<String>,
        /// Drawn lattice by name (alt7, alt11, alt12, alt23, alt24, sym-p,
        /// sym-p-plus-1); without a name, the one matching --group/--n.
        #[arg(long, value_name = "NAME", num_args = 0..=1, default_missing_value = "")]
        symbolic: Option<String>,
        /// Prime for sym-p and sym-p-plus-1.
        #[arg(long)]
        p: Option<u64>,
        /// Also write the Hasse diagram in DOT format.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Decompositions n = Σ p^i certifying odd-degree vertices.
    Decompose(GroupArgs),
    /// Exact probability that a nontrivial element has odd degree.
    Prob(GroupArgs),
    /// Normalizer and centralizer of <g>.
    Normalizer {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, value_enum, default_value_t = NormalizerChoice::Auto)]
        method: NormalizerChoice,
    },
    /// Run verification suites and print the fact ledger.
    Verify {
        /// Suite id; repeatable, all suites when omitted.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Inspect or maintain the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Number of entries and bytes on disk.
    Stats,
    /// Remove every entry.
    Clear,
    /// Recompute entries and compare byte for byte.
    Audit {
        /// Check at most this many entries.
        #[arg(long)]
        sample: Option<usize>,
    },
}

enum Failure {
    Lib(Error),
    Io(IoError),
    VerifyFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::VerifyFailed => 1,
            Failure::Io(_) => 7,
            Failure::Lib(e) => match e {
                Error::Input(_) => 2,
                Error::Parse { .. }
                | Error::InvalidPermutation(_)
                | Error::DegreeMismatch { .. } => 3,
                Error::NotMember { .. } => 4,
                Error::CapExceeded { .. } => 5,
                Error::Precondition(_) | Error::Unsupported(_) => 6,
            },
        }
    }
}

fn load_caps(cli: &Cli) -> Result<Caps, Failure> {
    let mut table = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| IoError {
                path: path.clone(),
                source,
            })?;
            text.parse::<toml::Table>()
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
        }
        None => toml::Table::new(),
    };
    for item in &cli.caps {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected KEY=VALUE, got {item:?}")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("cap {key} needs an integer value")))?;
        table.insert(key.trim().to_string(), toml::Value::Integer(value));
    }
    if let Some(threads) = cli.threads {
        table.insert("threads".into(), toml::Value::Integer(threads as i64));
    }
    Ok(Caps::from_toml_str(&table.to_string())?)
}

fn spec_of(args: GroupArgs) -> Result<GroupSpec, Error> {
    GroupSpec::new(args.group.into(), args.n)
}

fn element_of(args: &ElementArgs) -> Result<(GroupSpec, Permutation), Error> {
    let spec = spec_of(args.group)?;
    let g = Permutation::parse(&args.element, spec.n)?;
    spec.check_member(&g)?;
    Ok((spec, g))
}

struct Context {
    caps: Caps,
    cache: Option<Cache>,
}

impl Context {
    fn compute(&self, request: Request) -> Result<Output, Failure> {
        let Some(cache) = &self.cache else {
            return Ok(request.compute(&self.caps)?);
        };
        let key = CacheKey::new(&request, &self.caps);
        if let Some(hit) = cache.get(&key) {
            return Ok(hit);
        }
        let output = request.compute(&self.caps)?;
        cache.put(&key, &output)?;
        Ok(output)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError {
        path: path.to_path_buf(),
        source,
    })
}

fn run(cli: &Cli, caps: Caps) -> Result<String, Failure> {
    let cache_dir = cli.cache_dir.clone().unwrap_or_else(cache::default_dir);
    let ctx = Context {
        caps,
        cache: (!cli.no_cache).then(|| Cache::new(cache_dir.clone())),
    };
    let output = match &cli.command {
        Command::Degrees(args) => ctx.compute(Request::Degrees {
            spec: spec_of(*args)?,
        })?,
        Command::Degree(args) => {
            let (spec, element) = element_of(args)?;
            ctx.compute(Request::Degree { spec, element })?
        }
        Command::Euler {
            group,
            mode,
            certificate,
        } => {
            let spec = spec_of(*group)?;
            let mode = match mode {
                EulerModeArg::Predicate => EulerMode::PredicateOnly,
                EulerModeArg::Empirical => EulerMode::Empirical,
                EulerModeArg::Circuit => EulerMode::WithCircuit,
                EulerModeArg::Auto if certificate.is_some() => EulerMode::WithCircuit,
                EulerModeArg::Auto if spec.n <= caps.connectivity_cap => EulerMode::Empirical,
                EulerModeArg::Auto => EulerMode::PredicateOnly,
            };
            let output = ctx.compute(Request::Euler { spec, mode })?;
            if let (Some(path), Output::Euler(verdict)) = (certificate, &output) {
                match &verdict.circuit {
                    Some(circuit) => {
                        let strings: Vec<String> = circuit.iter().map(|p| p.to_string()).collect();
                        let text =
                            serde_json::to_string_pretty(&strings).expect("strings serialize");
                        write_file(path, &(text + "\n"))?;
                    }
                    None => eprintln!(
                        "no Euler circuit exists for {spec}; {} not written",
                        path.display()
                    ),
                }
            }
            output
        }
        Command::Mobius(args) => {
            let (spec, element) = element_of(args)?;
            ctx.compute(Request::Mobius { spec, element })?
        }
        Command::Lattice {
            group,
            n,
            element,
            symbolic,
            p,
            dot,
        } => {
            if let Some(name) = symbolic {
                let (name, p) = if name.is_empty() {
                    let (Some(group), Some(n)) = (group, n) else {
                        return Err(Error::Input(
                            "--symbolic without a name needs --group and --n".into(),
                        )
                        .into());
                    };
                    let (name, default_p) =
                        symbolic_lattice_for((*group).into(), *n).ok_or_else(|| {
                            Error::Unsupported(format!(
                                "no drawn lattice for {}_{n}",
                                Family::from(*group)
                            ))
                        })?;
                    (name.to_string(), p.or(default_p))
                } else {
                    (name.clone(), *p)
                };
                Output::Symbolic(symbolic_lattice(&name, p)?)
            } else {
                let (Some(group), Some(n), Some(element)) = (group, n, element) else {
                    return Err(Error::Input(
                        "lattice needs --group, --n and --element, or --symbolic".into(),
                    )
                    .into());
                };
                let args = ElementArgs {
                    group: GroupArgs {
                        group: *group,
                        n: *n,
                    },
                    element: element.clone(),
                };
                let (spec, element) = element_of(&args)?;
                let output = ctx.compute(Request::Lattice { spec, element })?;
                if let (Some(path), Output::Lattice(lattice)) = (dot, &output) {
                    write_file(path, &lattice.to_dot())?;
                }
                output
            }
        }
        Command::Decompose(args) => Output::Decompose(ops::decompose(args.n, args.group.into())?),
        Command::Prob(args) => ctx.compute(Request::Prob {
            spec: spec_of(*args)?,
        })?,
        Command::Normalizer { element, method } => {
            let (spec, element) = element_of(element)?;
            ctx.compute(Request::Normalizer {
                spec,
                element,
                method: *method,
            })?
        }
        Command::Verify { suites } => {
            let suites: Vec<Suite> = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
            };
            let tables = TableCache::new();
            let mut ledger = FactLedger::default();
            for suite in suites {
                ledger.extend(run_suite(suite, &caps, &tables)?);
            }
            let text = Output::Verify(ledger.clone()).render(cli.format)?;
            if !ledger.all_passed() {
                print!("{text}");
                return Err(Failure::VerifyFailed);
            }
            return Ok(text);
        }
        Command::Cache { action } => {
            let cache = Cache::new(cache_dir);
            let json = cli.format == Format::Json;
            return Ok(match action {
                CacheAction::Stats => {
                    let stats = cache.stats()?;
                    if json {
                        serde_json::to_string_pretty(&stats).expect("stats serialize") + "\n"
                    } else {
                        format!(
                            "{}: {} entries, {} bytes\n",
                            stats.dir.display(),
                            stats.entries,
                            stats.bytes
                        )
                    }
                }
                CacheAction::Clear => {
                    let removed = cache.clear()?;
                    if json {
                        format!("{{\"removed\": {removed}}}\n")
                    } else {
                        format!("removed {removed} entries\n")
                    }
                }
                CacheAction::Audit { sample } => {
                    let audit = cache.audit(*sample)?;
                    let text = if json {
                        serde_json::to_string_pretty(&audit).expect("audit serializes") + "\n"
                    } else {
                        let mut text = String::new();
                        for row in &audit.rows {
                            let status = if row.matches { "match" } else { "MISMATCH" };
                            text += &format!("{status} {} {}", row.op, row.file);
                            if let Some(detail) = &row.detail {
                                text += &format!(" ({detail})");
                            }
                            text.push('\n');
                        }
                        text + &format!(
                            "{} checked, {} mismatched\n",
                            audit.checked, audit.mismatched
                        )
                    };
                    if audit.mismatched > 0 {
                        print!("{text}");
                        return Err(Failure::VerifyFailed);
                    }
                    text
                }
            });
        }
    };
    Ok(output.render(cli.format)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_caps(&cli).and_then(|caps| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(caps.threads)
            .build()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
        pool.install(|| run(&cli, caps))
    });
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::VerifyFailed => eprintln!("error: verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
