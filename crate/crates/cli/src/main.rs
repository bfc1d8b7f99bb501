mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vgroute::domain::{ceil_log2, parse_domain};
use vgroute::harness::{self, PairSelection, VerifyOptions};
use vgroute::tables::{entry_bits, table_bits};
use vgroute::{
    build_visibility_graph, parse_tables, serialize_domain, serialize_tables, shortest_path_tree, Domain64, Error,
    RoutingScheme, Scheme64, VertexLabel,
};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID_DOMAIN: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "vgroute", version, about = "Compact routing tables for visibility graphs of polygonal domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile routing tables for a domain.
    Build {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, required_unless_present = "dry_run")]
        out: Option<PathBuf>,
        /// Print the table-size ledger instead of writing tables.
        #[arg(long)]
        dry_run: bool,
    },
    /// Print the table-size ledger (same as `build --dry-run`).
    Stats {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
    /// Route one packet using a tables file.
    Route {
        #[arg(long)]
        tables: PathBuf,
        #[arg(long)]
        from: VertexLabel,
        #[arg(long)]
        to: VertexLabel,
    },
    /// Check a domain's scheme against the reference oracles.
    Verify {
        #[arg(long)]
        domain: PathBuf,
        /// Required unless --tables is given.
        #[arg(long)]
        epsilon: Option<f64>,
        /// `all`, or `sample N`.
        #[arg(long, num_args = 1..=2, value_names = ["MODE", "N"])]
        pairs: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Route with these tables instead of freshly built ones.
        #[arg(long)]
        tables: Option<PathBuf>,
        /// Route only this pair (needs --to).
        #[arg(long, requires = "to")]
        from: Option<VertexLabel>,
        #[arg(long, requires = "from")]
        to: Option<VertexLabel>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Draw a domain, optionally with a trace and one vertex's cone fan.
    Render {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        cones: Option<VertexLabel>,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a domain file.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Vertex count (star), outer vertex count (holed), or spire count.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        holes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the example corpus, or check a directory against it.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Star,
    Holed,
    Spire,
}

/// Failure carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) | Error::TooFewVertices { .. } | Error::DuplicateVertex { .. } | Error::MultipleOuter(_) => {
                EXIT_INVALID_DOMAIN
            }
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load_domain(path: &Path) -> Result<Domain64, Fail> {
    let parsed = parse_domain::<f64>(&read(path)?)?;
    for n in &parsed.notices {
        eprintln!("note: boundary {} had the wrong orientation and was reversed", n.boundary);
    }
    Ok(parsed.domain)
}

fn check_epsilon(eps: f64) -> Result<f64, Fail> {
    if eps.is_finite() && eps > 0.0 {
        Ok(eps)
    } else {
        Err(usage(format!("--epsilon must be a positive number, got {eps}")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<(), Fail> {
    match cmd {
        Command::Build { domain, epsilon, out, dry_run } => {
            let epsilon = check_epsilon(epsilon)?;
            let d = load_domain(&domain)?;
            let (scheme, compiled) = RoutingScheme::build(d, epsilon)?;
            for w in &compiled.warnings {
                eprintln!("warning: {w}");
            }
            if dry_run {
                print!("{}", ledger(&scheme));
                return Ok(());
            }
            let out = out.expect("clap requires --out without --dry-run");
            write(&out, &serialize_tables(&scheme.domain, scheme.epsilon, scheme.t, scheme.tables()))?;
            let (n, h) = (scheme.n(), scheme.h());
            let bits: u64 = scheme.tables().iter().map(|t| table_bits(t, n, h)).sum();
            println!(
                "n={n} h={h} t={} entries={} bits={bits}",
                scheme.t,
                compiled.total_entries()
            );
            Ok(())
        }
        Command::Stats { domain, epsilon } => {
            let epsilon = check_epsilon(epsilon)?;
            let (scheme, _) = RoutingScheme::build(load_domain(&domain)?, epsilon)?;
            print!("{}", ledger(&scheme));
            Ok(())
        }
        Command::Route { tables, from, to } => {
            let doc = parse_tables(&read(&tables)?)?;
            let scheme = Scheme64::from_document(&doc)?;
            let trace = scheme.route(from, to)?;
            let g = build_visibility_graph(&scheme.domain);
            let geodesic = shortest_path_tree(&g, from)?.dist(to)?;
            print!("{}", trace.with_geodesic(geodesic).to_text());
            Ok(())
        }
        Command::Verify { domain, epsilon, pairs, seed, tables, from, to, report } => {
            let d = load_domain(&domain)?;
            let mut opts = VerifyOptions { seed, ..Default::default() };
            opts.pairs = match (from, to) {
                (Some(from), Some(to)) => PairSelection::One { from, to },
                _ => parse_pairs(pairs.as_deref())?,
            };
            let (epsilon, override_tables) = match tables {
                Some(path) => {
                    let doc = parse_tables(&read(&path)?)?;
                    doc.check_against(&d)?;
                    (epsilon.unwrap_or(doc.epsilon), Some(doc.tables))
                }
                None => (epsilon.ok_or_else(|| usage("--epsilon is required without --tables"))?, None),
            };
            let epsilon = check_epsilon(epsilon)?;
            let r = harness::verify_scheme_with(&d, epsilon, &opts, override_tables);
            let text = r.to_json();
            match report {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            for c in r.failed_checks() {
                eprintln!("FAIL {}: {} of {} failed", c.name, c.failures, c.checked);
            }
            if r.passed {
                eprintln!("all checks passed; max stretch {} over {} pairs, max hops {}", r.stats.max_stretch, r.stats.pairs_routed, r.stats.max_hops);
                Ok(())
            } else {
                Err(Fail(EXIT_VERIFY_FAILED, "verification failed".into()))
            }
        }
        Command::Render { domain, trace, cones, epsilon, out } => {
            let d = load_domain(&domain)?;
            let path = match trace {
                Some(p) => Some(vgroute::router::parse_trace_path(&read(&p)?)?),
                None => None,
            };
            let fan = match cones {
                Some(v) => {
                    d.check_label(v)?;
                    let t = vgroute::cone_count(check_epsilon(epsilon)?)?;
                    Some(vgroute::build_fan(&d, v, t)?)
                }
                None => None,
            };
            if let Some(p) = &path {
                if let Some(bad) = p.iter().find(|l| !d.is_valid_label(**l)) {
                    return Err(usage(format!("trace vertex {bad} is not in the domain")));
                }
            }
            write(&out, &render::svg(&d, path.as_deref(), fan.as_ref()))
        }
        Command::Gen { kind, n, holes, seed, out } => {
            let d: Domain64 = match kind {
                GenKind::Star => harness::gen_star_polygon(n, seed)?,
                GenKind::Holed => harness::gen_holed_domain(n, holes, seed)?,
                GenKind::Spire => {
                    let s = harness::gen_spire_polygon(n)?;
                    eprintln!("p={} q={}", s.p, s.q);
                    s.domain
                }
            };
            let text = serialize_domain(&d);
            match out {
                Some(path) => write(&path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Fixtures { dir, check } => {
            let corpus = harness::example_corpus()?;
            if check {
                let mut drift = Vec::new();
                for (name, text) in &corpus {
                    if fs::read_to_string(dir.join(name)).ok().as_deref() != Some(text.as_str()) {
                        drift.push(name.as_str());
                    }
                }
                if !drift.is_empty() {
                    return Err(usage(format!("fixtures out of date: {}", drift.join(", "))));
                }
                println!("{} fixtures up to date", corpus.len());
                return Ok(());
            }
            fs::create_dir_all(&dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
            for (name, text) in &corpus {
                write(&dir.join(name), text)?;
            }
            println!("wrote {} fixtures to {}", corpus.len(), dir.display());
            Ok(())
        }
    }
}

fn parse_pairs(args: Option<&[String]>) -> Result<PairSelection, Fail> {
    match args {
        None => Ok(PairSelection::Auto),
        Some([mode]) if mode == "all" => Ok(PairSelection::All),
        Some([mode, count]) if mode == "sample" => count
            .parse()
            .map(|count| PairSelection::Sample { count })
            .map_err(|_| usage(format!("invalid sample size `{count}`"))),
        Some(other) => Err(usage(format!("--pairs expects `all` or `sample N`, got `{}`", other.join(" ")))),
    }
}

/// Per-vertex entries and bits against the `(1/epsilon + h) log n` envelope.
fn ledger(s: &Scheme64) -> String {
    use std::fmt::Write as _;
    let (n, h) = (s.n(), s.h());
    let mut out = String::new();
    let _ = writeln!(out, "n={n} h={h} epsilon={} t={}", s.epsilon, s.t);
    let _ = writeln!(out, "label_bits={} entry_bits={}", s.domain.label_bits(), entry_bits(n, h));
    for tbl in s.tables() {
        let _ = writeln!(out, "{} entries={} bits={}", tbl.owner, tbl.entries.len(), table_bits(tbl, n, h));
    }
    let max = s.tables().iter().map(|t| t.entries.len()).max().unwrap_or(0);
    let total: usize = s.tables().iter().map(|t| t.entries.len()).sum();
    let max_bits = s.tables().iter().map(|t| table_bits(t, n, h)).max().unwrap_or(0);
    let total_bits: u64 = s.tables().iter().map(|t| table_bits(t, n, h)).sum();
    let envelope = (1.0 / s.epsilon + h as f64) * f64::from(ceil_log2(n).max(1));
    let _ = writeln!(out, "max_entries={max} entry_bound={} total_entries={total}", s.t + 2 * h);
    let _ = writeln!(out, "max_bits={max_bits} total_bits={total_bits} envelope={envelope:.2}");
    out
}
