use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use domdelay::bench::bench;
use domdelay::generators::{
    exhaustive_corpus, gen_chordal, gen_pk_free_chordal, gen_split, gen_trivially_perfect,
};
use domdelay::ir_ext::enumerate_dir;
use domdelay::oracle::{brute_dir, brute_dom, brute_drn, brute_drn_member, BruteInstance};
use domdelay::recognition::DEFAULT_PATH_BUDGET;
use domdelay::redundancy::red_blue;
use domdelay::sat::{build_reduction, parse_cnf};
use domdelay::{classify, enumerate_rn, parse_graph, verify_class, DomStream, Error, Graph, Mode, Prepared, VertexSet};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "domdelay", version, about = "Minimal dominating set enumeration for P7-free and P8-free chordal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print redundant and irredundant vertices and the irredundant components
    Classify { graph: PathBuf },
    /// Enumerate the redundant parts of minimal dominating sets
    EnumRn(EnumArgs),
    /// Enumerate the irredundant extensions of a redundant set
    EnumDir {
        #[command(flatten)]
        common: EnumArgs,
        /// 1-indexed redundant vertices, space or comma separated
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Enumerate all minimal dominating sets
    EnumDom(EnumArgs),
    /// Exhaustive reference computations
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Generate graphs as concatenated DIMACS blocks
    Gen(GenArgs),
    /// Build the 3-SAT gadget graph from a DIMACS CNF file
    #[command(name = "reduce-3sat")]
    Reduce3sat {
        cnf: PathBuf,
        /// graph output; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// role map output; defaults to OUTPUT.roles.jsonl when OUTPUT is set
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Time the enumeration and print per-solution delays as CSV
    Bench {
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// number of solutions to time
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
        /// CSV output; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        verify_class: bool,
        #[arg(long, default_value_t = DEFAULT_PATH_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct EnumArgs {
    /// graph file (DIMACS or plain edge list); `-` reads stdin
    graph: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// check chordality and path-freeness before enumerating
    #[arg(long)]
    verify_class: bool,
    /// node budget of the path-freeness check
    #[arg(long, default_value_t = DEFAULT_PATH_BUDGET)]
    budget: u64,
    /// stop after this many solutions
    #[arg(long)]
    limit: Option<usize>,
    /// print only the number of solutions
    #[arg(long)]
    count_only: bool,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// All minimal dominating sets
    Dom { graph: PathBuf },
    /// All redundant parts
    Drn { graph: PathBuf },
    /// All irredundant extensions of a redundant set
    Dir {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Extension problem per irredundant component
    Iep {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Whether a redundant set extends to a minimal dominating set
    DrnMember {
        graph: PathBuf,
        /// 1-indexed vertices, or `auto-rn` for all redundant vertices
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value_t = 1 << 32)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    P7,
    P8,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::P7 => Mode::P7,
            ModeArg::P8 => Mode::P8,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphClass {
    Chordal,
    PkFree,
    Split,
    TriviallyPerfect,
    Exhaustive,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    class: GraphClass,
    /// vertices (maximum vertices for the exhaustive corpus)
    #[arg(short, long)]
    n: usize,
    /// forbidden path length for pk-free
    #[arg(short, long, default_value_t = 7)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// number of random graphs
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, env = "DOMDELAY_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// write one file per graph into this directory instead of stdout
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn read_text(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    parse_graph(&read_text(path)?)
}

/// Parses a 1-indexed vertex list.
fn parse_set(text: &str, g: &Graph) -> Result<VertexSet, Error> {
    let mut out = VertexSet::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| Error::InvalidArgument(format!("bad vertex {tok:?}")))?;
        if v == 0 || v > g.n() {
            return Err(Error::InvalidArgument(format!("vertex {v} outside 1..={}", g.n())));
        }
        out.insert(v - 1);
    }
    Ok(out)
}

fn print_sets<W: Write>(out: &mut W, sets: impl Iterator<Item = VertexSet>, limit: Option<usize>, count_only: bool) -> Result<(), Error> {
    let mut count = 0usize;
    for s in sets.take(limit.unwrap_or(usize::MAX)) {
        count += 1;
        if !count_only {
            writeln!(out, "{}", s.to_one_indexed())?;
        }
    }
    if count_only {
        writeln!(out, "{count}")?;
    }
    Ok(())
}

fn prepare(args: &EnumArgs) -> Result<std::sync::Arc<Prepared>, Error> {
    let g = read_graph(&args.graph)?;
    let mode = args.mode.into();
    if args.verify_class {
        verify_class(&g, mode, args.budget)?;
    }
    Prepared::new(g, mode)
}

fn run(cli: Cli) -> Result<(), Error> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Classify { graph } => {
            let g = read_graph(&graph)?;
            let cls = classify(&g);
            writeln!(out, "IR: {}", cls.ir.to_one_indexed())?;
            writeln!(out, "RN: {}", cls.rn.to_one_indexed())?;
            for c in &cls.components {
                writeln!(out, "component: {}", c.to_one_indexed())?;
            }
        }
        Command::EnumRn(args) => {
            let prep = prepare(&args)?;
            print_sets(&mut out, enumerate_rn(&prep), args.limit, args.count_only)?;
        }
        Command::EnumDir { common, set } => {
            let prep = prepare(&common)?;
            let a = parse_set(&set, &prep.graph)?;
            print_sets(&mut out, enumerate_dir(&prep, &a)?, common.limit, common.count_only)?;
        }
        Command::EnumDom(args) => {
            let prep = prepare(&args)?;
            print_sets(&mut out, DomStream::new(prep), args.limit, args.count_only)?;
        }
        Command::Oracle { which } => oracle(&mut out, which)?,
        Command::Gen(args) => generate(&mut out, args)?,
        Command::Reduce3sat { cnf, output, roles } => {
            let phi = parse_cnf(&read_text(&cnf)?)?;
            let (g, _, map) = build_reduction(&phi);
            let roles = roles.or_else(|| output.as_ref().map(|o| PathBuf::from(format!("{}.roles.jsonl", o.display()))));
            match &output {
                Some(path) => fs::write(path, g.to_dimacs())?,
                None => write!(out, "{}", g.to_dimacs())?,
            }
            if let Some(path) = roles {
                fs::write(path, map.to_json_lines())?;
            }
        }
        Command::Bench { graph, mode, limit, output, verify_class: verify, budget } => {
            let g = read_graph(&graph)?;
            if verify {
                verify_class(&g, mode.into(), budget)?;
            }
            let report = bench(g, mode.into(), Some(limit))?;
            match output {
                Some(path) => report.write_csv(BufWriter::new(fs::File::create(path)?))?,
                None => report.write_csv(&mut out)?,
            }
            eprintln!("{}", report.summary());
        }
    }
    out.flush()?;
    Ok(())
}

fn oracle<W: Write>(out: &mut W, which: OracleCommand) -> Result<(), Error> {
    match which {
        OracleCommand::Dom { graph } => print_sets(out, brute_dom(&read_graph(&graph)?)?.into_iter(), None, false),
        OracleCommand::Drn { graph } => print_sets(out, brute_drn(&read_graph(&graph)?)?.into_iter(), None, false),
        OracleCommand::Dir { graph, set } => {
            let g = read_graph(&graph)?;
            let a = parse_set(&set, &g)?;
            print_sets(out, brute_dir(&g, &a)?.into_iter(), None, false)
        }
        OracleCommand::Iep { graph, set } => {
            let g = read_graph(&graph)?;
            let a = parse_set(&set, &g)?;
            let cls = classify(&g);
            if let Some(v) = a.iter().find(|&v| cls.is_irredundant(v)) {
                return Err(Error::InvalidArgument(format!("vertex {} is not redundant", v + 1)));
            }
            let rb = red_blue(&g, &cls, &a);
            let dom = g.closed_neighborhood_mask(&a);
            for (i, comp) in cls.components.iter().enumerate() {
                let x_sets: Vec<VertexSet> = rb
                    .red_by_component
                    .get(&i)
                    .map(|reds| reds.iter().map(|r| rb.priv_ir[&r].intersection(comp)).collect())
                    .unwrap_or_default();
                let x_all = x_sets.iter().fold(VertexSet::new(), |acc, x| acc.union(x));
                let y: VertexSet = comp.iter().filter(|&v| dom[v] && !x_all.contains(v)).collect();
                let inst = BruteInstance { g: &g, comp, x_sets: &x_sets, y_set: &y };
                let answer = if inst.brute_iep()? { "YES" } else { "NO" };
                writeln!(out, "{}: {answer}", comp.to_one_indexed())?;
            }
            Ok(())
        }
        OracleCommand::DrnMember { graph, set, budget } => {
            let g = read_graph(&graph)?;
            let a = if set.trim() == "auto-rn" { classify(&g).rn } else { parse_set(&set, &g)? };
            let answer = brute_drn_member(&g, &a, budget)?;
            writeln!(out, "{}", if answer.is_some() { "YES" } else { "NO" })?;
            Ok(())
        }
    }
}

fn generate<W: Write>(out: &mut W, args: GenArgs) -> Result<(), Error> {
    let graphs: Vec<Graph> = match args.class {
        GraphClass::Exhaustive => exhaustive_corpus(args.n)?,
        class => (0..args.count as u64)
            .map(|i| {
                let seed = args.seed.wrapping_add(i);
                match class {
                    GraphClass::Chordal => gen_chordal(args.n, args.density, seed),
                    GraphClass::PkFree => gen_pk_free_chordal(args.n, args.k, seed),
                    GraphClass::Split => gen_split(args.n, seed),
                    GraphClass::TriviallyPerfect => gen_trivially_perfect(args.n, seed),
                    GraphClass::Exhaustive => unreachable!(),
                }
            })
            .collect::<Result<_, _>>()?,
    };
    match args.out_dir {
        Some(dir) => {
            fs::create_dir_all(&dir)?;
            for (i, g) in graphs.iter().enumerate() {
                fs::write(dir.join(format!("g{:05}.graph", i + 1)), g.to_dimacs())?;
            }
        }
        None => {
            for g in &graphs {
                write!(out, "{}", g.to_dimacs())?;
            }
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotInClass(_) | Error::Disconnected { .. } => 2,
        Error::SizeLimit(_) | Error::BudgetExceeded { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
