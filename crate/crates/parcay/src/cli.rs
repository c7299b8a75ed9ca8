//! The `parcay` command line. Exit codes: 0 success, 1 negative verdict,
//! 2 error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::builder::{ball_sp, build_sp, check_invariants, vertex_group_order, DEFAULT_MAX_ROWS};
use crate::constructions::{
    bi_cayley, generalized_petersen, haar, line_graph_presentation, petersen_coloured, two_ended_window,
    verify_two_ended, FiniteGroupTable,
};
use crate::decompose::{
    is_multicycle, is_partition_friendly, is_weak_multicycle, weak_multicycle_colouring, EdgeColouring,
};
use crate::extract::{pipeline_presentation, presentation_from_colouring};
use crate::graph::{
    automorphism_group_bounded, is_cayley, is_vertex_transitive, isomorphic, parse_graph_labelled,
    presentation_symmetry_implies_vt, to_dot, write_graph, write_graph_labelled, ColourMode, ColouredGraph, IsoOptions,
    DEFAULT_SEARCH_BOUND,
};
use crate::infmatch::{
    compare, maximal_matching_with_ties, miss_sequence, symmetric_difference_report, windowed_perfect_matching,
    ComponentKind, Exhaustion, Family,
};
use crate::presentation::{parse_unvalidated, serialize, violation_line, PartitePresentation};
use crate::suite;

#[derive(Parser, Debug)]
#[command(name = "parcay", version, about = "Partite presentations of graphs")]
pub struct Cli {
    /// Row budget for coset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ROWS)]
    pub max_rows: usize,
    /// Ball radius for `ball`.
    #[arg(long, global = true, default_value_t = 2)]
    pub radius: usize,
    /// Longest relator scanned by `ball`; also the extra exploration depth.
    #[arg(long, global = true, default_value_t = 12)]
    pub scan_margin: usize,
    /// Seed for generated graphs and for the second tie order in `matchings`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Report::Text)]
    pub report: Report,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a `.pp` file and check every presentation axiom.
    Validate { file: PathBuf },
    /// Build the partite Cayley graph of a `.pp` file.
    Build {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the ball of `--radius` around the base vertex.
    Ball {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Weak multicycle colouring, written as a fifth edge column.
    Decompose {
        file: PathBuf,
        /// Only test the colouring in the fifth column.
        #[arg(long, value_enum)]
        check: Option<Predicate>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Presentation of a coloured graph.
    Extract {
        file: PathBuf,
        /// Decompose first instead of reading the fifth column.
        #[arg(long)]
        pipeline: bool,
        /// Rebuild and compare with the input.
        #[arg(long)]
        roundtrip: bool,
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a named construction.
    Make {
        #[command(subcommand)]
        what: Make,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Isomorphism test; exit 1 when not isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        colours: bool,
        #[arg(long)]
        classes: bool,
    },
    /// Certificates and symmetry checks; exit 1 on a negative verdict.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Miss sequences, staged optima and windowed matchings.
    Matchings {
        #[arg(long, value_enum, default_value_t = FamilyArg::TwoEnded)]
        family: FamilyArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
        /// Graph file for `--family custom`.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Run the acceptance battery.
    Suite {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Predicate {
    Multicycle,
    Weak,
    Pf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    TwoEnded,
    Ladder,
    Custom,
}

#[derive(Subcommand, Debug)]
pub enum Make {
    /// `P(n,k)`; `--coloured` gives the partite Cayley colouring.
    Petersen {
        n: usize,
        k: usize,
        #[arg(long)]
        coloured: bool,
    },
    /// `Bi(G, R, L, S)`; groups are `cyclic:N` or `dihedral:N`, element lists
    /// comma-separated names or indices.
    Bicayley {
        group: String,
        #[arg(long, default_value = "")]
        r: String,
        #[arg(long, default_value = "")]
        l: String,
        #[arg(long, default_value = "")]
        s: String,
    },
    /// `H(G, S)`.
    Haar {
        group: String,
        #[arg(long)]
        s: String,
    },
    /// Line graph of a finite Cayley graph via its partite presentation.
    Linegraph {
        /// Comma-separated generator names.
        #[arg(long)]
        gens: String,
        /// Semicolon-separated relators.
        #[arg(long)]
        rels: String,
        /// Print the presentation and the translated relators instead.
        #[arg(long)]
        presentation: bool,
    },
    /// Window of the cubic two-ended graph on layers `n_min..=n_max`.
    TwoEnded {
        #[arg(allow_hyphen_values = true)]
        n_min: i64,
        #[arg(allow_hyphen_values = true)]
        n_max: i64,
    },
    /// Uniform random simple graph with `m` edges, from `--seed`.
    Random { n: usize, m: usize },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Certificate suite for the two-ended graph.
    TwoEnded {
        #[arg(long, default_value_t = -6, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
        n_max: i64,
    },
    VertexTransitive {
        file: PathBuf,
    },
    /// Complete search for a regular subgroup of the automorphism group.
    Cayley {
        file: PathBuf,
    },
    /// Cover and quotient checks on the built graph of a `.pp` file.
    Invariants {
        file: PathBuf,
    },
    /// Symmetry of the presentation complex, a sufficient condition for
    /// vertex transitivity.
    Symmetry {
        file: PathBuf,
    },
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct Failure(String);

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Res {
    match &cli.command {
        Command::Validate { file } => validate(file, out),
        Command::Build { file, output } => build(cli, file, output.as_deref(), out),
        Command::Ball { file, output } => ball(cli, file, output.as_deref(), out),
        Command::Decompose { file, check, output } => decompose(file, *check, output.as_deref(), out),
        Command::Extract { file, pipeline, roundtrip, base, output } => {
            extract(cli, file, *pipeline, *roundtrip, *base, output.as_deref(), out)
        }
        Command::Make { what, output } => make(cli, what, output.as_deref(), out),
        Command::Iso { a, b, colours, classes } => iso(a, b, *colours, *classes, out),
        Command::Verify { what } => verify(cli, what, out),
        Command::Matchings { family, n, margin, graph, root } => {
            matchings(cli, *family, *n, *margin, graph.as_deref(), *root, out)
        }
        Command::Suite { only } => run_suite(cli, *only, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn render(cli: &Cli, g: &ColouredGraph) -> String {
    match cli.format {
        Format::Graph => write_graph(g),
        Format::Dot => to_dot(g),
    }
}

fn report<T: Serialize>(cli: &Cli, value: &T, text: String, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.report {
        Report::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Report::Text => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_presentation(path: &Path) -> Result<PartitePresentation, Failure> {
    let text = read(path)?;
    let (p, spans) = parse_unvalidated(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if let Some(v) = p.validate().into_iter().next() {
        let line = violation_line(&p, &spans, &v);
        return Err(Failure(format!("{}: line {line}: {v}", path.display())));
    }
    Ok(p)
}

fn load_graph(path: &Path) -> Result<(ColouredGraph, Vec<Option<String>>), Failure> {
    parse_graph_labelled(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn validate(file: &Path, out: &mut dyn Write) -> Res {
    let text = read(file)?;
    let (p, spans) = parse_unvalidated(&text).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
    let violations = p.validate();
    if violations.is_empty() {
        writeln!(
            out,
            "valid: {} classes, {} generators, {} relators",
            p.class_count(),
            p.alphabet.len(),
            p.relator_count()
        )?;
        return Ok(0);
    }
    let mut msg = String::new();
    for v in &violations {
        let _ = write!(msg, "\n  line {}, column 1: {v}", violation_line(&p, &spans, v));
    }
    Err(Failure(format!("{}: {} violation(s){msg}", file.display(), violations.len())))
}

fn build(cli: &Cli, file: &Path, output: Option<&Path>, out: &mut dyn Write) -> Res {
    let p = load_presentation(file)?;
    let sp = build_sp(&p, cli.max_rows)?;
    let orders =
        (0..p.class_count()).map(|x| vertex_group_order(&p, x, cli.max_rows)).collect::<Result<Vec<_>, _>>()?;
    let inv = check_invariants(&sp.graph, &p);
    let g = &sp.graph;
    let closed = if sp.closed { "closed" } else { "open" };
    let summary = format!("{} vertices, {} edges, {closed}", g.vertex_count(), g.edge_count());
    let meta = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "closed": sp.closed,
        "class_sizes": p.classes.iter().zip(&sp.class_sizes).map(|(c, n)| json!({"class": c, "size": n})).collect::<Vec<_>>(),
        "vertex_group_orders": orders,
        "stats": sp.stats,
        "relators_close": inv.closure.is_empty(),
        "cover": inv.cover.is_empty(),
        "deck_regular": inv.deck.is_empty(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "{summary}");
    let sizes: Vec<String> = p.classes.iter().zip(&sp.class_sizes).map(|(c, n)| format!("{c}:{n}")).collect();
    let _ = writeln!(text, "class sizes {}", sizes.join(" "));
    let _ = writeln!(text, "vertex group orders {:?}", orders);
    let s = sp.stats;
    let _ = writeln!(
        text,
        "rows {} coincidences {} deductions {} scans {}",
        s.rows_defined, s.coincidences, s.deductions, s.relator_scans
    );
    let cert =
        if inv.is_clean() { "every relator closes at every vertex; cover and deck checks clean" } else { "FAILED" };
    let _ = writeln!(text, "certificate: {cert}");
    let metadata = match cli.report {
        Report::Text => text,
        Report::Json => serde_json::to_string_pretty(&meta)? + "\n",
    };
    let graph = render(cli, g);
    match output {
        Some(path) => {
            emit(&graph, Some(path), out)?;
            out.write_all(metadata.as_bytes())?;
        }
        None => {
            let comment = if cli.format == Format::Dot { "//" } else { "#" };
            let mut all = graph;
            for line in metadata.lines() {
                let _ = writeln!(all, "{comment} {line}");
            }
            out.write_all(all.as_bytes())?;
        }
    }
    Ok(0)
}

fn ball(cli: &Cli, file: &Path, output: Option<&Path>, out: &mut dyn Write) -> Res {
    let p = load_presentation(file)?;
    let b = ball_sp(&p, cli.radius, cli.scan_margin, cli.max_rows)?;
    let frontier: Vec<usize> = (0..b.frontier.len()).filter(|&v| b.frontier[v]).collect();
    let mut text = render(cli, &b.graph);
    let comment = if cli.format == Format::Dot { "//" } else { "#" };
    let _ = writeln!(
        text,
        "{comment} radius {} ({} vertices, {} on the frontier)",
        b.radius,
        b.graph.vertex_count(),
        frontier.len()
    );
    let _ = writeln!(text, "{comment} {}", crate::builder::Ball::CAVEAT);
    emit(&text, output, out)?;
    Ok(0)
}

fn colouring_from_labels(g: &ColouredGraph, labels: &[Option<String>]) -> Result<EdgeColouring, Failure> {
    let labels: Vec<String> = labels
        .iter()
        .enumerate()
        .map(|(e, l)| l.clone().ok_or_else(|| Failure(format!("edge {e} has no colouring column"))))
        .collect::<Result<_, _>>()?;
    if labels.len() != g.edge_count() {
        return Err(Failure("colouring column missing".into()));
    }
    Ok(EdgeColouring::from_labels(&labels))
}

fn decompose(file: &Path, check: Option<Predicate>, output: Option<&Path>, out: &mut dyn Write) -> Res {
    let (g, labels) = load_graph(file)?;
    if let Some(pred) = check {
        let col = colouring_from_labels(&g, &labels)?;
        let ok = match pred {
            Predicate::Multicycle => is_multicycle(&g, &col),
            Predicate::Weak => is_weak_multicycle(&g, &col),
            Predicate::Pf => is_partition_friendly(&g, &col),
        };
        writeln!(out, "{}", if ok { "yes" } else { "no" })?;
        return Ok(if ok { 0 } else { 1 });
    }
    let col = weak_multicycle_colouring(&g)?;
    let names: Vec<String> = col.colour.iter().map(|&c| col.names[c].clone()).collect();
    emit(&write_graph_labelled(&g, Some(&names)), output, out)?;
    Ok(0)
}

fn extract(
    cli: &Cli,
    file: &Path,
    pipeline: bool,
    roundtrip: bool,
    base: usize,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Res {
    let (g, labels) = load_graph(file)?;
    let p = if pipeline {
        pipeline_presentation(&g)?
    } else {
        presentation_from_colouring(&g, &colouring_from_labels(&g, &labels)?, base)?
    };
    emit(&serialize(&p), output, out)?;
    if roundtrip {
        let sp = build_sp(&p, cli.max_rows)?;
        let same = isomorphic(&sp.graph.uncoloured(), &g.uncoloured(), IsoOptions::plain()).is_some();
        writeln!(out, "# roundtrip: {}", if same { "isomorphic" } else { "NOT isomorphic" })?;
        return Ok(if same { 0 } else { 1 });
    }
    Ok(0)
}

fn group(spec: &str) -> Result<FiniteGroupTable, Failure> {
    let (kind, n) = spec.split_once(':').ok_or_else(|| Failure(format!("group `{spec}`: expected KIND:N")))?;
    let n: usize = n.parse().map_err(|_| Failure(format!("group `{spec}`: bad order")))?;
    match kind {
        "cyclic" if n >= 1 => Ok(FiniteGroupTable::cyclic(n)),
        "dihedral" if n >= 1 => Ok(FiniteGroupTable::dihedral(n)),
        _ => Err(Failure(format!("group `{spec}`: expected cyclic:N or dihedral:N"))),
    }
}

fn elements(g: &FiniteGroupTable, list: &str) -> Result<Vec<usize>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            g.element(s)
                .or_else(|| s.parse().ok().filter(|&i| i < g.order()))
                .ok_or_else(|| Failure(format!("no element `{s}`")))
        })
        .collect()
}

fn make(cli: &Cli, what: &Make, output: Option<&Path>, out: &mut dyn Write) -> Res {
    let g = match what {
        Make::Petersen { n, k, coloured } => {
            if *coloured {
                petersen_coloured(*n, *k)?
            } else {
                generalized_petersen(*n, *k)?
            }
        }
        Make::Bicayley { group: spec, r, l, s } => {
            let g = group(spec)?;
            bi_cayley(&g, &elements(&g, r)?, &elements(&g, l)?, &elements(&g, s)?)?
        }
        Make::Haar { group: spec, s } => {
            let g = group(spec)?;
            haar(&g, &elements(&g, s)?)?
        }
        Make::Linegraph { gens, rels, presentation } => {
            let names: Vec<(&str, bool)> =
                gens.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| (s, false)).collect();
            let rels: Vec<&str> = rels.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
            let lp = line_graph_presentation(&names, &rels)?;
            if *presentation {
                let mut text = serialize(&lp.presentation);
                for (x, w) in &lp.first_kind {
                    let _ = writeln!(text, "# first kind at {}: {}", lp.presentation.classes[*x], lp.render(w));
                }
                for (x, w) in &lp.star {
                    let _ = writeln!(text, "# star at {}: {}", lp.presentation.classes[*x], lp.render(w));
                }
                emit(&text, output, out)?;
                return Ok(0);
            }
            build_sp(&lp.presentation, cli.max_rows)?.graph
        }
        Make::TwoEnded { n_min, n_max } => two_ended_window(*n_min, *n_max)?.graph,
        Make::Random { n, m } => {
            let pairs: Vec<(usize, usize)> = (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v))).collect();
            if *m > pairs.len() {
                return Err(Failure(format!("a simple graph on {n} vertices has at most {} edges", pairs.len())));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut picked = sample(&mut rng, pairs.len(), *m).into_vec();
            picked.sort_unstable();
            let edges: Vec<(usize, usize)> = picked.into_iter().map(|i| pairs[i]).collect();
            ColouredGraph::plain(*n, &edges)
        }
    };
    emit(&render(cli, &g), output, out)?;
    Ok(0)
}

fn iso(a: &Path, b: &Path, colours: bool, classes: bool, out: &mut dyn Write) -> Res {
    let (g, _) = load_graph(a)?;
    let (h, _) = load_graph(b)?;
    let opts = match (colours, classes) {
        (_, true) => IsoOptions::colours_and_classes(),
        (true, false) => IsoOptions::colours(),
        (false, false) => IsoOptions::plain(),
    };
    let (g, h) = if colours || classes { (g, h) } else { (g.uncoloured(), h.uncoloured()) };
    match isomorphic(&g, &h, opts) {
        Some(m) => {
            let pairs: Vec<String> = m.vertex_map.iter().enumerate().map(|(u, v)| format!("{u}->{v}")).collect();
            writeln!(out, "isomorphic\n{}", pairs.join(" "))?;
            Ok(0)
        }
        None => {
            writeln!(out, "not isomorphic")?;
            Ok(1)
        }
    }
}

fn verdict(out: &mut dyn Write, ok: bool, yes: &str, no: &str) -> Res {
    writeln!(out, "{}", if ok { yes } else { no })?;
    Ok(if ok { 0 } else { 1 })
}

fn verify(cli: &Cli, what: &Verify, out: &mut dyn Write) -> Res {
    match what {
        Verify::TwoEnded { n_min, n_max } => {
            let r = verify_two_ended(*n_min, *n_max)?;
            let mut text = format!("two-ended certificate on [{n_min},{n_max}]\n");
            for c in &r.checks {
                let _ = writeln!(text, "{} {:<28} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            report(cli, &r, text, out)?;
            Ok(if r.passed() { 0 } else { 1 })
        }
        Verify::VertexTransitive { file } => {
            let (g, _) = load_graph(file)?;
            let ok = is_vertex_transitive(&g.uncoloured())?;
            verdict(out, ok, "vertex-transitive", "not vertex-transitive")
        }
        Verify::Cayley { file } => {
            let (g, _) = load_graph(file)?;
            match is_cayley(&g.uncoloured())? {
                Some(h) => {
                    writeln!(out, "Cayley: regular subgroup of order {}", h.elements.len())?;
                    Ok(0)
                }
                None => verdict(out, false, "", "not Cayley (complete search)"),
            }
        }
        Verify::Invariants { file } => {
            let p = load_presentation(file)?;
            let sp = build_sp(&p, cli.max_rows)?;
            let r = check_invariants(&sp.graph, &p);
            let mut text = String::new();
            for (name, v) in [("cover", &r.cover), ("closure", &r.closure), ("deck", &r.deck)] {
                let _ = writeln!(text, "{} {name} {}", if v.is_empty() { "PASS" } else { "FAIL" }, v.join("; "));
            }
            let value = json!({"cover": r.cover, "closure": r.closure, "deck": r.deck});
            report(cli, &value, text, out)?;
            Ok(if r.is_clean() { 0 } else { 1 })
        }
        Verify::Symmetry { file } => {
            let p = load_presentation(file)?;
            let found = presentation_symmetry_implies_vt(&p)?;
            verdict(
                out,
                found.is_some(),
                "complex symmetric: Sp is vertex-transitive",
                "no complex symmetry found (inconclusive)",
            )
        }
    }
}

#[derive(Serialize)]
struct MatchingsReport {
    window_vertices: usize,
    shell_sizes: Vec<usize>,
    miss_first: Vec<usize>,
    miss_second: Vec<usize>,
    equal_sequences: bool,
    components: Vec<(ComponentKind, usize)>,
    consistent: bool,
    n: usize,
    covers_b_n: bool,
}

fn matchings(
    cli: &Cli,
    family: FamilyArg,
    n: usize,
    margin: usize,
    graph: Option<&Path>,
    root: usize,
    out: &mut dyn Write,
) -> Res {
    let fam = match family {
        FamilyArg::TwoEnded => Family::TwoEnded,
        FamilyArg::Ladder => Family::Ladder,
        FamilyArg::Custom => {
            let path = graph.ok_or_else(|| Failure("--family custom needs --graph".into()))?;
            let (g, _) = load_graph(path)?;
            if root >= g.vertex_count() {
                return Err(Failure(format!("root {root} out of range")));
            }
            let exhaustion = Exhaustion::balls(&g, root, n + margin)?;
            let translations = automorphism_group_bounded(&g, ColourMode::Plain, DEFAULT_SEARCH_BOUND)?
                .into_iter()
                .map(|a| a.vertex_map)
                .collect();
            Family::Custom { graph: Box::new(g), exhaustion, translations }
        }
    };
    let w = windowed_perfect_matching(&fam, n, margin);
    let (g, ex, covers) = match &w {
        Ok(w) => (w.graph.clone(), w.exhaustion.clone(), true),
        Err(crate::infmatch::InfMatchError::NotCovered { .. }) => {
            // rebuild the window to report on it
            let w = windowed_perfect_matching(&fam, 0, n + margin)?;
            (w.graph, w.exhaustion, false)
        }
        Err(e) => return Err(Failure(e.to_string())),
    };
    let ties: Vec<usize> = (0..g.vertex_count()).collect();
    let mut shuffled = ties.clone();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(cli.seed));
    let m1 = maximal_matching_with_ties(&g, &ex, &ties);
    let m2 = maximal_matching_with_ties(&g, &ex, &shuffled);
    let r = symmetric_difference_report(&g, &m1, &m2, &ex);
    let mut kinds: Vec<(ComponentKind, usize)> = Vec::new();
    for c in &r.components {
        match kinds.iter_mut().find(|(k, _)| *k == c.kind) {
            Some(e) => e.1 += 1,
            None => kinds.push((c.kind, 1)),
        }
    }
    let rep = MatchingsReport {
        window_vertices: g.vertex_count(),
        shell_sizes: (0..ex.len()).map(|t| ex.set(t).len()).collect(),
        miss_first: miss_sequence(&m1, &ex).0,
        miss_second: miss_sequence(&m2, &ex).0,
        equal_sequences: compare(&m1, &m2, &ex).is_eq(),
        components: kinds,
        consistent: r.is_consistent(),
        n,
        covers_b_n: covers,
    };
    let mut text = String::new();
    let _ = writeln!(text, "window {} vertices, |B_t| = {:?}", rep.window_vertices, rep.shell_sizes);
    let _ = writeln!(text, "staged optimum miss sequence {:?}", rep.miss_first);
    let _ = writeln!(text, "second optimum miss sequence {:?} (equal: {})", rep.miss_second, rep.equal_sequences);
    let comps: Vec<String> = rep.components.iter().map(|(k, c)| format!("{k:?} x{c}")).collect();
    let _ = writeln!(text, "symmetric difference: {} (consistent: {})", comps.join(", "), rep.consistent);
    let _ = writeln!(text, "B_{n} covered: {}", rep.covers_b_n);
    report(cli, &rep, text, out)?;
    Ok(if covers && rep.consistent { 0 } else { 1 })
}

fn run_suite(cli: &Cli, only: Option<usize>, out: &mut dyn Write) -> Res {
    let results = match only {
        Some(i) => vec![suite::run_one(i).ok_or_else(|| Failure(format!("no criterion {i}")))?],
        None => suite::run_all(),
    };
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{:>2} {} {:<24} {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(text, "{passed}/{} passed", results.len());
    report(cli, &results, text, out)?;
    Ok(if passed == results.len() { 0 } else { 1 })
}
