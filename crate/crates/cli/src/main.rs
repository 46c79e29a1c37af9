use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use etw_core::{
    block_decomposition, bound_report, cost_profile, fixed_obstruction_set, generate, layout_to_tree_layout,
    layout_width, min_bisection_exact, minimality_check, p_block, parse_graph, reduce_bisection_to_etw,
    serialize_graph, tree_cost_profile, tree_layout_to_layout, universal_p, verify_reduction,
    verify_structural_bounds, width_exact, AntichainSpec, BlockKind, CostKind, FamilyId, GraphFormat,
    Layout, Limits, Mode, Multigraph, Relation, TreeCostKind, TreeLayout,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "etw", version, about = "Edge-treewidth and related layout widths of multigraphs")]
struct Cli {
    #[command(flatten)]
    budget: Budget,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Budget {
    /// Largest graph accepted by canonical coding.
    #[arg(long, global = true, env = "ETW_ISO_LIMIT", default_value_t = 10)]
    iso_limit: usize,

    /// Maximum number of graphs visited by one containment search.
    #[arg(long, global = true, env = "ETW_BFS_BUDGET", default_value_t = 2_000_000)]
    bfs_budget: usize,

    /// Largest graph accepted by the exact width solvers.
    #[arg(long, global = true, env = "ETW_EXACT_LIMIT", default_value_t = 22)]
    exact_limit: usize,

    /// Wall-clock limit in seconds.
    #[arg(long, global = true, env = "ETW_TIMEOUT")]
    timeout: Option<f64>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "ETW_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact width of a graph with a witness layout.
    Compute {
        #[arg(long, value_enum)]
        param: Param,
        /// Fix the first vertex of the layout.
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, default_value = "dp", value_parser = parse_mode)]
        mode: Mode,
        /// Also print the tree-layout built from the witness.
        #[arg(long)]
        tree: bool,
        file: PathBuf,
    },
    /// Cost profile of a given layout or tree-layout.
    Profile {
        /// Cost function: v, vc, e or ec (or pw, tw, cw, etw).
        #[arg(long, default_value = "ec", value_parser = parse_kind)]
        param: CostKind,
        /// Vertices in order, separated by spaces or commas.
        #[arg(long, conflicts_with = "tree_layout")]
        layout: Option<String>,
        /// Tree-layout file; evaluated with the vertex or edge boundary.
        #[arg(long)]
        tree_layout: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "e")]
        lambda: Lambda,
        file: PathBuf,
    },
    /// Member of a named graph family.
    Generate {
        #[arg(long, value_parser = parse_family)]
        family: FamilyId,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Decide whether H is contained in G.
    Contain {
        #[arg(long, value_parser = parse_relation)]
        relation: Relation,
        h: PathBuf,
        g: PathBuf,
    },
    /// Check that a graph is a minimal obstruction for edge-treewidth at most k.
    ObstructionCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        k: u32,
        file: PathBuf,
    },
    /// Largest antichain layer with a member inside the graph.
    UniversalP {
        #[arg(long)]
        max_layer: usize,
        file: PathBuf,
    },
    /// All widths, the block parameter and the inequalities between them.
    Bounds {
        /// Also check the rooted-layout and block-composition bounds.
        #[arg(long)]
        structural: bool,
        file: PathBuf,
    },
    /// Blocks and cut vertices.
    Blocks { file: PathBuf },
    /// Convert between graph, layout and tree-layout representations.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        /// Layout to turn into a tree-layout (default: an optimal one).
        #[arg(long)]
        layout: Option<String>,
        /// Tree-layout file to linearise.
        #[arg(long)]
        tree_layout: Option<PathBuf>,
        file: PathBuf,
    },
    /// Reduce a min-bisection instance to an edge-treewidth instance.
    NpReduce {
        #[arg(long)]
        k: u64,
        file: PathBuf,
    },
    /// Solve both sides of the reduction exactly and compare.
    VerifyReduction {
        #[arg(long)]
        k: u64,
        file: PathBuf,
    },
    /// Exact minimum balanced cut.
    MinBisection { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Etw,
    Tw,
    Pw,
    Cw,
    PBlock,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lambda {
    V,
    E,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Treelayout,
    Layout,
    Dot,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<CostKind, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<FamilyId, String> {
    s.parse()
}

fn parse_relation(s: &str) -> Result<Relation, String> {
    s.parse()
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("invariant violated: {0}")]
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Indeterminate(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl From<etw_core::Error> for Failure {
    fn from(e: etw_core::Error) -> Self {
        if e.is_indeterminate() {
            Failure::Indeterminate(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

/// Text and JSON renderings of one result, plus the exit code it implies.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: 0 }
    }

    fn verdict(holds: bool, text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            code: if holds { 0 } else { 1 },
        }
    }
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_tree_layout(path: &Path) -> Result<TreeLayout, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(TreeLayout::parse(&text)?)
}

fn parse_layout(s: &str, n: usize) -> Result<Layout, Failure> {
    let order = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Failure::Usage(format!("bad vertex `{t}` in layout"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Layout::new(order, n)?)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn param_kind(p: Param) -> Option<CostKind> {
    match p {
        Param::Etw => Some(CostKind::EC),
        Param::Tw => Some(CostKind::VC),
        Param::Pw => Some(CostKind::V),
        Param::Cw => Some(CostKind::E),
        Param::PBlock => None,
    }
}

fn compute(g: &Multigraph, param: Param, root: Option<usize>, mode: Mode, tree: bool, limits: &Limits) -> Result<Outcome, Failure> {
    let Some(kind) = param_kind(param) else {
        if root.is_some() || tree {
            return Err(Failure::Usage("p-block takes neither --root nor --tree".into()));
        }
        let value = p_block(g, limits)?;
        return Ok(Outcome::ok(format!("{value}\n"), json!({ "param": "p-block", "value": value })));
    };
    let cert = width_exact(g, kind, root, mode, limits)?;
    let check = layout_width(g, &cert.witness, kind)?;
    if check != cert.value {
        return Err(Failure::Internal(format!(
            "witness evaluates to {check}, reported {}",
            cert.value
        )));
    }
    let mut text = format!("{}\nlayout {}\n", cert.value, cert.witness);
    let mut out = json!({
        "param": kind.parameter(),
        "value": cert.value,
        "root": root,
        "layout": cert.witness,
    });
    if tree {
        if kind != CostKind::EC {
            return Err(Failure::Usage("--tree is only available for etw".into()));
        }
        let t = layout_to_tree_layout(g, &cert.witness)?;
        text.push_str(&t.to_text());
        out["tree_layout"] = json!(t.to_text());
    }
    Ok(Outcome::ok(text, out))
}

fn profile(
    g: &Multigraph,
    kind: CostKind,
    layout: Option<&str>,
    tree: Option<&Path>,
    lambda: Lambda,
) -> Result<Outcome, Failure> {
    match (layout, tree) {
        (Some(l), None) => {
            let l = parse_layout(l, g.vertex_count())?;
            let p = cost_profile(g, &l, kind)?;
            let max = p.iter().copied().max().unwrap_or(0);
            Ok(Outcome::ok(
                format!("profile {}\nmax {max}\n", join(&p)),
                json!({ "kind": kind.to_string(), "profile": p, "max": max }),
            ))
        }
        (None, Some(path)) => {
            let t = read_tree_layout(path)?;
            let (kind, name) = match lambda {
                Lambda::V => (TreeCostKind::V, "v"),
                Lambda::E => (TreeCostKind::E, "e"),
            };
            let p = tree_cost_profile(g, &t, kind)?;
            Ok(Outcome::ok(
                format!("profile {}\nmax {}\n", join(&p.per_node), p.max),
                json!({ "lambda": name, "profile": p.per_node, "max": p.max }),
            ))
        }
        _ => Err(Failure::Usage("give exactly one of --layout and --tree-layout".into())),
    }
}

fn contain(h: &Multigraph, g: &Multigraph, relation: Relation, limits: &Limits) -> Result<Outcome, Failure> {
    let found = etw_core::contains(h, g, relation, limits)?;
    Ok(Outcome::verdict(found, format!("{found}\n"), json!({ "contained": found })))
}

fn obstruction_check(g: &Multigraph, k: u32, limits: &Limits) -> Result<Outcome, Failure> {
    let minimal = minimality_check(g, k, limits)?;
    let code = etw_core::canonical_code(g, limits.iso_limit)?;
    let mut listed = false;
    for h in fixed_obstruction_set(k)? {
        if h.vertex_count() == g.vertex_count() && etw_core::canonical_code(&h, limits.iso_limit)? == code {
            listed = true;
        }
    }
    if minimal != listed {
        return Err(Failure::Internal(format!(
            "minimality check says {minimal} but membership in the obstruction set says {listed}"
        )));
    }
    Ok(Outcome::verdict(
        minimal,
        format!("{minimal}\n"),
        json!({ "k": k, "minimal": minimal }),
    ))
}

fn universal(g: &Multigraph, max_layer: usize, limits: &Limits) -> Result<Outcome, Failure> {
    let spec = AntichainSpec::default();
    let p = universal_p(g, max_layer, &spec, limits)?;
    let mut text = format!("{}\n", p.value);
    let witness = p.witness.map(|(layer, family)| {
        let index = spec.offset + layer;
        let _ = writeln!(text, "witness {family} {index}");
        json!({ "family": family.name(), "index": index })
    });
    Ok(Outcome::ok(text, json!({ "value": p.value, "witness": witness })))
}

fn bounds(g: &Multigraph, structural: bool, limits: &Limits) -> Result<Outcome, Failure> {
    let r = bound_report(g, limits)?;
    let rows: [(&str, u64); 6] = [
        ("tw", r.tw.into()),
        ("pw", r.pw.into()),
        ("cw", r.cw.into()),
        ("etw", r.etw.into()),
        ("p-block", r.p_block),
        ("max-edge-degree", r.max_edge_degree),
    ];
    let mut text = String::new();
    for (name, value) in rows {
        let _ = writeln!(text, "{name:<28} {value}");
    }
    for v in &r.verdicts {
        let _ = writeln!(text, "{:<28} {}", v.name, v.holds);
    }
    let mut out = json!({
        "tw": r.tw,
        "pw": r.pw,
        "cw": r.cw,
        "etw": r.etw,
        "p_block": r.p_block,
        "max_edge_degree": r.max_edge_degree,
        "verdicts": r.verdicts,
    });
    let mut all_hold = r.all_hold();
    if structural {
        let s = verify_structural_bounds(g, limits)?;
        if let Some(rooted) = &s.rooted {
            let _ = writeln!(text, "{:<28} {}", format!("rooted <= {}", rooted.bound), rooted.holds);
            all_hold &= rooted.holds;
        }
        if let Some(comp) = &s.composition {
            let _ = writeln!(text, "{:<28} {}", format!("composition {} <= {}", comp.cost, comp.bound), comp.holds);
            all_hold &= comp.holds;
        }
        out["structural"] = json!(s);
    }
    if !all_hold {
        eprintln!("counterexample:\n{}", g.to_native());
        eprint!("{text}");
        return Err(Failure::Internal("a bound does not hold".into()));
    }
    Ok(Outcome::ok(text, out))
}

fn blocks(g: &Multigraph) -> Outcome {
    let d = block_decomposition(g);
    let mut text = String::new();
    let mut list = Vec::new();
    for (i, b) in d.blocks.iter().enumerate() {
        let kind = match b.kind {
            BlockKind::Bridge => "bridge",
            BlockKind::Biconnected => "biconnected",
        };
        let _ = writeln!(
            text,
            "block {i} {kind} vertices {} edges {}",
            join(&b.vertices),
            b.graph.edge_copy_count()
        );
        list.push(json!({ "kind": kind, "vertices": b.vertices, "edges": b.graph.edge_copy_count() }));
    }
    let _ = writeln!(text, "cut-vertices {}", join(&d.cut_vertices));
    Outcome::ok(text, json!({ "blocks": list, "cut_vertices": d.cut_vertices }))
}

fn convert(
    g: &Multigraph,
    to: Target,
    layout: Option<&str>,
    tree: Option<&Path>,
    limits: &Limits,
) -> Result<Outcome, Failure> {
    match to {
        Target::Dot => {
            let dot = serialize_graph(g, GraphFormat::Dot);
            Ok(Outcome::ok(dot.clone(), json!({ "dot": dot })))
        }
        Target::Treelayout => {
            let l = match layout {
                Some(l) => parse_layout(l, g.vertex_count())?,
                None => width_exact(g, CostKind::EC, None, Mode::Dp, limits)?.witness,
            };
            let t = layout_to_tree_layout(g, &l)?;
            let text = t.to_text();
            Ok(Outcome::ok(text.clone(), json!({ "tree_layout": text })))
        }
        Target::Layout => {
            let path = tree.ok_or_else(|| Failure::Usage("--to layout needs --tree-layout".into()))?;
            let l = tree_layout_to_layout(g, &read_tree_layout(path)?)?;
            Ok(Outcome::ok(format!("layout {l}\n"), json!({ "layout": l })))
        }
    }
}

fn np_reduce(g: &Multigraph, k: u64) -> Result<Outcome, Failure> {
    let inst = reduce_bisection_to_etw(g, k)?;
    let native = inst.graph.to_native();
    Ok(Outcome::ok(
        format!("# w {}\n{native}", inst.w),
        json!({ "w": inst.w, "graph": native }),
    ))
}

fn check_reduction(g: &Multigraph, k: u64, limits: &Limits) -> Result<Outcome, Failure> {
    let v = verify_reduction(g, k, limits)?;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "k {}\nw {}\nmin-bisection {}\nbisection {}\netw(H) {}\netw {}\nagree {}\n",
        v.k,
        v.w,
        v.min_bisection,
        yes_no(v.bisection_yes),
        v.etw_h,
        yes_no(v.etw_yes),
        v.agree
    );
    if let (Some(width), Some(ok)) = (v.witness_width, v.witness_ok) {
        let _ = writeln!(text, "witness-width {width}\nwitness-ok {ok}");
    }
    if !v.agree || v.witness_ok == Some(false) {
        eprint!("{text}");
        return Err(Failure::Internal("the two sides of the reduction disagree".into()));
    }
    Ok(Outcome::ok(text, json!(v)))
}

fn bisection(g: &Multigraph) -> Result<Outcome, Failure> {
    let b = min_bisection_exact(g)?;
    Ok(Outcome::ok(
        format!("{}\nside {}\n", b.value, join(&b.side)),
        json!(b),
    ))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let budget = &cli.budget;
    let mut limits = Limits {
        exact_limit: budget.exact_limit,
        iso_limit: budget.iso_limit,
        bfs_budget: budget.bfs_budget,
        ..Limits::default()
    };
    if let Some(secs) = budget.timeout {
        let d = Duration::try_from_secs_f64(secs).map_err(|e| Failure::Usage(format!("--timeout: {e}")))?;
        limits = limits.with_timeout(d);
    }
    match cli.command {
        Command::Compute { param, root, mode, tree, file } => {
            compute(&read_graph(&file)?, param, root, mode, tree, &limits)
        }
        Command::Profile { param, layout, tree_layout, lambda, file } => {
            profile(&read_graph(&file)?, param, layout.as_deref(), tree_layout.as_deref(), lambda)
        }
        Command::Generate { family, index, dot } => {
            let g = generate(family, index)?;
            let format = if dot { GraphFormat::Dot } else { GraphFormat::Native };
            let text = serialize_graph(&g, format);
            let out = if dot {
                json!({ "dot": text })
            } else {
                json!({ "n": g.vertex_count(), "edges": g.edges().collect::<Vec<_>>() })
            };
            Ok(Outcome::ok(text, out))
        }
        Command::Contain { relation, h, g } => contain(&read_graph(&h)?, &read_graph(&g)?, relation, &limits),
        Command::ObstructionCheck { k, file } => obstruction_check(&read_graph(&file)?, k, &limits),
        Command::UniversalP { max_layer, file } => universal(&read_graph(&file)?, max_layer, &limits),
        Command::Bounds { structural, file } => bounds(&read_graph(&file)?, structural, &limits),
        Command::Blocks { file } => Ok(blocks(&read_graph(&file)?)),
        Command::Convert { to, layout, tree_layout, file } => {
            convert(&read_graph(&file)?, to, layout.as_deref(), tree_layout.as_deref(), &limits)
        }
        Command::NpReduce { k, file } => np_reduce(&read_graph(&file)?, k),
        Command::VerifyReduction { k, file } => check_reduction(&read_graph(&file)?, k, &limits),
        Command::MinBisection { file } => bisection(&read_graph(&file)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.budget.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                println!("{}", outcome.json);
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
