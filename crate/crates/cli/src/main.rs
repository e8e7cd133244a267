use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kempe_core::coloring::{all_chains, apply_switch, enumerate_colorings};
use kempe_core::families::{self, CensusFilter, FamilyKind, FamilySpec};
use kempe_core::graph::find_edge_cuts;
use kempe_core::{
    compose, count_classes, cut_color_check, decompose_fully, decompose_to_3connected,
    verify_multiplicativity, ColorPair, EdgeColoring, HPlan, KempeSpace, Method, MultiGraph, Plan,
    Switch, YPlan,
};

#[derive(Parser)]
#[command(name = "kempe", version, about = "Edge-Kempe equivalence classes of cubic graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fixed,
    Raw,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Fixed => Method::FixedVertex,
            MethodArg::Raw => Method::Raw,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Y,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    G6,
}

#[derive(Args, Clone, Copy)]
struct Filters {
    /// Include graphs with parallel edges.
    #[arg(long)]
    multigraphs: bool,
    #[arg(long, conflicts_with = "nonbipartite")]
    bipartite: bool,
    #[arg(long)]
    nonbipartite: bool,
    #[arg(long, conflicts_with = "nonplanar")]
    planar: bool,
    #[arg(long)]
    nonplanar: bool,
}

impl From<Filters> for CensusFilter {
    fn from(f: Filters) -> Self {
        let pick = |yes: bool, no: bool| match (yes, no) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        };
        CensusFilter {
            multigraphs: f.multigraphs,
            bipartite: pick(f.bipartite, f.nonbipartite),
            planar: pick(f.planar, f.nonplanar),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print K'(G, n).
    Count {
        graph: String,
        #[arg(long, default_value_t = 3)]
        n: u8,
        #[arg(long, value_enum, default_value = "fixed")]
        method: MethodArg,
    },
    /// Class report as JSON, or the switch graph as DOT.
    Classes {
        graph: String,
        #[arg(long, default_value_t = 3)]
        n: u8,
        #[arg(long)]
        dot: bool,
    },
    /// List the Kempe chains of a color pair.
    Chains {
        graph: String,
        /// Coloring file or inline colors (`0,1,2,...`).
        coloring: String,
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 3)]
        n: u8,
    },
    /// Apply one switch and print the new coloring.
    Switch {
        graph: String,
        coloring: String,
        #[arg(long)]
        pair: String,
        #[arg(long)]
        seed: usize,
        #[arg(long, default_value_t = 3)]
        n: u8,
    },
    /// Compose two graphs and print the result.
    Compose {
        #[arg(long, value_enum)]
        op: Op,
        g1: String,
        g2: String,
        /// `y v1 v2 x1:y1 x2:y2 x3:y3` or `h x y s11:s21 s12:s22`.
        #[arg(long)]
        plan: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
    /// Decomposition tree along nontrivial 2-edge cuts, as JSON.
    Decompose {
        graph: String,
        /// Also split along nontrivial 3-edge cuts.
        #[arg(long)]
        full: bool,
    },
    /// Print a member of a named family.
    Family {
        kind: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Base graph for `y_power_of`.
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
    /// Stream connected cubic graphs up to an order.
    Census {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        filters: Filters,
    },
    /// Run a property check; exits 1 on failure.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// K' values observed over the census, with first witnesses.
    Spectrum {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        filters: Filters,
    },
}

#[derive(Subcommand)]
enum Check {
    /// K' of a composite equals the product, with the class bijection.
    Multiplicativity {
        g1: String,
        g2: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        plan: Option<String>,
    },
    /// 2-edge cuts monochromatic, 3-edge cuts rainbow, under every coloring.
    Parity { graph: String },
    /// Raw and fixed-vertex class counts agree.
    Fix { graph: String },
    /// K' of the ladder and prism families.
    Families {
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
}

fn read_graph(arg: &str) -> Result<MultiGraph> {
    if let Some(rest) = arg.strip_prefix("family://") {
        let (kind, query) = rest.split_once('?').unwrap_or((rest, ""));
        let mut k = 3;
        let mut base = None;
        for kv in query.split('&').filter(|s| !s.is_empty()) {
            match kv.split_once('=') {
                Some(("k", v)) => k = v.parse().with_context(|| format!("bad k `{v}`"))?,
                Some(("base", v)) => base = Some(read_base(v)?),
                _ => bail!("unknown family parameter `{kv}`"),
            }
        }
        if kind == "one_class_12" {
            return Ok(families::one_class_witness());
        }
        let spec = FamilySpec {
            kind: kind.parse::<FamilyKind>()?,
            k,
            base,
        };
        return Ok(families::generate(&spec)?);
    }
    if let Some(g6) = arg.strip_prefix("g6:") {
        return Ok(MultiGraph::from_graph6(g6)?);
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("cannot read `{arg}`"))?;
    MultiGraph::parse_any(&text).with_context(|| format!("cannot parse `{arg}`"))
}

/// A bare family name, or any graph argument.
fn read_base(arg: &str) -> Result<MultiGraph> {
    if !Path::new(arg).exists() && arg.parse::<FamilyKind>().is_ok() {
        return read_graph(&format!("family://{arg}"));
    }
    read_graph(arg)
}

fn read_coloring(g: &MultiGraph, arg: &str, palette: u8) -> Result<EdgeColoring> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("cannot read `{arg}`"))?
    } else {
        arg.to_string()
    };
    Ok(EdgeColoring::parse_text(g, palette, &text)?)
}

fn read_pair(arg: &str) -> Result<ColorPair> {
    let (a, b) = arg
        .split_once(',')
        .ok_or_else(|| anyhow!("pair must look like `a,b`, got `{arg}`"))?;
    Ok(ColorPair::new(a.trim().parse()?, b.trim().parse()?)?)
}

fn read_plan(g1: &MultiGraph, g2: &MultiGraph, op: Op, plan: Option<&str>) -> Result<Plan> {
    let plan = match plan {
        Some(text) => text.parse::<Plan>()?,
        None if op == Op::Y => Plan::Y(YPlan::default_for(g1, g2)?),
        None => Plan::H(HPlan::default_for(g1, g2)?),
    };
    if plan.is_y() != (op == Op::Y) {
        bail!("plan `{plan}` does not match --op");
    }
    plan.validate(g1, g2)?;
    Ok(plan)
}

fn format_graph(g: &MultiGraph, format: GraphFormat) -> Result<String> {
    Ok(match format {
        GraphFormat::Text => g.to_text(),
        GraphFormat::G6 => g.to_graph6()? + "\n",
    })
}

/// `Ok(true)` on success, `Ok(false)` when a verification fails.
fn run(command: Command, out: &mut String) -> Result<bool> {
    match command {
        Command::Count { graph, n, method } => {
            let g = read_graph(&graph)?;
            let report = count_classes(&g, n, method.into())?;
            writeln!(out, "{}", report.class_count)?;
        }
        Command::Classes { graph, n, dot } => {
            let g = read_graph(&graph)?;
            let space = KempeSpace::build(&g, n, Method::FixedVertex)?;
            if dot {
                out.push_str(&space.to_dot());
            } else {
                writeln!(out, "{}", space.report().to_json(&g, n))?;
            }
        }
        Command::Chains { graph, coloring, pair, n } => {
            let g = read_graph(&graph)?;
            let c = read_coloring(&g, &coloring, n)?;
            for chain in all_chains(&g, &c, read_pair(&pair)?) {
                let kind = if chain.is_cycle(&g, &c) { "cycle" } else { "path" };
                let edges: Vec<String> = chain.edges.iter().map(usize::to_string).collect();
                writeln!(out, "{} {kind} {}", chain.id(), edges.join(" "))?;
            }
        }
        Command::Switch { graph, coloring, pair, seed, n } => {
            let g = read_graph(&graph)?;
            let c = read_coloring(&g, &coloring, n)?;
            let d = apply_switch(&g, &c, Switch::new(read_pair(&pair)?, seed))?;
            writeln!(out, "{}", d.to_text())?;
        }
        Command::Compose { op, g1, g2, plan, format } => {
            let (g1, g2) = (read_graph(&g1)?, read_graph(&g2)?);
            let plan = read_plan(&g1, &g2, op, plan.as_deref())?;
            out.push_str(&format_graph(&compose(&g1, &g2, &plan)?, format)?);
        }
        Command::Decompose { graph, full } => {
            let g = read_graph(&graph)?;
            let tree = if full { decompose_fully(&g)? } else { decompose_to_3connected(&g)? };
            writeln!(out, "{}", tree.to_json())?;
        }
        Command::Family { kind, k, base, format } => {
            let spec = FamilySpec {
                kind: kind.parse()?,
                k,
                base: base.as_deref().map(read_base).transpose()?,
            };
            out.push_str(&format_graph(&families::generate(&spec)?, format)?);
        }
        Command::Census { max_n, filters } => {
            for g in families::census(max_n, &filters.into())? {
                if g.is_simple() {
                    writeln!(out, "{}", g.to_graph6()?)?;
                } else {
                    writeln!(out, "{}", g.to_text())?;
                }
            }
        }
        Command::Spectrum { max_n, filters } => {
            let spectrum = families::kprime_spectrum(max_n, &filters.into())?;
            writeln!(out, "{}", spectrum.to_json())?;
        }
        Command::Verify { check } => return verify(check, out),
    }
    Ok(true)
}

fn verify(check: Check, out: &mut String) -> Result<bool> {
    match check {
        Check::Multiplicativity { g1, g2, op, plan } => {
            let (g1, g2) = (read_graph(&g1)?, read_graph(&g2)?);
            let plan = read_plan(&g1, &g2, op, plan.as_deref())?;
            let report = verify_multiplicativity(&g1, &g2, &plan)?;
            let verdict = if report.passed() { "pass" } else { "fail" };
            writeln!(out, "{verdict}: {} * {} = {} (composite K' = {})", report.a, report.b, report.a * report.b, report.k)?;
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
            Ok(report.passed())
        }
        Check::Parity { graph } => {
            let g = read_graph(&graph)?;
            let mut cuts = find_edge_cuts(&g, 2, false)?;
            cuts.extend(find_edge_cuts(&g, 3, false)?);
            let colorings = enumerate_colorings(&g, 3, None)?;
            for c in &colorings {
                for cut in &cuts {
                    if let Err(e) = cut_color_check(c, cut) {
                        writeln!(out, "fail: {e}; coloring {}", c.to_text())?;
                        return Ok(false);
                    }
                }
            }
            writeln!(out, "pass: {} colorings x {} cuts", colorings.len(), cuts.len())?;
            Ok(true)
        }
        Check::Fix { graph } => {
            let g = read_graph(&graph)?;
            let raw = count_classes(&g, 3, Method::Raw)?.class_count;
            let fixed = count_classes(&g, 3, Method::FixedVertex)?.class_count;
            let verdict = if raw == fixed { "pass" } else { "fail" };
            writeln!(out, "{verdict}: raw {raw}, fixed-vertex {fixed}")?;
            Ok(raw == fixed)
        }
        Check::Families { max_k } => {
            let mut ok = true;
            let mut row = |name: String, g: MultiGraph, expected: usize| -> Result<()> {
                let k = count_classes(&g, 3, Method::FixedVertex)?.class_count;
                let verdict = if k == expected { "pass" } else { "fail" };
                ok &= k == expected;
                writeln!(out, "{verdict}: K'({name}) = {k}, expected {expected}")?;
                Ok(())
            };
            for k in 3..=max_k {
                row(format!("ML_{k}"), families::moebius_ladder(k)?, if k % 2 == 1 { 2 } else { 1 })?;
            }
            for k in 3..=max_k {
                row(format!("Pr_{k}"), families::prism(k)?, 1)?;
            }
            for k in 2..=max_k.min(4) {
                row(format!("CPr_{k}"), families::crossed_prism(k)?, 1)?;
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(passed) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
