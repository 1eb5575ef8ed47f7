//! Command-line driver. [`run`] is pure apart from reading input files, so
//! tests can call it directly.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use cubulate::charge::{
    classify_vcs_with, euler_number, is_chargeless_manifold_with, ChargeOptions, ChargeVerdict, SelfGluing,
};
use cubulate::cube_complex::{check_npc, specialness_report, CubeComplex};
use cubulate::decomposition::{
    helly_intersection, interior_blocks, modify_jsj, plan_surface_assembly, HellyOutcome, TorusCounts,
};
use cubulate::generate::{random_intersecting_subtrees, random_tree};
use cubulate::homology::presentation_h1;
use cubulate::io::{parse_complex, parse_manifold, parse_wallspace, serialize_complex};
use cubulate::manifold::{audit_torus_slopes, framing_curves, Block, ManifoldGraph, Slope};
use cubulate::wallspace::{dual_cube_complex_with_budget, torus_line_wallspace, DualComplex, DEFAULT_BUDGET};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cubulate", version, about = "Chargeless checks for 3-manifolds and special cube complexes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Gluing {
    PerEnd,
    PerTorus,
}

impl From<Gluing> for ChargeOptions {
    fn from(g: Gluing) -> Self {
        ChargeOptions {
            self_gluing: match g {
                Gluing::PerEnd => SelfGluing::PerEnd,
                Gluing::PerTorus => SelfGluing::PerTorus,
            },
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a manifold (.m3), cube complex (.cc) or wallspace (.ws) file.
    Validate { file: PathBuf },
    /// Decide virtual compact specialness from geometry or charges.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "per-end")]
        self_gluing: Gluing,
    },
    /// Charge verdict for every interior block after modification.
    Chargeless {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "per-end")]
        self_gluing: Gluing,
    },
    /// First homology of Seifert blocks.
    Homology {
        file: PathBuf,
        #[arg(long)]
        block: Option<String>,
    },
    /// Euler numbers of closed blocks and of interior blocks filled along adjacent fibers.
    Euler {
        file: PathBuf,
        #[arg(long)]
        block: Option<String>,
    },
    /// Dual cube complex of a wallspace file.
    DualCube {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Link condition and hyperplane pathologies of a cube complex file.
    SpecialCheck { file: PathBuf },
    /// Wallspace of lines of the given slopes on the torus, and its dual.
    TorusWalls {
        /// Slope as `p,q`; repeat for several.
        #[arg(long = "slope", required = true, value_parser = parse_slope)]
        slopes: Vec<Slope>,
        #[arg(long, default_value_t = 1)]
        window: i64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Random tree with pairwise meeting subtrees and their common vertex.
    HellyDemo {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        vertices: usize,
        #[arg(long, default_value_t = 4)]
        subtrees: usize,
    },
    /// Copies of the core surface and caps for tori given as `r,s,a,b`.
    AssemblyPlan {
        #[arg(required = true, value_parser = parse_counts)]
        tori: Vec<TorusCounts>,
    },
}

fn parse_ints(s: &str, n: usize) -> Result<Vec<i64>, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("not an integer: {x}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != n {
        return Err(format!("expected {n} comma separated integers, got {}", parts.len()));
    }
    Ok(parts)
}

fn parse_slope(s: &str) -> Result<Slope, String> {
    let v = parse_ints(s, 2)?;
    Slope::new(v[0], v[1]).map_err(|e| e.to_string())
}

fn parse_counts(s: &str) -> Result<TorusCounts, String> {
    let v = parse_ints(s, 4)?;
    let u = |x: i64| u64::try_from(x).map_err(|_| format!("negative count {x}"));
    Ok(TorusCounts {
        r: u(v[0])?,
        s: u(v[1])?,
        a: u(v[2])?,
        b: u(v[3])?,
    })
}

/// Exit code and the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: i32, text: String, json: Value) -> Self {
        Self { code, text, json }
    }
}

/// Runs the command line `argv`, whose first element is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("values serialize");
                s.push('\n');
                s
            } else {
                r.text
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: {
                let msg = format!("{e:#}");
                if msg.contains("error[") {
                    format!("{msg}\n")
                } else {
                    format!("error: {msg}\n")
                }
            },
        },
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_manifold(path: &Path) -> anyhow::Result<ManifoldGraph> {
    parse_manifold(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_complex(path: &Path) -> anyhow::Result<CubeComplex> {
    parse_complex(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn execute(cmd: &Command) -> anyhow::Result<Report> {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Classify { file, self_gluing } => classify(file, (*self_gluing).into()),
        Command::Chargeless { file, self_gluing } => chargeless(file, (*self_gluing).into()),
        Command::Homology { file, block } => homology(file, block.as_deref()),
        Command::Euler { file, block } => euler(file, block.as_deref()),
        Command::DualCube { file, budget } => {
            let ws = parse_wallspace(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let dual = dual_cube_complex_with_budget(&ws, *budget)?;
            Ok(dual_report(&dual, String::new(), json!({})))
        }
        Command::SpecialCheck { file } => special_check(file),
        Command::TorusWalls { slopes, window, budget } => torus_walls(slopes, *window, *budget),
        Command::HellyDemo { seed, vertices, subtrees } => helly_demo(*seed, *vertices, *subtrees),
        Command::AssemblyPlan { tori } => assembly_plan(tori),
    }
}

fn validate(file: &Path) -> anyhow::Result<Report> {
    match file.extension().and_then(|e| e.to_str()) {
        Some("cc") => {
            let c = load_complex(file)?;
            let text = format!(
                "ok: {} vertices, {} cubes, dimension {}\n",
                c.vertices().len(),
                c.cubes().len(),
                c.dimension()
            );
            let json = json!({"valid": true, "vertices": c.vertices().len(), "cubes": c.cubes().len(), "dimension": c.dimension()});
            Ok(Report::new(EXIT_OK, text, json))
        }
        Some("ws") => {
            let ws = parse_wallspace(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let text = format!("ok: {} chambers, {} walls\n", ws.chambers(), ws.walls().len());
            let json = json!({"valid": true, "chambers": ws.chambers(), "walls": ws.walls().len()});
            Ok(Report::new(EXIT_OK, text, json))
        }
        _ => {
            let m = load_manifold(file)?;
            let mut text = format!(
                "ok: {} blocks, {} tori, {} boundary tori\n",
                m.blocks.len(),
                m.tori.len(),
                m.boundary.len()
            );
            let audits = audit_torus_slopes(&m, &framing_curves(&m))?;
            let mut flagged = Vec::new();
            for a in audits.iter().filter(|a| a.flagged) {
                let _ = writeln!(text, "warning: torus {} carries {} framing slopes", a.torus, a.count());
                flagged.push(a.torus.to_string());
            }
            let json = json!({
                "valid": true,
                "blocks": m.blocks.len(),
                "tori": m.tori.len(),
                "boundary": m.boundary.len(),
                "flagged_tori": flagged,
            });
            Ok(Report::new(EXIT_OK, text, json))
        }
    }
}

fn ints(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn verdict_json(v: &ChargeVerdict) -> Value {
    json!({
        "block": v.block,
        "ends": v.ends.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "fibers": v.fibers.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "chargeless": v.chargeless,
        "witness": v.witness.as_deref().map(ints),
        "obstruction": v.obstruction.map(|i| v.ends[i].to_string()),
        "filled_euler": v.filled_euler.as_ref().map(ToString::to_string),
    })
}

fn verdict_lines(out: &mut String, verdicts: &[ChargeVerdict]) {
    for v in verdicts {
        let _ = writeln!(out, "  {v}");
        let fibers: Vec<String> = v.fibers.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "    adjacent fibers {}", fibers.join(" "));
        if let Some(e) = &v.filled_euler {
            let _ = writeln!(out, "    filled Euler number {e}");
        }
    }
}

fn classify(file: &Path, opts: ChargeOptions) -> anyhow::Result<Report> {
    let m = load_manifold(file)?;
    let v = classify_vcs_with(&m, opts)?;
    let mut text = format!("{v}\n");
    if let Some(modified) = &v.modified {
        let added = modified.blocks.len() - m.blocks.len();
        if added > 0 {
            let _ = writeln!(text, "modified decomposition adds {added} thin blocks");
        }
        if v.verdicts.is_empty() {
            let _ = writeln!(text, "no interior blocks");
        }
    }
    verdict_lines(&mut text, &v.verdicts);
    let json = json!({
        "vcs": v.vcs,
        "reason": format!("{:?}", v.reason),
        "geometry": v.geometry.map(|g| g.to_string()),
        "failing": v.failing,
        "blocks": v.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(if v.vcs { EXIT_OK } else { EXIT_NEGATIVE }, text, json))
}

fn chargeless(file: &Path, opts: ChargeOptions) -> anyhow::Result<Report> {
    let m = load_manifold(file)?;
    let modified = modify_jsj(&m);
    let charge = is_chargeless_manifold_with(&modified, opts)?;
    let mut text = format!("chargeless: {}\n", if charge.chargeless { "yes" } else { "no" });
    verdict_lines(&mut text, &charge.verdicts);
    let json = json!({
        "chargeless": charge.chargeless,
        "blocks": charge.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(if charge.chargeless { EXIT_OK } else { EXIT_NEGATIVE }, text, json))
}

fn selected<'a>(m: &'a ManifoldGraph, block: Option<&str>) -> anyhow::Result<Vec<(&'a String, &'a Block)>> {
    match block {
        Some(id) => {
            let (k, b) = m.blocks.get_key_value(id).ok_or_else(|| anyhow!("no block named {id}"))?;
            Ok(vec![(k, b)])
        }
        None => Ok(m.blocks.iter().collect()),
    }
}

fn homology(file: &Path, block: Option<&str>) -> anyhow::Result<Report> {
    let m = load_manifold(file)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (id, b) in selected(&m, block)? {
        let Some(s) = b.as_seifert() else {
            if block.is_some() {
                bail!("block {id} is hyperbolic");
            }
            continue;
        };
        let pres = presentation_h1(s);
        let group = pres.group();
        let _ = writeln!(text, "block {id}: H1 = {group}  (generators {})", pres.labels.join(" "));
        rows.push(json!({
            "block": id,
            "group": group.to_string(),
            "free_rank": group.free_rank,
            "torsion": ints(&group.torsion),
        }));
    }
    Ok(Report::new(EXIT_OK, text, json!({ "blocks": rows })))
}

fn euler(file: &Path, block: Option<&str>) -> anyhow::Result<Report> {
    let m = load_manifold(file)?;
    let modified = modify_jsj(&m);
    let interior = interior_blocks(&modified);
    let charge = is_chargeless_manifold_with(&modified, ChargeOptions::default())?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (id, b) in selected(&m, block)? {
        let Some(s) = b.as_seifert() else {
            continue;
        };
        let (kind, value) = if s.is_closed() {
            ("closed", Some(euler_number(s)?.to_string()))
        } else if interior.contains(id) {
            let v = charge.verdicts.iter().find(|v| &v.block == id);
            ("filled", v.and_then(|v| v.filled_euler.as_ref()).map(ToString::to_string))
        } else {
            ("bounded", None)
        };
        match (&value, kind) {
            (Some(e), "closed") => {
                let _ = writeln!(text, "block {id}: e = {e}");
            }
            (Some(e), _) => {
                let _ = writeln!(text, "block {id}: e = {e} after filling along adjacent fibers");
            }
            (None, "filled") => {
                let _ = writeln!(text, "block {id}: no filling; unit weights do not solve the charge equation");
            }
            (None, _) => {
                let _ = writeln!(text, "block {id}: undefined, {} boundary tori", s.num_boundary);
            }
        }
        rows.push(json!({"block": id, "kind": kind, "euler": value}));
    }
    Ok(Report::new(EXIT_OK, text, json!({ "blocks": rows })))
}

fn dual_report(dual: &DualComplex, mut text: String, mut json: Value) -> Report {
    let c = &dual.complex;
    let hyperplanes = cubulate::cube_complex::hyperplanes(c).len();
    let maximal = c.maximal_cubes().len();
    let _ = writeln!(
        text,
        "dual: {} vertices, {} edges, {} maximal cubes, dimension {}, {} hyperplanes",
        c.vertices().len(),
        c.edges().len(),
        maximal,
        c.dimension(),
        hyperplanes
    );
    text.push_str(&serialize_complex(c));
    json["dual"] = json!({
        "vertices": c.vertices().len(),
        "edges": c.edges().len(),
        "maximal_cubes": maximal,
        "dimension": c.dimension(),
        "hyperplanes": hyperplanes,
        "complex": serialize_complex(c),
    });
    Report::new(EXIT_OK, text, json)
}

fn special_check(file: &Path) -> anyhow::Result<Report> {
    let c = load_complex(file)?;
    let link = check_npc(&c)?;
    let report = specialness_report(&c);
    let mut text = String::new();
    let _ = writeln!(text, "nonpositively curved: {}", if link.is_npc() { "yes" } else { "no" });
    for issue in &link.issues {
        let _ = writeln!(text, "  link: {}", issue.describe(&c));
    }
    let edge = |&(u, v): &(usize, usize)| format!("{}-{}", c.vertices()[u], c.vertices()[v]);
    let mut flagged = Vec::new();
    for (h, r) in report.hyperplanes.iter().zip(&report.per_hyperplane) {
        let mut kinds = Vec::new();
        if r.one_sided {
            kinds.push("one-sided");
        }
        if r.self_intersecting {
            kinds.push("self-intersecting");
        }
        if r.self_osculating {
            kinds.push("self-osculating");
        }
        let edges: Vec<String> = h.edges.iter().map(edge).collect();
        let mut line = format!("hyperplane {} [{}]", h.id, edges.join(" "));
        if !kinds.is_empty() {
            let _ = write!(line, ": {}", kinds.join(", "));
        } else if r.indirect_osculating {
            line.push_str(": indirect self-osculation (allowed)");
        }
        let _ = writeln!(text, "{line}");
        flagged.push(json!({
            "id": h.id,
            "edges": edges,
            "pathologies": kinds,
            "indirect_osculating": r.indirect_osculating,
        }));
    }
    for &(a, b) in &report.inter_osculating {
        let _ = writeln!(text, "hyperplanes {a} and {b}: inter-osculating");
    }
    let special = link.is_npc() && report.special;
    let _ = writeln!(text, "special: {}", if special { "yes" } else { "no" });
    let json = json!({
        "npc": link.is_npc(),
        "link_issues": link.issues.iter().map(|i| i.describe(&c)).collect::<Vec<_>>(),
        "hyperplanes": flagged,
        "inter_osculating": report.inter_osculating,
        "pathologies": report.pathologies().iter().map(ToString::to_string).collect::<BTreeSet<_>>(),
        "special": special,
    });
    Ok(Report::new(if special { EXIT_OK } else { EXIT_NEGATIVE }, text, json))
}

fn torus_walls(slopes: &[Slope], window: i64, budget: usize) -> anyhow::Result<Report> {
    let arr = torus_line_wallspace(slopes, window)?;
    let dual = dual_cube_complex_with_budget(&arr.wallspace, budget)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} lines in the box of half side {}, {} chambers",
        arr.lines.len(),
        arr.radius,
        arr.wallspace.chambers()
    );
    for w in arr.wallspace.walls() {
        let _ = writeln!(text, "wall {}: {} | {} chambers", w.id, w.u.len(), w.v.len());
    }
    let json = json!({
        "lines": arr.lines.iter().map(|l| json!({"slope": l.slope.to_string(), "offset": l.offset})).collect::<Vec<_>>(),
        "radius": arr.radius.to_string(),
        "chambers": arr.wallspace.chambers(),
    });
    Ok(dual_report(&dual, text, json))
}

fn helly_demo(seed: u64, vertices: usize, count: usize) -> anyhow::Result<Report> {
    if vertices == 0 {
        bail!("a tree needs at least one vertex");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(&mut rng, vertices);
    let subtrees = random_intersecting_subtrees(&mut rng, &tree, count);
    let mut text = String::new();
    let mut edges = Vec::new();
    for u in 0..tree.len() {
        for &v in tree.neighbors(u).iter().filter(|&&v| v > u) {
            edges.push((u, v));
        }
    }
    let shown: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let _ = writeln!(text, "tree on {vertices} vertices: {}", shown.join(" "));
    for (i, s) in subtrees.iter().enumerate() {
        let vs: Vec<String> = s.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "subtree {i}: {{{}}}", vs.join(", "));
    }
    let common = match helly_intersection(&tree, &subtrees)? {
        HellyOutcome::Common(v) => {
            let _ = writeln!(text, "common vertex: {v}");
            Some(v)
        }
        HellyOutcome::Disjoint(i, j) => {
            let _ = writeln!(text, "subtrees {i} and {j} are disjoint");
            None
        }
    };
    let json = json!({
        "seed": seed,
        "edges": edges,
        "subtrees": subtrees,
        "common": common,
    });
    Ok(Report::new(EXIT_OK, text, json))
}

fn assembly_plan(tori: &[TorusCounts]) -> anyhow::Result<Report> {
    let plan = plan_surface_assembly(tori)?;
    let mut text = format!("core surface copies: {}\n", plan.ell);
    for (i, (alpha, beta)) in plan.caps.iter().enumerate() {
        let _ = writeln!(text, "torus {i}: {alpha} caps on the first side, {beta} on the second");
    }
    let json = json!({"ell": plan.ell, "caps": plan.caps});
    Ok(Report::new(EXIT_OK, text, json))
}
