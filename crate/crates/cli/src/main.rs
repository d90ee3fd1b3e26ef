use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use symquandle::algebra::{
    enumerate_good_involutions, make_regular_action, make_trivial_action, parse_involution_spec,
    parse_quandle_spec, verify_good_involution, verify_quandle, FiniteQuandle, OpTable, QuandleAction,
    SymmetricQuandle,
};
use symquandle::catalog;
use symquandle::coloring::{
    brute_force_all_with, build_constraints, first_solution, is_monochromatic_fixed_point, solve_all_with,
    DEFAULT_BRUTE_FORCE_CAP,
};
use symquandle::concordance::{coloring_obstruction, cocycle_obstruction, kinoshita_check};
use symquandle::diagram::{count_components, euler_characteristic, parse_chd, surface_components, ChDiagram, Smoothing};
use symquandle::invariant::{implicit_entries, parse_cocycle, parse_triples, phi_multiset};
use symquandle::simplify::{is_admissible_with, Admissibility, DEFAULT_BUDGET};
use symquandle::Exec;

/// Environment variable naming a directory of `.chd` files searched before
/// the bundled catalog.
const CATALOG_ENV: &str = "SYMQ_CATALOG";

#[derive(Parser)]
#[command(name = "symq", version, about = "Symmetric quandle colorings of ch-diagrams")]
struct Cli {
    /// Exit with status 1 on negative verdicts.
    #[arg(long, global = true)]
    strict: bool,
    /// Suppress the human summary on standard error.
    #[arg(long, global = true)]
    json_only: bool,
    /// Run data-parallel loops sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quandle axioms (and optionally a good involution).
    VerifyQuandle {
        #[command(flatten)]
        quandle: QuandleArgs,
        #[arg(long)]
        involution: Option<String>,
    },
    /// List every good involution of a quandle.
    Involutions {
        #[command(flatten)]
        quandle: QuandleArgs,
    },
    /// Count, list or find colorings of a ch-diagram.
    Color {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long, conflicts_with_all = ["list", "first"])]
        count: bool,
        #[arg(long, conflicts_with = "first")]
        list: bool,
        #[arg(long)]
        first: bool,
        /// Use the exhaustive oracle instead of the solver.
        #[arg(long)]
        brute_force: bool,
        /// State limit for the exhaustive oracle.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: u128,
    },
    /// Smooth every marked vertex.
    Smooth {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
    },
    /// Decide whether both smoothings are unlinks.
    Admissible {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Euler characteristic and surface components.
    Euler {
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Weight multiset from triple-point data and a cocycle table.
    Weights {
        #[arg(long)]
        triples: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Order of X.
        #[arg(long)]
        x_order: usize,
        /// Order of Y.
        #[arg(long, default_value_t = 1)]
        y_order: usize,
    },
    /// Test whether `upper ≻ lower` is obstructed.
    Obstruct {
        /// Catalog name or .chd file.
        #[arg(long)]
        upper: Option<String>,
        #[arg(long)]
        lower: Option<String>,
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long, requires_all = ["lower_triples", "cocycle", "x_order"], conflicts_with_all = ["upper", "lower"])]
        upper_triples: Option<PathBuf>,
        #[arg(long)]
        lower_triples: Option<PathBuf>,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long)]
        x_order: Option<usize>,
        #[arg(long, default_value_t = 1)]
        y_order: usize,
    },
    /// List catalog entries, or print one.
    Catalog {
        name: Option<String>,
    },
}

#[derive(Args)]
struct QuandleArgs {
    /// `dihedral:<n>` or `trivial:<n>`.
    #[arg(long, conflicts_with = "table")]
    quandle: Option<String>,
    /// Operation table file, row `a` holding `a▷b` for each `b`.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct SymArgs {
    #[command(flatten)]
    quandle: QuandleArgs,
    /// `identity`, `antipodal` or `table:<ρ(0)>,<ρ(1)>,...`.
    #[arg(long, default_value = "identity")]
    involution: String,
    #[arg(long, value_enum, default_value = "trivial")]
    regions: RegionsArg,
}

#[derive(Args)]
struct DiagramArgs {
    #[arg(long, conflicts_with = "catalog")]
    diagram: Option<PathBuf>,
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionsArg {
    /// One region color.
    Trivial,
    /// Y = X acting by the quandle operation.
    Regular,
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs_digest: String,
    result: Value,
    warnings: Vec<String>,
}

struct Ctx {
    digest: Sha256,
    warnings: Vec<String>,
    summary: Vec<String>,
    negative: bool,
    exec: Exec,
}

impl Ctx {
    fn input(&mut self, key: &str, value: &[u8]) {
        self.digest.update((key.len() as u64).to_le_bytes());
        self.digest.update(key.as_bytes());
        self.digest.update((value.len() as u64).to_le_bytes());
        self.digest.update(value);
    }

    fn read(&mut self, key: &str, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.input(key, text.as_bytes());
        Ok(text)
    }

    fn say(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }
}

fn load_table(ctx: &mut Ctx, q: &QuandleArgs) -> Result<OpTable> {
    match (&q.quandle, &q.table) {
        (Some(spec), None) => {
            ctx.input("quandle", spec.as_bytes());
            Ok(parse_quandle_spec(spec)?.table().clone())
        }
        (None, Some(path)) => {
            let text = ctx.read("table", path)?;
            Ok(OpTable::parse(&text)?)
        }
        _ => bail!("give exactly one of --quandle or --table"),
    }
}

fn load_quandle(ctx: &mut Ctx, q: &QuandleArgs) -> Result<FiniteQuandle> {
    Ok(FiniteQuandle::new(load_table(ctx, q)?)?)
}

fn load_sym(ctx: &mut Ctx, s: &SymArgs) -> Result<(SymmetricQuandle, QuandleAction)> {
    let q = load_quandle(ctx, &s.quandle)?;
    ctx.input("involution", s.involution.as_bytes());
    let rho = parse_involution_spec(&s.involution, q.order())?;
    let sq = SymmetricQuandle::new(q, rho)?;
    let y = match s.regions {
        RegionsArg::Trivial => make_trivial_action(&sq),
        RegionsArg::Regular => {
            ctx.input("regions", b"regular");
            make_regular_action(&sq)
        }
    };
    Ok((sq, y))
}

fn load_named(ctx: &mut Ctx, key: &str, name: &str) -> Result<ChDiagram> {
    let path = Path::new(name);
    if path.is_file() {
        let text = ctx.read(key, path)?;
        return Ok(parse_chd(&text)?);
    }
    let d = match std::env::var_os(CATALOG_ENV) {
        Some(dir) => match catalog::load_from_dir(Path::new(&dir), name) {
            Ok(d) => d,
            Err(catalog::CatalogError::Unknown(_)) => catalog::load(name)?,
            Err(e) => return Err(e.into()),
        },
        None => catalog::load(name)?,
    };
    ctx.input(key, d.to_chd().as_bytes());
    Ok(d)
}

fn load_diagram(ctx: &mut Ctx, a: &DiagramArgs) -> Result<ChDiagram> {
    match (&a.diagram, &a.catalog) {
        (Some(path), None) => {
            let text = ctx.read("diagram", path)?;
            Ok(parse_chd(&text)?)
        }
        (None, Some(name)) => load_named(ctx, "diagram", name),
        _ => bail!("give exactly one of --diagram or --catalog"),
    }
}

fn name_of(d: &ChDiagram) -> String {
    d.name().unwrap_or("diagram").to_string()
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<(String, Value)> {
    let exec = ctx.exec;
    Ok(match &cli.command {
        Command::VerifyQuandle { quandle, involution } => {
            let table = load_table(ctx, quandle)?;
            let v = verify_quandle(&table);
            let mut result = json!({
                "order": table.order(),
                "quandle": { "passed": v.passed(), "failed_axioms": v.failed_axioms().iter().map(|a| a.to_string()).collect::<Vec<_>>() },
            });
            ctx.say(format!("table of order {}: {}", table.order(), if v.passed() { "a quandle" } else { "axioms fail" }));
            let mut passed = v.passed();
            if let Some(spec) = involution.as_ref().filter(|_| v.passed()) {
                let q = FiniteQuandle::new(table)?;
                ctx.input("involution", spec.as_bytes());
                let rho = parse_involution_spec(spec, q.order())?;
                let g = verify_good_involution(&q, &rho)?;
                passed &= g.passed();
                result["involution"] = json!({
                    "table": rho.as_slice(),
                    "passed": g.passed(),
                    "failed_axioms": g.failed_axioms().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "fixed_points": rho.fixed_points(),
                });
                ctx.say(format!("involution {:?}: {}", rho.as_slice(), if g.passed() { "good" } else { "not good" }));
            }
            ctx.negative = !passed;
            ("verify-quandle".into(), result)
        }
        Command::Involutions { quandle } => {
            let q = load_quandle(ctx, quandle)?;
            let all: Vec<Value> = enumerate_good_involutions(&q)
                .iter()
                .map(|r| json!({ "table": r.as_slice(), "fixed_points": r.fixed_points() }))
                .collect();
            ctx.say(format!("{} good involutions", all.len()));
            ("involutions".into(), json!({ "order": q.order(), "involutions": all }))
        }
        Command::Color { diagram, sym, count: _, list, first, brute_force, cap } => {
            let d = load_diagram(ctx, diagram)?;
            let (sq, y) = load_sym(ctx, sym)?;
            let cs = build_constraints(&d, &sq, &y);
            ctx.warnings.extend(cs.warnings.iter().cloned());
            let edge_labels: Vec<u32> = d.edges().iter().map(|e| e.label).collect();
            let mut result = json!({ "diagram": name_of(&d), "edge_labels": edge_labels, "circles": d.circles() });
            if *first {
                let found = first_solution(&cs, &sq, &y);
                ctx.negative = found.is_none();
                ctx.say(match &found {
                    Some(c) => format!("found a coloring: {:?}", c.edge_colors),
                    None => "no coloring".into(),
                });
                result["first"] = serde_json::to_value(&found)?;
            } else {
                let all = if *brute_force {
                    ctx.input("cap", cap.to_string().as_bytes());
                    brute_force_all_with(&cs, &sq, &y, *cap, exec)?
                } else {
                    solve_all_with(&cs, &sq, &y, exec)
                };
                let trivial = all.iter().filter(|c| is_monochromatic_fixed_point(c, &sq)).count();
                result["count"] = json!(all.len());
                result["monochromatic_fixed_point"] = json!(trivial);
                if *list {
                    result["colorings"] = serde_json::to_value(&all)?;
                }
                ctx.negative = all.is_empty();
                ctx.say(format!("{}: {} colorings ({} monochromatic)", name_of(&d), all.len(), trivial));
            }
            ("color".into(), result)
        }
        Command::Smooth { diagram, sign } => {
            let d = load_diagram(ctx, diagram)?;
            let signs: &[(Smoothing, &str)] = match sign {
                SignArg::Minus => &[(Smoothing::Minus, "minus")],
                SignArg::Plus => &[(Smoothing::Plus, "plus")],
                SignArg::Both => &[(Smoothing::Minus, "minus"), (Smoothing::Plus, "plus")],
            };
            let mut result = json!({ "diagram": name_of(&d) });
            for &(s, key) in signs {
                let l = d.smooth(s);
                let mu = count_components(&l);
                ctx.say(format!("{key}: {} crossings, {mu} components", l.crossing_count()));
                result[key] = json!({ "components": mu, "crossings": l.crossing_count(), "chd": l.as_ch().to_chd() });
            }
            ("smooth".into(), result)
        }
        Command::Admissible { diagram, budget } => {
            let d = load_diagram(ctx, diagram)?;
            ctx.input("budget", budget.to_string().as_bytes());
            let r = is_admissible_with(&d, *budget, exec)?;
            ctx.negative = r.admissible != Admissibility::Yes;
            ctx.say(format!("{}: admissible {:?}", name_of(&d), r.admissible));
            ("admissible".into(), serde_json::to_value(&r)?)
        }
        Command::Euler { diagram } => {
            let d = load_diagram(ctx, diagram)?;
            let chi = euler_characteristic(&d);
            let comps: Vec<Value> = surface_components(&d)
                .iter()
                .map(|s| {
                    json!({
                        "euler_characteristic": s.euler_characteristic,
                        "orientable": s.orientable,
                        "signed_genus": s.signed_genus(),
                        "vertices": s.vertices,
                    })
                })
                .collect();
            let faces = d.faces();
            if let Some(w) = faces.disclaimer() {
                ctx.warnings.push(w);
            }
            ctx.say(format!("{}: χ = {chi}", name_of(&d)));
            (
                "euler".into(),
                json!({
                    "diagram": name_of(&d),
                    "euler_characteristic": chi,
                    "ch_index": d.ch_index(),
                    "faces": faces.len(),
                    "components": comps,
                }),
            )
        }
        Command::Weights { triples, cocycle, x_order, y_order } => {
            let ttext = ctx.read("triples", triples)?;
            let ctext = ctx.read("cocycle", cocycle)?;
            ctx.input("orders", format!("{x_order},{y_order}").as_bytes());
            let phi = parse_cocycle(&ctext, *x_order, *y_order)?;
            let data = parse_triples(&ttext)?;
            let ms = phi_multiset(&data, &phi)?;
            ctx.warnings.push("unverified cocycle: the cocycle condition is not checked".into());
            let implicit = implicit_entries(&ctext, &phi);
            if implicit > 0 {
                ctx.warnings.push(format!("{implicit} cocycle entries not listed; taken as 0"));
            }
            ctx.say(format!("{} colorings, multiset {:?}", ms.len(), ms.values()));
            let per: Vec<Value> = data
                .iter()
                .map(|(id, ts)| Ok(json!({ "id": id, "weight": symquandle::invariant::weight_of_coloring(ts, &phi)? })))
                .collect::<Result<_>>()?;
            ("weights".into(), json!({ "modulus": phi.modulus(), "multiset": ms.values(), "per_coloring": per }))
        }
        Command::Obstruct { upper, lower, sym, upper_triples, lower_triples, cocycle, x_order, y_order } => {
            let report = if let Some(ut) = upper_triples {
                let lt = lower_triples.as_ref().ok_or_else(|| anyhow!("--lower-triples is required"))?;
                let cpath = cocycle.as_ref().ok_or_else(|| anyhow!("--cocycle is required"))?;
                let xo = x_order.ok_or_else(|| anyhow!("--x-order is required"))?;
                let ctext = ctx.read("cocycle", cpath)?;
                let phi = parse_cocycle(&ctext, xo, *y_order)?;
                let up = phi_multiset(&parse_triples(&ctx.read("upper_triples", ut)?)?, &phi)?;
                let lo = phi_multiset(&parse_triples(&ctx.read("lower_triples", lt)?)?, &phi)?;
                ctx.warnings.push("unverified cocycle: the cocycle condition is not checked".into());
                cocycle_obstruction(&up, &lo)?
            } else {
                let u = upper.as_ref().ok_or_else(|| anyhow!("--upper is required"))?;
                let l = lower.as_ref().ok_or_else(|| anyhow!("--lower is required"))?;
                let d1 = load_named(ctx, "upper", u)?;
                let d0 = load_named(ctx, "lower", l)?;
                let (sq, y) = load_sym(ctx, sym)?;
                let adv = kinoshita_check(&sq);
                if adv.fixed_point_free {
                    ctx.warnings.push(adv.note);
                }
                let y = if y.is_trivial() { None } else { Some(&y) };
                coloring_obstruction(&d1, &d0, &sq, y)
            };
            ctx.negative = report.is_obstructed();
            ctx.say(format!("{}: {:?}. {}", report.relation, report.verdict, report.note));
            ("obstruct".into(), serde_json::to_value(&report)?)
        }
        Command::Catalog { name } => match name {
            None => {
                let list: Vec<Value> = catalog::entries()
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "ch_index": e.ch_index,
                            "euler_characteristic": e.euler_characteristic,
                            "signed_genera": e.signed_genera,
                            "budget": e.budget,
                            "provenance": e.provenance,
                        })
                    })
                    .collect();
                ctx.say(catalog::names().join("\n"));
                ("catalog".into(), json!({ "entries": list }))
            }
            Some(n) => {
                let d = load_named(ctx, "name", n)?;
                ctx.say(d.to_chd());
                ("catalog".into(), json!({ "name": n, "chd": d.to_chd(), "ch_index": d.ch_index() }))
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut ctx = Ctx {
        digest: Sha256::new(),
        warnings: Vec::new(),
        summary: Vec::new(),
        negative: false,
        exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
    };
    match run(&cli, &mut ctx) {
        Ok((command, result)) => {
            let report = Report {
                command,
                inputs_digest: hex::encode(ctx.digest.finalize()),
                result,
                warnings: ctx.warnings,
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if !cli.json_only {
                for line in &ctx.summary {
                    eprintln!("{line}");
                }
                for w in &report.warnings {
                    eprintln!("warning: {w}");
                }
            }
            if cli.strict && ctx.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
