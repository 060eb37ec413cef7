use std::io::Read;
use std::process::ExitCode;

use beadlab::action::{act_logged, default_generators, orbit, realize_class, Generator};
use beadlab::arrangement::{
    colored_arrangements, free_arrangements, reduced_colored_arrangements, ArrangementDoc, ColoredArrangement, Item,
    ReducedColoredArrangement, DEFAULT_CAP, SCHEMA,
};
use beadlab::catmodel::{arc_of, diagonals_cross, diagonals_intersect, hom_dim, phi};
use beadlab::counting::{totals, tree_count};
use beadlab::plane_tree::{plane_trees, rooted_plane_trees, RootedPlaneTree};
use beadlab::render::render;
use beadlab::{Bead, ExactCount, Params};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "beadlab", version, about = "Bead arrangements on a circular wire")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Shape {
    /// Number of beads.
    #[arg(short = 'n')]
    n: i64,
    /// Free units per bead.
    #[arg(short = 'd')]
    d: i64,
}

impl Shape {
    fn params(self) -> Result<Params, Fail> {
        Ok(Params::new(self.n, self.d)?)
    }
}

#[derive(Args, Clone, Copy)]
struct Cap {
    /// Stop after this many states.
    #[arg(long, env = "BEADLAB_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Wire length and derived constants.
    Params(Shape),
    /// List arrangements (colored by default).
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        /// Replace middle-type beads by circlets and long beads by partners.
        #[arg(long)]
        reduced: bool,
        /// Up to rotation and recoloring.
        #[arg(long)]
        free: bool,
        #[command(flatten)]
        cap: Cap,
    },
    /// Closed-form counts per tree class.
    Count {
        #[command(flatten)]
        shape: Shape,
        /// Also enumerate and compare.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        cap: Cap,
    },
    /// Plane trees with `n` edges.
    Trees {
        #[arg(short = 'n')]
        edges: usize,
        /// Also print the count for this many free units.
        #[arg(short = 'd')]
        d: Option<u32>,
    },
    /// Apply one subset move to an arrangement.
    Mutate {
        /// Arrangement JSON file, `-` for stdin.
        #[arg(long)]
        input: String,
        /// Stationary beads, 0-based, comma separated.
        #[arg(long, default_value = "")]
        set: String,
        /// Move the other beads right instead of left.
        #[arg(long)]
        inverse: bool,
    },
    /// Orbit size under every subset move and transposition.
    Orbit {
        #[arg(short = 'n')]
        n: Option<i64>,
        #[arg(short = 'd')]
        d: Option<i64>,
        /// Start here instead of at the simples.
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        cap: Cap,
    },
    /// Build an arrangement with the given rooted tree from the simples.
    Realize {
        #[command(flatten)]
        shape: Shape,
        /// Nested list form, e.g. `[[[]],[]]`.
        #[arg(long)]
        tree: String,
    },
    /// Hom dimension between the objects of two beads.
    Hom {
        #[command(flatten)]
        shape: Shape,
        /// Bead `l,i`.
        #[arg(long)]
        from: String,
        /// Bead `l,i`.
        #[arg(long)]
        to: String,
    },
    /// Chord of a bead, and crossing with a second one.
    Arc {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// ASCII picture of an arrangement.
    Render {
        #[arg(long)]
        input: String,
    },
    /// Check the count identities and tree realization for one shape.
    Verify {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        cap: Cap,
    },
}

enum Fail {
    Domain(String),
    Verify(String),
}

impl From<beadlab::Error> for Fail {
    fn from(e: beadlab::Error) -> Self {
        Fail::Domain(e.to_string())
    }
}

fn domain(msg: impl Into<String>) -> Fail {
    Fail::Domain(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
    }
}

fn read_doc(path: &str) -> Result<ArrangementDoc, Fail> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| domain(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| domain(format!("{path}: {e}")))?;
    }
    let doc: ArrangementDoc = serde_json::from_str(&text).map_err(|e| domain(format!("{path}: {e}")))?;
    match doc.schema.as_deref() {
        None | Some(SCHEMA) => Ok(doc),
        Some(other) => Err(domain(format!("unknown schema {other:?}"))),
    }
}

/// A colored arrangement, lifting circlets if present.
fn read_colored(path: &str) -> Result<ColoredArrangement, Fail> {
    let doc = read_doc(path)?;
    if doc.has_circlet() {
        Ok(ReducedColoredArrangement::from_doc(&doc)?.lift())
    } else {
        Ok(ColoredArrangement::from_doc(&doc)?)
    }
}

fn parse_bead(p: &Params, s: &str) -> Result<Bead, Fail> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Vec<i64> = parts.iter().filter_map(|x| x.parse().ok()).collect();
    match nums.as_slice() {
        [l, i] if parts.len() == 2 => Ok(p.bead(*l, *i)?),
        _ => Err(domain(format!("expected `l,i`, got {s:?}"))),
    }
}

fn parse_set(s: &str) -> Result<Vec<usize>, Fail> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| domain(format!("bad index {x:?} in --set"))))
        .collect()
}

fn show_item(it: &Item) -> String {
    match it {
        Item::Bead(b) => show_bead(*b),
        Item::Circlet(c) => format!("C({})", c.i),
    }
}

fn show_bead(b: Bead) -> String {
    format!("B_{}({})", b.l, b.i)
}

fn show_items(items: &[Item]) -> String {
    items.iter().map(show_item).collect::<Vec<_>>().join(" ")
}

fn show_generator(g: &Generator) -> String {
    let list = |s: &[usize]| s.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    match g {
        Generator::Subset(s) => format!("S{{{}}}", list(s)),
        Generator::SubsetInverse(s) => format!("S^-1{{{}}}", list(s)),
        Generator::Permutation(s) => format!("perm[{}]", list(s)),
    }
}

fn bead_items(a: &ColoredArrangement) -> Vec<Item> {
    a.beads().iter().map(|&b| Item::Bead(b)).collect()
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn run(cli: &Cli) -> Result<(), Fail> {
    match &cli.cmd {
        Cmd::Params(shape) => {
            let p = shape.params()?;
            if cli.json {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": p.n(),
                    "d": p.d(),
                    "wire_len": p.wire_len(),
                    "w": p.w(),
                    "unit": p.unit(),
                    "max_reduced_type": p.max_reduced_type(),
                    "middle_type": p.middle_type(),
                }));
            } else {
                println!(
                    "n={} d={} P={} w={} unit={}",
                    p.n(),
                    p.d(),
                    p.wire_len(),
                    p.w(),
                    p.unit()
                );
                println!("reduced types 1..={}", p.max_reduced_type());
                if let Some(m) = p.middle_type() {
                    println!("middle type {m}, circlets 0..{}", p.wire_len() / 2);
                }
            }
        }
        Cmd::Enumerate {
            shape,
            reduced,
            free,
            cap,
        } => {
            let p = shape.params()?;
            let (kind, lists): (&str, Vec<Vec<Item>>) = match (free, reduced) {
                (true, r) => (
                    if *r { "reduced-free" } else { "free" },
                    free_arrangements(&p, *r, cap.cap)?
                        .iter()
                        .map(|f| f.items().to_vec())
                        .collect(),
                ),
                (false, true) => (
                    "reduced-colored",
                    reduced_colored_arrangements(&p, cap.cap)?
                        .iter()
                        .map(|a| a.items().to_vec())
                        .collect(),
                ),
                (false, false) => (
                    "colored",
                    colored_arrangements(&p, cap.cap)?.iter().map(bead_items).collect(),
                ),
            };
            if cli.json {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": p.n(),
                    "d": p.d(),
                    "kind": kind,
                    "count": lists.len(),
                    "arrangements": lists,
                }));
            } else {
                for items in &lists {
                    println!("{}", show_items(items));
                }
                println!("{} {kind} arrangements", lists.len());
            }
        }
        Cmd::Count { shape, oracle, cap } => {
            let p = shape.params()?;
            let r = totals::<ExactCount>(&p, *oracle, cap.cap)?;
            if cli.json {
                print_json(&r.to_json());
            } else {
                print!("{}", r.to_table());
                if *oracle {
                    let word = |x: Option<bool>| match x {
                        Some(true) => "holds",
                        Some(false) => "fails",
                        None => "n/a",
                    };
                    println!("symmetry-weighted identity: {}", word(r.symmetry_formula_holds()));
                    println!(
                        "plain product identity:     {} (informational)",
                        word(r.product_formula_holds())
                    );
                }
            }
            if *oracle && r.symmetry_formula_holds() != Some(true) {
                return Err(Fail::Verify(
                    "enumeration disagrees with the symmetry-weighted count".into(),
                ));
            }
        }
        Cmd::Trees { edges, d } => {
            let mut rows = vec![];
            for (class, t) in plane_trees(*edges) {
                let count = match d {
                    Some(d) => Some(tree_count::<ExactCount>(&t, *d)?.to_string()),
                    None => None,
                };
                rows.push((class.0, t.to_nested(), t.automorphism_count(), count));
            }
            if cli.json {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|(c, t, a, n)| json!({"class": c, "tree": t, "automorphisms": a, "count": n}))
                    .collect();
                print_json(&json!({"schema": SCHEMA, "edges": edges, "d": d, "classes": list}));
            } else {
                for (c, t, a, n) in &rows {
                    match n {
                        Some(n) => println!("{c}  {t}  aut={a}  N={n}"),
                        None => println!("{c}  {t}  aut={a}"),
                    }
                }
                println!("{} classes", rows.len());
            }
        }
        Cmd::Mutate { input, set, inverse } => {
            let a = read_colored(input)?;
            let s = parse_set(set)?;
            let g = if *inverse {
                Generator::SubsetInverse(s)
            } else {
                Generator::Subset(s)
            };
            let (out, log) = act_logged(&a, &g)?;
            if cli.json {
                print_json(&json!({
                    "schema": SCHEMA,
                    "generator": g,
                    "log": log,
                    "result": out.to_doc(),
                }));
            } else {
                for r in &log {
                    println!(
                        "{}: {} hits {} ({}), type {:?} -> {}",
                        r.moved_index,
                        show_bead(r.before),
                        show_bead(r.stationary),
                        r.stationary_index,
                        r.kind,
                        show_bead(r.after)
                    );
                }
                println!("{}", show_items(&bead_items(&out)));
            }
        }
        Cmd::Orbit { n, d, input, cap } => {
            let start = match (input, n, d) {
                (Some(path), _, _) => read_colored(path)?,
                (None, Some(n), Some(d)) => ColoredArrangement::simples(Params::new(*n, *d)?),
                _ => return Err(domain("give --input or both -n and -d")),
            };
            let p = *start.params();
            let o = orbit(&start, &default_generators(p.n() as usize), cap.cap)?;
            if cli.json {
                print_json(&json!({
                    "schema": SCHEMA,
                    "n": p.n(),
                    "d": p.d(),
                    "size": o.states.len(),
                    "complete": o.complete,
                }));
            } else {
                println!(
                    "{} states{}",
                    o.states.len(),
                    if o.complete { "" } else { " (stopped at cap)" }
                );
            }
            if !o.complete {
                return Err(beadlab::Error::CapExceeded { cap: cap.cap }.into());
            }
        }
        Cmd::Realize { shape, tree } => {
            let p = shape.params()?;
            let t = RootedPlaneTree::from_nested(tree)?;
            let r = realize_class(&p, &t)?;
            if cli.json {
                print_json(&json!({
                    "schema": SCHEMA,
                    "word": r.word,
                    "stages": r.stages.iter().map(|s| s.to_doc()).collect::<Vec<_>>(),
                    "result": r.arrangement.to_doc(),
                }));
            } else {
                println!(
                    "word: {}",
                    r.word.iter().map(show_generator).collect::<Vec<_>>().join(" ")
                );
                for (k, s) in r.stages.iter().enumerate() {
                    println!("stage {k}: {}", show_items(&bead_items(s)));
                }
                println!("result: {}", show_items(&bead_items(&r.arrangement)));
                print!("{}", render(&p, &bead_items(&r.arrangement)));
            }
        }
        Cmd::Hom { shape, from, to } => {
            let p = shape.params()?;
            let (x, y) = (parse_bead(&p, from)?, parse_bead(&p, to)?);
            let (ox, oy) = (phi(&p, x), phi(&p, y));
            let dim = hom_dim(&p, ox, oy);
            if cli.json {
                print_json(&json!({"schema": SCHEMA, "from": ox, "to": oy, "dim": dim}));
            } else {
                println!(
                    "hom (len {}, shift {}) -> (len {}, shift {}) = {dim}",
                    ox.len, ox.shift, oy.len, oy.shift
                );
            }
        }
        Cmd::Arc { shape, from, to } => {
            let p = shape.params()?;
            let x = parse_bead(&p, from)?;
            let ax = arc_of(&p, x);
            let other = match to {
                Some(s) => {
                    let y = parse_bead(&p, s)?;
                    Some((y, arc_of(&p, y)))
                }
                None => None,
            };
            if cli.json {
                let mut v = json!({"schema": SCHEMA, "arc": ax});
                if let Some((y, ay)) = other {
                    v["other"] = json!(ay);
                    v["cross"] = json!(diagonals_cross(&p, ax, ay));
                    v["intersect"] = json!(diagonals_intersect(&p, ax, ay));
                    v["overlap"] = json!(p.overlaps(x, y));
                }
                print_json(&v);
            } else {
                println!("{}: {}-{}", show_bead(x), ax.a, ax.b);
                if let Some((y, ay)) = other {
                    println!("{}: {}-{}", show_bead(y), ay.a, ay.b);
                    println!(
                        "cross {}  intersect {}  overlap {}",
                        diagonals_cross(&p, ax, ay),
                        diagonals_intersect(&p, ax, ay),
                        p.overlaps(x, y)
                    );
                }
            }
        }
        Cmd::Render { input } => {
            let doc = read_doc(input)?;
            let p = doc.params()?;
            if doc.has_circlet() {
                ReducedColoredArrangement::from_doc(&doc)?;
            } else {
                ColoredArrangement::from_doc(&doc)?;
            }
            let text = render(&p, &doc.beads);
            if cli.json {
                print_json(&json!({"schema": SCHEMA, "picture": text}));
            } else {
                print!("{text}");
            }
        }
        Cmd::Verify { shape, cap } => verify(cli, shape.params()?, cap.cap)?,
    }
    Ok(())
}

fn verify(cli: &Cli, p: Params, cap: usize) -> Result<(), Fail> {
    let r = totals::<ExactCount>(&p, true, cap)?;
    let mut checks = vec![("symmetry-weighted count", r.symmetry_formula_holds() == Some(true))];
    let mut realized = true;
    for t in rooted_plane_trees(p.n() as usize) {
        let a = realize_class(&p, &t)?.arrangement;
        realized &= a.associated_tree().tree.rooted_code() == t.rooted_code();
    }
    checks.push(("every rooted class realized", realized));
    let product = r.product_formula_holds();
    if cli.json {
        let list: Vec<Value> = checks
            .iter()
            .map(|(name, ok)| json!({"check": name, "ok": ok}))
            .collect();
        print_json(&json!({
            "schema": SCHEMA,
            "n": p.n(),
            "d": p.d(),
            "checks": list,
            "product_formula_holds": product,
        }));
    } else {
        for (name, ok) in &checks {
            println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
        }
        if let Some(h) = product {
            println!("info plain product identity {}", if h { "holds" } else { "fails" });
        }
    }
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(Fail::Verify((*name).into())),
        None => Ok(()),
    }
}
