use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prefix_limits::demos::{run_demo, DEMOS};
use prefix_limits::family::{
    builtin_family, validate_family, BuiltinParams, CandidateMaps, DirectedIndex, FamilyCandidate, FamilyDocument,
    InverseFamily, BUILTIN_NAMES,
};
use prefix_limits::flows::{dyadic_tower_with, reconstruct, thread_of_flow, FlowSet, RefineMode};
use prefix_limits::limits::{check_naturality, check_universal_property, enumerate_threads, projection, Cone};
use prefix_limits::lts::witness::{builtin_witness, check_limit_bisim_witness, WitnessBounds, BUILTIN_WITNESSES};
use prefix_limits::lts::{bisimilar, unfold, BisimResult, Lts, LtsDocument};
use prefix_limits::maps::{validate_php_direct, validate_php_structural, MapDocument, PartialFn};
use prefix_limits::order::{export, import, validate_order, ExportFormat, ImportError, OrderDocument, PrefixOrder, RelationCandidate};

#[derive(Parser)]
#[command(name = "prefix-limits", version, about = "Prefix orders, history-preserving maps and projective limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Out {
    #[default]
    Text,
    Dot,
}

impl From<Out> for ExportFormat {
    fn from(o: Out) -> Self {
        match o {
            Out::Text => ExportFormat::Text,
            Out::Dot => ExportFormat::Dot,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Mode {
    #[default]
    Recursion,
    Subsample,
}

#[derive(Args)]
struct FamilyArgs {
    /// Builtin family name or path to a family document.
    #[arg(long)]
    family: String,
    /// Size parameter for builtin families.
    #[arg(long = "N", default_value_t = 4)]
    n: usize,
    /// Order document for the `constant` builtin.
    #[arg(long)]
    order: Option<PathBuf>,
    /// Flow set document for `dyadic_tower`; defaults to {1, t, t²} on [0, 1].
    #[arg(long)]
    flows: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check an order document (forest entries or an explicit relation).
    ValidateOrder {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        out: Out,
    },
    /// Check a map document with both history-preservation validators.
    ValidateMap { file: PathBuf },
    /// Check coherence of a builtin or stored family.
    ValidateFamily {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Enumerate limit threads at a horizon.
    Limit {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        out: Out,
    },
    /// Check the universal property for the cone of projections.
    Universal {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Unfold an LTS document into its run order.
    Unfold {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t)]
        out: Out,
    },
    /// Decide bisimilarity of two LTS documents.
    Bisim { left: PathBuf, right: PathBuf },
    /// Check a builtin limit-bisimulation witness within bounds.
    LimitBisim {
        /// One of the builtin witnesses.
        witness: String,
        /// max offset, max stride, horizon N, depth D.
        #[arg(long, default_value = "4,4,32,6")]
        bounds: String,
    },
    /// Build and validate the dyadic tower of a flow set.
    FlowsTower {
        #[arg(long)]
        flows: Option<PathBuf>,
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t)]
        out: Out,
    },
    /// Map each generator to its thread and back; prints `t value` plot data.
    FlowsRoundtrip {
        #[arg(long)]
        flows: Option<PathBuf>,
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Run a named demo.
    Demo {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Why a command did not succeed.
enum Failure {
    /// The input was well formed but a check failed; carries a JSON report.
    Violation(Value),
    /// The input could not be used at all.
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<String, Failure>;

fn violation(verb: &str, detail: impl std::fmt::Display) -> Failure {
    Failure::Violation(json!({ "verb": verb, "ok": false, "violation": detail.to_string() }))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Resolves a reference relative to the document that mentions it.
fn resolve_ref(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

fn load_order(verb: &str, path: &Path) -> Result<PrefixOrder, Failure> {
    let text = read(path)?;
    match import(&text) {
        Ok(o) => Ok(o),
        Err(ImportError::Order(e)) => Err(violation(verb, e)),
        Err(ImportError::Syntax(first)) => {
            let candidate: RelationCandidate = serde_json::from_str(&text)
                .map_err(|_| anyhow!("{}: not an order document: {first}", path.display()))?;
            validate_order(&candidate).map_err(|e| violation(verb, e))
        }
    }
}

fn load_flows(path: Option<&Path>) -> anyhow::Result<FlowSet> {
    match path {
        None => Ok(FlowSet::standard()),
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("{}: not a flow set", p.display())),
    }
}

fn load_lts(path: &Path) -> anyhow::Result<Lts> {
    let doc: LtsDocument =
        serde_json::from_str(&read(path)?).with_context(|| format!("{}: not an LTS document", path.display()))?;
    Lts::from_document(&doc).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_map(verb: &str, path: &Path, source: Arc<PrefixOrder>, target: Arc<PrefixOrder>) -> Result<PartialFn, Failure> {
    let doc: MapDocument =
        serde_json::from_str(&read(path)?).with_context(|| format!("{}: not a map document", path.display()))?;
    doc.resolve(source, target).map_err(|e| violation(verb, e))
}

fn load_family(verb: &str, args: &FamilyArgs) -> Result<InverseFamily, Failure> {
    if BUILTIN_NAMES.contains(&args.family.as_str()) {
        let order = match &args.order {
            Some(p) => Some(load_order(verb, p)?),
            None => None,
        };
        let params = BuiltinParams { n: args.n, order, flows: Some(load_flows(args.flows.as_deref())?) };
        return builtin_family(&args.family, &params).map_err(|e| match e {
            prefix_limits::family::FamilyError::BadParams(_) => Failure::Usage(anyhow!("{e}")),
            e => violation(verb, e),
        });
    }
    let path = PathBuf::from(&args.family);
    if !path.exists() {
        return Err(Failure::Usage(anyhow!(
            "`{}` is neither a builtin family ({}) nor a file",
            args.family,
            BUILTIN_NAMES.join(", ")
        )));
    }
    let doc: FamilyDocument =
        serde_json::from_str(&read(&path)?).with_context(|| format!("{}: not a family document", path.display()))?;
    let objects = doc
        .objects
        .iter()
        .map(|r| load_order(verb, &resolve_ref(&path, r)).map(Arc::new))
        .collect::<Result<Vec<_>, _>>()?;
    let maps = match &doc.index {
        DirectedIndex::NatChain { .. } => {
            let mut steps = Vec::new();
            for (n, r) in doc.steps.iter().enumerate() {
                let (Some(lower), Some(upper)) = (objects.get(n), objects.get(n + 1)) else {
                    return Err(violation(verb, format!("step {n} has no objects")));
                };
                steps.push(load_map(verb, &resolve_ref(&path, r), upper.clone(), lower.clone())?);
            }
            CandidateMaps::Steps(steps)
        }
        DirectedIndex::FinitePoset { elements, .. } => {
            let pos = |s: &str| {
                elements.iter().position(|e| e == s).ok_or_else(|| violation(verb, format!("unknown index `{s}`")))
            };
            let mut pairs = std::collections::BTreeMap::new();
            for p in &doc.maps {
                let (i, j) = (pos(&p.i)?, pos(&p.j)?);
                let (Some(lower), Some(upper)) = (objects.get(i), objects.get(j)) else {
                    return Err(violation(verb, "fewer objects than indices"));
                };
                pairs.insert((i, j), load_map(verb, &resolve_ref(&path, &p.map), upper.clone(), lower.clone())?);
            }
            CandidateMaps::Pairs(pairs)
        }
    };
    validate_family(FamilyCandidate { index: doc.index, objects, maps, kind: doc.kind }).map_err(|e| violation(verb, e))
}

fn parse_bounds(text: &str) -> anyhow::Result<WitnessBounds> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| anyhow!("bounds must be four integers a,b,N,D"))?;
    match parts[..] {
        [a, b, n, d] => Ok(WitnessBounds::new(a, b, n, d)),
        _ => Err(anyhow!("bounds must be four integers a,b,N,D")),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::ValidateOrder { file, out } => {
            let order = load_order("validate-order", &file)?;
            Ok(match out {
                Out::Dot => export(&order, ExportFormat::Dot),
                Out::Text => pretty(&json!({
                    "verb": "validate-order",
                    "ok": true,
                    "elements": order.len(),
                    "order": OrderDocument { elements: order.to_entries() },
                })),
            })
        }
        Command::ValidateMap { file } => {
            let verb = "validate-map";
            let doc: MapDocument =
                serde_json::from_str(&read(&file)?).with_context(|| format!("{}: not a map document", file.display()))?;
            let source = Arc::new(load_order(verb, &resolve_ref(&file, &doc.source_ref))?);
            let target = Arc::new(load_order(verb, &resolve_ref(&file, &doc.target_ref))?);
            let f = doc.resolve(source, target).map_err(|e| violation(verb, e))?;
            let direct = validate_php_direct(f.clone());
            let structural = validate_php_structural(f);
            let verdict = |r: &Result<_, prefix_limits::maps::MapError>| match r {
                Ok(_) => Value::String("accepted".into()),
                Err(e) => Value::String(format!("rejected: {e}")),
            };
            let report = json!({
                "verb": verb,
                "ok": direct.is_ok() && structural.is_ok(),
                "direct": verdict(&direct),
                "order_and_backward_simulation": verdict(&structural),
                "agree": direct.is_ok() == structural.is_ok(),
            });
            if direct.is_ok() && structural.is_ok() {
                Ok(pretty(&report))
            } else {
                Err(Failure::Violation(report))
            }
        }
        Command::ValidateFamily { family } => {
            let fam = load_family("validate-family", &family)?;
            let sizes: Vec<usize> = fam.objects().iter().map(|o| o.len()).collect();
            Ok(pretty(&json!({
                "verb": "validate-family",
                "ok": true,
                "indices": fam.len(),
                "kind": fam.kind(),
                "object_sizes": sizes,
            })))
        }
        Command::Limit { family, horizon, out } => {
            let verb = "limit";
            let fam = load_family(verb, &family)?;
            let h = horizon.unwrap_or(fam.horizon());
            let threads = enumerate_threads(&fam, h).map_err(|e| violation(verb, e))?;
            check_naturality(&threads).map_err(|e| violation(verb, e))?;
            Ok(match out {
                Out::Dot => export(threads.order(), ExportFormat::Dot),
                Out::Text => pretty(&json!({
                    "verb": verb,
                    "ok": true,
                    "horizon": h,
                    "threads": threads.to_documents(),
                    "order": OrderDocument { elements: threads.order().to_entries() },
                })),
            })
        }
        Command::Universal { family, horizon } => {
            let verb = "universal";
            let fam = load_family(verb, &family)?;
            let h = horizon.unwrap_or(fam.horizon());
            let threads = enumerate_threads(&fam, h).map_err(|e| violation(verb, e))?;
            let legs = (0..threads.index_count())
                .map(|i| projection(&threads, i))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| violation(verb, e))?;
            let cone = Cone { apex: threads.order().clone(), legs };
            let report = check_universal_property(&fam, &cone, h).map_err(|e| violation(verb, e))?;
            let m = &report.mediating;
            Ok(pretty(&json!({
                "verb": verb,
                "ok": true,
                "threads": report.threads.len(),
                "mediating_is_bijective": m.is_total() && m.is_injective() && m.is_surjective(),
                "uniqueness": report.uniqueness,
            })))
        }
        Command::Unfold { file, depth, out } => {
            let lts = load_lts(&file)?;
            let runs = unfold(&lts, depth);
            Ok(match out {
                Out::Dot => export(runs.order(), ExportFormat::Dot),
                Out::Text => pretty(&json!({
                    "verb": "unfold",
                    "ok": true,
                    "depth": depth,
                    "runs": OrderDocument { elements: runs.order().to_entries() },
                    "words": OrderDocument { elements: runs.words().to_entries() },
                    "lambda": MapDocument::from_map(runs.lambda(), "runs", "words"),
                })),
            })
        }
        Command::Bisim { left, right } => {
            let (p, q) = (load_lts(&left)?, load_lts(&right)?);
            match bisimilar(&p, &q).map_err(|e| anyhow!("{e}"))? {
                BisimResult::Bisimilar { relation } => {
                    Ok(pretty(&json!({ "verb": "bisim", "ok": true, "bisimilar": true, "relation": relation })))
                }
                BisimResult::Distinguished { level } => Err(Failure::Violation(
                    json!({ "verb": "bisim", "ok": false, "bisimilar": false, "distinguished_at_level": level }),
                )),
            }
        }
        Command::LimitBisim { witness, bounds } => {
            let spec = builtin_witness(&witness)
                .ok_or_else(|| anyhow!("unknown witness `{witness}`; expected one of {}", BUILTIN_WITNESSES.join(", ")))?;
            let bounds = parse_bounds(&bounds)?;
            let outcome = check_limit_bisim_witness(&spec, bounds).map_err(|e| anyhow!("{e}"))?;
            let report = json!({ "verb": "limit-bisim", "witness": witness, "ok": outcome.is_pass(), "outcome": outcome });
            if outcome.is_pass() {
                Ok(pretty(&report))
            } else {
                Err(Failure::Violation(report))
            }
        }
        Command::FlowsTower { flows, n, mode, out } => {
            let verb = "flows-tower";
            let flows = load_flows(flows.as_deref())?;
            let mode = match mode {
                Mode::Recursion => RefineMode::Recursion,
                Mode::Subsample => RefineMode::Subsample,
            };
            let tower = dyadic_tower_with(&flows, n, mode).map_err(|e| violation(verb, e))?;
            Ok(match out {
                Out::Dot => export(tower.level(n).order(), ExportFormat::Dot),
                Out::Text => {
                    let levels: Vec<Value> = tower
                        .levels()
                        .iter()
                        .map(|l| json!({ "level": l.level(), "elements": l.len(), "maximal": l.order().maximal().count() }))
                        .collect();
                    pretty(&json!({ "verb": verb, "ok": true, "mode": mode, "levels": levels }))
                }
            })
        }
        Command::FlowsRoundtrip { flows, n, depth } => {
            let verb = "flows-roundtrip";
            let flows = load_flows(flows.as_deref())?;
            let depth = depth.unwrap_or(n as u32);
            if depth as usize > n {
                return Err(Failure::Usage(anyhow!("depth {depth} exceeds the tower height {n}")));
            }
            let tower = dyadic_tower_with(&flows, n, RefineMode::Recursion).map_err(|e| violation(verb, e))?;
            let mut text = String::new();
            let mut mismatches = Vec::new();
            for (g, f) in flows.generators.iter().enumerate() {
                let thread = thread_of_flow(&tower, f).map_err(|e| violation(verb, e))?;
                let r = reconstruct(&tower, &thread, depth).map_err(|e| violation(verb, e))?;
                let exact = r.values() == f.samples(depth);
                if !exact {
                    mismatches.push(g);
                }
                text.push_str(&format!("# generator {g}: thread {} exact {exact}\n", thread.name()));
                for (t, v) in &r.samples {
                    text.push_str(&format!("{t}\t{v}\n"));
                }
                text.push('\n');
            }
            if mismatches.is_empty() {
                Ok(text)
            } else {
                Err(Failure::Violation(json!({ "verb": verb, "ok": false, "mismatched_generators": mismatches })))
            }
        }
        Command::Demo { name, seed } => {
            let report = run_demo(&name, seed)
                .ok_or_else(|| anyhow!("unknown demo `{name}`; expected one of {}", DEMOS.join(", ")))?;
            let mut text = format!("{}: {}\n", report.name, if report.passed { "PASS" } else { "FAIL" });
            for line in &report.lines {
                text.push_str(line);
                text.push('\n');
            }
            if report.passed {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Violation(serde_json::to_value(&report).expect("reports serialize")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(report)) => {
            print!("{}", pretty(&report));
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
