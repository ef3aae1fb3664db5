use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use clusterfold::qcluster::enumerate_exchange_graph;
use clusterfold::verify::{run_catalog, Catalog, CatalogEntry, DatumSpec, Instance, InstanceSpec, Report};
use clusterfold::{CartanDatum, ConvexOrder, IceQuiver, Label, QuiverWithAut, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Fold,
    Roots,
    Initquiver,
    SeedInit,
    Mutate,
    Enumerate,
    Verify,
}

/// Quantum cluster structures on quantum unipotent rings, with an exact
/// shuffle-algebra oracle.
#[derive(Parser, Debug)]
#[command(name = "clusterfold", version)]
struct Cli {
    command: Command,
    /// JSON job description.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit Graphviz DOT instead of JSON (initquiver).
    #[arg(long)]
    dot: bool,
    /// Compact single-line JSON; for verify, one JSON report per line.
    #[arg(long)]
    json: bool,
    /// Also run the slow verification catalog.
    #[arg(long)]
    slow: bool,
    /// Bound on the number of seeds visited by enumerate.
    #[arg(long)]
    max_steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobConfig {
    datum: Option<DatumSpec>,
    cartan: Option<CartanDatum>,
    quiver: Option<QuiverWithAut>,
    word: Option<Vec<Label>>,
    /// 1-based vertices, applied left to right.
    #[serde(default)]
    mutations: Vec<usize>,
    max_steps: Option<usize>,
    entries: Option<Vec<CatalogEntry>>,
}

impl JobConfig {
    fn datum(&self) -> Result<DatumSpec> {
        match (&self.datum, &self.cartan, &self.quiver) {
            (Some(d), None, None) => Ok(d.clone()),
            (None, Some(c), None) => Ok(DatumSpec::Cartan(c.clone())),
            (None, None, Some(q)) => Ok(DatumSpec::Folded(q.clone())),
            (None, None, None) => bail!("config needs one of \"datum\", \"cartan\" or \"quiver\""),
            _ => bail!("config has more than one of \"datum\", \"cartan\" and \"quiver\""),
        }
    }

    fn cartan(&self) -> Result<CartanDatum> {
        Ok(self.datum()?.cartan()?)
    }

    fn instance(&self) -> Result<Instance> {
        let word = self.word.clone().context("config needs a \"word\"")?;
        Ok(Instance::resolve(&InstanceSpec { datum: self.datum()?, word })?)
    }
}

/// Input problems exit with 2; a failed verification exits with 1.
enum Outcome {
    Ok,
    VerificationFailed,
}

fn emit(out: &mut impl Write, value: &Value, compact: bool) -> Result<()> {
    if compact {
        writeln!(out, "{}", serde_json::to_string(value)?)?;
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    }
    Ok(())
}

fn load_config(cli: &Cli) -> Result<JobConfig> {
    let Some(path) = &cli.config else {
        return Ok(JobConfig::default());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn roots(cfg: &JobConfig) -> Result<Value> {
    let c = cfg.cartan()?;
    let positive = c.positive_roots(i64::MAX);
    let mut out = json!({
        "indices": c.labels(),
        "positive_roots": positive.iter().map(|r| &r.0).collect::<Vec<_>>(),
        "longest_word": c.word_labels(&c.longest_word()),
    });
    if let Some(word) = &cfg.word {
        let w = c.word_from_labels(word)?;
        let order = ConvexOrder::from_word(&c, &w)?;
        let sorted = order.sort(&positive)?;
        out["inversions"] = json!(c.inversion_roots(&w)?.iter().map(|r| &r.0).collect::<Vec<_>>());
        out["convex_order"] = json!(sorted.iter().map(|r| &r.0).collect::<Vec<_>>());
        out["convex"] = json!(order.check_convexity(&positive)?.is_none());
    }
    Ok(out)
}

fn initquiver(cfg: &JobConfig, dot: bool) -> Result<Either> {
    let c = cfg.cartan()?;
    let word = c.word_from_labels(cfg.word.as_deref().context("config needs a \"word\"")?)?;
    let q = IceQuiver::build(&c, &word)?;
    Ok(if dot { Either::Text(q.to_dot()) } else { Either::Json(q.to_json()) })
}

enum Either {
    Json(Value),
    Text(String),
}

fn mutate(cfg: &JobConfig) -> Result<Value> {
    let inst = cfg.instance()?;
    let mut seed = inst.initial_seed()?;
    let mut trace = vec![json!({"step": 0, "seed": seed.to_json()})];
    for (i, &v) in cfg.mutations.iter().enumerate() {
        let k = v.checked_sub(1).filter(|k| seed.pair().exchangeable().contains(k));
        let k = k.with_context(|| format!("vertex {v} is not exchangeable"))?;
        seed = seed.mutate(k)?;
        trace.push(json!({"step": i + 1, "vertex": v, "seed": seed.to_json()}));
    }
    Ok(json!({"instance": inst.describe(), "trace": trace}))
}

fn enumerate(cfg: &JobConfig, max_steps: Option<usize>) -> Result<Value> {
    let inst = cfg.instance()?;
    let bound = max_steps.or(cfg.max_steps).unwrap_or(1000);
    let g = enumerate_exchange_graph(&inst.initial_seed()?, bound)?;
    Ok(json!({
        "instance": inst.describe(),
        "seeds": g.seeds.len(),
        "partial": g.partial,
        "edges": g.edges.iter().map(|&(a, k, b)| json!([a, k + 1, b])).collect::<Vec<_>>(),
        "variables": g.variables.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
    }))
}

fn report_line(r: &Report) -> String {
    let tag = match (r.ok(), r.status) {
        (false, _) => "FAIL",
        (true, Status::Skipped) => "SKIP",
        (true, _) if r.perturbed => "PASS (negative control)",
        (true, _) => "PASS",
    };
    format!("{tag} {} {}", r.check, r.instance)
}

fn verify(cfg: &JobConfig, cli: &Cli, out: &mut impl Write) -> Result<Outcome> {
    let mut catalogs = match &cfg.entries {
        Some(entries) => vec![Catalog { name: "config".into(), entries: entries.clone() }],
        None => vec![Catalog::default_catalog()],
    };
    if cli.slow {
        catalogs.push(Catalog::slow_catalog());
    }
    let (mut total, mut failed) = (0usize, 0usize);
    let mut write_err = None;
    for catalog in &catalogs {
        run_catalog(catalog, |r| {
            total += 1;
            failed += usize::from(!r.ok());
            let line = if cli.json {
                serde_json::to_string(r).unwrap_or_default()
            } else {
                report_line(r)
            };
            if let Err(e) = writeln!(out, "{line}") {
                write_err.get_or_insert(e);
            }
        })?;
    }
    if let Some(e) = write_err {
        return Err(e.into());
    }
    eprintln!("{total} reports, {failed} unexpected");
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::VerificationFailed })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = load_config(cli)?;
    if cli.command != Command::Verify && cli.config.is_none() {
        bail!("--config is required for this command");
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let value = match cli.command {
        Command::Fold => {
            let q = cfg.quiver.as_ref().context("config needs a \"quiver\"")?;
            serde_json::to_value(q.fold()?.cartan)?
        }
        Command::Roots => roots(&cfg)?,
        Command::Initquiver => match initquiver(&cfg, cli.dot)? {
            Either::Json(v) => v,
            Either::Text(t) => {
                write!(out, "{t}")?;
                return Ok(Outcome::Ok);
            }
        },
        Command::SeedInit => cfg.instance()?.initial_seed()?.to_json(),
        Command::Mutate => mutate(&cfg)?,
        Command::Enumerate => enumerate(&cfg, cli.max_steps)?,
        Command::Verify => return verify(&cfg, cli, &mut out),
    };
    emit(&mut out, &value, cli.json)?;
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
