//! Executable checks that tie the cluster combinatorics to the shuffle
//! oracle, driven by JSON catalogs.

mod checks;
mod instance;
mod realize;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use checks::{
    check_bar_product, check_cluster_monomials, check_dual_canonical_conditions, check_exchange_relation,
    check_initial_lambda, check_restriction_factorization, check_square_identity, check_word_independence,
    cluster_variable_set, dual_canonical_conditions, extremal_word, find_minor, saturated_chains, weyl_orbit,
    ExtremalWord, Report, Status,
};
pub use instance::{folded_exchange, DatumSpec, Instance, InstanceSpec};
pub use realize::ShuffleRealization;

use crate::error::{Error, Result};
use crate::rootdata::{CartanDatum, Label, Weight};
use crate::uqn::{minor_to_shuffle, MinorSpec};

pub const DEFAULT_CATALOG: &str = include_str!("../../catalogs/default.json");
pub const SLOW_CATALOG: &str = include_str!("../../catalogs/slow.json");

/// A minor given by a weight in fundamental-weight coordinates and two
/// words: `D(lower lambda, upper lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorEntry {
    pub lambda: Vec<i64>,
    #[serde(default)]
    pub lower: Vec<Label>,
    #[serde(default)]
    pub upper: Vec<Label>,
}

impl MinorEntry {
    pub fn resolve(&self, cartan: &CartanDatum) -> Result<MinorSpec> {
        if self.lambda.len() != cartan.rank() {
            return Err(Error::Shape(format!("weight {:?} for rank {}", self.lambda, cartan.rank())));
        }
        Ok(MinorSpec::new(
            Weight(self.lambda.clone()),
            cartan.word_from_labels(&self.lower)?,
            cartan.word_from_labels(&self.upper)?,
        ))
    }
}

/// Minors to feed a per-element check: listed explicitly, or every initial
/// minor of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub minors: Vec<MinorEntry>,
}

impl MinorSource {
    fn resolve(&self) -> Result<(CartanDatum, Vec<MinorSpec>)> {
        let (cartan, mut out) = match (&self.instance, &self.datum) {
            (Some(spec), _) => {
                let inst = Instance::resolve(spec)?;
                let minors = inst.initial_minors()?;
                (inst.cartan, minors)
            }
            (None, Some(d)) => (d.cartan()?, Vec::new()),
            (None, None) => return Err(Error::Parse("minor source needs an instance or a datum".into())),
        };
        for m in &self.minors {
            out.push(m.resolve(&cartan)?);
        }
        Ok((cartan, out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CheckSpec {
    InitialLambda {
        instance: InstanceSpec,
    },
    /// Every exchangeable vertex when `vertex` (1-based) is absent.
    ExchangeRelation {
        instance: InstanceSpec,
        #[serde(default)]
        vertex: Option<usize>,
    },
    SquareIdentity(MinorSource),
    /// All saturated chains from `lower lambda` up to `upper lambda`.
    Restriction {
        datum: DatumSpec,
        lambda: Vec<i64>,
        lower: Vec<Label>,
        #[serde(default)]
        upper: Vec<Label>,
        #[serde(default = "default_chain_limit")]
        max_chains: usize,
    },
    DualCanonical(MinorSource),
    /// Every ordered pair of the listed minors.
    BarProduct(MinorSource),
    ClusterMonomials {
        instance: InstanceSpec,
        max_degree: i64,
        #[serde(default = "default_seed_limit")]
        max_seeds: usize,
    },
    WordIndependence {
        first: InstanceSpec,
        second: InstanceSpec,
        #[serde(default = "default_seed_limit")]
        max_seeds: usize,
    },
}

fn default_chain_limit() -> usize {
    64
}

fn default_seed_limit() -> usize {
    200
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub check: CheckSpec,
    #[serde(default)]
    pub perturb: bool,
    #[serde(default = "pass")]
    pub expect: Status,
}

fn pass() -> Status {
    Status::Pass
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    #[serde(default)]
    pub name: String,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog: {e}")))
    }

    pub fn default_catalog() -> Self {
        Self::from_json(DEFAULT_CATALOG).expect("bundled catalog parses")
    }

    pub fn slow_catalog() -> Self {
        Self::from_json(SLOW_CATALOG).expect("bundled catalog parses")
    }
}

fn errored(check: &str, instance: Value, perturb: bool, err: Error) -> Report {
    Report {
        check: check.to_string(),
        instance,
        perturbed: perturb,
        expected: Status::Pass,
        status: Status::Fail,
        witness: json!({"error": err.to_string()}),
    }
}

fn settle(check: &str, instance: impl FnOnce() -> Value, perturb: bool, r: Result<Report>) -> Report {
    r.unwrap_or_else(|e| errored(check, instance(), perturb, e))
}

/// Runs one entry. Input errors (unknown types, bad words, malformed minors)
/// come back as `Err`; errors inside a check become failed reports.
pub fn run_entry(entry: &CatalogEntry) -> Result<Vec<Report>> {
    let p = entry.perturb;
    let mut reports = Vec::new();
    match &entry.check {
        CheckSpec::InitialLambda { instance } => {
            let inst = Instance::resolve(instance)?;
            reports.push(settle("initial_lambda", || inst.describe(), p, check_initial_lambda(&inst, p)));
        }
        CheckSpec::ExchangeRelation { instance, vertex } => {
            let inst = Instance::resolve(instance)?;
            let vertices: Vec<usize> = match vertex {
                Some(v) => {
                    let k = v.checked_sub(1).filter(|k| inst.exchange.exchangeable.contains(k));
                    vec![k.ok_or(Error::NotExchangeable(*v))?]
                }
                None => inst.exchange.exchangeable.clone(),
            };
            for k in vertices {
                reports.push(settle("exchange_relation", || inst.describe(), p, check_exchange_relation(&inst, k, p)));
            }
        }
        CheckSpec::SquareIdentity(src) => {
            let (cartan, minors) = src.resolve()?;
            for m in &minors {
                let r = check_square_identity(&cartan, m, p);
                reports.push(settle("square_identity", || json!({"cartan": cartan}), p, r));
            }
        }
        CheckSpec::Restriction { datum, lambda, lower, upper, max_chains } => {
            let cartan = datum.cartan()?;
            let spec = MinorEntry { lambda: lambda.clone(), lower: lower.clone(), upper: upper.clone() }.resolve(&cartan)?;
            let mu = spec.mu(&cartan)?;
            let eta = spec.eta(&cartan)?;
            let chains = saturated_chains(&cartan, &spec.lambda, &mu, &eta, *max_chains);
            if chains.is_empty() {
                return Err(Error::Parse(format!("no dominance chain from {:?} to {:?}", mu.0, eta.0)));
            }
            for chain in &chains {
                let r = check_restriction_factorization(&cartan, &spec.lambda, chain, p);
                reports.push(settle("restriction", || json!({"cartan": cartan}), p, r));
            }
        }
        CheckSpec::DualCanonical(src) => {
            let (cartan, minors) = src.resolve()?;
            for m in &minors {
                let r = minor_to_shuffle(&cartan, m)
                    .and_then(|x| check_dual_canonical_conditions(&cartan, &x.element, p));
                reports.push(settle("dual_canonical", || json!({"cartan": cartan}), p, r));
            }
        }
        CheckSpec::BarProduct(src) => {
            let (cartan, minors) = src.resolve()?;
            let elements: Vec<_> = minors
                .iter()
                .map(|m| minor_to_shuffle(&cartan, m).map(|x| x.element))
                .collect::<Result<_>>()?;
            for x in &elements {
                for y in &elements {
                    let r = check_bar_product(&cartan, x, y, p);
                    reports.push(settle("bar_product", || json!({"cartan": cartan}), p, r));
                }
            }
        }
        CheckSpec::ClusterMonomials { instance, max_degree, max_seeds } => {
            let inst = Instance::resolve(instance)?;
            let r = check_cluster_monomials(&inst, *max_degree, *max_seeds, p);
            reports.push(settle("cluster_monomials", || inst.describe(), p, r));
        }
        CheckSpec::WordIndependence { first, second, max_seeds } => {
            let a = Instance::resolve(first)?;
            let b = Instance::resolve(second)?;
            let r = check_word_independence(&a, &b, *max_seeds, p);
            reports.push(settle("word_independence", || json!({"first": first, "second": second}), p, r));
        }
    }
    for r in &mut reports {
        r.expected = entry.expect;
    }
    Ok(reports)
}

/// Runs every entry in order, handing each report to `sink` as soon as it
/// is produced. Returns whether every report matched its expectation.
pub fn run_catalog(catalog: &Catalog, mut sink: impl FnMut(&Report)) -> Result<bool> {
    let mut all_ok = true;
    for entry in &catalog.entries {
        for r in run_entry(entry)? {
            all_ok &= r.ok();
            sink(&r);
        }
    }
    Ok(all_ok)
}
