use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::shapovalov::{FWord, Shapovalov, Vector};
use super::shuffle::ShuffleElement;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::rootdata::{CartanDatum, Root, Weight, WeylWord};

/// `v_{w lambda} = F_{i_1}^{(c_1)} ... F_{i_n}^{(c_n)} v_lambda`.
pub fn extremal_vector(cartan: &CartanDatum, lambda: &Weight, w: &[usize]) -> Result<FWord> {
    let c = cartan.extremal_exponents(lambda, w)?;
    Ok(FWord::new(
        w.iter().zip(c).map(|(&i, c)| (i, c as u32)).collect(),
    ))
}

/// The minor `D(lower lambda, upper lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorSpec {
    pub lambda: Weight,
    pub lower: WeylWord,
    pub upper: WeylWord,
}

impl MinorSpec {
    pub fn new(lambda: Weight, lower: WeylWord, upper: WeylWord) -> Self {
        Self { lambda, lower, upper }
    }

    pub fn mu(&self, cartan: &CartanDatum) -> Result<Weight> {
        cartan.apply_word_weight(&self.lower, &self.lambda)
    }

    pub fn eta(&self, cartan: &CartanDatum) -> Result<Weight> {
        cartan.apply_word_weight(&self.upper, &self.lambda)
    }

    /// The same words on `k lambda`, giving `D(k mu, k eta)`.
    pub fn scaled(&self, k: i64) -> Self {
        Self {
            lambda: self.lambda.scale(k),
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }
}

/// A computed minor; `warning` is set when `mu <= eta` fails and the
/// element is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub element: ShuffleElement,
    pub warning: Option<String>,
}

/// Coefficient on `[i_1, ..., i_n]` is `(E_{i_1} ... E_{i_n} v_mu, v_eta)`.
pub fn minor_to_shuffle(cartan: &CartanDatum, spec: &MinorSpec) -> Result<Minor> {
    let n = cartan.rank();
    let v_mu = extremal_vector(cartan, &spec.lambda, &spec.lower)?;
    let v_eta = extremal_vector(cartan, &spec.lambda, &spec.upper)?;
    let mu = spec.mu(cartan)?;
    let eta = spec.eta(cartan)?;
    if !cartan.dominance_leq(&mu, &eta) {
        let weight = cartan.weight_to_root(&eta.sub(&mu)).unwrap_or_else(|| Root::zero(n));
        return Ok(Minor {
            element: ShuffleElement::zero(weight),
            warning: Some(format!("{:?} is not below {:?}; minor is zero", mu.0, eta.0)),
        });
    }
    let nu = v_mu.depth(n).sub(&v_eta.depth(n));
    let norm = &v_mu.factorial_factor(cartan) * &v_eta.factorial_factor(cartan);
    let eta_word = v_eta.expand();
    let mut ctx = Shapovalov::new(cartan, spec.lambda.clone())?;
    let mut start: Vector = BTreeMap::new();
    start.insert(v_mu.expand(), Laurent::one());
    let mut raw: Vec<(Vec<usize>, Laurent)> = Vec::new();
    let mut rev_word = Vec::new();
    descend(&mut ctx, &start, nu, &eta_word, &mut rev_word, &mut raw);
    let mut terms = Vec::with_capacity(raw.len());
    for (w, c) in raw {
        let v = c.div_exact(&norm).ok_or_else(|| {
            Error::InexactDivision(format!("minor coefficient {c} on {w:?} by {norm}"))
        })?;
        terms.push((w, v));
    }
    let weight = eta.sub(&mu);
    let weight = cartan
        .weight_to_root(&weight)
        .ok_or_else(|| Error::Shape("minor weight outside the root lattice".into()))?;
    Ok(Minor {
        element: ShuffleElement::from_terms(weight, terms)?,
        warning: None,
    })
}

/// Applies E-letters right to left, pruning zero vectors.
fn descend(
    ctx: &mut Shapovalov<'_>,
    v: &Vector,
    remaining: Root,
    eta_word: &[usize],
    rev_word: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Laurent)>,
) {
    if remaining.is_zero() {
        let c = ctx.pair_word_vector(eta_word, v);
        if !c.is_zero() {
            out.push((rev_word.iter().rev().copied().collect(), c));
        }
        return;
    }
    for i in 0..remaining.rank() {
        if remaining.0[i] == 0 {
            continue;
        }
        let next = ctx.apply_e(i, v);
        if next.is_empty() {
            continue;
        }
        let mut r = remaining.clone();
        r.0[i] -= 1;
        rev_word.push(i);
        descend(ctx, &next, r, eta_word, rev_word, out);
        rev_word.pop();
    }
}
