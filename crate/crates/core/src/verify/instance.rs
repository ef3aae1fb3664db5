use serde::{Deserialize, Serialize};

use super::realize::ShuffleRealization;
use crate::error::{Error, Result};
use crate::folding::QuiverWithAut;
use crate::initquiver::{self, ExchangeData, IceQuiver};
use crate::qcluster::QuantumSeed;
use crate::rootdata::{CartanDatum, Label, WeylWord};
use crate::uqn::{minor_to_shuffle, MinorSpec, ShuffleElement};

/// Where a Cartan datum comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatumSpec {
    /// `"A3"`, `"B2"`, `"G2"`, ...
    Finite(String),
    Cartan(CartanDatum),
    /// A symmetric quiver with automorphism, folded.
    Folded(QuiverWithAut),
}

impl DatumSpec {
    pub fn cartan(&self) -> Result<CartanDatum> {
        match self {
            DatumSpec::Finite(name) => {
                let split = name
                    .find(|c: char| c.is_ascii_digit())
                    .ok_or_else(|| Error::Parse(format!("finite type {name:?}")))?;
                let rank = name[split..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("finite type {name:?}")))?;
                CartanDatum::finite(&name[..split], rank)
            }
            DatumSpec::Cartan(c) => Ok(c.clone()),
            DatumSpec::Folded(q) => Ok(q.fold()?.cartan),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub datum: DatumSpec,
    pub word: Vec<Label>,
}

/// A resolved datum with a reduced word and its exchange matrix.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub cartan: CartanDatum,
    pub word: WeylWord,
    pub exchange: ExchangeData,
}

impl Instance {
    pub fn resolve(spec: &InstanceSpec) -> Result<Self> {
        let cartan = spec.datum.cartan()?;
        let word = cartan.word_from_labels(&spec.word)?;
        cartan.require_reduced(&word)?;
        let exchange = match &spec.datum {
            DatumSpec::Folded(q) => folded_exchange(q, &word)?,
            _ => initquiver::exchange_matrix(&cartan, &word)?,
        };
        Ok(Self { spec: spec.clone(), cartan, word, exchange })
    }

    pub fn describe(&self) -> serde_json::Value {
        serde_json::to_value(&self.spec).unwrap_or_default()
    }

    pub fn initial_minors(&self) -> Result<Vec<MinorSpec>> {
        initquiver::initial_cluster_variables(&self.cartan, &self.word)
    }

    pub fn initial_elements(&self) -> Result<Vec<ShuffleElement>> {
        self.initial_minors()?
            .iter()
            .map(|m| minor_to_shuffle(&self.cartan, m).map(|x| x.element))
            .collect()
    }

    pub fn initial_seed(&self) -> Result<QuantumSeed> {
        QuantumSeed::initial(&self.cartan, &self.word, &self.exchange)
    }

    pub fn realization(&self, seed: &QuantumSeed) -> Result<ShuffleRealization<'_>> {
        ShuffleRealization::new(&self.cartan, seed.torus().clone(), self.initial_elements()?)
    }
}

/// Exchange matrix of the unfolded quiver summed over position blocks,
/// after checking the automorphism acts on it.
pub fn folded_exchange(q: &QuiverWithAut, folded_word: &[usize]) -> Result<ExchangeData> {
    let folded = q.fold()?;
    let unfolded = folded.unfold_word(folded_word)?;
    let sym = q.unfolded_cartan()?;
    let quiver = IceQuiver::build(&sym, &unfolded)?;
    let blocks = initquiver::block_orbits(&folded, folded_word);
    let perm = initquiver::block_automorphism(q.automorphism(), &unfolded, &blocks);
    if !initquiver::preserves_arrows(&quiver, &perm) {
        return Err(Error::InvalidQuiver("automorphism does not act on the initial quiver".into()));
    }
    initquiver::fold_exchange_matrix(&quiver, &blocks)
}
