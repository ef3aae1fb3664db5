use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::seed::QuantumSeed;
use super::torus::TorusElement;
use crate::error::Result;

/// Seeds reachable by mutation, deduplicated as unordered clusters.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub seeds: Vec<QuantumSeed>,
    /// `(from, vertex, to)` for every mutation performed.
    pub edges: Vec<(usize, usize, usize)>,
    /// Distinct cluster variables, frozen ones included, in sorted order.
    pub variables: Vec<TorusElement>,
    /// Set when the seed bound stopped the search early.
    pub partial: bool,
}

/// Breadth-first search over mutations at exchangeable vertices, visiting
/// at most `max_seeds` seeds.
pub fn enumerate_exchange_graph(initial: &QuantumSeed, max_seeds: usize) -> Result<ExchangeGraph> {
    let mut index: BTreeMap<Vec<TorusElement>, usize> = BTreeMap::new();
    let mut seeds = vec![initial.clone()];
    index.insert(initial.key(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut partial = false;
    while let Some(i) = queue.pop_front() {
        let ex = seeds[i].pair().exchangeable().to_vec();
        for k in ex {
            let next = seeds[i].mutate(k)?;
            let key = next.key();
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if seeds.len() >= max_seeds {
                        partial = true;
                        continue;
                    }
                    let j = seeds.len();
                    index.insert(key, j);
                    seeds.push(next);
                    queue.push_back(j);
                    j
                }
            };
            edges.push((i, k, j));
        }
    }
    let variables: BTreeSet<TorusElement> = seeds.iter().flat_map(|s| s.variables().iter().cloned()).collect();
    Ok(ExchangeGraph {
        seeds,
        edges,
        variables: variables.into_iter().collect(),
        partial,
    })
}
