//! Quivers with an admissible automorphism and the folded Cartan datum.
//!
//! Vertex ids are positions in the vertex list. Orbits are sorted by their
//! smallest vertex id and list their members in ascending order; the folded
//! index for an orbit is labelled by its smallest vertex.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{CartanDatum, Label, WeylWord};

/// A directed multigraph with a vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverWithAut {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    aut: Vec<usize>,
}

/// First reason a quiver is not admissible for folding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotPermutation,
    Loop { vertex: String },
    EdgeInsideOrbit { src: String, dst: String },
    EdgeNotPreserved { src: String, dst: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPermutation => write!(f, "automorphism is not a permutation of the vertices"),
            Violation::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            Violation::EdgeInsideOrbit { src, dst } => {
                write!(f, "edge inside orbit: {src} -> {dst}")
            }
            Violation::EdgeNotPreserved { src, dst } => {
                write!(f, "automorphism does not preserve edge multiplicities at {src} -> {dst}")
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverJson {
    vertices: Vec<Label>,
    edges: Vec<(Label, Label)>,
    #[serde(default)]
    automorphism: BTreeMap<String, Label>,
}

#[derive(Serialize)]
struct QuiverJsonOut<'a> {
    vertices: &'a [String],
    edges: Vec<[&'a str; 2]>,
    automorphism: BTreeMap<&'a str, &'a str>,
}

impl Serialize for QuiverWithAut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverJsonOut {
            vertices: &self.vertices,
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.vertices[a].as_str(), self.vertices[b].as_str()])
                .collect(),
            automorphism: (0..self.vertices.len())
                .map(|v| (self.vertices[v].as_str(), self.vertices[self.aut[v]].as_str()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuiverWithAut {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QuiverJson::deserialize(d)?;
        let vertices: Vec<String> = raw.vertices.into_iter().map(Label::into_string).collect();
        let edges = raw
            .edges
            .into_iter()
            .map(|(a, b)| (a.into_string(), b.into_string()))
            .collect::<Vec<_>>();
        let aut = raw
            .automorphism
            .into_iter()
            .map(|(a, b)| (a, b.into_string()))
            .collect::<Vec<_>>();
        QuiverWithAut::from_labels(vertices, &edges, &aut).map_err(D::Error::custom)
    }
}

impl QuiverWithAut {
    /// `aut[v]` is the image of vertex `v`.
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>, aut: Vec<usize>) -> Result<Self> {
        let n = vertices.len();
        if aut.len() != n {
            return Err(Error::InvalidQuiver("automorphism has wrong length".into()));
        }
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidQuiver(format!("edge ({a}, {b}) out of range")));
        }
        Ok(Self { vertices, edges, aut })
    }

    /// Builds from labels; vertices absent from `aut` are fixed.
    pub fn from_labels<S: AsRef<str>>(
        vertices: Vec<String>,
        edges: &[(S, S)],
        aut: &[(S, S)],
    ) -> Result<Self> {
        let find = |l: &str| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {l:?}")))
        };
        let e = edges
            .iter()
            .map(|(a, b)| Ok((find(a.as_ref())?, find(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        let mut perm: Vec<usize> = (0..vertices.len()).collect();
        for (a, b) in aut {
            perm[find(a.as_ref())?] = find(b.as_ref())?;
        }
        Self::new(vertices, e, perm)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn automorphism(&self) -> &[usize] {
        &self.aut
    }

    /// Number of edges between `u` and `v` in either direction.
    pub fn edges_between(&self, u: usize, v: usize) -> i64 {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .count() as i64
    }

    /// Order of the automorphism.
    pub fn order(&self) -> usize {
        self.orbits().iter().map(Vec::len).fold(1, num_integer::lcm)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut orb = vec![v];
            seen[v] = true;
            let mut x = self.aut[v];
            while x != v && !seen[x] {
                seen[x] = true;
                orb.push(x);
                x = self.aut[x];
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// Index of the orbit containing each vertex.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.vertices.len()];
        for (k, orb) in self.orbits().iter().enumerate() {
            for &v in orb {
                idx[v] = k;
            }
        }
        idx
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.vertices.len();
        let mut hit = vec![false; n];
        for &x in &self.aut {
            if x >= n || hit[x] {
                return Err(Violation::NotPermutation);
            }
            hit[x] = true;
        }
        let name = |v: usize| self.vertices[v].clone();
        if let Some(&(a, _)) = self.edges.iter().find(|&&(a, b)| a == b) {
            return Err(Violation::Loop { vertex: name(a) });
        }
        let orbit = self.orbit_index();
        if let Some(&(a, b)) = self.edges.iter().find(|&&(a, b)| orbit[a] == orbit[b]) {
            return Err(Violation::EdgeInsideOrbit { src: name(a), dst: name(b) });
        }
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &e in &self.edges {
            *counts.entry(e).or_default() += 1;
        }
        for (&(a, b), &m) in &counts {
            let image = (self.aut[a], self.aut[b]);
            if counts.get(&image).copied().unwrap_or(0) != m {
                return Err(Violation::EdgeNotPreserved { src: name(a), dst: name(b) });
            }
        }
        Ok(())
    }

    /// The symmetric Cartan datum of the underlying graph.
    pub fn unfolded_cartan(&self) -> Result<CartanDatum> {
        let n = self.vertices.len();
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { -self.edges_between(i, j) })
                    .collect()
            })
            .collect();
        CartanDatum::new(self.vertices.clone(), a, vec![1; n])
    }

    pub fn fold(&self) -> Result<FoldedCartan> {
        self.validate()
            .map_err(|v| Error::InvalidQuiver(v.to_string()))?;
        let orbits = self.orbits();
        let m = orbits.len();
        let mut pairing = vec![vec![0i64; m]; m];
        for j in 0..m {
            for k in 0..m {
                pairing[j][k] = if j == k {
                    2 * orbits[j].len() as i64
                } else {
                    -orbits[j]
                        .iter()
                        .flat_map(|&u| orbits[k].iter().map(move |&v| (u, v)))
                        .map(|(u, v)| self.edges_between(u, v))
                        .sum::<i64>()
                };
            }
        }
        let mut a = vec![vec![0i64; m]; m];
        for j in 0..m {
            let size = orbits[j].len() as i64;
            for k in 0..m {
                if pairing[j][k] % size != 0 {
                    return Err(Error::InvalidQuiver(format!(
                        "pairing {} between orbits is not divisible by orbit size {size}",
                        pairing[j][k]
                    )));
                }
                a[j][k] = pairing[j][k] / size;
            }
        }
        let labels = orbits.iter().map(|o| self.vertices[o[0]].clone()).collect();
        let d = orbits.iter().map(|o| o.len() as i64).collect();
        let cartan = CartanDatum::new(labels, a, d)?;
        Ok(FoldedCartan { orbits, pairing, cartan })
    }
}

/// The orbit set with its pairing and derived Cartan datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedCartan {
    pub orbits: Vec<Vec<usize>>,
    pub pairing: Vec<Vec<i64>>,
    pub cartan: CartanDatum,
}

impl FoldedCartan {
    /// Replaces each orbit letter by its vertices in ascending order.
    pub fn unfold_word(&self, w: &[usize]) -> Result<WeylWord> {
        let mut out = Vec::new();
        for &j in w {
            let orb = self
                .orbits
                .get(j)
                .ok_or_else(|| Error::UnknownIndex(j.to_string()))?;
            out.extend_from_slice(orb);
        }
        Ok(out)
    }
}
