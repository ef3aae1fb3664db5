//! The initial ice quiver of a reduced word and its exchange matrix.
//!
//! Vertex `t` (0-based here, 1-based in output) sits at position `t` in row
//! `word[t]`. Horizontal arrows point right to left along each row; arrows
//! between rows form a zigzag, with multiplicity `-(alpha_i, alpha_j)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::folding::FoldedCartan;
use crate::rootdata::{CartanDatum, Weight, WeylWord};
use crate::uqn::MinorSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IceQuiver {
    rows: Vec<String>,
    word: WeylWord,
    frozen: Vec<bool>,
    arrows: BTreeMap<(usize, usize), i64>,
}

impl IceQuiver {
    pub fn build(cartan: &CartanDatum, word: &[usize]) -> Result<Self> {
        cartan.require_reduced(word)?;
        let m = word.len();
        let mut arrows = BTreeMap::new();
        for a in 0..m {
            for b in 0..a {
                if word[a] == word[b] && !(b + 1..a).any(|c| word[c] == word[b]) {
                    *arrows.entry((a, b)).or_insert(0) += 1;
                }
            }
        }
        for a in 0..m {
            for b in a + 1..m {
                let (i, j) = (word[a], word[b]);
                if i == j || !zigzag(word, a, b) {
                    continue;
                }
                let mult = -cartan.simple_form(i, j);
                if mult > 0 {
                    *arrows.entry((a, b)).or_insert(0) += mult;
                }
            }
        }
        let frozen = (0..m)
            .map(|t| !(t + 1..m).any(|c| word[c] == word[t]))
            .collect();
        Ok(Self {
            rows: cartan.labels().to_vec(),
            word: word.to_vec(),
            frozen,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_frozen(&self, t: usize) -> bool {
        self.frozen[t]
    }

    pub fn frozen(&self) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.frozen[t]).collect()
    }

    /// Arrows `(source, target) -> multiplicity`, 0-based positions.
    pub fn arrows(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.arrows
    }

    pub fn arrow_count(&self, s: usize, t: usize) -> i64 {
        self.arrows.get(&(s, t)).copied().unwrap_or(0)
    }

    /// `"t:i"` with `t` 1-based.
    pub fn vertex_name(&self, t: usize) -> String {
        format!("{}:{}", t + 1, self.rows[self.word[t]])
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph initial_quiver {\n  rankdir=LR;\n  node [shape=box];\n");
        for t in 0..self.len() {
            let extra = if self.frozen[t] { ", peripheries=2" } else { "" };
            let _ = writeln!(s, "  \"{}\" [label=\"{}\"{}];", self.vertex_name(t), self.vertex_name(t), extra);
        }
        for (&(a, b), &m) in &self.arrows {
            let label = if m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            let _ = writeln!(s, "  \"{}\" -> \"{}\"{};", self.vertex_name(a), self.vertex_name(b), label);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct V<'a> {
            position: usize,
            row: &'a str,
            frozen: bool,
        }
        let vertices: Vec<V> = (0..self.len())
            .map(|t| V { position: t + 1, row: &self.rows[self.word[t]], frozen: self.frozen[t] })
            .collect();
        let arrows: Vec<[i64; 3]> = self
            .arrows
            .iter()
            .map(|(&(a, b), &m)| [a as i64 + 1, b as i64 + 1, m])
            .collect();
        serde_json::json!({"vertices": vertices, "arrows": arrows})
    }
}

/// Arrow condition between rows: `a < b`, no vertex of row `i` strictly
/// between them, and there is no `c > b` in row `j` such that no `d` in row
/// `i` satisfies `c > d > b`.
fn zigzag(word: &[usize], a: usize, b: usize) -> bool {
    let (i, j) = (word[a], word[b]);
    if (a + 1..b).any(|d| word[d] == i) {
        return false;
    }
    !(b + 1..word.len()).any(|c| word[c] == j && !(b + 1..c).any(|d| word[d] == i))
}

/// The initial cluster variables `D(s_{i_1} ... s_{i_t} omega_{i_t}, omega_{i_t})`.
pub fn initial_cluster_variables(cartan: &CartanDatum, word: &[usize]) -> Result<Vec<MinorSpec>> {
    cartan.require_reduced(word)?;
    let n = cartan.rank();
    Ok((0..word.len())
        .map(|t| MinorSpec::new(Weight::fundamental(n, word[t]), word[..=t].to_vec(), Vec::new()))
        .collect())
}

/// Orbit-labelled exchange matrix. Rows are all orbits, columns the
/// exchangeable ones, both in orbit order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeData {
    pub orbits: Vec<Vec<usize>>,
    pub frozen: Vec<bool>,
    pub exchangeable: Vec<usize>,
    pub b: Vec<Vec<i64>>,
    /// Orbit sizes, or symmetrizers of the letters when built directly.
    pub sizes: Vec<i64>,
}

impl ExchangeData {
    /// The square part of `B` on exchangeable rows.
    pub fn principal(&self) -> Vec<Vec<i64>> {
        self.exchangeable.iter().map(|&r| self.b[r].clone()).collect()
    }

    /// Column of an exchangeable orbit.
    pub fn column_index(&self, orbit: usize) -> Option<usize> {
        self.exchangeable.iter().position(|&e| e == orbit)
    }
}

/// Sums arrows over orbits: `b_ts` counts arrows from one element of `t` to
/// all of `s`, positive when leaving `t`.
pub fn fold_exchange_matrix(q: &IceQuiver, orbits: &[Vec<usize>]) -> Result<ExchangeData> {
    let m = q.len();
    let mut owner = vec![usize::MAX; m];
    for (k, orb) in orbits.iter().enumerate() {
        for &v in orb {
            if v >= m || owner[v] != usize::MAX {
                return Err(Error::InvalidQuiver(format!("vertex {} is not covered exactly once", v + 1)));
            }
            owner[v] = k;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::InvalidQuiver("orbits do not cover the quiver".into()));
    }
    let signed = |x: usize, y: usize| q.arrow_count(x, y) - q.arrow_count(y, x);
    let mut frozen = Vec::with_capacity(orbits.len());
    for orb in orbits {
        let f = q.is_frozen(orb[0]);
        if orb.iter().any(|&v| q.is_frozen(v) != f) {
            return Err(Error::InvalidQuiver("orbit mixes frozen and exchangeable vertices".into()));
        }
        for &u in orb {
            for &v in orb {
                if signed(u, v) != 0 {
                    return Err(Error::InvalidQuiver(format!(
                        "arrow inside orbit between {} and {}",
                        u + 1,
                        v + 1
                    )));
                }
            }
        }
        frozen.push(f);
    }
    let exchangeable: Vec<usize> = (0..orbits.len()).filter(|&k| !frozen[k]).collect();
    let mut b = vec![vec![0i64; exchangeable.len()]; orbits.len()];
    for (t, orb_t) in orbits.iter().enumerate() {
        for (col, &s) in exchangeable.iter().enumerate() {
            let count = |x: usize| orbits[s].iter().map(|&y| signed(x, y)).sum::<i64>();
            let value = count(orb_t[0]);
            if orb_t.iter().any(|&x| count(x) != value) {
                return Err(Error::InvalidQuiver(format!(
                    "orbit of vertex {} is not compatible with the arrows",
                    orb_t[0] + 1
                )));
            }
            b[t][col] = value;
        }
    }
    Ok(ExchangeData {
        orbits: orbits.to_vec(),
        frozen,
        exchangeable,
        b,
        sizes: orbits.iter().map(|o| o.len() as i64).collect(),
    })
}

/// Exchange matrix of a reduced word for any symmetrizable datum: the
/// zigzag arrow from `t` to `s` contributes `-a_{i_t i_s}` to `b_ts` and
/// `a_{i_s i_t}` to `b_st`. Agrees with folding when the datum is folded.
pub fn exchange_matrix(cartan: &CartanDatum, word: &[usize]) -> Result<ExchangeData> {
    cartan.require_reduced(word)?;
    let m = word.len();
    let mut signed = vec![vec![0i64; m]; m];
    for a in 0..m {
        if let Some(next) = (a + 1..m).find(|&c| word[c] == word[a]) {
            signed[next][a] += 1;
            signed[a][next] -= 1;
        }
        for b in a + 1..m {
            if word[a] != word[b] && zigzag(word, a, b) {
                signed[a][b] -= cartan.a(word[a], word[b]);
                signed[b][a] += cartan.a(word[b], word[a]);
            }
        }
    }
    let frozen: Vec<bool> = (0..m).map(|t| !(t + 1..m).any(|c| word[c] == word[t])).collect();
    let exchangeable: Vec<usize> = (0..m).filter(|&t| !frozen[t]).collect();
    let b = (0..m)
        .map(|t| exchangeable.iter().map(|&s| signed[t][s]).collect())
        .collect();
    Ok(ExchangeData {
        orbits: trivial_orbits(m),
        frozen,
        exchangeable,
        b,
        sizes: word.iter().map(|&i| cartan.d(i)).collect(),
    })
}

/// Singleton orbits.
pub fn trivial_orbits(len: usize) -> Vec<Vec<usize>> {
    (0..len).map(|t| vec![t]).collect()
}

/// Position blocks of an unfolded word: letter `k` of the folded word
/// becomes one orbit of consecutive positions.
pub fn block_orbits(folded: &FoldedCartan, folded_word: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(folded_word.len());
    let mut start = 0;
    for &j in folded_word {
        let len = folded.orbits[j].len();
        out.push((start..start + len).collect());
        start += len;
    }
    out
}

/// The permutation of positions induced by the vertex automorphism `aut`
/// within each block.
pub fn block_automorphism(aut: &[usize], unfolded_word: &[usize], blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..unfolded_word.len()).collect();
    for block in blocks {
        for &p in block {
            let image = aut[unfolded_word[p]];
            if let Some(&target) = block.iter().find(|&&x| unfolded_word[x] == image) {
                perm[p] = target;
            }
        }
    }
    perm
}

/// True when `perm` maps arrows to arrows with equal multiplicity.
pub fn preserves_arrows(q: &IceQuiver, perm: &[usize]) -> bool {
    q.arrows()
        .iter()
        .all(|(&(a, b), &m)| q.arrow_count(perm[a], perm[b]) == m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::QuiverWithAut;

    fn rank3_hyperbolic() -> CartanDatum {
        CartanDatum::new(
            vec!["i".into(), "j".into(), "k".into()],
            vec![vec![2, -3, -4], vec![-3, 2, -2], vec![-4, -2, 2]],
            vec![1, 1, 1],
        )
        .unwrap()
    }

    /// Oracle: arrows between rows from `a` to `b` iff `a < b < next(a)` and
    /// `next(a) <= next(b)`, where `next` is the following position in the
    /// same row and an absent one counts as infinity.
    fn zigzag_oracle(word: &[usize], a: usize, b: usize) -> bool {
        let next = |x: usize| (x + 1..word.len()).find(|&c| word[c] == word[x]).unwrap_or(usize::MAX);
        a < b && b < next(a) && next(a) <= next(b)
    }

    #[test]
    fn ijk_word_quiver() {
        let c = rank3_hyperbolic();
        let word = c.parse_word("i j i k i j i j k j").unwrap();
        let q = IceQuiver::build(&c, &word).unwrap();
        let mut expected: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (a, b, m) in [
            (1, 2, 3), (2, 4, 2), (2, 5, 3), (3, 4, 4), (4, 7, 4), (4, 8, 2),
            (5, 6, 3), (6, 7, 3), (7, 9, 4), (7, 10, 3), (8, 9, 2), (9, 10, 2),
            (3, 1, 1), (5, 3, 1), (7, 5, 1), (6, 2, 1), (8, 6, 1), (10, 8, 1), (9, 4, 1),
        ] {
            expected.insert((a - 1, b - 1), m);
        }
        assert_eq!(q.arrows(), &expected);
        assert_eq!(q.frozen(), vec![6, 8, 9]);
    }

    #[test]
    fn zigzag_agrees_with_oracle() {
        let c = rank3_hyperbolic();
        let words = ["i j i k i j i j k j", "i j k i j k", "k j i k j i", "i k j i"];
        for w in words {
            let word = c.parse_word(w).unwrap();
            for a in 0..word.len() {
                for b in 0..word.len() {
                    if word[a] != word[b] {
                        assert_eq!(a < b && zigzag(&word, a, b), zigzag_oracle(&word, a, b), "{w} {a} {b}");
                    }
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn zigzag_random_words(word in proptest::collection::vec(0usize..4, 0..14)) {
            for a in 0..word.len() {
                for b in a + 1..word.len() {
                    if word[a] != word[b] {
                        proptest::prop_assert_eq!(zigzag(&word, a, b), zigzag_oracle(&word, a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn a2_quiver() {
        let c = CartanDatum::finite("A", 2).unwrap();
        let q = IceQuiver::build(&c, &[0, 1, 0]).unwrap();
        let arrows: Vec<(usize, usize)> = q.arrows().keys().copied().collect();
        assert_eq!(arrows, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(q.frozen(), vec![1, 2]);
        let single = IceQuiver::build(&c, &[1]).unwrap();
        assert!(single.arrows().is_empty());
        assert_eq!(single.frozen(), vec![0]);
        assert!(IceQuiver::build(&c, &[0, 0]).is_err());

        let ex = fold_exchange_matrix(&q, &trivial_orbits(3)).unwrap();
        assert_eq!(ex.exchangeable, vec![0]);
        assert_eq!(ex.b, vec![vec![0], vec![-1], vec![1]]);
    }

    #[test]
    fn initial_variables() {
        let c = CartanDatum::finite("A", 2).unwrap();
        let specs = initial_cluster_variables(&c, &[0, 1, 0]).unwrap();
        assert_eq!(specs[0], MinorSpec::new(Weight(vec![1, 0]), vec![0], vec![]));
        assert_eq!(specs[1], MinorSpec::new(Weight(vec![0, 1]), vec![0, 1], vec![]));
        assert_eq!(specs[2], MinorSpec::new(Weight(vec![1, 0]), vec![0, 1, 0], vec![]));
    }

    #[test]
    fn identity_orbits_give_signed_adjacency() {
        let c = rank3_hyperbolic();
        let word = c.parse_word("i j i k i j i j k j").unwrap();
        let q = IceQuiver::build(&c, &word).unwrap();
        let ex = fold_exchange_matrix(&q, &trivial_orbits(q.len())).unwrap();
        for t in 0..q.len() {
            for (col, &s) in ex.exchangeable.iter().enumerate() {
                assert_eq!(ex.b[t][col], q.arrow_count(t, s) - q.arrow_count(s, t));
            }
        }
    }

    #[test]
    fn folded_c2() {
        let a3 = QuiverWithAut::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![(0, 1), (2, 1)],
            vec![2, 1, 0],
        )
        .unwrap();
        let folded = a3.fold().unwrap();
        let folded_word = vec![0, 1, 0, 1];
        let unfolded = folded.unfold_word(&folded_word).unwrap();
        let sym = a3.unfolded_cartan().unwrap();
        let q = IceQuiver::build(&sym, &unfolded).unwrap();
        let blocks = block_orbits(&folded, &folded_word);
        assert_eq!(blocks, vec![vec![0, 1], vec![2], vec![3, 4], vec![5]]);
        let perm = block_automorphism(a3.automorphism(), &unfolded, &blocks);
        assert_eq!(perm, vec![1, 0, 2, 4, 3, 5]);
        assert!(preserves_arrows(&q, &perm));
        let ex = fold_exchange_matrix(&q, &blocks).unwrap();
        assert_eq!(ex.frozen, vec![false, false, true, true]);
        assert_eq!(ex.b, vec![vec![0, 1], vec![-2, 0], vec![1, -1], vec![0, 1]]);
        let direct = exchange_matrix(&folded.cartan, &folded_word).unwrap();
        assert_eq!(direct.b, ex.b);
        assert_eq!(direct.sizes, ex.sizes);
        // d_j b_jk = -d_k b_kj with d = (2, 1)
        let p = ex.principal();
        let d = folded.cartan.symmetrizers();
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(d[j] * p[j][k], -d[k] * p[k][j]);
            }
        }
    }

    #[test]
    fn direct_matrix_matches_quiver_when_symmetric() {
        let c = rank3_hyperbolic();
        let word = c.parse_word("i j i k i j i j k j").unwrap();
        let q = IceQuiver::build(&c, &word).unwrap();
        let folded = fold_exchange_matrix(&q, &trivial_orbits(q.len())).unwrap();
        assert_eq!(exchange_matrix(&c, &word).unwrap(), folded);
    }

    #[test]
    fn folded_g2() {
        let d4 = QuiverWithAut::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![(0, 1), (2, 1), (3, 1)],
            vec![2, 1, 3, 0],
        )
        .unwrap();
        let folded = d4.fold().unwrap();
        let g2 = &folded.cartan;
        let w0 = g2.longest_word();
        let unfolded = folded.unfold_word(&w0).unwrap();
        let q = IceQuiver::build(&d4.unfolded_cartan().unwrap(), &unfolded).unwrap();
        let blocks = block_orbits(&folded, &w0);
        let perm = block_automorphism(d4.automorphism(), &unfolded, &blocks);
        assert!(preserves_arrows(&q, &perm));
        let ex = fold_exchange_matrix(&q, &blocks).unwrap();
        assert_eq!(exchange_matrix(g2, &w0).unwrap().b, ex.b);
    }

    #[test]
    fn dot_output() {
        let c = CartanDatum::finite("A", 2).unwrap();
        let q = IceQuiver::build(&c, &[0, 1, 0]).unwrap();
        let dot = q.to_dot();
        assert!(dot.contains("\"2:2\" [label=\"2:2\", peripheries=2];"));
        assert!(dot.contains("\"3:1\" -> \"1:1\";"));
    }
}
