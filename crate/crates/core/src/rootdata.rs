//! Symmetrizable Cartan data and Weyl group combinatorics.
//!
//! Conventions: `a[i][j] = <alpha_i^vee, alpha_j>` and
//! `(alpha_i, alpha_j) = d_i a[i][j]`. A [`Weight`] is stored in the
//! fundamental-weight basis, a [`Root`] in the simple-root basis, so that
//! `alpha_j = sum_i a[i][j] omega_i`. Words are sequences of internal index
//! positions; `apply_word` applies the rightmost letter first.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::Coeff;

/// A word in the simple reflections, as internal indices.
pub type WeylWord = Vec<usize>;

macro_rules! lattice_vector {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(n: usize) -> Self {
                Self(vec![0; n])
            }

            pub fn unit(n: usize, i: usize) -> Self {
                let mut v = vec![0; n];
                v[i] = 1;
                Self(v)
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn add(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn scale(&self, k: i64) -> Self {
                Self(self.0.iter().map(|a| a * k).collect())
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }
        }
    };
}

lattice_vector!(Weight);
lattice_vector!(Root);

impl Weight {
    pub fn fundamental(n: usize, i: usize) -> Self {
        Self::unit(n, i)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl Root {
    pub fn simple(n: usize, i: usize) -> Self {
        Self::unit(n, i)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && !self.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&x| x <= 0) && !self.is_zero()
    }
}

/// A symmetrizable generalized Cartan matrix with symmetrizers and labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    labels: Vec<String>,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
}

/// An index label. JSON accepts strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Label(pub String);

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        Ok(Label(match Raw::deserialize(d)? {
            Raw::Str(s) => s,
            Raw::Int(n) => n.to_string(),
        }))
    }
}

impl Label {
    pub fn into_string(self) -> String {
        self.0
    }
}

impl AsRef<str> for Label {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CartanJson {
    indices: Vec<Label>,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
}

#[derive(Serialize)]
struct CartanJsonOut<'a> {
    indices: &'a [String],
    cartan: &'a [Vec<i64>],
    symmetrizers: &'a [i64],
}

impl Serialize for CartanDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CartanJsonOut {
            indices: &self.labels,
            cartan: &self.a,
            symmetrizers: &self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CartanDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CartanJson::deserialize(d)?;
        let labels = raw.indices.into_iter().map(Label::into_string).collect();
        CartanDatum::new(labels, raw.cartan, raw.symmetrizers).map_err(serde::de::Error::custom)
    }
}

impl CartanDatum {
    pub fn new(labels: Vec<String>, a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let n = labels.len();
        let bad = |m: String| Err(Error::InvalidCartan(m));
        if a.len() != n || a.iter().any(|r| r.len() != n) || d.len() != n {
            return bad(format!("expected {n}x{n} matrix and {n} symmetrizers"));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return bad("duplicate index labels".into());
        }
        for i in 0..n {
            if d[i] <= 0 {
                return bad(format!("symmetrizer d_{} = {} is not positive", labels[i], d[i]));
            }
            if a[i][i] != 2 {
                return bad(format!("diagonal entry at {} is {}", labels[i], a[i][i]));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return bad(format!("positive off-diagonal entry at ({}, {})", labels[i], labels[j]));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return bad(format!("zero pattern not symmetric at ({}, {})", labels[i], labels[j]));
                }
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return bad(format!("not symmetrized by d at ({}, {})", labels[i], labels[j]));
                }
            }
        }
        Ok(Self { labels, a, d })
    }

    /// Symmetric datum from a symmetric matrix, all symmetrizers 1.
    pub fn symmetric(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        Self::new((1..=n).map(|i| i.to_string()).collect(), a, vec![1; n])
    }

    /// Finite type `A_n`, `B_n`, `C_n`, `D_n` or `G_2`, labelled `1..n`.
    pub fn finite(kind: &str, n: usize) -> Result<Self> {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
            for i in 0..upto.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        };
        let mut d = vec![1i64; n];
        match (kind.to_ascii_uppercase().as_str(), n) {
            ("A", n) if n >= 1 => chain(&mut a, n),
            ("B", n) if n >= 2 => {
                chain(&mut a, n);
                a[n - 1][n - 2] = -2;
                d = vec![2; n];
                d[n - 1] = 1;
            }
            ("C", n) if n >= 2 => {
                chain(&mut a, n);
                a[n - 2][n - 1] = -2;
                d[n - 1] = 2;
            }
            ("D", n) if n >= 4 => {
                chain(&mut a, n - 1);
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            ("G", 2) => {
                a[0][1] = -3;
                a[1][0] = -1;
                d = vec![1, 3];
            }
            _ => return Err(Error::InvalidCartan(format!("unsupported finite type {kind}{n}"))),
        }
        Self::new((1..=n).map(|i| i.to_string()).collect(), a, d)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.a[i][j] == self.a[j][i]))
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownIndex(label.to_string()))
    }

    /// Parses a word of labels separated by commas and/or whitespace.
    pub fn parse_word(&self, text: &str) -> Result<WeylWord> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| self.index_of(t))
            .collect()
    }

    pub fn word_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<WeylWord> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn word_labels(&self, w: &[usize]) -> Vec<String> {
        w.iter().map(|&i| self.labels[i].clone()).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::UnknownIndex(i.to_string()))
        }
    }

    /// `(alpha_i, alpha_j)`.
    pub fn simple_form(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    /// `(u, v)` for roots.
    pub fn form(&self, u: &Root, v: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if u.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += u.0[i] * v.0[j] * self.simple_form(i, j);
            }
        }
        s
    }

    /// `(lambda, beta)` for a weight and a root; `(omega_i, alpha_j) = delta_ij d_j`.
    pub fn form_weight_root(&self, lambda: &Weight, beta: &Root) -> i64 {
        (0..self.rank()).map(|j| lambda.0[j] * self.d[j] * beta.0[j]).sum()
    }

    /// `(lambda, mu)` for weights, through rational root coordinates.
    /// `None` when the Cartan matrix is singular.
    pub fn form_weights(&self, lambda: &Weight, mu: &Weight) -> Option<Coeff> {
        let r = self.weight_in_root_coords(mu)?;
        Some(
            (0..self.rank())
                .map(|j| Coeff::from_integer((lambda.0[j] * self.d[j]) as i128) * r[j])
                .fold(Coeff::zero(), |a, b| a + b),
        )
    }

    /// The weight `sum_j beta_j alpha_j` in fundamental-weight coordinates.
    pub fn root_to_weight(&self, beta: &Root) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|k| (0..n).map(|j| beta.0[j] * self.a[k][j]).sum())
                .collect(),
        )
    }

    /// `<beta, alpha_i^vee>` for a root.
    pub fn coroot_pairing_root(&self, beta: &Root, i: usize) -> i64 {
        (0..self.rank()).map(|j| beta.0[j] * self.a[i][j]).sum()
    }

    pub fn reflect_weight(&self, lambda: &Weight, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        let c = lambda.0[i];
        Ok(Weight(
            (0..self.rank()).map(|k| lambda.0[k] - c * self.a[k][i]).collect(),
        ))
    }

    pub fn reflect_root(&self, beta: &Root, i: usize) -> Result<Root> {
        self.check_index(i)?;
        let c = self.coroot_pairing_root(beta, i);
        let mut out = beta.clone();
        out.0[i] -= c;
        Ok(out)
    }

    /// `s_{i_1} ... s_{i_n} (lambda)`.
    pub fn apply_word_weight(&self, w: &[usize], lambda: &Weight) -> Result<Weight> {
        w.iter()
            .rev()
            .try_fold(lambda.clone(), |acc, &i| self.reflect_weight(&acc, i))
    }

    /// `s_{i_1} ... s_{i_n} (beta)`.
    pub fn apply_word_root(&self, w: &[usize], beta: &Root) -> Result<Root> {
        w.iter()
            .rev()
            .try_fold(beta.clone(), |acc, &i| self.reflect_root(&acc, i))
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}` for each `k`.
    pub fn inversion_roots(&self, w: &[usize]) -> Result<Vec<Root>> {
        let n = self.rank();
        (0..w.len())
            .map(|k| self.apply_word_root(&w[..k], &Root::simple(n, w[k])))
            .collect()
    }

    pub fn is_reduced(&self, w: &[usize]) -> Result<bool> {
        Ok(self.inversion_roots(w)?.iter().all(Root::is_positive))
    }

    pub fn require_reduced(&self, w: &[usize]) -> Result<()> {
        if self.is_reduced(w)? {
            Ok(())
        } else {
            Err(Error::NotReduced(self.word_labels(w)))
        }
    }

    /// Two words represent the same Weyl group element.
    pub fn same_element(&self, u: &[usize], v: &[usize]) -> Result<bool> {
        let n = self.rank();
        for i in 0..n {
            let om = Weight::fundamental(n, i);
            if self.apply_word_weight(u, &om)? != self.apply_word_weight(v, &om)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Divided-power exponents `c_k = <s_{i_{k+1}} ... s_{i_n} lambda, alpha_{i_k}^vee>`
    /// with `v_{w lambda} = F_{i_1}^{(c_1)} ... F_{i_n}^{(c_n)} v_lambda`.
    pub fn extremal_exponents(&self, lambda: &Weight, w: &[usize]) -> Result<Vec<i64>> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        self.require_reduced(w)?;
        let mut c = vec![0; w.len()];
        let mut cur = lambda.clone();
        for k in (0..w.len()).rev() {
            c[k] = cur.0[w[k]];
            cur = self.reflect_weight(&cur, w[k])?;
        }
        Ok(c)
    }

    /// A reduced word `w` with `w lambda = mu`, found by reflecting `mu`
    /// up to the dominant chamber. `None` when `mu` is not in the orbit.
    pub fn word_for_weight(&self, lambda: &Weight, mu: &Weight) -> Option<WeylWord> {
        let mut cur = mu.clone();
        let mut w = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| cur.0[i] < 0) {
            cur = self.reflect_weight(&cur, i).ok()?;
            w.push(i);
        }
        (cur == *lambda).then_some(w)
    }

    /// Exact rational coordinates of a weight in the simple-root basis.
    pub fn weight_in_root_coords(&self, lambda: &Weight) -> Option<Vec<Coeff>> {
        let n = self.rank();
        let mut m: Vec<Vec<Coeff>> = (0..n)
            .map(|k| {
                let mut row: Vec<Coeff> =
                    (0..n).map(|j| Coeff::from_integer(self.a[k][j] as i128)).collect();
                row.push(Coeff::from_integer(lambda.0[k] as i128));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    for c in 0..=n {
                        let v = m[col][c];
                        m[r][c] -= f * v;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[n]).collect())
    }

    /// Integral root coordinates of a weight, if it lies in the root lattice.
    pub fn weight_to_root(&self, lambda: &Weight) -> Option<Root> {
        let r = self.weight_in_root_coords(lambda)?;
        if r.iter().all(|c| c.is_integer()) {
            Some(Root(r.iter().map(|c| *c.numer() as i64).collect()))
        } else {
            None
        }
    }

    /// `mu <= eta` in dominance order; false outside the root lattice.
    pub fn dominance_leq(&self, mu: &Weight, eta: &Weight) -> bool {
        match self.weight_to_root(&eta.sub(mu)) {
            Some(r) => r.0.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Positive real roots up to the given height, by closing the simple
    /// roots under reflections. For finite types with a large enough bound
    /// this is all of the positive roots, sorted by height then coordinates.
    pub fn positive_roots(&self, max_height: i64) -> Vec<Root> {
        let n = self.rank();
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..n {
            let r = Root::simple(n, i);
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let s = self.reflect_root(&r, i).expect("index in range");
                if s.is_positive() && s.height() <= max_height && seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut out: Vec<Root> = seen.into_iter().collect();
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        out
    }

    /// A reduced word for the longest element of a finite Weyl group, found
    /// greedily by descending from the dominant chamber.
    pub fn longest_word(&self) -> WeylWord {
        let n = self.rank();
        let rho = Weight(vec![1; n]);
        let mut w: WeylWord = Vec::new();
        let mut cur = rho;
        // Each reflection at a positive coordinate lengthens the element; the
        // walk ends at w0 rho. The word read either way is w0 since w0 = w0^-1.
        while let Some(i) = (0..n).find(|&i| cur.0[i] > 0) {
            cur = self.reflect_weight(&cur, i).expect("index in range");
            w.push(i);
        }
        w
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.a.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{:>4} | {} | d={}", self.labels[i], cells.join(" "), self.d[i])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> CartanDatum {
        CartanDatum::finite("A", 2).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CartanDatum::new(vec!["1".into(), "2".into()], vec![vec![2, -1], vec![-2, 2]], vec![1, 1]).is_err());
        assert!(CartanDatum::new(vec!["1".into(), "2".into()], vec![vec![2, -1], vec![-2, 2]], vec![2, 1]).is_ok());
        assert!(CartanDatum::new(vec!["1".into(), "1".into()], vec![vec![2, 0], vec![0, 2]], vec![1, 1]).is_err());
        for (k, n) in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("B", 2), ("C", 2)] {
            CartanDatum::finite(k, n).unwrap();
        }
    }

    #[test]
    fn json_roundtrip() {
        let c = CartanDatum::finite("C", 2).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"indices":["1","2"],"cartan":[[2,-2],[-1,2]],"symmetrizers":[1,2]}"#);
        let back: CartanDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let ints: CartanDatum =
            serde_json::from_str(r#"{"indices":[1,2],"cartan":[[2,-1],[-1,2]],"symmetrizers":[1,1]}"#).unwrap();
        assert_eq!(ints, a2());
    }

    #[test]
    fn reflections() {
        let c = a2();
        assert_eq!(c.reflect_root(&Root(vec![0, 1]), 0).unwrap(), Root(vec![1, 1]));
        assert_eq!(c.reflect_root(&Root(vec![1, 0]), 0).unwrap(), Root(vec![-1, 0]));
        // s_1 omega_1 = omega_1 - alpha_1 = (-1, 1) in weight coordinates
        let w = c.reflect_weight(&Weight(vec![1, 0]), 0).unwrap();
        assert_eq!(w, Weight(vec![1, 0]).sub(&c.root_to_weight(&Root(vec![1, 0]))));
        assert!(c.reflect_root(&Root(vec![1, 0]), 7).is_err());
    }

    #[test]
    fn words() {
        let c = a2();
        let om2 = Weight(vec![0, 1]);
        assert_eq!(c.apply_word_weight(&[], &om2).unwrap(), om2);
        let got = c.apply_word_weight(&[0, 1], &om2).unwrap();
        assert_eq!(got, om2.sub(&c.root_to_weight(&Root(vec![1, 1]))));
        assert_eq!(c.apply_word_weight(&[1, 1], &om2).unwrap(), om2);
    }

    #[test]
    fn inversions() {
        let c = a2();
        assert_eq!(
            c.inversion_roots(&[0, 1, 0]).unwrap(),
            vec![Root(vec![1, 0]), Root(vec![1, 1]), Root(vec![0, 1])]
        );
        assert_eq!(c.inversion_roots(&[0, 0]).unwrap(), vec![Root(vec![1, 0]), Root(vec![-1, 0])]);
        assert!(c.is_reduced(&[0, 1, 0]).unwrap());
        assert!(!c.is_reduced(&[1, 1]).unwrap());
        assert!(c.is_reduced(&[]).unwrap());
    }

    #[test]
    fn forms() {
        let c = a2();
        assert_eq!(c.form(&Root(vec![1, 0]), &Root(vec![0, 1])), -1);
        let c2 = CartanDatum::finite("C", 2).unwrap();
        // the folded convention: d = (2, 1), a_12 = -1
        let c2f = CartanDatum::new(vec!["1".into(), "2".into()], vec![vec![2, -1], vec![-2, 2]], vec![2, 1]).unwrap();
        assert_eq!(c2f.form(&Root(vec![1, 0]), &Root(vec![0, 1])), -2);
        for i in 0..2 {
            assert_eq!(c2.form(&Root::simple(2, i), &Root::simple(2, i)), 2 * c2.d(i));
        }
        // (omega_i, alpha_j) = delta_ij d_j agrees with the weight-weight form
        for i in 0..2 {
            for j in 0..2 {
                let w = c2.root_to_weight(&Root::simple(2, j));
                let v = c2.form_weights(&Weight::fundamental(2, i), &w).unwrap();
                assert_eq!(v, Coeff::from_integer(c2.form_weight_root(&Weight::fundamental(2, i), &Root::simple(2, j)) as i128));
            }
        }
    }

    #[test]
    fn exponents_and_dominance() {
        let c = a2();
        assert_eq!(c.extremal_exponents(&Weight(vec![0, 1]), &[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(c.extremal_exponents(&Weight(vec![0, 1]), &[]).unwrap(), Vec::<i64>::new());
        let a1 = CartanDatum::finite("A", 1).unwrap();
        assert_eq!(a1.extremal_exponents(&Weight(vec![1]), &[0]).unwrap(), vec![1]);
        assert!(c.extremal_exponents(&Weight(vec![-1, 0]), &[0]).is_err());
        assert!(c.extremal_exponents(&Weight(vec![1, 0]), &[0, 0]).is_err());

        let om2 = Weight(vec![0, 1]);
        let mu = c.apply_word_weight(&[0, 1], &om2).unwrap();
        assert!(c.dominance_leq(&om2, &om2));
        assert!(c.dominance_leq(&mu, &om2));
        assert!(!c.dominance_leq(&om2, &mu));
        assert!(!c.dominance_leq(&Weight(vec![1, 0]), &om2));
    }

    #[test]
    fn root_systems() {
        let expect = [("A", 3, 6), ("B", 3, 9), ("C", 3, 9), ("G", 2, 6), ("A", 2, 3), ("B", 2, 4), ("D", 4, 12)];
        for (k, n, count) in expect {
            let c = CartanDatum::finite(k, n).unwrap();
            assert_eq!(c.positive_roots(100).len(), count, "{k}{n}");
            let w0 = c.longest_word();
            assert_eq!(w0.len(), count, "{k}{n}");
            assert!(c.is_reduced(&w0).unwrap());
        }
    }

    fn arb_case() -> impl Strategy<Value = (usize, Vec<usize>, Vec<i64>, Vec<i64>)> {
        (0usize..5).prop_flat_map(|t| {
            let n = [2, 2, 3, 3, 2][t];
            (
                Just(t),
                prop::collection::vec(0..n, 0..8),
                prop::collection::vec(-3i64..=3, n),
                prop::collection::vec(-3i64..=3, n),
            )
        })
    }

    fn datum(t: usize) -> CartanDatum {
        let (k, n) = [("A", 2), ("B", 2), ("A", 3), ("C", 3), ("G", 2)][t];
        CartanDatum::finite(k, n).unwrap()
    }

    proptest! {
        #[test]
        fn form_is_invariant((t, w, u, v) in arb_case()) {
            let c = datum(t);
            let (u, v) = (Root(u), Root(v));
            let wu = c.apply_word_root(&w, &u).unwrap();
            let wv = c.apply_word_root(&w, &v).unwrap();
            prop_assert_eq!(c.form(&wu, &wv), c.form(&u, &v));
            prop_assert_eq!(c.form(&u, &v), c.form(&v, &u));
        }

        #[test]
        fn reflections_are_involutions((t, w, u, _v) in arb_case()) {
            let c = datum(t);
            for &i in &w {
                let r = Root(u.clone());
                prop_assert_eq!(c.reflect_root(&c.reflect_root(&r, i).unwrap(), i).unwrap(), r);
                let l = Weight(u.clone());
                prop_assert_eq!(c.reflect_weight(&c.reflect_weight(&l, i).unwrap(), i).unwrap(), l);
            }
        }

        #[test]
        fn weight_and_root_actions_agree((t, w, u, _v) in arb_case()) {
            let c = datum(t);
            let r = Root(u);
            let lhs = c.root_to_weight(&c.apply_word_root(&w, &r).unwrap());
            let rhs = c.apply_word_weight(&w, &c.root_to_weight(&r)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduced_prefixes((t, w, _u, _v) in arb_case()) {
            let c = datum(t);
            if c.is_reduced(&w).unwrap() {
                for k in 0..w.len() {
                    prop_assert!(c.is_reduced(&w[..k]).unwrap());
                }
                let roots = c.inversion_roots(&w).unwrap();
                let set: BTreeSet<_> = roots.iter().collect();
                prop_assert_eq!(set.len(), w.len());
            }
        }
    }
}
