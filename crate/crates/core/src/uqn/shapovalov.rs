use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::laurent::{q_factorial, q_int, Laurent};
use crate::rootdata::{CartanDatum, Root, Weight};

/// `F_{i_1}^{(c_1)} ... F_{i_n}^{(c_n)}` acting on a highest weight vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FWord {
    pub letters: Vec<(usize, u32)>,
}

impl FWord {
    pub fn new(letters: Vec<(usize, u32)>) -> Self {
        Self {
            letters: letters.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    /// The plain word `F_{i_1}^{c_1} ... F_{i_n}^{c_n}`, leftmost letter applied last.
    pub fn expand(&self) -> Vec<usize> {
        self.letters
            .iter()
            .flat_map(|&(i, c)| std::iter::repeat_n(i, c as usize))
            .collect()
    }

    /// `prod [c_k]_{i_k}!`, so that the FWord equals `expand() / factor`.
    pub fn factorial_factor(&self, cartan: &CartanDatum) -> Laurent {
        self.letters.iter().fold(Laurent::one(), |acc, &(i, c)| {
            &acc * &q_factorial(c, cartan.d(i) as u32)
        })
    }

    /// `sum c_k alpha_{i_k}`: how far below `lambda` the vector sits.
    pub fn depth(&self, n: usize) -> Root {
        let mut r = Root::zero(n);
        for &(i, c) in &self.letters {
            r.0[i] += c as i64;
        }
        r
    }
}

/// A vector of the Verma module as a combination of plain F-words.
pub(crate) type Vector = BTreeMap<Vec<usize>, Laurent>;

/// Memoized q-Shapovalov pairing on the highest weight module of weight
/// `lambda`. Memo entries are only valid for that `lambda`; keep one
/// context per thread.
pub struct Shapovalov<'a> {
    cartan: &'a CartanDatum,
    lambda: Weight,
    memo: HashMap<(Vec<usize>, Vec<usize>), Laurent>,
}

impl<'a> Shapovalov<'a> {
    pub fn new(cartan: &'a CartanDatum, lambda: Weight) -> Result<Self> {
        if lambda.rank() != cartan.rank() {
            return Err(Error::Shape(format!(
                "weight of rank {} for Cartan datum of rank {}",
                lambda.rank(),
                cartan.rank()
            )));
        }
        Ok(Self { cartan, lambda, memo: HashMap::new() })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn cartan(&self) -> &CartanDatum {
        self.cartan
    }

    /// `E_i F_{y_1} ... F_{y_n} v = sum_{k : y_k = i} [<wt_k, alpha_i^vee>]_i (y without k) v`
    /// where `wt_k` is the weight of `F_{y_{k+1}} ... F_{y_n} v`.
    pub(crate) fn apply_e_word(&self, i: usize, y: &[usize]) -> Vec<(Vec<usize>, Laurent)> {
        let c = self.cartan;
        let mut out = Vec::new();
        let mut pairing = self.lambda.0[i];
        for k in (0..y.len()).rev() {
            if y[k] == i {
                let coef = q_int(pairing, c.d(i) as u32);
                if !coef.is_zero() {
                    let mut w = y.to_vec();
                    w.remove(k);
                    out.push((w, coef));
                }
            }
            pairing -= c.a(i, y[k]);
        }
        out
    }

    pub(crate) fn apply_e(&self, i: usize, v: &Vector) -> Vector {
        let mut out: Vector = BTreeMap::new();
        for (word, coef) in v {
            for (w, c) in self.apply_e_word(i, word) {
                let t = &c * coef;
                let e = out.entry(w).or_default();
                *e += &t;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `(F_a v, F_b v)` for plain words.
    pub fn pair_words(&mut self, a: &[usize], b: &[usize]) -> Laurent {
        if a.len() != b.len() {
            return Laurent::zero();
        }
        if a.is_empty() {
            return Laurent::one();
        }
        let mut ca = a.to_vec();
        let mut cb = b.to_vec();
        ca.sort_unstable();
        cb.sort_unstable();
        if ca != cb {
            return Laurent::zero();
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = Laurent::zero();
        for (b2, c) in self.apply_e_word(a[0], b) {
            let inner = self.pair_words(&a[1..], &b2);
            if !inner.is_zero() {
                total += &(&c * &inner);
            }
        }
        self.memo.insert(key, total.clone());
        total
    }

    /// `(x v, w)` for a plain word `x` and a vector `w`.
    pub(crate) fn pair_word_vector(&mut self, a: &[usize], w: &Vector) -> Laurent {
        let mut total = Laurent::zero();
        for (b, c) in w {
            let p = self.pair_words(a, b);
            if !p.is_zero() {
                total += &(&p * c);
            }
        }
        total
    }

    /// `(x v_lambda, y v_lambda)` with divided powers.
    pub fn pair(&mut self, x: &FWord, y: &FWord) -> Result<Laurent> {
        let raw = self.pair_words(&x.expand(), &y.expand());
        let den = &x.factorial_factor(self.cartan) * &y.factorial_factor(self.cartan);
        raw.div_exact(&den)
            .ok_or_else(|| Error::InexactDivision(format!("pairing {raw} by {den}")))
    }
}
