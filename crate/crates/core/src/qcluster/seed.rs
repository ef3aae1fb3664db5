use std::sync::Arc;

use serde_json::{json, Value};

use super::pair::CompatiblePair;
use super::torus::{QuantumTorus, TorusElement};
use crate::error::{Error, Result};
use crate::initquiver::ExchangeData;
use crate::rootdata::{CartanDatum, Root, Weight};

/// Cluster variables as elements of the initial quantum torus, with their
/// compatible pair and degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumSeed {
    pair: CompatiblePair,
    degrees: Vec<Root>,
    form: Arc<Vec<Vec<i64>>>,
    torus: Arc<QuantumTorus>,
    variables: Vec<TorusElement>,
}

fn gram_of(form: &[Vec<i64>], degrees: &[Root]) -> Vec<Vec<i64>> {
    let pair = |u: &Root, v: &Root| -> i64 {
        (0..u.rank())
            .flat_map(|i| (0..v.rank()).map(move |j| (i, j)))
            .map(|(i, j)| u.0[i] * v.0[j] * form[i][j])
            .sum()
    };
    degrees
        .iter()
        .map(|u| degrees.iter().map(|v| pair(u, v)).collect())
        .collect()
}

/// `lambda_st = -(d_s, omega_t + w_t omega_t)` for `s < t`, where the
/// initial variable at `t` is `D(w_t omega_t, omega_t)` of degree `d_t`.
pub fn initial_lambda(cartan: &CartanDatum, word: &[usize]) -> Result<(Vec<Vec<i64>>, Vec<Root>)> {
    let n = cartan.rank();
    let m = word.len();
    let mut degrees = Vec::with_capacity(m);
    let mut sums = Vec::with_capacity(m);
    for t in 0..m {
        let omega = Weight::fundamental(n, word[t]);
        let low = cartan.apply_word_weight(&word[..=t], &omega)?;
        let d = cartan
            .weight_to_root(&omega.sub(&low))
            .ok_or_else(|| Error::Shape("degree outside the root lattice".into()))?;
        degrees.push(d);
        sums.push(omega.add(&low));
    }
    let mut lambda = vec![vec![0i64; m]; m];
    for s in 0..m {
        for t in s + 1..m {
            let v = -cartan.form_weight_root(&sums[t], &degrees[s]);
            lambda[s][t] = v;
            lambda[t][s] = -v;
        }
    }
    Ok((lambda, degrees))
}

impl QuantumSeed {
    /// The seed whose variables are the torus generators.
    pub fn new(pair: CompatiblePair, degrees: Vec<Root>, form: Vec<Vec<i64>>) -> Result<Self> {
        let m = pair.size();
        if degrees.len() != m {
            return Err(Error::Shape(format!("{} degrees for {m} vertices", degrees.len())));
        }
        let gram = gram_of(&form, &degrees);
        for s in 0..m {
            for t in 0..m {
                if (pair.lambda()[s][t] - gram[s][t]).rem_euclid(2) != 0 {
                    return Err(Error::Parity(pair.lambda()[s][t] - gram[s][t]));
                }
            }
        }
        let torus = QuantumTorus::new(pair.lambda().to_vec(), gram)?;
        let variables = (0..m).map(|s| TorusElement::generator(m, s)).collect();
        Ok(Self {
            pair,
            degrees,
            form: Arc::new(form),
            torus: Arc::new(torus),
            variables,
        })
    }

    /// The initial seed of a reduced word with a given exchange matrix.
    pub fn initial(cartan: &CartanDatum, word: &[usize], exchange: &ExchangeData) -> Result<Self> {
        if exchange.orbits.len() != word.len() {
            return Err(Error::Shape(format!(
                "{} exchange vertices for a word of length {}",
                exchange.orbits.len(),
                word.len()
            )));
        }
        let (lambda, degrees) = initial_lambda(cartan, word)?;
        let pair = CompatiblePair::new(lambda, exchange.b.clone(), exchange.exchangeable.clone())?;
        let n = cartan.rank();
        let form = (0..n).map(|i| (0..n).map(|j| cartan.simple_form(i, j)).collect()).collect();
        Self::new(pair, degrees, form)
    }

    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    pub fn degrees(&self) -> &[Root] {
        &self.degrees
    }

    pub fn torus(&self) -> &QuantumTorus {
        &self.torus
    }

    pub fn variables(&self) -> &[TorusElement] {
        &self.variables
    }

    pub fn size(&self) -> usize {
        self.variables.len()
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        gram_of(&self.form, &self.degrees)
    }

    /// Exponent of `q^{1/4}` in the prefactor of `Y^a`.
    fn quarter_exponent(&self, a: &[i64]) -> i64 {
        let g = self.gram();
        let lambda = self.pair.lambda();
        let m = a.len();
        let mut total = 0;
        for i in 0..m {
            for j in 0..m {
                total += a[i] * a[j] * g[i][j];
            }
            total -= a[i] * g[i][i];
            for j in 0..i {
                total += 2 * a[i] * a[j] * lambda[i][j];
            }
        }
        total
    }

    /// The bar-invariant monomial `Y^a`; negative entries need monomial
    /// variables.
    pub fn normalized_monomial(&self, a: &[i64]) -> Result<TorusElement> {
        if a.len() != self.size() {
            return Err(Error::Shape(format!("exponent of length {} for {} variables", a.len(), self.size())));
        }
        let quarter = self.quarter_exponent(a);
        if quarter % 4 != 0 {
            return Err(Error::Parity(quarter));
        }
        let mut acc = TorusElement::one(self.size());
        for (s, &k) in a.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let p = self.torus.pow(&self.variables[s], k).ok_or_else(|| {
                Error::InexactDivision(format!("variable {} is not invertible", s + 1))
            })?;
            acc = self.torus.product(&acc, &p);
        }
        Ok(acc.shift((quarter / 4) as i32))
    }

    /// `(a+, a-, e_k)` for the exchange relation at `k`.
    pub fn exchange_exponents(&self, k: usize) -> Result<(Vec<i64>, Vec<i64>, i64)> {
        let e = self.pair.e_of(k)?;
        let m = self.size();
        let plus = (0..m).map(|t| self.pair.b_entry(t, k).max(0)).collect();
        let minus = (0..m).map(|t| (-self.pair.b_entry(t, k)).max(0)).collect();
        Ok((plus, minus, e))
    }

    /// Right-hand side `Y^{a+} + q^{e_k} Y^{a-}` of the exchange relation.
    pub fn exchange_rhs(&self, k: usize) -> Result<TorusElement> {
        let (plus, minus, e) = self.exchange_exponents(k)?;
        let p = self.normalized_monomial(&plus)?;
        let n = self.normalized_monomial(&minus)?;
        Ok(p.add(&n.shift(e as i32)))
    }

    /// `sigma` with `Y_k Y_k' = q^sigma (Y^{a+} + q^{e_k} Y^{a-})` for the
    /// bar-invariant `Y_k' = Y^{a+ - e_k} + Y^{a- - e_k}`.
    pub fn exchange_shift(&self, k: usize) -> Result<i64> {
        let (plus, _, _) = self.exchange_exponents(k)?;
        let g = self.gram();
        let lambda = self.pair.lambda();
        let twice: i64 = (0..self.size())
            .map(|t| plus[t] * (lambda[k][t] - g[k][t]))
            .sum::<i64>()
            + g[k][k];
        if twice % 2 != 0 {
            return Err(Error::Parity(twice));
        }
        Ok(twice / 2)
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let rhs = self.exchange_rhs(k)?;
        let (plus, _, _) = self.exchange_exponents(k)?;
        let sigma = self.exchange_shift(k)?;
        let new_var = self
            .torus
            .left_divide(&self.variables[k], &rhs)
            .ok_or_else(|| {
                Error::InexactDivision(format!("exchange relation at vertex {} is not Laurent", k + 1))
            })?
            .shift(sigma as i32);
        let n = self.degrees[k].rank();
        let mut degree = Root::zero(n);
        for (t, &p) in plus.iter().enumerate() {
            degree = degree.add(&self.degrees[t].scale(p));
        }
        degree = degree.sub(&self.degrees[k]);
        let mut out = self.clone();
        out.pair = self.pair.mutate(k)?;
        out.degrees[k] = degree;
        out.variables[k] = new_var;
        Ok(out)
    }

    /// Sorted variables: seeds are unordered clusters.
    pub fn key(&self) -> Vec<TorusElement> {
        let mut v = self.variables.clone();
        v.sort();
        v
    }

    /// Normalized monomials with nonnegative exponents of total degree at
    /// most `max_degree`.
    pub fn cluster_monomials(&self, max_degree: i64) -> Result<Vec<(Vec<i64>, TorusElement)>> {
        let m = self.size();
        let mut out = Vec::new();
        let mut a = vec![0i64; m];
        fn rec(
            seed: &QuantumSeed,
            s: usize,
            left: i64,
            a: &mut Vec<i64>,
            out: &mut Vec<(Vec<i64>, TorusElement)>,
        ) -> Result<()> {
            if s == a.len() {
                out.push((a.clone(), seed.normalized_monomial(a)?));
                return Ok(());
            }
            for k in 0..=left {
                a[s] = k;
                rec(seed, s + 1, left - k, a, out)?;
            }
            a[s] = 0;
            Ok(())
        }
        rec(self, 0, max_degree, &mut a, &mut out)?;
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let variables: Vec<Value> = self
            .variables
            .iter()
            .zip(&self.degrees)
            .map(|(v, d)| json!({"exponents": v.to_json(), "degree": d.0}))
            .collect();
        json!({
            "lambda": self.pair.lambda(),
            "b": self.pair.b(),
            "exchangeable": self.pair.exchangeable().iter().map(|k| k + 1).collect::<Vec<_>>(),
            "e": self.pair.e(),
            "variables": variables,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initquiver::exchange_matrix;

    fn a2_seed() -> (CartanDatum, QuantumSeed) {
        let c = CartanDatum::finite("A", 2).unwrap();
        let word = vec![0, 1, 0];
        let ex = exchange_matrix(&c, &word).unwrap();
        let seed = QuantumSeed::initial(&c, &word, &ex).unwrap();
        (c, seed)
    }

    #[test]
    fn a2_initial_lambda() {
        let (_, seed) = a2_seed();
        assert_eq!(seed.pair().lambda(), &[vec![0, 1, -1], vec![-1, 0, 0], vec![1, 0, 0]]);
        assert_eq!(seed.pair().e(), &[1]);
        assert_eq!(seed.degrees()[2], Root(vec![1, 1]));
    }

    #[test]
    fn units_and_zero() {
        let (_, seed) = a2_seed();
        assert_eq!(seed.normalized_monomial(&[0, 0, 0]).unwrap(), TorusElement::one(3));
        for s in 0..3 {
            let mut a = vec![0; 3];
            a[s] = 1;
            assert_eq!(seed.normalized_monomial(&a).unwrap(), seed.variables()[s]);
        }
    }

    #[test]
    fn normalized_monomials_are_bar_invariant() {
        let (_, seed) = a2_seed();
        for (a, y) in seed.cluster_monomials(3).unwrap() {
            assert_eq!(seed.torus().bar(&y), y, "{a:?}");
        }
        let y = seed.normalized_monomial(&[-1, 2, 1]).unwrap();
        assert_eq!(seed.torus().bar(&y), y);
    }

    #[test]
    fn a2_mutation() {
        let (_, seed) = a2_seed();
        let m = seed.mutate(0).unwrap();
        let rhs = TorusElement::generator(3, 2).add(&TorusElement::generator(3, 1).shift(1));
        assert_eq!(seed.torus().product(&seed.variables()[0], &m.variables()[0]), rhs);
        assert_eq!(m.degrees()[0], Root(vec![0, 1]));
        assert_eq!(m.mutate(0).unwrap(), seed);
        assert!(seed.mutate(1).is_err());
    }

    #[test]
    fn mutated_seed_q_commutes_with_new_lambda() {
        let c = CartanDatum::finite("A", 3).unwrap();
        let word = vec![0, 1, 0, 2, 1, 0];
        let ex = exchange_matrix(&c, &word).unwrap();
        let mut seed = QuantumSeed::initial(&c, &word, &ex).unwrap();
        for k in [0, 1, 0, 2, 1] {
            let k = seed.pair().exchangeable()[k % seed.pair().exchangeable().len()];
            seed = seed.mutate(k).unwrap();
            let t = seed.torus();
            for s in 0..seed.size() {
                for u in 0..seed.size() {
                    let l = t.qcommute_exponent(&seed.variables()[s], &seed.variables()[u]);
                    assert_eq!(l, Some(seed.pair().lambda()[s][u]));
                }
                assert_eq!(t.bar(&seed.variables()[s]), seed.variables()[s]);
            }
        }
    }

    #[test]
    fn one_exchangeable_one_frozen() {
        let pair = CompatiblePair::new(vec![vec![0, 2], vec![-2, 0]], vec![vec![0], vec![-1]], vec![0]).unwrap();
        // Y_1 Y_1' = 1 + q Y_2 is homogeneous only if Y_2 has degree zero
        let seed = QuantumSeed::new(pair, vec![Root(vec![1]), Root(vec![0])], vec![vec![2]]).unwrap();
        assert_eq!(seed.pair().e(), &[1]);
        let m = seed.mutate(0).unwrap();
        assert_eq!(m.degrees()[0], Root(vec![-1]));
        assert_eq!(m.mutate(0).unwrap(), seed);
    }
}
