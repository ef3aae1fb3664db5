use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A skew-symmetric `lambda` on all vertices with an exchange matrix whose
/// columns are the exchangeable vertices, satisfying `lambda b = -2 E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompatiblePair {
    lambda: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
    exchangeable: Vec<usize>,
    e: Vec<i64>,
}

/// Returns the diagonal of `E`, one entry per exchangeable column.
pub fn check_compatible(lambda: &[Vec<i64>], b: &[Vec<i64>], exchangeable: &[usize]) -> Result<Vec<i64>> {
    let m = lambda.len();
    if lambda.iter().any(|r| r.len() != m) {
        return Err(Error::Shape("Lambda is not square".into()));
    }
    if b.len() != m || b.iter().any(|r| r.len() != exchangeable.len()) {
        return Err(Error::Shape(format!(
            "B must be {m} x {}, one column per exchangeable vertex",
            exchangeable.len()
        )));
    }
    if let Some(&k) = exchangeable.iter().find(|&&k| k >= m) {
        return Err(Error::NotExchangeable(k));
    }
    for s in 0..m {
        for t in 0..=s {
            if lambda[s][t] != -lambda[t][s] {
                return Err(Error::NotSkew(s, t));
            }
        }
    }
    let mut e = Vec::with_capacity(exchangeable.len());
    for (col, &k) in exchangeable.iter().enumerate() {
        for s in 0..m {
            let value: i64 = (0..m).map(|t| lambda[s][t] * b[t][col]).sum();
            let ok = if s == k { value < 0 && value % 2 == 0 } else { value == 0 };
            if !ok {
                return Err(Error::Incompatible { row: s, col, value });
            }
            if s == k {
                e.push(-value / 2);
            }
        }
    }
    Ok(e)
}

impl CompatiblePair {
    pub fn new(lambda: Vec<Vec<i64>>, b: Vec<Vec<i64>>, exchangeable: Vec<usize>) -> Result<Self> {
        let e = check_compatible(&lambda, &b, &exchangeable)?;
        Ok(Self { lambda, b, exchangeable, e })
    }

    pub fn size(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Vec<i64>] {
        &self.lambda
    }

    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn exchangeable(&self) -> &[usize] {
        &self.exchangeable
    }

    /// Diagonal of `E`, indexed like the columns of `b`.
    pub fn e(&self) -> &[i64] {
        &self.e
    }

    pub fn column(&self, k: usize) -> Result<usize> {
        self.exchangeable
            .iter()
            .position(|&x| x == k)
            .ok_or(Error::NotExchangeable(k))
    }

    /// `b_ts` with `b_ts = 0` for a frozen column.
    pub fn b_entry(&self, t: usize, s: usize) -> i64 {
        match self.column(s) {
            Ok(c) => self.b[t][c],
            Err(_) => 0,
        }
    }

    pub fn e_of(&self, k: usize) -> Result<i64> {
        Ok(self.e[self.column(k)?])
    }

    /// Mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let kc = self.column(k)?;
        let m = self.size();
        let b = &self.b;
        let mut nb = b.clone();
        for i in 0..m {
            for (j, &vj) in self.exchangeable.iter().enumerate() {
                nb[i][j] = if i == k || vj == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][kc].abs() * b[k][j] + b[i][kc] * b[k][j].abs()) / 2
                };
            }
        }
        let mut nl = self.lambda.clone();
        for t in 0..m {
            if t == k {
                continue;
            }
            let v = -self.lambda[k][t]
                + (0..m).map(|i| b[i][kc].max(0) * self.lambda[i][t]).sum::<i64>();
            nl[k][t] = v;
            nl[t][k] = -v;
        }
        nl[k][k] = 0;
        let out = Self::new(nl, nb, self.exchangeable.clone())?;
        debug_assert_eq!(out.e, self.e);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_pair() {
        let p = CompatiblePair::new(vec![vec![0; 2]; 2], vec![vec![]; 2], vec![]).unwrap();
        assert!(p.e().is_empty());
    }

    #[test]
    fn zero_lambda_with_nonzero_b() {
        let r = check_compatible(&[vec![0, 0], vec![0, 0]], &[vec![0], vec![1]], &[0]);
        assert_eq!(r, Err(Error::Incompatible { row: 0, col: 0, value: 0 }));
    }

    #[test]
    fn a2_initial() {
        let lambda = vec![vec![0, 1, -1], vec![-1, 0, 0], vec![1, 0, 0]];
        let b = vec![vec![0], vec![-1], vec![1]];
        let p = CompatiblePair::new(lambda, b, vec![0]).unwrap();
        assert_eq!(p.e(), &[1]);
        let q = p.mutate(0).unwrap();
        assert_eq!(q.b(), &[vec![0], vec![1], vec![-1]]);
        assert_eq!(q.e(), p.e());
        assert_eq!(q.mutate(0).unwrap(), p);
        assert_eq!(p.mutate(1), Err(Error::NotExchangeable(1)));
    }

    /// Principal coefficients: `B~ = [B; I]`, `Lambda = [[0, -2D], [2D, -2DB]]`.
    pub(crate) fn principal(b: &[Vec<i64>], d: &[i64]) -> CompatiblePair {
        let n = b.len();
        let mut bt = b.to_vec();
        for i in 0..n {
            bt.push((0..n).map(|j| i64::from(i == j)).collect());
        }
        let mut l = vec![vec![0i64; 2 * n]; 2 * n];
        for i in 0..n {
            l[i][n + i] = -2 * d[i];
            l[n + i][i] = 2 * d[i];
            for j in 0..n {
                l[n + i][n + j] = -2 * d[i] * b[i][j];
            }
        }
        CompatiblePair::new(l, bt, (0..n).collect()).unwrap()
    }

    fn skew_symmetrizable() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
        (1usize..=3)
            .prop_flat_map(|n| (prop::collection::vec(1i64..=2, n), prop::collection::vec(-2i64..=2, n * n)))
            .prop_map(|(d, t)| {
                let n = d.len();
                let mut b = vec![vec![0i64; n]; n];
                for i in 0..n {
                    for j in i + 1..n {
                        let g = num_integer::gcd(d[i], d[j]);
                        b[i][j] = t[i * n + j] * d[j] / g;
                        b[j][i] = -t[i * n + j] * d[i] / g;
                    }
                }
                (b, d)
            })
    }

    #[test]
    fn rank_two_principal_involution() {
        let p = principal(&[vec![0, 1], vec![-3, 0]], &[3, 1]);
        assert_eq!(p.mutate(0).unwrap().mutate(0).unwrap(), p);
        assert_eq!(p.mutate(1).unwrap().mutate(1).unwrap(), p);
    }

    proptest! {
        #[test]
        fn mutation_is_involutive_and_compatible(
            (b, d) in skew_symmetrizable(),
            path in prop::collection::vec(0usize..3, 0..5),
        ) {
            let mut p = principal(&b, &d);
            let n = b.len();
            for k in path {
                p = p.mutate(k % n).unwrap();
            }
            for k in 0..n {
                let q = p.mutate(k).unwrap();
                prop_assert_eq!(q.e(), p.e());
                prop_assert_eq!(&q.mutate(k).unwrap(), &p);
            }
        }
    }
}
