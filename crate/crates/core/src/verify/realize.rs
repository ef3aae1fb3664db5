use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qcluster::{QuantumTorus, TorusElement};
use crate::rootdata::{CartanDatum, Root};
use crate::uqn::ShuffleElement;

/// Sends the initial torus into the shuffle algebra, generator `s` to the
/// `s`-th initial minor. Negative exponents are cleared by multiplying
/// with a monomial and dividing it back out on the left.
pub struct ShuffleRealization<'a> {
    cartan: &'a CartanDatum,
    torus: QuantumTorus,
    generators: Vec<ShuffleElement>,
    cache: HashMap<Vec<i64>, ShuffleElement>,
}

impl<'a> ShuffleRealization<'a> {
    pub fn new(cartan: &'a CartanDatum, torus: QuantumTorus, generators: Vec<ShuffleElement>) -> Result<Self> {
        if generators.len() != torus.rank() {
            return Err(Error::Shape(format!(
                "{} generators for a torus of rank {}",
                generators.len(),
                torus.rank()
            )));
        }
        Ok(Self { cartan, torus, generators, cache: HashMap::new() })
    }

    pub fn generators(&self) -> &[ShuffleElement] {
        &self.generators
    }

    pub fn degree(&self, a: &[i64]) -> Root {
        let n = self.cartan.rank();
        let mut r = Root::zero(n);
        for (g, &k) in self.generators.iter().zip(a) {
            r = r.add(&g.weight().scale(k));
        }
        r
    }

    /// `X_1^{a_1} ... X_m^{a_m}` for `a >= 0`.
    fn monomial(&mut self, a: &[i64]) -> ShuffleElement {
        if let Some(x) = self.cache.get(a) {
            return x.clone();
        }
        let n = self.cartan.rank();
        let mut acc = ShuffleElement::one(n);
        for (s, &k) in a.iter().enumerate() {
            for _ in 0..k {
                acc = acc.product(&self.generators[s], self.cartan);
            }
        }
        self.cache.insert(a.to_vec(), acc.clone());
        acc
    }

    pub fn realize(&mut self, x: &TorusElement) -> Result<ShuffleElement> {
        let Some((first, _)) = x.terms().iter().next() else {
            return Ok(ShuffleElement::zero(Root::zero(self.cartan.rank())));
        };
        let weight = self.degree(first);
        let m = self.torus.rank();
        let mut shift = vec![0i64; m];
        for a in x.terms().keys() {
            for s in 0..m {
                shift[s] = shift[s].max(-a[s]);
            }
        }
        let total = weight.add(&self.degree(&shift));
        let mut acc = ShuffleElement::zero(total);
        for (a, c) in x.terms() {
            let e = self.torus.reorder_exponent(&shift, a) as i32;
            let b: Vec<i64> = a.iter().zip(&shift).map(|(u, v)| u + v).collect();
            let term = self.monomial(&b).scale(&c.shift(e));
            acc = acc.add(&term)?;
        }
        if shift.iter().all(|&k| k == 0) {
            return Ok(acc);
        }
        let divisor = self.monomial(&shift);
        divisor
            .left_divide(&acc, self.cartan)
            .ok_or_else(|| Error::InexactDivision(format!("realizing {x} in the shuffle algebra")))
    }
}
