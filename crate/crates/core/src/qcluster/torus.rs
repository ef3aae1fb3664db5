use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::{Coeff, Laurent};

/// A finite sum of ordered monomials `X_1^{a_1} ... X_m^{a_m}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement {
    terms: BTreeMap<Vec<i64>, Laurent>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: Vec<i64>, c: Laurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(a, c);
        }
        Self { terms }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(vec![0; m], Laurent::one())
    }

    pub fn generator(m: usize, s: usize) -> Self {
        let mut a = vec![0; m];
        a[s] = 1;
        Self::monomial(a, Laurent::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, Laurent)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (a, c) in terms {
            out.add_term(a, &c);
        }
        out
    }

    fn add_term(&mut self, a: Vec<i64>, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(a).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Laurent> {
        &self.terms
    }

    pub fn coeff(&self, a: &[i64]) -> Laurent {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographically largest exponent.
    pub fn leading(&self) -> Option<(&Vec<i64>, &Laurent)> {
        self.terms.iter().next_back()
    }

    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &Laurent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, x)| (a.clone(), x * c)))
    }

    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.shift(k))).collect(),
        }
    }

    /// True when every exponent is nonnegative outside `allowed`.
    pub fn denominators_within(&self, allowed: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|a| a.iter().enumerate().all(|(i, &x)| x >= 0 || allowed.contains(&i)))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(a, c)| json!({"monomial": a, "coeff": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            monomial: Vec<i64>,
            coeff: Laurent,
        }
        let terms: Vec<Term> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self::from_terms(terms.into_iter().map(|t| (t.monomial, t.coeff))))
    }
}

impl std::fmt::Display for TorusElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (a, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*X{a:?}")?;
        }
        Ok(())
    }
}

/// The based quantum torus `X_i X_j = q^{lambda_ij} X_j X_i`, with the
/// degree pairing `gram` of its generators used by the bar involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumTorus {
    lambda: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
}

impl QuantumTorus {
    pub fn new(lambda: Vec<Vec<i64>>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let m = lambda.len();
        if gram.len() != m || lambda.iter().chain(&gram).any(|r| r.len() != m) {
            return Err(Error::Shape("torus matrices must be square of equal size".into()));
        }
        Ok(Self { lambda, gram })
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Vec<i64>] {
        &self.lambda
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `M(a) M(b) = q^{sum_{i>j} a_i b_j lambda_ij} M(a + b)`.
    pub fn reorder_exponent(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                e += a[i] * b[j] * self.lambda[i][j];
            }
        }
        e
    }

    pub fn product(&self, x: &TorusElement, y: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero();
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let e = self.reorder_exponent(a, b) as i32;
                let sum: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(sum, &(c * d).shift(e));
            }
        }
        out
    }

    /// Inverse of a monomial `c M(a)` with `c` a signed power of `q`.
    pub fn invert(&self, x: &TorusElement) -> Option<TorusElement> {
        let (a, c) = x.as_monomial()?;
        let (unit, k) = c.as_monomial()?;
        let neg: Vec<i64> = a.iter().map(|v| -v).collect();
        let e = self.reorder_exponent(a, &neg) as i32;
        Some(TorusElement::monomial(neg, Laurent::monomial(unit.recip(), -k - e)))
    }

    pub fn pow(&self, x: &TorusElement, k: i64) -> Option<TorusElement> {
        let base = if k < 0 { self.invert(x)? } else { x.clone() };
        let mut acc = TorusElement::one(self.rank());
        for _ in 0..k.unsigned_abs() {
            acc = self.product(&acc, &base);
        }
        Some(acc)
    }

    /// `x` with `divisor * x = target`, by peeling lexicographically leading
    /// monomials. `None` when the division is not exact.
    pub fn left_divide(&self, divisor: &TorusElement, target: &TorusElement) -> Option<TorusElement> {
        let (lead_d, lc_d) = divisor.leading().map(|(a, c)| (a.clone(), c.clone()))?;
        let min_d = divisor.terms.keys().next()?.clone();
        let floor: Option<Vec<i64>> = target
            .terms
            .keys()
            .next()
            .map(|t| t.iter().zip(&min_d).map(|(x, y)| x - y).collect());
        let mut rest = target.clone();
        let mut quotient = TorusElement::zero();
        while let Some((lead, lc)) = rest.leading().map(|(a, c)| (a.clone(), c.clone())) {
            let b: Vec<i64> = lead.iter().zip(&lead_d).map(|(x, y)| x - y).collect();
            if floor.as_ref().is_some_and(|f| &b < f) {
                return None;
            }
            let e = self.reorder_exponent(&lead_d, &b) as i32;
            let c = lc.div_exact(&lc_d.shift(e))?;
            let term = TorusElement::monomial(b, c);
            rest = rest.sub(&self.product(divisor, &term));
            quotient = quotient.add(&term);
        }
        Some(quotient)
    }

    /// Bar involution: `bar(q) = q^{-1}`, `bar(X_i) = X_i`, and
    /// `bar(xy) = q^{(deg x, deg y)} bar(y) bar(x)`.
    pub fn bar(&self, x: &TorusElement) -> TorusElement {
        TorusElement::from_terms(x.terms.iter().map(|(a, c)| {
            let shift = self.bar_shift(a);
            (a.clone(), c.bar().shift(shift as i32))
        }))
    }

    fn bar_shift(&self, a: &[i64]) -> i64 {
        let m = a.len();
        let mut n = 0;
        for i in 0..m {
            n += self.gram[i][i] * (a[i] * a[i] - a[i]) / 2;
            for j in i + 1..m {
                n += a[i] * a[j] * (self.gram[i][j] + self.lambda[j][i]);
            }
        }
        n
    }

    /// The unique `l` with `x y = q^l y x`, if any.
    pub fn qcommute_exponent(&self, x: &TorusElement, y: &TorusElement) -> Option<i64> {
        let xy = self.product(x, y);
        let yx = self.product(y, x);
        let (a, c) = yx.leading()?;
        let (unit, l) = xy.coeff(a).div_exact(c)?.as_monomial()?;
        (unit.is_one() && xy == yx.shift(l)).then_some(l as i64)
    }
}

/// A commutative Laurent polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalLaurent {
    pub terms: BTreeMap<Vec<i64>, Coeff>,
}

impl ClassicalLaurent {
    /// Value at a point with nonzero coordinates.
    pub fn evaluate(&self, point: &[Coeff]) -> Option<Coeff> {
        let mut total = Coeff::zero();
        for (a, c) in &self.terms {
            let mut v = *c;
            for (x, &k) in point.iter().zip(a) {
                if x.is_zero() && k < 0 {
                    return None;
                }
                v *= num_traits::pow::Pow::pow(x, k as i32);
            }
            total += v;
        }
        Some(total)
    }
}

/// Sets `q = 1`, letting the generators commute.
pub fn specialize_classical(x: &TorusElement) -> ClassicalLaurent {
    let mut terms = BTreeMap::new();
    for (a, c) in &x.terms {
        let v = c.at_one();
        if !v.is_zero() {
            terms.insert(a.clone(), v);
        }
    }
    ClassicalLaurent { terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2_torus() -> QuantumTorus {
        let lambda = vec![vec![0, 1, -1], vec![-1, 0, 0], vec![1, 0, 0]];
        let gram = vec![vec![2, 1, 1], vec![1, 2, 2], vec![1, 2, 2]];
        QuantumTorus::new(lambda, gram).unwrap()
    }

    #[test]
    fn generators_q_commute() {
        let t = a2_torus();
        let x = |s| TorusElement::generator(3, s);
        assert_eq!(t.qcommute_exponent(&x(0), &x(1)), Some(1));
        assert_eq!(t.qcommute_exponent(&x(2), &x(0)), Some(1));
        assert_eq!(t.product(&x(1), &x(0)), TorusElement::monomial(vec![1, 1, 0], Laurent::q_pow(-1)));
    }

    #[test]
    fn inverse_and_division() {
        let t = a2_torus();
        let x0 = TorusElement::generator(3, 0);
        let inv = t.invert(&x0).unwrap();
        assert_eq!(t.product(&x0, &inv), TorusElement::one(3));
        let rhs = TorusElement::generator(3, 2).add(&TorusElement::generator(3, 1).shift(1));
        let y = t.left_divide(&x0, &rhs).unwrap();
        assert_eq!(t.product(&x0, &y), rhs);
        assert!(t.left_divide(&rhs, &x0).is_none());
    }

    #[test]
    fn bar_of_generators() {
        let t = a2_torus();
        let x = TorusElement::generator(3, 1);
        assert_eq!(t.bar(&x), x);
        // bar(X_2^2) = q^{(d_2, d_2)} X_2^2
        let sq = t.pow(&x, 2).unwrap();
        assert_eq!(t.bar(&sq), sq.shift(2));
    }

    #[test]
    fn classical_specialization() {
        let x = TorusElement::monomial(vec![1, -1], Laurent::q_pow(5));
        let c = specialize_classical(&x);
        assert_eq!(c.terms.get(&vec![1, -1]), Some(&Coeff::one()));
        let v = c.evaluate(&[Coeff::from_integer(3), Coeff::from_integer(2)]).unwrap();
        assert_eq!(v, Coeff::new(3, 2));
    }

    fn element() -> impl Strategy<Value = TorusElement> {
        prop::collection::vec((prop::collection::vec(-2i64..=2, 3), -2i32..=2, -2i64..=2), 1..4).prop_map(|ts| {
            TorusElement::from_terms(ts.into_iter().map(|(a, e, c)| (a, Laurent::monomial(Coeff::from_integer(c as i128), e))))
        })
    }

    proptest! {
        #[test]
        fn associative(x in element(), y in element(), z in element()) {
            let t = a2_torus();
            prop_assert_eq!(t.product(&t.product(&x, &y), &z), t.product(&x, &t.product(&y, &z)));
        }

        #[test]
        fn division_inverts_product(x in element(), y in element()) {
            let t = a2_torus();
            prop_assume!(!x.is_zero());
            let p = t.product(&x, &y);
            prop_assert_eq!(t.left_divide(&x, &p), Some(y));
        }

        #[test]
        fn bar_is_an_involution(x in element()) {
            let t = a2_torus();
            prop_assert_eq!(t.bar(&t.bar(&x)), x);
        }

        #[test]
        fn bar_reverses_products_up_to_degree(a in prop::collection::vec(-2i64..=2, 3), b in prop::collection::vec(-2i64..=2, 3)) {
            let t = a2_torus();
            let x = TorusElement::monomial(a.clone(), Laurent::one());
            let y = TorusElement::monomial(b.clone(), Laurent::one());
            let deg = |u: &[i64], v: &[i64]| -> i64 {
                (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| u[i] * v[j] * t.gram()[i][j]).sum()
            };
            let lhs = t.bar(&t.product(&x, &y));
            let rhs = t.product(&t.bar(&y), &t.bar(&x)).shift(deg(&a, &b) as i32);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
