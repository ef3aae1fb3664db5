//! Convex orders on positive roots.
//!
//! Orders are compared by slope `h(alpha) / ht(alpha)` of a rational linear
//! functional `h`, optionally overridden on an initial chain of roots.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::Coeff;
use crate::rootdata::{CartanDatum, Root, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexOrder {
    functional: Vec<Coeff>,
    chain: Vec<Root>,
}

/// A violation of the convexity axioms: `multiple * class + x` lies in the
/// span on the wrong side of `class`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub class: Root,
    /// 1 when `x` is drawn from roots above `class`, 2 when from below.
    pub condition: u8,
    pub multiple: i64,
    pub x: Root,
}

impl ConvexOrder {
    pub fn from_functional(h: Vec<Coeff>) -> Self {
        Self { functional: h, chain: Vec::new() }
    }

    /// The order adapted to a reduced word: its inversion roots in
    /// enumeration order, then the remaining positive roots by slope of a
    /// functional that is negative exactly on the inversion roots.
    pub fn from_word(cartan: &CartanDatum, w: &[usize]) -> Result<Self> {
        cartan.require_reduced(w)?;
        let n = cartan.rank();
        let chain = cartan.inversion_roots(w)?;
        // f(beta) = (w rho, beta) = (rho, w^-1 beta), which is a nonzero
        // integer on every root and negative exactly on the inversion set.
        let w_rho = cartan.apply_word_weight(w, &Weight(vec![1; n]))?;
        let max_height = cartan.positive_roots(64).iter().map(Root::height).max().unwrap_or(1);
        let scale = Coeff::from_integer(4 * (max_height as i128).pow(2));
        // Generic perturbation: injective on slopes of distinct roots whose
        // height-scaled coordinates stay below the base.
        let base: i128 = 64;
        let functional = (0..n)
            .map(|j| {
                let f = Coeff::from_integer((w_rho.0[j] * cartan.d(j)) as i128);
                f * scale + Coeff::new(1, base.pow(j as u32 + 1))
            })
            .collect();
        Ok(Self { functional, chain })
    }

    pub fn functional(&self) -> &[Coeff] {
        &self.functional
    }

    pub fn chain(&self) -> &[Root] {
        &self.chain
    }

    fn slope(&self, r: &Root) -> Coeff {
        let h = r
            .0
            .iter()
            .zip(&self.functional)
            .fold(Coeff::zero(), |acc, (&x, c)| acc + c * Coeff::from_integer(x as i128));
        h / Coeff::from_integer(r.height() as i128)
    }

    /// Total comparison; a slope tie between distinct roots is an error.
    pub fn compare(&self, a: &Root, b: &Root) -> Result<Ordering> {
        if a == b {
            return Ok(Ordering::Equal);
        }
        let pa = self.chain.iter().position(|r| r == a);
        let pb = self.chain.iter().position(|r| r == b);
        match (pa, pb) {
            (Some(x), Some(y)) => return Ok(x.cmp(&y)),
            (Some(_), None) => return Ok(Ordering::Less),
            (None, Some(_)) => return Ok(Ordering::Greater),
            (None, None) => {}
        }
        match self.slope(a).cmp(&self.slope(b)) {
            Ordering::Equal => Err(Error::NotInjective(format!("{:?} and {:?} have equal slope", a.0, b.0))),
            o => Ok(o),
        }
    }

    /// Sorts a set of roots increasingly.
    pub fn sort(&self, roots: &[Root]) -> Result<Vec<Root>> {
        let mut v = roots.to_vec();
        let mut err = None;
        v.sort_by(|a, b| {
            self.compare(a, b).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Ordering::Equal
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    /// Checks both convexity conditions on a finite set of positive roots.
    ///
    /// Nonnegative spans are explored up to twice the largest height in the
    /// set; for real roots the class span meets the lattice in integer
    /// multiples only.
    pub fn check_convexity(&self, roots: &[Root]) -> Result<Option<Counterexample>> {
        let sorted = self.sort(roots)?;
        let bound = 2 * sorted.iter().map(Root::height).max().unwrap_or(0);
        for (k, class) in sorted.iter().enumerate() {
            let below = &sorted[..k];
            let above = &sorted[k + 1..];
            let up_to_class = &sorted[..=k];
            let from_class = &sorted[k..];
            for (condition, xs, target) in [(1u8, above, up_to_class), (2u8, below, from_class)] {
                let xspan = span(xs, bound);
                let tspan = span(target, bound);
                for x in xspan.iter().filter(|x| !x.is_zero()) {
                    let mut c = 0;
                    while x.height() + c * class.height() <= bound {
                        let v = x.add(&class.scale(c));
                        if tspan.contains(&v) {
                            return Ok(Some(Counterexample {
                                class: class.clone(),
                                condition,
                                multiple: c,
                                x: x.clone(),
                            }));
                        }
                        c += 1;
                    }
                }
            }
        }
        Ok(None)
    }
}

/// All `Z>=0` combinations of `gens` of height at most `bound`, including 0.
fn span(gens: &[Root], bound: i64) -> BTreeSet<Root> {
    let n = gens.first().map(Root::rank).unwrap_or(0);
    let mut by_height: BTreeMap<i64, Vec<Root>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    let zero = Root::zero(n);
    seen.insert(zero.clone());
    by_height.entry(0).or_default().push(zero);
    let mut h = 0;
    while h <= bound {
        let layer = by_height.remove(&h).unwrap_or_default();
        for v in layer {
            for g in gens {
                let s = v.add(g);
                if s.height() <= bound && seen.insert(s.clone()) {
                    by_height.entry(s.height()).or_default().push(s);
                }
            }
        }
        h += 1;
    }
    seen
}
