//! Exact Laurent polynomials in `q` with rational coefficients.
//!
//! Every scalar in the crate is a [`Laurent`]. Coefficients are exact
//! rationals so that divided powers can pass through `[n]!` denominators;
//! [`Laurent::is_integral`] reports whether a value lies in `Z[q, q^-1]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Rational coefficient type.
pub type Coeff = Ratio<i128>;

/// A Laurent polynomial `sum c_k q^k`.
///
/// Terms are kept sorted by ascending exponent with no zero coefficients,
/// so structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: Vec<(i32, Coeff)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Coeff::one(), 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: Coeff, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Coeff::one(), e)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(Coeff::from_integer(n as i128), 0)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, Coeff)>>(terms: I) -> Self {
        let mut v: Vec<(i32, Coeff)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Coeff)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> &[(i32, Coeff)] {
        &self.terms
    }

    pub fn coeff(&self, e: i32) -> Coeff {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => Coeff::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// If `self = c * q^e` returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(Coeff, i32)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*c, *e)),
            _ => None,
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, c)| c.is_integer() && !c.is_negative())
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i32, Coeff)> = self.terms.iter().map(|&(e, c)| (-e, c)).collect();
        terms.reverse();
        Self { terms }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|&(e, x)| (e, x * c)).collect(),
        }
    }

    /// Specialization at `q = 1`.
    pub fn at_one(&self) -> Coeff {
        self.terms.iter().fold(Coeff::zero(), |acc, t| acc + t.1)
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// in `Q[q, q^-1]`.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = divisor.as_monomial() {
            return Some(self.shift(-e).scale(c.recip()));
        }
        // Shift both to honest polynomials with nonzero constant term.
        let ns = self.min_exp().unwrap();
        let ds = divisor.min_exp().unwrap();
        let mut rem: Vec<Coeff> = dense(self, ns);
        let den: Vec<Coeff> = dense(divisor, ds);
        let dd = den.len() - 1;
        if rem.len() <= dd {
            return None;
        }
        let lead = den[dd];
        let mut quot = vec![Coeff::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] / lead;
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(k, c)| (k as i32 + ns - ds, c)),
        ))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

fn dense(x: &Laurent, shift: i32) -> Vec<Coeff> {
    let top = x.max_exp().unwrap() - shift;
    let mut v = vec![Coeff::zero(); top as usize + 1];
    for &(e, c) in &x.terms {
        v[(e - shift) as usize] = c;
    }
    v
}

/// Quantum integer `[n]_d = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn q_int(n: i64, d: u32) -> Laurent {
    let d = d as i32;
    match n.cmp(&0) {
        Ordering::Equal => Laurent::zero(),
        Ordering::Less => -q_int(-n, d as u32),
        Ordering::Greater => {
            let n = n as i32;
            Laurent::from_terms((0..n).map(|k| (d * (n - 1 - 2 * k), Coeff::one())))
        }
    }
}

/// Quantum factorial `[n]_d!`.
pub fn q_factorial(n: u32, d: u32) -> Laurent {
    (1..=n as i64).fold(Laurent::one(), |acc, k| &acc * &q_int(k, d))
}

/// Gaussian binomial `[n choose k]_d`.
pub fn q_binomial(n: u32, k: u32, d: u32) -> Laurent {
    if k > n {
        return Laurent::zero();
    }
    let num = q_factorial(n, d);
    let den = &q_factorial(k, d) * &q_factorial(n - k, d);
    num.div_exact(&den)
        .expect("quantum binomial is a Laurent polynomial")
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1 + b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        *self = &*self + rhs;
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self = &*self - rhs;
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let lo = self.min_exp().unwrap() + rhs.min_exp().unwrap();
        let hi = self.max_exp().unwrap() + rhs.max_exp().unwrap();
        let mut acc = vec![Coeff::zero(); (hi - lo) as usize + 1];
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &rhs.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Laurent {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i32 + lo, c))
                .collect(),
        }
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl From<i64> for Laurent {
    fn from(n: i64) -> Self {
        Laurent::from_int(n)
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders as `a*q^k + b*q^j - ...` with exponents descending; `0` for zero.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let qpart = match e {
                0 => None,
                1 => Some("q".to_string()),
                e => Some(format!("q^{e}")),
            };
            match qpart {
                None => write!(f, "{}", fmt_coeff(&mag))?,
                Some(qp) if mag.is_one() => write!(f, "{qp}")?,
                Some(qp) => write!(f, "{}*{qp}", fmt_coeff(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl FromStr for Laurent {
    type Err = Error;

    /// Parses the grammar produced by `Display`; whitespace is optional and
    /// terms may appear in any order.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty scalar"));
        }
        // Split into signed chunks, ignoring the '-' that follows '^'.
        let mut chunks: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        chunks.push(cur);

        let mut terms = Vec::new();
        for chunk in chunks {
            let (neg, body) = match chunk.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coef_str, q_str) = match body.find('q') {
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    (c, Some(&body[pos + 1..]))
                }
                None => (body, None),
            };
            let coef = if coef_str.is_empty() {
                Coeff::one()
            } else {
                parse_coeff(coef_str).ok_or_else(|| bad("bad coefficient"))?
            };
            let exp = match q_str {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .and_then(|r| r.parse::<i32>().ok())
                    .ok_or_else(|| bad("bad exponent"))?,
            };
            terms.push((exp, if neg { -coef } else { coef }));
        }
        Ok(Laurent::from_terms(terms))
    }
}

fn parse_coeff(s: &str) -> Option<Coeff> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i128 = d.parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Coeff::new(n.parse().ok()?, d))
        }
        None => Some(Coeff::from_integer(s.parse().ok()?)),
    }
}

impl serde::Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Laurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
