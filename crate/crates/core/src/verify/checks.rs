use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::instance::Instance;
use crate::error::Result;
use crate::laurent::{q_factorial, Laurent};
use crate::qcluster::{check_compatible, enumerate_exchange_graph, initial_lambda, TorusElement};
use crate::rootdata::{CartanDatum, Weight, WeylWord};
use crate::uqn::{minor_to_shuffle, MinorSpec, ShuffleElement, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One line of the report stream.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub instance: Value,
    pub perturbed: bool,
    pub expected: Status,
    pub status: Status,
    pub witness: Value,
}

impl Report {
    fn new(check: &str, instance: Value, perturbed: bool, status: Status, witness: Value) -> Self {
        Self {
            check: check.to_string(),
            instance,
            perturbed,
            expected: Status::Pass,
            status,
            witness,
        }
    }

    /// The outcome matches what the catalog asked for; skipped counts as a pass.
    pub fn ok(&self) -> bool {
        match self.expected {
            Status::Fail => self.status == Status::Fail,
            _ => self.status != Status::Fail,
        }
    }
}

fn minor_json(cartan: &CartanDatum, m: &MinorSpec) -> Value {
    json!({
        "lambda": m.lambda.0,
        "lower": cartan.word_labels(&m.lower),
        "upper": cartan.word_labels(&m.upper),
    })
}

/// Assembles `Lambda` from oracle q-commutation of the initial minors and
/// checks it against the closed form and against `B`.
pub fn check_initial_lambda(inst: &Instance, perturb: bool) -> Result<Report> {
    const NAME: &str = "initial_lambda";
    let xs = inst.initial_elements()?;
    let m = xs.len();
    let mut lambda = vec![vec![0i64; m]; m];
    for s in 0..m {
        for t in 0..m {
            match xs[s].qcommute_exponent(&xs[t], &inst.cartan) {
                Some(l) => lambda[s][t] = l as i64,
                None => {
                    return Ok(Report::new(
                        NAME,
                        inst.describe(),
                        perturb,
                        Status::Fail,
                        json!({"not_q_commuting": [s + 1, t + 1]}),
                    ))
                }
            }
        }
    }
    let (formula, _) = initial_lambda(&inst.cartan, &inst.word)?;
    if perturb {
        if m < 2 {
            return Ok(Report::new(NAME, inst.describe(), perturb, Status::Skipped, json!({"reason": "nothing to perturb"})));
        }
        lambda[0][1] += 1;
        lambda[1][0] -= 1;
    }
    let agrees = lambda == formula;
    let compat = check_compatible(&lambda, &inst.exchange.b, &inst.exchange.exchangeable);
    let witness = json!({
        "lambda": lambda,
        "formula_agrees": agrees,
        "e": compat.as_ref().ok(),
        "violation": compat.as_ref().err().map(ToString::to_string),
    });
    Ok(Report::new(NAME, inst.describe(), perturb, Status::of(agrees && compat.is_ok()), witness))
}

/// The exchange relation `Y_k Y_k' = Y^{a+} + q^{e_k} Y^{a-}`, solved in the
/// shuffle algebra after one mutation from the initial seed.
pub fn check_exchange_relation(inst: &Instance, k: usize, perturb: bool) -> Result<Report> {
    const NAME: &str = "exchange_relation";
    let describe = {
        let mut d = inst.describe();
        d["vertex"] = json!(k + 1);
        d
    };
    let seed = inst.initial_seed()?;
    let (plus, minus, e) = seed.exchange_exponents(k)?;
    if plus.iter().chain(&minus).all(|&x| x == 0) {
        return Ok(Report::new(
            NAME,
            describe,
            perturb,
            Status::Skipped,
            json!({"reason": "not realizable in A_q(n)"}),
        ));
    }
    let mut real = inst.realization(&seed)?;
    let yk = real.generators()[k].clone();
    let p = real.realize(&seed.normalized_monomial(&plus)?)?;
    let n = real.realize(&seed.normalized_monomial(&minus)?)?;
    let shift = e + i64::from(perturb);
    let rhs = p.add(&n.shift(shift as i32))?;
    let Some(quotient) = yk.left_divide(&rhs, &inst.cartan) else {
        return Ok(Report::new(
            NAME,
            describe,
            perturb,
            Status::Fail,
            json!({"e": e, "rhs": rhs.to_json(&inst.cartan), "reason": "Y_k does not divide the right-hand side"}),
        ));
    };
    let sigma = seed.exchange_shift(k)?;
    let normalized = quotient.shift(sigma as i32);
    let mutated = seed.mutate(k)?;
    let from_torus = real.realize(&mutated.variables()[k])?;
    let bar_ok = normalized.bar() == normalized;
    let paths_agree = from_torus == normalized;
    let minor = find_minor(&inst.cartan, &normalized).map(|m| minor_json(&inst.cartan, &m));
    let witness = json!({
        "e": e,
        "sigma": sigma,
        "bar_invariant": bar_ok,
        "torus_agrees": paths_agree,
        "degree": normalized.weight().0,
        "new_variable": normalized.to_json(&inst.cartan),
        "minor": minor,
    });
    Ok(Report::new(NAME, describe, perturb, Status::of(bar_ok && paths_agree), witness))
}

/// `D(mu, zeta)^2 = q^{-(nu, nu)/2} D(2 mu, 2 zeta)`; the perturbed run
/// uses the opposite sign.
pub fn check_square_identity(cartan: &CartanDatum, spec: &MinorSpec, perturb: bool) -> Result<Report> {
    let d = minor_to_shuffle(cartan, spec)?;
    let d2 = minor_to_shuffle(cartan, &spec.scaled(2))?;
    let nu = d.element.weight().clone();
    let half = cartan.form(&nu, &nu) / 2;
    let exponent = if perturb { half } else { -half };
    let lhs = d.element.product(&d.element, cartan);
    let rhs = d2.element.shift(exponent as i32);
    let ok = lhs == rhs;
    let witness = json!({
        "minor": minor_json(cartan, spec),
        "exponent": exponent,
        "mismatched_words": if ok { 0 } else { lhs.sub(&rhs).map(|x| x.len()).unwrap_or(usize::MAX) },
    });
    Ok(Report::new("square_identity", json!({"cartan": cartan}), perturb, Status::of(ok), witness))
}

/// Deconcatenating `D(mu_1, mu_{n+1})` along the chain gives
/// `D(mu_n, mu_{n+1}) (x) ... (x) D(mu_1, mu_2)`. The perturbed run uses the
/// reversed order.
pub fn check_restriction_factorization(
    cartan: &CartanDatum,
    lambda: &Weight,
    chain: &[WeylWord],
    perturb: bool,
) -> Result<Report> {
    const NAME: &str = "restriction";
    let weights: Vec<Weight> = chain
        .iter()
        .map(|w| cartan.apply_word_weight(w, lambda))
        .collect::<Result<_>>()?;
    let instance = json!({
        "cartan": cartan,
        "lambda": lambda.0,
        "chain": chain.iter().map(|w| cartan.word_labels(w)).collect::<Vec<_>>(),
    });
    let ordered = weights.windows(2).all(|p| cartan.dominance_leq(&p[0], &p[1]));
    if chain.len() < 2 || !ordered {
        return Ok(Report::new(NAME, instance, perturb, Status::Fail, json!({"reason": "chain is not dominance ordered"})));
    }
    let n = chain.len() - 1;
    let big = minor_to_shuffle(cartan, &MinorSpec::new(lambda.clone(), chain[0].clone(), chain[n].clone()))?.element;
    let mut smalls = Vec::with_capacity(n);
    for k in (0..n).rev() {
        smalls.push(minor_to_shuffle(cartan, &MinorSpec::new(lambda.clone(), chain[k].clone(), chain[k + 1].clone()))?.element);
    }
    if perturb {
        smalls.reverse();
    }
    let parts: Vec<_> = smalls.iter().map(|x| x.weight().clone()).collect();
    let lhs = big.coproduct(&parts)?;
    let refs: Vec<&ShuffleElement> = smalls.iter().collect();
    let rhs = Tensor::of(&refs);
    let ok = lhs == rhs;
    let witness = json!({
        "parts": parts.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        "terms": [lhs.terms.len(), rhs.terms.len()],
    });
    Ok(Report::new(NAME, instance, perturb, Status::of(ok), witness))
}

/// The greedy extremal word of `x`: cycling through the indices, strip the
/// largest power of each letter with a nonzero divided left derivative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalWord {
    pub letters: Vec<(usize, u32)>,
    /// The derivatives end at the constant 1.
    pub terminal: bool,
    /// The coefficient of the concatenated word is `prod [a_k]_{i_k}!`.
    pub coefficient: bool,
}

pub fn extremal_word(x: &ShuffleElement, cartan: &CartanDatum) -> Result<ExtremalWord> {
    let n = cartan.rank();
    let mut cur = x.clone();
    let mut letters = Vec::new();
    let mut idle = 0;
    let mut i = 0;
    while !cur.weight().is_zero() && idle < n {
        let max_p = cur.weight().0[i].max(0) as u32;
        let mut took = false;
        for p in (1..=max_p).rev() {
            let d = cur.skew_derivative_left(i, p, cartan)?;
            if !d.is_zero() {
                letters.push((i, p));
                cur = d;
                took = true;
                break;
            }
        }
        idle = if took { 0 } else { idle + 1 };
        i = (i + 1) % n;
    }
    let terminal = cur.weight().is_zero() && cur.coeff(&[]) == Laurent::one();
    let word: Vec<usize> = letters
        .iter()
        .flat_map(|&(i, p)| std::iter::repeat_n(i, p as usize))
        .collect();
    let expected = letters
        .iter()
        .fold(Laurent::one(), |acc, &(i, p)| &acc * &q_factorial(p, cartan.d(i) as u32));
    Ok(ExtremalWord {
        letters,
        terminal,
        coefficient: x.coeff(&word) == expected,
    })
}

/// Element-level shadows of the dual canonical axioms: bar invariance,
/// the extremal word, and weight homogeneity.
pub fn dual_canonical_conditions(x: &ShuffleElement, cartan: &CartanDatum) -> Result<(bool, Value)> {
    let bar = x.bar() == *x;
    let ext = extremal_word(x, cartan)?;
    let homogeneous = x.terms().keys().all(|w| {
        let mut c = vec![0i64; cartan.rank()];
        for &i in w {
            c[i] += 1;
        }
        c == x.weight().0
    });
    let ok = bar && ext.terminal && ext.coefficient && homogeneous;
    let witness = json!({
        "bar_invariant": bar,
        "extremal_word": ext.letters.iter().map(|&(i, p)| json!([cartan.label(i), p])).collect::<Vec<_>>(),
        "terminal": ext.terminal,
        "coefficient": ext.coefficient,
        "homogeneous": homogeneous,
    });
    Ok((ok, witness))
}

/// `x + q x` is never bar-invariant; used as the negative control.
fn perturbed(x: &ShuffleElement) -> ShuffleElement {
    x.add(&x.shift(1)).unwrap_or_else(|_| x.clone())
}

pub fn check_dual_canonical_conditions(cartan: &CartanDatum, x: &ShuffleElement, perturb: bool) -> Result<Report> {
    let y = if perturb { perturbed(x) } else { x.clone() };
    let (ok, mut witness) = dual_canonical_conditions(&y, cartan)?;
    witness["element"] = y.to_json(cartan);
    Ok(Report::new("dual_canonical", json!({"cartan": cartan}), perturb, Status::of(ok), witness))
}

/// Every cluster monomial of total degree at most `max_degree`, in every
/// seed of the exchange graph, passes the dual canonical conditions.
pub fn check_cluster_monomials(inst: &Instance, max_degree: i64, max_seeds: usize, perturb: bool) -> Result<Report> {
    const NAME: &str = "cluster_monomials";
    let seed = inst.initial_seed()?;
    let graph = enumerate_exchange_graph(&seed, max_seeds)?;
    let mut monomials: BTreeSet<TorusElement> = BTreeSet::new();
    for s in &graph.seeds {
        for (_, y) in s.cluster_monomials(max_degree)? {
            monomials.insert(y);
        }
    }
    let mut real = inst.realization(&seed)?;
    let mut checked = 0usize;
    let mut failure = Value::Null;
    for (idx, y) in monomials.iter().enumerate() {
        let mut x = real.realize(y)?;
        if perturb && idx == monomials.len() - 1 {
            x = perturbed(&x);
        }
        let (ok, witness) = dual_canonical_conditions(&x, &inst.cartan)?;
        checked += 1;
        if !ok {
            failure = json!({"monomial": y.to_json(), "conditions": witness});
            break;
        }
    }
    let mut describe = inst.describe();
    describe["max_degree"] = json!(max_degree);
    let ok = failure.is_null() && !graph.partial;
    let witness = json!({
        "seeds": graph.seeds.len(),
        "partial": graph.partial,
        "monomials": monomials.len(),
        "checked": checked,
        "failure": failure,
    });
    Ok(Report::new(NAME, describe, perturb, Status::of(ok), witness))
}

/// Realized cluster variables of the exchange graph, keyed by their JSON.
pub fn cluster_variable_set(inst: &Instance, max_seeds: usize) -> Result<(BTreeSet<String>, bool)> {
    let seed = inst.initial_seed()?;
    let graph = enumerate_exchange_graph(&seed, max_seeds)?;
    let mut real = inst.realization(&seed)?;
    let mut out = BTreeSet::new();
    for v in &graph.variables {
        out.insert(real.realize(v)?.to_json(&inst.cartan).to_string());
    }
    Ok((out, graph.partial))
}

/// Two reduced words for the same element reach the same cluster
/// variables. The perturbed run drops the last letter of the second word.
pub fn check_word_independence(a: &Instance, b: &Instance, max_seeds: usize, perturb: bool) -> Result<Report> {
    const NAME: &str = "word_independence";
    let describe = json!({"first": a.describe(), "second": b.describe()});
    let second = if perturb {
        let mut spec = b.spec.clone();
        spec.word.pop();
        Instance::resolve(&spec)?
    } else {
        if a.cartan != b.cartan || !a.cartan.same_element(&a.word, &b.word)? {
            return Ok(Report::new(NAME, describe, perturb, Status::Fail, json!({"reason": "words give different elements"})));
        }
        b.clone()
    };
    let (sa, pa) = cluster_variable_set(a, max_seeds)?;
    let (sb, pb) = cluster_variable_set(&second, max_seeds)?;
    let ok = sa == sb && !pa && !pb;
    let witness = json!({
        "variables": [sa.len(), sb.len()],
        "partial": pa || pb,
        "only_first": sa.difference(&sb).count(),
        "only_second": sb.difference(&sa).count(),
    });
    Ok(Report::new(NAME, describe, perturb, Status::of(ok), witness))
}

/// W-orbit of a dominant weight by breadth-first reflection, capped.
pub fn weyl_orbit(cartan: &CartanDatum, lambda: &Weight, cap: usize) -> Vec<Weight> {
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for i in 0..cartan.rank() {
            if let Ok(nu) = cartan.reflect_weight(&mu, i) {
                if seen.len() < cap && seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// A minor `D(mu, eta)` on a fundamental weight equal to `x`, if any.
pub fn find_minor(cartan: &CartanDatum, x: &ShuffleElement) -> Option<MinorSpec> {
    let n = cartan.rank();
    let shift = cartan.root_to_weight(x.weight());
    for i in 0..n {
        let lambda = Weight::fundamental(n, i);
        let orbit = weyl_orbit(cartan, &lambda, 400);
        let members: BTreeSet<&Weight> = orbit.iter().collect();
        for eta in &orbit {
            let mu = eta.sub(&shift);
            if !members.contains(&mu) {
                continue;
            }
            let lower = cartan.word_for_weight(&lambda, &mu)?;
            let upper = cartan.word_for_weight(&lambda, eta)?;
            let spec = MinorSpec::new(lambda.clone(), lower, upper);
            if minor_to_shuffle(cartan, &spec).map(|m| m.element == *x).unwrap_or(false) {
                return Some(spec);
            }
        }
    }
    None
}

/// Saturated chains `mu = mu_1 < ... < mu_{n+1} = eta` inside the orbit of
/// `lambda`, each step a simple reflection, as words for the chain members.
pub fn saturated_chains(cartan: &CartanDatum, lambda: &Weight, mu: &Weight, eta: &Weight, limit: usize) -> Vec<Vec<WeylWord>> {
    fn go(
        c: &CartanDatum,
        cur: &Weight,
        eta: &Weight,
        path: &mut Vec<Weight>,
        out: &mut Vec<Vec<Weight>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if cur == eta {
            out.push(path.clone());
            return;
        }
        for i in 0..c.rank() {
            if cur.0[i] >= 0 {
                continue;
            }
            let Ok(next) = c.reflect_weight(cur, i) else { continue };
            if !c.dominance_leq(&next, eta) {
                continue;
            }
            path.push(next.clone());
            go(c, &next, eta, path, out, limit);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(cartan, mu, eta, &mut vec![mu.clone()], &mut out, limit);
    out.into_iter()
        .filter_map(|chain| chain.iter().map(|w| cartan.word_for_weight(lambda, w)).collect())
        .collect()
}

/// `bar(xy) = q^{(|x|,|y|)} bar(y) bar(x)`, with both factors also required
/// to be bar-invariant. The perturbed run negates the exponent.
pub fn check_bar_product(cartan: &CartanDatum, x: &ShuffleElement, y: &ShuffleElement, perturb: bool) -> Result<Report> {
    let e = cartan.form(x.weight(), y.weight());
    let exponent = if perturb { -e } else { e };
    let lhs = x.product(y, cartan).bar();
    let rhs = y.bar().product(&x.bar(), cartan).shift(exponent as i32);
    let invariant = x.bar() == *x && y.bar() == *y;
    // A negated exponent is invisible when the form vanishes.
    let status = if perturb && e == 0 {
        Status::Skipped
    } else {
        Status::of(lhs == rhs && invariant)
    };
    let witness = json!({
        "exponent": exponent,
        "bar_invariant": invariant,
        "left": x.to_json(cartan),
        "right": y.to_json(cartan),
    });
    Ok(Report::new("bar_product", json!({"cartan": cartan}), perturb, status, witness))
}
