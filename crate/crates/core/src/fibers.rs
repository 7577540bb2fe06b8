//! Fibers of Demazure maps `X(s_1, ..., s_r) -> X(s_1 * ... * s_r)` and the
//! multiplicities of intersection complexes in their pushforwards.
//!
//! The fiber over the fixed point `x_v` is paved by affine spaces; its cell
//! polynomial `F_v` is built letter by letter using the BN-pair relations:
//! with `s` the next letter, `F'(u) = F(u) + q F(us)` when `us > u` and
//! `F'(u) = q F(u) + F(us)` when `us < u`, starting from `F(e) = 1`.
//! Multiplicities `M_v` solve the unitriangular system `F_v = sum_{x >= v} P_{v,x} M_x`.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hecke::{demazure_fold, KlTable, PolyZ};
use crate::root_data::ParabolicSubset;
use crate::weyl::{WeylElement, WeylGroup};

/// Largest word length accepted by the brute-force subword enumerations.
pub const BRUTE_FORCE_MAX_LEN: usize = 20;

/// A Demazure map given by a word of simple reflections (repetitions allowed)
/// and its target, the Demazure product of the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemazureMapSpec {
    word: Vec<usize>,
    target: WeylElement,
}

impl DemazureMapSpec {
    pub fn new(group: &WeylGroup, word: &[usize]) -> Result<Self> {
        Ok(DemazureMapSpec {
            word: word.to_vec(),
            target: demazure_fold(group, word)?,
        })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn target(&self) -> &WeylElement {
        &self.target
    }

    /// Dimension of the source, `r = |word|`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

fn check_spec(group: &WeylGroup, spec: &DemazureMapSpec) -> Result<()> {
    if spec.target.kind() != group.kind() {
        return Err(Error::DatumMismatch);
    }
    Ok(())
}

/// `v -> F_v` for every `v` with a nonempty fiber.
pub fn fiber_table(group: &WeylGroup, spec: &DemazureMapSpec) -> Result<HashMap<WeylElement, PolyZ>> {
    check_spec(group, spec)?;
    let mut table: HashMap<WeylElement, PolyZ> = HashMap::from([(group.identity(), PolyZ::one())]);
    for &s in &spec.word {
        let mut next: HashMap<WeylElement, PolyZ> = HashMap::with_capacity(table.len() * 2);
        for u in table.keys() {
            for x in [u.clone(), group.right_mul_gen(u, s)] {
                if next.contains_key(&x) {
                    continue;
                }
                let xs = group.right_mul_gen(&x, s);
                let f_x = table.get(&x).cloned().unwrap_or_default();
                let f_xs = table.get(&xs).cloned().unwrap_or_default();
                let value = if group.is_right_descent(&x, s) {
                    &f_x.shift(1) + &f_xs
                } else {
                    &f_x + &f_xs.shift(1)
                };
                next.insert(x, value);
            }
        }
        next.retain(|_, p| !p.is_zero());
        table = next;
    }
    Ok(table)
}

/// Cell polynomial of the fiber over `x_v`; zero exactly when `v` is not
/// below the target.
pub fn fiber_poincare(group: &WeylGroup, spec: &DemazureMapSpec, v: &WeylElement) -> Result<PolyZ> {
    if v.kind() != group.kind() {
        return Err(Error::DatumMismatch);
    }
    Ok(fiber_table(group, spec)?.remove(v).unwrap_or_default())
}

fn subword_products(group: &WeylGroup, spec: &DemazureMapSpec) -> Result<Vec<WeylElement>> {
    check_spec(group, spec)?;
    if spec.len() > BRUTE_FORCE_MAX_LEN {
        return Err(Error::CapExceeded {
            length: spec.len(),
            cap: BRUTE_FORCE_MAX_LEN,
        });
    }
    let gens: Vec<WeylElement> = spec
        .word
        .iter()
        .map(|&i| group.simple_reflection(i))
        .collect::<Result<_>>()?;
    let mut products = vec![group.identity()];
    for s in &gens {
        let with: Vec<WeylElement> = products.iter().map(|x| group.mul_unchecked(x, s)).collect();
        products.extend(with);
    }
    Ok(products)
}

/// `v -> #{(t_1, ..., t_r) : t_i in {1, s_i}, t_1 ... t_r = v}` by enumerating
/// all `2^r` tuples.
pub fn euler_table_bruteforce(group: &WeylGroup, spec: &DemazureMapSpec) -> Result<HashMap<WeylElement, u64>> {
    let mut counts = HashMap::new();
    for p in subword_products(group, spec)? {
        *counts.entry(p).or_insert(0) += 1;
    }
    Ok(counts)
}

pub fn fiber_euler_bruteforce(group: &WeylGroup, spec: &DemazureMapSpec, v: &WeylElement) -> Result<u64> {
    Ok(euler_table_bruteforce(group, spec)?.remove(v).unwrap_or(0))
}

/// Cell polynomial of the fiber over the point `w W_P` of the composite map
/// to `G/P`: `sum_{u in W_P} q^{l(u)} F_{w_min u}`.
pub fn fiber_poincare_parahoric(
    group: &WeylGroup,
    spec: &DemazureMapSpec,
    p: &ParabolicSubset,
    w: &WeylElement,
) -> Result<PolyZ> {
    let table = fiber_table(group, spec)?;
    let w_min = group.min_double_coset_rep(&ParabolicSubset::empty(), w, p)?;
    let mut out = PolyZ::zero();
    for u in group.parabolic_elements(p)? {
        if let Some(f) = table.get(&group.mul_unchecked(&w_min, &u)) {
            out += &f.shift(group.length(&u));
        }
    }
    Ok(out)
}

/// Number of substitution tuples whose product lies in `w W_P`.
pub fn fiber_euler_parahoric_bruteforce(
    group: &WeylGroup,
    spec: &DemazureMapSpec,
    p: &ParabolicSubset,
    w: &WeylElement,
) -> Result<u64> {
    let empty = ParabolicSubset::empty();
    let w_min = group.min_double_coset_rep(&empty, w, p)?;
    let mut count = 0;
    for x in subword_products(group, spec)? {
        if group.min_double_coset_rep(&empty, &x, p)? == w_min {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Checks {
    /// `F_v = sum_{x >= v} P_{v,x} M_x` holds exactly.
    pub reconstruction: bool,
    pub nonnegativity: bool,
    /// `M_v` is palindromic of degree `r - l(v)`.
    pub duality: bool,
    /// Coefficients of `M_v` increase up to the middle degree.
    pub lefschetz: bool,
    /// `sum_v q^{l(v)} F_v = (1 + q)^r`, with no fiber outside `[e, target]`.
    pub global_sum: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.reconstruction && self.nonnegativity && self.duality && self.lefschetz && self.global_sum
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.reconstruction, "reconstruction"),
            (self.nonnegativity, "nonnegativity"),
            (self.duality, "duality"),
            (self.lefschetz, "lefschetz"),
            (self.global_sum, "global_sum"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub v: WeylElement,
    pub length: usize,
    pub fiber: PolyZ,
    pub multiplicity: PolyZ,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub spec: DemazureMapSpec,
    /// One row per `v <= target`, ordered by length and then reduced word.
    pub rows: Vec<ReportRow>,
    pub supports: Vec<WeylElement>,
    pub checks: Checks,
}

impl DecompositionReport {
    pub fn row(&self, v: &WeylElement) -> Option<&ReportRow> {
        self.rows.iter().find(|r| &r.v == v)
    }

    pub fn fiber(&self, v: &WeylElement) -> PolyZ {
        self.row(v).map(|r| r.fiber.clone()).unwrap_or_default()
    }

    pub fn multiplicity(&self, v: &WeylElement) -> PolyZ {
        self.row(v).map(|r| r.multiplicity.clone()).unwrap_or_default()
    }

    /// `{"word":[...],"target":"word","F":{...},"M":{...},"supports":[...],"checks":{...}}`.
    pub fn to_json(&self, group: &WeylGroup) -> Value {
        let mut f = Map::new();
        let mut m = Map::new();
        for row in &self.rows {
            let key = group.word_string(&row.v);
            f.insert(key.clone(), serde_json::to_value(&row.fiber).unwrap());
            m.insert(key, serde_json::to_value(&row.multiplicity).unwrap());
        }
        json!({
            "word": self.spec.word,
            "target": group.word_string(&self.spec.target),
            "F": f,
            "M": m,
            "supports": self.supports.iter().map(|v| group.word_string(v)).collect::<Vec<_>>(),
            "checks": self.checks,
        })
    }

    pub fn to_csv(&self, group: &WeylGroup) -> String {
        let mut out = String::from("v,length,F,M,F(1),M(1)\n");
        for row in &self.rows {
            out.push_str(&format!(
                "\"{}\",{},{},{},{},{}\n",
                group.word_string(&row.v),
                row.length,
                row.fiber,
                row.multiplicity,
                row.fiber.eval(1),
                row.multiplicity.eval(1)
            ));
        }
        out
    }
}

fn palindromic(m: &PolyZ, d: usize) -> bool {
    match m.degree() {
        None => true,
        Some(deg) if deg > d => false,
        Some(_) => (0..=d).all(|j| m.coeff(j) == m.coeff(d - j)),
    }
}

fn lower_half_monotone(m: &PolyZ, d: usize) -> bool {
    (1..=d / 2).all(|j| m.coeff(j) >= m.coeff(j - 1))
}

/// Solve `F = P * M` over `[e, target]` and evaluate the structural checks.
pub fn multiplicities(table: &KlTable, spec: &DemazureMapSpec) -> Result<DecompositionReport> {
    let group = table.group();
    let fibers = fiber_table(group, spec)?;
    let mut interval = group.elements_below(&spec.target)?;
    group.sort_elements(&mut interval);
    let lengths: Vec<usize> = interval.iter().map(|v| group.length(v)).collect();

    let mut mult: HashMap<WeylElement, PolyZ> = HashMap::new();
    for (i, x) in interval.iter().enumerate().rev() {
        let mut m = fibers.get(x).cloned().unwrap_or_default();
        for (j, z) in interval.iter().enumerate() {
            if lengths[j] <= lengths[i] {
                continue;
            }
            let p = table.kl_polynomial(x, z)?;
            if !p.is_zero() {
                m -= &(&p * &mult[z]);
            }
        }
        mult.insert(x.clone(), m);
    }

    let r = spec.len();
    let mut reconstruction = true;
    for (i, v) in interval.iter().enumerate() {
        let mut sum = PolyZ::zero();
        for (j, x) in interval.iter().enumerate() {
            if lengths[j] < lengths[i] {
                continue;
            }
            let p = table.kl_polynomial(v, x)?;
            if !p.is_zero() {
                sum += &(&p * &mult[x]);
            }
        }
        if sum != fibers.get(v).cloned().unwrap_or_default() {
            reconstruction = false;
        }
    }
    let nonnegativity = mult.values().all(|m| m.is_nonnegative());
    let mut duality = true;
    let mut lefschetz = true;
    for (v, &len) in interval.iter().zip(&lengths) {
        let m = &mult[v];
        if len > r {
            duality &= m.is_zero();
            continue;
        }
        duality &= palindromic(m, r - len);
        lefschetz &= lower_half_monotone(m, r - len);
    }
    let mut total = PolyZ::zero();
    for (v, f) in &fibers {
        total += &f.shift(group.length(v));
    }
    let all_inside = fibers.keys().all(|v| mult.contains_key(v));
    let global_sum = all_inside && total == (&PolyZ::one() + &PolyZ::q()).pow(r as u32);

    let rows: Vec<ReportRow> = interval
        .iter()
        .zip(&lengths)
        .map(|(v, &length)| ReportRow {
            v: v.clone(),
            length,
            fiber: fibers.get(v).cloned().unwrap_or_default(),
            multiplicity: mult[v].clone(),
        })
        .collect();
    let supports = rows.iter().filter(|r| !r.multiplicity.is_zero()).map(|r| r.v.clone()).collect();
    Ok(DecompositionReport {
        spec: spec.clone(),
        rows,
        supports,
        checks: Checks {
            reconstruction,
            nonnegativity,
            duality,
            lefschetz,
            global_sum,
        },
    })
}

/// `{v : M_v != 0}`; always contains the target with `M = 1`.
pub fn supports(table: &KlTable, spec: &DemazureMapSpec) -> Result<Vec<WeylElement>> {
    Ok(multiplicities(table, spec)?.supports)
}

/// Independent route to the multiplicities: `M_x = sum_{x <= z} P~_{x,z} F_z`.
pub fn multiplicities_via_inverse_kl(table: &KlTable, spec: &DemazureMapSpec) -> Result<HashMap<WeylElement, PolyZ>> {
    let group = table.group();
    let fibers = fiber_table(group, spec)?;
    let interval = group.elements_below(&spec.target)?;
    let mut out: HashMap<WeylElement, PolyZ> = interval.iter().map(|x| (x.clone(), PolyZ::zero())).collect();
    for z in &interval {
        let f = fibers.get(z).cloned().unwrap_or_default();
        if f.is_zero() {
            continue;
        }
        for (x, ptilde) in table.inverse_kl_column(z)? {
            if let Some(acc) = out.get_mut(&x) {
                *acc += &(&ptilde * &f);
            }
        }
    }
    Ok(out)
}
