//! Parahoric double cosets, the geometric Demazure product, and Poincare
//! polynomials of twisted products and Schubert varieties in partial flag
//! varieties.

use std::collections::HashSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::hecke::{demazure_product, KlTable, PolyZ};
use crate::root_data::ParabolicSubset;
use crate::weyl::{CosetTag, WeylElement, WeylGroup};

/// A `P`-orbit on `G/P`, i.e. a double coset `W_P w W_P`, stored through its
/// minimal representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitClass {
    tag: CosetTag,
}

impl OrbitClass {
    pub fn new(group: &WeylGroup, parahoric: &ParabolicSubset, w: &WeylElement) -> Result<Self> {
        Ok(OrbitClass {
            tag: group.coset_tag(parahoric, w, parahoric)?,
        })
    }

    pub fn parahoric(&self) -> &ParabolicSubset {
        &self.tag.left
    }

    pub fn tag(&self) -> &CosetTag {
        &self.tag
    }

    pub fn min_rep(&self) -> &WeylElement {
        &self.tag.representative
    }

    pub fn max_rep(&self, group: &WeylGroup) -> Result<WeylElement> {
        group.max_double_coset_rep(&self.tag.left, &self.tag.representative, &self.tag.right)
    }

    /// `{"parahoric":[...],"min_rep":"word"}`.
    pub fn to_json(&self, group: &WeylGroup) -> serde_json::Value {
        json!({
            "parahoric": self.parahoric().to_vec(),
            "min_rep": group.word_string(self.min_rep()),
        })
    }
}

fn same_parahoric(p: &ParabolicSubset, classes: &[&OrbitClass]) -> Result<()> {
    for c in classes {
        if c.parahoric() != p {
            return Err(Error::InvalidArgument(format!(
                "orbit class over {:?} used with parahoric {:?}",
                c.parahoric().to_vec(),
                p.to_vec()
            )));
        }
    }
    Ok(())
}

/// Geometric `P`-Demazure product: Demazure product of the maximal
/// representatives, projected back to `W_P \ W / W_P`.
pub fn star(group: &WeylGroup, p: &ParabolicSubset, w1: &OrbitClass, w2: &OrbitClass) -> Result<OrbitClass> {
    same_parahoric(p, &[w1, w2])?;
    let prod = demazure_product(group, &w1.max_rep(group)?, &w2.max_rep(group)?)?;
    OrbitClass::new(group, p, &prod)
}

/// `w_1 * ... * w_r` under [`star`]; the empty product is the class of `e`.
pub fn star_all(group: &WeylGroup, p: &ParabolicSubset, ws: &[OrbitClass]) -> Result<OrbitClass> {
    let mut acc = OrbitClass::new(group, p, &group.identity())?;
    for w in ws {
        acc = star(group, p, &acc, w)?;
    }
    Ok(acc)
}

fn check_subset(p: &ParabolicSubset, q: &ParabolicSubset) -> Result<()> {
    if !p.is_subset(q) {
        return Err(Error::NotSubset {
            sub: p.to_vec(),
            sup: q.to_vec(),
        });
    }
    Ok(())
}

/// Whether the `P`-orbit closure of `w` is `Q`-stable: the maximal
/// representative has every generator of `Q` as a left descent.
pub fn is_q_type(group: &WeylGroup, p: &ParabolicSubset, q: &ParabolicSubset, w: &OrbitClass) -> Result<bool> {
    check_subset(p, q)?;
    same_parahoric(p, &[w])?;
    let max = w.max_rep(group)?;
    Ok(q.iter().all(|i| group.is_left_descent(&max, i)))
}

/// `Q`-type, and additionally every generator of `Q` is a right descent of
/// the maximal representative.
pub fn is_q_maximal(group: &WeylGroup, p: &ParabolicSubset, q: &ParabolicSubset, w: &OrbitClass) -> Result<bool> {
    if !is_q_type(group, p, q, w)? {
        return Ok(false);
    }
    let max = w.max_rep(group)?;
    Ok(q.iter().all(|i| group.is_right_descent(&max, i)))
}

/// Image of a `P`-double coset in `W_Q \ W / W_Q`.
pub fn project(group: &WeylGroup, q: &ParabolicSubset, w: &OrbitClass) -> Result<OrbitClass> {
    OrbitClass::new(group, q, w.min_rep())
}

/// For `Q`-type inputs, checks that the `P`-product projects to the
/// `Q`-product of the projections and is again of `Q`-type (`Q`-maximal when
/// every input is).
pub fn star_projection_identity(
    group: &WeylGroup,
    p: &ParabolicSubset,
    q: &ParabolicSubset,
    ws: &[OrbitClass],
) -> Result<bool> {
    check_subset(p, q)?;
    for w in ws {
        if !is_q_type(group, p, q, w)? {
            return Err(Error::NotQType);
        }
    }
    let all_maximal = ws
        .iter()
        .map(|w| is_q_maximal(group, p, q, w))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let prod_p = star_all(group, p, ws)?;
    let projected: Vec<OrbitClass> = ws.iter().map(|w| project(group, q, w)).collect::<Result<_>>()?;
    let prod_q = star_all(group, q, &projected)?;
    let projection_ok = project(group, q, &prod_p)? == prod_q;
    let type_ok = is_q_type(group, p, q, &prod_p)?;
    let maximal_ok = !all_maximal || is_q_maximal(group, p, q, &prod_p)?;
    Ok(projection_ok && type_ok && maximal_ok)
}

/// Dimension of the Iwahori orbit of `v W_P` in `G/P`: `l(v_min)`.
pub fn orbit_dimension(group: &WeylGroup, p: &ParabolicSubset, v: &WeylElement) -> Result<usize> {
    let min = group.min_double_coset_rep(&ParabolicSubset::empty(), v, p)?;
    Ok(group.length(&min))
}

/// Same dimension counted as affine roots `a` with `v(a) > 0` that are
/// negative on the facet of `P`.
pub fn orbit_dimension_by_roots(group: &WeylGroup, p: &ParabolicSubset, v: &WeylElement) -> Result<usize> {
    group.datum().orbit_root_count(p, v)
}

/// Minimal representatives of the cosets `v W_P` with `v <= top`.
fn cosets_below(group: &WeylGroup, p: &ParabolicSubset, top: &WeylElement) -> Result<Vec<WeylElement>> {
    let empty = ParabolicSubset::empty();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in group.elements_below(top)? {
        let min = group.min_double_coset_rep(&empty, &x, p)?;
        if seen.insert(min.clone()) {
            out.push(min);
        }
    }
    group.sort_elements(&mut out);
    Ok(out)
}

/// Cell polynomial `sum q^{l(u_min)}` of the closure of the Iwahori orbit of
/// the single coset `v W_P` in `G/P`.
pub fn coset_schubert_poincare(group: &WeylGroup, p: &ParabolicSubset, v: &WeylElement) -> Result<PolyZ> {
    let top = group.max_double_coset_rep(&ParabolicSubset::empty(), v, p)?;
    let mut out = PolyZ::zero();
    for u in cosets_below(group, p, &top)? {
        out += &PolyZ::monomial(1, group.length(&u));
    }
    Ok(out)
}

/// Cell-count generating function of the twisted product `X_P(w_1, ..., w_r)`:
/// the product over `i` of the cell polynomials of the `P`-orbit closures.
pub fn twisted_product_poincare(group: &WeylGroup, p: &ParabolicSubset, ws: &[OrbitClass]) -> Result<PolyZ> {
    let refs: Vec<&OrbitClass> = ws.iter().collect();
    same_parahoric(p, &refs)?;
    let mut out = PolyZ::one();
    for w in ws {
        out = &out * &coset_schubert_poincare(group, p, &w.max_rep(group)?)?;
    }
    Ok(out)
}

/// Intersection cohomology Poincare polynomial of `X_P(w)`:
/// `sum_{v W_P <= w} q^{l(v_min)} P_{v_max, w_max}`.
pub fn ih_poincare_schubert(table: &KlTable, p: &ParabolicSubset, w: &OrbitClass) -> Result<PolyZ> {
    let group = table.group();
    same_parahoric(p, &[w])?;
    let empty = ParabolicSubset::empty();
    let top = w.max_rep(group)?;
    let mut out = PolyZ::zero();
    for v in cosets_below(group, p, &top)? {
        let v_max = group.max_double_coset_rep(&empty, &v, p)?;
        let kl = table.kl_polynomial(&v_max, &top)?;
        out += &kl.shift(group.length(&v));
    }
    Ok(out)
}

/// Words of the orbit classes, for diagnostics.
pub fn describe(group: &WeylGroup, ws: &[OrbitClass]) -> String {
    ws.iter()
        .map(|w| format!("[{}]", group.word_string(w.min_rep())))
        .collect::<Vec<_>>()
        .join(" ")
}
