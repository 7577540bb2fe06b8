use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::poly::PolyZ;
use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylGroup};

type Column = HashMap<WeylElement, PolyZ>;

/// Memoized Kazhdan-Lusztig data for one group.
///
/// The primary route computes whole columns `x -> P_{x,w}` from the
/// `C'_w = C'_{ws} C'_s - sum mu(z, ws) C'_z` recursion. The R-polynomial route
/// recovers `P_{x,w}` from `q^{l(w)-l(x)} P_{x,w}(q^{-1}) - P_{x,w} = sum R_{x,y} P_{y,w}`
/// and shares no state with the first one, so the two can cross-check each other.
///
/// All tables sit behind `RwLock`s; concurrent callers may race to fill the
/// same entry, which only duplicates work.
pub struct KlTable {
    group: WeylGroup,
    columns: RwLock<HashMap<WeylElement, Arc<Column>>>,
    r_columns: RwLock<HashMap<WeylElement, Arc<Column>>>,
    r_memo: RwLock<HashMap<(WeylElement, WeylElement), PolyZ>>,
    seeded: RwLock<HashMap<(WeylElement, WeylElement), PolyZ>>,
}

impl KlTable {
    pub fn new(group: &WeylGroup) -> Self {
        KlTable {
            group: group.clone(),
            columns: RwLock::default(),
            r_columns: RwLock::default(),
            r_memo: RwLock::default(),
            seeded: RwLock::default(),
        }
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    fn check_cap(&self, w: &WeylElement) -> Result<usize> {
        let len = self.group.length(w);
        if len > self.group.cap() {
            return Err(Error::CapExceeded {
                length: len,
                cap: self.group.cap(),
            });
        }
        Ok(len)
    }

    /// Reduce a pair of extended elements to the non-extended group, or
    /// `None` when their length-zero parts differ.
    fn normalize(&self, u: &WeylElement, w: &WeylElement) -> Result<Option<(WeylElement, WeylElement)>> {
        let g = &self.group;
        if u.kind() != g.kind() || w.kind() != g.kind() {
            return Err(Error::DatumMismatch);
        }
        if !g.datum().is_affine() {
            return Ok(Some((u.clone(), w.clone())));
        }
        let tau_w = g.omega_part(w)?;
        if g.is_identity(&tau_w) {
            return Ok(Some((u.clone(), w.clone())));
        }
        if g.omega_part(u)? != tau_w {
            return Ok(None);
        }
        let inv = g.inv_unchecked(&tau_w);
        Ok(Some((g.mul_unchecked(u, &inv), g.mul_unchecked(w, &inv))))
    }

    /// Record a known value (from a persistent cache); consulted before computing.
    pub fn seed(&self, u: &WeylElement, w: &WeylElement, p: PolyZ) {
        self.seeded.write().unwrap().insert((u.clone(), w.clone()), p);
    }

    /// Install a complete column `x -> P_{x,w}` (from a persistent cache).
    /// An existing column wins.
    pub fn install_column(&self, w: &WeylElement, column: HashMap<WeylElement, PolyZ>) {
        self.columns.write().unwrap().entry(w.clone()).or_insert_with(|| Arc::new(column));
    }

    /// Every `(x, w, P_{x,w})` held in the primary column table.
    pub fn computed_pairs(&self) -> Vec<(WeylElement, WeylElement, PolyZ)> {
        let cols = self.columns.read().unwrap();
        let mut out = Vec::new();
        for (w, col) in cols.iter() {
            for (x, p) in col.iter() {
                out.push((x.clone(), w.clone(), p.clone()));
            }
        }
        out
    }

    /// `P_{u,w}`: `1` on the diagonal, `0` unless `u <= w`.
    pub fn kl_polynomial(&self, u: &WeylElement, w: &WeylElement) -> Result<PolyZ> {
        self.check_cap(w)?;
        if let Some(p) = self.seeded.read().unwrap().get(&(u.clone(), w.clone())) {
            return Ok(p.clone());
        }
        let Some((u, w)) = self.normalize(u, w)? else {
            return Ok(PolyZ::zero());
        };
        Ok(self.kl_column(&w)?.get(&u).cloned().unwrap_or_default())
    }

    /// `mu(u, w)`: the coefficient of `q^{(l(w)-l(u)-1)/2}` in `P_{u,w}`, zero
    /// when the length difference is even.
    pub fn mu(&self, u: &WeylElement, w: &WeylElement) -> Result<i64> {
        let (lu, lw) = (self.group.length(u), self.group.length(w));
        if lw <= lu || (lw - lu) % 2 == 0 {
            return Ok(0);
        }
        Ok(self.kl_polynomial(u, w)?.coeff((lw - lu - 1) / 2))
    }

    /// All `P_{x,w}` for `x <= w`, `w` in the non-extended group.
    pub fn kl_column(&self, w: &WeylElement) -> Result<Arc<Column>> {
        if let Some(col) = self.columns.read().unwrap().get(w) {
            return Ok(col.clone());
        }
        let g = &self.group;
        let len_w = self.check_cap(w)?;
        let col = match g.first_right_descent(w) {
            None => Column::from([(w.clone(), PolyZ::one())]),
            Some(s) => {
                let v = g.right_mul_gen(w, s);
                let col_v = self.kl_column(&v)?;
                let len_v = len_w - 1;
                let mut corrections = Vec::new();
                for (z, p) in col_v.iter() {
                    if *z == v || !g.is_right_descent(z, s) {
                        continue;
                    }
                    let len_z = g.length(z);
                    if (len_v - len_z).is_multiple_of(2) {
                        continue;
                    }
                    let mu = p.coeff((len_v - len_z - 1) / 2);
                    if mu != 0 {
                        corrections.push((self.kl_column(z)?, mu, (len_w - len_z) / 2));
                    }
                }
                let mut col = Column::new();
                for x in g.elements_below(w)? {
                    let xs = g.right_mul_gen(&x, s);
                    let down = g.is_right_descent(&x, s);
                    let p_xs = col_v.get(&xs).cloned().unwrap_or_default();
                    let p_x = col_v.get(&x).cloned().unwrap_or_default();
                    let (e_xs, e_x) = if down { (0, 1) } else { (1, 0) };
                    let mut p = &p_xs.shift(e_xs) + &p_x.shift(e_x);
                    for (col_z, mu, e) in &corrections {
                        if let Some(pz) = col_z.get(&x) {
                            p -= &pz.scale(*mu).shift(*e);
                        }
                    }
                    col.insert(x, p);
                }
                col
            }
        };
        let col = Arc::new(col);
        self.columns.write().unwrap().insert(w.clone(), col.clone());
        Ok(col)
    }

    /// `R_{u,w}` by the right-descent recursion, `R_{u,e} = delta_{u,e}`.
    pub fn r_polynomial(&self, u: &WeylElement, w: &WeylElement) -> Result<PolyZ> {
        self.check_cap(w)?;
        let Some((u, w)) = self.normalize(u, w)? else {
            return Ok(PolyZ::zero());
        };
        Ok(self.r_rec(&u, &w))
    }

    fn r_rec(&self, u: &WeylElement, w: &WeylElement) -> PolyZ {
        let g = &self.group;
        if u == w {
            return PolyZ::one();
        }
        if g.length(u) >= g.length(w) {
            return PolyZ::zero();
        }
        let key = (u.clone(), w.clone());
        if let Some(p) = self.r_memo.read().unwrap().get(&key) {
            return p.clone();
        }
        let s = g
            .first_right_descent(w)
            .expect("w longer than u has a descent");
        let ws = g.right_mul_gen(w, s);
        let us = g.right_mul_gen(u, s);
        let result = if g.is_right_descent(u, s) {
            self.r_rec(&us, &ws)
        } else {
            let q_minus_one = PolyZ::new(vec![-1, 1]);
            &(&q_minus_one * &self.r_rec(u, &ws)) + &self.r_rec(&us, &ws).shift(1)
        };
        self.r_memo.write().unwrap().insert(key, result.clone());
        result
    }

    /// `P_{u,w}` through R-polynomials and bar-invariance only.
    pub fn kl_polynomial_via_r(&self, u: &WeylElement, w: &WeylElement) -> Result<PolyZ> {
        self.check_cap(w)?;
        let Some((u, w)) = self.normalize(u, w)? else {
            return Ok(PolyZ::zero());
        };
        Ok(self.r_column(&w)?.get(&u).cloned().unwrap_or_default())
    }

    fn r_column(&self, w: &WeylElement) -> Result<Arc<Column>> {
        if let Some(col) = self.r_columns.read().unwrap().get(w) {
            return Ok(col.clone());
        }
        let g = &self.group;
        let len_w = g.length(w);
        let mut below: Vec<(usize, WeylElement)> = g
            .elements_below(w)?
            .into_iter()
            .map(|x| (g.length(&x), x))
            .collect();
        below.sort_by_key(|b| std::cmp::Reverse(b.0));
        let mut col = Column::new();
        for (len_x, x) in &below {
            if x == w {
                col.insert(x.clone(), PolyZ::one());
                continue;
            }
            let mut rhs = PolyZ::zero();
            for (len_y, y) in &below {
                if len_y <= len_x {
                    continue;
                }
                let r = self.r_rec(x, y);
                if !r.is_zero() {
                    rhs += &(&r * &col[y]);
                }
            }
            let d = len_w - len_x;
            let p = -&rhs.truncate((d - 1) / 2);
            if &p.bar_shift(d) - &p != rhs {
                return Err(Error::Verification(format!(
                    "R-polynomial identity has no bar-invariant solution at length gap {d}"
                )));
            }
            col.insert(x.clone(), p);
        }
        let col = Arc::new(col);
        self.r_columns.write().unwrap().insert(w.clone(), col.clone());
        Ok(col)
    }

    /// `x -> P~_{x,w}` on `[e, w]`, solving `sum_{x <= y <= w} P_{x,y} P~_{y,w} = delta_{x,w}`.
    pub fn inverse_kl_column(&self, w: &WeylElement) -> Result<Column> {
        let g = &self.group;
        self.check_cap(w)?;
        let mut below: Vec<(usize, WeylElement)> = g
            .elements_below(w)?
            .into_iter()
            .map(|x| (g.length(&x), x))
            .collect();
        below.sort_by_key(|b| std::cmp::Reverse(b.0));
        let mut col = Column::new();
        for (len_x, x) in &below {
            if x == w {
                col.insert(x.clone(), PolyZ::one());
                continue;
            }
            let mut acc = PolyZ::zero();
            for (len_y, y) in &below {
                if len_y <= len_x {
                    continue;
                }
                let p = self.kl_polynomial(x, y)?;
                if !p.is_zero() {
                    acc += &(&p * &col[y]);
                }
            }
            col.insert(x.clone(), -&acc);
        }
        Ok(col)
    }

    /// Signed inverse KL polynomial `P~_{u,w}`; `top` bounds the interval that
    /// must fit under the cap. Checks that `(-1)^{l(u)+l(w)} P~_{u,w} >= 0`.
    pub fn inverse_kl(&self, u: &WeylElement, w: &WeylElement, top: &WeylElement) -> Result<PolyZ> {
        let g = &self.group;
        self.check_cap(top)?;
        if !g.bruhat_leq(u, w) {
            return Ok(PolyZ::zero());
        }
        if !g.bruhat_leq(w, top) {
            return Err(Error::InvalidArgument("inverse_kl requires w <= top".into()));
        }
        let p = self.inverse_kl_column(w)?.remove(u).unwrap_or_default();
        let sign = if (g.length(u) + g.length(w)).is_multiple_of(2) { 1 } else { -1 };
        if !p.scale(sign).is_nonnegative() {
            return Err(Error::Verification(format!("inverse KL polynomial {p} has the wrong sign pattern")));
        }
        Ok(p)
    }

    /// Unsigned inverse KL polynomial `Q_{u,w} = (-1)^{l(u)+l(w)} P~_{u,w}`.
    pub fn inverse_kl_q(&self, u: &WeylElement, w: &WeylElement, top: &WeylElement) -> Result<PolyZ> {
        let p = self.inverse_kl(u, w, top)?;
        let sign = if (self.group.length(u) + self.group.length(w)).is_multiple_of(2) { 1 } else { -1 };
        Ok(p.scale(sign))
    }
}
