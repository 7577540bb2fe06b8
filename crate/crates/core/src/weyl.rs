//! Finite and (extended) affine Weyl groups.
//!
//! An element is a pair `(lambda, w_bar)` acting on cocharacters by
//! `x -> lambda + w_bar(x)`. The finite part is stored as the permutation it
//! induces on the root list of the datum; `lambda` is in fundamental-coweight
//! coordinates, so elements of the extended affine Weyl group (translations by
//! arbitrary coweights) are representable as well.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::root_data::{GroupKind, ParabolicSubset, RootDatum};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    kind: GroupKind,
    translation: Box<[i64]>,
    perm: Box<[u16]>,
}

impl WeylElement {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Translation part in fundamental-coweight coordinates.
    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub(crate) fn perm(&self) -> &[u16] {
        &self.perm
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylElement")
            .field("translation", &self.translation)
            .field("perm", &self.perm)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub const DEFAULT_CAP: usize = 14;

/// Parse a comma-separated generator word such as `"1,2,1"`; `""` is the empty word.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::MalformedWord(s.to_string())))
        .collect()
}

pub fn format_word(word: &[usize]) -> String {
    word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// A double coset `W_left * w * W_right`, tagged by its minimal representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetTag {
    pub left: ParabolicSubset,
    pub right: ParabolicSubset,
    pub representative: WeylElement,
}

#[derive(Clone)]
pub struct WeylGroup {
    datum: Arc<RootDatum>,
    identity: WeylElement,
    cap: usize,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup({})", self.datum.kind())
    }
}

impl WeylGroup {
    pub fn new(descriptor: &str) -> Result<Self> {
        Ok(Self::from_datum(RootDatum::new(descriptor.parse()?)))
    }

    pub fn from_datum(datum: RootDatum) -> Self {
        let n = datum.rank();
        let identity = WeylElement {
            kind: datum.kind(),
            translation: vec![0; n].into(),
            perm: (0..datum.roots().len() as u16).collect(),
        };
        WeylGroup {
            datum: Arc::new(datum),
            identity,
            cap: DEFAULT_CAP,
        }
    }

    /// Same group with a different length cap for interval materialization.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn kind(&self) -> GroupKind {
        self.datum.kind()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn generators(&self) -> Vec<usize> {
        self.datum.generators()
    }

    pub fn identity(&self) -> WeylElement {
        self.identity.clone()
    }

    pub fn is_identity(&self, w: &WeylElement) -> bool {
        *w == self.identity
    }

    fn check(&self, w: &WeylElement) -> Result<()> {
        if w.kind != self.kind() {
            Err(Error::DatumMismatch)
        } else {
            Ok(())
        }
    }

    pub fn parabolic(&self, indices: impl IntoIterator<Item = usize>) -> Result<ParabolicSubset> {
        ParabolicSubset::new(&self.datum, indices)
    }

    /// `s_i`; for `i = 0` in affine data this is `t_{theta^vee} s_theta`.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        if !self.datum.is_generator(i) {
            return Err(Error::IndexOutOfRange(i));
        }
        let d = &self.datum;
        if i == 0 {
            let theta = d.highest_root();
            let translation = d.coroot_coweight(theta);
            let perm = (0..d.roots().len())
                .map(|k| {
                    let c = d.pairing(k, theta);
                    let img: Vec<i64> = d.roots()[k]
                        .iter()
                        .zip(&d.roots()[theta])
                        .map(|(b, t)| b - c * t)
                        .collect();
                    d.root_index(&img).expect("reflection preserves roots") as u16
                })
                .collect();
            Ok(WeylElement {
                kind: self.kind(),
                translation: translation.into(),
                perm,
            })
        } else {
            Ok(WeylElement {
                kind: self.kind(),
                translation: vec![0; self.rank()].into(),
                perm: d.simple_perm(i).into(),
            })
        }
    }

    /// Pure translation `t_lambda`, `lambda` in fundamental-coweight coordinates.
    /// Coweights outside the coroot lattice give elements of the extended group.
    pub fn translation(&self, lambda: &[i64]) -> Result<WeylElement> {
        if !self.datum.is_affine() {
            return Err(Error::NotAffine);
        }
        if lambda.len() != self.rank() {
            return Err(Error::DatumMismatch);
        }
        Ok(WeylElement {
            kind: self.kind(),
            translation: lambda.into(),
            perm: self.identity.perm.clone(),
        })
    }

    /// Translation by the coroot of the root with index `root`.
    pub fn coroot_translation(&self, root: usize) -> Result<WeylElement> {
        self.translation(&self.datum.coroot_coweight(root))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word {
            let s = self.simple_reflection(i)?;
            w = self.mul_unchecked(&w, &s);
        }
        Ok(w)
    }

    pub fn parse(&self, word: &str) -> Result<WeylElement> {
        self.from_word(&parse_word(word)?)
    }

    pub(crate) fn mul_unchecked(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        // (l1, w1)(l2, w2) = (l1 + w1 l2, w1 w2)
        let moved = self.act_on_coweight(u, &v.translation);
        let translation: Box<[i64]> = u.translation.iter().zip(&moved).map(|(a, b)| a + b).collect();
        let perm: Box<[u16]> = v.perm.iter().map(|&k| u.perm[k as usize]).collect();
        WeylElement {
            kind: u.kind,
            translation,
            perm,
        }
    }

    /// `w_bar(lambda)`: its `i`-th coordinate is `<w_bar^{-1} alpha_i, lambda>`.
    fn act_on_coweight(&self, w: &WeylElement, lambda: &[i64]) -> Vec<i64> {
        if lambda.iter().all(|&x| x == 0) {
            return lambda.to_vec();
        }
        let d = &self.datum;
        (1..=self.rank())
            .map(|i| {
                let target = d.simple_root(i) as u16;
                let pre = w.perm.iter().position(|&k| k == target).unwrap();
                d.pair_coweight(pre, lambda)
            })
            .collect()
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    pub fn invert(&self, w: &WeylElement) -> Result<WeylElement> {
        self.check(w)?;
        Ok(self.inv_unchecked(w))
    }

    pub(crate) fn inv_unchecked(&self, w: &WeylElement) -> WeylElement {
        let mut perm = vec![0u16; w.perm.len()];
        for (k, &img) in w.perm.iter().enumerate() {
            perm[img as usize] = k as u16;
        }
        let inv = WeylElement {
            kind: w.kind,
            translation: vec![0; self.rank()].into(),
            perm: perm.into(),
        };
        let moved = self.act_on_coweight(&inv, &w.translation);
        WeylElement {
            translation: moved.into_iter().map(|x| -x).collect(),
            ..inv
        }
    }

    pub(crate) fn right_mul_gen(&self, w: &WeylElement, i: usize) -> WeylElement {
        self.mul_unchecked(w, &self.simple_reflection(i).expect("valid generator"))
    }

    pub(crate) fn left_mul_gen(&self, i: usize, w: &WeylElement) -> WeylElement {
        self.mul_unchecked(&self.simple_reflection(i).expect("valid generator"), w)
    }

    /// Number of positive affine roots `a` with `w^{-1}(a) < 0` (positive
    /// finite roots for finite data). Length-zero elements of the extended
    /// group get length 0.
    pub fn length(&self, w: &WeylElement) -> usize {
        let d = &self.datum;
        let nroots = d.roots().len();
        let mut inv = vec![0usize; nroots];
        for (k, &img) in w.perm.iter().enumerate() {
            inv[img as usize] = k;
        }
        let mut total = 0i64;
        for (alpha, &pre) in inv.iter().enumerate() {
            // w^{-1}(alpha + n) = w_bar^{-1} alpha + (n + <alpha, lambda>)
            let lower = if d.is_positive_root(alpha) { 0 } else { 1 };
            let shift = d.pair_coweight(alpha, &w.translation);
            let upper = -shift - if d.is_positive_root(pre) { 1 } else { 0 };
            total += (upper - lower + 1).max(0);
        }
        total as usize
    }

    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        let a = self.datum.simple_affine_root(i);
        !self.datum.is_positive_affine(self.datum.act_unchecked(w, a))
    }

    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        let a = self.datum.simple_affine_root(i);
        !self.datum.is_positive_affine(self.datum.act_inverse_unchecked(w, a))
    }

    pub fn descents(&self, w: &WeylElement, side: Side) -> Vec<usize> {
        self.generators()
            .into_iter()
            .filter(|&i| match side {
                Side::Right => self.is_right_descent(w, i),
                Side::Left => self.is_left_descent(w, i),
            })
            .collect()
    }

    pub(crate) fn first_right_descent(&self, w: &WeylElement) -> Option<usize> {
        self.generators().into_iter().find(|&i| self.is_right_descent(w, i))
    }

    /// Strips right descents until none remain: returns `(tau, word)` with
    /// `w = tau * s_word[0] * ... ` and `tau` of length zero.
    pub(crate) fn split_omega(&self, w: &WeylElement) -> (WeylElement, Vec<usize>) {
        let mut cur = w.clone();
        let mut word = Vec::new();
        while let Some(i) = self.first_right_descent(&cur) {
            cur = self.right_mul_gen(&cur, i);
            word.push(i);
        }
        word.reverse();
        (cur, word)
    }

    /// The length-zero element `tau` with `w tau^{-1}` in the non-extended group.
    pub fn omega_part(&self, w: &WeylElement) -> Result<WeylElement> {
        self.check(w)?;
        Ok(self.split_omega(w).0)
    }

    pub fn reduced_word(&self, w: &WeylElement) -> Result<Vec<usize>> {
        self.check(w)?;
        let (tau, word) = self.split_omega(w);
        if !self.is_identity(&tau) {
            return Err(Error::ExtendedElement);
        }
        Ok(word)
    }

    /// Reduced word as a display string, with the length-zero part (if any)
    /// given by its translation coordinates.
    pub fn word_string(&self, w: &WeylElement) -> String {
        let (tau, word) = self.split_omega(w);
        if self.is_identity(&tau) {
            format_word(&word)
        } else {
            format!("tau{:?}*{}", tau.translation, format_word(&word))
        }
    }

    /// Bruhat order via the lifting property, peeling right descents off `w`.
    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> bool {
        if u.kind != w.kind {
            return false;
        }
        let mut u = u.clone();
        let mut w = w.clone();
        loop {
            if self.length(&u) > self.length(&w) {
                return false;
            }
            match self.first_right_descent(&w) {
                None => return u == w,
                Some(s) => {
                    if self.is_right_descent(&u, s) {
                        u = self.right_mul_gen(&u, s);
                    }
                    w = self.right_mul_gen(&w, s);
                }
            }
        }
    }

    fn check_cap(&self, length: usize) -> Result<()> {
        if length > self.cap {
            Err(Error::CapExceeded {
                length,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Bruhat lower interval `{x : x <= w}`, from all subword products of one
    /// reduced word.
    pub fn elements_below(&self, w: &WeylElement) -> Result<Vec<WeylElement>> {
        self.check(w)?;
        let (tau, word) = self.split_omega(w);
        self.check_cap(word.len())?;
        let mut seen: HashSet<WeylElement> = HashSet::new();
        let mut out = vec![tau.clone()];
        seen.insert(tau);
        for &i in &word {
            let s = self.simple_reflection(i)?;
            let extra: Vec<WeylElement> = out
                .iter()
                .map(|x| self.mul_unchecked(x, &s))
                .filter(|y| !seen.contains(y))
                .collect();
            for y in extra {
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
        }
        Ok(out)
    }

    /// All non-extended elements of length at most `max_len`, grouped by length.
    pub fn elements_by_length(&self, max_len: usize) -> Vec<Vec<WeylElement>> {
        let mut levels = vec![vec![self.identity()]];
        let mut seen: HashSet<WeylElement> = HashSet::from([self.identity()]);
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in levels.last().unwrap() {
                for i in self.generators() {
                    if !self.is_right_descent(w, i) {
                        let y = self.right_mul_gen(w, i);
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        levels
    }

    /// Elements of the finite parabolic subgroup `W_J`.
    pub fn parabolic_elements(&self, j: &ParabolicSubset) -> Result<Vec<WeylElement>> {
        if self.datum.is_affine() && j.len() > self.rank() {
            return Err(Error::InfiniteParabolic(j.to_vec()));
        }
        let gens: Vec<WeylElement> = j.iter().map(|i| self.simple_reflection(i)).collect::<Result<_>>()?;
        let mut seen: HashSet<WeylElement> = HashSet::from([self.identity()]);
        let mut out = vec![self.identity()];
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = self.mul_unchecked(&x, s);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    fn check_parabolic(&self, j: &ParabolicSubset) -> Result<()> {
        if j.iter().any(|i| !self.datum.is_generator(i)) {
            return Err(Error::DatumMismatch);
        }
        if self.datum.is_affine() && j.len() > self.rank() {
            return Err(Error::InfiniteParabolic(j.to_vec()));
        }
        Ok(())
    }

    fn coset_walk(
        &self,
        j: &ParabolicSubset,
        w: &WeylElement,
        k: &ParabolicSubset,
        ascend: bool,
    ) -> Result<WeylElement> {
        self.check(w)?;
        self.check_parabolic(j)?;
        self.check_parabolic(k)?;
        let iteration_cap = {
            let wj = self.parabolic_elements(j)?.len();
            let wk = self.parabolic_elements(k)?.len();
            wj * wk * (self.length(w) + j.len() + k.len() + 1)
        };
        let mut cur = w.clone();
        for _ in 0..=iteration_cap {
            let left = j.iter().find(|&i| self.is_left_descent(&cur, i) != ascend);
            if let Some(i) = left {
                cur = self.left_mul_gen(i, &cur);
                continue;
            }
            let right = k.iter().find(|&i| self.is_right_descent(&cur, i) != ascend);
            if let Some(i) = right {
                cur = self.right_mul_gen(&cur, i);
                continue;
            }
            return Ok(cur);
        }
        Err(Error::Verification("double coset walk did not terminate".into()))
    }

    /// Minimal element of `W_J w W_K`.
    pub fn min_double_coset_rep(
        &self,
        j: &ParabolicSubset,
        w: &WeylElement,
        k: &ParabolicSubset,
    ) -> Result<WeylElement> {
        self.coset_walk(j, w, k, false)
    }

    /// Maximal element of `W_J w W_K`: every generator of `J` is a left descent
    /// and every generator of `K` a right descent.
    pub fn max_double_coset_rep(
        &self,
        j: &ParabolicSubset,
        w: &WeylElement,
        k: &ParabolicSubset,
    ) -> Result<WeylElement> {
        self.coset_walk(j, w, k, true)
    }

    pub fn coset_tag(&self, left: &ParabolicSubset, w: &WeylElement, right: &ParabolicSubset) -> Result<CosetTag> {
        Ok(CosetTag {
            left: left.clone(),
            right: right.clone(),
            representative: self.min_double_coset_rep(left, w, right)?,
        })
    }

    /// Sort key giving a deterministic order: by length, then reduced word.
    pub fn sort_key(&self, w: &WeylElement) -> (usize, String) {
        (self.length(w), self.word_string(w))
    }

    pub fn sort_elements(&self, elems: &mut [WeylElement]) {
        elems.sort_by_cached_key(|w| self.sort_key(w));
    }
}
