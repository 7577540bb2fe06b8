//! Root systems, affine roots and facet-relative positivity.
//!
//! Roots are stored in simple-root coordinates and coroots in simple-coroot
//! coordinates. Cocharacters (translation parts of Weyl group elements and
//! facet points) live in fundamental-coweight coordinates, so the pairing of
//! a root `sum b_i alpha_i` with a coweight `lambda` is simply `sum b_i lambda_i`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::weyl::WeylElement;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLetter {
    pub fn as_char(self) -> char {
        match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::C => 'C',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
        }
    }
}

/// Cartan type plus the affine flag; parsed from descriptors like `A2` or `G2~`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupKind {
    pub letter: TypeLetter,
    pub rank: usize,
    pub affine: bool,
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedDescriptor(s.to_string());
        let mut chars = s.chars();
        let first = chars.next().ok_or_else(malformed)?;
        if !first.is_ascii_alphabetic() {
            return Err(malformed());
        }
        let letter = match first {
            'A' => TypeLetter::A,
            'B' => TypeLetter::B,
            'C' => TypeLetter::C,
            'D' => TypeLetter::D,
            'E' => TypeLetter::E,
            'F' => TypeLetter::F,
            'G' => TypeLetter::G,
            other => return Err(Error::UnknownType(other.to_string())),
        };
        let rest = chars.as_str();
        let (digits, affine) = match rest.strip_suffix('~') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.len() != 1 || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(malformed());
        }
        let rank: usize = digits.parse().map_err(|_| malformed())?;
        let supported = match letter {
            TypeLetter::A | TypeLetter::B | TypeLetter::C => (1..=8).contains(&rank),
            TypeLetter::D => (3..=8).contains(&rank),
            TypeLetter::E => (6..=8).contains(&rank),
            TypeLetter::F => rank == 4,
            TypeLetter::G => rank == 2,
        };
        if !supported {
            return Err(Error::UnsupportedRank {
                letter: first,
                rank,
            });
        }
        Ok(GroupKind {
            letter,
            rank,
            affine,
        })
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter.as_char(), self.rank)?;
        if self.affine {
            write!(f, "~")?;
        }
        Ok(())
    }
}

/// The affine-linear functional `alpha + level`, with `alpha` referenced by
/// its index in [`RootDatum::roots`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(root: usize, level: i64) -> Self {
        AffineRoot { root, level }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// A set of generator indices. For affine data the indices range over
/// `0..=rank` with `0` the affine reflection; for finite data over `1..=rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicSubset {
    indices: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn empty() -> Self {
        ParabolicSubset::default()
    }

    /// Validates the indices against `datum` and rejects subsets generating an
    /// infinite group (all `rank + 1` affine generators).
    pub fn new(datum: &RootDatum, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        for &i in &indices {
            if !datum.is_generator(i) {
                return Err(Error::IndexOutOfRange(i));
            }
        }
        if datum.kind.affine && indices.len() == datum.rank() + 1 {
            return Err(Error::InfiniteParabolic(indices.into_iter().collect()));
        }
        Ok(ParabolicSubset { indices })
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_subset(&self, other: &ParabolicSubset) -> bool {
        self.indices.is_subset(&other.indices)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }
}

/// Root system data for a Cartan type, optionally flagged affine.
#[derive(Debug, Clone)]
pub struct RootDatum {
    kind: GroupKind,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    cartan: Vec<Vec<i64>>,
    /// Positive roots first (simple roots at `0..rank`), then their negatives
    /// in the same order.
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    npos: usize,
    index: HashMap<Vec<i64>, usize>,
    /// Permutation of root indices induced by each simple reflection `s_1..s_rank`.
    simple_perms: Vec<Vec<u16>>,
    highest: usize,
}

fn scaled_simple_roots(letter: TypeLetter, n: usize) -> Vec<Vec<i64>> {
    let e = |dim: usize, i: usize| -> Vec<i64> {
        let mut v = vec![0; dim];
        v[i] = 1;
        v
    };
    let diff = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();
    let sum = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    match letter {
        TypeLetter::A => (0..n).map(|i| diff(&e(n + 1, i), &e(n + 1, i + 1))).collect(),
        TypeLetter::B | TypeLetter::C | TypeLetter::D => {
            let mut out: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(&e(n, i), &e(n, i + 1))).collect();
            let last = match letter {
                TypeLetter::B => e(n, n - 1),
                TypeLetter::C => e(n, n - 1).iter().map(|x| 2 * x).collect(),
                _ => sum(&e(n, n - 2), &e(n, n - 1)),
            };
            out.push(last);
            out
        }
        TypeLetter::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        TypeLetter::F => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        TypeLetter::E => {
            // Bourbaki numbering inside E8, doubled to stay integral.
            let mut all = vec![vec![1, -1, -1, -1, -1, -1, -1, 1]];
            all.push(vec![2, 2, 0, 0, 0, 0, 0, 0]);
            for i in 0..6 {
                let mut v = vec![0; 8];
                v[i] = -2;
                v[i + 1] = 2;
                all.push(v);
            }
            all.truncate(n);
            all
        }
    }
}

fn cartan_matrix(letter: TypeLetter, n: usize) -> Vec<Vec<i64>> {
    let simple = scaled_simple_roots(letter, n);
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| 2 * dot(&simple[i], &simple[j]) / dot(&simple[i], &simple[i]))
                .collect()
        })
        .collect()
}

impl RootDatum {
    pub fn new(kind: GroupKind) -> Self {
        let n = kind.rank;
        let cartan = cartan_matrix(kind.letter, n);

        // Reflect (root, coroot) pairs starting from the simple ones.
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut pairs: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue: Vec<(Vec<i64>, Vec<i64>)> = (0..n).map(|i| (unit(i), unit(i))).collect();
        while let Some((root, coroot)) = queue.pop() {
            if pairs.contains_key(&root) {
                continue;
            }
            pairs.insert(root.clone(), coroot.clone());
            for i in 0..n {
                let c: i64 = (0..n).map(|k| root[k] * cartan[i][k]).sum();
                let d: i64 = (0..n).map(|k| coroot[k] * cartan[k][i]).sum();
                let mut r2 = root.clone();
                r2[i] -= c;
                let mut c2 = coroot.clone();
                c2[i] -= d;
                if r2.iter().all(|&x| x >= 0) && r2.iter().any(|&x| x > 0) && !pairs.contains_key(&r2) {
                    queue.push((r2, c2));
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = pairs.into_iter().collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let npos = positive.len();
        let mut roots: Vec<Vec<i64>> = positive.iter().map(|p| p.0.clone()).collect();
        let mut coroots: Vec<Vec<i64>> = positive.iter().map(|p| p.1.clone()).collect();
        for k in 0..npos {
            roots.push(roots[k].iter().map(|x| -x).collect());
            coroots.push(coroots[k].iter().map(|x| -x).collect());
        }
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let simple_perms = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let c: i64 = (0..n).map(|k| r[k] * cartan[i][k]).sum();
                        let mut img = r.clone();
                        img[i] -= c;
                        index[&img] as u16
                    })
                    .collect()
            })
            .collect();
        let highest = npos - 1;
        RootDatum {
            kind,
            cartan,
            roots,
            coroots,
            npos,
            index,
            simple_perms,
            highest,
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn is_affine(&self) -> bool {
        self.kind.affine
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots, positive ones first.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.npos]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.npos
    }

    pub fn coroot(&self, root: usize) -> &[i64] {
        &self.coroots[root]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive_root(&self, root: usize) -> bool {
        root < self.npos
    }

    pub fn negate(&self, root: usize) -> usize {
        if root < self.npos {
            root + self.npos
        } else {
            root - self.npos
        }
    }

    pub fn highest_root(&self) -> usize {
        self.highest
    }

    /// Index in [`roots`](Self::roots) of the simple root `alpha_i`, `1 <= i <= rank`.
    pub fn simple_root(&self, i: usize) -> usize {
        i - 1
    }

    pub(crate) fn simple_perm(&self, i: usize) -> &[u16] {
        &self.simple_perms[i - 1]
    }

    pub fn generators(&self) -> Vec<usize> {
        let start = if self.kind.affine { 0 } else { 1 };
        (start..=self.rank()).collect()
    }

    pub fn is_generator(&self, i: usize) -> bool {
        (i >= 1 && i <= self.rank()) || (i == 0 && self.kind.affine)
    }

    /// `<alpha_j, alpha_i^vee>` from the stored coordinates.
    pub fn pairing(&self, root: usize, coroot: usize) -> i64 {
        self.pair_coweight(root, &self.coroot_coweight(coroot))
    }

    /// Pairing of a root with a cocharacter in fundamental-coweight coordinates.
    pub fn pair_coweight(&self, root: usize, coweight: &[i64]) -> i64 {
        self.roots[root].iter().zip(coweight).map(|(a, b)| a * b).sum()
    }

    /// The coroot of `root` expressed in fundamental-coweight coordinates.
    pub fn coroot_coweight(&self, root: usize) -> Vec<i64> {
        let n = self.rank();
        let c = &self.coroots[root];
        (0..n).map(|i| (0..n).map(|j| c[j] * self.cartan[j][i]).sum()).collect()
    }

    /// Simple affine root attached to generator `i` (`-theta + 1` for `i = 0`).
    pub fn simple_affine_root(&self, i: usize) -> AffineRoot {
        if i == 0 {
            AffineRoot::new(self.negate(self.highest), 1)
        } else {
            AffineRoot::new(self.simple_root(i), 0)
        }
    }

    /// `alpha + n > 0` iff `n >= 1`, or `n = 0` and `alpha > 0`.
    pub fn is_positive_affine(&self, a: AffineRoot) -> bool {
        a.level >= 1 || (a.level == 0 && self.is_positive_root(a.root))
    }

    /// `w(a)(x) = a(w^{-1} x)`, where `w` acts on cocharacters by `x -> lambda + w_bar(x)`.
    pub fn act(&self, w: &WeylElement, a: AffineRoot) -> Result<AffineRoot> {
        if w.kind() != self.kind || a.root >= self.roots.len() {
            return Err(Error::DatumMismatch);
        }
        Ok(self.act_unchecked(w, a))
    }

    pub(crate) fn act_unchecked(&self, w: &WeylElement, a: AffineRoot) -> AffineRoot {
        let image = w.perm()[a.root] as usize;
        let shift = self.pair_coweight(image, w.translation());
        AffineRoot::new(image, a.level - shift)
    }

    /// `w^{-1}(a)` without forming the inverse: `w_bar^{-1} alpha + (n + <alpha, lambda>)`.
    pub(crate) fn act_inverse_unchecked(&self, w: &WeylElement, a: AffineRoot) -> AffineRoot {
        let pre = w
            .perm()
            .iter()
            .position(|&img| img as usize == a.root)
            .expect("root permutation is a bijection");
        AffineRoot::new(pre, a.level + self.pair_coweight(a.root, w.translation()))
    }

    /// Alcove vertices in coweight coordinates: `0`, and `varpi_k^vee / m_k`
    /// where `theta = sum m_k alpha_k`.
    fn alcove_vertex(&self, k: usize) -> Vec<Rational> {
        let n = self.rank();
        let mut v = vec![Rational::from_integer(0); n];
        if k > 0 {
            let m = self.roots[self.highest][k - 1];
            v[k - 1] = Rational::new(1, m);
        }
        v
    }

    /// Barycenter of the base-alcove vertices lying on every wall indexed by `j`.
    pub fn facet_point(&self, j: &ParabolicSubset) -> Result<Vec<Rational>> {
        if !self.kind.affine {
            return Err(Error::NotAffine);
        }
        let n = self.rank();
        let verts: Vec<usize> = (0..=n).filter(|k| !j.contains(*k)).collect();
        let mut x = vec![Rational::from_integer(0); n];
        for &k in &verts {
            for (xi, vi) in x.iter_mut().zip(self.alcove_vertex(k)) {
                *xi += vi;
            }
        }
        let count = Rational::from_integer(verts.len() as i64);
        Ok(x.into_iter().map(|c| c / count).collect())
    }

    pub fn evaluate(&self, a: AffineRoot, x: &[Rational]) -> Rational {
        let lin: Rational = self.roots[a.root]
            .iter()
            .zip(x)
            .map(|(&b, xi)| *xi * b)
            .sum();
        lin + Rational::from_integer(a.level)
    }

    fn sign_at(&self, a: AffineRoot, x: &[Rational]) -> Sign {
        let v = self.evaluate(a, x);
        if v < Rational::from_integer(0) {
            Sign::Negative
        } else if v > Rational::from_integer(0) {
            Sign::Positive
        } else {
            Sign::Zero
        }
    }

    /// Sign of `a` at the canonical point of the facet cut out by the walls in `j`.
    pub fn sign_at_facet(&self, a: AffineRoot, j: &ParabolicSubset) -> Result<Sign> {
        if a.root >= self.roots.len() {
            return Err(Error::DatumMismatch);
        }
        let x = self.facet_point(j)?;
        Ok(self.sign_at(a, &x))
    }

    /// Smallest `i >= 0` such that `alpha - i` is negative on the facet of `j`.
    pub fn i_alpha_f(&self, root: usize, j: &ParabolicSubset) -> Result<u64> {
        if root >= self.roots.len() {
            return Err(Error::DatumMismatch);
        }
        let x = self.facet_point(j)?;
        let mut i = 0;
        while self.sign_at(AffineRoot::new(root, -i), &x) != Sign::Negative {
            i += 1;
        }
        Ok(i as u64)
    }

    /// Cardinality of `{a : a < 0, a <_{f_q} 0, w^{-1} a >=_{f_p} 0}`.
    pub fn count_intersection_dim(
        &self,
        jq: &ParabolicSubset,
        jp: &ParabolicSubset,
        w: &WeylElement,
    ) -> Result<usize> {
        if w.kind() != self.kind {
            return Err(Error::DatumMismatch);
        }
        let xq = self.facet_point(jq)?;
        let xp = self.facet_point(jp)?;
        let bound = 1 + (0..self.roots.len())
            .map(|k| self.pair_coweight(k, w.translation()).abs())
            .max()
            .unwrap_or(0);
        let mut count = 0;
        for root in 0..self.roots.len() {
            for n in -(bound + 1)..=(bound + 1) {
                let a = AffineRoot::new(root, n);
                if self.is_positive_affine(a) || self.sign_at(a, &xq) != Sign::Negative {
                    continue;
                }
                if self.sign_at(self.act_inverse_unchecked(w, a), &xp) == Sign::Negative {
                    continue;
                }
                if n.abs() > bound {
                    return Err(Error::EnumerationOverflow);
                }
                count += 1;
            }
        }
        Ok(count)
    }

    /// `|{a : v(a) > 0, a <_{f_p} 0}|`, the dimension of the Iwahori orbit of
    /// `v` in the partial flag variety attached to `jp`.
    pub fn orbit_root_count(&self, jp: &ParabolicSubset, v: &WeylElement) -> Result<usize> {
        if v.kind() != self.kind {
            return Err(Error::DatumMismatch);
        }
        let xp = self.facet_point(jp)?;
        let bound = 1 + (0..self.roots.len())
            .map(|k| self.pair_coweight(k, v.translation()).abs())
            .max()
            .unwrap_or(0);
        let mut count = 0;
        for root in 0..self.roots.len() {
            for n in -(bound + 1)..=(bound + 1) {
                let a = AffineRoot::new(root, n);
                if self.sign_at(a, &xp) != Sign::Negative
                    || !self.is_positive_affine(self.act_unchecked(v, a))
                {
                    continue;
                }
                if n.abs() > bound {
                    return Err(Error::EnumerationOverflow);
                }
                count += 1;
            }
        }
        Ok(count)
    }

    /// Determinant of the Cartan matrix, i.e. the order of the group of
    /// length-zero elements of the extended affine Weyl group.
    pub fn fundamental_group_order(&self) -> i64 {
        let n = self.rank();
        let mut m: Vec<Vec<Rational>> = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
            .collect();
        let mut det = Rational::from_integer(1);
        for col in 0..n {
            let pivot = match (col..n).find(|&r| m[r][col] != Rational::from_integer(0)) {
                Some(p) => p,
                None => return 0,
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= m[col][col];
            for r in col + 1..n {
                let f = m[r][col] / m[col][col];
                let (top, bottom) = m.split_at_mut(r);
                for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= f * y;
                }
            }
        }
        det.to_integer()
    }
}
