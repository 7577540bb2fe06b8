use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense integer polynomial in `q`; `coeffs[i]` is the coefficient of `q^i`.
/// Never carries trailing zeros, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyZ {
    coeffs: Vec<i64>,
}

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyZ::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        PolyZ::new(vec![c])
    }

    /// `c q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        PolyZ::new(coeffs)
    }

    /// `q`.
    pub fn q() -> Self {
        PolyZ::monomial(1, 1)
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        PolyZ { coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        PolyZ::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Keep only the terms of degree `<= max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        PolyZ::new(self.coeffs.iter().take(max_degree + 1).copied().collect())
    }

    /// `q^d * p(q^{-1})`; requires `d >= deg p`.
    pub fn bar_shift(&self, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            assert!(i <= d, "bar_shift degree {d} below polynomial degree {i}");
            coeffs[d - i] = c;
        }
        PolyZ::new(coeffs)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(PolyZ::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}q")?,
                (k, 1) => write!(f, "q^{k}")?,
                (k, m) => write!(f, "{m}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&PolyZ> for &PolyZ {
    type Output = PolyZ;
    fn add(self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyZ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&PolyZ> for &PolyZ {
    type Output = PolyZ;
    fn sub(self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyZ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&PolyZ> for &PolyZ {
    type Output = PolyZ;
    fn mul(self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyZ::new(out)
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        self.scale(-1)
    }
}

impl Add for PolyZ {
    type Output = PolyZ;
    fn add(self, rhs: PolyZ) -> PolyZ {
        &self + &rhs
    }
}

impl Sub for PolyZ {
    type Output = PolyZ;
    fn sub(self, rhs: PolyZ) -> PolyZ {
        &self - &rhs
    }
}

impl Mul for PolyZ {
    type Output = PolyZ;
    fn mul(self, rhs: PolyZ) -> PolyZ {
        &self * &rhs
    }
}

impl AddAssign<&PolyZ> for PolyZ {
    fn add_assign(&mut self, rhs: &PolyZ) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&PolyZ> for PolyZ {
    fn sub_assign(&mut self, rhs: &PolyZ) {
        *self = &*self - rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    var: String,
    coeffs: Vec<i64>,
}

impl Serialize for PolyZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            var: "q".into(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        if repr.var != "q" {
            return Err(D::Error::custom(format!("unexpected variable {:?}", repr.var)));
        }
        Ok(PolyZ::new(repr.coeffs))
    }
}
