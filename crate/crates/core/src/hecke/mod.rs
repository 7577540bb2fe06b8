//! 0-Hecke (Demazure) products and Kazhdan-Lusztig data.

mod kl;
mod poly;

pub use kl::KlTable;
pub use poly::PolyZ;

use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylGroup};

/// Demazure product `u * v`, folding a reduced word of `v` with `w * s = max(w, ws)`.
/// Length-zero components of the extended group pass through.
pub fn demazure_product(group: &WeylGroup, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
    if u.kind() != group.kind() || v.kind() != group.kind() {
        return Err(Error::DatumMismatch);
    }
    let (tau, word) = group.split_omega(v);
    let mut w = group.mul_unchecked(u, &tau);
    for i in word {
        if !group.is_right_descent(&w, i) {
            w = group.right_mul_gen(&w, i);
        }
    }
    Ok(w)
}

/// `s_1 * s_2 * ... * s_r` for a word of generator indices (repetitions allowed).
pub fn demazure_fold(group: &WeylGroup, word: &[usize]) -> Result<WeylElement> {
    let mut w = group.identity();
    for &i in word {
        if !group.datum().is_generator(i) {
            return Err(Error::IndexOutOfRange(i));
        }
        if !group.is_right_descent(&w, i) {
            w = group.right_mul_gen(&w, i);
        }
    }
    Ok(w)
}
