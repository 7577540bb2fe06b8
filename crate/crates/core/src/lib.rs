//! Exact combinatorics behind convolution morphisms of (affine) Schubert
//! varieties: root data and affine roots, Weyl groups with Bruhat order,
//! Demazure products, Kazhdan-Lusztig and inverse Kazhdan-Lusztig polynomials,
//! parahoric Demazure products, and fibers of Demazure maps together with the
//! decomposition multiplicities they determine.

pub mod convolution;
pub mod error;
pub mod fibers;
pub mod hecke;
pub mod root_data;
pub mod weyl;

pub use convolution::OrbitClass;
pub use error::{Error, Result};
pub use fibers::{DecompositionReport, DemazureMapSpec};
pub use hecke::{demazure_fold, demazure_product, KlTable, PolyZ};
pub use root_data::{AffineRoot, GroupKind, ParabolicSubset, RootDatum, Sign, TypeLetter};
pub use weyl::{format_word, parse_word, CosetTag, Side, WeylElement, WeylGroup};
