//! Python bindings. Group elements cross the boundary as reduced words
//! (lists of generator indices).

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use wflag_core::convolution::{orbit_dimension, OrbitClass};
use wflag_core::fibers::{fiber_table, multiplicities};
use wflag_core::{demazure_fold, DecompositionReport, DemazureMapSpec, Error, KlTable, WeylElement};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } | Error::Verification(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "PolyZ", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPolyZ(wflag_core::PolyZ);

#[pymethods]
impl PyPolyZ {
    #[new]
    fn new(coeffs: Vec<i64>) -> Self {
        PyPolyZ(wflag_core::PolyZ::new(coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<i64> {
        self.0.coeffs().to_vec()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval(&self, q: i64) -> i64 {
        self.0.eval(q)
    }

    fn __add__(&self, other: &PyPolyZ) -> PyPolyZ {
        PyPolyZ(&self.0 + &other.0)
    }

    fn __mul__(&self, other: &PyPolyZ) -> PyPolyZ {
        PyPolyZ(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PolyZ({:?})", self.0.coeffs())
    }
}

#[pyclass(name = "DecompositionReport", frozen)]
pub struct PyReport {
    group: wflag_core::WeylGroup,
    report: DecompositionReport,
}

impl PyReport {
    fn element(&self, word: Vec<usize>) -> PyResult<WeylElement> {
        self.group.from_word(&word).map_err(to_py)
    }
}

#[pymethods]
impl PyReport {
    #[getter]
    fn target(&self) -> String {
        self.group.word_string(self.report.spec.target())
    }

    #[getter]
    fn supports(&self) -> Vec<String> {
        self.report.supports.iter().map(|v| self.group.word_string(v)).collect()
    }

    #[getter]
    fn checks(&self) -> BTreeMap<String, bool> {
        let c = &self.report.checks;
        BTreeMap::from([
            ("reconstruction".to_string(), c.reconstruction),
            ("nonnegativity".to_string(), c.nonnegativity),
            ("duality".to_string(), c.duality),
            ("lefschetz".to_string(), c.lefschetz),
            ("global_sum".to_string(), c.global_sum),
        ])
    }

    fn fiber(&self, v: Vec<usize>) -> PyResult<PyPolyZ> {
        Ok(PyPolyZ(self.report.fiber(&self.element(v)?)))
    }

    fn multiplicity(&self, v: Vec<usize>) -> PyResult<PyPolyZ> {
        Ok(PyPolyZ(self.report.multiplicity(&self.element(v)?)))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.report.to_json(&self.group)).unwrap()
    }

    fn to_csv(&self) -> String {
        self.report.to_csv(&self.group)
    }
}

/// A (possibly affine) Weyl group with its own KL memo table.
#[pyclass(name = "WeylGroup", frozen)]
pub struct PyWeylGroup {
    group: wflag_core::WeylGroup,
    table: Arc<KlTable>,
}

impl PyWeylGroup {
    fn element(&self, word: &[usize]) -> PyResult<WeylElement> {
        self.group.from_word(word).map_err(to_py)
    }

    fn word(&self, w: &WeylElement) -> PyResult<Vec<usize>> {
        self.group.reduced_word(w).map_err(to_py)
    }
}

#[pymethods]
impl PyWeylGroup {
    #[new]
    #[pyo3(signature = (descriptor, cap = None))]
    fn new(descriptor: &str, cap: Option<usize>) -> PyResult<Self> {
        let mut group = wflag_core::WeylGroup::new(descriptor).map_err(to_py)?;
        if let Some(cap) = cap {
            group = group.with_cap(cap);
        }
        let table = Arc::new(KlTable::new(&group));
        Ok(PyWeylGroup { group, table })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.group.rank()
    }

    #[getter]
    fn is_affine(&self) -> bool {
        self.group.datum().is_affine()
    }

    #[getter]
    fn generators(&self) -> Vec<usize> {
        self.group.generators()
    }

    #[getter]
    fn num_positive_roots(&self) -> usize {
        self.group.datum().num_positive_roots()
    }

    fn length(&self, word: Vec<usize>) -> PyResult<usize> {
        Ok(self.group.length(&self.element(&word)?))
    }

    fn reduced_word(&self, word: Vec<usize>) -> PyResult<Vec<usize>> {
        self.word(&self.element(&word)?)
    }

    fn multiply(&self, u: Vec<usize>, v: Vec<usize>) -> PyResult<Vec<usize>> {
        let p = self.group.multiply(&self.element(&u)?, &self.element(&v)?).map_err(to_py)?;
        self.word(&p)
    }

    fn bruhat_leq(&self, u: Vec<usize>, w: Vec<usize>) -> PyResult<bool> {
        Ok(self.group.bruhat_leq(&self.element(&u)?, &self.element(&w)?))
    }

    fn demazure(&self, word: Vec<usize>) -> PyResult<Vec<usize>> {
        self.word(&demazure_fold(&self.group, &word).map_err(to_py)?)
    }

    fn kl(&self, u: Vec<usize>, w: Vec<usize>) -> PyResult<PyPolyZ> {
        let p = self.table.kl_polynomial(&self.element(&u)?, &self.element(&w)?).map_err(to_py)?;
        Ok(PyPolyZ(p))
    }

    fn kl_via_r(&self, u: Vec<usize>, w: Vec<usize>) -> PyResult<PyPolyZ> {
        let p = self.table.kl_polynomial_via_r(&self.element(&u)?, &self.element(&w)?).map_err(to_py)?;
        Ok(PyPolyZ(p))
    }

    /// `{reduced word of v: F_v}` for the Demazure map of `word`.
    fn fibers(&self, word: Vec<usize>) -> PyResult<Vec<(Vec<usize>, PyPolyZ)>> {
        let spec = DemazureMapSpec::new(&self.group, &word).map_err(to_py)?;
        let table = fiber_table(&self.group, &spec).map_err(to_py)?;
        let mut keys: Vec<WeylElement> = table.keys().cloned().collect();
        self.group.sort_elements(&mut keys);
        keys.into_iter()
            .map(|v| Ok((self.word(&v)?, PyPolyZ(table[&v].clone()))))
            .collect()
    }

    fn decompose(&self, word: Vec<usize>) -> PyResult<PyReport> {
        let spec = DemazureMapSpec::new(&self.group, &word).map_err(to_py)?;
        let report = multiplicities(&self.table, &spec).map_err(to_py)?;
        Ok(PyReport {
            group: self.group.clone(),
            report,
        })
    }

    fn orbit_dimension(&self, parahoric: Vec<usize>, v: Vec<usize>) -> PyResult<usize> {
        let p = self.group.parabolic(parahoric).map_err(to_py)?;
        orbit_dimension(&self.group, &p, &self.element(&v)?).map_err(to_py)
    }

    /// `{"parahoric": [...], "min_rep": "word"}` for the class of `w`.
    fn orbit_class(&self, parahoric: Vec<usize>, w: Vec<usize>) -> PyResult<String> {
        let p = self.group.parabolic(parahoric).map_err(to_py)?;
        let class = OrbitClass::new(&self.group, &p, &self.element(&w)?).map_err(to_py)?;
        Ok(class.to_json(&self.group).to_string())
    }

    fn __repr__(&self) -> String {
        format!("WeylGroup('{}')", self.group.kind())
    }
}

#[pymodule]
fn wflag(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeylGroup>()?;
    m.add_class::<PyPolyZ>()?;
    m.add_class::<PyReport>()?;
    Ok(())
}
